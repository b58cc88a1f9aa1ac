"""Config-file literals shared by the CLI: parsing and validation.

Scenario configs are JSON objects.  Every literal is validated against its
module's invariants before any computation; validation failures raise
:class:`ConfigError` naming the offending field (the CLI maps these to
exit code 2).
"""

from __future__ import annotations

import json
import math
from typing import Any

from . import channels as chn
from . import fock
from . import jsa
from . import polarization as pol
from . import spectral as spc

__all__ = ["ConfigError", "merge", "set_path", "parse_profile",
           "parse_polarization", "parse_detector", "parse_beam_splitter",
           "parse_apparatus", "parse_channel", "parse_jsa"]

_POL_NAMES = {"H": pol.H, "V": pol.V, "D": pol.D, "A": pol.A}


class ConfigError(ValueError):
    """Invalid scenario configuration; message names the field."""


def _fail(field: str, why: str) -> "ConfigError":
    return ConfigError(f"config field '{field}': {why}")


def merge(base: dict, override: dict) -> dict:
    """Recursive dict merge; override wins, sub-dicts merge key-wise."""
    out = dict(base)
    for k, v in override.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = merge(out[k], v)
        else:
            out[k] = v
    return out


def set_path(cfg: dict, dotted: str, raw: str) -> None:
    """Apply a --set override: dotted path, value parsed as JSON if possible."""
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    keys = dotted.split(".")
    node = cfg
    for k in keys[:-1]:
        nxt = node.get(k)
        if not isinstance(nxt, dict):
            nxt = {}
            node[k] = nxt
        node = nxt
    node[keys[-1]] = value


def _number(obj: dict, field: str, key: str, default: float | None = None) -> float:
    if key not in obj:
        if default is None:
            raise _fail(f"{field}.{key}", "missing required value")
        return default
    v = obj[key]
    if not isinstance(v, (int, float)) or isinstance(v, bool):
        raise _fail(f"{field}.{key}", f"expected a number, got {v!r}")
    return float(v)


def parse_profile(obj: Any, field: str) -> spc.SpectralProfile:
    """`{shape, center_thz | center_nm, width_thz | fwhm_nm, delay_ps, broadening}`."""
    if not isinstance(obj, dict):
        raise _fail(field, "expected a profile object")
    try:
        shape = spc.Shape(str(obj.get("shape", "")).lower())
    except ValueError:
        raise _fail(f"{field}.shape",
                    f"unknown shape {obj.get('shape')!r}; use one of "
                    f"{[s.value for s in spc.Shape]}") from None
    delay = _number(obj, field, "delay_ps", 0.0)
    broadening = _number(obj, field, "broadening", 1.0)
    if "center_thz" in obj:
        center = 2.0 * math.pi * _number(obj, field, "center_thz")
    elif "center_nm" in obj:
        center_nm = _number(obj, field, "center_nm")
        if center_nm <= 0:
            raise _fail(f"{field}.center_nm", "must be positive")
        center = 2.0 * math.pi * spc.SPEED_OF_LIGHT_NM_PS / center_nm
    else:
        raise _fail(field, "needs center_thz or center_nm")
    try:
        if "width_thz" in obj:
            width = _number(obj, field, "width_thz")
            width = width if shape is spc.Shape.SINC else 2.0 * math.pi * width
            return spc.SpectralProfile(shape, center, width, delay, broadening)
        if "fwhm_nm" in obj:
            lam = 2.0 * math.pi * spc.SPEED_OF_LIGHT_NM_PS / center
            dw = spc.wavelength_width_to_frequency(lam, _number(obj, field, "fwhm_nm"))
            return spc.SpectralProfile.from_fwhm(shape, center, dw, delay, broadening)
    except ValueError as exc:
        raise _fail(field, str(exc)) from None
    raise _fail(field, "needs width_thz or fwhm_nm")


def parse_polarization(obj: Any, field: str) -> pol.PolarizationVector:
    """Shorthand "H"/"V"/"D"/"A" or `{h_re, h_im, v_re, v_im}` (normalized)."""
    if isinstance(obj, str):
        if obj in _POL_NAMES:
            return _POL_NAMES[obj]
        raise _fail(field, f"unknown polarization name {obj!r}")
    if isinstance(obj, dict):
        h = complex(_number(obj, field, "h_re", 0.0), _number(obj, field, "h_im", 0.0))
        v = complex(_number(obj, field, "v_re", 0.0), _number(obj, field, "v_im", 0.0))
        try:
            return pol.PolarizationVector(h, v)
        except ValueError as exc:
            raise _fail(field, str(exc)) from None
    raise _fail(field, "expected a name or {h_re, h_im, v_re, v_im}")


def parse_detector(obj: Any, field: str) -> pol.Detector:
    if not isinstance(obj, dict):
        raise _fail(field, "expected {eta_h, eta_v}")
    try:
        return pol.Detector(_number(obj, field, "eta_h"), _number(obj, field, "eta_v"))
    except ValueError as exc:
        raise _fail(field, str(exc)) from None


def parse_beam_splitter(obj: Any, field: str) -> fock.BeamSplitter:
    if not isinstance(obj, dict):
        raise _fail(field, "expected {t, r}")
    try:
        return fock.BeamSplitter(_number(obj, field, "t"), _number(obj, field, "r"))
    except ValueError as exc:
        raise _fail(field, str(exc)) from None


def parse_apparatus(cfg: dict) -> fock.Apparatus:
    return fock.Apparatus(
        bs=parse_beam_splitter(cfg.get("beam_splitter", {"t": 0.5, "r": 0.5}),
                               "beam_splitter"),
        det_a=parse_detector(cfg.get("detector_a", {"eta_h": 1.0, "eta_v": 1.0}),
                             "detector_a"),
        det_b=parse_detector(cfg.get("detector_b", {"eta_h": 1.0, "eta_v": 1.0}),
                             "detector_b"),
    )


def parse_channel(obj: Any, field: str) -> chn.ChannelSpec:
    """`{gamma, p_depol, xi}`, all optional."""
    if not isinstance(obj, dict):
        raise _fail(field, "expected {gamma, p_depol, xi}")
    try:
        return chn.ChannelSpec(gamma=_number(obj, field, "gamma", 0.0),
                               p_depol=_number(obj, field, "p_depol", 0.0),
                               xi=_number(obj, field, "xi", 1.0))
    except ValueError as exc:
        raise _fail(field, str(exc)) from None


def parse_jsa(obj: Any, field: str) -> tuple[Any, jsa.GridSpec]:
    """`{separable: {signal, idler}}` or `{pump, pmf, grid}` literals.

    Returns (SeparableJSA | (Pump, PhaseMatching)) plus the grid spec so the
    caller controls orientation when sampling.
    """
    if not isinstance(obj, dict):
        raise _fail(field, "expected a JSA object")
    grid_obj = obj.get("grid", {})
    try:
        grid = jsa.GridSpec(n=int(_number(grid_obj, f"{field}.grid", "n", 256)),
                            span=_number(grid_obj, f"{field}.grid", "span", 5.0))
    except ValueError as exc:
        raise _fail(f"{field}.grid", str(exc)) from None
    if "separable" in obj:
        sep = obj["separable"]
        if not isinstance(sep, dict) or "signal" not in sep or "idler" not in sep:
            raise _fail(f"{field}.separable", "needs signal and idler profiles")
        return (jsa.SeparableJSA(parse_profile(sep["signal"], f"{field}.separable.signal"),
                                 parse_profile(sep["idler"], f"{field}.separable.idler")),
                grid)
    if "pump" in obj and "pmf" in obj:
        try:
            pump = jsa.Pump(center=_number(obj["pump"], f"{field}.pump", "center"),
                            sigma=_number(obj["pump"], f"{field}.pump", "sigma"))
            pm = jsa.PhaseMatching(sigma=_number(obj["pmf"], f"{field}.pmf", "sigma"),
                                   slope_s=_number(obj["pmf"], f"{field}.pmf", "slope_s", 1.0),
                                   slope_i=_number(obj["pmf"], f"{field}.pmf", "slope_i", -0.5))
        except ValueError as exc:
            raise _fail(field, str(exc)) from None
        return ((pump, pm), grid)
    raise _fail(field, "needs either 'separable' or 'pump'+'pmf'")
