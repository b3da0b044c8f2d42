"""JSON descriptions of bodies, for the CLI and the experiment scripts.

A body file is a JSON object:

.. code-block:: json

    {"kind": "revolution",
     "profile": {"type": "analytic", "name": "ball", "params": {"R": 2.0}},
     "label": "outer ball"}

    {"kind": "revolution",
     "profile": {"type": "samples", "x": [...], "r": [...]}}

    {"kind": "planar",
     "profile": {"type": "analytic", "name": "ellipse", "params": {"a": 2, "b": 1}}}

Analytic revolution names: ``ball`` (R), ``inner_ball`` (r), ``ellipsoid``
(a, b), ``perturbed_ball`` (R, eps, mode).  Analytic planar names: ``disc``
(R, optional center/basepoint), ``ellipse`` (a, b), ``wavy_disc`` (R, eps,
mode).  Planar samples use ``theta``/``r`` arrays over a full turn.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .errors import BodySpecError
from .geometry import (
    PlanarBody,
    RevolutionProfile,
    ball_profile,
    disc_body,
    ellipse_body,
    ellipsoid_profile,
    offset_disc_body,
    perturbed_ball_profile,
    planar_from_samples,
    profile_from_samples,
    wavy_disc_body,
)

Body = Union[RevolutionProfile, PlanarBody]


def _number(params: dict, field: str, name: str) -> float:
    if field not in params:
        raise BodySpecError(f"shape {name!r} requires parameter {field!r}")
    v = params[field]
    if not isinstance(v, (int, float)) or isinstance(v, bool):
        raise BodySpecError(f"parameter {field!r} must be a number, got {type(v).__name__}")
    return float(v)


def _mode(params: dict, name: str) -> int:
    if "mode" not in params:
        raise BodySpecError(f"shape {name!r} requires parameter 'mode'")
    v = params["mode"]
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise BodySpecError("parameter 'mode' must be a positive integer")
    return v


def _analytic_revolution(name: str, params: dict, label: str) -> RevolutionProfile:
    if name == "ball":
        return ball_profile(_number(params, "R", name), label=label)
    if name == "inner_ball":
        return ball_profile(_number(params, "r", name), label=label)
    if name == "ellipsoid":
        return ellipsoid_profile(_number(params, "a", name), _number(params, "b", name),
                                 label=label)
    if name == "perturbed_ball":
        return perturbed_ball_profile(_number(params, "R", name),
                                      _number(params, "eps", name),
                                      _mode(params, name), label=label)
    raise BodySpecError(f"unknown analytic revolution shape {name!r}")


def _analytic_planar(name: str, params: dict, label: str) -> PlanarBody:
    if name == "disc":
        R = _number(params, "R", name)
        center = params.get("center", (0.0, 0.0))
        if "basepoint" in params:
            return offset_disc_body(R, center, params["basepoint"], label=label)
        return disc_body(R, center, label=label)
    if name == "ellipse":
        return ellipse_body(_number(params, "a", name), _number(params, "b", name),
                            label=label)
    if name == "wavy_disc":
        return wavy_disc_body(_number(params, "R", name), _number(params, "eps", name),
                              _mode(params, name), label=label)
    raise BodySpecError(f"unknown analytic planar shape {name!r}")


def body_from_dict(obj: dict) -> Body:
    """Build a body from a parsed JSON object; raise BodySpecError on bad input."""
    if not isinstance(obj, dict):
        raise BodySpecError("body description must be a JSON object")
    kind = obj.get("kind")
    if kind not in ("revolution", "planar"):
        raise BodySpecError(f"kind must be 'revolution' or 'planar', got {kind!r}")
    label = obj.get("label", "")
    if label and not isinstance(label, str):
        raise BodySpecError("label must be a string")
    profile = obj.get("profile")
    if not isinstance(profile, dict):
        raise BodySpecError("body description requires a 'profile' object")
    ptype = profile.get("type")

    if ptype == "analytic":
        name = profile.get("name")
        if not isinstance(name, str):
            raise BodySpecError("analytic profile requires a 'name' string")
        params = profile.get("params", {})
        if not isinstance(params, dict):
            raise BodySpecError("'params' must be an object")
        if kind == "revolution":
            return _analytic_revolution(name, params, label)
        return _analytic_planar(name, params, label)

    if ptype == "samples":
        if kind == "revolution":
            if "x" not in profile or "r" not in profile:
                raise BodySpecError("sampled revolution profile requires 'x' and 'r' arrays")
            return profile_from_samples(profile["x"], profile["r"], label=label)
        key = "theta" if "theta" in profile else "x"
        if key not in profile or "r" not in profile:
            raise BodySpecError("sampled planar profile requires 'theta' and 'r' arrays")
        return planar_from_samples(profile[key], profile["r"], label=label)

    raise BodySpecError(f"profile type must be 'analytic' or 'samples', got {ptype!r}")


def load_body(path: Union[str, Path]) -> Body:
    """Load a body description from a JSON file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise BodySpecError(f"cannot read body file {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BodySpecError(f"body file {path} is not valid JSON: {exc}") from exc
    try:
        return body_from_dict(obj)
    except BodySpecError as exc:
        raise BodySpecError(f"{path}: {exc}") from exc


def dump_body_dict(obj: dict, path: Union[str, Path]) -> None:
    """Write a body description dictionary to a JSON file."""
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")
