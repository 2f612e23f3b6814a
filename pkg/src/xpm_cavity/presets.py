"""Key=value preset files holding ladder-system parameters in SI units.

A preset carries the atomic data (dipole moments, decay rates, wavelengths).
The density and length of the medium are experiment-specific; when a preset
does not fix them the loader uses ``DEFAULT_LENGTH`` and chooses the density
to give ``DEFAULT_OD``.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .core import LadderSystem, number_density_for_od

DEFAULT_OD = 15.0
DEFAULT_LENGTH = 1e-3  # m

_FLOAT_FIELDS = ("mu1", "mu2", "gamma1", "gamma2", "lambda_c", "lambda_p",
                 "number_density", "length")
_REQUIRED = ("mu1", "mu2", "gamma1", "gamma2", "lambda_c", "lambda_p")
_TEXT_FIELDS = ("name", "description")


class PresetError(ValueError):
    """Malformed preset file; the message names the line or field."""


def parse_preset(text: str, source: str = "<preset>") -> dict:
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise PresetError(f"{source}:{lineno}: expected key = value, got {raw.strip()!r}")
        key, _, value = (s.strip() for s in line.partition("="))
        if key in values:
            raise PresetError(f"{source}:{lineno}: duplicate field {key!r}")
        if key in _TEXT_FIELDS:
            values[key] = value
        elif key in _FLOAT_FIELDS:
            try:
                values[key] = float(value)
            except ValueError:
                raise PresetError(f"{source}:{lineno}: field {key!r} is not a number: {value!r}") from None
        else:
            raise PresetError(f"{source}:{lineno}: unknown field {key!r}")
    missing = [k for k in _REQUIRED if k not in values]
    if missing:
        raise PresetError(f"{source}: missing field(s) {', '.join(missing)}")
    return values


def available_presets() -> list[str]:
    root = resources.files(__package__) / "presets"
    return sorted(p.name[:-len(".preset")] for p in root.iterdir()
                  if p.name.endswith(".preset"))


def read_preset(name_or_path: str) -> dict:
    """Raw preset fields for a built-in name or a path to a preset file."""
    path = Path(name_or_path)
    if path.suffix == ".preset" or path.exists():
        try:
            text = path.read_text()
        except OSError as exc:
            raise PresetError(f"cannot read preset {name_or_path}: {exc}") from exc
        return parse_preset(text, str(path))
    if name_or_path not in available_presets():
        raise PresetError(f"unknown preset {name_or_path!r}; available: {', '.join(available_presets())}")
    res = resources.files(__package__) / "presets" / f"{name_or_path}.preset"
    return parse_preset(res.read_text(), f"{name_or_path}.preset")


def load_preset(name_or_path: str, *, od: float | None = None,
                number_density: float | None = None,
                length: float | None = None) -> LadderSystem:
    """Build a :class:`LadderSystem` from a preset.

    Explicit ``number_density``/``length`` override the file. If the density
    is still unknown it is set from ``od`` (default ``DEFAULT_OD``).
    """
    fields = read_preset(name_or_path)
    length = length if length is not None else fields.get("length", DEFAULT_LENGTH)
    if number_density is None:
        if od is None and "number_density" in fields:
            number_density = fields["number_density"]
        else:
            od = DEFAULT_OD if od is None else od
            number_density = number_density_for_od(od, length, fields["lambda_c"])
    elif od is not None:
        raise PresetError("give either od or number_density, not both")
    try:
        return LadderSystem(
            mu1=fields["mu1"], mu2=fields["mu2"],
            gamma1=fields["gamma1"], gamma2=fields["gamma2"],
            lambda_c=fields["lambda_c"], lambda_p=fields["lambda_p"],
            number_density=number_density, length=length,
        )
    except ValueError as exc:
        raise PresetError(f"{name_or_path}: {exc}") from exc


def format_preset(sys: LadderSystem, name: str = "custom") -> str:
    lines = [f"name = {name}"]
    lines += [f"{k} = {getattr(sys, k)!r}" for k in _FLOAT_FIELDS]
    return "\n".join(lines) + "\n"
