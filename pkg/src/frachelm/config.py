"""Run configuration: flat key=value text with repeated shape blocks.

The format is deliberately primitive so that runs are trivially diffable
and no parser dependency is needed::

    # forward scattering scene
    s        = 0.7            # comma list sweeps s, e.g.  0.2, 0.7
    k        = 5.0
    x_max    = 5.0
    N_x      = 100
    N_inc    = 72
    noise    = 0.0
    seed     = 0
    floor_policy = auto       # auto | zero
    output_dir   = out

    shape    = disc           # starts a block; keys below attach to it
    center   = 0.0, 0.0
    radius   = 1.0
    contrast = 1.0

    shape    = rect
    center   = 2.0, -1.0
    half_widths = 0.6, 0.4
    contrast = 1.0

Recognized shapes are disc (center, radius, contrast), rect (center,
half_widths, contrast), boomerang (center, scale, contrast) and mask
(file, contrast).  A key before any ``shape =`` line is a scalar run
key; after one it configures the most recent block.  Unknown keys and
malformed values raise ConfigError.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError, IOFailure
from .medium import Boomerang, Disc, MaskFile, Rect

FLOOR_POLICIES = ("auto", "zero")


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved parameters of one CLI run.

    s_values holds every requested fractional order; most commands loop
    over it (an s sweep), suffixing output files with the s value when
    more than one is present.
    """

    s_values: tuple = (0.7,)
    k: float = 5.0
    d: int = 2
    x_max: float = 5.0
    N_x: int = 100
    N_inc: int = 72
    shapes: tuple = ()
    noise: float = 0.0
    floor_policy: str = "auto"
    output_dir: str = "."
    seed: int = 0

    def __post_init__(self):
        if not self.s_values:
            raise ConfigError("at least one s value is required")
        for s in self.s_values:
            if not 0.0 < s <= 1.0:
                raise ConfigError(f"s = {s} outside (0, 1]")
        if self.k <= 0.0:
            raise ConfigError(f"k = {self.k} must be positive")
        if self.d not in (1, 2, 3):
            raise ConfigError(f"d = {self.d} not in {{1, 2, 3}}")
        if self.x_max <= 0.0:
            raise ConfigError(f"x_max = {self.x_max} must be positive")
        if self.N_x < 2:
            raise ConfigError(f"N_x = {self.N_x} must be >= 2")
        if self.N_inc < 2:
            raise ConfigError(f"N_inc = {self.N_inc} must be >= 2")
        if self.noise < 0.0:
            raise ConfigError(f"noise = {self.noise} must be >= 0")
        if self.floor_policy not in FLOOR_POLICIES:
            raise ConfigError(
                f"floor_policy {self.floor_policy!r} not in "
                f"{FLOOR_POLICIES}")


_SCALAR_KEYS = {
    "s", "k", "d", "x_max", "N_x", "N_inc", "noise", "floor_policy",
    "output_dir", "seed",
}

# per-shape required block keys (contrast is optional for mask, whose
# file already carries contrast values; it then acts as a scale)
_SHAPE_KEYS = {
    "disc": {"center", "radius", "contrast"},
    "rect": {"center", "half_widths", "contrast"},
    "boomerang": {"center", "scale", "contrast"},
    "mask": {"file"},
}
_SHAPE_OPTIONAL = {"mask": {"contrast"}}


def _parse_float(key, text):
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{key}: {text!r} is not a number") from None


def _parse_int(key, text):
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{key}: {text!r} is not an integer") from None


def _parse_vector(key, text, d):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != d:
        raise ConfigError(
            f"{key}: expected {d} comma-separated components, got "
            f"{text!r}")
    return tuple(_parse_float(key, p) for p in parts)


def _build_shape(kind, block, d):
    required = _SHAPE_KEYS[kind]
    allowed = required | _SHAPE_OPTIONAL.get(kind, set())
    extra = set(block) - allowed
    if extra:
        raise ConfigError(
            f"shape {kind}: unexpected keys {sorted(extra)}")
    missing = required - set(block)
    if missing:
        raise ConfigError(
            f"shape {kind}: missing keys {sorted(missing)}")
    if kind == "disc":
        return Disc(center=_parse_vector("center", block["center"], d),
                    radius=_parse_float("radius", block["radius"]),
                    contrast=_parse_float("contrast", block["contrast"]))
    if kind == "rect":
        return Rect(
            center=_parse_vector("center", block["center"], d),
            half_widths=_parse_vector("half_widths",
                                      block["half_widths"], d),
            contrast=_parse_float("contrast", block["contrast"]))
    if kind == "boomerang":
        return Boomerang(
            center=_parse_vector("center", block["center"], d),
            scale=_parse_float("scale", block["scale"]),
            contrast=_parse_float("contrast", block["contrast"]))
    return MaskFile(path=block["file"],
                    contrast=_parse_float("contrast",
                                          block.get("contrast", "1.0")))


def parse_config(text: str) -> RunConfig:
    """Parse config text into a RunConfig; raises ConfigError on any
    unknown key, malformed value, or incomplete shape block."""
    scalars: dict = {}
    blocks: list = []
    current: dict | None = None
    current_kind = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, "
                              f"got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not value:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        if key == "shape":
            if value not in _SHAPE_KEYS:
                raise ConfigError(
                    f"line {lineno}: unknown shape {value!r}; choose "
                    f"from {sorted(_SHAPE_KEYS)}")
            current = {}
            current_kind = value
            blocks.append((current_kind, current))
        elif current is not None:
            if key in _SCALAR_KEYS:
                raise ConfigError(
                    f"line {lineno}: run key {key!r} must appear before "
                    "the first shape block")
            current[key] = value
        elif key in _SCALAR_KEYS:
            if key in scalars:
                raise ConfigError(f"line {lineno}: duplicate key {key!r}")
            scalars[key] = value
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")

    kwargs: dict = {}
    if "s" in scalars:
        kwargs["s_values"] = tuple(
            _parse_float("s", p.strip()) for p in scalars["s"].split(","))
    if "k" in scalars:
        kwargs["k"] = _parse_float("k", scalars["k"])
    if "d" in scalars:
        kwargs["d"] = _parse_int("d", scalars["d"])
    if "x_max" in scalars:
        kwargs["x_max"] = _parse_float("x_max", scalars["x_max"])
    if "N_x" in scalars:
        kwargs["N_x"] = _parse_int("N_x", scalars["N_x"])
    if "N_inc" in scalars:
        kwargs["N_inc"] = _parse_int("N_inc", scalars["N_inc"])
    if "noise" in scalars:
        kwargs["noise"] = _parse_float("noise", scalars["noise"])
    if "floor_policy" in scalars:
        kwargs["floor_policy"] = scalars["floor_policy"]
    if "output_dir" in scalars:
        kwargs["output_dir"] = scalars["output_dir"]
    if "seed" in scalars:
        kwargs["seed"] = _parse_int("seed", scalars["seed"])

    d = kwargs.get("d", 2)
    kwargs["shapes"] = tuple(_build_shape(kind, block, d)
                             for kind, block in blocks)
    return RunConfig(**kwargs)


def load_config(path) -> RunConfig:
    """Read and parse a config file; unreadable files raise IOFailure."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise IOFailure(f"cannot read config {path}: {exc}") from None
    return parse_config(text)


def _shape_dict(shape) -> dict:
    if isinstance(shape, Disc):
        return {"shape": "disc", "center": list(shape.center),
                "radius": shape.radius, "contrast": shape.contrast}
    if isinstance(shape, Rect):
        return {"shape": "rect", "center": list(shape.center),
                "half_widths": list(shape.half_widths),
                "contrast": shape.contrast}
    if isinstance(shape, Boomerang):
        return {"shape": "boomerang", "center": list(shape.center),
                "scale": shape.scale, "contrast": shape.contrast}
    return {"shape": "mask", "file": shape.path,
            "contrast": shape.contrast}


def resolved_dict(config: RunConfig) -> dict:
    """JSON-ready dictionary of the fully resolved configuration, used
    verbatim in run manifests."""
    return {
        "s": list(config.s_values),
        "k": config.k,
        "d": config.d,
        "x_max": config.x_max,
        "N_x": config.N_x,
        "N_inc": config.N_inc,
        "shapes": [_shape_dict(sh) for sh in config.shapes],
        "noise": config.noise,
        "floor_policy": config.floor_policy,
        "output_dir": config.output_dir,
        "seed": config.seed,
    }
