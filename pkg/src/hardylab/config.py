"""Experiment configuration: one self-describing TOML file per run.

The config carries everything an experiment needs (potential, test
function, quadrature, scan radii, output layout, seed) so that a run is
reproducible from the file alone; command-line flags may only override
the output directory and the seed.  Parsing is strict: unknown keys,
missing sections, and out-of-range values raise ConfigError naming the
offending field.
"""

import os
from dataclasses import dataclass

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .errors import ConfigError
from .quadrature import QuadratureConfig
from .scattering import BarrierPotential, ShellPotential
from .testfuncs import (
    TestFunction,
    make_bump,
    make_gaussian,
    make_gs,
    make_hardy_rational,
)

__all__ = ["ExperimentConfig", "load_config", "parse_config"]

EXPERIMENTS = ("resonances", "transform", "arc-scan", "qat", "verify-bounds")
FORMATS = ("csv", "json", "svg")

_FAMILY_ALIASES = {
    "bump": "bump",
    "gs": "gs",
    "gelfand-shilov": "gs",
    "gelfand_shilov": "gs",
    "gaussian": "gaussian",
    "hardy_rational": "hardy_rational",
    "hardy-rational": "hardy_rational",
    "rational": "hardy_rational",
}

# sections an experiment requires beyond [output]
_REQUIRED = {
    "resonances": ("potential",),
    "transform": ("testfunction", "transform"),
    "arc-scan": ("testfunction", "scan", "transform"),
    "qat": ("qat",),
    "verify-bounds": ("potential", "bounds"),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment description; ``settings`` holds the
    experiment-specific section (search/transform/qat/bounds)."""

    experiment: str
    seed: int
    output_dir: str
    formats: tuple
    potential: object | None
    testfunction: TestFunction | None
    quadrature: QuadratureConfig
    scan_radii: tuple
    samples_per_arc: int
    settings: dict
    raw_text: str


def _take(table, section, key, kind, default=None, required=False):
    """Pop ``key`` from a section dict, type-checked; dotted field names."""
    field = f"{section}.{key}" if section else key
    if key not in table:
        if required:
            raise ConfigError(field, "missing required key")
        return default
    value = table.pop(key)
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if kind is not None and not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise ConfigError(field, f"expected {getattr(kind, '__name__', kind)}, got {value!r}")
    return value


def _no_leftovers(table, section):
    if table:
        raise ConfigError(f"{section}.{next(iter(table))}", "unknown key")


def _parse_potential(table):
    kind = _take(table, "potential", "kind", str, default="shell")
    a = _take(table, "potential", "a", float, required=True)
    b = _take(table, "potential", "b", float, required=True)
    v0 = _take(table, "potential", "v0", float, required=True)
    _no_leftovers(table, "potential")
    if kind == "shell":
        return ShellPotential(a, b, v0)
    if kind == "barrier":
        return BarrierPotential(a, b, v0)
    raise ConfigError("potential.kind", f"unknown potential kind {kind!r}")


def _parse_testfunction(table):
    raw = _take(table, "testfunction", "family", str, required=True)
    family = _FAMILY_ALIASES.get(raw.lower())
    if family is None:
        raise ConfigError("testfunction.family", f"unknown family {raw!r}")
    domain = _take(table, "testfunction", "domain", str)
    if domain is not None:
        domain = domain.lower()
    if family == "bump":
        a = _take(table, "testfunction", "A", float, required=True)
        center = _take(table, "testfunction", "center", float, default=0.0)
        _no_leftovers(table, "testfunction")
        return make_bump(a, center, domain)
    if family == "gs":
        alpha = _take(table, "testfunction", "alpha", float, required=True)
        a_gs = _take(table, "testfunction", "a_gs", float, required=True)
        _no_leftovers(table, "testfunction")
        return make_gs(alpha, a_gs, domain or "full")
    if family == "gaussian":
        sigma = _take(table, "testfunction", "sigma", float, required=True)
        center = _take(table, "testfunction", "center", float, default=0.0)
        _no_leftovers(table, "testfunction")
        return make_gaussian(sigma, center, domain or "full")
    z_re = _take(table, "testfunction", "z0_re", float, required=True)
    z_im = _take(table, "testfunction", "z0_im", float, required=True)
    _no_leftovers(table, "testfunction")
    return make_hardy_rational(complex(z_re, z_im))


def _parse_quadrature(table):
    rel_tol = _take(table, "quadrature", "rel_tol", float, default=1e-10)
    max_sub = _take(table, "quadrature", "max_subdivisions", int, default=4000)
    osc = _take(table, "quadrature", "oscillation_splitting", bool, default=True)
    _no_leftovers(table, "quadrature")
    return QuadratureConfig(rel_tol, max_sub, osc)


def _parse_scan(table):
    r_list = _take(table, "scan", "r_list", list, required=True)
    if not all(isinstance(r, (int, float)) and not isinstance(r, bool) for r in r_list):
        raise ConfigError("scan.r_list", "radii must be numbers")
    radii = tuple(float(r) for r in r_list)
    if len(radii) < 2 or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ConfigError("scan.r_list", "radii must be strictly increasing, >= 2 entries")
    n = _take(table, "scan", "samples_per_arc", int, default=64)
    if n < 4:
        raise ConfigError("scan.samples_per_arc", "need at least 4 samples per arc")
    _no_leftovers(table, "scan")
    return radii, n


def _parse_settings(experiment, data):
    """Validate the experiment-specific section into a plain dict."""
    out = {}
    if experiment == "resonances":
        table = data.pop("search", {})
        out["re_min"] = _take(table, "search", "re_min", float, default=0.05)
        out["re_max"] = _take(table, "search", "re_max", float, default=6.0)
        out["im_min"] = _take(table, "search", "im_min", float, default=-2.0)
        out["im_max"] = _take(table, "search", "im_max", float, default=-0.005)
        out["n_boundary"] = _take(table, "search", "n_boundary", int, default=4096)
        out["tol"] = _take(table, "search", "tol", float, default=1e-10)
        _no_leftovers(table, "search")
        if not out["re_min"] < out["re_max"] or not out["im_min"] < out["im_max"]:
            raise ConfigError("search", "degenerate search rectangle")
    elif experiment in ("transform", "arc-scan"):
        table = data.pop("transform", {})
        kind = _take(table, "transform", "kind", str, default="free")
        if kind not in ("free", "ls", "fourier"):
            raise ConfigError("transform.kind", f"unknown transform kind {kind!r}")
        out["kind"] = kind
        out["sign"] = _take(table, "transform", "sign", str, default="+")
        if out["sign"] not in ("+", "-"):
            raise ConfigError("transform.sign", "sign must be '+' or '-'")
        if experiment == "transform":
            pts = _take(table, "transform", "points", list, required=True)
            cleaned = []
            for i, item in enumerate(pts):
                if (
                    not isinstance(item, list)
                    or len(item) != 2
                    or not all(isinstance(u, (int, float)) and not isinstance(u, bool) for u in item)
                ):
                    raise ConfigError(
                        "transform.points", f"entry {i} must be a [re, im] pair"
                    )
                cleaned.append(complex(item[0], item[1]))
            out["points"] = tuple(cleaned)
        else:
            out["fit_model"] = _take(table, "transform", "fit_model", str, default="")
            if out["fit_model"] not in ("", "linear-in-ImSqrt", "power-b_gs"):
                raise ConfigError("transform.fit_model", f"unknown model {out['fit_model']!r}")
        _no_leftovers(table, "transform")
    elif experiment == "qat":
        table = data.pop("qat", {})
        out["source"] = _take(table, "qat", "source", str, default="testfunction")
        if out["source"] not in ("testfunction", "free-transform"):
            raise ConfigError("qat.source", f"unknown source {out['source']!r}")
        out["t_min"] = _take(table, "qat", "t_min", float, default=-2.0)
        out["t_max"] = _take(table, "qat", "t_max", float, default=5.0)
        out["t_count"] = _take(table, "qat", "t_count", int, default=29)
        out["e_max"] = _take(table, "qat", "e_max", float, default=150.0)
        out["half_line"] = _take(table, "qat", "half_line", bool, default=False)
        out["spectral"] = _take(table, "qat", "spectral", bool, default=False)
        _no_leftovers(table, "qat")
        if not out["t_min"] < out["t_max"]:
            raise ConfigError("qat.t_min", "need t_min < t_max")
        if out["t_count"] < 2:
            raise ConfigError("qat.t_count", "need at least 2 time samples")
        if out["e_max"] <= 0.0:
            raise ConfigError("qat.e_max", "e_max must be positive")
    elif experiment == "verify-bounds":
        table = data.pop("bounds", {})
        kinds = _take(table, "bounds", "kinds", list, default=["sine", "free", "regular_solution"])
        for kind in kinds:
            if kind not in ("sine", "free", "regular_solution", "ls", "gamow"):
                raise ConfigError("bounds.kinds", f"unknown bound kind {kind!r}")
        out["kinds"] = tuple(kinds)
        out["n_samples"] = _take(table, "bounds", "n_samples", int, default=1000)
        if out["n_samples"] < 4:
            raise ConfigError("bounds.n_samples", "need at least 4 samples")
        out["sign"] = _take(table, "bounds", "sign", str, default="+")
        if out["sign"] not in ("+", "-"):
            raise ConfigError("bounds.sign", "sign must be '+' or '-'")
        _no_leftovers(table, "bounds")
    return out


def parse_config(text: str, experiment_override: str | None = None) -> ExperimentConfig:
    """Parse and validate a TOML config document."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError("toml", str(exc)) from exc

    experiment = data.pop("experiment", None)
    if experiment_override is not None:
        if experiment is not None and experiment != experiment_override:
            raise ConfigError(
                "experiment",
                f"config declares {experiment!r} but the command asks for"
                f" {experiment_override!r}",
            )
        experiment = experiment_override
    if experiment is None:
        raise ConfigError("experiment", "missing required key")
    if experiment not in EXPERIMENTS:
        raise ConfigError("experiment", f"unknown experiment {experiment!r}")

    seed = data.pop("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise ConfigError("seed", f"seed must be a nonnegative integer, got {seed!r}")

    out_table = data.pop("output", {})
    directory = _take(out_table, "output", "directory", str, default="out")
    formats = _take(out_table, "output", "formats", list, default=["csv"])
    for fmt in formats:
        if fmt not in FORMATS:
            raise ConfigError("output.formats", f"unknown format {fmt!r}")
    _no_leftovers(out_table, "output")

    for section in _REQUIRED[experiment]:
        if section not in data and section in ("potential", "testfunction"):
            raise ConfigError(section, "missing required section")

    potential = _parse_potential(data.pop("potential")) if "potential" in data else None
    testfunction = (
        _parse_testfunction(data.pop("testfunction")) if "testfunction" in data else None
    )
    quadrature = _parse_quadrature(data.pop("quadrature", {}))
    if "scan" in data:
        scan_radii, samples_per_arc = _parse_scan(data.pop("scan"))
    elif experiment == "arc-scan":
        raise ConfigError("scan", "missing required section")
    else:
        scan_radii, samples_per_arc = (), 64
    settings = _parse_settings(experiment, data)
    if experiment == "qat" and settings["source"] == "free-transform" and testfunction is None:
        raise ConfigError("testfunction", "qat source 'free-transform' needs a test function")
    if experiment == "qat" and settings["source"] == "testfunction" and testfunction is None:
        raise ConfigError("testfunction", "missing required section")
    if (
        experiment in ("transform", "arc-scan")
        and settings["kind"] == "ls"
        and potential is None
    ):
        raise ConfigError("potential", "transform kind 'ls' needs a potential section")
    _no_leftovers(data, "config")

    return ExperimentConfig(
        experiment=experiment,
        seed=seed,
        output_dir=directory,
        formats=tuple(formats),
        potential=potential,
        testfunction=testfunction,
        quadrature=quadrature,
        scan_radii=scan_radii,
        samples_per_arc=samples_per_arc,
        settings=settings,
        raw_text=text,
    )


def load_config(path: str, experiment_override: str | None = None) -> ExperimentConfig:
    """Read and parse a config file; missing files are config errors."""
    if not os.path.isfile(path):
        raise ConfigError("config", f"no such config file: {path}")
    with open(path, "rb") as fh:
        text = fh.read().decode("utf-8")
    return parse_config(text, experiment_override)
