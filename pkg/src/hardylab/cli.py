"""Command line experiment runner.

``hardylab run <config.toml>`` executes the experiment the config
describes and writes deterministic artifacts (CSV tables, JSON summaries,
SVG plots) plus a ``manifest.json`` recording the config hash, the tool
version and a checksum for every emitted file.  ``hardylab validate``
parses and checks a config without running anything.  Each experiment
name is also a subcommand (``hardylab qat cfg.toml``) that supplies the
``experiment`` key when the file omits it.

Exit status: 0 on success, 2 for configuration errors, 3 when the
experiment itself fails numerically or cannot write its outputs.
"""

import argparse
import csv
import hashlib
import io
import json
import os
import sys

import numpy as np

from . import __version__
from .analysis import (
    BoundSpec,
    arc_scan,
    fit_growth,
    hardy_verdict,
    spectral_evolution,
    time_signal,
    verify_bound,
)
from .config import EXPERIMENTS, ExperimentConfig, load_config
from .errors import ConfigError, ExperimentError, HardyLabError, IoError
from .quadrature import QuadratureConfig
from .resonances import find_resonances
from .scattering import (
    BarrierPotential,
    SurfacePoint,
    free_eigenfunction,
    ls_eigenfunction,
    regular_solution,
)
from .svgplot import emit_plot
from .testfuncs import TestFunction
from .transforms import fourier_line, transform_free, transform_ls

__all__ = ["main", "run", "validate"]


# ---------------------------------------------------------------------------
# artifact plumbing
# ---------------------------------------------------------------------------

class _Artifacts:
    """Collects emitted files and writes the closing manifest."""

    def __init__(self, directory: str, raw_config: str, quiet: bool):
        self.directory = directory
        self.raw_config = raw_config
        self.quiet = quiet
        self.names: list[str] = []
        try:
            os.makedirs(directory, exist_ok=True)
        except OSError as exc:
            raise IoError(f"cannot create output directory {directory}: {exc}") from exc

    def path(self, name: str) -> str:
        return os.path.join(self.directory, name)

    def note(self, name: str) -> None:
        self.names.append(name)
        if not self.quiet:
            print(f"wrote {self.path(name)}")

    def write_text(self, name: str, text: str) -> None:
        try:
            with open(self.path(name), "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise IoError(f"cannot write {self.path(name)}: {exc}") from exc
        self.note(name)

    def write_csv(self, name: str, header, rows) -> None:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(x) for x in row])
        self.write_text(name, buf.getvalue())

    def write_json(self, name: str, payload) -> None:
        self.write_text(name, json.dumps(payload, indent=2, sort_keys=True) + "\n")

    def finish(self) -> None:
        files = {}
        for name in self.names:
            with open(self.path(name), "rb") as fh:
                files[name] = hashlib.sha256(fh.read()).hexdigest()
        manifest = {
            "config_sha256": hashlib.sha256(self.raw_config.encode("utf-8")).hexdigest(),
            "tool_version": __version__,
            "files": files,
        }
        with open(self.path("manifest.json"), "w", encoding="utf-8", newline="") as fh:
            fh.write(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
        if not self.quiet:
            print(f"wrote {self.path('manifest.json')}")


def _cell(x):
    """CSV cell text; floats use repr (shortest round-trip decimal)."""
    if isinstance(x, float):
        return repr(x)
    return x


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------

def _run_resonances(cfg: ExperimentConfig, art: _Artifacts) -> None:
    s = cfg.settings
    rect = (s["re_min"], s["re_max"], s["im_min"], s["im_max"])
    found = find_resonances(cfg.potential, rect, tol=s["tol"], n_boundary=s["n_boundary"])
    rows = [
        (
            float(r.point.k.real),
            float(r.point.k.imag),
            float(r.zn.real),
            float(r.zn.imag),
            float(r.gamma),
            float(r.jplus_abs),
        )
        for r in found
    ]
    if "csv" in cfg.formats:
        art.write_csv(
            "resonances.csv",
            ["kn_re", "kn_im", "zn_re", "zn_im", "gamma", "jplus_abs"],
            rows,
        )
    if "json" in cfg.formats:
        art.write_json(
            "resonances.json",
            {
                "count": len(rows),
                "rect": list(rect),
                "resonances": [
                    dict(zip(("kn_re", "kn_im", "zn_re", "zn_im", "gamma", "jplus_abs"), row))
                    for row in rows
                ],
            },
        )


def _transform_callable(cfg: ExperimentConfig):
    """(point -> TransformResult) for the configured transform kind."""
    kind = cfg.settings["kind"]
    sign = cfg.settings["sign"]
    f, quad = cfg.testfunction, cfg.quadrature
    if kind == "free":
        return lambda p: transform_free(f, p, quad)
    if kind == "ls":
        pot = cfg.potential
        return lambda p: transform_ls(pot, f, p, sign, quad)
    return lambda p: fourier_line(f, p.k, sign, quad)


def _run_transform(cfg: ExperimentConfig, art: _Artifacts) -> None:
    call = _transform_callable(cfg)
    rows = []
    for k in cfg.settings["points"]:
        p = SurfacePoint(k)
        res = call(p)
        rows.append(
            (
                float(p.z.real),
                float(p.z.imag),
                p.sheet,
                float(res.value.real),
                float(res.value.imag),
                float(res.abs_error_estimate),
                float(res.truncation_radius),
            )
        )
    if "csv" in cfg.formats:
        art.write_csv(
            "transform.csv",
            ["z_re", "z_im", "sheet", "value_re", "value_im", "abs_err", "trunc_radius"],
            rows,
        )
    if "json" in cfg.formats:
        art.write_json(
            "transform.json",
            {
                "kind": cfg.settings["kind"],
                "sign": cfg.settings["sign"],
                "points": [
                    dict(
                        zip(
                            (
                                "z_re", "z_im", "sheet", "value_re", "value_im",
                                "abs_err", "trunc_radius",
                            ),
                            row,
                        )
                    )
                    for row in rows
                ],
            },
        )


def _run_arc_scan(cfg: ExperimentConfig, art: _Artifacts) -> None:
    call = _transform_callable(cfg)
    fhat = lambda p: call(p).value
    verdict = hardy_verdict(fhat, cfg.scan_radii, cfg.samples_per_arc)
    report = verdict.evidence
    model = cfg.settings["fit_model"]
    fit = fit_growth(report, model) if model else None
    if "csv" in cfg.formats:
        art.write_csv(
            "arc_scan.csv",
            ["radius", "max_modulus", "argmax_angle"],
            list(zip(report.radii, report.max_modulus, report.argmax_angles)),
        )
    if "json" in cfg.formats:
        payload = {
            "verdict": report.verdict,
            "hardy_verdict": verdict.verdict,
            "growth_order": report.fitted_exponent,
            "order_spread": report.fit_residual,
            "pole_skips": report.pole_skips,
        }
        if fit is not None:
            payload["fit"] = {
                "model": model,
                "coefficient": fit.coefficient,
                "exponent": fit.exponent,
                "residual": fit.residual,
            }
        art.write_json("arc_scan.json", payload)
    if "svg" in cfg.formats:
        emit_plot(report, art.path("arc_scan.svg"), fit, model)
        art.note("arc_scan.svg")


def _run_qat(cfg: ExperimentConfig, art: _Artifacts) -> None:
    s = cfg.settings
    t_grid = np.linspace(s["t_min"], s["t_max"], s["t_count"])
    if s["source"] == "free-transform":
        f, quad = cfg.testfunction, cfg.quadrature
        fhat = lambda e: transform_free(f, SurfacePoint(np.sqrt(e)), quad).value
        half_line = True
    else:
        fhat = cfg.testfunction
        half_line = s["half_line"]
    signal = time_signal(fhat, t_grid, e_max=s["e_max"], cfg=cfg.quadrature, half_line=half_line)
    rows = [
        (float(t), float(v.real), float(v.imag), float(abs(v)))
        for t, v in zip(signal.t_grid, signal.values)
    ]
    if "csv" in cfg.formats:
        art.write_csv("qat.csv", ["t", "value_re", "value_im", "abs_value"], rows)
    if s["spectral"]:
        spec = spectral_evolution(fhat, t_grid, e_max=s["e_max"], cfg=cfg.quadrature)
        if "csv" in cfg.formats:
            art.write_csv(
                "spectral.csv",
                ["t", "value_re", "value_im", "abs_value"],
                [
                    (float(t), float(v.real), float(v.imag), float(abs(v)))
                    for t, v in zip(spec.t_grid, spec.values)
                ],
            )
    if "json" in cfg.formats:
        art.write_json(
            "qat.json",
            {
                "e_max": s["e_max"],
                "half_line": half_line,
                "source": s["source"],
                "quadrature_error": signal.quadrature_error,
                "peak_abs": max(abs(v) for v in signal.values),
            },
        )
    if "svg" in cfg.formats:
        emit_plot(signal, art.path("qat.svg"))
        art.note("qat.svg")


def _run_verify_bounds(cfg: ExperimentConfig, art: _Artifacts) -> None:
    s = cfg.settings
    pot, sign = cfg.potential, s["sign"]
    if isinstance(pot, BarrierPotential):
        raise ConfigError("potential.kind", "bound checks need a shell potential")
    rows = []
    for kind in s["kinds"]:
        rng = np.random.default_rng(cfg.seed)
        n = s["n_samples"]
        ks = rng.uniform(0.1, 6.0, n) + 1j * rng.uniform(-2.0, 2.0, n)
        rads = rng.uniform(0.05, 8.0, n)
        if kind == "gamow":
            found = find_resonances(pot, (0.05, 6.0, -2.0, -0.005))
            if not found:
                raise ExperimentError("no resonance found for the gamow bound check")
            res = found[0]
            from .resonances import gamow_state

            state = gamow_state(pot, res)
            samples = [(res.point, float(r)) for r in np.sort(rads)]
            sampler = lambda p, r: state(r)
            spec = BoundSpec("gamow")
        else:
            samples = [(SurfacePoint(k), float(r)) for k, r in zip(ks, rads)]
            if kind == "sine":
                sampler = lambda p, r: np.sin(p.k * r)
                spec = BoundSpec("sine")
            elif kind == "free":
                sampler = lambda p, r: free_eigenfunction(p)(r)
                spec = BoundSpec("free")
            elif kind == "regular_solution":
                sampler = lambda p, r: regular_solution(pot, p)(r)
                spec = BoundSpec("regular_solution")
            else:  # ls
                sampler = lambda p, r: ls_eigenfunction(pot, p, sign)(r)
                spec = BoundSpec("ls", pot=pot, sign=sign)
        check = verify_bound(sampler, spec, samples)
        rows.append(
            (kind, float(check.constant), check.n_train, check.n_test, len(check.violations))
        )
    if "csv" in cfg.formats:
        art.write_csv(
            "bounds.csv",
            ["kind", "constant", "n_train", "n_test", "n_violations"],
            rows,
        )
    if "json" in cfg.formats:
        art.write_json(
            "bounds.json",
            {
                "seed": cfg.seed,
                "checks": [
                    dict(zip(("kind", "constant", "n_train", "n_test", "n_violations"), row))
                    for row in rows
                ],
            },
        )


_RUNNERS = {
    "resonances": _run_resonances,
    "transform": _run_transform,
    "arc-scan": _run_arc_scan,
    "qat": _run_qat,
    "verify-bounds": _run_verify_bounds,
}


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def run(config_path: str, experiment: str | None = None, output_dir: str | None = None,
        seed: int | None = None, quiet: bool = False) -> None:
    """Execute the experiment a config file describes; artifacts land in
    its output directory together with manifest.json."""
    cfg = load_config(config_path, experiment)
    cfg = _apply_overrides(cfg, output_dir, seed)
    art = _Artifacts(cfg.output_dir, cfg.raw_text, quiet)
    try:
        _RUNNERS[cfg.experiment](cfg, art)
    except (ConfigError, IoError):
        raise
    except HardyLabError as exc:
        raise ExperimentError(f"{cfg.experiment} failed: {exc}") from exc
    art.finish()


def validate(config_path: str, experiment: str | None = None) -> ExperimentConfig:
    """Parse and validate a config file without running it."""
    cfg = load_config(config_path, experiment)
    parent = cfg.output_dir or "."
    probe = parent
    while probe and not os.path.isdir(probe):
        probe = os.path.dirname(probe)
    if not os.access(probe or ".", os.W_OK):
        raise ConfigError("output.directory", f"not writable: {cfg.output_dir}")
    return cfg


def _apply_overrides(cfg: ExperimentConfig, output_dir, seed) -> ExperimentConfig:
    from dataclasses import replace

    if output_dir is not None:
        cfg = replace(cfg, output_dir=output_dir)
    if seed is not None:
        if seed < 0:
            raise ConfigError("seed", "seed must be a nonnegative integer")
        cfg = replace(cfg, seed=seed)
    return cfg


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hardylab",
        description="Run scattering / Hardy-class growth experiments from a config file.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    names = ("run", "validate") + EXPERIMENTS
    for name in names:
        p = sub.add_parser(name, help=f"{name} a config" if name in ("run", "validate")
                           else f"run a config as the {name} experiment")
        p.add_argument("config", help="path to the TOML experiment config")
        if name != "validate":
            p.add_argument("--output-dir", help="override the configured output directory")
            p.add_argument("--seed", type=int, help="override the configured seed")
            p.add_argument("--quiet", action="store_true", help="suppress progress output")
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    override = None if args.command in ("run", "validate") else args.command
    try:
        if args.command == "validate":
            cfg = validate(args.config)
            print(f"ok: {cfg.experiment} config, output to {cfg.output_dir}")
        else:
            run(
                args.config,
                experiment=override,
                output_dir=args.output_dir,
                seed=args.seed,
                quiet=args.quiet,
            )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except HardyLabError as exc:
        print(f"experiment error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
