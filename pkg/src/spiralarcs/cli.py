"""Command-line front-end: structured-text jobs in, CSV/SVG/documents out.

Subcommands map one-to-one onto the library's top-level operations:

    approx   length-preserving biarc for chord data (or a traced curve)
    bounds   attainable-length interval for chord data
    triarc   length-matching inscribed triarc
    model    endpoint point-cloud of two-level profiles with its boundary
    oval     closeness sweep for a four-extremum closed-curve job

Exit codes: 0 success, 2 invalid input, 3 numerical failure.  Errors print
one JSON line on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import yaml

from . import io as sio
from .bilens import Bilens
from .bounds import length_bounds
from .curves import PiecewiseConstCurve, arc_length_from_chord
from .errors import InvalidDataError, SolverError
from .geom import G2ChordData, Pose, chord_frame
from .model import endpoint_set_spiral, fixed_turning_subset
from .ovals import closeness_sweep, natural_mu_range, natural_nu_range, \
    one_vertex_endpoint_set
from .solver import solve_length_biarc
from .svgout import SvgFigure
from .triarc import solve_length_triarc

__all__ = ["JobSpec", "main"]

_CONFIG_KEYS = {"input", "out-csv", "out-svg", "grid", "tol",
                "mu-resolution"}


@dataclass(frozen=True)
class JobSpec:
    """One validated unit of work: a parsed input document plus output
    paths and numeric overrides."""

    subcommand: str
    document: dict
    out_csv: Optional[str] = None
    out_svg: Optional[str] = None
    grid: Optional[int] = None
    tol: float = 0.01
    mu_resolution: Optional[float] = None

    def __post_init__(self):
        if self.grid is not None and self.grid < 2:
            raise InvalidDataError("grid needs at least 2 steps")
        if not (self.tol > 0.0) or not math.isfinite(self.tol):
            raise InvalidDataError("tol must be a positive number")
        if self.mu_resolution is not None and not self.mu_resolution > 0.0:
            raise InvalidDataError("mu-resolution must be positive")
        kind = self.document.get("kind")
        allowed = {"approx": ("chord", "segments"),
                   "bounds": ("chord", "segments"),
                   "triarc": ("chord", "segments"),
                   "model": ("model",),
                   "oval": ("oval",)}[self.subcommand]
        if kind not in allowed:
            raise InvalidDataError(
                f"subcommand {self.subcommand} expects a document of kind "
                + " or ".join(allowed) + f", got {kind!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spiralarcs",
        description="circular-arc constructions for planar spiral curves")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, helptext in (
            ("approx", "length-preserving biarc approximation"),
            ("bounds", "attainable-length interval for chord data"),
            ("triarc", "inscribed triarc hitting a target length"),
            ("model", "endpoint set of two-level curvature profiles"),
            ("oval", "closed-curve closeness sweep")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--input", required=True, help="job document (YAML)")
        p.add_argument("--out-csv", help="write tabular output here")
        p.add_argument("--tol", type=float, default=0.01,
                       help="sampling tolerance, max turning per "
                            "polyline chord (radians)")
        p.add_argument("--config",
                       help="YAML mapping whose entries override flags")
        if name != "bounds":
            p.add_argument("--out-svg", help="write figure(s) here")
        if name in ("model", "oval"):
            p.add_argument("--grid", type=int, help="enumeration density")
        if name == "oval":
            p.add_argument("--mu-resolution", type=float, dest="mu_resolution",
                           help="contact bisection resolution (radians)")
    return parser


def _apply_config(args: argparse.Namespace) -> None:
    if not getattr(args, "config", None):
        return
    with open(args.config, "r", encoding="utf-8") as fh:
        cfg = yaml.safe_load(fh.read())
    if cfg is None:
        return
    if not isinstance(cfg, dict):
        raise InvalidDataError("config file must hold a mapping")
    for key, value in cfg.items():
        norm = str(key).replace("_", "-")
        if norm not in _CONFIG_KEYS:
            raise InvalidDataError(f"unknown config key {key!r}")
        setattr(args, norm.replace("-", "_"), value)


def _job_from_args(args: argparse.Namespace) -> JobSpec:
    _apply_config(args)
    doc = sio.load_document(args.input)
    return JobSpec(subcommand=args.subcommand,
                   document=doc,
                   out_csv=getattr(args, "out_csv", None),
                   out_svg=getattr(args, "out_svg", None),
                   grid=getattr(args, "grid", None),
                   tol=float(getattr(args, "tol", 0.01)),
                   mu_resolution=getattr(args, "mu_resolution", None))


# ---------------------------------------------------------------------------
# shared plumbing


def _chord_job(doc):
    """(data, length, to_world) for chord or traced-curve input.

    to_world is None in the chord frame case; otherwise the rigid motion
    mapping chord-frame geometry back to the input curve's coordinates.
    """
    if doc["kind"] == "chord":
        data, length = sio.chord_from_document(doc)
        return data, length, None
    curve = sio.curve_from_document(doc)
    data, motion = chord_frame(curve)
    return data, curve.length, motion.inverse()


def _world_curve(curve: PiecewiseConstCurve, to_world) -> PiecewiseConstCurve:
    if to_world is None:
        return curve
    return PiecewiseConstCurve(curve.segments,
                               to_world.apply_pose(curve.start))


def _write_samples_csv(path, curve: PiecewiseConstCurve, tol: float) -> None:
    pts, svals = curve.sample_with_arclength(max_angle=tol)
    sio.write_csv(path, ["s", "x", "y"],
                  ((s, x, y) for s, (x, y) in zip(svals, pts)))


def _lens_arcs(data):
    """The two tangent arcs through the chord endpoints (the lens)."""
    c, alpha, beta = data.c, data.alpha, data.beta
    out = []
    for tau0, turning in ((alpha, -2.0 * alpha), (-beta, 2.0 * beta)):
        length = arc_length_from_chord(2.0 * c, turning)
        out.append(PiecewiseConstCurve(((turning / length, length),),
                                       Pose(-c, 0.0, tau0)))
    return out


def _comment_block(items) -> str:
    return "".join(f"# {key}: {value}\n" for key, value in items)


# ---------------------------------------------------------------------------
# subcommands


def cmd_approx(job: JobSpec) -> int:
    data, length, to_world = _chord_job(job.document)
    if length is None:
        raise InvalidDataError("approx needs a length field in the document")
    res = solve_length_biarc(data, length)
    out_curve = _world_curve(res.biarc.curve(), to_world)

    sys.stdout.write(sio.dump_document(sio.document_for_curve(out_curve)))
    sys.stdout.write(_comment_block([
        ("p0", sio.format_float(res.p0)),
        ("q1", sio.format_float(res.q1)),
        ("q2", sio.format_float(res.q2)),
        ("width_bound", "none" if res.width_bound is None
         else sio.format_float(res.width_bound)),
        ("length", sio.format_float(out_curve.length)),
        ("ill_conditioned", str(res.ill_conditioned).lower()),
    ]))

    if job.out_csv:
        _write_samples_csv(job.out_csv, out_curve, job.tol)
    if job.out_svg:
        fig = SvgFigure()
        if job.document["kind"] == "segments":
            fig.add_polyline(sio.curve_from_document(job.document)
                             .sample(max_angle=job.tol), color="steelblue")
        for arc in _lens_arcs(data if not isinstance(data, G2ChordData)
                              else data.chord):
            fig.add_polyline(_world_curve(arc, to_world)
                             .sample(max_angle=job.tol),
                             color="gray", dashed=True)
        if isinstance(data, G2ChordData):
            poly = Bilens(data).boundary_polygon(max_angle=job.tol)
            if to_world is not None:
                poly = to_world.apply(poly)
            fig.add_polyline(poly, color="darkseagreen", closed=True)
        fig.add_polyline(out_curve.sample(max_angle=job.tol), color="black")
        ends = out_curve.vertex_poses()
        fig.add_points([[ends[0].x, ends[0].y], [ends[-1].x, ends[-1].y]])
        fig.save(job.out_svg)
    return 0


def cmd_bounds(job: JobSpec) -> int:
    data, _, _ = _chord_job(job.document)
    b = length_bounds(data)
    for name in ("outer_lower", "lower", "upper", "outer_upper"):
        sys.stdout.write(f"{name} = {sio.format_float(getattr(b, name))}\n")
    sys.stdout.write(f"chord = {sio.format_float(2.0 * b.chord)}\n")
    if job.out_csv:
        sio.write_csv(job.out_csv,
                      ["outer_lower", "lower", "upper", "outer_upper"],
                      [(b.outer_lower, b.lower, b.upper, b.outer_upper)])
    return 0


def cmd_triarc(job: JobSpec) -> int:
    data, length, to_world = _chord_job(job.document)
    if length is None:
        raise InvalidDataError("triarc needs a length field in the document")
    if not isinstance(data, G2ChordData):
        raise InvalidDataError("triarc needs curvature fields k1, k2")
    tri = solve_length_triarc(data, length)
    out_curve = _world_curve(tri.curve(), to_world)

    sys.stdout.write(sio.dump_document(sio.document_for_curve(out_curve)))
    ks = tri.curvatures
    sys.stdout.write(_comment_block([
        ("curvatures", "[%s]" % ", ".join(sio.format_float(k) for k in ks)),
        ("spiral", str(tri.is_spiral).lower()),
        ("length", sio.format_float(out_curve.length)),
    ]))

    if job.out_csv:
        _write_samples_csv(job.out_csv, out_curve, job.tol)
    if job.out_svg:
        fig = SvgFigure()
        ends = out_curve.vertex_poses()
        fig.add_polyline([[ends[0].x, ends[0].y], [ends[-1].x, ends[-1].y]],
                         color="gray", dashed=True)
        fig.add_polyline(out_curve.sample(max_angle=job.tol), color="black")
        fig.add_points([[p.x, p.y] for p in ends])
        fig.save(job.out_svg)
    return 0


def cmd_model(job: JobSpec) -> int:
    kwargs = sio.model_args_from_document(job.document)
    if job.grid is not None:
        kwargs["grid"] = job.grid
    kwargs.setdefault("grid", 64)
    theta = kwargs.pop("theta", None)
    if theta is None:
        es = endpoint_set_spiral(**kwargs)
    else:
        es = fixed_turning_subset(theta=theta, **kwargs)

    sys.stdout.write(f"points = {len(es.points)}\n")
    sys.stdout.write("boundary = %s\n" % (
        "simple" if es.boundary_is_simple else "self-intersecting"))
    sys.stdout.write("bounds = %s\n" % ", ".join(b.name for b in es.bounds))

    if job.out_csv:
        sio.write_csv(job.out_csv, ["q1", "q2", "l1", "x", "y"],
                      ((q1, q2, l1, z.real, z.imag)
                       for (q1, q2, l1), z in zip(es.params, es.points)))
    if job.out_svg:
        fig = SvgFigure()
        fig.add_points(es.points, color="slategray")
        for b, color in zip(es.bounds, ("crimson", "royalblue")):
            fig.add_polyline(b.points, color=color)
        fig.save(job.out_svg)
    return 0


def cmd_oval(job: JobSpec) -> int:
    spec, opts = sio.oval_from_document(job.document)
    if job.grid is not None:
        opts["grid"] = job.grid
    if job.mu_resolution is not None:
        opts["resolution"] = job.mu_resolution
    rep = closeness_sweep(spec, **opts)

    ranger = natural_mu_range if rep.parameter == "mu" else natural_nu_range
    lo, hi = ranger(spec)
    sys.stdout.write(f"parameter = {rep.parameter}\n")
    sys.stdout.write("natural_range = [%s, %s]\n"
                     % (sio.format_float(lo), sio.format_float(hi)))
    sys.stdout.write(f"verdict = {rep.verdict}\n")
    sys.stdout.write("contacts = [%s]\n" % ", ".join(
        sio.format_float(c) for c in rep.contacts))

    if job.out_csv:
        sio.write_csv(job.out_csv, [rep.parameter, "intersects", "area"],
                      ((v, 1.0 if flag else 0.0, area)
                       for v, flag, area in rep.entries))
    if job.out_svg:
        _oval_frames(job, spec, rep)
    return 0


def _oval_frames(job: JobSpec, spec, rep) -> None:
    """One figure per sweep sample, numbered from the --out-svg path."""
    base = Path(job.out_svg)
    grid = job.grid if job.grid is not None else 8
    for i, (value, flag, _) in enumerate(rep.entries):
        fig = SvgFigure()
        for orientation, color in (("first", "crimson"),
                                   ("second", "royalblue")):
            try:
                es = one_vertex_endpoint_set(spec, value, orientation,
                                             grid=grid,
                                             parameter=rep.parameter)
            except InvalidDataError:
                continue
            fig.add_polyline(es.boundary_loop, color=color, closed=True)
            fig.add_points(es.points[::7], color=color)
        fig.add_label("%s = %.6f%s" % (rep.parameter, value,
                                       " *" if flag else ""),
                      (0.0, 0.0))
        fig.save(base.with_name(f"{base.stem}_{i:03d}{base.suffix}"))


_DISPATCH = {"approx": cmd_approx, "bounds": cmd_bounds,
             "triarc": cmd_triarc, "model": cmd_model, "oval": cmd_oval}


def _fail(code: int, err: Exception) -> int:
    sys.stderr.write(json.dumps(
        {"status": "error", "exit": code, "type": type(err).__name__,
         "message": str(err)}, sort_keys=True) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = _job_from_args(args)
        return _DISPATCH[job.subcommand](job)
    except InvalidDataError as err:
        return _fail(2, err)
    except SolverError as err:
        return _fail(3, err)
    except OSError as err:
        return _fail(2, err)


if __name__ == "__main__":
    sys.exit(main())
