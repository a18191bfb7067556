"""Command-line interface.

Exit status 0 on success, 2 for invalid input or domain errors, 3 for
geometric failures.  Errors go to stderr as ``ERROR <code>: <detail>``.
Edge, face and vertex numbers on the command line are 1-based.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from conesurf import io
from conesurf.cone_metric import (
    area,
    cone_angles,
    face_count_bound,
    from_shear_radius,
    gauss_bonnet_bound,
    geodesic_flip,
    max_angle_sequence,
    shear_radius_coords,
)
from conesurf.cusped import CuspedSurface, cusped_length, cusped_trace
from conesurf.deformations import StretchMode, sample_ray, stretch
from conesurf.errors import ConeSurfError


def _out(args, obj):
    io.write_json(obj, args.out)


def cmd_validate(args):
    T = io.load_triangulation(args.triangulation)
    print(f"V={T.num_vertices} E={T.num_edges} F={T.num_faces} g={T.genus} n={T.num_vertices}")
    for v in range(T.num_vertices):
        nf = len(T.faces_at(v))
        print(f"vertex {v + 1}: star={len(T.star_corners[v])} faces={nf} "
              f"bound={io.fmt(face_count_bound(T, v))}")


def cmd_coords(args):
    T = io.load_triangulation(args.triangulation)
    if args.src == "edges":
        X = io.load_metric(args.data, T)
    else:
        X = from_shear_radius(T, io.load_shear_radius(args.data, T))
    if args.dst == "edges":
        _out(args, {"edge_lengths": X.lengths})
    else:
        sr = shear_radius_coords(X)
        _out(args, {"shears": sr.s, "radii": sr.r})


def cmd_angles(args):
    T = io.load_triangulation(args.triangulation)
    X = io.load_metric(args.metric, T)
    theta = cone_angles(X)
    _out(args, {"cone_angles": theta, "area": area(X),
                "gauss_bonnet": gauss_bonnet_bound(T), "max_angle_below_pi": bool(np.all(theta < math.pi))})


def cmd_stretch(args):
    T = io.load_triangulation(args.triangulation)
    X = io.load_metric(args.metric, T)
    _out(args, {"edge_lengths": stretch(X, args.mode, args.t).lengths})


def cmd_ray(args):
    T = io.load_triangulation(args.triangulation)
    X = io.load_metric(args.metric, T)
    curves = io.load_curves(args.curves, T) if args.curves else []
    table = sample_ray(X, args.mode, args.t0, args.t1, args.steps, curves)
    if args.out and args.out != "-":
        with open(args.out, "w", newline="") as fh:
            io.write_ray_csv(table, fh)
    else:
        io.write_ray_csv(table, sys.stdout)


def cmd_cusped(args):
    T = io.load_triangulation(args.triangulation)
    Y = CuspedSurface(T, io.load_shears(args.shears, T))
    rows = []
    for c in io.load_curves(args.curves, T):
        tr = cusped_trace(Y, c)
        try:
            length = cusped_length(Y, c)
        except ConeSurfError:
            length = None
        rows.append({"name": c.name, "trace": tr, "length": length})
    _out(args, {"curves": rows})


def cmd_flip(args):
    T = io.load_triangulation(args.triangulation)
    X = io.load_metric(args.metric, T)
    if not 1 <= args.edge <= T.num_edges:
        raise io.InputError(f"edge {args.edge} out of range 1..{T.num_edges}")
    Y = geodesic_flip(X, args.edge - 1)
    out = io.triangulation_to_dict(Y.T)
    out["edge_lengths"] = Y.lengths
    out["new_length"] = float(Y.lengths[args.edge - 1])
    _out(args, out)


def cmd_maxangle(args):
    T = io.load_triangulation(args.triangulation)
    if not 1 <= args.vertex <= T.num_vertices:
        raise io.InputError(f"vertex {args.vertex} out of range 1..{T.num_vertices}")
    if args.n < 1:
        raise io.InputError("n must be at least 1")
    p = args.vertex - 1
    theta = cone_angles(max_angle_sequence(T, p, args.n))[p]
    bound = face_count_bound(T, p)
    print(f"theta={io.fmt(theta)} bound={io.fmt(bound)} deficit={io.fmt(bound - theta)}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="conesurf", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    modes = [m.value for m in StretchMode] + ["per", "int"]

    p = sub.add_parser("validate", help="check a triangulation file and print its counts")
    p.add_argument("triangulation")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("coords", help="convert between edge lengths and shear-radius coordinates")
    p.add_argument("triangulation")
    p.add_argument("data")
    p.add_argument("--from", dest="src", choices=["edges", "sr"], default="edges")
    p.add_argument("--to", dest="dst", choices=["edges", "sr"], default="sr")
    p.add_argument("--out")
    p.set_defaults(func=cmd_coords)

    p = sub.add_parser("angles", help="cone angles and area of a metric")
    p.add_argument("triangulation")
    p.add_argument("metric")
    p.add_argument("--out")
    p.set_defaults(func=cmd_angles)

    p = sub.add_parser("stretch", help="apply one stretch deformation")
    p.add_argument("triangulation")
    p.add_argument("metric")
    p.add_argument("--mode", choices=modes, default="peripheral")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_stretch)

    p = sub.add_parser("ray", help="sample a stretch ray to CSV")
    p.add_argument("triangulation")
    p.add_argument("metric")
    p.add_argument("--mode", choices=modes, default="peripheral")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t1", type=float, required=True)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--curves")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ray)

    p = sub.add_parser("cusped", help="curve lengths on the cusped surface with given shears")
    p.add_argument("triangulation")
    p.add_argument("shears")
    p.add_argument("--curves", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cusped)

    p = sub.add_parser("flip", help="geodesic flip of one edge")
    p.add_argument("triangulation")
    p.add_argument("metric")
    p.add_argument("--edge", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_flip)

    p = sub.add_parser("maxangle", help="cone angle of the maximal-angle sequence at one vertex")
    p.add_argument("triangulation")
    p.add_argument("--vertex", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_maxangle)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ConeSurfError as exc:
        detail = str(exc)
        angle_sum = getattr(exc, "angle_sum", None)
        if angle_sum is not None and "angle" not in detail:
            detail += f" (angle sum {angle_sum:.12g})"
        print(f"ERROR {exc.code}: {detail}", file=sys.stderr)
        return exc.exit_status
    except (IndexError, ValueError) as exc:
        print(f"ERROR {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
