"""JSON and CSV file formats.

All indices in files are 1-based; faces carry signed edge labels.
"""

from __future__ import annotations

import csv
import json
import sys

import numpy as np

from conesurf.combinatorics import CurveClass, Triangulation, build_triangulation, validate_curve
from conesurf.cone_metric import ConeSurface
from conesurf.errors import ConeSurfError, EulerError
from conesurf.foliation import ShearRadius


class InputError(ConeSurfError):
    """Unreadable or malformed input file."""


def load_json(path) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path} must contain a JSON object")
    return data


def _field(data, key, path):
    if key not in data:
        raise InputError(f"{path} has no {key!r} field")
    return data[key]


def _floats(values, key, path) -> np.ndarray:
    try:
        return np.array([float(x) for x in values])
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: {key!r} must be a list of numbers") from exc


def triangulation_from_dict(data, path="<input>") -> Triangulation:
    faces = _field(data, "faces", path)
    if not isinstance(faces, list) or not all(isinstance(f, list) for f in faces):
        raise InputError(f"{path}: 'faces' must be a list of integer triples")
    T = build_triangulation(faces)
    for key, have in (("genus", T.genus), ("marked", T.num_vertices)):
        if key in data and int(data[key]) != have:
            raise EulerError(f"{path} declares {key}={data[key]} but the gluing gives {have}")
    return T


def load_triangulation(path) -> Triangulation:
    return triangulation_from_dict(load_json(path), path)


def triangulation_to_dict(T: Triangulation) -> dict:
    return {"genus": T.genus, "marked": T.num_vertices, "faces": T.signed_faces()}


def load_edge_vector(path, T: Triangulation, keys=("edge_lengths", "edge_weights")) -> np.ndarray:
    data = load_json(path)
    for key in keys:
        if key in data:
            v = _floats(data[key], key, path)
            if v.shape != (T.num_edges,):
                raise InputError(f"{path}: {key!r} has {v.size} entries, expected {T.num_edges}")
            return v
    raise InputError(f"{path} has none of the fields {', '.join(keys)}")


def load_metric(path, T: Triangulation) -> ConeSurface:
    return ConeSurface(T, load_edge_vector(path, T))


def load_shear_radius(path, T: Triangulation) -> ShearRadius:
    data = load_json(path)
    s = _floats(_field(data, "shears", path), "shears", path)
    r = _floats(_field(data, "radii", path), "radii", path)
    if s.shape != (T.num_edges,) or r.shape != (T.num_vertices,):
        raise InputError(f"{path}: need {T.num_edges} shears and {T.num_vertices} radii")
    return ShearRadius(s, r)


def load_shears(path, T: Triangulation) -> np.ndarray:
    data = load_json(path)
    s = _floats(_field(data, "shears", path), "shears", path)
    if s.shape != (T.num_edges,):
        raise InputError(f"{path}: need {T.num_edges} shears")
    return s


def curves_from_dict(data, T: Triangulation, path="<input>") -> list[CurveClass]:
    out = []
    for i, item in enumerate(_field(data, "curves", path)):
        name = str(item.get("name", f"curve{i + 1}"))
        steps = item.get("steps", [])
        try:
            c = CurveClass.from_steps(T, steps, name)
        except ConeSurfError:
            raise
        except (TypeError, ValueError) as exc:
            raise InputError(f"{path}: curve {name!r} steps must be [edge, face] pairs") from exc
        except IndexError as exc:
            raise InputError(f"{path}: curve {name!r}: {exc}") from exc
        out.append(validate_curve(T, c))
    return out


def load_curves(path, T: Triangulation) -> list[CurveClass]:
    return curves_from_dict(load_json(path), T, path)


def to_builtin(obj):
    if isinstance(obj, np.ndarray):
        return [to_builtin(x) for x in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, dict):
        return {k: to_builtin(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_builtin(x) for x in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(to_builtin(obj), indent=2, sort_keys=True) + "\n"


def write_json(obj, path=None):
    text = dumps(obj)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def fmt(x: float) -> str:
    return "%.12g" % x


def ray_csv_header(table) -> list[str]:
    E, V = table.lengths.shape[1], table.radii.shape[1]
    return (["t"] + [f"L_{i + 1}" for i in range(E)] + [f"theta_{i + 1}" for i in range(V)]
            + [f"s_{i + 1}" for i in range(E)] + [f"r_{i + 1}" for i in range(V)]
            + [f"len_{n}" for n in table.curve_names] + ["flags"])


def write_ray_csv(table, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(ray_csv_header(table))
    for i in range(len(table)):
        row = [table.t[i], *table.lengths[i], *table.angles[i], *table.shears[i], *table.radii[i],
               *table.curve_lengths[i]]
        w.writerow([fmt(x) for x in row] + [";".join(table.flags[i])])
