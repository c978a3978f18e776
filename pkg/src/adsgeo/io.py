"""CSV / JSON serialization of sampled trajectories."""

from __future__ import annotations

import csv
import json
from contextlib import contextmanager
from importlib import metadata
from typing import Optional

import numpy as np

from . import algebra, horizontality
from .horizontality import Distribution, Trajectory

__all__ = [
    "CSV_HEADER",
    "package_version",
    "trajectory_table",
    "write_csv",
    "read_csv",
    "trajectory_document",
    "write_json",
    "read_json",
]

CSV_HEADER = (
    "s,x1,x2,x3,x4,xi1,xi2,xi3,xi4,H,"
    "manifold_residual,horiz_residual,hcoord1,hcoord2"
)
_COLUMNS = CSV_HEADER.split(",")


def package_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:  # running from a source tree
        return "0.0.0"


def _column_data(t: Trajectory, dist: Optional[Distribution]) -> np.ndarray:
    """Assemble the (n, 14) table backing the CSV layout."""
    n = len(t)
    out = np.full((n, 14), np.nan)
    out[:, 0] = t.params
    out[:, 1:5] = t.points
    if t.momenta is not None:
        out[:, 5:9] = t.momenta
    diag = t.diagnostics or {}

    def col(name):
        v = diag.get(name)
        if v is None:
            return None
        v = np.asarray(v, dtype=float)
        return v if v.shape == (n,) else None

    for j, name in enumerate(
        ("H", "manifold_residual", "horiz_residual", "hcoord1", "hcoord2")
    ):
        v = col(name)
        if v is not None:
            out[:, 9 + j] = v

    # fill what can be recomputed from the samples themselves
    if col("manifold_residual") is None:
        out[:, 10] = [algebra.manifold_residual(x) for x in t.points]
    if dist is not None and t.velocities is not None:
        if col("horiz_residual") is None:
            out[:, 11] = [
                horizontality.horizontality_residual(x, v, dist)
                for x, v in zip(t.points, t.velocities)
            ]
        if col("hcoord1") is None or col("hcoord2") is None:
            hc = np.array(
                [
                    horizontality.horizontal_coords(x, v, dist)
                    for x, v in zip(t.points, t.velocities)
                ]
            )
            out[:, 12] = hc[:, 0]
            out[:, 13] = hc[:, 1]
    return out


def trajectory_table(
    t: Trajectory, dist: Optional[Distribution] = None
) -> tuple[list[str], np.ndarray]:
    """Column names and the numeric table used by both output formats."""
    return list(_COLUMNS), _column_data(t, dist)


@contextmanager
def _opened(path_or_file, mode: str = "w"):
    if hasattr(path_or_file, "write" if "w" in mode else "read"):
        yield path_or_file
    else:
        with open(path_or_file, mode, newline="") as fh:
            yield fh


def write_csv(path, t: Trajectory, dist: Optional[Distribution] = None) -> None:
    _, data = trajectory_table(t, dist)
    with _opened(path) as fh:
        fh.write(CSV_HEADER + "\n")
        w = csv.writer(fh, lineterminator="\n")
        for row in data:
            w.writerow([f"{v:.17g}" for v in row])


def read_csv(path) -> Trajectory:
    with _opened(path, "r") as fh:
        r = csv.reader(fh)
        header = next(r)
        if header != _COLUMNS:
            raise ValueError(f"unexpected CSV header {header!r}")
        data = np.array([[float(v) for v in row] for row in r])
    if data.ndim != 2 or data.shape[1] != 14:
        raise ValueError("malformed trajectory CSV")
    momenta = data[:, 5:9]
    if not np.all(np.isfinite(momenta)):
        momenta = None
    diag = {}
    for j, name in enumerate(
        ("H", "manifold_residual", "horiz_residual", "hcoord1", "hcoord2")
    ):
        colv = data[:, 9 + j]
        if np.all(np.isfinite(colv)):
            diag[name] = colv
    return Trajectory(
        params=data[:, 0],
        points=data[:, 1:5],
        velocities=None,
        momenta=momenta,
        diagnostics=diag,
    )


def trajectory_document(
    t: Trajectory,
    dist: Optional[Distribution] = None,
    command: str = "",
    params: Optional[dict] = None,
) -> dict:
    names, data = trajectory_table(t, dist)
    samples = []
    for row in data:
        samples.append(
            {k: (float(v) if np.isfinite(v) else None) for k, v in zip(names, row)}
        )
    return {
        "meta": {
            "command": command,
            "params": params or {},
            "version": package_version(),
        },
        "samples": samples,
    }


def write_json(
    path,
    t: Trajectory,
    dist: Optional[Distribution] = None,
    command: str = "",
    params: Optional[dict] = None,
) -> None:
    doc = trajectory_document(t, dist, command=command, params=params)
    with _opened(path) as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def read_json(path) -> tuple[dict, Trajectory]:
    with _opened(path, "r") as fh:
        doc = json.load(fh)
    samples = doc["samples"]
    data = np.array(
        [
            [float("nan") if s[k] is None else float(s[k]) for k in _COLUMNS]
            for s in samples
        ]
    )
    momenta = data[:, 5:9]
    if not np.all(np.isfinite(momenta)):
        momenta = None
    diag = {}
    for j, name in enumerate(
        ("H", "manifold_residual", "horiz_residual", "hcoord1", "hcoord2")
    ):
        colv = data[:, 9 + j]
        if np.all(np.isfinite(colv)):
            diag[name] = colv
    return doc.get("meta", {}), Trajectory(
        params=data[:, 0],
        points=data[:, 1:5],
        velocities=None,
        momenta=momenta,
        diagnostics=diag,
    )
