"""Triangulated grid meshes with causal vertex colors, PLY and OBJ export.

Vertices carry (x, y, t, r, g, b); the color encodes the causal verdict at
the vertex: space-like blue, time-like red, null white.  A regular NX x NY
grid triangulates into 2 (NX-1)(NY-1) faces.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .lorentz import Causal

CAUSAL_COLORS = {
    Causal.SPACELIKE: (0, 0, 255),
    Causal.TIMELIKE: (255, 0, 0),
    Causal.NULL: (255, 255, 255),
}


@dataclass
class Mesh:
    """vertices: (n, 6) float array of x, y, t, r, g, b; faces: (m, 3) ints."""

    vertices: np.ndarray
    faces: np.ndarray

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 6)
        self.faces = np.asarray(self.faces, dtype=np.int64).reshape(-1, 3)
        if len(self.faces) and (
            self.faces.min() < 0 or self.faces.max() >= len(self.vertices)
        ):
            raise ValueError("face indices out of range")


def build_grid_mesh(
    evaluate: Callable[[float, float], tuple[tuple[float, float, float], Causal]],
    us: np.ndarray,
    vs: np.ndarray,
    row_mapper: Callable = map,
) -> Mesh:
    """Mesh a callable (u, v) -> ((x, y, t), causal kind) over a grid.

    ``row_mapper`` applies the per-row evaluation and may be a parallel map.
    """
    us, vs = np.asarray(us, dtype=float), np.asarray(vs, dtype=float)
    nu, nv = len(us), len(vs)
    verts = np.empty((nu * nv, 6))
    rows = list(row_mapper(lambda u: [evaluate(u, v) for v in vs], us))
    for i, row in enumerate(rows):
        for j, (point, kind) in enumerate(row):
            verts[i * nv + j, :3] = point
            verts[i * nv + j, 3:] = CAUSAL_COLORS[kind]
    faces = []
    for i in range(nu - 1):
        for j in range(nv - 1):
            a = i * nv + j
            b = a + nv
            faces.append((a, b, a + 1))
            faces.append((a + 1, b, b + 1))
    return Mesh(verts, np.array(faces, dtype=np.int64).reshape(-1, 3))


# ---------------------------------------------------------------------------
# PLY
# ---------------------------------------------------------------------------


def _ply_header(n_verts: int, n_faces: int, binary: bool) -> str:
    fmt = "binary_little_endian" if binary else "ascii"
    return (
        "ply\n"
        f"format {fmt} 1.0\n"
        f"element vertex {n_verts}\n"
        "property float x\n"
        "property float y\n"
        "property float z\n"
        "property uchar red\n"
        "property uchar green\n"
        "property uchar blue\n"
        f"element face {n_faces}\n"
        "property list uchar int vertex_indices\n"
        "end_header\n"
    )


def write_ply(mesh: Mesh, path: str, binary: bool = False) -> None:
    header = _ply_header(len(mesh.vertices), len(mesh.faces), binary)
    if binary:
        with open(path, "wb") as fh:
            fh.write(header.encode("ascii"))
            for v in mesh.vertices:
                fh.write(struct.pack("<fff", v[0], v[1], v[2]))
                fh.write(struct.pack("<BBB", int(v[3]), int(v[4]), int(v[5])))
            for f in mesh.faces:
                fh.write(struct.pack("<Biii", 3, int(f[0]), int(f[1]), int(f[2])))
        return
    with open(path, "w") as fh:
        fh.write(header)
        for v in mesh.vertices:
            fh.write(
                f"{v[0]:.17g} {v[1]:.17g} {v[2]:.17g} "
                f"{int(v[3])} {int(v[4])} {int(v[5])}\n"
            )
        for f in mesh.faces:
            fh.write(f"3 {int(f[0])} {int(f[1])} {int(f[2])}\n")


def read_ply(path: str) -> Mesh:
    """Reference reader for the PLY subset this package writes."""
    with open(path, "rb") as fh:
        raw = fh.read()
    end = raw.index(b"end_header\n") + len(b"end_header\n")
    header = raw[:end].decode("ascii").splitlines()
    if header[0] != "ply":
        raise ValueError("not a PLY file")
    binary = any("binary_little_endian" in line for line in header)
    n_verts = n_faces = 0
    for line in header:
        parts = line.split()
        if parts[:2] == ["element", "vertex"]:
            n_verts = int(parts[2])
        elif parts[:2] == ["element", "face"]:
            n_faces = int(parts[2])
    verts = np.empty((n_verts, 6))
    faces = np.empty((n_faces, 3), dtype=np.int64)
    if binary:
        off = end
        for i in range(n_verts):
            x, y, z = struct.unpack_from("<fff", raw, off)
            r, g, b = struct.unpack_from("<BBB", raw, off + 12)
            verts[i] = (x, y, z, r, g, b)
            off += 15
        for i in range(n_faces):
            cnt, a, b_, c = struct.unpack_from("<Biii", raw, off)
            if cnt != 3:
                raise ValueError("non-triangle face")
            faces[i] = (a, b_, c)
            off += 13
    else:
        lines = raw[end:].decode("ascii").split("\n")
        for i in range(n_verts):
            verts[i] = [float(s) for s in lines[i].split()]
        for i in range(n_faces):
            parts = lines[n_verts + i].split()
            if parts[0] != "3":
                raise ValueError("non-triangle face")
            faces[i] = [int(s) for s in parts[1:4]]
    return Mesh(verts, faces)


# ---------------------------------------------------------------------------
# OBJ
# ---------------------------------------------------------------------------


def write_obj(mesh: Mesh, path: str) -> None:
    """OBJ export; positions only, indices are 1-based."""
    with open(path, "w") as fh:
        for v in mesh.vertices:
            fh.write(f"v {v[0]:.17g} {v[1]:.17g} {v[2]:.17g}\n")
        for f in mesh.faces:
            fh.write(f"f {int(f[0]) + 1} {int(f[1]) + 1} {int(f[2]) + 1}\n")
