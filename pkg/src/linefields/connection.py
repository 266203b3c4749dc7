"""Corner angles and the discrete Levi-Civita transport between adjacent faces.

Each face carries its own frame: angle 0 points along the halfedge from the
face's first vertex to its second, and angles increase towards the third
vertex.  Only corner angles enter the frames, so the metric is intrinsic.

Transport across halfedge ``h`` (face ``f`` to the face ``g`` glued to it)
sends an angle ``a`` in the frame of ``f`` to ``orient[h] * a + rho[h]`` in
the frame of ``g``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTriangleError, NoPositionsError

__all__ = [
    "Connection",
    "principal",
    "corner_angles",
    "build_connection",
    "gauss_bonnet_residual",
    "star_holonomy",
]

TWO_PI = 2.0 * np.pi


def principal(x):
    """Representative of ``x`` in (-pi, pi]."""
    y = np.mod(np.asarray(x, dtype=float) + np.pi, TWO_PI) - np.pi
    y = np.where(y == -np.pi, np.pi, y)
    return float(y) if np.ndim(y) == 0 else y


def corner_angles(mesh, mode="equilateral", positions=None):
    """Corner angles as an ``(F, 3)`` array, column ``i`` at ``faces[:, i]``.

    ``mode="planar"`` measures Euclidean angles from 2D vertex positions
    (``positions`` or ``mesh.positions``; a third coordinate must vanish).
    """
    if mode == "equilateral":
        return np.full((mesh.F, 3), np.pi / 3.0)
    if mode != "planar":
        raise ValueError(f"unknown metric mode {mode!r}")
    pos = mesh.positions if positions is None else np.asarray(positions, dtype=float)
    if pos is None:
        raise NoPositionsError("planar metric needs vertex positions")
    if pos.shape[1] > 2:
        if np.abs(pos[:, 2:]).max() > 1e-12:
            raise NoPositionsError("planar metric needs positions in the plane z = 0")
        pos = pos[:, :2]
    p = pos[mesh.faces]  # (F, 3, 2)
    e1 = np.roll(p, -1, axis=1) - p  # towards next corner
    e2 = np.roll(p, 1, axis=1) - p  # towards previous corner
    cross = e1[..., 0] * e2[..., 1] - e1[..., 1] * e2[..., 0]
    area = 0.5 * np.abs(cross[:, 0])
    bad = np.flatnonzero(area < 1e-12)
    if bad.size:
        raise DegenerateTriangleError(f"faces with vanishing area: {bad.tolist()[:10]}")
    dot = (e1 * e2).sum(axis=-1)
    return np.arctan2(np.abs(cross), dot)


def halfedge_directions(angles):
    """Direction of each halfedge in its own face frame, shape ``(3F,)``."""
    a0, a1 = angles[:, 0], angles[:, 1]
    d = np.stack([np.zeros_like(a0), np.pi - a1, np.pi + a0], axis=1)
    return d.reshape(-1)


def corner_bisectors(angles):
    """Frame angle of the bisector pointing from each corner into its face."""
    a0, a1 = angles[:, 0], angles[:, 1]
    return np.stack([a0 / 2.0, np.pi - a1 / 2.0, 1.5 * np.pi + (a0 - a1) / 2.0], axis=1)


@dataclass(frozen=True, eq=False)
class Connection:
    mesh: object
    angles: np.ndarray
    rho: np.ndarray
    orient: np.ndarray
    defect: np.ndarray
    directions: np.ndarray
    bisectors: np.ndarray

    def transport(self, h, angle):
        return self.orient[h] * angle + self.rho[h]


def build_connection(mesh, angles=None):
    """Lay out each pair of glued triangles across their common edge.

    Faces that agree in orientation are related by a rotation; faces that
    disagree by the reflection fixing the shared edge.
    """
    if angles is None:
        angles = corner_angles(mesh)
    angles = np.asarray(angles, dtype=float)
    if angles.shape != (mesh.F, 3):
        raise ValueError("angles must have shape (F, 3)")
    if (angles <= 0).any() or np.abs(angles.sum(axis=1) - np.pi).max() > 1e-9:
        raise ValueError("corner angles must be positive and sum to pi in every face")
    d = halfedge_directions(angles)
    nh = 3 * mesh.F
    rho = np.zeros(nh)
    orient = np.zeros(nh, dtype=np.int64)
    faces = mesh.faces
    for h in range(nh):
        t = int(mesh.twin[h])
        if t < 0:
            continue
        same_dir = faces[h // 3, h % 3] == faces[t // 3, t % 3]
        if same_dir:
            orient[h] = -1
            rho[h] = d[h] + d[t]
        else:
            orient[h] = 1
            rho[h] = d[t] + np.pi - d[h]
    rho = principal(rho)
    rho[orient == 0] = 0.0

    sums = np.zeros(mesh.V)
    np.add.at(sums, faces.reshape(-1), angles.reshape(-1))
    defect = np.where(mesh.boundary_vertex, np.pi - sums, TWO_PI - sums)
    for arr in (rho, orient, defect, d, angles):
        arr.setflags(write=False)
    bis = corner_bisectors(angles)
    bis.setflags(write=False)
    return Connection(mesh, angles, rho, orient, defect, d, bis)


def gauss_bonnet_residual(conn):
    """``|sum of angle defects and boundary turning - 2 pi chi|``."""
    mesh = conn.mesh
    chi = mesh.V - mesh.E + mesh.F
    return abs(float(conn.defect.sum()) - TWO_PI * chi)


def walk_signs(star):
    return [1 - 2 * b for b in star.flips]


def star_holonomy(conn, v, reverse=False):
    """Rotation picked up by parallel transport once around the star of ``v``.

    Measured in walk coordinates of the star's first face; equals the angle
    defect of ``v`` modulo 2 pi (its negative for the reversed walk).
    """
    star = conn.mesh.star(v)
    if not star.cyclic:
        raise ValueError(f"vertex {v} is on the boundary")
    s = walk_signs(star)
    n = len(star)
    total = 0.0
    for j in range(n):
        h = star.crossings[j]
        total += s[(j + 1) % n] * conn.rho[h]
    if reverse:
        total = -total
    return principal(total)
