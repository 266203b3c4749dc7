"""Face lists for the catalog surfaces."""

import numpy as np


def icosahedron():
    t = (1.0 + np.sqrt(5.0)) / 2.0
    verts = np.array(
        [
            [-1, t, 0], [1, t, 0], [-1, -t, 0], [1, -t, 0],
            [0, -1, t], [0, 1, t], [0, -1, -t], [0, 1, -t],
            [t, 0, -1], [t, 0, 1], [-t, 0, -1], [-t, 0, 1],
        ],
        dtype=float,
    )
    faces = [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ]
    verts /= np.linalg.norm(verts, axis=1, keepdims=True)
    return verts, np.array(faces, dtype=np.int64)


def icosphere(level):
    """Icosahedron subdivided ``level`` times, vertices pushed to the unit sphere."""
    verts, faces = icosahedron()
    verts = list(map(tuple, verts))
    for _ in range(level):
        cache = {}

        def midpoint(a, b):
            key = (min(a, b), max(a, b))
            if key not in cache:
                m = (np.asarray(verts[a]) + np.asarray(verts[b])) / 2.0
                verts.append(tuple(m / np.linalg.norm(m)))
                cache[key] = len(verts) - 1
            return cache[key]

        new = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            new += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = np.array(new, dtype=np.int64)
    return np.array(verts), faces


def torus_grid(a, b):
    """Triangular-lattice torus: every vertex has valence 6."""
    vid = lambda i, j: (j % b) * a + (i % a)  # noqa: E731
    faces = []
    for j in range(b):
        for i in range(a):
            faces.append((vid(i, j), vid(i + 1, j), vid(i, j + 1)))
            faces.append((vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)))
    return a * b, np.array(faces, dtype=np.int64)


def klein_grid(a, b):
    """Triangular lattice modulo a glide reflection: a flat Klein bottle.

    The group is generated by the glide ``(i, j) -> (i + j + a, -j)`` (a
    reflection of the lattice in a row followed by ``a`` steps along it) and
    the translation ``(i, j) -> (i - b/2, j + b)``.  ``b`` must be even.
    """
    m = b // 2
    n2 = 2 * a

    def torus(i, j):
        k = j // b
        i, j = i + k * m, j - k * b
        return i % n2, j

    def glide(p):
        i, j = p
        return torus(i + j + a, -j)

    reps = {}
    for j in range(b):
        for i in range(n2):
            p = (i, j)
            q = glide(p)
            key = min((p[1], p[0]), (q[1], q[0]))
            reps[p] = key
    labels = {key: n for n, key in enumerate(sorted(set(reps.values())))}
    vid = lambda i, j: labels[reps[torus(i, j)]]  # noqa: E731

    seen = set()
    faces = []
    for j in range(b):
        for i in range(n2):
            for tri in (
                ((i, j), (i + 1, j), (i, j + 1)),
                ((i + 1, j), (i + 1, j + 1), (i, j + 1)),
            ):
                cells = frozenset(torus(*p) for p in tri)
                image = frozenset(glide(torus(*p)) for p in tri)
                key = min(tuple(sorted(cells)), tuple(sorted(image)))
                if key in seen:
                    continue
                seen.add(key)
                faces.append(tuple(vid(*p) for p in tri))
    return len(labels), np.array(faces, dtype=np.int64)


def _ring(count, radius, offset):
    ang = 2.0 * np.pi * (np.arange(count) + offset) / count
    return np.stack([radius * np.cos(ang), radius * np.sin(ang), np.zeros(count)], axis=1)


def _band(inner, outer, s):
    """Triangles between two rings of ``s`` vertices, the outer one turned half a step."""
    out = []
    for k in range(s):
        out.append((inner[k], inner[(k + 1) % s], outer[k]))
        out.append((outer[(k - 1) % s], outer[k], inner[k]))
    return out


def _ccw(faces, pos):
    faces = np.array(faces, dtype=np.int64)
    p = pos[faces][:, :, :2]
    e1, e2 = p[:, 1] - p[:, 0], p[:, 2] - p[:, 0]
    cw = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0] < 0
    faces[cw] = faces[cw][:, [0, 2, 1]]
    return faces


def disk_fan(rings, sectors):
    """Planar disk: a center vertex and ``rings`` staggered rings of ``sectors`` vertices."""
    pos = [np.zeros((1, 3))]
    ids = []
    nxt = 1
    for r in range(1, rings + 1):
        pos.append(_ring(sectors, r / rings, r / 2.0))
        ids.append(list(range(nxt, nxt + sectors)))
        nxt += sectors
    faces = [(0, ids[0][k], ids[0][(k + 1) % sectors]) for k in range(sectors)]
    for r in range(rings - 1):
        faces += _band(ids[r], ids[r + 1], sectors)
    pos = np.vstack(pos)
    return pos, _ccw(faces, pos)


def annulus_grid(sectors, rings):
    """Planar annulus: ``rings + 1`` staggered circles of radii 1..rings+1."""
    pos, ids = [], []
    for r in range(rings + 1):
        pos.append(_ring(sectors, 1.0 + r, r / 2.0))
        ids.append(list(range(r * sectors, (r + 1) * sectors)))
    faces = []
    for r in range(rings):
        faces += _band(ids[r], ids[r + 1], sectors)
    pos = np.vstack(pos)
    return pos, _ccw(faces, pos)

