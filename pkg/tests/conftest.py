import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from linefields import catalog  # noqa: E402

CLOSED = [
    ("icosphere", {"level": 0}),
    ("icosphere", {"level": 1}),
    ("icosphere", {"level": 2}),
    ("icosphere", {"level": 3}),
    ("torus_grid", {}),
    ("klein_grid", {}),
    ("rp2_minimal", {}),
]
WITH_BOUNDARY = [("disk_fan", {}), ("annulus_grid", {})]


@functools.lru_cache(maxsize=None)
def _mesh(name, items):
    mesh = catalog.generate_mesh(name, **dict(items))
    return mesh, catalog.default_connection(mesh)


def mesh_and_conn(name, params=None):
    return _mesh(name, tuple(sorted((params or {}).items())))


def torus7():
    from linefields import build_mesh

    faces = [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
    faces += [(i, (i + 2) % 7, (i + 3) % 7) for i in range(7)]
    return build_mesh(7, faces)


@pytest.fixture
def sphere3():
    return mesh_and_conn("icosphere", {"level": 3})


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
