"""Line fields on triangulated surfaces: defect indices, branched double
covers and machine checks of the index theorems."""

from .catalog import CatalogKey, corpus, default_connection, generate_field, generate_mesh
from .checks import run_checks
from .connection import Connection, build_connection, corner_angles, principal, star_holonomy
from .cover import (
    BranchedCover,
    antipodal_map,
    branched_double_cover,
    cover_index_checks,
    lift_line_field,
    quotient_by_involution,
    sign_cocycle,
)
from .errors import LineFieldError
from .fields import (
    DefectReport,
    LineField,
    VectorField,
    double_with_field,
    field_indices,
    line_field_indices,
    line_field_of_vector_field,
    mirror_field,
    prescribe_defects,
    vector_field_indices,
)
from .io import field_from_json, field_to_json, parse_off, read_off, write_off
from .mesh import Mesh, build_mesh, double_along_boundary, euler_characteristic, orientability, vertex_star
from .render import render_svg
from .verify import VerificationReport

__version__ = "0.1.0"
