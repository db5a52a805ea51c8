"""Multiple-point spaces of finite simplicial maps and the spectral
sequences computing the homology of their images, over the integers."""

from .complexes import (
    Chain,
    SimplicialComplex,
    SimplicialMap,
    boundary_chain,
    boundary_matrix,
    build_complex,
    homology_of_complex,
    pushforward,
    pushforward_matrix,
    validate_map,
)
from .alternating import (
    AltBasis,
    alt_Z,
    alternating_homology,
    alternating_homology_kernel,
    is_alternating,
)
from .cohomology import (
    alt_star_matrix,
    alternating_cochain_homology,
    cochain_homology,
    dual_alternating_homology,
    dualize,
    theta_matrix,
)
from .errors import IcssError
from .fixtures import FIXTURES, fixture_names, get_fixture
from .intlinalg import (
    HomologyGroup,
    IntMatrix,
    Subgroup,
    invariant_factors,
    kernel_basis,
    smith_normal_form,
    solve,
    subgroup_quotient,
)
from .io import MapDocument, document_from_map, emit_map, emit_report, parse_map
from .multiplicity import (
    MultiplePointComplex,
    SkElement,
    Tower,
    build_D,
    build_W,
    fk_map,
    ordered_lifts,
    projection_eps,
)
from .spectral import (
    DoubleComplex,
    SpectralSequence,
    build_double,
    check_collapse_first,
    first_ss,
    gvzss,
    gvzss_report,
    icss,
    icss_report,
)
from .verify import (
    check_D2_kernel,
    check_D_row_exact,
    check_houston,
    check_W_row_exact,
    run_all,
)

__version__ = "0.1.0"
