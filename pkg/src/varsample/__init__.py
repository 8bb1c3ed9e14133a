"""Almost-uniform sampling of rational points on affine varieties over F_p."""

from .elim import (
    MAX_K,
    IntersectionClass,
    Kind,
    PolySystem,
    classify_intersection,
    enumerate_solutions,
    lex_groebner,
)
from .field import Field, FieldElement, RandomSource, mk_field, rand_element
from .geometry import (
    AffineSubspace,
    contains,
    count_affine_subspaces,
    count_linear_subspaces,
    enumerate_affine_subspaces,
    sample_affine_subspace,
)
from .poly import MultiPoly, UniPoly, format_poly, parse_poly, substitute_affine
from .rootfind import powmod_x_q, roots_in_field, upoly_gcd
from .sampler import (
    BipartiteOracles,
    SamplerParams,
    SampleReport,
    bipartite_sample,
    make_variety_oracles,
    retry_budget,
    sample_variety,
    sample_variety_point,
)

__version__ = "0.1.0"
