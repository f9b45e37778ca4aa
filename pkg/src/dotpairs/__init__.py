"""Exact counting of pairs of dot products and the incidence bounds that control them."""

from .constructions import (ConstructionError, ConstructionReport, gen_highdim_cubic,
                            gen_line_fan, gen_pencil, gen_separated_grid, validate_construction)
from .counting import (PiCount, PiDecomposition, count_pi_bruteforce, count_pi_fast,
                       enumerate_pi_triples)
from .geometry import (FlatKey, FlatStats, Hyperplane, PointSet, RichnessHistogram,
                       affine_hull_key, dot, dual_hyperplane, dual_richness_histogram,
                       flat_stats, hyperplane_weight, incidence_count, k2t_free_check,
                       spanned_richness_histogram)
from .scalars import FieldSpec, MixedFieldError, PrimeFieldElement, format_scalar, parse_scalar
from .verifier import (BoundReport, MajorantPair, check_general_highdim, check_general_plane,
                       check_incidence_lemma, check_majorant_lemma, check_s2n,
                       covert_senger_sweep, envelope_ratios, st_richness_ratio)

__version__ = "0.1.0"
