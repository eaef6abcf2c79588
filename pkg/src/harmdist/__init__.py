"""harmdist: a normalized indel distance with a harmonic closed form.

    d(a, b) = 2 * H_{|a|+|b|-|lcs(a,b)|} - H_{|a|} - H_{|b|}

where H_n is the n-th harmonic number.  Each single-symbol edit is
priced at the reciprocal of the length it edits at, so the same edit
costs less between long strings than between short ones.  The distance
satisfies the metric axioms, which ``propcheck`` verifies executably
and ``vpindex`` exploits for pruned exact search.
"""

from .errors import CapacityError, IndexFormatError
from .harmonic import (
    ExactHarmonic,
    HarmonicTable,
    default_table,
    harmonic,
    harmonic_diff,
    harmonic_exact,
)
from .lcs import (
    ENGINES,
    Interner,
    SymbolSeq,
    is_subsequence,
    lcs_len,
    lcs_len_bitparallel,
    lcs_len_bruteforce,
    lcs_len_dp,
    lcs_len_hunt_szymanski,
    scs_len,
)
from .metric import (
    DistanceBreakdown,
    distance,
    distance_decomposed,
    distance_exact,
    distance_subsequence,
)
from .propcheck import (
    Counterexample,
    GenConfig,
    PropertyReport,
    VerificationReport,
    shrink,
    universe,
    verify_lemma_chain,
    verify_lemma_lcs_triangle,
    verify_lemma_scs,
    verify_metric_axioms,
)
from .vpindex import PruningStats, VpTree

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "Counterexample",
    "DistanceBreakdown",
    "ENGINES",
    "ExactHarmonic",
    "GenConfig",
    "HarmonicTable",
    "IndexFormatError",
    "Interner",
    "PropertyReport",
    "PruningStats",
    "SymbolSeq",
    "VerificationReport",
    "VpTree",
    "default_table",
    "distance",
    "distance_decomposed",
    "distance_exact",
    "distance_subsequence",
    "harmonic",
    "harmonic_diff",
    "harmonic_exact",
    "is_subsequence",
    "lcs_len",
    "lcs_len_bitparallel",
    "lcs_len_bruteforce",
    "lcs_len_dp",
    "lcs_len_hunt_szymanski",
    "scs_len",
    "shrink",
    "universe",
    "verify_lemma_chain",
    "verify_lemma_lcs_triangle",
    "verify_lemma_scs",
    "verify_metric_axioms",
    "__version__",
]
