"""Boolean function spectra, symmetry classes and nonlinearity search."""

from ._kernels import BACKEND
from .boolfn import (
    Anf,
    AutocorrSpectrum,
    FunctionReport,
    TruthTable,
    WalshSpectrum,
    absolute_indicator,
    add_linear,
    analyze,
    anf,
    autocorrelation,
    bent_inner_product,
    complement,
    decode_hex,
    degree,
    direct_sum,
    encode_hex,
    nonlinearity,
    walsh_transform,
    walsh_zeros,
)
from .orbits import (
    CoordPerm,
    FoldedFunction,
    FoldError,
    FoldMatrix,
    GroupSpec,
    OrbitPartition,
    apply,
    burnside_count,
    compose,
    count_k_dsbf,
    count_k_rsbf,
    fold,
    fold_matrix,
    folded_walsh,
    folded_walsh_delta,
    identity,
    orbit_partition,
    parse_group,
    rho,
    tau,
    unfold,
)
from .permclass import (
    Gf2Matrix,
    PermClassRecord,
    classify,
    fingerprint,
    gf2_polyeval,
    gf2_rank,
    irreducibles_dividing,
    perm_matrix,
)
from .search import SearchConfig, SearchResult, SearchState, cost, perturb, run

__version__ = "0.1.0"
