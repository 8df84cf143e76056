"""sigzero: exact signatures of invariant Hermitian forms by deformation to
nu = 0.

The library computes c-invariant form signatures of standard and irreducible
modules in the signature ring W = Z[s]/(s^2 - 1), deforms continuous
parameters to zero through the wall-crossing calculus, and decides
unitarity.  Built-in models cover SL(2,R) and SL(2,C); larger examples are
ingested as block-library JSON files.  All arithmetic is exact.
"""

from .errors import (
    BoundViolation,
    DegenerateResidual,
    GroupTooLarge,
    HalfPowerPresent,
    InvalidInvolution,
    InvariantViolation,
    MissingBlock,
    MissingParity,
    MissingRewriteTable,
    MissingRootData,
    MissingTau,
    NotUpperTriangular,
    OddOrientationDifference,
    SchemaError,
    SigzeroError,
    SingularFamily,
    UnsupportedError,
    UnsupportedGroup,
    UnsupportedRealSystem,
    UnsupportedUnequalRank,
    ValidationError,
    ZeroContinuousParameter,
)
from .sigring import (
    WElem,
    WPoly,
    W_ONE,
    W_S,
    W_ZERO,
    poly_eval_one,
    poly_eval_s,
    poly_twist_sq,
    s_power,
    w_forget,
    w_mul,
)
from .rootdata import (
    Involution,
    RootClass,
    RootDatum,
    classify_roots,
    dot,
    integral_system,
    length,
    norm_sq,
    orientation_number,
)
from .params import (
    CartanClass,
    DiscreteParam,
    Hyperplane,
    LanglandsParam,
    RestrictedRoot,
    c_hermitian_dual,
    crossing_times,
    frac_str,
    hermitian_dual,
    hermitian_exists,
    hyperplanes,
    param_from_json,
    param_key,
    param_to_json,
    parse_frac,
    reduce_to_real,
)
from .blocks import (
    Block,
    BlockElement,
    BlockProvider,
    block_to_json_obj,
    bruhat_leq,
    builtin_block,
    element_label,
    group_cartan,
    invert_multiplicity,
    multiplicity_inverse,
    parse_block,
    serialize_block,
    singular_restrict,
    sl2c_param,
    sl2r_ds_param,
    sl2r_ps_param,
    split_components,
)
from .sigengine import (
    SignatureChar,
    StdLabel,
    UnitaryResult,
    deform_step,
    deform_to_zero,
    hs_rewrite,
    irreducible_in_standards,
    ktype_signature,
    signature_P,
    signature_Q,
    sl2r_lowest_ktype,
    unitary_test,
)
from .jantzen import (
    RatFn,
    jantzen_levels,
    level_signatures,
    oracle_signature,
    oracle_unitary,
    parse_ratmatrix,
    sl2_c_function,
    sl2_intertwining,
    sl2_ktypes,
)

__version__ = "0.1.0"
