"""c-differential uniformity of functions over GF(p^n), with a fast path for power maps."""

__version__ = "0.1.0"

from .cdiff import (
    LookupTable,
    PowerExponent,
    SpectrumResult,
    UniformityResult,
    c_derivative_count,
    classify,
    delta_row_histogram,
    scan_exponents,
    uniformity_full,
    uniformity_power,
)
from .character import Chi, chi, trace
from .errors import (
    CDiffError,
    CharacteristicError,
    DatabaseMissError,
    FieldSizeError,
    HypothesisError,
    InvalidPolynomialError,
    IrreducibilityError,
    NotApplicableError,
)
from .families import (
    ClaimEntry,
    VerificationReport,
    apn_crosscheck,
    claimed_bound,
    corpus,
    enumerate_c,
    family_exponent,
    get_entry,
    verify_claim,
)
from .field import Field, FieldSpec, build_field, check_irreducible, load_modulus
