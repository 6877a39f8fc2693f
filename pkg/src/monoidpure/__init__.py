"""Pure translations, pure thresholds and pure signatures of affine monoids."""

from .cone import (
    Cone,
    FaceDescriptor,
    HalfSpace,
    Polytope,
    delta_region,
    face_lattice,
    hilbert_basis_saturation,
    relative_volume,
    supporting_hyperplanes,
)
from .errors import (
    ContainmentError,
    DimensionError,
    InputError,
    MonoidError,
    MonoidPureError,
    PreconditionError,
    RedundantGeneratorError,
    Undecided,
)
from .lattice import (
    IntMatrix,
    Lattice,
    elementary_divisors,
    hnf_basis,
    lattice_index,
    lattice_membership,
    torsion_primes_of_quotient,
)
from .monoid import AffineMonoid, RatVector, graded_window, member, module_generators, validate
from .purity import (
    PurePrimeFace,
    PureTranslationSet,
    SeminormalityCertificate,
    b_region,
    brute_force_purity_oracle,
    compute_Vm,
    decide_normal,
    decide_seminormal,
    is_in_A,
    is_pure_translation,
    kunz_free_test,
    pure_prime_face,
    pure_ratio_signature,
    pure_threshold,
    ring_bounds_report,
)

__all__ = [
    "AffineMonoid",
    "Cone",
    "ContainmentError",
    "DimensionError",
    "FaceDescriptor",
    "HalfSpace",
    "InputError",
    "IntMatrix",
    "Lattice",
    "MonoidError",
    "MonoidPureError",
    "Polytope",
    "PreconditionError",
    "PurePrimeFace",
    "PureTranslationSet",
    "RatVector",
    "RedundantGeneratorError",
    "SeminormalityCertificate",
    "Undecided",
    "b_region",
    "brute_force_purity_oracle",
    "compute_Vm",
    "decide_normal",
    "decide_seminormal",
    "delta_region",
    "elementary_divisors",
    "face_lattice",
    "graded_window",
    "hilbert_basis_saturation",
    "hnf_basis",
    "is_in_A",
    "is_pure_translation",
    "kunz_free_test",
    "lattice_index",
    "lattice_membership",
    "member",
    "module_generators",
    "pure_prime_face",
    "pure_ratio_signature",
    "pure_threshold",
    "relative_volume",
    "ring_bounds_report",
    "supporting_hyperplanes",
    "torsion_primes_of_quotient",
    "validate",
]
