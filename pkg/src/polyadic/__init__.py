"""Computational toolkit for n-ary groups and their q-deformed chain decompositions."""
from .analysis import (
    CheckResult,
    ClassificationReport,
    check_associativity,
    check_cancellativity,
    check_commutativity,
    check_mediality,
    check_solvability,
    classify,
    negative_polyadic_power,
    neutral_polyads,
    polyadic_inverse,
    querelement,
    querpower,
    signed_power,
    solve_last,
    verify_querpower_identity,
)
from .chain import (
    BinaryRetract,
    ChainDecomposition,
    binary_inverse,
    build_retract,
    chain_evaluate,
    decompose,
    distinguished_element,
    iterate_phi,
    phi_q,
    reverse_construct,
    valid_q_values,
    verify_invariance,
)
from .core import (
    ClosedForm,
    DerivedModular,
    FiniteTable,
    PolyadicSystem,
    evaluate,
    heine_number,
    iterated_product,
    polyadic_power,
    reduced_product,
)
from .errors import PolyadicError
from .gallery import FamilySpec, instantiate, reference_check
from .homomorphism import (
    CarrierMap,
    check_deformed_compatibility,
    check_homomorphism,
    check_homotopy,
    theorem_sweep,
)
from .kernels import IMPLEMENTATION

__version__ = "0.1.0"
