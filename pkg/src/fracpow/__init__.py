"""fracpow: exact fractional power series, cyclotomic polynomial
machinery, and constancy decisions for additive representation
functions, with brute-force combinatorial verifiers and a CLI."""

from .arith import (
    MSpec,
    Rational,
    angle,
    bracket,
    divides_rational,
    euler_phi,
    in_nprime,
    in_qbprime,
    mobius,
    mobius_inversion_modified,
    ord_p,
)
from .errors import (
    CapacityError,
    DomainError,
    FracpowError,
    HypothesisError,
    NotInvertibleError,
    UsageError,
)
from .counting import (
    BoundedSet,
    CountReport,
    DigitSet,
    build_digit_set,
    constancy_scan,
    count_representations,
    generating_check,
    parity_check,
)
from .cyclotomic import (
    CycloProduct,
    IntPolynomial,
    apply_mform,
    content,
    cyclotomic_poly,
    expand_phi_power,
    nprime_cyclotomic_part,
    onemxn_factor,
    phi_as_onemx,
    substitute_cyclo,
)
from .lattice import LatticeSpec, contains, enumerate_below
from .series import (
    FracSeries,
    SeriesOrder,
    Valuation,
    exp_series,
    log1p_series,
    pow_alpha,
    product_truncated,
    recover_product_exponents,
)
from .solver import (
    DecisionReport,
    RhsSpec,
    almost_rational_bound,
    contradiction_certificate,
    decide,
    hypothesis_check,
    integrality_report,
    product_exponent,
    recurrence_data,
    series_obstruction,
    solve_formal,
    verify_solution,
)

__all__ = [
    "BoundedSet",
    "CapacityError",
    "CountReport",
    "CycloProduct",
    "DecisionReport",
    "DigitSet",
    "DomainError",
    "FracpowError",
    "FracSeries",
    "HypothesisError",
    "IntPolynomial",
    "LatticeSpec",
    "MSpec",
    "NotInvertibleError",
    "Rational",
    "RhsSpec",
    "SeriesOrder",
    "UsageError",
    "Valuation",
    "almost_rational_bound",
    "angle",
    "apply_mform",
    "bracket",
    "build_digit_set",
    "constancy_scan",
    "contains",
    "content",
    "contradiction_certificate",
    "count_representations",
    "cyclotomic_poly",
    "decide",
    "divides_rational",
    "enumerate_below",
    "euler_phi",
    "exp_series",
    "expand_phi_power",
    "generating_check",
    "hypothesis_check",
    "in_nprime",
    "in_qbprime",
    "integrality_report",
    "log1p_series",
    "mobius",
    "mobius_inversion_modified",
    "nprime_cyclotomic_part",
    "onemxn_factor",
    "ord_p",
    "parity_check",
    "phi_as_onemx",
    "pow_alpha",
    "product_exponent",
    "product_truncated",
    "recover_product_exponents",
    "recurrence_data",
    "series_obstruction",
    "solve_formal",
    "substitute_cyclo",
    "verify_solution",
]
