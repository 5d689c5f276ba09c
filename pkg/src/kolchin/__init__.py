"""Kolchin polynomials of lattice sets, Macaulay growth, and Ackermann-type bounds
on typical differential dimension."""

from .numeric import DBinomialRep, binomial, d_binomial_rep, macaulay_bracket
from .polynomial import NumericalPolynomial
from .lattice import (
    IndexedFamily,
    LatticeSet,
    coefficient_sums,
    connectivity_check,
    family_polynomial,
    hilbert_samuel,
    is_compressed,
    kolchin_polynomial,
    lub,
    minimal_elements,
    shift_back,
    volume,
)
from .bounds import (
    B,
    C,
    BoundResult,
    Cap,
    CapExceeded,
    F,
    ackermann,
    ackermann_ext,
    coefficient_bound,
    nu,
    omega_alg,
    type_zero_alt_bound,
    typical_dim_bound,
    upsilon_alg,
)
from .mu import (
    ConcatenatedMu,
    MuSequence,
    build_concatenated,
    build_mu,
    m_frak,
    omega_mu_prefix,
    vol_mu,
)

__version__ = "0.1.0"
