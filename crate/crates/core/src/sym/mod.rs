//! The symmetric algebra `Sym*V` of a metric vector space, modelled as polynomials
//! in `y_1, …, y_n` where `y_i` stands for the i-th basis vector.

mod gram;
mod tensor;

pub use gram::{monomial_pairing, permanent, Endomorphism, GramContext};
pub use tensor::{dim_sym, monomials, operator_matrix, MonomialBasis, MultiIndex, SymTensor};

#[cfg(test)]
mod props;
