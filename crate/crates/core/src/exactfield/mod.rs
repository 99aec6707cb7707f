//! Exact arithmetic over small prime fields: scalars, dense matrices,
//! subspaces and polynomials.

pub mod fp;
pub mod matrix;
pub mod poly;
pub mod subspace;

pub use fp::{check_prime, is_supported_prime, Fq, SUPPORTED_PRIMES};
pub use matrix::{solve_kernel, MatrixFq};
pub use poly::{
    factor_binary_form, factor_poly, invariant_factors, irreducibles_up_to, reconstruct_form, BinaryFormFq,
    ClosedPoint, Poly,
};
pub use subspace::{enumerate_subspaces, gaussian_binomial, SubspaceFq};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("unsupported modulus {0}; expected one of 2, 3, 5, 7, 11")]
    UnsupportedModulus(u32),
    #[error("cannot take a {k}-dimensional subspace of a {n}-dimensional space")]
    InvalidDimension { k: usize, n: usize },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("the zero form has no factorization")]
    ZeroForm,
    #[error("{0} is not a monic irreducible polynomial")]
    NotIrreducible(String),
    #[error("parse error: {0}")]
    Parse(String),
}
