//! Exact coefficient domains, polynomials and linear algebra.

pub mod domain;
pub mod echelon;
pub mod field_solve;
pub mod integer;
pub mod linear;
pub mod monomial;
pub mod polynomial;
pub mod rational;

pub use domain::{CoefficientDomain, Scalar};
pub use echelon::{reduce_against_basis, EchelonBasis, Reduction};
pub use field_solve::{solve_linear_system_field, FieldSolution};
pub use integer::{smith_normal_form, solve_linear_system_integers, IntegerInfeasibility, IntegerSolution, SmithForm};
pub use linear::{LinearRow, LinearSystem, SparseVec};
pub use monomial::{enumerate_set_variables, Monomial, SetVariable, VariableId, VariableRegistry};
pub use polynomial::{poly_combine, PolyExpr, Polynomial, SquareRule};
pub use rational::Rational;
