//! Group CSPs, Tseitin instances, gadget graph pairs and the reduction data
//! from Tseitin polynomials to isomorphism equations.

pub mod class_csp;
pub mod gadget;
pub mod group;
pub mod instance;
pub mod polys;
pub mod reduction;

pub use class_csp::{graphs_to_group_csp, ClassCsp};
pub use gadget::{build_gadget_graphs, csp_solution_to_isomorphism, isomorphism_to_csp_solution, GadgetGraphPair, GadgetVertex};
pub use group::{Constraint, FiniteGroup, GroupCsp};
pub use instance::{solve_parity_csp, tseitin_csp, TseitinInstance};
pub use polys::{fourier_inverse, fourier_point, tseitin_polynomials, TseitinRow, TseitinSystem};
pub use reduction::{check_sign_sum, reduction_polynomials, verify_reduction_identities, ReductionMap, ReductionReport};
