//! Decision procedures and certificate constructors.

pub mod gadget_derivation;
pub mod intmlin;
pub mod nss;
pub mod span;
pub mod suitable;
pub mod verdict;
pub mod wl;

pub use gadget_derivation::{gadget_parity_derivation, GadgetDerivation, GadgetSteps};
pub use intmlin::integer_mlin_decide;
pub use nss::{nss_decide, NssCertificate};
pub use span::{monomial_pc_decide, monomial_pc_decide_with, pc_decide, pc_decide_with, pc_span, DerivationLog, LogLine, Rule, SpanFixpoint, SpanOptions};
pub use suitable::{coprime_colouring_solution, validate_suitable_colouring, SuitableColouring};
pub use verdict::{Evidence, Outcome, ProverKind, ProverVerdict, Witness};
pub use wl::{wl_solution, WlSolution};
