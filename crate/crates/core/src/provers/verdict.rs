use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{CoefficientDomain, IntegerInfeasibility};
use crate::iso::MlinAssignment;

use super::nss::NssCertificate;
use super::span::DerivationLog;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ProverKind {
    Nss,
    MonomialPc,
    Pc,
    IntegerMlin,
}

impl fmt::Display for ProverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProverKind::Nss => "nss",
            ProverKind::MonomialPc => "mpc",
            ProverKind::Pc => "pc",
            ProverKind::IntegerMlin => "int",
        })
    }
}

#[derive(Clone, Debug)]
pub enum Evidence {
    Nss(NssCertificate),
    Derivation(DerivationLog),
    Integer(IntegerInfeasibility),
}

#[derive(Clone, Debug)]
pub enum Witness {
    /// A verified solution of the multilinearised lifted system.
    Mlin(MlinAssignment),
    /// The span closed without reaching 1; `basis_size` is its dimension.
    Fixpoint { basis_size: usize },
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Refuted(Evidence),
    NotRefuted(Witness),
}

#[derive(Clone, Debug)]
pub struct ProverVerdict {
    pub kind: ProverKind,
    pub degree: usize,
    pub domain: CoefficientDomain,
    pub outcome: Outcome,
}

impl ProverVerdict {
    pub fn refuted(&self) -> bool {
        matches!(self.outcome, Outcome::Refuted(_))
    }
}
