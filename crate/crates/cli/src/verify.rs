use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;

use algiso_core::iso::{lift_within_degree, multilinearise, verify_assignment, AssignmentCheck};
use algiso_core::json::{Artifact, SystemFile};
use algiso_core::provers::{integer_mlin_decide, Outcome};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub certificate: PathBuf,
    #[arg(long)]
    pub system: PathBuf,
}

/// `Ok(Err(msg))` is a failed replay; `Err` is unreadable input.
pub type Checked = std::result::Result<String, String>;

pub fn load_system(path: &Path) -> Result<SystemFile> {
    let s = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&s).with_context(|| format!("parsing system file {}", path.display()))
}

pub fn verify_files(certificate: &Path, system: &Path) -> Result<Checked> {
    let s = std::fs::read_to_string(certificate).with_context(|| format!("reading {}", certificate.display()))?;
    let artifact = Artifact::from_json_str(&s).with_context(|| format!("parsing certificate {}", certificate.display()))?;
    let sys = load_system(system)?;
    let axioms = sys.polynomials()?;
    let convert = |d| axioms.iter().map(|p| p.to_domain(d)).collect::<algiso_core::Result<Vec<_>>>();
    Ok(match artifact {
        Artifact::Nss(f) => {
            let cert = f.to_certificate()?;
            match cert.verify(&convert(cert.domain)?) {
                Ok(()) => Ok(format!("nss certificate expands to 1 at degree {}", cert.degree)),
                Err(e) => Err(format!("expansion: {e}")),
            }
        }
        Artifact::PcLog(f) => {
            let log = f.to_log()?;
            match log.replay(&convert(log.domain)?) {
                Ok(()) => Ok(format!("derivation of {} lines replays to 1", log.lines.len())),
                Err(e) => Err(format!("replay: {e}")),
            }
        }
        Artifact::Mlin(f) => {
            let mut alpha = f.to_assignment()?;
            let lifted = lift_within_degree(&convert(f.domain)?, &sys.vars(), f.degree);
            let linear = multilinearise(&lifted.polys, f.domain)?;
            for s in linear.columns() {
                if alpha.get(s).is_none() {
                    alpha.set(s.clone(), f.domain.zero())?;
                }
            }
            match verify_assignment(&alpha, &linear, f.downward_zero)? {
                AssignmentCheck::Ok => Ok(format!("solution satisfies all {} rows", linear.num_rows())),
                other => Err(format!("substitution: {other:?}")),
            }
        }
        Artifact::Integer(f) => {
            f.weights()?;
            let v = integer_mlin_decide(&convert(algiso_core::algebra::CoefficientDomain::Integers)?, &sys.vars(), f.degree)?;
            match v.outcome {
                Outcome::Refuted(_) => Ok("integer system re-solved: no solution".into()),
                Outcome::NotRefuted(_) => Err("integer system has a solution".into()),
            }
        }
    })
}

pub fn run(args: &VerifyArgs) -> Result<Checked> {
    verify_files(&args.certificate, &args.system)
}
