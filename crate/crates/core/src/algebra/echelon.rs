use std::collections::{BTreeMap, HashMap};

use super::domain::{CoefficientDomain, Scalar};
use super::linear::SparseVec;
use crate::error::{Error, Result};

/// Row-echelon basis over a field. The pivot of a row is its largest column,
/// carrying coefficient 1; no two rows share a pivot.
///
/// Rows are kept semi-reduced (pivot columns may still occur below other
/// pivots) until [`EchelonBasis::fully_reduce`] is called.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    domain: CoefficientDomain,
    rows: Vec<SparseVec>,
    pivot_row: HashMap<u32, usize>,
}

/// Result of reducing a vector against a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub remainder: SparseVec,
    /// `(basis row, coefficient)` with `v = Σ c·row + remainder`.
    pub combination: Vec<(usize, Scalar)>,
}

impl EchelonBasis {
    pub fn new(domain: CoefficientDomain) -> Result<Self> {
        domain.require_field()?;
        Ok(EchelonBasis { domain, rows: Vec::new(), pivot_row: HashMap::new() })
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivot(&self, i: usize) -> u32 {
        self.rows[i].last().expect("basis rows are nonzero").0
    }

    pub fn row_with_pivot(&self, col: u32) -> Option<usize> {
        self.pivot_row.get(&col).copied()
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_row.contains_key(&col)
    }

    fn reduce_impl(&self, v: &[(u32, Scalar)], track: bool) -> Reduction {
        let d = self.domain;
        let mut acc: BTreeMap<u32, Scalar> = v.iter().cloned().collect();
        let mut combination = Vec::new();
        let mut bound = match acc.keys().next_back() {
            Some(&k) => k,
            None => return Reduction { remainder: Vec::new(), combination },
        };
        loop {
            let hit = acc.range(..=bound).rev().find(|(k, _)| self.pivot_row.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = hit else { break };
            let r = self.pivot_row[&k];
            acc.remove(&k);
            let row = &self.rows[r];
            let neg = d.neg(&c);
            for (j, b) in &row[..row.len() - 1] {
                let e = acc.entry(*j).or_insert_with(|| d.zero());
                *e = d.add(e, &d.mul(&neg, b));
                if e.is_zero() {
                    acc.remove(j);
                }
            }
            if track {
                combination.push((r, c));
            }
            if k == 0 {
                break;
            }
            bound = k - 1;
        }
        Reduction { remainder: acc.into_iter().collect(), combination }
    }

    pub fn reduce(&self, v: &[(u32, Scalar)]) -> SparseVec {
        self.reduce_impl(v, false).remainder
    }

    pub fn reduce_tracked(&self, v: &[(u32, Scalar)]) -> Reduction {
        self.reduce_impl(v, true)
    }

    pub fn contains(&self, v: &[(u32, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Appends an already-reduced nonzero vector, normalising its pivot to 1.
    /// Returns the new row index.
    pub fn push_reduced(&mut self, rem: SparseVec) -> usize {
        let d = self.domain;
        let (p, lead) = rem.last().cloned().expect("nonzero remainder");
        debug_assert!(!self.pivot_row.contains_key(&p));
        let inv = d.inv(&lead).expect("field");
        let row: SparseVec = rem.into_iter().map(|(k, c)| (k, d.mul(&c, &inv))).collect();
        self.rows.push(row);
        self.pivot_row.insert(p, self.rows.len() - 1);
        self.rows.len() - 1
    }

    /// Inserts `v` if it is independent; returns the index of the new row.
    pub fn insert(&mut self, v: &[(u32, Scalar)]) -> Option<usize> {
        let rem = self.reduce(v);
        if rem.is_empty() {
            None
        } else {
            Some(self.push_reduced(rem))
        }
    }

    /// Brings the basis to reduced row-echelon form: afterwards no pivot
    /// column has a nonzero entry outside its own row.
    pub fn fully_reduce(&mut self) {
        let d = self.domain;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivot(i));
        for &i in &order {
            let row = std::mem::take(&mut self.rows[i]);
            let (p, one) = row.last().cloned().expect("nonzero");
            let tail: SparseVec = row[..row.len() - 1].to_vec();
            let mut red = self.reduce(&tail);
            red.push((p, one));
            debug_assert!(d.is_one(&red.last().unwrap().1));
            self.rows[i] = red;
        }
    }
}

/// Reduces `v` against `basis`, returning remainder and combination.
pub fn reduce_against_basis(v: &[(u32, Scalar)], basis: &EchelonBasis, domain: CoefficientDomain) -> Result<Reduction> {
    domain.check_same(&basis.domain)?;
    if domain == CoefficientDomain::Integers {
        return Err(Error::NotAField(domain));
    }
    for (_, c) in v {
        if !domain.contains(c) {
            return Err(Error::DomainMismatch(domain, basis.domain));
        }
    }
    Ok(basis.reduce_tracked(v))
}
