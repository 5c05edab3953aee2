use std::collections::HashMap;

use super::domain::{CoefficientDomain, Scalar};
use super::monomial::SetVariable;
use crate::error::{Error, Result};

/// Sparse vector: `(index, value)` pairs, strictly increasing indices, no zeros.
pub type SparseVec = Vec<(u32, Scalar)>;

/// `a + c·b` for sparse vectors.
pub fn axpy(d: CoefficientDomain, a: &[(u32, Scalar)], c: &Scalar, b: &[(u32, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = d.mul(c, &b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = d.add(&a[i].1, &d.mul(c, &b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_from_unsorted(d: CoefficientDomain, entries: impl IntoIterator<Item = (u32, Scalar)>) -> SparseVec {
    let mut v: Vec<(u32, Scalar)> = entries.into_iter().collect();
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (k, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == k => *acc = d.add(acc, &c),
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

pub fn sparse_scale(d: CoefficientDomain, a: &[(u32, Scalar)], c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(k, v)| (*k, d.mul(v, c))).collect()
}

/// One linear equation `Σ coeffs[j]·X_j = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRow {
    pub coeffs: SparseVec,
    pub rhs: Scalar,
    /// Index of the polynomial this row came from.
    pub origin: usize,
}

/// A linear system over set-variable columns. The empty set-variable is the
/// constant and never a column: constants live in the right-hand side.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    domain: CoefficientDomain,
    columns: Vec<SetVariable>,
    index: HashMap<SetVariable, u32>,
    rows: Vec<LinearRow>,
    contradiction: Option<usize>,
}

impl LinearSystem {
    /// `columns` must be sorted and free of the empty set-variable.
    pub fn new(domain: CoefficientDomain, columns: Vec<SetVariable>) -> Result<Self> {
        if columns.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("columns must be strictly increasing"));
        }
        if columns.first().is_some_and(|c| c.is_empty()) {
            return Err(Error::invalid("the constant is not a column"));
        }
        let index = columns.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect();
        Ok(LinearSystem { domain, columns, index, rows: Vec::new(), contradiction: None })
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn columns(&self) -> &[SetVariable] {
        &self.columns
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn column_index(&self, s: &SetVariable) -> Option<u32> {
        self.index.get(s).copied()
    }

    pub fn rows(&self) -> &[LinearRow] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// The first row of the form `0 = c` with `c ≠ 0`, if any.
    pub fn trivial_contradiction(&self) -> Option<usize> {
        self.contradiction
    }

    /// Adds a row; `0 = 0` rows are dropped.
    pub fn push_row(&mut self, coeffs: SparseVec, rhs: Scalar, origin: usize) -> Result<()> {
        if let Some(&(k, _)) = coeffs.iter().find(|(k, _)| *k as usize >= self.columns.len()) {
            return Err(Error::invalid(format!("row references unknown column {k}")));
        }
        if coeffs.windows(2).any(|w| w[0].0 >= w[1].0) || coeffs.iter().any(|(_, c)| c.is_zero()) {
            return Err(Error::Internal("row is not a canonical sparse vector".into()));
        }
        for (_, c) in &coeffs {
            if !self.domain.contains(c) {
                return Err(Error::invalid(format!("coefficient {c} is not in {}", self.domain)));
            }
        }
        if coeffs.is_empty() {
            if rhs.is_zero() {
                return Ok(());
            }
            if self.contradiction.is_none() {
                self.contradiction = Some(self.rows.len());
            }
        }
        self.rows.push(LinearRow { coeffs, rhs, origin });
        Ok(())
    }

    /// Adds a row keyed by set-variables; the empty set-variable moves to the RHS.
    pub fn push_set_row(&mut self, terms: impl IntoIterator<Item = (SetVariable, Scalar)>, origin: usize) -> Result<()> {
        let d = self.domain;
        let mut rhs = d.zero();
        let mut entries = Vec::new();
        for (s, c) in terms {
            if s.is_empty() {
                rhs = d.sub(&rhs, &c);
            } else {
                let k = self.column_index(&s).ok_or_else(|| Error::invalid(format!("unregistered column {s:?}")))?;
                entries.push((k, c));
            }
        }
        let coeffs = sparse_from_unsorted(d, entries);
        self.push_row(coeffs, rhs, origin)
    }

    /// Returns the first violated row, if any.
    pub fn check_solution(&self, x: &[Scalar]) -> Result<Option<usize>> {
        if x.len() != self.columns.len() {
            return Err(Error::invalid("assignment length differs from column count"));
        }
        let d = self.domain;
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = d.zero();
            for (k, c) in &row.coeffs {
                acc = d.add(&acc, &d.mul(c, &x[*k as usize]));
            }
            if acc != row.rhs {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Checks `Σ yᵢ·rowᵢ` is `0 = c` with `c ≠ 0`; returns `c`.
    pub fn check_farkas(&self, y: &[(usize, Scalar)]) -> Result<Scalar> {
        let d = self.domain;
        let mut acc: SparseVec = Vec::new();
        let mut rhs = d.zero();
        for (i, c) in y {
            let row = self.rows.get(*i).ok_or_else(|| Error::invalid("farkas index out of range"))?;
            acc = axpy(d, &acc, c, &row.coeffs);
            rhs = d.add(&rhs, &d.mul(c, &row.rhs));
        }
        if !acc.is_empty() || rhs.is_zero() {
            return Err(Error::verification("row combination is not a contradiction"));
        }
        Ok(rhs)
    }

    /// The same rows reinterpreted over another domain.
    pub fn to_domain(&self, target: CoefficientDomain) -> Result<LinearSystem> {
        let conv = |c: &Scalar| -> Result<Scalar> {
            match c {
                Scalar::Q(r) => target.from_rational(r),
                Scalar::Fp(_) if target == self.domain => Ok(c.clone()),
                Scalar::Fp(_) => Err(Error::DomainMismatch(self.domain, target)),
            }
        };
        let mut out = LinearSystem::new(target, self.columns.clone())?;
        for row in &self.rows {
            let mut coeffs = Vec::with_capacity(row.coeffs.len());
            for (k, c) in &row.coeffs {
                let c = conv(c)?;
                if !c.is_zero() {
                    coeffs.push((*k, c));
                }
            }
            out.push_row(coeffs, conv(&row.rhs)?, row.origin)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomial::VariableId;

    #[test]
    fn zero_rows_dropped_and_contradictions_flagged() {
        let q = CoefficientDomain::Rationals;
        let cols = vec![SetVariable::singleton(VariableId(0))];
        let mut s = LinearSystem::new(q, cols).unwrap();
        s.push_row(vec![], q.zero(), 0).unwrap();
        assert_eq!(s.num_rows(), 0);
        s.push_row(vec![], q.one(), 1).unwrap();
        assert_eq!(s.trivial_contradiction(), Some(0));
        assert!(s.push_row(vec![(3, q.one())], q.zero(), 2).is_err());
    }

    #[test]
    fn axpy_cancels() {
        let q = CoefficientDomain::Rationals;
        let a = vec![(0, q.one()), (2, q.from_i64(3))];
        let b = vec![(0, q.one()), (1, q.one())];
        let r = axpy(q, &a, &q.from_i64(-1), &b);
        assert_eq!(r, vec![(1, q.from_i64(-1)), (2, q.from_i64(3))]);
    }
}
