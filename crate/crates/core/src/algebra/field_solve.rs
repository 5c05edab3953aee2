use super::domain::{CoefficientDomain, Scalar};
use super::echelon::EchelonBasis;
use super::linear::{LinearSystem, SparseVec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSolution {
    /// One value per column.
    Solvable(Vec<Scalar>),
    /// `(row, weight)` pairs whose combination reads `0 = 1`.
    Unsolvable(Vec<(usize, Scalar)>),
}

impl FieldSolution {
    pub fn is_solvable(&self) -> bool {
        matches!(self, FieldSolution::Solvable(_))
    }
}

/// Solves augmented rows `[(0, b), (j+1, a_j)...]` meaning `Σ a_j x_j = b`.
/// Returns `None` when inconsistent.
fn eliminate(d: CoefficientDomain, rows: impl IntoIterator<Item = SparseVec>, ncols: usize) -> Result<Option<Vec<Scalar>>> {
    let mut basis = EchelonBasis::new(d)?;
    for r in rows {
        let rem = basis.reduce(&r);
        if rem.is_empty() {
            continue;
        }
        if rem.last().unwrap().0 == 0 {
            return Ok(None);
        }
        basis.push_reduced(rem);
    }
    let mut x = vec![d.zero(); ncols + 1];
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&i| basis.pivot(i));
    for i in order {
        let row = basis.row(i);
        let p = basis.pivot(i) as usize;
        let mut v = d.zero();
        for (j, a) in &row[..row.len() - 1] {
            if *j == 0 {
                v = d.add(&v, a);
            } else {
                v = d.sub(&v, &d.mul(a, &x[*j as usize]));
            }
        }
        x[p] = v;
    }
    x.remove(0);
    Ok(Some(x))
}

fn augmented(row: &super::linear::LinearRow) -> SparseVec {
    let mut v = Vec::with_capacity(row.coeffs.len() + 1);
    if !row.rhs.is_zero() {
        v.push((0, row.rhs.clone()));
    }
    v.extend(row.coeffs.iter().map(|(k, c)| (k + 1, c.clone())));
    v
}

/// Decides a linear system over a field. Solutions and Farkas vectors are
/// checked against the input before they are returned.
pub fn solve_linear_system_field(s: &LinearSystem) -> Result<FieldSolution> {
    let d = s.domain();
    if !d.is_field() {
        return Err(Error::NotAField(d));
    }
    if let Some(i) = s.trivial_contradiction() {
        let w = d.inv(&s.rows()[i].rhs)?;
        let y = vec![(i, w)];
        s.check_farkas(&y)?;
        return Ok(FieldSolution::Unsolvable(y));
    }
    let n = s.num_columns();
    match eliminate(d, s.rows().iter().map(augmented), n)? {
        Some(x) => {
            if let Some(bad) = s.check_solution(&x)? {
                return Err(Error::Internal(format!("back-substituted solution violates row {bad}")));
            }
            Ok(FieldSolution::Solvable(x))
        }
        None => {
            let y = farkas_vector(s)?;
            let c = s.check_farkas(&y)?;
            if !d.is_one(&c) {
                return Err(Error::Internal("farkas vector not normalised".into()));
            }
            Ok(FieldSolution::Unsolvable(y))
        }
    }
}

/// Solves the transposed system `yA = 0, y·b = 1`.
fn farkas_vector(s: &LinearSystem) -> Result<Vec<(usize, Scalar)>> {
    let d = s.domain();
    let m = s.num_rows();
    let mut by_col: Vec<SparseVec> = vec![Vec::new(); s.num_columns()];
    let mut rhs_row: SparseVec = vec![(0, d.one())];
    for (i, row) in s.rows().iter().enumerate() {
        for (k, c) in &row.coeffs {
            by_col[*k as usize].push((i as u32 + 1, c.clone()));
        }
        if !row.rhs.is_zero() {
            rhs_row.push((i as u32 + 1, row.rhs.clone()));
        }
    }
    let rows = std::iter::once(rhs_row).chain(by_col.into_iter().filter(|c| !c.is_empty()));
    let y = eliminate(d, rows, m)?.ok_or_else(|| Error::Internal("inconsistent system without a Farkas vector".into()))?;
    Ok(y.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomial::{SetVariable, VariableId};

    fn sys(d: CoefficientDomain, rows: &[(&[(u32, i64)], i64)], n: u32) -> LinearSystem {
        let cols = (0..n).map(|i| SetVariable::singleton(VariableId(i))).collect();
        let mut s = LinearSystem::new(d, cols).unwrap();
        for (i, (cs, b)) in rows.iter().enumerate() {
            let v = crate::algebra::linear::sparse_from_unsorted(d, cs.iter().map(|&(k, c)| (k, d.from_i64(c))));
            s.push_row(v, d.from_i64(*b), i).unwrap();
        }
        s
    }

    #[test]
    fn two_by_two() {
        let q = CoefficientDomain::Rationals;
        let s = sys(q, &[(&[(0, 1), (1, 1)], 1), (&[(0, 1), (1, -1)], 1)], 2);
        assert_eq!(solve_linear_system_field(&s).unwrap(), FieldSolution::Solvable(vec![q.one(), q.zero()]));
    }

    #[test]
    fn inconsistent_gives_farkas() {
        let q = CoefficientDomain::Rationals;
        let s = sys(q, &[(&[(0, 1), (1, 1)], 1), (&[(0, 2), (1, 2)], 3)], 2);
        match solve_linear_system_field(&s).unwrap() {
            FieldSolution::Unsolvable(y) => assert_eq!(s.check_farkas(&y).unwrap(), q.one()),
            other => panic!("expected unsolvable, got {other:?}"),
        }
        let f2 = CoefficientDomain::PrimeField(2);
        let s = sys(f2, &[(&[(0, 1), (1, 1)], 1), (&[(1, 1), (2, 1)], 1), (&[(0, 1), (2, 1)], 1)], 3);
        assert!(!solve_linear_system_field(&s).unwrap().is_solvable());
    }

    #[test]
    fn integers_rejected() {
        let s = sys(CoefficientDomain::Integers, &[], 1);
        assert!(matches!(solve_linear_system_field(&s), Err(Error::NotAField(_))));
    }
}
