//! Integer linear systems: unimodular unit-pivot presolve followed by a dense
//! Smith normal form on whatever is left.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::domain::{CoefficientDomain, Scalar};
use super::linear::LinearSystem;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Above this many columns the transform identities are checked on sampled rows only.
pub const FULL_SNF_CHECK_COLUMNS: usize = 500;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegerSolution {
    /// One integer per column.
    Solvable(Vec<Scalar>),
    Unsolvable(IntegerInfeasibility),
}

impl IntegerSolution {
    pub fn is_solvable(&self) -> bool {
        matches!(self, IntegerSolution::Solvable(_))
    }
}

/// A rational row vector `y` over the presolved system with `yA` integral and
/// `y·b` not integral. Residual rows are indexed in presolve order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerInfeasibility {
    pub residual_rows: usize,
    pub y: Vec<(usize, Rational)>,
}

/// Smith form `D = U·A·V` of a dense integer matrix. Inverses are tracked so
/// that `A = U⁻¹·D·V⁻¹` can be checked.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub u_inv: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub v_inv: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| {
            let mut out = vec![BigInt::zero(); cols];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b[k].iter().enumerate() {
                    if !y.is_zero() {
                        out[j] += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

struct Snf {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
    m: usize,
    n: usize,
}

impl Snf {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in &mut self.u_inv {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        for row in &mut self.v {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i += q·row_t
    fn add_row(&mut self, i: usize, t: usize, q: &BigInt) {
        for mat in [&mut self.a, &mut self.u] {
            let (src, dst) = if i < t {
                let (lo, hi) = mat.split_at_mut(t);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = mat.split_at_mut(i);
                (&lo[t], &mut hi[0])
            };
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d += q * s;
                }
            }
        }
        // inverse: col_t -= q·col_i
        for row in &mut self.u_inv {
            let s = row[i].clone();
            if !s.is_zero() {
                row[t] -= q * s;
            }
        }
    }

    /// col_j += q·col_t
    fn add_col(&mut self, j: usize, t: usize, q: &BigInt) {
        for mat in [&mut self.a, &mut self.v] {
            for row in mat.iter_mut() {
                let s = row[t].clone();
                if !s.is_zero() {
                    row[j] += q * s;
                }
            }
        }
        // inverse: row_t -= q·row_j
        let src = self.v_inv[j].clone();
        for (d, s) in self.v_inv[t].iter_mut().zip(src.iter()) {
            if !s.is_zero() {
                *d -= q * s;
            }
        }
    }

    fn negate_row(&mut self, t: usize) {
        for x in self.a[t].iter_mut().chain(self.u[t].iter_mut()) {
            *x = -std::mem::take(x);
        }
        for row in &mut self.u_inv {
            row[t] = -std::mem::take(&mut row[t]);
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) -> Vec<BigInt> {
        let mut diag = Vec::new();
        let mut t = 0;
        while t < self.m.min(self.n) {
            let Some((pi, pj)) = self.min_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.m {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.add_row(i, t, &-q);
                        if !self.a[i][t].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..self.n {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.add_col(j, t, &-q);
                        if !self.a[t][j].is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    let mut best = (t, t);
                    for i in t + 1..self.m {
                        let x = &self.a[i][t];
                        if !x.is_zero() && x.abs() < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.n {
                        let x = &self.a[t][j];
                        if !x.is_zero() && x.abs() < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // divisibility: the pivot must divide the whole trailing block
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.m).find(|&i| (t + 1..self.n).any(|j| !(&self.a[i][j] % &p).is_zero()));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            diag.push(self.a[t][t].clone());
            t += 1;
        }
        diag
    }
}

/// Smith normal form of a dense integer matrix with `cols` columns.
pub fn smith_normal_form(a: &[Vec<BigInt>], cols: usize) -> Result<SmithForm> {
    let m = a.len();
    let mut s = Snf { a: a.to_vec(), u: identity(m), u_inv: identity(m), v: identity(cols), v_inv: identity(cols), m, n: cols };
    let diagonal = s.run();
    let form = SmithForm { diagonal, u: s.u, u_inv: s.u_inv, v: s.v, v_inv: s.v_inv };
    verify_smith(a, cols, &form)?;
    Ok(form)
}

fn verify_smith(a: &[Vec<BigInt>], n: usize, f: &SmithForm) -> Result<()> {
    let m = a.len();
    let expect_d = |i: usize, j: usize| -> BigInt {
        if i == j && i < f.diagonal.len() {
            f.diagonal[i].clone()
        } else {
            BigInt::zero()
        }
    };
    for w in f.diagonal.windows(2) {
        if !(&w[1] % &w[0]).is_zero() {
            return Err(Error::Internal("Smith diagonal lacks the divisibility chain".into()));
        }
    }
    let rows: Vec<usize> = if n <= FULL_SNF_CHECK_COLUMNS { (0..m).collect() } else { (0..m).step_by((m / 64).max(1)).collect() };
    let sample_u: Vec<Vec<BigInt>> = rows.iter().map(|&i| f.u[i].clone()).collect();
    let uav = matmul(&matmul(&sample_u, a, n), &f.v, n);
    for (r, &i) in rows.iter().enumerate() {
        for (j, x) in uav[r].iter().enumerate() {
            if *x != expect_d(i, j) {
                return Err(Error::Internal("U·A·V differs from the Smith diagonal".into()));
            }
        }
    }
    if n <= FULL_SNF_CHECK_COLUMNS && (matmul(&f.u, &f.u_inv, m) != identity(m) || matmul(&f.v, &f.v_inv, n) != identity(n)) {
        return Err(Error::Internal("Smith transforms are not unimodular".into()));
    }
    Ok(())
}

fn to_int(c: &Scalar) -> Result<BigInt> {
    match c {
        Scalar::Q(r) => r.to_bigint().ok_or_else(|| Error::NonIntegral(r.to_string())),
        Scalar::Fp(_) => Err(Error::NotIntegers(CoefficientDomain::PrimeField(0))),
    }
}

struct Eliminated {
    col: usize,
    sign: BigInt,
    row: BTreeMap<usize, BigInt>,
    rhs: BigInt,
}

/// Decides solvability over the integers. Solutions are re-substituted into
/// every row before return.
pub fn solve_linear_system_integers(s: &LinearSystem) -> Result<IntegerSolution> {
    if s.domain() != CoefficientDomain::Integers {
        return Err(Error::NotIntegers(s.domain()));
    }
    let n = s.num_columns();
    let mut rows: Vec<Option<(BTreeMap<usize, BigInt>, BigInt)>> = Vec::with_capacity(s.num_rows());
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (i, r) in s.rows().iter().enumerate() {
        let mut m = BTreeMap::new();
        for (k, c) in &r.coeffs {
            m.insert(*k as usize, to_int(c)?);
            col_rows[*k as usize].insert(i);
        }
        rows.push(Some((m, to_int(&r.rhs)?)));
    }

    let mut stack: Vec<Eliminated> = Vec::new();
    loop {
        // unit entry minimising the Markowitz count
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            let Some((m, _)) = r else { continue };
            for (&k, c) in m {
                if c.abs().is_one() {
                    let cost = (m.len() - 1) * (col_rows[k].len() - 1);
                    if best.is_none_or(|b| cost < b.2) {
                        best = Some((i, k, cost));
                    }
                }
            }
            if best.is_some_and(|b| b.2 == 0) {
                break;
            }
        }
        let Some((r, k, _)) = best else { break };
        let (prow, prhs) = rows[r].take().unwrap();
        for &c in prow.keys() {
            col_rows[c].remove(&r);
        }
        let sign = prow[&k].clone();
        let others: Vec<usize> = col_rows[k].iter().copied().collect();
        for i in others {
            let (m, b) = rows[i].as_mut().unwrap();
            let f = &m[&k] * &sign;
            for (c, v) in &prow {
                let e = m.entry(*c).or_insert_with(BigInt::zero);
                *e -= &f * v;
                if e.is_zero() {
                    m.remove(c);
                    col_rows[*c].remove(&i);
                } else {
                    col_rows[*c].insert(i);
                }
            }
            *b -= &f * &prhs;
        }
        stack.push(Eliminated { col: k, sign, row: prow, rhs: prhs });
    }

    let residual: Vec<(BTreeMap<usize, BigInt>, BigInt)> = rows.into_iter().flatten().collect();
    for (i, (m, b)) in residual.iter().enumerate() {
        if m.is_empty() && !b.is_zero() {
            let y = vec![(i, Rational::from_big(num_rational::BigRational::new(BigInt::one(), b * 2)))];
            return Ok(IntegerSolution::Unsolvable(IntegerInfeasibility { residual_rows: residual.len(), y }));
        }
    }
    let residual: Vec<_> = residual.into_iter().filter(|(m, _)| !m.is_empty()).collect();
    let res_cols: Vec<usize> = residual.iter().flat_map(|(m, _)| m.keys().copied()).collect::<BTreeSet<_>>().into_iter().collect();
    let pos: BTreeMap<usize, usize> = res_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let dense: Vec<Vec<BigInt>> = residual
        .iter()
        .map(|(m, _)| {
            let mut row = vec![BigInt::zero(); res_cols.len()];
            for (c, v) in m {
                row[pos[c]] = v.clone();
            }
            row
        })
        .collect();
    let b: Vec<BigInt> = residual.iter().map(|(_, b)| b.clone()).collect();

    let mut x: Vec<BigInt> = vec![BigInt::zero(); n];
    if !residual.is_empty() {
        let f = smith_normal_form(&dense, res_cols.len())?;
        let c: Vec<BigInt> = f.u.iter().map(|u| u.iter().zip(&b).fold(BigInt::zero(), |acc, (p, q)| acc + p * q)).collect();
        let rank = f.diagonal.len();
        let mut z = vec![BigInt::zero(); res_cols.len()];
        for (i, ci) in c.iter().enumerate() {
            let bad = if i < rank { !(ci % &f.diagonal[i]).is_zero() } else { !ci.is_zero() };
            if bad {
                let den = if i < rank { f.diagonal[i].clone() } else { ci * 2 };
                let y = f.u[i]
                    .iter()
                    .enumerate()
                    .filter(|(_, u)| !u.is_zero())
                    .map(|(r, u)| (r, Rational::from_big(num_rational::BigRational::new(u.clone(), den.clone()))))
                    .collect();
                let cert = IntegerInfeasibility { residual_rows: residual.len(), y };
                check_infeasibility(&dense, &b, &cert)?;
                return Ok(IntegerSolution::Unsolvable(cert));
            }
            if i < rank {
                z[i] = ci / &f.diagonal[i];
            }
        }
        for (j, &col) in res_cols.iter().enumerate() {
            x[col] = f.v[j].iter().zip(&z).fold(BigInt::zero(), |acc, (p, q)| acc + p * q);
        }
    }
    for e in stack.iter().rev() {
        let mut v = e.rhs.clone();
        for (c, a) in &e.row {
            if *c != e.col {
                v -= a * &x[*c];
            }
        }
        x[e.col] = v * &e.sign;
    }
    let sol: Vec<Scalar> = x.into_iter().map(|v| Scalar::Q(Rational::from_bigint(v))).collect();
    if let Some(bad) = s.check_solution(&sol)? {
        return Err(Error::Internal(format!("integer solution violates row {bad}")));
    }
    Ok(IntegerSolution::Solvable(sol))
}

fn check_infeasibility(a: &[Vec<BigInt>], b: &[BigInt], cert: &IntegerInfeasibility) -> Result<()> {
    let n = a.first().map_or(0, |r| r.len());
    let mut ya = vec![Rational::zero(); n];
    let mut yb = Rational::zero();
    for (i, y) in &cert.y {
        for (j, v) in a[*i].iter().enumerate() {
            if !v.is_zero() {
                ya[j] = ya[j].add(&y.mul(&Rational::from_bigint(v.clone())));
            }
        }
        yb = yb.add(&y.mul(&Rational::from_bigint(b[*i].clone())));
    }
    if ya.iter().all(|v| v.is_integer()) && !yb.is_integer() {
        Ok(())
    } else {
        Err(Error::Internal("integer infeasibility certificate does not check".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::linear::sparse_from_unsorted;
    use crate::algebra::monomial::{SetVariable, VariableId};
    use proptest::prelude::*;

    const Z: CoefficientDomain = CoefficientDomain::Integers;

    fn sys(rows: &[Vec<i64>], rhs: &[i64]) -> LinearSystem {
        let n = rows.first().map_or(0, |r| r.len());
        let cols = (0..n as u32).map(|i| SetVariable::singleton(VariableId(i))).collect();
        let mut s = LinearSystem::new(Z, cols).unwrap();
        for (i, (r, b)) in rows.iter().zip(rhs).enumerate() {
            let v = sparse_from_unsorted(Z, r.iter().enumerate().map(|(k, &c)| (k as u32, Z.from_i64(c))));
            s.push_row(v, Z.from_i64(*b), i).unwrap();
        }
        s
    }

    #[test]
    fn parity() {
        assert_eq!(solve_linear_system_integers(&sys(&[vec![2]], &[2])).unwrap(), IntegerSolution::Solvable(vec![Z.one()]));
        assert!(!solve_linear_system_integers(&sys(&[vec![2]], &[1])).unwrap().is_solvable());
    }

    #[test]
    fn needs_smith_not_just_presolve() {
        // 6x + 10y = 8 has integer solutions; 6x + 10y = 7 does not
        assert!(solve_linear_system_integers(&sys(&[vec![6, 10]], &[8])).unwrap().is_solvable());
        assert!(!solve_linear_system_integers(&sys(&[vec![6, 10]], &[7])).unwrap().is_solvable());
        // rational solution exists, integer one does not
        assert!(!solve_linear_system_integers(&sys(&[vec![2, 2], vec![2, -2]], &[2, 0])).unwrap().is_solvable());
    }

    #[test]
    fn smith_of_small_matrix() {
        let a: Vec<Vec<BigInt>> = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]].iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let f = smith_normal_form(&a, 3).unwrap();
        let d: Vec<i64> = f.diagonal.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![2, 2, 156]);
    }

    #[test]
    fn rejects_other_domains() {
        let s = LinearSystem::new(CoefficientDomain::Rationals, vec![]).unwrap();
        assert!(matches!(solve_linear_system_integers(&s), Err(Error::NotIntegers(_))));
    }

    /// Largest absolute minor of the augmented matrix, bounded via Hadamard.
    fn hadamard(rows: &[Vec<i64>], rhs: &[i64]) -> i64 {
        let n = rows[0].len() + 1;
        let mut col_norms: Vec<f64> = (0..n)
            .map(|j| {
                rows.iter()
                    .zip(rhs)
                    .map(|(r, b)| {
                        let v = if j + 1 == n { *b } else { r[j] } as f64;
                        v * v
                    })
                    .sum::<f64>()
                    .sqrt()
                    .max(1.0)
            })
            .collect();
        col_norms.sort_by(|a, b| b.partial_cmp(a).unwrap());
        col_norms.iter().take(rows.len()).product::<f64>().ceil() as i64
    }

    fn brute(rows: &[Vec<i64>], rhs: &[i64], bound: i64) -> bool {
        let n = rows[0].len();
        let mut x = vec![-bound; n];
        loop {
            if rows.iter().zip(rhs).all(|(r, b)| r.iter().zip(&x).map(|(a, v)| a * v).sum::<i64>() == *b) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                x[i] += 1;
                if x[i] <= bound {
                    break;
                }
                x[i] = -bound;
                i += 1;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn agrees_with_bounded_search(
            (rows, rhs) in (1usize..=2, 1usize..=3).prop_flat_map(|(m, n)| (
                prop::collection::vec(prop::collection::vec(-2i64..=2, n), m),
                prop::collection::vec(-4i64..=4, m),
            ))
        ) {
            let d = (rows[0].len() as i64 + 1) * hadamard(&rows, &rhs);
            let oracle = brute(&rows, &rhs, d);
            let got = solve_linear_system_integers(&sys(&rows, &rhs)).unwrap();
            prop_assert_eq!(got.is_solvable(), oracle);
        }
    }
}
