use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VariableId(pub u32);

impl VariableId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dense index ↔ name mapping for the variables of one system.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VariableRegistry {
    names: Vec<String>,
    index: HashMap<String, VariableId>,
}

impl VariableRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id for `name`, registering it if new.
    pub fn intern(&mut self, name: &str) -> VariableId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = VariableId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn get(&self, name: &str) -> Option<VariableId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: VariableId) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ids(&self) -> impl Iterator<Item = VariableId> {
        (0..self.names.len() as u32).map(VariableId)
    }
}

/// A power product of variables. Exponents are positive and sorted by variable.
///
/// The total order is graded lexicographic with `x0 > x1 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(VariableId, u32)>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: VariableId) -> Self {
        Monomial { exps: vec![(v, 1)], degree: 1 }
    }

    /// Builds from arbitrary `(var, exp)` pairs; repeated variables are merged
    /// and zero exponents dropped.
    pub fn from_exponents(pairs: impl IntoIterator<Item = (VariableId, u32)>) -> Self {
        let mut v: Vec<(VariableId, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_by_key(|&(x, _)| x);
        let mut exps: Vec<(VariableId, u32)> = Vec::with_capacity(v.len());
        for (x, e) in v {
            match exps.last_mut() {
                Some((y, f)) if *y == x => *f += e,
                _ => exps.push((x, e)),
            }
        }
        let degree = exps.iter().map(|&(_, e)| e).sum();
        Monomial { exps, degree }
    }

    /// Product of the given variables, with repetition.
    pub fn from_vars(vars: impl IntoIterator<Item = VariableId>) -> Self {
        Self::from_exponents(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[(VariableId, u32)] {
        &self.exps
    }

    pub fn exponent(&self, v: VariableId) -> u32 {
        self.exps.binary_search_by_key(&v, |&(x, _)| x).map(|i| self.exps[i].1).unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = VariableId> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn is_multilinear(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e == 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, e) = self.exps[i];
            let (b, f) = other.exps[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    exps.push((a, e));
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push((b, f));
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a, e + f));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn mul_var(&self, v: VariableId) -> Monomial {
        self.mul(&Monomial::var(v))
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(a, e) in &self.exps {
            if j < other.exps.len() && other.exps[j].0 == a {
                let f = other.exps[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((a, e - f));
                }
                j += 1;
            } else {
                if j < other.exps.len() && other.exps[j].0 < a {
                    return None;
                }
                out.push((a, e));
            }
        }
        if j < other.exps.len() {
            return None;
        }
        let degree = out.iter().map(|&(_, e)| e).sum();
        Some(Monomial { exps: out, degree })
    }

    /// The support as a set-variable (exponents collapse).
    pub fn support(&self) -> SetVariable {
        SetVariable(self.exps.iter().map(|&(v, _)| v).collect())
    }

    pub fn display(&self, reg: &VariableRegistry) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.exps.iter().map(|&(v, e)| if e == 1 { reg.name(v).to_string() } else { format!("{}^{}", reg.name(v), e) }).collect::<Vec<_>>().join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (&(a, e), &(b, f)) in self.exps.iter().zip(other.exps.iter()) {
                if a != b {
                    // the monomial containing the earlier (larger) variable wins
                    return b.cmp(&a);
                }
                if e != f {
                    return e.cmp(&f);
                }
            }
            self.exps.len().cmp(&other.exps.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.exps.iter().map(|&(v, e)| if e == 1 { format!("x{}", v.0) } else { format!("x{}^{}", v.0, e) }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A multilinearised monomial `X_{i_1..i_l}`: a sorted set of variables.
///
/// Ordered by cardinality, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SetVariable(Vec<VariableId>);

impl SetVariable {
    pub fn empty() -> Self {
        SetVariable(Vec::new())
    }

    pub fn new(vars: impl IntoIterator<Item = VariableId>) -> Self {
        let mut v: Vec<VariableId> = vars.into_iter().collect();
        v.sort();
        v.dedup();
        SetVariable(v)
    }

    pub fn singleton(v: VariableId) -> Self {
        SetVariable(vec![v])
    }

    pub fn vars(&self) -> &[VariableId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VariableId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn union(&self, other: &SetVariable) -> SetVariable {
        SetVariable::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn with(&self, v: VariableId) -> SetVariable {
        match self.0.binary_search(&v) {
            Ok(_) => self.clone(),
            Err(i) => {
                let mut w = self.0.clone();
                w.insert(i, v);
                SetVariable(w)
            }
        }
    }

    pub fn is_subset(&self, other: &SetVariable) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn to_monomial(&self) -> Monomial {
        Monomial::from_vars(self.0.iter().copied())
    }

    pub fn display(&self, reg: &VariableRegistry) -> String {
        let names: Vec<&str> = self.0.iter().map(|&v| reg.name(v)).collect();
        format!("X{{{}}}", names.join(","))
    }
}

impl Ord for SetVariable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for SetVariable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All subsets of `vars` of cardinality at most `max_len`, in set-variable order.
pub fn enumerate_set_variables(vars: &[VariableId], max_len: usize) -> Vec<SetVariable> {
    let mut sorted = vars.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out = vec![SetVariable::empty()];
    let mut layer = vec![Vec::<usize>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &layer {
            let start = s.last().map_or(0, |&i| i + 1);
            for i in start..sorted.len() {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().map(|t| SetVariable(t.iter().map(|&i| sorted[i]).collect())));
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VariableId {
        VariableId(i)
    }

    #[test]
    fn graded_lex_order() {
        let x = Monomial::var(v(0));
        let y = Monomial::var(v(1));
        let xy = x.mul(&y);
        let x2 = x.mul(&x);
        let y2 = y.mul(&y);
        assert!(Monomial::one() < y);
        assert!(y < x);
        assert!(x < y2);
        assert!(y2 < xy);
        assert!(xy < x2);
    }

    #[test]
    fn division_and_support() {
        let m = Monomial::from_exponents([(v(0), 2), (v(3), 1)]);
        assert_eq!(m.degree(), 3);
        assert_eq!(m.div(&Monomial::var(v(0))), Some(Monomial::from_exponents([(v(0), 1), (v(3), 1)])));
        assert_eq!(m.div(&Monomial::var(v(1))), None);
        assert_eq!(m.support(), SetVariable::new([v(3), v(0)]));
    }

    #[test]
    fn set_variable_order_and_enumeration() {
        let a = SetVariable::new([v(2)]);
        let b = SetVariable::new([v(0), v(1)]);
        assert!(SetVariable::empty() < a);
        assert!(a < b);
        let all = enumerate_set_variables(&[v(0), v(1), v(2)], 2);
        assert_eq!(all.len(), 1 + 3 + 3);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }
}
