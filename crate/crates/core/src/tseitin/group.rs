use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// A finite group as an explicit multiplication table. Element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    fn from_table(name: String, labels: Vec<String>, table: Vec<Vec<usize>>) -> Self {
        let n = labels.len();
        let inverse = (0..n).map(|a| (0..n).find(|&b| table[a][b] == 0).expect("group table")).collect();
        FiniteGroup { name, labels, table, inverse }
    }

    /// `Z₂` written multiplicatively: element 0 is `1`, element 1 is `−1`.
    pub fn z2() -> Self {
        FiniteGroup::from_table("Z2".into(), vec!["1".into(), "-1".into()], vec![vec![0, 1], vec![1, 0]])
    }

    /// `S_ℓ` on `{0,…,ℓ−1}` with `(a·b)(j) = a(b(j))`; elements in lexicographic
    /// order of their images, so the identity comes first.
    pub fn symmetric(l: usize) -> Result<Self> {
        if l == 0 || l > 6 {
            return Err(Error::invalid(format!("S_{l} is outside the supported range 1..=6")));
        }
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut p: Vec<usize> = (0..l).collect();
        loop {
            perms.push(p.clone());
            // next lexicographic permutation
            let Some(i) = (0..l.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
            let j = (i + 1..l).rev().find(|&j| p[j] > p[i]).expect("successor exists");
            p.swap(i, j);
            p[i + 1..].reverse();
        }
        let index: HashMap<Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let table = perms.iter().map(|a| perms.iter().map(|b| index[&b.iter().map(|&j| a[j]).collect::<Vec<_>>()]).collect()).collect();
        let labels = perms.iter().map(|p| p.iter().map(|j| j.to_string()).collect::<Vec<_>>().join("")).collect();
        Ok(FiniteGroup::from_table(format!("S{l}"), labels, table))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn is_z2(&self) -> bool {
        self.order() == 2
    }

    /// For `S_ℓ`, the image list of element `a`.
    pub fn permutation(&self, a: usize) -> Vec<usize> {
        self.labels[a].chars().map(|c| c.to_digit(10).expect("permutation label") as usize).collect()
    }

    /// Coordinatewise product of tuples.
    pub fn mul_tuple(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        a.iter().zip(b).map(|(&x, &y)| self.mul(x, y)).collect()
    }

    pub fn inv_tuple(&self, a: &[usize]) -> Vec<usize> {
        a.iter().map(|&x| self.inv(x)).collect()
    }
}

/// A constraint `(x̄, Δγ)` with the coset listed explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub vars: Vec<usize>,
    /// Sorted, duplicate-free.
    pub coset: Vec<Vec<usize>>,
}

impl Constraint {
    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.coset.binary_search_by(|t| t.as_slice().cmp(tuple)).is_ok()
    }
}

/// Recovers `Δ = Δγ·γ⁻¹` and checks it is a subgroup.
fn subgroup_of(group: &FiniteGroup, coset: &[Vec<usize>]) -> Result<BTreeSet<Vec<usize>>> {
    let gamma = coset.first().ok_or_else(|| Error::invalid("empty coset"))?;
    let gi = group.inv_tuple(gamma);
    let delta: BTreeSet<Vec<usize>> = coset.iter().map(|b| group.mul_tuple(b, &gi)).collect();
    for a in &delta {
        for b in &delta {
            if !delta.contains(&group.mul_tuple(a, b)) {
                return Err(Error::invalid("constraint relation is not a coset of a subgroup"));
            }
        }
    }
    Ok(delta)
}

/// A `Γ`-CSP: variables `0..num_vars` with coset constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCsp {
    pub group: FiniteGroup,
    pub var_names: Vec<String>,
    pub constraints: Vec<Constraint>,
}

impl GroupCsp {
    /// Validates arities, element ranges and coset closure.
    pub fn new(group: FiniteGroup, var_names: Vec<String>, constraints: Vec<Constraint>) -> Result<Self> {
        let mut out = Vec::with_capacity(constraints.len());
        for mut c in constraints {
            if c.vars.is_empty() || c.vars.iter().any(|&x| x >= var_names.len()) {
                return Err(Error::invalid("constraint with no or unknown variables"));
            }
            if c.coset.iter().any(|t| t.len() != c.arity() || t.iter().any(|&a| a >= group.order())) {
                return Err(Error::invalid("coset tuple does not match the arity or group"));
            }
            c.coset.sort();
            c.coset.dedup();
            subgroup_of(&group, &c.coset)?;
            out.push(c);
        }
        Ok(GroupCsp { group, var_names, constraints: out })
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn is_solution(&self, phi: &[usize]) -> bool {
        phi.len() == self.num_vars()
            && phi.iter().all(|&a| a < self.group.order())
            && self.constraints.iter().all(|c| c.contains(&c.vars.iter().map(|&x| phi[x]).collect::<Vec<_>>()))
    }

    /// The homogeneous instance: every `Δγ` replaced by `Δ`.
    pub fn homogenised(&self) -> GroupCsp {
        let constraints = self
            .constraints
            .iter()
            .map(|c| Constraint { vars: c.vars.clone(), coset: subgroup_of(&self.group, &c.coset).expect("validated").into_iter().collect() })
            .collect();
        GroupCsp { group: self.group.clone(), var_names: self.var_names.clone(), constraints }
    }

    /// Backtracking search, checking each constraint once its variables are
    /// assigned. `node_limit` bounds the search tree.
    pub fn solve_brute_force(&self, node_limit: usize) -> Result<Option<Vec<usize>>> {
        let n = self.num_vars();
        // constraints become checkable at their last variable
        let mut due: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, c) in self.constraints.iter().enumerate() {
            due[*c.vars.iter().max().expect("nonempty")].push(i);
        }
        let mut phi = vec![0usize; n];
        let mut nodes = 0usize;
        fn go(csp: &GroupCsp, due: &[Vec<usize>], phi: &mut Vec<usize>, x: usize, nodes: &mut usize, limit: usize) -> Result<bool> {
            if x == phi.len() {
                return Ok(true);
            }
            for a in 0..csp.group.order() {
                *nodes += 1;
                if *nodes > limit {
                    return Err(Error::BudgetExceeded(format!("CSP search above {limit} nodes")));
                }
                phi[x] = a;
                let ok = due[x].iter().all(|&i| {
                    let c = &csp.constraints[i];
                    c.contains(&c.vars.iter().map(|&y| phi[y]).collect::<Vec<_>>())
                });
                if ok && go(csp, due, phi, x + 1, nodes, limit)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Ok(go(self, &due, &mut phi, 0, &mut nodes, node_limit)?.then_some(phi))
    }
}
