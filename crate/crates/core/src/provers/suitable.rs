use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::rational::extended_gcd;
use crate::algebra::{CoefficientDomain, Rational, SetVariable};
use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, Colouring};
use crate::iso::{build_iso_system, lift_within_degree, multilinearise, verify_assignment, AssignmentCheck, IsoOptions, MlinAssignment, PairVariableSpace};

/// How two distinct classes are joined: by nothing or by a perfect matching.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Join {
    Edgeless,
    /// Partner of every vertex of either class, per side.
    Matching {
        g: HashMap<usize, usize>,
        h: HashMap<usize, usize>,
    },
}

/// A colouring whose classes are equally sized on both sides, independent,
/// and pairwise edgeless or perfectly matched in the same way on both sides.
#[derive(Clone, Debug)]
pub struct SuitableColouring {
    pub colouring: Colouring,
    /// Product of the distinct class sizes.
    pub index: u64,
    /// Class members in vertex order, per side.
    classes: BTreeMap<String, (Vec<usize>, Vec<usize>)>,
    /// Keyed by `(C1, C2)` with `C1 < C2`.
    joins: BTreeMap<(String, String), Join>,
}

fn join_of(graph: &ColouredGraph, a: &[usize], b: &[usize]) -> Option<Option<HashMap<usize, usize>>> {
    let mut partner = HashMap::new();
    let mut edges = 0;
    for &u in a {
        for &v in b {
            if graph.has_edge(u, v) {
                edges += 1;
                partner.insert(u, v);
                partner.insert(v, u);
            }
        }
    }
    if edges == 0 {
        return Some(None);
    }
    let perfect = a.len() == b.len() && edges == a.len() && partner.len() == 2 * a.len();
    perfect.then_some(Some(partner))
}

/// Checks the three suitability conditions and computes the index.
pub fn validate_suitable_colouring(g: &ColouredGraph, h: &ColouredGraph, c: &Colouring) -> Result<SuitableColouring> {
    c.check_sizes(g, h)?;
    let mut classes: BTreeMap<String, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (v, col) in c.g.iter().enumerate() {
        classes.entry(col.clone()).or_default().0.push(v);
    }
    for (w, col) in c.h.iter().enumerate() {
        classes.entry(col.clone()).or_default().1.push(w);
    }
    let mut sizes = std::collections::BTreeSet::new();
    for (name, (cg, ch)) in &classes {
        if cg.len() != ch.len() {
            return Err(Error::Precondition(format!("class {name} has {} vertices in G and {} in H", cg.len(), ch.len())));
        }
        for (graph, members) in [(g, cg), (h, ch)] {
            if members.iter().any(|&u| members.iter().any(|&v| graph.has_edge(u, v))) {
                return Err(Error::Precondition(format!("class {name} is not independent")));
            }
        }
        sizes.insert(cg.len() as u64);
    }
    let names: Vec<&String> = classes.keys().collect();
    let mut joins = BTreeMap::new();
    for (i, &a) in names.iter().enumerate() {
        for &b in &names[i + 1..] {
            let (ag, ah) = &classes[a];
            let (bg, bh) = &classes[b];
            let bad = || Error::Precondition(format!("classes {a} and {b} are neither edgeless nor matched alike"));
            let join = match (join_of(g, ag, bg).ok_or_else(bad)?, join_of(h, ah, bh).ok_or_else(bad)?) {
                (None, None) => Join::Edgeless,
                (Some(pg), Some(ph)) => Join::Matching { g: pg, h: ph },
                _ => return Err(bad()),
            };
            joins.insert((a.clone(), b.clone()), join);
        }
    }
    let index = sizes.iter().product();
    Ok(SuitableColouring { colouring: c.clone(), index, classes, joins })
}

impl SuitableColouring {
    fn position(&self, members: &[usize], v: usize) -> i64 {
        members.iter().position(|&u| u == v).expect("member") as i64
    }

    fn single(&self, v: usize, w: usize) -> Rational {
        let (cv, cw) = (&self.colouring.g[v], &self.colouring.h[w]);
        if cv != cw {
            return Rational::zero();
        }
        Rational::new(self.index as i64, self.classes[cv].0.len() as i64)
    }

    fn double(&self, p: (usize, usize), q: (usize, usize)) -> Rational {
        let c = self.index as i64;
        let (c1, c2) = (&self.colouring.g[p.0], &self.colouring.g[q.0]);
        if c1 != &self.colouring.h[p.1] || c2 != &self.colouring.h[q.1] {
            return Rational::zero();
        }
        let shifted = |ell: i64, i: i64, j: i64, a: i64, b: i64| {
            if (i - a - j + b).rem_euclid(ell) == 0 {
                Rational::new(c, ell)
            } else {
                Rational::zero()
            }
        };
        if c1 == c2 {
            let (cg, ch) = &self.classes[c1];
            let ell = cg.len() as i64;
            return shifted(ell, self.position(cg, p.0), self.position(ch, p.1), self.position(cg, q.0), self.position(ch, q.1));
        }
        let (p, q, c1, c2) = if c1 < c2 { (p, q, c1, c2) } else { (q, p, c2, c1) };
        let (cg, ch) = &self.classes[c1];
        match &self.joins[&(c1.clone(), c2.clone())] {
            // C2 is indexed through the partners of C1's order
            Join::Matching { g, h } => {
                let ell = cg.len() as i64;
                shifted(ell, self.position(cg, p.0), self.position(ch, p.1), self.position(cg, g[&q.0]), self.position(ch, h[&q.1]))
            }
            Join::Edgeless => {
                let m = self.classes[c2].0.len() as i64;
                Rational::new(c, cg.len() as i64 * m)
            }
        }
    }

    /// The (rational) assignment of this colouring on a set-variable of size at most 2.
    fn value(&self, space: &PairVariableSpace, s: &SetVariable) -> Rational {
        match s.vars() {
            [] => Rational::from_int(self.index as i64),
            [x] => {
                let (v, w) = space.pair(*x);
                self.single(v, w)
            }
            [x, y] => self.double(space.pair(*x), space.pair(*y)),
            _ => unreachable!("degree-2 columns only"),
        }
    }
}

/// Combines the assignments of two suitable colourings of coprime index into
/// an integer solution of `MLIN(P_iso²)`, verified before return.
pub fn coprime_colouring_solution(g: &ColouredGraph, h: &ColouredGraph, c1: &SuitableColouring, c2: &SuitableColouring) -> Result<MlinAssignment> {
    let (c, b) = (BigInt::from(c1.index), BigInt::from(c2.index));
    let (gcd, s, t) = extended_gcd(&b, &c);
    if !gcd.is_one() {
        return Err(Error::Precondition(format!("indices {} and {} are not coprime", c1.index, c2.index)));
    }
    let z = CoefficientDomain::Integers;
    let iso = build_iso_system(g, h, z, IsoOptions::default())?;
    let lifted = lift_within_degree(&iso.axioms, &iso.space.live_vars(), 2);
    let system = multilinearise(&lifted.polys, z)?;
    let (s, t) = (Rational::from_bigint(s), Rational::from_bigint(t));
    let mut gamma = MlinAssignment::new(z);
    for col in system.columns() {
        let alpha = c1.value(&iso.space, col);
        let beta = c2.value(&iso.space, col);
        let value = s.mul(&beta).add(&t.mul(&alpha));
        gamma.set(col.clone(), z.from_rational(&value)?)?;
    }
    match verify_assignment(&gamma, &system, false)? {
        AssignmentCheck::Ok => Ok(gamma),
        bad => Err(Error::verification(format!("combined colouring assignment fails: {bad:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{cycle, three_triangles_colourings, three_triangles_pair};

    #[test]
    fn indices_of_the_nine_vertex_pair() {
        let (g, h) = three_triangles_pair();
        let (c3, c2) = three_triangles_colourings();
        assert_eq!(validate_suitable_colouring(&g, &h, &c3).unwrap().index, 3);
        assert_eq!(validate_suitable_colouring(&g, &h, &c2).unwrap().index, 2);
    }

    #[test]
    fn intra_class_edge_rejected() {
        let g = cycle(4).unwrap();
        let same = vec!["a".to_string(); 4];
        let c = Colouring::new(same.clone(), same);
        assert!(matches!(validate_suitable_colouring(&g, &g, &c), Err(Error::Precondition(_))));
    }

    #[test]
    fn singleton_classes_give_the_isomorphism() {
        let g = cycle(4).unwrap();
        let names: Vec<String> = (0..4).map(|i| format!("c{i}")).collect();
        let sc = validate_suitable_colouring(&g, &g, &Colouring::new(names.clone(), names)).unwrap();
        assert_eq!(sc.index, 1);
        let gamma = coprime_colouring_solution(&g, &g, &sc, &sc).unwrap();
        let z = CoefficientDomain::Integers;
        for (s, v) in gamma.iter() {
            let on = s.vars().iter().all(|&x| {
                let name = x.index();
                // identity on C4: variable x(v,w) is index 4v + w
                name / 4 == name % 4
            });
            assert_eq!(v, &if on { z.one() } else { z.zero() });
        }
    }

    #[test]
    fn non_coprime_rejected() {
        let mut g = ColouredGraph::with_vertices(4);
        g.add_edge(0, 1, None).unwrap();
        g.add_edge(2, 3, None).unwrap();
        let halves: Vec<String> = ["a", "b", "a", "b"].iter().map(|s| s.to_string()).collect();
        let two = validate_suitable_colouring(&g, &g, &Colouring::new(halves.clone(), halves)).unwrap();
        assert_eq!(two.index, 2);
        assert!(matches!(coprime_colouring_solution(&g, &g, &two, &two), Err(Error::Precondition(_))));
    }

    #[test]
    fn shift_rule_modulo_class_size() {
        let (g, h) = three_triangles_pair();
        let (c3, c2) = three_triangles_colourings();
        let s3 = validate_suitable_colouring(&g, &h, &c3).unwrap();
        let s2 = validate_suitable_colouring(&g, &h, &c2).unwrap();
        let gamma = coprime_colouring_solution(&g, &h, &s3, &s2).unwrap();
        assert_eq!(gamma.domain, CoefficientDomain::Integers);
    }
}
