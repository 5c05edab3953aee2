use std::collections::HashMap;

use super::coloured::ColouredGraph;
use super::game::{GamePosition, GameTable};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    G,
    H,
}

/// Equivalence classes of `ℓ`-tuples of `V(G) ∪ V(H)` for `ℓ ≤ k`: two tuples
/// share a type when Duplicator wins the `k`-pebble game from their pointwise
/// pairing.
#[derive(Clone, Debug)]
pub struct TypePartition {
    k: usize,
    class_of: Vec<HashMap<(Side, Vec<usize>), usize>>,
    /// `counts[ℓ][class] = (#tuples in G, #tuples in H)`
    counts: Vec<Vec<(usize, usize)>>,
}

fn tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

impl TypePartition {
    pub fn build(g: &ColouredGraph, h: &ColouredGraph, k: usize, budget: usize) -> Result<Self> {
        let (ng, nh) = (g.num_vertices(), h.num_vertices());
        let total_tuples: usize = (0..=k).map(|l| ng.pow(l as u32) + nh.pow(l as u32)).sum();
        if total_tuples > budget {
            return Err(Error::BudgetExceeded(format!("{total_tuples} tuples exceed the budget {budget}")));
        }
        let gg = GameTable::solve(g, g, k, budget)?;
        let gh = GameTable::solve(g, h, k, budget)?;
        let hh = GameTable::solve(h, h, k, budget)?;
        let equivalent = |a: &(Side, Vec<usize>), b: &(Side, Vec<usize>)| -> Result<bool> {
            let (table, pairs): (&GameTable, Vec<(usize, usize)>) = match (a.0, b.0) {
                (Side::G, Side::G) => (&gg, a.1.iter().copied().zip(b.1.iter().copied()).collect()),
                (Side::H, Side::H) => (&hh, a.1.iter().copied().zip(b.1.iter().copied()).collect()),
                (Side::G, Side::H) => (&gh, a.1.iter().copied().zip(b.1.iter().copied()).collect()),
                (Side::H, Side::G) => (&gh, b.1.iter().copied().zip(a.1.iter().copied()).collect()),
            };
            Ok(!table.verdict(&GamePosition::new(pairs, k)?)?.spoiler_wins())
        };

        let mut class_of = Vec::with_capacity(k + 1);
        let mut counts = Vec::with_capacity(k + 1);
        for l in 0..=k {
            let mut reps: Vec<(Side, Vec<usize>)> = Vec::new();
            let mut map = HashMap::new();
            let mut cnt: Vec<(usize, usize)> = Vec::new();
            let all = tuples(ng, l).into_iter().map(|t| (Side::G, t)).chain(tuples(nh, l).into_iter().map(|t| (Side::H, t)));
            for item in all {
                let mut found = None;
                for (c, r) in reps.iter().enumerate() {
                    if equivalent(r, &item)? {
                        found = Some(c);
                        break;
                    }
                }
                let c = match found {
                    Some(c) => c,
                    None => {
                        reps.push(item.clone());
                        cnt.push((0, 0));
                        reps.len() - 1
                    }
                };
                match item.0 {
                    Side::G => cnt[c].0 += 1,
                    Side::H => cnt[c].1 += 1,
                }
                map.insert(item, c);
            }
            class_of.push(map);
            counts.push(cnt);
        }
        Ok(TypePartition { k, class_of, counts })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_classes(&self, len: usize) -> usize {
        self.counts[len].len()
    }

    /// Class id of a tuple among tuples of the same length.
    pub fn type_of(&self, side: Side, tuple: &[usize]) -> usize {
        self.class_of[tuple.len()][&(side, tuple.to_vec())]
    }

    pub fn same_type(&self, a: (Side, &[usize]), b: (Side, &[usize])) -> bool {
        a.1.len() == b.1.len() && self.type_of(a.0, a.1) == self.type_of(b.0, b.1)
    }

    /// `t(ū)`: how many tuples of `ū`'s own graph share its type.
    pub fn t(&self, side: Side, tuple: &[usize]) -> usize {
        let c = self.counts[tuple.len()][self.type_of(side, tuple)];
        match side {
            Side::G => c.0,
            Side::H => c.1,
        }
    }

    /// All tuples of the given length with their class ids.
    pub fn tuples(&self, len: usize) -> impl Iterator<Item = (&(Side, Vec<usize>), &usize)> {
        self.class_of[len].iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let mut g = ColouredGraph::with_vertices(2);
        g.add_edge(0, 1, None).unwrap();
        let tp = TypePartition::build(&g, &g, 1, 1_000_000).unwrap();
        assert_eq!(tp.num_classes(1), 1);
        for v in 0..2 {
            assert_eq!(tp.t(Side::G, &[v]), 2);
            assert_eq!(tp.t(Side::H, &[v]), 2);
        }
    }

    #[test]
    fn mismatched_colours_split() {
        let mut g = ColouredGraph::with_vertices(2);
        g.set_colour(0, "red");
        let tp = TypePartition::build(&g, &g, 2, 1_000_000).unwrap();
        assert!(!tp.same_type((Side::G, &[0]), (Side::H, &[1])));
        assert!(tp.same_type((Side::G, &[0, 1]), (Side::H, &[0, 1])));
    }
}
