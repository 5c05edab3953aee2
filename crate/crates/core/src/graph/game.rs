//! The bijective k-pebble game, solved exactly as a least fixpoint over
//! positions.
//!
//! Only local-isomorphism positions are stored; every other position is a
//! round-0 Spoiler win. A position `π` with `|π| < k` is *forcing* at round
//! `r + 1` when Duplicator has no bijection `f` such that every
//! `π ∪ {(v, f(v))}` survives `r` rounds, i.e. the bipartite graph of
//! surviving extensions has no perfect matching. A position is won at round
//! `r + 1` exactly when one of its subsets is forcing.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::coloured::ColouredGraph;
use super::matching::perfect_matching;
use super::pair::GraphPair;
use crate::error::{Error, Result};

/// Default cap on the number of stored positions.
pub const DEFAULT_POSITION_BUDGET: usize = 1_000_000;

/// Largest supported pebble count: positions pack into a `u64` key.
pub const MAX_PEBBLES: usize = 4;

/// A position: a canonically sorted set of pairs `(v, w)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GamePosition(Vec<(usize, usize)>);

impl GamePosition {
    pub fn empty() -> Self {
        GamePosition(Vec::new())
    }

    /// Sorts and deduplicates; fails when more than `k` pairs remain.
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>, k: usize) -> Result<Self> {
        let mut v: Vec<(usize, usize)> = pairs.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.len() > k {
            return Err(Error::invalid(format!("position has {} pairs but only {k} pebbles", v.len())));
        }
        Ok(GamePosition(v))
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Winner {
    Spoiler,
    Duplicator,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameVerdict {
    pub winner: Winner,
    /// Least number of rounds Spoiler needs; `None` when Duplicator wins.
    pub rounds: Option<u32>,
}

impl GameVerdict {
    pub fn spoiler(rounds: u32) -> Self {
        GameVerdict { winner: Winner::Spoiler, rounds: Some(rounds) }
    }

    pub fn duplicator() -> Self {
        GameVerdict { winner: Winner::Duplicator, rounds: None }
    }

    pub fn spoiler_wins(&self) -> bool {
        self.winner == Winner::Spoiler
    }
}

const NOT_WON: u32 = u32::MAX;

/// Solved game table for one graph pair and pebble count.
pub struct GameTable<'a> {
    pair: GraphPair<'a>,
    k: usize,
    positions: Vec<Vec<u32>>,
    index: HashMap<u64, usize>,
    won: Vec<u32>,
    size_mismatch: bool,
}

fn key_of(pairs: &[u32]) -> u64 {
    pairs.iter().fold(0u64, |acc, &p| (acc << 16) | (p as u64 + 1))
}

fn insert_sorted(pairs: &[u32], p: u32, buf: &mut Vec<u32>) {
    buf.clear();
    buf.extend_from_slice(pairs);
    if let Err(i) = buf.binary_search(&p) {
        buf.insert(i, p);
    }
}

impl<'a> GameTable<'a> {
    pub fn solve(g: &'a ColouredGraph, h: &'a ColouredGraph, k: usize, budget: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::invalid("the game needs at least one pebble pair"));
        }
        if k > MAX_PEBBLES {
            return Err(Error::BudgetExceeded(format!("{k} pebbles exceed the supported maximum {MAX_PEBBLES}")));
        }
        if g.num_vertices() * h.num_vertices() >= u16::MAX as usize {
            return Err(Error::BudgetExceeded("graphs too large for the position encoding".into()));
        }
        let pair = GraphPair::new(g, h);
        let mut table = GameTable { size_mismatch: pair.n_g() != pair.n_h(), pair, k, positions: Vec::new(), index: HashMap::new(), won: Vec::new() };
        if table.size_mismatch {
            return Ok(table);
        }
        table.enumerate(budget)?;
        table.fixpoint();
        Ok(table)
    }

    fn decode(&self, p: u32) -> (usize, usize) {
        let nh = self.pair.n_h();
        (p as usize / nh, p as usize % nh)
    }

    fn enumerate(&mut self, budget: usize) -> Result<()> {
        let n = self.pair.n_g() * self.pair.n_h();
        let mut stack: Vec<(Vec<u32>, Vec<(usize, usize)>)> = vec![(Vec::new(), Vec::new())];
        while let Some((pos, pairs)) = stack.pop() {
            if self.positions.len() >= budget {
                return Err(Error::BudgetExceeded(format!("more than {budget} game positions")));
            }
            self.index.insert(key_of(&pos), self.positions.len());
            self.positions.push(pos.clone());
            if pos.len() == self.k {
                continue;
            }
            let start = pos.last().map_or(0, |&p| p as usize + 1);
            for p in start..n {
                let vw = self.decode(p as u32);
                if self.pair.extends(&pairs, vw) {
                    let mut np = pos.clone();
                    np.push(p as u32);
                    let mut npairs = pairs.clone();
                    npairs.push(vw);
                    stack.push((np, npairs));
                }
            }
        }
        self.won = vec![NOT_WON; self.positions.len()];
        Ok(())
    }

    fn survives(&self, key: u64) -> bool {
        self.index.get(&key).is_some_and(|&i| self.won[i] == NOT_WON)
    }

    fn fixpoint(&mut self) {
        let (ng, nh) = (self.pair.n_g(), self.pair.n_h());
        let mut buf = Vec::with_capacity(self.k + 1);
        for round in 1u32.. {
            let mut forcing: HashSet<u64> = HashSet::new();
            for (i, pos) in self.positions.iter().enumerate() {
                if pos.len() >= self.k || self.won[i] != NOT_WON {
                    continue;
                }
                let adj: Vec<Vec<usize>> = (0..ng)
                    .map(|v| {
                        (0..nh)
                            .filter(|&w| {
                                insert_sorted(pos, (v * nh + w) as u32, &mut buf);
                                self.survives(key_of(&buf))
                            })
                            .collect()
                    })
                    .collect();
                if perfect_matching(&adj, nh).is_none() {
                    forcing.insert(key_of(pos));
                }
            }
            if forcing.is_empty() {
                break;
            }
            let mut sub = Vec::with_capacity(self.k);
            for i in 0..self.positions.len() {
                if self.won[i] != NOT_WON {
                    continue;
                }
                let pos = &self.positions[i];
                let hit = (0u32..1 << pos.len()).any(|mask| {
                    sub.clear();
                    sub.extend(pos.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &p)| p));
                    forcing.contains(&key_of(&sub))
                });
                if hit {
                    self.won[i] = round;
                }
            }
        }
    }

    pub fn pebbles(&self) -> usize {
        self.k
    }

    pub fn num_positions(&self) -> usize {
        self.positions.len()
    }

    pub fn pair(&self) -> &GraphPair<'a> {
        &self.pair
    }

    pub fn verdict(&self, pos: &GamePosition) -> Result<GameVerdict> {
        if pos.len() > self.k {
            return Err(Error::invalid("position larger than the pebble count"));
        }
        let (ng, nh) = (self.pair.n_g(), self.pair.n_h());
        if pos.pairs().iter().any(|&(v, w)| v >= ng || w >= nh) {
            return Err(Error::invalid("position references a missing vertex"));
        }
        if self.size_mismatch || !self.pair.is_local_iso(pos.pairs()) {
            return Ok(GameVerdict::spoiler(0));
        }
        let codes: Vec<u32> = pos.pairs().iter().map(|&(v, w)| (v * nh + w) as u32).collect();
        let i = self.index[&key_of(&codes)];
        Ok(match self.won[i] {
            NOT_WON => GameVerdict::duplicator(),
            r => GameVerdict::spoiler(r),
        })
    }

    pub fn from_empty(&self) -> GameVerdict {
        self.verdict(&GamePosition::empty()).expect("empty position is valid")
    }
}

/// Solves the bijective `k`-pebble game on `(G, H)` from `start`.
pub fn solve_bijective_pebble_game(g: &ColouredGraph, h: &ColouredGraph, k: usize, start: &GamePosition) -> Result<GameVerdict> {
    if start.len() > k {
        return Err(Error::invalid("initial position exceeds k"));
    }
    GameTable::solve(g, h, k, DEFAULT_POSITION_BUDGET)?.verdict(start)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> ColouredGraph {
        let mut g = ColouredGraph::with_vertices(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n, None).unwrap();
        }
        g
    }

    fn two_triangles() -> ColouredGraph {
        let mut g = ColouredGraph::with_vertices(6);
        for (a, b) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)] {
            g.add_edge(a, b, None).unwrap();
        }
        g
    }

    #[test]
    fn identical_graphs() {
        let g = cycle(5);
        for k in 1..=3 {
            let v = solve_bijective_pebble_game(&g, &g, k, &GamePosition::empty()).unwrap();
            assert_eq!(v, GameVerdict::duplicator());
        }
    }

    #[test]
    fn size_mismatch_is_immediate() {
        let v = solve_bijective_pebble_game(&cycle(4), &cycle(5), 2, &GamePosition::empty()).unwrap();
        assert_eq!(v, GameVerdict::spoiler(0));
    }

    #[test]
    fn triangles_versus_hexagon() {
        let (g, h) = (two_triangles(), cycle(6));
        let e = GamePosition::empty();
        assert!(!solve_bijective_pebble_game(&g, &h, 2, &e).unwrap().spoiler_wins());
        assert!(solve_bijective_pebble_game(&g, &h, 3, &e).unwrap().spoiler_wins());
    }

    #[test]
    fn bad_arguments() {
        let g = cycle(3);
        assert!(solve_bijective_pebble_game(&g, &g, 0, &GamePosition::empty()).is_err());
        assert!(GamePosition::new([(0, 0), (1, 1)], 1).is_err());
    }
}
