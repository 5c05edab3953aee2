/// Maximum bipartite matching by Hopcroft–Karp.
///
/// `adj[u]` lists the right vertices adjacent to left vertex `u`. Returns
/// `mate[u]` for every left vertex.
pub fn maximum_matching(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    const INF: usize = usize::MAX;
    let n_left = adj.len();
    let mut mate_l: Vec<Option<usize>> = vec![None; n_left];
    let mut mate_r: Vec<Option<usize>> = vec![None; n_right];
    let mut dist = vec![INF; n_left];

    loop {
        // BFS layering from free left vertices
        let mut queue = std::collections::VecDeque::new();
        for u in 0..n_left {
            if mate_l[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                match mate_r[w] {
                    None => found = true,
                    Some(u2) if dist[u2] == INF => {
                        dist[u2] = dist[u] + 1;
                        queue.push_back(u2);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; n_left];
        for u in 0..n_left {
            if mate_l[u].is_none() {
                augment(u, adj, &mut mate_l, &mut mate_r, &mut dist, &mut it);
            }
        }
    }
    mate_l
}

fn augment(u: usize, adj: &[Vec<usize>], mate_l: &mut [Option<usize>], mate_r: &mut [Option<usize>], dist: &mut [usize], it: &mut [usize]) -> bool {
    while it[u] < adj[u].len() {
        let w = adj[u][it[u]];
        it[u] += 1;
        let ok = match mate_r[w] {
            None => true,
            Some(u2) => dist[u2] == dist[u] + 1 && augment(u2, adj, mate_l, mate_r, dist, it),
        };
        if ok {
            mate_l[u] = Some(w);
            mate_r[w] = Some(u);
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

/// A perfect matching of a square bipartite graph, if one exists.
pub fn perfect_matching(adj: &[Vec<usize>], n_right: usize) -> Option<Vec<usize>> {
    if adj.len() != n_right {
        return None;
    }
    maximum_matching(adj, n_right).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_has_perfect(adj: &[Vec<usize>], n: usize) -> bool {
        fn go(u: usize, adj: &[Vec<usize>], used: &mut [bool]) -> bool {
            if u == adj.len() {
                return true;
            }
            for &w in &adj[u] {
                if !used[w] {
                    used[w] = true;
                    if go(u + 1, adj, used) {
                        return true;
                    }
                    used[w] = false;
                }
            }
            false
        }
        go(0, adj, &mut vec![false; n])
    }

    #[test]
    fn hall_violation() {
        // two left vertices both only see right vertex 0
        let adj = vec![vec![0], vec![0], vec![1, 2]];
        assert!(perfect_matching(&adj, 3).is_none());
        let adj = vec![vec![0, 1], vec![0], vec![1, 2]];
        assert_eq!(perfect_matching(&adj, 3), Some(vec![1, 0, 2]));
    }

    proptest! {
        #[test]
        fn agrees_with_exhaustive_search(bits in prop::collection::vec(any::<bool>(), 36), n in 1usize..=6) {
            let adj: Vec<Vec<usize>> = (0..n).map(|u| (0..n).filter(|&w| bits[u * 6 + w]).collect()).collect();
            let got = perfect_matching(&adj, n);
            prop_assert_eq!(got.is_some(), brute_has_perfect(&adj, n));
            if let Some(m) = got {
                for (u, &w) in m.iter().enumerate() {
                    prop_assert!(adj[u].contains(&w));
                }
            }
        }
    }
}
