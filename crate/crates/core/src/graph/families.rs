//! Named base graphs and the fixed small instances used throughout the tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::coloured::{ColouredGraph, DEFAULT_COLOUR};
use super::colouring::Colouring;
use crate::error::{Error, Result};

pub fn cycle(n: usize) -> Result<ColouredGraph> {
    if n < 3 {
        return Err(Error::invalid("a cycle needs at least 3 vertices"));
    }
    let mut g = ColouredGraph::with_vertices(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n, None)?;
    }
    Ok(g)
}

pub fn complete(n: usize) -> Result<ColouredGraph> {
    let mut g = ColouredGraph::with_vertices(n);
    for i in 0..n {
        for j in i + 1..n {
            g.add_edge(i, j, None)?;
        }
    }
    Ok(g)
}

pub fn grid(a: usize, b: usize) -> Result<ColouredGraph> {
    if a == 0 || b == 0 {
        return Err(Error::invalid("grid sides must be positive"));
    }
    let mut g = ColouredGraph::new();
    for i in 0..a {
        for j in 0..b {
            g.add_vertex(&format!("{i}_{j}"), DEFAULT_COLOUR)?;
        }
    }
    for i in 0..a {
        for j in 0..b {
            if i + 1 < a {
                g.add_edge(i * b + j, (i + 1) * b + j, None)?;
            }
            if j + 1 < b {
                g.add_edge(i * b + j, i * b + j + 1, None)?;
            }
        }
    }
    Ok(g)
}

/// Circulant graph: `i ~ i ± j` for every jump `j`.
pub fn circulant(n: usize, jumps: &[usize]) -> Result<ColouredGraph> {
    let mut g = ColouredGraph::with_vertices(n);
    for i in 0..n {
        for &j in jumps {
            if j == 0 || 2 * j > n {
                return Err(Error::invalid(format!("jump {j} is not in 1..=n/2")));
            }
            let k = (i + j) % n;
            if !g.has_edge(i, k) {
                g.add_edge(i, k, None)?;
            }
        }
    }
    Ok(g)
}

/// Random `d`-regular simple graph by the pairing model with restarts.
pub fn random_regular(d: usize, n: usize, seed: u64) -> Result<ColouredGraph> {
    if d >= n || (d * n) % 2 == 1 {
        return Err(Error::invalid(format!("no {d}-regular graph on {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        points.shuffle(&mut rng);
        let mut g = ColouredGraph::with_vertices(n);
        let ok = points.chunks(2).all(|p| p[0] != p[1] && !g.has_edge(p[0], p[1]) && g.add_edge(p[0], p[1], None).is_ok());
        if ok {
            return Ok(g);
        }
    }
    Err(Error::invalid(format!("failed to sample a {d}-regular graph on {n} vertices")))
}

/// Random graph pair on `n` vertices with `colours` vertex colours; `H` is
/// either a relabelled copy of `G` or an independent sample with the same
/// colour counts.
pub fn random_coloured_pair(n: usize, colours: usize, p: f64, seed: u64) -> (ColouredGraph, ColouredGraph) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cols: Vec<usize> = (0..n).map(|_| rng.gen_range(0..colours.max(1))).collect();
    let sample = |rng: &mut ChaCha8Rng, cols: &[usize]| {
        let mut g = ColouredGraph::new();
        for (v, c) in cols.iter().enumerate() {
            g.add_vertex(&v.to_string(), &format!("c{c}")).expect("fresh");
        }
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v, None).expect("fresh");
                }
            }
        }
        g
    };
    let g = sample(&mut rng, &cols);
    let h = if rng.gen_bool(0.5) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let mut h = ColouredGraph::new();
        let mut inv = vec![0; n];
        for (v, &pv) in perm.iter().enumerate() {
            inv[pv] = v;
        }
        for w in 0..n {
            h.add_vertex(&w.to_string(), g.colour(inv[w])).expect("fresh");
        }
        for (u, v, _) in g.edges() {
            h.add_edge(perm[u], perm[v], None).expect("fresh");
        }
        h
    } else {
        let mut shuffled = cols.clone();
        shuffled.shuffle(&mut rng);
        sample(&mut rng, &shuffled)
    };
    (g, h)
}

/// Two coloured 6-vertex graphs: two triangles against a 6-cycle, with
/// colour classes {1,2}, {3,4}, {5,6} of size two.
pub fn two_triangles_vs_hexagon() -> (ColouredGraph, ColouredGraph) {
    let build = |edges: &[(usize, usize)]| {
        let mut g = ColouredGraph::new();
        for (i, c) in ["green", "green", "blue", "blue", "red", "red"].iter().enumerate() {
            g.add_vertex(&(i + 1).to_string(), c).expect("fresh");
        }
        for &(a, b) in edges {
            g.add_edge(a - 1, b - 1, None).expect("simple");
        }
        g
    };
    let g = build(&[(4, 2), (3, 1), (2, 6), (1, 5), (4, 6), (3, 5)]);
    let h = build(&[(4, 2), (3, 1), (2, 6), (1, 5), (4, 5), (3, 6)]);
    (g, h)
}

/// Three triangles against a triangle plus a 6-cycle, both uncoloured.
/// `G` has vertices `0..9` with triangles `{0,1,2}, {3,4,5}, {6,7,8}`; `H`
/// has `t0..t2` followed by the cycle `w0..w5`.
pub fn three_triangles_pair() -> (ColouredGraph, ColouredGraph) {
    let mut g = ColouredGraph::with_vertices(9);
    for t in 0..3 {
        let b = 3 * t;
        for (x, y) in [(0, 1), (1, 2), (2, 0)] {
            g.add_edge(b + x, b + y, None).expect("simple");
        }
    }
    let mut h = ColouredGraph::new();
    for i in 0..3 {
        h.add_vertex(&format!("t{i}"), DEFAULT_COLOUR).expect("fresh");
    }
    for i in 0..6 {
        h.add_vertex(&format!("w{i}"), DEFAULT_COLOUR).expect("fresh");
    }
    for (x, y) in [(0, 1), (1, 2), (2, 0)] {
        h.add_edge(x, y, None).expect("simple");
    }
    for i in 0..6 {
        h.add_edge(3 + i, 3 + (i + 1) % 6, None).expect("simple");
    }
    (g, h)
}

/// The two colourings of [`three_triangles_pair`]: every class of size three
/// (index 3), and the variant with one triangle per side split off into
/// singleton classes (index 2).
pub fn three_triangles_colourings() -> (Colouring, Colouring) {
    let c = |i: usize| format!("C{i}");
    let g3: Vec<String> = (0..9).map(|v| c(v % 3)).collect();
    let h3: Vec<String> = (0..3).map(c).chain((0..6).map(|i| c(i % 3))).collect();
    let g2: Vec<String> = (0..9).map(|v| if v < 3 { c(3 + v) } else { c(v % 3) }).collect();
    let h2: Vec<String> = (0..3).map(|i| c(3 + i)).chain((0..6).map(|i| c(i % 3))).collect();
    (Colouring::new(g3, h3), Colouring::new(g2, h2))
}

/// Parses a family spec: `cycle:n`, `complete:n`, `grid:AxB`,
/// `circulant:n:j1,j2,..`, `regular:d:n:seed`.
pub fn parse_family(spec: &str) -> Result<ColouredGraph> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| -> Result<usize> { s.trim().parse().map_err(|_| Error::invalid(format!("bad number {s:?} in {spec:?}"))) };
    match parts.as_slice() {
        ["cycle", n] => cycle(num(n)?),
        ["complete", n] => complete(num(n)?),
        ["grid", ab] => {
            let (a, b) = ab.split_once('x').ok_or_else(|| Error::invalid(format!("grid wants AxB, got {ab:?}")))?;
            grid(num(a)?, num(b)?)
        }
        ["circulant", n, js] => {
            let jumps = js.split(',').map(num).collect::<Result<Vec<_>>>()?;
            circulant(num(n)?, &jumps)
        }
        ["regular", d, n, seed] => random_regular(num(d)?, num(n)?, num(seed)? as u64),
        _ => Err(Error::invalid(format!("unknown graph family {spec:?}"))),
    }
}
