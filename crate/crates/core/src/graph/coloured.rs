use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph with vertex colours and optional edge colours.
///
/// Vertices are addressed by their insertion index; string ids are kept for
/// I/O. Adjacency lists are symmetric and free of loops and parallel edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColouredGraph {
    ids: Vec<String>,
    colours: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BTreeMap<usize, Option<String>>>,
    num_edges: usize,
    /// Free-form annotations carried through serialisation.
    pub meta: Option<serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: String,
    colour: String,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    u: String,
    v: String,
    colour: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<serde_json::Value>,
}

/// The colour given to vertices when none is specified.
pub const DEFAULT_COLOUR: &str = "0";

impl ColouredGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on `n` uncoloured vertices named `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for i in 0..n {
            g.add_vertex(&i.to_string(), DEFAULT_COLOUR).expect("fresh ids");
        }
        g
    }

    pub fn add_vertex(&mut self, id: &str, colour: &str) -> Result<usize> {
        if self.index.contains_key(id) {
            return Err(Error::InvalidGraph(format!("duplicate vertex id {id:?}")));
        }
        let i = self.ids.len();
        self.ids.push(id.to_string());
        self.colours.push(colour.to_string());
        self.index.insert(id.to_string(), i);
        self.adj.push(BTreeMap::new());
        Ok(i)
    }

    pub fn add_edge(&mut self, u: usize, v: usize, colour: Option<&str>) -> Result<()> {
        let n = self.ids.len();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!("edge {u}-{v} references a missing vertex")));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {:?}", self.ids[u])));
        }
        if self.adj[u].contains_key(&v) {
            return Err(Error::InvalidGraph(format!("parallel edge {:?}-{:?}", self.ids[u], self.ids[v])));
        }
        let c = colour.map(str::to_string);
        self.adj[u].insert(v, c.clone());
        self.adj[v].insert(u, c);
        self.num_edges += 1;
        Ok(())
    }

    pub fn add_edge_by_id(&mut self, u: &str, v: &str, colour: Option<&str>) -> Result<()> {
        let a = self.vertex_index(u).ok_or_else(|| Error::InvalidGraph(format!("unknown vertex {u:?}")))?;
        let b = self.vertex_index(v).ok_or_else(|| Error::InvalidGraph(format!("unknown vertex {v:?}")))?;
        self.add_edge(a, b, colour)
    }

    pub fn num_vertices(&self) -> usize {
        self.ids.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn colour(&self, v: usize) -> &str {
        &self.colours[v]
    }

    pub fn set_colour(&mut self, v: usize, colour: &str) {
        self.colours[v] = colour.to_string();
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].keys().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains_key(&v)
    }

    /// `None` for a non-edge, `Some(colour)` for an edge.
    pub fn edge_colour(&self, u: usize, v: usize) -> Option<Option<&str>> {
        self.adj[u].get(&v).map(|c| c.as_deref())
    }

    /// Edges as `(u, v, colour)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, Option<&str>)> {
        let mut out = Vec::with_capacity(self.num_edges);
        for (u, nb) in self.adj.iter().enumerate() {
            for (&v, c) in nb.range(u + 1..) {
                out.push((u, v, c.as_deref()));
            }
        }
        out
    }

    /// Disjoint union; vertices of `other` get `prefix` prepended to their ids.
    pub fn disjoint_union(&self, other: &ColouredGraph, prefix: &str) -> Result<ColouredGraph> {
        let mut g = self.clone();
        let off = g.num_vertices();
        for v in 0..other.num_vertices() {
            g.add_vertex(&format!("{prefix}{}", other.vertex_id(v)), other.colour(v))?;
        }
        for (u, v, c) in other.edges() {
            g.add_edge(u + off, v + off, c)?;
        }
        Ok(g)
    }

    pub fn from_json_str(s: &str) -> Result<ColouredGraph> {
        let raw: GraphJson = serde_json::from_str(s)?;
        let mut g = ColouredGraph::new();
        for v in &raw.vertices {
            g.add_vertex(&v.id, &v.colour)?;
        }
        for e in &raw.edges {
            g.add_edge_by_id(&e.u, &e.v, e.colour.as_deref())?;
        }
        g.meta = raw.meta;
        Ok(g)
    }

    /// JSON with vertices sorted by id and edges by endpoint ids.
    pub fn to_json_value(&self) -> serde_json::Value {
        let mut vertices: Vec<VertexJson> = (0..self.num_vertices()).map(|v| VertexJson { id: self.ids[v].clone(), colour: self.colours[v].clone() }).collect();
        vertices.sort_by(|a, b| a.id.cmp(&b.id));
        let mut edges: Vec<EdgeJson> = self
            .edges()
            .into_iter()
            .map(|(u, v, c)| {
                let (a, b) = (&self.ids[u], &self.ids[v]);
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                EdgeJson { u: a.clone(), v: b.clone(), colour: c.map(str::to_string) }
            })
            .collect();
        edges.sort_by(|a, b| (&a.u, &a.v).cmp(&(&b.u, &b.v)));
        serde_json::to_value(GraphJson { vertices, edges, meta: self.meta.clone() }).expect("plain data")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain data")
    }
}

/// Parses the graph JSON format.
pub fn parse_graph(bytes: &[u8]) -> Result<ColouredGraph> {
    let s = std::str::from_utf8(bytes).map_err(|e| Error::invalid(format!("graph file is not UTF-8: {e}")))?;
    ColouredGraph::from_json_str(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        let g = parse_graph(br#"{"vertices":[{"id":"a","colour":"red"}],"edges":[]}"#).unwrap();
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(g.colour(0), "red");
    }

    #[test]
    fn rejects_bad_edges() {
        let dangling = br#"{"vertices":[{"id":"a","colour":"0"}],"edges":[{"u":"a","v":"b","colour":null}]}"#;
        assert!(matches!(parse_graph(dangling), Err(Error::InvalidGraph(_))));
        let lp = br#"{"vertices":[{"id":"a","colour":"0"}],"edges":[{"u":"a","v":"a","colour":null}]}"#;
        assert!(parse_graph(lp).is_err());
        let dup = br#"{"vertices":[{"id":"a","colour":"0"},{"id":"a","colour":"0"}],"edges":[]}"#;
        assert!(parse_graph(dup).is_err());
        let par = br#"{"vertices":[{"id":"a","colour":"0"},{"id":"b","colour":"0"}],
            "edges":[{"u":"a","v":"b","colour":null},{"u":"b","v":"a","colour":null}]}"#;
        assert!(parse_graph(par).is_err());
        assert!(matches!(parse_graph(b"{"), Err(Error::Json(_))));
    }

    #[test]
    fn serialisation_is_sorted() {
        let mut g = ColouredGraph::new();
        g.add_vertex("b", "x").unwrap();
        g.add_vertex("a", "y").unwrap();
        g.add_edge(0, 1, Some("m")).unwrap();
        let v = g.to_json_value();
        assert_eq!(v["vertices"][0]["id"], "a");
        assert_eq!(v["edges"][0]["u"], "a");
        assert_eq!(v["edges"][0]["colour"], "m");
    }
}
