use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use algiso_core::graph::families::parse_family;
use algiso_core::graph::{parse_graph, ColouredGraph};
use algiso_core::json::to_sorted_string;

/// A file path if one exists, otherwise a named family.
pub fn load_graph(spec: &str) -> Result<ColouredGraph> {
    let path = Path::new(spec);
    if path.is_file() {
        let bytes = std::fs::read(path).with_context(|| format!("reading {spec}"))?;
        return parse_graph(&bytes).with_context(|| format!("parsing {spec}"));
    }
    parse_family(spec).with_context(|| format!("{spec:?} is neither a file nor a graph family"))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Sorted-key pretty JSON with a trailing newline.
pub fn json_string<T: Serialize>(t: &T) -> Result<String> {
    Ok(to_sorted_string(t)? + "\n")
}

pub fn write_json<T: Serialize>(path: &Path, t: &T) -> Result<()> {
    write_text(path, &json_string(t)?)
}

pub fn write_text(path: &Path, s: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(path, s).with_context(|| format!("writing {}", path.display()))
}

pub fn graph_json(g: &ColouredGraph) -> Result<String> {
    json_string(&g.to_json_value())
}
