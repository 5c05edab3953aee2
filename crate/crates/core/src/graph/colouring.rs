use serde::{Deserialize, Serialize};

use super::coloured::ColouredGraph;
use crate::error::{Error, Result};

/// An auxiliary vertex colouring of a graph pair, independent of the graphs'
/// own colours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    pub g: Vec<String>,
    pub h: Vec<String>,
}

impl Colouring {
    pub fn new(g: Vec<String>, h: Vec<String>) -> Self {
        Colouring { g, h }
    }

    pub fn check_sizes(&self, g: &ColouredGraph, h: &ColouredGraph) -> Result<()> {
        if self.g.len() != g.num_vertices() || self.h.len() != h.num_vertices() {
            return Err(Error::invalid("colouring does not cover both vertex sets"));
        }
        Ok(())
    }

    /// Copies of the graphs recoloured by this colouring.
    pub fn apply(&self, g: &ColouredGraph, h: &ColouredGraph) -> Result<(ColouredGraph, ColouredGraph)> {
        self.check_sizes(g, h)?;
        let mut g2 = g.clone();
        let mut h2 = h.clone();
        for (v, c) in self.g.iter().enumerate() {
            g2.set_colour(v, c);
        }
        for (w, c) in self.h.iter().enumerate() {
            h2.set_colour(w, c);
        }
        Ok((g2, h2))
    }
}
