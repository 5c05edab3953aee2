//! Coloured graphs, colour refinement, the bijective pebble game and
//! brute-force oracles.

pub mod brute;
pub mod coloured;
pub mod colouring;
pub mod families;
pub mod game;
pub mod matching;
pub mod pair;
pub mod refinement;
pub mod types;

pub use brute::{brute_force_isomorphic, brute_force_isomorphic_capped, IsoResult};
pub use coloured::{parse_graph, ColouredGraph};
pub use colouring::Colouring;
pub use game::{solve_bijective_pebble_game, GamePosition, GameTable, GameVerdict, Winner};
pub use pair::{is_local_isomorphism, GraphPair};
pub use refinement::{colour_refinement, RefinementResult};
pub use types::{Side, TypePartition};
