//! Combinatorial invariants of tunnel-number-one knot tunnels: binary
//! cabling words and step sequences, depth, Fibonacci bridge-number
//! functions and candidate sets, extremal bridge-number bounds, the full
//! invariant tables of torus-knot middle tunnels, and exhaustive searches
//! certifying the extremal values at desk scale.

pub mod bridge;
pub mod cabling;
pub mod cli;
pub mod search;
pub mod torus;

pub use bridge::{BridgeError, IterationTrace, SeedPair};
pub use cabling::{BinaryWord, CablingProfile, ParseError, StepSequence};
pub use search::{SearchError, SearchReport};
pub use torus::{ContinuedFraction, TorusError, TorusTunnelTable};
