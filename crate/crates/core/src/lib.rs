//! Red/blue edge colorings of complete graphs and star-augmented complete
//! graphs: exact monochromatic-structure detectors, extremal construction
//! generators, exhaustive backtracking search with symmetry breaking, and
//! per-claim verifiers. The focus is the fan-versus-`K_4` family: free
//! colorings of `K_{6n}`, their star extensions, and the small matching
//! and fan Ramsey numbers that support them.

pub mod graph;
pub mod matching;

pub use graph::{
    parse, parse_blue_target, serialize, serialize_star, AnyGraph, Color, ColorView,
    ColoredGraph, EdgeColored, GraphError, ParseError, RedTarget, StarColoredGraph, TargetError,
    TargetPair,
};
