//! Exact search for chords in longest cycles and paths through prescribed
//! elements, together with the constructions used to prove such chords exist.

pub mod connectivity;
pub mod constructions;
pub mod corpus;
pub mod cycles;
pub mod graph;
pub mod graph6;
pub mod lollipop;
pub mod planar;
pub mod verify;

pub use cycles::{Bridge, Budget, CycleOrPath, RequiredSet, SearchError};
pub use graph::{Edge, Graph, GraphError, Image, Vertex, VertexMap};
