//! The cubic-graph construction, step by step, with each step checkable on
//! its own.

mod coloring;
mod matching;
mod parity;
mod pipeline;

pub use coloring::{
    color_classes, k_coloring, select_red_class, triangle_3coloring, ColoringError, TriangleSystem,
    TriangleSystemError,
};
pub use matching::{matching_extension_search, MatchingError, MatchingFrame};
pub use parity::{parity_subgraph, ParityError};
pub use pipeline::{
    contract_pairing, default_picks, pleasant_cycle_audit, reduce_bridges, replay, replay_with,
    triangle_augment,
    AuditRecord, BridgeClassification, ConstructionError, Dominator, RawDecomposition, ReducedComponent,
    ReplayOptions, ReplayOutcome, ReplayReport, Stage,
};
