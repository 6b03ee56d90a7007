use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cycles::RequiredSet;
use crate::graph::{Edge, Vertex};

use super::spec::{Directive, SetSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CheckId {
    #[serde(rename = "T1.7")]
    T1_7,
    #[serde(rename = "C1.8")]
    C1_8,
    #[serde(rename = "C1.9")]
    C1_9,
    #[serde(rename = "T4.1")]
    T4_1,
    #[serde(rename = "T5.1")]
    T5_1,
    #[serde(rename = "C1.12")]
    C1_12,
    #[serde(rename = "T6.1")]
    T6_1,
    #[serde(rename = "TUTTE")]
    Tutte,
    #[serde(rename = "C1.1")]
    C1_1,
    #[serde(rename = "C1.6")]
    C1_6,
    #[serde(rename = "C6.2")]
    C6_2,
}

impl CheckId {
    pub const ALL: [CheckId; 11] = [
        CheckId::T1_7,
        CheckId::C1_8,
        CheckId::C1_9,
        CheckId::T4_1,
        CheckId::T5_1,
        CheckId::C1_12,
        CheckId::T6_1,
        CheckId::Tutte,
        CheckId::C1_1,
        CheckId::C1_6,
        CheckId::C6_2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::T1_7 => "T1.7",
            CheckId::C1_8 => "C1.8",
            CheckId::C1_9 => "C1.9",
            CheckId::T4_1 => "T4.1",
            CheckId::T5_1 => "T5.1",
            CheckId::C1_12 => "C1.12",
            CheckId::T6_1 => "T6.1",
            CheckId::Tutte => "TUTTE",
            CheckId::C1_1 => "C1.1",
            CheckId::C1_6 => "C1.6",
            CheckId::C6_2 => "C6.2",
        }
    }

    /// Conjectures are hunted rather than checked.
    pub fn is_hunt(self) -> bool {
        matches!(self, CheckId::C1_1 | CheckId::C1_6 | CheckId::C6_2)
    }

    /// The set spec used when none is given.
    pub fn default_set(self) -> SetSpec {
        SetSpec::directive(match self {
            CheckId::T1_7 | CheckId::T5_1 => Directive::AllVertexTriples,
            CheckId::C1_8 | CheckId::C1_12 => Directive::AllEdgeVertexPairs,
            CheckId::C1_9 => Directive::AllVertexPairs,
            CheckId::T4_1 | CheckId::C1_6 => Directive::AllEdges,
            CheckId::T6_1 | CheckId::C6_2 => Directive::AllForests { cap: None },
            CheckId::Tutte | CheckId::C1_1 => Directive::None,
        })
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = String;

    fn from_str(s: &str) -> Result<CheckId, String> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown check id '{s}'"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Verified,
    Counterexample,
    InconclusiveBudget,
    HypothesisNotMet,
    FalsificationEvent,
    /// The corpus line or the set does not fit the graph.
    InputError,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Required {
    pub edges: Vec<Edge>,
    pub vertices: Vec<Vertex>,
}

impl From<&RequiredSet> for Required {
    fn from(r: &RequiredSet) -> Required {
        Required {
            edges: r.edges().to_vec(),
            vertices: r.isolated().to_vec(),
        }
    }
}

/// How much searching backs a negative answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attestation {
    pub nodes: u64,
    pub budget: u64,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A longest cycle through the set, with its chords.
    Chorded {
        length: usize,
        cycle: Vec<Vertex>,
        chords: Vec<Edge>,
    },
    /// A longest cycle through the set with no chord. `length` is the
    /// maximum, certified by the exhaustive search in `attestation`.
    Chordless {
        graph6: String,
        required: Required,
        length: usize,
        cycle: Vec<Vertex>,
        chords: Vec<Edge>,
        attestation: Attestation,
    },
    /// A longest `(x, y)`-path through `z` and an internal vertex with all
    /// its neighbours on it.
    FullVertex {
        x: Vertex,
        y: Vertex,
        z: Vertex,
        length: usize,
        path: Vec<Vertex>,
        vertex: Vertex,
    },
    /// A longest `(x, y)`-path through `z` without such a vertex.
    NoFullVertex {
        graph6: String,
        x: Vertex,
        y: Vertex,
        z: Vertex,
        length: usize,
        path: Vec<Vertex>,
        attestation: Attestation,
    },
    Bound {
        bound: usize,
        length: usize,
        cycle: Vec<Vertex>,
    },
    BelowBound {
        graph6: String,
        required: Required,
        bound: usize,
        longest: Option<usize>,
        attestation: Attestation,
    },
    Tutte {
        pairs: usize,
        cycles: usize,
    },
    TutteMissing {
        graph6: String,
        e: Edge,
        e_prime: Edge,
        attestation: Attestation,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Stats {
    pub nodes: u64,
    /// Excluded from the determinism hash.
    pub wall_us: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    /// `line:graph6`.
    pub graph_id: String,
    pub check_id: CheckId,
    /// Index of the instantiation within the graph.
    pub instance: usize,
    pub required: Option<Required>,
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    pub note: Option<String>,
    pub stats: Stats,
}
