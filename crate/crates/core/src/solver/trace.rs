use std::fmt;

use serde::Serialize;

use crate::kernel::{Color, Coloring};

/// What a step of the induction did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum StepTag {
    /// At most three vertices, colored directly.
    Base,
    /// The whole graph is a cycle.
    CycleProp,
    /// Pendant edge.
    K2,
    /// End block is a cycle hanging off a cut vertex.
    CycleBlock,
    /// Precolored path inside a cycle block.
    PathLemma,
    GoodEar,
    LongEar(LongEarSub),
    EarChain(ChainSub),
    /// Interior of an ear colored by the ear-extension rule.
    EarExtension,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LongEarSub {
    /// The last interior vertex can avoid both colors it must avoid for free.
    Sub1,
    /// The second-to-last vertex takes a color missing from its successor.
    Sub2,
    /// The last two lists coincide.
    Sub3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ChainSub {
    /// At least four root vertices.
    Long,
    /// Three root vertices, last ear a triangle.
    S3H3,
    /// Three root vertices, last ear a 4-cycle.
    S3H4,
    /// Three root vertices, last ear a 5-cycle.
    S3H5,
}

impl fmt::Display for StepTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepTag::LongEar(s) => {
                let s = match s {
                    LongEarSub::Sub1 => "sub1",
                    LongEarSub::Sub2 => "sub2",
                    LongEarSub::Sub3 => "sub3",
                };
                write!(f, "LongEar({s})")
            }
            StepTag::EarChain(s) => {
                let s = match s {
                    ChainSub::Long => "s>=4",
                    ChainSub::S3H3 => "s3H3",
                    ChainSub::S3H4 => "s3H4",
                    ChainSub::S3H5 => "s3H5",
                };
                write!(f, "EarChain({s})")
            }
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    /// Recursion depth (0 for the input graph).
    pub depth: usize,
    #[serde(serialize_with = "tag_as_string")]
    pub tag: StepTag,
    /// Vertices deleted to obtain the smaller graph at this depth.
    pub removed: Vec<usize>,
    /// Colors fixed by this step, in the order they were chosen.
    pub fixed: Vec<(usize, Color)>,
}

fn tag_as_string<S: serde::Serializer>(tag: &StepTag, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(tag)
}

/// Steps in the order their colors were fixed; every vertex appears in the
/// `fixed` list of exactly one step.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolverTrace {
    pub steps: Vec<TraceStep>,
}

impl SolverTrace {
    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            out.push_str(&serde_json::to_string(step).expect("trace step serializes"));
            out.push('\n');
        }
        out
    }

    /// Rebuilds the coloring on `n` vertices from the fixed colors.
    pub fn replay(&self, n: usize) -> Coloring {
        let mut phi = Coloring::uncolored(n);
        for step in &self.steps {
            for &(v, c) in &step.fixed {
                phi.set(v, c);
            }
        }
        phi
    }

    pub fn tags(&self) -> Vec<StepTag> {
        self.steps.iter().map(|s| s.tag).collect()
    }
}
