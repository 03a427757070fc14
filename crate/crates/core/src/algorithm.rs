//! Named algorithms and the common run / distinguish / certificate entry points.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fwl::{self, Localization};
use crate::gdwl::{self, DistanceKind, GdSpec};
use crate::graph::Graph;
use crate::policy::Policy;
use crate::refine::{Certificate, Outcome};
use crate::swl::{self, AggScheme, AtomicAgg, Pooling, SwlSpec};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AlgorithmKind {
    Swl(SwlSpec),
    Fwl(Localization),
    /// Local 2-WL: pair color plus neighbour multisets on both sides.
    Delta2Lwl,
    GdWl(GdSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgorithmSpec {
    pub kind: AlgorithmKind,
    /// Round limit; defaults to the total number of refined items.
    pub max_rounds: Option<usize>,
}

const PRESETS: [(&str, &[AtomicAgg], Pooling); 7] = [
    ("swl-vs", &[AtomicAgg::Lu], Pooling::Vs),
    ("swl-sv", &[AtomicAgg::Lu], Pooling::Sv),
    ("pswl-vs", &[AtomicAgg::Lu, AtomicAgg::Pvv], Pooling::Vs),
    ("pswl-sv", &[AtomicAgg::Lu, AtomicAgg::Pvv], Pooling::Sv),
    ("gswl", &[AtomicAgg::Lu, AtomicAgg::Gv], Pooling::Vs),
    ("sswl", &[AtomicAgg::Lu, AtomicAgg::Lv], Pooling::Vs),
    ("dsswl", &[AtomicAgg::Lu, AtomicAgg::Gv, AtomicAgg::ExtDss], Pooling::Vs),
];

/// Every built-in algorithm name accepted by `FromStr`.
pub const NAMES: [&str; 16] = [
    "swl-vs",
    "swl-sv",
    "pswl-vs",
    "pswl-sv",
    "gswl",
    "sswl",
    "dsswl",
    "fwl2",
    "lfwl2",
    "slfwl2",
    "delta2lwl",
    "gdwl:spd",
    "gdwl:htd",
    "gdwl:rd",
    "gdwl:spd+htd",
    "gdwl:spd+rd",
];

/// Result of comparing two graphs in one joint run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub distinguishes: bool,
    pub rounds: usize,
    pub stable: bool,
    /// Joint number of color classes after each round, starting at round 0.
    pub class_counts: Vec<usize>,
}

/// Stable colors of every graph in a joint run.
#[derive(Debug, Clone)]
pub struct JointRun {
    /// Per graph: pair colors row-major, or vertex colors for GD-WL.
    pub colors: Vec<Vec<u32>>,
    /// Per graph: the pooled invariant compared by `distinguish`.
    pub pooled: Vec<Vec<u32>>,
    pub rounds: usize,
    pub stable: bool,
    pub class_counts: Vec<usize>,
}

impl AlgorithmSpec {
    pub fn new(kind: AlgorithmKind) -> AlgorithmSpec {
        AlgorithmSpec { kind, max_rounds: None }
    }

    pub fn swl(policy: Policy, aggs: &[AtomicAgg], pooling: Pooling) -> AlgorithmSpec {
        AlgorithmSpec::new(AlgorithmKind::Swl(SwlSpec::new(policy, aggs, pooling)))
    }

    pub fn with_max_rounds(mut self, cap: usize) -> AlgorithmSpec {
        self.max_rounds = Some(cap);
        self
    }

    fn default_cap(&self, graphs: &[&Graph]) -> usize {
        match self.kind {
            AlgorithmKind::GdWl(_) => graphs.iter().map(|g| g.n()).sum(),
            _ => graphs.iter().map(|g| g.n() * g.n()).sum(),
        }
    }

    fn execute(&self, graphs: &[&Graph], record: bool) -> Result<(Outcome, Vec<Vec<u32>>, Vec<u8>)> {
        let cap = self.max_rounds.unwrap_or_else(|| self.default_cap(graphs));
        Ok(match &self.kind {
            AlgorithmKind::Swl(s) => {
                let (o, p) = swl::run(s, graphs, cap, record);
                (o, p, Vec::new())
            }
            AlgorithmKind::Fwl(l) => {
                let (o, p) = fwl::run(*l, graphs, cap, record);
                (o, p, Vec::new())
            }
            AlgorithmKind::Delta2Lwl => {
                let (o, p) = fwl::run_delta2(graphs, cap, record);
                (o, p, Vec::new())
            }
            AlgorithmKind::GdWl(s) => gdwl::run(s, graphs, cap, record)?,
        })
    }

    /// Refines all graphs jointly under one color dictionary.
    pub fn run(&self, graphs: &[&Graph]) -> Result<JointRun> {
        let (o, pooled, _) = self.execute(graphs, false)?;
        Ok(JointRun { colors: o.colors, pooled, rounds: o.rounds, stable: o.stable, class_counts: o.class_counts })
    }

    pub fn distinguish(&self, g: &Graph, h: &Graph) -> Result<Verdict> {
        let r = self.run(&[g, h])?;
        Ok(Verdict {
            distinguishes: r.pooled[0] != r.pooled[1],
            rounds: r.rounds,
            stable: r.stable,
            class_counts: r.class_counts,
        })
    }

    /// Invariant computed from `g` alone; equal certificates mean a joint
    /// run would not separate the graphs.
    pub fn certificate(&self, g: &Graph) -> Result<Certificate> {
        let (o, pooled, prelude) = self.execute(&[g], true)?;
        Ok(Certificate::build(&self.to_string(), &prelude, &o.tables, &pooled[0]))
    }

    /// SWL instance with u and v swapped in every aggregation and the
    /// pooling order reversed.
    pub fn transposed(&self) -> Option<AlgorithmSpec> {
        match &self.kind {
            AlgorithmKind::Swl(s) => {
                let pooling = match s.pooling {
                    Pooling::Vs => Pooling::Sv,
                    Pooling::Sv => Pooling::Vs,
                };
                Some(AlgorithmSpec {
                    kind: AlgorithmKind::Swl(SwlSpec { policy: s.policy, scheme: s.scheme.transposed()?, pooling }),
                    max_rounds: self.max_rounds,
                })
            }
            _ => None,
        }
    }
}

impl fmt::Display for AlgorithmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            AlgorithmKind::Swl(s) => {
                if s.policy == Policy::NodeMarking {
                    for (name, aggs, pooling) in PRESETS {
                        if pooling == s.pooling && AggScheme::new(aggs.iter().copied()) == s.scheme {
                            return f.write_str(name);
                        }
                    }
                }
                write!(f, "custom:{}:{}:{}", s.scheme, s.pooling, s.policy)
            }
            AlgorithmKind::Fwl(l) => write!(f, "{l}"),
            AlgorithmKind::Delta2Lwl => f.write_str("delta2lwl"),
            AlgorithmKind::GdWl(s) => write!(f, "{s}"),
        }
    }
}

impl FromStr for AlgorithmSpec {
    type Err = Error;

    /// Accepts a built-in name, `gdwl:<kinds joined by +>`, or
    /// `custom:<aggs>[:<pool>[:<policy>]]` such as `custom:lu,pvv:sv:de`.
    fn from_str(s: &str) -> Result<AlgorithmSpec> {
        let s = s.trim();
        if let Some((_, aggs, pooling)) = PRESETS.iter().find(|p| p.0 == s) {
            return Ok(AlgorithmSpec::swl(Policy::NodeMarking, aggs, *pooling));
        }
        let kind = match s {
            "fwl2" => AlgorithmKind::Fwl(Localization::Full),
            "lfwl2" => AlgorithmKind::Fwl(Localization::Local),
            "slfwl2" => AlgorithmKind::Fwl(Localization::SymLocal),
            "delta2lwl" => AlgorithmKind::Delta2Lwl,
            _ => {
                if let Some(rest) = s.strip_prefix("gdwl:") {
                    let kinds = rest.split('+').map(str::parse).collect::<Result<Vec<DistanceKind>>>()?;
                    AlgorithmKind::GdWl(GdSpec::new(&kinds)?)
                } else if let Some(rest) = s.strip_prefix("custom:") {
                    let mut parts = rest.splitn(3, ':');
                    let scheme: AggScheme = parts.next().unwrap_or("").parse()?;
                    let pooling = parts.next().map(str::parse).transpose()?.unwrap_or(Pooling::Vs);
                    let policy = parts.next().map(str::parse).transpose()?.unwrap_or(Policy::NodeMarking);
                    AlgorithmKind::Swl(SwlSpec { policy, scheme, pooling })
                } else {
                    return Err(Error::UnknownAlgorithm(s.to_string()));
                }
            }
        };
        Ok(AlgorithmSpec::new(kind))
    }
}
