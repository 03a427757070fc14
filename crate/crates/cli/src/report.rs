//! Report types shared by every subcommand and their text, TSV and JSON forms.

use std::fmt::Write;

use serde::Serialize;

use wl_lab::catalog::ClaimResult;
use wl_lab::hierarchy::HierarchyReport;
use wl_lab::pebble::{Mismatch, Winner};
use wl_lab::Graph;

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Tsv,
    Json,
}

#[derive(Debug, Serialize)]
pub struct GraphOut {
    pub n: usize,
    pub m: usize,
    /// 1-based endpoints in edge-list order.
    pub edges: Vec<[usize; 2]>,
}

impl GraphOut {
    pub fn new(g: &Graph) -> GraphOut {
        GraphOut { n: g.n(), m: g.m(), edges: g.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect() }
    }

    fn text(&self, sep: char) -> String {
        let mut s = format!("{}{sep}{}\n", self.n, self.m);
        for [u, v] in &self.edges {
            let _ = writeln!(s, "{u}{sep}{v}");
        }
        s
    }
}

#[derive(Debug, Serialize)]
pub struct Job {
    pub inputs: [String; 2],
    pub algorithm: String,
    pub distinguishes: bool,
    pub rounds: usize,
    pub stable: bool,
    /// Joint number of color classes after each round, from round 0.
    pub class_counts: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct Sweep {
    pub seed: u64,
    #[serde(flatten)]
    pub report: HierarchyReport,
}

#[derive(Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Body {
    Compare {
        jobs: Vec<Job>,
    },
    Matrix {
        catalog: String,
        rows: Vec<ClaimResult>,
        passed: usize,
        failed: usize,
        hierarchy: Option<Sweep>,
    },
    FurerBuild {
        base_n: usize,
        twisted: Vec<[usize; 2]>,
        augmented: bool,
        graph: GraphOut,
    },
    Search {
        weak: String,
        strong: String,
        max_n: usize,
        budget: usize,
        seed: u64,
        base: Option<GraphOut>,
    },
    Distances {
        kind: String,
        n: usize,
        /// Row-major reduced fractions, `inf` between components.
        matrix: Vec<Vec<String>>,
    },
    PebbleSolve {
        algorithm: String,
        inputs: [String; 2],
        winner: Winner,
        iterations: usize,
        duplicator_positions: usize,
        distinguishes: bool,
    },
    PebbleVerify {
        max_n: usize,
        extra: usize,
        seed: u64,
        pairs: usize,
        algorithms: Vec<String>,
        mismatches: Vec<Mismatch>,
    },
}

#[derive(Debug, Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    #[serde(flatten)]
    body: &'a Body,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<f64>,
}

#[derive(Debug)]
pub enum Report {
    Body { body: Body, wall_ms: Option<f64> },
    Schema,
}

impl From<Body> for Report {
    fn from(body: Body) -> Report {
        Report::Body { body, wall_ms: None }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn winner_name(w: Winner) -> &'static str {
    match w {
        Winner::Spoiler => "spoiler",
        Winner::Duplicator => "duplicator",
    }
}

fn joined<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

impl Report {
    pub fn set_wall_ms(&mut self, ms: f64) {
        if let Report::Body { wall_ms, .. } = self {
            *wall_ms = Some(ms);
        }
    }

    pub fn render(&self, format: Format) -> String {
        let (body, wall_ms) = match self {
            Report::Schema => return SCHEMA.to_string(),
            Report::Body { body, wall_ms } => (body, *wall_ms),
        };
        let mut s = match format {
            Format::Json => {
                let env = Envelope { schema_version: SCHEMA_VERSION, body, wall_ms };
                let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
                s.push('\n');
                return s;
            }
            Format::Text => text(body),
            Format::Tsv => tsv(body),
        };
        if let Some(ms) = wall_ms {
            let _ = writeln!(s, "# wall time {ms:.1} ms");
        }
        s
    }
}

fn text(body: &Body) -> String {
    let mut s = String::new();
    match body {
        Body::Compare { jobs } => {
            for j in jobs {
                let verdict = if j.distinguishes { "distinguished" } else { "not distinguished" };
                let stable = if j.stable { "stable" } else { "round limit" };
                let _ = writeln!(s, "{}: {} after {} rounds ({stable})", j.algorithm, verdict, j.rounds);
                let _ = writeln!(s, "  color classes per round: {}", joined(&j.class_counts, " "));
                if let Some(ms) = j.wall_ms {
                    let _ = writeln!(s, "  wall time {ms:.1} ms");
                }
            }
        }
        Body::Matrix { catalog, rows, passed, failed, hierarchy } => {
            let w_entry = rows.iter().map(|r| r.entry.len()).max().unwrap_or(0).max(5);
            let w_alg = rows.iter().map(|r| r.alg.len()).max().unwrap_or(0).max(9);
            let _ = writeln!(s, "{:w_entry$}  {:w_alg$}  expected  observed  result", "entry", "algorithm");
            for r in rows {
                let result = if r.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    s,
                    "{:w_entry$}  {:w_alg$}  {:8}  {:8}  {result}",
                    r.entry,
                    r.alg,
                    yes_no(r.expected),
                    yes_no(r.observed)
                );
            }
            let _ = writeln!(s, "{catalog}: {passed} claims pass, {failed} fail");
            if let Some(h) = hierarchy {
                sweep_lines(&mut s, h, "");
            }
        }
        Body::FurerBuild { graph, .. } => s = graph.text(' '),
        Body::Search { base, .. } => match base {
            Some(g) => s = g.text(' '),
            None => s.push_str("none\n"),
        },
        Body::Distances { matrix, .. } => {
            for row in matrix {
                let _ = writeln!(s, "{}", row.join("\t"));
            }
        }
        Body::PebbleSolve { algorithm, winner, iterations, distinguishes, .. } => {
            let winner = winner_name(*winner);
            let _ = writeln!(s, "{algorithm}: {winner} wins (fixpoint after {iterations} iterations)");
            let _ = writeln!(s, "refinement distinguishes: {}", yes_no(*distinguishes));
        }
        Body::PebbleVerify { pairs, algorithms, mismatches, .. } => {
            let _ = writeln!(s, "{pairs} pairs x {} games: {} mismatches", algorithms.len(), mismatches.len());
            for m in mismatches {
                let _ = writeln!(
                    s,
                    "  pair {} {}: {} wins the game, refinement distinguishes {}",
                    m.pair,
                    m.alg,
                    winner_name(m.game),
                    yes_no(m.distinguishes)
                );
            }
        }
    }
    s
}

fn sweep_lines(s: &mut String, h: &Sweep, prefix: &str) {
    let r = &h.report;
    let _ = writeln!(
        s,
        "{prefix}hierarchy: {} random pairs (seed {}), {} relations, {} violations",
        r.pairs,
        h.seed,
        r.relations_checked,
        r.violations.len()
    );
    for v in &r.violations {
        let _ = writeln!(s, "{prefix}  violation pair {}: {} {} {}", v.pair, v.left, arrow(v.kind), v.right);
    }
    for o in &r.open {
        let _ = writeln!(s, "{prefix}  open: {} separates {} pairs that {} does not", o.left, o.left_only, o.right);
    }
}

fn arrow(kind: wl_lab::hierarchy::RelationKind) -> &'static str {
    match kind {
        wl_lab::hierarchy::RelationKind::Arrow => "->",
        wl_lab::hierarchy::RelationKind::Equivalence => "==",
    }
}

fn tsv(body: &Body) -> String {
    let mut s = String::new();
    match body {
        Body::Compare { jobs } => {
            let timed = jobs.iter().any(|j| j.wall_ms.is_some());
            s.push_str("algorithm\tinput_a\tinput_b\tdistinguishes\trounds\tstable\tclass_counts");
            s.push_str(if timed { "\twall_ms\n" } else { "\n" });
            for j in jobs {
                let _ = write!(
                    s,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    j.algorithm,
                    j.inputs[0],
                    j.inputs[1],
                    j.distinguishes,
                    j.rounds,
                    j.stable,
                    joined(&j.class_counts, ",")
                );
                match j.wall_ms {
                    Some(ms) => {
                        let _ = writeln!(s, "\t{ms:.3}");
                    }
                    None => s.push('\n'),
                }
            }
        }
        Body::Matrix { rows, hierarchy, .. } => {
            s.push_str("entry\talgorithm\texpected\tobserved\trounds\tresult\n");
            for r in rows {
                let result = if r.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}\t{result}", r.entry, r.alg, r.expected, r.observed, r.rounds);
            }
            if let Some(h) = hierarchy {
                sweep_lines(&mut s, h, "# ");
            }
        }
        Body::FurerBuild { graph, .. } => s = graph.text('\t'),
        Body::Search { base, .. } => match base {
            Some(g) => s = g.text('\t'),
            None => s.push_str("none\n"),
        },
        Body::Distances { .. } => s = text(body),
        Body::PebbleSolve { algorithm, inputs, winner, iterations, duplicator_positions, distinguishes } => {
            s.push_str("algorithm\tinput_g\tinput_h\twinner\titerations\tduplicator_positions\tdistinguishes\n");
            let _ = writeln!(
                s,
                "{algorithm}\t{}\t{}\t{}\t{iterations}\t{duplicator_positions}\t{distinguishes}",
                inputs[0],
                inputs[1],
                winner_name(*winner)
            );
        }
        Body::PebbleVerify { mismatches, .. } => {
            s.push_str("pair\talgorithm\tgame_winner\tdistinguishes\n");
            for m in mismatches {
                let _ = writeln!(s, "{}\t{}\t{}\t{}", m.pair, m.alg, winner_name(m.game), m.distinguishes);
            }
        }
    }
    s
}
