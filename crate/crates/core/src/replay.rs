//! Replays an update stream through one algorithm, with optional
//! per-event verification, and summarizes the run.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::flow::{flow_oracle_check, FlowDelta, FullyDynamicFlow, IncrementalFlow};
use crate::graph::{DynGraph, VertexId};
use crate::matching::{FullyDynamicMatching, IncrementalMatching, MatchDelta};
use crate::meter::{AdjustmentLog, CostMeter};
use crate::mis::{ImplicitMis, IncrementalMis, RemovalPolicy, SimpleMis, TwoLevelMis};
use crate::oracles::is_mis;
use crate::stream::{UpdateEvent, UpdateStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Algorithm {
    MisSimple,
    MisInc,
    Mis2Level,
    MisImplicit,
    FlowFd,
    FlowInc,
    MatchFd,
    MatchInc,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::MisSimple,
        Algorithm::MisInc,
        Algorithm::Mis2Level,
        Algorithm::MisImplicit,
        Algorithm::FlowFd,
        Algorithm::FlowInc,
        Algorithm::MatchFd,
        Algorithm::MatchInc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::MisSimple => "mis-simple",
            Algorithm::MisInc => "mis-inc",
            Algorithm::Mis2Level => "mis-2level",
            Algorithm::MisImplicit => "mis-implicit",
            Algorithm::FlowFd => "flow-fd",
            Algorithm::FlowInc => "flow-inc",
            Algorithm::MatchFd => "match-fd",
            Algorithm::MatchInc => "match-inc",
        }
    }

    pub fn is_incremental(self) -> bool {
        matches!(
            self,
            Algorithm::MisInc | Algorithm::FlowInc | Algorithm::MatchInc
        )
    }

    pub fn is_flow(self) -> bool {
        matches!(self, Algorithm::FlowFd | Algorithm::FlowInc)
    }

    pub fn is_mis(self) -> bool {
        matches!(
            self,
            Algorithm::MisSimple
                | Algorithm::MisInc
                | Algorithm::Mis2Level
                | Algorithm::MisImplicit
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = ReplayError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| ReplayError::UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("stream incompatible with {algorithm}: {reason}")]
    IncompatibleStream {
        algorithm: Algorithm,
        reason: String,
    },
    #[error("event {index} rejected: {message}")]
    Event { index: usize, message: String },
    #[error(transparent)]
    Generator(#[from] crate::generators::GenError),
}

/// Per-event result, recorded for determinism comparisons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Mis(AdjustmentLog),
    Query { vertex: VertexId, answer: bool },
    Flow(FlowDelta),
    Matching(MatchDelta),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct StreamSummary {
    pub events: usize,
    pub initial_n: usize,
    pub final_n: usize,
    pub final_m: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Totals {
    pub edges_touched: u64,
    pub adjustments: u64,
    pub updates: u64,
    pub queries: u64,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Maxima {
    pub edges_touched_per_event: u64,
    pub adjustments_per_event: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub ok: bool,
    pub failed_at: Option<usize>,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueryAnswer {
    pub vertex: VertexId,
    pub answer: bool,
}

/// Final size of the maintained object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResultValue {
    pub kind: &'static str,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingSummary {
    pub family: String,
    pub sizes: Vec<usize>,
    pub edges_touched: Vec<u64>,
    pub slope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub algorithm: String,
    pub stream: StreamSummary,
    pub totals: Totals,
    pub maxima: Maxima,
    pub verification: Option<Verification>,
    pub result: ResultValue,
    pub query_answers: Vec<QueryAnswer>,
    pub scaling: Option<ScalingSummary>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Audit the structure and consult the oracle after every event.
    pub verify: bool,
    /// Keep every per-event outcome.
    pub record: bool,
}

/// Report plus (when requested) every per-event outcome.
#[derive(Debug, Clone)]
pub struct Run {
    pub report: RunReport,
    pub outcomes: Vec<Outcome>,
    pub meter: CostMeter,
}

enum Engine {
    Simple(SimpleMis),
    Inc(IncrementalMis),
    TwoLevel(TwoLevelMis),
    Implicit(ImplicitMis),
    FlowFd(FullyDynamicFlow),
    FlowInc(IncrementalFlow),
    MatchFd(FullyDynamicMatching),
    MatchInc(IncrementalMatching),
}

impl Engine {
    fn new(alg: Algorithm, stream: &UpdateStream) -> Result<Self, ReplayError> {
        let n = stream.initial_vertices();
        let g = DynGraph::new(n);
        let flow_err = |e: crate::flow::FlowError| ReplayError::IncompatibleStream {
            algorithm: alg,
            reason: e.to_string(),
        };
        let terminals = stream.header.flow;
        Ok(match alg {
            Algorithm::MisSimple => Engine::Simple(SimpleMis::new(g, RemovalPolicy::FirstEndpoint)),
            Algorithm::MisInc => Engine::Inc(IncrementalMis::new(g)),
            Algorithm::Mis2Level => Engine::TwoLevel(TwoLevelMis::new(g)),
            Algorithm::MisImplicit => Engine::Implicit(ImplicitMis::new(g)),
            Algorithm::FlowFd | Algorithm::FlowInc => {
                let (s, t) = terminals.expect("checked by compatibility");
                if alg == Algorithm::FlowFd {
                    Engine::FlowFd(FullyDynamicFlow::new(n, s, t).map_err(flow_err)?)
                } else {
                    Engine::FlowInc(IncrementalFlow::new(n, s, t).map_err(flow_err)?)
                }
            }
            Algorithm::MatchFd => Engine::MatchFd(FullyDynamicMatching::new(g)),
            Algorithm::MatchInc => Engine::MatchInc(IncrementalMatching::new(g)),
        })
    }

    fn meter(&self) -> &CostMeter {
        match self {
            Engine::Simple(s) => s.meter(),
            Engine::Inc(s) => s.meter(),
            Engine::TwoLevel(s) => s.meter(),
            Engine::Implicit(s) => s.meter(),
            Engine::FlowFd(s) => s.meter(),
            Engine::FlowInc(s) => s.meter(),
            Engine::MatchFd(s) => s.meter(),
            Engine::MatchInc(s) => s.meter(),
        }
    }

    fn apply(&mut self, ev: &UpdateEvent) -> Result<Outcome, String> {
        let s = |e: &dyn fmt::Display| e.to_string();
        if let UpdateEvent::QueryInMis(v) = *ev {
            let answer = match self {
                Engine::Simple(m) => m.graph().is_live(v).then(|| m.in_mis(v)),
                Engine::Inc(m) => m.graph().is_live(v).then(|| m.in_mis(v)),
                Engine::TwoLevel(m) => m.graph().is_live(v).then(|| m.in_mis(v)),
                Engine::Implicit(m) => Some(m.query(v).map_err(|e| s(&e))?),
                _ => return Err("queries need an MIS algorithm".into()),
            };
            let answer = answer.ok_or_else(|| format!("vertex {v} is not live"))?;
            return Ok(Outcome::Query { vertex: v, answer });
        }
        Ok(match self {
            Engine::Simple(m) => Outcome::Mis(m.apply(ev).map_err(|e| s(&e))?),
            Engine::Inc(m) => Outcome::Mis(m.apply(ev).map_err(|e| s(&e))?),
            Engine::TwoLevel(m) => Outcome::Mis(m.apply(ev).map_err(|e| s(&e))?),
            Engine::Implicit(m) => Outcome::Mis(m.apply(ev).map_err(|e| s(&e))?),
            Engine::FlowFd(f) => Outcome::Flow(f.apply(ev).map_err(|e| s(&e))?),
            Engine::FlowInc(f) => Outcome::Flow(f.apply(ev).map_err(|e| s(&e))?),
            Engine::MatchFd(mt) => Outcome::Matching(mt.apply(ev).map_err(|e| s(&e))?),
            Engine::MatchInc(mt) => Outcome::Matching(mt.apply(ev).map_err(|e| s(&e))?),
        })
    }

    /// Module auditor followed by the independent oracle.
    fn check(&self) -> Result<(), String> {
        let oracle = |r: crate::oracles::OracleReport| if r.ok { Ok(()) } else { Err(r.detail) };
        match self {
            Engine::Simple(m) => {
                m.audit()?;
                oracle(is_mis(m.graph(), &m.members()))
            }
            Engine::Inc(m) => {
                m.audit()?;
                oracle(is_mis(m.graph(), &m.members()))
            }
            Engine::TwoLevel(m) => {
                m.audit()?;
                oracle(is_mis(m.graph(), &m.members()))
            }
            Engine::Implicit(m) => {
                m.audit()?;
                oracle(is_mis(m.graph(), &m.sweep()))
            }
            Engine::FlowFd(f) => {
                f.network().audit()?;
                oracle(flow_oracle_check(f.network()))
            }
            Engine::FlowInc(f) => {
                f.audit()?;
                oracle(flow_oracle_check(f.network()))
            }
            Engine::MatchFd(mt) => mt.audit(),
            Engine::MatchInc(mt) => mt.audit(),
        }
    }

    fn shape(&self) -> (usize, usize) {
        let g = match self {
            Engine::Simple(m) => m.graph(),
            Engine::Inc(m) => m.graph(),
            Engine::TwoLevel(m) => m.graph(),
            Engine::Implicit(m) => m.graph(),
            Engine::FlowFd(f) => return (f.network().n(), f.network().m()),
            Engine::FlowInc(f) => return (f.network().n(), f.network().m()),
            Engine::MatchFd(mt) => mt.graph(),
            Engine::MatchInc(mt) => mt.graph(),
        };
        (g.n(), g.m())
    }

    fn result(&self) -> ResultValue {
        let (kind, value) = match self {
            Engine::Simple(m) => ("mis_size", m.members().len()),
            Engine::Inc(m) => ("mis_size", m.members().len()),
            Engine::TwoLevel(m) => ("mis_size", m.members().len()),
            Engine::Implicit(m) => ("independent_set_size", m.set_members().len()),
            Engine::FlowFd(f) => ("flow_value", f.value()),
            Engine::FlowInc(f) => ("flow_value", f.value()),
            Engine::MatchFd(mt) => ("matching_size", mt.size()),
            Engine::MatchInc(mt) => ("matching_size", mt.size()),
        };
        ResultValue { kind, value }
    }
}

/// Rejects streams the algorithm cannot consume, before any work.
pub fn check_compatible(alg: Algorithm, stream: &UpdateStream) -> Result<(), ReplayError> {
    let bad = |reason: &str| {
        Err(ReplayError::IncompatibleStream {
            algorithm: alg,
            reason: reason.to_string(),
        })
    };
    if alg.is_flow() != stream.header.flow.is_some() {
        return if alg.is_flow() {
            bad("flow algorithms need a `flow s t` header")
        } else {
            bad("directed flow streams need a flow algorithm")
        };
    }
    if alg.is_incremental() && stream.has_deletions() {
        return bad("the stream contains deletions");
    }
    for ev in &stream.events {
        match ev {
            UpdateEvent::QueryInMis(_) if !alg.is_mis() => {
                return bad("queries need an MIS algorithm")
            }
            UpdateEvent::InsertVertex(_) | UpdateEvent::DeleteVertex(_) if alg.is_flow() => {
                return bad("flow streams carry edge events only")
            }
            UpdateEvent::InsertVertex(ns)
                if !ns.is_empty() && matches!(alg, Algorithm::MisInc | Algorithm::MisImplicit) =>
            {
                return bad("vertex insertions with neighbors are not supported")
            }
            _ => {}
        }
    }
    Ok(())
}

/// Replays `stream` through `alg`. Event errors abort the run; a failed
/// verification stops the replay and is reported in the returned report.
pub fn run(alg: Algorithm, stream: &UpdateStream, opts: RunOptions) -> Result<Run, ReplayError> {
    check_compatible(alg, stream)?;
    let start = Instant::now();
    let mut engine = Engine::new(alg, stream)?;
    let initial_n = engine.shape().0;
    let mut outcomes = Vec::new();
    let mut answers = Vec::new();
    let mut maxima = Maxima::default();
    let mut verification = opts.verify.then(|| Verification {
        ok: true,
        ..Verification::default()
    });
    for (index, ev) in stream.events.iter().enumerate() {
        let before = engine.meter().clone();
        let outcome = engine
            .apply(ev)
            .map_err(|message| ReplayError::Event { index, message })?;
        let after = engine.meter();
        maxima.edges_touched_per_event = maxima
            .edges_touched_per_event
            .max(after.edges_touched - before.edges_touched);
        maxima.adjustments_per_event = maxima
            .adjustments_per_event
            .max(after.adjustments - before.adjustments);
        if let Outcome::Query { vertex, answer } = outcome {
            answers.push(QueryAnswer { vertex, answer });
        }
        if opts.record {
            outcomes.push(outcome);
        }
        if let Some(v) = verification.as_mut() {
            if let Err(detail) = engine.check() {
                *v = Verification {
                    ok: false,
                    failed_at: Some(index),
                    detail: Some(detail),
                };
                break;
            }
        }
    }
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let meter = engine.meter().clone();
    let (final_n, final_m) = engine.shape();
    let report = RunReport {
        algorithm: alg.name().to_string(),
        stream: StreamSummary {
            events: stream.events.len(),
            initial_n,
            final_n,
            final_m,
        },
        totals: Totals {
            edges_touched: meter.edges_touched,
            adjustments: meter.adjustments,
            updates: meter.updates,
            queries: meter.queries,
            wall_ms,
        },
        maxima,
        verification,
        result: engine.result(),
        query_answers: answers,
        scaling: None,
    };
    Ok(Run {
        report,
        outcomes,
        meter,
    })
}
