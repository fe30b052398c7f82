//! Reproducible simulation runs. A [`SimRequest`] fully determines a
//! [`SimReport`]; the report embeds the request and the tool version so that
//! [`rerun`] can regenerate it byte for byte.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chroma::Budget;
use crate::consim::{
    anchor_coloring, audit_decomposition, audit_hm, audit_requirements, audit_subgraph_chromatic, build_sim,
    diagonalize, make_plan, ChromaticAuditReport, DecompositionReport, DiagonalOutcome, DiagonalReport, HashAdversary,
    HmReport, Mode, RequirementsReport, SimConfig, SimError, SimGraph, SubgraphBudget,
};
use crate::ladder::{generate_ladders, LadderError};
use crate::typealg::OrdinalSet;

pub const TOOL_NAME: &str = "clubgraph";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("bad anchor spec {0:?}; expected <count>:<lo>-<hi>")]
    BadAnchors(String),
    #[error("unknown audit {0:?}")]
    UnknownAudit(String),
    #[error("report was written by {found}, this is {TOOL_NAME} {TOOL_VERSION}")]
    VersionMismatch { found: String },
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Ladder(#[from] LadderError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("thread pool: {0}")]
    Threads(String),
}

/// `count` evenly spaced anchors from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct AnchorSpec {
    pub count: usize,
    pub lo: u64,
    pub hi: u64,
}

impl AnchorSpec {
    pub fn anchors(&self) -> OrdinalSet {
        if self.count == 1 {
            return OrdinalSet::new(vec![self.lo]).expect("single anchor");
        }
        let span = u128::from(self.hi - self.lo);
        let steps = self.count as u128 - 1;
        let xs = (0..self.count as u128)
            .map(|i| self.lo + (i * span / steps) as u64)
            .collect();
        OrdinalSet::new(xs).expect("checked at parse time")
    }
}

impl FromStr for AnchorSpec {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ReportError::BadAnchors(s.to_string());
        let (count, range) = s.split_once(':').ok_or_else(bad)?;
        let (lo, hi) = range.split_once('-').ok_or_else(bad)?;
        let spec = AnchorSpec {
            count: count.trim().parse().map_err(|_| bad())?,
            lo: lo.trim().parse().map_err(|_| bad())?,
            hi: hi.trim().parse().map_err(|_| bad())?,
        };
        let fits = spec.count >= 1
            && spec.lo <= spec.hi
            && (spec.count == 1 || spec.hi - spec.lo >= spec.count as u64 - 1)
            && (spec.count > 1 || spec.lo == spec.hi);
        // anchors must leave room for ladders of positive length below them
        if !fits || spec.lo == 0 {
            return Err(bad());
        }
        Ok(spec)
    }
}

impl fmt::Display for AnchorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}-{}", self.count, self.lo, self.hi)
    }
}

impl TryFrom<String> for AnchorSpec {
    type Error = ReportError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<AnchorSpec> for String {
    fn from(a: AnchorSpec) -> String {
        a.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditKind {
    Requirements,
    Decomposition,
    Chromatic,
    Hm,
    Diagonalize,
}

impl AuditKind {
    pub const ALL: [AuditKind; 5] = [
        AuditKind::Requirements,
        AuditKind::Decomposition,
        AuditKind::Chromatic,
        AuditKind::Hm,
        AuditKind::Diagonalize,
    ];
}

/// Parses a comma-separated audit list; `all` selects every audit that
/// applies to the mode, `none` selects nothing.
pub fn parse_audits(s: &str, mode: Mode) -> Result<Vec<AuditKind>, ReportError> {
    let mut out = BTreeSet::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part {
            "all" => out.extend(
                AuditKind::ALL
                    .into_iter()
                    .filter(|&a| mode == Mode::B || a != AuditKind::Hm),
            ),
            "none" => {}
            "requirements" => {
                out.insert(AuditKind::Requirements);
            }
            "decomposition" => {
                out.insert(AuditKind::Decomposition);
            }
            "chromatic" => {
                out.insert(AuditKind::Chromatic);
            }
            "hm" => {
                out.insert(AuditKind::Hm);
            }
            "diagonalize" => {
                out.insert(AuditKind::Diagonalize);
            }
            other => return Err(ReportError::UnknownAudit(other.to_string())),
        }
    }
    Ok(out.into_iter().collect())
}

/// Everything that determines a simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimRequest {
    pub mode: Mode,
    pub seed: u64,
    pub anchors: AnchorSpec,
    pub f: Vec<u64>,
    pub color_count: u32,
    pub generator_count: usize,
    pub planted_p: f64,
    /// Ladder length; `None` uses exactly what the interval plan needs.
    pub ladder_length: Option<usize>,
    /// Seed of the hash adversary used by the diagonal audit and, in mode B,
    /// as the planted coloring. `None` means no adversary and no planting.
    pub adversary_seed: Option<u64>,
    pub audits: Vec<AuditKind>,
    pub max_subgraphs: usize,
    pub solver_nodes: u64,
}

impl SimRequest {
    pub fn new(mode: Mode, seed: u64, anchors: AnchorSpec, f: Vec<u64>) -> Self {
        let defaults = SimConfig::new(mode, seed, f.clone());
        let sub = SubgraphBudget::default();
        SimRequest {
            mode,
            seed,
            anchors,
            f,
            color_count: defaults.color_count,
            generator_count: defaults.generator_count,
            planted_p: defaults.planted_p,
            ladder_length: None,
            adversary_seed: None,
            audits: AuditKind::ALL
                .into_iter()
                .filter(|&a| mode == Mode::B || a != AuditKind::Hm)
                .collect(),
            max_subgraphs: sub.max_subgraphs,
            solver_nodes: sub.solver.max_nodes.unwrap_or(u64::MAX),
        }
    }

    pub fn sim_config(&self) -> SimConfig {
        SimConfig {
            mode: self.mode,
            seed: self.seed,
            f: self.f.clone(),
            color_count: self.color_count,
            generator_count: self.generator_count,
            planted_p: self.planted_p,
        }
    }

    pub fn adversary(&self) -> HashAdversary {
        HashAdversary {
            seed: self.adversary_seed.unwrap_or(self.seed),
            colors: self.color_count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub anchors: usize,
    pub ladder_length: usize,
    pub vertices: usize,
    pub edges: usize,
    pub edges_per_label: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Audits {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub requirements: Option<RequirementsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<DecompositionReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chromatic: Option<Vec<ChromaticAuditReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hm: Option<HmReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagonalize: Option<DiagonalReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    /// Every chromatic number in the report is exact.
    pub exact: bool,
    /// Some audit checked a sample instead of everything.
    pub sampled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub tool: Tool,
    pub command: String,
    pub seed: u64,
    pub config: SimRequest,
    pub summary: Summary,
    pub audits: Audits,
    pub pass: bool,
    pub flags: Flags,
}

impl SimReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Builds the ladder system and the simulated graph for a request.
pub fn build_request(req: &SimRequest) -> Result<SimGraph, ReportError> {
    let plan = make_plan(&req.f)?;
    let anchors = req.anchors.anchors();
    let length = req.ladder_length.unwrap_or(plan.ladder_length());
    let ladders = generate_ladders(req.seed, &anchors, length)?;
    let planted = match (req.mode, req.adversary_seed) {
        (Mode::B, Some(_)) => Some(anchor_coloring(&req.adversary(), anchors.as_slice())),
        _ => None,
    };
    Ok(build_sim(&req.sim_config(), &ladders, planted.as_deref())?)
}

/// Runs the requested audits on `threads` worker threads (0 means rayon's
/// default). The output does not depend on the thread count.
pub fn simulate(req: &SimRequest, threads: usize) -> Result<SimReport, ReportError> {
    if req.audits.contains(&AuditKind::Hm) && req.mode != Mode::B {
        return Err(SimError::ModeMismatch(Mode::B).into());
    }
    let sim = build_request(req)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| ReportError::Threads(e.to_string()))?;
    let ks: Vec<usize> = (0..=sim.k_max()).collect();
    let wants = |a| req.audits.contains(&a);
    let budget = SubgraphBudget {
        max_subgraphs: req.max_subgraphs,
        solver: Budget::nodes(req.solver_nodes),
    };

    let mut audits = Audits::default();
    if wants(AuditKind::Requirements) {
        audits.requirements = Some(audit_requirements(&sim));
    }
    if wants(AuditKind::Decomposition) {
        let reports = pool.install(|| {
            ks.par_iter()
                .map(|&k| audit_decomposition(&sim, k))
                .collect::<Result<Vec<_>, _>>()
        })?;
        audits.decomposition = Some(reports);
    }
    if wants(AuditKind::Chromatic) {
        let reports = pool.install(|| {
            ks.par_iter()
                .map(|&k| audit_subgraph_chromatic(&sim, k, budget))
                .collect::<Result<Vec<_>, _>>()
        })?;
        audits.chromatic = Some(reports);
    }
    if wants(AuditKind::Hm) {
        audits.hm = Some(audit_hm(&sim)?);
    }
    if wants(AuditKind::Diagonalize) {
        audits.diagonalize = Some(diagonalize(&sim, &req.adversary())?);
    }

    let mut pass = true;
    let mut flags = Flags {
        exact: true,
        sampled: false,
    };
    if let Some(r) = &audits.requirements {
        pass &= r.pass;
    }
    if let Some(rs) = &audits.decomposition {
        pass &= rs.iter().all(|r| r.pass);
    }
    if let Some(rs) = &audits.chromatic {
        pass &= rs.iter().all(|r| r.pass);
        flags.exact &= rs.iter().all(|r| r.exact);
        flags.sampled |= rs.iter().any(|r| r.sampled);
    }
    if let Some(r) = &audits.hm {
        pass &= r.pass;
    }
    if let Some(r) = &audits.diagonalize {
        pass &= !matches!(r.outcome, DiagonalOutcome::Contradiction { .. });
    }

    Ok(SimReport {
        tool: Tool {
            name: TOOL_NAME.to_string(),
            version: TOOL_VERSION.to_string(),
        },
        command: "simulate".to_string(),
        seed: req.seed,
        config: req.clone(),
        summary: Summary {
            anchors: sim.anchors.len(),
            ladder_length: sim.ladders.length(),
            vertices: sim.vertices.len(),
            edges: sim.edges.len(),
            edges_per_label: sim.edges_per_label(),
        },
        audits,
        pass,
        flags,
    })
}

/// Re-runs the configuration embedded in a report. Returns the regenerated
/// report and whether its JSON matches `text` byte for byte.
pub fn rerun(text: &str, threads: usize) -> Result<(SimReport, bool), ReportError> {
    let old: SimReport = serde_json::from_str(text)?;
    if old.tool.name != TOOL_NAME || old.tool.version != TOOL_VERSION {
        return Err(ReportError::VersionMismatch {
            found: format!("{} {}", old.tool.name, old.tool.version),
        });
    }
    let new = simulate(&old.config, threads)?;
    let same = new.to_json() == text;
    Ok((new, same))
}
