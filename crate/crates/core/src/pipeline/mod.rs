//! End-to-end dichotomy: constant schedule, sparsification, colouring,
//! junior-caterpillar search, leg attachment and translation back through
//! the chosen polarity. Nothing leaves [`dichotomy`] without passing the
//! certificate verifier.

mod constants;
mod sparsify;

pub use constants::{constants, schedule_with, ConstantSchedule, LevelConstants, MAX_CLASSES};
pub use sparsify::{sparsify, SparsifyFailure, SparsifyResult, EXHAUSTIVE_MAX_N};

use crate::algorithms::{attach_legs, junior_search, AlgoError, Outcome, SearchState};
use crate::graph::{
    balanced_split, complement_components, components, equipartition, is_caterpillar, make_caterpillar, ColouredGraph,
    Graph, VertexSet,
};
use crate::oracle::{verify_certificate, Certificate, Verdict};
use crate::rational::{self, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    Original,
    Complemented,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    ComponentProbe,
    Sparsify,
    CleanComponentProbe,
    JuniorSearch,
    AttachLegs,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        f.write_str(&s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyOptions {
    /// Overrides the top colour count (marks the run experimental).
    pub ell: Option<usize>,
    /// Overrides ε (marks the run experimental).
    pub eps: Option<Rational>,
    /// Node budget for each of the two direct pattern searches.
    pub budget: u64,
    pub seed: u64,
    pub threads: usize,
}

impl Default for DichotomyOptions {
    fn default() -> Self {
        DichotomyOptions { ell: None, eps: None, budget: 200_000, seed: 0, threads: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub schedule: ConstantSchedule,
    pub polarity: Option<Polarity>,
    pub stage_reached: Stage,
    pub verified: bool,
    pub experimental: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub certificate: Certificate,
    pub report: RunReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("constant schedule unavailable: {0}")]
    Schedule(String),
    #[error("no certificate at stage {}: {}", .report.stage_reached, .message)]
    Diagnostic { message: String, report: Box<RunReport> },
    #[error("internal error, certificate rejected by the verifier: {reason}")]
    Unverified { reason: String, report: Box<RunReport> },
}

impl PipelineError {
    pub fn report(&self) -> Option<&RunReport> {
        match self {
            PipelineError::Diagnostic { report, .. } | PipelineError::Unverified { report, .. } => Some(report),
            _ => None,
        }
    }
}

pub fn dichotomy(g0: &Graph, t: &Graph, options: &DichotomyOptions) -> Result<Run, PipelineError> {
    dichotomy_observed(g0, t, options, &mut |_, _| {})
}

/// As [`dichotomy`], handing every junior-search snapshot to `observer`.
pub fn dichotomy_observed(
    g0: &Graph,
    t: &Graph,
    options: &DichotomyOptions,
    observer: &mut dyn FnMut(&ColouredGraph, &SearchState),
) -> Result<Run, PipelineError> {
    let (shape, _) = is_caterpillar(t).ok_or_else(|| PipelineError::Input("pattern is not a caterpillar".into()))?;
    let schedule = schedule_with(shape, options.ell, options.eps.clone())?;
    let template = make_caterpillar(shape).map_err(|e| PipelineError::Input(e.to_string()))?;
    let n0 = g0.n();
    let ell = schedule.ell;
    let floor = rational::ceil_big(&(&schedule.eps / rational::int(2 * ell) * rational::int(n0)));
    let floor = usize::try_from(floor).unwrap_or(usize::MAX).max(1);
    let mut report = RunReport {
        experimental: schedule.experimental,
        schedule: schedule.clone(),
        polarity: None,
        stage_reached: Stage::ComponentProbe,
        verified: false,
        detail: None,
    };

    if let Some((a, b)) = split(components(g0, &g0.vertices()), floor) {
        return finish(g0, Certificate::anti_pair(a, b, n0), report);
    }
    if let Some((a, b)) = split(complement_components(g0), floor) {
        return finish(g0, Certificate::full_pair(a, b, n0), report);
    }

    report.stage_reached = Stage::Sparsify;
    let clean = match sparsify(g0, &schedule.eps_degree, &template.graph, options.budget, ell, options.threads) {
        Ok(SparsifyResult::Witness { embedding, polarity }) => {
            report.polarity = Some(polarity);
            let cert = Certificate::pattern(polarity == Polarity::Complemented, shape, embedding);
            return finish(g0, cert, report);
        }
        Ok(SparsifyResult::CleanSide { set, polarity }) => {
            report.polarity = Some(polarity);
            (set, polarity)
        }
        Err(fail) => {
            let excess = fail.excess.as_ref().map_or("n/a".to_owned(), rational::format);
            let message = format!(
                "largest clean subset has {} vertices ({:?} polarity), {} needed; least degree excess {excess}",
                fail.best.len(),
                fail.polarity,
                fail.required
            );
            return Err(diagnostic(message, report));
        }
    };
    let (set, polarity) = clean;
    let (sub, back) = g0.induced(&set);
    let g = match polarity {
        Polarity::Original => sub,
        Polarity::Complemented => sub.complement(),
    };
    let translate = |cert: Certificate| {
        let lifted = cert.lifted(&back, n0);
        match polarity {
            Polarity::Original => lifted,
            Polarity::Complemented => lifted.complemented(),
        }
    };

    report.stage_reached = Stage::CleanComponentProbe;
    if let Some((a, b)) = split(components(&g, &g.vertices()), floor) {
        return finish(g0, translate(Certificate::anti_pair(a, b, g.n())), report);
    }

    report.stage_reached = Stage::JuniorSearch;
    let g = Arc::new(g);
    let cg = equipartition(g.clone(), ell, options.seed).map_err(|e| diagnostic(e.to_string(), report.clone()))?;
    let levels = schedule.level_params();
    let jc = match junior_search(&cg, shape.h, shape.d, &levels, observer) {
        Ok(Outcome::Pair(cert)) => return finish(g0, translate(cert), report),
        Ok(Outcome::Found(jc)) => jc,
        Err(e) => return Err(algo_diagnostic(e, report)),
    };

    report.stage_reached = Stage::AttachLegs;
    match attach_legs(&g, &jc, shape, &schedule.eps) {
        Ok(Outcome::Pair(cert)) => finish(g0, translate(cert), report),
        Ok(Outcome::Found(legs)) => finish(g0, translate(Certificate::pattern(false, shape, legs.embedding)), report),
        Err(e) => Err(algo_diagnostic(e, report)),
    }
}

fn split(comps: Vec<VertexSet>, floor: usize) -> Option<(VertexSet, VertexSet)> {
    balanced_split(&comps).filter(|(a, b)| a.len().min(b.len()) >= floor)
}

fn diagnostic(message: String, report: RunReport) -> PipelineError {
    PipelineError::Diagnostic { message, report: Box::new(report) }
}

fn algo_diagnostic(e: AlgoError, mut report: RunReport) -> PipelineError {
    report.detail = Some(e.to_string());
    diagnostic(e.to_string(), report)
}

fn finish(g0: &Graph, certificate: Certificate, mut report: RunReport) -> Result<Run, PipelineError> {
    match verify_certificate(g0, &certificate) {
        Ok(Verdict::Valid) => {
            report.verified = true;
            Ok(Run { certificate, report })
        }
        Ok(Verdict::Invalid(reason)) => Err(PipelineError::Unverified { reason, report: Box::new(report) }),
        Err(e) => Err(PipelineError::Unverified { reason: e.to_string(), report: Box::new(report) }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::CertificateKind;

    fn two_cliques(m: usize) -> Graph {
        Graph::complete(m).disjoint_union(&Graph::complete(m))
    }

    #[test]
    fn two_cliques_give_anti_pair() {
        let run = dichotomy(&two_cliques(20), &Graph::path(4), &DichotomyOptions::default()).unwrap();
        assert_eq!(run.certificate.kind, CertificateKind::AntiPair);
        assert_eq!(run.certificate.min_side(), 20);
        assert!(run.report.verified);
    }

    #[test]
    fn complement_gives_full_pair() {
        let run = dichotomy(&two_cliques(20).complement(), &Graph::path(4), &DichotomyOptions::default()).unwrap();
        assert_eq!(run.certificate.kind, CertificateKind::FullPair);
        assert_eq!(run.certificate.min_side(), 20);
    }

    #[test]
    fn planted_path() {
        let g = Graph::cycle(9);
        let run = dichotomy(&g, &Graph::path(4), &DichotomyOptions::default()).unwrap();
        assert_eq!(run.certificate.kind, CertificateKind::InducedPattern);
        assert_eq!(run.report.stage_reached, Stage::Sparsify);
    }

    #[test]
    fn rejects_non_caterpillar() {
        let err = dichotomy(&Graph::cycle(5), &Graph::cycle(4), &DichotomyOptions::default()).unwrap_err();
        assert!(matches!(err, PipelineError::Input(_)));
    }
}
