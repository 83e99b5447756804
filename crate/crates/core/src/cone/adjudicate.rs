use super::conrad::{find_nonextend_witness, Certificate};
use super::extend::{greedy_extend, GreedyOutcome, DEFAULT_NODE_BUDGET};
use super::predicate::{verify_cone_total, ConePredicate, TotalityReport};
use super::DEFAULT_CLOSURE_BUDGET;
use crate::error::{Error, Result};
use crate::groups::{Ball, GroupOracle, DEFAULT_BALL_BUDGET};

#[derive(Clone, Debug)]
pub struct AdjudicationConfig {
    pub radii: Vec<usize>,
    pub witness_max: usize,
    pub ball_budget: usize,
    pub closure_budget: usize,
    pub node_budget: usize,
}

impl Default for AdjudicationConfig {
    fn default() -> Self {
        AdjudicationConfig {
            radii: (4..=8).collect(),
            witness_max: 3,
            ball_budget: DEFAULT_BALL_BUDGET,
            closure_budget: DEFAULT_CLOSURE_BUDGET,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RadiusRecord<E> {
    pub radius: usize,
    pub ball_size: usize,
    pub certificate: Option<Certificate<E>>,
    pub subsets_examined: usize,
    pub search_partial: bool,
    pub greedy: GreedyOutcome<E>,
    /// One report per candidate cone, in candidate order.
    pub candidate_reports: Vec<TotalityReport<E>>,
}

#[derive(Clone, Debug)]
pub enum Verdict<E> {
    /// No total left order contains the seed.
    Certificate(Certificate<E>),
    /// A described total cone containing the seed passed every check.
    Extension {
        label: String,
        predicate: ConePredicate,
    },
    Inconclusive,
    /// Both kinds of evidence were produced; one of the searches is wrong.
    Collision(String),
}

#[derive(Clone, Debug)]
pub struct Adjudication<E> {
    pub records: Vec<RadiusRecord<E>>,
    /// Candidates containing every seed element.
    pub seeded_candidates: Vec<usize>,
    pub verdict: Verdict<E>,
}

/// Decides whether the seed extends to a total positive cone, over a sweep of radii.
///
/// At each radius the certificate search and the extension search both run,
/// and every candidate cone is checked. The verdict is a certificate (exact),
/// an extension (a candidate containing the seed that passes every radius), or
/// inconclusive. Evidence for both sides is reported as a collision.
pub fn adjudicate<G: GroupOracle>(
    group: &G,
    seed: &[G::Elem],
    candidates: &[(String, ConePredicate)],
    config: &AdjudicationConfig,
) -> Result<Adjudication<G::Elem>> {
    let seeded_candidates: Vec<usize> = candidates
        .iter()
        .enumerate()
        .filter(|(_, (_, p))| seed.iter().all(|s| p.contains(group, s)))
        .map(|(i, _)| i)
        .collect();
    let mut records = Vec::new();
    let mut collisions = Vec::new();
    for &radius in &config.radii {
        let ball = Ball::with_budget(group, radius, config.ball_budget)?;
        let search = find_nonextend_witness(group, seed, &ball, config.witness_max, config.closure_budget)?;
        if let Some(cert) = &search.certificate {
            if !cert.verify(group) {
                return Err(Error::Internal(format!("certificate at radius {radius} does not re-evaluate to e")));
            }
        }
        let greedy = greedy_extend(group, seed, &ball, config.node_budget, config.closure_budget)?;
        let candidate_reports: Vec<TotalityReport<G::Elem>> =
            candidates.iter().map(|(_, p)| verify_cone_total(group, &ball, |g| p.contains(group, g))).collect();
        if search.certificate.is_some() && greedy.is_extended() {
            collisions.push(format!("radius {radius}: certificate and ball extension both found"));
        }
        if matches!(greedy, GreedyOutcome::Failed { .. })
            && seeded_candidates.iter().any(|&i| candidate_reports[i].passes())
        {
            collisions.push(format!("radius {radius}: extension search failed inside a verified cone"));
        }
        records.push(RadiusRecord {
            radius,
            ball_size: ball.len(),
            certificate: search.certificate,
            subsets_examined: search.subsets_examined,
            search_partial: search.partial,
            greedy,
            candidate_reports,
        });
    }
    let certificate = records.iter().find_map(|r| r.certificate.clone());
    let extension =
        seeded_candidates.iter().copied().find(|&i| records.iter().all(|r| r.candidate_reports[i].passes()));
    if certificate.is_some() && extension.is_some() {
        collisions.push("certificate found and a seeded candidate cone verified".into());
    }
    let verdict = if !collisions.is_empty() {
        Verdict::Collision(collisions.join("; "))
    } else if let Some(cert) = certificate {
        Verdict::Certificate(cert)
    } else if let Some(i) = extension {
        Verdict::Extension { label: candidates[i].0.clone(), predicate: candidates[i].1.clone() }
    } else {
        Verdict::Inconclusive
    };
    Ok(Adjudication { records, seeded_candidates, verdict })
}
