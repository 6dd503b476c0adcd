use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use super::*;
use crate::corpus::{partitions_of_primes, CorpusEntry};
use crate::group::{Limits, PermGroup};
use crate::primes;

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    /// Worker threads; `None` uses the available parallelism.
    pub jobs: Option<usize>,
    /// Restrict to these statements; `None` runs all of them.
    pub only: Option<BTreeSet<StatementId>>,
    /// Restrict to one partition instead of every partition of π(G).
    pub sigma: Option<SigmaPartition>,
    pub limits: Limits,
    /// Record wall-clock fields (report timestamp and per-outcome millis).
    pub timings: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            jobs: None,
            only: None,
            sigma: None,
            limits: Limits::default(),
            timings: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub confirmed: usize,
    pub vacuous: usize,
    pub counterexample: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub groups: usize,
    pub outcomes: usize,
    /// Keyed by statement id; `confirmed` counts non-vacuous confirmations only.
    pub statements: BTreeMap<String, SummaryRow>,
    /// Cross-statement consistency failures and witnesses that did not re-validate.
    pub invariant_failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub generated_unix: Option<u64>,
    pub outcomes: Vec<VerificationOutcome>,
    pub summary: Summary,
}

impl Report {
    pub fn counterexamples(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| o.is_counterexample())
            .count()
    }

    /// No counterexample and no invariant failure.
    pub fn is_clean(&self) -> bool {
        self.counterexamples() == 0 && self.summary.invariant_failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<12} {:>10} {:>8} {:>15} {:>8}",
            "statement", "confirmed", "vacuous", "counterexample", "skipped"
        );
        for (id, r) in &self.summary.statements {
            let _ = writeln!(
                s,
                "{:<12} {:>10} {:>8} {:>15} {:>8}",
                id, r.confirmed, r.vacuous, r.counterexample, r.skipped
            );
        }
        let _ = writeln!(
            s,
            "{} groups, {} outcomes, {} counterexamples",
            self.summary.groups,
            self.summary.outcomes,
            self.counterexamples()
        );
        for f in &self.summary.invariant_failures {
            let _ = writeln!(s, "invariant failure: {}", f);
        }
        s
    }
}

/// Partitions a campaign visits for a group of order `n`: every set partition of π(n)
/// when there are at most four primes, otherwise σ¹ and the one-block partition. The
/// all-singletons partition is replaced by σ¹, which agrees with it on every subgroup.
pub fn campaign_sigmas(n: u64) -> Result<Vec<SigmaPartition>> {
    let pi = primes::prime_divisors(n);
    if pi.len() > 4 {
        return Ok(vec![
            SigmaPartition::Classical,
            SigmaPartition::from_blocks(vec![pi])?,
        ]);
    }
    Ok(partitions_of_primes(&pi)?
        .into_iter()
        .map(|s| {
            if s.is_classical_on(&pi) {
                SigmaPartition::Classical
            } else {
                s
            }
        })
        .collect())
}

fn statements_for(
    sigma: &SigmaPartition,
    only: &Option<BTreeSet<StatementId>>,
) -> Vec<StatementId> {
    StatementId::ALL
        .into_iter()
        .filter(|id| only.as_ref().is_none_or(|o| o.contains(id)))
        .filter(|&id| id != StatementId::Cor12 || sigma.is_classical())
        .collect()
}

pub fn run_campaign(corpus: &[CorpusEntry], config: &CampaignConfig) -> Result<Report> {
    let groups = corpus
        .iter()
        .map(|e| e.build(config.limits))
        .collect::<Result<Vec<PermGroup>>>()?;
    let mut tasks: Vec<(usize, SigmaPartition)> = Vec::new();
    for (k, g) in groups.iter().enumerate() {
        let sigmas = match &config.sigma {
            Some(s) => vec![s.clone()],
            None => campaign_sigmas(g.order())?,
        };
        tasks.extend(sigmas.into_iter().map(|s| (k, s)));
    }

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = config.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {}", e)))?;
    let per_task: Vec<Result<Vec<VerificationOutcome>>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|(k, sigma)| {
                statements_for(sigma, &config.only)
                    .into_iter()
                    .map(|id| verify(&corpus[*k].name, &groups[*k], sigma, id))
                    .collect()
            })
            .collect()
    });
    let mut outcomes = Vec::new();
    for r in per_task {
        outcomes.extend(r?);
    }
    if !config.timings {
        for o in &mut outcomes {
            o.millis = None;
        }
    }

    let mut summary = Summary {
        groups: groups.len(),
        outcomes: outcomes.len(),
        ..Summary::default()
    };
    for o in &outcomes {
        let row = summary
            .statements
            .entry(o.statement_id.to_string())
            .or_default();
        match (o.verdict, o.vacuous) {
            (Verdict::Confirmed, false) => row.confirmed += 1,
            (Verdict::Confirmed, true) => row.vacuous += 1,
            (Verdict::Counterexample, _) => row.counterexample += 1,
            (Verdict::Skipped, _) => row.skipped += 1,
        }
    }
    summary.invariant_failures = invariant_failures(&outcomes, corpus, &groups);

    let generated_unix = config.timings.then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    Ok(Report {
        generated_unix,
        outcomes,
        summary,
    })
}

fn invariant_failures(
    outcomes: &[VerificationOutcome],
    corpus: &[CorpusEntry],
    groups: &[PermGroup],
) -> Vec<String> {
    let mut failures = Vec::new();
    // A group outside the σ-soluble class is outside the σ-nilpotent class, so an
    // uncovered maximal subgroup for the first must come with one for the second.
    let by_key: BTreeMap<(&str, String, StatementId), &VerificationOutcome> = outcomes
        .iter()
        .map(|o| ((o.group.as_str(), o.sigma.to_string(), o.statement_id), o))
        .collect();
    for o in outcomes
        .iter()
        .filter(|o| o.statement_id == StatementId::ThmAI)
    {
        if !o.is_substantive() {
            continue;
        }
        if let Some(nil) = by_key.get(&(o.group.as_str(), o.sigma.to_string(), StatementId::ThmAII))
        {
            if !(nil.is_substantive() || nil.verdict == Verdict::Skipped) {
                failures.push(format!(
                    "{} {}: ThmA.i found a witness but ThmA.ii did not",
                    o.group, o.sigma
                ));
            }
        }
    }
    for o in outcomes.iter().filter(|o| o.is_counterexample()) {
        let Some(k) = corpus.iter().position(|e| e.name == o.group) else {
            continue;
        };
        if let Err(e) = validate_witness(o, &groups[k]) {
            failures.push(format!(
                "{} {} {}: counterexample witness does not validate: {}",
                o.statement_id, o.group, o.sigma, e
            ));
        }
    }
    failures
}
