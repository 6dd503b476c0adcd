//! Acceptance gate: each numbered criterion prints one PASS or FAIL line, and the
//! process exits nonzero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use common::{Brute, Set};
use sigmacover::classes::{
    is_psigma_t, is_sigma_nilpotent, is_sigma_primary, is_sigma_soluble, sigma_nilpotent_residual,
};
use sigmacover::corpus::{builtin_corpus, CorpusEntry};
use sigmacover::harness::{
    campaign_sigmas, run_campaign, validate_witness, verify_lemma_2_2, verify_lemma_2_4,
    CampaignConfig, Report, StatementId, Verdict,
};
use sigmacover::structure::{all_subgroups, normal_subgroups};
use sigmacover::{Limits, Perm, PermGroup, SigmaPartition};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn small(corpus: &[CorpusEntry]) -> impl Iterator<Item = &CorpusEntry> {
    corpus.iter().filter(|e| e.expected_order <= 200)
}

fn build(e: &CorpusEntry) -> PermGroup {
    e.build(Limits::default()).unwrap()
}

fn engine_matches_brute_force(corpus: &[CorpusEntry]) -> Outcome {
    let mut subgroups = 0;
    let mut groups = 0;
    for e in small(corpus) {
        let g = build(e);
        let b = Brute::new(e.degree, &e.generators);
        ensure(g.order() == b.order(), || {
            format!("{}: order {} vs {}", e.name, g.order(), b.order())
        })?;
        for p in &b.elems {
            ensure(g.contains(p).unwrap(), || {
                format!("{}: {} missing", e.name, p)
            })?;
        }
        for i in 0..e.degree {
            for j in i + 1..e.degree {
                let t = Perm::from_cycles(e.degree, &[vec![i, j]]).unwrap();
                ensure(g.contains(&t).unwrap() == b.index_of(&t).is_some(), || {
                    format!("{}: membership of {}", e.name, t)
                })?;
            }
        }
        let engine: BTreeSet<Set> = all_subgroups(&g)
            .unwrap()
            .iter()
            .map(|h| b.to_indices(&h.elements()))
            .collect();
        let brute: BTreeSet<Set> = b.subgroups().into_iter().collect();
        ensure(engine == brute, || {
            format!(
                "{}: {} subgroups vs {} by brute force",
                e.name,
                engine.len(),
                brute.len()
            )
        })?;
        subgroups += engine.len();
        groups += 1;
    }
    Ok(format!("{} groups, {} subgroups", groups, subgroups))
}

fn classical_specialization(corpus: &[CorpusEntry]) -> Outcome {
    let s = SigmaPartition::Classical;
    for e in corpus {
        let g = build(e);
        let b = Brute::new(e.degree, &e.generators);
        let w = b.whole();
        ensure(
            is_sigma_soluble(&g, &s).unwrap() == b.is_soluble(&w),
            || format!("{}: solubility", e.name),
        )?;
        ensure(
            is_sigma_nilpotent(&g, &s).unwrap() == b.is_nilpotent(&w),
            || format!("{}: nilpotency", e.name),
        )?;
    }
    Ok(format!("{} groups, 100% agreement", corpus.len()))
}

fn residual_table(corpus: &[CorpusEntry]) -> Outcome {
    let table = [
        ("S3", 3),
        ("A4", 4),
        ("S4", 12),
        ("SL(2,3)", 8),
        ("Q8", 1),
        ("D8", 1),
        ("F20", 5),
        ("F21", 7),
    ];
    for (name, want) in table {
        let e = corpus.iter().find(|e| e.name == name).unwrap();
        let b = Brute::new(e.degree, &e.generators);
        let oracle = b.nilpotent_residual(&b.subgroups());
        ensure(oracle.len() as u64 == want, || {
            format!("{}: oracle gives {}", name, oracle.len())
        })?;
        let r = sigma_nilpotent_residual(&build(e), &SigmaPartition::Classical).unwrap();
        ensure(b.to_indices(&r.elements()) == oracle, || {
            format!("{}: engine residual differs", name)
        })?;
    }
    Ok(format!("{} entries", table.len()))
}

fn pst_classification(corpus: &[CorpusEntry]) -> Outcome {
    let s = SigmaPartition::Classical;
    for (name, want) in [
        ("S3", true),
        ("Q8", true),
        ("D8", true),
        ("A4", false),
        ("S4", false),
    ] {
        let e = corpus.iter().find(|e| e.name == name).unwrap();
        ensure(is_psigma_t(&build(e), &s).unwrap() == want, || {
            format!("{}: expected {}", name, want)
        })?;
    }
    let mut checked = 0;
    for e in small(corpus) {
        let b = Brute::new(e.degree, &e.generators);
        if !b.is_soluble(&b.whole()) {
            continue;
        }
        let scan = is_psigma_t(&build(e), &s).unwrap();
        let structural = common::structural_pst(&b, &b.subgroups());
        ensure(scan == structural, || {
            format!(
                "{}: transitivity scan {} vs structural criterion {}",
                e.name, scan, structural
            )
        })?;
        checked += 1;
    }
    Ok(format!(
        "table matches; {} soluble groups cross-checked",
        checked
    ))
}

fn covering_campaign(report: &Report, corpus: &[CorpusEntry]) -> Outcome {
    let mut per_class = BTreeMap::new();
    for id in [
        StatementId::ThmAI,
        StatementId::ThmAII,
        StatementId::ThmAIII,
    ] {
        let mine: Vec<_> = report
            .outcomes
            .iter()
            .filter(|o| o.statement_id == id)
            .collect();
        let bad = mine
            .iter()
            .filter(|o| o.verdict != Verdict::Confirmed)
            .count();
        ensure(bad == 0, || {
            format!("{}: {} outcomes not confirmed", id, bad)
        })?;
        let substantive: Vec<_> = mine.iter().filter(|o| o.is_substantive()).collect();
        ensure(substantive.len() >= 10, || {
            format!(
                "{}: only {} non-vacuous confirmations",
                id,
                substantive.len()
            )
        })?;
        for o in &substantive {
            let e = corpus.iter().find(|e| e.name == o.group).unwrap();
            validate_witness(o, &build(e))
                .map_err(|err| format!("{} {} {}: {}", id, o.group, o.sigma, err))?;
        }
        per_class.insert(id.to_string(), substantive.len());
    }
    ensure(report.summary.invariant_failures.is_empty(), || {
        report.summary.invariant_failures.join("; ")
    })?;
    let max_primes = corpus
        .iter()
        .map(|e| common::primes_of(e.expected_order).len())
        .max()
        .unwrap_or(0);
    ensure(max_primes <= 3, || {
        format!("a corpus group has {} primes", max_primes)
    })?;
    Ok(format!(
        "non-vacuous witnesses (all re-validated): {:?}",
        per_class
    ))
}

fn residual_splitting_both_directions(report: &Report) -> Outcome {
    let mut counts = BTreeMap::new();
    for id in [StatementId::Lem25Fwd, StatementId::Lem25Conv] {
        let mine: Vec<_> = report
            .outcomes
            .iter()
            .filter(|o| o.statement_id == id)
            .collect();
        let failed: Vec<String> = mine
            .iter()
            .filter(|o| o.verdict != Verdict::Confirmed)
            .map(|o| format!("{} {}", o.group, o.sigma))
            .collect();
        ensure(failed.is_empty(), || {
            format!("{} failures: {}", id, failed.join(", "))
        })?;
        counts.insert(
            id.to_string(),
            mine.iter().filter(|o| o.is_substantive()).count(),
        );
    }
    Ok(format!("non-vacuous checks: {:?}", counts))
}

fn quotient_residual_identity(corpus: &[CorpusEntry]) -> Outcome {
    let mut triples = 0;
    for e in small(corpus) {
        let g = build(e);
        let o = verify_lemma_2_4(&e.name, &g, &SigmaPartition::Classical).unwrap();
        ensure(o.verdict == Verdict::Confirmed, || {
            format!("{}: {:?}", e.name, o.witness)
        })?;

        // the same identity by brute force: residual of G/N is M/N for the least normal
        // M ⊇ N with G/M nilpotent
        let b = Brute::new(e.degree, &e.generators);
        let subs = b.subgroups();
        let w = b.whole();
        let r = b.nilpotent_residual(&subs);
        let normals: Vec<&Set> = subs.iter().filter(|n| b.is_normal_in(n, &w)).collect();
        for n in &normals {
            let least = normals
                .iter()
                .filter(|m| n.is_subset(m) && b.quotient_is_nilpotent(&w, m))
                .fold(w.clone(), |acc, m| acc.intersection(m).copied().collect());
            ensure(least == b.product(&r, n), || {
                format!("{}: normal subgroup of order {}", e.name, n.len())
            })?;
        }
        ensure(normals.len() == normal_subgroups(&g).unwrap().len(), || {
            format!("{}: normal count", e.name)
        })?;
        triples += normals.len();
    }
    Ok(format!("{} (group, normal subgroup) pairs", triples))
}

fn separability_equivalence(corpus: &[CorpusEntry]) -> Outcome {
    let mut cases = 0;
    for e in corpus {
        let g = build(e);
        let support: Vec<u64> = common::primes_of(g.order()).into_iter().collect();
        for mask in 0..(1u32 << support.len()) {
            let pi: BTreeSet<u64> = support
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p)
                .collect();
            let o = verify_lemma_2_2(&e.name, &g, &pi).unwrap();
            ensure(o.verdict == Verdict::Confirmed, || {
                format!("{} π={:?}", e.name, pi)
            })?;
            cases += 1;
        }
    }
    Ok(format!("{} (group, π) cases", cases))
}

fn coarsening_and_inclusions(corpus: &[CorpusEntry]) -> Outcome {
    let mut pairs = 0;
    for e in corpus {
        let g = build(e);
        let pi = common::primes_of(g.order());
        let sigmas = campaign_sigmas(g.order()).unwrap();
        let flags: Vec<(bool, bool, bool)> = sigmas
            .iter()
            .map(|s| {
                (
                    is_sigma_primary(&g, s).unwrap(),
                    is_sigma_nilpotent(&g, s).unwrap(),
                    is_sigma_soluble(&g, s).unwrap(),
                )
            })
            .collect();
        for (s, &(pr, nil, sol)) in sigmas.iter().zip(&flags) {
            ensure((!pr || nil) && (!nil || sol), || {
                format!("{} {}: inclusion", e.name, s)
            })?;
        }
        for (i, fine) in sigmas.iter().enumerate() {
            for (j, coarse) in sigmas.iter().enumerate() {
                if !fine.refines_on(coarse, &pi) {
                    continue;
                }
                let (_, n1, s1) = flags[i];
                let (_, n2, s2) = flags[j];
                ensure((!n1 || n2) && (!s1 || s2), || {
                    format!("{}: {} to {}", e.name, fine, coarse)
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{} refinement pairs, zero violations", pairs))
}

fn determinism(corpus: &[CorpusEntry], first: &Report) -> Outcome {
    let jobs = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(2)
        .max(2);
    let again = run_campaign(
        corpus,
        &CampaignConfig {
            jobs: Some(jobs),
            timings: false,
            ..CampaignConfig::default()
        },
    )
    .map_err(|e| e.to_string())?;
    ensure(first.to_json() == again.to_json(), || {
        "reports differ".into()
    })?;
    Ok(format!(
        "--jobs 1 and --jobs {} give identical reports",
        jobs
    ))
}

fn main() -> ExitCode {
    let corpus = builtin_corpus();
    let started = Instant::now();
    let report = run_campaign(
        &corpus,
        &CampaignConfig {
            jobs: Some(1),
            timings: false,
            ..CampaignConfig::default()
        },
    )
    .expect("campaign runs");
    let campaign_time = started.elapsed();

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (
            "engine vs brute-force closure (|G| <= 200)",
            Box::new(|| engine_matches_brute_force(&corpus)),
        ),
        (
            "classical specialization at sigma1",
            Box::new(|| classical_specialization(&corpus)),
        ),
        (
            "residual table at sigma1",
            Box::new(|| residual_table(&corpus)),
        ),
        (
            "PST classification at sigma1",
            Box::new(|| pst_classification(&corpus)),
        ),
        (
            "covering-system campaign, all classes",
            Box::new(|| {
                covering_campaign(&report, &corpus)
                    .map(|s| format!("{} (campaign {:.1?})", s, campaign_time))
            }),
        ),
        (
            "residual structure, both directions",
            Box::new(|| residual_splitting_both_directions(&report)),
        ),
        (
            "residual of quotients at sigma1",
            Box::new(|| quotient_residual_identity(&corpus)),
        ),
        (
            "separability criterion, every pi",
            Box::new(|| separability_equivalence(&corpus)),
        ),
        (
            "coarsening and class inclusions",
            Box::new(|| coarsening_and_inclusions(&corpus)),
        ),
        (
            "campaign determinism across jobs",
            Box::new(|| determinism(&corpus, &report)),
        ),
    ];

    let mut failed = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(detail) => println!(
                "PASS {:>2} {}: {} [{:.1?}]",
                k + 1,
                title,
                detail,
                t.elapsed()
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {}: {} [{:.1?}]", k + 1, title, why, t.elapsed());
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
