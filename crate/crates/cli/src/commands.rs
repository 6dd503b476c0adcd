use std::collections::BTreeSet;
use std::fs;

use serde_json::{json, Value};
use sigmacover::classes::{
    complete_hall_sigma_set, is_psigma_t, is_sigma_nilpotent, is_sigma_permutable,
    is_sigma_primary, is_sigma_soluble, sigma_nilpotent_residual,
};
use sigmacover::corpus::{builtin_corpus, find, parse_corpus_file, CorpusEntry};
use sigmacover::harness::{
    campaign_sigmas, run_campaign, search_lemma_2_5_converse, verify, verify_lemma_2_2,
    verify_lemma_2_5_converse, CampaignConfig, StatementId, Verdict, VerificationOutcome,
};
use sigmacover::structure::generated_subgroup;
use sigmacover::{Error, Limits, Perm, PermGroup, SigmaPartition, Subgroup};

use crate::args::{Command, Common, Format, Target};
use crate::{CAPACITY, COUNTEREXAMPLE, OK, USAGE};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Capacity { .. } => CAPACITY,
            Error::Internal(_) => COUNTEREXAMPLE,
            _ => USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome<T = u8> = Result<T, Failure>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Classify {
            target,
            common,
            sigma,
        } => classify(&target, &common, &sigma),
        Command::Residual {
            target,
            common,
            sigma,
        } => residual(&target, &common, &sigma),
        Command::Permutable {
            target,
            common,
            sigma,
            gens,
        } => permutable(&target, &common, &sigma, &gens),
        Command::Verify {
            target,
            common,
            statement,
            sigma,
            pi,
            d_gens,
            m_gens,
        } => verify_cmd(&target, &common, &statement, &sigma, pi, &d_gens, &m_gens),
        Command::Campaign {
            common,
            sigma,
            only,
            out,
            jobs,
            no_timestamps,
        } => campaign(&common, &sigma, &only, out.as_deref(), jobs, no_timestamps),
        Command::CorpusList { common } => corpus_list(&common),
    }
}

fn limits(common: &Common) -> Limits {
    let d = Limits::default();
    Limits {
        element_cache: common.element_cache.unwrap_or(d.element_cache),
        subgroup_bound: common.subgroup_bound.unwrap_or(d.subgroup_bound),
        hall_set_cap: common.hall_set_cap.unwrap_or(d.hall_set_cap),
    }
}

fn load_corpus(common: &Common) -> Outcome<Vec<CorpusEntry>> {
    if common.corpus == "builtin" {
        return Ok(builtin_corpus());
    }
    let text = fs::read_to_string(&common.corpus)
        .map_err(|e| Failure::usage(format!("cannot read corpus file {}: {}", common.corpus, e)))?;
    parse_corpus_file(&text).map_err(|e| Failure::usage(format!("{}: {}", common.corpus, e)))
}

fn load_group(target: &Target, common: &Common) -> Outcome<(String, PermGroup)> {
    let corpus = load_corpus(common)?;
    let name = target.name();
    let e = find(&corpus, name)
        .ok_or_else(|| Failure::usage(format!("unknown group '{}' (see corpus-list)", name)))?;
    Ok((e.name.clone(), e.build(limits(common))?))
}

/// `None` means "all".
fn parse_sigma(text: &str, allow_all: bool) -> Outcome<Option<SigmaPartition>> {
    if text == "all" {
        return if allow_all {
            Ok(None)
        } else {
            Err(Failure::usage(
                "--sigma all is only valid for verify and campaign",
            ))
        };
    }
    text.parse()
        .map(Some)
        .map_err(|e: Error| Failure::usage(format!("bad --sigma '{}': {}", text, e)))
}

fn parse_gens(g: &PermGroup, gens: &[String]) -> Outcome<Subgroup> {
    let perms = gens
        .iter()
        .map(|s| Perm::parse(s, g.degree()))
        .collect::<sigmacover::Result<Vec<_>>>()?;
    Ok(generated_subgroup(g, &perms)?)
}

fn print_json(v: &Value) {
    outln!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn flag(r: sigmacover::Result<bool>, skipped: &mut bool) -> Outcome<Value> {
    match r {
        Ok(b) => Ok(Value::Bool(b)),
        Err(e) if e.is_capacity() => {
            *skipped = true;
            Ok(json!("skipped"))
        }
        Err(e) => Err(e.into()),
    }
}

fn show(v: &Value) -> String {
    match v {
        Value::Bool(true) => "yes".into(),
        Value::Bool(false) => "no".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn classify(target: &Target, common: &Common, sigma: &str) -> Outcome {
    let sigma = parse_sigma(sigma, false)?.expect("not all");
    let (name, g) = load_group(target, common)?;
    let mut skipped = false;
    let blocks: Vec<String> = sigma
        .sigma_of(g.order())
        .iter()
        .map(|b| b.to_string())
        .collect();
    let residual = match sigma_nilpotent_residual(&g, &sigma) {
        Ok(r) => json!(r.order()),
        Err(e) if e.is_capacity() => {
            skipped = true;
            json!("skipped")
        }
        Err(e) => return Err(e.into()),
    };
    let fields = [
        (
            "sigma_primary",
            flag(is_sigma_primary(&g, &sigma), &mut skipped)?,
        ),
        (
            "sigma_nilpotent",
            flag(is_sigma_nilpotent(&g, &sigma), &mut skipped)?,
        ),
        (
            "sigma_soluble",
            flag(is_sigma_soluble(&g, &sigma), &mut skipped)?,
        ),
        ("psigma_t", flag(is_psigma_t(&g, &sigma), &mut skipped)?),
        (
            "complete_hall_set",
            flag(
                complete_hall_sigma_set(&g, &sigma).map(|h| h.is_some()),
                &mut skipped,
            )?,
        ),
        ("residual_order", residual),
    ];
    match common.format {
        Format::Machine => {
            let mut obj = serde_json::Map::new();
            obj.insert("group".into(), json!(name));
            obj.insert("order".into(), json!(g.order()));
            obj.insert("sigma".into(), json!(sigma.to_string()));
            obj.insert("sigma_of".into(), json!(blocks));
            for (k, v) in fields {
                obj.insert(k.into(), v);
            }
            print_json(&Value::Object(obj));
        }
        Format::Human => {
            outln!("{} (order {}), σ = {}", name, g.order(), sigma);
            outln!("  {:<20} {}", "σ(G)", blocks.join(" "));
            let labels = [
                "σ-primary",
                "σ-nilpotent",
                "σ-soluble",
                "PσT",
                "complete Hall σ-set",
                "residual order",
            ];
            for (label, (_, v)) in labels.iter().zip(&fields) {
                outln!("  {:<20} {}", label, show(v));
            }
        }
    }
    Ok(if skipped { CAPACITY } else { OK })
}

fn residual(target: &Target, common: &Common, sigma: &str) -> Outcome {
    let sigma = parse_sigma(sigma, false)?.expect("not all");
    let (name, g) = load_group(target, common)?;
    let r = sigma_nilpotent_residual(&g, &sigma)?;
    let gens: Vec<String> = r.generators().iter().map(|p| p.to_string()).collect();
    match common.format {
        Format::Machine => print_json(&json!({
            "group": name,
            "sigma": sigma.to_string(),
            "order": r.order(),
            "generators": gens,
        })),
        Format::Human => {
            let shown = if gens.is_empty() {
                "()".to_string()
            } else {
                gens.join(", ")
            };
            outln!(
                "{} σ = {}: residual of order {} generated by {}",
                name,
                sigma,
                r.order(),
                shown
            );
        }
    }
    Ok(OK)
}

fn permutable(target: &Target, common: &Common, sigma: &str, gens: &[String]) -> Outcome {
    let sigma = parse_sigma(sigma, false)?.expect("not all");
    let (name, g) = load_group(target, common)?;
    let a = parse_gens(&g, gens)?;
    let verdict = is_sigma_permutable(&g, &a, &sigma)?;
    match common.format {
        Format::Machine => print_json(&json!({
            "group": name,
            "sigma": sigma.to_string(),
            "subgroup_order": a.order(),
            "sigma_permutable": verdict,
        })),
        Format::Human => outln!(
            "subgroup of order {} in {} is {}σ-permutable for σ = {}",
            a.order(),
            name,
            if verdict { "" } else { "not " },
            sigma
        ),
    }
    Ok(OK)
}

fn outcome_line(o: &VerificationOutcome) -> String {
    let verdict = match (o.verdict, o.vacuous) {
        (Verdict::Confirmed, true) => "confirmed-vacuous".to_string(),
        (v, _) => v.to_string(),
    };
    let mut line = format!(
        "{:<11} {:<10} {:<14} {}",
        o.statement_id,
        o.group,
        o.sigma.to_string(),
        verdict
    );
    if let Some(n) = &o.note {
        line.push_str(&format!("  ({})", n));
    }
    line
}

fn outcomes_exit(outcomes: &[VerificationOutcome]) -> u8 {
    if outcomes
        .iter()
        .any(|o| o.verdict == Verdict::Counterexample)
    {
        COUNTEREXAMPLE
    } else if outcomes.iter().any(|o| o.verdict == Verdict::Skipped) {
        CAPACITY
    } else {
        OK
    }
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    target: &Target,
    common: &Common,
    statement: &str,
    sigma: &str,
    pi: Option<Vec<u64>>,
    d_gens: &[String],
    m_gens: &[String],
) -> Outcome {
    let id: StatementId = statement
        .parse()
        .map_err(|e: Error| Failure::usage(e.to_string()))?;
    let sigma = parse_sigma(sigma, true)?;
    let (name, g) = load_group(target, common)?;
    let sigmas = match sigma {
        Some(s) => vec![s],
        None if id == StatementId::Cor12 => vec![SigmaPartition::Classical],
        None => campaign_sigmas(g.order())?,
    };
    let converse_pair = match (d_gens.is_empty(), m_gens.is_empty()) {
        (true, true) => None,
        (false, false) if id == StatementId::Lem25Conv => {
            Some((parse_gens(&g, d_gens)?, parse_gens(&g, m_gens)?))
        }
        _ => {
            return Err(Failure::usage(
                "--d-gen and --m-gen go together, with --statement Lem2.5.conv",
            ))
        }
    };
    let mut outcomes = Vec::new();
    if let (StatementId::Lem22, Some(pi)) = (id, &pi) {
        let pi: BTreeSet<u64> = pi.iter().copied().collect();
        outcomes.push(verify_lemma_2_2(&name, &g, &pi)?);
    } else {
        for s in &sigmas {
            outcomes.push(match &converse_pair {
                Some((d, m)) => verify_lemma_2_5_converse(&name, &g, s, d, m)?,
                None if id == StatementId::Lem25Conv => search_lemma_2_5_converse(&name, &g, s)?,
                None => verify(&name, &g, s, id)?,
            });
        }
    }
    match common.format {
        Format::Machine => print_json(&serde_json::to_value(&outcomes).expect("serializable")),
        Format::Human => {
            for o in &outcomes {
                outln!("{}", outcome_line(o));
            }
        }
    }
    Ok(outcomes_exit(&outcomes))
}

fn campaign(
    common: &Common,
    sigma: &str,
    only: &[String],
    out: Option<&std::path::Path>,
    jobs: Option<usize>,
    no_timestamps: bool,
) -> Outcome {
    let sigma = parse_sigma(sigma, true)?;
    let only = if only.is_empty() {
        None
    } else {
        Some(
            only.iter()
                .map(|s| s.parse::<StatementId>())
                .collect::<sigmacover::Result<BTreeSet<_>>>()
                .map_err(|e| Failure::usage(e.to_string()))?,
        )
    };
    if jobs == Some(0) {
        return Err(Failure::usage("--jobs must be at least 1"));
    }
    let corpus = load_corpus(common)?;
    if let Some(path) = out {
        fs::File::create(path)
            .map_err(|e| Failure::usage(format!("cannot write {}: {}", path.display(), e)))?;
    }
    let config = CampaignConfig {
        jobs,
        only,
        sigma,
        limits: limits(common),
        timings: !no_timestamps,
    };
    let report = run_campaign(&corpus, &config)?;
    if let Some(path) = out {
        fs::write(path, report.to_json() + "\n")
            .map_err(|e| Failure::usage(format!("cannot write {}: {}", path.display(), e)))?;
    }
    match (common.format, out) {
        (Format::Machine, None) => outln!("{}", report.to_json()),
        (Format::Machine, Some(_)) => {}
        (Format::Human, _) => {
            for o in report
                .outcomes
                .iter()
                .filter(|o| o.verdict != Verdict::Confirmed)
            {
                outln!("{}", outcome_line(o));
            }
            outln!("{}", report.summary_table().trim_end());
        }
    }
    Ok(if report.is_clean() {
        OK
    } else {
        COUNTEREXAMPLE
    })
}

fn corpus_list(common: &Common) -> Outcome {
    let corpus = load_corpus(common)?;
    match common.format {
        Format::Machine => {
            let rows: Vec<Value> = corpus
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name,
                        "degree": e.degree,
                        "order": e.expected_order,
                        "tags": e.tags,
                    })
                })
                .collect();
            print_json(&Value::Array(rows));
        }
        Format::Human => {
            outln!("{:<10} {:>6} {:>6}  tags", "name", "degree", "order");
            for e in &corpus {
                outln!(
                    "{:<10} {:>6} {:>6}  {}",
                    e.name,
                    e.degree,
                    e.expected_order,
                    e.tags.join(",")
                );
            }
        }
    }
    Ok(OK)
}
