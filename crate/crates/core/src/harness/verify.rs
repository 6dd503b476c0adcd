use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use super::*;
use crate::classes::{
    full_sylow_violation_idx, halls_idx, nilpotent_idx, o_sigma_idx, pi_separable_idx,
    power_automorphisms_idx, psigma_t_idx, psigma_t_violation_idx, residual_idx, soluble_idx,
};
use crate::group::{PermGroup, Subgroup};
use crate::lattice::Lattice;
use crate::primes;
use crate::quotient::QuotientGroup;
use crate::structure::{from_idx, locate, supplement_idxs};

struct Body {
    verdict: Verdict,
    vacuous: bool,
    note: Option<String>,
    witness: Option<Witness>,
}

impl Body {
    fn confirmed(witness: Option<Witness>) -> Body {
        Body {
            verdict: Verdict::Confirmed,
            vacuous: false,
            note: None,
            witness,
        }
    }

    fn vacuous(note: impl Into<String>) -> Body {
        Body {
            verdict: Verdict::Confirmed,
            vacuous: true,
            note: Some(note.into()),
            witness: None,
        }
    }

    fn counterexample(witness: Witness) -> Body {
        Body {
            verdict: Verdict::Counterexample,
            vacuous: false,
            note: None,
            witness: Some(witness),
        }
    }

    fn note(mut self, note: impl Into<String>) -> Body {
        self.note = Some(note.into());
        self
    }
}

/// Runs one verifier; capacity errors become a skipped outcome, anything else propagates.
fn run(
    statement_id: StatementId,
    group: &str,
    sigma: &SigmaPartition,
    f: impl FnOnce() -> Result<Body>,
) -> Result<VerificationOutcome> {
    let start = Instant::now();
    let body = match f() {
        Ok(b) => b,
        Err(e) if e.is_capacity() => Body {
            verdict: Verdict::Skipped,
            vacuous: false,
            note: Some(e.to_string()),
            witness: None,
        },
        Err(e) => return Err(e),
    };
    Ok(VerificationOutcome {
        statement_id,
        group: group.to_string(),
        sigma: sigma.clone(),
        verdict: body.verdict,
        vacuous: body.vacuous,
        note: body.note,
        witness: body.witness,
        millis: Some(start.elapsed().as_millis() as u64),
    })
}

struct Ctx {
    group: PermGroup,
    lat: Arc<Lattice>,
    x: usize,
}

impl Ctx {
    fn new(g: &PermGroup) -> Result<Ctx> {
        let (lat, x) = locate(&g.whole()?)?;
        Ok(Ctx {
            group: g.clone(),
            lat,
            x,
        })
    }

    fn order(&self) -> u64 {
        self.lat.order(self.x)
    }

    fn sref(&self, i: usize) -> SubgroupRef {
        SubgroupRef {
            order: self.lat.order(i),
            generators: self.lat.subs[i]
                .gens
                .iter()
                .map(|&e| self.lat.table.elements[e].to_string())
                .collect(),
        }
    }

    fn sub(&self, i: usize) -> Subgroup {
        from_idx(&self.group, &self.lat, i)
    }

    fn quotient(&self, x: usize, n: usize) -> Result<QuotientGroup> {
        self.lat
            .quotient_cached((x, n), || QuotientGroup::new(&self.sub(x), &self.sub(n)))
    }

    fn in_class(&self, t: usize, s: &SigmaPartition, cls: ClassSelector) -> bool {
        match cls {
            ClassSelector::Soluble => soluble_idx(&self.lat, t, s),
            ClassSelector::Nilpotent => nilpotent_idx(&self.lat, t, s),
            ClassSelector::SolublePsigmaT => {
                soluble_idx(&self.lat, t, s) && psigma_t_idx(&self.lat, t, s)
            }
        }
    }

    /// One Sylow p-subgroup per prime divisor; conjugate Sylow subgroups have conjugate
    /// maximal subgroups and supplement lists, so one per prime decides the scan.
    fn sylows(&self) -> Vec<(u64, usize)> {
        let n = self.order();
        primes::prime_divisors(n)
            .into_iter()
            .map(|p| {
                let sylow = self
                    .lat
                    .of_order_below(self.x, primes::part_of(n, |q| q == p))[0];
                (p, sylow)
            })
            .collect()
    }

    fn has_hall(&self, pi: &BTreeSet<u64>) -> bool {
        let want = primes::part_of(self.order(), |p| pi.contains(&p));
        !self.lat.of_order_below(self.x, want).is_empty()
    }

    /// Normal `n` of the whole group with `d ∩ n = 1` and `dn = G`.
    fn complements(&self, d: usize) -> impl Iterator<Item = usize> + '_ {
        let want = self.order() / self.lat.order(d);
        self.lat
            .of_order_below(self.x, want)
            .into_iter()
            .filter(move |&m| self.lat.meet(d, m) == self.lat.trivial())
    }
}

enum Scan {
    Uncovered {
        prime: u64,
        sylow: usize,
        maximal: usize,
        supplements: Vec<usize>,
    },
    Covered(Vec<(u64, usize, usize)>),
}

/// For each maximal subgroup V of each Sylow subgroup, look for a supplement in the
/// class; stop at the first V that has none.
fn covering_scan(c: &Ctx, s: &SigmaPartition, cls: ClassSelector) -> Scan {
    let mut covers = Vec::new();
    for (p, sylow) in c.sylows() {
        for v in c.lat.maximals(sylow) {
            let supps = supplement_idxs(&c.lat, c.x, v);
            match supps.iter().find(|&&t| c.in_class(t, s, cls)) {
                Some(&t) => covers.push((p, v, t)),
                None => {
                    return Scan::Uncovered {
                        prime: p,
                        sylow,
                        maximal: v,
                        supplements: supps,
                    }
                }
            }
        }
    }
    Scan::Covered(covers)
}

fn scan_witness(c: &Ctx, scan: &Scan) -> Witness {
    match scan {
        Scan::Uncovered {
            prime,
            sylow,
            maximal,
            supplements,
        } => Witness::UncoveredMaximal {
            prime: *prime,
            sylow: c.sref(*sylow),
            maximal: c.sref(*maximal),
            supplements: supplements.iter().map(|&t| c.sref(t)).collect(),
        },
        Scan::Covered(covers) => Witness::CoveringChoice {
            covers: covers
                .iter()
                .map(|&(prime, v, t)| Cover {
                    prime,
                    maximal: c.sref(v),
                    supplement: c.sref(t),
                })
                .collect(),
        },
    }
}

/// Contrapositive form of the covering statement for class `cls`: if `G ∉ cls`, some
/// maximal subgroup of a Sylow subgroup has all of its supplements outside `cls`.
pub fn verify_theorem_a(
    name: &str,
    g: &PermGroup,
    sigma: &SigmaPartition,
    cls: ClassSelector,
) -> Result<VerificationOutcome> {
    run(cls.statement(), name, sigma, || {
        let c = Ctx::new(g)?;
        if c.in_class(c.x, sigma, cls) {
            return Ok(Body::vacuous(format!("G is {}", cls)));
        }
        let scan = covering_scan(&c, sigma, cls);
        let w = scan_witness(&c, &scan);
        Ok(match scan {
            Scan::Uncovered { .. } => Body::confirmed(Some(w)),
            Scan::Covered(_) => Body::counterexample(w),
        })
    })
}

fn covering_biconditional(
    statement: StatementId,
    name: &str,
    g: &PermGroup,
    sigma: &SigmaPartition,
) -> Result<VerificationOutcome> {
    let cls = ClassSelector::SolublePsigmaT;
    run(statement, name, sigma, || {
        let c = Ctx::new(g)?;
        let member = c.in_class(c.x, sigma, cls);
        let scan = covering_scan(&c, sigma, cls);
        let covered = matches!(scan, Scan::Covered(_));
        let w = scan_witness(&c, &scan);
        Ok(match (member, covered) {
            (true, true) => Body::vacuous(
                "G is a σ-soluble PσT-group; G itself supplements every maximal subgroup of every Sylow subgroup",
            ),
            (false, false) => Body::confirmed(Some(w)),
            _ => Body::counterexample(w).note(format!(
                "G in class: {}, every maximal Sylow subgroup supplemented in class: {}",
                member, covered
            )),
        })
    })
}

/// Both sides of: G is a σ-soluble PσT-group iff each maximal subgroup of every Sylow
/// subgroup has a supplement that is a σ-soluble PσT-group.
pub fn verify_cor_1_1(
    name: &str,
    g: &PermGroup,
    sigma: &SigmaPartition,
) -> Result<VerificationOutcome> {
    covering_biconditional(StatementId::Cor11, name, g, sigma)
}

/// The same biconditional for the classical partition.
pub fn verify_cor_1_2(name: &str, g: &PermGroup) -> Result<VerificationOutcome> {
    covering_biconditional(StatementId::Cor12, name, g, &SigmaPartition::Classical)
}

/// A σ-soluble group is σ-full of Sylow type.
pub fn verify_lemma_2_1(
    name: &str,
    g: &PermGroup,
    sigma: &SigmaPartition,
) -> Result<VerificationOutcome> {
    run(StatementId::Lem21, name, sigma, || {
        let c = Ctx::new(g)?;
        if !soluble_idx(&c.lat, c.x, sigma) {
            return Ok(Body::vacuous("G is not σ-soluble"));
        }
        Ok(match full_sylow_violation_idx(&c.lat, c.x, sigma) {
            None => Body::confirmed(None),
            Some((e, b)) => Body::counterexample(Witness::FullSylowFailure {
                subgroup: c.sref(e),
                block: b.to_string(),
            }),
        })
    })
}

fn separability_case(c: &Ctx, pi: &BTreeSet<u64>) -> SeparabilityCase {
    let support = primes::prime_divisors(c.order());
    let inside: BTreeSet<u64> = support.intersection(pi).copied().collect();
    let outside: BTreeSet<u64> = support.difference(pi).copied().collect();
    let with = |base: &BTreeSet<u64>, p: u64| {
        let mut s = base.clone();
        s.insert(p);
        s
    };
    let hall_conditions = c.has_hall(&inside)
        && c.has_hall(&outside)
        && outside.iter().all(|&p| c.has_hall(&with(&inside, p)))
        && inside.iter().all(|&q| c.has_hall(&with(&outside, q)));
    SeparabilityCase {
        pi: inside.into_iter().collect(),
        separable: pi_separable_idx(&c.lat, c.x, pi),
        hall_conditions,
    }
}

fn separability_body(cases: Vec<SeparabilityCase>, support: &BTreeSet<u64>) -> Body {
    let trivial = cases
        .iter()
        .all(|k| k.pi.is_empty() || k.pi.len() == support.len());
    let agree = cases.iter().all(|k| k.separable == k.hall_conditions);
    let w = Witness::Separability { cases };
    if !agree {
        Body::counterexample(w)
    } else if trivial {
        let mut b = Body::vacuous("π contains all or none of π(G)");
        b.witness = Some(w);
        b
    } else {
        Body::confirmed(Some(w))
    }
}

/// π-separability against the existence of Hall π-, π'-, π∪{p}- and π'∪{q}-subgroups.
/// The outcome is labelled with the two-block partition {π, rest}.
pub fn verify_lemma_2_2(
    name: &str,
    g: &PermGroup,
    pi: &BTreeSet<u64>,
) -> Result<VerificationOutcome> {
    let blocks = if pi.is_empty() {
        vec![]
    } else {
        vec![pi.clone()]
    };
    let sigma = SigmaPartition::from_blocks(blocks)?;
    run(StatementId::Lem22, name, &sigma, || {
        let c = Ctx::new(g)?;
        let support = primes::prime_divisors(c.order());
        Ok(separability_body(vec![separability_case(&c, pi)], &support))
    })
}

/// The separability criterion for π = each block of σ that meets π(G).
pub fn verify_lemma_2_2_blocks(
    name: &str,
    g: &PermGroup,
    sigma: &SigmaPartition,
) -> Result<VerificationOutcome> {
    run(StatementId::Lem22, name, sigma, || {
        let c = Ctx::new(g)?;
        let n = c.order();
        let cases = sigma
            .sigma_of(n)
            .into_iter()
            .map(|b| separability_case(&c, &sigma.block_primes(n, b)))
            .collect();
        Ok(separability_body(cases, &primes::prime_divisors(n)))
    })
}

/// Closure of the σ-nilpotent groups under subgroups, quotients and products of normal
/// subgroups, and the Frattini criterion for normal subgroups.
pub fn verify_lemma_2_3(
    name: &str,
    g: &PermGroup,
    sigma: &SigmaPartition,
) -> Result<VerificationOutcome> {
    run(StatementId::Lem23, name, sigma, || {
        let c = Ctx::new(g)?;
        let lat = &c.lat;
        let fail = |property: &str, subs: &[usize]| {
            Ok(Body::counterexample(Witness::ClosureFailure {
                property: property.to_string(),
                subgroups: subs.iter().map(|&i| c.sref(i)).collect(),
            }))
        };
        let normals = lat.normals(c.x).to_vec();

        if nilpotent_idx(lat, c.x, sigma) {
            for &h in lat.below(c.x) {
                if !nilpotent_idx(lat, h, sigma) {
                    return fail("subgroup", &[h]);
                }
            }
            for &n in &normals {
                let q = c.quotient(c.x, n)?;
                if !crate::classes::is_sigma_nilpotent(q.group(), sigma)? {
                    return fail("quotient", &[n]);
                }
            }
        }

        let nil: Vec<usize> = normals
            .iter()
            .copied()
            .filter(|&n| nilpotent_idx(lat, n, sigma))
            .collect();
        for (k, &a) in nil.iter().enumerate() {
            for &b in &nil[k + 1..] {
                let ab = lat.join(a, b);
                if lat.product_order(a, b) != lat.order(ab) || !nilpotent_idx(lat, ab, sigma) {
                    return fail("normal product", &[a, b]);
                }
            }
        }

        let maximals = lat.maximals(c.x);
        let phi = maximals.iter().fold(c.x, |acc, &m| lat.meet(acc, m));
        let mut frattini_hits = 0;
        for &e in &normals {
            let low = lat.meet(e, phi);
            let q = c.quotient(e, low)?;
            if crate::classes::is_sigma_nilpotent(q.group(), sigma)? {
                frattini_hits += 1;
                if !nilpotent_idx(lat, e, sigma) {
                    return fail("Frattini quotient", &[e, phi]);
                }
            }
        }
        if c.order() == 1 {
            return Ok(Body::vacuous("trivial group"));
        }
        Ok(Body::confirmed(None).note(format!(
            "{} σ-nilpotent normal subgroups, {} with σ-nilpotent E/(E∩Φ(G))",
            nil.len(),
            frattini_hits
        )))
    })
}

/// For every normal N: the residual of G/N computed in the quotient equals the image of
/// the residual of G.
pub fn verify_lemma_2_4(
    name: &str,
    g: &PermGroup,
    sigma: &SigmaPartition,
) -> Result<VerificationOutcome> {
    run(StatementId::Lem24, name, sigma, || {
        let c = Ctx::new(g)?;
        let r = residual_idx(&c.lat, c.x, sigma)?;
        for &n in c.lat.normals(c.x) {
            let q = c.quotient(c.x, n)?;
            let direct = crate::classes::sigma_nilpotent_residual(q.group(), sigma)?;
            let projected = q.project_subgroup(&c.sub(r))?;
            if direct != projected {
                let qref = |s: &Subgroup| SubgroupRef {
                    order: s.order(),
                    generators: s.generators().iter().map(|p| p.to_string()).collect(),
                };
                return Ok(Body::counterexample(Witness::ResidualQuotient {
                    normal: c.sref(n),
                    quotient_residual: qref(&direct),
                    projected_residual: qref(&projected),
                }));
            }
        }
        Ok(Body::confirmed(None).note(format!("{} normal subgroups", c.lat.normals(c.x).len())))
    })
}

/// Conditions (i) and (ii) for a candidate `d`, with the first σ-nilpotent complement.
fn splitting_facts(
    c: &Ctx,
    sigma: &SigmaPartition,
    d: usize,
    complement: Option<usize>,
) -> Result<SplittingFacts> {
    let lat = &c.lat;
    let n = c.order();
    let dn = lat.order(d);
    let complement = match complement {
        Some(m) => Some(m),
        None => c.complements(d).find(|&m| nilpotent_idx(lat, m, sigma)),
    };
    let mut exists = true;
    let mut all = true;
    for (b, halls) in halls_idx(lat, c.x, sigma) {
        let o = o_sigma_idx(lat, d, sigma, b)?;
        let ok: Vec<bool> = halls
            .iter()
            .map(|&h| {
                lat.le(o, h)
                    && lat.normals(h).iter().any(|&k| {
                        lat.meet(k, o) == lat.trivial()
                            && lat.order(k) * lat.order(o) == lat.order(h)
                    })
            })
            .collect();
        exists &= ok.iter().any(|&v| v);
        all &= !ok.is_empty() && ok.iter().all(|&v| v);
    }
    Ok(SplittingFacts {
        residual: c.sref(d),
        complement: complement.map(|m| c.sref(m)),
        abelian: lat.is_abelian(d),
        hall: crate::perm::gcd(dn, n / dn) == 1,
        odd_order: dn % 2 == 1,
        power_automorphisms: lat.is_normal(d, c.x) && power_automorphisms_idx(lat, c.x, d),
        condition_ii_exists: exists,
        condition_ii_all: all,
    })
}

/// Structure of a σ-soluble PσT-group around its σ-nilpotent residual D.
pub fn verify_lemma_2_5_forward(
    name: &str,
    g: &PermGroup,
    sigma: &SigmaPartition,
) -> Result<VerificationOutcome> {
    run(StatementId::Lem25Fwd, name, sigma, || {
        let c = Ctx::new(g)?;
        if !soluble_idx(&c.lat, c.x, sigma) {
            return Ok(Body::vacuous("G is not σ-soluble"));
        }
        if !psigma_t_idx(&c.lat, c.x, sigma) {
            return Ok(Body::vacuous("G is not a PσT-group"));
        }
        let d = residual_idx(&c.lat, c.x, sigma)?;
        let facts = splitting_facts(&c, sigma, d, None)?;
        let ok = facts.condition_i() && facts.condition_ii_exists;
        let note = (!facts.condition_ii_all)
            .then(|| "condition (ii) holds for some but not every Hall σ_i-subgroup".to_string());
        let w = Witness::ResidualSplitting(facts);
        let mut body = if ok {
            Body::confirmed(Some(w))
        } else {
            let mut b = Body::counterexample(w);
            b.note = Some(format!(
                "{} subgroups scanned for a complement",
                c.lat.len()
            ));
            b
        };
        if ok {
            body.note = note;
        }
        Ok(body)
    })
}

fn transitivity_failure(c: &Ctx, sigma: &SigmaPartition) -> Option<TransitivityFailure> {
    psigma_t_violation_idx(&c.lat, c.x, sigma).map(|(k, h)| TransitivityFailure {
        inner: c.sref(k),
        middle: c.sref(h),
    })
}

/// If the supplied `d` and `m` satisfy conditions (i) and (ii), G must be a PσT-group.
pub fn verify_lemma_2_5_converse(
    name: &str,
    g: &PermGroup,
    sigma: &SigmaPartition,
    d: &Subgroup,
    m: &Subgroup,
) -> Result<VerificationOutcome> {
    run(StatementId::Lem25Conv, name, sigma, || {
        let c = Ctx::new(g)?;
        let di = c.lat.idx(&d.set).filter(|_| d.ambient().ptr_eq(g));
        let mi = c.lat.idx(&m.set).filter(|_| m.ambient().ptr_eq(g));
        let (Some(di), Some(mi)) = (di, mi) else {
            return Err(Error::input("D and M must be subgroups of G"));
        };
        let is_complement = c.lat.meet(di, mi) == c.lat.trivial()
            && c.lat.order(di) * c.lat.order(mi) == c.order()
            && nilpotent_idx(&c.lat, mi, sigma);
        let facts = splitting_facts(&c, sigma, di, Some(mi))?;
        if !(is_complement && facts.condition_i() && facts.condition_ii_exists) {
            return Ok(Body::vacuous(
                "conditions (i) and (ii) do not hold for the given D and M",
            ));
        }
        Ok(match transitivity_failure(&c, sigma) {
            None => Body::confirmed(None),
            Some(t) => Body::counterexample(Witness::TransitivityFailure(t)),
        })
    })
}

/// Exhaustive form of the converse: every normal D with a σ-nilpotent complement M
/// satisfying (i) and (ii) forces G to be a PσT-group.
pub fn search_lemma_2_5_converse(
    name: &str,
    g: &PermGroup,
    sigma: &SigmaPartition,
) -> Result<VerificationOutcome> {
    run(StatementId::Lem25Conv, name, sigma, || {
        let c = Ctx::new(g)?;
        let mut found: Vec<(usize, usize)> = Vec::new();
        for &d in c.lat.normals(c.x) {
            let dn = c.lat.order(d);
            if dn % 2 == 0 || crate::perm::gcd(dn, c.order() / dn) != 1 || !c.lat.is_abelian(d) {
                continue;
            }
            let facts = splitting_facts(&c, sigma, d, None)?;
            if let (true, true, Some(_)) = (
                facts.condition_i(),
                facts.condition_ii_exists,
                &facts.complement,
            ) {
                let m = c
                    .complements(d)
                    .find(|&m| nilpotent_idx(&c.lat, m, sigma))
                    .expect("complement reported by the facts");
                found.push((d, m));
            }
        }
        let Some(&(d, m)) = found.first() else {
            return Ok(Body::vacuous(
                "no subgroups D, M satisfy conditions (i) and (ii)",
            ));
        };
        let violation = transitivity_failure(&c, sigma);
        let w = Witness::ConversePairs {
            pairs_checked: found.len(),
            residual: Some(c.sref(d)),
            complement: Some(c.sref(m)),
            violation: violation.clone(),
        };
        Ok(match violation {
            None => Body::confirmed(Some(w)),
            Some(_) => Body::counterexample(w),
        })
    })
}

/// Runs the campaign form of one statement on `(G, σ)`.
pub fn verify(
    name: &str,
    g: &PermGroup,
    sigma: &SigmaPartition,
    statement: StatementId,
) -> Result<VerificationOutcome> {
    match statement {
        StatementId::ThmAI | StatementId::ThmAII | StatementId::ThmAIII => verify_theorem_a(
            name,
            g,
            sigma,
            statement.class().expect("covering statement"),
        ),
        StatementId::Cor11 => verify_cor_1_1(name, g, sigma),
        StatementId::Cor12 => verify_cor_1_2(name, g),
        StatementId::Lem21 => verify_lemma_2_1(name, g, sigma),
        StatementId::Lem22 => verify_lemma_2_2_blocks(name, g, sigma),
        StatementId::Lem23 => verify_lemma_2_3(name, g, sigma),
        StatementId::Lem24 => verify_lemma_2_4(name, g, sigma),
        StatementId::Lem25Fwd => verify_lemma_2_5_forward(name, g, sigma),
        StatementId::Lem25Conv => search_lemma_2_5_converse(name, g, sigma),
    }
}
