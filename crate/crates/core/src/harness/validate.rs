//! Re-checks a witness against a freshly built copy of its group, using element-level
//! arithmetic for products and public predicates on standalone groups for classes.

use std::collections::HashSet;

use super::*;
use crate::classes::{
    is_psigma_t, is_sigma_full_sylow_type, is_sigma_nilpotent, is_sigma_permutable,
    is_sigma_soluble,
};
use crate::group::{PermGroup, Subgroup};
use crate::perm::Perm;
use crate::primes;
use crate::structure::{
    all_subgroups, generated_subgroup, maximal_subgroups_of_p_group, supplements,
};

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Fresh {
    group: PermGroup,
}

impl Fresh {
    fn subgroup(&self, r: &SubgroupRef) -> std::result::Result<Subgroup, String> {
        let gens = r
            .generators
            .iter()
            .map(|s| Perm::parse(s, self.group.degree()))
            .collect::<Result<Vec<_>>>();
        let h = lift(generated_subgroup(&self.group, &lift(gens)?))?;
        ensure(h.order() == r.order, || {
            format!(
                "subgroup generated by {:?} has order {}, not {}",
                r.generators,
                h.order(),
                r.order
            )
        })?;
        Ok(h)
    }

    /// `h` as a group in its own right, with nothing shared with the ambient group.
    fn standalone(&self, h: &Subgroup) -> std::result::Result<PermGroup, String> {
        lift(PermGroup::with_limits(
            self.group.degree(),
            h.generators(),
            self.group.limits(),
        ))
    }

    fn in_class(
        &self,
        h: &Subgroup,
        sigma: &SigmaPartition,
        cls: ClassSelector,
    ) -> std::result::Result<bool, String> {
        let g = self.standalone(h)?;
        let r: Result<bool> = match cls {
            ClassSelector::Soluble => is_sigma_soluble(&g, sigma),
            ClassSelector::Nilpotent => is_sigma_nilpotent(&g, sigma),
            ClassSelector::SolublePsigmaT => {
                is_sigma_soluble(&g, sigma).and_then(|s| Ok(s && is_psigma_t(&g, sigma)?))
            }
        };
        lift(r)
    }

    fn product_is_whole(&self, a: &Subgroup, b: &Subgroup) -> bool {
        let bs = b.elements();
        let prod: HashSet<Perm> = a
            .elements()
            .iter()
            .flat_map(|x| bs.iter().map(move |y| x.compose(y)))
            .collect();
        prod.len() as u64 == self.group.order()
    }

    fn check_maximal_of_sylow(&self, p: u64, v: &Subgroup, sylow: &Subgroup) -> Check {
        let want = primes::part_of(self.group.order(), |q| q == p);
        ensure(sylow.order() == want, || {
            format!("Sylow {}-subgroup has order {}", p, sylow.order())
        })?;
        ensure(
            v.is_subgroup_of(sylow) && v.order() * p == sylow.order(),
            || {
                format!(
                    "order {} subgroup is not maximal in the Sylow {}-subgroup",
                    v.order(),
                    p
                )
            },
        )
    }
}

/// Validates the witness of `outcome`, which was computed for group `g`.
pub fn validate_witness(outcome: &VerificationOutcome, g: &PermGroup) -> Check {
    let fresh = Fresh {
        group: lift(PermGroup::with_limits(
            g.degree(),
            g.generators().to_vec(),
            g.limits(),
        ))?,
    };
    let sigma = &outcome.sigma;
    let whole = lift(fresh.group.whole())?;
    match &outcome.witness {
        None => ensure(outcome.verdict != Verdict::Counterexample, || {
            "counterexample without a witness".into()
        }),
        Some(Witness::UncoveredMaximal {
            prime,
            sylow,
            maximal,
            supplements: listed,
        }) => {
            let cls = outcome
                .statement_id
                .class()
                .ok_or("uncovered-maximal witness on a non-covering statement")?;
            let p = fresh.subgroup(sylow)?;
            let v = fresh.subgroup(maximal)?;
            fresh.check_maximal_of_sylow(*prime, &v, &p)?;
            let all = lift(supplements(&fresh.group, &v))?;
            ensure(all.len() == listed.len(), || {
                format!("{} supplements listed, {} exist", listed.len(), all.len())
            })?;
            for r in listed {
                let t = fresh.subgroup(r)?;
                ensure(all.contains(&t) && fresh.product_is_whole(&v, &t), || {
                    format!("listed subgroup of order {} is not a supplement", t.order())
                })?;
                ensure(!fresh.in_class(&t, sigma, cls)?, || {
                    format!("supplement of order {} is in the class {}", t.order(), cls)
                })?;
            }
            if outcome.verdict == Verdict::Confirmed {
                ensure(!fresh.in_class(&whole, sigma, cls)?, || {
                    "G is in the class".into()
                })
            } else {
                ensure(fresh.in_class(&whole, sigma, cls)?, || {
                    "G is outside the class, so an uncovered maximal subgroup is no counterexample"
                        .into()
                })
            }
        }
        Some(Witness::CoveringChoice { covers }) => {
            let cls = outcome
                .statement_id
                .class()
                .ok_or("covering-choice witness on a non-covering statement")?;
            ensure(!fresh.in_class(&whole, sigma, cls)?, || {
                "G is in the class".into()
            })?;
            let subs = lift(all_subgroups(&fresh.group))?;
            for p in primes::prime_divisors(fresh.group.order()) {
                let mine: Vec<&Cover> = covers.iter().filter(|c| c.prime == p).collect();
                let first = mine
                    .first()
                    .ok_or_else(|| format!("no cover for the prime {}", p))?;
                let v0 = fresh.subgroup(&first.maximal)?;
                let want = primes::part_of(fresh.group.order(), |q| q == p);
                let sylow = subs
                    .iter()
                    .find(|s| s.order() == want && v0.is_subgroup_of(s))
                    .ok_or("no Sylow subgroup above the first maximal subgroup")?;
                let maxes = lift(maximal_subgroups_of_p_group(sylow))?;
                ensure(maxes.len() == mine.len(), || {
                    format!(
                        "{} covers for p = {}, {} maximal subgroups",
                        mine.len(),
                        p,
                        maxes.len()
                    )
                })?;
                for c in mine {
                    let v = fresh.subgroup(&c.maximal)?;
                    let t = fresh.subgroup(&c.supplement)?;
                    fresh.check_maximal_of_sylow(p, &v, sylow)?;
                    ensure(maxes.contains(&v), || {
                        "cover for a non-maximal subgroup".into()
                    })?;
                    ensure(fresh.product_is_whole(&v, &t), || {
                        "cover is not a supplement".into()
                    })?;
                    ensure(fresh.in_class(&t, sigma, cls)?, || {
                        "cover is outside the class".into()
                    })?;
                }
            }
            Ok(())
        }
        Some(Witness::FullSylowFailure { subgroup, .. }) => {
            ensure(lift(is_sigma_soluble(&fresh.group, sigma))?, || {
                "G is not σ-soluble".into()
            })?;
            let e = fresh.standalone(&fresh.subgroup(subgroup)?)?;
            ensure(!lift(is_sigma_full_sylow_type(&e, sigma))?, || {
                "the subgroup is σ-full of Sylow type".into()
            })
        }
        Some(Witness::TransitivityFailure(t))
        | Some(Witness::ConversePairs {
            violation: Some(t), ..
        }) => {
            let k = fresh.subgroup(&t.inner)?;
            let h = fresh.subgroup(&t.middle)?;
            let hg = fresh.standalone(&h)?;
            let k_in_h = lift(generated_subgroup(&hg, &k.generators()))?;
            ensure(lift(is_sigma_permutable(&hg, &k_in_h, sigma))?, || {
                "K is not σ-permutable in H".into()
            })?;
            ensure(lift(is_sigma_permutable(&fresh.group, &h, sigma))?, || {
                "H is not σ-permutable in G".into()
            })?;
            ensure(!lift(is_sigma_permutable(&fresh.group, &k, sigma))?, || {
                "K is σ-permutable in G".into()
            })
        }
        Some(_) => {
            let again = lift(verify(
                &outcome.group,
                &fresh.group,
                sigma,
                outcome.statement_id,
            ))?;
            ensure(
                again.verdict == outcome.verdict && again.witness == outcome.witness,
                || format!("re-run on a fresh copy gives verdict {}", again.verdict),
            )
        }
    }
}
