//! σ-class predicates: σ-primary, σ-nilpotent, σ-soluble, complete Hall σ-sets,
//! σ-permutability, PσT, the σ-nilpotent residual and related structure.
//!
//! Every predicate is evaluated inside the subgroup lattice of the ambient group, so a
//! subgroup `X` is treated as a group in its own right: its Hall subgroups, normal
//! subgroups and conjugacy classes are those of `X`, not of the ambient group.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::group::{AsSubgroup, Subgroup};
use crate::lattice::{Lattice, Query};
use crate::primes;
use crate::sigma::{BlockId, SigmaPartition};
use crate::structure::{from_idx, locate};

/// One Hall σ_i-subgroup for every block σ_i of σ(G).
#[derive(Clone, Debug)]
pub struct HallSigmaSet {
    pub members: BTreeMap<BlockId, Subgroup>,
}

impl HallSigmaSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn memo_flag(lat: &Lattice, s: &SigmaPartition, q: Query, f: impl FnOnce() -> bool) -> bool {
    if let Some(&v) = lat.memo.lock().flags.get(s).and_then(|m| m.get(&q)) {
        return v;
    }
    let v = f();
    lat.memo
        .lock()
        .flags
        .entry(s.clone())
        .or_default()
        .insert(q, v);
    v
}

// ---- index-level engine ----

/// Hall σ_i-subgroups of `x`, per block of σ(|x|).
pub(crate) fn halls_idx(lat: &Lattice, x: usize, s: &SigmaPartition) -> Vec<(BlockId, Vec<usize>)> {
    let n = lat.order(x);
    s.sigma_of(n)
        .into_iter()
        .map(|b| (b, lat.of_order_below(x, s.part(n, b))))
        .collect()
}

/// Each Hall σ_i-subgroup exists, is unique, and is normal.
pub(crate) fn nilpotent_idx(lat: &Lattice, x: usize, s: &SigmaPartition) -> bool {
    memo_flag(lat, s, Query::Nilpotent(x), || {
        halls_idx(lat, x, s)
            .iter()
            .all(|(_, h)| h.len() == 1 && lat.is_normal(h[0], x))
    })
}

pub(crate) fn soluble_idx(lat: &Lattice, x: usize, s: &SigmaPartition) -> bool {
    memo_flag(lat, s, Query::Soluble(x), || {
        lat.chief_series(x)
            .windows(2)
            .all(|w| s.sigma_of(lat.order(w[1]) / lat.order(w[0])).len() <= 1)
    })
}

/// `A` permutes with every `x`-conjugate of some Hall σ_i-subgroup of `x`, for every
/// block σ_i. Choosing one Hall subgroup per block independently is the same as choosing
/// one complete Hall σ-set, because the condition is a conjunction over its members.
pub(crate) fn permutable_idx(lat: &Lattice, a: usize, x: usize, s: &SigmaPartition) -> bool {
    memo_flag(lat, s, Query::Permutable(a, x), || {
        halls_idx(lat, x, s).iter().all(|(_, halls)| {
            halls
                .iter()
                .any(|&h| lat.class_in(h, x).iter().all(|&k| lat.permutes(a, k)))
        })
    })
}

/// A chain `K ≤ H ≤ x` with `K` σ-permutable in `H`, `H` σ-permutable in `x`, and `K` not
/// σ-permutable in `x`.
pub(crate) fn psigma_t_violation_idx(
    lat: &Lattice,
    x: usize,
    s: &SigmaPartition,
) -> Option<(usize, usize)> {
    for &h in lat.below(x) {
        if !permutable_idx(lat, h, x, s) {
            continue;
        }
        for &k in lat.below(h) {
            if permutable_idx(lat, k, h, s) && !permutable_idx(lat, k, x, s) {
                return Some((k, h));
            }
        }
    }
    None
}

pub(crate) fn psigma_t_idx(lat: &Lattice, x: usize, s: &SigmaPartition) -> bool {
    memo_flag(lat, s, Query::PsigmaT(x), || {
        psigma_t_violation_idx(lat, x, s).is_none()
    })
}

/// `x/n` is σ-nilpotent: for each block of σ(|x/n|) there is a normal subgroup `M` of
/// `x` above `n` with `M/n` a Hall σ_i-subgroup of `x/n`.
pub(crate) fn quotient_nilpotent_idx(
    lat: &Lattice,
    x: usize,
    n: usize,
    s: &SigmaPartition,
) -> bool {
    let q = lat.order(x) / lat.order(n);
    s.sigma_of(q).into_iter().all(|b| {
        let want = lat.order(n) * s.part(q, b);
        lat.normals(x)
            .iter()
            .any(|&m| lat.order(m) == want && lat.le(n, m))
    })
}

pub(crate) fn residual_idx(lat: &Lattice, x: usize, s: &SigmaPartition) -> Result<usize> {
    if let Some(&r) = lat.memo.lock().residuals.get(&(s.clone(), x)) {
        return Ok(r);
    }
    let good: Vec<usize> = lat
        .normals(x)
        .iter()
        .copied()
        .filter(|&n| quotient_nilpotent_idx(lat, x, n, s))
        .collect();
    let least = *good
        .iter()
        .min_by_key(|&&n| lat.order(n))
        .expect("x/x is trivially σ-nilpotent");
    let meet = good.iter().fold(x, |acc, &n| lat.meet(acc, n));
    if meet != least || !good.iter().all(|&n| lat.le(least, n)) {
        return Err(Error::Internal(format!(
            "σ-nilpotent residual: least member (order {}) differs from intersection (order {})",
            lat.order(least),
            lat.order(meet)
        )));
    }
    lat.memo.lock().residuals.insert((s.clone(), x), least);
    Ok(least)
}

/// First subgroup `E ≤ x` and block σ_i ∈ σ(E) for which `E` is not a D_{σ_i}-group.
pub(crate) fn full_sylow_violation_idx(
    lat: &Lattice,
    x: usize,
    s: &SigmaPartition,
) -> Option<(usize, BlockId)> {
    for &e in lat.below(x) {
        for (b, halls) in halls_idx(lat, e, s) {
            let Some(&w) = halls.first() else {
                return Some((e, b));
            };
            let class = lat.class_in(w, e);
            let covered = lat.below(e).iter().all(|&y| {
                !s.is_block_number(lat.order(y), b) || class.iter().any(|&c| lat.le(y, c))
            });
            if !covered {
                return Some((e, b));
            }
        }
    }
    None
}

pub(crate) fn pi_separable_idx(lat: &Lattice, x: usize, pi: &BTreeSet<u64>) -> bool {
    lat.chief_series(x).windows(2).all(|w| {
        let support = primes::prime_divisors(lat.order(w[1]) / lat.order(w[0]));
        support.iter().all(|p| pi.contains(p)) || support.iter().all(|p| !pi.contains(p))
    })
}

/// `O_{σ_i}(x)`: the largest normal σ_i-subgroup.
pub(crate) fn o_sigma_idx(
    lat: &Lattice,
    x: usize,
    s: &SigmaPartition,
    b: BlockId,
) -> Result<usize> {
    let cands: Vec<usize> = lat
        .normals(x)
        .iter()
        .copied()
        .filter(|&n| s.is_block_number(lat.order(n), b))
        .collect();
    let top = *cands
        .iter()
        .max_by_key(|&&n| lat.order(n))
        .expect("trivial subgroup qualifies");
    if !cands.iter().all(|&n| lat.le(n, top)) {
        return Err(Error::Internal(
            "normal σ_i-subgroups have no unique maximum".into(),
        ));
    }
    Ok(top)
}

/// Every element of `x` maps each `d ∈ D` into `⟨d⟩`.
pub(crate) fn power_automorphisms_idx(lat: &Lattice, x: usize, d: usize) -> bool {
    let t = &lat.table;
    let dset = &lat.subs[d].set;
    let cyclic: HashMap<usize, crate::bitset::ElemSet> =
        dset.iter().map(|e| (e, t.closure(&[e]))).collect();
    lat.subs[x]
        .set
        .iter()
        .all(|g| dset.iter().all(|e| cyclic[&e].contains(t.conj(e, g))))
}

// ---- public API ----

/// `σ(n)`.
pub fn sigma_of(n: u64, sigma: &SigmaPartition) -> BTreeSet<BlockId> {
    sigma.sigma_of(n)
}

pub fn is_sigma_primary(g: &impl AsSubgroup, sigma: &SigmaPartition) -> Result<bool> {
    Ok(sigma.sigma_of(g.as_subgroup()?.order()).len() <= 1)
}

pub fn is_sigma_nilpotent(g: &impl AsSubgroup, sigma: &SigmaPartition) -> Result<bool> {
    let (lat, x) = locate(&g.as_subgroup()?)?;
    Ok(nilpotent_idx(&lat, x, sigma))
}

pub fn is_sigma_soluble(g: &impl AsSubgroup, sigma: &SigmaPartition) -> Result<bool> {
    let (lat, x) = locate(&g.as_subgroup()?)?;
    Ok(soluble_idx(&lat, x, sigma))
}

/// The lexicographically least Hall σ_i-subgroup for each block, if every block has one.
pub fn complete_hall_sigma_set(
    g: &impl AsSubgroup,
    sigma: &SigmaPartition,
) -> Result<Option<HallSigmaSet>> {
    let g = g.as_subgroup()?;
    let (lat, x) = locate(&g)?;
    let mut members = BTreeMap::new();
    for (b, halls) in halls_idx(&lat, x, sigma) {
        match halls.first() {
            Some(&h) => {
                members.insert(b, from_idx(g.ambient(), &lat, h));
            }
            None => return Ok(None),
        }
    }
    Ok(Some(HallSigmaSet { members }))
}

/// Every complete Hall σ-set, bounded by the ambient group's `hall_set_cap`.
pub fn enumerate_complete_hall_sigma_sets(
    g: &impl AsSubgroup,
    sigma: &SigmaPartition,
) -> Result<Vec<HallSigmaSet>> {
    let g = g.as_subgroup()?;
    let (lat, x) = locate(&g)?;
    let per_block = halls_idx(&lat, x, sigma);
    let total: u64 = per_block.iter().map(|(_, h)| h.len() as u64).product();
    let cap = g.ambient().limits().hall_set_cap;
    if total > cap {
        return Err(Error::Capacity {
            what: "complete Hall σ-set enumeration",
            size: total,
            bound: cap,
        });
    }
    let mut sets = vec![BTreeMap::new()];
    for (b, halls) in &per_block {
        let mut next = Vec::with_capacity(sets.len() * halls.len());
        for partial in &sets {
            for &h in halls {
                let mut m: BTreeMap<BlockId, Subgroup> = partial.clone();
                m.insert(*b, from_idx(g.ambient(), &lat, h));
                next.push(m);
            }
        }
        sets = next;
    }
    Ok(sets
        .into_iter()
        .map(|members| HallSigmaSet { members })
        .collect())
}

/// `A` is σ-permutable in `G`. False for every `A` when `G` has no complete Hall σ-set.
pub fn is_sigma_permutable(
    g: &impl AsSubgroup,
    a: &Subgroup,
    sigma: &SigmaPartition,
) -> Result<bool> {
    let g = g.as_subgroup()?;
    a.same_ambient(&g)?;
    if !a.is_subgroup_of(&g) {
        return Err(Error::input("A is not a subgroup of G"));
    }
    let (lat, x) = locate(&g)?;
    let ai = lat.idx(&a.set).expect("enumerated");
    Ok(permutable_idx(&lat, ai, x, sigma))
}

pub fn is_psigma_t(g: &impl AsSubgroup, sigma: &SigmaPartition) -> Result<bool> {
    let (lat, x) = locate(&g.as_subgroup()?)?;
    Ok(psigma_t_idx(&lat, x, sigma))
}

/// A witness `(K, H)` that σ-permutability is not transitive in `G`.
pub fn psigma_t_violation(
    g: &impl AsSubgroup,
    sigma: &SigmaPartition,
) -> Result<Option<(Subgroup, Subgroup)>> {
    let g = g.as_subgroup()?;
    let (lat, x) = locate(&g)?;
    Ok(psigma_t_violation_idx(&lat, x, sigma).map(|(k, h)| {
        (
            from_idx(g.ambient(), &lat, k),
            from_idx(g.ambient(), &lat, h),
        )
    }))
}

/// `G^{N_σ}`, the least normal subgroup with σ-nilpotent quotient.
pub fn sigma_nilpotent_residual(g: &impl AsSubgroup, sigma: &SigmaPartition) -> Result<Subgroup> {
    let g = g.as_subgroup()?;
    let (lat, x) = locate(&g)?;
    let r = residual_idx(&lat, x, sigma)?;
    Ok(from_idx(g.ambient(), &lat, r))
}

pub fn is_sigma_full_sylow_type(g: &impl AsSubgroup, sigma: &SigmaPartition) -> Result<bool> {
    Ok(sigma_full_sylow_violation(g, sigma)?.is_none())
}

/// A subgroup `E` and block σ_i ∈ σ(E) for which `E` is not a D_{σ_i}-group.
pub fn sigma_full_sylow_violation(
    g: &impl AsSubgroup,
    sigma: &SigmaPartition,
) -> Result<Option<(Subgroup, BlockId)>> {
    let g = g.as_subgroup()?;
    let (lat, x) = locate(&g)?;
    Ok(full_sylow_violation_idx(&lat, x, sigma).map(|(e, b)| (from_idx(g.ambient(), &lat, e), b)))
}

pub fn is_pi_separable(g: &impl AsSubgroup, pi: &BTreeSet<u64>) -> Result<bool> {
    let (lat, x) = locate(&g.as_subgroup()?)?;
    Ok(pi_separable_idx(&lat, x, pi))
}

/// `O_{σ_i}(D)`.
pub fn o_sigma_i(d: &impl AsSubgroup, sigma: &SigmaPartition, block: BlockId) -> Result<Subgroup> {
    let d = d.as_subgroup()?;
    let (lat, x) = locate(&d)?;
    let o = o_sigma_idx(&lat, x, sigma, block)?;
    Ok(from_idx(d.ambient(), &lat, o))
}

/// Every element of `G` induces a power automorphism on the normal subgroup `D`.
pub fn induces_power_automorphisms(g: &impl AsSubgroup, d: &Subgroup) -> Result<bool> {
    let g = g.as_subgroup()?;
    if !crate::structure::is_normal(d, &g)? {
        return Err(Error::input("D is not normal in G"));
    }
    let t = g.table();
    let ok = g
        .set
        .iter()
        .all(|x| d.set.iter().all(|e| t.closure(&[e]).contains(t.conj(e, x))));
    Ok(ok)
}
