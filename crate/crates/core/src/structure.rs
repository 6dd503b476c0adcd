//! Structural subgroup computations: Sylow and Hall subgroups, the normal lattice,
//! chief series, quotients, supplements, Frattini subgroups.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{AsSubgroup, PermGroup, Subgroup};
use crate::lattice::Lattice;
use crate::perm::Perm;
use crate::primes;
use crate::quotient::QuotientGroup;

/// One factor `upper/lower` of a chief series.
#[derive(Clone, Debug)]
pub struct ChiefFactor {
    pub lower: Subgroup,
    pub upper: Subgroup,
    pub factor_order: u64,
    pub prime_support: BTreeSet<u64>,
}

pub(crate) fn locate(s: &Subgroup) -> Result<(Arc<Lattice>, usize)> {
    let lat = s.ambient().lattice()?;
    let i = lat
        .idx(&s.set)
        .ok_or_else(|| Error::Internal("subgroup missing from the enumerated lattice".into()))?;
    Ok((lat, i))
}

pub(crate) fn from_idx(ambient: &PermGroup, lat: &Lattice, i: usize) -> Subgroup {
    let r = &lat.subs[i];
    Subgroup::from_parts(ambient.clone(), r.set.clone(), r.gens.clone())
}

fn to_subs(
    ambient: &PermGroup,
    lat: &Lattice,
    idxs: impl IntoIterator<Item = usize>,
) -> Vec<Subgroup> {
    idxs.into_iter()
        .map(|i| from_idx(ambient, lat, i))
        .collect()
}

fn check_within(h: &Subgroup, g: &Subgroup) -> Result<()> {
    h.same_ambient(g)?;
    if !h.set.is_subset(&g.set) {
        return Err(Error::input("subgroup is not contained in the group"));
    }
    Ok(())
}

/// `⟨gens⟩` inside `G`.
pub fn generated_subgroup(g: &impl AsSubgroup, gens: &[Perm]) -> Result<Subgroup> {
    let g = g.as_subgroup()?;
    let t = g.table();
    let mut idx = Vec::new();
    for x in gens {
        let i = t
            .index_of(x)
            .filter(|&i| g.set.contains(i))
            .ok_or_else(|| Error::input(format!("generator {} is not in the group", x)))?;
        if i != 0 && !idx.contains(&i) {
            idx.push(i);
        }
    }
    let set = t.closure(&idx);
    Ok(g.sibling(set, idx))
}

/// Smallest normal subgroup of `G` containing `S`.
pub fn normal_closure(g: &impl AsSubgroup, s: &Subgroup) -> Result<Subgroup> {
    let g = g.as_subgroup()?;
    check_within(s, &g)?;
    let t = g.table();
    let mut gens = s.gens.clone();
    let mut set = s.set.clone();
    loop {
        let mut added = false;
        for &x in &g.gens {
            for k in 0..gens.len() {
                let c = t.conj(gens[k], x);
                if !set.contains(c) {
                    gens.push(c);
                    set = t.closure(&gens);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    Ok(g.sibling(set, gens))
}

/// `C_G(H)`.
pub fn centralizer(g: &impl AsSubgroup, h: &Subgroup) -> Result<Subgroup> {
    let g = g.as_subgroup()?;
    h.same_ambient(&g)?;
    let t = g.table();
    let mut set = ElemSet::empty(t.len());
    let mut gens = Vec::new();
    for x in g.set.iter() {
        if h.gens.iter().all(|&y| t.mul(x, y) == t.mul(y, x)) {
            set.insert(x);
            if x != 0 && !t.closure(&gens).contains(x) {
                gens.push(x);
            }
        }
    }
    Ok(g.sibling(set, gens))
}

/// `G' `: normal closure of the commutators of generators.
pub fn derived_subgroup(g: &impl AsSubgroup) -> Result<Subgroup> {
    let g = g.as_subgroup()?;
    let t = g.table();
    let mut comms = Vec::new();
    for &a in &g.gens {
        for &b in &g.gens {
            let c = t.comm(a, b);
            if c != 0 && !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    let seed = g.sibling(t.closure(&comms), comms);
    normal_closure(&g, &seed)
}

/// `A ∩ B`.
pub fn intersection(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    a.same_ambient(b)?;
    let t = a.table();
    let set = a.set.intersection(&b.set);
    let gens = minimal_gens(&t, &set);
    Ok(a.sibling(set, gens))
}

fn minimal_gens(t: &crate::group::ElementTable, set: &ElemSet) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = t.closure(&gens);
    for x in set.iter() {
        if !span.contains(x) {
            gens.push(x);
            span = t.closure(&gens);
        }
    }
    gens
}

/// A Sylow `p`-subgroup, grown from a `p`-element of largest order by repeatedly
/// adjoining an element of order `p` modulo the current subgroup from its normalizer.
pub fn sylow_subgroup(g: &impl AsSubgroup, p: u64) -> Result<Subgroup> {
    if !primes::is_prime(p) {
        return Err(Error::input(format!("{} is not prime", p)));
    }
    let g = g.as_subgroup()?;
    let t = g.table();
    let target = primes::part_of(g.order(), |q| q == p);
    if target == 1 {
        return Ok(g.sibling(t.closure(&[]), Vec::new()));
    }
    let is_p_elem = |x: usize| primes::is_number_of(t.elem_order(x), |q| q == p);
    let start = g
        .set
        .iter()
        .filter(|&x| is_p_elem(x))
        .max_by_key(|&x| (t.elem_order(x), std::cmp::Reverse(x)))
        .expect("the identity is a p-element");
    let mut gens = vec![start];
    let mut set = t.closure(&gens);
    while (set.len() as u64) < target {
        let step = g.set.iter().find(|&y| {
            !set.contains(y)
                && set.contains(t.pow(y, p))
                && gens.iter().all(|&h| set.contains(t.conj(h, y)))
        });
        match step {
            Some(y) => {
                set = t.extend(&set, &gens, y);
                gens.push(y);
            }
            None => {
                // Not reachable by Sylow's theorems; fall back to the lattice.
                let (lat, gi) = locate(&g)?;
                let s = lat
                    .of_order_below(gi, target)
                    .into_iter()
                    .next()
                    .ok_or_else(|| Error::Internal("no Sylow subgroup found".into()))?;
                return Ok(from_idx(g.ambient(), &lat, s));
            }
        }
    }
    Ok(g.sibling(set, gens))
}

/// All subgroups of index `p` in the `p`-group `P`, one per hyperplane of `P/Φ(P)`.
pub fn maximal_subgroups_of_p_group(pg: &Subgroup) -> Result<Vec<Subgroup>> {
    if pg.is_trivial() {
        return Ok(Vec::new());
    }
    let p = primes::prime_power_base(pg.order())
        .ok_or_else(|| Error::input(format!("order {} is not a prime power", pg.order())))?;
    let t = pg.table();
    let members: Vec<usize> = pg.set.iter().collect();

    // Φ(P) = P' P^p for a p-group.
    let mut phi_gens = Vec::new();
    let mut phi = t.closure(&phi_gens);
    for &a in &members {
        let mut cands = vec![t.pow(a, p)];
        cands.extend(members.iter().map(|&b| t.comm(a, b)));
        for c in cands {
            if !phi.contains(c) {
                phi_gens.push(c);
                phi = t.closure(&phi_gens);
            }
        }
    }

    // Basis of P/Φ(P).
    let mut basis = Vec::new();
    let mut span_gens = phi_gens.clone();
    let mut span = phi.clone();
    for &a in &members {
        if !span.contains(a) {
            basis.push(a);
            span_gens.push(a);
            span = t.closure(&span_gens);
        }
    }
    let d = basis.len();

    let mut out = Vec::new();
    // Normalized functionals: first nonzero coordinate equals 1.
    for code in 0..(p as usize).pow(d as u32) {
        let mut c = Vec::with_capacity(d);
        let mut k = code;
        for _ in 0..d {
            c.push((k % p as usize) as u64);
            k /= p as usize;
        }
        let lead = match c.iter().position(|&v| v != 0) {
            Some(l) if c[l] == 1 => l,
            _ => continue,
        };
        let mut gens = phi_gens.clone();
        for j in 0..d {
            if j == lead {
                continue;
            }
            if c[j] == 0 {
                gens.push(basis[j]);
            } else {
                gens.push(t.mul(basis[j], t.pow(basis[lead], p - c[j])));
            }
        }
        let set = t.closure(&gens);
        debug_assert_eq!(set.len() as u64 * p, pg.order());
        out.push(pg.sibling(set, gens));
    }
    out.sort_by(|a, b| a.set.cmp_lex(&b.set));
    Ok(out)
}

/// Every subgroup, ordered by size then lexicographically by element set.
pub fn all_subgroups(g: &impl AsSubgroup) -> Result<Vec<Subgroup>> {
    let g = g.as_subgroup()?;
    let (lat, x) = locate(&g)?;
    Ok(to_subs(g.ambient(), &lat, lat.below(x).iter().copied()))
}

pub fn normal_subgroups(g: &impl AsSubgroup) -> Result<Vec<Subgroup>> {
    let g = g.as_subgroup()?;
    let (lat, x) = locate(&g)?;
    Ok(to_subs(g.ambient(), &lat, lat.normals(x).iter().copied()))
}

pub fn minimal_normal_subgroups(g: &impl AsSubgroup) -> Result<Vec<Subgroup>> {
    let g = g.as_subgroup()?;
    if g.is_trivial() {
        return Err(Error::input(
            "the trivial group has no minimal normal subgroups",
        ));
    }
    let (lat, x) = locate(&g)?;
    Ok(to_subs(g.ambient(), &lat, lat.minimal_normals(x)))
}

pub fn is_normal(h: &Subgroup, g: &impl AsSubgroup) -> Result<bool> {
    let g = g.as_subgroup()?;
    h.same_ambient(&g)?;
    Ok(h.set.is_subset(&g.set) && g.table().normalizes(&h.set, &h.gens, &g.gens))
}

pub fn chief_series(g: &impl AsSubgroup) -> Result<Vec<ChiefFactor>> {
    let g = g.as_subgroup()?;
    let (lat, x) = locate(&g)?;
    let series = lat.chief_series(x);
    Ok(series
        .windows(2)
        .map(|w| {
            let factor_order = lat.order(w[1]) / lat.order(w[0]);
            ChiefFactor {
                lower: from_idx(g.ambient(), &lat, w[0]),
                upper: from_idx(g.ambient(), &lat, w[1]),
                factor_order,
                prime_support: primes::prime_divisors(factor_order),
            }
        })
        .collect())
}

pub fn quotient_group(g: &impl AsSubgroup, n: &Subgroup) -> Result<QuotientGroup> {
    QuotientGroup::new(g, n)
}

/// All `T ≤ G` with `VT = G`.
pub fn supplements(g: &impl AsSubgroup, v: &Subgroup) -> Result<Vec<Subgroup>> {
    let g = g.as_subgroup()?;
    check_within(v, &g)?;
    let (lat, x) = locate(&g)?;
    let vi = lat.idx(&v.set).expect("subgroup of an enumerated group");
    Ok(to_subs(g.ambient(), &lat, supplement_idxs(&lat, x, vi)))
}

pub(crate) fn supplement_idxs(lat: &Lattice, x: usize, v: usize) -> Vec<usize> {
    lat.below(x)
        .iter()
        .copied()
        .filter(|&t| lat.product_order(v, t) == lat.order(x))
        .collect()
}

/// A Hall `π`-subgroup (lexicographically least), if one exists.
pub fn hall_subgroup(g: &impl AsSubgroup, pi: &BTreeSet<u64>) -> Result<Option<Subgroup>> {
    let g = g.as_subgroup()?;
    let (lat, x) = locate(&g)?;
    let target = primes::part_of(g.order(), |p| pi.contains(&p));
    Ok(lat
        .of_order_below(x, target)
        .into_iter()
        .next()
        .map(|i| from_idx(g.ambient(), &lat, i)))
}

/// `Φ(G)`, the intersection of the maximal subgroups (`G` itself when `G = 1`).
pub fn frattini_subgroup(g: &impl AsSubgroup) -> Result<Subgroup> {
    let g = g.as_subgroup()?;
    let (lat, x) = locate(&g)?;
    let phi = lat
        .maximals(x)
        .into_iter()
        .fold(x, |acc, m| lat.meet(acc, m));
    Ok(from_idx(g.ambient(), &lat, phi))
}
