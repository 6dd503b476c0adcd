//! Enumerated subgroup lattice of a desk-scale group, addressed by index.
//!
//! Every subgroup of every subgroup of the ambient group is itself an entry, so
//! predicates on a subgroup `X` (its Hall subgroups, normal subgroups, conjugacy
//! classes under `X`) are answered by filtering this one list.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use parking_lot::Mutex;

use crate::bitset::ElemSet;
use crate::group::ElementTable;
use crate::primes;
use crate::quotient::QuotientGroup;
use crate::sigma::SigmaPartition;

pub(crate) struct SubRec {
    pub set: ElemSet,
    pub order: u64,
    pub gens: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Query {
    Nilpotent(usize),
    Soluble(usize),
    Permutable(usize, usize),
    PsigmaT(usize),
}

#[derive(Default)]
pub(crate) struct Memo {
    pub flags: HashMap<SigmaPartition, HashMap<Query, bool>>,
    pub residuals: HashMap<(SigmaPartition, usize), usize>,
}

pub(crate) struct Lattice {
    pub table: Arc<ElementTable>,
    pub subs: Vec<SubRec>,
    index: HashMap<ElemSet, usize>,
    below: Vec<OnceLock<Vec<usize>>>,
    normals: Vec<OnceLock<Vec<usize>>>,
    pub memo: Mutex<Memo>,
    pub quotients: Mutex<HashMap<(usize, usize), QuotientGroup>>,
}

impl Lattice {
    /// Cyclic extension: start from the cyclic subgroups of prime-power order and
    /// repeatedly adjoin one of their generators to every subgroup found so far.
    /// Every finite group is generated by its prime-power-order elements, so each
    /// subgroup is reached from the trivial group one cyclic piece at a time.
    pub fn build(table: Arc<ElementTable>) -> Lattice {
        let n = table.len();
        let mut recs: Vec<SubRec> = Vec::new();
        let mut index: HashMap<ElemSet, usize> = HashMap::new();

        let mut trivial = ElemSet::empty(n);
        trivial.insert(0);
        index.insert(trivial.clone(), 0);
        recs.push(SubRec {
            set: trivial,
            order: 1,
            gens: Vec::new(),
        });

        let mut cyclic_gens = Vec::new();
        for e in 1..n {
            if primes::prime_power_base(table.elem_order(e)).is_none() {
                continue;
            }
            let set = table.closure(&[e]);
            if !index.contains_key(&set) {
                index.insert(set.clone(), recs.len());
                recs.push(SubRec {
                    order: set.len() as u64,
                    set,
                    gens: vec![e],
                });
                cyclic_gens.push(e);
            }
        }

        let mut k = 0;
        while k < recs.len() {
            for &x in &cyclic_gens {
                if recs[k].set.contains(x) {
                    continue;
                }
                let set = table.extend(&recs[k].set, &recs[k].gens, x);
                if !index.contains_key(&set) {
                    let mut gens = recs[k].gens.clone();
                    gens.push(x);
                    index.insert(set.clone(), recs.len());
                    recs.push(SubRec {
                        order: set.len() as u64,
                        set,
                        gens,
                    });
                }
            }
            k += 1;
        }

        recs.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.set.cmp_lex(&b.set)));
        let index = recs
            .iter()
            .enumerate()
            .map(|(i, r)| (r.set.clone(), i))
            .collect();
        let count = recs.len();
        Lattice {
            table,
            subs: recs,
            index,
            below: (0..count).map(|_| OnceLock::new()).collect(),
            normals: (0..count).map(|_| OnceLock::new()).collect(),
            memo: Mutex::new(Memo::default()),
            quotients: Mutex::new(HashMap::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn trivial(&self) -> usize {
        0
    }

    pub fn idx(&self, set: &ElemSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn order(&self, i: usize) -> u64 {
        self.subs[i].order
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.subs[a].set.is_subset(&self.subs[b].set)
    }

    /// Subgroups of `x`, in canonical order.
    pub fn below(&self, x: usize) -> &[usize] {
        self.below[x].get_or_init(|| {
            let ox = self.subs[x].order;
            (0..self.subs.len())
                .take_while(|&j| self.subs[j].order <= ox)
                .filter(|&j| ox % self.subs[j].order == 0 && self.le(j, x))
                .collect()
        })
    }

    pub fn is_normal(&self, a: usize, x: usize) -> bool {
        self.le(a, x)
            && self
                .table
                .normalizes(&self.subs[a].set, &self.subs[a].gens, &self.subs[x].gens)
    }

    /// Normal subgroups of `x`, in canonical order.
    pub fn normals(&self, x: usize) -> &[usize] {
        self.normals[x].get_or_init(|| {
            self.below(x)
                .iter()
                .copied()
                .filter(|&a| self.is_normal(a, x))
                .collect()
        })
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let set = self.subs[a].set.intersection(&self.subs[b].set);
        self.idx(&set)
            .expect("intersection of subgroups is a subgroup")
    }

    pub fn meet_order(&self, a: usize, b: usize) -> u64 {
        self.subs[a].set.intersection_len(&self.subs[b].set) as u64
    }

    /// Smallest subgroup containing both.
    pub fn join(&self, a: usize, b: usize) -> usize {
        let lo = self.subs[a].order.max(self.subs[b].order);
        let start = self.subs.partition_point(|r| r.order < lo);
        (start..self.subs.len())
            .find(|&j| self.le(a, j) && self.le(b, j))
            .expect("the whole group contains both")
    }

    /// `|AB| = |A||B|/|A ∩ B|`.
    pub fn product_order(&self, a: usize, b: usize) -> u64 {
        self.subs[a].order * self.subs[b].order / self.meet_order(a, b)
    }

    /// `AB = BA`, decided as `|AB| = |⟨A, B⟩|`: the product set lies inside the join and
    /// is all of it exactly when it is a subgroup.
    pub fn permutes(&self, a: usize, b: usize) -> bool {
        if self.le(a, b) || self.le(b, a) {
            return true;
        }
        self.product_order(a, b) == self.subs[self.join(a, b)].order
    }

    pub fn conj(&self, a: usize, x_elem: usize) -> usize {
        let set = self.table.conj_set(&self.subs[a].set, x_elem);
        self.idx(&set)
            .expect("conjugate of a subgroup is a subgroup")
    }

    /// Conjugacy class of `a` under the subgroup `x`, in canonical order.
    pub fn class_in(&self, a: usize, x: usize) -> Vec<usize> {
        let mut class = vec![a];
        let mut k = 0;
        while k < class.len() {
            let c = class[k];
            for &g in &self.subs[x].gens {
                let d = self.conj(c, g);
                if !class.contains(&d) {
                    class.push(d);
                }
            }
            k += 1;
        }
        class.sort_unstable();
        class
    }

    /// Subgroups of `x` whose order is exactly `order`.
    pub fn of_order_below(&self, x: usize, order: u64) -> Vec<usize> {
        self.below(x)
            .iter()
            .copied()
            .filter(|&j| self.subs[j].order == order)
            .collect()
    }

    /// Maximal subgroups of `x`.
    pub fn maximals(&self, x: usize) -> Vec<usize> {
        let proper: Vec<usize> = self.below(x).iter().copied().filter(|&j| j != x).collect();
        proper
            .iter()
            .copied()
            .filter(|&m| {
                !proper
                    .iter()
                    .any(|&k| k != m && self.subs[k].order > self.subs[m].order && self.le(m, k))
            })
            .collect()
    }

    /// Minimal normal subgroups of `x`.
    pub fn minimal_normals(&self, x: usize) -> Vec<usize> {
        let nontrivial: Vec<usize> = self
            .normals(x)
            .iter()
            .copied()
            .filter(|&j| j != 0)
            .collect();
        nontrivial
            .iter()
            .copied()
            .filter(|&m| !nontrivial.iter().any(|&k| k != m && self.le(k, m)))
            .collect()
    }

    /// Chief series `1 = N0 < N1 < ... < Nk = x` of normal subgroups of `x`, choosing at
    /// each step the lexicographically least minimal cover.
    pub fn chief_series(&self, x: usize) -> Vec<usize> {
        let normals = self.normals(x);
        let mut series = vec![self.trivial()];
        let mut current = self.trivial();
        while current != x {
            let above: Vec<usize> = normals
                .iter()
                .copied()
                .filter(|&m| m != current && self.le(current, m))
                .collect();
            let next = above
                .iter()
                .copied()
                .filter(|&m| !above.iter().any(|&k| k != m && self.le(k, m)))
                .min_by(|&a, &b| self.subs[a].set.cmp_lex(&self.subs[b].set))
                .expect("x itself lies above every proper normal subgroup");
            series.push(next);
            current = next;
        }
        series
    }

    pub fn is_abelian(&self, x: usize) -> bool {
        let g = &self.subs[x].gens;
        g.iter().all(|&a| {
            g.iter()
                .all(|&b| self.table.mul(a, b) == self.table.mul(b, a))
        })
    }

    /// Cached quotient of subgroup `x` by its normal subgroup `n`.
    pub fn quotient_cached(
        &self,
        key: (usize, usize),
        build: impl FnOnce() -> crate::error::Result<QuotientGroup>,
    ) -> crate::error::Result<QuotientGroup> {
        if let Some(q) = self.quotients.lock().get(&key) {
            return Ok(q.clone());
        }
        let q = build()?;
        self.quotients.lock().entry(key).or_insert(q.clone());
        Ok(q)
    }
}
