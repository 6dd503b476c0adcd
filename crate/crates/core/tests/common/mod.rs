//! Brute-force reference implementations. Everything here works on explicit element
//! lists with a multiplication table built from `Perm::compose`, and shares no code
//! with the library beyond the permutation type.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use sigmacover::Perm;

pub type Set = BTreeSet<usize>;

pub struct Brute {
    pub degree: usize,
    pub elems: Vec<Perm>,
    index: HashMap<Perm, usize>,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn primes_of(n: u64) -> BTreeSet<u64> {
    prime_factors(n).into_iter().collect()
}

pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut r = 1;
    while n % p == 0 {
        n /= p;
        r *= p;
    }
    r
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

impl Brute {
    pub fn new(degree: usize, gens: &[Perm]) -> Brute {
        let id = Perm::identity(degree);
        let mut elems = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p = elems[i].compose(g);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                mul.push(index[&a.compose(b)]);
            }
        }
        let inv = elems.iter().map(|p| index[&p.inverse()]).collect();
        Brute {
            degree,
            elems,
            index,
            mul,
            inv,
        }
    }

    pub fn order(&self) -> u64 {
        self.elems.len() as u64
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elems.len() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn whole(&self) -> Set {
        (0..self.elems.len()).collect()
    }

    pub fn trivial(&self) -> Set {
        Set::from([0])
    }

    pub fn elem_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn closure(&self, gens: &[usize]) -> Set {
        let mut set = Set::from([0]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// Every subgroup, by repeatedly adjoining single elements until nothing new appears.
    pub fn subgroups(&self) -> Vec<Set> {
        let mut seen: HashSet<Set> = HashSet::new();
        let mut frontier: Vec<(Set, Vec<usize>)> = vec![(self.trivial(), vec![])];
        seen.insert(self.trivial());
        while let Some((h, gens)) = frontier.pop() {
            for g in 0..self.elems.len() {
                if h.contains(&g) {
                    continue;
                }
                let mut more = gens.clone();
                more.push(g);
                let k = self.closure(&more);
                if seen.insert(k.clone()) {
                    frontier.push((k, more));
                }
            }
        }
        let mut all: Vec<Set> = seen.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        all
    }

    pub fn conj_set(&self, h: &Set, x: usize) -> Set {
        h.iter()
            .map(|&a| self.mul(self.mul(self.inv(x), a), x))
            .collect()
    }

    pub fn is_normal_in(&self, h: &Set, g: &Set) -> bool {
        g.iter().all(|&x| self.conj_set(h, x) == *h)
    }

    pub fn product(&self, a: &Set, b: &Set) -> Set {
        a.iter()
            .flat_map(|&x| b.iter().map(move |&y| self.mul(x, y)))
            .collect()
    }

    pub fn permutes(&self, a: &Set, b: &Set) -> bool {
        self.product(a, b) == self.product(b, a)
    }

    pub fn perms(&self, s: &Set) -> Vec<Perm> {
        s.iter().map(|&i| self.elems[i].clone()).collect()
    }

    pub fn to_indices(&self, perms: &[Perm]) -> Set {
        perms.iter().map(|p| self.index[p]).collect()
    }

    pub fn derived(&self, h: &Set) -> Set {
        let comms: Vec<usize> = h
            .iter()
            .flat_map(|&a| {
                h.iter().map(move |&b| {
                    let ab = self.mul(a, b);
                    self.mul(self.mul(self.inv(a), self.inv(b)), ab)
                })
            })
            .collect();
        self.closure(&comms)
    }

    /// Derived series reaches the identity.
    pub fn is_soluble(&self, h: &Set) -> bool {
        let mut cur = h.clone();
        loop {
            if cur.len() == 1 {
                return true;
            }
            let next = self.derived(&cur);
            if next == cur {
                return false;
            }
            cur = next;
        }
    }

    /// For each prime p, the elements of p-power order number exactly |H|_p, which
    /// happens iff the Sylow p-subgroup is unique (normal).
    pub fn is_nilpotent(&self, h: &Set) -> bool {
        let n = h.len() as u64;
        prime_factors(n).into_iter().all(|p| {
            let count = h
                .iter()
                .filter(|&&x| is_power_of(self.elem_order(x), p))
                .count() as u64;
            count == p_part(n, p)
        })
    }

    fn coset_order(&self, x: usize, n: &Set) -> u64 {
        let mut y = x;
        let mut k = 1;
        while !n.contains(&y) {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// `G/N` nilpotent, by counting cosets of p-power order.
    pub fn quotient_is_nilpotent(&self, g: &Set, n: &Set) -> bool {
        let q = (g.len() / n.len()) as u64;
        prime_factors(q).into_iter().all(|p| {
            let count = g
                .iter()
                .filter(|&&x| is_power_of(self.coset_order(x, n), p))
                .count() as u64;
            count / n.len() as u64 == p_part(q, p)
        })
    }

    /// Intersection of the normal subgroups with nilpotent quotient; asserts that the
    /// intersection is itself one of them.
    pub fn nilpotent_residual(&self, subgroups: &[Set]) -> Set {
        let g = self.whole();
        let good: Vec<&Set> = subgroups
            .iter()
            .filter(|n| self.is_normal_in(n, &g) && self.quotient_is_nilpotent(&g, n))
            .collect();
        let meet = good
            .iter()
            .fold(g.clone(), |acc, n| acc.intersection(n).copied().collect());
        assert!(good.contains(&&meet), "residual is not itself a member");
        meet
    }

    /// Subgroups of `within` whose order is exactly `order`.
    pub fn of_order<'a>(&self, subgroups: &'a [Set], within: &Set, order: usize) -> Vec<&'a Set> {
        subgroups
            .iter()
            .filter(|s| s.len() == order && s.is_subset(within))
            .collect()
    }

    /// Complete Hall σ-sets of `x` with blocks given as prime sets.
    pub fn hall_sets<'a>(
        &self,
        subgroups: &'a [Set],
        x: &Set,
        blocks: &[BTreeSet<u64>],
    ) -> Vec<Vec<&'a Set>> {
        let n = x.len() as u64;
        let mut sets: Vec<Vec<&Set>> = vec![vec![]];
        for b in blocks {
            let want: u64 = b.iter().map(|&p| p_part(n, p)).product();
            if want == 1 {
                continue;
            }
            let halls = self.of_order(subgroups, x, want as usize);
            sets = sets
                .iter()
                .flat_map(|s| {
                    halls.iter().map(move |h| {
                        let mut t = s.clone();
                        t.push(*h);
                        t
                    })
                })
                .collect();
        }
        sets
    }

    /// `A` permutes with every `x`-conjugate of every member of some complete Hall σ-set
    /// of `x`, as element sets.
    pub fn is_sigma_permutable(
        &self,
        subgroups: &[Set],
        a: &Set,
        x: &Set,
        blocks: &[BTreeSet<u64>],
    ) -> bool {
        self.hall_sets(subgroups, x, blocks).iter().any(|set| {
            set.iter()
                .all(|h| x.iter().all(|&g| self.permutes(a, &self.conj_set(h, g))))
        })
    }

    pub fn is_psigma_t(&self, subgroups: &[Set], x: &Set, blocks: &[BTreeSet<u64>]) -> bool {
        let below: Vec<&Set> = subgroups.iter().filter(|s| s.is_subset(x)).collect();
        below.iter().all(|h| {
            if !self.is_sigma_permutable(subgroups, h, x, blocks) {
                return true;
            }
            below.iter().filter(|k| k.is_subset(h)).all(|k| {
                !self.is_sigma_permutable(subgroups, k, h, blocks)
                    || self.is_sigma_permutable(subgroups, k, x, blocks)
            })
        })
    }

    /// Every conjugation map of `g` sends each `d ∈ D` into `⟨d⟩`.
    pub fn power_automorphisms(&self, g: &Set, d: &Set) -> bool {
        d.iter().all(|&e| {
            let cyc = self.closure(&[e]);
            g.iter()
                .all(|&x| cyc.contains(&self.mul(self.mul(self.inv(x), e), x)))
        })
    }

    pub fn is_abelian(&self, h: &Set) -> bool {
        h.iter()
            .all(|&a| h.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// Singleton blocks: the classical partition restricted to `π(n)`.
pub fn singleton_blocks(n: u64) -> Vec<BTreeSet<u64>> {
    prime_factors(n)
        .into_iter()
        .map(|p| BTreeSet::from([p]))
        .collect()
}

/// Soluble-group PST test through the structural route, for the classical partition:
/// some normal abelian Hall subgroup `D` of odd order on which `G` acts by power
/// automorphisms has a nilpotent complement, and for each prime `p` the Sylow
/// p-subgroup of `D` has a normal complement in some Sylow p-subgroup of `G`.
pub fn structural_pst(b: &Brute, subgroups: &[Set]) -> bool {
    let g = b.whole();
    let n = g.len();
    subgroups.iter().any(|d| {
        let dn = d.len();
        let hall = gcd(dn, n / dn) == 1;
        if !(hall
            && dn % 2 == 1
            && b.is_normal_in(d, &g)
            && b.is_abelian(d)
            && b.power_automorphisms(&g, d))
        {
            return false;
        }
        let complement = b
            .of_order(subgroups, &g, n / dn)
            .into_iter()
            .any(|m| m.intersection(d).count() == 1 && b.is_nilpotent(m));
        complement
            && primes_of(n as u64).into_iter().all(|p| {
                let o: Set = d
                    .iter()
                    .copied()
                    .filter(|&x| is_power_of(b.elem_order(x), p))
                    .collect();
                b.of_order(subgroups, &g, p_part(n as u64, p) as usize)
                    .into_iter()
                    .any(|sylow| {
                        o.is_subset(sylow)
                            && subgroups.iter().any(|k| {
                                k.is_subset(sylow)
                                    && k.len() * o.len() == sylow.len()
                                    && k.intersection(&o).count() == 1
                                    && b.is_normal_in(k, sylow)
                            })
                    })
            })
    })
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
