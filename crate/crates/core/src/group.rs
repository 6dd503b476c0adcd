use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::bitset::ElemSet;
use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::perm::Perm;

/// Size bounds for the desk-scale algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group whose full element list is cached.
    pub element_cache: u64,
    /// Largest group whose subgroup lattice is enumerated.
    pub subgroup_bound: u64,
    /// Largest number of complete Hall σ-sets enumerated explicitly.
    pub hall_set_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cache: 20_000,
            subgroup_bound: 2_000,
            hall_set_cap: 100_000,
        }
    }
}

struct GroupData {
    degree: usize,
    gens: Vec<Perm>,
    chain: StabChain,
    order: u64,
    limits: Limits,
    table: OnceLock<Result<Arc<ElementTable>>>,
    lattice: OnceLock<Result<Arc<Lattice>>>,
}

/// A permutation group given by generators, with a stabilizer chain built on construction.
///
/// Cloning is cheap; clones share the chain and every lazily built cache.
#[derive(Clone)]
pub struct PermGroup(Arc<GroupData>);

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        PermGroup::with_limits(degree, gens, Limits::default())
    }

    pub fn with_limits(degree: usize, gens: Vec<Perm>, limits: Limits) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::input(format!(
                    "generator {} has degree {}, expected {}",
                    g,
                    g.degree(),
                    degree
                )));
            }
        }
        let chain = StabChain::new(degree, &gens);
        let order = chain.order();
        Ok(PermGroup(Arc::new(GroupData {
            degree,
            gens,
            chain,
            order,
            limits,
            table: OnceLock::new(),
            lattice: OnceLock::new(),
        })))
    }

    /// Parses generators in cycle notation.
    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<PermGroup> {
        let gens = gens
            .iter()
            .map(|s| Perm::parse(s, degree))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.0.gens
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn limits(&self) -> Limits {
        self.0.limits
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.0.degree)
    }

    pub fn base(&self) -> Vec<usize> {
        self.0.chain.base()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.0.chain.transversal_sizes()
    }

    pub fn contains(&self, x: &Perm) -> Result<bool> {
        if x.degree() != self.0.degree {
            return Err(Error::input(format!(
                "permutation of degree {} tested against group of degree {}",
                x.degree(),
                self.0.degree
            )));
        }
        Ok(self.0.chain.contains(x))
    }

    /// Sorted element list. Fails past the element-cache bound.
    pub fn elements(&self) -> Result<Vec<Perm>> {
        Ok(self.table()?.elements.clone())
    }

    pub fn ptr_eq(&self, other: &PermGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(&self) -> Result<Subgroup> {
        let t = self.table()?;
        let gens = self
            .0
            .gens
            .iter()
            .map(|g| t.index_of(g).expect("generator is a member"))
            .filter(|&i| i != 0)
            .collect();
        Ok(Subgroup::from_parts(
            self.clone(),
            ElemSet::full(t.len()),
            gens,
        ))
    }

    pub fn trivial_subgroup(&self) -> Result<Subgroup> {
        let t = self.table()?;
        let mut set = ElemSet::empty(t.len());
        set.insert(0);
        Ok(Subgroup::from_parts(self.clone(), set, Vec::new()))
    }

    pub(crate) fn table(&self) -> Result<Arc<ElementTable>> {
        self.0
            .table
            .get_or_init(|| {
                let limits = self.0.limits;
                if self.0.order > limits.element_cache {
                    return Err(Error::Capacity {
                        what: "element cache",
                        size: self.0.order,
                        bound: limits.element_cache,
                    });
                }
                let mut elements = self.0.chain.elements();
                elements.sort();
                Ok(Arc::new(ElementTable::new(
                    elements,
                    self.0.order <= limits.subgroup_bound,
                )))
            })
            .clone()
    }

    pub(crate) fn lattice(&self) -> Result<Arc<Lattice>> {
        self.0
            .lattice
            .get_or_init(|| {
                let limits = self.0.limits;
                if self.0.order > limits.subgroup_bound {
                    return Err(Error::Capacity {
                        what: "subgroup enumeration",
                        size: self.0.order,
                        bound: limits.subgroup_bound,
                    });
                }
                Ok(Arc::new(Lattice::build(self.table()?)))
            })
            .clone()
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(deg {}, order {}, gens [",
            self.degree(),
            self.order()
        )?;
        for (k, g) in self.generators().iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", g)?;
        }
        f.write_str("])")
    }
}

/// Sorted elements of a group with index lookup and, for small groups, a Cayley table.
pub(crate) struct ElementTable {
    pub elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    inverse: Vec<u32>,
    mul: Option<Vec<u32>>,
}

impl ElementTable {
    fn new(elements: Vec<Perm>, with_table: bool) -> ElementTable {
        let index: HashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        let n = elements.len();
        let mul = with_table.then(|| {
            let mut m = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    m.push(index[&a.compose(b)]);
                }
            }
            m
        });
        ElementTable {
            elements,
            index,
            inverse,
            mul,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul {
            Some(m) => m[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])] as usize,
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `x⁻¹ a x`.
    #[inline]
    pub fn conj(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), a), x)
    }

    pub fn comm(&self, a: usize, b: usize) -> usize {
        // [a,b] = a⁻¹ b⁻¹ a b
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn elem_order(&self, a: usize) -> u64 {
        self.elements[a].order()
    }

    /// `⟨gens⟩` by breadth-first closure.
    pub fn closure(&self, gens: &[usize]) -> ElemSet {
        let mut set = ElemSet::empty(self.len());
        set.insert(0);
        let mut list = vec![0usize];
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    list.push(y);
                }
            }
            k += 1;
        }
        set
    }

    /// `⟨U, x⟩` where `base` is the subgroup `U = ⟨base_gens⟩`, added coset by coset.
    pub fn extend(&self, base: &ElemSet, base_gens: &[usize], x: usize) -> ElemSet {
        let members: Vec<usize> = base.iter().collect();
        let mut set = base.clone();
        let mut gens: Vec<usize> = base_gens.to_vec();
        gens.push(x);
        let mut reps = vec![0usize];
        let mut k = 0;
        while k < reps.len() {
            let r = reps[k];
            for &s in &gens {
                let y = self.mul(r, s);
                if !set.contains(y) {
                    for &u in &members {
                        set.insert(self.mul(u, y));
                    }
                    reps.push(y);
                }
            }
            k += 1;
        }
        set
    }

    /// Conjugate of an element set by element `x`.
    pub fn conj_set(&self, set: &ElemSet, x: usize) -> ElemSet {
        let mut out = ElemSet::empty(self.len());
        for a in set.iter() {
            out.insert(self.conj(a, x));
        }
        out
    }

    /// Whether `⟨gens_a⟩` is normalized by every element of `gens_x`.
    pub fn normalizes(&self, set_a: &ElemSet, gens_a: &[usize], gens_x: &[usize]) -> bool {
        gens_x
            .iter()
            .all(|&x| gens_a.iter().all(|&a| set_a.contains(self.conj(a, x))))
    }
}

/// A subgroup of a fixed ambient [`PermGroup`], stored as its element set.
#[derive(Clone)]
pub struct Subgroup {
    ambient: PermGroup,
    pub(crate) set: ElemSet,
    pub(crate) gens: Vec<usize>,
    order: u64,
}

impl Subgroup {
    pub(crate) fn from_parts(ambient: PermGroup, set: ElemSet, gens: Vec<usize>) -> Subgroup {
        let order = set.len() as u64;
        assert_eq!(ambient.order() % order, 0, "Lagrange violated");
        Subgroup {
            ambient,
            set,
            gens,
            order,
        }
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn generators(&self) -> Vec<Perm> {
        let t = self
            .ambient
            .table()
            .expect("subgroup implies cached elements");
        self.gens.iter().map(|&i| t.elements[i].clone()).collect()
    }

    /// Elements in lexicographic order of their image lists.
    pub fn elements(&self) -> Vec<Perm> {
        let t = self
            .ambient
            .table()
            .expect("subgroup implies cached elements");
        self.set.iter().map(|i| t.elements[i].clone()).collect()
    }

    pub fn contains(&self, x: &Perm) -> bool {
        let t = self
            .ambient
            .table()
            .expect("subgroup implies cached elements");
        t.index_of(x).is_some_and(|i| self.set.contains(i))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.ambient.ptr_eq(&other.ambient) && self.set.is_subset(&other.set)
    }

    /// This subgroup as a standalone group on the same points.
    pub fn to_group(&self) -> Result<PermGroup> {
        PermGroup::with_limits(
            self.ambient.degree(),
            self.generators(),
            self.ambient.limits(),
        )
    }

    pub(crate) fn table(&self) -> Arc<ElementTable> {
        self.ambient
            .table()
            .expect("subgroup implies cached elements")
    }

    pub(crate) fn same_ambient(&self, other: &Subgroup) -> Result<()> {
        if self.ambient.ptr_eq(&other.ambient) {
            Ok(())
        } else {
            Err(Error::input("subgroups belong to different ambient groups"))
        }
    }

    pub(crate) fn sibling(&self, set: ElemSet, gens: Vec<usize>) -> Subgroup {
        Subgroup::from_parts(self.ambient.clone(), set, gens)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient.ptr_eq(&other.ambient) && self.set == other.set
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, gens [", self.order)?;
        for (k, g) in self.generators().iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", g)?;
        }
        f.write_str("])")
    }
}

/// Anything that can be viewed as a subgroup of some ambient group: a [`PermGroup`]
/// (as the whole group) or a [`Subgroup`].
pub trait AsSubgroup {
    fn as_subgroup(&self) -> Result<Subgroup>;
}

impl AsSubgroup for PermGroup {
    fn as_subgroup(&self) -> Result<Subgroup> {
        self.whole()
    }
}

impl AsSubgroup for Subgroup {
    fn as_subgroup(&self) -> Result<Subgroup> {
        Ok(self.clone())
    }
}

impl<T: AsSubgroup> AsSubgroup for &T {
    fn as_subgroup(&self) -> Result<Subgroup> {
        (*self).as_subgroup()
    }
}

/// `H^x`: the conjugate `x⁻¹ H x`, generated by the conjugated generators of `H`.
pub fn conjugate_subgroup(h: &Subgroup, x: &Perm) -> Result<Subgroup> {
    let t = h.table();
    let xi = t
        .index_of(x)
        .ok_or_else(|| Error::input(format!("conjugator {} is not in the ambient group", x)))?;
    let set = t.conj_set(&h.set, xi);
    let gens = h.gens.iter().map(|&g| t.conj(g, xi)).collect();
    Ok(h.sibling(set, gens))
}
