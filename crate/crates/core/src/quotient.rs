use crate::error::{Error, Result};
use crate::group::{AsSubgroup, PermGroup, Subgroup};
use crate::perm::Perm;

/// `X/N` realized as the permutation action of `X` on the right cosets of `N`.
#[derive(Clone)]
pub struct QuotientGroup {
    group: PermGroup,
    source: Subgroup,
    kernel: Subgroup,
    /// Ambient element index to coset index; `u32::MAX` outside the source.
    coset_of: Vec<u32>,
    reps: Vec<usize>,
}

impl QuotientGroup {
    pub fn new(x: &impl AsSubgroup, n: &Subgroup) -> Result<QuotientGroup> {
        let x = x.as_subgroup()?;
        x.same_ambient(n)?;
        let t = x.table();
        if !n.set.is_subset(&x.set) || !t.normalizes(&n.set, &n.gens, &x.gens) {
            return Err(Error::input("quotient requires a normal subgroup"));
        }
        let kernel_elems: Vec<usize> = n.set.iter().collect();
        let mut coset_of = vec![u32::MAX; t.len()];
        let mut reps = Vec::new();
        for r in x.set.iter() {
            if coset_of[r] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            for &k in &kernel_elems {
                coset_of[t.mul(k, r)] = c;
            }
            reps.push(r);
        }
        let act = |g: usize| -> Perm {
            let images = reps.iter().map(|&r| coset_of[t.mul(r, g)]).collect();
            Perm::from_images(images).expect("coset action is a permutation")
        };
        let gens = x.gens.iter().map(|&g| act(g)).collect();
        let group = PermGroup::with_limits(reps.len(), gens, x.ambient().limits())?;
        Ok(QuotientGroup {
            group,
            source: x,
            kernel: n.clone(),
            coset_of,
            reps,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn source(&self) -> &Subgroup {
        &self.source
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Image of an element of the source group.
    pub fn project(&self, x: &Perm) -> Result<Perm> {
        let t = self.source.table();
        let xi = t
            .index_of(x)
            .filter(|&i| self.source.set.contains(i))
            .ok_or_else(|| Error::input(format!("{} is not in the group being factored", x)))?;
        let images = self
            .reps
            .iter()
            .map(|&r| self.coset_of[t.mul(r, xi)])
            .collect();
        Perm::from_images(images)
    }

    /// `HN/N` for a subgroup `H` of the source.
    pub fn project_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        h.same_ambient(&self.source)?;
        if !h.set.is_subset(&self.source.set) {
            return Err(Error::input(
                "subgroup is not contained in the group being factored",
            ));
        }
        let gens = h
            .generators()
            .iter()
            .map(|g| self.project(g))
            .collect::<Result<Vec<_>>>()?;
        crate::structure::generated_subgroup(&self.group, &gens)
    }
}
