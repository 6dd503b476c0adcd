//! Deterministic Schreier–Sims.

use crate::perm::Perm;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Perm>,
    /// `transversal[b]` maps the base point to `b`, when `b` is in the basic orbit.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Level {
        let mut l = Level {
            base,
            gens: Vec::new(),
            transversal: vec![None; degree],
            orbit: Vec::new(),
        };
        l.rebuild(degree);
        l
    }

    fn rebuild(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Perm::identity(degree));
        self.orbit = vec![self.base];
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k];
            let up = self.transversal[p]
                .clone()
                .expect("orbit point has a transversal");
            for g in &self.gens {
                let q = g.image(p);
                if self.transversal[q].is_none() {
                    self.transversal[q] = Some(up.compose(g));
                    self.orbit.push(q);
                }
            }
            k += 1;
        }
    }
}

/// Base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Perm]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if gens.is_empty() {
            return chain;
        }
        // Initial base: every generator moves some base point.
        for g in &gens {
            if chain.levels.iter().all(|l| g.image(l.base) == l.base) {
                let b = g.first_moved_point().expect("non-identity");
                chain.levels.push(Level::new(b, degree));
            }
        }
        for i in 0..chain.levels.len() {
            let fixed: Vec<usize> = chain.levels[..i].iter().map(|l| l.base).collect();
            chain.levels[i].gens = gens
                .iter()
                .filter(|g| fixed.iter().all(|&b| g.image(b) == b))
                .cloned()
                .collect();
            chain.levels[i].rebuild(degree);
        }
        chain.complete();
        chain
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i >= 1 {
            let lvl = i - 1;
            match self.find_missing_schreier(lvl) {
                Some((h, fail)) => {
                    let depth = if fail == self.levels.len() {
                        let b = h.first_moved_point().expect("non-identity residue");
                        self.levels.push(Level::new(b, self.degree));
                        self.levels.len()
                    } else {
                        fail + 1
                    };
                    for l in lvl + 1..depth {
                        self.levels[l].gens.push(h.clone());
                        self.levels[l].rebuild(self.degree);
                    }
                    i = depth;
                }
                None => i -= 1,
            }
        }
    }

    /// First Schreier generator at `lvl` that does not strip through the deeper levels.
    fn find_missing_schreier(&self, lvl: usize) -> Option<(Perm, usize)> {
        let level = &self.levels[lvl];
        for &p in &level.orbit {
            let up = level.transversal[p].as_ref().unwrap();
            for g in &level.gens {
                let q = g.image(p);
                let uq = level.transversal[q].as_ref().unwrap();
                let s = up.compose(g).compose(&uq.inverse());
                if s.is_identity() {
                    continue;
                }
                let (h, fail) = self.strip_from(lvl + 1, s);
                if fail < self.levels.len() || !h.is_identity() {
                    return Some((h, fail));
                }
            }
        }
        None
    }

    /// Sifts `g` starting at level `from`. Returns the residue and the index of the level
    /// where sifting stopped (`levels.len()` when all levels were passed).
    fn strip_from(&self, from: usize, mut g: Perm) -> (Perm, usize) {
        for (k, level) in self.levels.iter().enumerate().skip(from) {
            let b = g.image(level.base);
            match &level.transversal[b] {
                Some(u) => g = g.compose(&u.inverse()),
                None => return (g, k),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let (h, fail) = self.strip_from(0, g.clone());
        fail == self.levels.len() && h.is_identity()
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// All elements as products `u_k ⋯ u_1` of transversal representatives.
    pub fn elements(&self) -> Vec<Perm> {
        let mut acc = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(acc.len() * level.orbit.len());
            for x in &acc {
                for &p in &level.orbit {
                    next.push(x.compose(level.transversal[p].as_ref().unwrap()));
                }
            }
            acc = next;
        }
        acc
    }
}
