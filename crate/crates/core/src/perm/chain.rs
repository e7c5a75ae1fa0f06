//! Stabilizer chains built by the deterministic Schreier-Sims algorithm.

use rand::Rng;

use super::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[x] = (u, u^-1)` with `base^u = x`, for `x` in the orbit.
    transversal: Vec<Option<(Permutation, Permutation)>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        Level { base, gens: Vec::new(), orbit: Vec::new(), transversal: vec![None; degree] }
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        let id = Permutation::identity(degree);
        self.transversal[self.base] = Some((id.clone(), id));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            i += 1;
            for s in &self.gens {
                let y = s.image(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().unwrap().0.mul(s);
                    let ui = u.inverse();
                    self.transversal[y] = Some((u, ui));
                    self.orbit.push(y);
                }
            }
        }
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// A chain whose base starts with `prefix` (possibly with trivial levels).
    pub fn with_base_prefix(degree: usize, generators: &[Permutation], prefix: &[usize]) -> Self {
        let mut chain = StabChain { degree, levels: prefix.iter().map(|&b| Level::new(b, degree)).collect() };
        let gens: Vec<Permutation> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &gens {
            if chain.levels.iter().all(|l| g.image(l.base) == l.base) {
                let b = g.first_moved().unwrap();
                chain.levels.push(Level::new(b, degree));
            }
        }
        for g in &gens {
            for i in 0..chain.levels.len() {
                chain.levels[i].gens.push(g.clone());
                if g.image(chain.levels[i].base) != chain.levels[i].base {
                    break;
                }
            }
        }
        for lvl in chain.levels.iter_mut() {
            lvl.rebuild_orbit(degree);
        }
        chain.schreier_sims();
        chain
    }

    fn schreier_sims(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            let mut jumped = None;
            'pairs: for oi in 0..self.levels[li].orbit.len() {
                let beta = self.levels[li].orbit[oi];
                for si in 0..self.levels[li].gens.len() {
                    let s = &self.levels[li].gens[si];
                    let gamma = s.image(beta);
                    let (u_beta, _) = self.levels[li].transversal[beta].as_ref().unwrap();
                    let (_, u_gamma_inv) = self.levels[li].transversal[gamma].as_ref().unwrap();
                    let g = u_beta.mul(s).mul(u_gamma_inv);
                    if g.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip_from(g, li + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        if j == self.levels.len() {
                            let b = h.first_moved().unwrap();
                            self.levels.push(Level::new(b, self.degree));
                        }
                        for l in li + 1..=j {
                            self.levels[l].gens.push(h.clone());
                            self.levels[l].rebuild_orbit(self.degree);
                        }
                        jumped = Some(j);
                        break 'pairs;
                    }
                }
            }
            match jumped {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    /// Sifts `g` starting at `level`; returns the residue and the level where
    /// sifting stopped (`levels.len()` when it passed every level).
    fn strip_from(&self, mut g: Permutation, level: usize) -> (Permutation, usize) {
        for (l, lvl) in self.levels.iter().enumerate().skip(level) {
            let x = g.image(lvl.base);
            match &lvl.transversal[x] {
                None => return (g, l),
                Some((_, ui)) => g = g.mul(ui),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of transversal sizes, or `None` on `u64` overflow.
    pub fn order(&self) -> Option<u64> {
        self.levels.iter().try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip_from(g.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    /// Images of the base points under `g`. Determines `g` within the group.
    pub fn base_key(&self, g: &Permutation) -> Vec<u32> {
        self.levels.iter().map(|l| g.image(l.base) as u32).collect()
    }

    /// The unique group element with the given base images, if one exists.
    pub fn element_from_base_images(&self, images: &[u32]) -> Option<Permutation> {
        self.element_from_partial_base_images(images, self.levels.len())
    }

    /// Builds an element matching the first `depth` base images, choosing the
    /// identity transversal element on every deeper level.
    pub fn element_from_partial_base_images(&self, images: &[u32], depth: usize) -> Option<Permutation> {
        let mut acc = Permutation::identity(self.degree);
        let mut acc_inv = Permutation::identity(self.degree);
        for (l, lvl) in self.levels.iter().enumerate().take(depth) {
            let target = acc_inv.image(images[l] as usize);
            let (u, ui) = lvl.transversal[target].as_ref()?;
            acc = u.mul(&acc);
            acc_inv = acc_inv.mul(ui);
        }
        Some(acc)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for lvl in &self.levels {
            let x = lvl.orbit[rng.gen_range(0..lvl.orbit.len())];
            acc = lvl.transversal[x].as_ref().unwrap().0.mul(&acc);
        }
        acc
    }

    /// Visits every element exactly once.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        let id = Permutation::identity(self.degree);
        self.visit_from(0, &id, &mut f);
    }

    // elements are u_k * ... * u_1 with u_1 taken from the top level

    fn visit_from<F: FnMut(&Permutation)>(&self, level: usize, right: &Permutation, f: &mut F) {
        if level == self.levels.len() {
            f(right);
            return;
        }
        let lvl = &self.levels[level];
        for &x in &lvl.orbit {
            let u = &lvl.transversal[x].as_ref().unwrap().0;
            let next = u.mul(right);
            self.visit_from(level + 1, &next, f);
        }
    }

    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        self.for_each_element(|g| out.push(g.clone()));
        out
    }
}
