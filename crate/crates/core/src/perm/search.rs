//! Orbit-stabilizer searches: centralizers, normalizers and subgroup conjugacy.
//!
//! Each search enumerates an orbit under conjugation with a Schreier tree and
//! then assembles the stabilizer from Schreier generators until its order
//! reaches `|G| / |orbit|`, which certifies the result.

use std::collections::HashMap;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Permutation, PermutationGroup};
use crate::error::{Error, Result};

/// The element set of a subgroup, sorted; a canonical key for the subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupKey(Vec<Permutation>);

impl SubgroupKey {
    pub fn of(h: &PermutationGroup) -> Self {
        let mut els = h.elements();
        els.sort();
        SubgroupKey(els)
    }

    fn conjugate_by(&self, g: &Permutation) -> Self {
        let mut els: Vec<Permutation> = self.0.iter().map(|x| x.conjugate_by(g)).collect();
        els.sort();
        SubgroupKey(els)
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.0
    }
}

pub struct SchreierOrbit<T> {
    points: Vec<T>,
    index: HashMap<T, usize>,
    parent: Vec<(usize, usize)>,
}

impl<T: Clone + Eq + Hash> SchreierOrbit<T> {
    pub fn build<F: Fn(&T, &Permutation) -> T>(gens: &[Permutation], start: T, act: F) -> Self {
        let mut points = vec![start.clone()];
        let mut index = HashMap::from([(start, 0usize)]);
        let mut parent = vec![(usize::MAX, usize::MAX)];
        let mut i = 0;
        while i < points.len() {
            for (si, s) in gens.iter().enumerate() {
                let y = act(&points[i], s);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), points.len());
                    points.push(y);
                    parent.push((i, si));
                }
            }
            i += 1;
        }
        SchreierOrbit { points, index, parent }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn position(&self, x: &T) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// An element carrying the start point to point `i`.
    pub fn transversal(&self, i: usize, gens: &[Permutation], degree: usize) -> Permutation {
        let mut word = Vec::new();
        let mut j = i;
        while j != 0 {
            let (p, s) = self.parent[j];
            word.push(s);
            j = p;
        }
        let mut u = Permutation::identity(degree);
        for &s in word.iter().rev() {
            u = u.mul(&gens[s]);
        }
        u
    }

    /// The stabilizer of the start point, certified by its order.
    pub fn stabilizer<F: Fn(&T, &Permutation) -> T>(&self, group: &PermutationGroup, act: F) -> Result<PermutationGroup> {
        let gens = group.generators();
        let degree = group.degree();
        let target = group.order() / self.len() as u64;
        if !group.order().is_multiple_of(self.len() as u64) {
            return Err(Error::Internal("orbit length does not divide the group order".into()));
        }
        let mut stab_gens: Vec<Permutation> = Vec::new();
        let mut current = PermutationGroup::trivial(degree);
        if target == 1 || gens.is_empty() {
            return Ok(current);
        }
        let schreier = |i: usize, si: usize| -> Permutation {
            let s = &gens[si];
            let j = self.index[&act(&self.points[i], s)];
            self.transversal(i, gens, degree).mul(s).mul(&self.transversal(j, gens, degree).inverse())
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0x57ab_1112 ^ self.len() as u64);
        let mut failures = 0;
        while current.order() < target && failures < 48 {
            let i = rng.gen_range(0..self.len());
            let si = rng.gen_range(0..gens.len());
            // combine two Schreier generators to reach more of the stabilizer per draw
            let mut g = schreier(i, si);
            if rng.gen_bool(0.5) && !current.generators().is_empty() {
                let k = rng.gen_range(0..current.generators().len());
                g = g.mul(&current.generators()[k]);
            }
            if g.is_identity() || current.contains(&g) {
                failures += 1;
                continue;
            }
            failures = 0;
            stab_gens.push(g);
            current = group.subgroup(stab_gens.clone());
        }
        if current.order() < target {
            'sweep: for i in 0..self.len() {
                for si in 0..gens.len() {
                    let g = schreier(i, si);
                    if !current.contains(&g) {
                        stab_gens.push(g);
                        current = group.subgroup(stab_gens.clone());
                        if current.order() == target {
                            break 'sweep;
                        }
                    }
                }
            }
        }
        if current.order() != target {
            return Err(Error::Internal(format!(
                "stabilizer has order {}, expected {target}",
                current.order()
            )));
        }
        Ok(current)
    }
}

/// The conjugation orbit of a subgroup: its conjugates, a transversal, and
/// the normalizer as the stabilizer.
pub struct SubgroupOrbit<'g> {
    group: &'g PermutationGroup,
    orbit: SchreierOrbit<SubgroupKey>,
}

impl<'g> SubgroupOrbit<'g> {
    pub fn new(group: &'g PermutationGroup, h: &PermutationGroup) -> Self {
        let orbit = SchreierOrbit::build(group.generators(), SubgroupKey::of(h), |k, g| k.conjugate_by(g));
        SubgroupOrbit { group, orbit }
    }

    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    /// An element `g` with `H^g = K`, if `K` is among the conjugates.
    pub fn conjugator_to(&self, k: &PermutationGroup) -> Option<Permutation> {
        let key = SubgroupKey::of(k);
        self.orbit
            .position(&key)
            .map(|i| self.orbit.transversal(i, self.group.generators(), self.group.degree()))
    }

    pub fn contains_key(&self, key: &SubgroupKey) -> bool {
        self.orbit.position(key).is_some()
    }

    pub fn normalizer(&self) -> Result<PermutationGroup> {
        self.orbit.stabilizer(self.group, |k, g| k.conjugate_by(g))
    }
}

impl PermutationGroup {
    /// `C_G(g)`.
    pub fn centralizer(&self, g: &Permutation) -> Result<PermutationGroup> {
        if !self.contains(g) {
            return Err(Error::Domain(format!("{g} is not an element of the group")));
        }
        let orbit = SchreierOrbit::build(self.generators(), g.clone(), |x, s| x.conjugate_by(s));
        orbit.stabilizer(self, |x, s| x.conjugate_by(s))
    }

    /// `N_G(H)`.
    pub fn normalizer(&self, h: &PermutationGroup) -> Result<PermutationGroup> {
        if !h.is_subgroup_of(self) {
            return Err(Error::Domain("subgroup is not contained in the group".into()));
        }
        if h.is_normal_in(self) {
            return Ok(self.clone());
        }
        SubgroupOrbit::new(self, h).normalizer()
    }

    /// Some `g` in `G` with `H1^g = H2`, verified on generators.
    pub fn is_conjugate_subgroup(&self, h1: &PermutationGroup, h2: &PermutationGroup) -> Option<Permutation> {
        if h1.order() != h2.order() || !h1.is_subgroup_of(self) || !h2.is_subgroup_of(self) {
            return None;
        }
        if h1.same_group(h2) {
            return Some(self.identity());
        }
        let target = SubgroupKey::of(h2);
        let gens = self.generators();
        // breadth-first until the target conjugate shows up
        let start = SubgroupKey::of(h1);
        let mut points = vec![start.clone()];
        let mut conj = vec![self.identity()];
        let mut seen = std::collections::HashSet::from([start]);
        let mut i = 0;
        while i < points.len() {
            for s in gens {
                let y = points[i].conjugate_by(s);
                if seen.insert(y.clone()) {
                    let u = conj[i].mul(s);
                    if y == target {
                        debug_assert!(h1.conjugate(&u).same_group(h2));
                        return Some(u);
                    }
                    points.push(y);
                    conj.push(u);
                }
            }
            i += 1;
        }
        None
    }

    /// Some `g` with `a^g = b`.
    pub fn is_conjugate_element(&self, a: &Permutation, b: &Permutation) -> Option<Permutation> {
        let orbit = SchreierOrbit::build(self.generators(), a.clone(), |x, s| x.conjugate_by(s));
        orbit.position(b).map(|i| orbit.transversal(i, self.generators(), self.degree()))
    }
}
