use std::collections::{HashSet, VecDeque};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::chain::StabChain;
use super::Permutation;
use crate::error::{Error, Result};

/// A finite permutation group with a verified stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: u64,
}

impl PermutationGroup {
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if g.degree() != degree {
                return Err(Error::Input(format!(
                    "generator {} has degree {} but the group has degree {degree}",
                    i + 1,
                    g.degree()
                )));
            }
        }
        let chain = StabChain::new(degree, &gens);
        let order = chain
            .order()
            .ok_or_else(|| Error::ResourceLimit("group order does not fit in 64 bits".into()))?;
        Ok(PermutationGroup { degree, generators: gens, chain, order })
    }

    /// Builds a group from generators given as 1-based image arrays.
    pub fn from_image_lists(degree: usize, gens: &[Vec<i64>]) -> Result<Self> {
        let perms = gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                if g.len() != degree {
                    return Err(Error::Input(format!(
                        "generator {} has {} images, expected {degree}",
                        i + 1,
                        g.len()
                    )));
                }
                Permutation::from_one_based(g).map_err(|e| Error::Input(format!("generator {}: {e}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(degree, perms)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(degree, Vec::new()).expect("trivial group")
    }

    /// Subgroup generated by `gens`, which the caller asserts lie in the same domain.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> PermutationGroup {
        Self::from_generators(self.degree, gens).expect("subgroup of a valid group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree
            && other.order.is_multiple_of(self.order)
            && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermutationGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    pub fn is_normal_in(&self, g: &PermutationGroup) -> bool {
        g.generators
            .iter()
            .all(|s| self.generators.iter().all(|h| self.contains(&h.conjugate_by(s))))
    }

    pub fn is_abelian(&self) -> bool {
        let gs = &self.generators;
        gs.iter().enumerate().all(|(i, a)| gs[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn elements(&self) -> Vec<Permutation> {
        self.chain.elements()
    }

    pub fn for_each_element<F: FnMut(&Permutation)>(&self, f: F) {
        self.chain.for_each_element(f)
    }

    /// Deterministic stream of pseudo-random elements.
    pub fn random_elements(&self, seed: u64) -> impl Iterator<Item = Permutation> + '_ {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        std::iter::repeat_with(move || self.chain.random_element(&mut rng))
    }

    /// `H^g`.
    pub fn conjugate(&self, g: &Permutation) -> PermutationGroup {
        let gens = self.generators.iter().map(|h| h.conjugate_by(g)).collect();
        PermutationGroup { degree: self.degree, generators: gens, chain: conj_chain(self, g), order: self.order }
    }

    /// Orbit of `point` under the group, in discovery order.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut out = vec![point];
        let mut queue = VecDeque::from([point]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let o = self.orbit(p);
                for &x in &o {
                    seen[x] = true;
                }
                out.push(o);
            }
        }
        out
    }

    /// Exponent: lcm of all element orders. Computed from class representatives
    /// when those are known; this fallback walks the group.
    pub fn exponent_by_enumeration(&self) -> u64 {
        let mut e = 1;
        self.for_each_element(|g| e = crate::numtheory::lcm(e, g.order()));
        e
    }
}

fn conj_chain(h: &PermutationGroup, g: &Permutation) -> StabChain {
    let gens: Vec<Permutation> = h.generators.iter().map(|x| x.conjugate_by(g)).collect();
    StabChain::new(h.degree, &gens)
}

/// Group closure by breadth-first multiplication. Only for small groups;
/// used as an independent oracle for the chain order.
pub fn closure_order(degree: usize, gens: &[Permutation], limit: usize) -> Option<usize> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen.len())
}
