use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Permutation, PermutationGroup};
use crate::error::{Error, Result};
use crate::numtheory::{factorize, is_prime, split_p_part, valuation};

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Input(format!("{p} is not prime")))
    }
}

impl PermutationGroup {
    pub fn is_p_group(&self, p: u64) -> bool {
        split_p_part(self.order(), p).1 == 1
    }

    /// A Sylow `p`-subgroup. Grows a `p`-subgroup `P` by `p`-parts of random
    /// elements of `N_G(P)` until `|P| = |G|_p`.
    pub fn sylow_subgroup(&self, p: u64) -> Result<PermutationGroup> {
        check_prime(p)?;
        let (target, _) = split_p_part(self.order(), p);
        let mut gens: Vec<Permutation> = Vec::new();
        let mut sub = PermutationGroup::trivial(self.degree());
        let mut rng = ChaCha8Rng::seed_from_u64(0x5f10_u64.wrapping_add(p));
        while sub.order() < target {
            let n = self.normalizer(&sub)?;
            let mut grown = false;
            for _ in 0..10_000 {
                let x = n.chain().random_element(&mut rng);
                let o = x.order();
                let (pp, rest) = split_p_part(o, p);
                if pp == 1 {
                    continue;
                }
                let y = x.pow(rest as i64);
                if sub.contains(&y) {
                    continue;
                }
                gens.push(y);
                sub = self.subgroup(gens.clone());
                grown = true;
                break;
            }
            if !grown {
                return Err(Error::Internal("no p-element found outside the current p-subgroup".into()));
            }
        }
        debug_assert!(sub.is_p_group(p));
        Ok(sub)
    }

    /// `H ∩ K`, by filtering the elements of the smaller group.
    pub fn intersection(&self, other: &PermutationGroup) -> PermutationGroup {
        let (small, big) = if self.order() <= other.order() { (self, other) } else { (other, self) };
        let mut gens: Vec<Permutation> = Vec::new();
        let mut acc = PermutationGroup::trivial(self.degree());
        small.for_each_element(|x| {
            if !x.is_identity() && big.contains(x) && !acc.contains(x) {
                gens.push(x.clone());
                acc = PermutationGroup::from_generators(self.degree(), gens.clone()).expect("valid subgroup");
            }
        });
        acc
    }

    /// `O_p(G)`: intersect a Sylow subgroup with its conjugates under the
    /// generators until stable.
    pub fn p_core(&self, p: u64) -> Result<PermutationGroup> {
        check_prime(p)?;
        let mut d = self.sylow_subgroup(p)?;
        loop {
            let mut changed = false;
            for s in self.generators() {
                let c = d.conjugate(s);
                if !c.same_group(&d) {
                    d = d.intersection(&c);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        debug_assert!(d.is_normal_in(self));
        Ok(d)
    }

    /// Commutator subgroup, as the normal closure of generator commutators.
    pub fn derived_subgroup(&self) -> PermutationGroup {
        let gs = self.generators();
        let mut gens: Vec<Permutation> = Vec::new();
        for (i, a) in gs.iter().enumerate() {
            for b in &gs[i + 1..] {
                let c = a.inverse().mul(&b.inverse()).mul(a).mul(b);
                if !c.is_identity() {
                    gens.push(c);
                }
            }
        }
        self.normal_closure(gens)
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, mut gens: Vec<Permutation>) -> PermutationGroup {
        let mut sub = self.subgroup(gens.clone());
        loop {
            let mut added = false;
            for s in self.generators() {
                for h in sub.generators().to_vec() {
                    let c = h.conjugate_by(s);
                    if !sub.contains(&c) {
                        gens.push(c);
                        sub = self.subgroup(gens.clone());
                        added = true;
                    }
                }
            }
            if !added {
                return sub;
            }
        }
    }

    /// Abelian invariants of `G/G'` as prime powers, ascending.
    pub fn abelian_invariants(&self) -> Vec<u64> {
        let derived = self.derived_subgroup();
        let quotient_order = self.order() / derived.order();
        let mut out = Vec::new();
        for (q, _) in factorize(quotient_order) {
            // counts[j] = log_q #{x in G/G' : x^(q^j) = 1}
            let mut logs = vec![0u32];
            let mut j = 1u32;
            loop {
                let qj = q.pow(j);
                let mut hits = 0u64;
                self.for_each_element(|x| {
                    if derived.contains(&x.pow(qj as i64)) {
                        hits += 1;
                    }
                });
                let l = valuation(hits / derived.order(), q);
                if l == *logs.last().unwrap() {
                    break;
                }
                logs.push(l);
                j += 1;
            }
            let s: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
            for (k, &sk) in s.iter().enumerate() {
                let next = s.get(k + 1).copied().unwrap_or(0);
                for _ in 0..(sk - next) {
                    out.push(q.pow(k as u32 + 1));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All subgroups of a `p`-group, duplicate free, at most `limit` of them.
    /// Grows each subgroup `S` by elements `x` of `N(S)` with `x^p` in `S`.
    pub fn p_group_subgroups(&self, p: u64, limit: usize) -> Result<Vec<PermutationGroup>> {
        if !self.is_p_group(p) {
            return Err(Error::Domain("subgroup enumeration expects a p-group".into()));
        }
        let elements = self.elements();
        let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
        let trivial = PermutationGroup::trivial(self.degree());
        seen.insert(vec![self.identity()]);
        let mut layer = vec![trivial];
        let mut all = layer.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for s in &layer {
                for x in &elements {
                    if s.contains(x) || !s.contains(&x.pow(p as i64)) {
                        continue;
                    }
                    if !s.generators().iter().all(|h| s.contains(&h.conjugate_by(x))) {
                        continue;
                    }
                    let mut gens = s.generators().to_vec();
                    gens.push(x.clone());
                    let t = self.subgroup(gens);
                    let mut key = t.elements();
                    key.sort();
                    if seen.insert(key) {
                        next.push(t);
                    }
                }
            }
            all.extend(next.iter().cloned());
            if all.len() > limit {
                return Err(Error::ResourceLimit(format!(
                    "subgroup enumeration stopped after {} subgroups (bound {limit}); result would be partial",
                    all.len()
                )));
            }
            layer = next;
        }
        Ok(all)
    }
}
