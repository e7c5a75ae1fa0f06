use std::collections::HashMap;

use serde::Serialize;

use super::{Permutation, PermutationGroup};
use crate::error::{Error, Result};
use crate::numtheory::{gcd, lcm};
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    #[serde(serialize_with = "ser_perm")]
    pub representative: Permutation,
    pub size: u64,
    pub centralizer_order: u64,
    pub element_order: u64,
}

fn ser_perm<S: serde::Serializer>(p: &Permutation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// Conjugacy classes in canonical order together with an element-to-class index.
///
/// Canonical order: element order, then class size, then the lexicographically
/// minimal image array among the class members (which is also the stored
/// representative).
#[derive(Clone, Debug)]
pub struct ClassData {
    group_order: u64,
    base: Vec<usize>,
    classes: Vec<ConjugacyClass>,
    lookup: HashMap<Vec<u32>, u32>,
}

impl ClassData {
    pub fn compute(group: &PermutationGroup, limits: &Limits) -> Result<Self> {
        let order = group.order();
        if order > limits.max_order {
            return Err(Error::ResourceLimit(format!(
                "class computation needs an element index; |G| = {order} exceeds the configured bound {}",
                limits.max_order
            )));
        }
        let chain = group.chain();
        let mut lookup: HashMap<Vec<u32>, u32> = HashMap::with_capacity(order as usize);
        let mut raw: Vec<(Permutation, u64)> = Vec::new();
        let mut covered = 0u64;

        let discover = |x: &Permutation, lookup: &mut HashMap<Vec<u32>, u32>, raw: &mut Vec<(Permutation, u64)>| -> u64 {
            let key = chain.base_key(x);
            if lookup.contains_key(&key) {
                return 0;
            }
            let id = raw.len() as u32;
            lookup.insert(key, id);
            let mut orbit = vec![x.clone()];
            let mut min = x.clone();
            let mut i = 0;
            while i < orbit.len() {
                let y = orbit[i].clone();
                i += 1;
                for s in group.generators() {
                    let z = y.conjugate_by(s);
                    let k = chain.base_key(&z);
                    if let std::collections::hash_map::Entry::Vacant(e) = lookup.entry(k) {
                        e.insert(id);
                        if z < min {
                            min = z.clone();
                        }
                        orbit.push(z);
                    }
                }
            }
            raw.push((min, orbit.len() as u64));
            orbit.len() as u64
        };

        if order <= limits.deterministic_class_threshold {
            chain.for_each_element(|x| {
                covered += discover(x, &mut lookup, &mut raw);
            });
        } else {
            // randomized discovery; completeness is certified by the size sum
            for x in group.random_elements(0x5eed_c1a5) {
                covered += discover(&x, &mut lookup, &mut raw);
                if covered == order {
                    break;
                }
            }
        }
        if covered != order {
            return Err(Error::Internal(format!("class sizes sum to {covered}, expected {order}")));
        }

        let mut idx: Vec<usize> = (0..raw.len()).collect();
        let orders: Vec<u64> = raw.iter().map(|(r, _)| r.order()).collect();
        idx.sort_by(|&a, &b| {
            (orders[a], raw[a].1, raw[a].0.images()).cmp(&(orders[b], raw[b].1, raw[b].0.images()))
        });
        let mut remap = vec![0u32; raw.len()];
        for (new, &old) in idx.iter().enumerate() {
            remap[old] = new as u32;
        }
        for v in lookup.values_mut() {
            *v = remap[*v as usize];
        }
        let classes = idx
            .iter()
            .map(|&i| ConjugacyClass {
                representative: raw[i].0.clone(),
                size: raw[i].1,
                centralizer_order: order / raw[i].1,
                element_order: orders[i],
            })
            .collect();
        Ok(ClassData { group_order: order, base: chain.base(), classes, lookup })
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// Base points of the chain used for class lookup.
    pub fn base(&self) -> &[usize] {
        &self.base
    }

    /// Class of the member whose base images are `key`.
    pub fn class_of_key(&self, key: &[u32]) -> Option<usize> {
        self.lookup.get(key).map(|&c| c as usize)
    }

    /// Class of `g`, which must be a member of the group; non-members may be
    /// reported as a class of some member with the same base images.
    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        let key: Vec<u32> = self.base.iter().map(|&b| g.image(b) as u32).collect();
        self.lookup.get(&key).map(|&c| c as usize)
    }

    /// `true` iff the two group elements are conjugate.
    pub fn are_conjugate(&self, a: &Permutation, b: &Permutation) -> bool {
        matches!((self.class_of(a), self.class_of(b)), (Some(x), Some(y)) if x == y)
    }

    /// Class of `rep^k` for every class.
    pub fn power_map(&self, k: i64) -> Vec<usize> {
        self.classes
            .iter()
            .map(|c| self.class_of(&c.representative.pow(k)).expect("power of a member is a member"))
            .collect()
    }

    pub fn inverse_map(&self) -> Vec<usize> {
        self.power_map(-1)
    }

    pub fn exponent(&self) -> u64 {
        self.classes.iter().fold(1, |e, c| lcm(e, c.element_order))
    }

    pub fn p_regular(&self, p: u64) -> Vec<usize> {
        (0..self.len()).filter(|&i| gcd(self.classes[i].element_order, p) == 1).collect()
    }
}

impl PermutationGroup {
    pub fn conjugacy_classes(&self) -> Result<Vec<ConjugacyClass>> {
        Ok(ClassData::compute(self, &Limits::default())?.classes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(degree: usize, cycles: &[&str]) -> PermutationGroup {
        let gens = cycles.iter().map(|c| Permutation::parse_cycles(c, degree).unwrap()).collect();
        PermutationGroup::from_generators(degree, gens).unwrap()
    }

    #[test]
    fn s3_classes() {
        let cl = g(3, &["(1,2)", "(1,2,3)"]).conjugacy_classes().unwrap();
        let v: Vec<(u64, u64)> = cl.iter().map(|c| (c.element_order, c.size)).collect();
        assert_eq!(v, vec![(1, 1), (2, 3), (3, 2)]);
        assert_eq!(cl[1].representative.to_string(), "(2,3)");
    }

    #[test]
    fn a5_classes_and_power_maps() {
        let grp = g(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        let cd = ClassData::compute(&grp, &Limits::default()).unwrap();
        let orders: Vec<u64> = cd.classes().iter().map(|c| c.element_order).collect();
        assert_eq!(orders, vec![1, 2, 3, 5, 5]);
        assert_eq!(cd.classes().iter().map(|c| c.size).sum::<u64>(), 60);
        let sq = cd.power_map(2);
        assert_eq!(sq[3], 4);
        assert_eq!(sq[4], 3);
        assert_eq!(cd.exponent(), 30);
        assert_eq!(cd.p_regular(2), vec![0, 2, 3, 4]);
    }

    #[test]
    fn randomized_discovery_matches_deterministic() {
        let grp = g(6, &["(1,2)", "(1,2,3,4,5,6)"]);
        let det = ClassData::compute(&grp, &Limits::default()).unwrap();
        let limits = Limits { deterministic_class_threshold: 10, ..Limits::default() };
        let rnd = ClassData::compute(&grp, &limits).unwrap();
        assert_eq!(det.classes(), rnd.classes());
        assert_eq!(det.len(), 11);
    }
}
