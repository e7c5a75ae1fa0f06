//! Homomorphisms given by generator images, evaluated through the
//! "diagonal" group `{(x, f(x))}` acting on two disjoint copies of the domain.

use std::collections::HashMap;

use super::chain::StabChain;
use super::{Permutation, PermutationGroup};
use crate::error::{Error, Result};

fn juxtapose(a: &Permutation, b: &Permutation) -> Permutation {
    let n = a.degree() as u32;
    let mut img: Vec<u32> = a.images().to_vec();
    img.extend(b.images().iter().map(|x| x + n));
    Permutation::from_images(img).expect("disjoint union of bijections")
}

fn split_at(p: &Permutation, n: usize) -> (Permutation, Permutation) {
    let a = p.images()[..n].to_vec();
    let b = p.images()[n..].iter().map(|x| x - n as u32).collect();
    (Permutation::from_images(a).unwrap(), Permutation::from_images(b).unwrap())
}

#[derive(Clone, Debug)]
pub struct GroupHom {
    source: PermutationGroup,
    image: PermutationGroup,
    /// chain of `{(x, f(x))}`, base in the source block first
    forward: StabChain,
    /// chain of `{(f(x), x)}`, base in the image block first
    backward: StabChain,
    backward_depth: usize,
}

impl GroupHom {
    /// Checks that `gen_images` defines a homomorphism on `source`.
    pub fn new(source: &PermutationGroup, image_degree: usize, gen_images: Vec<Permutation>) -> Result<Self> {
        if gen_images.len() != source.generators().len() {
            return Err(Error::Input(format!(
                "{} generator images given for {} generators",
                gen_images.len(),
                source.generators().len()
            )));
        }
        if let Some(g) = gen_images.iter().find(|g| g.degree() != image_degree) {
            return Err(Error::Input(format!("generator image {g} has the wrong degree")));
        }
        let n = source.degree();
        let fwd: Vec<Permutation> = source.generators().iter().zip(&gen_images).map(|(a, b)| juxtapose(a, b)).collect();
        let forward = StabChain::new(n + image_degree, &fwd);
        let order = forward
            .order()
            .ok_or_else(|| Error::ResourceLimit("order overflow while checking homomorphism".into()))?;
        if order != source.order() {
            return Err(Error::Input(format!(
                "generator images do not define a homomorphism (graph has order {order}, group has order {})",
                source.order()
            )));
        }
        let bwd: Vec<Permutation> = source.generators().iter().zip(&gen_images).map(|(a, b)| juxtapose(b, a)).collect();
        // every image point goes first, so that fixing them leaves only the kernel
        let prefix: Vec<usize> = (0..image_degree).collect();
        let backward = StabChain::with_base_prefix(n + image_degree, &bwd, &prefix);
        let backward_depth = image_degree;
        let image = PermutationGroup::from_generators(image_degree, gen_images)?;
        Ok(GroupHom { source: source.clone(), image, forward, backward, backward_depth })
    }

    pub fn source(&self) -> &PermutationGroup {
        &self.source
    }

    pub fn image_group(&self) -> &PermutationGroup {
        &self.image
    }

    pub fn kernel_order(&self) -> u64 {
        self.source.order() / self.image.order()
    }

    pub fn apply(&self, x: &Permutation) -> Result<Permutation> {
        let n = self.source.degree();
        let images: Vec<u32> = self.forward.base().iter().map(|&b| x.image(b) as u32).collect();
        if self.forward.base().iter().any(|&b| b >= n) {
            return Err(Error::Internal("homomorphism chain left the source block".into()));
        }
        let d = self
            .forward
            .element_from_base_images(&images)
            .ok_or_else(|| Error::Domain(format!("{x} is not in the source group")))?;
        let (a, b) = split_at(&d, n);
        if &a != x {
            return Err(Error::Domain(format!("{x} is not in the source group")));
        }
        Ok(b)
    }

    /// Some `x` with `f(x) = y`.
    pub fn preimage(&self, y: &Permutation) -> Result<Permutation> {
        let m = self.image.degree();
        let base = self.backward.base();
        let images: Vec<u32> = base[..self.backward_depth].iter().map(|&b| y.image(b) as u32).collect();
        let d = self
            .backward
            .element_from_partial_base_images(&images, self.backward_depth)
            .ok_or_else(|| Error::Domain(format!("{y} is not in the image")))?;
        let (b, a) = split_at(&d, m);
        if &b != y {
            return Err(Error::Domain(format!("{y} is not in the image")));
        }
        Ok(a)
    }
}

/// A quotient `N/K` realised as a permutation group together with the
/// natural map.
#[derive(Clone, Debug)]
pub struct Quotient {
    kernel: PermutationGroup,
    map: Option<GroupHom>,
    group: PermutationGroup,
}

impl Quotient {
    /// `N/K` for `K` normal in `N`. Uses the action on `K`-orbits when that is
    /// faithful modulo `K`, and the coset action otherwise.
    pub fn new(n: &PermutationGroup, k: &PermutationGroup) -> Result<Self> {
        if !k.is_subgroup_of(n) || !k.is_normal_in(n) {
            return Err(Error::Domain("kernel must be a normal subgroup".into()));
        }
        if k.order() == 1 {
            return Ok(Quotient { kernel: k.clone(), map: None, group: n.clone() });
        }
        let target = n.order() / k.order();
        if let Some(images) = orbit_block_action(n, k) {
            let deg = images.first().map(|g| g.degree()).unwrap_or(1);
            let img = PermutationGroup::from_generators(deg, images.clone())?;
            if img.order() == target {
                let hom = GroupHom::new(n, deg, images)?;
                return Ok(Quotient { kernel: k.clone(), map: Some(hom), group: img });
            }
        }
        let images = coset_action(n, k)?;
        let deg = target as usize;
        let hom = GroupHom::new(n, deg, images)?;
        let group = hom.image_group().clone();
        if group.order() != target {
            return Err(Error::Internal("coset action is not faithful on N/K".into()));
        }
        Ok(Quotient { kernel: k.clone(), map: Some(hom), group })
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn kernel(&self) -> &PermutationGroup {
        &self.kernel
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_none()
    }

    pub fn project(&self, x: &Permutation) -> Result<Permutation> {
        match &self.map {
            None => Ok(x.clone()),
            Some(h) => h.apply(x),
        }
    }

    pub fn lift(&self, y: &Permutation) -> Result<Permutation> {
        match &self.map {
            None => Ok(y.clone()),
            Some(h) => h.preimage(y),
        }
    }

    /// Image of a subgroup of `N`.
    pub fn project_subgroup(&self, h: &PermutationGroup) -> Result<PermutationGroup> {
        let gens = h.generators().iter().map(|g| self.project(g)).collect::<Result<Vec<_>>>()?;
        PermutationGroup::from_generators(self.group.degree(), gens)
    }

    /// Full preimage of a subgroup of `N/K`.
    pub fn lift_subgroup(&self, h: &PermutationGroup) -> Result<PermutationGroup> {
        let mut gens = h.generators().iter().map(|g| self.lift(g)).collect::<Result<Vec<_>>>()?;
        gens.extend(self.kernel.generators().iter().cloned());
        PermutationGroup::from_generators(self.kernel.degree(), gens)
    }
}

fn orbit_block_action(n: &PermutationGroup, k: &PermutationGroup) -> Option<Vec<Permutation>> {
    let orbits = k.orbits();
    let mut which = vec![0usize; n.degree()];
    for (i, o) in orbits.iter().enumerate() {
        for &x in o {
            which[x] = i;
        }
    }
    let mut out = Vec::new();
    for g in n.generators() {
        let img: Vec<u32> = orbits.iter().map(|o| which[g.image(o[0])] as u32).collect();
        out.push(Permutation::from_images(img).ok()?);
    }
    Some(out)
}

/// Right multiplication on the right cosets `Kx`, keyed by their minimal element.
fn coset_action(n: &PermutationGroup, k: &PermutationGroup) -> Result<Vec<Permutation>> {
    let kel = k.elements();
    let canon = |x: &Permutation| kel.iter().map(|h| h.mul(x)).min().unwrap();
    let mut reps = vec![n.identity()];
    let mut index: HashMap<Permutation, usize> = HashMap::from([(canon(&n.identity()), 0)]);
    let mut i = 0;
    while i < reps.len() {
        for s in n.generators() {
            let c = canon(&reps[i].mul(s));
            if !index.contains_key(&c) {
                index.insert(c.clone(), reps.len());
                reps.push(c);
            }
        }
        i += 1;
    }
    n.generators()
        .iter()
        .map(|s| {
            let img = reps.iter().map(|r| index[&canon(&r.mul(s))] as u32).collect();
            Permutation::from_images(img)
        })
        .collect()
}
