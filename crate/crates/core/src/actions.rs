//! Galois and automorphism actions on classes, characters and weights.
//!
//! Every action here is a left action: an automorphism `a` sends the class of
//! `x` to the class of `a(x)`, a character `χ` to `χ ∘ a⁻¹`, and a weight
//! `(Q, δ)` to `(a(Q), δ ∘ a⁻¹)`. The Galois element `σ_p^t` acts on values.

use serde::{Deserialize, Serialize};

use crate::chartab::CharacterTable;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::numtheory::{gcd, inv_mod, is_prime, multiplicative_order, pow_mod, split_p_part};
use crate::perm::{ClassData, GroupHom, Permutation, PermutationGroup};
use crate::weights::{row_permutation, WeightClassSet};

/// `σ_p^t`, realised on `Q(ζ_e)` (`e = exp G`) by `ζ_e ↦ ζ_e^k` with
/// `k ≡ p^t` modulo the `p′`-part of `e` and `k ≡ 1` modulo its `p`-part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisElement {
    pub p: u64,
    /// Exponent, normalized modulo `order`.
    pub t: u64,
    /// The `p′`-part `m` of the exponent.
    pub modulus: u64,
    /// `ord_m(p)`, the order of `σ_p` on all data of the group.
    pub order: u64,
    exponent: u64,
    multiplier: u64,
}

impl GaloisElement {
    pub fn new(p: u64, t: i64, exponent: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        if exponent == 0 {
            return Err(Error::Input("exponent must be positive".into()));
        }
        let (pp, m) = split_p_part(exponent, p);
        let order = if m == 1 { 1 } else { multiplicative_order(p % m, m) };
        let t = t.rem_euclid(order as i64) as u64;
        // CRT: k ≡ p^t (mod m), k ≡ 1 (mod pp)
        let multiplier = if m == 1 {
            1
        } else {
            let r = pow_mod(p % m, t, m);
            let s = ((r + m - 1) % m) as u128 * inv_mod(pp % m, m).expect("coprime") as u128 % m as u128;
            ((1 + pp as u128 * s) % exponent as u128) as u64
        };
        debug_assert_eq!(gcd(multiplier, exponent), 1);
        Ok(GaloisElement { p, t, modulus: m, order, exponent, multiplier })
    }

    /// The multiplier `k` modulo the exponent.
    pub fn multiplier(&self) -> u64 {
        self.multiplier
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_identity(&self) -> bool {
        self.multiplier % self.exponent == 1 % self.exponent
    }

    pub fn apply(&self, x: &Cyclotomic) -> Result<Cyclotomic> {
        x.galois_in(self.exponent, self.multiplier)
    }

    pub fn label(&self) -> String {
        if self.t == 1 {
            format!("sigma_{}", self.p)
        } else {
            format!("sigma_{}^{}", self.p, self.t)
        }
    }
}

/// A user-supplied automorphism, checked to be one.
#[derive(Clone, Debug)]
pub struct AutomorphismSpec {
    pub name: String,
    hom: GroupHom,
}

impl AutomorphismSpec {
    pub fn new(group: &PermutationGroup, name: &str, images: Vec<Permutation>) -> Result<Self> {
        if let Some(x) = images.iter().find(|x| x.degree() != group.degree() || !group.contains(x)) {
            return Err(Error::Input(format!("automorphism {name}: image {x} is not an element of the group")));
        }
        let hom = GroupHom::new(group, group.degree(), images)
            .map_err(|e| Error::Input(format!("automorphism {name}: {e}")))?;
        if hom.image_group().order() != group.order() {
            return Err(Error::Input(format!("automorphism {name}: the map is not injective")));
        }
        Ok(AutomorphismSpec { name: name.to_string(), hom })
    }

    pub fn apply(&self, x: &Permutation) -> Result<Permutation> {
        self.hom.apply(x)
    }

    pub fn apply_inverse(&self, x: &Permutation) -> Result<Permutation> {
        self.hom.preimage(x)
    }

    pub fn apply_subgroup(&self, h: &PermutationGroup) -> Result<PermutationGroup> {
        let gens = h.generators().iter().map(|x| self.apply(x)).collect::<Result<Vec<_>>>()?;
        PermutationGroup::from_generators(h.degree(), gens)
    }

    pub fn generator_images(&self) -> Vec<Permutation> {
        self.hom.source().generators().iter().map(|g| self.apply(g).expect("member")).collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismMap {
    pub name: String,
    pub generator_images: Vec<Vec<i64>>,
}

/// `{ "group": name, "maps": [ { "name", "generator_images" } ] }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismFile {
    pub group: String,
    pub maps: Vec<AutomorphismMap>,
}

impl AutomorphismFile {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Input(format!("automorphism file: {e}")))
    }

    pub fn validate(&self, group: &PermutationGroup) -> Result<Vec<AutomorphismSpec>> {
        self.maps
            .iter()
            .map(|m| {
                let images = m
                    .generator_images
                    .iter()
                    .map(|img| {
                        if img.len() != group.degree() {
                            return Err(Error::Input(format!(
                                "automorphism {}: image of length {} on degree {}",
                                m.name,
                                img.len(),
                                group.degree()
                            )));
                        }
                        Permutation::from_one_based(img)
                    })
                    .collect::<Result<Vec<_>>>()?;
                AutomorphismSpec::new(group, &m.name, images)
            })
            .collect()
    }
}

/// One generator of the acting group `Γ`.
#[derive(Clone, Debug)]
pub enum GammaGenerator {
    Galois(GaloisElement),
    Automorphism(AutomorphismSpec),
}

impl GammaGenerator {
    pub fn label(&self) -> String {
        match self {
            GammaGenerator::Galois(s) => s.label(),
            GammaGenerator::Automorphism(a) => a.name.clone(),
        }
    }
}

/// How much an action table is known to determine the true action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Guarantee {
    /// The permutations are the action itself.
    Explicit,
    /// Derived from the class action; isomorphic to the true action as a
    /// `Γ`-set because the image of `Γ` is cyclic.
    BridgeCyclic,
    /// Derived from the class action; only element-wise fixed-point counts
    /// are guaranteed.
    BridgeFixedPoints,
}

/// An action of a finitely generated group `Γ` on a labelled finite set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionTable {
    pub gamma: Vec<String>,
    pub labels: Vec<String>,
    /// `perms[i][x]` is the image of label `x` under generator `i`.
    pub perms: Vec<Vec<usize>>,
    pub guarantee: Guarantee,
    /// `(generator, n)`: the generator has order dividing `n` on this set.
    #[serde(default)]
    pub power_relations: Vec<(usize, u64)>,
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // first a, then b
    a.iter().map(|&x| b[x]).collect()
}

impl ActionTable {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Every generator is a bijection, stated power relations hold, and the
    /// Galois generators commute with all others.
    pub fn validate(&self) -> Result<()> {
        let n = self.labels.len();
        if self.perms.len() != self.gamma.len() {
            return Err(Error::Input("one permutation per generator expected".into()));
        }
        for (g, p) in self.gamma.iter().zip(&self.perms) {
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::Input(format!("generator {g} does not act bijectively on the labels")));
            }
        }
        for &(g, e) in &self.power_relations {
            let id: Vec<usize> = (0..n).collect();
            let mut acc = id.clone();
            for _ in 0..e {
                acc = compose(&acc, &self.perms[g]);
            }
            if acc != id {
                return Err(Error::Internal(format!("{} does not have order dividing {e} on the labels", self.gamma[g])));
            }
            for (h, q) in self.perms.iter().enumerate() {
                if h != g && compose(&self.perms[g], q) != compose(q, &self.perms[g]) {
                    return Err(Error::Internal(format!("{} does not commute with {}", self.gamma[g], self.gamma[h])));
                }
            }
        }
        Ok(())
    }

    pub fn fixed_points(&self, perm: &[usize]) -> usize {
        perm.iter().enumerate().filter(|(i, &x)| *i == x).count()
    }

    /// Orbits of the generated group, each sorted, in order of least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.len()).collect();
        crate::weights::orbits_on(&all, &self.perms).expect("the whole set is invariant")
    }
}

/// Galois class permutation on all classes: `[x] ↦ [x^k]`.
pub fn galois_class_map(classes: &ClassData, sigma: &GaloisElement) -> Vec<usize> {
    classes.power_map(sigma.multiplier() as i64)
}

/// `[x] ↦ [x^(p^t)]` on the `p`-regular classes, as positions in `classes.p_regular(p)`.
pub fn galois_on_classes(classes: &ClassData, sigma: &GaloisElement) -> Vec<usize> {
    let reg = classes.p_regular(sigma.p);
    let full = galois_class_map(classes, sigma);
    reg.iter().map(|&c| reg.iter().position(|&d| d == full[c]).expect("p-regular image")).collect()
}

/// Row permutation induced by applying `σ` to every value.
pub fn galois_on_character(table: &CharacterTable, sigma: &GaloisElement) -> Result<Vec<usize>> {
    (0..table.len())
        .map(|i| {
            let img = table.values()[i].iter().map(|v| sigma.apply(v)).collect::<Result<Vec<_>>>()?;
            table.row_index(&img).ok_or_else(|| Error::Internal(format!("Galois image of row {} is not a row", i + 1)))
        })
        .collect()
}

/// Checks `values[π(i)][c] = σ(values[i][c]) = values[i][class(g_c^k)]`.
pub fn check_galois_compatibility(table: &CharacterTable, classes: &ClassData, sigma: &GaloisElement) -> Result<()> {
    let rows = galois_on_character(table, sigma)?;
    let cols = galois_class_map(classes, sigma);
    for (i, &pi) in rows.iter().enumerate() {
        for c in 0..table.classes().len() {
            let by_value = sigma.apply(table.value(i, c))?;
            if table.value(pi, c) != &by_value || table.value(i, cols[c]) != &by_value {
                return Err(Error::Internal(format!("Galois row/column compatibility fails at ({}, {})", i + 1, c + 1)));
            }
        }
    }
    Ok(())
}

/// `[x] ↦ [a(x)]` on all classes.
pub fn aut_on_classes(classes: &ClassData, a: &AutomorphismSpec) -> Result<Vec<usize>> {
    classes
        .classes()
        .iter()
        .map(|c| {
            let y = a.apply(&c.representative)?;
            classes.class_of(&y).ok_or_else(|| Error::Internal("automorphism image outside the group".into()))
        })
        .collect()
}

/// `χ ↦ χ ∘ a⁻¹` as a row permutation.
pub fn aut_on_characters(table: &CharacterTable, classes: &ClassData, a: &AutomorphismSpec) -> Result<Vec<usize>> {
    let fwd = aut_on_classes(classes, a)?;
    let mut pre = vec![0; fwd.len()];
    for (c, &d) in fwd.iter().enumerate() {
        pre[d] = c;
    }
    row_permutation(table, &pre).ok_or_else(|| Error::Internal(format!("automorphism {} does not permute characters", a.name)))
}

/// The action on `G`-classes of weights.
pub fn action_on_weights(
    group: &PermutationGroup,
    weights: &WeightClassSet,
    generators: &[GammaGenerator],
) -> Result<ActionTable> {
    let labels: Vec<String> = weights.classes.iter().map(|w| w.label.clone()).collect();
    let locate = |radical: usize, row: usize| -> Result<usize> {
        let r = &weights.radicals[radical];
        let orbit = r
            .orbits
            .iter()
            .position(|o| o.contains(&row))
            .ok_or_else(|| Error::Internal("image character is not of defect zero".into()))?;
        weights
            .classes
            .iter()
            .position(|w| w.radical == radical && r.orbits[orbit].contains(&w.character))
            .ok_or_else(|| Error::Internal("weight class not found".into()))
    };
    let mut perms = Vec::new();
    let mut power_relations = Vec::new();
    for (gi, gen) in generators.iter().enumerate() {
        let mut perm = Vec::with_capacity(labels.len());
        match gen {
            GammaGenerator::Galois(sigma) => {
                power_relations.push((gi, sigma.order));
                for w in &weights.classes {
                    let r = &weights.radicals[w.radical];
                    let img = r.table.values()[w.character].iter().map(|v| sigma.apply(v)).collect::<Result<Vec<_>>>()?;
                    let row = r.table.row_index(&img).ok_or_else(|| Error::Internal("Galois image of a local character".into()))?;
                    perm.push(locate(w.radical, row)?);
                }
            }
            GammaGenerator::Automorphism(a) => {
                for w in &weights.classes {
                    let r = &weights.radicals[w.radical];
                    let qa = a.apply_subgroup(&r.radical.subgroup)?;
                    let (j, g) = weights
                        .radicals
                        .iter()
                        .enumerate()
                        .find_map(|(j, s)| group.is_conjugate_subgroup(&qa, &s.radical.subgroup).map(|g| (j, g)))
                        .ok_or_else(|| Error::Internal(format!("image of radical Q{} under {} is not radical", r.radical.class_id + 1, a.name)))?;
                    let target = &weights.radicals[j];
                    // b(x) = g⁻¹ a(x) g maps N(Q) onto N(Q_j); read δ through b⁻¹
                    let ginv = g.inverse();
                    let pre = target
                        .classes
                        .classes()
                        .iter()
                        .map(|c| {
                            let y = target.quotient.lift(&c.representative)?;
                            let x = a.apply_inverse(&y.conjugate_by(&ginv))?;
                            let xbar = r.quotient.project(&x)?;
                            r.classes.class_of(&xbar).ok_or_else(|| Error::Internal("transported element outside N(Q)".into()))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let img: Vec<Cyclotomic> = pre.iter().map(|&c| r.table.value(w.character, c).clone()).collect();
                    let row = target
                        .table
                        .row_index(&img)
                        .ok_or_else(|| Error::Internal("transported character is not a local character".into()))?;
                    perm.push(locate(j, row)?);
                }
            }
        }
        perms.push(perm);
    }
    let t = ActionTable {
        gamma: generators.iter().map(GammaGenerator::label).collect(),
        labels,
        perms,
        guarantee: Guarantee::Explicit,
        power_relations,
    };
    t.validate()?;
    Ok(t)
}

/// The action on abstract labels of `IBr(G)`, one per `p`-regular class,
/// obtained from the class action.
pub fn ibr_profile(classes: &ClassData, p: u64, generators: &[GammaGenerator]) -> Result<ActionTable> {
    let reg = classes.p_regular(p);
    let mut perms = Vec::new();
    let mut power_relations = Vec::new();
    for (gi, gen) in generators.iter().enumerate() {
        let perm = match gen {
            GammaGenerator::Galois(sigma) => {
                if sigma.p != p {
                    return Err(Error::Input(format!("Galois generator for p = {} used at p = {p}", sigma.p)));
                }
                power_relations.push((gi, sigma.order));
                galois_on_classes(classes, sigma)
            }
            GammaGenerator::Automorphism(a) => {
                let full = aut_on_classes(classes, a)?;
                reg.iter().map(|&c| reg.iter().position(|&d| d == full[c]).expect("p-regular image")).collect()
            }
        };
        perms.push(perm);
    }
    let mut t = ActionTable {
        gamma: generators.iter().map(GammaGenerator::label).collect(),
        labels: (1..=reg.len()).map(|i| format!("phi{i}")).collect(),
        perms,
        guarantee: Guarantee::BridgeFixedPoints,
        power_relations,
    };
    t.validate()?;
    if crate::equivcheck::generated_group_is_cyclic(&t.perms, t.len()) {
        t.guarantee = Guarantee::BridgeCyclic;
    }
    Ok(t)
}

/// Table of the `Γ`-action on the rows of a character table.
pub fn action_on_characters(
    table: &CharacterTable,
    classes: &ClassData,
    generators: &[GammaGenerator],
) -> Result<ActionTable> {
    let mut perms = Vec::new();
    let mut power_relations = Vec::new();
    for (gi, gen) in generators.iter().enumerate() {
        perms.push(match gen {
            GammaGenerator::Galois(sigma) => {
                power_relations.push((gi, sigma.order));
                galois_on_character(table, sigma)?
            }
            GammaGenerator::Automorphism(a) => aut_on_characters(table, classes, a)?,
        });
    }
    let t = ActionTable {
        gamma: generators.iter().map(GammaGenerator::label).collect(),
        labels: table.names().to_vec(),
        perms,
        guarantee: Guarantee::Explicit,
        power_relations,
    };
    t.validate()?;
    Ok(t)
}
