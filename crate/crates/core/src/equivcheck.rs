//! Comparing two actions of the same group `Γ`: orbit types, isomorphism
//! verdicts and explicit equivariant bijections.
//!
//! Both actions are read through `Γ̄`, the group the generators induce on the
//! disjoint union of the two sets; it is small in practice and is enumerated.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::actions::{ActionTable, Guarantee};
use crate::error::{Error, Result};
use crate::numtheory::{divisors, mobius};

const MAX_GAMMA: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitType {
    pub length: u64,
    /// For cyclic `Γ = ⟨γ⟩` of order `n`: the stabilizer `⟨γ^length⟩`;
    /// otherwise an index into the list of stabilizer classes of `Γ̄`.
    pub stabilizer: String,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitTypeReport {
    pub group_order: u64,
    pub total: u64,
    pub orbits: Vec<OrbitType>,
}

impl OrbitTypeReport {
    /// `{length: count}`.
    pub fn summary(&self) -> BTreeMap<u64, u64> {
        let mut m = BTreeMap::new();
        for o in &self.orbits {
            *m.entry(o.length).or_insert(0) += o.count;
        }
        m
    }
}

/// Orbit counts of a cyclic group of order `n` from the fixed-point counts
/// `fixed[d] = |Fix(γ^d)|` for the divisors `d` of `n` (`d = n` may be
/// omitted; it is `total`).
pub fn cyclic_orbit_types(n: u64, total: u64, fixed: &BTreeMap<u64, u64>) -> Result<OrbitTypeReport> {
    if n == 0 {
        return Err(Error::Data("group order must be positive".into()));
    }
    if let Some(d) = fixed.keys().find(|&&d| d == 0 || !n.is_multiple_of(d)) {
        return Err(Error::Data(format!("{d} is not a divisor of {n}")));
    }
    let fix = |d: u64| -> Result<i128> {
        match fixed.get(&d) {
            Some(&v) => Ok(v as i128),
            None if d == n => Ok(total as i128),
            None => Err(Error::Data(format!("missing fixed-point count for γ^{d}"))),
        }
    };
    if fix(n)? != total as i128 {
        return Err(Error::Data(format!("the identity must fix all {total} points")));
    }
    let mut orbits = Vec::new();
    let mut covered = 0i128;
    for l in divisors(n) {
        let mut s = 0i128;
        for d in divisors(l) {
            s += mobius(l / d) as i128 * fix(d)?;
        }
        if s < 0 || s % l as i128 != 0 {
            return Err(Error::Data(format!(
                "fixed-point counts are inconsistent: {s} points would lie in orbits of length {l}"
            )));
        }
        let count = (s / l as i128) as u64;
        covered += s;
        if count > 0 {
            orbits.push(OrbitType { length: l, stabilizer: format!("<g^{l}>"), count });
        }
    }
    if covered != total as i128 {
        return Err(Error::Data(format!("orbits cover {covered} of {total} points")));
    }
    Ok(OrbitTypeReport { group_order: n, total, orbits })
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&x| b[x]).collect()
}

/// The finite group generated by permutations of `0..n`, with a word for
/// every element.
pub(crate) struct Enumerated {
    pub elements: Vec<Vec<usize>>,
    pub words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Enumerated {
    pub(crate) fn new(perms: &[Vec<usize>], n: usize) -> Result<Self> {
        let id: Vec<usize> = (0..n).collect();
        let mut elements = vec![id.clone()];
        let mut words = vec![Vec::new()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut i = 0;
        while i < elements.len() {
            for (g, p) in perms.iter().enumerate() {
                let y = compose(&elements[i], p);
                if !index.contains_key(&y) {
                    if elements.len() >= MAX_GAMMA {
                        return Err(Error::ResourceLimit(format!("acting group exceeds {MAX_GAMMA} elements")));
                    }
                    index.insert(y.clone(), elements.len());
                    let mut w = words[i].clone();
                    w.push(g);
                    words.push(w);
                    elements.push(y);
                }
            }
            i += 1;
        }
        Ok(Enumerated { elements, words, index })
    }

    fn len(&self) -> usize {
        self.elements.len()
    }

    fn order_of(&self, i: usize) -> usize {
        let mut k = 1;
        let mut x = self.elements[i].clone();
        let id = &self.elements[0];
        while &x != id {
            x = compose(&x, &self.elements[i]);
            k += 1;
        }
        k
    }

    fn is_cyclic(&self) -> bool {
        (0..self.len()).any(|i| self.order_of(i) == self.len())
    }

    fn inverse(&self, i: usize) -> usize {
        let e = &self.elements[i];
        let mut inv = vec![0; e.len()];
        for (a, &b) in e.iter().enumerate() {
            inv[b] = a;
        }
        self.index[&inv]
    }

    fn stabilizer(&self, point: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.elements[i][point] == point).collect()
    }

    /// The least conjugate of a subgroup, as a sorted index list.
    fn conjugacy_key(&self, sub: &[usize]) -> Vec<usize> {
        (0..self.len())
            .map(|h| {
                let hi = self.inverse(h);
                let mut c: Vec<usize> = sub
                    .iter()
                    .map(|&s| {
                        let x = compose(&compose(&self.elements[hi], &self.elements[s]), &self.elements[h]);
                        self.index[&x]
                    })
                    .collect();
                c.sort_unstable();
                c
            })
            .min()
            .unwrap()
    }

    fn word_label(&self, i: usize, gamma: &[String]) -> String {
        if self.words[i].is_empty() {
            "1".into()
        } else {
            self.words[i].iter().map(|&g| gamma[g].as_str()).collect::<Vec<_>>().join("*")
        }
    }
}

pub(crate) fn generated_group_is_cyclic(perms: &[Vec<usize>], n: usize) -> bool {
    Enumerated::new(perms, n).map(|e| e.is_cyclic()).unwrap_or(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Verified,
    Consistent,
    RefutedCount,
    RefutedFixedpoints,
}

impl Verdict {
    pub fn is_refuted(self) -> bool {
        matches!(self, Verdict::RefutedCount | Verdict::RefutedFixedpoints)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IsomorphismReport {
    pub verdict: Verdict,
    /// Order of the group induced on both sets together.
    pub gamma_image_order: usize,
    pub gamma_image_cyclic: bool,
    pub x_orbits: Vec<OrbitType>,
    pub y_orbits: Vec<OrbitType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

struct Joint {
    group: Enumerated,
    nx: usize,
    /// Stabilizer class key of every point of `X ⊔ Y`.
    keys: Vec<Vec<usize>>,
    /// Distinct keys, by decreasing subgroup order.
    classes: Vec<Vec<usize>>,
}

fn joint(x: &ActionTable, y: &ActionTable) -> Result<Joint> {
    if x.gamma != y.gamma {
        return Err(Error::Input(format!("acting generators differ: {:?} vs {:?}", x.gamma, y.gamma)));
    }
    x.validate()?;
    y.validate()?;
    let nx = x.len();
    let perms: Vec<Vec<usize>> = x
        .perms
        .iter()
        .zip(&y.perms)
        .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&v| v + nx)).collect())
        .collect();
    let group = Enumerated::new(&perms, nx + y.len())?;
    let mut keys = Vec::with_capacity(nx + y.len());
    let mut cache: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for pt in 0..nx + y.len() {
        let st = group.stabilizer(pt);
        let key = cache.entry(st.clone()).or_insert_with(|| group.conjugacy_key(&st)).clone();
        keys.push(key);
    }
    // larger stabilizers first, so S1 always means "fixed point"
    let mut classes: Vec<Vec<usize>> = keys.clone();
    classes.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    classes.dedup();
    Ok(Joint { group, nx, keys, classes })
}

fn orbit_types(j: &Joint, points: std::ops::Range<usize>) -> Vec<OrbitType> {
    let mut counts: BTreeMap<(u64, usize), u64> = BTreeMap::new();
    for pt in points {
        let class = j.classes.iter().position(|k| k == &j.keys[pt]).unwrap();
        let len = (j.group.len() / j.keys[pt].len()) as u64;
        *counts.entry((len, class)).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|((length, class), pts)| OrbitType { length, stabilizer: format!("S{}", class + 1), count: pts / length })
        .collect()
}

/// Decides whether `X` and `Y` are isomorphic `Γ`-sets, as far as the
/// guarantees attached to the tables allow.
pub fn gamma_set_isomorphic(x: &ActionTable, y: &ActionTable) -> Result<IsomorphismReport> {
    let j = joint(x, y)?;
    let nx = j.nx;
    let n = nx + y.len();
    let cyclic = j.group.is_cyclic();
    let mut report = IsomorphismReport {
        verdict: Verdict::Verified,
        gamma_image_order: j.group.len(),
        gamma_image_cyclic: cyclic,
        x_orbits: orbit_types(&j, 0..nx),
        y_orbits: orbit_types(&j, nx..n),
        witness: None,
    };
    if x.len() != y.len() {
        report.verdict = Verdict::RefutedCount;
        report.witness = Some(format!("|X| = {}, |Y| = {}", x.len(), y.len()));
        return Ok(report);
    }
    for (i, e) in j.group.elements.iter().enumerate() {
        let fx = (0..nx).filter(|&a| e[a] == a).count();
        let fy = (nx..n).filter(|&a| e[a] == a).count();
        if fx != fy {
            report.verdict = Verdict::RefutedFixedpoints;
            report.witness = Some(format!("{} fixes {fx} points of X and {fy} of Y", j.group.word_label(i, &x.gamma)));
            return Ok(report);
        }
    }
    let explicit = x.guarantee == Guarantee::Explicit && y.guarantee == Guarantee::Explicit;
    if explicit {
        // equal marks for every stabilizer decide isomorphism
        for key in &j.classes {
            let fx = (0..nx).filter(|&a| key.iter().all(|&s| j.group.elements[s][a] == a)).count();
            let fy = (nx..n).filter(|&a| key.iter().all(|&s| j.group.elements[s][a] == a)).count();
            if fx != fy {
                report.verdict = Verdict::RefutedFixedpoints;
                let gens: Vec<String> = key.iter().map(|&s| j.group.word_label(s, &x.gamma)).collect();
                report.witness = Some(format!("the subgroup {{{}}} fixes {fx} points of X and {fy} of Y", gens.join(", ")));
                return Ok(report);
            }
        }
        return Ok(report);
    }
    if !cyclic {
        report.verdict = Verdict::Consistent;
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct BijectionCertificate {
    pub group: String,
    pub prime: u64,
    pub gamma_generators: Vec<String>,
    pub verdict: Verdict,
    /// `(index in X, label in Y)`.
    pub pairs: Vec<(usize, String)>,
    pub orbit_summary: BTreeMap<String, Vec<OrbitType>>,
    #[serde(skip)]
    map: Vec<usize>,
}

impl BijectionCertificate {
    /// `map[x]` is the index in `Y` paired with `x`.
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Checks bijectivity and `pair(x^a) = pair(x)^a` for every generator `a`.
    pub fn verify(&self, x: &ActionTable, y: &ActionTable) -> Result<()> {
        let n = x.len();
        let mut hit = vec![false; y.len()];
        if self.map.len() != n || y.len() != n || self.map.iter().any(|&v| v >= n || std::mem::replace(&mut hit[v], true)) {
            return Err(Error::Internal("certificate pairing is not a bijection".into()));
        }
        for (g, (px, py)) in x.perms.iter().zip(&y.perms).enumerate() {
            for a in 0..n {
                if self.map[px[a]] != py[self.map[a]] {
                    return Err(Error::Internal(format!(
                        "certificate fails for generator {} at {}",
                        x.gamma[g], x.labels[a]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// An explicit equivariant bijection `X → Y`, re-verified before it is returned.
pub fn build_bijection(
    x: &ActionTable,
    y: &ActionTable,
    verdict: Verdict,
    group: &str,
    prime: u64,
) -> Result<BijectionCertificate> {
    if verdict != Verdict::Verified {
        return Err(Error::Contract(format!("a bijection needs a VERIFIED verdict, got {verdict:?}")));
    }
    let j = joint(x, y)?;
    let nx = j.nx;
    let n = x.len();
    if y.len() != n {
        return Err(Error::Contract("sets of different size".into()));
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for a in 0..n {
        if map[a] != usize::MAX {
            continue;
        }
        let stab = j.group.stabilizer(a);
        let b = (0..n)
            .find(|&b| !used[b] && j.group.stabilizer(nx + b) == stab)
            .ok_or_else(|| Error::Internal("no partner orbit with the same stabilizer".into()))?;
        for e in &j.group.elements {
            let xa = e[a];
            let yb = e[nx + b] - nx;
            if map[xa] == usize::MAX {
                map[xa] = yb;
                used[yb] = true;
            } else if map[xa] != yb {
                return Err(Error::Internal("orbit pairing is not well defined".into()));
            }
        }
    }
    let mut summary = BTreeMap::new();
    summary.insert("x".to_string(), orbit_types(&j, 0..nx));
    summary.insert("y".to_string(), orbit_types(&j, nx..nx + n));
    let cert = BijectionCertificate {
        group: group.to_string(),
        prime,
        gamma_generators: x.gamma.clone(),
        verdict,
        pairs: (0..n).map(|a| (a, y.labels[map[a]].clone())).collect(),
        orbit_summary: summary,
        map,
    };
    cert.verify(x, y)?;
    Ok(cert)
}

/// Fixed-point counts of `γ^d` for every divisor `d` of the order of a
/// single-generator action, in the form expected by [`cyclic_orbit_types`].
pub fn cyclic_fixed_points(t: &ActionTable) -> Result<(u64, BTreeMap<u64, u64>)> {
    if t.perms.len() != 1 {
        return Err(Error::Input("a single generator is required".into()));
    }
    let g = Enumerated::new(&t.perms, t.len())?;
    let n = g.len() as u64;
    let p = &t.perms[0];
    let mut out = BTreeMap::new();
    for d in divisors(n) {
        let mut x: Vec<usize> = (0..t.len()).collect();
        for _ in 0..d {
            x = compose(&x, p);
        }
        out.insert(d, x.iter().enumerate().filter(|(i, &v)| *i == v).count() as u64);
    }
    Ok((n, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(perms: Vec<Vec<usize>>, guarantee: Guarantee) -> ActionTable {
        let n = perms[0].len();
        ActionTable {
            gamma: (0..perms.len()).map(|i| format!("g{i}")).collect(),
            labels: (0..n).map(|i| format!("x{i}")).collect(),
            perms,
            guarantee,
            power_relations: Vec::new(),
        }
    }

    #[test]
    fn orbit_type_examples() {
        let r = cyclic_orbit_types(1, 11, &BTreeMap::new()).unwrap();
        assert_eq!(r.summary(), BTreeMap::from([(1, 11)]));
        let r = cyclic_orbit_types(2, 11, &BTreeMap::from([(1, 9)])).unwrap();
        assert_eq!(r.summary(), BTreeMap::from([(1, 9), (2, 1)]));
        let bad = cyclic_orbit_types(4, 4, &BTreeMap::from([(1, 0), (2, 2)]));
        assert!(matches!(bad, Err(Error::Data(_))));
    }

    #[test]
    fn verdicts() {
        let swap = table(vec![vec![1, 0, 2]], Guarantee::Explicit);
        let other = table(vec![vec![0, 2, 1]], Guarantee::Explicit);
        let id = table(vec![vec![0, 1, 2]], Guarantee::Explicit);
        assert_eq!(gamma_set_isomorphic(&swap, &other).unwrap().verdict, Verdict::Verified);
        assert_eq!(gamma_set_isomorphic(&swap, &id).unwrap().verdict, Verdict::RefutedFixedpoints);
        let small = table(vec![vec![1, 0]], Guarantee::Explicit);
        assert_eq!(gamma_set_isomorphic(&swap, &small).unwrap().verdict, Verdict::RefutedCount);
        let mut renamed = swap.clone();
        renamed.gamma = vec!["h".into()];
        assert!(matches!(gamma_set_isomorphic(&swap, &renamed), Err(Error::Input(_))));
    }

    #[test]
    fn klein_four_marks() {
        // V4 acting regularly plus two fixed points, versus the three
        // quotients of V4 by its subgroups of order 2: every element has the
        // same number of fixed points on both, yet the sets differ.
        let x = table(vec![vec![1, 0, 3, 2, 4, 5], vec![2, 3, 0, 1, 4, 5]], Guarantee::Explicit);
        let y = table(vec![vec![0, 1, 3, 2, 5, 4], vec![1, 0, 2, 3, 5, 4]], Guarantee::Explicit);
        let rep = gamma_set_isomorphic(&x, &y).unwrap();
        assert_eq!(rep.verdict, Verdict::RefutedFixedpoints);
        assert!(rep.witness.unwrap().contains("subgroup"));
        let mut bridge = y.clone();
        bridge.guarantee = Guarantee::BridgeFixedPoints;
        assert_eq!(gamma_set_isomorphic(&x, &bridge).unwrap().verdict, Verdict::Consistent);
        assert_eq!(gamma_set_isomorphic(&y, &y).unwrap().verdict, Verdict::Verified);
    }

    #[test]
    fn bijection_and_contract() {
        let x = table(vec![vec![1, 2, 0, 3, 5, 4]], Guarantee::Explicit);
        let y = table(vec![vec![0, 2, 1, 4, 5, 3]], Guarantee::Explicit);
        let rep = gamma_set_isomorphic(&x, &y).unwrap();
        assert_eq!(rep.verdict, Verdict::Verified);
        let cert = build_bijection(&x, &y, rep.verdict, "test", 2).unwrap();
        cert.verify(&x, &y).unwrap();
        assert!(matches!(build_bijection(&x, &y, Verdict::Consistent, "test", 2), Err(Error::Contract(_))));
        let id = table(vec![vec![0, 1, 2]], Guarantee::Explicit);
        let cert = build_bijection(&id, &id, Verdict::Verified, "t", 2).unwrap();
        assert_eq!(cert.map(), &[0, 1, 2]);
    }
}
