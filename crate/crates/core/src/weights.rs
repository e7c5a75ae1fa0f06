//! Radical `p`-subgroups and `p`-weights.
//!
//! A weight is a pair `(Q, δ)` with `Q` radical and `δ` an irreducible
//! character of `N_G(Q)/Q` of defect zero; weights are counted up to
//! `G`-conjugacy.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::numtheory::{gcd, is_prime};
use crate::perm::{ClassData, Permutation, PermutationGroup, Quotient};
use crate::Limits;

#[derive(Clone, Debug)]
pub struct RadicalSubgroup {
    pub subgroup: PermutationGroup,
    pub normalizer: PermutationGroup,
    /// Position in the canonical list of radical classes.
    pub class_id: usize,
}

impl RadicalSubgroup {
    pub fn order(&self) -> u64 {
        self.subgroup.order()
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Input(format!("{p} is not prime")))
    }
}

/// Number of elements of `h` in each class of `G`.
fn class_distribution(h: &PermutationGroup, classes: &ClassData) -> Vec<u32> {
    let mut counts = vec![0u32; classes.len()];
    h.for_each_element(|x| counts[classes.class_of(x).expect("member")] += 1);
    counts
}

/// One representative of each class of radical `p`-subgroups, ordered by
/// `|Q|` and then by how the elements of `Q` distribute over the classes of `G`.
pub fn radical_subgroups(
    g: &PermutationGroup,
    p: u64,
    classes: &ClassData,
    limits: &Limits,
) -> Result<Vec<RadicalSubgroup>> {
    check_prime(p)?;
    let sylow = g.sylow_subgroup(p)?;
    let subgroups = sylow.p_group_subgroups(p, limits.max_subgroups)?;
    let mut buckets: BTreeMap<(u64, Vec<u32>), Vec<PermutationGroup>> = BTreeMap::new();
    for s in subgroups {
        let key = (s.order(), class_distribution(&s, classes));
        let reps = buckets.entry(key).or_default();
        if !reps.iter().any(|r| g.is_conjugate_subgroup(r, &s).is_some()) {
            reps.push(s);
        }
    }
    let mut out = Vec::new();
    for reps in buckets.into_values() {
        for q in reps {
            let n = if q.order() == 1 { g.clone() } else { g.normalizer(&q)? };
            if n.p_core(p)?.order() == q.order() {
                out.push(RadicalSubgroup { subgroup: q, normalizer: n, class_id: out.len() });
            }
        }
    }
    Ok(out)
}

/// Supplies character tables of the local quotients `N_G(Q)/Q`.
pub trait LocalTableProvider: Sync {
    fn local_table(&self, radical: &RadicalSubgroup, quotient: &PermutationGroup, classes: &ClassData) -> Result<CharacterTable>;
}

/// Computes local tables in-process; a table of `G` itself, when given, is
/// used for `Q = 1`.
pub struct ComputedTables<'a> {
    pub limits: Limits,
    pub global: Option<&'a CharacterTable>,
}

impl LocalTableProvider for ComputedTables<'_> {
    fn local_table(&self, radical: &RadicalSubgroup, quotient: &PermutationGroup, classes: &ClassData) -> Result<CharacterTable> {
        if radical.order() == 1 {
            if let Some(t) = self.global {
                if t.len() != classes.len() || t.group_order() != classes.group_order() {
                    return Err(Error::Internal("supplied table does not belong to the group".into()));
                }
                return Ok(t.clone());
            }
        }
        let name = format!("N(Q{})/Q{}", radical.class_id + 1, radical.class_id + 1);
        CharacterTable::compute(&name, quotient, classes, &self.limits).map_err(|e| match e {
            Error::ResourceLimit(m) => Error::Dependency(format!(
                "no character table for the local quotient N_G(Q)/Q with |Q| = {} and order {}: {m}",
                radical.order(),
                quotient.order()
            )),
            other => other,
        })
    }
}

/// Local data at one radical class.
#[derive(Clone, Debug)]
pub struct RadicalWeights {
    pub radical: RadicalSubgroup,
    pub quotient: Quotient,
    pub classes: ClassData,
    pub table: CharacterTable,
    /// Defect zero rows of the local table.
    pub defect_zero: Vec<usize>,
    /// Orbits of `N_G(Q)` on `defect_zero`; each is one weight class.
    pub orbits: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightClass {
    pub id: usize,
    pub label: String,
    /// Index into [`WeightClassSet::radicals`].
    pub radical: usize,
    /// Representative row of the local table.
    pub character: usize,
    pub degree: u64,
}

#[derive(Clone, Debug)]
pub struct WeightClassSet {
    pub prime: u64,
    pub radicals: Vec<RadicalWeights>,
    pub classes: Vec<WeightClass>,
}

/// Row permutation `χ ↦ χ ∘ π` where `pre[c]` is the class whose value is
/// read at class `c`; `None` if some image is not a row.
pub fn row_permutation(table: &CharacterTable, pre: &[usize]) -> Option<Vec<usize>> {
    (0..table.len())
        .map(|i| {
            let img: Vec<_> = pre.iter().map(|&c| table.value(i, c).clone()).collect();
            table.row_index(&img)
        })
        .collect()
}

/// Orbits of the permutations `perms` restricted to `subset` (which must be invariant).
pub(crate) fn orbits_on(subset: &[usize], perms: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for &s in subset {
        if seen.contains(&s) {
            continue;
        }
        let mut orbit = vec![s];
        seen.insert(s);
        let mut i = 0;
        while i < orbit.len() {
            for p in perms {
                let t = p[orbit[i]];
                if !subset.contains(&t) {
                    return Err(Error::Internal("action does not preserve the defect zero characters".into()));
                }
                if seen.insert(t) {
                    orbit.push(t);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    Ok(out)
}

/// The class permutation of `N/Q` induced by conjugation with `x̄`, in the
/// "read from" form used by [`row_permutation`] for `χ ↦ χ^x`.
fn conjugation_pre(classes: &ClassData, x: &Permutation) -> Vec<usize> {
    let xi = x.inverse();
    classes
        .classes()
        .iter()
        .map(|c| classes.class_of(&c.representative.conjugate_by(&xi)).expect("member"))
        .collect()
}

pub fn local_data(radical: &RadicalSubgroup, p: u64, provider: &dyn LocalTableProvider, limits: &Limits) -> Result<RadicalWeights> {
    let quotient = Quotient::new(&radical.normalizer, &radical.subgroup)?;
    let classes = ClassData::compute(quotient.group(), limits)?;
    let table = provider.local_table(radical, quotient.group(), &classes)?;
    let defect_zero = table.defect_zero(p);
    let perms = radical
        .normalizer
        .generators()
        .iter()
        .map(|n| {
            let pre = conjugation_pre(&classes, &quotient.project(n)?);
            row_permutation(&table, &pre).ok_or_else(|| Error::Internal("conjugation does not permute characters".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let orbits = orbits_on(&defect_zero, &perms)?;
    Ok(RadicalWeights { radical: radical.clone(), quotient, classes, table, defect_zero, orbits })
}

/// All weight classes, radical by radical.
pub fn enumerate_weights(
    radicals: &[RadicalSubgroup],
    p: u64,
    provider: &dyn LocalTableProvider,
    limits: &Limits,
) -> Result<WeightClassSet> {
    check_prime(p)?;
    let data: Vec<RadicalWeights> = if limits.threads > 1 && radicals.len() > 1 {
        let chunk = radicals.len().div_ceil(limits.threads);
        std::thread::scope(|s| {
            let handles: Vec<_> = radicals
                .chunks(chunk)
                .map(|part| s.spawn(move || part.iter().map(|r| local_data(r, p, provider, limits)).collect::<Vec<_>>()))
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect::<Result<Vec<_>>>()
        })?
    } else {
        radicals.iter().map(|r| local_data(r, p, provider, limits)).collect::<Result<Vec<_>>>()?
    };
    let mut out = Vec::new();
    let mut classes = Vec::new();
    for (ri, data) in data.into_iter().enumerate() {
        let r = &data.radical;
        for orbit in &data.orbits {
            let character = orbit[0];
            classes.push(WeightClass {
                id: classes.len(),
                label: format!("Q{}:{}", r.class_id + 1, data.table.names()[character]),
                radical: ri,
                character,
                degree: data.table.degree(character),
            });
        }
        out.push(data);
    }
    Ok(WeightClassSet { prime: p, radicals: out, classes })
}

impl WeightClassSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of weight classes per radical class.
    pub fn counts(&self) -> Vec<usize> {
        self.radicals.iter().map(|r| r.orbits.len()).collect()
    }

    pub fn report(&self) -> WeightReport {
        WeightReport {
            prime: self.prime,
            radicals: self
                .radicals
                .iter()
                .map(|r| RadicalReport {
                    q_order: r.radical.order(),
                    q_abelian_invariants: r.radical.subgroup.abelian_invariants(),
                    normalizer_order: r.radical.normalizer.order(),
                    local_quotient_order: r.quotient.group().order(),
                    dz_degrees: r.defect_zero.iter().map(|&i| r.table.degree(i)).collect(),
                    weight_classes: r.orbits.len(),
                })
                .collect(),
            radical_classes: self.radicals.len(),
            total_weight_classes: self.classes.len(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RadicalReport {
    #[serde(rename = "Q_order")]
    pub q_order: u64,
    #[serde(rename = "Q_abelian_invariants")]
    pub q_abelian_invariants: Vec<u64>,
    pub normalizer_order: u64,
    pub local_quotient_order: u64,
    pub dz_degrees: Vec<u64>,
    pub weight_classes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightReport {
    pub prime: u64,
    pub radicals: Vec<RadicalReport>,
    pub radical_classes: usize,
    pub total_weight_classes: usize,
}

/// Number of classes of elements of order prime to `p`, i.e. `|IBr(G)|`.
pub fn p_regular_class_count(classes: &ClassData, p: u64) -> usize {
    classes.classes().iter().filter(|c| gcd(c.element_order, p) == 1).count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AwcReport {
    pub ibr_count: usize,
    pub weight_class_count: usize,
    pub equal: bool,
}

pub fn awc_count_check(classes: &ClassData, weights: &WeightClassSet) -> AwcReport {
    let ibr_count = p_regular_class_count(classes, weights.prime);
    AwcReport { ibr_count, weight_class_count: weights.len(), equal: ibr_count == weights.len() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(degree: usize, cycles: &[&str]) -> PermutationGroup {
        let gens = cycles.iter().map(|c| Permutation::parse_cycles(c, degree).unwrap()).collect();
        PermutationGroup::from_generators(degree, gens).unwrap()
    }

    fn run(group: &PermutationGroup, p: u64) -> (ClassData, Vec<RadicalSubgroup>, WeightClassSet) {
        let limits = Limits::default();
        let classes = ClassData::compute(group, &limits).unwrap();
        let rads = radical_subgroups(group, p, &classes, &limits).unwrap();
        let provider = ComputedTables { limits: limits.clone(), global: None };
        let w = enumerate_weights(&rads, p, &provider, &limits).unwrap();
        (classes, rads, w)
    }

    #[test]
    fn a5_at_two() {
        let a5 = g(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        let (classes, rads, w) = run(&a5, 2);
        assert_eq!(rads.iter().map(|r| r.order()).collect::<Vec<_>>(), vec![1, 4]);
        assert_eq!(w.counts(), vec![1, 3]);
        assert_eq!(p_regular_class_count(&classes, 2), 4);
        assert!(awc_count_check(&classes, &w).equal);
    }

    #[test]
    fn p_group_has_one_weight() {
        let d8 = g(4, &["(1,2,3,4)", "(1,3)"]);
        let (classes, rads, w) = run(&d8, 2);
        assert_eq!(rads.len(), 1);
        assert_eq!(rads[0].order(), 8);
        assert_eq!(w.len(), 1);
        assert_eq!(p_regular_class_count(&classes, 2), 1);
    }

    #[test]
    fn coprime_prime_gives_all_characters() {
        let s3 = g(3, &["(1,2)", "(1,2,3)"]);
        let (classes, rads, w) = run(&s3, 5);
        assert_eq!(rads.len(), 1);
        assert_eq!(w.len(), classes.len());
    }

    #[test]
    fn s4_at_two_and_three() {
        let s4 = g(4, &["(1,2)", "(1,2,3,4)"]);
        for p in [2, 3] {
            let (classes, rads, w) = run(&s4, p);
            for r in &rads {
                assert!(s4.p_core(p).unwrap().is_subgroup_of(&r.subgroup));
            }
            assert!(awc_count_check(&classes, &w).equal, "p = {p}");
        }
    }

    #[test]
    fn rejects_composite() {
        let s3 = g(3, &["(1,2)", "(1,2,3)"]);
        let c = ClassData::compute(&s3, &Limits::default()).unwrap();
        assert!(matches!(radical_subgroups(&s3, 4, &c, &Limits::default()), Err(Error::Input(_))));
    }
}
