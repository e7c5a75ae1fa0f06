//! Ordinary character tables: computation, validation, ingestion, defect zero
//! characters and p-blocks.

mod dixon;
mod file;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

pub use file::TableFile;

use crate::cyclo::{Cyclotomic, ResidueElement, ResidueField};
use crate::error::{Error, Result};
use crate::numtheory::{prime_divisors, valuation};
use crate::perm::{ClassData, ConjugacyClass, PermutationGroup};
use crate::Limits;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: String,
    order: u64,
    classes: Vec<ConjugacyClass>,
    /// For each prime `q` dividing the exponent, the class of `q`-th powers.
    power_maps: BTreeMap<u64, Vec<usize>>,
    values: Vec<Vec<Cyclotomic>>,
    names: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub characters: Vec<usize>,
    pub defect: u32,
    pub is_principal: bool,
}

/// Ordering of rows: degree, then values column by column with smaller
/// conductors first and, for equal conductors, larger coefficients first.
/// The trivial character is therefore always row 0.
fn row_cmp(a: &[Cyclotomic], b: &[Cyclotomic]) -> Ordering {
    let da = a[0].as_integer();
    let db = b[0].as_integer();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            let o = x.conductor().cmp(&y.conductor()).then_with(|| {
                for (s, t) in x.terms().iter().zip(y.terms()) {
                    let c = s.0.cmp(&t.0).then_with(|| t.1.cmp(&s.1));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                y.terms().len().cmp(&x.terms().len())
            });
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

fn default_names(degrees: &[u64]) -> Vec<String> {
    let mut names = Vec::with_capacity(degrees.len());
    for (i, &d) in degrees.iter().enumerate() {
        let same = degrees.iter().filter(|&&x| x == d).count();
        if same == 1 {
            names.push(format!("{d}"));
        } else {
            let pos = degrees[..i].iter().filter(|&&x| x == d).count();
            names.push(format!("{d}{}", letter_suffix(pos)));
        }
    }
    names
}

fn letter_suffix(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).unwrap()
}

impl CharacterTable {
    /// Computes the table of `group` by the class-matrix method.
    pub fn compute(name: &str, group: &PermutationGroup, classes: &ClassData, limits: &Limits) -> Result<Self> {
        if classes.len() > limits.max_classes {
            return Err(Error::ResourceLimit(format!(
                "{} classes exceed the in-process table bound {}; supply a validated table file instead",
                classes.len(),
                limits.max_classes
            )));
        }
        let consts = dixon::class_constants(group, classes)?;
        let power_classes: Vec<Vec<usize>> = classes
            .classes()
            .iter()
            .map(|c| {
                (0..c.element_order)
                    .map(|l| classes.class_of(&c.representative.pow(l as i64)).expect("member"))
                    .collect()
            })
            .collect();
        let mut last = None;
        for l in dixon::candidate_primes(classes.exponent(), classes.group_order()).take(20) {
            let Some(rows) = dixon::table_mod(l, &consts, classes, &power_classes) else { continue };
            match Self::assemble(name, classes, rows) {
                Ok(t) => return Ok(t),
                Err(e) => last = Some(e),
            }
        }
        Err(last.unwrap_or_else(|| Error::Internal("no suitable prime for the class-matrix method".into())))
    }

    fn assemble(name: &str, classes: &ClassData, mut rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        rows.sort_by(|a, b| row_cmp(a, b));
        let power_maps = prime_divisors(classes.exponent()).into_iter().map(|q| (q, classes.power_map(q as i64))).collect();
        let mut t = CharacterTable {
            group: name.to_string(),
            order: classes.group_order(),
            classes: classes.classes().to_vec(),
            power_maps,
            values: rows,
            names: Vec::new(),
        };
        t.names = default_names(&t.degrees());
        t.verify()?;
        Ok(t)
    }

    /// Builds a table from external data and checks it against the group's
    /// own class data. Rows are re-sorted into canonical order; supplied
    /// character names travel with their rows.
    pub fn from_file(file: &TableFile, classes: &ClassData) -> Result<Self> {
        let r = classes.len();
        let bad = |rel: &str, d: String| Err(Error::validation(rel, d));
        if file.classes.len() != r {
            return bad("class data", format!("{} classes in file, {} computed", file.classes.len(), r));
        }
        for (i, (fc, c)) in file.classes.iter().zip(classes.classes()).enumerate() {
            if fc.order != c.element_order || fc.size != c.size {
                return bad(
                    "class data",
                    format!(
                        "class {}: file has order {} size {}, computed order {} size {}",
                        i + 1,
                        fc.order,
                        fc.size,
                        c.element_order,
                        c.size
                    ),
                );
            }
        }
        let mut power_maps = BTreeMap::new();
        for q in prime_divisors(classes.exponent()) {
            let computed = classes.power_map(q as i64);
            let Some(given) = file.power_maps.get(&q.to_string()) else {
                return bad("power maps", format!("missing {q}-th power map"));
            };
            let given: Vec<usize> = given.iter().map(|&x| x.wrapping_sub(1) as usize).collect();
            if given != computed {
                return bad("power maps", format!("{q}-th power map differs from the group's"));
            }
            power_maps.insert(q, computed);
        }
        if file.values.len() != r || file.values.iter().any(|row| row.len() != r) {
            return bad("shape", format!("value matrix must be {r} x {r}"));
        }
        if let Some(names) = &file.character_names {
            if names.len() != r {
                return bad("shape", format!("{} character names for {r} rows", names.len()));
            }
        }
        let mut rows: Vec<(Vec<Cyclotomic>, Option<String>)> = file
            .values
            .iter()
            .enumerate()
            .map(|(i, row)| (row.iter().map(|v| v.0.clone()).collect(), file.character_names.as_ref().map(|n| n[i].clone())))
            .collect();
        let exp = classes.exponent();
        if let Some(v) = rows.iter().flat_map(|(r, _)| r).find(|v| !exp.is_multiple_of(v.conductor())) {
            return bad("conductor", format!("value {v} does not lie in Q(ζ_{exp})"));
        }
        rows.sort_by(|a, b| row_cmp(&a.0, &b.0));
        let mut t = CharacterTable {
            group: file.group.clone(),
            order: classes.group_order(),
            classes: classes.classes().to_vec(),
            power_maps,
            values: rows.iter().map(|(r, _)| r.clone()).collect(),
            names: Vec::new(),
        };
        t.verify()?;
        t.names = if file.character_names.is_some() {
            rows.into_iter().map(|(_, n)| n.unwrap()).collect()
        } else {
            default_names(&t.degrees())
        };
        Ok(t)
    }

    /// Parses a JSON table file and validates it against `classes`.
    pub fn load(json: &str, classes: &ClassData) -> Result<Self> {
        Self::from_file(&TableFile::parse(json)?, classes)
    }

    pub fn to_file(&self) -> TableFile {
        TableFile::from_table(self)
    }

    /// Checks degrees, Σ χ(1)² = |G| and both orthogonality relations exactly.
    pub fn verify(&self) -> Result<()> {
        let r = self.classes.len();
        let order = BigInt::from(self.order);
        let mut sum_sq = BigInt::zero();
        for (i, row) in self.values.iter().enumerate() {
            match row[0].as_integer() {
                Some(d) if d > BigInt::zero() && (&order % &d).is_zero() => sum_sq += &d * &d,
                _ => {
                    return Err(Error::validation(
                        "degree",
                        format!("row {}: χ(1) = {} is not a positive divisor of |G|", i + 1, row[0]),
                    ))
                }
            }
        }
        if sum_sq != order {
            return Err(Error::validation("degree sum", format!("Σ χ(1)² = {sum_sq}, |G| = {}", self.order)));
        }
        let sizes: Vec<BigRational> =
            self.classes.iter().map(|c| BigRational::from_integer(BigInt::from(c.size))).collect();
        let conj: Vec<Vec<Cyclotomic>> = self.values.iter().map(|row| row.iter().map(Cyclotomic::conj).collect()).collect();
        for a in 0..r {
            for b in a..r {
                let mut s = Cyclotomic::zero();
                for k in 0..r {
                    s = &s + &(&self.values[a][k] * &conj[b][k]).scale(&sizes[k]);
                }
                let expect = if a == b { Cyclotomic::from_integer(self.order as i64) } else { Cyclotomic::zero() };
                if s != expect {
                    return Err(Error::validation(
                        "row orthogonality",
                        format!("rows {} and {}: Σ |C| χ conj(ψ) = {s}", a + 1, b + 1),
                    ));
                }
            }
        }
        for k in 0..r {
            for l in k..r {
                let mut s = Cyclotomic::zero();
                for i in 0..r {
                    s = &s + &(&self.values[i][k] * &conj[i][l]);
                }
                let expect = if k == l {
                    Cyclotomic::from_integer(self.classes[k].centralizer_order as i64)
                } else {
                    Cyclotomic::zero()
                };
                if s != expect {
                    return Err(Error::validation(
                        "column orthogonality",
                        format!("columns {} and {}: Σ χ(g) conj(χ(h)) = {s}", k + 1, l + 1),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn group_name(&self) -> &str {
        &self.group
    }

    pub fn group_order(&self) -> u64 {
        self.order
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Vec<Cyclotomic>] {
        &self.values
    }

    pub fn value(&self, row: usize, class: usize) -> &Cyclotomic {
        &self.values[row][class]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Replaces the display names of the rows.
    pub fn set_names(&mut self, names: Vec<String>) -> Result<()> {
        if names.len() != self.len() {
            return Err(Error::Input(format!("{} names for {} characters", names.len(), self.len())));
        }
        self.names = names;
        Ok(())
    }

    pub fn power_maps(&self) -> &BTreeMap<u64, Vec<usize>> {
        &self.power_maps
    }

    pub fn exponent(&self) -> u64 {
        self.classes.iter().fold(1, |e, c| crate::numtheory::lcm(e, c.element_order))
    }

    pub fn degree(&self, row: usize) -> u64 {
        self.values[row][0].as_integer().and_then(|d| d.to_u64()).expect("verified degree")
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.len()).map(|i| self.degree(i)).collect()
    }

    /// Class of `g^k` for every class `g`, from the stored prime power maps.
    pub fn power_map(&self, k: u64) -> Vec<usize> {
        let mut map: Vec<usize> = (0..self.classes.len()).collect();
        let e = self.exponent();
        let k = k % e;
        if k == 0 {
            return vec![0; self.classes.len()];
        }
        for (q, a) in crate::numtheory::factorize(k) {
            let pm = self.power_maps.get(&q).cloned().unwrap_or_else(|| {
                // q does not divide the exponent: x ↦ x^q permutes classes of
                // elements of order prime to q, i.e. all of them; recover it
                // through the inverse of the Galois action on values.
                self.galois_class_map(q)
            });
            for _ in 0..a {
                map = map.iter().map(|&c| pm[c]).collect();
            }
        }
        map
    }

    /// The class permutation `[x] ↦ [x^k]` for `k` prime to the exponent,
    /// read off the columns: the column of `x^k` is the Galois image of the
    /// column of `x`.
    fn galois_class_map(&self, k: u64) -> Vec<usize> {
        let cols: Vec<Vec<Cyclotomic>> =
            (0..self.classes.len()).map(|c| self.values.iter().map(|row| row[c].clone()).collect()).collect();
        let e = self.exponent();
        (0..self.classes.len())
            .map(|c| {
                let target: Vec<Cyclotomic> = cols[c].iter().map(|v| v.galois_in(e, k).expect("unit")).collect();
                (0..cols.len())
                    .find(|&d| cols[d] == target && self.classes[d].size == self.classes[c].size)
                    .expect("Galois image of a column is a column")
            })
            .collect()
    }

    /// Characters of `p`-defect zero.
    pub fn defect_zero(&self, p: u64) -> Vec<usize> {
        let full = valuation(self.order, p);
        (0..self.len()).filter(|&i| valuation(self.degree(i), p) == full).collect()
    }

    /// The central character `ω_χ(C) = |C| χ(g_C) / χ(1)` on every class.
    pub fn central_character(&self, row: usize) -> Vec<Cyclotomic> {
        let d = BigRational::from_integer(BigInt::from(self.degree(row)));
        self.values[row]
            .iter()
            .zip(&self.classes)
            .map(|(v, c)| v.scale(&(BigRational::from_integer(BigInt::from(c.size)) / &d)))
            .collect()
    }

    /// The `p`-blocks, ordered by defect and then by smallest member row.
    pub fn block_partition(&self, p: u64) -> Result<Vec<Block>> {
        let field = ResidueField::new(p, self.exponent())?;
        self.block_partition_in(&field)
    }

    pub fn block_partition_in(&self, field: &ResidueField) -> Result<Vec<Block>> {
        let p = field.characteristic();
        let mut groups: BTreeMap<Vec<ResidueElement>, Vec<usize>> = BTreeMap::new();
        for row in 0..self.len() {
            let key = self
                .central_character(row)
                .iter()
                .map(|w| {
                    field.reduce(w).map_err(|e| Error::Internal(format!("central character of row {}: {e}", row + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            groups.entry(key).or_default().push(row);
        }
        let full = valuation(self.order, p);
        let mut blocks: Vec<Block> = groups
            .into_values()
            .map(|characters| {
                let min = characters.iter().map(|&c| valuation(self.degree(c), p)).min().unwrap();
                Block { is_principal: characters.contains(&0), defect: full - min, characters }
            })
            .collect();
        blocks.sort_by_key(|b| (b.defect, b.characters[0]));
        Ok(blocks)
    }

    /// `Some(index)` for the row equal to `values` (used for actions on rows).
    pub fn row_index(&self, values: &[Cyclotomic]) -> Option<usize> {
        self.values.iter().position(|r| r.as_slice() == values)
    }

    /// Inflation of a table of `G/N` along the class map `classes of G → classes of G/N`.
    pub fn inflated_rows(&self, class_map: &[usize]) -> Vec<Vec<Cyclotomic>> {
        self.values.iter().map(|row| class_map.iter().map(|&c| row[c].clone()).collect()).collect()
    }

    pub fn is_trivial_row(&self, row: usize) -> bool {
        self.values[row].iter().all(|v| v.is_rational().is_some_and(|q| q.is_one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn group(degree: usize, cycles: &[&str]) -> (PermutationGroup, ClassData) {
        let gens = cycles.iter().map(|c| Permutation::parse_cycles(c, degree).unwrap()).collect();
        let g = PermutationGroup::from_generators(degree, gens).unwrap();
        let c = ClassData::compute(&g, &Limits::default()).unwrap();
        (g, c)
    }

    fn table(degree: usize, cycles: &[&str]) -> CharacterTable {
        let (g, c) = group(degree, cycles);
        CharacterTable::compute("test", &g, &c, &Limits::default()).unwrap()
    }

    #[test]
    fn small_degrees() {
        assert_eq!(table(3, &["(1,2)", "(1,2,3)"]).degrees(), vec![1, 1, 2]);
        assert_eq!(table(5, &["(1,2,3)", "(1,2,3,4,5)"]).degrees(), vec![1, 3, 3, 4, 5]);
        assert_eq!(table(7, &["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"]).degrees(), vec![1, 1, 1, 3, 3]);
        assert_eq!(table(4, &["(1,2,3,4)", "(1,2)"]).degrees(), vec![1, 1, 2, 3, 3]);
    }

    #[test]
    fn trivial_row_first_and_names() {
        let t = table(7, &["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"]);
        assert!(t.is_trivial_row(0));
        assert_eq!(t.names(), &["1a", "1b", "1c", "3a", "3b"]);
    }

    #[test]
    fn a5_defect_zero_and_blocks() {
        let t = table(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        assert_eq!(t.defect_zero(2), vec![3]);
        let blocks = t.block_partition(2).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0], Block { characters: vec![3], defect: 0, is_principal: false });
        assert_eq!(blocks[1], Block { characters: vec![0, 1, 2, 4], defect: 2, is_principal: true });
        assert_eq!(t.defect_zero(7).len(), 5);
        assert_eq!(t.block_partition(7).unwrap().len(), 5);
    }

    #[test]
    fn round_trip_and_perturbation() {
        let (g, c) = group(3, &["(1,2)", "(1,2,3)"]);
        let t = CharacterTable::compute("S3", &g, &c, &Limits::default()).unwrap();
        let json = t.to_file().to_json();
        let back = CharacterTable::load(&json, &c).unwrap();
        assert_eq!(back.values(), t.values());
        let mut file = TableFile::parse(&json).unwrap();
        file.values[2][1] = file::TableValue(Cyclotomic::from_integer(1));
        let err = CharacterTable::from_file(&file, &c).unwrap_err();
        assert!(matches!(err, Error::Validation { ref relation, .. } if relation.contains("orthogonality")), "{err}");
    }

    #[test]
    fn power_maps_through_the_table() {
        let t = table(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        let (_, c) = group(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        assert_eq!(t.power_map(2), c.power_map(2));
        assert_eq!(t.power_map(7), c.power_map(7));
        assert_eq!(t.power_map(4), c.power_map(4));
    }
}
