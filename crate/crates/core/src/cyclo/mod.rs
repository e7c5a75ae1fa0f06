//! Exact arithmetic in cyclotomic fields.
//!
//! An element of `Q(ζ_n)` is stored sparsely over the basis
//! `{ ζ_n^k : (k mod p^e) < φ(p^e) for every p^e || n }`, which is the tensor
//! product of the power bases of the prime-power subfields, written with the
//! roots `ζ_n^(ε_p)` (`ε_p` the CRT idempotents). The conductor is always
//! reduced to the smallest `n` whose field contains the element, so two values
//! are equal iff their representations are identical.

mod residue;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use residue::{ResidueElement, ResidueField};

use crate::error::{Error, Result};
use crate::numtheory::{factorize, gcd, inv_mod, lcm};

/// Largest conductor accepted from external files.
pub const MAX_PARSED_CONDUCTOR: u64 = 1 << 16;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    conductor: u64,
    terms: Vec<(u64, BigRational)>,
}

struct PrimePower {
    p: u64,
    e: u32,
    pe: u64,
    idempotent: u64,
}

fn prime_powers(n: u64) -> Vec<PrimePower> {
    factorize(n)
        .into_iter()
        .map(|(p, e)| {
            let pe = p.pow(e);
            let rest = n / pe;
            let idempotent = (rest as u128 * inv_mod(rest % pe, pe).unwrap() as u128 % n as u128) as u64;
            PrimePower { p, e, pe, idempotent }
        })
        .collect()
}

fn normalize(n: u64, raw: HashMap<u64, BigRational>) -> Cyclotomic {
    let pps = prime_powers(n);
    let mut acc: BTreeMap<u64, BigRational> = BTreeMap::new();
    for (k, c) in raw {
        if c.is_zero() {
            continue;
        }
        let mut expansions: Vec<(u64, bool)> = vec![(0, false)];
        for pp in &pps {
            let comp = k % pp.pe;
            let q = pp.pe / pp.p;
            let options: Vec<(u64, bool)> = if comp / q < pp.p - 1 {
                vec![(comp, false)]
            } else {
                (0..pp.p - 1).map(|j| (comp % q + j * q, true)).collect()
            };
            let mut next = Vec::with_capacity(expansions.len() * options.len());
            for &(base, neg) in &expansions {
                for &(o, oneg) in &options {
                    let e = ((base as u128 + pp.idempotent as u128 * o as u128) % n as u128) as u64;
                    next.push((e, neg ^ oneg));
                }
            }
            expansions = next;
        }
        for (e, neg) in expansions {
            let entry = acc.entry(e).or_insert_with(BigRational::zero);
            if neg {
                *entry -= &c;
            } else {
                *entry += &c;
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    if acc.is_empty() {
        return Cyclotomic::zero();
    }
    for pp in &pps {
        let lowers = acc.keys().all(|&k| {
            let comp = k % pp.pe;
            if pp.e >= 2 {
                comp % pp.p == 0
            } else {
                comp == 0
            }
        });
        if lowers {
            let m = n / pp.p;
            let raw = acc.into_iter().map(|(k, c)| (k / pp.p, c)).collect();
            return normalize(m, raw);
        }
    }
    Cyclotomic { conductor: n, terms: acc.into_iter().collect() }
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            Cyclotomic { conductor: 1, terms: vec![(0, q)] }
        }
    }

    /// `ζ_n^k` with `ζ_n = exp(2πi/n)`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1);
        let e = k.rem_euclid(n as i64) as u64;
        normalize(n, HashMap::from([(e, BigRational::one())]))
    }

    /// `Σ coeffs[k] ζ_n^k` for an arbitrary (not necessarily reduced) vector.
    pub fn from_power_coefficients(n: u64, coeffs: &[BigRational]) -> Self {
        let raw = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u64 % n, c.clone()))
            .fold(HashMap::new(), |mut m: HashMap<u64, BigRational>, (k, c)| {
                *m.entry(k).or_insert_with(BigRational::zero) += c;
                m
            });
        normalize(n, raw)
    }

    /// `Σ mult[k] ζ_n^k` with integer multiplicities.
    pub fn from_root_multiplicities(n: u64, mult: &[i64]) -> Self {
        let raw = mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(k, &m)| (k as u64, BigRational::from_integer(BigInt::from(m))))
            .collect();
        normalize(n, raw)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Canonical `(exponent, coefficient)` terms over `ζ_conductor`.
    pub fn terms(&self) -> &[(u64, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> Option<BigRational> {
        match (self.conductor, self.terms.as_slice()) {
            (1, []) => Some(BigRational::zero()),
            (1, [(0, q)]) => Some(q.clone()),
            _ => None,
        }
    }

    /// The value as a rational integer, when it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.is_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Coefficients on `ζ_n^0 .. ζ_n^(n-1)` for any multiple `n` of the conductor.
    pub fn dense_coefficients(&self, n: u64) -> Vec<BigRational> {
        assert!(n.is_multiple_of(self.conductor));
        let mut v = vec![BigRational::zero(); n as usize];
        let f = n / self.conductor;
        for (k, c) in &self.terms {
            v[(k * f) as usize] = c.clone();
        }
        v
    }

    fn lifted(&self, n: u64) -> impl Iterator<Item = (u64, &BigRational)> {
        let f = n / self.conductor;
        self.terms.iter().map(move |(k, c)| (k * f, c))
    }

    /// The image under `ζ ↦ ζ^k`; requires `gcd(k, conductor) = 1`.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.conductor;
        let kk = k.rem_euclid(n as i64) as u64;
        if gcd(kk, n) != 1 {
            return Err(Error::Domain(format!("Galois exponent {k} is not a unit modulo the conductor {n}")));
        }
        Ok(self.galois_unchecked(kk))
    }

    fn galois_unchecked(&self, k: u64) -> Self {
        let n = self.conductor;
        let raw = self
            .terms
            .iter()
            .map(|(e, c)| (((*e as u128 * k as u128) % n as u128) as u64, c.clone()))
            .collect();
        normalize(n, raw)
    }

    /// Applies the automorphism of `Q(ζ_m)` given by `ζ_m ↦ ζ_m^k` where the
    /// conductor divides `m` and `gcd(k, m) = 1`.
    pub fn galois_in(&self, m: u64, k: u64) -> Result<Self> {
        if !m.is_multiple_of(self.conductor) {
            return Err(Error::Domain(format!("conductor {} does not divide {m}", self.conductor)));
        }
        if gcd(k, m) != 1 {
            return Err(Error::Domain(format!("Galois exponent {k} is not a unit modulo {m}")));
        }
        Ok(self.galois_unchecked(k % self.conductor))
    }

    pub fn conj(&self) -> Self {
        if self.conductor == 1 {
            return self.clone();
        }
        self.galois_unchecked(self.conductor - 1)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic { conductor: self.conductor, terms: self.terms.iter().map(|(k, c)| (*k, c * q)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    fn to_json(&self) -> CyclotomicJson {
        CyclotomicJson {
            conductor: self.conductor,
            coeffs: self
                .dense_coefficients(self.conductor)
                .iter()
                .map(|c| (c.numer().to_string(), c.denom().to_string()))
                .collect(),
        }
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, o: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let n = lcm(self.conductor, o.conductor);
        let mut raw: HashMap<u64, BigRational> = HashMap::new();
        for (k, c) in self.lifted(n).chain(o.lifted(n)) {
            *raw.entry(k).or_insert_with(BigRational::zero) += c;
        }
        normalize(n, raw)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, o: &Cyclotomic) -> Cyclotomic {
        self + &(-o)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, o: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || o.is_zero() {
            return Cyclotomic::zero();
        }
        if let Some(q) = o.is_rational() {
            return self.scale(&q);
        }
        if let Some(q) = self.is_rational() {
            return o.scale(&q);
        }
        let n = lcm(self.conductor, o.conductor);
        let mut raw: HashMap<u64, BigRational> = HashMap::new();
        for (a, x) in self.lifted(n) {
            for (b, y) in o.lifted(n) {
                *raw.entry((a + b) % n).or_insert_with(BigRational::zero) += x * y;
            }
        }
        normalize(n, raw)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, o: Cyclotomic) -> Cyclotomic {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            let neg = c.is_negative();
            let a = c.abs();
            if !first {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            first = false;
            let root = match k {
                0 => String::new(),
                1 => format!("E({})", self.conductor),
                _ => format!("E({})^{}", self.conductor, k),
            };
            match (a.is_one(), root.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{root}")?,
                (false, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a}*{root}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `{ "conductor": n, "coeffs": [["num","den"], ...] }` with `n` coefficients
/// on the power basis `ζ_n^0 .. ζ_n^(n-1)`.
#[derive(Serialize, Deserialize)]
struct CyclotomicJson {
    conductor: u64,
    coeffs: Vec<(String, String)>,
}

/// Table files may abbreviate rational integers as plain JSON numbers.
#[derive(Deserialize)]
#[serde(untagged)]
enum CyclotomicRepr {
    Int(i64),
    Full(CyclotomicJson),
}

impl Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match CyclotomicRepr::deserialize(d)? {
            CyclotomicRepr::Int(v) => Ok(Cyclotomic::from_integer(v)),
            CyclotomicRepr::Full(j) => Cyclotomic::from_json_parts(j.conductor, &j.coeffs).map_err(serde::de::Error::custom),
        }
    }
}

impl Cyclotomic {
    fn from_json_parts(n: u64, coeffs: &[(String, String)]) -> Result<Self> {
        if n == 0 || n > MAX_PARSED_CONDUCTOR {
            return Err(Error::Input(format!("conductor {n} outside 1..={MAX_PARSED_CONDUCTOR}")));
        }
        if coeffs.len() as u64 != n {
            return Err(Error::Input(format!("{} coefficients for conductor {n}", coeffs.len())));
        }
        let parse = |s: &str| -> Result<BigInt> {
            if s.len() > 4096 {
                return Err(Error::Input("integer literal too long".into()));
            }
            s.parse::<BigInt>().map_err(|_| Error::Input(format!("bad integer {s:?}")))
        };
        let v = coeffs
            .iter()
            .map(|(a, b)| {
                let den = parse(b)?;
                if den.is_zero() {
                    return Err(Error::Input("zero denominator".into()));
                }
                Ok(BigRational::new(parse(a)?, den))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_power_coefficients(n, &v))
    }

    /// Parses the JSON report encoding.
    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Input(format!("cyclotomic: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn vanishing_sums_are_rational() {
        let s = &(&Cyclotomic::one() + &z(3, 1)) + &z(3, 2);
        assert_eq!(s.is_rational(), Some(BigRational::zero()));
        assert!(z(4, 1).is_rational().is_none());
        let t = (1..5).fold(Cyclotomic::zero(), |a, k| &a + &z(5, k));
        assert_eq!(t, Cyclotomic::from_integer(-1));
        assert_eq!(z(6, 3), Cyclotomic::from_integer(-1));
        assert_eq!(z(6, 1).conductor(), 3);
    }

    #[test]
    fn galois_examples() {
        assert_eq!(z(3, 1).galois(2).unwrap(), z(3, 2));
        assert_eq!(Cyclotomic::from_integer(5).galois(2).unwrap(), Cyclotomic::from_integer(5));
        let twice = z(7, 1).galois(2).unwrap().galois(2).unwrap();
        assert_eq!(twice, z(7, 4));
        assert_eq!(twice.galois(2).unwrap(), z(7, 1));
        assert!(matches!(z(4, 1).galois(2), Err(Error::Domain(_))));
    }

    #[test]
    fn arithmetic_identities() {
        // (ζ8 + ζ8^7)^2 = 2
        let r2 = &z(8, 1) + &z(8, 7);
        assert_eq!(&r2 * &r2, Cyclotomic::from_integer(2));
        // i * i = -1 and ζ12 = ζ4 * ζ3^2
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::from_integer(-1));
        assert_eq!(&z(4, 1) * &z(3, 2), z(12, 11));
        assert_eq!(z(15, 1).conj(), z(15, 14));
        assert_eq!(&z(15, 4) - &z(15, 4), Cyclotomic::zero());
    }

    #[test]
    fn json_round_trip_and_errors() {
        let x = &z(5, 1) + &z(5, 4).scale(&BigRational::new(3.into(), 2.into()));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(Cyclotomic::from_json_str(&s).unwrap(), x);
        assert_eq!(Cyclotomic::from_json_str("7").unwrap(), Cyclotomic::from_integer(7));
        assert!(Cyclotomic::from_json_str(r#"{"conductor":2,"coeffs":[["1","0"],["0","1"]]}"#).is_err());
        assert!(Cyclotomic::from_json_str(r#"{"conductor":3,"coeffs":[["1","1"]]}"#).is_err());
        assert!(Cyclotomic::from_json_str(r#"{"conductor":0,"coeffs":[]}"#).is_err());
    }
}
