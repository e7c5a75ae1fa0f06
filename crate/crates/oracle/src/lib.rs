//! Brute-force reference computations for small groups given by permutation
//! generators. Everything here works on an explicit multiplication table:
//! all p-subgroups are enumerated as element sets, normalizers and `O_p` are
//! found by exhaustive search, and character degrees come from a floating
//! point eigenvector computation on the class algebra.

use std::collections::{HashMap, HashSet};

use nalgebra::DMatrix;
use num_complex::Complex64;

/// A set of group elements, by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subset(Vec<u64>);

impl Subset {
    pub fn empty(n: usize) -> Self {
        Subset(vec![0; n.div_ceil(64)])
    }

    pub fn insert(&mut self, x: usize) -> bool {
        let fresh = !self.contains(x);
        self.0[x / 64] |= 1 << (x % 64);
        fresh
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.0.len() * 64).filter(|&x| self.contains(x))
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// A finite group as a multiplication table; element 0 is the identity.
#[derive(Clone, Debug)]
pub struct Group {
    n: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| b[x as usize]).collect()
}

impl Group {
    /// Closure of 1-based image lists; products are "first a, then b".
    pub fn from_one_based(gens: &[Vec<i64>]) -> Self {
        let perms: Vec<Vec<u32>> = gens.iter().map(|g| g.iter().map(|&x| (x - 1) as u32).collect()).collect();
        Self::generated(&perms)
    }

    pub fn generated(gens: &[Vec<u32>]) -> Self {
        let degree = gens.first().map_or(1, |g| g.len());
        let id: Vec<u32> = (0..degree as u32).collect();
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(id, 0)]);
        let mut i = 0;
        while i < elements.len() {
            for g in gens {
                let y = compose(&elements[i], g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
            i += 1;
        }
        let n = elements.len();
        assert!(n <= 5000, "brute-force oracle is meant for small groups");
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose(&elements[a], &elements[b])];
            }
        }
        Self::from_table(n, table)
    }

    fn from_table(n: usize, table: Vec<usize>) -> Self {
        let inv = (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == 0).expect("group table")).collect();
        Group { n, table, inv }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g⁻¹ x g`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn everything(&self) -> Subset {
        let mut s = Subset::empty(self.n);
        for x in 0..self.n {
            s.insert(x);
        }
        s
    }

    pub fn closure(&self, gens: impl IntoIterator<Item = usize>) -> Subset {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut s = Subset::empty(self.n);
        s.insert(0);
        let mut queue = vec![0];
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if s.insert(y) {
                    queue.push(y);
                }
            }
        }
        s
    }

    /// Classes in order of their least element; class 0 is `{1}`.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for x in 0..self.n {
            if seen[x] {
                continue;
            }
            let mut c: Vec<usize> = (0..self.n).map(|g| self.conj(x, g)).collect();
            c.sort_unstable();
            c.dedup();
            for &y in &c {
                seen[y] = true;
            }
            out.push(c);
        }
        out
    }

    pub fn p_regular_class_count(&self, p: u64) -> usize {
        self.conjugacy_classes().iter().filter(|c| !self.element_order(c[0]).is_multiple_of(p)).count()
    }

    /// Every subgroup whose order is a power of `p`.
    pub fn p_subgroups(&self, p: u64) -> Vec<Subset> {
        let p_elements: Vec<usize> = (0..self.n).filter(|&x| is_power_of(self.element_order(x), p)).collect();
        let trivial = self.closure([]);
        let mut seen: HashSet<Subset> = HashSet::from([trivial.clone()]);
        let mut all = vec![trivial];
        let mut i = 0;
        while i < all.len() {
            let s = all[i].clone();
            i += 1;
            for &x in &p_elements {
                if s.contains(x) {
                    continue;
                }
                let t = self.closure(s.iter().chain([x]));
                if is_power_of(t.len() as u64, p) && seen.insert(t.clone()) {
                    all.push(t);
                }
            }
        }
        all
    }

    pub fn conjugate(&self, h: &Subset, g: usize) -> Subset {
        let mut s = Subset::empty(self.n);
        for x in h.iter() {
            s.insert(self.conj(x, g));
        }
        s
    }

    pub fn normalizer(&self, h: &Subset) -> Subset {
        let mut s = Subset::empty(self.n);
        for g in 0..self.n {
            if self.conjugate(h, g) == *h {
                s.insert(g);
            }
        }
        s
    }

    pub fn is_normal_in(&self, h: &Subset, k: &Subset) -> bool {
        h.is_subset_of(k) && k.iter().all(|g| self.conjugate(h, g) == *h)
    }

    /// The largest normal `p`-subgroup of `k`, picked from `p_subgroups`.
    pub fn p_core(&self, k: &Subset, p_subgroups: &[Subset]) -> Subset {
        p_subgroups
            .iter()
            .filter(|q| self.is_normal_in(q, k))
            .max_by_key(|q| q.len())
            .cloned()
            .expect("the trivial subgroup is normal")
    }

    /// Radical `p`-subgroups, grouped into conjugacy classes.
    pub fn radical_classes(&self, p: u64) -> Vec<Vec<Subset>> {
        let subs = self.p_subgroups(p);
        let radicals: Vec<Subset> = subs.iter().filter(|q| self.p_core(&self.normalizer(q), &subs) == **q).cloned().collect();
        let mut classes: Vec<Vec<Subset>> = Vec::new();
        for q in radicals {
            match classes.iter_mut().find(|c| (0..self.n).any(|g| self.conjugate(&c[0], g) == q)) {
                Some(c) => c.push(q),
                None => classes.push(vec![q]),
            }
        }
        classes
    }

    /// `k/h` for `h` normal in `k`, on the cosets `xh`.
    pub fn quotient(&self, k: &Subset, h: &Subset) -> Group {
        let rep = |x: usize| h.iter().map(|y| self.mul(x, y)).min().unwrap();
        let mut reps: Vec<usize> = k.iter().map(rep).collect();
        reps.sort_unstable();
        reps.dedup();
        // identity first
        let pos: HashMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        assert_eq!(pos[&rep(0)], 0);
        let m = reps.len();
        let mut table = vec![0; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = pos[&rep(self.mul(a, b))];
            }
        }
        Group::from_table(m, table)
    }

    /// Degrees of the irreducible characters, ascending.
    ///
    /// For a character `χ` the central character `ω(C) = |C|χ(g_C)/χ(1)` is
    /// a common eigenvector of the class multiplication matrices, and
    /// `Σ_C |ω(C)|² / |C| = |G| / χ(1)²`.
    pub fn character_degrees(&self) -> Vec<u64> {
        let classes = self.conjugacy_classes();
        let k = classes.len();
        let mut class_of = vec![0; self.n];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = i;
            }
        }
        // a[i][j][l]: number of x in C_i with x⁻¹ z_l in C_j
        let mut a = vec![vec![vec![0f64; k]; k]; k];
        for (l, cl) in classes.iter().enumerate() {
            let z = cl[0];
            for x in 0..self.n {
                let y = self.mul(self.inv(x), z);
                a[class_of[x]][class_of[y]][l] += 1.0;
            }
        }
        for attempt in 0..8u32 {
            let weights: Vec<f64> = (0..k).map(|i| ((i as f64 + 2.0 + attempt as f64) * 1.618_033_988_7).fract() + 0.1).collect();
            let b = DMatrix::from_fn(k, k, |j, l| (0..k).map(|i| weights[i] * a[i][j][l]).sum::<f64>());
            let eig = b.complex_eigenvalues();
            let lambdas: Vec<Complex64> = eig.iter().copied().collect();
            let distinct = (0..k).all(|i| (0..i).all(|j| (lambdas[i] - lambdas[j]).norm() > 1e-6));
            if !distinct {
                continue;
            }
            let bc: DMatrix<Complex64> = b.map(|x| Complex64::new(x, 0.0));
            let mut degrees = Vec::new();
            for &lambda in &lambdas {
                let m = &bc - DMatrix::<Complex64>::identity(k, k) * lambda;
                let svd = m.svd(false, true);
                let v_t = svd.v_t.expect("right singular vectors");
                let (imin, _) = svd
                    .singular_values
                    .iter()
                    .enumerate()
                    .min_by(|x, y| x.1.partial_cmp(y.1).unwrap())
                    .unwrap();
                let w: Vec<Complex64> = v_t.row(imin).iter().map(|c| c.conj()).collect();
                let w0 = w[0];
                let s: f64 = w.iter().zip(&classes).map(|(x, c)| (x / w0).norm_sqr() / c.len() as f64).sum();
                let d2 = self.n as f64 / s;
                let d = d2.sqrt().round() as u64;
                assert!((d2 - (d * d) as f64).abs() < 1e-4, "degree² {d2} is not a square");
                degrees.push(d);
            }
            degrees.sort_unstable();
            assert_eq!(degrees.iter().map(|d| d * d).sum::<u64>(), self.n as u64);
            return degrees;
        }
        panic!("no separating combination of class matrices found");
    }
}

pub fn is_power_of(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// `p`-part of `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut q = 1;
    while n.is_multiple_of(p) {
        n /= p;
        q *= p;
    }
    q
}

/// One radical class as seen by the oracle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RadicalCount {
    pub q_order: u64,
    pub normalizer_order: u64,
    pub defect_zero: usize,
}

/// Radical classes with their number of defect zero characters of
/// `N(Q)/Q`, sorted. The sum of `defect_zero` is the number of weight classes.
pub fn weight_census(g: &Group, p: u64) -> Vec<RadicalCount> {
    let mut out: Vec<RadicalCount> = g
        .radical_classes(p)
        .iter()
        .map(|c| {
            let q = &c[0];
            let n = g.normalizer(q);
            let local = g.quotient(&n, q);
            let order = local.order() as u64;
            let dz = local.character_degrees().iter().filter(|&&d| p_part(d, p) == p_part(order, p)).count();
            RadicalCount { q_order: q.len() as u64, normalizer_order: n.len() as u64, defect_zero: dz }
        })
        .collect();
    out.sort();
    out
}
