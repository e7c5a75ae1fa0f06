//! Dixon–Schneider: simultaneous eigenvectors of the class matrices over a
//! prime field `F_ℓ` with `ℓ ≡ 1 (mod exp G)`, lifted to exact cyclotomic
//! values through the roots of unity of `F_ℓ`.

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::numtheory::{inv_mod, is_prime, isqrt, pow_mod, primitive_root};
use crate::perm::{ClassData, PermutationGroup};

type Mat = Vec<Vec<u64>>;

/// `c[j][i][k] = #{x ∈ C_j : x⁻¹ z_k ∈ C_i}` for fixed representatives `z_k`.
pub(super) fn class_constants(group: &PermutationGroup, classes: &ClassData) -> Result<Vec<Mat>> {
    let r = classes.len();
    let base = classes.base().to_vec();
    let inverse = classes.inverse_map();
    let reps: Vec<Vec<u32>> = classes.classes().iter().map(|c| c.representative.images().to_vec()).collect();
    let mut c = vec![vec![vec![0u64; r]; r]; r];
    let mut key = vec![0u32; base.len()];
    let mut missing = false;
    group.for_each_element(|x| {
        let own: Vec<u32> = base.iter().map(|&b| x.image(b) as u32).collect();
        let Some(cx) = classes.class_of_key(&own) else {
            missing = true;
            return;
        };
        let j = inverse[cx];
        for (k, z) in reps.iter().enumerate() {
            for (slot, &b) in key.iter_mut().zip(&base) {
                *slot = z[x.image(b)];
            }
            match classes.class_of_key(&key) {
                Some(i) => c[j][i][k] += 1,
                None => missing = true,
            }
        }
    });
    if missing {
        return Err(Error::Internal("element outside the class index".into()));
    }
    Ok(c)
}

/// Primes `ℓ ≡ 1 (mod e)` above `2·isqrt(|G|)`, in increasing order.
pub(super) fn candidate_primes(exponent: u64, order: u64) -> impl Iterator<Item = u64> {
    let bound = 2 * isqrt(order) + 1;
    let start = (bound / exponent).max(1);
    (start..).map(move |t| t * exponent + 1).filter(move |&l| l > bound && is_prime(l))
}

struct Field {
    l: u64,
}

impl Field {
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.l
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.l - b) % self.l
    }
    fn inv(&self, a: u64) -> u64 {
        inv_mod(a, self.l).expect("nonzero residue")
    }
}

/// Reduced row echelon basis of the null space of `a` (square).
fn null_space(f: &Field, a: &Mat) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&i| m[i][col] != 0) else { continue };
        m.swap(row, p);
        let inv = f.inv(m[row][col]);
        for v in m[row].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for i in 0..n {
            if i != row && m[i][col] != 0 {
                let factor = m[i][col];
                for j in 0..n {
                    m[i][j] = f.sub(m[i][j], f.mul(factor, m[row][j]));
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(0, m[i][fc]);
            }
            v
        })
        .collect()
}

/// Row echelon form with unit pivots; returns the basis and its pivot columns.
fn echelon(f: &Field, rows: Vec<Vec<u64>>) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut m = rows;
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(row, p);
        let inv = f.inv(m[row][col]);
        for v in m[row].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for i in 0..m.len() {
            if i != row && m[i][col] != 0 {
                let factor = m[i][col];
                for j in 0..cols {
                    m[i][j] = f.sub(m[i][j], f.mul(factor, m[row][j]));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}

/// Characteristic polynomial by Faddeev–LeVerrier, monic, low degree first.
fn char_poly(f: &Field, a: &Mat) -> Vec<u64> {
    let n = a.len();
    let mut coeffs = vec![0u64; n + 1];
    coeffs[n] = 1;
    let mut m = vec![vec![0u64; n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![0u64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u64;
                for t in 0..n {
                    s = (s + f.mul(a[i][t], m[t][j])) % f.l;
                }
                next[i][j] = s;
            }
            next[i][i] = (next[i][i] + coeffs[n - k + 1]) % f.l;
        }
        m = next;
        let mut tr = 0u64;
        for i in 0..n {
            for t in 0..n {
                tr = (tr + f.mul(a[i][t], m[t][i])) % f.l;
            }
        }
        coeffs[n - k] = f.sub(0, f.mul(tr, f.inv(k as u64 % f.l)));
    }
    coeffs
}

fn roots(f: &Field, poly: &[u64]) -> Vec<u64> {
    (0..f.l)
        .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| (f.mul(acc, x) + c) % f.l) == 0)
        .collect()
}

/// Splits `F_ℓ^r` into common eigenlines of the class matrices; `None` when
/// some eigenspace stays wider than one dimension.
fn eigenvectors(f: &Field, mats: &[Mat]) -> Option<Vec<Vec<u64>>> {
    let r = mats.len();
    let identity: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![identity];
    for m in mats.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let (basis, pivots) = echelon(f, space);
            let d = basis.len();
            // images of basis vectors under M (as columns), in pivot coordinates
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| (0..r).map(|i| (0..r).fold(0u64, |s, k| (s + f.mul(m[i][k], b[k])) % f.l)).collect())
                .collect();
            let a: Mat = (0..d).map(|s| (0..d).map(|t| images[t][pivots[s]]).collect()).collect();
            let eig = roots(f, &char_poly(f, &a));
            let mut covered = 0;
            for lam in eig {
                let shifted: Mat = (0..d)
                    .map(|i| (0..d).map(|j| if i == j { f.sub(a[i][j], lam) } else { a[i][j] }).collect())
                    .collect();
                let ns = null_space(f, &shifted);
                covered += ns.len();
                let sub: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|v| {
                        (0..r).map(|k| (0..d).fold(0u64, |s, t| (s + f.mul(v[t], basis[t][k])) % f.l)).collect()
                    })
                    .collect();
                next.push(sub);
            }
            if covered != d {
                return None;
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return None;
    }
    Some(spaces.into_iter().map(|mut s| s.remove(0)).collect())
}

/// Attempts the whole computation modulo `l`; `None` asks for another prime.
pub(super) fn table_mod(
    l: u64,
    consts: &[Mat],
    classes: &ClassData,
    power_classes: &[Vec<usize>],
) -> Option<Vec<Vec<Cyclotomic>>> {
    let f = Field { l };
    let order = classes.group_order();
    let e = classes.exponent();
    let r = classes.len();
    let sizes: Vec<u64> = classes.classes().iter().map(|c| c.size).collect();
    let inverse = classes.inverse_map();
    let mats: Vec<Mat> = consts.iter().map(|m| m.iter().map(|row| row.iter().map(|&x| x % l).collect()).collect()).collect();
    let vectors = eigenvectors(&f, &mats)?;
    let z = pow_mod(primitive_root(l), (l - 1) / e, l);
    let mut rows = Vec::with_capacity(r);
    for v in vectors {
        if v[0] == 0 {
            return None;
        }
        let norm = f.inv(v[0]);
        let w: Vec<u64> = v.iter().map(|&x| f.mul(x, norm)).collect();
        let s = (0..r).fold(0u64, |acc, k| (acc + f.mul(f.mul(w[k], w[inverse[k]]), f.inv(sizes[k] % l))) % l);
        if s == 0 {
            return None;
        }
        let sq = f.mul(order % l, f.inv(s));
        let degree = (1..=isqrt(order)).find(|&d| order.is_multiple_of(d) && d * d % l == sq)?;
        let vals: Vec<u64> = (0..r).map(|k| f.mul(f.mul(w[k], degree % l), f.inv(sizes[k] % l))).collect();
        let mut row = Vec::with_capacity(r);
        for k in 0..r {
            let o = classes.classes()[k].element_order;
            let zo = pow_mod(z, e / o, l);
            let inv_o = f.inv(o % l);
            let mut mult = vec![0i64; o as usize];
            for (j, slot) in mult.iter_mut().enumerate() {
                let step = pow_mod(zo, (o - j as u64 % o) % o, l);
                let mut root = 1u64;
                let mut acc = 0u64;
                for &pc in &power_classes[k] {
                    acc = (acc + f.mul(vals[pc], root)) % l;
                    root = f.mul(root, step);
                }
                let m = f.mul(acc, inv_o);
                if m > degree {
                    return None;
                }
                *slot = m as i64;
            }
            row.push(Cyclotomic::from_root_multiplicities(o, &mult));
        }
        rows.push(row);
    }
    Some(rows)
}
