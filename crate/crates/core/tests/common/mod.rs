//! Test-only oracles, kept independent of the engine's code paths.

#![allow(dead_code)]

use std::collections::HashMap;

use greenseq_core::{ExtMatrix, IntMatrix, LaurentPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

/// An ice quiver as an explicit list of arrows `(source, target)`.
/// Vertices `0..n` are mutable, `n..n+m` frozen.
#[derive(Debug, Clone)]
pub struct ArrowQuiver {
    pub n: usize,
    pub m: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl ArrowQuiver {
    pub fn from_matrix(q: &ExtMatrix) -> Self {
        let (n, m) = (q.n(), q.m());
        let mut arrows = Vec::new();
        for i in 0..n + m {
            for j in 0..n {
                if i < n && j <= i {
                    continue;
                }
                let v = i64::try_from(q.entry(i, j)).unwrap();
                for _ in 0..v.abs() {
                    arrows.push(if v > 0 { (i, j) } else { (j, i) });
                }
            }
        }
        ArrowQuiver { n, m, arrows }
    }

    pub fn to_matrix(&self) -> ExtMatrix {
        let (n, m) = (self.n, self.m);
        let mut b = vec![vec![0i64; n]; n + m];
        for &(s, t) in &self.arrows {
            if t < n {
                b[s][t] += 1;
            }
            if s < n {
                b[t][s] -= 1;
            }
        }
        let b = IntMatrix::from_rows(&b, n).unwrap();
        ExtMatrix::new(n, m, b).unwrap()
    }

    /// The four-step arrow-level mutation at `k`.
    pub fn mutate(&self, k: usize) -> Self {
        let frozen = |v: usize| v >= self.n;
        let mut arrows: Vec<(usize, usize)> = Vec::new();
        // (1) a composite h -> j for every pair h -> k -> j.
        for &(h, t1) in &self.arrows {
            if t1 != k {
                continue;
            }
            for &(s2, j) in &self.arrows {
                if s2 == k {
                    arrows.push((h, j));
                }
            }
        }
        // (2) reverse every arrow incident to k.
        for &(s, t) in &self.arrows {
            if s == k || t == k {
                arrows.push((t, s));
            } else {
                arrows.push((s, t));
            }
        }
        // (3) remove a maximal collection of disjoint oriented 2-cycles.
        loop {
            let mut found = None;
            'search: for (a, &(s, t)) in arrows.iter().enumerate() {
                for (b, &(s2, t2)) in arrows.iter().enumerate() {
                    if a != b && s2 == t && t2 == s {
                        found = Some((a.max(b), a.min(b)));
                        break 'search;
                    }
                }
            }
            match found {
                Some((hi, lo)) => {
                    arrows.remove(hi);
                    arrows.remove(lo);
                }
                None => break,
            }
        }
        // (4) drop arrows between frozen vertices.
        arrows.retain(|&(s, t)| !(frozen(s) && frozen(t)));
        ArrowQuiver {
            n: self.n,
            m: self.m,
            arrows,
        }
    }
}

/// Random ice quiver with `n` mutable and `m` frozen vertices and
/// multiplicities in `-max..=max`.
pub fn random_quiver<R: Rng>(rng: &mut R, n: usize, m: usize, max: i64) -> ExtMatrix {
    let mut b = vec![vec![0i64; n]; n + m];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-max..=max);
            b[i][j] = v;
            b[j][i] = -v;
        }
    }
    for row in b.iter_mut().skip(n) {
        for x in row.iter_mut() {
            *x = rng.gen_range(-max..=max);
        }
    }
    ExtMatrix::new(n, m, IntMatrix::from_rows(&b, n).unwrap()).unwrap()
}

/// Random mutable-only quiver.
pub fn random_cluster_quiver<R: Rng>(rng: &mut R, n: usize, max: i64) -> ExtMatrix {
    random_quiver(rng, n, 0, max)
}

pub fn to_i64_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
        .collect()
}

pub fn a2() -> ExtMatrix {
    ExtMatrix::from_rows_i64(2, 0, &[&[0, 1], &[-1, 0]]).unwrap()
}

pub fn a3() -> ExtMatrix {
    ExtMatrix::from_rows_i64(3, 0, &[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]]).unwrap()
}

pub fn kronecker() -> ExtMatrix {
    ExtMatrix::from_rows_i64(2, 0, &[&[0, 2], &[-2, 0]]).unwrap()
}

/// Three vertices joined cyclically by double arrows 1 ⇉ 2 ⇉ 3 ⇉ 1.
pub fn markov() -> ExtMatrix {
    ExtMatrix::from_rows_i64(3, 0, &[&[0, 2, -2], &[-2, 0, 2], &[2, -2, 0]]).unwrap()
}

// ---- numeric oracle for cluster variables ----

pub fn eval(p: &LaurentPoly, point: &[BigRational]) -> BigRational {
    let mut powers: HashMap<(usize, i64), BigRational> = HashMap::new();
    let mut total = BigRational::zero();
    for (e, c) in p.terms() {
        let mut t = BigRational::from_integer(c.clone());
        for (i, &k) in e.iter().enumerate() {
            if k != 0 {
                let x = powers.entry((i, k)).or_insert_with(|| {
                    let base = if k > 0 { point[i].clone() } else { point[i].recip() };
                    num_traits::pow(base, k.unsigned_abs() as usize)
                });
                t *= &*x;
            }
        }
        total += t;
    }
    total
}

/// Runs the exchange relation on numbers: `u_i' = (∏ u_j^{[b_ji]₊} + ∏ u_j^{[−b_ji]₊}) / u_i`
/// over all `2n` vertices of the current quiver.
pub fn numeric_trajectory(q: &ExtMatrix, seq: &[usize], point: &[BigRational]) -> Vec<BigRational> {
    let n = q.n();
    let mut quiver = q.framed().unwrap();
    let mut vals = point.to_vec();
    for &i in seq {
        let mut plus = BigRational::one();
        let mut minus = BigRational::one();
        for j in 0..2 * n {
            let b = i64::try_from(quiver.entry(j, i)).unwrap();
            for _ in 0..b.unsigned_abs() {
                if b > 0 {
                    plus *= &vals[j];
                } else {
                    minus *= &vals[j];
                }
            }
        }
        vals[i] = (plus + minus) / &vals[i];
        quiver = quiver.mutate(i).unwrap();
    }
    vals.truncate(n);
    vals
}

pub fn random_point<R: Rng>(rng: &mut R, len: usize) -> Vec<BigRational> {
    (0..len)
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(1..=9)), BigInt::from(rng.gen_range(1..=7))))
        .collect()
}

/// Random quiver for symbolic trajectories: double arrows only in rank ≤ 2,
/// where growth stays polynomial.
pub fn trajectory_quiver<R: Rng>(rng: &mut R) -> ExtMatrix {
    let n = rng.gen_range(1..=3);
    random_cluster_quiver(rng, n, if n <= 2 { 2 } else { 1 })
}

/// Random trajectory of at most `depth` steps with no immediate repeats.
pub fn random_sequence<R: Rng>(rng: &mut R, n: usize, depth: usize) -> Vec<usize> {
    let len = rng.gen_range(1..=depth);
    let mut seq: Vec<usize> = Vec::new();
    while seq.len() < len {
        let k = rng.gen_range(0..n);
        if n == 1 || seq.last() != Some(&k) {
            seq.push(k);
        }
    }
    seq
}
