//! Seeds with principal coefficients.
//!
//! The initial seed is `(x₁,…,x_{2n}; Q̂)`. Mutable cluster variables are
//! stored fully expanded as Laurent polynomials in the initial variables;
//! the frozen variables `x_{n+1},…,x_{2n}` never mutate and are implicit.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly, LaurentRing};
use crate::matrix::IntMatrix;
use crate::quiver::{ExtMatrix, Permutation, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("not homogeneous: monomials {first:?} and {second:?} have different degrees")]
    NotHomogeneous { first: Vec<i64>, second: Vec<i64> },
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("exponent {0} does not fit the exponent range")]
    ExponentOverflow(BigInt),
    #[error("cluster {cluster:?} carries two different quivers: {first:?} and {second:?}")]
    ClusterDoesNotDetermineSeed {
        cluster: Vec<String>,
        first: Box<ExtMatrix>,
        second: Box<ExtMatrix>,
    },
}

/// Degree of a homogeneous element under `deg(x_i) = e_i`,
/// `deg(x_{n+i}) = −B·e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GVector(pub Vec<BigInt>);

impl GVector {
    pub fn from_i64(v: &[i64]) -> Self {
        GVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    quiver: ExtMatrix,
    vars: Vec<LaurentPoly>,
}

impl Seed {
    /// `(x₁,…,x_{2n}; Q̂)` for a quiver without frozen vertices.
    pub fn initial(q: &ExtMatrix) -> Result<Seed, ClusterError> {
        let quiver = q.framed()?;
        let ring = LaurentRing::principal(q.n());
        let vars = (0..q.n()).map(|i| LaurentPoly::variable(ring, i)).collect();
        Ok(Seed { quiver, vars })
    }

    pub fn new(quiver: ExtMatrix, vars: Vec<LaurentPoly>) -> Result<Seed, ClusterError> {
        let n = quiver.n();
        if quiver.m() != n {
            return Err(ClusterError::InvalidSeed(format!(
                "expected {n} frozen vertices, found {}",
                quiver.m()
            )));
        }
        if vars.len() != n {
            return Err(ClusterError::InvalidSeed(format!(
                "expected {n} cluster variables, found {}",
                vars.len()
            )));
        }
        let ring = LaurentRing::principal(n);
        if let Some(i) = vars.iter().position(|v| v.ring() != ring) {
            return Err(ClusterError::InvalidSeed(format!(
                "variable {} is not in the principal-coefficient ring",
                i + 1
            )));
        }
        for i in 0..n {
            for j in i + 1..n {
                if vars[i] == vars[j] {
                    return Err(ClusterError::InvalidSeed(format!(
                        "variables {} and {} coincide",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Seed { quiver, vars })
    }

    pub fn rank(&self) -> usize {
        self.vars.len()
    }

    pub fn quiver(&self) -> &ExtMatrix {
        &self.quiver
    }

    pub fn vars(&self) -> &[LaurentPoly] {
        &self.vars
    }

    pub fn ring(&self) -> LaurentRing {
        LaurentRing::principal(self.rank())
    }

    /// Cluster variable `u_j`, including the frozen `x_{n+1..2n}` for `j ≥ n`.
    fn variable(&self, j: usize) -> LaurentPoly {
        if j < self.rank() {
            self.vars[j].clone()
        } else {
            LaurentPoly::variable(self.ring(), j)
        }
    }

    /// Seed mutation at the mutable vertex `i` via the exchange relation
    /// `u_i' · u_i = ∏_{i→j} u_j + ∏_{l→i} u_l`, products taken over the
    /// arrows of the current quiver with multiplicity.
    pub fn mutate(&self, i: usize) -> Result<Seed, ClusterError> {
        let quiver = self.quiver.mutate(i)?;
        let ring = self.ring();
        let mut outgoing = LaurentPoly::one(ring);
        let mut incoming = LaurentPoly::one(ring);
        for j in 0..2 * self.rank() {
            let b = self.quiver.entry(j, i);
            if b.is_zero() {
                continue;
            }
            let mult = b
                .magnitude()
                .to_u32()
                .ok_or_else(|| ClusterError::ExponentOverflow(b.clone()))?;
            let factor = self.variable(j).pow(mult);
            if b > &BigInt::zero() {
                incoming = &incoming * &factor;
            } else {
                outgoing = &outgoing * &factor;
            }
        }
        let exchanged = (&outgoing + &incoming).div_exact(&self.vars[i])?;
        let mut vars = self.vars.clone();
        vars[i] = exchanged;
        Ok(Seed { quiver, vars })
    }

    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<Seed, ClusterError> {
        seq.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Sorted canonical texts of the mutable variables: identifies the
    /// cluster independently of the order of its variables.
    pub fn cluster_key(&self) -> Vec<String> {
        let mut k: Vec<String> = self.vars.iter().map(|v| v.to_string()).collect();
        k.sort();
        k
    }

    /// Relabels this seed so its variables match `other`'s positions, when
    /// both have the same cluster.
    fn alignment(&self, other: &Seed) -> Option<Permutation> {
        let images: Option<Vec<usize>> = self
            .vars
            .iter()
            .map(|v| other.vars.iter().position(|w| w == v))
            .collect();
        Permutation::new(images?)
    }
}

pub fn mutate_seed(s: &Seed, i: usize) -> Result<Seed, ClusterError> {
    s.mutate(i)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterEnumeration {
    pub seeds: Vec<Seed>,
    /// Undirected exchange edges `(a, b, i)` with `a < b`, `i` the mutated
    /// position in seed `a`.
    pub edges: Vec<(usize, usize, usize)>,
    pub complete: bool,
}

/// Breadth-first enumeration of clusters reachable from the initial seed,
/// deduplicated by cluster. Meeting a known cluster with a quiver that is
/// not the stored one (after matching variables) is reported as an error.
pub fn enumerate_clusters(q: &ExtMatrix, max_seeds: usize) -> Result<ClusterEnumeration, ClusterError> {
    if q.m() != 0 {
        return Err(QuiverError::HasFrozenVertices { m: q.m() }.into());
    }
    let n = q.n();
    let start = Seed::initial(q)?;
    let mut index: HashMap<Vec<String>, usize> = HashMap::from([(start.cluster_key(), 0)]);
    let mut seeds = vec![start];
    let mut edges = Vec::new();
    let mut complete = max_seeds >= 1;
    let mut level = vec![0usize];

    while !level.is_empty() {
        let expansions: Vec<Vec<Seed>> = level
            .par_iter()
            .map(|&s| (0..n).map(|i| seeds[s].mutate(i)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        let mut next = Vec::new();
        for (&s, children) in level.iter().zip(expansions) {
            for (i, child) in children.into_iter().enumerate() {
                let key = child.cluster_key();
                match index.get(&key) {
                    Some(&t) => {
                        let stored = &seeds[t];
                        let sigma = child.alignment(stored).expect("same cluster");
                        let relabelled = child.quiver.permuted(&sigma)?;
                        if relabelled != stored.quiver {
                            return Err(ClusterError::ClusterDoesNotDetermineSeed {
                                cluster: key,
                                first: Box::new(stored.quiver.clone()),
                                second: Box::new(relabelled),
                            });
                        }
                        if s < t {
                            edges.push((s, t, i));
                        }
                    }
                    None if seeds.len() < max_seeds => {
                        let t = seeds.len();
                        index.insert(key, t);
                        seeds.push(child);
                        edges.push((s, t, i));
                        next.push(t);
                    }
                    None => complete = false,
                }
            }
        }
        level = next;
    }
    Ok(ClusterEnumeration {
        seeds,
        edges,
        complete,
    })
}

fn to_i64(x: &BigInt) -> Result<i64, ClusterError> {
    x.to_i64().ok_or_else(|| ClusterError::ExponentOverflow(x.clone()))
}

fn monomial_degree(e: &[i64], b0: &IntMatrix) -> Vec<BigInt> {
    let n = b0.rows();
    (0..n)
        .map(|j| {
            let mut d = BigInt::from(e[j]);
            for i in 0..n {
                d -= b0.get(j, i) * e[n + i];
            }
            d
        })
        .collect()
}

/// The common degree of all monomials of `p`, where `b0` is the `n × n`
/// exchange matrix of the initial quiver.
pub fn g_vector(p: &LaurentPoly, b0: &IntMatrix) -> Result<GVector, ClusterError> {
    let mut terms = p.terms();
    let (first, _) = terms.next().ok_or(ClusterError::ZeroPolynomial)?;
    let deg = monomial_degree(first, b0);
    for (e, _) in terms {
        if monomial_degree(e, b0) != deg {
            return Err(ClusterError::NotHomogeneous {
                first: first.clone(),
                second: e.clone(),
            });
        }
    }
    Ok(GVector(deg))
}

/// `p(1,…,1, y₁,…,y_n)`: a polynomial in the frozen slots renamed `y_i`.
pub fn f_polynomial(p: &LaurentPoly) -> LaurentPoly {
    let n = p.ring().inverted;
    p.map_monomials(LaurentRing::polynomial(p.ring().vars - n), |e| e[n..].to_vec())
        .expect("frozen exponents are non-negative")
}

/// Checks `p = x^g · F(ŷ₁,…,ŷ_n)` with `ŷ_i = x_{n+i} ∏_j x_j^{b0[j][i]}`.
pub fn verify_separation(p: &LaurentPoly, b0: &IntMatrix, g: &GVector, f: &LaurentPoly) -> bool {
    let n = b0.rows();
    if g.0.len() != n || f.ring().vars != n || p.ring() != LaurentRing::principal(n) {
        return false;
    }
    let Ok(g) = g.0.iter().map(to_i64).collect::<Result<Vec<_>, _>>() else {
        return false;
    };
    let Ok(b) = (0..n)
        .map(|j| (0..n).map(|i| to_i64(b0.get(j, i))).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
    else {
        return false;
    };
    let rebuilt = f.map_monomials(p.ring(), |a| {
        let mut e = Vec::with_capacity(2 * n);
        for j in 0..n {
            e.push(g[j] + (0..n).map(|i| b[j][i] * a[i]).sum::<i64>());
        }
        e.extend_from_slice(a);
        e
    });
    matches!(rebuilt, Ok(r) if &r == p)
}
