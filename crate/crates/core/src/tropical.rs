//! c-matrices and g-matrices of a framed mutation class.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::matrix::{neg_part, pos, IntMatrix};
use crate::quiver::{ExtMatrix, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TropicalError {
    #[error("expected as many frozen as mutable vertices (n={n}, m={m})")]
    NotPrincipal { n: usize, m: usize },
    #[error("c-matrix does not match the frozen part of the quiver")]
    Mismatch,
    #[error("matrix dimensions do not match (expected {expected}x{expected})")]
    Dimension { expected: usize },
    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: BigInt },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// Column `j` is the c-vector of mutable vertex `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CMatrix(pub IntMatrix);

/// Column `j` is the g-vector of the `j`-th cluster variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GMatrix(pub IntMatrix);

impl CMatrix {
    pub fn identity(n: usize) -> Self {
        CMatrix(IntMatrix::identity(n))
    }
}

impl GMatrix {
    pub fn identity(n: usize) -> Self {
        GMatrix(IntMatrix::identity(n))
    }
}

impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for GMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Frozen part of a quiver with `m = n`.
pub fn c_matrix_of(r: &ExtMatrix) -> Result<CMatrix, TropicalError> {
    if r.m() != r.n() {
        return Err(TropicalError::NotPrincipal { n: r.n(), m: r.m() });
    }
    Ok(CMatrix(r.bottom_block()))
}

/// c-matrix after mutating `r` at `i`: column `i` flips sign, other entries
/// become `c_jl + [c_ji]₊[b_il]₊ − [−c_ji]₊[−b_il]₊`.
pub fn mutate_c(c: &CMatrix, r: &ExtMatrix, i: usize) -> Result<CMatrix, TropicalError> {
    let n = r.n();
    if c_matrix_of(r)? != *c {
        return Err(TropicalError::Mismatch);
    }
    if i >= n {
        return Err(QuiverError::VertexOutOfRange {
            index: i,
            n,
            m: r.m(),
        }
        .into());
    }
    let mut out = IntMatrix::zeros(n, n);
    for j in 0..n {
        let cji = c.0.get(j, i);
        for l in 0..n {
            let cjl = c.0.get(j, l);
            let v = if l == i {
                -cjl
            } else {
                let bil = r.entry(i, l);
                cjl + pos(cji) * pos(bil) - neg_part(cji) * neg_part(bil)
            };
            out.set(j, l, v);
        }
    }
    Ok(CMatrix(out))
}

/// g-matrix after mutating the seed with quiver `r` at `i`; `b0` is the
/// `n × n` matrix of the initial quiver.
///
/// `g_i' = −g_i + Σ_m [b_mi]₊ g_m − Σ_l [b_{n+l,i}]₊ B₀e_l`, other columns
/// unchanged. The same sign is used in both brackets; by sign-coherence of
/// column `i` of the c-matrix the opposite choice gives the same result.
pub fn mutate_g(g: &GMatrix, r: &ExtMatrix, b0: &IntMatrix, i: usize) -> Result<GMatrix, TropicalError> {
    let n = r.n();
    if r.m() != n {
        return Err(TropicalError::NotPrincipal { n, m: r.m() });
    }
    if g.0.rows() != n || g.0.cols() != n || b0.rows() != n || b0.cols() != n {
        return Err(TropicalError::Dimension { expected: n });
    }
    if i >= n {
        return Err(QuiverError::VertexOutOfRange {
            index: i,
            n,
            m: r.m(),
        }
        .into());
    }
    let mut out = g.0.clone();
    for row in 0..n {
        let mut v = -g.0.get(row, i);
        for m in 0..n {
            let w = pos(r.entry(m, i));
            if !w.is_zero() {
                v += w * g.0.get(row, m);
            }
        }
        for l in 0..n {
            let w = pos(r.entry(n + l, i));
            if !w.is_zero() {
                v -= w * b0.get(row, l);
            }
        }
        out.set(row, i, v);
    }
    Ok(GMatrix(out))
}

/// `Ok(())` when every column is entrywise non-negative or non-positive;
/// otherwise the first offending (0-based) column.
pub fn check_sign_coherence(c: &CMatrix) -> Result<(), usize> {
    for j in 0..c.0.cols() {
        let col = c.0.column(j);
        let has_pos = col.iter().any(|x| x.is_positive());
        let has_neg = col.iter().any(|x| x.is_negative());
        if has_pos && has_neg {
            return Err(j);
        }
    }
    Ok(())
}

/// Inverse transpose of a unimodular g-matrix, computed by adjugate.
pub fn tropical_dual(g: &GMatrix) -> Result<CMatrix, TropicalError> {
    let det = g
        .0
        .determinant()
        .ok_or(TropicalError::Dimension { expected: g.0.rows() })?;
    let inv = g
        .0
        .unimodular_inverse()
        .ok_or(TropicalError::NotUnimodular { det })?;
    Ok(CMatrix(inv.transpose()))
}

/// State after each step of a mutation sequence from the framed quiver,
/// with c- and g-matrices tracked by their mutation rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryStep {
    /// Mutated vertex, `None` for the starting point.
    pub vertex: Option<usize>,
    pub quiver: ExtMatrix,
    pub c: CMatrix,
    pub g: GMatrix,
}

pub fn trajectory(q: &ExtMatrix, seq: &[usize]) -> Result<Vec<TrajectoryStep>, TropicalError> {
    let b0 = q.top_block();
    let start = q.framed()?;
    let n = q.n();
    let mut steps = vec![TrajectoryStep {
        vertex: None,
        quiver: start,
        c: CMatrix::identity(n),
        g: GMatrix::identity(n),
    }];
    for &i in seq {
        let last = steps.last().expect("non-empty");
        let c = mutate_c(&last.c, &last.quiver, i)?;
        let g = mutate_g(&last.g, &last.quiver, &b0, i)?;
        let quiver = last.quiver.mutate(i)?;
        steps.push(TrajectoryStep {
            vertex: Some(i),
            quiver,
            c,
            g,
        });
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> ExtMatrix {
        ExtMatrix::from_rows_i64(2, 0, &[&[0, 1], &[-1, 0]]).unwrap()
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn c_matrices_on_a2() {
        let f = a2().framed().unwrap();
        assert_eq!(c_matrix_of(&f).unwrap(), CMatrix::identity(2));
        let r1 = f.mutate(0).unwrap();
        assert_eq!(c_matrix_of(&r1).unwrap().0, m(&[&[-1, 1], &[0, 1]]));
        let r12 = r1.mutate(1).unwrap();
        assert_eq!(c_matrix_of(&r12).unwrap().0, m(&[&[0, -1], &[1, -1]]));
        assert!(matches!(
            c_matrix_of(&a2()),
            Err(TropicalError::NotPrincipal { n: 2, m: 0 })
        ));
    }

    #[test]
    fn c_mutation_on_a2() {
        let f = a2().framed().unwrap();
        let c1 = mutate_c(&CMatrix::identity(2), &f, 0).unwrap();
        assert_eq!(c1.0, m(&[&[-1, 1], &[0, 1]]));
        let c12 = mutate_c(&c1, &f.mutate(0).unwrap(), 1).unwrap();
        assert_eq!(c12.0, m(&[&[0, -1], &[1, -1]]));
        assert_eq!(
            mutate_c(&CMatrix::identity(2), &f.mutate(0).unwrap(), 1),
            Err(TropicalError::Mismatch)
        );
    }

    #[test]
    fn g_mutation_on_a2() {
        let b0 = a2().top_block();
        let f = a2().framed().unwrap();
        let g1 = mutate_g(&GMatrix::identity(2), &f, &b0, 0).unwrap();
        assert_eq!(g1.0, m(&[&[-1, 0], &[1, 1]]));
        let g12 = mutate_g(&g1, &f.mutate(0).unwrap(), &b0, 1).unwrap();
        assert_eq!(g12.0, m(&[&[-1, -1], &[1, 0]]));
    }

    #[test]
    fn sign_coherence() {
        assert_eq!(check_sign_coherence(&CMatrix(m(&[&[-1, 1], &[0, 1]]))), Ok(()));
        assert_eq!(check_sign_coherence(&CMatrix::identity(3)), Ok(()));
        assert_eq!(check_sign_coherence(&CMatrix(m(&[&[-1, 0], &[0, -1]]))), Ok(()));
        assert_eq!(check_sign_coherence(&CMatrix(m(&[&[1, 0], &[-1, 0]]))), Err(0));
    }

    #[test]
    fn duality() {
        let c = tropical_dual(&GMatrix(m(&[&[-1, 0], &[1, 1]]))).unwrap();
        assert_eq!(c.0, m(&[&[-1, 1], &[0, 1]]));
        assert_eq!(tropical_dual(&GMatrix::identity(3)).unwrap(), CMatrix::identity(3));
        assert!(matches!(
            tropical_dual(&GMatrix(m(&[&[2, 0], &[0, 1]]))),
            Err(TropicalError::NotUnimodular { .. })
        ));
    }

    #[test]
    fn trajectory_tracks_duality() {
        for step in trajectory(&a2(), &[0, 1, 0]).unwrap() {
            assert_eq!(tropical_dual(&step.g).unwrap(), step.c);
            assert_eq!(c_matrix_of(&step.quiver).unwrap(), step.c);
        }
    }
}
