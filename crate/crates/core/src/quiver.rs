//! Ice quivers encoded by their extended exchange matrix.
//!
//! An ice quiver with `n` mutable vertices and `m` frozen vertices is stored
//! as the `(n+m) × n` matrix `b` with `b[i][j] = #(i → j) − #(j → i)`.
//! Arrows between frozen vertices carry no information and are not stored.
//! All vertex indices in this module are 0-based; mutable vertices are
//! `0..n` and frozen vertices are `n..n+m`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::matrix::{neg_part, pos, IntMatrix};

/// Largest mutable-vertex count accepted by [`ExtMatrix::canonical_key`].
pub const CANONICAL_MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("vertex {index} is out of range (quiver has {n} mutable and {m} frozen vertices)")]
    VertexOutOfRange { index: usize, n: usize, m: usize },
    #[error("vertex {index} is frozen and cannot be mutated")]
    FrozenVertex { index: usize },
    #[error("matrix has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("top block is not skew-symmetric at b[{i}][{j}]")]
    NotSkewSymmetric { i: usize, j: usize },
    #[error("loop at vertex {i}: b[{i}][{i}] must be zero")]
    Loop { i: usize },
    #[error("quiver already has {m} frozen vertices")]
    HasFrozenVertices { m: usize },
    #[error("canonical form supports at most {cap} mutable vertices, got {n}")]
    TooLarge { n: usize, cap: usize },
    #[error("permutation does not act on {n} vertices")]
    BadPermutation { n: usize },
}

/// Colour of a mutable vertex relative to the frozen part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexColor {
    /// No arrow from the vertex to a frozen vertex.
    Green,
    /// No arrow from a frozen vertex to the vertex.
    Red,
    /// Arrows in both directions: never happens inside a framed mutation class.
    Neither,
}

impl VertexColor {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexColor::Green => "green",
            VertexColor::Red => "red",
            VertexColor::Neither => "neither",
        }
    }
}

impl fmt::Display for VertexColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A permutation of the mutable vertices, `i ↦ self.image(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Returns `None` unless `images` is a bijection of `0..len`.
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// Byte string identifying an ice quiver up to relabelling of its mutable
/// vertices (frozen vertices fixed).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        CanonicalKey(bytes)
    }

    pub fn as_str(&self) -> &str {
        // Keys are built from ASCII digits and separators only.
        std::str::from_utf8(&self.0).unwrap_or("")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Extended exchange matrix `B(Q,F)` of an ice quiver.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtMatrix {
    n: usize,
    m: usize,
    b: IntMatrix,
}

impl ExtMatrix {
    /// Validates shape, zero diagonal and skew-symmetry of the top block.
    pub fn new(n: usize, m: usize, b: IntMatrix) -> Result<Self, QuiverError> {
        if b.rows() != n + m || b.cols() != n {
            return Err(QuiverError::Shape {
                rows: b.rows(),
                cols: b.cols(),
                expected_rows: n + m,
                expected_cols: n,
            });
        }
        for i in 0..n {
            if !b.get(i, i).is_zero() {
                return Err(QuiverError::Loop { i });
            }
            for j in i + 1..n {
                if b.get(i, j) != &-b.get(j, i) {
                    return Err(QuiverError::NotSkewSymmetric { i, j });
                }
            }
        }
        Ok(ExtMatrix { n, m, b })
    }

    pub fn from_rows_i64(n: usize, m: usize, rows: &[&[i64]]) -> Result<Self, QuiverError> {
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        let b = IntMatrix::from_rows(&owned, n).ok_or(QuiverError::Shape {
            rows: rows.len(),
            cols: rows.iter().map(|r| r.len()).max().unwrap_or(0),
            expected_rows: n + m,
            expected_cols: n,
        })?;
        Self::new(n, m, b)
    }

    /// Quiver with `n` vertices and no arrows.
    pub fn empty(n: usize) -> Self {
        ExtMatrix {
            n,
            m: 0,
            b: IntMatrix::zeros(n, n),
        }
    }

    /// Mutable vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Frozen vertex count.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.b.get(i, j)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.b
    }

    /// The `n × n` principal part.
    pub fn top_block(&self) -> IntMatrix {
        self.b.row_block(0, self.n)
    }

    /// The `m × n` frozen part (the c-matrix for framed mutation classes).
    pub fn bottom_block(&self) -> IntMatrix {
        self.b.row_block(self.n, self.n + self.m)
    }

    /// The same quiver with its frozen vertices dropped.
    pub fn principal_part(&self) -> ExtMatrix {
        ExtMatrix {
            n: self.n,
            m: 0,
            b: self.top_block(),
        }
    }

    fn check_mutable(&self, k: usize) -> Result<(), QuiverError> {
        if k < self.n {
            Ok(())
        } else if k < self.n + self.m {
            Err(QuiverError::FrozenVertex { index: k })
        } else {
            Err(QuiverError::VertexOutOfRange {
                index: k,
                n: self.n,
                m: self.m,
            })
        }
    }

    /// Mutation at the mutable vertex `k`.
    ///
    /// Entries in row or column `k` change sign; every other entry becomes
    /// `b[i][j] + [b[i][k]]₊[b[k][j]]₊ − [−b[i][k]]₊[−b[k][j]]₊`. This is the
    /// net-multiplicity form of composing paths through `k`, reversing the
    /// arrows at `k` and cancelling 2-cycles.
    pub fn mutate(&self, k: usize) -> Result<ExtMatrix, QuiverError> {
        self.check_mutable(k)?;
        let rows = self.n + self.m;
        let mut out = IntMatrix::zeros(rows, self.n);
        for i in 0..rows {
            let bik = self.b.get(i, k);
            for j in 0..self.n {
                let bij = self.b.get(i, j);
                let v = if i == k || j == k {
                    -bij
                } else {
                    let bkj = self.b.get(k, j);
                    bij + pos(bik) * pos(bkj) - neg_part(bik) * neg_part(bkj)
                };
                out.set(i, j, v);
            }
        }
        Ok(ExtMatrix {
            n: self.n,
            m: self.m,
            b: out,
        })
    }

    /// Applies mutations left to right.
    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<ExtMatrix, QuiverError> {
        seq.iter().try_fold(self.clone(), |q, &k| q.mutate(k))
    }

    fn with_frozen_diagonal(&self, sign: i64) -> Result<ExtMatrix, QuiverError> {
        if self.m != 0 {
            return Err(QuiverError::HasFrozenVertices { m: self.m });
        }
        let n = self.n;
        let mut b = IntMatrix::zeros(2 * n, n);
        for i in 0..n {
            for j in 0..n {
                b.set(i, j, self.b.get(i, j).clone());
            }
            b.set(n + i, i, BigInt::from(sign));
        }
        Ok(ExtMatrix { n, m: n, b })
    }

    /// Framed quiver: a frozen copy `j'` of every vertex with an arrow `j' → j`.
    pub fn framed(&self) -> Result<ExtMatrix, QuiverError> {
        self.with_frozen_diagonal(1)
    }

    /// Coframed quiver: a frozen copy `j'` of every vertex with an arrow `j → j'`.
    pub fn coframed(&self) -> Result<ExtMatrix, QuiverError> {
        self.with_frozen_diagonal(-1)
    }

    pub fn vertex_color(&self, i: usize) -> Result<VertexColor, QuiverError> {
        if i >= self.n {
            return Err(QuiverError::VertexOutOfRange {
                index: i,
                n: self.n,
                m: self.m,
            });
        }
        let mut to_frozen = false;
        let mut from_frozen = false;
        for r in self.n..self.n + self.m {
            let v = self.b.get(r, i);
            to_frozen |= v.is_negative();
            from_frozen |= v.is_positive();
        }
        Ok(match (to_frozen, from_frozen) {
            (false, _) => VertexColor::Green,
            (true, false) => VertexColor::Red,
            (true, true) => VertexColor::Neither,
        })
    }

    pub fn colors(&self) -> Vec<VertexColor> {
        (0..self.n)
            .map(|i| self.vertex_color(i).expect("index in range"))
            .collect()
    }

    pub fn green_vertices(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| self.vertex_color(i) == Ok(VertexColor::Green))
            .collect()
    }

    /// True when every mutable vertex is red (and there is at least one
    /// frozen arrow to certify it).
    pub fn all_red(&self) -> bool {
        self.colors().iter().all(|&c| c == VertexColor::Red)
    }

    /// Relabels mutable vertices: the result has `b'[σ(i)][σ(j)] = b[i][j]`;
    /// frozen rows stay in place.
    pub fn permuted(&self, sigma: &Permutation) -> Result<ExtMatrix, QuiverError> {
        if sigma.len() != self.n {
            return Err(QuiverError::BadPermutation { n: self.n });
        }
        let mut out = IntMatrix::zeros(self.n + self.m, self.n);
        for j in 0..self.n {
            let sj = sigma.image(j);
            for i in 0..self.n {
                out.set(sigma.image(i), sj, self.b.get(i, j).clone());
            }
            for r in self.n..self.n + self.m {
                out.set(r, sj, self.b.get(r, j).clone());
            }
        }
        Ok(ExtMatrix {
            n: self.n,
            m: self.m,
            b: out,
        })
    }

    /// Largest absolute entry.
    pub fn max_abs_entry(&self) -> BigInt {
        self.b.max_abs()
    }

    /// Serialization of the quiver under the identity labelling; two
    /// matrices share it iff they are equal.
    pub fn labelled_key(&self) -> CanonicalKey {
        let order: Vec<usize> = (0..self.n).collect();
        encode_key(self.n, self.m, &self.serialize_ordered(&order))
    }

    /// Entries listed position by position: for the vertex placed at
    /// position `p`, its frozen column followed by `b[order[p]][order[q]]`
    /// for `q < p`. Any prefix depends only on the vertices placed so far.
    fn block(&self, order: &[usize], p: usize, out: &mut Vec<BigInt>) {
        let v = order[p];
        for r in self.n..self.n + self.m {
            out.push(self.b.get(r, v).clone());
        }
        for &u in &order[..p] {
            out.push(self.b.get(v, u).clone());
        }
    }

    fn serialize_ordered(&self, order: &[usize]) -> Vec<BigInt> {
        let mut out = Vec::new();
        for p in 0..order.len() {
            self.block(order, p, &mut out);
        }
        out
    }

    /// Canonical key under permutations of the mutable vertices.
    pub fn canonical_key(&self) -> Result<CanonicalKey, QuiverError> {
        self.canonical_form().map(|(k, _)| k)
    }

    /// Canonical key together with a permutation taking `self` to the
    /// canonical representative (the labelling that realizes the key).
    pub fn canonical_form(&self) -> Result<(CanonicalKey, Permutation), QuiverError> {
        if self.n > CANONICAL_MAX_VERTICES {
            return Err(QuiverError::TooLarge {
                n: self.n,
                cap: CANONICAL_MAX_VERTICES,
            });
        }
        let colors = self.refined_colors();
        let mut search = CanonSearch {
            q: self,
            colors: &colors,
            best: None,
            best_order: Vec::new(),
            order: Vec::with_capacity(self.n),
            used: vec![false; self.n],
        };
        search.descend(Vec::new());
        let order = search.best_order;
        let serialized = search.best.unwrap_or_default();
        // order[p] = vertex placed at position p, so σ(vertex) = p.
        let mut images = vec![0; self.n];
        for (p, &v) in order.iter().enumerate() {
            images[v] = p;
        }
        Ok((
            encode_key(self.n, self.m, &serialized),
            Permutation(images),
        ))
    }

    /// The representative whose identity serialization is the canonical key.
    pub fn canonical_representative(&self) -> Result<ExtMatrix, QuiverError> {
        let (_, sigma) = self.canonical_form()?;
        self.permuted(&sigma)
    }

    /// Colour refinement on mutable vertices. Colours are ranks of
    /// label-independent signatures, so isomorphic quivers get matching colourings.
    fn refined_colors(&self) -> Vec<usize> {
        let n = self.n;
        let initial: Vec<(Vec<BigInt>, Vec<BigInt>)> = (0..n)
            .map(|v| {
                let frozen: Vec<BigInt> =
                    (n..n + self.m).map(|r| self.b.get(r, v).clone()).collect();
                let mut col: Vec<BigInt> = (0..n)
                    .filter(|&u| u != v)
                    .map(|u| self.b.get(u, v).clone())
                    .collect();
                col.sort();
                (frozen, col)
            })
            .collect();
        let mut colors = rank(&initial);
        loop {
            let classes = colors.iter().max().map_or(0, |c| c + 1);
            let sigs: Vec<(usize, Vec<(BigInt, usize)>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<(BigInt, usize)> = (0..n)
                        .filter(|&u| u != v && !self.b.get(u, v).is_zero())
                        .map(|u| (self.b.get(u, v).clone(), colors[u]))
                        .collect();
                    nb.sort();
                    (colors[v], nb)
                })
                .collect();
            let next = rank(&sigs);
            let next_classes = next.iter().max().map_or(0, |c| c + 1);
            colors = next;
            if next_classes == classes {
                return colors;
            }
        }
    }

    /// Swapping `u` and `v` is an automorphism.
    fn twins(&self, u: usize, v: usize) -> bool {
        if !self.b.get(u, v).is_zero() {
            return false;
        }
        (0..self.n + self.m)
            .filter(|&r| r != u && r != v)
            .all(|r| self.b.get(r, u) == self.b.get(r, v))
    }

    /// Finds `σ` with `other == self.permuted(σ)`, if any.
    pub fn is_isomorphic(&self, other: &ExtMatrix) -> Option<Permutation> {
        if self.n != other.n || self.m != other.m {
            return None;
        }
        let n = self.n;
        let sig = |q: &ExtMatrix, v: usize| {
            let frozen: Vec<BigInt> = (n..n + q.m).map(|r| q.b.get(r, v).clone()).collect();
            let mut col: Vec<BigInt> = (0..n).map(|u| q.b.get(u, v).clone()).collect();
            col.sort();
            (frozen, col)
        };
        let mine: Vec<_> = (0..n).map(|v| sig(self, v)).collect();
        let theirs: Vec<_> = (0..n).map(|v| sig(other, v)).collect();
        let mut assignment = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn extend(
            a: &ExtMatrix,
            b: &ExtMatrix,
            mine: &[(Vec<BigInt>, Vec<BigInt>)],
            theirs: &[(Vec<BigInt>, Vec<BigInt>)],
            v: usize,
            assignment: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if v == a.n {
                return true;
            }
            for w in 0..a.n {
                if used[w] || mine[v] != theirs[w] {
                    continue;
                }
                let consistent = (0..v).all(|u| a.b.get(v, u) == b.b.get(w, assignment[u]));
                if !consistent {
                    continue;
                }
                assignment[v] = w;
                used[w] = true;
                if extend(a, b, mine, theirs, v + 1, assignment, used) {
                    return true;
                }
                used[w] = false;
            }
            false
        }
        if extend(self, other, &mine, &theirs, 0, &mut assignment, &mut used) {
            Some(Permutation(assignment))
        } else {
            None
        }
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = sigs.to_vec();
    distinct.sort();
    distinct.dedup();
    sigs.iter()
        .map(|s| distinct.binary_search(s).expect("present"))
        .collect()
}

fn encode_key(n: usize, m: usize, entries: &[BigInt]) -> CanonicalKey {
    let body: Vec<String> = entries.iter().map(|x| x.to_string()).collect();
    CanonicalKey(format!("{n};{m};{}", body.join(",")).into_bytes())
}

/// Branch and bound over orderings that respect the refined colouring.
struct CanonSearch<'a> {
    q: &'a ExtMatrix,
    colors: &'a [usize],
    best: Option<Vec<BigInt>>,
    best_order: Vec<usize>,
    order: Vec<usize>,
    used: Vec<bool>,
}

impl CanonSearch<'_> {
    /// `prefix` is the serialization of `self.order`.
    fn descend(&mut self, prefix: Vec<BigInt>) {
        let p = self.order.len();
        if p == self.q.n {
            self.best = Some(prefix);
            self.best_order = self.order.clone();
            return;
        }
        // Colour classes are laid out in increasing colour order.
        let target = (0..self.q.n)
            .filter(|&v| !self.used[v])
            .map(|v| self.colors[v])
            .min()
            .expect("unplaced vertex");
        let candidates: Vec<usize> = (0..self.q.n)
            .filter(|&v| !self.used[v] && self.colors[v] == target)
            .collect();
        let mut tried: Vec<usize> = Vec::new();
        for v in candidates {
            if tried.iter().any(|&u| self.q.twins(u, v)) {
                continue;
            }
            tried.push(v);
            self.order.push(v);
            let mut next = prefix.clone();
            self.q.block(&self.order, p, &mut next);
            // `best` may have improved in an earlier sibling, so compare afresh.
            let cmp = match &self.best {
                None => Ordering::Less,
                Some(best) => next.as_slice().cmp(&best[..next.len()]),
            };
            if cmp != Ordering::Greater {
                self.used[v] = true;
                self.descend(next);
                self.used[v] = false;
            }
            self.order.pop();
        }
    }
}

impl fmt::Debug for ExtMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtMatrix(n={}, m={}, {:?})", self.n, self.m, self.b)
    }
}

impl fmt::Display for ExtMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> ExtMatrix {
        ExtMatrix::from_rows_i64(2, 0, &[&[0, 1], &[-1, 0]]).unwrap()
    }

    fn rows(q: &ExtMatrix) -> Vec<Vec<i64>> {
        q.matrix()
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect()
    }

    #[test]
    fn framed_a2_mutation_at_first_vertex() {
        let q = a2().framed().unwrap();
        assert_eq!(rows(&q), vec![vec![0, 1], vec![-1, 0], vec![1, 0], vec![0, 1]]);
        let mu = q.mutate(0).unwrap();
        assert_eq!(
            rows(&mu),
            vec![vec![0, -1], vec![1, 0], vec![-1, 1], vec![0, 1]]
        );
        assert_eq!(mu.mutate(0).unwrap(), q);
    }

    #[test]
    fn framing_rules() {
        let one = ExtMatrix::empty(1);
        assert_eq!(rows(&one.framed().unwrap()), vec![vec![0], vec![1]]);
        assert_eq!(rows(&one.coframed().unwrap()), vec![vec![0], vec![-1]]);
        assert_eq!(
            rows(&a2().coframed().unwrap()),
            vec![vec![0, 1], vec![-1, 0], vec![-1, 0], vec![0, -1]]
        );
        let framed = a2().framed().unwrap();
        assert_eq!(
            framed.framed(),
            Err(QuiverError::HasFrozenVertices { m: 2 })
        );
    }

    #[test]
    fn markov_framed_has_identity_bottom() {
        let markov =
            ExtMatrix::from_rows_i64(3, 0, &[&[0, 2, -2], &[-2, 0, 2], &[2, -2, 0]]).unwrap();
        let f = markov.framed().unwrap();
        assert_eq!(f.m(), 3);
        assert_eq!(f.bottom_block(), IntMatrix::identity(3));
    }

    #[test]
    fn mutate_rejects_bad_indices() {
        let q = a2().framed().unwrap();
        assert_eq!(q.mutate(2), Err(QuiverError::FrozenVertex { index: 2 }));
        assert!(matches!(
            q.mutate(7),
            Err(QuiverError::VertexOutOfRange { index: 7, .. })
        ));
    }

    #[test]
    fn colors_on_a2() {
        let framed = a2().framed().unwrap();
        assert_eq!(framed.colors(), vec![VertexColor::Green, VertexColor::Green]);
        let co = a2().coframed().unwrap();
        assert_eq!(co.vertex_color(1).unwrap(), VertexColor::Red);
        let mu = framed.mutate(0).unwrap();
        assert_eq!(mu.colors(), vec![VertexColor::Red, VertexColor::Green]);
        assert!(framed.vertex_color(2).is_err());
    }

    #[test]
    fn neither_color_detected() {
        let q = ExtMatrix::from_rows_i64(1, 2, &[&[0], &[1], &[-1]]).unwrap();
        assert_eq!(q.vertex_color(0).unwrap(), VertexColor::Neither);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            ExtMatrix::from_rows_i64(2, 0, &[&[0, 1], &[1, 0]]),
            Err(QuiverError::NotSkewSymmetric { i: 0, j: 1 })
        );
        assert_eq!(
            ExtMatrix::from_rows_i64(1, 0, &[&[3]]),
            Err(QuiverError::Loop { i: 0 })
        );
        assert!(matches!(
            ExtMatrix::from_rows_i64(2, 1, &[&[0, 1], &[-1, 0]]),
            Err(QuiverError::Shape { .. })
        ));
    }

    #[test]
    fn isomorphism_after_green_path() {
        let framed = a2().framed().unwrap();
        let end = framed.mutate_sequence(&[0, 1, 0]).unwrap();
        let co = a2().coframed().unwrap();
        let sigma = end.is_isomorphic(&co).expect("isomorphic");
        assert_eq!(sigma.images(), &[1, 0]);
        assert_eq!(end.permuted(&sigma).unwrap(), co);
        assert!(framed.is_isomorphic(&framed).unwrap().is_identity());
        assert!(framed.is_isomorphic(&co).is_none());
    }

    #[test]
    fn framed_and_coframed_keys_differ() {
        let f = a2().framed().unwrap().canonical_key().unwrap();
        let c = a2().coframed().unwrap().canonical_key().unwrap();
        assert_ne!(f, c);
    }

    #[test]
    fn canonical_form_realizes_key() {
        let q = ExtMatrix::from_rows_i64(3, 0, &[&[0, 1, -2], &[-1, 0, 3], &[2, -3, 0]])
            .unwrap()
            .framed()
            .unwrap()
            .mutate_sequence(&[1, 2])
            .unwrap();
        let (key, sigma) = q.canonical_form().unwrap();
        let rep = q.permuted(&sigma).unwrap();
        assert_eq!(rep.labelled_key(), key);
    }

    #[test]
    fn canonical_cap_enforced() {
        let q = ExtMatrix::empty(CANONICAL_MAX_VERTICES + 1);
        assert!(matches!(q.canonical_key(), Err(QuiverError::TooLarge { .. })));
        // Fully symmetric quivers at the cap stay fast thanks to twin pruning.
        assert!(ExtMatrix::empty(CANONICAL_MAX_VERTICES).canonical_key().is_ok());
    }
}
