//! Sparse multivariate Laurent polynomials over ℤ.
//!
//! A polynomial lives in `ℤ[x₁^{±1},…,x_k^{±1},x_{k+1},…,x_N]`: the first
//! `inverted` variables may carry negative exponents, the remaining ones may
//! not. Cluster variables with principal coefficients use `N = 2n, k = n`;
//! F-polynomials use `N = n, k = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// `ℤ[x₁^{±1},…,x_inverted^{±1}, x_{inverted+1},…,x_vars]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LaurentRing {
    pub vars: usize,
    pub inverted: usize,
}

impl LaurentRing {
    /// The ring of cluster variables with principal coefficients in rank `n`.
    pub fn principal(n: usize) -> Self {
        LaurentRing {
            vars: 2 * n,
            inverted: n,
        }
    }

    /// Ordinary polynomials in `vars` variables.
    pub fn polynomial(vars: usize) -> Self {
        LaurentRing { vars, inverted: 0 }
    }

    pub fn admits(&self, exps: &[i64]) -> bool {
        exps.len() == self.vars && exps[self.inverted..].iter().all(|&e| e >= 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("division is not exact; remainder {remainder}")]
    NonExactDivision { remainder: LaurentPoly },
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent vector {exps:?} does not belong to the ring")]
    OutsideRing { exps: Vec<i64> },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    ring: LaurentRing,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(ring: LaurentRing) -> Self {
        LaurentPoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: LaurentRing, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(vec![0; ring.vars], c.into());
        p
    }

    pub fn one(ring: LaurentRing) -> Self {
        Self::constant(ring, 1)
    }

    /// `c · x^exps`.
    pub fn monomial(ring: LaurentRing, exps: Vec<i64>, c: impl Into<BigInt>) -> Result<Self, LaurentError> {
        if !ring.admits(&exps) {
            return Err(LaurentError::OutsideRing { exps });
        }
        let mut p = Self::zero(ring);
        p.add_term(exps, c.into());
        Ok(p)
    }

    /// The variable `x_{i+1}` (0-based `i`).
    pub fn variable(ring: LaurentRing, i: usize) -> Self {
        let mut exps = vec![0; ring.vars];
        exps[i] = 1;
        Self::monomial(ring, exps, 1).expect("variables belong to the ring")
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms(
        ring: LaurentRing,
        terms: impl IntoIterator<Item = (BigInt, Vec<i64>)>,
    ) -> Result<Self, LaurentError> {
        let mut p = Self::zero(ring);
        for (c, e) in terms {
            if !ring.admits(&e) {
                return Err(LaurentError::OutsideRing { exps: e });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> LaurentRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, exps: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_ring(&self, other: &LaurentPoly) {
        assert_eq!(self.ring, other.ring, "Laurent polynomials from different rings");
    }

    /// Multiplies by `x^shift`, which may leave the ring; used internally.
    fn shifted(&self, shift: &[i64]) -> LaurentPoly {
        LaurentPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    fn min_exponents(&self) -> Vec<i64> {
        let mut mins = vec![i64::MAX; self.ring.vars];
        for e in self.terms.keys() {
            for (m, &x) in mins.iter_mut().zip(e) {
                *m = (*m).min(x);
            }
        }
        mins
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Exact quotient `self / divisor` inside the ring.
    ///
    /// Both sides are first stripped of monomial factors, which turns them
    /// into polynomials without variable factors; in the UFD `ℤ[x]` any
    /// Laurent quotient of such polynomials is a polynomial, so lex-order
    /// long division decides exactness.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.same_ring(divisor);
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mp = self.min_exponents();
        let mq = divisor.min_exponents();
        let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let num = self.shifted(&neg(&mp));
        let den = divisor.shifted(&neg(&mq));
        let (lead_e, lead_c) = den.terms.iter().next_back().expect("nonzero");

        let mut rem = num;
        let mut quot = LaurentPoly::zero(self.ring);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let d: Vec<i64> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let (qc, r) = c.div_rem(lead_c);
            if d.iter().any(|&x| x < 0) || !r.is_zero() {
                return Err(LaurentError::NonExactDivision {
                    remainder: rem.shifted(&mp),
                });
            }
            for (f, dc) in &den.terms {
                let g: Vec<i64> = f.iter().zip(&d).map(|(a, b)| a + b).collect();
                rem.add_term(g, -(&qc * dc));
            }
            quot.add_term(d, qc);
        }

        let shift: Vec<i64> = mp.iter().zip(&mq).map(|(a, b)| a - b).collect();
        let quot = quot.shifted(&shift);
        if quot.terms.keys().all(|e| self.ring.admits(e)) {
            return Ok(quot);
        }
        // The quotient exists only in a larger ring: report what is left
        // after removing the admissible part.
        let mut admissible = LaurentPoly::zero(self.ring);
        for (e, c) in quot.terms {
            if self.ring.admits(&e) {
                admissible.add_term(e, c);
            }
        }
        Err(LaurentError::NonExactDivision {
            remainder: self - &(&admissible * divisor),
        })
    }

    /// Applies a monomial map `x^e ↦ c·x^{f(e)}` term by term into `ring`.
    pub fn map_monomials(
        &self,
        ring: LaurentRing,
        f: impl Fn(&[i64]) -> Vec<i64>,
    ) -> Result<LaurentPoly, LaurentError> {
        LaurentPoly::from_terms(ring, self.terms.iter().map(|(e, c)| (c.clone(), f(e))))
    }

    /// Human-readable fraction with a monomial denominator, e.g.
    /// `(x2+x3+x1*x3*x4)/(x1*x2)`.
    pub fn render_fraction(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mins = self.min_exponents();
        let den: Vec<i64> = mins.iter().map(|&m| (-m).max(0)).collect();
        let num = self.shifted(&den);
        let mut terms: Vec<(&Vec<i64>, &BigInt)> = num.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: i64 = a.0.iter().sum();
            let db: i64 = b.0.iter().sum();
            da.cmp(&db).then_with(|| b.0.cmp(a.0))
        });
        let mut numerator = String::new();
        for (k, (e, c)) in terms.iter().enumerate() {
            let mono = render_monomial(e);
            let mag = c.abs();
            if c.is_negative() {
                numerator.push('-');
            } else if k > 0 {
                numerator.push('+');
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => numerator.push_str(&mag.to_string()),
                (false, true) => numerator.push_str(&mono),
                (false, false) => numerator.push_str(&format!("{mag}*{mono}")),
            }
        }
        let denominator = render_monomial(&den);
        if denominator.is_empty() {
            return numerator;
        }
        let numerator = if terms.len() > 1 {
            format!("({numerator})")
        } else {
            numerator
        };
        if den.iter().filter(|&&d| d > 0).count() > 1 {
            format!("{numerator}/({denominator})")
        } else {
            format!("{numerator}/{denominator}")
        }
    }
}

fn render_monomial(e: &[i64]) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| {
            if a == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, a)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.same_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.same_ring(rhs);
        let mut out = LaurentPoly::zero(self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Canonical text: `c * x1^a1 ... xN^aN` terms (zero exponents omitted) in
/// increasing lexicographic exponent order, joined by ` + `.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a != 0)
                    .map(|(i, a)| format!("x{}^{}", i + 1, a))
                    .collect();
                if vars.is_empty() {
                    c.to_string()
                } else {
                    format!("{} * {}", c, vars.join(" "))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
