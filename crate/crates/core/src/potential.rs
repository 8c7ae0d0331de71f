//! Path-algebra layer: potentials, cyclic derivatives and the Ginzburg
//! graded quiver.
//!
//! Paths are written right to left, as composition of maps: the written
//! path `c.b.a` traverses `a` first. The product `p·q` is defined when
//! `s(p) = t(q)`. Vertices are 0-based.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PotentialError {
    #[error("arrow {name:?} has an endpoint outside 0..{vertices}")]
    EndpointOutOfRange { name: String, vertices: usize },
    #[error("duplicate arrow name {0:?}")]
    DuplicateName(String),
    #[error("invalid arrow name {0:?}")]
    InvalidName(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("path {0} is not composable")]
    NotComposable(String),
    #[error("term {0} of the potential is not a non-trivial cycle")]
    NotACycle(String),
    #[error("arrow {name:?} has degree {degree}, expected 0")]
    GradedInput { name: String, degree: i64 },
    #[error("cannot parse {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: i64,
}

/// A finite graded quiver with named arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathQuiver {
    vertices: usize,
    arrows: Vec<Arrow>,
    by_name: HashMap<String, usize>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name.starts_with(|c: char| c.is_ascii_digit())
        && !name.chars().any(|c| c.is_whitespace() || matches!(c, '.' | '+' | '-' | '"'))
}

impl PathQuiver {
    pub fn new(vertices: usize, arrows: Vec<Arrow>) -> Result<Self, PotentialError> {
        let mut by_name = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if !valid_name(&a.name) {
                return Err(PotentialError::InvalidName(a.name.clone()));
            }
            if a.source >= vertices || a.target >= vertices {
                return Err(PotentialError::EndpointOutOfRange {
                    name: a.name.clone(),
                    vertices,
                });
            }
            if by_name.insert(a.name.clone(), i).is_some() {
                return Err(PotentialError::DuplicateName(a.name.clone()));
            }
        }
        Ok(PathQuiver {
            vertices,
            arrows,
            by_name,
        })
    }

    /// Ungraded quiver from `(name, source, target)` triples.
    pub fn ungraded(vertices: usize, arrows: &[(&str, usize, usize)]) -> Result<Self, PotentialError> {
        Self::new(
            vertices,
            arrows
                .iter()
                .map(|&(name, source, target)| Arrow {
                    name: name.to_string(),
                    source,
                    target,
                    degree: 0,
                })
                .collect(),
        )
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, name: &str) -> Option<&Arrow> {
        self.by_name.get(name).map(|&i| &self.arrows[i])
    }

    /// The written path `names[0].names[1]…`, checked for composability.
    pub fn path(&self, names: &[&str]) -> Result<Path, PotentialError> {
        let arrows: Vec<&Arrow> = names
            .iter()
            .map(|n| self.arrow(n).ok_or_else(|| PotentialError::UnknownArrow(n.to_string())))
            .collect::<Result<_, _>>()?;
        let Some(first) = arrows.first() else {
            return Err(PotentialError::NotComposable(String::new()));
        };
        for w in arrows.windows(2) {
            if w[0].source != w[1].target {
                return Err(PotentialError::NotComposable(names.join(".")));
            }
        }
        Ok(Path {
            arrows: names.iter().map(|s| s.to_string()).collect(),
            source: arrows.last().expect("non-empty").source,
            target: first.target,
        })
    }

    pub fn degree(&self, p: &Path) -> i64 {
        p.arrows
            .iter()
            .map(|n| self.arrow(n).map_or(0, |a| a.degree))
            .sum()
    }
}

/// A path in written order together with its endpoints; the empty path at
/// `v` is the idempotent `e_v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub arrows: Vec<String>,
    pub source: usize,
    pub target: usize,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            arrows: Vec::new(),
            source: v,
            target: v,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        !self.is_trivial() && self.source == self.target
    }

    /// `self · other`, defined when `s(self) = t(other)`.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().cloned());
        Some(Path {
            arrows,
            source: other.source,
            target: self.target,
        })
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            write!(f, "e{}", self.source + 1)
        } else {
            f.write_str(&self.arrows.join("."))
        }
    }
}

/// Finite integer combination of paths.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PathExpr {
    terms: BTreeMap<Path, BigInt>,
}

impl PathExpr {
    pub fn zero() -> Self {
        PathExpr::default()
    }

    pub fn from_path(p: Path) -> Self {
        let mut e = PathExpr::zero();
        e.add_term(p, BigInt::one());
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigInt, Path)>) -> Self {
        let mut e = PathExpr::zero();
        for (c, p) in terms {
            e.add_term(p, c);
        }
        e
    }

    pub fn add_term(&mut self, p: Path, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, k: &BigInt) -> PathExpr {
        PathExpr::from_terms(self.terms.iter().map(|(p, c)| (c * k, p.clone())))
    }

    pub fn plus(&self, other: &PathExpr) -> PathExpr {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    /// Parses `±k*rho1.rho2…` summands; a missing coefficient means 1 and
    /// `eN` is the trivial path at vertex `N` (1-based) unless an arrow has
    /// that name. `0` or the empty string is the zero element.
    pub fn parse(text: &str, quiver: &PathQuiver) -> Result<PathExpr, PotentialError> {
        let text = text.trim();
        let mut out = PathExpr::zero();
        if text.is_empty() || text == "0" {
            return Ok(out);
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut current = String::new();
        for ch in text.chars() {
            if ch == '+' || ch == '-' {
                if !current.trim().is_empty() {
                    pieces.push((negative, current.trim().to_string()));
                } else if !pieces.is_empty() || current.contains(char::is_alphanumeric) {
                    return Err(PotentialError::Parse(text.to_string()));
                }
                current.clear();
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.trim().is_empty() {
            return Err(PotentialError::Parse(text.to_string()));
        }
        pieces.push((negative, current.trim().to_string()));

        for (negative, body) in pieces {
            let (coeff, path_text) = match body.split_once('*') {
                Some((k, rest)) if !k.is_empty() && k.trim().chars().all(|c| c.is_ascii_digit()) => {
                    let k: BigInt = k.trim().parse().map_err(|_| PotentialError::Parse(body.clone()))?;
                    (k, rest.trim().to_string())
                }
                _ => (BigInt::one(), body.clone()),
            };
            let names: Vec<&str> = path_text.split('.').map(str::trim).collect();
            let path = match names.as_slice() {
                [single] if quiver.arrow(single).is_none() && single.starts_with('e') => {
                    let v: usize = single[1..]
                        .parse()
                        .map_err(|_| PotentialError::UnknownArrow(single.to_string()))?;
                    if v == 0 || v > quiver.vertices() {
                        return Err(PotentialError::Parse(body.clone()));
                    }
                    Path::trivial(v - 1)
                }
                _ => quiver.path(&names)?,
            };
            out.add_term(path, if negative { -coeff } else { coeff });
        }
        Ok(out)
    }
}

/// `±k*rho1.rho2…` summands separated by spaces; `0` for the zero element.
impl fmt::Display for PathExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| {
                let sign = if c.is_negative() { '-' } else { '+' };
                format!("{sign}{}*{p}", c.abs())
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for PathExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PathExpr({self})")
    }
}

fn check_potential(w: &PathExpr) -> Result<(), PotentialError> {
    match w.terms().find(|(p, _)| !p.is_cycle()) {
        Some((p, _)) => Err(PotentialError::NotACycle(p.to_string())),
        None => Ok(()),
    }
}

/// `∂_ρ(W)`: for every cycle `c` of `W` and every decomposition `c = uρv`,
/// the rotated path `vu`, weighted by the coefficient of `c`.
pub fn cyclic_derivative(w: &PathExpr, rho: &Arrow) -> Result<PathExpr, PotentialError> {
    check_potential(w)?;
    let mut out = PathExpr::zero();
    for (cycle, coeff) in w.terms() {
        for (pos, name) in cycle.arrows.iter().enumerate() {
            if name != &rho.name {
                continue;
            }
            let (u, rest) = cycle.arrows.split_at(pos);
            let v = &rest[1..];
            let mut arrows = v.to_vec();
            arrows.extend_from_slice(u);
            out.add_term(
                Path {
                    arrows,
                    source: rho.target,
                    target: rho.source,
                },
                coeff.clone(),
            );
        }
    }
    Ok(out)
}

/// Graded quiver `Q̃` with the values of the differential on its arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GinzburgQuiver {
    pub quiver: PathQuiver,
    /// `differential[k]` is `d` of `quiver.arrows()[k]`.
    pub differential: Vec<PathExpr>,
}

impl GinzburgQuiver {
    pub fn d(&self, name: &str) -> Option<&PathExpr> {
        self.quiver
            .arrows()
            .iter()
            .position(|a| a.name == name)
            .map(|k| &self.differential[k])
    }
}

pub fn star_name(rho: &str) -> String {
    format!("{rho}*")
}

pub fn loop_name(vertex: usize) -> String {
    format!("t{}", vertex + 1)
}

fn check_ungraded(q: &PathQuiver) -> Result<(), PotentialError> {
    match q.arrows().iter().find(|a| a.degree != 0) {
        Some(a) => Err(PotentialError::GradedInput {
            name: a.name.clone(),
            degree: a.degree,
        }),
        None => Ok(()),
    }
}

/// Builds `Q̃`: the arrows of `Q` in degree 0, `ρ*: t(ρ) → s(ρ)` in degree
/// −1, and loops `t_i` in degree −2, with `d(ρ) = 0`, `d(ρ*) = ∂_ρW` and
/// `d(t_i) = e_i Σ_ρ (ρρ* − ρ*ρ) e_i`.
pub fn ginzburg(q: &PathQuiver, w: &PathExpr) -> Result<GinzburgQuiver, PotentialError> {
    check_ungraded(q)?;
    check_potential(w)?;
    let mut arrows: Vec<Arrow> = q.arrows().to_vec();
    let mut differential: Vec<PathExpr> = vec![PathExpr::zero(); arrows.len()];

    for rho in q.arrows() {
        arrows.push(Arrow {
            name: star_name(&rho.name),
            source: rho.target,
            target: rho.source,
            degree: -1,
        });
        differential.push(cyclic_derivative(w, rho)?);
    }
    for i in 0..q.vertices() {
        arrows.push(Arrow {
            name: loop_name(i),
            source: i,
            target: i,
            degree: -2,
        });
        let mut d = PathExpr::zero();
        for rho in q.arrows() {
            let star = star_name(&rho.name);
            if rho.target == i {
                d.add_term(
                    Path {
                        arrows: vec![rho.name.clone(), star.clone()],
                        source: i,
                        target: i,
                    },
                    BigInt::one(),
                );
            }
            if rho.source == i {
                d.add_term(
                    Path {
                        arrows: vec![star, rho.name.clone()],
                        source: i,
                        target: i,
                    },
                    -BigInt::one(),
                );
            }
        }
        differential.push(d);
    }
    Ok(GinzburgQuiver {
        quiver: PathQuiver::new(q.vertices(), arrows)?,
        differential,
    })
}

/// The non-zero cyclic derivatives `∂_ρW`, `ρ ∈ Q₁`, presenting the
/// Jacobian algebra as a quotient of the path algebra.
pub fn jacobian_presentation(q: &PathQuiver, w: &PathExpr) -> Result<Vec<(String, PathExpr)>, PotentialError> {
    check_ungraded(q)?;
    check_potential(w)?;
    q.arrows()
        .iter()
        .map(|rho| Ok((rho.name.clone(), cyclic_derivative(w, rho)?)))
        .filter(|r| !matches!(r, Ok((_, d)) if d.is_zero()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_cycle() -> PathQuiver {
        PathQuiver::ungraded(3, &[("a", 0, 1), ("b", 1, 2), ("c", 2, 0)]).unwrap()
    }

    fn a2() -> PathQuiver {
        PathQuiver::ungraded(2, &[("alpha", 0, 1)]).unwrap()
    }

    fn expr(q: &PathQuiver, text: &str) -> PathExpr {
        PathExpr::parse(text, q).unwrap()
    }

    #[test]
    fn derivative_of_three_cycle() {
        let q = three_cycle();
        let w = expr(&q, "c.b.a");
        let d = cyclic_derivative(&w, q.arrow("a").unwrap()).unwrap();
        assert_eq!(d, expr(&q, "c.b"));
        let p = d.terms().next().unwrap().0;
        assert_eq!((p.source, p.target), (1, 0));
    }

    #[test]
    fn derivative_of_absent_arrow_is_zero() {
        let q = PathQuiver::ungraded(3, &[("a", 0, 1), ("b", 1, 0), ("z", 1, 2)]).unwrap();
        let w = expr(&q, "b.a");
        assert!(cyclic_derivative(&w, q.arrow("z").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn derivative_counts_every_occurrence() {
        let q = PathQuiver::ungraded(2, &[("rho", 0, 1), ("sigma", 1, 0)]).unwrap();
        let w = expr(&q, "rho.sigma.rho.sigma");
        let d = cyclic_derivative(&w, q.arrow("rho").unwrap()).unwrap();
        assert_eq!(d, expr(&q, "2*sigma.rho.sigma"));
    }

    #[test]
    fn non_cycle_rejected() {
        let q = three_cycle();
        let w = expr(&q, "b.a");
        assert!(matches!(
            cyclic_derivative(&w, q.arrow("a").unwrap()),
            Err(PotentialError::NotACycle(_))
        ));
        assert!(matches!(ginzburg(&q, &w), Err(PotentialError::NotACycle(_))));
    }

    #[test]
    fn ginzburg_a2() {
        let q = a2();
        let g = ginzburg(&q, &PathExpr::zero()).unwrap();
        let gq = &g.quiver;
        assert_eq!(g.d("t1").unwrap().to_string(), "-1*alpha*.alpha");
        assert_eq!(g.d("t2").unwrap().to_string(), "+1*alpha.alpha*");
        assert!(g.d("alpha").unwrap().is_zero());
        assert!(g.d("alpha*").unwrap().is_zero());
        assert_eq!(g.d("t1").unwrap(), &PathExpr::parse("-alpha*.alpha", gq).unwrap());
        let star = gq.arrow("alpha*").unwrap();
        assert_eq!((star.source, star.target, star.degree), (1, 0, -1));
        assert_eq!(gq.arrow("t2").unwrap().degree, -2);
    }

    #[test]
    fn ginzburg_single_vertex() {
        let q = PathQuiver::ungraded(1, &[]).unwrap();
        let g = ginzburg(&q, &PathExpr::zero()).unwrap();
        assert_eq!(g.quiver.arrows().len(), 1);
        assert!(g.d("t1").unwrap().is_zero());
    }

    #[test]
    fn ginzburg_three_cycle() {
        let q = three_cycle();
        let g = ginzburg(&q, &expr(&q, "c.b.a")).unwrap();
        assert_eq!(g.d("a*").unwrap(), &expr(&q, "c.b"));
        assert_eq!(g.d("b*").unwrap(), &expr(&q, "a.c"));
        assert_eq!(g.d("c*").unwrap(), &expr(&q, "b.a"));
    }

    #[test]
    fn jacobian_relations() {
        assert!(jacobian_presentation(&a2(), &PathExpr::zero()).unwrap().is_empty());
        let q = three_cycle();
        let rel = jacobian_presentation(&q, &expr(&q, "c.b.a")).unwrap();
        let names: Vec<(String, String)> = rel.iter().map(|(n, d)| (n.clone(), d.to_string())).collect();
        assert_eq!(
            names,
            vec![
                ("a".to_string(), "+1*c.b".to_string()),
                ("b".to_string(), "+1*a.c".to_string()),
                ("c".to_string(), "+1*b.a".to_string()),
            ]
        );
    }

    #[test]
    fn parse_errors() {
        let q = three_cycle();
        assert!(matches!(PathExpr::parse("a.b", &q), Err(PotentialError::NotComposable(_))));
        assert!(matches!(PathExpr::parse("c.x", &q), Err(PotentialError::UnknownArrow(_))));
        assert!(PathExpr::parse("c.b.a +", &q).is_err());
        assert_eq!(PathExpr::parse("e2", &q).unwrap().to_string(), "+1*e2");
        assert!(PathExpr::parse("0", &q).unwrap().is_zero());
        assert!(PathExpr::parse("c.b.a - c.b.a", &q).unwrap().is_zero());
    }

    #[test]
    fn graded_input_rejected() {
        let q = PathQuiver::new(
            1,
            vec![Arrow {
                name: "x".into(),
                source: 0,
                target: 0,
                degree: -1,
            }],
        )
        .unwrap();
        assert!(matches!(
            ginzburg(&q, &PathExpr::zero()),
            Err(PotentialError::GradedInput { .. })
        ));
    }
}
