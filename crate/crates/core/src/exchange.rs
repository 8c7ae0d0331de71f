//! Oriented exchange graphs of framed quivers and maximal green sequences.
//!
//! Vertices of the graph are isomorphism classes of ice quivers reachable
//! from the framed quiver; there is an arrow `[R] → [R']` labelled `i` when
//! `i` is green in `R` and `μ_i(R) ≃ R'`. Exploration is a breadth-first
//! search that only mutates at green vertices. Bounded searches report
//! truncation instead of failing.

use std::collections::HashMap;

use num_bigint::BigInt;
use petgraph::algo::toposort;
use petgraph::graph::DiGraph;
use rayon::prelude::*;
use thiserror::Error;

use crate::quiver::{CanonicalKey, ExtMatrix, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExchangeError {
    #[error("input quiver must have no frozen vertices (found {m})")]
    HasFrozenVertices { m: usize },
    #[error("input quiver has no vertices")]
    Empty,
    #[error("axioms can only be verified on a complete graph")]
    Incomplete,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExploreLimits {
    pub max_vertices: usize,
    pub max_depth: usize,
}

impl Default for ExploreLimits {
    fn default() -> Self {
        ExploreLimits {
            max_vertices: 10_000,
            max_depth: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExploreOptions {
    pub limits: ExploreLimits,
    /// Distinguish quivers by their labelled matrix instead of their
    /// isomorphism class. Debugging aid: the resulting graph is generally
    /// not an exchange graph.
    pub labelled: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeVertex {
    pub key: CanonicalKey,
    /// The first quiver of the class met by the search.
    pub representative: ExtMatrix,
}

/// Arrow `source → target` obtained by mutating `source`'s representative at
/// the (0-based, green) vertex `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExchangeEdge {
    pub source: usize,
    pub target: usize,
    pub vertex: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedExchangeGraph {
    /// Number of mutable vertices of the underlying quiver.
    pub rank: usize,
    pub vertices: Vec<ExchangeVertex>,
    pub edges: Vec<ExchangeEdge>,
    /// True iff the search exhausted the class within its limits.
    pub complete: bool,
}

impl OrientedExchangeGraph {
    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for e in &self.edges {
            d[e.source] += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for e in &self.edges {
            d[e.target] += 1;
        }
        d
    }

    pub fn find(&self, key: &CanonicalKey) -> Option<usize> {
        self.vertices.iter().position(|v| &v.key == key)
    }

    /// Vertex whose representative has every mutable vertex red.
    pub fn all_red_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.vertices[v].representative.all_red())
            .collect()
    }
}

fn key_of(q: &ExtMatrix, labelled: bool) -> Result<CanonicalKey, QuiverError> {
    if labelled {
        Ok(q.labelled_key())
    } else {
        q.canonical_key()
    }
}

fn check_input(q: &ExtMatrix) -> Result<(), ExchangeError> {
    if q.m() != 0 {
        return Err(ExchangeError::HasFrozenVertices { m: q.m() });
    }
    if q.n() == 0 {
        return Err(ExchangeError::Empty);
    }
    Ok(())
}

pub fn explore(q: &ExtMatrix, limits: ExploreLimits) -> Result<OrientedExchangeGraph, ExchangeError> {
    explore_with(
        q,
        ExploreOptions {
            limits,
            labelled: false,
        },
    )
}

/// Breadth-first search from the framed quiver over green mutations.
///
/// Each level is expanded in parallel and merged in key order, so the
/// result does not depend on the number of worker threads.
pub fn explore_with(
    q: &ExtMatrix,
    options: ExploreOptions,
) -> Result<OrientedExchangeGraph, ExchangeError> {
    check_input(q)?;
    let ExploreOptions { limits, labelled } = options;
    let start = q.framed()?;
    let start_key = key_of(&start, labelled)?;
    let mut vertices = vec![ExchangeVertex {
        key: start_key.clone(),
        representative: start,
    }];
    let mut index: HashMap<CanonicalKey, usize> = HashMap::from([(start_key, 0)]);
    let mut edges = Vec::new();
    let mut complete = limits.max_vertices >= 1;
    let mut level = vec![0usize];
    let mut depth = 0;

    while !level.is_empty() {
        if depth >= limits.max_depth {
            if level
                .iter()
                .any(|&v| !vertices[v].representative.green_vertices().is_empty())
            {
                complete = false;
            }
            break;
        }
        let expansions: Vec<Vec<(usize, CanonicalKey, ExtMatrix)>> = level
            .par_iter()
            .map(|&v| {
                let rep = &vertices[v].representative;
                rep.green_vertices()
                    .into_iter()
                    .map(|i| {
                        let r = rep.mutate(i)?;
                        Ok((i, key_of(&r, labelled)?, r))
                    })
                    .collect::<Result<Vec<_>, QuiverError>>()
            })
            .collect::<Result<_, _>>()?;

        let mut next = Vec::new();
        for (&v, found) in level.iter().zip(expansions) {
            for (i, key, r) in found {
                let target = match index.get(&key) {
                    Some(&t) => t,
                    None if vertices.len() < limits.max_vertices => {
                        let t = vertices.len();
                        index.insert(key.clone(), t);
                        vertices.push(ExchangeVertex {
                            key,
                            representative: r,
                        });
                        next.push(t);
                        t
                    }
                    None => {
                        complete = false;
                        continue;
                    }
                };
                edges.push(ExchangeEdge {
                    source: v,
                    target,
                    vertex: i,
                });
            }
        }
        next.sort_by(|&a, &b| vertices[a].key.cmp(&vertices[b].key));
        level = next;
        depth += 1;
    }

    Ok(OrientedExchangeGraph {
        rank: q.n(),
        vertices,
        edges,
        complete,
    })
}

/// Vertices with no incoming arrow and vertices with no outgoing arrow.
/// Only meaningful on complete graphs.
pub fn sources_and_sinks(g: &OrientedExchangeGraph) -> (Vec<usize>, Vec<usize>) {
    let ins = g.in_degrees();
    let outs = g.out_degrees();
    let sources = (0..g.vertices.len()).filter(|&v| ins[v] == 0).collect();
    let sinks = (0..g.vertices.len()).filter(|&v| outs[v] == 0).collect();
    (sources, sinks)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A vertex whose total degree is not the rank.
    Degree {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    /// A vertex lying on an oriented cycle.
    Cycle { vertex: usize },
    Sources(Vec<usize>),
    Sinks(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl AxiomCheck {
    fn pass() -> Self {
        AxiomCheck {
            passed: true,
            witness: None,
        }
    }

    fn fail(w: Witness) -> Self {
        AxiomCheck {
            passed: false,
            witness: Some(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    /// Every vertex meets exactly `rank` edges (counted with multiplicity).
    pub regular: AxiomCheck,
    /// The orientation has no oriented cycle.
    pub acyclic: AxiomCheck,
    pub unique_source: AxiomCheck,
    pub at_most_one_sink: AxiomCheck,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.passed)
    }

    pub fn checks(&self) -> [(&'static str, &AxiomCheck); 4] {
        [
            ("regular", &self.regular),
            ("acyclic", &self.acyclic),
            ("unique-source", &self.unique_source),
            ("at-most-one-sink", &self.at_most_one_sink),
        ]
    }
}

/// Checks the ordered-exchange-graph axioms on a complete graph.
pub fn verify_exchange_axioms(g: &OrientedExchangeGraph) -> Result<AxiomReport, ExchangeError> {
    if !g.complete {
        return Err(ExchangeError::Incomplete);
    }
    let ins = g.in_degrees();
    let outs = g.out_degrees();

    let regular = (0..g.vertices.len())
        .find(|&v| ins[v] + outs[v] != g.rank)
        .map_or_else(AxiomCheck::pass, |v| {
            AxiomCheck::fail(Witness::Degree {
                vertex: v,
                degree: ins[v] + outs[v],
                expected: g.rank,
            })
        });

    let mut dg: DiGraph<(), ()> = DiGraph::new();
    let nodes: Vec<_> = (0..g.vertices.len()).map(|_| dg.add_node(())).collect();
    for e in &g.edges {
        dg.add_edge(nodes[e.source], nodes[e.target], ());
    }
    let acyclic = match toposort(&dg, None) {
        Ok(_) => AxiomCheck::pass(),
        Err(cycle) => AxiomCheck::fail(Witness::Cycle {
            vertex: cycle.node_id().index(),
        }),
    };

    let (sources, sinks) = sources_and_sinks(g);
    let unique_source = if sources.len() == 1 {
        AxiomCheck::pass()
    } else {
        AxiomCheck::fail(Witness::Sources(sources))
    };
    let at_most_one_sink = if sinks.len() <= 1 {
        AxiomCheck::pass()
    } else {
        AxiomCheck::fail(Witness::Sinks(sinks))
    };

    Ok(AxiomReport {
        regular,
        acyclic,
        unique_source,
        at_most_one_sink,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenSearchLimits {
    pub max_len: usize,
    /// Branches whose matrix has an entry of larger absolute value are cut.
    pub max_entry: BigInt,
}

impl Default for GreenSearchLimits {
    fn default() -> Self {
        GreenSearchLimits {
            max_len: 64,
            max_entry: BigInt::from(1_000_000),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GreenSequenceReport {
    /// Green sequences ending with every vertex red, 0-based, in
    /// lexicographic order.
    pub sequences: Vec<Vec<usize>>,
    /// True iff no branch was cut by the limits.
    pub exhausted: bool,
    /// Number of branches cut by the limits.
    pub frontier_remaining: usize,
}

#[derive(Default)]
struct Partial {
    sequences: Vec<Vec<usize>>,
    cut: usize,
}

fn green_dfs(r: &ExtMatrix, path: &mut Vec<usize>, limits: &GreenSearchLimits) -> Result<Partial, QuiverError> {
    if r.all_red() {
        return Ok(Partial {
            sequences: vec![path.clone()],
            cut: 0,
        });
    }
    let greens = r.green_vertices();
    if greens.is_empty() {
        return Ok(Partial::default());
    }
    if path.len() >= limits.max_len || r.max_abs_entry() > limits.max_entry {
        return Ok(Partial {
            sequences: Vec::new(),
            cut: 1,
        });
    }
    let children: Vec<Partial> = greens
        .par_iter()
        .map(|&i| {
            let mut p = path.clone();
            p.push(i);
            green_dfs(&r.mutate(i)?, &mut p, limits)
        })
        .collect::<Result<_, _>>()?;
    Ok(children.into_iter().fold(Partial::default(), |mut acc, c| {
        acc.sequences.extend(c.sequences);
        acc.cut += c.cut;
        acc
    }))
}

/// Depth-first search over green mutations of the framed quiver. Branches
/// are tried in increasing vertex order, so sequences come out sorted.
pub fn maximal_green_sequences(
    q: &ExtMatrix,
    limits: &GreenSearchLimits,
) -> Result<GreenSequenceReport, ExchangeError> {
    check_input(q)?;
    let start = q.framed()?;
    let partial = green_dfs(&start, &mut Vec::new(), limits)?;
    Ok(GreenSequenceReport {
        sequences: partial.sequences,
        exhausted: partial.cut == 0,
        frontier_remaining: partial.cut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> ExtMatrix {
        ExtMatrix::empty(1)
    }

    fn a2() -> ExtMatrix {
        ExtMatrix::from_rows_i64(2, 0, &[&[0, 1], &[-1, 0]]).unwrap()
    }

    #[test]
    fn a1_graph_is_one_edge() {
        let g = explore(&a1(), ExploreLimits::default()).unwrap();
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.edges.len(), 1);
        assert!(g.complete);
        let (sources, sinks) = sources_and_sinks(&g);
        assert_eq!((sources.len(), sinks.len()), (1, 1));
    }

    #[test]
    fn a2_pentagon() {
        let g = explore(&a2(), ExploreLimits { max_vertices: 100, max_depth: 100 }).unwrap();
        assert_eq!(g.vertices.len(), 5);
        assert_eq!(g.edges.len(), 5);
        assert!(g.complete);
        let (sources, sinks) = sources_and_sinks(&g);
        assert_eq!(sources, vec![0]);
        let co = a2().coframed().unwrap().canonical_key().unwrap();
        assert_eq!(sinks, vec![g.find(&co).unwrap()]);
        assert!(verify_exchange_axioms(&g).unwrap().all_passed());
    }

    #[test]
    fn depth_limit_marks_incomplete() {
        let g = explore(&a2(), ExploreLimits { max_vertices: 100, max_depth: 1 }).unwrap();
        assert!(!g.complete);
        assert_eq!(g.vertices.len(), 3);
        assert_eq!(verify_exchange_axioms(&g), Err(ExchangeError::Incomplete));
    }

    #[test]
    fn vertex_limit_marks_incomplete() {
        let g = explore(&a2(), ExploreLimits { max_vertices: 4, max_depth: 100 }).unwrap();
        assert!(!g.complete);
        assert_eq!(g.vertices.len(), 4);
    }

    #[test]
    fn rejects_framed_input() {
        let f = a2().framed().unwrap();
        assert_eq!(
            explore(&f, ExploreLimits::default()),
            Err(ExchangeError::HasFrozenVertices { m: 2 })
        );
        assert_eq!(
            maximal_green_sequences(&ExtMatrix::empty(0), &GreenSearchLimits::default()),
            Err(ExchangeError::Empty)
        );
    }

    #[test]
    fn duplicated_edge_breaks_regularity() {
        let mut g = explore(&a2(), ExploreLimits::default()).unwrap();
        let e = g.edges[0];
        g.edges.push(e);
        let report = verify_exchange_axioms(&g).unwrap();
        assert!(!report.regular.passed);
        assert!(matches!(
            report.regular.witness,
            Some(Witness::Degree { degree: 3, expected: 2, .. })
        ));
        assert!(report.acyclic.passed);
    }

    #[test]
    fn cycle_is_detected() {
        let mut g = explore(&a2(), ExploreLimits::default()).unwrap();
        let e = g.edges[0];
        g.edges.push(ExchangeEdge {
            source: e.target,
            target: e.source,
            vertex: e.vertex,
        });
        let report = verify_exchange_axioms(&g).unwrap();
        assert!(!report.acyclic.passed);
    }

    #[test]
    fn a2_green_sequences() {
        let report = maximal_green_sequences(
            &a2(),
            &GreenSearchLimits {
                max_len: 10,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(report.sequences, vec![vec![0, 1, 0], vec![1, 0]]);
        assert!(report.exhausted);
        assert_eq!(report.frontier_remaining, 0);
    }

    #[test]
    fn a1_green_sequence() {
        let report = maximal_green_sequences(&a1(), &GreenSearchLimits::default()).unwrap();
        assert_eq!(report.sequences, vec![vec![0]]);
        assert!(report.exhausted);
    }
}
