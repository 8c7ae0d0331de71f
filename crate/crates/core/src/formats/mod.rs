//! Stable file formats shared by the CLI, the service and the tests.
//!
//! Every document is canonical JSON: keys sorted, no whitespace, integers as
//! JSON numbers when they fit in `i64` and as decimal strings otherwise. Each
//! top-level object carries `"v":1`. Vertex and mutation indices are 1-based.

mod dot;
mod workspace;

pub use dot::{graph_to_dot, quiver_to_dot};
pub use workspace::{EntryKind, Workspace, write_atomic};

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::cluster::{ClusterError, Seed};
use crate::exchange::{ExchangeEdge, ExchangeVertex, GreenSequenceReport, OrientedExchangeGraph};
use crate::laurent::{LaurentError, LaurentPoly, LaurentRing};
use crate::matrix::IntMatrix;
use crate::potential::{Arrow, GinzburgQuiver, PathExpr, PathQuiver, PotentialError};
use crate::quiver::{CanonicalKey, ExtMatrix, QuiverError};
use crate::tropical::TrajectoryStep;

pub const VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Schema { field: String, message: String },
    #[error("{field}: {source}")]
    Quiver {
        field: String,
        #[source]
        source: QuiverError,
    },
    #[error("{field}: {source}")]
    Laurent {
        field: String,
        #[source]
        source: LaurentError,
    },
    #[error("{field}: {source}")]
    Potential {
        field: String,
        #[source]
        source: PotentialError,
    },
    #[error("{field}: {source}")]
    Seed {
        field: String,
        #[source]
        source: ClusterError,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl FormatError {
    fn schema(field: &str, message: impl Into<String>) -> Self {
        FormatError::Schema {
            field: field.to_string(),
            message: message.into(),
        }
    }
}

/// Field paths use JSON-pointer syntax; the document root is `/`.
fn child(path: &str, key: impl std::fmt::Display) -> String {
    if path == "/" {
        format!("/{key}")
    } else {
        format!("{path}/{key}")
    }
}

pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string(v).expect("json values always serialize")
}

pub fn parse_json(text: &str) -> Result<Value, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn int_to_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(x.to_string()),
    }
}

pub fn json_to_int(v: &Value, path: &str) -> Result<BigInt, FormatError> {
    match v {
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = num.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(FormatError::schema(path, "expected an integer, found a float"))
            }
        }
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| FormatError::schema(path, format!("{s:?} is not an integer"))),
        _ => Err(FormatError::schema(path, "expected an integer")),
    }
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, FormatError> {
    v.as_object().ok_or_else(|| FormatError::schema(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, FormatError> {
    v.as_array().ok_or_else(|| FormatError::schema(path, "expected an array"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, FormatError> {
    v.as_str().ok_or_else(|| FormatError::schema(path, "expected a string"))
}

fn as_bool(v: &Value, path: &str) -> Result<bool, FormatError> {
    v.as_bool().ok_or_else(|| FormatError::schema(path, "expected a boolean"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize, FormatError> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| FormatError::schema(path, "expected a non-negative integer"))
}

fn as_i64(v: &Value, path: &str) -> Result<i64, FormatError> {
    v.as_i64().ok_or_else(|| FormatError::schema(path, "expected an integer"))
}

/// 1-based index in `1..=bound`, returned 0-based.
fn as_index(v: &Value, bound: usize, path: &str) -> Result<usize, FormatError> {
    let k = as_usize(v, path)?;
    if k == 0 || k > bound {
        return Err(FormatError::schema(path, format!("index {k} outside 1..={bound}")));
    }
    Ok(k - 1)
}

struct Object<'a> {
    map: &'a Map<String, Value>,
    path: String,
}

impl<'a> Object<'a> {
    /// Rejects unknown keys and any version other than 1.
    fn open(v: &'a Value, path: &str, keys: &[&str]) -> Result<Self, FormatError> {
        let map = as_object(v, path)?;
        for k in map.keys() {
            if k != "v" && !keys.contains(&k.as_str()) {
                return Err(FormatError::schema(&child(path, k), "unknown field"));
            }
        }
        if let Some(ver) = map.get("v") {
            if ver.as_u64() != Some(VERSION) {
                return Err(FormatError::schema(&child(path, "v"), format!("unsupported version {ver}")));
            }
        }
        Ok(Object {
            map,
            path: path.to_string(),
        })
    }

    fn get(&self, key: &str) -> Result<(&'a Value, String), FormatError> {
        let p = child(&self.path, key);
        match self.map.get(key) {
            Some(v) => Ok((v, p)),
            None => Err(FormatError::schema(&p, "missing field")),
        }
    }

    fn optional(&self, key: &str) -> Option<(&'a Value, String)> {
        self.map.get(key).map(|v| (v, child(&self.path, key)))
    }
}

// ---- matrices and quivers ----

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(int_to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value, rows: usize, cols: usize, path: &str) -> Result<IntMatrix, FormatError> {
    let arr = as_array(v, path)?;
    if arr.len() != rows {
        return Err(FormatError::schema(path, format!("expected {rows} rows, found {}", arr.len())));
    }
    let mut out = IntMatrix::zeros(rows, cols);
    for (i, row) in arr.iter().enumerate() {
        let rp = child(path, i);
        let row = as_array(row, &rp)?;
        if row.len() != cols {
            return Err(FormatError::schema(&rp, format!("expected {cols} columns, found {}", row.len())));
        }
        for (j, x) in row.iter().enumerate() {
            out.set(i, j, json_to_int(x, &child(&rp, j))?);
        }
    }
    Ok(out)
}

pub fn quiver_to_json(q: &ExtMatrix) -> Value {
    json!({"b": matrix_to_json(q.matrix()), "m": q.m(), "n": q.n(), "v": VERSION})
}

fn quiver_error_field(path: &str, e: &QuiverError) -> String {
    match *e {
        QuiverError::NotSkewSymmetric { i, j } => child(&child(&child(path, "b"), i), j),
        QuiverError::Loop { i } => child(&child(&child(path, "b"), i), i),
        _ => child(path, "b"),
    }
}

pub fn quiver_from_json(v: &Value, path: &str) -> Result<ExtMatrix, FormatError> {
    let obj = Object::open(v, path, &["b", "m", "n"])?;
    let (n, np) = obj.get("n")?;
    let n = as_usize(n, &np)?;
    let m = match obj.optional("m") {
        Some((m, mp)) => as_usize(m, &mp)?,
        None => 0,
    };
    let (b, bp) = obj.get("b")?;
    let b = matrix_from_json(b, n + m, n, &bp)?;
    ExtMatrix::new(n, m, b).map_err(|e| FormatError::Quiver {
        field: quiver_error_field(path, &e),
        source: e,
    })
}

pub fn serialize_quiver(q: &ExtMatrix) -> String {
    to_canonical_string(&quiver_to_json(q))
}

pub fn parse_quiver(text: &str) -> Result<ExtMatrix, FormatError> {
    quiver_from_json(&parse_json(text)?, "/")
}

// ---- Laurent polynomials ----

/// `[[coeff,[exps]],…]` in increasing exponent order.
pub fn laurent_terms_to_json(p: &LaurentPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(e, c)| json!([int_to_json(c), e]))
            .collect(),
    )
}

pub fn laurent_terms_from_json(v: &Value, ring: LaurentRing, path: &str) -> Result<LaurentPoly, FormatError> {
    let arr = as_array(v, path)?;
    let mut terms = Vec::with_capacity(arr.len());
    for (k, t) in arr.iter().enumerate() {
        let tp = child(path, k);
        let pair = as_array(t, &tp)?;
        if pair.len() != 2 {
            return Err(FormatError::schema(&tp, "expected [coeff,[exps]]"));
        }
        let c = json_to_int(&pair[0], &child(&tp, 0))?;
        let ep = child(&tp, 1);
        let exps = as_array(&pair[1], &ep)?
            .iter()
            .enumerate()
            .map(|(i, x)| as_i64(x, &child(&ep, i)))
            .collect::<Result<Vec<_>, _>>()?;
        if exps.len() != ring.vars {
            return Err(FormatError::schema(&ep, format!("expected {} exponents", ring.vars)));
        }
        terms.push((c, exps));
    }
    LaurentPoly::from_terms(ring, terms).map_err(|e| FormatError::Laurent {
        field: path.to_string(),
        source: e,
    })
}

pub fn laurent_to_json(p: &LaurentPoly) -> Value {
    let r = p.ring();
    json!({
        "inverted": r.inverted,
        "terms": laurent_terms_to_json(p),
        "v": VERSION,
        "vars": r.vars,
    })
}

pub fn laurent_from_json(v: &Value, path: &str) -> Result<LaurentPoly, FormatError> {
    let obj = Object::open(v, path, &["inverted", "terms", "vars"])?;
    let (vars, vp) = obj.get("vars")?;
    let (inv, ip) = obj.get("inverted")?;
    let vars = as_usize(vars, &vp)?;
    let inverted = as_usize(inv, &ip)?;
    if inverted > vars {
        return Err(FormatError::schema(&ip, "more inverted variables than variables"));
    }
    let (terms, tp) = obj.get("terms")?;
    laurent_terms_from_json(terms, LaurentRing { vars, inverted }, &tp)
}

/// Parses the canonical text form `c * x1^a x3^b + …`. Also accepted:
/// omitted `*`, omitted coefficient (`-x1`), omitted exponent (`x1`).
pub fn parse_laurent(text: &str, ring: LaurentRing) -> Result<LaurentPoly, FormatError> {
    let field = "/";
    let bad = |msg: String| FormatError::schema(field, msg);
    let text = text.trim();
    if text == "0" {
        return Ok(LaurentPoly::zero(ring));
    }
    let mut terms = Vec::new();
    for raw in text.split('+') {
        let term = raw.trim();
        if term.is_empty() {
            return Err(bad(format!("empty term in {text:?}")));
        }
        let mut tokens: Vec<&str> = term
            .split(|c: char| c == '*' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let mut coeff = BigInt::from(1);
        if let Some(first) = tokens.first() {
            if let Some(rest) = first.strip_prefix('-').filter(|r| r.starts_with('x')) {
                coeff = BigInt::from(-1);
                tokens[0] = rest;
            } else if !first.starts_with('x') {
                coeff = first.parse().map_err(|_| bad(format!("bad coefficient {first:?}")))?;
                tokens.remove(0);
            }
        }
        let mut exps = vec![0i64; ring.vars];
        for tok in tokens {
            let body = tok
                .strip_prefix('x')
                .ok_or_else(|| bad(format!("expected a variable, found {tok:?}")))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e.parse::<i64>().map_err(|_| bad(format!("bad exponent in {tok:?}")))?),
                None => (body, 1),
            };
            let idx: usize = idx.parse().map_err(|_| bad(format!("bad variable {tok:?}")))?;
            if idx == 0 || idx > ring.vars {
                return Err(bad(format!("variable {tok:?} outside x1..x{}", ring.vars)));
            }
            exps[idx - 1] += exp;
        }
        terms.push((coeff, exps));
    }
    LaurentPoly::from_terms(ring, terms).map_err(|e| FormatError::Laurent {
        field: field.into(),
        source: e,
    })
}

// ---- seeds ----

pub fn seed_to_json(s: &Seed) -> Value {
    json!({
        "quiver": quiver_to_json(s.quiver()),
        "v": VERSION,
        "vars": s.vars().iter().map(laurent_terms_to_json).collect::<Vec<_>>(),
    })
}

pub fn seed_from_json(v: &Value, path: &str) -> Result<Seed, FormatError> {
    let obj = Object::open(v, path, &["quiver", "vars"])?;
    let (q, qp) = obj.get("quiver")?;
    let quiver = quiver_from_json(q, &qp)?;
    let ring = LaurentRing::principal(quiver.n());
    let (vars, vp) = obj.get("vars")?;
    let vars = as_array(vars, &vp)?
        .iter()
        .enumerate()
        .map(|(i, x)| laurent_terms_from_json(x, ring, &child(&vp, i)))
        .collect::<Result<Vec<_>, _>>()?;
    Seed::new(quiver, vars).map_err(|e| FormatError::Seed {
        field: path.to_string(),
        source: e,
    })
}

// ---- exchange graphs and green-sequence reports ----

pub fn graph_to_json(g: &OrientedExchangeGraph) -> Value {
    let vertices: Vec<Value> = g
        .vertices
        .iter()
        .map(|v| json!({"b": matrix_to_json(v.representative.matrix()), "key": v.key.as_str()}))
        .collect();
    let edges: Vec<Value> = g
        .edges
        .iter()
        .map(|e| json!([e.source + 1, e.target + 1, e.vertex + 1]))
        .collect();
    json!({
        "complete": g.complete,
        "edges": edges,
        "rank": g.rank,
        "v": VERSION,
        "vertices": vertices,
    })
}

pub fn graph_from_json(v: &Value, path: &str) -> Result<OrientedExchangeGraph, FormatError> {
    let obj = Object::open(v, path, &["complete", "edges", "rank", "vertices"])?;
    let (rank, rp) = obj.get("rank")?;
    let rank = as_usize(rank, &rp)?;
    let (complete, cp) = obj.get("complete")?;
    let complete = as_bool(complete, &cp)?;
    let (vs, vp) = obj.get("vertices")?;
    let mut vertices = Vec::new();
    for (i, x) in as_array(vs, &vp)?.iter().enumerate() {
        let xp = child(&vp, i);
        let vo = Object::open(x, &xp, &["b", "key"])?;
        let (b, bp) = vo.get("b")?;
        let (key, kp) = vo.get("key")?;
        let b = matrix_from_json(b, 2 * rank, rank, &bp)?;
        let representative = ExtMatrix::new(rank, rank, b).map_err(|e| FormatError::Quiver {
            field: bp.clone(),
            source: e,
        })?;
        vertices.push(ExchangeVertex {
            key: CanonicalKey::from_bytes(as_str(key, &kp)?.as_bytes().to_vec()),
            representative,
        });
    }
    let (es, ep) = obj.get("edges")?;
    let mut edges = Vec::new();
    for (i, x) in as_array(es, &ep)?.iter().enumerate() {
        let xp = child(&ep, i);
        let triple = as_array(x, &xp)?;
        if triple.len() != 3 {
            return Err(FormatError::schema(&xp, "expected [source,target,vertex]"));
        }
        edges.push(ExchangeEdge {
            source: as_index(&triple[0], vertices.len(), &child(&xp, 0))?,
            target: as_index(&triple[1], vertices.len(), &child(&xp, 1))?,
            vertex: as_index(&triple[2], rank, &child(&xp, 2))?,
        });
    }
    Ok(OrientedExchangeGraph {
        rank,
        vertices,
        edges,
        complete,
    })
}

pub fn green_report_to_json(r: &GreenSequenceReport) -> Value {
    let seqs: Vec<Vec<usize>> = r
        .sequences
        .iter()
        .map(|s| s.iter().map(|k| k + 1).collect())
        .collect();
    json!({
        "exhausted": r.exhausted,
        "frontier_remaining": r.frontier_remaining,
        "sequences": seqs,
        "v": VERSION,
    })
}

pub fn green_report_from_json(v: &Value, path: &str) -> Result<GreenSequenceReport, FormatError> {
    let obj = Object::open(v, path, &["exhausted", "frontier_remaining", "sequences"])?;
    let (ex, exp) = obj.get("exhausted")?;
    let (fr, frp) = obj.get("frontier_remaining")?;
    let (seqs, sp) = obj.get("sequences")?;
    let mut sequences = Vec::new();
    for (i, s) in as_array(seqs, &sp)?.iter().enumerate() {
        let p = child(&sp, i);
        sequences.push(
            as_array(s, &p)?
                .iter()
                .enumerate()
                .map(|(j, k)| as_index(k, usize::MAX, &child(&p, j)))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(GreenSequenceReport {
        sequences,
        exhausted: as_bool(ex, &exp)?,
        frontier_remaining: as_usize(fr, &frp)?,
    })
}

// ---- c-/g-matrix trajectories ----

pub fn trajectory_to_json(steps: &[TrajectoryStep]) -> Value {
    let steps: Vec<Value> = steps
        .iter()
        .map(|s| {
            json!({
                "c": matrix_to_json(&s.c.0),
                "g": matrix_to_json(&s.g.0),
                "quiver": quiver_to_json(&s.quiver),
                "vertex": s.vertex.map(|k| k + 1),
            })
        })
        .collect();
    json!({"steps": steps, "v": VERSION})
}

// ---- potentials and Ginzburg quivers ----

fn arrow_to_json(a: &Arrow) -> Value {
    json!({"degree": a.degree, "name": a.name, "source": a.source + 1, "target": a.target + 1})
}

fn arrows_from_json(v: &Value, vertices: usize, path: &str, extra: &[&str]) -> Result<Vec<(Arrow, Map<String, Value>)>, FormatError> {
    let mut keys = vec!["degree", "name", "source", "target"];
    keys.extend_from_slice(extra);
    let mut out = Vec::new();
    for (i, x) in as_array(v, path)?.iter().enumerate() {
        let xp = child(path, i);
        let obj = Object::open(x, &xp, &keys)?;
        let (name, np) = obj.get("name")?;
        let (s, sp) = obj.get("source")?;
        let (t, tp) = obj.get("target")?;
        let degree = match obj.optional("degree") {
            Some((d, dp)) => as_i64(d, &dp)?,
            None => 0,
        };
        if degree > 0 {
            return Err(FormatError::schema(&child(&xp, "degree"), "degrees must be non-positive"));
        }
        out.push((
            Arrow {
                name: as_str(name, &np)?.to_string(),
                source: as_index(s, vertices, &sp)?,
                target: as_index(t, vertices, &tp)?,
                degree,
            },
            obj.map.clone(),
        ));
    }
    Ok(out)
}

fn potential_err(field: &str) -> impl Fn(PotentialError) -> FormatError + '_ {
    move |e| FormatError::Potential {
        field: field.to_string(),
        source: e,
    }
}

pub fn potential_to_json(q: &PathQuiver, w: &PathExpr) -> Value {
    json!({
        "arrows": q.arrows().iter().map(arrow_to_json).collect::<Vec<_>>(),
        "potential": w.to_string(),
        "v": VERSION,
        "vertices": q.vertices(),
    })
}

/// `{"arrows":[{name,source,target}],"potential":"…","vertices":k}`.
pub fn potential_from_json(v: &Value, path: &str) -> Result<(PathQuiver, PathExpr), FormatError> {
    let obj = Object::open(v, path, &["arrows", "potential", "vertices"])?;
    let (nv, nvp) = obj.get("vertices")?;
    let vertices = as_usize(nv, &nvp)?;
    let (arr, ap) = obj.get("arrows")?;
    let arrows = arrows_from_json(arr, vertices, &ap, &[])?
        .into_iter()
        .map(|(a, _)| a)
        .collect();
    let q = PathQuiver::new(vertices, arrows).map_err(potential_err(&ap))?;
    let w = match obj.optional("potential") {
        Some((w, wp)) => PathExpr::parse(as_str(w, &wp)?, &q).map_err(potential_err(&wp))?,
        None => PathExpr::zero(),
    };
    Ok((q, w))
}

pub fn ginzburg_to_json(g: &GinzburgQuiver) -> Value {
    let arrows: Vec<Value> = g
        .quiver
        .arrows()
        .iter()
        .zip(&g.differential)
        .map(|(a, d)| {
            let mut v = arrow_to_json(a);
            v.as_object_mut()
                .expect("object")
                .insert("d".into(), Value::String(d.to_string()));
            v
        })
        .collect();
    json!({"arrows": arrows, "v": VERSION, "vertices": g.quiver.vertices()})
}

pub fn ginzburg_from_json(v: &Value, path: &str) -> Result<GinzburgQuiver, FormatError> {
    let obj = Object::open(v, path, &["arrows", "vertices"])?;
    let (nv, nvp) = obj.get("vertices")?;
    let vertices = as_usize(nv, &nvp)?;
    let (arr, ap) = obj.get("arrows")?;
    let parsed = arrows_from_json(arr, vertices, &ap, &["d"])?;
    let quiver = PathQuiver::new(vertices, parsed.iter().map(|(a, _)| a.clone()).collect())
        .map_err(potential_err(&ap))?;
    let mut differential = Vec::with_capacity(parsed.len());
    for (i, (_, raw)) in parsed.iter().enumerate() {
        let dp = child(&child(&ap, i), "d");
        let d = match raw.get("d") {
            Some(d) => PathExpr::parse(as_str(d, &dp)?, &quiver).map_err(potential_err(&dp))?,
            None => PathExpr::zero(),
        };
        differential.push(d);
    }
    Ok(GinzburgQuiver { quiver, differential })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::{explore, ExploreLimits};
    use crate::potential::ginzburg;

    fn a2() -> ExtMatrix {
        ExtMatrix::from_rows_i64(2, 0, &[&[0, 1], &[-1, 0]]).unwrap()
    }

    #[test]
    fn parses_framed_a2() {
        let q = parse_quiver(r#"{"n":2,"m":2,"b":[[0,1],[-1,0],[1,0],[0,1]]}"#).unwrap();
        assert_eq!(q, a2().framed().unwrap());
        assert_eq!(serialize_quiver(&q), r#"{"b":[[0,1],[-1,0],[1,0],[0,1]],"m":2,"n":2,"v":1}"#);
    }

    #[test]
    fn rejects_non_skew_top_block() {
        let err = parse_quiver(r#"{"n":2,"m":0,"b":[[0,1],[1,0]]}"#).unwrap_err();
        match err {
            FormatError::Quiver { field, source } => {
                assert!(field.starts_with("/b/"), "{field}");
                assert!(matches!(source, QuiverError::NotSkewSymmetric { .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn diagnostics_name_line_and_field() {
        match parse_quiver("{\n\"n\":2,\n\"b\":[[0,1],[-1,0]\n}") {
            Err(FormatError::Syntax { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        let e = parse_quiver(r#"{"n":2,"b":[[0,1],[-1,0.5]]}"#).unwrap_err();
        assert_eq!(e.to_string(), "/b/1/1: expected an integer, found a float");
        let e = parse_quiver(r#"{"n":2,"b":[[0,1]]}"#).unwrap_err();
        assert!(e.to_string().starts_with("/b: expected 2 rows"));
        let e = parse_quiver(r#"{"n":1,"b":[[0]],"extra":1}"#).unwrap_err();
        assert_eq!(e.to_string(), "/extra: unknown field");
        let e = parse_quiver(r#"{"n":1,"b":[[0]],"v":2}"#).unwrap_err();
        assert!(e.to_string().starts_with("/v: unsupported version"));
    }

    #[test]
    fn big_entries_are_strings() {
        let big = "123456789012345678901234567890";
        let text = format!(r#"{{"b":[[0,"{big}"],["-{big}",0]],"m":0,"n":2,"v":1}}"#);
        let q = parse_quiver(&text).unwrap();
        assert_eq!(serialize_quiver(&q), text);
    }

    #[test]
    fn laurent_text_round_trip() {
        let ring = LaurentRing::principal(2);
        let p = parse_laurent("1 * x2^1 x3^1 + -2 * x1^-1 + 5", ring).unwrap();
        assert_eq!(parse_laurent(&p.to_string(), ring).unwrap(), p);
        assert!(parse_laurent("x2 x3 - 0", ring).is_err());
        assert_eq!(parse_laurent("0", ring).unwrap(), LaurentPoly::zero(ring));
        assert!(parse_laurent("x3^-1", ring).is_err());
        assert_eq!(parse_laurent("-x1*x2^2", ring).unwrap().to_string(), "-1 * x1^1 x2^2");
    }

    #[test]
    fn laurent_json_round_trip() {
        let ring = LaurentRing::principal(2);
        let p = parse_laurent("x2 + x3 + x1 x3 x4", ring).unwrap();
        let v = laurent_to_json(&p);
        assert_eq!(
            to_canonical_string(&v),
            r#"{"inverted":2,"terms":[[1,[0,0,1,0]],[1,[0,1,0,0]],[1,[1,0,1,1]]],"v":1,"vars":4}"#
        );
        assert_eq!(laurent_from_json(&v, "/").unwrap(), p);
    }

    #[test]
    fn seed_round_trip() {
        let s = Seed::initial(&a2()).unwrap().mutate_sequence(&[0, 1]).unwrap();
        let text = to_canonical_string(&seed_to_json(&s));
        assert_eq!(seed_from_json(&parse_json(&text).unwrap(), "/").unwrap(), s);
    }

    #[test]
    fn graph_and_report_round_trip() {
        let g = explore(&a2(), ExploreLimits::default()).unwrap();
        let v = graph_to_json(&g);
        let back = graph_from_json(&parse_json(&to_canonical_string(&v)).unwrap(), "/").unwrap();
        assert_eq!(back, g);
        let r = GreenSequenceReport {
            sequences: vec![vec![0, 1, 0], vec![1, 0]],
            exhausted: true,
            frontier_remaining: 0,
        };
        let v = green_report_to_json(&r);
        assert_eq!(
            to_canonical_string(&v),
            r#"{"exhausted":true,"frontier_remaining":0,"sequences":[[1,2,1],[2,1]],"v":1}"#
        );
        assert_eq!(green_report_from_json(&v, "/").unwrap(), r);
    }

    #[test]
    fn potential_and_ginzburg_round_trip() {
        let text = r#"{"arrows":[{"name":"a","source":1,"target":2},{"name":"b","source":2,"target":3},{"name":"c","source":3,"target":1}],"potential":"c.b.a","vertices":3}"#;
        let (q, w) = potential_from_json(&parse_json(text).unwrap(), "/").unwrap();
        assert_eq!(w.to_string(), "+1*c.b.a");
        let again = potential_from_json(&potential_to_json(&q, &w), "/").unwrap();
        assert_eq!(again, (q.clone(), w.clone()));
        let g = ginzburg(&q, &w).unwrap();
        let v = ginzburg_to_json(&g);
        assert_eq!(ginzburg_from_json(&v, "/").unwrap(), g);
        assert!(to_canonical_string(&v).contains(r#"{"d":"+1*c.b","degree":-1,"name":"a*","source":2,"target":1}"#));
    }
}
