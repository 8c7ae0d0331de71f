//! A session is an initial quiver plus a history of mutated vertices. All
//! derived state is recomputed from those two on load.

use greenseq_core::formats::{matrix_to_json, quiver_from_json, quiver_to_json};
use greenseq_core::tropical::{mutate_c, mutate_g};
use greenseq_core::{CMatrix, ExtMatrix, GMatrix, IntMatrix, Seed};
use serde_json::{json, Value};

use crate::error::ApiError;

/// Cluster variables are tracked only up to this rank...
pub const SYMBOLIC_MAX_RANK: usize = 6;
/// ...and this many mutations.
pub const SYMBOLIC_MAX_HISTORY: usize = 24;
/// Tracking also stops once a variable grows past this many terms.
pub const SYMBOLIC_MAX_TERMS: usize = 2_000;

#[derive(Debug, Clone)]
struct Snapshot {
    quiver: ExtMatrix,
    c: CMatrix,
    g: GMatrix,
    /// The seed, or why it is not computed.
    seed: Result<Seed, String>,
}

#[derive(Debug, Clone)]
pub struct Session {
    id: String,
    initial: ExtMatrix,
    b0: IntMatrix,
    history: Vec<usize>,
    /// `snapshots[t]` is the state after the first `t` mutations.
    snapshots: Vec<Snapshot>,
}

impl Session {
    pub fn new(id: String, initial: ExtMatrix) -> Result<Self, ApiError> {
        if initial.m() != 0 {
            return Err(ApiError::BadRequest(format!(
                "/quiver: expected a quiver without frozen vertices, found m = {}",
                initial.m()
            )));
        }
        let n = initial.n();
        if n == 0 {
            return Err(ApiError::BadRequest("/quiver: quiver has no vertices".into()));
        }
        let seed = if n > SYMBOLIC_MAX_RANK {
            Err(format!("symbolic cap: rank {n} exceeds {SYMBOLIC_MAX_RANK}"))
        } else {
            Ok(Seed::initial(&initial).map_err(|e| ApiError::Internal(e.to_string()))?)
        };
        let first = Snapshot {
            quiver: initial.framed().map_err(|e| ApiError::Internal(e.to_string()))?,
            c: CMatrix::identity(n),
            g: GMatrix::identity(n),
            seed,
        };
        Ok(Session {
            id,
            b0: initial.top_block(),
            initial,
            history: Vec::new(),
            snapshots: vec![first],
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn rank(&self) -> usize {
        self.initial.n()
    }

    pub fn history(&self) -> &[usize] {
        &self.history
    }

    fn current(&self) -> &Snapshot {
        self.snapshots.last().expect("at least the initial snapshot")
    }

    /// Applies μ_k (0-based). Red vertices may be mutated too.
    pub fn mutate(&mut self, k: usize) -> Result<(), ApiError> {
        let n = self.rank();
        if k >= n {
            return Err(ApiError::BadRequest(format!("/k: vertex {} outside 1..={n}", k + 1)));
        }
        let last = self.current();
        let internal = |e: &dyn std::fmt::Display| ApiError::Internal(e.to_string());
        let quiver = last.quiver.mutate(k).map_err(|e| internal(&e))?;
        let c = mutate_c(&last.c, &last.quiver, k).map_err(|e| internal(&e))?;
        let g = mutate_g(&last.g, &last.quiver, &self.b0, k).map_err(|e| internal(&e))?;
        let steps = self.history.len() + 1;
        let seed = match &last.seed {
            Err(reason) => Err(reason.clone()),
            Ok(_) if steps > SYMBOLIC_MAX_HISTORY => Err(format!(
                "symbolic cap: history length {steps} exceeds {SYMBOLIC_MAX_HISTORY}"
            )),
            Ok(s) => {
                let next = s.mutate(k).map_err(|e| internal(&e))?;
                if next.vars().iter().any(|v| v.len() > SYMBOLIC_MAX_TERMS) {
                    Err(format!("symbolic cap: a cluster variable exceeds {SYMBOLIC_MAX_TERMS} terms"))
                } else {
                    Ok(next)
                }
            }
        };
        self.snapshots.push(Snapshot { quiver, c, g, seed });
        self.history.push(k);
        Ok(())
    }

    pub fn undo(&mut self) -> Result<(), ApiError> {
        if self.history.pop().is_none() {
            return Err(ApiError::BadRequest("history is empty".into()));
        }
        self.snapshots.pop();
        Ok(())
    }

    pub fn state_json(&self) -> Value {
        let cur = self.current();
        let mut state = json!({
            "all_red": cur.quiver.all_red(),
            "c_matrix": matrix_to_json(&cur.c.0),
            "colors": cur.quiver.colors().iter().map(|c| c.as_str()).collect::<Vec<_>>(),
            "g_matrix": matrix_to_json(&cur.g.0),
            "history": self.history.iter().map(|k| k + 1).collect::<Vec<_>>(),
            "id": self.id,
            "quiver": quiver_to_json(&cur.quiver),
            "v": 1,
        });
        let obj = state.as_object_mut().expect("object");
        match &cur.seed {
            Ok(seed) => {
                let vars: Vec<String> = seed.vars().iter().map(|v| v.render_fraction()).collect();
                obj.insert("variables".into(), json!(vars));
            }
            Err(reason) => {
                obj.insert("variables_omitted".into(), json!(reason));
            }
        }
        state
    }

    /// What is persisted: the initial quiver and the history, nothing else.
    pub fn to_file_json(&self) -> Value {
        json!({
            "history": self.history.iter().map(|k| k + 1).collect::<Vec<_>>(),
            "initial": quiver_to_json(&self.initial),
            "v": 1,
        })
    }

    pub fn from_file_json(id: String, v: &Value) -> Result<Self, ApiError> {
        let bad = |msg: &str| ApiError::BadRequest(format!("session {id}: {msg}"));
        let initial = v
            .get("initial")
            .ok_or_else(|| bad("missing initial quiver"))?;
        let initial = quiver_from_json(initial, "/initial").map_err(|e| bad(&e.to_string()))?;
        let history = v
            .get("history")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing history"))?;
        let mut s = Session::new(id.clone(), initial)?;
        for k in history {
            let k = k
                .as_u64()
                .filter(|&k| k >= 1)
                .ok_or_else(|| bad("history entries are 1-based vertices"))?;
            s.mutate(k as usize - 1)?;
        }
        Ok(s)
    }
}
