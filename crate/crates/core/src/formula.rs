//! Boolean formulas in alternating (t-normalized) form and the
//! bounded-weight satisfiability oracle used to validate the encoders.
//!
//! The oracle is deliberately brute force: it enumerates assignments by
//! increasing weight, lexicographic within a weight, and stops at the
//! first satisfying one, so witnesses are deterministic. A hard atom-count
//! cap keeps it honest as a desk-scale reference.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::atomset::AtomSet;
use crate::combinatorics::{binomial, unrank_combination};
use crate::error::Error;
use crate::exec::{first_match, Strategy};

/// Set of formula atoms assigned true; weight is the set size.
pub type Assignment = AtomSet;

/// Default cap on the number of distinct atoms [`ws_exists`] will search
/// over.
pub const WS_DEFAULT_VAR_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    And(Vec<Node>),
    Or(Vec<Node>),
    Lit { var: u32, negated: bool },
    Const(bool),
}

/// Formula-local atom interner; ids are first-occurrence ordered.
#[derive(Debug, Default, Clone)]
pub struct VarPool {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl VarPool {
    pub fn intern(&mut self, name: &str) -> u32 {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len() as u32;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn lookup(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: u32) -> &str {
        &self.names[id as usize]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// A boolean formula over an interned atom pool.
#[derive(Clone, Debug)]
pub struct Formula {
    pool: VarPool,
    root: Node,
}

impl Formula {
    pub fn new(pool: VarPool, root: Node) -> Self {
        Formula { pool, root }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn var_count(&self) -> usize {
        self.pool.len()
    }

    pub fn var_name(&self, id: u32) -> &str {
        self.pool.name(id)
    }

    pub fn var_id(&self, name: &str) -> Option<u32> {
        self.pool.lookup(name)
    }

    /// Standard boolean semantics; an empty conjunction is true, an empty
    /// disjunction is false.
    pub fn evaluate(&self, a: &Assignment) -> bool {
        eval_node(&self.root, a)
    }

    /// The `t` for which the formula is a t-normalized
    /// product-of-sums-of-... of literals.
    ///
    /// Requires strict connective alternation (no conjunction directly
    /// under a conjunction and dually); bare literals may appear at any
    /// level as degenerate products or sums. A CNF returns 2.
    pub fn normalization_depth(&self) -> Result<u32, Error> {
        match &self.root {
            Node::And(_) => depth(&self.root, None),
            _ => Err(Error::NotNormalized(
                "top level must be a conjunction".into(),
            )),
        }
    }

    /// Constant-folded equivalent: `true`/`false` nodes absorbed into
    /// their parent connective, single-child connectives collapsed.
    pub fn simplified(&self) -> Formula {
        Formula {
            pool: self.pool.clone(),
            root: simplify(&self.root),
        }
    }

    /// Names of the true atoms in `a`, sorted.
    pub fn sorted_assignment_names(&self, a: &Assignment) -> Vec<String> {
        let mut v: Vec<String> = a.iter().map(|i| self.pool.name(i).to_string()).collect();
        v.sort();
        v
    }

    pub fn to_json_value(&self) -> Value {
        node_to_json(&self.root, &self.pool)
    }

    pub fn to_json_string(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_str(s: &str) -> Result<Formula, Error> {
        let v: Value =
            serde_json::from_str(s).map_err(|e| Error::FormulaJson(e.to_string()))?;
        let mut pool = VarPool::default();
        let root = node_from_json(&v, &mut pool)?;
        Ok(Formula { pool, root })
    }
}

fn eval_node(n: &Node, a: &Assignment) -> bool {
    match n {
        Node::And(cs) => cs.iter().all(|c| eval_node(c, a)),
        Node::Or(cs) => cs.iter().any(|c| eval_node(c, a)),
        Node::Lit { var, negated } => a.contains(*var) != *negated,
        Node::Const(b) => *b,
    }
}

#[derive(PartialEq, Clone, Copy)]
enum Conn {
    And,
    Or,
}

fn depth(n: &Node, under: Option<Conn>) -> Result<u32, Error> {
    match n {
        Node::Lit { .. } => Ok(0),
        Node::Const(_) => Err(Error::NotNormalized(
            "constant where a literal is required".into(),
        )),
        Node::And(cs) => {
            if under == Some(Conn::And) {
                return Err(Error::NotNormalized(
                    "conjunction directly under a conjunction".into(),
                ));
            }
            let mut d = 0;
            for c in cs {
                d = d.max(depth(c, Some(Conn::And))?);
            }
            Ok(d + 1)
        }
        Node::Or(cs) => {
            if under == Some(Conn::Or) {
                return Err(Error::NotNormalized(
                    "disjunction directly under a disjunction".into(),
                ));
            }
            let mut d = 0;
            for c in cs {
                d = d.max(depth(c, Some(Conn::Or))?);
            }
            Ok(d + 1)
        }
    }
}

fn simplify(n: &Node) -> Node {
    match n {
        Node::Lit { .. } | Node::Const(_) => n.clone(),
        Node::And(cs) => {
            let mut out = Vec::new();
            for c in cs {
                match simplify(c) {
                    Node::Const(true) => {}
                    Node::Const(false) => return Node::Const(false),
                    other => out.push(other),
                }
            }
            match out.len() {
                0 => Node::Const(true),
                1 => out.pop().expect("len checked"),
                _ => Node::And(out),
            }
        }
        Node::Or(cs) => {
            let mut out = Vec::new();
            for c in cs {
                match simplify(c) {
                    Node::Const(false) => {}
                    Node::Const(true) => return Node::Const(true),
                    other => out.push(other),
                }
            }
            match out.len() {
                0 => Node::Const(false),
                1 => out.pop().expect("len checked"),
                _ => Node::Or(out),
            }
        }
    }
}

fn node_to_json(n: &Node, pool: &VarPool) -> Value {
    match n {
        Node::And(cs) => json!({
            "op": "and",
            "args": cs.iter().map(|c| node_to_json(c, pool)).collect::<Vec<_>>(),
        }),
        Node::Or(cs) => json!({
            "op": "or",
            "args": cs.iter().map(|c| node_to_json(c, pool)).collect::<Vec<_>>(),
        }),
        Node::Lit { var, negated } => json!({ "lit": pool.name(*var), "neg": negated }),
        Node::Const(b) => json!({ "const": b }),
    }
}

fn node_from_json(v: &Value, pool: &mut VarPool) -> Result<Node, Error> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::FormulaJson(format!("expected object, got {v}")))?;
    if let Some(op) = obj.get("op") {
        let args = obj
            .get("args")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::FormulaJson("`op` node needs an `args` array".into()))?;
        let children = args
            .iter()
            .map(|a| node_from_json(a, pool))
            .collect::<Result<Vec<_>, _>>()?;
        match op.as_str() {
            Some("and") => Ok(Node::And(children)),
            Some("or") => Ok(Node::Or(children)),
            other => Err(Error::FormulaJson(format!("unknown op {other:?}"))),
        }
    } else if let Some(lit) = obj.get("lit") {
        let name = lit
            .as_str()
            .ok_or_else(|| Error::FormulaJson("`lit` must be a string".into()))?;
        let negated = match obj.get("neg") {
            None => false,
            Some(Value::Bool(b)) => *b,
            Some(other) => {
                return Err(Error::FormulaJson(format!("`neg` must be a bool, got {other}")))
            }
        };
        Ok(Node::Lit {
            var: pool.intern(name),
            negated,
        })
    } else if let Some(c) = obj.get("const") {
        let b = c
            .as_bool()
            .ok_or_else(|| Error::FormulaJson("`const` must be a bool".into()))?;
        Ok(Node::Const(b))
    } else {
        Err(Error::FormulaJson(format!("unrecognized node {v}")))
    }
}

/// Search mode for [`ws_exists`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WsMode {
    /// A model with exactly `k` true atoms.
    Exact,
    /// A model with at most `k` true atoms.
    AtMost,
}

/// Finds a satisfying assignment of weight `k` (exact) or `<= k`
/// (at-most), or `None`. Enumeration is by increasing weight, then
/// lexicographic, so the returned witness is deterministic.
pub fn ws_exists(f: &Formula, k: u32, mode: WsMode) -> Result<Option<Assignment>, Error> {
    ws_exists_with(f, k, mode, WS_DEFAULT_VAR_CAP, Strategy::Auto)
}

pub fn ws_exists_with(
    f: &Formula,
    k: u32,
    mode: WsMode,
    var_cap: usize,
    strategy: Strategy,
) -> Result<Option<Assignment>, Error> {
    let nvars = f.var_count();
    if nvars > var_cap {
        return Err(Error::CapExceeded {
            what: "weighted-sat oracle atom count",
            limit: var_cap as u64,
            actual: nvars as u64,
        });
    }
    let weights: Vec<usize> = match mode {
        WsMode::Exact => {
            if k as usize > nvars {
                return Ok(None);
            }
            vec![k as usize]
        }
        WsMode::AtMost => (0..=(k as usize).min(nvars)).collect(),
    };
    for w in weights {
        let count = binomial(nvars as u64, w as u64).expect("capped var count");
        let hit = first_match(count, strategy, |rank| {
            let mut idx = Vec::with_capacity(w);
            unrank_combination(nvars, w, rank, &mut idx);
            let a = AtomSet::from_indices(nvars, idx.iter().map(|&i| i as u32));
            f.evaluate(&a)
        });
        if let Some(rank) = hit {
            let mut idx = Vec::with_capacity(w);
            unrank_combination(nvars, w, rank, &mut idx);
            return Ok(Some(AtomSet::from_indices(
                nvars,
                idx.iter().map(|&i| i as u32),
            )));
        }
    }
    Ok(None)
}
