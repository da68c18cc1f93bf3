//! Scenario files: a graph, powers and optional chain, path and matrix in
//! one JSON document.
//!
//! ```json
//! {
//!   "n": 2,
//!   "friends": [],
//!   "adversaries": [[1, 2]],
//!   "powers": [1, 1],
//!   "matrix": [[0, 1], [1, 0]]
//! }
//! ```
//!
//! Optional keys: `chain` (list of `{friends, adversaries}`), `rule`
//! (`"rule1"` or `"rule1.1"`), `path` (`{rule?, matrices}` with one dense
//! matrix per chain layer), `matrix` and `meta` (free-form). A
//! `certificates` key written by the CLI is ignored on load.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::allocation::{PowerVector, StrategyMatrix};
use crate::dynamics::{AllocationPath, DecisionRule};
use crate::graph::{GraphChain, Pair, SignedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IssueKind {
    /// Not JSON at all.
    Parse,
    /// JSON of the wrong shape.
    Schema,
    /// Well-shaped but inconsistent content.
    Semantic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioIssue {
    pub kind: IssueKind,
    /// JSON pointer to the offending value (`""` for the document).
    pub pointer: String,
    pub message: String,
}

impl fmt::Display for ScenarioIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = if self.pointer.is_empty() {
            "/"
        } else {
            &self.pointer
        };
        write!(f, "{:?} error at {at}: {}", self.kind, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub graph: SignedGraph,
    pub powers: PowerVector,
    pub chain: Option<GraphChain>,
    pub rule: Option<DecisionRule>,
    pub path: Option<AllocationPath>,
    pub matrix: Option<StrategyMatrix>,
    pub meta: Option<Value>,
}

impl Scenario {
    pub fn new(graph: SignedGraph, powers: PowerVector) -> Self {
        Scenario {
            graph,
            powers,
            chain: None,
            rule: None,
            path: None,
            matrix: None,
            meta: None,
        }
    }

    pub fn with_matrix(mut self, u: StrategyMatrix) -> Self {
        self.matrix = Some(u);
        self
    }

    /// Stores a path together with its chain and rule.
    pub fn with_path(mut self, path: AllocationPath) -> Self {
        self.chain = Some(path.chain().clone());
        self.rule = Some(path.rule());
        self.path = Some(path);
        self
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("n".into(), json!(self.n()));
        let (f, a) = graph_lists(&self.graph);
        obj.insert("friends".into(), f);
        obj.insert("adversaries".into(), a);
        obj.insert("powers".into(), json!(self.powers.as_slice()));
        if let Some(chain) = &self.chain {
            let layers: Vec<Value> = chain
                .graphs()
                .iter()
                .map(|g| {
                    let (f, a) = graph_lists(g);
                    json!({ "friends": f, "adversaries": a })
                })
                .collect();
            obj.insert("chain".into(), Value::Array(layers));
        }
        if let Some(rule) = self.rule {
            obj.insert("rule".into(), json!(rule.as_str()));
        }
        if let Some(path) = &self.path {
            let mats: Vec<Value> = path.matrices().iter().map(|u| json!(u.rows())).collect();
            obj.insert(
                "path".into(),
                json!({ "rule": path.rule().as_str(), "matrices": mats }),
            );
        }
        if let Some(u) = &self.matrix {
            obj.insert("matrix".into(), json!(u.rows()));
        }
        if let Some(meta) = &self.meta {
            obj.insert("meta".into(), meta.clone());
        }
        Value::Object(obj)
    }

    /// Indented JSON with scalar arrays (pairs, powers, matrix rows) kept
    /// on one line.
    pub fn to_json_string(&self) -> String {
        let mut out = String::new();
        write_compact(&self.to_json(), 0, &mut out);
        out.push('\n');
        out
    }
}

fn write_compact(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(&serde_json::to_string(v).expect("plain JSON values"));
        }
        Value::Array(items)
            if items.iter().all(|x| {
                x.as_array()
                    .is_some_and(|a| a.iter().all(|y| !y.is_array() && !y.is_object()))
            }) && items.len() <= 16 =>
        {
            let inner: Vec<String> = items
                .iter()
                .map(|x| serde_json::to_string(x).expect("plain JSON values"))
                .collect();
            let line = format!("[{}]", inner.join(", "));
            if line.len() <= 100 {
                out.push_str(&line);
            } else {
                out.push_str("[\n");
                for (k, x) in inner.iter().enumerate() {
                    out.push_str(&pad(depth + 1));
                    out.push_str(x);
                    out.push_str(if k + 1 < inner.len() { ",\n" } else { "\n" });
                }
                out.push_str(&pad(depth));
                out.push(']');
            }
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_compact(x, depth + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(key).expect("string key"));
                out.push_str(": ");
                write_compact(x, depth + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("plain JSON values")),
    }
}

fn graph_lists(g: &SignedGraph) -> (Value, Value) {
    let list = |s: &std::collections::BTreeSet<Pair>| -> Value {
        s.iter().map(|p| json!([p.lo(), p.hi()])).collect()
    };
    (list(g.friend_pairs()), list(g.adversary_pairs()))
}

struct Reader {
    issues: Vec<ScenarioIssue>,
}

impl Reader {
    fn push(&mut self, kind: IssueKind, pointer: &str, message: impl Into<String>) {
        self.issues.push(ScenarioIssue {
            kind,
            pointer: pointer.to_string(),
            message: message.into(),
        });
    }

    fn schema(&mut self, pointer: &str, message: impl Into<String>) {
        self.push(IssueKind::Schema, pointer, message);
    }

    fn semantic(&mut self, pointer: &str, message: impl Into<String>) {
        self.push(IssueKind::Semantic, pointer, message);
    }

    fn array<'v>(&mut self, v: &'v Value, pointer: &str) -> Option<&'v Vec<Value>> {
        let a = v.as_array();
        if a.is_none() {
            self.schema(pointer, "expected an array");
        }
        a
    }

    fn number(&mut self, v: &Value, pointer: &str) -> Option<f64> {
        match v.as_f64() {
            Some(x) if x.is_finite() => Some(x),
            _ => {
                self.schema(pointer, "expected a number");
                None
            }
        }
    }

    fn pairs(&mut self, v: &Value, pointer: &str) -> Option<Vec<(usize, usize)>> {
        let items = self.array(v, pointer)?;
        let mut out = Vec::with_capacity(items.len());
        let mut ok = true;
        for (k, item) in items.iter().enumerate() {
            let ptr = format!("{pointer}/{k}");
            match item.as_array().map(|a| a.as_slice()) {
                Some([a, b]) => match (a.as_u64(), b.as_u64()) {
                    (Some(a), Some(b)) => out.push((a as usize, b as usize)),
                    _ => {
                        self.schema(&ptr, "pair labels must be positive integers");
                        ok = false;
                    }
                },
                _ => {
                    self.schema(&ptr, "expected a pair [i, j]");
                    ok = false;
                }
            }
        }
        ok.then_some(out)
    }

    fn graph(
        &mut self,
        n: usize,
        friends: &Value,
        adversaries: &Value,
        pointer: &str,
    ) -> Option<SignedGraph> {
        let f = self.pairs(friends, &format!("{pointer}/friends"));
        let a = self.pairs(adversaries, &format!("{pointer}/adversaries"));
        let (f, a) = (f?, a?);
        match SignedGraph::new(n, f, a) {
            Ok(g) => Some(g),
            Err(e) => {
                self.semantic(pointer, e.to_string());
                None
            }
        }
    }

    fn dense(&mut self, v: &Value, n: usize, pointer: &str) -> Option<Vec<Vec<f64>>> {
        let rows = self.array(v, pointer)?;
        if rows.len() != n {
            self.semantic(pointer, format!("expected {n} rows, found {}", rows.len()));
            return None;
        }
        let mut out = Vec::with_capacity(n);
        let mut ok = true;
        for (r, row) in rows.iter().enumerate() {
            let ptr = format!("{pointer}/{r}");
            let Some(cells) = self.array(row, &ptr) else {
                ok = false;
                continue;
            };
            if cells.len() != n {
                self.semantic(&ptr, format!("expected {n} entries, found {}", cells.len()));
                ok = false;
                continue;
            }
            let mut vals = Vec::with_capacity(n);
            for (c, cell) in cells.iter().enumerate() {
                match self.number(cell, &format!("{ptr}/{c}")) {
                    Some(x) => vals.push(x),
                    None => ok = false,
                }
            }
            out.push(vals);
        }
        ok.then_some(out)
    }

    fn matrix(
        &mut self,
        v: &Value,
        g: &SignedGraph,
        p: &PowerVector,
        pointer: &str,
    ) -> Option<StrategyMatrix> {
        let rows = self.dense(v, g.n(), pointer)?;
        let u = StrategyMatrix::from_rows_unchecked(g.clone(), p.clone(), rows).ok()?;
        let violations = u.validate();
        for violation in &violations {
            let ptr = match violation.column {
                Some(c) => format!("{pointer}/{}/{}", violation.row - 1, c - 1),
                None => format!("{pointer}/{}", violation.row - 1),
            };
            self.semantic(&ptr, violation.to_string());
        }
        violations.is_empty().then_some(u)
    }

    fn rule(&mut self, v: &Value, pointer: &str) -> Option<DecisionRule> {
        let r = v.as_str().and_then(DecisionRule::parse);
        if r.is_none() {
            self.schema(pointer, "expected \"rule1\" or \"rule1.1\"");
        }
        r
    }
}

const KNOWN_KEYS: [&str; 10] = [
    "n",
    "friends",
    "adversaries",
    "powers",
    "chain",
    "rule",
    "path",
    "matrix",
    "meta",
    "certificates",
];

/// Parses and validates a scenario, or lists every problem found.
pub fn load_scenario(bytes: &[u8]) -> Result<Scenario, Vec<ScenarioIssue>> {
    let mut rd = Reader { issues: Vec::new() };
    let doc: Value = match serde_json::from_slice(bytes) {
        Ok(v) => v,
        Err(e) => {
            rd.push(IssueKind::Parse, "", e.to_string());
            return Err(rd.issues);
        }
    };
    let Some(obj) = doc.as_object() else {
        rd.schema("", "expected an object");
        return Err(rd.issues);
    };
    for key in obj.keys() {
        if !KNOWN_KEYS.contains(&key.as_str()) {
            rd.schema(&format!("/{key}"), "unknown key");
        }
    }
    for key in ["n", "friends", "adversaries", "powers"] {
        if !obj.contains_key(key) {
            rd.schema("", format!("missing required key \"{key}\""));
        }
    }
    if !rd.issues.is_empty() {
        return Err(rd.issues);
    }

    let n = match obj["n"].as_u64() {
        Some(n) if n >= 1 => n as usize,
        _ => {
            rd.schema("/n", "expected a positive integer");
            return Err(rd.issues);
        }
    };
    let graph = rd.graph(n, &obj["friends"], &obj["adversaries"], "");
    let powers = rd.array(&obj["powers"], "/powers").and_then(|items| {
        let vals: Vec<Option<f64>> = items
            .iter()
            .enumerate()
            .map(|(k, v)| rd.number(v, &format!("/powers/{k}")))
            .collect();
        let vals: Option<Vec<f64>> = vals.into_iter().collect();
        let vals = vals?;
        if vals.len() != n {
            rd.semantic(
                "/powers",
                format!("expected {n} powers, found {}", vals.len()),
            );
            return None;
        }
        match PowerVector::new(vals) {
            Ok(p) => Some(p),
            Err(e) => {
                rd.semantic("/powers", e.to_string());
                None
            }
        }
    });

    let rule = obj.get("rule").and_then(|v| rd.rule(v, "/rule"));
    let chain = obj.get("chain").and_then(|v| {
        let layers = rd.array(v, "/chain")?;
        if layers.is_empty() {
            rd.semantic("/chain", "chain has no layers");
            return None;
        }
        let mut graphs = Vec::with_capacity(layers.len());
        for (t, layer) in layers.iter().enumerate() {
            let ptr = format!("/chain/{t}");
            let (Some(f), Some(a)) = (layer.get("friends"), layer.get("adversaries")) else {
                rd.schema(&ptr, "expected {\"friends\", \"adversaries\"}");
                continue;
            };
            if let Some(g) = rd.graph(n, f, a, &ptr) {
                graphs.push(g);
            }
        }
        if graphs.len() != layers.len() {
            return None;
        }
        match GraphChain::infer(graphs) {
            Ok(c) => Some(c),
            Err(e) => {
                rd.semantic("/chain", e.to_string());
                None
            }
        }
    });
    let meta = obj.get("meta").cloned();

    let (Some(graph), Some(powers)) = (graph, powers) else {
        return Err(rd.issues);
    };
    let matrix = obj
        .get("matrix")
        .and_then(|v| rd.matrix(v, &graph, &powers, "/matrix"));

    let path = match (obj.get("path"), &chain) {
        (None, _) => None,
        (Some(_), None) => {
            if !obj.contains_key("chain") {
                rd.semantic("/path", "a path needs a chain");
            }
            None
        }
        (Some(pv), Some(chain)) => {
            let path_rule = match pv.get("rule") {
                Some(r) => rd.rule(r, "/path/rule"),
                None => Some(rule.unwrap_or(DecisionRule::Rule1_1)),
            };
            match pv.get("matrices") {
                None => {
                    rd.schema("/path", "missing \"matrices\"");
                    None
                }
                Some(mv) => rd.array(mv, "/path/matrices").and_then(|mats| {
                    if mats.len() != chain.len() {
                        rd.semantic(
                            "/path/matrices",
                            format!("expected {} matrices, found {}", chain.len(), mats.len()),
                        );
                        return None;
                    }
                    let built: Vec<Option<StrategyMatrix>> = mats
                        .iter()
                        .zip(chain.graphs())
                        .enumerate()
                        .map(|(t, (m, g))| rd.matrix(m, g, &powers, &format!("/path/matrices/{t}")))
                        .collect();
                    let built: Option<Vec<StrategyMatrix>> = built.into_iter().collect();
                    Some(AllocationPath::unchecked(chain.clone(), built?, path_rule?))
                }),
            }
        }
    };

    if !rd.issues.is_empty() {
        return Err(rd.issues);
    }
    Ok(Scenario {
        graph,
        powers,
        chain,
        rule,
        path,
        matrix,
        meta,
    })
}
