//! The `tjson` network format, result documents and chart export.
//!
//! A network document looks like
//!
//! ```json
//! {
//!   "time": {"min": 1, "max": 10},
//!   "interval": "half-open",
//!   "nodes": [{"id": 1, "label": "a"}, {"id": 2, "label": "b", "activity": [[1, "inf", 1]]}],
//!   "links": [{"from": 1, "to": 2, "directed": true, "tq": [[1, 5, 2]]}],
//!   "meta": {"source": "example"}
//! }
//! ```
//!
//! Triples are `[start, finish, value]`; `"inf"` stands for an open-ended
//! finish or an infinite value. Output is written by a small canonical
//! emitter: keys sorted, integral reals without a fractional part and other
//! reals with six significant digits whenever that reads back exactly.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde_json::Value as J;
use thiserror::Error;

use crate::analysis::{Event, EventTable};
use crate::error::Error;
use crate::semiring::{format_number, Geodesic, Hops, SemiringKind, SemiringSpec, Value};
use crate::tmatrix::TemporalMatrix;
use crate::tq::{TemporalQuantity, Time, TimeHorizon, Triple, FOREVER};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{0}")]
    Io(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Schema(String),

    #[error("{0}")]
    Consistency(String),

    #[error("{0}")]
    IntervalType(String),

    #[error("{context}: {source}")]
    Quantity { context: String, source: Error },

    #[error(transparent)]
    Core(#[from] Error),
}

impl IoError {
    pub fn category(&self) -> &'static str {
        match self {
            IoError::Io(_) => "io",
            IoError::Parse { .. } => "parse",
            IoError::Schema(_) => "schema",
            IoError::Consistency(_) => "consistency",
            IoError::IntervalType(_) => "interval-type",
            IoError::Quantity { source, .. } => source.category(),
            IoError::Core(e) => e.category(),
        }
    }
}

impl From<std::io::Error> for IoError {
    fn from(e: std::io::Error) -> Self {
        IoError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub type IoResult<T> = std::result::Result<T, IoError>;

fn schema<T>(msg: impl Into<String>) -> IoResult<T> {
    Err(IoError::Schema(msg.into()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    /// Identifier as written in the document.
    pub id: i64,
    pub label: String,
    /// Binary activity set; `None` means active over the whole horizon.
    pub activity: Option<TemporalQuantity>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Link {
    /// 0-based node index.
    pub from: usize,
    /// 0-based node index.
    pub to: usize,
    pub directed: bool,
    pub tq: TemporalQuantity,
}

/// A loaded network. Nodes are kept sorted by id, so node `i` (0-based) of
/// every matrix and result is `nodes[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkDocument {
    pub horizon: TimeHorizon,
    pub nodes: Vec<Node>,
    pub links: Vec<Link>,
    pub events: Vec<Event>,
    pub meta: BTreeMap<String, String>,
}

/// A loaded network plus the normalisations the loader applied.
#[derive(Debug, Clone, PartialEq)]
pub struct Loaded {
    pub network: NetworkDocument,
    pub warnings: Vec<String>,
}

pub fn load_network(text: &str) -> IoResult<Loaded> {
    let root: J = serde_json::from_str(text)?;
    let root = root.as_object().ok_or_else(|| IoError::Schema("document must be an object".into()))?;
    if let Some(kind) = root.get("interval") {
        match kind.as_str() {
            Some("half-open") => {}
            _ => {
                return Err(IoError::IntervalType(format!(
                    "only half-open [s, f) intervals are supported, document declares {kind}"
                )))
            }
        }
    }
    let time = root
        .get("time")
        .and_then(J::as_object)
        .ok_or_else(|| IoError::Schema("missing object 'time'".into()))?;
    let t_min = time.get("min").and_then(J::as_i64);
    let t_max = time.get("max").and_then(J::as_i64);
    let (Some(t_min), Some(t_max)) = (t_min, t_max) else {
        return schema("'time' needs integer 'min' and 'max'");
    };
    let horizon = TimeHorizon::new(t_min, t_max)?;
    let mut warnings = Vec::new();

    let mut nodes = Vec::new();
    for (i, node) in array_field(root, "nodes", true)?.iter().enumerate() {
        let obj = node
            .as_object()
            .ok_or_else(|| IoError::Schema(format!("node #{} must be an object", i + 1)))?;
        let id = obj
            .get("id")
            .and_then(J::as_i64)
            .filter(|&id| id >= 1)
            .ok_or_else(|| IoError::Schema(format!("node #{} needs an integer id >= 1", i + 1)))?;
        let label = match obj.get("label") {
            None => id.to_string(),
            Some(J::String(s)) => s.clone(),
            Some(other) => other.to_string(),
        };
        let context = format!("node {id} activity");
        let activity = match obj.get("activity") {
            None | Some(J::Null) => None,
            Some(tq) => {
                let a = read_quantity(tq, &context, SemiringKind::Combinatorial, &mut warnings)?;
                check_in_horizon(&a, &horizon, &context)?;
                Some(a.binary(Value::Real(1.0)))
            }
        };
        nodes.push(Node { id, label, activity });
    }
    nodes.sort_by_key(|n| n.id);
    if let Some(w) = nodes.windows(2).find(|w| w[0].id == w[1].id) {
        return schema(format!("duplicate node id {}", w[0].id));
    }
    let index: HashMap<i64, usize> = nodes.iter().enumerate().map(|(i, n)| (n.id, i)).collect();
    let lookup = |v: Option<&J>, what: &str| -> IoResult<usize> {
        let id = v
            .and_then(J::as_i64)
            .ok_or_else(|| IoError::Schema(format!("{what} needs an integer node id")))?;
        index
            .get(&id)
            .copied()
            .ok_or_else(|| IoError::Schema(format!("{what} refers to unknown node {id}")))
    };

    let mut links = Vec::new();
    for (i, link) in array_field(root, "links", false)?.iter().enumerate() {
        let what = format!("link #{}", i + 1);
        let obj = link
            .as_object()
            .ok_or_else(|| IoError::Schema(format!("{what} must be an object")))?;
        let from = lookup(obj.get("from"), &what)?;
        let to = lookup(obj.get("to"), &what)?;
        let directed = match obj.get("directed") {
            None => true,
            Some(J::Bool(b)) => *b,
            Some(_) => return schema(format!("{what}: 'directed' must be a boolean")),
        };
        let name = format!(
            "link {}{}{}",
            nodes[from].id,
            if directed { "->" } else { "--" },
            nodes[to].id
        );
        let tq = obj
            .get("tq")
            .ok_or_else(|| IoError::Schema(format!("{name} has no 'tq'")))?;
        let tq = read_quantity(tq, &name, SemiringKind::Combinatorial, &mut warnings)?;
        check_in_horizon(&tq, &horizon, &name)?;
        for end in [from, to] {
            if let Some(act) = &nodes[end].activity {
                let gaps = tq.uncovered_by(act);
                if !gaps.is_empty() {
                    let spans: Vec<String> = gaps
                        .iter()
                        .map(|&(s, f)| format!("[{}, {})", s, render_time(f)))
                        .collect();
                    return Err(IoError::Consistency(format!(
                        "{name} is active outside the activity of node {} on {}",
                        nodes[end].id,
                        spans.join(", ")
                    )));
                }
            }
        }
        links.push(Link {
            from,
            to,
            directed,
            tq,
        });
    }

    let mut events = Vec::new();
    for (i, event) in array_field(root, "events", false)?.iter().enumerate() {
        let what = format!("event #{}", i + 1);
        let obj = event
            .as_object()
            .ok_or_else(|| IoError::Schema(format!("{what} must be an object")))?;
        let id = match obj.get("id") {
            Some(J::String(s)) => s.clone(),
            Some(J::Number(n)) => n.to_string(),
            _ => (i + 1).to_string(),
        };
        let date = obj
            .get("date")
            .and_then(J::as_i64)
            .ok_or_else(|| IoError::Schema(format!("{what} needs an integer 'date'")))?;
        if date < horizon.start() || date >= horizon.finish() {
            return Err(IoError::Consistency(format!(
                "event {id} dated {date} lies outside the time window"
            )));
        }
        let participants = obj
            .get("participants")
            .and_then(J::as_array)
            .ok_or_else(|| IoError::Schema(format!("{what} needs a 'participants' array")))?
            .iter()
            .map(|p| lookup(Some(p), &what))
            .collect::<IoResult<Vec<_>>>()?;
        events.push(Event {
            id,
            date,
            participants,
        });
    }

    let mut meta = BTreeMap::new();
    match root.get("meta") {
        None | Some(J::Null) => {}
        Some(J::Object(m)) => {
            for (k, v) in m {
                let v = match v {
                    J::String(s) => s.clone(),
                    other => other.to_string(),
                };
                meta.insert(k.clone(), v);
            }
        }
        Some(_) => return schema("'meta' must be an object"),
    }

    Ok(Loaded {
        network: NetworkDocument {
            horizon,
            nodes,
            links,
            events,
            meta,
        },
        warnings,
    })
}

fn array_field<'a>(
    root: &'a serde_json::Map<String, J>,
    key: &str,
    required: bool,
) -> IoResult<&'a [J]> {
    match root.get(key) {
        None if !required => Ok(&[]),
        None => schema(format!("missing array '{key}'")),
        Some(J::Array(a)) => Ok(a),
        Some(_) => schema(format!("'{key}' must be an array")),
    }
}

fn check_in_horizon(tq: &TemporalQuantity, horizon: &TimeHorizon, context: &str) -> IoResult<()> {
    for t in tq.iter() {
        if t.start < horizon.start() || (t.finish > horizon.finish() && t.finish != FOREVER) {
            return Err(IoError::Consistency(format!(
                "{context}: interval [{}, {}) lies outside the time window [{}, {})",
                t.start,
                render_time(t.finish),
                horizon.start(),
                horizon.finish()
            )));
        }
    }
    Ok(())
}

fn read_quantity(
    json: &J,
    context: &str,
    kind: SemiringKind,
    warnings: &mut Vec<String>,
) -> IoResult<TemporalQuantity> {
    let items = json
        .as_array()
        .ok_or_else(|| IoError::Schema(format!("{context}: a quantity must be an array of triples")))?;
    let mut triples = Vec::with_capacity(items.len());
    for item in items {
        let parts = match item.as_array() {
            Some(p) if p.len() == 3 => p,
            _ => return schema(format!("{context}: expected a triple [start, finish, value], got {item}")),
        };
        let start = parts[0]
            .as_i64()
            .ok_or_else(|| IoError::Schema(format!("{context}: start time must be an integer, got {}", parts[0])))?;
        let finish = match &parts[1] {
            J::String(s) if s == "inf" => FOREVER,
            other => other.as_i64().ok_or_else(|| {
                IoError::Schema(format!("{context}: finish time must be an integer or \"inf\", got {other}"))
            })?,
        };
        let value = read_value(&parts[2], kind)
            .ok_or_else(|| IoError::Schema(format!("{context}: unreadable value {}", parts[2])))?;
        triples.push(Triple::new(start, finish, value));
    }
    if triples.windows(2).any(|w| w[0].start > w[1].start) {
        triples.sort_by_key(|t| t.start);
        warnings.push(format!("{context}: triples were not sorted by start time; sorted"));
    }
    TemporalQuantity::new(triples).map_err(|source| IoError::Quantity {
        context: context.to_string(),
        source,
    })
}

fn read_real(json: &J) -> Option<f64> {
    match json {
        J::String(s) if s == "inf" => Some(f64::INFINITY),
        J::String(s) if s == "-inf" => Some(f64::NEG_INFINITY),
        other => other.as_f64(),
    }
}

fn read_value(json: &J, kind: SemiringKind) -> Option<Value> {
    match (kind, json) {
        (_, J::Bool(b)) => Some(Value::Bool(*b)),
        (SemiringKind::Geodetic, J::Array(pair)) if pair.len() == 2 => {
            let dist = match &pair[0] {
                J::String(s) if s == "inf" => Hops::Unreachable,
                other => Hops::Finite(other.as_u64()?),
            };
            Some(Value::Geo(Geodesic {
                dist,
                count: pair[1].as_u64()?,
            }))
        }
        (_, other) => read_real(other).map(Value::Real),
    }
}

impl NetworkDocument {
    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    /// Arcs `(from, to, tq)` with undirected links expanded to both
    /// directions.
    pub fn arcs(&self) -> Vec<(usize, usize, &TemporalQuantity)> {
        let mut arcs = Vec::with_capacity(self.links.len() * 2);
        for l in &self.links {
            arcs.push((l.from, l.to, &l.tq));
            if !l.directed && l.from != l.to {
                arcs.push((l.to, l.from, &l.tq));
            }
        }
        arcs
    }

    /// Network matrix over `spec`, restricted to the time window. Parallel
    /// arcs are combined with the semiring addition. Values become `true`
    /// under reachability and `(1, 1)` under the geodetic semiring; booleans
    /// count as 1/0 under the real-valued semirings.
    pub fn matrix(&self, spec: SemiringSpec) -> IoResult<TemporalMatrix> {
        let n = self.n();
        let mut m = TemporalMatrix::square(n, spec, self.horizon);
        for (u, v, tq) in self.arcs() {
            let context = format!("link {}->{}", self.nodes[u].id, self.nodes[v].id);
            let wrap = |source| IoError::Quantity {
                context: context.clone(),
                source,
            };
            let converted = self
                .horizon
                .clip(tq)
                .map_values(|x| Ok(convert_value(*x, &spec)))
                .map_err(wrap)?;
            let converted = crate::tq::standardize_in(&spec, converted.into_triples()).map_err(wrap)?;
            let combined = m.get(u, v).sum(&spec, &converted).map_err(wrap)?;
            m.set(u, v, combined).map_err(wrap)?;
        }
        Ok(m)
    }

    /// The events as a co-occurrence table over the nodes, with dates in
    /// `[min, max - 1]`.
    pub fn event_table(&self) -> IoResult<EventTable> {
        Ok(EventTable::new(
            self.events.clone(),
            self.n(),
            self.horizon.start(),
            self.horizon.finish() - 1,
        )?)
    }

    /// Serializes back to canonical tjson.
    pub fn to_tjson(&self) -> String {
        let kind = SemiringKind::Combinatorial;
        let nodes = self
            .nodes
            .iter()
            .map(|n| {
                let mut o = BTreeMap::new();
                o.insert("id".into(), Json::int(n.id));
                o.insert("label".into(), Json::Str(n.label.clone()));
                if let Some(a) = &n.activity {
                    o.insert("activity".into(), quantity_json(a, kind));
                }
                Json::Obj(o)
            })
            .collect();
        let links = self
            .links
            .iter()
            .map(|l| {
                let mut o = BTreeMap::new();
                o.insert("from".into(), Json::int(self.nodes[l.from].id));
                o.insert("to".into(), Json::int(self.nodes[l.to].id));
                o.insert("directed".into(), Json::Bool(l.directed));
                o.insert("tq".into(), quantity_json(&l.tq, kind));
                Json::Obj(o)
            })
            .collect();
        let mut root = BTreeMap::new();
        root.insert("time".into(), horizon_json(&self.horizon));
        root.insert("interval".into(), Json::Str("half-open".into()));
        root.insert("nodes".into(), Json::Arr(nodes));
        root.insert("links".into(), Json::Arr(links));
        if !self.events.is_empty() {
            let events = self
                .events
                .iter()
                .map(|e| {
                    let mut o = BTreeMap::new();
                    o.insert("id".into(), Json::Str(e.id.clone()));
                    o.insert("date".into(), Json::int(e.date));
                    o.insert(
                        "participants".into(),
                        Json::Arr(e.participants.iter().map(|&p| Json::int(self.nodes[p].id)).collect()),
                    );
                    Json::Obj(o)
                })
                .collect();
            root.insert("events".into(), Json::Arr(events));
        }
        root.insert(
            "meta".into(),
            Json::Obj(self.meta.iter().map(|(k, v)| (k.clone(), Json::Str(v.clone()))).collect()),
        );
        Json::Obj(root).render()
    }
}

fn convert_value(x: Value, spec: &SemiringSpec) -> Value {
    match spec.kind() {
        SemiringKind::Reachability => Value::Bool(x != Value::Bool(false)),
        SemiringKind::Geodetic => match x {
            Value::Bool(false) => spec.zero(),
            _ => Value::Geo(Geodesic::new(1, 1)),
        },
        _ => match x {
            Value::Bool(true) => Value::Real(1.0),
            Value::Bool(false) => spec.zero(),
            other => other,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultKind {
    Vector,
    Partition,
    Matrix,
    Quantity,
    Skeleton,
}

impl ResultKind {
    pub fn name(self) -> &'static str {
        match self {
            ResultKind::Vector => "vector",
            ResultKind::Partition => "partition",
            ResultKind::Matrix => "matrix",
            ResultKind::Quantity => "quantity",
            ResultKind::Skeleton => "skeleton",
        }
    }
}

/// Non-empty entries of a matrix result, keyed by node ids.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPayload {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(i64, i64, TemporalQuantity)>,
}

impl MatrixPayload {
    /// Collects the non-empty entries of `m`; `ids` maps indices to node ids.
    pub fn from_matrix(m: &TemporalMatrix, ids: &[i64]) -> Self {
        MatrixPayload {
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .iter()
                .filter(|(_, _, a)| !a.is_empty())
                .map(|(u, v, a)| (ids[u], ids[v], a.clone()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Vector(Vec<(i64, TemporalQuantity)>),
    Partition(Vec<(i64, TemporalQuantity)>),
    Matrix(MatrixPayload),
    Quantity(TemporalQuantity),
    Skeleton(MatrixPayload),
}

impl Payload {
    pub fn kind(&self) -> ResultKind {
        match self {
            Payload::Vector(_) => ResultKind::Vector,
            Payload::Partition(_) => ResultKind::Partition,
            Payload::Matrix(_) => ResultKind::Matrix,
            Payload::Quantity(_) => ResultKind::Quantity,
            Payload::Skeleton(_) => ResultKind::Skeleton,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Provenance {
    pub command: String,
    /// Hex SHA-256 of the input document.
    pub input_sha256: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultDocument {
    pub semiring: SemiringSpec,
    pub horizon: TimeHorizon,
    pub payload: Payload,
    pub provenance: Provenance,
    /// Named scalar summaries such as aggregated values.
    pub aggregates: BTreeMap<String, f64>,
}

impl ResultDocument {
    pub fn kind(&self) -> ResultKind {
        self.payload.kind()
    }

    /// Canonical serialization (sorted keys, fixed layout, trailing newline).
    pub fn to_json(&self) -> String {
        let kind = self.semiring.kind();
        let node_list = |v: &[(i64, TemporalQuantity)]| {
            Json::Arr(
                v.iter()
                    .map(|(id, a)| {
                        let mut o = BTreeMap::new();
                        o.insert("node".into(), Json::int(*id));
                        o.insert("tq".into(), quantity_json(a, kind));
                        Json::Obj(o)
                    })
                    .collect(),
            )
        };
        let matrix = |m: &MatrixPayload| {
            let entries = m
                .entries
                .iter()
                .map(|(u, v, a)| {
                    let mut o = BTreeMap::new();
                    o.insert("from".into(), Json::int(*u));
                    o.insert("to".into(), Json::int(*v));
                    o.insert("tq".into(), quantity_json(a, kind));
                    Json::Obj(o)
                })
                .collect();
            let mut o = BTreeMap::new();
            o.insert("rows".into(), Json::int(m.rows as i64));
            o.insert("cols".into(), Json::int(m.cols as i64));
            o.insert("entries".into(), Json::Arr(entries));
            Json::Obj(o)
        };
        let payload = match &self.payload {
            Payload::Vector(v) | Payload::Partition(v) => node_list(v),
            Payload::Matrix(m) | Payload::Skeleton(m) => matrix(m),
            Payload::Quantity(a) => quantity_json(a, kind),
        };
        let mut semiring = BTreeMap::new();
        semiring.insert("kind".into(), Json::Str(kind.name().into()));
        if kind == SemiringKind::Pathfinder {
            semiring.insert("r".into(), real_json(self.semiring.r()));
            semiring.insert(
                "q".into(),
                match self.semiring.q() {
                    Some(q) => Json::int(q as i64),
                    None => Json::Str("inf".into()),
                },
            );
        }
        let p = &self.provenance;
        let mut provenance = BTreeMap::new();
        provenance.insert("command".into(), Json::Str(p.command.clone()));
        provenance.insert("input_sha256".into(), Json::Str(p.input_sha256.clone()));
        provenance.insert(
            "parameters".into(),
            Json::Obj(p.parameters.iter().map(|(k, v)| (k.clone(), Json::Str(v.clone()))).collect()),
        );
        provenance.insert(
            "seed".into(),
            match p.seed {
                Some(s) => Json::Num(s.to_string()),
                None => Json::Null,
            },
        );
        let mut root = BTreeMap::new();
        root.insert("kind".into(), Json::Str(self.kind().name().into()));
        root.insert("semiring".into(), Json::Obj(semiring));
        root.insert("horizon".into(), horizon_json(&self.horizon));
        root.insert("payload".into(), payload);
        root.insert("provenance".into(), Json::Obj(provenance));
        if !self.aggregates.is_empty() {
            root.insert(
                "aggregates".into(),
                Json::Obj(self.aggregates.iter().map(|(k, &v)| (k.clone(), real_json(v))).collect()),
            );
        }
        Json::Obj(root).render()
    }

    /// Reads a document written by [`ResultDocument::to_json`].
    pub fn parse(text: &str) -> IoResult<Self> {
        let root: J = serde_json::from_str(text)?;
        let obj = root
            .as_object()
            .ok_or_else(|| IoError::Schema("result must be an object".into()))?;
        let get = |k: &str| obj.get(k).ok_or_else(|| IoError::Schema(format!("result has no '{k}'")));

        let sem = get("semiring")?;
        let kind: SemiringKind = sem
            .get("kind")
            .and_then(J::as_str)
            .ok_or_else(|| IoError::Schema("semiring needs a 'kind'".into()))?
            .parse()?;
        let semiring = if kind == SemiringKind::Pathfinder {
            let r = sem.get("r").and_then(read_real).unwrap_or(1.0);
            let q = match sem.get("q") {
                Some(J::String(s)) if s == "inf" => None,
                Some(q) => Some(q.as_u64().ok_or_else(|| IoError::Schema("bad pathfinder q".into()))?),
                None => None,
            };
            SemiringSpec::pathfinder(r, q)?
        } else {
            SemiringSpec::new(kind)
        };

        let h = get("horizon")?;
        let (Some(min), Some(max)) = (h.get("min").and_then(J::as_i64), h.get("max").and_then(J::as_i64)) else {
            return schema("horizon needs integer 'min' and 'max'");
        };
        let horizon = TimeHorizon::new(min, max)?;

        let mut no_warnings = Vec::new();
        let mut quantity = |j: &J| read_quantity(j, "payload", kind, &mut no_warnings);
        let payload_json = get("payload")?;
        let node_list = |j: &J, quantity: &mut dyn FnMut(&J) -> IoResult<TemporalQuantity>| -> IoResult<Vec<(i64, TemporalQuantity)>> {
            j.as_array()
                .ok_or_else(|| IoError::Schema("payload must be an array".into()))?
                .iter()
                .map(|e| {
                    let id = e
                        .get("node")
                        .and_then(J::as_i64)
                        .ok_or_else(|| IoError::Schema("payload entry needs 'node'".into()))?;
                    let tq = e.get("tq").ok_or_else(|| IoError::Schema("payload entry needs 'tq'".into()))?;
                    Ok((id, quantity(tq)?))
                })
                .collect()
        };
        let matrix = |j: &J, quantity: &mut dyn FnMut(&J) -> IoResult<TemporalQuantity>| -> IoResult<MatrixPayload> {
            let dim = |k: &str| {
                j.get(k)
                    .and_then(J::as_u64)
                    .map(|x| x as usize)
                    .ok_or_else(|| IoError::Schema(format!("matrix payload needs '{k}'")))
            };
            let entries = j
                .get("entries")
                .and_then(J::as_array)
                .ok_or_else(|| IoError::Schema("matrix payload needs 'entries'".into()))?
                .iter()
                .map(|e| {
                    let end = |k: &str| {
                        e.get(k)
                            .and_then(J::as_i64)
                            .ok_or_else(|| IoError::Schema(format!("matrix entry needs '{k}'")))
                    };
                    let tq = e.get("tq").ok_or_else(|| IoError::Schema("matrix entry needs 'tq'".into()))?;
                    Ok((end("from")?, end("to")?, quantity(tq)?))
                })
                .collect::<IoResult<Vec<_>>>()?;
            Ok(MatrixPayload {
                rows: dim("rows")?,
                cols: dim("cols")?,
                entries,
            })
        };
        let payload = match get("kind")?.as_str() {
            Some("vector") => Payload::Vector(node_list(payload_json, &mut quantity)?),
            Some("partition") => Payload::Partition(node_list(payload_json, &mut quantity)?),
            Some("matrix") => Payload::Matrix(matrix(payload_json, &mut quantity)?),
            Some("skeleton") => Payload::Skeleton(matrix(payload_json, &mut quantity)?),
            Some("quantity") => Payload::Quantity(quantity(payload_json)?),
            _ => return schema("unknown result kind"),
        };

        let p = get("provenance")?;
        let text = |k: &str| p.get(k).and_then(J::as_str).unwrap_or_default().to_string();
        let parameters = p
            .get("parameters")
            .and_then(J::as_object)
            .map(|m| {
                m.iter()
                    .map(|(k, v)| (k.clone(), v.as_str().map_or_else(|| v.to_string(), str::to_string)))
                    .collect()
            })
            .unwrap_or_default();
        let provenance = Provenance {
            command: text("command"),
            input_sha256: text("input_sha256"),
            parameters,
            seed: p.get("seed").and_then(J::as_u64),
        };
        let aggregates = match obj.get("aggregates") {
            None => BTreeMap::new(),
            Some(J::Object(m)) => m
                .iter()
                .map(|(k, v)| {
                    read_real(v)
                        .map(|x| (k.clone(), x))
                        .ok_or_else(|| IoError::Schema(format!("aggregate '{k}' is not a number")))
                })
                .collect::<IoResult<_>>()?,
            Some(_) => return schema("'aggregates' must be an object"),
        };
        Ok(ResultDocument {
            semiring,
            horizon,
            payload,
            provenance,
            aggregates,
        })
    }
}

/// Step-function rows `node,start,finish,value`, one per triple; gaps
/// produce no row.
pub fn export_chart_data(rows: &[(i64, TemporalQuantity)]) -> String {
    let mut out = String::from("node,start,finish,value\n");
    for (id, a) in rows {
        for t in a.iter() {
            let value = match t.value {
                Value::Real(x) => render_real(x),
                Value::Geo(g) => format!("{}:{}", g.dist, g.count),
                Value::Bool(b) => b.to_string(),
            };
            let _ = writeln!(out, "{id},{},{},{value}", t.start, render_time(t.finish));
        }
    }
    out
}

fn render_time(t: Time) -> String {
    if t == FOREVER {
        "inf".into()
    } else {
        t.to_string()
    }
}

/// Renders a finite real: integral values exactly, others with six
/// significant digits when that reads back to the same number, and in
/// shortest round-trip form otherwise.
pub fn render_real(x: f64) -> String {
    if !x.is_finite() {
        return format_number(x);
    }
    if x.fract() == 0.0 && x.abs() < 9.0e15 {
        return format!("{}", x as i64);
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (5 - exponent).max(0) as usize;
    let six = format!("{x:.decimals$}");
    if six.parse::<f64>() == Ok(x) {
        six
    } else {
        format!("{x}")
    }
}

/// Minimal JSON tree for the canonical emitter; numbers are pre-rendered.
#[derive(Debug, Clone)]
enum Json {
    Null,
    Bool(bool),
    Num(String),
    Str(String),
    Arr(Vec<Json>),
    Obj(BTreeMap<String, Json>),
}

impl Json {
    fn int(x: i64) -> Self {
        Json::Num(x.to_string())
    }

    fn is_obj(&self) -> bool {
        matches!(self, Json::Obj(_))
    }

    /// Written on one line: scalars and containers holding no objects below
    /// their own level.
    fn inline(&self) -> bool {
        match self {
            Json::Arr(xs) => xs.iter().all(|x| !x.is_obj() && x.inline()),
            Json::Obj(m) => m.values().all(|x| !x.is_obj() && x.inline()),
            _ => true,
        }
    }

    fn render(&self) -> String {
        let mut out = String::new();
        self.write(0, &mut out);
        out.push('\n');
        out
    }

    fn write(&self, indent: usize, out: &mut String) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Num(s) => out.push_str(s),
            Json::Str(s) => out.push_str(&serde_json::to_string(s).expect("strings serialize")),
            Json::Arr(xs) if xs.is_empty() => out.push_str("[]"),
            Json::Obj(m) if m.is_empty() => out.push_str("{}"),
            Json::Arr(xs) if self.inline() => {
                out.push('[');
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    x.write(indent, out);
                }
                out.push(']');
            }
            Json::Obj(m) if self.inline() => {
                out.push('{');
                for (i, (k, v)) in m.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    Json::Str(k.clone()).write(indent, out);
                    out.push_str(": ");
                    v.write(indent, out);
                }
                out.push('}');
            }
            Json::Arr(xs) => {
                out.push_str("[\n");
                for (i, x) in xs.iter().enumerate() {
                    pad(indent + 1, out);
                    x.write(indent + 1, out);
                    out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
                }
                pad(indent, out);
                out.push(']');
            }
            Json::Obj(m) => {
                out.push_str("{\n");
                for (i, (k, v)) in m.iter().enumerate() {
                    pad(indent + 1, out);
                    Json::Str(k.clone()).write(indent + 1, out);
                    out.push_str(": ");
                    v.write(indent + 1, out);
                    out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
                }
                pad(indent, out);
                out.push('}');
            }
        }
    }
}

fn pad(indent: usize, out: &mut String) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

fn real_json(x: f64) -> Json {
    if x.is_finite() {
        Json::Num(render_real(x))
    } else {
        Json::Str(format_number(x))
    }
}

fn value_json(v: &Value) -> Json {
    match *v {
        Value::Real(x) => real_json(x),
        Value::Bool(b) => Json::Bool(b),
        Value::Geo(g) => Json::Arr(vec![
            match g.dist {
                Hops::Finite(d) => Json::Num(d.to_string()),
                Hops::Unreachable => Json::Str("inf".into()),
            },
            Json::Num(g.count.to_string()),
        ]),
    }
}

fn quantity_json(a: &TemporalQuantity, _kind: SemiringKind) -> Json {
    Json::Arr(
        a.iter()
            .map(|t| {
                let finish = if t.finish == FOREVER {
                    Json::Str("inf".into())
                } else {
                    Json::int(t.finish)
                };
                Json::Arr(vec![Json::int(t.start), finish, value_json(&t.value)])
            })
            .collect(),
    )
}

fn horizon_json(h: &TimeHorizon) -> Json {
    let mut o = BTreeMap::new();
    o.insert("min".into(), Json::int(h.start()));
    o.insert("max".into(), Json::int(h.finish()));
    Json::Obj(o)
}
