//! JSON trace files.
//!
//! Every file is an object with `"version": 1` and a `"kind"` of `event`,
//! `state` or `poset`; the remaining fields depend on the kind and unknown
//! fields are rejected. Output is canonical: sorted keys, sorted element
//! lists, cover pairs only, so equal models serialize byte-identically.

use std::collections::{BTreeMap, HashMap};

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::event::{EventModel, EventModelOptions, Slot};
use crate::poset::{ChainPartition, Poset};
use crate::state::StateModel;

pub const VERSION: u64 = 1;

/// Failure to load a trace.
#[derive(Debug, thiserror::Error)]
pub enum TraceError {
    /// Not JSON, or JSON of the wrong shape.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed, but not a valid model.
    #[error(transparent)]
    Model(#[from] Error),
}

#[derive(Debug, Clone)]
pub enum Trace {
    Event(EventModel),
    State(StateModel),
    Poset {
        poset: Poset,
        chains: Option<ChainPartition>,
    },
}

impl Trace {
    pub fn kind(&self) -> &'static str {
        match self {
            Trace::Event(_) => "event",
            Trace::State(_) => "state",
            Trace::Poset { .. } => "poset",
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    pub allow_empty_process: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EventPayload {
    n: usize,
    events: Vec<EventEntry>,
    #[serde(default)]
    edges: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EventEntry {
    id: String,
    slots: Vec<Slot>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AttrValue {
    Number(f64),
    Bool(bool),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StatePayload {
    elements: Vec<String>,
    #[serde(default)]
    relations: Vec<(String, String)>,
    chains: Vec<Vec<String>>,
    #[serde(default)]
    attrs: BTreeMap<String, BTreeMap<String, AttrValue>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetPayload {
    elements: Vec<String>,
    #[serde(default)]
    relations: Vec<(String, String)>,
    chains: Option<Vec<Vec<String>>>,
}

fn parse_err(e: impl std::fmt::Display) -> TraceError {
    TraceError::Parse(e.to_string())
}

/// Parses a trace of any kind.
pub fn parse_trace(text: &str, options: LoadOptions) -> Result<Trace, TraceError> {
    let mut value: Value = serde_json::from_str(text).map_err(parse_err)?;
    let obj = value
        .as_object_mut()
        .ok_or_else(|| parse_err("top level must be an object"))?;
    match obj.remove("version") {
        Some(Value::Number(v)) if v.as_u64() == Some(VERSION) => {}
        Some(other) => return Err(parse_err(format!("unsupported version {other}"))),
        None => return Err(parse_err("missing field `version`")),
    }
    let kind = match obj.remove("kind") {
        Some(Value::String(k)) => k,
        Some(other) => return Err(parse_err(format!("`kind` must be a string, got {other}"))),
        None => return Err(parse_err("missing field `kind`")),
    };
    match kind.as_str() {
        "event" => {
            let p: EventPayload = serde_json::from_value(value).map_err(parse_err)?;
            Ok(Trace::Event(event_model(p, options)?))
        }
        "state" => {
            let p: StatePayload = serde_json::from_value(value).map_err(parse_err)?;
            Ok(Trace::State(state_model(p)?))
        }
        "poset" => {
            let p: PosetPayload = serde_json::from_value(value).map_err(parse_err)?;
            let poset = Poset::new(p.elements, p.relations)?;
            let chains = p
                .chains
                .map(|c| ChainPartition::from_ids(&poset, &c))
                .transpose()?;
            Ok(Trace::Poset { poset, chains })
        }
        other => Err(parse_err(format!(
            "unknown kind `{other}`, expected event, state or poset"
        ))),
    }
}

fn event_model(p: EventPayload, options: LoadOptions) -> Result<EventModel, Error> {
    let mut ids = Vec::with_capacity(p.events.len());
    let mut labels = HashMap::with_capacity(p.events.len());
    // Events grouped by process, then by index.
    let mut by_slot: BTreeMap<usize, BTreeMap<usize, Vec<String>>> = BTreeMap::new();
    for e in p.events {
        for s in &e.slots {
            by_slot
                .entry(s.proc)
                .or_default()
                .entry(s.idx)
                .or_default()
                .push(e.id.clone());
        }
        ids.push(e.id.clone());
        if labels.insert(e.id.clone(), e.slots).is_some() {
            return Err(Error::DuplicateElement(e.id));
        }
    }
    let mut relation = p.edges;
    for groups in by_slot.values() {
        let groups: Vec<&Vec<String>> = groups.values().collect();
        for w in groups.windows(2) {
            for a in w[0] {
                for b in w[1] {
                    relation.push((a.clone(), b.clone()));
                }
            }
        }
    }
    let poset = Poset::new(ids, relation)?;
    let options = EventModelOptions {
        allow_empty_process: options.allow_empty_process,
    };
    EventModel::new(poset, p.n, &labels, options)
}

fn state_model(p: StatePayload) -> Result<StateModel, Error> {
    let poset = Poset::new(p.elements, p.relations)?;
    let attrs = p
        .attrs
        .into_iter()
        .map(|(id, values)| {
            let values = values
                .into_iter()
                .map(|(k, v)| {
                    let v = match v {
                        AttrValue::Number(x) => x,
                        AttrValue::Bool(b) => f64::from(u8::from(b)),
                    };
                    (k, v)
                })
                .collect();
            (id, values)
        })
        .collect();
    StateModel::from_ids(poset, &p.chains)?.with_attrs(attrs)
}

fn sorted_covers(p: &Poset, keep: impl Fn(usize, usize) -> bool) -> Vec<Value> {
    let mut pairs: Vec<(&str, &str)> = p
        .covers()
        .iter()
        .filter(|&&(a, b)| keep(a, b))
        .map(|&(a, b)| (p.id(a), p.id(b)))
        .collect();
    pairs.sort();
    pairs.into_iter().map(|(a, b)| json!([a, b])).collect()
}

fn sorted_ids(p: &Poset) -> Vec<String> {
    let mut ids = p.ids().to_vec();
    ids.sort();
    ids
}

fn header(kind: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("version".into(), json!(VERSION));
    m.insert("kind".into(), json!(kind));
    m
}

/// Canonical JSON for an event model. Edges between consecutive events of
/// one process are left implicit.
pub fn event_to_value(m: &EventModel) -> Value {
    let p = m.poset();
    let consecutive = |a: usize, b: usize| {
        m.slots(a)
            .iter()
            .any(|s| m.slots(b).contains(&Slot::new(s.proc, s.idx + 1)))
    };
    let labels = m.labels_by_id();
    let events: Vec<Value> = labels
        .iter()
        .map(|(id, slots)| json!({ "id": id, "slots": slots }))
        .collect();
    let mut out = header("event");
    out.insert("n".into(), json!(m.n()));
    out.insert("events".into(), Value::Array(events));
    out.insert("edges".into(), Value::Array(sorted_covers(p, |a, b| !consecutive(a, b))));
    Value::Object(out)
}

/// Canonical JSON for a state model.
pub fn state_to_value(sm: &StateModel) -> Value {
    let p = sm.poset();
    let mut out = header("state");
    out.insert("elements".into(), json!(sorted_ids(p)));
    out.insert("relations".into(), Value::Array(sorted_covers(p, |_, _| true)));
    out.insert("chains".into(), json!(sm.chains().names(p)));
    let attrs = sm.attrs_by_id();
    if !attrs.is_empty() {
        out.insert("attrs".into(), json!(attrs));
    }
    Value::Object(out)
}

/// Canonical JSON for a bare poset, with chains if given.
pub fn poset_to_value(p: &Poset, chains: Option<&ChainPartition>) -> Value {
    let mut out = header("poset");
    out.insert("elements".into(), json!(sorted_ids(p)));
    out.insert("relations".into(), Value::Array(sorted_covers(p, |_, _| true)));
    if let Some(cp) = chains {
        out.insert("chains".into(), json!(cp.names(p)));
    }
    Value::Object(out)
}

pub fn trace_to_value(t: &Trace) -> Value {
    match t {
        Trace::Event(m) => event_to_value(m),
        Trace::State(sm) => state_to_value(sm),
        Trace::Poset { poset, chains } => poset_to_value(poset, chains.as_ref()),
    }
}

/// Pretty-printed canonical text with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE_MESSAGE: &str = r#"{
        "version": 1, "kind": "event", "n": 2,
        "events": [
            {"id": "a", "slots": [{"proc": 1, "idx": 1}]},
            {"id": "b", "slots": [{"proc": 1, "idx": 2}]},
            {"id": "c", "slots": [{"proc": 1, "idx": 3}]},
            {"id": "e", "slots": [{"proc": 2, "idx": 1}]},
            {"id": "f", "slots": [{"proc": 2, "idx": 2}]},
            {"id": "g", "slots": [{"proc": 2, "idx": 3}]}
        ],
        "edges": [["b", "f"]]
    }"#;

    fn load(text: &str) -> Result<Trace, TraceError> {
        parse_trace(text, LoadOptions::default())
    }

    #[test]
    fn event_trace_round_trip() {
        let t = load(ONE_MESSAGE).unwrap();
        let Trace::Event(m) = &t else { panic!("event kind") };
        assert_eq!(m.poset().len(), 6);
        let a = m.poset().require("a").unwrap();
        let g = m.poset().require("g").unwrap();
        assert!(m.poset().less(a, g));
        let text = to_canonical_string(&trace_to_value(&t));
        assert_eq!(to_canonical_string(&trace_to_value(&load(&text).unwrap())), text);
        let v = trace_to_value(&t);
        assert_eq!(v["edges"], json!([["b", "f"]]));
    }

    #[test]
    fn rejects_bad_headers_and_fields() {
        assert!(matches!(load("{"), Err(TraceError::Parse(_))));
        assert!(matches!(load("[]"), Err(TraceError::Parse(_))));
        assert!(matches!(
            load(r#"{"kind":"poset","elements":[]}"#),
            Err(TraceError::Parse(_))
        ));
        assert!(matches!(
            load(r#"{"version":2,"kind":"poset","elements":[]}"#),
            Err(TraceError::Parse(_))
        ));
        assert!(matches!(
            load(r#"{"version":1,"kind":"tree","elements":[]}"#),
            Err(TraceError::Parse(_))
        ));
        assert!(matches!(
            load(r#"{"version":1,"kind":"poset","elements":[],"extra":0}"#),
            Err(TraceError::Parse(_))
        ));
    }

    #[test]
    fn semantic_errors_are_model_errors() {
        let dup = r#"{"version":1,"kind":"event","n":1,"events":[
            {"id":"x","slots":[{"proc":1,"idx":1}]},
            {"id":"y","slots":[{"proc":1,"idx":1}]}]}"#;
        assert!(matches!(
            load(dup),
            Err(TraceError::Model(Error::NotTotallyOrdered(1)))
        ));
        let gap = r#"{"version":1,"kind":"event","n":1,"events":[
            {"id":"x","slots":[{"proc":1,"idx":1}]},
            {"id":"y","slots":[{"proc":1,"idx":3}]}]}"#;
        assert!(matches!(load(gap), Err(TraceError::Model(Error::IndexGap { .. }))));
        let cyc = r#"{"version":1,"kind":"poset","elements":["x","y"],"relations":[["x","y"],["y","x"]]}"#;
        assert!(matches!(load(cyc), Err(TraceError::Model(Error::Cycle(_)))));
    }

    #[test]
    fn state_trace_with_attrs() {
        let text = r#"{"version":1,"kind":"state",
            "elements":["1.0","1.1","2.0","2.1"],
            "relations":[["1.0","1.1"],["2.0","2.1"]],
            "chains":[["1.0","1.1"],["2.0","2.1"]],
            "attrs":{"1.1":{"busy":true,"permits":2}}}"#;
        let Trace::State(sm) = load(text).unwrap() else { panic!("state kind") };
        let s = sm.poset().require("1.1").unwrap();
        assert_eq!(sm.attrs(s)["busy"], 1.0);
        assert_eq!(sm.attrs(s)["permits"], 2.0);
        let v = state_to_value(&sm);
        assert_eq!(v["attrs"]["1.1"]["permits"], json!(2.0));
    }

    #[test]
    fn shared_event_edges() {
        let text = r#"{"version":1,"kind":"event","n":2,"events":[
            {"id":"op1","slots":[{"proc":1,"idx":1}]},
            {"id":"bar","slots":[{"proc":1,"idx":2},{"proc":2,"idx":2}]},
            {"id":"op2","slots":[{"proc":1,"idx":3}]},
            {"id":"op3","slots":[{"proc":2,"idx":1}]},
            {"id":"op4","slots":[{"proc":2,"idx":3}]}]}"#;
        let Trace::Event(m) = load(text).unwrap() else { panic!("event kind") };
        assert!(!m.is_asc());
        assert_eq!(event_to_value(&m)["edges"], json!([]));
    }
}
