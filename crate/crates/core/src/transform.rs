//! Conversions between the event view and the state view.
//!
//! [`es_transform`] turns each process with `n_i` events into a chain of
//! `n_i + 1` states and orders states across processes through the events
//! that separate them. [`se_transform`] goes back: every state other than
//! an initial one is the state after exactly one event, so events are the
//! nodes `(i, r)`, `r >= 1`. Nodes that must be simultaneous form cycles
//! and are merged into shared events; a cycle with two nodes of one chain
//! means the state poset models no computation at all.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::event::{EventModel, EventModelOptions, Slot};
use crate::poset::{ChainPartition, Poset};
use crate::scc;
use crate::state::{state_id, StateModel};

/// State model of an event model. State `[i,k]` is named `"i.k"`.
pub fn es_transform(m: &EventModel) -> StateModel {
    let n = m.n();
    let lens: Vec<usize> = (1..=n).map(|i| m.process_len(i)).collect();
    let mut offset = Vec::with_capacity(n);
    let mut ids = Vec::new();
    for (c, &len) in lens.iter().enumerate() {
        offset.push(ids.len());
        ids.extend((0..=len).map(|k| state_id(c, k)));
    }
    let p = m.poset();
    let mut pairs = Vec::new();
    for i in 0..n {
        for r in 0..lens[i] {
            pairs.push((offset[i] + r, offset[i] + r + 1));
            // [i,r] < [j,s] iff the event leaving [i,r] is at or below the
            // event entering [j,s]; the smallest such s is enough.
            let leaving = m.process_events(i + 1)[r];
            for j in (0..n).filter(|&j| j != i) {
                let events = m.process_events(j + 1);
                let first = events.partition_point(|&e| !p.leq(leaving, e));
                if first < events.len() {
                    pairs.push((offset[i] + r, offset[j] + first + 1));
                }
            }
        }
    }
    let poset = Poset::from_index_pairs(ids, &pairs).expect("ES transform yields a poset");
    let chains = (0..n)
        .map(|c| (offset[c]..=offset[c] + lens[c]).collect())
        .collect();
    let len = poset.len();
    StateModel::new(poset, ChainPartition::new_unchecked(chains, len))
}

/// The intermediate event graph: one node per non-initial state.
#[derive(Debug, Clone)]
pub struct EventGraph {
    /// `nodes[v]` is `(i, r)` with 1-based chain `i` and `r >= 1`.
    nodes: Vec<Slot>,
    offset: Vec<usize>,
    adj: Vec<Vec<usize>>,
    comp: Vec<usize>,
}

impl EventGraph {
    /// Builds the graph for `sm`.
    ///
    /// Chain edges join `(i,r)` to `(i,r+1)`. For `i != j` there is a path
    /// `(i,r) -> (j,s)` iff `[i,r-1] < [j,s]`; only the edge to the smallest
    /// such `s` is stored, the rest follow along chain `j`.
    pub fn new(sm: &StateModel) -> Self {
        let n = sm.n();
        let mut nodes = Vec::new();
        let mut offset = Vec::with_capacity(n);
        for c in 0..n {
            offset.push(nodes.len());
            nodes.extend((1..sm.chain_len(c)).map(|r| Slot::new(c + 1, r)));
        }
        let p = sm.poset();
        let mut adj = vec![Vec::new(); nodes.len()];
        for i in 0..n {
            for r in 1..sm.chain_len(i) {
                let v = offset[i] + r - 1;
                if r + 1 < sm.chain_len(i) {
                    adj[v].push(v + 1);
                }
                let before = sm.state(i, r - 1);
                for j in (0..n).filter(|&j| j != i) {
                    let chain = &sm.chains().chain(j)[1..];
                    let first = chain.partition_point(|&t| !p.less(before, t));
                    if first < chain.len() {
                        adj[v].push(offset[j] + first);
                    }
                }
            }
        }
        let comp = scc::tarjan(&adj);
        EventGraph {
            nodes,
            offset,
            adj,
            comp,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, v: usize) -> Slot {
        self.nodes[v]
    }

    /// Node of `(chain, r)`, chain 1-based, `r >= 1`.
    pub fn node_of(&self, slot: Slot) -> Option<usize> {
        let start = *self.offset.get(slot.proc.checked_sub(1)?)?;
        let end = self.offset.get(slot.proc).copied().unwrap_or(self.nodes.len());
        let v = start + slot.idx.checked_sub(1)?;
        (v < end).then_some(v)
    }

    /// Stored successors of node `v`.
    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    /// Stored edges as slot pairs.
    pub fn edges(&self) -> Vec<(Slot, Slot)> {
        let mut out: Vec<(Slot, Slot)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(v, ws)| ws.iter().map(move |&w| (self.nodes[v], self.nodes[w])))
            .collect();
        out.sort();
        out
    }

    /// True iff `a` and `b` lie on a common cycle (or are equal).
    pub fn same_component(&self, a: Slot, b: Slot) -> bool {
        match (self.node_of(a), self.node_of(b)) {
            (Some(x), Some(y)) => self.comp[x] == self.comp[y],
            _ => false,
        }
    }

    /// Strongly connected components, each sorted by slot, in order of
    /// their smallest slot.
    pub fn components(&self) -> Vec<Vec<Slot>> {
        let count = self.comp.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut groups = vec![Vec::new(); count];
        for (v, &c) in self.comp.iter().enumerate() {
            groups[c].push(self.nodes[v]);
        }
        for g in &mut groups {
            g.sort();
        }
        groups.sort();
        groups
    }
}

/// Components of the event graph that hold two states of one chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvalidityReport {
    pub components: Vec<BadComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadComponent {
    /// Member nodes as `[chain, index]`, both 1-based.
    pub nodes: Vec<[usize; 2]>,
    /// Chains contributing two or more nodes.
    pub repeated_chains: Vec<usize>,
}

impl fmt::Display for InvalidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            let nodes: Vec<String> = c.nodes.iter().map(|[i, r]| format!("({i},{r})")).collect();
            write!(
                f,
                "cycle {} repeats chain(s) {:?}",
                nodes.join(" "),
                c.repeated_chains
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub enum SeOutcome {
    Model(EventModel),
    Invalid(InvalidityReport),
}

impl SeOutcome {
    pub fn model(self) -> Option<EventModel> {
        match self {
            SeOutcome::Model(m) => Some(m),
            SeOutcome::Invalid(_) => None,
        }
    }
}

/// Event model of a state model, or the cycles that prevent one.
///
/// Singleton events are named `"i.r"`; merged events are named
/// `"shared(i1.r1,i2.r2,...)"` with members sorted by chain. The only
/// `Err` is [`Error::Internal`], raised if the merged graph fails event
/// model validation.
pub fn se_transform(sm: &StateModel) -> Result<SeOutcome> {
    let g = EventGraph::new(sm);
    se_from_graph(sm, &g)
}

pub(crate) fn se_from_graph(sm: &StateModel, g: &EventGraph) -> Result<SeOutcome> {
    let groups = g.components();
    let mut bad = Vec::new();
    for group in &groups {
        let mut repeated: Vec<usize> = group
            .windows(2)
            .filter(|w| w[0].proc == w[1].proc)
            .map(|w| w[0].proc)
            .collect();
        repeated.dedup();
        if !repeated.is_empty() {
            bad.push(BadComponent {
                nodes: group.iter().map(|s| [s.proc, s.idx]).collect(),
                repeated_chains: repeated,
            });
        }
    }
    if !bad.is_empty() {
        return Ok(SeOutcome::Invalid(InvalidityReport { components: bad }));
    }

    let mut event_of = vec![0; g.len()];
    let mut ids = Vec::with_capacity(groups.len());
    let mut labels = Vec::with_capacity(groups.len());
    for (e, group) in groups.iter().enumerate() {
        for &s in group {
            event_of[g.node_of(s).expect("graph node")] = e;
        }
        let names: Vec<String> = group.iter().map(|s| format!("{}.{}", s.proc, s.idx)).collect();
        ids.push(if names.len() == 1 {
            names[0].clone()
        } else {
            format!("shared({})", names.join(","))
        });
        labels.push(group.clone());
    }
    let mut pairs = Vec::new();
    for (v, ws) in g.adj.iter().enumerate() {
        for &w in ws {
            if event_of[v] != event_of[w] {
                pairs.push((event_of[v], event_of[w]));
            }
        }
    }
    let internal = |e: Error| Error::Internal(format!("SE transform produced an invalid model: {e}"));
    let poset = Poset::from_index_pairs(ids, &pairs).map_err(internal)?;
    let options = EventModelOptions {
        allow_empty_process: true,
    };
    EventModel::from_indexed(poset, sm.n(), labels, options)
        .map(SeOutcome::Model)
        .map_err(internal)
}

/// True iff transforming `m` to states and back gives `m` up to renaming.
pub fn roundtrip_es_se(m: &EventModel) -> Result<bool> {
    Ok(match se_transform(&es_transform(m))? {
        SeOutcome::Model(back) => back.equivalent(m),
        SeOutcome::Invalid(_) => false,
    })
}

/// True iff transforming `sm` to events and back gives `sm` up to renaming.
pub fn roundtrip_se_es(sm: &StateModel) -> Result<bool> {
    Ok(match se_transform(sm)? {
        SeOutcome::Model(m) => es_transform(&m).equivalent(sm),
        SeOutcome::Invalid(_) => false,
    })
}
