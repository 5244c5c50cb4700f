//! Event-based models: a happened-before poset plus process labels.
//!
//! Every event carries one slot `(proc, idx)` per process it executes on;
//! shared events (barriers, synchronous messages) carry several. Events of
//! one process must be totally ordered and numbered `1..=n_i`.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{ChainPartition, Poset};

/// Position of an event on one process. Both fields are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Slot {
    pub proc: usize,
    pub idx: usize,
}

impl Slot {
    pub fn new(proc: usize, idx: usize) -> Self {
        Slot { proc, idx }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EventModelOptions {
    /// Accept processes without events (`n_i = 0`).
    pub allow_empty_process: bool,
}

#[derive(Debug, Clone)]
pub struct EventModel {
    poset: Poset,
    n: usize,
    /// Slots of each event, sorted by process.
    labels: Vec<Vec<Slot>>,
    /// `procs[i]` lists the events of process `i + 1` in order.
    procs: Vec<Vec<usize>>,
    /// `below[e][i]`: number of events of process `i + 1` strictly below `e`.
    below: Vec<Vec<usize>>,
}

impl EventModel {
    /// Validates `labels` (keyed by event id) against `poset`.
    pub fn new(
        poset: Poset,
        n: usize,
        labels: &HashMap<String, Vec<Slot>>,
        options: EventModelOptions,
    ) -> Result<Self> {
        let mut indexed = vec![Vec::new(); poset.len()];
        for (id, slots) in labels {
            let e = poset.require(id)?;
            indexed[e] = slots.clone();
        }
        Self::from_indexed(poset, n, indexed, options)
    }

    pub(crate) fn from_indexed(
        poset: Poset,
        n: usize,
        mut labels: Vec<Vec<Slot>>,
        options: EventModelOptions,
    ) -> Result<Self> {
        let mut procs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, slots) in labels.iter_mut().enumerate() {
            let bad = |reason: String| Error::BadLabel {
                event: poset.id(e).to_string(),
                reason,
            };
            if slots.is_empty() {
                return Err(bad("no process slots".into()));
            }
            slots.sort();
            for (k, s) in slots.iter().enumerate() {
                if s.proc == 0 || s.proc > n {
                    return Err(bad(format!("process {} outside 1..={n}", s.proc)));
                }
                if k > 0 && slots[k - 1].proc == s.proc {
                    return Err(bad(format!("two slots on process {}", s.proc)));
                }
                procs[s.proc - 1].push((e, s.idx));
            }
        }

        let mut ordered = Vec::with_capacity(n);
        for (i, members) in procs.iter_mut().enumerate() {
            let process = i + 1;
            if members.is_empty() && !options.allow_empty_process {
                return Err(Error::EmptyProcess(process));
            }
            for (k, &(a, _)) in members.iter().enumerate() {
                for &(b, _) in &members[k + 1..] {
                    if poset.concurrent(a, b) {
                        return Err(Error::NotTotallyOrdered(process));
                    }
                }
            }
            let mut by_index = members.clone();
            by_index.sort_by_key(|&(_, idx)| idx);
            let found: Vec<usize> = by_index.iter().map(|&(_, idx)| idx).collect();
            if found.iter().enumerate().any(|(k, &idx)| idx != k + 1) {
                return Err(Error::IndexGap {
                    process,
                    expected: members.len(),
                    found,
                });
            }
            if by_index.windows(2).any(|w| !poset.less(w[0].0, w[1].0)) {
                return Err(Error::IndexOrder(process));
            }
            ordered.push(by_index.into_iter().map(|(e, _)| e).collect::<Vec<_>>());
        }

        let below = (0..poset.len())
            .map(|e| {
                ordered
                    .iter()
                    .map(|events: &Vec<usize>| {
                        events.partition_point(|&x| poset.less(x, e))
                    })
                    .collect()
            })
            .collect();

        Ok(EventModel {
            poset,
            n,
            labels,
            procs: ordered,
            below,
        })
    }

    /// Reads a bare poset as an event model whose processes are the chains
    /// of `cp`, in order.
    pub fn from_chains(poset: Poset, cp: &ChainPartition) -> Result<Self> {
        let labels = (0..poset.len())
            .map(|e| vec![Slot::new(cp.chain_of(e) + 1, cp.position(e) + 1)])
            .collect();
        let options = EventModelOptions {
            allow_empty_process: true,
        };
        Self::from_indexed(poset, cp.len(), labels, options)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// Number of processes.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of events on process `proc` (1-based).
    pub fn process_len(&self, proc: usize) -> usize {
        self.procs[proc - 1].len()
    }

    /// Events of process `proc` (1-based) in order.
    pub fn process_events(&self, proc: usize) -> &[usize] {
        &self.procs[proc - 1]
    }

    /// The event at `slot`, if any.
    pub fn event_at(&self, slot: Slot) -> Option<usize> {
        self.procs
            .get(slot.proc.checked_sub(1)?)?
            .get(slot.idx.checked_sub(1)?)
            .copied()
    }

    pub fn slots(&self, e: usize) -> &[Slot] {
        &self.labels[e]
    }

    /// Number of events of process `proc` (1-based) strictly below `e`.
    pub(crate) fn below_count(&self, e: usize, proc: usize) -> usize {
        self.below[e][proc - 1]
    }

    /// True iff no event is shared between processes.
    pub fn is_asc(&self) -> bool {
        self.labels.iter().all(|s| s.len() == 1)
    }

    /// True iff the events named by `ids` form a downset.
    pub fn is_consistent_cut<S: AsRef<str>>(&self, ids: &[S]) -> Result<bool> {
        let mut set = FixedBitSet::with_capacity(self.poset.len());
        for e in self.poset.resolve(ids)? {
            set.insert(e);
        }
        Ok(self.poset.is_downset(&set))
    }

    /// Slot sets keyed canonically, with the order between them. Two models
    /// are equal up to event renaming iff their signatures are equal.
    pub fn signature(&self) -> ModelSignature {
        let key = |e: usize| self.labels[e].clone();
        let events = (0..self.poset.len()).map(key).collect::<Vec<_>>();
        let mut order: Vec<(Vec<Slot>, Vec<Slot>)> = self
            .poset
            .covers()
            .iter()
            .map(|&(a, b)| (key(a), key(b)))
            .collect();
        order.sort();
        let mut events = events;
        events.sort();
        ModelSignature {
            n: self.n,
            events,
            covers: order,
        }
    }

    /// Equality up to renaming of events.
    pub fn equivalent(&self, other: &EventModel) -> bool {
        self.signature() == other.signature()
    }

    /// Labels keyed by event id, for serialization.
    pub fn labels_by_id(&self) -> BTreeMap<String, Vec<Slot>> {
        (0..self.poset.len())
            .map(|e| (self.poset.id(e).to_string(), self.labels[e].clone()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSignature {
    pub n: usize,
    pub events: Vec<Vec<Slot>>,
    pub covers: Vec<(Vec<Slot>, Vec<Slot>)>,
}

/// Builds an event model from per-process event sequences plus explicit
/// cross edges. An id appearing in several sequences is a shared event.
///
/// ```
/// use concur::event::from_sequences;
/// let m = from_sequences(&[&["a", "b", "c"], &["e", "f", "g"]], &[("b", "f")]).unwrap();
/// assert!(m.is_asc());
/// ```
pub fn from_sequences(processes: &[&[&str]], edges: &[(&str, &str)]) -> Result<EventModel> {
    let mut ids: Vec<String> = Vec::new();
    let mut labels: HashMap<String, Vec<Slot>> = HashMap::new();
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (i, seq) in processes.iter().enumerate() {
        for (k, &id) in seq.iter().enumerate() {
            if !labels.contains_key(id) {
                ids.push(id.to_string());
            }
            labels
                .entry(id.to_string())
                .or_default()
                .push(Slot::new(i + 1, k + 1));
            if k > 0 {
                pairs.push((seq[k - 1].to_string(), id.to_string()));
            }
        }
    }
    pairs.extend(edges.iter().map(|&(a, b)| (a.to_string(), b.to_string())));
    let poset = Poset::new(ids, pairs)?;
    EventModel::new(poset, processes.len(), &labels, EventModelOptions::default())
}
