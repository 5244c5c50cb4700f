//! Useless checkpoints.
//!
//! A marking picks checkpoint states on every process, always including
//! the initial and final ones. The marked states with the induced order
//! form a state model of their own; a checkpoint is useless when no global
//! checkpoint (one marked state per process, pairwise concurrent) contains
//! it.
//!
//! The fast engine reads the answer off the event graph of the induced
//! model. A path from node `(i, r+1)` to node `(j, s)` there is a zig-zag
//! path from checkpoint `[i,r]` to checkpoint `[j,s]`, so `[i,r]` sits on
//! a zig-zag cycle exactly when `(i,r)` and `(i,r+1)` share a strongly
//! connected component. A checkpoint is reported useless when it sits on
//! such a cycle or when some other process has no checkpoint concurrent to
//! it. For a useful checkpoint the witness takes, on every other process,
//! the last checkpoint not reachable by a zig-zag path from it.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::event::Slot;
use crate::oracle;
use crate::poset::ChainPartition;
use crate::state::StateModel;
use crate::transform::EventGraph;

/// Checkpointed state indices per process, strictly increasing, from `0`
/// to the final index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckpointMarking {
    pub marks: Vec<Vec<usize>>,
}

impl CheckpointMarking {
    /// Every state of every process.
    pub fn all(sm: &StateModel) -> Self {
        CheckpointMarking {
            marks: (0..sm.n()).map(|c| (0..sm.chain_len(c)).collect()).collect(),
        }
    }

    pub fn validate(&self, sm: &StateModel) -> Result<()> {
        if self.marks.len() != sm.n() {
            return Err(Error::BadMarking(format!(
                "{} processes marked, model has {}",
                self.marks.len(),
                sm.n()
            )));
        }
        for (c, m) in self.marks.iter().enumerate() {
            let last = sm.chain_len(c) - 1;
            let process = c + 1;
            if m.first() != Some(&0) {
                return Err(Error::BadMarking(format!("process {process}: initial state 0 not marked")));
            }
            if m.last() != Some(&last) {
                return Err(Error::BadMarking(format!(
                    "process {process}: final state {last} not marked"
                )));
            }
            if m.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::BadMarking(format!(
                    "process {process}: indices not strictly increasing"
                )));
            }
        }
        Ok(())
    }
}

/// The marked states with the induced order; chains re-indexed from 0,
/// state ids and attributes kept.
pub fn induced_checkpoint_model(sm: &StateModel, marks: &CheckpointMarking) -> Result<StateModel> {
    marks.validate(sm)?;
    let mut keep = Vec::new();
    let mut chains = Vec::with_capacity(sm.n());
    for (c, m) in marks.marks.iter().enumerate() {
        chains.push((keep.len()..keep.len() + m.len()).collect::<Vec<_>>());
        keep.extend(m.iter().map(|&k| sm.state(c, k)));
    }
    let poset = sm.poset().restrict(&keep);
    let attrs = keep
        .iter()
        .map(|&s| (sm.poset().id(s).to_string(), sm.attrs(s).clone()))
        .filter(|(_, a)| !a.is_empty())
        .collect();
    let cp = ChainPartition::new(&poset, chains)?;
    StateModel::new(poset, cp).with_attrs(attrs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Fast,
    Oracle,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckpointVerdict {
    pub id: String,
    /// 1-based process.
    pub process: usize,
    /// Index of the state on its process in the original model.
    pub index: usize,
    pub useful: bool,
    /// A global checkpoint containing this one, when useful.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckpointReport {
    pub engine: Engine,
    /// Cover pairs of the induced checkpoint order.
    pub induced_order: Vec<[String; 2]>,
    pub checkpoints: Vec<CheckpointVerdict>,
    pub useless: Vec<String>,
    /// Ids on which the engines disagree; only with [`Engine::Both`].
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disagreements: Option<Vec<String>>,
}

/// Per chain and position: useful, and a global checkpoint through it.
pub type Usefulness = Vec<Vec<(bool, Option<Vec<usize>>)>>;

/// Per-checkpoint usefulness by the zig-zag cycle criterion, with a
/// witness for each useful checkpoint. `out[c][r]` is checkpoint `r` of
/// chain `c` of the induced model.
pub fn useful_fast(l: &StateModel) -> Usefulness {
    let g = EventGraph::new(l);
    let p = l.poset();
    let n = l.n();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let len = l.chain_len(i);
        let mut row = Vec::with_capacity(len);
        for r in 0..len {
            let c = l.state(i, r);
            let on_cycle = r > 0
                && r + 1 < len
                && g.same_component(Slot::new(i + 1, r), Slot::new(i + 1, r + 1));
            let isolated = (0..n).any(|j| {
                j != i
                    && p
                        .incomparable_interval(l.chains(), c, j)
                        .expect("valid chain")
                        .is_none()
            });
            if on_cycle || isolated {
                row.push((false, None));
                continue;
            }
            let witness = latest_partners(l, &g, i, r);
            let witness = if p.is_antichain(&witness) {
                Some(witness)
            } else {
                log::warn!(
                    "no zig-zag-free partners for `{}`; searching exhaustively",
                    p.id(c)
                );
                search_witness(l, i, r)
            };
            row.push((witness.is_some(), witness));
        }
        out.push(row);
    }
    out
}

/// On each chain `j != i`, the last checkpoint with no zig-zag path from
/// `[i,r]`; `[i,r]` itself on chain `i`.
fn latest_partners(l: &StateModel, g: &EventGraph, i: usize, r: usize) -> Vec<usize> {
    let n = l.n();
    let mut first_reached: Vec<usize> = (0..n).map(|j| l.chain_len(j)).collect();
    if let Some(start) = g.node_of(Slot::new(i + 1, r + 1)) {
        let mut seen = vec![false; g.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let s = g.node(v);
            let slot = &mut first_reached[s.proc - 1];
            *slot = (*slot).min(s.idx);
            for w in g.successors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    (0..n)
        .map(|j| {
            if j == i {
                l.state(i, r)
            } else {
                l.state(j, first_reached[j] - 1)
            }
        })
        .collect()
}

/// Backtracking search for a global checkpoint containing `[i,r]`.
fn search_witness(l: &StateModel, i: usize, r: usize) -> Option<Vec<usize>> {
    let mut chosen = Vec::with_capacity(l.n());
    let mut found = None;
    let fixed = l.state(i, r);
    extend(l, 0, &mut chosen, &mut |c: &[usize]| {
        if c[i] == fixed {
            found = Some(c.to_vec());
            true
        } else {
            false
        }
    }, Some((i, fixed)));
    found
}

/// Extends `chosen` with one state per remaining chain, pairwise
/// concurrent. `visit` returns true to stop.
fn extend(
    l: &StateModel,
    chain: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
    fixed: Option<(usize, usize)>,
) -> bool {
    if chain == l.n() {
        return visit(chosen);
    }
    let p = l.poset();
    for k in 0..l.chain_len(chain) {
        let s = l.state(chain, k);
        if fixed.is_some_and(|(c, f)| c == chain && f != s) {
            continue;
        }
        if chosen.iter().all(|&t| p.concurrent(s, t)) {
            chosen.push(s);
            let stop = extend(l, chain + 1, chosen, visit, fixed);
            chosen.pop();
            if stop {
                return true;
            }
        }
    }
    false
}

/// Per-checkpoint usefulness from every global checkpoint. Bounded by the
/// oracle bound on the number of checkpoints.
pub fn useful_oracle(l: &StateModel) -> Result<Usefulness> {
    let bound = oracle::oracle_bound();
    if l.poset().len() > bound {
        return Err(Error::OracleBoundExceeded {
            size: l.poset().len(),
            bound,
        });
    }
    let mut witness: Vec<Option<Vec<usize>>> = vec![None; l.poset().len()];
    let mut chosen = Vec::with_capacity(l.n());
    extend(
        l,
        0,
        &mut chosen,
        &mut |c: &[usize]| {
            for &s in c {
                witness[s].get_or_insert_with(|| c.to_vec());
            }
            false
        },
        None,
    );
    Ok((0..l.n())
        .map(|c| {
            (0..l.chain_len(c))
                .map(|k| {
                    let w = witness[l.state(c, k)].clone();
                    (w.is_some(), w)
                })
                .collect()
        })
        .collect())
}

/// Classifies every checkpoint of `marks` as useful or useless.
pub fn find_useless_checkpoints(
    sm: &StateModel,
    marks: &CheckpointMarking,
    engine: Engine,
) -> Result<CheckpointReport> {
    let l = induced_checkpoint_model(sm, marks)?;
    let (primary, disagreements) = match engine {
        Engine::Fast => (useful_fast(&l), None),
        Engine::Oracle => (useful_oracle(&l)?, None),
        Engine::Both => {
            let fast = useful_fast(&l);
            let exact = useful_oracle(&l)?;
            let mut differ = Vec::new();
            for c in 0..l.n() {
                for k in 0..l.chain_len(c) {
                    if fast[c][k].0 != exact[c][k].0 {
                        differ.push(l.poset().id(l.state(c, k)).to_string());
                    }
                }
            }
            (exact, Some(differ))
        }
    };
    let p = l.poset();
    let mut checkpoints = Vec::new();
    let mut useless = Vec::new();
    for (c, row) in primary.into_iter().enumerate() {
        for (k, (useful, witness)) in row.into_iter().enumerate() {
            let id = p.id(l.state(c, k)).to_string();
            if !useful {
                useless.push(id.clone());
            }
            checkpoints.push(CheckpointVerdict {
                id,
                process: c + 1,
                index: marks.marks[c][k],
                useful,
                witness: witness.map(|w| p.names(&w)),
            });
        }
    }
    let mut induced_order: Vec<[String; 2]> = p
        .covers()
        .iter()
        .map(|&(a, b)| [p.id(a).to_string(), p.id(b).to_string()])
        .collect();
    induced_order.sort();
    Ok(CheckpointReport {
        engine,
        induced_order,
        checkpoints,
        useless,
        disagreements,
    })
}
