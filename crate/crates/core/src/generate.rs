//! Random models for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::event::{EventModel, Slot};
use crate::poset::{ChainPartition, Poset};
use crate::state::StateModel;

/// Knobs for [`random_computation`].
#[derive(Debug, Clone, Copy)]
pub struct ComputationShape {
    /// Chance that a step sends a message.
    pub send: f64,
    /// Chance that a step with a pending message receives one.
    pub receive: f64,
    /// Chance that a step is a synchronization shared with another process.
    pub sync: f64,
}

impl ComputationShape {
    /// Message passing only.
    pub fn asynchronous(send: f64) -> Self {
        ComputationShape {
            send,
            receive: 0.6,
            sync: 0.0,
        }
    }
}

/// Event log of a simulated run.
struct Run {
    done: Vec<usize>,
    last: Vec<Option<usize>>,
    labels: Vec<Vec<Slot>>,
    pairs: Vec<(usize, usize)>,
}

impl Run {
    /// Appends one event executed jointly by `procs` (0-based).
    fn step(&mut self, procs: &[usize]) -> usize {
        let e = self.labels.len();
        let mut slots = Vec::with_capacity(procs.len());
        for &p in procs {
            self.done[p] += 1;
            slots.push(Slot::new(p + 1, self.done[p]));
            if let Some(prev) = self.last[p].replace(e) {
                self.pairs.push((prev, e));
            }
        }
        self.labels.push(slots);
        e
    }
}

/// Simulates a computation with `lens[i]` events on process `i + 1`.
///
/// Each step picks a process with events left. It receives a pending
/// message, joins another process in a shared event, sends a message, or
/// does local work. Messages that are never received are dropped. Event
/// ids are `e0`, `e1`, ... in creation order.
pub fn random_computation<R: Rng + ?Sized>(
    rng: &mut R,
    lens: &[usize],
    shape: ComputationShape,
) -> EventModel {
    let n = lens.len();
    let mut run = Run {
        done: vec![0; n],
        last: vec![None; n],
        labels: Vec::new(),
        pairs: Vec::new(),
    };
    let mut inbox: Vec<Vec<usize>> = vec![Vec::new(); n];
    let left = |run: &Run, p: usize| lens[p] - run.done[p];

    loop {
        let live: Vec<usize> = (0..n).filter(|&p| left(&run, p) > 0).collect();
        let Some(&p) = live.choose(rng) else { break };
        if !inbox[p].is_empty() && rng.gen_bool(shape.receive) {
            let k = rng.gen_range(0..inbox[p].len());
            let send = inbox[p].swap_remove(k);
            let recv = run.step(&[p]);
            run.pairs.push((send, recv));
            continue;
        }
        let partners: Vec<usize> = live.iter().copied().filter(|&q| q != p).collect();
        if !partners.is_empty() && rng.gen_bool(shape.sync) {
            let q = *partners.choose(rng).expect("nonempty");
            run.step(&[p.min(q), p.max(q)]);
            continue;
        }
        let e = run.step(&[p]);
        if n > 1 && rng.gen_bool(shape.send) {
            let mut q = rng.gen_range(0..n - 1);
            if q >= p {
                q += 1;
            }
            inbox[q].push(e);
        }
    }

    let ids: Vec<String> = (0..run.labels.len()).map(|e| format!("e{e}")).collect();
    let poset = Poset::from_index_pairs(ids, &run.pairs).expect("simulation order is acyclic");
    EventModel::from_indexed(poset, n, run.labels, Default::default())
        .expect("simulated computation is a valid model")
}

/// An asynchronous computation with `n` processes of `len` events each.
pub fn random_asc<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize, send: f64) -> EventModel {
    random_computation(rng, &vec![len; n], ComputationShape::asynchronous(send))
}

/// A poset covered by at most `max_chains` chains with at most
/// `max_elements` elements in total, plus random cross edges. Elements
/// are named `"c.k"` after their chain and position.
pub fn random_chain_poset<R: Rng + ?Sized>(
    rng: &mut R,
    max_elements: usize,
    max_chains: usize,
    edge_prob: f64,
) -> StateModel {
    let chains = rng.gen_range(1..=max_chains.max(1));
    let total = rng.gen_range(chains..=max_elements.max(chains));
    let mut lens = vec![1usize; chains];
    for _ in chains..total {
        lens[rng.gen_range(0..chains)] += 1;
    }
    // A random interleaving fixes a linear extension; cross edges follow it.
    let mut schedule: Vec<usize> = lens
        .iter()
        .enumerate()
        .flat_map(|(c, &l)| std::iter::repeat_n(c, l))
        .collect();
    schedule.shuffle(rng);
    let mut offset = Vec::with_capacity(chains);
    let mut ids = Vec::with_capacity(total);
    for (c, &l) in lens.iter().enumerate() {
        offset.push(ids.len());
        ids.extend((0..l).map(|k| format!("{}.{}", c + 1, k)));
    }
    let mut next = vec![0usize; chains];
    let order: Vec<usize> = schedule
        .iter()
        .map(|&c| {
            next[c] += 1;
            offset[c] + next[c] - 1
        })
        .collect();
    let mut pairs = Vec::new();
    for c in 0..chains {
        for k in 1..lens[c] {
            pairs.push((offset[c] + k - 1, offset[c] + k));
        }
    }
    for (x, &a) in order.iter().enumerate() {
        for &b in &order[x + 1..] {
            if rng.gen_bool(edge_prob) {
                pairs.push((a, b));
            }
        }
    }
    let poset = Poset::from_index_pairs(ids, &pairs).expect("edges follow a linear order");
    let cp = (0..chains)
        .map(|c| (offset[c]..offset[c] + lens[c]).collect())
        .collect();
    let cp = ChainPartition::new(&poset, cp).expect("chains are chains");
    StateModel::new(poset, cp)
}

/// A random checkpoint marking: endpoints plus up to `max_interior`
/// interior states per process.
pub fn random_marking<R: Rng + ?Sized>(
    rng: &mut R,
    sm: &StateModel,
    max_interior: usize,
) -> Vec<Vec<usize>> {
    (0..sm.n())
        .map(|c| {
            let last = sm.chain_len(c) - 1;
            let mut interior: Vec<usize> = (1..last).collect();
            interior.shuffle(rng);
            interior.truncate(rng.gen_range(0..=max_interior.min(interior.len())));
            interior.push(0);
            if last > 0 {
                interior.push(last);
            }
            interior.sort_unstable();
            interior
        })
        .collect()
}
