//! Enumeration of consistent cuts and width-antichains.
//!
//! A consistent cut of an event model is determined by its frontier: the
//! number of events it contains on each process. Cuts are enumerated by
//! reverse search over frontiers. The parent of a nonempty cut is the cut
//! minus its maximal event of largest index, so the parent links form a
//! spanning tree rooted at the empty cut. Generating the children of a cut
//! costs `O(n^2)` poset lookups, which gives `O(n^2)` work per cut and no
//! duplicate bookkeeping.
//!
//! Width-antichains of a width-extensible poset are enumerated by moving to
//! the event view and mapping each cut to the states right after its
//! frontier.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::event::EventModel;
use crate::poset::Poset;
use crate::state::{width_extensible_witness, StateModel, WidthAntichainCut};
use crate::transform::{se_transform, SeOutcome};

/// A consistent cut of an event model, stored as its frontier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventCut {
    frontier: Vec<usize>,
}

impl EventCut {
    /// Events per process (index `i` is process `i + 1`).
    pub fn frontier(&self) -> &[usize] {
        &self.frontier
    }

    /// Member events, sorted by index.
    pub fn events(&self, m: &EventModel) -> Vec<usize> {
        let mut set = FixedBitSet::with_capacity(m.poset().len());
        for (i, &g) in self.frontier.iter().enumerate() {
            for &e in &m.process_events(i + 1)[..g] {
                set.insert(e);
            }
        }
        set.ones().collect()
    }

    /// Member event ids, sorted.
    pub fn names(&self, m: &EventModel) -> Vec<String> {
        m.poset().names(&self.events(m))
    }

    /// The cut made of `events`, which must be downward closed.
    pub fn from_events(m: &EventModel, events: &[usize]) -> Result<Self> {
        let p = m.poset();
        let mut set = FixedBitSet::with_capacity(p.len());
        for &e in events {
            set.insert(e);
        }
        if !p.is_downset(&set) {
            return Err(Error::NotConsistent(format!("{{{}}}", p.names(events).join(", "))));
        }
        let frontier = (1..=m.n())
            .map(|i| m.process_events(i).iter().filter(|&&e| set.contains(e)).count())
            .collect();
        Ok(EventCut { frontier })
    }

    pub fn from_ids<S: AsRef<str>>(m: &EventModel, ids: &[S]) -> Result<Self> {
        Self::from_events(m, &m.poset().resolve(ids)?)
    }

    /// The cut with the given frontier, if that frontier is consistent.
    pub fn from_frontier(m: &EventModel, frontier: Vec<usize>) -> Result<Self> {
        let bad = Error::NotConsistent(format!("frontier {frontier:?}"));
        if frontier.len() != m.n()
            || frontier.iter().enumerate().any(|(i, &g)| g > m.process_len(i + 1))
        {
            return Err(bad);
        }
        let cut = EventCut { frontier };
        match EventCut::from_events(m, &cut.events(m)) {
            Ok(back) if back == cut => Ok(cut),
            _ => Err(bad),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Order {
    /// Depth-first over the reverse-search tree.
    #[default]
    Lexicographic,
    /// Breadth-first: cuts by increasing size.
    Level,
}

/// Reverse-search state shared by the cut and antichain streams.
#[derive(Debug, Clone)]
struct Search {
    pending: VecDeque<Vec<usize>>,
    order: Order,
    work: u64,
}

impl Search {
    fn new(m: &EventModel, order: Order) -> Self {
        Search {
            pending: VecDeque::from([vec![0; m.n()]]),
            order,
            work: 0,
        }
    }

    fn next(&mut self, m: &EventModel) -> Option<Vec<usize>> {
        let g = match self.order {
            Order::Lexicographic => self.pending.pop_back()?,
            Order::Level => self.pending.pop_front()?,
        };
        let mut children = children(m, &g, &mut self.work);
        if self.order == Order::Lexicographic {
            children.reverse();
        }
        self.pending.extend(children);
        Some(g)
    }
}

/// Frontiers of the children of `g` in the reverse-search tree.
fn children(m: &EventModel, g: &[usize], work: &mut u64) -> Vec<Vec<usize>> {
    let p = m.poset();
    let n = m.n();
    let tops: Vec<Option<usize>> = (0..n)
        .map(|i| g[i].checked_sub(1).map(|k| m.process_events(i + 1)[k]))
        .collect();
    // Maximal events of g; a shared event is listed under its first process.
    let mut maximal = Vec::with_capacity(n);
    for (i, &top) in tops.iter().enumerate() {
        let Some(y) = top else { continue };
        if m.slots(y)[0].proc != i + 1 {
            continue;
        }
        *work += n as u64;
        if tops.iter().flatten().all(|&z| !p.less(y, z)) {
            maximal.push(y);
        }
    }

    let mut out = Vec::new();
    for i in 0..n {
        let Some(&e) = m.process_events(i + 1).get(g[i]) else {
            continue;
        };
        if m.slots(e)[0].proc != i + 1 {
            continue;
        }
        *work += n as u64;
        if (0..n).any(|j| g[j] < m.below_count(e, j + 1)) {
            continue;
        }
        *work += maximal.len() as u64;
        if maximal.iter().any(|&y| y > e && !p.less(y, e)) {
            continue;
        }
        let mut h = g.to_vec();
        for s in m.slots(e) {
            h[s.proc - 1] += 1;
        }
        out.push(h);
    }
    out
}

/// Lazy stream of the consistent cuts of an event model.
#[derive(Debug, Clone)]
pub struct EventCuts<'a> {
    model: &'a EventModel,
    search: Search,
}

impl EventCuts<'_> {
    /// Poset lookups spent so far; grows as `O(n^2)` per emitted cut.
    pub fn work(&self) -> u64 {
        self.search.work
    }
}

impl Iterator for EventCuts<'_> {
    type Item = EventCut;

    fn next(&mut self) -> Option<EventCut> {
        self.search
            .next(self.model)
            .map(|frontier| EventCut { frontier })
    }
}

/// Every consistent cut of `m` exactly once, depth-first.
pub fn enumerate_event_cuts(m: &EventModel) -> EventCuts<'_> {
    enumerate_event_cuts_in(m, Order::Lexicographic)
}

pub fn enumerate_event_cuts_in(m: &EventModel, order: Order) -> EventCuts<'_> {
    EventCuts {
        model: m,
        search: Search::new(m, order),
    }
}

/// Lazy stream of the width-antichains of a width-extensible poset.
#[derive(Debug, Clone)]
pub struct WidthAntichains {
    states: StateModel,
    events: EventModel,
    search: Search,
}

impl WidthAntichains {
    /// The chain view the yielded positions refer to.
    pub fn state_model(&self) -> &StateModel {
        &self.states
    }

    /// The event model the cuts are drawn from.
    pub fn event_model(&self) -> &EventModel {
        &self.events
    }

    pub fn work(&self) -> u64 {
        self.search.work
    }
}

impl Iterator for WidthAntichains {
    type Item = WidthAntichainCut;

    fn next(&mut self) -> Option<WidthAntichainCut> {
        self.search.next(&self.events).map(WidthAntichainCut::new)
    }
}

/// Every width-antichain of `p` exactly once, positions relative to a
/// minimum chain partition.
pub fn enumerate_width_antichains(p: &Poset) -> Result<WidthAntichains> {
    enumerate_state_cuts(&StateModel::from_poset(p.clone()), Order::Lexicographic)
}

/// Width-antichains of a state model, positions relative to its own chains
/// when there are exactly as many chains as the width, else relative to a
/// minimum chain partition.
pub fn enumerate_state_cuts(sm: &StateModel, order: Order) -> Result<WidthAntichains> {
    let p = sm.poset();
    if let Some(bad) = width_extensible_witness(p) {
        return Err(Error::NotWidthExtensible(bad.names(p)));
    }
    let states = if sm.n() == p.width().0 {
        sm.clone()
    } else {
        sm.with_chains(p.minimum_chain_partition())
    };
    let events = match se_transform(&states)? {
        SeOutcome::Model(m) => m,
        SeOutcome::Invalid(report) => {
            return Err(Error::InvalidStateModel(report.to_string()));
        }
    };
    let search = Search::new(&events, order);
    Ok(WidthAntichains {
        states,
        events,
        search,
    })
}

/// The width-antichain of the state model of `m` matching `cut`: on each
/// process, the state after the last event in the cut.
pub fn cut_to_antichain(cut: &EventCut) -> WidthAntichainCut {
    WidthAntichainCut::new(cut.frontier.clone())
}

/// Inverse of [`cut_to_antichain`]: all events up to each chosen state.
pub fn antichain_to_cut(m: &EventModel, w: &WidthAntichainCut) -> Result<EventCut> {
    EventCut::from_frontier(m, w.positions.clone())
        .map_err(|_| Error::NotWidthAntichain(format!("positions {:?}", w.positions)))
}

/// Per-chain minimum and maximum of two width-antichains.
pub fn lattice_meet_join(
    sm: &StateModel,
    a: &WidthAntichainCut,
    b: &WidthAntichainCut,
) -> Result<(WidthAntichainCut, WidthAntichainCut)> {
    for w in [a, b] {
        if !w.is_consistent(sm) {
            return Err(Error::NotWidthAntichain(format!("positions {:?}", w.positions)));
        }
    }
    let zip = |f: fn(usize, usize) -> usize| {
        WidthAntichainCut::new(
            a.positions
                .iter()
                .zip(&b.positions)
                .map(|(&x, &y)| f(x, y))
                .collect(),
        )
    };
    Ok((zip(usize::min), zip(usize::max)))
}

/// All cuts with links to the cuts one event larger.
#[derive(Debug, Clone)]
pub struct CutLattice {
    pub order: Order,
    pub cuts: Vec<EventCut>,
    /// `successors[k]` indexes the cuts covering `cuts[k]`.
    pub successors: Vec<Vec<usize>>,
}

impl CutLattice {
    /// Materializes the lattice, failing once more than `max_cuts` cuts
    /// have been produced.
    pub fn build(m: &EventModel, order: Order, max_cuts: usize) -> Result<Option<Self>> {
        let mut cuts = Vec::new();
        for cut in enumerate_event_cuts_in(m, order) {
            if cuts.len() == max_cuts {
                return Ok(None);
            }
            cuts.push(cut);
        }
        let index: HashMap<&[usize], usize> = cuts
            .iter()
            .enumerate()
            .map(|(k, c)| (c.frontier.as_slice(), k))
            .collect();
        let mut successors = Vec::with_capacity(cuts.len());
        for cut in &cuts {
            let g = &cut.frontier;
            let mut next = Vec::new();
            for i in 0..m.n() {
                let Some(&e) = m.process_events(i + 1).get(g[i]) else {
                    continue;
                };
                if m.slots(e)[0].proc != i + 1 || (0..m.n()).any(|j| g[j] < m.below_count(e, j + 1)) {
                    continue;
                }
                let mut h = g.clone();
                for s in m.slots(e) {
                    h[s.proc - 1] += 1;
                }
                next.push(index[h.as_slice()]);
            }
            successors.push(next);
        }
        Ok(Some(CutLattice {
            order,
            cuts,
            successors,
        }))
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }
}
