//! State-based models and the structural property checks.
//!
//! A [`StateModel`] is a poset of local states together with a chain per
//! process; chain `c` (0-based) lists the states `[c+1, 0] .. [c+1, n]`
//! from the initial to the final state. The checks in this module decide
//! the conditions that characterise which posets can model a computation:
//! initial states concurrent, final states concurrent, the cross-chain
//! transitivity condition, and the no-mutual-crossing condition that
//! separates asynchronous computations from ones with shared events.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle;
use crate::poset::{Antichain, ChainPartition, Interval, Poset};

/// Conventional id of state `k` on chain `chain` (0-based chain).
pub fn state_id(chain: usize, k: usize) -> String {
    format!("{}.{}", chain + 1, k)
}

#[derive(Debug, Clone)]
pub struct StateModel {
    poset: Poset,
    chains: ChainPartition,
    attrs: Vec<BTreeMap<String, f64>>,
}

impl StateModel {
    pub fn new(poset: Poset, chains: ChainPartition) -> Self {
        let attrs = vec![BTreeMap::new(); poset.len()];
        StateModel {
            poset,
            chains,
            attrs,
        }
    }

    /// Validates chains given by id.
    pub fn from_ids<S: AsRef<str>>(poset: Poset, chains: &[Vec<S>]) -> Result<Self> {
        let cp = ChainPartition::from_ids(&poset, chains)?;
        Ok(Self::new(poset, cp))
    }

    /// Uses a minimum chain partition of `poset` as the process chains.
    pub fn from_poset(poset: Poset) -> Self {
        let cp = poset.minimum_chain_partition();
        Self::new(poset, cp)
    }

    /// The same states and attributes over another chain partition.
    pub fn with_chains(&self, chains: ChainPartition) -> StateModel {
        StateModel {
            poset: self.poset.clone(),
            chains,
            attrs: self.attrs.clone(),
        }
    }

    /// Attaches numeric attributes, keyed by state id.
    pub fn with_attrs(mut self, attrs: BTreeMap<String, BTreeMap<String, f64>>) -> Result<Self> {
        for (id, values) in attrs {
            let s = self.poset.require(&id)?;
            self.attrs[s] = values;
        }
        Ok(self)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn chains(&self) -> &ChainPartition {
        &self.chains
    }

    /// Number of chains (processes).
    pub fn n(&self) -> usize {
        self.chains.len()
    }

    /// Number of states on `chain`, i.e. `n_i + 1`.
    pub fn chain_len(&self, chain: usize) -> usize {
        self.chains.chain(chain).len()
    }

    /// Element index of state `k` on `chain`.
    pub fn state(&self, chain: usize, k: usize) -> usize {
        self.chains.chain(chain)[k]
    }

    pub fn attrs(&self, s: usize) -> &BTreeMap<String, f64> {
        &self.attrs[s]
    }

    pub fn attrs_by_id(&self) -> BTreeMap<String, BTreeMap<String, f64>> {
        (0..self.poset.len())
            .filter(|&s| !self.attrs[s].is_empty())
            .map(|s| (self.poset.id(s).to_string(), self.attrs[s].clone()))
            .collect()
    }

    #[inline]
    fn less(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        self.poset.less(self.state(a.0, a.1), self.state(b.0, b.1))
    }

    fn name(&self, chain: usize, k: usize) -> String {
        self.poset.id(self.state(chain, k)).to_string()
    }

    /// Chain lengths and the order between chain positions. Two models are
    /// the same up to state renaming iff their shapes are equal.
    pub fn shape(&self) -> StateShape {
        let lens: Vec<usize> = (0..self.n()).map(|c| self.chain_len(c)).collect();
        let mut pairs = Vec::new();
        for a in 0..self.n() {
            for b in 0..self.n() {
                if a == b {
                    continue;
                }
                for r in 0..lens[a] {
                    for s in 0..lens[b] {
                        if self.less((a, r), (b, s)) {
                            pairs.push(((a, r), (b, s)));
                        }
                    }
                }
            }
        }
        StateShape { lens, pairs }
    }

    pub fn equivalent(&self, other: &StateModel) -> bool {
        self.shape() == other.shape()
    }

    /// Initial states pairwise concurrent.
    pub fn check_omega1(&self) -> Verdict {
        self.check_endpoints(|_| 0)
    }

    /// Final states pairwise concurrent.
    pub fn check_omega2(&self) -> Verdict {
        self.check_endpoints(|len| len - 1)
    }

    fn check_endpoints(&self, pick: impl Fn(usize) -> usize) -> Verdict {
        let ends: Vec<(usize, usize)> = (0..self.n())
            .map(|c| (c, pick(self.chain_len(c))))
            .collect();
        for (k, &a) in ends.iter().enumerate() {
            for &b in &ends[k + 1..] {
                let (lo, hi) = if self.less(a, b) {
                    (a, b)
                } else if self.less(b, a) {
                    (b, a)
                } else {
                    continue;
                };
                return Verdict::fails(Witness::Ordered {
                    lower: self.name(lo.0, lo.1),
                    upper: self.name(hi.0, hi.1),
                });
            }
        }
        Verdict::holds()
    }

    /// For `i != j`, `j != k`: `[i,s] < [j,t]` and `[j,t-1] < [k,u]` imply
    /// `[i,s] < [k,u]`.
    ///
    /// For fixed `[i,s]` and `j` only the smallest `t` matters: the states
    /// above `[j,t-1]` shrink as `t` grows, so the premise set is largest at
    /// the first `t` with `[i,s] < [j,t]`.
    pub fn check_omega3(&self) -> Verdict {
        for i in 0..self.n() {
            for s in 0..self.chain_len(i) {
                let x = self.state(i, s);
                let above_x = self.poset.up_set(x);
                for j in (0..self.n()).filter(|&j| j != i) {
                    let Some(t) = (1..self.chain_len(j)).find(|&t| self.less((i, s), (j, t)))
                    else {
                        continue;
                    };
                    let pred = self.state(j, t - 1);
                    for y in self.poset.up_set(pred).ones() {
                        if self.chains.chain_of(y) == j || above_x.contains(y) {
                            continue;
                        }
                        return Verdict::fails(Witness::Transitivity {
                            lower: self.name(i, s),
                            middle: self.name(j, t),
                            predecessor: self.name(j, t - 1),
                            upper: self.poset.id(y).to_string(),
                        });
                    }
                }
            }
        }
        Verdict::holds()
    }

    /// No `i != j` with `[i,s-1] < [j,t]` and `[j,t-1] < [i,s]`.
    pub fn check_psi(&self) -> Verdict {
        match self.psi_violation() {
            None => Verdict::holds(),
            Some((i, s, j, t)) => Verdict::fails(Witness::Crossing {
                from_first: self.name(i, s - 1),
                to_second: self.name(j, t),
                from_second: self.name(j, t - 1),
                to_first: self.name(i, s),
            }),
        }
    }

    /// First `(i, s, j, t)` violating the no-crossing condition.
    fn psi_violation(&self) -> Option<(usize, usize, usize, usize)> {
        for i in 0..self.n() {
            for s in 1..self.chain_len(i) {
                for j in (0..self.n()).filter(|&j| j != i) {
                    for t in 1..self.chain_len(j) {
                        if self.less((i, s - 1), (j, t)) && self.less((j, t - 1), (i, s)) {
                            return Some((i, s, j, t));
                        }
                    }
                }
            }
        }
        None
    }

    /// Evaluates the requested properties.
    pub fn report(&self, properties: &[Property]) -> Result<PropertyReport> {
        let mut report = PropertyReport::default();
        for p in properties {
            match p {
                Property::Omega1 => report.omega1 = Some(self.check_omega1()),
                Property::Omega2 => report.omega2 = Some(self.check_omega2()),
                Property::Omega3 => report.omega3 = Some(self.check_omega3()),
                Property::Psi => report.psi = Some(self.check_psi()),
                Property::WidthExtensible => {
                    report.width_extensible = Some(check_width_extensible(&self.poset))
                }
                Property::InterleavingConsistent => {
                    report.interleaving_consistent =
                        Some(check_interleaving_consistent(&self.poset)?)
                }
            }
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateShape {
    pub lens: Vec<usize>,
    pub pairs: Vec<((usize, usize), (usize, usize))>,
}

/// A verdict, with a witness whenever it is negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn holds() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn fails(witness: Witness) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Counterexamples, expressed with state ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two endpoint states that are ordered (`lower < upper`).
    Ordered { lower: String, upper: String },
    /// `lower < middle`, `predecessor < upper`, `predecessor` directly
    /// precedes `middle`, yet `lower` is not below `upper`.
    Transitivity {
        lower: String,
        middle: String,
        predecessor: String,
        upper: String,
    },
    /// `from_first < to_second` and `from_second < to_first`, where each
    /// `from` directly precedes the `to` on the same chain.
    Crossing {
        from_first: String,
        to_second: String,
        from_second: String,
        to_first: String,
    },
    /// An antichain with no width-antichain above it (width-extensibility),
    /// or a width-antichain with no one-step successor
    /// (interleaving-consistency).
    Antichain { members: Vec<String> },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Ordered { lower, upper } => write!(f, "{lower} < {upper}"),
            Witness::Transitivity {
                lower,
                middle,
                predecessor,
                upper,
            } => write!(
                f,
                "{lower} < {middle} and {predecessor} < {upper} but not {lower} < {upper}"
            ),
            Witness::Crossing {
                from_first,
                to_second,
                from_second,
                to_first,
            } => write!(f, "{from_first} < {to_second} and {from_second} < {to_first}"),
            Witness::Antichain { members } => write!(f, "{{{}}}", members.join(", ")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Omega1,
    Omega2,
    Omega3,
    Psi,
    WidthExtensible,
    InterleavingConsistent,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Omega1,
        Property::Omega2,
        Property::Omega3,
        Property::Psi,
        Property::WidthExtensible,
        Property::InterleavingConsistent,
    ];

    pub fn parse(s: &str) -> Option<Property> {
        Some(match s {
            "omega1" => Property::Omega1,
            "omega2" => Property::Omega2,
            "omega3" => Property::Omega3,
            "psi" => Property::Psi,
            "we" => Property::WidthExtensible,
            "ic" => Property::InterleavingConsistent,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega1: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega2: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega3: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width_extensible: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interleaving_consistent: Option<Verdict>,
}

/// Longest chain strictly below each element.
fn heights(p: &Poset) -> Vec<usize> {
    let mut h = vec![0; p.len()];
    for &v in p.linear_extension() {
        h[v] = p.down_set(v).ones().map(|u| h[u] + 1).max().unwrap_or(0);
    }
    h
}

/// Width-extensibility by the size-two reduction.
///
/// With a minimum chain partition, an antichain of size at most two extends
/// to a width-antichain iff on every chain it misses, the states
/// incomparable to all of its members form a nonempty interval. Pairwise
/// nonempty intersections of intervals on a line have a common point, which
/// is what makes size two enough. Returns a failing antichain of size one
/// or two; among several, the one with the greatest total height wins, ties
/// broken by index.
pub fn width_extensible_witness(p: &Poset) -> Option<Antichain> {
    let cp = p.minimum_chain_partition();
    width_extensible_witness_with(p, &cp)
}

pub(crate) fn width_extensible_witness_with(p: &Poset, cp: &ChainPartition) -> Option<Antichain> {
    let n = p.len();
    let intervals: Vec<Vec<Option<Interval>>> = (0..n)
        .map(|s| {
            (0..cp.len())
                .map(|c| p.incomparable_interval(cp, s, c).expect("valid indices"))
                .collect()
        })
        .collect();
    let height = heights(p);
    let best = |cands: Vec<Vec<usize>>| {
        cands
            .into_iter()
            .max_by(|a, b| {
                let ha: usize = a.iter().map(|&e| height[e]).sum();
                let hb: usize = b.iter().map(|&e| height[e]).sum();
                ha.cmp(&hb).then_with(|| b.cmp(a))
            })
            .map(Antichain::new)
    };

    let singles: Vec<Vec<usize>> = (0..n)
        .filter(|&s| (0..cp.len()).any(|c| c != cp.chain_of(s) && intervals[s][c].is_none()))
        .map(|s| vec![s])
        .collect();
    if !singles.is_empty() {
        return best(singles);
    }

    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !p.concurrent(a, b) {
                continue;
            }
            let blocked = (0..cp.len()).any(|c| {
                c != cp.chain_of(a)
                    && c != cp.chain_of(b)
                    && match (intervals[a][c], intervals[b][c]) {
                        (Some(x), Some(y)) => x.intersect(y).is_none(),
                        _ => true,
                    }
            });
            if blocked {
                pairs.push(vec![a, b]);
            }
        }
    }
    best(pairs)
}

/// Decides width-extensibility of a bare poset.
pub fn check_width_extensible(p: &Poset) -> Verdict {
    match width_extensible_witness(p) {
        None => Verdict::holds(),
        Some(a) => Verdict::fails(Witness::Antichain {
            members: a.names(p),
        }),
    }
}

/// Decides interleaving-consistency of a bare poset.
///
/// Width-extensible posets go through the no-crossing condition on a
/// minimum chain partition; when it fails, the witness is the largest
/// width-antichain containing the lower crossing state and the highest
/// state of the other chain still concurrent to it, which has no one-step
/// successor. Other posets are decided by exhaustive enumeration and may
/// exceed the oracle bound.
pub fn check_interleaving_consistent(p: &Poset) -> Result<Verdict> {
    if width_extensible_witness(p).is_some() {
        return Ok(match oracle::interleaving_consistent_by_definition(p)? {
            None => Verdict::holds(),
            Some(w) => Verdict::fails(Witness::Antichain {
                members: w.names(p),
            }),
        });
    }
    let sm = StateModel::from_poset(p.clone());
    let Some((i, s, j, _t)) = sm.psi_violation() else {
        return Ok(Verdict::holds());
    };
    let cp = sm.chains();
    let low = sm.state(i, s - 1);
    let Some(on_j) = p.incomparable_interval(cp, low, j)? else {
        return Err(Error::Internal("crossing state has no partner".into()));
    };
    let partner = sm.state(j, on_j.hi);
    let mut members = vec![low, partner];
    for c in (0..sm.n()).filter(|&c| c != i && c != j) {
        let x = p.incomparable_interval(cp, low, c)?;
        let y = p.incomparable_interval(cp, partner, c)?;
        let Some(common) = x.zip(y).and_then(|(x, y)| x.intersect(y)) else {
            return Err(Error::Internal("width-extensible poset lost a partner".into()));
        };
        members.push(sm.state(c, common.hi));
    }
    debug_assert!(p.is_antichain(&members));
    Ok(Verdict::fails(Witness::Antichain {
        members: p.names(&members),
    }))
}

/// Order between two width-antichains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AntichainOrder {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// Compares two width-antichains of `p`, given by id.
pub fn compare_width_antichains<S: AsRef<str>>(p: &Poset, a: &[S], b: &[S]) -> Result<AntichainOrder> {
    let width = p.width().0;
    let a = resolve_width_antichain(p, a, width)?;
    let b = resolve_width_antichain(p, b, width)?;
    Ok(compare_antichains(p, &a, &b))
}

fn resolve_width_antichain<S: AsRef<str>>(p: &Poset, ids: &[S], width: usize) -> Result<Vec<usize>> {
    let mut v = p.resolve(ids)?;
    v.sort_unstable();
    v.dedup();
    if v.len() != width || !p.is_antichain(&v) {
        return Err(Error::NotWidthAntichain(format!("{{{}}}", p.names(&v).join(", "))));
    }
    Ok(v)
}

pub(crate) fn compare_antichains(p: &Poset, a: &[usize], b: &[usize]) -> AntichainOrder {
    if a == b {
        return AntichainOrder::Equal;
    }
    match (oracle::antichain_leq(p, a, b), oracle::antichain_leq(p, b, a)) {
        (true, _) => AntichainOrder::Less,
        (_, true) => AntichainOrder::Greater,
        _ => AntichainOrder::Incomparable,
    }
}

/// A consistent cut of a state model: one state per chain, given by its
/// position on that chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WidthAntichainCut {
    pub positions: Vec<usize>,
}

impl WidthAntichainCut {
    pub fn new(positions: Vec<usize>) -> Self {
        WidthAntichainCut { positions }
    }

    /// Element indices of the chosen states.
    pub fn states(&self, sm: &StateModel) -> Vec<usize> {
        self.positions
            .iter()
            .enumerate()
            .map(|(c, &k)| sm.state(c, k))
            .collect()
    }

    /// State ids, sorted.
    pub fn names(&self, sm: &StateModel) -> Vec<String> {
        sm.poset().names(&self.states(sm))
    }

    /// Builds a cut from state ids, one per chain, pairwise concurrent.
    pub fn from_ids<S: AsRef<str>>(sm: &StateModel, ids: &[S]) -> Result<Self> {
        let states = sm.poset().resolve(ids)?;
        let describe = || format!("{{{}}}", sm.poset().names(&states).join(", "));
        let mut positions = vec![usize::MAX; sm.n()];
        for &s in &states {
            let c = sm.chains().chain_of(s);
            if positions[c] != usize::MAX {
                return Err(Error::NotWidthAntichain(describe()));
            }
            positions[c] = sm.chains().position(s);
        }
        if positions.contains(&usize::MAX) || !sm.poset().is_antichain(&states) {
            return Err(Error::NotWidthAntichain(describe()));
        }
        Ok(WidthAntichainCut { positions })
    }

    /// True iff the chosen states are pairwise concurrent.
    pub fn is_consistent(&self, sm: &StateModel) -> bool {
        self.positions.len() == sm.n() && sm.poset().is_antichain(&self.states(sm))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chains_model(chains: &[&[&str]], edges: &[(&str, &str)]) -> StateModel {
        let mut ids = Vec::new();
        let mut pairs = Vec::new();
        for c in chains {
            ids.extend(c.iter().map(|s| s.to_string()));
            pairs.extend(c.windows(2).map(|w| (w[0].to_string(), w[1].to_string())));
        }
        pairs.extend(edges.iter().map(|&(a, b)| (a.to_string(), b.to_string())));
        let p = Poset::new(ids, pairs).unwrap();
        let chains: Vec<Vec<&str>> = chains.iter().map(|c| c.to_vec()).collect();
        StateModel::from_ids(p, &chains).unwrap()
    }

    fn one_message_states() -> StateModel {
        chains_model(
            &[&["1.0", "1.1", "1.2", "1.3"], &["2.0", "2.1", "2.2", "2.3"]],
            &[("1.1", "2.2")],
        )
    }

    fn sync_barrier_states() -> StateModel {
        chains_model(
            &[&["1.0", "1.1", "1.2", "1.3"], &["2.0", "2.1", "2.2", "2.3"]],
            &[("1.1", "2.2"), ("2.1", "1.2")],
        )
    }

    fn stuck_single() -> StateModel {
        chains_model(&[&["a", "b", "c"], &["d", "e"]], &[("d", "b"), ("b", "e")])
    }

    #[test]
    fn omega1_cases() {
        assert!(one_message_states().check_omega1().holds);
        assert!(stuck_single().check_omega1().holds);
        let bad = chains_model(&[&["1.0", "1.1"], &["2.0", "2.1"]], &[("1.0", "2.0")]);
        assert_eq!(
            bad.check_omega1(),
            Verdict::fails(Witness::Ordered {
                lower: "1.0".into(),
                upper: "2.0".into()
            })
        );
    }

    #[test]
    fn omega2_cases() {
        assert!(one_message_states().check_omega2().holds);
        // c and e are concurrent in the invalid poset; its finals pass.
        assert!(stuck_single().check_omega2().holds);
        let bad = chains_model(&[&["a", "b", "c"], &["d", "e"]], &[("c", "e")]);
        assert!(!bad.check_omega2().holds);
        assert!(chains_model(&[&["x", "y"]], &[]).check_omega2().holds);
    }

    #[test]
    fn omega3_cases() {
        assert!(one_message_states().check_omega3().holds);
        assert!(sync_barrier_states().check_omega3().holds);
        let v = stuck_single().check_omega3();
        assert!(!v.holds);
        assert_eq!(
            v.witness,
            Some(Witness::Transitivity {
                lower: "b".into(),
                middle: "e".into(),
                predecessor: "d".into(),
                upper: "b".into()
            })
        );
    }

    #[test]
    fn psi_cases() {
        assert!(one_message_states().check_psi().holds);
        assert_eq!(
            sync_barrier_states().check_psi(),
            Verdict::fails(Witness::Crossing {
                from_first: "1.1".into(),
                to_second: "2.2".into(),
                from_second: "2.1".into(),
                to_first: "1.2".into()
            })
        );
        assert!(chains_model(&[&["a", "b"], &["c", "d"]], &[]).check_psi().holds);
    }

    #[test]
    fn interleaving() {
        assert!(check_interleaving_consistent(one_message_states().poset()).unwrap().holds);
        let v = check_interleaving_consistent(sync_barrier_states().poset()).unwrap();
        assert!(!v.holds);
        assert_eq!(
            v.witness,
            Some(Witness::Antichain {
                members: vec!["1.1".into(), "2.1".into()]
            })
        );
        let single = chains_model(&[&["a", "b", "c"]], &[]);
        assert!(check_interleaving_consistent(single.poset()).unwrap().holds);
        let empty = Poset::new(Vec::<String>::new(), Vec::<(&str, &str)>::new()).unwrap();
        assert!(check_interleaving_consistent(&empty).unwrap().holds);
        assert!(check_width_extensible(&empty).holds);
    }

    #[test]
    fn antichain_comparisons() {
        let sm = one_message_states();
        let p = sm.poset();
        assert_eq!(
            compare_width_antichains(p, &["1.0", "2.0"], &["1.3", "2.3"]).unwrap(),
            AntichainOrder::Less
        );
        assert_eq!(
            compare_width_antichains(p, &["1.3", "2.3"], &["1.0", "2.0"]).unwrap(),
            AntichainOrder::Greater
        );
        assert_eq!(
            compare_width_antichains(p, &["1.0", "2.0"], &["2.0", "1.0"]).unwrap(),
            AntichainOrder::Equal
        );
        let d = sync_barrier_states();
        assert_eq!(
            compare_width_antichains(d.poset(), &["1.1", "2.0"], &["1.0", "2.1"]).unwrap(),
            AntichainOrder::Incomparable
        );
        assert!(matches!(
            compare_width_antichains(p, &["1.1", "2.2"], &["1.0", "2.0"]),
            Err(Error::NotWidthAntichain(_))
        ));
        assert!(matches!(
            compare_width_antichains(p, &["1.0"], &["1.0", "2.0"]),
            Err(Error::NotWidthAntichain(_))
        ));
    }

    #[test]
    fn cut_from_ids() {
        let sm = one_message_states();
        let cut = WidthAntichainCut::from_ids(&sm, &["1.2", "2.2"]).unwrap();
        assert_eq!(cut.positions, vec![2, 2]);
        assert!(WidthAntichainCut::from_ids(&sm, &["1.1", "2.2"]).is_err());
        assert!(WidthAntichainCut::from_ids(&sm, &["1.1", "1.2"]).is_err());
        assert!(WidthAntichainCut::from_ids(&sm, &["1.1"]).is_err());
    }

    #[test]
    fn property_parsing() {
        assert_eq!(Property::parse("we"), Some(Property::WidthExtensible));
        assert_eq!(Property::parse("nope"), None);
    }
}
