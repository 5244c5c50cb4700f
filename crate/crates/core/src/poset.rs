//! Finite strict partial orders over opaque string ids.
//!
//! A [`Poset`] is built from any relation whose transitive closure is
//! acyclic. The closure is computed eagerly and stored as bitset rows in
//! both directions; the cover relation is recomputed by transitive
//! reduction. All algorithms work on dense element indices (`usize`), which
//! follow declaration order.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::matching;

/// Outcome of comparing two elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    Less,
    Greater,
    EqualElement,
    Concurrent,
}

#[derive(Clone)]
pub struct Poset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    /// `up[a]` holds every `b` with `a < b`.
    up: Vec<FixedBitSet>,
    /// `down[b]` holds every `a` with `a < b`.
    down: Vec<FixedBitSet>,
    covers: Vec<(usize, usize)>,
    topo: Vec<usize>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<_> = self
            .covers
            .iter()
            .map(|&(a, b)| format!("{}<{}", self.ids[a], self.ids[b]))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.ids)
            .field("covers", &covers)
            .finish()
    }
}

impl Poset {
    /// Builds a poset from declared elements and any generating relation.
    ///
    /// The relation need not be transitive or reduced; its closure is taken.
    /// Fails with [`Error::Cycle`] if the closure is not irreflexive and
    /// with [`Error::UnknownElement`] if a pair names an undeclared element.
    pub fn new<I, S, R, A, B>(elements: I, relation: R) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        R: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut ids = Vec::new();
        let mut index = HashMap::new();
        for e in elements {
            let id: String = e.into();
            if index.insert(id.clone(), ids.len()).is_some() {
                return Err(Error::DuplicateElement(id));
            }
            ids.push(id);
        }
        let mut pairs = Vec::new();
        for (a, b) in relation {
            let a = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownElement(a.as_ref().to_string()))?;
            let b = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownElement(b.as_ref().to_string()))?;
            pairs.push((a, b));
        }
        Self::from_indexed(ids, index, &pairs)
    }

    /// Builds a poset over `ids` from index pairs.
    pub(crate) fn from_index_pairs(ids: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateElement(id.clone()));
            }
        }
        Self::from_indexed(ids, index, pairs)
    }

    fn from_indexed(
        ids: Vec<String>,
        index: HashMap<String, usize>,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let n = ids.len();
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in pairs {
            if a == b {
                return Err(Error::Cycle(vec![ids[a].clone(), ids[a].clone()]));
            }
            succ[a].push(b);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }

        let topo = match topological_order(&succ) {
            Some(order) => order,
            None => return Err(Error::Cycle(find_cycle(&succ, &ids))),
        };

        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &v in topo.iter().rev() {
            let mut row = FixedBitSet::with_capacity(n);
            for &w in &succ[v] {
                row.insert(w);
                row.union_with(&up[w]);
            }
            up[v] = row;
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.ones() {
                down[b].insert(a);
            }
        }

        let mut covers = Vec::new();
        for a in 0..n {
            for b in up[a].ones() {
                if up[a].is_disjoint(&down[b]) {
                    covers.push((a, b));
                }
            }
        }

        Ok(Poset {
            ids,
            index,
            up,
            down,
            covers,
            topo,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Index of `id`, or [`Error::UnknownElement`].
    pub fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    /// Resolves a list of ids to indices.
    pub fn resolve<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<usize>> {
        ids.iter().map(|s| self.require(s.as_ref())).collect()
    }

    /// Ids of `elements`, sorted lexicographically.
    pub fn names(&self, elements: &[usize]) -> Vec<String> {
        let mut out: Vec<String> = elements.iter().map(|&e| self.ids[e].clone()).collect();
        out.sort();
        out
    }

    #[inline]
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.up[a].contains(b)
    }

    #[inline]
    pub fn concurrent(&self, a: usize, b: usize) -> bool {
        a != b && !self.up[a].contains(b) && !self.up[b].contains(a)
    }

    pub fn compare(&self, a: usize, b: usize) -> Comparison {
        if a == b {
            Comparison::EqualElement
        } else if self.less(a, b) {
            Comparison::Less
        } else if self.less(b, a) {
            Comparison::Greater
        } else {
            Comparison::Concurrent
        }
    }

    /// Compares two elements by id.
    pub fn comparable(&self, a: &str, b: &str) -> Result<Comparison> {
        Ok(self.compare(self.require(a)?, self.require(b)?))
    }

    /// Elements strictly above `a`.
    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    /// Elements strictly below `b`.
    pub fn down_set(&self, b: usize) -> &FixedBitSet {
        &self.down[b]
    }

    /// Cover relation (transitive reduction), sorted by index.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Every pair of the strict order.
    pub fn relation_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.ones().map(move |b| (a, b)))
    }

    /// A linear extension of the order.
    pub fn linear_extension(&self) -> &[usize] {
        &self.topo
    }

    pub fn is_antichain(&self, elements: &[usize]) -> bool {
        elements.iter().enumerate().all(|(k, &a)| {
            elements[k + 1..]
                .iter()
                .all(|&b| self.concurrent(a, b))
        })
    }

    /// True iff `set` is downward closed.
    pub fn is_downset(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|b| self.down[b].is_subset(set))
    }

    /// Maximal elements of `set`.
    pub fn maximal(&self, set: &[usize]) -> Vec<usize> {
        set.iter()
            .copied()
            .filter(|&a| !set.iter().any(|&b| self.less(a, b)))
            .collect()
    }

    /// Sub-poset on `keep` with the induced order, ids preserved.
    pub fn restrict(&self, keep: &[usize]) -> Poset {
        let ids: Vec<String> = keep.iter().map(|&k| self.ids[k].clone()).collect();
        let mut pairs = Vec::new();
        for (x, &a) in keep.iter().enumerate() {
            for (y, &b) in keep.iter().enumerate() {
                if self.less(a, b) {
                    pairs.push((x, y));
                }
            }
        }
        Poset::from_index_pairs(ids, &pairs).expect("restriction of a poset is a poset")
    }

    /// Width together with a maximum antichain.
    pub fn width(&self) -> (usize, Antichain) {
        let d = matching::dilworth(self);
        (d.antichain.len(), d.antichain)
    }

    /// A chain partition of minimum size; its size equals the width.
    pub fn minimum_chain_partition(&self) -> ChainPartition {
        matching::dilworth(self).partition
    }

    /// Elements of chain `chain` of `cp` incomparable to `s`, as a position
    /// range on that chain. `None` is the empty interval; the chain holding
    /// `s` always yields `None`.
    pub fn incomparable_interval(
        &self,
        cp: &ChainPartition,
        s: usize,
        chain: usize,
    ) -> Result<Option<Interval>> {
        if s >= self.len() {
            return Err(Error::UnknownElement(format!("#{s}")));
        }
        let members = cp.chains.get(chain).ok_or(Error::BadChainIndex(chain))?;
        if cp.chain_of(s) == chain {
            return Ok(None);
        }
        let lo = members.iter().position(|&v| !self.less(v, s));
        let hi = members.iter().rposition(|&v| !self.less(s, v));
        Ok(match (lo, hi) {
            (Some(lo), Some(hi)) if lo <= hi => Some(Interval { lo, hi }),
            _ => None,
        })
    }
}

/// Kahn's algorithm; `None` if the graph has a cycle.
fn topological_order(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for s in succ {
        for &w in s {
            indeg[w] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

fn find_cycle(succ: &[Vec<usize>], ids: &[String]) -> Vec<String> {
    // 0 = unvisited, 1 = on stack, 2 = done
    let n = succ.len();
    let mut state = vec![0u8; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < succ[v].len() {
                let w = succ[v][*next];
                *next += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut cycle = vec![w];
                        let mut u = v;
                        while u != w {
                            cycle.push(u);
                            u = parent[u];
                        }
                        cycle.push(w);
                        cycle.reverse();
                        return cycle.into_iter().map(|i| ids[i].clone()).collect();
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    Vec::new()
}

/// Disjoint chains covering every element, each listed low to high.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPartition {
    chains: Vec<Vec<usize>>,
    chain_of: Vec<usize>,
    position: Vec<usize>,
}

impl ChainPartition {
    /// Validates `chains` against `p`: disjoint, covering, and each chain
    /// strictly increasing.
    pub fn new(p: &Poset, chains: Vec<Vec<usize>>) -> Result<Self> {
        let mut chain_of = vec![usize::MAX; p.len()];
        let mut position = vec![usize::MAX; p.len()];
        for (c, chain) in chains.iter().enumerate() {
            if chain.is_empty() {
                return Err(Error::BadChainPartition(format!("chain {} is empty", c + 1)));
            }
            for (k, &e) in chain.iter().enumerate() {
                if e >= p.len() {
                    return Err(Error::UnknownElement(format!("#{e}")));
                }
                if chain_of[e] != usize::MAX {
                    return Err(Error::BadChainPartition(format!(
                        "`{}` appears in more than one chain",
                        p.id(e)
                    )));
                }
                chain_of[e] = c;
                position[e] = k;
                if k > 0 && !p.less(chain[k - 1], e) {
                    return Err(Error::BadChainPartition(format!(
                        "`{}` is not below `{}` in chain {}",
                        p.id(chain[k - 1]),
                        p.id(e),
                        c + 1
                    )));
                }
            }
        }
        if let Some(e) = chain_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::BadChainPartition(format!(
                "`{}` is not covered by any chain",
                p.id(e)
            )));
        }
        Ok(ChainPartition {
            chains,
            chain_of,
            position,
        })
    }

    /// Same as [`ChainPartition::new`] with chains given by id.
    pub fn from_ids<S: AsRef<str>>(p: &Poset, chains: &[Vec<S>]) -> Result<Self> {
        let chains = chains
            .iter()
            .map(|c| p.resolve(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, chains)
    }

    pub(crate) fn new_unchecked(chains: Vec<Vec<usize>>, len: usize) -> Self {
        let mut chain_of = vec![usize::MAX; len];
        let mut position = vec![usize::MAX; len];
        for (c, chain) in chains.iter().enumerate() {
            for (k, &e) in chain.iter().enumerate() {
                chain_of[e] = c;
                position[e] = k;
            }
        }
        ChainPartition {
            chains,
            chain_of,
            position,
        }
    }

    /// Number of chains.
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    pub fn chain(&self, c: usize) -> &[usize] {
        &self.chains[c]
    }

    pub fn chain_of(&self, e: usize) -> usize {
        self.chain_of[e]
    }

    pub fn position(&self, e: usize) -> usize {
        self.position[e]
    }

    /// Chains as lists of ids.
    pub fn names(&self, p: &Poset) -> Vec<Vec<String>> {
        self.chains
            .iter()
            .map(|c| c.iter().map(|&e| p.id(e).to_string()).collect())
            .collect()
    }
}

/// Pairwise-incomparable elements, kept sorted by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Antichain(Vec<usize>);

impl Antichain {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Antichain(members)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn names(&self, p: &Poset) -> Vec<String> {
        p.names(&self.0)
    }
}

/// Inclusive range of positions on one chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

// Empty intervals are represented as `None` by the callers.
#[allow(clippy::len_without_is_empty)]
impl Interval {
    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.lo <= pos && pos <= self.hi
    }

    pub fn intersect(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }
}
