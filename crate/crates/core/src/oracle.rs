//! Exhaustive reference procedures.
//!
//! Everything here works straight from the definitions by enumerating
//! subsets, so it is exponential and guarded by an element bound. These are
//! the ground truth the fast algorithms are checked against, and the
//! fallback for questions with no fast path.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::poset::{Antichain, Poset};

pub const DEFAULT_ORACLE_BOUND: usize = 20;

/// Environment variable overriding [`DEFAULT_ORACLE_BOUND`].
pub const ORACLE_BOUND_ENV: &str = "CONCUR_ORACLE_BOUND";

/// Bound in effect: the environment override if it parses, else the default.
pub fn oracle_bound() -> usize {
    std::env::var(ORACLE_BOUND_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_BOUND)
}

fn check_bound(p: &Poset, bound: usize) -> Result<()> {
    // Subset masks are u64.
    if p.len() > bound || p.len() > 63 {
        return Err(Error::OracleBoundExceeded {
            size: p.len(),
            bound: bound.min(63),
        });
    }
    Ok(())
}

/// Element indices sorted by id, so enumeration order is lexicographic.
fn lexicographic_order(p: &Poset) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| p.id(a).cmp(p.id(b)));
    order
}

/// Every antichain exactly once, optionally only those of one size.
pub fn enumerate_antichains(p: &Poset, size: Option<usize>) -> Result<Vec<Antichain>> {
    enumerate_antichains_bounded(p, size, oracle_bound())
}

pub fn enumerate_antichains_bounded(
    p: &Poset,
    size: Option<usize>,
    bound: usize,
) -> Result<Vec<Antichain>> {
    check_bound(p, bound)?;
    let order = lexicographic_order(p);
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend_antichains(p, &order, 0, &mut current, size, &mut out);
    Ok(out)
}

fn extend_antichains(
    p: &Poset,
    order: &[usize],
    from: usize,
    current: &mut Vec<usize>,
    size: Option<usize>,
    out: &mut Vec<Antichain>,
) {
    if size.is_none_or(|s| s == current.len()) {
        out.push(Antichain::new(current.clone()));
    }
    if size.is_some_and(|s| current.len() >= s) {
        return;
    }
    for k in from..order.len() {
        let e = order[k];
        if current.iter().all(|&c| p.concurrent(c, e)) {
            current.push(e);
            extend_antichains(p, order, k + 1, current, size, out);
            current.pop();
        }
    }
}

/// Width-antichains, by exhaustive search.
pub fn width_antichains(p: &Poset) -> Result<Vec<Antichain>> {
    let all = enumerate_antichains(p, None)?;
    let w = all.iter().map(Antichain::len).max().unwrap_or(0);
    Ok(all.into_iter().filter(|a| a.len() == w).collect())
}

/// Lazily yields every downset of `p` as a sorted index list.
pub struct Downsets<'a> {
    p: &'a Poset,
    order: Vec<usize>,
    mask: u64,
    end: u64,
}

impl Iterator for Downsets<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        while self.mask < self.end {
            let mask = self.mask;
            self.mask += 1;
            let mut set = FixedBitSet::with_capacity(self.p.len());
            for (bit, &e) in self.order.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    set.insert(e);
                }
            }
            if self.p.is_downset(&set) {
                return Some(set.ones().collect());
            }
        }
        None
    }
}

/// All downsets by subset enumeration.
pub fn enumerate_downsets_bruteforce(p: &Poset) -> Result<Downsets<'_>> {
    enumerate_downsets_bounded(p, oracle_bound())
}

pub fn enumerate_downsets_bounded(p: &Poset, bound: usize) -> Result<Downsets<'_>> {
    check_bound(p, bound)?;
    Ok(Downsets {
        p,
        order: lexicographic_order(p),
        mask: 0,
        end: 1u64 << p.len(),
    })
}

/// Width-extensibility straight from the definition: every antichain lies
/// in some width-antichain. Returns a non-extensible antichain on failure.
pub fn width_extensible_by_definition(p: &Poset) -> Result<Option<Antichain>> {
    let all = enumerate_antichains(p, None)?;
    let w = all.iter().map(Antichain::len).max().unwrap_or(0);
    let widest: Vec<&Antichain> = all.iter().filter(|a| a.len() == w).collect();
    for a in &all {
        let extends = widest
            .iter()
            .any(|wa| a.members().iter().all(|&e| wa.contains(e)));
        if !extends {
            return Ok(Some(a.clone()));
        }
    }
    Ok(None)
}

/// `a <= b` in the antichain order: every member of `a` is below or equal
/// to some member of `b`.
pub fn antichain_leq(p: &Poset, a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|&x| b.iter().any(|&y| p.leq(x, y)))
}

/// Interleaving-consistency straight from the definition. On failure
/// returns the width-antichain with no one-step successor.
pub fn interleaving_consistent_by_definition(p: &Poset) -> Result<Option<Antichain>> {
    let widest = width_antichains(p)?;
    let top = widest
        .iter()
        .find(|a| widest.iter().all(|b| antichain_leq(p, b.members(), a.members())));
    for w in &widest {
        if Some(w) == top {
            continue;
        }
        let stepped = widest.iter().any(|v| {
            v != w
                && antichain_leq(p, w.members(), v.members())
                && w.members().iter().filter(|&&e| v.contains(e)).count() + 1 == w.len()
        });
        if !stepped {
            return Ok(Some(w.clone()));
        }
    }
    Ok(None)
}
