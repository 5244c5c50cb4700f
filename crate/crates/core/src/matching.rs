//! Dilworth decomposition through bipartite matching.
//!
//! The split graph has a left and a right copy of every element and an edge
//! `a_L -> b_R` whenever `a < b`. A maximum matching `M` (Hopcroft-Karp)
//! turns into a minimum chain partition of size `|P| - |M|` by following
//! matched edges, and König's vertex cover yields an antichain of the same
//! size: the elements whose left copy is reachable from a free left vertex
//! by an alternating path while their right copy is not.

use std::collections::VecDeque;

use crate::poset::{Antichain, ChainPartition, Poset};

const NONE: usize = usize::MAX;

pub(crate) struct Dilworth {
    pub partition: ChainPartition,
    pub antichain: Antichain,
}

pub(crate) fn dilworth(p: &Poset) -> Dilworth {
    let n = p.len();
    let adj: Vec<Vec<usize>> = (0..n).map(|a| p.up_set(a).ones().collect()).collect();
    let (match_left, match_right) = hopcroft_karp(&adj, n);

    let mut chains = Vec::new();
    for start in 0..n {
        if match_right[start] != NONE {
            continue;
        }
        let mut chain = vec![start];
        let mut v = start;
        while match_left[v] != NONE {
            v = match_left[v];
            chain.push(v);
        }
        chains.push(chain);
    }
    let partition = ChainPartition::new_unchecked(chains, n);

    // König: alternate from free left vertices.
    let mut seen_left = vec![false; n];
    let mut seen_right = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&u| match_left[u] == NONE).collect();
    for &u in &queue {
        seen_left[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if seen_right[v] || match_left[u] == v {
                continue;
            }
            seen_right[v] = true;
            let w = match_right[v];
            if w != NONE && !seen_left[w] {
                seen_left[w] = true;
                queue.push_back(w);
            }
        }
    }
    let antichain = Antichain::new((0..n).filter(|&x| seen_left[x] && !seen_right[x]).collect());
    debug_assert_eq!(antichain.len(), partition.len());
    debug_assert!(p.is_antichain(antichain.members()));

    Dilworth {
        partition,
        antichain,
    }
}

fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> (Vec<usize>, Vec<usize>) {
    let n_left = adj.len();
    let mut match_left = vec![NONE; n_left];
    let mut match_right = vec![NONE; n_right];
    let mut dist = vec![0usize; n_left];

    loop {
        // BFS layering from free left vertices.
        let mut queue = VecDeque::new();
        for u in 0..n_left {
            if match_left[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_right[v];
                if w == NONE {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }

        let mut next = vec![0usize; n_left];
        for u in 0..n_left {
            if match_left[u] == NONE {
                augment(u, adj, &mut match_left, &mut match_right, &mut dist, &mut next);
            }
        }
    }
    (match_left, match_right)
}

/// Iterative layered DFS for one augmenting path starting at `root`.
fn augment(
    root: usize,
    adj: &[Vec<usize>],
    match_left: &mut [usize],
    match_right: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    let mut path: Vec<usize> = vec![root];
    while let Some(&u) = path.last() {
        if next[u] == adj[u].len() {
            dist[u] = usize::MAX;
            path.pop();
            continue;
        }
        let v = adj[u][next[u]];
        next[u] += 1;
        let w = match_right[v];
        if w == NONE {
            // Flip the path: each left vertex takes the right vertex it
            // was exploring.
            let mut v = v;
            while let Some(u) = path.pop() {
                let prev = match_left[u];
                match_left[u] = v;
                match_right[v] = u;
                v = prev;
            }
            return true;
        }
        if dist[w] == dist[u].wrapping_add(1) {
            path.push(w);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use crate::poset::Poset;

    #[test]
    fn chain_of_four_has_width_one() {
        let p = Poset::new(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        let (w, a) = p.width();
        assert_eq!(w, 1);
        assert_eq!(a.len(), 1);
        assert_eq!(p.minimum_chain_partition().len(), 1);
    }

    #[test]
    fn antichain_of_three() {
        let p = Poset::new(["a", "b", "c"], Vec::<(&str, &str)>::new()).unwrap();
        let cp = p.minimum_chain_partition();
        assert_eq!(cp.len(), 3);
        assert!(cp.chains().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn empty_poset() {
        let p = Poset::new(Vec::<String>::new(), Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(p.width().0, 0);
        assert!(p.minimum_chain_partition().is_empty());
    }
}
