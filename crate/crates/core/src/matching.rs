//! Maximum matchings: Hopcroft-Karp for bipartite graphs and Edmonds'
//! blossom search for general graphs. Both are iterative, so deep
//! augmenting paths cannot overflow the stack, and both scan adjacency
//! lists in the given order, which makes results deterministic.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

const NONE: usize = usize::MAX;
const INF: u32 = u32::MAX;

/// Maximum matching of a bipartite graph given as left adjacency lists over
/// right vertices `0..n_right`. Returns the mate of each left vertex.
///
/// Parallel edges are allowed.
pub fn hopcroft_karp(n_right: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n_left = adj.len();
    let mut mate_l = vec![NONE; n_left];
    let mut mate_r = vec![NONE; n_right];
    let mut dist = vec![INF; n_left];
    let mut queue = VecDeque::new();
    let mut it = vec![0usize; n_left];
    let mut stack = Vec::new();
    loop {
        queue.clear();
        for u in 0..n_left {
            if mate_l[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut reachable = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = mate_r[v];
                if w == NONE {
                    reachable = true;
                } else if dist[w] == INF {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !reachable {
            break;
        }
        it.iter_mut().for_each(|i| *i = 0);
        for s in 0..n_left {
            if mate_l[s] != NONE {
                continue;
            }
            stack.clear();
            stack.push(s);
            while let Some(&u) = stack.last() {
                if it[u] == adj[u].len() {
                    dist[u] = INF;
                    stack.pop();
                    continue;
                }
                let v = adj[u][it[u]];
                let w = mate_r[v];
                if w == NONE {
                    for &x in &stack {
                        let y = adj[x][it[x]];
                        mate_l[x] = y;
                        mate_r[y] = x;
                    }
                    break;
                } else if dist[w] != INF && dist[w] == dist[u] + 1 {
                    stack.push(w);
                } else {
                    it[u] += 1;
                }
            }
        }
    }
    mate_l.into_iter().map(|m| (m != NONE).then_some(m)).collect()
}

/// Grows a matching of a general graph until it has `target` edges or is
/// maximum.
///
/// `adj` must be symmetric. The starting matching is a greedy pass in
/// vertex order, then augmenting paths are searched from each exposed
/// vertex once; a vertex with no augmenting path never gets one later, so
/// when the result is below `target` it is a maximum matching.
pub fn general_matching(adj: &[Vec<usize>], target: usize) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut search = Blossom::new(adj);
    let mut size = 0;
    for v in 0..n {
        if size >= target {
            break;
        }
        if search.mate[v] != NONE {
            continue;
        }
        if let Some(&u) = adj[v].iter().find(|&&u| u != v && search.mate[u] == NONE) {
            search.mate[v] = u;
            search.mate[u] = v;
            size += 1;
        }
    }
    for root in 0..n {
        if size >= target {
            break;
        }
        if search.mate[root] != NONE || adj[root].is_empty() {
            continue;
        }
        if let Some(end) = search.find_path(root) {
            search.augment(end);
            size += 1;
        }
    }
    search.mate.into_iter().map(|m| (m != NONE).then_some(m)).collect()
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    on_path: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            on_path: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&mut self, mut a: usize, mut b: usize) -> usize {
        self.on_path.iter_mut().for_each(|x| *x = false);
        loop {
            a = self.base[a];
            self.on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if self.on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for i in 0..n {
            self.base[i] = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

/// Number of matched left vertices.
pub fn matching_size(mates: &[Option<usize>]) -> usize {
    mates.iter().filter(|m| m.is_some()).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_bipartite(n_right: usize, adj: &[Vec<usize>]) -> usize {
        fn go(u: usize, adj: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
            if u == adj.len() {
                return 0;
            }
            let mut best = go(u + 1, adj, used);
            for &v in &adj[u] {
                if !used[v] {
                    used[v] = true;
                    best = best.max(1 + go(u + 1, adj, used));
                    used[v] = false;
                }
            }
            best
        }
        go(0, adj, &mut vec![false; n_right])
    }

    fn brute_general(adj: &[Vec<usize>]) -> usize {
        fn go(v: usize, adj: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
            if v == adj.len() {
                return 0;
            }
            if used[v] {
                return go(v + 1, adj, used);
            }
            let mut best = go(v + 1, adj, used);
            used[v] = true;
            for &u in &adj[v] {
                if u > v && !used[u] {
                    used[u] = true;
                    best = best.max(1 + go(v + 1, adj, used));
                    used[u] = false;
                }
            }
            used[v] = false;
            best
        }
        go(0, adj, &mut vec![false; adj.len()])
    }

    fn lcg(seed: &mut u64) -> u64 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        *seed >> 33
    }

    #[test]
    fn hopcroft_karp_matches_brute_force() {
        let mut seed = 11u64;
        for _ in 0..300 {
            let nl = (lcg(&mut seed) % 7) as usize + 1;
            let nr = (lcg(&mut seed) % 7) as usize + 1;
            let adj: Vec<Vec<usize>> = (0..nl)
                .map(|_| (0..nr).filter(|_| lcg(&mut seed) % 3 == 0).collect())
                .collect();
            let m = hopcroft_karp(nr, &adj);
            let mut seen = vec![false; nr];
            for (u, v) in m.iter().enumerate() {
                if let Some(v) = *v {
                    assert!(adj[u].contains(&v) && !seen[v]);
                    seen[v] = true;
                }
            }
            assert_eq!(matching_size(&m), brute_bipartite(nr, &adj));
        }
    }

    #[test]
    fn blossom_matches_brute_force() {
        let mut seed = 5u64;
        for _ in 0..300 {
            let n = (lcg(&mut seed) % 9) as usize + 1;
            let mut adj = vec![Vec::new(); n];
            for a in 0..n {
                for b in a + 1..n {
                    if lcg(&mut seed) % 3 == 0 {
                        adj[a].push(b);
                        adj[b].push(a);
                    }
                }
            }
            let m = general_matching(&adj, usize::MAX);
            for (v, u) in m.iter().enumerate() {
                if let Some(u) = *u {
                    assert_eq!(m[u], Some(v));
                    assert!(adj[v].contains(&u));
                }
            }
            assert_eq!(matching_size(&m) / 2, brute_general(&adj));
        }
    }

    #[test]
    fn odd_cycle_with_tail_needs_a_blossom() {
        // triangle 0-1-2 with pendant vertices 3 (at 0) and 4 (at 2)
        let edges = [(0, 1), (1, 2), (2, 0), (0, 3), (2, 4)];
        let mut adj = vec![Vec::new(); 5];
        for (a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        assert_eq!(matching_size(&general_matching(&adj, usize::MAX)), 4);
    }
}
