//! Integral max-flow (Dinic) on a directed network where undirected edges are
//! modeled as a pair of opposite arcs sharing one capacity.

use std::collections::VecDeque;

pub const INF: u64 = u64::MAX / 4;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u64,
    /// index of the paired arc
    rev: usize,
    /// caller-supplied label for decomposition
    tag: Option<usize>,
    /// original capacity, used for net-flow readout
    base: u64,
}

#[derive(Debug, Clone, Default)]
pub struct Network {
    adj: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
    from: Vec<usize>,
}

impl Network {
    pub fn new(nodes: usize) -> Self {
        Network { adj: vec![Vec::new(); nodes], arcs: Vec::new(), from: Vec::new() }
    }

    pub fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn num_nodes(&self) -> usize {
        self.adj.len()
    }

    fn push_pair(&mut self, u: usize, v: usize, cap_uv: u64, cap_vu: u64, tag: Option<usize>) -> usize {
        let a = self.arcs.len();
        self.arcs.push(Arc { to: v, cap: cap_uv, rev: a + 1, tag, base: cap_uv });
        self.arcs.push(Arc { to: u, cap: cap_vu, rev: a, tag, base: cap_vu });
        self.from.push(u);
        self.from.push(v);
        self.adj[u].push(a);
        self.adj[v].push(a + 1);
        a
    }

    /// Directed arc `u -> v`.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: u64, tag: Option<usize>) -> usize {
        self.push_pair(u, v, cap, 0, tag)
    }

    /// Undirected edge with capacity `cap` in either direction.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: u64, tag: Option<usize>) -> usize {
        self.push_pair(u, v, cap, cap, tag)
    }

    fn bfs(&self, s: usize, t: usize, level: &mut [i64]) -> bool {
        level.iter_mut().for_each(|l| *l = -1);
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && level[arc.to] < 0 {
                    level[arc.to] = level[u] + 1;
                    q.push_back(arc.to);
                }
            }
        }
        level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: u64, level: &[i64], it: &mut [usize]) -> u64 {
        if u == t {
            return pushed;
        }
        while it[u] < self.adj[u].len() {
            let a = self.adj[u][it[u]];
            let (to, cap) = (self.arcs[a].to, self.arcs[a].cap);
            if cap > 0 && level[to] == level[u] + 1 {
                let d = self.dfs(to, t, pushed.min(cap), level, it);
                if d > 0 {
                    self.arcs[a].cap -= d;
                    let r = self.arcs[a].rev;
                    self.arcs[r].cap += d;
                    return d;
                }
            }
            it[u] += 1;
        }
        0
    }

    /// Augments up to `limit` units from `s` to `t`; returns the amount pushed.
    pub fn max_flow_limited(&mut self, s: usize, t: usize, limit: u64) -> u64 {
        let n = self.adj.len();
        let mut level = vec![-1i64; n];
        let mut total = 0u64;
        while total < limit && self.bfs(s, t, &mut level) {
            let mut it = vec![0usize; n];
            loop {
                let d = self.dfs(s, t, limit - total, &level, &mut it);
                if d == 0 {
                    break;
                }
                total += d;
                if total >= limit {
                    break;
                }
            }
        }
        total
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        self.max_flow_limited(s, t, INF)
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    q.push_back(arc.to);
                }
            }
        }
        seen
    }

    /// Nodes that can still reach `t` in the residual network.
    pub fn residual_coreachable(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[t] = true;
        let mut q = VecDeque::from([t]);
        while let Some(v) = q.pop_front() {
            for &a in &self.adj[v] {
                // arc a leaves v; its partner enters v from arcs[a].to
                let r = self.arcs[a].rev;
                let u = self.arcs[a].to;
                if self.arcs[r].cap > 0 && !seen[u] {
                    seen[u] = true;
                    q.push_back(u);
                }
            }
        }
        seen
    }

    /// Net flow on arc `a` in its own direction (negative means reverse).
    fn net(&self, a: usize) -> i64 {
        let arc = &self.arcs[a];
        arc.base as i64 - arc.cap as i64
    }

    /// Splits the current flow into `s`-`t` walks, dropping circulations.
    /// Each walk is returned as a list of `(from, to, tag)` steps.
    pub fn decompose(&self, s: usize, t: usize) -> Vec<Vec<Step>> {
        // units[u] = list of (arc index, remaining units) with positive net flow out of u
        let n = self.adj.len();
        let mut units: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
        let mut seen_pair = vec![false; self.arcs.len()];
        for a in 0..self.arcs.len() {
            if seen_pair[a] {
                continue;
            }
            let r = self.arcs[a].rev;
            seen_pair[a] = true;
            seen_pair[r] = true;
            // flow on the pair: f = base_a - cap_a, net from a's tail to head
            let f = self.net(a);
            if f > 0 {
                units[self.from[a]].push((a, f as u64));
            } else if f < 0 {
                units[self.from[r]].push((r, (-f) as u64));
            }
        }
        let mut cursor = vec![0usize; n];
        let mut out = Vec::new();
        loop {
            let mut stack: Vec<usize> = vec![s];
            let mut arcs_used: Vec<usize> = Vec::new();
            let mut on_stack = vec![usize::MAX; n];
            on_stack[s] = 0;
            let mut found = false;
            loop {
                let u = *stack.last().unwrap();
                if u == t {
                    found = true;
                    break;
                }
                while cursor[u] < units[u].len() && units[u][cursor[u]].1 == 0 {
                    cursor[u] += 1;
                }
                if cursor[u] >= units[u].len() {
                    break;
                }
                let (a, _) = units[u][cursor[u]];
                units[u][cursor[u]].1 -= 1;
                let v = self.arcs[a].to;
                if on_stack[v] != usize::MAX {
                    // close a cycle: discard it
                    let p = on_stack[v];
                    for w in stack.drain(p + 1..) {
                        on_stack[w] = usize::MAX;
                    }
                    arcs_used.truncate(p);
                } else {
                    on_stack[v] = stack.len();
                    stack.push(v);
                    arcs_used.push(a);
                }
            }
            if !found {
                break;
            }
            out.push(
                arcs_used
                    .iter()
                    .map(|&a| Step { from: self.from[a], to: self.arcs[a].to, tag: self.arcs[a].tag })
                    .collect(),
            );
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub from: usize,
    pub to: usize,
    pub tag: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undirected_diamond() {
        let mut net = Network::new(4);
        net.add_edge(0, 1, 1, Some(0));
        net.add_edge(0, 2, 1, Some(1));
        net.add_edge(1, 3, 1, Some(2));
        net.add_edge(2, 3, 1, Some(3));
        net.add_edge(1, 2, 1, Some(4));
        assert_eq!(net.max_flow(0, 3), 2);
        let paths = net.decompose(0, 3);
        assert_eq!(paths.len(), 2);
        for p in &paths {
            assert_eq!(p.first().unwrap().from, 0);
            assert_eq!(p.last().unwrap().to, 3);
        }
    }

    #[test]
    fn residual_sides() {
        let mut net = Network::new(3);
        net.add_edge(0, 1, 2, None);
        net.add_edge(1, 2, 1, None);
        assert_eq!(net.max_flow(0, 2), 1);
        let side = net.residual_reachable(0);
        assert_eq!(side, vec![true, true, false]);
        let co = net.residual_coreachable(2);
        assert_eq!(co, vec![false, false, true]);
    }

    #[test]
    fn limited_flow_stops() {
        let mut net = Network::new(2);
        for _ in 0..5 {
            net.add_edge(0, 1, 1, None);
        }
        assert_eq!(net.max_flow_limited(0, 1, 3), 3);
    }
}
