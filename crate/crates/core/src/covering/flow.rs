//! Dinic maximum flow on a small dense-ish residual graph.
//!
//! Used to decide core-assignment feasibility exactly: sources feed per-set
//! quotas, each universe element carries unit capacity.

#[derive(Clone, Debug)]
struct Edge {
    to: usize,
    rev: usize,
    cap: i64,
}

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    graph: Vec<Vec<Edge>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> FlowNetwork {
        FlowNetwork { graph: vec![Vec::new(); nodes] }
    }

    /// Adds a directed edge and its residual twin; returns the forward edge's
    /// position in `from`'s adjacency list.
    pub fn add_edge(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let fwd = self.graph[from].len();
        let bwd = self.graph[to].len();
        self.graph[from].push(Edge { to, rev: bwd, cap });
        self.graph[to].push(Edge { to: from, rev: fwd, cap: 0 });
        fwd
    }

    /// Flow currently pushed through a forward edge added with capacity `orig`.
    pub fn flow_through(&self, from: usize, idx: usize, orig: i64) -> i64 {
        orig - self.graph[from][idx].cap
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let n = self.graph.len();
        let mut total = 0;
        loop {
            // BFS level graph
            let mut level = vec![usize::MAX; n];
            level[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for e in &self.graph[v] {
                    if e.cap > 0 && level[e.to] == usize::MAX {
                        level[e.to] = level[v] + 1;
                        queue.push_back(e.to);
                    }
                }
            }
            if level[t] == usize::MAX {
                return total;
            }
            // DFS blocking flow
            let mut it = vec![0usize; n];
            loop {
                let pushed = self.dfs(s, t, i64::MAX, &level, &mut it);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn dfs(&mut self, v: usize, t: usize, limit: i64, level: &[usize], it: &mut [usize]) -> i64 {
        if v == t {
            return limit;
        }
        while it[v] < self.graph[v].len() {
            let (to, cap) = {
                let e = &self.graph[v][it[v]];
                (e.to, e.cap)
            };
            if cap > 0 && level[to] == level[v] + 1 {
                let pushed = self.dfs(to, t, limit.min(cap), level, it);
                if pushed > 0 {
                    let rev = self.graph[v][it[v]].rev;
                    self.graph[v][it[v]].cap -= pushed;
                    self.graph[to][rev].cap += pushed;
                    return pushed;
                }
            }
            it[v] += 1;
        }
        0
    }
}
