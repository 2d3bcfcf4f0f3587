//! Simple undirected graphs on at most 64 vertices, with brute-force
//! stable-set and clique oracles.
//!
//! Vertices are indexed `0..n`. Lifted matrices reserve index 0 for the extra
//! coordinate, so vertex `i` sits at lifted index `i + 1`.

use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{guard, Error, Result};
use crate::linalg::SymMatrix;

pub const MAX_VERTICES: usize = 64;
pub const MAX_ENUMERATION: usize = 24;

/// Subset of vertices as a bit mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_vertices(vs: &[usize]) -> Self {
        VertexSet(vs.iter().fold(0u64, |m, &v| m | (1u64 << v)))
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(v)
            }
        })
    }

    /// 0/1 incidence vector of length n.
    pub fn indicator(self, n: usize) -> Vec<f64> {
        (0..n).map(|v| if self.contains(v) { 1.0 } else { 0.0 }).collect()
    }

    pub fn weight(self, w: &[f64]) -> f64 {
        self.iter().map(|v| w[v]).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graph order {n} exceeds {MAX_VERTICES}");
        Graph { n, adj: vec![0; n] }
    }

    /// Builds a graph from 0-based edges. Duplicates are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        guard("graph", n, MAX_VERTICES)?;
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::Precondition(format!("edge ({i},{j}) out of range for n = {n}")));
            }
            if i == j {
                return Err(Error::Precondition(format!("self-loop at {i}")));
            }
            g.add_edge(i, j);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        Graph::empty(n).complement()
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = Graph::empty(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    /// Erdős–Rényi G(n, p).
    pub fn random_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen::<f64>() < p {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    fn add_edge(&mut self, i: usize, j: usize) {
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.adj[i] >> j & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// Edges (i, j) with i < j in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n).0;
        let adj = (0..self.n).map(|i| !self.adj[i] & full & !(1u64 << i)).collect();
        Graph { n: self.n, adj }
    }

    /// Induced subgraph on `keep`, relabelled in increasing vertex order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::empty(keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                if self.has_edge(i, j) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    pub fn is_stable(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v] & s.0 == 0)
    }

    pub fn is_clique(&self, k: VertexSet) -> bool {
        k.iter().all(|v| (k.0 & !(1u64 << v)) & !self.adj[v] == 0)
    }

    pub fn adjacency_matrix(&self) -> SymMatrix {
        SymMatrix::from_fn(self.n, |i, j| if self.has_edge(i, j) { 1.0 } else { 0.0 })
    }

    /// Serializes to DIMACS edge format with 1-based labels.
    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p edge {} {}\n", self.n, self.num_edges());
        for (i, j) in self.edges() {
            let _ = writeln!(s, "e {} {}", i + 1, j + 1);
        }
        s
    }
}

/// Parses DIMACS edge format ("p edge n m", "e i j", "c ..."), 1-based labels.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let mut tok = raw.split_whitespace();
        let Some(head) = tok.next() else { continue };
        match head {
            "c" => {}
            "p" => {
                if g.is_some() {
                    return Err(Error::Parse { line, msg: "duplicate problem line".into() });
                }
                let fmt = tok.next();
                if !matches!(fmt, Some("edge") | Some("col")) {
                    return Err(Error::Parse { line, msg: "expected 'p edge n m'".into() });
                }
                let n = parse_num(tok.next(), line, "vertex count")?;
                let _m = parse_num(tok.next(), line, "edge count")?;
                if n == 0 || n > MAX_VERTICES {
                    return Err(Error::Parse { line, msg: format!("vertex count {n} outside 1..={MAX_VERTICES}") });
                }
                g = Some(Graph::empty(n));
            }
            "e" => {
                let Some(graph) = g.as_mut() else {
                    return Err(Error::Parse { line, msg: "edge before problem line".into() });
                };
                let i = parse_num(tok.next(), line, "endpoint")?;
                let j = parse_num(tok.next(), line, "endpoint")?;
                for v in [i, j] {
                    if v == 0 || v > graph.n {
                        return Err(Error::Parse { line, msg: format!("vertex {v} out of range 1..={}", graph.n) });
                    }
                }
                if i == j {
                    return Err(Error::Parse { line, msg: format!("self-loop at vertex {i}") });
                }
                graph.add_edge(i - 1, j - 1);
            }
            other => return Err(Error::Parse { line, msg: format!("unknown line type '{other}'") }),
        }
    }
    g.ok_or(Error::Parse { line: text.lines().count().max(1), msg: "missing problem line".into() })
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.and_then(|t| t.parse().ok()).ok_or_else(|| Error::Parse { line, msg: format!("missing or malformed {what}") })
}

/// All stable sets, including the empty set.
pub fn enumerate_stable_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    guard("enumerate_stable_sets", g.n, MAX_ENUMERATION)?;
    let mut out = Vec::new();
    fn rec(g: &Graph, v: usize, cur: u64, allowed: u64, out: &mut Vec<VertexSet>) {
        if v == g.n {
            out.push(VertexSet(cur));
            return;
        }
        rec(g, v + 1, cur, allowed, out);
        if allowed >> v & 1 == 1 {
            rec(g, v + 1, cur | 1 << v, allowed & !g.adj[v], out);
        }
    }
    rec(g, 0, 0, VertexSet::full(g.n).0, &mut out);
    Ok(out)
}

/// All cliques, including the empty set.
pub fn enumerate_cliques(g: &Graph) -> Result<Vec<VertexSet>> {
    enumerate_stable_sets(&g.complement())
}

/// Inclusion-maximal cliques (Bron–Kerbosch with pivoting).
pub fn maximal_cliques(g: &Graph) -> Result<Vec<VertexSet>> {
    guard("maximal_cliques", g.n, MAX_ENUMERATION)?;
    let mut out = Vec::new();
    fn bk(g: &Graph, r: u64, mut p: u64, mut x: u64, out: &mut Vec<VertexSet>) {
        if p == 0 && x == 0 {
            out.push(VertexSet(r));
            return;
        }
        let pivot = VertexSet(p | x).iter().max_by_key(|&u| (p & g.adj[u]).count_ones()).unwrap();
        for v in VertexSet(p & !g.adj[pivot]).iter() {
            let nv = g.adj[v];
            bk(g, r | 1 << v, p & nv, x & nv, out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    if g.n == 0 {
        return Ok(vec![VertexSet::EMPTY]);
    }
    bk(g, 0, VertexSet::full(g.n).0, 0, &mut out);
    out.sort();
    Ok(out)
}

/// Inclusion-maximal stable sets.
pub fn maximal_stable_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    maximal_cliques(&g.complement())
}

/// Maximum-weight stable set and its weight.
pub fn best_stable_set(g: &Graph, w: &[f64]) -> Result<(f64, VertexSet)> {
    guard("alpha", g.n, MAX_ENUMERATION)?;
    check_weights(g, w)?;
    fn rec(g: &Graph, w: &[f64], cand: u64, cur: u64, val: f64, best: &mut (f64, u64)) {
        if val > best.0 {
            *best = (val, cur);
        }
        if cand == 0 {
            return;
        }
        let bound: f64 = VertexSet(cand).iter().map(|v| w[v]).sum();
        if val + bound <= best.0 {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        let rest = cand & !(1 << v);
        rec(g, w, rest & !g.adj[v], cur | 1 << v, val + w[v], best);
        rec(g, w, rest, cur, val, best);
    }
    let mut best = (0.0, 0u64);
    rec(g, w, VertexSet::full(g.n).0, 0, 0.0, &mut best);
    Ok((best.0, VertexSet(best.1)))
}

/// Weighted stability number α(G; w).
pub fn alpha(g: &Graph, w: &[f64]) -> Result<f64> {
    Ok(best_stable_set(g, w)?.0)
}

pub(crate) fn check_weights(g: &Graph, w: &[f64]) -> Result<()> {
    if w.len() != g.n {
        return Err(Error::Dimension(format!("weight vector has length {} (n = {})", w.len(), g.n)));
    }
    if w.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
        return Err(Error::Precondition("weights must be finite and nonnegative".into()));
    }
    Ok(())
}
