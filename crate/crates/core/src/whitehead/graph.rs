use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::word::{CyclicWord, Letter};

/// Whitehead graph of a cyclic word: vertices are the `2n` letters and each
/// cyclic occurrence of `x y^-1` contributes one edge `{x, y}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhiteheadGraph {
    rank: usize,
    // symmetric 2n x 2n multiplicity matrix indexed by Letter::key
    multiplicity: Vec<u32>,
}

impl WhiteheadGraph {
    pub fn empty(rank: usize) -> Self {
        let v = 2 * rank;
        WhiteheadGraph {
            rank,
            multiplicity: vec![0; v * v],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.rank
    }

    pub fn vertices(&self) -> impl Iterator<Item = Letter> {
        Letter::all(self.rank)
    }

    pub fn add_edge(&mut self, x: Letter, y: Letter) {
        let v = self.vertex_count();
        let (i, j) = (x.key(), y.key());
        self.multiplicity[i * v + j] += 1;
        if i != j {
            self.multiplicity[j * v + i] += 1;
        }
    }

    pub fn multiplicity(&self, x: Letter, y: Letter) -> u32 {
        self.multiplicity[x.key() * self.vertex_count() + y.key()]
    }

    /// Edges `(x, y, count)` with `x <= y`, in vertex order.
    pub fn edges(&self) -> Vec<(Letter, Letter, u32)> {
        let v = self.vertex_count();
        let mut out = Vec::new();
        for i in 0..v {
            for j in i..v {
                let m = self.multiplicity[i * v + j];
                if m > 0 {
                    out.push((Letter::from_key(i), Letter::from_key(j), m));
                }
            }
        }
        out
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.edges().iter().map(|&(_, _, m)| m as u64).sum()
    }

    /// Neighbours in the underlying simple graph (loops dropped).
    fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let v = self.vertex_count();
        (0..v).filter(move |&j| j != i && self.multiplicity[i * v + j] > 0)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph whitehead {\n");
        for l in self.vertices() {
            let _ = writeln!(out, "  {l};");
        }
        for (x, y, m) in self.edges() {
            let _ = writeln!(out, "  {x} -- {y} [label=\"{m}\"];");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, word: &CyclicWord) -> String {
        #[derive(Serialize)]
        struct Edge {
            u: String,
            v: String,
            multiplicity: u32,
        }
        #[derive(Serialize)]
        struct Adjacency {
            rank: usize,
            word: String,
            vertices: Vec<String>,
            adjacency: Vec<Vec<u32>>,
            edges: Vec<Edge>,
        }
        let v = self.vertex_count();
        let doc = Adjacency {
            rank: self.rank,
            word: word.to_string(),
            vertices: self.vertices().map(|l| l.to_string()).collect(),
            adjacency: self.multiplicity.chunks(v).map(|row| row.to_vec()).collect(),
            edges: self
                .edges()
                .into_iter()
                .map(|(x, y, m)| Edge {
                    u: x.to_string(),
                    v: y.to_string(),
                    multiplicity: m,
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("adjacency serializes");
        s.push('\n');
        s
    }
}

pub fn whitehead_graph(c: &CyclicWord) -> WhiteheadGraph {
    let mut g = WhiteheadGraph::empty(c.rank());
    let letters = c.letters();
    let n = letters.len();
    for i in 0..n {
        let (x, y) = (letters[i], letters[(i + 1) % n]);
        g.add_edge(x, y.inverse());
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub is_connected: bool,
    pub cut_vertices: BTreeSet<Letter>,
}

/// Connectivity over all `2n` vertices plus articulation points of the
/// underlying simple graph (Hopcroft-Tarjan low-link DFS).
pub fn connectivity_report(g: &WhiteheadGraph) -> ConnectivityReport {
    let v = g.vertex_count();
    let mut disc = vec![usize::MAX; v];
    let mut low = vec![0usize; v];
    let mut cut = vec![false; v];
    let mut timer = 0;
    let mut components = 0;

    fn dfs(
        g: &WhiteheadGraph,
        u: usize,
        parent: Option<usize>,
        timer: &mut usize,
        disc: &mut [usize],
        low: &mut [usize],
        cut: &mut [bool],
    ) {
        disc[u] = *timer;
        low[u] = *timer;
        *timer += 1;
        let mut children = 0;
        for w in g.neighbours(u) {
            if disc[w] == usize::MAX {
                children += 1;
                dfs(g, w, Some(u), timer, disc, low, cut);
                low[u] = low[u].min(low[w]);
                if parent.is_some() && low[w] >= disc[u] {
                    cut[u] = true;
                }
            } else if Some(w) != parent {
                low[u] = low[u].min(disc[w]);
            }
        }
        if parent.is_none() && children > 1 {
            cut[u] = true;
        }
    }

    for root in 0..v {
        if disc[root] == usize::MAX {
            components += 1;
            dfs(g, root, None, &mut timer, &mut disc, &mut low, &mut cut);
        }
    }

    ConnectivityReport {
        is_connected: components <= 1,
        cut_vertices: (0..v).filter(|&i| cut[i]).map(Letter::from_key).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Separability {
    /// Graph connected with no cut vertex: the word is not separable.
    NotSeparable,
    /// The one-directional test says nothing.
    Inconclusive,
}

pub fn whitehead_separability_test(c: &CyclicWord) -> Separability {
    let report = connectivity_report(&whitehead_graph(c));
    if report.is_connected && report.cut_vertices.is_empty() {
        Separability::NotSeparable
    } else {
        Separability::Inconclusive
    }
}
