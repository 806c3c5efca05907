//! Directed graphs on which token games are played.
//!
//! Vertices are dense indices `0..n`. Loops `(u, u)` are legal and act as
//! pass moves in the loopy theory; parallel edges are collapsed on
//! ingestion since they never change game semantics.

use std::collections::VecDeque;

use serde::Deserialize;

use crate::{Error, Result};

/// Immutable directed graph with dense vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Digraph {
    /// Builds a graph from an edge list, validating endpoints and
    /// collapsing duplicate edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            adj[u].push(v);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Digraph { adj, edge_count })
    }

    /// Parses the JSON document `{"n": .., "edges": [[u,v],..]}`.
    ///
    /// Optional `tokens` / `occupancy` fields are ignored here; use
    /// [`GameInput::from_json`] when they matter.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(GameInput::from_json(text)?.graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Follower set `F(u)`, sorted ascending.
    ///
    /// Panics if `u` is out of range.
    pub fn followers(&self, u: usize) -> &[usize] {
        assert!(
            u < self.adj.len(),
            "vertex {u} out of range for graph with {} vertices",
            self.adj.len()
        );
        &self.adj[u]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// True iff the graph has no directed cycle. A loop counts as a cycle.
    ///
    /// Source-peeling (Kahn): repeatedly remove vertices of in-degree zero;
    /// anything left over lies on or behind a cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.adj.len();
        let mut indeg = vec![0usize; n];
        for (u, vs) in self.adj.iter().enumerate() {
            for &v in vs {
                if u == v {
                    return false;
                }
                indeg[v] += 1;
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&u| indeg[u] == 0).collect();
        let mut removed = 0;
        while let Some(u) = queue.pop_front() {
            removed += 1;
            for &v in &self.adj[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        removed == n
    }

    /// Vertices in reverse topological order (followers before hosts).
    ///
    /// Errors with [`Error::CyclicGraph`] when the graph has a cycle.
    pub fn reverse_topological(&self) -> Result<Vec<usize>> {
        let n = self.adj.len();
        let mut outdeg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut preds = vec![Vec::new(); n];
        for (u, vs) in self.adj.iter().enumerate() {
            for &v in vs {
                preds[v].push(u);
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&u| outdeg[u] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &p in &preds[u] {
                outdeg[p] -= 1;
                if outdeg[p] == 0 {
                    queue.push_back(p);
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            Err(Error::CyclicGraph)
        }
    }
}

/// Placement of `k` tokens on vertices. Tokens may share a vertex; the
/// annihilation module uses its own one-per-vertex representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TokenPosition {
    tokens: Vec<usize>,
}

impl TokenPosition {
    /// Validates every token index against the graph and stores the
    /// multiset in sorted order.
    pub fn new(g: &Digraph, tokens: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut tokens: Vec<usize> = tokens.into_iter().collect();
        let n = g.vertex_count();
        for &t in &tokens {
            if t >= n {
                return Err(Error::VertexOutOfRange { vertex: t, n });
            }
        }
        tokens.sort_unstable();
        Ok(TokenPosition { tokens })
    }

    pub fn empty() -> Self {
        TokenPosition { tokens: Vec::new() }
    }

    /// Token vertices in ascending order (moves name tokens by this index).
    pub fn tokens(&self) -> &[usize] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Position after moving the token at sorted index `token` to `target`.
    pub fn with_move(&self, token: usize, target: usize) -> Self {
        let mut tokens = self.tokens.clone();
        tokens[token] = target;
        tokens.sort_unstable();
        TokenPosition { tokens }
    }
}

/// A single-token move in a sum game: token `token` (index into the sorted
/// token list) moves from `from` to `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct TokenMove {
    pub token: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    n: i64,
    #[serde(default)]
    edges: Vec<(i64, i64)>,
    #[serde(default)]
    tokens: Option<Vec<i64>>,
    #[serde(default)]
    occupancy: Option<Vec<u8>>,
}

/// A parsed game document: the graph plus optional token data.
#[derive(Debug, Clone)]
pub struct GameInput {
    pub graph: Digraph,
    /// `tokens` field, validated, sorted.
    pub tokens: Option<Vec<usize>>,
    /// `occupancy` field (0/1 per vertex), for annihilation games.
    pub occupancy: Option<Vec<bool>>,
}

impl GameInput {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawInput = serde_json::from_str(text)?;
        if raw.n < 0 {
            return Err(Error::invalid(format!("negative vertex count {}", raw.n)));
        }
        let n = raw.n as usize;
        let check = |x: i64| -> Result<usize> {
            if x < 0 || x as usize >= n {
                Err(Error::VertexOutOfRange {
                    vertex: x.max(0) as usize,
                    n,
                })
            } else {
                Ok(x as usize)
            }
        };
        let mut edges = Vec::with_capacity(raw.edges.len());
        for (u, v) in raw.edges {
            edges.push((check(u)?, check(v)?));
        }
        let graph = Digraph::new(n, edges)?;
        let tokens = match raw.tokens {
            Some(ts) => {
                let mut out = Vec::with_capacity(ts.len());
                for t in ts {
                    out.push(check(t)?);
                }
                out.sort_unstable();
                Some(out)
            }
            None => None,
        };
        let occupancy = match raw.occupancy {
            Some(bits) => {
                if bits.len() != n {
                    return Err(Error::invalid(format!(
                        "occupancy has {} entries for {} vertices",
                        bits.len(),
                        n
                    )));
                }
                let mut out = Vec::with_capacity(n);
                for b in bits {
                    match b {
                        0 => out.push(false),
                        1 => out.push(true),
                        other => {
                            return Err(Error::invalid(format!(
                                "occupancy entries must be 0 or 1, got {other}"
                            )))
                        }
                    }
                }
                Some(out)
            }
            None => None,
        };
        Ok(GameInput {
            graph,
            tokens,
            occupancy,
        })
    }
}
