//! Annihilation games: at most one token per vertex, and a token moved
//! onto an occupied vertex removes both.
//!
//! A position is a binary occupancy vector, so moving along an edge
//! `(u, v)` is the XOR with `e_u ^ e_v` whether the target is free (a
//! plain move) or occupied (an annihilation). The game is solved exactly
//! by expanding the reachable part of the annihilation graph (2^n states
//! in full) and running the gamma solver on it.
//!
//! A polynomial shortcut exists in the literature: an extended gamma
//! function computed on the induced subgraph of occupancy vectors of
//! weight at most 4, via GF(2) elimination, with a representation-based
//! counter. That `ann_gamma_extended` operation is reserved as future
//! work; the exhaustive expansion here is the ground truth at the scales
//! this crate targets.

use std::collections::{BTreeSet, HashMap};

use crate::digraph::{Digraph, TokenPosition};
use crate::loopy::{self, GammaValue, Outcome};
use crate::{Error, Result};

/// Default cap on expanded annihilation-graph states.
pub const DEFAULT_ANN_BOUND: usize = 1 << 20;

/// Occupancy vector: bit `u` set iff a token sits on vertex `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnnPosition(u64);

impl AnnPosition {
    pub const MAX_VERTICES: usize = 64;

    pub fn empty() -> Self {
        AnnPosition(0)
    }

    /// Builds from a list of distinct occupied vertices.
    pub fn from_tokens(g: &Digraph, tokens: &[usize]) -> Result<Self> {
        check_width(g)?;
        let mut bits = 0u64;
        for &t in tokens {
            if t >= g.vertex_count() {
                return Err(Error::VertexOutOfRange {
                    vertex: t,
                    n: g.vertex_count(),
                });
            }
            if bits >> t & 1 == 1 {
                return Err(Error::invalid(format!(
                    "vertex {t} occupied twice; annihilation positions allow one token per vertex"
                )));
            }
            bits |= 1 << t;
        }
        Ok(AnnPosition(bits))
    }

    pub fn from_occupancy(g: &Digraph, occupied: &[bool]) -> Result<Self> {
        check_width(g)?;
        if occupied.len() != g.vertex_count() {
            return Err(Error::invalid(format!(
                "occupancy has {} entries for {} vertices",
                occupied.len(),
                g.vertex_count()
            )));
        }
        let mut bits = 0u64;
        for (u, &on) in occupied.iter().enumerate() {
            if on {
                bits |= 1 << u;
            }
        }
        Ok(AnnPosition(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn token_count(self) -> u32 {
        self.0.count_ones()
    }

    pub fn occupied(self, u: usize) -> bool {
        self.0 >> u & 1 == 1
    }

    pub fn vertices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |&u| bits >> u & 1 == 1)
    }
}

fn check_width(g: &Digraph) -> Result<()> {
    if g.vertex_count() > AnnPosition::MAX_VERTICES {
        return Err(Error::invalid(format!(
            "annihilation positions support up to {} vertices, graph has {}",
            AnnPosition::MAX_VERTICES,
            g.vertex_count()
        )));
    }
    Ok(())
}

/// A move in the underlying digraph. `from == to` is a pass along a loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnnMove {
    pub from: usize,
    pub to: usize,
}

/// All positions reachable in one move: for every edge `(u, v)` with `u`
/// occupied, `pos ^ e_u ^ e_v` (plain move or annihilation alike); a loop
/// on an occupied vertex yields `pos` itself.
pub fn ann_successors(g: &Digraph, pos: AnnPosition) -> Vec<AnnPosition> {
    let mut succ = BTreeSet::new();
    for u in pos.vertices() {
        if u >= g.vertex_count() {
            break;
        }
        for &v in g.followers(u) {
            if u == v {
                succ.insert(pos);
            } else {
                succ.insert(AnnPosition(pos.0 ^ (1 << u) ^ (1 << v)));
            }
        }
    }
    succ.into_iter().collect()
}

/// The expanded annihilation graph over a set of positions. State indices
/// are vertex ids of `graph`.
#[derive(Debug, Clone)]
pub struct AnnGraph {
    pub graph: Digraph,
    pub states: Vec<AnnPosition>,
    index: HashMap<AnnPosition, usize>,
}

impl AnnGraph {
    pub fn state_index(&self, pos: AnnPosition) -> Option<usize> {
        self.index.get(&pos).copied()
    }
}

/// Induced subgraph of the annihilation graph reachable from `start`
/// (state 0).
pub fn ann_game_graph(g: &Digraph, start: AnnPosition, bound: usize) -> Result<AnnGraph> {
    check_width(g)?;
    let mut index = HashMap::new();
    index.insert(start, 0);
    let mut states = vec![start];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut cursor = 0;
    while cursor < states.len() {
        let pos = states[cursor];
        for next in ann_successors(g, pos) {
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = states.len();
                    if id >= bound {
                        return Err(Error::StateBound { bound });
                    }
                    index.insert(next, id);
                    states.push(next);
                    id
                }
            };
            edges.push((cursor, id));
        }
        cursor += 1;
    }
    let graph = Digraph::new(states.len(), edges)?;
    Ok(AnnGraph {
        graph,
        states,
        index,
    })
}

/// The full annihilation graph on all 2^n occupancy vectors.
pub fn ann_full_graph(g: &Digraph, bound: usize) -> Result<AnnGraph> {
    check_width(g)?;
    let n = g.vertex_count();
    if n >= usize::BITS as usize || (1usize << n) > bound {
        return Err(Error::StateBound { bound });
    }
    let count = 1usize << n;
    let states: Vec<AnnPosition> = (0..count).map(|b| AnnPosition(b as u64)).collect();
    let index = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut edges = Vec::new();
    for (i, &pos) in states.iter().enumerate() {
        for next in ann_successors(g, pos) {
            edges.push((i, next.0 as usize));
        }
    }
    let graph = Digraph::new(count, edges)?;
    Ok(AnnGraph {
        graph,
        states,
        index,
    })
}

/// Full result of analysing one annihilation position.
#[derive(Debug, Clone)]
pub struct AnnAnalysis {
    pub outcome: Outcome,
    pub value: GammaValue,
    pub best_move: Option<AnnMove>,
    pub state_count: usize,
}

/// Classifies and picks an optimal move in one expansion of the reachable
/// annihilation graph.
pub fn ann_analyze(g: &Digraph, pos: AnnPosition, bound: usize) -> Result<AnnAnalysis> {
    let expanded = ann_game_graph(g, pos, bound)?;
    let labeling = loopy::gamma(&expanded.graph);
    let value = labeling.value(0).clone();
    let outcome = loopy::classify_value(&value);
    let token = TokenPosition::new(&expanded.graph, [0]).expect("state 0 exists");
    let best_move = loopy::next_move_with(&expanded.graph, &labeling, &token)
        .map(|mv| original_move(g, pos, expanded.states[mv.to]));
    Ok(AnnAnalysis {
        outcome,
        value,
        best_move,
        state_count: expanded.states.len(),
    })
}

/// P/N/D label of an annihilation position.
pub fn ann_classify(g: &Digraph, pos: AnnPosition, bound: usize) -> Result<Outcome> {
    Ok(ann_analyze(g, pos, bound)?.outcome)
}

/// Optimal move (win-preserving from N, draw-preserving from D).
pub fn ann_best_move(g: &Digraph, pos: AnnPosition, bound: usize) -> Result<Option<AnnMove>> {
    Ok(ann_analyze(g, pos, bound)?.best_move)
}

/// Recovers the digraph move that transforms `pos` into `target`: the
/// changed bits name the edge, and equal states mean a pass on a loop.
fn original_move(g: &Digraph, pos: AnnPosition, target: AnnPosition) -> AnnMove {
    let diff = pos.0 ^ target.0;
    if diff == 0 {
        let u = pos
            .vertices()
            .find(|&u| g.has_edge(u, u))
            .expect("pass move requires an occupied loop vertex");
        return AnnMove { from: u, to: u };
    }
    let a = diff.trailing_zeros() as usize;
    let b = (63 - diff.leading_zeros()) as usize;
    debug_assert_eq!(diff.count_ones(), 2);
    for (u, v) in [(a, b), (b, a)] {
        if pos.occupied(u) && g.has_edge(u, v) {
            return AnnMove { from: u, to: v };
        }
    }
    unreachable!("no digraph edge explains the state change");
}
