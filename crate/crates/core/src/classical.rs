//! Sprague-Grundy theory on finite acyclic digraphs.
//!
//! Every vertex gets the least nonnegative integer absent from its
//! followers' values; a sum of token games is then solved by Nim-summing
//! the tokens' values. Cyclic graphs are rejected here and belong to the
//! [`crate::loopy`] solver.

use crate::digraph::{Digraph, TokenMove, TokenPosition};
use crate::{Error, Result};

/// Grundy values for every vertex of an acyclic digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrundyLabeling {
    values: Vec<usize>,
}

impl GrundyLabeling {
    pub fn value(&self, u: usize) -> usize {
        self.values[u]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// Winner-from-here label under normal play: P = previous player wins,
/// N = next player wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PnLabel {
    P,
    N,
}

/// Least nonnegative integer not in `values`.
pub fn mex(values: impl IntoIterator<Item = usize>) -> usize {
    let values: Vec<usize> = values.into_iter().collect();
    let mut seen = vec![false; values.len() + 1];
    for v in values {
        if v < seen.len() {
            seen[v] = true;
        }
    }
    seen.iter().position(|&s| !s).unwrap()
}

/// Bitwise XOR fold; the empty list sums to 0.
pub fn nim_sum(values: impl IntoIterator<Item = usize>) -> usize {
    values.into_iter().fold(0, |acc, v| acc ^ v)
}

/// Computes the unique g-function of an acyclic digraph by evaluating
/// vertices in reverse topological order (followers first).
pub fn grundy(g: &Digraph) -> Result<GrundyLabeling> {
    let order = g.reverse_topological()?;
    let mut values = vec![0usize; g.vertex_count()];
    for u in order {
        values[u] = mex(g.followers(u).iter().map(|&v| values[v]));
    }
    Ok(GrundyLabeling { values })
}

/// P/N label per vertex: P exactly where the g-value is 0.
pub fn label_pn(g: &Digraph) -> Result<Vec<PnLabel>> {
    let labeling = grundy(g)?;
    Ok(labeling
        .values()
        .iter()
        .map(|&v| if v == 0 { PnLabel::P } else { PnLabel::N })
        .collect())
}

/// Classifies a k-token sum position: P iff the Nim-sum of the tokens'
/// g-values is 0.
pub fn classify_sum(g: &Digraph, pos: &TokenPosition) -> Result<PnLabel> {
    let labeling = grundy(g)?;
    Ok(classify_sum_with(&labeling, pos))
}

pub fn classify_sum_with(labeling: &GrundyLabeling, pos: &TokenPosition) -> PnLabel {
    let s = nim_sum(pos.tokens().iter().map(|&u| labeling.value(u)));
    if s == 0 {
        PnLabel::P
    } else {
        PnLabel::N
    }
}

/// From an N-position, the lexicographically smallest (token, target) move
/// that brings the Nim-sum back to 0; from a P-position, `None`.
pub fn winning_move(g: &Digraph, pos: &TokenPosition) -> Result<Option<TokenMove>> {
    let labeling = grundy(g)?;
    let s = nim_sum(pos.tokens().iter().map(|&u| labeling.value(u)));
    if s == 0 {
        return Ok(None);
    }
    for (i, &u) in pos.tokens().iter().enumerate() {
        let want = labeling.value(u) ^ s;
        // Followers are sorted, so the first hit is the smallest target.
        if let Some(&v) = g.followers(u).iter().find(|&&v| labeling.value(v) == want) {
            return Ok(Some(TokenMove {
                token: i,
                from: u,
                to: v,
            }));
        }
    }
    // An N-position always admits such a move: some token's g-value has a
    // 1-bit at the Nim-sum's leading 1-bit, and every smaller value occurs
    // among that vertex's followers.
    unreachable!("N-position without a winning move");
}

/// Closed form for the Scoring game: g(n) = n mod (t+1).
pub fn scoring_g(n: u64, t: u64) -> Result<u64> {
    if t == 0 {
        return Err(Error::invalid("step bound t must be at least 1"));
    }
    Ok(n % (t + 1))
}

/// The Scoring digraph: vertices are scores `0..=max_score`, and score `i`
/// has edges to `i-1, ..., i-t`.
pub fn scoring_graph(max_score: usize, t: usize) -> Digraph {
    let mut edges = Vec::new();
    for i in 1..=max_score {
        for step in 1..=t.min(i) {
            edges.push((i, i - step));
        }
    }
    Digraph::new(max_score + 1, edges).expect("scoring graph edges are in range")
}
