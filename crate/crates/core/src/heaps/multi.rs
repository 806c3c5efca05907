//! Multi-pile Wythoff generalization and the "adjoin the P-positions as
//! moves" iteration.

use super::{MoveSet, TakeSolver};
use crate::{Error, Result};

/// Largest pile size accepted by [`wythoff3_p`]'s exhaustive labeling.
pub const MAX_WYTHOFF3_LIMIT: u64 = 64;

/// All P-position triples `a <= b <= c <= limit` of 3-pile Wythoff, where
/// a move takes any amount from one pile or `(k, l, m)` with
/// `k XOR l XOR m = 0` from all three.
///
/// Backward induction in lexicographic order. Every legal move strictly
/// decreases the triple lexicographically, so a position is N exactly
/// when some already-labeled P-position is a follower; the follower test
/// inverts the move rule on the componentwise difference.
pub fn wythoff3_p(limit: u64) -> Result<Vec<(u64, u64, u64)>> {
    if limit > MAX_WYTHOFF3_LIMIT {
        return Err(Error::PileLimit {
            pile: limit,
            limit: MAX_WYTHOFF3_LIMIT,
        });
    }
    let mut p_list: Vec<(u64, u64, u64)> = Vec::new();
    for a in 0..=limit {
        for b in 0..=limit {
            for c in 0..=limit {
                let mut is_n = false;
                for &(pa, pb, pc) in &p_list {
                    if pa > a || pb > b || pc > c {
                        continue;
                    }
                    let (da, db, dc) = (a - pa, b - pb, c - pc);
                    if da | db | dc == 0 {
                        continue;
                    }
                    let single_pile = (da > 0) as u8 + (db > 0) as u8 + (dc > 0) as u8 == 1;
                    if single_pile || da ^ db ^ dc == 0 {
                        is_n = true;
                        break;
                    }
                }
                if !is_n {
                    p_list.push((a, b, c));
                }
            }
        }
    }
    Ok(p_list
        .into_iter()
        .filter(|&(a, b, c)| a <= b && b <= c)
        .collect())
}

/// One round of the P-adjoining iteration: the move set in force and the
/// P-positions it produces within the bound.
#[derive(Debug, Clone)]
pub struct AdjoinRound {
    pub moves: MoveSet,
    pub p_positions: Vec<(u64, u64)>,
}

/// Iterates "adjoin to a game its P-positions as moves" on a 2-pile game:
/// round r+1 plays with round r's moves plus round r's nonzero
/// P-positions as removal vectors.
pub fn adjoin_p_as_moves(base: &MoveSet, rounds: u32, bound: u64) -> Result<Vec<AdjoinRound>> {
    if base.dims() != 2 {
        return Err(Error::invalid(
            "the P-adjoining iteration is defined for 2-pile games",
        ));
    }
    if rounds == 0 {
        return Err(Error::invalid("need at least one round"));
    }
    let mut out: Vec<AdjoinRound> = Vec::new();
    let mut moves = base.clone();
    for _ in 0..rounds {
        let mut solver = TakeSolver::with_limit(moves.clone(), bound);
        let mut p_positions = Vec::new();
        for a in 0..=bound {
            for b in 0..=bound {
                if solver.grundy(&[a, b])? == 0 {
                    p_positions.push((a, b));
                }
            }
        }
        out.push(AdjoinRound {
            moves: moves.clone(),
            p_positions: p_positions.clone(),
        });
        let mut next = moves.clone();
        next.add_vectors(
            p_positions
                .iter()
                .filter(|&&(a, b)| a + b > 0)
                .map(|&(a, b)| vec![a, b]),
        )?;
        moves = next;
    }
    Ok(out)
}
