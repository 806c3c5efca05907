//! Heap and take-away games.
//!
//! The generic Take game plays on a vector of piles: a move removes any
//! positive number of tokens from a single pile, or subtracts one of a
//! set of simultaneous-removal vectors from all piles at once. The
//! brute-force [`TakeSolver`] is the ground truth against which every
//! closed form in this module is validated.

mod closed;
mod multi;
mod octal;

pub use closed::{
    cyclic_nimhoff_g, is_odd_vector, k_nim_sum, nimdi_verdict, pairwise_removal_vectors,
    pow2k_nimhoff_g, sum_bounded_vectors, wythoff_p_pair, NimdiVerdict,
};
pub use multi::{adjoin_p_as_moves, wythoff3_p, AdjoinRound, MAX_WYTHOFF3_LIMIT};
pub use octal::{find_period, octal_g_sequence, OctalCode};

use std::collections::HashMap;

use crate::classical::mex;
use crate::{Error, Result};

/// Pile sizes `(a_1, ..., a_n)`.
pub type HeapPosition = Vec<u64>;

/// Generator families for infinite vector sets, truncated at the current
/// pile sizes when instantiated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveFamily {
    /// `(k, k)` for every k >= 1; two piles. Wythoff's diagonal move.
    Diag,
    /// `(k, k+1)` and `(k+1, k)` for every k >= 1; two piles.
    Shift,
    /// `(k, l, m)` with `k XOR l XOR m = 0` and `k+l+m > 0`; three piles.
    XorZero,
}

impl MoveFamily {
    fn dims(self) -> usize {
        match self {
            MoveFamily::Diag | MoveFamily::Shift => 2,
            MoveFamily::XorZero => 3,
        }
    }
}

/// Legal moves of a Take game: single-pile removal is always on; explicit
/// vectors and generator families add simultaneous removals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSet {
    dims: usize,
    vectors: Vec<Vec<u64>>,
    families: Vec<MoveFamily>,
}

impl MoveSet {
    /// Plain Nim on `dims` piles: single-pile removal only.
    pub fn nim(dims: usize) -> Self {
        MoveSet {
            dims,
            vectors: Vec::new(),
            families: Vec::new(),
        }
    }

    /// Wythoff's game: Nim plus the diagonal `(k, k)` family.
    pub fn wythoff() -> Self {
        MoveSet {
            dims: 2,
            vectors: Vec::new(),
            families: vec![MoveFamily::Diag],
        }
    }

    /// Nim plus the `(k, k+1)` family.
    pub fn shift_family() -> Self {
        MoveSet {
            dims: 2,
            vectors: Vec::new(),
            families: vec![MoveFamily::Shift],
        }
    }

    /// 3-pile Wythoff: Nim plus XOR-zero triples.
    pub fn wythoff3() -> Self {
        MoveSet {
            dims: 3,
            vectors: Vec::new(),
            families: vec![MoveFamily::XorZero],
        }
    }

    /// Nim plus the given explicit removal vectors.
    pub fn with_vectors(dims: usize, vectors: Vec<Vec<u64>>) -> Result<Self> {
        let mut set = MoveSet::nim(dims);
        set.add_vectors(vectors)?;
        Ok(set)
    }

    pub fn add_vectors(&mut self, vectors: impl IntoIterator<Item = Vec<u64>>) -> Result<()> {
        for v in vectors {
            if v.len() != self.dims {
                return Err(Error::invalid(format!(
                    "removal vector {v:?} has {} components, expected {}",
                    v.len(),
                    self.dims
                )));
            }
            if v.iter().all(|&b| b == 0) {
                return Err(Error::invalid(
                    "removal vector must have positive coordinate sum",
                ));
            }
            self.vectors.push(v);
        }
        self.vectors.sort_unstable();
        self.vectors.dedup();
        Ok(())
    }

    pub fn add_family(&mut self, family: MoveFamily) -> Result<()> {
        if family.dims() != self.dims {
            return Err(Error::invalid(format!(
                "family {family:?} needs {} piles, move set has {}",
                family.dims(),
                self.dims
            )));
        }
        if !self.families.contains(&family) {
            self.families.push(family);
        }
        Ok(())
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn vectors(&self) -> &[Vec<u64>] {
        &self.vectors
    }

    pub fn families(&self) -> &[MoveFamily] {
        &self.families
    }

    /// All simultaneous-removal vectors applicable at `piles` (families
    /// instantiated, componentwise bounded).
    pub fn vector_moves(&self, piles: &[u64]) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = self
            .vectors
            .iter()
            .filter(|v| fits(v, piles))
            .cloned()
            .collect();
        for family in &self.families {
            match family {
                MoveFamily::Diag => {
                    for k in 1..=piles[0].min(piles[1]) {
                        out.push(vec![k, k]);
                    }
                }
                MoveFamily::Shift => {
                    let mut k = 1;
                    while k <= piles[0].max(piles[1]) {
                        for v in [vec![k, k + 1], vec![k + 1, k]] {
                            if fits(&v, piles) {
                                out.push(v);
                            }
                        }
                        k += 1;
                    }
                }
                MoveFamily::XorZero => {
                    for k in 0..=piles[0] {
                        for l in 0..=piles[1] {
                            let m = k ^ l;
                            if m <= piles[2] && k + l + m > 0 {
                                out.push(vec![k, l, m]);
                            }
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// True when the vector set is closed under pile permutation (all
    /// families are), so Grundy values are permutation-invariant.
    pub fn is_symmetric(&self) -> bool {
        self.vectors.iter().all(|v| {
            permutations(v)
                .iter()
                .all(|p| self.vectors.binary_search(p).is_ok())
        })
    }
}

fn fits(v: &[u64], piles: &[u64]) -> bool {
    v.iter().zip(piles).all(|(b, a)| b <= a)
}

fn permutations(v: &[u64]) -> Vec<Vec<u64>> {
    match v.len() {
        0 | 1 => vec![v.to_vec()],
        2 => vec![v.to_vec(), vec![v[1], v[0]]],
        3 => {
            let (a, b, c) = (v[0], v[1], v[2]);
            vec![
                vec![a, b, c],
                vec![a, c, b],
                vec![b, a, c],
                vec![b, c, a],
                vec![c, a, b],
                vec![c, b, a],
            ]
        }
        _ => unimplemented!("move sets support up to 3 piles"),
    }
}

/// Memoizing Grundy solver for Take games.
pub struct TakeSolver {
    moves: MoveSet,
    limit: u64,
    symmetric: bool,
    memo: HashMap<Vec<u64>, u64>,
}

impl TakeSolver {
    /// Recursion depth and memo size scale with the pile sizes, so the
    /// default keeps accidental huge inputs from crawling or overflowing
    /// the stack; raise it explicitly via [`TakeSolver::with_limit`].
    pub const DEFAULT_PILE_LIMIT: u64 = 2048;

    pub fn new(moves: MoveSet) -> Self {
        Self::with_limit(moves, Self::DEFAULT_PILE_LIMIT)
    }

    pub fn with_limit(moves: MoveSet, limit: u64) -> Self {
        let symmetric = moves.is_symmetric();
        TakeSolver {
            moves,
            limit,
            symmetric,
            memo: HashMap::new(),
        }
    }

    pub fn moves(&self) -> &MoveSet {
        &self.moves
    }

    /// Grundy value by memoized mex recursion over all legal successors.
    pub fn grundy(&mut self, piles: &[u64]) -> Result<u64> {
        if piles.len() != self.moves.dims() {
            return Err(Error::invalid(format!(
                "position has {} piles, move set expects {}",
                piles.len(),
                self.moves.dims()
            )));
        }
        if let Some(&p) = piles.iter().find(|&&p| p > self.limit) {
            return Err(Error::PileLimit {
                pile: p,
                limit: self.limit,
            });
        }
        Ok(self.grundy_inner(piles))
    }

    /// True iff the position is a P-position (Grundy value 0).
    pub fn is_p(&mut self, piles: &[u64]) -> Result<bool> {
        Ok(self.grundy(piles)? == 0)
    }

    fn key(&self, piles: &[u64]) -> Vec<u64> {
        let mut key = piles.to_vec();
        if self.symmetric {
            key.sort_unstable();
        }
        key
    }

    fn grundy_inner(&mut self, piles: &[u64]) -> u64 {
        let key = self.key(piles);
        if let Some(&g) = self.memo.get(&key) {
            return g;
        }
        let mut child_values = Vec::new();
        let mut child = piles.to_vec();
        for i in 0..piles.len() {
            for m in 1..=piles[i] {
                child[i] = piles[i] - m;
                child_values.push(self.grundy_inner(&child));
            }
            child[i] = piles[i];
        }
        for v in self.moves.vector_moves(piles) {
            let child: Vec<u64> = piles.iter().zip(&v).map(|(a, b)| a - b).collect();
            child_values.push(self.grundy_inner(&child));
        }
        let g = mex(child_values.into_iter().map(|v| v as usize)) as u64;
        self.memo.insert(key, g);
        g
    }
}

/// One-shot Grundy value of `piles` under `moves`.
pub fn take_g(piles: &[u64], moves: &MoveSet) -> Result<u64> {
    TakeSolver::new(moves.clone()).grundy(piles)
}

/// True iff the piles Nim-add to 0.
pub fn nim_p(piles: &[u64]) -> bool {
    piles.iter().fold(0, |acc, &p| acc ^ p) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wythoff_table_entries() {
        let mut solver = TakeSolver::new(MoveSet::wythoff());
        assert_eq!(solver.grundy(&[3, 5]).unwrap(), 0);
        assert_eq!(solver.grundy(&[3, 4]).unwrap(), 2);
        assert_eq!(solver.grundy(&[0, 0]).unwrap(), 0);
    }

    #[test]
    fn zero_position_is_always_p() {
        for moves in [
            MoveSet::nim(2),
            MoveSet::wythoff(),
            MoveSet::shift_family(),
            MoveSet::with_vectors(2, vec![vec![1, 3]]).unwrap(),
        ] {
            assert_eq!(take_g(&[0, 0], &moves).unwrap(), 0);
        }
        assert_eq!(take_g(&[0, 0, 0], &MoveSet::wythoff3()).unwrap(), 0);
    }

    #[test]
    fn nim_p_examples() {
        assert!(nim_p(&[1, 2, 3]));
        assert!(!nim_p(&[4]));
        assert!(nim_p(&[]));
        // Brute force confirms (1,2,3) is a P-position of 3-pile Nim.
        assert_eq!(take_g(&[1, 2, 3], &MoveSet::nim(3)).unwrap(), 0);
    }

    #[test]
    fn nim_grundy_is_pile_xor() {
        let mut solver = TakeSolver::new(MoveSet::nim(2));
        for a in 0..=10u64 {
            for b in 0..=10u64 {
                assert_eq!(solver.grundy(&[a, b]).unwrap(), a ^ b);
            }
        }
    }

    #[test]
    fn move_set_validation() {
        assert!(MoveSet::with_vectors(2, vec![vec![0, 0]]).is_err());
        assert!(MoveSet::with_vectors(2, vec![vec![1, 2, 3]]).is_err());
        let mut m = MoveSet::nim(2);
        assert!(m.add_family(MoveFamily::XorZero).is_err());
        assert!(m.add_family(MoveFamily::Diag).is_ok());
    }

    #[test]
    fn symmetric_detection() {
        assert!(MoveSet::wythoff().is_symmetric());
        assert!(!MoveSet::with_vectors(2, vec![vec![1, 3]])
            .unwrap()
            .is_symmetric());
        assert!(MoveSet::with_vectors(2, vec![vec![1, 3], vec![3, 1]])
            .unwrap()
            .is_symmetric());
    }

    #[test]
    fn pile_limit_is_enforced() {
        let mut solver = TakeSolver::with_limit(MoveSet::nim(1), 100);
        assert!(matches!(
            solver.grundy(&[101]),
            Err(Error::PileLimit { pile: 101, .. })
        ));
        assert!(solver.grundy(&[2, 2]).is_err());
    }

    #[test]
    fn shift_family_instantiation_respects_piles() {
        let moves = MoveSet::shift_family();
        let instantiated = moves.vector_moves(&[3, 3]);
        assert_eq!(
            instantiated,
            vec![vec![1, 2], vec![2, 1], vec![2, 3], vec![3, 2]]
        );
    }
}
