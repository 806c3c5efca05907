//! Closed forms for heap games and the Nimdi ("Nim in disguise")
//! criterion, each validated at desk scale against [`TakeSolver`].

use super::{MoveSet, TakeSolver};
use crate::{Error, Result};

/// The i-th P-position pair of Wythoff's game, `(floor(i*phi),
/// floor(i*phi^2))`, in exact integer arithmetic.
///
/// `floor(i*phi) = (i + isqrt(5*i^2)) / 2` since `phi = (1 + sqrt 5)/2`
/// and `sqrt(5*i^2)` is irrational for i > 0; `floor(i*phi^2)` adds i.
pub fn wythoff_p_pair(i: u64) -> (u64, u64) {
    let five = 5u128 * (i as u128) * (i as u128);
    let a = ((i as u128 + isqrt(five)) / 2) as u64;
    (a, a + i)
}

fn isqrt(x: u128) -> u128 {
    if x < 2 {
        return x;
    }
    let mut guess = 1u128 << (x.ilog2() / 2 + 1);
    loop {
        let next = (guess + x / guess) / 2;
        if next >= guess {
            return guess;
        }
        guess = next;
    }
}

/// Odd-set test for a removal vector: with m the largest power such that
/// 2^m divides every component, the rescaled components must sum odd.
pub fn is_odd_vector(b: &[u64]) -> Result<bool> {
    if b.iter().all(|&x| x == 0) {
        return Err(Error::invalid("odd-set test requires a nonzero vector"));
    }
    let m = b
        .iter()
        .filter(|&&x| x != 0)
        .map(|&x| x.trailing_zeros())
        .min()
        .unwrap();
    let sum: u64 = b.iter().map(|&x| x >> m).sum();
    Ok(sum % 2 == 1)
}

/// Outcome of checking a move set against Nim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NimdiVerdict {
    /// All instantiated removal vectors are odd sets.
    pub criterion: bool,
    /// Brute-force Grundy values equal the pile XOR on every position
    /// within the bound.
    pub brute_force_agrees: bool,
    /// First disagreeing position in lexicographic order, if any.
    pub witness: Option<Vec<u64>>,
}

/// Tests whether a Take game is Nim in disguise, both by the odd-set
/// criterion and by exhaustive comparison with XOR up to `bound`.
pub fn nimdi_verdict(moves: &MoveSet, bound: u64) -> Result<NimdiVerdict> {
    let dims = moves.dims();
    let cap = vec![bound; dims];
    let instantiated = moves.vector_moves(&cap);
    let mut criterion = true;
    for v in &instantiated {
        if !is_odd_vector(v)? {
            criterion = false;
            break;
        }
    }

    let mut solver = TakeSolver::with_limit(moves.clone(), bound);
    let mut witness = None;
    let mut piles = vec![0u64; dims];
    'scan: loop {
        let g = solver.grundy(&piles)?;
        let xor = piles.iter().fold(0, |acc, &p| acc ^ p);
        if g != xor {
            witness = Some(piles.clone());
            break;
        }
        // Advance odometer in lexicographic order.
        let mut i = dims;
        loop {
            if i == 0 {
                break 'scan;
            }
            i -= 1;
            if piles[i] < bound {
                piles[i] += 1;
                piles[i + 1..].fill(0);
                break;
            }
        }
    }
    Ok(NimdiVerdict {
        criterion,
        brute_force_agrees: witness.is_none(),
        witness,
    })
}

/// Cyclic Nimhoff closed form for move budget `0 < sum b_i < h`:
/// `h * (XOR of floor(a_i/h)) + (sum a_i) mod h`.
pub fn cyclic_nimhoff_g(piles: &[u64], h: u64) -> Result<u64> {
    if h == 0 {
        return Err(Error::invalid("cyclic Nimhoff requires h >= 1"));
    }
    let xor = piles.iter().fold(0, |acc, &a| acc ^ (a / h));
    let rem = piles.iter().sum::<u64>() % h;
    Ok(h * xor + rem)
}

/// k-Nim-sum: `a XOR b`, with the least significant bit complemented when
/// bit k of a and bit k of b are both 1.
pub fn k_nim_sum(a: u64, b: u64, k: u32) -> Result<u64> {
    if k == 0 {
        return Err(Error::invalid("k-Nim-sum requires k >= 1"));
    }
    Ok(k_nim_sum_unchecked(a, b, k))
}

fn k_nim_sum_unchecked(a: u64, b: u64, k: u32) -> u64 {
    let flip = if k < 64 { a >> k & b >> k & 1 } else { 0 };
    a ^ b ^ flip
}

/// Grundy value of 2^k-Nimhoff (remove 2^k from each of two distinct
/// piles, or any amount from one pile): the k-Nim-sum fold of the piles.
pub fn pow2k_nimhoff_g(piles: &[u64], k: u32) -> Result<u64> {
    if k == 0 {
        return Err(Error::invalid("2^k-Nimhoff requires k >= 1"));
    }
    Ok(piles
        .iter()
        .fold(0, |acc, &a| k_nim_sum_unchecked(acc, a, k)))
}

/// Removal vectors taking `amount` from each of two distinct piles, for
/// brute-forcing 2^k-Nimhoff.
pub fn pairwise_removal_vectors(dims: usize, amount: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for i in 0..dims {
        for j in i + 1..dims {
            let mut v = vec![0; dims];
            v[i] = amount;
            v[j] = amount;
            out.push(v);
        }
    }
    out
}

/// All nonnegative vectors with `0 < sum < h`, the cyclic Nimhoff moves.
pub fn sum_bounded_vectors(dims: usize, h: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut v = vec![0u64; dims];
    loop {
        let sum: u64 = v.iter().sum();
        if sum > 0 && sum < h {
            out.push(v.clone());
        }
        let mut i = dims;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < h {
                v[i] += 1;
                v[i + 1..].fill(0);
                break;
            }
        }
    }
}
