//! Nimania: a subtraction game that fights back.
//!
//! A position is a multiset of positive integers plus the move number k.
//! Choosing a copy of m subtracts 1 from it; if m = 1 the copy just
//! disappears, otherwise f(k) extra copies of m-1 are adjoined next to
//! the result. Plain Nimania uses f(k) = k; slower-growing choices of f
//! are available for experiments. The game always terminates, but the
//! state space explodes beyond tiny starts, so the exact solver is only
//! meant for n <= 3 with f(k) = k.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Replication schedule f(k): how many extra copies of m-1 appear at
/// move k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Replication {
    /// f(k) = k, the Nimania rule.
    Nimania,
    /// f(k) = c.
    Constant(u64),
    /// f(k) = 0: a plain subtraction game.
    Zero,
}

impl Replication {
    pub fn copies(self, stage: u64) -> u64 {
        match self {
            Replication::Nimania => stage,
            Replication::Constant(c) => c,
            Replication::Zero => 0,
        }
    }
}

/// Multiset of counters plus the index of the move about to be made
/// (stage 1 is player I's first move).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EpidemicPosition {
    counts: Vec<u64>,
    stage: u64,
}

impl EpidemicPosition {
    pub fn start(n: u64) -> Self {
        EpidemicPosition {
            counts: if n == 0 { Vec::new() } else { vec![n] },
            stage: 1,
        }
    }

    pub fn new(counts: impl IntoIterator<Item = u64>, stage: u64) -> Result<Self> {
        let mut counts: Vec<u64> = counts.into_iter().collect();
        if counts.contains(&0) {
            return Err(Error::invalid("counters must be positive"));
        }
        if stage == 0 {
            return Err(Error::invalid("stages are numbered from 1"));
        }
        counts.sort_unstable();
        Ok(EpidemicPosition { counts, stage })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn stage(&self) -> u64 {
        self.stage
    }

    pub fn is_over(&self) -> bool {
        self.counts.is_empty()
    }

    /// Player to move: I on odd stages, II on even ones.
    pub fn player(&self) -> Player {
        if self.stage % 2 == 1 {
            Player::I
        } else {
            Player::II
        }
    }

    /// Distinct counter values available as moves.
    pub fn choices(&self) -> Vec<u64> {
        let mut c = self.counts.clone();
        c.dedup();
        c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Player {
    I,
    II,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::I => Player::II,
            Player::II => Player::I,
        }
    }
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Player::I => write!(f, "I"),
            Player::II => write!(f, "II"),
        }
    }
}

/// Applies the move "pick a copy of `choice`" at the position's stage.
pub fn apply_move(pos: &EpidemicPosition, choice: u64, f: Replication) -> Result<EpidemicPosition> {
    let idx = pos
        .counts
        .binary_search(&choice)
        .map_err(|_| Error::invalid(format!("no copy of {choice} in the position")))?;
    let mut counts = pos.counts.clone();
    counts.remove(idx);
    if choice > 1 {
        let copies = f.copies(pos.stage) + 1;
        counts.extend(std::iter::repeat_n(choice - 1, copies as usize));
        counts.sort_unstable();
    }
    Ok(EpidemicPosition {
        counts,
        stage: pos.stage + 1,
    })
}

/// Exact solver with memoization on (sorted counts, stage). The stage is
/// part of the key because future replication depends on it.
pub struct NimaniaSolver {
    f: Replication,
    move_cap: u64,
    memo: HashMap<(Vec<u64>, u64), (bool, u64)>,
}

pub const DEFAULT_MOVE_CAP: u64 = 1_000_000;

impl NimaniaSolver {
    pub fn new(f: Replication, move_cap: u64) -> Self {
        NimaniaSolver {
            f,
            move_cap,
            memo: HashMap::new(),
        }
    }

    /// Returns (mover wins, minimax play length): the winner shortens the
    /// game, the loser drags it out.
    pub fn evaluate(&mut self, pos: &EpidemicPosition) -> Result<(bool, u64)> {
        if pos.stage > self.move_cap {
            return Err(Error::MoveCap { cap: self.move_cap });
        }
        if pos.is_over() {
            return Ok((false, 0));
        }
        let key = (pos.counts.clone(), pos.stage);
        if let Some(&cached) = self.memo.get(&key) {
            return Ok(cached);
        }
        let mut win_len: Option<u64> = None;
        let mut lose_len: u64 = 0;
        for choice in pos.choices() {
            let child = apply_move(pos, choice, self.f)?;
            let (child_win, child_len) = self.evaluate(&child)?;
            if !child_win {
                let total = child_len + 1;
                win_len = Some(win_len.map_or(total, |w: u64| w.min(total)));
            } else {
                lose_len = lose_len.max(child_len + 1);
            }
        }
        let result = match win_len {
            Some(len) => (true, len),
            None => (false, lose_len),
        };
        self.memo.insert(key, result);
        Ok(result)
    }

    /// The optimal choice at `pos` under the minimax-length rule,
    /// breaking ties towards the smallest counter.
    pub fn best_choice(&mut self, pos: &EpidemicPosition) -> Result<Option<u64>> {
        if pos.is_over() {
            return Ok(None);
        }
        let (win, len) = self.evaluate(pos)?;
        for choice in pos.choices() {
            let child = apply_move(pos, choice, self.f)?;
            let (child_win, child_len) = self.evaluate(&child)?;
            let matches = if win {
                !child_win && child_len + 1 == len
            } else {
                child_win && child_len + 1 == len
            };
            if matches {
                return Ok(Some(choice));
            }
        }
        unreachable!("evaluate produced a length no child realizes");
    }
}

/// Result of solving a game from the single starting counter `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub winner: Player,
    /// Choices along one optimal line (winner minimizing length, loser
    /// maximizing it, ties to the smallest counter).
    pub optimal_line: Vec<u64>,
    pub length: u64,
}

pub fn solve(n: u64, f: Replication, move_cap: u64) -> Result<Solution> {
    let mut solver = NimaniaSolver::new(f, move_cap);
    let mut pos = EpidemicPosition::start(n);
    let (mover_wins, length) = solver.evaluate(&pos)?;
    let winner = if mover_wins {
        pos.player()
    } else {
        pos.player().opponent()
    };
    let mut optimal_line = Vec::new();
    while let Some(choice) = solver.best_choice(&pos)? {
        optimal_line.push(choice);
        pos = apply_move(&pos, choice, f)?;
    }
    debug_assert_eq!(optimal_line.len() as u64, length);
    Ok(Solution {
        winner,
        optimal_line,
        length,
    })
}

/// Move selection for simulated players.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    /// Uniform over the distinct counters present.
    Random,
    /// The solver's minimax-length choice.
    Optimal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub stage: u64,
    pub player: Player,
    pub counts_before: Vec<u64>,
    pub choice: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimOutcome {
    Winner(Player),
    CapExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub steps: Vec<Step>,
    pub outcome: SimOutcome,
}

/// Plays one game from `n`, deterministic for a given seed. A cap hit is
/// reported in the transcript rather than as an error.
pub fn simulate(
    n: u64,
    f: Replication,
    policy_i: Policy,
    policy_ii: Policy,
    seed: u64,
    move_cap: u64,
) -> Result<Transcript> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut solver = NimaniaSolver::new(f, move_cap);
    let mut pos = EpidemicPosition::start(n);
    let mut steps = Vec::new();
    while !pos.is_over() {
        if pos.stage > move_cap {
            return Ok(Transcript {
                steps,
                outcome: SimOutcome::CapExceeded,
            });
        }
        let policy = match pos.player() {
            Player::I => policy_i,
            Player::II => policy_ii,
        };
        let choice = match policy {
            Policy::Random => {
                let choices = pos.choices();
                choices[rng.gen_range(0..choices.len())]
            }
            Policy::Optimal => solver.best_choice(&pos)?.expect("position not over"),
        };
        steps.push(Step {
            stage: pos.stage,
            player: pos.player(),
            counts_before: pos.counts.clone(),
            choice,
        });
        pos = apply_move(&pos, choice, f)?;
    }
    // The mover at the final (empty) position lost: the previous player
    // made the last move.
    Ok(Transcript {
        steps,
        outcome: SimOutcome::Winner(pos.player().opponent()),
    })
}
