//! Finitely generated partizan games: values `{L | R}` with different
//! move sets for the two players.
//!
//! Games are interned in a [`Games`] arena so structurally equal trees
//! share one id, and every relation ([`Games::leq`], sums, negation) is
//! memoized on ids. Value equality is `leq` both ways; canonical-form
//! simplification is deliberately not performed, so two ids may denote
//! equal values. Numbers are evaluated through the Simplicity Theorem:
//! the first dyadic rational in simplicity order strictly confined
//! between the options is the game's value.
//!
//! Deciding sums of partizan games is PSPACE-complete in general, so no
//! algorithm here can scale; the memoized comparisons are tuned for
//! desk-scale inputs (birthdays up to about 5).

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::{Error, Result};

/// Interned game handle, valid for the arena that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameId(u32);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Node {
    left: Vec<GameId>,
    right: Vec<GameId>,
    birthday: u32,
}

/// Who wins under optimal play.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomeClass {
    /// The game is positive: Left wins moving first or second.
    LeftWins,
    /// Negative: Right wins either way.
    RightWins,
    /// Fuzzy with zero: whoever moves first wins.
    FirstWins,
    /// Zero: whoever moves second wins.
    SecondWins,
}

impl fmt::Display for OutcomeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OutcomeClass::LeftWins => "LeftWins",
            OutcomeClass::RightWins => "RightWins",
            OutcomeClass::FirstWins => "FirstWins",
            OutcomeClass::SecondWins => "SecondWins",
        };
        write!(f, "{s}")
    }
}

/// A reduced dyadic rational `num / 2^exp` (num odd whenever exp > 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicRational {
    num: i64,
    exp: u32,
}

impl DyadicRational {
    pub fn integer(n: i64) -> Self {
        DyadicRational { num: n, exp: 0 }
    }

    /// Builds `num / 2^exp`, reducing to lowest terms.
    pub fn new(mut num: i64, mut exp: u32) -> Self {
        while exp > 0 && num % 2 == 0 {
            num /= 2;
            exp -= 1;
        }
        DyadicRational { num, exp }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        1i64 << self.exp
    }

    fn is_integer(&self) -> bool {
        self.exp == 0
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.denominator())
        }
    }
}

/// Arena of interned games.
pub struct Games {
    nodes: Vec<Node>,
    index: HashMap<(Vec<GameId>, Vec<GameId>), GameId>,
    leq_memo: HashMap<(GameId, GameId), bool>,
    neg_memo: HashMap<GameId, GameId>,
    add_memo: HashMap<(GameId, GameId), GameId>,
    zero: GameId,
}

impl Games {
    pub fn new() -> Self {
        let mut games = Games {
            nodes: Vec::new(),
            index: HashMap::new(),
            leq_memo: HashMap::new(),
            neg_memo: HashMap::new(),
            add_memo: HashMap::new(),
            zero: GameId(0),
        };
        games.zero = games.game(Vec::new(), Vec::new());
        games
    }

    /// The game `{ | }`.
    pub fn zero(&self) -> GameId {
        self.zero
    }

    /// Interns `{left | right}`.
    pub fn game(&mut self, mut left: Vec<GameId>, mut right: Vec<GameId>) -> GameId {
        left.sort_unstable();
        left.dedup();
        right.sort_unstable();
        right.dedup();
        if let Some(&id) = self.index.get(&(left.clone(), right.clone())) {
            return id;
        }
        let birthday = left
            .iter()
            .chain(&right)
            .map(|&o| self.nodes[o.0 as usize].birthday + 1)
            .max()
            .unwrap_or(0);
        let id = GameId(self.nodes.len() as u32);
        self.index.insert((left.clone(), right.clone()), id);
        self.nodes.push(Node {
            left,
            right,
            birthday,
        });
        id
    }

    pub fn left_options(&self, g: GameId) -> &[GameId] {
        &self.nodes[g.0 as usize].left
    }

    pub fn right_options(&self, g: GameId) -> &[GameId] {
        &self.nodes[g.0 as usize].right
    }

    pub fn birthday(&self, g: GameId) -> u32 {
        self.nodes[g.0 as usize].birthday
    }

    /// Number of games interned so far.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Ids of every game interned so far, in creation order.
    pub fn ids(&self) -> impl Iterator<Item = GameId> {
        (0..self.nodes.len() as u32).map(GameId)
    }

    /// `-g = {-g^R | -g^L}`.
    pub fn neg(&mut self, g: GameId) -> GameId {
        if let Some(&n) = self.neg_memo.get(&g) {
            return n;
        }
        let (left, right) = (
            self.nodes[g.0 as usize].left.clone(),
            self.nodes[g.0 as usize].right.clone(),
        );
        let new_left: Vec<GameId> = right.iter().map(|&r| self.neg(r)).collect();
        let new_right: Vec<GameId> = left.iter().map(|&l| self.neg(l)).collect();
        let result = self.game(new_left, new_right);
        self.neg_memo.insert(g, result);
        result
    }

    /// `a + b = {a^L+b, a+b^L | a^R+b, a+b^R}`.
    pub fn add(&mut self, a: GameId, b: GameId) -> GameId {
        let key = (a.min(b), a.max(b));
        if let Some(&s) = self.add_memo.get(&key) {
            return s;
        }
        let (al, ar) = (
            self.nodes[a.0 as usize].left.clone(),
            self.nodes[a.0 as usize].right.clone(),
        );
        let (bl, br) = (
            self.nodes[b.0 as usize].left.clone(),
            self.nodes[b.0 as usize].right.clone(),
        );
        let mut left = Vec::new();
        for &l in &al {
            left.push(self.add(l, b));
        }
        for &l in &bl {
            left.push(self.add(a, l));
        }
        let mut right = Vec::new();
        for &r in &ar {
            right.push(self.add(r, b));
        }
        for &r in &br {
            right.push(self.add(a, r));
        }
        let result = self.game(left, right);
        self.add_memo.insert(key, result);
        result
    }

    pub fn sub(&mut self, a: GameId, b: GameId) -> GameId {
        let nb = self.neg(b);
        self.add(a, nb)
    }

    /// `x <= y` iff no left option of x satisfies `y <= x^L` and no right
    /// option of y satisfies `y^R <= x`.
    pub fn leq(&mut self, x: GameId, y: GameId) -> bool {
        if x == y {
            return true;
        }
        if let Some(&r) = self.leq_memo.get(&(x, y)) {
            return r;
        }
        let xl = self.nodes[x.0 as usize].left.clone();
        let yr = self.nodes[y.0 as usize].right.clone();
        let result = xl.iter().all(|&l| !self.leq(y, l)) && yr.iter().all(|&r| !self.leq(r, x));
        self.leq_memo.insert((x, y), result);
        result
    }

    /// Strict confinement `x ◁ y`: not `y <= x`.
    pub fn lfuzz(&mut self, x: GameId, y: GameId) -> bool {
        !self.leq(y, x)
    }

    /// Value equality: `leq` both ways.
    pub fn eq_value(&mut self, x: GameId, y: GameId) -> bool {
        self.leq(x, y) && self.leq(y, x)
    }

    pub fn outcome(&mut self, g: GameId) -> OutcomeClass {
        let zero = self.zero;
        match (self.leq(g, zero), self.leq(zero, g)) {
            (true, true) => OutcomeClass::SecondWins,
            (false, true) => OutcomeClass::LeftWins,
            (true, false) => OutcomeClass::RightWins,
            (false, false) => OutcomeClass::FirstWins,
        }
    }

    /// Canonical game of an integer.
    pub fn integer(&mut self, n: i64) -> GameId {
        if n == 0 {
            return self.zero;
        }
        if n > 0 {
            let prev = self.integer(n - 1);
            self.game(vec![prev], Vec::new())
        } else {
            let prev = self.integer(n + 1);
            self.game(Vec::new(), vec![prev])
        }
    }

    /// Canonical game of a dyadic rational: `{(p-1)/2^q | (p+1)/2^q}`
    /// for odd p, q >= 1.
    pub fn dyadic(&mut self, d: DyadicRational) -> GameId {
        if d.is_integer() {
            return self.integer(d.num);
        }
        let left = self.dyadic(DyadicRational::new(d.num - 1, d.exp));
        let right = self.dyadic(DyadicRational::new(d.num + 1, d.exp));
        self.game(vec![left], vec![right])
    }

    /// Evaluates `g` as a number via the Simplicity Theorem, searching
    /// dyadic rationals in simplicity order (integers by absolute value,
    /// then halves, quarters, ...). `None` when `g` is not number-valued.
    pub fn number_value(&mut self, g: GameId) -> Option<DyadicRational> {
        let bound = self.birthday(g) as i64 + 1;
        for z in simplicity_order(bound) {
            let zg = self.dyadic(z);
            let left = self.nodes[g.0 as usize].left.clone();
            let right = self.nodes[g.0 as usize].right.clone();
            let fits =
                left.iter().all(|&l| self.lfuzz(l, zg)) && right.iter().all(|&r| self.lfuzz(zg, r));
            if fits {
                // The theorem guarantees g = z for the simplest fit.
                if self.eq_value(g, zg) {
                    return Some(z);
                }
                return None;
            }
        }
        None
    }
}

impl Default for Games {
    fn default() -> Self {
        Games::new()
    }
}

/// Dyadic rationals in simplicity order, bounded by `bound` in absolute
/// value and by denominator `2^bound`.
fn simplicity_order(bound: i64) -> impl Iterator<Item = DyadicRational> {
    let integers = (0..=bound).flat_map(|n| {
        if n == 0 {
            vec![DyadicRational::integer(0)]
        } else {
            vec![DyadicRational::integer(n), DyadicRational::integer(-n)]
        }
    });
    let fractions = (1..=bound.max(0) as u32).flat_map(move |exp| {
        (0..)
            .map(move |i| 2 * i + 1)
            .take_while(move |&p| p <= bound << exp)
            .flat_map(move |p| vec![DyadicRational::new(p, exp), DyadicRational::new(-p, exp)])
    });
    integers.chain(fractions)
}

/// Parses bracket notation: `{-1|99}`, `{0|0}`, nested braces, comma
/// separated option lists, integers and dyadic fractions like `3/4`.
pub fn parse_game(games: &mut Games, text: &str) -> Result<GameId> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let id = parser.game(games)?;
    parser.skip_ws();
    if parser.pos != parser.chars.len() {
        return Err(Error::invalid(format!(
            "trailing input at byte {}",
            parser.pos
        )));
    }
    Ok(id)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn game(&mut self, games: &mut Games) -> Result<GameId> {
        match self.peek() {
            Some('{') => {
                self.pos += 1;
                let left = self.options(games)?;
                if self.peek() != Some('|') {
                    return Err(Error::invalid("expected '|' between option lists"));
                }
                self.pos += 1;
                let right = self.options(games)?;
                if self.peek() != Some('}') {
                    return Err(Error::invalid("expected '}' closing the game"));
                }
                self.pos += 1;
                Ok(games.game(left, right))
            }
            Some(c) if c == '-' || c.is_ascii_digit() => {
                let d = self.number()?;
                Ok(games.dyadic(d))
            }
            other => Err(Error::invalid(format!("expected a game, found {other:?}"))),
        }
    }

    fn options(&mut self, games: &mut Games) -> Result<Vec<GameId>> {
        let mut out = Vec::new();
        if matches!(self.peek(), Some('|') | Some('}')) {
            return Ok(out);
        }
        loop {
            out.push(self.game(games)?);
            if self.peek() == Some(',') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn number(&mut self) -> Result<DyadicRational> {
        let num = self.integer_literal()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let den = self.integer_literal()?;
            if den <= 0 || den.count_ones() != 1 {
                return Err(Error::invalid(format!(
                    "denominator {den} is not a power of two"
                )));
            }
            Ok(DyadicRational::new(num, den.trailing_zeros()))
        } else {
            Ok(DyadicRational::integer(num))
        }
    }

    fn integer_literal(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| Error::invalid(format!("invalid integer {text:?}")))
    }
}

/// Default cap on Domineering board size.
pub const DEFAULT_CELL_BOUND: usize = 12;

/// Value of a Domineering board: Left places vertical dominoes, Right
/// horizontal ones, on the given free cells. Disconnected regions are
/// evaluated independently and summed.
pub fn domineering_value(games: &mut Games, cells: &[(i32, i32)], bound: usize) -> Result<GameId> {
    let set: BTreeSet<(i32, i32)> = cells.iter().copied().collect();
    if set.len() > bound {
        return Err(Error::CellBound {
            cells: set.len(),
            bound,
        });
    }
    let mut memo = HashMap::new();
    Ok(eval_board(games, &set, &mut memo))
}

fn eval_board(
    games: &mut Games,
    cells: &BTreeSet<(i32, i32)>,
    memo: &mut HashMap<Vec<(i32, i32)>, GameId>,
) -> GameId {
    let key = normalize(cells);
    if let Some(&id) = memo.get(&key) {
        return id;
    }
    let components = split_components(cells);
    let id = if components.len() > 1 {
        let mut total = games.zero();
        for comp in &components {
            let v = eval_board(games, comp, memo);
            total = games.add(total, v);
        }
        total
    } else {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for &(r, c) in cells.iter() {
            if cells.contains(&(r + 1, c)) {
                let mut rest = cells.clone();
                rest.remove(&(r, c));
                rest.remove(&(r + 1, c));
                left.push(eval_board(games, &rest, memo));
            }
            if cells.contains(&(r, c + 1)) {
                let mut rest = cells.clone();
                rest.remove(&(r, c));
                rest.remove(&(r, c + 1));
                right.push(eval_board(games, &rest, memo));
            }
        }
        games.game(left, right)
    };
    memo.insert(key, id);
    id
}

fn normalize(cells: &BTreeSet<(i32, i32)>) -> Vec<(i32, i32)> {
    let min_r = cells.iter().map(|&(r, _)| r).min().unwrap_or(0);
    let min_c = cells.iter().map(|&(_, c)| c).min().unwrap_or(0);
    cells.iter().map(|&(r, c)| (r - min_r, c - min_c)).collect()
}

fn split_components(cells: &BTreeSet<(i32, i32)>) -> Vec<BTreeSet<(i32, i32)>> {
    let mut remaining = cells.clone();
    let mut out = Vec::new();
    while let Some(&seed) = remaining.iter().next() {
        let mut comp = BTreeSet::new();
        let mut stack = vec![seed];
        remaining.remove(&seed);
        while let Some((r, c)) = stack.pop() {
            comp.insert((r, c));
            for next in [(r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)] {
                if remaining.remove(&next) {
                    stack.push(next);
                }
            }
        }
        out.push(comp);
    }
    out
}
