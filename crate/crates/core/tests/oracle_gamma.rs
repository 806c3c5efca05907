//! Cross-checks of the gamma machinery against the exhaustive minimax
//! labeling, and adversarial validation of the counter-based strategy.

use cgsolve::classical::{classify_sum, grundy, PnLabel};
use cgsolve::digraph::{Digraph, TokenPosition};
use cgsolve::loopy::{
    classify_position_with, gamma, gen_nim_sum, label_minimax, next_move_with,
    reachable_state_count, GammaValue, Outcome,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_digraph(rng: &mut ChaCha8Rng, n: usize, density: f64, loops: bool) -> Digraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v && !loops {
                continue;
            }
            let p = if u == v { density / 2.0 } else { density };
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Digraph::new(n, edges).unwrap()
}

/// All multisets of k vertices drawn from 0..n.
fn token_multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(n: usize, k: usize, from: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in from..n {
            current.push(v);
            rec(n, k, v, current, out);
            current.pop();
        }
    }
    rec(n, k, 0, &mut current, &mut out);
    out
}

#[test]
fn gamma_classification_matches_minimax_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..60 {
        let n = 1 + case % 8;
        let density = 0.1 + 0.4 * (case % 5) as f64 / 4.0;
        let g = random_digraph(&mut rng, n, density, case % 2 == 0);
        let labeling = gamma(&g);
        for k in 1..=2usize {
            for tokens in token_multisets(n, k) {
                let pos = TokenPosition::new(&g, tokens).unwrap();
                let via_gamma = classify_position_with(&labeling, &pos);
                let via_minimax = label_minimax(&g, &pos).unwrap();
                assert_eq!(via_gamma, via_minimax, "case {case}, pos {pos:?}");
            }
        }
    }
}

#[test]
fn gamma_agrees_with_classical_on_acyclic_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for case in 0..40 {
        let n = 1 + case % 8;
        // Edges only from higher to lower index: acyclic by construction.
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..u {
                if rng.gen_bool(0.4) {
                    edges.push((u, v));
                }
            }
        }
        let g = Digraph::new(n, edges).unwrap();
        assert!(g.is_acyclic());
        let grundy_labels = grundy(&g).unwrap();
        let gamma_labels = gamma(&g);
        for u in 0..n {
            assert_eq!(
                gamma_labels.value(u),
                &GammaValue::Fin(grundy_labels.value(u))
            );
        }
        for tokens in token_multisets(n, 2) {
            let pos = TokenPosition::new(&g, tokens).unwrap();
            let expected = match classify_sum(&g, &pos).unwrap() {
                PnLabel::P => Outcome::P,
                PnLabel::N => Outcome::N,
            };
            assert_eq!(classify_position_with(&gamma_labels, &pos), expected);
        }
    }
}

/// Exhaustive adversary: the strategist follows next_move from an
/// N-position; every adversary reply is explored. Each line must end with
/// the strategist having made the last move, within the state budget.
/// The strategy is position-only, so a position verified once never needs
/// re-exploration.
fn strategist_always_finishes(
    g: &Digraph,
    labeling: &cgsolve::loopy::GammaLabeling,
    pos: &TokenPosition,
    plies_left: usize,
    verified: &mut std::collections::HashSet<Vec<usize>>,
) {
    assert!(plies_left > 0, "play exceeded the state budget");
    if !verified.insert(pos.tokens().to_vec()) {
        return;
    }
    let mv = next_move_with(g, labeling, pos).expect("N-position has a winning move");
    let after = pos.with_move(mv.token, mv.to);
    assert_eq!(
        classify_position_with(labeling, &after),
        Outcome::P,
        "strategy must restore a P-position"
    );
    // Adversary tries every reply from the P-position; no reply at all
    // means the strategist just made the last move.
    for (i, &u) in after.tokens().iter().enumerate() {
        if i > 0 && after.tokens()[i - 1] == u {
            continue;
        }
        for &v in g.followers(u) {
            let reply = after.with_move(i, v);
            assert_ne!(
                classify_position_with(labeling, &reply),
                Outcome::P,
                "no move from a P-position may reach P"
            );
            strategist_always_finishes(g, labeling, &reply, plies_left - 2, verified);
        }
    }
}

#[test]
fn counter_strategy_wins_every_n_position() {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    for case in 0..25 {
        let n = 1 + case % 7;
        let g = random_digraph(&mut rng, n, 0.3, true);
        let labeling = gamma(&g);
        for k in 1..=2usize {
            let mut verified = std::collections::HashSet::new();
            for tokens in token_multisets(n, k) {
                let pos = TokenPosition::new(&g, tokens).unwrap();
                if classify_position_with(&labeling, &pos) != Outcome::N {
                    continue;
                }
                assert_eq!(label_minimax(&g, &pos).unwrap(), Outcome::N);
                let states = reachable_state_count(&g, &pos, 1 << 20).unwrap();
                strategist_always_finishes(&g, &labeling, &pos, 2 * states + 1, &mut verified);
            }
        }
    }
}

#[test]
fn classical_sum_labels_match_minimax_up_to_three_tokens() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for case in 0..30 {
        let n = 1 + case % 8;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..u {
                if rng.gen_bool(0.4) {
                    edges.push((u, v));
                }
            }
        }
        let g = Digraph::new(n, edges).unwrap();
        let grundy_labels = grundy(&g).unwrap();
        let pn = cgsolve::classical::label_pn(&g).unwrap();
        for (u, &label) in pn.iter().enumerate() {
            let expected = if grundy_labels.value(u) == 0 {
                PnLabel::P
            } else {
                PnLabel::N
            };
            assert_eq!(label, expected);
        }
        for k in 1..=3usize {
            for tokens in token_multisets(n, k) {
                let pos = TokenPosition::new(&g, tokens).unwrap();
                let label = classify_sum(&g, &pos).unwrap();
                let expected = match label_minimax(&g, &pos).unwrap() {
                    Outcome::P => PnLabel::P,
                    Outcome::N => PnLabel::N,
                    Outcome::D => panic!("acyclic game produced a draw"),
                };
                assert_eq!(label, expected, "case {case}, pos {pos:?}");
                // Winning-move contract: N-positions yield a move to P,
                // P-positions yield nothing.
                match cgsolve::classical::winning_move(&g, &pos).unwrap() {
                    Some(mv) => {
                        assert_eq!(label, PnLabel::N);
                        let after = pos.with_move(mv.token, mv.to);
                        assert_eq!(classify_sum(&g, &after).unwrap(), PnLabel::P);
                    }
                    None => assert_eq!(label, PnLabel::P),
                }
            }
        }
    }
}

#[test]
fn draw_moves_stay_in_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut seen_draws = 0;
    for case in 0..30 {
        let n = 2 + case % 6;
        let g = random_digraph(&mut rng, n, 0.3, true);
        let labeling = gamma(&g);
        for tokens in token_multisets(n, 2) {
            let pos = TokenPosition::new(&g, tokens).unwrap();
            if classify_position_with(&labeling, &pos) != Outcome::D {
                continue;
            }
            seen_draws += 1;
            let mv = next_move_with(&g, &labeling, &pos).expect("D-position has a D-move");
            let after = pos.with_move(mv.token, mv.to);
            assert_eq!(classify_position_with(&labeling, &after), Outcome::D);
        }
    }
    assert!(seen_draws > 0, "corpus should contain draws");
}

#[test]
fn gen_nim_sum_is_commutative_and_associative() {
    let mut values: Vec<GammaValue> = (0..16).map(GammaValue::Fin).collect();
    for mask in 0u32..16 {
        values.push(GammaValue::inf((0..4).filter(|&b| mask >> b & 1 == 1)));
    }
    for a in &values {
        for b in &values {
            assert_eq!(gen_nim_sum(a, b), gen_nim_sum(b, a));
        }
    }
    for a in &values {
        for b in &values {
            let ab = gen_nim_sum(a, b);
            for c in &values {
                let left = gen_nim_sum(&ab, c);
                let right = gen_nim_sum(a, &gen_nim_sum(b, c));
                assert_eq!(left, right, "a={a} b={b} c={c}");
            }
        }
    }
}
