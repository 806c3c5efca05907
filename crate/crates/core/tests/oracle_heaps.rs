//! Brute-force validation of every heap-game closed form.

use cgsolve::heaps::{
    cyclic_nimhoff_g, nimdi_verdict, pairwise_removal_vectors, pow2k_nimhoff_g,
    sum_bounded_vectors, take_g, wythoff_p_pair, MoveSet, TakeSolver,
};

fn positions(dims: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..dims {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=max).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

#[test]
fn shift_family_is_nim_in_disguise_up_to_16() {
    let mut solver = TakeSolver::new(MoveSet::shift_family());
    for a in 0..=16u64 {
        for b in 0..=16u64 {
            assert_eq!(solver.grundy(&[a, b]).unwrap(), a ^ b, "({a},{b})");
        }
    }
}

#[test]
fn cyclic_nimhoff_matches_brute_force() {
    for h in 1..=5u64 {
        for dims in 1..=3usize {
            let max = if dims == 3 { 12 } else { 20 };
            // h = 1 instantiates no vectors and is plain Nim.
            let moves = MoveSet::with_vectors(dims, sum_bounded_vectors(dims, h)).unwrap();
            let mut solver = TakeSolver::new(moves);
            for pos in positions(dims, max) {
                assert_eq!(
                    solver.grundy(&pos).unwrap(),
                    cyclic_nimhoff_g(&pos, h).unwrap(),
                    "h={h} pos={pos:?}"
                );
            }
        }
    }
}

#[test]
fn pow2k_nimhoff_matches_brute_force() {
    for k in 1..=2u32 {
        for dims in 2..=3usize {
            let max = if dims == 3 { 12 } else { 16 };
            let moves =
                MoveSet::with_vectors(dims, pairwise_removal_vectors(dims, 1 << k)).unwrap();
            let mut solver = TakeSolver::new(moves);
            for pos in positions(dims, max) {
                assert_eq!(
                    solver.grundy(&pos).unwrap(),
                    pow2k_nimhoff_g(&pos, k).unwrap(),
                    "k={k} pos={pos:?}"
                );
            }
        }
    }
}

#[test]
fn nimdi_criterion_never_disagrees_with_brute_force() {
    let cases: Vec<MoveSet> = vec![
        MoveSet::shift_family(),
        MoveSet::wythoff(),
        MoveSet::with_vectors(2, vec![vec![1, 3]]).unwrap(),
        MoveSet::with_vectors(2, vec![vec![2, 3]]).unwrap(),
        MoveSet::with_vectors(2, vec![vec![3, 2]]).unwrap(),
        MoveSet::with_vectors(2, vec![vec![1, 2]]).unwrap(),
        MoveSet::with_vectors(2, vec![vec![2, 2]]).unwrap(),
        MoveSet::with_vectors(2, vec![vec![1, 4], vec![4, 1]]).unwrap(),
        MoveSet::with_vectors(2, vec![vec![2, 3], vec![3, 2]]).unwrap(),
        MoveSet::with_vectors(2, vec![vec![1, 2], vec![2, 1]]).unwrap(),
        MoveSet::with_vectors(3, vec![vec![1, 2, 0], vec![0, 1, 2]]).unwrap(),
        MoveSet::with_vectors(3, vec![vec![1, 1, 1]]).unwrap(),
        MoveSet::with_vectors(3, vec![vec![2, 2, 2]]).unwrap(),
    ];
    for moves in cases {
        let bound = if moves.dims() == 2 { 12 } else { 8 };
        let verdict = nimdi_verdict(&moves, bound).unwrap();
        assert_eq!(
            verdict.criterion, verdict.brute_force_agrees,
            "odd-set criterion vs brute force for {moves:?}"
        );
        assert_eq!(verdict.witness.is_none(), verdict.brute_force_agrees);
    }
}

#[test]
fn wythoff_pairs_are_the_zero_entries_in_range() {
    let mut solver = TakeSolver::new(MoveSet::wythoff());
    let limit = 30u64;
    let mut expected: Vec<(u64, u64)> = Vec::new();
    for i in 0.. {
        let (a, b) = wythoff_p_pair(i);
        if b > limit {
            break;
        }
        expected.push((a, b));
    }
    let mut zeros = Vec::new();
    for a in 0..=limit {
        for b in a..=limit {
            if solver.grundy(&[a, b]).unwrap() == 0 {
                zeros.push((a, b));
            }
        }
    }
    assert_eq!(zeros, expected);
}

#[test]
fn take_g_validates_dimensions() {
    assert!(take_g(&[1, 2, 3], &MoveSet::wythoff()).is_err());
    assert!(take_g(&[1], &MoveSet::nim(1)).is_ok());
}
