#![allow(dead_code)]

use entail::nimstring::{Board, Edge};
use entail::{conjugate, make_position, Form};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Shape limits for random forms.
#[derive(Clone, Copy)]
pub struct Shape {
    pub depth: u32,
    pub width: usize,
    pub check_prob: f64,
}

pub const AFFINE: Shape = Shape {
    depth: 4,
    width: 3,
    check_prob: 0.3,
};

fn width(rng: &mut StdRng, shape: Shape) -> usize {
    rng.random_range(1..=shape.width)
}

/// A symmetric quiet form whose Left options are quiet impartial forms
/// or Left checks. Its quiet followers are symmetric by construction.
pub fn affine_impartial(rng: &mut StdRng, shape: Shape) -> Form {
    if shape.depth == 0 {
        return Form::zero();
    }
    let inner = Shape {
        depth: rng.random_range(0..shape.depth),
        ..shape
    };
    let left: Vec<Form> = (0..width(rng, shape))
        .map(|_| {
            if rng.random_bool(shape.check_prob) {
                left_check(rng, inner)
            } else {
                affine_impartial(rng, inner)
            }
        })
        .collect();
    let right: Vec<Form> = left.iter().map(conjugate).collect();
    make_position(left, right).unwrap()
}

/// `{inf | ...}` where Right's replies are impartial forms or Right checks.
pub fn left_check(rng: &mut StdRng, shape: Shape) -> Form {
    if shape.depth == 0 {
        return Form::moon();
    }
    let inner = Shape {
        depth: shape.depth - 1,
        ..shape
    };
    let right: Vec<Form> = (0..width(rng, shape))
        .map(|_| {
            if rng.random_bool(shape.check_prob / 2.0) {
                conjugate(&left_check(rng, inner))
            } else if rng.random_bool(0.1) {
                Form::oinf()
            } else {
                affine_impartial(rng, inner)
            }
        })
        .collect();
    make_position([Form::inf()], right).unwrap()
}

/// `{A, B, ... | A, B, ...}` with no checks anywhere.
pub fn conway_impartial(rng: &mut StdRng, depth: u32, width_max: usize) -> Form {
    if depth == 0 || rng.random_bool(0.15) {
        return Form::zero();
    }
    let opts: Vec<Form> = (0..rng.random_range(1..=width_max))
        .map(|_| conway_impartial(rng, depth - 1, width_max))
        .collect();
    make_position(opts.clone(), opts).unwrap()
}

/// A Conway form with independent Left and Right options.
pub fn conway(rng: &mut StdRng, depth: u32, width_max: usize) -> Form {
    if depth == 0 || rng.random_bool(0.15) {
        return Form::zero();
    }
    let side = |rng: &mut StdRng| -> Vec<Form> {
        (0..rng.random_range(1..=width_max))
            .map(|_| conway(rng, depth - 1, width_max))
            .collect()
    };
    let left = side(rng);
    let right = side(rng);
    make_position(left, right).unwrap()
}

/// Any form: terminals, checks and quiet positions mixed freely.
pub fn arbitrary(rng: &mut StdRng, depth: u32, width_max: usize) -> Form {
    if depth == 0 {
        return match rng.random_range(0..4) {
            0 => Form::inf(),
            1 => Form::oinf(),
            2 => Form::moon(),
            _ => Form::zero(),
        };
    }
    let side = |rng: &mut StdRng| -> Vec<Form> {
        (0..rng.random_range(1..=width_max))
            .map(|_| {
                let d = rng.random_range(0..depth);
                arbitrary(rng, d, width_max)
            })
            .collect()
    };
    let left = side(rng);
    let right = side(rng);
    make_position(left, right).unwrap()
}

/// Classical Sprague-Grundy value of a check-free impartial form. The
/// terminal options of `0 = {oinf | inf}` stand for "no move".
pub fn classical_grundy(g: &Form) -> u32 {
    let seen: Vec<u32> = g
        .left()
        .iter()
        .filter(|o| !o.is_terminal())
        .map(classical_grundy)
        .collect();
    (0..).find(|k| !seen.contains(k)).unwrap()
}

pub const SMALL_GRIDS: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

/// Every board on the small grids with at most `max_undrawn` undrawn edges.
pub fn small_boards(max_undrawn: usize) -> Vec<Board> {
    let mut out = Vec::new();
    for (rows, cols) in SMALL_GRIDS {
        let all = Board::new(rows, cols).unwrap().undrawn_edges();
        let m = all.len();
        for mask in 0u32..(1 << m) {
            let undrawn = m - mask.count_ones() as usize;
            if undrawn > max_undrawn {
                continue;
            }
            let edges: Vec<Edge> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| all[i]).collect();
            out.push(Board::with_edges(rows, cols, &edges).unwrap());
        }
    }
    out
}

pub const TWO_BOX_CHAIN: &str = "2 1\nV 0 0\nV 0 1\nV 1 0\nV 1 1\nH 2 0\n";
pub const STAR_TWO_BOARD: &str = "1 3\nH 0 0\nH 0 1\nH 0 2\nH 1 0\nH 1 1\n";
