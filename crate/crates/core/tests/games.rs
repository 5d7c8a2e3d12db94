mod common;

use common::*;
use entail::grundy::{self, NimberSet, Value};
use entail::nimstring::{self, parse_board, Board, Edge};
use entail::outcomes::{outcome_of_forms, Outcome};
use entail::topentails::{compute_table, direct_form, scan_loony, Sweep};
use entail::Form;

#[test]
fn protected_sets_follow_the_recursion() {
    let table = compute_table(400);
    for w in table.windows(2) {
        let previous = w[0].immediate.union(&w[0].protected);
        assert!(w[1].protected.union(&previous).is_all(), "heap {}", w[1].n);
        assert!(w[1].protected.is_disjoint(&previous), "heap {}", w[1].n);
        assert!(w[1].immediate.is_finite());
    }
}

#[test]
fn moon_criterion_matches_mex_rule() {
    let table = compute_table(3000);
    for w in table.windows(2) {
        let previous = w[0].immediate.union(&w[0].protected);
        assert_eq!(
            previous.is_subset(&w[1].immediate),
            w[1].value == Value::Moon,
            "heap {}",
            w[1].n
        );
    }
}

#[test]
fn protected_sets_alternate_for_small_heaps() {
    let cofinite: Vec<bool> = compute_table(12)
        .iter()
        .map(|r| !r.protected.is_finite())
        .collect();
    let expected = [
        false, true, false, true, false, true, false, true, false, true, false, true, false,
    ];
    assert_eq!(cofinite, expected);
}

#[test]
fn sweep_and_scan_agree() {
    let moons: Vec<usize> = Sweep::new()
        .take(3000)
        .filter(|r| r.value == Value::Moon)
        .map(|r| r.n)
        .collect();
    assert_eq!(moons, scan_loony(2999));
    assert_eq!(moons, vec![1, 3, 2403, 2505]);
}

#[test]
fn literal_heaps_split_and_remove() {
    let g4 = direct_form(4).unwrap();
    assert!(g4.is_affine_impartial());
    // two splits (1+3, 2+2) and the top-token check
    assert_eq!(g4.left().len(), 3);
    assert_eq!(g4.left().iter().filter(|o| o.is_left_check()).count(), 1);
    for n in 0..=6 {
        let g = direct_form(n).unwrap();
        assert_eq!(grundy::value(&g), grundy::value_oracle(&g), "heap {n}");
    }
}

#[test]
fn board_forms_are_affine_impartial() {
    for b in small_boards(5) {
        let g = nimstring::to_form(&b);
        assert!(b.is_full() || g.is_affine_impartial(), "{}", b.to_text());
        let by_forms = outcome_of_forms(&[g]).unwrap();
        assert_eq!(by_forms, nimstring::direct_outcome(&[b]), "{}", b.to_text());
    }
}

#[test]
fn board_values_agree_with_probing() {
    for b in small_boards(5).into_iter().filter(|b| !b.is_full()) {
        let g = nimstring::to_form(&b);
        assert_eq!(
            grundy::value(&g).unwrap(),
            grundy::value_oracle(&g).unwrap(),
            "{}",
            b.to_text()
        );
    }
}

#[test]
fn star_two_board() {
    let b = parse_board(STAR_TWO_BOARD).unwrap();
    assert_eq!(nimstring::value_of_board(&b), Value::Nimber(2));
    // no move completes a box
    for e in b.undrawn_edges() {
        assert_eq!(b.apply(e).unwrap().completed, 0);
    }
    let g = nimstring::to_form(&b);
    assert_eq!(grundy::immediate_nimbers(&g).unwrap(), NimberSet::finite([0, 1]));
}

#[test]
fn chain_alone_is_won_by_the_top_bar() {
    let b = parse_board(TWO_BOX_CHAIN).unwrap();
    assert_eq!(nimstring::winning_moves(&[b]), vec![(0, Edge::H(0, 0))]);
    let after = b.apply(Edge::H(1, 0)).unwrap();
    assert_eq!(after.completed, 1);
}

#[test]
fn board_round_trips_through_text() {
    for b in small_boards(3) {
        assert_eq!(parse_board(&b.to_text()).unwrap(), b);
    }
}

#[test]
fn full_boards_are_zero() {
    let b = Board::new(1, 1).unwrap();
    let full = Board::with_edges(1, 1, &b.undrawn_edges()).unwrap();
    assert_eq!(nimstring::to_form(&full), Form::zero());
    assert_eq!(nimstring::direct_outcome(&[full]), Outcome::P);
}
