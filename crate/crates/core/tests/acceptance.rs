//! End-to-end acceptance checks, one line per criterion.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use entail::grundy::{self, value_of_sum, NimberSet, Value};
use entail::nimstring::{self, parse_board, Edge};
use entail::outcomes::{outcome, outcome_of_forms, Outcome};
use entail::topentails::{compute_table, direct_form, scan_loony};
use entail::{conjugate, nimber, parse_form, Error, Form};
use rand::Rng;

fn set(members: &[u32]) -> NimberSet {
    NimberSet::finite(members.iter().copied())
}

fn all_but(members: &[u32]) -> NimberSet {
    NimberSet::all_except(members.iter().copied())
}

/// Rows `(S_n, P_n, value)` of the published table for heaps 0..=12.
fn published_table() -> Vec<(NimberSet, NimberSet, Value)> {
    use Value::{Moon, Nimber};
    vec![
        (set(&[]), set(&[]), Nimber(0)),
        (set(&[]), NimberSet::all(), Moon),
        (set(&[]), set(&[]), Nimber(0)),
        (set(&[]), NimberSet::all(), Moon),
        (set(&[0]), set(&[]), Nimber(1)),
        (set(&[]), all_but(&[0]), Nimber(0)),
        (set(&[1]), set(&[0]), Nimber(2)),
        (set(&[0]), all_but(&[0, 1]), Nimber(1)),
        (set(&[0, 2]), set(&[1]), Nimber(3)),
        (set(&[1]), all_but(&[0, 1, 2]), Nimber(0)),
        (set(&[0, 3]), set(&[0, 2]), Nimber(1)),
        (set(&[0, 2]), all_but(&[0, 2, 3]), Nimber(3)),
        (set(&[0, 1, 2]), set(&[3]), Nimber(4)),
    ]
}

fn table_matches_published() -> Result<(), String> {
    let start = Instant::now();
    let table = compute_table(12);
    let elapsed = start.elapsed();
    if table.len() != 13 {
        return Err(format!("{} rows", table.len()));
    }
    for (row, (s, p, v)) in table.iter().zip(published_table()) {
        if row.immediate != s || row.protected != p || row.value != v {
            return Err(format!(
                "heap {}: got S={} P={} value={}, expected S={s} P={p} value={v}",
                row.n, row.immediate, row.protected, row.value
            ));
        }
    }
    if elapsed.as_secs_f64() > 1.0 {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(())
}

fn loony_heaps_to_34000() -> Result<(), String> {
    let found = scan_loony(34000);
    let expected = vec![1, 3, 2403, 2505, 33243];
    if found == expected {
        Ok(())
    } else {
        Err(format!("found {found:?}, expected {expected:?}"))
    }
}

fn literal_heaps_match_recursion() -> Result<(), String> {
    let table = compute_table(7);
    for row in &table {
        let g = direct_form(row.n).map_err(|e| e.to_string())?;
        let v = grundy::value(&g).map_err(|e| e.to_string())?;
        if v != row.value {
            return Err(format!("heap {}: literal {v}, table {}", row.n, row.value));
        }
    }
    let p5 = grundy::protected_nimbers(&direct_form(5).unwrap()).unwrap();
    let g6 = direct_form(6).unwrap();
    let s6 = grundy::immediate_nimbers(&g6).unwrap();
    let p6 = grundy::protected_nimbers(&g6).unwrap();
    if p5 != all_but(&[0]) || s6 != set(&[1]) || p6 != set(&[0]) {
        return Err(format!("P_5={p5} S_6={s6} P_6={p6}"));
    }
    Ok(())
}

fn two_box_chain() -> Result<(), String> {
    let chain = parse_board(TWO_BOX_CHAIN).unwrap();
    let star_two = parse_board(STAR_TWO_BOARD).unwrap();
    let expected = parse_form("{{inf|0},0|{0|oinf},0}").unwrap();
    let g = nimstring::to_form(&chain);
    if g != expected {
        return Err(format!("form {g}"));
    }
    let v = nimstring::value_of_board(&chain);
    if v != Value::Moon {
        return Err(format!("value {v}"));
    }
    let alone = nimstring::direct_outcome(&[chain]);
    if alone != Outcome::N {
        return Err(format!("board alone plays as {alone}"));
    }
    let h = nimstring::value_of_board(&star_two);
    if h != Value::Nimber(2) {
        return Err(format!("second board has value {h}"));
    }
    let both = nimstring::direct_outcome(&[chain, star_two]);
    if both != Outcome::N {
        return Err(format!("sum plays as {both}"));
    }
    let wins = nimstring::winning_moves(&[chain, star_two]);
    if wins != vec![(0, Edge::H(1, 0))] {
        return Err(format!("winning moves {wins:?}"));
    }
    Ok(())
}

fn two_moon_forms() -> Result<(), String> {
    let l = parse_form("{0,moon,moon|0,moon,moon}").unwrap();
    let n = parse_form("{moon,{inf|*}|moon,{*|oinf}}").unwrap();
    let s2 = parse_form("{*,*,0|*,*,0}").unwrap();
    let got = |g: &Form| {
        (
            grundy::value(g).unwrap(),
            grundy::immediate_nimbers(g).unwrap(),
            grundy::protected_nimbers(g).unwrap(),
        )
    };
    let checks = [
        (got(&l), (Value::Nimber(1), set(&[0]), set(&[]))),
        (got(&n), (Value::Nimber(1), set(&[]), all_but(&[1]))),
    ];
    for (i, (g, e)) in checks.iter().enumerate() {
        if g != e {
            return Err(format!("form {i}: got {g:?}, expected {e:?}"));
        }
    }
    let v = grundy::value(&s2).unwrap();
    if v != Value::Nimber(2) {
        return Err(format!("{{*,*,0|*,*,0}} has value {v}"));
    }
    Ok(())
}

fn random_affine_agree_with_probing() -> Result<(), String> {
    let mut rng = rng(0x5eed_0006);
    let mut checked = 0;
    while checked < 250 {
        let g = affine_impartial(&mut rng, AFFINE);
        let v = match grundy::value(&g) {
            Ok(v) => v,
            Err(e @ Error::UnstableTail { .. }) => return Err(e.to_string()),
            Err(e) => return Err(format!("{g}: {e}")),
        };
        let o = grundy::value_oracle(&g).map_err(|e| format!("{g}: {e}"))?;
        if v != o {
            return Err(format!("{g}: mex rule {v}, probing {o}"));
        }
        checked += 1;
    }
    Ok(())
}

fn random_conway_agree_with_classical() -> Result<(), String> {
    let mut rng = rng(0x5eed_0007);
    for _ in 0..250 {
        let g = conway_impartial(&mut rng, 4, 3);
        let v = grundy::value(&g).map_err(|e| e.to_string())?;
        let k = classical_grundy(&g);
        if v != Value::Nimber(k) {
            return Err(format!("{g}: {v}, classical *{k}"));
        }
    }
    Ok(())
}

fn boards_agree_with_direct_play() -> Result<(), String> {
    let boards = small_boards(6);
    for b in &boards {
        let v = nimstring::value_of_board(b);
        let o = nimstring::direct_outcome(&[*b]);
        if (o == Outcome::P) != (v == Value::Nimber(0)) {
            return Err(format!("{}: value {v}, plays as {o}", b.to_text()));
        }
    }
    let mut rng = rng(0x5eed_0008);
    for _ in 0..100 {
        let k = rng.random_range(2..=3);
        let sum: Vec<_> = (0..k).map(|_| boards[rng.random_range(0..boards.len())]).collect();
        let v = value_of_sum(&sum.iter().map(nimstring::value_of_board).collect::<Vec<_>>());
        let o = nimstring::direct_outcome(&sum);
        if (o == Outcome::P) != (v == Value::Nimber(0)) {
            return Err(format!("sum of {k} boards: value {v}, plays as {o}"));
        }
    }
    Ok(())
}

fn conjugation_and_moon_absorption() -> Result<(), String> {
    let mut rng = rng(0x5eed_0009);
    for _ in 0..100 {
        let g = conway(&mut rng, 4, 3);
        if conjugate(&conjugate(&g)) != g {
            return Err(format!("conj(conj({g})) differs"));
        }
        let o = outcome_of_forms(&[g.clone(), conjugate(&g)]).map_err(|e| e.to_string())?;
        if o != Outcome::P {
            return Err(format!("{g} + its conjugate plays as {o}"));
        }
        let s = conway_impartial(&mut rng, 4, 3);
        if conjugate(&s) != s || !s.is_symmetric() {
            return Err(format!("{s} is not self-conjugate"));
        }
        let k = rng.random_range(0..64);
        if value_of_sum(&[Value::Moon, Value::Nimber(k)]) != Value::Moon {
            return Err(format!("moon + *{k} is not moon"));
        }
        if outcome_of_forms(&[Form::moon(), nimber(k)]).unwrap() != Outcome::N {
            return Err(format!("moon + *{k} is not a first-player win"));
        }
    }
    if outcome(&Form::moon()) != Outcome::N {
        return Err("moon is not a first-player win".into());
    }
    Ok(())
}

type Check = fn() -> Result<(), String>;

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("heap table 0..=12 matches the published rows", table_matches_published),
        ("loony heaps up to 34000 are 1, 3, 2403, 2505, 33243", loony_heaps_to_34000),
        ("literal heaps 0..=7 agree with the recursion", literal_heaps_match_recursion),
        ("two-box chain is moon and wins with the middle bar beside *2", two_box_chain),
        ("moon-option forms evaluate to *, * and *2", two_moon_forms),
        ("250 random affine impartial forms: mex rule = probing", random_affine_agree_with_probing),
        ("250 random check-free forms: value = classical mex", random_conway_agree_with_classical),
        ("small boards and their sums: P exactly when value 0", boards_agree_with_direct_play),
        ("conjugation, g + conj(g) = 0 and moon absorption", conjugation_and_moon_absorption),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| {
                Err(p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panicked".into()))
            });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS {}: {name} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
