//! Perfect-play outcomes of sums, and the comparisons derived from them.

use std::cmp::Ordering;
use std::fmt;
use std::sync::LazyLock;

use dashmap::DashMap;

use crate::error::{Error, Result};
use crate::forms::{conjugate, make_sum, Form, FormId, Kind, Sum, SumPosition};

/// One corner of the outcome diamond.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// Left wins whoever starts.
    L,
    /// The player to move wins.
    N,
    /// The player to move loses.
    P,
    /// Right wins whoever starts.
    R,
}

impl Outcome {
    pub fn from_first_moves(left_first_wins: bool, right_first_wins: bool) -> Outcome {
        match (left_first_wins, right_first_wins) {
            (true, true) => Outcome::N,
            (true, false) => Outcome::L,
            (false, true) => Outcome::R,
            (false, false) => Outcome::P,
        }
    }

    /// True for ℒ and 𝒫: Left survives when Right starts.
    pub fn left_wins_moving_second(self) -> bool {
        matches!(self, Outcome::L | Outcome::P)
    }

    fn rank(self) -> i8 {
        match self {
            Outcome::L => 1,
            Outcome::N | Outcome::P => 0,
            Outcome::R => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Outcome::L => "L",
            Outcome::N => "N",
            Outcome::P => "P",
            Outcome::R => "R",
        }
    }
}

/// ℒ on top, ℛ at the bottom, 𝒩 and 𝒫 incomparable.
impl PartialOrd for Outcome {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self == other {
            Some(Ordering::Equal)
        } else if self.rank() == other.rank() {
            None
        } else {
            Some(self.rank().cmp(&other.rank()))
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// How a game sits relative to a reference game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Greater,
    Equal,
    Less,
    Confused,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Greater => ">",
            Comparison::Equal => "=",
            Comparison::Less => "<",
            Comparison::Confused => "||",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Side {
    Left,
    Right,
}

impl Side {
    fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    fn options(self, f: &Form) -> &[Form] {
        match self {
            Side::Left => f.left(),
            Side::Right => f.right(),
        }
    }

    fn goal(self) -> Kind {
        match self {
            Side::Left => Kind::Inf,
            Side::Right => Kind::OInf,
        }
    }
}

static LEFT_FIRST: LazyLock<DashMap<Box<[FormId]>, bool>> = LazyLock::new(DashMap::new);
static RIGHT_FIRST: LazyLock<DashMap<Box<[FormId]>, bool>> = LazyLock::new(DashMap::new);

fn memo(side: Side) -> &'static DashMap<Box<[FormId]>, bool> {
    match side {
        Side::Left => &LEFT_FIRST,
        Side::Right => &RIGHT_FIRST,
    }
}

/// Does `side`, moving first, win the sum of `comps`?
///
/// `comps` is sorted by identity and holds no terminals. A move replaces
/// one component by one of its options; reaching the mover's own infinity
/// wins outright, reaching the opponent's loses outright.
fn first_mover_wins(comps: &[&Form], side: Side) -> bool {
    let goal = side.goal();
    if comps
        .iter()
        .any(|c| side.options(c).iter().any(|o| o.kind() == goal))
    {
        return true;
    }
    let key: Box<[FormId]> = comps.iter().map(|c| c.id()).collect();
    if let Some(hit) = memo(side).get(&key) {
        return *hit;
    }
    let mut wins = false;
    let mut next: Vec<&Form> = Vec::with_capacity(comps.len());
    'search: for (i, c) in comps.iter().enumerate() {
        if i > 0 && comps[i - 1] == *c {
            continue;
        }
        for o in side.options(c) {
            if o.is_terminal() {
                continue;
            }
            next.clear();
            next.extend_from_slice(comps);
            next[i] = o;
            next.sort_unstable_by_key(|f| f.id());
            if !first_mover_wins(&next, side.other()) {
                wins = true;
                break 'search;
            }
        }
    }
    memo(side).insert(key, wins);
    wins
}

fn outcome_of_components(comps: &[Form]) -> Outcome {
    let mut refs: Vec<&Form> = comps.iter().collect();
    refs.sort_unstable_by_key(|f| f.id());
    Outcome::from_first_moves(
        first_mover_wins(&refs, Side::Left),
        first_mover_wins(&refs, Side::Right),
    )
}

/// Outcome of a single form; `inf` is ℒ and `oinf` is ℛ.
pub fn outcome(g: &Form) -> Outcome {
    match g.kind() {
        Kind::Inf => Outcome::L,
        Kind::OInf => Outcome::R,
        Kind::Position => outcome_of_components(std::slice::from_ref(g)),
    }
}

pub fn outcome_of_position(s: &SumPosition) -> Outcome {
    outcome_of_components(s.components())
}

pub fn outcome_of_sum(s: &Sum) -> Outcome {
    match s {
        Sum::Absorbed(t) => outcome(t),
        Sum::Position(p) => outcome_of_position(p),
    }
}

/// Adds the forms (absorbing infinities) and solves the result.
pub fn outcome_of_forms(components: &[Form]) -> Result<Outcome> {
    Ok(outcome_of_sum(&make_sum(components)?))
}

/// Position of `g` relative to zero, read off its outcome.
pub fn compare_zero(g: &Form) -> Comparison {
    match outcome(g) {
        Outcome::L => Comparison::Greater,
        Outcome::P => Comparison::Equal,
        Outcome::N => Comparison::Confused,
        Outcome::R => Comparison::Less,
    }
}

fn require_conway(h: &Form) -> Result<()> {
    if h.is_conway_form() {
        Ok(())
    } else {
        Err(Error::NotConway(h.to_string()))
    }
}

/// `g ≥ h` for a Conway form `h`, decided by playing `g + conj(h)`.
pub fn geq_conway(g: &Form, h: &Form) -> Result<bool> {
    require_conway(h)?;
    geq_conway_unchecked(g, h)
}

/// As [`geq_conway`], trusting the caller that `h` equals some Conway form.
pub fn geq_conway_unchecked(g: &Form, h: &Form) -> Result<bool> {
    Ok(outcome_of_forms(&[g.clone(), conjugate(h)])?.left_wins_moving_second())
}

/// `g = h` for a Conway form `h`: `g + conj(h)` is a 𝒫-position.
pub fn eq_conway(g: &Form, h: &Form) -> Result<bool> {
    require_conway(h)?;
    eq_conway_unchecked(g, h)
}

pub fn eq_conway_unchecked(g: &Form, h: &Form) -> Result<bool> {
    Ok(outcome_of_forms(&[g.clone(), conjugate(h)])? == Outcome::P)
}

/// Relation between `g` and a Conway form `h`.
pub fn compare_conway(g: &Form, h: &Form) -> Result<Comparison> {
    require_conway(h)?;
    let o = outcome_of_forms(&[g.clone(), conjugate(h)])?;
    Ok(match o {
        Outcome::L => Comparison::Greater,
        Outcome::P => Comparison::Equal,
        Outcome::N => Comparison::Confused,
        Outcome::R => Comparison::Less,
    })
}
