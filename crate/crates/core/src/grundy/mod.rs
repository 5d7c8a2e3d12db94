//! Sprague-Grundy theory for affine impartial forms.
//!
//! Every affine impartial form is equal (modulo affine impartial play) to a
//! nimber or to the moon. [`Analyzer::value`] finds which one through the
//! minimum-excluded rule over immediate and protected nimbers;
//! [`Analyzer::value_oracle`] gets there independently by probing
//! `g + *n` for a 𝒫-position.

mod nimber_set;

pub use nimber_set::NimberSet;

use std::fmt;
use std::sync::LazyLock;

use dashmap::DashMap;

use crate::error::{Error, Result};
use crate::forms::{nimber, Form, FormId};
use crate::outcomes::{outcome_of_forms, Outcome};

/// Number of probe points at and past the ceiling that must agree.
pub const TAIL_WINDOW: u32 = 4;

/// Value of an affine impartial game: a nimber or the moon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Value {
    Nimber(u32),
    Moon,
}

impl Value {
    pub fn grundy(self) -> Option<u32> {
        match self {
            Value::Nimber(k) => Some(k),
            Value::Moon => None,
        }
    }

    /// Grundy number as printed in tables: the integer, or `inf` for the moon.
    pub fn grundy_label(self) -> String {
        match self {
            Value::Nimber(k) => k.to_string(),
            Value::Moon => "inf".to_string(),
        }
    }

    /// A canonical literal carrying this value.
    pub fn form(self) -> Form {
        match self {
            Value::Nimber(k) => nimber(k),
            Value::Moon => Form::moon(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Nimber(0) => f.write_str("0"),
            Value::Nimber(1) => f.write_str("*"),
            Value::Nimber(k) => write!(f, "*{k}"),
            Value::Moon => f.write_str("moon"),
        }
    }
}

/// Moon absorbs; nimbers add by exclusive or.
pub fn value_of_sum(values: &[Value]) -> Value {
    values.iter().try_fold(0u32, |acc, v| v.grundy().map(|k| acc ^ k))
        .map_or(Value::Moon, Value::Nimber)
}

/// Memoizing evaluator. The probe ceiling is either derived per form or
/// fixed by [`Analyzer::with_max_probe`].
#[derive(Default)]
pub struct Analyzer {
    max_probe: Option<u32>,
    values: DashMap<FormId, Value>,
    maxima: DashMap<FormId, Option<u32>>,
    oracle_values: DashMap<FormId, Value>,
    oracle_maxima: DashMap<FormId, Option<u32>>,
}

static DEFAULT: LazyLock<Analyzer> = LazyLock::new(Analyzer::new);

fn require_impartial(g: &Form) -> Result<()> {
    if g.is_affine_impartial() {
        Ok(())
    } else {
        Err(Error::NotImpartial(g.to_string()))
    }
}

fn sum_outcome(g: &Form, n: u32) -> Outcome {
    outcome_of_forms(&[g.clone(), nimber(n)]).expect("a position plus a nimber is always defined")
}

impl Analyzer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Uses `ceiling` as the probe bound for every form instead of the derived one.
    pub fn with_max_probe(ceiling: u32) -> Self {
        Analyzer {
            max_probe: Some(ceiling),
            ..Self::default()
        }
    }

    pub fn max_probe(&self) -> Option<u32> {
        self.max_probe
    }

    /// Grundy numbers of the Left options that equal nimbers.
    pub fn immediate_nimbers(&self, g: &Form) -> Result<NimberSet> {
        require_impartial(g)?;
        self.immediate(g)
    }

    /// Nimbers `*n` against which a Left check in `g` wins `g + *n`.
    pub fn protected_nimbers(&self, g: &Form) -> Result<NimberSet> {
        require_impartial(g)?;
        self.protected(g)
    }

    pub fn value(&self, g: &Form) -> Result<Value> {
        require_impartial(g)?;
        self.value_unchecked(g)
    }

    /// Probe ceiling `B = M + 2`, `M` the largest finite value among the
    /// proper quiet followers of `g`.
    pub fn bound(&self, g: &Form) -> Result<u32> {
        require_impartial(g)?;
        self.bound_unchecked(g)
    }

    /// Value found by probing `g + *n` for a 𝒫-position, moon if none.
    ///
    /// Shares nothing with [`Analyzer::value`] except the outcome solver.
    pub fn value_oracle(&self, g: &Form) -> Result<Value> {
        require_impartial(g)?;
        Ok(self.oracle_unchecked(g))
    }

    pub fn is_loony(&self, g: &Form) -> Result<bool> {
        Ok(self.value(g)? == Value::Moon)
    }

    /// Equality modulo affine impartial play.
    pub fn eq_im(&self, g: &Form, h: &Form) -> Result<bool> {
        Ok(self.value(g)? == self.value(h)?)
    }

    /// Whether Right can answer every Left option of `g` that is neither a
    /// nimber nor `oinf` with a chain of checks ending in a Left move to a
    /// nimber or a move to `oinf`.
    pub fn is_manoeuvrable(&self, g: &Form) -> Result<bool> {
        require_impartial(g)?;
        if !g.is_quiet() {
            return Err(Error::NotQuiet(g.to_string()));
        }
        for x in g.left() {
            if !self.forced_down(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn forced_down(&self, x: &Form) -> Result<bool> {
        if x.is_oinf() {
            return Ok(true);
        }
        if x.is_inf() {
            return Ok(false);
        }
        if x.is_quiet() && matches!(self.value_unchecked(x)?, Value::Nimber(_)) {
            return Ok(true);
        }
        for y in x.right() {
            if y.is_oinf() {
                return Ok(true);
            }
            if y.is_right_check() {
                let mut all = true;
                for z in y.left() {
                    if !self.forced_down(z)? {
                        all = false;
                        break;
                    }
                }
                if all {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn immediate(&self, g: &Form) -> Result<NimberSet> {
        let mut s = NimberSet::empty();
        for o in g.left().iter().filter(|o| o.is_quiet()) {
            if let Value::Nimber(k) = self.value_unchecked(o)? {
                s.insert(k);
            }
        }
        Ok(s)
    }

    fn protected(&self, g: &Form) -> Result<NimberSet> {
        if g.is_left_check() {
            return Ok(NimberSet::all());
        }
        let checks: Vec<&Form> = g.left().iter().filter(|o| o.is_left_check()).collect();
        if checks.is_empty() {
            return Ok(NimberSet::empty());
        }
        let bound = self.bound_unchecked(g)?;
        let mut protected = NimberSet::empty();
        for check in checks {
            // Left starts by playing the check; `*n` is protected when Right,
            // now to move in check + *n, loses.
            let member: Vec<bool> = (0..bound + TAIL_WINDOW)
                .map(|n| sum_outcome(check, n) == Outcome::L)
                .collect();
            let tail = &member[bound as usize..];
            if tail.iter().any(|&m| m != tail[0]) {
                return Err(Error::UnstableTail {
                    form: g.to_string(),
                    bound,
                    membership: member,
                });
            }
            let head = (0..bound).filter(|&n| member[n as usize] != tail[0]);
            let per_check = if tail[0] {
                NimberSet::all_except(head)
            } else {
                NimberSet::finite(head)
            };
            protected = protected.union(&per_check);
        }
        Ok(protected)
    }

    fn value_unchecked(&self, g: &Form) -> Result<Value> {
        if let Some(hit) = self.values.get(&g.id()) {
            return Ok(*hit);
        }
        let union = self.immediate(g)?.union(&self.protected(g)?);
        let v = union.mex().map_or(Value::Moon, Value::Nimber);
        self.values.insert(g.id(), v);
        Ok(v)
    }

    fn bound_unchecked(&self, g: &Form) -> Result<u32> {
        match self.max_probe {
            Some(b) => Ok(b),
            None => Ok(self.max_follower_value(g)?.unwrap_or(0) + 2),
        }
    }

    // Largest finite value over proper quiet followers. Quiet followers of
    // an affine impartial form are themselves affine impartial.
    fn max_follower_value(&self, g: &Form) -> Result<Option<u32>> {
        if let Some(hit) = self.maxima.get(&g.id()) {
            return Ok(*hit);
        }
        let mut best: Option<u32> = None;
        for o in g.left().iter().chain(g.right()).filter(|o| !o.is_terminal()) {
            best = best.max(self.max_follower_value(o)?);
            if o.is_quiet() {
                best = best.max(self.value_unchecked(o)?.grundy());
            }
        }
        self.maxima.insert(g.id(), best);
        Ok(best)
    }

    fn oracle_unchecked(&self, g: &Form) -> Value {
        if let Some(hit) = self.oracle_values.get(&g.id()) {
            return *hit;
        }
        let bound = self
            .max_probe
            .unwrap_or_else(|| self.oracle_follower_max(g).unwrap_or(0) + 2);
        let v = (0..bound + TAIL_WINDOW)
            .find(|&n| sum_outcome(g, n) == Outcome::P)
            .map_or(Value::Moon, Value::Nimber);
        self.oracle_values.insert(g.id(), v);
        v
    }

    fn oracle_follower_max(&self, g: &Form) -> Option<u32> {
        if let Some(hit) = self.oracle_maxima.get(&g.id()) {
            return *hit;
        }
        let mut best: Option<u32> = None;
        for o in g.left().iter().chain(g.right()).filter(|o| !o.is_terminal()) {
            best = best.max(self.oracle_follower_max(o));
            if o.is_quiet() {
                best = best.max(self.oracle_unchecked(o).grundy());
            }
        }
        self.oracle_maxima.insert(g.id(), best);
        best
    }
}

/// The shared default analyzer.
pub fn analyzer() -> &'static Analyzer {
    &DEFAULT
}

pub fn immediate_nimbers(g: &Form) -> Result<NimberSet> {
    DEFAULT.immediate_nimbers(g)
}

pub fn protected_nimbers(g: &Form) -> Result<NimberSet> {
    DEFAULT.protected_nimbers(g)
}

pub fn value(g: &Form) -> Result<Value> {
    DEFAULT.value(g)
}

pub fn value_oracle(g: &Form) -> Result<Value> {
    DEFAULT.value_oracle(g)
}

pub fn bound(g: &Form) -> Result<u32> {
    DEFAULT.bound(g)
}

pub fn is_loony(g: &Form) -> Result<bool> {
    DEFAULT.is_loony(g)
}

pub fn eq_im(g: &Form, h: &Form) -> Result<bool> {
    DEFAULT.eq_im(g, h)
}

pub fn is_manoeuvrable(g: &Form) -> Result<bool> {
    DEFAULT.is_manoeuvrable(g)
}
