//! TOP ENTAILS heaps.
//!
//! A move either splits a heap into two nonempty heaps, or removes the top
//! token, after which the opponent must reply on that same heap. The values
//! follow from a recursion on immediate and protected nimber sets:
//! `P_n = Im \ (S_{n-1} ∪ P_{n-1})` and `S_n` holds the values of the
//! non-loony splits `l + m = n`.

use std::sync::LazyLock;

use dashmap::DashMap;
use serde_json::json;

use crate::error::{Error, Result};
use crate::forms::{conjugate, expand_sum, make_position, Form};
use crate::grundy::{NimberSet, Value};

/// Largest heap for which [`direct_form`] expands the literal form.
pub const MAX_DIRECT_HEAP: usize = 7;

const MOON: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeapRecord {
    pub n: usize,
    pub value: Value,
    /// Immediate nimbers `S_n`; always finite.
    pub immediate: NimberSet,
    /// Protected nimbers `P_n`; finite or cofinite.
    pub protected: NimberSet,
}

impl HeapRecord {
    /// One JSON object, e.g. `{"n":6,"S":[1],"P":[0],"value":"*2","grundy":2}`.
    /// A cofinite set is written as `{"all_except":[...]}`; the moon's
    /// Grundy number is the string `"inf"`.
    pub fn to_json(&self) -> serde_json::Value {
        let grundy = match self.value {
            Value::Nimber(k) => json!(k),
            Value::Moon => json!("inf"),
        };
        json!({
            "n": self.n,
            "S": set_json(&self.immediate),
            "P": set_json(&self.protected),
            "value": self.value.to_string(),
            "grundy": grundy,
        })
    }
}

pub fn set_json(s: &NimberSet) -> serde_json::Value {
    match s.members() {
        Some(m) => json!(m),
        None => json!({ "all_except": s.excluded().unwrap_or_default() }),
    }
}

/// Runs the recursion one heap size at a time.
pub struct Sweep {
    values: Vec<u32>,
    immediate: NimberSet,
    protected: NimberSet,
    // values are below 2^width_bits
    width_bits: u32,
}

impl Default for Sweep {
    fn default() -> Self {
        Self::new()
    }
}

impl Sweep {
    pub fn new() -> Self {
        Sweep {
            values: Vec::new(),
            immediate: NimberSet::empty(),
            protected: NimberSet::empty(),
            width_bits: 0,
        }
    }

    /// Heap size of the next record.
    pub fn next_n(&self) -> usize {
        self.values.len()
    }

    fn split_values(&self, n: usize) -> NimberSet {
        let words = (1usize << self.width_bits).div_ceil(64).max(1);
        let mut bits = vec![0u64; words];
        let v = &self.values;
        for l in 1..=n / 2 {
            let (a, b) = (v[l], v[n - l]);
            if a != MOON && b != MOON {
                let x = (a ^ b) as usize;
                bits[x >> 6] |= 1 << (x & 63);
            }
        }
        NimberSet::from_words(false, bits)
    }

    /// Computes the record for heap `next_n()`.
    pub fn advance(&mut self) -> HeapRecord {
        let n = self.values.len();
        let (immediate, protected) = if n == 0 {
            (NimberSet::empty(), NimberSet::empty())
        } else {
            (
                self.split_values(n),
                self.immediate.union(&self.protected).complement(),
            )
        };
        let value = immediate
            .union(&protected)
            .mex()
            .map_or(Value::Moon, Value::Nimber);
        let raw = value.grundy().unwrap_or(MOON);
        if raw != MOON {
            while raw >> self.width_bits != 0 {
                self.width_bits += 1;
            }
        }
        self.values.push(raw);
        self.immediate = immediate.clone();
        self.protected = protected.clone();
        HeapRecord {
            n,
            value,
            immediate,
            protected,
        }
    }
}

impl Iterator for Sweep {
    type Item = HeapRecord;

    fn next(&mut self) -> Option<HeapRecord> {
        Some(self.advance())
    }
}

/// Records for heaps `0..=max_n`.
pub fn compute_table(max_n: usize) -> Vec<HeapRecord> {
    Sweep::new().take(max_n + 1).collect()
}

/// Heap sizes up to `max_n` whose value is the moon.
///
/// Checks along the way that heap `n` is loony exactly when
/// `S_{n-1} ∪ P_{n-1} ⊆ S_n`.
pub fn scan_loony(max_n: usize) -> Vec<usize> {
    let mut loony = Vec::new();
    let mut previous_union = NimberSet::empty();
    for record in Sweep::new().take(max_n + 1) {
        if record.n > 0 {
            let criterion = previous_union.is_subset(&record.immediate);
            assert_eq!(
                criterion,
                record.value == Value::Moon,
                "moon criterion disagrees with the mex rule at heap {}",
                record.n
            );
        }
        if record.value == Value::Moon {
            loony.push(record.n);
        }
        previous_union = record.immediate.union(&record.protected);
    }
    loony
}

static DIRECT: LazyLock<DashMap<usize, Form>> = LazyLock::new(DashMap::new);

/// The literal form of a heap of `n` tokens.
///
/// Left may split into `l + m` (the expanded literal sum) or remove the top
/// token, giving `{inf | Right options of heap n-1}`; Right mirrors.
pub fn direct_form(n: usize) -> Result<Form> {
    if n > MAX_DIRECT_HEAP {
        return Err(Error::TooLarge(format!(
            "literal heap forms are expanded only up to {MAX_DIRECT_HEAP} tokens"
        )));
    }
    if n == 0 {
        return Ok(Form::zero());
    }
    if let Some(hit) = DIRECT.get(&n) {
        return Ok(hit.clone());
    }
    let mut left = Vec::new();
    for l in 1..=n / 2 {
        left.push(expand_sum(&direct_form(l)?, &direct_form(n - l)?)?);
    }
    let below = direct_form(n - 1)?;
    left.push(make_position([Form::inf()], below.right().iter().cloned())?);
    let right: Vec<Form> = left.iter().map(conjugate).collect();
    let form = make_position(left, right)?;
    DIRECT.insert(n, form.clone());
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_form;

    #[test]
    fn first_heaps() {
        let t = compute_table(3);
        assert_eq!(t[0].value, Value::Nimber(0));
        assert_eq!(t[1].value, Value::Moon);
        assert_eq!(t[1].protected, NimberSet::all());
        assert_eq!(t[2].immediate, NimberSet::empty());
        assert_eq!(t[2].protected, NimberSet::empty());
        assert_eq!(t[2].value, Value::Nimber(0));
        assert_eq!(t[3].value, Value::Moon);
    }

    #[test]
    fn heap_one_literal() {
        assert_eq!(
            direct_form(1).unwrap(),
            parse_form("{{inf|inf}|{oinf|oinf}}").unwrap()
        );
        assert_eq!(direct_form(0).unwrap(), Form::zero());
        assert!(matches!(direct_form(8), Err(Error::TooLarge(_))));
    }

    #[test]
    fn json_lines() {
        let t = compute_table(6);
        assert_eq!(
            t[6].to_json().to_string(),
            r#"{"n":6,"S":[1],"P":[0],"value":"*2","grundy":2}"#
        );
        assert_eq!(
            t[1].to_json().to_string(),
            r#"{"n":1,"S":[],"P":{"all_except":[]},"value":"moon","grundy":"inf"}"#
        );
    }

    #[test]
    fn small_scan() {
        assert_eq!(scan_loony(12), vec![1, 3]);
    }
}
