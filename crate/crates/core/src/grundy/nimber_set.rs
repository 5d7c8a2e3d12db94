use std::fmt;

/// A finite or cofinite set of Grundy numbers.
///
/// Stored as a bit vector: the members when finite, the excluded
/// complement when cofinite. Trailing zero words are always trimmed so
/// that structural equality is set equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct NimberSet {
    cofinite: bool,
    bits: Vec<u64>,
}

fn zip_words(a: &[u64], b: &[u64], op: impl Fn(u64, u64) -> u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            op(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            )
        })
        .collect()
}

fn bit_positions(words: &[u64]) -> impl Iterator<Item = u32> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros();
            rest &= rest - 1;
            Some(w as u32 * 64 + b)
        })
    })
}

impl NimberSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Every nimber.
    pub fn all() -> Self {
        NimberSet {
            cofinite: true,
            bits: Vec::new(),
        }
    }

    pub fn finite(members: impl IntoIterator<Item = u32>) -> Self {
        let mut s = Self::empty();
        for m in members {
            s.insert(m);
        }
        s
    }

    /// Everything except `excluded`.
    pub fn all_except(excluded: impl IntoIterator<Item = u32>) -> Self {
        Self::finite(excluded).complement()
    }

    fn from_raw(cofinite: bool, mut bits: Vec<u64>) -> Self {
        while bits.last() == Some(&0) {
            bits.pop();
        }
        NimberSet { cofinite, bits }
    }

    pub fn is_finite(&self) -> bool {
        !self.cofinite
    }

    pub fn is_empty(&self) -> bool {
        !self.cofinite && self.bits.is_empty()
    }

    pub fn is_all(&self) -> bool {
        self.cofinite && self.bits.is_empty()
    }

    fn raw_bit(&self, n: u32) -> bool {
        let w = (n / 64) as usize;
        self.bits.get(w).is_some_and(|word| word >> (n % 64) & 1 == 1)
    }

    fn set_raw_bit(&mut self, n: u32, on: bool) {
        let w = (n / 64) as usize;
        if on {
            if self.bits.len() <= w {
                self.bits.resize(w + 1, 0);
            }
            self.bits[w] |= 1 << (n % 64);
        } else if w < self.bits.len() {
            self.bits[w] &= !(1 << (n % 64));
            while self.bits.last() == Some(&0) {
                self.bits.pop();
            }
        }
    }

    pub fn contains(&self, n: u32) -> bool {
        self.raw_bit(n) != self.cofinite
    }

    pub fn insert(&mut self, n: u32) {
        let cofinite = self.cofinite;
        self.set_raw_bit(n, !cofinite);
    }

    pub fn remove(&mut self, n: u32) {
        let cofinite = self.cofinite;
        self.set_raw_bit(n, cofinite);
    }

    pub fn complement(&self) -> Self {
        NimberSet {
            cofinite: !self.cofinite,
            bits: self.bits.clone(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        match (self.cofinite, other.cofinite) {
            (false, false) => Self::from_raw(false, zip_words(&self.bits, &other.bits, |a, b| a | b)),
            (false, true) => Self::from_raw(true, zip_words(&other.bits, &self.bits, |e, a| e & !a)),
            (true, false) => Self::from_raw(true, zip_words(&self.bits, &other.bits, |e, a| e & !a)),
            (true, true) => Self::from_raw(true, zip_words(&self.bits, &other.bits, |a, b| a & b)),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        match (self.cofinite, other.cofinite) {
            (false, false) => Self::from_raw(false, zip_words(&self.bits, &other.bits, |a, b| a & b)),
            (false, true) => Self::from_raw(false, zip_words(&self.bits, &other.bits, |a, e| a & !e)),
            (true, false) => Self::from_raw(false, zip_words(&other.bits, &self.bits, |a, e| a & !e)),
            (true, true) => Self::from_raw(true, zip_words(&self.bits, &other.bits, |a, b| a | b)),
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    /// Least nonnegative integer not in the set; `None` when the set is all of Im.
    pub fn mex(&self) -> Option<u32> {
        if self.cofinite {
            bit_positions(&self.bits).next()
        } else {
            let w = self.bits.iter().position(|&word| word != u64::MAX);
            Some(match w {
                Some(w) => w as u32 * 64 + (!self.bits[w]).trailing_zeros(),
                None => self.bits.len() as u32 * 64,
            })
        }
    }

    /// Members of a finite set, or the excluded elements of a cofinite one, ascending.
    pub fn listed(&self) -> impl Iterator<Item = u32> + '_ {
        bit_positions(&self.bits)
    }

    /// Members in ascending order; `None` for a cofinite set.
    pub fn members(&self) -> Option<Vec<u32>> {
        (!self.cofinite).then(|| self.listed().collect())
    }

    /// The excluded elements of a cofinite set.
    pub fn excluded(&self) -> Option<Vec<u32>> {
        self.cofinite.then(|| self.listed().collect())
    }

    pub(crate) fn from_words(cofinite: bool, words: Vec<u64>) -> Self {
        Self::from_raw(cofinite, words)
    }
}

impl FromIterator<u32> for NimberSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        NimberSet::finite(iter)
    }
}

/// `{}`, `{0,2}`, `Im`, `Im\{0,1}`.
impl fmt::Display for NimberSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let listed: Vec<String> = self.listed().map(|n| n.to_string()).collect();
        match (self.cofinite, listed.is_empty()) {
            (true, true) => f.write_str("Im"),
            (true, false) => write!(f, "Im\\{{{}}}", listed.join(",")),
            (false, _) => write!(f, "{{{}}}", listed.join(",")),
        }
    }
}

impl fmt::Debug for NimberSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
