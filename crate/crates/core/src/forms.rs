//! Affine normal-play forms.
//!
//! Every form is hash-consed in a process-wide store: two constructions of
//! the same literal form return the same [`Form`] handle, so equality,
//! hashing and ordering are all by interned identity. Option lists are
//! sorted by identity and deduplicated; no other simplification happens.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, LazyLock};

use dashmap::DashMap;
use parking_lot::Mutex;

use crate::error::{Error, Result};

/// Interned identity of a form.
pub type FormId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Left wins on arrival.
    Inf,
    /// Right wins on arrival.
    OInf,
    Position,
}

struct Node {
    id: FormId,
    kind: Kind,
    left: Box<[Form]>,
    right: Box<[Form]>,
}

/// Handle to an interned form. Cheap to clone.
#[derive(Clone)]
pub struct Form(Arc<Node>);

type Key = (Box<[FormId]>, Box<[FormId]>);

struct Store {
    inf: Form,
    oinf: Form,
    // ids are handed out under this lock, so the first writer wins
    table: Mutex<(HashMap<Key, Form>, FormId)>,
}

static STORE: LazyLock<Store> = LazyLock::new(|| {
    let terminal = |id, kind| {
        Form(Arc::new(Node {
            id,
            kind,
            left: Box::new([]),
            right: Box::new([]),
        }))
    };
    Store {
        inf: terminal(0, Kind::Inf),
        oinf: terminal(1, Kind::OInf),
        table: Mutex::new((HashMap::new(), 2)),
    }
});

static NIMBERS: LazyLock<Mutex<Vec<Form>>> = LazyLock::new(|| Mutex::new(Vec::new()));
static CONJUGATES: LazyLock<DashMap<FormId, Form>> = LazyLock::new(DashMap::new);
static LITERAL_NIMBERS: LazyLock<DashMap<FormId, Option<u32>>> = LazyLock::new(DashMap::new);
static SUMS: LazyLock<DashMap<(FormId, FormId), Form>> = LazyLock::new(DashMap::new);
static CONWAY_CLOSED: LazyLock<DashMap<FormId, bool>> = LazyLock::new(DashMap::new);
static QUIET_SYMMETRIC: LazyLock<DashMap<FormId, bool>> = LazyLock::new(DashMap::new);

impl Form {
    pub fn inf() -> Form {
        STORE.inf.clone()
    }

    pub fn oinf() -> Form {
        STORE.oinf.clone()
    }

    /// `{oinf | inf}`, the first-player loss.
    pub fn zero() -> Form {
        nimber(0)
    }

    /// The literal moon `{inf | oinf}`.
    pub fn moon() -> Form {
        make_position([Form::inf()], [Form::oinf()]).expect("both sides are nonempty")
    }

    pub fn id(&self) -> FormId {
        self.0.id
    }

    pub fn kind(&self) -> Kind {
        self.0.kind
    }

    pub fn is_inf(&self) -> bool {
        self.0.kind == Kind::Inf
    }

    pub fn is_oinf(&self) -> bool {
        self.0.kind == Kind::OInf
    }

    pub fn is_terminal(&self) -> bool {
        self.0.kind != Kind::Position
    }

    /// Left options in canonical order; empty for terminals.
    pub fn left(&self) -> &[Form] {
        &self.0.left
    }

    /// Right options in canonical order; empty for terminals.
    pub fn right(&self) -> &[Form] {
        &self.0.right
    }

    pub fn is_left_check(&self) -> bool {
        self.left().iter().any(Form::is_inf)
    }

    pub fn is_right_check(&self) -> bool {
        self.right().iter().any(Form::is_oinf)
    }

    pub fn is_check(&self) -> bool {
        self.is_left_check() || self.is_right_check()
    }

    /// A position that is neither a Left-check nor a Right-check.
    pub fn is_quiet(&self) -> bool {
        !self.is_terminal() && !self.is_check()
    }

    /// Right options are exactly the conjugates of the Left options.
    pub fn is_symmetric(&self) -> bool {
        if self.is_terminal() {
            return false;
        }
        let mut mirrored: Vec<FormId> = self.left().iter().map(|l| conjugate(l).id()).collect();
        mirrored.sort_unstable();
        mirrored.dedup();
        mirrored.iter().copied().eq(self.right().iter().map(Form::id))
    }

    /// Symmetric, and every quiet follower is symmetric too.
    pub fn is_affine_impartial(&self) -> bool {
        self.is_symmetric() && quiet_followers_symmetric(self)
    }

    /// Not a terminal, and no follower (itself included) is a check.
    pub fn is_conway_form(&self) -> bool {
        !self.is_terminal() && conway_closed(self)
    }

    /// `Some(k)` when this is literally the form `*k`.
    pub fn as_nimber(&self) -> Option<u32> {
        literal_nimber(self)
    }

    pub fn is_moon_literal(&self) -> bool {
        self.left().len() == 1
            && self.right().len() == 1
            && self.left()[0].is_inf()
            && self.right()[0].is_oinf()
    }
}

impl PartialEq for Form {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Form {}

impl Hash for Form {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state)
    }
}

impl PartialOrd for Form {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Form {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.id.cmp(&other.0.id)
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn canonical(options: impl IntoIterator<Item = Form>) -> Vec<Form> {
    let mut options: Vec<Form> = options.into_iter().collect();
    options.sort_unstable();
    options.dedup();
    options
}

/// Interns the position `{left | right}`.
pub fn make_position(
    left: impl IntoIterator<Item = Form>,
    right: impl IntoIterator<Item = Form>,
) -> Result<Form> {
    let left = canonical(left);
    let right = canonical(right);
    if left.is_empty() || right.is_empty() {
        return Err(Error::EmptySide);
    }
    let key: Key = (
        left.iter().map(Form::id).collect(),
        right.iter().map(Form::id).collect(),
    );
    let mut guard = STORE.table.lock();
    let (table, next) = &mut *guard;
    if let Some(found) = table.get(&key) {
        return Ok(found.clone());
    }
    let form = Form(Arc::new(Node {
        id: *next,
        kind: Kind::Position,
        left: left.into_boxed_slice(),
        right: right.into_boxed_slice(),
    }));
    *next = next.checked_add(1).expect("form store exhausted");
    table.insert(key, form.clone());
    Ok(form)
}

/// `*0 = {oinf | inf}`, `*k = {*0..*(k-1) | *0..*(k-1)}`.
pub fn nimber(k: u32) -> Form {
    let mut ladder = NIMBERS.lock();
    while ladder.len() <= k as usize {
        let next = if ladder.is_empty() {
            make_position([Form::oinf()], [Form::inf()])
        } else {
            make_position(ladder.iter().cloned(), ladder.iter().cloned())
        };
        ladder.push(next.expect("nimber sides are nonempty"));
    }
    ladder[k as usize].clone()
}

fn literal_nimber(g: &Form) -> Option<u32> {
    if g.is_terminal() {
        return None;
    }
    if let Some(hit) = LITERAL_NIMBERS.get(&g.id()) {
        return *hit;
    }
    let found = if g.left().len() == 1 && g.left()[0].is_oinf() {
        (g.right().len() == 1 && g.right()[0].is_inf()).then_some(0)
    } else if g.left().len() != g.right().len()
        || g.left().iter().zip(g.right()).any(|(l, r)| l != r)
    {
        None
    } else {
        let k = g.left().len();
        let mut seen = vec![false; k];
        let complete = g.left().iter().all(|o| match literal_nimber(o) {
            Some(v) if (v as usize) < k && !seen[v as usize] => {
                seen[v as usize] = true;
                true
            }
            _ => false,
        });
        complete.then_some(k as u32)
    };
    LITERAL_NIMBERS.insert(g.id(), found);
    found
}

/// Swaps the players recursively; `inf` and `oinf` trade places.
pub fn conjugate(g: &Form) -> Form {
    match g.kind() {
        Kind::Inf => return Form::oinf(),
        Kind::OInf => return Form::inf(),
        Kind::Position => {}
    }
    if let Some(hit) = CONJUGATES.get(&g.id()) {
        return hit.clone();
    }
    let left: Vec<Form> = g.right().iter().map(conjugate).collect();
    let right: Vec<Form> = g.left().iter().map(conjugate).collect();
    let conj = make_position(left, right).expect("conjugation preserves nonempty sides");
    CONJUGATES.insert(g.id(), conj.clone());
    CONJUGATES.insert(conj.id(), g.clone());
    conj
}

fn conway_closed(g: &Form) -> bool {
    if g.is_terminal() {
        return true;
    }
    if let Some(hit) = CONWAY_CLOSED.get(&g.id()) {
        return *hit;
    }
    let ok = !g.is_check() && g.left().iter().chain(g.right()).all(conway_closed);
    CONWAY_CLOSED.insert(g.id(), ok);
    ok
}

fn quiet_followers_symmetric(g: &Form) -> bool {
    if g.is_terminal() {
        return true;
    }
    if let Some(hit) = QUIET_SYMMETRIC.get(&g.id()) {
        return *hit;
    }
    let ok = (!g.is_quiet() || g.is_symmetric())
        && g.left().iter().chain(g.right()).all(quiet_followers_symmetric);
    QUIET_SYMMETRIC.insert(g.id(), ok);
    ok
}

/// `g` together with everything reachable through options, ordered by identity.
pub fn followers(g: &Form) -> Vec<Form> {
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![g.clone()];
    let mut out = Vec::new();
    while let Some(f) = stack.pop() {
        if !seen.insert(f.id()) {
            continue;
        }
        stack.extend(f.left().iter().chain(f.right()).cloned());
        out.push(f);
    }
    out.sort_unstable();
    out
}

/// A disjunctive sum of positions: a sorted multiset with no terminals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SumPosition {
    components: Vec<Form>,
}

impl SumPosition {
    pub fn components(&self) -> &[Form] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl fmt::Debug for SumPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Result of adding forms: either a proper sum or an absorbing terminal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sum {
    Absorbed(Form),
    Position(SumPosition),
}

impl Sum {
    pub fn components(&self) -> &[Form] {
        match self {
            Sum::Absorbed(t) => std::slice::from_ref(t),
            Sum::Position(p) => p.components(),
        }
    }
}

/// Builds a sum, letting `inf` or `oinf` absorb everything else.
pub fn make_sum(components: &[Form]) -> Result<Sum> {
    if components.is_empty() {
        return Err(Error::EmptySum);
    }
    let has_inf = components.iter().any(Form::is_inf);
    let has_oinf = components.iter().any(Form::is_oinf);
    match (has_inf, has_oinf) {
        (true, true) => Err(Error::UndefinedSum),
        (true, false) => Ok(Sum::Absorbed(Form::inf())),
        (false, true) => Ok(Sum::Absorbed(Form::oinf())),
        (false, false) => {
            let mut components = components.to_vec();
            components.sort_unstable();
            Ok(Sum::Position(SumPosition { components }))
        }
    }
}

fn add_literal(a: &Form, b: &Form) -> Result<Form> {
    match (a.kind(), b.kind()) {
        (Kind::Inf, Kind::OInf) | (Kind::OInf, Kind::Inf) => Err(Error::UndefinedSum),
        (Kind::Inf, _) | (_, Kind::Inf) => Ok(Form::inf()),
        (Kind::OInf, _) | (_, Kind::OInf) => Ok(Form::oinf()),
        _ => expand_sum(a, b),
    }
}

/// Writes `a + b` out as a single literal form.
///
/// Exponential in the follower counts; intended for small inputs only
/// (a couple of hundred combined followers).
pub fn expand_sum(a: &Form, b: &Form) -> Result<Form> {
    if a.is_terminal() || b.is_terminal() {
        return add_literal(a, b);
    }
    let key = (a.id().min(b.id()), a.id().max(b.id()));
    if let Some(hit) = SUMS.get(&key) {
        return Ok(hit.clone());
    }
    let side = |a_opts: &[Form], b_opts: &[Form]| -> Result<Vec<Form>> {
        let mut out = Vec::with_capacity(a_opts.len() + b_opts.len());
        for x in a_opts {
            out.push(add_literal(x, b)?);
        }
        for y in b_opts {
            out.push(add_literal(a, y)?);
        }
        Ok(out)
    };
    let sum = make_position(side(a.left(), b.left())?, side(a.right(), b.right())?)?;
    SUMS.insert(key, sum.clone());
    Ok(sum)
}
