//! NIMSTRING boards.
//!
//! A board is a `rows x cols` grid of boxes with some edges drawn. Drawing
//! an edge that completes a box obliges the same player to move again;
//! a player who must move and cannot loses. Boards translate into affine
//! impartial forms by encoding each carry-on as a check, and a separate
//! rules-level solver plays sums of boards directly.

use std::fmt;
use std::sync::LazyLock;

use dashmap::DashMap;

use crate::error::{Error, Result};
use crate::forms::{make_position, Form};
use crate::grundy::{self, Value};
use crate::outcomes::Outcome;

/// Boards are stored as a 128-bit edge mask.
pub const MAX_EDGES: usize = 128;

/// `H(r, c)` is the top edge of box row `r` (0..=rows), column `c`;
/// `V(r, c)` is the left edge of box row `r`, column `c` (0..=cols).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    H(usize, usize),
    V(usize, usize),
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Edge::H(r, c) => write!(f, "H {r} {c}"),
            Edge::V(r, c) => write!(f, "V {r} {c}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Board {
    rows: usize,
    cols: usize,
    drawn: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveResult {
    pub board: Board,
    /// Boxes completed by the move: 0, 1 or 2.
    pub completed: u8,
}

impl Board {
    /// An empty board.
    pub fn new(rows: usize, cols: usize) -> Result<Board> {
        if rows == 0 || cols == 0 {
            return Err(Error::TooLarge(format!(
                "a {rows}x{cols} board has no boxes"
            )));
        }
        let edges = (rows + 1) * cols + rows * (cols + 1);
        if edges > MAX_EDGES {
            return Err(Error::TooLarge(format!(
                "a {rows}x{cols} board has {edges} edges, more than {MAX_EDGES}"
            )));
        }
        Ok(Board {
            rows,
            cols,
            drawn: 0,
        })
    }

    pub fn with_edges(rows: usize, cols: usize, edges: &[Edge]) -> Result<Board> {
        let mut b = Board::new(rows, cols)?;
        for &e in edges {
            let i = b.index(e).ok_or_else(|| Error::OutOfBounds(e.to_string()))?;
            if b.drawn >> i & 1 == 1 {
                return Err(Error::DuplicateEdge(e.to_string()));
            }
            b.drawn |= 1 << i;
        }
        Ok(b)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn edge_count(&self) -> usize {
        (self.rows + 1) * self.cols + self.rows * (self.cols + 1)
    }

    fn horizontal_count(&self) -> usize {
        (self.rows + 1) * self.cols
    }

    fn index(&self, e: Edge) -> Option<usize> {
        match e {
            Edge::H(r, c) if r <= self.rows && c < self.cols => Some(r * self.cols + c),
            Edge::V(r, c) if r < self.rows && c <= self.cols => {
                Some(self.horizontal_count() + r * (self.cols + 1) + c)
            }
            _ => None,
        }
    }

    fn edge_at(&self, i: usize) -> Edge {
        let h = self.horizontal_count();
        if i < h {
            Edge::H(i / self.cols, i % self.cols)
        } else {
            let j = i - h;
            Edge::V(j / (self.cols + 1), j % (self.cols + 1))
        }
    }

    pub fn is_drawn(&self, e: Edge) -> bool {
        self.index(e).is_some_and(|i| self.drawn >> i & 1 == 1)
    }

    pub fn drawn_edges(&self) -> Vec<Edge> {
        (0..self.edge_count())
            .filter(|&i| self.drawn >> i & 1 == 1)
            .map(|i| self.edge_at(i))
            .collect()
    }

    pub fn undrawn_edges(&self) -> Vec<Edge> {
        (0..self.edge_count())
            .filter(|&i| self.drawn >> i & 1 == 0)
            .map(|i| self.edge_at(i))
            .collect()
    }

    pub fn undrawn_count(&self) -> usize {
        self.edge_count() - self.drawn.count_ones() as usize
    }

    pub fn is_full(&self) -> bool {
        self.undrawn_count() == 0
    }

    pub fn is_complete(&self, r: usize, c: usize) -> bool {
        [Edge::H(r, c), Edge::H(r + 1, c), Edge::V(r, c), Edge::V(r, c + 1)]
            .iter()
            .all(|&e| self.is_drawn(e))
    }

    fn boxes_beside(&self, e: Edge) -> impl Iterator<Item = (usize, usize)> {
        let (a, b) = match e {
            Edge::H(r, c) => (
                (r > 0).then(|| (r - 1, c)),
                (r < self.rows).then_some((r, c)),
            ),
            Edge::V(r, c) => (
                (c > 0).then(|| (r, c - 1)),
                (c < self.cols).then_some((r, c)),
            ),
        };
        a.into_iter().chain(b)
    }

    /// Draws `e`, counting the boxes it completes.
    pub fn apply(&self, e: Edge) -> Result<MoveResult> {
        let i = self.index(e).ok_or_else(|| Error::OutOfBounds(e.to_string()))?;
        if self.drawn >> i & 1 == 1 {
            return Err(Error::IllegalMove(e.to_string()));
        }
        let board = Board {
            drawn: self.drawn | 1 << i,
            ..*self
        };
        let completed = board
            .boxes_beside(e)
            .filter(|&(r, c)| board.is_complete(r, c))
            .count() as u8;
        Ok(MoveResult { board, completed })
    }

    /// The board file text: a `rows cols` line, then one drawn edge per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for e in self.drawn_edges() {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }

    /// ASCII picture; completed boxes are marked `#`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in 0..=self.rows {
            for c in 0..self.cols {
                out.push('+');
                out.push_str(if self.is_drawn(Edge::H(r, c)) { "---" } else { "   " });
            }
            out.push_str("+\n");
            if r == self.rows {
                break;
            }
            for c in 0..=self.cols {
                out.push(if self.is_drawn(Edge::V(r, c)) { '|' } else { ' ' });
                if c < self.cols {
                    out.push_str(if self.is_complete(r, c) { " # " } else { "   " });
                }
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Board({}x{}, drawn: [", self.rows, self.cols)?;
        for (i, e) in self.drawn_edges().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("])")
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Parses the board file format. `#` starts a comment.
pub fn parse_board(text: &str) -> Result<Board> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (n, header) = lines
        .next()
        .ok_or_else(|| syntax(1, 1, "missing 'rows cols' header"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let dim = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| syntax(n, 1, format!("bad dimension '{s}'")))
    };
    if dims.len() != 2 {
        return Err(syntax(n, 1, "header must be 'rows cols'"));
    }
    let mut board = Board::new(dim(dims[0])?, dim(dims[1])?)?;
    for (n, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(syntax(n, 1, "expected 'H r c' or 'V r c'"));
        }
        let coord = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| syntax(n, 1, format!("bad coordinate '{s}'")))
        };
        let (r, c) = (coord(parts[1])?, coord(parts[2])?);
        let e = match parts[0] {
            "H" | "h" => Edge::H(r, c),
            "V" | "v" => Edge::V(r, c),
            other => return Err(syntax(n, 1, format!("unknown edge kind '{other}'"))),
        };
        let i = board.index(e).ok_or_else(|| Error::OutOfBounds(e.to_string()))?;
        if board.drawn >> i & 1 == 1 {
            return Err(Error::DuplicateEdge(e.to_string()));
        }
        board.drawn |= 1 << i;
    }
    Ok(board)
}

static FORMS: LazyLock<DashMap<Board, Form>> = LazyLock::new(DashMap::new);
static MOVER_WINS: LazyLock<DashMap<Vec<Board>, bool>> = LazyLock::new(DashMap::new);

/// Translates a board into an affine impartial form.
///
/// A quiet move leads to the next board's form. A move completing a box
/// becomes the check `{inf | next}` for Left (`{next | oinf}` for Right),
/// so the opponent's forced reply hands the move straight back. Completing
/// the last box leaves the mover stranded: `oinf` for Left, `inf` for Right.
pub fn to_form(b: &Board) -> Form {
    if let Some(hit) = FORMS.get(b) {
        return hit.clone();
    }
    let form = if b.is_full() {
        Form::zero()
    } else {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for e in b.undrawn_edges() {
            let MoveResult { board, completed } = b.apply(e).expect("edge is undrawn");
            if completed == 0 {
                let next = to_form(&board);
                left.push(next.clone());
                right.push(next);
            } else if board.is_full() {
                left.push(Form::oinf());
                right.push(Form::inf());
            } else {
                let next = to_form(&board);
                left.push(make_position([Form::inf()], [next.clone()]).expect("nonempty"));
                right.push(make_position([next], [Form::oinf()]).expect("nonempty"));
            }
        }
        make_position(left, right).expect("a board with an undrawn edge has options")
    };
    FORMS.insert(*b, form.clone());
    form
}

pub fn value_of_board(b: &Board) -> Value {
    grundy::value(&to_form(b)).expect("board forms are affine impartial")
}

fn canonical_state(boards: impl IntoIterator<Item = Board>) -> Vec<Board> {
    let mut state: Vec<Board> = boards.into_iter().filter(|b| !b.is_full()).collect();
    state.sort_unstable();
    state
}

// Does the player obliged to move now win?
fn mover_wins(state: &[Board]) -> bool {
    if state.is_empty() {
        return false;
    }
    if let Some(hit) = MOVER_WINS.get(state) {
        return *hit;
    }
    let wins = state.iter().enumerate().any(|(i, b)| {
        (i == 0 || state[i - 1] != *b)
            && b.undrawn_edges().into_iter().any(|e| move_wins(state, i, e))
    });
    MOVER_WINS.insert(state.to_vec(), wins);
    wins
}

fn move_wins(state: &[Board], i: usize, e: Edge) -> bool {
    let MoveResult { board, completed } = state[i].apply(e).expect("edge is undrawn");
    let mut next: Vec<Board> = state.to_vec();
    next[i] = board;
    let next = canonical_state(next);
    if completed > 0 {
        mover_wins(&next)
    } else {
        !mover_wins(&next)
    }
}

/// Outcome of the disjunctive union of `boards`, from the raw rules.
pub fn direct_outcome(boards: &[Board]) -> Outcome {
    if mover_wins(&canonical_state(boards.iter().copied())) {
        Outcome::N
    } else {
        Outcome::P
    }
}

/// First moves `(component, edge)` after which the mover goes on to win.
pub fn winning_moves(boards: &[Board]) -> Vec<(usize, Edge)> {
    let mut out = Vec::new();
    for (i, b) in boards.iter().enumerate() {
        for e in b.undrawn_edges() {
            let MoveResult { board, completed } = b.apply(e).expect("edge is undrawn");
            let mut next = boards.to_vec();
            next[i] = board;
            let next = canonical_state(next);
            let wins = if completed > 0 {
                mover_wins(&next)
            } else {
                !mover_wins(&next)
            };
            if wins {
                out.push((i, e));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_form;

    pub(crate) const TWO_BOX_CHAIN: &str = "2 1\nV 0 0\nV 0 1\nV 1 0\nV 1 1\nH 2 0";

    #[test]
    fn parses_two_box_chain() {
        let b = parse_board(TWO_BOX_CHAIN).unwrap();
        assert_eq!(b.undrawn_edges(), vec![Edge::H(0, 0), Edge::H(1, 0)]);
        assert_eq!(parse_board(&b.to_text()).unwrap(), b);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_board(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_board("1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_board("1 1\nX 0 0"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_board("1 1\nH 2 0"), Err(Error::OutOfBounds(_))));
        assert!(matches!(parse_board("1 1\nV 0 2"), Err(Error::OutOfBounds(_))));
        assert!(matches!(
            parse_board("1 1\nH 0 0\nH 0 0"),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(matches!(parse_board("9 9"), Err(Error::TooLarge(_))));
        let commented = parse_board("# a box\n1 1  # dims\nV 0 0\n\nV 0 1 # sides\nH 0 0").unwrap();
        assert_eq!(commented.undrawn_edges(), vec![Edge::H(1, 0)]);
    }

    #[test]
    fn full_single_box() {
        let b = parse_board("1 1\nH 0 0\nH 1 0\nV 0 0\nV 0 1").unwrap();
        assert!(b.is_full());
        assert_eq!(to_form(&b), Form::zero());
        assert_eq!(value_of_board(&b), Value::Nimber(0));
        assert_eq!(direct_outcome(&[b]), Outcome::P);
    }

    #[test]
    fn moves_count_completed_boxes() {
        let b = parse_board(TWO_BOX_CHAIN).unwrap();
        assert_eq!(b.apply(Edge::H(0, 0)).unwrap().completed, 0);
        assert_eq!(b.apply(Edge::H(1, 0)).unwrap().completed, 1);
        let double = b.apply(Edge::H(0, 0)).unwrap().board;
        assert_eq!(double.apply(Edge::H(1, 0)).unwrap().completed, 2);
        assert!(matches!(double.apply(Edge::H(0, 0)), Err(Error::IllegalMove(_))));
    }

    #[test]
    fn one_edge_left_is_zero() {
        let b = parse_board("1 1\nV 0 0\nV 0 1\nH 0 0").unwrap();
        assert_eq!(to_form(&b), Form::zero());
        assert_eq!(value_of_board(&b), Value::Nimber(0));
        assert_eq!(direct_outcome(&[b]), Outcome::P);
    }

    #[test]
    fn two_box_chain_form() {
        let b = parse_board(TWO_BOX_CHAIN).unwrap();
        assert_eq!(to_form(&b), parse_form("{{inf|0},0|{0|oinf},0}").unwrap());
        assert_eq!(value_of_board(&b), Value::Moon);
        assert_eq!(direct_outcome(&[b]), Outcome::N);
        assert_eq!(winning_moves(&[b]), vec![(0, Edge::H(0, 0))]);
    }

    #[test]
    fn render_marks_boxes() {
        let b = parse_board("1 2\nH 0 0\nH 1 0\nV 0 0\nV 0 1\nH 0 1").unwrap();
        assert_eq!(b.render(), "+---+---+\n| # |    \n+---+   +\n");
    }
}
