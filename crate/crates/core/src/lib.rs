//! Solver for impartial games with entailing moves.
//!
//! Games are affine normal-play forms built over two terminals, `inf`
//! (Left wins) and `oinf` (Right wins). A carry-on or "must reply here"
//! move becomes a check: a position offering the mover's infinity, which
//! the opponent must answer locally. On top of that sit a four-outcome
//! solver for sums, Sprague-Grundy values extended by the moon, and
//! complete analyses of NIMSTRING boards and TOP ENTAILS heaps.
//!
//! ```
//! use entail::{grundy, parse_form, Value};
//! use entail::outcomes::{outcome_of_forms, Outcome};
//!
//! let g = parse_form("{0,moon,moon|0,moon,moon}")?;
//! assert_eq!(grundy::value(&g)?, Value::Nimber(1));
//! assert_eq!(outcome_of_forms(&[g, parse_form("*")?])?, Outcome::P);
//! # Ok::<(), entail::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod forms;
pub mod grundy;
pub mod nimstring;
pub mod notation;
pub mod outcomes;
pub mod topentails;

pub use error::{Error, Result};
pub use forms::{
    conjugate, expand_sum, followers, make_position, make_sum, nimber, Form, FormId, Sum,
    SumPosition,
};
pub use grundy::{value_of_sum, Analyzer, NimberSet, Value};
pub use notation::{parse, parse_form, print_form, Expr};
pub use outcomes::{Comparison, Outcome};
