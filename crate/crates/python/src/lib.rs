//! Python bindings: forms, values, outcomes, NIMSTRING boards and TOP ENTAILS heaps.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use entail::grundy::{self, Value};
use entail::nimstring::{self, Board};
use entail::outcomes::{self, compare_conway, outcome_of_forms};
use entail::topentails;
use entail::{conjugate, nimber, parse, parse_form, Error};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An interned game form.
#[pyclass(name = "Form", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyForm(entail::Form);

#[pymethods]
impl PyForm {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_form(text).map(PyForm).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Form('{}')", self.0)
    }

    #[getter]
    fn left(&self) -> Vec<PyForm> {
        self.0.left().iter().cloned().map(PyForm).collect()
    }

    #[getter]
    fn right(&self) -> Vec<PyForm> {
        self.0.right().iter().cloned().map(PyForm).collect()
    }

    fn is_terminal(&self) -> bool {
        self.0.is_terminal()
    }

    fn is_check(&self) -> bool {
        self.0.is_check()
    }

    fn is_quiet(&self) -> bool {
        self.0.is_quiet()
    }

    fn is_symmetric(&self) -> bool {
        self.0.is_symmetric()
    }

    fn is_affine_impartial(&self) -> bool {
        self.0.is_affine_impartial()
    }

    fn is_conway_form(&self) -> bool {
        self.0.is_conway_form()
    }

    fn conjugate(&self) -> PyForm {
        PyForm(conjugate(&self.0))
    }

    /// `"moon"`, `"0"`, `"*"`, `"*2"`, ...
    fn value(&self) -> PyResult<String> {
        grundy::value(&self.0).map(|v| v.to_string()).map_err(err)
    }

    /// The Grundy number, or `None` for the moon.
    fn grundy(&self) -> PyResult<Option<u32>> {
        grundy::value(&self.0).map(Value::grundy).map_err(err)
    }

    fn value_oracle(&self) -> PyResult<String> {
        grundy::value_oracle(&self.0).map(|v| v.to_string()).map_err(err)
    }

    fn immediate_nimbers(&self) -> PyResult<String> {
        grundy::immediate_nimbers(&self.0).map(|s| s.to_string()).map_err(err)
    }

    fn protected_nimbers(&self) -> PyResult<String> {
        grundy::protected_nimbers(&self.0).map(|s| s.to_string()).map_err(err)
    }

    /// `"L"`, `"N"`, `"P"` or `"R"`.
    fn outcome(&self) -> String {
        outcomes::outcome(&self.0).to_string()
    }
}

#[pyfunction]
fn form(text: &str) -> PyResult<PyForm> {
    PyForm::new(text)
}

#[pyfunction]
fn star(k: u32) -> PyForm {
    PyForm(nimber(k))
}

/// Value of a form or sum written in the ASCII notation.
#[pyfunction]
fn value(expr: &str) -> PyResult<String> {
    let e = parse(expr).map_err(err)?;
    let values = e
        .components()
        .iter()
        .map(grundy::value)
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    Ok(grundy::value_of_sum(&values).to_string())
}

#[pyfunction]
fn outcome(expr: &str) -> PyResult<String> {
    let e = parse(expr).map_err(err)?;
    Ok(outcome_of_forms(e.components()).map_err(err)?.to_string())
}

/// `">"`, `"="`, `"<"` or `"||"`; the second form must be a Conway form.
#[pyfunction]
fn compare(g: &str, h: &str) -> PyResult<String> {
    let g = parse_form(g).map_err(err)?;
    let h = parse_form(h).map_err(err)?;
    Ok(compare_conway(&g, &h).map_err(err)?.to_string())
}

fn boards(texts: Vec<String>) -> PyResult<Vec<Board>> {
    texts
        .iter()
        .map(|t| nimstring::parse_board(t).map_err(err))
        .collect()
}

#[pyfunction]
fn board_form(text: &str) -> PyResult<PyForm> {
    let b = nimstring::parse_board(text).map_err(err)?;
    Ok(PyForm(nimstring::to_form(&b)))
}

#[pyfunction]
fn board_value(text: &str) -> PyResult<String> {
    let b = nimstring::parse_board(text).map_err(err)?;
    Ok(nimstring::value_of_board(&b).to_string())
}

/// Outcome of a sum of boards, played by the raw rules.
#[pyfunction]
fn board_outcome(texts: Vec<String>) -> PyResult<String> {
    Ok(nimstring::direct_outcome(&boards(texts)?).to_string())
}

/// Winning first moves as `(board index, "H r c" | "V r c")`.
#[pyfunction]
fn winning_moves(texts: Vec<String>) -> PyResult<Vec<(usize, String)>> {
    Ok(nimstring::winning_moves(&boards(texts)?)
        .into_iter()
        .map(|(i, e)| (i, e.to_string()))
        .collect())
}

/// Rows `(n, S, P, value)` for heaps `0..=max_n`.
#[pyfunction]
fn topentails_table(max_n: usize) -> Vec<(usize, String, String, String)> {
    topentails::compute_table(max_n)
        .into_iter()
        .map(|r| {
            (
                r.n,
                r.immediate.to_string(),
                r.protected.to_string(),
                r.value.to_string(),
            )
        })
        .collect()
}

#[pyfunction]
fn scan_loony(max_n: usize) -> Vec<usize> {
    topentails::scan_loony(max_n)
}

#[pyfunction]
fn heap_form(n: usize) -> PyResult<PyForm> {
    topentails::direct_form(n).map(PyForm).map_err(err)
}

#[pymodule]
fn entail_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyForm>()?;
    m.add_function(wrap_pyfunction!(form, m)?)?;
    m.add_function(wrap_pyfunction!(star, m)?)?;
    m.add_function(wrap_pyfunction!(value, m)?)?;
    m.add_function(wrap_pyfunction!(outcome, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(board_form, m)?)?;
    m.add_function(wrap_pyfunction!(board_value, m)?)?;
    m.add_function(wrap_pyfunction!(board_outcome, m)?)?;
    m.add_function(wrap_pyfunction!(winning_moves, m)?)?;
    m.add_function(wrap_pyfunction!(topentails_table, m)?)?;
    m.add_function(wrap_pyfunction!(scan_loony, m)?)?;
    m.add_function(wrap_pyfunction!(heap_form, m)?)?;
    Ok(())
}
