//! Straight-line worksheets over the calculi of this crate.
//!
//! A worksheet is a sequence of declarations, bindings, solve steps and
//! assertions; there are no loops or conditionals. [`parse`] checks that
//! every name is bound once and declared before use, [`evaluate`] runs the
//! program with exact arithmetic and collects an [`EvaluationReport`], and
//! [`pretty_print`] renders the canonical form.
//!
//! ```
//! use chowkit_core::worksheet::{evaluate, parse};
//!
//! let program = parse("grassmannian G = Gr(2, 4)\nlet d = pdeg(60*s[2] + 72*s[1,1], 2)\nassert d == 132").unwrap();
//! let report = evaluate(&program).unwrap();
//! assert!(report.all_passed());
//! ```

pub mod ast;
mod eval;
mod lexer;
mod parser;
mod print;
mod report;

use thiserror::Error;

pub use ast::Program;
pub use eval::{evaluate, evaluate_named};
pub use parser::{parse, BUILTINS};
pub use print::{pretty_print, print_expr};
pub use report::{AssertionResult, Binding, EvaluationReport};

use ast::Span;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorksheetError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
        expected: Option<String>,
    },
    #[error("{line}:{col}: `{name}` is already bound")]
    Duplicate { line: usize, col: usize, name: String },
    #[error("{line}:{col}: `{name}` is used before it is declared")]
    Undeclared { line: usize, col: usize, name: String },
    #[error("{line}:{col}: {message}")]
    Runtime { line: usize, col: usize, message: String },
}

impl WorksheetError {
    pub(crate) fn syntax(span: Span, message: &str, expected: Option<&str>) -> Self {
        WorksheetError::Syntax {
            line: span.line,
            col: span.col,
            message: message.to_string(),
            expected: expected.map(str::to_string),
        }
    }

    pub(crate) fn runtime(span: Span, message: impl std::fmt::Display) -> Self {
        WorksheetError::Runtime {
            line: span.line,
            col: span.col,
            message: message.to_string(),
        }
    }

    /// 1-based line and column of the offending token or statement.
    pub fn position(&self) -> (usize, usize) {
        match self {
            WorksheetError::Syntax { line, col, .. }
            | WorksheetError::Duplicate { line, col, .. }
            | WorksheetError::Undeclared { line, col, .. }
            | WorksheetError::Runtime { line, col, .. } => (*line, *col),
        }
    }
}
