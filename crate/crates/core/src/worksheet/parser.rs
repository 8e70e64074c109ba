//! Recursive-descent parser for worksheets.
//!
//! ```text
//! program   := (statement? NEWLINE)*
//! statement := "let" binder "=" expr
//!            | "input" IDENT "=" expr "from" STRING
//!            | "unknown" IDENT ("," IDENT)*
//!            | "grassmannian" IDENT "=" "Gr" "(" INT "," INT ")"
//!            | "surface" IDENT? "{" IDENT ("," IDENT)* (sep surface-item)* "}"
//!            | "lattice" IDENT "{" "basis" IDENT ("," IDENT)* (sep lattice-item)* "}"
//!            | "class" IDENT "=" expr
//!            | "canonical" IDENT "=" expr
//!            | "solve" "{" expr "=" expr (sep expr "=" expr)* "}"
//!            | "assert" expr "==" expr
//!            | "note" STRING
//! sep       := ";" | "," | NEWLINE
//! surface-item := IDENT "." IDENT "=" expr | "euler" "=" expr | "canonical" "=" IDENT
//! lattice-item := IDENT "." IDENT "=" expr | "unknown" IDENT ("," IDENT)*
//! expr      := term (("+" | "-") term)*
//! term      := unary (("*" | "/") unary)*
//! unary     := "-" unary | power
//! power     := dot ("^" INT)?
//! dot       := postfix ("." postfix)*
//! postfix   := atom ("[" (INT | STRING) "]")*
//! atom      := INT | IDENT | "s" "[" INT,* "]" | call | "(" expr ("," expr)* ")"
//! call      := IDENT "(" args (";" args)* ")" | IDENT "{" args "}"
//! args      := (arg ("," arg)*)?     arg := (IDENT "=")? expr
//! ```

use std::collections::HashSet;

use num_traits::ToPrimitive;

use super::ast::*;
use super::lexer::{tokenize, Tok, Token};
use super::WorksheetError;

/// Functions callable from worksheets.
pub const BUILTINS: &[&str] = &[
    // Schubert calculus
    "integrate",
    "pdeg",
    "pieri",
    "duality",
    // surfaces
    "omega",
    "euler",
    "line",
    "chern",
    "tensor",
    "sym",
    "jet",
    "jet2_c2",
    "c1",
    "c2",
    "rank",
    "deg",
    "tau",
    // lattices
    "genus",
    "genus_sum",
    // curves
    "pluecker",
    "hurwitz",
    "correspondence",
    "salmon_cayley",
    "secant_degree",
    "odd_theta",
    "multiplicity",
    "residual",
];

const KEYWORDS: &[&str] = &[
    "let",
    "input",
    "unknown",
    "grassmannian",
    "surface",
    "lattice",
    "class",
    "canonical",
    "solve",
    "assert",
    "note",
    "s",
];

/// Parses worksheet source into a program, checking single assignment and
/// declare-before-use.
pub fn parse(src: &str) -> Result<Program, WorksheetError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        declared: HashSet::new(),
    };
    p.program()
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    declared: HashSet<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, off: usize) -> &Tok {
        let i = (self.pos + off).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == w)
    }

    fn error<T>(&self, expected: &str) -> Result<T, WorksheetError> {
        let found = self.peek().describe();
        Err(WorksheetError::syntax(
            self.span(),
            &format!("expected {expected}, found {found}"),
            Some(expected),
        ))
    }

    fn expect_sym(&mut self, s: &'static str) -> Result<Span, WorksheetError> {
        if self.is_sym(s) {
            Ok(self.bump().span)
        } else {
            self.error(&format!("`{s}`"))
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<(), WorksheetError> {
        if self.is_word(w) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("`{w}`"))
        }
    }

    fn ident(&mut self) -> Result<(String, Span), WorksheetError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let span = self.bump().span;
                Ok((s, span))
            }
            _ => self.error("identifier"),
        }
    }

    fn int(&mut self) -> Result<u32, WorksheetError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                let span = self.span();
                self.bump();
                n.to_u32()
                    .ok_or_else(|| WorksheetError::syntax(span, "integer too large", None))
            }
            _ => self.error("integer"),
        }
    }

    fn string(&mut self) -> Result<String, WorksheetError> {
        match self.peek().clone() {
            Tok::Str(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error("string literal"),
        }
    }

    /// Introduces a new name.
    fn declare(&mut self, name: &str, span: Span) -> Result<(), WorksheetError> {
        if KEYWORDS.contains(&name) || BUILTINS.contains(&name) {
            return Err(WorksheetError::syntax(
                span,
                &format!("`{name}` is reserved and cannot be bound"),
                Some("a fresh name"),
            ));
        }
        if !self.declared.insert(name.to_string()) {
            return Err(WorksheetError::Duplicate {
                line: span.line,
                col: span.col,
                name: name.to_string(),
            });
        }
        Ok(())
    }

    fn check_declared(&self, name: &str, span: Span) -> Result<(), WorksheetError> {
        if self.declared.contains(name) {
            Ok(())
        } else {
            Err(WorksheetError::Undeclared {
                line: span.line,
                col: span.col,
                name: name.to_string(),
            })
        }
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek(), Tok::Newline) {
            self.bump();
        }
    }

    fn end_of_statement(&mut self) -> Result<(), WorksheetError> {
        match self.peek() {
            Tok::Newline => {
                self.bump();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => self.error("end of line"),
        }
    }

    fn program(&mut self) -> Result<Program, WorksheetError> {
        let mut statements = Vec::new();
        loop {
            self.skip_newlines();
            if matches!(self.peek(), Tok::Eof) {
                break;
            }
            statements.push(self.statement()?);
            self.end_of_statement()?;
        }
        Ok(Program { statements })
    }

    fn statement(&mut self) -> Result<Statement, WorksheetError> {
        let span = self.span();
        let word = match self.peek() {
            Tok::Ident(w) => w.clone(),
            _ => return self.error("a statement"),
        };
        let kind = match word.as_str() {
            "let" => {
                self.bump();
                let binder = self.binder()?;
                self.expect_sym("=")?;
                let value = self.expr()?;
                for (name, sp) in binder.1 {
                    self.declare(&name, sp)?;
                }
                StmtKind::Let {
                    binder: binder.0,
                    value,
                }
            }
            "input" => {
                self.bump();
                let (name, sp) = self.ident()?;
                self.expect_sym("=")?;
                let value = self.expr()?;
                self.expect_word("from")?;
                let citation = self.string()?;
                self.declare(&name, sp)?;
                StmtKind::Input { name, value, citation }
            }
            "unknown" => {
                self.bump();
                let names = self.declared_list()?;
                StmtKind::Unknown { names }
            }
            "grassmannian" => {
                self.bump();
                let (name, sp) = self.ident()?;
                self.expect_sym("=")?;
                self.expect_word("Gr")?;
                self.expect_sym("(")?;
                let k = self.int()?;
                self.expect_sym(",")?;
                let n = self.int()?;
                self.expect_sym(")")?;
                self.declare(&name, sp)?;
                StmtKind::Grassmannian { name, k, n }
            }
            "surface" => {
                self.bump();
                self.surface()?
            }
            "lattice" => {
                self.bump();
                self.lattice()?
            }
            "class" | "canonical" => {
                self.bump();
                let (name, sp) = self.ident()?;
                self.expect_sym("=")?;
                let value = self.expr()?;
                self.declare(&name, sp)?;
                if word == "class" {
                    StmtKind::Class { name, value }
                } else {
                    StmtKind::Canonical { name, value }
                }
            }
            "solve" => {
                self.bump();
                self.expect_sym("{")?;
                let mut equations = Vec::new();
                loop {
                    self.skip_separators();
                    if self.is_sym("}") {
                        break;
                    }
                    let espan = self.span();
                    let lhs = self.expr()?;
                    self.expect_sym("=")?;
                    let rhs = self.expr()?;
                    equations.push(Equation { lhs, rhs, span: espan });
                    if !self.is_sym("}") && !self.at_separator() {
                        return self.error("`;` or `}`");
                    }
                }
                self.expect_sym("}")?;
                if equations.is_empty() {
                    return Err(WorksheetError::syntax(span, "empty solve block", Some("an equation")));
                }
                StmtKind::Solve { equations }
            }
            "assert" => {
                self.bump();
                let lhs = self.expr()?;
                self.expect_sym("==")?;
                let rhs = self.expr()?;
                StmtKind::Assert { lhs, rhs }
            }
            "note" => {
                self.bump();
                StmtKind::Note { text: self.string()? }
            }
            _ => return self.error("a statement keyword"),
        };
        Ok(Statement { kind, span })
    }

    fn binder(&mut self) -> Result<(Binder, Vec<(String, Span)>), WorksheetError> {
        if self.is_sym("(") {
            self.bump();
            let mut names = vec![self.ident()?];
            while self.is_sym(",") {
                self.bump();
                names.push(self.ident()?);
            }
            self.expect_sym(")")?;
            let binder = Binder::Tuple(names.iter().map(|(n, _)| n.clone()).collect());
            Ok((binder, names))
        } else {
            let (n, sp) = self.ident()?;
            Ok((Binder::Single(n.clone()), vec![(n, sp)]))
        }
    }

    /// `a, b, c`, declaring each name. A comma is only taken as a list
    /// continuation when a bare identifier follows.
    fn declared_list(&mut self) -> Result<Vec<String>, WorksheetError> {
        let mut names = Vec::new();
        loop {
            let (n, sp) = self.ident()?;
            self.declare(&n, sp)?;
            names.push(n);
            let continues = self.is_sym(",")
                && matches!(self.peek_at(1), Tok::Ident(_))
                && matches!(self.peek_at(2), Tok::Sym(",") | Tok::Sym(";") | Tok::Sym("}") | Tok::Newline | Tok::Eof);
            if !continues {
                break;
            }
            self.bump();
        }
        Ok(names)
    }

    fn at_separator(&self) -> bool {
        self.is_sym(";") || self.is_sym(",") || matches!(self.peek(), Tok::Newline)
    }

    fn skip_separators(&mut self) {
        while self.at_separator() {
            self.bump();
        }
    }

    fn pairing_head(&mut self) -> Result<(String, String), WorksheetError> {
        let (a, sa) = self.ident()?;
        self.check_declared(&a, sa)?;
        self.expect_sym(".")?;
        let (b, sb) = self.ident()?;
        self.check_declared(&b, sb)?;
        self.expect_sym("=")?;
        Ok((a, b))
    }

    fn surface(&mut self) -> Result<StmtKind, WorksheetError> {
        let name = if self.is_sym("{") {
            None
        } else {
            let (name, sp) = self.ident()?;
            self.declare(&name, sp)?;
            Some(name)
        };
        self.expect_sym("{")?;
        self.skip_newlines();
        let basis = self.declared_list()?;
        let mut items = Vec::new();
        loop {
            self.skip_separators();
            if self.is_sym("}") {
                break;
            }
            if self.is_word("euler") && matches!(self.peek_at(1), Tok::Sym("=")) {
                self.bump();
                self.bump();
                items.push(SurfaceItem::Euler(self.expr()?));
            } else if self.is_word("canonical") {
                self.bump();
                self.expect_sym("=")?;
                let (k, ks) = self.ident()?;
                if !basis.contains(&k) {
                    return Err(WorksheetError::Undeclared {
                        line: ks.line,
                        col: ks.col,
                        name: k,
                    });
                }
                items.push(SurfaceItem::Canonical(k));
            } else {
                let (a, b) = self.pairing_head()?;
                items.push(SurfaceItem::Pairing { a, b, value: self.expr()? });
            }
            if !self.is_sym("}") && !self.at_separator() {
                return self.error("`;` or `}`");
            }
        }
        self.expect_sym("}")?;
        Ok(StmtKind::Surface { name, basis, items })
    }

    fn lattice(&mut self) -> Result<StmtKind, WorksheetError> {
        let (name, sp) = self.ident()?;
        self.declare(&name, sp)?;
        self.expect_sym("{")?;
        self.skip_newlines();
        self.expect_word("basis")?;
        let basis = self.declared_list()?;
        let mut items = Vec::new();
        loop {
            self.skip_separators();
            if self.is_sym("}") {
                break;
            }
            if self.is_word("unknown") {
                self.bump();
                items.push(LatticeItem::Unknown(self.declared_list()?));
            } else {
                let (a, b) = self.pairing_head()?;
                items.push(LatticeItem::Pairing { a, b, value: self.expr()? });
            }
            if !self.is_sym("}") && !self.at_separator() {
                return self.error("`;` or `}`");
            }
        }
        self.expect_sym("}")?;
        Ok(StmtKind::Lattice { name, basis, items })
    }

    pub fn expr(&mut self) -> Result<Expr, WorksheetError> {
        let mut lhs = self.term()?;
        while self.is_sym("+") || self.is_sym("-") {
            let op = if self.is_sym("+") { BinOp::Add } else { BinOp::Sub };
            let span = self.bump().span;
            let rhs = self.term()?;
            lhs = Expr::new(
                ExprKind::Binary {
                    op,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
                span,
            );
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, WorksheetError> {
        let mut lhs = self.unary()?;
        while self.is_sym("*") || self.is_sym("/") {
            let op = if self.is_sym("*") { BinOp::Mul } else { BinOp::Div };
            let span = self.bump().span;
            let rhs = self.unary()?;
            lhs = Expr::new(
                ExprKind::Binary {
                    op,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
                span,
            );
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, WorksheetError> {
        if self.is_sym("-") {
            let span = self.bump().span;
            let inner = self.unary()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), span));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, WorksheetError> {
        let base = self.dot()?;
        if self.is_sym("^") {
            let span = self.bump().span;
            let exp = self.int()?;
            return Ok(Expr::new(
                ExprKind::Pow {
                    base: Box::new(base),
                    exp,
                },
                span,
            ));
        }
        Ok(base)
    }

    fn dot(&mut self) -> Result<Expr, WorksheetError> {
        let mut lhs = self.postfix()?;
        while self.is_sym(".") {
            let span = self.bump().span;
            let rhs = self.postfix()?;
            lhs = Expr::new(
                ExprKind::Binary {
                    op: BinOp::Dot,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
                span,
            );
        }
        Ok(lhs)
    }

    fn postfix(&mut self) -> Result<Expr, WorksheetError> {
        let mut base = self.atom()?;
        while self.is_sym("[") {
            let span = self.bump().span;
            let key = match self.peek().clone() {
                Tok::Int(_) => IndexKey::Position(self.int()? as usize),
                Tok::Str(_) => IndexKey::Field(self.string()?),
                _ => return self.error("an index or field name"),
            };
            self.expect_sym("]")?;
            base = Expr::new(
                ExprKind::Index {
                    base: Box::new(base),
                    key,
                },
                span,
            );
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, WorksheetError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::new(ExprKind::Int(n), span))
            }
            Tok::Ident(name) if name == "s" && matches!(self.peek_at(1), Tok::Sym("[")) => {
                self.bump();
                self.bump();
                let mut parts = Vec::new();
                if !self.is_sym("]") {
                    parts.push(self.int()?);
                    while self.is_sym(",") {
                        self.bump();
                        parts.push(self.int()?);
                    }
                }
                self.expect_sym("]")?;
                if parts.windows(2).any(|w| w[0] < w[1]) {
                    return Err(WorksheetError::syntax(
                        span,
                        "Schubert index must be weakly decreasing",
                        Some("a partition"),
                    ));
                }
                Ok(Expr::new(ExprKind::Schubert(parts), span))
            }
            Tok::Ident(name) if matches!(self.peek_at(1), Tok::Sym("(") | Tok::Sym("{")) => {
                if !BUILTINS.contains(&name.as_str()) {
                    return Err(WorksheetError::syntax(
                        span,
                        &format!("unknown function `{name}`"),
                        Some("a builtin function"),
                    ));
                }
                self.bump();
                let brace = self.is_sym("{");
                self.bump();
                let close = if brace { "}" } else { ")" };
                let mut groups = vec![Vec::new()];
                if brace {
                    self.skip_newlines();
                }
                if !self.is_sym(close) {
                    loop {
                        let arg = self.arg()?;
                        groups.last_mut().expect("group").push(arg);
                        if brace {
                            self.skip_newlines();
                        }
                        if self.is_sym(",") {
                            self.bump();
                        } else if self.is_sym(";") && !brace {
                            self.bump();
                            groups.push(Vec::new());
                        } else {
                            break;
                        }
                        if brace {
                            self.skip_newlines();
                        }
                    }
                }
                self.expect_sym(close)?;
                Ok(Expr::new(ExprKind::Call { name, groups, brace }, span))
            }
            Tok::Ident(name) => {
                self.check_declared(&name, span)?;
                self.bump();
                Ok(Expr::new(ExprKind::Ident(name), span))
            }
            Tok::Sym("(") => {
                self.bump();
                let first = self.expr()?;
                if self.is_sym(",") {
                    let mut items = vec![first];
                    while self.is_sym(",") {
                        self.bump();
                        items.push(self.expr()?);
                    }
                    self.expect_sym(")")?;
                    return Ok(Expr::new(ExprKind::Tuple(items), span));
                }
                self.expect_sym(")")?;
                Ok(first)
            }
            _ => self.error("an expression"),
        }
    }

    fn arg(&mut self) -> Result<Arg, WorksheetError> {
        if let (Tok::Ident(name), Tok::Sym("=")) = (self.peek().clone(), self.peek_at(1).clone()) {
            self.bump();
            self.bump();
            return Ok(Arg {
                name: Some(name),
                value: self.expr()?,
            });
        }
        Ok(Arg {
            name: None,
            value: self.expr()?,
        })
    }
}
