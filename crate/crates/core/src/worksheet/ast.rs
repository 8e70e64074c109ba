use num_bigint::BigInt;

/// 1-based source position.
///
/// Positions never take part in equality: two programs are structurally
/// equal when they differ only in layout.
#[derive(Debug, Clone, Copy, Default, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub statements: Vec<Statement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub kind: StmtKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    Let { binder: Binder, value: Expr },
    Input { name: String, value: Expr, citation: String },
    Unknown { names: Vec<String> },
    Grassmannian { name: String, k: u32, n: u32 },
    /// Surfaces may be anonymous; divisor names are global either way.
    Surface { name: Option<String>, basis: Vec<String>, items: Vec<SurfaceItem> },
    Lattice { name: String, basis: Vec<String>, items: Vec<LatticeItem> },
    Class { name: String, value: Expr },
    Canonical { name: String, value: Expr },
    Solve { equations: Vec<Equation> },
    Assert { lhs: Expr, rhs: Expr },
    Note { text: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binder {
    Single(String),
    Tuple(Vec<String>),
}

impl Binder {
    pub fn names(&self) -> Vec<&str> {
        match self {
            Binder::Single(n) => vec![n.as_str()],
            Binder::Tuple(ns) => ns.iter().map(String::as_str).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceItem {
    Pairing { a: String, b: String, value: Expr },
    Euler(Expr),
    Canonical(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeItem {
    Pairing { a: String, b: String, value: Expr },
    Unknown(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Expr,
    pub rhs: Expr,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Intersection product `a.b`.
    Dot,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Dot => ".",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexKey {
    Position(usize),
    Field(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arg {
    pub name: Option<String>,
    pub value: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Int(BigInt),
    Ident(String),
    /// `s[2,1]` in the current Grassmannian.
    Schubert(Vec<u32>),
    Neg(Box<Expr>),
    Binary { op: BinOp, lhs: Box<Expr>, rhs: Box<Expr> },
    Pow { base: Box<Expr>, exp: u32 },
    Index { base: Box<Expr>, key: IndexKey },
    /// `f(a, b; c)` or `f{x = 1}`. Argument groups are separated by `;`.
    Call { name: String, groups: Vec<Vec<Arg>>, brace: bool },
    Tuple(Vec<Expr>),
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }
}
