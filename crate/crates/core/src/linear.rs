//! Affine-linear expressions in named unknowns, and exact linear solving.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::LatticeError;
use crate::scalar::Scalar;
use crate::surface::write_terms;

/// Values fixed for unknowns so far.
pub type Assignment = BTreeMap<String, Scalar>;

/// `constant + sum coeff * unknown`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LinExpr {
    constant: Scalar,
    terms: BTreeMap<String, Scalar>,
}

impl LinExpr {
    pub fn constant(c: impl Into<Scalar>) -> Self {
        LinExpr {
            constant: c.into(),
            terms: BTreeMap::new(),
        }
    }

    pub fn unknown(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(name.to_string(), Scalar::one());
        LinExpr {
            constant: Scalar::zero(),
            terms,
        }
    }

    pub fn constant_term(&self) -> &Scalar {
        &self.constant
    }

    pub fn terms(&self) -> &BTreeMap<String, Scalar> {
        &self.terms
    }

    pub fn unknowns(&self) -> impl Iterator<Item = &str> {
        self.terms.keys().map(String::as_str)
    }

    pub fn coefficient(&self, name: &str) -> Scalar {
        self.terms.get(name).cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    pub fn as_constant(&self) -> Option<&Scalar> {
        self.is_constant().then_some(&self.constant)
    }

    /// The value, or a `NotNumeric` error naming the expression.
    pub fn to_scalar(&self) -> Result<Scalar, LatticeError> {
        self.as_constant()
            .cloned()
            .ok_or_else(|| LatticeError::NotNumeric(self.to_string()))
    }

    fn add_term(&mut self, name: &str, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(name.to_string()).or_default();
        *v += c;
        if v.is_zero() {
            self.terms.remove(name);
        }
    }

    pub fn add(&self, other: &LinExpr) -> LinExpr {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (k, v) in &other.terms {
            out.add_term(k, v.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LinExpr {
        if c.is_zero() {
            return LinExpr::default();
        }
        LinExpr {
            constant: &self.constant * c,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> LinExpr {
        self.scale(&-Scalar::one())
    }

    pub fn sub(&self, other: &LinExpr) -> LinExpr {
        self.add(&other.neg())
    }

    /// Product, provided one factor is constant.
    pub fn mul(&self, other: &LinExpr) -> Result<LinExpr, LatticeError> {
        match (self.as_constant(), other.as_constant()) {
            (Some(c), _) => Ok(other.scale(c)),
            (_, Some(c)) => Ok(self.scale(c)),
            _ => Err(LatticeError::Nonlinear(format!("({self})*({other})"))),
        }
    }

    /// Replaces every assigned unknown by its value.
    pub fn substitute(&self, assignment: &Assignment) -> LinExpr {
        let mut out = LinExpr::constant(self.constant.clone());
        for (k, v) in &self.terms {
            match assignment.get(k) {
                Some(val) => out.constant += v * val,
                None => out.add_term(k, v.clone()),
            }
        }
        out
    }
}

impl From<Scalar> for LinExpr {
    fn from(c: Scalar) -> Self {
        LinExpr::constant(c)
    }
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Scalar, String)> = self.terms.iter().map(|(k, v)| (v.clone(), k.clone())).collect();
        if !self.constant.is_zero() {
            terms.push((self.constant.clone(), String::new()));
        }
        write_terms(f, &terms)
    }
}

impl fmt::Debug for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Polynomial in the unknowns, used while expanding bilinear products.
#[derive(Clone, Default, Debug)]
pub(crate) struct Poly(BTreeMap<Vec<String>, Scalar>);

impl Poly {
    pub(crate) fn from_lin(e: &LinExpr) -> Poly {
        let mut p = Poly::default();
        p.add_mono(Vec::new(), e.constant.clone());
        for (k, v) in &e.terms {
            p.add_mono(vec![k.clone()], v.clone());
        }
        p
    }

    fn add_mono(&mut self, mut mono: Vec<String>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        mono.sort();
        let v = self.0.entry(mono.clone()).or_default();
        *v += c;
        if v.is_zero() {
            self.0.remove(&mono);
        }
    }

    pub(crate) fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.0 {
            self.add_mono(m.clone(), c.clone());
        }
    }

    pub(crate) fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                let mono: Vec<String> = m1.iter().chain(m2).cloned().collect();
                out.add_mono(mono, c1 * c2);
            }
        }
        out
    }

    /// Back to a linear expression, rejecting surviving higher-degree terms.
    pub(crate) fn into_linear(self) -> Result<LinExpr, LatticeError> {
        let mut out = LinExpr::default();
        let mut bad = Vec::new();
        for (m, c) in self.0 {
            match m.len() {
                0 => out.constant += c,
                1 => out.add_term(&m[0], c),
                _ => bad.push(format!("{}*{}", c, m.join("*"))),
            }
        }
        if bad.is_empty() {
            Ok(out)
        } else {
            Err(LatticeError::Nonlinear(bad.join(" + ")))
        }
    }
}

/// `lhs = rhs`, linear in the unknowns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub lhs: LinExpr,
    pub rhs: LinExpr,
}

impl LinearConstraint {
    pub fn new(lhs: LinExpr, rhs: LinExpr) -> Self {
        LinearConstraint { lhs, rhs }
    }

    /// `lhs - rhs`, which must vanish.
    pub fn residual(&self) -> LinExpr {
        self.lhs.sub(&self.rhs)
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Solves a linear system exactly, after substituting `known`. Returns the
/// values of every unknown still free in the constraints. The solution must
/// be unique; contradictory and underdetermined systems are distinct errors.
pub fn solve_linear(constraints: &[LinearConstraint], known: &Assignment) -> Result<Assignment, LatticeError> {
    let rows: Vec<LinExpr> = constraints.iter().map(|c| c.residual().substitute(known)).collect();
    let vars: Vec<String> = rows
        .iter()
        .flat_map(|r| r.unknowns().map(str::to_string))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    // Augmented matrix [A | b] for A x = b with b = -constant.
    let mut m: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| {
            let mut row: Vec<Scalar> = vars.iter().map(|v| r.coefficient(v)).collect();
            row.push(-r.constant_term());
            row
        })
        .collect();

    let nvars = vars.len();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..nvars {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].recip().expect("nonzero pivot");
        for x in m[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }

    if let Some(row) = m[rank..].iter().find(|row| !row[nvars].is_zero()) {
        let eqs: Vec<String> = constraints.iter().map(ToString::to_string).collect();
        return Err(LatticeError::Inconsistent(format!(
            "{{{}}} reduces to 0 = {}",
            eqs.join("; "),
            row[nvars]
        )));
    }
    if rank < nvars {
        let free: Vec<&str> = (0..nvars)
            .filter(|c| !pivots.contains(c))
            .map(|c| vars[c].as_str())
            .collect();
        return Err(LatticeError::Underdetermined(free.join(", ")));
    }
    Ok(pivots
        .iter()
        .enumerate()
        .map(|(r, &c)| (vars[c].clone(), m[r][nvars].clone()))
        .collect())
}
