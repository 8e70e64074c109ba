use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::curves::{
    correspondence_coincidences, degeneration_multiplicity, hurwitz_ramification, odd_theta_count, plucker_solve,
    residual_degree, salmon_cayley, secant_plucker_degree, PlueckerData, TripleScrollInput, PLUECKER_FIELDS,
};
use crate::error::CurveError;
use crate::grassmann::{duality_pair, GrassmannContext, SchubertElement};
use crate::lattice::{adjunction_genus, genus_additivity, ClassExpr, RuledLattice};
use crate::linear::{solve_linear, Assignment, LinExpr, LinearConstraint};
use crate::partition::Partition;
use crate::scalar::Scalar;
use crate::surface::{jet_chern, triple_point_count, BundleSpec, SurfaceClass, SurfaceRing, ZeroCycle};

use super::ast::*;
use super::print::print_expr;
use super::report::{AssertionResult, Binding, EvaluationReport};
use super::WorksheetError;

type Res<T> = Result<T, String>;

#[derive(Debug, Clone)]
enum Value {
    /// Rational number, possibly affine in unknowns not yet solved.
    Num(LinExpr),
    Schubert(SchubertElement),
    Surf(SurfaceClass),
    Bundle(BundleSpec),
    Class(ClassExpr),
    Tuple(Vec<Value>),
    Record(Vec<(String, Value)>),
    Grassmannian(GrassmannContext),
    Surface(Arc<SurfaceRing>),
    Lattice(Arc<RuledLattice>),
}

impl Value {
    fn scalar(c: Scalar) -> Value {
        Value::Num(LinExpr::constant(c))
    }

    fn kind(&self) -> &'static str {
        match self {
            Value::Num(_) => "number",
            Value::Schubert(_) => "Schubert class",
            Value::Surf(_) => "surface class",
            Value::Bundle(_) => "bundle",
            Value::Class(_) => "lattice class",
            Value::Tuple(_) => "tuple",
            Value::Record(_) => "record",
            Value::Grassmannian(_) => "Grassmannian",
            Value::Surface(_) => "surface",
            Value::Lattice(_) => "lattice",
        }
    }

    fn substitute(&self, a: &Assignment) -> Value {
        match self {
            Value::Num(x) => Value::Num(x.substitute(a)),
            Value::Class(c) => Value::Class(c.substitute(a)),
            Value::Tuple(items) => Value::Tuple(items.iter().map(|v| v.substitute(a)).collect()),
            Value::Record(fields) => Value::Record(fields.iter().map(|(n, v)| (n.clone(), v.substitute(a))).collect()),
            other => other.clone(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Num(x) => write!(f, "{x}"),
            Value::Schubert(s) => write!(f, "{s}"),
            Value::Surf(s) => write!(f, "{s}"),
            Value::Bundle(b) => write!(f, "bundle(rank {}; c1 = {}; c2 = {})", b.rank(), b.c1(), b.c2()),
            Value::Class(c) => write!(f, "{c}"),
            Value::Tuple(items) => {
                let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join(", "))
            }
            Value::Record(fields) => {
                let parts: Vec<String> = fields.iter().map(|(n, v)| format!("{n}={v}")).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
            Value::Grassmannian(g) => write!(f, "{g}"),
            Value::Surface(r) => write!(f, "surface {{{}}}", r.names().join(", ")),
            Value::Lattice(l) => write!(f, "lattice {} {{{}}}", l.name(), l.basis().join(", ")),
        }
    }
}

fn values_equal(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Num(x), Value::Num(y)) => x == y,
        (Value::Schubert(s), Value::Num(c)) | (Value::Num(c), Value::Schubert(s)) => c
            .as_constant()
            .is_some_and(|c| *s == SchubertElement::constant(s.context(), c.clone())),
        (Value::Surf(s), Value::Num(c)) | (Value::Num(c), Value::Surf(s)) => {
            c.as_constant().is_some_and(|c| *s == s.ring().constant(c.clone()))
        }
        (Value::Schubert(x), Value::Schubert(y)) => x == y,
        (Value::Surf(x), Value::Surf(y)) => x == y,
        (Value::Bundle(x), Value::Bundle(y)) => x == y,
        (Value::Class(x), Value::Class(y)) => x == y,
        (Value::Tuple(x), Value::Tuple(y)) => x.len() == y.len() && x.iter().zip(y).all(|(p, q)| values_equal(p, q)),
        (Value::Record(x), Value::Record(y)) => {
            x.len() == y.len() && x.iter().zip(y).all(|((n, p), (m, q))| n == m && values_equal(p, q))
        }
        (Value::Grassmannian(x), Value::Grassmannian(y)) => x == y,
        (Value::Surface(x), Value::Surface(y)) => Arc::ptr_eq(x, y),
        (Value::Lattice(x), Value::Lattice(y)) => Arc::ptr_eq(x, y),
        _ => false,
    }
}

fn scalar_of(v: &Value) -> Res<Scalar> {
    match v {
        Value::Num(x) => x.to_scalar().map_err(|e| e.to_string()),
        other => Err(format!("expected a number, found a {}", other.kind())),
    }
}

fn int_of(v: &Value) -> Res<i64> {
    let s = scalar_of(v)?;
    s.to_i64()
        .filter(|_| s.is_integer())
        .ok_or_else(|| format!("expected an integer, found {s}"))
}

fn u32_of(v: &Value) -> Res<u32> {
    let n = int_of(v)?;
    u32::try_from(n).map_err(|_| format!("expected a non-negative integer, found {n}"))
}

struct SurfInfo {
    ring: Arc<SurfaceRing>,
    canonical: Option<String>,
    euler: ZeroCycle,
}

#[derive(Default)]
struct Env {
    values: BTreeMap<String, Value>,
    assignment: Assignment,
    grassmannian: Option<GrassmannContext>,
    surfaces: Vec<SurfInfo>,
    canonicals: Vec<(Arc<RuledLattice>, ClassExpr)>,
    report: EvaluationReport,
}

/// Evaluates a program; the report is labelled `<inline>`.
pub fn evaluate(p: &Program) -> Result<EvaluationReport, WorksheetError> {
    evaluate_named(p, "<inline>")
}

/// Evaluates a program statement by statement. Failed assertions are
/// recorded and evaluation continues; runtime errors stop it and carry the
/// position of the statement that raised them.
pub fn evaluate_named(p: &Program, worksheet: &str) -> Result<EvaluationReport, WorksheetError> {
    let mut env = Env::default();
    env.report.worksheet = worksheet.to_string();
    for s in &p.statements {
        env.statement(s).map_err(|m| WorksheetError::runtime(s.span, m))?;
    }
    Ok(env.report)
}

impl Env {
    fn bind(&mut self, name: &str, v: Value, report: bool) {
        if report {
            self.report.bindings.push(Binding {
                name: name.to_string(),
                value: v.to_string(),
            });
        }
        self.values.insert(name.to_string(), v);
    }

    fn statement(&mut self, s: &Statement) -> Res<()> {
        match &s.kind {
            StmtKind::Let { binder, value } => {
                let v = self.eval(value)?;
                match binder {
                    Binder::Single(n) => self.bind(n, v, true),
                    Binder::Tuple(names) => {
                        let Value::Tuple(items) = v else {
                            return Err(format!("cannot destructure a {} into {} names", v.kind(), names.len()));
                        };
                        if items.len() != names.len() {
                            return Err(format!("tuple has {} entries, binder has {}", items.len(), names.len()));
                        }
                        for (n, item) in names.iter().zip(items) {
                            self.bind(n, item, true);
                        }
                    }
                }
            }
            StmtKind::Input { name, value, citation } => {
                let v = self.eval(value)?;
                self.report
                    .notes
                    .push(format!("input {name} = {v} is taken from \"{citation}\", not derived"));
                self.bind(name, v, true);
            }
            StmtKind::Unknown { names } => {
                for n in names {
                    self.bind(n, Value::Num(LinExpr::unknown(n)), false);
                }
            }
            StmtKind::Grassmannian { name, k, n } => {
                let ctx = GrassmannContext::new(*k as usize, *n as usize).map_err(|e| e.to_string())?;
                self.grassmannian = Some(ctx);
                self.bind(name, Value::Grassmannian(ctx), false);
            }
            StmtKind::Surface { name, basis, items } => self.surface(name.as_deref(), basis, items)?,
            StmtKind::Lattice { name, basis, items } => self.lattice(name, basis, items)?,
            StmtKind::Class { name, value } => {
                let v = self.eval(value)?;
                if !matches!(v, Value::Class(_) | Value::Surf(_)) {
                    return Err(format!("class {name} must be a divisor class, found a {}", v.kind()));
                }
                self.bind(name, v, true);
            }
            StmtKind::Canonical { name, value } => {
                let Value::Class(k) = self.eval(value)? else {
                    return Err(format!("canonical {name} must be a lattice class"));
                };
                self.canonicals.retain(|(l, _)| !Arc::ptr_eq(l, k.lattice()));
                self.canonicals.push((Arc::clone(k.lattice()), k.clone()));
                self.bind(name, Value::Class(k), true);
            }
            StmtKind::Solve { equations } => {
                let mut constraints = Vec::new();
                for eq in equations {
                    let l = self.eval(&eq.lhs)?;
                    let r = self.eval(&eq.rhs)?;
                    let (Value::Num(l), Value::Num(r)) = (&l, &r) else {
                        return Err(format!(
                            "solve equations must be numeric, found {} = {}",
                            l.kind(),
                            r.kind()
                        ));
                    };
                    constraints.push(LinearConstraint::new(l.clone(), r.clone()));
                }
                let solved = solve_linear(&constraints, &self.assignment).map_err(|e| e.to_string())?;
                for (n, v) in solved {
                    self.report.bindings.push(Binding {
                        name: n.clone(),
                        value: v.to_string(),
                    });
                    self.assignment.insert(n, v);
                }
            }
            StmtKind::Assert { lhs, rhs } => {
                let actual = self.eval(lhs)?;
                let expected = self.eval(rhs)?;
                self.report.assertions.push(AssertionResult {
                    expression: format!("{} == {}", print_expr(lhs), print_expr(rhs)),
                    expected: expected.to_string(),
                    actual: actual.to_string(),
                    pass: values_equal(&actual, &expected),
                    line: s.span.line,
                });
            }
            StmtKind::Note { text } => self.report.notes.push(text.clone()),
        }
        Ok(())
    }

    fn surface(&mut self, name: Option<&str>, basis: &[String], items: &[SurfaceItem]) -> Res<()> {
        let mut pairings = Vec::new();
        let mut euler = ZeroCycle::symbol("e");
        let mut canonical = basis.iter().any(|b| b == "K").then(|| "K".to_string());
        for item in items {
            match item {
                SurfaceItem::Pairing { a, b, value } => {
                    pairings.push((a.as_str(), b.as_str(), scalar_of(&self.eval(value)?)?));
                }
                SurfaceItem::Euler(e) => euler = ZeroCycle::point(scalar_of(&self.eval(e)?)?),
                SurfaceItem::Canonical(k) => canonical = Some(k.clone()),
            }
        }
        let ring = SurfaceRing::with_pairings(basis.iter().cloned(), &pairings).map_err(|e| e.to_string())?;
        for b in basis {
            let d = ring.divisor(b).map_err(|e| e.to_string())?;
            self.bind(b, Value::Surf(d), false);
        }
        if let Some(n) = name {
            self.bind(n, Value::Surface(Arc::clone(&ring)), false);
        }
        self.surfaces.push(SurfInfo { ring, canonical, euler });
        Ok(())
    }

    fn lattice(&mut self, name: &str, basis: &[String], items: &[LatticeItem]) -> Res<()> {
        let mut lat = RuledLattice::new(name, basis.iter().cloned());
        for item in items {
            match item {
                LatticeItem::Unknown(names) => {
                    for n in names {
                        self.bind(n, Value::Num(LinExpr::unknown(n)), false);
                    }
                }
                LatticeItem::Pairing { a, b, value } => {
                    let Value::Num(v) = self.eval(value)? else {
                        return Err(format!("pairing {a}.{b} must be numeric"));
                    };
                    lat.declare(a, b, v).map_err(|e| e.to_string())?;
                }
            }
        }
        let lat = Arc::new(lat);
        for b in basis {
            let c = lat.class(b).map_err(|e| e.to_string())?;
            self.bind(b, Value::Class(c), false);
        }
        self.bind(name, Value::Lattice(lat), false);
        Ok(())
    }

    fn surf_info(&self, ring: &Arc<SurfaceRing>) -> Res<&SurfInfo> {
        self.surfaces
            .iter()
            .find(|s| Arc::ptr_eq(&s.ring, ring))
            .ok_or_else(|| "class does not belong to a declared surface".to_string())
    }

    fn ring_of(v: &Value) -> Res<Arc<SurfaceRing>> {
        match v {
            Value::Surface(r) => Ok(Arc::clone(r)),
            Value::Surf(c) => Ok(Arc::clone(c.ring())),
            Value::Bundle(b) => Ok(Arc::clone(b.chern().ring())),
            other => Err(format!("expected a surface or surface class, found a {}", other.kind())),
        }
    }

    fn omega(&self, ring: &Arc<SurfaceRing>) -> Res<BundleSpec> {
        let info = self.surf_info(ring)?;
        let k = info
            .canonical
            .as_ref()
            .ok_or_else(|| "surface has no canonical class; declare one with `canonical = <divisor>`".to_string())?;
        let k = ring.divisor(k).map_err(|e| e.to_string())?;
        BundleSpec::cotangent(&k, &info.euler).map_err(|e| e.to_string())
    }

    fn eval(&self, e: &Expr) -> Res<Value> {
        match &e.kind {
            ExprKind::Int(n) => Ok(Value::scalar(Scalar::from(n.clone()))),
            ExprKind::Ident(n) => self
                .values
                .get(n)
                .map(|v| v.substitute(&self.assignment))
                .ok_or_else(|| format!("`{n}` has no value")),
            ExprKind::Schubert(parts) => {
                let ctx = self
                    .grassmannian
                    .ok_or_else(|| "Schubert class used before any grassmannian declaration".to_string())?;
                Ok(Value::Schubert(SchubertElement::schubert(ctx, Partition::new(parts.clone()))))
            }
            ExprKind::Neg(inner) => neg(self.eval(inner)?),
            ExprKind::Binary { op, lhs, rhs } => {
                let l = self.eval(lhs)?;
                let r = self.eval(rhs)?;
                match op {
                    BinOp::Add => add(l, r),
                    BinOp::Sub => add(l, neg(r)?),
                    BinOp::Mul => mul(l, r),
                    BinOp::Div => {
                        let c = scalar_of(&r)?;
                        let inv = c.recip().map_err(|e| e.to_string())?;
                        mul(l, Value::scalar(inv))
                    }
                    BinOp::Dot => self.dot(l, r),
                }
            }
            ExprKind::Pow { base, exp } => pow(self.eval(base)?, *exp),
            ExprKind::Index { base, key } => {
                let v = self.eval(base)?;
                match (&v, key) {
                    (Value::Tuple(items), IndexKey::Position(i)) => items
                        .get(*i)
                        .cloned()
                        .ok_or_else(|| format!("index {i} out of range for a {}-tuple", items.len())),
                    (Value::Record(fields), IndexKey::Field(f)) => fields
                        .iter()
                        .find(|(n, _)| n == f)
                        .map(|(_, v)| v.clone())
                        .ok_or_else(|| format!("record has no field {f:?}")),
                    (Value::Record(fields), IndexKey::Position(i)) => fields
                        .get(*i)
                        .map(|(_, v)| v.clone())
                        .ok_or_else(|| format!("index {i} out of range")),
                    _ => Err(format!("cannot index a {}", v.kind())),
                }
            }
            ExprKind::Call { name, groups, .. } => self.call(name, groups),
            ExprKind::Tuple(items) => Ok(Value::Tuple(
                items.iter().map(|i| self.eval(i)).collect::<Res<Vec<_>>>()?,
            )),
        }
    }

    fn dot(&self, l: Value, r: Value) -> Res<Value> {
        match (l, r) {
            (Value::Class(a), Value::Class(b)) => a
                .intersect(&b, &self.assignment)
                .map(Value::Num)
                .map_err(|e| e.to_string()),
            (Value::Surf(a), Value::Surf(b)) => {
                let p = a.ring_product(&b).map_err(|e| e.to_string())?.degree_two();
                Ok(match p.degree() {
                    Ok(d) => Value::scalar(d),
                    // Keep 0-cycles over undeclared pairings symbolic.
                    Err(_) => Value::Surf(p),
                })
            }
            (Value::Schubert(a), Value::Schubert(b)) => {
                Ok(Value::scalar(a.multiply(&b).map_err(|e| e.to_string())?.integrate()))
            }
            (a, b) => Err(format!("cannot intersect a {} with a {}", a.kind(), b.kind())),
        }
    }

    fn call(&self, name: &str, groups: &[Vec<Arg>]) -> Res<Value> {
        match name {
            "residual" => return self.residual(groups),
            "pluecker" => return self.pluecker(groups),
            _ => {}
        }
        if groups.iter().flatten().any(|a| a.name.is_some()) {
            return Err(format!("{name} takes no named arguments"));
        }
        let args: Vec<Value> = groups
            .iter()
            .flatten()
            .map(|a| self.eval(&a.value))
            .collect::<Res<_>>()?;
        let arity = |n: usize| -> Res<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(format!("{name} takes {n} argument(s), got {}", args.len()))
            }
        };
        let surf_err = |e: crate::SurfaceError| e.to_string();
        match name {
            "integrate" => {
                arity(1)?;
                Ok(Value::scalar(self.schubert_of(&args[0])?.integrate()))
            }
            "pdeg" => {
                arity(2)?;
                let d = u32_of(&args[1])? as usize;
                let s = self.schubert_of(&args[0])?;
                Ok(Value::scalar(s.plucker_degree(d).map_err(|e| e.to_string())?))
            }
            "pieri" => {
                arity(2)?;
                Ok(Value::Schubert(self.schubert_of(&args[0])?.pieri(u32_of(&args[1])?)))
            }
            "duality" => {
                arity(2)?;
                let a = single_partition(&self.schubert_of(&args[0])?)?;
                let b = single_partition(&self.schubert_of(&args[1])?)?;
                let ctx = self.grassmannian.expect("checked by schubert_of");
                let v = duality_pair(&a, &b, ctx).map_err(|e| e.to_string())?;
                Ok(Value::scalar(Scalar::from(v)))
            }
            "omega" => {
                arity(1)?;
                Ok(Value::Bundle(self.omega(&Self::ring_of(&args[0])?)?))
            }
            "euler" => {
                arity(1)?;
                let ring = Self::ring_of(&args[0])?;
                let info = self.surf_info(&ring)?;
                Ok(Value::Surf(ring.zero_cycle(info.euler.clone())))
            }
            "line" => {
                arity(1)?;
                Ok(Value::Bundle(BundleSpec::line(&surf_of(&args[0])?).map_err(surf_err)?))
            }
            "chern" => {
                arity(1)?;
                Ok(Value::Surf(bundle_of(&args[0])?.chern().total().clone()))
            }
            "tensor" => {
                arity(2)?;
                let e = bundle_of(&args[0])?;
                Ok(Value::Bundle(e.tensor_line(&surf_of(&args[1])?).map_err(surf_err)?))
            }
            "sym" => {
                arity(2)?;
                let e = bundle_of(&args[0])?;
                Ok(Value::Bundle(e.sym_power(u32_of(&args[1])?).map_err(surf_err)?))
            }
            "jet" => {
                arity(2)?;
                Ok(Value::Bundle(self.jet(&args[0], u32_of(&args[1])?)?))
            }
            "jet2_c2" => {
                arity(1)?;
                Ok(Value::Surf(self.jet(&args[0], 2)?.c2()))
            }
            "c1" | "c2" => {
                arity(1)?;
                let total = match &args[0] {
                    Value::Bundle(b) => b.chern().total().clone(),
                    Value::Surf(s) => s.clone(),
                    other => return Err(format!("{name} expects a bundle or class, found a {}", other.kind())),
                };
                Ok(Value::Surf(if name == "c1" {
                    total.degree_one()
                } else {
                    total.degree_two()
                }))
            }
            "rank" => {
                arity(1)?;
                Ok(Value::scalar(Scalar::from(bundle_of(&args[0])?.rank())))
            }
            "deg" => {
                arity(1)?;
                match &args[0] {
                    Value::Surf(s) => Ok(Value::scalar(s.degree().map_err(surf_err)?)),
                    Value::Schubert(s) => Ok(Value::scalar(s.integrate())),
                    Value::Num(_) => Ok(args[0].clone()),
                    other => Err(format!("deg is not defined for a {}", other.kind())),
                }
            }
            "tau" => match args.len() {
                1 => {
                    let c2 = self.jet(&args[0], 2)?.c2();
                    Ok(Value::scalar(c2.degree().map_err(surf_err)?))
                }
                4 => {
                    let v: Vec<Scalar> = args.iter().map(scalar_of).collect::<Res<_>>()?;
                    Ok(Value::scalar(triple_point_count(&v[0], &v[1], &v[2], &v[3])))
                }
                n => Err(format!("tau takes 1 or 4 arguments, got {n}")),
            },
            "genus" => {
                arity(1)?;
                let Value::Class(c) = &args[0] else {
                    return Err(format!("genus expects a lattice class, found a {}", args[0].kind()));
                };
                let k = self
                    .canonicals
                    .iter()
                    .find(|(l, _)| Arc::ptr_eq(l, c.lattice()))
                    .map(|(_, k)| k)
                    .ok_or_else(|| format!("lattice {} has no canonical class", c.lattice().name()))?;
                let g = adjunction_genus(c, k, &self.assignment).map_err(|e| e.to_string())?;
                Ok(Value::scalar(g))
            }
            "genus_sum" => {
                arity(3)?;
                let v: Vec<Scalar> = args.iter().map(scalar_of).collect::<Res<_>>()?;
                Ok(Value::scalar(genus_additivity(&v[0], &v[1], &v[2])))
            }
            "hurwitz" => {
                arity(3)?;
                let r = hurwitz_ramification(int_of(&args[0])?, int_of(&args[1])?, int_of(&args[2])?)
                    .map_err(|e| e.to_string())?;
                Ok(Value::scalar(r))
            }
            "correspondence" => {
                arity(2)?;
                let r = correspondence_coincidences(&scalar_of(&args[0])?, &scalar_of(&args[1])?)
                    .map_err(|e| e.to_string())?;
                Ok(Value::scalar(r))
            }
            "salmon_cayley" => {
                arity(6)?;
                let v: Vec<i64> = args.iter().map(int_of).collect::<Res<_>>()?;
                let out = salmon_cayley(&TripleScrollInput {
                    degrees: [v[0], v[1], v[2]],
                    i12: v[3],
                    i13: v[4],
                    i23: v[5],
                })
                .map_err(|e| e.to_string())?;
                let mut items = vec![Value::scalar(out.degree)];
                items.extend(out.multiplicities.into_iter().map(Value::scalar));
                Ok(Value::Tuple(items))
            }
            "secant_degree" => {
                arity(2)?;
                let r = secant_plucker_degree(int_of(&args[0])?, int_of(&args[1])?).map_err(|e| e.to_string())?;
                Ok(Value::scalar(r))
            }
            "odd_theta" => {
                arity(1)?;
                Ok(Value::scalar(odd_theta_count(u32_of(&args[0])?).map_err(|e| e.to_string())?))
            }
            "multiplicity" => {
                arity(1)?;
                Ok(Value::scalar(degeneration_multiplicity(u32_of(&args[0])?)))
            }
            other => Err(format!("unknown function `{other}`")),
        }
    }

    fn schubert_of(&self, v: &Value) -> Res<SchubertElement> {
        let ctx = self
            .grassmannian
            .ok_or_else(|| "no grassmannian declared".to_string())?;
        match v {
            Value::Schubert(s) => Ok(s.clone()),
            Value::Num(_) => Ok(SchubertElement::constant(ctx, scalar_of(v)?)),
            other => Err(format!("expected a Schubert class, found a {}", other.kind())),
        }
    }

    fn jet(&self, d: &Value, n: u32) -> Res<BundleSpec> {
        let d = surf_of(d)?;
        let omega = self.omega(d.ring())?;
        jet_chern(&d, n, &omega).map_err(|e| e.to_string())
    }

    /// `residual(total; m1*d1, m2*d2, ...)`: a part written as a product is
    /// read as multiplicity times degree, a bare number as multiplicity one.
    fn residual(&self, groups: &[Vec<Arg>]) -> Res<Value> {
        let args: Vec<&Arg> = groups.iter().flatten().collect();
        if args.iter().any(|a| a.name.is_some()) {
            return Err("residual takes no named arguments".into());
        }
        let Some((total, parts)) = args.split_first() else {
            return Err("residual needs a total".into());
        };
        let total = scalar_of(&self.eval(&total.value)?)?;
        let mut pairs = Vec::new();
        for p in parts {
            let pair = match &p.value.kind {
                ExprKind::Binary {
                    op: BinOp::Mul,
                    lhs,
                    rhs,
                } => (scalar_of(&self.eval(lhs)?)?, scalar_of(&self.eval(rhs)?)?),
                _ => match self.eval(&p.value)? {
                    Value::Tuple(items) if items.len() == 2 => (scalar_of(&items[0])?, scalar_of(&items[1])?),
                    v => (Scalar::one(), scalar_of(&v)?),
                },
            };
            pairs.push(pair);
        }
        residual_degree(&total, &pairs)
            .map(Value::scalar)
            .map_err(|e| e.to_string())
    }

    /// `pluecker{d = 6, nodes = 6}`: completes the Plücker characters.
    fn pluecker(&self, groups: &[Vec<Arg>]) -> Res<Value> {
        let mut data = PlueckerData::default();
        for a in groups.iter().flatten() {
            let Some(field) = &a.name else {
                return Err(format!(
                    "pluecker arguments must be named ({})",
                    PLUECKER_FIELDS.join(", ")
                ));
            };
            let v = scalar_of(&self.eval(&a.value)?)?;
            data.set(field, v).map_err(|e| e.to_string())?;
        }
        // Curves are taken to be nodal unless cusps are given or forced.
        let full = match plucker_solve(&data) {
            Err(CurveError::Underdetermined(_)) if data.cusps.is_none() => {
                data.cusps = Some(Scalar::zero());
                plucker_solve(&data)
            }
            other => other,
        }
        .map_err(|e| e.to_string())?;
        Ok(Value::Record(
            PLUECKER_FIELDS
                .iter()
                .zip(full.fields())
                .map(|(n, v)| (n.to_string(), Value::scalar(v.expect("complete"))))
                .collect(),
        ))
    }
}

fn single_partition(s: &SchubertElement) -> Res<Partition> {
    match s.terms().iter().collect::<Vec<_>>().as_slice() {
        [(p, c)] if c.is_one() => Ok((*p).clone()),
        _ => Err(format!("expected a single Schubert class, found {s}")),
    }
}

fn surf_of(v: &Value) -> Res<SurfaceClass> {
    match v {
        Value::Surf(s) => Ok(s.clone()),
        other => Err(format!("expected a surface class, found a {}", other.kind())),
    }
}

fn bundle_of(v: &Value) -> Res<BundleSpec> {
    match v {
        Value::Bundle(b) => Ok(b.clone()),
        Value::Surf(s) => BundleSpec::line(s).map_err(|e| e.to_string()),
        other => Err(format!("expected a bundle, found a {}", other.kind())),
    }
}

fn neg(v: Value) -> Res<Value> {
    mul(Value::scalar(-Scalar::one()), v)
}

fn add(a: Value, b: Value) -> Res<Value> {
    let num = |x: &LinExpr| x.to_scalar().map_err(|e| e.to_string());
    match (a, b) {
        (Value::Num(x), Value::Num(y)) => Ok(Value::Num(x.add(&y))),
        (Value::Schubert(x), Value::Schubert(y)) => x.checked_add(&y).map(Value::Schubert).map_err(|e| e.to_string()),
        (Value::Schubert(s), Value::Num(c)) | (Value::Num(c), Value::Schubert(s)) => {
            let k = SchubertElement::constant(s.context(), num(&c)?);
            s.checked_add(&k).map(Value::Schubert).map_err(|e| e.to_string())
        }
        (Value::Surf(x), Value::Surf(y)) => x.add(&y).map(Value::Surf).map_err(|e| e.to_string()),
        (Value::Surf(s), Value::Num(c)) | (Value::Num(c), Value::Surf(s)) => {
            let k = s.ring().constant(num(&c)?);
            s.add(&k).map(Value::Surf).map_err(|e| e.to_string())
        }
        (Value::Class(x), Value::Class(y)) => x.add(&y).map(Value::Class).map_err(|e| e.to_string()),
        (Value::Bundle(x), Value::Bundle(y)) => x.direct_sum(&y).map(Value::Bundle).map_err(|e| e.to_string()),
        (Value::Tuple(x), Value::Tuple(y)) if x.len() == y.len() => Ok(Value::Tuple(
            x.into_iter().zip(y).map(|(p, q)| add(p, q)).collect::<Res<_>>()?,
        )),
        (a, b) => Err(format!("cannot add a {} and a {}", a.kind(), b.kind())),
    }
}

fn mul(a: Value, b: Value) -> Res<Value> {
    let num = |x: &LinExpr| x.to_scalar().map_err(|e| e.to_string());
    match (a, b) {
        (Value::Num(x), Value::Num(y)) => x.mul(&y).map(Value::Num).map_err(|e| e.to_string()),
        (Value::Num(c), Value::Schubert(s)) | (Value::Schubert(s), Value::Num(c)) => {
            Ok(Value::Schubert(s.scale(&num(&c)?)))
        }
        (Value::Num(c), Value::Surf(s)) | (Value::Surf(s), Value::Num(c)) => Ok(Value::Surf(s.scale(&num(&c)?))),
        (Value::Num(c), Value::Class(k)) | (Value::Class(k), Value::Num(c)) => {
            k.scale_lin(&c).map(Value::Class).map_err(|e| e.to_string())
        }
        (Value::Num(c), Value::Tuple(t)) | (Value::Tuple(t), Value::Num(c)) => Ok(Value::Tuple(
            t.into_iter().map(|v| mul(Value::Num(c.clone()), v)).collect::<Res<_>>()?,
        )),
        (Value::Schubert(x), Value::Schubert(y)) => x.multiply(&y).map(Value::Schubert).map_err(|e| e.to_string()),
        (Value::Surf(x), Value::Surf(y)) => x.ring_product(&y).map(Value::Surf).map_err(|e| e.to_string()),
        (a, b) => Err(format!("cannot multiply a {} by a {}", a.kind(), b.kind())),
    }
}

fn pow(v: Value, exp: u32) -> Res<Value> {
    match v {
        Value::Schubert(s) => Ok(Value::Schubert(s.pow(exp))),
        Value::Num(x) => match x.as_constant() {
            Some(c) => Ok(Value::scalar(c.pow(exp))),
            None if exp == 1 => Ok(Value::Num(x)),
            None if exp == 0 => Ok(Value::scalar(Scalar::one())),
            None => Err(format!("power of {x} is not linear")),
        },
        Value::Surf(s) => {
            let mut acc = s.ring().constant(Scalar::one());
            for _ in 0..exp {
                acc = acc.ring_product(&s).map_err(|e| e.to_string())?;
            }
            Ok(Value::Surf(acc))
        }
        other => Err(format!("cannot raise a {} to a power", other.kind())),
    }
}
