//! Numerical classes on a ruled surface or scroll.
//!
//! A [`RuledLattice`] is a named basis with a partially declared
//! intersection matrix whose entries may be affine in named unknowns. Class
//! coefficients may involve unknowns too. Products are expanded
//! polynomially and must come out linear once the currently known values
//! are substituted; unknowns are then pinned one linear system at a time by
//! [`solve_unknowns`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::LatticeError;
pub use crate::linear::{solve_linear, Assignment, LinExpr, LinearConstraint};
use crate::linear::Poly;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuledLattice {
    name: String,
    basis: Vec<String>,
    gram: BTreeMap<(usize, usize), LinExpr>,
}

impl RuledLattice {
    pub fn new<S: Into<String>>(name: &str, basis: impl IntoIterator<Item = S>) -> Self {
        RuledLattice {
            name: name.to_string(),
            basis: basis.into_iter().map(Into::into).collect(),
            gram: BTreeMap::new(),
        }
    }

    /// Declares `a.b = value`. Redeclaring with a different value is an
    /// asymmetry error.
    pub fn declare(&mut self, a: &str, b: &str, value: LinExpr) -> Result<(), LatticeError> {
        let i = self.index(a)?;
        let j = self.index(b)?;
        let key = (i.min(j), i.max(j));
        match self.gram.get(&key) {
            Some(old) if *old != value => Err(LatticeError::Asymmetric(format!("{a}.{b}"))),
            _ => {
                self.gram.insert(key, value);
                Ok(())
            }
        }
    }

    pub fn with(mut self, a: &str, b: &str, value: impl Into<LinExpr>) -> Result<Self, LatticeError> {
        self.declare(a, b, value.into())?;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn index(&self, name: &str) -> Result<usize, LatticeError> {
        self.basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| LatticeError::UnknownBasis(name.to_string()))
    }

    pub fn pairing(&self, i: usize, j: usize) -> Option<&LinExpr> {
        self.gram.get(&(i.min(j), i.max(j)))
    }

    /// The basis class `name`.
    pub fn class(self: &Arc<Self>, name: &str) -> Result<ClassExpr, LatticeError> {
        let i = self.index(name)?;
        let mut coeffs = vec![LinExpr::default(); self.basis.len()];
        coeffs[i] = LinExpr::constant(1);
        Ok(ClassExpr {
            lattice: Arc::clone(self),
            coeffs,
        })
    }

    pub fn zero(self: &Arc<Self>) -> ClassExpr {
        ClassExpr {
            lattice: Arc::clone(self),
            coeffs: vec![LinExpr::default(); self.basis.len()],
        }
    }
}

fn same_lattice(a: &Arc<RuledLattice>, b: &Arc<RuledLattice>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A linear combination of basis classes with affine coefficients.
#[derive(Debug, Clone)]
pub struct ClassExpr {
    lattice: Arc<RuledLattice>,
    coeffs: Vec<LinExpr>,
}

impl PartialEq for ClassExpr {
    fn eq(&self, other: &Self) -> bool {
        same_lattice(&self.lattice, &other.lattice) && self.coeffs == other.coeffs
    }
}

impl ClassExpr {
    pub fn lattice(&self) -> &Arc<RuledLattice> {
        &self.lattice
    }

    pub fn coefficients(&self) -> &[LinExpr] {
        &self.coeffs
    }

    pub fn coefficient(&self, name: &str) -> Result<&LinExpr, LatticeError> {
        Ok(&self.coeffs[self.lattice.index(name)?])
    }

    fn check(&self, other: &Self) -> Result<(), LatticeError> {
        if same_lattice(&self.lattice, &other.lattice) {
            Ok(())
        } else {
            Err(LatticeError::LatticeMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LatticeError> {
        self.check(other)?;
        Ok(ClassExpr {
            lattice: Arc::clone(&self.lattice),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LatticeError> {
        self.add(&other.scale_lin(&LinExpr::constant(-1))?)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        ClassExpr {
            lattice: Arc::clone(&self.lattice),
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Multiplies by an affine coefficient; the coefficients must stay linear.
    pub fn scale_lin(&self, c: &LinExpr) -> Result<Self, LatticeError> {
        Ok(ClassExpr {
            lattice: Arc::clone(&self.lattice),
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect::<Result<_, _>>()?,
        })
    }

    pub fn substitute(&self, assignment: &Assignment) -> Self {
        ClassExpr {
            lattice: Arc::clone(&self.lattice),
            coeffs: self.coeffs.iter().map(|a| a.substitute(assignment)).collect(),
        }
    }

    /// Intersection number, expanded bilinearly through the Gram matrix.
    pub fn intersect(&self, other: &Self, assignment: &Assignment) -> Result<LinExpr, LatticeError> {
        intersect(self, other, &self.lattice, assignment)
    }
}

/// `a . b` on `lat`. Unknown values in `assignment` are substituted before
/// the linearity check, so products of unknowns are accepted once all but
/// one factor are known. Undeclared pairings only matter when they would
/// contribute.
pub fn intersect(
    a: &ClassExpr,
    b: &ClassExpr,
    lat: &Arc<RuledLattice>,
    assignment: &Assignment,
) -> Result<LinExpr, LatticeError> {
    if !same_lattice(&a.lattice, lat) || !same_lattice(&b.lattice, lat) {
        return Err(LatticeError::LatticeMismatch);
    }
    let a = a.substitute(assignment);
    let b = b.substitute(assignment);
    let mut total = Poly::default();
    for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            let g = lat
                .pairing(i, j)
                .ok_or_else(|| LatticeError::MissingPairing(format!("{}.{}", lat.basis[i], lat.basis[j])))?
                .substitute(assignment);
            if g.is_zero() {
                continue;
            }
            let term = Poly::from_lin(x).mul(&Poly::from_lin(y)).mul(&Poly::from_lin(&g));
            total.add_assign(&term);
        }
    }
    total.into_linear()
}

/// Solves `constraints` for the unknowns they still contain, given the
/// values already in `known`.
pub fn solve_unknowns(constraints: &[LinearConstraint], known: &Assignment) -> Result<Assignment, LatticeError> {
    solve_linear(constraints, known)
}

/// Arithmetic genus by adjunction, `1 + (C^2 + C.K)/2`. The result must be
/// numeric and integral.
pub fn adjunction_genus(c: &ClassExpr, canonical: &ClassExpr, assignment: &Assignment) -> Result<Scalar, LatticeError> {
    let c2 = c.intersect(c, assignment)?;
    let ck = c.intersect(canonical, assignment)?;
    let twice = c2.add(&ck).to_scalar()?;
    let g = Scalar::one() + twice.checked_div(&Scalar::from(2)).expect("nonzero");
    if !g.is_integer() {
        return Err(LatticeError::NonIntegral(g.to_string()));
    }
    Ok(g)
}

/// Arithmetic genus of a union `C1 + C2`: `p1 + p2 + C1.C2 - 1`.
pub fn genus_additivity(p1: &Scalar, p2: &Scalar, inter: &Scalar) -> Scalar {
    p1 + p2 + inter.clone() - Scalar::one()
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(&self.lattice.basis) {
            if c.is_zero() {
                continue;
            }
            let neg_const = c.as_constant().is_some_and(Scalar::is_negative);
            if !first {
                write!(f, "{}", if neg_const { " - " } else { " + " })?;
            } else if neg_const {
                write!(f, "-")?;
            }
            first = false;
            match c.as_constant() {
                Some(v) => {
                    let mag = if v.is_negative() { -v } else { v.clone() };
                    if mag.is_one() {
                        write!(f, "{name}")?;
                    } else {
                        write!(f, "{mag}*{name}")?;
                    }
                }
                None => write!(f, "({c})*{name}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: i64) -> Scalar {
        Scalar::from(v)
    }

    /// Secant scroll: basis l, F with l.F = 1, F.F = 0 and l.l unknown.
    fn theta() -> Arc<RuledLattice> {
        Arc::new(
            RuledLattice::new("Theta", ["l", "F"])
                .with("l", "F", n(1))
                .unwrap()
                .with("F", "F", n(0))
                .unwrap()
                .with("l", "l", LinExpr::unknown("x"))
                .unwrap(),
        )
    }

    fn fixed_theta() -> (Arc<RuledLattice>, Assignment) {
        let mut known = Assignment::new();
        known.insert("x".into(), n(-9));
        (theta(), known)
    }

    #[test]
    fn hyperplane_meets_section() {
        let lat = theta();
        let l = lat.class("l").unwrap();
        let f = lat.class("F").unwrap();
        let h = l.add(&f.scale(&n(15))).unwrap();
        let v = intersect(&h, &l, &lat, &Assignment::new()).unwrap();
        assert_eq!(v, LinExpr::unknown("x").add(&LinExpr::constant(15)));
        let cons = [LinearConstraint::new(v, LinExpr::constant(6))];
        assert_eq!(solve_unknowns(&cons, &Assignment::new()).unwrap()["x"], n(-9));
    }

    #[test]
    fn fibre_is_isotropic() {
        let lat = theta();
        let f = lat.class("F").unwrap();
        let v = f.scale(&n(3)).intersect(&f.scale(&n(-7)), &Assignment::new()).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn tritangent_scroll_section() {
        // T': A.l = 432 and A.F = 3 declared, G = l + 36 F.
        let lat = Arc::new(
            RuledLattice::new("T", ["l", "F", "A"])
                .with("l", "F", n(1))
                .unwrap()
                .with("A", "l", n(432))
                .unwrap()
                .with("A", "F", n(3))
                .unwrap(),
        );
        let g = lat.class("l").unwrap().add(&lat.class("F").unwrap().scale(&n(36))).unwrap();
        let a = lat.class("A").unwrap();
        assert_eq!(a.intersect(&g, &Assignment::new()).unwrap(), LinExpr::constant(540));
    }

    #[test]
    fn tritangent_scroll_alpha() {
        let lat = Arc::new(
            RuledLattice::new("T", ["l", "F", "H"])
                .with("l", "F", n(1))
                .unwrap()
                .with("F", "F", n(0))
                .unwrap()
                .with("H", "l", n(72))
                .unwrap()
                .with("H", "F", n(1))
                .unwrap(),
        );
        let alpha = LinExpr::unknown("alpha");
        let g = lat.class("l").unwrap().add(&lat.class("F").unwrap().scale_lin(&alpha).unwrap()).unwrap();
        let h = lat.class("H").unwrap();
        let cons = [LinearConstraint::new(h.intersect(&g, &Assignment::new()).unwrap(), LinExpr::constant(108))];
        assert_eq!(solve_unknowns(&cons, &Assignment::new()).unwrap()["alpha"], n(36));
    }

    #[test]
    fn quadric_section_beta() {
        let (lat, known) = fixed_theta();
        let l = lat.class("l").unwrap();
        let f = lat.class("F").unwrap();
        let h = l.add(&f.scale(&n(15))).unwrap();
        assert_eq!(h.intersect(&h, &known).unwrap(), LinExpr::constant(21));
        let beta = LinExpr::unknown("beta");
        let gamma = h.scale(&n(2)).sub(&f.scale_lin(&beta).unwrap()).unwrap();
        let cons = [LinearConstraint::new(h.intersect(&gamma, &known).unwrap(), LinExpr::constant(30))];
        let sol = solve_unknowns(&cons, &known).unwrap();
        assert_eq!(sol["beta"], n(12));
        let mut known = known;
        known.extend(sol);
        assert_eq!(gamma.intersect(&gamma, &known).unwrap(), LinExpr::constant(36));
    }

    #[test]
    fn genera_on_secant_scroll() {
        let (lat, known) = fixed_theta();
        let l = lat.class("l").unwrap();
        let f = lat.class("F").unwrap();
        let k = l.scale(&n(-2)).add(&f.scale(&n(33))).unwrap();
        let h = l.add(&f.scale(&n(15))).unwrap();
        let gamma = h.scale(&n(2)).sub(&f.scale(&n(12))).unwrap();
        assert_eq!(adjunction_genus(&l, &k, &known).unwrap(), n(22));
        assert_eq!(adjunction_genus(&h.scale(&n(6)), &k, &known).unwrap(), n(442));
        assert_eq!(adjunction_genus(&gamma.scale(&n(2)), &k, &known).unwrap(), n(139));
        let a = h.scale(&n(6)).sub(&gamma.scale(&n(2))).unwrap();
        assert_eq!(a.intersect(&f, &known).unwrap(), LinExpr::constant(2));
        assert_eq!(a.intersect(&gamma, &known).unwrap(), LinExpr::constant(108));
        assert_eq!(adjunction_genus(&a, &k, &known).unwrap(), n(88));
        assert_eq!(adjunction_genus(&f, &k, &known).unwrap(), n(0));
    }

    #[test]
    fn genus_sum_examples() {
        // 442 = 139 + p + 216 - 1 forces p = 88.
        assert_eq!(genus_additivity(&n(139), &n(88), &n(216)), n(442));
        assert_eq!(genus_additivity(&n(7), &n(0), &n(1)), n(7));
        assert_eq!(genus_additivity(&n(0), &n(0), &n(2)), n(1));
    }

    #[test]
    fn quadric_toy_model_conics() {
        // P1 x P1: two conics of class f1 + f2 meet twice and their union has genus 1.
        let lat = Arc::new(
            RuledLattice::new("Q", ["f1", "f2"])
                .with("f1", "f1", n(0))
                .unwrap()
                .with("f2", "f2", n(0))
                .unwrap()
                .with("f1", "f2", n(1))
                .unwrap(),
        );
        let f1 = lat.class("f1").unwrap();
        let f2 = lat.class("f2").unwrap();
        let k = f1.add(&f2).unwrap().scale(&n(-2));
        let conic = f1.add(&f2).unwrap();
        let none = Assignment::new();
        let g = adjunction_genus(&conic, &k, &none).unwrap();
        assert_eq!(g, n(0));
        let inter = conic.intersect(&conic, &none).unwrap().to_scalar().unwrap();
        assert_eq!(inter, n(2));
        let both = adjunction_genus(&conic.scale(&n(2)), &k, &none).unwrap();
        assert_eq!(both, genus_additivity(&g, &g, &inter));
        assert_eq!(both, n(1));
    }

    #[test]
    fn errors() {
        let lat = theta();
        let l = lat.class("l").unwrap();
        let f = lat.class("F").unwrap();
        // l.l = x, and x*l . l gives x^2.
        let xl = l.scale_lin(&LinExpr::unknown("x")).unwrap();
        assert!(matches!(xl.intersect(&l, &Assignment::new()), Err(LatticeError::Nonlinear(_))));
        let other = Arc::new(RuledLattice::new("Other", ["l", "F"]));
        assert_eq!(
            l.intersect(&other.class("l").unwrap(), &Assignment::new()),
            Err(LatticeError::LatticeMismatch)
        );
        let bare = Arc::new(RuledLattice::new("Bare", ["a"]));
        let a = bare.class("a").unwrap();
        assert!(matches!(a.intersect(&a, &Assignment::new()), Err(LatticeError::MissingPairing(_))));
        // 2l with l^2 = -9 and K = 0: 1 + (-36)/2 is integral; l alone is not.
        let zero = lat.zero();
        let (_, known) = fixed_theta();
        assert!(matches!(adjunction_genus(&l, &zero, &known), Err(LatticeError::NonIntegral(_))));
        assert!(matches!(
            adjunction_genus(&l, &f, &Assignment::new()),
            Err(LatticeError::NotNumeric(_))
        ));
    }

    #[test]
    fn display() {
        let lat = theta();
        let l = lat.class("l").unwrap();
        let f = lat.class("F").unwrap();
        let k = l.scale(&n(-2)).add(&f.scale(&n(33))).unwrap();
        assert_eq!(k.to_string(), "-2*l + 33*F");
        let g = l.add(&f.scale_lin(&LinExpr::unknown("a")).unwrap()).unwrap();
        assert_eq!(g.to_string(), "l + (a)*F");
        assert_eq!(lat.zero().to_string(), "0");
    }
}
