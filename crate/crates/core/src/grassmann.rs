//! Chow ring of the Grassmannian `Gr(k, n)` in the Schubert basis.
//!
//! `Gr(k, n)` is the variety of `k`-dimensional subspaces of an
//! `n`-dimensional vector space. Schubert classes `s[lambda]` are indexed by
//! partitions fitting a `k x (n-k)` box and have codimension `|lambda|`.
//! Products that leave the box vanish in the ring and are silently dropped.
//!
//! Planes in `P^4` are `Gr(3,5)`: there `h = s[1,1,1]` (planes in a
//! hyperplane), `k = s[2,1]` and the hyperplane class is `s[1]`. Lines in
//! `P^3` are `Gr(2,4)`, with `s[2]` the lines through a point and `s[1,1]`
//! the lines in a plane.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::GrassmannError;
use crate::partition::Partition;
use crate::scalar::Scalar;

/// `Gr(k, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GrassmannContext {
    k: usize,
    n: usize,
}

impl GrassmannContext {
    pub fn new(k: usize, n: usize) -> Result<Self, GrassmannError> {
        if k == 0 || k >= n {
            return Err(GrassmannError::InvalidContext { k, n });
        }
        Ok(GrassmannContext { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Box height: at most `k` parts.
    pub fn rows(&self) -> usize {
        self.k
    }

    /// Box width: parts at most `n - k`.
    pub fn cols(&self) -> u32 {
        (self.n - self.k) as u32
    }

    pub fn dim(&self) -> usize {
        self.k * (self.n - self.k)
    }

    pub fn fits(&self, lambda: &Partition) -> bool {
        lambda.fits_box(self.rows(), self.cols())
    }

    /// The point class: the full box.
    pub fn point_partition(&self) -> Partition {
        Partition::new(vec![self.cols(); self.rows()])
    }

    /// Classical degree of the Plücker embedding,
    /// `(k(n-k))! * prod_{i<k} i! / (n-k+i)!`.
    pub fn plucker_degree_formula(&self) -> BigInt {
        let fact = |m: usize| -> BigInt { (1..=m).fold(BigInt::one(), |acc, i| acc * i) };
        let mut num = fact(self.dim());
        let mut den = BigInt::one();
        for i in 0..self.k {
            num *= fact(i);
            den *= fact(self.n - self.k + i);
        }
        num / den
    }
}

impl fmt::Display for GrassmannContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr({},{})", self.k, self.n)
    }
}

/// A rational combination of Schubert classes in one Grassmannian.
#[derive(Clone, PartialEq, Eq)]
pub struct SchubertElement {
    ctx: GrassmannContext,
    terms: BTreeMap<Partition, Scalar>,
}

impl SchubertElement {
    pub fn zero(ctx: GrassmannContext) -> Self {
        SchubertElement {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    /// `c * [Gr]`, the multiple of the fundamental class.
    pub fn constant(ctx: GrassmannContext, c: Scalar) -> Self {
        let mut e = Self::zero(ctx);
        e.add_term(Partition::empty(), c);
        e
    }

    /// The class `s[lambda]`; zero when `lambda` leaves the box.
    pub fn schubert(ctx: GrassmannContext, lambda: Partition) -> Self {
        let mut e = Self::zero(ctx);
        if ctx.fits(&lambda) {
            e.add_term(lambda, Scalar::one());
        }
        e
    }

    /// Special class `s[a]`.
    pub fn special(ctx: GrassmannContext, a: u32) -> Self {
        Self::schubert(ctx, Partition::row(a))
    }

    pub fn context(&self) -> GrassmannContext {
        self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, lambda: &Partition) -> Scalar {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, lambda: Partition, c: Scalar) {
        if c.is_zero() || !self.ctx.fits(&lambda) {
            return;
        }
        let entry = self.terms.entry(lambda).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.ctx);
        for (lam, v) in &self.terms {
            out.add_term(lam.clone(), v * c);
        }
        out
    }

    /// Codimension, if every term has the same weight. Zero has none.
    pub fn pure_codim(&self) -> Option<usize> {
        let mut weights = self.terms.keys().map(Partition::weight);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    fn check_ctx(&self, other: &Self) -> Result<(), GrassmannError> {
        if self.ctx != other.ctx {
            return Err(GrassmannError::ContextMismatch {
                left: self.ctx.to_string(),
                right: other.ctx.to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, GrassmannError> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (lam, v) in &other.terms {
            out.add_term(lam.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, GrassmannError> {
        self.checked_add(&-other)
    }

    /// Product with the special class `s[a]` by the Pieri rule.
    pub fn pieri(&self, a: u32) -> Self {
        let mut out = Self::zero(self.ctx);
        for (lam, c) in &self.terms {
            for nu in pieri_strips(lam, a, self.ctx.rows(), self.ctx.cols()) {
                out.add_term(nu, c.clone());
            }
        }
        out
    }

    /// Ring product, bilinear over Littlewood–Richardson structure constants.
    pub fn multiply(&self, other: &Self) -> Result<Self, GrassmannError> {
        self.check_ctx(other)?;
        let mut out = Self::zero(self.ctx);
        for (lam, a) in &self.terms {
            for (mu, b) in &other.terms {
                let ab = a * b;
                for (nu, c) in lr_products(lam, mu, self.ctx.rows(), self.ctx.cols()) {
                    out.add_term(nu, &ab * &Scalar::from_int(c));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::constant(self.ctx, Scalar::one());
        for _ in 0..exp {
            acc = acc.multiply(self).expect("same context");
        }
        acc
    }

    /// Degree: the coefficient of the point class.
    pub fn integrate(&self) -> Scalar {
        self.coefficient(&self.ctx.point_partition())
    }

    /// Degree in the Plücker embedding of a `dim`-dimensional cycle:
    /// `integral of e * s[1]^dim`.
    pub fn plucker_degree(&self, dim: usize) -> Result<Scalar, GrassmannError> {
        let expected = self.ctx.dim().checked_sub(dim).ok_or(GrassmannError::Grading { expected: 0 })?;
        match self.pure_codim() {
            Some(c) if c == expected => {}
            None if self.is_zero() => return Ok(Scalar::zero()),
            _ => return Err(GrassmannError::Grading { expected }),
        }
        let mut acc = self.clone();
        for _ in 0..dim {
            acc = acc.pieri(1);
        }
        Ok(acc.integrate())
    }
}

/// Poincaré duality: `1` iff `mu` is the box complement of `lambda`.
pub fn duality_pair(
    lambda: &Partition,
    mu: &Partition,
    ctx: GrassmannContext,
) -> Result<u32, GrassmannError> {
    if lambda.weight() + mu.weight() != ctx.dim() {
        return Err(GrassmannError::WeightMismatch {
            left: lambda.weight(),
            right: mu.weight(),
            dim: ctx.dim(),
        });
    }
    let comp = lambda.complement_in_box(ctx.rows(), ctx.cols())?;
    Ok(u32::from(&comp == mu))
}

/// Partitions `nu` obtained from `lambda` by adding a horizontal strip of
/// `a` boxes, restricted to the box.
pub fn pieri_strips(lambda: &Partition, a: u32, rows: usize, cols: u32) -> Vec<Partition> {
    // nu_1 in [l_1, cols], nu_i in [l_i, l_{i-1}] for i > 1, total added = a.
    fn go(
        lambda: &Partition,
        rows: usize,
        cols: u32,
        i: usize,
        left: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if i == rows {
            if left == 0 {
                out.push(Partition::new(cur.clone()));
            }
            return;
        }
        let lo = lambda.part(i);
        let hi = if i == 0 { cols } else { lambda.part(i - 1) };
        let hi = hi.min(lo + left);
        for v in lo..=hi {
            cur.push(v);
            go(lambda, rows, cols, i + 1, left - (v - lo), cur, out);
            cur.pop();
        }
    }
    if !lambda.fits_box(rows, cols) {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(lambda, rows, cols, 0, a, &mut Vec::new(), &mut out);
    out
}

/// Littlewood–Richardson expansion of `s[lambda] * s[mu]` truncated to the box.
pub fn lr_products(lambda: &Partition, mu: &Partition, rows: usize, cols: u32) -> Vec<(Partition, u64)> {
    if !lambda.fits_box(rows, cols) || !mu.fits_box(rows, cols) {
        return Vec::new();
    }
    let weight = lambda.weight() + mu.weight();
    Partition::all_in_box(rows, cols, weight)
        .into_iter()
        .filter(|nu| nu.contains(lambda) && nu.contains(mu))
        .filter_map(|nu| {
            let c = lr_coefficient(lambda, mu, &nu);
            (c > 0).then_some((nu, c))
        })
        .collect()
}

/// Number of LR tableaux of skew shape `nu / lambda` and content `mu`:
/// semistandard fillings whose reverse row reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !nu.contains(lambda) || nu.weight() != lambda.weight() + mu.weight() {
        return 0;
    }
    // Cells in reading order: rows top to bottom, each row right to left.
    let cells: Vec<(usize, u32)> = (0..nu.len())
        .flat_map(|r| (lambda.part(r)..nu.part(r)).rev().map(move |c| (r, c)))
        .collect();
    let mut filling: BTreeMap<(usize, u32), usize> = BTreeMap::new();
    let mut counts = vec![0u32; mu.len()];
    count_fillings(&cells, 0, lambda, mu, &mut filling, &mut counts)
}

fn count_fillings(
    cells: &[(usize, u32)],
    idx: usize,
    lambda: &Partition,
    mu: &Partition,
    filling: &mut BTreeMap<(usize, u32), usize>,
    counts: &mut [u32],
) -> u64 {
    let Some(&(r, c)) = cells.get(idx) else {
        return u64::from(counts.iter().zip(mu.parts()).all(|(a, b)| a == b));
    };
    // Rows weakly increase left to right; the right neighbour is filled already.
    let max = filling.get(&(r, c + 1)).copied().unwrap_or(mu.len() - 1);
    // Columns strictly increase downward; cells above inside lambda impose nothing.
    let min = if r > 0 && c >= lambda.part(r - 1) {
        filling[&(r - 1, c)] + 1
    } else {
        0
    };
    let mut total = 0;
    for v in min..=max.min(mu.len().saturating_sub(1)) {
        if counts[v] >= mu.parts()[v] || (v > 0 && counts[v] >= counts[v - 1]) {
            continue;
        }
        counts[v] += 1;
        filling.insert((r, c), v);
        total += count_fillings(cells, idx + 1, lambda, mu, filling, counts);
        filling.remove(&(r, c));
        counts[v] -= 1;
    }
    total
}

impl Neg for &SchubertElement {
    type Output = SchubertElement;
    fn neg(self) -> SchubertElement {
        self.scale(&-Scalar::one())
    }
}

impl Add for &SchubertElement {
    type Output = SchubertElement;
    /// Panics on a context mismatch; use [`SchubertElement::checked_add`] otherwise.
    fn add(self, rhs: &SchubertElement) -> SchubertElement {
        self.checked_add(rhs).expect("Schubert context mismatch")
    }
}

impl Sub for &SchubertElement {
    type Output = SchubertElement;
    fn sub(self, rhs: &SchubertElement) -> SchubertElement {
        self.checked_sub(rhs).expect("Schubert context mismatch")
    }
}

impl Mul for &SchubertElement {
    type Output = SchubertElement;
    fn mul(self, rhs: &SchubertElement) -> SchubertElement {
        self.multiply(rhs).expect("Schubert context mismatch")
    }
}

impl fmt::Display for SchubertElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Partition> = self.terms.keys().collect();
        keys.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| b.cmp(a)));
        for (i, lam) in keys.into_iter().enumerate() {
            let c = &self.terms[lam];
            let mag = if c.is_negative() { -c } else { c.clone() };
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let parts: Vec<String> = lam.parts().iter().map(u32::to_string).collect();
            if mag.is_one() {
                write!(f, "s[{}]", parts.join(","))?;
            } else {
                write!(f, "{}*s[{}]", mag, parts.join(","))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SchubertElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(k: usize, n: usize) -> GrassmannContext {
        GrassmannContext::new(k, n).unwrap()
    }

    fn s(ctx: GrassmannContext, parts: &[u32]) -> SchubertElement {
        SchubertElement::schubert(ctx, Partition::new(parts.to_vec()))
    }

    #[test]
    fn pieri_examples() {
        let g24 = gr(2, 4);
        let g35 = gr(3, 5);
        assert_eq!(s(g24, &[1]).pieri(1), &s(g24, &[2]) + &s(g24, &[1, 1]));
        assert_eq!(s(g35, &[2, 1]).pieri(1), &s(g35, &[2, 2]) + &s(g35, &[2, 1, 1]));
        assert_eq!(s(g24, &[2]).pieri(1), s(g24, &[2, 1]));
        assert_eq!(s(g24, &[1]).pieri(0), s(g24, &[1]));
    }

    #[test]
    fn lr_known_coefficients() {
        let p = |v: &[u32]| Partition::new(v.to_vec());
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[1]), &p(&[3, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[1, 1]), &p(&[2]), &p(&[2, 2])), 0);
    }

    #[test]
    fn g24_product_relations() {
        let g = gr(3, 5);
        let h = s(g, &[1, 1, 1]);
        let k = s(g, &[2, 1]);
        assert_eq!((&h * &h).integrate(), Scalar::one());
        assert_eq!((&k * &k).integrate(), Scalar::one());
        assert!((&h * &k).is_zero());
        let hyper3 = s(g, &[1]).pow(3);
        assert_eq!(hyper3, &k.scale(&Scalar::from(2)) + &h);
        assert_eq!(s(g, &[1]).pow(6).integrate(), Scalar::from(5));
    }

    #[test]
    fn lines_in_p3() {
        let g = gr(2, 4);
        assert_eq!(&s(g, &[1, 1]) * &s(g, &[1, 1]), s(g, &[2, 2]));
        assert_eq!((&s(g, &[2]) * &s(g, &[2])).integrate(), Scalar::one());
        assert_eq!((&s(g, &[2]) * &s(g, &[1, 1])).integrate(), Scalar::zero());
    }

    #[test]
    fn plucker_degrees() {
        let g = gr(2, 4);
        let bit = &s(g, &[2]).scale(&Scalar::from(60)) + &s(g, &[1, 1]).scale(&Scalar::from(72));
        assert_eq!(bit.plucker_degree(2).unwrap(), Scalar::from(132));
        assert_eq!(s(g, &[2]).plucker_degree(2).unwrap(), Scalar::one());
        let g = gr(3, 5);
        let xs = &s(g, &[1, 1, 1]).scale(&Scalar::from(120)) + &s(g, &[2, 1]).scale(&Scalar::from(16));
        assert_eq!(xs.plucker_degree(3).unwrap(), Scalar::from(152));
        assert!(matches!(xs.plucker_degree(2), Err(GrassmannError::Grading { expected: 4 })));
        let mixed = &s(g, &[1]) + &s(g, &[2]);
        assert!(mixed.plucker_degree(5).is_err());
    }

    #[test]
    fn duality_examples() {
        let g = gr(3, 5);
        let p = |v: &[u32]| Partition::new(v.to_vec());
        assert_eq!(duality_pair(&p(&[2, 1]), &p(&[2, 1]), g).unwrap(), 1);
        assert_eq!(duality_pair(&p(&[2, 1]), &p(&[1, 1, 1]), g).unwrap(), 0);
        assert_eq!(duality_pair(&Partition::empty(), &p(&[2, 2]), gr(2, 4)).unwrap(), 1);
        assert!(matches!(
            duality_pair(&p(&[1]), &p(&[1]), g),
            Err(GrassmannError::WeightMismatch { .. })
        ));
    }

    #[test]
    fn context_checks() {
        assert!(GrassmannContext::new(0, 3).is_err());
        assert!(GrassmannContext::new(3, 3).is_err());
        let a = s(gr(2, 4), &[1]);
        let b = s(gr(3, 5), &[1]);
        assert!(matches!(a.multiply(&b), Err(GrassmannError::ContextMismatch { .. })));
    }

    #[test]
    fn classical_degree_formula() {
        assert_eq!(gr(2, 4).plucker_degree_formula(), BigInt::from(2));
        assert_eq!(gr(2, 5).plucker_degree_formula(), BigInt::from(5));
        assert_eq!(gr(3, 5).plucker_degree_formula(), BigInt::from(5));
        assert_eq!(gr(3, 6).plucker_degree_formula(), BigInt::from(42));
    }

    #[test]
    fn display_orders_by_weight() {
        let g = gr(3, 5);
        assert_eq!(s(g, &[1]).pow(3).to_string(), "2*s[2,1] + s[1,1,1]");
        assert_eq!(SchubertElement::zero(g).to_string(), "0");
    }
}
