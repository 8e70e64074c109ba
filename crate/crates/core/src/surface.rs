//! Truncated characteristic classes on a formal surface.
//!
//! A surface is only its divisor basis and intersection pairing. Classes
//! have a degree-0 part, a divisor part and a 0-cycle part; anything of
//! degree three or more vanishes. 0-cycles are kept symbolically (as
//! formal products `D.E` of basis divisors, named symbols such as the
//! Euler number `e`, and the point class) and are only turned into numbers
//! by [`ZeroCycle::degree`], so identities can be checked over a ring whose
//! pairing is left undeclared.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::SurfaceError;
use crate::scalar::Scalar;

/// Divisor basis plus (possibly partial) intersection pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceRing {
    names: Vec<String>,
    gram: BTreeMap<(usize, usize), Scalar>,
}

impl SurfaceRing {
    /// A ring with no declared pairings: every 0-cycle stays symbolic.
    pub fn symbolic<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Self> {
        Arc::new(SurfaceRing {
            names: names.into_iter().map(Into::into).collect(),
            gram: BTreeMap::new(),
        })
    }

    /// A ring with the given pairings `(a, b, a.b)`. Entries may be given in
    /// either order; conflicting duplicates are rejected.
    pub fn with_pairings<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        pairings: &[(&str, &str, Scalar)],
    ) -> Result<Arc<Self>, SurfaceError> {
        let mut ring = SurfaceRing {
            names: names.into_iter().map(Into::into).collect(),
            gram: BTreeMap::new(),
        };
        for (a, b, v) in pairings {
            ring.declare(a, b, v.clone())?;
        }
        Ok(Arc::new(ring))
    }

    fn declare(&mut self, a: &str, b: &str, v: Scalar) -> Result<(), SurfaceError> {
        let i = self.index(a)?;
        let j = self.index(b)?;
        let key = (i.min(j), i.max(j));
        match self.gram.get(&key) {
            Some(old) if *old != v => Err(SurfaceError::Asymmetric(format!("{a}.{b}"))),
            _ => {
                self.gram.insert(key, v);
                Ok(())
            }
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn index(&self, name: &str) -> Result<usize, SurfaceError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| SurfaceError::UnknownDivisor(name.to_string()))
    }

    pub fn pairing(&self, i: usize, j: usize) -> Option<&Scalar> {
        self.gram.get(&(i.min(j), i.max(j)))
    }

    /// The class of basis divisor `name`.
    pub fn divisor(self: &Arc<Self>, name: &str) -> Result<SurfaceClass, SurfaceError> {
        let i = self.index(name)?;
        let mut c1 = vec![Scalar::zero(); self.rank()];
        c1[i] = Scalar::one();
        Ok(SurfaceClass {
            ring: Arc::clone(self),
            c0: Scalar::zero(),
            c1,
            c2: ZeroCycle::default(),
        })
    }

    /// The class `c * 1`.
    pub fn constant(self: &Arc<Self>, c: Scalar) -> SurfaceClass {
        SurfaceClass {
            ring: Arc::clone(self),
            c0: c,
            c1: vec![Scalar::zero(); self.rank()],
            c2: ZeroCycle::default(),
        }
    }

    pub fn zero_cycle(self: &Arc<Self>, z: ZeroCycle) -> SurfaceClass {
        let mut c = self.constant(Scalar::zero());
        c.c2 = z;
        c
    }

    fn key_name(&self, key: &ZeroKey) -> String {
        match key {
            ZeroKey::Pair(i, j) => format!("{}.{}", self.names[*i], self.names[*j]),
            ZeroKey::Symbol(s) => s.clone(),
            ZeroKey::Point => "pt".to_string(),
        }
    }
}

fn same_ring(a: &Arc<SurfaceRing>, b: &Arc<SurfaceRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Generators of the degree-2 part.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZeroKey {
    /// Product of basis divisors `i <= j`.
    Pair(usize, usize),
    /// A named 0-cycle, e.g. the Euler number `e` as `c2` of the cotangent bundle.
    Symbol(String),
    /// The class of a point.
    Point,
}

/// A formal rational combination of 0-cycle generators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZeroCycle(BTreeMap<ZeroKey, Scalar>);

impl ZeroCycle {
    pub fn point(c: Scalar) -> Self {
        let mut z = ZeroCycle::default();
        z.add(ZeroKey::Point, c);
        z
    }

    pub fn symbol(name: &str) -> Self {
        let mut z = ZeroCycle::default();
        z.add(ZeroKey::Symbol(name.to_string()), Scalar::one());
        z
    }

    pub fn terms(&self) -> &BTreeMap<ZeroKey, Scalar> {
        &self.0
    }

    pub fn coefficient(&self, key: &ZeroKey) -> Scalar {
        self.0.get(key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add(&mut self, key: ZeroKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let v = self.0.entry(key.clone()).or_default();
        *v += c;
        if v.is_zero() {
            self.0.remove(&key);
        }
    }

    pub fn plus(&self, other: &ZeroCycle) -> ZeroCycle {
        let mut out = self.clone();
        for (k, v) in &other.0 {
            out.add(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> ZeroCycle {
        let mut out = ZeroCycle::default();
        for (k, v) in &self.0 {
            out.add(k.clone(), v * c);
        }
        out
    }

    /// Numerical degree using the ring's pairing. Fails on undeclared
    /// pairings and on named symbols.
    pub fn degree(&self, ring: &SurfaceRing) -> Result<Scalar, SurfaceError> {
        let mut total = Scalar::zero();
        for (k, v) in &self.0 {
            let d = match k {
                ZeroKey::Pair(i, j) => ring
                    .pairing(*i, *j)
                    .cloned()
                    .ok_or_else(|| SurfaceError::MissingPairing(ring.key_name(k)))?,
                ZeroKey::Symbol(s) => return Err(SurfaceError::Symbolic(s.clone())),
                ZeroKey::Point => Scalar::one(),
            };
            total += v * &d;
        }
        Ok(total)
    }
}

/// Element of the truncated ring: `c0 + c1 + c2`.
#[derive(Debug, Clone)]
pub struct SurfaceClass {
    ring: Arc<SurfaceRing>,
    c0: Scalar,
    c1: Vec<Scalar>,
    c2: ZeroCycle,
}

impl PartialEq for SurfaceClass {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.c0 == other.c0 && self.c1 == other.c1 && self.c2 == other.c2
    }
}

impl SurfaceClass {
    pub fn ring(&self) -> &Arc<SurfaceRing> {
        &self.ring
    }

    pub fn c0(&self) -> &Scalar {
        &self.c0
    }

    /// Divisor coefficients in basis order.
    pub fn c1(&self) -> &[Scalar] {
        &self.c1
    }

    pub fn c2(&self) -> &ZeroCycle {
        &self.c2
    }

    pub fn degree_one(&self) -> SurfaceClass {
        SurfaceClass {
            ring: Arc::clone(&self.ring),
            c0: Scalar::zero(),
            c1: self.c1.clone(),
            c2: ZeroCycle::default(),
        }
    }

    pub fn degree_two(&self) -> SurfaceClass {
        self.ring.zero_cycle(self.c2.clone())
    }

    /// `Some(d)` when all nonzero parts sit in degree `d`.
    pub fn pure_degree(&self) -> Option<u8> {
        let has = [
            !self.c0.is_zero(),
            self.c1.iter().any(|c| !c.is_zero()),
            !self.c2.is_zero(),
        ];
        match has {
            [true, false, false] => Some(0),
            [false, true, false] => Some(1),
            [false, false, true] => Some(2),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.iter().all(Scalar::is_zero) && self.c2.is_zero()
    }

    fn check(&self, other: &Self) -> Result<(), SurfaceError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(SurfaceError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SurfaceError> {
        self.check(other)?;
        Ok(SurfaceClass {
            ring: Arc::clone(&self.ring),
            c0: &self.c0 + &other.c0,
            c1: self.c1.iter().zip(&other.c1).map(|(a, b)| a + b).collect(),
            c2: self.c2.plus(&other.c2),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        SurfaceClass {
            ring: Arc::clone(&self.ring),
            c0: &self.c0 * c,
            c1: self.c1.iter().map(|a| a * c).collect(),
            c2: self.c2.scale(c),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SurfaceError> {
        self.add(&other.scale(&-Scalar::one()))
    }

    /// Product of two divisor vectors as a formal 0-cycle.
    fn divisor_product(a: &[Scalar], b: &[Scalar]) -> ZeroCycle {
        let mut z = ZeroCycle::default();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                z.add(ZeroKey::Pair(i.min(j), i.max(j)), x * y);
            }
        }
        z
    }

    /// Truncated ring product; everything above degree two vanishes.
    pub fn ring_product(&self, other: &Self) -> Result<Self, SurfaceError> {
        self.check(other)?;
        let c0 = &self.c0 * &other.c0;
        let c1 = self
            .c1
            .iter()
            .zip(&other.c1)
            .map(|(a, b)| &(&self.c0 * b) + &(a * &other.c0))
            .collect();
        let c2 = self
            .c2
            .scale(&other.c0)
            .plus(&other.c2.scale(&self.c0))
            .plus(&Self::divisor_product(&self.c1, &other.c1));
        Ok(SurfaceClass {
            ring: Arc::clone(&self.ring),
            c0,
            c1,
            c2,
        })
    }

    /// Numerical degree of the 0-cycle part.
    pub fn degree(&self) -> Result<Scalar, SurfaceError> {
        self.c2.degree(&self.ring)
    }
}

/// Free-function form of [`SurfaceClass::ring_product`].
pub fn ring_product(a: &SurfaceClass, b: &SurfaceClass) -> Result<SurfaceClass, SurfaceError> {
    a.ring_product(b)
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Scalar, String)> = Vec::new();
        if !self.c0.is_zero() {
            terms.push((self.c0.clone(), String::new()));
        }
        for (c, name) in self.c1.iter().zip(&self.ring.names) {
            if !c.is_zero() {
                terms.push((c.clone(), name.clone()));
            }
        }
        for (k, c) in self.c2.terms() {
            terms.push((c.clone(), self.ring.key_name(k)));
        }
        write_terms(f, &terms)
    }
}

pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(Scalar, String)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (c, name)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = if neg { -c } else { c.clone() };
        match (i, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if name.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{name}")?;
        } else {
            write!(f, "{mag}*{name}")?;
        }
    }
    Ok(())
}

/// Total Chern class `1 + c1 t + c2 t^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernPolynomial(SurfaceClass);

impl ChernPolynomial {
    pub fn trivial(ring: &Arc<SurfaceRing>) -> Self {
        ChernPolynomial(ring.constant(Scalar::one()))
    }

    /// `1 + c1 t + c2 t^2` from the degree-1 and degree-2 parts of the inputs.
    pub fn new(c1: &SurfaceClass, c2: &SurfaceClass) -> Result<Self, SurfaceError> {
        let one = c1.ring.constant(Scalar::one());
        Ok(ChernPolynomial(one.add(&c1.degree_one())?.add(&c2.degree_two())?))
    }

    pub fn ring(&self) -> &Arc<SurfaceRing> {
        &self.0.ring
    }

    pub fn c1(&self) -> SurfaceClass {
        self.0.degree_one()
    }

    pub fn c2(&self) -> SurfaceClass {
        self.0.degree_two()
    }

    pub fn total(&self) -> &SurfaceClass {
        &self.0
    }

    /// Truncated product: `c1 = c1 + c1'`, `c2 = c2 + c2' + c1 c1'`.
    pub fn mul(&self, other: &Self) -> Result<Self, SurfaceError> {
        Ok(ChernPolynomial(self.0.ring_product(&other.0)?))
    }
}

/// Free-function form of [`ChernPolynomial::mul`].
pub fn chern_mul(p: &ChernPolynomial, q: &ChernPolynomial) -> Result<ChernPolynomial, SurfaceError> {
    p.mul(q)
}

impl fmt::Display for ChernPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1 + ({})t + ({})t^2", self.c1(), self.c2())
    }
}

/// Rank and Chern data of a vector bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct BundleSpec {
    rank: u32,
    chern: ChernPolynomial,
}

impl BundleSpec {
    pub fn new(rank: u32, chern: ChernPolynomial) -> Self {
        assert!(rank >= 1, "bundle rank must be positive");
        BundleSpec { rank, chern }
    }

    /// The line bundle with first Chern class `l`.
    pub fn line(l: &SurfaceClass) -> Result<Self, SurfaceError> {
        let zero = l.ring.constant(Scalar::zero());
        Ok(BundleSpec::new(1, ChernPolynomial::new(l, &zero)?))
    }

    pub fn trivial_line(ring: &Arc<SurfaceRing>) -> Self {
        BundleSpec::new(1, ChernPolynomial::trivial(ring))
    }

    /// Cotangent bundle with `c1 = K` and `c2 = e`.
    pub fn cotangent(canonical: &SurfaceClass, euler: &ZeroCycle) -> Result<Self, SurfaceError> {
        let e = canonical.ring.zero_cycle(euler.clone());
        Ok(BundleSpec::new(2, ChernPolynomial::new(canonical, &e)?))
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn chern(&self) -> &ChernPolynomial {
        &self.chern
    }

    pub fn c1(&self) -> SurfaceClass {
        self.chern.c1()
    }

    pub fn c2(&self) -> SurfaceClass {
        self.chern.c2()
    }

    /// Whitney sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, SurfaceError> {
        Ok(BundleSpec::new(self.rank + other.rank, self.chern.mul(&other.chern)?))
    }

    /// `E (x) L`: `c1 + r l`, `c2 + (r-1) c1 l + C(r,2) l^2`.
    pub fn tensor_line(&self, l: &SurfaceClass) -> Result<Self, SurfaceError> {
        let l = l.degree_one();
        let r = Scalar::from(self.rank);
        let r1 = Scalar::from(self.rank - 1);
        let r2 = Scalar::from(self.rank * (self.rank - 1) / 2);
        let c1 = self.c1().add(&l.scale(&r))?;
        let c2 = self
            .c2()
            .add(&self.c1().ring_product(&l)?.scale(&r1))?
            .add(&l.ring_product(&l)?.scale(&r2))?;
        Ok(BundleSpec::new(self.rank, ChernPolynomial::new(&c1, &c2)?))
    }

    /// `Sym^n E` of a rank 2 bundle. With Chern roots `a, b` the roots of
    /// `Sym^n` are `i a + (n-i) b`, which gives
    /// `c1 = T c1(E)` and `c2 = (T^2 - Q)/2 c1(E)^2 + (Q - R) c2(E)` where
    /// `T = n(n+1)/2`, `Q = sum i^2`, `R = sum i(n-i)`.
    pub fn sym_power(&self, n: u32) -> Result<Self, SurfaceError> {
        if self.rank != 2 {
            return Err(SurfaceError::UnsupportedRank(self.rank));
        }
        let ring = self.chern.ring();
        if n == 0 {
            return Ok(BundleSpec::trivial_line(ring));
        }
        let n64 = i64::from(n);
        let t = n64 * (n64 + 1) / 2;
        let q: i64 = (0..=n64).map(|i| i * i).sum();
        let r: i64 = (0..=n64).map(|i| i * (n64 - i)).sum();
        let c1e = self.c1();
        let c1 = c1e.scale(&Scalar::from(t));
        let sq = c1e.ring_product(&c1e)?.scale(&Scalar::ratio(t * t - q, 2).expect("nonzero"));
        let c2 = sq.add(&self.c2().scale(&Scalar::from(q - r)))?;
        Ok(BundleSpec::new(n + 1, ChernPolynomial::new(&c1, &c2)?))
    }
}

/// Chern data of the jet bundle `J^n(L)` on a surface, accumulated over
/// the filtration with graded pieces `L (x) Sym^i(Omega)`, `i = 0..n`.
pub fn jet_chern(l: &SurfaceClass, n: u32, omega: &BundleSpec) -> Result<BundleSpec, SurfaceError> {
    if omega.rank() != 2 {
        return Err(SurfaceError::UnsupportedRank(omega.rank()));
    }
    let mut acc = BundleSpec::line(l)?;
    for i in 1..=n {
        acc = acc.direct_sum(&omega.sym_power(i)?.tensor_line(l)?)?;
    }
    Ok(acc)
}

/// Expected number of hyperplane sections with a triple point,
/// `5 K^2 + 20 H.K + 15 H^2 + 5 e`.
pub fn triple_point_count(h2: &Scalar, hk: &Scalar, k2: &Scalar, e: &Scalar) -> Scalar {
    Scalar::from(5) * k2 + Scalar::from(20) * hk + Scalar::from(15) * h2 + Scalar::from(5) * e
}
