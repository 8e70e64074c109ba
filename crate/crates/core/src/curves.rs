//! Classical enumerative formulas for curves and scrolls.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::CurveError;
use crate::scalar::Scalar;

/// Numerical characters of a plane curve and its dual.
///
/// Any field may be unknown; [`plucker_solve`] fills the gaps.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PlueckerData {
    pub degree: Option<Scalar>,
    pub class: Option<Scalar>,
    pub nodes: Option<Scalar>,
    pub cusps: Option<Scalar>,
    pub bitangents: Option<Scalar>,
    pub flexes: Option<Scalar>,
    pub genus: Option<Scalar>,
}

/// Field names in the order used by [`PlueckerData::fields`].
pub const PLUECKER_FIELDS: [&str; 7] = ["d", "m", "nodes", "cusps", "bitangents", "flexes", "g"];

const D: usize = 0;
const M: usize = 1;
const NODES: usize = 2;
const CUSPS: usize = 3;
const BITANGENTS: usize = 4;
const FLEXES: usize = 5;
const GENUS: usize = 6;

type Vars = [Option<Scalar>; 7];

impl PlueckerData {
    pub fn fields(&self) -> [Option<Scalar>; 7] {
        [
            self.degree.clone(),
            self.class.clone(),
            self.nodes.clone(),
            self.cusps.clone(),
            self.bitangents.clone(),
            self.flexes.clone(),
            self.genus.clone(),
        ]
    }

    fn from_fields(v: Vars) -> Self {
        let [degree, class, nodes, cusps, bitangents, flexes, genus] = v;
        PlueckerData {
            degree,
            class,
            nodes,
            cusps,
            bitangents,
            flexes,
            genus,
        }
    }

    /// Sets a field by its short name (`d`, `m`, `nodes`, `cusps`,
    /// `bitangents`, `flexes`, `g`).
    pub fn set(&mut self, name: &str, value: Scalar) -> Result<(), CurveError> {
        let slot = match name {
            "d" => &mut self.degree,
            "m" => &mut self.class,
            "nodes" => &mut self.nodes,
            "cusps" => &mut self.cusps,
            "bitangents" => &mut self.bitangents,
            "flexes" => &mut self.flexes,
            "g" => &mut self.genus,
            other => return Err(CurveError::OutOfRange(format!("no Pluecker field {other:?}"))),
        };
        *slot = Some(value);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Scalar> {
        match name {
            "d" => self.degree.as_ref(),
            "m" => self.class.as_ref(),
            "nodes" => self.nodes.as_ref(),
            "cusps" => self.cusps.as_ref(),
            "bitangents" => self.bitangents.as_ref(),
            "flexes" => self.flexes.as_ref(),
            "g" => self.genus.as_ref(),
            _ => None,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.fields().iter().all(Option::is_some)
    }

    /// Data of the dual curve: degree and class, nodes and bitangents,
    /// cusps and flexes trade places.
    pub fn dual(&self) -> PlueckerData {
        PlueckerData {
            degree: self.class.clone(),
            class: self.degree.clone(),
            nodes: self.bitangents.clone(),
            cusps: self.flexes.clone(),
            bitangents: self.nodes.clone(),
            flexes: self.cusps.clone(),
            genus: self.genus.clone(),
        }
    }
}

impl fmt::Display for PlueckerData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = PLUECKER_FIELDS
            .iter()
            .zip(self.fields())
            .map(|(n, v)| match v {
                Some(v) => format!("{n}={v}"),
                None => format!("{n}=?"),
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn s(v: i64) -> Scalar {
    Scalar::from(v)
}

/// Residuals of the Plücker system; each vanishes on a consistent curve.
/// The last one (genus of the dual) follows from the first five.
fn equations(v: &[Scalar; 7]) -> [(&'static str, Scalar); 6] {
    let [d, m, nodes, cusps, bit, flex, g] = v;
    let two = s(2);
    let three = s(3);
    [
        (
            "m = d(d-1) - 2 nodes - 3 cusps",
            m - &(d * &(d - &s(1))) + &two * nodes + &three * cusps,
        ),
        (
            "flexes = 3d(d-2) - 6 nodes - 8 cusps",
            flex - &(&three * &(d * &(d - &two))) + s(6) * nodes.clone() + s(8) * cusps.clone(),
        ),
        (
            "d = m(m-1) - 2 bitangents - 3 flexes",
            d - &(m * &(m - &s(1))) + &two * bit + &three * flex,
        ),
        (
            "cusps = 3m(m-2) - 6 bitangents - 8 flexes",
            cusps - &(&three * &(m * &(m - &two))) + s(6) * bit.clone() + s(8) * flex.clone(),
        ),
        (
            "g = (d-1)(d-2)/2 - nodes - cusps",
            g - &half(&(&(d - &s(1)) * &(d - &two))) + nodes.clone() + cusps.clone(),
        ),
        (
            "g = (m-1)(m-2)/2 - bitangents - flexes",
            g - &half(&(&(m - &s(1)) * &(m - &two))) + bit.clone() + flex.clone(),
        ),
    ]
}

fn half(x: &Scalar) -> Scalar {
    x.checked_div(&s(2)).expect("nonzero")
}

/// Which variables each equation involves.
const EQUATION_VARS: [&[usize]; 6] = [
    &[D, M, NODES, CUSPS],
    &[D, NODES, CUSPS, FLEXES],
    &[D, M, BITANGENTS, FLEXES],
    &[M, CUSPS, BITANGENTS, FLEXES],
    &[D, NODES, CUSPS, GENUS],
    &[M, BITANGENTS, FLEXES, GENUS],
];

fn residual_at(eq: usize, vars: &Vars, slot: usize, value: Scalar) -> Scalar {
    let mut full: [Scalar; 7] = std::array::from_fn(|i| vars[i].clone().unwrap_or_default());
    full[slot] = value;
    equations(&full)[eq].1.clone()
}

/// Non-negative integer roots of the single-unknown equation `eq` in `slot`.
fn solve_one(eq: usize, vars: &Vars, slot: usize) -> Result<Vec<Scalar>, CurveError> {
    // Each residual is at most quadratic in any one variable.
    let r0 = residual_at(eq, vars, slot, s(0));
    let r1 = residual_at(eq, vars, slot, s(1));
    let r2 = residual_at(eq, vars, slot, s(2));
    let a = half(&(&(&r2 - &(&s(2) * &r1)) + &r0));
    let b = &(&r1 - &r0) - &a;
    let c = r0;
    let mut roots = Vec::new();
    if a.is_zero() {
        if b.is_zero() {
            return Ok(roots);
        }
        roots.push((-c).checked_div(&b).expect("nonzero"));
    } else {
        let disc = &(&b * &b) - &(&s(4) * &(&a * &c));
        if disc.is_negative() {
            return Ok(roots);
        }
        let Some(root) = rational_sqrt(&disc) else {
            return Ok(roots);
        };
        let two_a = &s(2) * &a;
        for sign in [1, -1] {
            let r = (&(-&b) + &(&s(sign) * &root)).checked_div(&two_a).expect("nonzero");
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    Ok(roots
        .into_iter()
        .filter(|r| r.is_integer() && !r.is_negative())
        .collect())
}

fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    let sq = |n: &BigInt| -> Option<BigInt> {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Scalar::ratio(sq(x.numer())?, sq(x.denom())?).expect("positive denominator"))
}

/// Completes Plücker data from a partial specification using
/// `m = d(d-1) - 2 nodes - 3 cusps`, `flexes = 3d(d-2) - 6 nodes - 8 cusps`,
/// their duals, and `g = (d-1)(d-2)/2 - nodes - cusps`.
///
/// Values are propagated one equation at a time; an equation fixes an
/// unknown when it is the only one left and it has a unique non-negative
/// integer solution. Every equation is checked on the result.
pub fn plucker_solve(partial: &PlueckerData) -> Result<PlueckerData, CurveError> {
    let mut vars: Vars = partial.fields();
    loop {
        let mut progress = false;
        for (eq, involved) in EQUATION_VARS.iter().enumerate() {
            let missing: Vec<usize> = involved.iter().copied().filter(|&i| vars[i].is_none()).collect();
            if missing.len() != 1 {
                continue;
            }
            let slot = missing[0];
            let roots = solve_one(eq, &vars, slot)?;
            match roots.as_slice() {
                [r] => {
                    vars[slot] = Some(r.clone());
                    progress = true;
                }
                [] => {
                    return Err(CurveError::Inconsistent(format!(
                        "{} has no non-negative integer solution for {}",
                        equations(&std::array::from_fn(|i| vars[i].clone().unwrap_or_default()))[eq].0,
                        PLUECKER_FIELDS[slot]
                    )))
                }
                _ => {}
            }
        }
        if !progress {
            break;
        }
    }
    let missing: Vec<&str> = (0..7).filter(|&i| vars[i].is_none()).map(|i| PLUECKER_FIELDS[i]).collect();
    if !missing.is_empty() {
        return Err(CurveError::Underdetermined(missing.join(", ")));
    }
    let full: [Scalar; 7] = std::array::from_fn(|i| vars[i].clone().expect("complete"));
    for (name, r) in equations(&full) {
        if !r.is_zero() {
            return Err(CurveError::Inconsistent(format!("{name} is off by {r}")));
        }
    }
    Ok(PlueckerData::from_fields(vars))
}

/// Total ramification of a degree-`n` cover, `2 g_src - 2 - n (2 g_tgt - 2)`.
pub fn hurwitz_ramification(g_source: i64, g_target: i64, n: i64) -> Result<Scalar, CurveError> {
    if n < 1 || g_source < 0 || g_target < 0 {
        return Err(CurveError::OutOfRange(format!(
            "cover data ({g_source}, {g_target}, {n})"
        )));
    }
    let r = s(2 * g_source - 2) - s(n) * s(2 * g_target - 2);
    if r.is_negative() {
        return Err(CurveError::NegativeRamification(r.to_string()));
    }
    Ok(r)
}

/// Coincidences of a correspondence with indices `[e, f]` on a rational curve.
pub fn correspondence_coincidences(e: &Scalar, f: &Scalar) -> Result<Scalar, CurveError> {
    if e.is_negative() || f.is_negative() {
        return Err(CurveError::OutOfRange(format!("indices [{e}, {f}]")));
    }
    Ok(e + f)
}

/// Three directrix curves of degrees `n1, n2, n3` with pairwise common points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleScrollInput {
    pub degrees: [i64; 3],
    pub i12: i64,
    pub i13: i64,
    pub i23: i64,
}

/// Degree of the scroll of lines meeting three curves, and the
/// multiplicity of each curve on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScrollNumbers {
    pub degree: Scalar,
    pub multiplicities: [Scalar; 3],
}

/// `degree = 2 n1 n2 n3 - (i23 n1 + i13 n2 + i12 n3)` and
/// `mult_i = n_j n_k - i_jk`.
///
/// The pairwise correction is the first-order one: each common point of
/// two directrices removes the cone of lines through it. It is exact with
/// no common points and matches the one corrected configuration this crate
/// uses; it is not a general treatment of special positions.
pub fn salmon_cayley(inp: &TripleScrollInput) -> Result<ScrollNumbers, CurveError> {
    let [n1, n2, n3] = inp.degrees;
    if inp.degrees.iter().any(|&n| n < 0) || [inp.i12, inp.i13, inp.i23].iter().any(|&i| i < 0) {
        return Err(CurveError::InvalidScroll("negative input".into()));
    }
    let degree = 2 * n1 * n2 * n3 - (inp.i23 * n1 + inp.i13 * n2 + inp.i12 * n3);
    let mults = [n2 * n3 - inp.i23, n1 * n3 - inp.i13, n1 * n2 - inp.i12];
    if degree < 0 {
        return Err(CurveError::InvalidScroll(format!("degree {degree}")));
    }
    if let Some(m) = mults.iter().find(|&&m| m < 0) {
        return Err(CurveError::InvalidScroll(format!("multiplicity {m}")));
    }
    Ok(ScrollNumbers {
        degree: s(degree),
        multiplicities: mults.map(s),
    })
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Plücker degree of the surface of secant lines of a space curve of
/// degree `d` and genus `g`: secants through a general point,
/// `C(d-1, 2) - g`, plus secants in a general plane, `C(d, 2)`.
pub fn secant_plucker_degree(d: i64, g: i64) -> Result<Scalar, CurveError> {
    if d < 3 || g < 0 {
        return Err(CurveError::OutOfRange(format!("degree {d}, genus {g}")));
    }
    let through_point = binom2(d - 1) - g;
    if through_point < 0 {
        return Err(CurveError::GenusTooLarge { d, g });
    }
    Ok(s(through_point + binom2(d)))
}

/// Number of odd theta characteristics on a genus `g` curve,
/// `2^(g-1) (2^g - 1)`.
pub fn odd_theta_count(g: u32) -> Result<Scalar, CurveError> {
    if g < 1 {
        return Err(CurveError::OutOfRange("genus must be at least 1".into()));
    }
    let two = BigInt::from(2);
    let v = num_traits::pow(two.clone(), (g - 1) as usize) * (num_traits::pow(two, g as usize) - BigInt::one());
    Ok(Scalar::from(v))
}

/// Each tangency contact traded for a passage through the double curve
/// doubles the multiplicity: `2^contacts`.
pub fn degeneration_multiplicity(contacts: u32) -> Scalar {
    Scalar::from(num_traits::pow(BigInt::from(2), contacts as usize))
}

/// `total = residual + sum mult_i * deg_i`, with `residual >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionLedger {
    pub total: Scalar,
    pub parts: Vec<(Scalar, Scalar)>,
    pub residual: Scalar,
}

impl DecompositionLedger {
    pub fn new(total: Scalar, parts: Vec<(Scalar, Scalar)>) -> Result<Self, CurveError> {
        let residual = residual_degree(&total, &parts)?;
        Ok(DecompositionLedger { total, parts, residual })
    }

    /// `residual + sum mult_i * deg_i`.
    pub fn recombined(&self) -> Scalar {
        self.parts.iter().map(|(m, d)| m * d).fold(self.residual.clone(), |a, b| a + b)
    }
}

/// `total - sum mult_i * deg_i`; negative residuals are rejected.
pub fn residual_degree(total: &Scalar, parts: &[(Scalar, Scalar)]) -> Result<Scalar, CurveError> {
    let r = parts.iter().fold(total.clone(), |acc, (m, d)| acc - m * d);
    if r.is_negative() {
        return Err(CurveError::NegativeResidual(r.to_string()));
    }
    Ok(r)
}

impl fmt::Display for DecompositionLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.total, self.residual)?;
        for (m, d) in &self.parts {
            write!(f, " + {m}*{d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(d: i64, nodes: i64, cusps: i64) -> PlueckerData {
        PlueckerData {
            degree: Some(s(d)),
            nodes: Some(s(nodes)),
            cusps: Some(s(cusps)),
            ..Default::default()
        }
    }

    fn complete(v: [i64; 7]) -> PlueckerData {
        PlueckerData::from_fields(v.map(|x| Some(s(x))))
    }

    /// Brute force over a box of candidate (m, bitangents, flexes, g).
    fn brute_force(d: i64, nodes: i64, cusps: i64) -> Vec<[i64; 7]> {
        let mut out = Vec::new();
        for m in 0..=60 {
            for flex in 0..=120 {
                for bit in 0..=400 {
                    let g2 = (d - 1) * (d - 2) - 2 * nodes - 2 * cusps;
                    if g2 < 0 || g2 % 2 != 0 {
                        continue;
                    }
                    let g = g2 / 2;
                    let ok = m == d * (d - 1) - 2 * nodes - 3 * cusps
                        && flex == 3 * d * (d - 2) - 6 * nodes - 8 * cusps
                        && d == m * (m - 1) - 2 * bit - 3 * flex
                        && cusps == 3 * m * (m - 2) - 6 * bit - 8 * flex;
                    if ok {
                        out.push([d, m, nodes, cusps, bit, flex, g]);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn plucker_examples_match_brute_force() {
        for (d, nodes, cusps) in [(4, 0, 0), (4, 3, 0), (6, 6, 0)] {
            let brute = brute_force(d, nodes, cusps);
            assert_eq!(brute.len(), 1, "unique solution for {d},{nodes},{cusps}");
            assert_eq!(plucker_solve(&plane(d, nodes, cusps)).unwrap(), complete(brute[0]));
        }
    }

    #[test]
    fn plucker_frozen_values() {
        assert_eq!(plucker_solve(&plane(4, 0, 0)).unwrap(), complete([4, 12, 0, 0, 28, 24, 3]));
        assert_eq!(plucker_solve(&plane(4, 3, 0)).unwrap(), complete([4, 6, 3, 0, 4, 6, 0]));
        assert_eq!(plucker_solve(&plane(6, 6, 0)).unwrap(), complete([6, 18, 6, 0, 96, 36, 4]));
    }

    #[test]
    fn plucker_errors() {
        let under = PlueckerData {
            degree: Some(s(4)),
            ..Default::default()
        };
        assert!(matches!(plucker_solve(&under), Err(CurveError::Underdetermined(_))));
        let mut bad = plane(6, 6, 0);
        bad.bitangents = Some(s(72));
        assert!(matches!(plucker_solve(&bad), Err(CurveError::Inconsistent(_))));
    }

    #[test]
    fn plucker_from_dual_side() {
        // The dual of a smooth quartic: degree 12 with 28 nodes and 24 cusps.
        let dual = PlueckerData {
            degree: Some(s(12)),
            nodes: Some(s(28)),
            cusps: Some(s(24)),
            ..Default::default()
        };
        let solved = plucker_solve(&dual).unwrap();
        assert_eq!(solved.dual(), complete([4, 12, 0, 0, 28, 24, 3]));
    }

    #[test]
    fn hurwitz_examples() {
        assert_eq!(hurwitz_ramification(88, 22, 2).unwrap(), s(90));
        assert_eq!(hurwitz_ramification(13, 4, 2).unwrap(), s(12));
        assert_eq!(hurwitz_ramification(4, 0, 6).unwrap(), s(18));
        assert!(matches!(hurwitz_ramification(0, 1, 2), Err(CurveError::NegativeRamification(_))));
        assert!(hurwitz_ramification(1, 1, 0).is_err());
        for g in 0..20 {
            assert_eq!(hurwitz_ramification(g, g, 1).unwrap(), s(0));
        }
    }

    #[test]
    fn correspondence_examples() {
        assert_eq!(correspondence_coincidences(&s(72), &s(540)).unwrap(), s(612));
        assert_eq!(correspondence_coincidences(&s(0), &s(0)).unwrap(), s(0));
        assert!(correspondence_coincidences(&s(-1), &s(0)).is_err());
    }

    #[test]
    fn salmon_cayley_examples() {
        let sc = |degrees, i12, i13, i23| salmon_cayley(&TripleScrollInput { degrees, i12, i13, i23 });
        let t = sc([1, 6, 18], 0, 0, 36).unwrap();
        assert_eq!(t.degree, s(180));
        assert_eq!(t.multiplicities, [s(72), s(18), s(6)]);
        let q = sc([1, 1, 1], 0, 0, 0).unwrap();
        assert_eq!(q.degree, s(2));
        assert_eq!(q.multiplicities, [s(1), s(1), s(1)]);
        let r = sc([1, 2, 2], 0, 0, 0).unwrap();
        assert_eq!(r.degree, s(8));
        assert_eq!(r.multiplicities, [s(4), s(2), s(2)]);
        assert!(matches!(sc([1, 1, 1], 0, 0, 5), Err(CurveError::InvalidScroll(_))));
        assert!(sc([1, -1, 1], 0, 0, 0).is_err());
    }

    #[test]
    fn secant_examples() {
        assert_eq!(secant_plucker_degree(6, 4).unwrap(), s(21));
        assert_eq!(secant_plucker_degree(3, 0).unwrap(), s(4));
        assert_eq!(secant_plucker_degree(3, 1).unwrap(), s(3));
        assert!(matches!(secant_plucker_degree(3, 2), Err(CurveError::GenusTooLarge { .. })));
        assert!(secant_plucker_degree(2, 0).is_err());
    }

    #[test]
    fn theta_and_multiplicities() {
        assert_eq!(odd_theta_count(4).unwrap(), s(120));
        assert_eq!(odd_theta_count(3).unwrap(), s(28));
        assert_eq!(odd_theta_count(1).unwrap(), s(1));
        assert!(odd_theta_count(0).is_err());
        assert_eq!(degeneration_multiplicity(1), s(2));
        assert_eq!(degeneration_multiplicity(2), s(4));
        assert_eq!(degeneration_multiplicity(3), s(8));
    }

    #[test]
    fn ledgers() {
        let p = |v: &[(i64, i64)]| v.iter().map(|&(m, d)| (s(m), s(d))).collect::<Vec<_>>();
        assert_eq!(residual_degree(&s(624), &p(&[(2, 108), (4, 90), (8, 4)])).unwrap(), s(16));
        assert_eq!(residual_degree(&s(792), &p(&[(1, 612), (4, 18)])).unwrap(), s(108));
        assert_eq!(residual_degree(&s(120), &p(&[(2, 28)])).unwrap(), s(64));
        assert!(matches!(
            residual_degree(&s(10), &p(&[(2, 6)])),
            Err(CurveError::NegativeResidual(_))
        ));
        let ledger = DecompositionLedger::new(s(624), p(&[(2, 108), (4, 90), (8, 4)])).unwrap();
        assert_eq!(ledger.recombined(), s(624));
        assert_eq!(ledger.to_string(), "624 = 16 + 2*108 + 4*90 + 8*4");
    }
}
