//! Independent oracles shared by the property tests and the acceptance run.
#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use chowkit_core::grassmann::{GrassmannContext, SchubertElement};
use chowkit_core::lattice::{adjunction_genus, genus_additivity, ClassExpr, LinExpr, RuledLattice};
use chowkit_core::surface::{BundleSpec, ChernPolynomial, SurfaceClass, SurfaceRing, ZeroCycle};
use chowkit_core::worksheet::ast::*;
use chowkit_core::{Partition, Scalar};
use proptest::prelude::*;

pub fn s(v: i64) -> Scalar {
    Scalar::from(v)
}

pub fn worksheet_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../worksheets")
        .join(format!("{name}.ws"))
}

pub fn read_worksheet(name: &str) -> String {
    std::fs::read_to_string(worksheet_path(name)).expect("shipped worksheet")
}

pub const SHIPPED: [&str; 6] = [
    "g24_schubert",
    "tau_k3",
    "theta_counts",
    "step1_bitangents",
    "step2_secants",
    "final_degree",
];

// ---------------------------------------------------------------- Schubert

pub fn contexts() -> Vec<GrassmannContext> {
    [(1, 3), (2, 4), (2, 5), (3, 5), (3, 6), (2, 6)]
        .iter()
        .map(|&(k, n)| GrassmannContext::new(k, n).unwrap())
        .collect()
}

pub fn all_partitions(ctx: GrassmannContext) -> Vec<Partition> {
    (0..=ctx.dim())
        .flat_map(|w| Partition::all_in_box(ctx.rows(), ctx.cols(), w))
        .collect()
}

/// `sum c_i s[lambda_i]` from indices into [`all_partitions`].
pub fn element(ctx: GrassmannContext, terms: &[(usize, i64)]) -> SchubertElement {
    let parts = all_partitions(ctx);
    terms.iter().fold(SchubertElement::zero(ctx), |acc, &(i, c)| {
        let e = SchubertElement::schubert(ctx, parts[i % parts.len()].clone()).scale(&s(c));
        acc.checked_add(&e).unwrap()
    })
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, sign) in permutations(n - 1) {
        // Insert n-1 at each position; moving it left past j entries flips
        // the sign j times.
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            let flips = (p.len() - pos) as i64;
            out.push((q, if flips % 2 == 0 { sign } else { -sign }));
        }
    }
    out
}

/// `s[lambda] * target` computed from the Jacobi–Trudi determinant
/// `det(s[lambda_i + j - i])`, applying each special class with Pieri's rule
/// only. Independent of the Littlewood–Richardson code.
pub fn jacobi_trudi_product(lambda: &Partition, target: &SchubertElement) -> SchubertElement {
    let l = lambda.len();
    let mut total = SchubertElement::zero(target.context());
    for (perm, sign) in permutations(l) {
        let mut acc = target.clone();
        let mut dead = false;
        for (i, &j) in perm.iter().enumerate() {
            let a = i64::from(lambda.part(i)) + j as i64 - i as i64;
            if a < 0 {
                dead = true;
                break;
            }
            if a > 0 {
                acc = acc.pieri(a as u32);
            }
        }
        if !dead {
            total = total.checked_add(&acc.scale(&s(sign))).unwrap();
        }
    }
    total
}

/// Sparse element: (index into `all_partitions`, coefficient) pairs.
pub type Terms = Vec<(usize, i64)>;

pub fn schubert_strategy() -> impl Strategy<Value = (usize, Terms, Terms, Terms)> {
    let terms = || prop::collection::vec((0usize..64, -4i64..5), 0..4);
    (0usize..6, terms(), terms(), terms())
}

// ---------------------------------------------------------------- surfaces

/// Coefficients `(A, B)` with `e2(roots of Sym^n) = A (a^2 + b^2) + B ab`,
/// summed directly over pairs of roots `i a + (n - i) b`.
pub fn sym_power_e2(n: i64) -> (i64, i64) {
    let mut aa = 0;
    let mut ab = 0;
    let mut bb = 0;
    for i in 0..=n {
        for j in (i + 1)..=n {
            aa += i * j;
            ab += i * (n - j) + j * (n - i);
            bb += (n - i) * (n - j);
        }
    }
    assert_eq!(aa, bb, "symmetric in the roots");
    (aa, ab)
}

/// A symbolic two-divisor ring `D, E`.
pub fn symbolic_ring() -> Arc<SurfaceRing> {
    SurfaceRing::symbolic(["D", "E"])
}

/// Rank `r` bundle with `c1 = x D + y E`, `c2 = u D.D + v D.E + w E.E + z e`.
pub fn bundle(ring: &Arc<SurfaceRing>, r: u32, c: [i64; 6]) -> BundleSpec {
    let [x, y, u, v, w, z] = c;
    let d = ring.divisor("D").unwrap();
    let e = ring.divisor("E").unwrap();
    let c1 = d.scale(&s(x)).add(&e.scale(&s(y))).unwrap();
    let c2 = d
        .ring_product(&d)
        .unwrap()
        .scale(&s(u))
        .add(&d.ring_product(&e).unwrap().scale(&s(v)))
        .unwrap()
        .add(&e.ring_product(&e).unwrap().scale(&s(w)))
        .unwrap()
        .add(&ring.zero_cycle(ZeroCycle::symbol("e")).scale(&s(z)))
        .unwrap();
    BundleSpec::new(r, ChernPolynomial::new(&c1, &c2).unwrap())
}

/// Splitting-principle prediction for `c(Sym^n E)` of a rank 2 bundle.
pub fn sym_power_oracle(e: &BundleSpec, n: u32) -> (SurfaceClass, SurfaceClass) {
    let n = i64::from(n);
    let (a, b) = sym_power_e2(n);
    let c1 = e.c1();
    let c2 = e.c2();
    let t: i64 = (0..=n).map(|i| i + (n - i)).sum::<i64>() / 2;
    // a^2 + b^2 = c1^2 - 2 c2, ab = c2.
    let sq = c1.ring_product(&c1).unwrap();
    let pred_c2 = sq.scale(&s(a)).add(&c2.scale(&s(b - 2 * a))).unwrap();
    (c1.scale(&s(t)), pred_c2)
}

// ---------------------------------------------------------------- lattices

/// Random lattice with even diagonal and an even canonical class, so every
/// arithmetic genus is integral.
pub fn even_lattice(gram: &[i64; 6], k: &[i64; 3]) -> (Arc<RuledLattice>, ClassExpr) {
    let names = ["a", "b", "c"];
    let mut lat = RuledLattice::new("R", names);
    let entries = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
    for ((i, j), g) in entries.iter().zip(gram) {
        let g = if i == j { 2 * g } else { *g };
        lat.declare(names[*i], names[*j], LinExpr::constant(g)).unwrap();
    }
    let lat = Arc::new(lat);
    let canonical = class(&lat, &k.map(|x| 2 * x));
    (lat, canonical)
}

pub fn class(lat: &Arc<RuledLattice>, c: &[i64; 3]) -> ClassExpr {
    ["a", "b", "c"]
        .iter()
        .zip(c)
        .fold(lat.zero(), |acc, (n, x)| acc.add(&lat.class(n).unwrap().scale(&s(*x))).unwrap())
}

/// `p(C1 + C2)` against `p(C1) + p(C2) + C1.C2 - 1`, with genera from adjunction.
pub fn additivity_holds(gram: &[i64; 6], k: &[i64; 3], c1: &[i64; 3], c2: &[i64; 3]) -> bool {
    let (lat, canonical) = even_lattice(gram, k);
    let x = class(&lat, c1);
    let y = class(&lat, c2);
    let known = Default::default();
    let p1 = adjunction_genus(&x, &canonical, &known).unwrap();
    let p2 = adjunction_genus(&y, &canonical, &known).unwrap();
    let p12 = adjunction_genus(&x.add(&y).unwrap(), &canonical, &known).unwrap();
    let inter = x.intersect(&y, &known).unwrap().to_scalar().unwrap();
    p12 == genus_additivity(&p1, &p2, &inter)
}

// ---------------------------------------------------------------- curves

/// Odd theta characteristics by brute force: pairs `(a, b)` of vectors in
/// `F_2^g` with `a.b = 1`.
pub fn odd_theta_brute(g: u32) -> u64 {
    let n = 1u32 << g;
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            if (a & b).count_ones() % 2 == 1 {
                count += 1;
            }
        }
    }
    count
}

// ---------------------------------------------------------------- worksheets

const NAMES: [&str; 4] = ["a", "b", "c", "d"];

fn ident() -> impl Strategy<Value = String> {
    prop::sample::select(NAMES.to_vec()).prop_map(str::to_string)
}

fn mk(kind: ExprKind) -> Expr {
    Expr::new(kind, Span::default())
}

pub fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..500).prop_map(|n| mk(ExprKind::Int(n.into()))),
        ident().prop_map(|n| mk(ExprKind::Ident(n))),
        prop::collection::vec(0u32..4, 0..3).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            mk(ExprKind::Schubert(v))
        }),
    ];
    leaf.prop_recursive(4, 32, 4, |inner| {
        let op = prop::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Dot]);
        let func = prop::sample::select(vec!["hurwitz", "integrate", "pluecker", "residual", "genus"]);
        let arg = (prop::option::of(prop::sample::select(vec!["d", "nodes"])), inner.clone())
            .prop_map(|(name, value)| Arg {
                name: name.map(str::to_string),
                value,
            });
        prop_oneof![
            inner.clone().prop_map(|e| mk(ExprKind::Neg(Box::new(e)))),
            (op, inner.clone(), inner.clone()).prop_map(|(op, l, r)| mk(ExprKind::Binary {
                op,
                lhs: Box::new(l),
                rhs: Box::new(r)
            })),
            (inner.clone(), 0u32..4).prop_map(|(b, exp)| mk(ExprKind::Pow { base: Box::new(b), exp })),
            (inner.clone(), prop_oneof![
                (0usize..3).prop_map(IndexKey::Position),
                Just(IndexKey::Field("bitangents".into()))
            ])
                .prop_map(|(b, key)| mk(ExprKind::Index { base: Box::new(b), key })),
            (func, prop::collection::vec(prop::collection::vec(arg, 1..3), 1..3), any::<bool>()).prop_map(
                |(name, mut groups, brace)| {
                    if brace {
                        groups.truncate(1);
                    }
                    mk(ExprKind::Call {
                        name: name.to_string(),
                        groups,
                        brace,
                    })
                }
            ),
            prop::collection::vec(inner, 2..4).prop_map(|items| mk(ExprKind::Tuple(items))),
        ]
    })
}

fn stmt(kind: StmtKind) -> Statement {
    Statement {
        kind,
        span: Span::default(),
    }
}

/// Programs that declare `a..d` up front, then bind, assert and solve.
pub fn program_strategy() -> impl Strategy<Value = Program> {
    let body = prop_oneof![
        expr_strategy().prop_map(|value| StmtKind::Let {
            binder: Binder::Single(String::new()),
            value
        }),
        (expr_strategy(), expr_strategy()).prop_map(|(lhs, rhs)| StmtKind::Assert { lhs, rhs }),
        prop::collection::vec((expr_strategy(), expr_strategy()), 1..3).prop_map(|eqs| StmtKind::Solve {
            equations: eqs
                .into_iter()
                .map(|(lhs, rhs)| Equation {
                    lhs,
                    rhs,
                    span: Span::default()
                })
                .collect()
        }),
        "[a-z ]{0,12}".prop_map(|text| StmtKind::Note { text }),
    ];
    prop::collection::vec(body, 0..6).prop_map(|kinds| {
        let mut statements = vec![stmt(StmtKind::Unknown {
            names: NAMES.iter().map(|n| n.to_string()).collect(),
        })];
        for (i, mut k) in kinds.into_iter().enumerate() {
            if let StmtKind::Let { binder, .. } = &mut k {
                *binder = Binder::Single(format!("v{i}"));
            }
            statements.push(stmt(k));
        }
        Program { statements }
    })
}
