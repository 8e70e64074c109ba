use std::fmt::Write;

use super::ast::*;

/// Canonical text of a program: one statement per line, single spaces
/// around `+` and `-` only, minimal parentheses.
pub fn pretty_print(p: &Program) -> String {
    let mut out = String::new();
    for s in &p.statements {
        out.push_str(&print_statement(&s.kind));
        out.push('\n');
    }
    out
}

fn list(names: &[String]) -> String {
    names.join(", ")
}

fn quote(s: &str) -> String {
    format!("\"{s}\"")
}

fn print_statement(s: &StmtKind) -> String {
    match s {
        StmtKind::Let { binder, value } => {
            let b = match binder {
                Binder::Single(n) => n.clone(),
                Binder::Tuple(ns) => format!("({})", list(ns)),
            };
            format!("let {b} = {}", print_expr(value))
        }
        StmtKind::Input { name, value, citation } => {
            format!("input {name} = {} from {}", print_expr(value), quote(citation))
        }
        StmtKind::Unknown { names } => format!("unknown {}", list(names)),
        StmtKind::Grassmannian { name, k, n } => format!("grassmannian {name} = Gr({k}, {n})"),
        StmtKind::Surface { name, basis, items } => {
            let mut parts = vec![list(basis)];
            for item in items {
                parts.push(match item {
                    SurfaceItem::Pairing { a, b, value } => format!("{a}.{b} = {}", print_expr(value)),
                    SurfaceItem::Euler(e) => format!("euler = {}", print_expr(e)),
                    SurfaceItem::Canonical(k) => format!("canonical = {k}"),
                });
            }
            let head = match name {
                Some(n) => format!("surface {n} "),
                None => "surface ".to_string(),
            };
            format!("{head}{{{}}}", parts.join("; "))
        }
        StmtKind::Lattice { name, basis, items } => {
            let mut parts = vec![format!("basis {}", list(basis))];
            for item in items {
                parts.push(match item {
                    LatticeItem::Pairing { a, b, value } => format!("{a}.{b} = {}", print_expr(value)),
                    LatticeItem::Unknown(ns) => format!("unknown {}", list(ns)),
                });
            }
            format!("lattice {name} {{{}}}", parts.join("; "))
        }
        StmtKind::Class { name, value } => format!("class {name} = {}", print_expr(value)),
        StmtKind::Canonical { name, value } => format!("canonical {name} = {}", print_expr(value)),
        StmtKind::Solve { equations } => {
            let eqs: Vec<String> = equations
                .iter()
                .map(|e| format!("{} = {}", print_expr(&e.lhs), print_expr(&e.rhs)))
                .collect();
            format!("solve {{{}}}", eqs.join("; "))
        }
        StmtKind::Assert { lhs, rhs } => format!("assert {} == {}", print_expr(lhs), print_expr(rhs)),
        StmtKind::Note { text } => format!("note {}", quote(text)),
    }
}

const ATOM: u8 = 6;

fn precedence(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Binary { op, .. } => match op {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Dot => 5,
        },
        ExprKind::Neg(_) => 3,
        ExprKind::Pow { .. } => 4,
        _ => ATOM,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    let s = print_expr(e);
    if precedence(e) < min {
        format!("({s})")
    } else {
        s
    }
}

/// Canonical text of one expression.
pub fn print_expr(e: &Expr) -> String {
    match &e.kind {
        ExprKind::Int(n) => n.to_string(),
        ExprKind::Ident(n) => n.clone(),
        ExprKind::Schubert(parts) => {
            let p: Vec<String> = parts.iter().map(u32::to_string).collect();
            format!("s[{}]", p.join(","))
        }
        ExprKind::Neg(inner) => format!("-{}", wrap(inner, 3)),
        ExprKind::Binary { op, lhs, rhs } => {
            let p = precedence(e);
            let (l, r) = if *op == BinOp::Dot {
                (wrap(lhs, p), wrap(rhs, ATOM))
            } else {
                (wrap(lhs, p), wrap(rhs, p + 1))
            };
            match op {
                BinOp::Add | BinOp::Sub => format!("{l} {} {r}", op.symbol()),
                _ => format!("{l}{}{r}", op.symbol()),
            }
        }
        ExprKind::Pow { base, exp } => format!("{}^{exp}", wrap(base, 5)),
        ExprKind::Index { base, key } => {
            let k = match key {
                IndexKey::Position(i) => i.to_string(),
                IndexKey::Field(f) => quote(f),
            };
            format!("{}[{k}]", wrap(base, ATOM))
        }
        ExprKind::Call { name, groups, brace } => {
            let gs: Vec<String> = groups
                .iter()
                .map(|g| {
                    let args: Vec<String> = g
                        .iter()
                        .map(|a| match &a.name {
                            Some(n) => format!("{n} = {}", print_expr(&a.value)),
                            None => print_expr(&a.value),
                        })
                        .collect();
                    args.join(", ")
                })
                .collect();
            if *brace {
                format!("{name}{{{}}}", gs.join("; "))
            } else {
                format!("{name}({})", gs.join("; "))
            }
        }
        ExprKind::Tuple(items) => {
            let mut s = String::from("(");
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                let _ = write!(s, "{}", print_expr(item));
            }
            s.push(')');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn round(src: &str) -> String {
        pretty_print(&parse(src).unwrap())
    }

    #[test]
    fn canonical_single_line() {
        assert_eq!(round("let x = 2 + 3"), "let x = 2 + 3\n");
        assert_eq!(round("let   x=2+3   # c"), "let x = 2 + 3\n");
    }

    #[test]
    fn minimal_parentheses() {
        let src = "unknown a, b\nlet x = (a + b) * (a - (b - 1)) / 2\nlet y = -(a + 1)^2\nlet z = (a.b)^3 - -a";
        let out = round(src);
        assert_eq!(
            out,
            "unknown a, b\nlet x = (a + b)*(a - (b - 1))/2\nlet y = -(a + 1)^2\nlet z = a.b^3 - -a\n"
        );
        assert_eq!(parse(&out).unwrap(), parse(src).unwrap());
    }

    #[test]
    fn blocks_round_trip() {
        let src = "surface {H, K; H.H=6, H.K=0\n K.K=0; euler=24}\nlattice T' {basis l,F; l.F=1; unknown y; l.l=y}\n\
                   solve {l.l = -9}\nlet (a, b, c, d) = salmon_cayley(1,6,18;0,0,36)\nlet p = pluecker{d=6,nodes=6}[\"bitangents\"]\n\
                   input w = 72 from \"a table\"\nnote \"done\"";
        let out = round(src);
        assert_eq!(parse(&out).unwrap(), parse(src).unwrap());
        assert_eq!(round(&out), out);
        assert!(out.contains("surface {H, K; H.H = 6; H.K = 0; K.K = 0; euler = 24}"));
    }
}
