//! `chowkit`: run worksheets and evaluate single formulas exactly.
//!
//! Exit codes: 0 on success, 1 when an assertion fails under `--strict`,
//! 2 on unreadable files, parse errors and runtime errors.

use std::path::PathBuf;
use std::process::ExitCode;

use chowkit_core::worksheet::{evaluate_named, parse, EvaluationReport, WorksheetError};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "chowkit", version, about = "Exact enumerative-geometry worksheets and formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Worksheet files.
    #[command(subcommand)]
    Worksheet(WorksheetCmd),
    /// Schubert calculus on a Grassmannian Gr(k, n).
    #[command(subcommand)]
    Schubert(SchubertCmd),
    /// Chern classes on surfaces.
    #[command(subcommand)]
    Chern(ChernCmd),
    /// Classical curve formulas.
    Curve {
        /// One of: odd_theta, hurwitz, correspondence, salmon_cayley, secant,
        /// pluecker, multiplicity, residual.
        formula: String,
        /// Formula arguments; an argument ending in `;` closes a group.
        /// `pluecker` takes `field=value`, `residual` takes a total followed
        /// by `mult*degree` parts.
        #[arg(allow_hyphen_values = true)]
        args: Vec<String>,
    },
}

#[derive(Subcommand)]
enum WorksheetCmd {
    /// Evaluate worksheets and print their reports in argument order.
    Run {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Exit with status 1 if any assertion fails.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Subcommand)]
enum SchubertCmd {
    /// Plücker degree of a cycle of the given dimension.
    Pdeg {
        #[arg(long, value_parser = parse_gr)]
        gr: (u32, u32),
        expr: String,
        dim: u32,
    },
    /// Product of two classes.
    Mult {
        #[arg(long, value_parser = parse_gr)]
        gr: (u32, u32),
        left: String,
        right: String,
    },
    /// Degree (coefficient of the point class).
    Integrate {
        #[arg(long, value_parser = parse_gr)]
        gr: (u32, u32),
        expr: String,
    },
}

#[derive(Subcommand)]
enum ChernCmd {
    /// Triple-point count 5K^2 + 20H.K + 15H^2 + 5e.
    Tau {
        #[arg(allow_hyphen_values = true)]
        h2: String,
        #[arg(allow_hyphen_values = true)]
        hk: String,
        #[arg(allow_hyphen_values = true)]
        k2: String,
        #[arg(allow_hyphen_values = true)]
        euler: String,
    },
    /// Chern classes of the jet bundle J^n(H) on a surface with classes H, K.
    /// Without numerical data the result is symbolic in H.H, H.K, K.K and e.
    Jet {
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        h2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        hk: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        k2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        euler: Option<String>,
    },
}

fn parse_gr(s: &str) -> Result<(u32, u32), String> {
    let (k, n) = s.split_once(',').ok_or("expected k,n")?;
    let k = k.trim().parse().map_err(|_| format!("bad k in {s:?}"))?;
    let n = n.trim().parse().map_err(|_| format!("bad n in {s:?}"))?;
    Ok((k, n))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Worksheet(WorksheetCmd::Run { files, json, strict }) => run_worksheets(&files, json, strict),
        Command::Schubert(cmd) => {
            let (gr, body) = match cmd {
                SchubertCmd::Pdeg { gr, expr, dim } => (gr, format!("pdeg({expr}, {dim})")),
                SchubertCmd::Mult { gr, left, right } => (gr, format!("({left}) * ({right})")),
                SchubertCmd::Integrate { gr, expr } => (gr, format!("integrate({expr})")),
            };
            let header = format!("grassmannian G = Gr({}, {})", gr.0, gr.1);
            print_expression(&[&header], &body).finish()
        }
        Command::Chern(ChernCmd::Tau { h2, hk, k2, euler }) => {
            print_expression(&[], &format!("tau({h2}, {hk}, {k2}, {euler})")).finish()
        }
        Command::Chern(ChernCmd::Jet { n, h2, hk, k2, euler }) => {
            let mut items = vec!["H, K".to_string()];
            for (key, v) in [("H.H", h2), ("H.K", hk), ("K.K", k2), ("euler", euler)] {
                if let Some(v) = v {
                    items.push(format!("{key} = {v}"));
                }
            }
            let surface = format!("surface {{{}}}", items.join("; "));
            let jet = format!("let J = jet(H, {n})");
            print_expression(&[&surface, &jet], "(c1(J), c2(J), deg(c2(J)))")
                .or_else_symbolic(&[&surface, &jet], "(c1(J), c2(J))")
        }
        Command::Curve { formula, args } => match curve_expression(&formula, &args) {
            Ok(body) => print_expression(&[], &body).finish(),
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        },
    }
}

/// Result of a one-off evaluation, so a numeric attempt can fall back to a
/// symbolic one.
struct Outcome(Result<String, String>);

impl Outcome {
    fn or_else_symbolic(self, header: &[&str], body: &str) -> ExitCode {
        match self.0 {
            Ok(v) => {
                println!("{v}");
                ExitCode::SUCCESS
            }
            Err(_) => print_expression(header, body).finish(),
        }
    }

    fn finish(self) -> ExitCode {
        match self.0 {
            Ok(v) => {
                println!("{v}");
                ExitCode::SUCCESS
            }
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        }
    }
}

/// Evaluates `body` after the `header` statements and returns its value.
fn print_expression(header: &[&str], body: &str) -> Outcome {
    if header.iter().chain([&body]).any(|s| s.contains('\n')) {
        return Outcome(Err("arguments must not contain line breaks".into()));
    }
    let mut src: Vec<String> = header.iter().map(|s| s.to_string()).collect();
    src.push(format!("let result = {body}"));
    let outcome = parse(&src.join("\n"))
        .and_then(|p| evaluate_named(&p, "<command line>"))
        .map_err(|e| strip_position(&e))
        .and_then(|r| r.binding("result").map(str::to_string).ok_or_else(|| "no result".to_string()));
    Outcome(outcome)
}

/// Positions refer to the generated program, which the user never sees.
fn strip_position(e: &WorksheetError) -> String {
    let text = e.to_string();
    match text.split_once(": ") {
        Some((pos, rest)) if pos.chars().all(|c| c.is_ascii_digit() || c == ':') => rest.to_string(),
        _ => text,
    }
}

/// Joins arguments with commas; an argument ending in `;` closes a group.
fn join_args(args: &[String]) -> String {
    let mut out = String::new();
    for (i, a) in args.iter().enumerate() {
        if i > 0 && !out.ends_with("; ") {
            out.push_str(", ");
        }
        match a.strip_suffix(';') {
            Some(head) if !head.is_empty() => {
                out.push_str(head);
                out.push_str("; ");
            }
            Some(_) => {
                if out.ends_with(", ") {
                    out.truncate(out.len() - 2);
                }
                out.push_str("; ");
            }
            None => out.push_str(a),
        }
    }
    out.trim_end_matches("; ").to_string()
}

fn curve_expression(formula: &str, args: &[String]) -> Result<String, String> {
    let joined = join_args(args);
    Ok(match formula {
        // Six bare numbers: three degrees, then the three meeting counts.
        "salmon_cayley" if args.len() == 6 && !joined.contains(';') => {
            format!("salmon_cayley({}; {})", args[..3].join(", "), args[3..].join(", "))
        }
        "odd_theta" | "hurwitz" | "correspondence" | "salmon_cayley" | "multiplicity" => {
            format!("{formula}({joined})")
        }
        "secant" => format!("secant_degree({joined})"),
        "pluecker" => format!("pluecker{{{joined}}}"),
        "residual" => {
            let (total, parts) = args.split_first().ok_or("residual needs a total")?;
            format!("residual({total}; {})", parts.join(", "))
        }
        other => return Err(format!("unknown formula {other:?}")),
    })
}

enum FileOutcome {
    Report(EvaluationReport),
    Error(String),
}

fn run_file(path: &PathBuf) -> FileOutcome {
    let name = path.display().to_string();
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return FileOutcome::Error(format!("{name}: cannot read file: {e}")),
    };
    match parse(&text).and_then(|p| evaluate_named(&p, &name)) {
        Ok(r) => FileOutcome::Report(r),
        Err(e) => FileOutcome::Error(format!("{name}:{e}")),
    }
}

fn run_worksheets(files: &[PathBuf], json: bool, strict: bool) -> ExitCode {
    // Worksheets share no state, so they are evaluated concurrently; output
    // follows argument order.
    let outcomes: Vec<FileOutcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = files.iter().map(|f| scope.spawn(move || run_file(f))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| FileOutcome::Error("evaluation panicked".into())))
            .collect()
    });

    let mut errors = false;
    let mut failures = 0;
    let mut reports = Vec::new();
    for o in outcomes {
        match o {
            FileOutcome::Report(r) => {
                failures += r.failures();
                if !json {
                    println!("{r}");
                }
                reports.push(r);
            }
            FileOutcome::Error(msg) => {
                errors = true;
                eprintln!("error: {msg}");
            }
        }
    }
    if json {
        let doc = if files.len() == 1 {
            reports.first().map(EvaluationReport::to_json)
        } else {
            let docs: Vec<String> = reports.iter().map(EvaluationReport::to_json).collect();
            Some(format!("[{}]", docs.join(",\n")))
        };
        if let Some(doc) = doc {
            println!("{doc}");
        }
    }
    if failures > 0 {
        eprintln!("{failures} assertion(s) failed");
    }
    if errors {
        ExitCode::from(2)
    } else if strict && failures > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
