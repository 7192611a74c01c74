use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cpq_slices::abgroup::FinAbGroup;
use cpq_slices::cohomology::point_cohomology;
use cpq_slices::group::GroupPQ;
use cpq_slices::mackey::{Edge, Orbit, PqMackey};
use cpq_slices::reps::{ParseError, Quadruple};
use cpq_slices::ring::{self, phi_sweep, DegreeBox, RODegree};
use cpq_slices::slice::{build_tower, tower_sweep};

#[derive(Parser)]
#[command(
    name = "slicecalc",
    version,
    about = "Bredon cohomology, the positive-cone ring and slice towers for C_pq"
)]
struct Cli {
    /// The smaller odd prime.
    #[arg(short, long, global = true, default_value_t = 3)]
    p: u64,
    /// The larger odd prime.
    #[arg(short, long, global = true, default_value_t = 5)]
    q: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// H^α_G(S^0; Z) as a Mackey functor, e.g. "xi - xi_p".
    Cohomology {
        #[arg(allow_hyphen_values = true)]
        rep: String,
    },
    /// Normal-form basis of the ring in degree "m,n,l,a".
    RingBasis { degree: String },
    /// Normalize a ring expression, e.g. "u_xi * a_xip".
    RingMul {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Slice tower of S^α ∧ HZ.
    SliceTower {
        #[arg(allow_hyphen_values = true)]
        rep: String,
    },
    /// Run the ring/table sweep and the tower sweep.
    Verify {
        /// Degree box "M,N,L,A": 0 ≤ m ≤ M, ..., 0 ≤ a ≤ A.
        #[arg(long = "box", value_name = "M,N,L,A", default_value = "4,4,4,15")]
        degree_box: String,
        /// Largest coefficient in the tower sweep.
        #[arg(long, value_name = "MAX", default_value_t = 3)]
        towers: i64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn parse(text: &str, e: ParseError) -> Self {
        let caret = " ".repeat(e.position);
        Failure::input(format!("{e}\n  {text}\n  {caret}^"))
    }
}

fn payload(arg: &str) -> Result<String, Failure> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut buf = String::new();
    io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Failure::input(format!("reading stdin: {e}")))?;
    Ok(buf.trim().to_string())
}

fn parse_ints<const N: usize>(text: &str, what: &str) -> Result<[i64; N], Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || {
        Failure::input(format!(
            "expected {what} as {N} comma-separated integers, got {text:?}"
        ))
    };
    if parts.len() != N {
        return Err(bad());
    }
    let mut out = [0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| bad())?;
    }
    Ok(out)
}

fn latex_document(body: &str) -> String {
    format!("\\documentclass{{article}}\n\\usepackage{{amsmath,amssymb}}\n\\begin{{document}}\n{body}\n\\end{{document}}\n")
}

fn latex_group(orders: &[u64]) -> String {
    if orders.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = orders
        .iter()
        .map(|&o| {
            if o == 0 {
                r"\mathbb{Z}".to_string()
            } else {
                format!(r"\mathbb{{Z}}/{o}")
            }
        })
        .collect();
    parts.join(r" \oplus ")
}

fn latex_fin_ab(g: &FinAbGroup) -> String {
    latex_group(g.invariant_factors())
}

fn latex_matrix(m: &cpq_slices::linalg::Matrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return "0".into();
    }
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(" & ")
        })
        .collect();
    format!(r"\begin{{pmatrix}} {} \end{{pmatrix}}", rows.join(r" \\ "))
}

fn latex_functor(m: &PqMackey) -> String {
    let mut rows: Vec<String> = Orbit::ALL
        .iter()
        .map(|&o| {
            format!(
                r"\text{{{}}} & {}",
                o.label(),
                latex_group(m.value(o).orders())
            )
        })
        .collect();
    for e in Edge::ALL {
        if m.value(e.upper()).is_empty() || m.value(e.lower()).is_empty() {
            continue;
        }
        rows.push(format!(
            r"\text{{{}}} & \mathrm{{res}} = {},\ \mathrm{{tr}} = {}",
            e.label().replace("->", r"\to "),
            latex_matrix(m.res(e)),
            latex_matrix(m.tr(e))
        ));
    }
    format!(
        "\\[\n\\begin{{array}}{{ll}}\n{}\n\\end{{array}}\n\\]",
        rows.join(" \\\\\n")
    )
}

fn cohomology(g: GroupPQ, rep: &str, format: Format) -> Result<String, Failure> {
    let alpha = Quadruple::parse(rep, g).map_err(|e| Failure::parse(rep, e))?;
    let ans = point_cohomology(alpha, g);
    let inv = alpha.invariants();
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&ans.to_json(alpha)).unwrap(),
        Format::Text => format!(
            "α = {}  (|α| = {}, |α^C_p| = {}, |α^C_q| = {}) over {g}\nrow {}: {}\n{}",
            alpha.pretty(),
            inv.dim,
            inv.fixed_p,
            inv.fixed_q,
            ans.row,
            ans.functor_name.label(),
            ans.functor
        )
        .trim_end()
        .to_string(),
        Format::Latex => latex_document(&format!(
            "$\\underline{{H}}^{{{}}}_{{C_{{{}}}}}(S^0;\\underline{{\\mathbb{{Z}}}}) \\cong \\mathrm{{{}}}$ (row {}).\n{}",
            alpha.latex(),
            g.order(),
            ans.functor_name.label().replace('⊕', r"\oplus ").replace('_', r"\_"),
            ans.row,
            latex_functor(&ans.functor)
        )),
    })
}

fn ring_basis(g: GroupPQ, degree: &str, format: Format) -> Result<String, Failure> {
    let [m, n, l, a] = parse_ints::<4>(degree, "a degree m,n,l,a")?;
    let d = RODegree::new(m, n, l, a);
    let basis = ring::basis_of_degree(d, g);
    let group = ring::group_of_degree(d, g);
    Ok(match format {
        Format::Json => {
            let basis: Vec<_> = basis
                .iter()
                .map(|(mono, ord)| json!({"monomial": mono.to_string(), "exponents": mono.0, "order": ord}))
                .collect();
            let v = json!({"degree": d, "basis": basis, "group": group.to_string(), "invariant_factors": group.invariant_factors()});
            serde_json::to_string_pretty(&v).unwrap()
        }
        Format::Text => {
            let mut out = format!(
                "degree {d} = {} over {g}: {group}",
                d.to_quadruple().pretty()
            );
            for (mono, ord) in &basis {
                let ord = if *ord == 0 {
                    "Z".to_string()
                } else {
                    format!("Z/{ord}")
                };
                out.push_str(&format!("\n  {mono}  {ord}"));
            }
            out
        }
        Format::Latex => {
            let rows: Vec<String> = basis
                .iter()
                .map(|(mono, ord)| {
                    let e = ring::RingElement::term(*mono, 1, g);
                    format!("{} & {}", e.latex(), latex_group(&[*ord]))
                })
                .collect();
            latex_document(&format!(
                "Degree ${}$, group ${}$.\n\\[\n\\begin{{array}}{{ll}}\n{}\n\\end{{array}}\n\\]",
                d.to_quadruple().latex(),
                latex_fin_ab(&group),
                rows.join(" \\\\\n")
            ))
        }
    })
}

fn ring_mul(g: GroupPQ, expr: &str, format: Format) -> Result<String, Failure> {
    let e = ring::parse_element(expr, g).map_err(|err| Failure::parse(expr, err))?;
    Ok(match format {
        Format::Json => {
            let mut v = e.to_json();
            v["degree"] = serde_json::to_value(e.degree()).unwrap();
            serde_json::to_string_pretty(&v).unwrap()
        }
        Format::Text => e.to_string(),
        Format::Latex => latex_document(&format!("\\[ {} \\]", e.latex())),
    })
}

fn slice_tower(g: GroupPQ, rep: &str, format: Format) -> Result<String, Failure> {
    let alpha = Quadruple::parse(rep, g).map_err(|e| Failure::parse(rep, e))?;
    let t = build_tower(alpha, g);
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&t.to_json()).unwrap(),
        Format::Text => t.to_string().trim_end().to_string(),
        Format::Latex => t.latex(),
    })
}

fn verify(
    g: GroupPQ,
    degree_box: &str,
    towers: i64,
    format: Format,
) -> Result<(String, bool), Failure> {
    let [m, n, l, a] = parse_ints::<4>(degree_box, "a box M,N,L,A")?;
    if [m, n, l, a, towers].iter().any(|&x| x < 0) {
        return Err(Failure::input("sweep bounds must be nonnegative"));
    }
    let phi = phi_sweep(DegreeBox::new(m, n, l, a).degrees(), g);
    let tw = tower_sweep(towers, &[g]);
    let ok = phi.all_match() && tw.all_pass();
    let out = match format {
        Format::Json => {
            serde_json::to_string_pretty(&json!({"ok": ok, "phi": phi, "towers": tw})).unwrap()
        }
        Format::Text | Format::Latex => {
            let mut s = format!(
                "ring/table sweep over {g}: {} degrees, {} mismatches\ntower sweep: {} representations, {} failures",
                phi.checked,
                phi.mismatches.len(),
                tw.checked,
                tw.failures.len()
            );
            for mm in &phi.mismatches {
                s.push_str(&format!(
                    "\n  {}: ring {}, oracle {}, table {}",
                    mm.degree, mm.ring, mm.oracle, mm.table
                ));
            }
            for f in &tw.failures {
                s.push_str(&format!("\n  {f}"));
            }
            s.push_str(if ok { "\nall match" } else { "\nMISMATCH" });
            if format == Format::Latex {
                latex_document(&format!("\\begin{{verbatim}}\n{s}\n\\end{{verbatim}}"))
            } else {
                s
            }
        }
    };
    Ok((out, ok))
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    let g = GroupPQ::new(cli.p, cli.q).map_err(|e| Failure::input(e.to_string()))?;
    let f = cli.format;
    match cli.command {
        Command::Cohomology { rep } => cohomology(g, &payload(&rep)?, f).map(|s| (s, true)),
        Command::RingBasis { degree } => ring_basis(g, &payload(&degree)?, f).map(|s| (s, true)),
        Command::RingMul { expr } => ring_mul(g, &payload(&expr)?, f).map(|s| (s, true)),
        Command::SliceTower { rep } => slice_tower(g, &payload(&rep)?, f).map(|s| (s, true)),
        Command::Verify { degree_box, towers } => verify(g, &degree_box, towers, f),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, ok)) => {
            // a closed pipe downstream is not an error worth reporting
            let _ = writeln!(io::stdout().lock(), "{}", out.trim_end());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
