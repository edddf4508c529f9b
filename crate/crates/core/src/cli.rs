//! Command line front end. `run` takes the argument list and returns the exit status
//! with everything that should go to stdout.
//!
//! Exit status: 0 on success, 1 when an invariant is falsified, 2 on invalid input.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::blocks::{block_report, require_generic, semisimplicity_report};
use crate::coeff::LaurentScalar;
use crate::combin::{in_sigma_plus, sigma_plus, Partition};
use crate::error::{Error, Result};
use crate::linalg::{rank, Matrix};
use crate::pqbrauer::mbasis::MBasis;
use crate::pqbrauer::standard::StandardBasis;
use crate::pqbrauer::{check_gens, parse_gens, to_m_coords, AlgebraElement, Gen};
use crate::repmod::{branching_filtration, gram_matrix, jm_action, StandardModule};
use crate::tanglecat::{hom_basis, normal_form, Morphism, TangleWord};
use crate::verify::{run_selected, SuiteOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisKind {
    /// Normal diagrams of Hom(m, s).
    Diagram,
    /// The basis sigma(T_d) E^f T_w T_v of B_{q,l}.
    M,
    /// The standard basis of B_{q,l}.
    Standard,
}

#[derive(Debug, Parser)]
#[command(name = "pqb", about = "Periplectic q-Brauer category and algebras, exactly")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Dimension of Hom(m, s).
    Dims { m: usize, s: usize },
    /// List a basis: diagrams of Hom(m, s), or a basis of B_{q,l}.
    Basis {
        m: Option<usize>,
        s: Option<usize>,
        #[arg(short)]
        l: Option<usize>,
        #[arg(long, value_enum)]
        kind: Option<BasisKind>,
    },
    /// Product of two generator words in B_{q,l}, e.g. "E1 E2 E1" and "".
    Mult {
        #[arg(short)]
        l: usize,
        a: String,
        b: String,
    },
    /// Normal form of a diagram word such as "A 1 ; U 2".
    NormalForm {
        word: String,
        #[arg(long)]
        source: Option<usize>,
    },
    /// Matrix of right multiplication by a generator word on C(lambda).
    Module {
        #[arg(short)]
        l: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "")]
        gen: String,
    },
    /// Jucys-Murphy matrices on C(lambda) (all labels by default) with verdicts.
    Jm {
        #[arg(short)]
        l: usize,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Branching filtration of C(lambda) restricted to B_{q,l-1}.
    Branch {
        #[arg(short)]
        l: usize,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Gram matrix of C(lambda), or a table of radical ranks.
    Gram {
        #[arg(short)]
        l: usize,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Blocks of B_{q,l} and their cross-checks.
    Blocks {
        #[arg(short)]
        l: usize,
        /// Quantum characteristic; only generic q is supported.
        #[arg(long)]
        e: Option<usize>,
    },
    /// Run the invariant suite up to degree l.
    Verify {
        #[arg(short, default_value_t = 6)]
        l: usize,
        /// Oracle rank for the random word sweep.
        #[arg(short, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Only checks whose name starts with this prefix.
        #[arg(long)]
        only: Option<String>,
    },
}

/// What a command produced, in all three formats.
struct Output {
    text: String,
    json: Value,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    status: i32,
}

impl Output {
    fn new(text: String, json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Output {
        Output {
            text,
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
            status: 0,
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("csv");
                for r in &self.rows {
                    w.write_record(r).expect("csv");
                }
                String::from_utf8(w.into_inner().expect("csv")).expect("utf8")
            }
        }
    }
}

/// Single-dash long options (`-lambda`) are accepted as written in older scripts.
fn normalize_args(args: Vec<String>) -> Vec<String> {
    args.into_iter()
        .map(|a| match a.as_str() {
            "-lambda" | "-gen" | "-format" | "-kind" | "-source" | "-seed" | "-only" => format!("-{a}"),
            _ => a,
        })
        .collect()
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Falsified(_) | Error::Arithmetic(_) => 1,
        Error::Parse(_) | Error::InvalidInput(_) | Error::Unsupported(_) => 2,
    }
}

/// Runs the command line `args` (program name first). Returns exit status, stdout and
/// stderr.
pub fn run(args: Vec<String>) -> (i32, String, String) {
    let cli = match Cli::try_parse_from(normalize_args(args)) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    match execute(&cli.cmd) {
        Ok(out) => (out.status, out.render(cli.format), String::new()),
        Err(e) => (exit_code(&e), String::new(), format!("error: {e}\n")),
    }
}

fn parse_label(s: &str, l: usize) -> Result<Partition> {
    let p: Partition = s.parse()?;
    if !in_sigma_plus(&p, l) {
        return Err(Error::InvalidInput(format!("{p} is not a label of degree {l}")));
    }
    Ok(p)
}

fn labels(lambda: &Option<String>, l: usize) -> Result<Vec<Partition>> {
    match lambda {
        Some(s) => Ok(vec![parse_label(s, l)?]),
        None => Ok(sigma_plus(l)),
    }
}

fn word_text(gens: &[Gen]) -> String {
    if gens.is_empty() {
        "1".into()
    } else {
        gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
    }
}

fn matrix_text(m: &Matrix) -> String {
    let cells: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
    let width = cells.iter().flatten().map(|c| c.len()).max().unwrap_or(1);
    cells
        .iter()
        .map(|r| {
            let r: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
            format!("  [{}]", r.join("  "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn matrix_triplets(m: &Matrix) -> Vec<(usize, usize, &LaurentScalar)> {
    let mut out = Vec::new();
    for (i, r) in m.iter().enumerate() {
        for (j, c) in r.iter().enumerate() {
            if !c.is_zero() {
                out.push((i, j, c));
            }
        }
    }
    out
}

fn matrix_json(basis: Value, m: &Matrix) -> Value {
    json!({
        "basis": basis,
        "entries": matrix_triplets(m)
            .into_iter()
            .map(|(i, j, c)| json!([i, j, c.to_json()]))
            .collect::<Vec<_>>(),
    })
}

fn matrix_rows(prefix: &[String], m: &Matrix) -> Vec<Vec<String>> {
    matrix_triplets(m)
        .into_iter()
        .map(|(i, j, c)| {
            let mut r = prefix.to_vec();
            r.extend([i.to_string(), j.to_string(), c.to_string()]);
            r
        })
        .collect()
}

fn module_basis_text(m: &StandardModule) -> String {
    m.basis
        .iter()
        .enumerate()
        .map(|(k, t)| format!("  {k}: {t}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn execute(cmd: &Cmd) -> Result<Output> {
    match cmd {
        Cmd::Dims { m, s } => {
            let d = hom_basis(*m, *s).len();
            Ok(Output::new(
                d.to_string(),
                json!({"m": m, "s": s, "dim": d}),
                &["m", "s", "dim"],
                vec![vec![m.to_string(), s.to_string(), d.to_string()]],
            ))
        }
        Cmd::Basis { m, s, l, kind } => basis(*m, *s, *l, *kind),
        Cmd::Mult { l, a, b } => mult(*l, a, b),
        Cmd::NormalForm { word, source } => {
            let w = TangleWord::parse_with_source(word, *source)?;
            let f = normal_form(&w)?;
            Ok(morphism_output(&f))
        }
        Cmd::Module { l, lambda, gen } => module(*l, lambda, gen),
        Cmd::Jm { l, lambda } => jm(*l, lambda),
        Cmd::Branch { l, lambda } => branch(*l, lambda),
        Cmd::Gram { l, lambda } => gram(*l, lambda),
        Cmd::Blocks { l, e } => blocks(*l, *e),
        Cmd::Verify { l, n, seed, only } => verify(*l, *n, *seed, only),
    }
}

fn morphism_output(f: &Morphism) -> Output {
    let rows = f
        .terms
        .iter()
        .map(|(c, x)| vec![c.to_string(), x.to_string()])
        .collect();
    Output::new(f.to_string(), f.to_json(), &["connector", "coeff"], rows)
}

fn basis(m: Option<usize>, s: Option<usize>, l: Option<usize>, kind: Option<BasisKind>) -> Result<Output> {
    let kind = kind.unwrap_or(if m.is_some() { BasisKind::Diagram } else { BasisKind::M });
    match kind {
        BasisKind::Diagram => {
            let (Some(m), Some(s)) = (m, s) else {
                return Err(Error::InvalidInput("diagram basis needs m and s".into()));
            };
            let ds = hom_basis(m, s);
            let text = ds
                .iter()
                .enumerate()
                .map(|(k, d)| format!("{k}: {}  = ({}) {}", d.connector, d.scale, d.word))
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!(ds
                .iter()
                .map(|d| json!({"connector": d.connector.to_json(), "word": d.word.to_string(), "scale": d.scale.to_json()}))
                .collect::<Vec<_>>());
            let rows = ds
                .iter()
                .enumerate()
                .map(|(k, d)| vec![k.to_string(), d.connector.to_string(), d.word.to_string(), d.scale.to_string()])
                .collect();
            Ok(Output::new(text, json, &["index", "connector", "word", "scale"], rows))
        }
        BasisKind::M => {
            let l = l.ok_or_else(|| Error::InvalidInput("the M basis needs -l".into()))?;
            let mb = MBasis::get(l);
            let items: Vec<(String, String)> = mb
                .entries
                .iter()
                .map(|(ix, _)| {
                    let (sign, w) = ix.word();
                    let sign = if sign < 0 { "-" } else { "" };
                    (ix.to_string(), format!("{sign}{}", word_text(&w)))
                })
                .collect();
            listing(items)
        }
        BasisKind::Standard => {
            let l = l.ok_or_else(|| Error::InvalidInput("the standard basis needs -l".into()))?;
            let sb = StandardBasis::get(l);
            let items = sb
                .entries
                .iter()
                .map(|(ix, a)| (ix.to_string(), a.to_string()))
                .collect();
            listing(items)
        }
    }
}

fn listing(items: Vec<(String, String)>) -> Result<Output> {
    let text = items
        .iter()
        .enumerate()
        .map(|(k, (a, b))| format!("{k}: {a}  {b}"))
        .collect::<Vec<_>>()
        .join("\n");
    let json = json!(items
        .iter()
        .map(|(a, b)| json!({"index": a, "element": b}))
        .collect::<Vec<_>>());
    let rows = items
        .iter()
        .enumerate()
        .map(|(k, (a, b))| vec![k.to_string(), a.clone(), b.clone()])
        .collect();
    Ok(Output::new(text, json, &["position", "index", "element"], rows))
}

fn m_basis_expression(a: &AlgebraElement) -> Result<Vec<(LaurentScalar, String)>> {
    let mb = MBasis::get(a.l);
    Ok(to_m_coords(a)?
        .into_iter()
        .map(|(k, c)| {
            let (sign, w) = mb.entries[k].0.word();
            (&c * &LaurentScalar::from_int(sign), word_text(&w))
        })
        .collect())
}

fn mult(l: usize, a: &str, b: &str) -> Result<Output> {
    let (ga, gb) = (parse_gens(a)?, parse_gens(b)?);
    check_gens(&ga, l)?;
    check_gens(&gb, l)?;
    let x = AlgebraElement::from_gens(&ga, l)?;
    let y = AlgebraElement::from_gens(&gb, l)?;
    let p = x.mul(&y)?;
    let expr = m_basis_expression(&p)?;
    let expr_text = if expr.is_empty() {
        "0".to_string()
    } else {
        expr.iter()
            .map(|(c, w)| format!("({c})*{w}"))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    let text = format!("{expr_text}\ndiagrams: {p}");
    let json = json!({
        "l": l,
        "m_basis": expr.iter().map(|(c, w)| json!({"word": w, "coeff": c.to_json()})).collect::<Vec<_>>(),
        "diagrams": p.to_json(),
    });
    let rows = expr.iter().map(|(c, w)| vec![w.clone(), c.to_string()]).collect();
    Ok(Output::new(text, json, &["word", "coeff"], rows))
}

fn module(l: usize, lambda: &str, gen: &str) -> Result<Output> {
    let lambda = parse_label(lambda, l)?;
    let gens = parse_gens(gen)?;
    check_gens(&gens, l)?;
    let m = StandardModule::get(&lambda, l)?;
    let mat = m.gens_matrix(&gens)?;
    let text = format!(
        "C({lambda}) at l={l}, dim {}, right action of {}\nbasis:\n{}\nmatrix (row t: m_t * g):\n{}",
        m.dim(),
        word_text(&gens),
        module_basis_text(&m),
        matrix_text(&mat)
    );
    let basis = json!(m.basis.iter().map(|t| t.to_json()).collect::<Vec<_>>());
    let mut json = matrix_json(basis, &mat);
    json["lambda"] = lambda.to_json();
    json["l"] = json!(l);
    json["gen"] = json!(word_text(&gens));
    let rows = matrix_rows(&[lambda.to_string()], &mat);
    Ok(Output::new(text, json, &["lambda", "row", "col", "coeff"], rows))
}

fn jm(l: usize, lambda: &Option<String>) -> Result<Output> {
    let mut text = Vec::new();
    let mut json = Vec::new();
    let mut rows = Vec::new();
    let mut failed = false;
    let verbose = lambda.is_some();
    for lam in labels(lambda, l)? {
        let m = StandardModule::get(&lam, l)?;
        if verbose {
            text.push(format!("C({lam}) at l={l}, dim {}\nbasis:\n{}", m.dim(), module_basis_text(&m)));
        }
        for i in 1..=l {
            match jm_action(i, &lam, l) {
                Ok(a) => {
                    let diag: Vec<String> = a.diagonal.iter().map(|c| c.to_string()).collect();
                    text.push(format!("{lam} x{i}: triangular, diagonal [{}]", diag.join(", ")));
                    if verbose {
                        text.push(matrix_text(&a.matrix));
                    }
                    let basis = json!(m.basis.iter().map(|t| t.to_json()).collect::<Vec<_>>());
                    let mut j = matrix_json(basis, &a.matrix);
                    j["lambda"] = lam.to_json();
                    j["i"] = json!(i);
                    j["triangular"] = json!(true);
                    j["diagonal"] = json!(a.diagonal.iter().map(|c| c.to_json()).collect::<Vec<_>>());
                    json.push(j);
                    rows.push(vec![lam.to_string(), i.to_string(), "true".into(), diag.join(" ")]);
                }
                Err(Error::Falsified(msg)) => {
                    failed = true;
                    text.push(format!("{lam} x{i}: FAILED {msg}"));
                    json.push(json!({"lambda": lam.to_json(), "i": i, "triangular": false, "detail": msg}));
                    rows.push(vec![lam.to_string(), i.to_string(), "false".into(), msg]);
                }
                Err(e) => return Err(e),
            }
        }
    }
    let mut out = Output::new(text.join("\n"), json!(json), &["lambda", "i", "triangular", "diagonal"], rows);
    out.status = i32::from(failed);
    Ok(out)
}

fn branch(l: usize, lambda: &Option<String>) -> Result<Output> {
    if l == 0 {
        return Err(Error::InvalidInput("branching needs l >= 1".into()));
    }
    let mut text = Vec::new();
    let mut json = Vec::new();
    let mut rows = Vec::new();
    let mut failed = false;
    for lam in labels(lambda, l)? {
        let dim = StandardModule::get(&lam, l)?.dim();
        let layers = branching_filtration(&lam, l)?;
        let mut sum = 0;
        let mut js = Vec::new();
        text.push(format!("C({lam}) at l={l}, dim {dim}"));
        for layer in &layers {
            let d = StandardModule::get(&layer.mu, l - 1)?.dim();
            sum += d;
            failed |= !layer.holds();
            text.push(format!(
                "  {}: dim {d}, stable {}, quotient matches {}, y-element in layer {}",
                layer.mu, layer.stable, layer.quotient_matches, layer.y_in_layer
            ));
            js.push(json!({
                "mu": layer.mu.to_json(),
                "dim": d,
                "new_basis": layer.new_basis,
                "sub_basis": layer.sub_basis,
                "stable": layer.stable,
                "quotient_matches": layer.quotient_matches,
                "y_in_layer": layer.y_in_layer,
            }));
            rows.push(vec![
                lam.to_string(),
                layer.mu.to_string(),
                d.to_string(),
                layer.holds().to_string(),
            ]);
        }
        failed |= sum != dim;
        text.push(format!("  total {sum} {} dim {dim}", if sum == dim { "=" } else { "!=" }));
        json.push(json!({"lambda": lam.to_json(), "dim": dim, "layers": js}));
    }
    let mut out = Output::new(text.join("\n"), json!(json), &["lambda", "mu", "dim", "holds"], rows);
    out.status = i32::from(failed);
    Ok(out)
}

fn gram(l: usize, lambda: &Option<String>) -> Result<Output> {
    if let Some(s) = lambda {
        let lam = parse_label(s, l)?;
        let g = gram_matrix(&lam, l)?;
        let rr = g.len() - rank(&g);
        let text = format!(
            "Gram matrix of C({lam}) at l={l}, size {}, radical rank {rr}\n{}",
            g.len(),
            matrix_text(&g)
        );
        let mut json = matrix_json(json!(null), &g);
        json["lambda"] = lam.to_json();
        json["radical_rank"] = json!(rr);
        let rows = matrix_rows(&[lam.to_string()], &g);
        return Ok(Output::new(text, json, &["lambda", "row", "col", "coeff"], rows));
    }
    let mut text = Vec::new();
    let mut json = Vec::new();
    let mut rows = Vec::new();
    for lam in sigma_plus(l) {
        let dim = StandardModule::get(&lam, l)?.dim();
        let g = gram_matrix(&lam, l)?;
        let rr = g.len() - rank(&g);
        text.push(format!("{lam}: dim {dim}, radical rank {rr}"));
        json.push(json!({"lambda": lam.to_json(), "dim": dim, "radical_rank": rr}));
        rows.push(vec![lam.to_string(), dim.to_string(), rr.to_string()]);
    }
    Ok(Output::new(text.join("\n"), json!(json), &["lambda", "dim", "radical_rank"], rows))
}

fn blocks(l: usize, e: Option<usize>) -> Result<Output> {
    require_generic(e)?;
    let r = block_report(l)?;
    let ss = semisimplicity_report(l)?;
    let mut text = Vec::new();
    let mut rows = Vec::new();
    for (k, b) in r.blocks.iter().enumerate() {
        let members: Vec<String> = b.members.iter().map(|p| p.to_string()).collect();
        text.push(format!("block {k}: {{{}}}  2-core {}  sharp {}", members.join(", "), b.core, b.sharp));
        rows.push(vec![l.to_string(), k.to_string(), members.join(" "), b.core.to_string(), b.sharp.to_string()]);
    }
    text.push(format!("sharp classes agree: {}", r.sharp_agrees()));
    text.push(format!(
        "residue linkage classes: {} (agree: {})",
        crate::blocks::show_classes(&r.linkage_classes),
        r.linkage_agrees()
    ));
    text.push(format!(
        "semisimple: {}{}",
        ss.semisimple,
        match &ss.witness {
            None => String::new(),
            Some(w) => format!(" (witness: {w})"),
        }
    ));
    let mut json = r.to_json();
    json["semisimplicity"] = ss.to_json();
    let mut out = Output::new(text.join("\n"), json, &["l", "block", "members", "two_core", "sharp"], rows);
    if let Err(e) = r.check() {
        out.text.push_str(&format!("\n{e}"));
        out.status = 1;
    }
    Ok(out)
}

fn verify(l: usize, n: usize, seed: u64, only: &Option<String>) -> Result<Output> {
    let checks = run_selected(&SuiteOptions { l, n, seed }, |name| {
        only.as_ref().is_none_or(|p| name.starts_with(p.as_str()))
    });
    if checks.is_empty() {
        return Err(Error::InvalidInput("no check matches the --only prefix".into()));
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut text: Vec<String> = checks
        .iter()
        .map(|c| {
            format!(
                "{} {:<40} {} [{:.2}s]",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail,
                c.seconds
            )
        })
        .collect();
    text.push(format!("{} checks, {failed} failed", checks.len()));
    let json = json!({
        "l": l,
        "checks": checks.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        "failed": failed,
    });
    let rows = checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                if c.passed { "pass" } else { "fail" }.into(),
                c.detail.clone(),
                format!("{:.3}", c.seconds),
            ]
        })
        .collect();
    let mut out = Output::new(text.join("\n"), json, &["name", "status", "detail", "seconds"], rows);
    out.status = i32::from(failed > 0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pqb(args: &[&str]) -> (i32, String, String) {
        let mut v = vec!["pqb".to_string()];
        v.extend(args.iter().map(|s| s.to_string()));
        run(v)
    }

    #[test]
    fn dims_and_exit_codes() {
        assert_eq!(pqb(&["dims", "3", "1"]), (0, "3\n".into(), String::new()));
        assert_eq!(pqb(&["dims", "2", "1"]).1, "0\n");
        assert_eq!(pqb(&["dims", "x", "1"]).0, 2);
        assert_eq!(pqb(&["module", "-l", "2", "--lambda", "[5]"]).0, 2);
        assert_eq!(pqb(&["blocks", "-l", "2", "--e", "3"]).0, 2);
        assert_eq!(pqb(&["mult", "-l", "2", "T3", ""]).0, 2);
    }

    #[test]
    fn mult_example() {
        let (code, out, _) = pqb(&["mult", "-l", "3", "E1 E2 E1", ""]);
        assert_eq!(code, 0);
        assert!(out.starts_with("(-1)*E1\n"), "{out}");
    }

    #[test]
    fn module_example() {
        let (code, out, _) = pqb(&["--format", "json", "module", "-l", "2", "-lambda", "[2]", "-gen", "T1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["entries"][0][0], 0);
        assert_eq!(LaurentScalar::from_json(&v["entries"][0][2]).unwrap(), LaurentScalar::q());
    }

    #[test]
    fn csv_and_determinism() {
        let a = pqb(&["--format", "csv", "gram", "-l", "3"]);
        let b = pqb(&["--format", "csv", "gram", "-l", "3"]);
        assert_eq!(a, b);
        assert!(a.1.starts_with("lambda,dim,radical_rank\n"));
    }

    #[test]
    fn blocks_report_disagreement() {
        assert_eq!(pqb(&["blocks", "-l", "1"]).0, 0);
        let (code, out, _) = pqb(&["blocks", "-l", "3"]);
        assert_eq!(code, 1);
        assert!(out.contains("2-core"));
    }

    #[test]
    fn verify_exit_status() {
        let (code, out, _) = pqb(&["verify", "-l", "2", "--only", "combin"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("5 checks, 0 failed"), "{out}");
        let (code, out, _) = pqb(&["--format", "csv", "verify", "-l", "2", "--only", "blocks.consistency"]);
        assert_eq!(code, 1);
        assert!(out.contains("blocks.consistency,fail"), "{out}");
    }

    #[test]
    fn normal_form_example() {
        let (code, out, _) = pqb(&["normal-form", "U 1 ; A 1"]);
        assert_eq!((code, out.as_str()), (0, "0\n"));
    }
}
