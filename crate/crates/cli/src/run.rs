//! Subcommands, output rendering and the exit-code contract.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rayon::prelude::*;
use stringy_core::fine::{classify, fine, FineInterior, Normalized};
use stringy_core::mavlyutov::mav_dual;
use stringy_core::stringy::{
    efun_u, estr_cond, estr_general, estr_reflexive, face_terms, is_symmetric, mirror_test, verdict,
};
use stringy_core::wps::{integrality_report, wps_delta, wps_dual, WpsParams};
use stringy_core::{Error, Polytope};

use crate::format::{parse_polytope, split_items, ParseError};
use crate::report::*;

#[derive(Parser, Debug)]
#[command(name = "stringy", version, about = "Fine interiors, Mavlyutov duality and stringy Euler numbers of lattice polytopes")]
pub struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Human-readable output (default)
    #[arg(long, global = true)]
    pub text: bool,
    /// Print the vector moving the Fine interior point to the origin
    #[arg(long, global = true)]
    pub translate: bool,
    /// Cross-check independent formulas and exit nonzero on mismatch
    #[arg(long, global = true)]
    pub check: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Calabi-Yau classification of the Newton polytope
    Classify { file: PathBuf },
    /// Fine interior, its support and the canonical hull
    Fine { file: PathBuf },
    /// Mavlyutov dual polytope, written as a polytope file
    Dual { file: PathBuf },
    /// Stringy Euler number with the per-face table
    Estr { file: PathBuf },
    /// Stringy E-function E_str(u, 1)
    Efun { file: PathBuf },
    /// Topological mirror test against the Mavlyutov dual
    Mirror { file: PathBuf },
    /// Weighted projective space P(a, 1^d), d = ab + l
    Wps {
        #[arg(short)]
        a: u64,
        #[arg(short)]
        b: u64,
        #[arg(short)]
        l: u64,
        /// Also build both polytopes and run the engine (needs d <= STRINGY_MAX_DIM)
        #[arg(long)]
        materialize: bool,
    },
    /// One JSON report per polytope in DIR, or in `---`-separated stdin for `-`
    Batch {
        source: String,
        #[arg(long, value_enum, default_value = "classify")]
        run: BatchRun,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BatchRun {
    Classify,
    Fine,
    Dual,
    Estr,
    Efun,
    Mirror,
}

#[derive(Debug)]
pub enum Failure {
    Parse(ParseError),
    Io(String),
    Domain(Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Parse(_) | Failure::Io(_) => 2,
            Failure::Domain(_) => 1,
        }
    }

    pub fn doc(&self) -> ErrorDoc {
        let (kind, message) = match self {
            Failure::Parse(e) => (e.kind().to_string(), e.to_string()),
            Failure::Io(m) => ("Io".to_string(), m.clone()),
            Failure::Domain(e) => (e.kind().to_string(), e.to_string()),
        };
        ErrorDoc { kind, message, exit_code: self.exit_code() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Failure {
        Failure::Parse(e)
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn check(formula: &str, value: &BigRational, reference: &BigRational) -> CheckDoc {
    CheckDoc { formula: formula.to_string(), value: q(value), agrees: value == reference }
}

fn normalized(p: &Polytope) -> Result<(Normalized, Vec<String>), Failure> {
    let (n, t) = Normalized::translated(p)?;
    Ok((n, qivec(&t)))
}

/// Runs one polytope command.
pub fn run_polytope(cmd: BatchRun, p: &Polytope, with_checks: bool) -> Result<Body, Failure> {
    Ok(match cmd {
        BatchRun::Classify => {
            let c = classify(p)?;
            Body::Classify(ClassifyDoc {
                verdict: c.verdict.name().to_string(),
                fine_interior_dim: c.fine_interior_dim,
                translation: c.translation.as_deref().map(qivec),
                almost_pseudoreflexive: c.verdict.is_almost_pseudoreflexive(),
                pseudoreflexive: c.verdict.is_pseudoreflexive(),
            })
        }
        BatchRun::Fine => {
            let r = fine(p)?;
            Body::Fine(FineDoc {
                interior: match &r.interior {
                    FineInterior::Empty => None,
                    FineInterior::Nonempty(fi) => Some(PolytopeDoc::of(fi)),
                },
                support: r.support.iter().map(|n| qivec(n)).collect(),
                canonical_hull: r.canonical_hull.polytope().map(PolytopeDoc::of),
                translation: r.translation.as_deref().map(qivec),
                cut_set_size: r.cut_set.len(),
            })
        }
        BatchRun::Dual => {
            let (n, translation) = normalized(p)?;
            Body::Dual(DualDoc { translation, verdict: verdict(&n).name().to_string(), dual: PolytopeDoc::of(&mav_dual(&n)?) })
        }
        BatchRun::Estr => {
            let (n, translation) = normalized(p)?;
            let terms = face_terms(&n)?;
            let e = terms.iter().fold(BigRational::from_integer(0.into()), |acc, t| acc + &t.contribution);
            let mut checks = Vec::new();
            if with_checks {
                checks.push(check("efun_limit", &efun_u(&n)?.eval(&BigRational::from_integer(1.into()))?, &e));
                if n.is_reflexive() {
                    checks.push(check("reflexive", &estr_reflexive(&n)?, &e));
                }
                if n.is_pseudoreflexive() {
                    checks.push(check("cond", &estr_cond(&n)?, &e));
                }
            }
            Body::Estr(EstrDoc {
                verdict: verdict(&n).name().to_string(),
                translation,
                integer: e.is_integer(),
                denominator: e.denom().to_string(),
                e_str: q(&e),
                faces: terms
                    .iter()
                    .map(|t| FaceTermDoc {
                        vertices: n.delta().face(t.face).vertices().to_vec(),
                        dim: t.dim,
                        volume: q(&t.volume),
                        cone_volume: q(&t.cone_volume),
                        contribution: q(&t.contribution),
                    })
                    .collect(),
                checks,
            })
        }
        BatchRun::Efun => {
            let (n, translation) = normalized(p)?;
            let f = efun_u(&n)?;
            let value = f.eval(&BigRational::from_integer(1.into())).ok();
            let mut checks = Vec::new();
            if with_checks {
                let e = estr_general(&n)?;
                checks.push(CheckDoc {
                    formula: "general".to_string(),
                    value: q(&e),
                    agrees: value.as_ref() == Some(&e),
                });
            }
            Body::Efun(EfunDoc {
                translation,
                numerator: qvec(f.numerator().coeffs()),
                denominator: qvec(f.denominator().coeffs()),
                polynomial: f.is_polynomial(),
                symmetric: is_symmetric(&f, n.dim()),
                value_at_one: value.as_ref().map(q),
                checks,
            })
        }
        BatchRun::Mirror => {
            let (n, translation) = normalized(p)?;
            let m = mirror_test(&n)?;
            Body::Mirror(MirrorDoc {
                translation,
                d: n.dim(),
                e_str: q(&m.e_str),
                e_str_dual: q(&m.e_str_dual),
                sign: m.sign,
                pass: m.pass,
            })
        }
    })
}

pub fn run_wps(a: u64, b: u64, l: u64, materialize: bool) -> Result<Body, Failure> {
    let p = WpsParams::new(a, b, l)?;
    let r = integrality_report(&p);
    let materialized = if materialize {
        let delta = Normalized::new(wps_delta(&p)?)?;
        let dual = Normalized::new(wps_dual(&p)?)?;
        let (ed, ev) = (estr_general(&delta)?, estr_general(&dual)?);
        Some(MaterializedDoc {
            verdict: verdict(&delta).name().to_string(),
            agrees_with_closed_forms: ed == r.e_str_x && ev == r.e_str_xvee,
            e_str_delta: q(&ed),
            e_str_dual: q(&ev),
        })
    } else {
        None
    };
    Ok(Body::Wps(WpsDoc {
        a,
        b,
        l,
        d: r.d,
        e_str_x: q(&r.e_str_x),
        e_str_xvee: q(&r.e_str_xvee),
        aggregate: q(&r.aggregate),
        x_integer: r.e_str_x.is_integer(),
        xvee_integer: r.e_str_xvee.is_integer(),
        x_in_b_lattice: r.x_in_b_lattice,
        xvee_in_a_lattice: r.xvee_in_a_lattice,
        mirror_pass: r.mirror.pass,
        materialized,
    }))
}

/// Whether every requested cross-check agreed.
pub fn checks_pass(body: &Body) -> bool {
    match body {
        Body::Estr(e) => e.checks.iter().all(|c| c.agrees),
        Body::Efun(e) => e.checks.iter().all(|c| c.agrees),
        Body::Wps(w) => w.materialized.as_ref().map_or(true, |m| m.agrees_with_closed_forms),
        _ => true,
    }
}

fn tr(t: &[String]) -> String {
    format!("({})", t.iter().map(|x| x.strip_suffix("/1").unwrap_or(x)).collect::<Vec<_>>().join(", "))
}

fn short(x: &str) -> &str {
    x.strip_suffix("/1").unwrap_or(x)
}

fn coeffs(c: &[String]) -> String {
    format!("[{}]", c.iter().map(|x| short(x)).collect::<Vec<_>>().join(", "))
}

/// Human-readable rendering.
pub fn render_text(doc: &Document, translate: bool) -> String {
    let mut out = String::new();
    if let Body::Dual(d) = &doc.body {
        // a plain polytope file that `stringy` reads back
        if let Some(n) = &doc.name {
            let _ = writeln!(out, "# name: {n}-dual");
        }
        if translate {
            let _ = writeln!(out, "# translation: {}", tr(&d.translation));
        }
        let _ = writeln!(out, "{} {}", d.dual.ambient_dim, d.dual.vertices.len());
        for v in &d.dual.vertices {
            let _ = writeln!(out, "{}", v.iter().map(|x| short(x)).collect::<Vec<_>>().join(" "));
        }
        return out;
    }
    if let Some(n) = &doc.name {
        let _ = writeln!(out, "name: {n}");
    }
    let translation = |t: Option<&Vec<String>>, out: &mut String| {
        if let (true, Some(t)) = (translate, t) {
            let _ = writeln!(out, "translation: {}", tr(t));
        }
    };
    match &doc.body {
        Body::Classify(c) => {
            let _ = writeln!(out, "verdict: {}", c.verdict);
            match c.fine_interior_dim {
                Some(d) => {
                    let _ = writeln!(out, "fine interior dimension: {d}");
                }
                None => out.push_str("fine interior: empty\n"),
            }
            translation(c.translation.as_ref(), &mut out);
        }
        Body::Fine(f) => {
            match &f.interior {
                None => out.push_str("fine interior: empty\n"),
                Some(p) => {
                    let _ = writeln!(out, "fine interior: dimension {}", p.dim);
                    for v in &p.vertices {
                        let _ = writeln!(out, "  {}", tr(v));
                    }
                }
            }
            let _ = writeln!(out, "support: {} directions", f.support.len());
            for n in &f.support {
                let _ = writeln!(out, "  {}", tr(n));
            }
            match &f.canonical_hull {
                None => out.push_str("canonical hull: absent\n"),
                Some(p) => {
                    let _ = writeln!(out, "canonical hull: {} vertices", p.vertices.len());
                    for v in &p.vertices {
                        let _ = writeln!(out, "  {}", tr(v));
                    }
                }
            }
            translation(f.translation.as_ref(), &mut out);
        }
        Body::Dual(_) => unreachable!(),
        Body::Estr(e) => {
            let _ = writeln!(out, "verdict: {}", e.verdict);
            translation(Some(&e.translation), &mut out);
            let _ = writeln!(out, "{:>4}  {:>14}  {:>14}  {:>16}  vertices", "dim", "v(face)", "v(cone)", "term");
            for f in &e.faces {
                let vs: Vec<String> = f.vertices.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(
                    out,
                    "{:>4}  {:>14}  {:>14}  {:>16}  {}",
                    f.dim,
                    short(&f.volume),
                    short(&f.cone_volume),
                    short(&f.contribution),
                    vs.join(",")
                );
            }
            let _ = writeln!(out, "e_str: {}", short(&e.e_str));
            for c in &e.checks {
                let _ = writeln!(out, "check {}: {} {}", c.formula, short(&c.value), if c.agrees { "ok" } else { "MISMATCH" });
            }
        }
        Body::Efun(f) => {
            translation(Some(&f.translation), &mut out);
            let _ = writeln!(out, "numerator: {}", coeffs(&f.numerator));
            let _ = writeln!(out, "denominator: {}", coeffs(&f.denominator));
            let _ = writeln!(out, "polynomial: {}", f.polynomial);
            let _ = writeln!(out, "symmetric: {}", f.symmetric);
            if let Some(v) = &f.value_at_one {
                let _ = writeln!(out, "value at u=1: {}", short(v));
            }
            for c in &f.checks {
                let _ = writeln!(out, "check {}: {} {}", c.formula, short(&c.value), if c.agrees { "ok" } else { "MISMATCH" });
            }
        }
        Body::Mirror(m) => {
            translation(Some(&m.translation), &mut out);
            let _ = writeln!(out, "e_str: {}", short(&m.e_str));
            let _ = writeln!(out, "e_str(dual): {}", short(&m.e_str_dual));
            let _ = writeln!(out, "sign: {}", m.sign);
            let _ = writeln!(out, "pass: {}", m.pass);
        }
        Body::Wps(w) => {
            let _ = writeln!(out, "a={} b={} l={} d={}", w.a, w.b, w.l, w.d);
            let _ = writeln!(out, "e_str(X): {}", short(&w.e_str_x));
            let _ = writeln!(out, "e_str(X dual): {}", short(&w.e_str_xvee));
            let _ = writeln!(out, "aggregate A: {}", short(&w.aggregate));
            let _ = writeln!(out, "b*e_str(X) integral: {}", w.x_in_b_lattice);
            let _ = writeln!(out, "a*e_str(X dual) integral: {}", w.xvee_in_a_lattice);
            let _ = writeln!(out, "e_str(X) integral: {}", w.x_integer);
            let _ = writeln!(out, "mirror pass: {}", w.mirror_pass);
            if let Some(m) = &w.materialized {
                let _ = writeln!(out, "engine verdict: {}", m.verdict);
                let _ = writeln!(out, "engine e_str(X): {}", short(&m.e_str_delta));
                let _ = writeln!(out, "engine e_str(X dual): {}", short(&m.e_str_dual));
                let _ = writeln!(out, "closed forms agree: {}", m.agrees_with_closed_forms);
            }
        }
        Body::Error(e) => {
            let _ = writeln!(out, "error ({}): {}", e.kind, e.message);
        }
    }
    out
}

fn emit(out: &mut dyn Write, doc: &Document, cli: &Cli) {
    let text = if cli.json { format!("{}\n", doc.to_json()) } else { render_text(doc, cli.translate) };
    let _ = out.write_all(text.as_bytes());
}

fn batch_items(source: &str) -> Result<Vec<(String, String)>, Failure> {
    if source == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        return Ok(split_items(&s).into_iter().enumerate().map(|(i, t)| (format!("item-{}", i + 1), t)).collect());
    }
    let mut paths: Vec<PathBuf> = std::fs::read_dir(source)
        .map_err(|e| Failure::Io(format!("{source}: {e}")))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok((name, read_file(p)?))
        })
        .collect()
}

/// Runs one batch item to a document.
pub fn batch_document(cmd: BatchRun, default_name: String, text: &str, with_checks: bool) -> (Document, u8) {
    let parsed = match parse_polytope(text) {
        Ok(p) => p,
        Err(e) => {
            let f = Failure::Parse(e);
            return (Document::new(Some(default_name), Body::Error(f.doc())), f.exit_code());
        }
    };
    let name = Some(parsed.name.unwrap_or(default_name));
    match run_polytope(cmd, &parsed.polytope, with_checks) {
        Ok(body) => {
            let code = if checks_pass(&body) { 0 } else { 1 };
            (Document::new(name, body), code)
        }
        Err(f) => (Document::new(name, Body::Error(f.doc())), f.exit_code()),
    }
}

/// Executes a parsed command line, writing to `out`; returns the exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> u8 {
    let single = |cmd: BatchRun, file: &Path| -> Result<(Document, u8), Failure> {
        let parsed = parse_polytope(&read_file(file)?)?;
        let body = run_polytope(cmd, &parsed.polytope, cli.check)?;
        let code = if checks_pass(&body) { 0 } else { 1 };
        Ok((Document::new(parsed.name, body), code))
    };
    let result = match &cli.command {
        Command::Classify { file } => single(BatchRun::Classify, file),
        Command::Fine { file } => single(BatchRun::Fine, file),
        Command::Dual { file } => single(BatchRun::Dual, file),
        Command::Estr { file } => single(BatchRun::Estr, file),
        Command::Efun { file } => single(BatchRun::Efun, file),
        Command::Mirror { file } => single(BatchRun::Mirror, file),
        Command::Wps { a, b, l, materialize } => run_wps(*a, *b, *l, *materialize).map(|body| {
            let code = if cli.check && !checks_pass(&body) { 1 } else { 0 };
            (Document::new(None, body), code)
        }),
        Command::Batch { source, run } => {
            let items = match batch_items(source) {
                Ok(items) => items,
                Err(f) => {
                    emit(out, &Document::new(None, Body::Error(f.doc())), cli);
                    return f.exit_code();
                }
            };
            let docs: Vec<(Document, u8)> =
                items.into_par_iter().map(|(name, text)| batch_document(*run, name, &text, cli.check)).collect();
            let mut code = 0;
            for (doc, c) in &docs {
                let _ = writeln!(out, "{}", doc.to_json());
                code = code.max(*c);
            }
            return code;
        }
    };
    match result {
        Ok((doc, code)) => {
            emit(out, &doc, cli);
            code
        }
        Err(f) => {
            if cli.json {
                emit(out, &Document::new(None, Body::Error(f.doc())), cli);
            } else {
                eprintln!("error ({}): {}", f.doc().kind, f.doc().message);
            }
            f.exit_code()
        }
    }
}
