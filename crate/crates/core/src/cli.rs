//! The `hermrank` command line.
//!
//! Exit codes: 0 on success, 1 on domain errors, 2 on parse and usage errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::combinat::{
    compose_k, green_g, green_k, hermitian_r, macaulay_rep, rigidity_bound, stability_region, stability_threshold,
};
use crate::forms::{HermitianForm, WeightedHoloMap};
use crate::io::{parse_form, parse_map, parse_realpoly, render_component, write_map};
use crate::quadrics::{
    construct_map, dehomogenize, explore, is_admissible, region_grid, tensor_extend, verify_map, QuadricMap,
};
use crate::restrict::{generic_restriction_rank, max_restriction_rank, Family, SamplingConfig};
use crate::scalar::{fmt_pair, fmt_rational};
use crate::Error;

#[derive(Parser, Debug)]
#[command(name = "hermrank", version, about = "Exact rank bounds for Hermitian forms and hyperquadric maps")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Seed for sampled ranks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Independent trials per sampled rank.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,
    /// Numerators and denominators of random coefficients are drawn from [1, bound].
    #[arg(long = "coeff-bound", global = true, default_value_t = 1_000_000)]
    coeff_bound: u64,
    /// Maximum number of lattice nodes the map search may record.
    #[arg(long, global = true, default_value_t = 100_000)]
    budget: usize,
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Omit `#` commentary from text output.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Macaulay representation of c in degree d, and c_<d>.
    Macaulay { c: BigUint, d: u32 },
    /// Green-type bound functions.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Rank, inertia and decomposition of a form file.
    #[command(subcommand)]
    Form(FormCmd),
    /// Ranks of restrictions to random subspaces.
    #[command(subcommand)]
    Restrict(RestrictCmd),
    /// Admissible polynomials and maps between hyperquadrics.
    #[command(subcommand)]
    Quadric(QuadricCmd),
}

#[derive(Subcommand, Debug)]
enum BoundCmd {
    /// G(n, d, N).
    G { n: u32, d: u32, big_n: BigUint },
    /// K_n(k).
    K { n: u32, k: BigUint },
    /// K_{m+1} o ... o K_n applied to k.
    Compose { m: u32, n: u32, k: BigUint },
    /// R_{m+1} o ... o R_n applied to k, with R_j = K_j o K_j.
    Hermitian { m: u32, n: u32, k: BigUint },
    /// Bound on A for a map Q(a,b) -> Q(A,B).
    Rigidity { a: u32, b: u32, big_b: BigUint },
    /// Whether (A, B) lies in the stability sector of (a, b).
    Stability { a: u64, b: u64, big_a: u64, big_b: u64 },
}

#[derive(Subcommand, Debug)]
enum FormCmd {
    Rank {
        file: PathBuf,
    },
    Inertia {
        file: PathBuf,
    },
    /// Signed sum of squares with rational weights.
    Decompose {
        file: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Graph,
    General,
}

#[derive(Subcommand, Debug)]
enum RestrictCmd {
    /// Rank on a generic linear subspace.
    Generic {
        file: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// Largest rank seen over sampled affine subspaces.
    Max {
        file: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::Graph)]
        family: FamilyArg,
    },
}

#[derive(Subcommand, Debug)]
enum QuadricCmd {
    /// Monomial map HQ(a,b) -> HQ(A,B) found by the lattice search.
    Construct { a: usize, b: usize, big_a: usize, big_b: usize },
    /// Check that a map file sends the source hyperquadric into the target.
    Verify { mapfile: PathBuf },
    /// Tensor one component (zero based) with the source coordinates.
    Tensor {
        mapfile: PathBuf,
        #[arg(long)]
        component: usize,
    },
    /// Rational map Q(a, b-1) -> Q(A, B-1) from an admissible polynomial.
    Dehomogenize { polyfile: PathBuf },
    /// Divisibility by s and the signature pair.
    Admissible { polyfile: PathBuf },
    /// Text grid of the reached lattice points.
    Region {
        a: usize,
        b: usize,
        #[arg(long)]
        max: usize,
    },
}

struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn new(command: &str) -> Self {
        Output { text: String::new(), json: json!({ "schema": 1, "command": command }) }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn set(&mut self, key: &str, v: Value) {
        self.json[key] = v;
    }
}

enum Failure {
    Domain(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Input(format!("ParseError: {e}")),
            e => Failure::Domain(e),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load<T>(path: &Path, parse: fn(&str) -> crate::Result<T>) -> Res<T> {
    let text = read(path)?;
    parse(&text).map_err(|e| match e {
        Error::Parse { line, msg } => Failure::Input(format!("ParseError: {}:{line}: {msg}", path.display())),
        e => Failure::Domain(e),
    })
}

fn explain(e: &Error) -> &'static str {
    match e {
        Error::ConjugateMismatch { .. } => "the coefficient matrix of a real form must be Hermitian",
        Error::NonRealDiagonal(_) => "diagonal coefficients of a real form must be real",
        Error::DimensionMismatch(_) => "the inputs disagree on a dimension",
        Error::NotAdmissible(_) => "the polynomial is not divisible by s",
        Error::NoPivotMonomial(_) => "the move needs a term of the requested sign",
        Error::NotReached(_) => "no sequence of lattice moves produced this signature",
        Error::NotVanishing(_) => "the form does not vanish on the hyperquadric",
        Error::NoNegativeComponent(_) => "a rational map needs a negative component for its denominator",
        Error::IndexOutOfRange(_) => "an index is outside the valid range",
        Error::Unsupported(_) => "the operation is not defined for this input",
        Error::VerificationFailed(_) => "an internal consistency check failed",
        Error::OutOfDomain(_) => "an argument is outside the supported domain",
        Error::Parse { .. } => "the input file is malformed",
    }
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let g = cli.global.clone();
    match dispatch(cli) {
        Ok(o) => {
            let body = if g.json {
                let mut s = serde_json::to_string_pretty(&o.json).expect("json values serialize");
                s.push('\n');
                s
            } else if g.quiet {
                o.text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect()
            } else {
                o.text
            };
            let _ = out.write_all(body.as_bytes());
            0
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            let _ = writeln!(err, "  {}", explain(&e));
            1
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn sampling(g: &GlobalOpts) -> SamplingConfig {
    SamplingConfig { trials: g.trials, coeff_bound: g.coeff_bound, seed: g.seed, parallel: true }
}

fn dispatch(cli: Cli) -> Res<Output> {
    let g = &cli.global;
    match cli.command {
        Command::Macaulay { c, d } => macaulay(&c, d),
        Command::Bound(b) => bound(b),
        Command::Form(f) => form(f),
        Command::Restrict(r) => restrict(r, g),
        Command::Quadric(q) => quadric(q, g),
    }
}

fn macaulay(c: &BigUint, d: u32) -> Res<Output> {
    let rep = macaulay_rep(c, d)?;
    let lower = rep.lower();
    let mut o = Output::new("macaulay");
    let terms: Vec<String> = (1..=d).rev().map(|i| format!("C({},{i})", rep.k(i))).collect();
    o.line(format!("{c} = {}", terms.join(" + ")));
    o.line(format!("{c}_<{d}> = {lower}"));
    o.set("c", json!(c.to_string()));
    o.set("d", json!(d));
    o.set("k", json!(rep.ks.iter().map(|k| k.to_string()).collect::<Vec<_>>()));
    o.set("lower", json!(lower.to_string()));
    Ok(o)
}

fn bound(b: BoundCmd) -> Res<Output> {
    let (name, value) = match b {
        BoundCmd::G { n, d, big_n } => ("bound g", green_g(n, d, &big_n)?.to_string()),
        BoundCmd::K { n, k } => ("bound k", green_k(n, &k)?.to_string()),
        BoundCmd::Compose { m, n, k } => ("bound compose", compose_k(m, n, &k)?.to_string()),
        BoundCmd::Hermitian { m, n, k } => ("bound hermitian", hermitian_r(m, n, &k)?.to_string()),
        BoundCmd::Rigidity { a, b, big_b } => ("bound rigidity", rigidity_bound(a, b, &big_b)?.to_string()),
        BoundCmd::Stability { a, b, big_a, big_b } => {
            let inside = stability_region(a, b, big_a, big_b)?;
            let mut o = Output::new("bound stability");
            o.line(inside.to_string());
            o.line(format!("# A + B >= {}", stability_threshold(a, b)));
            o.set("value", json!(inside));
            o.set("threshold", json!(stability_threshold(a, b)));
            return Ok(o);
        }
    };
    let mut o = Output::new(name);
    o.line(&value);
    o.set("value", json!(value));
    Ok(o)
}

fn components_json(m: &WeightedHoloMap) -> Value {
    let list: Vec<Value> = m
        .components
        .iter()
        .map(|c| {
            let terms: Vec<Value> = c
                .poly
                .terms()
                .rev()
                .map(|(e, v)| json!({ "coeff": fmt_pair(v), "exponents": e.exponents() }))
                .collect();
            json!({ "sign": c.sign.as_char().to_string(), "weight": fmt_rational(&c.weight), "terms": terms })
        })
        .collect();
    Value::Array(list)
}

fn form(f: FormCmd) -> Res<Output> {
    match f {
        FormCmd::Rank { file } => {
            let form: HermitianForm = load(&file, parse_form)?;
            let r = form.rank();
            let mut o = Output::new("form rank");
            o.line(r.to_string());
            o.set("rank", json!(r));
            Ok(o)
        }
        FormCmd::Inertia { file } => {
            let sig = load(&file, parse_form)?.inertia();
            let mut o = Output::new("form inertia");
            o.line(format!("{} {}", sig.pos, sig.neg));
            o.line(format!("# rank {}", sig.rank()));
            o.set("pos", json!(sig.pos));
            o.set("neg", json!(sig.neg));
            o.set("rank", json!(sig.rank()));
            Ok(o)
        }
        FormCmd::Decompose { file } => {
            let dec = load(&file, parse_form)?.decompose();
            let sig = dec.signature();
            let mut o = Output::new("form decompose");
            o.line(format!("# signature {} {}", sig.pos, sig.neg));
            for c in &dec.components {
                o.line(render_component(c));
            }
            o.set("pos", json!(sig.pos));
            o.set("neg", json!(sig.neg));
            o.set("components", components_json(&dec));
            Ok(o)
        }
    }
}

fn restrict(r: RestrictCmd, g: &GlobalOpts) -> Res<Output> {
    let cfg = sampling(g);
    match r {
        RestrictCmd::Generic { file, dim } => {
            let form = load(&file, parse_form)?;
            let gr = generic_restriction_rank(&form, dim, &cfg)?;
            let mut o = Output::new("restrict generic");
            o.line(gr.rank.to_string());
            o.line(format!("# trials {} seed {} failure probability <= {:e}", gr.trials, g.seed, gr.failure_bound));
            o.set("rank", json!(gr.rank));
            o.set("trials", json!(gr.trials));
            o.set("seed", json!(g.seed));
            o.set("per_trial_bound", json!(gr.per_trial_bound));
            o.set("failure_bound", json!(gr.failure_bound));
            Ok(o)
        }
        RestrictCmd::Max { file, dim, samples, family } => {
            let form = load(&file, parse_form)?;
            let fam = match family {
                FamilyArg::Graph => Family::Graph,
                FamilyArg::General => Family::General,
            };
            let r = max_restriction_rank(&form, dim, samples, fam, &cfg)?;
            let mut o = Output::new("restrict max");
            o.line(r.to_string());
            o.line(format!("# samples {samples} seed {}", g.seed));
            o.set("rank", json!(r));
            o.set("samples", json!(samples));
            o.set("seed", json!(g.seed));
            Ok(o)
        }
    }
}

fn map_output(o: &mut Output, map: &QuadricMap) {
    for c in &map.components.components {
        o.line(format!("# {}", render_component(c)));
    }
    o.text.push_str(&write_map(map));
    o.set("source", json!([map.source.0, map.source.1]));
    o.set("target", json!([map.target.0, map.target.1]));
    o.set("homogeneous", json!(map.homogeneous));
    o.set("denominator", json!(map.denominator));
    o.set("components", components_json(&map.components));
}

fn quadric(q: QuadricCmd, g: &GlobalOpts) -> Res<Output> {
    match q {
        QuadricCmd::Construct { a, b, big_a, big_b } => {
            let map = construct_map(a, b, big_a, big_b, g.budget)?;
            let lat = explore(a, b, big_a, big_b, g.budget)?;
            let path: Vec<String> = lat.path(big_a, big_b).unwrap_or_default().iter().map(|m| m.name()).collect();
            let mut o = Output::new("quadric construct");
            o.line(format!("# HQ({a},{b}) -> HQ({big_a},{big_b})"));
            o.line(format!("# moves: {}", if path.is_empty() { "none".to_string() } else { path.join(", ") }));
            map_output(&mut o, &map);
            o.line("# verified");
            o.set("moves", json!(path));
            o.set("verified", json!(true));
            Ok(o)
        }
        QuadricCmd::Verify { mapfile } => {
            let map = load(&mapfile, parse_map)?;
            let ok = verify_map(&map);
            let mut o = Output::new("quadric verify");
            o.line(ok.to_string());
            o.set("verified", json!(ok));
            Ok(o)
        }
        QuadricCmd::Tensor { mapfile, component } => {
            let map = load(&mapfile, parse_map)?;
            let t = tensor_extend(&map, component)?;
            let mut o = Output::new("quadric tensor");
            map_output(&mut o, &t);
            o.set("verified", json!(verify_map(&t)));
            Ok(o)
        }
        QuadricCmd::Dehomogenize { polyfile } => {
            let p = load(&polyfile, parse_realpoly)?;
            let map = dehomogenize(&p)?;
            let mut o = Output::new("quadric dehomogenize");
            map_output(&mut o, &map);
            o.set("verified", json!(verify_map(&map)));
            Ok(o)
        }
        QuadricCmd::Admissible { polyfile } => {
            let p = load(&polyfile, parse_realpoly)?;
            let (ok, sig) = is_admissible(&p);
            let mut o = Output::new("quadric admissible");
            o.line(ok.to_string());
            o.line(format!("# signature {} {}", sig.pos, sig.neg));
            o.set("admissible", json!(ok));
            o.set("pos", json!(sig.pos));
            o.set("neg", json!(sig.neg));
            Ok(o)
        }
        QuadricCmd::Region { a, b, max } => {
            let grid = region_grid(a, b, max, g.budget)?;
            let mut o = Output::new("quadric region");
            o.text.push_str(&grid.render());
            let rows: Vec<String> = (0..=max).rev().map(|r| grid.cells[r].iter().collect()).collect();
            o.set("a", json!(a));
            o.set("b", json!(b));
            o.set("max", json!(max));
            o.set("threshold", json!(stability_threshold(a as u64, b as u64)));
            o.set("rows", json!(rows));
            o.set("constructed", json!(grid.constructed()));
            o.set("complete", json!(grid.complete));
            Ok(o)
        }
    }
}
