//! Command-line surface for the skew polynomial / polycyclic code toolkit.
//!
//! Global flags pick the coefficient field (`--field "p^s [mod=...]"`), the
//! automorphism power (`--sigma r`), and the output mode. Identical inputs
//! produce byte-identical JSON. Exit codes: 0 success, 1 reproduction
//! mismatch, 2 invalid input, 3 size cap exceeded.

use clap::{Args, Parser, Subcommand, ValueEnum};
use orecode_core::bounds::{self, BoundCertificate, Mode};
use orecode_core::code::{self, Metric, SkewCode};
use orecode_core::equiv::{self, PolyShape, TrinomialShape, WitnessOutcome};
use orecode_core::error::Error;
use orecode_core::field::{FieldAutomorphism, FieldElement, FiniteField, SubfieldEmbedding};
use orecode_core::frame::{DefiningSet, ExtensionFrame, FrameOptions};
use orecode_core::skew::SkewPoly;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::sync::Arc;

mod reproduce;

#[derive(Parser)]
#[command(name = "orecode", version, about = "skew polynomial rings, skew polycyclic codes, distance bounds, and code equivalence over finite fields")]
struct Cli {
    /// Field spec: `p^s` plus optional `mod=<c0,...,cs>` (ascending)
    #[arg(long, global = true)]
    field: Option<String>,
    /// Frobenius power r of sigma(a) = a^(p^r); defaults to 1 (identity on prime fields)
    #[arg(long, global = true)]
    sigma: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Text)]
    output: OutputMode,
    /// Global size cap (also via ORECODE_CAP)
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Worker threads for parallel searches
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for randomized verification samples
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Describe the working field
    Field,
    /// Skew polynomial arithmetic
    Poly {
        #[command(subcommand)]
        cmd: PolyCmd,
    },
    /// Splitting frames for x^e - 1
    Frame {
        #[command(subcommand)]
        cmd: FrameCmd,
    },
    /// Skew polycyclic codes
    Code {
        #[command(subcommand)]
        cmd: CodeCmd,
    },
    /// Designed-distance certificates
    Bound {
        #[command(subcommand)]
        cmd: BoundCmd,
    },
    /// Equivalence of ambient spaces
    Equiv {
        #[command(subcommand)]
        cmd: EquivCmd,
    },
    /// Re-run the published worked example and class-count tables
    ReproducePaper {
        /// Run the exhaustive minimum-distance scans as well
        #[arg(long)]
        deep: bool,
    },
}

#[derive(Subcommand)]
enum PolyCmd {
    Mul(TwoPolys),
    Div {
        #[command(flatten)]
        ab: TwoPolys,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        side: Side,
    },
    Gcrd(TwoPolys),
    Lclm(TwoPolys),
    Eval {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        at: String,
    },
    Exponent {
        #[arg(long)]
        poly: String,
        /// Iteration cap (default q^deg * mu)
        #[arg(long)]
        exp_cap: Option<u64>,
    },
    Central {
        #[arg(long)]
        poly: String,
    },
}

#[derive(Args)]
struct TwoPolys {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Side {
    Right,
    Left,
}

#[derive(Args)]
struct FrameArgs {
    /// Frame descriptor: `e=<int> [big-mod=<coeffs>] [embed=<index>] [alpha=<dlog>]`
    #[arg(long)]
    frame: Option<String>,
    /// Derive the exponent from this polynomial's right exponent
    #[arg(long)]
    poly: Option<String>,
}

#[derive(Subcommand)]
enum FrameCmd {
    Build(FrameArgs),
    Roots(FrameArgs),
    Orbits(FrameArgs),
}

#[derive(Args)]
struct CodeArgs {
    #[arg(long)]
    modulus: String,
    #[arg(long, default_value = "1")]
    gen: String,
}

#[derive(Subcommand)]
enum CodeCmd {
    Build(CodeArgs),
    Gm(CodeArgs),
    Dmin {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value = "hamming")]
        metric: String,
        /// Rank subfield order q'
        #[arg(long)]
        sub: Option<u64>,
        /// Run the full projective scan instead of the bounded quick look
        #[arg(long)]
        deep: bool,
    },
    Shift {
        #[command(flatten)]
        code: CodeArgs,
        /// Comma-separated coordinate literals, e.g. `0,1,g^3`
        #[arg(long)]
        v: String,
    },
}

#[derive(Args)]
struct TsetArgs {
    /// Comma-separated defining-set indices
    #[arg(long)]
    tset: String,
    #[arg(long)]
    e: u64,
}

#[derive(Subcommand)]
enum BoundCmd {
    Bch(TsetArgs),
    Ht {
        #[command(flatten)]
        t: TsetArgs,
        #[arg(long, default_value_t = 3)]
        rmax: u64,
    },
    Roos {
        #[command(flatten)]
        t: TsetArgs,
        #[arg(long, default_value_t = 3)]
        rmax: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
        mode: ModeArg,
    },
    Search {
        #[command(flatten)]
        t: TsetArgs,
        #[arg(long, default_value_t = 3)]
        rmax: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
    },
    Mrd {
        #[command(flatten)]
        t: TsetArgs,
        #[arg(long, default_value_t = 3)]
        rmax: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
        mode: ModeArg,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Strict,
    Lenient,
    Both,
}

#[derive(Subcommand)]
enum EquivCmd {
    Test {
        #[arg(long, default_value = "trinomial")]
        kind: String,
        #[arg(long, default_value = "hamming")]
        metric: String,
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
    },
    Count {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: Option<u64>,
        /// Support indices for general shapes, e.g. `0,2,5`
        #[arg(long)]
        support: Option<String>,
        #[arg(long, default_value = "hamming")]
        metric: String,
        /// Central-modulus count variant
        #[arg(long)]
        two_sided: bool,
    },
    Reps {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: u64,
        #[arg(long, default_value = "hamming")]
        metric: String,
    },
    Classify {
        #[arg(long)]
        src: String,
    },
    Transport {
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
        #[arg(long)]
        gen: String,
        #[arg(long, default_value = "hamming")]
        metric: String,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CapExceeded(_) => 3,
                _ => 2,
            }
        }
    };
    std::process::exit(code);
}

struct Ctx {
    aut: FieldAutomorphism,
    output: OutputMode,
    cap: u64,
    seed: u64,
}

impl Ctx {
    fn field(&self) -> &Arc<FiniteField> {
        self.aut.field()
    }

    fn emit(&self, text: Vec<String>, json: Value) {
        match self.output {
            OutputMode::Text => {
                for line in text {
                    println!("{line}");
                }
            }
            OutputMode::Json => {
                let mut obj = json;
                if let Value::Object(ref mut map) = obj {
                    map.insert("schema".into(), json!(1));
                }
                println!("{}", serde_json::to_string(&obj).unwrap());
            }
        }
    }
}

fn global_cap(cli: &Cli) -> u64 {
    cli.cap
        .or_else(|| std::env::var("ORECODE_CAP").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(orecode_core::FIELD_SIZE_CAP)
}

fn build_ctx(cli: &Cli) -> Result<Ctx, Error> {
    let spec = cli
        .field
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("--field is required for this command".into()))?;
    let cap = global_cap(cli);
    let field = FiniteField::parse_spec_with_cap(spec, cap)?;
    let r = cli.sigma.unwrap_or(if field.degree() > 1 { 1 } else { 0 });
    let aut = FieldAutomorphism::new(field, r)?;
    Ok(Ctx { aut, output: cli.output, cap, seed: cli.seed })
}

fn run(cli: &Cli) -> Result<i32, Error> {
    match &cli.cmd {
        Cmd::Field => {
            let ctx = build_ctx(cli)?;
            let f = ctx.field();
            let aut = &ctx.aut;
            ctx.emit(
                vec![
                    format!("field GF({}^{}) with {} elements", f.characteristic(), f.degree(), f.order()),
                    format!("modulus coefficients (ascending): {:?}", f.modulus()),
                    format!("designated generator g has order {}", f.order() - 1),
                    format!(
                        "sigma = tau^{} of order {}, fixed subfield GF({})",
                        aut.frobenius_power(),
                        aut.order(),
                        aut.fixed_size()
                    ),
                ],
                json!({
                    "p": f.characteristic(),
                    "s": f.degree(),
                    "q": f.order(),
                    "modulus": f.modulus(),
                    "sigma_power": aut.frobenius_power(),
                    "sigma_order": aut.order(),
                    "fixed_subfield": aut.fixed_size(),
                }),
            );
            Ok(0)
        }
        Cmd::Poly { cmd } => run_poly(cli, cmd),
        Cmd::Frame { cmd } => run_frame(cli, cmd),
        Cmd::Code { cmd } => run_code(cli, cmd),
        Cmd::Bound { cmd } => run_bound(cli, cmd),
        Cmd::Equiv { cmd } => run_equiv(cli, cmd),
        Cmd::ReproducePaper { deep } => reproduce::run(cli.output == OutputMode::Json, *deep),
    }
}

fn run_poly(cli: &Cli, cmd: &PolyCmd) -> Result<i32, Error> {
    let ctx = build_ctx(cli)?;
    let aut = &ctx.aut;
    match cmd {
        PolyCmd::Mul(ab) => {
            let a = SkewPoly::parse(aut, &ab.a)?;
            let b = SkewPoly::parse(aut, &ab.b)?;
            let p = a.mul(&b);
            ctx.emit(vec![p.display()], json!({ "product": p.display() }));
        }
        PolyCmd::Div { ab, side } => {
            let a = SkewPoly::parse(aut, &ab.a)?;
            let b = SkewPoly::parse(aut, &ab.b)?;
            let (q, r) = match side {
                Side::Right => a.right_divmod(&b)?,
                Side::Left => a.left_divmod(&b)?,
            };
            ctx.emit(
                vec![format!("quotient: {}", q.display()), format!("remainder: {}", r.display())],
                json!({ "quotient": q.display(), "remainder": r.display() }),
            );
        }
        PolyCmd::Gcrd(ab) => {
            let a = SkewPoly::parse(aut, &ab.a)?;
            let b = SkewPoly::parse(aut, &ab.b)?;
            let (d, u, v) = SkewPoly::gcrd_extended(&a, &b)?;
            ctx.emit(
                vec![
                    format!("gcrd: {}", d.display()),
                    format!("u: {}", u.display()),
                    format!("v: {}", v.display()),
                ],
                json!({ "gcrd": d.display(), "u": u.display(), "v": v.display() }),
            );
        }
        PolyCmd::Lclm(ab) => {
            let a = SkewPoly::parse(aut, &ab.a)?;
            let b = SkewPoly::parse(aut, &ab.b)?;
            let m = SkewPoly::lclm(&a, &b)?;
            ctx.emit(vec![m.display()], json!({ "lclm": m.display() }));
        }
        PolyCmd::Eval { poly, at } => {
            let p = SkewPoly::parse(aut, poly)?;
            let a = ctx.field().parse_element(at)?;
            let v = p.evaluate_right(a);
            ctx.emit(
                vec![ctx.field().format_element(v)],
                json!({ "value": ctx.field().format_element(v) }),
            );
        }
        PolyCmd::Exponent { poly, exp_cap } => {
            let p = SkewPoly::parse(aut, poly)?;
            let cap = exp_cap.unwrap_or_else(|| p.default_exponent_cap());
            let e = p.right_exponent(cap)?;
            ctx.emit(vec![format!("{e}")], json!({ "exponent": e }));
        }
        PolyCmd::Central { poly } => {
            let p = SkewPoly::parse(aut, poly)?;
            let c = p.is_central();
            let i = p.is_invariant();
            ctx.emit(
                vec![format!("central: {c}"), format!("invariant: {i}")],
                json!({ "central": c, "invariant": i }),
            );
        }
    }
    Ok(0)
}

fn parse_frame_desc(desc: Option<&str>) -> Result<(Option<u64>, FrameOptions), Error> {
    let mut e = None;
    let mut opts = FrameOptions::default();
    if let Some(desc) = desc {
        for tok in desc.split_whitespace() {
            if let Some(v) = tok.strip_prefix("e=") {
                e = Some(v.parse().map_err(|_| Error::Parse(format!("bad exponent {v:?}")))?);
            } else if let Some(v) = tok.strip_prefix("big-mod=") {
                let coeffs: Result<Vec<u64>, Error> = v
                    .split(',')
                    .map(|c| c.parse::<u64>().map_err(|_| Error::Parse(format!("bad coefficient {c:?}"))))
                    .collect();
                opts.big_modulus = Some(coeffs?);
            } else if let Some(v) = tok.strip_prefix("embed=") {
                opts.embed_index = Some(v.parse().map_err(|_| Error::Parse(format!("bad embed index {v:?}")))?);
            } else if let Some(v) = tok.strip_prefix("alpha=") {
                opts.normal_dlog = Some(v.parse().map_err(|_| Error::Parse(format!("bad alpha dlog {v:?}")))?);
            } else {
                return Err(Error::Parse(format!("unknown frame token {tok:?}")));
            }
        }
    }
    Ok((e, opts))
}

fn build_frame_from_args(ctx: &Ctx, args: &FrameArgs) -> Result<ExtensionFrame, Error> {
    let (e, mut opts) = parse_frame_desc(args.frame.as_deref())?;
    opts.cap = Some(ctx.cap);
    match (e, &args.poly) {
        (Some(e), _) => ExtensionFrame::build(&ctx.aut, e, &opts),
        (None, Some(poly)) => {
            let p = SkewPoly::parse(&ctx.aut, poly)?;
            ExtensionFrame::build_from_poly(&ctx.aut, &p, &opts)
        }
        (None, None) => Err(Error::InvalidArgument("need --frame e=<int> or --poly".into())),
    }
}

fn run_frame(cli: &Cli, cmd: &FrameCmd) -> Result<i32, Error> {
    let ctx = build_ctx(cli)?;
    let args = match cmd {
        FrameCmd::Build(a) | FrameCmd::Roots(a) | FrameCmd::Orbits(a) => a,
    };
    let frame = build_frame_from_args(&ctx, args)?;
    let bigf = frame.big_ring().field().clone();
    match cmd {
        FrameCmd::Build(_) => {
            ctx.emit(
                vec![
                    format!("e = {}, m = {}, mu = {}", frame.exponent(), frame.orbit_length(), frame.mu()),
                    format!("big field GF({}) with modulus {:?}", bigf.order(), bigf.modulus()),
                    format!(
                        "embedding {} of {}, alpha = {}, beta = {}",
                        frame.embedding_index(),
                        frame.embedding_count(),
                        bigf.format_element(frame.alpha()),
                        bigf.format_element(frame.beta())
                    ),
                ],
                json!({
                    "e": frame.exponent(),
                    "m": frame.orbit_length(),
                    "mu": frame.mu(),
                    "big_order": bigf.order(),
                    "big_modulus": bigf.modulus(),
                    "embed_index": frame.embedding_index(),
                    "embed_count": frame.embedding_count(),
                    "alpha": bigf.format_element(frame.alpha()),
                    "beta": bigf.format_element(frame.beta()),
                }),
            );
        }
        FrameCmd::Roots(_) => {
            let dlogs: Vec<u64> = (0..frame.exponent())
                .map(|i| bigf.dlog(frame.root(i)).unwrap_or(0))
                .collect();
            ctx.emit(
                vec![format!("root dlogs of theta^i(beta): {dlogs:?}")],
                json!({ "root_dlogs": dlogs }),
            );
        }
        FrameCmd::Orbits(_) => {
            let mut lines = Vec::new();
            let mut arr = Vec::new();
            for i in 0..frame.mu() {
                let m = frame.orbit_min_poly(i)?;
                lines.push(format!("orbit {i}: {}", m.display()));
                arr.push(json!({ "orbit": i, "poly": m.display() }));
            }
            ctx.emit(lines, json!({ "orbits": arr }));
        }
    }
    Ok(0)
}

fn parse_vector(field: &Arc<FiniteField>, text: &str) -> Result<Vec<FieldElement>, Error> {
    text.split(',').map(|t| field.parse_element(t.trim())).collect()
}

fn format_vector(field: &Arc<FiniteField>, v: &[FieldElement]) -> String {
    v.iter().map(|&c| field.format_element(c)).collect::<Vec<_>>().join(",")
}

fn parse_metric(ctx: &Ctx, metric: &str, sub: Option<u64>) -> Result<Metric, Error> {
    let (name, inline_sub) = match metric.split_once(':') {
        Some((m, s)) => (
            m,
            Some(s.parse::<u64>().map_err(|_| Error::Parse(format!("bad subfield order {s:?}")))?),
        ),
        None => (metric, None),
    };
    match name {
        "hamming" => Ok(Metric::Hamming),
        "rank" => {
            let f = ctx.field();
            let sub_order = inline_sub.or(sub).unwrap_or(ctx.aut.fixed_size());
            let t = subfield_degree(f, sub_order)?;
            Ok(Metric::Rank(Arc::new(SubfieldEmbedding::new(f.clone(), t, None)?)))
        }
        other => Err(Error::Parse(format!("unknown metric {other:?}"))),
    }
}

fn subfield_degree(f: &Arc<FiniteField>, sub_order: u64) -> Result<u32, Error> {
    let p = f.characteristic();
    let mut t = 0u32;
    let mut v = 1u64;
    while v < sub_order {
        v *= p;
        t += 1;
    }
    if v != sub_order || t == 0 || !f.degree().is_multiple_of(t) {
        return Err(Error::InvalidArgument(format!(
            "{} is not the order of a subfield of GF({})",
            sub_order,
            f.order()
        )));
    }
    Ok(t)
}

fn run_code(cli: &Cli, cmd: &CodeCmd) -> Result<i32, Error> {
    let ctx = build_ctx(cli)?;
    let aut = &ctx.aut;
    let args = match cmd {
        CodeCmd::Build(a) | CodeCmd::Gm(a) => a,
        CodeCmd::Dmin { code, .. } => code,
        CodeCmd::Shift { code, .. } => code,
    };
    let modulus = SkewPoly::parse(aut, &args.modulus)?;
    let gen = SkewPoly::parse(aut, &args.gen)?;
    let code_obj = SkewCode::build(&modulus, &gen)?;
    match cmd {
        CodeCmd::Build(_) => {
            ctx.emit(
                vec![format!(
                    "[{}, {}] code over GF({})",
                    code_obj.length(),
                    code_obj.dimension(),
                    ctx.field().order()
                )],
                json!({ "n": code_obj.length(), "k": code_obj.dimension(), "q": ctx.field().order() }),
            );
        }
        CodeCmd::Gm(_) => {
            let gm = code_obj.generator_matrix()?;
            let lines: Vec<String> = gm.iter().map(|row| format_vector(ctx.field(), row)).collect();
            let rows: Vec<Value> = lines.iter().map(|row| json!(row)).collect();
            ctx.emit(lines, json!({ "rows": rows }));
        }
        CodeCmd::Dmin { metric, sub, deep, .. } => {
            let m = parse_metric(&ctx, metric, *sub)?;
            let budget = if *deep { code::DEFAULT_DISTANCE_BUDGET } else { 1 << 24 };
            if *deep {
                let q = ctx.field().order() as u128;
                let mut total = 0u128;
                let mut pw = 1u128;
                for _ in 0..code_obj.dimension() {
                    total += pw;
                    pw = pw.saturating_mul(q);
                }
                eprintln!("deep scan over {total} normalized codewords; this may take a while");
            }
            let rep = code_obj.min_distance(&m, budget)?;
            ctx.emit(
                vec![format!(
                    "d = {} ({}, {})",
                    rep.minimum,
                    rep.metric,
                    if rep.exhaustive { "exhaustive" } else { "budget-limited" }
                )],
                json!({
                    "n": code_obj.length(),
                    "k": code_obj.dimension(),
                    "d": rep.minimum,
                    "metric": rep.metric,
                    "witness": format_vector(ctx.field(), &rep.witness),
                    "exhaustive": rep.exhaustive,
                }),
            );
        }
        CodeCmd::Shift { v, .. } => {
            let vec = parse_vector(ctx.field(), v)?;
            let shifted = code_obj.polycyclic_shift(&vec)?;
            let in_code = code_obj.contains(&shifted);
            ctx.emit(
                vec![
                    format!("shifted: {}", format_vector(ctx.field(), &shifted)),
                    format!("member: {in_code}"),
                ],
                json!({
                    "shifted": format_vector(ctx.field(), &shifted),
                    "member": in_code,
                }),
            );
        }
    }
    Ok(0)
}

fn cert_json(cert: &BoundCertificate) -> Value {
    json!({
        "kind": format!("{:?}", cert.kind),
        "a": cert.a,
        "b": cert.b,
        "c": cert.c,
        "delta": cert.delta,
        "r": cert.r,
        "offsets": cert.offsets,
        "e": cert.e,
        "mode": format!("{:?}", cert.mode),
        "value": cert.value(),
        "rank_applicable": bounds::rank_applicability(cert),
    })
}

fn cert_text(cert: &BoundCertificate) -> String {
    format!(
        "{:?} value {} (a={}, b={}, delta={}, r={}, offsets={:?}, mode={:?})",
        cert.kind,
        cert.value(),
        cert.a,
        cert.b,
        cert.delta,
        cert.r,
        cert.offsets,
        cert.mode
    )
}

fn parse_tset(ctx: &Ctx, args: &TsetArgs) -> Result<DefiningSet, Error> {
    let ids: Result<BTreeSet<u64>, Error> = if args.tset.trim().is_empty() {
        Ok(BTreeSet::new())
    } else {
        args.tset
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad index {t:?}"))))
            .collect()
    };
    DefiningSet::new(args.e, ctx.aut.order() as u64, ids?)
}

fn run_bound(cli: &Cli, cmd: &BoundCmd) -> Result<i32, Error> {
    let ctx = build_ctx(cli)?;
    match cmd {
        BoundCmd::Bch(targs) => {
            let t = parse_tset(&ctx, targs)?;
            let cert = bounds::bch_search(&t);
            ctx.emit(vec![cert_text(&cert)], json!({ "certificate": cert_json(&cert) }));
        }
        BoundCmd::Ht { t: targs, rmax } => {
            let t = parse_tset(&ctx, targs)?;
            let cert = bounds::ht_search(&t, *rmax);
            ctx.emit(vec![cert_text(&cert)], json!({ "certificate": cert_json(&cert) }));
        }
        BoundCmd::Roos { t: targs, rmax, mode } => {
            let t = parse_tset(&ctx, targs)?;
            let mut lines = Vec::new();
            let mut obj = serde_json::Map::new();
            for (name, m) in mode_list(*mode) {
                let cert = bounds::roos_search(&t, *rmax, m);
                lines.push(format!("{name}: {}", cert_text(&cert)));
                obj.insert(name.into(), cert_json(&cert));
            }
            ctx.emit(lines, Value::Object(obj));
        }
        BoundCmd::Search { t: targs, rmax, mode } => {
            let t = parse_tset(&ctx, targs)?;
            let mut lines = Vec::new();
            let mut obj = serde_json::Map::new();
            for (name, m) in mode_list(*mode) {
                let bch = bounds::bch_search(&t);
                let ht = bounds::ht_search(&t, *rmax);
                let roos = bounds::roos_search(&t, *rmax, m);
                lines.push(format!("{name} bch: {}", cert_text(&bch)));
                lines.push(format!("{name} ht: {}", cert_text(&ht)));
                lines.push(format!("{name} roos: {}", cert_text(&roos)));
                obj.insert(
                    name.into(),
                    json!({
                        "bch": cert_json(&bch),
                        "ht": cert_json(&ht),
                        "roos": cert_json(&roos),
                    }),
                );
            }
            ctx.emit(lines, Value::Object(obj));
        }
        BoundCmd::Mrd { t: targs, rmax, mode } => {
            let t = parse_tset(&ctx, targs)?;
            let m = match mode {
                ModeArg::Lenient => Mode::Lenient,
                _ => Mode::Strict,
            };
            let cert = bounds::roos_search(&t, *rmax, m);
            let declared = bounds::mrd_designed_check(&t, &cert)?;
            ctx.emit(
                vec![
                    cert_text(&cert),
                    format!("representatives: {:?}", t.representatives()),
                    format!("mrd_by_design: {declared}"),
                ],
                json!({
                    "certificate": cert_json(&cert),
                    "representatives": t.representatives(),
                    "mrd_by_design": declared,
                }),
            );
        }
    }
    Ok(0)
}

fn mode_list(m: ModeArg) -> Vec<(&'static str, Mode)> {
    match m {
        ModeArg::Strict => vec![("strict", Mode::Strict)],
        ModeArg::Lenient => vec![("lenient", Mode::Lenient)],
        ModeArg::Both => vec![("strict", Mode::Strict), ("lenient", Mode::Lenient)],
    }
}

fn equiv_metric_parts(ctx: &Ctx, metric: &str) -> Result<Option<u64>, Error> {
    match metric.split_once(':') {
        Some(("rank", s)) => Ok(Some(
            s.parse::<u64>().map_err(|_| Error::Parse(format!("bad subfield order {s:?}")))?,
        )),
        None if metric == "rank" => Ok(Some(ctx.aut.fixed_size())),
        None if metric == "hamming" => Ok(None),
        _ => Err(Error::Parse(format!("unknown metric {metric:?}"))),
    }
}

fn run_equiv(cli: &Cli, cmd: &EquivCmd) -> Result<i32, Error> {
    let ctx = build_ctx(cli)?;
    let aut = &ctx.aut;
    let f = ctx.field().clone();
    match cmd {
        EquivCmd::Test { kind, metric, src, dst } => {
            let sub_order = equiv_metric_parts(&ctx, metric)?;
            let src_poly = SkewPoly::parse(aut, src)?;
            let dst_poly = SkewPoly::parse(aut, dst)?;
            let outcome: WitnessOutcome = match kind.as_str() {
                "trinomial" => {
                    let s = TrinomialShape::from_modulus(&src_poly)?;
                    let d = TrinomialShape::from_modulus(&dst_poly)?;
                    match sub_order {
                        None => match equiv::trinomial_hamming_witness(aut, &s, &d)? {
                            Some(w) => WitnessOutcome::Witness(w),
                            None => WitnessOutcome::NoWitness,
                        },
                        Some(q2) => {
                            let emb = SubfieldEmbedding::new(f.clone(), subfield_degree(&f, q2)?, None)?;
                            match equiv::trinomial_rank_witness(aut, &s, &d, &emb)? {
                                Some(w) => WitnessOutcome::Witness(w),
                                None => WitnessOutcome::NoWitness,
                            }
                        }
                    }
                }
                "general" => {
                    let s = PolyShape::from_modulus(&src_poly)?;
                    let d = PolyShape::from_modulus(&dst_poly)?;
                    match sub_order {
                        None => equiv::general_hamming_witness(aut, &s, &d)?,
                        Some(q2) => {
                            let emb = SubfieldEmbedding::new(f.clone(), subfield_degree(&f, q2)?, None)?;
                            equiv::general_rank_witness(aut, &s, &d, &emb)?
                        }
                    }
                }
                other => return Err(Error::Parse(format!("unknown kind {other:?}"))),
            };
            let (equivalent, alpha, reason) = match &outcome {
                WitnessOutcome::Witness(w) => {
                    let ok = equiv::random_multiplicativity_check(
                        aut,
                        w.alpha,
                        &src_poly,
                        &dst_poly,
                        64,
                        ctx.seed,
                    );
                    if !ok {
                        return Err(Error::Internal("witness failed randomized verification".into()));
                    }
                    (true, Some(f.format_element(w.alpha)), "witness")
                }
                WitnessOutcome::NoWitness => (false, None, "no witness"),
                WitnessOutcome::SupportMismatch => (false, None, "support mismatch"),
            };
            ctx.emit(
                vec![format!(
                    "equivalent: {equivalent}{}{}",
                    alpha.as_deref().map(|a| format!(" (alpha = {a})")).unwrap_or_default(),
                    if reason == "support mismatch" { " [support mismatch]" } else { "" }
                )],
                json!({
                    "equivalent": equivalent,
                    "alpha": alpha,
                    "reason": reason,
                }),
            );
        }
        EquivCmd::Count { n, l, support, metric, two_sided } => {
            let sub_order = equiv_metric_parts(&ctx, metric)?;
            let count: u128 = match (l, support) {
                (Some(l), None) => match sub_order {
                    None => equiv::count_hamming_classes(aut, *n, *l, *two_sided) as u128,
                    Some(q2) => equiv::count_rank_classes(aut, *n, *l, q2) as u128,
                },
                (None, Some(sup)) => {
                    let ids: Result<Vec<u64>, Error> = sup
                        .split(',')
                        .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad index {t:?}"))))
                        .collect();
                    equiv::count_general_classes(aut, *n, &ids?, sub_order)
                }
                _ => return Err(Error::InvalidArgument("give exactly one of --l or --support".into())),
            };
            ctx.emit(vec![format!("{count}")], json!({ "class_count": count.to_string() }));
        }
        EquivCmd::Reps { n, l, metric } => {
            let sub_order = equiv_metric_parts(&ctx, metric)?;
            let reps = match sub_order {
                None => equiv::hamming_representatives(aut, *n, *l),
                Some(q2) => equiv::rank_representatives(aut, *n, *l, q2),
            };
            let lines: Vec<String> = reps.iter().map(|s| s.modulus(aut).display()).collect();
            let arr: Vec<Value> = lines.iter().map(|s| json!(s)).collect();
            ctx.emit(lines, json!({ "representatives": arr }));
        }
        EquivCmd::Classify { src } => {
            let src_poly = SkewPoly::parse(aut, src)?;
            let shape = TrinomialShape::from_modulus(&src_poly)?;
            let reps = equiv::hamming_representatives(aut, shape.n, shape.ell);
            let count = equiv::count_hamming_classes(aut, shape.n, shape.ell, false);
            let mut found = None;
            for rep in &reps {
                if let Some(w) = equiv::trinomial_hamming_witness(aut, rep, &shape)? {
                    found = Some((rep.clone(), w.alpha));
                    break;
                }
            }
            let (rep, alpha) = found.ok_or_else(|| Error::Internal("representatives must cover".into()))?;
            ctx.emit(
                vec![
                    format!("representative: {}", rep.modulus(aut).display()),
                    format!("alpha: {}", f.format_element(alpha)),
                    format!("class_count: {count}"),
                ],
                json!({
                    "equivalent": true,
                    "alpha": f.format_element(alpha),
                    "class_count": count,
                    "representative": rep.modulus(aut).display(),
                }),
            );
        }
        EquivCmd::Transport { src, dst, gen, metric } => {
            let sub_order = equiv_metric_parts(&ctx, metric)?;
            let src_poly = SkewPoly::parse(aut, src)?;
            let dst_poly = SkewPoly::parse(aut, dst)?;
            let g = SkewPoly::parse(aut, gen)?;
            let s = PolyShape::from_modulus(&src_poly)?;
            let d = PolyShape::from_modulus(&dst_poly)?;
            let outcome = match sub_order {
                None => equiv::general_hamming_witness(aut, &s, &d)?,
                Some(q2) => {
                    let emb = SubfieldEmbedding::new(f.clone(), subfield_degree(&f, q2)?, None)?;
                    equiv::general_rank_witness(aut, &s, &d, &emb)?
                }
            };
            let w = match outcome {
                WitnessOutcome::Witness(w) => w,
                WitnessOutcome::NoWitness => {
                    return Err(Error::InvalidArgument("the ambient spaces are not equivalent".into()))
                }
                WitnessOutcome::SupportMismatch => {
                    return Err(Error::InvalidArgument("support mismatch: definitively inequivalent".into()))
                }
            };
            let code_obj = SkewCode::build(&dst_poly, &g)?;
            let moved = equiv::transport_code(&code_obj, w.alpha, &src_poly)?;
            ctx.emit(
                vec![
                    format!("alpha: {}", f.format_element(w.alpha)),
                    format!("generator: {}", moved.generator().display()),
                    format!(
                        "[{}, {}] over modulus {}",
                        moved.length(),
                        moved.dimension(),
                        src_poly.display()
                    ),
                ],
                json!({
                    "alpha": f.format_element(w.alpha),
                    "generator": moved.generator().display(),
                    "n": moved.length(),
                    "k": moved.dimension(),
                }),
            );
        }
    }
    Ok(0)
}
