//! `farey-sheaf`: JSON front end to the farey_sheaf library, plus SVG rendering.
//!
//! Exit codes: 0 success, 2 bad input, 3 precision exhausted (stderr names the
//! budget to retry with), 1 for other failures.

use clap::{Args, Parser, Subcommand, ValueEnum};
use farey_sheaf::continued_fractions::{self as cf, OddQuotients, PrimePicker};
use farey_sheaf::division_engine as div;
use farey_sheaf::farey_geometry::{self as fg, Endpoint};
use farey_sheaf::render::{self, Geodesic, Model, RenderObject, RenderSpec};
use farey_sheaf::sheaf_calculus::{self as sc, SheafClass, SheafObject, StableClass};
use farey_sheaf::{Error, IrrationalNumber, LatticeCoords, ReducedFraction, Result, ThetaLatticeElement};
use num_bigint::BigInt;
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "farey-sheaf", version, about = "Farey diagrams, continued fractions and class-level sheaf calculus")]
struct Cli {
    /// Output format; svg applies to `render` only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Number of partial quotients usable from a finite expansion.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Seed for randomized choices (odd quotients of `cf construct`).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// key=value render style file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    group: Group,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Group {
    /// Continued fractions.
    #[command(subcommand)]
    Cf(CfCmd),
    /// Farey diagrams, trees, products and roller coasters.
    #[command(subcommand)]
    Farey(FareyCmd),
    /// Classes, Hom/Ext and limit objects.
    #[command(subcommand)]
    Sheaf(SheafCmd),
    /// Interval division and the game of beads.
    #[command(subcommand)]
    Divide(DivideCmd),
    /// Pictures.
    #[command(subcommand)]
    Render(RenderCmd),
}

#[derive(Args)]
struct Theta {
    /// Continued fraction such as "[1;(1)]" or "[0;1,2,(1,3)]".
    #[arg(allow_hyphen_values = true)]
    theta: String,
}

#[derive(Subcommand)]
enum CfCmd {
    /// β_0 … β_{n−1} together with the row i = −1.
    Convergents {
        #[command(flatten)]
        t: Theta,
        #[arg(short = 'n', default_value_t = 10)]
        n: usize,
    },
    /// β_{i,0}, …, β_{i,a_{i+2}}.
    Semiconvergents {
        #[command(flatten)]
        t: Theta,
        #[arg(short = 'i', allow_hyphen_values = true)]
        i: i64,
    },
    /// c_i(θ) and c(θ).
    Ctheta {
        #[command(flatten)]
        t: Theta,
        #[arg(long, default_value_t = 40)]
        steps: usize,
    },
    /// d_i = gcd(q_{2i}, a_{2i+2}).
    Dchain {
        #[command(flatten)]
        t: Theta,
        #[arg(short = 'n', default_value_t = 10)]
        n: usize,
    },
    /// Builds θ with End(O(θ⁻)) of unbounded dimension, from a seed (a0, a1, a2).
    Construct {
        #[arg(allow_hyphen_values = true)]
        a0: BigInt,
        a1: BigInt,
        a2: BigInt,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Largest odd-index quotient when --seed is given.
        #[arg(long, default_value_t = 3)]
        odd_max: u64,
    },
    /// max a_i for i ≥ 1.
    Bound {
        #[command(flatten)]
        t: Theta,
        #[arg(long, default_value_t = 40)]
        depth: usize,
    },
}

#[derive(Subcommand)]
enum FareyCmd {
    /// F_{θ,r}: triangles, types and labels.
    Diagram {
        #[command(flatten)]
        t: Theta,
        #[arg(allow_hyphen_values = true)]
        r: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// The binary tree T_{θ,r}.
    Tree {
        #[command(flatten)]
        t: Theta,
        #[arg(allow_hyphen_values = true)]
        r: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Cutting sequence of the geodesic from ∞ to θ.
    Cutting {
        #[command(flatten)]
        t: Theta,
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// r₁ ·_θ r₂.
    Product {
        #[arg(allow_hyphen_values = true)]
        r1: String,
        #[arg(allow_hyphen_values = true)]
        r2: String,
        #[command(flatten)]
        t: Theta,
    },
    /// b_{θ,θ'} for θ < θ'.
    Bottom {
        #[arg(allow_hyphen_values = true)]
        theta: String,
        #[arg(allow_hyphen_values = true)]
        theta_prime: String,
    },
    /// The roller coaster F_{θ,1/0} as a directed graph.
    Coaster {
        #[command(flatten)]
        t: Theta,
        #[arg(long, default_value_t = 5)]
        depth: usize,
    },
    /// Shortest directed roller-coaster path and its bundle.
    Path {
        #[command(flatten)]
        t: Theta,
        #[arg(allow_hyphen_values = true)]
        from: String,
        #[arg(allow_hyphen_values = true)]
        to: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
}

#[derive(Subcommand)]
enum SheafCmd {
    /// χ(v₁, v₂) for vectors written d/r.
    Chi {
        #[arg(allow_hyphen_values = true)]
        v1: String,
        #[arg(allow_hyphen_values = true)]
        v2: String,
    },
    /// Hom and Ext¹ between stable classes.
    Hom {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Is E → F → G → E[1] a minimal triangle?
    Minimal {
        #[arg(allow_hyphen_values = true)]
        e: String,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// All minimal triangles up to a rank, with finite slopes in [lo, hi].
    Enumerate {
        #[arg(long, default_value_t = 3)]
        max_rank: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        hi: i64,
    },
    /// Telescoping identity for the class of O(θ⁻).
    Kclass {
        #[command(flatten)]
        t: Theta,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// dim End(O(θ⁻)) divides c(θ)².
    Bound {
        #[command(flatten)]
        t: Theta,
        #[arg(long, default_value_t = 40)]
        steps: usize,
    },
    /// Vanishing rules between stable sheaves and O(θ±) (write "[..]+" or "[..]-").
    Classify {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 8)]
        steps: usize,
    },
    /// Image class of a composite of Farey-type morphisms.
    Image {
        #[arg(allow_hyphen_values = true)]
        theta: String,
        #[arg(allow_hyphen_values = true)]
        theta_prime: String,
        #[arg(long, allow_hyphen_values = true)]
        via: Vec<String>,
    },
    /// Multiplicity of the simple object in the quotient category at λ.
    Multiplicity {
        #[arg(allow_hyphen_values = true)]
        v: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },
    /// θ⁺ ↠ O(u) ↠ O(r) ↪ O(w) ↪ θ'⁻.
    Witness {
        #[arg(allow_hyphen_values = true)]
        theta: String,
        #[arg(allow_hyphen_values = true)]
        theta_prime: String,
        #[arg(allow_hyphen_values = true)]
        r: String,
    },
}

#[derive(Args)]
struct Setup {
    #[arg(allow_hyphen_values = true)]
    theta: String,
    #[arg(allow_hyphen_values = true)]
    r: String,
}

#[derive(Subcommand)]
enum DivideCmd {
    /// Division tree of [0, |r|_θ].
    Tree {
        #[command(flatten)]
        s: Setup,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Division points up to a depth, as m,n with value m·θ + n.
    Points {
        #[command(flatten)]
        s: Setup,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// E_{[c,d]} from the game of beads; points written m,n.
    Beads {
        #[command(flatten)]
        s: Setup,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// 0 → E_{[c,e]} → E_{[c,d]} → E_{[e,d]} → 0 at class level.
    Ses {
        #[command(flatten)]
        s: Setup,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        e: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// rk_θ of a sum such as "2*1/1[1]" "5/2".
    Rank {
        #[command(flatten)]
        t: Theta,
        #[arg(required = true, allow_hyphen_values = true)]
        summands: Vec<String>,
    },
    /// Division points approaching a target rotated rank.
    Approx {
        #[command(flatten)]
        s: Setup,
        target: f64,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectKind {
    Tessellation,
    Diagram,
    Tree,
    Coaster,
}

#[derive(Subcommand)]
enum RenderCmd {
    /// Draws an object; diagram and tree need θ and r, coaster needs θ.
    Svg {
        object: String,
        #[arg(allow_hyphen_values = true)]
        theta: Option<String>,
        #[arg(allow_hyphen_values = true)]
        r: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        size: Option<u32>,
    },
}

enum Output {
    Json(serde_json::Value),
    Svg(String),
}

fn json<T: Serialize>(v: &T) -> Result<Output> {
    serde_json::to_value(v).map(Output::Json).map_err(|e| Error::InvalidInput(e.to_string()))
}

struct Ctx {
    budget: Option<usize>,
}

impl Ctx {
    fn theta(&self, s: &str) -> Result<IrrationalNumber> {
        let t: IrrationalNumber = s.parse()?;
        Ok(match self.budget {
            Some(b) => t.with_budget(b),
            None => t,
        })
    }

    fn endpoint(&self, s: &str) -> Result<Endpoint> {
        Ok(match s.parse::<Endpoint>()? {
            Endpoint::Irrational(_) => Endpoint::Irrational(self.theta(s)?),
            e => e,
        })
    }

    fn point(&self, s: &str, theta: &IrrationalNumber) -> Result<ThetaLatticeElement> {
        let bad = || Error::Parse(format!("expected a division point m,n, got {s:?}"));
        let (m, n) = s.split_once(',').ok_or_else(bad)?;
        Ok(ThetaLatticeElement::new(
            m.trim().parse::<BigInt>().map_err(|_| bad())?,
            n.trim().parse::<BigInt>().map_err(|_| bad())?,
            theta,
        ))
    }
}

fn frac(s: &str) -> Result<ReducedFraction> {
    s.parse()
}

/// A raw vector "d/r" (not necessarily primitive).
fn vector(s: &str) -> Result<(BigInt, BigInt)> {
    let bad = || Error::Parse(format!("expected a vector d/r, got {s:?}"));
    let t = s.trim();
    let t = t.strip_prefix("O(").and_then(|x| x.strip_suffix(')')).unwrap_or(t);
    match t.split_once('/') {
        Some((d, r)) => Ok((d.trim().parse().map_err(|_| bad())?, r.trim().parse().map_err(|_| bad())?)),
        None => Ok((t.parse().map_err(|_| bad())?, BigInt::from(1))),
    }
}

/// "k*d/r[1]": multiplicity, class and optional shift.
fn summand(s: &str, into: &mut SheafClass) -> Result<()> {
    let (mult, rest) = match s.split_once('*') {
        Some((k, rest)) => (k.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad multiplicity in {s:?}")))?, rest),
        None => (BigInt::from(1), s),
    };
    let (body, shift) = match rest.trim().strip_suffix("[1]") {
        Some(b) => (b, 1),
        None => (rest.trim(), 0),
    };
    into.push(body.parse::<StableClass>()?, shift, mult)
}

#[derive(Serialize)]
struct PointOut {
    #[serde(flatten)]
    coords: LatticeCoords,
    value: f64,
}

fn point_out(x: &ThetaLatticeElement) -> PointOut {
    PointOut { coords: x.coords(), value: x.to_f64() }
}

#[derive(Serialize)]
struct Big(#[serde(with = "farey_sheaf::bigjson")] BigInt);

#[derive(Serialize)]
struct GeodesicOut {
    from: [f64; 2],
    to: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    center: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    radius: Option<f64>,
}

fn run_cf(cmd: CfCmd, ctx: &Ctx, seed: Option<u64>) -> Result<Output> {
    match cmd {
        CfCmd::Convergents { t, n } => {
            if n == 0 {
                return Err(Error::InvalidInput("-n must be at least 1".into()));
            }
            json(&cf::convergents(&ctx.theta(&t.theta)?, n - 1)?.rows)
        }
        CfCmd::Semiconvergents { t, i } => json(&cf::semiconvergents(&ctx.theta(&t.theta)?, i)?),
        CfCmd::Ctheta { t, steps } => json(&cf::c_theta(&ctx.theta(&t.theta)?, steps)?),
        CfCmd::Dchain { t, n } => {
            let chain = cf::d_chain(&ctx.theta(&t.theta)?, n)?;
            json(&chain.into_iter().map(Big).collect::<Vec<_>>())
        }
        CfCmd::Construct { a0, a1, a2, depth, odd_max } => {
            let odd = match seed {
                Some(seed) => OddQuotients::Seeded { seed, max: odd_max.max(1) },
                None => OddQuotients::default(),
            };
            let theta = cf::construct_special_theta(&a0, &a1, &a2, depth, &odd, &PrimePicker::default())?;
            let n = theta.available().unwrap_or(0);
            let quotients = (0..n).map(|i| theta.quotient(i).map(Big)).collect::<Result<Vec<_>>>()?;
            let d = cf::d_chain(&theta, n.saturating_sub(1) / 2)?;
            json(&serde_json::json!({
                "theta": theta.to_string(),
                "quotients": quotients,
                "d_chain": d.into_iter().map(Big).collect::<Vec<_>>(),
            }))
        }
        CfCmd::Bound { t, depth } => json(&cf::bounded_quotients(&ctx.theta(&t.theta)?, depth)?),
    }
}

fn run_farey(cmd: FareyCmd, ctx: &Ctx) -> Result<Output> {
    match cmd {
        FareyCmd::Diagram { t, r, depth } => json(&fg::farey_diagram(&ctx.theta(&t.theta)?, &ctx.endpoint(&r)?, depth)?),
        FareyCmd::Tree { t, r, depth } => json(&fg::farey_tree(&ctx.theta(&t.theta)?, &frac(&r)?, depth)?),
        FareyCmd::Cutting { t, depth } => {
            let seq = fg::cutting_sequence(&ctx.theta(&t.theta)?, depth)?;
            json(&serde_json::json!({ "word": seq.to_string(), "sequence": seq }))
        }
        FareyCmd::Product { r1, r2, t } => {
            json(&fg::theta_product(&ctx.endpoint(&r1)?, &ctx.endpoint(&r2)?, &ctx.theta(&t.theta)?)?)
        }
        FareyCmd::Bottom { theta, theta_prime } => json(&fg::bottom(&ctx.theta(&theta)?, &ctx.theta(&theta_prime)?)?),
        FareyCmd::Coaster { t, depth } => json(&fg::roller_coaster(&ctx.theta(&t.theta)?, depth)?),
        FareyCmd::Path { t, from, to, depth } => {
            let rc = fg::roller_coaster(&ctx.theta(&t.theta)?, depth)?;
            json(&fg::shortest_path_bundle(&rc, &frac(&from)?, &frac(&to)?)?)
        }
    }
}

fn run_sheaf(cmd: SheafCmd, ctx: &Ctx) -> Result<Output> {
    let object = |s: &str| -> Result<SheafObject> {
        Ok(match s.parse::<SheafObject>()? {
            SheafObject::Limit(mut l) => {
                l.theta = match ctx.budget {
                    Some(b) => l.theta.with_budget(b),
                    None => l.theta,
                };
                SheafObject::Limit(l)
            }
            o => o,
        })
    };
    match cmd {
        SheafCmd::Chi { v1, v2 } => json(&sc::chi_pair(&vector(&v1)?, &vector(&v2)?)),
        SheafCmd::Hom { a, b } => json(&sc::hom_classify(&object(&a)?, &object(&b)?, 1)?),
        SheafCmd::Minimal { e, f, g } => json(&sc::is_minimal_triangle(&e.parse()?, &f.parse()?, &g.parse()?)),
        SheafCmd::Enumerate { max_rank, lo, hi } => json(&sc::enumerate_minimal_triangles(max_rank, lo, hi)?),
        SheafCmd::Kclass { t, depth } => json(&sc::kclass_colimit_check(&ctx.theta(&t.theta)?, depth)?),
        SheafCmd::Bound { t, steps } => {
            let desc = sc::LimitObjectDescriptor::new(&ctx.theta(&t.theta)?, sc::Side::Minus);
            json(&sc::endo_dim_bound(&desc, steps)?)
        }
        SheafCmd::Classify { x, y, steps } => json(&sc::hom_classify(&object(&x)?, &object(&y)?, steps)?),
        SheafCmd::Image { theta, theta_prime, via } => {
            let via = via.iter().map(|v| ctx.theta(v)).collect::<Result<Vec<_>>>()?;
            json(&sc::farey_type_image(&ctx.theta(&theta)?, &ctx.theta(&theta_prime)?, &via)?)
        }
        SheafCmd::Multiplicity { v, lambda } => json(&Big(sc::quotient_multiplicity(&vector(&v)?, &frac(&lambda)?))),
        SheafCmd::Witness { theta, theta_prime, r } => {
            json(&sc::witness_image_chain(&ctx.theta(&theta)?, &ctx.theta(&theta_prime)?, &frac(&r)?)?)
        }
    }
}

fn run_divide(cmd: DivideCmd, ctx: &Ctx) -> Result<Output> {
    let setup = |s: &Setup| -> Result<(IrrationalNumber, ReducedFraction)> { Ok((ctx.theta(&s.theta)?, frac(&s.r)?)) };
    match cmd {
        DivideCmd::Tree { s, depth } => {
            let (t, r) = setup(&s)?;
            json(&div::division_tree(&t, &r, depth)?)
        }
        DivideCmd::Points { s, depth } => {
            let (t, r) = setup(&s)?;
            json(&div::division_points(&t, &r, depth)?.iter().map(point_out).collect::<Vec<_>>())
        }
        DivideCmd::Beads { s, c, d } => {
            let (t, r) = setup(&s)?;
            json(&div::beads(&t, &r, &ctx.point(&c, &t)?, &ctx.point(&d, &t)?)?)
        }
        DivideCmd::Ses { s, c, e, d } => {
            let (t, r) = setup(&s)?;
            json(&div::ses_check(&t, &r, &ctx.point(&c, &t)?, &ctx.point(&e, &t)?, &ctx.point(&d, &t)?)?)
        }
        DivideCmd::Rank { t, summands } => {
            let theta = ctx.theta(&t.theta)?;
            let mut v = SheafClass::default();
            for s in &summands {
                summand(s, &mut v)?;
            }
            json(&point_out(&div::rotated_rank(&v, &theta)))
        }
        DivideCmd::Approx { s, target, tol } => {
            let (t, r) = setup(&s)?;
            json(&div::approximate_rank(&t, &r, target, tol)?)
        }
    }
}

fn run_render(cmd: RenderCmd, ctx: &Ctx, format: Format, config: Option<&str>) -> Result<Output> {
    let RenderCmd::Svg { object, theta, r, depth, model, size } = cmd;
    let mut spec = RenderSpec::default();
    if let Some(text) = config {
        spec.apply_config(text)?;
    }
    if let Some(d) = depth {
        spec.depth = d;
    }
    if let Some(m) = model {
        spec.model = m.parse::<Model>()?;
    }
    if let Some(s) = size {
        spec.size_px = s;
    }
    let need = |x: &Option<String>, what: &str| x.clone().ok_or_else(|| Error::InvalidInput(format!("{object} needs {what}")));
    let obj = match render::object_kind(&object)? {
        "tessellation" => RenderObject::Tessellation,
        "diagram" => {
            let t = ctx.theta(&need(&theta, "θ")?)?;
            RenderObject::Diagram(fg::farey_diagram(&t, &ctx.endpoint(&need(&r, "r")?)?, spec.depth)?)
        }
        "tree" => {
            let t = ctx.theta(&need(&theta, "θ")?)?;
            RenderObject::Tree(fg::farey_tree(&t, &frac(&need(&r, "r")?)?, spec.depth.min(8))?)
        }
        _ => RenderObject::Coaster(fg::roller_coaster(&ctx.theta(&need(&theta, "θ")?)?, spec.depth)?),
    };
    let rendered = render::render_svg::<f64>(&spec, &obj)?;
    match format {
        Format::Svg => Ok(Output::Svg(rendered.svg)),
        Format::Json => {
            let geos: Vec<GeodesicOut> = rendered
                .geodesics
                .iter()
                .map(|g| match *g {
                    Geodesic::Diameter { from, to } => GeodesicOut { from: [from.x, from.y], to: [to.x, to.y], center: None, radius: None },
                    Geodesic::Arc { from, to, center, radius } => GeodesicOut {
                        from: [from.x, from.y],
                        to: [to.x, to.y],
                        center: Some([center.x, center.y]),
                        radius: Some(radius),
                    },
                })
                .collect();
            json(&geos)
        }
    }
}

fn run(cli: Cli) -> Result<Output> {
    let ctx = Ctx { budget: cli.budget };
    if cli.format == Format::Svg && !matches!(cli.group, Group::Render(_)) {
        return Err(Error::InvalidInput("--format svg applies to `render` only".into()));
    }
    let config = match &cli.config {
        Some(p) => Some(std::fs::read_to_string(p).map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display())))?),
        None => None,
    };
    match cli.group {
        Group::Cf(c) => run_cf(c, &ctx, cli.seed),
        Group::Farey(c) => run_farey(c, &ctx),
        Group::Sheaf(c) => run_sheaf(c, &ctx),
        Group::Divide(c) => run_divide(c, &ctx),
        Group::Render(c) => run_render(c, &ctx, cli.format, config.as_deref()),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::PrecisionExhausted { .. } => 3,
        Error::PrimePickerExhausted { .. } | Error::FactorizationIncomplete(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.out.clone();
    match run(cli) {
        Ok(out) => {
            let text = match out {
                Output::Json(v) => format!("{v}\n"),
                Output::Svg(s) => s,
            };
            match out_path {
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, text) {
                        eprintln!("error: cannot write {}: {e}", p.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::PrecisionExhausted { needed } = e {
                eprintln!("hint: rerun with --budget {needed} or a longer expansion");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
