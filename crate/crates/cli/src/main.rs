//! Command-line front end: reads fans, divisors, decorations and sheaves as
//! JSON (or `fixture:NAME`) and prints JSON or text reports.
//!
//! Exit codes: 0 certified or ok, 1 not certified, 2 input error.

mod input;
mod svg;
mod text;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use toric_acyclic::cohomology::{
    cech_cohomology, graded_cohomology, line_bundle_cohomology_support, line_bundle_graded,
    polytope_difference_cohomology, GradedCohomology,
};
use toric_acyclic::decoration::{klyachko_filtrations, twist, validate_spec};
use toric_acyclic::fan::validate_fan;
use toric_acyclic::mori::{extremal_rays, matching_wall};
use toric_acyclic::polytope::{
    cap, cap_is_honest, cup, is_ample, is_nef, local_vertex, nef_split, scaled_cap_stabilizes, section_lattice_points,
    section_polyhedron, VirtualPolytope,
};
use toric_acyclic::resolution::{build_resolution, e1_vanishing_bound, verify_exactness};
use toric_acyclic::schema::{to_json_rows, SCHEMA_VERSION};
use toric_acyclic::vanishing::{
    check_extremal, check_perlman_smith, geometric_report, is_acyclicly_decorated, is_nefly_decorated, vanishing_bound,
    Bounds,
};
use toric_acyclic::{fixtures, Engine, Fan, TDivisor, ToricSheaf, WeilDecoration};

use input::{CliError, CliResult};

/// Largest `k` tried when checking that a scaled virtual intersection becomes honest.
const CAP_KMAX: usize = 16;

#[derive(Parser)]
#[command(name = "toric-acyclic", version, about = "Certify acyclicity of toric sheaves via Weil decorations")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Cech,
    Support,
    Polytope,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Cech => Engine::Cech,
            EngineArg::Support => Engine::Support,
            EngineArg::Polytope => Engine::Polytope,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Fan checks.
    Fan {
        #[command(subcommand)]
        action: FanCmd,
    },
    /// Section polyhedra, nefness and virtual polytope operations.
    Divisor {
        #[command(subcommand)]
        action: DivisorCmd,
    },
    /// Primitive collections and the Mori cone.
    Mori {
        #[command(subcommand)]
        action: MoriCmd,
    },
    /// Weil decorations.
    Decoration {
        #[command(subcommand)]
        action: DecorationCmd,
    },
    /// Graded sheaf cohomology.
    Cohomology(CohomologyArgs),
    /// Vanishing criteria.
    Check {
        #[command(subcommand)]
        action: CheckCmd,
    },
    /// The canonical resolution of a decorated sheaf.
    Resolve(ResolveArgs),
    /// Built-in fans and decorations.
    Fixtures {
        #[command(subcommand)]
        action: FixturesCmd,
    },
}

#[derive(Subcommand)]
enum FanCmd {
    Validate(FanArgs),
}

#[derive(Args)]
struct FanArgs {
    /// Fan JSON file or `fixture:NAME`.
    #[arg(long)]
    fan: String,
}

#[derive(Subcommand)]
enum DivisorCmd {
    /// Section polyhedron and its lattice points.
    Poly(DivisorArgs),
    /// Nef test with local vertices and relation pairings; exit 1 if not nef.
    Nef(DivisorArgs),
    /// Virtual intersection of two divisors.
    Cap(PairArgs),
    /// Virtual union of two divisors.
    Cup(PairArgs),
}

#[derive(Args)]
struct DivisorArgs {
    #[arg(long)]
    fan: String,
    /// Coefficients such as `1,0,-2`.
    #[arg(long, allow_hyphen_values = true)]
    divisor: String,
    /// Write a drawing of the polytope (dimension two only).
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    fan: String,
    #[arg(long, allow_hyphen_values = true)]
    divisor: String,
    #[arg(long, allow_hyphen_values = true)]
    other: String,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Subcommand)]
enum MoriCmd {
    /// Every primitive collection with focus and relation.
    List(FanArgs),
    /// Extremal collections and their matching walls.
    Extremal(FanArgs),
}

#[derive(Subcommand)]
enum DecorationCmd {
    /// Axiom checks; exit 2 when violated.
    Validate(DecorationArgs),
    /// Generic and join divisors, bounds and strata.
    Summary(DecorationSvgArgs),
    /// The Klyachko filtrations as a sheaf file.
    Klyachko(DecorationArgs),
    /// Shift every stratum divisor.
    Twist(DecorationTwistArgs),
}

#[derive(Args)]
struct DecorationArgs {
    /// Fan JSON file or `fixture:NAME`; optional for fixture decorations.
    #[arg(long)]
    fan: Option<String>,
    /// Decoration JSON file or `fixture:NAME`.
    #[arg(long)]
    decoration: String,
}

#[derive(Args)]
struct DecorationSvgArgs {
    #[command(flatten)]
    common: DecorationArgs,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct DecorationTwistArgs {
    #[command(flatten)]
    common: DecorationArgs,
    #[arg(long, allow_hyphen_values = true)]
    twist: String,
}

#[derive(Args)]
#[command(group(ArgGroup::new("object").required(true).args(["sheaf", "decoration", "divisor"])))]
struct CohomologyArgs {
    #[arg(long)]
    fan: Option<String>,
    /// Sheaf JSON file or `fixture:NAME` of a decoration.
    #[arg(long)]
    sheaf: Option<String>,
    #[arg(long)]
    decoration: Option<String>,
    /// A line bundle given by its coefficients.
    #[arg(long, allow_hyphen_values = true)]
    divisor: Option<String>,
    /// Engine for line bundles; sheaves always use the Cech complex.
    #[arg(long, value_enum, default_value_t = EngineArg::Cech)]
    engine: EngineArg,
    /// A single degree such as `0,-1` instead of the whole scan.
    #[arg(long, allow_hyphen_values = true)]
    degree: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    twist: Option<String>,
}

#[derive(Subcommand)]
enum CheckCmd {
    /// The primitive-collection inequality over every collection.
    Ps(CheckArgs),
    /// The same inequality over extremal collections only.
    Extremal(CheckArgs),
    /// Every stratum divisor is nef.
    NefDec(CheckArgs),
    /// Every stratum line bundle is acyclic.
    AcyclicDec(CheckArgs),
    /// Vanishing degrees certified by the strata and by the first page.
    Bound(CheckArgs),
    /// Wall-curve form of the extremal inequality.
    Geo(CheckArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("object").required(true).args(["sheaf", "decoration"])))]
struct CheckArgs {
    #[arg(long)]
    fan: Option<String>,
    #[arg(long)]
    decoration: Option<String>,
    /// Sheaf input, accepted by `ps` and `extremal` only.
    #[arg(long)]
    sheaf: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    twist: Option<String>,
}

#[derive(Args)]
struct ResolveArgs {
    #[command(flatten)]
    common: DecorationArgs,
    /// Check exactness degree by degree on the scan region.
    #[arg(long)]
    verify: bool,
}

#[derive(Subcommand)]
enum FixturesCmd {
    List,
    /// Print a fixture fan or decoration as an input file.
    Dump {
        name: String,
    },
}

struct Outcome {
    body: Value,
    code: u8,
    /// An input problem found after a report was produced.
    error: Option<CliError>,
}

impl Outcome {
    fn ok(body: Value) -> Self {
        Outcome { body, code: 0, error: None }
    }

    fn verdict(body: Value, certified: bool) -> Self {
        Outcome { body, code: if certified { 0 } else { 1 }, error: None }
    }

    fn rejected(body: Value, error: CliError) -> Self {
        Outcome { body, code: 2, error: Some(error) }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn with_schema(body: Value) -> Value {
    match body {
        Value::Object(mut map) => {
            map.insert("schema".into(), json!(SCHEMA_VERSION));
            Value::Object(map)
        }
        other => json!({ "schema": SCHEMA_VERSION, "result": other }),
    }
}

fn write_svg(path: &PathBuf, fan: &Fan, layers: Vec<svg::Layer>) -> CliResult<()> {
    if fan.dim() != 2 {
        return Err(toric_acyclic::Error::DimensionUnsupported(fan.dim()).into());
    }
    std::fs::write(path, svg::render(&layers)).map_err(|e| CliError::new("Io", format!("{}: {e}", path.display())))
}

fn layer(fan: &Fan, label: String, d: &TDivisor) -> CliResult<svg::Layer> {
    Ok(svg::Layer { label, polytope: section_polyhedron(fan, d)? })
}

fn fan_validate(args: &FanArgs) -> CliResult<Outcome> {
    let spec = input::fan_spec(&args.fan)?;
    let diag = validate_fan(&spec);
    let mut body = to_value(&diag);
    body["valid"] = json!(diag.is_valid());
    Ok(match diag.errors.first() {
        Some(e) => Outcome::rejected(body, e.into()),
        None => Outcome::ok(body),
    })
}

fn divisor_poly(args: &DivisorArgs) -> CliResult<Outcome> {
    let fan = input::fan(&args.fan)?;
    let d = input::divisor(&args.divisor, &fan)?;
    let poly = section_polyhedron(&fan, &d)?;
    let points = section_lattice_points(&fan, &d)?;
    if let Some(path) = &args.svg {
        write_svg(path, &fan, vec![layer(&fan, format!("D = {:?}", d.coeffs()), &d)?])?;
    }
    Ok(Outcome::ok(json!({
        "divisor": d.coeffs(),
        "nef": is_nef(&fan, &d)?,
        "ample": is_ample(&fan, &d)?,
        "vertices": poly.map(|p| to_value(&to_json_rows(p.vertices()))),
        "lattice_points": points,
        "h0": points.len(),
    })))
}

fn divisor_nef(args: &DivisorArgs) -> CliResult<Outcome> {
    let fan = input::fan(&args.fan)?;
    let d = input::divisor(&args.divisor, &fan)?;
    let cone = extremal_rays(&fan)?;
    let pairings: Vec<Value> = cone
        .collections
        .iter()
        .map(|c| {
            Ok(json!({"rays": c.rays, "relation": c.relation, "extremal": c.extremal, "pairing": d.pair(&c.relation)?}))
        })
        .collect::<toric_acyclic::Result<_>>()?;
    let vertices: Vec<Vec<i64>> = (0..fan.num_max_cones()).map(|i| local_vertex(&fan, i, &d)).collect();
    let nef = is_nef(&fan, &d)?;
    if let Some(path) = &args.svg {
        write_svg(path, &fan, vec![layer(&fan, format!("D = {:?}", d.coeffs()), &d)?])?;
    }
    Ok(Outcome::verdict(
        json!({"divisor": d.coeffs(), "nef": nef, "ample": is_ample(&fan, &d)?, "local_vertices": vertices, "pairings": pairings}),
        nef,
    ))
}

fn virtual_value(v: &VirtualPolytope) -> Value {
    json!({
        "divisor": v.divisor.coeffs(),
        "nef": v.nef,
        "section_vertices": v.section.as_ref().map(|p| to_value(&to_json_rows(p.vertices()))),
    })
}

fn divisor_pair(args: &PairArgs, intersect: bool) -> CliResult<Outcome> {
    let fan = input::fan(&args.fan)?;
    let a = input::divisor(&args.divisor, &fan)?;
    let b = input::divisor(&args.other, &fan)?;
    let v = if intersect { cap(&fan, &a, &b)? } else { cup(&fan, &a, &b)? };
    let mut body = virtual_value(&v);
    if intersect {
        body["honest"] = json!(cap_is_honest(&fan, &a, &b)?);
        if is_nef(&fan, &a)? && is_nef(&fan, &b)? {
            body["stabilizes_at"] = json!(scaled_cap_stabilizes(&fan, &a, &b, CAP_KMAX)?);
        }
    }
    if let Some(path) = &args.svg {
        let name = if intersect { "cap" } else { "cup" };
        let layers = vec![
            layer(&fan, format!("A = {:?}", a.coeffs()), &a)?,
            layer(&fan, format!("B = {:?}", b.coeffs()), &b)?,
            layer(&fan, format!("{name} = {:?}", v.divisor.coeffs()), &v.divisor)?,
        ];
        write_svg(path, &fan, layers)?;
    }
    Ok(Outcome::ok(body))
}

fn mori_list(args: &FanArgs) -> CliResult<Outcome> {
    let fan = input::fan(&args.fan)?;
    let cone = extremal_rays(&fan)?;
    let collections: Vec<Value> = cone
        .collections
        .iter()
        .map(|c| json!({"rays": c.rays, "focus": c.focus().collect::<Vec<_>>(), "relation": c.relation, "extremal": c.extremal}))
        .collect();
    Ok(Outcome::ok(json!({"collections": collections, "extremal": cone.extremal})))
}

fn mori_extremal(args: &FanArgs) -> CliResult<Outcome> {
    let fan = input::fan(&args.fan)?;
    let cone = extremal_rays(&fan)?;
    let rays: Vec<Value> = cone
        .extremal_collections()
        .map(|c| {
            let wall = matching_wall(&fan, &c.relation).map(|w| fan.walls()[w].rays.clone());
            json!({"rays": c.rays, "relation": c.relation, "wall": wall})
        })
        .collect();
    Ok(Outcome::ok(json!({"extremal_rays": rays})))
}

fn load_decoration(args: &DecorationArgs) -> CliResult<(Fan, WeilDecoration)> {
    let fan = input::fan_for(args.fan.as_deref(), Some(&args.decoration))?;
    let dec = input::decoration(&args.decoration)?;
    dec.check_fan(&fan)?;
    Ok((fan, dec))
}

fn decoration_validate(args: &DecorationArgs) -> CliResult<Outcome> {
    let spec = input::decoration_spec(&args.decoration)?;
    let diag = validate_spec(&spec)?;
    let body = to_value(&diag);
    if let Some(e) = diag.errors.first() {
        return Ok(Outcome::rejected(body, e.into()));
    }
    if args.fan.is_some() || args.decoration.starts_with("fixture:") {
        load_decoration(args)?;
    }
    Ok(Outcome::ok(body))
}

fn decoration_summary(args: &DecorationSvgArgs) -> CliResult<Outcome> {
    let (fan, dec) = load_decoration(&args.common)?;
    let strata: Vec<Value> = dec
        .strata()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            Ok(json!({
                "index": i,
                "closure_dim": s.closure.dim(),
                "basis": to_value(&to_json_rows(s.closure.basis())),
                "divisor": s.divisor.coeffs(),
                "nef": is_nef(&fan, &s.divisor)?,
            }))
        })
        .collect::<toric_acyclic::Result<_>>()?;
    if let Some(path) = &args.svg {
        let layers = dec
            .strata()
            .iter()
            .enumerate()
            .map(|(i, s)| layer(&fan, format!("stratum {i}: {:?}", s.divisor.coeffs()), &s.divisor))
            .collect::<CliResult<Vec<_>>>()?;
        write_svg(path, &fan, layers)?;
    }
    let mut body = to_value(&dec.summary());
    body["generic"] = json!(dec.generic());
    body["strata"] = Value::Array(strata);
    Ok(Outcome::ok(body))
}

fn decoration_klyachko(args: &DecorationArgs) -> CliResult<Outcome> {
    let (_, dec) = load_decoration(args)?;
    let sheaf = ToricSheaf::new(dec.ambient_dim(), klyachko_filtrations(&dec))?;
    Ok(Outcome::ok(to_value(&sheaf.to_spec())))
}

fn decoration_twist(args: &DecorationTwistArgs) -> CliResult<Outcome> {
    let (fan, dec) = load_decoration(&args.common)?;
    let d = input::divisor(&args.twist, &fan)?;
    Ok(Outcome::ok(to_value(&twist(&dec, &d)?.to_spec())))
}

fn cohomology_value(h: &GradedCohomology, engine: &str) -> Value {
    let mut body = to_value(h);
    body["engine"] = json!(engine);
    body["acyclic"] = json!(h.is_acyclic());
    body["immaculate"] = json!(h.is_immaculate());
    body
}

fn cohomology(args: &CohomologyArgs) -> CliResult<Outcome> {
    let object = args.sheaf.as_deref().or(args.decoration.as_deref());
    let fan = input::fan_for(args.fan.as_deref(), object)?;
    let shift = args.twist.as_deref().map(|t| input::divisor(t, &fan)).transpose()?;
    let degree = args.degree.as_deref().map(|m| input::degree(m, &fan)).transpose()?;
    if let Some(div) = &args.divisor {
        let mut d = input::divisor(div, &fan)?;
        if let Some(s) = &shift {
            d = d.add(s)?;
        }
        let engine = Engine::from(args.engine);
        let name = to_value(&engine);
        let Some(m) = degree else {
            return Ok(Outcome::ok(cohomology_value(&line_bundle_graded(&fan, &d, engine)?, name.as_str().unwrap())));
        };
        let h = match engine {
            Engine::Cech => cech_cohomology(&fan, &ToricSheaf::line_bundle(&d), &m)?,
            Engine::Support => line_bundle_cohomology_support(&fan, &d, &m)?,
            Engine::Polytope => {
                let (plus, minus) = nef_split(&fan, &d)?;
                polytope_difference_cohomology(&fan, &plus, &minus, &m)?
            }
        };
        return Ok(Outcome::ok(json!({"engine": name, "degree": m, "h": h})));
    }
    if !matches!(args.engine, EngineArg::Cech) {
        return Err(CliError::invalid("only the cech engine handles sheaves of higher rank"));
    }
    let mut sheaf = match (&args.sheaf, &args.decoration) {
        (Some(s), _) => input::sheaf(s)?,
        (_, Some(d)) => ToricSheaf::from_decoration(&input::decoration(d)?),
        _ => unreachable!("clap enforces one input"),
    };
    sheaf.check_fan(&fan)?;
    if let Some(s) = &shift {
        sheaf = sheaf.twist(s)?;
    }
    match degree {
        Some(m) => Ok(Outcome::ok(json!({"engine": "cech", "degree": m, "h": cech_cohomology(&fan, &sheaf, &m)?}))),
        None => Ok(Outcome::ok(cohomology_value(&graded_cohomology(&fan, &sheaf)?, "cech"))),
    }
}

fn check(cmd: &CheckCmd) -> CliResult<Outcome> {
    let (args, all) = match cmd {
        CheckCmd::Ps(a) => (a, true),
        CheckCmd::Extremal(a) => (a, false),
        CheckCmd::NefDec(a) | CheckCmd::AcyclicDec(a) | CheckCmd::Bound(a) | CheckCmd::Geo(a) => {
            return check_decoration(cmd, a)
        }
    };
    let object = args.sheaf.as_deref().or(args.decoration.as_deref());
    let fan = input::fan_for(args.fan.as_deref(), object)?;
    let bounds = match (&args.sheaf, &args.decoration) {
        (Some(s), _) => {
            let sheaf = input::sheaf(s)?;
            sheaf.check_fan(&fan)?;
            Bounds::of_sheaf(&sheaf)
        }
        (_, Some(d)) => {
            let dec = input::decoration(d)?;
            dec.check_fan(&fan)?;
            Bounds::of_decoration(&dec)
        }
        _ => unreachable!("clap enforces one input"),
    };
    let d = match &args.twist {
        Some(t) => input::divisor(t, &fan)?,
        None => TDivisor::zero(fan.num_rays()),
    };
    let report = if all { check_perlman_smith(&fan, &bounds, &d)? } else { check_extremal(&fan, &bounds, &d)? };
    Ok(Outcome::verdict(to_value(&report), report.satisfied))
}

fn check_decoration(cmd: &CheckCmd, args: &CheckArgs) -> CliResult<Outcome> {
    let Some(dec_arg) = &args.decoration else {
        return Err(CliError::invalid("this check needs --decoration"));
    };
    let (fan, mut dec) = load_decoration(&DecorationArgs { fan: args.fan.clone(), decoration: dec_arg.clone() })?;
    if let Some(t) = &args.twist {
        dec = twist(&dec, &input::divisor(t, &fan)?)?;
    }
    Ok(match cmd {
        CheckCmd::NefDec(_) => {
            let v = is_nefly_decorated(&fan, &dec)?;
            Outcome::verdict(to_value(&v), v.holds)
        }
        CheckCmd::AcyclicDec(_) => {
            let v = is_acyclicly_decorated(&fan, &dec)?;
            Outcome::verdict(to_value(&v), v.holds)
        }
        CheckCmd::Bound(_) => {
            let b = vanishing_bound(&fan, &dec)?;
            let e1 = e1_vanishing_bound(&fan, &dec)?;
            let certified = b.k0 <= 1 || e1.forced.iter().skip(1).all(|&f| f);
            Outcome::verdict(json!({"bound": b, "e1": e1, "acyclic_certified": certified}), certified)
        }
        CheckCmd::Geo(_) => {
            let g = geometric_report(&fan, &dec)?;
            Outcome::verdict(to_value(&g), g.satisfied)
        }
        CheckCmd::Ps(_) | CheckCmd::Extremal(_) => unreachable!("handled by check"),
    })
}

fn resolve(args: &ResolveArgs) -> CliResult<Outcome> {
    let (fan, dec) = load_decoration(&args.common)?;
    let cx = build_resolution(&fan, &dec)?;
    let mut body = json!({"complex": cx, "euler_characteristic": cx.euler_characteristic()});
    if !args.verify {
        return Ok(Outcome::ok(body));
    }
    let sheaf = ToricSheaf::from_decoration(&dec);
    match verify_exactness(&fan, &dec, &sheaf) {
        Ok(r) => {
            let exact = r.exact;
            body["verification"] = to_value(&r);
            Ok(Outcome::verdict(body, exact))
        }
        Err(e @ toric_acyclic::Error::ExactnessFailure { .. }) => {
            body["verification"] = json!({"exact": false, "failure": {"kind": e.kind(), "message": e.to_string()}});
            Ok(Outcome::verdict(body, false))
        }
        Err(e) => Err(e.into()),
    }
}

fn fixtures_cmd(cmd: &FixturesCmd) -> CliResult<Outcome> {
    match cmd {
        FixturesCmd::List => {
            let decorations: Vec<Value> = fixtures::decoration_names()
                .iter()
                .map(|n| json!({"name": n, "fan": fixtures::decoration_by_name(n).unwrap().0}))
                .collect();
            Ok(Outcome::ok(json!({"fans": fixtures::fan_names(), "decorations": decorations})))
        }
        FixturesCmd::Dump { name } => {
            if let Some(mut spec) = fixtures::fan_spec_by_name(name) {
                spec.schema = Some(SCHEMA_VERSION);
                return Ok(Outcome::ok(to_value(&spec)));
            }
            match fixtures::decoration_by_name(name) {
                Some((_, dec)) => Ok(Outcome::ok(to_value(&dec.to_spec()))),
                None => Err(CliError::invalid(format!("unknown fixture '{name}'"))),
            }
        }
    }
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Fan { action: FanCmd::Validate(a) } => fan_validate(a),
        Command::Divisor { action } => match action {
            DivisorCmd::Poly(a) => divisor_poly(a),
            DivisorCmd::Nef(a) => divisor_nef(a),
            DivisorCmd::Cap(a) => divisor_pair(a, true),
            DivisorCmd::Cup(a) => divisor_pair(a, false),
        },
        Command::Mori { action } => match action {
            MoriCmd::List(a) => mori_list(a),
            MoriCmd::Extremal(a) => mori_extremal(a),
        },
        Command::Decoration { action } => match action {
            DecorationCmd::Validate(a) => decoration_validate(a),
            DecorationCmd::Summary(a) => decoration_summary(a),
            DecorationCmd::Klyachko(a) => decoration_klyachko(a),
            DecorationCmd::Twist(a) => decoration_twist(a),
        },
        Command::Cohomology(a) => cohomology(a),
        Command::Check { action } => check(action),
        Command::Resolve(a) => resolve(a),
        Command::Fixtures { action } => fixtures_cmd(action),
    }
}

fn print_report(body: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(body).expect("json values print")),
        Format::Text => print!("{}", text::render(body)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let error = match run(&cli) {
        Ok(out) => {
            print_report(&with_schema(out.body), cli.format);
            match out.error {
                Some(e) => e,
                None => return ExitCode::from(out.code),
            }
        }
        Err(e) => e,
    };
    match cli.format {
        Format::Json => {
            eprintln!("{}", json!({"schema": SCHEMA_VERSION, "error": {"kind": error.kind, "message": error.message}}))
        }
        Format::Text => eprintln!("error: {error}"),
    }
    ExitCode::from(2)
}
