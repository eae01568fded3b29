//! `symgrass`: calculators and seeded verification campaigns.
//!
//! Every report is a JSON document carrying the tool name, version, command,
//! full configuration and seed. Exit codes: 0 success, 2 precondition or guard
//! violation, 3 enumeration ceiling exceeded, 4 internal invariant failure.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use symgrass::bn;
use symgrass::campaign::{self, PencilConfig, SweepConfig, VERSION};
use symgrass::forms::AlternatingForm;
use symgrass::grassmann::{fit_dimension_holdout, strata_counts, CountOptions, DEFAULT_CEILING};
use symgrass::json::{
    field_from_json, field_to_json, form_from_json, matrix_from_json, matrix_to_json, parse_field_spec, polynomial_from_json,
    polynomial_to_json, scalar_to_json, scalars_from_json,
};
use symgrass::residue::{build_residue_model, model_report, pencil_injectivity, RationalFunction, SplitBundle};
use symgrass::tangent::{dependence_space, pencil_rank_drop, split_dependence, DependenceCertificate, FormPencil};
use symgrass::{Error, Field};

#[derive(Parser, Debug, Serialize)]
#[command(name = "symgrass", version, about = "Isotropic Grassmannians, form pencils and residue pairings over exact fields")]
struct Cli {
    #[command(flatten)]
    #[serde(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Serialize)]
struct Global {
    /// Random seed; recorded in every report.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads. Reports do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; csv is available for parameter grids only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// ρ(r, d, k, g) over a grid.
    Rho(RhoArgs),
    /// 3g − 3 − C(k+1, 2) over a grid.
    RhoOmega(RhoOmegaArgs),
    /// ρ(2, d, k, g) − g + C(k − δ, 2) over a grid.
    Rho1(Rho1Args),
    /// ρ(2, d, k, g) − g + 2·C(k, 2) over a grid.
    Rho2(Rho2Args),
    /// Whether the lower bounds exceed the classical expectation by more than g.
    NewComps(NewCompsArgs),
    /// Codimension lower bound for isotropic subbundles meeting a degeneracy locus.
    Codim(CodimArgs),
    /// Isotropic subspace counts by intersection with the radical, with a fit in q.
    Strata(StrataArgs),
    /// Dependence of the linear conditions of a pencil of pairings.
    PencilCheck(PencilArgs),
    /// Residue pairing on the tail space of a split bundle on the line.
    P1Form(P1FormArgs),
    /// Injectivity of a family of residue forms on global sections.
    Injectivity(InjectivityArgs),
    /// Seeded verification campaigns.
    Campaign(CampaignArgs),
}

/// A grid axis: `5`, `1..4` (inclusive) or `1,3,7`.
#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
struct Axis(Vec<i64>);

fn parse_axis(s: &str) -> Result<Axis, String> {
    let s = s.trim();
    let bad = |_| format!("cannot read {s:?}: expected n, a..b or a,b,c");
    if let Some((a, b)) = s.split_once("..") {
        let a: i64 = a.trim().parse().map_err(bad)?;
        let b: i64 = b.trim().parse().map_err(bad)?;
        if a > b {
            return Err(format!("empty range {s}"));
        }
        if b - a > 100_000 {
            return Err(format!("range {s} is too long"));
        }
        return Ok(Axis((a..=b).collect()));
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(bad))
        .collect::<Result<Vec<_>, _>>()
        .map(Axis)
}

/// Comma-separated field orders.
#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
struct QList(Vec<u64>);

fn parse_q_list(s: &str) -> Result<QList, String> {
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| format!("cannot read q-list entry {t:?}")))
        .collect::<Result<Vec<_>, _>>()
        .map(QList)
}

#[derive(Args, Debug, Serialize)]
struct RhoArgs {
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    r: Axis,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    d: Axis,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    k: Axis,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    g: Axis,
}

#[derive(Args, Debug, Serialize)]
struct RhoOmegaArgs {
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    k: Axis,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    g: Axis,
}

#[derive(Args, Debug, Serialize)]
struct Rho1Args {
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    d: Axis,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    k: Axis,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    g: Axis,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    delta: Axis,
}

#[derive(Args, Debug, Serialize)]
struct Rho2Args {
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    d: Axis,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    k: Axis,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    g: Axis,
}

#[derive(Args, Debug, Serialize)]
struct NewCompsArgs {
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    k: Axis,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    g: Axis,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    delta: Axis,
    /// Number of forms.
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    m: Axis,
}

#[derive(Args, Debug, Serialize)]
struct CodimArgs {
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    k: Axis,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    r: Axis,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    s: Axis,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    t: Axis,
    /// Half the rank drop on the rank-s bundle; omit together with --double.
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    delta: Option<Axis>,
    /// Use the bound for two symplectic forms.
    #[arg(long, conflicts_with = "delta")]
    double: bool,
}

#[derive(Args, Debug, Serialize)]
struct StrataArgs {
    /// Field order for a single count.
    #[arg(long, conflicts_with = "q_list")]
    field: Option<String>,
    /// Field orders to count over and fit a polynomial in q.
    #[arg(long, value_parser = parse_q_list)]
    q_list: Option<QList>,
    /// Ambient dimension of the standard form.
    #[arg(long, required_unless_present = "form")]
    r: Option<usize>,
    /// Half the rank of the standard form.
    #[arg(long, default_value_t = 0)]
    delta: usize,
    /// Gram matrix as a JSON array of rows, read over every field.
    #[arg(long, conflicts_with_all = ["r"])]
    form: Option<String>,
    #[arg(long)]
    k: usize,
    /// Bound on enumeration work.
    #[arg(long, default_value_t = DEFAULT_CEILING)]
    ceiling: u64,
    /// Largest samples kept out of the interpolation and used to check it.
    #[arg(long, default_value_t = 1)]
    holdout: usize,
}

#[derive(Args, Debug, Serialize)]
struct PencilArgs {
    /// `Q` or a prime power.
    #[arg(long)]
    field: String,
    /// First k×n pairing matrix, JSON array of rows.
    #[arg(long)]
    psi1: String,
    /// Second k×n pairing matrix.
    #[arg(long)]
    psi2: String,
}

#[derive(Args, Debug, Serialize)]
struct P1FormArgs {
    /// Whole model as JSON: {"field", "a", "b", "D", "Delta", "phi": {"num", "den"}}.
    /// Flags given alongside override its entries.
    #[arg(long)]
    input: Option<String>,
    #[arg(long)]
    field: Option<String>,
    /// Twist of the first summand of O(a) ⊕ O(b).
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    /// Twist of the second summand.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
    /// Points of D, JSON array.
    #[arg(long)]
    d: Option<String>,
    /// Points of Δ, JSON array; empty by default.
    #[arg(long)]
    delta_points: Option<String>,
    /// φ as ascending polynomial coefficients; 1 by default.
    #[arg(long)]
    phi: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct InjectivityArgs {
    #[arg(long)]
    field: String,
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, allow_hyphen_values = true)]
    b: i64,
    /// Points of D in order, JSON array; every prefix is checked.
    #[arg(long)]
    d: String,
    /// φ_i as ascending polynomial coefficients; repeat for each form.
    #[arg(long, required = true)]
    phi: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum CampaignKind {
    Sweep,
    Window,
    Witness,
    Pencil,
    Msg,
    Residue,
    Injectivity,
    Identities,
}

#[derive(Args, Debug, Serialize)]
struct CampaignArgs {
    #[arg(value_enum)]
    kind: CampaignKind,
    /// Largest ambient dimension (sweep, window, witness).
    #[arg(long)]
    max_r: Option<usize>,
    /// Largest subspace dimension (sweep, window).
    #[arg(long)]
    max_k: Option<usize>,
    /// Field orders (sweep, window, witness).
    #[arg(long, value_parser = parse_q_list)]
    q_list: Option<QList>,
    #[arg(long, default_value_t = DEFAULT_CEILING)]
    ceiling: u64,
    /// Instances: form pairs (msg), models per field (residue, injectivity),
    /// random pencils per finite field (pencil).
    #[arg(long)]
    count: Option<usize>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.exit_code() as u8,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// A finished report and whether it records an invariant failure.
struct Output {
    body: Body,
    invariant_failures: Vec<String>,
}

enum Body {
    Json(Value),
    Grid { columns: Vec<&'static str>, rows: Vec<Vec<Value>> },
}

fn big(v: BigInt) -> Value {
    match i64::try_from(&v) {
        Ok(n) => json!(n),
        Err(_) => json!(v.to_string()),
    }
}

fn grid(columns: Vec<&'static str>, rows: Vec<Vec<Value>>) -> Output {
    Output {
        body: Body::Grid { columns, rows },
        invariant_failures: Vec::new(),
    }
}

fn report(v: Value) -> Output {
    Output {
        body: Body::Json(v),
        invariant_failures: Vec::new(),
    }
}

fn cartesian(axes: &[&Axis]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for axis in axes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                axis.0.iter().map(move |&x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

fn cmd_rho(a: &RhoArgs) -> Output {
    let rows = cartesian(&[&a.r, &a.d, &a.k, &a.g])
        .into_iter()
        .map(|p| {
            let v = bn::rho(p[0], p[1], p[2], p[3]);
            p.into_iter().map(|x| json!(x)).chain([big(v)]).collect()
        })
        .collect();
    grid(vec!["r", "d", "k", "g", "rho"], rows)
}

fn cmd_rho_omega(a: &RhoOmegaArgs) -> Output {
    let rows = cartesian(&[&a.k, &a.g])
        .into_iter()
        .map(|p| vec![json!(p[0]), json!(p[1]), big(bn::rho_omega(p[0], p[1]))])
        .collect();
    grid(vec!["k", "g", "rho_omega"], rows)
}

fn cmd_rho1(a: &Rho1Args) -> Output {
    let rows = cartesian(&[&a.d, &a.k, &a.g, &a.delta])
        .into_iter()
        .map(|p| {
            let v = bn::rho1(p[0], p[1], p[2], p[3]);
            p.into_iter().map(|x| json!(x)).chain([big(v)]).collect()
        })
        .collect();
    grid(vec!["d", "k", "g", "delta", "rho1"], rows)
}

fn cmd_rho2(a: &Rho2Args) -> Output {
    let rows = cartesian(&[&a.d, &a.k, &a.g])
        .into_iter()
        .map(|p| {
            let v = bn::rho2(p[0], p[1], p[2]);
            p.into_iter().map(|x| json!(x)).chain([big(v)]).collect()
        })
        .collect();
    grid(vec!["d", "k", "g", "rho2"], rows)
}

fn cmd_new_comps(a: &NewCompsArgs) -> Output {
    let rows = cartesian(&[&a.k, &a.g, &a.delta, &a.m])
        .into_iter()
        .map(|p| {
            let v = bn::new_comps(p[0], p[1], p[2], p[3]);
            p.into_iter().map(|x| json!(x)).chain([json!(v)]).collect()
        })
        .collect();
    grid(vec!["k", "g", "delta", "m", "new_comps"], rows)
}

fn cmd_codim(a: &CodimArgs) -> Result<Output, Failure> {
    let delta = match (&a.delta, a.double) {
        (Some(d), false) => d.clone(),
        (None, true) => Axis(vec![0]),
        _ => return Err(usage("codim needs exactly one of --delta and --double")),
    };
    let mut rows = Vec::new();
    for p in cartesian(&[&a.k, &a.r, &a.s, &a.t, &delta]) {
        let v = if a.double {
            bn::codim_bound_double(p[0], p[1], p[2], p[3])?
        } else {
            bn::codim_bound_single(p[0], p[1], p[2], p[3], p[4])?
        };
        let mut row: Vec<Value> = p[..4].iter().map(|&x| json!(x)).collect();
        row.push(if a.double { Value::Null } else { json!(p[4]) });
        row.push(big(v));
        rows.push(row);
    }
    Ok(grid(vec!["k", "r", "s", "t", "delta", "bound"], rows))
}

fn parse_json(what: &str, s: &str) -> Result<Value, Failure> {
    serde_json::from_str(s).map_err(|e| usage(format!("{what}: {e}")))
}

fn cmd_strata(a: &StrataArgs, jobs: usize) -> Result<Output, Failure> {
    let qs: Vec<u64> = match (&a.field, &a.q_list) {
        (Some(f), None) => {
            let field = parse_field_spec(f)?;
            vec![field.order().ok_or_else(|| usage("counting needs a finite field"))?]
        }
        (None, Some(qs)) if !qs.0.is_empty() => qs.0.clone(),
        _ => return Err(usage("strata needs --field or a nonempty --q-list")),
    };
    let form_json = a.form.as_deref().map(|s| parse_json("--form", s)).transpose()?;
    let opts = CountOptions {
        ceiling: a.ceiling,
        jobs,
    };
    let mut samples = Vec::new();
    for &q in &qs {
        let field = Field::of_order(q)?;
        let form = match &form_json {
            Some(v) => form_from_json(&field, v)?,
            None => {
                let r = a.r.ok_or_else(|| usage("strata needs --r or --form"))?;
                if 2 * a.delta > r {
                    return Err(usage(format!("2·delta = {} exceeds r = {r}", 2 * a.delta)));
                }
                AlternatingForm::standard(&field, r, a.delta)
            }
        };
        eprintln!("symgrass: counting over F_{q}");
        samples.push(strata_counts(&form, a.k, opts)?);
    }
    let mut out = json!({ "samples": samples });
    if qs.len() > 1 {
        let mut fits = serde_json::Map::new();
        let totals: BTreeMap<u64, u64> = samples.iter().map(|s| (s.params.q, s.total)).collect();
        fits.insert("total".into(), fit_json(&totals, a.holdout));
        let mut strata = serde_json::Map::new();
        for i in 0..=a.k {
            let pts: BTreeMap<u64, u64> = samples
                .iter()
                .map(|s| (s.params.q, s.strata.get(&i).copied().unwrap_or(0)))
                .collect();
            strata.insert(i.to_string(), fit_json(&pts, a.holdout));
        }
        fits.insert("strata".into(), Value::Object(strata));
        out["fits"] = Value::Object(fits);
        let p = &samples[0].params;
        out["expected_degree"] = json!(campaign::expected_total_degree(p.r, p.delta, a.k));
        let (lo, hi) = campaign::stratum_window(p.r, p.delta, a.k);
        out["nonempty_strata"] = json!([lo, hi]);
    }
    Ok(report(out))
}

fn fit_json(samples: &BTreeMap<u64, u64>, holdout: usize) -> Value {
    match fit_dimension_holdout(samples, holdout) {
        Ok(f) => serde_json::to_value(f).expect("fit serializes"),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn cmd_pencil(a: &PencilArgs) -> Result<Output, Failure> {
    let field = parse_field_spec(&a.field)?;
    let psi1 = matrix_from_json(&field, &parse_json("--psi1", &a.psi1)?)?;
    let psi2 = matrix_from_json(&field, &parse_json("--psi2", &a.psi2)?)?;
    let pencil = FormPencil::new(psi1, psi2)?;
    let cert = pencil_rank_drop(&pencil)?;
    let dep = dependence_space(&pencil);
    let k = pencil.k();
    let split: Vec<Value> = dep
        .to_rows()
        .iter()
        .map(|x| {
            let (c, cp) = split_dependence(&field, k, x);
            json!({
                "c": c.iter().map(|s| scalar_to_json(&field, s)).collect::<Vec<_>>(),
                "c_prime": cp.iter().map(|s| scalar_to_json(&field, s)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let (witness, gcd) = match &cert {
        DependenceCertificate::Independent => (Value::Null, Value::Null),
        DependenceCertificate::Dependent { witness, gcd } => (
            witness.as_ref().map_or(Value::Null, |w| {
                json!({
                    "field": field_to_json(&w.field),
                    "degree": w.degree,
                    "lambda": [scalar_to_json(&w.field, &w.lambda.0), scalar_to_json(&w.field, &w.lambda.1)],
                    "v_prime": matrix_to_json(&w.v_prime),
                    "coefficients": w.coefficients.iter().map(|s| scalar_to_json(&field, s)).collect::<Vec<_>>(),
                })
            }),
            gcd.as_ref().map_or(Value::Null, polynomial_to_json),
        ),
    };
    let agreement = (dep.rows() > 0) == cert.is_dependent();
    let out = json!({
        "field": field_to_json(&field),
        "k": k,
        "n": pencil.n(),
        "dependent": cert.is_dependent(),
        "dependence_dim": dep.rows(),
        "dependence_basis": matrix_to_json(&dep),
        "dependence_split": split,
        "witness": witness,
        "minor_gcd": gcd,
        "agreement": agreement,
    });
    let mut o = report(out);
    if !agreement {
        o.invariant_failures.push(format!(
            "dependence space has dimension {} but the rank-drop test says dependent = {}",
            dep.rows(),
            cert.is_dependent()
        ));
    }
    Ok(o)
}

fn points(field: &Field, what: &str, s: &str) -> Result<Vec<symgrass::Scalar>, Failure> {
    Ok(scalars_from_json(field, &parse_json(what, s)?)?)
}

fn phi_of(field: &Field, s: &str) -> Result<RationalFunction, Failure> {
    Ok(RationalFunction::from_polynomial(polynomial_from_json(field, &parse_json("--phi", s)?)?))
}

fn cmd_p1_form(a: &P1FormArgs) -> Result<Output, Failure> {
    let input = a.input.as_deref().map(|s| parse_json("--input", s)).transpose()?;
    let from_input = |key: &str| input.as_ref().and_then(|v| v.get(key)).cloned();
    let field = match (&a.field, from_input("field")) {
        (Some(s), _) => parse_field_spec(s)?,
        (None, Some(v)) => field_from_json(&v)?,
        (None, None) => return Err(usage("p1-form needs --field")),
    };
    let twist = |flag: Option<i64>, key: &str| -> Result<i64, Failure> {
        flag.or_else(|| from_input(key).and_then(|v| v.as_i64()))
            .ok_or_else(|| usage(format!("p1-form needs an integer --{key}")))
    };
    let bundle = SplitBundle::new(twist(a.a, "a")?, twist(a.b, "b")?);
    let list = |flag: &Option<String>, what: &str, key: &str| -> Result<Value, Failure> {
        match (flag, from_input(key)) {
            (Some(s), _) => parse_json(what, s),
            (None, Some(v)) => Ok(v),
            (None, None) => Ok(json!([])),
        }
    };
    if a.d.is_none() && from_input("D").is_none() {
        return Err(usage("p1-form needs --d"));
    }
    let d = scalars_from_json(&field, &list(&a.d, "--d", "D")?)?;
    let delta = scalars_from_json(&field, &list(&a.delta_points, "--delta-points", "Delta")?)?;
    let phi = match (&a.phi, from_input("phi")) {
        (Some(s), _) => phi_of(&field, s)?,
        (None, Some(Value::Object(m))) => {
            let num = polynomial_from_json(&field, m.get("num").unwrap_or(&json!([1])))?;
            let den = polynomial_from_json(&field, m.get("den").unwrap_or(&json!([1])))?;
            RationalFunction::new(num, den)?
        }
        (None, Some(v)) => RationalFunction::from_polynomial(polynomial_from_json(&field, &v)?),
        (None, None) => RationalFunction::constant(&field, field.one()),
    };
    let model = build_residue_model(&field, bundle, &d, &delta, &phi)?;
    let rep = model_report(&model)?;
    let isotropy = match rep.sections_isotropic {
        Some(true) => json!("pass"),
        Some(false) => json!("fail"),
        None => Value::Null,
    };
    let coordinates: Vec<Value> = model
        .coordinates
        .iter()
        .map(|c| {
            json!({
                "point": scalar_to_json(&field, &c.point),
                "in_d": c.in_d,
                "summand": c.summand,
                "order": c.order,
            })
        })
        .collect();
    let mut o = report(json!({
        "field": field_to_json(&field),
        "model": rep,
        "isotropy": isotropy,
        "coordinates": coordinates,
        "gram": matrix_to_json(model.form.gram()),
    }));
    if rep.sections_isotropic == Some(false) {
        o.invariant_failures.push("global sections are not isotropic".into());
    }
    Ok(o)
}

fn cmd_injectivity(a: &InjectivityArgs) -> Result<Output, Failure> {
    let field = parse_field_spec(&a.field)?;
    let d = points(&field, "--d", &a.d)?;
    let phis = a.phi.iter().map(|s| phi_of(&field, s)).collect::<Result<Vec<_>, _>>()?;
    let rep = pencil_injectivity(&field, SplitBundle::new(a.a, a.b), &d, &phis)?;
    Ok(report(json!({ "field": field_to_json(&field), "report": rep })))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn cmd_campaign(a: &CampaignArgs, seed: u64, jobs: usize) -> Result<Output, Failure> {
    eprintln!("symgrass: running the {:?} campaign", a.kind);
    let opts = CountOptions {
        ceiling: a.ceiling,
        jobs,
    };
    let (value, failures): (Value, Vec<String>) = match a.kind {
        CampaignKind::Sweep => {
            let mut cfg = SweepConfig {
                ceiling: a.ceiling,
                ..SweepConfig::default()
            };
            if let Some(r) = a.max_r {
                cfg.max_r = r;
            }
            if let Some(k) = a.max_k {
                cfg.max_k = k;
            }
            if let Some(q) = &a.q_list {
                cfg.q_list = q.0.clone();
            }
            let rep = campaign::dimension_sweep(&cfg, jobs)?;
            (to_value(&rep), rep.violations())
        }
        CampaignKind::Window => {
            let qs = a.q_list.clone().map_or_else(|| vec![2, 3, 5, 7], |q| q.0);
            let rep = campaign::window_campaign(a.max_r.unwrap_or(6), a.max_k.unwrap_or(4), &qs, opts)?;
            (to_value(&rep), rep.exceptions.clone())
        }
        CampaignKind::Witness => {
            let qs = a.q_list.clone().map_or_else(|| vec![2, 3], |q| q.0);
            let rep = campaign::witness_campaign(a.max_r.unwrap_or(5), &qs, seed)?;
            (to_value(&rep), rep.exceptions.clone())
        }
        CampaignKind::Pencil => {
            let mut cfg = PencilConfig {
                seed,
                ..PencilConfig::default()
            };
            if let Some(n) = a.count {
                cfg.random_per_finite_field = n;
                cfg.random_rationals = n.div_ceil(5);
                cfg.planted_per_finite_field = n.div_ceil(4);
                cfg.planted_rationals = n.div_ceil(20);
            }
            let rep = campaign::pencil_campaign(&cfg)?;
            let mut f = rep.disagreements.clone();
            f.extend(rep.certificate_failures.iter().cloned());
            f.extend(rep.extraction.exceptions.iter().cloned());
            (to_value(&rep), f)
        }
        CampaignKind::Msg => {
            let rep = campaign::msg_campaign(a.count.unwrap_or(40), seed)?;
            (to_value(&rep), rep.disagreements.clone())
        }
        CampaignKind::Residue => {
            let rep = campaign::residue_campaign(a.count.unwrap_or(15), seed)?;
            (to_value(&rep), rep.exceptions.clone())
        }
        CampaignKind::Injectivity => {
            let rep = campaign::injectivity_campaign(a.count.unwrap_or(12), seed)?;
            (to_value(&rep), rep.failures.clone())
        }
        CampaignKind::Identities => {
            let rep = campaign::identity_campaign();
            (to_value(&rep), rep.exceptions.clone())
        }
    };
    Ok(Output {
        body: Body::Json(value),
        invariant_failures: failures,
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Rho(a) => Ok(cmd_rho(a)),
        Command::RhoOmega(a) => Ok(cmd_rho_omega(a)),
        Command::Rho1(a) => Ok(cmd_rho1(a)),
        Command::Rho2(a) => Ok(cmd_rho2(a)),
        Command::NewComps(a) => Ok(cmd_new_comps(a)),
        Command::Codim(a) => cmd_codim(a),
        Command::Strata(a) => cmd_strata(a, cli.global.jobs),
        Command::PencilCheck(a) => cmd_pencil(a),
        Command::P1Form(a) => cmd_p1_form(a),
        Command::Injectivity(a) => cmd_injectivity(a),
        Command::Campaign(a) => cmd_campaign(a, cli.global.seed, cli.global.jobs),
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render(cli: &Cli, out: &Output) -> Result<String, Failure> {
    let command = serde_json::to_value(&cli.command).expect("config serializes");
    let name = command
        .as_object()
        .and_then(|m| m.keys().next().cloned())
        .unwrap_or_default();
    let mut config = serde_json::to_value(&cli.global).expect("config serializes");
    // the worker count and output path do not affect results
    if let Some(m) = config.as_object_mut() {
        m.remove("jobs");
        m.remove("out");
    }
    config["command"] = command;
    match (&out.body, cli.global.format) {
        (Body::Grid { columns, rows }, Format::Csv) => {
            let mut s = format!("# symgrass {VERSION} {name} seed={}\n", cli.global.seed);
            s.push_str(&columns.join(","));
            s.push('\n');
            for row in rows {
                s.push_str(&row.iter().map(csv_cell).collect::<Vec<_>>().join(","));
                s.push('\n');
            }
            Ok(s)
        }
        (Body::Json(_), Format::Csv) => Err(usage("csv output is available for parameter grids only")),
        (body, Format::Json) => {
            let result = match body {
                Body::Json(v) => v.clone(),
                Body::Grid { columns, rows } => Value::Array(
                    rows.iter()
                        .map(|row| {
                            Value::Object(columns.iter().map(|c| c.to_string()).zip(row.iter().cloned()).collect())
                        })
                        .collect(),
                ),
            };
            let doc = json!({
                "tool": "symgrass",
                "version": VERSION,
                "command": name,
                "seed": cli.global.seed,
                "config": config,
                "invariant_failures": out.invariant_failures,
                "result": result,
            });
            Ok(serde_json::to_string_pretty(&doc).expect("report serializes") + "\n")
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        let text = render(&cli, &out)?;
        match &cli.global.out {
            Some(path) => fs::write(path, &text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(out.invariant_failures)
    });
    match result {
        Ok(failures) if failures.is_empty() => ExitCode::SUCCESS,
        Ok(failures) => {
            eprintln!("symgrass: {} invariant failures", failures.len());
            for f in failures.iter().take(10) {
                eprintln!("  {f}");
            }
            ExitCode::from(4)
        }
        Err(f) => {
            eprintln!("symgrass: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
