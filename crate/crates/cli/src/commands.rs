use std::path::PathBuf;

use charcycle::calculus::{
    c_star, cc_transform, chern_mather, euler_obstruction, ic_report, stringy_class, try_fiber_euler,
};
use charcycle::chow::{ChowClass, ChowVector};
use charcycle::conormal::{conormal_ideal, dual_variety};
use charcycle::exec;
use charcycle::ideal::Limits;
use charcycle::morphism::{
    fiber_product_smallness, generic_degree, omega_trim_check, small_check, smooth_restriction_check, trim_check,
    MorphismSpec,
};
use charcycle::pushforward::{pushforward_generically_finite, pushforward_support, pushforward_trim};
use charcycle::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::project::{AmbientKind, Project};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PushMode {
    Auto,
    Support,
    Trim,
    GenericallyFinite,
}

#[derive(Debug, Parser)]
#[command(name = "charcycle", version, about = "Characteristic cycles, Euler obstructions and trim resolutions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every generic choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub max_gb_steps: Option<usize>,
    #[arg(long, global = true)]
    pub max_saturation_iters: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// `all`, or the label of one chart of an atlas.
    #[arg(long, global = true, default_value = "all")]
    pub charts: String,
    /// Evaluate independent charts and strata concurrently.
    #[arg(long, global = true, value_enum, default_value_t = Toggle::On)]
    pub parallel: Toggle,
}

#[derive(Debug, Args)]
pub struct Target {
    /// Project file.
    pub project: PathBuf,
    /// Name of the object to analyze.
    pub target: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Conormal ideal and polar degrees of a projective variety.
    Conormal(Target),
    PolarDegrees(Target),
    /// Dual variety.
    Dual(Target),
    /// Segre class of a subscheme in a projective variety.
    Segre {
        #[command(flatten)]
        t: Target,
        /// Ideal of the subscheme.
        #[arg(long)]
        sub: String,
    },
    /// Characteristic cycle of a constructible function.
    Cc(Target),
    EulerObstruction {
        #[command(flatten)]
        t: Target,
        /// Named point or comma-separated coordinates.
        #[arg(long)]
        point: String,
        /// Also compute the fiber Euler characteristic along this trim
        /// resolution (map or atlas) at the affine point `--fiber-point`.
        #[arg(long)]
        via: Option<String>,
        #[arg(long)]
        fiber_point: Option<String>,
    },
    ChernMather(Target),
    Stringy {
        #[command(flatten)]
        t: Target,
        /// Compare with the Chern-Mather class of this variety.
        #[arg(long)]
        compare: Option<String>,
    },
    TrimCheck(Target),
    SmallCheck {
        #[command(flatten)]
        t: Target,
        #[arg(long)]
        strat: String,
    },
    OmegaCheck(Target),
    FiberProductCheck(Target),
    SmoothRestrictionCheck {
        #[command(flatten)]
        t: Target,
        #[arg(long)]
        strat: String,
    },
    GenericDegree(Target),
    Pushforward {
        #[command(flatten)]
        t: Target,
        #[arg(long)]
        strat: String,
        #[arg(long, value_enum, default_value_t = PushMode::Auto)]
        mode: PushMode,
    },
    /// IC characteristic cycle and stalk Euler characteristics.
    IcReport {
        #[command(flatten)]
        t: Target,
        /// Trim resolution: a map or an atlas.
        #[arg(long)]
        map: String,
        #[arg(long)]
        probe: Vec<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Conormal(_) => "conormal",
            Command::PolarDegrees(_) => "polar-degrees",
            Command::Dual(_) => "dual",
            Command::Segre { .. } => "segre",
            Command::Cc(_) => "cc",
            Command::EulerObstruction { .. } => "euler-obstruction",
            Command::ChernMather(_) => "chern-mather",
            Command::Stringy { .. } => "stringy",
            Command::TrimCheck(_) => "trim-check",
            Command::SmallCheck { .. } => "small-check",
            Command::OmegaCheck(_) => "omega-check",
            Command::FiberProductCheck(_) => "fiber-product-check",
            Command::SmoothRestrictionCheck { .. } => "smooth-restriction-check",
            Command::GenericDegree(_) => "generic-degree",
            Command::Pushforward { .. } => "pushforward",
            Command::IcReport { .. } => "ic-report",
        }
    }

    fn target(&self) -> &Target {
        match self {
            Command::Conormal(t)
            | Command::PolarDegrees(t)
            | Command::Dual(t)
            | Command::Cc(t)
            | Command::ChernMather(t)
            | Command::TrimCheck(t)
            | Command::OmegaCheck(t)
            | Command::FiberProductCheck(t)
            | Command::GenericDegree(t) => t,
            Command::Segre { t, .. }
            | Command::EulerObstruction { t, .. }
            | Command::Stringy { t, .. }
            | Command::SmallCheck { t, .. }
            | Command::SmoothRestrictionCheck { t, .. }
            | Command::Pushforward { t, .. }
            | Command::IcReport { t, .. } => t,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn vector_json(v: &ChowVector) -> Value {
    json!({ "coefficients": v.coeffs, "class": v.to_string() })
}

fn class_json(c: &ChowClass) -> Value {
    let terms: Vec<Value> = c
        .terms()
        .map(|(k, m)| json!({ "factors": k, "coefficient": m }))
        .collect();
    json!({ "factor_dims": c.factor_dims(), "terms": terms, "class": c.to_string() })
}

fn chart_label(name: &str, f: &MorphismSpec) -> String {
    f.chart().unwrap_or(name).to_string()
}

type ChartResults<R> = (Vec<(String, R)>, Vec<String>);

/// Run `job` on each chart and merge warnings, prefixed by the chart label
/// when there is more than one chart.
fn per_chart<R, F>(charts: &[(String, MorphismSpec)], job: F) -> Result<ChartResults<R>>
where
    R: Send,
    F: Fn(&MorphismSpec) -> Result<(R, Vec<String>)> + Sync + Send,
{
    let results = exec::try_par_map(charts, |(name, f)| job(f).map(|r| (chart_label(name, f), r)))?;
    let mut warnings = Vec::new();
    let many = results.len() > 1;
    let mut out = Vec::new();
    for (label, (r, w)) in results {
        for x in w {
            if many {
                warnings.push(format!("chart {label}: {x}"));
            } else {
                warnings.push(x);
            }
        }
        out.push((label, r));
    }
    warnings.dedup();
    Ok((out, warnings))
}

fn chart_rows<R: Serialize>(rows: &[(String, R)]) -> Value {
    Value::Array(
        rows.iter()
            .map(|(label, r)| {
                let mut v = to_value(r);
                if let Value::Object(m) = &mut v {
                    m.insert("chart".into(), json!(label));
                }
                v
            })
            .collect(),
    )
}

fn note_properness(charts: &[(String, MorphismSpec)], warnings: &mut Vec<String>) {
    if charts.iter().any(|(_, f)| f.proper_asserted()) {
        warnings.push("properness user-asserted".into());
    }
}

pub fn limits_from(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(s) = cli.max_gb_steps {
        l.max_gb_steps = s;
    }
    if let Some(s) = cli.max_saturation_iters {
        l.max_saturation_iters = s;
    }
    l
}

pub fn execute(cli: &Cli) -> Result<Report> {
    exec::set_parallel(cli.parallel == Toggle::On);
    let cmd = &cli.command;
    let t = cmd.target();
    let project = Project::load(&t.project, limits_from(cli))?;
    let seed = cli.seed;
    let only = (cli.charts != "all").then_some(cli.charts.as_str());
    let mut inputs = json!({ "project": t.project.display().to_string(), "target": t.target });
    let extra = |inputs: &mut Value, k: &str, v: Value| {
        inputs.as_object_mut().unwrap().insert(k.into(), v);
    };
    if only.is_some() {
        extra(&mut inputs, "charts", json!(cli.charts));
    }
    let mut report = Report::new(cmd.name(), Value::Null, seed);
    match cmd {
        Command::Conormal(_) => {
            let v = project.projective(&t.target)?;
            let con = conormal_ideal(&v, seed)?;
            let ring = con.ring.var_names().to_vec();
            let basis: Vec<String> = con.ideal.canonical()?.elements().iter().map(|g| g.to_string()).collect();
            report.result = json!({
                "ambient_dim": con.ambient_dim(),
                "dimension": v.dimension()?,
                "degree": v.degree()?,
                "polar_degrees": con.polar_degrees,
                "ring": ring,
                "conormal_ideal": basis,
            });
        }
        Command::PolarDegrees(_) => {
            let v = project.projective(&t.target)?;
            report.result = json!({ "polar_degrees": conormal_ideal(&v, seed)?.polar_degrees });
        }
        Command::Dual(_) => {
            let v = project.projective(&t.target)?;
            let d = dual_variety(&v, seed)?;
            let basis: Vec<String> =
                d.saturated_ideal()?.canonical()?.elements().iter().map(|g| g.to_string()).collect();
            report.result = json!({
                "ring": d.ideal().ring().var_names(),
                "ideal": basis,
                "dimension": d.dimension()?,
                "degree": d.degree()?,
            });
        }
        Command::Segre { sub, .. } => {
            extra(&mut inputs, "sub", json!(sub));
            let v = project.projective(&t.target)?;
            let z = project.ideal(sub)?;
            if z.ring().nvars() != v.ideal().ring().nvars() {
                return Err(Error::input(format!("ideal '{sub}' lives in a different ring")));
            }
            let z = charcycle::ideal::Ideal::new(
                v.ideal().ring(),
                z.generators()
                    .iter()
                    .map(|g| g.rename_into(v.ideal().ring()))
                    .collect::<Result<Vec<_>>>()?,
            )?
            .with_limits(project.limits());
            report.result = class_json(&v.segre_class(&z, seed)?);
        }
        Command::Cc(_) => {
            let alpha = project.function(&t.target)?;
            let lambda = cc_transform(&alpha)?;
            let mut result = json!({
                "function": to_value(&alpha),
                "cycle": to_value(&lambda),
                "display": lambda.terms().map(|(k, m)| format!("{m}*[{k}]")).collect::<Vec<_>>().join(" + "),
            });
            if let Ok(Some(_)) = lambda.ambient().map(|a| a.filter(|a| matches!(a, charcycle::calculus::Ambient::Projective(_)))) {
                let cs = c_star(&lambda, seed)?;
                result.as_object_mut().unwrap().insert("c_star".into(), vector_json(&cs));
            }
            report.result = result;
        }
        Command::EulerObstruction { point, via, fiber_point, .. } => {
            extra(&mut inputs, "point", json!(point));
            let p = project.point(point)?;
            let kind = project.variety_kind(&t.target)?;
            let mut result = serde_json::Map::new();
            if kind == AmbientKind::Projective {
                let v = project.projective(&t.target)?;
                result.insert("segre_route".into(), json!(euler_obstruction(&v, &p, seed)?));
            }
            if let Some(via) = via {
                extra(&mut inputs, "via", json!(via));
                let fp = match (fiber_point, kind) {
                    (Some(fp), _) => {
                        extra(&mut inputs, "fiber_point", json!(fp));
                        project.point(fp)?
                    }
                    (None, AmbientKind::Affine) => p.clone(),
                    (None, AmbientKind::Projective) => {
                        return Err(Error::input("--via on a projective variety needs --fiber-point in the chart target"))
                    }
                };
                let charts = project.charts(via, only)?;
                let mut found = None;
                for (name, f) in &charts {
                    let trim = trim_check(f)?;
                    if let Some(row) = trim.first_failure() {
                        return Err(Error::precondition(format!(
                            "chart {} is not trim: dim Y_{} = {} is not below {}",
                            chart_label(name, f),
                            row.d,
                            row.dim,
                            row.bound
                        )));
                    }
                    if let Some(fe) = try_fiber_euler(f, &fp, project.asserted_chi(name, &fp)?)? {
                        found = Some((chart_label(name, f), fe));
                        break;
                    }
                }
                let (chart, fe) = found.ok_or_else(|| Error::input("point lies outside the image of every chart"))?;
                if fe.shape == charcycle::calculus::FiberShape::Asserted {
                    report.warnings.push("fiber Euler characteristic is user-asserted".into());
                }
                if charts.iter().any(|(_, f)| !f.proper_asserted()) {
                    report.warnings.push("properness not asserted".into());
                }
                note_properness(&charts, &mut report.warnings);
                result.insert("trim_route".into(), json!(fe.chi));
                result.insert("fiber".into(), json!({ "chart": chart, "shape": to_value(&fe.shape) }));
                if let Some(s) = result.get("segre_route").and_then(Value::as_i64) {
                    result.insert("routes_agree".into(), json!(s == fe.chi));
                }
            }
            if result.is_empty() {
                return Err(Error::input("affine variety: give --via with a trim resolution"));
            }
            let value = result.get("segre_route").or_else(|| result.get("trim_route")).cloned().unwrap();
            result.insert("value".into(), value);
            report.result = Value::Object(result);
        }
        Command::ChernMather(_) => {
            let v = project.projective(&t.target)?;
            report.result = vector_json(&chern_mather(&v, seed)?);
        }
        Command::Stringy { compare, .. } => {
            let spec = project.chow_spec(&t.target)?;
            let s = stringy_class(&spec)?;
            let mut result = json!({ "stringy": vector_json(&s) });
            if let Some(c) = compare {
                extra(&mut inputs, "compare", json!(c));
                let m = chern_mather(&project.projective(c)?, seed)?;
                let obj = result.as_object_mut().unwrap();
                obj.insert("chern_mather".into(), vector_json(&m));
                obj.insert("equal".into(), json!(m == s));
            }
            report.result = result;
        }
        Command::TrimCheck(_) => {
            let charts = project.charts(&t.target, only)?;
            let (rows, w) = per_chart(&charts, |f| Ok((trim_check(f)?, Vec::new())))?;
            report.result = json!({
                "is_trim": rows.iter().all(|(_, r)| r.is_trim),
                "charts": chart_rows(&rows),
            });
            report.warnings = w;
        }
        Command::OmegaCheck(_) => {
            let charts = project.charts(&t.target, only)?;
            let (rows, w) = per_chart(&charts, |f| {
                let o = omega_trim_check(f)?;
                let agrees = o == trim_check(f)?;
                Ok(((o, agrees), Vec::new()))
            })?;
            let agree = rows.iter().all(|(_, (_, a))| *a);
            let reports: Vec<(String, _)> = rows.iter().map(|(l, (o, _))| (l.clone(), o.clone())).collect();
            report.result = json!({
                "is_trim": reports.iter().all(|(_, r)| r.is_trim),
                "agrees_with_trim_check": agree,
                "charts": chart_rows(&reports),
            });
            report.warnings = w;
        }
        Command::SmallCheck { strat, .. } => {
            extra(&mut inputs, "strat", json!(strat));
            let charts = project.charts(&t.target, only)?;
            let (rows, w) = per_chart(&charts, |f| {
                let s = project.stratification(strat, f.target())?;
                let r = small_check(f, &s, seed)?;
                let w = r.warnings.clone();
                Ok((r, w))
            })?;
            report.result = json!({
                "is_small": rows.iter().all(|(_, r)| r.is_small),
                "charts": chart_rows(&rows),
            });
            report.warnings = w;
            note_properness(&charts, &mut report.warnings);
        }
        Command::FiberProductCheck(_) => {
            let charts = project.charts(&t.target, only)?;
            let (rows, w) = per_chart(&charts, |f| Ok((fiber_product_smallness(f, seed)?, Vec::new())))?;
            report.result = json!({
                "is_small": rows.iter().all(|(_, r)| r.is_small),
                "charts": chart_rows(&rows),
            });
            report.warnings = w;
        }
        Command::SmoothRestrictionCheck { strat, .. } => {
            extra(&mut inputs, "strat", json!(strat));
            let charts = project.charts(&t.target, only)?;
            let (rows, w) = per_chart(&charts, |f| {
                let s = project.stratification(strat, f.target())?;
                let r = smooth_restriction_check(f, &s, seed)?;
                let w = r.warnings.clone();
                Ok((r, w))
            })?;
            report.result = json!({
                "all_pass": rows.iter().all(|(_, r)| r.all_pass),
                "implies_trim": rows.iter().all(|(_, r)| r.implies_trim),
                "charts": chart_rows(&rows),
            });
            report.warnings = w;
        }
        Command::GenericDegree(_) => {
            let charts = project.charts(&t.target, only)?;
            let (rows, w) = per_chart(&charts, |f| Ok((generic_degree(f, seed)?, Vec::new())))?;
            report.result = json!({ "charts": chart_rows(&rows) });
            report.warnings = w;
        }
        Command::Pushforward { strat, mode, .. } => {
            extra(&mut inputs, "strat", json!(strat));
            extra(&mut inputs, "mode", json!(format!("{mode:?}").to_lowercase()));
            let charts = project.charts(&t.target, only)?;
            let (rows, w) = per_chart(&charts, |f| {
                let s = project.stratification(strat, f.target())?;
                let r = match mode {
                    PushMode::Support => pushforward_support(f, &s)?,
                    PushMode::Trim => pushforward_trim(f, &s, seed)?,
                    PushMode::GenericallyFinite => pushforward_generically_finite(f, &s, seed)?,
                    PushMode::Auto => match pushforward_generically_finite(f, &s, seed) {
                        Ok(r) => r,
                        Err(Error::Precondition(_)) | Err(Error::Input(_)) => pushforward_support(f, &s)?,
                        Err(e) => return Err(e),
                    },
                };
                let w = r.warnings.clone();
                Ok((r, w))
            })?;
            report.evidence = Value::Array(
                rows.iter()
                    .map(|(label, r)| json!({ "chart": label, "verdicts": to_value(&r.verdicts) }))
                    .collect(),
            );
            report.result = json!({ "charts": chart_rows(&rows) });
            report.warnings = w;
            note_properness(&charts, &mut report.warnings);
        }
        Command::IcReport { map, probe, .. } => {
            extra(&mut inputs, "map", json!(map));
            extra(&mut inputs, "probes", json!(probe));
            let s = project.variety_ideal(&t.target)?;
            if project.variety_kind(&t.target)? != AmbientKind::Affine {
                return Err(Error::input("ic-report needs the affine variety resolved by the charts"));
            }
            let charts = project.charts(map, only)?;
            let mut probes = Vec::new();
            for p in probe {
                let pt = project.point(p)?;
                let mut asserted = None;
                for (name, _) in &charts {
                    if let Some(a) = project.asserted_chi(name, &pt)? {
                        asserted = Some(a);
                    }
                }
                probes.push((pt, asserted));
            }
            let specs: Vec<MorphismSpec> = charts.iter().map(|(_, f)| f.clone()).collect();
            let r = ic_report(&s, &specs, &probes)?;
            report.warnings = r.warnings.clone();
            note_properness(&charts, &mut report.warnings);
            report.result = to_value(&r);
        }
    }
    // verdict tables of the check commands go to the evidence section
    if matches!(
        cmd,
        Command::TrimCheck(_)
            | Command::OmegaCheck(_)
            | Command::SmallCheck { .. }
            | Command::FiberProductCheck(_)
            | Command::SmoothRestrictionCheck { .. }
    ) {
        if let Some(charts) = report.result.as_object_mut().and_then(|m| m.remove("charts")) {
            report.evidence = json!({ "charts": charts });
        }
    }
    report.inputs = inputs;
    Ok(report)
}
