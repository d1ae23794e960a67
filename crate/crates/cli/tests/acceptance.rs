//! End-to-end acceptance run over the shipped corpus. Prints one line per
//! criterion and exits nonzero when any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use charcycle::algebra::{rat, GenericRng, Monomial, ParsePolynomial, Polynomial, Rational, Ring, RingRef};
use charcycle::calculus::{
    cc_inverse, cc_transform, chern_mather, euler_obstruction, euler_obstruction_via_trim, ic_report, stringy_class,
    Ambient, ConstructibleFunction, CycleKey, LagrangianCycle,
};
use charcycle::conormal::{conormal_ideal, dual_variety, ProjectiveVariety};
use charcycle::ideal::{Ideal, Limits};
use charcycle::morphism::{
    fiber_product_smallness, generic_degree, omega_trim_check, small_check, trim_check, AffineVariety, MorphismSpec,
    StratificationSpec, Stratum,
};
use charcycle::pushforward::{incidence_scheme, pushforward_generically_finite, pushforward_trim};
use charcycle_cli::Project;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn project(name: &str) -> Result<Project, String> {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name].iter().collect();
    Project::load(&p, Limits::default()).map_err(e)
}

fn pt(c: &[i64]) -> Vec<Rational> {
    c.iter().map(|&x| rat(x)).collect()
}

/// Plane curve data for the oracles: degree, nodes, cusps, and the
/// singular points as (point, multiplicity, branches).
struct CurveData {
    name: &'static str,
    degree: i64,
    nodes: i64,
    cusps: i64,
    singular: Vec<(Vec<i64>, i64, i64)>,
}

fn plane_curves() -> Vec<CurveData> {
    vec![
        CurveData { name: "conic", degree: 2, nodes: 0, cusps: 0, singular: vec![] },
        CurveData { name: "fermat", degree: 3, nodes: 0, cusps: 0, singular: vec![] },
        CurveData { name: "nodal", degree: 3, nodes: 1, cusps: 0, singular: vec![(vec![0, 0, 1], 2, 2)] },
        CurveData { name: "cuspidal", degree: 3, nodes: 0, cusps: 1, singular: vec![(vec![0, 0, 1], 2, 1)] },
    ]
}

/// Lowest total degree of the local equation at `p`, a point of the chart
/// `x_k = 1`: the multiplicity of a plane curve there.
fn multiplicity(f: &Polynomial, p: &[i64]) -> i64 {
    let ring = f.ring().clone();
    let k = p.iter().position(|&c| c != 0).unwrap();
    let shifted: Vec<Polynomial> = (0..p.len())
        .map(|i| {
            let x = Polynomial::var(&ring, i);
            if i == k {
                Polynomial::constant(&ring, rat(p[k]))
            } else {
                &x + &Polynomial::constant(&ring, rat(p[i]))
            }
        })
        .collect();
    let local = f.compose(&ring, &shifted).unwrap();
    local.terms().iter().map(|(m, _)| m.degree() as i64).min().unwrap()
}

/// χ of a plane curve whose singularities are all unibranch or nodal:
/// the normalization has genus g = (d-1)(d-2)/2 - δ - κ, and each point
/// with r branches glues r points into one.
fn euler_characteristic(c: &CurveData) -> i64 {
    let g = (c.degree - 1) * (c.degree - 2) / 2 - c.nodes - c.cusps;
    2 - 2 * g - c.singular.iter().map(|(_, _, r)| r - 1).sum::<i64>()
}

fn criterion_1() -> Outcome {
    let curves = project("curves.json")?;
    let mut seen = Vec::new();
    for c in plane_curves() {
        let v = curves.projective(c.name).map_err(e)?;
        let got = conormal_ideal(&v, 0).map_err(e)?.polar_degrees;
        let class = c.degree * (c.degree - 1) - 2 * c.nodes - 3 * c.cusps;
        let want = vec![c.degree as u64, class as u64];
        ensure!(got == want, "{}: polar degrees {got:?}, Plücker gives {want:?}", c.name);
        seen.push(format!("{} {:?}", c.name, got));
    }
    Ok(seen.join(", "))
}

fn criterion_2() -> Outcome {
    let curves = project("curves.json")?;
    for name in ["conic", "nodal"] {
        let v = curves.projective(name).map_err(e)?;
        let back = dual_variety(&dual_variety(&v, 0).map_err(e)?, 0).map_err(e)?;
        ensure!(back.same_as(&v).map_err(e)?, "{name}: dual of dual differs");
    }
    Ok("conic, nodal".into())
}

fn criterion_3() -> Outcome {
    let curves = project("curves.json")?;
    let mut out = Vec::new();
    for c in plane_curves().into_iter().filter(|c| c.name != "fermat") {
        let v = curves.projective(c.name).map_err(e)?;
        let f = &v.ideal().generators()[0];
        // deg_0 c_Ma = χ + Σ (Eu - 1), Eu of a curve = multiplicity
        let eu_excess: i64 = c.singular.iter().map(|(p, _, _)| multiplicity(f, p) - 1).sum();
        let want = vec![euler_characteristic(&c) + eu_excess, c.degree, 0];
        let got = chern_mather(&v, 0).map_err(e)?.coeffs;
        ensure!(got == want, "{}: c_Ma {got:?}, oracle {want:?}", c.name);
        out.push(format!("{} {:?}", c.name, got));
    }
    // smooth twisted cubic: c(TP^1) = 1 + 2pt pushed into P^3, degree 3
    let tc = project("twisted_cubic.json")?.projective("twisted").map_err(e)?;
    let got = chern_mather(&tc, 0).map_err(e)?.coeffs;
    ensure!(got == vec![2, 3, 0, 0], "twisted cubic c_Ma {got:?}");
    out.push(format!("twisted {got:?}"));
    Ok(out.join(", "))
}

fn criterion_4() -> Outcome {
    let curves = project("curves.json")?;
    let twisted = project("twisted_cubic.json")?;
    let conifold = project("conifold.json")?;
    let smooth: Vec<(&Project, &str, Vec<i64>)> = vec![
        (&curves, "conic", vec![1, 0, 0]),
        (&curves, "conic", vec![0, 0, 1]),
        (&curves, "conic", vec![1, 1, 1]),
        (&curves, "nodal", vec![3, 6, 1]),
        (&twisted, "twisted", vec![1, 1, 1, 1]),
        (&conifold, "conifold", vec![0, 1, 0, 0, 0]),
    ];
    for (p, name, point) in &smooth {
        let v = p.projective(name).map_err(e)?;
        ensure!(!v.is_singular_point(&pt(point)).map_err(e)?, "{name} {point:?} is not a smooth probe");
        let eu = euler_obstruction(&v, &pt(point), 0).map_err(e)?;
        ensure!(eu == 1, "Eu_{name}{point:?} = {eu}");
    }
    for c in plane_curves().into_iter().filter(|c| !c.singular.is_empty()) {
        let v = curves.projective(c.name).map_err(e)?;
        for (p, m, _) in &c.singular {
            let eu = euler_obstruction(&v, &pt(p), 0).map_err(e)?;
            ensure!(eu == *m, "Eu at the {} singular point = {eu}, multiplicity {m}", c.name);
        }
    }
    let cone = conifold.projective("conifold").map_err(e)?;
    let segre = euler_obstruction(&cone, &pt(&[1, 0, 0, 0, 0]), 0).map_err(e)?;
    let mut trim = Vec::new();
    for (_, f) in conifold.charts("small", None).map_err(e)? {
        ensure!(trim_check(&f).map_err(e)?.is_trim, "chart is not trim");
        trim.push(euler_obstruction_via_trim(&f, &pt(&[0, 0, 0, 0]), None).map_err(e)?.chi);
    }
    ensure!(segre == 2 && trim.iter().all(|&t| t == segre), "vertex: Segre route {segre}, trim route {trim:?}");
    Ok(format!("{} smooth probes = 1, node = 2, cusp = 2, vertex = {segre} = {trim:?}", smooth.len()))
}

struct Member {
    label: String,
    map: MorphismSpec,
    strat: StratificationSpec,
}

fn affine_map(src: &[&str], tgt: &[&str], comps: &[&str]) -> MorphismSpec {
    let s = Ring::with_vars(src).unwrap();
    let t = Ring::with_vars(tgt).unwrap();
    let f = comps.iter().map(|c| s.parse(c).unwrap()).collect();
    MorphismSpec::new(AffineVariety::whole(&s), &t, f).unwrap()
}

fn strata(t: &RingRef, list: &[(&str, &[&str], bool)]) -> StratificationSpec {
    StratificationSpec::new(
        list.iter()
            .map(|&(name, gens, dense)| Stratum {
                name: name.into(),
                ideal: Ideal::parse(t, gens).unwrap(),
                claimed_dim: None,
                dense,
            })
            .collect(),
    )
    .unwrap()
}

/// Relabel and rescale the target: component i goes to coordinate σ(i)
/// with factor c_i, and every stratum is transported along.
fn scramble(base: &Member, k: u64) -> Result<Member, String> {
    let f = &base.map;
    let n = f.components().len();
    let mut rng = GenericRng::new(20_240, k);
    let mut sigma: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        sigma.swap(i, rng.small(0, i as i64) as usize);
    }
    let scale: Vec<i64> = (0..n).map(|_| rng.small(1, 3) * if rng.small(0, 1) == 0 { -1 } else { 1 }).collect();
    let t = f.target().clone();
    let mut comps = vec![Polynomial::zero(f.source_ring()); n];
    for i in 0..n {
        comps[sigma[i]] = f.components()[i].scale(&rat(scale[i]));
    }
    let map = MorphismSpec::new(f.source().clone(), &t, comps).map_err(e)?.with_proper_asserted(true);
    let images: Vec<Polynomial> = (0..n)
        .map(|i| Polynomial::var(&t, sigma[i]).scale(&(rat(1) / rat(scale[i]))))
        .collect();
    let moved = base
        .strat
        .strata()
        .iter()
        .map(|s| {
            Ok(Stratum {
                name: s.name.clone(),
                ideal: s.ideal.substitute(&t, &images)?,
                claimed_dim: s.claimed_dim,
                dense: s.dense,
            })
        })
        .collect::<charcycle::Result<Vec<_>>>()
        .map_err(e)?;
    Ok(Member {
        label: format!("{} scrambled {sigma:?} {scale:?}", base.label),
        map,
        strat: StratificationSpec::new(moved).map_err(e)?,
    })
}

fn corpus_members() -> Result<Vec<Member>, String> {
    let mut out = Vec::new();
    let conifold = project("conifold.json")?;
    for (name, f) in conifold.charts("small", None).map_err(e)? {
        let strat = conifold.stratification("cone_strata", f.target()).map_err(e)?;
        out.push(Member { label: format!("conifold {name}"), map: f, strat });
    }
    let blowup = project("blowup.json")?;
    let f = blowup.map("blowup").map_err(e)?;
    let strat = blowup.stratification("plane_strata", f.target()).map_err(e)?;
    out.push(Member { label: "blowup".into(), map: f, strat });
    let dc = project("double_cover.json")?;
    let f = dc.map("square").map_err(e)?;
    let strat = dc.stratification("line", f.target()).map_err(e)?;
    out.push(Member { label: "double cover".into(), map: f, strat });
    Ok(out)
}

fn randomized_members(corpus: &[Member]) -> Result<Vec<Member>, String> {
    let bu3 = affine_map(&["u", "t", "v"], &["X", "Y", "V"], &["u", "u*t", "v"]);
    let bu3_strata = strata(bu3.target(), &[("line", &["X", "Y"], false), ("space", &[], true)]);
    let bu3 = Member { label: "blowup x line".into(), map: bu3, strat: bu3_strata };
    Ok(vec![scramble(&corpus[0], 1)?, scramble(&corpus[2], 2)?, scramble(&bu3, 3)?])
}

fn criterion_5() -> Outcome {
    let corpus = corpus_members()?;
    let verdict = |m: &Member| -> Result<(bool, bool), String> {
        Ok((trim_check(&m.map).map_err(e)?.is_trim, small_check(&m.map, &m.strat, 0).map_err(e)?.is_small))
    };
    ensure!(verdict(&corpus[0])? == (true, true), "conifold chart: {:?}", verdict(&corpus[0])?);
    ensure!(verdict(&corpus[2])? == (false, false), "blowup chart: {:?}", verdict(&corpus[2])?);
    let dc = &corpus[3];
    let m = generic_degree(&dc.map, 0).map_err(e)?.degree;
    ensure!(trim_check(&dc.map).map_err(e)?.is_trim && m == 2, "double cover: rank condition / degree {m}");
    let random = randomized_members(&corpus)?;
    let expected = [(true, true), (false, false), (false, false)];
    for (r, want) in random.iter().zip(expected) {
        ensure!(verdict(r)? == want, "{}: {:?}, expected {want:?}", r.label, verdict(r)?);
    }
    for m in corpus.iter().chain(random.iter()) {
        let (trim, small) = verdict(m)?;
        ensure!(!trim || small, "{}: trim but not small", m.label);
    }
    Ok(format!("trim ⇒ small on {} members, double cover m = {m}", corpus.len() + random.len()))
}

fn criterion_6() -> Outcome {
    let corpus = corpus_members()?;
    let chart = &corpus[0];
    let r = pushforward_trim(&chart.map, &chart.strat, 0).map_err(e)?;
    let cone = project("conifold.json")?.cycle_key("cone").map_err(e)?;
    ensure!(r.cycle == Some(LagrangianCycle::single(cone, 1)), "conifold chart cycle {:?}", r.cycle);
    let vertex = chart.strat.strata().iter().find(|s| s.name == "vertex").unwrap();
    let inc = incidence_scheme(&chart.map, &chart.strat, vertex).map_err(e)?;
    ensure!(inc.dim == 3 && inc.threshold == 4 && inc.passes, "vertex incidence {} vs {}", inc.dim, inc.threshold);

    let bu = &corpus[2];
    let origin = bu.strat.strata().iter().find(|s| s.name == "origin").unwrap();
    let inc_bu = incidence_scheme(&bu.map, &bu.strat, origin).map_err(e)?;
    let support = charcycle::pushforward::pushforward_support(&bu.map, &bu.strat).map_err(e)?;
    let flagged = support.verdicts.iter().any(|v| v.stratum == "origin" && v.possible)
        && support.warnings.iter().any(|w| w.contains("possible component"));
    ensure!(flagged && inc_bu.dim == 2 && inc_bu.threshold == 2, "blowup origin: dim {} flagged {flagged}", inc_bu.dim);

    let dc = &corpus[3];
    let r = pushforward_generically_finite(&dc.map, &dc.strat, 0).map_err(e)?;
    let line = CycleKey::zero_section(Ambient::Affine(1));
    ensure!(r.cycle == Some(LagrangianCycle::single(line, 2)), "double cover cycle {:?}", r.cycle);
    Ok(format!("conifold 1·T*_S, vertex dim ℱ = {} < 4; blowup dim ℱ = {} flagged; double cover 2·T*", inc.dim, inc_bu.dim))
}

fn criterion_7() -> Outcome {
    let curves = project("curves.json")?;
    let keys: Vec<CycleKey> = ["plane", "conic", "origin"]
        .iter()
        .map(|n| curves.cycle_key(n))
        .collect::<charcycle::Result<_>>()
        .map_err(e)?;
    for k in &keys {
        let img = cc_transform(&ConstructibleFunction::single(k.clone(), 1)).map_err(e)?;
        let sign = if k.dim() % 2 == 0 { 1 } else { -1 };
        ensure!(img == LagrangianCycle::single(k.clone(), sign), "CC(Eu_{k}) = {img:?}");
    }
    let mut rng = GenericRng::new(7, 0);
    for trial in 0..100 {
        let mut alpha = ConstructibleFunction::new();
        for k in &keys {
            alpha.add_term(k.clone(), rng.small(-20, 20));
        }
        let back = cc_inverse(&cc_transform(&alpha).map_err(e)?).map_err(e)?;
        ensure!(back == alpha, "trial {trial}: round trip changed {alpha:?}");
    }
    Ok("100 round trips, diagonal (+1, -1, +1)".into())
}

fn criterion_8() -> Outcome {
    let conifold = project("conifold.json")?;
    let cone = conifold.variety_ideal("cone").map_err(e)?;
    let charts: Vec<MorphismSpec> = conifold.charts("small", None).map_err(e)?.into_iter().map(|(_, f)| f).collect();
    let probes = vec![(pt(&[0, 0, 0, 0]), None), (pt(&[0, 1, 1, 0]), None)];
    let r = ic_report(&cone, &charts, &probes).map_err(e)?;
    let stalks: Vec<i64> = r.stalks.iter().map(|s| s.stalk_chi).collect();
    ensure!(r.is_irreducible && stalks == vec![-2, -1], "irreducible {} stalks {stalks:?}", r.is_irreducible);
    Ok(format!("irreducible, stalks {stalks:?}"))
}

fn criterion_9() -> Outcome {
    let corpus = corpus_members()?;
    let random = randomized_members(&corpus)?;
    let mut fp = 0;
    let all: Vec<&Member> = corpus.iter().chain(random.iter()).collect();
    for m in &all {
        let trim = trim_check(&m.map).map_err(e)?;
        let omega = omega_trim_check(&m.map).map_err(e)?;
        ensure!(omega.is_trim == trim.is_trim, "{}: omega {} vs trim {}", m.label, omega.is_trim, trim.is_trim);
        // the fiber-product criterion is stated for birational maps
        if generic_degree(&m.map, 0).map_err(e)?.degree == 1 {
            let a = fiber_product_smallness(&m.map, 0).map_err(e)?.is_small;
            let b = small_check(&m.map, &m.strat, 0).map_err(e)?.is_small;
            ensure!(a == b, "{}: fiber product {a} vs small {b}", m.label);
            fp += 1;
        }
    }
    Ok(format!("omega ≡ trim on {}, fiber product ≡ small on {fp} birational members", all.len()))
}

fn criterion_10() -> Outcome {
    let conifold = project("conifold.json")?;
    let s = stringy_class(&conifold.chow_spec("small_resolution").map_err(e)?).map_err(e)?;
    let m = chern_mather(&conifold.projective("conifold").map_err(e)?, 0).map_err(e)?;
    ensure!(s == m, "stringy {s} vs Mather {m}");
    Ok(format!("{s}"))
}

fn random_poly(rng: &mut GenericRng, r: &RingRef) -> Polynomial {
    let mut p = Polynomial::zero(r);
    for _ in 0..3 {
        let exps: Vec<u16> = (0..r.nvars()).map(|_| rng.small(0, 2) as u16).collect();
        let t = Polynomial::monomial(r, Monomial::from_exponents(&exps), rat(rng.nonzero_coeff()));
        p = &p + &t;
    }
    p
}

fn criterion_11() -> Outcome {
    let r = Ring::with_vars(&["x", "y", "z"]).map_err(e)?;
    let mut rng = GenericRng::new(11, 0);
    let mut cases = 0;
    while cases < 20 {
        let gens: Vec<Polynomial> = (0..3).map(|_| random_poly(&mut rng, &r)).filter(|p| !p.is_zero()).collect();
        if gens.is_empty() {
            continue;
        }
        let mut perm = gens.clone();
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.small(0, i as i64) as usize);
        }
        let a = Ideal::new(&r, gens).map_err(e)?.canonical().map_err(e)?;
        let b = Ideal::new(&r, perm).map_err(e)?.canonical().map_err(e)?;
        ensure!(a.elements() == b.elements(), "case {cases}: reduced bases differ");
        cases += 1;
    }
    for k in 0..5 {
        let i = Ideal::new(&r, (0..2).map(|_| random_poly(&mut rng, &r)).collect()).map_err(e)?;
        let j = Ideal::parse(&r, &[["x", "y", "z", "x*y", "y*z"][k]]).map_err(e)?;
        let once = i.saturation(&j).map_err(e)?;
        let twice = once.saturation(&j).map_err(e)?;
        ensure!(twice.equals(&once).map_err(e)?, "saturation {k} is not idempotent");
    }
    let p3 = Ring::with_vars(&["x0", "x1", "x2", "x3"]).map_err(e)?;
    let proj = |gens: &[&str]| -> Result<(i64, Option<u64>), String> {
        let dd = Ideal::parse(&p3, gens).map_err(e)?.dimension_and_degree().map_err(e)?;
        Ok((dd.projective_dimension(), dd.degree))
    };
    ensure!(Ideal::zero(&p3).dimension().map_err(e)? == 4, "dim of (0)");
    ensure!(proj(&["x0 + 2*x3"])? == (2, Some(1)), "hyperplane {:?}", proj(&["x0 + 2*x3"])?);
    let tc = proj(&["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"])?;
    ensure!(tc == (1, Some(3)), "twisted cubic {tc:?}");
    let tcv = ProjectiveVariety::parse(&["x0", "x1", "x2", "x3"], &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"])
        .map_err(e)?;
    ensure!(tcv.dimension().map_err(e)? == 1 && tcv.degree().map_err(e)? == 3, "twisted cubic variety");
    Ok("20 permutation cases, 5 saturations, (0) → 4, hyperplane → (2, 1), twisted cubic → (1, 3)".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("Plücker suite", criterion_1),
        ("biduality", criterion_2),
        ("Chern-Mather classes", criterion_3),
        ("Euler obstruction", criterion_4),
        ("trim and small", criterion_5),
        ("pushforward", criterion_6),
        ("CC isomorphism", criterion_7),
        ("IC report", criterion_8),
        ("criterion equivalences", criterion_9),
        ("stringy = Mather", criterion_10),
        ("kernel properties", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
