use std::hint::black_box;

use charcycle::algebra::{jacobian_matrix, minors_ideal, ParsePolynomial, PolyMatrix, Ring};
use charcycle::conormal::{conormal_ideal, ProjectiveVariety};
use charcycle::exec;
use charcycle::ideal::Ideal;
use charcycle::morphism::{rank_strata, small_check, AffineVariety, MorphismSpec, StratificationSpec, Stratum};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, bool); 2] = [("sequential", false), ("parallel", true)];

fn conifold_chart() -> MorphismSpec {
    let s = Ring::with_vars(&["x", "w", "t"]).unwrap();
    let t = Ring::with_vars(&["X", "Y", "Z", "W"]).unwrap();
    let f = s.parse_all(&["x", "t*w", "t*x", "w"]).unwrap();
    MorphismSpec::new(AffineVariety::whole(&s), &t, f).unwrap()
}

fn cone_strata(f: &MorphismSpec) -> StratificationSpec {
    let t = f.target();
    let stratum = |name: &str, gens: &[&str], dense| Stratum {
        name: name.into(),
        ideal: Ideal::parse(t, gens).unwrap(),
        claimed_dim: None,
        dense,
    };
    StratificationSpec::new(vec![stratum("smooth", &["X*Y - Z*W"], true), stratum("vertex", &["X", "Y", "Z", "W"], false)])
        .unwrap()
}

fn bench_minors(c: &mut Criterion) {
    let r = Ring::with_vars(&["a", "b", "c", "d", "e"]).unwrap();
    let gens = r
        .parse_all(&["a*b - c*d", "a^2 + b*e - c^2", "b*c*d - e^3", "a*e - b*d + c", "d^2 - a*c*e"])
        .unwrap();
    let jac: PolyMatrix = jacobian_matrix(&gens, &(0..5).collect::<Vec<_>>()).unwrap();
    let mut group = c.benchmark_group("minors_5x5_k3");
    for (label, on) in MODES {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            exec::set_parallel(on);
            b.iter(|| black_box(minors_ideal(&jac, 3).unwrap()))
        });
    }
    group.finish();
}

fn bench_conormal(c: &mut Criterion) {
    let mut group = c.benchmark_group("conormal_nodal_cubic");
    group.sample_size(10);
    for (label, on) in MODES {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            exec::set_parallel(on);
            b.iter(|| {
                let v = ProjectiveVariety::parse(&["x0", "x1", "x2"], &["x1^2*x2 - x0^2*(x0 + x2)"]).unwrap();
                black_box(conormal_ideal(&v, 0).unwrap().polar_degrees)
            })
        });
    }
    group.finish();
}

fn bench_rank_and_small(c: &mut Criterion) {
    let mut group = c.benchmark_group("conifold_chart");
    group.sample_size(20);
    for (label, on) in MODES {
        group.bench_function(BenchmarkId::new("rank_strata", label), |b| {
            exec::set_parallel(on);
            b.iter(|| black_box(rank_strata(&conifold_chart()).unwrap()))
        });
        group.bench_function(BenchmarkId::new("small_check", label), |b| {
            exec::set_parallel(on);
            b.iter(|| {
                let f = conifold_chart();
                let s = cone_strata(&f);
                black_box(small_check(&f, &s, 0).unwrap().is_small)
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_minors, bench_conormal, bench_rank_and_small);
criterion_main!(benches);
