use std::collections::BTreeMap;

use charcycle::algebra::{rat, Rational};
use charcycle::calculus::{
    c_star, cc_transform, chern_mather, euler_obstruction, stringy_class, Ambient, BasisClass,
    ChowRingSpec, ConstructibleFunction, CycleKey, LagrangianCycle,
};
use charcycle::chow::ChowVector;
use charcycle::conormal::ProjectiveVariety;
use charcycle::Error;

const CONIC: &str = "x0*x2 - x1^2";
const NODAL: &str = "x1^2*x2 - x0^2*(x0 + x2)";
const CUSPIDAL: &str = "x1^2*x2 - x0^3";

fn plane_curve(f: &str) -> ProjectiveVariety {
    ProjectiveVariety::parse(&["x0", "x1", "x2"], &[f]).unwrap()
}

fn twisted_cubic() -> ProjectiveVariety {
    ProjectiveVariety::parse(&["x0", "x1", "x2", "x3"], &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]).unwrap()
}

fn conifold() -> ProjectiveVariety {
    ProjectiveVariety::parse(&["x0", "x1", "x2", "x3", "x4"], &["x1*x2 - x3*x4"]).unwrap()
}

fn pt(c: &[i64]) -> Vec<Rational> {
    c.iter().map(|&x| rat(x)).collect()
}

/// Curve oracle: `c_Ma = d [P^1] + (χ + Σ (Eu - 1)) [P^0]` in `P^n`.
fn curve_oracle(n: usize, degree: i64, chi: i64, eu_at_singular: &[i64]) -> Vec<i64> {
    let mut v = vec![0; n + 1];
    v[1] = degree;
    v[0] = chi + eu_at_singular.iter().map(|e| e - 1).sum::<i64>();
    v
}

#[test]
fn chern_mather_of_curves() {
    // smooth rational curves: c(TV) ∩ [V] = d[P^1] + 2[pt]
    assert_eq!(chern_mather(&plane_curve(CONIC), 0).unwrap().coeffs, curve_oracle(2, 2, 2, &[]));
    assert_eq!(chern_mather(&twisted_cubic(), 0).unwrap().coeffs, curve_oracle(3, 3, 2, &[]));
    // nodal cubic: χ = 1 (P^1 with two points glued), Eu(node) = mult = 2
    assert_eq!(chern_mather(&plane_curve(NODAL), 0).unwrap().coeffs, curve_oracle(2, 3, 1, &[2]));
    // cuspidal cubic: homeomorphic to P^1, Eu(cusp) = mult = 2
    assert_eq!(chern_mather(&plane_curve(CUSPIDAL), 0).unwrap().coeffs, curve_oracle(2, 3, 2, &[2]));
}

#[test]
fn chern_mather_of_linear_spaces() {
    let line = ProjectiveVariety::parse(&["x0", "x1", "x2", "x3"], &["x2", "x3"]).unwrap();
    assert_eq!(chern_mather(&line, 0).unwrap().coeffs, vec![2, 1, 0, 0]);
    let plane = ProjectiveVariety::parse(&["x0", "x1", "x2"], &[]).unwrap();
    assert_eq!(chern_mather(&plane, 0).unwrap().coeffs, vec![3, 3, 1]);
    let hyperplane = ProjectiveVariety::parse(&["x0", "x1", "x2", "x3"], &["x3"]).unwrap();
    assert_eq!(chern_mather(&hyperplane, 0).unwrap().coeffs, vec![3, 3, 1, 0]);
}

#[test]
fn chern_mather_of_smooth_quadric_surface() {
    // P^1 x P^1 embedded as a quadric: c = (1 + a)^2 (1 + b)^2, deg 2, c1.H = 4, c2 = 4
    let q = ProjectiveVariety::parse(&["x0", "x1", "x2", "x3"], &["x0*x3 - x1*x2"]).unwrap();
    assert_eq!(chern_mather(&q, 0).unwrap().coeffs, vec![4, 4, 2, 0]);
}

#[test]
fn euler_obstruction_values() {
    let smooth_probes: Vec<(ProjectiveVariety, Vec<i64>)> = vec![
        (plane_curve(CONIC), vec![1, 1, 1]),
        (plane_curve(NODAL), vec![3, 6, 1]),
        (plane_curve(CUSPIDAL), vec![1, 1, 1]),
        (twisted_cubic(), vec![1, 1, 1, 1]),
        (conifold(), vec![1, 1, 1, 1, 1]),
    ];
    for (v, p) in &smooth_probes {
        assert_eq!(euler_obstruction(v, &pt(p), 0).unwrap(), 1, "smooth probe {p:?}");
    }
    assert_eq!(euler_obstruction(&plane_curve(NODAL), &pt(&[0, 0, 1]), 0).unwrap(), 2);
    assert_eq!(euler_obstruction(&plane_curve(CUSPIDAL), &pt(&[0, 0, 1]), 0).unwrap(), 2);
    assert_eq!(euler_obstruction(&conifold(), &pt(&[1, 0, 0, 0, 0]), 0).unwrap(), 2);
}

#[test]
fn euler_obstruction_rejects_points_off_the_variety() {
    match euler_obstruction(&plane_curve(CONIC), &pt(&[1, 0, 1]), 0) {
        Err(Error::Input(_)) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn curve_consistency_identity() {
    // deg_0 c_Ma = χ + Σ (Eu - 1), with Eu computed by the Segre route
    let node = euler_obstruction(&plane_curve(NODAL), &pt(&[0, 0, 1]), 0).unwrap();
    assert_eq!(chern_mather(&plane_curve(NODAL), 0).unwrap().degree_zero(), 1 + node - 1);
    let cusp = euler_obstruction(&plane_curve(CUSPIDAL), &pt(&[0, 0, 1]), 0).unwrap();
    assert_eq!(chern_mather(&plane_curve(CUSPIDAL), 0).unwrap().degree_zero(), 2 + cusp - 1);
}

fn poset() -> Vec<CycleKey> {
    let plane = CycleKey::zero_section(Ambient::Projective(2));
    let conic = CycleKey::of_projective(&plane_curve(CONIC)).unwrap();
    let point = CycleKey::of_projective(&ProjectiveVariety::parse(&["x0", "x1", "x2"], &["x0", "x1"]).unwrap()).unwrap();
    vec![plane, conic, point]
}

#[test]
fn cc_on_basis_elements() {
    let keys = poset();
    assert_eq!(keys.iter().map(|k| k.dim()).collect::<Vec<_>>(), vec![2, 1, 0]);
    let eu_conic = ConstructibleFunction::single(keys[1].clone(), 1);
    assert_eq!(cc_transform(&eu_conic).unwrap(), LagrangianCycle::single(keys[1].clone(), -1));
    let eu_plane = ConstructibleFunction::single(keys[0].clone(), 1);
    assert_eq!(cc_transform(&eu_plane).unwrap(), LagrangianCycle::single(keys[0].clone(), 1));
}

#[test]
fn cycle_keys_canonicalize() {
    // same conic, different generator scaling and variable names
    let a = CycleKey::of_projective(&plane_curve(CONIC)).unwrap();
    let b = CycleKey::of_projective(&ProjectiveVariety::parse(&["u", "v", "w"], &["-3*u*w + 3*v^2"]).unwrap()).unwrap();
    assert_eq!(a, b);
    let c = CycleKey::of_projective(&plane_curve(NODAL)).unwrap();
    assert_ne!(a, c);
}

#[test]
fn cc_rejects_mixed_ambients() {
    let mut alpha = ConstructibleFunction::single(CycleKey::zero_section(Ambient::Projective(2)), 1);
    alpha.add_term(CycleKey::zero_section(Ambient::Projective(3)), 1);
    assert!(matches!(cc_transform(&alpha), Err(Error::Input(_))));
}

#[test]
fn c_star_examples() {
    let keys = poset();
    let conic = LagrangianCycle::single(keys[1].clone(), 1);
    assert_eq!(c_star(&conic, 0).unwrap().coeffs, vec![-2, -2, 0]);
    assert!(c_star(&LagrangianCycle::new(), 0).unwrap().is_zero());
    let one_conic = ConstructibleFunction::single(keys[1].clone(), 1);
    assert_eq!(c_star(&cc_transform(&one_conic).unwrap(), 0).unwrap().coeffs, vec![2, 2, 0]);
    let zero = LagrangianCycle::single(keys[0].clone(), 1);
    assert_eq!(c_star(&zero, 0).unwrap().coeffs, vec![3, 3, 1]);
}

#[test]
fn evaluate_constructible_function() {
    let keys = poset();
    // Eu_{P^2} + 2 Eu_conic - Eu_point
    let mut alpha = ConstructibleFunction::single(keys[0].clone(), 1);
    alpha.add_term(keys[1].clone(), 2);
    alpha.add_term(keys[2].clone(), -1);
    assert_eq!(alpha.evaluate(&pt(&[0, 0, 1]), 0).unwrap(), 1 + 2 - 1);
    assert_eq!(alpha.evaluate(&pt(&[1, 0, 0]), 0).unwrap(), 1 + 2);
    assert_eq!(alpha.evaluate(&pt(&[1, 1, 0]), 0).unwrap(), 1);
}

fn spec(dim_y: usize, n: usize, basis: &[(&str, usize, i64, i64)]) -> ChowRingSpec {
    ChowRingSpec {
        dim_y,
        ambient_n: n,
        basis: basis.iter().map(|&(name, dim, _, _)| BasisClass { name: name.into(), dim }).collect(),
        chern_class: basis.iter().map(|&(name, _, c, _)| (name.to_string(), c)).collect(),
        hyperplane_pullback: BTreeMap::new(),
        pairings: basis.iter().map(|&(name, _, _, p)| (name.to_string(), p)).collect(),
    }
}

#[test]
fn stringy_examples() {
    let p2 = spec(2, 2, &[("Y", 2, 1, 1), ("line", 1, 3, 1), ("pt", 0, 3, 1)]);
    assert_eq!(stringy_class(&p2).unwrap(), ChowVector::new(vec![3, 3, 1]));
    let double = spec(1, 1, &[("Y", 1, 1, 2), ("pt", 0, 2, 1)]);
    assert_eq!(stringy_class(&double).unwrap(), ChowVector::new(vec![2, 2]));

    let mut bad = p2.clone();
    bad.basis[1].dim = 5;
    assert!(matches!(stringy_class(&bad), Err(Error::Input(_))));
    let mut missing = p2.clone();
    missing.pairings.remove("pt");
    match stringy_class(&missing) {
        Err(Error::Input(m)) => assert!(m.contains("pt")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn conifold_stringy_equals_chern_mather() {
    // small resolution Y = P(O + O(-1)^2) over P^1: ξ, p with ξ^3 = 2 p ξ^2,
    // c(TY) = 1 + 3ξ + (3ξ^2 + 2ξp) + 6 pt, f*H = ξ
    let y = spec(
        3,
        4,
        &[("Y", 3, 1, 2), ("xi", 2, 3, 2), ("p", 2, 0, 1), ("xi2", 1, 3, 2), ("xip", 1, 2, 1), ("pt", 0, 6, 1)],
    );
    let stringy = stringy_class(&y).unwrap();
    let cma = chern_mather(&conifold(), 0).unwrap();
    assert_eq!(cma.coeffs, vec![6, 8, 6, 2, 0]);
    assert_eq!(stringy, cma);
}

mod trim_route {
    use super::*;
    use charcycle::algebra::{ParsePolynomial, Ring};
    use charcycle::calculus::{euler_obstruction_via_trim, ic_report, FiberShape};
    use charcycle::ideal::Ideal;
    use charcycle::morphism::{AffineVariety, MorphismSpec};

    fn chart(src: &[&str], comps: &[&str]) -> MorphismSpec {
        let s = Ring::with_vars(src).unwrap();
        let t = Ring::with_vars(&["X", "Y", "Z", "W"]).unwrap();
        let f = comps.iter().map(|c| s.parse(c).unwrap()).collect();
        MorphismSpec::new(AffineVariety::whole(&s), &t, f).unwrap()
    }

    fn conifold_charts() -> [MorphismSpec; 2] {
        [
            chart(&["x", "w", "t"], &["x", "t*w", "t*x", "w"]),
            chart(&["z", "y", "s"], &["s*z", "y", "z", "s*y"]),
        ]
    }

    #[test]
    fn vertex_fiber_is_a_line_in_each_chart() {
        for f in conifold_charts() {
            let e = euler_obstruction_via_trim(&f, &pt(&[0, 0, 0, 0]), None).unwrap();
            assert_eq!(e.shape, FiberShape::Linear(1));
            assert_eq!(e.chi, 2);
        }
    }

    #[test]
    fn both_routes_agree_at_the_vertex() {
        let f = &conifold_charts()[0];
        let via_trim = euler_obstruction_via_trim(f, &pt(&[0, 0, 0, 0]), None).unwrap().chi;
        let via_segre = euler_obstruction(&conifold(), &pt(&[1, 0, 0, 0, 0]), 0).unwrap();
        assert_eq!(via_trim, via_segre);
    }

    #[test]
    fn smooth_point_has_point_fiber() {
        let f = &conifold_charts()[0];
        let e = euler_obstruction_via_trim(f, &pt(&[1, 1, 1, 1]), None).unwrap();
        assert_eq!((e.chi, e.shape), (1, FiberShape::Points(1)));
    }

    #[test]
    fn non_trim_map_is_rejected() {
        let s = Ring::with_vars(&["u", "t"]).unwrap();
        let t = Ring::with_vars(&["X", "Y"]).unwrap();
        let f = MorphismSpec::new(AffineVariety::whole(&s), &t, s.parse_all(&["u", "u*t"]).unwrap()).unwrap();
        assert!(matches!(
            euler_obstruction_via_trim(&f, &pt(&[0, 0]), None),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn curved_fiber_needs_an_assertion() {
        // fiber over 0 is a line together with a parabola
        let s = Ring::with_vars(&["x", "y", "z"]).unwrap();
        let t = Ring::with_vars(&["A", "B", "C"]).unwrap();
        let f = MorphismSpec::new(
            AffineVariety::whole(&s),
            &t,
            s.parse_all(&["x", "y*(y - z^2)", "z*x"]).unwrap(),
        )
        .unwrap();
        let probe = pt(&[0, 0, 0]);
        let r = charcycle::calculus::fiber_euler(&f, &probe, None);
        assert!(matches!(r, Err(Error::UnsupportedFiber(_))), "{r:?}");
        let a = charcycle::calculus::fiber_euler(&f, &probe, Some(3)).unwrap();
        assert_eq!((a.chi, a.shape), (3, FiberShape::Asserted));
    }

    #[test]
    fn ic_report_for_the_conifold() {
        let f = &conifold_charts()[0];
        let s = Ideal::parse(f.target(), &["X*Y - Z*W"]).unwrap();
        let probes = vec![(pt(&[0, 0, 0, 0]), None), (pt(&[1, 1, 1, 1]), None)];
        let r = ic_report(&s, std::slice::from_ref(f), &probes).unwrap();
        assert!(r.is_irreducible);
        assert_eq!(r.cc.len(), 1);
        assert_eq!(r.cc.get(&CycleKey::of_affine(&s).unwrap()), 1);
        let stalks: Vec<i64> = r.stalks.iter().map(|s| s.stalk_chi).collect();
        assert_eq!(stalks, vec![-2, -1]);
    }

    #[test]
    fn ic_report_reads_probes_in_a_covering_chart() {
        let charts = conifold_charts();
        let s = Ideal::parse(charts[0].target(), &["X*Y - Z*W"]).unwrap();
        // (0, 1, 1, 0) is missed by the first chart
        let probe = vec![(pt(&[0, 1, 1, 0]), None)];
        assert!(ic_report(&s, &charts[..1], &probe).is_err());
        let r = ic_report(&s, &charts, &probe).unwrap();
        assert_eq!(r.stalks[0].stalk_chi, -1);
    }

    #[test]
    fn ic_report_rejects_wrong_variety() {
        let f = &conifold_charts()[0];
        let s = Ideal::parse(f.target(), &["X"]).unwrap();
        assert!(matches!(ic_report(&s, std::slice::from_ref(f), &[]), Err(Error::Input(_))));
    }
}
