use charcycle::algebra::{rat, ParsePolynomial, Rational, Ring, RingRef};
use charcycle::ideal::Ideal;
use charcycle::morphism::{
    fiber_product_smallness, generic_degree, omega_trim_check, rank_strata, small_check, smooth_restriction_check,
    trim_check, AffineVariety, MorphismSpec, StratificationSpec, Stratum,
};
use charcycle::Error;
use num_traits::Zero;

fn map(src: &[&str], src_ideal: &[&str], tgt: &[&str], comps: &[&str]) -> MorphismSpec {
    let s = Ring::with_vars(src).unwrap();
    let t = Ring::with_vars(tgt).unwrap();
    let y = AffineVariety::new(Ideal::parse(&s, src_ideal).unwrap());
    let f = comps.iter().map(|c| s.parse(c).unwrap()).collect();
    MorphismSpec::new(y, &t, f).unwrap()
}

fn conifold_chart() -> MorphismSpec {
    map(&["x", "w", "t"], &[], &["X", "Y", "Z", "W"], &["x", "t*w", "t*x", "w"])
}

fn blowup_chart() -> MorphismSpec {
    map(&["u", "t"], &[], &["X", "Y"], &["u", "u*t"])
}

fn identity() -> MorphismSpec {
    map(&["a", "b"], &[], &["A", "B"], &["a", "b"])
}

fn stratum(ring: &RingRef, name: &str, gens: &[&str], dense: bool) -> Stratum {
    Stratum {
        name: name.into(),
        ideal: Ideal::parse(ring, gens).unwrap(),
        claimed_dim: None,
        dense,
    }
}

fn conifold_strata(f: &MorphismSpec) -> StratificationSpec {
    let t = f.target();
    StratificationSpec::new(vec![
        stratum(t, "vertex", &["X", "Y", "Z", "W"], false),
        stratum(t, "smooth", &["X*Y - Z*W"], true),
    ])
    .unwrap()
}

fn blowup_strata(f: &MorphismSpec) -> StratificationSpec {
    let t = f.target();
    StratificationSpec::new(vec![stratum(t, "origin", &["X", "Y"], false), stratum(t, "plane", &[], true)]).unwrap()
}

/// Rank of a rational matrix by Gaussian elimination.
fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let mut r = 0;
    let cols = m.first().map_or(0, |row| row.len());
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let k = &m[i][c] / &m[r][c];
                for j in 0..cols {
                    let v = &k * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

fn jacobian_rank_at(f: &MorphismSpec, p: &[i64]) -> usize {
    let pt: Vec<Rational> = p.iter().map(|&c| rat(c)).collect();
    let rows = f
        .components()
        .iter()
        .map(|g| (0..pt.len()).map(|v| g.derivative(v).evaluate(&pt)).collect())
        .collect();
    rank(rows)
}

#[test]
fn squaring_has_rank_zero_at_origin() {
    let f = map(&["t"], &[], &["T"], &["t^2"]);
    let rs = rank_strata(&f).unwrap();
    assert_eq!(rs.strata[0].dim, 0);
    assert!(rs.strata[0].closure.equals(&Ideal::parse(f.source_ring(), &["t"]).unwrap()).unwrap());
    assert_eq!(rs.strata[1].dim, 1);
    assert!(!trim_check(&f).unwrap().is_trim);
}

#[test]
fn conifold_chart_rank_strata_match_pointwise_ranks() {
    let f = conifold_chart();
    let rs = rank_strata(&f).unwrap();
    let dims: Vec<i64> = rs.strata.iter().map(|s| s.dim).collect();
    assert_eq!(dims, vec![-1, -1, 1, 3]);
    let y2 = &rs.strata[2].closure;
    assert!(y2.equals(&Ideal::parse(f.source_ring(), &["x", "w"]).unwrap()).unwrap());
    // oracle: pointwise ranks
    for t in [-3, 0, 5, 11] {
        assert_eq!(jacobian_rank_at(&f, &[0, 0, t]), 2);
    }
    for p in [[1, 2, 3], [0, 1, 7], [4, 0, -2]] {
        assert_eq!(jacobian_rank_at(&f, &p), 3);
    }
}

#[test]
fn blowup_chart_rank_strata() {
    let f = blowup_chart();
    let rs = rank_strata(&f).unwrap();
    assert_eq!(rs.dim_of(0), -1);
    assert_eq!(rs.dim_of(1), 1);
    assert_eq!(rs.dim_of(2), 2);
    assert!(rs.strata[1].closure.equals(&Ideal::parse(f.source_ring(), &["u"]).unwrap()).unwrap());
    for t in [-2, 0, 9] {
        assert_eq!(jacobian_rank_at(&f, &[0, t]), 1);
    }
}

#[test]
fn trim_verdicts() {
    let c = trim_check(&conifold_chart()).unwrap();
    assert!(c.is_trim);
    let row = &c.rows[2];
    assert_eq!((row.d, row.dim, row.bound, row.passes), (2, 1, 2, true));
    assert_eq!(c.rows.len(), 4);
    assert!(!c.rows[3].required);

    let b = trim_check(&blowup_chart()).unwrap();
    assert!(!b.is_trim);
    assert_eq!(b.first_failure().unwrap().d, 1);

    assert!(trim_check(&identity()).unwrap().is_trim);
}

#[test]
fn omega_check_agrees_with_trim_check() {
    for f in [conifold_chart(), blowup_chart(), identity(), map(&["t"], &[], &["T"], &["t^2"])] {
        assert_eq!(omega_trim_check(&f).unwrap(), trim_check(&f).unwrap());
    }
}

#[test]
fn rank_loci_are_nested() {
    for f in [conifold_chart(), blowup_chart()] {
        let rs = rank_strata(&f).unwrap();
        for w in rs.strata.windows(2) {
            // V(rank <= d) inside V(rank <= d+1)
            assert!(w[0].at_most.contains_ideal(&w[1].at_most).unwrap());
        }
    }
}

#[test]
fn small_verdicts() {
    let f = conifold_chart();
    let r = small_check(&f, &conifold_strata(&f), 0).unwrap();
    assert!(r.is_small);
    assert_eq!(r.rows.len(), 1);
    let row = &r.rows[0];
    assert_eq!((row.fiber_dim, row.codim, row.passes), (1, 3, true));
    assert_eq!(row.general_fiber_dim, 1);

    let f = blowup_chart();
    let r = small_check(&f, &blowup_strata(&f), 0).unwrap();
    assert!(!r.is_small);
    assert_eq!((r.rows[0].fiber_dim, r.rows[0].codim), (1, 2));

    let f = identity();
    let t = f.target();
    let trivial = StratificationSpec::new(vec![stratum(t, "all", &[], true)]).unwrap();
    let r = small_check(&f, &trivial, 0).unwrap();
    assert!(r.is_small && r.rows.is_empty());
}

#[test]
fn stratum_outside_image_is_rejected() {
    let f = conifold_chart();
    let t = f.target();
    let bad = StratificationSpec::new(vec![
        stratum(t, "off", &["X - 1", "Y - 1", "Z", "W"], false),
        stratum(t, "smooth", &["X*Y - Z*W"], true),
    ])
    .unwrap();
    assert!(matches!(small_check(&f, &bad, 0), Err(Error::Input(_))));
}

#[test]
fn stratification_validation() {
    let t = Ring::with_vars(&["X", "Y"]).unwrap();
    assert!(StratificationSpec::new(vec![stratum(&t, "a", &["X"], false)]).is_err());
    let mut s = stratum(&t, "a", &["X"], true);
    s.claimed_dim = Some(0);
    assert!(StratificationSpec::new(vec![s]).is_err());
}

#[test]
fn singular_source_is_rejected() {
    let s = Ring::with_vars(&["x", "y"]).unwrap();
    let t = Ring::with_vars(&["X"]).unwrap();
    let y = AffineVariety::new(Ideal::parse(&s, &["x*y"]).unwrap());
    let f = vec![s.parse("x").unwrap()];
    assert!(matches!(MorphismSpec::new(y, &t, f), Err(Error::Precondition(_))));
}

#[test]
fn generic_degrees() {
    assert_eq!(generic_degree(&conifold_chart(), 0).unwrap().degree, 1);
    let d = map(&["u", "v"], &["u*v - 1"], &["T"], &["u^2"]);
    assert_eq!(generic_degree(&d, 0).unwrap().degree, 2);
    let sq = map(&["t"], &[], &["T"], &["t^2"]);
    let g = generic_degree(&sq, 0).unwrap();
    assert_eq!((g.degree, g.length), (2, Some(2)));
    let proj = map(&["a", "b"], &[], &["A"], &["a"]);
    assert!(matches!(generic_degree(&proj, 0), Err(Error::Input(_))));
}

#[test]
fn image_closure_of_conifold_chart() {
    let f = conifold_chart();
    let img = f.image_closure().unwrap();
    assert!(img.equals(&Ideal::parse(f.target(), &["X*Y - Z*W"]).unwrap()).unwrap());
}

#[test]
fn fiber_product_verdicts() {
    let c = fiber_product_smallness(&conifold_chart(), 0).unwrap();
    assert!(c.is_small);
    assert_eq!(c.fiber_product_dim, 3);
    assert!(c.residual_dim < 3);
    let b = fiber_product_smallness(&blowup_chart(), 0).unwrap();
    assert!(!b.is_small);
    assert_eq!(b.residual_dim, 2);
    let i = fiber_product_smallness(&identity(), 0).unwrap();
    assert!(i.is_small);
    assert_eq!(i.residual_dim, -1);
    let sq = map(&["t"], &[], &["T"], &["t^2"]);
    assert!(matches!(fiber_product_smallness(&sq, 0), Err(Error::Precondition(_))));
}

#[test]
fn smooth_restrictions() {
    let f = conifold_chart();
    let r = smooth_restriction_check(&f, &conifold_strata(&f), 0).unwrap();
    assert!(r.all_pass, "{r:?}");
    assert!(r.implies_trim);
    assert!(trim_check(&f).unwrap().is_trim);

    let f = blowup_chart();
    let r = smooth_restriction_check(&f, &blowup_strata(&f), 0).unwrap();
    assert!(!r.is_small);
    assert!(!r.implies_trim);
}
