use charcycle::algebra::{MonomialOrder, ParsePolynomial, Ring, RingRef};
use charcycle::ideal::{solve_linear, Ideal, Limits};
use charcycle::Error;

fn ring(vars: &[&str]) -> RingRef {
    Ring::with_vars(vars).unwrap()
}

fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
    Ideal::parse(r, gens).unwrap()
}

#[test]
fn groebner_examples() {
    let r = ring(&["x"]);
    let gb = ideal(&r, &["x^2 - 1", "x - 1"]).groebner(MonomialOrder::Lex).unwrap();
    assert_eq!(gb.elements(), &[r.parse("x - 1").unwrap()]);

    let r = ring(&["x", "y"]);
    for o in [MonomialOrder::Lex, MonomialOrder::Grevlex, MonomialOrder::BlockElimination(1)] {
        assert!(ideal(&r, &["x*y - 1", "x"]).groebner(o).unwrap().is_unit());
    }
}

#[test]
fn groebner_cache_returns_same_basis() {
    let r = ring(&["x", "y", "z"]);
    let i = ideal(&r, &["x^2 - y", "y*z - x"]);
    let a = i.canonical().unwrap();
    let b = i.canonical().unwrap();
    assert!(std::sync::Arc::ptr_eq(&a, &b));
}

#[test]
fn reduced_basis_is_reduced() {
    let r = ring(&["x", "y", "z"]);
    let i = ideal(&r, &["x^3 - 2*x*y", "x^2*y - 2*y^2 + x", "z*x - y"]);
    for o in [MonomialOrder::Lex, MonomialOrder::Grevlex] {
        let gb = i.groebner(o).unwrap();
        let lms = gb.leading_monomials();
        for (a, g) in gb.elements().iter().enumerate() {
            assert!(g.leading_coeff().unwrap() == &charcycle::algebra::rat(1));
            for (m, _) in g.terms() {
                for (b, lm) in lms.iter().enumerate() {
                    if a != b {
                        assert!(!lm.divides(m), "{g} has a term divisible by another leading monomial");
                    }
                }
            }
        }
        for f in i.generators() {
            assert!(gb.contains(f));
        }
    }
}

#[test]
fn saturation_examples() {
    let r = ring(&["x", "y"]);
    let s = ideal(&r, &["x*y"]).saturation(&ideal(&r, &["x"])).unwrap();
    assert!(s.equals(&ideal(&r, &["y"])).unwrap());
    let s = ideal(&r, &["x^2"]).saturation(&ideal(&r, &["x"])).unwrap();
    assert!(s.is_unit().unwrap());
}

#[test]
fn saturation_routes_agree() {
    let r = ring(&["x", "y", "z"]);
    let i = ideal(&r, &["x^2*y", "x*z^3", "y^2 - x*z"]);
    let j = ideal(&r, &["x", "y"]);
    let a = i.saturation(&j).unwrap();
    let b = i.saturation_by_elements(&j).unwrap();
    assert!(a.equals(&b).unwrap());
    assert!(a.contains_ideal(&i).unwrap());
}

#[test]
fn saturation_iteration_cap() {
    let r = ring(&["x", "y"]);
    let i = ideal(&r, &["x^5*y"]).with_limits(Limits {
        max_gb_steps: 10_000,
        max_saturation_iters: 2,
    });
    match i.saturation(&ideal(&r, &["x"])) {
        Err(Error::ComputationLimit { .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn quotient_and_intersection() {
    let r = ring(&["x", "y"]);
    let i = ideal(&r, &["x^2", "x*y"]);
    let q = i.quotient(&ideal(&r, &["x"])).unwrap();
    assert!(q.equals(&ideal(&r, &["x", "y"])).unwrap());
    let m = ideal(&r, &["x"]).intersection(&ideal(&r, &["y"])).unwrap();
    assert!(m.equals(&ideal(&r, &["x*y"])).unwrap());
}

#[test]
fn elimination_examples() {
    let r = ring(&["t", "x", "y"]);
    let e = ideal(&r, &["y - x^2", "x - t"]).eliminate_names(&["t"]).unwrap();
    assert!(e.equals(&ideal(&r, &["y - x^2"])).unwrap());

    let r = ring(&["u", "v"]);
    let e = ideal(&r, &["u*v - 1"]).eliminate_names(&["v"]).unwrap();
    assert!(e.is_zero() || e.canonical().unwrap().is_empty());

    let r = ring(&["x", "w", "t", "X", "Y", "Z", "W"]);
    let g = ideal(&r, &["X - x", "Y - t*w", "Z - t*x", "W - w"]);
    let e = g.eliminate_names(&["x", "w", "t"]).unwrap();
    assert!(e.equals(&ideal(&r, &["X*Y - Z*W"])).unwrap());
}

#[test]
fn eliminate_nothing_is_identity() {
    let r = ring(&["x", "y"]);
    let i = ideal(&r, &["x^2 + y", "x*y"]);
    assert!(i.eliminate(&[]).unwrap().equals(&i).unwrap());
}

#[test]
fn dimension_and_degree_examples() {
    let r = ring(&["x0", "x1", "x2"]);
    let dd = Ideal::zero(&r).dimension_and_degree().unwrap();
    assert_eq!(dd.krull_dimension, 3);
    assert_eq!(dd.degree, Some(1));

    let dd = ideal(&r, &["x0"]).dimension_and_degree().unwrap();
    assert_eq!((dd.krull_dimension, dd.degree), (2, Some(1)));

    let r = ring(&["x0", "x1", "x2", "x3"]);
    let tc = ideal(&r, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
    let dd = tc.dimension_and_degree().unwrap();
    assert_eq!((dd.krull_dimension, dd.projective_dimension(), dd.degree), (2, 1, Some(3)));
    assert!(!dd.degree_advisory);

    let dd = Ideal::unit(&r).dimension_and_degree().unwrap();
    assert_eq!((dd.krull_dimension, dd.degree), (-1, None));
}

#[test]
fn degree_of_hypersurfaces_and_complete_intersections() {
    let r = ring(&["x", "y", "z", "w"]);
    let dd = ideal(&r, &["x^3 + y^3 + z^3"]).dimension_and_degree().unwrap();
    assert_eq!((dd.krull_dimension, dd.degree), (3, Some(3)));
    let dd = ideal(&r, &["x*y - z*w", "x^2 + y^2 + z^2 + w^2"]).dimension_and_degree().unwrap();
    assert_eq!((dd.krull_dimension, dd.degree), (2, Some(4)));
}

#[test]
fn affine_degree_is_advisory() {
    let r = ring(&["x", "y"]);
    let dd = ideal(&r, &["y - x^2"]).dimension_and_degree().unwrap();
    assert_eq!((dd.krull_dimension, dd.degree, dd.degree_advisory), (1, Some(2), true));
}

#[test]
fn zero_dimensional_counts() {
    let r = ring(&["x", "y"]);
    let i = ideal(&r, &["x^2 - 1", "y^2 - x"]);
    assert_eq!(i.vector_space_dimension().unwrap(), Some(4));
    assert_eq!(i.point_count().unwrap(), Some(4));
    let fat = ideal(&r, &["x^2", "y"]);
    assert_eq!(fat.vector_space_dimension().unwrap(), Some(2));
    assert_eq!(fat.point_count().unwrap(), Some(1));
    assert_eq!(ideal(&r, &["x"]).vector_space_dimension().unwrap(), None);
}

#[test]
fn linear_solver_parametrizes() {
    let r = ring(&["x", "y", "z"]);
    let eqs = r.parse_all(&["x + y - 1", "y - z"]).unwrap();
    let sol = solve_linear(&r, &eqs).unwrap().unwrap();
    assert_eq!(sol.ring.nvars(), 1);
    for e in &eqs {
        assert!(e.compose(&sol.ring, &sol.images).unwrap().is_zero());
    }
    let bad = r.parse_all(&["x + y", "x + y - 2"]).unwrap();
    assert!(solve_linear(&r, &bad).unwrap().is_none());
}

fn biprojective(n: usize) -> RingRef {
    let p: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
    let d: Vec<String> = (0..=n).map(|i| format!("a{i}")).collect();
    Ring::with_blocks(&[("primal", &p[..]), ("dual", &d[..])]).unwrap()
}

#[test]
fn multidegree_examples() {
    let r = Ring::with_blocks(&[("x", &["x0", "x1"][..]), ("y", &["y0", "y1"][..])]).unwrap();
    assert_eq!(ideal(&r, &["x0*y1 - x1*y0"]).multidegree("x", "y", 0).unwrap(), vec![1, 1]);
    assert_eq!(ideal(&r, &["y1"]).multidegree("x", "y", 0).unwrap(), vec![1, 0]);
    assert!(ideal(&r, &["x0 + y0"]).multidegree("x", "y", 0).is_err());
}

#[test]
fn multidegree_of_product_varieties() {
    // conic x line: only the (1, 1) slice is nonempty, with 2 * 1 points
    let r = biprojective(2);
    let i = ideal(&r, &["x0*x2 - x1^2", "a0"]);
    assert_eq!(i.multidegree("primal", "dual", 3).unwrap(), vec![0, 2, 0]);
}

#[test]
fn conic_conormal_multidegree() {
    // a proportional to the gradient (x2, -2 x1, x0), plus the dual conic
    let r = biprojective(2);
    let con = ideal(
        &r,
        &[
            "x0*x2 - x1^2",
            "x2*a1 + 2*x1*a0",
            "x2*a2 - x0*a0",
            "-2*x1*a2 - x0*a1",
            "a1^2 - 4*a0*a2",
        ],
    );
    for seed in 0..3 {
        assert_eq!(con.multidegree("primal", "dual", seed).unwrap(), vec![2, 2]);
    }
}
