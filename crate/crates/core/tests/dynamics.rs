mod common;

use common::*;
use hypflute::dynamics::{
    almost_minimizing_defect, iinj_estimate, inj_profile, orbit_closure_witness, return_point, step2_increments,
    step2_search, step2_sequence, WITNESS_TOL,
};
use hypflute::flute::{constant_c, select_generators, Enumeration, FamilyElement, GroupSpec, Rational, DEFAULT_N_MAX};
use hypflute::hgeom::busemann;
use hypflute::{Boundary, Error, Isometry, Point};
use num_bigint::BigInt;
use num_rational::BigRational;

fn rat(p: i64, r: i64) -> Rational {
    Rational::new(p, r).unwrap()
}

fn g41() -> Isometry {
    FamilyElement::new(rat(4, 1), 1).unwrap().matrix()
}

#[test]
fn profile_dips_at_axis_crossing() {
    let spec = GroupSpec::from_parts(Enumeration::Explicit(vec![rat(4, 1)]), &[1], DEFAULT_N_MAX).unwrap();
    let profile = inj_profile(&spec.isometries(), 1.0, 100.0, 50, 2).unwrap();
    let t_star = 2.0 * 3f64.sqrt();
    let k = profile.heights.iter().position(|&t| (t - t_star).abs() < 1e-12).expect("crossing height present");
    assert!(profile.inj[k] <= 2.0 * 2f64.acosh() + 1e-9);
    assert!(profile.inj.iter().all(|&v| v >= constant_c()));
}

#[test]
fn longer_words_never_increase_the_profile() {
    let spec = select_generators(&Enumeration::default(), 5).unwrap();
    let short = inj_profile(&spec.isometries(), 1.0, 1e4, 80, 1).unwrap();
    let long = inj_profile(&spec.isometries(), 1.0, 1e4, 80, 3).unwrap();
    assert_eq!(short.heights, long.heights);
    for (a, b) in short.inj.iter().zip(&long.inj) {
        assert!(b <= a);
    }
    let single = inj_profile(&spec.isometries(), 2.0, 3.0, 1, 2).unwrap();
    assert_eq!(single.heights, vec![2.0]);
    assert!(iinj_estimate(&single, 2.0).is_err());
    assert!(inj_profile(&spec.isometries(), 5.0, 5.0, 10, 2).is_err());
}

#[test]
fn profile_is_invariant_under_reflection() {
    // z ↦ -z̄ fixes i and ∞ and conjugates each generator to its mirror image
    let spec = select_generators(&Enumeration::default(), 4).unwrap();
    let gens = spec.isometries();
    let mirrored: Vec<Isometry> = gens.iter().map(Isometry::mirrored).collect();
    let a = inj_profile(&gens, 1.0, 1e4, 60, 3).unwrap();
    let b = inj_profile(&mirrored, 1.0, 1e4, 60, 3).unwrap();
    assert_eq!(a.heights.len(), b.heights.len());
    for ((x, y), (s, t)) in a.inj.iter().zip(&b.inj).zip(a.heights.iter().zip(&b.heights)) {
        assert!((s - t).abs() < 1e-9 * s);
        assert!((x - y).abs() < 1e-9, "{x} vs {y}");
    }
}

#[test]
fn step2_first_term_is_exact() {
    let rec = step2_search(&g41(), 1.0, 2.5).unwrap();
    assert_eq!(rec.k_found, 1);
    // γ⁻¹ i computed in exact arithmetic has imaginary part 4/17
    let e = FamilyElement::new(rat(4, 1), 1).unwrap();
    let image = e.image_of_i(true);
    assert_eq!(image.im.as_rational(), Some(&BigRational::new(BigInt::from(4), BigInt::from(17))));
    assert!((rec.r[0] - (17.0f64 / 4.0).ln()).abs() < 1e-12);
}

#[test]
fn step2_telescoping_and_growth() {
    let g = g41();
    let r = step2_sequence(&g, 50);
    let inc = step2_increments(&g, 50);
    let mut sum = 0.0;
    for k in 0..50 {
        sum += inc[k];
        assert!((r[k] - sum).abs() < 1e-10, "k = {}", k + 1);
    }
    assert!(r.windows(2).all(|w| w[1] > w[0]));
    assert!(r[49] > 100.0);
    let bound = g.inverse().displacement(Point::I);
    assert!(inc.iter().all(|&d| d <= bound + 1e-12));
    // increments agree with Busemann values at consecutive orbit points
    let inv = g.inverse();
    let (z1, z2) = (inv.apply_point(Point::I), inv.apply_point(inv.apply_point(Point::I)));
    assert!((inc[1] - busemann(Boundary::Infinity, z2, z1)).abs() < 1e-14);
}

#[test]
fn step2_windows() {
    match step2_search(&g41(), 0.0, 1.0) {
        Err(Error::NoHit { k, max_increment, .. }) => {
            assert_eq!(k, 1);
            assert!(max_increment > 1.0);
        }
        other => panic!("expected NoHit, got {other:?}"),
    }
    let rec = step2_search(&g41(), 20.0, 23.0).unwrap();
    assert!(rec.r[rec.k_found - 1] >= 20.0 && rec.r[rec.k_found - 1] < 23.0);
    assert!(rec.r[..rec.k_found - 1].iter().all(|&v| v < 20.0));
    assert!(rec.max_increment <= rec.increment_bound + 1e-12);
    // repelling point at ∞: r_k decreases
    let dilation = Isometry::new(0.5, 0.0, 0.0, 2.0).unwrap();
    assert!(step2_search(&dilation, 0.0, 1.0).is_err());
}

#[test]
fn witness_closed_forms() {
    let q = rat(4, 1);
    let indices = [1, 5, 10];
    let spec = GroupSpec::from_parts(Enumeration::Explicit(vec![q; 3]), &indices, DEFAULT_N_MAX).unwrap();
    let report = orbit_closure_witness(&spec, q, 3).unwrap();
    assert!(report.pass);
    let last = report.terms.last().unwrap();
    let r10 = 39366.0f64;
    assert!((last.closed_form_residual - (1.0 / (4.0 * r10 * r10)).ln_1p()).abs() < 1e-20);
    assert!((last.residual - last.closed_form_residual).abs() < 1e-12);
    assert!(last.residual < 1.7e-10);
    for t in &report.terms {
        assert!((t.residual - t.closed_form_residual).abs() < 1e-12);
        let r = hypflute::flute::r_n(t.n);
        assert!((t.boundary_image - r * 2.0).abs() < 1e-9 * r);
    }
    assert!(report.boundary_images_increasing && report.residuals_nonincreasing);
}

#[test]
fn witness_for_branch_h() {
    let q = rat(2, 1);
    let spec = GroupSpec::from_parts(Enumeration::Explicit(vec![q; 3]), &[1, 6, 20], DEFAULT_N_MAX).unwrap();
    let report = orbit_closure_witness(&spec, q, 3).unwrap();
    let first = &report.terms[0];
    // B_∞(f i, i) = -ln Im(f i), with f i evaluated directly
    let image = spec.generators[0].element.matrix().apply_point(Point::I);
    assert!((first.busemann + image.y.ln()).abs() < 1e-12);
    assert!((first.residual - (first.busemann - 2f64.ln()).abs()).abs() < 1e-15);
    assert!(report.terms.last().unwrap().residual < WITNESS_TOL);
    assert!(report.pass);
}

#[test]
fn witness_errors() {
    let spec = select_generators(&Enumeration::default(), 3).unwrap();
    assert!(matches!(orbit_closure_witness(&spec, rat(1, 1), 1), Err(Error::InvalidParameter(_))));
    assert!(matches!(
        orbit_closure_witness(&spec, rat(9, 1), 1),
        Err(Error::InsufficientGenerators { found: 0, needed: 1, .. })
    ));
}

#[test]
fn defect_of_constructed_group() {
    let spec = select_generators(&Enumeration::default(), 8).unwrap();
    let report = almost_minimizing_defect(&spec.isometries(), 1e3, 3, 400).unwrap();
    assert!(report.max_defect < 1e-9, "{report:?}");
    let empty = almost_minimizing_defect(&[], 50.0, 3, 20).unwrap();
    assert_eq!(empty.max_defect, 0.0);
}

#[test]
fn defect_detects_crossing_bisector() {
    // i ↦ 4i: the bisector |z| = 2 crosses the imaginary axis
    let bad = Isometry::new(2.0, 0.0, 0.0, 0.5).unwrap();
    let report = almost_minimizing_defect(&[bad], 20.0, 1, 201).unwrap();
    assert!((report.max_defect - 4f64.ln()).abs() < 1e-9);
}

#[test]
fn return_points_lie_on_the_hypercycle() {
    let g = g41();
    let q = Point::new(0.5, 3.0).unwrap();
    let z = Point::new(0.5, 0.1).unwrap();
    let p = return_point(&g, q, z).unwrap().unwrap();
    let axis = g.classify().axis.unwrap();
    let oracle_q = dist_point_geodesic_oracle(q, &axis);
    let oracle_p = dist_point_geodesic_oracle(p, &axis);
    assert!((oracle_p - oracle_q).abs() < 1e-8);
    assert!((p.x - z.x).abs() < 1e-12 && p.y >= z.y);
    assert!(return_point(&Isometry::translation(1.0), q, z).is_err());
}
