use proptest::prelude::*;
use rs_extend::extension::{check_composition_laws, extend};
use rs_extend::verify::Sampler;
use rs_extend::{
    classic, CVector, ClassicKind, ExtendedMap, GammaSpec, HoloMap, MapFamily, MembershipStatus, ProductPoint,
    SpacePair, C64,
};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn pp(x: C64, y: C64) -> ProductPoint {
    ProductPoint::from_slices(&[x], &[y])
}

fn space11() -> SpacePair {
    SpacePair::euclidean(1, 1, 2.0, 2.0).unwrap()
}

#[test]
fn identity_extension_is_identity() {
    let space = SpacePair::euclidean(2, 2, 1.5, 1.2).unwrap();
    let em = extend(GammaSpec::jacobian_power(0.3), HoloMap::identity(2), space.clone()).unwrap();
    for pt in Sampler::default().with_n(300).product_points(&space) {
        assert!(em.eval(&pt).unwrap().distance(&pt) < 1e-14);
        assert!(em.inverse(&pt).unwrap().distance(&pt) < 1e-14);
        let m = em.membership(&pt);
        assert_eq!(m.is_inside(), space.contains(&pt));
    }
}

#[test]
fn one_minus_with_boundary_ratio() {
    let tau = CVector::from_element(1, c(1.0, 0.0));
    let em = ExtendedMap::new(
        HoloMap::one_minus(),
        GammaSpec::boundary_ratio_biholo(tau, 2.0).unwrap(),
        space11(),
    )
    .unwrap();
    let out = em.eval(&pp(c(0.3, 0.1), c(0.2, -0.3))).unwrap();
    assert!(out.distance(&pp(c(0.7, -0.1), c(0.2, -0.3))) < 1e-14);
    let back = em.inverse(&pp(c(0.7, 0.0), c(0.1, 0.0))).unwrap();
    assert!(back.distance(&pp(c(0.3, 0.0), c(0.1, 0.0))) < 1e-12);
    assert_eq!(
        em.membership(&pp(c(2.5, 0.0), c(0.0, 0.0))).status,
        MembershipStatus::Outside
    );
}

#[test]
fn gkk_at_half_is_roper_suffridge_and_at_zero_keeps_fiber() {
    let rs = classic(ClassicKind::RoperSuffridge, HoloMap::koebe(), 2).unwrap();
    let gkk = classic(ClassicKind::Gkk { alpha: 0.5 }, HoloMap::koebe(), 2).unwrap();
    let flat = classic(ClassicKind::Gkk { alpha: 0.0 }, HoloMap::koebe(), 2).unwrap();
    for pt in Sampler::default().product_points(&rs.space) {
        assert_eq!(rs.eval(&pt).unwrap(), gkk.eval(&pt).unwrap());
        let out = flat.eval(&pt).unwrap();
        assert_eq!(out.y, pt.y);
        assert_eq!(out.x, HoloMap::koebe().eval(&pt.x).unwrap());
    }
}

#[test]
fn pfaltzgraff_suffridge_of_diagonal_map() {
    let f = HoloMap::diagonal(vec![HoloMap::koebe(), HoloMap::cayley()]).unwrap();
    let em = classic(ClassicKind::PfaltzgraffSuffridge, f, 1).unwrap();
    assert_eq!((em.space.n, em.space.m), (2, 1));
    let x = CVector::from_vec(vec![c(0.5, 0.0), c(0.5, 0.0)]);
    let out = em
        .eval(&ProductPoint::new(x, CVector::from_element(1, c(0.1, 0.0))))
        .unwrap();
    // J = k'(0.5)·(1 − 0.5)^{−2} = 12·4 = 48.
    assert!((out.y[0] - 0.1 * 48f64.powf(1.0 / 3.0)).norm() < 1e-12);
}

#[test]
fn jacobian_matches_finite_differences() {
    let em = classic(ClassicKind::RoperSuffridge, HoloMap::koebe(), 1).unwrap();
    let pt = pp(c(0.2, 0.3), c(0.1, -0.2));
    let jac = em.jacobian(&pt).unwrap();
    let h = 1e-6;
    for j in 0..2 {
        let mut e = CVector::zeros(2);
        e[j] = c(h, 0.0);
        let plus = em
            .eval(&ProductPoint::split(&(pt.flatten() + &e), 1))
            .unwrap()
            .flatten();
        let minus = em
            .eval(&ProductPoint::split(&(pt.flatten() - &e), 1))
            .unwrap()
            .flatten();
        let col = (plus - minus) / c(2.0 * h, 0.0);
        assert!((col - jac.column(j)).norm() < 1e-7);
    }
}

#[test]
fn self_maps_extend_into_the_ball() {
    for (n, r) in [(1usize, 1.0), (2, 2.0)] {
        let space = SpacePair::euclidean(n, 1, 2.0, r).unwrap();
        let hat = GammaSpec::jacobian_power(2.0 / (r * (n as f64 + 1.0)));
        for f in (MapFamily::SelfMapsFixingZero { dim: n }).members().unwrap() {
            let em = ExtendedMap::new(f, hat.clone(), space.clone()).unwrap();
            for pt in Sampler::default().with_n(1000).product_points(&space) {
                assert!(space.ball_margin(&em.eval(&pt).unwrap()) > -1e-12);
            }
        }
    }
}

#[test]
fn koebe_transport_through_half_self() {
    let hat = GammaSpec::jacobian_power(0.5);
    let pts = Sampler::default().with_n(1000).product_points(&space11());
    let rep = check_composition_laws(
        &hat,
        &hat,
        &HoloMap::half_self(),
        &HoloMap::half_self(),
        Some(&HoloMap::koebe()),
        &space11(),
        &pts,
    )
    .unwrap();
    assert!(rep.passed(), "{:?}", rep.subchecks);
}

#[test]
fn out_of_range_classic_parameters() {
    assert!(classic(ClassicKind::Gkk { alpha: 0.9 }, HoloMap::koebe(), 1).is_err());
    assert!(classic(ClassicKind::Gk { beta: 1.5 }, HoloMap::koebe(), 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_round_trip(r in 0.0..0.95f64, a in 0.0..6.3f64, frac in 0.0..0.99f64, b in 0.0..6.3f64) {
        let em = classic(ClassicKind::RoperSuffridge, HoloMap::koebe(), 1).unwrap();
        let x = C64::from_polar(r, a);
        let y = C64::from_polar(frac * (1.0 - r * r).sqrt(), b);
        let pt = pp(x, y);
        let img = em.eval(&pt).unwrap();
        prop_assert!(em.inverse(&img).unwrap().distance(&pt) < 1e-8);
        let m = em.membership(&img);
        if (1.0 - r) > 1e-5 {
            prop_assert!(m.is_inside());
        }
    }

    #[test]
    fn points_beyond_the_fiber_bound_are_outside(r in 0.0..0.9f64, a in 0.0..6.3f64, excess in 1.01..3.0f64) {
        let em = classic(ClassicKind::RoperSuffridge, HoloMap::koebe(), 1).unwrap();
        let x = C64::from_polar(r, a);
        let cap = (1.0 - r * r).sqrt();
        let z = HoloMap::koebe().eval_scalar(x).unwrap();
        let g = em.gamma_at(&CVector::from_element(1, x)).unwrap();
        let m = em.membership(&pp(z, g * excess * cap));
        prop_assert!(m.is_outside());
    }
}
