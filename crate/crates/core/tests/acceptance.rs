//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero if any
//! criterion fails.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rs_extend::extension::check_composition_laws;
use rs_extend::gamma::{auxiliary_monotonicity, check_appropriate_selfmap, gamma_omega};
use rs_extend::semigroup::{generator, intertwining_residual, ConjugatedExtendedFlow};
use rs_extend::verify::{
    bloch_bounds, check_convex_in_direction, check_extended_spirallike, check_spirallike, derive_c,
    export_invariance_manifold, BlochGrid, ManifoldMotion, Motion, Param, SpirallikeClaim, Target,
};
use rs_extend::{
    classic, CVector, ClassicKind, ExtendedMap, ExtendedSemigroup, Flow, GammaSpec, HoloMap, LinearOperator, MapFamily,
    ProductPoint, Sampler, SpacePair, Verdict, C64,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn v1(z: C64) -> CVector {
    CVector::from_element(1, z)
}

fn space11(r: f64) -> SpacePair {
    SpacePair::euclidean(1, 1, 2.0, r).unwrap()
}

fn num(p: Option<&Param>) -> f64 {
    match p {
        Some(Param::Num(v)) => *v,
        _ => f64::NAN,
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn appropriateness() -> Outcome {
    let mut worst = f64::INFINITY;
    for n in [1usize, 2] {
        for r in [1.0, 2.0] {
            let alpha = 2.0 / (r * (n as f64 + 1.0));
            let space = SpacePair::euclidean(n, 1, 2.0, r).map_err(err)?;
            let pts = Sampler::default().with_n(10_000).ball_points(n);
            let rep = check_appropriate_selfmap(
                &GammaSpec::jacobian_power(alpha),
                &MapFamily::SelfMapsFixingZero { dim: n },
                &space,
                &pts,
            )
            .map_err(err)?;
            for sub in &rep.subchecks {
                ensure!(
                    sub.verdict == Verdict::Pass && sub.worst_margin >= -1e-12 && sub.decided >= 10_000,
                    "n={n} r={r}: condition {} verdict {:?}, worst margin {:e}, decided {}",
                    sub.name,
                    sub.verdict,
                    sub.worst_margin,
                    sub.decided
                );
                worst = worst.min(sub.worst_margin);
            }
        }
    }
    Ok(format!("4 configurations x 4 conditions, worst margin {worst:e}"))
}

fn monotonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut worst = f64::INFINITY;
    for k in 0..10 {
        let n = rng.random_range(1..=4usize);
        let q = rng.random_range(0.5..=2.0);
        let r = rng.random_range(0.5..=3.0);
        let alpha = rng.random_range(0.05..=1.0) * 2.0 / (r * (n as f64 + 1.0));
        let rep = auxiliary_monotonicity(q, r, alpha, n, 1000);
        ensure!(
            rep.passed() && rep.worst_margin >= -1e-12,
            "case {k} (q={q:.3}, r={r:.3}, α={alpha:.4}, n={n}): worst margin {:e}",
            rep.worst_margin
        );
        worst = worst.min(rep.worst_margin);
    }
    Ok(format!("10 random parameter sets, worst margin {worst:e}"))
}

fn extension_lemmas() -> Outcome {
    // Self-maps go into the product ball.
    let mut worst_in = f64::INFINITY;
    for n in [1usize, 2] {
        let space = SpacePair::euclidean(n, 1, 2.0, 2.0).map_err(err)?;
        let hat = GammaSpec::jacobian_power(2.0 / (2.0 * (n as f64 + 1.0)));
        let members = MapFamily::SelfMapsFixingZero { dim: n }.members().map_err(err)?;
        let pts = Sampler::default().with_n(10_000).product_points(&space);
        let maps: Vec<ExtendedMap> = members
            .iter()
            .map(|f| ExtendedMap::new(f.clone(), hat.clone(), space.clone()))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        for (k, pt) in pts.iter().enumerate() {
            let out = maps[k % maps.len()].eval(pt).map_err(err)?;
            worst_in = worst_in.min(space.ball_margin(&out));
        }
    }
    ensure!(
        worst_in >= -1e-12,
        "self-map extension left the ball: margin {worst_in:e}"
    );

    let space = space11(2.0);
    let hat = GammaSpec::jacobian_power(0.5);
    let pts = Sampler::default().with_n(1000).product_points(&space);
    let members = MapFamily::SelfMapsFixingZero { dim: 1 }.members().map_err(err)?;
    let mut pairs = Vec::new();
    'outer: for i in 0..members.len() {
        for j in 0..members.len() {
            if i != j {
                pairs.push((i, j));
                if pairs.len() == 10 {
                    break 'outer;
                }
            }
        }
    }
    let mut worst_comp = f64::INFINITY;
    for &(i, j) in &pairs {
        let rep = check_composition_laws(&hat, &hat, &members[i], &members[j], None, &space, &pts).map_err(err)?;
        ensure!(
            rep.passed(),
            "composition pair ({i}, {j}) failed: worst {:e}",
            rep.worst_margin
        );
        worst_comp = worst_comp.min(rep.worst_margin);
    }

    // Transport through a biholomorphic map and inverse round trip.
    let tau = v1(c(1.0, 0.0));
    let cases = [
        (HoloMap::koebe(), hat.clone(), hat.clone(), members[3].clone()),
        (
            HoloMap::one_minus(),
            GammaSpec::boundary_ratio_self(tau.clone(), 2.0).map_err(err)?,
            GammaSpec::boundary_ratio_biholo(tau.clone(), 2.0).map_err(err)?,
            HoloMap::hyperbolic(0.4).map_err(err)?,
        ),
    ];
    let mut worst_bi = f64::INFINITY;
    let mut worst_trip = 0.0_f64;
    for (h, hat, spec, g) in &cases {
        let rep = check_composition_laws(hat, spec, g, g, Some(h), &space, &pts).map_err(err)?;
        let bi = rep
            .subcheck("biholomorphic-composition")
            .ok_or("missing biholomorphic subcheck")?;
        ensure!(
            bi.worst_margin >= -1e-8,
            "{}: transport deviation {:e}",
            h.label(),
            -bi.worst_margin
        );
        worst_bi = worst_bi.min(bi.worst_margin);
        let em = ExtendedMap::new(h.clone(), spec.clone(), space.clone()).map_err(err)?;
        for pt in &pts {
            let back = em.inverse(&em.eval(pt).map_err(err)?).map_err(err)?;
            worst_trip = worst_trip.max(back.distance(pt));
        }
    }
    ensure!(worst_trip <= 1e-8, "inverse round trip error {worst_trip:e}");
    Ok(format!(
        "ball margin {worst_in:e}; composition {:e}; transport {:e}; round trip {worst_trip:e}",
        -worst_comp, -worst_bi
    ))
}

fn well_definedness() -> Outcome {
    let tau = v1(c(1.0, 0.0));
    let cases = [
        (
            GammaSpec::jacobian_power(0.5),
            HoloMap::koebe(),
            HoloMap::disk_automorphism(c(0.3, 0.2)).map_err(err)?,
            HoloMap::scalar(c((-0.5f64).exp(), 0.0)),
        ),
        (
            GammaSpec::boundary_ratio_biholo(tau, 2.0).map_err(err)?,
            HoloMap::one_minus(),
            HoloMap::hyperbolic(0.5).map_err(err)?,
            HoloMap::scalar(c((-0.7f64).exp(), 0.0)),
        ),
    ];
    let pts = Sampler::default().with_n(100).ball_points(1);
    let mut worst = 0.0_f64;
    for (spec, h, phi, f) in &cases {
        let h2 = HoloMap::compose(h.clone(), phi.clone()).map_err(err)?;
        for u in &pts {
            let x = h.eval(u).map_err(err)?;
            let a = gamma_omega(spec, h, f, &x).map_err(err)?;
            let b = gamma_omega(spec, &h2, f, &x).map_err(err)?;
            worst = worst.max((a - b).norm() / a.norm().max(1.0));
        }
    }
    ensure!(worst <= 1e-8, "parameterizations disagree by {worst:e}");
    Ok(format!("2 maps x 100 points, max deviation {worst:e}"))
}

fn semigroup_law() -> Outcome {
    let tau = v1(c(1.0, 0.0));
    let mu = 0.7;
    let space2 = SpacePair::euclidean(2, 1, 2.0, 2.0).map_err(err)?;
    let space1 = space11(2.0);
    let a2 = LinearOperator::diagonal(&[c(1.0, 0.0), c(0.5, 1.0)]).map_err(err)?;
    let fiber = |m: usize, mu: f64| -> Result<Flow, String> {
        if mu == 0.0 {
            Ok(Flow::Identity { dim: m })
        } else {
            Flow::contraction(LinearOperator::scalar(m, c(mu, 0.0)).map_err(err)?).map_err(err)
        }
    };
    let times = [0.1, 0.5, 1.0];
    let mut specs = 0;
    let mut worst = 0.0_f64;
    for mu in [0.0, mu] {
        let ext = ExtendedSemigroup::new(
            Flow::linear(a2.clone()),
            GammaSpec::jacobian_power(1.0 / 3.0),
            fiber(1, mu)?,
            space2.clone(),
        )
        .map_err(err)?;
        for pt in Sampler::default().with_n(100).product_points(&space2) {
            for &t in &times {
                for &s in &times {
                    worst = worst.max(ext.law_residual(t, s, &pt).map_err(err)?);
                }
            }
        }
        specs += 1;
    }
    for mu in [0.0, mu] {
        let spec = GammaSpec::boundary_ratio_biholo(tau.clone(), 2.0).map_err(err)?;
        let em = ExtendedMap::new(HoloMap::one_minus(), spec.clone(), space1.clone()).map_err(err)?;
        let flow = ConjugatedExtendedFlow::new(
            HoloMap::one_minus(),
            spec,
            Flow::exp_contraction(1).map_err(err)?,
            fiber(1, mu)?,
            space1.clone(),
        )
        .map_err(err)?;
        for pt in Sampler::default().with_n(100).product_points(&space1) {
            let w = em.eval(&pt).map_err(err)?;
            for &t in &times {
                for &s in &times {
                    worst = worst.max(flow.law_residual(t, s, &w).map_err(err)?);
                }
            }
        }
        specs += 1;
    }
    ensure!(worst <= 1e-8, "semigroup law residual {worst:e}");
    Ok(format!("{specs} extended semigroups, max residual {worst:e}"))
}

fn generator_formula() -> Outcome {
    let alpha = 0.5;
    let mu = 0.3;
    let base = Flow::conjugated(HoloMap::koebe(), Flow::exp_contraction(1).map_err(err)?).map_err(err)?;
    let fiber = Flow::contraction(LinearOperator::scalar(1, c(mu, 0.0)).map_err(err)?).map_err(err)?;
    let ext = ExtendedSemigroup::new(base, GammaSpec::jacobian_power(alpha), fiber, space11(2.0)).map_err(err)?;
    let pts = Sampler::default()
        .with_n(20)
        .with_radii(vec![0.1, 0.4, 0.7])
        .without_axis_probes()
        .product_points(&ext.space);
    // At t = 0.1 points near −1 are still pre-asymptotic; start one decade lower.
    let t_seq = [1e-2, 1e-3, 1e-4, 1e-5];
    let mut worst = 0.0_f64;
    let mut worst_ratio = f64::INFINITY;
    for pt in &pts {
        let x = pt.x[0];
        let f = x * (1.0 - x) / (1.0 + x);
        let df = (1.0 - 2.0 * x - x * x) / ((1.0 + x) * (1.0 + x));
        let oracle = ProductPoint::from_slices(&[f], &[(df * alpha + mu) * pt.y[0]]).flatten();
        let est = generator(&ext, &pt.flatten(), &t_seq).map_err(err)?;
        let formula = ext.generator_formula(pt).map_err(err)?.flatten();
        worst = worst
            .max((&est.limit - &oracle).norm())
            .max((&formula - &oracle).norm());
        let raw = est.raw_errors(&oracle);
        for w in raw.windows(2) {
            worst_ratio = worst_ratio.min(w[0] / w[1]);
        }
    }
    ensure!(worst <= 1e-5, "extrapolated generator error {worst:e}");
    ensure!(
        worst_ratio >= 8.0,
        "raw error shrinks only {worst_ratio:.2}x per decade"
    );
    Ok(format!("error {worst:e}, min raw decay {worst_ratio:.2}x per decade"))
}

fn intertwining() -> Outcome {
    let tau = v1(c(1.0, 0.0));
    let space = space11(2.0);
    let fiber = Flow::contraction(LinearOperator::scalar(1, c(0.4, 0.0)).map_err(err)?).map_err(err)?;
    let psi = Flow::exp_contraction(1).map_err(err)?;
    let one = LinearOperator::scalar(1, c(1.0, 0.0)).map_err(err)?;
    let cases = [
        (
            HoloMap::one_minus(),
            Flow::affine(one, 1.0, tau.clone()).map_err(err)?,
            GammaSpec::boundary_ratio_self(tau.clone(), 2.0).map_err(err)?,
            GammaSpec::boundary_ratio_biholo(tau.clone(), 2.0).map_err(err)?,
        ),
        (
            HoloMap::koebe(),
            Flow::conjugated(HoloMap::koebe(), psi.clone()).map_err(err)?,
            GammaSpec::jacobian_power(0.5),
            GammaSpec::jacobian_power(0.5),
        ),
    ];
    let pts = Sampler::default().with_n(100).product_points(&space);
    let mut worst = 0.0_f64;
    for (h, base, hat, spec) in cases {
        let em = ExtendedMap::new(h.clone(), spec.clone(), space.clone()).map_err(err)?;
        let ext = ExtendedSemigroup::new(base, hat, fiber.clone(), space.clone()).map_err(err)?;
        let conj =
            ConjugatedExtendedFlow::new(h.clone(), spec, psi.clone(), fiber.clone(), space.clone()).map_err(err)?;
        let mut local = 0.0_f64;
        for pt in &pts {
            for t in [0.1, 0.5, 1.0] {
                local = local.max(intertwining_residual(&em, &ext, &conj, t, pt).map_err(err)?);
            }
        }
        ensure!(local <= 1e-8, "{}: intertwining residual {local:e}", h.label());
        worst = worst.max(local);
    }
    Ok(format!("1-z and Koebe, max residual {worst:e}"))
}

fn starlike_extension() -> Outcome {
    let em = classic(ClassicKind::RoperSuffridge, HoloMap::koebe(), 1).map_err(err)?;
    let sampler = Sampler::default();
    ensure!(
        sampler.n == 1000 && sampler.t_grid.len() == 25,
        "sampler defaults changed"
    );
    let rep = check_spirallike(
        &SpirallikeClaim {
            target: Target::Extended(em),
            operator: LinearOperator::scalar(2, c(1.0, 0.0)).map_err(err)?,
            relaxed: false,
        },
        &sampler,
    );
    let violations = rep.witnesses.iter().filter(|w| w.margin <= -1e-9).count();
    ensure!(
        rep.verdict == Verdict::Pass && violations == 0 && rep.unknown_fraction() <= 0.05,
        "verdict {:?}, {violations} violations, unknown fraction {:.4}",
        rep.verdict,
        rep.unknown_fraction()
    );
    Ok(format!(
        "{} decided probes, unknown fraction {:.4}, worst margin {:e}",
        rep.decided,
        rep.unknown_fraction(),
        rep.worst_margin
    ))
}

fn boundary_spirallike() -> Outcome {
    let tau = v1(c(1.0, 0.0));
    let spec = GammaSpec::boundary_ratio_biholo(tau, 2.0).map_err(err)?;
    let em = ExtendedMap::new(HoloMap::one_minus(), spec.clone(), space11(2.0)).map_err(err)?;
    let a = LinearOperator::scalar(1, c(1.0, 0.0)).map_err(err)?;
    let pts = Sampler::default().with_n(100).ball_points(1);
    let derived = derive_c(&spec, &Motion::Linear(a.clone()), &em.base, &pts, &[0.1, 0.5, 1.0, 3.0]).map_err(err)?;
    ensure!(
        (derived.c - c(1.0, 0.0)).norm() < 1e-12,
        "C = {} instead of 2λ/r = 1",
        derived.c
    );
    ensure!(
        derived.report.passed() && derived.report.worst_margin >= -1e-9,
        "C identity residual {:e}",
        -derived.report.worst_margin
    );
    let mut details = Vec::new();
    for mu in [0.0, 1.0] {
        let b = LinearOperator::scalar(1, c(mu, 0.0)).map_err(err)?;
        let rep = check_extended_spirallike(&em, &a, &b, &Sampler::default());
        let c_re = num(rep.parameters.get("c-re"));
        ensure!(
            rep.verdict == Verdict::Pass && rep.witnesses.iter().all(|w| w.margin > -1e-9),
            "μ={mu}: verdict {:?}, worst margin {:e}, notes {:?}",
            rep.verdict,
            rep.worst_margin,
            rep.notes
        );
        ensure!((c_re - 1.0).abs() < 1e-12, "μ={mu}: block uses C = {c_re}");
        details.push(format!("μ={mu}: {} probes", rep.decided));
    }
    Ok(format!(
        "C = {}, residual {:e}; {}",
        derived.c.re,
        -derived.report.worst_margin,
        details.join(", ")
    ))
}

fn convex_direction() -> Outcome {
    let em = ExtendedMap::new(HoloMap::cayley(), GammaSpec::jacobian_power(0.5), space11(2.0)).map_err(err)?;
    let sampler = Sampler::default();
    ensure!((sampler.t_max() - 10.0).abs() < 1e-12, "t grid does not reach 10");
    let rep = check_convex_in_direction(&Target::Extended(em), &v1(c(1.0, 0.0)), None, &sampler);
    ensure!(
        rep.verdict == Verdict::Pass && rep.witnesses.iter().all(|w| w.margin > -1e-9),
        "verdict {:?}, worst margin {:e}",
        rep.verdict,
        rep.worst_margin
    );
    let neg = check_convex_in_direction(&Target::Base(HoloMap::koebe()), &v1(c(-1.0, 0.0)), None, &sampler);
    ensure!(
        neg.verdict == Verdict::Violation,
        "negative control verdict {:?}",
        neg.verdict
    );
    let w = neg.witnesses.first().ok_or("negative control has no witness")?;
    ensure!(w.margin <= -1e-9, "negative control witness margin {:e}", w.margin);
    Ok(format!(
        "{} probes pass; Koebe direction -1 witness at {:?}, t={:?}, margin {:e}",
        rep.decided, w.point, w.t, w.margin
    ))
}

fn manifold_tables() -> Outcome {
    let t_grid: Vec<f64> = (0..=30).map(|k| 0.1 * k as f64).collect();
    let fan = [0.25, 0.5, 0.75, 1.0];
    let rs = classic(ClassicKind::RoperSuffridge, HoloMap::koebe(), 1).map_err(err)?;
    let spiral_base = rs
        .eval(&ProductPoint::from_slices(&[c(0.3, 0.2)], &[c(0.3, -0.2)]))
        .map_err(err)?;
    let spiral = export_invariance_manifold(
        &rs,
        &ManifoldMotion::Spiral(LinearOperator::scalar(1, c(1.0, 0.0)).map_err(err)?),
        &spiral_base,
        &t_grid,
        &fan,
    )
    .map_err(err)?;
    let cyl_map = ExtendedMap::new(HoloMap::cayley(), GammaSpec::jacobian_power(0.5), space11(2.0)).map_err(err)?;
    let cyl_base = cyl_map
        .eval(&ProductPoint::from_slices(&[c(0.2, -0.1)], &[c(0.4, 0.1)]))
        .map_err(err)?;
    let cylinder = export_invariance_manifold(
        &cyl_map,
        &ManifoldMotion::Cylinder(v1(c(1.0, 0.0))),
        &cyl_base,
        &t_grid,
        &fan,
    )
    .map_err(err)?;
    for (name, table) in [("spiral", &spiral), ("cylinder", &cylinder)] {
        ensure!(table.rows.len() == t_grid.len() * fan.len(), "{name}: row count");
        ensure!(
            table.inside_fraction() == 1.0,
            "{name}: only {:.4} of points inside",
            table.inside_fraction()
        );
        ensure!(
            table
                .to_csv()
                .starts_with("t,coord0_re,coord0_im,coord1_re,coord1_im,margin\n"),
            "{name}: CSV header"
        );
    }
    let min = |t: &rs_extend::verify::ManifoldTable| t.rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
    Ok(format!(
        "spiral {} rows (min margin {:e}), cylinder {} rows (min margin {:e})",
        spiral.rows.len(),
        min(&spiral),
        cylinder.rows.len(),
        min(&cylinder)
    ))
}

fn bloch() -> Outcome {
    let coarse = BlochGrid::uniform(5, 5, &[0.0, 0.3, 0.6, 0.9], 0.9);
    let fine = BlochGrid::uniform(10, 10, &[0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9], 0.9);
    ensure!(fine.len() == 1000 && coarse.len() == 100, "grid sizes");
    let mut details = Vec::new();
    for h in [HoloMap::identity(1), HoloMap::log_map()] {
        let em = ExtendedMap::new(h.clone(), GammaSpec::jacobian_power(0.5), space11(2.0)).map_err(err)?;
        let (fb, frep) = bloch_bounds(&em, &fine).map_err(err)?;
        let (cb, _) = bloch_bounds(&em, &coarse).map_err(err)?;
        ensure!(fb.all_finite(), "{}: non-finite supremum", h.label());
        let total = fb.base + fb.multiplier + fb.gradient;
        ensure!(
            frep.passed() && fb.extended <= total + 1e-9,
            "{}: extended {} exceeds {}",
            h.label(),
            fb.extended,
            total
        );
        let drift = fb.relative_change(&cb);
        ensure!(
            drift <= 0.05,
            "{}: suprema move {:.3} under refinement",
            h.label(),
            drift
        );
        details.push(format!(
            "{}: {:.4} <= {:.4} (refinement drift {:.3})",
            h.label(),
            fb.extended,
            total,
            drift
        ));
    }
    Ok(details.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("01 appropriate multiplier on self-maps", appropriateness),
        ("02 auxiliary function monotone", monotonicity),
        ("03 extension maps ball, composition, inverse", extension_lemmas),
        ("04 conjugated multiplier well defined", well_definedness),
        ("05 extended semigroup law", semigroup_law),
        ("06 extended generator formula", generator_formula),
        ("07 intertwining of extended flows", intertwining),
        ("08 starlike extension of Koebe", starlike_extension),
        ("09 boundary spirallike extension of 1-z", boundary_spirallike),
        ("10 convexity in a direction", convex_direction),
        ("11 invariant manifold tables", manifold_tables),
        ("12 Bloch bound of the extension", bloch),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let (mut ran, mut failed) = (0, 0);
    for (name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name} [{secs:.1}s] {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name} [{secs:.1}s] {detail}");
            }
        }
    }
    println!("{}/{ran} criteria passed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
