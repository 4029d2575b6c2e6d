//! Acceptance criteria, one PASS/FAIL line each.

use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ashyp::algebra::{rational_to_f64, ratio, C64};
use ashyp::asdet::{as_numerator, exact_affine, normalized_det, DirectionMatrix, OffDiagonal, Variant};
use ashyp::experiments::ordering::{convex_pattern, ordered_real_directions};
use ashyp::experiments::sampling::{sample_config, trial_seed};
use ashyp::experiments::{sweep, Shape, SweepOptions};
use ashyp::geometry::{apply_isometry, direction_matrix, random_isometry};
use ashyp::star::{
    apply_perm, c_n, group_order, summand_census_by_sign, summand_census_exact, verify_expansion, ColumnGroup,
};
use ashyp::symbolic::{build_certificates, change_vars, sym_as4, OrderingId, UniformSign, Verdict};
use ashyp::{Caps, Tolerances};

type Outcome = Result<String, String>;

fn check(cond: bool, ok: String, bad: String) -> Outcome {
    if cond {
        Ok(ok)
    } else {
        Err(bad)
    }
}

fn certificates(ordering: OrderingId) -> Outcome {
    let start = Instant::now();
    let certs = build_certificates(ordering, false);
    let secs = start.elapsed().as_secs_f64();
    let summary: Vec<String> = certs
        .iter()
        .map(|c| format!("{} {:?} {}+/{}-", c.polynomial, c.uniform_sign, c.n_pos, c.n_neg))
        .collect();
    let all_free = certs.iter().all(|c| c.y0_free);
    let (as4, b4, d4) = (&certs[0], &certs[1], &certs[2]);
    let uniform = |s: UniformSign| matches!(s, UniformSign::Positive | UniformSign::Negative);
    let shape_ok = match ordering {
        OrderingId::Thm1 => {
            uniform(as4.uniform_sign) && as4.uniform_sign == b4.uniform_sign && b4.uniform_sign == d4.uniform_sign
        }
        OrderingId::Zhangma => {
            uniform(as4.uniform_sign) && as4.uniform_sign == b4.uniform_sign && d4.uniform_sign == UniformSign::Mixed
        }
    };
    let verdicts = certs.iter().all(|c| c.verdict == Verdict::Pass);
    let text = format!("{} in {secs:.2} s", summary.join(", "));
    check(all_free && shape_ok && verdicts && secs < 60.0, text.clone(), text)
}

fn expansion_identity() -> Outcome {
    let start = Instant::now();
    let caps = Caps::default();
    let mut parts = Vec::new();
    for n in 2..=4 {
        let r = verify_expansion(n, &caps, 20 + n as u64).map_err(|e| e.to_string())?;
        let expected = if n <= 3 { "symbolic" } else { "exact-random-rational" };
        if !r.pass || r.method != expected || (n == 4 && r.points_tested < 100) {
            return Err(format!("n={n}: {r:?}"));
        }
        parts.push(format!("n={n} {} ({} points)", r.method, r.points_tested));
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 300.0, format!("{} in {secs:.2} s", parts.join(", ")), format!("took {secs:.1} s"))
}

fn constants() -> Outcome {
    let orders: Vec<BigUint> = (2..=4).map(group_order).collect();
    let cs: Vec<BigRational> = (2..=4).map(c_n).collect();
    let ok = orders == [1u32, 8, 1296].map(BigUint::from) && cs == [ratio(1, 1), ratio(1, 4), ratio(1, 144)];
    let text = format!("|P| = {orders:?}, c_n = {}", cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
    check(ok, text.clone(), text)
}

fn collinear() -> Outcome {
    let tol = Tolerances::default();
    let mut worst = 0f64;
    for n in 2..=6 {
        for seed in 0..20 {
            let cfg = sample_config(n, Shape::Collinear, seed, &tol).map_err(|e| e.to_string())?;
            let dm = direction_matrix(&cfg, &tol).map_err(|e| e.to_string())?;
            for v in [Variant::Observer, Variant::Star] {
                let d = normalized_det(&dm, v, &tol).map_err(|e| e.to_string())?;
                worst = worst.max((d.norm() - 1.0).abs());
                if n == 2 && d != C64::new(1.0, 0.0) {
                    return Err(format!("n=2 gives {d}, not exactly 1"));
                }
            }
        }
    }
    check(worst <= 1e-9, format!("max ||D| - 1| = {worst:e} over n = 2..6"), format!("drift {worst:e}"))
}

fn theorem1_sweep() -> Outcome {
    let tol = Tolerances::default();
    let r = sweep(&SweepOptions::new(4, Shape::ConvexCoplanar, Variant::Observer, 10_000, 1), &tol)
        .map_err(|e| e.to_string())?;
    let text = format!(
        "{} trials, {} skipped, min |D| = {:.12}, violations {}",
        r.trials, r.skipped, r.min_abs_d, r.violations
    );
    check(r.violations == 0 && r.skipped == 0 && r.min_abs_d >= 1.0 - 1e-9, text.clone(), text)
}

fn inner_point_sweep() -> Outcome {
    let tol = Tolerances::default();
    let r = sweep(&SweepOptions::new(4, Shape::NonconvexCoplanar, Variant::Observer, 10_000, 2), &tol)
        .map_err(|e| e.to_string())?;
    let text = format!(
        "{} trials, {} skipped, min Re D = {:.12}, max |Im D| = {:e}, sign violations {}",
        r.trials, r.skipped, r.min_real, r.max_imag_abs, r.sign_violations
    );
    check(
        r.skipped == 0 && r.sign_violations == 0 && r.min_real > 0.0 && r.max_imag_abs <= 1e-9,
        text.clone(),
        text,
    )
}

fn theorem2() -> Outcome {
    let tol = Tolerances::default();
    let mut parts = Vec::new();
    let mut ok = true;
    for n in [4, 5] {
        let r = sweep(&SweepOptions::new(n, Shape::ConvexCoplanar, Variant::Star, 10_000, 3), &tol)
            .map_err(|e| e.to_string())?;
        ok &= r.violations == 0 && r.skipped == 0 && r.min_real >= rational_to_f64(&c_n(n)) - 1e-9;
        parts.push(format!("n={n} min D^s = {:.6} (c_n = {}), violations {}", r.min_real, c_n(n), r.violations));

        // exact summand signs on rationalized, convex-ordered instances
        let (mut checked, mut unordered, mut negative, mut seed) = (0, 0, 0u64, 0u64);
        while checked < 100 {
            let cfg = sample_config(n, Shape::ConvexCoplanar, trial_seed(99, seed), &tol).map_err(|e| e.to_string())?;
            seed += 1;
            let Some(ordered) = ordered_real_directions(&cfg, &convex_pattern(n), &tol).map_err(|e| e.to_string())?
            else {
                unordered += 1;
                continue;
            };
            let exact = exact_affine(n, |a, b| BigRational::from_float(*ordered.t.get(a, b)).expect("finite"));
            if !ordered.strictly_ordered_exact(&exact) {
                return Err(format!("rationalization broke the order (n={n})"));
            }
            let t = exact.map(|_, _, [z, _]| z.clone());
            let census = if n == 4 { summand_census_exact(&t) } else { summand_census_by_sign(&t) };
            if census.checked.to_string() != group_order(n).to_string() {
                return Err(format!("n={n}: checked {} summands", census.checked));
            }
            negative += census.negative;
            checked += 1;
        }
        ok &= negative == 0;
        parts.push(format!(
            "n={n} exact summands on 100 ordered instances: {negative} negative ({unordered} convex samples had no convex order)"
        ));
    }
    let text = parts.join("; ");
    check(ok, text.clone(), text)
}

fn random_rational(rng: &mut impl Rng) -> BigRational {
    ratio(rng.gen_range(-50..=50), rng.gen_range(1..=20))
}

fn properties() -> Outcome {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut notes = Vec::new();

    // scale invariance
    let mut drift = 0f64;
    for i in 0..200 {
        let cfg = sample_config(2 + i % 5, Shape::Generic, i as u64, &tol).map_err(|e| e.to_string())?;
        let dm = direction_matrix(&cfg, &tol).map_err(|e| e.to_string())?;
        let scaled = dm.map(|_, _, e| {
            let r = 10f64.powf(rng.gen_range(-3.0..3.0));
            e.scaled(C64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU)))
        });
        for v in [Variant::Observer, Variant::Star] {
            let a = normalized_det(&dm, v, &tol).map_err(|e| e.to_string())?;
            let b = normalized_det(&scaled, v, &tol).map_err(|e| e.to_string())?;
            drift = drift.max((a - b).norm() / a.norm());
        }
    }
    if drift > 1e-12 {
        return Err(format!("scale drift {drift:e}"));
    }
    notes.push(format!("scale drift {drift:.1e}"));

    // isometry invariance: |D| absolutely, the unbounded |D^s| relatively
    let (mut iso_drift, mut star_rel) = (0f64, 0f64);
    for i in 0..200u64 {
        let cfg = sample_config(3 + (i % 4) as usize, Shape::Generic, 1000 + i, &tol).map_err(|e| e.to_string())?;
        let moved = apply_isometry(&random_isometry(i), &cfg);
        let before = direction_matrix(&cfg, &tol).map_err(|e| e.to_string())?;
        let after = direction_matrix(&moved, &tol).map_err(|e| e.to_string())?;
        for v in [Variant::Observer, Variant::Star] {
            let a = normalized_det(&before, v, &tol).map_err(|e| e.to_string())?.norm();
            let b = normalized_det(&after, v, &tol).map_err(|e| e.to_string())?.norm();
            match v {
                Variant::Observer => iso_drift = iso_drift.max((a - b).abs()),
                Variant::Star => star_rel = star_rel.max((a - b).abs() / a),
            }
        }
    }
    if iso_drift > 1e-9 || star_rel > 1e-9 {
        return Err(format!("isometry drift {iso_drift:e} (D), {star_rel:e} relative (D^s)"));
    }
    notes.push(format!("isometry drift {iso_drift:.1e} (D), {star_rel:.1e} relative (D^s)"));

    // symbolic numerator against the floating determinant
    let as4 = sym_as4();
    let mut rel = 0f64;
    for _ in 0..1000 {
        let point: Vec<BigRational> = (0..12).map(|_| random_rational(&mut rng)).collect();
        let exact = rational_to_f64(&as4.eval(&point));
        let mut k = 0;
        let dm = DirectionMatrix::from_values(4, |_, _| {
            k += 1;
            C64::new(rational_to_f64(&point[k - 1]), 0.0)
        });
        let num = as_numerator(&dm, Variant::Observer);
        rel = rel.max((num.re - exact).abs() / exact.abs().max(f64::MIN_POSITIVE)).max(num.im.abs());
    }
    if rel > 1e-10 {
        return Err(format!("symbolic/numeric disagreement {rel:e}"));
    }
    notes.push(format!("1000-point oracle agreement {rel:.1e}"));

    // substitution round trip
    for ordering in [OrderingId::Thm1, OrderingId::Zhangma] {
        let s = ordering.substitution();
        for _ in 0..50 {
            let t: Vec<BigRational> = (0..12).map(|_| random_rational(&mut rng)).collect();
            if s.invert(&s.apply(&t)) != t {
                return Err(format!("{ordering}: substitution does not round-trip"));
            }
        }
        let y_form = change_vars(&as4, &s);
        for _ in 0..5 {
            let y: Vec<BigRational> = (0..12).map(|_| random_rational(&mut rng)).collect();
            if y_form.eval(&y) != as4.eval(&s.invert(&y)) {
                return Err(format!("{ordering}: change of variables is not evaluation-compatible"));
            }
        }
    }
    notes.push("substitutions exact".into());

    // group action laws, n = 3, all 64 pairs
    let g = ColumnGroup::new(3);
    let labels = OffDiagonal::from_fn(3, |a, b| (a, b));
    let ex = OffDiagonal::from_fn(3, |_, _| random_rational(&mut rng));
    for i in 0..8 {
        for j in 0..8 {
            let (s, t) = (g.element(i), g.element(j));
            let st = s.compose(&t);
            if g.index_of(&st) >= 8 || apply_perm(&s, &apply_perm(&t, &labels)) != apply_perm(&t.compose(&s), &labels) {
                return Err(format!("action law fails for elements {i}, {j}"));
            }
            if apply_perm(&s, &apply_perm(&s.inverse(), &ex)) != ex {
                return Err(format!("inverse fails for element {i}"));
            }
        }
    }
    notes.push("P action laws hold for all 64 pairs".into());
    check(true, notes.join(", "), String::new())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("certificate reproduction, convex quadrilaterals", || certificates(OrderingId::Thm1)),
        ("certificate reproduction, inner point", || certificates(OrderingId::Zhangma)),
        ("expansion identity n = 2, 3, 4", expansion_identity),
        ("group orders and normalizing constants", constants),
        ("collinear normalization", collinear),
        ("convex quadrilateral sweep |D| >= 1", theorem1_sweep),
        ("inner-point sweep D real and positive", inner_point_sweep),
        ("star bound sweep and summand signs", theorem2),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} [{secs:.1} s] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} [{secs:.1} s] {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
