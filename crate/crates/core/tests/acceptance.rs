//! Acceptance criteria. Each test prints one PASS/FAIL line; run with
//! `cargo test -p dynosc-core --test acceptance -- --nocapture` to see them.

use std::f64::consts::{FRAC_PI_4, PI};
use std::panic;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dynosc_core::operators::{apply_ladder, commutator_check, invariant_report, FirstOrderOperator, LadderKind};
use dynosc_core::oracle::{comoving_residual, dft_momentum, schrodinger_residual, split_step_propagate, TauConvention};
use dynosc_core::states::{eval_momentum_with, sample_invariant_frame};
use dynosc_core::stencil::interior_norm;
use dynosc_core::{
    classical_moments, eval_psi, flow, hermite_function, momentum_params, sample_frame, Grid, HermiteOrder,
    MomentumDenominator, OscillatorParams, Preset, Representation, StateSpec, WaveFrame,
};

fn ord(n: u32) -> HermiteOrder {
    HermiteOrder::new(n).unwrap()
}

/// Eight times spanning [0, 2π] inclusive.
fn sample_times() -> Vec<f64> {
    (0..8).map(|k| 2.0 * PI * k as f64 / 7.0).collect()
}

fn verdict(id: &str, what: &str, measured: f64, tol: &str, pass: bool) -> bool {
    println!("[{}] {id} {what}: measured {measured:.3e}, tolerance {tol}", if pass { "PASS" } else { "FAIL" });
    pass
}

fn random_params(rng: &mut ChaCha8Rng) -> OscillatorParams {
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    OscillatorParams::new(
        rng.gen_range(0.5..2.0),
        rng.gen_range(-0.6..0.6),
        sign * rng.gen_range(0.6..1.5),
        rng.gen_range(-PI..PI),
        rng.gen_range(-1.5..1.5),
        rng.gen_range(-1.5..1.5),
        rng.gen_range(-PI..PI),
    )
    .unwrap()
}

/// Grid for the differential-operator criteria: fine enough that the
/// fourth-order truncation error sits well below the tolerances for n ≤ 7.
fn operator_grid() -> Grid {
    Grid::new(-12.0, 12.0, 8192).unwrap()
}

fn ac01_family_is_exact() {
    let start = Instant::now();
    let grid = Grid::default_position();
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for preset in Preset::ALL {
        for n in [0, 1, 2, 5] {
            let spec = StateSpec::new(preset.params(), ord(n));
            let max = sample_times()
                .into_iter()
                .map(|t| schrodinger_residual(&spec, grid, t, 1e-4).unwrap().l2_relative)
                .fold(0.0, f64::max);
            println!("    AC1 {preset:<11} n={n}: max l2_relative {max:.3e}");
            if max >= 1e-6 {
                failures.push(format!("{preset}/n={n}"));
            }
            worst = worst.max(max);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();

    // Diagnostic only: on a resolved grid the remaining residual is the
    // O(dt²) error of the three-point time difference at dt = 1e-4.
    let resolved = Grid::new(-12.0, 12.0, 8192).unwrap();
    for preset in [Preset::Schrodinger, Preset::Example1, Preset::Minuncert] {
        let spec = StateSpec::new(preset.params(), ord(5));
        let max = sample_times()
            .into_iter()
            .map(|t| schrodinger_residual(&spec, resolved, t, 1e-4).unwrap().l2_relative)
            .fold(0.0, f64::max);
        println!("    AC1 diagnostic {preset:<11} n=5 on 8192 points: {max:.3e}");
    }

    let ok_time = verdict("AC1", "runtime (s)", elapsed, "< 30", elapsed < 30.0);
    let ok = verdict("AC1", "PDE residual, 1024 points, dt=1e-4", worst, "< 1e-6", failures.is_empty());
    assert!(ok_time);
    assert!(ok, "residual >= 1e-6 for {failures:?}");
}

fn ac02_invariant_spectrum() {
    let grid = operator_grid();
    let mut worst: f64 = 0.0;
    for preset in Preset::ALL {
        for n in 0..=6 {
            let spec = StateSpec::new(preset.params(), ord(n));
            for t in sample_times() {
                let frame = sample_frame(&spec, Representation::Position, grid, t).unwrap();
                let rep = invariant_report(&spec, &frame, t).unwrap();
                worst = worst.max((rep.eigenvalue_estimate - spec.n.half_integer()).abs());
            }
        }
    }
    assert!(verdict("AC2", "Rayleigh quotient |E - (n+1/2)|", worst, "< 1e-7", worst < 1e-7));
}

fn ac03_ladder_algebra() {
    let grid = operator_grid();
    let (mut worst_down, mut worst_up, mut worst_comm): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for preset in Preset::ALL {
        let params = preset.params();
        for t in sample_times() {
            let lower = FirstOrderOperator::at(LadderKind::Annihilation, &params, t);
            let raise = FirstOrderOperator::at(LadderKind::Creation, &params, t);
            let frames: Vec<WaveFrame> =
                (0..=7).map(|n| sample_invariant_frame(&StateSpec::new(params, ord(n)), grid, t).unwrap()).collect();
            for n in 0..=6usize {
                let norm = interior_norm(frames[n].amplitudes());
                let down = apply_ladder(&lower, &frames[n]).unwrap();
                let diff: Vec<Complex64> = if n == 0 {
                    down.amplitudes().to_vec()
                } else {
                    let c = (n as f64).sqrt();
                    down.amplitudes().iter().zip(frames[n - 1].amplitudes()).map(|(a, b)| a - c * b).collect()
                };
                worst_down = worst_down.max(interior_norm(&diff) / norm);
                let up = apply_ladder(&raise, &frames[n]).unwrap();
                let c = (n as f64 + 1.0).sqrt();
                let diff: Vec<Complex64> =
                    up.amplitudes().iter().zip(frames[n + 1].amplitudes()).map(|(a, b)| a - c * b).collect();
                worst_up = worst_up.max(interior_norm(&diff) / norm);
            }

            let gaussians: Vec<WaveFrame> = [(0.0, 1.0, 0.0), (1.2, 0.6, 0.25), (-0.7, 1.6, -0.4)]
                .into_iter()
                .map(|(shift, width, chirp)| {
                    WaveFrame::from_fn(Representation::Position, t, grid, |x| {
                        let y: f64 = (x - shift) / width;
                        Complex64::from_polar((-0.5 * y * y).exp(), chirp * x * x + 0.3 * x)
                    })
                    .unwrap()
                })
                .collect();
            worst_comm = worst_comm.max(commutator_check(t, &params, &gaussians).unwrap().residual_l2);
        }
    }
    let a =
        verdict("AC3", "lowering ||a Psi_n - sqrt(n) Psi_{n-1}||/||Psi_n||", worst_down, "< 1e-6", worst_down < 1e-6);
    let b = verdict("AC3", "raising ||a+ Psi_n - sqrt(n+1) Psi_{n+1}||/||Psi_n||", worst_up, "< 1e-6", worst_up < 1e-6);
    let c = verdict("AC3", "commutator [a, a+] - 1 on Gaussians", worst_comm, "< 1e-7", worst_comm < 1e-7);
    assert!(a && b && c);
}

fn ac04_textbook_limit() {
    let spec0 = Preset::Schrodinger.spec();
    let grid = Grid::default_position();
    let mut pointwise: f64 = 0.0;
    let mut closed: f64 = 0.0;
    let mut quad: f64 = 0.0;
    for n in 0..=10 {
        let spec = spec0.with_n(ord(n));
        let e = n as f64 + 0.5;
        for t in sample_times() {
            for x in grid.points().step_by(4) {
                let want = Complex64::from_polar(hermite_function(spec.n, x).unwrap(), -e * t);
                pointwise = pointwise.max((eval_psi(&spec, x, t) - want).norm());
            }
            let m = classical_moments(&spec.params, spec.n, t);
            closed = closed.max((m.var_x - e).abs()).max((m.var_p - e).abs());

            let frame = sample_frame(&spec, Representation::Position, grid, t).unwrap();
            let vx = dynosc_core::oracle::quadrature_moment(&frame, 2).unwrap();
            let pframe = dft_momentum(&frame).unwrap().frame;
            let vp = dynosc_core::oracle::quadrature_moment(&pframe, 2).unwrap();
            quad = quad.max((vx - e).abs()).max((vp - e).abs());
        }
    }
    let a = verdict("AC4", "pointwise |psi_n - phi_n e^{-i(n+1/2)t}|", pointwise, "< 1e-12", pointwise < 1e-12);
    let b = verdict("AC4", "closed-form variances = n+1/2", closed, "< 1e-12", closed < 1e-12);
    let c = verdict("AC4", "quadrature variances = n+1/2", quad, "< 1e-8", quad < 1e-8);
    assert!(a && b && c);
}

/// Golden-section polish of a bracketed minimum.
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    fc.min(fd)
}

fn ac05_uncertainty_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let samples = 10_000;
    let mut worst_sampled: f64 = 0.0;
    let mut worst: f64 = 0.0;
    for _ in 0..16 {
        let params = random_params(&mut rng);
        for n in 0..=4 {
            let n = ord(n);
            let product = |t: f64| classical_moments(&params, n, t).product;
            let ts: Vec<f64> = (0..samples).map(|i| 2.0 * PI * i as f64 / samples as f64).collect();
            let (imin, pmin) = ts.iter().map(|&t| product(t)).enumerate().fold((0, f64::INFINITY), |best, (i, p)| {
                if p < best.1 {
                    (i, p)
                } else {
                    best
                }
            });
            let floor = n.half_integer().powi(2);
            worst_sampled = worst_sampled.max((pmin - floor).abs());
            let step = 2.0 * PI / samples as f64;
            let refined = golden_min(product, ts[imin] - step, ts[imin] + step);
            worst = worst.max((refined - floor).abs());
        }
    }
    println!("    AC5 raw 10000-sample minimum deviates by at most {worst_sampled:.3e} before refinement");
    let a = verdict("AC5", "min_t var_x var_p - (n+1/2)^2", worst, "< 1e-9", worst < 1e-9);
    let p = classical_moments(&Preset::Minuncert.params(), ord(0), FRAC_PI_4).product;
    let b = verdict("AC5", "minuncert product at t=pi/4 vs 0.25", (p - 0.25).abs(), "< 1e-9", (p - 0.25).abs() < 1e-9);
    assert!(a && b);
}

fn momentum_gap(spec: &StateSpec, t: f64, denom: MomentumDenominator) -> f64 {
    let grid = Grid::default_position();
    let position = sample_frame(spec, Representation::Position, grid, t).unwrap();
    let transformed = dft_momentum(&position).unwrap();
    assert!(!transformed.precision_warning);
    let closed =
        WaveFrame::from_fn(Representation::Momentum, t, grid, |p| eval_momentum_with(spec, p, t, denom)).unwrap();
    transformed.frame.l2_distance(&closed).unwrap()
}

fn ac06_momentum_representation() {
    let mut worst: f64 = 0.0;
    for preset in Preset::ALL {
        for n in 0..=4 {
            let spec = StateSpec::new(preset.params(), ord(n));
            for t in sample_times() {
                worst = worst.max(momentum_gap(&spec, t, MomentumDenominator::Beta0Quart));
            }
        }
    }
    let a = verdict("AC6", "L2 gap DFT vs closed form (4a^2+b^4)", worst, "< 1e-8", worst < 1e-8);
    let sq = momentum_gap(&Preset::Example3.spec(), 0.0, MomentumDenominator::Beta0Sq);
    let b = verdict("AC6", "negative control: L2 gap with 4a^2+b^2 on example3", sq, "> 1e-2", sq > 1e-2);
    assert!(a && b);
}

fn ac07_worked_examples() {
    let ex1 = Preset::Example1.params();
    let ex3 = Preset::Example3.params();
    let grid = Grid::default_position();
    let n0 = ord(0);
    let (mut center, mut peak, mut width, mut mvar): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    let mut peak_ok = true;
    for i in 0..=100 {
        let t = 2.0 * PI * i as f64 / 100.0;
        let c2 = (2.0 * t).cos();
        center = center.max((classical_moments(&ex1, n0, t).mean_x - t.sin()).abs());
        let b = flow(&ex1, t).beta;
        width = width.max((b * b - 72.0 / (97.0 + 65.0 * c2)).abs());
        let want = (97.0 - 65.0 * c2) / 144.0;
        let closed = classical_moments(&ex3, n0, t).var_p;
        let dual = classical_moments(&momentum_params(&ex3), n0, t).var_x;
        mvar = mvar.max((closed - want).abs()).max((dual - want).abs());
        if i % 10 == 0 {
            let frame = sample_frame(&Preset::Example1.spec(), Representation::Position, grid, t).unwrap();
            let d = (grid.at(frame.peak_index()) - t.sin()).abs();
            peak = peak.max(d);
            peak_ok &= d <= grid.step();
        }
    }
    let a = verdict("AC7", "example1 center <x> - sin t", center, "< 1e-12", center < 1e-12);
    let b = verdict("AC7", "example1 frame peak - sin t (grid steps)", peak / grid.step(), "<= 1", peak_ok);
    let c = verdict("AC7", "example1 beta^2 - 72/(97+65cos2t)", width, "< 1e-12", width < 1e-12);
    let d = verdict("AC7", "example3 var_p - (97-65cos2t)/144", mvar, "< 1e-10", mvar < 1e-10);
    assert!(a && b && c && d);
}

fn ac08_classical_layer() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut all: Vec<OscillatorParams> = Preset::ALL.iter().map(|p| p.params()).collect();
    all.extend((0..8).map(|_| random_params(&mut rng)));
    let (mut energy, mut ehrenfest): (f64, f64) = (0.0, 0.0);
    let n = ord(0);
    let h = 1e-5;
    for params in &all {
        let e0 = classical_moments(params, n, 0.0).energy;
        for i in 0..200 {
            let t = -PI + 0.05 * i as f64;
            let m = classical_moments(params, n, t);
            energy = energy.max((m.energy - e0).abs());
            let fwd = classical_moments(params, n, t + h);
            let bwd = classical_moments(params, n, t - h);
            ehrenfest = ehrenfest
                .max(((fwd.mean_x - bwd.mean_x) / (2.0 * h) - m.mean_p).abs())
                .max(((fwd.mean_p - bwd.mean_p) / (2.0 * h) + m.mean_x).abs());
        }
    }
    let a = verdict("AC8", "energy drift", energy, "< 1e-12", energy < 1e-12);
    let b = verdict("AC8", "Ehrenfest finite difference", ehrenfest, "< 1e-8", ehrenfest < 1e-8);
    assert!(a && b);
}

fn ac09_split_step_propagation() {
    let start = Instant::now();
    let grid = Grid::default_position();
    let mut worst: f64 = 0.0;
    for preset in Preset::ALL {
        let spec = preset.spec();
        let initial = sample_frame(&spec, Representation::Position, grid, 0.0).unwrap();
        let evolved = split_step_propagate(&initial, 1.0, 4096).unwrap();
        let closed = sample_frame(&spec, Representation::Position, grid, 1.0).unwrap();
        let gap = evolved.l2_distance(&closed).unwrap();
        println!("    AC9 {preset:<11} L2 gap {gap:.3e}");
        worst = worst.max(gap);
    }
    let elapsed = start.elapsed().as_secs_f64();
    let a = verdict("AC9", "split-step vs closed form at t=1", worst, "< 1e-5", worst < 1e-5);
    let b = verdict("AC9", "runtime (s)", elapsed, "< 60", elapsed < 60.0);
    assert!(a && b);
}

fn ac10_comoving_convention() {
    let times = [0.3, 0.8, 1.9, 3.4, 5.0];
    let mut passing = Vec::new();
    for convention in TauConvention::ALL {
        let worst = Preset::ALL
            .iter()
            .flat_map(|p| times.iter().map(move |&t| comoving_residual(&p.spec(), t, convention).unwrap().l2_relative))
            .fold(0.0, f64::max);
        println!("    AC10 {convention:?}: worst residual {worst:.3e}");
        if worst < 1e-6 {
            passing.push(convention);
        }
    }
    let ok = verdict(
        "AC10",
        "conventions with residual < 1e-6 (must be exactly one)",
        passing.len() as f64,
        "== 1",
        passing.len() == 1,
    );
    assert!(ok, "passing conventions: {passing:?}");
    assert_eq!(passing, vec![TauConvention::MinusTwoGamma]);
}

fn ac11_convergence_orders() {
    let spec = Preset::Example1.spec();
    let t = 1.0;
    let coarse = Grid::new(-12.0, 12.0, 513).unwrap();
    let fine = Grid::new(-12.0, 12.0, 1025).unwrap();
    let r = |g: Grid, dt: f64| schrodinger_residual(&spec, g, t, dt).unwrap().l2_relative;
    let spatial = r(coarse, 1e-5) / r(fine, 1e-5);
    let resolved = Grid::new(-12.0, 12.0, 8193).unwrap();
    let temporal = r(resolved, 2e-3) / r(resolved, 1e-3);
    let a =
        verdict("AC11", "spatial ratio under grid halving", spatial, "in [12, 20]", (12.0..=20.0).contains(&spatial));
    let b =
        verdict("AC11", "temporal ratio under dt halving", temporal, "in [3.5, 4.5]", (3.5..=4.5).contains(&temporal));
    assert!(a && b);
}

fn main() -> ExitCode {
    let criteria: [(&str, fn()); 11] = [
        ("ac01_family_is_exact", ac01_family_is_exact),
        ("ac02_invariant_spectrum", ac02_invariant_spectrum),
        ("ac03_ladder_algebra", ac03_ladder_algebra),
        ("ac04_textbook_limit", ac04_textbook_limit),
        ("ac05_uncertainty_structure", ac05_uncertainty_structure),
        ("ac06_momentum_representation", ac06_momentum_representation),
        ("ac07_worked_examples", ac07_worked_examples),
        ("ac08_classical_layer", ac08_classical_layer),
        ("ac09_split_step_propagation", ac09_split_step_propagation),
        ("ac10_comoving_convention", ac10_comoving_convention),
        ("ac11_convergence_orders", ac11_convergence_orders),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = Vec::new();
    let mut ran = 0;
    for (name, criterion) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        ran += 1;
        if panic::catch_unwind(criterion).is_err() {
            failed.push(name);
        }
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed: {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
