//! Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned.
//!
//! Run with `cargo test -p wavedof-cli --test acceptance -- --nocapture`.
//!
//! Three sub-criteria are unattainable as written and print FAIL: 5a and 5b
//! (the figure regimes contradict the closed form's own limits and the
//! integer ceilings) and 8a (the isotropic 2D ensemble carries about
//! 2kR + 1 circular orders, not N + 1). The test asserts that exactly this
//! set fails, so an unexpected failure or an unexpected pass turns it red.

use std::f64::consts::{E, PI};
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde_json::Value;

use wavedof_cli::commands::verify_resolution;
use wavedof_cli::sweep::{figure_preset, Figure, SweepTable};
use wavedof_core::bounds::{asymptotic_dof_3d, dof_space, truncation_degree};
use wavedof_core::modes::{enumerate_modes, synthesize_ensemble, WaveVector};
use wavedof_core::quadrature::GaussRule;
use wavedof_core::rankcheck::{
    build_grid, eigen_spectrum_with, ensemble_spectrum, gram_of_modes, recommended_resolution, truncation_error,
    truncation_resolution, RankPolicy, Resolution,
};
use wavedof_core::specfun::{bessel_j_upto, legendre_p, sph_harm, spherical_bessel_j_upto, Angle, HarmonicTable};
use wavedof_core::{closed_form_bound, exact_mode_sum, Dimension, PhysicalConfig};

/// Sub-criteria that fail by construction; see the module comment.
const EXPECTED_FAILURES: [&str; 3] = ["5a", "5b", "8a"];

struct Line {
    id: &'static str,
    pass: bool,
}

struct Suite {
    lines: Vec<Line>,
}

impl Suite {
    fn report(&mut self, id: &'static str, title: &str, pass: bool, detail: String) {
        println!("{} [{id}] {title}: {detail}", if pass { "PASS" } else { "FAIL" });
        self.lines.push(Line { id, pass });
    }

    /// Time a criterion; the runtime limit is part of its verdict.
    fn timed<F: FnOnce(&mut Suite) -> bool>(&mut self, id: &'static str, limit: Duration, f: F) {
        let start = Instant::now();
        let parts_pass = f(self);
        let elapsed = start.elapsed();
        let pass = parts_pass && elapsed <= limit;
        self.report(
            id,
            "overall",
            pass,
            format!(
                "sub-checks {}, runtime {:.2?} (limit {:?})",
                ok(parts_pass),
                elapsed,
                limit
            ),
        );
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

/// `eπR/c = p/q`, `T = s`, `F_o = f`, `W = w` with `c = 1`; every bin edge
/// and degree is then an exact rational.
#[derive(Debug, Clone, Copy)]
struct Rational {
    p: i64,
    q: i64,
    s: i64,
    f: i64,
    w: i64,
}

impl Rational {
    fn random(rng: &mut ChaCha20Rng) -> Self {
        let f = rng.random_range(1..=20);
        Self {
            p: rng.random_range(0..=30),
            q: rng.random_range(1..=12),
            s: rng.random_range(1..=6),
            f,
            w: rng.random_range(0..=f),
        }
    }

    fn physical(&self) -> PhysicalConfig {
        let a = self.p as f64 / self.q as f64;
        PhysicalConfig::with_wave_speed(a / (E * PI), self.w as f64, self.s as f64, self.f as f64, 1.0).unwrap()
    }

    /// Loop over every `(i, n, m)`, integer arithmetic only.
    fn brute_force_3d(&self) -> u64 {
        let (lo, hi) = ((self.f - self.w) * self.s, (self.f + self.w) * self.s);
        let mut count = 0;
        for i in lo..=hi {
            // ⌈(p/q)·i/s⌉
            let num = self.p * i;
            let den = self.q * self.s;
            let top = num / den + i64::from(num % den != 0);
            for n in 0..=top {
                for _m in -n..=n {
                    count += 1;
                }
            }
        }
        count
    }
}

fn criterion_1(s: &mut Suite) -> bool {
    let mut worst_r0 = 0.0f64;
    for t in [0.1, 0.5, 1.0, 3.0, 10.0] {
        for w in [0.0, 0.5, 1.0, 3.0, 7.0] {
            let cfg = PhysicalConfig::with_wave_speed(0.0, w, t, 10.0, 1.0).unwrap();
            worst_r0 = worst_r0.max(rel(
                closed_form_bound(Dimension::ThreeD, &cfg),
                13.0 * t * w / 3.0 + 1.0,
            ));
        }
    }
    let mut worst_t0 = 0.0f64;
    for r in [0.0, 0.01, 0.3, 1.0, 2.0] {
        for w in [0.0, 0.5, 1.0, 3.0, 7.0] {
            let cfg = PhysicalConfig::with_wave_speed(r, w, 0.0, 10.0, 1.0).unwrap();
            let edge = (10.0 - w) * E * PI * r + 1.0;
            worst_t0 = worst_t0.max(rel(closed_form_bound(Dimension::ThreeD, &cfg), edge * edge));
        }
    }
    let pass = worst_r0 <= 1e-12 && worst_t0 <= 1e-12;
    s.report(
        "1",
        "limit identities",
        pass,
        format!("R=0 max rel {worst_r0:.1e}, T=0 max rel {worst_t0:.1e} (tol 1e-12)"),
    );
    pass
}

fn criterion_2(s: &mut Suite) -> bool {
    let mut rng = ChaCha20Rng::seed_from_u64(2);
    let mismatches = (0..200)
        .map(|_| Rational::random(&mut rng))
        .filter(|c| exact_mode_sum(Dimension::ThreeD, &c.physical()).unwrap() != c.brute_force_3d())
        .count();
    let cal_a = Rational {
        p: 1,
        q: 1,
        s: 1,
        f: 10,
        w: 1,
    };
    let cal_b = Rational {
        p: 10,
        q: 1,
        s: 100,
        f: 10,
        w: 1,
    };
    let got = [
        exact_mode_sum(Dimension::ThreeD, &cal_a.physical()).unwrap(),
        exact_mode_sum(Dimension::ThreeD, &cal_b.physical()).unwrap(),
    ];
    let brute = [cal_a.brute_force_3d(), cal_b.brute_force_3d()];
    let pass = mismatches == 0 && got == [365, 2_075_381] && brute == got;
    s.report(
        "2",
        "exact sum vs brute force",
        pass,
        format!(
            "{mismatches}/200 mismatches; calibration {} and {} (want 365, 2075381; second at eπR/c=10, F0=10, W=1, T=100)",
            got[0], got[1]
        ),
    );
    pass
}

fn criterion_3(s: &mut Suite) -> bool {
    let mut worst = 0.0f64;
    for q in [1, 2, 5, 10] {
        // eπR/c = 1, T = q: eπR/(cT) = 1/q, band edges 9 and 11.
        let cfg = Rational {
            p: 1,
            q: 1,
            s: q,
            f: 10,
            w: 1,
        }
        .physical();
        let exact = exact_mode_sum(Dimension::ThreeD, &cfg).unwrap() as f64;
        worst = worst.max(rel(closed_form_bound(Dimension::ThreeD, &cfg), exact));
    }
    let pass = worst <= 1e-9;
    s.report(
        "3",
        "integral grouping",
        pass,
        format!("max rel {worst:.1e} over q=1,2,5,10 (tol 1e-9)"),
    );
    pass
}

fn criterion_4(s: &mut Suite) -> bool {
    let mut devs = Vec::new();
    for sc in [1.0, 10.0, 100.0] {
        let cfg = PhysicalConfig::with_wave_speed(sc / (E * PI), 1.0, sc, 10.0, 1.0).unwrap();
        devs.push((closed_form_bound(Dimension::ThreeD, &cfg) / asymptotic_dof_3d(&cfg) - 1.0).abs());
    }
    let pass = devs[0] <= 0.85 && devs[1] <= 0.08 && devs[2] <= 0.008 && devs[0] > devs[1] && devs[1] > devs[2];
    s.report(
        "4",
        "asymptotic convergence",
        pass,
        format!(
            "|thm2/asym-1| = {:.4}, {:.4}, {:.5} at s=1,10,100 (limits 0.85, 0.08, 0.008, strictly decreasing)",
            devs[0], devs[1], devs[2]
        ),
    );
    pass
}

fn column(t: &SweepTable, name: &str) -> Vec<f64> {
    let c = t.column(name).unwrap();
    t.rows.iter().map(|r| r[c].as_f64()).collect()
}

fn criterion_5(s: &mut Suite) -> bool {
    // 5a: R = 0 column of the Fig. 5 preset against ⌈2WT⌉ + 1.
    let f5 = figure_preset(Figure::Fig5, 25).evaluate().unwrap();
    let (r, thm2, d2wt) = (column(&f5, "R"), column(&f5, "thm2"), column(&f5, "d_2wt"));
    let exact3d = column(&f5, "exact3d");
    let idx: Vec<usize> = (0..r.len()).filter(|&k| r[k] == 0.0).collect();
    let thm2_equal = idx.iter().filter(|&&k| thm2[k] == d2wt[k]).count();
    let exact_equal = idx.iter().filter(|&&k| exact3d[k] == d2wt[k]).count();
    let worst = idx.iter().map(|&k| (thm2[k] - d2wt[k]).abs()).fold(0.0, f64::max);
    let a = thm2_equal == idx.len();
    s.report(
        "5a",
        "fig5 R=0 column equals dof_time_band",
        a,
        format!(
            "thm2 equal in {thm2_equal}/{} cells (max |diff| {worst:.3}; thm2 there is 13TW/3+1), exact3d equal in {exact_equal}/{}",
            idx.len(),
            idx.len()
        ),
    );

    // 5b: Fig. 4 grid within 15% of 2WT-count plus spatial count.
    let f4 = figure_preset(Figure::Fig4, 25).evaluate().unwrap();
    let (thm2, d2wt, dsp) = (column(&f4, "thm2"), column(&f4, "d_2wt"), column(&f4, "d_space3d"));
    let errs: Vec<f64> = (0..thm2.len()).map(|k| rel(d2wt[k] + dsp[k], thm2[k])).collect();
    let within = errs.iter().filter(|&&e| e <= 0.15).count();
    let worst = errs.iter().copied().fold(0.0, f64::max);
    let b = within == errs.len();
    s.report(
        "5b",
        "fig4 |thm2 - (d_2wt + d_space3d)|/thm2 <= 0.15",
        b,
        format!("{within}/{} cells within, worst {worst:.3}", errs.len()),
    );

    // 5c: super-linear growth in R on the Fig. 3 preset at W = 1 MHz.
    let spec = figure_preset(Figure::Fig3, 25);
    let at = |radius: f64| {
        let cfg = spec.base.with_radius(radius).with_half_bandwidth(1e6);
        closed_form_bound(Dimension::ThreeD, &cfg)
    };
    let ratio = at(1.0) / at(0.5);
    let f3 = spec.evaluate().unwrap();
    let c = ratio >= 3.5 && f3.rows.len() == 625;
    s.report(
        "5c",
        "fig3 thm2(R=1)/thm2(R=0.5) at W=1e6 >= 3.5",
        c,
        format!("ratio {ratio:.4}"),
    );
    a && b && c
}

fn criterion_6(s: &mut Suite) -> bool {
    let mut rng = ChaCha20Rng::seed_from_u64(6);
    let (mut mismatches, mut drawn) = (0, 0);
    while drawn < 200 {
        let cfg = Rational::random(&mut rng).physical();
        // Half the draws get a fractional T to exercise non-grouping edges.
        let cfg = if rng.random_bool(0.5) {
            cfg.with_duration(cfg.duration * rng.random_range(0.3..1.0))
        } else {
            cfg
        };
        // Keep enumeration to desk scale.
        if exact_mode_sum(Dimension::ThreeD, &cfg).unwrap() > 200_000 {
            continue;
        }
        drawn += 1;
        for dim in [Dimension::TwoD, Dimension::ThreeD] {
            if enumerate_modes(dim, &cfg).unwrap().len() as u64 != exact_mode_sum(dim, &cfg).unwrap() {
                mismatches += 1;
            }
        }
    }
    let pass = mismatches == 0;
    s.report(
        "6",
        "enumeration size equals exact sum",
        pass,
        format!("{mismatches}/400 mismatches"),
    );
    pass
}

fn criterion_7(s: &mut Suite) -> bool {
    let mut pass = true;
    let mut detail = Vec::new();
    for kr in [2.0, 5.0, 10.0] {
        let wv = WaveVector::new([0.48, -0.6, 0.64], kr / (2.0 * PI), 1.0);
        let n = truncation_degree(1.0, kr) as u32;
        let res = truncation_resolution(&wv, 1.0, n + 5);
        let e_n = truncation_error(&wv, 1.0, n, res);
        let e_n5 = truncation_error(&wv, 1.0, n + 5, res);
        pass &= e_n <= 0.1 && e_n5 <= e_n / 100.0;
        detail.push(format!("kR={kr}: N={n} err {e_n:.2e}, N+5 err {e_n5:.2e}"));
    }
    s.report(
        "7",
        "Jacobi-Anger truncation",
        pass,
        format!("{} (tol err(N) <= 0.1, err(N+5) <= err(N)/100)", detail.join("; ")),
    );
    pass
}

fn ensemble_rank(
    dim: Dimension,
    cfg: &PhysicalConfig,
    res: Resolution,
    fields: usize,
    waves: usize,
    seed: u64,
) -> (usize, usize) {
    let grid = build_grid(dim, cfg, res).unwrap();
    let ens = synthesize_ensemble(dim, cfg, waves, fields, seed);
    let s = ensemble_spectrum(&ens, &grid, RankPolicy::default()).unwrap();
    (s.rank_energy, s.rank_threshold)
}

fn criterion_8(s: &mut Suite) -> bool {
    // 8a: narrowband 2D at eπF_oR/c = 8.5397, c = 1.
    let f0 = 2.4;
    let radius = 8.5397 / (E * PI * f0);
    let cfg = PhysicalConfig::with_wave_speed(radius, 1e-6, 1.0, f0, 1.0).unwrap();
    let target = dof_space(Dimension::TwoD, f0, radius, 1.0);
    let modes = enumerate_modes(Dimension::TwoD, &cfg).unwrap();
    let (energy, threshold) = ensemble_rank(Dimension::TwoD, &cfg, verify_resolution(&modes, &cfg), 200, 50, 8);
    let dev = rel(energy as f64, target as f64);
    let a = dev <= 0.2;
    s.report(
        "8a",
        "narrowband 2D energy-rank(0.99) within 20% of dof_space",
        a,
        format!("energy-rank {energy}, threshold-rank(1e-3) {threshold}, dof_space(2D) {target}, rel dev {dev:.2}"),
    );

    // 8b: 3-point ladders, each on its own recommended grid.
    let base = PhysicalConfig::with_wave_speed(0.3, 0.5, 2.0, 2.0, 1.0).unwrap();
    let ladders: [(&str, [PhysicalConfig; 3]); 3] = [
        ("R", [0.3, 0.45, 0.6].map(|r| base.with_radius(r))),
        ("W", [0.25, 0.5, 1.0].map(|w| base.with_half_bandwidth(w))),
        ("T", [1.0, 2.0, 3.0].map(|t| base.with_duration(t))),
    ];
    let mut b = true;
    let mut detail = Vec::new();
    for (name, rungs) in ladders {
        let ranks: Vec<usize> = rungs
            .iter()
            .map(|cfg| {
                let modes = enumerate_modes(Dimension::TwoD, cfg).unwrap();
                ensemble_rank(Dimension::TwoD, cfg, verify_resolution(&modes, cfg), 150, 40, 80).0
            })
            .collect();
        b &= ranks.windows(2).all(|w| w[0] <= w[1]);
        detail.push(format!("{name}: {ranks:?}"));
    }
    s.report("8b", "ensemble energy-rank monotone on ladders", b, detail.join("; "));

    // 8c: Gram at the 2D calibration config.
    let cal = PhysicalConfig::with_wave_speed(1.0 / (E * PI), 1.0, 1.0, 10.0, 1.0).unwrap();
    let modes = enumerate_modes(Dimension::TwoD, &cal).unwrap();
    let grid = build_grid(Dimension::TwoD, &cal, recommended_resolution(&modes, &cal)).unwrap();
    let spec = eigen_spectrum_with(
        &gram_of_modes(&modes, &grid, &cal).unwrap(),
        RankPolicy::new(1e-6, 0.99).unwrap(),
    )
    .unwrap();
    let c = spec.rank_threshold == modes.len();
    s.report(
        "8c",
        "Gram threshold-rank(1e-6) equals enumerated count",
        c,
        format!("rank {} vs count {}", spec.rank_threshold, modes.len()),
    );
    a && b && c
}

fn criterion_9(s: &mut Suite) -> bool {
    // Three-term recurrences, orders 1..=100.
    let mut worst = 0.0f64;
    for k in 0..40 {
        let x = 0.05 + 7.5 * k as f64;
        let j = spherical_bessel_j_upto(101, x);
        let big = bessel_j_upto(101, x);
        for n in 1..=100usize {
            let scale = j[n - 1].abs().max(j[n].abs()).max(j[n + 1].abs());
            if scale > 1e-280 {
                worst = worst.max(((2 * n + 1) as f64 * j[n] / x - j[n - 1] - j[n + 1]).abs() / scale);
            }
            let scale = big[n - 1].abs().max(big[n].abs()).max(big[n + 1].abs());
            if scale > 1e-280 {
                worst = worst.max((2.0 * n as f64 * big[n] / x - big[n - 1] - big[n + 1]).abs() / scale);
            }
        }
    }
    let rec = worst <= 1e-10;

    // Orthonormality, n <= 30, exact product quadrature.
    let nmax = 30u32;
    let polar = GaussRule::legendre(nmax as usize + 1);
    let naz = 2 * nmax as usize + 1;
    let count = ((nmax + 1) * (nmax + 1)) as usize;
    let mut gram = vec![Complex64::new(0.0, 0.0); count * count];
    for (u, wu) in polar.nodes.iter().zip(&polar.weights) {
        for j in 0..naz {
            let phi = 2.0 * PI * j as f64 / naz as f64;
            let w = wu * 2.0 * PI / naz as f64;
            let table = HarmonicTable::new(nmax, Angle::new(u.acos(), phi));
            let vals: Vec<Complex64> = (0..=nmax as i32)
                .flat_map(|n| (-n..=n).map(move |m| (n as u32, m)))
                .map(|(n, m)| table.get(n, m))
                .collect();
            for a in 0..count {
                for b in a..count {
                    gram[a * count + b] += vals[a] * vals[b].conj() * w;
                }
            }
        }
    }
    let (mut off, mut diag) = (0.0f64, 0.0f64);
    for a in 0..count {
        diag = diag.max((gram[a * count + a] - 1.0).norm());
        for b in a + 1..count {
            off = off.max(gram[a * count + b].norm());
        }
    }
    let orth = off <= 1e-8 && diag <= 1e-8;

    // Addition theorem, n <= 20.
    let mut rng = ChaCha20Rng::seed_from_u64(9);
    let mut add = 0.0f64;
    for _ in 0..100 {
        let x = Angle::new(rng.random_range(0.0..PI), rng.random_range(0.0..2.0 * PI));
        let y = Angle::new(rng.random_range(0.0..PI), rng.random_range(0.0..2.0 * PI));
        let (ux, uy) = (x.unit_vector(), y.unit_vector());
        let cos_gamma = (ux[0] * uy[0] + ux[1] * uy[1] + ux[2] * uy[2]).clamp(-1.0, 1.0);
        for n in 0..=20u32 {
            let ni = n as i32;
            let lhs: Complex64 = (-ni..=ni)
                .map(|m| sph_harm(n, m, x).unwrap() * sph_harm(n, m, y).unwrap().conj())
                .sum();
            let rhs = (2 * n + 1) as f64 / (4.0 * PI) * legendre_p(n, cos_gamma);
            add = add.max((lhs - rhs).norm());
        }
    }
    let addition = add <= 1e-10;

    let pass = rec && orth && addition;
    s.report(
        "9",
        "special functions",
        pass,
        format!(
            "recurrence rel residual {worst:.1e} (tol 1e-10); orthonormality off-diag {off:.1e}, diag {diag:.1e} (tol 1e-8); addition theorem {add:.1e} (tol 1e-10)"
        ),
    );
    pass
}

fn verify_json() -> Value {
    let radius = format!("{:.17}", 8.5397 / (E * PI * 2.4));
    let out = Command::new(env!("CARGO_BIN_EXE_wavedof"))
        .args([
            "verify", "--R", &radius, "--W", "1e-6", "--T", "1", "--F0", "2.4", "--c", "1", "--seed", "42", "--fields",
            "60", "--waves", "20",
        ])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["metadata"].as_object_mut().unwrap().remove("timestamp");
    v
}

fn criterion_10(s: &mut Suite) -> bool {
    let (a, b) = (verify_json(), verify_json());
    let pass = a == b && a["ensemble"]["eigenvalues"].as_array().is_some_and(|e| !e.is_empty());
    s.report(
        "10",
        "verify determinism",
        pass,
        format!(
            "two runs with seed 42 {} outside the timestamp",
            if a == b { "identical" } else { "differ" }
        ),
    );
    pass
}

#[test]
fn acceptance() {
    let mut suite = Suite { lines: Vec::new() };
    let secs = Duration::from_secs;
    suite.timed("1", secs(1), criterion_1);
    suite.timed("2", secs(10), criterion_2);
    suite.timed("3", secs(1), criterion_3);
    suite.timed("4", secs(1), criterion_4);
    suite.timed("5", secs(30), criterion_5);
    suite.timed("6", secs(30), criterion_6);
    suite.timed("7", secs(60), criterion_7);
    suite.timed("8", secs(300), criterion_8);
    suite.timed("9", secs(30), criterion_9);
    suite.timed("10", secs(60), criterion_10);

    // Sub-criterion lines carry the verdicts; overall lines repeat them with runtime.
    let failed: Vec<&str> = suite.lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    let sub_failed: Vec<&str> = failed
        .iter()
        .copied()
        .filter(|id| id.len() > 1 && id.ends_with(char::is_alphabetic))
        .collect();
    let criteria_failed: Vec<&str> = failed
        .iter()
        .copied()
        .filter(|id| id.chars().all(|c| c.is_ascii_digit()))
        .collect();
    println!(
        "SUMMARY: {} of 10 criteria pass; failing criteria {:?}; failing sub-criteria {:?} (expected {:?})",
        10 - criteria_failed.len(),
        criteria_failed,
        sub_failed,
        EXPECTED_FAILURES
    );
    assert_eq!(
        sub_failed, EXPECTED_FAILURES,
        "unexpected change in failing sub-criteria"
    );
    // Every criterion without a documented sub-failure passes outright, runtime included.
    for id in criteria_failed {
        assert!(
            EXPECTED_FAILURES.iter().any(|f| f.starts_with(id)),
            "criterion {id} failed"
        );
    }
}
