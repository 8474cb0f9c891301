//! Acceptance gate: eleven cross-checks, each at its stated tolerance
//! and time budget, printing one line per criterion (visible with
//! `cargo test --test acceptance -- --nocapture`).

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use taubethe::bethe::{
    check_commutation, check_exchange, check_rtt, check_vacuum, domain_wall_identity, eigen_check,
    fj_polynomiality, scalar_product_direct, slavnov, solve_bethe, ChainParams, SlavnovForm,
};
use taubethe::error::Error;
use taubethe::exec::Strategy;
use taubethe::matrix::Matrix;
use taubethe::qzero::{boxed_schur_sum, macmahon_count, plane_partition_count, single_schur_form};
use taubethe::report::from_json;
use taubethe::scalar::{random_rational, random_real, Mode, Scalar};
use taubethe::sixvertex::{
    determine_prefactor, dwbc_count, ik_determinant, ik_rational, schur_point_ratio,
    stroganov_okada_check, z_bruteforce, SixVertexParams,
};
use taubethe::symfunc::{miwa_times, schur_jt, schur_weyl, MiwaSign, Partition};
use taubethe::taufn::{
    eval_schur_expansion, eval_two_kp_expansion, kp_schur_expansion, kp_tau,
    plucker_relation_residual, toda_diagonal_expansion, toda_diagonal_tau, two_kp_schur_expansion,
    two_kp_tau, PowerSeriesH, TwoWaveFrame, WaveFrame,
};

fn finish(name: &str, started: Instant, budget_s: u64) {
    let elapsed = started.elapsed();
    println!("acceptance {name}: PASS in {} ms", elapsed.as_millis());
    assert!(
        elapsed < Duration::from_secs(budget_s),
        "{name} exceeded its {budget_s} s budget: {elapsed:?}"
    );
}

fn assert_exact(lhs: &Scalar, rhs: &Scalar, what: &str) {
    assert!((lhs - rhs).is_zero(), "{what}: {lhs:?} != {rhs:?}");
}

/// Retries across admissibility rejections; panics on genuine errors.
fn retry<T>(mut attempt: impl FnMut() -> taubethe::Result<T>) -> T {
    for _ in 0..1000 {
        match attempt() {
            Ok(v) => return v,
            Err(Error::Pole(_))
            | Err(Error::Resample(_))
            | Err(Error::DegenerateRoot(_))
            | Err(Error::SingularDenominator(_))
            | Err(Error::Solver(_)) => continue,
            Err(e) => panic!("unexpected error: {e}"),
        }
    }
    panic!("no admissible sample after 1000 attempts");
}

fn staggered(rng: &mut ChaCha8Rng, count: usize, offset: i64) -> Vec<Scalar> {
    (0..count)
        .map(|i| {
            let num = rng.gen_range(1i64..=9);
            let den = rng.gen_range(num + 1..=12);
            &Mode::Exact.int(offset + i as i64) + &Mode::Exact.ratio(num, den)
        })
        .collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    let data: Vec<Scalar> = (0..rows * cols)
        .map(|_| random_rational(rng, bound))
        .collect();
    Matrix::new(rows, cols, data)
}

fn partitions_up_to(total: usize, rows: usize) -> Vec<Partition> {
    fn push(
        budget: usize,
        cap: usize,
        rows_left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if rows_left == 0 || budget == 0 || cap == 0 {
            return;
        }
        for part in (1..=cap.min(budget)).rev() {
            cur.push(part);
            out.push(Partition::new(cur.clone()));
            push(budget - part, part, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![Partition::empty()];
    let mut cur = Vec::new();
    push(total, total, rows, &mut cur, &mut out);
    out
}

#[test]
fn criterion_01_schur_route_consistency() {
    let started = Instant::now();
    let shapes = partitions_up_to(6, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(9101);
    for _ in 0..20 {
        let xs = staggered(&mut rng, 3, 1);
        let times = miwa_times(&xs, 10, MiwaSign::Plus).unwrap();
        for shape in &shapes {
            let alternant = schur_weyl(shape, &xs).unwrap();
            let minor = schur_jt(shape, &times).unwrap();
            assert_exact(&alternant, &minor, "Schur routes disagree");
        }
    }
    finish("01 schur route consistency", started, 5);
}

#[test]
fn criterion_02_kp_cauchy_binet_and_plucker() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9102);
    for _ in 0..20 {
        let n = rng.gen_range(1usize..=3);
        let l = rng.gen_range(n..=6);
        let frame = WaveFrame::new(random_matrix(&mut rng, n, l, 6));
        let xs = staggered(&mut rng, n, 1);
        let expansion = kp_schur_expansion(&frame, Strategy::default()).unwrap();
        let direct = kp_tau(&frame, &xs).unwrap();
        let summed = eval_schur_expansion(&expansion, &xs).unwrap();
        assert_exact(&direct, &summed, "KP tau vs Schur expansion");
    }
    for _ in 0..20 {
        let frame = WaveFrame::new(random_matrix(&mut rng, 2, 4, 6));
        let residual = plucker_relation_residual(&frame).unwrap();
        assert!(residual.is_zero(), "Gr(2,4) Pluecker residual nonzero");
    }
    finish("02 KP Cauchy-Binet + Gr(2,4) Pluecker", started, 5);
}

#[test]
fn criterion_03_two_kp_and_toda_expansions() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9103);
    for _ in 0..20 {
        let m = rng.gen_range(1usize..=2);
        let n = rng.gen_range(1usize..=2);
        let f = random_matrix(&mut rng, m + n, m + 2, 5);
        let g = random_matrix(&mut rng, m + n, n + 2, 5);
        let frame = TwoWaveFrame::new(f, g, m, n);
        let xs = staggered(&mut rng, m, 1);
        let ys = staggered(&mut rng, n, 1 + m as i64);
        let expansion = two_kp_schur_expansion(&frame, Strategy::default()).unwrap();
        let direct = two_kp_tau(&frame, &xs, &ys).unwrap();
        let summed = eval_two_kp_expansion(&expansion, &xs, &ys).unwrap();
        assert_exact(&direct, &summed, "2-KP tau vs double expansion");
    }
    for _ in 0..20 {
        let n = rng.gen_range(1usize..=3);
        let len = rng.gen_range(n.max(1)..=6);
        let coeffs: Vec<Scalar> = (0..len).map(|_| random_rational(&mut rng, 5)).collect();
        let h = PowerSeriesH::new(coeffs);
        let xs = staggered(&mut rng, n, 1);
        let ys = staggered(&mut rng, n, 1 + n as i64);
        let quotient = toda_diagonal_tau(&h, &xs, &ys).unwrap();
        let summed = toda_diagonal_expansion(&h, &xs, &ys).unwrap();
        assert_exact(&quotient, &summed, "Toda diagonal tau vs expansion");
    }
    finish("03 two-component KP + diagonal Toda", started, 10);
}

#[test]
fn criterion_04_izergin_korepin_master() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9104);
    for n in 1..=3usize {
        for _ in 0..10 {
            let p = SixVertexParams::random_exact(n, &mut rng);
            let summed = z_bruteforce(&p).unwrap();
            let det = ik_determinant(&p).unwrap();
            assert_exact(&summed, &det, "partition sum vs determinant");
        }
    }
    let rel = retry(|| {
        let p = SixVertexParams::random_float(4, &mut rng)?;
        let summed = z_bruteforce(&p)?;
        let det = ik_determinant(&p)?;
        Ok(summed.residual(&det))
    });
    assert!(rel <= 1e-10, "N=4 float residual {rel:e} exceeds 1e-10");
    assert_eq!(
        (1..=4).map(|n| dwbc_count(n).unwrap()).collect::<Vec<_>>(),
        vec![1, 2, 7, 42]
    );
    finish("04 Izergin-Korepin master + ASM counts", started, 60);
}

#[test]
fn criterion_05_rational_forms_and_prefactor() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9105);
    for n in 1..=3usize {
        for _ in 0..5 {
            let gap: f64 = retry(|| {
                let p = SixVertexParams::random_exact(n, &mut rng);
                let z = ik_determinant(&p)?;
                let mut worst = 0.0f64;
                for form in 0..3u8 {
                    let (core, prefactor) = ik_rational(&p, form)?;
                    let diff = &(&core * &prefactor) - &z;
                    if !diff.is_zero() {
                        worst = worst.max(1.0);
                    }
                }
                Ok(worst)
            });
            assert_eq!(gap, 0.0, "rational form mismatch at n={n}");
        }
        let p = SixVertexParams::random_exact(n, &mut rng);
        let fit = determine_prefactor(&p, 0, 1e-9, 5050 + n as u64).unwrap();
        for _ in 0..3 {
            let ok = retry(|| {
                let fresh = SixVertexParams::random_exact(n, &mut rng);
                let held_out = p.with_roots(fresh.xi(), fresh.eta())?;
                let z = ik_determinant(&held_out)?;
                let (core, _) = ik_rational(&held_out, 0)?;
                let base: Vec<Scalar> = held_out
                    .xi()
                    .iter()
                    .chain(held_out.eta().iter())
                    .cloned()
                    .collect();
                Ok((&(&z / &core) - &fit.eval(&base)).is_zero())
            });
            assert!(ok, "fitted prefactor missed a held-out point at n={n}");
        }
    }
    finish("05 rational IK forms + refitted prefactor", started, 30);
}

#[test]
fn criterion_06_schur_point_monomial() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9106);
    for n in 2..=3usize {
        let p = retry(|| SixVertexParams::random_schur_point(n, &mut rng));
        let fit = stroganov_okada_check(&p, 1e-8, 6060 + n as u64).unwrap();
        for _ in 0..5 {
            let rel = retry(|| {
                let fresh = SixVertexParams::random_schur_point(n, &mut rng)?;
                let base: Vec<Scalar> =
                    fresh.xi().iter().chain(fresh.eta().iter()).cloned().collect();
                let predicted = fit.eval(&base);
                let actual = schur_point_ratio(&fresh)?;
                Ok(actual.residual(&predicted))
            });
            assert!(rel <= 1e-8, "Schur-point ratio off by {rel:e} at n={n}");
        }
    }
    finish("06 Schur-point evaluation is monomial x constant", started, 30);
}

#[test]
fn criterion_07_xxz_operator_algebra() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9107);
    for sites in 1..=4usize {
        let gap = retry(|| {
            let p = ChainParams::random_exact(sites, &mut rng);
            let wu = staggered(&mut rng, 1, 17).remove(0);
            let wv = staggered(&mut rng, 1, 19).remove(0);
            check_rtt(&p, &wu, &wv)
        });
        assert_eq!(gap, 0.0, "RTT residual nonzero at {sites} sites");
    }
    for sites in 1..=6usize {
        let gap = retry(|| {
            let p = ChainParams::random_exact(sites, &mut rng);
            let wu = staggered(&mut rng, 1, 17).remove(0);
            let wv = staggered(&mut rng, 1, 19).remove(0);
            let exchange = check_exchange(&p, &wu, &wv)?;
            let commutation = check_commutation(&p, &wu, &wv)?;
            let vacuum = check_vacuum(&p, &wu)?;
            Ok(exchange.max(commutation).max(vacuum))
        });
        assert_eq!(gap, 0.0, "operator algebra residual nonzero at {sites} sites");
    }
    finish("07 XXZ RTT, exchange and vacuum algebra", started, 60);
}

#[test]
fn criterion_08_bethe_roots_and_slavnov() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9108);
    for (sites, magnons) in [(2usize, 1usize), (4, 1), (4, 2), (6, 2)] {
        let (p, roots) = retry(|| {
            let p = ChainParams::random_float(sites, &mut rng);
            let roots = solve_bethe(&p, magnons, 96, 8800 + sites as u64)?;
            Ok((p, roots))
        });
        assert!(
            roots.residual() <= 1e-12,
            "({sites},{magnons}) root residual {:e}",
            roots.residual()
        );
        let eigen = retry(|| {
            let wu = random_real(&mut rng, 0.6, 2.1);
            eigen_check(&p, &roots, &wu)
        });
        assert!(eigen <= 1e-8, "({sites},{magnons}) eigenvalue residual {eigen:e}");
        let slavnov_rel = retry(|| {
            let wus: Vec<Scalar> = (0..magnons)
                .map(|i| random_real(&mut rng, 1.1 + 0.8 * i as f64, 1.7 + 0.8 * i as f64))
                .collect();
            let direct = scalar_product_direct(&p, &wus, roots.rapidity_exps())?;
            let mut worst = 0.0f64;
            for form in [SlavnovForm::H, SlavnovForm::K, SlavnovForm::Rational] {
                let det = slavnov(&p, &wus, roots.rapidity_exps(), form)?;
                worst = worst.max(det.residual(&direct));
            }
            Ok(worst)
        });
        assert!(
            slavnov_rel <= 1e-8,
            "({sites},{magnons}) Slavnov residual {slavnov_rel:e}"
        );
        for j in 0..magnons {
            assert!(
                fj_polynomiality(&p, roots.ys(), j, 1e-8).unwrap(),
                "({sites},{magnons}) f_{j} fails polynomial division on shell"
            );
        }
    }
    finish("08 Bethe roots, eigenvalues and Slavnov forms", started, 120);
}

#[test]
fn criterion_09_domain_wall_bridge() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9109);
    for n in 2..=3usize {
        let svp = SixVertexParams::random_exact(n, &mut rng);
        let chain = ChainParams::new(svp.eta().to_vec(), svp.rho().clone()).unwrap();
        let gap = domain_wall_identity(&chain, svp.xi()).unwrap();
        assert_eq!(gap, 0.0, "domain-wall bridge broken at N={n}");
    }
    finish("09 creation-operator string builds the partition function", started, 30);
}

#[test]
fn criterion_10_qzero_combinatorics() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9110);
    for n in 1..=3usize {
        for box_height in 1..=3usize {
            let ones = vec![Mode::Exact.one(); n];
            let summed = boxed_schur_sum(n, box_height, &ones, &ones).unwrap();
            let brute = plane_partition_count(n, n, box_height).unwrap();
            let formula = macmahon_count(n, n, box_height);
            assert_exact(
                &summed,
                &Mode::Exact.int(brute as i64),
                "boxed Schur sum vs plane partitions",
            );
            assert_eq!(brute, formula, "({n},{n},{box_height})");
        }
    }
    assert_eq!(plane_partition_count(2, 2, 1).unwrap(), 6);
    let mut constants: Vec<Scalar> = Vec::new();
    let mut exponents: Vec<Vec<i64>> = Vec::new();
    for k in 0..5u64 {
        let u = staggered(&mut rng, 2, 1);
        let v = staggered(&mut rng, 2, 3);
        let (_, fit) = single_schur_form(2, &u, &v, 1e-10, 7700 + k).unwrap();
        constants.push(fit.constant.clone());
        exponents.push(fit.exponents.clone());
    }
    for k in 1..constants.len() {
        let drift = (&constants[k] - &constants[0]).magnitude();
        assert!(
            drift <= 1e-10 * constants[0].magnitude().max(1.0),
            "fitted constant drifts across points: {drift:e}"
        );
        assert_eq!(exponents[k], exponents[0], "fitted exponents changed");
    }
    finish("10 q=0 combinatorics + point-independent fit", started, 30);
}

#[test]
fn criterion_11_harness_determinism_and_exit_codes() {
    let started = Instant::now();
    let exe = env!("CARGO_BIN_EXE_taubethe");
    let dir = std::env::temp_dir().join(format!("taubethe-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path_a = dir.join("a.json");
    let path_b = dir.join("b.json");
    for path in [&path_a, &path_b] {
        let status = Command::new(exe)
            .args([
                "verify",
                "qzero",
                "--trials",
                "2",
                "--seed",
                "13",
                "--report",
            ])
            .arg(path)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0), "all-pass run must exit 0");
    }
    let mut a = from_json(&std::fs::read_to_string(&path_a).unwrap()).unwrap();
    let mut b = from_json(&std::fs::read_to_string(&path_b).unwrap()).unwrap();
    for r in a.iter_mut().chain(b.iter_mut()) {
        r.elapsed_ms = 0;
    }
    assert_eq!(a, b, "reports differ for identical (seed, config)");

    let usage = Command::new(exe)
        .args(["verify", "nonsense"])
        .output()
        .unwrap();
    assert_eq!(usage.status.code(), Some(2), "unknown suite must exit 2");
    let invalid = Command::new(exe)
        .args(["verify", "bethe", "--magnons", "9"])
        .output()
        .unwrap();
    assert_eq!(invalid.status.code(), Some(2), "invalid config must exit 2");
    let failing = Command::new(exe)
        .args([
            "verify", "bethe", "--sites", "2", "--magnons", "1", "--mode", "float", "--trials",
            "1", "--tol", "1e-300",
        ])
        .output()
        .unwrap();
    assert_eq!(
        failing.status.code(),
        Some(1),
        "failing checks must exit 1"
    );
    let stdout = String::from_utf8(failing.stdout).unwrap();
    assert!(
        stdout.contains("repro: taubethe verify bethe"),
        "failing run must print a reproduction command"
    );
    std::fs::remove_dir_all(&dir).ok();
    finish("11 harness determinism + exit-code contract", started, 60);
}
