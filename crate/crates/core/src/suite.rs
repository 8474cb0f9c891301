//! Named check registry behind the `taubethe` binary.
//!
//! Every identity the library verifies is packaged here as a seeded,
//! configurable check: a stable id, the suite it belongs to, whether it
//! runs in exact or floating-point arithmetic, and a body returning the
//! worst residual across its trials. [`run_suite`] executes a filtered
//! registry slice (possibly in parallel), but the report order is
//! always the registration order, and each check derives its own PRNG
//! seed from the configured seed and its id, so two runs with the same
//! configuration produce identical reports apart from timings.
//!
//! Exact checks pass only on literal equality (residual 0.0);
//! floating-point checks pass when the residual stays within the
//! configured tolerance. A check that cannot run under the requested
//! arithmetic mode is reported as SKIP rather than silently dropped,
//! and a FAIL always carries the exact command line that reproduces it.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bethe::{
    check_commutation, check_exchange, check_rtt, check_vacuum, domain_wall_identity, eigen_check,
    fj_numerator, scalar_product_direct, slavnov, solve_bethe, ChainParams, SlavnovForm, SITE_CAP,
};
use crate::error::{Error, Result};
use crate::exec::{map_collect, Strategy};
use crate::matrix::Matrix;
use crate::poly;
use crate::qzero::{
    boxed_schur_sum, crystal_limit_residual, macmahon_count, plane_partition_count, scalar_det_q0,
    single_schur_form, QZeroParams,
};
use crate::report::{CheckResult, Status};
use crate::scalar::{product, random_rational, random_real, sum, Mode, Scalar};
use crate::sixvertex::{
    determine_prefactor, dwbc_count, ik_determinant, ik_rational, schur_point_ratio,
    stroganov_okada_check, z_bruteforce, SixVertexParams, ENUMERATION_CAP,
};
use crate::symfunc::{miwa_times, schur_eval, schur_jt, schur_weyl, MiwaSign, Partition};
use crate::taufn::{
    eval_schur_expansion, eval_two_kp_expansion, kp_schur_expansion, kp_tau,
    plucker_relation_residual, toda_diagonal_expansion, toda_diagonal_tau, two_kp_schur_expansion,
    two_kp_tau, PowerSeriesH, TwoWaveFrame, WaveFrame,
};

/// Rejection-sampling budget for drawing admissible random points.
pub const RESAMPLE_CAP: usize = 1000;

/// Suites a run can select.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SuiteName {
    Symfunc,
    Taufn,
    Sixvertex,
    Bethe,
    Qzero,
    All,
}

impl SuiteName {
    pub fn parse(text: &str) -> Result<SuiteName> {
        match text {
            "symfunc" => Ok(SuiteName::Symfunc),
            "taufn" => Ok(SuiteName::Taufn),
            "sixvertex" => Ok(SuiteName::Sixvertex),
            "bethe" => Ok(SuiteName::Bethe),
            "qzero" => Ok(SuiteName::Qzero),
            "all" => Ok(SuiteName::All),
            other => Err(Error::Argument(format!(
                "unknown suite '{other}'; expected symfunc, taufn, sixvertex, bethe, qzero or all"
            ))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SuiteName::Symfunc => "symfunc",
            SuiteName::Taufn => "taufn",
            SuiteName::Sixvertex => "sixvertex",
            SuiteName::Bethe => "bethe",
            SuiteName::Qzero => "qzero",
            SuiteName::All => "all",
        }
    }

    fn includes(&self, suite: &str) -> bool {
        matches!(self, SuiteName::All) || self.label() == suite
    }
}

impl std::fmt::Display for SuiteName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Arithmetic modes a run may request.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RunMode {
    Exact,
    Float,
    Both,
}

impl RunMode {
    fn runs(&self, kind: CheckKind) -> bool {
        match self {
            RunMode::Both => true,
            RunMode::Exact => kind == CheckKind::Exact,
            RunMode::Float => kind == CheckKind::Float,
        }
    }
}

impl std::fmt::Display for RunMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunMode::Exact => write!(f, "exact"),
            RunMode::Float => write!(f, "float"),
            RunMode::Both => write!(f, "both"),
        }
    }
}

/// Arithmetic a check inherently uses, which decides its pass rule:
/// exact checks demand residual 0.0, float checks compare against the
/// configured tolerance.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckKind {
    Exact,
    Float,
}

impl std::fmt::Display for CheckKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckKind::Exact => write!(f, "exact"),
            CheckKind::Float => write!(f, "float"),
        }
    }
}

/// Full configuration of a verification run.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub suite: SuiteName,
    /// Determinant / lattice size cap.
    pub n: usize,
    /// Spin-chain length.
    pub sites: usize,
    /// Magnon number for Bethe-state checks.
    pub magnons: usize,
    pub mode: RunMode,
    /// Random points per check.
    pub trials: usize,
    pub seed: u64,
    /// Pass threshold for floating-point residuals.
    pub tol: f64,
}

impl SuiteConfig {
    pub fn new(suite: SuiteName) -> SuiteConfig {
        SuiteConfig {
            suite,
            n: 3,
            sites: 4,
            magnons: 2,
            mode: RunMode::Both,
            trials: 5,
            seed: 7,
            tol: 1e-8,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Argument("trials must be at least 1".into()));
        }
        if self.n == 0 || self.n > ENUMERATION_CAP {
            return Err(Error::Argument(format!(
                "n must lie in 1..={ENUMERATION_CAP}"
            )));
        }
        if self.sites == 0 || self.sites > SITE_CAP {
            return Err(Error::Argument(format!(
                "sites must lie in 1..={SITE_CAP}"
            )));
        }
        if self.magnons == 0 || 2 * self.magnons > self.sites {
            return Err(Error::Argument(
                "magnons must be at least 1 and at most sites/2".into(),
            ));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::Argument("tolerance must be positive and finite".into()));
        }
        Ok(())
    }
}

/// One registered check.
pub struct Check {
    suite: &'static str,
    id: &'static str,
    kind: CheckKind,
    run: fn(&mut CheckContext) -> Result<f64>,
}

impl Check {
    pub fn suite(&self) -> &'static str {
        self.suite
    }

    pub fn id(&self) -> &'static str {
        self.id
    }

    pub fn kind(&self) -> CheckKind {
        self.kind
    }
}

/// Per-check execution state: the shared configuration plus a PRNG
/// seeded from (config seed, check id), so checks are independent of
/// scheduling order.
pub struct CheckContext<'a> {
    cfg: &'a SuiteConfig,
    rng: ChaCha8Rng,
}

impl CheckContext<'_> {
    fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn trials(&self) -> usize {
        self.cfg.trials
    }

    fn n(&self) -> usize {
        self.cfg.n
    }

    fn sites(&self) -> usize {
        self.cfg.sites
    }

    fn magnons(&self) -> usize {
        self.cfg.magnons
    }

    fn seed(&self) -> u64 {
        self.cfg.seed
    }
}

fn fnv1a(text: &str) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for byte in text.bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Seed a check actually runs with.
pub fn check_seed(cfg_seed: u64, id: &str) -> u64 {
    cfg_seed ^ fnv1a(id)
}

/// Zero if the two values are literally equal, otherwise a positive
/// magnitude (clamped away from underflow so inequality never reports
/// as zero).
fn exact_gap(lhs: &Scalar, rhs: &Scalar) -> f64 {
    let diff = lhs - rhs;
    if diff.is_zero() {
        0.0
    } else {
        diff.magnitude().max(f64::MIN_POSITIVE)
    }
}

/// Retries a sampling attempt across pole, degeneracy and resample
/// rejections, up to [`RESAMPLE_CAP`] attempts.
fn with_resample<T>(mut attempt: impl FnMut() -> Result<T>) -> Result<T> {
    for _ in 0..RESAMPLE_CAP {
        match attempt() {
            Err(Error::Pole(_))
            | Err(Error::Resample(_))
            | Err(Error::DegenerateRoot(_))
            | Err(Error::SingularDenominator(_)) => continue,
            other => return other,
        }
    }
    Err(Error::Resample(
        "no admissible random point within the resample cap".into(),
    ))
}

/// Pairwise distinct positive rationals staggered by whole-number
/// offsets, so squares and cross differences stay away from zero.
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

/// All partitions with at most `rows` rows and size at most `total`,
/// including the empty shape.
fn partitions_up_to(total: usize, rows: usize) -> Vec<Partition> {
    fn push(budget: usize, cap: usize, rows_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
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

// ---- symfunc checks ----

fn chk_schur_dual_routes(ctx: &mut CheckContext) -> Result<f64> {
    let shapes = partitions_up_to(6, 3);
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let xs = staggered(ctx.rng(), 3, 1);
        let times = miwa_times(&xs, 10, MiwaSign::Plus)?;
        for shape in &shapes {
            let alternant = schur_weyl(shape, &xs)?;
            let minor = schur_jt(shape, &times)?;
            worst = worst.max(exact_gap(&alternant, &minor));
        }
    }
    Ok(worst)
}

fn chk_schur_zero_letter(ctx: &mut CheckContext) -> Result<f64> {
    let shapes = partitions_up_to(5, 2);
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let xs = staggered(ctx.rng(), 2, 1);
        let mut padded = xs.clone();
        padded.push(Mode::Exact.zero());
        for shape in &shapes {
            let plain = schur_eval(shape, &xs)?;
            let grown = schur_eval(shape, &padded)?;
            worst = worst.max(exact_gap(&plain, &grown));
        }
    }
    Ok(worst)
}

fn chk_schur_pieri_box(ctx: &mut CheckContext) -> Result<f64> {
    let shapes = partitions_up_to(4, 3);
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let xs = staggered(ctx.rng(), 3, 1);
        let e1 = sum(Mode::Exact, xs.iter().cloned());
        for shape in &shapes {
            let lhs = &schur_eval(shape, &xs)? * &e1;
            let mut rhs = Mode::Exact.zero();
            let parts = shape.parts();
            for row in 0..=parts.len() {
                let grown = if row == parts.len() {
                    let mut p = parts.to_vec();
                    p.push(1);
                    Partition::new(p)
                } else if row == 0 || parts[row - 1] > parts[row] {
                    let mut p = parts.to_vec();
                    p[row] += 1;
                    Partition::new(p)
                } else {
                    continue;
                };
                rhs = &rhs + &schur_eval(&grown, &xs)?;
            }
            worst = worst.max(exact_gap(&lhs, &rhs));
        }
    }
    Ok(worst)
}

// ---- taufn checks ----

fn chk_kp_tau_expansion(ctx: &mut CheckContext) -> Result<f64> {
    let n = ctx.n().min(3);
    let degree = n + 3;
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let frame = WaveFrame::new(random_matrix(ctx.rng(), n, degree, 6));
        let xs = staggered(ctx.rng(), n, 1);
        let expansion = kp_schur_expansion(&frame, Strategy::default())?;
        let direct = kp_tau(&frame, &xs)?;
        let summed = eval_schur_expansion(&expansion, &xs)?;
        worst = worst.max(exact_gap(&direct, &summed));
    }
    Ok(worst)
}

fn chk_plucker_quadratic(ctx: &mut CheckContext) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let frame = WaveFrame::new(random_matrix(ctx.rng(), 2, 4, 6));
        let residual = plucker_relation_residual(&frame)?;
        worst = worst.max(exact_gap(&residual, &Mode::Exact.zero()));
    }
    Ok(worst)
}

fn chk_two_kp_expansion(ctx: &mut CheckContext) -> Result<f64> {
    let (m, n) = (2usize, 2usize);
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let f = random_matrix(ctx.rng(), m + n, m + 2, 5);
        let g = random_matrix(ctx.rng(), m + n, n + 2, 5);
        let frame = TwoWaveFrame::new(f, g, m, n);
        let xs = staggered(ctx.rng(), m, 1);
        let ys = staggered(ctx.rng(), n, 1 + m as i64);
        let expansion = two_kp_schur_expansion(&frame, Strategy::default())?;
        let direct = two_kp_tau(&frame, &xs, &ys)?;
        let summed = eval_two_kp_expansion(&expansion, &xs, &ys)?;
        worst = worst.max(exact_gap(&direct, &summed));
    }
    Ok(worst)
}

fn chk_toda_diagonal(ctx: &mut CheckContext) -> Result<f64> {
    let n = ctx.n().min(3);
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let coeffs: Vec<Scalar> = (0..n + 3).map(|_| random_rational(ctx.rng(), 5)).collect();
        let h = PowerSeriesH::new(coeffs);
        let xs = staggered(ctx.rng(), n, 1);
        let ys = staggered(ctx.rng(), n, 1 + n as i64);
        let quotient = toda_diagonal_tau(&h, &xs, &ys)?;
        let summed = toda_diagonal_expansion(&h, &xs, &ys)?;
        worst = worst.max(exact_gap(&quotient, &summed));
    }
    Ok(worst)
}

// ---- sixvertex checks ----

fn chk_dwbc_sum_vs_det(ctx: &mut CheckContext) -> Result<f64> {
    let n = ctx.n().min(3);
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let p = SixVertexParams::random_exact(n, ctx.rng());
        let summed = z_bruteforce(&p)?;
        let det = ik_determinant(&p)?;
        worst = worst.max(exact_gap(&summed, &det));
    }
    Ok(worst)
}

fn chk_dwbc_sum_vs_det_float(ctx: &mut CheckContext) -> Result<f64> {
    let n = ctx.n().min(4);
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let rng = ctx.rng();
        let p = with_resample(|| SixVertexParams::random_float(n, rng))?;
        let summed = z_bruteforce(&p)?;
        let det = ik_determinant(&p)?;
        worst = worst.max(summed.residual(&det));
    }
    Ok(worst)
}

/// Alternating-sign-matrix count from the running product of
/// (3k+1)!/(n+k)!, kept in exact rational arithmetic.
fn asm_number(n: usize) -> u64 {
    let mut acc = Mode::Exact.one();
    for k in 0..n {
        for m in 2..=(3 * k + 1) as i64 {
            acc = &acc * &Mode::Exact.int(m);
        }
        for m in 2..=(n + k) as i64 {
            acc = &acc / &Mode::Exact.int(m);
        }
    }
    let r = acc.as_rational().expect("exact product").clone();
    assert!(r.is_integer());
    use num_traits::ToPrimitive;
    r.to_integer().to_u64().expect("count fits in u64")
}

fn chk_asm_counts(ctx: &mut CheckContext) -> Result<f64> {
    let top = ctx.n().min(4);
    let mut worst = 0.0f64;
    for n in 1..=top {
        let counted = dwbc_count(n)?;
        let formula = asm_number(n);
        worst = worst.max((counted as f64 - formula as f64).abs());
    }
    Ok(worst)
}

fn chk_rational_forms(ctx: &mut CheckContext) -> Result<f64> {
    let n = ctx.n().min(3);
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let rng = ctx.rng();
        let gap = with_resample(|| {
            let p = SixVertexParams::random_exact(n, rng);
            let z = ik_determinant(&p)?;
            let mut local = 0.0f64;
            for form in 0..3u8 {
                let (core, prefactor) = ik_rational(&p, form)?;
                local = local.max(exact_gap(&(&core * &prefactor), &z));
            }
            Ok(local)
        })?;
        worst = worst.max(gap);
    }
    Ok(worst)
}

fn chk_prefactor_refit(ctx: &mut CheckContext) -> Result<f64> {
    let n = ctx.n().min(3);
    let seed = ctx.seed();
    let rng = ctx.rng();
    let p = SixVertexParams::random_exact(n, rng);
    let fit = determine_prefactor(&p, 0, 1e-9, seed)?;
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let rng = ctx.rng();
        let gap = with_resample(|| {
            let fresh = SixVertexParams::random_exact(n, rng);
            let held_out = p.with_roots(fresh.xi(), fresh.eta())?;
            let z = ik_determinant(&held_out)?;
            let (core, _) = ik_rational(&held_out, 0)?;
            if core.is_zero() {
                return Err(Error::DegenerateRoot("core vanished".into()));
            }
            let base: Vec<Scalar> = held_out
                .xi()
                .iter()
                .chain(held_out.eta().iter())
                .cloned()
                .collect();
            Ok(exact_gap(&(&z / &core), &fit.eval(&base)))
        })?;
        worst = worst.max(gap);
    }
    Ok(worst)
}

fn chk_stroganov_okada(ctx: &mut CheckContext) -> Result<f64> {
    let top = ctx.n().clamp(2, 3);
    let seed = ctx.seed();
    let points = ctx.trials().max(5);
    let mut worst = 0.0f64;
    for n in 2..=top {
        let rng = ctx.rng();
        let p = with_resample(|| SixVertexParams::random_schur_point(n, rng))?;
        let fit = stroganov_okada_check(&p, 1e-8, seed)?;
        for _ in 0..points {
            let rng = ctx.rng();
            let gap = with_resample(|| {
                let fresh = SixVertexParams::random_schur_point(n, rng)?;
                let base: Vec<Scalar> =
                    fresh.xi().iter().chain(fresh.eta().iter()).cloned().collect();
                let predicted = fit.eval(&base);
                let actual = schur_point_ratio(&fresh)?;
                Ok(actual.residual(&predicted))
            })?;
            worst = worst.max(gap);
        }
    }
    Ok(worst)
}

// ---- bethe checks ----

fn chk_rtt(ctx: &mut CheckContext) -> Result<f64> {
    let sites = ctx.sites().min(4);
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let rng = ctx.rng();
        let gap = with_resample(|| {
            let p = ChainParams::random_exact(sites, rng);
            let wu = staggered(rng, 1, 17).remove(0);
            let wv = staggered(rng, 1, 19).remove(0);
            check_rtt(&p, &wu, &wv)
        })?;
        worst = worst.max(gap);
    }
    Ok(worst)
}

fn chk_exchange(ctx: &mut CheckContext) -> Result<f64> {
    let sites = ctx.sites().min(4);
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let rng = ctx.rng();
        let gap = with_resample(|| {
            let p = ChainParams::random_exact(sites, rng);
            let wu = staggered(rng, 1, 17).remove(0);
            let wv = staggered(rng, 1, 19).remove(0);
            Ok(check_exchange(&p, &wu, &wv)?.max(check_commutation(&p, &wu, &wv)?))
        })?;
        worst = worst.max(gap);
    }
    Ok(worst)
}

fn chk_vacuum(ctx: &mut CheckContext) -> Result<f64> {
    let sites = ctx.sites().min(6);
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let rng = ctx.rng();
        let gap = with_resample(|| {
            let p = ChainParams::random_exact(sites, rng);
            let wu = staggered(rng, 1, 17).remove(0);
            check_vacuum(&p, &wu)
        })?;
        worst = worst.max(gap);
    }
    Ok(worst)
}

fn chk_bethe_roots(ctx: &mut CheckContext) -> Result<f64> {
    let (sites, magnons) = (ctx.sites(), ctx.magnons());
    let seed = ctx.seed();
    let mut worst = 0.0f64;
    for trial in 0..ctx.trials() {
        let rng = ctx.rng();
        let p = ChainParams::random_float(sites, rng);
        let roots = solve_bethe(&p, magnons, 64, seed.wrapping_add(trial as u64))?;
        worst = worst.max(roots.residual());
    }
    Ok(worst)
}

fn chk_transfer_eigenvalue(ctx: &mut CheckContext) -> Result<f64> {
    let (sites, magnons) = (ctx.sites(), ctx.magnons());
    let seed = ctx.seed();
    let mut worst = 0.0f64;
    for trial in 0..ctx.trials() {
        let rng = ctx.rng();
        let gap = with_resample(|| {
            let p = ChainParams::random_float(sites, rng);
            let roots = solve_bethe(&p, magnons, 64, seed.wrapping_add(trial as u64))?;
            let wu = random_real(rng, 0.6, 2.1);
            eigen_check(&p, &roots, &wu)
        })?;
        worst = worst.max(gap);
    }
    Ok(worst)
}

fn chk_slavnov_on_shell(ctx: &mut CheckContext) -> Result<f64> {
    let (sites, magnons) = (ctx.sites(), ctx.magnons());
    let seed = ctx.seed();
    let mut worst = 0.0f64;
    for trial in 0..ctx.trials() {
        let rng = ctx.rng();
        let gap = with_resample(|| {
            let p = ChainParams::random_float(sites, rng);
            let roots = solve_bethe(&p, magnons, 64, seed.wrapping_add(trial as u64))?;
            let wus: Vec<Scalar> = (0..magnons)
                .map(|i| random_real(rng, 1.1 + 0.8 * i as f64, 1.7 + 0.8 * i as f64))
                .collect();
            let direct = scalar_product_direct(&p, &wus, roots.rapidity_exps())?;
            let mut local = 0.0f64;
            for form in [SlavnovForm::H, SlavnovForm::K, SlavnovForm::Rational] {
                let det = slavnov(&p, &wus, roots.rapidity_exps(), form)?;
                local = local.max(det.residual(&direct));
            }
            Ok(local)
        })?;
        worst = worst.max(gap);
    }
    Ok(worst)
}

fn chk_fj_on_shell(ctx: &mut CheckContext) -> Result<f64> {
    let (sites, magnons) = (ctx.sites(), ctx.magnons());
    let seed = ctx.seed();
    let mut worst = 0.0f64;
    for trial in 0..ctx.trials() {
        let rng = ctx.rng();
        let p = ChainParams::random_float(sites, rng);
        let roots = solve_bethe(&p, magnons, 64, seed.wrapping_add(trial as u64))?;
        for j in 0..magnons {
            let numerator = fj_numerator(&p, roots.ys(), j)?;
            let at_root = poly::eval(&numerator, &roots.ys()[j]);
            let scale = numerator
                .iter()
                .map(Scalar::magnitude)
                .fold(1.0f64, f64::max);
            worst = worst.max(at_root.magnitude() / scale);
        }
    }
    Ok(worst)
}

fn chk_slavnov_off_shell(ctx: &mut CheckContext) -> Result<f64> {
    let sites = ctx.sites().min(4);
    let magnons = ctx.magnons().min(2);
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let rng = ctx.rng();
        let gap = with_resample(|| {
            let p = ChainParams::random_exact(sites, rng);
            let wus = staggered(rng, magnons, sites as i64 + 3);
            let svs = staggered(rng, magnons, 2 * sites as i64 + 5);
            let h = slavnov(&p, &wus, &svs, SlavnovForm::H)?;
            let k = slavnov(&p, &wus, &svs, SlavnovForm::K)?;
            let r = slavnov(&p, &wus, &svs, SlavnovForm::Rational)?;
            Ok(exact_gap(&h, &k).max(exact_gap(&h, &r)))
        })?;
        worst = worst.max(gap);
    }
    Ok(worst)
}

fn chk_domain_wall(ctx: &mut CheckContext) -> Result<f64> {
    let n = ctx.n().min(3);
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let rng = ctx.rng();
        let gap = with_resample(|| {
            let svp = SixVertexParams::random_exact(n, rng);
            let chain = ChainParams::new(svp.eta().to_vec(), svp.rho().clone())?;
            domain_wall_identity(&chain, svp.xi())
        })?;
        worst = worst.max(gap);
    }
    Ok(worst)
}

// ---- qzero checks ----

fn chk_crystal_limit(ctx: &mut CheckContext) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let wu = staggered(ctx.rng(), 1, 2).remove(0);
        let wv = staggered(ctx.rng(), 1, 4).remove(0);
        let mut ratios = Vec::new();
        for k in 1..=2u32 {
            let rho = Mode::Exact.ratio(1, 10_i64.pow(k));
            let q_sq = rho.pow(4).magnitude();
            let gap = crystal_limit_residual(&wu, &wv, &rho)?;
            ratios.push(gap / q_sq);
        }
        worst = worst.max((ratios[0] - ratios[1]).abs() / ratios[0].max(f64::MIN_POSITIVE));
    }
    Ok(worst)
}

fn chk_cauchy_boxed(ctx: &mut CheckContext) -> Result<f64> {
    let n = 2usize;
    let box_height = ctx.n().min(2);
    let mut worst = 0.0f64;
    for _ in 0..ctx.trials() {
        let u = staggered(ctx.rng(), n, 2);
        let v = staggered(ctx.rng(), n, 2 + n as i64);
        let p = QZeroParams::cauchy(box_height, u.clone(), v.clone())?;
        let det = scalar_det_q0(&p)?;
        let a2: Vec<Scalar> = u.iter().map(|w| w.pow(2)).collect();
        let binv2: Vec<Scalar> = v.iter().map(|w| w.pow(-2)).collect();
        let boxed = boxed_schur_sum(n, box_height, &a2, &binv2)?;
        let factor = &product(Mode::Exact, u.iter().cloned()).pow(n as i64 - 1)
            * &product(Mode::Exact, v.iter().cloned())
                .pow(2 * box_height as i64 + n as i64 - 1);
        worst = worst.max(exact_gap(&det, &(&factor * &boxed)));
    }
    Ok(worst)
}

fn chk_plane_partitions(ctx: &mut CheckContext) -> Result<f64> {
    let top = ctx.n().min(3);
    let mut worst = 0.0f64;
    for n in 1..=top {
        for box_height in 0..=top {
            let ones = vec![Mode::Exact.one(); n];
            let summed = boxed_schur_sum(n, box_height, &ones, &ones)?;
            let brute = plane_partition_count(n, n, box_height)?;
            let product_form = if box_height == 0 {
                1
            } else {
                macmahon_count(n, n, box_height)
            };
            worst = worst.max(exact_gap(&summed, &Mode::Exact.int(brute as i64)));
            worst = worst.max((brute as f64 - product_form as f64).abs());
        }
    }
    Ok(worst)
}

fn chk_single_schur_fit(ctx: &mut CheckContext) -> Result<f64> {
    let n = 2usize;
    let box_height = ctx.n().min(2);
    let seed = ctx.seed();
    let mut worst = 0.0f64;
    for trial in 0..ctx.trials() {
        let u = staggered(ctx.rng(), n, 1);
        let v = staggered(ctx.rng(), n, 1 + n as i64);
        let (value, fit) =
            single_schur_form(box_height, &u, &v, 1e-10, seed.wrapping_add(trial as u64))?;
        if value.is_zero() {
            return Err(Error::DegenerateRoot("Schur value vanished".into()));
        }
        let mut expected = vec![0i64; n];
        expected.extend(vec![2 * box_height as i64; n]);
        if fit.exponents != expected {
            worst = worst.max(1.0);
        }
        worst = worst.max(exact_gap(&fit.constant, &Mode::Exact.one()));
    }
    Ok(worst)
}

/// The full registry in report order.
pub fn registry() -> Vec<Check> {
    vec![
        Check {
            suite: "symfunc",
            id: "schur_alternant_vs_jacobi_trudi",
            kind: CheckKind::Exact,
            run: chk_schur_dual_routes,
        },
        Check {
            suite: "symfunc",
            id: "schur_zero_letter_stability",
            kind: CheckKind::Exact,
            run: chk_schur_zero_letter,
        },
        Check {
            suite: "symfunc",
            id: "schur_pieri_single_box",
            kind: CheckKind::Exact,
            run: chk_schur_pieri_box,
        },
        Check {
            suite: "taufn",
            id: "kp_tau_schur_expansion",
            kind: CheckKind::Exact,
            run: chk_kp_tau_expansion,
        },
        Check {
            suite: "taufn",
            id: "plucker_quadratic_relation",
            kind: CheckKind::Exact,
            run: chk_plucker_quadratic,
        },
        Check {
            suite: "taufn",
            id: "two_kp_double_expansion",
            kind: CheckKind::Exact,
            run: chk_two_kp_expansion,
        },
        Check {
            suite: "taufn",
            id: "toda_diagonal_expansion",
            kind: CheckKind::Exact,
            run: chk_toda_diagonal,
        },
        Check {
            suite: "sixvertex",
            id: "partition_sum_vs_determinant",
            kind: CheckKind::Exact,
            run: chk_dwbc_sum_vs_det,
        },
        Check {
            suite: "sixvertex",
            id: "partition_sum_vs_determinant_float",
            kind: CheckKind::Float,
            run: chk_dwbc_sum_vs_det_float,
        },
        Check {
            suite: "sixvertex",
            id: "asm_enumeration_counts",
            kind: CheckKind::Exact,
            run: chk_asm_counts,
        },
        Check {
            suite: "sixvertex",
            id: "rational_forms_consistent",
            kind: CheckKind::Exact,
            run: chk_rational_forms,
        },
        Check {
            suite: "sixvertex",
            id: "prefactor_refit_held_out",
            kind: CheckKind::Exact,
            run: chk_prefactor_refit,
        },
        Check {
            suite: "sixvertex",
            id: "schur_point_monomial",
            kind: CheckKind::Float,
            run: chk_stroganov_okada,
        },
        Check {
            suite: "bethe",
            id: "rtt_relation",
            kind: CheckKind::Exact,
            run: chk_rtt,
        },
        Check {
            suite: "bethe",
            id: "exchange_and_commutation",
            kind: CheckKind::Exact,
            run: chk_exchange,
        },
        Check {
            suite: "bethe",
            id: "vacuum_action",
            kind: CheckKind::Exact,
            run: chk_vacuum,
        },
        Check {
            suite: "bethe",
            id: "bethe_root_residual",
            kind: CheckKind::Float,
            run: chk_bethe_roots,
        },
        Check {
            suite: "bethe",
            id: "transfer_eigenvalue",
            kind: CheckKind::Float,
            run: chk_transfer_eigenvalue,
        },
        Check {
            suite: "bethe",
            id: "slavnov_matches_direct",
            kind: CheckKind::Float,
            run: chk_slavnov_on_shell,
        },
        Check {
            suite: "bethe",
            id: "fj_vanishes_on_shell",
            kind: CheckKind::Float,
            run: chk_fj_on_shell,
        },
        Check {
            suite: "bethe",
            id: "slavnov_forms_off_shell",
            kind: CheckKind::Exact,
            run: chk_slavnov_off_shell,
        },
        Check {
            suite: "bethe",
            id: "domain_wall_bridge",
            kind: CheckKind::Exact,
            run: chk_domain_wall,
        },
        Check {
            suite: "qzero",
            id: "crystal_limit_rate",
            kind: CheckKind::Float,
            run: chk_crystal_limit,
        },
        Check {
            suite: "qzero",
            id: "cauchy_determinant_boxed_sum",
            kind: CheckKind::Exact,
            run: chk_cauchy_boxed,
        },
        Check {
            suite: "qzero",
            id: "plane_partitions_three_ways",
            kind: CheckKind::Exact,
            run: chk_plane_partitions,
        },
        Check {
            suite: "qzero",
            id: "single_schur_factor_fit",
            kind: CheckKind::Exact,
            run: chk_single_schur_fit,
        },
    ]
}

fn param_snapshot(cfg: &SuiteConfig) -> String {
    format!(
        "n={} sites={} magnons={} mode={} trials={} tol={:e}",
        cfg.n, cfg.sites, cfg.magnons, cfg.mode, cfg.trials, cfg.tol
    )
}

fn repro_command(cfg: &SuiteConfig, suite: &str) -> String {
    format!(
        "taubethe verify {suite} --n {} --sites {} --magnons {} --mode {} --trials {} --seed {} --tol {:e}",
        cfg.n, cfg.sites, cfg.magnons, cfg.mode, cfg.trials, cfg.seed, cfg.tol
    )
}

fn run_check(cfg: &SuiteConfig, check: &Check) -> CheckResult {
    let seed = check_seed(cfg.seed, check.id);
    let base = param_snapshot(cfg);
    let start = Instant::now();
    let (status, residual, note) = if !cfg.mode.runs(check.kind) {
        (
            Status::Skip,
            0.0,
            Some(format!(
                "skipped: {} arithmetic disabled by --mode {}",
                check.kind, cfg.mode
            )),
        )
    } else {
        let mut ctx = CheckContext {
            cfg,
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        match (check.run)(&mut ctx) {
            Ok(residual) => {
                let pass = match check.kind {
                    CheckKind::Exact => residual == 0.0,
                    CheckKind::Float => residual.is_finite() && residual <= cfg.tol,
                };
                if pass {
                    (Status::Pass, residual, None)
                } else {
                    (Status::Fail, residual, None)
                }
            }
            Err(e) => (Status::Fail, f64::MAX, Some(format!("error: {e}"))),
        }
    };
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let mut params = base;
    if let Some(note) = note {
        params.push_str("; ");
        params.push_str(&note);
    }
    if status == Status::Fail {
        params.push_str("; repro: ");
        params.push_str(&repro_command(cfg, check.suite));
    }
    CheckResult {
        suite: check.suite.to_string(),
        check: check.id.to_string(),
        params,
        status,
        residual,
        elapsed_ms,
        seed,
    }
}

/// Runs every registered check the configuration selects. Checks may
/// execute in parallel, but results always come back in registration
/// order, and each check's randomness is seeded from (seed, check id),
/// so reports are deterministic apart from the elapsed_ms field.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    cfg.validate()?;
    let selected: Vec<Check> = registry()
        .into_iter()
        .filter(|c| cfg.suite.includes(c.suite))
        .collect();
    if selected.is_empty() {
        return Err(Error::Argument(format!(
            "suite {} has no registered checks",
            cfg.suite
        )));
    }
    Ok(map_collect(Strategy::default(), selected, |check| {
        run_check(cfg, &check)
    }))
}
