//! Crystal-point models: the rational R-matrix left over when q goes
//! to zero, the scalar-product determinant that holds for two FREE
//! rapidity families, and boxed Schur sums counted by plane partitions.
//!
//! Freezing q = e^(-gamma) to zero turns hyperbolic six-vertex weights
//! into rational functions. The surviving R-matrix is
//!
//! ```text
//!        ( f . . . )
//!        ( . 1 g . )         f(u-v) = u^2 / (u^2 - v^2),
//!        ( . g 0 . )         g(u-v) = u v / (u^2 - v^2),
//!        ( . . . f )
//! ```
//!
//! reached from the XXZ R-matrix of [`crate::bethe`] by rescaling with
//! b(u-v) and twisting both sides with diag(q^(1/2), 1, q, q^(1/2)):
//! the twisted matrix differs from the display by exactly O(q^2),
//! which [`crystal_limit_residual`] measures along exact rational
//! q-sequences.
//!
//! Models built on this R-matrix (the phase model, the TASEP, the
//! 4-vertex model) have scalar products S_n = <0| prod C(u_i) prod
//! B(v_i) |0> with a determinant evaluation needing no Bethe equations
//! at all:
//!
//! ```text
//!        S_n = (simple factor) prod_(i<j) [ u_i u_j / (u_i^2 - u_j^2) ]
//!                              [ v_j v_i / (v_j^2 - v_i^2) ]  det K,
//!
//!        K_ij = ( alpha(u_i) delta(v_j) (v_j/u_i)^(n-1)
//!               - delta(u_i) alpha(v_j) (u_i/v_j)^(n-1) )
//!               * u_i v_j / (u_i^2 - v_j^2),
//! ```
//!
//! where the vacuum functions alpha, delta are model input;
//! [`QZeroParams`] therefore takes them as caller-supplied closures,
//! and [`QZeroParams::cauchy`] installs the built-in choice
//! alpha(u) = u^(2N+3n-2), delta(u) = u^(-n), which collapses every
//! entry to the geometric kernel
//!
//! ```text
//!        K_ij = ( u_i^(2M) - v_j^(2M) ) / ( u_i^2 - v_j^2 ),
//!        M = N + n.
//! ```
//!
//! By Cauchy-Binet that determinant expands over n-subsets of the
//! monomials 1, x, ..., x^(M-1), which is precisely the boxed sum
//!
//! ```text
//!        sum_(lambda in (N^n)) s_lambda(u_1^2, ..., u_n^2)
//!                              s_lambda(v_1^(-2), ..., v_n^(-2))
//! ```
//!
//! of [`boxed_schur_sum`], up to the monomial
//! (prod u_i)^(n-1) (prod v_j)^(2N+n-1). At u = v = 1 the sum counts
//! plane partitions in an n x n x N box, cross-checked against the
//! brute-force enumeration of [`plane_partition_count`] and the
//! MacMahon product of [`macmahon_count`]. The same sum is one single
//! Schur function on the doubled alphabet,
//!
//! ```text
//!        s_((N^n))(u_1^2, ..., u_n^2, v_1^2, ..., v_n^2)
//!          = (prod_j v_j^(2N)) *
//!            sum_(lambda in (N^n)) s_lambda(u^2) s_lambda(v^(-2)),
//! ```
//!
//! which [`single_schur_form`] re-derives by monomial fitting instead
//! of trusting the complement identity behind it.

use crate::bethe::{r_matrix, ChainParams};
use crate::error::{Error, Result};
use crate::exec::{map_collect, Strategy};
use crate::fit::{fit_monomial, MonomialFit};
use crate::matrix::{pairwise_distinct, Matrix};
use crate::scalar::{sinh_from_exp, Mode, Scalar};
use crate::symfunc::{partitions_in_box, schur_eval, schur_weyl, Partition};
use num_traits::ToPrimitive;

/// Brute-force plane-partition enumeration refuses boxes with more
/// than this many cells.
pub const PLANE_PARTITION_CAP: usize = 64;

/// The 4x4 crystal-point R-matrix on basis (11, 12, 21, 22), with
/// f = u^2/(u^2 - v^2) and g = uv/(u^2 - v^2).
pub fn r_matrix_q0(u: &Scalar, v: &Scalar) -> Result<Matrix> {
    let den = &u.pow(2) - &v.pow(2);
    if den.is_zero() {
        return Err(Error::Pole("crystal weights have a pole at u^2 = v^2".into()));
    }
    let f = &u.pow(2) / &den;
    let g = &(u * v) / &den;
    let o = u.mode().zero();
    let one = u.mode().one();
    Ok(Matrix::new(
        4,
        4,
        vec![
            f.clone(),
            o.clone(),
            o.clone(),
            o.clone(),
            o.clone(),
            one,
            g.clone(),
            o.clone(),
            o.clone(),
            g,
            o.clone(),
            o.clone(),
            o.clone(),
            o.clone(),
            o.clone(),
            f,
        ],
    ))
}

/// Distance between the twisted, b-rescaled XXZ R-matrix and the
/// crystal R-matrix at the same points: with D = diag(rho, 1, rho^2,
/// rho) and q = rho^2,
///
/// ```text
///        D ( R_xxz(u, v) / b(u - v) ) D  =  R_q0(wu, wv) + O(q^2),
/// ```
///
/// where wu, wv are the exponentials e^u, e^v feeding the XXZ side and
/// simultaneously the free crystal rapidities. The twist leaves the
/// (2,2) unit entry exact, shrinks the frozen (3,3) entry to q^2, and
/// moves every other entry by a q^2 multiple, so the returned gap
/// divided by q^2 is a constant of the points alone.
pub fn crystal_limit_residual(wu: &Scalar, wv: &Scalar, rho: &Scalar) -> Result<f64> {
    let mode = wu.mode();
    let b = sinh_from_exp(&(wu / wv));
    if b.is_zero() {
        return Err(Error::Pole("b(u - v) vanishes at u = v".into()));
    }
    let chain = ChainParams::new(vec![mode.one()], rho.clone())?;
    let xxz = r_matrix(&chain, wu, wv);
    let target = r_matrix_q0(wu, wv)?;
    let d = [rho.clone(), mode.one(), rho.pow(2), rho.clone()];
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let twisted = &(&(&d[i] * &d[j]) * xxz.at(i, j)) / &b;
            worst = worst.max((&twisted - target.at(i, j)).magnitude());
        }
    }
    Ok(worst)
}

/// Closure type for the model-dependent vacuum eigenvalues alpha(u),
/// delta(u).
pub type Vacuum = Box<dyn Fn(&Scalar) -> Scalar + Send + Sync>;

/// Free-variable scalar-product data: rapidity lists u, v, the box
/// height N, and caller-injected vacuum functions. The determinant
/// formula needs no Bethe equations, so u and v are unconstrained
/// beyond the pole pattern: all entries nonzero, u_i^2 pairwise
/// distinct, v_j^2 pairwise distinct, u_i^2 never equal to v_j^2.
pub struct QZeroParams {
    box_height: usize,
    u: Vec<Scalar>,
    v: Vec<Scalar>,
    alpha: Vacuum,
    delta: Vacuum,
}

impl QZeroParams {
    pub fn new(
        box_height: usize,
        u: Vec<Scalar>,
        v: Vec<Scalar>,
        alpha: Vacuum,
        delta: Vacuum,
    ) -> Result<QZeroParams> {
        if u.is_empty() || u.len() != v.len() {
            return Err(Error::Dimension(
                "need equally many (and at least one) u and v rapidities".into(),
            ));
        }
        if u.iter().chain(v.iter()).any(Scalar::is_zero) {
            return Err(Error::Argument("rapidities must be nonzero".into()));
        }
        let us: Vec<Scalar> = u.iter().map(|w| w.pow(2)).collect();
        let vs: Vec<Scalar> = v.iter().map(|w| w.pow(2)).collect();
        if !pairwise_distinct(&us) || !pairwise_distinct(&vs) {
            return Err(Error::Argument(
                "squared rapidities must be pairwise distinct within each family".into(),
            ));
        }
        for x in &us {
            for y in &vs {
                if (x - y).is_zero() {
                    return Err(Error::Pole("kernel pole at u_i^2 = v_j^2".into()));
                }
            }
        }
        Ok(QZeroParams {
            box_height,
            u,
            v,
            alpha,
            delta,
        })
    }

    /// The built-in vacuum choice alpha(u) = u^(2N+3n-2),
    /// delta(u) = u^(-n), for which the kernel becomes the geometric
    /// sum K_ij = (u_i^(2M) - v_j^(2M)) / (u_i^2 - v_j^2), M = N + n.
    pub fn cauchy(box_height: usize, u: Vec<Scalar>, v: Vec<Scalar>) -> Result<QZeroParams> {
        let n = u.len() as i64;
        let a_exp = 2 * box_height as i64 + 3 * n - 2;
        QZeroParams::new(
            box_height,
            u,
            v,
            Box::new(move |w: &Scalar| w.pow(a_exp)),
            Box::new(move |w: &Scalar| w.pow(-n)),
        )
    }

    pub fn magnons(&self) -> usize {
        self.u.len()
    }

    pub fn box_height(&self) -> usize {
        self.box_height
    }

    pub fn mode(&self) -> Mode {
        self.u[0].mode()
    }

    pub fn u(&self) -> &[Scalar] {
        &self.u
    }

    pub fn v(&self) -> &[Scalar] {
        &self.v
    }

    pub fn alpha(&self, w: &Scalar) -> Scalar {
        (self.alpha)(w)
    }

    pub fn delta(&self, w: &Scalar) -> Scalar {
        (self.delta)(w)
    }
}

/// The free-variable determinant evaluation
///
/// ```text
///        prod_(i<j) [ u_i u_j / (u_i^2 - u_j^2) ]
///                   [ v_j v_i / (v_j^2 - v_i^2) ]  *  det K
/// ```
///
/// with the displayed kernel K built from the stored vacuum closures.
/// The unprinted "simple factor" is deliberately NOT included; relating
/// this value to [`boxed_schur_sum`] is done by monomial fitting in the
/// tests, never by a trusted closed form.
pub fn scalar_det_q0(p: &QZeroParams) -> Result<Scalar> {
    let n = p.magnons();
    let mode = p.mode();
    let e = n as i64 - 1;
    let mut pre = mode.one();
    for i in 0..n {
        for j in i + 1..n {
            pre = &pre * &(&(&p.u[i] * &p.u[j]) / &(&p.u[i].pow(2) - &p.u[j].pow(2)));
            pre = &pre * &(&(&p.v[j] * &p.v[i]) / &(&p.v[j].pow(2) - &p.v[i].pow(2)));
        }
    }
    let kernel = Matrix::from_fn(n, n, |i, j| {
        let ui = &p.u[i];
        let vj = &p.v[j];
        let plus = &(&p.alpha(ui) * &p.delta(vj)) * &(vj / ui).pow(e);
        let minus = &(&p.delta(ui) * &p.alpha(vj)) * &(ui / vj).pow(e);
        &(&(&plus - &minus) * &(ui * vj)) / &(&ui.pow(2) - &vj.pow(2))
    });
    Ok(&pre * &kernel.det()?)
}

/// The shapes lambda contained in an n x N rectangle, with term-level
/// access to the two-Schur products s_lambda(a) s_lambda(b).
pub struct BoxedExpansion {
    rows: usize,
    width: usize,
    shapes: Vec<Partition>,
}

impl BoxedExpansion {
    pub fn new(rows: usize, width: usize) -> BoxedExpansion {
        BoxedExpansion {
            rows,
            width,
            shapes: partitions_in_box(rows, width),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// binomial(rows + width, rows) shapes.
    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn shapes(&self) -> &[Partition] {
        &self.shapes
    }

    /// One summand s_lambda(a) s_lambda(b).
    pub fn term(&self, shape: &Partition, a: &[Scalar], b: &[Scalar]) -> Result<Scalar> {
        Ok(&schur_eval(shape, a)? * &schur_eval(shape, b)?)
    }

    /// The full sum over the box, one term per shape.
    pub fn sum(&self, strategy: Strategy, a: &[Scalar], b: &[Scalar]) -> Result<Scalar> {
        let mode = a.first().map(Scalar::mode).unwrap_or(Mode::Exact);
        let terms = map_collect(strategy, self.shapes.clone(), |shape| {
            self.term(&shape, a, b)
        });
        let mut acc = mode.zero();
        for t in terms {
            acc = &acc + &t?;
        }
        Ok(acc)
    }
}

/// sum over lambda contained in the n x N box of s_lambda(a) s_lambda(b).
/// Repeated letters in either alphabet are fine: evaluation falls back
/// from the alternant quotient to Jacobi-Trudi automatically.
pub fn boxed_schur_sum(n: usize, box_height: usize, a: &[Scalar], b: &[Scalar]) -> Result<Scalar> {
    boxed_schur_sum_with(Strategy::default(), n, box_height, a, b)
}

/// [`boxed_schur_sum`] with an explicit execution strategy.
pub fn boxed_schur_sum_with(
    strategy: Strategy,
    n: usize,
    box_height: usize,
    a: &[Scalar],
    b: &[Scalar],
) -> Result<Scalar> {
    if a.len() != n || b.len() != n {
        return Err(Error::Dimension(format!(
            "boxed sum over {n}-row shapes needs {n}-letter alphabets"
        )));
    }
    BoxedExpansion::new(n, box_height).sum(strategy, a, b)
}

/// Number of plane partitions in an a x b x c box: a x b arrays with
/// entries in 0..=c, weakly decreasing along rows and columns, counted
/// by brute-force column-by-column backtracking.
pub fn plane_partition_count(a: usize, b: usize, c: usize) -> Result<u64> {
    plane_partition_count_with(Strategy::default(), a, b, c)
}

/// [`plane_partition_count`] with an explicit execution strategy; the
/// enumeration splits across the possible first columns.
pub fn plane_partition_count_with(strategy: Strategy, a: usize, b: usize, c: usize) -> Result<u64> {
    if a * b * c > PLANE_PARTITION_CAP {
        return Err(Error::SizeCap(format!(
            "{a} x {b} x {c} box exceeds the {PLANE_PARTITION_CAP}-cell brute-force cap"
        )));
    }
    if a == 0 || b == 0 || c == 0 {
        return Ok(1);
    }
    let mut firsts: Vec<Vec<u32>> = Vec::new();
    let mut cur = Vec::with_capacity(a);
    collect_columns(a, c as u32, &mut cur, &mut firsts);
    let counts = map_collect(strategy, firsts, |col| count_completions(&col, b - 1));
    Ok(counts.into_iter().sum())
}

/// All weakly decreasing columns of the given height with entries
/// bounded by `max`.
fn collect_columns(height: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() == height {
        out.push(cur.clone());
        return;
    }
    let cap = cur.last().copied().unwrap_or(max);
    for val in 0..=cap {
        cur.push(val);
        collect_columns(height, max, cur, out);
        cur.pop();
    }
}

/// Completions of a partial plane partition whose rightmost placed
/// column is `prev`: each later column must stay weakly decreasing and
/// fit under `prev` entrywise.
fn count_completions(prev: &[u32], cols_left: usize) -> u64 {
    if cols_left == 0 {
        return 1;
    }
    let mut total = 0u64;
    let mut next = vec![0u32; prev.len()];
    fill_rows(prev, &mut next, 0, cols_left, &mut total);
    total
}

fn fill_rows(prev: &[u32], next: &mut Vec<u32>, row: usize, cols_left: usize, total: &mut u64) {
    if row == prev.len() {
        *total += count_completions(next, cols_left - 1);
        return;
    }
    let cap = if row == 0 {
        prev[0]
    } else {
        prev[row].min(next[row - 1])
    };
    for val in 0..=cap {
        next[row] = val;
        fill_rows(prev, next, row + 1, cols_left, total);
    }
}

/// MacMahon's box-product count of plane partitions,
/// prod_(i<=a, j<=b, k<=c) (i+j+k-1)/(i+j+k-2), evaluated in exact
/// rational arithmetic and returned as the integer it always is.
pub fn macmahon_count(a: usize, b: usize, c: usize) -> u64 {
    let mut acc = Mode::Exact.one();
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c {
                let s = (i + j + k) as i64;
                acc = &acc * &Mode::Exact.ratio(s - 1, s - 2);
            }
        }
    }
    let r = acc.as_rational().expect("exact product").clone();
    assert!(r.is_integer(), "MacMahon product must be an integer");
    r.to_integer().to_u64().expect("count fits in u64")
}

/// Evaluates the single-Schur route s_((N^n))(u_1^2, ..., u_n^2,
/// v_1^2, ..., v_n^2) and fits the monomial relating it to
/// boxed_schur_sum(n, N, u^2, v^(-2)). Returns the Schur value at the
/// given point together with the fit; the expected outcome, verified
/// by callers at independently drawn points, is the factor
/// prod_j v_j^(2N) with constant one.
pub fn single_schur_form(
    box_height: usize,
    u: &[Scalar],
    v: &[Scalar],
    tol: f64,
    seed: u64,
) -> Result<(Scalar, MonomialFit)> {
    let n = u.len();
    if n == 0 || v.len() != n {
        return Err(Error::Dimension(
            "need equally many (and at least one) u and v rapidities".into(),
        ));
    }
    let evaluate = move |point: &[Scalar]| -> Result<Scalar> {
        let (uu, vv) = point.split_at(n);
        let alphabet: Vec<Scalar> = uu.iter().chain(vv.iter()).map(|w| w.pow(2)).collect();
        let shape = Partition::new(vec![box_height; n]);
        let single = schur_weyl(&shape, &alphabet)?;
        let a2: Vec<Scalar> = uu.iter().map(|w| w.pow(2)).collect();
        let binv2: Vec<Scalar> = vv.iter().map(|w| w.pow(-2)).collect();
        let boxed = boxed_schur_sum(n, box_height, &a2, &binv2)?;
        if boxed.is_zero() {
            return Err(Error::Resample(
                "boxed Schur sum vanished at a fit point".into(),
            ));
        }
        Ok(&single / &boxed)
    };
    let base: Vec<Scalar> = u.iter().chain(v.iter()).cloned().collect();
    let fit = fit_monomial(&base, evaluate, tol, seed)?;
    let alphabet: Vec<Scalar> = base.iter().map(|w| w.pow(2)).collect();
    let value = schur_weyl(&Partition::new(vec![box_height; n]), &alphabet)?;
    Ok((value, fit))
}
