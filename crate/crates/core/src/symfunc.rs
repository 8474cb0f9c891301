//! Partitions and symmetric functions: the Schur polynomial along its
//! two classical routes, and the Miwa change of variables that connects
//! alphabets to hierarchy times.
//!
//! A partition lambda = (lambda_1 >= lambda_2 >= ... >= 0) indexes
//! everything downstream. For an alphabet x = (x_1, ..., x_N) the Weyl
//! formula evaluates
//!
//! ```text
//!        s_lambda(x) = det( x_j^(lambda_i + N - i) ) / Delta(x),
//! ```
//!
//! a quotient of alternants, valid whenever the x_j are pairwise
//! distinct. The Jacobi-Trudi formula instead works in hierarchy times
//! t = (t_1, t_2, ...):
//!
//! ```text
//!        s_lambda[t] = det( h_(lambda_i - i + j) )_(1 <= i,j <= l),
//! ```
//!
//! where the complete homogeneous functions h_n[t] are defined by
//! exp(sum t_n z^n) = sum h_n z^n, computed here through the recurrence
//!
//! ```text
//!        n h_n = sum_(m=1..n) m t_m h_(n-m),       h_0 = 1.
//! ```
//!
//! The two routes meet through the Miwa map t_n = (1/n) sum_k x_k^n
//! (or the reflected variant t_n = -(1/n) sum_k y_k^(-n), which plays
//! the role of the second time family in two-sided hierarchies). Both
//! evaluations are kept callable on their own so that identities can be
//! checked across routes; [`schur_eval`] dispatches to the alternant
//! quotient when the alphabet is generic and falls back to Jacobi-Trudi
//! when entries collide (for instance the all-ones alphabets used in
//! plane-partition counts, where the Weyl quotient degenerates to 0/0).

use crate::error::{Error, Result};
use crate::matrix::{pairwise_distinct, vandermonde, Matrix};
use crate::scalar::{Mode, Scalar};

/// Integer partition with weakly decreasing parts; trailing zeros are
/// trimmed on construction, so the empty partition is `Partition(vec![])`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Partition {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must weakly decrease: {parts:?}"
        );
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The i-th part (0-indexed), zero beyond the last nonzero part.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Weight |lambda| = sum of parts.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Conjugate partition: lambda'_j = #{ i : lambda_i >= j }.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|j| self.0.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition::new(parts)
    }

    pub fn fits_in_box(&self, rows: usize, width: usize) -> bool {
        self.len() <= rows && self.part(0) <= width
    }

    /// Complement inside the rows x width box:
    /// (lambda^c)_i = width - lambda_(rows + 1 - i).
    pub fn complement_in_box(&self, rows: usize, width: usize) -> Partition {
        assert!(self.fits_in_box(rows, width), "partition exceeds the box");
        let parts = (0..rows).map(|i| width - self.part(rows - 1 - i)).collect();
        Partition::new(parts)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions with at most `rows` parts, each at most `width`,
/// in a fixed deterministic order. There are C(rows + width, rows)
/// of them.
pub fn partitions_in_box(rows: usize, width: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn recurse(rows: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        out.push(Partition::new(current.clone()));
        if current.len() == rows {
            return;
        }
        for p in (1..=max_part).rev() {
            current.push(p);
            recurse(rows, p, current, out);
            current.pop();
        }
    }
    recurse(rows, width, &mut current, &mut out);
    out.sort();
    out
}

/// Which power sums feed the Miwa map.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MiwaSign {
    /// t_n = (1/n) sum_k x_k^n
    Plus,
    /// t_n = -(1/n) sum_k x_k^(-n)
    MinusInverse,
}

/// Hierarchy times (t_1, ..., t_n_max), 1-indexed through [`TimeVector::t`].
#[derive(Clone, Debug)]
pub struct TimeVector {
    mode: Mode,
    t: Vec<Scalar>,
}

impl TimeVector {
    pub fn new(mode: Mode, t: Vec<Scalar>) -> TimeVector {
        TimeVector { mode, t }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n_max(&self) -> usize {
        self.t.len()
    }

    pub fn t(&self, n: usize) -> &Scalar {
        assert!(n >= 1 && n <= self.t.len(), "time index {n} out of range");
        &self.t[n - 1]
    }

    /// The sign-flipped times (-t_1, -t_2, ...).
    pub fn negated(&self) -> TimeVector {
        TimeVector {
            mode: self.mode,
            t: self.t.iter().map(|v| -v.clone()).collect(),
        }
    }
}

/// Miwa map of an alphabet into times t_1..t_n_max.
pub fn miwa_times(xs: &[Scalar], n_max: usize, sign: MiwaSign) -> Result<TimeVector> {
    let mode = xs.first().map(Scalar::mode).unwrap_or(Mode::Exact);
    let mut t = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut acc = mode.zero();
        for x in xs {
            let term = match sign {
                MiwaSign::Plus => x.pow(n as i64),
                MiwaSign::MinusInverse => {
                    if x.is_zero() {
                        return Err(Error::SingularDenominator(
                            "reflected Miwa map needs invertible alphabet entries".into(),
                        ));
                    }
                    x.pow(-(n as i64))
                }
            };
            acc += &term;
        }
        let coeff = match sign {
            MiwaSign::Plus => mode.ratio(1, n as i64),
            MiwaSign::MinusInverse => mode.ratio(-1, n as i64),
        };
        t.push(&coeff * &acc);
    }
    Ok(TimeVector::new(mode, t))
}

/// Table h_0, h_1, ..., h_up_to of complete homogeneous functions of the
/// times, by the recurrence n h_n = sum_(m=1..n) m t_m h_(n-m).
pub fn complete_h_table(times: &TimeVector, up_to: usize) -> Result<Vec<Scalar>> {
    if times.n_max() < up_to {
        return Err(Error::Truncation(format!(
            "h_{} needs times through t_{}, only {} given",
            up_to,
            up_to,
            times.n_max()
        )));
    }
    let mode = times.mode();
    let mut h = Vec::with_capacity(up_to + 1);
    h.push(mode.one());
    for n in 1..=up_to {
        let mut acc = mode.zero();
        for m in 1..=n {
            let weighted = &mode.int(m as i64) * times.t(m);
            acc += &(&weighted * &h[n - m]);
        }
        h.push(&acc / &mode.int(n as i64));
    }
    Ok(h)
}

/// Single h_n of the times.
pub fn complete_h(times: &TimeVector, n: usize) -> Result<Scalar> {
    Ok(complete_h_table(times, n)?.pop().unwrap())
}

/// Schur function via the Weyl alternant quotient
/// det(x_j^(lambda_i + N - i)) / Delta(x); requires a pairwise distinct
/// alphabet. Returns zero when lambda has more rows than the alphabet
/// has letters.
pub fn schur_weyl(lambda: &Partition, xs: &[Scalar]) -> Result<Scalar> {
    let n = xs.len();
    let mode = xs.first().map(Scalar::mode).unwrap_or(Mode::Exact);
    if lambda.len() > n {
        return Ok(mode.zero());
    }
    if n == 0 {
        return Ok(mode.one());
    }
    if !pairwise_distinct(xs) {
        return Err(Error::SingularDenominator(
            "alternant quotient needs a pairwise distinct alphabet".into(),
        ));
    }
    let alternant = Matrix::from_fn(n, n, |i, j| {
        xs[j].pow((lambda.part(i) + n - 1 - i) as i64)
    });
    Ok(&alternant.det()? / &vandermonde(xs))
}

/// Schur function via the Jacobi-Trudi minor det(h_(lambda_i - i + j)).
pub fn schur_jt(lambda: &Partition, times: &TimeVector) -> Result<Scalar> {
    let l = lambda.len();
    let mode = times.mode();
    if l == 0 {
        return Ok(mode.one());
    }
    let max_index = lambda.part(0) + l - 1;
    let h = complete_h_table(times, max_index)?;
    let m = Matrix::from_fn(l, l, |i, j| {
        let idx = lambda.part(i) as i64 - i as i64 + j as i64;
        if idx < 0 {
            mode.zero()
        } else {
            h[idx as usize].clone()
        }
    });
    m.det()
}

/// Schur polynomial of an alphabet: the alternant quotient when the
/// alphabet is pairwise distinct, otherwise Jacobi-Trudi applied to the
/// Miwa times (which has no denominator to degenerate).
pub fn schur_eval(lambda: &Partition, xs: &[Scalar]) -> Result<Scalar> {
    if pairwise_distinct(xs) {
        schur_weyl(lambda, xs)
    } else {
        let n_max = lambda.part(0) + lambda.len().max(1);
        let times = miwa_times(xs, n_max, MiwaSign::Plus)?;
        schur_jt(lambda, &times)
    }
}
