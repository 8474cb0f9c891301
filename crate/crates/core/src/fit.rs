//! Fits a pure monomial C * prod_i v_i^(e_i) to a black-box function.
//!
//! Several determinant identities hold up to a prefactor that is known
//! on structural grounds to be a monomial in the underlying exponential
//! coordinates times a constant. Rather than trust a closed form, the
//! checks here determine the prefactor numerically and then validate it
//! on held-out points: scale one coordinate at a time by an integer
//! factor f, read the exponent off the ratio F(scaled)/F(base) = f^e
//! (exactly in rational arithmetic, via a rounded logarithm in floating
//! point), then confirm the full ansatz on fresh points that mix
//! several scalings at once. A function that is not a monomial fails
//! validation rather than producing a silently wrong fit.

use crate::error::{Error, Result};
use crate::scalar::{product, Mode, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Scaling factors tried in order when an evaluation lands on a pole or
/// a zero of the function being fitted.
const FACTORS: [i64; 4] = [2, 3, 5, 7];

/// Exponent search bound for the exact ratio test.
const MAX_EXPONENT: i64 = 512;

#[derive(Clone, Debug)]
pub struct MonomialFit {
    pub constant: Scalar,
    pub exponents: Vec<i64>,
}

impl MonomialFit {
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.exponents.len());
        let mode = self.constant.mode();
        let factors = point
            .iter()
            .zip(&self.exponents)
            .map(|(v, &e)| v.pow(e));
        &self.constant * &product(mode, factors)
    }
}

/// Reads e out of ratio = f^e. Exact mode demands an exact power;
/// float mode rounds log|ratio| / log f and verifies the rounding.
fn exponent_from_ratio(ratio: &Scalar, f: i64, tol: f64) -> Result<i64> {
    let mode = ratio.mode();
    match mode {
        Mode::Exact => {
            let fs = mode.int(f);
            let mut up = mode.one();
            for e in 0..=MAX_EXPONENT {
                if ratio == &up {
                    return Ok(e);
                }
                if e > 0 && ratio == &up.clone().inv() {
                    return Ok(-e);
                }
                up = &up * &fs;
            }
            Err(Error::ModelViolation(format!(
                "ratio {ratio} is not an integer power of {f}"
            )))
        }
        Mode::Float => {
            let mag = ratio.magnitude();
            if !(mag.is_finite() && mag > 0.0) {
                return Err(Error::ModelViolation(
                    "scaling ratio is zero or non-finite".into(),
                ));
            }
            let e = (mag.ln() / (f as f64).ln()).round() as i64;
            let expected = mode.int(f).pow(e);
            if ratio.approx_eq(&expected, tol) {
                Ok(e)
            } else {
                Err(Error::ModelViolation(format!(
                    "ratio {ratio} is not close to {f}^{e}"
                )))
            }
        }
    }
}

/// Determines C and (e_1, ..., e_k) such that F = C prod v_i^(e_i),
/// assuming F has that form; errors with [`Error::ModelViolation`] when
/// held-out validation disagrees. `eval` may fail on unlucky points
/// (poles of intermediate expressions); such failures trigger a retry
/// with the next scaling factor.
pub fn fit_monomial<F>(base: &[Scalar], eval: F, tol: f64, seed: u64) -> Result<MonomialFit>
where
    F: Fn(&[Scalar]) -> Result<Scalar>,
{
    let k = base.len();
    assert!(k > 0, "monomial fit needs at least one variable");
    let mode = base[0].mode();
    let f0 = eval(base)?;
    if f0.is_zero() {
        return Err(Error::DegenerateRoot(
            "function vanishes at the base point; pick another base".into(),
        ));
    }

    let mut exponents = Vec::with_capacity(k);
    for i in 0..k {
        let mut found = None;
        let mut last_err = None;
        for &f in &FACTORS {
            let mut point = base.to_vec();
            point[i] = &point[i] * &mode.int(f);
            match eval(&point) {
                Ok(v) => {
                    let ratio = &v / &f0;
                    match exponent_from_ratio(&ratio, f, tol) {
                        Ok(e) => {
                            found = Some(e);
                            break;
                        }
                        Err(err) => last_err = Some(err),
                    }
                }
                Err(err) => last_err = Some(err),
            }
        }
        match found {
            Some(e) => exponents.push(e),
            None => {
                return Err(last_err.unwrap_or_else(|| {
                    Error::ModelViolation("exponent extraction failed".into())
                }))
            }
        }
    }

    let scale = product(
        mode,
        base.iter().zip(&exponents).map(|(v, &e)| v.pow(e)),
    );
    let constant = &f0 / &scale;
    let fit = MonomialFit { constant, exponents };

    // Held-out validation: k + 1 fresh points, each scaling every
    // coordinate by an independent small power, so the total number of
    // evaluations is at least 2k + 2.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut validated = 0usize;
    let mut attempts = 0usize;
    while validated < k + 1 {
        attempts += 1;
        if attempts > 8 * (k + 1) {
            return Err(Error::Resample(
                "could not find enough admissible validation points".into(),
            ));
        }
        let point: Vec<Scalar> = base
            .iter()
            .map(|v| {
                let f = FACTORS[rng.gen_range(0..FACTORS.len())];
                let e = rng.gen_range(-1i64..=2);
                v * &mode.int(f).pow(e)
            })
            .collect();
        let Ok(actual) = eval(&point) else {
            continue;
        };
        let predicted = fit.eval(&point);
        let ok = match mode {
            Mode::Exact => actual == predicted,
            Mode::Float => actual.approx_eq(&predicted, tol),
        };
        if !ok {
            return Err(Error::ModelViolation(format!(
                "monomial ansatz fails held-out validation: got {actual}, predicted {predicted}"
            )));
        }
        validated += 1;
    }
    Ok(fit)
}
