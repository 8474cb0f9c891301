//! Scalars of the two computation fields.
//!
//! Every identity in this crate is checked either exactly over the
//! rationals or numerically over the complex doubles. A [`Scalar`] carries
//! its field in the value itself, so a whole computation is uniformly
//! EXACT or uniformly FLOAT; mixing the two fields in one expression is a
//! programming error and panics.
//!
//! Hyperbolic quantities are always handled through exponential
//! coordinates: a rapidity u enters as w = e^u, so that
//! sinh(u) = (w - 1/w)/2 stays inside the field. With w, q rational every
//! sinh of an integer combination of rapidities and gamma (q = e^{-gamma})
//! is again rational, which is what makes EXACT verification possible.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Computation field selector.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// Arbitrary-precision rationals; comparisons are literal equality.
    Exact,
    /// Complex double floats; comparisons use a relative tolerance.
    Float,
}

impl Mode {
    /// The integer `k` as a scalar of this field.
    pub fn int(self, k: i64) -> Scalar {
        match self {
            Mode::Exact => Scalar::Exact(BigRational::from_integer(BigInt::from(k))),
            Mode::Float => Scalar::Float(Complex64::new(k as f64, 0.0)),
        }
    }

    /// The fraction `num/den` as a scalar of this field.
    pub fn ratio(self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        match self {
            Mode::Exact => Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den))),
            Mode::Float => Scalar::Float(Complex64::new(num as f64 / den as f64, 0.0)),
        }
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn half(self) -> Scalar {
        self.ratio(1, 2)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => write!(f, "exact"),
            Mode::Float => write!(f, "float"),
        }
    }
}

/// A field element: an exact rational or a complex double.
#[derive(Clone, PartialEq, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Float(Complex64),
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    pub fn complex(re: f64, im: f64) -> Scalar {
        Scalar::Float(Complex64::new(re, im))
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar::Exact(r)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_one(),
            Scalar::Float(z) => z.re == 1.0 && z.im == 0.0,
        }
    }

    /// The underlying rational, when in the exact field.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn checked_inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Exact(r) => Scalar::Exact(r.recip()),
            Scalar::Float(z) => Scalar::Float(z.inv()),
        })
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        self.checked_inv().expect("inverse of zero scalar")
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn pow(&self, exp: i64) -> Scalar {
        if exp == 0 {
            return self.mode().one();
        }
        let base = if exp < 0 { self.inv() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = self.mode().one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// |self| as a double (rationals are converted; overflow gives inf).
    pub fn magnitude(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.abs().to_f64().unwrap_or(f64::INFINITY),
            Scalar::Float(z) => z.norm(),
        }
    }

    /// Relative agreement: exact equality over Q, and
    /// |a - b| <= tol * max(1, |a|, |b|) over C.
    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Float(a), Scalar::Float(b)) => {
                let scale = 1f64.max(a.norm()).max(b.norm());
                (a - b).norm() <= tol * scale
            }
            _ => false,
        }
    }

    /// Residual |a - b| / max(1, |a|, |b|) as a double; zero for exact
    /// equality. This is the number written into report lines.
    pub fn residual(&self, other: &Scalar) -> f64 {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                if a == b {
                    0.0
                } else {
                    let diff = Scalar::Exact(a - b).magnitude();
                    let scale = 1f64.max(self.magnitude()).max(other.magnitude());
                    diff / scale
                }
            }
            (Scalar::Float(a), Scalar::Float(b)) => {
                let scale = 1f64.max(a.norm()).max(b.norm());
                (a - b).norm() / scale
            }
            _ => f64::INFINITY,
        }
    }

    /// Lossy conversion into the FLOAT field (identity on floats).
    pub fn to_float(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Float(Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)),
            Scalar::Float(z) => Scalar::Float(*z),
        }
    }

    pub fn as_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(r) => Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
            Scalar::Float(z) => *z,
        }
    }

    fn same_mode(&self, other: &Scalar, op: &str) {
        if self.mode() != other.mode() {
            panic!("mixed exact/float scalars in {op}");
        }
    }
}

/// sinh of a rapidity given through its exponential: w = e^u maps to
/// (w - 1/w)/2 = sinh(u). Panics on w = 0.
pub fn sinh_from_exp(w: &Scalar) -> Scalar {
    &(w - &w.inv()) * &w.mode().half()
}

/// cosh companion of [`sinh_from_exp`].
pub fn cosh_from_exp(w: &Scalar) -> Scalar {
    &(w + &w.inv()) * &w.mode().half()
}

macro_rules! scalar_binop {
    ($trait:ident, $fn:ident, $op:tt) => {
        impl<'a, 'b> $trait<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $fn(self, rhs: &'b Scalar) -> Scalar {
                self.same_mode(rhs, stringify!($fn));
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a $op b),
                    _ => unreachable!(),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $fn(self, rhs: Scalar) -> Scalar {
                (&self).$fn(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $fn(self, rhs: &'a Scalar) -> Scalar {
                (&self).$fn(rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero scalar");
        self.same_mode(rhs, "div");
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a / b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a / b),
            _ => unreachable!(),
        }
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self).div(&rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(z) => Scalar::Float(-z),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(z) => {
                if z.im == 0.0 {
                    write!(f, "{}", z.re)
                } else {
                    write!(f, "{}{:+}i", z.re, z.im)
                }
            }
        }
    }
}

/// Sum of an iterator of scalars, with an explicit mode for emptiness.
pub fn sum(mode: Mode, it: impl IntoIterator<Item = Scalar>) -> Scalar {
    it.into_iter().fold(mode.zero(), |acc, s| &acc + &s)
}

/// Product of an iterator of scalars, with an explicit mode for emptiness.
pub fn product(mode: Mode, it: impl IntoIterator<Item = Scalar>) -> Scalar {
    it.into_iter().fold(mode.one(), |acc, s| &acc * &s)
}

/// A random positive rational num/den with both parts in 1..=bound.
pub fn random_rational(rng: &mut impl Rng, bound: i64) -> Scalar {
    let num = rng.gen_range(1..=bound);
    let den = rng.gen_range(1..=bound);
    Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// A random positive real double in [lo, hi) as a FLOAT scalar.
pub fn random_real(rng: &mut impl Rng, lo: f64, hi: f64) -> Scalar {
    Scalar::Float(Complex64::new(rng.gen_range(lo..hi), 0.0))
}

/// Draws from `sample` until `admissible` accepts, up to `cap` attempts.
pub fn rejection_sample<T>(
    cap: usize,
    mut sample: impl FnMut() -> T,
    admissible: impl Fn(&T) -> bool,
    what: &str,
) -> crate::error::Result<T> {
    for _ in 0..cap {
        let cand = sample();
        if admissible(&cand) {
            return Ok(cand);
        }
    }
    Err(crate::error::Error::Resample(format!(
        "no admissible {what} after {cap} draws"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_handles_negative_exponents() {
        let x = Mode::Exact.ratio(2, 3);
        assert_eq!(x.pow(3), Mode::Exact.ratio(8, 27));
        assert_eq!(x.pow(-2), Mode::Exact.ratio(9, 4));
        assert_eq!(x.pow(0), Mode::Exact.one());
    }

    #[test]
    fn sinh_from_exp_matches_library_sinh() {
        let u = 0.37f64;
        let w = Scalar::complex(u.exp(), 0.0);
        let s = sinh_from_exp(&w);
        assert!((s.as_complex().re - u.sinh()).abs() < 1e-14);
    }

    #[test]
    fn approx_eq_is_relative() {
        let a = Scalar::complex(1e8, 0.0);
        let b = Scalar::complex(1e8 + 1.0, 0.0);
        assert!(a.approx_eq(&b, 1e-7));
        assert!(!a.approx_eq(&b, 1e-9));
    }

    #[test]
    fn exact_residual_is_zero_only_on_equality() {
        let a = Mode::Exact.ratio(1, 3);
        let b = Mode::Exact.ratio(1, 3);
        let c = Mode::Exact.ratio(1, 4);
        assert_eq!(a.residual(&b), 0.0);
        assert!(a.residual(&c) > 0.0);
    }

    #[test]
    #[should_panic(expected = "mixed exact/float")]
    fn mixing_fields_panics() {
        let _ = &Mode::Exact.one() + &Mode::Float.one();
    }
}
