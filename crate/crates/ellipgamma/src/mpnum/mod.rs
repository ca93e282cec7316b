//! Arbitrary-precision real/complex substrate.
//!
//! [`BigComplex`] is the universal numeric carrier of the crate: a pair of
//! MPFR floats tagged with a working precision in bits. Precision travels
//! with each value; binary operations produce results at the minimum
//! precision of their operands and there is no global rounding state.

mod poly;

pub use poly::{upper_root, IntPolynomial};

use crate::error::{Error, Result};
use rug::float::Constant;
use rug::ops::{CompleteRound, Pow};
use rug::{Assign, Float, Integer, Rational};

/// Smallest working precision accepted anywhere, in bits.
pub const MIN_PREC: u32 = 64;

/// Extra bits every public operation adds internally.
pub fn guard_bits(prec: u32) -> u32 {
    32.max(prec / 10)
}

/// Bits needed for `digits` decimal digits.
pub fn digits_to_prec(digits: u32) -> u32 {
    let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 4;
    bits.max(MIN_PREC)
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec.max(MIN_PREC), Constant::Pi)
}

/// Complex number with explicit working precision.
///
/// Both parts always carry the same precision, at least [`MIN_PREC`].
#[derive(Debug, Clone, PartialEq)]
pub struct BigComplex {
    re: Float,
    im: Float,
}

impl BigComplex {
    pub fn zero(prec: u32) -> Self {
        let p = prec.max(MIN_PREC);
        BigComplex {
            re: Float::new(p),
            im: Float::new(p),
        }
    }

    pub fn one(prec: u32) -> Self {
        let p = prec.max(MIN_PREC);
        BigComplex {
            re: Float::with_val(p, 1),
            im: Float::new(p),
        }
    }

    pub fn new(re: Float, im: Float) -> Self {
        let p = re.prec().min(im.prec()).max(MIN_PREC);
        BigComplex {
            re: Float::with_val(p, re),
            im: Float::with_val(p, im),
        }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        let p = prec.max(MIN_PREC);
        BigComplex {
            re: Float::with_val(p, re),
            im: Float::with_val(p, im),
        }
    }

    pub fn from_real(re: Float) -> Self {
        let p = re.prec().max(MIN_PREC);
        BigComplex {
            re: Float::with_val(p, re),
            im: Float::new(p),
        }
    }

    pub fn from_rational(prec: u32, q: &Rational) -> Self {
        let p = prec.max(MIN_PREC);
        BigComplex {
            re: Float::with_val(p, q),
            im: Float::new(p),
        }
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn into_parts(self) -> (Float, Float) {
        (self.re, self.im)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().min(self.im.prec())
    }

    /// Round to a (usually lower) precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        let p = prec.max(MIN_PREC);
        BigComplex {
            re: Float::with_val(p, &self.re),
            im: Float::with_val(p, &self.im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: (-&self.im).complete(self.im.prec()),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let mut t = Float::with_val(p, &self.re * &self.re);
        t += Float::with_val(p, &self.im * &self.im);
        t
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.prec().min(rhs.prec());
        BigComplex {
            re: (&self.re + &rhs.re).complete(p),
            im: (&self.im + &rhs.im).complete(p),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.prec().min(rhs.prec());
        BigComplex {
            re: (&self.re - &rhs.re).complete(p),
            im: (&self.im - &rhs.im).complete(p),
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.prec();
        BigComplex {
            re: (-&self.re).complete(p),
            im: (-&self.im).complete(p),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.prec().min(rhs.prec());
        let mut re = Float::with_val(p, &self.re * &rhs.re);
        re -= Float::with_val(p, &self.im * &rhs.im);
        let mut im = Float::with_val(p, &self.re * &rhs.im);
        im += Float::with_val(p, &self.im * &rhs.re);
        BigComplex { re, im }
    }

    pub fn mul_real(&self, rhs: &Float) -> Self {
        let p = self.prec().min(rhs.prec());
        BigComplex {
            re: (&self.re * rhs).complete(p),
            im: (&self.im * rhs).complete(p),
        }
    }

    pub fn div_real(&self, rhs: &Float) -> Self {
        let p = self.prec().min(rhs.prec());
        BigComplex {
            re: (&self.re / rhs).complete(p),
            im: (&self.im / rhs).complete(p),
        }
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let n = self.norm_sqr();
        BigComplex {
            re: (&self.re / &n).complete(p),
            im: -Float::with_val(p, &self.im / &n),
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.recip())
    }

    /// Complex exponential.
    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        BigComplex {
            re: (&c * &m).complete(p),
            im: (&s * &m).complete(p),
        }
    }

    /// Principal branch logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        let re = self.norm_sqr().ln() / 2u32;
        let im = self.im.clone().atan2(&self.re);
        BigComplex {
            re: Float::with_val(p, re),
            im,
        }
    }

    /// Integer power by binary exponentiation; negative exponents invert.
    pub fn pow_i(&self, n: i64) -> Self {
        let p = self.prec();
        if n == 0 {
            return BigComplex::one(p);
        }
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = BigComplex::one(p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// In-place product `self = a * b` using caller-provided scratch.
    pub(crate) fn assign_mul(&mut self, a: &Self, b: &Self, t1: &mut Float, t2: &mut Float) {
        t1.assign(&a.re * &b.re);
        t2.assign(&a.im * &b.im);
        self.re.assign(&*t1 - &*t2);
        t1.assign(&a.re * &b.im);
        t2.assign(&a.im * &b.re);
        self.im.assign(&*t1 + &*t2);
    }

    pub(crate) fn assign_from(&mut self, a: &Self) {
        self.re.assign(&a.re);
        self.im.assign(&a.im);
    }

    pub(crate) fn add_assign_c(&mut self, a: &Self) {
        self.re += &a.re;
        self.im += &a.im;
    }

    /// Binary exponent of the larger component; a cheap magnitude proxy.
    pub(crate) fn mag_exp(&self) -> i32 {
        let e1 = if self.re.is_zero() {
            i32::MIN
        } else {
            self.re.get_exp().unwrap_or(i32::MIN)
        };
        let e2 = if self.im.is_zero() {
            i32::MIN
        } else {
            self.im.get_exp().unwrap_or(i32::MIN)
        };
        e1.max(e2)
    }

    /// Decimal string pair at `digits` significant digits.
    pub fn to_decimal_strings(&self, digits: usize) -> (String, String) {
        (
            float_to_decimal(&self.re, digits),
            float_to_decimal(&self.im, digits),
        )
    }
}

pub fn float_to_decimal(f: &Float, digits: usize) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let (sign, digits_str, exp) = f.to_sign_string_exp(10, Some(digits));
    let s = if sign { "-" } else { "" };
    format!("{}0.{}e{}", s, digits_str, exp.unwrap_or(0))
}

/// `exp(2 pi i x)` with relative error at most `2^(8 - prec)`.
///
/// Fails with [`Error::Overflow`] when `2 pi |Im x|` exceeds the exponent
/// range of the underlying floats.
pub fn e2pi(x: &BigComplex) -> Result<BigComplex> {
    let prec = x.prec();
    let wprec = prec + guard_bits(prec);
    // e^t overflows MPFR near t = 2^62 * ln 2; refuse well before that.
    if let Some(e) = x.im().get_exp() {
        if e > 60 {
            let two_pi_im = x.im().to_f64().abs() * std::f64::consts::TAU;
            if !two_pi_im.is_finite() || two_pi_im > 1e18 {
                return Err(Error::Overflow);
            }
        }
    }
    let two_pi = Float::with_val(wprec, Constant::Pi) * 2u32;
    let m = (-(x.im() * &two_pi).complete(wprec)).exp();
    let angle = (x.re() * &two_pi).complete(wprec);
    let (s, c) = angle.sin_cos(Float::new(wprec));
    let v = BigComplex::new((&c * &m).complete(wprec), (&s * &m).complete(wprec));
    Ok(v.with_prec(prec))
}

/// `exp(2 pi i a/b)` for an exact rational; reduces the argument mod 1 first
/// so roots of unity come out clean.
pub fn e2pi_rational(q: &Rational, prec: u32) -> BigComplex {
    let p = prec.max(MIN_PREC);
    let wprec = p + guard_bits(p);
    let mut frac = q.clone();
    let floor = frac.clone().floor().numer().clone();
    frac -= Rational::from(floor);
    let two_pi = Float::with_val(wprec, Constant::Pi) * 2u32;
    let angle = Float::with_val(wprec, &frac) * &two_pi;
    let (s, c) = angle.sin_cos(Float::new(wprec));
    BigComplex::new(c, s).with_prec(p)
}

/// Round a float to the nearest integer.
pub fn round_to_integer(f: &Float) -> Integer {
    let r = f.clone().round();
    r.to_integer().unwrap_or_default()
}

/// `10^(-k)` as a float at precision `prec`.
pub fn pow10(prec: u32, k: i32) -> Float {
    Float::with_val(prec, 10).pow(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn close(a: &BigComplex, b: &BigComplex, tol: &Float) -> bool {
        a.sub(b).abs() < *tol
    }

    #[test]
    fn e2pi_identity_and_quarter_turn() {
        let prec = 192;
        let one = e2pi(&BigComplex::zero(prec)).unwrap();
        assert!(close(&one, &BigComplex::one(prec), &pow10(prec, -50)));

        let q = Rational::from((1, 4));
        let i = e2pi(&BigComplex::from_rational(prec, &q)).unwrap();
        assert!(close(&i, &BigComplex::from_f64(prec, 0.0, 1.0), &pow10(prec, -50)));
        // exact-rational path gives i on the nose
        let i2 = e2pi_rational(&q, prec);
        assert!(close(&i2, &BigComplex::from_f64(prec, 0.0, 1.0), &pow10(prec, -55)));
    }

    /// Term-by-term Taylor oracle for exp at twice the precision.
    fn exp_taylor(z: &BigComplex, prec: u32) -> BigComplex {
        let wprec = 2 * prec;
        let zz = z.with_prec(wprec);
        let mut term = BigComplex::one(wprec);
        let mut sum = BigComplex::one(wprec);
        for n in 1..10_000u32 {
            term = term.mul(&zz);
            term = term.div_real(&Float::with_val(wprec, n));
            sum = sum.add(&term);
            if term.mag_exp() < -(wprec as i32) - 8 {
                break;
            }
        }
        sum
    }

    #[test]
    fn e2pi_matches_taylor_oracle() {
        let prec = 256;
        let x = BigComplex::from_f64(prec, 0.123, 0.456);
        let got = e2pi(&x).unwrap();
        let two_pi_i_x = {
            let tp = pi(2 * prec) * 2u32;
            let xi = x.with_prec(2 * prec);
            BigComplex::new(
                -Float::with_val(2 * prec, xi.im() * &tp),
                (xi.re() * &tp).complete(2 * prec),
            )
        };
        let want = exp_taylor(&two_pi_i_x, prec);
        let rel = got.sub(&want.with_prec(prec)).abs() / want.abs();
        let bound = Float::with_val(prec, 2).pow(-(prec as i32) + 8);
        assert!(rel < bound, "rel err {:?} vs bound {:?}", rel, bound);
    }

    #[test]
    fn e2pi_periodicity_and_inverse() {
        let prec = 200;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let bound = Float::with_val(prec, 2).pow(-(prec as i32) + 10);
        for _ in 0..20 {
            let x = BigComplex::from_f64(
                prec,
                rng.gen_range(-10.0..10.0),
                rng.gen_range(-10.0..10.0),
            );
            let xp1 = x.add(&BigComplex::one(prec));
            let a = e2pi(&x).unwrap();
            let b = e2pi(&xp1).unwrap();
            let rel = a.sub(&b).abs() / a.abs();
            assert!(rel < bound);

            let c = e2pi(&x.neg()).unwrap();
            let prod = a.mul(&c);
            let dev = prod.sub(&BigComplex::one(prec)).abs();
            assert!(dev < bound);
        }
    }

    #[test]
    fn e2pi_overflow_flag() {
        let x = BigComplex::from_f64(128, 0.0, 1e19);
        assert!(matches!(e2pi(&x), Err(Error::Overflow)));
    }

    #[test]
    fn precision_propagates_as_minimum() {
        let a = BigComplex::from_f64(200, 1.5, 0.5);
        let b = BigComplex::from_f64(100, 2.5, -0.5);
        assert_eq!(a.mul(&b).prec(), 100);
        assert_eq!(a.add(&b).prec(), 100);
        // constructors clamp below the floor
        assert_eq!(BigComplex::from_f64(10, 1.0, 1.0).prec(), MIN_PREC);
    }

    #[test]
    fn pow_i_matches_repeated_multiplication() {
        let prec = 160;
        let z = BigComplex::from_f64(prec, 0.7, -0.3);
        let mut acc = BigComplex::one(prec);
        for _ in 0..13 {
            acc = acc.mul(&z);
        }
        assert!(close(&z.pow_i(13), &acc, &pow10(prec, -40)));
        let inv = z.pow_i(-13);
        assert!(close(&inv.mul(&acc), &BigComplex::one(prec), &pow10(prec, -40)));
    }
}
