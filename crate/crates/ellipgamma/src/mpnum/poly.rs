//! Integer polynomials and complex root extraction.

use super::{guard_bits, BigComplex, MIN_PREC};
use crate::error::{Error, Result};
use rug::{Float, Integer, Rational};

/// Dense integer polynomial, coefficients lowest degree first.
///
/// The zero polynomial is the empty coefficient list; otherwise the leading
/// coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<Integer>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().map_or(false, |c| *c == 0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Integer {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| *c == 1)
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * i as u32)
                .collect(),
        )
    }

    /// gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> Integer {
        let mut g = Integer::new();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Max |coefficient| as a float; the height used in residual bounds.
    pub fn height(&self, prec: u32) -> Float {
        let mut h = Float::new(prec.max(MIN_PREC));
        for c in &self.coeffs {
            let a = Float::with_val(prec.max(MIN_PREC), c.clone().abs());
            if a > h {
                h = a;
            }
        }
        h
    }

    /// Horner evaluation at a complex point.
    pub fn eval_complex(&self, z: &BigComplex) -> BigComplex {
        let prec = z.prec();
        let mut acc = BigComplex::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z);
            acc = acc.add(&BigComplex::new(
                Float::with_val(prec, c),
                Float::new(prec),
            ));
        }
        acc
    }

    pub fn eval_rational(&self, q: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= q;
            acc += Rational::from(c);
        }
        acc
    }
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if *c < 0 { "-" } else { "+" })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            let a = c.clone().abs();
            match i {
                0 => write!(f, "{}", a)?,
                _ => {
                    if a != 1 {
                        write!(f, "{}*", a)?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", i)?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// All complex roots by Aberth-Ehrlich iteration from perturbed circle
/// starts, then Newton polishing. Intended for the small degrees that occur
/// here (<= 7); no exact isolation is attempted.
pub fn all_roots(p: &IntPolynomial, prec: u32) -> Result<Vec<BigComplex>> {
    let n = p.degree();
    if n == 0 || p.is_zero() {
        return Err(Error::RootFinding("constant polynomial".into()));
    }
    let wprec = prec.max(MIN_PREC) + guard_bits(prec) + 32;
    let deriv = p.derivative();

    // Cauchy bound 1 + max |a_i / a_n| for the start radius.
    let lead = Float::with_val(wprec, p.leading()).abs();
    let mut radius = Float::with_val(wprec, 0);
    for c in &p.coeffs()[..n] {
        let r = Float::with_val(wprec, c).abs() / &lead;
        if r > radius {
            radius = r;
        }
    }
    radius += 1u32;

    // Perturbed equi-angular starts; the offset breaks the symmetry of
    // binomials like x^n - c.
    let mut roots: Vec<BigComplex> = (0..n)
        .map(|i| {
            let angle = std::f64::consts::TAU * (i as f64 + 0.2654) / n as f64 + 0.41;
            let dir = BigComplex::from_f64(wprec, angle.cos(), angle.sin());
            dir.mul_real(&radius)
        })
        .collect();

    let tol_exp = -(wprec as i32) + 8;
    let max_iter = 60 + 12 * wprec as usize / 32;
    let mut converged = false;
    for _ in 0..max_iter {
        let mut done = true;
        for i in 0..n {
            let pv = p.eval_complex(&roots[i]);
            let dv = deriv.eval_complex(&roots[i]);
            if dv.is_zero() {
                continue;
            }
            let newton = pv.div(&dv);
            let mut s = BigComplex::zero(wprec);
            for j in 0..n {
                if j != i {
                    let d = roots[i].sub(&roots[j]);
                    if d.is_zero() {
                        continue;
                    }
                    s = s.add(&d.recip());
                }
            }
            let denom = BigComplex::one(wprec).sub(&newton.mul(&s));
            let w = if denom.is_zero() { newton } else { newton.div(&denom) };
            let step_exp = w.mag_exp();
            let scale_exp = roots[i].mag_exp().max(0);
            roots[i] = roots[i].sub(&w);
            if step_exp > scale_exp + tol_exp {
                done = false;
            }
        }
        if done {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::RootFinding(format!(
            "Aberth iteration stalled at precision {}",
            wprec
        )));
    }

    // Newton polish at full working precision.
    for r in roots.iter_mut() {
        for _ in 0..4 {
            let pv = p.eval_complex(r);
            let dv = deriv.eval_complex(r);
            if dv.is_zero() {
                break;
            }
            *r = r.sub(&pv.div(&dv));
        }
    }
    Ok(roots)
}

/// The root of `p` in the (open) upper half-plane.
///
/// Callers assert that `p` is irreducible with signature (n-2, 1), so the
/// root is unique; under caller error the root of maximal imaginary part is
/// returned deterministically.
pub fn upper_root(p: &IntPolynomial, prec: u32) -> Result<BigComplex> {
    let prec = prec.max(MIN_PREC);
    let roots = all_roots(p, prec)?;
    let threshold = Float::with_val(prec, 2).pow((-(prec as i32) / 2) as i32);
    let mut best: Option<BigComplex> = None;
    for r in roots {
        let scale = (Float::with_val(prec, 1) + r.abs()) * &threshold;
        if *r.im() > scale {
            best = match best {
                Some(b) if *b.im() >= *r.im() => Some(b),
                _ => Some(r),
            };
        }
    }
    let root = best.ok_or(Error::NoUpperRoot)?;
    // residual certificate: |P(root)| <= 2^(16-prec) * height(P)
    let res = p.eval_complex(&root).abs();
    let bound = p.height(prec) * Float::with_val(prec, 2).pow(-(prec as i32) + 16);
    if res > bound {
        return Err(Error::RootFinding(format!(
            "residual {:e} above certificate bound {:e}",
            res.to_f64(),
            bound.to_f64()
        )));
    }
    Ok(root.with_prec(prec))
}

use rug::ops::Pow;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpnum::pow10;

    #[test]
    fn display_round_trip_reads_naturally() {
        let p = IntPolynomial::from_i64(&[1, -3, -1, -6, 1]);
        assert_eq!(p.to_string(), "x^4 - 6*x^3 - x^2 - 3*x + 1");
    }

    #[test]
    fn upper_root_of_x2_plus_1_is_i() {
        let p = IntPolynomial::from_i64(&[1, 0, 1]);
        let r = upper_root(&p, 128).unwrap();
        let i = BigComplex::from_f64(128, 0.0, 1.0);
        assert!(r.sub(&i).abs() < pow10(128, -35));
    }

    #[test]
    fn upper_root_of_x3_minus_2_is_principal_rotation() {
        // 2^(1/3) * e^(2 pi i / 3)
        let prec = 256;
        let p = IntPolynomial::from_i64(&[-2, 0, 0, 1]);
        let r = upper_root(&p, prec).unwrap();
        let third = Rational::from((1, 3));
        let rot = crate::mpnum::e2pi_rational(&third, prec);
        let cbrt2 = Float::with_val(prec, 2).root(3);
        let want = rot.mul_real(&cbrt2);
        assert!(r.sub(&want).abs() < pow10(prec, -70));
    }

    #[test]
    fn upper_root_quartic_residual_certificate() {
        let prec = 350;
        let p = IntPolynomial::from_i64(&[1, -3, -1, -6, 1]);
        let r = upper_root(&p, prec).unwrap();
        let res = p.eval_complex(&r).abs();
        let bound = p.height(prec) * Float::with_val(prec, 2).pow(-(prec as i32) + 16);
        assert!(res <= bound);
        assert!(r.im().is_sign_positive());
    }

    #[test]
    fn all_real_roots_is_an_error() {
        let p = IntPolynomial::from_i64(&[-2, 0, 1]); // x^2 - 2
        assert!(matches!(upper_root(&p, 128), Err(Error::NoUpperRoot)));
    }

    #[test]
    fn newton_refinement_converges_quadratically() {
        // Perturb the converged root and watch the residual collapse: each
        // Newton step should at least square the (normalized) residual.
        let prec = 400u32;
        let p = IntPolynomial::from_i64(&[1, -3, -1, -6, 1]);
        let deriv = p.derivative();
        let root = upper_root(&p, prec).unwrap();
        let mut z = root.add(&BigComplex::from_f64(prec, 1e-6, -1e-6));
        let mut residuals = Vec::new();
        for _ in 0..4 {
            let pv = p.eval_complex(&z);
            residuals.push(pv.abs().to_f64().log2());
            z = z.sub(&pv.div(&deriv.eval_complex(&z)));
        }
        // log-residuals: successive drops should (at least) double, up to
        // the precision floor.
        for w in residuals.windows(2) {
            if w[1] > -(prec as f64) + 60.0 {
                assert!(
                    w[1] < 1.8 * w[0] + 4.0,
                    "not quadratic: {:?}",
                    residuals
                );
            }
        }
    }
}
