//! Exact number-field arithmetic and integer linear algebra.
//!
//! A [`NumberField`] is `Q[x]/(P)` for an integer polynomial `P`; elements
//! are rational coefficient vectors on the power basis. An integral basis
//! (default: the power basis) can be supplied for fields whose maximal order
//! is larger, e.g. bases with denominator 5; all ideal-theoretic
//! computations (HNF, different ideals, lambda/t-tilde read-offs) are taken
//! with respect to that basis.

pub mod cone;
pub mod ideal;
pub mod matrix;

pub use cone::{parallelepiped_points, parallelepiped_points_in_basis};
pub use ideal::{different_of_form, lambda_tilde, t_min, t_tilde, FractionalIdeal};
pub use matrix::{IntegerMatrix, RatMatrix};

use crate::error::{Error, Result};
use crate::mpnum::{BigComplex, IntPolynomial};
use rug::{Complete, Rational};

/// Element of a number field as power-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NfElement {
    coeffs: Vec<Rational>,
}

impl NfElement {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        NfElement { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        NfElement {
            coeffs: coeffs.iter().map(|&c| Rational::from(c)).collect(),
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.cmp0() == std::cmp::Ordering::Equal)
    }

    pub fn scale(&self, c: &Rational) -> NfElement {
        NfElement {
            coeffs: self.coeffs.iter().map(|x| (x * c).complete()).collect(),
        }
    }
}

/// Number field `Q[x]/(defining_poly)` with a chosen integral basis.
#[derive(Debug, Clone)]
pub struct NumberField {
    poly: IntPolynomial,
    degree: usize,
    basis: Vec<NfElement>,
    /// columns = power-basis coordinates of the integral basis
    basis_mat: RatMatrix,
    basis_inv: RatMatrix,
}

impl NumberField {
    /// Field with the power basis `1, z, ..., z^(n-1)` as integral basis.
    pub fn new(poly: IntPolynomial) -> Result<Self> {
        let n = poly.degree();
        if n == 0 {
            return Err(Error::Config("defining polynomial must be nonconstant".into()));
        }
        let basis: Vec<NfElement> = (0..n)
            .map(|i| {
                let mut c = vec![Rational::new(); n];
                c[i] = Rational::from(1);
                NfElement::new(c)
            })
            .collect();
        NumberField::with_basis(poly, basis)
    }

    /// Field with an explicit integral basis (power-basis coordinates).
    pub fn with_basis(poly: IntPolynomial, basis: Vec<NfElement>) -> Result<Self> {
        let n = poly.degree();
        if basis.len() != n || basis.iter().any(|b| b.coeffs.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "integral basis must be {} elements of length {}",
                n, n
            )));
        }
        let cols: Vec<Vec<Rational>> = basis.iter().map(|b| b.coeffs.clone()).collect();
        let basis_mat = RatMatrix::from_columns(&cols);
        let basis_inv = basis_mat.inverse().ok_or_else(|| {
            Error::Config("integral basis is linearly dependent".into())
        })?;
        Ok(NumberField {
            poly,
            degree: n,
            basis,
            basis_mat,
            basis_inv,
        })
    }

    pub fn defining_poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn integral_basis(&self) -> &[NfElement] {
        &self.basis
    }

    pub fn zero(&self) -> NfElement {
        NfElement::new(vec![Rational::new(); self.degree])
    }

    pub fn one(&self) -> NfElement {
        let mut c = vec![Rational::new(); self.degree];
        c[0] = Rational::from(1);
        NfElement::new(c)
    }

    /// `z`, the class of `x`.
    pub fn gen(&self) -> NfElement {
        let mut c = vec![Rational::new(); self.degree];
        if self.degree > 1 {
            c[1] = Rational::from(1);
        }
        NfElement::new(c)
    }

    pub fn add(&self, a: &NfElement, b: &NfElement) -> NfElement {
        NfElement::new(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| (x + y).complete())
                .collect(),
        )
    }

    pub fn sub(&self, a: &NfElement, b: &NfElement) -> NfElement {
        NfElement::new(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| (x - y).complete())
                .collect(),
        )
    }

    /// Product reduced modulo the defining polynomial.
    pub fn mul(&self, a: &NfElement, b: &NfElement) -> NfElement {
        let n = self.degree;
        let mut prod = vec![Rational::new(); 2 * n - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.cmp0() == std::cmp::Ordering::Equal {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                prod[i + j] += (x * y).complete();
            }
        }
        self.reduce(prod)
    }

    /// Reduce a coefficient list of any length mod the defining polynomial.
    fn reduce(&self, mut v: Vec<Rational>) -> NfElement {
        let n = self.degree;
        let lead = Rational::from(&self.poly.leading());
        for i in (n..v.len()).rev() {
            if v[i].cmp0() == std::cmp::Ordering::Equal {
                continue;
            }
            let f = (&v[i] / &lead).complete();
            for j in 0..n {
                let t = f.clone() * &Rational::from(&self.poly.coeff(j));
                v[i - n + j] -= t;
            }
            v[i] = Rational::new();
        }
        v.truncate(n);
        NfElement::new(v)
    }

    /// Inverse by the extended Euclidean algorithm in `Q[x]`.
    pub fn inv(&self, a: &NfElement) -> Result<NfElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // extended gcd of (defining_poly, a) over Q[x]
        let pcoeffs: Vec<Rational> = self
            .poly
            .coeffs()
            .iter()
            .map(|c| Rational::from(c))
            .collect();
        let mut r0 = pcoeffs;
        let mut r1 = a.coeffs.clone();
        trim(&mut r0);
        trim(&mut r1);
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::from(1)];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s_next = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s_next;
        }
        if r0.len() != 1 {
            // gcd nonconstant: a is a zero divisor (reducible defining poly)
            return Err(Error::DivisionByZero);
        }
        let g = r0[0].clone();
        let inv: Vec<Rational> = s0.iter().map(|c| (c / &g).complete()).collect();
        let mut c = inv;
        c.resize(self.degree, Rational::new());
        Ok(self.reduce(c))
    }

    pub fn div(&self, a: &NfElement, b: &NfElement) -> Result<NfElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &NfElement, e: u32) -> NfElement {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Coordinates with respect to the integral basis.
    pub fn coords_in_basis(&self, a: &NfElement) -> Vec<Rational> {
        self.basis_inv.mul_vec(&a.coeffs)
    }

    pub fn from_basis_coords(&self, coords: &[Rational]) -> NfElement {
        NfElement::new(self.basis_mat.mul_vec(coords))
    }

    /// Is `a` in the order spanned by the integral basis?
    pub fn is_integral(&self, a: &NfElement) -> bool {
        self.coords_in_basis(a).iter().all(|c| *c.denom() == 1)
    }

    /// Complex embedding: evaluate the power-basis expression at `root`.
    pub fn embed(&self, a: &NfElement, root: &BigComplex) -> BigComplex {
        let prec = root.prec();
        let mut acc = BigComplex::zero(prec);
        for c in a.coeffs.iter().rev() {
            acc = acc.mul(root);
            acc = acc.add(&BigComplex::from_rational(prec, c));
        }
        acc
    }

    /// Matrix of multiplication by `a` with respect to the integral basis.
    pub fn mul_matrix_in_basis(&self, a: &NfElement) -> RatMatrix {
        let cols: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|w| self.coords_in_basis(&self.mul(a, w)))
            .collect();
        RatMatrix::from_columns(&cols)
    }

    /// Field norm of `a` (determinant of multiplication by `a`).
    pub fn norm(&self, a: &NfElement) -> Rational {
        self.mul_matrix_in_basis(a).det()
    }
}

/// det(1, eta_1, ..., eta_{n-2}, x) with coordinate columns taken in the
/// integral basis; the linear form `a-tilde` of the cone construction.
pub fn det_form(field: &NumberField, units: &[NfElement], x: &NfElement) -> Result<Rational> {
    let n = field.degree();
    if units.len() != n - 2 {
        return Err(Error::DimensionMismatch(format!(
            "need {} units for a degree-{} field, got {}",
            n - 2,
            n,
            units.len()
        )));
    }
    let mut cols = Vec::with_capacity(n);
    cols.push(field.coords_in_basis(&field.one()));
    for u in units {
        cols.push(field.coords_in_basis(u));
    }
    cols.push(field.coords_in_basis(x));
    Ok(RatMatrix::from_columns(&cols).det())
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().map_or(false, |c| c.cmp0() == std::cmp::Ordering::Equal) {
        v.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += (x * y).complete();
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::new(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    let mut quot = vec![Rational::new(); a.len().saturating_sub(b.len() - 1)];
    let lead = b.last().unwrap();
    while rem.len() >= b.len() && !rem.is_empty() {
        let k = rem.len() - b.len();
        let f = (rem.last().unwrap() / lead).complete();
        quot[k] = f.clone();
        for (j, y) in b.iter().enumerate() {
            let t = (&f * y).complete();
            rem[k + j] -= t;
        }
        trim(&mut rem);
        if rem.len() >= b.len() && rem.len() + b.len() == a.len() + 1 {
            // no progress safeguard; cannot occur with exact arithmetic
            break;
        }
    }
    trim(&mut quot);
    (quot, rem)
}

/// Linear functional given by its values on the integral basis, applied to
/// an arbitrary element by Q-linearity.
pub fn apply_form(field: &NumberField, values: &[Rational], a: &NfElement) -> Rational {
    let coords = field.coords_in_basis(a);
    let mut acc = Rational::new();
    for (c, v) in coords.iter().zip(values) {
        acc += (c * v).complete();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gaussian() -> NumberField {
        NumberField::new(IntPolynomial::from_i64(&[1, 0, 1])).unwrap()
    }

    fn cubic_411() -> NumberField {
        // x^3 - x^2 + 5x - 2, discriminant -411
        NumberField::new(IntPolynomial::from_i64(&[-2, 5, -1, 1])).unwrap()
    }

    #[test]
    fn gaussian_squares_to_minus_one() {
        let k = gaussian();
        let z = k.gen();
        let z2 = k.mul(&z, &z);
        let mut minus_one = k.zero();
        minus_one.coeffs[0] = Rational::from(-1);
        assert_eq!(z2, minus_one);
        // inv(z) = -z
        let inv = k.inv(&z).unwrap();
        assert_eq!(inv, z.scale(&Rational::from(-1)));
    }

    #[test]
    fn cubic_unit_times_inverse_is_one() {
        let k = cubic_411();
        let eps = NfElement::from_i64(&[-1, 2, 1]); // z^2 + 2z - 1
        let inv = k.inv(&eps).unwrap();
        assert_eq!(k.mul(&eps, &inv), k.one());
        // oracle: independent extended-gcd certificate s*eps + t*P = 1,
        // checked by re-multiplying in plain Q[x] modulo nothing.
        let prod = poly_mul(&eps.coeffs, &inv.coeffs);
        // prod = 1 + m(x) * P(x) for some polynomial m
        let pcoeffs: Vec<Rational> = k
            .poly
            .coeffs()
            .iter()
            .map(|c| Rational::from(c))
            .collect();
        let mut diff = prod;
        diff[0] -= Rational::from(1);
        trim(&mut diff);
        let (_, rem) = poly_divmod(&diff, &pcoeffs);
        assert!(rem.is_empty(), "eps * inv(eps) != 1 mod P");
    }

    #[test]
    fn det_form_matches_paper_cubic_closed_form() {
        // In Q[x]/(x^3-x^2+5x-2) with eps = z^2+2z-1 the form is
        // beta_0 + beta_1 z + beta_2 z^2 -> 2 beta_2 - beta_1.
        let k = cubic_411();
        let eps = NfElement::from_i64(&[-1, 2, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let b: Vec<i64> = (0..3).map(|_| rng.gen_range(-50..50)).collect();
            let x = NfElement::from_i64(&b);
            let got = det_form(&k, std::slice::from_ref(&eps), &x).unwrap();
            let want = Rational::from(2 * b[2] - b[1]);
            assert_eq!(got, want);
        }
        // repeated columns vanish
        assert_eq!(
            det_form(&k, std::slice::from_ref(&eps), &k.one()).unwrap(),
            Rational::new()
        );
        assert_eq!(
            det_form(&k, std::slice::from_ref(&eps), &eps).unwrap(),
            Rational::new()
        );
    }

    #[test]
    fn det_form_is_linear_in_x() {
        let k = cubic_411();
        let eps = NfElement::from_i64(&[-1, 2, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let a = NfElement::from_i64(&[
                rng.gen_range(-9..9),
                rng.gen_range(-9..9),
                rng.gen_range(-9..9),
            ]);
            let b = NfElement::from_i64(&[
                rng.gen_range(-9..9),
                rng.gen_range(-9..9),
                rng.gen_range(-9..9),
            ]);
            let lam = Rational::from((rng.gen_range(-7i32..7), 3));
            let combo = k.add(&a.scale(&lam), &b);
            let u = std::slice::from_ref(&eps);
            let lhs = det_form(&k, u, &combo).unwrap();
            let rhs = det_form(&k, u, &a).unwrap() * &lam + det_form(&k, u, &b).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn norm_of_gaussian_integer() {
        let k = gaussian();
        // |3 + 4i|^2 = 25
        let a = NfElement::from_i64(&[3, 4]);
        assert_eq!(k.norm(&a), Rational::from(25));
    }

    #[test]
    fn quartic_q7_basis_with_denominator_five() {
        // Integral basis of the section-4 quartic-with-q=7 field:
        // [1, z, (z^3-2z^2-2z-4)/5, (2z^3+z^2-9z-23)/5]
        let poly = IntPolynomial::from_i64(&[16, -11, -4, -1, 1]);
        let b3 = NfElement::new(vec![
            Rational::from((-4, 5)),
            Rational::from((-2, 5)),
            Rational::from((-2, 5)),
            Rational::from((1, 5)),
        ]);
        let b4 = NfElement::new(vec![
            Rational::from((-23, 5)),
            Rational::from((-9, 5)),
            Rational::from((1, 5)),
            Rational::from((2, 5)),
        ]);
        let k = NumberField::with_basis(
            poly,
            vec![
                NfElement::from_i64(&[1, 0, 0, 0]),
                NfElement::from_i64(&[0, 1, 0, 0]),
                b3.clone(),
                b4,
            ],
        )
        .unwrap();
        // z^2 = z + 3 - 2*b3 + b4 and z^3 = 10 + 4z + b3 + 2*b4, so the
        // whole power basis sits inside the order.
        assert!(k.is_integral(&b3));
        assert!(k.is_integral(&k.gen()));
        assert!(k.is_integral(&NfElement::from_i64(&[0, 0, 1, 0])));
        assert!(k.is_integral(&NfElement::from_i64(&[0, 0, 0, 1])));
    }
}
