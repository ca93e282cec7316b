//! Fractional ideals in HNF-with-denominator form, different ideals of
//! linear forms, and the lambda-tilde / t-tilde / t_min read-offs that
//! control the cone decomposition.

use super::matrix::{IntegerMatrix, RatMatrix};
use super::{apply_form, NfElement, NumberField};
use crate::error::{Error, Result};
use rug::ops::Pow;
use rug::{Complete, Integer, Rational};

/// Fractional ideal as `(1/den) * L(hnf)` where the columns of `hnf` are
/// coordinates with respect to the field's integral basis.
///
/// Normalized: `gcd(den, content(hnf)) = 1`, pivots positive, entries right
/// of pivots reduced. Equal ideals have equal representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalIdeal {
    hnf: IntegerMatrix,
    den: Integer,
}

impl FractionalIdeal {
    pub fn unit_ideal(field: &NumberField) -> Self {
        FractionalIdeal {
            hnf: IntegerMatrix::identity(field.degree()),
            den: Integer::from(1),
        }
    }

    pub fn hnf_matrix(&self) -> &IntegerMatrix {
        &self.hnf
    }

    pub fn denominator(&self) -> &Integer {
        &self.den
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    fn normalized(hnf: IntegerMatrix, den: Integer) -> Self {
        let g = hnf.content().gcd(&den);
        if g > 1 {
            FractionalIdeal {
                hnf: hnf.div_exact(&g),
                den: den.div_exact(&g),
            }
        } else {
            FractionalIdeal { hnf, den }
        }
    }

    /// Z-lattice from rational coordinate columns (must already be closed
    /// under multiplication by the order for the result to be an ideal;
    /// callers guarantee this).
    pub fn from_rational_columns(cols: &RatMatrix) -> Result<Self> {
        let (m, den) = cols.to_integer_scaled();
        let hnf = m.hnf()?;
        Ok(FractionalIdeal::normalized(hnf, den))
    }

    /// Ideal generated by field elements over the order.
    pub fn from_generators(field: &NumberField, gens: &[NfElement]) -> Result<Self> {
        let n = field.degree();
        let mut cols = Vec::with_capacity(gens.len() * n);
        for g in gens {
            for w in field.integral_basis() {
                cols.push(field.coords_in_basis(&field.mul(g, w)));
            }
        }
        FractionalIdeal::from_rational_columns(&RatMatrix::from_columns(&cols))
    }

    pub fn principal(field: &NumberField, g: &NfElement) -> Result<Self> {
        FractionalIdeal::from_generators(field, std::slice::from_ref(g))
    }

    /// Ideal scaled by a positive integer.
    pub fn scale_integer(&self, c: &Integer) -> Self {
        FractionalIdeal::normalized(self.hnf.scale(c), self.den.clone())
    }

    /// Absolute norm: `det(hnf) / den^n`.
    pub fn norm(&self) -> Rational {
        let n = self.hnf.rows() as u32;
        let d = self.hnf.det();
        Rational::from((d, self.den.clone().pow(n)))
    }

    /// Basis of the ideal as field elements.
    pub fn basis_elements(&self, field: &NumberField) -> Vec<NfElement> {
        let n = self.hnf.rows();
        let den = Rational::from(&self.den);
        (0..n)
            .map(|j| {
                let col: Vec<Rational> = self
                    .hnf
                    .column(j)
                    .iter()
                    .map(|x| Rational::from(x) / &den)
                    .collect();
                field.from_basis_coords(&col)
            })
            .collect()
    }

    /// Membership test via back-substitution against the triangular HNF.
    pub fn contains(&self, field: &NumberField, a: &NfElement) -> bool {
        let n = self.hnf.rows();
        let coords = field.coords_in_basis(a);
        // need den * coords integral, then solve H x = den*coords over Z
        let mut v: Vec<Integer> = Vec::with_capacity(n);
        for c in &coords {
            let t = (c * &Rational::from(&self.den)).complete();
            if *t.denom() != 1 {
                return false;
            }
            v.push(t.numer().clone());
        }
        for i in (0..n).rev() {
            let (q, r) = v[i].clone().div_rem(self.hnf[(i, i)].clone());
            if r != 0 {
                return false;
            }
            for k in 0..=i {
                let t = (&self.hnf[(k, i)] * &q).complete();
                v[k] -= t;
            }
        }
        v.iter().all(|x| *x == 0)
    }

    /// Inverse fractional ideal `{x : x * self <= O}`, computed as the
    /// intersection of the preimage lattices of multiplication by each
    /// basis element.
    pub fn inverse(&self, field: &NumberField) -> Result<Self> {
        let n = field.degree();
        let elems = self.basis_elements(field);
        // lattice {c : M_b c in Z^n} has basis matrix M_b^{-1}
        let mut duals: Vec<Vec<Rational>> = Vec::with_capacity(n * n);
        for b in &elems {
            let mb = field.mul_matrix_in_basis(b);
            let inv = mb.inverse().ok_or(Error::SingularForm)?;
            // dual of L(inv) is L(inv^{-T}) = L(mb^T)
            let mbt = transpose_rat(&mb);
            for j in 0..n {
                duals.push(mbt.column(j));
            }
        }
        // sum of duals, then dualize back: L = (sum L_i*)* with
        // L(A)* = L(A^{-T})
        let sum = RatMatrix::from_columns(&duals);
        let (m, den) = sum.to_integer_scaled();
        let h = m.hnf()?;
        let hr = RatMatrix::from_integer(&h);
        let hinv = hr.inverse().ok_or(Error::RankDeficient)?;
        let dual_basis = scale_rat(&transpose_rat(&hinv), &Rational::from(&den));
        FractionalIdeal::from_rational_columns(&dual_basis)
    }
}

fn transpose_rat(m: &RatMatrix) -> RatMatrix {
    let mut t = RatMatrix::zero(m.cols(), m.rows());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            t[(j, i)] = m[(i, j)].clone();
        }
    }
    t
}

fn scale_rat(m: &RatMatrix, c: &Rational) -> RatMatrix {
    let mut t = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            t[(i, j)] *= c;
        }
    }
    t
}

/// Different ideal of a linear form (values given on the integral basis):
/// the inverse of `{x : ell(x O) <= Z}`, computed by inverting the value
/// matrix `(ell(w_i w_j))`.
pub fn different_of_form(field: &NumberField, ell: &[Rational]) -> Result<FractionalIdeal> {
    let n = field.degree();
    if ell.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "form needs {} values, got {}",
            n,
            ell.len()
        )));
    }
    let basis = field.integral_basis();
    let mut m = RatMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let prod = field.mul(&basis[i], &basis[j]);
            m[(i, j)] = apply_form(field, ell, &prod);
        }
    }
    let minv = m.inverse().ok_or(Error::SingularForm)?;
    let codifferent = FractionalIdeal::from_rational_columns(&minv)?;
    codifferent.inverse(field)
}

/// Largest integer `lambda` with `D <= lambda * O`: the gcd of the HNF
/// entries. The containment is also re-checked by dividing out and
/// re-normalizing.
pub fn lambda_tilde(d: &FractionalIdeal) -> Result<Integer> {
    if !d.is_integral() {
        return Err(Error::NotIntegral(d.den.to_string()));
    }
    let g = d.hnf.content();
    debug_assert!({
        let reduced = d.hnf.div_exact(&g);
        reduced.hnf().map(|h| h == reduced).unwrap_or(false)
    });
    Ok(g)
}

/// Generator of `(D cap Z) / lambda-tilde`: the first HNF pivot (the column
/// supported on the rational coordinate) divided by lambda-tilde.
///
/// Requires the integral basis to start with 1.
pub fn t_tilde(field: &NumberField, d: &FractionalIdeal) -> Result<Integer> {
    if !d.is_integral() {
        return Err(Error::NotIntegral(d.den.to_string()));
    }
    if field.integral_basis()[0] != field.one() {
        return Err(Error::Config(
            "t-tilde read-off requires the integral basis to start with 1".into(),
        ));
    }
    let lam = lambda_tilde(d)?;
    Ok(d.hnf[(0, 0)].clone().div_exact(&lam))
}

/// Minimal defect of unimodularity `t_min = lambda * prod p_j^{v_j}` from
/// externally supplied prime valuations.
pub fn t_min(lambda: &Integer, prime_valuations: &[(u64, u32)]) -> Integer {
    let mut t = lambda.clone();
    for &(p, v) in prime_valuations {
        t *= Integer::from(p).pow(v);
    }
    t
}
