//! Evaluation of theta and the multiple elliptic Gamma hierarchy.
//!
//! `G_r(z, tau_0..tau_r)` is defined by a double-sided infinite product over
//! `Z_{>=0}^{r+1}`; `G_0` is the classical theta function and `G_1` the
//! elliptic Gamma function. Inside the center strip
//! `0 < Im z < sum Im tau_k` (all `Im tau_k > 0`) the exponential-sum form
//!
//! ```text
//! G_r = exp( - sum_{j>=1} (1/j) (q_0^j..q_r^j x^{-j} + (-1)^r x^j)
//!                               / prod_k (1 - q_k^j) )
//! ```
//!
//! converges geometrically. General arguments are reduced to the strip by a
//! reorientation step (flipping parameters with negative imaginary part via
//! the inversion identity) and a translation step (shifting `z` by
//! parameters via pseudo-periodicity, which spawns lower-hierarchy
//! factors). A separate trigonometric series handles the `r = 2` case with
//! one real parameter.

mod bernoulli;

pub use bernoulli::{bernoulli_nn_complex, bernoulli_nn_rational, modular_check};

use crate::error::{Error, Result};
use crate::mpnum::{e2pi, guard_bits, BigComplex, MIN_PREC};
use rug::Float;
use std::collections::HashMap;

/// An elliptic argument: `z` plus the `r + 1` parameters of `G_r`.
#[derive(Debug, Clone)]
pub struct GammaPoint {
    pub z: BigComplex,
    pub taus: Vec<BigComplex>,
}

impl GammaPoint {
    pub fn new(z: BigComplex, taus: Vec<BigComplex>) -> Result<Self> {
        if taus.is_empty() {
            return Err(Error::DimensionMismatch(
                "hierarchy point needs at least one parameter".into(),
            ));
        }
        Ok(GammaPoint { z, taus })
    }

    /// Hierarchy index `r` (number of parameters minus one).
    pub fn r(&self) -> usize {
        self.taus.len() - 1
    }
}

/// Order in which translation steps consume the parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranslationOrder {
    LargestImFirst,
    SmallestImFirst,
}

#[derive(Debug, Clone)]
pub struct GammaOpts {
    /// Refuse series whose geometric decay rate is below this.
    pub y_floor: f64,
    /// Maximum number of pseudo-periodicity steps in one evaluation.
    pub translation_budget: usize,
    pub translation_order: TranslationOrder,
    /// Error out instead of translating (used where the construction
    /// guarantees arguments land in the strip after reorientation).
    pub forbid_translation: bool,
}

impl Default for GammaOpts {
    fn default() -> Self {
        GammaOpts {
            y_floor: 1e-8,
            translation_budget: 1_000_000,
            translation_order: TranslationOrder::LargestImFirst,
            forbid_translation: false,
        }
    }
}

/// log2 magnitude within one bit.
fn mag2(f: &Float) -> f64 {
    if f.is_zero() {
        return f64::NEG_INFINITY;
    }
    f.get_exp().map(|e| e as f64).unwrap_or(f64::NEG_INFINITY)
}

fn cmag2(c: &BigComplex) -> f64 {
    mag2(c.re()).max(mag2(c.im()))
}

/// Working precision for a series expected to sum about `est_terms` terms.
fn series_prec(prec: u32, est_terms: f64) -> u32 {
    let extra = if est_terms > 2.0 {
        est_terms.log2().ceil() as u32
    } else {
        0
    };
    prec + guard_bits(prec) + 32 + extra
}

/// Jacobi-triple-product evaluation of theta; valid for every `z` and
/// `Im tau > 0`.
///
/// The `q^{1/24}/eta` prefactor of the triple product cancels against the
/// product form of eta, leaving `1 / prod_{n>=1}(1 - q^n)`; no fractional
/// power of `q` is ever taken.
pub fn theta(z: &BigComplex, tau: &BigComplex, prec: u32) -> Result<BigComplex> {
    let prec = prec.max(MIN_PREC);
    let im_tau = tau.im().to_f64();
    if !(im_tau > 0.0) {
        return Err(Error::RealParameter);
    }
    let y = std::f64::consts::TAU * im_tau;
    if y < 1e-6 {
        return Err(Error::ConvergenceTooSlow { rate: y, floor: 1e-6 });
    }
    // extra terms when z sits far off the x-unit circle
    let imz = z.im().to_f64().abs();
    let est =
        (prec as f64 * std::f64::consts::LN_2 + 40.0) * (1.0 / y + 1.0) + 4.0 * imz / im_tau;
    let wprec = series_prec(prec, est);

    let x = e2pi(&z.with_prec(wprec))?;
    let q = e2pi(&tau.with_prec(wprec))?;
    let xinv = x.recip();
    let tol = -(wprec as f64) - 8.0;

    // sum over n >= 0: term_{n+1} = term_n * (-x) * q^n
    let mut sum = BigComplex::one(wprec);
    let neg_x = x.neg();
    let neg_xinv = xinv.neg();
    let mut term = BigComplex::one(wprec);
    let mut qpow = BigComplex::one(wprec); // q^n
    let mut n = 0u64;
    loop {
        term = term.mul(&neg_x).mul(&qpow);
        qpow = qpow.mul(&q);
        n += 1;
        sum = sum.add(&term);
        let ratio = cmag2(&qpow) + cmag2(&x);
        if cmag2(&term) < tol && ratio < -1.0 {
            break;
        }
        if n > 100_000_000 {
            return Err(Error::ConvergenceTooSlow { rate: y, floor: 1e-6 });
        }
    }
    // sum over n < 0 (m = -n >= 1): term_{m+1} = term_m * (-x^{-1}) * q^{m+1}
    let mut term = neg_xinv.mul(&q);
    let mut qpow = q.mul(&q); // q^{m+1} for m = 1
    let mut m = 1u64;
    loop {
        sum = sum.add(&term);
        term = term.mul(&neg_xinv).mul(&qpow);
        qpow = qpow.mul(&q);
        m += 1;
        let ratio = cmag2(&qpow) + cmag2(&xinv);
        if cmag2(&term) < tol && ratio < -1.0 {
            break;
        }
        if m > 100_000_000 {
            return Err(Error::ConvergenceTooSlow { rate: y, floor: 1e-6 });
        }
    }

    // 1 / prod_{n>=1} (1 - q^n)
    let margin = (1.0 / (1.0 - (-y).exp())).log2().ceil().max(0.0);
    let mut prod = BigComplex::one(wprec);
    let mut qn = q.clone();
    loop {
        prod = prod.mul(&BigComplex::one(wprec).sub(&qn));
        qn = qn.mul(&q);
        if cmag2(&qn) + margin < tol {
            break;
        }
    }
    Ok(sum.div(&prod).with_prec(prec))
}

/// Incremental power ladder; keeps the inner series loops allocation-free.
struct Ladder {
    v: BigComplex,
    pow: BigComplex,
    scratch: BigComplex,
}

impl Ladder {
    fn new(v: BigComplex, wprec: u32) -> Self {
        Ladder {
            v,
            pow: BigComplex::one(wprec),
            scratch: BigComplex::zero(wprec),
        }
    }

    fn step(&mut self, t1: &mut Float, t2: &mut Float) {
        self.scratch.assign_mul(&self.pow, &self.v, t1, t2);
        std::mem::swap(&mut self.pow, &mut self.scratch);
    }
}

/// Exponential-sum evaluation on the closed center strip
/// `0 <= Im z <= sum Im tau_k`, all `Im tau_k > 0`.
///
/// The two marginal geometric series are pulled out of the sum so the
/// boundary cases `Im z = 0` and `Im z = H` (where `|x| = 1` resp.
/// `|w| = 1`) stay geometric at rate `min_k Im tau_k`:
///
/// ```text
/// G_r = (1 - w) (1 - x)^{(-1)^r}
///       exp( - sum_{j>=1} (1/j) (w^j + (-1)^r x^j) (1 - D_j) / D_j ),
/// w = x^{-1} prod q_k,  D_j = prod_k (1 - q_k^j).
/// ```
fn center_series(
    z: &BigComplex,
    taus: &[BigComplex],
    prec: u32,
    y_floor: f64,
) -> Result<BigComplex> {
    let r = taus.len() - 1;
    let sign_neg = r % 2 == 1;

    let im_z = z.im().to_f64();
    let h: f64 = taus.iter().map(|t| t.im().to_f64()).sum();
    let min_im = taus
        .iter()
        .map(|t| t.im().to_f64())
        .fold(f64::INFINITY, f64::min);
    if min_im <= 0.0 {
        return Err(Error::OutsideCenterStrip { imz: im_z, height: h });
    }
    let slack = 1e-12 * (1.0 + h.abs());
    if im_z < -slack || im_z > h + slack {
        return Err(Error::OutsideCenterStrip { imz: im_z, height: h });
    }
    let y = std::f64::consts::TAU * (im_z.max(0.0).min(h - im_z).max(0.0) + min_im);
    if y < y_floor {
        return Err(Error::ConvergenceTooSlow { rate: y, floor: y_floor });
    }
    let est_terms = ((prec as f64) * std::f64::consts::LN_2 + 40.0) / y;
    let wprec = series_prec(prec, est_terms);

    let zw = z.with_prec(wprec);
    let x = e2pi(&zw)?;
    let qs: Vec<BigComplex> = taus
        .iter()
        .map(|t| e2pi(&t.with_prec(wprec)))
        .collect::<Result<_>>()?;
    let mut w = x.recip();
    for q in &qs {
        w = w.mul(q);
    }

    // zeros/poles of the product sit where x (or w) hits 1
    let one = BigComplex::one(wprec);
    let pole_tol = -((wprec / 2) as f64);
    if cmag2(&one.sub(&x)) < pole_tol || cmag2(&one.sub(&w)) < pole_tol {
        return Err(Error::PoleOrZero);
    }

    let mut t1 = Float::new(wprec);
    let mut t2 = Float::new(wprec);
    let mut lx = Ladder::new(x.clone(), wprec);
    let mut lw = Ladder::new(w.clone(), wprec);
    let mut lqs: Vec<Ladder> = qs.iter().map(|q| Ladder::new(q.clone(), wprec)).collect();

    let tol = -(wprec as f64) - 8.0;
    let margin = (1.0 / (1.0 - (-y).exp())).log2().ceil().max(0.0) + 2.0;
    let max_terms = (est_terms * 4.0 + 1.0e4) as u64;

    let mut sum = BigComplex::zero(wprec);
    let mut dj = BigComplex::zero(wprec);
    let mut one_minus_dj = BigComplex::zero(wprec);
    let mut num = BigComplex::zero(wprec);
    let mut term = BigComplex::zero(wprec);
    let mut calm = 0u32;
    let mut j = 0u64;
    loop {
        j += 1;
        lx.step(&mut t1, &mut t2);
        lw.step(&mut t1, &mut t2);
        for lq in lqs.iter_mut() {
            lq.step(&mut t1, &mut t2);
        }
        // D_j = prod (1 - q_k^j)
        dj.assign_from(&one.sub(&lqs[0].pow));
        for lq in lqs.iter().skip(1) {
            term.assign_from(&one.sub(&lq.pow));
            num.assign_mul(&dj, &term, &mut t1, &mut t2);
            std::mem::swap(&mut dj, &mut num);
        }
        one_minus_dj.assign_from(&one.sub(&dj));
        // (w^j +/- x^j)(1 - D_j) / (j D_j)
        num.assign_from(&if sign_neg {
            lw.pow.sub(&lx.pow)
        } else {
            lw.pow.add(&lx.pow)
        });
        term.assign_mul(&num, &one_minus_dj, &mut t1, &mut t2);
        let quotient = term.div(&dj).div_real(&Float::with_val(wprec, j));
        sum.add_assign_c(&quotient);

        let bound = cmag2(&lw.pow).max(cmag2(&lx.pow)) + 1.0 + cmag2(&one_minus_dj)
            - cmag2(&dj)
            + margin;
        if bound < tol {
            calm += 1;
            if calm >= 8 && j >= 4 {
                break;
            }
        } else {
            calm = 0;
        }
        if j > max_terms {
            return Err(Error::ConvergenceTooSlow { rate: y, floor: y_floor });
        }
    }

    let mut v = one.sub(&w).mul(&sum.neg().exp());
    let edge = one.sub(&x);
    if sign_neg {
        v = v.div(&edge);
    } else {
        v = v.mul(&edge);
    }
    Ok(v.with_prec(prec))
}

/// Center-strip evaluation of `G_r` (strict interior; the exponential-sum
/// operation).
pub fn gr_center(p: &GammaPoint, prec: u32) -> Result<BigComplex> {
    gr_center_opts(p, prec, &GammaOpts::default())
}

pub fn gr_center_opts(p: &GammaPoint, prec: u32, opts: &GammaOpts) -> Result<BigComplex> {
    let prec = prec.max(MIN_PREC);
    let im_z = p.z.im().to_f64();
    let h: f64 = p.taus.iter().map(|t| t.im().to_f64()).sum();
    if p.taus.iter().any(|t| t.im().to_f64() <= 0.0) || im_z <= 0.0 || im_z >= h {
        return Err(Error::OutsideCenterStrip { imz: im_z, height: h });
    }
    center_series(&p.z, &p.taus, prec, opts.y_floor)
}

/// Full evaluation of `G_r` on `C x (C - R)^{r+1}`: reorientation,
/// translation, then the center series (the single-parameter level
/// short-circuits to the triple-product sum).
pub fn gr(p: &GammaPoint, prec: u32) -> Result<BigComplex> {
    gr_opts(p, prec, &GammaOpts::default())
}

pub fn gr_opts(p: &GammaPoint, prec: u32, opts: &GammaOpts) -> Result<BigComplex> {
    gr_opts_counted(p, prec, opts).map(|(v, _)| v)
}

/// Evaluation that also reports the number of translation steps used
/// (0 when the argument landed in the strip after reorientation alone).
pub fn gr_opts_counted(
    p: &GammaPoint,
    prec: u32,
    opts: &GammaOpts,
) -> Result<(BigComplex, usize)> {
    let prec = prec.max(MIN_PREC);
    let wprec = prec + guard_bits(prec);

    // reorientation: flip parameters in the lower half-plane
    let mut z = p.z.with_prec(wprec);
    let mut taus = Vec::with_capacity(p.taus.len());
    let mut flips = 0usize;
    for t in &p.taus {
        let tw = t.with_prec(wprec);
        let im = tw.im().to_f64();
        let scale = 1.0 + tw.abs().to_f64();
        if im.abs() < 2f64.powi(-((prec / 2) as i32)) * scale {
            return Err(Error::RealParameter);
        }
        if im < 0.0 {
            z = z.sub(&tw);
            taus.push(tw.neg());
            flips += 1;
        } else {
            taus.push(tw);
        }
    }
    let invert = flips % 2 == 1;

    let mut eval = Reduction {
        taus,
        prec,
        opts,
        memo: HashMap::new(),
        steps: 0,
    };
    let full_mask = (1u32 << eval.taus.len()) - 1;
    let v = eval.eval(&z, full_mask)?;
    let steps = eval.steps;
    let v = if invert { v.recip() } else { v };
    Ok((v.with_prec(prec), steps))
}

struct Reduction<'a> {
    taus: Vec<BigComplex>,
    prec: u32,
    opts: &'a GammaOpts,
    memo: HashMap<(u32, String), BigComplex>,
    steps: usize,
}

impl Reduction<'_> {
    fn key(&self, z: &BigComplex, mask: u32) -> (u32, String) {
        (
            mask,
            format!(
                "{}:{}",
                z.re().to_string_radix(16, None),
                z.im().to_string_radix(16, None)
            ),
        )
    }

    fn active(&self, mask: u32) -> Vec<usize> {
        (0..self.taus.len()).filter(|k| mask >> k & 1 == 1).collect()
    }

    fn eval(&mut self, z: &BigComplex, mask: u32) -> Result<BigComplex> {
        let key = self.key(z, mask);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = self.eval_uncached(z, mask)?;
        self.memo.insert(key, v.clone());
        Ok(v)
    }

    fn eval_uncached(&mut self, z: &BigComplex, mask: u32) -> Result<BigComplex> {
        let idx = self.active(mask);
        if idx.len() == 1 {
            // the triple-product sum handles any z directly
            return theta(z, &self.taus[idx[0]], self.prec);
        }
        let h: f64 = idx.iter().map(|&k| self.taus[k].im().to_f64()).sum();
        let im_z = z.im().to_f64();
        let slack = 1e-12 * (1.0 + h);
        if im_z >= -slack && im_z <= h + slack {
            let taus: Vec<BigComplex> = idx.iter().map(|&k| self.taus[k].clone()).collect();
            return center_series(z, &taus, self.prec, self.opts.y_floor);
        }

        // translation step
        if self.opts.forbid_translation {
            return Err(Error::CenterStripViolation(format!(
                "Im z = {:.3e} outside [0, {:.3e}] after reorientation",
                im_z, h
            )));
        }
        self.steps += 1;
        if self.steps > self.opts.translation_budget {
            return Err(Error::DepthExceeded(self.opts.translation_budget));
        }
        let largest = self.opts.translation_order == TranslationOrder::LargestImFirst;
        let mut chosen = idx[0];
        for &k in &idx[1..] {
            let a = self.taus[k].im().to_f64();
            let b = self.taus[chosen].im().to_f64();
            if (largest && a > b) || (!largest && a < b) {
                chosen = k;
            }
        }
        let tau = self.taus[chosen].clone();
        let sub_mask = mask & !(1u32 << chosen);
        if im_z < 0.0 {
            // G_r(z) = G_r(z + tau_k) / G_{r-1}(z, tau-hat-k)
            let up = self.eval(&z.add(&tau), mask)?;
            let lower = self.eval(z, sub_mask)?;
            Ok(up.div(&lower))
        } else {
            // G_r(z) = G_{r-1}(z - tau_k, tau-hat-k) * G_r(z - tau_k)
            let zs = z.sub(&tau);
            let lower = self.eval(&zs, sub_mask)?;
            let down = self.eval(&zs, mask)?;
            Ok(lower.mul(&down))
        }
    }
}

/// Trigonometric-series evaluation of `G_2` with sign pattern
/// `Im tau_a > 0, Im tau_b = 0, Im tau_c < 0` (the real parameter being a
/// real quadratic irrational):
///
/// ```text
/// G_2 = exp( (i/4) sum_{j>=1} cos(pi j (2z - tau_0 - tau_1 - tau_2))
///                  / (j sin(pi j tau_0) sin(pi j tau_1) sin(pi j tau_2)) )
/// ```
///
/// valid for `Im tau_c < Im z < Im tau_a`; symmetric in the parameters.
pub fn gr_real_variant(
    z: &BigComplex,
    taus: &[BigComplex],
    prec: u32,
    opts: &GammaOpts,
) -> Result<BigComplex> {
    let prec = prec.max(MIN_PREC);
    if taus.len() != 3 {
        return Err(Error::DimensionMismatch(
            "the real-parameter series is implemented for three parameters".into(),
        ));
    }
    // exactly one positive, one (numerically) zero, one negative Im
    let mut pos = None;
    let mut zero = None;
    let mut neg = None;
    for (k, t) in taus.iter().enumerate() {
        let im = t.im().to_f64();
        let scale = 1.0 + t.abs().to_f64();
        if im.abs() < 2f64.powi(-((prec / 2) as i32)) * scale {
            if zero.replace(k).is_some() {
                return Err(Error::RealParameter);
            }
        } else if im > 0.0 {
            if pos.replace(k).is_some() {
                return Err(Error::RealParameter);
            }
        } else if neg.replace(k).is_some() {
            return Err(Error::RealParameter);
        }
    }
    let (pos, zero, neg) = match (pos, zero, neg) {
        (Some(p), Some(z0), Some(n)) => (p, z0, n),
        _ => return Err(Error::RealParameter),
    };

    let im_pos = taus[pos].im().to_f64();
    let im_neg = taus[neg].im().to_f64();
    let im_z = z.im().to_f64();
    if !(im_neg < im_z && im_z < im_pos) {
        return Err(Error::OutsideCenterStrip { imz: im_z, height: im_pos });
    }
    let im_a = 2.0 * im_z - im_pos - im_neg;
    let y = std::f64::consts::PI * (im_pos - im_neg - im_a.abs());
    if y < opts.y_floor {
        return Err(Error::ConvergenceTooSlow { rate: y, floor: opts.y_floor });
    }
    let est_terms = ((prec as f64) * std::f64::consts::LN_2 + 40.0) / y * 1.3 + 64.0;
    let wprec = series_prec(prec, est_terms);

    // force the declared-real parameter onto the axis
    let tzero = BigComplex::from_real(taus[zero].with_prec(wprec).re().clone());
    let tpos = taus[pos].with_prec(wprec);
    let tneg = taus[neg].with_prec(wprec);
    let zw = z.with_prec(wprec);

    let half = Float::with_val(wprec, 0.5f64);
    // a = e^{i pi (2z - sum tau)}, p_k = e^{i pi tau_k}; then
    // G = exp( sum_j (a^j + a^{-j}) / (j prod_k (p_k^j - p_k^{-j})) )
    // (the i/4, the cosine's 1/2 and the three 1/(2i) of the sines cancel)
    let big_a = zw.add(&zw).sub(&tpos).sub(&tzero).sub(&tneg).mul_real(&half);
    let a = e2pi(&big_a)?;
    let ps: Vec<BigComplex> = [&tpos, &tzero, &tneg]
        .iter()
        .map(|t| e2pi(&t.mul_real(&half)))
        .collect::<Result<_>>()?;

    let mut t1 = Float::new(wprec);
    let mut t2 = Float::new(wprec);
    let mut la = Ladder::new(a.clone(), wprec);
    let mut lainv = Ladder::new(a.recip(), wprec);
    let mut lps: Vec<Ladder> = ps.iter().map(|p| Ladder::new(p.clone(), wprec)).collect();
    let mut lpinvs: Vec<Ladder> =
        ps.iter().map(|p| Ladder::new(p.recip(), wprec)).collect();

    let sin_floor = -((wprec / 2) as f64);
    let tol = -(wprec as f64) - 8.0;
    let max_terms = (est_terms * 4.0 + 1.0e4) as u64;
    let mut sum = BigComplex::zero(wprec);
    let mut calm = 0u32;
    let mut j = 0u64;
    loop {
        j += 1;
        la.step(&mut t1, &mut t2);
        lainv.step(&mut t1, &mut t2);
        for l in lps.iter_mut().chain(lpinvs.iter_mut()) {
            l.step(&mut t1, &mut t2);
        }
        let mut denom = BigComplex::one(wprec);
        for k in 0..3 {
            let s = lps[k].pow.sub(&lpinvs[k].pow);
            // the real parameter is the small-denominator risk: |s| = 2|sin|
            if k == 1 && cmag2(&s) < sin_floor + 1.0 {
                return Err(Error::SmallDenominator(j));
            }
            denom = denom.mul(&s);
        }
        let numer = la.pow.add(&lainv.pow);
        let term = numer.div(&denom).div_real(&Float::with_val(wprec, j));
        sum = sum.add(&term);

        if cmag2(&term) < tol {
            calm += 1;
            if calm >= 16 {
                break;
            }
        } else {
            calm = 0;
        }
        if j > max_terms {
            return Err(Error::ConvergenceTooSlow { rate: y, floor: opts.y_floor });
        }
    }
    Ok(sum.exp().with_prec(prec))
}

/// Truncated defining product of `G_r` over the multi-index lattice; the
/// independent oracle used by tests and `--oracle` runs. Only practical
/// when every `Im tau_k` is well away from zero.
pub fn gr_product_oracle(
    z: &BigComplex,
    taus: &[BigComplex],
    prec: u32,
    max_factors: u64,
) -> Result<BigComplex> {
    let prec = prec.max(MIN_PREC);
    let r = taus.len() - 1;
    let wprec = prec + guard_bits(prec) + 16;
    let x = e2pi(&z.with_prec(wprec))?;
    let qs: Vec<BigComplex> = taus
        .iter()
        .map(|t| e2pi(&t.with_prec(wprec)))
        .collect::<Result<_>>()?;

    // per-axis truncation for a 2^-wprec product tail
    let mut bounds = Vec::with_capacity(qs.len());
    let extra = cmag2(&x).abs() + wprec as f64 + 16.0;
    let mut total: u64 = 1;
    for q in &qs {
        let dq = -cmag2(q);
        if dq <= 0.0 {
            return Err(Error::OutsideCenterStrip {
                imz: z.im().to_f64(),
                height: 0.0,
            });
        }
        let m = (extra / dq).ceil() as u64 + 2;
        bounds.push(m);
        total = total.saturating_mul(m);
        if total > max_factors {
            return Err(Error::ConvergenceTooSlow { rate: dq, floor: 0.0 });
        }
    }

    let one = BigComplex::one(wprec);
    let xinv = x.recip();
    let mut qprod = BigComplex::one(wprec);
    for q in &qs {
        qprod = qprod.mul(q);
    }
    let inv_exponent = r % 2 == 1;

    let mut value = BigComplex::one(wprec);
    let mut idx = vec![0u64; qs.len()];
    loop {
        let mut qm = BigComplex::one(wprec);
        for (k, q) in qs.iter().enumerate() {
            qm = qm.mul(&q.pow_i(idx[k] as i64));
        }
        let f1 = one.sub(&xinv.mul(&qm).mul(&qprod));
        let f2 = one.sub(&x.mul(&qm));
        value = value.mul(&f1);
        value = if inv_exponent { value.div(&f2) } else { value.mul(&f2) };

        let mut k = 0;
        loop {
            if k == qs.len() {
                return Ok(value.with_prec(prec));
            }
            idx[k] += 1;
            if idx[k] < bounds[k] {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests;
