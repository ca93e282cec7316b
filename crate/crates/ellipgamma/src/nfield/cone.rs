//! Lattice-point enumeration for the half-open parallelepiped of a cone
//! decomposition.

use super::matrix::{IntegerMatrix, RatMatrix};
use crate::error::{Error, Result};
use rug::{Integer, Rational};

/// Points of `Z^n` inside the half-open fundamental domain spanned by
/// `alpha_1, ..., alpha_{n-1}, line_gen` (all coordinates in `[0, 1)`).
///
/// Exactly `|det(alpha_1, ..., alpha_{n-1}, line_gen)|` points are returned.
/// For generators of a genuine cone decomposition the coordinate along
/// `line_gen` of every point is 0, so the result is the paper's set of
/// residual points `delta'` in the parallelepiped of the alphas alone.
pub fn parallelepiped_points(
    alphas: &[Vec<Integer>],
    line_gen: &[Integer],
) -> Result<Vec<Vec<Integer>>> {
    let n = line_gen.len();
    if alphas.len() + 1 != n || alphas.iter().any(|a| a.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "need {} generators of length {}",
            n, n
        )));
    }
    let mut cols: Vec<Vec<Integer>> = alphas.to_vec();
    cols.push(line_gen.to_vec());
    let m = IntegerMatrix::from_columns(&cols);
    let det = m.det();
    if det == 0 {
        return Err(Error::DegenerateCone);
    }
    let minv = RatMatrix::from_integer(&m)
        .inverse()
        .expect("nonzero determinant");

    // Coset representatives of Z^n / M Z^n from the triangular HNF: the
    // boxed residues 0 <= c_i < h_ii hit every coset exactly once.
    let h = m.hnf()?;
    let pivots: Vec<Integer> = (0..n).map(|i| h[(i, i)].clone()).collect();
    let mut points = Vec::new();
    let mut counter = vec![Integer::new(); n];
    loop {
        // map the representative into the fundamental domain:
        // x' = x - M * floor(M^{-1} x)
        let xq: Vec<Rational> = counter.iter().map(Rational::from).collect();
        let mu = minv.mul_vec(&xq);
        let fl: Vec<Integer> = mu.iter().map(|q| q.clone().floor().numer().clone()).collect();
        let shift = m.mul_vec(&fl);
        let point: Vec<Integer> = counter
            .iter()
            .zip(&shift)
            .map(|(x, s)| Integer::from(x - s))
            .collect();
        points.push(point);

        // odometer over the pivot boxes
        let mut i = 0;
        loop {
            if i == n {
                points.sort();
                debug_assert_eq!(Integer::from(points.len()), det.clone().abs());
                return Ok(points);
            }
            counter[i] += 1;
            if counter[i] < pivots[i] {
                break;
            }
            counter[i] = Integer::new();
            i += 1;
        }
    }
}

/// Same enumeration for a sublattice `L = B Z^n` given in ambient
/// coordinates: generators must lie in `L`, points are returned in ambient
/// coordinates.
pub fn parallelepiped_points_in_basis(
    alphas: &[Vec<Integer>],
    line_gen: &[Integer],
    lattice_basis: &IntegerMatrix,
) -> Result<Vec<Vec<Integer>>> {

    let binv = RatMatrix::from_integer(lattice_basis)
        .inverse()
        .ok_or(Error::RankDeficient)?;
    let to_l_coords = |v: &[Integer]| -> Result<Vec<Integer>> {
        let vq: Vec<Rational> = v.iter().map(Rational::from).collect();
        let c = binv.mul_vec(&vq);
        c.into_iter()
            .map(|q| {
                if *q.denom() == 1 {
                    Ok(q.numer().clone())
                } else {
                    Err(Error::DimensionMismatch(
                        "generator does not lie in the lattice".into(),
                    ))
                }
            })
            .collect()
    };
    let alphas_l: Vec<Vec<Integer>> = alphas
        .iter()
        .map(|a| to_l_coords(a))
        .collect::<Result<_>>()?;
    let line_l = to_l_coords(line_gen)?;
    let pts = parallelepiped_points(&alphas_l, &line_l)?;
    let mut out: Vec<Vec<Integer>> = pts
        .into_iter()
        .map(|p| lattice_basis.mul_vec(&p))
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn iv(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    /// Brute-force box scan oracle: every integer point in a bounding box,
    /// kept iff all generator coordinates lie in [0, 1).
    fn box_scan(alphas: &[Vec<Integer>], line: &[Integer]) -> Vec<Vec<Integer>> {
        let n = line.len();
        let mut cols = alphas.to_vec();
        cols.push(line.to_vec());
        let m = IntegerMatrix::from_columns(&cols);
        let minv = RatMatrix::from_integer(&m).inverse().unwrap();
        // bounding box: sum of positive parts / negative parts per row
        let mut lo = vec![0i64; n];
        let mut hi = vec![0i64; n];
        for i in 0..n {
            for c in &cols {
                let v = c[i].to_i64().unwrap();
                if v > 0 {
                    hi[i] += v;
                } else {
                    lo[i] += v;
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        'outer: loop {
            let p: Vec<Rational> = cur.iter().map(|&x| Rational::from(x)).collect();
            let mu = minv.mul_vec(&p);
            if mu
                .iter()
                .all(|q| q.cmp0() != std::cmp::Ordering::Less && *q < 1u32)
            {
                out.push(iv(&cur));
            }
            let mut i = 0;
            loop {
                if i == n {
                    break 'outer;
                }
                cur[i] += 1;
                if cur[i] <= hi[i] {
                    break;
                }
                cur[i] = lo[i];
                i += 1;
            }
        }
        out.sort();
        out
    }

    #[test]
    fn unimodular_cone_has_single_point() {
        let pts = parallelepiped_points(&[iv(&[1, 0])], &iv(&[0, 1])).unwrap();
        assert_eq!(pts, vec![iv(&[0, 0])]);
    }

    #[test]
    fn two_by_stretched_alpha() {
        let pts = parallelepiped_points(&[iv(&[2, 0])], &iv(&[0, 1])).unwrap();
        assert_eq!(pts, vec![iv(&[0, 0]), iv(&[1, 0])]);
        assert_eq!(pts, box_scan(&[iv(&[2, 0])], &iv(&[0, 1])));
    }

    #[test]
    fn degenerate_cone_is_rejected() {
        assert!(matches!(
            parallelepiped_points(&[iv(&[1, 2])], &iv(&[2, 4])),
            Err(Error::DegenerateCone)
        ));
    }

    #[test]
    fn random_3d_counts_match_det_and_box_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut tested = 0;
        while tested < 50 {
            let a1 = iv(&[
                rng.gen_range(-4i64..=4),
                rng.gen_range(-4i64..=4),
                rng.gen_range(-4i64..=4),
            ]);
            let a2 = iv(&[
                rng.gen_range(-4i64..=4),
                rng.gen_range(-4i64..=4),
                rng.gen_range(-4i64..=4),
            ]);
            let l = iv(&[
                rng.gen_range(-4i64..=4),
                rng.gen_range(-4i64..=4),
                rng.gen_range(-4i64..=4),
            ]);
            let m = IntegerMatrix::from_columns(&[a1.clone(), a2.clone(), l.clone()]);
            let d = m.det().abs();
            if d == 0 || d > 20 {
                continue;
            }
            tested += 1;
            let pts = parallelepiped_points(&[a1.clone(), a2.clone()], &l).unwrap();
            assert_eq!(Integer::from(pts.len()), d);
            assert_eq!(pts, box_scan(&[a1, a2], &l));
        }
    }

    #[test]
    fn sublattice_coordinates_convert_back_to_ambient() {
        // L = 2 Z x Z, generators 2*alpha with alpha in L
        let basis = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        let pts =
            parallelepiped_points_in_basis(&[iv(&[4, 0])], &iv(&[0, 1]), &basis).unwrap();
        assert_eq!(pts, vec![iv(&[0, 0]), iv(&[2, 0])]);
    }
}
