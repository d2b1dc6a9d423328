//! Pointwise linear algebra with an indefinite metric.

use nalgebra::{Matrix3, Vector3};

use crate::error::{GeomError, Result};
use crate::scalar::{lit, Real};

/// Chart point `(x, y, z)`.
pub type Point<T> = Vector3<T>;

/// `g(u, v)` for the metric matrix `g`.
#[inline]
pub fn inner<T: Real>(g: &Matrix3<T>, u: &Vector3<T>, v: &Vector3<T>) -> T {
    u.dot(&(g * v))
}

pub fn euclid_norm<T: Real>(v: &Vector3<T>) -> T {
    v.dot(v).sqrt()
}

pub fn max_abs<T: Real>(v: &Vector3<T>) -> T {
    v.iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

pub fn max_abs_mat<T: Real>(m: &Matrix3<T>) -> T {
    m.iter().fold(T::zero(), |acc, x| acc.max(x.abs()))
}

pub fn det3<T: Real>(m: &Matrix3<T>) -> T {
    m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
        - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
        + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)])
}

/// Cofactor inverse; `None` when the determinant is negligible relative to the entries.
pub fn inverse3<T: Real>(m: &Matrix3<T>) -> Option<Matrix3<T>> {
    let d = det3(m);
    let scale = max_abs_mat(m);
    if scale == T::zero() || d.abs() <= lit::<T>(1e3) * T::epsilon() * scale.powi(3) {
        return None;
    }
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m[(r0, c0)] * m[(r1, c1)] - m[(r0, c1)] * m[(r1, c0)]
    };
    let adj = Matrix3::new(
        c(1, 2, 1, 2),
        -c(0, 2, 1, 2),
        c(0, 1, 1, 2),
        -c(1, 2, 0, 2),
        c(0, 2, 0, 2),
        -c(0, 1, 0, 2),
        c(1, 2, 0, 1),
        -c(0, 2, 0, 1),
        c(0, 1, 0, 1),
    );
    Some(adj / d)
}

/// Vector `w` with `g(w, a) = g(w, b) = 0`, i.e. `g⁻¹(a × b)`.
pub fn orthogonal_complement<T: Real>(g_inv: &Matrix3<T>, a: &Vector3<T>, b: &Vector3<T>) -> Vector3<T> {
    g_inv * a.cross(b)
}

/// Basis `e_i` with `g(e_i, e_j) = signs[i] δ_ij`, `signs[i] = ±1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoBasis<T: Real> {
    pub vectors: [Vector3<T>; 3],
    pub signs: [T; 3],
}

impl<T: Real> PseudoBasis<T> {
    /// Gram–Schmidt over the coordinate basis with pivoting on `|g(v, v)|`;
    /// when every remaining candidate is null, pairwise sums are tried.
    pub fn new(g: &Matrix3<T>) -> Result<Self> {
        let scale = max_abs_mat(g);
        if scale == T::zero() {
            return Err(GeomError::DegenerateBasis);
        }
        let floor = lit::<T>(1e-10) * scale;
        let mut pool: Vec<Vector3<T>> = (0..3).map(|i| Vector3::ith(i, T::one())).collect();
        let mut vectors = Vec::with_capacity(3);
        let mut signs = Vec::with_capacity(3);
        while vectors.len() < 3 {
            let quality = |v: &Vector3<T>| {
                let n2 = v.dot(v);
                if n2 == T::zero() {
                    T::zero()
                } else {
                    inner(g, v, v).abs() / n2
                }
            };
            let mut best: Option<(T, Vector3<T>, usize)> = None;
            for (i, v) in pool.iter().enumerate() {
                let q = quality(v);
                if best.as_ref().is_none_or(|b| q > b.0) {
                    best = Some((q, *v, i));
                }
            }
            if best.as_ref().is_none_or(|b| b.0 <= floor) {
                for i in 0..pool.len() {
                    for j in (i + 1)..pool.len() {
                        let v = pool[i] + pool[j];
                        let q = quality(&v);
                        if best.as_ref().is_none_or(|b| q > b.0) {
                            best = Some((q, v, i));
                        }
                    }
                }
            }
            // a pair sum pool[i] + pool[j] replaces its first summand
            let (q, v, idx) = best.ok_or(GeomError::DegenerateBasis)?;
            if q <= floor {
                return Err(GeomError::DegenerateBasis);
            }
            pool.remove(idx);
            let n = inner(g, &v, &v);
            let sign = n.signum();
            let e = v / n.abs().sqrt();
            for w in pool.iter_mut() {
                *w -= e * (sign * inner(g, w, &e));
            }
            vectors.push(e);
            signs.push(sign);
        }
        Ok(PseudoBasis {
            vectors: [vectors[0], vectors[1], vectors[2]],
            signs: [signs[0], signs[1], signs[2]],
        })
    }

    /// Number of negative directions (Sylvester index).
    pub fn negative_count(&self) -> usize {
        self.signs.iter().filter(|s| **s < T::zero()).count()
    }

    /// `Σ ε_i g(A e_i, e_i)`, the metric trace of the endomorphism `a`.
    pub fn trace(&self, g: &Matrix3<T>, a: &Matrix3<T>) -> T {
        self.vectors
            .iter()
            .zip(self.signs.iter())
            .fold(T::zero(), |acc, (e, s)| acc + *s * inner(g, &(a * e), e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lorentz() -> Matrix3<f64> {
        Matrix3::new(1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0)
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix3::new(4.0, 0.0, 0.0, 0.0, 20.0, -4.0, 0.0, -4.0, 1.0);
        let inv = inverse3(&m).unwrap();
        assert!((m * inv - Matrix3::identity()).abs().max() < 1e-14);
        assert!(inverse3(&Matrix3::new(1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 0.0, 0.0, 1.0)).is_none());
    }

    #[test]
    fn basis_of_null_coordinate_metric() {
        // ∂₂, ∂₃ are null; the basis needs the pair-sum fallback
        let g = lorentz();
        let b = PseudoBasis::new(&g).unwrap();
        assert_eq!(b.negative_count(), 1);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { b.signs[i] } else { 0.0 };
                assert!((inner(&g, &b.vectors[i], &b.vectors[j]) - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn metric_trace_is_matrix_trace() {
        let g: Matrix3<f64> = Matrix3::new(5.0, 0.0, 2.0, 0.0, 1.0, 0.0, 2.0, 0.0, -1.0);
        let a = Matrix3::new(1.0, 2.0, 3.0, -1.0, 0.5, 4.0, 0.0, 1.0, 2.0);
        let b = PseudoBasis::new(&g).unwrap();
        assert!((b.trace(&g, &a) - a.trace()).abs() < 1e-13);
    }

    #[test]
    fn complement_is_orthogonal() {
        let g: Matrix3<f64> = Matrix3::new(5.0, 0.0, 2.0, 0.0, 1.0, 0.0, 2.0, 0.0, -1.0);
        let gi = inverse3(&g).unwrap();
        let a = Vector3::new(1.0, 0.5, 0.0);
        let b = Vector3::new(0.0, 1.0, 2.0);
        let w = orthogonal_complement(&gi, &a, &b);
        assert!(inner(&g, &w, &a).abs() < 1e-13);
        assert!(inner(&g, &w, &b).abs() < 1e-13);
        assert!(euclid_norm(&w) > 0.1);
    }
}
