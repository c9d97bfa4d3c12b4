//! Dense complex operator substrate.
//!
//! Every operator in the crate is an [`OperatorMatrix`]: a square matrix of
//! `Complex64` entries. Tensor products use lexicographic basis ordering with
//! mode 0 varying slowest, so the flat index of an occupation tuple
//! `(n_0, ..., n_{K-1})` is `((n_0 * d_1 + n_1) * d_2 + n_2) ...`.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{GameError, Result};

/// Default relative tolerance for decomposition residuals.
pub const DECOMPOSITION_TOL: f64 = 1e-10;
/// Default absolute tolerance for algebraic identities at small dimension.
pub const ALGEBRA_TOL: f64 = 1e-12;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    inner: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "operator dimension must be at least 1");
        Self {
            inner: DMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 1, "operator dimension must be at least 1");
        Self {
            inner: DMatrix::identity(dim, dim),
        }
    }

    pub fn from_matrix(inner: DMatrix<Complex64>) -> Result<Self> {
        if inner.nrows() != inner.ncols() || inner.nrows() == 0 {
            return Err(GameError::Dimension(format!(
                "operator must be square and non-empty, got {}x{}",
                inner.nrows(),
                inner.ncols()
            )));
        }
        if inner.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(GameError::Params("operator entries must be finite".into()));
        }
        Ok(Self { inner })
    }

    /// Builds from row-major entries.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(GameError::Dimension("operator rows must form a square".into()));
        }
        if dim == 0 {
            return Err(GameError::Dimension("operator must be non-empty".into()));
        }
        Self::from_matrix(DMatrix::from_fn(dim, dim, |i, j| rows[i][j]))
    }

    pub fn from_real_diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.inner[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.inner[(row, col)] = value;
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn adjoint(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            inner: &self.inner * factor,
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        self.inner.trace()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.inner.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.inner[(i, j)] == Complex64::new(0.0, 0.0)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_same_dim(self, other)?;
        Ok(Self {
            inner: &self.inner * &other.inner,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_same_dim(self, other)?;
        Ok(Self {
            inner: &self.inner + &other.inner,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_same_dim(self, other)?;
        Ok(Self {
            inner: &self.inner - &other.inner,
        })
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        if v.len() != self.dim() {
            return Err(GameError::Dimension(format!(
                "vector length {} does not match operator dimension {}",
                v.len(),
                self.dim()
            )));
        }
        Ok(&self.inner * v)
    }

    /// Keeps only the rows and columns listed in `indices`, in that order.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(GameError::Dimension("restriction to an empty index set".into()));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.dim()) {
            return Err(GameError::Dimension(format!(
                "index {bad} out of range for dimension {}",
                self.dim()
            )));
        }
        let k = indices.len();
        Ok(Self {
            inner: DMatrix::from_fn(k, k, |i, j| self.inner[(indices[i], indices[j])]),
        })
    }

    /// Largest entry magnitude over the rows and columns in `indices`.
    pub fn max_abs_on(&self, indices: &[usize]) -> f64 {
        let mut worst = 0.0_f64;
        for &i in indices {
            for &j in indices {
                worst = worst.max(self.inner[(i, j)].norm());
            }
        }
        worst
    }

    /// Kronecker product `self ⊗ other` with `self` as the slow index.
    pub fn kron(&self, other: &Self) -> Self {
        Self {
            inner: self.inner.kronecker(&other.inner),
        }
    }
}

fn check_same_dim(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(GameError::Dimension(format!(
            "operator dimensions differ: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(())
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: Self) -> OperatorMatrix {
        self.try_add(rhs).expect("operator dimensions differ")
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: Self) -> OperatorMatrix {
        self.try_sub(rhs).expect("operator dimensions differ")
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: Self) -> OperatorMatrix {
        self.try_mul(rhs).expect("operator dimensions differ")
    }
}

impl Neg for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn neg(self) -> OperatorMatrix {
        OperatorMatrix {
            inner: -&self.inner,
        }
    }
}

/// `ab - ba`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    check_same_dim(a, b)?;
    let ab = &a.inner * &b.inner;
    let ba = &b.inner * &a.inner;
    Ok(OperatorMatrix { inner: ab - ba })
}

/// Largest deviation `|a[i][j] - conj(a[j][i])|`.
pub fn hermitian_asymmetry(a: &OperatorMatrix) -> f64 {
    let n = a.dim();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a.inner[(i, j)] - a.inner[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn is_hermitian(a: &OperatorMatrix, tol: f64) -> bool {
    hermitian_asymmetry(a) <= tol
}

/// Spectrum and orthonormal eigenvectors of a Hermitian operator.
///
/// `values` are ascending; column `i` of `vectors` belongs to `values[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

impl EigenSystem {
    pub fn vector(&self, i: usize) -> DVector<Complex64> {
        self.vectors.column(i).into_owned()
    }

    /// `‖a − V·diag(values)·V†‖_max`.
    pub fn reconstruction_residual(&self, a: &OperatorMatrix) -> f64 {
        let n = self.values.len();
        let d = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(self.values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let rebuilt = &self.vectors * d * self.vectors.adjoint();
        (a.as_matrix() - rebuilt)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `‖V†V − I‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.values.len();
        let g = self.vectors.adjoint() * &self.vectors - DMatrix::<Complex64>::identity(n, n);
        g.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Eigen-decomposition of a Hermitian operator.
///
/// Eigenvalues come back ascending. Each eigenvector is rephased so that its
/// largest-magnitude component (first one on ties) is real positive. Exactly
/// diagonal input is read off without iteration.
pub fn hermitian_eigensystem(a: &OperatorMatrix, tol: f64) -> Result<EigenSystem> {
    let max_asymmetry = hermitian_asymmetry(a);
    if max_asymmetry > tol {
        return Err(GameError::NotHermitian { max_asymmetry });
    }
    let n = a.dim();

    let (raw_values, raw_vectors): (Vec<f64>, DMatrix<Complex64>) = if a.is_diagonal() {
        (
            (0..n).map(|i| a.inner[(i, i)].re).collect(),
            DMatrix::identity(n, n),
        )
    } else {
        let eig = a.inner.clone().symmetric_eigen();
        (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
    };

    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort keeps the original order for exact ties.
    order.sort_by(|&x, &y| raw_values[x].total_cmp(&raw_values[y]));

    let values = order.iter().map(|&k| raw_values[k]).collect();
    let mut vectors = DMatrix::<Complex64>::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let v = raw_vectors.column(k);
        let mut pivot = 0;
        let mut best = -1.0;
        for (i, z) in v.iter().enumerate() {
            // Ignore differences at roundoff level when picking the pivot.
            if z.norm() > best * (1.0 + 1e-12) {
                best = z.norm();
                pivot = i;
            }
        }
        let phase = if best > 0.0 {
            v[pivot].conj() / best
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            let z = v[i] * phase;
            vectors[(i, col)] = if i == pivot { Complex64::new(z.norm(), 0.0) } else { z };
        }
    }
    Ok(EigenSystem { values, vectors })
}

/// Largest singular value.
pub fn spectral_norm(a: &OperatorMatrix) -> f64 {
    if a.max_abs() == 0.0 {
        return 0.0;
    }
    a.inner
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// `I ⊗ … ⊗ a ⊗ … ⊗ I` with `a` acting on factor `mode`.
pub fn embed_mode(a: &OperatorMatrix, mode: usize, mode_dims: &[usize]) -> Result<OperatorMatrix> {
    if mode >= mode_dims.len() {
        return Err(GameError::Dimension(format!(
            "mode {mode} out of range for {} modes",
            mode_dims.len()
        )));
    }
    if mode_dims.contains(&0) {
        return Err(GameError::Dimension("mode dimensions must be positive".into()));
    }
    if a.dim() != mode_dims[mode] {
        return Err(GameError::Dimension(format!(
            "operator dimension {} does not match mode {mode} dimension {}",
            a.dim(),
            mode_dims[mode]
        )));
    }
    let before: usize = mode_dims[..mode].iter().product();
    let after: usize = mode_dims[mode + 1..].iter().product();
    let left = OperatorMatrix::identity(before);
    let right = OperatorMatrix::identity(after);
    Ok(left.kron(a).kron(&right))
}

/// Flat index of an occupation tuple in the lexicographic product basis.
pub fn flat_index(tuple: &[usize], mode_dims: &[usize]) -> usize {
    tuple
        .iter()
        .zip(mode_dims)
        .fold(0, |acc, (&n, &d)| acc * d + n)
}

/// Inverse of [`flat_index`].
pub fn occupation_tuple(mut index: usize, mode_dims: &[usize]) -> Vec<usize> {
    let mut tuple = vec![0; mode_dims.len()];
    for (slot, &d) in tuple.iter_mut().zip(mode_dims).rev() {
        *slot = index % d;
        index /= d;
    }
    tuple
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn half_pauli() -> [OperatorMatrix; 3] {
        // κ = 1/2 doublet in μ-ascending order (μ = −1/2, +1/2).
        let s1 = OperatorMatrix::from_rows(&[vec![c(0., 0.), c(0.5, 0.)], vec![c(0.5, 0.), c(0., 0.)]])
            .unwrap();
        let s2 = OperatorMatrix::from_rows(&[vec![c(0., 0.), c(0., 0.5)], vec![c(0., -0.5), c(0., 0.)]])
            .unwrap();
        let s3 = OperatorMatrix::from_real_diagonal(&[-0.5, 0.5]);
        [s1, s2, s3]
    }

    #[test]
    fn identity_and_self_commute() {
        let [s1, s2, _] = half_pauli();
        let a = &s1 + &s2.scale(c(0.3, 0.7));
        assert_eq!(commutator(&OperatorMatrix::identity(2), &a).unwrap().max_abs(), 0.0);
        assert_eq!(commutator(&a, &a).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn doublet_commutator_by_hand() {
        // [s1, s2] entries by hand: s1·s2 = [[−i/4, 0], [0, i/4]], s2·s1 = [[i/4, 0], [0, −i/4]].
        let [s1, s2, s3] = half_pauli();
        let comm = commutator(&s1, &s2).unwrap();
        let expected = OperatorMatrix::from_rows(&[vec![c(0., -0.5), c(0., 0.)], vec![c(0., 0.), c(0., 0.5)]])
            .unwrap();
        assert!((&comm - &expected).max_abs() < 1e-15);
        assert!((&comm - &s3.scale(I)).max_abs() < 1e-15);
    }

    #[test]
    fn commutator_dimension_mismatch() {
        let err = commutator(&OperatorMatrix::identity(2), &OperatorMatrix::identity(3)).unwrap_err();
        assert!(matches!(err, GameError::Dimension(_)));
    }

    #[test]
    fn hermiticity_checks() {
        assert!(is_hermitian(&OperatorMatrix::from_real_diagonal(&[0., 1., 2.]), 0.0));
        let mut raise = OperatorMatrix::zeros(3);
        raise.set(1, 0, c(1., 0.));
        raise.set(2, 1, c(2f64.sqrt(), 0.));
        assert!(!is_hermitian(&raise, 1e-12));
        assert!(is_hermitian(&(&raise + &raise.adjoint()), 1e-12));
    }

    #[test]
    fn diagonal_eigensystem() {
        let es = hermitian_eigensystem(&OperatorMatrix::from_real_diagonal(&[3., 1., 2.]), 0.0).unwrap();
        assert_eq!(es.values, vec![1., 2., 3.]);
        assert_eq!(es.vectors[(1, 0)], c(1., 0.));
        assert_eq!(es.vectors[(2, 1)], c(1., 0.));
        assert_eq!(es.vectors[(0, 2)], c(1., 0.));
    }

    #[test]
    fn doublet_rotated_payoff_spectrum() {
        // Closed form for 2x2 Hermitian [[a, b], [b*, d]]: (a+d)/2 ± sqrt(((a−d)/2)² + |b|²).
        let [s1, s2, _] = half_pauli();
        for op in [&s1, &s2] {
            let (a, d, b) = (op.get(0, 0).re, op.get(1, 1).re, op.get(0, 1));
            let mid = (a + d) / 2.0;
            let rad = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
            let es = hermitian_eigensystem(op, 1e-12).unwrap();
            assert!((es.values[0] - (mid - rad)).abs() < 1e-14);
            assert!((es.values[1] - (mid + rad)).abs() < 1e-14);
            assert!((es.values[0] + 0.5).abs() < 1e-14);
            assert!(es.reconstruction_residual(op) < 1e-14);
        }
    }

    #[test]
    fn eigenvector_phase_convention() {
        let [s1, s2, _] = half_pauli();
        let op = &s1 + &s2;
        let es = hermitian_eigensystem(&op, 1e-12).unwrap();
        for k in 0..2 {
            let v = es.vector(k);
            let top = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let pivot = v.iter().position(|z| z.norm() >= top * (1.0 - 1e-12)).unwrap();
            assert!(v[pivot].im.abs() < 1e-15 && v[pivot].re > 0.0);
        }
    }

    #[test]
    fn non_hermitian_rejected_with_asymmetry() {
        let mut m = OperatorMatrix::zeros(2);
        m.set(1, 0, c(1., 0.));
        match hermitian_eigensystem(&m, 1e-12) {
            Err(GameError::NotHermitian { max_asymmetry }) => assert_eq!(max_asymmetry, 1.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn embed_single_mode_is_identity_map() {
        let [s1, ..] = half_pauli();
        assert_eq!(embed_mode(&s1, 0, &[2]).unwrap(), s1);
    }

    #[test]
    fn embedded_trace_identity() {
        // Brute-force 6x6: embed(a, 0, [2, 3])[(i*3+k, j*3+l)] = a[i][j]·δ_kl.
        let a = OperatorMatrix::from_rows(&[vec![c(1., 2.), c(3., 0.)], vec![c(-1., 1.), c(0.5, 0.)]])
            .unwrap();
        let big = embed_mode(&a, 0, &[2, 3]).unwrap();
        for row in 0..6 {
            for col in 0..6 {
                let expected = if row % 3 == col % 3 { a.get(row / 3, col / 3) } else { c(0., 0.) };
                assert_eq!(big.get(row, col), expected);
            }
        }
        assert_eq!(big.trace(), a.trace() * 3.0);
    }

    #[test]
    fn embed_rejects_bad_mode() {
        let a = OperatorMatrix::identity(2);
        assert!(matches!(embed_mode(&a, 2, &[2, 2]), Err(GameError::Dimension(_))));
        assert!(matches!(embed_mode(&a, 1, &[2, 3]), Err(GameError::Dimension(_))));
    }

    #[test]
    fn spectral_norms() {
        assert_eq!(spectral_norm(&OperatorMatrix::zeros(3)), 0.0);
        // Raising operator on 4 levels: A†A = diag(1, 2, 3, 0), so σ_max = √3.
        let mut raise = OperatorMatrix::zeros(4);
        for n in 0..3 {
            raise.set(n + 1, n, c(((n + 1) as f64).sqrt(), 0.));
        }
        let ata = &raise.adjoint() * &raise;
        let oracle = (0..4).map(|i| ata.get(i, i).re).fold(0.0, f64::max).sqrt();
        assert!((spectral_norm(&raise) - oracle).abs() < 1e-12);
        assert!((spectral_norm(&raise) - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn flat_index_roundtrip() {
        let dims = [2, 3, 4];
        for idx in 0..24 {
            assert_eq!(flat_index(&occupation_tuple(idx, &dims), &dims), idx);
        }
        assert_eq!(occupation_tuple(5, &dims), vec![0, 1, 1]);
    }

    #[test]
    fn restrict_picks_rows_and_columns() {
        let m = OperatorMatrix::from_real_diagonal(&[1., 2., 3.]);
        assert_eq!(m.restrict(&[2, 0]).unwrap(), OperatorMatrix::from_real_diagonal(&[3., 1.]));
        assert!(m.restrict(&[3]).is_err());
    }
}
