use num_complex::Complex64;

use crate::error::{GameError, Result};
use crate::operator::{hermitian_asymmetry, hermitian_eigensystem, OperatorMatrix};
use crate::space::{GameSpace, GameState};

/// Largest imaginary part tolerated in the expectation of a Hermitian operator.
pub const IMAGINARY_RESIDUAL_TOL: f64 = 1e-10;
/// Variances at or below this are treated as zero when forming correlations.
pub const ZERO_VARIANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralWeight {
    pub value: f64,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorStats {
    pub name: String,
    pub expectation: f64,
    pub variance: f64,
    pub imaginary_residual: f64,
    /// Eigenvalue/probability table of the operator in the state.
    pub distribution: Vec<SpectralWeight>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairStats {
    pub first: String,
    pub second: String,
    /// `½⟨AB + BA⟩ − ⟨A⟩⟨B⟩`.
    pub covariance: f64,
    /// `None` when either marginal has zero variance.
    pub correlation: Option<f64>,
    /// `Im⟨[A, B]⟩`; the real part vanishes for Hermitian A, B.
    pub commutator_expectation: f64,
    pub uncertainty_product: f64,
    pub robertson_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportContext {
    pub space: String,
    pub dim: usize,
    pub interior_dim: usize,
    /// Total probability on levels outside the exact interior.
    pub boundary_weight: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementReport {
    pub operators: Vec<OperatorStats>,
    pub pairs: Vec<PairStats>,
    pub context: ReportContext,
}

impl MeasurementReport {
    pub fn operator(&self, name: &str) -> Option<&OperatorStats> {
        self.operators.iter().find(|o| o.name == name)
    }

    pub fn pair(&self, first: &str, second: &str) -> Option<&PairStats> {
        self.pairs.iter().find(|p| p.first == first && p.second == second)
    }
}

/// Expectations, variances and pairwise statistics of Hermitian operators.
///
/// `tol` bounds the Hermiticity defect accepted for each operator.
pub fn measure(
    space: &GameSpace,
    state: &GameState,
    operators: &[(&str, &OperatorMatrix)],
    tol: f64,
) -> Result<MeasurementReport> {
    if state.dim() != space.dim() {
        return Err(GameError::Dimension(format!(
            "state dimension {} does not match space dimension {}",
            state.dim(),
            space.dim()
        )));
    }
    let psi = state.amplitudes();
    let mut images = Vec::with_capacity(operators.len());
    let mut singles = Vec::with_capacity(operators.len());
    for &(name, op) in operators {
        if op.dim() != state.dim() {
            return Err(GameError::Dimension(format!(
                "operator '{name}' has dimension {} but the state has {}",
                op.dim(),
                state.dim()
            )));
        }
        let max_asymmetry = hermitian_asymmetry(op);
        if max_asymmetry > tol {
            return Err(GameError::NotHermitian { max_asymmetry });
        }
        let image = op.apply(psi)?;
        let mean = psi.dotc(&image);
        if mean.im.abs() > IMAGINARY_RESIDUAL_TOL {
            return Err(GameError::NotHermitian {
                max_asymmetry: mean.im.abs(),
            });
        }
        // Centering before squaring keeps eigenstate variances at rounding level.
        let centered = &image - psi * Complex64::new(mean.re, 0.0);
        let variance = centered.norm_squared();

        let eig = hermitian_eigensystem(op, tol)?;
        let mut distribution: Vec<SpectralWeight> = Vec::new();
        for (k, &value) in eig.values.iter().enumerate() {
            let probability = eig.vector(k).dotc(psi).norm_sqr();
            match distribution.last_mut() {
                Some(last) if (last.value - value).abs() <= 1e-9 * value.abs().max(1.0) => {
                    last.probability += probability;
                }
                _ => distribution.push(SpectralWeight { value, probability }),
            }
        }

        singles.push(OperatorStats {
            name: name.to_string(),
            expectation: mean.re,
            variance,
            imaginary_residual: mean.im.abs(),
            distribution,
        });
        images.push(centered);
    }

    let mut pairs = Vec::new();
    for i in 0..operators.len() {
        for j in i + 1..operators.len() {
            // With δA = A − ⟨A⟩: Re⟨δAψ|δBψ⟩ is the covariance and 2·Im is ⟨[A,B]⟩.
            let ab: Complex64 = images[i].dotc(&images[j]);
            let (a, b) = (&singles[i], &singles[j]);
            let covariance = ab.re;
            let delta_a = a.variance.sqrt();
            let delta_b = b.variance.sqrt();
            let correlation = (a.variance > ZERO_VARIANCE && b.variance > ZERO_VARIANCE)
                .then(|| covariance / (delta_a * delta_b));
            let commutator_expectation = 2.0 * ab.im;
            pairs.push(PairStats {
                first: a.name.clone(),
                second: b.name.clone(),
                covariance,
                correlation,
                commutator_expectation,
                uncertainty_product: delta_a * delta_b,
                robertson_bound: commutator_expectation.abs() / 2.0,
            });
        }
    }

    let boundary_weight = space.boundary().iter().map(|&i| psi[i].norm_sqr()).sum();
    Ok(MeasurementReport {
        operators: singles,
        pairs,
        context: ReportContext {
            space: space.description().to_string(),
            dim: space.dim(),
            interior_dim: space.interior().len(),
            boundary_weight,
            tolerance: tol,
        },
    })
}
