//! The single-mode minimal arbiter: a truncated round-number (Fock) space
//! with counting operator `N`, step operators `a₊`/`a₋`, and the two linear
//! payoff operators built from them.
//!
//! Truncating at `n_max` breaks `[a₋, a₊] = 1` on the top level only. Every
//! algebraic check in this module is therefore stated on the interior
//! subspace, the levels `0..n_max`.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{GameError, Result};
use crate::operator::{hermitian_asymmetry, OperatorMatrix, I};
use crate::space::{GameSpace, GameState, LEAK_TOL};

/// Round-number basis `|0⟩ … |n_max⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    n_max: usize,
}

impl FockSpace {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(GameError::Dimension(
                "a Fock space needs at least the ground level and one round (n_max >= 1)".into(),
            ));
        }
        Ok(Self { n_max })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    pub fn interior_dim(&self) -> usize {
        self.n_max
    }

    /// Levels where the untruncated ladder algebra holds exactly.
    pub fn interior(&self) -> Vec<usize> {
        (0..self.interior_dim()).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim()).map(|n| format!("n={n}")).collect()
    }

    pub fn game_space(&self) -> GameSpace {
        GameSpace::new(
            format!("fock n_max={}", self.n_max),
            self.labels(),
            self.interior(),
        )
    }
}

/// Payoff units `κ₁`, `κ₂` of the two players.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayoffUnits {
    kappa1: f64,
    kappa2: f64,
}

impl PayoffUnits {
    pub fn new(kappa1: f64, kappa2: f64) -> Result<Self> {
        for (name, k) in [("kappa1", kappa1), ("kappa2", kappa2)] {
            if !(k.is_finite() && k > 0.0) {
                return Err(GameError::Params(format!("{name} must be finite and > 0, got {k}")));
            }
        }
        Ok(Self { kappa1, kappa2 })
    }

    pub fn kappa1(&self) -> f64 {
        self.kappa1
    }

    pub fn kappa2(&self) -> f64 {
        self.kappa2
    }
}

impl Default for PayoffUnits {
    fn default() -> Self {
        Self {
            kappa1: 1.0,
            kappa2: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ladder {
    pub a_plus: OperatorMatrix,
    pub a_minus: OperatorMatrix,
}

/// `a₊|n⟩ = √(n+1)|n+1⟩` below the cutoff and `a₋ = a₊†`.
pub fn build_ladder(space: FockSpace) -> Ladder {
    let mut a_plus = OperatorMatrix::zeros(space.dim());
    for n in 0..space.n_max() {
        a_plus.set(n + 1, n, Complex64::new(((n + 1) as f64).sqrt(), 0.0));
    }
    let a_minus = a_plus.adjoint();
    Ladder { a_plus, a_minus }
}

/// `N = a₊a₋ = diag(0, 1, …, n_max)`.
pub fn build_number(space: FockSpace) -> OperatorMatrix {
    let ladder = build_ladder(space);
    &ladder.a_plus * &ladder.a_minus
}

#[derive(Debug, Clone, PartialEq)]
pub struct Payoffs {
    pub pi1: OperatorMatrix,
    pub pi2: OperatorMatrix,
}

/// `π₁ = κ₁(a₊ + a₋)/√2`, `π₂ = iκ₂(a₊ − a₋)/√2`.
///
/// The sign of `π₂` fixes `[π₁, π₂] = +iκ₁κ₂` on the interior.
pub fn build_payoffs(space: FockSpace, units: PayoffUnits) -> Payoffs {
    let Ladder { a_plus, a_minus } = build_ladder(space);
    let pi1 = (&a_plus + &a_minus).scale_real(units.kappa1 * FRAC_1_SQRT_2);
    let pi2 = (&a_plus - &a_minus).scale(I * (units.kappa2 * FRAC_1_SQRT_2));
    Payoffs { pi1, pi2 }
}

/// Inverse of [`build_payoffs`]: `a± = (π₁/κ₁ ∓ iπ₂/κ₂)/√2`.
pub fn ladder_from_payoffs(payoffs: &Payoffs, units: PayoffUnits) -> Result<Ladder> {
    let x = payoffs.pi1.scale_real(FRAC_1_SQRT_2 / units.kappa1);
    let y = payoffs.pi2.scale(I * (FRAC_1_SQRT_2 / units.kappa2));
    Ok(Ladder {
        a_plus: x.try_sub(&y)?,
        a_minus: x.try_add(&y)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyProduct {
    pub delta1: f64,
    pub delta2: f64,
    pub product: f64,
    /// `|⟨[π₁, π₂]⟩| / 2`.
    pub bound: f64,
}

/// Standard deviations of two Hermitian payoffs and their Robertson bound.
///
/// The top level of the state's space is the truncation boundary; a state
/// with amplitude there is rejected because the bound would not be the
/// untruncated one.
pub fn uncertainty_product(
    pi1: &OperatorMatrix,
    pi2: &OperatorMatrix,
    state: &GameState,
) -> Result<UncertaintyProduct> {
    if pi1.dim() != state.dim() || pi2.dim() != state.dim() {
        return Err(GameError::Dimension(format!(
            "operators ({}, {}) do not match state dimension {}",
            pi1.dim(),
            pi2.dim(),
            state.dim()
        )));
    }
    for op in [pi1, pi2] {
        let max_asymmetry = hermitian_asymmetry(op);
        if max_asymmetry > 1e-10 {
            return Err(GameError::NotHermitian { max_asymmetry });
        }
    }
    let top = state.dim() - 1;
    let leak = state.amplitudes()[top].norm();
    if leak > LEAK_TOL {
        return Err(GameError::Truncation {
            level: top,
            amplitude: leak,
        });
    }

    let psi = state.amplitudes();
    let v1 = pi1.apply(psi)?;
    let v2 = pi2.apply(psi)?;
    let mean1 = psi.dotc(&v1).re;
    let mean2 = psi.dotc(&v2).re;
    // ⟨π²⟩ = ‖πψ‖² for Hermitian π.
    let delta1 = (v1.norm_squared() - mean1 * mean1).max(0.0).sqrt();
    let delta2 = (v2.norm_squared() - mean2 * mean2).max(0.0).sqrt();
    // ⟨[π₁, π₂]⟩ = ⟨π₁ψ|π₂ψ⟩ − ⟨π₂ψ|π₁ψ⟩.
    let comm = v1.dotc(&v2) - v2.dotc(&v1);
    Ok(UncertaintyProduct {
        delta1,
        delta2,
        product: delta1 * delta2,
        bound: comm.norm() / 2.0,
    })
}

/// Normalized superposition of round-number states for the decay betting
/// game.
pub fn decay_game_state(space: FockSpace, weights: &[(usize, Complex64)]) -> Result<GameState> {
    let mut amplitudes = DVector::zeros(space.dim());
    for &(level, amp) in weights {
        if level >= space.dim() {
            return Err(GameError::Dimension(format!(
                "level {level} beyond n_max {}",
                space.n_max()
            )));
        }
        amplitudes[level] += amp;
    }
    GameState::normalized(amplitudes)
}
