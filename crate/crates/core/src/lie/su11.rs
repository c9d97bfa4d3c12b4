use num_complex::Complex64;

use crate::error::{GameError, Result};
use crate::fock::{build_ladder, build_number, FockSpace};
use crate::operator::{OperatorMatrix, I};
use crate::space::{format_half, GameSpace};

/// Side from which the `π₃` spectrum of a discrete-series irrep is bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Below,
    Above,
}

impl Bound {
    pub fn as_str(self) -> &'static str {
        match self {
            Bound::Below => "below",
            Bound::Above => "above",
        }
    }
}

impl std::str::FromStr for Bound {
    type Err = GameError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "below" => Ok(Bound::Below),
            "above" => Ok(Bound::Above),
            other => Err(GameError::Params(format!("bound must be 'below' or 'above', got '{other}'"))),
        }
    }
}

/// Truncated discrete-series irrep of su(1,1).
///
/// Relations: `[π₁,π₂] = −iπ₃`, `[π₂,π₃] = iπ₁`, `[π₃,π₁] = iπ₂`, with
/// Casimir `−π₁² − π₂² + π₃² = κ(κ+1)`. The extreme weight is
/// `μ₀ = ±(κ+1)`; the textbook Bargmann index is `k = κ+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Su11Irrep {
    pub kappa: f64,
    pub bound: Bound,
    pub pi1: OperatorMatrix,
    pub pi2: OperatorMatrix,
    pub pi3: OperatorMatrix,
    pub mu0: f64,
}

impl Su11Irrep {
    pub fn truncation_dim(&self) -> usize {
        self.pi3.dim()
    }

    pub fn generators(&self) -> [&OperatorMatrix; 3] {
        [&self.pi1, &self.pi2, &self.pi3]
    }

    /// All levels except the last, where the truncated step operator is cut.
    pub fn interior(&self) -> Vec<usize> {
        (0..self.truncation_dim() - 1).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.truncation_dim())
            .map(|k| format!("κ={},μ={}", format_half(self.kappa), format_half(self.pi3.get(k, k).re)))
            .collect()
    }

    pub fn game_space(&self) -> GameSpace {
        GameSpace::new(
            format!(
                "su11 κ={} bound={} truncation={}",
                format_half(self.kappa),
                self.bound.as_str(),
                self.truncation_dim()
            ),
            self.labels(),
            self.interior(),
        )
    }
}

/// Builds the bounded irrep on `truncation_dim` levels.
///
/// With `K± = π₁ ± iπ₂` and `K₋|μ₀⟩ = 0`, the relation `[K₊, K₋] = −2π₃`
/// gives `|⟨μ₀+n+1|K₊|μ₀+n⟩|² = (n+1)(n+2μ₀) = (n+1)(n+2κ+2)`, which is
/// non-negative for every n iff κ ≥ −1.
pub fn build_su11_irrep(kappa: f64, bound: Bound, truncation_dim: usize) -> Result<Su11Irrep> {
    if truncation_dim < 2 {
        return Err(GameError::Dimension(format!(
            "su(1,1) truncation needs at least 2 levels, got {truncation_dim}"
        )));
    }
    if !kappa.is_finite() {
        return Err(GameError::Representation("κ must be finite".into()));
    }
    let mu0 = kappa + 1.0;
    let mut raise = OperatorMatrix::zeros(truncation_dim);
    for n in 0..truncation_dim - 1 {
        let nf = n as f64;
        let sq = (nf + 1.0) * (nf + 2.0 * mu0);
        if sq < 0.0 {
            return Err(GameError::Representation(format!(
                "κ = {kappa} is not unitarizable: squared step coefficient {sq} at level {n}"
            )));
        }
        raise.set(n + 1, n, Complex64::new(sq.sqrt(), 0.0));
    }
    let lower = raise.adjoint();
    let pi1 = (&raise + &lower).scale_real(0.5);
    let pi2 = (&raise - &lower).scale(-I * 0.5);
    let mu: Vec<f64> = (0..truncation_dim).map(|n| mu0 + n as f64).collect();
    let pi3 = OperatorMatrix::from_real_diagonal(&mu);

    Ok(match bound {
        Bound::Below => Su11Irrep {
            kappa,
            bound,
            pi1,
            pi2,
            pi3,
            mu0,
        },
        // μ → −μ: flip π₃ and π₂, keep π₁.
        Bound::Above => Su11Irrep {
            kappa,
            bound,
            pi1,
            pi2: -&pi2,
            pi3: -&pi3,
            mu0: -mu0,
        },
    })
}

/// `−π₁² − π₂² + π₃²`.
pub fn su11_casimir(rep: &Su11Irrep) -> OperatorMatrix {
    let [a, b, c] = rep.generators();
    &(&(c * c) - &(a * a)) - &(b * b)
}

/// su(1,1) generators realized quadratically on one Fock mode.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleModeSu11 {
    pub k1: OperatorMatrix,
    pub k2: OperatorMatrix,
    pub k3: OperatorMatrix,
}

impl SingleModeSu11 {
    pub fn generators(&self) -> [&OperatorMatrix; 3] {
        [&self.k1, &self.k2, &self.k3]
    }

    /// Levels `0..=n_max−2`; the quadratic step operators leak two levels.
    pub fn interior(&self) -> Vec<usize> {
        (0..self.k3.dim() - 2).collect()
    }
}

/// `k₊ = a₊²/2`, `k₋ = a₋²/2`, `k₃ = (2N+1)/4`, combined into
/// `k₁ = (k₊+k₋)/2` and `k₂ = (k₊−k₋)/(2i)`.
///
/// Even and odd levels carry the irreps with lowest `k₃` weights 1/4 and
/// 3/4.
pub fn single_mode_su11(space: FockSpace) -> Result<SingleModeSu11> {
    if space.dim() < 4 {
        return Err(GameError::Dimension(format!(
            "the single-mode realization needs dim >= 4, got {}",
            space.dim()
        )));
    }
    let ladder = build_ladder(space);
    let k_plus = (&ladder.a_plus * &ladder.a_plus).scale_real(0.5);
    let k_minus = (&ladder.a_minus * &ladder.a_minus).scale_real(0.5);
    let n = build_number(space);
    let k3 = (&n.scale_real(2.0) + &OperatorMatrix::identity(space.dim())).scale_real(0.25);
    Ok(SingleModeSu11 {
        k1: (&k_plus + &k_minus).scale_real(0.5),
        k2: (&k_plus - &k_minus).scale(-I * 0.5),
        k3,
    })
}
