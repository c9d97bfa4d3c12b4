use num_complex::Complex64;

use super::HalfInteger;
use crate::error::Result;
use crate::operator::{OperatorMatrix, I};
use crate::space::{format_half, GameSpace};

/// Spin-κ irrep with basis `|κ,μ⟩`, μ ascending from −κ to κ.
///
/// Condon–Shortley phases: `π₁ ± iπ₂` have real non-negative entries
/// `√((κ∓μ)(κ±μ+1))`. `π₃` is the diagonal payoff.
#[derive(Debug, Clone, PartialEq)]
pub struct Su2Irrep {
    pub kappa: HalfInteger,
    pub pi1: OperatorMatrix,
    pub pi2: OperatorMatrix,
    pub pi3: OperatorMatrix,
}

impl Su2Irrep {
    pub fn new(kappa: HalfInteger) -> Self {
        let tk = kappa.twice() as i64;
        let dim = (tk + 1) as usize;
        let mut raise = OperatorMatrix::zeros(dim);
        for k in 0..dim - 1 {
            let tm = -tk + 2 * k as i64;
            // (κ−μ)(κ+μ+1) = (tk−tm)(tk+tm+2)/4, exact in integers.
            let sq = ((tk - tm) * (tk + tm + 2)) as f64 / 4.0;
            raise.set(k + 1, k, Complex64::new(sq.sqrt(), 0.0));
        }
        let lower = raise.adjoint();
        let pi1 = (&raise + &lower).scale_real(0.5);
        let pi2 = (&raise - &lower).scale(-I * 0.5);
        let mu: Vec<f64> = (0..dim).map(|k| (-tk + 2 * k as i64) as f64 / 2.0).collect();
        Self {
            kappa,
            pi1,
            pi2,
            pi3: OperatorMatrix::from_real_diagonal(&mu),
        }
    }

    pub fn dim(&self) -> usize {
        self.kappa.twice() as usize + 1
    }

    pub fn generators(&self) -> [&OperatorMatrix; 3] {
        [&self.pi1, &self.pi2, &self.pi3]
    }

    pub fn mu_values(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.pi3.get(k, k).re).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.mu_values()
            .into_iter()
            .map(|mu| format!("κ={},μ={}", self.kappa, format_half(mu)))
            .collect()
    }

    pub fn game_space(&self) -> GameSpace {
        GameSpace::new(
            format!("su2 κ={}", self.kappa),
            self.labels(),
            (0..self.dim()).collect(),
        )
    }
}

/// Builds the irrep for a κ given as a float; non-half-integers are rejected.
pub fn build_su2_irrep(kappa: f64) -> Result<Su2Irrep> {
    Ok(Su2Irrep::new(HalfInteger::try_from_f64(kappa)?))
}

/// `π₁² + π₂² + π₃²`.
pub fn su2_casimir(rep: &Su2Irrep) -> OperatorMatrix {
    let [a, b, c] = rep.generators();
    &(&(a * a) + &(b * b)) + &(c * c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::GameError;
    use crate::operator::commutator;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn singlet() {
        let rep = build_su2_irrep(0.0).unwrap();
        for g in rep.generators() {
            assert_eq!(g.dim(), 1);
            assert_eq!(g.max_abs(), 0.0);
        }
        assert_eq!(su2_casimir(&rep).max_abs(), 0.0);
    }

    #[test]
    fn doublet_spectrum() {
        let rep = build_su2_irrep(0.5).unwrap();
        assert_eq!(rep.mu_values(), vec![-0.5, 0.5]);
        let cas = su2_casimir(&rep);
        assert!((&cas - &OperatorMatrix::identity(2).scale_real(0.75)).max_abs() < 1e-15);
    }

    #[test]
    fn spin_one_by_hand() {
        // Oracle: J₊ = [[0,0,0],[√2,0,0],[0,√2,0]] in μ = −1, 0, 1 order.
        let r2 = 2f64.sqrt();
        let jp = OperatorMatrix::from_rows(&[
            vec![c(0., 0.), c(0., 0.), c(0., 0.)],
            vec![c(r2, 0.), c(0., 0.), c(0., 0.)],
            vec![c(0., 0.), c(r2, 0.), c(0., 0.)],
        ])
        .unwrap();
        let jm = jp.adjoint();
        let x = (&jp + &jm).scale_real(0.5);
        let y = (&jp - &jm).scale(c(0., -0.5));
        let z = OperatorMatrix::from_real_diagonal(&[-1., 0., 1.]);
        let lhs = &(&x * &y) - &(&y * &x);
        assert!((&lhs - &z.scale(I)).max_abs() < 1e-15);

        let rep = build_su2_irrep(1.0).unwrap();
        assert!((&rep.pi1 - &x).max_abs() < 1e-15);
        assert!((&rep.pi2 - &y).max_abs() < 1e-15);
        assert_eq!(rep.pi3, z);
        let comm = commutator(&rep.pi1, &rep.pi2).unwrap();
        assert!((&comm - &rep.pi3.scale(I)).max_abs() <= 1e-12);
    }

    #[test]
    fn casimir_spin_two() {
        let rep = build_su2_irrep(2.0).unwrap();
        let cas = su2_casimir(&rep);
        assert!((&cas - &OperatorMatrix::identity(5).scale_real(6.0)).max_abs() < 1e-13);
    }

    #[test]
    fn rejects_non_half_integer() {
        assert!(matches!(build_su2_irrep(0.3), Err(GameError::Representation(_))));
        assert!(matches!(build_su2_irrep(-0.5), Err(GameError::Representation(_))));
    }

    #[test]
    fn labels() {
        let rep = build_su2_irrep(0.5).unwrap();
        assert_eq!(rep.labels(), vec!["κ=1/2,μ=-1/2", "κ=1/2,μ=1/2"]);
        assert_eq!(rep.game_space().resolve("κ=1/2,μ=−1/2").unwrap(), 0);
    }
}
