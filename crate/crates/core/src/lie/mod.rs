//! SU(2) and SU(1,1) payoff algebras.

mod half;
mod su11;
mod su2;

pub use half::HalfInteger;
pub use su11::{build_su11_irrep, single_mode_su11, su11_casimir, Bound, SingleModeSu11, Su11Irrep};
pub use su2::{build_su2_irrep, su2_casimir, Su2Irrep};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{GameError, Result};
use crate::multimode::{realize_bilinear_normal_ordered, BilinearPayoff, MultiGameSpace};
use crate::operator::{commutator, spectral_norm};

/// `κ = (n₁ + n₂)/2`.
pub fn round_to_kappa(n1: u32, n2: u32) -> HalfInteger {
    HalfInteger::from_twice(n1 + n2)
}

/// Norm of `[π₁, π₂]` after scaling both payoffs by `1/√(κ(κ+1))`, for each
/// requested κ. The exact value is `1/(κ+1)`.
pub fn classical_limit_profile(kappas: &[HalfInteger]) -> Result<Vec<(HalfInteger, f64)>> {
    kappas
        .iter()
        .map(|&kappa| {
            if kappa.twice() == 0 {
                return Err(GameError::Representation(
                    "the singlet has κ(κ+1) = 0 and cannot be rescaled".into(),
                ));
            }
            let rep = Su2Irrep::new(kappa);
            let k = kappa.value();
            let scale = 1.0 / (k * (k + 1.0)).sqrt();
            let comm = commutator(&rep.pi1.scale_real(scale), &rep.pi2.scale_real(scale))?;
            Ok((kappa, spectral_norm(&comm)))
        })
        .collect()
}

/// Pauli matrices over halves: the coefficient matrices whose normal-ordered
/// two-mode realization gives the spin generators.
pub fn pauli_halves() -> [DMatrix<Complex64>; 3] {
    let z = Complex64::new(0.0, 0.0);
    let h = Complex64::new(0.5, 0.0);
    let ih = Complex64::new(0.0, 0.5);
    [
        DMatrix::from_row_slice(2, 2, &[z, h, h, z]),
        DMatrix::from_row_slice(2, 2, &[z, -ih, ih, z]),
        DMatrix::from_row_slice(2, 2, &[h, z, z, -h]),
    ]
}

/// One total-number sector of the two-mode realization.
#[derive(Debug, Clone, PartialEq)]
pub struct SchwingerBlock {
    pub kappa: HalfInteger,
    /// Basis indices of the sector ordered by ascending `μ = (n₁ − n₂)/2`.
    pub indices: Vec<usize>,
    /// Worst entry deviation from the spin-κ irrep, including any coupling
    /// out of the sector.
    pub residual: f64,
}

/// Splits the exact sectors of a two-mode space into spin-κ blocks and
/// compares each against [`Su2Irrep`] with `κ = Σn/2`.
pub fn schwinger_blocks(space: &MultiGameSpace, generators: &[BilinearPayoff; 3]) -> Result<Vec<SchwingerBlock>> {
    if space.modes() != 2 {
        return Err(GameError::Dimension(format!(
            "the two-mode realization needs K=2, got K={}",
            space.modes()
        )));
    }
    for (g, expected) in generators.iter().zip(pauli_halves()) {
        if g.coefficients().shape() != (2, 2)
            || (g.coefficients() - &expected).iter().any(|z| z.norm() > 1e-12)
        {
            return Err(GameError::Coefficient(format!(
                "generator '{}' does not have Pauli/2 coefficients",
                g.name()
            )));
        }
    }
    let ops = generators
        .iter()
        .map(|g| realize_bilinear_normal_ordered(space, g))
        .collect::<Result<Vec<_>>>()?;

    let mut top = space.exact_sector_limit();
    if let Some(c) = space.total_cutoff() {
        top = top.min(c);
    }
    let mut blocks = Vec::with_capacity(top + 1);
    for total in 0..=top {
        let mut indices: Vec<usize> = (0..space.dim())
            .filter(|&i| space.basis()[i].iter().sum::<usize>() == total)
            .collect();
        indices.sort_by_key(|&i| space.basis()[i][0]);
        let kappa = HalfInteger::from_twice(total as u32);
        let rep = Su2Irrep::new(kappa);
        let mut residual = 0.0_f64;
        for (op, reference) in ops.iter().zip(rep.generators()) {
            let block = op.restrict(&indices)?;
            residual = residual.max((&block - reference).max_abs());
            for row in (0..space.dim()).filter(|r| !indices.contains(r)) {
                for &col in &indices {
                    residual = residual.max(op.get(row, col).norm());
                }
            }
        }
        blocks.push(SchwingerBlock {
            kappa,
            indices,
            residual,
        });
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::OperatorMatrix;

    fn pauli_generators() -> [BilinearPayoff; 3] {
        let [a, b, c] = pauli_halves();
        [
            BilinearPayoff::new("pi1", a).unwrap(),
            BilinearPayoff::new("pi2", b).unwrap(),
            BilinearPayoff::new("pi3", c).unwrap(),
        ]
    }

    #[test]
    fn kappa_from_rounds() {
        assert_eq!(round_to_kappa(0, 0), HalfInteger::from_twice(0));
        assert_eq!(round_to_kappa(1, 0).value(), 0.5);
        assert_eq!(round_to_kappa(2, 1).value(), 1.5);
    }

    #[test]
    fn classical_limit_small_kappa() {
        // κ=1/2: [π₁,π₂] = iπ₃ has norm 1/2, scaled by 1/(κ(κ+1)) = 4/3 → 2/3.
        let rows = classical_limit_profile(&[HalfInteger::from_twice(1), HalfInteger::from_twice(2)]).unwrap();
        assert!((rows[0].1 - 2.0 / 3.0).abs() < 1e-12);
        assert!((rows[1].1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn classical_limit_monotone() {
        let kappas: Vec<_> = (1..=20).map(HalfInteger::from_twice).collect();
        let rows = classical_limit_profile(&kappas).unwrap();
        assert!(rows.windows(2).all(|w| w[1].1 < w[0].1));
    }

    #[test]
    fn classical_limit_rejects_singlet() {
        let err = classical_limit_profile(&[HalfInteger::from_twice(0)]).unwrap_err();
        assert!(matches!(err, GameError::Representation(_)));
    }

    #[test]
    fn low_schwinger_sectors() {
        let space = MultiGameSpace::new(vec![3, 3], None).unwrap();
        let blocks = schwinger_blocks(&space, &pauli_generators()).unwrap();
        assert_eq!(blocks.len(), 4);
        assert_eq!(blocks[0].indices.len(), 1);
        assert_eq!(blocks[1].indices.len(), 2);
        assert_eq!(blocks[1].kappa.value(), 0.5);
        assert!(blocks.iter().all(|b| b.residual <= 1e-12));
    }

    #[test]
    fn spin_one_sector_casimir() {
        let space = MultiGameSpace::new(vec![2, 2], None).unwrap();
        let gens = pauli_generators();
        let blocks = schwinger_blocks(&space, &gens).unwrap();
        let sector = &blocks[2].indices;
        assert_eq!(sector.len(), 3);
        let mut casimir = OperatorMatrix::zeros(3);
        for g in &gens {
            let op = realize_bilinear_normal_ordered(&space, g).unwrap().restrict(sector).unwrap();
            casimir = &casimir + &(&op * &op);
        }
        assert!((&casimir - &OperatorMatrix::identity(3).scale_real(2.0)).max_abs() < 1e-13);
    }

    #[test]
    fn non_pauli_generators_rejected() {
        let space = MultiGameSpace::new(vec![2, 2], None).unwrap();
        let mut gens = pauli_generators();
        gens[0] = BilinearPayoff::new("x", DMatrix::identity(2, 2)).unwrap();
        assert!(matches!(schwinger_blocks(&space, &gens), Err(GameError::Coefficient(_))));
        let three = MultiGameSpace::new(vec![2, 2, 2], None).unwrap();
        assert!(matches!(schwinger_blocks(&three, &pauli_generators()), Err(GameError::Dimension(_))));
    }
}
