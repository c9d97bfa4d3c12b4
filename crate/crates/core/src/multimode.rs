//! K-mode game spaces for multi-game players and bilinear payoff operators.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{GameError, Result};
use crate::fock::{build_ladder, build_number, FockSpace};
use crate::operator::{embed_mode, flat_index, occupation_tuple, OperatorMatrix};
use crate::space::GameSpace;

/// Largest full product dimension accepted before any cutoff is applied.
pub const MAX_PRODUCT_DIM: usize = 1_000_000;

/// Product of K truncated Fock spaces, optionally cut to `Σnᵢ ≤ total_cutoff`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiGameSpace {
    n_max: Vec<usize>,
    total_cutoff: Option<usize>,
    /// Occupation tuples of the retained basis, lexicographic.
    basis: Vec<Vec<usize>>,
    /// Position of each retained tuple in the full product basis.
    product_index: Vec<usize>,
}

impl MultiGameSpace {
    pub fn new(n_max: Vec<usize>, total_cutoff: Option<usize>) -> Result<Self> {
        if n_max.is_empty() {
            return Err(GameError::Dimension("a multi-game space needs K >= 1 modes".into()));
        }
        if n_max.iter().any(|&n| n < 1) {
            return Err(GameError::Dimension("every mode needs n_max >= 1".into()));
        }
        let product = n_max
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n + 1))
            .filter(|&d| d <= MAX_PRODUCT_DIM)
            .ok_or_else(|| GameError::Capacity {
                dim: n_max.iter().fold(1usize, |acc, &n| acc.saturating_mul(n + 1)),
                limit: MAX_PRODUCT_DIM,
            })?;
        let dims: Vec<usize> = n_max.iter().map(|n| n + 1).collect();
        let (basis, product_index): (Vec<_>, Vec<_>) = (0..product)
            .map(|idx| (occupation_tuple(idx, &dims), idx))
            .filter(|(t, _)| total_cutoff.is_none_or(|c| t.iter().sum::<usize>() <= c))
            .unzip();
        Ok(Self {
            n_max,
            total_cutoff,
            basis,
            product_index,
        })
    }

    pub fn modes(&self) -> usize {
        self.n_max.len()
    }

    pub fn n_max(&self) -> &[usize] {
        &self.n_max
    }

    pub fn total_cutoff(&self) -> Option<usize> {
        self.total_cutoff
    }

    pub fn mode_dims(&self) -> Vec<usize> {
        self.n_max.iter().map(|n| n + 1).collect()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<usize>] {
        &self.basis
    }

    fn is_truncated(&self) -> bool {
        self.basis.len() != self.mode_dims().iter().product::<usize>()
    }

    /// Total number `Σnᵢ` below which every mode is strictly inside its
    /// cutoff; sectors below it are exact for bilinear operators.
    pub fn exact_sector_limit(&self) -> usize {
        *self.n_max.iter().min().expect("K >= 1")
    }

    /// Basis indices in sectors with `Σnᵢ < min(n_maxᵢ)`.
    pub fn interior(&self) -> Vec<usize> {
        let limit = self.exact_sector_limit();
        (0..self.dim())
            .filter(|&i| self.basis[i].iter().sum::<usize>() < limit)
            .collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.basis
            .iter()
            .map(|t| {
                let inner: Vec<String> = t.iter().map(|n| n.to_string()).collect();
                format!("n=({})", inner.join(","))
            })
            .collect()
    }

    pub fn game_space(&self) -> GameSpace {
        let nmax: Vec<String> = self.n_max.iter().map(|n| n.to_string()).collect();
        let mut description = format!("multimode K={} n_max=[{}]", self.modes(), nmax.join(","));
        if let Some(c) = self.total_cutoff {
            description.push_str(&format!(" total_cutoff={c}"));
        }
        GameSpace::new(description, self.labels(), self.interior())
    }

    /// Index of an occupation tuple in the retained basis.
    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        if tuple.len() != self.modes() || tuple.iter().zip(&self.n_max).any(|(n, m)| n > m) {
            return None;
        }
        let flat = flat_index(tuple, &self.mode_dims());
        self.product_index.binary_search(&flat).ok()
    }

    /// Projects an operator on the full product space onto the retained basis.
    fn project(&self, full: OperatorMatrix) -> OperatorMatrix {
        if self.is_truncated() {
            full.restrict(&self.product_index)
                .expect("retained basis indexes the product space")
        } else {
            full
        }
    }

    fn embed_full(&self, op: &OperatorMatrix, mode: usize) -> OperatorMatrix {
        embed_mode(op, mode, &self.mode_dims()).expect("mode operator matches its factor")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiModeOperators {
    pub a_plus: Vec<OperatorMatrix>,
    pub a_minus: Vec<OperatorMatrix>,
    pub number: Vec<OperatorMatrix>,
}

/// Per-mode step and counting operators on the product space.
pub fn build_multimode(space: &MultiGameSpace) -> MultiModeOperators {
    let mut ops = MultiModeOperators {
        a_plus: Vec::with_capacity(space.modes()),
        a_minus: Vec::with_capacity(space.modes()),
        number: Vec::with_capacity(space.modes()),
    };
    for (mode, &n_max) in space.n_max.iter().enumerate() {
        let fock = FockSpace::new(n_max).expect("validated n_max");
        let ladder = build_ladder(fock);
        ops.a_plus.push(space.project(space.embed_full(&ladder.a_plus, mode)));
        ops.a_minus.push(space.project(space.embed_full(&ladder.a_minus, mode)));
        ops.number.push(space.project(space.embed_full(&build_number(fock), mode)));
    }
    ops
}

/// `Σᵢ Nᵢ`.
pub fn total_number(space: &MultiGameSpace) -> OperatorMatrix {
    let values: Vec<f64> = space.basis.iter().map(|t| t.iter().sum::<usize>() as f64).collect();
    OperatorMatrix::from_real_diagonal(&values)
}

/// `Σᵢ sᵢNᵢ` with each sign ±1.
pub fn signed_number(space: &MultiGameSpace, signs: &[i32]) -> Result<OperatorMatrix> {
    if signs.len() != space.modes() {
        return Err(GameError::Coefficient(format!(
            "expected {} signs, got {}",
            space.modes(),
            signs.len()
        )));
    }
    if let Some(bad) = signs.iter().find(|s| s.abs() != 1) {
        return Err(GameError::Coefficient(format!("sign must be +1 or -1, got {bad}")));
    }
    let values: Vec<f64> = space
        .basis
        .iter()
        .map(|t| t.iter().zip(signs).map(|(&n, &s)| (s as i64 * n as i64) as f64).sum())
        .collect();
    Ok(OperatorMatrix::from_real_diagonal(&values))
}

/// Hermitian K×K coefficient matrix `P^A_ab` of one player's bilinear payoff.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearPayoff {
    name: String,
    coefficients: DMatrix<Complex64>,
}

impl BilinearPayoff {
    pub fn new(name: impl Into<String>, coefficients: DMatrix<Complex64>) -> Result<Self> {
        let name = name.into();
        let k = coefficients.nrows();
        if k == 0 || coefficients.ncols() != k {
            return Err(GameError::Coefficient(format!(
                "coefficients of '{name}' must be a non-empty square matrix"
            )));
        }
        let mut asym = 0.0_f64;
        for i in 0..k {
            for j in 0..k {
                let z = coefficients[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(GameError::Coefficient(format!("coefficients of '{name}' must be finite")));
                }
                asym = asym.max((z - coefficients[(j, i)].conj()).norm());
            }
        }
        if asym > 1e-12 {
            return Err(GameError::Coefficient(format!(
                "coefficients of '{name}' are not Hermitian (max asymmetry {asym:.3e})"
            )));
        }
        Ok(Self { name, coefficients })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coefficients(&self) -> &DMatrix<Complex64> {
        &self.coefficients
    }

    pub fn modes(&self) -> usize {
        self.coefficients.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.coefficients.trace()
    }
}

fn check_modes(space: &MultiGameSpace, payoff: &BilinearPayoff) -> Result<()> {
    if payoff.modes() != space.modes() {
        return Err(GameError::Coefficient(format!(
            "payoff '{}' is {}x{} but the space has K={}",
            payoff.name(),
            payoff.modes(),
            payoff.modes(),
            space.modes()
        )));
    }
    Ok(())
}

fn full_ladders(space: &MultiGameSpace) -> (Vec<OperatorMatrix>, Vec<OperatorMatrix>) {
    space
        .n_max
        .iter()
        .enumerate()
        .map(|(mode, &n_max)| {
            let ladder = build_ladder(FockSpace::new(n_max).expect("validated n_max"));
            (
                space.embed_full(&ladder.a_plus, mode),
                space.embed_full(&ladder.a_minus, mode),
            )
        })
        .unzip()
}

fn realize(
    space: &MultiGameSpace,
    payoff: &BilinearPayoff,
    term: impl Fn(&[OperatorMatrix], &[OperatorMatrix], usize, usize) -> OperatorMatrix,
) -> Result<OperatorMatrix> {
    check_modes(space, payoff)?;
    let (plus, minus) = full_ladders(space);
    let dim: usize = space.mode_dims().iter().product();
    let mut acc = OperatorMatrix::zeros(dim);
    for a in 0..space.modes() {
        for b in 0..space.modes() {
            let p = payoff.coefficients[(a, b)];
            if p != Complex64::new(0.0, 0.0) {
                acc = &acc + &term(&plus, &minus, a, b).scale(p);
            }
        }
    }
    // Products are formed on the full product space before projecting, so a
    // total cutoff does not truncate the intermediate states.
    Ok(space.project(acc))
}

/// `Σ_ab P_ab a₋ₐ a₊_b`, annihilator to the left.
pub fn realize_bilinear(space: &MultiGameSpace, payoff: &BilinearPayoff) -> Result<OperatorMatrix> {
    realize(space, payoff, |plus, minus, a, b| &minus[a] * &plus[b])
}

/// `Σ_ab P_ab a₊ₐ a₋_b`, the normal-ordered form.
///
/// On exact sectors it equals [`realize_bilinear`] of `Pᵀ` minus `tr(P)·I`,
/// and `P ↦` this operator is a Lie-algebra homomorphism.
pub fn realize_bilinear_normal_ordered(
    space: &MultiGameSpace,
    payoff: &BilinearPayoff,
) -> Result<OperatorMatrix> {
    realize(space, payoff, |plus, minus, a, b| &plus[a] * &minus[b])
}

/// True iff `K² − 1 < 2K`.
pub fn noncommutativity_criterion(k: usize) -> bool {
    let k = k as u128;
    k * k < 2 * k + 1
}

/// Basis indices with `Σnᵢ = total`.
pub fn number_sector(space: &MultiGameSpace, total: usize) -> Result<Vec<usize>> {
    let mut max_total: usize = space.n_max.iter().sum();
    if let Some(c) = space.total_cutoff {
        max_total = max_total.min(c);
    }
    if total > max_total {
        return Err(GameError::Dimension(format!(
            "total {total} exceeds the largest sector {max_total}"
        )));
    }
    Ok((0..space.dim())
        .filter(|&i| space.basis[i].iter().sum::<usize>() == total)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::build_ladder;
    use crate::operator::commutator;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag(values: &[f64]) -> DMatrix<Complex64> {
        DMatrix::from_fn(values.len(), values.len(), |i, j| {
            if i == j { c(values[i], 0.) } else { c(0., 0.) }
        })
    }

    #[test]
    fn single_mode_matches_fock() {
        let space = MultiGameSpace::new(vec![4], None).unwrap();
        let ops = build_multimode(&space);
        let fock = FockSpace::new(4).unwrap();
        let l = build_ladder(fock);
        assert_eq!(ops.a_plus[0], l.a_plus);
        assert_eq!(ops.a_minus[0], l.a_minus);
        assert_eq!(ops.number[0], build_number(fock));
    }

    #[test]
    fn two_mode_numbers_commute() {
        let space = MultiGameSpace::new(vec![1, 1], None).unwrap();
        let ops = build_multimode(&space);
        assert_eq!(commutator(&ops.number[0], &ops.number[1]).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn cross_mode_raisers_commute_by_hand() {
        // In the (n1, n2) basis 00, 01, 10, 11: a₊₁ = |10⟩⟨00| + |11⟩⟨01|, a₊₂ = |01⟩⟨00| + |11⟩⟨10|.
        let space = MultiGameSpace::new(vec![1, 1], None).unwrap();
        let ops = build_multimode(&space);
        let mut a1 = OperatorMatrix::zeros(4);
        a1.set(2, 0, c(1., 0.));
        a1.set(3, 1, c(1., 0.));
        let mut a2 = OperatorMatrix::zeros(4);
        a2.set(1, 0, c(1., 0.));
        a2.set(3, 2, c(1., 0.));
        assert_eq!(ops.a_plus[0], a1);
        assert_eq!(ops.a_plus[1], a2);
        assert_eq!(commutator(&a1, &a2).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn capacity_guard() {
        let err = MultiGameSpace::new(vec![99, 99, 99, 99], None).unwrap_err();
        assert!(matches!(err, GameError::Capacity { .. }));
    }

    #[test]
    fn cutoff_restricts_basis() {
        let space = MultiGameSpace::new(vec![3, 3], Some(2)).unwrap();
        assert_eq!(space.dim(), 6);
        assert!(space.basis().iter().all(|t| t.iter().sum::<usize>() <= 2));
        assert_eq!(space.index_of(&[1, 1]), Some(4));
        assert_eq!(space.index_of(&[3, 0]), None);
        assert_eq!(space.labels()[4], "n=(1,1)");
    }

    #[test]
    fn identity_coefficients_single_mode() {
        // a₋a₊ = N + 1 on the interior of a 4-level space.
        let space = MultiGameSpace::new(vec![3], None).unwrap();
        let p = BilinearPayoff::new("A", DMatrix::identity(1, 1)).unwrap();
        let op = realize_bilinear(&space, &p).unwrap();
        let expected = OperatorMatrix::from_real_diagonal(&[1., 2., 3., 0.]);
        assert!((&op - &expected).max_abs() < 1e-14);
    }

    #[test]
    fn sigma3_half_on_first_round_sector() {
        let space = MultiGameSpace::new(vec![2, 2], None).unwrap();
        let p = BilinearPayoff::new("A", diag(&[0.5, -0.5])).unwrap();
        let op = realize_bilinear(&space, &p).unwrap();
        let sector = number_sector(&space, 1).unwrap();
        let block = op.restrict(&sector).unwrap();
        let mut values: Vec<f64> = (0..2).map(|i| block.get(i, i).re).collect();
        values.sort_by(f64::total_cmp);
        assert!(block.is_diagonal());
        assert!((values[0] + 0.5).abs() < 1e-14 && (values[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn ordering_shift_is_transpose_plus_trace() {
        let space = MultiGameSpace::new(vec![3, 3], None).unwrap();
        let m = DMatrix::from_row_slice(2, 2, &[c(0.7, 0.), c(0.2, -0.4), c(0.2, 0.4), c(-1.1, 0.)]);
        let p = BilinearPayoff::new("A", m.clone()).unwrap();
        let pt = BilinearPayoff::new("At", m.transpose()).unwrap();
        let anti = realize_bilinear(&space, &p).unwrap();
        let normal = realize_bilinear_normal_ordered(&space, &pt).unwrap();
        let shift = OperatorMatrix::identity(space.dim()).scale(p.trace());
        let diff = &(&anti - &normal) - &shift;
        assert!(diff.max_abs_on(&space.interior()) < 1e-12);
    }

    #[test]
    fn non_hermitian_coefficients_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]);
        assert!(matches!(BilinearPayoff::new("A", m), Err(GameError::Coefficient(_))));
    }

    #[test]
    fn payoff_mode_count_must_match() {
        let space = MultiGameSpace::new(vec![2, 2, 2], None).unwrap();
        let p = BilinearPayoff::new("A", DMatrix::identity(2, 2)).unwrap();
        assert!(matches!(realize_bilinear(&space, &p), Err(GameError::Coefficient(_))));
    }

    #[test]
    fn signed_numbers() {
        let space = MultiGameSpace::new(vec![2, 2], None).unwrap();
        let all_plus = signed_number(&space, &[1, 1]).unwrap();
        assert_eq!(all_plus, total_number(&space));
        let mixed = signed_number(&space, &[1, -1]).unwrap();
        let idx = space.index_of(&[1, 0]).unwrap();
        assert_eq!(mixed.get(idx, idx).re, 1.0);
        assert!(matches!(signed_number(&space, &[1, 0]), Err(GameError::Coefficient(_))));
        assert!(matches!(signed_number(&space, &[1]), Err(GameError::Coefficient(_))));

        let p = BilinearPayoff::new("A", diag(&[0.3, -1.7])).unwrap();
        let op = realize_bilinear(&space, &p).unwrap();
        assert_eq!(space.dim(), 9);
        assert!(commutator(&op, &mixed).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn criterion_values() {
        assert!(noncommutativity_criterion(1));
        assert!(noncommutativity_criterion(2));
        assert!(!noncommutativity_criterion(3));
    }

    #[test]
    fn sectors() {
        let space = MultiGameSpace::new(vec![2, 2], None).unwrap();
        assert_eq!(number_sector(&space, 0).unwrap(), vec![0]);
        assert_eq!(number_sector(&space, 1).unwrap().len(), 2);
        let two = number_sector(&space, 2).unwrap();
        let tuples: Vec<_> = two.iter().map(|&i| space.basis()[i].clone()).collect();
        assert_eq!(tuples, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert!(matches!(number_sector(&space, 5), Err(GameError::Dimension(_))));

        let three = MultiGameSpace::new(vec![1, 1, 1], None).unwrap();
        assert_eq!(number_sector(&three, 1).unwrap().len(), 3);
    }
}
