//! Built-in algebra kinds.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{GameError, Result};
use crate::fock::{build_ladder, build_number, build_payoffs, FockSpace, PayoffUnits};
use crate::lie::{
    build_su11_irrep, pauli_halves, single_mode_su11, su11_casimir, su2_casimir, Bound, Su2Irrep,
};
use crate::multimode::{
    build_multimode, realize_bilinear, realize_bilinear_normal_ordered, signed_number, total_number,
    BilinearPayoff, MultiGameSpace,
};
use crate::operator::I;
use crate::space::{format_half, GameSpace};

use super::algebra::{PayoffAlgebra, RelationSet, Signature};
use super::params::{AlgebraParams, PayoffSpec};
use super::registry::AlgebraKind;
use super::verify::{op, NamedOperator, Relation, Term};

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `[x,y] = s·i·z` for the three cyclic pairs; `s = −1` flips the first
/// relation as in su(1,1).
fn cyclic_table(names: [&str; 3], first_sign: f64) -> Vec<Relation> {
    let [x, y, z] = names;
    vec![
        Relation::commutator(x, y, vec![(I * first_sign, op(z))]),
        Relation::commutator(y, z, vec![(I, op(x))]),
        Relation::commutator(z, x, vec![(I, op(y))]),
    ]
}

fn single_nmax(params: &AlgebraParams, algebra: &str) -> Result<usize> {
    let list = AlgebraParams::require(&params.nmax, "nmax", algebra)?.as_list();
    match list.as_slice() {
        [n] => Ok(*n),
        _ => Err(GameError::Params(format!("algebra '{algebra}' takes a single nmax value"))),
    }
}

pub struct FockKind;

impl AlgebraKind for FockKind {
    fn name(&self) -> &'static str {
        "fock"
    }

    fn summary(&self) -> &'static str {
        "single-mode arbiter with linear payoffs pi1, pi2"
    }

    fn accepted_params(&self) -> &'static [&'static str] {
        &["nmax", "kappa1", "kappa2"]
    }

    fn build(&self, params: &AlgebraParams) -> Result<PayoffAlgebra> {
        let space = FockSpace::new(single_nmax(params, self.name())?)?;
        let units = PayoffUnits::new(params.kappa1.unwrap_or(1.0), params.kappa2.unwrap_or(1.0))?;
        let ladder = build_ladder(space);
        let payoffs = build_payoffs(space, units);
        let k12 = units.kappa1() * units.kappa2();
        Ok(PayoffAlgebra {
            kind: self.name().into(),
            signature: Signature::Heisenberg,
            space: space.game_space(),
            operators: vec![
                NamedOperator::new("a_plus", ladder.a_plus),
                NamedOperator::new("a_minus", ladder.a_minus),
                NamedOperator::new("N", build_number(space)),
                NamedOperator::new("pi1", payoffs.pi1),
                NamedOperator::new("pi2", payoffs.pi2),
            ],
            payoffs: vec!["pi1".into(), "pi2".into()],
            relation_sets: vec![RelationSet {
                name: "commutators".into(),
                relations: vec![
                    Relation::commutator("pi1", "pi2", vec![(I * k12, Term::Identity)]),
                    Relation::commutator("a_minus", "a_plus", vec![(real(1.0), Term::Identity)]),
                    Relation::commutator("N", "a_plus", vec![(real(1.0), op("a_plus"))]),
                ],
                interior: space.interior(),
            }],
            notes: vec![format!(
                "interior levels 0..{}; [a_minus,a_plus] equals -{} on the top level",
                space.n_max() - 1,
                space.n_max()
            )],
        })
    }
}

pub struct Su2Kind;

impl AlgebraKind for Su2Kind {
    fn name(&self) -> &'static str {
        "su2"
    }

    fn summary(&self) -> &'static str {
        "spin-kappa irrep of su(2) with Casimir"
    }

    fn accepted_params(&self) -> &'static [&'static str] {
        &["kappa"]
    }

    fn build(&self, params: &AlgebraParams) -> Result<PayoffAlgebra> {
        let kappa = AlgebraParams::require(&params.kappa, "kappa", self.name())?.half_integer()?;
        let rep = Su2Irrep::new(kappa);
        let casimir = su2_casimir(&rep);
        let k = kappa.value();
        let all: Vec<usize> = (0..rep.dim()).collect();
        let space = rep.game_space();
        Ok(PayoffAlgebra {
            kind: self.name().into(),
            signature: Signature::Su2,
            space,
            operators: vec![
                NamedOperator::new("pi1", rep.pi1),
                NamedOperator::new("pi2", rep.pi2),
                NamedOperator::new("pi3", rep.pi3),
                NamedOperator::new("casimir", casimir),
            ],
            payoffs: vec!["pi1".into(), "pi2".into(), "pi3".into()],
            relation_sets: vec![
                RelationSet {
                    name: "commutators".into(),
                    relations: cyclic_table(["pi1", "pi2", "pi3"], 1.0),
                    interior: all.clone(),
                },
                RelationSet {
                    name: "casimir".into(),
                    relations: vec![Relation::equals("casimir", vec![(real(k * (k + 1.0)), Term::Identity)])],
                    interior: all,
                },
            ],
            notes: vec![],
        })
    }
}

pub struct Su11Kind;

impl AlgebraKind for Su11Kind {
    fn name(&self) -> &'static str {
        "su11"
    }

    fn summary(&self) -> &'static str {
        "truncated discrete-series irrep of su(1,1)"
    }

    fn accepted_params(&self) -> &'static [&'static str] {
        &["kappa", "bound", "truncation"]
    }

    fn build(&self, params: &AlgebraParams) -> Result<PayoffAlgebra> {
        let kappa = AlgebraParams::require(&params.kappa, "kappa", self.name())?.real()?;
        let truncation = *AlgebraParams::require(&params.truncation, "truncation", self.name())?;
        let bound = match &params.bound {
            Some(b) => b.parse()?,
            None => Bound::Below,
        };
        let rep = build_su11_irrep(kappa, bound, truncation)?;
        let casimir = su11_casimir(&rep);
        let interior = rep.interior();
        let space = rep.game_space();
        let mu0 = rep.mu0;
        Ok(PayoffAlgebra {
            kind: self.name().into(),
            signature: Signature::Su11,
            space,
            operators: vec![
                NamedOperator::new("pi1", rep.pi1),
                NamedOperator::new("pi2", rep.pi2),
                NamedOperator::new("pi3", rep.pi3),
                NamedOperator::new("casimir", casimir),
            ],
            payoffs: vec!["pi1".into(), "pi2".into(), "pi3".into()],
            relation_sets: vec![
                RelationSet {
                    name: "commutators".into(),
                    relations: cyclic_table(["pi1", "pi2", "pi3"], -1.0),
                    interior: interior.clone(),
                },
                RelationSet {
                    name: "casimir".into(),
                    relations: vec![Relation::equals(
                        "casimir",
                        vec![(real(kappa * (kappa + 1.0)), Term::Identity)],
                    )],
                    interior,
                },
            ],
            notes: vec![format!(
                "extreme weight mu0 = {}; Casimir kappa(kappa+1) corresponds to Bargmann index k = kappa+1",
                format_half(mu0)
            )],
        })
    }
}

pub struct SingleModeSu11Kind;

impl AlgebraKind for SingleModeSu11Kind {
    fn name(&self) -> &'static str {
        "single_mode_su11"
    }

    fn summary(&self) -> &'static str {
        "su(1,1) from squared step operators on one Fock mode"
    }

    fn accepted_params(&self) -> &'static [&'static str] {
        &["nmax"]
    }

    fn build(&self, params: &AlgebraParams) -> Result<PayoffAlgebra> {
        let space = FockSpace::new(single_nmax(params, self.name())?)?;
        let gens = single_mode_su11(space)?;
        let interior = gens.interior();
        let [a, b, c] = gens.generators();
        let casimir = &(&(c * c) - &(a * a)) - &(b * b);
        let game_space = GameSpace::new(
            format!("single_mode_su11 n_max={}", space.n_max()),
            space.labels(),
            interior.clone(),
        );
        Ok(PayoffAlgebra {
            kind: self.name().into(),
            signature: Signature::Su11,
            space: game_space,
            operators: vec![
                NamedOperator::new("k1", gens.k1),
                NamedOperator::new("k2", gens.k2),
                NamedOperator::new("k3", gens.k3),
                NamedOperator::new("N", build_number(space)),
                NamedOperator::new("casimir", casimir),
            ],
            payoffs: vec!["k1".into(), "k2".into(), "k3".into()],
            relation_sets: vec![
                RelationSet {
                    name: "commutators".into(),
                    relations: cyclic_table(["k1", "k2", "k3"], -1.0),
                    interior: interior.clone(),
                },
                RelationSet {
                    name: "casimir".into(),
                    relations: vec![Relation::equals("casimir", vec![(real(-3.0 / 16.0), Term::Identity)])],
                    interior,
                },
            ],
            notes: vec!["even and odd levels carry lowest k3 weights 1/4 and 3/4".into()],
        })
    }
}

pub struct MultimodeKind;

fn payoff_from_spec(spec: &PayoffSpec, modes: usize) -> Result<BilinearPayoff> {
    if spec.matrix.len() != modes || spec.matrix.iter().any(|r| r.len() != modes) {
        return Err(GameError::Coefficient(format!(
            "payoff '{}' must be a {modes}x{modes} matrix",
            spec.name
        )));
    }
    let m = DMatrix::from_fn(modes, modes, |i, j| {
        let [re, im] = spec.matrix[i][j];
        Complex64::new(re, im)
    });
    BilinearPayoff::new(spec.name.clone(), m)
}

impl AlgebraKind for MultimodeKind {
    fn name(&self) -> &'static str {
        "multimode"
    }

    fn summary(&self) -> &'static str {
        "K-mode arbiter with bilinear payoffs and optional two-mode su(2) generators"
    }

    fn accepted_params(&self) -> &'static [&'static str] {
        &["nmax", "total_cutoff", "payoffs", "signs", "schwinger"]
    }

    fn build(&self, params: &AlgebraParams) -> Result<PayoffAlgebra> {
        let n_max = AlgebraParams::require(&params.nmax, "nmax", self.name())?.as_list();
        let space = MultiGameSpace::new(n_max, params.total_cutoff)?;
        let k = space.modes();
        let ops = build_multimode(&space);
        let interior = space.interior();

        let mut operators = Vec::new();
        let mut mode_relations = Vec::new();
        for i in 0..k {
            let m = i + 1;
            operators.push(NamedOperator::new(format!("a_plus{m}"), ops.a_plus[i].clone()));
            operators.push(NamedOperator::new(format!("a_minus{m}"), ops.a_minus[i].clone()));
            operators.push(NamedOperator::new(format!("N{m}"), ops.number[i].clone()));
            mode_relations.push(Relation::commutator(
                &format!("a_minus{m}"),
                &format!("a_plus{m}"),
                vec![(real(1.0), Term::Identity)],
            ));
            mode_relations.push(Relation::commutator(
                &format!("N{m}"),
                &format!("a_plus{m}"),
                vec![(real(1.0), op(&format!("a_plus{m}")))],
            ));
        }
        for i in 1..=k {
            for j in i + 1..=k {
                mode_relations.push(Relation::commutator(&format!("N{i}"), &format!("N{j}"), vec![]));
                mode_relations.push(Relation::commutator(&format!("a_plus{i}"), &format!("a_plus{j}"), vec![]));
                mode_relations.push(Relation::commutator(&format!("a_minus{i}"), &format!("a_plus{j}"), vec![]));
            }
        }
        operators.push(NamedOperator::new("N_total", total_number(&space)));
        if let Some(signs) = &params.signs {
            operators.push(NamedOperator::new("N_signed", signed_number(&space, signs)?));
        }

        let mut payoffs = Vec::new();
        let mut conservation = Vec::new();
        let mut notes = Vec::new();
        for spec in params.payoffs.iter().flatten() {
            if operators.iter().any(|o| o.name == spec.name) {
                return Err(GameError::Params(format!("payoff name '{}' is already in use", spec.name)));
            }
            let payoff = payoff_from_spec(spec, k)?;
            operators.push(NamedOperator::new(spec.name.clone(), realize_bilinear(&space, &payoff)?));
            conservation.push(Relation::commutator(&spec.name, "N_total", vec![]));
            let tr = payoff.trace();
            notes.push(format!(
                "{} = sum P_ab a_minus_a a_plus_b; on exact sectors it equals the normal-ordered form of P^T plus {}*I",
                spec.name,
                format_half(tr.re)
            ));
            payoffs.push(spec.name.clone());
        }

        let mut relation_sets = Vec::new();
        let mut signature = Signature::Heisenberg;
        let mut su2_relations = Vec::new();
        if params.schwinger.unwrap_or(false) {
            if k != 2 {
                return Err(GameError::Params("schwinger generators need exactly two modes".into()));
            }
            for (idx, coefficients) in pauli_halves().into_iter().enumerate() {
                let name = format!("pi{}", idx + 1);
                if operators.iter().any(|o| o.name == name) {
                    return Err(GameError::Params(format!("payoff name '{name}' is already in use")));
                }
                let generator = BilinearPayoff::new(name.clone(), coefficients)?;
                operators.push(NamedOperator::new(
                    name.clone(),
                    realize_bilinear_normal_ordered(&space, &generator)?,
                ));
                conservation.push(Relation::commutator(&name, "N_total", vec![]));
                payoffs.push(name);
            }
            su2_relations = cyclic_table(["pi1", "pi2", "pi3"], 1.0);
            signature = Signature::Su2;
            notes.push("pi1, pi2, pi3 are normal-ordered sum a_plus_a (sigma/2)_ab a_minus_b; sector sum n = 2*kappa".into());
        }
        if payoffs.is_empty() {
            payoffs = (1..=k).map(|m| format!("N{m}")).collect();
        }

        let mut canonical = mode_relations;
        canonical.extend(conservation.iter().cloned());
        canonical.extend(su2_relations.iter().cloned());
        relation_sets.push(RelationSet {
            name: "commutators".into(),
            relations: canonical,
            interior: interior.clone(),
        });
        if !conservation.is_empty() {
            relation_sets.push(RelationSet {
                name: "conservation".into(),
                relations: conservation,
                interior: interior.clone(),
            });
        }
        if !su2_relations.is_empty() {
            relation_sets.push(RelationSet {
                name: "su2".into(),
                relations: su2_relations,
                interior: interior.clone(),
            });
        }

        Ok(PayoffAlgebra {
            kind: self.name().into(),
            signature,
            space: space.game_space(),
            operators,
            payoffs,
            relation_sets,
            notes,
        })
    }
}
