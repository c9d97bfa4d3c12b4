use std::fmt;

use num_complex::Complex64;

use crate::error::{GameError, Result};
use crate::operator::{commutator, OperatorMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct NamedOperator {
    pub name: String,
    pub matrix: OperatorMatrix,
}

impl NamedOperator {
    pub fn new(name: impl Into<String>, matrix: OperatorMatrix) -> Self {
        Self {
            name: name.into(),
            matrix,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Term {
    Identity,
    Operator(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Lhs {
    Commutator(String, String),
    Operator(String),
}

/// `lhs = Σ coefficient·term`, checked entrywise.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub lhs: Lhs,
    pub rhs: Vec<(Complex64, Term)>,
}

impl Relation {
    pub fn commutator(a: &str, b: &str, rhs: Vec<(Complex64, Term)>) -> Self {
        Self {
            lhs: Lhs::Commutator(a.into(), b.into()),
            rhs,
        }
    }

    pub fn equals(op: &str, rhs: Vec<(Complex64, Term)>) -> Self {
        Self {
            lhs: Lhs::Operator(op.into()),
            rhs,
        }
    }
}

pub fn op(name: &str) -> Term {
    Term::Operator(name.into())
}

fn fmt_coefficient(c: Complex64) -> String {
    let fmt_real = |x: f64| {
        if x == x.trunc() && x.abs() < 1e15 {
            format!("{}", x as i64)
        } else {
            format!("{x}")
        }
    };
    match (c.re, c.im) {
        (re, 0.0) => fmt_real(re),
        (0.0, 1.0) => "i".into(),
        (0.0, -1.0) => "-i".into(),
        (0.0, im) => format!("{}i", fmt_real(im)),
        (re, im) => format!("({}{:+}i)", fmt_real(re), im),
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lhs {
            Lhs::Commutator(a, b) => write!(f, "[{a},{b}] = ")?,
            Lhs::Operator(a) => write!(f, "{a} = ")?,
        }
        if self.rhs.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, term)) in self.rhs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let coeff = fmt_coefficient(*c);
            match term {
                Term::Identity if coeff == "1" => write!(f, "I")?,
                Term::Identity => write!(f, "{coeff}*I")?,
                Term::Operator(name) if coeff == "1" => write!(f, "{name}")?,
                Term::Operator(name) => write!(f, "{coeff}*{name}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationCheck {
    pub relation: String,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<RelationCheck>,
    pub worst_residual: f64,
    pub tolerance: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn lookup<'a>(operators: &'a [NamedOperator], name: &str) -> Result<&'a OperatorMatrix> {
    operators
        .iter()
        .find(|o| o.name == name)
        .map(|o| &o.matrix)
        .ok_or_else(|| GameError::Label(format!("relation refers to unknown operator '{name}'")))
}

/// Evaluates each relation as `max |lhs − rhs|` over the rows and columns in
/// `interior`.
pub fn verify_algebra(
    operators: &[NamedOperator],
    relations: &[Relation],
    interior: &[usize],
    tol: f64,
) -> Result<VerificationReport> {
    let mut checks = Vec::with_capacity(relations.len());
    for relation in relations {
        let lhs = match &relation.lhs {
            Lhs::Commutator(a, b) => commutator(lookup(operators, a)?, lookup(operators, b)?)?,
            Lhs::Operator(a) => lookup(operators, a)?.clone(),
        };
        let mut diff = lhs;
        for (c, term) in &relation.rhs {
            let m = match term {
                Term::Identity => OperatorMatrix::identity(diff.dim()),
                Term::Operator(name) => lookup(operators, name)?.clone(),
            };
            diff = diff.try_sub(&m.scale(*c))?;
        }
        if let Some(&bad) = interior.iter().find(|&&i| i >= diff.dim()) {
            return Err(GameError::Dimension(format!("interior index {bad} out of range")));
        }
        let residual = diff.max_abs_on(interior);
        checks.push(RelationCheck {
            relation: relation.to_string(),
            residual,
            passed: residual <= tol,
        });
    }
    let worst_residual = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    Ok(VerificationReport {
        checks,
        worst_residual,
        tolerance: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_su2_irrep;
    use crate::operator::I;

    fn su2_table() -> Vec<Relation> {
        vec![
            Relation::commutator("pi1", "pi2", vec![(I, op("pi3"))]),
            Relation::commutator("pi2", "pi3", vec![(I, op("pi1"))]),
            Relation::commutator("pi3", "pi1", vec![(I, op("pi2"))]),
        ]
    }

    fn spin_one() -> Vec<NamedOperator> {
        let rep = build_su2_irrep(1.0).unwrap();
        vec![
            NamedOperator::new("pi1", rep.pi1),
            NamedOperator::new("pi2", rep.pi2),
            NamedOperator::new("pi3", rep.pi3),
        ]
    }

    #[test]
    fn spin_one_table_passes() {
        let report = verify_algebra(&spin_one(), &su2_table(), &[0, 1, 2], 1e-12).unwrap();
        assert!(report.passed());
        assert_eq!(report.checks.len(), 3);
        assert_eq!(report.checks[0].relation, "[pi1,pi2] = i*pi3");
    }

    #[test]
    fn perturbed_generator_fails() {
        let mut ops = spin_one();
        let z = ops[0].matrix.get(1, 0);
        ops[0].matrix.set(1, 0, z + Complex64::new(1e-3, 0.0));
        let report = verify_algebra(&ops, &su2_table(), &[0, 1, 2], 1e-12).unwrap();
        assert!(!report.passed());
        assert!(report.worst_residual > 0.5e-3 && report.worst_residual < 2e-3);
    }

    #[test]
    fn unknown_name() {
        let rel = vec![Relation::commutator("pi1", "nope", vec![])];
        assert!(matches!(verify_algebra(&spin_one(), &rel, &[0], 1e-12), Err(GameError::Label(_))));
    }

    #[test]
    fn display_forms() {
        let r = Relation::equals("casimir", vec![(Complex64::new(0.75, 0.0), Term::Identity)]);
        assert_eq!(r.to_string(), "casimir = 0.75*I");
        let r = Relation::commutator("pi1", "pi2", vec![(Complex64::new(0.0, -1.0), op("pi3"))]);
        assert_eq!(r.to_string(), "[pi1,pi2] = -i*pi3");
        let r = Relation::commutator("N1", "N2", vec![]);
        assert_eq!(r.to_string(), "[N1,N2] = 0");
        let r = Relation::commutator("pi1", "pi2", vec![(Complex64::new(0.0, 2.0), Term::Identity)]);
        assert_eq!(r.to_string(), "[pi1,pi2] = 2i*I");
    }
}
