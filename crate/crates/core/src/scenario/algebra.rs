use crate::error::{GameError, Result};
use crate::operator::OperatorMatrix;
use crate::space::GameSpace;

use super::verify::{verify_algebra, NamedOperator, Relation, VerificationReport};

/// Commutator signature of the payoff algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signature {
    Heisenberg,
    Su2,
    Su11,
}

impl Signature {
    pub fn as_str(self) -> &'static str {
        match self {
            Signature::Heisenberg => "heisenberg",
            Signature::Su2 => "su2",
            Signature::Su11 => "su11",
        }
    }
}

/// A named table of relations and the basis indices on which it is exact.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationSet {
    pub name: String,
    pub relations: Vec<Relation>,
    pub interior: Vec<usize>,
}

/// Constructed operators of one game over one space.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffAlgebra {
    pub kind: String,
    pub signature: Signature,
    pub space: GameSpace,
    pub operators: Vec<NamedOperator>,
    /// Operators measured by default; all Hermitian.
    pub payoffs: Vec<String>,
    /// The first set is the canonical commutation table.
    pub relation_sets: Vec<RelationSet>,
    pub notes: Vec<String>,
}

/// Maps spellings like `π₃`, `π3` or `N̂` onto the ASCII operator names.
pub fn canonical_operator_name(raw: &str) -> String {
    raw.trim()
        .chars()
        .filter(|&c| c != '\u{0302}')
        .map(|c| match c {
            '₀'..='₉' => char::from_digit(c as u32 - '₀' as u32, 10).unwrap(),
            _ => c,
        })
        .collect::<String>()
        .replace('π', "pi")
}

impl PayoffAlgebra {
    pub fn operator(&self, name: &str) -> Result<&OperatorMatrix> {
        let wanted = canonical_operator_name(name);
        self.operators
            .iter()
            .find(|o| o.name == wanted)
            .map(|o| &o.matrix)
            .ok_or_else(|| {
                let known: Vec<&str> = self.operators.iter().map(|o| o.name.as_str()).collect();
                GameError::Label(format!(
                    "unknown operator '{name}' for algebra '{}' (known: {})",
                    self.kind,
                    known.join(", ")
                ))
            })
    }

    pub fn canonical(&self) -> &RelationSet {
        &self.relation_sets[0]
    }

    pub fn relation_set(&self, name: &str) -> Result<&RelationSet> {
        self.relation_sets.iter().find(|s| s.name == name).ok_or_else(|| {
            let known: Vec<&str> = self.relation_sets.iter().map(|s| s.name.as_str()).collect();
            GameError::Label(format!(
                "unknown check '{name}' for algebra '{}' (known: {})",
                self.kind,
                known.join(", ")
            ))
        })
    }

    pub fn verify(&self, set: &RelationSet, tol: f64) -> Result<VerificationReport> {
        verify_algebra(&self.operators, &set.relations, &set.interior, tol)
    }
}
