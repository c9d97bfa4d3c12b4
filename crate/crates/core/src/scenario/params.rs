use serde::Deserialize;

use crate::error::{GameError, Result};
use crate::lie::HalfInteger;
use crate::space::parse_number;

/// A κ given either as a JSON number or as text such as `"3/2"`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum KappaValue {
    Number(f64),
    Text(String),
}

impl KappaValue {
    pub fn half_integer(&self) -> Result<HalfInteger> {
        match self {
            KappaValue::Number(v) => HalfInteger::try_from_f64(*v),
            KappaValue::Text(s) => s.parse(),
        }
    }

    pub fn real(&self) -> Result<f64> {
        match self {
            KappaValue::Number(v) if v.is_finite() => Ok(*v),
            KappaValue::Number(v) => Err(GameError::Params(format!("κ must be finite, got {v}"))),
            KappaValue::Text(s) => {
                parse_number(s).ok_or_else(|| GameError::Params(format!("cannot read κ from '{s}'")))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum NmaxValue {
    One(usize),
    Many(Vec<usize>),
}

impl NmaxValue {
    pub fn as_list(&self) -> Vec<usize> {
        match self {
            NmaxValue::One(n) => vec![*n],
            NmaxValue::Many(v) => v.clone(),
        }
    }
}

/// Named K×K coefficient matrix; entries are `[re, im]` pairs, row-major.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PayoffSpec {
    pub name: String,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

/// Parameters for every algebra kind; each kind accepts a subset.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraParams {
    pub kappa: Option<KappaValue>,
    pub kappa1: Option<f64>,
    pub kappa2: Option<f64>,
    pub nmax: Option<NmaxValue>,
    pub truncation: Option<usize>,
    pub bound: Option<String>,
    pub total_cutoff: Option<usize>,
    pub signs: Option<Vec<i32>>,
    pub payoffs: Option<Vec<PayoffSpec>>,
    pub schwinger: Option<bool>,
}

impl AlgebraParams {
    /// Names of the parameters that are set.
    pub fn present(&self) -> Vec<&'static str> {
        let mut keys = Vec::new();
        let mut push = |set: bool, key| {
            if set {
                keys.push(key)
            }
        };
        push(self.kappa.is_some(), "kappa");
        push(self.kappa1.is_some(), "kappa1");
        push(self.kappa2.is_some(), "kappa2");
        push(self.nmax.is_some(), "nmax");
        push(self.truncation.is_some(), "truncation");
        push(self.bound.is_some(), "bound");
        push(self.total_cutoff.is_some(), "total_cutoff");
        push(self.signs.is_some(), "signs");
        push(self.payoffs.is_some(), "payoffs");
        push(self.schwinger.is_some(), "schwinger");
        keys
    }

    pub(crate) fn require<'a, T>(value: &'a Option<T>, key: &str, algebra: &str) -> Result<&'a T> {
        value
            .as_ref()
            .ok_or_else(|| GameError::Params(format!("algebra '{algebra}' requires parameter '{key}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_kappa_forms() {
        let p: AlgebraParams = serde_json::from_str(r#"{"kappa": "3/2"}"#).unwrap();
        assert_eq!(p.kappa.unwrap().half_integer().unwrap().twice(), 3);
        let p: AlgebraParams = serde_json::from_str(r#"{"kappa": 1.5}"#).unwrap();
        assert_eq!(p.kappa.unwrap().half_integer().unwrap().twice(), 3);
        let p: AlgebraParams = serde_json::from_str(r#"{"kappa": "1/3"}"#).unwrap();
        assert!((p.kappa.unwrap().real().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn nmax_scalar_or_list() {
        let p: AlgebraParams = serde_json::from_str(r#"{"nmax": 4}"#).unwrap();
        assert_eq!(p.nmax.unwrap().as_list(), vec![4]);
        let p: AlgebraParams = serde_json::from_str(r#"{"nmax": [2, 3]}"#).unwrap();
        assert_eq!(p.nmax.unwrap().as_list(), vec![2, 3]);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<AlgebraParams>(r#"{"kapa": 1}"#).is_err());
        assert!(serde_json::from_str::<AlgebraParams>(r#"{"payoffs": [{"name": "A", "matrix": [], "x": 1}]}"#).is_err());
    }

    #[test]
    fn present_keys() {
        let p: AlgebraParams = serde_json::from_str(r#"{"nmax": 4, "kappa2": 2}"#).unwrap();
        assert_eq!(p.present(), vec!["kappa2", "nmax"]);
    }
}
