use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{GameError, Result};

use super::algebra::PayoffAlgebra;
use super::kinds::{FockKind, MultimodeKind, SingleModeSu11Kind, Su11Kind, Su2Kind};
use super::params::AlgebraParams;

/// One family of payoff algebras, built from parameters at runtime.
pub trait AlgebraKind: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    /// Parameter keys this kind understands; anything else is rejected.
    fn accepted_params(&self) -> &'static [&'static str];

    fn build(&self, params: &AlgebraParams) -> Result<PayoffAlgebra>;
}

/// Algebra kinds by name.
#[derive(Clone, Default)]
pub struct AlgebraRegistry(BTreeMap<String, Arc<dyn AlgebraKind>>);

impl AlgebraRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry with fock, multimode, su2, su11 and single_mode_su11.
    pub fn builtin() -> Self {
        let mut registry = Self::new();
        registry.register(Arc::new(FockKind));
        registry.register(Arc::new(MultimodeKind));
        registry.register(Arc::new(Su2Kind));
        registry.register(Arc::new(Su11Kind));
        registry.register(Arc::new(SingleModeSu11Kind));
        registry
    }

    pub fn register(&mut self, kind: Arc<dyn AlgebraKind>) {
        self.0.insert(kind.name().to_string(), kind);
    }

    pub fn get(&self, name: &str) -> Result<&Arc<dyn AlgebraKind>> {
        self.0.get(name).ok_or_else(|| {
            GameError::Params(format!(
                "unknown algebra '{name}' (known: {})",
                self.names().join(", ")
            ))
        })
    }

    pub fn names(&self) -> Vec<&str> {
        self.0.keys().map(String::as_str).collect()
    }

    /// Validates the parameter keys against the kind, then builds.
    pub fn build(&self, name: &str, params: &AlgebraParams) -> Result<PayoffAlgebra> {
        let kind = self.get(name)?;
        if let Some(extra) = params.present().into_iter().find(|k| !kind.accepted_params().contains(k)) {
            return Err(GameError::Params(format!(
                "parameter '{extra}' does not apply to algebra '{name}' (accepted: {})",
                kind.accepted_params().join(", ")
            )));
        }
        kind.build(params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::kinds::FockKind;

    struct Dummy;

    impl AlgebraKind for Dummy {
        fn name(&self) -> &'static str {
            "dummy"
        }
        fn summary(&self) -> &'static str {
            "test kind"
        }
        fn accepted_params(&self) -> &'static [&'static str] {
            &[]
        }
        fn build(&self, params: &AlgebraParams) -> Result<PayoffAlgebra> {
            let mut p = params.clone();
            p.nmax = Some(crate::scenario::params::NmaxValue::One(2));
            let mut alg = FockKind.build(&p)?;
            alg.kind = "dummy".into();
            Ok(alg)
        }
    }

    #[test]
    fn builtin_names() {
        let r = AlgebraRegistry::builtin();
        assert_eq!(r.names(), vec!["fock", "multimode", "single_mode_su11", "su11", "su2"]);
    }

    #[test]
    fn unknown_algebra() {
        assert!(matches!(AlgebraRegistry::builtin().get("su3"), Err(GameError::Params(_))));
    }

    #[test]
    fn foreign_params_rejected() {
        let params = AlgebraParams {
            truncation: Some(4),
            ..Default::default()
        };
        let err = AlgebraRegistry::builtin().build("su2", &params).unwrap_err();
        assert!(matches!(err, GameError::Params(m) if m.contains("truncation")));
    }

    #[test]
    fn custom_kind_registers() {
        let mut r = AlgebraRegistry::new();
        r.register(Arc::new(Dummy));
        let alg = r.build("dummy", &AlgebraParams::default()).unwrap();
        assert_eq!(alg.kind, "dummy");
        assert_eq!(alg.space.dim(), 3);
    }
}
