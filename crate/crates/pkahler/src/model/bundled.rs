//! Compiled-in model fixtures with exact rational structure constants.

use std::collections::BTreeMap;

use super::{LieAlgebraModel, ModelError};
use crate::scalar::Scalar;

/// Names of the bundled models, as accepted by the CLI `--model` flag.
pub fn bundled_names() -> &'static [&'static str] {
    &["torus2", "torus3", "iwasawa", "sl2c"]
}

/// Look up a bundled model by name.
pub fn bundled_model(name: &str) -> Result<LieAlgebraModel, ModelError> {
    let mut a: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
    let b: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
    match name {
        // complex tori: abelian, every operator vanishes
        "torus2" => LieAlgebraModel::new("torus2", 2, a, b),
        "torus3" => LieAlgebraModel::new("torus3", 3, a, b),
        // Iwasawa nilmanifold: dφ³ = −φ¹∧φ²
        "iwasawa" => {
            a.insert((3, 1, 2), -Scalar::one());
            LieAlgebraModel::new("iwasawa", 3, a, b)
        }
        // SL(2,ℂ)/Γ with the standard holomorphic frame (α, β, η):
        // dα = −2η∧α, dβ = 2η∧β, dη = α∧β
        "sl2c" => {
            a.insert((1, 1, 3), Scalar::from_int(2));
            a.insert((2, 2, 3), Scalar::from_int(-2));
            a.insert((3, 1, 2), Scalar::one());
            LieAlgebraModel::new("sl2c", 3, a, b)
        }
        other => Err(ModelError::BadInput(format!(
            "unknown bundled model {other:?}; available: {}",
            bundled_names().join(", ")
        ))),
    }
}
