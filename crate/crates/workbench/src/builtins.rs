//! Built-in configurations and the closed forms known for them.

use cartan_core::catalog;
use cartan_core::{Character, CircleElement, CocycleDescriptor, GroupDescriptor, GroupElement, SubgroupDescriptor};

use crate::config::{parse_config, WorkbenchConfig};

pub const G5_JSON: &str = include_str!("../configs/g5.json");
pub const COUNTEREXAMPLE_JSON: &str = include_str!("../configs/counterexample.json");
pub const ROTATION_JSON: &str = include_str!("../configs/rotation.json");
pub const EXPECTED_JSON: &str = include_str!("../fixtures/expected_verdicts.json");

/// Names accepted by `--config builtin:<name>`.
pub const BUILTIN_NAMES: [&str; 3] = ["g5", "counterexample", "rotation"];

pub fn builtin(name: &str) -> Option<WorkbenchConfig> {
    let text = match name {
        "g5" => G5_JSON,
        "counterexample" => COUNTEREXAMPLE_JSON,
        "rotation" => ROTATION_JSON,
        _ => return None,
    };
    Some(parse_config(text).expect("built-in configs are valid"))
}

/// Hand-derived formulas for the Weyl action and σ̃.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    S0,
    S1,
    S2,
    Rotation(CircleElement),
}

impl ClosedForm {
    /// Recognizes the built-in pairs, whatever the config they came from.
    pub fn detect(d: &GroupDescriptor, c: &CocycleDescriptor, s: &SubgroupDescriptor) -> Option<Self> {
        if *d == catalog::z5_group() && *c == catalog::z5_cocycle() {
            let scalings = s.scalings();
            return [(catalog::s0(), ClosedForm::S0), (catalog::s1(), ClosedForm::S1), (catalog::s2(), ClosedForm::S2)]
                .into_iter()
                .find(|(t, _)| t.scalings() == scalings)
                .map(|(_, f)| f);
        }
        if *d == catalog::rotation_group() && s.scalings() == catalog::rotation_s().scalings() {
            if let [t] = c.terms() {
                if (t.left, t.right) == (2, 1) {
                    return Some(ClosedForm::Rotation(t.angle));
                }
            }
        }
        None
    }

    pub fn action(&self, g: &GroupElement, nu: &Character) -> Character {
        match self {
            ClosedForm::S0 => catalog::s0_action(g, nu),
            ClosedForm::S1 => catalog::s1_action(g, nu),
            ClosedForm::S2 => catalog::s2_action(g, nu),
            ClosedForm::Rotation(theta) => catalog::rotation_action(*theta, g, nu),
        }
    }

    pub fn sigma(&self, g: &GroupElement, h: &GroupElement, nu: &Character) -> CircleElement {
        match self {
            ClosedForm::S0 | ClosedForm::Rotation(_) => CircleElement::IDENTITY,
            ClosedForm::S1 => catalog::s1_sigma(g, h, nu),
            ClosedForm::S2 => catalog::s2_sigma(g, h, nu),
        }
    }
}
