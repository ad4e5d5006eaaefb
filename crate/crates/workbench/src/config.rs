//! Workbench configuration files.

use std::collections::BTreeMap;
use std::path::Path;

use cartan_core::error::{CocycleError, GroupError, SubgroupError};
use cartan_core::{CocycleDescriptor, Component, GroupDescriptor, GroupElement, SubgroupDescriptor, TwistTerm};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}, field `{field}`: {message}")]
    Syntax {
        field: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `group`: {0}")]
    Group(#[from] GroupError),
    #[error("field `cocycle`: {0}")]
    Cocycle(#[from] CocycleError),
    #[error("field `subgroups.{name}`: {source}")]
    Subgroup {
        name: String,
        #[source]
        source: SubgroupError,
    },
    #[error("field `probe[{index}]`: {source}")]
    Probe {
        index: usize,
        #[source]
        source: GroupError,
    },
    #[error("field `{field}` must be a positive integer")]
    NotPositive { field: &'static str },
    #[error("no subgroup named {name:?}; available: {available}")]
    UnknownSubgroup { name: String, available: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub components: Vec<Component>,
    #[serde(default)]
    pub twist: Vec<TwistTerm>,
}

impl GroupSpec {
    pub fn from_descriptor(d: &GroupDescriptor) -> Self {
        GroupSpec {
            components: d.components().to_vec(),
            twist: d.twist().to_vec(),
        }
    }
}

fn default_ball() -> u32 {
    3
}

fn default_kmax() -> u32 {
    4
}

fn default_samples() -> usize {
    500
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkbenchConfig {
    pub group: GroupSpec,
    #[serde(default)]
    pub cocycle: CocycleDescriptor,
    pub subgroups: BTreeMap<String, SubgroupDescriptor>,
    #[serde(default = "default_ball")]
    pub ball_radius: u32,
    #[serde(default = "default_kmax")]
    pub k_max: u32,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    /// Support of the candidate `h` for the counterexample command.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<Vec<GroupElement>>,
}

/// Parses and validates a configuration.
pub fn parse_config(text: &str) -> Result<WorkbenchConfig, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let cfg: WorkbenchConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        ConfigError::Syntax {
            field,
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        }
    })?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<WorkbenchConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

impl WorkbenchConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let d = GroupDescriptor::new(self.group.components.clone(), self.group.twist.clone())?;
        self.cocycle.structural_check(&d)?;
        for (name, s) in &self.subgroups {
            s.structural_check(&d).map_err(|source| ConfigError::Subgroup {
                name: name.clone(),
                source,
            })?;
        }
        for (field, v) in [("ball_radius", self.ball_radius as usize), ("k_max", self.k_max as usize), ("samples", self.samples)] {
            if v == 0 {
                return Err(ConfigError::NotPositive { field });
            }
        }
        for (index, g) in self.probe.iter().flatten().enumerate() {
            d.element(g.coords()).map_err(|source| ConfigError::Probe { index, source })?;
        }
        Ok(())
    }

    /// The group; valid after [`parse_config`].
    pub fn descriptor(&self) -> GroupDescriptor {
        GroupDescriptor::unchecked(self.group.components.clone(), self.group.twist.clone())
    }

    pub fn subgroup(&self, name: &str) -> Result<&SubgroupDescriptor, ConfigError> {
        self.subgroups.get(name).ok_or_else(|| ConfigError::UnknownSubgroup {
            name: name.to_string(),
            available: self.subgroups.keys().cloned().collect::<Vec<_>>().join(", "),
        })
    }

    /// Probe elements reduced to canonical coordinates.
    pub fn probe_elements(&self) -> Option<Vec<GroupElement>> {
        let d = self.descriptor();
        self.probe
            .as_ref()
            .map(|p| p.iter().map(|g| d.elem(g.coords())).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "group": {"components": ["Z", "Z/4"], "twist": []},
        "subgroups": {"A": [1, 2]}
    }"#;

    #[test]
    fn defaults_apply() {
        let cfg = parse_config(MINIMAL).unwrap();
        assert_eq!((cfg.ball_radius, cfg.k_max, cfg.samples, cfg.seed), (3, 4, 500, 0));
        assert!(cfg.cocycle.terms().is_empty());
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_config("{\n  \"group\": {\"components\": [\"Q\"]},\n  \"subgroups\": {}\n}").unwrap_err();
        match err {
            ConfigError::Syntax { field, line, .. } => {
                assert_eq!(line, 2);
                assert!(field.starts_with("group.components"), "{field}");
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn zero_samples_rejected() {
        let text = MINIMAL.replace("\"subgroups\"", "\"samples\": 0, \"subgroups\"");
        assert!(matches!(parse_config(&text), Err(ConfigError::NotPositive { field: "samples" })));
    }
}
