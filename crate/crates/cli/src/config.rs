//! Surface descriptions read from TOML or from command-line flags.

use std::collections::BTreeMap;
use std::fmt;

use hilbnef_core::lattice::SurfaceData;
use hilbnef_core::{dp1, presets, DivisorClass, IntersectionLattice, Preset};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PresetName {
    P3Hypersurface,
    CyclicCover,
    Dp1,
    Custom,
}

/// Flat description of a surface. Every number is an integer.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<PresetName>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub preset_params: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Row-major.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical: Option<Vec<i64>>,
    #[serde(default, alias = "chi_O", skip_serializing_if = "Option::is_none")]
    pub chi_o: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effective_generators: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ample_reference: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

impl SurfaceConfig {
    /// Parses TOML. Floating-point values are type errors, reported with their position.
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError(format!("config: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn p3_hypersurface(d: i64) -> Self {
        SurfaceConfig {
            preset: Some(PresetName::P3Hypersurface),
            preset_params: BTreeMap::from([("d".into(), d)]),
            ..Default::default()
        }
    }

    pub fn cyclic_cover(d: i64, e: i64, chi_o: i64) -> Self {
        SurfaceConfig {
            preset: Some(PresetName::CyclicCover),
            preset_params: BTreeMap::from([("d".into(), d), ("e".into(), e)]),
            chi_o: Some(chi_o),
            ..Default::default()
        }
    }

    pub fn dp1() -> Self {
        SurfaceConfig {
            preset: Some(PresetName::Dp1),
            ..Default::default()
        }
    }

    /// `Pic = Z·H`, `H² = d`, `K = kH`, effective generator `aH`.
    pub fn rank_one(d: i64, k: i64, a: i64, chi_o: i64) -> Self {
        SurfaceConfig {
            preset: Some(PresetName::Custom),
            rank: Some(1),
            gram: Some(vec![d]),
            canonical: Some(vec![k]),
            chi_o: Some(chi_o),
            effective_generators: Some(vec![vec![a]]),
            ample_reference: Some(vec![1]),
            ..Default::default()
        }
    }

    fn param(&self, key: &str) -> Result<i64, ConfigError> {
        match self.preset_params.get(key) {
            Some(v) => Ok(*v),
            None => err(format!("preset_params.{key} is required")),
        }
    }

    fn only_params(&self, allowed: &[&str]) -> Result<(), ConfigError> {
        for k in self.preset_params.keys() {
            if !allowed.contains(&k.as_str()) {
                return err(format!("preset_params.{k} is not used by this preset"));
            }
        }
        Ok(())
    }

    fn no_custom_fields(&self) -> Result<(), ConfigError> {
        let set = [
            ("rank", self.rank.is_some()),
            ("gram", self.gram.is_some()),
            ("canonical", self.canonical.is_some()),
            ("effective_generators", self.effective_generators.is_some()),
            ("ample_reference", self.ample_reference.is_some()),
        ];
        match set.iter().find(|(_, present)| *present) {
            Some((field, _)) => err(format!("{field} is only accepted for custom surfaces")),
            None => Ok(()),
        }
    }

    pub fn preset(&self) -> PresetName {
        self.preset.unwrap_or(PresetName::Custom)
    }

    pub fn build(&self) -> Result<SurfaceData, ConfigError> {
        let engine = |e: hilbnef_core::Error| ConfigError(e.to_string());
        let mut surface = match self.preset() {
            PresetName::P3Hypersurface => {
                self.only_params(&["d"])?;
                self.no_custom_fields()?;
                if self.chi_o.is_some() {
                    return err("chi_o is determined by the p3-hypersurface preset");
                }
                presets::p3_hypersurface(self.param("d")?).map_err(engine)?
            }
            PresetName::CyclicCover => {
                self.only_params(&["d", "e"])?;
                self.no_custom_fields()?;
                let Some(chi) = self.chi_o else {
                    return err("chi_o is required for the cyclic-cover preset");
                };
                presets::cyclic_cover(self.param("d")?, self.param("e")?, chi).map_err(engine)?
            }
            PresetName::Dp1 => {
                self.only_params(&[])?;
                self.no_custom_fields()?;
                if self.chi_o.is_some() {
                    return err("chi_o is determined by the dp1 preset");
                }
                dp1::dp1_surface()
            }
            PresetName::Custom => self.build_custom()?,
        };
        if let Some(name) = &self.name {
            surface.name = name.clone();
        }
        Ok(surface)
    }

    fn build_custom(&self) -> Result<SurfaceData, ConfigError> {
        self.only_params(&[])?;
        let need = |field: &str| ConfigError(format!("{field} is required for custom surfaces"));
        let rank = self.rank.ok_or_else(|| need("rank"))?;
        if rank == 0 {
            return err("rank must be positive");
        }
        let gram = self.gram.as_ref().ok_or_else(|| need("gram"))?;
        if gram.len() != rank * rank {
            return err(format!("gram has {} entries, expected {}", gram.len(), rank * rank));
        }
        let vector = |field: &str, v: &[i64]| {
            if v.len() == rank {
                Ok(DivisorClass::from_ints(v))
            } else {
                err(format!("{field} has length {}, expected {rank}", v.len()))
            }
        };
        let canonical = vector("canonical", self.canonical.as_ref().ok_or_else(|| need("canonical"))?)?;
        let ample = vector(
            "ample_reference",
            self.ample_reference.as_ref().ok_or_else(|| need("ample_reference"))?,
        )?;
        let generators = self
            .effective_generators
            .as_ref()
            .ok_or_else(|| need("effective_generators"))?
            .iter()
            .enumerate()
            .map(|(i, g)| vector(&format!("effective_generators[{i}]"), g))
            .collect::<Result<Vec<_>, _>>()?;
        let chi = self.chi_o.ok_or_else(|| need("chi_o"))?;
        let rows = gram.chunks(rank).map(<[i64]>::to_vec).collect();
        let lattice = IntersectionLattice::new(rows).map_err(|e| ConfigError(e.to_string()))?;
        SurfaceData::new("custom surface", lattice, canonical, chi, generators, ample, Preset::Custom)
            .map_err(|e| ConfigError(e.to_string()))
    }
}
