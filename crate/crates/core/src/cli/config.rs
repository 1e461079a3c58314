use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::center::{
    build_autoequivalence, build_center_abelian, build_center_rep_group, build_center_ty, AutoequivalenceSpec,
    CenterAutoEquiv, CenterModel, TauSign, TyData,
};
use crate::fusion::{rep_ring, ty_fusion_ring, FusionRing, ObjectVector};
use crate::groups::{build_group, character_table, AbelianGroup, CharacterTable, FiniteGroup, GroupSpec};
use crate::obstruct::Budget;
use crate::tube::Cover;

use super::CliError;

pub const CONFIG_VERSION: u32 = 1;
pub const DEFAULT_CEILING: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CategorySpec {
    RepGroup(GroupSpec),
    Ty(TySpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TySpec {
    pub abelian: Vec<u64>,
    pub bicharacter: Vec<Vec<i64>>,
    pub tau: TauSign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputMode {
    Text,
    Json,
}

/// Everything a command may need, validated before any computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub version: u32,
    pub category: CategorySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<BTreeMap<String, u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub autoequivalence: Option<AutoequivalenceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_min: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<Cover>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<Budget>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ceiling: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputMode>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))?;
        if cfg.version != CONFIG_VERSION {
            return Err(CliError::Config(format!(
                "unsupported config version {}, expected {CONFIG_VERSION}",
                cfg.version
            )));
        }
        Ok(cfg)
    }

    pub fn ceiling(&self) -> usize {
        self.ceiling.unwrap_or(DEFAULT_CEILING)
    }
}

/// Fusion ring, center model and optional group data for a category spec.
pub struct Context {
    pub ring: FusionRing,
    pub model: CenterModel,
    pub group: Option<(FiniteGroup, CharacterTable)>,
}

impl Context {
    pub fn build(spec: &CategorySpec) -> Result<Self, CliError> {
        match spec {
            CategorySpec::RepGroup(gs) => {
                let group = build_group(gs).map_err(CliError::config)?;
                let table = character_table(&group).map_err(CliError::from_group)?;
                let ring = rep_ring(&group, &table).map_err(CliError::compute)?;
                let model = match gs {
                    GroupSpec::Abelian(orders) => {
                        let a = AbelianGroup::new(orders.clone()).map_err(CliError::config)?;
                        build_center_abelian(&a, &ring)
                    }
                    _ => build_center_rep_group(&group, &table, &ring),
                }
                .map_err(CliError::compute)?;
                Ok(Context {
                    ring,
                    model,
                    group: Some((group, table)),
                })
            }
            CategorySpec::Ty(ty) => {
                let a = AbelianGroup::new(ty.abelian.clone()).map_err(CliError::config)?;
                let data = TyData::new(a.clone(), ty.bicharacter.clone(), ty.tau).map_err(CliError::config)?;
                let ring = ty_fusion_ring(&a);
                let model = build_center_ty(&data, &ring).map_err(CliError::compute)?;
                Ok(Context { ring, model, group: None })
            }
        }
    }

    pub fn autoequivalence(&self, spec: Option<&AutoequivalenceSpec>) -> Result<CenterAutoEquiv, CliError> {
        match spec {
            None => Ok(CenterAutoEquiv::identity(&self.model)),
            Some(s) => build_autoequivalence(&self.model, s).map_err(CliError::config),
        }
    }

    pub fn object(&self, entries: &BTreeMap<String, u64>) -> Result<ObjectVector, CliError> {
        let v = self.ring.vector_from_labels(entries).map_err(CliError::config)?;
        if v.is_zero() {
            return Err(CliError::Config("object is zero".into()));
        }
        Ok(v)
    }
}

/// Parses `"chi00 + 2*rho"` into a label-to-multiplicity map.
pub fn parse_object(text: &str) -> Result<BTreeMap<String, u64>, CliError> {
    let mut out = BTreeMap::new();
    for term in text.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(CliError::Config(format!("empty term in object {text:?}")));
        }
        let (count, label) = match term.split_once('*') {
            Some((c, l)) => (
                c.trim()
                    .parse::<u64>()
                    .map_err(|e| CliError::Config(format!("bad multiplicity in {term:?}: {e}")))?,
                l.trim(),
            ),
            None => (1, term),
        };
        *out.entry(label.to_string()).or_insert(0) += count;
    }
    Ok(out)
}

/// Parses `"max_entry,max_candidates,ceiling"`.
pub fn parse_budget(text: &str) -> Result<Budget, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || CliError::Config(format!("budget must be MAX_ENTRY,MAX_CANDIDATES,CEILING, got {text:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    Ok(Budget {
        max_entry: parts[0].parse().map_err(|_| bad())?,
        max_candidates: parts[1].parse().map_err(|_| bad())?,
        ceiling: parts[2].parse().map_err(|_| bad())?,
    })
}
