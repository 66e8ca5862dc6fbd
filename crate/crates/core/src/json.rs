//! Versioned JSON files: families, configurations, abstract lattices and
//! base catalogs. Subsets are lists of labels.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::expr::BaseCatalog;
use crate::lattice::{AbstractLattice, LatticeError, SetFamily};
use crate::subset::{Config, SubsetError, SubsetMask, Universe};

pub const VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unsupported format version {0}")]
    Version(u64),
    #[error(transparent)]
    Subset(#[from] SubsetError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

impl FormatError {
    pub fn name(&self) -> &'static str {
        match self {
            FormatError::Malformed(_) => "FormatError",
            FormatError::Version(_) => "UnsupportedVersionError",
            FormatError::Subset(e) => e.name(),
            FormatError::Lattice(e) => e.name(),
        }
    }
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Malformed(e.to_string())
    }
}

type Labels = Vec<String>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    version: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    universe: Option<Labels>,
    sets: Vec<Labels>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    version: u64,
    universe: Labels,
    members: Vec<Labels>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeFile {
    version: u64,
    nodes: Labels,
    covers: Vec<(usize, usize)>,
    top: usize,
    bottom: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BaseFile {
    version: u64,
    universe: Labels,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sets: Option<Vec<Labels>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    configs: Option<Vec<Vec<Labels>>>,
}

fn check_version(text: &str) -> Result<(), FormatError> {
    let v: Value = serde_json::from_str(text)?;
    match v.get("version").and_then(Value::as_u64) {
        Some(VERSION) => Ok(()),
        Some(other) => Err(FormatError::Version(other)),
        None => Err(FormatError::Malformed("missing version field".into())),
    }
}

fn labels(u: &Universe, m: SubsetMask) -> Labels {
    u.labels_of(m)
}

fn mask(u: &Universe, l: &[String]) -> Result<SubsetMask, FormatError> {
    Ok(u.mask_of(l)?)
}

pub fn parse_family(text: &str) -> Result<SetFamily, FormatError> {
    check_version(text)?;
    let f: FamilyFile = serde_json::from_str(text)?;
    let u = match f.universe {
        Some(labels) => Universe::new(labels)?,
        None => {
            let mut all: Vec<String> = f.sets.iter().flatten().cloned().collect();
            all.sort();
            all.dedup();
            Universe::new(all)?
        }
    };
    let sets = f.sets.iter().map(|s| mask(&u, s)).collect::<Result<Vec<_>, _>>()?;
    Ok(SetFamily::new(&u, sets)?)
}

pub fn family_to_json(f: &SetFamily) -> Value {
    let u = f.universe();
    let file = FamilyFile {
        version: VERSION,
        universe: Some(u.labels().to_vec()),
        sets: f.sets().iter().map(|&m| labels(u, m)).collect(),
    };
    serde_json::to_value(&file).expect("serialisable")
}

pub fn parse_config(text: &str) -> Result<Config, FormatError> {
    check_version(text)?;
    let f: ConfigFile = serde_json::from_str(text)?;
    let u = Universe::new(f.universe)?;
    let ms = f.members.iter().map(|s| mask(&u, s)).collect::<Result<Vec<_>, _>>()?;
    Ok(Config::from_masks(&u, ms)?)
}

pub fn config_to_json(c: &Config) -> Value {
    let u = c.universe();
    let file = ConfigFile {
        version: VERSION,
        universe: u.labels().to_vec(),
        members: c.members().into_iter().map(|m| labels(u, m)).collect(),
    };
    serde_json::to_value(&file).expect("serialisable")
}

/// An abstract lattice with its node names.
pub fn parse_lattice(text: &str) -> Result<(AbstractLattice, Vec<String>), FormatError> {
    check_version(text)?;
    let f: LatticeFile = serde_json::from_str(text)?;
    let l = AbstractLattice::new(f.nodes.len(), &f.covers, f.top, f.bottom)?;
    Ok((l, f.nodes))
}

pub fn lattice_to_json(l: &AbstractLattice, names: &[String]) -> Value {
    let file = LatticeFile {
        version: VERSION,
        nodes: names.to_vec(),
        covers: l.order().cover_pairs(),
        top: l.top(),
        bottom: l.bottom(),
    };
    serde_json::to_value(&file).expect("serialisable")
}

/// A catalog of plain sets or of configurations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Base {
    Sets(BaseCatalog<SubsetMask>),
    Configs(BaseCatalog<Config>),
}

pub fn parse_base(text: &str) -> Result<(Arc<Universe>, Base), FormatError> {
    check_version(text)?;
    let f: BaseFile = serde_json::from_str(text)?;
    let u = Universe::new(f.universe)?;
    match (f.sets, f.configs) {
        (Some(sets), None) => {
            let entries = sets.iter().map(|s| mask(&u, s)).collect::<Result<Vec<_>, _>>()?;
            let names = entries.iter().map(|&m| u.render(m)).collect();
            Ok((
                u,
                Base::Sets(BaseCatalog::with_names(SubsetMask::EMPTY, entries, names)),
            ))
        }
        (None, Some(configs)) => {
            let entries = configs
                .iter()
                .map(|c| {
                    let ms = c.iter().map(|s| mask(&u, s)).collect::<Result<Vec<_>, _>>()?;
                    Ok(Config::from_masks(&u, ms)?)
                })
                .collect::<Result<Vec<_>, FormatError>>()?;
            let names = entries.iter().map(Config::render).collect();
            Ok((
                u.clone(),
                Base::Configs(BaseCatalog::with_names(Config::empty(&u), entries, names)),
            ))
        }
        _ => Err(FormatError::Malformed(
            "a base needs exactly one of \"sets\" and \"configs\"".into(),
        )),
    }
}

pub fn sets_base_to_json(u: &Universe, b: &BaseCatalog<SubsetMask>) -> Value {
    let file = BaseFile {
        version: VERSION,
        universe: u.labels().to_vec(),
        sets: Some(b.entries().iter().map(|&m| labels(u, m)).collect()),
        configs: None,
    };
    serde_json::to_value(&file).expect("serialisable")
}

pub fn configs_base_to_json(u: &Universe, b: &BaseCatalog<Config>) -> Value {
    let file = BaseFile {
        version: VERSION,
        universe: u.labels().to_vec(),
        sets: None,
        configs: Some(
            b.entries()
                .iter()
                .map(|c| c.members().into_iter().map(|m| labels(u, m)).collect())
                .collect(),
        ),
    };
    serde_json::to_value(&file).expect("serialisable")
}
