//! JSON file formats for groups, actions, subsets, and partial maps.
//!
//! One schema per object type:
//!
//! - group: `{"order": m, "table": [[...], ...]}` — identity and inverses
//!   are never serialized, always recomputed on load;
//! - action: `{"group": <inline group or path>, "carrier_size": n,
//!   "act": [[[...]]]}` with `act` indexed `[g][x1][x2]`;
//! - subset: a JSON array of carrier indices;
//! - partial map: `{"source": <action path>, "target": <action path>,
//!   "pairs": [[a, y], ...]}`.
//!
//! Paths inside a file are resolved against the directory of the file that
//! contains them. Validation always runs on load.

use crate::action::{ActionError, BinaryAction};
use crate::group::{FiniteGroup, GroupError};
use crate::orbit::{CarrierSubset, OrbitError};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid JSON in {path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("invalid group in {path}: {source}")]
    Group { path: PathBuf, source: GroupError },
    #[error("invalid action in {path}: {source}")]
    Action { path: PathBuf, source: ActionError },
    #[error("invalid subset in {path}: {source}")]
    Subset { path: PathBuf, source: OrbitError },
    #[error("duplicate domain point {point} in {path}")]
    DuplicateMapPoint { path: PathBuf, point: usize },
}

#[derive(Debug, Serialize, Deserialize)]
struct GroupFile {
    order: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum GroupRef {
    Path(String),
    Inline(GroupFile),
}

#[derive(Debug, Serialize, Deserialize)]
struct ActionFile {
    group: GroupRef,
    carrier_size: usize,
    act: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct MapFile {
    source: String,
    target: String,
    pairs: Vec<(usize, usize)>,
}

/// A partial map loaded from disk, with its source and target actions. The
/// map itself is kept as raw pairs; callers build a
/// [`PartialEquivariantMap`](crate::extension::PartialEquivariantMap)
/// borrowing the two actions.
#[derive(Debug)]
pub struct LoadedMap {
    pub source: BinaryAction,
    pub target: BinaryAction,
    pub pairs: Vec<(usize, usize)>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| IoError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    text.push('\n');
    fs::write(path, text).map_err(|source| IoError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn resolve(base: &Path, relative: &str) -> PathBuf {
    let rel = Path::new(relative);
    if rel.is_absolute() {
        rel.to_path_buf()
    } else {
        base.parent().unwrap_or(Path::new(".")).join(rel)
    }
}

fn group_from_file(path: &Path, file: GroupFile) -> Result<FiniteGroup, IoError> {
    if file.table.len() != file.order {
        return Err(IoError::Group {
            path: path.to_path_buf(),
            source: GroupError::NotSquare {
                row: 0,
                len: file.table.len(),
                order: file.order,
            },
        });
    }
    FiniteGroup::from_table(file.table).map_err(|source| IoError::Group {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_group(path: &Path) -> Result<FiniteGroup, IoError> {
    let file: GroupFile = read_json(path)?;
    group_from_file(path, file)
}

pub fn save_group(path: &Path, group: &FiniteGroup) -> Result<(), IoError> {
    write_json(
        path,
        &GroupFile {
            order: group.order(),
            table: group.table(),
        },
    )
}

pub fn load_action(path: &Path) -> Result<BinaryAction, IoError> {
    let file: ActionFile = read_json(path)?;
    let group = match file.group {
        GroupRef::Inline(g) => group_from_file(path, g)?,
        GroupRef::Path(rel) => load_group(&resolve(path, &rel))?,
    };
    BinaryAction::from_table(group, file.carrier_size, file.act).map_err(|source| {
        IoError::Action {
            path: path.to_path_buf(),
            source,
        }
    })
}

/// Saves an action with its group inlined.
pub fn save_action(path: &Path, action: &BinaryAction) -> Result<(), IoError> {
    write_json(
        path,
        &ActionFile {
            group: GroupRef::Inline(GroupFile {
                order: action.group().order(),
                table: action.group().table(),
            }),
            carrier_size: action.carrier_size(),
            act: action.table(),
        },
    )
}

/// Renders an action to its canonical JSON text (the same bytes
/// [`save_action`] writes).
pub fn action_to_json(action: &BinaryAction) -> String {
    let file = ActionFile {
        group: GroupRef::Inline(GroupFile {
            order: action.group().order(),
            table: action.group().table(),
        }),
        carrier_size: action.carrier_size(),
        act: action.table(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("serialization cannot fail");
    text.push('\n');
    text
}

pub fn load_subset(path: &Path, carrier_size: usize) -> Result<CarrierSubset, IoError> {
    let members: Vec<usize> = read_json(path)?;
    CarrierSubset::new(carrier_size, members).map_err(|source| IoError::Subset {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_map(path: &Path) -> Result<LoadedMap, IoError> {
    let file: MapFile = read_json(path)?;
    let source = load_action(&resolve(path, &file.source))?;
    let target = load_action(&resolve(path, &file.target))?;
    let mut points: Vec<usize> = file.pairs.iter().map(|&(a, _)| a).collect();
    points.sort_unstable();
    if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
        return Err(IoError::DuplicateMapPoint {
            path: path.to_path_buf(),
            point: w[0],
        });
    }
    Ok(LoadedMap {
        source,
        target,
        pairs: file.pairs,
    })
}
