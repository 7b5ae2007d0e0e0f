//! JSON instance files: lattices, frames, and maps between frames.
//!
//! ```json
//! {"type":"lattice","elements":["0","1"],"order":[["0","1"]]}
//! {"type":"frame","elements":["x","y"],"leq1":[["x","y"]],"leq2":[]}
//! {"type":"map","from":"f.json","to":"g.json","pairs":[["x","s"]]}
//! ```
//!
//! `order`, `leq1`, `leq2` may be any generating set; the closure is taken.
//! Map endpoints are loaded relative to the map file's directory and are not
//! required to be doubly ordered (bounded-morphism checks cover images that
//! fail that condition).

use crate::frame::{build_frame, Frame, FrameError};
use crate::lattice::{build_lattice, Lattice, LatticeError};
use crate::morphism::{frame_map, FrameMap, MapError, RelFrame};
use crate::Caps;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum InstanceDoc {
    Lattice {
        elements: Vec<String>,
        order: Vec<(String, String)>,
    },
    Frame {
        elements: Vec<String>,
        leq1: Vec<(String, String)>,
        leq2: Vec<(String, String)>,
    },
    Map {
        from: String,
        to: String,
        pairs: Vec<(String, String)>,
    },
}

#[derive(Debug)]
pub enum Instance {
    Lattice(Lattice),
    Frame(Frame),
    Map(FrameMap),
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: parse error: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Lattice {
        path: PathBuf,
        source: LatticeError,
    },
    #[error("{path}: {source}")]
    Frame { path: PathBuf, source: FrameError },
    #[error("{path}: {source}")]
    Map { path: PathBuf, source: MapError },
    #[error("{path}: carrier has {size} elements, over the cap {cap}")]
    OverCap {
        path: PathBuf,
        size: usize,
        cap: usize,
    },
    #[error("{path}: map endpoint must be a frame document")]
    NotAFrame { path: PathBuf },
}

pub fn parse_doc(path: &Path) -> Result<InstanceDoc, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| LoadError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn check_cap(path: &Path, size: usize, caps: &Caps) -> Result<(), LoadError> {
    if size > caps.carrier {
        Err(LoadError::OverCap {
            path: path.to_path_buf(),
            size,
            cap: caps.carrier,
        })
    } else {
        Ok(())
    }
}

/// Load a map endpoint as a raw two-relation frame, without the
/// doubly-ordered validation.
fn load_rel_frame(path: &Path, caps: &Caps) -> Result<RelFrame, LoadError> {
    match parse_doc(path)? {
        InstanceDoc::Frame {
            elements,
            leq1,
            leq2,
        } => {
            check_cap(path, elements.len(), caps)?;
            RelFrame::new(elements, vec![leq1, leq2]).map_err(|source| LoadError::Map {
                path: path.to_path_buf(),
                source,
            })
        }
        _ => Err(LoadError::NotAFrame {
            path: path.to_path_buf(),
        }),
    }
}

pub fn load_instance(path: &Path, caps: &Caps) -> Result<Instance, LoadError> {
    match parse_doc(path)? {
        InstanceDoc::Lattice { elements, order } => {
            check_cap(path, elements.len(), caps)?;
            let l = build_lattice(elements, order).map_err(|source| LoadError::Lattice {
                path: path.to_path_buf(),
                source,
            })?;
            Ok(Instance::Lattice(l))
        }
        InstanceDoc::Frame {
            elements,
            leq1,
            leq2,
        } => {
            check_cap(path, elements.len(), caps)?;
            let f = build_frame(elements, leq1, leq2).map_err(|source| LoadError::Frame {
                path: path.to_path_buf(),
                source,
            })?;
            Ok(Instance::Frame(f))
        }
        InstanceDoc::Map { from, to, pairs } => {
            let dir = path.parent().unwrap_or_else(|| Path::new("."));
            let source_frame = load_rel_frame(&dir.join(&from), caps)?;
            let target_frame = load_rel_frame(&dir.join(&to), caps)?;
            let m = frame_map(source_frame, target_frame, &pairs).map_err(|source| {
                LoadError::Map {
                    path: path.to_path_buf(),
                    source,
                }
            })?;
            Ok(Instance::Map(m))
        }
    }
}
