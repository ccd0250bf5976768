//! Instance formats: plain `x y` lines, the TSPLIB coordinate subset,
//! regular n-gons and seeded random point sets.

use std::fmt;
use std::io::Read;
use std::path::Path;

use mdt_core::geom::{orientation, validate_points, GeomError, Orientation, Point};
use mdt_core::instances::{random_points, DEFAULT_SIDE};
use mdt_core::ngon::ngon_points;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceFormat {
    Plain,
    Tsplib,
    Ngon,
    Random,
}

impl fmt::Display for SourceFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SourceFormat::Plain => "plain",
            SourceFormat::Tsplib => "tsplib",
            SourceFormat::Ngon => "ngon",
            SourceFormat::Random => "random",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub name: String,
    pub points: Vec<Point>,
    pub format: SourceFormat,
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("all points are collinear")]
    AllCollinear,
    #[error("point {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("unsupported TSPLIB edge weight type {0}")]
    UnsupportedWeightType(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Instance {
    /// Checks the invariants every solvable instance must satisfy.
    pub fn new(name: impl Into<String>, points: Vec<Point>, format: SourceFormat) -> Result<Self, InstanceError> {
        validate_points(&points).map_err(|e| match e {
            GeomError::TooFewPoints(n) => InstanceError::TooFewPoints(n),
            GeomError::NonFinite(i) => InstanceError::NonFinite(i),
            GeomError::DuplicatePoint(a, b) => InstanceError::DuplicatePoint {
                first: a.min(b),
                second: a.max(b),
            },
            other => unreachable!("validate_points returned {other}"),
        })?;
        let a = points[0];
        let b = points[1];
        if points[2..]
            .iter()
            .all(|c| orientation(&a, &b, c) == Orientation::Collinear)
        {
            return Err(InstanceError::AllCollinear);
        }
        Ok(Instance {
            name: name.into(),
            points,
            format,
        })
    }

    pub fn ngon(n: usize) -> Result<Self, InstanceError> {
        if n < 3 {
            return Err(InstanceError::TooFewPoints(n));
        }
        Instance::new(format!("ngon{n}"), ngon_points(n), SourceFormat::Ngon)
    }

    /// `n` distinct integer points, uniform in `[0, 10^6)^2`.
    pub fn random(n: usize, seed: u64) -> Result<Self, InstanceError> {
        Instance::new(
            format!("random{n}_s{seed}"),
            random_points(n, DEFAULT_SIDE, seed),
            SourceFormat::Random,
        )
    }
}

/// Parses either format, detecting TSPLIB by its `NODE_COORD_SECTION`.
pub fn parse_str(name: &str, text: &str) -> Result<Instance, InstanceError> {
    if text.lines().any(|l| l.trim() == "NODE_COORD_SECTION") {
        parse_tsplib(name, text)
    } else {
        parse_plain(name, text)
    }
}

pub fn parse_path(path: &Path) -> Result<Instance, InstanceError> {
    let text = std::fs::read_to_string(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());
    parse_str(&name, &text)
}

pub fn parse_reader(name: &str, mut r: impl Read) -> Result<Instance, InstanceError> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    parse_str(name, &text)
}

fn parse_coord(tok: &str, line: usize) -> Result<f64, InstanceError> {
    let v: f64 = tok.parse().map_err(|_| InstanceError::Malformed {
        line,
        message: format!("not a number: {tok:?}"),
    })?;
    if !v.is_finite() {
        return Err(InstanceError::Malformed {
            line,
            message: format!("non-finite coordinate {tok:?}"),
        });
    }
    Ok(v)
}

/// One `x y` pair per line; `#` starts a comment.
pub fn parse_plain(name: &str, text: &str) -> Result<Instance, InstanceError> {
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(InstanceError::Malformed {
                line,
                message: format!("expected 2 coordinates, found {}", toks.len()),
            });
        }
        points.push(Point::new(parse_coord(toks[0], line)?, parse_coord(toks[1], line)?));
    }
    Instance::new(name, points, SourceFormat::Plain)
}

/// The `NODE_COORD_SECTION` of a TSPLIB file. Coordinates are taken as
/// planar points whatever the declared weight type, except that explicit
/// matrices have no coordinates and are rejected.
pub fn parse_tsplib(name: &str, text: &str) -> Result<Instance, InstanceError> {
    let mut name = name.to_string();
    let mut in_coords = false;
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() {
            continue;
        }
        if !in_coords {
            if body == "NODE_COORD_SECTION" {
                in_coords = true;
                continue;
            }
            if let Some((key, value)) = body.split_once(':') {
                let value = value.trim();
                match key.trim() {
                    "NAME" => name = value.to_string(),
                    "EDGE_WEIGHT_TYPE" if value == "EXPLICIT" => {
                        return Err(InstanceError::UnsupportedWeightType(value.to_string()))
                    }
                    _ => {}
                }
            }
            continue;
        }
        if body == "EOF" || body.ends_with("_SECTION") {
            break;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(InstanceError::Malformed {
                line,
                message: format!("expected `id x y`, found {} fields", toks.len()),
            });
        }
        points.push(Point::new(parse_coord(toks[1], line)?, parse_coord(toks[2], line)?));
    }
    if !in_coords {
        return Err(InstanceError::Malformed {
            line: text.lines().count(),
            message: "missing NODE_COORD_SECTION".into(),
        });
    }
    Instance::new(name, points, SourceFormat::Tsplib)
}

/// Plain-text form that [`parse_plain`] reads back bit for bit.
pub fn to_plain(inst: &Instance) -> String {
    let mut out = format!("# {}\n", inst.name);
    for p in &inst.points {
        out.push_str(&format!("{:?} {:?}\n", p.x, p.y));
    }
    out
}
