//! Instance files:
//!
//! ```json
//! {"n": 2, "kind": {"type": "generic"}, "seed": 0,
//!  "diag": [0.0, 0.0], "linear": [1.0, -1.0],
//!  "quad": [{"i": 0, "j": 1, "w": 0.5}]}
//! ```
//!
//! `kind.type` is `portfolio` (with `lambda`), `mvc` (with `b`) or `generic`.
//! An optional `constant` defaults to 0.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::instance::{ProblemKind, QuboInstance};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    n: usize,
    kind: KindFile,
    seed: u64,
    diag: Vec<f64>,
    linear: Vec<f64>,
    quad: Vec<QuadEntry>,
    #[serde(default, skip_serializing_if = "is_zero")]
    constant: f64,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

#[derive(Serialize, Deserialize)]
struct KindFile {
    #[serde(rename = "type")]
    ty: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct QuadEntry {
    i: usize,
    j: usize,
    w: f64,
}

pub fn to_json(inst: &QuboInstance) -> Result<String> {
    let kind = match inst.kind {
        ProblemKind::Portfolio { lambda } => KindFile {
            ty: "portfolio".into(),
            lambda: Some(lambda),
            b: None,
        },
        ProblemKind::Mvc { b } => KindFile {
            ty: "mvc".into(),
            lambda: None,
            b: Some(b),
        },
        ProblemKind::Generic => KindFile {
            ty: "generic".into(),
            lambda: None,
            b: None,
        },
    };
    let file = InstanceFile {
        n: inst.n,
        kind,
        seed: inst.seed,
        diag: inst.diag.clone(),
        linear: inst.linear.clone(),
        quad: inst
            .quad
            .iter()
            .map(|(&(i, j), &w)| QuadEntry { i, j, w })
            .collect(),
        constant: inst.constant,
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn save_instance(inst: &QuboInstance, path: &Path) -> Result<()> {
    let json = to_json(inst)?;
    std::fs::write(path, json + "\n").map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_instance(path: &Path) -> Result<QuboInstance> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_instance(&text, path)
}

/// Parses instance JSON; `origin` is only used in error messages.
pub fn parse_instance(text: &str, origin: &Path) -> Result<QuboInstance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: origin.to_owned(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let schema = |field: &str, message: String| Error::Schema {
        path: origin.to_owned(),
        field: field.into(),
        message,
    };
    let kind = match file.kind.ty.as_str() {
        "portfolio" => ProblemKind::Portfolio {
            lambda: file
                .kind
                .lambda
                .ok_or_else(|| schema("kind.lambda", "portfolio instances need lambda".into()))?,
        },
        "mvc" => ProblemKind::Mvc {
            b: file
                .kind
                .b
                .ok_or_else(|| schema("kind.b", "mvc instances need b".into()))?,
        },
        "generic" => ProblemKind::Generic,
        other => return Err(schema("kind.type", format!("unknown kind {other:?}"))),
    };
    if file.diag.len() != file.n {
        return Err(schema("diag", format!("expected {} entries, got {}", file.n, file.diag.len())));
    }
    if file.linear.len() != file.n {
        return Err(schema(
            "linear",
            format!("expected {} entries, got {}", file.n, file.linear.len()),
        ));
    }
    let mut quad = BTreeMap::new();
    for (k, e) in file.quad.iter().enumerate() {
        if e.i >= e.j {
            return Err(schema(&format!("quad[{k}]"), format!("i = {} must be < j = {}", e.i, e.j)));
        }
        if e.j >= file.n {
            return Err(schema(&format!("quad[{k}]"), format!("j = {} out of range", e.j)));
        }
        if quad.insert((e.i, e.j), e.w).is_some() {
            return Err(schema(&format!("quad[{k}]"), format!("duplicate pair ({}, {})", e.i, e.j)));
        }
    }
    let inst = QuboInstance {
        n: file.n,
        quad,
        diag: file.diag,
        linear: file.linear,
        constant: file.constant,
        kind,
        seed: file.seed,
    };
    inst.validate().map_err(|e| schema("instance", e.to_string()))?;
    Ok(inst)
}
