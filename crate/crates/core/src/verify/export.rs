use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::model::{Catalog, SubmoduleType};

/// Which of the five lists an export covers.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SetSelector {
    Gx,
    Gy,
    Galpha,
    Gbeta,
    Ggamma,
    All,
}

impl SetSelector {
    pub fn types(self) -> Vec<SubmoduleType> {
        match self {
            SetSelector::Gx => vec![SubmoduleType::X],
            SetSelector::Gy => vec![SubmoduleType::Y],
            SetSelector::Galpha => vec![SubmoduleType::Alpha],
            SetSelector::Gbeta => vec![SubmoduleType::Beta],
            SetSelector::Ggamma => vec![SubmoduleType::Gamma],
            SetSelector::All => SubmoduleType::NONZERO.to_vec(),
        }
    }
}

impl FromStr for SetSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<SetSelector> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "gx" => SetSelector::Gx,
            "gy" => SetSelector::Gy,
            "galpha" => SetSelector::Galpha,
            "gbeta" => SetSelector::Gbeta,
            "ggamma" => SetSelector::Ggamma,
            "all" => SetSelector::All,
            _ => return Err(Error::InvalidArgument(format!("unknown set '{s}'"))),
        })
    }
}

/// Members in catalog order, each with its type and least generator.
pub fn catalog_json(c: &Catalog, sel: SetSelector) -> Value {
    let f = c.field();
    let spec = f.spec();
    let members: Vec<Value> = sel
        .types()
        .into_iter()
        .flat_map(|t| {
            c.set(t).iter().enumerate().map(move |(i, s)| {
                json!({
                    "type": t.name(),
                    "index": i,
                    "dim": s.dim(),
                    "subspace": s.to_json(f),
                    "witness": c.witness(t, i).map(|w| w.to_json(f)),
                })
            })
        })
        .collect();
    json!({
        "field": {"q": f.q(), "p": spec.p, "k": spec.k, "modulus": spec.modulus},
        "count": members.len(),
        "members": members,
    })
}

/// One row per member: `type,index,dim,basis`, basis rows separated by `|`.
pub fn catalog_csv(c: &Catalog, sel: SetSelector) -> String {
    let mut out = String::from("type,index,dim,basis\n");
    for t in sel.types() {
        for (i, s) in c.set(t).iter().enumerate() {
            out.push_str(&format!("{},{},{},{}\n", t.name(), i, s.dim(), s.label()));
        }
    }
    out
}
