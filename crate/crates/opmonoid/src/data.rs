//! Checked-in catalogs. Files are compiled in; setting `OPMONOID_DATA_DIR`
//! reads them from that directory instead.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::diagram::DiagramCatalog;
use crate::error::DataError;

pub const DATA_DIR_VAR: &str = "OPMONOID_DATA_DIR";

pub const INTERIOR_PSEUDOCOMPLEMENT: &str = "interior_pseudocomplement.json";
pub const INTERIOR_PSEUDOCOMPLEMENT_QUOTIENT: &str = "interior_pseudocomplement_quotient.json";
pub const SUBLOCALE_OPERATORS: &str = "sublocale_operators.json";
pub const TWO_GENERATOR_ORDERS: &str = "two_generator_orders.json";
pub const CLASS_IMPLICATIONS: &str = "class_implications.json";

macro_rules! embed {
    ($($name:literal),* $(,)?) => {
        fn embedded(file: &str) -> Option<&'static str> {
            match file {
                $($name => Some(include_str!(concat!("../../../data/", $name))),)*
                _ => None,
            }
        }
    };
}

embed!(
    "interior_pseudocomplement.json",
    "interior_pseudocomplement_quotient.json",
    "sublocale_operators.json",
    "two_generator_orders.json",
    "class_implications.json",
    "collapses_2_2.json",
    "collapses_2_3.json",
    "collapses_3_3.json",
);

/// Contents of a data file, honouring the directory override.
pub fn read(file: &str) -> Result<String, DataError> {
    if let Ok(dir) = std::env::var(DATA_DIR_VAR) {
        let path = std::path::Path::new(&dir).join(file);
        return std::fs::read_to_string(&path)
            .map_err(|source| DataError::Io { path: path.display().to_string(), source });
    }
    embedded(file).map(str::to_string).ok_or_else(|| DataError::Catalog(format!("no embedded file {file}")))
}

pub fn parse<T: for<'de> Deserialize<'de>>(file: &str) -> Result<T, DataError> {
    let text = read(file)?;
    serde_json::from_str(&text).map_err(|source| DataError::Json { path: file.to_string(), source })
}

pub fn catalog(file: &str) -> Result<DiagramCatalog, DataError> {
    DiagramCatalog::from_json(&read(file)?).map_err(|e| DataError::Catalog(format!("{file}: {e}")))
}

/// Order diagrams keyed by `(m, n)`.
pub fn two_generator_orders() -> Result<BTreeMap<(u32, u32), DiagramCatalog>, DataError> {
    let raw: BTreeMap<String, serde_json::Value> = parse(TWO_GENERATOR_ORDERS)?;
    raw.into_iter()
        .map(|(k, v)| {
            let (m, n) = k
                .split_once(',')
                .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                .ok_or_else(|| DataError::Catalog(format!("bad key {k}")))?;
            let d = DiagramCatalog::from_json(&v.to_string()).map_err(|e| DataError::Catalog(e.to_string()))?;
            Ok(((m, n), d))
        })
        .collect()
}
