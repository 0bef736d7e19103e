// SPDX-License-Identifier: Apache-2.0
use super::{parse_model, CdgaModel};
use crate::error::{Error, Result};
use std::sync::Arc;

const MODELS: &[(&str, &str)] = &[
    ("pt", include_str!("../../data/models/pt.model")),
    ("s1", include_str!("../../data/models/s1.model")),
    ("t2", include_str!("../../data/models/t2.model")),
    ("t3", include_str!("../../data/models/t3.model")),
    ("s2", include_str!("../../data/models/s2.model")),
    ("s3", include_str!("../../data/models/s3.model")),
    ("s4", include_str!("../../data/models/s4.model")),
    ("cp2", include_str!("../../data/models/cp2.model")),
    ("s3_thick", include_str!("../../data/models/s3_thick.model")),
];

pub fn library_names() -> Vec<&'static str> {
    MODELS.iter().map(|(n, _)| *n).collect()
}

fn normalize(name: &str) -> String {
    name.chars().filter(|c| *c != '_').map(|c| c.to_ascii_lowercase()).collect()
}

/// A shipped model by name, ignoring case and underscores.
pub fn library(name: &str) -> Result<Arc<CdgaModel>> {
    let key = normalize(name);
    let (_, text) = MODELS.iter().find(|(n, _)| normalize(n) == key).ok_or_else(|| Error::Unknown(format!("model '{name}'")))?;
    Ok(Arc::new(parse_model(text)?))
}
