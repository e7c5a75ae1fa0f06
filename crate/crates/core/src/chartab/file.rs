//! The JSON table format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CharacterTable;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassEntry {
    pub order: u64,
    pub size: u64,
}

/// A table value; rational integers are written as plain JSON numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct TableValue(pub Cyclotomic);

impl Serialize for TableValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.as_integer().and_then(|v| i64::try_from(v).ok()) {
            Some(v) => s.serialize_i64(v),
            None => self.0.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for TableValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Cyclotomic::deserialize(d).map(TableValue)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub group: String,
    pub classes: Vec<ClassEntry>,
    /// Prime → 1-based class indices of `q`-th powers.
    pub power_maps: BTreeMap<String, Vec<u64>>,
    pub values: Vec<Vec<TableValue>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character_names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl TableFile {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Input(format!("table file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub(super) fn from_table(t: &CharacterTable) -> Self {
        TableFile {
            group: t.group.clone(),
            classes: t.classes.iter().map(|c| ClassEntry { order: c.element_order, size: c.size }).collect(),
            power_maps: t
                .power_maps
                .iter()
                .map(|(q, m)| (q.to_string(), m.iter().map(|&c| c as u64 + 1).collect()))
                .collect(),
            values: t.values.iter().map(|r| r.iter().cloned().map(TableValue).collect()).collect(),
            character_names: Some(t.names.clone()),
            provenance: None,
        }
    }
}
