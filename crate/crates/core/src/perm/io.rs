//! The JSON group file.

use serde::{Deserialize, Serialize};

use super::{Permutation, PermutationGroup};
use crate::error::{Error, Result};

/// Largest degree accepted from a group file.
pub const MAX_FILE_DEGREE: usize = 1 << 16;

/// A generator as a 1-based image array or in cycle notation.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Images(Vec<i64>),
    Cycles(String),
}

/// `{ "name", "degree", "generators": [[int,...] | "(1,2,3)(4,5)", ...] }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl GroupFile {
    pub fn parse(json: &str) -> Result<Self> {
        let f: GroupFile = serde_json::from_str(json).map_err(|e| Error::Input(format!("group file: {e}")))?;
        if f.degree == 0 || f.degree > MAX_FILE_DEGREE {
            return Err(Error::Input(format!("degree {} outside 1..={MAX_FILE_DEGREE}", f.degree)));
        }
        Ok(f)
    }

    /// Decodes the generators without building the group.
    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let p = match g {
                    GeneratorSpec::Images(v) if v.len() != self.degree => Err(Error::Input(format!(
                        "{} images for degree {}",
                        v.len(),
                        self.degree
                    ))),
                    GeneratorSpec::Images(v) => Permutation::from_one_based(v),
                    GeneratorSpec::Cycles(s) => Permutation::parse_cycles(s, self.degree),
                };
                p.map_err(|e| Error::Input(format!("generator {}: {e}", i + 1)))
            })
            .collect()
    }

    pub fn build(&self) -> Result<PermutationGroup> {
        PermutationGroup::from_generators(self.degree, self.permutations()?)
    }
}
