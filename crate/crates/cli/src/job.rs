//! What to run: the group, the prime, the checks and the acting group.

use std::collections::BTreeSet;
use std::path::PathBuf;

use serde::Serialize;
use weightforge::numtheory::is_prime;
use weightforge::{Error, Limits, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// Character table; when requested explicitly it is computed in-process.
    Table,
    Blocks,
    Weights,
    Awc,
    Gaw,
    Orbits,
}

impl Check {
    pub fn dependencies(self) -> &'static [Check] {
        match self {
            Check::Table => &[],
            Check::Blocks | Check::Weights | Check::Orbits => &[Check::Table],
            Check::Awc => &[Check::Weights],
            Check::Gaw => &[Check::Weights, Check::Orbits],
        }
    }

    pub fn needs_prime(self) -> bool {
        self != Check::Table
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSource {
    Atlas(String),
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutSource {
    /// The automorphism file of the atlas entry.
    Atlas,
    File(PathBuf),
}

impl AutSource {
    /// `atlas` or a path.
    pub fn parse(s: &str) -> Self {
        if s == "atlas" {
            AutSource::Atlas
        } else {
            AutSource::File(PathBuf::from(s))
        }
    }
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub group: GroupSource,
    pub prime: Option<u64>,
    pub checks: BTreeSet<Check>,
    /// `σ_p^t` is the Galois generator of `Γ`.
    pub galois_t: i64,
    pub automorphisms: Vec<AutSource>,
    /// An external table file used instead of the atlas fixture.
    pub table_file: Option<PathBuf>,
    pub emit_table: Option<PathBuf>,
    pub limits: Limits,
}

impl JobSpec {
    pub fn new(group: GroupSource, prime: Option<u64>, checks: impl IntoIterator<Item = Check>) -> Self {
        JobSpec {
            group,
            prime,
            checks: checks.into_iter().collect(),
            galois_t: 1,
            automorphisms: Vec::new(),
            table_file: None,
            emit_table: None,
            limits: Limits::default(),
        }
    }

    pub fn atlas(name: &str, prime: u64, checks: impl IntoIterator<Item = Check>) -> Self {
        Self::new(GroupSource::Atlas(name.to_string()), Some(prime), checks)
    }

    /// The requested checks together with everything they depend on.
    pub fn closed_checks(&self) -> BTreeSet<Check> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<Check> = self.checks.iter().copied().collect();
        while let Some(c) = stack.pop() {
            if out.insert(c) {
                stack.extend_from_slice(c.dependencies());
            }
        }
        out
    }

    /// `true` if the table must be computed rather than read from a fixture.
    pub fn compute_table(&self) -> bool {
        self.checks.contains(&Check::Table)
    }

    pub fn validate(&self) -> Result<()> {
        if self.checks.is_empty() {
            return Err(Error::Input("no checks requested".into()));
        }
        match self.prime {
            Some(p) if !is_prime(p) => return Err(Error::Input(format!("{p} is not prime"))),
            None if self.closed_checks().iter().any(|c| c.needs_prime()) => {
                return Err(Error::Input("a prime is required for every check except table".into()))
            }
            _ => {}
        }
        if self.automorphisms.contains(&AutSource::Atlas) && !matches!(self.group, GroupSource::Atlas(_)) {
            return Err(Error::Input("--aut atlas needs an atlas group".into()));
        }
        if self.limits.max_order == 0 || self.limits.max_classes == 0 || self.limits.threads == 0 {
            return Err(Error::Input("resource limits must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure() {
        let j = JobSpec::atlas("A5", 2, [Check::Awc]);
        assert_eq!(j.closed_checks(), BTreeSet::from([Check::Awc, Check::Weights, Check::Table]));
        assert!(!j.compute_table());
        let j = JobSpec::atlas("A5", 2, [Check::Gaw]);
        assert_eq!(j.closed_checks().len(), 4);
    }

    #[test]
    fn validation() {
        assert!(JobSpec::atlas("A5", 4, [Check::Awc]).validate().is_err());
        assert!(JobSpec::new(GroupSource::Atlas("A5".into()), None, [Check::Awc]).validate().is_err());
        assert!(JobSpec::new(GroupSource::Atlas("A5".into()), None, [Check::Table]).validate().is_ok());
        assert!(JobSpec::atlas("A5", 2, []).validate().is_err());
    }
}
