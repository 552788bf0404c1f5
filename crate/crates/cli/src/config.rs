use std::fmt;
use std::str::FromStr;

use minorsum::IdentityId;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("invalid range {0:?}; expected N or LO..HI with LO <= HI")]
    Range(String),
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("entry bound must be at least 1")]
    Bound,
    #[error("no identity selected")]
    NoIdentity,
    #[error(transparent)]
    Identity(#[from] minorsum::IdentityError),
    #[error("unknown ring {0:?}; expected int or poly")]
    Ring(String),
}

/// Inclusive range `lo..=hi`, written `N` or `LO..HI` on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Span {
    pub lo: usize,
    pub hi: usize,
}

impl Span {
    pub fn new(lo: usize, hi: usize) -> Result<Self, ConfigError> {
        if lo > hi {
            return Err(ConfigError::Range(format!("{lo}..{hi}")));
        }
        Ok(Span { lo, hi })
    }

    pub fn single(v: usize) -> Self {
        Span { lo: v, hi: v }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        let bad = || ConfigError::Range(s.to_string());
        match s.split_once("..") {
            Some((lo, hi)) => {
                let hi = hi.strip_prefix('=').unwrap_or(hi);
                Span::new(
                    lo.trim().parse().map_err(|_| bad())?,
                    hi.trim().parse().map_err(|_| bad())?,
                )
                .map_err(|_| bad())
            }
            None => Ok(Span::single(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RingChoice {
    Int,
    Poly,
}

impl FromStr for RingChoice {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "int" => Ok(RingChoice::Int),
            "poly" => Ok(RingChoice::Poly),
            other => Err(ConfigError::Ring(other.to_string())),
        }
    }
}

/// Everything that determines a verification run. Worker count is not part
/// of it: reports are identical for every worker count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    #[serde(serialize_with = "ids_as_strings")]
    pub identities: Vec<IdentityId>,
    pub m: Span,
    pub n: Span,
    pub trials: u32,
    pub seed: u64,
    pub ring: RingChoice,
    pub bound: i64,
}

fn ids_as_strings<S: serde::Serializer>(ids: &[IdentityId], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ids.iter().map(|id| id.as_str()))
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            identities: IdentityId::ALL.to_vec(),
            m: Span { lo: 1, hi: 6 },
            n: Span { lo: 1, hi: 8 },
            trials: 200,
            seed: 0,
            ring: RingChoice::Int,
            bound: 5,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.identities.is_empty() {
            return Err(ConfigError::NoIdentity);
        }
        if self.trials == 0 {
            return Err(ConfigError::NoTrials);
        }
        if self.bound < 1 {
            return Err(ConfigError::Bound);
        }
        Span::new(self.m.lo, self.m.hi)?;
        Span::new(self.n.lo, self.n.hi)?;
        Ok(())
    }
}

/// `all`, or ids separated by commas. Duplicates collapse; order follows the
/// canonical id list.
pub fn parse_identities(specs: &[String]) -> Result<Vec<IdentityId>, ConfigError> {
    let mut ids = Vec::new();
    for spec in specs {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                ids.extend(IdentityId::ALL);
            } else {
                ids.push(part.parse()?);
            }
        }
    }
    ids.sort();
    ids.dedup();
    if ids.is_empty() {
        return Err(ConfigError::NoIdentity);
    }
    Ok(ids)
}
