use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite system of height-one identities `s(lhs) = s(rhs)` for one operation symbol of a
/// fixed arity, optionally together with idempotence `s(x, .., x) = x`.
///
/// Tuples store indices into `variables`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentitySystem {
    pub arity: usize,
    pub variables: Vec<String>,
    pub identities: Vec<(Vec<usize>, Vec<usize>)>,
    pub idempotent: bool,
}

/// Names accepted by [`IdentitySystem::preset`].
pub const PRESETS: [&str; 3] = ["siggers4", "siggers6-paper", "siggers6-corrected"];

impl IdentitySystem {
    /// Builds and validates a system from symbolic tuples.
    pub fn from_symbols(
        arity: usize,
        variables: &[&str],
        identities: &[(&[&str], &[&str])],
        idempotent: bool,
    ) -> Result<Self> {
        let variables: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
        let lookup = |t: &[&str]| -> Result<Vec<usize>> {
            t.iter()
                .map(|s| {
                    variables
                        .iter()
                        .position(|v| v == s)
                        .ok_or_else(|| Error::Invalid(format!("undeclared variable {s:?}")))
                })
                .collect()
        };
        let identities = identities
            .iter()
            .map(|(l, r)| Ok((lookup(l)?, lookup(r)?)))
            .collect::<Result<Vec<_>>>()?;
        let sys = IdentitySystem {
            arity,
            variables,
            identities,
            idempotent,
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn validate(&self) -> Result<()> {
        if self.arity == 0 {
            return Err(Error::Invalid("identity arity must be at least 1".into()));
        }
        if self.identities.is_empty() && !self.idempotent {
            return Err(Error::Invalid("system has no identities and is not idempotent".into()));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(v) = self.variables.iter().find(|v| !seen.insert(v.as_str())) {
            return Err(Error::Invalid(format!("variable {v:?} declared twice")));
        }
        for (l, r) in &self.identities {
            for t in [l, r] {
                if t.len() != self.arity {
                    return Err(Error::Invalid(format!(
                        "identity side has {} entries, arity is {}",
                        t.len(),
                        self.arity
                    )));
                }
                if t.iter().any(|&v| v >= self.variables.len()) {
                    return Err(Error::Invalid("identity uses an undeclared variable".into()));
                }
            }
        }
        Ok(())
    }

    /// `s(a,r,e,a) = s(r,a,r,e)`.
    pub fn siggers4() -> Self {
        Self::from_symbols(4, &["a", "r", "e"], &[(&["a", "r", "e", "a"], &["r", "a", "r", "e"])], true)
            .expect("preset is valid")
    }

    /// `s(x,y,z,x,y,z) = s(y,x,z,x,z,y)`. Both sides agree at positions 3 and 4, so the third
    /// and fourth projections satisfy it.
    pub fn siggers6_paper() -> Self {
        Self::from_symbols(
            6,
            &["x", "y", "z"],
            &[(&["x", "y", "z", "x", "y", "z"], &["y", "x", "z", "x", "z", "y"])],
            true,
        )
        .expect("preset is valid")
    }

    /// `s(x,y,x,z,y,z) = s(y,x,z,x,z,y)`.
    pub fn siggers6_corrected() -> Self {
        Self::from_symbols(
            6,
            &["x", "y", "z"],
            &[(&["x", "y", "x", "z", "y", "z"], &["y", "x", "z", "x", "z", "y"])],
            true,
        )
        .expect("preset is valid")
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "siggers4" => Some(Self::siggers4()),
            "siggers6-paper" => Some(Self::siggers6_paper()),
            "siggers6-corrected" => Some(Self::siggers6_corrected()),
            _ => None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("identity systems serialize")
    }

    pub fn with_idempotent(mut self, idempotent: bool) -> Result<Self> {
        self.idempotent = idempotent;
        self.validate()?;
        Ok(self)
    }

    fn render(&self, t: &[usize]) -> String {
        let names: Vec<&str> = t.iter().map(|&v| self.variables[v].as_str()).collect();
        format!("s({})", names.join(","))
    }
}

impl fmt::Display for IdentitySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .identities
            .iter()
            .map(|(l, r)| format!("{} = {}", self.render(l), self.render(r)))
            .collect();
        if self.idempotent {
            parts.push("idempotent".into());
        }
        f.write_str(&parts.join("; "))
    }
}

impl FromStr for IdentitySystem {
    type Err = Error;

    /// A preset name or an inline JSON document.
    fn from_str(s: &str) -> Result<Self> {
        match Self::preset(s.trim()) {
            Some(sys) => Ok(sys),
            None if s.trim_start().starts_with('{') => Self::from_json(s),
            None => Err(Error::Invalid(format!(
                "unknown identity preset {s:?} (expected one of {})",
                PRESETS.join(", ")
            ))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SymbolicSystem {
    arity: usize,
    variables: Vec<String>,
    identities: Vec<[Vec<String>; 2]>,
    #[serde(default = "default_idempotent")]
    idempotent: bool,
}

fn default_idempotent() -> bool {
    true
}

impl Serialize for IdentitySystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let names = |t: &[usize]| t.iter().map(|&v| self.variables[v].clone()).collect();
        SymbolicSystem {
            arity: self.arity,
            variables: self.variables.clone(),
            identities: self.identities.iter().map(|(l, r)| [names(l), names(r)]).collect(),
            idempotent: self.idempotent,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IdentitySystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SymbolicSystem::deserialize(d)?;
        let vars: Vec<&str> = raw.variables.iter().map(String::as_str).collect();
        let ids: Vec<(Vec<&str>, Vec<&str>)> = raw
            .identities
            .iter()
            .map(|[l, r]| {
                (
                    l.iter().map(String::as_str).collect(),
                    r.iter().map(String::as_str).collect(),
                )
            })
            .collect();
        let ids: Vec<(&[&str], &[&str])> = ids.iter().map(|(l, r)| (l.as_slice(), r.as_slice())).collect();
        IdentitySystem::from_symbols(raw.arity, &vars, &ids, raw.idempotent).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_round_trip_through_json() {
        for name in PRESETS {
            let sys = IdentitySystem::preset(name).unwrap();
            assert_eq!(IdentitySystem::from_json(&sys.to_json()).unwrap(), sys);
            assert_eq!(name.parse::<IdentitySystem>().unwrap(), sys);
        }
    }

    #[test]
    fn rejects_bad_systems() {
        let bad_var = r#"{"arity":2,"variables":["x"],"identities":[[["x","y"],["y","x"]]]}"#;
        assert!(IdentitySystem::from_json(bad_var).is_err());
        let bad_len = r#"{"arity":3,"variables":["x","y"],"identities":[[["x","y"],["y","x"]]]}"#;
        assert!(IdentitySystem::from_json(bad_len).is_err());
        let empty = r#"{"arity":2,"variables":["x"],"identities":[],"idempotent":false}"#;
        assert!(IdentitySystem::from_json(empty).is_err());
        assert!("siggers5".parse::<IdentitySystem>().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(IdentitySystem::siggers4().to_string(), "s(a,r,e,a) = s(r,a,r,e); idempotent");
    }
}
