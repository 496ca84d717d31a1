//! The known-discrepancy manifest: claims the audit computes nonzero
//! residuals for, kept apart from regressions.
//!
//! An entry with exact `check` and `params` and a `residual` pins the
//! expected residual; any other residual for that check is a regression.
//! Entries with `*` in `check` or `params`, or without a `residual`, excuse
//! any nonzero residual of the matching checks.

use serde::Deserialize;

use crate::report::{CheckEntry, Status};

const BUILTIN: &str = include_str!("../known_discrepancies.json");

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub claims: Vec<Claim>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub entries: Vec<KnownEntry>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnownEntry {
    pub check: String,
    #[serde(default)]
    pub params: Option<String>,
    #[serde(default)]
    pub residual: Option<String>,
}

impl KnownEntry {
    fn is_pinned(&self) -> bool {
        !self.check.contains('*') && self.params.as_deref().is_some_and(|p| !p.contains('*')) && self.residual.is_some()
    }

    fn covers(&self, c: &CheckEntry) -> bool {
        glob(&self.check, &c.name) && self.params.as_deref().is_none_or(|p| glob(p, &c.params))
    }
}

fn glob(pattern: &str, text: &str) -> bool {
    match pattern.split_once('*') {
        None => pattern == text,
        Some((head, rest)) => {
            let Some(tail) = text.strip_prefix(head) else { return false };
            (0..=tail.len()).filter(|&i| tail.is_char_boundary(i)).any(|i| glob(rest, &tail[i..]))
        }
    }
}

impl Manifest {
    pub fn builtin() -> Self {
        serde_json::from_str(BUILTIN).expect("bundled manifest parses")
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Claim, &KnownEntry)> {
        self.claims.iter().flat_map(|c| c.entries.iter().map(move |e| (c, e)))
    }

    /// The claim id excusing this defect, if any.
    pub fn classify(&self, c: &CheckEntry) -> Option<&str> {
        if c.status != Status::Defect {
            return None;
        }
        let residual = c.residual.as_str();
        let pinned: Vec<_> = self.entries().filter(|(_, e)| e.is_pinned() && e.covers(c)).collect();
        if !pinned.is_empty() {
            return pinned
                .into_iter()
                .find(|(_, e)| e.residual.as_deref() == residual)
                .map(|(claim, _)| claim.id.as_str());
        }
        self.entries().find(|(_, e)| !e.is_pinned() && e.covers(c)).map(|(claim, _)| claim.id.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn globbing() {
        assert!(glob("cyclic/*", "cyclic/euler"));
        assert!(glob("n=*,symbolic", "n=3,symbolic"));
        assert!(!glob("n=*,symbolic", "n=3,r=1,s=0,t=2"));
        assert!(glob("a", "a"));
        assert!(!glob("a", "ab"));
    }

    #[test]
    fn bundled_manifest_loads() {
        let m = Manifest::builtin();
        assert!(m.claims.len() >= 3);
        assert!(m.entries().any(|(_, e)| e.is_pinned()));
    }
}
