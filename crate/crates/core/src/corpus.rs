//! Worked examples shipped with the library. The same files live under
//! `corpus/` in this crate.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::format::parse_system;
use crate::poset::Poset;
use crate::system::PosetCausalSystem;

/// Embedded system files, by name.
pub const SYSTEMS: &[(&str, &str)] = &[
    ("exLargeEx", include_str!("../corpus/exLargeEx.json")),
    ("exObsEx", include_str!("../corpus/exObsEx.json")),
    ("exLargeObs", include_str!("../corpus/exLargeObs.json")),
    ("non-invariant", include_str!("../corpus/non-invariant.json")),
    ("hat-not-contained", include_str!("../corpus/hat-not-contained.json")),
    ("not-weakly-local", include_str!("../corpus/not-weakly-local.json")),
    ("exNonOpt", include_str!("../corpus/exNonOpt.json")),
    ("pole-placement", include_str!("../corpus/pole-placement.json")),
];

const POSETS: &str = include_str!("../corpus/posets.json");

pub fn system_text(name: &str) -> Option<&'static str> {
    SYSTEMS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn system(name: &str) -> Result<PosetCausalSystem> {
    let text = system_text(name).ok_or_else(|| Error::Format(format!("no corpus system named {name:?}")))?;
    parse_system(text)
}

#[derive(Deserialize)]
struct RawPoset {
    p: usize,
    edges: Vec<(usize, usize)>,
}

/// Named posets, with 1-based edges `[j, i]` for j ⪰ i converted to 0-based.
pub fn posets() -> Result<BTreeMap<String, Poset>> {
    let raw: BTreeMap<String, RawPoset> = serde_json::from_str(POSETS).map_err(|e| Error::Format(e.to_string()))?;
    raw.into_iter()
        .map(|(name, rp)| {
            let edges: Vec<(usize, usize)> = rp
                .edges
                .iter()
                .map(|&(j, i)| (j.wrapping_sub(1), i.wrapping_sub(1)))
                .collect();
            Poset::from_edges(rp.p, &edges).map(|p| (name, p))
        })
        .collect()
}

pub fn poset(name: &str) -> Result<Poset> {
    posets()?
        .remove(name)
        .ok_or_else(|| Error::Format(format!("no corpus poset named {name:?}")))
}

/// P1 through P6, in order.
pub fn numbered_posets() -> Result<Vec<Poset>> {
    let mut all = posets()?;
    (1..=6)
        .map(|k| {
            all.remove(&format!("P{k}"))
                .ok_or_else(|| Error::Format(format!("missing poset P{k}")))
        })
        .collect()
}
