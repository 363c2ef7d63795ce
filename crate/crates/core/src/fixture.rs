//! The versioned table of expected values that `verify` checks against.
//!
//! Each entry records where its value comes from, and discrepancies with the
//! published tables are kept as notes on the entries rather than in code.

use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

/// The table shipped with the crate.
pub const BUILTIN_JSON: &str = include_str!("../data/expected.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Transcribed from the published tables.
    Published,
    /// Computed by an independent route (brute force, closed form).
    Derived,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub quantity: String,
    pub r: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u8>,
    pub value: u64,
    pub source: Source,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub version: u32,
    pub entries: Vec<Entry>,
}

impl Fixture {
    pub fn builtin() -> &'static Fixture {
        static CELL: OnceLock<Fixture> = OnceLock::new();
        CELL.get_or_init(|| Fixture::from_json(BUILTIN_JSON).expect("built-in fixture is valid"))
    }

    pub fn from_json(text: &str) -> serde_json::Result<Fixture> {
        serde_json::from_str(text)
    }

    pub fn load(path: &Path) -> Result<Fixture, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Fixture::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn entry(&self, quantity: &str, r: u8, k: Option<u8>) -> Option<&Entry> {
        self.entries
            .iter()
            .find(|e| e.quantity == quantity && e.r == r && e.k == k)
    }

    pub fn value(&self, quantity: &str, r: u8, k: Option<u8>) -> Option<u64> {
        self.entry(quantity, r, k).map(|e| e.value)
    }
}
