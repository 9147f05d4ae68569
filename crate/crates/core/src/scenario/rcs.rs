use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Typical radar cross sections, m².
const TYPICAL_RCS: [(&str, f64); 9] = [
    ("automobile", 100.0),
    ("pickup truck", 200.0),
    ("adult", 1.0),
    ("bird", 0.01),
    ("insect", 1e-5),
    ("missile", 0.5),
    ("jumbo jet airliner", 100.0),
    ("large bomber", 40.0),
    ("small fighter aircraft", 2.0),
];

/// Target-type names to RCS, plus per-scatterer overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct RcsRegistry {
    types: BTreeMap<String, f64>,
    overrides: BTreeMap<String, f64>,
}

impl Default for RcsRegistry {
    fn default() -> Self {
        Self { types: TYPICAL_RCS.iter().map(|&(k, v)| (k.to_string(), v)).collect(), overrides: BTreeMap::new() }
    }
}

/// "Pickup_Truck", "pickup-truck" and "pickup truck" name the same type.
fn normalize(name: &str) -> String {
    name.trim().chars().map(|c| if c == '_' || c == '-' { ' ' } else { c.to_ascii_lowercase() }).collect()
}

impl RcsRegistry {
    pub fn register(&mut self, type_name: &str, rcs: f64) -> Result<()> {
        if !(rcs > 0.0) {
            return Err(Error::Domain(format!("RCS for `{type_name}` must be positive")));
        }
        self.types.insert(normalize(type_name), rcs);
        Ok(())
    }

    pub fn set_override(&mut self, scatterer_id: &str, rcs: f64) -> Result<()> {
        if !(rcs > 0.0) {
            return Err(Error::Domain(format!("RCS override for `{scatterer_id}` must be positive")));
        }
        self.overrides.insert(scatterer_id.to_string(), rcs);
        Ok(())
    }

    pub fn override_for(&self, scatterer_id: &str) -> Option<f64> {
        self.overrides.get(scatterer_id).copied()
    }

    pub fn type_names(&self) -> impl Iterator<Item = &str> {
        self.types.keys().map(String::as_str)
    }
}

pub fn lookup_rcs(registry: &RcsRegistry, type_name: &str) -> Result<f64> {
    registry.types.get(&normalize(type_name)).copied().ok_or_else(|| Error::UnknownTargetType(type_name.to_string()))
}
