//! Optional TOML configuration. Every key has a default; flags override the file.
//!
//! ```toml
//! [growth]
//! max_vertices = 1000000
//!
//! [classifier]          # growth thresholds
//! delta = 0.05
//! variance = 0.01
//! slope_tolerance = 0.25
//! min_radii = 6
//! flatness = 0.1
//! max_degree = 4
//!
//! [class]
//! max_nodes = 1000000
//!
//! [unfold]
//! depth = 6
//! max_nodes = 100000
//! ```

use std::path::Path;

use cluster_growth::growth::GrowthParams;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub growth: GrowthLimits,
    pub classifier: GrowthParams,
    pub class: ClassLimits,
    pub unfold: UnfoldLimits,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GrowthLimits {
    pub max_vertices: usize,
}

impl Default for GrowthLimits {
    fn default() -> Self {
        Self { max_vertices: 1_000_000 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassLimits {
    pub max_nodes: usize,
}

impl Default for ClassLimits {
    fn default() -> Self {
        Self { max_nodes: cluster_growth::mutation_class::DEFAULT_MAX_NODES }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct UnfoldLimits {
    pub depth: usize,
    pub max_nodes: usize,
}

impl Default for UnfoldLimits {
    fn default() -> Self {
        use cluster_growth::unfolding::{DEFAULT_DEPTH, DEFAULT_MAX_NODES};
        Self { depth: DEFAULT_DEPTH, max_nodes: DEFAULT_MAX_NODES }
    }
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self, String> {
        let Some(path) = path else { return Ok(Self::default()) };
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}
