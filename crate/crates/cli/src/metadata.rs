use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;
use wavedof_core::modes::PRNG_ALGORITHM;
use wavedof_core::numfmt::{fmt_sig, round_sig};
use wavedof_core::PhysicalConfig;

pub const TOOL: &str = "wavedof";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance stamped into every artifact.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunMetadata {
    pub tool: String,
    pub version: String,
    /// Flag/config echo, values as written to the artifact.
    pub config: BTreeMap<String, String>,
    pub seed: Option<u64>,
    /// Unix seconds.
    pub timestamp: u64,
    pub prng: String,
}

impl RunMetadata {
    pub fn new(config: BTreeMap<String, String>, seed: Option<u64>) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            config,
            seed,
            timestamp,
            prng: PRNG_ALGORITHM.into(),
        }
    }

    /// `# key=value` lines for CSV headers.
    pub fn comment_lines(&self) -> Vec<String> {
        let mut lines = vec![format!("# tool={}", self.tool), format!("# version={}", self.version)];
        for (k, v) in &self.config {
            lines.push(format!("# config.{k}={v}"));
        }
        lines.push(format!(
            "# seed={}",
            self.seed.map_or_else(|| "none".to_string(), |s| s.to_string())
        ));
        lines.push(format!("# timestamp={}", self.timestamp));
        lines.push(format!("# prng={}", self.prng));
        lines
    }
}

pub fn config_echo(cfg: &PhysicalConfig) -> BTreeMap<String, String> {
    [
        ("R", cfg.radius),
        ("W", cfg.half_bandwidth),
        ("T", cfg.duration),
        ("F0", cfg.center_freq),
        ("c", cfg.wave_speed),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), fmt_sig(v)))
    .collect()
}

/// Serialize with every float rounded to 12 significant digits. Integers
/// stay integers; object keys come out sorted.
pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64().map(round_sig).and_then(serde_json::Number::from_f64) {
                *n = x;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}
