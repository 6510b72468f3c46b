//! Two-axis parameter sweeps over the bound report, their CSV form and the
//! figure presets.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;
use wavedof_core::numfmt::{fmt_sig, round_sig};
use wavedof_core::{bound_report, BoundReport, Error, PhysicalConfig, Quantity, SPEED_OF_LIGHT};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    R,
    W,
    T,
    F0,
}

impl Param {
    pub fn apply(self, cfg: PhysicalConfig, v: f64) -> PhysicalConfig {
        match self {
            Param::R => cfg.with_radius(v),
            Param::W => cfg.with_half_bandwidth(v),
            Param::T => cfg.with_duration(v),
            Param::F0 => cfg.with_center_freq(v),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Param::R => "R",
            Param::W => "W",
            Param::T => "T",
            Param::F0 => "F0",
        })
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "R" => Ok(Param::R),
            "W" => Ok(Param::W),
            "T" => Ok(Param::T),
            "F0" | "F_o" => Ok(Param::F0),
            other => Err(Error::InvalidConfig(format!("unknown sweep parameter '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// One sweep axis, written `PARAM:MIN:MAX:COUNT[:lin|log]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: Param,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: Scale,
}

impl Axis {
    pub fn new(param: Param, min: f64, max: f64, count: usize, scale: Scale) -> Self {
        Self {
            param,
            min,
            max,
            count,
            scale,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::InvalidConfig(format!("axis {}: {msg}", self.param)));
        if !(self.min.is_finite() && self.max.is_finite()) || self.min >= self.max {
            return bad(format!("need min < max (got {} .. {})", self.min, self.max));
        }
        if self.count < 2 {
            return bad(format!("need count >= 2 (got {})", self.count));
        }
        if self.scale == Scale::Log && self.min <= 0.0 {
            return bad("log scale needs min > 0".into());
        }
        Ok(())
    }

    /// Grid values, rounded to the significant digits written to CSV so a
    /// row can be re-evaluated from its printed coordinates.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k == 0 {
                    return self.min;
                }
                if k + 1 == self.count {
                    return self.max;
                }
                let s = k as f64 / last;
                let v = match self.scale {
                    Scale::Linear => self.min + (self.max - self.min) * s,
                    Scale::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * s).exp(),
                };
                round_sig(v)
            })
            .collect()
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scale = match self.scale {
            Scale::Linear => "lin",
            Scale::Log => "log",
        };
        write!(
            f,
            "{}:{}:{}:{}:{scale}",
            self.param,
            fmt_sig(self.min),
            fmt_sig(self.max),
            self.count
        )
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidConfig(format!("axis '{s}': expected PARAM:MIN:MAX:COUNT[:lin|log]"));
        let parts: Vec<&str> = s.split(':').collect();
        if !(4..=5).contains(&parts.len()) {
            return Err(bad());
        }
        let scale = match parts.get(4).copied().unwrap_or("lin") {
            "lin" | "linear" => Scale::Linear,
            "log" => Scale::Log,
            _ => return Err(bad()),
        };
        let axis = Axis {
            param: parts[0].parse()?,
            min: parts[1].parse().map_err(|_| bad())?,
            max: parts[2].parse().map_err(|_| bad())?,
            count: parts[3].parse().map_err(|_| bad())?,
            scale,
        };
        axis.validate()?;
        Ok(axis)
    }
}

/// Two axes over a fixed base configuration, and the report fields to
/// record at each grid cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis1: Axis,
    pub axis2: Axis,
    /// Values of the parameters not on an axis. Axis parameters are
    /// overwritten per cell.
    pub base: PhysicalConfig,
    pub quantities: Vec<String>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), Error> {
        self.axis1.validate()?;
        self.axis2.validate()?;
        if self.axis1.param == self.axis2.param {
            return Err(Error::InvalidConfig(format!(
                "sweep axes must differ (both are {})",
                self.axis1.param
            )));
        }
        if self.quantities.is_empty() {
            return Err(Error::InvalidConfig("no output quantities".into()));
        }
        for q in &self.quantities {
            if !BoundReport::QUANTITIES.contains(&q.as_str()) {
                return Err(Error::InvalidConfig(format!(
                    "unknown quantity '{q}' (expected one of {})",
                    BoundReport::QUANTITIES.join(", ")
                )));
            }
        }
        Ok(())
    }

    pub fn cell_config(&self, v1: f64, v2: f64) -> PhysicalConfig {
        self.axis2.param.apply(self.axis1.param.apply(self.base, v1), v2)
    }

    /// Every cell, row-major over `axis1`. Cells are evaluated in parallel
    /// and collected in axis order.
    pub fn evaluate(&self) -> Result<SweepTable> {
        self.validate()?;
        let cells: Vec<(f64, f64)> = self
            .axis1
            .values()
            .into_iter()
            .flat_map(|v1| self.axis2.values().into_iter().map(move |v2| (v1, v2)))
            .collect();
        let rows = cells
            .par_iter()
            .map(|&(v1, v2)| {
                let cfg = self.cell_config(v1, v2);
                let report = bound_report(&cfg).with_context(|| {
                    format!(
                        "sweep cell {}={}, {}={}",
                        self.axis1.param,
                        fmt_sig(v1),
                        self.axis2.param,
                        fmt_sig(v2)
                    )
                })?;
                let mut row = vec![Cell::Real(v1), Cell::Real(v2)];
                for q in &self.quantities {
                    row.push(match report.quantity(q) {
                        Some(Quantity::Count(n)) => Cell::Count(n),
                        Some(Quantity::Real(x)) => Cell::Real(x),
                        None => unreachable!("quantities validated"),
                    });
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut header = vec![self.axis1.param.to_string(), self.axis2.param.to_string()];
        header.extend(self.quantities.iter().cloned());
        Ok(SweepTable {
            comments: Vec::new(),
            header,
            rows,
        })
    }

    /// Parameter echo for the artifact metadata.
    pub fn echo(&self) -> std::collections::BTreeMap<String, String> {
        let mut m = std::collections::BTreeMap::new();
        m.insert("axis1".into(), self.axis1.to_string());
        m.insert("axis2".into(), self.axis2.to_string());
        for (p, v) in [
            (Param::R, self.base.radius),
            (Param::W, self.base.half_bandwidth),
            (Param::T, self.base.duration),
            (Param::F0, self.base.center_freq),
        ] {
            if p != self.axis1.param && p != self.axis2.param {
                m.insert(p.to_string(), fmt_sig(v));
            }
        }
        m.insert("c".into(), fmt_sig(self.base.wave_speed));
        m.insert("quantities".into(), self.quantities.join(";"));
        m
    }
}

/// A CSV cell. Counts are written as plain integers, reals with 12
/// significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Count(u64),
    Real(f64),
}

impl Cell {
    pub fn as_f64(self) -> f64 {
        match self {
            Cell::Count(n) => n as f64,
            Cell::Real(x) => x,
        }
    }

    fn render(self) -> String {
        match self {
            Cell::Count(n) => n.to_string(),
            Cell::Real(x) => fmt_sig(x),
        }
    }

    fn parse(s: &str) -> Result<Self> {
        if let Ok(n) = s.parse::<u64>() {
            return Ok(Cell::Count(n));
        }
        s.parse::<f64>()
            .map(Cell::Real)
            .map_err(|_| anyhow!("bad CSV number '{s}'"))
    }
}

/// Sweep output: `# key=value` comment lines, a header, then data rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl SweepTable {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// `(rows of axis1, columns of axis2)`.
    pub fn shape(&self) -> (usize, usize) {
        let Some(first) = self.rows.first() else {
            return (0, 0);
        };
        let n2 = self.rows.iter().take_while(|r| r[0] == first[0]).count();
        (self.rows.len() / n2.max(1), n2)
    }

    pub fn render(&self) -> Result<String> {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str(c);
            out.push('\n');
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.render()))?;
        }
        out.push_str(std::str::from_utf8(&w.into_inner()?)?);
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let comments: Vec<String> = text
            .lines()
            .take_while(|l| l.starts_with('#'))
            .map(str::to_string)
            .collect();
        let body: String = text.lines().skip(comments.len()).flat_map(|l| [l, "\n"]).collect();
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(body.as_bytes());
        let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            if rec.len() != header.len() {
                bail!("CSV row has {} fields, header has {}", rec.len(), header.len());
            }
            rows.push(rec.iter().map(Cell::parse).collect::<Result<Vec<_>>>()?);
        }
        Ok(Self { comments, header, rows })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Figure {
    Fig3,
    Fig4,
    Fig5,
}

/// Quantities recorded by every figure preset.
pub const FIGURE_QUANTITIES: [&str; 4] = ["thm2", "exact3d", "d_2wt", "d_space3d"];

/// Fixed parameters per figure; the axis spans are our choice.
pub fn figure_preset(fig: Figure, count: usize) -> SweepSpec {
    let base = |w: f64, t: f64, f0: f64| PhysicalConfig {
        radius: 0.0,
        half_bandwidth: w,
        duration: t,
        center_freq: f0,
        wave_speed: SPEED_OF_LIGHT,
    };
    let (axis1, axis2, base) = match fig {
        // T = 0.5 ms, F_o = 2.4 GHz
        Figure::Fig3 => (
            Axis::new(Param::R, 0.01, 10.0, count, Scale::Log),
            Axis::new(Param::W, 1e3, 1e8, count, Scale::Log),
            base(0.0, 5e-4, 2.4e9),
        ),
        // T = 1 µs, F_o = 2.4 MHz. W stops at F_o: a wider band has a
        // negative lower edge.
        Figure::Fig4 => (
            Axis::new(Param::R, 1e-3, 1.0, count, Scale::Log),
            Axis::new(Param::W, 1e3, 1e9f64.min(2.4e6), count, Scale::Log),
            base(0.0, 1e-6, 2.4e6),
        ),
        // W = 1 kHz, F_o = 2.4 GHz
        Figure::Fig5 => (
            Axis::new(Param::T, 0.0, 1e-3, count, Scale::Linear),
            Axis::new(Param::R, 0.0, 1.0, count, Scale::Linear),
            base(1e3, 0.0, 2.4e9),
        ),
    };
    SweepSpec {
        axis1,
        axis2,
        base,
        quantities: FIGURE_QUANTITIES.iter().map(|s| s.to_string()).collect(),
    }
}
