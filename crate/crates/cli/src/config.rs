//! Run configuration: JSON file, command-line overrides and conversion to a transport problem.

use std::path::PathBuf;
use std::str::FromStr;

use mosaic_core::derivatives::DerivativeKind;
use mosaic_core::scenarios::{FieldKind, Grid, InitialField, Observer, Scenario, ScenarioKind, TransportProblem};
use mosaic_core::MosaicError;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FieldArg {
    Vector,
    Qtensor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ObserverArg {
    Lagrangian,
    Eulerian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum InitialArg {
    Standard,
    Modulated,
}

/// Everything `mosaic run` needs. Missing JSON keys take the defaults below.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: String,
    pub derivative: String,
    pub observer: ObserverArg,
    /// `N1xN2`.
    pub grid: String,
    pub dt: f64,
    pub t_end: f64,
    pub field: FieldArg,
    pub initial: InitialArg,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scenario: "stretching-spheroid".into(),
            derivative: "material".into(),
            observer: ObserverArg::Lagrangian,
            grid: "16x32".into(),
            dt: 1e-3,
            t_end: 1.0,
            field: FieldArg::Vector,
            initial: InitialArg::Standard,
            format: Format::Csv,
            output: None,
            seed: 0,
        }
    }
}

pub fn parse_grid(s: &str) -> Result<(usize, usize), MosaicError> {
    let bad = || MosaicError::Config(format!("grid must look like N1xN2, got '{s}'"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let n1 = a.trim().parse().map_err(|_| bad())?;
    let n2 = b.trim().parse().map_err(|_| bad())?;
    Ok((n1, n2))
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, MosaicError> {
        serde_json::from_str(text).map_err(|e| MosaicError::Config(format!("config file: {e}")))
    }

    pub fn problem(&self) -> Result<TransportProblem<f64>, MosaicError> {
        let scenario = Scenario::new(ScenarioKind::from_str(&self.scenario)?);
        let kind: DerivativeKind = self.derivative.parse()?;
        let field = match self.field {
            FieldArg::Vector => FieldKind::Vector,
            FieldArg::Qtensor => FieldKind::QTensor,
        };
        let mut p = TransportProblem::new(scenario, kind, field);
        let (n1, n2) = parse_grid(&self.grid)?;
        p.grid = Grid::new(n1, n2);
        p.dt = self.dt;
        p.t_end = self.t_end;
        p.observer = match self.observer {
            ObserverArg::Lagrangian => Observer::Lagrangian,
            ObserverArg::Eulerian => Observer::Eulerian,
        };
        p.initial = match self.initial {
            InitialArg::Standard => InitialField::Standard,
            InitialArg::Modulated => InitialField::Modulated,
        };
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut c = RunConfig::default();
        c.grid = "4x8".into();
        c.output = Some("out.csv".into());
        let back = RunConfig::from_json(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
        assert_eq!(RunConfig::from_json("{}").unwrap(), RunConfig::default());
        assert!(RunConfig::from_json(r#"{"grd": "1x1"}"#).is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("16x32").unwrap(), (16, 32));
        assert!(parse_grid("16").is_err());
        assert!(parse_grid("ax2").is_err());
    }
}
