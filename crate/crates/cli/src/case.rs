//! Case parameters gathered from flags, an optional TOML file, the
//! `MPLAB_SEED` environment variable and built-in defaults, in that order of
//! precedence.

use std::path::PathBuf;

use anyhow::Context;
use clap::Args;
use serde::Deserialize;

use mplab_core::exactlin::parse_rational;
use mplab_core::{FlagPoint, InvolutionSpec, OrbitClass, RatMatrix, DEFAULT_EPSILON, DEFAULT_R_MAX};

use crate::UsageError;

pub const SEED_ENV: &str = "MPLAB_SEED";

#[derive(Args, Debug, Clone, Default)]
pub struct CaseArgs {
    /// Weights of the two factors, positive integers
    #[arg(long, num_args = 2, value_names = ["L1", "L2"], allow_negative_numbers = true)]
    pub weights: Option<Vec<i64>>,
    /// Flag point literal `a1,c1;a2,c2` (see README for the grammar)
    #[arg(long, conflicts_with = "class", allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Use the standard representative of an orbit class instead of --point
    #[arg(long)]
    pub class: Option<String>,
    /// Involution on the torus: `negation`, `identity` or a matrix literal
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Random seed [default: $MPLAB_SEED or 0]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Largest line bundle power searched by the membership route [default: 6]
    #[arg(long = "r-max")]
    pub r_max: Option<u32>,
    /// Angular filter width in radians [default: 0.05]
    #[arg(long)]
    pub eps: Option<f64>,
    /// TOML file with any of the keys above; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    weights: Option<[i64; 2]>,
    point: Option<String>,
    class: Option<String>,
    gamma: Option<String>,
    seed: Option<u64>,
    r_max: Option<u32>,
    eps: Option<f64>,
}

/// Fully resolved case; missing weights or point are reported only when a
/// command asks for them.
#[derive(Debug, Clone)]
pub struct CaseSpec {
    weights: Option<(i64, i64)>,
    point: Option<FlagPoint>,
    pub gamma: InvolutionSpec,
    pub seed: u64,
    pub r_max: u32,
    pub eps: f64,
}

impl CaseSpec {
    pub fn weights(&self) -> anyhow::Result<(i64, i64)> {
        self.weights.ok_or_else(|| UsageError("--weights L1 L2 is required".into()).into())
    }

    pub fn point(&self) -> anyhow::Result<&FlagPoint> {
        self.point.as_ref().ok_or_else(|| UsageError("--point or --class is required".into()).into())
    }
}

fn usage<E: std::fmt::Display>(what: &str) -> impl FnOnce(E) -> anyhow::Error + '_ {
    move |e| UsageError(format!("{what}: {e}")).into()
}

/// `negation`, `identity`, or rows of rationals separated by `;` with entries
/// separated by `,` (so `-1` is the 1x1 negation).
pub fn parse_gamma(s: &str) -> anyhow::Result<InvolutionSpec> {
    match s {
        "negation" => Ok(InvolutionSpec::negation(1)),
        "identity" => Ok(InvolutionSpec::identity(1)),
        literal => {
            let rows = literal
                .split(';')
                .map(|row| row.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage("--gamma"))?;
            let m = RatMatrix::from_rows(&rows).map_err(usage("--gamma"))?;
            InvolutionSpec::new(m, literal).map_err(usage("--gamma"))
        }
    }
}

impl CaseArgs {
    pub fn resolve(&self) -> anyhow::Result<CaseSpec> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                toml::from_str::<ConfigFile>(&text).map_err(usage("--config"))?
            }
            None => ConfigFile::default(),
        };
        let weights = match (&self.weights, file.weights) {
            (Some(w), _) => Some((w[0], w[1])),
            (None, Some(w)) => Some((w[0], w[1])),
            (None, None) => None,
        };
        if let Some((a, b)) = weights {
            if a < 1 || b < 1 {
                return Err(UsageError(format!("weights must be positive integers, got {a} {b}")).into());
            }
        }
        // a flag for either of point/class overrides both file keys
        let (point, class) = if self.point.is_some() || self.class.is_some() {
            (self.point.clone(), self.class.clone())
        } else {
            (file.point, file.class)
        };
        let point = match (point, class) {
            (Some(_), Some(_)) => return Err(UsageError("give either a point or a class, not both".into()).into()),
            (Some(p), None) => Some(p.parse::<FlagPoint>().map_err(usage("--point"))?),
            (None, Some(c)) => Some(c.parse::<OrbitClass>().map_err(usage("--class"))?.representative()),
            (None, None) => None,
        };
        let gamma = parse_gamma(self.gamma.as_deref().or(file.gamma.as_deref()).unwrap_or("negation"))?;
        let seed = match self.seed.or(file.seed) {
            Some(s) => s,
            None => match std::env::var(SEED_ENV) {
                Ok(v) => v.trim().parse().map_err(usage(SEED_ENV))?,
                Err(_) => 0,
            },
        };
        let eps = self.eps.or(file.eps).unwrap_or(DEFAULT_EPSILON);
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(UsageError(format!("--eps must be positive, got {eps}")).into());
        }
        let r_max = self.r_max.or(file.r_max).unwrap_or(DEFAULT_R_MAX);
        if r_max == 0 {
            return Err(UsageError("--r-max must be at least 1".into()).into());
        }
        Ok(CaseSpec { weights, point, gamma, seed, r_max, eps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_literals() {
        assert_eq!(parse_gamma("-1").unwrap().action(), InvolutionSpec::negation(1).action());
        assert_eq!(parse_gamma("1").unwrap().action(), InvolutionSpec::identity(1).action());
        assert_eq!(parse_gamma("0,1;1,0").unwrap().rank(), 2);
        assert!(parse_gamma("2").is_err());
        assert!(parse_gamma("nonsense").is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("case.toml");
        std::fs::write(&path, "weights = [3, 1]\nclass = \"Diagonal\"\nseed = 9\nr_max = 4\n").unwrap();
        let args = CaseArgs { config: Some(path.clone()), seed: Some(2), ..Default::default() };
        let spec = args.resolve().unwrap();
        assert_eq!(spec.weights().unwrap(), (3, 1));
        assert_eq!(spec.seed, 2);
        assert_eq!(spec.r_max, 4);
        assert_eq!(spec.point().unwrap(), &OrbitClass::Diagonal.representative());
        let args = CaseArgs { config: Some(path), point: Some("0,1;1,1".into()), ..Default::default() };
        assert_eq!(args.resolve().unwrap().point().unwrap(), &OrbitClass::Dense.representative());
    }

    #[test]
    fn rejects_bad_values() {
        let bad_weights = CaseArgs { weights: Some(vec![0, 1]), ..Default::default() };
        assert!(bad_weights.resolve().unwrap_err().is::<UsageError>());
        let bad_point = CaseArgs { point: Some("0,0;1,1".into()), ..Default::default() };
        assert!(bad_point.resolve().unwrap_err().is::<UsageError>());
        let missing = CaseArgs::default().resolve().unwrap();
        assert!(missing.weights().unwrap_err().is::<UsageError>());
    }
}
