//! Command-line flags and the optional TOML config file that backs them.
//!
//! A flag given on the command line wins over the same key in the config
//! file, which wins over the built-in default.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(name = "qbnwalk", version, about = "Quantum walks on hypercubes driven by quantum Bernoulli noises")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// TOML file with defaults for any of the options below.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Evolve a state and print `t,vertex,probability` rows for t = 0..=steps.
    Simulate,
    /// Run the operator, basis, coin and stationarity checks and print a JSON report.
    Verify,
    /// Print time-averaged distributions along a geometric ladder of horizons.
    Average,
    /// Write a seeded random coin system.
    RandomCoins,
    /// Write the coin system and companion file of a worked example.
    Example,
    /// Build a walk state file from a position vector and a coin vector.
    State,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Opts {
    /// Hypercube parameter; the graph has 2^(n+1) vertices.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Coin space dimension.
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Coin system file.
    #[arg(long, global = true, value_name = "PATH")]
    pub coins: Option<PathBuf>,
    /// Walk state file.
    #[arg(long, global = true, value_name = "PATH")]
    pub state: Option<PathBuf>,
    /// Eigen-component spec file.
    #[arg(long, global = true, value_name = "PATH")]
    pub spec: Option<PathBuf>,
    /// Number of steps (simulate) or stationarity horizon (verify).
    #[arg(long, global = true, value_name = "T")]
    pub steps: Option<u64>,
    /// Largest averaging horizon.
    #[arg(long, global = true, value_name = "T")]
    pub horizon: Option<u64>,
    #[arg(long, global = true, value_name = "S")]
    pub seed: Option<u64>,
    /// Tolerance override for the command's checks.
    #[arg(long, global = true, value_name = "X")]
    pub tol: Option<f64>,
    /// Output file, or output directory for `example`.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Use the closed-form distribution instead of direct evolution.
    #[arg(long, global = true)]
    #[serde(default)]
    pub closed_form: bool,
    /// Block sizes of the random resolution of the identity, e.g. `2,1,1`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub partition: Option<Vec<usize>>,
    /// Example id (`3.1` or `3.2`).
    #[arg(long, global = true)]
    pub id: Option<String>,
    /// Position part `Ẑ_σ`, with σ given as a bitmask.
    #[arg(long, global = true, value_name = "SIGMA", conflicts_with_all = ["vertex", "position"])]
    pub hadamard: Option<usize>,
    /// Position part `Z_σ`, with σ given as a bitmask.
    #[arg(long, global = true, value_name = "SIGMA", conflicts_with = "position")]
    pub vertex: Option<usize>,
    /// Position vector file.
    #[arg(long, global = true, value_name = "PATH")]
    pub position: Option<PathBuf>,
    /// Coin part `e_j`.
    #[arg(long, global = true, value_name = "J", conflicts_with = "random_coin")]
    pub coin_index: Option<usize>,
    /// Coin part drawn uniformly from the unit sphere using `--seed`.
    #[arg(long, global = true)]
    #[serde(default)]
    pub random_coin: bool,
    /// Also write the position vector used by `state`.
    #[arg(long, global = true, value_name = "PATH")]
    pub position_out: Option<PathBuf>,
}

impl Opts {
    /// Fills every option missing here from `file`.
    pub fn or(self, file: Opts) -> Opts {
        Opts {
            n: self.n.or(file.n),
            dim: self.dim.or(file.dim),
            coins: self.coins.or(file.coins),
            state: self.state.or(file.state),
            spec: self.spec.or(file.spec),
            steps: self.steps.or(file.steps),
            horizon: self.horizon.or(file.horizon),
            seed: self.seed.or(file.seed),
            tol: self.tol.or(file.tol),
            out: self.out.or(file.out),
            closed_form: self.closed_form || file.closed_form,
            partition: self.partition.or(file.partition),
            id: self.id.or(file.id),
            hadamard: self.hadamard.or(file.hadamard),
            vertex: self.vertex.or(file.vertex),
            position: self.position.or(file.position),
            coin_index: self.coin_index.or(file.coin_index),
            random_coin: self.random_coin || file.random_coin,
            position_out: self.position_out.or(file.position_out),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_config_file() {
        let cli = Cli::try_parse_from(["qbnwalk", "random-coins", "--n", "2", "--seed", "9"]).unwrap();
        let file: Opts = toml::from_str("n = 5\ndim = 4\nseed = 1\n").unwrap();
        let merged = cli.opts.or(file);
        assert_eq!((merged.n, merged.dim, merged.seed), (Some(2), Some(4), Some(9)));
    }

    #[test]
    fn config_keys_are_checked() {
        assert!(toml::from_str::<Opts>("colour = 1\n").is_err());
        let o: Opts = toml::from_str("closed-form = true\npartition = [2, 1]\n").unwrap();
        assert!(o.closed_form);
        assert_eq!(o.partition, Some(vec![2, 1]));
    }
}
