use std::fs;
use std::path::PathBuf;

use clap::Args;
use qpd3::analysis::Preset;
use qpd3::{BasisReading, ChannelParams, Config, Player, StrategyParams, Table};

use crate::Failure;

/// Radians, or a multiple of pi such as `pi`, `-pi`, `pi/2`, `3pi/4`, `0.5*pi`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    let Some(at) = t.find("pi") else {
        return t
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("{s:?} is not an angle (radians, or forms like pi/2)"));
    };
    let bad = || format!("{s:?} is not an angle (radians, or forms like pi/2)");
    let coeff = t[..at].trim_end_matches('*');
    let coeff = match coeff {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let rest = &t[at + 2..];
    let div = match rest {
        "" => 1.0,
        r => r
            .strip_prefix('/')
            .and_then(|d| d.parse::<f64>().ok())
            .filter(|d| *d != 0.0)
            .ok_or_else(bad)?,
    };
    Ok(coeff * std::f64::consts::PI / div)
}

/// `A:theta,alpha,beta`.
pub fn parse_player_strategy(s: &str) -> Result<(Player, [f64; 3]), String> {
    let (who, angles) = s
        .split_once(':')
        .ok_or_else(|| format!("strategy {s:?} must look like A:theta,alpha,beta"))?;
    let player: Player = who.trim().parse()?;
    Ok((player, parse_triple(angles)?))
}

/// `theta,alpha,beta`.
pub fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts = s
        .split(',')
        .map(parse_angle)
        .collect::<Result<Vec<_>, _>>()?;
    <[f64; 3]>::try_from(parts)
        .map_err(|v| format!("expected three angles theta,alpha,beta, got {}", v.len()))
}

fn parse_probability(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(format!("{x} is outside [0, 1]"))
    }
}

/// Game parameters shared by every simulation command.
#[derive(Args, Debug, Clone)]
pub struct GameArgs {
    /// Preset profile to start from: fig2|fig3|fig4|fig5 (default depends on the command)
    #[arg(long)]
    pub preset: Option<Preset>,

    /// Initial-state entanglement in [0, pi/2] (default: pi/2)
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub gamma: Option<f64>,

    /// Measurement entanglement in [0, pi/2] (default: pi/2)
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub delta: Option<f64>,

    /// Decoherence on both passages, in [0, 1] (default: preset value, else 0)
    #[arg(long, value_parser = parse_probability)]
    pub p: Option<f64>,

    /// Memory on both passages, in [0, 1] (default: preset value, else 0)
    #[arg(long, value_parser = parse_probability)]
    pub mu: Option<f64>,

    /// Decoherence on the return passage only (default: --p)
    #[arg(long, value_parser = parse_probability)]
    pub p2: Option<f64>,

    /// Memory on the return passage only (default: --mu)
    #[arg(long, value_parser = parse_probability)]
    pub mu2: Option<f64>,

    /// Player strategy A:theta,alpha,beta; repeatable (default: preset profile, else C for all)
    #[arg(long = "strategy", value_parser = parse_player_strategy, allow_hyphen_values = true)]
    pub strategies: Vec<(Player, [f64; 3])>,

    /// JSON payoff table mapping "000".."111" to [A, B, C] (default: the standard table)
    #[arg(long)]
    pub table: Option<PathBuf>,

    /// Measurement basis reading
    #[arg(long, default_value = "uniform")]
    pub basis: BasisReading,
}

pub fn load_table(path: &PathBuf) -> Result<Table, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read table {}: {e}", path.display())))?;
    Table::from_json(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

impl GameArgs {
    /// Builds the configuration, starting from `fallback` when no preset was given.
    pub fn config(&self, fallback: Option<Preset>) -> Result<Config, Failure> {
        let preset = self.preset.or(fallback);
        let mut cfg = match preset {
            Some(pr) => pr.config()?,
            None => {
                let h = std::f64::consts::FRAC_PI_2;
                Config::new(h, h, [StrategyParams::cooperate(); 3])?
            }
        };
        if let Some(g) = self.gamma {
            cfg = cfg.with_gamma(g)?;
        }
        if let Some(d) = self.delta {
            cfg = cfg.with_delta(d)?;
        }
        let (p0, mu0) = (cfg.passage1().p(), cfg.passage1().mu());
        let p = self.p.unwrap_or(p0);
        let mu = self.mu.unwrap_or(mu0);
        let first = ChannelParams::new(p, mu)?;
        let second = ChannelParams::new(self.p2.unwrap_or(p), self.mu2.unwrap_or(mu))?;
        cfg = cfg.with_passages(first, second);
        for &(player, [t, a, b]) in &self.strategies {
            cfg = cfg.with_strategy(player, StrategyParams::new(t, a, b)?);
        }
        if let Some(path) = &self.table {
            cfg = cfg.with_table(load_table(path)?);
        }
        Ok(cfg.with_basis(self.basis))
    }
}
