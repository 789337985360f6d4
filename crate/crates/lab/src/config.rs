use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use binsparse::binomial::binomial_u64;
use binsparse::ExponentRule;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// Inclusive integer range written `A..B`, or a single `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: u64,
    pub hi: u64,
}

impl IntRange {
    pub fn single(x: u64) -> Self {
        IntRange { lo: x, hi: x }
    }

    pub fn iter(&self) -> RangeInclusive<u64> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |x: &str| x.trim().parse::<u64>().map_err(|_| format!("bad range bound {x:?} in {s:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => (num(s)?, num(s)?),
        };
        Ok(IntRange { lo, hi })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Gen,
    Verify,
    Concavity,
    Roots,
    Conjectures,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "binsparse", version, about = "Exact-arithmetic laboratory for f_{m,n}(z) = sum_j C(n,j) z^C(j,m)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Print f_{m,n} (or H_n for --rule) in canonical text form.
    Gen(Flags),
    /// Run the exact identity suite.
    Verify(Flags),
    /// Run the log-concavity checks and the iterated-operator scan.
    Concavity(Flags),
    /// Certify all complex roots and check the annulus bounds.
    Roots(Flags),
    /// Tabulate real-root counts, parity patterns and values at -1.
    Conjectures(Flags),
}

#[derive(Debug, Clone, clap::Args)]
pub struct Flags {
    /// Inclusive range of m; a single value is allowed.
    #[arg(long, visible_alias = "m", value_name = "A..B")]
    pub m_range: Option<IntRange>,
    /// Inclusive range of n; a single value is allowed.
    #[arg(long, visible_alias = "n", value_name = "A..B")]
    pub n_range: Option<IntRange>,
    /// k for the shifted quotients, or nu for the transform checks.
    #[arg(long, value_name = "A..B", default_value = "1..3")]
    pub k_range: IntRange,
    /// Exponent rule for gen/verify: binom:M, geom, or table:h0,h1,...
    #[arg(long)]
    pub rule: Option<String>,
    /// Truncation order for series identities.
    #[arg(long, default_value_t = 12)]
    pub trunc: u64,
    /// Relative radius threshold for certified roots, and the slack for the
    /// numeric halving identity.
    #[arg(long, default_value_t = 1e-10, allow_hyphen_values = true)]
    pub tol: f64,
    /// Degree cap for densified polynomials [default: 600 for Sturm, 20000 for roots].
    #[arg(long)]
    pub degree_cap: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub m_range: IntRange,
    pub n_range: IntRange,
    pub k_range: IntRange,
    pub rule: Option<ExponentRule>,
    pub trunc: u64,
    pub tol: f64,
    pub degree_cap: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

const MAX_K: u64 = 16;

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, UsageError> {
        let (command, f) = match cli.command {
            CliCommand::Gen(f) => (Command::Gen, f),
            CliCommand::Verify(f) => (Command::Verify, f),
            CliCommand::Concavity(f) => (Command::Concavity, f),
            CliCommand::Roots(f) => (Command::Roots, f),
            CliCommand::Conjectures(f) => (Command::Conjectures, f),
        };
        let rule = f
            .rule
            .as_deref()
            .map(|r| r.parse::<ExponentRule>().map_err(|e| usage(e.to_string())))
            .transpose()?;
        if rule.is_some() && !matches!(command, Command::Gen | Command::Verify) {
            return Err(usage("--rule applies to gen and verify only"));
        }
        let m_range = match (f.m_range, &rule) {
            (Some(r), _) => r,
            (None, Some(_)) => IntRange::single(0),
            (None, None) => return Err(usage("--m-range is required")),
        };
        let n_range = f.n_range.ok_or_else(|| usage("--n-range is required"))?;
        let default_cap = if command == Command::Roots { 20_000 } else { 600 };
        let cfg = RunConfig {
            command,
            m_range,
            n_range,
            k_range: f.k_range,
            rule,
            trunc: f.trunc,
            tol: f.tol,
            degree_cap: f.degree_cap.unwrap_or(default_cap),
            format: f.format,
            out: f.out,
            seed: f.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        for (name, r) in [("m", self.m_range), ("n", self.n_range), ("k", self.k_range)] {
            if r.lo > r.hi {
                return Err(usage(format!("--{name}-range {r} is empty")));
            }
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(usage("--tol must be a positive number"));
        }
        if self.degree_cap == 0 {
            return Err(usage("--degree-cap must be positive"));
        }
        if self.trunc == 0 {
            return Err(usage("--trunc must be positive"));
        }
        if self.k_range.hi > MAX_K {
            return Err(usage(format!("--k-range is limited to {MAX_K}")));
        }
        if let Some(rule) = &self.rule {
            rule.h_value(self.n_range.hi + self.k_range.hi)
                .map_err(|e| usage(format!("rule {rule}: {e}")))?;
            return Ok(());
        }
        let min_m = match self.command {
            Command::Concavity => 2,
            _ => 1,
        };
        if self.m_range.lo < min_m || self.m_range.hi > u32::MAX as u64 {
            return Err(usage(format!("--m-range must start at {min_m} or above")));
        }
        if self.command == Command::Concavity && (self.n_range.lo == 0 || self.k_range.lo == 0) {
            return Err(usage("concavity needs n >= 1 and k >= 1"));
        }
        // every polynomial touched must have exponents fitting in 64 bits
        let (n, k) = (self.n_range.hi, self.k_range.hi);
        let n_top = match self.command {
            Command::Concavity => (2 * n).max(n + k) + 1,
            Command::Verify => n + k + 1,
            _ => n,
        };
        if let Some(m) = (self.m_range.lo..=self.m_range.hi.min(n_top)).find(|&m| binomial_u64(n_top, m).is_none()) {
            return Err(usage(format!("C({n_top}, {m}) overflows 64-bit exponents")));
        }
        Ok(())
    }

    pub fn m_values(&self) -> impl Iterator<Item = u32> {
        self.m_range.iter().map(|m| m as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &str) -> Result<RunConfig, UsageError> {
        let cli = Cli::try_parse_from(std::iter::once("binsparse").chain(args.split_whitespace())).unwrap();
        RunConfig::from_cli(cli)
    }

    #[test]
    fn ranges() {
        assert_eq!("3..12".parse::<IntRange>().unwrap(), IntRange { lo: 3, hi: 12 });
        assert_eq!("3..=12".parse::<IntRange>().unwrap(), IntRange { lo: 3, hi: 12 });
        assert_eq!("7".parse::<IntRange>().unwrap(), IntRange::single(7));
        assert!("a..3".parse::<IntRange>().is_err());
        assert!("1..".parse::<IntRange>().is_err());
        assert_eq!(IntRange { lo: 2, hi: 4 }.iter().count(), 3);
    }

    #[test]
    fn defaults_depend_on_command() {
        let c = parse("roots --m 2 --n-range 3..12").unwrap();
        assert_eq!(c.degree_cap, 20_000);
        assert_eq!(c.tol, 1e-10);
        let c = parse("conjectures --m 2 --n 3").unwrap();
        assert_eq!(c.degree_cap, 600);
        assert_eq!(c.format, Format::Text);
        assert_eq!(c.k_range, IntRange { lo: 1, hi: 3 });
    }

    #[test]
    fn rule_replaces_m() {
        let c = parse("gen --rule geom --n 0..5").unwrap();
        assert_eq!(c.rule, Some(ExponentRule::Geometric));
        assert!(parse("gen --rule geom --n 0..70").is_err());
        assert!(parse("gen --rule table:0,1,3 --n 0..2 --k-range 0..0").is_ok());
        assert!(parse("gen --rule table:0,1,3 --n 0..3 --k-range 0..0").is_err());
        assert!(parse("gen --rule nonsense --n 1").is_err());
    }

    #[test]
    fn invalid_configs() {
        for bad in [
            "gen --n 3",
            "gen --m 2",
            "gen --m 4..2 --n 3",
            "verify --m 2 --n 3 --tol 0",
            "verify --m 2 --n 3 --tol nan",
            "verify --m 2 --n 3 --trunc 0",
            "conjectures --m 2 --n 3 --degree-cap 0",
            "concavity --m 1 --n 3",
            "concavity --m 2 --n 0..3",
            "concavity --m 2 --n 3 --k-range 1..17",
            "roots --m 2 --n 3 --rule geom",
            "gen --m 30 --n 100",
        ] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }
}
