//! Run configuration: command-line flags over a `key=value` file over
//! defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use knotmodel::series::{Action, Convention};

pub const DEFAULT_KMAX: usize = 3;
pub const DEFAULT_KMAX_CAP: usize = 5;
pub const HARD_KMAX_CAP: usize = knotmodel::diagram::MAX_K;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ConventionArg {
    Action,
    PaperSeries,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Action => Convention::Action,
            ConventionArg::PaperSeries => Convention::PaperSeries,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ActionArg {
    Standard,
    Symmetric,
    WickOrdered,
}

impl From<ActionArg> for Action {
    fn from(a: ActionArg) -> Self {
        match a {
            ActionArg::Standard => Action::Standard,
            ActionArg::Symmetric => Action::Symmetric,
            ActionArg::WickOrdered => Action::WickOrdered,
        }
    }
}

/// Flags shared by every subcommand. Unset flags fall back to the config
/// file, then to the defaults shown here.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Key=value file supplying defaults for any of these flags
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Highest order in g [default: 3]
    #[arg(long, global = true)]
    pub kmax: Option<usize>,
    /// Largest kmax accepted, at most 6 [default: 5]
    #[arg(long, global = true)]
    pub kmax_cap: Option<usize>,
    /// Matrix sizes for oracle checks: "2", "1..3" or "1,3" [default: 1..2]
    #[arg(long = "N", global = true, value_name = "N")]
    pub n: Option<String>,
    /// Greek index ranges for oracle checks, same syntax as --N [default: 1..2]
    #[arg(long, global = true)]
    pub d: Option<String>,
    /// Regularization values for finite-epsilon checks, comma separated [default: 0.5,0.1,0.01]
    #[arg(long, global = true)]
    pub eps: Option<String>,
    /// Coupling convention [default: action]
    #[arg(long, global = true, value_enum)]
    pub convention: Option<ConventionArg>,
    /// Gaussian weight and vertex [default: standard]
    #[arg(long, global = true, value_enum)]
    pub action: Option<ActionArg>,
    /// Worker threads [default: number of CPUs]
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file; standard output when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format [default: json]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub kmax: usize,
    pub kmax_cap: usize,
    pub n: Vec<usize>,
    pub d: Vec<usize>,
    pub eps: Vec<f64>,
    pub convention: Convention,
    pub action: Action,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

/// Parses `"2"`, `"1..3"` (inclusive) or `"1,3"`.
pub fn parse_range(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let out: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().trim_start_matches('=').parse()?);
        if a > b {
            bail!("empty range '{s}'");
        }
        (a..=b).collect()
    } else {
        s.split(',').map(|v| v.trim().parse::<usize>()).collect::<Result<_, _>>()?
    };
    if out.is_empty() || out.contains(&0) {
        bail!("'{s}' must list positive integers");
    }
    Ok(out)
}

pub fn parse_eps(s: &str) -> Result<Vec<f64>> {
    let out: Vec<f64> = s.split(',').map(|v| v.trim().parse::<f64>()).collect::<Result<_, _>>()?;
    if out.is_empty() || out.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
        bail!("epsilon values must be positive and finite, got '{s}'");
    }
    Ok(out)
}

fn read_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("{}:{}: expected key=value", path.display(), i + 1))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn value_enum<T: ValueEnum>(key: &str, v: &str) -> Result<T> {
    T::from_str(v, true).map_err(|_| anyhow!("config key '{key}': invalid value '{v}'"))
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self> {
        let mut file = match &args.config {
            Some(p) => read_file(p)?,
            None => BTreeMap::new(),
        };
        let mut take = |key: &str| file.remove(key);

        let kmax = match (args.kmax, take("kmax")) {
            (Some(v), _) => v,
            (None, Some(v)) => v.parse().context("config key 'kmax'")?,
            (None, None) => DEFAULT_KMAX,
        };
        let kmax_cap = match (args.kmax_cap, take("kmax_cap")) {
            (Some(v), _) => v,
            (None, Some(v)) => v.parse().context("config key 'kmax_cap'")?,
            (None, None) => DEFAULT_KMAX_CAP,
        };
        let n = parse_range(&args.n.clone().or_else(|| take("N")).unwrap_or_else(|| "1..2".into()))?;
        let d = parse_range(&args.d.clone().or_else(|| take("d")).unwrap_or_else(|| "1..2".into()))?;
        let eps = parse_eps(&args.eps.clone().or_else(|| take("eps")).unwrap_or_else(|| "0.5,0.1,0.01".into()))?;
        let convention = match (args.convention, take("convention")) {
            (Some(c), _) => c,
            (None, Some(v)) => value_enum("convention", &v)?,
            (None, None) => ConventionArg::Action,
        };
        let action = match (args.action, take("action")) {
            (Some(a), _) => a,
            (None, Some(v)) => value_enum("action", &v)?,
            (None, None) => ActionArg::Standard,
        };
        let threads = match (args.threads, take("threads")) {
            (Some(t), _) => Some(t),
            (None, Some(v)) => Some(v.parse().context("config key 'threads'")?),
            (None, None) => None,
        };
        let out = args.out.clone().or_else(|| take("out").map(PathBuf::from));
        let format = match (args.format, take("format")) {
            (Some(f), _) => f,
            (None, Some(v)) => value_enum("format", &v)?,
            (None, None) => Format::Json,
        };
        if let Some(key) = file.keys().next() {
            bail!("unknown config key '{key}'");
        }
        if kmax_cap > HARD_KMAX_CAP {
            bail!("kmax_cap {kmax_cap} exceeds the enumeration limit {HARD_KMAX_CAP}");
        }
        if threads == Some(0) {
            bail!("thread count must be at least 1");
        }
        Ok(RunConfig {
            kmax,
            kmax_cap,
            n,
            d,
            eps,
            convention: convention.into(),
            action: action.into(),
            threads,
            out,
            format,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2").unwrap(), vec![2]);
        assert_eq!(parse_range("1..3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_range("1..=2").unwrap(), vec![1, 2]);
        assert_eq!(parse_range("1,3").unwrap(), vec![1, 3]);
        assert!(parse_range("0").is_err());
        assert!(parse_range("3..1").is_err());
        assert!(parse_eps("0.1,-1").is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "# comment\nkmax = 2\nconvention=paper_series\nN=3\n").unwrap();
        let args = CommonArgs { config: Some(path.clone()), kmax: Some(4), ..Default::default() };
        let cfg = RunConfig::resolve(&args).unwrap();
        assert_eq!(cfg.kmax, 4);
        assert_eq!(cfg.convention, Convention::PaperSeries);
        assert_eq!(cfg.n, vec![3]);
        std::fs::write(&path, "colour=blue\n").unwrap();
        assert!(RunConfig::resolve(&args).is_err());
    }
}
