use std::fmt;
use std::ops::RangeInclusive;
use std::path::Path;
use std::process::ExitCode;

use wreathhom::{build_group, AbelianGroup, CountError, FiniteGroup, GroupError, GroupSpec};

pub const CAP_ENV: &str = "WREATHHOM_CAP";

/// Failure categories, each with its own exit code.
#[derive(Debug)]
pub enum JobError {
    BadSpec(String),
    CapExceeded(String),
    UnknownBuiltin(String),
    VerificationFailed(String),
    Other(String),
}

impl JobError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            JobError::Other(_) => 1,
            JobError::BadSpec(_) => 3,
            JobError::CapExceeded(_) => 4,
            JobError::UnknownBuiltin(_) => 5,
            JobError::VerificationFailed(_) => 6,
        })
    }
}

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JobError::BadSpec(m) => write!(f, "bad spec: {m}"),
            JobError::CapExceeded(m) => write!(f, "cap exceeded: {m}"),
            JobError::UnknownBuiltin(name) => write!(
                f,
                "unknown builtin group `{name}` (known: {}); pass a builtin name or a JSON file path",
                GroupSpec::BUILTIN_NAMES.join(", ")
            ),
            JobError::VerificationFailed(m) => write!(f, "verification failed: {m}"),
            JobError::Other(m) => write!(f, "{m}"),
        }
    }
}

impl From<GroupError> for JobError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::SizeCapExceeded { .. } => JobError::CapExceeded(e.to_string()),
            _ => JobError::BadSpec(e.to_string()),
        }
    }
}

impl From<CountError> for JobError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::Group(g) => g.into(),
            CountError::NonIntegral { .. } => JobError::Other(e.to_string()),
            _ => JobError::CapExceeded(e.to_string()),
        }
    }
}

impl From<std::io::Error> for JobError {
    fn from(e: std::io::Error) -> Self {
        JobError::Other(e.to_string())
    }
}

/// Resolves `--group`: an existing file is read as a JSON group spec, anything
/// else must be a builtin name.
pub fn resolve_group(arg: &str) -> Result<FiniteGroup, JobError> {
    let path = Path::new(arg);
    let spec = if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str::<GroupSpec>(&text)
            .map_err(|e| JobError::BadSpec(format!("{arg}: {e}")))?
    } else if let Some(spec) = GroupSpec::builtin(arg) {
        spec
    } else if arg.ends_with(".json") || arg.contains(std::path::MAIN_SEPARATOR) {
        return Err(JobError::BadSpec(format!("cannot read group file {arg}")));
    } else {
        return Err(JobError::UnknownBuiltin(arg.to_string()));
    };
    Ok(build_group(&spec)?)
}

/// Parses `--A` as comma-separated cyclic orders, e.g. `2,2` or `4,6`.
pub fn parse_abelian(arg: &str) -> Result<AbelianGroup, JobError> {
    let orders = arg
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| JobError::BadSpec(format!("`{s}` in --A is not a positive integer")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AbelianGroup::from_cyclic_orders(&orders)?)
}

/// Parses `--n` as either `N` or an inclusive range `a..b`.
pub fn parse_range(arg: &str) -> Result<RangeInclusive<usize>, JobError> {
    let number = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| JobError::BadSpec(format!("`{arg}` is not `N` or `a..b`")))
    };
    let range = match arg.split_once("..") {
        Some((a, b)) => number(a)?..=number(b.trim_start_matches('='))?,
        None => {
            let n = number(arg)?;
            n..=n
        }
    };
    if range.is_empty() {
        return Err(JobError::BadSpec(format!("empty n-range `{arg}`")));
    }
    Ok(range)
}

/// The recurrence cap: the flag wins over the environment, which wins over the
/// library default.
pub fn resolve_cap(flag: Option<usize>) -> Result<usize, JobError> {
    let cap = match flag {
        Some(c) => c,
        None => match std::env::var(CAP_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| JobError::BadSpec(format!("{CAP_ENV}={v} is not a positive integer")))?,
            Err(_) => wreathhom::counting::RECURRENCE_CAP,
        },
    };
    if cap == 0 {
        return Err(JobError::BadSpec("caps must be positive".into()));
    }
    Ok(cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert_eq!(parse_range("2..5").unwrap(), 2..=5);
        assert_eq!(parse_range("2..=5").unwrap(), 2..=5);
        assert!(matches!(parse_range("5..2"), Err(JobError::BadSpec(_))));
        assert!(matches!(parse_range("x"), Err(JobError::BadSpec(_))));
    }

    #[test]
    fn abelian_arguments() {
        assert_eq!(parse_abelian("2,2").unwrap().factors(), &[2, 2]);
        assert_eq!(parse_abelian("4, 6").unwrap().factors(), &[2, 12]);
        assert!(matches!(parse_abelian("2,-1"), Err(JobError::BadSpec(_))));
    }

    #[test]
    fn group_resolution() {
        assert_eq!(resolve_group("S3").unwrap().order(), 6);
        assert!(matches!(resolve_group("S9"), Err(JobError::UnknownBuiltin(_))));
        assert!(matches!(resolve_group("missing.json"), Err(JobError::BadSpec(_))));
    }
}
