//! Subcommand implementations. Each returns the text to print on stdout or a
//! [`CliError`] carrying the process exit code.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use h1forge::catalog::{self, bound, predict_h1_zero, Family, LieFamily};
use h1forge::cohomology::{h1_cross_checked, h1_full_table, h1_presentation, h1_with_reductions};
use h1forge::corpus::{entries, Class, SpecError, SpecFile};
use h1forge::group::DEFAULT_CAP;
use h1forge::{CohomologyError, FieldSpec, GModule, GroupError, H1Report, ModuleError};
use serde_json::json;

use crate::cache::Cache;
use crate::sweep::{run_sweep, SolverChoice, SweepConfig};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> CliError {
        CliError::usage(format!("{e:#}"))
    }
}

fn group_code(e: &GroupError) -> i32 {
    match e {
        GroupError::CapExceeded(_) => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> CliError {
        let code = match &e {
            SpecError::Group(g) => group_code(g),
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> CliError {
        let code = match &e {
            CohomologyError::OracleCapExceeded { .. } => EXIT_CAP,
            CohomologyError::Group(g) | CohomologyError::Module(ModuleError::Group(g)) => group_code(g),
            CohomologyError::InvariantViolation(_) => EXIT_INVARIANT,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult = Result<String, CliError>;

/// Accepts "p", "p^m" or "p,m".
pub fn parse_field(s: &str) -> Result<FieldSpec, String> {
    let parts: Vec<&str> = s.split(['^', ',']).map(str::trim).collect();
    let num = |t: &str| t.parse::<u64>().map_err(|_| format!("bad field {s:?}"));
    let spec = match parts.as_slice() {
        [p] => FieldSpec { p: num(p)?, m: 1 },
        [p, m] => FieldSpec {
            p: num(p)?,
            m: num(m)? as u32,
        },
        _ => return Err(format!("bad field {s:?}; expected p or p^m")),
    };
    spec.build().map_err(|e| e.to_string())?;
    Ok(spec)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("reading {}: {e}", path.display())))
}

pub struct H1Options {
    pub solver: SolverChoice,
    pub json: bool,
    pub check: bool,
    pub cap: usize,
}

pub fn cmd_h1(path: &Path, opts: &H1Options) -> CliResult {
    if opts.cap > DEFAULT_CAP {
        return Err(CliError::usage(format!("cap {} exceeds {DEFAULT_CAP}", opts.cap)));
    }
    let spec = SpecFile::parse(&read(path)?)?;
    let group = Arc::new(spec.elaborate(opts.cap)?);
    let module = GModule::natural(group);
    let report: H1Report = if opts.check {
        let (presentation, _) = h1_cross_checked(&module)?;
        match opts.solver {
            SolverChoice::Auto => {
                let r = h1_with_reductions(&module, &[])?;
                if r.dims != presentation.dims {
                    return Err(CohomologyError::InvariantViolation(format!(
                        "reductions give {:?}, direct solver {:?}",
                        r.dims, presentation.dims
                    ))
                    .into());
                }
                r
            }
            _ => presentation,
        }
    } else {
        match opts.solver {
            SolverChoice::Auto => h1_with_reductions(&module, &[])?,
            SolverChoice::Presentation => h1_presentation(&module),
            SolverChoice::Table => h1_full_table(&module)?,
        }
    };
    if opts.json {
        return Ok(serde_json::to_string_pretty(&report).expect("report serializes"));
    }
    let mut out = vec![
        format!("group: {} (order {})", spec.label(), module.group().order()),
        format!("field: F_{} (p = {}, m = {})", report.field.q(), report.field.p, report.field.m),
        format!("dim V: {}", report.dim),
        format!(
            "z1 = {}, b1 = {}, h1 = {}",
            report.dims.z1, report.dims.b1, report.dims.h1
        ),
    ];
    if let Some(s) = report.solver {
        out.push(format!("solver: {s:?}"));
    }
    if !report.reductions.is_empty() {
        out.push(format!("reductions: {:?}", report.reductions));
    }
    out.extend(report.trace.iter().map(|t| format!("  {t}")));
    Ok(out.join("\n"))
}

pub struct SweepOptions {
    pub out: Option<PathBuf>,
    pub no_cache: bool,
    pub threads: Option<usize>,
}

pub fn cmd_sweep(config_path: &Path, opts: &SweepOptions) -> CliResult {
    let mut config = SweepConfig::load(config_path)?;
    if opts.threads.is_some() {
        config.threads = opts.threads;
    }
    let cache = if opts.no_cache {
        None
    } else {
        Some(Cache::from_env().map_err(|e| CliError::usage(format!("cache: {e}")))?)
    };
    let report = run_sweep(&config, cache.as_ref())?;
    let prefix = opts.out.clone().unwrap_or_else(|| PathBuf::from("sweep"));
    let csv = prefix.with_extension("csv");
    let json = prefix.with_extension("json");
    report.write_csv(&csv)?;
    report.write_json(&json)?;
    let line = format!(
        "{}\nwrote {} and {}",
        report.summary.line(),
        csv.display(),
        json.display()
    );
    if report.summary.spot_mismatches > 0 {
        return Err(CliError {
            code: EXIT_INVARIANT,
            message: line,
        });
    }
    Ok(line)
}

fn slug(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' { c } else { '-' })
        .collect::<String>()
        .split('-')
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join("-")
}

pub fn cmd_corpus(n: usize, fields: &[FieldSpec], class: Option<&str>, out: Option<&Path>) -> CliResult {
    let class = class
        .map(|c| Class::parse(c).ok_or_else(|| CliError::usage(format!("unknown class tag {c:?}"))))
        .transpose()?;
    let specs: Vec<SpecFile> = fields
        .iter()
        .flat_map(|&f| entries(n, f))
        .filter(|s| class.is_none() || s.meta.as_ref().map(|m| m.class) == class)
        .collect();
    let Some(dir) = out else {
        return Ok(serde_json::to_string_pretty(&specs).expect("specs serialize"));
    };
    std::fs::create_dir_all(dir).map_err(|e| CliError::usage(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for s in &specs {
        let name = format!("{}-{}-{}.json", slug(&s.label()), s.field.p, s.field.m);
        let path = dir.join(name);
        std::fs::write(&path, s.to_json()).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        written.push(path.display().to_string());
    }
    Ok(written.join("\n"))
}

pub fn cmd_catalog_dump() -> CliResult {
    Ok(serde_json::to_string_pretty(&catalog::dump()).expect("catalog serializes"))
}

pub fn cmd_predict(family: &str, w: u64, t: u32, p: u64, n: u64) -> CliResult {
    let fam = Family::parse(family).ok_or_else(|| CliError::usage(format!("unknown family {family:?}")))?;
    let s = LieFamily::from_w(fam, w, t).map_err(|e| CliError::usage(e.to_string()))?;
    let verdict = predict_h1_zero(&s, p, n).map_err(|e| CliError::usage(e.to_string()))?;
    let out = json!({
        "group": s.to_string(),
        "family": s,
        "p": p,
        "n": n,
        "c": bound(n).c,
        "prediction": verdict,
    });
    Ok(serde_json::to_string_pretty(&out).expect("prediction serializes"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_syntax() {
        assert_eq!(parse_field("29").unwrap(), FieldSpec { p: 29, m: 1 });
        assert_eq!(parse_field("3^2").unwrap(), FieldSpec { p: 3, m: 2 });
        assert_eq!(parse_field("2,3").unwrap(), FieldSpec { p: 2, m: 3 });
        assert!(parse_field("6").is_err());
        assert!(parse_field("x").is_err());
    }

    #[test]
    fn slugs() {
        assert_eq!(slug("sl2 (c)"), "sl2-c");
        assert_eq!(slug("su3 (e.5)"), "su3-e.5");
    }
}
