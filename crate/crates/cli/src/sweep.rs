//! Corpus sweeps: one row per (group, natural module) instance.

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context};
use h1forge::catalog::{bound, predict_h1_zero, CatalogError};
use h1forge::cohomology::{h1_full_table, h1_presentation, h1_with_reductions, verify_certificate, FULL_TABLE_CAP};
use h1forge::corpus::{entries, Class, SpecFile};
use h1forge::group::DEFAULT_CAP;
use h1forge::{FieldSpec, GModule, H1Report, Reduction, Solver};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::Cache;

/// Bumped whenever the cached payload or its meaning changes.
const CACHE_VERSION: &str = "h1forge-sweep-1";

pub const SPOT_CHECK_CAP: usize = 2000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SolverChoice {
    /// Verified reductions, then the presentation solver.
    #[default]
    Auto,
    Presentation,
    Table,
}

impl SolverChoice {
    pub fn name(self) -> &'static str {
        match self {
            SolverChoice::Auto => "auto",
            SolverChoice::Presentation => "presentation",
            SolverChoice::Table => "table",
        }
    }
}

fn default_cap() -> usize {
    DEFAULT_CAP
}

fn default_spot() -> usize {
    SPOT_CHECK_CAP
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Matrix degrees.
    pub n: Vec<usize>,
    pub fields: Vec<FieldSpec>,
    /// Class tags such as "C3" or "Full"; "all" selects every class.
    pub classes: Vec<String>,
    /// Optional label filter; a row is kept if its label is listed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// Explicit instances appended after the corpus ones.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra: Vec<SpecFile>,
    #[serde(default)]
    pub solver: SolverChoice,
    #[serde(default = "default_cap")]
    pub cap: usize,
    #[serde(default = "default_spot")]
    pub spot_check_cap: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    /// Recorded in the report; all randomness is derived from group fingerprints.
    #[serde(default)]
    pub seed: u64,
}

impl SweepConfig {
    pub fn load(path: &Path) -> anyhow::Result<SweepConfig> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    fn class_filter(&self) -> anyhow::Result<Option<Vec<Class>>> {
        if self.classes.is_empty() {
            bail!("empty class filter");
        }
        if self.classes.iter().any(|c| c.eq_ignore_ascii_case("all")) {
            return Ok(None);
        }
        self.classes
            .iter()
            .map(|c| Class::parse(c).with_context(|| format!("unknown class tag {c:?}")))
            .collect::<anyhow::Result<Vec<_>>>()
            .map(Some)
    }

    /// The selected instances, in a fixed order.
    pub fn instances(&self) -> anyhow::Result<Vec<SpecFile>> {
        if self.cap > DEFAULT_CAP {
            bail!("cap {} exceeds the enumeration cap {DEFAULT_CAP}", self.cap);
        }
        let classes = self.class_filter()?;
        let mut out = Vec::new();
        for &n in &self.n {
            for &field in &self.fields {
                for spec in entries(n, field) {
                    let Some(meta) = &spec.meta else { continue };
                    if classes.as_ref().is_some_and(|c| !c.contains(&meta.class)) {
                        continue;
                    }
                    if self.labels.as_ref().is_some_and(|l| !l.contains(&meta.label)) {
                        continue;
                    }
                    out.push(spec);
                }
            }
        }
        out.extend(self.extra.iter().cloned());
        if out.is_empty() {
            bail!("the configuration selects no instances");
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundStatus {
    AboveBound,
    BelowBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpotCheck {
    Agree,
    Skipped,
    Mismatch,
}

/// The cacheable part of a row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Computed {
    pub order: usize,
    pub faithful: bool,
    pub irreducible: Option<bool>,
    pub semisimple: Option<bool>,
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
    pub reductions: Vec<Reduction>,
    pub solver: Option<Solver>,
    pub spot_check: SpotCheck,
    pub note: String,
}

/// CSV columns in this order; runtime is always last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRow {
    pub fingerprint: String,
    pub label: String,
    pub class: String,
    pub n: usize,
    pub p: u64,
    pub m: u32,
    pub order: usize,
    pub faithful: Option<bool>,
    pub irreducible: Option<bool>,
    pub semisimple: Option<bool>,
    pub z1: Option<usize>,
    pub b1: Option<usize>,
    pub h1: Option<usize>,
    pub reductions: String,
    pub solver: String,
    pub bound: BoundStatus,
    pub prediction: String,
    pub spot_check: String,
    pub error: String,
    pub runtime_ms: u64,
}

impl ResultRow {
    /// faithful, semisimple, above the bound and yet h1 > 0.
    pub fn violates_bound(&self) -> bool {
        self.bound == BoundStatus::AboveBound
            && self.faithful == Some(true)
            && self.semisimple == Some(true)
            && self.h1.is_some_and(|h| h > 0)
    }

    pub fn violates_prediction(&self) -> bool {
        self.prediction == "guaranteed" && self.h1.is_some_and(|h| h > 0)
    }

    pub fn is_irreducible_faithful(&self) -> bool {
        self.irreducible == Some(true) && self.faithful == Some(true)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub rows: usize,
    pub errors: usize,
    pub above_bound: usize,
    pub irreducible_faithful: usize,
    pub bound_violations: usize,
    pub prediction_violations: usize,
    pub spot_mismatches: usize,
}

impl Summary {
    pub fn of(rows: &[ResultRow]) -> Summary {
        Summary {
            rows: rows.len(),
            errors: rows.iter().filter(|r| !r.error.is_empty()).count(),
            above_bound: rows.iter().filter(|r| r.bound == BoundStatus::AboveBound).count(),
            irreducible_faithful: rows.iter().filter(|r| r.is_irreducible_faithful()).count(),
            bound_violations: rows.iter().filter(|r| r.violates_bound()).count(),
            prediction_violations: rows.iter().filter(|r| r.violates_prediction()).count(),
            spot_mismatches: rows.iter().filter(|r| r.spot_check == "mismatch").count(),
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{} rows, {} errors, {} above bound, {} irreducible faithful, {} violations of the vanishing bound, {} prediction violations, {} solver mismatches",
            self.rows,
            self.errors,
            self.above_bound,
            self.irreducible_faithful,
            self.bound_violations,
            self.prediction_violations,
            self.spot_mismatches
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub rows: Vec<ResultRow>,
    pub summary: Summary,
}

impl SweepReport {
    /// The report with runtimes zeroed, for comparisons across runs.
    pub fn without_timing(&self) -> SweepReport {
        let mut r = self.clone();
        for row in &mut r.rows {
            row.runtime_ms = 0;
        }
        r
    }

    pub fn write_csv(&self, path: &Path) -> anyhow::Result<()> {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json(&self, path: &Path) -> anyhow::Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?).with_context(|| format!("writing {}", path.display()))
    }
}

pub fn run_sweep(config: &SweepConfig, cache: Option<&Cache>) -> anyhow::Result<SweepReport> {
    let instances = config.instances()?;
    let work = || -> Vec<ResultRow> { instances.par_iter().map(|s| run_instance(s, config, cache)).collect() };
    let rows = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build()?.install(work),
        None => work(),
    };
    let summary = Summary::of(&rows);
    Ok(SweepReport {
        config: config.clone(),
        rows,
        summary,
    })
}

pub fn run_instance(spec: &SpecFile, config: &SweepConfig, cache: Option<&Cache>) -> ResultRow {
    let start = Instant::now();
    let n = spec.dim;
    let (p, m) = (spec.field.p, spec.field.m);
    let meta = spec.meta.as_ref();
    let mut row = ResultRow {
        fingerprint: String::new(),
        label: spec.label(),
        class: meta.map(|m| m.class.to_string()).unwrap_or_default(),
        n,
        p,
        m,
        order: 0,
        faithful: None,
        irreducible: None,
        semisimple: None,
        z1: None,
        b1: None,
        h1: None,
        reductions: String::new(),
        solver: String::new(),
        bound: if p > bound(n as u64).c {
            BoundStatus::AboveBound
        } else {
            BoundStatus::BelowBound
        },
        prediction: String::new(),
        spot_check: String::new(),
        error: String::new(),
        runtime_ms: 0,
    };
    if let Some(family) = meta.and_then(|m| m.family) {
        row.prediction = match predict_h1_zero(&family, p, n as u64) {
            Ok(v) if v.is_guaranteed() => "guaranteed".into(),
            Ok(_) => "unknown".into(),
            Err(CatalogError::SameCharacteristic(_)) => "same_characteristic".into(),
            Err(e) => format!("error: {e}"),
        };
    }
    let group = match spec.elaborate(config.cap) {
        Ok(g) => Arc::new(g),
        Err(e) => {
            row.error = e.to_string();
            row.runtime_ms = start.elapsed().as_millis() as u64;
            return row;
        }
    };
    row.fingerprint = group.fingerprint().to_string();
    let module = GModule::natural(group);
    let key = Cache::key(&[
        CACHE_VERSION,
        &row.fingerprint,
        &module.content_hash(),
        config.solver.name(),
        &config.spot_check_cap.to_string(),
    ]);
    let computed = match cache.and_then(|c| c.get::<Computed>(&key)) {
        Some(c) => Ok(c),
        None => {
            let c = compute(&module, config);
            if let (Ok(c), Some(cache)) = (&c, cache) {
                let _ = cache.put(&key, c);
            }
            c
        }
    };
    match computed {
        Ok(c) => {
            row.order = c.order;
            row.faithful = Some(c.faithful);
            row.irreducible = c.irreducible;
            row.semisimple = c.semisimple;
            row.z1 = Some(c.z1);
            row.b1 = Some(c.b1);
            row.h1 = Some(c.h1);
            row.reductions = c.reductions.iter().map(|r| format!("{r:?}")).collect::<Vec<_>>().join("+");
            row.solver = match c.solver {
                Some(Solver::Presentation) => "presentation".into(),
                Some(Solver::FullTable) => "full_table".into(),
                None => String::new(),
            };
            row.spot_check = serde_json::to_value(c.spot_check)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default();
            row.error = c.note;
        }
        Err(e) => {
            row.order = module.group().order();
            row.error = e;
        }
    }
    row.runtime_ms = start.elapsed().as_millis() as u64;
    row
}

fn compute(module: &GModule, config: &SweepConfig) -> Result<Computed, String> {
    let order = module.group().order();
    let mut note = Vec::new();
    let irreducible = match module.is_irreducible() {
        Ok(v) => Some(v),
        Err(e) => {
            note.push(e.to_string());
            None
        }
    };
    let semisimple = if irreducible == Some(true) {
        Some(true)
    } else {
        match module.is_semisimple() {
            Ok(v) => Some(v),
            Err(e) => {
                note.push(e.to_string());
                None
            }
        }
    };
    let report: H1Report = match config.solver {
        SolverChoice::Auto => h1_with_reductions(module, &[]).map_err(|e| e.to_string())?,
        SolverChoice::Presentation => h1_presentation(module),
        SolverChoice::Table => h1_full_table(module).map_err(|e| e.to_string())?,
    };
    let mut spot = SpotCheck::Skipped;
    if order <= config.spot_check_cap {
        let direct = if report.reductions.is_empty() && order * module.dim() <= FULL_TABLE_CAP {
            h1_full_table(module).map_err(|e| e.to_string())?
        } else {
            h1_presentation(module)
        };
        spot = if direct.dims == report.dims {
            SpotCheck::Agree
        } else {
            note.push(format!("solver disagreement: {:?} vs {:?}", report.dims, direct.dims));
            SpotCheck::Mismatch
        };
    }
    if let Some(cert) = &report.certificate {
        if !verify_certificate(module, cert) {
            note.push("certificate failed verification".into());
            spot = SpotCheck::Mismatch;
        }
    }
    Ok(Computed {
        order,
        faithful: module.is_faithful(),
        irreducible,
        semisimple,
        z1: report.dims.z1,
        b1: report.dims.b1,
        h1: report.dims.h1,
        reductions: report.reductions,
        solver: report.solver,
        spot_check: spot,
        note: note.join("; "),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(classes: &[&str]) -> SweepConfig {
        SweepConfig {
            n: vec![2],
            fields: vec![FieldSpec { p: 7, m: 1 }],
            classes: classes.iter().map(|s| s.to_string()).collect(),
            labels: None,
            extra: Vec::new(),
            solver: SolverChoice::Auto,
            cap: DEFAULT_CAP,
            spot_check_cap: SPOT_CHECK_CAP,
            threads: Some(2),
            seed: 0,
        }
    }

    #[test]
    fn empty_filter_is_rejected() {
        assert!(config(&[]).instances().is_err());
        assert!(config(&["C7"]).instances().is_err());
        assert!(config(&["C11"]).instances().is_err());
    }

    #[test]
    fn small_sweep_has_no_violations() {
        let report = run_sweep(&config(&["all"]), None).unwrap();
        assert!(report.summary.rows >= 4);
        assert_eq!(report.summary.errors, 0, "{:?}", report.rows);
        assert_eq!(report.summary.bound_violations, 0);
        assert!(report.rows.iter().all(|r| r.h1 == Some(0)));
    }

    #[test]
    fn cached_rerun_matches() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let c = config(&["C3", "C6"]);
        let a = run_sweep(&c, Some(&cache)).unwrap();
        let b = run_sweep(&c, Some(&cache)).unwrap();
        assert_eq!(a.without_timing(), b.without_timing());
    }
}
