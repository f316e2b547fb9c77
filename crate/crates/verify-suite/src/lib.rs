//! Executable reproduction of the two duplicator tables.
//!
//! Every row is a pipeline over catalog entries: duplicator validation,
//! condition checks, construction of the duplicated algebras, the target
//! axiom suite and a list of extra claims. Each claim yields a verdict and a
//! JSON artifact (witness terms, isomorphisms, counterexamples) that can be
//! re-checked on its own.

mod claims;
mod rows;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use catalog::CatalogError;
use duplicator_engine::{Budget, CheckMode, Duplicator, EngineError};
use finite_algebra::AlgebraError;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use term_core::TermError;

pub use claims::{Claim, ClaimSpec, Construction, Formula, ResiduumExpectation, Subjects};
pub use duplicator_engine::Verdict;
pub use rows::{corrupt_entry, table1, table2};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("unknown row `{0}`")]
    UnknownRow(String),
}

impl VerifyError {
    /// Resource exhaustion, reported as an unknown verdict rather than a failure.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            VerifyError::Engine(EngineError::Resource { .. })
                | VerifyError::Engine(EngineError::Algebra(AlgebraError::Resource { .. }))
                | VerifyError::Algebra(AlgebraError::Resource { .. })
                | VerifyError::Catalog(CatalogError::Algebra(AlgebraError::Resource { .. }))
                | VerifyError::Catalog(CatalogError::Engine(EngineError::Resource { .. }))
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub mode: CheckMode,
    pub budget: Budget,
    /// Assignment cap for each identity of an axiom suite.
    pub eval_cap: usize,
    /// Record wall-clock milliseconds; when off every `millis` is 0.
    pub timings: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            mode: CheckMode::Witness,
            budget: Budget::default(),
            eval_cap: catalog::DEFAULT_EVAL_CAP,
            timings: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// The base class is finitely generated and the row is checked on its generators.
    Exact,
    /// The row is checked on fixed finite members of the base class only.
    FiniteWitness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Table {
    Table1,
    Table2,
}

impl Table {
    pub fn parse(s: &str) -> Option<Table> {
        match s {
            "table1" | "1" => Some(Table::Table1),
            "table2" | "2" => Some(Table::Table2),
            _ => None,
        }
    }
}

/// One row: a duplicator, the class it is checked over, the algebras it
/// builds with the suite they must pass, and extra claims.
#[derive(Clone, Debug)]
pub struct RowSpec {
    pub id: &'static str,
    pub scope: Scope,
    pub duplicator: &'static str,
    pub base_class: Vec<&'static str>,
    pub products: Vec<Construction>,
    pub suite: &'static str,
    pub extra: Vec<ClaimSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub verdict: Verdict,
    pub artifact: Value,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowReport {
    pub row: String,
    pub scope: Scope,
    pub claims: Vec<ClaimResult>,
}

impl RowReport {
    pub fn verdict(&self) -> Verdict {
        overall(self.claims.iter().map(|c| c.verdict))
    }

    pub fn passed(&self) -> bool {
        self.verdict() == Verdict::Pass
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.id == id)
    }
}

/// Fail beats unknown beats pass.
pub fn overall(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    let mut out = Verdict::Pass;
    for v in verdicts {
        match v {
            Verdict::Fail => return Verdict::Fail,
            Verdict::Unknown => out = Verdict::Unknown,
            Verdict::Pass => {}
        }
    }
    out
}

pub fn rows(table: Table) -> Vec<RowSpec> {
    match table {
        Table::Table1 => table1(),
        Table::Table2 => table2(),
    }
}

/// Looks a row up by id in either table.
pub fn find_row(id: &str) -> Result<RowSpec, VerifyError> {
    table1()
        .into_iter()
        .chain(table2())
        .find(|r| r.id == id)
        .ok_or_else(|| VerifyError::UnknownRow(id.into()))
}

pub fn run_row(spec: &RowSpec, config: &Config) -> Result<RowReport, VerifyError> {
    run_row_with(spec, config, None)
}

/// Runs a row with `replacement` standing in for the row's duplicator wherever
/// the row refers to it.
pub fn run_row_with(
    spec: &RowSpec,
    config: &Config,
    replacement: Option<Duplicator>,
) -> Result<RowReport, VerifyError> {
    let ctx = claims::Context::new(spec, config, replacement)?;
    let mut list = vec![
        ClaimSpec::new("validate", Claim::Validate { duplicator: spec.duplicator }),
    ];
    let profile = catalog::duplicator_profile(spec.duplicator)?;
    list.push(ClaimSpec::new(
        "conditions",
        Claim::Conditions {
            duplicator: spec.duplicator,
            class: spec.base_class.clone(),
            holds: profile.holds,
            fails: profile.fails,
            mode: None,
        },
    ));
    for p in &spec.products {
        list.push(ClaimSpec {
            id: format!("suite/{}", p.label()),
            claim: Claim::Suite { algebra: p.clone(), suite: spec.suite, expect: true },
        });
    }
    list.extend(spec.extra.iter().cloned());

    let mut out = Vec::new();
    for c in &list {
        let start = Instant::now();
        let mut results = ctx.run(c);
        let millis = if config.timings { start.elapsed().as_millis() as u64 } else { 0 };
        for r in &mut results {
            r.millis = millis;
        }
        out.extend(results);
    }
    Ok(RowReport { row: spec.id.into(), scope: spec.scope, claims: out })
}

/// Runs every row of a table in table order.
pub fn run_table(table: Table, config: &Config) -> Vec<RowReport> {
    rows(table)
        .iter()
        .map(|r| run_row(r, config).expect("table rows reference catalog keys only"))
        .collect()
}

/// Runs rows on up to `jobs` threads; the reports come back in `specs` order.
pub fn run_rows(specs: &[RowSpec], config: &Config, jobs: usize) -> Result<Vec<RowReport>, VerifyError> {
    let jobs = jobs.clamp(1, specs.len().max(1));
    if jobs == 1 {
        return specs.iter().map(|s| run_row(s, config)).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<RowReport, VerifyError>>>> =
        specs.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(spec) = specs.get(i) else { break };
                let r = run_row(spec, config);
                *slots[i].lock().expect("row slot") = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().expect("row slot").expect("every row ran"))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

const TEXT_ARTIFACT_WIDTH: usize = 120;

/// One line per claim in text, or a JSON array of row reports.
pub fn render_report(reports: &[RowReport], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                let scope = match r.scope {
                    Scope::Exact => "exact",
                    Scope::FiniteWitness => "finite-witness",
                };
                s.push_str(&format!("{} [{}] {}\n", r.row, scope, r.verdict()));
                for c in &r.claims {
                    s.push_str(&format!(
                        "  {:<7} {}  {}\n",
                        c.verdict.to_string(),
                        c.id,
                        summary(&c.artifact)
                    ));
                }
            }
            s
        }
    }
}

fn summary(artifact: &Value) -> String {
    let text = match artifact {
        Value::String(s) => s.clone(),
        Value::Object(m) => match m.get("summary") {
            Some(Value::String(s)) => s.clone(),
            _ => artifact.to_string(),
        },
        other => other.to_string(),
    };
    if text.chars().count() > TEXT_ARTIFACT_WIDTH {
        let cut: String = text.chars().take(TEXT_ARTIFACT_WIDTH - 3).collect();
        format!("{cut}...")
    } else {
        text
    }
}

pub fn parse_report(json: &str) -> Result<Vec<RowReport>, serde_json::Error> {
    serde_json::from_str(json)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn claim(id: &str, verdict: Verdict) -> ClaimResult {
        ClaimResult { id: id.into(), verdict, artifact: Value::String("x".into()), millis: 0 }
    }

    #[test]
    fn overall_verdict_ordering() {
        use Verdict::*;
        assert_eq!(overall([]), Pass);
        assert_eq!(overall([Pass, Unknown, Pass]), Unknown);
        assert_eq!(overall([Unknown, Fail, Pass]), Fail);
    }

    #[test]
    fn empty_input_renders_empty_report() {
        assert_eq!(render_report(&[], Format::Text), "");
        assert_eq!(parse_report(&render_report(&[], Format::Json)).unwrap(), vec![]);
    }

    #[test]
    fn text_has_one_line_per_claim() {
        let r = RowReport {
            row: "r".into(),
            scope: Scope::Exact,
            claims: vec![claim("a", Verdict::Pass), claim("b", Verdict::Fail)],
        };
        let text = render_report(std::slice::from_ref(&r), Format::Text);
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with("r [exact] fail"));
        assert_eq!(parse_report(&render_report(std::slice::from_ref(&r), Format::Json)).unwrap(), vec![r]);
    }

    #[test]
    fn long_artifacts_are_cut_in_text() {
        let long = Value::String("y".repeat(500));
        assert_eq!(summary(&long).chars().count(), TEXT_ARTIFACT_WIDTH);
        let obj = serde_json::json!({"summary": "short", "map": [1, 2]});
        assert_eq!(summary(&obj), "short");
    }

    #[test]
    fn table_names_parse() {
        assert_eq!(Table::parse("table1"), Some(Table::Table1));
        assert_eq!(Table::parse("2"), Some(Table::Table2));
        assert_eq!(Table::parse("table3"), None);
    }
}
