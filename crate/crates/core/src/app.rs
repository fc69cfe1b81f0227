//! Run configuration and report documents behind the `spinrep` binary.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exchange::{
    class_operator, class_operator_exact, exchange_op, irrep_decomposition,
    schroedinger_hamiltonian, schroedinger_hamiltonian_exact, swap_oracle_exact, vrep,
    Representation, S3_TRANSPOSITION_CLASS_IRREPS,
};
use crate::linalg::{spectrum_of, ComplexMatrix, MatrixDump, RationalMatrix, SpectrumReport};
use crate::multiplets::{multiplicities, MultipletTable};
use crate::perm::{CycleType, Permutation};
use crate::qrep::{
    compare_cayley_tables, dual_family, j_class_ops, lie_closure, parent_j3_comparison, q_lift,
    q_lift_exact, qtilde,
};
use crate::rotations::{proposition_ledger, ClaimReport, ClaimStatus, Suite};
use crate::spin::{heisenberg, ConstantConvention, SiteSystem, SpinQuantum};

/// Version of the report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Deepest nesting order explored by closure commands.
pub const CLOSURE_MAX_DEPTH: usize = 8;

/// The operator a `build` or `spectrum` run works on.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OperatorSpec {
    /// `C(N) + 2 Σ S_i·S_j` with the run's constant convention.
    Heisenberg,
    /// Sum of exchange operators over the interaction graph.
    Schroedinger,
    Exchange {
        i: usize,
        j: usize,
    },
    Class {
        cycle_type: CycleType,
        rep: Representation,
    },
    Swap {
        perm: Permutation,
    },
    Vrep {
        perm: Permutation,
    },
    QLift {
        perm: Permutation,
    },
    J1,
    J3,
}

impl OperatorSpec {
    pub fn label(&self) -> String {
        match self {
            OperatorSpec::Heisenberg => "heisenberg".into(),
            OperatorSpec::Schroedinger => "schroedinger".into(),
            OperatorSpec::Exchange { i, j } => format!("exchange({i},{j})"),
            OperatorSpec::Class { cycle_type, rep } => format!("class[{cycle_type}]({rep:?})"),
            OperatorSpec::Swap { perm } => format!("swap{perm}"),
            OperatorSpec::Vrep { perm } => format!("vrep{perm}"),
            OperatorSpec::QLift { perm } => format!("q_lift{perm}"),
            OperatorSpec::J1 => "J1".into(),
            OperatorSpec::J3 => "J3".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QrepAction {
    Closure,
    Jops,
    Dual,
}

impl FromStr for QrepAction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closure" => Ok(QrepAction::Closure),
            "jops" => Ok(QrepAction::Jops),
            "dual" => Ok(QrepAction::Dual),
            _ => Err(Error::Parse(format!(
                "unknown qrep action `{s}` (closure, jops, dual)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Command {
    Build {
        operator: OperatorSpec,
    },
    Spectrum {
        operator: OperatorSpec,
    },
    Multiplets,
    Verify {
        suite: Suite,
    },
    Qrep {
        action: QrepAction,
        epsilon: i32,
        kernel: [f64; 2],
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Build { .. } => "build",
            Command::Spectrum { .. } => "spectrum",
            Command::Multiplets => "multiplets",
            Command::Verify { .. } => "verify",
            Command::Qrep { .. } => "qrep",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    CsvTable,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" | "csv-table" | "csv_table" => Ok(OutputFormat::CsvTable),
            _ => Err(Error::Parse(format!(
                "unknown format `{s}` (json, csv-table)"
            ))),
        }
    }
}

/// Everything a run depends on. Reports echo it back verbatim.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub spin: SpinQuantum,
    pub sites: usize,
    pub convention: ConstantConvention,
    /// `None` means the complete graph.
    pub graph: Option<Vec<(usize, usize)>>,
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
    pub format: OutputFormat,
    pub timestamp: bool,
}

impl RunConfig {
    pub fn new(command: Command, spin: SpinQuantum, sites: usize) -> Self {
        RunConfig {
            command,
            spin,
            sites,
            convention: ConstantConvention::CasimirSum,
            graph: None,
            tol: 1e-10,
            samples: 100,
            seed: 42,
            format: OutputFormat::Json,
            timestamp: false,
        }
    }

    /// Checks every numeric parameter and builds the site system.
    pub fn validate(&self) -> Result<SiteSystem> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.sites == 0 {
            return Err(Error::InvalidArgument("sites must be at least 1".into()));
        }
        if let Command::Qrep {
            epsilon, kernel, ..
        } = &self.command
        {
            if *epsilon != -1 && *epsilon != 0 {
                return Err(Error::InvalidArgument(format!(
                    "epsilon must be -1 or 0, got {epsilon}"
                )));
            }
            if kernel.iter().any(|k| !k.is_finite()) {
                return Err(Error::InvalidArgument(
                    "kernel parameters must be finite".into(),
                ));
            }
        }
        if matches!(self.command, Command::Multiplets) {
            // the table needs no tensor space
            return SiteSystem::with_cap(self.spin, 1, usize::MAX);
        }
        let system = SiteSystem::new(self.spin, self.sites)?;
        match &self.graph {
            Some(edges) => system.with_graph(edges),
            None => Ok(system),
        }
    }
}

/// Exit status and the report document of a run.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub exit_code: i32,
    pub report: Value,
    /// The rendered output in the requested format.
    pub text: String,
}

/// Executes a run. Only asserted claims that fail make the exit code nonzero.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    let system = config.validate()?;
    let (result, csv, exit_code) = match &config.command {
        Command::Build { operator } => {
            let (m, exact) = build_operator(&system, config, operator)?;
            let mut dump = MatrixDump::new(&m)
                .with_system(&system)
                .with_label(operator.label());
            if let Some(q) = &exact {
                dump = dump.with_rational(q)?;
            }
            let csv = csv_matrix(&m);
            (
                serde_json::to_value(&dump).expect("dump serializes"),
                Some(csv),
                0,
            )
        }
        Command::Spectrum { operator } => {
            let (m, exact) = build_operator(&system, config, operator)?;
            let report = spectrum_of(&m, exact.as_ref())?;
            let mut value = json!({
                "operator": operator.label(),
                "exact_source": exact.is_some(),
                "spectrum": report,
                "summary": report.summary(),
            });
            if let OperatorSpec::Class {
                cycle_type,
                rep: Representation::P,
            } = operator
            {
                if system.sites() == 3 && *cycle_type == CycleType::transpositions(3) {
                    if let Ok(blocks) = irrep_decomposition(&report, &S3_TRANSPOSITION_CLASS_IRREPS)
                    {
                        value["irrep_decomposition"] = json!(blocks);
                    }
                }
            }
            if matches!(operator, OperatorSpec::Schroedinger)
                && system.sites() == 3
                && system.is_complete_graph()
            {
                if let Ok(blocks) = irrep_decomposition(&report, &S3_TRANSPOSITION_CLASS_IRREPS) {
                    value["irrep_decomposition"] = json!(blocks);
                }
            }
            (value, Some(csv_spectrum(&report)), 0)
        }
        Command::Multiplets => {
            let table = multiplicities(config.spin, config.sites)?;
            let value = multiplet_json(&table);
            (value, Some(csv_multiplets(&table)), 0)
        }
        Command::Verify { suite } => {
            let claims =
                proposition_ledger(&system, *suite, config.samples, config.seed, config.tol)?;
            let failed = claims.iter().filter(|c| c.is_failure()).count();
            let count = |s: ClaimStatus| claims.iter().filter(|c| c.status == s).count();
            let value = json!({
                "suite": suite.name(),
                "totals": {
                    "pass": count(ClaimStatus::Pass),
                    "fail": count(ClaimStatus::Fail),
                    "discrepancy_with_paper": count(ClaimStatus::DiscrepancyWithPaper),
                },
                "claims": claims,
            });
            (value, Some(csv_claims(&claims)), i32::from(failed > 0))
        }
        Command::Qrep {
            action,
            epsilon,
            kernel,
        } => {
            let value = match action {
                QrepAction::Closure => qrep_closure(&system, config.tol)?,
                QrepAction::Jops => qrep_jops(&system)?,
                QrepAction::Dual => qrep_dual(&system, *epsilon, *kernel)?,
            };
            (value, None, 0)
        }
    };

    let mut report = json!({
        "schema_version": SCHEMA_VERSION,
        "crate_version": env!("CARGO_PKG_VERSION"),
        "command": config.command.name(),
        "config": config,
        "result": result,
    });
    if config.timestamp {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        report["timestamp_unix"] = json!(secs);
    }
    let text = match config.format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
        OutputFormat::CsvTable => csv.ok_or_else(|| {
            Error::Unsupported(format!("no csv table for `{}`", config.command.name()))
        })?,
    };
    Ok(RunOutput {
        exit_code,
        report,
        text,
    })
}

fn recognized(m: &ComplexMatrix) -> Option<RationalMatrix> {
    RationalMatrix::recognize(m, 1e-9, 64).ok()
}

/// Builds an operator together with an exact copy when one is available.
pub fn build_operator(
    system: &SiteSystem,
    config: &RunConfig,
    op: &OperatorSpec,
) -> Result<(ComplexMatrix, Option<RationalMatrix>)> {
    Ok(match op {
        OperatorSpec::Heisenberg => {
            let m = heisenberg(system, config.convention)?.matrix;
            let exact = recognized(&m);
            (m, exact)
        }
        OperatorSpec::Schroedinger => (
            schroedinger_hamiltonian(system)?,
            Some(schroedinger_hamiltonian_exact(system)?),
        ),
        OperatorSpec::Exchange { i, j } => {
            let m = exchange_op(system, *i, *j)?;
            let exact = recognized(&m);
            (m, exact)
        }
        OperatorSpec::Class { cycle_type, rep } => (
            class_operator(system, cycle_type, *rep)?,
            Some(class_operator_exact(system, cycle_type, *rep)?),
        ),
        OperatorSpec::Swap { perm } => {
            let q = swap_oracle_exact(system, perm)?;
            (q.to_complex(), Some(q))
        }
        OperatorSpec::Vrep { perm } => {
            let m = vrep(system, perm)?;
            let exact = recognized(&m);
            (m, exact)
        }
        OperatorSpec::QLift { perm } => (q_lift(system, perm)?, Some(q_lift_exact(system, perm)?)),
        OperatorSpec::J1 => {
            let m = j_class_ops(system)?.j1;
            let exact = recognized(&m);
            (m, exact)
        }
        OperatorSpec::J3 => {
            let m = j_class_ops(system)?.j3;
            let exact = recognized(&m);
            (m, exact)
        }
    })
}

fn multiplet_json(table: &MultipletTable) -> Value {
    let rows: Vec<Value> = table
        .entries()
        .map(|(s, m)| json!({ "s": s.to_string(), "twice_s": s.twice(), "multiplicity": m.to_string(), "dim": s.local_dim() }))
        .collect();
    json!({
        "spin": table.spin.to_string(),
        "sites": table.sites,
        "rows": rows,
        "dimension": table.dimension().to_string(),
        "expected_dimension": table.expected_dimension().to_string(),
        "sum_rule_holds": table.sum_rule_holds(),
    })
}

fn qrep_closure(system: &SiteSystem, tol: f64) -> Result<Value> {
    let d = system.local_dim();
    if d < 2 {
        return Err(Error::Unsupported(
            "closure needs at least two states per site".into(),
        ));
    }
    let transpositions: Vec<Permutation> = (1..=d)
        .flat_map(|a| (a + 1..=d).map(move |b| (a, b)))
        .map(|(a, b)| Permutation::transposition(d, a, b))
        .collect::<Result<_>>()?;
    let names: Vec<String> = transpositions.iter().map(|p| format!("Q{p}")).collect();
    let parent = transpositions
        .iter()
        .map(|p| qtilde(system.spin(), p))
        .collect::<Result<Vec<_>>>()?;
    let lifted = transpositions
        .iter()
        .map(|p| q_lift(system, p))
        .collect::<Result<Vec<_>>>()?;
    let parent_closure = lie_closure(&parent, CLOSURE_MAX_DEPTH)?;
    let lifted_closure = lie_closure(&lifted, CLOSURE_MAX_DEPTH)?;
    let comparison = compare_cayley_tables(&parent, &lifted, &names, CLOSURE_MAX_DEPTH, tol)?;
    Ok(json!({
        "generators": names,
        "parent": closure_json(&parent_closure, &names),
        "lifted": closure_json(&lifted_closure, &names),
        "cayley_comparison": comparison,
    }))
}

fn closure_json(r: &crate::qrep::LieClosureReport, names: &[String]) -> Value {
    let mut v = serde_json::to_value(r).expect("closure serializes");
    v["word_labels"] = json!(r.word_labels(names));
    v
}

fn qrep_jops(system: &SiteSystem) -> Result<Value> {
    let j = j_class_ops(system)?;
    let s1 = spectrum_of(&j.j1, recognized(&j.j1).as_ref())?;
    let s3 = spectrum_of(&j.j3, None)?;
    Ok(json!({
        "j1": { "spectrum": s1, "summary": s1.summary(), "trace": j.j1.trace().re },
        "j2": "identity",
        "j3": { "spectrum": s3, "summary": s3.summary(), "trace": j.j3.trace().re },
        "j1_j3_relative_commutator": j.j1_j3_commutator,
        "parent_j3": parent_j3_comparison()?,
    }))
}

fn qrep_dual(system: &SiteSystem, epsilon: i32, kernel: [f64; 2]) -> Result<Value> {
    let a = dual_family(system, -1, kernel)?;
    let b = dual_family(system, 0, kernel)?;
    let distance: Vec<f64> = a
        .duals
        .iter()
        .zip(&b.duals)
        .map(|(x, y)| (x - y).frobenius_norm())
        .collect();
    Ok(json!({
        "requested_epsilon": epsilon,
        "reports": [a, b],
        "difference": {
            "orthogonality_residual": [a.orthogonality_residual, b.orthogonality_residual],
            "dual_distance_frobenius": distance,
        },
    }))
}

fn csv_spectrum(r: &SpectrumReport) -> String {
    let mut out = String::from("value,exact,multiplicity,residual,exact_verified\n");
    for c in &r.classes {
        let exact = c.exact.map(|v| v.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{:e},{}",
            c.value, exact, c.multiplicity, c.residual, c.exact_verified
        );
    }
    out
}

fn csv_multiplets(t: &MultipletTable) -> String {
    let mut out = String::from("s,multiplicity,dim\n");
    for (s, m) in t.entries() {
        let _ = writeln!(out, "{s},{m},{}", s.local_dim());
    }
    out
}

fn csv_claims(claims: &[ClaimReport]) -> String {
    let mut out = String::from("claim_id,status,max_residual,tolerance,asserted\n");
    for c in claims {
        let _ = writeln!(
            out,
            "{},{},{:e},{:e},{}",
            c.claim_id, c.status, c.max_residual, c.tolerance, c.asserted
        );
    }
    out
}

fn csv_matrix(m: &ComplexMatrix) -> String {
    let mut out = String::from("row,col,re,im\n");
    for r in 0..m.dim() {
        for c in 0..m.dim() {
            let z = m.get(r, c);
            if z.norm() != 0.0 {
                let _ = writeln!(out, "{r},{c},{},{}", z.re, z.im);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_configs_give_identical_reports() {
        let mut cfg = RunConfig::new(
            Command::Verify {
                suite: Suite::Prop6,
            },
            SpinQuantum::HALF,
            3,
        );
        cfg.samples = 5;
        let a = run(&cfg).unwrap();
        let b = run(&cfg).unwrap();
        assert_eq!(a.text, b.text);
        assert_eq!(a.exit_code, 0);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let mut cfg = RunConfig::new(Command::Multiplets, SpinQuantum::ONE, 3);
        cfg.tol = -1.0;
        assert!(run(&cfg).is_err());
        let cfg = RunConfig::new(
            Command::Qrep {
                action: QrepAction::Dual,
                epsilon: 1,
                kernel: [0.0, 0.0],
            },
            SpinQuantum::ONE,
            3,
        );
        assert!(run(&cfg).is_err());
    }

    #[test]
    fn spectrum_csv_has_header_and_rows() {
        let mut cfg = RunConfig::new(
            Command::Spectrum {
                operator: OperatorSpec::Schroedinger,
            },
            SpinQuantum::ONE,
            3,
        );
        cfg.format = OutputFormat::CsvTable;
        let out = run(&cfg).unwrap();
        let lines: Vec<&str> = out.text.lines().collect();
        assert_eq!(lines[0], "value,exact,multiplicity,residual,exact_verified");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("-3,-3,1,"));
    }

    #[test]
    fn timestamp_is_optional() {
        let mut cfg = RunConfig::new(Command::Multiplets, SpinQuantum::ONE, 3);
        assert!(run(&cfg).unwrap().report.get("timestamp_unix").is_none());
        cfg.timestamp = true;
        assert!(run(&cfg).unwrap().report.get("timestamp_unix").is_some());
    }
}
