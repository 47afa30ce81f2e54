use std::path::{Path, PathBuf};

use popdiff::bounds::BoundsReport;
use popdiff::oracle::{exact_f, OracleOptions};
use popdiff::rational::{clamp_nonnegative, to_decimal, Rational};
use popdiff::repr::{popular_window, Autocorrelation, Difference, ReprTable, Window};
use popdiff::sets::AnySet;
use popdiff::verify::{verify_theorem_suite, SuiteConfig};
use serde_json::{json, Value};

use crate::args::{emit, read_file, to_pretty_json, ParamArgs};
use crate::error::{CliError, CliResult};

pub fn eval(path: &Path, d: Option<usize>, full: bool, certified: bool) -> CliResult {
    let set = AnySet::from_json(&read_file(path)?).map_err(|e| match e {
        popdiff::Error::Parse { line, column, message } => {
            CliError::Usage(format!("{}:{line}:{column}: {message}", path.display()))
        }
        other => other.into(),
    })?;
    let window = match (d, full) {
        (_, true) => Window::Full,
        (Some(d), false) => popular_window(d)?,
        (None, false) => return Err(CliError::Usage("eval needs --d D or --full".into())),
    };
    let table: ReprTable = match &set {
        AnySet::Interval(s) if certified => s.repr_table_certified(window)?,
        AnySet::Interval(s) => s.repr_table(window)?,
        AnySet::Cyclic(s) if certified => s.repr_table_certified(window)?,
        AnySet::Cyclic(s) => s.repr_table(window)?,
        AnySet::Grid(s) if certified => s.repr_table_certified(window)?,
        AnySet::Grid(s) => s.repr_table(window)?,
    };

    let mut csv = csv::Writer::from_writer(Vec::new());
    if matches!(set, AnySet::Grid(_)) {
        csv.write_record(["a", "b", "count"])?;
    } else {
        csv.write_record(["d", "count"])?;
    }
    for (diff, count) in table.rows() {
        match diff {
            Difference::Scalar(d) => csv.write_record([d.to_string(), count.to_string()])?,
            Difference::Pair(a, b) => csv.write_record([a.to_string(), b.to_string(), count.to_string()])?,
        }
    }
    let mut text = String::from_utf8(csv.into_inner().expect("in-memory writer")).expect("csv output is utf-8");
    text.push_str(&format!("M={}\n", table.m_max()));
    emit(None, &text)
}

fn with_display(value: &mut Value, key: &str, x: Option<&Rational>, clamp: bool) {
    if let (Some(x), Some(slot)) = (x, value.get_mut(key).and_then(Value::as_object_mut)) {
        let shown = if clamp { clamp_nonnegative(x) } else { x.clone() };
        slot.insert("display".into(), Value::String(to_decimal(&shown, 6)));
    }
}

fn requested_gamma(value: &mut Value, gamma: Option<&Rational>) {
    if let (Some(g), Some(obj)) = (gamma, value.as_object_mut()) {
        obj.insert("requested_gamma".into(), Value::String(g.to_string()));
    }
}

pub fn bounds(args: &ParamArgs) -> CliResult {
    let resolved = args.resolve()?;
    let report = BoundsReport::new(&resolved.params);
    let mut value = serde_json::to_value(&report).expect("reports always serialize");
    with_display(&mut value, "lb_inclusion_exclusion", Some(&report.lb_inclusion_exclusion), true);
    with_display(&mut value, "lb_fourier", Some(&report.lb_fourier), true);
    with_display(&mut value, "lb_cyclic_counting", report.lb_cyclic_counting.as_ref(), true);
    with_display(&mut value, "ub_block", report.ub_block.as_ref(), false);
    with_display(&mut value, "remark_coefficient", report.remark_coefficient.as_ref(), false);
    requested_gamma(&mut value, resolved.requested_gamma.as_ref());
    let violations = report.violations();
    if let Some(obj) = value.as_object_mut() {
        obj.insert("violations".into(), json!(violations));
    }
    emit(None, &to_pretty_json(&value))?;
    for v in &violations {
        eprintln!("violation: {v}");
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::ChecksFailed { failed: violations.len(), total: violations.len() })
    }
}

pub fn oracle(args: &ParamArgs, cap: u64, jobs: usize) -> CliResult {
    let resolved = args.resolve()?;
    let result = exact_f(&resolved.params, &OracleOptions { cap, jobs })?;
    let mut value = serde_json::to_value(&result).expect("results always serialize");
    requested_gamma(&mut value, resolved.requested_gamma.as_ref());
    emit(None, &to_pretty_json(&value))
}

pub struct VerifyArgs {
    pub default: bool,
    pub config: Option<PathBuf>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    pub oracle_cap: Option<u64>,
    pub inclusive_window: bool,
    pub csv: Option<PathBuf>,
}

pub fn verify(args: &VerifyArgs) -> CliResult {
    let mut config = match (&args.config, args.default) {
        (Some(path), _) => serde_json::from_str::<SuiteConfig>(&read_file(path)?)
            .map_err(|e| CliError::Usage(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column())))?,
        (None, true) => SuiteConfig::standard(),
        (None, false) => return Err(CliError::Usage("verify needs --default or --config FILE".into())),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(jobs) = args.jobs {
        config.jobs = jobs;
    }
    if let Some(cap) = args.oracle_cap {
        config.oracle_cap = cap;
    }
    config.inclusive_window |= args.inclusive_window;

    let records = verify_theorem_suite(&config);
    let mut csv = csv::Writer::from_writer(Vec::new());
    for r in &records {
        csv.serialize(r)?;
    }
    let text = String::from_utf8(csv.into_inner().expect("in-memory writer")).expect("csv output is utf-8");
    emit(args.csv.as_deref(), &text)?;

    let failed: Vec<_> = records.iter().filter(|r| !r.passed).collect();
    for r in failed.iter().take(20) {
        eprintln!("FAIL {} {}: measured {} bound {}", r.point, r.check, r.measured, r.bound);
    }
    eprintln!("checks: {}, failed: {}", records.len(), failed.len());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::ChecksFailed { failed: failed.len(), total: records.len() })
    }
}
