//! Parameter sweeps that compare every closed form in [`crate::gas`] with the
//! general algorithms in [`crate::chains`] and [`crate::factorization`].
//!
//! Each (tuple, check) pair becomes one [`InvariantReport`] row. Failures are
//! data: a sweep never stops early, and rows come back in lexicographic tuple
//! order whatever the worker count.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::sync::mpsc;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::chains;
use crate::error::{Error, Result};
use crate::factorization::{factorizations, length_set_of};
use crate::gas::{self, GasParams};
use crate::monoid::NumericalMonoid;

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(10);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Catenary,
    Tame,
    Omega,
    Frobenius,
    Apery,
    Maxlen,
    Betti,
    Minmult,
    Bounds,
    H1,
    TauIdentity,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::Catenary,
        Check::Tame,
        Check::Omega,
        Check::Frobenius,
        Check::Apery,
        Check::Maxlen,
        Check::Betti,
        Check::Minmult,
        Check::Bounds,
        Check::H1,
        Check::TauIdentity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Catenary => "catenary",
            Check::Tame => "tame",
            Check::Omega => "omega",
            Check::Frobenius => "frobenius",
            Check::Apery => "apery",
            Check::Maxlen => "maxlen",
            Check::Betti => "betti",
            Check::Minmult => "minmult",
            Check::Bounds => "bounds",
            Check::H1 => "h1",
            Check::TauIdentity => "tau_identity",
        }
    }

    /// Parses a comma-separated list; `all` selects every check.
    pub fn parse_list(text: &str) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if item == "all" {
                out.extend(Check::ALL);
            } else {
                out.push(item.parse()?);
            }
        }
        out.sort_unstable();
        out.dedup();
        if out.is_empty() {
            return Err(Error::ConfigInvalid("no checks selected".into()));
        }
        Ok(out)
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::ConfigInvalid(format!("unknown check '{s}'")))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum XMode {
    /// Every x in 1..=a-1.
    All,
    List(Vec<i64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "text" => Ok(Self::Text),
            other => Err(Error::ConfigInvalid(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub a_range: RangeInclusive<i64>,
    pub h_range: RangeInclusive<i64>,
    pub d_range: RangeInclusive<i64>,
    pub x_mode: XMode,
    pub checks: Vec<Check>,
    pub parallelism: usize,
    pub output_format: OutputFormat,
    /// Oracle budget per tuple.
    pub timeout: Duration,
}

impl SweepConfig {
    pub fn new(
        a_range: RangeInclusive<i64>,
        h_range: RangeInclusive<i64>,
        d_range: RangeInclusive<i64>,
        checks: Vec<Check>,
    ) -> Self {
        Self {
            a_range,
            h_range,
            d_range,
            x_mode: XMode::All,
            checks,
            parallelism: 1,
            output_format: OutputFormat::Text,
            timeout: DEFAULT_TIMEOUT,
        }
    }

    /// A configuration covering exactly one tuple.
    pub fn single(params: GasParams, checks: Vec<Check>) -> Self {
        let mut config = Self::new(
            params.a()..=params.a(),
            params.h()..=params.h(),
            params.d()..=params.d(),
            checks,
        );
        config.x_mode = XMode::List(vec![params.x()]);
        config
    }

    pub fn validate(&self) -> Result<()> {
        for (name, r) in [
            ("a", &self.a_range),
            ("h", &self.h_range),
            ("d", &self.d_range),
        ] {
            if r.is_empty() {
                return Err(Error::ConfigInvalid(format!("{name} range is empty")));
            }
        }
        if *self.a_range.start() < 2 {
            return Err(Error::ConfigInvalid("a must be at least 2".into()));
        }
        if *self.h_range.start() < 1 || *self.d_range.start() < 1 {
            return Err(Error::ConfigInvalid("h and d must be positive".into()));
        }
        if let XMode::List(xs) = &self.x_mode {
            if xs.is_empty() || xs.iter().any(|&x| x < 1) {
                return Err(Error::ConfigInvalid(
                    "x list must hold positive values".into(),
                ));
            }
        }
        if self.checks.is_empty() {
            return Err(Error::ConfigInvalid("no checks selected".into()));
        }
        if self.parallelism == 0 {
            return Err(Error::ConfigInvalid(
                "parallelism must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Valid tuples in lexicographic (a, h, d, x) order, plus the number of
    /// tuples skipped because gcd(a, d) != 1 or x is out of range.
    pub fn tuples(&self) -> (Vec<GasParams>, usize) {
        let mut out = Vec::new();
        let mut skipped = 0;
        for a in self.a_range.clone() {
            for h in self.h_range.clone() {
                for d in self.d_range.clone() {
                    let xs: Vec<i64> = match &self.x_mode {
                        XMode::All => (1..a).collect(),
                        XMode::List(xs) => xs.clone(),
                    };
                    for x in xs {
                        if a.gcd(&d) != 1 || x >= a {
                            skipped += 1;
                            continue;
                        }
                        match GasParams::new(a, h, d, x) {
                            Ok(p) => out.push(p),
                            Err(_) => skipped += 1,
                        }
                    }
                }
            }
        }
        (out, skipped)
    }
}

/// A value compared by a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    Int(i64),
    Ratio(Ratio<i64>),
    Set(Vec<i64>),
    Bool(bool),
    Tuple(Vec<Quantity>),
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Quantity::Int(v) => serializer.serialize_i64(*v),
            Quantity::Ratio(r) => serializer.serialize_str(&r.to_string()),
            Quantity::Set(v) => v.serialize(serializer),
            Quantity::Bool(b) => serializer.serialize_bool(*b),
            Quantity::Tuple(items) => {
                let mut seq = serializer.serialize_seq(Some(items.len()))?;
                for item in items {
                    seq.serialize_element(item)?;
                }
                seq.end()
            }
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Int(v) => write!(f, "{v}"),
            Quantity::Ratio(r) => write!(f, "{r}"),
            Quantity::Bool(b) => write!(f, "{b}"),
            Quantity::Set(v) => {
                write!(f, "[")?;
                for (k, x) in v.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            Quantity::Tuple(items) => {
                write!(f, "[")?;
                for (k, x) in items.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Pass,
    Fail,
    Timeout,
}

/// One row of sweep output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub a: Option<i64>,
    pub h: Option<i64>,
    pub d: Option<i64>,
    pub x: Option<i64>,
    pub check: String,
    pub formula: Option<Quantity>,
    pub oracle: Option<Quantity>,
    pub equal: bool,
    pub witness: Option<Value>,
    pub elapsed_ms: u64,
}

impl InvariantReport {
    fn new(
        params: Option<&GasParams>,
        check: &str,
        formula: Quantity,
        oracle: Quantity,
        witness: Option<Value>,
        elapsed: Duration,
    ) -> Self {
        let equal = formula == oracle;
        Self {
            a: params.map(GasParams::a),
            h: params.map(GasParams::h),
            d: params.map(GasParams::d),
            x: params.map(GasParams::x),
            check: check.to_string(),
            formula: Some(formula),
            oracle: Some(oracle),
            equal,
            witness,
            elapsed_ms: elapsed.as_millis() as u64,
        }
    }

    fn timed_out(params: &GasParams, check: Check, budget: Duration) -> Self {
        Self {
            a: Some(params.a()),
            h: Some(params.h()),
            d: Some(params.d()),
            x: Some(params.x()),
            check: check.name().to_string(),
            formula: None,
            oracle: None,
            equal: false,
            witness: Some(json!({
                "status": "timeout",
                "budget_ms": budget.as_millis() as u64,
                "cli": reproduce(params, check),
            })),
            elapsed_ms: budget.as_millis() as u64,
        }
    }

    fn errored(params: &GasParams, check: Check, err: &Error, elapsed: Duration) -> Self {
        Self {
            a: Some(params.a()),
            h: Some(params.h()),
            d: Some(params.d()),
            x: Some(params.x()),
            check: check.name().to_string(),
            formula: None,
            oracle: None,
            equal: false,
            witness: Some(json!({
                "status": "error",
                "error": err.to_string(),
                "cli": reproduce(params, check),
            })),
            elapsed_ms: elapsed.as_millis() as u64,
        }
    }

    pub fn status(&self) -> RowStatus {
        if self.equal {
            RowStatus::Pass
        } else if self
            .witness
            .as_ref()
            .and_then(|w| w.get("status"))
            .is_some_and(|s| s == "timeout")
        {
            RowStatus::Timeout
        } else {
            RowStatus::Fail
        }
    }

    /// The row with `elapsed_ms` zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        Self {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SweepSummary {
    pub tuples: usize,
    pub skipped: usize,
    pub rows: usize,
    pub passed: usize,
    pub failed: usize,
    pub timeouts: usize,
}

impl SweepSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.timeouts == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub rows: Vec<InvariantReport>,
    pub summary: SweepSummary,
}

fn reproduce(params: &GasParams, check: Check) -> String {
    format!(
        "nsgp sweep --tuple {},{},{},{} --checks {}",
        params.a(),
        params.h(),
        params.d(),
        params.x(),
        check.name()
    )
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let (tuples, skipped) = config.tuples();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| Error::ConfigInvalid(e.to_string()))?;
    let checks = Arc::new(config.checks.clone());
    let per_tuple: Vec<Vec<InvariantReport>> = pool.install(|| {
        tuples
            .par_iter()
            .map(|p| run_tuple_with_budget(*p, Arc::clone(&checks), config.timeout))
            .collect()
    });
    let rows: Vec<InvariantReport> = per_tuple.into_iter().flatten().collect();
    let mut summary = SweepSummary {
        tuples: tuples.len(),
        skipped,
        rows: rows.len(),
        ..Default::default()
    };
    for row in &rows {
        match row.status() {
            RowStatus::Pass => summary.passed += 1,
            RowStatus::Fail => summary.failed += 1,
            RowStatus::Timeout => summary.timeouts += 1,
        }
    }
    Ok(SweepResult { rows, summary })
}

// The oracles cannot be interrupted, so they run on a detached thread; rows
// that have not arrived when the budget expires are reported as timeouts.
fn run_tuple_with_budget(
    params: GasParams,
    checks: Arc<Vec<Check>>,
    budget: Duration,
) -> Vec<InvariantReport> {
    let (tx, rx) = mpsc::channel();
    let worker_checks = Arc::clone(&checks);
    std::thread::spawn(move || {
        let ctx = TupleContext::new(params);
        for &check in worker_checks.iter() {
            if tx.send(ctx.run(check)).is_err() {
                return;
            }
        }
    });
    let deadline = Instant::now() + budget;
    let mut rows = Vec::with_capacity(checks.len());
    for &check in checks.iter() {
        let remaining = deadline.saturating_duration_since(Instant::now());
        match rx.recv_timeout(remaining) {
            Ok(row) => rows.push(row),
            Err(_) => rows.push(InvariantReport::timed_out(&params, check, budget)),
        }
    }
    rows
}

/// Runs every check for one tuple on the current thread, without a budget.
pub fn run_tuple(params: GasParams, checks: &[Check]) -> Vec<InvariantReport> {
    let ctx = TupleContext::new(params);
    checks.iter().map(|&c| ctx.run(c)).collect()
}

struct TupleContext {
    params: GasParams,
    monoid: Result<NumericalMonoid>,
    catenary: std::sync::OnceLock<Result<i64>>,
    tame: std::sync::OnceLock<Result<i64>>,
}

impl TupleContext {
    fn new(params: GasParams) -> Self {
        Self {
            params,
            monoid: gas::to_monoid(&params),
            catenary: Default::default(),
            tame: Default::default(),
        }
    }

    fn monoid(&self) -> Result<&NumericalMonoid> {
        self.monoid.as_ref().map_err(Clone::clone)
    }

    fn catenary(&self) -> Result<i64> {
        self.catenary
            .get_or_init(|| chains::catenary_degree(self.monoid()?))
            .clone()
    }

    fn tame(&self) -> Result<i64> {
        self.tame
            .get_or_init(|| chains::tame_degree(self.monoid()?))
            .clone()
    }

    fn run(&self, check: Check) -> InvariantReport {
        let start = Instant::now();
        match self.evaluate(check) {
            Ok((formula, oracle, witness)) => {
                let mut row = InvariantReport::new(
                    Some(&self.params),
                    check.name(),
                    formula,
                    oracle,
                    witness,
                    start.elapsed(),
                );
                if !row.equal {
                    let mut w = row.witness.take().unwrap_or_else(|| json!({}));
                    if let Value::Object(map) = &mut w {
                        map.entry("cli")
                            .or_insert_with(|| Value::String(reproduce(&self.params, check)));
                    }
                    row.witness = Some(w);
                }
                row
            }
            Err(err) => InvariantReport::errored(&self.params, check, &err, start.elapsed()),
        }
    }

    fn evaluate(&self, check: Check) -> Result<(Quantity, Quantity, Option<Value>)> {
        let p = &self.params;
        let s = self.monoid()?;
        match check {
            Check::Catenary => {
                let formula = gas::gas_catenary(p)?;
                let oracle = self.catenary()?;
                Ok((Quantity::Int(formula), Quantity::Int(oracle), None))
            }
            Check::Tame => {
                let formula = gas::gas_tame(p)?;
                let oracle = self.tame()?;
                let witness = gas::gas_tame_witness(p)?;
                let w = json!({
                    "n": witness.n,
                    "z_far": witness.z_far,
                    "distance_to_z1": witness.oracle_distance,
                });
                Ok((Quantity::Int(formula), Quantity::Int(oracle), Some(w)))
            }
            Check::Omega => {
                let formula = gas::gas_tame(p)?;
                let oracle = chains::omega(s)?;
                Ok((Quantity::Int(formula), Quantity::Int(oracle), None))
            }
            Check::Frobenius => Ok((
                Quantity::Int(gas::gas_frobenius(p)?),
                Quantity::Int(s.frobenius()?),
                None,
            )),
            Check::Apery => {
                let mut formula = gas::gas_apery(p)?;
                formula.sort_unstable();
                let mut oracle = s.apery_set(p.a())?.to_vec();
                oracle.sort_unstable();
                Ok((Quantity::Set(formula), Quantity::Set(oracle), None))
            }
            Check::Maxlen => self.maxlen(s),
            Check::Betti => {
                let candidates = gas::gas_betti_candidates(p)?;
                let betti = chains::betti_elements(s)?;
                let outside: Vec<i64> = betti
                    .iter()
                    .copied()
                    .filter(|n| candidates.binary_search(n).is_err())
                    .collect();
                let not_betti: Vec<i64> = candidates
                    .iter()
                    .copied()
                    .filter(|n| betti.binary_search(n).is_err())
                    .collect();
                let w = json!({
                    "betti": betti,
                    "candidates": candidates,
                    "candidates_not_betti": not_betti,
                });
                Ok((Quantity::Set(Vec::new()), Quantity::Set(outside), Some(w)))
            }
            Check::Minmult => Ok((
                Quantity::Int(gas::gas_min_multiple(p)?),
                Quantity::Int(chains::min_multiple_in_rest(s)?),
                None,
            )),
            Check::Bounds => self.bounds(s),
            Check::H1 => self.h1(),
            Check::TauIdentity => {
                let mut via_invariants = Vec::new();
                let mut via_scan = Vec::new();
                for (i, &b) in s.generators().iter().enumerate() {
                    let omega = chains::omega_of_atom(s, b)?;
                    let tau = chains::tau_of_atom(s, b)?;
                    via_invariants.push(Quantity::Int(omega.max(1 + tau)));
                    via_scan.push(Quantity::Int(chains::tame_index_degree(s, i)?));
                }
                Ok((
                    Quantity::Tuple(via_invariants),
                    Quantity::Tuple(via_scan),
                    None,
                ))
            }
        }
    }

    fn maxlen(&self, s: &NumericalMonoid) -> Result<(Quantity, Quantity, Option<Value>)> {
        let p = &self.params;
        let top = gas::gas_frobenius(p)? + 2 * p.generator(p.x())?;
        let mut agree = 0i64;
        let mut first_mismatch: Option<Value> = None;
        for n in 0..=top {
            let by_formula = gas::gas_contains(p, n)?;
            let by_oracle = s.contains(n);
            let ok = if by_formula != by_oracle {
                false
            } else if by_oracle {
                let formula = gas::gas_max_length(p, n)?;
                let oracle = length_set_of(n, &factorizations(s, n)).max();
                if formula != oracle && first_mismatch.is_none() {
                    first_mismatch = Some(json!({
                        "n": n,
                        "formula_max_length": formula,
                        "oracle_max_length": oracle,
                    }));
                }
                formula == oracle
            } else {
                true
            };
            if ok {
                agree += 1;
            } else if first_mismatch.is_none() {
                first_mismatch = Some(json!({
                    "n": n,
                    "formula_contains": by_formula,
                    "oracle_contains": by_oracle,
                }));
            }
        }
        let witness = first_mismatch.map(|mut w| {
            let n = w["n"].as_i64().unwrap();
            w["cli"] = Value::String(format!(
                "nsgp --gas {},{},{},{} --n {n} lengths",
                p.a(),
                p.h(),
                p.d(),
                p.x()
            ));
            w
        });
        Ok((Quantity::Int(top + 1), Quantity::Int(agree), witness))
    }

    fn bounds(&self, s: &NumericalMonoid) -> Result<(Quantity, Quantity, Option<Value>)> {
        let p = &self.params;
        let formula = gas::gas_bounds(p)?;
        let c = self.catenary()?;
        let t = self.tame()?;
        let b = Ratio::new(s.frobenius()? + s.largest_generator(), s.multiplicity()) + 1;
        let t_ratio = Ratio::from_integer(t);
        let chain = c <= t && t_ratio <= b;
        let floor_applies = !gas::a_is_one_mod_x(p) && (p.x() - 1) * p.d() < p.a();
        let floor_ok = !floor_applies || b.floor() == t_ratio;
        let expected = Quantity::Tuple(vec![
            Quantity::Ratio(formula.b_minus_t),
            Quantity::Int(formula.t_minus_c),
            Quantity::Bool(true),
            Quantity::Bool(true),
        ]);
        let observed = Quantity::Tuple(vec![
            Quantity::Ratio(b - t_ratio),
            Quantity::Int(t - c),
            Quantity::Bool(chain),
            Quantity::Bool(floor_ok),
        ]);
        let w = json!({
            "B": b.to_string(),
            "B_formula": formula.b.to_string(),
            "c": c,
            "t": t,
            "floor_check_applies": floor_applies,
        });
        Ok((expected, observed, Some(w)))
    }

    fn h1(&self) -> Result<(Quantity, Quantity, Option<Value>)> {
        let companion = self.params.with_h(1)?;
        let piecewise = gas::gas_h1_check(&companion)?;
        let closed_c = gas::gas_catenary(&companion)?;
        let closed_t = gas::gas_tame(&companion)?;
        let (c, t) = if self.params.h() == 1 {
            (self.catenary()?, self.tame()?)
        } else {
            let s = gas::to_monoid(&companion)?;
            (chains::catenary_degree(&s)?, chains::tame_degree(&s)?)
        };
        let w = json!({
            "h1_tuple": [companion.a(), 1, companion.d(), companion.x()],
            "closed_form": [closed_c, closed_t],
        });
        let formula = Quantity::Tuple(vec![Quantity::Int(piecewise.c), Quantity::Int(piecewise.t)]);
        let mut oracle = Quantity::Tuple(vec![Quantity::Int(c), Quantity::Int(t)]);
        // the general closed form must match as well
        if (closed_c, closed_t) != (piecewise.c, piecewise.t) {
            oracle = Quantity::Tuple(vec![
                Quantity::Int(closed_c),
                Quantity::Int(closed_t),
                Quantity::Int(c),
                Quantity::Int(t),
            ]);
        }
        Ok((formula, oracle, Some(w)))
    }
}

/// c(S) against min{k : k·n_1 ∈ ⟨n_2, …, n_p⟩} for an arbitrary monoid. The
/// row compares `expected` (c, k) with the computed pair; without an
/// expectation it records whether the inequality is strict.
pub fn inequality_report(
    s: &NumericalMonoid,
    expected: Option<(i64, i64)>,
) -> Result<InvariantReport> {
    let start = Instant::now();
    let c = chains::catenary_degree(s)?;
    let k = chains::min_multiple_in_rest(s)?;
    let oracle = Quantity::Tuple(vec![Quantity::Int(c), Quantity::Int(k)]);
    let formula = match expected {
        Some((ec, ek)) => Quantity::Tuple(vec![Quantity::Int(ec), Quantity::Int(ek)]),
        None => oracle.clone(),
    };
    let w = json!({
        "generators": s.generators(),
        "strict": k < c,
    });
    Ok(InvariantReport::new(
        None,
        "counterexample",
        formula,
        oracle,
        Some(w),
        start.elapsed(),
    ))
}

/// ⟨6,9,11⟩: three coprime integers, not a generalized arithmetic sequence,
/// with c(S) = 4 but the least multiple of 6 in ⟨9,11⟩ being 3·6.
pub fn counterexample_check() -> InvariantReport {
    let s = NumericalMonoid::new(&[6, 9, 11]).expect("valid generators");
    inequality_report(&s, Some((4, 3))).expect("proper monoid")
}

/// Renders a sweep in the requested format.
pub fn render(result: &SweepResult, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(result).expect("report serializes") + "\n"
        }
        OutputFormat::Csv => render_csv(&result.rows),
        OutputFormat::Text => render_text(result),
    }
}

fn cell(q: &Option<Quantity>) -> String {
    q.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn render_csv(rows: &[InvariantReport]) -> String {
    let mut w = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::NonNumeric)
        .from_writer(Vec::new());
    w.write_record([
        "a",
        "h",
        "d",
        "x",
        "check",
        "formula",
        "oracle",
        "equal",
        "witness",
        "elapsed_ms",
    ])
    .expect("in-memory write");
    for r in rows {
        let opt = |v: Option<i64>| v.map(|v| v.to_string()).unwrap_or_default();
        w.write_record([
            opt(r.a),
            opt(r.h),
            opt(r.d),
            opt(r.x),
            r.check.clone(),
            cell(&r.formula),
            cell(&r.oracle),
            r.equal.to_string(),
            r.witness
                .as_ref()
                .map(|v| v.to_string())
                .unwrap_or_default(),
            r.elapsed_ms.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn render_text(result: &SweepResult) -> String {
    let mut out = String::new();
    for r in &result.rows {
        let tag = match r.status() {
            RowStatus::Pass => "PASS",
            RowStatus::Fail => "FAIL",
            RowStatus::Timeout => "TIMEOUT",
        };
        let tuple = match (r.a, r.h, r.d, r.x) {
            (Some(a), Some(h), Some(d), Some(x)) => format!("({a},{h},{d},{x})"),
            _ => "-".to_string(),
        };
        out.push_str(&format!(
            "{tag:<7} {tuple:<14} {:<12} formula={} oracle={} [{} ms]",
            r.check,
            cell(&r.formula),
            cell(&r.oracle),
            r.elapsed_ms
        ));
        if !r.equal {
            if let Some(w) = &r.witness {
                out.push_str(&format!(" witness={w}"));
            }
        }
        out.push('\n');
    }
    let s = &result.summary;
    out.push_str(&format!(
        "tuples={} skipped={} rows={} passed={} failed={} timeouts={}\n",
        s.tuples, s.skipped, s.rows, s.passed, s.failed, s.timeouts
    ));
    out
}
