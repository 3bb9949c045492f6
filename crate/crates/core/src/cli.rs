//! Problem files, JSON reports and the seeded random harness.
//!
//! A problem file is line oriented; `#` starts a comment:
//!
//! ```text
//! field 0                      # 0 for the rationals, otherwise a prime
//! vars x1 x2
//! objective x1
//! constraint x1^2 + x2^2 - 1   # one line per constraint
//! order degrevlex              # optional: degrevlex, grlex or lex
//! truncate 10                  # optional strand truncation degree
//! field-confirm                # optional: repeat over Q
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::{is_prime, Field, FieldSpec, PrimeField, Rationals};
use crate::complexes::{self, HilbertCheck};
use crate::critical::{self, ConstrainedSystem, HypothesisReport};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::parse::parse_polynomial_at;
use crate::poly::{MonomialOrder, Polynomial, Ring};
use crate::series::json_int;

/// Largest `p^n` for which the harness runs the brute-force point oracle.
pub const HARNESS_BRUTE_FORCE_LIMIT: u64 = 1_000_000;

/// Exit code for a mathematical disagreement between methods that must agree.
pub const EXIT_DISAGREEMENT: i32 = 3;

/// `x0` and `y1`..`y9` are used internally.
pub fn is_reserved(name: &str) -> bool {
    let b = name.as_bytes();
    name == "x0" || (b.len() == 2 && b[0] == b'y' && (b'1'..=b'9').contains(&b[1]))
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct Located {
    text: String,
    line: usize,
    column: usize,
}

/// A validated problem file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProblemSpec {
    pub characteristic: u64,
    pub vars: Vec<String>,
    pub objective: String,
    pub constraints: Vec<String>,
    pub order: Option<MonomialOrder>,
    pub truncation: Option<i64>,
    pub field_confirm: bool,
    /// `d_1..d_r` then `deg f`, over the declared field.
    pub degrees: Vec<u32>,
    #[serde(skip)]
    sources: Vec<Located>,
}

impl ProblemSpec {
    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn r(&self) -> usize {
        self.constraints.len()
    }

    /// Builds the system over `field`; `order` overrides the file's order.
    pub fn system<F: Field>(&self, field: F, order: Option<MonomialOrder>) -> Result<ConstrainedSystem<F>> {
        let order = order.or(self.order).unwrap_or_default();
        let ring = Ring::new(field, self.vars.iter().cloned(), order)?;
        let polys: Vec<Polynomial<F>> = self
            .sources
            .iter()
            .map(|s| parse_polynomial_at(&ring, &s.text, s.line, s.column))
            .collect::<Result<_>>()?;
        let (objective, constraints) = polys.split_first().expect("objective present");
        ConstrainedSystem::new(objective.clone(), constraints.to_vec())
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let mut characteristic = None;
    let mut vars: Option<Vec<String>> = None;
    let mut objective: Option<Located> = None;
    let mut constraints = Vec::new();
    let mut order = None;
    let mut truncation = None;
    let mut field_confirm = false;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let Some(start) = content.find(|c: char| !c.is_whitespace()) else {
            continue;
        };
        let kw_end = content[start..]
            .find(char::is_whitespace)
            .map_or(content.len(), |i| start + i);
        let keyword = &content[start..kw_end];
        let kw_col = content[..start].chars().count() + 1;
        let rest_start = content[kw_end..]
            .find(|c: char| !c.is_whitespace())
            .map_or(content.len(), |i| kw_end + i);
        let rest = content[rest_start..].trim_end();
        let rest_col = content[..rest_start].chars().count() + 1;
        let once = |seen: bool| {
            if seen {
                Err(parse_error(line, kw_col, format!("duplicate `{keyword}` line")))
            } else {
                Ok(())
            }
        };
        let need_rest = || {
            if rest.is_empty() {
                Err(parse_error(line, rest_col, format!("`{keyword}` needs a value")))
            } else {
                Ok(())
            }
        };
        match keyword {
            "field" => {
                once(characteristic.is_some())?;
                need_rest()?;
                let c: u64 = rest
                    .parse()
                    .map_err(|_| parse_error(line, rest_col, format!("invalid characteristic `{rest}`")))?;
                FieldSpec::new(c).map_err(|_| {
                    parse_error(line, rest_col, format!("characteristic {c} is neither 0 nor a prime below 2^61"))
                })?;
                characteristic = Some(c);
            }
            "vars" => {
                once(vars.is_some())?;
                need_rest()?;
                let mut names: Vec<String> = Vec::new();
                let mut offset = rest_start;
                for name in rest.split_whitespace() {
                    let at = offset + content[offset..].find(name).expect("token from this line");
                    let col = content[..at].chars().count() + 1;
                    offset = at + name.len();
                    if !is_identifier(name) {
                        return Err(parse_error(line, col, format!("`{name}` is not a variable name")));
                    }
                    if is_reserved(name) {
                        return Err(Error::ReservedVariable(name.to_string()));
                    }
                    if names.iter().any(|n| n == name) {
                        return Err(parse_error(line, col, format!("duplicate variable `{name}`")));
                    }
                    names.push(name.to_string());
                }
                vars = Some(names);
            }
            "objective" => {
                once(objective.is_some())?;
                need_rest()?;
                objective = Some(Located {
                    text: rest.to_string(),
                    line,
                    column: rest_col,
                });
            }
            "constraint" => {
                need_rest()?;
                constraints.push(Located {
                    text: rest.to_string(),
                    line,
                    column: rest_col,
                });
            }
            "order" => {
                once(order.is_some())?;
                need_rest()?;
                order = Some(rest.parse::<MonomialOrder>().map_err(|e| parse_error(line, rest_col, e))?);
            }
            "truncate" => {
                once(truncation.is_some())?;
                need_rest()?;
                let t: i64 = rest
                    .parse()
                    .ok()
                    .filter(|&t: &i64| t >= 0)
                    .ok_or_else(|| parse_error(line, rest_col, format!("invalid truncation degree `{rest}`")))?;
                truncation = Some(t);
            }
            "field-confirm" => {
                once(field_confirm)?;
                if !rest.is_empty() {
                    return Err(parse_error(line, rest_col, "`field-confirm` takes no value"));
                }
                field_confirm = true;
            }
            other => return Err(parse_error(line, kw_col, format!("unknown keyword `{other}`"))),
        }
    }

    let eof = last_line + 1;
    let characteristic = characteristic.ok_or_else(|| parse_error(eof, 1, "missing `field` line"))?;
    let vars = vars.ok_or_else(|| parse_error(eof, 1, "missing `vars` line"))?;
    let objective = objective.ok_or_else(|| parse_error(eof, 1, "missing `objective` line"))?;
    if constraints.is_empty() {
        return Err(parse_error(eof, 1, "at least one `constraint` line is required"));
    }
    if constraints.len() >= vars.len() {
        return Err(Error::TooManyConstraints {
            constraints: constraints.len(),
            variables: vars.len(),
        });
    }
    let mut sources = vec![objective];
    sources.extend(constraints);
    let mut spec = ProblemSpec {
        characteristic,
        vars,
        objective: sources[0].text.clone(),
        constraints: sources[1..].iter().map(|s| s.text.clone()).collect(),
        order,
        truncation,
        field_confirm,
        degrees: Vec::new(),
        sources,
    };
    spec.degrees = if characteristic == 0 {
        validated_degrees(&spec, Rationals)?
    } else {
        validated_degrees(&spec, PrimeField::new(characteristic)?)?
    };
    Ok(spec)
}

fn validated_degrees<F: Field>(spec: &ProblemSpec, field: F) -> Result<Vec<u32>> {
    Ok(spec.system(field, None)?.degrees().to_vec())
}

/// Which of the three computations to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    All,
    Grobner,
    Jacobian,
    Formula,
}

impl Method {
    fn grobner(self) -> bool {
        matches!(self, Method::All | Method::Grobner)
    }

    fn jacobian(self) -> bool {
        matches!(self, Method::All | Method::Jacobian)
    }

    fn formula(self) -> bool {
        matches!(self, Method::All | Method::Formula)
    }
}

/// Command-line overrides shared by all subcommands.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub order: Option<MonomialOrder>,
    pub field_confirm: bool,
    /// Adds wall-clock timings, which makes the report nondeterministic.
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    ComputedWithWarnings,
    Disagreement,
}

fn opt_unsigned<S: Serializer>(x: &Option<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => json_int::unsigned(v, s),
        None => s.serialize_none(),
    }
}

/// A computed dimension or the reason it is missing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_unsigned")]
    pub value: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Outcome {
    fn from_result(r: Result<u64>) -> Result<Self> {
        match r {
            Ok(v) => Ok(Outcome {
                value: Some(v),
                error: None,
            }),
            Err(e @ Error::ResourceLimit(_)) => Err(e),
            Err(e) => Ok(Outcome {
                value: None,
                error: Some(e.to_string()),
            }),
        }
    }
}

/// Pairwise comparisons, present only when both sides were computed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Agreement {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grobner_jacobian: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grobner_formula: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobian_formula: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemEcho {
    pub field: u64,
    pub order: MonomialOrder,
    pub vars: Vec<String>,
    pub objective: String,
    pub constraints: Vec<String>,
    pub n: usize,
    pub r: usize,
    pub degrees: Vec<u32>,
}

impl SystemEcho {
    fn of<F: Field>(sys: &ConstrainedSystem<F>) -> Self {
        SystemEcho {
            field: sys.field().characteristic(),
            order: sys.ring().order(),
            vars: sys.ring().vars().to_vec(),
            objective: sys.objective().to_string(),
            constraints: sys.constraints().iter().map(|c| c.to_string()).collect(),
            n: sys.n(),
            r: sys.r(),
            degrees: sys.degrees().to_vec(),
        }
    }
}

/// The same computations repeated over the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldConfirmation {
    pub field: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub milnor_sum: Option<Outcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lagrange_jacobian_dimension: Option<Outcome>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "json_int::option")]
    pub predicted_milnor_sum: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub status: Status,
    pub system: SystemEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypotheses: Option<HypothesisReport>,
    /// The affine constraint variety is smooth of codimension r (or empty).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub affine_smooth: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub milnor_sum: Option<Outcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lagrange_jacobian_dimension: Option<Outcome>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "json_int::option")]
    pub predicted_milnor_sum: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula_applicable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<Agreement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complexes: Option<ComplexSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_confirmation: Option<FieldConfirmation>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl Report {
    fn new<F: Field>(command: &'static str, sys: &ConstrainedSystem<F>) -> Self {
        Report {
            command,
            status: Status::Ok,
            system: SystemEcho::of(sys),
            hypotheses: None,
            affine_smooth: None,
            milnor_sum: None,
            lagrange_jacobian_dimension: None,
            predicted_milnor_sum: None,
            formula_applicable: None,
            agreement: None,
            complexes: None,
            field_confirmation: None,
            warnings: Vec::new(),
            timings_ms: None,
        }
    }

    fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
        if self.status == Status::Ok {
            self.status = Status::ComputedWithWarnings;
        }
    }

    fn disagree(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
        self.status = Status::Disagreement;
    }

    pub fn exit_code(&self) -> i32 {
        if self.status == Status::Disagreement {
            EXIT_DISAGREEMENT
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Clock {
    enabled: bool,
    stages: BTreeMap<String, u128>,
}

impl Clock {
    fn new(enabled: bool) -> Self {
        Clock {
            enabled,
            stages: BTreeMap::new(),
        }
    }

    fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            self.stages.insert(stage.to_string(), start.elapsed().as_millis());
        }
        out
    }

    fn finish(self) -> Option<BTreeMap<String, u128>> {
        self.enabled.then_some(self.stages)
    }
}

macro_rules! dispatch {
    ($spec:expr, $f:ident ( $($arg:expr),* )) => {
        if $spec.characteristic == 0 {
            $f(Rationals $(, $arg)*)
        } else {
            $f(PrimeField::new($spec.characteristic)? $(, $arg)*)
        }
    };
}

fn hypothesis_warnings(report: &mut Report, hyp: &HypothesisReport) {
    if !hyp.all_pass {
        report.warn(format!(
            "hypotheses failed: {}; generating-function count not guaranteed",
            hyp.failed().join(", ")
        ));
    }
}

/// Hypothesis report only.
pub fn run_check(spec: &ProblemSpec, opts: &RunOptions) -> Result<Report> {
    fn go<F: Field>(field: F, spec: &ProblemSpec, opts: &RunOptions) -> Result<Report> {
        let sys = spec.system(field, opts.order)?;
        let mut clock = Clock::new(opts.timings);
        let mut report = Report::new("check", &sys);
        let hyp = clock.time("hypotheses", || critical::check_hypotheses(&sys))?;
        hypothesis_warnings(&mut report, &hyp);
        report.hypotheses = Some(hyp);
        report.affine_smooth = Some(clock.time("affine_smooth", || critical::affine_smooth_ci(&sys))?);
        report.timings_ms = clock.finish();
        Ok(report)
    }
    dispatch!(spec, go(spec, opts))
}

struct MilnorValues {
    grobner: Option<Outcome>,
    jacobian: Option<Outcome>,
    formula: Option<BigInt>,
}

fn milnor_values<F: Field>(sys: &ConstrainedSystem<F>, method: Method, clock: &mut Clock) -> Result<MilnorValues> {
    let grobner = if method.grobner() {
        Some(Outcome::from_result(clock.time("grobner", || critical::milnor_sum(sys)))?)
    } else {
        None
    };
    let jacobian = if method.jacobian() {
        Some(Outcome::from_result(clock.time("jacobian", || critical::lagrange_jacobian_dimension(sys)))?)
    } else {
        None
    };
    let formula = method
        .formula()
        .then(|| critical::predicted_milnor_sum(sys.n(), sys.degrees()));
    Ok(MilnorValues {
        grobner,
        jacobian,
        formula,
    })
}

fn value(o: &Option<Outcome>) -> Option<u64> {
    o.as_ref().and_then(|o| o.value)
}

/// Runs the requested methods and compares them.
pub fn run_milnor(spec: &ProblemSpec, method: Method, opts: &RunOptions) -> Result<Report> {
    fn go<F: Field>(field: F, spec: &ProblemSpec, method: Method, opts: &RunOptions) -> Result<Report> {
        let sys = spec.system(field, opts.order)?;
        let mut clock = Clock::new(opts.timings);
        let mut report = Report::new("milnor", &sys);
        let hyp = clock.time("hypotheses", || critical::check_hypotheses(&sys))?;
        hypothesis_warnings(&mut report, &hyp);
        let vals = milnor_values(&sys, method, &mut clock)?;
        for o in [&vals.grobner, &vals.jacobian].into_iter().flatten() {
            if let Some(e) = &o.error {
                report.warn(e.clone());
            }
        }
        let (g, j) = (value(&vals.grobner), value(&vals.jacobian));
        let f = vals.formula.clone();
        let eq = |a: u64, b: &BigInt| BigInt::from(a) == *b;
        let agreement = Agreement {
            agree: match (g, j, &f) {
                (Some(g), Some(j), Some(f)) => Some(g == j && eq(g, f)),
                _ => None,
            },
            grobner_jacobian: g.zip(j).map(|(g, j)| g == j),
            grobner_formula: g.zip(f.as_ref()).map(|(g, f)| eq(g, f)),
            jacobian_formula: j.zip(f.as_ref()).map(|(j, f)| eq(j, f)),
        };
        if agreement.grobner_jacobian == Some(false) {
            let smooth = critical::affine_smooth_ci(&sys)?;
            report.affine_smooth = Some(smooth);
            if smooth {
                report.disagree("minor-ideal and Lagrange dimensions differ on a smooth constraint variety");
            } else {
                report.warn("minor-ideal and Lagrange dimensions differ; the constraint variety is singular");
            }
        }
        let formula_mismatch = agreement.grobner_formula == Some(false) || agreement.jacobian_formula == Some(false);
        if formula_mismatch {
            if hyp.all_pass {
                report.disagree("generating-function count differs although all hypotheses pass");
            } else {
                report.warn("generating-function count differs; formula inapplicable");
            }
        }
        report.formula_applicable = Some(hyp.all_pass);
        report.hypotheses = Some(hyp);
        report.milnor_sum = vals.grobner;
        report.lagrange_jacobian_dimension = vals.jacobian;
        report.predicted_milnor_sum = vals.formula;
        if agreement != Agreement::default() {
            report.agreement = Some(agreement);
        }
        if opts.field_confirm || spec.field_confirm {
            let conf = field_confirmation(spec, &report, method, opts, &mut clock)?;
            if conf.matches == Some(false) {
                report.warn("values over the rationals differ from the declared field");
            }
            report.field_confirmation = Some(conf);
        }
        report.timings_ms = clock.finish();
        Ok(report)
    }
    dispatch!(spec, go(spec, method, opts))
}

fn field_confirmation(
    spec: &ProblemSpec,
    report: &Report,
    method: Method,
    opts: &RunOptions,
    clock: &mut Clock,
) -> Result<FieldConfirmation> {
    if spec.characteristic == 0 {
        return Ok(FieldConfirmation {
            field: 0,
            milnor_sum: None,
            lagrange_jacobian_dimension: None,
            predicted_milnor_sum: None,
            matches: None,
            note: Some("system is already over the rationals".into()),
        });
    }
    let sys = spec.system(Rationals, opts.order)?;
    let vals = milnor_values(&sys, method, clock)?;
    let same = |a: &Option<Outcome>, b: &Option<Outcome>| value(a) == value(b);
    let matches = same(&vals.grobner, &report.milnor_sum)
        && same(&vals.jacobian, &report.lagrange_jacobian_dimension)
        && vals.formula == report.predicted_milnor_sum;
    Ok(FieldConfirmation {
        field: 0,
        milnor_sum: vals.grobner,
        lagrange_jacobian_dimension: vals.jacobian,
        predicted_milnor_sum: vals.formula,
        matches: Some(matches),
        note: None,
    })
}

/// Ranks and structural checks of the complexes of one matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexFacts {
    pub eagon_northcott_ranks: Vec<usize>,
    pub koszul_ranks: Vec<usize>,
    pub total_ranks: Vec<usize>,
    /// `d d = 0` for all three complexes, as polynomial matrices.
    pub square_zero: bool,
    /// Every differential entry is homogeneous of the forced degree.
    pub graded: bool,
    /// The `H_0` presentation ideal of the Eagon-Northcott complex is the
    /// ideal of maximal minors.
    pub eagon_northcott_h0_is_minor_ideal: bool,
    /// The `H_0` presentation ideal of the total complex is constraints
    /// plus maximal minors.
    pub total_h0_ideal_matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrandCheck {
    /// No homology in positive homological index for degrees `0..=truncation`.
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_nonzero: Option<HomologyWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyWitness {
    pub degree: i64,
    pub index: usize,
    pub dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexSection {
    pub truncation: i64,
    /// Eagon-Northcott ranks equal `binom(n, p+r) binom(p+r-1, r)`.
    pub eagon_northcott_rank_formula: bool,
    pub affine: ComplexFacts,
    pub graded: ComplexFacts,
    /// Koszul complex on the constraint leading forms.
    pub koszul_regular: StrandCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eagon_northcott_exact: Option<StrandCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_exact: Option<StrandCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<HilbertCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    /// G(t) and H(t) are not unique; only G(1) and the series identity
    /// are checked.
    pub note: &'static str,
    pub passed: bool,
}

fn strand_check<F: Field>(c: &complexes::GradedFreeComplex<F>, truncation: i64) -> Result<StrandCheck> {
    let table = complexes::strand_homology_table(c, truncation)?;
    let first = complexes::first_higher_homology(&table).map(|(degree, index)| HomologyWitness {
        degree,
        index,
        dimension: table[degree as usize][index],
    });
    Ok(StrandCheck {
        exact: first.is_none(),
        first_nonzero: first,
    })
}

fn complex_facts<F: Field>(
    cx: &complexes::SystemComplexes<F>,
    constraints: &[Polynomial<F>],
    minors: Vec<Polynomial<F>>,
) -> Result<ComplexFacts> {
    let ring = cx.total.ring();
    let minor_ideal = Ideal::new(ring, minors.clone())?;
    let critical = Ideal::new(ring, constraints.iter().cloned().chain(minors))?;
    let all = [&cx.eagon_northcott, &cx.koszul, &cx.total];
    let mut square_zero = true;
    for c in all {
        square_zero &= c.is_complex()?;
    }
    Ok(ComplexFacts {
        eagon_northcott_ranks: cx.eagon_northcott.ranks(),
        koszul_ranks: cx.koszul.ranks(),
        total_ranks: cx.total.ranks(),
        square_zero,
        graded: all.iter().all(|c| c.is_graded()),
        eagon_northcott_h0_is_minor_ideal: cx.eagon_northcott.h0_presentation_ideal()?.same_ideal(&minor_ideal)?,
        total_h0_ideal_matches: cx.total.h0_presentation_ideal()?.same_ideal(&critical)?,
    })
}

/// Builds the Eagon-Northcott, Koszul and total complexes for the affine
/// and leading-form matrices and evaluates their invariants.
pub fn run_complex_verification(spec: &ProblemSpec, truncation: Option<i64>, opts: &RunOptions) -> Result<Report> {
    fn go<F: Field>(field: F, spec: &ProblemSpec, truncation: Option<i64>, opts: &RunOptions) -> Result<Report> {
        let sys = spec.system(field, opts.order)?;
        let truncation = truncation
            .or(spec.truncation)
            .unwrap_or_else(|| complexes::default_truncation(sys.degrees()));
        let mut clock = Clock::new(opts.timings);
        let mut report = Report::new("en", &sys);
        let hyp = clock.time("hypotheses", || critical::check_hypotheses(&sys))?;
        let r = sys.r();

        let affine = clock.time("affine_complexes", || -> Result<ComplexFacts> {
            let cx = complexes::system_complexes(&sys, false)?;
            let minors = critical::augmented_jacobian(&sys).minors(r + 1)?;
            complex_facts(&cx, sys.constraints(), minors)
        })?;
        let graded_cx = complexes::system_complexes(&sys, true)?;
        let graded = clock.time("graded_complexes", || {
            let minors = complexes::leading_form_matrix(&sys).minors(r + 1)?;
            complex_facts(&graded_cx, &sys.leading_forms()[..r], minors)
        })?;
        let rank_formula = (0..=sys.n() - r)
            .all(|p| affine.eagon_northcott_ranks.get(p).map(|&x| x as u128) == Some(complexes::eagon_northcott_rank(sys.n(), r, p)));
        let koszul_regular = clock.time("koszul_strands", || strand_check(&graded_cx.koszul, truncation))?;

        let structural = rank_formula && affine.square_zero && graded.square_zero && graded.graded;
        let mut section = ComplexSection {
            truncation,
            eagon_northcott_rank_formula: rank_formula,
            affine,
            graded,
            koszul_regular,
            eagon_northcott_exact: None,
            total_exact: None,
            hilbert: None,
            skipped: None,
            note: "G(t) and H(t) are existential; only G(1) and the per-degree series identity are checked",
            passed: false,
        };
        if !structural {
            report.disagree("complex construction invariant failed");
        }
        if hyp.all_pass {
            let en = clock.time("eagon_northcott_strands", || strand_check(&graded_cx.eagon_northcott, truncation))?;
            let total = clock.time("total_strands", || strand_check(&graded_cx.total, truncation))?;
            let hilbert = clock.time("hilbert", || complexes::h0_hilbert_check(&sys, truncation))?;
            let ok = section.koszul_regular.exact
                && en.exact
                && total.exact
                && hilbert.passed
                && section.affine.total_h0_ideal_matches
                && section.graded.total_h0_ideal_matches;
            if !ok {
                report.disagree("a graded identity failed although all hypotheses pass");
            }
            section.passed = structural && ok;
            section.eagon_northcott_exact = Some(en);
            section.total_exact = Some(total);
            section.hilbert = Some(hilbert);
        } else {
            let reason = format!("hypotheses failed: {}; exactness and Hilbert checks skipped", hyp.failed().join(", "));
            report.warn(reason.clone());
            if !section.koszul_regular.exact {
                report.warn("constraint leading forms are not a regular sequence");
            }
            section.skipped = Some(reason);
            section.passed = false;
        }
        report.hypotheses = Some(hyp);
        report.complexes = Some(section);
        report.timings_ms = clock.finish();
        Ok(report)
    }
    dispatch!(spec, go(spec, truncation, opts))
}

/// Text serialization of all six complexes.
pub fn complex_dump(spec: &ProblemSpec, opts: &RunOptions) -> Result<String> {
    fn go<F: Field>(field: F, spec: &ProblemSpec, opts: &RunOptions) -> Result<String> {
        let sys = spec.system(field, opts.order)?;
        let mut out = String::new();
        for (graded, tag) in [(false, "affine"), (true, "graded")] {
            let cx = complexes::system_complexes(&sys, graded)?;
            for (name, c) in [
                ("eagon-northcott", &cx.eagon_northcott),
                ("koszul", &cx.koszul),
                ("total", &cx.total),
            ] {
                out.push_str(&format!("== {tag} {name}\n"));
                out.push_str(&c.dump());
            }
        }
        Ok(out)
    }
    dispatch!(spec, go(spec, opts))
}

/// The plain augmented Jacobian and its maximal minors, for debugging.
pub fn jacobian_dump(spec: &ProblemSpec, opts: &RunOptions) -> Result<String> {
    fn go<F: Field>(field: F, spec: &ProblemSpec, opts: &RunOptions) -> Result<String> {
        let sys = spec.system(field, opts.order)?;
        let m = critical::augmented_jacobian(&sys);
        let mut out = m.to_string();
        for minor in m.minors(sys.r() + 1)? {
            out.push_str(&format!("minor {minor}\n"));
        }
        Ok(out)
    }
    dispatch!(spec, go(spec, opts))
}

/// Parameters of the random harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HarnessConfig {
    pub n_max: usize,
    pub r_max: usize,
    pub d_max: u32,
    pub characteristic: u64,
    pub count: usize,
    pub seed: u64,
}

/// One generated system and what happened to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceRecord {
    pub index: usize,
    pub n: usize,
    pub r: usize,
    pub degrees: Vec<u32>,
    pub objective: String,
    pub constraints: Vec<String>,
    pub hypotheses_passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_unsigned")]
    pub milnor_sum: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_unsigned")]
    pub lagrange_jacobian_dimension: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "json_int::option")]
    pub predicted_milnor_sum: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    /// `V(I + J)` from the Gröbner basis equals the brute-force point set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl InstanceRecord {
    pub fn is_disagreement(&self) -> bool {
        self.agree == Some(false) || self.brute_force_match == Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HarnessSummary {
    pub config: HarnessConfig,
    pub generated: usize,
    pub hypotheses_passed: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub errors: usize,
    pub brute_force_checked: usize,
    pub brute_force_agreements: usize,
    pub disagreement_dumps: Vec<InstanceRecord>,
    pub error_dumps: Vec<InstanceRecord>,
    #[serde(skip)]
    pub instances: Vec<InstanceRecord>,
}

impl HarnessSummary {
    pub fn exit_code(&self) -> i32 {
        if self.disagreements > 0 {
            EXIT_DISAGREEMENT
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

/// Dense polynomial of exact degree `d` with uniform coefficients.
fn random_polynomial<F: Field>(ring: &Arc<Ring<F>>, rng: &mut ChaCha8Rng, d: u32) -> Polynomial<F> {
    let field = ring.field();
    let coeff = |rng: &mut ChaCha8Rng| match field.size() {
        Some(p) => field.from_u64(rng.gen_range(0..p)),
        None => field.from_i64(rng.gen_range(-5..=5)),
    };
    loop {
        let mut terms = Vec::new();
        for k in 0..=d {
            for m in ring.monomials_of_degree(k) {
                terms.push((m, coeff(rng)));
            }
        }
        let p = Polynomial::from_terms(ring, terms);
        if p.total_degree().ok() == Some(d) {
            return p;
        }
    }
}

fn random_instance<F: Field>(field: &F, cfg: &HarnessConfig, order: MonomialOrder, index: usize) -> Result<ConstrainedSystem<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let n = rng.gen_range(2..=cfg.n_max);
    let r = rng.gen_range(1..=cfg.r_max.min(n - 1));
    let ring = Ring::new(field.clone(), (1..=n).map(|i| format!("x{i}")), order)?;
    let constraints: Vec<Polynomial<F>> = (0..r)
        .map(|_| {
            let d = rng.gen_range(1..=cfg.d_max);
            random_polynomial(&ring, &mut rng, d)
        })
        .collect();
    let d = rng.gen_range(1..=cfg.d_max);
    let objective = random_polynomial(&ring, &mut rng, d);
    ConstrainedSystem::new(objective, constraints)
}

fn run_instance<F: Field>(field: &F, cfg: &HarnessConfig, order: MonomialOrder, index: usize) -> InstanceRecord
where
    F::Elem: Ord,
{
    let sys = random_instance(field, cfg, order, index).expect("bounds validated");
    let mut rec = InstanceRecord {
        index,
        n: sys.n(),
        r: sys.r(),
        degrees: sys.degrees().to_vec(),
        objective: sys.objective().to_string(),
        constraints: sys.constraints().iter().map(|c| c.to_string()).collect(),
        hypotheses_passed: false,
        milnor_sum: None,
        lagrange_jacobian_dimension: None,
        predicted_milnor_sum: None,
        agree: None,
        brute_force_match: None,
        brute_force_points: None,
        error: None,
    };
    let outcome = (|| -> Result<()> {
        rec.hypotheses_passed = critical::check_hypotheses(&sys)?.all_pass;
        if !rec.hypotheses_passed {
            return Ok(());
        }
        let predicted = critical::predicted_milnor_sum(sys.n(), sys.degrees());
        rec.predicted_milnor_sum = Some(predicted.clone());
        let g = critical::milnor_sum(&sys)?;
        rec.milnor_sum = Some(g);
        let j = critical::lagrange_jacobian_dimension(&sys)?;
        rec.lagrange_jacobian_dimension = Some(j);
        rec.agree = Some(g == j && BigInt::from(g) == predicted);
        let small = field
            .size()
            .and_then(|p| p.checked_pow(sys.n() as u32))
            .is_some_and(|total| total <= HARNESS_BRUTE_FORCE_LIMIT);
        if small {
            let from_basis = critical::variety_points(&critical::critical_ideal(&sys)?)?;
            let brute = critical::brute_force_critical_points(&sys)?;
            rec.brute_force_points = Some(brute.len());
            rec.brute_force_match = Some(from_basis == brute);
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        match e {
            // passing hypotheses force finitely many critical points
            Error::NonIsolatedCritical => rec.agree = Some(false),
            _ => {}
        }
        rec.error = Some(e.to_string());
    }
    rec
}

/// Generates `count` random systems, keeps those passing the hypotheses
/// and compares the three counts (plus the point oracle when `p^n` is
/// small). Deterministic for a fixed configuration.
pub fn run_random_harness(cfg: &HarnessConfig, opts: &RunOptions) -> Result<HarnessSummary> {
    if cfg.count == 0 {
        return Err(Error::InvalidSystem("count must be at least 1".into()));
    }
    if cfg.n_max < 2 || cfg.r_max == 0 || cfg.d_max == 0 {
        return Err(Error::InvalidSystem("bounds need n >= 2, r >= 1, d >= 1".into()));
    }
    if cfg.n_max + cfg.r_max.min(cfg.n_max - 1) > crate::poly::MAX_VARS {
        return Err(Error::TooManyVariables(cfg.n_max + cfg.r_max));
    }
    if cfg.characteristic != 0 && (cfg.characteristic < 5 || !is_prime(cfg.characteristic)) {
        return Err(Error::InvalidSystem(format!(
            "harness characteristic must be 0 or a prime >= 5, got {}",
            cfg.characteristic
        )));
    }
    let order = opts.order.unwrap_or_default();
    let instances: Vec<InstanceRecord> = if cfg.characteristic == 0 {
        (0..cfg.count).into_par_iter().map(|i| run_instance(&Rationals, cfg, order, i)).collect()
    } else {
        let f = PrimeField::new(cfg.characteristic)?;
        (0..cfg.count).into_par_iter().map(|i| run_instance(&f, cfg, order, i)).collect()
    };
    let count = |pred: &dyn Fn(&InstanceRecord) -> bool| instances.iter().filter(|r| pred(r)).count();
    Ok(HarnessSummary {
        config: *cfg,
        generated: instances.len(),
        hypotheses_passed: count(&|r| r.hypotheses_passed),
        agreements: count(&|r| r.agree == Some(true) && r.brute_force_match != Some(false)),
        disagreements: count(&InstanceRecord::is_disagreement),
        errors: count(&|r| r.error.is_some() && !r.is_disagreement()),
        brute_force_checked: count(&|r| r.brute_force_match.is_some()),
        brute_force_agreements: count(&|r| r.brute_force_match == Some(true)),
        disagreement_dumps: instances.iter().filter(|r| r.is_disagreement()).cloned().collect(),
        error_dumps: instances
            .iter()
            .filter(|r| r.error.is_some() && !r.is_disagreement())
            .cloned()
            .collect(),
        instances,
    })
}
