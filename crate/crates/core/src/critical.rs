//! Critical points of a polynomial restricted to `f_1 = ... = f_r = 0`.
//!
//! The Milnor-number sum is computed three ways:
//!
//! * [`milnor_sum`]: `dim K[x]/(I + J)` where `J` is generated by the
//!   maximal minors of the augmented Jacobian (constraint gradients first,
//!   objective gradient last);
//! * [`lagrange_jacobian_dimension`]: the Jacobian ring of the Lagrange
//!   function `F = f + sum y_i f_i` in `K[x, y]`;
//! * [`predicted_milnor_sum`]: the coefficient of `t^{n-r}` in
//!   `d_1...d_r (1-t)^n / prod_{i=1}^{r+1} (1 - d_i t)`.
//!
//! The third agrees with the first two only under the hypotheses checked by
//! [`check_hypotheses`].

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg;
use crate::matrix::PolyMatrix;
use crate::poly::{Polynomial, Ring};
use crate::series;

/// Largest point count [`brute_force_critical_points`] will scan.
pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

/// An objective `f` and constraints `f_1, ..., f_r` in `K[x_1, ..., x_n]`.
#[derive(Debug, Clone)]
pub struct ConstrainedSystem<F: Field> {
    ring: Arc<Ring<F>>,
    objective: Polynomial<F>,
    constraints: Vec<Polynomial<F>>,
    degrees: Vec<u32>,
}

impl<F: Field> ConstrainedSystem<F> {
    /// Requires `1 <= r < n` and nonzero polynomials in one ring.
    pub fn new(objective: Polynomial<F>, constraints: Vec<Polynomial<F>>) -> Result<Self> {
        let ring = objective.ring().clone();
        let n = ring.nvars();
        let r = constraints.len();
        if r == 0 {
            return Err(Error::InvalidSystem("at least one constraint is required".into()));
        }
        if r >= n {
            return Err(Error::TooManyConstraints {
                constraints: r,
                variables: n,
            });
        }
        if constraints.iter().any(|c| **c.ring() != *ring) {
            return Err(Error::MixedRings);
        }
        if objective.is_zero() || constraints.iter().any(Polynomial::is_zero) {
            return Err(Error::InvalidSystem("objective and constraints must be nonzero".into()));
        }
        let mut degrees = constraints
            .iter()
            .map(Polynomial::total_degree)
            .collect::<Result<Vec<_>>>()?;
        degrees.push(objective.total_degree()?);
        Ok(ConstrainedSystem {
            ring,
            objective,
            constraints,
            degrees,
        })
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn n(&self) -> usize {
        self.ring.nvars()
    }

    pub fn r(&self) -> usize {
        self.constraints.len()
    }

    pub fn objective(&self) -> &Polynomial<F> {
        &self.objective
    }

    pub fn constraints(&self) -> &[Polynomial<F>] {
        &self.constraints
    }

    /// `[d_1, ..., d_r, d_{r+1}]` with `d_{r+1} = deg f`.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Leading forms of the constraints followed by that of the objective.
    pub fn leading_forms(&self) -> Vec<Polynomial<F>> {
        self.constraints
            .iter()
            .chain(std::iter::once(&self.objective))
            .map(|p| p.leading_form().expect("nonzero"))
            .collect()
    }

    /// Homogenized constraints in the ring with `x0` prepended.
    pub fn homogenized_constraints(&self) -> Result<Vec<Polynomial<F>>> {
        let target = self.ring.homogenized()?;
        self.constraints.iter().map(|c| c.homogenize_in(&target)).collect()
    }

    /// The system moved to another ring over the same variables.
    pub fn to_ring(&self, target: &Arc<Ring<F>>) -> Result<Self> {
        ConstrainedSystem::new(
            self.objective.to_ring(target)?,
            self.constraints.iter().map(|c| c.to_ring(target)).collect::<Result<_>>()?,
        )
    }

    /// `x -> images(x)`, applied to objective and constraints.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Self> {
        ConstrainedSystem::new(
            self.objective.compose(images)?,
            self.constraints.iter().map(|c| c.compose(images)).collect::<Result<_>>()?,
        )
    }
}

/// Rows are the gradients of `polys`, one column per variable.
pub fn jacobian_matrix<F: Field>(ring: &Arc<Ring<F>>, polys: &[Polynomial<F>]) -> Result<PolyMatrix<F>> {
    PolyMatrix::from_rows(ring, polys.iter().map(Polynomial::gradient).collect())
}

/// The `(r+1) x n` matrix of constraint gradients with the objective
/// gradient as the last row.
pub fn augmented_jacobian<F: Field>(sys: &ConstrainedSystem<F>) -> PolyMatrix<F> {
    let mut rows: Vec<Polynomial<F>> = sys.constraints.clone();
    rows.push(sys.objective.clone());
    jacobian_matrix(&sys.ring, &rows).expect("entries share the system ring")
}

/// All `k x k` minors of `m` in the fixed enumeration order.
pub fn minor_ideal<F: Field>(m: &PolyMatrix<F>, k: usize) -> Result<Vec<Polynomial<F>>> {
    m.minors(k)
}

/// `I + J`: the constraints and the maximal minors of the augmented Jacobian.
pub fn critical_ideal<F: Field>(sys: &ConstrainedSystem<F>) -> Result<Ideal<F>> {
    let minors = minor_ideal(&augmented_jacobian(sys), sys.r() + 1)?;
    Ideal::new(&sys.ring, sys.constraints.iter().cloned().chain(minors))
}

fn finite_dimension<F: Field>(ideal: &Ideal<F>) -> Result<u64> {
    match ideal.quotient_dimension() {
        Err(Error::InfiniteDimensional) => Err(Error::NonIsolatedCritical),
        other => other,
    }
}

/// `dim_K K[x]/(I + J)`; zero when there are no critical points.
pub fn milnor_sum<F: Field>(sys: &ConstrainedSystem<F>) -> Result<u64> {
    finite_dimension(&critical_ideal(sys)?)
}

/// Names for the multiplier variables that do not clash with `ring`.
fn multiplier_names<F: Field>(ring: &Ring<F>, r: usize) -> Vec<String> {
    (1..=r)
        .map(|i| {
            let mut name = format!("y{i}");
            while ring.var_index(&name).is_some() {
                name.insert(0, '_');
            }
            name
        })
        .collect()
}

/// The Jacobian ideal of `F = f + sum y_i f_i` in `K[x, y]`:
/// `(dF/dx_1, ..., dF/dx_n, f_1, ..., f_r)`.
pub fn lagrange_ideal<F: Field>(objective: &Polynomial<F>, constraints: &[Polynomial<F>]) -> Result<Ideal<F>> {
    let base = objective.ring();
    let n = base.nvars();
    let r = constraints.len();
    let ring = base.extended(multiplier_names(base, r))?;
    let embed: Vec<Option<usize>> = (0..n).map(Some).collect();
    let mut lagrangian = objective.embed(&ring, &embed)?;
    for (i, c) in constraints.iter().enumerate() {
        let y = Polynomial::var(&ring, n + i)?;
        lagrangian = &lagrangian + &(&y * &c.embed(&ring, &embed)?);
    }
    let gens: Vec<Polynomial<F>> = (0..n + r)
        .map(|j| lagrangian.partial_derivative(j))
        .collect::<Result<_>>()?;
    Ideal::new(&ring, gens)
}

/// `dim_K K[x, y] / Jac(f + sum y_i f_i)`.
pub fn lagrange_jacobian_dimension<F: Field>(sys: &ConstrainedSystem<F>) -> Result<u64> {
    finite_dimension(&lagrange_ideal(&sys.objective, &sys.constraints)?)
}

/// Coefficient of `t^{n-r}` in `d_1...d_r (1-t)^n / prod (1 - d_i t)`.
pub fn predicted_milnor_sum(n: usize, degrees: &[u32]) -> BigInt {
    series::predicted_milnor_sum(n as u32, degrees)
}

fn require_homogeneous<F: Field>(gens: &[Polynomial<F>]) -> Result<()> {
    if gens.iter().all(Polynomial::is_homogeneous) {
        Ok(())
    } else {
        Err(Error::NotHomogeneous)
    }
}

/// Whether a homogeneous ideal cuts the empty projective scheme, i.e. its
/// quotient is finite-dimensional.
pub fn proj_variety_empty<F: Field>(gens: &[Polynomial<F>]) -> Result<bool> {
    require_homogeneous(gens)?;
    let Some(first) = gens.first() else {
        return Err(Error::InvalidSystem("empty generator list".into()));
    };
    ideal_is_irrelevant(&Ideal::new(first.ring(), gens.iter().cloned())?)
}

fn ideal_is_irrelevant<F: Field>(ideal: &Ideal<F>) -> Result<bool> {
    match ideal.quotient_dimension() {
        Ok(_) => Ok(true),
        Err(Error::InfiniteDimensional) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Outcome of the smooth complete intersection test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothCiCertificate {
    pub passed: bool,
    /// Codimension equals the number of generators.
    pub complete_intersection: bool,
    /// Generators plus maximal Jacobian minors form an irrelevant ideal.
    pub smooth: bool,
    /// The generators alone already cut the empty projective scheme; the
    /// intersection then counts as vacuously smooth.
    pub empty: bool,
    /// Krull dimension of the affine cone, -1 for the unit ideal.
    pub cone_dimension: i64,
    /// Reduced basis of the ideal whose check failed.
    pub certificate: Option<Vec<String>>,
}

/// Whether homogeneous `g_1..g_k` cut a smooth complete intersection in
/// the projective space of their ring.
pub fn proj_smooth_ci<F: Field>(gens: &[Polynomial<F>]) -> Result<SmoothCiCertificate> {
    require_homogeneous(gens)?;
    let Some(first) = gens.first() else {
        return Err(Error::InvalidSystem("empty generator list".into()));
    };
    let ring = first.ring().clone();
    let k = gens.len();
    let nv = ring.nvars();
    let basis_strings =
        |i: &Ideal<F>| -> Result<Vec<String>> { Ok(i.groebner_basis()?.iter().map(|g| g.to_string()).collect()) };

    let ideal = Ideal::new(&ring, gens.iter().cloned())?;
    let has_zero = gens.iter().any(Polynomial::is_zero);
    let empty = !has_zero && ideal_is_irrelevant(&ideal)?;
    let cone_dimension = ideal.krull_dimension_or_empty()?;
    let complete_intersection = !has_zero && (empty || cone_dimension == nv as i64 - k as i64);
    if !complete_intersection {
        return Ok(SmoothCiCertificate {
            passed: false,
            complete_intersection,
            smooth: false,
            empty,
            cone_dimension,
            certificate: Some(basis_strings(&ideal)?),
        });
    }
    let minors = jacobian_matrix(&ring, gens)?.minors(k)?;
    let singular = Ideal::new(&ring, gens.iter().cloned().chain(minors))?;
    let smooth = ideal_is_irrelevant(&singular)?;
    Ok(SmoothCiCertificate {
        passed: smooth,
        complete_intersection,
        smooth,
        empty,
        cone_dimension,
        certificate: if smooth { None } else { Some(basis_strings(&singular)?) },
    })
}

/// One hypothesis with its evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub passed: bool,
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<SmoothCiCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// The four hypotheses under which the generating-function count is exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    /// Homogenized constraints: smooth complete intersection in `P^n`.
    pub h1: HypothesisCheck,
    /// Constraint leading forms: smooth complete intersection in `P^{n-1}`
    /// (transversality at infinity).
    pub h2: HypothesisCheck,
    /// Constraint and objective leading forms: smooth complete
    /// intersection in `P^{n-1}`.
    pub h3: HypothesisCheck,
    /// `char K` does not divide `deg f`.
    pub h4: HypothesisCheck,
    pub all_pass: bool,
    pub scope: &'static str,
}

impl HypothesisReport {
    pub fn failed(&self) -> Vec<&'static str> {
        [("H1", &self.h1), ("H2", &self.h2), ("H3", &self.h3), ("H4", &self.h4)]
            .into_iter()
            .filter(|(_, c)| !c.passed)
            .map(|(n, _)| n)
            .collect()
    }
}

fn smooth_check<F: Field>(gens: &[Polynomial<F>], description: &str) -> Result<HypothesisCheck> {
    let cert = proj_smooth_ci(gens)?;
    Ok(HypothesisCheck {
        passed: cert.passed,
        description: description.to_string(),
        note: (cert.empty && gens.len() < gens[0].ring().nvars())
            .then(|| "generators cut the empty scheme; vacuously smooth".to_string()),
        details: Some(cert),
    })
}

/// Runs all hypothesis checks; failures are data, only resource errors
/// propagate.
pub fn check_hypotheses<F: Field>(sys: &ConstrainedSystem<F>) -> Result<HypothesisReport> {
    let h1 = smooth_check(
        &sys.homogenized_constraints()?,
        "projective closure of the constraint variety is a smooth complete intersection in P^n",
    )?;
    let forms = sys.leading_forms();
    let r = sys.r();
    let h2 = smooth_check(
        &forms[..r],
        "constraint leading forms cut a smooth complete intersection in P^(n-1) (transversal to x0 = 0)",
    )?;
    let h3 = smooth_check(
        &forms,
        "constraint and objective leading forms cut a smooth complete intersection in P^(n-1)",
    )?;
    let p = sys.field().characteristic();
    let d = sys.degrees()[r];
    let h4 = HypothesisCheck {
        passed: p == 0 || d as u64 % p != 0,
        description: "characteristic does not divide the objective degree".to_string(),
        details: None,
        note: (p != 0).then(|| format!("char = {p}, deg f = {d}")),
    };
    let all_pass = h1.passed && h2.passed && h3.passed && h4.passed;
    Ok(HypothesisReport {
        h1,
        h2,
        h3,
        h4,
        all_pass,
        scope: "scheme-theoretic certificates only",
    })
}

/// `1 ∈ I + (r x r minors of the constraint Jacobian)`: the affine
/// constraint variety is a smooth complete intersection of codimension r
/// (or empty).
pub fn affine_smooth_ci<F: Field>(sys: &ConstrainedSystem<F>) -> Result<bool> {
    let minors = jacobian_matrix(&sys.ring, &sys.constraints)?.minors(sys.r())?;
    Ideal::new(&sys.ring, sys.constraints.iter().cloned().chain(minors))?.is_unit()
}

fn point_count<F: Field>(field: &F, n: usize) -> Result<u64> {
    let q = field.size().ok_or(Error::RationalFieldUnsupported)?;
    let size = (q as u128).pow(n as u32);
    if size > BRUTE_FORCE_LIMIT as u128 {
        return Err(Error::FieldTooLarge {
            size,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok(size as u64)
}

fn decode_point<F: Field>(field: &F, q: u64, n: usize, mut code: u64) -> Vec<F::Elem> {
    let mut pt = Vec::with_capacity(n);
    for _ in 0..n {
        pt.push(field.from_u64(code % q));
        code /= q;
    }
    pt
}

/// All rational points of a finite field where every constraint vanishes
/// and the augmented Jacobian has rank at most r, by exhaustive scan.
pub fn brute_force_critical_points<F: Field>(sys: &ConstrainedSystem<F>) -> Result<BTreeSet<Vec<F::Elem>>>
where
    F::Elem: Ord,
{
    let field = sys.field().clone();
    let n = sys.n();
    let total = point_count(&field, n)?;
    let q = field.size().expect("finite");
    let jac = augmented_jacobian(sys);
    let r = sys.r();
    let found: Vec<Vec<F::Elem>> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let pt = decode_point(&field, q, n, code);
            for c in &sys.constraints {
                if !field.is_zero(&c.evaluate(&pt).ok()?) {
                    return None;
                }
            }
            let m = jac.evaluate(&pt).ok()?;
            (linalg::rank(&field, m) <= r).then_some(pt)
        })
        .collect();
    Ok(found.into_iter().collect())
}

/// Rational points of `V(ideal)` over a finite field, found by scanning
/// for common zeros of the reduced Gröbner basis.
pub fn variety_points<F: Field>(ideal: &Ideal<F>) -> Result<BTreeSet<Vec<F::Elem>>>
where
    F::Elem: Ord,
{
    let field = ideal.ring().field().clone();
    let n = ideal.ring().nvars();
    let total = point_count(&field, n)?;
    let q = field.size().expect("finite");
    let basis = ideal.groebner_basis()?;
    let found: Vec<Vec<F::Elem>> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let pt = decode_point(&field, q, n, code);
            basis
                .iter()
                .all(|g| g.evaluate(&pt).is_ok_and(|v| field.is_zero(&v)))
                .then_some(pt)
        })
        .collect();
    Ok(found.into_iter().collect())
}
