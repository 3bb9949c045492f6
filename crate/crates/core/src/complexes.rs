//! Koszul, Eagon-Northcott and total complexes of graded free modules,
//! with homology computed strand by strand over the base field.
//!
//! Complexes are indexed homologically: `d_p : C_p -> C_{p-1}`, stored as
//! a `rank C_{p-1} x rank C_p` matrix (columns are source basis elements).
//! Basis orders are fixed: index sets in increasing lexicographic order,
//! exponent vectors in increasing lexicographic order after them.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Field;
use crate::critical::{self, ConstrainedSystem};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg;
use crate::matrix::{combinations, PolyMatrix};
use crate::poly::{Monomial, Polynomial, Ring};
use crate::series::{self, IntPoly};

/// Tag of a basis element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Label {
    /// The generator `1` of a rank-one module.
    Unit,
    /// `xi_{i_1}...xi_{i_{p+r}} eta^j` (indices zero-based).
    EagonNorthcott { xi: Vec<usize>, eta: Vec<u32> },
    /// `zeta_{k_1}...zeta_{k_q}` (indices zero-based).
    Koszul { zeta: Vec<usize> },
    /// `a (x) b` in a total complex.
    Pair(Box<Label>, Box<Label>),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Unit => write!(f, "1"),
            Label::EagonNorthcott { xi, eta } => {
                for i in xi {
                    write!(f, "xi{}", i + 1)?;
                }
                for (l, j) in eta.iter().enumerate() {
                    match j {
                        0 => {}
                        1 => write!(f, "*eta{}", l + 1)?,
                        _ => write!(f, "*eta{}^{}", l + 1, j)?,
                    }
                }
                Ok(())
            }
            Label::Koszul { zeta } if zeta.is_empty() => write!(f, "1"),
            Label::Koszul { zeta } => {
                let parts: Vec<String> = zeta.iter().map(|k| format!("zeta{}", k + 1)).collect();
                write!(f, "{}", parts.join("*"))
            }
            Label::Pair(a, b) => write!(f, "{a} (x) {b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub label: Label,
    pub degree: i64,
}

/// A bounded complex of free modules `C_0 <- C_1 <- ... <- C_len`.
#[derive(Debug, Clone)]
pub struct GradedFreeComplex<F: Field> {
    ring: Arc<Ring<F>>,
    modules: Vec<Vec<BasisElement>>,
    differentials: Vec<PolyMatrix<F>>,
}

impl<F: Field> GradedFreeComplex<F> {
    /// `differentials[p - 1]` is `d_p`.
    pub fn new(
        ring: &Arc<Ring<F>>,
        modules: Vec<Vec<BasisElement>>,
        differentials: Vec<PolyMatrix<F>>,
    ) -> Result<Self> {
        if modules.is_empty() || differentials.len() + 1 != modules.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} modules and {} differentials",
                modules.len(),
                differentials.len()
            )));
        }
        for (p, d) in differentials.iter().enumerate() {
            if **d.ring() != **ring {
                return Err(Error::MixedRings);
            }
            if d.rows() != modules[p].len() || d.cols() != modules[p + 1].len() {
                return Err(Error::ShapeMismatch(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    p + 1,
                    d.rows(),
                    d.cols(),
                    modules[p].len(),
                    modules[p + 1].len()
                )));
            }
        }
        Ok(GradedFreeComplex {
            ring: ring.clone(),
            modules,
            differentials,
        })
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    /// Largest homological index.
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn module(&self, p: usize) -> &[BasisElement] {
        self.modules.get(p).map_or(&[], Vec::as_slice)
    }

    pub fn modules(&self) -> &[Vec<BasisElement>] {
        &self.modules
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(Vec::len).collect()
    }

    /// `d_p` for `1 <= p <= length`.
    pub fn differential(&self, p: usize) -> Option<&PolyMatrix<F>> {
        p.checked_sub(1).and_then(|i| self.differentials.get(i))
    }

    pub fn differentials(&self) -> &[PolyMatrix<F>] {
        &self.differentials
    }

    /// `d_{p} d_{p+1} = 0` for every `p`, as polynomial matrices.
    pub fn is_complex(&self) -> Result<bool> {
        for w in self.differentials.windows(2) {
            if !w[0].mul(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks that every nonzero entry of every differential is
    /// homogeneous of degree `deg(source) - deg(target)`.
    pub fn check_graded(&self) -> Result<()> {
        for (i, d) in self.differentials.iter().enumerate() {
            let p = i + 1;
            for row in 0..d.rows() {
                for col in 0..d.cols() {
                    let e = d.get(row, col);
                    if e.is_zero() {
                        continue;
                    }
                    let want = self.modules[p][col].degree - self.modules[p - 1][row].degree;
                    if !e.is_homogeneous() || i64::from(e.total_degree()?) != want {
                        return Err(Error::NotGraded(format!(
                            "d_{p}[{row}][{col}] = {e} should be homogeneous of degree {want}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_graded(&self) -> bool {
        self.check_graded().is_ok()
    }

    /// The ideal generated by the image of `d_1` when `C_0` has rank one,
    /// so that `H_0 = R / ideal`.
    pub fn h0_presentation_ideal(&self) -> Result<Ideal<F>> {
        if self.modules[0].len() != 1 {
            return Err(Error::ShapeMismatch(format!(
                "C_0 has rank {}, expected 1",
                self.modules[0].len()
            )));
        }
        let gens = self.differential(1).map(|d| d.row(0).to_vec()).unwrap_or_default();
        Ideal::new(&self.ring, gens)
    }

    /// Text serialization: per homological index the basis labels with
    /// degrees, then each differential in row-major polynomial syntax.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("ring {}\n", self.ring.vars().join(" ")));
        for (p, m) in self.modules.iter().enumerate() {
            out.push_str(&format!("module {p} rank {}\n", m.len()));
            for (i, e) in m.iter().enumerate() {
                out.push_str(&format!("  {i}: {} deg {}\n", e.label, e.degree));
            }
        }
        for (i, d) in self.differentials.iter().enumerate() {
            out.push_str(&format!("differential {} {}x{}\n", i + 1, d.rows(), d.cols()));
            for row in 0..d.rows() {
                let entries: Vec<String> = d.row(row).iter().map(|e| e.to_string()).collect();
                out.push_str(&format!("  [{}]\n", entries.join(", ")));
            }
        }
        out
    }
}

fn degree_or_zero<F: Field>(p: &Polynomial<F>) -> i64 {
    p.total_degree().map_or(0, i64::from)
}

/// Koszul complex of `g_1..g_r`; `zeta_K` has degree `sum_{k in K} deg g_k`.
pub fn koszul_complex<F: Field>(gens: &[Polynomial<F>]) -> Result<GradedFreeComplex<F>> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidSystem("koszul complex needs at least one generator".into()));
    };
    let ring = first.ring().clone();
    if gens.iter().any(|g| **g.ring() != *ring) {
        return Err(Error::MixedRings);
    }
    let r = gens.len();
    let degrees: Vec<i64> = gens.iter().map(degree_or_zero).collect();
    let sets: Vec<Vec<Vec<usize>>> = (0..=r).map(|q| combinations(r, q)).collect();
    let modules: Vec<Vec<BasisElement>> = sets
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|s| BasisElement {
                    label: Label::Koszul { zeta: s.clone() },
                    degree: s.iter().map(|&k| degrees[k]).sum(),
                })
                .collect()
        })
        .collect();
    let mut differentials = Vec::with_capacity(r);
    for q in 1..=r {
        let index: HashMap<&[usize], usize> =
            sets[q - 1].iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut d = PolyMatrix::zeros(&ring, sets[q - 1].len(), sets[q].len());
        for (col, s) in sets[q].iter().enumerate() {
            for l in 0..q {
                let mut face = s.clone();
                let k = face.remove(l);
                let row = index[face.as_slice()];
                let entry = if l % 2 == 0 { gens[k].clone() } else { gens[k].neg() };
                d.set(row, col, entry);
            }
        }
        differentials.push(d);
    }
    GradedFreeComplex::new(&ring, modules, differentials)
}

/// Nonnegative integer vectors of length `len` summing to `total`, in
/// increasing lexicographic order.
fn compositions(len: usize, total: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(len - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Eagon-Northcott complex of an `(r+1) x n` matrix whose row `l` has
/// weight `degrees[l]`. Basis element `xi_I eta^j` of `C_p` (`|I| = p + r`,
/// `|j| = p - 1`) has degree `sum (j_l + 1) d_l - (p + r)`.
pub fn eagon_northcott<F: Field>(m: &PolyMatrix<F>, degrees: &[u32]) -> Result<GradedFreeComplex<F>> {
    let rows = m.rows();
    let n = m.cols();
    if rows == 0 || rows > n || degrees.len() != rows {
        return Err(Error::ShapeMismatch(format!(
            "eagon-northcott needs a (r+1) x n matrix with r < n and r+1 degrees; got {rows}x{n} with {} degrees",
            degrees.len()
        )));
    }
    let r = rows - 1;
    let ring = m.ring().clone();
    let weight: i64 = degrees.iter().map(|&d| i64::from(d)).sum();

    let mut labels: Vec<Vec<(Vec<usize>, Vec<u32>)>> = vec![vec![]];
    let mut modules = vec![vec![BasisElement {
        label: Label::Unit,
        degree: 0,
    }]];
    for p in 1..=n - r {
        let etas = compositions(rows, (p - 1) as u32);
        let mut level = Vec::new();
        let mut elems = Vec::new();
        for xi in combinations(n, p + r) {
            for eta in &etas {
                let extra: i64 = eta.iter().zip(degrees).map(|(&j, &d)| i64::from(j) * i64::from(d)).sum();
                elems.push(BasisElement {
                    label: Label::EagonNorthcott {
                        xi: xi.clone(),
                        eta: eta.clone(),
                    },
                    degree: weight + extra - (p + r) as i64,
                });
                level.push((xi.clone(), eta.clone()));
            }
        }
        labels.push(level);
        modules.push(elems);
    }

    let mut differentials = Vec::with_capacity(n - r);
    let all_rows: Vec<usize> = (0..rows).collect();
    let mut d1 = PolyMatrix::zeros(&ring, 1, labels[1].len());
    for (col, (xi, _)) in labels[1].iter().enumerate() {
        d1.set(0, col, m.minor(&all_rows, xi));
    }
    differentials.push(d1);
    for p in 2..=n - r {
        let index: HashMap<(&[usize], &[u32]), usize> = labels[p - 1]
            .iter()
            .enumerate()
            .map(|(i, (xi, eta))| ((xi.as_slice(), eta.as_slice()), i))
            .collect();
        let mut d = PolyMatrix::zeros(&ring, labels[p - 1].len(), labels[p].len());
        for (col, (xi, eta)) in labels[p].iter().enumerate() {
            for l in (0..rows).filter(|&l| eta[l] > 0) {
                let mut lowered = eta.clone();
                lowered[l] -= 1;
                for mi in 0..xi.len() {
                    let mut face = xi.clone();
                    let i = face.remove(mi);
                    let row = index[&(face.as_slice(), lowered.as_slice())];
                    let entry = m.get(l, i);
                    let signed = if mi % 2 == 0 { entry.clone() } else { entry.neg() };
                    let acc = d.get(row, col).checked_add(&signed)?;
                    d.set(row, col, acc);
                }
            }
        }
        differentials.push(d);
    }
    GradedFreeComplex::new(&ring, modules, differentials)
}

/// `binom(n, p + r) * binom(p + r - 1, r)` for `p >= 1`, and 1 for `p = 0`.
pub fn eagon_northcott_rank(n: usize, r: usize, p: usize) -> u128 {
    fn binom(n: usize, k: usize) -> u128 {
        if k > n {
            return 0;
        }
        (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
    }
    if p == 0 {
        1
    } else {
        binom(n, p + r) * binom(p + r - 1, r)
    }
}

/// Total complex of `c1 (x) c2`:
/// `T_k = sum_{p+q=k} C1_p (x) C2_q`, `d(a (x) b) = d1 a (x) b + (-1)^p a (x) d2 b`.
/// Within `T_k` the blocks are ordered by increasing `p`, and each block
/// by `c1` basis index then `c2` basis index.
pub fn tensor_total<F: Field>(c1: &GradedFreeComplex<F>, c2: &GradedFreeComplex<F>) -> Result<GradedFreeComplex<F>> {
    if **c1.ring() != **c2.ring() {
        return Err(Error::MixedRings);
    }
    let ring = c1.ring().clone();
    let len = c1.length() + c2.length();
    // offsets[k][p] = position of block (p, k - p) inside T_k
    let mut offsets: Vec<HashMap<usize, usize>> = Vec::with_capacity(len + 1);
    let mut modules = Vec::with_capacity(len + 1);
    for k in 0..=len {
        let mut off = HashMap::new();
        let mut elems = Vec::new();
        for p in 0..=k.min(c1.length()) {
            let q = k - p;
            if q > c2.length() {
                continue;
            }
            off.insert(p, elems.len());
            for a in c1.module(p) {
                for b in c2.module(q) {
                    elems.push(BasisElement {
                        label: Label::Pair(Box::new(a.label.clone()), Box::new(b.label.clone())),
                        degree: a.degree + b.degree,
                    });
                }
            }
        }
        offsets.push(off);
        modules.push(elems);
    }
    let mut differentials = Vec::with_capacity(len);
    for k in 1..=len {
        let mut d = PolyMatrix::zeros(&ring, modules[k - 1].len(), modules[k].len());
        for (&p, &src_off) in &offsets[k] {
            let q = k - p;
            let n1 = c1.module(p).len();
            let n2 = c2.module(q).len();
            for i in 0..n1 {
                for j in 0..n2 {
                    let col = src_off + i * n2 + j;
                    if let (Some(d1), Some(&tgt)) = (c1.differential(p), offsets[k - 1].get(&(p.wrapping_sub(1)))) {
                        for i2 in 0..d1.rows() {
                            let e = d1.get(i2, i);
                            if !e.is_zero() {
                                d.set(tgt + i2 * n2 + j, col, e.clone());
                            }
                        }
                    }
                    if let (Some(d2), Some(&tgt)) = (c2.differential(q), offsets[k - 1].get(&p)) {
                        let m2 = c2.module(q - 1).len();
                        for j2 in 0..d2.rows() {
                            let e = d2.get(j2, j);
                            if !e.is_zero() {
                                let signed = if p % 2 == 0 { e.clone() } else { e.neg() };
                                d.set(tgt + i * m2 + j2, col, signed);
                            }
                        }
                    }
                }
            }
        }
        differentials.push(d);
    }
    GradedFreeComplex::new(&ring, modules, differentials)
}

/// The degree-`deg` piece of a graded complex: field matrices between the
/// spans of `monomial * basis element` pairs of total degree `deg`.
#[derive(Debug, Clone)]
pub struct Strand<F: Field> {
    pub degree: i64,
    pub dims: Vec<usize>,
    /// `maps[p - 1]` is the `dims[p-1] x dims[p]` matrix of `d_p`.
    pub maps: Vec<Vec<Vec<F::Elem>>>,
}

impl<F: Field> Strand<F> {
    pub fn composes_to_zero(&self, field: &F) -> bool {
        self.maps.windows(2).all(|w| {
            let (a, b) = (&w[0], &w[1]);
            a.iter().all(|row| {
                (0..self.dims_of(b)).all(|j| {
                    let mut acc = field.zero();
                    for (k, x) in row.iter().enumerate() {
                        if !field.is_zero(x) {
                            acc = field.add(&acc, &field.mul(x, &b[k][j]));
                        }
                    }
                    field.is_zero(&acc)
                })
            })
        })
    }

    fn dims_of(&self, m: &[Vec<F::Elem>]) -> usize {
        m.first().map_or(0, Vec::len)
    }
}

fn strand_basis<F: Field>(ring: &Ring<F>, module: &[BasisElement], deg: i64) -> Vec<(usize, Monomial)> {
    let mut out = Vec::new();
    for (i, e) in module.iter().enumerate() {
        let rest = deg - e.degree;
        if rest >= 0 {
            out.extend(ring.monomials_of_degree(rest as u32).into_iter().map(|m| (i, m)));
        }
    }
    out
}

pub fn graded_strand<F: Field>(c: &GradedFreeComplex<F>, deg: i64) -> Result<Strand<F>> {
    c.check_graded()?;
    let field = c.ring.field();
    let bases: Vec<Vec<(usize, Monomial)>> = c.modules.iter().map(|m| strand_basis(&c.ring, m, deg)).collect();
    let mut maps = Vec::with_capacity(c.differentials.len());
    for (i, d) in c.differentials.iter().enumerate() {
        let (tgt, src) = (&bases[i], &bases[i + 1]);
        let index: HashMap<(usize, Monomial), usize> = tgt.iter().enumerate().map(|(k, &key)| (key, k)).collect();
        let mut mat = vec![vec![field.zero(); src.len()]; tgt.len()];
        for (col, &(e, m)) in src.iter().enumerate() {
            for row_e in 0..d.rows() {
                for (t, coeff) in d.get(row_e, e).terms() {
                    let row = index[&(row_e, t.mul(&m))];
                    mat[row][col] = field.add(&mat[row][col], coeff);
                }
            }
        }
        maps.push(mat);
    }
    Ok(Strand {
        degree: deg,
        dims: bases.iter().map(Vec::len).collect(),
        maps,
    })
}

/// `dim ker d_p - rank d_{p+1}` on the degree-`deg` strand, for each `p`.
pub fn strand_homology<F: Field>(c: &GradedFreeComplex<F>, deg: i64) -> Result<Vec<usize>> {
    let strand = graded_strand(c, deg)?;
    let field = c.ring.field();
    let ranks: Vec<usize> = strand.maps.into_iter().map(|m| linalg::rank(field, m)).collect();
    Ok((0..strand.dims.len())
        .map(|p| {
            let out = if p == 0 { 0 } else { ranks[p - 1] };
            let inc = ranks.get(p).copied().unwrap_or(0);
            strand.dims[p] - out - inc
        })
        .collect())
}

/// Strand homology for every degree in `0..=max_deg`, computed in parallel
/// and returned in degree order.
pub fn strand_homology_table<F: Field>(c: &GradedFreeComplex<F>, max_deg: i64) -> Result<Vec<Vec<usize>>> {
    c.check_graded()?;
    (0..=max_deg).into_par_iter().map(|d| strand_homology(c, d)).collect()
}

/// First `(degree, p)` with `p > 0` and nonzero homology, if any.
pub fn first_higher_homology(table: &[Vec<usize>]) -> Option<(i64, usize)> {
    table.iter().enumerate().find_map(|(d, h)| {
        h.iter()
            .enumerate()
            .skip(1)
            .find(|(_, &x)| x != 0)
            .map(|(p, _)| (d as i64, p))
    })
}

/// Matrix of leading forms: row `l` holds the gradient of `f_l^{(d_l)}`,
/// the objective last.
pub fn leading_form_matrix<F: Field>(sys: &ConstrainedSystem<F>) -> PolyMatrix<F> {
    critical::jacobian_matrix(sys.ring(), &sys.leading_forms()).expect("entries share the system ring")
}

/// The complexes attached to a constrained system: Eagon-Northcott on the
/// augmented Jacobian, Koszul on the constraints, and their total complex;
/// `graded` uses leading forms throughout.
#[derive(Debug, Clone)]
pub struct SystemComplexes<F: Field> {
    pub eagon_northcott: GradedFreeComplex<F>,
    pub koszul: GradedFreeComplex<F>,
    pub total: GradedFreeComplex<F>,
}

pub fn system_complexes<F: Field>(sys: &ConstrainedSystem<F>, graded: bool) -> Result<SystemComplexes<F>> {
    let r = sys.r();
    let (m, gens) = if graded {
        (leading_form_matrix(sys), sys.leading_forms()[..r].to_vec())
    } else {
        (critical::augmented_jacobian(sys), sys.constraints().to_vec())
    };
    let en = eagon_northcott(&m, sys.degrees())?;
    let koszul = koszul_complex(&gens)?;
    let total = tensor_total(&en, &koszul)?;
    Ok(SystemComplexes {
        eagon_northcott: en,
        koszul,
        total,
    })
}

/// Default strand truncation: `max(10, sum (d_i - 1) + 1)`.
pub fn default_truncation(degrees: &[u32]) -> i64 {
    let bound: i64 = degrees.iter().map(|&d| i64::from(d) - 1).sum::<i64>() + 1;
    bound.max(10)
}

/// Outcome of comparing the graded quotient with the total complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertCheck {
    pub truncation: i64,
    /// `dim_K (K[x]/(I'+J'))_k` from the Hilbert numerator.
    pub quotient_dims: Vec<u64>,
    /// `dim_K H_0(T-bar)_k` from strand homology.
    pub strand_h0_dims: Vec<u64>,
    pub per_degree_match: bool,
    /// Hilbert series of `H_0(T-bar)` equals `prod (1 - t^{d_i})` times
    /// that of `K[x]/J'`, degree by degree.
    pub series_identity: bool,
    pub graded_dimension: u64,
    pub milnor_sum: u64,
    pub dimension_match: bool,
    /// `G(1)` from `N_{J'}(t) = G(t)(1-t)^{n-r} + H(t)(1-t)^{n-r+1}`.
    #[serde(serialize_with = "series::json_int::option")]
    pub g_at_one: Option<BigInt>,
    /// Coefficient of `t^{n-r}` in `(1-t)^n / prod (1 - d_i t)`.
    #[serde(serialize_with = "series::json_int::serialize")]
    pub g_at_one_expected: BigInt,
    pub g_check: bool,
    pub passed: bool,
}

/// Compares per-degree dimensions of `K[x]/(I'+J')` with the strand
/// `H_0` of the graded total complex up to `truncation`, and the total
/// with `milnor_sum`.
pub fn h0_hilbert_check<F: Field>(sys: &ConstrainedSystem<F>, truncation: i64) -> Result<HilbertCheck> {
    let hyp = critical::check_hypotheses(sys)?;
    if !hyp.all_pass {
        return Err(Error::HypothesesFail(hyp.failed().join(", ")));
    }
    if truncation < 0 {
        return Err(Error::TruncationTooSmall(truncation));
    }
    let n = sys.n();
    let r = sys.r();
    let cx = system_complexes(sys, true)?;
    let h0: Vec<u64> = (0..=truncation)
        .into_par_iter()
        .map(|d| strand_homology(&cx.total, d).map(|h| h[0] as u64))
        .collect::<Result<_>>()?;
    if h0[truncation as usize] != 0 {
        return Err(Error::TruncationTooSmall(truncation));
    }

    let graded_ideal = cx.total.h0_presentation_ideal()?;
    let quotient_dims = graded_ideal.hilbert_function(truncation as u32)?;
    let per_degree_match = quotient_dims == h0;

    let minors_ideal = cx.eagon_northcott.h0_presentation_ideal()?;
    let n_j = minors_ideal.hilbert_numerator()?;
    let ci = series::complete_intersection_numerator(&sys.degrees()[..r]);
    let predicted = series::RationalGF::over_one_minus_t(&ci * &n_j, n as u32).expand(truncation as usize);
    let series_identity = predicted.iter().zip(&h0).all(|(a, &b)| *a == BigInt::from(b));

    let graded_dimension: u64 = h0.iter().sum();
    let milnor_sum = critical::milnor_sum(sys)?;
    let dimension_match = graded_dimension == milnor_sum && graded_ideal.quotient_dimension()? == milnor_sum;

    let mut g = Some(n_j);
    for _ in 0..n - r {
        g = g.and_then(|p| p.div_one_minus_t());
    }
    let g_at_one = g.map(|p| p.eval(&BigInt::from(1)));
    let g_at_one_expected = series::RationalGF::new(
        IntPoly::one_minus_t_pow(n as u32),
        sys.degrees().iter().map(|&d| (u64::from(d), 1)),
    )
    .series_coefficient(n - r);
    let product: BigInt = sys.degrees()[..r].iter().map(|&d| BigInt::from(d)).product();
    let g_check = g_at_one.as_ref() == Some(&g_at_one_expected)
        && &product * &g_at_one_expected == BigInt::from(graded_dimension);

    let passed = per_degree_match && series_identity && dimension_match && g_check;
    Ok(HilbertCheck {
        truncation,
        quotient_dims,
        strand_h0_dims: h0,
        per_degree_match,
        series_identity,
        graded_dimension,
        milnor_sum,
        dimension_match,
        g_at_one,
        g_at_one_expected,
        g_check,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};
    use crate::poly::parse::parse_polynomial;
    use crate::poly::MonomialOrder;

    fn ring(vars: &[&str]) -> Arc<Ring<Rationals>> {
        Ring::new(Rationals, vars.iter().copied(), MonomialOrder::DegRevLex).unwrap()
    }

    fn polys(ring: &Arc<Ring<Rationals>>, ps: &[&str]) -> Vec<Polynomial<Rationals>> {
        ps.iter().map(|p| parse_polynomial(ring, p).unwrap()).collect()
    }

    fn system(vars: &[&str], f: &str, cs: &[&str]) -> ConstrainedSystem<Rationals> {
        let rg = ring(vars);
        ConstrainedSystem::new(parse_polynomial(&rg, f).unwrap(), polys(&rg, cs)).unwrap()
    }

    fn circle() -> ConstrainedSystem<Rationals> {
        system(&["x1", "x2"], "x1", &["x1^2 + x2^2 - 1"])
    }

    fn strings(m: &PolyMatrix<Rationals>) -> Vec<String> {
        m.entries().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn koszul_small() {
        let rg = ring(&["x1", "x2"]);
        let k = koszul_complex(&polys(&rg, &["x1"])).unwrap();
        assert_eq!(k.ranks(), [1, 1]);
        assert_eq!(strings(k.differential(1).unwrap()), ["x1"]);

        let k = koszul_complex(&polys(&rg, &["x1^2", "x2"])).unwrap();
        assert_eq!(k.ranks(), [1, 2, 1]);
        assert_eq!(strings(k.differential(1).unwrap()), ["x1^2", "x2"]);
        // zeta1 zeta2 -> g1 zeta2 - g2 zeta1
        assert_eq!(strings(k.differential(2).unwrap()), ["-x2", "x1^2"]);
        assert_eq!(k.module(2)[0].degree, 3);
        assert!(k.is_complex().unwrap());
    }

    #[test]
    fn koszul_ranks_and_square_zero() {
        let rg = ring(&["a", "b", "c", "d"]);
        let k = koszul_complex(&polys(&rg, &["a*b - c", "b^2 + d", "a + c^3", "d^2"])).unwrap();
        assert_eq!(k.ranks(), [1, 4, 6, 4, 1]);
        assert!(k.is_complex().unwrap());
    }

    #[test]
    fn compositions_order() {
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn eagon_northcott_circle() {
        let m = critical::augmented_jacobian(&circle());
        let en = eagon_northcott(&m, &[2, 1]).unwrap();
        assert_eq!(en.ranks(), [1, 1]);
        assert_eq!(en.module(1)[0].degree, 1);
        assert_eq!(strings(en.differential(1).unwrap()), ["-2*x2"]);
    }

    #[test]
    fn eagon_northcott_ranks() {
        let rg = ring(&["a", "b", "c"]);
        let m = PolyMatrix::from_rows(&rg, vec![polys(&rg, &["a", "b", "c"]), polys(&rg, &["b", "c", "a"])]).unwrap();
        let en = eagon_northcott(&m, &[2, 2]).unwrap();
        assert_eq!(en.ranks(), [1, 3, 2]);
        assert!(en.is_complex().unwrap());
        assert!(en.is_graded());
        for n in 2..=6 {
            for r in 1..n {
                for p in 0..=n - r {
                    let direct = if p == 0 {
                        1
                    } else {
                        combinations(n, p + r).len() * compositions(r + 1, (p - 1) as u32).len()
                    };
                    assert_eq!(eagon_northcott_rank(n, r, p), direct as u128);
                }
            }
        }
        assert!(matches!(eagon_northcott(&m, &[2]), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn eagon_northcott_generic_square_zero() {
        // 2x4 generic linear matrix: d_1 d_2 = 0 and d_2 d_3 = 0
        let rg = ring(&["a", "b", "c", "d", "e", "f", "g", "h"]);
        let m = PolyMatrix::from_rows(&rg, vec![polys(&rg, &["a", "b", "c", "d"]), polys(&rg, &["e", "f", "g", "h"])])
            .unwrap();
        let en = eagon_northcott(&m, &[2, 2]).unwrap();
        assert_eq!(en.ranks(), [1, 6, 8, 3]);
        assert!(en.is_complex().unwrap());
        assert!(en.is_graded());
        // generic maximal minors have maximal depth: exact in positive degrees
        let table = strand_homology_table(&en, 4).unwrap();
        assert_eq!(first_higher_homology(&table), None);
    }

    #[test]
    fn affine_complex_is_not_graded() {
        let cx = system_complexes(&circle(), false).unwrap();
        assert!(!cx.total.is_graded());
        assert!(matches!(graded_strand(&cx.total, 1), Err(Error::NotGraded(_))));
    }

    #[test]
    fn tensor_with_unit_is_identity() {
        let sys = circle();
        let en = system_complexes(&sys, true).unwrap().eagon_northcott;
        let unit = GradedFreeComplex::new(
            sys.ring(),
            vec![vec![BasisElement {
                label: Label::Unit,
                degree: 0,
            }]],
            vec![],
        )
        .unwrap();
        let t = tensor_total(&en, &unit).unwrap();
        assert_eq!(t.ranks(), en.ranks());
        for (a, b) in t.differentials().iter().zip(en.differentials()) {
            assert_eq!(a.entries(), b.entries());
        }
        let degrees: Vec<i64> = t.modules().iter().flatten().map(|e| e.degree).collect();
        let expected: Vec<i64> = en.modules().iter().flatten().map(|e| e.degree).collect();
        assert_eq!(degrees, expected);
    }

    #[test]
    fn tensor_ranks_and_presentation() {
        let sys = system(&["x1", "x2", "x3"], "x1 + 2*x2", &["x1^3 + x2^3 + x3^3 - 1"]);
        for graded in [false, true] {
            let cx = system_complexes(&sys, graded).unwrap();
            let (r1, r2) = (cx.eagon_northcott.ranks(), cx.koszul.ranks());
            let want: Vec<usize> = (0..r1.len() + r2.len() - 1)
                .map(|k| (0..r1.len()).filter(|&p| k >= p && k - p < r2.len()).map(|p| r1[p] * r2[k - p]).sum())
                .collect();
            assert_eq!(cx.total.ranks(), want);
            assert!(cx.eagon_northcott.is_complex().unwrap());
            assert!(cx.koszul.is_complex().unwrap());
            assert!(cx.total.is_complex().unwrap());
        }
        let cx = system_complexes(&circle(), false).unwrap();
        let ideal = cx.total.h0_presentation_ideal().unwrap();
        let gens: Vec<String> = ideal.generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(gens, ["x1^2 + x2^2 - 1", "-2*x2"]);
        assert!(ideal.same_ideal(&critical::critical_ideal(&circle()).unwrap()).unwrap());
    }

    #[test]
    fn koszul_strands() {
        let rg = ring(&["x1", "x2"]);
        let k = koszul_complex(&polys(&rg, &["x1", "x2"])).unwrap();
        let s = graded_strand(&k, 1).unwrap();
        assert_eq!(s.dims, [2, 2, 0]);
        // e1 -> x1 and e2 -> x2 are independent
        assert_eq!(linalg::rank(&Rationals, s.maps[0].clone()), 2);
        assert_eq!(graded_strand(&k, 0).unwrap().dims, [1, 0, 0]);
        assert_eq!(graded_strand(&k, -1).unwrap().dims, [0, 0, 0]);
        for d in 0..=8 {
            let h = strand_homology(&k, d).unwrap();
            assert!(h[1..].iter().all(|&x| x == 0), "degree {d}: {h:?}");
            assert_eq!(h[0], usize::from(d == 0));
        }
        let k = koszul_complex(&polys(&rg, &["x1", "x1"])).unwrap();
        assert_eq!(strand_homology(&k, 1).unwrap()[1], 1);
    }

    #[test]
    fn strands_compose_to_zero() {
        let cx = system_complexes(&circle(), true).unwrap();
        for c in [&cx.eagon_northcott, &cx.koszul, &cx.total] {
            for d in 0..6 {
                assert!(graded_strand(c, d).unwrap().composes_to_zero(&Rationals));
            }
        }
    }

    #[test]
    fn circle_graded_exactness() {
        let cx = system_complexes(&circle(), true).unwrap();
        let en = strand_homology_table(&cx.eagon_northcott, 8).unwrap();
        assert_eq!(first_higher_homology(&en), None);
        let t = strand_homology_table(&cx.total, 8).unwrap();
        assert_eq!(first_higher_homology(&t), None);
        let h0: Vec<usize> = t.iter().map(|h| h[0]).collect();
        assert_eq!(h0, [1, 1, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn hilbert_check_examples() {
        let c = h0_hilbert_check(&circle(), 8).unwrap();
        assert!(c.passed, "{c:?}");
        assert_eq!(c.graded_dimension, 2);
        let fermat = system(&["x1", "x2", "x3"], "x1 + 2*x2", &["x1^3 + x2^3 + x3^3 - 1"]);
        let c = h0_hilbert_check(&fermat, default_truncation(fermat.degrees())).unwrap();
        assert!(c.passed, "{c:?}");
        assert_eq!((c.graded_dimension, c.milnor_sum), (12, 12));
        let parabola = system(&["x1", "x2"], "x2", &["x2 - x1^2"]);
        assert!(matches!(h0_hilbert_check(&parabola, 8), Err(Error::HypothesesFail(_))));
        assert_eq!(h0_hilbert_check(&fermat, 2), Err(Error::TruncationTooSmall(2)));
    }

    #[test]
    fn hilbert_check_prime_field() {
        let f = PrimeField::new(32003).unwrap();
        let rg = Ring::new(f, ["x1", "x2", "x3"], MonomialOrder::DegRevLex).unwrap();
        let p = |s: &str| parse_polynomial(&rg, s).unwrap();
        let sys = ConstrainedSystem::new(p("x1*x2 + x3^2 - 3*x1"), vec![p("x1^2 + 2*x2^2 + 5*x3^2 - 1")]).unwrap();
        let c = h0_hilbert_check(&sys, 10).unwrap();
        assert!(c.passed, "{c:?}");
    }

    #[test]
    fn dump_format() {
        let cx = system_complexes(&circle(), false).unwrap();
        let text = cx.eagon_northcott.dump();
        assert_eq!(
            text,
            "ring x1 x2\nmodule 0 rank 1\n  0: 1 deg 0\nmodule 1 rank 1\n  0: xi1xi2 deg 1\ndifferential 1 1x1\n  [-2*x2]\n"
        );
    }
}
