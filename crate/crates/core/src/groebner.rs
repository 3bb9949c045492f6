//! Buchberger's algorithm with the Gebauer-Möller pair criteria, and the
//! invariants read off a Gröbner basis: normal forms, quotient dimension,
//! Krull dimension and Hilbert series numerators.

use std::sync::{Arc, OnceLock};

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};
use crate::series::IntPoly;

/// Environment variable overriding [`GroebnerLimits::max_terms`].
pub const MAX_TERMS_ENV: &str = "LAGMUL_MAX_TERMS";

/// Abort thresholds for Buchberger runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroebnerLimits {
    pub max_terms: usize,
    pub max_basis: usize,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        let max_terms = std::env::var(MAX_TERMS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(50_000);
        GroebnerLimits {
            max_terms,
            max_basis: 5_000,
        }
    }
}

/// An ideal given by generators, with its reduced Gröbner basis computed on
/// first use and cached.
pub struct Ideal<F: Field> {
    ring: Arc<Ring<F>>,
    generators: Vec<Polynomial<F>>,
    limits: GroebnerLimits,
    basis: OnceLock<Vec<Polynomial<F>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            limits: self.limits,
            basis: self.basis.clone(),
        }
    }
}

impl<F: Field> std::fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ideal")
            .field("generators", &self.generators)
            .field("basis", &self.basis.get())
            .finish()
    }
}

/// Monomials outside the leading-term ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardMonomials {
    Finite(Vec<Monomial>),
    Infinite,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped; all generators must live in `ring`.
    pub fn new(ring: &Arc<Ring<F>>, generators: impl IntoIterator<Item = Polynomial<F>>) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if **g.ring() != **ring {
                return Err(Error::MixedRings);
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: gens,
            limits: GroebnerLimits::default(),
            basis: OnceLock::new(),
        })
    }

    pub fn with_limits(mut self, limits: GroebnerLimits) -> Self {
        self.limits = limits;
        self.basis = OnceLock::new();
        self
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    /// The same ideal under another monomial order (basis not yet computed).
    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        let ring = self.ring.with_order(order);
        let gens = self
            .generators
            .iter()
            .map(|g| g.to_ring(&ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(&ring, gens)?.with_limits(self.limits))
    }

    /// The reduced Gröbner basis, sorted by increasing leading monomial.
    pub fn groebner_basis(&self) -> Result<&[Polynomial<F>]> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let b = compute_reduced_basis(&self.ring, &self.generators, self.limits)?;
        Ok(self.basis.get_or_init(|| b))
    }

    pub fn leading_monomials(&self) -> Result<Vec<Monomial>> {
        Ok(self
            .groebner_basis()?
            .iter()
            .map(|g| *g.leading_monomial().expect("basis elements are nonzero"))
            .collect())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().any(|g| g.is_constant()))
    }

    pub fn is_zero_ideal(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.is_empty())
    }

    /// Remainder of `f` on division by the reduced basis.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if **f.ring() != *self.ring {
            return Err(Error::MixedRings);
        }
        let f = if Arc::ptr_eq(f.ring(), &self.ring) {
            f.clone()
        } else {
            f.to_ring(&self.ring)?
        };
        let basis = self.groebner_basis()?;
        let reducer = Reducer::new(basis.iter().collect());
        reducer.reduce(&f, self.limits)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `other ⊆ self`
    pub fn contains_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality certified by mutual membership of generators.
    pub fn same_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn standard_monomials(&self) -> Result<StandardMonomials> {
        let lms = self.leading_monomials()?;
        let n = self.ring.nvars();
        if lms.iter().any(|m| m.is_one()) {
            return Ok(StandardMonomials::Finite(Vec::new()));
        }
        let mut bounds = vec![None; n];
        for m in &lms {
            if let Some((i, e)) = m.as_pure_power() {
                bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
            }
        }
        if bounds.iter().any(Option::is_none) {
            return Ok(StandardMonomials::Infinite);
        }
        let bounds: Vec<u32> = bounds.into_iter().map(Option::unwrap).collect();
        let mut out = Vec::new();
        enumerate_standard(&lms, &bounds, 0, Monomial::one(), &mut out);
        let order = self.ring.order();
        out.sort_by(|a, b| order.cmp(a, b));
        Ok(StandardMonomials::Finite(out))
    }

    /// `dim_K K[vars]/I`.
    pub fn quotient_dimension(&self) -> Result<u64> {
        match self.standard_monomials()? {
            StandardMonomials::Finite(v) => Ok(v.len() as u64),
            StandardMonomials::Infinite => Err(Error::InfiniteDimensional),
        }
    }

    /// Krull dimension of the quotient: the largest set of variables no
    /// leading monomial is supported on.
    pub fn krull_dimension(&self) -> Result<usize> {
        let lms = self.leading_monomials()?;
        if lms.iter().any(|m| m.is_one()) {
            return Err(Error::UnitIdeal);
        }
        let n = self.ring.nvars();
        let masks: Vec<u32> = lms.iter().map(Monomial::support_mask).collect();
        let mut best = 0;
        for s in 0u32..(1u32 << n) {
            let size = s.count_ones() as usize;
            if size > best && masks.iter().all(|&m| m & !s != 0) {
                best = size;
            }
        }
        Ok(best)
    }

    /// Krull dimension with the empty-scheme convention: the unit ideal
    /// has dimension -1.
    pub fn krull_dimension_or_empty(&self) -> Result<i64> {
        match self.krull_dimension() {
            Ok(d) => Ok(d as i64),
            Err(Error::UnitIdeal) => Ok(-1),
            Err(e) => Err(e),
        }
    }

    /// `N(t)` with `HS(K[vars]/I) = N(t) / (1 - t)^n`, for homogeneous `I`.
    pub fn hilbert_numerator(&self) -> Result<IntPoly> {
        if self.generators.iter().any(|g| !g.is_homogeneous()) {
            return Err(Error::NotHomogeneous);
        }
        Ok(monomial_hilbert_numerator(self.leading_monomials()?))
    }

    /// Dimensions of the graded pieces in degrees `0..=max_degree`,
    /// counted directly from the standard monomials of each degree.
    pub fn hilbert_function(&self, max_degree: u32) -> Result<Vec<u64>> {
        if self.generators.iter().any(|g| !g.is_homogeneous()) {
            return Err(Error::NotHomogeneous);
        }
        let lms = self.leading_monomials()?;
        Ok((0..=max_degree)
            .map(|d| {
                self.ring
                    .monomials_of_degree(d)
                    .iter()
                    .filter(|m| !lms.iter().any(|l| l.divides(m)))
                    .count() as u64
            })
            .collect())
    }
}

fn enumerate_standard(lms: &[Monomial], bounds: &[u32], i: usize, cur: Monomial, out: &mut Vec<Monomial>) {
    if i == bounds.len() {
        out.push(cur);
        return;
    }
    for e in 0..bounds[i] {
        let m = cur.with_exponent(i, e);
        // later exponents are still zero, so divisibility here persists in
        // every extension and for every larger e
        if lms.iter().any(|l| l.divides(&m)) {
            break;
        }
        enumerate_standard(lms, bounds, i + 1, m, out);
    }
}

fn minimize_monomials(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Hilbert numerator of `K[x]/M` for a monomial ideal `M`, by the pivot
/// recursion `N(M) = N(M + (p)) + t^{deg p} N(M : p)` on a variable power.
pub fn monomial_hilbert_numerator(gens: Vec<Monomial>) -> IntPoly {
    let gens = minimize_monomials(gens);
    if gens.iter().any(|m| m.is_one()) {
        return IntPoly::zero();
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        return gens
            .iter()
            .fold(IntPoly::one(), |acc, m| &acc * &IntPoly::one_minus(1, m.degree() as usize));
    }
    // pivot on the variable shared by the most generators
    let mut counts = [0usize; crate::poly::MAX_VARS];
    for m in &gens {
        if m.as_pure_power().is_none() {
            for i in m.support() {
                counts[i] += 1;
            }
        }
    }
    let var = (0..counts.len()).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let mut exps: Vec<u32> = gens
        .iter()
        .filter(|m| m.as_pure_power().is_none())
        .map(|m| m.exponent(var))
        .filter(|&e| e > 0)
        .collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2];
    let pivot = Monomial::one().with_exponent(var, e);

    let mut sum = gens.clone();
    sum.push(pivot);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| m.checked_div(&m.gcd(&pivot)).expect("gcd divides"))
        .collect();
    &monomial_hilbert_numerator(sum) + &(&IntPoly::monomial(e as usize) * &monomial_hilbert_numerator(colon))
}

/// Division by a fixed list of monic polynomials.
struct Reducer<'a, F: Field> {
    polys: Vec<&'a Polynomial<F>>,
    lms: Vec<(Monomial, u32)>,
}

impl<'a, F: Field> Reducer<'a, F> {
    fn new(polys: Vec<&'a Polynomial<F>>) -> Self {
        let lms = polys
            .iter()
            .map(|p| {
                let m = *p.leading_monomial().expect("reducers are nonzero");
                (m, m.support_mask())
            })
            .collect();
        Reducer { polys, lms }
    }

    #[inline]
    fn find(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        self.lms
            .iter()
            .position(|(l, lmask)| lmask & !mask == 0 && l.divides(m))
    }

    /// Full reduction: no term of the result is divisible by a reducer's
    /// leading monomial.
    fn reduce(&self, f: &Polynomial<F>, limits: GroebnerLimits) -> Result<Polynomial<F>> {
        let ring = f.ring().clone();
        let field = ring.field().clone();
        let order = ring.order();
        let mut rem: Vec<(Monomial, F::Elem)> = Vec::new();
        let mut cur: Vec<(Monomial, F::Elem)> = f.terms().to_vec();
        let mut start = 0;
        while start < cur.len() {
            let (m, c) = &cur[start];
            let Some(k) = self.find(m) else {
                rem.push(cur[start].clone());
                start += 1;
                continue;
            };
            let g = self.polys[k];
            let q = m.checked_div(&self.lms[k].0).expect("divisor found");
            let c = field.neg(c);
            // merge cur[start+1..] with c*q*tail(g); leading terms cancel
            let tail = &g.terms()[1..];
            let mut out = Vec::with_capacity(cur.len() - start + tail.len());
            let mut a = cur[start + 1..].iter().peekable();
            let mut b = tail.iter().map(|(bm, bc)| (bm.mul(&q), field.mul(bc, &c))).peekable();
            loop {
                match (a.peek(), b.peek()) {
                    (None, None) => break,
                    (Some(_), None) => out.push(a.next().unwrap().clone()),
                    (None, Some(_)) => out.push(b.next().unwrap()),
                    (Some((am, ac)), Some((bm, bc))) => match order.cmp(am, bm) {
                        std::cmp::Ordering::Greater => out.push(a.next().unwrap().clone()),
                        std::cmp::Ordering::Less => out.push(b.next().unwrap()),
                        std::cmp::Ordering::Equal => {
                            let s = field.add(ac, bc);
                            if !field.is_zero(&s) {
                                out.push((*am, s));
                            }
                            a.next();
                            b.next();
                        }
                    },
                }
            }
            if out.len() + rem.len() > limits.max_terms {
                return Err(Error::ResourceLimit(format!(
                    "intermediate polynomial exceeds {} terms",
                    limits.max_terms
                )));
            }
            cur = out;
            start = 0;
        }
        Ok(Polynomial::from_sorted_terms(&ring, rem))
    }
}

/// Full normal form of `f` with respect to `ideal`'s reduced basis.
pub fn normal_form<F: Field>(f: &Polynomial<F>, ideal: &Ideal<F>) -> Result<Polynomial<F>> {
    ideal.normal_form(f)
}

/// Builds the ideal of `gens` in their common ring under `order` and
/// computes its reduced Gröbner basis.
pub fn buchberger<F: Field>(gens: &[Polynomial<F>], order: MonomialOrder) -> Result<Ideal<F>> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidSystem("empty generator list has no ring".into()));
    };
    let ring = if first.ring().order() == order {
        first.ring().clone()
    } else {
        first.ring().with_order(order)
    };
    let gens = gens.iter().map(|g| g.to_ring(&ring)).collect::<Result<Vec<_>>>()?;
    let ideal = Ideal::new(&ring, gens)?;
    ideal.groebner_basis()?;
    Ok(ideal)
}

#[derive(Debug, Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn s_polynomial<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>, lcm: &Monomial) -> Polynomial<F> {
    // both monic
    let field = a.field();
    let qa = lcm.checked_div(a.leading_monomial().unwrap()).unwrap();
    let qb = lcm.checked_div(b.leading_monomial().unwrap()).unwrap();
    let ta = Polynomial::from_sorted_terms(a.ring(), a.terms()[1..].to_vec());
    let tb = b.terms()[1..].iter().map(|(m, c)| (*m, field.neg(c))).collect();
    let tb = Polynomial::from_sorted_terms(b.ring(), tb);
    ta.mul_term(&field.one(), &qa)
        .add_scaled(&field.one(), &qb, &tb)
        .expect("same ring")
}

/// Gebauer-Möller update: installs `h` (index `hi`) into the active basis
/// `active` and the pair list.
fn update<F: Field>(polys: &[Polynomial<F>], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, hi: usize)
{
    let lm = |k: usize| *polys[k].leading_monomial().unwrap();
    let hlm = lm(hi);
    let cands: Vec<Pair> = active
        .iter()
        .map(|&g| Pair {
            i: g,
            j: hi,
            lcm: lm(g).lcm(&hlm),
        })
        .collect();
    let mut kept: Vec<Pair> = Vec::new();
    for (k, p) in cands.iter().enumerate() {
        let coprime = lm(p.i).is_coprime(&hlm);
        let dominated = cands[k + 1..].iter().any(|q| q.lcm.divides(&p.lcm))
            || kept.iter().any(|q| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            kept.push(*p);
        }
    }
    kept.retain(|p| !lm(p.i).is_coprime(&hlm));
    pairs.retain(|p| {
        !hlm.divides(&p.lcm) || lm(p.i).lcm(&hlm) == p.lcm || lm(p.j).lcm(&hlm) == p.lcm
    });
    pairs.extend(kept);
    active.retain(|&g| !hlm.divides(&lm(g)));
    active.push(hi);
}

fn compute_reduced_basis<F: Field>(
    ring: &Arc<Ring<F>>,
    generators: &[Polynomial<F>],
    limits: GroebnerLimits,
) -> Result<Vec<Polynomial<F>>> {
    let order = ring.order();
    let mut polys: Vec<Polynomial<F>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let unit = || Ok(vec![Polynomial::one(ring)]);

    for g in generators {
        let h = {
            let reducer = Reducer::new(active.iter().map(|&k| &polys[k]).collect());
            reducer.reduce(g, limits)?.monic()
        };
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return unit();
        }
        polys.push(h);
        update(&polys, &mut active, &mut pairs, polys.len() - 1);
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm
        let best = (0..pairs.len())
            .min_by(|&a, &b| order.cmp(&pairs[a].lcm, &pairs[b].lcm))
            .unwrap();
        let pair = pairs.swap_remove(best);
        let s = s_polynomial(&polys[pair.i], &polys[pair.j], &pair.lcm);
        let h = {
            let reducer = Reducer::new(active.iter().map(|&k| &polys[k]).collect());
            reducer.reduce(&s, limits)?.monic()
        };
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return unit();
        }
        polys.push(h);
        if active.len() + 1 > limits.max_basis {
            return Err(Error::ResourceLimit(format!(
                "Gröbner basis exceeds {} elements",
                limits.max_basis
            )));
        }
        update(&polys, &mut active, &mut pairs, polys.len() - 1);
    }

    // active is minimal; reduce each tail against the others
    let minimal: Vec<Polynomial<F>> = active.iter().map(|&k| polys[k].clone()).collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<&Polynomial<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| p)
            .collect();
        let reducer = Reducer::new(others);
        let (lm, lc) = g.leading_term().unwrap().clone();
        let tail = Polynomial::from_sorted_terms(ring, g.terms()[1..].to_vec());
        let tail = reducer.reduce(&tail, limits)?;
        let mut terms = vec![(lm, lc)];
        terms.extend(tail.into_terms());
        reduced.push(Polynomial::from_sorted_terms(ring, terms));
    }
    reduced.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    Ok(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};
    use crate::poly::parse::parse_polynomial;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ring(vars: &[&str]) -> Arc<Ring<Rationals>> {
        Ring::new(Rationals, vars.iter().copied(), MonomialOrder::DegRevLex).unwrap()
    }

    fn ideal<F: Field>(r: &Arc<Ring<F>>, gens: &[&str]) -> Ideal<F> {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(r, g).unwrap())).unwrap()
    }

    fn basis_strings<F: Field>(i: &Ideal<F>) -> Vec<String> {
        i.groebner_basis().unwrap().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x1", "x2"]);
        let p = |s| parse_polynomial(&r, s).unwrap();
        assert!(ideal(&r, &["x1"]).normal_form(&p("x1^2")).unwrap().is_zero());
        assert_eq!(ideal(&r, &["x2"]).normal_form(&p("x1^2+x2^2-1")).unwrap(), p("x1^2-1"));
        assert_eq!(ideal(&r, &["x1", "x2"]).normal_form(&p("1")).unwrap(), p("1"));
    }

    #[test]
    fn buchberger_examples() {
        let r = ring(&["x1", "x2"]);
        assert_eq!(basis_strings(&ideal(&r, &["x1"])), ["x1"]);
        assert_eq!(basis_strings(&ideal(&r, &["x1^2+x2^2-1", "x2"])), ["x2", "x1^2 - 1"]);
        assert_eq!(basis_strings(&ideal(&r, &["x1", "x1+1"])), ["1"]);
        assert!(ideal(&r, &[]).groebner_basis().unwrap().is_empty());
        assert!(ideal(&r, &["0"]).is_zero_ideal().unwrap());
    }

    #[test]
    fn textbook_basis() {
        // Cox-Little-O'Shea: (x^3 - 2xy, x^2 y - 2y^2 + x) under grlex
        let r = Ring::new(Rationals, ["x", "y"], MonomialOrder::GrLex).unwrap();
        let i = ideal(&r, &["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"]);
        let mut b = basis_strings(&i);
        b.sort();
        assert_eq!(b, ["x*y", "x^2", "y^2 - 1/2*x"]);
    }

    #[test]
    fn quotient_dimension_examples() {
        let r = ring(&["x1", "x2"]);
        assert_eq!(ideal(&r, &["x1^2-1", "x2"]).quotient_dimension(), Ok(2));
        assert_eq!(ideal(&r, &["x1", "x2"]).quotient_dimension(), Ok(1));
        assert_eq!(ideal(&r, &["x1"]).quotient_dimension(), Err(Error::InfiniteDimensional));
        assert_eq!(ideal(&r, &["1"]).quotient_dimension(), Ok(0));
    }

    #[test]
    fn krull_dimension_examples() {
        let r = ring(&["x1", "x2"]);
        assert_eq!(ideal(&r, &["x1*x2"]).krull_dimension(), Ok(1));
        assert_eq!(ideal(&r, &[]).krull_dimension(), Ok(2));
        assert_eq!(ideal(&r, &["x1", "x2"]).krull_dimension(), Ok(0));
        assert_eq!(ideal(&r, &["x1", "x1 - 1"]).krull_dimension(), Err(Error::UnitIdeal));
        assert_eq!(ideal(&r, &["x1", "x1 - 1"]).krull_dimension_or_empty(), Ok(-1));
    }

    #[test]
    fn hilbert_numerator_examples() {
        let r = ring(&["x1", "x2"]);
        assert_eq!(ideal(&r, &[]).hilbert_numerator().unwrap(), IntPoly::one());
        let r1 = ring(&["x1"]);
        assert_eq!(ideal(&r1, &["x1^2"]).hilbert_numerator().unwrap(), IntPoly::from_i64s(&[1, 0, -1]));
        assert_eq!(
            ideal(&r, &["x1^2", "x1*x2"]).hilbert_numerator().unwrap(),
            IntPoly::from_i64s(&[1, 0, -2, 1])
        );
        assert_eq!(ideal(&r, &["x1^2 + x2"]).hilbert_numerator(), Err(Error::NotHomogeneous));
    }

    #[test]
    fn hilbert_function_of_example_matches_hand_count() {
        let r = ring(&["x1", "x2"]);
        assert_eq!(ideal(&r, &["x1^2", "x1*x2"]).hilbert_function(5).unwrap(), [1, 2, 1, 1, 1, 1]);
    }

    /// Points of a zero-dimensional radical ideal over F_p, counted by
    /// exhaustive evaluation.
    fn count_points(i: &Ideal<PrimeField>, p: u64) -> usize {
        let n = i.ring().nvars();
        let total = p.pow(n as u32);
        (0..total)
            .filter(|&code| {
                let pt: Vec<u64> = (0..n).map(|k| (code / p.pow(k as u32)) % p).collect();
                i.generators().iter().all(|g| g.evaluate(&pt).unwrap() == 0)
            })
            .count()
    }

    #[test]
    fn quotient_dimension_counts_rational_points_of_split_radical_ideals() {
        // ideals of distinct F_p-rational points: (prod (x - a_i), y - h(x))
        let p = 101;
        let f = PrimeField::new(p).unwrap();
        let r = Ring::new(f, ["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let k = rng.gen_range(1..6);
            let mut roots: Vec<u64> = (0..p).collect();
            for i in 0..k {
                let j = rng.gen_range(i..roots.len());
                roots.swap(i, j);
            }
            let mut prod = Polynomial::one(&r);
            for a in &roots[..k] {
                prod = &prod * &parse_polynomial(&r, &format!("x - {a}")).unwrap();
            }
            let h = parse_polynomial(&r, &format!("y - {}*x^2 - {}", rng.gen_range(0..p), rng.gen_range(0..p))).unwrap();
            let i = Ideal::new(&r, [prod, h]).unwrap();
            assert_eq!(i.quotient_dimension().unwrap() as usize, count_points(&i, p));
            assert_eq!(i.quotient_dimension().unwrap() as usize, k);
        }
    }

    fn random_poly(r: &Arc<Ring<PrimeField>>, rng: &mut ChaCha8Rng, deg: u32, homogeneous: bool, density: f64) -> Polynomial<PrimeField> {
        let p = r.field().modulus();
        let degs: Vec<u32> = if homogeneous { vec![deg] } else { (0..=deg).collect() };
        let mut terms = Vec::new();
        for m in degs.iter().flat_map(|&d| r.monomials_of_degree(d)) {
            if rng.gen_bool(density) {
                terms.push((m, rng.gen_range(0..p)));
            }
        }
        Polynomial::from_terms(r, terms)
    }

    /// Independent route to the Hilbert function of a homogeneous ideal:
    /// rank of the span of all `monomial * generator` products in each degree.
    fn hilbert_function_by_linear_algebra(i: &Ideal<PrimeField>, max_degree: u32) -> Vec<u64> {
        let r = i.ring();
        let f = *r.field();
        (0..=max_degree)
            .map(|d| {
                let monos = r.monomials_of_degree(d);
                let mut rows: Vec<Vec<u64>> = Vec::new();
                for g in i.generators() {
                    let gd = g.total_degree().unwrap();
                    if gd > d {
                        continue;
                    }
                    for m in r.monomials_of_degree(d - gd) {
                        let prod = g.mul_term(&1, &m);
                        rows.push(monos.iter().map(|mm| prod.coefficient(mm)).collect());
                    }
                }
                let rank = crate::linalg::rank(&f, rows);
                (monos.len() - rank) as u64
            })
            .collect()
    }

    #[test]
    fn hilbert_numerator_agrees_with_linear_algebra_counts() {
        let f = PrimeField::new(32003).unwrap();
        let r = Ring::new(f, ["a", "b", "c"], MonomialOrder::DegRevLex).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..12 {
            let k = rng.gen_range(1..4);
            let gens: Vec<_> = (0..k)
                .map(|_| {
                    let d = rng.gen_range(1..4);
                    random_poly(&r, &mut rng, d, true, 0.5)
                })
                .collect();
            let i = Ideal::new(&r, gens).unwrap();
            let series = crate::series::RationalGF::over_one_minus_t(i.hilbert_numerator().unwrap(), 3);
            let by_series: Vec<u64> = series.expand(12).iter().map(|c| u64::try_from(c).unwrap()).collect();
            assert_eq!(by_series, i.hilbert_function(12).unwrap());
            assert_eq!(by_series, hilbert_function_by_linear_algebra(&i, 12));
        }
    }

    #[test]
    fn complete_intersection_hilbert_and_krull() {
        let f = PrimeField::new(32003).unwrap();
        let r = Ring::new(f, ["a", "b", "c", "d"], MonomialOrder::DegRevLex).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..8 {
            let k = rng.gen_range(1..4);
            let degs: Vec<u32> = (0..k).map(|_| rng.gen_range(1..4)).collect();
            let gens: Vec<_> = degs.iter().map(|&d| random_poly(&r, &mut rng, d, true, 1.0)).collect();
            let i = Ideal::new(&r, gens).unwrap();
            assert_eq!(i.krull_dimension().unwrap(), 4 - k);
            assert_eq!(i.hilbert_numerator().unwrap(), crate::series::complete_intersection_numerator(&degs));
        }
    }

    #[test]
    fn resource_guard_trips() {
        let r = ring(&["x1", "x2", "x3"]);
        let i = ideal(&r, &["x1^3 + x2^3 + x3^3 - 1", "x1*x2*x3 - 2", "x1 + x2^2 - x3"])
            .with_limits(GroebnerLimits { max_terms: 3, max_basis: 5000 });
        assert!(matches!(i.groebner_basis(), Err(Error::ResourceLimit(_))));
    }

    fn check_is_reduced_groebner_basis(i: &Ideal<PrimeField>) {
        let basis = i.groebner_basis().unwrap();
        let lms = i.leading_monomials().unwrap();
        for (k, g) in basis.iter().enumerate() {
            assert!(r_is_one(g.leading_coeff().unwrap()));
            for (m, _) in g.terms() {
                for (j, l) in lms.iter().enumerate() {
                    assert!(j == k || !l.divides(m), "{g} not reduced");
                }
            }
        }
        // S-pairs reduce to zero
        let red = Reducer::new(basis.iter().collect());
        for a in 0..basis.len() {
            for b in a + 1..basis.len() {
                let l = lms[a].lcm(&lms[b]);
                let s = s_polynomial(&basis[a], &basis[b], &l);
                assert!(red.reduce(&s, GroebnerLimits::default()).unwrap().is_zero());
            }
        }
        for g in i.generators() {
            assert!(i.contains(g).unwrap());
        }
    }

    fn r_is_one(c: &u64) -> bool {
        *c == 1
    }

    #[test]
    fn random_bases_are_reduced_and_unique_under_shuffles() {
        let f = PrimeField::new(32003).unwrap();
        let r = Ring::new(f, ["a", "b", "c"], MonomialOrder::DegRevLex).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let gens: Vec<_> = (0..3)
                .map(|_| {
                    let d = rng.gen_range(1..4);
                    random_poly(&r, &mut rng, d, false, 0.4)
                })
                .collect();
            let i = Ideal::new(&r, gens.clone()).unwrap();
            check_is_reduced_groebner_basis(&i);
            let mut shuffled = gens.clone();
            shuffled.reverse();
            shuffled.push(&gens[0] * &gens[1]);
            let j = Ideal::new(&r, shuffled).unwrap();
            assert_eq!(i.groebner_basis().unwrap(), j.groebner_basis().unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn quotient_dimension_is_order_invariant(seed in 0u64..10_000) {
            let f = PrimeField::new(32003).unwrap();
            let r = Ring::new(f, ["a", "b"], MonomialOrder::DegRevLex).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let gens: Vec<_> = (0..2).map(|_| {
                let d = rng.gen_range(1..4);
                random_poly(&r, &mut rng, d, false, 0.6)
            }).collect();
            let i = Ideal::new(&r, gens).unwrap();
            let lex = i.with_order(MonomialOrder::Lex).unwrap();
            let grlex = i.with_order(MonomialOrder::GrLex).unwrap();
            prop_assert_eq!(i.quotient_dimension(), lex.quotient_dimension());
            prop_assert_eq!(i.quotient_dimension(), grlex.quotient_dimension());
        }
    }
}
