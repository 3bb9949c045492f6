//! Sparse multivariate polynomials over an exact [`Field`].

mod monomial;
pub mod parse;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use monomial::{Monomial, MonomialOrder, MAX_VARS};

use crate::arith::Field;
use crate::error::{Error, Result};

/// Name of the homogenizing variable; user variables may not use it.
pub const HOMOGENIZING_VAR: &str = "x0";

/// A polynomial ring `K[v_1, ..., v_k]` together with the monomial order
/// used to sort term lists.
#[derive(Debug, Clone, PartialEq)]
pub struct Ring<F: Field> {
    field: F,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl<F: Field> Ring<F> {
    pub fn new<S: Into<String>>(
        field: F,
        vars: impl IntoIterator<Item = S>,
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables(vars.len()));
        }
        Ok(Arc::new(Ring { field, vars, order }))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(Ring {
            field: self.field.clone(),
            vars: self.vars.clone(),
            order,
        })
    }

    /// The ring with `x0` prepended.
    pub fn homogenized(&self) -> Result<Arc<Self>> {
        Ring::new(
            self.field.clone(),
            std::iter::once(HOMOGENIZING_VAR.to_string()).chain(self.vars.iter().cloned()),
            self.order,
        )
    }

    /// The ring with extra variables appended.
    pub fn extended<S: Into<String>>(&self, extra: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        Ring::new(
            self.field.clone(),
            self.vars.iter().cloned().chain(extra.into_iter().map(Into::into)),
            self.order,
        )
    }

    /// All monomials of total degree `deg`, in descending ring order.
    pub fn monomials_of_degree(&self, deg: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        if n == 0 {
            if deg == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        let mut exps = vec![0u32; n];
        fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = exps.len();
            if i == n - 1 {
                exps[i] = left;
                out.push(Monomial::from_exponents(exps).expect("within MAX_VARS"));
                return;
            }
            for e in (0..=left).rev() {
                exps[i] = e;
                rec(i + 1, left - e, exps, out);
            }
        }
        rec(0, deg, &mut exps, &mut out);
        out.sort_by(|a, b| self.order.cmp(b, a));
        out
    }
}

#[inline]
fn same_ring<F: Field>(a: &Arc<Ring<F>>, b: &Arc<Ring<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A polynomial as a strictly descending list of `(monomial, coefficient)`
/// terms with nonzero coefficients.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<Ring<F>>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<Ring<F>>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<Ring<F>>, c: F::Elem) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn monomial(ring: &Arc<Ring<F>>, m: Monomial, c: F::Elem) -> Self {
        let terms = if ring.field.is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<Ring<F>>, index: usize) -> Result<Self> {
        if index >= ring.nvars() {
            return Err(Error::VariableOutOfRange {
                index,
                nvars: ring.nvars(),
            });
        }
        Ok(Self::monomial(ring, Monomial::var(index), ring.field.one()))
    }

    /// Builds a canonical polynomial from arbitrary terms (repeats are
    /// combined, zeros dropped).
    pub fn from_terms(ring: &Arc<Ring<F>>, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let field = &ring.field;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        let order = ring.order;
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps an already canonical term list.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring<F>>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !ring.field.is_zero(c)));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.field().is_one(&self.terms[0].1)
    }

    pub fn leading_term(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    /// Coefficient of `m` (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        let order = self.ring.order;
        match self.terms.binary_search_by(|(t, _)| order.cmp(m, t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field().zero(),
        }
    }

    /// Total degree; the zero polynomial has none.
    pub fn total_degree(&self) -> Result<u32> {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    /// `self + c * m * other`, a linear merge of two sorted term lists.
    pub fn add_scaled(&self, c: &F::Elem, m: &Monomial, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let field = &self.ring.field;
        if field.is_zero(c) || other.is_zero() {
            return Ok(self.clone());
        }
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(bm, bc)| (bm.mul(m), field.mul(bc, c))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some((am, ac)), Some((bm, bc))) => match order.cmp(am, bm) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
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
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: out,
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(&self.field().one(), &Monomial::one(), other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let minus_one = self.field().neg(&self.field().one());
        self.add_scaled(&minus_one, &Monomial::one(), other)
    }

    /// Term-by-term product with hash merge.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Ok(self.mul_term(c, m));
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(other.mul_term(c, m));
        }
        let field = &self.ring.field;
        let products = self
            .terms
            .iter()
            .flat_map(|(am, ac)| other.terms.iter().map(move |(bm, bc)| (am.mul(bm), field.mul(ac, bc))));
        Ok(Self::from_terms(&self.ring, products))
    }

    /// `c * m * self`; order is preserved so no re-sort is needed.
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Self {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(tm, tc)| (tm.mul(m), field.mul(tc, c))).collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.mul_term(c, &Monomial::one())
    }

    pub fn neg(&self) -> Self {
        let field = &self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, field.neg(c))).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if self.field().is_one(c) => self.clone(),
            Some(c) => self.scale(&self.field().inv(c).expect("leading coefficient is nonzero")),
        }
    }

    /// Formal partial derivative `d/dv_index`.
    pub fn partial_derivative(&self, index: usize) -> Result<Self> {
        let nvars = self.ring.nvars();
        if index >= nvars {
            return Err(Error::VariableOutOfRange { index, nvars });
        }
        let field = &self.ring.field;
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(index);
            if e == 0 {
                return None;
            }
            let coeff = field.mul(c, &field.from_u64(e as u64));
            Some((m.with_exponent(index, e - 1), coeff))
        });
        Ok(Self::from_terms(&self.ring, terms))
    }

    /// All first partial derivatives in variable order.
    pub fn gradient(&self) -> Vec<Self> {
        (0..self.ring.nvars())
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// The homogeneous component of the top total degree.
    pub fn leading_form(&self) -> Result<Self> {
        let d = self.total_degree()?;
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).cloned();
        Ok(Self::from_terms(&self.ring, terms))
    }

    /// Homogeneous component of degree `d` (possibly zero).
    pub fn homogeneous_component(&self, d: u32) -> Self {
        let terms: Vec<_> = self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// `x0^deg * self(x/x0)` in the ring with `x0` prepended.
    pub fn homogenize(&self) -> Result<Self> {
        self.homogenize_in(&self.ring.homogenized()?)
    }

    /// As [`Polynomial::homogenize`] into an existing homogenized ring
    /// whose first variable is the homogenizing one.
    pub fn homogenize_in(&self, target: &Arc<Ring<F>>) -> Result<Self> {
        let d = self.total_degree()?;
        if target.nvars() != self.ring.nvars() + 1 {
            return Err(Error::MixedRings);
        }
        let n = self.ring.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![d - m.degree()];
            e.extend(m.exponents(n));
            (Monomial::from_exponents(&e).expect("within MAX_VARS"), c.clone())
        });
        Ok(Self::from_terms(target, terms))
    }

    /// Moves the polynomial into `target`, sending variable `i` to
    /// `var_map[i]`. Variables mapped to `None` must not occur.
    pub fn embed(&self, target: &Arc<Ring<F>>, var_map: &[Option<usize>]) -> Result<Self> {
        let n = self.ring.nvars();
        if var_map.len() != n || target.field != self.ring.field {
            return Err(Error::MixedRings);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (i, slot) in var_map.iter().enumerate() {
                let ex = m.exponent(i);
                match slot {
                    Some(j) if *j < e.len() => e[*j] += ex,
                    Some(j) => {
                        return Err(Error::VariableOutOfRange {
                            index: *j,
                            nvars: target.nvars(),
                        })
                    }
                    None if ex > 0 => return Err(Error::MixedRings),
                    None => {}
                }
            }
            terms.push((Monomial::from_exponents(&e)?, c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Same polynomial re-sorted for another ring over the same variables.
    pub fn to_ring(&self, target: &Arc<Ring<F>>) -> Result<Self> {
        if target.vars != self.ring.vars || target.field != self.ring.field {
            return Err(Error::MixedRings);
        }
        Ok(Self::from_terms(target, self.terms.iter().cloned()))
    }

    /// Substitutes a field value for one variable, staying in the same ring.
    pub fn substitute(&self, index: usize, value: &F::Elem) -> Result<Self> {
        let nvars = self.ring.nvars();
        if index >= nvars {
            return Err(Error::VariableOutOfRange { index, nvars });
        }
        let field = &self.ring.field;
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.exponent(index);
            (m.with_exponent(index, 0), field.mul(c, &field.pow(value, e as u64)))
        });
        Ok(Self::from_terms(&self.ring, terms))
    }

    /// `self(images[0], ..., images[k-1])`, all images in one ring.
    pub fn compose(&self, images: &[Self]) -> Result<Self> {
        let n = self.ring.nvars();
        if images.len() != n {
            return Err(Error::ShapeMismatch(format!("{} images for {} variables", images.len(), n)));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        if images.iter().any(|p| !same_ring(&p.ring, &target)) || target.field != self.ring.field {
            return Err(Error::MixedRings);
        }
        let mut powers: Vec<Vec<Self>> = images.iter().map(|p| vec![Self::one(&target), p.clone()]).collect();
        let mut acc = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(&target, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(i) as usize;
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &images[i];
                    pw.push(next);
                }
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(Error::ShapeMismatch(format!("point of length {} for {} variables", point.len(), n)));
        }
        let field = &self.ring.field;
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in m.support() {
                t = field.mul(&t, &field.pow(&point[i], m.exponent(i) as u64));
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Euler's identity `sum_j x_j dg/dx_j = deg(g) * g` for homogeneous `g`.
    pub fn euler_check(&self) -> Result<bool> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        if self.is_zero() {
            return Ok(true);
        }
        let d = self.total_degree()?;
        let mut lhs = Self::zero(&self.ring);
        for j in 0..self.ring.nvars() {
            let xj = Self::var(&self.ring, j)?;
            lhs = &lhs + &(&xj * &self.partial_derivative(j)?);
        }
        let rhs = self.scale(&self.field().from_u64(d as u64));
        Ok(lhs == rhs)
    }

    /// Largest exponent of any variable, used to size enumerations.
    pub fn max_exponent(&self) -> u32 {
        self.terms
            .iter()
            .flat_map(|(m, _)| (0..self.ring.nvars()).map(move |i| m.exponent(i)))
            .max()
            .unwrap_or(0)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut cs = field.format(c);
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{cs}")?;
            } else if cs == "1" {
                write!(f, "{}", m.format(&self.ring.vars))?;
            } else {
                write!(f, "{}*{}", cs, m.format(&self.ring.vars))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<F: Field> std::ops::Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.checked_add(rhs).expect("polynomials from different rings")
    }
}

impl<F: Field> std::ops::Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.checked_sub(rhs).expect("polynomials from different rings")
    }
}

impl<F: Field> std::ops::Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.checked_mul(rhs).expect("polynomials from different rings")
    }
}

impl<F: Field> std::ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn q2() -> Arc<Ring<Rationals>> {
        Ring::new(Rationals, ["x1", "x2"], MonomialOrder::DegRevLex).unwrap()
    }

    fn p<F: Field>(ring: &Arc<Ring<F>>, s: &str) -> Polynomial<F> {
        parse::parse_polynomial(ring, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = q2();
        let prod = &p(&r, "x1 + x2") * &p(&r, "x1 - x2");
        assert_eq!(prod, p(&r, "x1^2 - x2^2"));
        assert_eq!(&prod + &Polynomial::zero(&r), prod);
    }

    #[test]
    fn frobenius_in_char_two() {
        let r = Ring::new(PrimeField::new(2).unwrap(), ["x1", "x2"], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(p(&r, "x1 + x2").pow(2), p(&r, "x1^2 + x2^2"));
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = p(&q2(), "x1");
        let other = Ring::new(Rationals, ["a", "b"], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(a.checked_add(&p(&other, "a")), Err(Error::MixedRings));
    }

    #[test]
    fn derivatives() {
        let r = q2();
        assert_eq!(p(&r, "x1^3 + x2").partial_derivative(0).unwrap(), p(&r, "3*x1^2"));
        assert_eq!(p(&r, "x1*x2").partial_derivative(1).unwrap(), p(&r, "x1"));
        let f3 = Ring::new(PrimeField::new(3).unwrap(), ["x1", "x2"], MonomialOrder::DegRevLex).unwrap();
        assert!(p(&f3, "x1^3").partial_derivative(0).unwrap().is_zero());
        assert!(p(&r, "x1").partial_derivative(2).is_err());
    }

    #[test]
    fn leading_forms() {
        let r = q2();
        assert_eq!(p(&r, "x1^2+x2^2-1").leading_form().unwrap(), p(&r, "x1^2+x2^2"));
        assert_eq!(p(&r, "x2-x1^2").leading_form().unwrap(), p(&r, "-x1^2"));
        assert_eq!(p(&r, "x1+2*x2").leading_form().unwrap(), p(&r, "x1+2*x2"));
        assert_eq!(Polynomial::zero(&r).leading_form(), Err(Error::ZeroPolynomial));
        assert_eq!(Polynomial::zero(&r).total_degree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn homogenization_examples() {
        let r = q2();
        let h = r.homogenized().unwrap();
        assert_eq!(h.vars()[0], "x0");
        assert_eq!(p(&r, "x1^2+x2^2-1").homogenize().unwrap(), p(&h, "x1^2+x2^2-x0^2"));
        assert_eq!(p(&r, "x2-x1^2").homogenize().unwrap(), p(&h, "x0*x2-x1^2"));
        assert_eq!(p(&r, "5").homogenize().unwrap(), p(&h, "5"));
        assert_eq!(Polynomial::zero(&r).homogenize(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn euler_examples() {
        assert!(p(&q2(), "x1^2+x2^2").euler_check().unwrap());
        let f5 = Ring::new(PrimeField::new(5).unwrap(), ["x1", "x2"], MonomialOrder::DegRevLex).unwrap();
        assert!(p(&f5, "x1*x2").euler_check().unwrap());
        let f3 = Ring::new(PrimeField::new(3).unwrap(), ["x1", "x2"], MonomialOrder::DegRevLex).unwrap();
        assert!(p(&f3, "x1^3").euler_check().unwrap());
        assert_eq!(p(&q2(), "x1^2 + x2").euler_check(), Err(Error::NotHomogeneous));
    }

    #[test]
    fn substitution_and_composition() {
        let r = q2();
        let f = p(&r, "x1^2*x2 + 3*x2 - 1");
        let two = Rationals.from_i64(2);
        assert_eq!(f.substitute(1, &two).unwrap(), p(&r, "2*x1^2 + 5"));
        let swapped = f.compose(&[p(&r, "x2"), p(&r, "x1")]).unwrap();
        assert_eq!(swapped, p(&r, "x2^2*x1 + 3*x1 - 1"));
        assert_eq!(f.evaluate(&[Rationals.from_i64(1), two]).unwrap(), Rationals.from_i64(7));
    }

    #[test]
    fn display_round_trips_through_parser() {
        let r = q2();
        for s in ["x1^2 + x2^2 - 1", "-2*x2", "0", "x1*x2 - 7", "-1"] {
            assert_eq!(p(&r, s).to_string(), s);
        }
    }

    #[test]
    fn monomials_of_degree_count() {
        let r = Ring::new(Rationals, ["a", "b", "c"], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(r.monomials_of_degree(0).len(), 1);
        assert_eq!(r.monomials_of_degree(4).len(), 15);
    }

    fn arb_poly(ring: Arc<Ring<PrimeField>>, max_deg: u32) -> impl Strategy<Value = Polynomial<PrimeField>> {
        let n = ring.nvars();
        prop::collection::vec((prop::collection::vec(0..=max_deg, n), 0u64..101), 1..8).prop_map(move |ts| {
            let terms = ts
                .into_iter()
                .map(|(e, c)| (Monomial::from_exponents(&e).unwrap(), c));
            Polynomial::from_terms(&ring, terms)
        })
    }

    fn f101(order: MonomialOrder) -> Arc<Ring<PrimeField>> {
        Ring::new(PrimeField::new(101).unwrap(), ["x1", "x2", "x3"], order).unwrap()
    }

    proptest! {
        #[test]
        fn homogenize_then_dehomogenize(f in arb_poly(f101(MonomialOrder::DegRevLex), 3)) {
            prop_assume!(!f.is_zero());
            let ring = f.ring().clone();
            let h = f.homogenize().unwrap();
            prop_assert!(h.is_homogeneous());
            prop_assert_eq!(h.total_degree().unwrap(), f.total_degree().unwrap());
            let back = h.substitute(0, &1).unwrap().embed(&ring, &[None, Some(0), Some(1), Some(2)]).unwrap();
            prop_assert_eq!(&back, &f);
            let at_infinity = h.substitute(0, &0).unwrap().embed(&ring, &[None, Some(0), Some(1), Some(2)]).unwrap();
            prop_assert_eq!(at_infinity, f.leading_form().unwrap());
        }

        #[test]
        fn product_independent_of_order(
            a in arb_poly(f101(MonomialOrder::DegRevLex), 3),
            b in arb_poly(f101(MonomialOrder::DegRevLex), 3),
        ) {
            let lex = f101(MonomialOrder::Lex);
            let prod_lex = &a.to_ring(&lex).unwrap() * &b.to_ring(&lex).unwrap();
            let mut t1: Vec<_> = (&a * &b).into_terms();
            let mut t2: Vec<_> = prod_lex.into_terms();
            t1.sort_by_key(|(m, _)| m.exponents(3));
            t2.sort_by_key(|(m, _)| m.exponents(3));
            prop_assert_eq!(t1, t2);
        }

        #[test]
        fn euler_holds_for_homogeneous_components(f in arb_poly(f101(MonomialOrder::DegRevLex), 3)) {
            let d = f.terms().first().map_or(0, |(m, _)| m.degree());
            prop_assert!(f.homogeneous_component(d).euler_check().unwrap());
        }

        #[test]
        fn ring_axioms(
            a in arb_poly(f101(MonomialOrder::DegRevLex), 2),
            b in arb_poly(f101(MonomialOrder::DegRevLex), 2),
            c in arb_poly(f101(MonomialOrder::DegRevLex), 2),
        ) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&(&a - &b) + &b) == a);
        }
    }
}
