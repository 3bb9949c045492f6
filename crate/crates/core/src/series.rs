//! Exact power-series arithmetic for rational generating functions of the
//! form `N(t) / prod (1 - d t)^m`.
//!
//! All coefficients are arbitrary-precision integers, independent of the
//! working field.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Dense polynomial in `t` with integer coefficients, lowest degree first
/// and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// `t^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    /// `1 - d t^k`
    pub fn one_minus(d: i64, k: usize) -> Self {
        &IntPoly::one() - &(&IntPoly::monomial(k) * &IntPoly::constant(BigInt::from(d)))
    }

    /// `(1 - t)^e`
    pub fn one_minus_t_pow(e: u32) -> Self {
        IntPoly::one_minus(1, 1).pow(e)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(IntPoly::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Exact quotient by `(1 - t)`, or `None` when `p(1) != 0`.
    pub fn div_one_minus_t(&self) -> Option<Self> {
        if !self.eval(&BigInt::one()).is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        // p = (1 - t) q  =>  q_k = sum_{i <= k} p_i
        let mut q = Vec::with_capacity(self.coeffs.len() - 1);
        let mut acc = BigInt::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            acc += c;
            q.push(acc.clone());
        }
        Some(IntPoly::new(q))
    }

    /// Coefficients `0..=k`, zero-padded.
    pub fn truncated(&self, k: usize) -> Vec<BigInt> {
        (0..=k).map(|i| self.coeff(i)).collect()
    }
}

impl std::ops::Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: Self) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl std::ops::Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: Self) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl std::ops::Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: Self) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// JSON encoding for exact integers: a number when `|x| <= 2^53`,
/// otherwise a decimal string.
pub mod json_int {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::Serializer;

    const SAFE: i64 = 1 << 53;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match x.to_i64() {
            Some(v) if (-SAFE..=SAFE).contains(&v) => s.serialize_i64(v),
            _ => s.serialize_str(&x.to_string()),
        }
    }

    pub fn option<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn unsigned<S: Serializer>(x: &u64, s: S) -> Result<S::Ok, S::Error> {
        if *x <= SAFE as u64 {
            s.serialize_u64(*x)
        } else {
            s.serialize_str(&x.to_string())
        }
    }
}

/// `numerator(t) / prod_d (1 - d t)^{m_d}`, kept factored.
///
/// The factor with `d = 1` is the `(1 - t)` power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    numerator: IntPoly,
    factors: BTreeMap<u64, u32>,
}

impl RationalGF {
    /// Factors with `d = 0` are the constant 1 and are dropped.
    pub fn new(numerator: IntPoly, factors: impl IntoIterator<Item = (u64, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (d, m) in factors {
            if d > 0 && m > 0 {
                *map.entry(d).or_insert(0) += m;
            }
        }
        RationalGF {
            numerator,
            factors: map,
        }
    }

    /// Hilbert-series shape `N(t) / (1 - t)^n`.
    pub fn over_one_minus_t(numerator: IntPoly, n: u32) -> Self {
        RationalGF::new(numerator, [(1, n)])
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.numerator
    }

    /// `(d, multiplicity)` pairs in increasing `d`.
    pub fn factors(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(d, m)| (*d, *m))
    }

    /// Expansion coefficients of `t^0 ..= t^k`.
    ///
    /// Each `(1 - d t)^{-1}` acts on a truncated series by the prefix
    /// recurrence `b_j = a_j + d b_{j-1}`.
    pub fn expand(&self, k: usize) -> Vec<BigInt> {
        let mut a = self.numerator.truncated(k);
        for (&d, &m) in &self.factors {
            let d = BigInt::from(d);
            for _ in 0..m {
                for j in 1..=k {
                    let prev = &a[j - 1] * &d;
                    a[j] += prev;
                }
            }
        }
        a
    }

    /// Coefficient of `t^k` in the expansion at `t = 0`.
    pub fn series_coefficient(&self, k: usize) -> BigInt {
        self.expand(k).pop().expect("k + 1 coefficients")
    }

    /// Multiplies the numerator, leaving the denominator untouched.
    pub fn multiply(&self, p: &IntPoly) -> Self {
        RationalGF {
            numerator: &self.numerator * p,
            factors: self.factors.clone(),
        }
    }

    /// Cancels `(1 - t)` denominator factors against the numerator.
    pub fn simplified(&self) -> Self {
        let mut out = self.clone();
        while let Some(m) = out.factors.get(&1).copied().filter(|&m| m > 0) {
            match out.numerator.div_one_minus_t() {
                Some(q) if !out.numerator.is_zero() => {
                    out.numerator = q;
                    if m == 1 {
                        out.factors.remove(&1);
                    } else {
                        out.factors.insert(1, m - 1);
                    }
                }
                _ => break,
            }
        }
        out
    }
}

/// `gf * p`
pub fn gf_multiply(gf: &RationalGF, p: &IntPoly) -> RationalGF {
    gf.multiply(p)
}

/// `d_1 ... d_r (1 - t)^n / prod_{i=1}^{r+1} (1 - d_i t)` for
/// `degrees = [d_1, ..., d_r, d_{r+1}]`.
pub fn milnor_gf(n: u32, degrees: &[u32]) -> RationalGF {
    assert!(degrees.len() >= 2, "need constraint degrees and the objective degree");
    let r = degrees.len() - 1;
    let scale: BigInt = degrees[..r].iter().map(|&d| BigInt::from(d)).product();
    let numerator = &IntPoly::constant(scale) * &IntPoly::one_minus_t_pow(n);
    RationalGF::new(numerator, degrees.iter().map(|&d| (d as u64, 1)))
}

/// Coefficient of `t^{n-r}` in [`milnor_gf`].
pub fn predicted_milnor_sum(n: u32, degrees: &[u32]) -> BigInt {
    let r = degrees.len() - 1;
    milnor_gf(n, degrees).series_coefficient(n as usize - r)
}

/// `prod_i (1 - t^{d_i})`
pub fn complete_intersection_numerator(degrees: &[u32]) -> IntPoly {
    degrees
        .iter()
        .fold(IntPoly::one(), |acc, &d| &acc * &IntPoly::one_minus(1, d as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent route: expand the denominator as a polynomial and run
    /// power-series long division.
    fn long_division(gf: &RationalGF, k: usize) -> Vec<BigInt> {
        let denom = gf
            .factors()
            .fold(IntPoly::one(), |acc, (d, m)| &acc * &IntPoly::one_minus(d as i64, 1).pow(m));
        assert!(denom.coeff(0).is_one());
        let mut c: Vec<BigInt> = Vec::with_capacity(k + 1);
        for j in 0..=k {
            let mut v = gf.numerator().coeff(j);
            for i in 1..=j {
                v -= denom.coeff(i) * &c[j - i];
            }
            c.push(v);
        }
        c
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn coefficient_examples() {
        let g = RationalGF::new(&IntPoly::from_i64s(&[2]) * &IntPoly::one_minus_t_pow(2), [(2, 1), (1, 1)]);
        assert_eq!(g.series_coefficient(1), big(2));
        let g = RationalGF::new(&IntPoly::from_i64s(&[3]) * &IntPoly::one_minus_t_pow(3), [(3, 1), (1, 1)]);
        assert_eq!(g.series_coefficient(2), big(12));
        assert_eq!(g.series_coefficient(0), g.numerator().coeff(0));
    }

    #[test]
    fn multiply_examples() {
        let g = RationalGF::over_one_minus_t(IntPoly::one(), 1);
        assert_eq!(gf_multiply(&g, &IntPoly::one()), g);
        let h = gf_multiply(&g, &IntPoly::one_minus(1, 1));
        assert_eq!(h.expand(5), vec![big(1), big(0), big(0), big(0), big(0), big(0)]);
        let g2 = RationalGF::over_one_minus_t(IntPoly::one(), 2);
        let h2 = gf_multiply(&g2, &IntPoly::one_minus(1, 2));
        assert_eq!(h2.expand(6)[1..], [big(2), big(2), big(2), big(2), big(2), big(2)]);
    }

    #[test]
    fn milnor_gf_examples() {
        let g = milnor_gf(2, &[2, 1]);
        assert_eq!(g.numerator(), &IntPoly::from_i64s(&[2, -4, 2]));
        assert_eq!(g.factors().collect::<Vec<_>>(), vec![(1, 1), (2, 1)]);
        assert_eq!(predicted_milnor_sum(2, &[2, 1]), big(2));
        assert_eq!(predicted_milnor_sum(3, &[3, 1]), big(12));
        assert_eq!(predicted_milnor_sum(3, &[1, 1, 1]), big(0));
        let simple = milnor_gf(3, &[1, 1, 1]).simplified();
        assert_eq!(simple, RationalGF::new(IntPoly::one(), []));
    }

    #[test]
    fn all_linear_degrees_predict_nothing() {
        for n in 2..7u32 {
            for r in 1..n as usize {
                let degrees = vec![1; r + 1];
                assert_eq!(predicted_milnor_sum(n, &degrees), big(0), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn complete_intersection_numerators() {
        assert_eq!(complete_intersection_numerator(&[2, 1]), IntPoly::from_i64s(&[1, -1, -1, 1]));
        assert_eq!(IntPoly::from_i64s(&[1, 0, -2, 1]).to_string(), "1 - 2*t^2 + t^3");
    }

    #[test]
    fn exact_division_by_one_minus_t() {
        let p = &IntPoly::from_i64s(&[3, 1, 4]) * &IntPoly::one_minus_t_pow(2);
        assert_eq!(p.div_one_minus_t().unwrap().div_one_minus_t().unwrap(), IntPoly::from_i64s(&[3, 1, 4]));
        assert!(IntPoly::from_i64s(&[1, 1]).div_one_minus_t().is_none());
    }

    proptest! {
        #[test]
        fn expansion_matches_long_division(
            num in prop::collection::vec(-20i64..20, 0..6),
            factors in prop::collection::vec((1u64..5, 1u32..3), 0..4),
            k in 0usize..12,
        ) {
            let gf = RationalGF::new(IntPoly::from_i64s(&num), factors);
            prop_assert_eq!(gf.expand(k), long_division(&gf, k));
        }
    }
}
