use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on ring size. Desk-scale systems use at most n + r + 1 variables.
pub const MAX_VARS: usize = 16;

/// A power product `x_1^a_1 ... x_k^a_k` with cached total degree.
///
/// Exponents beyond the ring's variable count are always zero, so monomials
/// of different rings compare consistently.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            degree: 0,
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exps.len()));
        }
        let mut m = Monomial::one();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e)
                .map_err(|_| Error::ResourceLimit(format!("exponent {e} too large")))?;
            m.degree += e;
        }
        Ok(m)
    }

    pub fn var(index: usize) -> Self {
        let mut m = Monomial::one();
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    #[inline]
    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e += o;
        }
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    /// `self | other`
    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / divisor` when exact.
    #[inline]
    pub fn checked_div(&self, divisor: &Self) -> Option<Self> {
        if !divisor.divides(self) {
            return None;
        }
        let mut exps = self.exps;
        for (e, d) in exps.iter_mut().zip(divisor.exps.iter()) {
            *e -= d;
        }
        Some(Monomial {
            exps,
            degree: self.degree - divisor.degree,
        })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut exps = self.exps;
        let mut degree = 0;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = (*e).max(*o);
            degree += *e as u32;
        }
        Monomial { exps, degree }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut exps = self.exps;
        let mut degree = 0;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = (*e).min(*o);
            degree += *e as u32;
        }
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }

    /// Bitmask of [`Monomial::support`].
    pub fn support_mask(&self) -> u32 {
        self.support().fold(0, |m, i| m | (1 << i))
    }

    /// If this is a pure power `x_i^e` with `e > 0`, returns `(i, e)`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut it = self.support();
        let i = it.next()?;
        if it.next().is_some() {
            return None;
        }
        Some((i, self.exps[i] as u32))
    }

    pub(crate) fn with_exponent(mut self, index: usize, e: u32) -> Self {
        self.degree = self.degree - self.exps[index] as u32 + e;
        self.exps[index] = e as u16;
        self
    }

    pub fn format(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .support()
            .map(|i| match self.exps[i] {
                1 => vars[i].clone(),
                e => format!("{}^{}", vars[i], e),
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
        write!(f, "Monomial{:?}", &self.exps[..last])
    }
}

/// Admissible monomial orders. Variables are prioritized in declaration
/// order: `x_1 > x_2 > ... > x_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    GrLex,
    Lex,
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::GrLex => a.degree.cmp(&b.degree).then_with(|| a.exps.cmp(&b.exps)),
            MonomialOrder::DegRevLex => a.degree.cmp(&b.degree).then_with(|| {
                for i in (0..MAX_VARS).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn is_graded(&self) -> bool {
        !matches!(self, MonomialOrder::Lex)
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::GrLex => "grlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "degrevlex" => Ok(MonomialOrder::DegRevLex),
            "grlex" => Ok(MonomialOrder::GrLex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(format!("unknown monomial order `{other}`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn order_examples() {
        use Ordering::*;
        // degrevlex: x1*x3 < x2^2 in 3 variables
        assert_eq!(MonomialOrder::DegRevLex.cmp(&mono(&[1, 0, 1]), &mono(&[0, 2, 0])), Less);
        assert_eq!(MonomialOrder::GrLex.cmp(&mono(&[1, 0, 1]), &mono(&[0, 2, 0])), Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&mono(&[1, 0, 0]), &mono(&[0, 5, 5])), Greater);
        assert_eq!(MonomialOrder::DegRevLex.cmp(&mono(&[1, 0]), &mono(&[0, 1])), Greater);
    }

    #[test]
    fn lcm_and_division() {
        let a = mono(&[2, 1, 0]);
        let b = mono(&[1, 3, 1]);
        assert_eq!(a.lcm(&b), mono(&[2, 3, 1]));
        assert_eq!(a.gcd(&b), mono(&[1, 1, 0]));
        assert_eq!(a.lcm(&b).checked_div(&a), Some(mono(&[0, 2, 1])));
        assert_eq!(a.checked_div(&b), None);
        assert!(!a.is_coprime(&b));
        assert!(mono(&[2, 0]).is_coprime(&mono(&[0, 1])));
        assert_eq!(mono(&[0, 4, 0]).as_pure_power(), Some((1, 4)));
        assert_eq!(mono(&[1, 4, 0]).as_pure_power(), None);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..4, 4).prop_map(|e| mono(&e))
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_and_refine_degree(u in arb_mono(), v in arb_mono(), w in arb_mono()) {
            for ord in [MonomialOrder::DegRevLex, MonomialOrder::GrLex, MonomialOrder::Lex] {
                let c = ord.cmp(&u, &v);
                prop_assert_eq!(ord.cmp(&u.mul(&w), &v.mul(&w)), c);
                prop_assert_eq!(c == Ordering::Equal, u == v);
                prop_assert_eq!(ord.cmp(&Monomial::one(), &u) != Ordering::Greater, true);
                if ord.is_graded() && u.degree() != v.degree() {
                    prop_assert_eq!(c, u.degree().cmp(&v.degree()));
                }
            }
        }
    }
}
