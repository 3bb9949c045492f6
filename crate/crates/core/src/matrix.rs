//! Dense matrices of polynomials.

use std::fmt;
use std::sync::Arc;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};

/// All `k`-subsets of `0..n` as increasing index vectors, in
/// lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// A `rows x cols` matrix of polynomials over one ring, row-major.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix<F: Field> {
    ring: Arc<Ring<F>>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn zeros(ring: &Arc<Ring<F>>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn from_rows(ring: &Arc<Ring<F>>, rows: Vec<Vec<Polynomial<F>>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            for e in row {
                if **e.ring() != **ring {
                    return Err(Error::MixedRings);
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<F>) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Polynomial<F>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Polynomial<F>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &a.checked_mul(b)?;
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Determinant of the submatrix on the given rows and columns, by
    /// cofactor expansion along the first chosen row.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial<F> {
        debug_assert_eq!(rows.len(), cols.len());
        match rows.len() {
            0 => Polynomial::one(&self.ring),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = Polynomial::zero(&self.ring);
                for (k, &c) in cols.iter().enumerate() {
                    let entry = self.get(rows[0], c);
                    if entry.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = entry * &self.minor(&rows[1..], &rest);
                    acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    pub fn determinant(&self) -> Result<Polynomial<F>> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.minor(&idx, &idx))
    }

    /// All `k x k` minors: row subsets outer, column subsets inner, both in
    /// lexicographic order. Zero minors are kept.
    pub fn minors(&self, k: usize) -> Result<Vec<Polynomial<F>>> {
        if k > self.rows.min(self.cols) {
            return Err(Error::KTooLarge {
                k,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let row_sets = combinations(self.rows, k);
        let col_sets = combinations(self.cols, k);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                out.push(self.minor(rs, cs));
            }
        }
        Ok(out)
    }

    /// Entry-wise evaluation at a point.
    pub fn evaluate(&self, point: &[F::Elem]) -> Result<Vec<Vec<F::Elem>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.evaluate(point)).collect())
            .collect()
    }

    /// Entry-wise change of ring.
    pub fn map_entries(&self, ring: &Arc<Ring<F>>, f: impl Fn(&Polynomial<F>) -> Result<Polynomial<F>>) -> Result<Self> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }
}

impl<F: Field> fmt::Display for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix {}x{}\n{}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rationals;
    use crate::poly::parse::parse_polynomial;
    use crate::poly::MonomialOrder;

    fn mat(ring: &Arc<Ring<Rationals>>, rows: &[&[&str]]) -> PolyMatrix<Rationals> {
        PolyMatrix::from_rows(
            ring,
            rows.iter()
                .map(|r| r.iter().map(|s| parse_polynomial(ring, s).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn combination_order() {
        assert_eq!(combinations(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
        for n in 0..7 {
            for k in 0..=n {
                let c = combinations(n, k);
                let binom = (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
                assert_eq!(c.len(), binom);
            }
        }
    }

    #[test]
    fn minor_examples() {
        let r = Ring::new(Rationals, ["x1", "x2"], MonomialOrder::DegRevLex).unwrap();
        let m = mat(&r, &[&["2*x1", "2*x2"], &["1", "0"]]);
        assert_eq!(m.minors(2).unwrap(), vec![parse_polynomial(&r, "-2*x2").unwrap()]);
        let ones: Vec<String> = m.minors(1).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(ones, ["2*x1", "2*x2", "1", "0"]);
        assert_eq!(mat(&r, &[&["1", "0"], &["0", "1"]]).minors(2).unwrap()[0].to_string(), "1");
        assert!(matches!(m.minors(3), Err(Error::KTooLarge { .. })));
    }

    #[test]
    fn three_by_three_determinant() {
        let r = Ring::new(Rationals, ["a"], MonomialOrder::DegRevLex).unwrap();
        let m = mat(&r, &[&["2", "0", "1"], &["1", "3", "2"], &["1", "1", "1"]]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert!(m.determinant().unwrap().is_zero());
        let m = mat(&r, &[&["a", "1", "0"], &["0", "a", "1"], &["1", "0", "a"]]);
        assert_eq!(m.determinant().unwrap(), parse_polynomial(&r, "a^3 + 1").unwrap());
    }

    #[test]
    fn product_shape_checked() {
        let r = Ring::new(Rationals, ["a"], MonomialOrder::DegRevLex).unwrap();
        let m = mat(&r, &[&["a", "1"]]);
        assert!(m.mul(&m).is_err());
        let t = mat(&r, &[&["1"], &["-a"]]);
        assert!(m.mul(&t).unwrap().is_zero());
    }
}
