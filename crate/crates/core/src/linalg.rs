//! Dense Gaussian elimination over an exact field.

use crate::arith::Field;

/// Rank of the matrix given by `rows` (all rows of equal length).
pub fn rank<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(&rows[rank][col]).expect("pivot is nonzero");
        let pivot_row: Vec<F::Elem> = rows[rank].iter().map(|v| field.mul(v, &inv)).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            if field.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !field.is_zero(p) {
                    *x = field.sub(x, &field.mul(&factor, p));
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};

    #[test]
    fn small_ranks() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(rank(&f, vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&f, vec![vec![1, 2], vec![2, 5]]), 2);
        assert_eq!(rank(&f, vec![vec![0, 0, 0]]), 0);
        assert_eq!(rank::<PrimeField>(&f, vec![]), 0);
        // singular only mod 7: det = 1*9 - 2*1 = 7
        assert_eq!(rank(&f, vec![vec![1, 2], vec![1, f.from_i64(9)]]), 1);
        let q = Rationals;
        let m = |v: &[i64]| v.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        assert_eq!(rank(&q, vec![m(&[1, 2]), m(&[1, 9])]), 2);
        assert_eq!(rank(&q, vec![m(&[1, 2, 3]), m(&[4, 5, 6]), m(&[7, 8, 9])]), 2);
    }
}
