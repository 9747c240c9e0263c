//! Gaussian elimination over a finite field.

use crate::field::{FieldTable, Gf};

pub type Matrix = Vec<Vec<Gf>>;

/// Reduced row echelon form; returns the nonzero rows and the pivot columns.
pub fn rref(rows: &[Vec<Gf>], field: &FieldTable) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = field.inv(m[row][col]).expect("pivot is nonzero");
        for x in m[row].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let c = r[col];
            for (x, &y) in r.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Gf>], field: &FieldTable) -> usize {
    rref(rows, field).1.len()
}

/// Basis of {x : rows · x = 0}.
pub fn nullspace(rows: &[Vec<Gf>], ncols: usize, field: &FieldTable) -> Matrix {
    let (r, pivots) = rref(rows, field);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Gf::ZERO; ncols];
            v[f] = Gf::ONE;
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = field.neg(row[f]);
            }
            v
        })
        .collect()
}

pub fn dot(a: &[Gf], b: &[Gf], field: &FieldTable) -> Gf {
    a.iter().zip(b).fold(Gf::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// Whether every row of `a` is orthogonal to every row of `b`.
pub fn orthogonal(a: &[Vec<Gf>], b: &[Vec<Gf>], field: &FieldTable) -> bool {
    a.iter().all(|x| b.iter().all(|y| dot(x, y, field).is_zero()))
}

pub fn in_row_space(v: &[Gf], rows: &[Vec<Gf>], field: &FieldTable) -> bool {
    let base = rank(rows, field);
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    rank(&ext, field) == base
}

pub fn same_row_space(a: &[Vec<Gf>], b: &[Vec<Gf>], field: &FieldTable) -> bool {
    let (ra, _) = rref(a, field);
    let (rb, _) = rref(b, field);
    ra == rb
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_is_orthogonal() {
        let f = FieldTable::new(3, 1, None).unwrap();
        let rows = vec![
            vec![Gf(1), Gf(2), Gf(0), Gf(1)],
            vec![Gf(0), Gf(1), Gf(1), Gf(1)],
            vec![Gf(1), Gf(0), Gf(1), Gf(2)],
        ];
        assert_eq!(rank(&rows, &f), 2);
        let ns = nullspace(&rows, 4, &f);
        assert_eq!(ns.len(), 2);
        assert!(orthogonal(&rows, &ns, &f));
        assert!(in_row_space(&rows[2], &rows[..2], &f));
        assert!(same_row_space(&rows, &rows[..2], &f));
    }
}
