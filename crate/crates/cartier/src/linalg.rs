//! Dense linear algebra over F_p.

use crate::field_poly::PrimeField;

/// Row echelon form in place; returns pivot columns.
pub fn rref(f: &PrimeField, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = f.inv(rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let m = rows[k][c];
                for j in 0..ncols {
                    let v = f.mul(m, rows[r][j]);
                    rows[k][j] = f.sub(rows[k][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Reduce `v` against rows in reduced echelon form.
pub fn reduce_against(f: &PrimeField, basis: &[Vec<u64>], pivots: &[usize], v: &mut [u64]) {
    for (row, &c) in basis.iter().zip(pivots) {
        if v[c] != 0 {
            let m = v[c];
            for (x, y) in v.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(m, *y));
            }
        }
    }
}

/// Basis of the kernel of `v -> v A` for `A` given as rows (dim x ncols).
pub fn left_kernel(f: &PrimeField, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let dim = a.len();
    if dim == 0 {
        return Vec::new();
    }
    let ncols = a[0].len();
    // Augment [A | I] and eliminate on the A block.
    let mut rows: Vec<Vec<u64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..dim).map(|j| u64::from(i == j)));
            v
        })
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..dim).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = f.inv(rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for k in 0..dim {
            if k != r && rows[k][c] != 0 {
                let m = rows[k][c];
                for j in 0..ncols + dim {
                    let v = f.mul(m, rows[r][j]);
                    rows[k][j] = f.sub(rows[k][j], v);
                }
            }
        }
        r += 1;
    }
    rows[r..].iter().map(|row| row[ncols..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one_map() {
        let f = PrimeField::new(5).unwrap();
        let a = vec![vec![1, 2], vec![2, 4], vec![0, 0]];
        let k = left_kernel(&f, &a);
        assert_eq!(k.len(), 2);
        for v in &k {
            for c in 0..2 {
                let s = (0..3).fold(0, |acc, i| f.add(acc, f.mul(v[i], a[i][c])));
                assert_eq!(s, 0);
            }
        }
        let mut rows = a.clone();
        assert_eq!(rref(&f, &mut rows), vec![0]);
    }
}
