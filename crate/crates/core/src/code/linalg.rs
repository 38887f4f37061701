//! Row reduction over GF(q).

use crate::gf::FiniteField;

/// Reduced row echelon form in place. Returns the pivot columns.
pub(crate) fn rref(field: &FiniteField, rows: &mut Vec<Vec<u8>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let scale = field.inv_raw(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = field.mul_raw(*x, scale);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let factor = rows[i][col];
                for j in 0..ncols {
                    let t = field.mul_raw(factor, rows[r][j]);
                    rows[i][j] = field.sub_raw(rows[i][j], t);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn rank(field: &FiniteField, rows: &[Vec<u8>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Indices of a maximal linearly independent subset of `rows`, chosen greedily
/// in order.
pub(crate) fn independent_rows(field: &FiniteField, rows: &[Vec<u8>]) -> Vec<usize> {
    let mut basis: Vec<Vec<u8>> = Vec::new();
    let mut keep = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(row.clone());
        if rank(field, &trial) > basis.len() {
            basis.push(row.clone());
            keep.push(i);
            rref(field, &mut basis);
        }
    }
    keep
}

/// Basis of `{ v : <v, row> = 0 for every row }`.
pub(crate) fn nullspace(field: &FiniteField, rows: &[Vec<u8>], ncols: usize) -> Vec<Vec<u8>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u8; ncols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg_raw(m[r][f]);
            }
            v
        })
        .collect()
}

pub(crate) fn dot(field: &FiniteField, a: &[u8], b: &[u8]) -> u8 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| field.add_raw(acc, field.mul_raw(x, y)))
}
