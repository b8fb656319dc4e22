//! Integer row reduction for subgroups of `Z^m`.

use alloc::vec;
use alloc::vec::Vec;

/// Reduces `rows` to echelon form over the first `cols` columns using
/// unimodular row operations; trailing entries are carried along. Rows whose
/// first `cols` entries vanish end up at the bottom.
pub(crate) fn echelon(mut rows: Vec<Vec<i128>>, cols: usize) -> Vec<Vec<i128>> {
    let mut r = 0;
    for c in 0..cols {
        loop {
            // Smallest nonzero |entry| in column c among rows r..
            let pivot = (r..rows.len()).filter(|&i| rows[i][c] != 0).min_by_key(|&i| rows[i][c].unsigned_abs());
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in (r + 1)..rows.len() {
                if rows[i][c] != 0 {
                    let q = rows[i][c] / rows[r][c];
                    let (head, tail) = rows.split_at_mut(i);
                    for (x, y) in tail[0].iter_mut().zip(&head[r]) {
                        *x -= q * y;
                    }
                    if tail[0][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                if rows[r][c] < 0 {
                    for x in rows[r].iter_mut() {
                        *x = -*x;
                    }
                }
                r += 1;
                break;
            }
        }
        if r == rows.len() {
            break;
        }
    }
    rows
}

/// An echelon basis of the subgroup of `Z^m` generated by `vectors`.
pub(crate) fn span_basis(vectors: Vec<Vec<i128>>, m: usize) -> Vec<Vec<i128>> {
    echelon(vectors, m).into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect()
}

/// A basis of `{c in Z^s : sum_j c_j images[j] = 0}`.
pub(crate) fn kernel(images: &[Vec<i128>], m: usize) -> Vec<Vec<i128>> {
    let s = images.len();
    let rows: Vec<Vec<i128>> = images
        .iter()
        .enumerate()
        .map(|(j, img)| {
            let mut row = img.clone();
            row.resize(m, 0);
            let mut unit = vec![0; s];
            unit[j] = 1;
            row.extend(unit);
            row
        })
        .collect();
    echelon(rows, m)
        .into_iter()
        .filter(|row| row[..m].iter().all(|&x| x == 0))
        .map(|row| row[m..].to_vec())
        .filter(|c| c.iter().any(|&x| x != 0))
        .collect()
}

/// For a full-rank echelon basis, the canonical representative of `v`
/// modulo the lattice, with coordinate `i` reduced into `[0, pivot_i)`.
pub(crate) fn reduce_mod(basis: &[Vec<i128>], v: &[i128]) -> Vec<i128> {
    let mut v = v.to_vec();
    for row in basis {
        let c = row.iter().position(|&x| x != 0).expect("nonzero basis row");
        let q = v[c].div_euclid(row[c]);
        for (x, y) in v.iter_mut().zip(row) {
            *x -= q * y;
        }
    }
    v
}

/// `[Z^m : L]` for a full-rank echelon basis of `L`.
pub(crate) fn index(basis: &[Vec<i128>], m: usize) -> Option<u128> {
    if basis.len() != m {
        return None;
    }
    let mut prod: u128 = 1;
    for row in basis {
        let c = row.iter().position(|&x| x != 0)?;
        prod = prod.checked_mul(row[c].unsigned_abs())?;
    }
    Some(prod)
}
