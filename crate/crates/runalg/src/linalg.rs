//! Exact rational linear algebra: Gaussian elimination with first-nonzero
//! pivoting. Small dense matrices only; no floating point anywhere.

use num_traits::{One, Zero};

use crate::rat::Rat;

/// Reduced row echelon form. Returns the nonzero rows and their pivot
/// columns.
pub fn rref(mut rows: Vec<Vec<Rat>>) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut lead = 0;
    let mut r = 0;
    while r < rows.len() && lead < ncols {
        let pivot_row = (r..rows.len()).find(|&i| !rows[i][lead].is_zero());
        match pivot_row {
            None => {
                lead += 1;
                continue;
            }
            Some(pr) => {
                rows.swap(r, pr);
                let inv = {
                    let p = &rows[r][lead];
                    Rat::one() / p.clone()
                };
                for x in rows[r].iter_mut() {
                    *x *= &inv;
                }
                for i in 0..rows.len() {
                    if i != r && !rows[i][lead].is_zero() {
                        let factor = rows[i][lead].clone();
                        for c in 0..ncols {
                            let delta = &rows[r][c] * &factor;
                            rows[i][c] -= delta;
                        }
                    }
                }
                pivots.push(lead);
                r += 1;
                lead += 1;
            }
        }
    }
    rows.truncate(pivots.len());
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Rat>>) -> usize {
    rref(rows).1.len()
}

/// Solve sum_i c_i basis_i = target exactly. Returns None when the target is
/// outside the span.
pub fn solve_in_span(basis: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let k = basis.len();
    let m = target.len();
    // Augmented system [A | v] with A columns the basis vectors.
    let mut rows: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for lead in 0..k {
        let pivot_row = (r..rows.len()).find(|&i| !rows[i][lead].is_zero());
        let Some(pr) = pivot_row else { continue };
        rows.swap(r, pr);
        let inv = Rat::one() / rows[r][lead].clone();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][lead].is_zero() {
                let factor = rows[i][lead].clone();
                for c in 0..=k {
                    let delta = &rows[r][c] * &factor;
                    rows[i][c] -= delta;
                }
            }
        }
        pivots.push(lead);
        r += 1;
    }
    // Inconsistency: a row 0 .. 0 | nonzero.
    for row in &rows[r..] {
        if !row[k].is_zero() {
            return None;
        }
    }
    let mut coeffs = vec![Rat::zero(); k];
    for (row_idx, &col) in pivots.iter().enumerate() {
        coeffs[col] = rows[row_idx][k].clone();
    }
    // Non-pivot columns would make the solution non-unique; the certificates
    // always pass linearly independent bases, so any solution is fine.
    Some(coeffs)
}

/// Basis of { c : sum_i c_i vectors_i = 0 }.
pub fn null_space(vectors: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let k = vectors.len();
    if k == 0 {
        return vec![];
    }
    let m = vectors[0].len();
    let rows: Vec<Vec<Rat>> = (0..m)
        .map(|i| vectors.iter().map(|v| v[i].clone()).collect())
        .collect();
    let (rref_rows, pivots) = rref(rows);
    let mut basis = Vec::new();
    for free in 0..k {
        if pivots.contains(&free) {
            continue;
        }
        let mut c = vec![Rat::zero(); k];
        c[free] = Rat::one();
        for (row_idx, &piv) in pivots.iter().enumerate() {
            c[piv] = -rref_rows[row_idx][free].clone();
        }
        basis.push(c);
    }
    basis
}

/// Row-space equality of two families of vectors.
pub fn same_span(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> bool {
    let ra = rank(a.to_vec());
    let rb = rank(b.to_vec());
    if ra != rb {
        return false;
    }
    let mut stacked = a.to_vec();
    stacked.extend(b.iter().cloned());
    rank(stacked) == ra
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn rref_and_rank() {
        let rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        let (r, pivots) = rref(rows.clone());
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r.len(), 2);
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn solve_exact() {
        let basis = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        let c = solve_in_span(&basis, &v(&[2, 3, 5])).unwrap();
        assert_eq!(c, vec![rat_int(2), rat_int(3)]);
        assert!(solve_in_span(&basis, &v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn solve_with_rational_result() {
        let basis = vec![v(&[2, 0]), v(&[1, 3])];
        let c = solve_in_span(&basis, &v(&[2, 1])).unwrap();
        assert_eq!(c, vec![rat(5, 6), rat(1, 3)]);
    }

    #[test]
    fn null_space_of_dependent_family() {
        let vectors = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        let ns = null_space(&vectors);
        assert_eq!(ns.len(), 1);
        let c = &ns[0];
        for i in 0..2 {
            let mut acc = Rat::zero();
            for (j, vec) in vectors.iter().enumerate() {
                acc += &c[j] * &vec[i];
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn span_equality() {
        let a = vec![v(&[1, 0]), v(&[0, 1])];
        let b = vec![v(&[1, 1]), v(&[1, -1])];
        assert!(same_span(&a, &b));
        let c = vec![v(&[1, 1])];
        assert!(!same_span(&a, &c));
    }
}
