//! Exact linear algebra over Q(√q) on class-function coordinates.

use std::collections::BTreeSet;

use crate::hallcore::{HallElem, QEps};
use crate::kronrep::IsoClass;

/// Coefficients `c` with `sum_j c_j basis_j = target`, if any exist.
pub fn solve_in_span(target: &HallElem, basis: &[HallElem]) -> Option<Vec<QEps>> {
    let q = target.q();
    let classes: BTreeSet<&IsoClass> = basis.iter().flat_map(|b| b.support()).chain(target.support()).collect();
    let n = basis.len();
    let mut rows: Vec<Vec<QEps>> = classes
        .iter()
        .map(|c| {
            let mut row: Vec<QEps> = basis.iter().map(|b| b.get(c)).collect();
            row.push(target.get(c));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in col..=n {
                let sub = &f * &rows[r][j];
                rows[i][j] -= &sub;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut out = vec![QEps::zero(q); n];
    for (i, &col) in pivots.iter().enumerate() {
        out[col] = rows[i][n].clone();
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{rho, theta};

    #[test]
    fn solves_and_rejects() {
        let q = 3;
        let a = rho(q, 1).unwrap();
        let t = theta(q, 0);
        let target = a.scale(&QEps::from_int(q, 5)).add(&t.shift(3));
        let c = solve_in_span(&target, &[a.clone(), t.clone()]).unwrap();
        assert_eq!(c[0], QEps::from_int(q, 5));
        assert_eq!(c[1], QEps::eps_pow(q, 3));
        assert!(solve_in_span(&t, &[a]).is_none());
    }
}
