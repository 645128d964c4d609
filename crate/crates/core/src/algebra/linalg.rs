use num_traits::Zero;

use super::{LinComb, Rational};

/// Finds rational λ with Σ λᵢ·vectorsᵢ = target, by exact Gaussian
/// elimination over the union of supports. Returns `None` when the target is
/// outside the span.
pub fn solve_in_span<K: Ord + Clone>(
    vectors: &[LinComb<K>],
    target: &LinComb<K>,
) -> Option<Vec<Rational>> {
    let mut keys: Vec<K> = vectors
        .iter()
        .flat_map(|v| v.keys().cloned())
        .chain(target.keys().cloned())
        .collect();
    keys.sort();
    keys.dedup();
    let cols = vectors.len();
    // Augmented matrix: one row per basis key.
    let mut rows: Vec<Vec<Rational>> = keys
        .iter()
        .map(|k| {
            let mut row: Vec<Rational> = vectors.iter().map(|v| v.get(k)).collect();
            row.push(target.get(k));
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..=cols {
                let d = &f * &rows[r][j];
                rows[i][j] -= d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut out = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        out[c] = rows[i][cols].clone();
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::integer;

    #[test]
    fn span_membership() {
        let v1: LinComb<u8> = [(1, integer(1)), (2, integer(1))].into_iter().collect();
        let v2: LinComb<u8> = [(2, integer(1)), (3, integer(2))].into_iter().collect();
        let t: LinComb<u8> = [(1, integer(2)), (2, integer(5)), (3, integer(6))]
            .into_iter()
            .collect();
        let sol = solve_in_span(&[v1.clone(), v2.clone()], &t).unwrap();
        assert_eq!(sol, vec![integer(2), integer(3)]);
        let outside: LinComb<u8> = [(1, integer(1))].into_iter().collect();
        assert!(solve_in_span(&[v1, v2], &outside).is_none());
    }
}
