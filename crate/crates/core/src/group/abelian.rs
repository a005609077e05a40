use crate::group::presentation::MetacyclicPresentation;
use crate::numtheory::gcd;

/// Diagonal of the Smith normal form of an integer matrix: non-negative
/// entries `d_1 | d_2 | ...`, one per row (zero rows padding at the end).
pub fn smith_diagonal(matrix: &[Vec<i128>]) -> Vec<i128> {
    let mut a: Vec<Vec<i128>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // pivot: smallest nonzero absolute value in the trailing block
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                diag.extend(std::iter::repeat_n(0, rows.min(cols) - t));
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                for i in t..rows {
                    a[i][j] -= q * a[i][t];
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility: fold any non-multiple into the pivot row
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| a[i][j] % p != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    diag
}

/// Invariant factors `> 1` of `G/G'`, ascending with each dividing the next.
///
/// `G' = ⟨a^(r-1)⟩`, so `G/G'` is generated by the images of `a`, `b` with
/// relations `a^gcd(m, r-1) = 1` and `b^n = a^s`; the factors come from the
/// Smith form of `[[gcd(m, r-1), 0], [-s, n]]`.
pub fn abelianization_invariants(g: &MetacyclicPresentation) -> Vec<u64> {
    let (m, n, s, r) = (g.m(), g.n(), g.s(), g.r());
    let g1 = gcd(m, (r + m - 1) % m);
    // the a-part of the quotient has order g1 (gcd(m, 0) = m when r = 1)
    let matrix = vec![vec![g1 as i128, 0], vec![-(s as i128), n as i128]];
    smith_diagonal(&matrix)
        .into_iter()
        .map(|d| d as u64)
        .filter(|&d| d != 1)
        .collect()
}

/// Invariant factors of a finite abelian group given as the orders of a
/// cyclic decomposition.
pub fn invariant_factors_of_orders(orders: &[u64]) -> Vec<u64> {
    let n = orders.len();
    let mut matrix = vec![vec![0i128; n]; n];
    for (k, &o) in orders.iter().enumerate() {
        matrix[k][k] = o as i128;
    }
    smith_diagonal(&matrix)
        .into_iter()
        .map(|d| d as u64)
        .filter(|&d| d != 1)
        .collect()
}
