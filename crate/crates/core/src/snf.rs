//! Smith normal form over the integers, for abelianization invariants.

/// Diagonalizes `m` in place (row/column operations over Z) and returns
/// the diagonal entries `d_1 | d_2 | ...`, non-negative, zeros trailing.
pub fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut r0 = 0;
    let mut c0 = 0;
    while r0 < rows && c0 < cols {
        // pick the entry of minimal non-zero absolute value in the block
        let mut pivot: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(r0) {
            for (j, &v) in row.iter().enumerate().skip(c0) {
                if v != 0 && pivot.map_or(true, |(pi, pj)| v.abs() < m[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(r0, pi);
        for row in m.iter_mut() {
            row.swap(c0, pj);
        }
        // reduce the row and column against the pivot
        let mut clean = true;
        let p = m[r0][c0];
        for i in r0 + 1..rows {
            let q = m[i][c0].div_euclid(p);
            if q != 0 {
                for j in c0..cols {
                    m[i][j] -= q * m[r0][j];
                }
            }
            if m[i][c0] != 0 {
                clean = false;
            }
        }
        for j in c0 + 1..cols {
            let q = m[r0][j].div_euclid(p);
            if q != 0 {
                for i in r0..rows {
                    m[i][j] -= q * m[i][c0];
                }
            }
            if m[r0][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue; // smaller remainders appeared, re-pick pivot
        }
        // pivot must divide the rest of the block
        let p = m[r0][c0];
        let mut offender = None;
        'scan: for i in r0 + 1..rows {
            for j in c0 + 1..cols {
                if m[i][j] % p != 0 {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            for j in c0..cols {
                let v = m[i][j];
                m[r0][j] += v;
            }
            continue;
        }
        diag.push(p.abs());
        r0 += 1;
        c0 += 1;
    }
    diag
}

/// Invariant factors (`> 1`) and free rank of `Z^cols / rowspace(m)`.
pub fn cokernel_invariants(m: Vec<Vec<i128>>, cols: usize) -> (Vec<u64>, usize) {
    let diag = smith_diagonal(m);
    let nonzero: Vec<i128> = diag.iter().copied().filter(|&d| d != 0).collect();
    let rank = cols - nonzero.len();
    let torsion: Vec<u64> = nonzero
        .iter()
        .filter(|&&d| d > 1)
        .map(|&d| d as u64)
        .collect();
    (torsion, rank)
}
