//! Exact Gauss–Jordan elimination over ℚ with several right-hand sides.

use num_traits::Zero;

use crate::exact::Rat;

/// Result of reducing `A x = B` column-block by column-block.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub rank: usize,
    pub unknowns: usize,
    /// Rows whose coefficient part vanished but whose right-hand side did not.
    pub inconsistent: usize,
    /// `x` (one row per unknown, one column per right-hand side) when the
    /// system is consistent with full column rank.
    pub solution: Option<Vec<Vec<Rat>>>,
}

impl Reduced {
    pub fn is_unique(&self) -> bool {
        self.solution.is_some()
    }
}

/// Reduces the `rows × (unknowns + rhs)` augmented matrix in place.
pub fn reduce(mut m: Vec<Vec<Rat>>, unknowns: usize) -> Reduced {
    let width = m.first().map_or(unknowns, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for v in m[r][col..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *v -= &f * pv;
            }
        }
        pivots.push(col);
        r += 1;
    }
    let inconsistent = m[r..]
        .iter()
        .filter(|row| row[unknowns..width].iter().any(|v| !v.is_zero()))
        .count();
    let rank = pivots.len();
    let solution = (rank == unknowns && inconsistent == 0).then(|| {
        (0..unknowns).map(|i| m[i][unknowns..width].to_vec()).collect()
    });
    Reduced {
        rank,
        unknowns,
        inconsistent,
        solution,
    }
}
