//! Exact phase-1 simplex for small equality systems.
//!
//! Decides feasibility of `A x = b, x >= 0` over arbitrary-precision
//! rationals by introducing one artificial variable per row and minimizing
//! their sum. Pivots follow Bland's smallest-index rule, so the method
//! terminates on degenerate systems and the returned basic feasible solution
//! is deterministic for a given input.

use num::traits::{Signed, Zero};

use crate::rational::Rat;

/// Returns a nonnegative solution of `A x = b` when one exists.
///
/// `a` holds the rows of the constraint matrix; every row must have the same
/// length. The solution is the first basic feasible point reached under
/// Bland's rule; callers needing a particular solution must not rely on which
/// feasible point comes back beyond determinism.
pub fn feasible_point(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "one right-hand side per row");
    let cols = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|row| row.len() == cols), "ragged matrix");

    // Tableau [A | I | b] with rows flipped so the right-hand side is
    // nonnegative; the artificial identity block starts feasible.
    let width = cols + rows + 1;
    let mut tableau: Vec<Vec<Rat>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut row = Vec::with_capacity(width);
        let flip = b[i].is_negative();
        for value in &a[i] {
            row.push(if flip { -value } else { value.clone() });
        }
        for j in 0..rows {
            row.push(if j == i { Rat::from_integer(1.into()) } else { Rat::zero() });
        }
        row.push(if flip { -&b[i] } else { b[i].clone() });
        tableau.push(row);
    }
    // Basis starts as the artificial variables, indices cols..cols+rows.
    let mut basis: Vec<usize> = (cols..cols + rows).collect();

    loop {
        // Reduced cost of column j for the phase-1 objective (artificials
        // cost 1, structural variables cost 0): c_j - sum over rows with a
        // basic artificial of the tableau entry.
        let entering = (0..cols + rows).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut reduced = if j >= cols { Rat::from_integer(1.into()) } else { Rat::zero() };
            for (i, &basic) in basis.iter().enumerate() {
                if basic >= cols {
                    reduced -= &tableau[i][j];
                }
            }
            reduced.is_negative()
        });
        let Some(col) = entering else { break };

        let mut leaving: Option<usize> = None;
        for i in 0..rows {
            if !tableau[i][col].is_positive() {
                continue;
            }
            let ratio = &tableau[i][width - 1] / &tableau[i][col];
            let better = match leaving {
                None => true,
                Some(l) => {
                    let best = &tableau[l][width - 1] / &tableau[l][col];
                    ratio < best || (ratio == best && basis[i] < basis[l])
                }
            };
            if better {
                leaving = Some(i);
            }
        }
        // The phase-1 objective is bounded below by zero, so a pivot row
        // always exists for an improving column.
        let row = leaving.expect("phase-1 simplex cannot be unbounded");
        pivot(&mut tableau, row, col);
        basis[row] = col;
    }

    // Feasible iff every artificial variable sits at zero.
    let infeasible = basis
        .iter()
        .enumerate()
        .any(|(i, &basic)| basic >= cols && !tableau[i][width - 1].is_zero());
    if infeasible {
        return None;
    }

    let mut solution = vec![Rat::zero(); cols];
    for (i, &basic) in basis.iter().enumerate() {
        if basic < cols {
            solution[basic] = tableau[i][width - 1].clone();
        }
    }
    Some(solution)
}

fn pivot(tableau: &mut [Vec<Rat>], row: usize, col: usize) {
    let scale = tableau[row][col].clone();
    for value in tableau[row].iter_mut() {
        *value /= &scale;
    }
    for i in 0..tableau.len() {
        if i == row || tableau[i][col].is_zero() {
            continue;
        }
        let factor = tableau[i][col].clone();
        for j in 0..tableau[i].len() {
            let delta = &factor * &tableau[row][j];
            tableau[i][j] -= delta;
        }
    }
}
