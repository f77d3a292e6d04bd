//! Exact phase-1 simplex over the rationals with Bland's rule.
//!
//! Only feasibility is needed here: find `s >= 0` with `A s = b`, or decide
//! that none exists. Bland's rule guarantees termination, and BigRational
//! arithmetic keeps every pivot exact, so the answer is a decision, not an
//! approximation.

use num_traits::{One, Signed, Zero};

use crate::linalg::{Rational, RationalMatrix};

/// One nonnegative rational solution of `a * s = b`, or `None` if the system
/// has no nonnegative solution.
pub(crate) fn solve_nonneg(a: &RationalMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.rows();
    let n = a.cols();
    assert_eq!(b.len(), m);

    // Tableau columns: n structural vars, m artificials, then the rhs.
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for r in 0..m {
        let mut row: Vec<Rational> = Vec::with_capacity(width);
        let flip = b[r].is_negative();
        for c in 0..n {
            let v = a.at(r, c).clone();
            row.push(if flip { -v } else { v });
        }
        for k in 0..m {
            row.push(if k == r { Rational::one() } else { Rational::zero() });
        }
        row.push(if flip { -b[r].clone() } else { b[r].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced-cost row for "minimize sum of artificials": cost 1 on each
    // artificial, 0 elsewhere, minus the sum of the constraint rows (whose
    // basic variables are exactly the artificials).
    let mut red: Vec<Rational> = vec![Rational::zero(); width];
    for (j, r) in red.iter_mut().enumerate().take(n + m) {
        if j >= n {
            *r = Rational::one();
        }
    }
    for row in &t {
        for (j, r) in red.iter_mut().enumerate() {
            *r -= &row[j];
        }
    }

    loop {
        // Bland: entering column = smallest index with negative reduced cost.
        let Some(enter) = (0..n + m).find(|&j| red[j].is_negative()) else {
            break;
        };
        // Ratio test; ties broken by smallest basic variable index (Bland).
        let mut leave: Option<usize> = None;
        let mut best: Option<Rational> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        // Phase-1 objective is bounded below by zero, so a pivot column
        // always admits a leaving row.
        let leave = leave.expect("phase-1 simplex cannot be unbounded");

        // Pivot.
        let piv = t[leave][enter].clone();
        for v in t[leave].iter_mut() {
            *v = &*v / &piv;
        }
        for i in 0..m {
            if i != leave && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..width {
                    let v = t[i][j].clone() - &f * &t[leave][j];
                    t[i][j] = v;
                }
            }
        }
        if !red[enter].is_zero() {
            let f = red[enter].clone();
            for j in 0..width {
                let v = red[j].clone() - &f * &t[leave][j];
                red[j] = v;
            }
        }
        basis[leave] = enter;
    }

    // Feasible iff all artificial variables sit at zero.
    for (i, &bv) in basis.iter().enumerate() {
        if bv >= n && !t[i][width - 1].is_zero() {
            return None;
        }
    }
    let mut s = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            s[bv] = t[i][width - 1].clone();
        }
    }
    debug_assert_eq!(a.mul_rational_vector(&s), b.to_vec());
    debug_assert!(s.iter().all(|x| !x.is_negative()));
    Some(s)
}
