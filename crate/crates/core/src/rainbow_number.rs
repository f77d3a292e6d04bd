//! Desk-scale estimation of the rainbow number `r(A)`: exhaustive
//! certificate search over canonical equinumerous colorings, plus the
//! Fibonacci matrix family with its closed-form dilation counts and the
//! bounds they support.
//!
//! A certificate (an equinumerous coloring with no rainbow kernel vector)
//! proves non-k-regularity. A clean sweep up to `n_max` is evidence, not
//! proof, of k-regularity; the report keeps the distinction explicit.

use num_traits::{ToPrimitive, Zero};

use crate::coloring::{enumerate_equinumerous, Coloring};
use crate::lattice::{kernel_box_points, polytope};
use crate::linalg::{rat, Int, IntVector, Rational, RationalMatrix};
use crate::regularity::is_rainbow_regular;
use crate::search::find_rainbow;
use crate::{Error, Result};

/// `F_n` with `F_0 = 0`, `F_1 = 1`.
pub fn fib(n: usize) -> Int {
    let mut a = Int::zero();
    let mut b = Int::from(1);
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// The `(d-2) x d` matrix whose kernel consists of the sequences with
/// `p_{i+2} = p_i + p_{i+1}`: row `i` has `+1` at columns `i`, `i+1` and
/// `-1` at column `i+2`.
pub fn fibonacci_matrix(d: usize) -> Result<RationalMatrix> {
    if d < 3 {
        return Err(Error::Invalid(format!("the recurrence matrix needs d >= 3, got {d}")));
    }
    let mut entries = vec![Rational::zero(); (d - 2) * d];
    for i in 0..d - 2 {
        entries[i * d + i] = rat(1);
        entries[i * d + i + 1] = rat(1);
        entries[i * d + i + 2] = rat(-1);
    }
    Ok(RationalMatrix::new(d - 2, d, entries))
}

/// Closed-form count of positive lattice points in the dilation
/// `(t F_{d-1} F_{d-2}) P` of the kernel polytope:
/// `(F_{d-1} F_{d-2} / 2) t^2 - ((F_d - 1) / 2) t`. Always an integer.
pub fn closed_form_positive_count(d: usize, t: u64) -> Int {
    use num_integer::Integer;
    assert!(d >= 4, "closed form applies for d >= 4");
    let t = Int::from(t);
    let quad = fib(d - 1) * fib(d - 2) * &t * &t;
    let lin = (fib(d) - Int::from(1)) * &t;
    let (half, rem) = (quad - lin).div_rem(&Int::from(2));
    assert!(rem.is_zero(), "closed form must be an integer");
    half
}

/// Exhaust canonical equinumerous k-colorings of `[k n]`; the first one
/// admitting no rainbow kernel vector is a proof of non-k-regularity.
pub fn certificate_no_rainbow(a: &RationalMatrix, k: usize, n: usize) -> Option<Coloring> {
    assert!(k >= 1 && n >= 1);
    let colorings = enumerate_equinumerous(k * n, k).expect("k divides k*n");
    for c in colorings {
        if !find_rainbow(a, &c).found {
            // Re-verify before returning: the certificate is a proof object.
            assert!(c.is_equinumerous());
            assert_eq!(c.k(), k);
            assert!(!find_rainbow(a, &c).found);
            return Some(c);
        }
    }
    None
}

/// Desk-scale estimate of the rainbow number.
#[derive(Clone, Debug)]
pub struct RainbowNumberEstimate {
    /// Checked range of k (inclusive); starts at d, the trivial lower bound
    /// (a rainbow vector needs d pairwise distinct colors).
    pub k_range: (usize, usize),
    pub n_max: usize,
    /// Found certificates: `(k, n, coloring)` proving non-k-regularity.
    pub certificates: Vec<(usize, usize, Coloring)>,
    /// Smallest k in range with no certificate for any `n <= n_max`;
    /// evidence (not proof) that `r(A) <= k`.
    pub smallest_clean_k: Option<usize>,
}

pub fn estimate_rainbow_number(
    a: &RationalMatrix,
    k_max: usize,
    n_max: usize,
) -> Result<RainbowNumberEstimate> {
    let verdict = is_rainbow_regular(a);
    if !verdict.regular {
        return Err(Error::NotRainbowRegular(
            "the rainbow number is undefined for non-regular matrices".to_string(),
        ));
    }
    let d = a.cols();
    if k_max < d {
        return Err(Error::Invalid(format!(
            "k_max = {k_max} is below the trivial lower bound d = {d}"
        )));
    }
    let mut certificates = Vec::new();
    let mut smallest_clean_k = None;
    for k in d..=k_max {
        let mut clean = true;
        for n in 1..=n_max {
            if let Some(c) = certificate_no_rainbow(a, k, n) {
                certificates.push((k, n, c));
                clean = false;
                break;
            }
        }
        if clean && smallest_clean_k.is_none() {
            smallest_clean_k = Some(k);
        }
    }
    Ok(RainbowNumberEstimate { k_range: (d, k_max), n_max, certificates, smallest_clean_k })
}

/// Report of the Fibonacci-family checks for one dimension `d`.
#[derive(Clone, Debug)]
pub struct FibonacciClaimsReport {
    pub d: usize,
    pub t_max: u64,
    /// (a) the kernel polytope is the triangle with vertices `O`,
    /// `(1/F_{d-1})(F_0..F_{d-1})` and `(1/F_{d-2})(1, F_0..F_{d-2})`.
    pub vertices_ok: bool,
    pub vertices: Vec<Vec<Rational>>,
    /// (b) per t: (closed form, positive count in the dilated polytope,
    /// positive count in the projected triangle) -- all three must agree.
    pub counts: Vec<(u64, Int, u64, u64)>,
    pub counts_ok: bool,
    /// (c) scan of `[F_{d+1} - 1]^d` for kernel vectors with pairwise
    /// distinct entries; the claimed lower-bound certificate requires none
    /// to exist.
    pub lower_bound_ok: bool,
    pub lower_bound_counterexample: Option<IntVector>,
}

impl FibonacciClaimsReport {
    pub fn all_ok(&self) -> bool {
        self.vertices_ok && self.counts_ok && self.lower_bound_ok
    }
}

/// Positive lattice points of `t Q`, `Q` the triangle with vertices
/// `(0,0)`, `(F_{d-1}, 0)`, `(0, F_{d-2})`: independent counting route for
/// the closed form.
fn triangle_positive_count(d: usize, t: u64) -> u64 {
    let f1 = fib(d - 1).to_u64().expect("desk scale");
    let f2 = fib(d - 2).to_u64().expect("desk scale");
    let h = t * f1 * f2;
    let mut count = 0u64;
    let mut a = 1u64;
    while f2 * a < h {
        // f2 * a + f1 * b <= h with b >= 1
        count += (h - f2 * a) / f1;
        a += 1;
    }
    count
}

pub fn check_fibonacci_claims(d: usize, t_max: u64) -> Result<FibonacciClaimsReport> {
    if d < 4 {
        return Err(Error::Invalid(format!("the family checks need d >= 4, got {d}")));
    }
    let a = fibonacci_matrix(d)?;
    let p = polytope(&a);

    // (a) vertex set
    let f1 = fib(d - 1);
    let f2 = fib(d - 2);
    let mut expected: Vec<Vec<Rational>> = vec![
        vec![Rational::zero(); d],
        (0..d).map(|i| Rational::new(fib(i), f1.clone())).collect(),
        std::iter::once(Rational::new(Int::from(1), f2.clone()))
            .chain((0..d - 1).map(|i| Rational::new(fib(i), f2.clone())))
            .collect(),
    ];
    expected.sort();
    let vertices_ok = p.vertices == expected;

    // (b) closed form vs. two enumeration routes
    let scale = (&f1 * &f2).to_u64().expect("desk scale");
    let mut counts = Vec::new();
    let mut counts_ok = true;
    for t in 1..=t_max {
        let closed = closed_form_positive_count(d, t);
        let hi = (t * scale) as i64;
        let in_polytope = kernel_box_points(&p.kernel, 1, hi).count() as u64;
        let in_triangle = triangle_positive_count(d, t);
        if closed != Int::from(in_polytope) || in_polytope != in_triangle {
            counts_ok = false;
        }
        counts.push((t, closed, in_polytope, in_triangle));
    }

    // (c) distinct-entry scan of [F_{d+1} - 1]^d
    let bound = (fib(d + 1) - 1u32).to_i64().expect("desk scale");
    let mut lower_bound_counterexample = None;
    for point in kernel_box_points(&p.kernel, 1, bound) {
        let mut sorted = point.clone();
        sorted.sort();
        let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
        if distinct {
            lower_bound_counterexample = Some(point);
            break;
        }
    }
    let lower_bound_ok = lower_bound_counterexample.is_none();

    Ok(FibonacciClaimsReport {
        d,
        t_max,
        vertices_ok,
        vertices: p.vertices,
        counts,
        counts_ok,
        lower_bound_ok,
        lower_bound_counterexample,
    })
}
