//! Rainbow searches: scan the colored box `[1..N]^d ∩ ker(A)` for a vector
//! whose entries receive pairwise distinct colors, count the non-rainbow
//! ones against the pair-counting bound, and run the seeded robust
//! experiment over bounded random colorings.

use num_traits::{One, Signed, ToPrimitive, Zero};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coloring::{random_bounded_coloring, Coloring};
use crate::lattice::{kernel_box_points, non_rainbow_upper_bound};
use crate::linalg::{Int, IntVector, Rational, RationalMatrix};
use crate::regularity::{check_condition_iii, robust_constant};
use crate::{Error, Result};

/// Outcome of a rainbow scan. The counting fields are filled only by
/// [`count_non_rainbow`], which exhausts the box instead of short-circuiting.
#[derive(Clone, Debug)]
pub struct RainbowReport {
    pub found: bool,
    /// First rainbow vector in enumeration order, when one exists.
    pub witness: Option<IntVector>,
    /// Kernel points visited (all of them for exhaustive scans).
    pub solutions_scanned: u64,
    pub non_rainbow_count: Option<u64>,
    pub bound: Option<u128>,
}

fn is_rainbow(v: &[Int], coloring: &Coloring) -> bool {
    let mut seen: Vec<u32> = Vec::with_capacity(v.len());
    for x in v {
        let idx = x.to_usize().expect("box entries fit in usize");
        let c = coloring.color_of(idx);
        if seen.contains(&c) {
            return false;
        }
        seen.push(c);
    }
    true
}

/// First rainbow vector of `ker(a)` in `[1..N]^d` under `coloring`, if any.
pub fn find_rainbow(a: &RationalMatrix, coloring: &Coloring) -> RainbowReport {
    let kernel = a.kernel_basis();
    let mut scanned = 0u64;
    for point in kernel_box_points(&kernel, 1, coloring.n() as i64) {
        scanned += 1;
        if is_rainbow(&point, coloring) {
            debug_assert!(a.mul_int_vector(&point).iter().all(Rational::is_zero));
            return RainbowReport {
                found: true,
                witness: Some(point),
                solutions_scanned: scanned,
                non_rainbow_count: None,
                bound: None,
            };
        }
    }
    RainbowReport {
        found: false,
        witness: None,
        solutions_scanned: scanned,
        non_rainbow_count: None,
        bound: None,
    }
}

/// Exhaustive census of `[1..N]^d ∩ ker(a)`: exact non-rainbow count plus
/// the pair-counting bound for the same class sizes. When the rank test
/// holds for `a` the count is asserted against the bound.
pub fn count_non_rainbow(a: &RationalMatrix, coloring: &Coloring) -> RainbowReport {
    let kernel = a.kernel_basis();
    let kernel_dim = kernel.dim();
    let mut scanned = 0u64;
    let mut non_rainbow = 0u64;
    let mut witness = None;
    for point in kernel_box_points(&kernel, 1, coloring.n() as i64) {
        scanned += 1;
        if is_rainbow(&point, coloring) {
            if witness.is_none() {
                witness = Some(point);
            }
        } else {
            non_rainbow += 1;
        }
    }
    let bound = if kernel_dim >= 2 {
        Some(
            non_rainbow_upper_bound(
                coloring.class_sizes(),
                a.cols(),
                kernel_dim,
                coloring.n(),
            )
            .expect("kernel_dim >= 2 checked"),
        )
    } else {
        None
    };
    if let Some(b) = bound {
        let rank_test_holds = a.cols() >= 2
            && check_condition_iii(a).map(|c| c.pass).unwrap_or(false);
        if rank_test_holds {
            assert!(
                (non_rainbow as u128) <= b,
                "counting bound violated: {non_rainbow} > {b}"
            );
        }
    }
    RainbowReport {
        found: witness.is_some(),
        witness,
        solutions_scanned: scanned,
        non_rainbow_count: Some(non_rainbow),
        bound,
    }
}

/// Parameters and results of one robust-regularity experiment.
#[derive(Clone, Debug)]
pub struct RobustReport {
    pub k: usize,
    pub n: usize,
    /// `epsilon` as a fraction of `C`: the class-size cap is
    /// `floor((1 - eps_rel) * C * N / sqrt(k))`.
    pub eps_rel: Rational,
    pub c_squared: Rational,
    pub max_class_size: usize,
    pub trials: u64,
    pub successes: u64,
    /// Indices of trials in which no rainbow vector was found. Expected to
    /// be empty for large enough `N`; never silently dropped.
    pub failed_trials: Vec<u64>,
}

/// `floor(sqrt(p / q))` for positive integers, exact.
fn floor_sqrt_ratio(p: &Int, q: &Int) -> Int {
    let f: Int = p / q;
    f.sqrt()
}

/// Draw `trials` seeded colorings with class sizes capped at
/// `floor((1 - eps_rel) C N / sqrt(k))` and report how many admit a rainbow
/// kernel vector. `eps_rel` expresses epsilon as a fraction of `C`, which
/// keeps the cap exactly computable by integer square roots.
pub fn robust_experiment(
    a: &RationalMatrix,
    k: usize,
    n: usize,
    eps_rel: &Rational,
    trials: u64,
    seed: u64,
) -> Result<RobustReport> {
    let rc = robust_constant(a)?; // rejects non-regular matrices
    if eps_rel.is_negative() || eps_rel >= &Rational::one() {
        return Err(Error::Invalid(format!(
            "eps must lie in [0, 1) as a fraction of C, got {eps_rel}"
        )));
    }
    // cap^2 = N^2 (1 - eps)^2 C^2 / k
    let one_minus = Rational::one() - eps_rel;
    let n_sq = Rational::from_integer(Int::from(n as u64 * n as u64));
    let cap_sq = n_sq * &one_minus * &one_minus * &rc.c_squared
        / Rational::from_integer(Int::from(k as u64));
    let cap = floor_sqrt_ratio(cap_sq.numer(), cap_sq.denom());
    let max_class_size = cap.to_usize().unwrap_or(0);
    if max_class_size < 1 {
        return Err(Error::Infeasible(format!(
            "class-size cap floor((1-eps) C N / sqrt(k)) = {max_class_size} is below 1"
        )));
    }
    if k * max_class_size < n || k > n {
        return Err(Error::Infeasible(format!(
            "k = {k} classes of size <= {max_class_size} cannot cover [{n}]"
        )));
    }
    let mut seed_rng = ChaCha8Rng::seed_from_u64(seed);
    let trial_seeds: Vec<u64> = (0..trials).map(|_| seed_rng.gen()).collect();
    let outcomes: Vec<bool> = trial_seeds
        .par_iter()
        .map(|&s| {
            let coloring = random_bounded_coloring(n, k, max_class_size, s)
                .expect("feasibility checked above");
            find_rainbow(a, &coloring).found
        })
        .collect();
    let successes = outcomes.iter().filter(|&&f| f).count() as u64;
    let failed_trials = outcomes
        .iter()
        .enumerate()
        .filter(|(_, &f)| !f)
        .map(|(i, _)| i as u64)
        .collect();
    Ok(RobustReport {
        k,
        n,
        eps_rel: eps_rel.clone(),
        c_squared: rc.c_squared,
        max_class_size,
        trials,
        successes,
        failed_trials,
    })
}

/// Total number of kernel points in `[1..N]^d`, for bookkeeping identities.
pub fn total_solutions(a: &RationalMatrix, n: usize) -> u64 {
    kernel_box_points(&a.kernel_basis(), 1, n as i64).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{enumerate_equinumerous, greedy_coloring, multiplicative_partition};
    use crate::linalg::ratio;

    fn m(rows: usize, cols: usize, entries: &[i64]) -> RationalMatrix {
        RationalMatrix::from_i64(rows, cols, entries)
    }

    fn ints(v: &[i64]) -> IntVector {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn pigeonhole_blocks_rainbow() {
        let a = m(1, 3, &[1, -2, 1]);
        let c = Coloring::new(4, 2, vec![1, 1, 2, 2]).unwrap();
        let r = find_rainbow(&a, &c);
        assert!(!r.found);
        assert_eq!(r.solutions_scanned, total_solutions(&a, 4));
    }

    #[test]
    fn first_witness_in_enumeration_order() {
        let a = m(1, 3, &[1, -2, 1]);
        let c = Coloring::new(3, 3, vec![1, 2, 3]).unwrap();
        let r = find_rainbow(&a, &c);
        assert!(r.found);
        assert_eq!(r.witness.unwrap(), ints(&[1, 2, 3]));
    }

    #[test]
    fn greedy_coloring_defeats_doubling_matrix() {
        let a = m(1, 2, &[1, -2]);
        let p = multiplicative_partition(1, 2, 12).unwrap();
        let c = greedy_coloring(&p, 3).unwrap();
        let r = find_rainbow(&a, &c);
        assert!(!r.found);
    }

    #[test]
    fn non_rainbow_census_rainbow_coloring() {
        // Under an all-distinct coloring only the constant progressions
        // repeat a color.
        let a = m(1, 3, &[1, -2, 1]);
        let n = 9;
        let c = Coloring::new(n, n, (1..=n as u32).collect()).unwrap();
        let r = count_non_rainbow(&a, &c);
        assert_eq!(r.non_rainbow_count, Some(n as u64));
        assert!(r.found);
    }

    #[test]
    fn non_rainbow_census_single_color() {
        let a = m(1, 3, &[1, -2, 1]);
        let c = Coloring::new(5, 1, vec![1; 5]).unwrap();
        let r = count_non_rainbow(&a, &c);
        assert_eq!(r.non_rainbow_count, Some(r.solutions_scanned));
        assert!(!r.found);
    }

    #[test]
    fn census_respects_bound_and_splits_totals() {
        // The greedy coloring kills the 1x2 system but (1 -2 1) still has
        // rainbow progressions; frozen against a by-hand census of [12]^3.
        let a = m(1, 3, &[1, -2, 1]);
        let p = multiplicative_partition(1, 2, 12).unwrap();
        let c = greedy_coloring(&p, 3).unwrap();
        let r = count_non_rainbow(&a, &c);
        let total = total_solutions(&a, 12);
        assert_eq!(total, 72);
        assert_eq!(r.solutions_scanned, total);
        assert_eq!(r.non_rainbow_count, Some(48));
        assert_eq!(r.bound, Some(144));
    }

    #[test]
    fn refinement_never_loses_rainbows() {
        let a = m(1, 3, &[1, -2, 1]);
        for k in [2usize, 3] {
            for c in enumerate_equinumerous(12, k).unwrap().take(60) {
                let before = {
                    let r = count_non_rainbow(&a, &c);
                    r.solutions_scanned - r.non_rainbow_count.unwrap()
                };
                // split element 5 off its class
                let refined = c.split_class_at(5).unwrap();
                let after = {
                    let r = count_non_rainbow(&a, &refined);
                    r.solutions_scanned - r.non_rainbow_count.unwrap()
                };
                assert!(after >= before);
            }
        }
    }

    #[test]
    fn robust_experiment_rejects_bad_inputs() {
        let not_regular = m(1, 2, &[1, 1]);
        assert!(matches!(
            robust_experiment(&not_regular, 4, 20, &ratio(1, 100), 3, 0),
            Err(Error::NotRainbowRegular(_))
        ));
        let a = m(1, 3, &[1, -2, 1]);
        assert!(matches!(
            robust_experiment(&a, 4, 20, &ratio(3, 2), 3, 0),
            Err(Error::Invalid(_))
        ));
        // tiny N drives the cap below 1
        assert!(matches!(
            robust_experiment(&a, 100, 10, &ratio(1, 100), 3, 0),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn robust_experiment_empty_and_seeded() {
        let a = m(1, 3, &[1, -2, 1]);
        let r = robust_experiment(&a, 9, 120, &ratio(1, 100), 0, 7).unwrap();
        assert_eq!(r.trials, 0);
        assert_eq!(r.successes, 0);
        assert!(r.failed_trials.is_empty());

        let r1 = robust_experiment(&a, 9, 120, &ratio(1, 100), 5, 7).unwrap();
        let r2 = robust_experiment(&a, 9, 120, &ratio(1, 100), 5, 7).unwrap();
        assert_eq!(r1.successes, r2.successes);
        assert_eq!(r1.failed_trials, r2.failed_trials);
        // cap = floor(0.99 * sqrt(1/6) * 120 / 3) = floor(16.16...) = 16
        assert_eq!(r1.max_class_size, 16);
    }
}
