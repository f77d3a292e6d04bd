//! Rainbow regularity of a rational matrix, decided by two equivalent
//! finite tests, with machine-checkable certificates either way.
//!
//! An `m x d` rational matrix is rainbow regular iff `ker(A)` contains a
//! vector with positive integer entries and, for every pair of columns
//! `(i, j)`, deleting those two columns does not drop the rank. The second
//! test has a dual formulation on the kernel: the projection of `ker(A)`
//! onto coordinates `(i, j)` must be two-dimensional. Both are computed on
//! every verdict and cross-checked pair by pair.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::lattice;
use crate::linalg::{Int, IntVector, KernelBasis, Rational, RationalMatrix};
use crate::simplex;
use crate::{Error, Result};

/// Per-pair results of the two-column-deletion rank test.
#[derive(Clone, Debug)]
pub struct ConditionIii {
    pub pass: bool,
    /// `(i, j) -> rank of the matrix with columns i and j deleted`,
    /// in lexicographic pair order.
    pub table: Vec<((usize, usize), usize)>,
    /// Lexicographically smallest failing pair, when any pair fails.
    pub failing_pair: Option<(usize, usize)>,
    /// Rank of the full matrix, for reference.
    pub full_rank: usize,
}

/// Per-pair results of the kernel-minor test: pair `(i, j)` passes iff some
/// two kernel vectors `x`, `y` have `x_i y_j != x_j y_i`.
#[derive(Clone, Debug)]
pub struct ConditionIv {
    pub pass: bool,
    pub table: Vec<((usize, usize), bool)>,
    pub failing_pair: Option<(usize, usize)>,
}

/// Why a matrix failed the regularity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotRegularReason {
    /// `ker(A)` contains no vector with all entries >= 1.
    NoPositiveVector,
    /// Some column pair fails the rank test.
    FailingPair(usize, usize),
    /// A matrix with no columns has no rainbow vector at all.
    NoColumns,
}

/// Full verdict for one matrix. When the matrix is not regular the verdict
/// carries a reason and, for rank-test failures, a row-space certificate.
#[derive(Clone, Debug)]
pub struct RegularityVerdict {
    pub regular: bool,
    /// Integer kernel vector with all entries >= 1, when one exists.
    pub positive_witness: Option<IntVector>,
    pub failing_pair: Option<(usize, usize)>,
    /// Nonzero row-space vector supported on the failing pair: the proof
    /// object that every kernel vector satisfies `q_i x_i + q_j x_j = 0`.
    pub vanishing_row: Option<Vec<Rational>>,
    pub condition_iii: Option<ConditionIii>,
    pub condition_iv: Option<ConditionIv>,
    pub reason: Option<NotRegularReason>,
}

/// The robustness constant: `C^2 = nu / C(d,2)` exactly, where `nu` is the
/// leading coefficient of the Ehrhart quasi-polynomial of the kernel
/// polytope, plus a decimal approximation of `C`.
#[derive(Clone, Debug)]
pub struct RobustConstant {
    pub nu: Rational,
    pub c_squared: Rational,
    pub c_approx: f64,
}

fn pairs(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..d).flat_map(move |i| (i + 1..d).map(move |j| (i, j)))
}

/// Rank test: every two-column deletion must preserve the rank.
pub fn check_condition_iii(a: &RationalMatrix) -> Result<ConditionIii> {
    let d = a.cols();
    if d < 2 {
        return Err(Error::Invalid(format!(
            "rank test needs at least 2 columns, got {d}"
        )));
    }
    let full_rank = a.rank();
    let mut table = Vec::with_capacity(d * (d - 1) / 2);
    let mut failing_pair = None;
    for (i, j) in pairs(d) {
        let r = a.delete_columns(i, j)?.rank();
        if r != full_rank && failing_pair.is_none() {
            failing_pair = Some((i, j));
        }
        table.push(((i, j), r));
    }
    Ok(ConditionIii { pass: failing_pair.is_none(), table, failing_pair, full_rank })
}

/// Kernel-minor test: pair `(i, j)` passes iff the basis matrix restricted
/// to columns `i, j` has rank 2. Bilinearity of `x_i y_j - x_j y_i` reduces
/// the existential over the whole kernel to basis pairs.
pub fn check_condition_iv(kernel: &KernelBasis, d: usize) -> ConditionIv {
    assert!(d >= 2, "pair test needs at least 2 coordinates");
    assert_eq!(kernel.ambient, d);
    let mut table = Vec::with_capacity(d * (d - 1) / 2);
    let mut failing_pair = None;
    for (i, j) in pairs(d) {
        let mut pass = false;
        'outer: for (a, x) in kernel.vectors.iter().enumerate() {
            for y in &kernel.vectors[a + 1..] {
                if &x[i] * &y[j] != &x[j] * &y[i] {
                    pass = true;
                    break 'outer;
                }
            }
        }
        if !pass && failing_pair.is_none() {
            failing_pair = Some((i, j));
        }
        table.push(((i, j), pass));
    }
    ConditionIv { pass: failing_pair.is_none(), table, failing_pair }
}

/// An integer vector in `ker(a)` with every entry >= 1, or `None`.
///
/// Feasibility of `{A x = 0, x >= 1}` is decided exactly: substituting
/// `x = 1 + s` reduces it to a nonnegative system handled by phase-1
/// simplex, and any rational solution scales to an integer one.
pub fn positive_kernel_vector(a: &RationalMatrix) -> Option<IntVector> {
    let d = a.cols();
    if d == 0 {
        return None;
    }
    let b: Vec<Rational> = (0..a.rows())
        .map(|r| -a.row(r).iter().fold(Rational::zero(), |acc, v| acc + v))
        .collect();
    let s = simplex::solve_nonneg(a, &b)?;
    let x: Vec<Rational> = s.into_iter().map(|si| si + Rational::one()).collect();
    // Clear denominators; dividing by the gcd keeps every entry >= 1 since
    // the gcd divides the (positive) minimum entry.
    let mut scale = Int::one();
    for v in &x {
        scale = scale.lcm(v.denom());
    }
    let scale_r = Rational::from_integer(scale);
    let mut ints: Vec<Int> = x.iter().map(|v| (v * &scale_r).to_integer()).collect();
    let mut g = Int::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    if g > Int::one() {
        for v in &mut ints {
            *v = &*v / &g;
        }
    }
    debug_assert!(ints.iter().all(|v| v >= &Int::one()));
    debug_assert!(a.mul_int_vector(&ints).iter().all(Rational::is_zero));
    Some(ints)
}

/// Decide rainbow regularity and assemble the full verdict.
///
/// Both pair tests are always computed and must agree pair by pair; a
/// disagreement would falsify the equivalence the whole crate is built on,
/// so it panics rather than returning a half-trusted verdict.
pub fn is_rainbow_regular(a: &RationalMatrix) -> RegularityVerdict {
    let d = a.cols();
    let positive_witness = positive_kernel_vector(a);

    if d == 0 {
        return RegularityVerdict {
            regular: false,
            positive_witness: None,
            failing_pair: None,
            vanishing_row: None,
            condition_iii: None,
            condition_iv: None,
            reason: Some(NotRegularReason::NoColumns),
        };
    }
    if d == 1 {
        // A single entry is always rainbow, so regularity reduces to the
        // existence of a positive kernel vector (i.e. the column is zero).
        let regular = positive_witness.is_some();
        return RegularityVerdict {
            regular,
            positive_witness,
            failing_pair: None,
            vanishing_row: None,
            condition_iii: None,
            condition_iv: None,
            reason: if regular { None } else { Some(NotRegularReason::NoPositiveVector) },
        };
    }

    let iii = check_condition_iii(a).expect("d >= 2 checked above");
    let kernel = a.kernel_basis();
    let iv = check_condition_iv(&kernel, d);
    for (t3, t4) in iii.table.iter().zip(iv.table.iter()) {
        assert_eq!(t3.0, t4.0);
        assert_eq!(
            t3.1 == iii.full_rank,
            t4.1,
            "rank test and kernel-minor test disagree on pair {:?}",
            t3.0
        );
    }

    let regular = positive_witness.is_some() && iii.pass;
    let failing_pair = iii.failing_pair;
    let vanishing_row = failing_pair.map(|(i, j)| {
        vanishing_row_certificate(a, i, j)
            .expect("a failing pair always admits a vanishing-row certificate")
    });
    let reason = if regular {
        None
    } else if let Some((i, j)) = failing_pair {
        Some(NotRegularReason::FailingPair(i, j))
    } else {
        Some(NotRegularReason::NoPositiveVector)
    };
    RegularityVerdict {
        regular,
        positive_witness,
        failing_pair,
        vanishing_row,
        condition_iii: Some(iii),
        condition_iv: Some(iv),
        reason,
    }
}

/// For a pair failing the rank test, a nonzero rational combination of the
/// rows of `a` whose entries vanish outside `{i, j}`. Returns `None` when
/// the pair actually passes.
pub fn vanishing_row_certificate(
    a: &RationalMatrix,
    i: usize,
    j: usize,
) -> Option<Vec<Rational>> {
    let sub = a.delete_columns(i, j).ok()?;
    if sub.cols() == 0 {
        // Deleting the only two columns: any single nonzero row certifies.
        for r in 0..a.rows() {
            if a.row(r).iter().any(|v| !v.is_zero()) {
                return Some(a.row(r).to_vec());
            }
        }
        return None;
    }
    // Any left-kernel vector of the deleted matrix that does not kill the
    // full matrix produces the certificate r = alpha^T A.
    let left = sub.transpose().kernel_basis();
    for alpha in &left.vectors {
        let r: Vec<Rational> = (0..a.cols())
            .map(|c| {
                let mut acc = Rational::zero();
                for (row_idx, coeff) in alpha.iter().enumerate() {
                    acc += a.at(row_idx, c) * Rational::from_integer(coeff.clone());
                }
                acc
            })
            .collect();
        if r.iter().any(|v| !v.is_zero()) {
            for (c, v) in r.iter().enumerate() {
                assert!(
                    c == i || c == j || v.is_zero(),
                    "certificate must be supported on the failing pair"
                );
            }
            return Some(r);
        }
    }
    None
}

/// Exact `C^2 = nu / C(d,2)` for a rainbow regular matrix.
pub fn robust_constant(a: &RationalMatrix) -> Result<RobustConstant> {
    let verdict = is_rainbow_regular(a);
    if !verdict.regular {
        let why = match verdict.reason {
            Some(NotRegularReason::FailingPair(i, j)) => format!("pair ({i}, {j}) fails the rank test"),
            Some(NotRegularReason::NoPositiveVector) => "no positive kernel vector".to_string(),
            _ => "no columns".to_string(),
        };
        return Err(Error::NotRainbowRegular(why));
    }
    let d = a.cols();
    if d < 2 {
        return Err(Error::Invalid(
            "the robustness constant needs at least 2 columns".to_string(),
        ));
    }
    let polytope = lattice::polytope(a);
    let qp = lattice::ehrhart(&polytope, 2)?;
    let nu = qp.leading_coefficient();
    let binom = Rational::from_integer(Int::from((d * (d - 1) / 2) as u64));
    let c_squared = &nu / &binom;
    let c_approx = c_squared.to_f64().map(f64::sqrt).unwrap_or(f64::NAN);
    Ok(RobustConstant { nu, c_squared, c_approx })
}
