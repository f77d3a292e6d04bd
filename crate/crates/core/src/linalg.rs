//! Exact rational linear algebra: reduced row echelon form, rank, kernel
//! bases and linear solves over `BigRational`. No floating point anywhere;
//! every identity asserted by callers is an exact equality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational scalar. Always stored reduced with a positive denominator.
pub type Rational = BigRational;
/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Integer vector; the length must match the ambient column count when used
/// together with a matrix.
pub type IntVector = Vec<Int>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

/// Dense row-major matrix over exact rationals.
///
/// `rows >= 1` is required; `cols == 0` is allowed (a matrix with no columns
/// has rank 0 by convention, which the two-column-deletion test relies on).
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert!(rows >= 1, "matrix must have at least one row");
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        RationalMatrix { rows, cols, entries }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(rows, cols, entries.iter().map(|&e| rat(e)).collect())
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn transpose(&self) -> RationalMatrix {
        if self.cols == 0 {
            // A transposed m x 0 matrix would have zero rows, which we do not
            // represent; callers never need it (kernel of a 0-column matrix
            // is empty). Give a 1 x m zero matrix instead of panicking would
            // be wrong, so insist.
            panic!("cannot transpose a matrix with zero columns");
        }
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.at(r, c).clone());
            }
        }
        RationalMatrix::new(self.cols, self.rows, entries)
    }

    /// Matrix-vector product with an integer vector, exact.
    pub fn mul_int_vector(&self, v: &[Int]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for c in 0..self.cols {
                    acc += self.at(r, c) * Rational::from_integer(v[c].clone());
                }
                acc
            })
            .collect()
    }

    pub fn mul_rational_vector(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for c in 0..self.cols {
                    acc += self.at(r, c) * &v[c];
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form together with the pivot column indices.
    /// The RREF is unique, so this doubles as a canonical form.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.at(row, col).clone();
            for c in col..m.cols {
                let v = m.at(row, c).clone() / &inv;
                *m.at_mut(row, c) = v;
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in col..m.cols {
                        let v = m.at(r, c).clone() - &factor * m.at(row, c);
                        *m.at_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Rank over the rationals. A matrix with zero columns has rank 0.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Primitive integer basis of `ker(self)`.
    ///
    /// Each basis vector is scaled to integers with gcd 1 and its first
    /// nonzero entry positive, so the output is deterministic. Vectors are
    /// ordered by their free column index in the RREF.
    pub fn kernel_basis(&self) -> KernelBasis {
        let (r, pivots) = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut vectors = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (row_idx, &p) in pivots.iter().enumerate() {
                v[p] = -r.at(row_idx, f).clone();
            }
            vectors.push(primitive_integer_vector(&v));
        }
        let basis = KernelBasis { ambient: self.cols, vectors };
        debug_assert!(basis
            .vectors
            .iter()
            .all(|v| self.mul_int_vector(v).iter().all(Rational::is_zero)));
        basis
    }

    /// One rational solution of `self * x = b`, or `None` when inconsistent.
    /// The full solution set is the returned vector plus `ker(self)`.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length must match rows");
        let mut entries = Vec::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            entries.extend_from_slice(self.row(r));
            entries.push(b[r].clone());
        }
        let aug = RationalMatrix::new(self.rows, self.cols + 1, entries);
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row_idx, &p) in pivots.iter().enumerate() {
            x[p] = red.at(row_idx, self.cols).clone();
        }
        Some(x)
    }

    /// The matrix with columns `i` and `j` removed (`i < j` required).
    pub fn delete_columns(&self, i: usize, j: usize) -> Result<RationalMatrix> {
        if i >= j || j >= self.cols {
            return Err(Error::Invalid(format!(
                "column pair ({i}, {j}) out of range for a matrix with {} columns",
                self.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * (self.cols - 2));
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c != i && c != j {
                    entries.push(self.at(r, c).clone());
                }
            }
        }
        Ok(RationalMatrix::new(self.rows, self.cols - 2, entries))
    }

    /// Apply a column permutation: column `c` of the result is column
    /// `perm[c]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> RationalMatrix {
        assert_eq!(perm.len(), self.cols);
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for r in 0..self.rows {
            for &p in perm {
                entries.push(self.at(r, p).clone());
            }
        }
        RationalMatrix::new(self.rows, self.cols, entries)
    }

    /// Scale one row by a nonzero rational.
    pub fn scale_row(&self, r: usize, factor: &Rational) -> RationalMatrix {
        assert!(!factor.is_zero(), "row scale factor must be nonzero");
        let mut m = self.clone();
        for c in 0..self.cols {
            let v = m.at(r, c) * factor;
            *m.at_mut(r, c) = v;
        }
        m
    }

    /// Parse the matrix text format: a header line `m d` followed by `m`
    /// lines of `d` whitespace-separated rationals (`p`, `-p` or `p/q` with
    /// `q > 0`). Blank lines are ignored.
    pub fn parse(text: &str) -> Result<RationalMatrix> {
        let mut lines = numbered_nonblank_lines(text);
        let (header_no, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, 1, "empty input, expected header line `m d`"))?;
        let mut header_toks = tokens(header_no, header);
        let m = parse_usize_token(header_toks.next(), header_no, "row count `m`")?;
        let d = parse_usize_token(header_toks.next(), header_no, "column count `d`")?;
        if let Some((_, col)) = header_toks.next() {
            return Err(parse_err(header_no, col, "unexpected extra token in header"));
        }
        if m == 0 {
            return Err(parse_err(header_no, 1, "row count must be at least 1"));
        }
        let mut entries = Vec::with_capacity(m * d);
        for row_idx in 0..m {
            let (line_no, line) = lines.next().ok_or_else(|| {
                parse_err(header_no, 1, &format!("expected {m} matrix rows, found {row_idx}"))
            })?;
            let mut count = 0;
            for (tok, col) in tokens(line_no, line) {
                if count == d {
                    return Err(parse_err(line_no, col, &format!("expected {d} entries per row")));
                }
                entries.push(parse_rational(tok, line_no, col)?);
                count += 1;
            }
            if count != d {
                return Err(parse_err(
                    line_no,
                    1,
                    &format!("expected {d} entries in row, found {count}"),
                ));
            }
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(parse_err(line_no, 1, "unexpected extra line after matrix rows"));
        }
        Ok(RationalMatrix::new(m, d, entries))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Primitive integer basis of a matrix kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    /// Ambient dimension `d` (column count of the matrix).
    pub ambient: usize,
    /// Linearly independent primitive integer vectors spanning the kernel.
    pub vectors: Vec<IntVector>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Exact membership test: is `v` in the rational span of the basis?
    pub fn contains_in_span(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if self.vectors.is_empty() {
            return v.iter().all(Zero::is_zero);
        }
        // Solve B c = v, B the d x dim basis matrix.
        let dim = self.dim();
        let mut entries = Vec::with_capacity(self.ambient * dim);
        for i in 0..self.ambient {
            for vec in &self.vectors {
                entries.push(Rational::from_integer(vec[i].clone()));
            }
        }
        let b = RationalMatrix::new(self.ambient, dim, entries);
        let rhs: Vec<Rational> = v.iter().map(|x| Rational::from_integer(x.clone())).collect();
        b.solve(&rhs).is_some()
    }
}

/// Clear denominators, divide by the gcd and fix the sign so the first
/// nonzero entry is positive. Deterministic normal form for kernel vectors.
pub fn primitive_integer_vector(v: &[Rational]) -> IntVector {
    let mut denom_lcm = Int::one();
    for x in v {
        denom_lcm = denom_lcm.lcm(x.denom());
    }
    let scale = Rational::from_integer(denom_lcm);
    let mut ints: Vec<Int> = v.iter().map(|x| (x * &scale).to_integer()).collect();
    let mut g = Int::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in &mut ints {
            *x = &*x / &g;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut ints {
                *x = -x.clone();
            }
        }
    }
    ints
}

pub(crate) fn parse_err(line: usize, col: usize, msg: &str) -> Error {
    Error::Parse { line, col, msg: msg.to_string() }
}

/// Non-blank lines of `text` with their 1-based line numbers.
pub(crate) fn numbered_nonblank_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        if l.trim().is_empty() {
            None
        } else {
            Some((i + 1, l))
        }
    })
}

/// Whitespace tokens of a line with 1-based character columns.
pub(crate) fn tokens(_line_no: usize, line: &str) -> impl Iterator<Item = (&str, usize)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((&line[s..i], s + 1));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((&line[s..], s + 1));
    }
    out.into_iter()
}

pub(crate) fn parse_usize_token(
    tok: Option<(&str, usize)>,
    line: usize,
    what: &str,
) -> Result<usize> {
    let (tok, col) = tok.ok_or_else(|| parse_err(line, 1, &format!("missing {what}")))?;
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, col, &format!("invalid {what}: `{tok}`")))
}

/// Parse a single rational token `p`, `-p` or `p/q` (with `q > 0`).
pub fn parse_rational(tok: &str, line: usize, col: usize) -> Result<Rational> {
    let (num_str, den_str) = match tok.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (tok, None),
    };
    let numer = Int::from_str(num_str)
        .map_err(|_| parse_err(line, col, &format!("invalid numerator in `{tok}`")))?;
    let denom = match den_str {
        Some(d) => Int::from_str(d)
            .map_err(|_| parse_err(line, col, &format!("invalid denominator in `{tok}`")))?,
        None => Int::one(),
    };
    if denom <= Int::zero() {
        return Err(parse_err(line, col, &format!("denominator must be positive in `{tok}`")));
    }
    Ok(Rational::new(numer, denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: usize, cols: usize, entries: &[i64]) -> RationalMatrix {
        RationalMatrix::from_i64(rows, cols, entries)
    }

    /// Independent rank oracle: size of the largest nonvanishing minor.
    fn rank_by_minors(a: &RationalMatrix) -> usize {
        let n = a.rows().min(a.cols());
        for size in (1..=n).rev() {
            for rows in combos(a.rows(), size) {
                for cols in combos(a.cols(), size) {
                    if !det(a, &rows, &cols).is_zero() {
                        return size;
                    }
                }
            }
        }
        0
    }

    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    fn det(a: &RationalMatrix, rows: &[usize], cols: &[usize]) -> Rational {
        // Laplace expansion; fine for the tiny minors used in tests.
        if rows.len() == 1 {
            return a.at(rows[0], cols[0]).clone();
        }
        let mut acc = Rational::zero();
        for (k, &c) in cols.iter().enumerate() {
            let sub_cols: Vec<usize> =
                cols.iter().copied().filter(|&x| x != c).collect();
            let term = a.at(rows[0], c) * det(a, &rows[1..], &sub_cols);
            if k % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn rref_already_reduced() {
        let a = m(1, 3, &[1, -2, 1]);
        let (r, p) = a.rref();
        assert_eq!(r, a);
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_identity() {
        let a = m(2, 2, &[1, 0, 0, 1]);
        let (r, p) = a.rref();
        assert_eq!(r, a);
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_dependent_rows() {
        let a = m(2, 3, &[1, 1, -1, 2, 2, -2]);
        let (r, p) = a.rref();
        assert_eq!(r, m(2, 3, &[1, 1, -1, 0, 0, 0]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(m(1, 3, &[1, -2, 1]).rank(), 1);
        assert_eq!(RationalMatrix::zero(1, 0).rank(), 0);
        let a = m(
            3,
            5,
            &[1, 0, 1, -1, 0, /**/ 0, 1, 1, 0, -1, /**/ 1, 0, 0, 1, -1],
        );
        assert_eq!(a.rank(), 3);
    }

    #[test]
    fn kernel_of_one_by_two() {
        let k = m(1, 2, &[1, -2]).kernel_basis();
        assert_eq!(k.vectors, vec![vec![Int::from(2), Int::from(1)]]);
    }

    #[test]
    fn kernel_of_three_term_ap() {
        let k = m(1, 3, &[1, -2, 1]).kernel_basis();
        assert_eq!(k.dim(), 2);
        let ones = vec![Int::one(), Int::one(), Int::one()];
        assert!(k.contains_in_span(&ones));
    }

    #[test]
    fn kernel_of_injective_map() {
        let k = m(1, 1, &[5]).kernel_basis();
        assert_eq!(k.dim(), 0);
        assert!(k.contains_in_span(&[Int::zero()]));
        assert!(!k.contains_in_span(&[Int::one()]));
    }

    #[test]
    fn kernel_of_display_matrix_matches_generators() {
        let a = m(
            3,
            5,
            &[1, 0, 1, -1, 0, /**/ 0, 1, 1, 0, -1, /**/ 1, 0, 0, 1, -1],
        );
        let k = a.kernel_basis();
        assert_eq!(k.dim(), 2);
        let g1: IntVector = [1, 2, 3, 4, 5].iter().map(|&x| Int::from(x)).collect();
        let g2: IntVector = [1, 2, 4, 5, 6].iter().map(|&x| Int::from(x)).collect();
        assert!(k.contains_in_span(&g1));
        assert!(k.contains_in_span(&g2));
    }

    #[test]
    fn solve_examples() {
        let a = m(1, 3, &[1, -2, 1]);
        let x = a.solve(&[Rational::zero()]).unwrap();
        assert!(a.mul_rational_vector(&x).iter().all(Rational::is_zero));

        let a = m(1, 2, &[1, 1]);
        let x = a.solve(&[rat(3)]).unwrap();
        assert_eq!(&x[0] + &x[1], rat(3));

        let a = m(3, 2, &[1, 0, 0, 1, 1, 1]);
        assert!(a.solve(&[rat(1), rat(1), rat(3)]).is_none());
    }

    #[test]
    fn delete_columns_examples() {
        let a = m(1, 3, &[1, -2, 1]);
        assert_eq!(a.delete_columns(0, 1).unwrap(), m(1, 1, &[1]));
        assert_eq!(a.delete_columns(0, 2).unwrap(), m(1, 1, &[-2]));
        let id = m(2, 2, &[1, 0, 0, 1]);
        let empty = id.delete_columns(0, 1).unwrap();
        assert_eq!(empty.cols(), 0);
        assert_eq!(empty.rank(), 0);
        assert!(a.delete_columns(1, 1).is_err());
        assert!(a.delete_columns(0, 3).is_err());
        assert!(a.delete_columns(2, 1).is_err());
    }

    #[test]
    fn parse_and_format_round_trip() {
        let text = "2 3\n1 -2 1/2\n0 5/3 -7\n";
        let a = RationalMatrix::parse(text).unwrap();
        assert_eq!(a.to_text(), text);
        let b = RationalMatrix::parse(&a.to_text()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_errors_carry_position() {
        match RationalMatrix::parse("1 2\n1 x\n") {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!((line, col), (2, 3));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match RationalMatrix::parse("1 2\n1 1/0\n") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(RationalMatrix::parse("").is_err());
        assert!(RationalMatrix::parse("1 2\n1\n").is_err());
        assert!(RationalMatrix::parse("1 2\n1 2 3\n").is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = RationalMatrix> {
        (1usize..=3, 1usize..=6).prop_flat_map(|(rows, cols)| {
            proptest::collection::vec(-3i64..=3, rows * cols)
                .prop_map(move |e| RationalMatrix::from_i64(rows, cols, &e))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn rank_plus_kernel_dim_is_d(a in arb_matrix()) {
            prop_assert_eq!(a.rank() + a.kernel_basis().dim(), a.cols());
        }

        #[test]
        fn kernel_vectors_are_exact_and_primitive(a in arb_matrix()) {
            for v in &a.kernel_basis().vectors {
                prop_assert!(a.mul_int_vector(v).iter().all(Rational::is_zero));
                let mut g = Int::zero();
                for x in v { g = g.gcd(x); }
                prop_assert_eq!(g, Int::one());
                let first = v.iter().find(|x| !x.is_zero()).unwrap();
                prop_assert!(first > &Int::zero());
            }
        }

        #[test]
        fn rref_is_idempotent(a in arb_matrix()) {
            let (r, p) = a.rref();
            let (rr, pp) = r.rref();
            prop_assert_eq!(r, rr);
            prop_assert_eq!(p, pp);
        }

        #[test]
        fn rank_matches_minor_oracle(a in arb_matrix()) {
            prop_assert_eq!(a.rank(), rank_by_minors(&a));
        }

        #[test]
        fn solve_produces_valid_solutions(a in arb_matrix(),
                                          rhs in proptest::collection::vec(-3i64..=3, 1..=3)) {
            if rhs.len() == a.rows() {
                let b: Vec<Rational> = rhs.iter().map(|&x| rat(x)).collect();
                if let Some(x) = a.solve(&b) {
                    prop_assert_eq!(a.mul_rational_vector(&x), b);
                }
            }
        }
    }
}
