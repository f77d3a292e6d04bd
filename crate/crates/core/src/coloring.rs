//! Colorings of `[N]` and the constructions used to build or search them:
//! the multiplicative-class partition behind anti-rainbow colorings of 1x2
//! kernels, greedy class coloring, canonical enumeration of equinumerous
//! colorings, and seeded bounded-class-size random colorings.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{
    numbered_nonblank_lines, parse_err, parse_usize_token, tokens, RationalMatrix,
};
use crate::{Error, Result};

/// A surjective assignment `[N] -> {1..k}` with class-size accounting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    n: usize,
    k: usize,
    /// Color of element `i+1` (colors are 1-based).
    assign: Vec<u32>,
    class_sizes: Vec<usize>,
}

impl Coloring {
    /// Build a coloring from an explicit assignment, validating surjectivity.
    pub fn new(n: usize, k: usize, assign: Vec<u32>) -> Result<Coloring> {
        if assign.len() != n {
            return Err(Error::Invalid(format!(
                "assignment length {} does not match N = {n}",
                assign.len()
            )));
        }
        if k == 0 || k > n {
            return Err(Error::Invalid(format!("need 1 <= k <= N, got k = {k}, N = {n}")));
        }
        let mut class_sizes = vec![0usize; k];
        for (idx, &c) in assign.iter().enumerate() {
            if c == 0 || c as usize > k {
                return Err(Error::Invalid(format!(
                    "element {} has color {c}, outside 1..={k}",
                    idx + 1
                )));
            }
            class_sizes[c as usize - 1] += 1;
        }
        if let Some(empty) = class_sizes.iter().position(|&s| s == 0) {
            return Err(Error::Invalid(format!(
                "color {} is unused; colorings must be surjective",
                empty + 1
            )));
        }
        Ok(Coloring { n, k, assign, class_sizes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Color of `x` (1-based, must lie in `[N]`).
    pub fn color_of(&self, x: usize) -> u32 {
        self.assign[x - 1]
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assign
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn is_equinumerous(&self) -> bool {
        self.class_sizes.iter().all(|&s| s == self.class_sizes[0])
    }

    pub fn max_class_size(&self) -> usize {
        *self.class_sizes.iter().max().expect("k >= 1")
    }

    /// Text format: header `N k`, then one line of `N` colors.
    pub fn parse(text: &str) -> Result<Coloring> {
        let mut lines = numbered_nonblank_lines(text);
        let (header_no, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, 1, "empty input, expected header line `N k`"))?;
        let mut toks = tokens(header_no, header);
        let n = parse_usize_token(toks.next(), header_no, "element count `N`")?;
        let k = parse_usize_token(toks.next(), header_no, "color count `k`")?;
        if let Some((_, col)) = toks.next() {
            return Err(parse_err(header_no, col, "unexpected extra token in header"));
        }
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| parse_err(header_no, 1, "expected a line with N colors"))?;
        let mut assign = Vec::with_capacity(n);
        for (tok, col) in tokens(line_no, line) {
            if assign.len() == n {
                return Err(parse_err(line_no, col, &format!("expected exactly {n} colors")));
            }
            let c: u32 = tok
                .parse()
                .map_err(|_| parse_err(line_no, col, &format!("invalid color `{tok}`")))?;
            assign.push(c);
        }
        if assign.len() != n {
            return Err(parse_err(
                line_no,
                1,
                &format!("expected {n} colors, found {}", assign.len()),
            ));
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(parse_err(line_no, 1, "unexpected extra line after colors"));
        }
        Coloring::new(n, k, assign)
    }

    pub fn to_text(&self) -> String {
        let colors: Vec<String> = self.assign.iter().map(|c| c.to_string()).collect();
        format!("{} {}\n{}\n", self.n, self.k, colors.join(" "))
    }

    /// Split one element off a class of size >= 2 into a fresh color.
    /// Used by refinement-monotonicity tests.
    pub fn split_class_at(&self, x: usize) -> Result<Coloring> {
        let old = self.color_of(x);
        if self.class_sizes[old as usize - 1] < 2 {
            return Err(Error::Invalid("cannot split a singleton class".to_string()));
        }
        let mut assign = self.assign.clone();
        assign[x - 1] = self.k as u32 + 1;
        Coloring::new(self.n, self.k + 1, assign)
    }
}

/// The partition of `[N]` into multiplicative classes
/// `{a^g c, a^(g-1) b c, ..., b^g c} ∩ [N]` over `a,b`-free cores `c`
/// (pure `b`-chains when `a = 1`). Elements `i, j` with `a i = b j` or
/// `b i = a j` always land in one class.
#[derive(Clone, Debug)]
pub struct MultiplicativePartition {
    pub a: u64,
    pub b: u64,
    pub n: u64,
    /// Classes sorted by minimum element; each class is sorted ascending.
    pub classes: Vec<Vec<u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub max_class_size: usize,
    pub singleton_count: usize,
}

pub fn multiplicative_partition(a: u64, b: u64, n: u64) -> Result<MultiplicativePartition> {
    if a == 0 || a >= b {
        return Err(Error::Invalid(format!("need 0 < a < b, got a = {a}, b = {b}")));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::Invalid(format!("a = {a} and b = {b} must be coprime")));
    }
    if n == 0 {
        return Err(Error::Invalid("N must be at least 1".to_string()));
    }
    // Key each x in [N] by (core, chain weight): x = a^alpha b^beta c with c
    // divisible by neither a nor b; the class of x is the full chain of
    // weight alpha + beta over the same core. For a = 1 the chains are
    // unbounded upward, so the key is just the b-free core.
    let mut classes: std::collections::BTreeMap<(u64, u32), Vec<u64>> =
        std::collections::BTreeMap::new();
    for x in 1..=n {
        let mut core = x;
        let mut weight = 0u32;
        if a > 1 {
            while core % a == 0 {
                core /= a;
                weight += 1;
            }
        }
        while core % b == 0 {
            core /= b;
            weight += 1;
        }
        let key = if a == 1 { (core, 0) } else { (core, weight) };
        classes.entry(key).or_default().push(x);
    }
    let mut classes: Vec<Vec<u64>> = classes.into_values().collect();
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort_by_key(|c| c[0]);
    Ok(MultiplicativePartition { a, b, n, classes })
}

pub fn partition_stats(p: &MultiplicativePartition) -> PartitionStats {
    PartitionStats {
        max_class_size: p.classes.iter().map(Vec::len).max().unwrap_or(0),
        singleton_count: p.classes.iter().filter(|c| c.len() == 1).count(),
    }
}

/// Greedy classwise-monochromatic coloring: process classes largest first
/// (ties: smallest minimum element), always assigning a least-used color
/// (ties: smallest color index).
pub fn greedy_coloring(p: &MultiplicativePartition, k: usize) -> Result<Coloring> {
    if k == 0 || k > p.classes.len() {
        return Err(Error::Invalid(format!(
            "k = {k} must be between 1 and the class count {}",
            p.classes.len()
        )));
    }
    let mut order: Vec<usize> = (0..p.classes.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(p.classes[i].len()), p.classes[i][0]));
    let mut usage = vec![0usize; k];
    let mut assign = vec![0u32; p.n as usize];
    for &ci in &order {
        let color = (0..k).min_by_key(|&c| (usage[c], c)).expect("k >= 1");
        usage[color] += p.classes[ci].len();
        for &x in &p.classes[ci] {
            assign[x as usize - 1] = color as u32 + 1;
        }
    }
    Coloring::new(p.n as usize, k, assign)
}

/// Which case of the 1x2 anti-rainbow construction applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AntiRainbowCase {
    /// Kernel generator `(a, b)` with `0 < a < b` coprime: greedy coloring
    /// over the multiplicative partition.
    MultiplicativeChains { a: u64, b: u64 },
    /// Kernel generated by `(1, 1)`: every solution `(t, t)` repeats a
    /// value, so any coloring is anti-rainbow.
    EqualPair,
    /// Kernel meets no positive vector (an entry of the generator is zero or
    /// the generator has mixed signs impossible to make positive), so the
    /// box contains no solutions at all.
    NoPositiveSolutions,
}

/// Equinumerous anti-rainbow coloring of `[n]` for a 1x2 matrix, following
/// the case split on its kernel generator.
pub fn anti_rainbow_coloring(
    matrix: &RationalMatrix,
    n: usize,
    k: usize,
) -> Result<(Coloring, AntiRainbowCase)> {
    if matrix.rows() != 1 || matrix.cols() != 2 {
        return Err(Error::Invalid(format!(
            "anti-rainbow construction applies to 1x2 matrices, got {}x{}",
            matrix.rows(),
            matrix.cols()
        )));
    }
    if matrix.row(0).iter().all(Zero::is_zero) {
        return Err(Error::Invalid(
            "the zero 1x2 matrix is rainbow regular; no anti-rainbow coloring exists".to_string(),
        ));
    }
    let kernel = matrix.kernel_basis();
    let g = &kernel.vectors[0];
    let (g0, g1) = (&g[0], &g[1]);
    let case = if g0.is_zero() || g1.is_zero() || g0.is_negative() != g1.is_negative() {
        AntiRainbowCase::NoPositiveSolutions
    } else if g0 == g1 {
        AntiRainbowCase::EqualPair
    } else {
        let a0 = g0.magnitude().try_into().map_err(|_| {
            Error::Invalid("kernel generator too large for the construction".to_string())
        })?;
        let b0: u64 = g1.magnitude().try_into().map_err(|_| {
            Error::Invalid("kernel generator too large for the construction".to_string())
        })?;
        let (a, b) = if a0 < b0 { (a0, b0) } else { (b0, a0) };
        AntiRainbowCase::MultiplicativeChains { a, b }
    };
    let coloring = match &case {
        AntiRainbowCase::MultiplicativeChains { a, b } => {
            let p = multiplicative_partition(*a, *b, n as u64)?;
            greedy_coloring(&p, k)?
        }
        _ => {
            // Any equinumerous coloring works; use consecutive blocks.
            if k == 0 || k > n || n % k != 0 {
                return Err(Error::Invalid(format!("k = {k} must divide N = {n}")));
            }
            let quota = n / k;
            let assign: Vec<u32> = (0..n).map(|i| (i / quota) as u32 + 1).collect();
            Coloring::new(n, k, assign)?
        }
    };
    Ok((coloring, case))
}

/// Iterator over canonical equinumerous k-colorings of `[n]`: exactly one
/// representative per color-relabeling orbit, classes ordered by first
/// occurrence (element 1 always has color 1).
pub struct EquinumerousColorings {
    n: usize,
    k: usize,
    quota: usize,
    assign: Vec<u32>,
    sizes: Vec<usize>,
    max_used: Vec<u32>,
    pos: usize,
    started: bool,
    exhausted: bool,
}

/// All equinumerous k-colorings of `[n]` up to color relabeling; rainbow
/// existence is invariant under relabeling, so representatives suffice.
pub fn enumerate_equinumerous(n: usize, k: usize) -> Result<EquinumerousColorings> {
    if k == 0 || n == 0 || n % k != 0 {
        return Err(Error::Invalid(format!("k = {k} must divide N = {n} with k >= 1")));
    }
    Ok(EquinumerousColorings {
        n,
        k,
        quota: n / k,
        assign: vec![0; n],
        sizes: vec![0; k],
        max_used: vec![0; n + 1],
        pos: 0,
        started: false,
        exhausted: false,
    })
}

impl EquinumerousColorings {
    /// Total number of canonical colorings: N! / ((N/k)!^k k!).
    pub fn orbit_count(n: usize, k: usize) -> u128 {
        let quota = n / k;
        let mut num: u128 = 1;
        for i in 2..=n {
            num *= i as u128;
        }
        let mut fact_quota: u128 = 1;
        for i in 2..=quota {
            fact_quota *= i as u128;
        }
        let mut den: u128 = 1;
        for _ in 0..k {
            den *= fact_quota;
        }
        for i in 2..=k {
            den *= i as u128;
        }
        num / den
    }

    /// Smallest admissible color at `pos` that is strictly greater than
    /// `from`. A color is admissible if its class has room and it does not
    /// skip over an unopened color.
    fn next_color(&self, from: u32) -> Option<u32> {
        let cap = (self.max_used[self.pos] + 1).min(self.k as u32);
        let mut c = from + 1;
        while c <= cap {
            if self.sizes[c as usize - 1] < self.quota {
                return Some(c);
            }
            c += 1;
        }
        None
    }

    fn place(&mut self, c: u32) {
        self.assign[self.pos] = c;
        self.sizes[c as usize - 1] += 1;
        self.max_used[self.pos + 1] = self.max_used[self.pos].max(c);
        self.pos += 1;
    }

    fn unplace(&mut self) -> u32 {
        self.pos -= 1;
        let c = self.assign[self.pos];
        self.sizes[c as usize - 1] -= 1;
        self.assign[self.pos] = 0;
        c
    }
}

impl Iterator for EquinumerousColorings {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        if self.exhausted {
            return None;
        }
        if self.started {
            // Backtrack to the deepest position that can advance.
            loop {
                if self.pos == 0 {
                    self.exhausted = true;
                    return None;
                }
                let prev = self.unplace();
                if let Some(c) = self.next_color(prev) {
                    self.place(c);
                    break;
                }
            }
        } else {
            self.started = true;
        }
        // Quota bookkeeping guarantees every descent completes: capacity of
        // opened classes plus quota per unopened color always equals the
        // number of unfilled positions.
        while self.pos < self.n {
            let c = self.next_color(0).expect("partial canonical colorings always extend");
            self.place(c);
        }
        Some(
            Coloring::new(self.n, self.k, self.assign.clone())
                .expect("enumerated colorings are surjective by construction"),
        )
    }
}

/// Seeded pseudo-random surjective coloring with every class of size at
/// most `max_class_size`. Deterministic for a fixed seed; not uniform over
/// all such colorings (no claim needs uniformity).
pub fn random_bounded_coloring(
    n: usize,
    k: usize,
    max_class_size: usize,
    seed: u64,
) -> Result<Coloring> {
    if max_class_size == 0 {
        return Err(Error::Invalid("max class size must be at least 1".to_string()));
    }
    if k == 0 || k > n {
        return Err(Error::Invalid(format!("need 1 <= k <= N, got k = {k}, N = {n}")));
    }
    if k.checked_mul(max_class_size).map_or(true, |cap| cap < n) {
        return Err(Error::Invalid(format!(
            "k * max_class_size = {k} * {max_class_size} < N = {n}: no such coloring"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Start surjective, then deal the remaining elements to classes with room.
    let mut sizes = vec![1usize; k];
    for _ in 0..n - k {
        let open: Vec<usize> = (0..k).filter(|&c| sizes[c] < max_class_size).collect();
        let pick = open[rng.gen_range(0..open.len())];
        sizes[pick] += 1;
    }
    let mut elements: Vec<usize> = (1..=n).collect();
    elements.shuffle(&mut rng);
    let mut assign = vec![0u32; n];
    let mut cursor = 0;
    for (color, &size) in sizes.iter().enumerate() {
        for &x in &elements[cursor..cursor + size] {
            assign[x - 1] = color as u32 + 1;
        }
        cursor += size;
    }
    Coloring::new(n, k, assign)
}
