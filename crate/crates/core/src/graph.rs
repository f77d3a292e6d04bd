//! Oriented multigraphs, incidence matrices, edge connectivity, and
//! small-scale nowhere-zero flow search.
//!
//! With the sign convention +1 at the tail and -1 at the head, the kernel
//! of the incidence matrix is exactly the space of circulations, so the
//! rainbow machinery applies verbatim: a positive rainbow kernel vector is
//! a rainbow flow.

use num_traits::{ToPrimitive, Zero};

use crate::coloring::Coloring;
use crate::linalg::{
    numbered_nonblank_lines, parse_err, parse_usize_token, rat, tokens, Rational, RationalMatrix,
};
use crate::regularity::{check_condition_iii, is_rainbow_regular};
use crate::search::find_rainbow;
use crate::{Error, Result};

/// Directed multigraph; parallel edges allowed, self-loops rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedGraph {
    vertex_count: usize,
    /// `(tail, head)` pairs, 0-indexed.
    edges: Vec<(usize, usize)>,
}

/// An integer circulation on the edges of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flow {
    pub values: Vec<i64>,
}

/// A nowhere-zero circulation turned positive by flipping edges.
#[derive(Clone, Debug)]
pub struct PositiveFlow {
    /// `true` where the original orientation was reversed.
    pub flipped: Vec<bool>,
    /// Values on the reoriented graph; all >= 1.
    pub flow: Flow,
}

impl OrientedGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<OrientedGraph> {
        if vertex_count == 0 {
            return Err(Error::Invalid("graph needs at least one vertex".to_string()));
        }
        for (i, &(t, h)) in edges.iter().enumerate() {
            if t >= vertex_count || h >= vertex_count {
                return Err(Error::Invalid(format!("edge {i} endpoint out of range")));
            }
            if t == h {
                return Err(Error::Invalid(format!("edge {i} is a self-loop")));
            }
        }
        Ok(OrientedGraph { vertex_count, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Reverse the orientation of the flagged edges.
    pub fn reorient(&self, flipped: &[bool]) -> OrientedGraph {
        assert_eq!(flipped.len(), self.edges.len());
        let edges = self
            .edges
            .iter()
            .zip(flipped)
            .map(|(&(t, h), &f)| if f { (h, t) } else { (t, h) })
            .collect();
        OrientedGraph { vertex_count: self.vertex_count, edges }
    }

    /// Text format: header `n m`, then `m` lines `tail head` (1-indexed).
    pub fn parse(text: &str) -> Result<OrientedGraph> {
        let mut lines = numbered_nonblank_lines(text);
        let (header_no, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, 1, "empty input, expected header line `n m`"))?;
        let mut toks = tokens(header_no, header);
        let n = parse_usize_token(toks.next(), header_no, "vertex count `n`")?;
        let m = parse_usize_token(toks.next(), header_no, "edge count `m`")?;
        if let Some((_, col)) = toks.next() {
            return Err(parse_err(header_no, col, "unexpected extra token in header"));
        }
        let mut edges = Vec::with_capacity(m);
        for idx in 0..m {
            let (line_no, line) = lines.next().ok_or_else(|| {
                parse_err(header_no, 1, &format!("expected {m} edges, found {idx}"))
            })?;
            let mut toks = tokens(line_no, line);
            let t = parse_usize_token(toks.next(), line_no, "tail vertex")?;
            let h = parse_usize_token(toks.next(), line_no, "head vertex")?;
            if let Some((_, col)) = toks.next() {
                return Err(parse_err(line_no, col, "unexpected extra token on edge line"));
            }
            if t == 0 || t > n || h == 0 || h > n {
                return Err(parse_err(line_no, 1, &format!("vertex out of range 1..={n}")));
            }
            if t == h {
                return Err(parse_err(line_no, 1, "self-loops are not supported"));
            }
            edges.push((t - 1, h - 1));
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(parse_err(line_no, 1, "unexpected extra line after edges"));
        }
        OrientedGraph::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.vertex_count, self.edges.len());
        for &(t, h) in &self.edges {
            s.push_str(&format!("{} {}\n", t + 1, h + 1));
        }
        s
    }

    /// Component id per vertex, ignoring edges listed in `skip`.
    fn components_skipping(&self, skip: &[usize]) -> Vec<usize> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (i, &(t, h)) in self.edges.iter().enumerate() {
            if skip.contains(&i) {
                continue;
            }
            adj[t].push(h);
            adj[h].push(t);
        }
        let mut comp = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for start in 0..self.vertex_count {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        *self.components_skipping(&[]).iter().max().unwrap() + 1
    }
}

/// The `n x m` incidence matrix: +1 at the tail, -1 at the head of each
/// edge, so `M phi = 0` is Kirchhoff's law. Asserts `rank(M) = n - c`.
pub fn incidence_matrix(g: &OrientedGraph) -> RationalMatrix {
    let n = g.vertex_count;
    let m = g.edges.len();
    let mut entries = vec![Rational::zero(); n * m];
    for (e, &(t, h)) in g.edges.iter().enumerate() {
        entries[t * m + e] = rat(1);
        entries[h * m + e] = rat(-1);
    }
    let matrix = RationalMatrix::new(n, m, entries);
    debug_assert_eq!(matrix.rank(), n - g.component_count());
    matrix
}

/// Are all connected components 3-edge-connected? Brute force over single
/// edges and edge pairs: removal must never increase the component count.
/// Isolated vertices are vacuously 3-edge-connected.
pub fn components_3_edge_connected(g: &OrientedGraph) -> bool {
    let base = g.component_count();
    let m = g.edges.len();
    for e in 0..m {
        if g.components_skipping(&[e]).iter().max().unwrap() + 1 != base {
            return false;
        }
        for f in e + 1..m {
            if g.components_skipping(&[e, f]).iter().max().unwrap() + 1 != base {
                return false;
            }
        }
    }
    true
}

/// Fundamental cycles of a spanning forest: for each non-tree edge, the
/// cycle closed through tree edges, as `(edge, sign)` pairs with the
/// non-tree edge at sign +1.
fn fundamental_cycles(g: &OrientedGraph) -> (Vec<Vec<(usize, i64)>>, Vec<bool>) {
    let n = g.vertex_count;
    let m = g.edges.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (neighbor, edge)
    for (e, &(t, h)) in g.edges.iter().enumerate() {
        adj[t].push((h, e));
        adj[h].push((t, e));
    }
    let mut in_tree = vec![false; m];
    let mut parent_edge: Vec<Option<usize>> = vec![None; n];
    let mut parent: Vec<usize> = (0..n).collect();
    let mut depth = vec![0usize; n];
    let mut visited = vec![false; n];
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &(w, e) in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    in_tree[e] = true;
                    parent[w] = v;
                    parent_edge[w] = Some(e);
                    depth[w] = depth[v] + 1;
                    stack.push(w);
                }
            }
        }
    }
    // Walking from `v` up to `u` along tree edges; sign +1 when the edge is
    // traversed tail-to-head.
    let tree_step = |v: usize| -> (usize, usize, i64) {
        let e = parent_edge[v].expect("non-root");
        let (t, _h) = g.edges[e];
        let up = parent[v];
        let sign = if t == v { 1 } else { -1 };
        (up, e, sign)
    };
    let mut cycles = Vec::new();
    for (e, &(t, h)) in g.edges.iter().enumerate() {
        if in_tree[e] {
            continue;
        }
        // cycle: t --e--> h, then tree path h .. t
        let mut cycle = vec![(e, 1i64)];
        let (mut a, mut b) = (h, t);
        let mut a_path = Vec::new();
        let mut b_path = Vec::new();
        while depth[a] > depth[b] {
            let (up, e, sign) = tree_step(a);
            a_path.push((e, sign));
            a = up;
        }
        while depth[b] > depth[a] {
            let (up, e, sign) = tree_step(b);
            b_path.push((e, sign));
            b = up;
        }
        while a != b {
            let (up, e, sign) = tree_step(a);
            a_path.push((e, sign));
            a = up;
            let (up, e, sign) = tree_step(b);
            b_path.push((e, sign));
            b = up;
        }
        // a-path is traversed in walking direction, b-path in reverse.
        cycle.extend(a_path);
        cycle.extend(b_path.into_iter().map(|(e, s)| (e, -s)));
        cycles.push(cycle);
    }
    (cycles, in_tree)
}

const FLOW_CAP: i64 = 5;

/// Search for a nowhere-zero circulation with values in
/// `{-5..-1, 1..5}` over integer combinations of the fundamental cycle
/// basis, then flip negative edges to produce a positive flow.
///
/// Any such circulation has coefficients `phi(e_i)` on its non-tree edges,
/// so the coefficient box is exhaustive: the search succeeds if and only if
/// a nowhere-zero 6-flow exists (in particular, never on bridged graphs).
pub fn positive_flow(g: &OrientedGraph) -> Option<PositiveFlow> {
    let m = g.edges.len();
    if m == 0 {
        return Some(PositiveFlow { flipped: Vec::new(), flow: Flow { values: Vec::new() } });
    }
    let (cycles, _in_tree) = fundamental_cycles(g);
    // Edges covered by no cycle are bridges: forced to zero.
    let mut cycles_through: Vec<Vec<(usize, i64)>> = vec![Vec::new(); m];
    for (ci, cycle) in cycles.iter().enumerate() {
        for &(e, s) in cycle {
            cycles_through[e].push((ci, s));
        }
    }
    if cycles_through.iter().any(Vec::is_empty) {
        return None;
    }
    // remaining[e][i] = how many cycles with index >= i pass through e;
    // used to prune partial sums that cannot reach a legal final value.
    let remaining: Vec<Vec<i64>> = cycles_through
        .iter()
        .map(|through| {
            let mut rem = vec![0i64; cycles.len() + 1];
            for i in (0..cycles.len()).rev() {
                rem[i] = rem[i + 1] + through.iter().filter(|&&(ci, _)| ci == i).count() as i64;
            }
            rem
        })
        .collect();

    let mut phi = vec![0i64; m];
    let coeff_order: Vec<i64> = (1..=FLOW_CAP).flat_map(|v| [v, -v]).collect();

    fn feasible(phi_e: i64, rem: i64) -> bool {
        if rem == 0 {
            phi_e != 0 && phi_e.abs() <= FLOW_CAP
        } else {
            phi_e - FLOW_CAP * rem <= FLOW_CAP && phi_e + FLOW_CAP * rem >= -FLOW_CAP
        }
    }

    fn search(
        idx: usize,
        cycles: &[Vec<(usize, i64)>],
        remaining: &[Vec<i64>],
        coeff_order: &[i64],
        phi: &mut Vec<i64>,
    ) -> bool {
        if idx == cycles.len() {
            return true;
        }
        'coeffs: for &c in coeff_order {
            for &(e, s) in &cycles[idx] {
                phi[e] += s * c;
            }
            for &(e, _) in &cycles[idx] {
                if !feasible(phi[e], remaining[e][idx + 1]) {
                    for &(e, s) in &cycles[idx] {
                        phi[e] -= s * c;
                    }
                    continue 'coeffs;
                }
            }
            if search(idx + 1, cycles, remaining, coeff_order, phi) {
                return true;
            }
            for &(e, s) in &cycles[idx] {
                phi[e] -= s * c;
            }
        }
        false
    }

    if !search(0, &cycles, &remaining, &coeff_order, &mut phi) {
        return None;
    }
    debug_assert!(phi.iter().all(|&v| v != 0 && v.abs() <= FLOW_CAP));
    let flipped: Vec<bool> = phi.iter().map(|&v| v < 0).collect();
    let values: Vec<i64> = phi.iter().map(|&v| v.abs()).collect();
    let reoriented = g.reorient(&flipped);
    let matrix = incidence_matrix(&reoriented);
    let as_int: Vec<crate::linalg::Int> =
        values.iter().map(|&v| crate::linalg::Int::from(v)).collect();
    assert!(matrix.mul_int_vector(&as_int).iter().all(Rational::is_zero));
    Some(PositiveFlow { flipped, flow: Flow { values } })
}

/// Both sides of the flow equivalence for one graph: every component is
/// 3-edge-connected iff some orientation's incidence matrix passes the rank
/// test and carries a positive nowhere-zero flow.
#[derive(Clone, Debug)]
pub struct CorollaryReport {
    /// Left side: every component is 3-edge-connected.
    pub three_edge_connected: bool,
    /// Rank test on the incidence matrix (vacuously true when m < 2).
    pub rank_condition: bool,
    pub positive_flow_found: bool,
    /// Right side: rank test and positive flow together (vacuously true for
    /// edgeless graphs, whose empty flow is trivially rainbow).
    pub flow_side: bool,
    pub agree: bool,
    /// Regularity of the reoriented incidence matrix, checked when the left
    /// side holds and the graph has edges.
    pub regular_after_reorientation: Option<bool>,
    pub positive_flow: Option<PositiveFlow>,
    pub incidence_rank: usize,
    pub component_count: usize,
}

/// Evaluate both sides of the flow equivalence and cross-check them; a
/// disagreement would signal a bug in one of the two routes.
pub fn check_corollary(g: &OrientedGraph) -> CorollaryReport {
    let m = g.edges.len();
    let matrix = incidence_matrix(g);
    let component_count = g.component_count();
    let incidence_rank = matrix.rank();
    assert_eq!(incidence_rank, g.vertex_count - component_count);

    let three_edge_connected = components_3_edge_connected(g);
    let rank_condition = if m < 2 {
        true
    } else {
        check_condition_iii(&matrix).expect("m >= 2").pass
    };
    let pf = positive_flow(g);
    let positive_flow_found = pf.is_some();
    let flow_side = if m == 0 { true } else { rank_condition && positive_flow_found };
    let agree = three_edge_connected == flow_side;

    let regular_after_reorientation = match (&pf, three_edge_connected, m) {
        (Some(pf), true, m) if m > 0 => {
            let reoriented = g.reorient(&pf.flipped);
            Some(is_rainbow_regular(&incidence_matrix(&reoriented)).regular)
        }
        _ => None,
    };

    CorollaryReport {
        three_edge_connected,
        rank_condition,
        positive_flow_found,
        flow_side,
        agree,
        regular_after_reorientation,
        positive_flow: pf,
        incidence_rank,
        component_count,
    }
}

/// A positive flow in `[1..N]` whose values are pairwise distinctly colored,
/// found by the rainbow search on the incidence matrix.
pub fn rainbow_flow(g: &OrientedGraph, coloring: &Coloring) -> Option<Flow> {
    let matrix = incidence_matrix(g);
    let report = find_rainbow(&matrix, coloring);
    report.witness.map(|w| Flow {
        values: w.iter().map(|x| x.to_i64().expect("box values fit i64")).collect(),
    })
}
