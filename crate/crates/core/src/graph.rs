//! The labelled transition graph on `V_β` and the matrix pair `(M₀, M₁)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, IntPolynomial, NumberFieldContext};

/// Edge labels, in storage order.
pub const LABELS: [i64; 3] = [-1, 0, 1];

/// Default vertex budget for graph construction.
pub const DEFAULT_MAX_VERTICES: usize = 100_000;

/// Index of the zero vertex.
pub const ZERO: usize = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Depth {
    /// Closed under the edge relation.
    Complete,
    /// Breadth-first truncation `V_{β,n}`.
    Truncated(usize),
}

impl Depth {
    /// Whether words of length `n` stay inside the graph.
    pub fn covers(&self, n: usize) -> bool {
        match *self {
            Depth::Complete => true,
            Depth::Truncated(d) => d >= n,
        }
    }
}

/// Vertices of `V_β` (or a truncation) with edges `x -> βx + ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionGraph {
    min_poly: IntPolynomial,
    vertices: Vec<FieldElement>,
    edges: Vec<[Option<u32>; 3]>,
    depth: Depth,
    pruned: bool,
}

fn label_slot(eps: i64) -> usize {
    (eps + 1) as usize
}

impl TransitionGraph {
    /// Assemble and validate a graph from explicit parts.
    ///
    /// Every edge must satisfy `dst = β src + ε` exactly, and every such
    /// relation between listed vertices must be present as an edge.
    pub fn from_parts(
        min_poly: IntPolynomial,
        vertices: Vec<FieldElement>,
        edge_list: &[(u32, i64, u32)],
        depth: Depth,
        pruned: bool,
    ) -> Result<Self> {
        let d = min_poly.degree();
        let bad = |msg: &str| Err(Error::InvalidGraph(msg.into()));
        if vertices.is_empty() || !vertices[ZERO].is_zero() {
            return bad("vertex 0 must be the zero element");
        }
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.degree_bound() != d {
                return bad("vertex has the wrong number of coefficients");
            }
            if index.insert(v.clone(), i as u32).is_some() {
                return bad("duplicate vertex");
            }
        }
        let n = vertices.len();
        let mut edges = vec![[None; 3]; n];
        for &(s, e, t) in edge_list {
            if s as usize >= n || t as usize >= n || !LABELS.contains(&e) {
                return bad("edge out of range");
            }
            let slot = &mut edges[s as usize][label_slot(e)];
            if slot.is_some() {
                return bad("duplicate edge");
            }
            *slot = Some(t);
        }
        for (i, v) in vertices.iter().enumerate() {
            for e in LABELS {
                let y = v.step(&min_poly, e);
                if edges[i][label_slot(e)] != index.get(&y).copied() {
                    return Err(Error::InvalidGraph(format!("edge ({i}, {e}) disagrees with βx + ε")));
                }
            }
        }
        let g = TransitionGraph { min_poly, vertices, edges, depth, pruned };
        if pruned && g.reaching_zero().iter().any(|&k| !k) {
            return bad("pruned graph has a vertex that cannot reach 0");
        }
        Ok(g)
    }

    /// Check the graph against `β`: every vertex lies in `V_β`, and a graph
    /// claimed complete and unpruned contains every child in `V_β`.
    pub fn verify(&self, ctx: &NumberFieldContext) -> Result<()> {
        if &self.min_poly != ctx.min_poly() {
            return Err(Error::InvalidGraph("graph belongs to a different polynomial".into()));
        }
        for v in &self.vertices {
            if !ctx.in_v_beta(v)? {
                return Err(Error::InvalidGraph(format!("vertex {v} is not in V_beta")));
            }
        }
        if self.pruned || self.depth != Depth::Complete {
            return Ok(());
        }
        let d = self.min_poly.degree();
        for s in [1, -1] {
            if self.position(&FieldElement::from_int(s, d)).is_none() {
                return Err(Error::InvalidGraph("unpruned graph lacks the seed ±1".into()));
            }
        }
        for (i, v) in self.vertices.iter().enumerate() {
            for (k, e) in LABELS.into_iter().enumerate() {
                if self.edges[i][k].is_none() && ctx.in_v_beta(&v.step(&self.min_poly, e))? {
                    return Err(Error::InvalidGraph(format!("vertex {v} is missing its child for label {e}")));
                }
            }
        }
        Ok(())
    }

    pub fn min_poly(&self) -> &IntPolynomial {
        &self.min_poly
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[FieldElement] {
        &self.vertices
    }

    pub fn depth(&self) -> Depth {
        self.depth
    }

    pub fn is_complete(&self) -> bool {
        self.depth == Depth::Complete
    }

    pub fn is_pruned(&self) -> bool {
        self.pruned
    }

    /// Targets for `ε = -1, 0, 1`.
    pub fn out_edges(&self, i: usize) -> &[Option<u32>; 3] {
        &self.edges[i]
    }

    pub fn target(&self, i: usize, eps: i64) -> Option<usize> {
        self.edges[i][label_slot(eps)].map(|t| t as usize)
    }

    /// All edges as `(src, label, dst)`, ordered by source then label.
    pub fn edge_list(&self) -> Vec<(u32, i64, u32)> {
        let mut out = Vec::new();
        for (i, es) in self.edges.iter().enumerate() {
            for (k, t) in es.iter().enumerate() {
                if let Some(t) = t {
                    out.push((i as u32, LABELS[k], *t));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(|e| e.iter().flatten().count()).sum()
    }

    /// Index of a vertex value, by linear search.
    pub fn position(&self, x: &FieldElement) -> Option<usize> {
        self.vertices.iter().position(|v| v == x)
    }

    /// Marks the vertices with a directed path to the zero vertex.
    fn reaching_zero(&self) -> Vec<bool> {
        let n = self.len();
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (i, es) in self.edges.iter().enumerate() {
            for &t in es.iter().flatten() {
                rev[t as usize].push(i as u32);
            }
        }
        let mut keep = vec![false; n];
        keep[ZERO] = true;
        let mut stack = vec![ZERO as u32];
        while let Some(v) = stack.pop() {
            for &u in &rev[v as usize] {
                if !keep[u as usize] {
                    keep[u as usize] = true;
                    stack.push(u);
                }
            }
        }
        keep
    }

    /// Restrict to the vertices that can reach zero, keeping their order.
    pub fn pruned(&self) -> TransitionGraph {
        let keep = self.reaching_zero();
        let mut remap = vec![None; self.len()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if keep[i] {
                remap[i] = Some(vertices.len() as u32);
                vertices.push(v.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| keep[*i])
            .map(|(_, es)| es.map(|t| t.and_then(|t| remap[t as usize])))
            .collect();
        TransitionGraph {
            min_poly: self.min_poly.clone(),
            vertices,
            edges,
            depth: self.depth,
            pruned: true,
        }
    }

    /// Matrix view with bias `p`.
    pub fn matrices(&self, bias: Bias) -> MatrixPair<'_> {
        MatrixPair { graph: self, bias }
    }
}

/// Breadth-first construction from the seeds `{0, 1, -1}`.
///
/// With `max_depth = None` the search runs to a fixed point, which exists
/// when `β` is hyperbolic; otherwise the depth-`max_depth` truncation is
/// returned unless the fixed point is reached first.
pub fn build_graph(ctx: &NumberFieldContext, max_depth: Option<usize>, max_vertices: usize) -> Result<TransitionGraph> {
    let p = ctx.min_poly();
    let d = p.degree();
    let max_vertices = max_vertices.max(3);
    let zero = FieldElement::zero(d);
    let seeds = [zero.clone(), zero.add_int(1), zero.add_int(-1)];
    let mut index: BTreeMap<FieldElement, u32> = BTreeMap::new();
    let mut vertices = Vec::new();
    for s in seeds {
        index.insert(s.clone(), vertices.len() as u32);
        vertices.push(s);
    }
    let mut edges: Vec<[Option<u32>; 3]> = vec![[None; 3]; 3];
    let mut rejected: BTreeSet<FieldElement> = BTreeSet::new();
    let mut frontier: Vec<u32> = vec![0, 1, 2];
    let mut level = 0usize;
    loop {
        let allow_new = max_depth.is_none_or(|m| level < m);
        let mut deferred = false;
        let mut next = Vec::new();
        for &i in &frontier {
            let bx = vertices[i as usize].mul_by_beta(p);
            for (k, e) in LABELS.into_iter().enumerate() {
                let y = bx.add_int(e);
                if let Some(&t) = index.get(&y) {
                    edges[i as usize][k] = Some(t);
                    continue;
                }
                if !allow_new {
                    deferred = true;
                    continue;
                }
                if rejected.contains(&y) {
                    continue;
                }
                if !ctx.in_v_beta(&y)? {
                    rejected.insert(y);
                    continue;
                }
                let t = vertices.len() as u32;
                if vertices.len() >= max_vertices {
                    return Err(Error::VertexBudget { budget: max_vertices, depth: level + 1, vertices: vertices.len() + 1 });
                }
                index.insert(y.clone(), t);
                vertices.push(y);
                edges.push([None; 3]);
                edges[i as usize][k] = Some(t);
                next.push(t);
            }
        }
        if next.is_empty() {
            let depth = if deferred { Depth::Truncated(level) } else { Depth::Complete };
            return Ok(TransitionGraph { min_poly: p.clone(), vertices, edges, depth, pruned: false });
        }
        frontier = next;
        level += 1;
    }
}

/// The bias `p = num / den`, an exact rational in `(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bias {
    num: u64,
    den: u64,
}

impl Bias {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num >= den {
            return Err(Error::InvalidBias);
        }
        let g = gcd(num, den);
        Ok(Bias { num: num / g, den: den / g })
    }

    pub fn half() -> Self {
        Bias { num: 1, den: 2 }
    }

    /// Accepts `"1/2"`, `"0.25"` or `"1e-1"`-free decimals.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Some((a, b)) = t.split_once('/') {
            let a: u64 = a.trim().parse().map_err(|_| Error::InvalidBias)?;
            let b: u64 = b.trim().parse().map_err(|_| Error::InvalidBias)?;
            return Self::new(a, b);
        }
        let (int, frac) = t.split_once('.').unwrap_or((t, ""));
        if frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidBias);
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| Error::InvalidBias)? };
        let den = 10u64.pow(frac.len() as u32);
        let f: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| Error::InvalidBias)? };
        let num = int.checked_mul(den).and_then(|v| v.checked_add(f)).ok_or(Error::InvalidBias)?;
        Self::new(num, den)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Integer weight, over `den`, of digit `b` under `m_p`.
    pub fn digit_weight(&self, b: u8) -> u64 {
        if b == 0 {
            self.num
        } else {
            self.den - self.num
        }
    }
}

impl core::fmt::Display for Bias {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Derived view of `(M₀, M₁)` over a transition graph.
///
/// `(M_a)_{ij}` is the `m_p` weight of the digit `b` with `x_j = β x_i + a - b`.
#[derive(Clone, Copy, Debug)]
pub struct MatrixPair<'g> {
    graph: &'g TransitionGraph,
    bias: Bias,
}

impl<'g> MatrixPair<'g> {
    pub fn graph(&self) -> &'g TransitionGraph {
        self.graph
    }

    pub fn bias(&self) -> Bias {
        self.bias
    }

    pub fn dim(&self) -> usize {
        self.graph.len()
    }

    /// Nonzero entries of row `i` of `M_a` as `(column, weight over den)`.
    pub fn row(&self, a: u8, i: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        (0u8..2).filter_map(move |b| {
            let eps = a as i64 - b as i64;
            self.graph.target(i, eps).map(|j| (j, self.bias.digit_weight(b)))
        })
    }

    /// Dense copy of `M_a` with real entries, for small graphs and tests.
    pub fn dense(&self, a: u8) -> Vec<Vec<f64>> {
        let n = self.dim();
        let den = self.bias.den as f64;
        let mut m = vec![vec![0.0; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, w) in self.row(a, i) {
                row[j] = w as f64 / den;
            }
        }
        m
    }

    /// Weights over `den^2` of the labels `-1, 0, 1` in `p M₀ + (1 - p) M₁`,
    /// the `m_p`-average of the pair.
    pub fn averaged_label_weights(&self) -> [u64; 3] {
        let (p, q) = (self.bias.num, self.bias.den - self.bias.num);
        [p * q, p * p + q * q, p * q]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::DEFAULT_PRECISION;

    fn ctx(s: &str) -> NumberFieldContext {
        NumberFieldContext::new(IntPolynomial::parse(s).unwrap(), DEFAULT_PRECISION).unwrap()
    }

    #[test]
    fn example_graph_sizes() {
        let c = ctx("x^4 - x^3 - x^2 + x - 1");
        let g = build_graph(&c, None, DEFAULT_MAX_VERTICES).unwrap();
        assert_eq!(g.len(), 67);
        assert!(g.is_complete());
        assert_eq!(g.pruned().len(), 21);
    }

    #[test]
    fn golden_ratio_graph() {
        let c = ctx("x^2 - x - 1");
        let g = build_graph(&c, None, DEFAULT_MAX_VERTICES).unwrap();
        assert_eq!(g.len(), 5);
        let gp = g.pruned();
        assert_eq!(gp.len(), 5);
        let m = gp.matrices(Bias::half());
        let row0: Vec<_> = m.row(0, ZERO).collect();
        assert_eq!(row0.len(), 2);
        assert_eq!(row0.iter().map(|r| r.1).sum::<u64>(), 2);
        assert_eq!(m.row(1, ZERO).map(|r| r.1).sum::<u64>(), 2);
    }

    #[test]
    fn depth_zero_is_the_seed_set() {
        let c = ctx("x^3 - x - 1");
        let g = build_graph(&c, Some(0), DEFAULT_MAX_VERTICES).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.depth(), Depth::Truncated(0));
    }

    #[test]
    fn budget_is_reported() {
        let c = ctx("x^3 - x - 1");
        match build_graph(&c, None, 50) {
            Err(Error::VertexBudget { budget: 50, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn from_parts_rejects_bad_edges() {
        let c = ctx("x^2 - x - 1");
        let g = build_graph(&c, None, 100).unwrap();
        let mut edges = g.edge_list();
        let ok = TransitionGraph::from_parts(g.min_poly().clone(), g.vertices().to_vec(), &edges, g.depth(), false);
        assert_eq!(ok.unwrap(), g);
        edges.pop();
        assert!(TransitionGraph::from_parts(g.min_poly().clone(), g.vertices().to_vec(), &edges, g.depth(), false).is_err());
    }

    #[test]
    fn bias_parsing() {
        assert_eq!(Bias::parse("1/2").unwrap(), Bias::half());
        assert_eq!(Bias::parse("0.25").unwrap(), Bias::new(1, 4).unwrap());
        assert_eq!(Bias::parse("2/4").unwrap(), Bias::half());
        assert!(Bias::parse("1").is_err());
        assert!(Bias::parse("0").is_err());
        assert!(Bias::parse("3/2").is_err());
    }
}
