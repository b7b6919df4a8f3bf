//! Exact small-instance engine for tree-like concatenation.
//!
//! Given graphs `G_1..G_k` on one vertex set and a tree `T` whose edges are
//! labelled `1..k`, any vertex set larger than `alpha(G_1)+..+alpha(G_k)`
//! contains a homomorphic image of `T` whose `i`-th edge lies in `E_i`.
//! Applied to the coordinate graphs of a Cartesian product this bounds
//! subsets with no orthogonal star (or path) by `sum alpha(G_i)/|V_i|` of
//! the product. Everything here is exhaustive and exact.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};

pub const MAX_VERTICES: usize = 24;
/// Products up to this size are solved by plain subset enumeration.
pub const EXHAUSTIVE_PRODUCT_LIMIT: usize = 20;
/// Products up to this size are solved by branch and bound.
pub const BRANCH_AND_BOUND_PRODUCT_LIMIT: usize = 64;
const NODE_BUDGET: u64 = 200_000_000;

/// Undirected loop-free graph with adjacency rows as bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct SmallGraph {
    n: usize,
    adj: Vec<u32>,
}

/// Adjacency-list form used in instance files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphRepr {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphRepr> for SmallGraph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        SmallGraph::from_edges(r.n, r.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<SmallGraph> for GraphRepr {
    fn from(g: SmallGraph) -> Self {
        GraphRepr { n: g.n, edges: g.edges().map(|(a, b)| [a, b]).collect() }
    }
}

impl SmallGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity(format!(
                "graph has {n} vertices; at most {MAX_VERTICES} are supported"
            )));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for a in 0..n {
            g.adj[a] = full_mask(n) & !(1 << a);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Row bitmasks; checks symmetry and an empty diagonal.
    pub fn from_rows(rows: Vec<u32>) -> Result<Self> {
        let g = Self::empty(rows.len())?;
        let n = g.n;
        for (i, &row) in rows.iter().enumerate() {
            if row & !full_mask(n) != 0 || row >> i & 1 == 1 {
                return usage(format!("row {i} has out-of-range bits or a loop"));
            }
            for j in 0..n {
                if (row >> j & 1) != (rows[j] >> i & 1) {
                    return usage(format!("adjacency is not symmetric at ({i}, {j})"));
                }
            }
        }
        Ok(Self { n, adj: rows })
    }

    pub fn random(rng: &mut impl Rng, n: usize, edge_prob: f64) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(edge_prob) {
                    g.add_edge(a, b)?;
                }
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if a >= self.n || b >= self.n {
            return usage(format!("edge ({a}, {b}) out of range for {} vertices", self.n));
        }
        if a == b {
            return usage(format!("loop at vertex {a}"));
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a] >> b & 1 == 1
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| (a + 1..self.n).filter(move |&b| self.has_edge(a, b)).map(move |b| (a, b)))
    }

    pub fn vertex_mask(&self) -> u32 {
        full_mask(self.n)
    }
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Lexicographically smallest (by bitmask value) maximum independent set.
pub fn maximum_independent_set(g: &SmallGraph) -> u32 {
    fn go(g: &SmallGraph, cand: u32, chosen: u32, best: &mut u32) {
        if cand == 0 {
            if chosen.count_ones() > best.count_ones() {
                *best = chosen;
            }
            return;
        }
        if chosen.count_ones() + cand.count_ones() <= best.count_ones() {
            return;
        }
        // decide the highest candidate: leaving it out first visits smaller masks first
        let v = 31 - cand.leading_zeros() as usize;
        let bit = 1u32 << v;
        go(g, cand & !bit, chosen, best);
        go(g, cand & !bit & !g.adj[v], chosen | bit, best);
    }
    let mut best = 0;
    go(g, g.vertex_mask(), 0, &mut best);
    best
}

pub fn independence_number(g: &SmallGraph) -> usize {
    maximum_independent_set(g).count_ones() as usize
}

/// Tree on vertices `0..=k` whose `i`-th listed edge carries label `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeOrderedTree {
    edges: Vec<(usize, usize)>,
}

impl EdgeOrderedTree {
    pub fn new(edges: Vec<(usize, usize)>) -> Result<Self> {
        let k = edges.len();
        if k == 0 {
            return usage("a tree needs at least one edge");
        }
        let mut parent: Vec<usize> = (0..=k).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in &edges {
            if a > k || b > k || a == b {
                return usage(format!("edge ({a}, {b}) invalid for a tree on {} vertices", k + 1));
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return usage("edges contain a cycle");
            }
            parent[ra] = rb;
        }
        // k acyclic edges on k+1 vertices are automatically spanning and connected
        Ok(Self { edges })
    }

    /// Star with center `0`; edge `i` goes to leaf `i + 1`.
    pub fn star(k: usize) -> Result<Self> {
        Self::new((1..=k).map(|leaf| (0, leaf)).collect())
    }

    /// Path `0 - 1 - .. - k`; edge `i` joins `i` and `i + 1`.
    pub fn path(k: usize) -> Result<Self> {
        Self::new((0..k).map(|i| (i, i + 1)).collect())
    }

    pub fn k(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Every labelled tree on `k + 1` vertices under every edge order.
    pub fn enumerate(k: usize) -> Vec<Self> {
        if k == 0 {
            return Vec::new();
        }
        let mut shapes: Vec<Vec<(usize, usize)>> = Vec::new();
        if k == 1 {
            shapes.push(vec![(0, 1)]);
        } else {
            let n = k + 1;
            let total = n.pow((n - 2) as u32);
            for code in 0..total {
                let mut seq = Vec::with_capacity(n - 2);
                let mut c = code;
                for _ in 0..n - 2 {
                    seq.push(c % n);
                    c /= n;
                }
                shapes.push(prufer_decode(&seq, n));
            }
        }
        let mut out = Vec::new();
        for shape in shapes {
            for perm in permutations(k) {
                let edges = perm.iter().map(|&i| shape[i]).collect();
                out.push(Self { edges });
            }
        }
        out
    }
}

fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn check_shared(graphs: &[SmallGraph], tree: &EdgeOrderedTree) -> Result<usize> {
    let Some(first) = graphs.first() else {
        return usage("no graphs given");
    };
    if graphs.len() != tree.k() {
        return usage(format!(
            "{} graphs given for a tree with {} edges",
            graphs.len(),
            tree.k()
        ));
    }
    if graphs.iter().any(|g| g.n() != first.n()) {
        return usage("graphs do not share a vertex count");
    }
    Ok(first.n())
}

/// Searches for `h: V(T) -> w` mapping edge `i` of `tree` onto an edge of
/// `graphs[i]`. Vertices may repeat. Exact: the tree is rooted at `0` and
/// every vertex gets the set of images from which its subtree can be
/// completed.
pub fn find_tree_homomorphism(
    graphs: &[SmallGraph],
    tree: &EdgeOrderedTree,
    w: u32,
) -> Result<Option<Vec<usize>>> {
    let n = check_shared(graphs, tree)?;
    if w & !full_mask(n) != 0 {
        return usage("subset w has vertices outside the graphs");
    }
    let k = tree.k();
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k + 1];
    for (label, &(a, b)) in tree.edges().iter().enumerate() {
        incident[a].push((b, label));
        incident[b].push((a, label));
    }
    // BFS order from the root with (parent, label) links
    let mut order = vec![0usize];
    let mut link: Vec<Option<(usize, usize)>> = vec![None; k + 1];
    let mut seen = vec![false; k + 1];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let t = order[head];
        head += 1;
        for &(u, label) in &incident[t] {
            if !seen[u] {
                seen[u] = true;
                link[u] = Some((t, label));
                order.push(u);
            }
        }
    }

    let mut feasible = vec![w; k + 1];
    for &t in order.iter().rev() {
        if let Some((parent, label)) = link[t] {
            let g = &graphs[label];
            let child = feasible[t];
            let mut support = 0u32;
            let mut rest = feasible[parent];
            while rest != 0 {
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if g.neighbors(x) & child != 0 {
                    support |= 1 << x;
                }
            }
            feasible[parent] = support;
        }
    }
    if feasible[0] == 0 {
        return Ok(None);
    }
    let mut h = vec![usize::MAX; k + 1];
    for &t in &order {
        let choices = match link[t] {
            None => feasible[t],
            Some((parent, label)) => feasible[t] & graphs[label].neighbors(h[parent]),
        };
        h[t] = choices.trailing_zeros() as usize;
    }
    Ok(Some(h))
}

/// Independent re-check of a mapping against the per-label edge contract.
pub fn is_valid_homomorphism(graphs: &[SmallGraph], tree: &EdgeOrderedTree, w: u32, h: &[usize]) -> bool {
    h.len() == tree.k() + 1
        && h.iter().all(|&v| v < 32 && w >> v & 1 == 1)
        && tree
            .edges()
            .iter()
            .enumerate()
            .all(|(i, &(a, b))| graphs.get(i).is_some_and(|g| g.has_edge(h[a], h[b])))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomomorphismReport {
    pub alpha_sum: usize,
    pub subsets_checked: u64,
    pub violations: Vec<u32>,
}

/// Checks every `w` with `|w| > sum alpha(G_i)` for a homomorphic copy of
/// `tree`, re-validating each mapping found.
pub fn certify_tree_lemma(graphs: &[SmallGraph], tree: &EdgeOrderedTree) -> Result<HomomorphismReport> {
    let n = check_shared(graphs, tree)?;
    if n > 20 {
        return Err(Error::Capacity(format!("{n} vertices: subset enumeration capped at 20")));
    }
    let alpha_sum: usize = graphs.iter().map(independence_number).sum();
    let mut report = HomomorphismReport { alpha_sum, subsets_checked: 0, violations: Vec::new() };
    for w in 0..(1u32 << n) {
        if (w.count_ones() as usize) <= alpha_sum {
            continue;
        }
        report.subsets_checked += 1;
        match find_tree_homomorphism(graphs, tree, w)? {
            Some(h) if is_valid_homomorphism(graphs, tree, w, &h) => {}
            _ => report.violations.push(w),
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Star,
    Path,
}

impl std::str::FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "star" => Ok(Shape::Star),
            "path" => Ok(Shape::Path),
            other => usage(format!("unknown shape '{other}' (expected star or path)")),
        }
    }
}

/// Mixed-radix indexing of `V_1 x .. x V_k`; coordinate `0` varies fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSpace {
    sizes: Vec<usize>,
    strides: Vec<usize>,
    len: usize,
}

impl ProductSpace {
    pub fn new(sizes: Vec<usize>) -> Self {
        let mut strides = Vec::with_capacity(sizes.len());
        let mut len = 1usize;
        for &s in &sizes {
            strides.push(len);
            len = len.saturating_mul(s);
        }
        Self { sizes, strides, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        self.sizes
            .iter()
            .map(|&s| {
                let c = index % s;
                index /= s;
                c
            })
            .collect()
    }
}

/// Every orthogonal star or path of the product, as a point bitmask.
///
/// One ordered edge `(u_i, w_i)` is chosen per coordinate. A star is
/// `(w_1..w_k)` together with each single substitution `w_i -> u_i`; a path
/// substitutes cumulatively, `(u_1..u_j, w_{j+1}..w_k)` for `j = 0..k`.
pub fn orthogonal_configurations(graphs: &[SmallGraph], shape: Shape) -> Result<Vec<u64>> {
    let space = ProductSpace::new(graphs.iter().map(SmallGraph::n).collect());
    if space.len() > BRANCH_AND_BOUND_PRODUCT_LIMIT {
        return Err(Error::Capacity(format!(
            "product has {} points; exact search handles at most {BRANCH_AND_BOUND_PRODUCT_LIMIT}",
            space.len()
        )));
    }
    let arcs: Vec<Vec<(usize, usize)>> = graphs
        .iter()
        .map(|g| g.edges().flat_map(|(a, b)| [(a, b), (b, a)]).collect())
        .collect();
    if arcs.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    let k = graphs.len();
    let mut configs = Vec::new();
    let mut pick = vec![0usize; k];
    loop {
        let u: Vec<usize> = (0..k).map(|i| arcs[i][pick[i]].0).collect();
        let w: Vec<usize> = (0..k).map(|i| arcs[i][pick[i]].1).collect();
        let mut mask = 1u64 << space.index(&w);
        let mut point = w.clone();
        for i in 0..k {
            match shape {
                Shape::Star => {
                    let mut p = w.clone();
                    p[i] = u[i];
                    mask |= 1u64 << space.index(&p);
                }
                Shape::Path => {
                    point[i] = u[i];
                    mask |= 1u64 << space.index(&point);
                }
            }
        }
        configs.push(mask);

        let mut i = 0;
        while i < k {
            pick[i] += 1;
            if pick[i] < arcs[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    configs.sort_unstable();
    configs.dedup();
    Ok(configs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    Exhaustive,
    BranchAndBound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalFree {
    pub size: usize,
    /// Numerically smallest maximum subset, bit `i` = product point `i`.
    pub witness: u64,
    pub product_size: usize,
    pub method: SearchMethod,
}

/// Exact maximum size of a subset of `V_1 x .. x V_k` with no orthogonal
/// configuration of the given shape.
pub fn max_orthogonal_free(graphs: &[SmallGraph], shape: Shape) -> Result<OrthogonalFree> {
    if graphs.is_empty() {
        return usage("no graphs given");
    }
    if graphs.iter().any(|g| g.n() == 0) {
        return usage("every coordinate graph needs at least one vertex");
    }
    let configs = orthogonal_configurations(graphs, shape)?;
    let product_size = graphs.iter().map(SmallGraph::n).product::<usize>();
    if product_size <= EXHAUSTIVE_PRODUCT_LIMIT {
        let witness = exhaustive_free(product_size, &configs);
        Ok(OrthogonalFree {
            size: witness.count_ones() as usize,
            witness,
            product_size,
            method: SearchMethod::Exhaustive,
        })
    } else {
        let witness = branch_and_bound_free(product_size, &configs)?;
        Ok(OrthogonalFree {
            size: witness.count_ones() as usize,
            witness,
            product_size,
            method: SearchMethod::BranchAndBound,
        })
    }
}

fn exhaustive_free(points: usize, configs: &[u64]) -> u64 {
    let mut best = 0u64;
    for mask in 0..(1u64 << points) {
        if mask.count_ones() > best.count_ones() && !configs.iter().any(|c| mask & c == *c) {
            best = mask;
        }
    }
    best
}

fn branch_and_bound_free(points: usize, configs: &[u64]) -> Result<u64> {
    // a configuration is decided when its lowest point is
    let mut by_lowest: Vec<Vec<u64>> = vec![Vec::new(); points];
    for &c in configs {
        by_lowest[c.trailing_zeros() as usize].push(c);
    }
    struct Search<'a> {
        by_lowest: &'a [Vec<u64>],
        best: u64,
        nodes: u64,
    }
    impl Search<'_> {
        // decide points v, v-1, .., 0; excluding first visits smaller masks first
        fn go(&mut self, v: isize, chosen: u64) -> Result<()> {
            self.nodes += 1;
            if self.nodes > NODE_BUDGET {
                return Err(Error::Capacity(format!(
                    "branch and bound exceeded {NODE_BUDGET} nodes"
                )));
            }
            if v < 0 {
                if chosen.count_ones() > self.best.count_ones() {
                    self.best = chosen;
                }
                return Ok(());
            }
            if chosen.count_ones() + v as u32 + 1 <= self.best.count_ones() {
                return Ok(());
            }
            self.go(v - 1, chosen)?;
            let with = chosen | 1u64 << v;
            if !self.by_lowest[v as usize].iter().any(|c| with & c == *c) {
                self.go(v - 1, with)?;
            }
            Ok(())
        }
    }
    let mut s = Search { by_lowest: &by_lowest, best: 0, nodes: 0 };
    s.go(points as isize - 1, 0)?;
    Ok(s.best)
}

/// Right side of the product bound, scaled to an integer:
/// `|prod V| * sum alpha(G_i) / |V_i| = sum alpha(G_i) * prod_{j != i} |V_j|`.
pub fn product_bound(graphs: &[SmallGraph]) -> usize {
    let sizes: Vec<usize> = graphs.iter().map(SmallGraph::n).collect();
    graphs
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let others: usize = sizes.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, s)| s).product();
            independence_number(g) * others
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcatInstance {
    pub graphs: Vec<SmallGraph>,
    pub shape: Shape,
    pub max_free: usize,
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcatReport {
    pub instances: usize,
    pub violations: Vec<ConcatInstance>,
    /// Smallest `bound - max_free` seen.
    pub worst_slack: Option<i64>,
    /// Smallest `(bound - max_free) / |prod V|` seen.
    pub worst_relative_slack: Option<f64>,
}

impl ConcatReport {
    fn new() -> Self {
        Self { instances: 0, violations: Vec::new(), worst_slack: None, worst_relative_slack: None }
    }

    fn record(&mut self, graphs: &[SmallGraph], shape: Shape) -> Result<()> {
        let free = max_orthogonal_free(graphs, shape)?;
        let bound = product_bound(graphs);
        let slack = bound as i64 - free.size as i64;
        let rel = slack as f64 / free.product_size as f64;
        self.instances += 1;
        self.worst_slack = Some(self.worst_slack.map_or(slack, |s| s.min(slack)));
        self.worst_relative_slack = Some(self.worst_relative_slack.map_or(rel, |s| s.min(rel)));
        if slack < 0 {
            self.violations.push(ConcatInstance {
                graphs: graphs.to_vec(),
                shape,
                max_free: free.size,
                bound,
            });
        }
        Ok(())
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the product bound on the given instances under each shape.
pub fn verify_concat_bound(instances: &[Vec<SmallGraph>], shapes: &[Shape]) -> Result<ConcatReport> {
    let mut report = ConcatReport::new();
    for graphs in instances {
        for &shape in shapes {
            report.record(graphs, shape)?;
        }
    }
    Ok(report)
}

/// Random tuples of `k` graphs with `1..=max_vertices` vertices each and
/// product size at most `max_product`.
pub fn random_instances(
    rng: &mut impl Rng,
    trials: usize,
    k: usize,
    max_vertices: usize,
    max_product: usize,
) -> Result<Vec<Vec<SmallGraph>>> {
    if k == 0 || max_vertices == 0 {
        return usage("k and max_vertices must be positive");
    }
    if max_vertices > MAX_VERTICES {
        return Err(Error::Capacity(format!("max_vertices capped at {MAX_VERTICES}")));
    }
    let mut out = Vec::with_capacity(trials);
    while out.len() < trials {
        let sizes: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=max_vertices)).collect();
        if sizes.iter().product::<usize>() > max_product {
            continue;
        }
        let p = rng.gen_range(0.2..0.9);
        let graphs = sizes
            .iter()
            .map(|&n| SmallGraph::random(rng, n, p))
            .collect::<Result<Vec<_>>>()?;
        out.push(graphs);
    }
    Ok(out)
}

/// Totals from [`certify_random_pairs`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeLemmaSummary {
    pub graph_tuples: usize,
    pub trees: usize,
    pub subsets_checked: u64,
    /// `(tuple index, tree index, w)` for every uncovered subset.
    pub violations: Vec<(usize, usize, u32)>,
}

/// Draws `trials` tuples of `k` graphs on a shared vertex set of
/// `1..=max_vertices` points and certifies every edge-ordered tree with
/// `k` edges against each.
pub fn certify_random_pairs(
    rng: &mut impl Rng,
    trials: usize,
    k: usize,
    max_vertices: usize,
) -> Result<TreeLemmaSummary> {
    if max_vertices == 0 || max_vertices > 20 {
        return Err(Error::Capacity(format!("max_vertices must lie in 1..=20 (got {max_vertices})")));
    }
    let trees = EdgeOrderedTree::enumerate(k);
    let mut summary = TreeLemmaSummary { graph_tuples: trials, trees: trees.len(), subsets_checked: 0, violations: Vec::new() };
    for t in 0..trials {
        let n = rng.gen_range(1..=max_vertices);
        let graphs = (0..k)
            .map(|_| {
                let p = rng.gen_range(0.1..0.9);
                SmallGraph::random(rng, n, p)
            })
            .collect::<Result<Vec<_>>>()?;
        for (ti, tree) in trees.iter().enumerate() {
            let report = certify_tree_lemma(&graphs, tree)?;
            summary.subsets_checked += report.subsets_checked;
            summary.violations.extend(report.violations.into_iter().map(|w| (t, ti, w)));
        }
    }
    Ok(summary)
}
