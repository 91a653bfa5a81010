//! Graphs viewed as set systems through their neighborhoods.
//!
//! A finite simple graph is identified with the family of its vertex
//! neighborhoods over the vertex set. That identification carries the
//! dimension and ladder machinery over to graphs, where long strict
//! ladders with pairwise-distinct vertices are the same thing as
//! half-graph patterns. Type trees split a vertex set along successive
//! neighborhoods; walking one root-to-leaf path and sorting its labels
//! by turn direction yields a clique and an independent set, which is
//! how [`eh_extract`] finds a large homogeneous set.

use crate::bitset::BitSet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ladder::{max_ladder, Ladder};
use crate::setsystem::SetSystem;
use crate::tree::{Dir, LabeledTree, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// A finite simple graph: symmetric, irreflexive adjacency over `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BitSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Graph {
        Graph { n, adj: vec![BitSet::new(n); n] }
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("in range");
            }
        }
        g
    }

    /// The bipartite pattern on sides a₁..a_k, b₁..b_k (numbered `0..k`
    /// and `k..2k`) whose edges are exactly a_i ~ b_j for i < j.
    pub fn half_graph(k: usize) -> Graph {
        assert!(k >= 1, "half graph needs at least one vertex per side");
        let mut g = Graph::new(2 * k);
        for i in 1..=k {
            for j in i + 1..=k {
                g.add_edge(i - 1, k + j - 1).expect("in range");
            }
        }
        g
    }

    /// A five-vertex graph whose neighborhood system admits a strict
    /// 3-ladder even though the graph contains no half-graph pattern on
    /// three vertices per side. It separates the two notions: long
    /// ladders need not produce the pattern until they reach the
    /// guaranteed length.
    pub fn ladder_no_half_graph_example() -> Graph {
        let mut g = Graph::new(5);
        for (u, v) in [(0, 1), (0, 2), (2, 3)] {
            g.add_edge(u, v).expect("in range");
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::Precondition(format!("self-loop at vertex {u}")));
        }
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::NoSuchVertex { vertex: w.to_string() });
            }
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    /// Parse the edge-list text format: a `n m` header line followed by
    /// `m` lines `u v` (0-based endpoints). Blank lines are skipped and
    /// `#` starts a trailing comment.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, header) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, msg: "missing `n m` header".into() })?;
        let mut parts = header.split_whitespace();
        let parse_num = |tok: Option<&str>, line: usize| -> Result<usize> {
            tok.ok_or_else(|| Error::Parse { line, msg: "expected a number".into() })?
                .parse()
                .map_err(|_| Error::Parse { line, msg: "expected a number".into() })
        };
        let n = parse_num(parts.next(), line)?;
        let m = parse_num(parts.next(), line)?;
        if parts.next().is_some() {
            return Err(Error::Parse { line, msg: "header must be exactly `n m`".into() });
        }
        let mut g = Graph::new(n);
        let mut seen = 0usize;
        for (line, text) in lines {
            if seen == m {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected {m} edges but found more"),
                });
            }
            let mut parts = text.split_whitespace();
            let u = parse_num(parts.next(), line)?;
            let v = parse_num(parts.next(), line)?;
            if parts.next().is_some() {
                return Err(Error::Parse { line, msg: "edge line must be exactly `u v`".into() });
            }
            g.add_edge(u, v).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
            seen += 1;
        }
        if seen < m {
            return Err(Error::Parse {
                line: 0,
                msg: format!("expected {m} edges but found {seen}"),
            });
        }
        Ok(g)
    }

    pub fn write_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        out
    }
}

/// The family of neighborhoods over the vertex set. Twin vertices (equal
/// neighborhoods) collapse; the dropped count is recorded on the result.
pub fn neighborhood_system(g: &Graph) -> SetSystem {
    SetSystem::build(g.n, g.adj.clone()).expect("neighborhoods lie in the vertex range")
}

/// Which edges a half-graph search demands of the candidate vertices.
///
/// Every mode requires the cross edges a_i ~ b_j for i < j. The
/// semi-induced mode (the one long strict ladders produce) additionally
/// forbids cross edges for i ≥ j but says nothing about edges within a
/// side; the induced mode forbids those too; the subgraph mode requires
/// nothing beyond the cross edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfGraphMode {
    SemiInduced,
    Subgraph,
    Induced,
}

/// 2k pairwise-distinct vertices arranged in the half-graph pattern:
/// `a_side[i] ~ b_side[j]` exactly when i < j (how much more is
/// constrained depends on the mode used to find it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfGraphWitness {
    pub a_side: Vec<usize>,
    pub b_side: Vec<usize>,
}

impl HalfGraphWitness {
    pub fn k(&self) -> usize {
        self.a_side.len()
    }

    /// Re-check the witness against the graph under the given mode.
    pub fn verify(&self, g: &Graph, mode: HalfGraphMode) -> Result<()> {
        let k = self.k();
        if self.b_side.len() != k {
            return Err(Error::Inconsistency("witness sides have unequal length".into()));
        }
        let mut all: Vec<usize> = self.a_side.iter().chain(&self.b_side).copied().collect();
        all.sort_unstable();
        all.dedup();
        if all.len() != 2 * k {
            return Err(Error::Inconsistency("witness vertices are not distinct".into()));
        }
        if let Some(&v) = all.iter().find(|&&v| v >= g.n) {
            return Err(Error::NoSuchVertex { vertex: v.to_string() });
        }
        for i in 0..k {
            for j in 0..k {
                let has = g.has_edge(self.a_side[i], self.b_side[j]);
                if i < j && !has {
                    return Err(Error::Inconsistency(format!(
                        "cross edge a{} ~ b{} is missing",
                        i + 1,
                        j + 1
                    )));
                }
                if i >= j && has && mode != HalfGraphMode::Subgraph {
                    return Err(Error::Inconsistency(format!(
                        "forbidden cross edge a{} ~ b{} is present",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        if mode == HalfGraphMode::Induced {
            for side in [&self.a_side, &self.b_side] {
                for i in 0..k {
                    for j in i + 1..k {
                        if g.has_edge(side[i], side[j]) {
                            return Err(Error::Inconsistency(
                                "induced pattern has an edge within a side".into(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Read the witness as a strict ladder in the neighborhood system:
    /// element i is `a_side[i]`, set j is the neighborhood of
    /// `b_side[j]`. The result is checked, so a witness found under the
    /// subgraph mode may legitimately fail here.
    pub fn to_ladder(&self, sys: &SetSystem, g: &Graph) -> Result<Ladder> {
        let sets = self
            .b_side
            .iter()
            .map(|&w| {
                sys.index_of(g.neighbors(w)).ok_or_else(|| {
                    Error::Inconsistency(format!(
                        "neighborhood of vertex {w} is not in the given family"
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let ladder = Ladder::new(self.a_side.clone(), sets, true)?;
        ladder.check(sys)?;
        Ok(ladder)
    }
}

/// Search for 2k distinct vertices in the half-graph pattern. Vertices
/// are tried in ascending order, so the witness is deterministic.
pub fn contains_half_graph(
    g: &Graph,
    k: usize,
    mode: HalfGraphMode,
    budget: &mut Budget,
) -> Result<Option<HalfGraphWitness>> {
    let mut a = Vec::with_capacity(k);
    let mut b = Vec::with_capacity(k);
    let mut used = vec![false; g.n];
    if half_graph_extend(g, k, mode, &mut a, &mut b, &mut used, budget)? {
        Ok(Some(HalfGraphWitness { a_side: a, b_side: b }))
    } else {
        Ok(None)
    }
}

fn half_graph_extend(
    g: &Graph,
    k: usize,
    mode: HalfGraphMode,
    a: &mut Vec<usize>,
    b: &mut Vec<usize>,
    used: &mut Vec<bool>,
    budget: &mut Budget,
) -> Result<bool> {
    if b.len() == k {
        return Ok(true);
    }
    let picking_a = a.len() == b.len();
    for v in 0..g.n {
        budget.tick(1)?;
        if used[v] {
            continue;
        }
        let ok = if picking_a {
            // a_{t} (0-based t = a.len()) may not touch b_1..b_t, and in
            // the induced mode not the earlier a's either.
            let cross = mode == HalfGraphMode::Subgraph
                || b.iter().all(|&w| !g.has_edge(v, w));
            cross
                && (mode != HalfGraphMode::Induced || a.iter().all(|&u| !g.has_edge(v, u)))
        } else {
            // b_{t} needs edges from every earlier a and, outside the
            // subgraph mode, a non-edge from a_t itself.
            let t = b.len();
            a[..t].iter().all(|&u| g.has_edge(u, v))
                && (mode == HalfGraphMode::Subgraph || !g.has_edge(a[t], v))
                && (mode != HalfGraphMode::Induced
                    || b.iter().all(|&w| !g.has_edge(v, w)))
        };
        if !ok {
            continue;
        }
        if picking_a {
            a.push(v);
        } else {
            b.push(v);
        }
        used[v] = true;
        if half_graph_extend(g, k, mode, a, b, used, budget)? {
            return Ok(true);
        }
        used[v] = false;
        if picking_a {
            a.pop();
        } else {
            b.pop();
        }
    }
    Ok(false)
}

/// The strict-ladder length that always contains a k-ladder on distinct
/// vertices: 1 + 2 + 2 + 3 + 3 + ⋯ + k + k.
pub fn distinct_ladder_threshold(k: usize) -> usize {
    k * k + k - 1
}

/// A strict k-ladder in the neighborhood system whose 2k vertices
/// (elements plus one defining vertex per neighborhood) are pairwise
/// distinct — equivalently, a semi-induced half-graph witness.
///
/// First searches for a strict ladder of length
/// [`distinct_ladder_threshold`]`(k)` and greedily picks k positions
/// with fresh vertices, resolving each set to a vertex among its twins.
/// When no such ladder exists (or the greedy pass starves), falls back
/// to a direct search for the pattern itself.
pub fn distinct_strict_ladder(
    g: &Graph,
    k: usize,
    budget: &mut Budget,
) -> Result<Option<HalfGraphWitness>> {
    if k == 0 {
        return Ok(Some(HalfGraphWitness { a_side: vec![], b_side: vec![] }));
    }
    let neigh = neighborhood_system(g);
    let threshold = distinct_ladder_threshold(k);
    let long = match max_ladder(&neigh, threshold, true, budget) {
        Ok(l) => l,
        Err(Error::LadderBudget { best }) => best,
        Err(e) => return Err(e),
    };
    if long.len() == threshold {
        if let Some(w) = extract_distinct(g, &neigh, &long, k) {
            return Ok(Some(w));
        }
    }
    contains_half_graph(g, k, HalfGraphMode::SemiInduced, budget)
}

/// Greedy pass over the positions of a strict ladder: keep a position
/// when its element is still fresh and some twin of its set is too.
/// A subsequence of a strict ladder is again strict, so any k kept
/// positions form the wanted pattern.
fn extract_distinct(
    g: &Graph,
    neigh: &SetSystem,
    ladder: &Ladder,
    k: usize,
) -> Option<HalfGraphWitness> {
    let mut twins: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..g.n {
        let idx = neigh.index_of(g.neighbors(v))?;
        twins.entry(idx).or_default().push(v);
    }
    let mut used = vec![false; g.n];
    let mut a_side = Vec::with_capacity(k);
    let mut b_side = Vec::with_capacity(k);
    for (&e, &s) in ladder.elements.iter().zip(&ladder.sets) {
        if a_side.len() == k {
            break;
        }
        if used[e] {
            continue;
        }
        let w = match twins[&s].iter().find(|&&w| !used[w] && w != e) {
            Some(&w) => w,
            None => continue,
        };
        used[e] = true;
        used[w] = true;
        a_side.push(e);
        b_side.push(w);
    }
    (a_side.len() == k).then_some(HalfGraphWitness { a_side, b_side })
}

/// How the pivot of each type-tree node is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotStrategy {
    /// Lowest vertex index — the reproducible default.
    Lowest,
    /// Highest degree within the current vertex set, ties to the lowest
    /// index.
    MaxDegree,
    /// Uniform choice with a seeded generator, consumed in preorder, so
    /// runs with equal seeds agree.
    Random(u64),
}

/// A tree splitting a vertex set by successive neighborhoods: each node
/// is labeled with a pivot vertex, everything adjacent to the pivot goes
/// left, everything else right.
#[derive(Debug, Clone)]
pub struct TypeTree {
    pub tree: LabeledTree,
    /// Where each vertex of the splitting set ended up; a bijection.
    pub element_of: BTreeMap<usize, Vertex>,
}

impl TypeTree {
    /// Every childless vertex realized by some set of `sys`? Holds by
    /// construction over the neighborhood system: the pivot's own
    /// neighborhood realizes its vertex, by adjacency symmetry.
    pub fn is_full_over(&self, sys: &SetSystem) -> bool {
        let leaves: std::collections::BTreeSet<Vertex> =
            self.tree.leaves().into_iter().collect();
        self.tree.realized_leaves(sys) == leaves
    }
}

/// Build the splitting tree of `s_set` (`None` when the set is empty).
pub fn type_tree(g: &Graph, s_set: &BitSet, pivot: PivotStrategy) -> Option<TypeTree> {
    if s_set.is_empty() {
        return None;
    }
    let mut rng = match pivot {
        PivotStrategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut pick = |s: &BitSet| -> usize {
        match pivot {
            PivotStrategy::Lowest => s.first().expect("set is nonempty"),
            PivotStrategy::MaxDegree => s
                .iter()
                .max_by_key(|&v| (s.and(g.neighbors(v)).count(), std::cmp::Reverse(v)))
                .expect("set is nonempty"),
            PivotStrategy::Random(_) => {
                let members: Vec<usize> = s.iter().collect();
                members[rng.as_mut().expect("seeded").gen_range(0..members.len())]
            }
        }
    };
    let tree = grow_type_tree(g, s_set, &mut pick);
    let mut element_of = BTreeMap::new();
    for v in tree.vertices() {
        element_of.insert(tree.label(v).expect("every node carries its pivot"), v);
    }
    Some(TypeTree { tree, element_of })
}

fn grow_type_tree(
    g: &Graph,
    s: &BitSet,
    pick: &mut impl FnMut(&BitSet) -> usize,
) -> LabeledTree {
    let pivot = pick(s);
    let mut rest = s.clone();
    rest.remove(pivot);
    let left = rest.and(g.neighbors(pivot));
    let right = rest.minus(g.neighbors(pivot));
    match (left.is_empty(), right.is_empty()) {
        (true, true) => LabeledTree::leaf(Some(pivot)),
        (false, true) => {
            LabeledTree::branch_single(pivot, Dir::Left, &grow_type_tree(g, &left, pick))
        }
        (true, false) => {
            LabeledTree::branch_single(pivot, Dir::Right, &grow_type_tree(g, &right, pick))
        }
        (false, false) => LabeledTree::branch(
            pivot,
            &grow_type_tree(g, &left, pick),
            &grow_type_tree(g, &right, pick),
        ),
    }
}

/// The two homogeneous halves of one root-to-leaf path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSplit {
    pub clique: BitSet,
    pub independent: BitSet,
}

/// Split the labels on the path from the root to `end` by the direction
/// the path leaves each of them: left-turn labels are pairwise adjacent
/// (everything deeper sits inside their neighborhood), right-turn labels
/// pairwise non-adjacent. The final label can safely join either side
/// and goes to the larger one, ties to the clique. Both sides are
/// re-verified against the adjacency before returning.
pub fn path_split(g: &Graph, tt: &TypeTree, end: Vertex) -> Result<PathSplit> {
    if !tt.tree.contains(end) || !tt.tree.is_leaf(end) {
        return Err(Error::PathNotInTree);
    }
    let mut clique = BitSet::new(g.n);
    let mut independent = BitSet::new(g.n);
    for (anc, dir) in end.steps() {
        let label = tt.tree.label(anc).expect("internal nodes are labeled");
        match dir {
            Dir::Left => clique.insert(label),
            Dir::Right => independent.insert(label),
        }
    }
    let last = tt.tree.label(end).expect("every node carries its pivot");
    if clique.count() >= independent.count() {
        clique.insert(last);
    } else {
        independent.insert(last);
    }
    verify_homogeneous(g, &clique, Homogeneity::Clique)?;
    verify_homogeneous(g, &independent, Homogeneity::Independent)?;
    Ok(PathSplit { clique, independent })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Clique,
    Independent,
}

fn verify_homogeneous(g: &Graph, set: &BitSet, kind: Homogeneity) -> Result<()> {
    let members: Vec<usize> = set.iter().collect();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            let has = g.has_edge(u, v);
            let want = kind == Homogeneity::Clique;
            if has != want {
                return Err(Error::Inconsistency(format!(
                    "vertices {u} and {v} break the {} guarantee",
                    match kind {
                        Homogeneity::Clique => "clique",
                        Homogeneity::Independent => "independent-set",
                    }
                )));
            }
        }
    }
    Ok(())
}

/// Extract a verified homogeneous set: build the splitting tree of the
/// whole vertex set (lowest-index pivots), walk to a deepest childless
/// vertex (leftmost among ties), split the path, and keep the larger
/// side. The result has at least ⌈(depth+1)/2⌉ vertices.
pub fn eh_extract(g: &Graph) -> Result<(BitSet, Homogeneity)> {
    if g.n == 0 {
        return Err(Error::EmptyGraph);
    }
    let tt = type_tree(g, &BitSet::full(g.n), PivotStrategy::Lowest)
        .expect("vertex set is nonempty");
    let mut end = Vertex::ROOT;
    for leaf in tt.tree.leaves() {
        if leaf.depth() > end.depth() {
            end = leaf;
        }
    }
    let split = path_split(g, &tt, end)?;
    if split.clique.count() >= split.independent.count() {
        Ok((split.clique, Homogeneity::Clique))
    } else {
        Ok((split.independent, Homogeneity::Independent))
    }
}

/// The homogeneous-set size guaranteed for an n-vertex graph whose
/// neighborhood system has dimension at most `dim`: the least s with
/// (2s+2)^(dim+1) ≥ n, the integer form of s ≥ (n^(1/(dim+1)) − 2)/2.
pub fn homogeneous_size_floor(n: usize, dim: i64) -> usize {
    assert!(dim >= 0, "a nonempty graph has a nonempty neighborhood family");
    let exp = (dim + 1) as u32;
    let mut s = 0usize;
    loop {
        let base = 2 * s as u128 + 2;
        let reach = base.checked_pow(exp).unwrap_or(u128::MAX);
        if reach >= n as u128 {
            return s;
        }
        s += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::thicket_dim;

    #[test]
    fn half_graph_edges_match_the_pattern() {
        let h1 = Graph::half_graph(1);
        assert_eq!((h1.vertex_count(), h1.edge_count()), (2, 0));
        let h2 = Graph::half_graph(2);
        assert_eq!(h2.edge_count(), 1);
        assert!(h2.has_edge(0, 3));
        let h3 = Graph::half_graph(3);
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                if h3.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        assert_eq!(edges, vec![(0, 4), (0, 5), (1, 5)]);
    }

    #[test]
    fn neighborhoods_collapse_twins() {
        let sys = neighborhood_system(&Graph::complete(3));
        assert_eq!(sys.len(), 3);
        assert_eq!(sys.set(0).iter().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(sys.set(1).iter().collect::<Vec<_>>(), vec![0, 2]);

        let empty = neighborhood_system(&Graph::new(3));
        assert_eq!(empty.len(), 1);
        assert_eq!(empty.duplicates_dropped(), 2);

        let fix = neighborhood_system(&Graph::ladder_no_half_graph_example());
        let rows: Vec<Vec<usize>> =
            fix.family().iter().map(|s| s.iter().collect()).collect();
        assert_eq!(rows, vec![vec![1, 2], vec![0], vec![0, 3], vec![2], vec![]]);
    }

    #[test]
    fn edge_list_round_trips_and_rejects_garbage() {
        let g = Graph::ladder_no_half_graph_example();
        let text = g.write_edge_list();
        assert_eq!(text, "5 3\n0 1\n0 2\n2 3\n");
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
        let commented = "5 3 # fixture\n\n0 1\n0 2 # second\n2 3\n";
        assert_eq!(Graph::parse_edge_list(commented).unwrap(), g);

        for bad in ["", "3\n", "2 1\n0 0\n", "2 1\n0 3\n", "2 2\n0 1\n", "2 1\n0 1\n1 0\n"] {
            assert!(matches!(Graph::parse_edge_list(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
    }

    #[test]
    fn half_graph_search_finds_its_own_pattern() {
        let mut budget = Budget::unlimited();
        let h3 = Graph::half_graph(3);
        let w = contains_half_graph(&h3, 3, HalfGraphMode::SemiInduced, &mut budget)
            .unwrap()
            .expect("generator contains its own pattern");
        w.verify(&h3, HalfGraphMode::SemiInduced).unwrap();
        let ladder = w.to_ladder(&neighborhood_system(&h3), &h3).unwrap();
        assert_eq!(ladder.len(), 3);

        // The sides are independent in a half graph, so the induced
        // variant succeeds too.
        let wi = contains_half_graph(&h3, 3, HalfGraphMode::Induced, &mut budget)
            .unwrap()
            .expect("bipartite sides have no internal edges");
        wi.verify(&h3, HalfGraphMode::Induced).unwrap();
    }

    #[test]
    fn complete_graph_has_subgraph_but_not_semi_induced_pattern() {
        let mut budget = Budget::unlimited();
        let k4 = Graph::complete(4);
        // Semi-induced needs the non-edge a₁ ≁ b₁.
        assert!(contains_half_graph(&k4, 2, HalfGraphMode::SemiInduced, &mut budget)
            .unwrap()
            .is_none());
        // As a plain subgraph only the edge a₁ ~ b₂ is demanded.
        let w = contains_half_graph(&k4, 2, HalfGraphMode::Subgraph, &mut budget)
            .unwrap()
            .expect("a single cross edge is easy in K4");
        w.verify(&k4, HalfGraphMode::Subgraph).unwrap();
    }

    #[test]
    fn fixture_has_a_ladder_but_no_half_graph() {
        let mut budget = Budget::unlimited();
        let g = Graph::ladder_no_half_graph_example();
        let neigh = neighborhood_system(&g);
        let ladder = max_ladder(&neigh, 4, true, &mut budget).unwrap();
        assert_eq!(ladder.len(), 3);
        assert!(contains_half_graph(&g, 3, HalfGraphMode::SemiInduced, &mut budget)
            .unwrap()
            .is_none());
        assert!(distinct_strict_ladder(&g, 3, &mut budget).unwrap().is_none());
    }

    #[test]
    fn half_graph_search_respects_budget() {
        let mut tiny = Budget::new(3);
        let err = contains_half_graph(
            &Graph::half_graph(3),
            3,
            HalfGraphMode::SemiInduced,
            &mut tiny,
        )
        .unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn greedy_extraction_resolves_twins() {
        // The canonical strict 5-ladder of the half graph on five
        // vertices per side: elements a₁..a₅, sets Γ_{b₁}..Γ_{b₅}. The
        // first set (the empty neighborhood) is shared by the twins a₅
        // and b₁.
        let g = Graph::half_graph(5);
        let neigh = neighborhood_system(&g);
        let sets: Vec<usize> = (5..10)
            .map(|w| neigh.index_of(g.neighbors(w)).unwrap())
            .collect();
        let ladder = Ladder::new(vec![0, 1, 2, 3, 4], sets, true).unwrap();
        ladder.check(&neigh).unwrap();

        let w = extract_distinct(&g, &neigh, &ladder, 2).expect("greedy finds two positions");
        assert_eq!((w.a_side.as_slice(), w.b_side.as_slice()), (&[0, 1][..], &[4, 6][..]));
        w.verify(&g, HalfGraphMode::SemiInduced).unwrap();
    }

    #[test]
    fn distinct_ladder_needs_fresh_vertices() {
        let mut budget = Budget::unlimited();
        // No strict 5-ladder exists here (the largest neighborhood has
        // one vertex), so only the direct fallback can succeed.
        let h2 = Graph::half_graph(2);
        let w = distinct_strict_ladder(&h2, 2, &mut budget)
            .unwrap()
            .expect("four distinct vertices in the pattern exist");
        w.verify(&h2, HalfGraphMode::SemiInduced).unwrap();
        w.to_ladder(&neighborhood_system(&h2), &h2).unwrap();

        // Any two non-adjacent distinct vertices give a 1-ladder.
        let w1 = distinct_strict_ladder(&Graph::new(2), 1, &mut budget)
            .unwrap()
            .expect("an edgeless pair works");
        assert_eq!(w1.k(), 1);

        assert_eq!(distinct_ladder_threshold(2), 5);
        assert_eq!(distinct_ladder_threshold(3), 11);
    }

    #[test]
    fn type_trees_are_paths_on_extreme_graphs() {
        let k4 = Graph::complete(4);
        let tt = type_tree(&k4, &BitSet::full(4), PivotStrategy::Lowest).unwrap();
        assert_eq!(tt.tree.depth(), 3);
        let mut v = Vertex::ROOT;
        for expected in 0..4 {
            assert_eq!(tt.tree.label(v), Some(expected));
            assert_eq!(tt.tree.child(v, Dir::Right), None);
            if expected < 3 {
                v = tt.tree.child(v, Dir::Left).unwrap();
            }
        }
        assert!(tt.is_full_over(&neighborhood_system(&k4)));

        let e4 = Graph::new(4);
        let te = type_tree(&e4, &BitSet::full(4), PivotStrategy::Lowest).unwrap();
        assert_eq!(te.tree.depth(), 3);
        assert_eq!(te.tree.child(Vertex::ROOT, Dir::Left), None);
        assert!(te.is_full_over(&neighborhood_system(&e4)));

        assert!(type_tree(&k4, &BitSet::new(4), PivotStrategy::Lowest).is_none());
    }

    #[test]
    fn fixture_type_tree_matches_hand_run() {
        let g = Graph::ladder_no_half_graph_example();
        let tt = type_tree(&g, &BitSet::full(5), PivotStrategy::Lowest).unwrap();
        let path = |p: &str| Vertex::parse(p).unwrap();
        // Root 0 splits {1,2,3,4} into neighbors {1,2} and the rest
        // {3,4}; each of those is a chain under lowest-index pivots.
        assert_eq!(tt.tree.label(Vertex::ROOT), Some(0));
        assert_eq!(tt.tree.label(path("0")), Some(1));
        assert_eq!(tt.tree.label(path("01")), Some(2));
        assert_eq!(tt.tree.label(path("1")), Some(3));
        assert_eq!(tt.tree.label(path("11")), Some(4));
        assert_eq!(tt.tree.vertex_count(), 5);
        assert_eq!(tt.element_of.len(), 5);
        let neigh = neighborhood_system(&g);
        assert!(tt.is_full_over(&neigh));
        // The two childless vertices are reached by the neighborhoods of
        // their own labels.
        assert!(tt.tree.is_realized(path("01"), g.neighbors(2)).unwrap());
        assert!(tt.tree.is_realized(path("11"), g.neighbors(4)).unwrap());
    }

    #[test]
    fn pivot_strategies_cover_every_vertex() {
        let g = Graph::half_graph(3);
        let neigh = neighborhood_system(&g);
        for strategy in [
            PivotStrategy::Lowest,
            PivotStrategy::MaxDegree,
            PivotStrategy::Random(7),
            PivotStrategy::Random(8),
        ] {
            let tt = type_tree(&g, &BitSet::full(6), strategy).unwrap();
            assert_eq!(tt.element_of.len(), 6, "{strategy:?}");
            assert_eq!(tt.tree.vertex_count(), 6, "{strategy:?}");
            assert!(tt.is_full_over(&neigh), "{strategy:?}");
        }
        // Equal seeds agree.
        let a = type_tree(&g, &BitSet::full(6), PivotStrategy::Random(42)).unwrap();
        let b = type_tree(&g, &BitSet::full(6), PivotStrategy::Random(42)).unwrap();
        assert_eq!(a.tree, b.tree);
        // Highest degree on the half graph is vertex 0 (two neighbors).
        let md = type_tree(&g, &BitSet::full(6), PivotStrategy::MaxDegree).unwrap();
        assert_eq!(md.tree.label(Vertex::ROOT), Some(0));
    }

    #[test]
    fn path_split_sorts_labels_by_turn_direction() {
        let k4 = Graph::complete(4);
        let tt = type_tree(&k4, &BitSet::full(4), PivotStrategy::Lowest).unwrap();
        let end = *tt.tree.leaves().first().unwrap();
        let split = path_split(&k4, &tt, end).unwrap();
        assert_eq!(split.clique.count(), 4);
        assert!(split.independent.is_empty());

        let e4 = Graph::new(4);
        let te = type_tree(&e4, &BitSet::full(4), PivotStrategy::Lowest).unwrap();
        let end = *te.tree.leaves().first().unwrap();
        let split = path_split(&e4, &te, end).unwrap();
        assert!(split.clique.is_empty());
        assert_eq!(split.independent.count(), 4);

        // Fixture: path 0 →L 1 →R 2; the final label 2 breaks the tie
        // toward the clique side, and 0 ~ 2 indeed holds.
        let g = Graph::ladder_no_half_graph_example();
        let tt = type_tree(&g, &BitSet::full(5), PivotStrategy::Lowest).unwrap();
        let split = path_split(&g, &tt, Vertex::parse("01").unwrap()).unwrap();
        assert_eq!(split.clique.iter().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(split.independent.iter().collect::<Vec<_>>(), vec![1]);

        assert!(matches!(
            path_split(&g, &tt, Vertex::parse("0").unwrap()),
            Err(Error::PathNotInTree)
        ));
        assert!(matches!(
            path_split(&g, &tt, Vertex::parse("000").unwrap()),
            Err(Error::PathNotInTree)
        ));
    }

    #[test]
    fn homogeneous_extraction_meets_its_floor() {
        let (set, kind) = eh_extract(&Graph::complete(9)).unwrap();
        assert_eq!((set.count(), kind), (9, Homogeneity::Clique));
        let (set, kind) = eh_extract(&Graph::new(9)).unwrap();
        assert_eq!((set.count(), kind), (9, Homogeneity::Independent));
        assert!(matches!(eh_extract(&Graph::new(0)), Err(Error::EmptyGraph)));

        let g = Graph::half_graph(4);
        let (set, kind) = eh_extract(&g).unwrap();
        verify_homogeneous(&g, &set, kind).unwrap();
        let dim = thicket_dim(&neighborhood_system(&g));
        assert!(set.count() >= homogeneous_size_floor(8, dim));
    }

    #[test]
    fn size_floor_matches_the_integer_inequality() {
        // dim 0 forces all neighborhoods equal, i.e. an edgeless graph,
        // where the whole vertex set is homogeneous.
        assert_eq!(homogeneous_size_floor(9, 0), 4);
        assert_eq!(homogeneous_size_floor(16, 1), 1);
        assert_eq!(homogeneous_size_floor(1, 0), 0);
        assert_eq!(homogeneous_size_floor(100_000, 3), 8);
        // (2·8+2)^4 = 160000 ≥ 100000 while (2·7+2)^4 = 65536 falls short.
        assert_eq!(homogeneous_size_floor(65_537, 3), 8);
    }
}
