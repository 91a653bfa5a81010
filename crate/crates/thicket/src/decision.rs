//! Decision trees over a family of query sets.
//!
//! A set-labeled tree *computes* a target `G` over a reference set `Y`
//! when the regions its leaves cut out of `Y` never straddle the
//! boundary of `G`; the leaves whose regions lie inside `G` are then a
//! certificate that membership in `G` is decided by the tree's queries.
//! This module builds the standard query families (thresholds, residues,
//! equality atoms), the balanced trees that isolate every point of
//! `[0, 2^n)` with those families, a composition operator that rewrites
//! a tree over coarse queries into one over fine queries, and an
//! exhaustive minimum-depth search used to separate the families
//! experimentally.

use crate::bitset::BitSet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::setsystem::SetSystem;
use crate::tree::{Dir, LabeledTree, Vertex};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// A decision problem: decide membership in `target` for the points of
/// `reference`, asking only queries drawn from `label_family`.
#[derive(Debug, Clone)]
pub struct ComputationInstance {
    pub label_family: SetSystem,
    pub target: BitSet,
    pub reference: BitSet,
}

impl ComputationInstance {
    pub fn new(
        label_family: SetSystem,
        target: BitSet,
        reference: BitSet,
    ) -> Result<ComputationInstance> {
        for part in [&target, &reference] {
            if part.universe() != label_family.domain_size() {
                return Err(Error::DomainMismatch {
                    left: part.universe(),
                    right: label_family.domain_size(),
                });
            }
        }
        Ok(ComputationInstance { label_family, target, reference })
    }
}

/// The leaf selection certifying that `tree` computes the instance's
/// target over its reference: the leaves whose nonempty region lies
/// inside the target. Returns `None` when some leaf region straddles
/// the target boundary, i.e. the tree does not compute the target.
pub fn computes(
    tree: &LabeledTree,
    inst: &ComputationInstance,
) -> Result<Option<Vec<Vertex>>> {
    let regions = tree.leaf_regions(&inst.label_family, &inst.reference)?;
    let mut selection = Vec::new();
    for (leaf, region) in regions {
        if region.is_empty() {
            continue;
        }
        if region.subset_of(&inst.target) {
            selection.push(leaf);
        } else if region.intersects(&inst.target) {
            return Ok(None);
        }
    }
    Ok(Some(selection))
}

/// Rewrite a tree whose labels index `outer_family` into a tree over
/// `label_family`, given for each outer label `g` a tree that computes
/// `outer_family.set(g)` over `y`.
///
/// Recursively: a leaf stays a leaf; a node labeled `g` with subtrees
/// `R`, `S` becomes a copy of `computing[g]` whose leaves are replaced —
/// leaves whose region over `y` lies inside the label's set (empty
/// regions count as inside) get the rewritten `R`, the rest get the
/// rewritten `S`. The result's partition of `y` refines the original
/// tree's, it realizes at least as many leaves over `y`, and its depth
/// is at most `depth(original) · max depth(computing[g])`.
pub fn compose(
    outer: &LabeledTree,
    outer_family: &SetSystem,
    computing: &BTreeMap<usize, LabeledTree>,
    label_family: &SetSystem,
    y: &BitSet,
) -> Result<LabeledTree> {
    // Check every contract up front so failures name the offending label.
    let mut seen = BTreeSet::new();
    for v in outer.vertices() {
        if outer.is_leaf(v) {
            continue;
        }
        let g = outer
            .label(v)
            .ok_or_else(|| Error::MissingLabel { vertex: v.to_string() })?;
        if !seen.insert(g) {
            continue;
        }
        let target = outer_family
            .family()
            .get(g)
            .ok_or(Error::InvalidLabel {
                vertex: v.to_string(),
                label: g,
                family_size: outer_family.len(),
            })?
            .clone();
        let t_g = computing.get(&g).ok_or(Error::ComputingContract { label: g })?;
        let inst = ComputationInstance::new(label_family.clone(), target, y.clone())?;
        if computes(t_g, &inst)?.is_none() {
            return Err(Error::ComputingContract { label: g });
        }
    }
    compose_at(outer, Vertex::ROOT, outer_family, computing, label_family, y)
}

fn compose_at(
    outer: &LabeledTree,
    at: Vertex,
    outer_family: &SetSystem,
    computing: &BTreeMap<usize, LabeledTree>,
    label_family: &SetSystem,
    y: &BitSet,
) -> Result<LabeledTree> {
    if outer.is_leaf(at) {
        return Ok(LabeledTree::leaf(None));
    }
    let (Some(lc), Some(rc)) = (outer.child(at, Dir::Left), outer.child(at, Dir::Right)) else {
        return Err(Error::Precondition(
            "composition needs zero or two children at every vertex".into(),
        ));
    };
    let inside = compose_at(outer, lc, outer_family, computing, label_family, y)?;
    let outside = compose_at(outer, rc, outer_family, computing, label_family, y)?;
    let g = outer.label(at).expect("checked in compose");
    let t_g = &computing[&g];
    let target = outer_family.set(g);
    let mut replacements = BTreeMap::new();
    for (leaf, region) in t_g.leaf_regions(label_family, y)? {
        let sub = if region.subset_of(target) { &inside } else { &outside };
        replacements.insert(leaf, sub);
    }
    splice(t_g, &replacements)
}

/// Replace each listed childless vertex of `base` by a subtree (the
/// vertex's own label, if any, is discarded with it).
fn splice(
    base: &LabeledTree,
    replacements: &BTreeMap<Vertex, &LabeledTree>,
) -> Result<LabeledTree> {
    let mut vertices = BTreeSet::new();
    let mut labels = BTreeMap::new();
    for v in base.vertices() {
        if replacements.contains_key(&v) {
            continue;
        }
        vertices.insert(v);
        if let Some(l) = base.label(v) {
            labels.insert(v, l);
        }
    }
    for (&pos, &sub) in replacements {
        for sv in sub.vertices() {
            let nv = append(pos, sv);
            vertices.insert(nv);
            if let Some(l) = sub.label(sv) {
                labels.insert(nv, l);
            }
        }
    }
    LabeledTree::from_parts(vertices, labels)
}

fn append(base: Vertex, rel: Vertex) -> Vertex {
    let mut v = base;
    for (_, dir) in rel.steps() {
        v = v.child(dir);
    }
    v
}

/// The nested family {x ≤ k} for 0 ≤ k < n, over the domain [0, n).
pub fn threshold_family(n: usize) -> Result<SetSystem> {
    if n == 0 {
        return Err(Error::Precondition("threshold family needs a nonempty domain".into()));
    }
    SetSystem::build(n, (0..n).map(|k| BitSet::from_fn(n, |x| x <= k)).collect())
}

/// The family {x ≡ l (mod k)} for 1 ≤ k ≤ n and 0 ≤ l < k, over
/// [0, n), deduplicated.
pub fn residue_family(n: usize) -> Result<SetSystem> {
    if n == 0 {
        return Err(Error::Precondition("residue family needs a nonempty domain".into()));
    }
    let mut sets = Vec::new();
    for k in 1..=n {
        for l in 0..k {
            sets.push(BitSet::from_fn(n, |x| x % k == l));
        }
    }
    SetSystem::build(n, sets)
}

/// The sets an equality test against a constant can carve out of
/// [0, n): the empty set, every singleton, and the whole domain.
pub fn atomic_equality_family(n: usize) -> Result<SetSystem> {
    if n == 0 {
        return Err(Error::Precondition("equality-atom family needs a nonempty domain".into()));
    }
    let mut sets = vec![BitSet::new(n)];
    sets.extend((0..n).map(|v| BitSet::from_fn(n, |x| x == v)));
    sets.push(BitSet::full(n));
    SetSystem::build(n, sets)
}

/// Row-major index of a point in the box `dims` (first coordinate most
/// significant).
pub fn box_index(dims: &[usize], coords: &[usize]) -> usize {
    assert_eq!(dims.len(), coords.len(), "coordinate arity mismatch");
    let mut idx = 0;
    for (d, c) in dims.iter().zip(coords) {
        assert!(c < d, "coordinate {c} outside box side {d}");
        idx = idx * d + c;
    }
    idx
}

/// The order relation {(x, y) : x ≤ y} flattened over the box [0, n)².
pub fn leq_relation(n: usize) -> BitSet {
    BitSet::from_fn(n * n, |i| i / n <= i % n)
}

/// The remainder graph {(x, y, z) : y ≥ 1 and x mod y = z} flattened
/// over the box [0, n)³.
pub fn rem_relation(n: usize) -> BitSet {
    BitSet::from_fn(n * n * n, |i| {
        let (x, y, z) = (i / (n * n), i / n % n, i % n);
        y >= 1 && x % y == z
    })
}

/// Substitute fixed coordinates into every set of a family over a box.
/// `fixed[i] = Some(c)` pins coordinate i to c; `None` keeps it free.
/// The result lives on the box of the free coordinates.
pub fn slice_family(
    sys: &SetSystem,
    dims: &[usize],
    fixed: &[Option<usize>],
) -> Result<SetSystem> {
    let total: usize = dims.iter().product();
    if total != sys.domain_size() {
        return Err(Error::DomainMismatch { left: total, right: sys.domain_size() });
    }
    if fixed.len() != dims.len() {
        return Err(Error::Precondition(format!(
            "{} fixing choices for a box of arity {}",
            fixed.len(),
            dims.len()
        )));
    }
    for (i, f) in fixed.iter().enumerate() {
        if let Some(c) = f {
            if *c >= dims[i] {
                return Err(Error::Precondition(format!(
                    "fixed coordinate {c} outside box side {}",
                    dims[i]
                )));
            }
        }
    }
    let free: Vec<usize> = (0..dims.len()).filter(|&i| fixed[i].is_none()).collect();
    let new_domain: usize = free.iter().map(|&i| dims[i]).product();
    let sets = sys
        .family()
        .iter()
        .map(|set| {
            BitSet::from_fn(new_domain, |flat| {
                // Unflatten over the free coordinates, right to left.
                let mut rem = flat;
                let mut coords = vec![0usize; dims.len()];
                for &i in free.iter().rev() {
                    coords[i] = rem % dims[i];
                    rem /= dims[i];
                }
                for (i, f) in fixed.iter().enumerate() {
                    if let Some(c) = f {
                        coords[i] = *c;
                    }
                }
                set.contains(box_index(dims, &coords))
            })
        })
        .collect();
    SetSystem::build(new_domain, sets)
}

/// A balanced tree that isolates every point of its domain, kept with
/// the family it queries and the verified value at each leaf.
#[derive(Debug, Clone)]
pub struct ShatterWitness {
    pub tree: LabeledTree,
    pub family: SetSystem,
    /// The single member of each leaf's region, in left-to-right order.
    pub leaf_values: Vec<usize>,
}

fn certified(tree: LabeledTree, family: SetSystem) -> Result<ShatterWitness> {
    let domain = family.domain_size();
    let regions = tree.leaf_regions(&family, &BitSet::full(domain))?;
    let mut leaf_values = Vec::with_capacity(regions.len());
    for (leaf, region) in &regions {
        if region.count() != 1 {
            return Err(Error::Inconsistency(format!(
                "leaf {leaf} cuts out {} points instead of one",
                region.count()
            )));
        }
        leaf_values.push(region.first().expect("nonempty"));
    }
    if leaf_values.len() != domain {
        return Err(Error::Inconsistency(format!(
            "{} leaves cannot isolate {domain} points",
            leaf_values.len()
        )));
    }
    Ok(ShatterWitness { tree, family, leaf_values })
}

/// Depth-n residue queries isolating every point of [0, 2^n): the
/// vertex reached by residue r at depth j asks whether
/// x ≡ r (mod 2^(j+1)); a left step keeps the residue, a right step
/// adds 2^j. Leaves appear in bit-reversed order.
pub fn residue_shatter_tree(n: usize) -> Result<ShatterWitness> {
    assert!(n <= 12, "residue domain 2^{n} is unreasonable");
    let domain = 1usize << n;
    let family = residue_family(domain)?;
    let tree = LabeledTree::complete(n, |v| {
        let r: usize = v
            .steps()
            .iter()
            .enumerate()
            .filter(|(_, (_, dir))| *dir == Dir::Right)
            .map(|(i, _)| 1usize << i)
            .sum();
        let modulus = 1usize << (v.depth() + 1);
        let set = BitSet::from_fn(domain, |x| x % modulus == r);
        family.index_of(&set).expect("every power-of-two residue class is in the family")
    });
    certified(tree, family)
}

/// Depth-n binary search over thresholds isolating every point of
/// [0, 2^n); leaves appear in increasing order.
pub fn threshold_shatter_tree(n: usize) -> Result<ShatterWitness> {
    assert!(n <= 12, "threshold domain 2^{n} is unreasonable");
    let domain = 1usize << n;
    let family = threshold_family(domain)?;
    let tree = LabeledTree::complete(n, |v| {
        let lo: usize = v
            .steps()
            .iter()
            .enumerate()
            .filter(|(_, (_, dir))| *dir == Dir::Right)
            .map(|(i, _)| 1usize << (n - 1 - i))
            .sum();
        // The block at depth j is [lo, lo + 2^(n-j)); ask x ≤ mid − 1.
        lo + (1usize << (n - v.depth() - 1)) - 1
    });
    certified(tree, family)
}

/// Least depth of a tree over the instance's label family computing its
/// target over its reference, or `None` when no tree of depth ≤
/// `depth_cap` works. Exhaustive search over proper splits, memoized on
/// the surviving region.
pub fn min_decision_depth(
    inst: &ComputationInstance,
    depth_cap: usize,
    budget: &mut Budget,
) -> Result<Option<usize>> {
    let mut memo = HashMap::new();
    mdd(inst, &inst.reference, depth_cap, &mut memo, budget)
}

/// Memo entries record how deep a region has been probed: an exact
/// depth is valid at any limit, while a failure is only conclusive for
/// limits up to the probed one.
fn mdd(
    inst: &ComputationInstance,
    region: &BitSet,
    limit: usize,
    memo: &mut HashMap<BitSet, (usize, Option<usize>)>,
    budget: &mut Budget,
) -> Result<Option<usize>> {
    budget.tick(1)?;
    let inside = region.and(&inst.target);
    if inside.is_empty() || inside == *region {
        return Ok(Some(0));
    }
    if limit == 0 {
        return Ok(None);
    }
    if let Some(&(probed, res)) = memo.get(region) {
        match res {
            Some(d) => return Ok((d <= limit).then_some(d)),
            None if limit <= probed => return Ok(None),
            None => {}
        }
    }
    let mut best: Option<usize> = None;
    for set in inst.label_family.family() {
        let left = region.and(set);
        if left.is_empty() || left == *region {
            continue;
        }
        let right = region.minus(set);
        // A candidate only improves on `best` if both children finish
        // two levels below it.
        let child_limit = match best {
            Some(b) => b - 2,
            None => limit - 1,
        };
        let Some(l) = mdd(inst, &left, child_limit, memo, budget)? else {
            continue;
        };
        let Some(r) = mdd(inst, &right, child_limit, memo, budget)? else {
            continue;
        };
        let cand = 1 + l.max(r);
        if best.is_none_or(|b| cand < b) {
            best = Some(cand);
            if cand == 1 {
                break;
            }
        }
    }
    memo.insert(region.clone(), (limit, best));
    Ok(best)
}

/// Which one-variable query family the lower-bound experiment probes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomStructure {
    /// Equality tests against constants ([`atomic_equality_family`]).
    Equality,
    /// Order tests against constants ([`threshold_family`]).
    Order,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthOutcome {
    Depth(usize),
    ExceedsCap,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundRow {
    /// Domain exponent: the instance lives on [0, 2^n).
    pub n: usize,
    pub domain: usize,
    pub depth_cap: usize,
    pub outcome: DepthOutcome,
}

/// For each exponent n, the least decision depth for the balanced
/// target {x < 2^(n−1)} over [0, 2^n) with the chosen query family.
/// Equality atoms remove one point per query, so the depth doubles with
/// each step of n; order atoms settle it in one query. Each row gets a
/// fresh budget; exhaustion and cap overruns are recorded per row.
pub fn lower_bound_experiment(
    structure: AtomStructure,
    ns: &[usize],
    depth_cap: Option<usize>,
    budget_limit: u64,
) -> Result<Vec<LowerBoundRow>> {
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        if n == 0 || n > 16 {
            return Err(Error::Precondition(format!(
                "exponent {n} outside the supported range 1..=16"
            )));
        }
        let domain = 1usize << n;
        let family = match structure {
            AtomStructure::Equality => atomic_equality_family(domain)?,
            AtomStructure::Order => threshold_family(domain)?,
        };
        let target = BitSet::from_fn(domain, |x| x < domain / 2);
        let inst = ComputationInstance::new(family, target, BitSet::full(domain))?;
        let cap = depth_cap.unwrap_or(domain);
        let mut budget = Budget::new(budget_limit);
        let outcome = match min_decision_depth(&inst, cap, &mut budget) {
            Ok(Some(d)) => DepthOutcome::Depth(d),
            Ok(None) => DepthOutcome::ExceedsCap,
            Err(Error::BudgetExceeded { .. }) => DepthOutcome::BudgetExhausted,
            Err(e) => return Err(e),
        };
        rows.push(LowerBoundRow { n, domain, depth_cap: cap, outcome });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(path: &str) -> Vertex {
        Vertex::parse(path).unwrap()
    }

    fn rows(sys: &SetSystem) -> Vec<Vec<usize>> {
        sys.family().iter().map(|s| s.iter().collect()).collect()
    }

    #[test]
    fn query_families_match_hand_lists() {
        let t = threshold_family(3).unwrap();
        assert_eq!(rows(&t), vec![vec![0], vec![0, 1], vec![0, 1, 2]]);
        assert!(threshold_family(0).is_err());

        let r = residue_family(4).unwrap();
        assert_eq!(r.len(), 8);
        assert_eq!(r.set(0).iter().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert!(r.index_of(&BitSet::from_indices(4, &[0, 2]).unwrap()).is_some());
        assert_eq!(rows(&residue_family(1).unwrap()), vec![vec![0]]);

        let e = atomic_equality_family(3).unwrap();
        assert_eq!(rows(&e), vec![vec![], vec![0], vec![1], vec![2], vec![0, 1, 2]]);
        let tiny = atomic_equality_family(1).unwrap();
        assert_eq!(rows(&tiny), vec![vec![], vec![0]]);
        assert_eq!(tiny.duplicates_dropped(), 1);
    }

    #[test]
    fn box_indexing_is_row_major() {
        assert_eq!(box_index(&[4, 4], &[1, 2]), 6);
        assert_eq!(box_index(&[2, 3, 5], &[1, 2, 4]), 29);
        let leq = leq_relation(3);
        assert_eq!(leq.iter().collect::<Vec<_>>(), vec![0, 1, 2, 4, 5, 8]);
        let rem = rem_relation(2);
        // Pairs (x, 1, 0) are the only members over [0,2)³: x mod 1 = 0.
        assert_eq!(rem.iter().collect::<Vec<_>>(), vec![2, 6]);
    }

    #[test]
    fn slicing_the_order_relation_gives_thresholds() {
        let n = 4;
        let sys = SetSystem::build(n * n, vec![leq_relation(n)]).unwrap();
        for k in 0..n {
            let sliced = slice_family(&sys, &[n, n], &[None, Some(k)]).unwrap();
            assert_eq!(sliced.len(), 1);
            assert_eq!(sliced.set(0), &BitSet::from_fn(n, |x| x <= k));
        }
        // Fixing x instead gives up-sets.
        let sliced = slice_family(&sys, &[n, n], &[Some(2), None]).unwrap();
        assert_eq!(sliced.set(0).iter().collect::<Vec<_>>(), vec![2, 3]);

        assert!(matches!(
            slice_family(&sys, &[n, n + 1], &[None, Some(0)]),
            Err(Error::DomainMismatch { .. })
        ));
        assert!(slice_family(&sys, &[n, n], &[None]).is_err());
        assert!(slice_family(&sys, &[n, n], &[None, Some(n)]).is_err());
    }

    #[test]
    fn computes_returns_the_inside_leaves() {
        let family = threshold_family(8).unwrap();
        let y = BitSet::full(8);
        let g = family.set(3).clone();

        let leaf = LabeledTree::leaf(None);
        let whole = ComputationInstance::new(family.clone(), BitSet::full(8), y.clone()).unwrap();
        assert_eq!(computes(&leaf, &whole).unwrap(), Some(vec![Vertex::ROOT]));
        let nothing = ComputationInstance::new(family.clone(), BitSet::new(8), y.clone()).unwrap();
        assert_eq!(computes(&leaf, &nothing).unwrap(), Some(vec![]));

        let split = LabeledTree::branch(3, &LabeledTree::leaf(None), &LabeledTree::leaf(None));
        let inst = ComputationInstance::new(family.clone(), g.clone(), y.clone()).unwrap();
        assert_eq!(computes(&split, &inst).unwrap(), Some(vec![v("0")]));
        // A single leaf cannot compute a proper nonempty target.
        assert_eq!(computes(&leaf, &inst).unwrap(), None);

        // A tree splitting at 5 leaves the region [0,6) straddling {x≤3}.
        let coarse = LabeledTree::branch(5, &LabeledTree::leaf(None), &LabeledTree::leaf(None));
        assert_eq!(computes(&coarse, &inst).unwrap(), None);

        assert!(ComputationInstance::new(family, g, BitSet::full(7)).is_err());
    }

    #[test]
    fn compose_splices_computing_trees() {
        let family = threshold_family(8).unwrap();
        let y = BitSet::full(8);
        let depth1 = |k: usize| {
            LabeledTree::branch(k, &LabeledTree::leaf(None), &LabeledTree::leaf(None))
        };
        let mut computing = BTreeMap::new();
        for k in [1, 3, 5] {
            computing.insert(k, depth1(k));
        }

        // A leaf composes to a leaf.
        let leaf = compose(&LabeledTree::leaf(None), &family, &computing, &family, &y).unwrap();
        assert_eq!(leaf, LabeledTree::leaf(None));

        // Depth-1 outer: the computing tree is spliced in whole.
        let outer1 = depth1(3);
        let spliced = compose(&outer1, &family, &computing, &family, &y).unwrap();
        assert_eq!(spliced.depth(), 1);
        assert_eq!(
            spliced.leaf_regions(&family, &y).unwrap(),
            outer1.leaf_regions(&family, &y).unwrap()
        );

        // Depth-2 outer over three threshold labels refines its own
        // partition and realizes at least as many leaves.
        let outer2 = LabeledTree::branch(3, &depth1(1), &depth1(5));
        let star = compose(&outer2, &family, &computing, &family, &y).unwrap();
        assert!(star.depth() <= 2);
        let outer_regions = outer2.leaf_regions(&family, &y).unwrap();
        let star_regions = star.leaf_regions(&family, &y).unwrap();
        for (_, fine) in &star_regions {
            assert!(
                fine.is_empty()
                    || outer_regions.iter().any(|(_, coarse)| fine.subset_of(coarse))
            );
        }
        let nonempty = |rs: &[(Vertex, BitSet)]| rs.iter().filter(|(_, r)| !r.is_empty()).count();
        assert!(nonempty(&star_regions) >= nonempty(&outer_regions));
        assert_eq!(nonempty(&star_regions), 4);

        // Contract failures name the label: missing tree, then a tree
        // that does not compute its set.
        let bare = BTreeMap::new();
        assert!(matches!(
            compose(&outer1, &family, &bare, &family, &y),
            Err(Error::ComputingContract { label: 3 })
        ));
        let mut lazy = BTreeMap::new();
        lazy.insert(3, LabeledTree::leaf(None));
        assert!(matches!(
            compose(&outer1, &family, &lazy, &family, &y),
            Err(Error::ComputingContract { label: 3 })
        ));
    }

    #[test]
    fn shatter_trees_isolate_every_point() {
        assert_eq!(residue_shatter_tree(0).unwrap().leaf_values, vec![0]);
        assert_eq!(residue_shatter_tree(2).unwrap().leaf_values, vec![0, 2, 1, 3]);
        let w = residue_shatter_tree(3).unwrap();
        assert_eq!(w.leaf_values, vec![0, 4, 2, 6, 1, 5, 3, 7]);
        // The root asks for the evens: x ≡ 0 (mod 2).
        let root_set = w.family.set(w.tree.label(Vertex::ROOT).unwrap());
        assert_eq!(root_set.iter().collect::<Vec<_>>(), vec![0, 2, 4, 6]);

        let t1 = threshold_shatter_tree(1).unwrap();
        assert_eq!(t1.tree.label(Vertex::ROOT), Some(0));
        assert_eq!(t1.leaf_values, vec![0, 1]);
        assert_eq!(threshold_shatter_tree(2).unwrap().leaf_values, vec![0, 1, 2, 3]);
        let t3 = threshold_shatter_tree(3).unwrap();
        assert_eq!(t3.leaf_values, (0..8).collect::<Vec<_>>());
        assert_eq!(t3.tree.label(Vertex::ROOT), Some(3));
    }

    #[test]
    fn min_depth_matches_hand_counts() {
        let mut budget = Budget::unlimited();
        let family = threshold_family(8).unwrap();
        let y = BitSet::full(8);
        let g = family.set(3).clone();

        let trivial =
            ComputationInstance::new(family.clone(), y.clone(), y.clone()).unwrap();
        assert_eq!(min_decision_depth(&trivial, 5, &mut budget).unwrap(), Some(0));

        let order = ComputationInstance::new(family, g.clone(), y.clone()).unwrap();
        assert_eq!(min_decision_depth(&order, 5, &mut budget).unwrap(), Some(1));

        let eq = ComputationInstance::new(atomic_equality_family(8).unwrap(), g, y).unwrap();
        assert_eq!(min_decision_depth(&eq, 8, &mut budget).unwrap(), Some(4));
        // The cap is respected and reported as unattainable, not an error.
        assert_eq!(min_decision_depth(&eq, 3, &mut budget).unwrap(), None);

        let mut tiny = Budget::new(5);
        assert!(matches!(
            min_decision_depth(&eq, 8, &mut tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn min_depth_is_monotone_in_family_and_reference() {
        let mut budget = Budget::unlimited();
        let thresholds = threshold_family(8).unwrap();
        let equality = atomic_equality_family(8).unwrap();
        let g = thresholds.set(3).clone();
        let y = BitSet::full(8);

        let base = ComputationInstance::new(equality.clone(), g.clone(), y.clone()).unwrap();
        let d_base = min_decision_depth(&base, 8, &mut budget).unwrap().unwrap();

        // More labels can only help.
        let both = equality.union(&thresholds).unwrap();
        let richer = ComputationInstance::new(both, g.clone(), y).unwrap();
        let d_richer = min_decision_depth(&richer, 8, &mut budget).unwrap().unwrap();
        assert!(d_richer <= d_base);
        assert_eq!(d_richer, 1);

        // A smaller reference can only help.
        let y_small = BitSet::from_fn(8, |x| x < 6);
        let shrunk = ComputationInstance::new(equality, g, y_small).unwrap();
        let d_shrunk = min_decision_depth(&shrunk, 8, &mut budget).unwrap().unwrap();
        assert!(d_shrunk <= d_base);
        assert_eq!(d_shrunk, 2);
    }

    #[test]
    fn lower_bound_table_separates_the_structures() {
        let eq = lower_bound_experiment(AtomStructure::Equality, &[2, 3], None, 10_000_000)
            .unwrap();
        assert_eq!(
            eq.iter().map(|r| r.outcome).collect::<Vec<_>>(),
            vec![DepthOutcome::Depth(2), DepthOutcome::Depth(4)]
        );
        let ord = lower_bound_experiment(AtomStructure::Order, &[2, 3, 4], None, 10_000_000)
            .unwrap();
        assert!(ord.iter().all(|r| r.outcome == DepthOutcome::Depth(1)));

        let capped =
            lower_bound_experiment(AtomStructure::Equality, &[3], Some(3), 10_000_000).unwrap();
        assert_eq!(capped[0].outcome, DepthOutcome::ExceedsCap);
        let starved = lower_bound_experiment(AtomStructure::Equality, &[3], None, 10).unwrap();
        assert_eq!(starved[0].outcome, DepthOutcome::BudgetExhausted);
        assert!(lower_bound_experiment(AtomStructure::Order, &[0], None, 10).is_err());
    }

    #[test]
    fn shatter_witnesses_hold_through_depth_eight() {
        fn audit(w: &ShatterWitness, n: usize, value_at: impl Fn(usize) -> usize) {
            let domain = 1usize << n;
            assert_eq!(w.tree.depth(), n);
            assert!(w.tree.is_full());
            assert_eq!(w.family.domain_size(), domain);
            let leaves = w.tree.leaves();
            assert_eq!(leaves.len(), domain);
            for (i, &leaf) in leaves.iter().enumerate() {
                assert_eq!(w.leaf_values[i], value_at(i));
                // Recompute the region from scratch along the path.
                let mut region = BitSet::full(domain);
                for (anc, dir) in leaf.steps() {
                    let set = w.family.set(w.tree.label(anc).unwrap());
                    region = if dir == Dir::Left { region.and(set) } else { region.minus(set) };
                }
                assert_eq!(region.count(), 1);
                assert_eq!(region.first(), Some(value_at(i)));
            }
        }
        for n in 0..=8 {
            // Residue leaves come out in bit-reversed order, threshold
            // leaves in increasing order.
            let rev = |i: usize| (0..n).fold(0, |acc, b| acc | ((i >> b & 1) << (n - 1 - b)));
            audit(&residue_shatter_tree(n).unwrap(), n, rev);
            audit(&threshold_shatter_tree(n).unwrap(), n, |i| i);
        }
    }

    /// Rewriting a witness tree over the equality atoms — each label
    /// computed by a chain of equality tests peeling its members one by
    /// one — must still isolate every point, at multiplied depth.
    #[test]
    fn shatter_trees_drive_the_composition_pipeline() {
        fn equality_chain(atoms: &SetSystem, target: &BitSet) -> LabeledTree {
            let mut t = LabeledTree::leaf(None);
            let members: Vec<usize> = target.iter().collect();
            for &x in members.iter().rev() {
                let singleton = BitSet::from_indices(atoms.domain_size(), &[x]).unwrap();
                let atom = atoms.index_of(&singleton).unwrap();
                t = LabeledTree::branch(atom, &LabeledTree::leaf(None), &t);
            }
            t
        }
        for n in 0..=4usize {
            let domain = 1usize << n;
            let y = BitSet::full(domain);
            let atoms = atomic_equality_family(domain).unwrap();
            for w in [residue_shatter_tree(n).unwrap(), threshold_shatter_tree(n).unwrap()] {
                let mut computing = BTreeMap::new();
                let mut deepest = 0;
                for v in w.tree.vertices() {
                    if w.tree.is_leaf(v) {
                        continue;
                    }
                    let g = w.tree.label(v).unwrap();
                    let chain = equality_chain(&atoms, w.family.set(g));
                    deepest = deepest.max(chain.depth());
                    computing.insert(g, chain);
                }
                let star = compose(&w.tree, &w.family, &computing, &atoms, &y).unwrap();
                assert!(star.depth() <= n * deepest);
                let occupied: Vec<BitSet> = star
                    .leaf_regions(&atoms, &y)
                    .unwrap()
                    .into_iter()
                    .filter(|(_, r)| !r.is_empty())
                    .map(|(_, r)| r)
                    .collect();
                assert_eq!(occupied.len(), domain, "pipeline lost realized leaves at n={n}");
                assert!(occupied.iter().all(|r| r.count() == 1));
            }
        }
    }

    /// Instances assemble from the incidence text format plus target and
    /// reference bit rows.
    #[test]
    fn instances_assemble_from_text_rows() {
        let family = SetSystem::parse_incidence("4 3\n1100\n1010\n0110\n").unwrap();
        let target = BitSet::parse_row("1100").unwrap();
        let reference = BitSet::parse_row("1110").unwrap();
        let inst = ComputationInstance::new(family.clone(), target, reference).unwrap();
        let split = LabeledTree::branch(0, &LabeledTree::leaf(None), &LabeledTree::leaf(None));
        assert_eq!(computes(&split, &inst).unwrap(), Some(vec![v("0")]));
        // Row width must match the family's domain.
        let short = BitSet::parse_row("110").unwrap();
        assert!(ComputationInstance::new(family, short.clone(), short).is_err());
    }
}
