//! Labeled binary trees.
//!
//! A vertex is identified by its path from the root (`Left`/`Right` steps),
//! so a tree is just a prefix-closed set of paths plus a label map. Labels
//! are plain indices; what they index (a ground element, a query set, a
//! graph vertex) is up to the consumer. Every vertex with a child must be
//! labeled, childless vertices may be.
//!
//! A set `F` *realizes* a childless vertex when, along the whole path to
//! it, the tree went left exactly at the ancestors whose label lies in `F`.
//! Realization is deterministic — a set realizes at most one leaf — which
//! is what [`LabeledTree::trace`] exploits.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::setsystem::SetSystem;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Left,
    Right,
}

impl Dir {
    fn bit(self) -> u64 {
        match self {
            Dir::Left => 0,
            Dir::Right => 1,
        }
    }
}

/// A tree vertex, addressed by its root path (at most 63 steps).
///
/// Step `i` of the path is stored in bit `i`, `Right = 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    len: u8,
    bits: u64,
}

impl Vertex {
    pub const ROOT: Vertex = Vertex { len: 0, bits: 0 };

    pub fn child(self, dir: Dir) -> Vertex {
        assert!(self.len < 63, "tree deeper than 63 levels");
        Vertex {
            len: self.len + 1,
            bits: self.bits | dir.bit() << self.len,
        }
    }

    pub fn parent(self) -> Option<(Vertex, Dir)> {
        if self.len == 0 {
            return None;
        }
        let last = self.len - 1;
        let dir = if self.bits >> last & 1 == 1 { Dir::Right } else { Dir::Left };
        Some((
            Vertex {
                len: last,
                bits: self.bits & !(1 << last),
            },
            dir,
        ))
    }

    pub fn depth(self) -> usize {
        self.len as usize
    }

    pub fn is_root(self) -> bool {
        self.len == 0
    }

    /// The path from the root: each strict ancestor paired with the step
    /// taken out of it, in root-to-leaf order.
    pub fn steps(self) -> Vec<(Vertex, Dir)> {
        let mut out = Vec::with_capacity(self.depth());
        let mut v = Vertex::ROOT;
        for i in 0..self.len {
            let dir = if self.bits >> i & 1 == 1 { Dir::Right } else { Dir::Left };
            out.push((v, dir));
            v = v.child(dir);
        }
        out
    }

    /// Parse a path string: `ε` (or the empty string) for the root,
    /// otherwise characters over `{0,1}` with `0 = Left`.
    pub fn parse(text: &str) -> Option<Vertex> {
        if text == "ε" {
            return Some(Vertex::ROOT);
        }
        let mut v = Vertex::ROOT;
        for c in text.chars() {
            v = match c {
                '0' => v.child(Dir::Left),
                '1' => v.child(Dir::Right),
                _ => return None,
            };
            if v.len == 63 {
                return None;
            }
        }
        Some(v)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return f.write_str("ε");
        }
        for i in 0..self.len {
            f.write_char(if self.bits >> i & 1 == 1 { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTree {
    vertices: BTreeSet<Vertex>,
    labels: BTreeMap<Vertex, usize>,
}

impl LabeledTree {
    /// The one-vertex tree. The root is childless, so the label is optional.
    pub fn leaf(label: Option<usize>) -> LabeledTree {
        let mut vertices = BTreeSet::new();
        vertices.insert(Vertex::ROOT);
        let mut labels = BTreeMap::new();
        if let Some(l) = label {
            labels.insert(Vertex::ROOT, l);
        }
        LabeledTree { vertices, labels }
    }

    /// Graft two subtrees under a fresh labeled root.
    pub fn branch(label: usize, left: &LabeledTree, right: &LabeledTree) -> LabeledTree {
        let mut t = LabeledTree::leaf(Some(label));
        t.graft(Dir::Left, left);
        t.graft(Dir::Right, right);
        t
    }

    /// Graft one subtree under a fresh labeled root, leaving the other side
    /// absent.
    pub fn branch_single(label: usize, dir: Dir, child: &LabeledTree) -> LabeledTree {
        let mut t = LabeledTree::leaf(Some(label));
        t.graft(dir, child);
        t
    }

    fn graft(&mut self, dir: Dir, sub: &LabeledTree) {
        for v in &sub.vertices {
            self.vertices.insert(shift(*v, dir));
        }
        for (v, l) in &sub.labels {
            self.labels.insert(shift(*v, dir), *l);
        }
    }

    /// Build from explicit parts, checking that the vertex set is nonempty
    /// and prefix-closed, labels sit on existing vertices, and every vertex
    /// with a child is labeled.
    pub fn from_parts(
        vertices: BTreeSet<Vertex>,
        labels: BTreeMap<Vertex, usize>,
    ) -> Result<LabeledTree> {
        if !vertices.contains(&Vertex::ROOT) {
            return Err(Error::Precondition("tree must contain the root".into()));
        }
        for v in &vertices {
            if let Some((p, _)) = v.parent() {
                if !vertices.contains(&p) {
                    return Err(Error::Precondition(format!(
                        "vertex {v} present but its parent {p} is not"
                    )));
                }
            }
        }
        for v in labels.keys() {
            if !vertices.contains(v) {
                return Err(Error::NoSuchVertex { vertex: v.to_string() });
            }
        }
        let tree = LabeledTree { vertices, labels };
        for v in &tree.vertices {
            if !tree.is_leaf(*v) && !tree.labels.contains_key(v) {
                return Err(Error::MissingLabel { vertex: v.to_string() });
            }
        }
        Ok(tree)
    }

    /// The complete tree of the given depth, internal labels supplied per
    /// vertex.
    pub fn complete(depth: usize, label_of: impl Fn(Vertex) -> usize) -> LabeledTree {
        assert!(depth <= 25, "complete tree of depth {depth} is unreasonable");
        let mut vertices = BTreeSet::new();
        let mut labels = BTreeMap::new();
        for len in 0..=depth {
            for bits in 0..1u64 << len {
                let v = Vertex { len: len as u8, bits };
                vertices.insert(v);
                if len < depth {
                    labels.insert(v, label_of(v));
                }
            }
        }
        LabeledTree { vertices, labels }
    }

    /// The complete tree of the given depth with labels looked up in a map.
    /// Every vertex that will have children must be present in the map;
    /// entries for leaves are optional and kept when present.
    pub fn build_balanced(depth: usize, labels: &BTreeMap<Vertex, usize>) -> Result<LabeledTree> {
        assert!(depth <= 25, "complete tree of depth {depth} is unreasonable");
        let mut vertices = BTreeSet::new();
        let mut chosen = BTreeMap::new();
        for len in 0..=depth {
            for bits in 0..1u64 << len {
                let v = Vertex { len: len as u8, bits };
                vertices.insert(v);
                match labels.get(&v) {
                    Some(&l) => {
                        chosen.insert(v, l);
                    }
                    None if len < depth => {
                        return Err(Error::MissingLabel { vertex: v.to_string() });
                    }
                    None => {}
                }
            }
        }
        Ok(LabeledTree { vertices, labels: chosen })
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    /// All vertices, in (depth, path-bits) order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices.iter().copied()
    }

    pub fn label(&self, v: Vertex) -> Option<usize> {
        self.labels.get(&v).copied()
    }

    pub fn child(&self, v: Vertex, dir: Dir) -> Option<Vertex> {
        let c = v.child(dir);
        self.vertices.contains(&c).then_some(c)
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.child(v, Dir::Left).is_none() && self.child(v, Dir::Right).is_none()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Childless vertices in left-to-right order.
    pub fn leaves(&self) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut stack = vec![Vertex::ROOT];
        while let Some(v) = stack.pop() {
            match (self.child(v, Dir::Left), self.child(v, Dir::Right)) {
                (None, None) => out.push(v),
                (l, r) => {
                    // Right is pushed first so the left child pops first.
                    if let Some(r) = r {
                        stack.push(r);
                    }
                    if let Some(l) = l {
                        stack.push(l);
                    }
                }
            }
        }
        out
    }

    /// Depth of the deepest vertex.
    pub fn depth(&self) -> usize {
        self.vertices.iter().map(|v| v.depth()).max().unwrap_or(0)
    }

    /// Does every vertex have zero or two children?
    pub fn is_full(&self) -> bool {
        self.vertices.iter().all(|&v| {
            let l = self.child(v, Dir::Left).is_some();
            let r = self.child(v, Dir::Right).is_some();
            l == r
        })
    }

    /// Follow a set down from the root: go left at a vertex exactly when
    /// the vertex's label lies in `set`. Returns the childless vertex
    /// reached — the unique leaf realized by `set` — or `None` if a
    /// required child is absent.
    pub fn trace(&self, set: &BitSet) -> Option<Vertex> {
        let mut v = Vertex::ROOT;
        loop {
            if self.is_leaf(v) {
                return Some(v);
            }
            let x = self.labels[&v];
            let dir = if set.contains(x) { Dir::Left } else { Dir::Right };
            v = self.child(v, dir)?;
        }
    }

    /// Does `set` realize the childless vertex `leaf`?
    pub fn is_realized(&self, leaf: Vertex, set: &BitSet) -> Result<bool> {
        if !self.vertices.contains(&leaf) {
            return Err(Error::NoSuchVertex { vertex: leaf.to_string() });
        }
        if !self.is_leaf(leaf) {
            return Err(Error::NotALeaf { vertex: leaf.to_string() });
        }
        for (anc, dir) in leaf.steps() {
            let x = self.labels[&anc];
            let need_in = dir == Dir::Left;
            if set.contains(x) != need_in {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The lowest-index family set realizing `leaf`, if any. Scanning in
    /// index order keeps the certificate deterministic.
    pub fn witness(&self, leaf: Vertex, sys: &SetSystem) -> Result<Option<usize>> {
        if !self.vertices.contains(&leaf) {
            return Err(Error::NoSuchVertex { vertex: leaf.to_string() });
        }
        if !self.is_leaf(leaf) {
            return Err(Error::NotALeaf { vertex: leaf.to_string() });
        }
        for (i, s) in sys.family().iter().enumerate() {
            if self.is_realized(leaf, s)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// The leaves realized by at least one set of the family. Since each
    /// set realizes at most one leaf, this is the image of [`trace`].
    ///
    /// [`trace`]: LabeledTree::trace
    pub fn realized_leaves(&self, sys: &SetSystem) -> BTreeSet<Vertex> {
        sys.family().iter().filter_map(|s| self.trace(s)).collect()
    }

    pub fn realized_leaf_count(&self, sys: &SetSystem) -> usize {
        self.realized_leaves(sys).len()
    }

    /// Does every set of the family reach a leaf of its own?
    pub fn is_separating(&self, sys: &SetSystem) -> bool {
        let mut seen = BTreeSet::new();
        for s in sys.family() {
            match self.trace(s) {
                Some(leaf) => {
                    if !seen.insert(leaf) {
                        return false;
                    }
                }
                None => return false,
            }
        }
        true
    }

    /// Regions cut out by a *set-labeled* tree, one per childless vertex in
    /// left-to-right order. The root starts from `reference`; a vertex
    /// labeled `i` sends the part inside `sys.set(i)` left and the rest
    /// right. On a complete tree the regions partition `reference`.
    pub fn leaf_regions(
        &self,
        sys: &SetSystem,
        reference: &BitSet,
    ) -> Result<Vec<(Vertex, BitSet)>> {
        if reference.universe() != sys.domain_size() {
            return Err(Error::DomainMismatch {
                left: reference.universe(),
                right: sys.domain_size(),
            });
        }
        let mut out = Vec::new();
        let mut stack = vec![(Vertex::ROOT, reference.clone())];
        while let Some((v, region)) = stack.pop() {
            if self.is_leaf(v) {
                out.push((v, region));
                continue;
            }
            let label = self.labels[&v];
            let set = sys.family().get(label).ok_or(Error::InvalidLabel {
                vertex: v.to_string(),
                label,
                family_size: sys.len(),
            })?;
            // Right first so the left child pops first.
            if let Some(r) = self.child(v, Dir::Right) {
                stack.push((r, region.minus(set)));
            }
            if let Some(l) = self.child(v, Dir::Left) {
                stack.push((l, region.and(set)));
            }
        }
        Ok(out)
    }

    /// Render as GraphViz DOT. `name` supplies the display text per vertex.
    pub fn to_dot(&self, name: &dyn Fn(Vertex) -> String) -> String {
        let mut out = String::from("digraph tree {\n  node [shape=circle];\n");
        let mut stack = vec![Vertex::ROOT];
        while let Some(v) = stack.pop() {
            let _ = writeln!(out, "  \"{v}\" [label=\"{}\"];", name(v));
            for dir in [Dir::Right, Dir::Left] {
                if let Some(c) = self.child(v, dir) {
                    let tag = if dir == Dir::Left { "∈" } else { "∉" };
                    let _ = writeln!(out, "  \"{v}\" -> \"{c}\" [label=\"{tag}\"];");
                    stack.push(c);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn shift(v: Vertex, dir: Dir) -> Vertex {
    assert!(v.len < 63, "tree deeper than 63 levels");
    Vertex {
        len: v.len + 1,
        bits: dir.bit() | v.bits << 1,
    }
}
