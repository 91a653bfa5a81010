//! Ladders: sequences x₁,F₁,…,x_k,F_k with x_i ∈ F_j exactly when i < j.
//!
//! Long ladders are the order-theoretic face of high thicket dimension:
//! a strict 2^k-ladder assembles into a certified full tree of depth k
//! ([`ladder_to_tree`]), and conversely dimension ≥ 2^k−1 guarantees a
//! k-ladder ([`thicket_to_ladder_check`] probes that direction
//! empirically). Elements and sets may repeat across positions — only the
//! membership pattern matters — but strictness forces both sequences to be
//! duplicate-free.

use crate::bitset::BitSet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::setsystem::SetSystem;
use crate::tree::{LabeledTree, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ladder {
    /// Ground elements x₁..x_k (0-based indices into the domain).
    pub elements: Vec<usize>,
    /// Family indices of F₁..F_k.
    pub sets: Vec<usize>,
    /// Whether the ladder additionally promises x_i ∉ F_i.
    pub strict: bool,
}

impl Ladder {
    pub fn new(elements: Vec<usize>, sets: Vec<usize>, strict: bool) -> Result<Ladder> {
        if elements.len() != sets.len() {
            return Err(Error::Precondition(format!(
                "ladder needs as many elements as sets, got {} and {}",
                elements.len(),
                sets.len()
            )));
        }
        Ok(Ladder { elements, sets, strict })
    }

    pub fn empty(strict: bool) -> Ladder {
        Ladder { elements: Vec::new(), sets: Vec::new(), strict }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Verify the membership pattern (and strictness, when promised)
    /// against a concrete system. Positions in errors are 1-based.
    pub fn check(&self, sys: &SetSystem) -> Result<()> {
        if self.elements.len() != self.sets.len() {
            return Err(Error::Precondition("ladder sequences have unequal length".into()));
        }
        for (i, &x) in self.elements.iter().enumerate() {
            if x >= sys.domain_size() {
                return Err(Error::ElementOutOfRange {
                    set_index: i,
                    element: x,
                    domain_size: sys.domain_size(),
                });
            }
        }
        for &f in &self.sets {
            if f >= sys.len() {
                return Err(Error::Precondition(format!(
                    "ladder names set {f} but the family has {} sets",
                    sys.len()
                )));
            }
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j && sys.set(self.sets[j]).contains(self.elements[i]) != (i < j) {
                    return Err(Error::LadderPattern { i: i + 1, j: j + 1 });
                }
            }
            if self.strict && sys.set(self.sets[i]).contains(self.elements[i]) {
                return Err(Error::LadderNotStrict { i: i + 1 });
            }
        }
        Ok(())
    }
}

/// Search for a longest ladder of length ≤ `k_max`, by depth-first
/// extension. Deterministic: candidates are tried in ascending index
/// order. Exhausting the budget yields [`Error::LadderBudget`] carrying
/// the best ladder found before the cutoff.
pub fn max_ladder(
    sys: &SetSystem,
    k_max: usize,
    strict: bool,
    budget: &mut Budget,
) -> Result<Ladder> {
    let mut best = Ladder::empty(strict);
    if k_max == 0 || sys.is_empty() || sys.domain_size() == 0 {
        return Ok(best);
    }
    let profiles: Vec<BitSet> = (0..sys.domain_size()).map(|x| sys.profile(x)).collect();
    let mut elements = Vec::new();
    let mut sets = Vec::new();
    let result = extend(
        sys,
        &profiles,
        k_max,
        strict,
        &BitSet::full(sys.domain_size()),
        &BitSet::full(sys.len()),
        &mut elements,
        &mut sets,
        &mut best,
        budget,
    );
    match result {
        Ok(_) => Ok(best),
        Err(Error::BudgetExceeded { .. }) => Err(Error::LadderBudget { best }),
        Err(e) => Err(e),
    }
}

/// One extension step. A new pair (x, F) is admissible when x avoids every
/// chosen set (`avail`) and F contains every chosen element (`supersets`);
/// under strictness additionally x ∉ F. These are exactly the pattern
/// constraints the new position must satisfy against the old ones.
#[allow(clippy::too_many_arguments)]
fn extend(
    sys: &SetSystem,
    profiles: &[BitSet],
    k_max: usize,
    strict: bool,
    avail: &BitSet,
    supersets: &BitSet,
    elements: &mut Vec<usize>,
    sets: &mut Vec<usize>,
    best: &mut Ladder,
    budget: &mut Budget,
) -> Result<bool> {
    if elements.len() > best.len() {
        best.elements = elements.clone();
        best.sets = sets.clone();
    }
    if elements.len() == k_max {
        return Ok(true);
    }
    for x in avail.iter() {
        for f in supersets.iter() {
            if strict && sys.set(f).contains(x) {
                continue;
            }
            budget.tick(1)?;
            let next_avail = avail.minus(sys.set(f));
            let next_supersets = supersets.and(&profiles[x]);
            elements.push(x);
            sets.push(f);
            let done = extend(
                sys,
                profiles,
                k_max,
                strict,
                &next_avail,
                &next_supersets,
                elements,
                sets,
                best,
                budget,
            )?;
            elements.pop();
            sets.pop();
            if done {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Turn a ladder of even length 2k into a strict k-ladder by keeping the
/// even-position elements and odd-position sets: (x₂,F₁,x₄,F₃,…).
pub fn strictify(ladder: &Ladder) -> Result<Ladder> {
    let len = ladder.len();
    if !len.is_multiple_of(2) {
        return Err(Error::OddLadder { len });
    }
    let k = len / 2;
    Ok(Ladder {
        elements: (0..k).map(|m| ladder.elements[2 * m + 1]).collect(),
        sets: (0..k).map(|m| ladder.sets[2 * m]).collect(),
        strict: true,
    })
}

/// A balanced tree assembled from a strict ladder, together with the
/// verified per-leaf witnesses.
#[derive(Debug, Clone)]
pub struct LadderTree {
    pub tree: LabeledTree,
    /// Leaves in left-to-right order, each with the family index of the
    /// set realizing it.
    pub witnesses: Vec<(Vertex, usize)>,
}

/// Build the balanced depth-k tree certified by a strict 2^k-ladder.
///
/// The leaf at left-to-right position p (1-based) is realized by
/// F_{2^k+1−p}; the vertex splitting a block of set positions is labeled
/// by the element at the block's midpoint, so that the uniform rule
/// x_m ∈ F_s ⟺ m < s (which strictness provides) routes every set to its
/// own leaf. The certificate is re-verified leaf by leaf before returning.
pub fn ladder_to_tree(sys: &SetSystem, ladder: &Ladder) -> Result<LadderTree> {
    if !ladder.strict {
        return Err(Error::Precondition(
            "tree assembly requires a strict ladder".into(),
        ));
    }
    ladder.check(sys)?;
    let len = ladder.len();
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { len });
    }
    let tree = build_block(ladder, 1, len);
    let witnesses: Vec<(Vertex, usize)> = tree
        .leaves()
        .into_iter()
        .enumerate()
        .map(|(p0, leaf)| (leaf, ladder.sets[len - 1 - p0]))
        .collect();
    for &(leaf, set_index) in &witnesses {
        if !tree.is_realized(leaf, sys.set(set_index))? {
            return Err(Error::Inconsistency(format!(
                "ladder tree leaf {leaf} is not realized by its assigned set"
            )));
        }
    }
    Ok(LadderTree { tree, witnesses })
}

/// Subtree for ladder set positions a..=b (1-based, b−a+1 a power of two).
/// Sets at positions above the midpoint go left, the rest go right.
fn build_block(ladder: &Ladder, a: usize, b: usize) -> LabeledTree {
    if a == b {
        return LabeledTree::leaf(None);
    }
    let mid = a + (b - a).div_ceil(2) - 1;
    LabeledTree::branch(
        ladder.elements[mid - 1],
        &build_block(ladder, mid + 1, b),
        &build_block(ladder, a, mid),
    )
}

/// Empirical check of the guarantee "dimension ≥ 2^k − 1 implies a
/// k-ladder": run the exhaustive search and treat absence as an internal
/// inconsistency. Errors if the dimension precondition does not hold.
pub fn thicket_to_ladder_check(sys: &SetSystem, k: usize, budget: &mut Budget) -> Result<Ladder> {
    let dim = crate::complexity::thicket_dim(sys);
    let need = (1i64 << k) - 1;
    if dim < need {
        return Err(Error::Precondition(format!(
            "dimension {dim} is below the required 2^{k}−1 = {need}"
        )));
    }
    let found = max_ladder(sys, k, false, budget)?;
    if found.len() == k {
        Ok(found)
    } else {
        Err(Error::Inconsistency(format!(
            "dimension {dim} guarantees a {k}-ladder, but the search topped out at {}",
            found.len()
        )))
    }
}

/// Transport a ladder into the dual system: dual elements are the original
/// sets in reverse order, dual sets are the (profiles of the) original
/// elements in reverse order. Validates the result before returning.
pub fn dual_ladder(sys: &SetSystem, ladder: &Ladder) -> Result<Ladder> {
    ladder.check(sys)?;
    let dual = sys.dualize();
    let k = ladder.len();
    let elements: Vec<usize> = (0..k).map(|i| ladder.sets[k - 1 - i]).collect();
    let sets: Vec<usize> = (0..k)
        .map(|j| {
            let x = ladder.elements[k - 1 - j];
            dual.index_of(&sys.profile(x))
                .expect("every element profile appears in the dual family")
        })
        .collect();
    let out = Ladder { elements, sets, strict: ladder.strict };
    out.check(&dual)?;
    Ok(out)
}
