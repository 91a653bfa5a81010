//! Exact complexity measures of a set system: thicket dimension, the
//! shatter function ρ, the minimum-depth function σ, VC dimension, and the
//! binomial-sum bound φ that ties them together.
//!
//! Every fast computation here works by restriction recursion, memoized on
//! the bitmask of the surviving subfamily. Each has an independent
//! brute-force twin (`*_bruteforce`) that enumerates tree labelings
//! outright; the two are compared exhaustively in the test suite and must
//! always agree.

use crate::bitset::BitSet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::setsystem::SetSystem;
use num_bigint::BigUint;
use std::collections::HashMap;

/// φ(n,k) = C(n,0) + C(n,1) + ⋯ + C(n,k), exactly. `k < 0` gives 0.
pub fn phi(n: usize, k: i64) -> BigUint {
    if k < 0 {
        return BigUint::from(0u32);
    }
    let mut sum = BigUint::from(0u32);
    let mut binom = BigUint::from(1u32);
    for i in 0..=(k as usize).min(n) {
        if i > 0 {
            // C(n,i) = C(n,i−1)·(n−i+1)/i, exact at every step.
            binom = binom * (n - i + 1) / i;
        }
        sum += &binom;
    }
    sum
}

/// The distinct membership profiles of the ground elements, as masks over
/// family indices. Twin elements collapse; splitting behaviour only
/// depends on the profile.
fn distinct_profiles(sys: &SetSystem) -> Vec<BitSet> {
    let mut out: Vec<BitSet> = Vec::new();
    for x in 0..sys.domain_size() {
        let p = sys.profile(x);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Thicket dimension: the depth of the deepest full balanced labeled tree,
/// −1 for the empty family.
///
/// Computed by the splitting recursion: the dimension exceeds `d` exactly
/// when some element splits the family into two parts of dimension ≥ `d`.
pub fn thicket_dim(sys: &SetSystem) -> i64 {
    let profiles = distinct_profiles(sys);
    let mut memo = HashMap::new();
    dim_rec(&BitSet::full(sys.len()), &profiles, &mut memo)
}

fn dim_rec(mask: &BitSet, profiles: &[BitSet], memo: &mut HashMap<BitSet, i64>) -> i64 {
    if mask.is_empty() {
        return -1;
    }
    if mask.count() == 1 {
        return 0;
    }
    if let Some(&d) = memo.get(mask) {
        return d;
    }
    let mut best = 0;
    for p in profiles {
        let inside = mask.and(p);
        // Only a proper split can contribute more than the depth-0 tree;
        // recursing on a non-split would not terminate.
        if inside.is_empty() || inside == *mask {
            continue;
        }
        let outside = mask.minus(p);
        let d = 1 + dim_rec(&inside, profiles, memo).min(dim_rec(&outside, profiles, memo));
        best = best.max(d);
    }
    memo.insert(mask.clone(), best);
    best
}

/// ρ(n): the maximum number of realized leaves over all balanced labeled
/// trees of depth `n`.
pub fn rho(sys: &SetSystem, n: usize) -> usize {
    rho_table(sys, n)[n]
}

/// ρ(0), ρ(1), …, ρ(n_max) in one pass over a shared memo table.
pub fn rho_table(sys: &SetSystem, n_max: usize) -> Vec<usize> {
    if sys.domain_size() == 0 {
        // No elements means no labels: the single-leaf tree is the only
        // tree, so only ρ(0) can be nonzero.
        let mut t = vec![0; n_max + 1];
        t[0] = usize::from(!sys.is_empty());
        return t;
    }
    let profiles = distinct_profiles(sys);
    let mut memo = HashMap::new();
    (0..=n_max)
        .map(|n| rho_rec(&BitSet::full(sys.len()), n, &profiles, &mut memo))
        .collect()
}

fn rho_rec(
    mask: &BitSet,
    n: usize,
    profiles: &[BitSet],
    memo: &mut HashMap<(BitSet, usize), usize>,
) -> usize {
    let m = mask.count();
    if m == 0 {
        return 0;
    }
    if n == 0 {
        return 1;
    }
    if n >= m - 1 {
        // Any family of m distinct sets has a separating tree of depth
        // ≤ m−1 (split anywhere, recurse), and padding a realized leaf
        // deeper keeps it realized; m is also an upper bound, since two
        // leaves can never share a witness.
        return m;
    }
    if let Some(&v) = memo.get(&(mask.clone(), n)) {
        return v;
    }
    let mut best = 0;
    for p in profiles {
        // Non-splitting profiles are kept: they model a level whose label
        // leaves the family on one side, which is the best move when no
        // split helps.
        let inside = mask.and(p);
        let outside = mask.minus(p);
        let v = rho_rec(&inside, n - 1, profiles, memo) + rho_rec(&outside, n - 1, profiles, memo);
        best = best.max(v);
    }
    memo.insert((mask.clone(), n), best);
    best
}

fn satisfies(set: &BitSet, constraints: &[(usize, bool)]) -> bool {
    constraints.iter().all(|&(x, inside)| set.contains(x) == inside)
}

fn exists_witness(sys: &SetSystem, constraints: &[(usize, bool)]) -> bool {
    sys.family().iter().any(|s| satisfies(s, constraints))
}

/// Oracle for [`rho`]: the maximum of realized-leaf counts over every
/// labeling of the balanced depth-`n` tree, by direct enumeration.
/// Subtree labelings are independent once the path to the subtree is
/// fixed, so the enumeration recurses on (element, side) constraint
/// prefixes instead of materializing label maps.
pub fn rho_bruteforce(sys: &SetSystem, n: usize, budget: &mut Budget) -> Result<usize> {
    let mut constraints = Vec::with_capacity(n);
    rho_bf(sys, n, &mut constraints, budget)
}

fn rho_bf(
    sys: &SetSystem,
    n: usize,
    constraints: &mut Vec<(usize, bool)>,
    budget: &mut Budget,
) -> Result<usize> {
    budget.tick(1)?;
    if !exists_witness(sys, constraints) {
        return Ok(0);
    }
    if n == 0 {
        return Ok(1);
    }
    let mut best = 0;
    for x in 0..sys.domain_size() {
        constraints.push((x, true));
        let a = rho_bf(sys, n - 1, constraints, budget)?;
        constraints.pop();
        constraints.push((x, false));
        let b = rho_bf(sys, n - 1, constraints, budget)?;
        constraints.pop();
        best = best.max(a + b);
    }
    Ok(best)
}

/// Oracle for [`thicket_dim`]: the deepest `d ≤ max_depth` admitting a
/// full balanced labeled tree, by exhaustive labeling search. Equals
/// `min(thicket_dim, max_depth)` as an `i64`.
pub fn thicket_dim_bruteforce(
    sys: &SetSystem,
    max_depth: usize,
    budget: &mut Budget,
) -> Result<i64> {
    let mut best = -1;
    let mut constraints = Vec::new();
    for d in 0..=max_depth {
        // Truncating a full tree keeps it full, so the first failure is
        // conclusive.
        if full_exists(sys, d, &mut constraints, budget)? {
            best = d as i64;
        } else {
            break;
        }
    }
    Ok(best)
}

fn full_exists(
    sys: &SetSystem,
    d: usize,
    constraints: &mut Vec<(usize, bool)>,
    budget: &mut Budget,
) -> Result<bool> {
    budget.tick(1)?;
    if !exists_witness(sys, constraints) {
        return Ok(false);
    }
    if d == 0 {
        return Ok(true);
    }
    for x in 0..sys.domain_size() {
        constraints.push((x, true));
        let left = full_exists(sys, d - 1, constraints, budget)?;
        constraints.pop();
        if !left {
            continue;
        }
        constraints.push((x, false));
        let right = full_exists(sys, d - 1, constraints, budget)?;
        constraints.pop();
        if right {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The largest vertex count of a full tree of depth ≤ `d` (full meaning
/// every vertex has zero or two children and every leaf is realized).
///
/// Grows to a cap of at most `2·|family| − 1` by depth `|family| − 1`,
/// because leaves of a full tree carry pairwise-distinct witnesses.
pub fn max_full_tree_size(sys: &SetSystem, d: usize) -> Result<usize> {
    if sys.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let profiles = distinct_profiles(sys);
    let mut memo = HashMap::new();
    Ok(msz_rec(&BitSet::full(sys.len()), d, &profiles, &mut memo))
}

fn msz_rec(
    mask: &BitSet,
    d: usize,
    profiles: &[BitSet],
    memo: &mut HashMap<(BitSet, usize), usize>,
) -> usize {
    if d == 0 || mask.count() == 1 {
        return 1;
    }
    if let Some(&v) = memo.get(&(mask.clone(), d)) {
        return v;
    }
    let mut best = 1;
    for p in profiles {
        let inside = mask.and(p);
        if inside.is_empty() || inside == *mask {
            continue; // both subtrees of a full tree need a witness
        }
        let outside = mask.minus(p);
        let v = 1 + msz_rec(&inside, d - 1, profiles, memo) + msz_rec(&outside, d - 1, profiles, memo);
        best = best.max(v);
    }
    memo.insert((mask.clone(), d), best);
    best
}

/// σ(n): the minimum depth of a full labeled tree with at least `n`
/// vertices, or `None` when no full tree ever reaches `n` vertices.
pub fn sigma(sys: &SetSystem, n: usize) -> Result<Option<usize>> {
    if sys.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if n == 0 {
        return Err(Error::Precondition("sigma requires a size of at least 1".into()));
    }
    let cap = sys.len() - 1;
    for d in 0..=cap {
        if max_full_tree_size(sys, d)? >= n {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Classical VC dimension: the largest size of a domain subset on which
/// the family induces all sign patterns; −1 for the empty family.
pub fn vc_dim(sys: &SetSystem) -> i64 {
    if sys.is_empty() {
        return -1;
    }
    let cap = sys.len().ilog2() as usize; // 2^d patterns need 2^d sets
    let mut best = 0;
    for d in 1..=cap.min(sys.domain_size()) {
        if exists_shattered(sys, d) {
            best = d as i64;
        } else {
            break; // subsets of shattered sets are shattered
        }
    }
    best
}

fn exists_shattered(sys: &SetSystem, d: usize) -> bool {
    let mut chosen = Vec::with_capacity(d);
    shatter_search(sys, 0, d, &mut chosen)
}

fn shatter_search(sys: &SetSystem, from: usize, d: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == d {
        let mut patterns = vec![false; 1 << d];
        let mut found = 0usize;
        for s in sys.family() {
            let mut pat = 0usize;
            for (i, &x) in chosen.iter().enumerate() {
                pat |= usize::from(s.contains(x)) << i;
            }
            if !patterns[pat] {
                patterns[pat] = true;
                found += 1;
            }
        }
        return found == 1 << d;
    }
    for x in from..sys.domain_size() {
        chosen.push(x);
        if shatter_search(sys, x + 1, d, chosen) {
            chosen.pop();
            return true;
        }
        chosen.pop();
    }
    false
}

/// The certified ρ/φ table for one system.
#[derive(Debug, Clone)]
pub struct ShatterTable {
    pub dim: i64,
    /// ρ(0), …, ρ(n_max).
    pub rho: Vec<usize>,
    /// φ(0,dim), …, φ(n_max,dim).
    pub phi_bound: Vec<BigUint>,
}

/// Compute dim together with the ρ table up to `n_max` and certify both
/// bound directions: ρ(n) = 2ⁿ for n ≤ dim, and ρ(n) ≤ min(φ(n,dim), 2ⁿ,
/// |family|) everywhere. A violation would mean a bug in this crate and
/// surfaces as an internal-consistency error.
pub fn sauer_shelah_report(sys: &SetSystem, n_max: usize) -> Result<ShatterTable> {
    if n_max > 60 {
        return Err(Error::Precondition(format!(
            "shatter table range {n_max} exceeds the supported cap of 60"
        )));
    }
    let dim = thicket_dim(sys);
    let rho = rho_table(sys, n_max);
    let phi_bound: Vec<BigUint> = (0..=n_max).map(|n| phi(n, dim)).collect();
    for n in 0..=n_max {
        let r = BigUint::from(rho[n]);
        if (n as i64) <= dim && rho[n] != 1 << n {
            return Err(Error::Inconsistency(format!(
                "rho({n}) = {} but 2^{n} leaves should be realizable below dim {dim}",
                rho[n]
            )));
        }
        if r > phi_bound[n] || r > BigUint::from(1u32) << n || rho[n] > sys.len() {
            return Err(Error::Inconsistency(format!(
                "rho({n}) = {} exceeds a certified bound (dim {dim})",
                rho[n]
            )));
        }
    }
    Ok(ShatterTable { dim, rho, phi_bound })
}

/// Thicket dimension of the dual system.
pub fn dual_dim(sys: &SetSystem) -> i64 {
    thicket_dim(&sys.dualize())
}

/// ρ of the dual system.
pub fn dual_rho(sys: &SetSystem, n: usize) -> usize {
    rho(&sys.dualize(), n)
}

/// The a-priori bound on the dual dimension in terms of the primal one:
/// 2^(2^(dim+2)) − 2.
pub fn duality_bound(dim: i64) -> BigUint {
    assert!((-1..=28).contains(&dim), "duality bound out of supported range");
    let exp = 1usize << (dim + 2);
    (BigUint::from(1u32) << exp) - 2u32
}

/// One instance probed for the density estimate.
#[derive(Debug, Clone)]
pub struct ProbePoint {
    pub param: usize,
    /// Probe depth, matched to the instance's domain size.
    pub n: usize,
    pub rho: usize,
    /// The exact density of the finite instance itself: −1 if the family
    /// is empty, 0 otherwise. Finite systems admit no other value.
    pub exact_density: i64,
}

/// A log-log slope fit of ρ across a generator sequence. The slope is an
/// estimate for the limiting family, never an exact density.
#[derive(Debug, Clone)]
pub struct DensityProbe {
    pub generator: String,
    pub points: Vec<ProbePoint>,
    pub slope: Option<f64>,
    pub residual: Option<f64>,
}

/// Instantiate a named parametric family. Used by the density probe and
/// the CLI.
pub fn generate(generator: &str, param: usize) -> Result<SetSystem> {
    match generator {
        "empty" => SetSystem::build(param, vec![]),
        "singleton" => SetSystem::build(param, vec![BitSet::new(param)]),
        "powerset" => {
            if param > 12 {
                return Err(Error::Precondition(format!(
                    "powerset generator capped at 12 elements, got {param}"
                )));
            }
            Ok(SetSystem::powerset(param))
        }
        "threshold" => crate::decision::threshold_family(param),
        "residue" => crate::decision::residue_family(param),
        "half_graph" => {
            if param == 0 {
                return Err(Error::Precondition("half_graph generator needs k ≥ 1".into()));
            }
            Ok(crate::graph::neighborhood_system(&crate::graph::Graph::half_graph(param)))
        }
        other => Err(Error::UnknownGenerator(other.to_string())),
    }
}

/// Probe a generator sequence: exact per-instance densities plus a
/// least-squares slope of ln ρ against ln n at n = domain size.
pub fn density_probe(generator: &str, params: &[usize]) -> Result<DensityProbe> {
    let mut points = Vec::with_capacity(params.len());
    for &param in params {
        let sys = generate(generator, param)?;
        let n = sys.domain_size();
        let r = rho(&sys, n);
        points.push(ProbePoint {
            param,
            n,
            rho: r,
            exact_density: if sys.is_empty() { -1 } else { 0 },
        });
    }
    let samples: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.rho > 0 && p.n > 0)
        .map(|p| ((p.n as f64).ln(), (p.rho as f64).ln()))
        .collect();
    let fit = fit_line(&samples);
    Ok(DensityProbe {
        generator: generator.to_string(),
        points,
        slope: fit.map(|(s, _)| s),
        residual: fit.map(|(_, r)| r),
    })
}

/// Least-squares slope and RMS residual; needs two distinct abscissae.
fn fit_line(samples: &[(f64, f64)]) -> Option<(f64, f64)> {
    let n = samples.len() as f64;
    if samples.len() < 2 {
        return None;
    }
    let mx = samples.iter().map(|p| p.0).sum::<f64>() / n;
    let my = samples.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = samples.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = samples.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = samples
        .iter()
        .map(|p| (p.1 - (slope * p.0 + intercept)).powi(2))
        .sum();
    Some((slope, (rss / n).sqrt()))
}
