//! General algorithms for R-classes, catenary degree, tame degree, ω and τ.
//!
//! Every search here is exhaustive below an explicit bound, so the results are
//! exact for any numerical monoid. Writing F for the Frobenius number and n_p
//! for the largest atom:
//!
//! * An element `n > F + 2·n_p` has `n - n_i - n_j > F` for all atom pairs, so
//!   its graph G_n is complete and it has a single R-class. Betti elements are
//!   therefore searched in `[1, F + 2·n_p]`.
//! * A factorization `z` is *b-minimal* when `b ≤_S φ(z)` but
//!   `b ≰_S φ(z) - n_k` for every `k ∈ supp(z)`. Taking such a `k`,
//!   `φ(z) - n_k - b ∉ S` forces `φ(z) ≤ b + F + n_k ≤ b + F + n_p`.
//! * ω(S, b) is the largest length of a b-minimal factorization: splitting a
//!   summand of a decomposition into atoms can only raise the number of
//!   summands needed to dominate `b`, merging summands can only lower it, and
//!   in an atom decomposition the smallest dominating sub-multiset of a
//!   b-minimal factorization is the whole of it.
//! * τ(S, b) is the largest `min L(φ(z) - b)` over b-minimal `z`.
//! * t_i(S) is attained at the value of an n_i-minimal factorization: for
//!   `z ∈ Z(n)` avoiding atom `i`, pick an n_i-minimal `y ≤ z`; moving from `y`
//!   to its nearest `y' ∈ Z^i(φ(y))` and keeping `z - y` fixed gives a point of
//!   Z^i(n) at distance `d(y, y')`. So scanning `n ≤ n_i + F + n_p` suffices.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::{factorizations, Factorization};
use crate::monoid::NumericalMonoid;

/// The graph G_n: vertices are the atoms below `n`, edges join atoms whose sum
/// is below `n`. Vertex indices are 0-based positions in the generator list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementGraph {
    pub element: i64,
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl ElementGraph {
    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let p = self.vertices.iter().max().map_or(0, |&v| v + 1);
        let mut uf = UnionFind::new(p);
        for &(i, j) in &self.edges {
            uf.union(i, j);
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for &v in &self.vertices {
            let root = uf.find(v);
            let k = *slot.entry(root).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[k].push(v);
        }
        groups
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Graphviz rendering with 1-based atom labels.
    pub fn to_dot(&self, generators: &[i64]) -> String {
        let mut out = format!("graph G_{} {{\n", self.element);
        for &v in &self.vertices {
            out.push_str(&format!(
                "  {} [label=\"{} ({})\"];\n",
                v + 1,
                v + 1,
                generators[v]
            ));
        }
        for &(i, j) in &self.edges {
            out.push_str(&format!("  {} -- {};\n", i + 1, j + 1));
        }
        out.push_str("}\n");
        out
    }
}

pub fn element_graph(s: &NumericalMonoid, n: i64) -> Result<ElementGraph> {
    if !s.contains(n) {
        return Err(Error::NotAMember(n));
    }
    let gens = s.generators();
    let vertices: Vec<usize> = (0..gens.len())
        .filter(|&i| s.contains(n - gens[i]))
        .collect();
    let mut edges = Vec::new();
    for (a, &i) in vertices.iter().enumerate() {
        for &j in &vertices[a + 1..] {
            if s.contains(n - gens[i] - gens[j]) {
                edges.push((i, j));
            }
        }
    }
    Ok(ElementGraph {
        element: n,
        vertices,
        edges,
    })
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Z(n) split into R-classes, with the least length in each class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RClassPartition {
    pub element: i64,
    pub classes: Vec<Vec<Factorization>>,
    pub class_min_lengths: Vec<i64>,
}

impl RClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// μ(n), the largest per-class minimum length.
    pub fn mu(&self) -> i64 {
        self.class_min_lengths.iter().copied().max().unwrap_or(0)
    }
}

pub fn r_classes(s: &NumericalMonoid, n: i64) -> Result<RClassPartition> {
    if !s.contains(n) {
        return Err(Error::NotAMember(n));
    }
    Ok(r_classes_of(n, s.embedding_dim(), factorizations(s, n)))
}

/// Partition of an already enumerated Z(n). Factorizations sharing an atom
/// are merged; classes keep enumeration order.
pub fn r_classes_of(n: i64, dim: usize, zs: Vec<Factorization>) -> RClassPartition {
    let mut uf = UnionFind::new(zs.len());
    let mut first_user: Vec<Option<usize>> = vec![None; dim];
    for (k, z) in zs.iter().enumerate() {
        for atom in z.support() {
            match first_user[atom] {
                Some(j) => uf.union(j, k),
                None => first_user[atom] = Some(k),
            }
        }
    }
    let mut slot: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<Factorization>> = Vec::new();
    for (k, z) in zs.into_iter().enumerate() {
        let root = uf.find(k);
        let c = *slot.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(z);
    }
    let class_min_lengths = classes
        .iter()
        .map(|c| c.iter().map(Factorization::length).min().unwrap())
        .collect();
    RClassPartition {
        element: n,
        classes,
        class_min_lengths,
    }
}

/// c(n): the least N such that the graph joining factorizations at distance
/// at most N is connected. Computed as the heaviest edge of a minimum
/// spanning tree of the complete distance graph on Z(n).
pub fn catenary_of_element(s: &NumericalMonoid, n: i64) -> Result<i64> {
    if !s.contains(n) {
        return Err(Error::NotAMember(n));
    }
    Ok(bottleneck(&factorizations(s, n)))
}

pub(crate) fn bottleneck(zs: &[Factorization]) -> i64 {
    if zs.len() <= 1 {
        return 0;
    }
    // Prim's algorithm on the dense graph.
    let mut in_tree = vec![false; zs.len()];
    let mut best = vec![i64::MAX; zs.len()];
    best[0] = 0;
    let mut heaviest = 0;
    for _ in 0..zs.len() {
        let (u, w) = best
            .iter()
            .enumerate()
            .filter(|(k, _)| !in_tree[*k])
            .min_by_key(|(_, &w)| w)
            .map(|(k, &w)| (k, w))
            .unwrap();
        in_tree[u] = true;
        heaviest = heaviest.max(w);
        for v in 0..zs.len() {
            if !in_tree[v] {
                let d = zs[u].distance_unchecked(&zs[v]);
                if d < best[v] {
                    best[v] = d;
                }
            }
        }
    }
    heaviest
}

/// Elements with at least two R-classes, in increasing order.
///
/// Uses the component count of G_n, which equals the number of R-classes for
/// `n > 0`.
pub fn betti_elements(s: &NumericalMonoid) -> Result<Vec<i64>> {
    s.require_proper()?;
    let bound = betti_search_bound(s)?;
    let mut out = Vec::new();
    for n in 1..=bound {
        if s.contains(n) && element_graph(s, n)?.component_count() >= 2 {
            out.push(n);
        }
    }
    Ok(out)
}

/// F(S) + 2·n_p.
pub fn betti_search_bound(s: &NumericalMonoid) -> Result<i64> {
    let f = s.frobenius()?;
    s.largest_generator()
        .checked_mul(2)
        .and_then(|t| t.checked_add(f))
        .ok_or(Error::Overflow("Betti search bound"))
}

/// c(S) = μ(S), the maximum of μ(n) over the Betti elements.
pub fn catenary_degree(s: &NumericalMonoid) -> Result<i64> {
    let mut best = 0;
    for n in betti_elements(s)? {
        best = best.max(r_classes(s, n)?.mu());
    }
    Ok(best)
}

/// c(S) as the maximum of c(n) over the Betti elements.
pub fn catenary_degree_by_chains(s: &NumericalMonoid) -> Result<i64> {
    let mut best = 0;
    for n in betti_elements(s)? {
        best = best.max(catenary_of_element(s, n)?);
    }
    Ok(best)
}

/// min{k ≥ 1 : k·n_1 ∈ ⟨n_2, …, n_p⟩}.
pub fn min_multiple_in_rest(s: &NumericalMonoid) -> Result<i64> {
    let gens = s.generators();
    if gens.len() < 2 {
        return Err(Error::TooFewGenerators);
    }
    let rest = &gens[1..];
    let c = rest.iter().fold(0i64, |acc, &g| acc.gcd(&g));
    let normalized: Vec<i64> = rest.iter().map(|&g| g / c).collect();
    let sub = NumericalMonoid::new(&normalized)?;
    let mut k = 1i64;
    loop {
        let multiple = k
            .checked_mul(gens[0])
            .ok_or(Error::Overflow("multiple of n_1"))?;
        if multiple % c == 0 && sub.contains(multiple / c) {
            return Ok(k);
        }
        k += 1;
    }
}

/// t_i(n) over a precomputed Z(n); `None` when no factorization uses atom `i`.
fn tame_index_of(zs: &[Factorization], i: usize) -> Option<i64> {
    let (with_i, without_i): (Vec<&Factorization>, Vec<&Factorization>) =
        zs.iter().partition(|z| z.uses(i));
    if with_i.is_empty() {
        return None;
    }
    let mut worst = 0;
    for z in without_i {
        let mut nearest = i64::MAX;
        for y in &with_i {
            let d = z.distance_unchecked(y);
            if d < nearest {
                nearest = d;
                if nearest <= worst {
                    break;
                }
            }
        }
        worst = worst.max(nearest);
    }
    Some(worst)
}

fn tame_of(zs: &[Factorization], dim: usize) -> i64 {
    (0..dim)
        .filter_map(|i| tame_index_of(zs, i))
        .max()
        .unwrap_or(0)
}

/// t_i(n) with a 0-based atom index.
pub fn tame_of_element_i(s: &NumericalMonoid, n: i64, i: usize) -> Result<i64> {
    if i >= s.embedding_dim() {
        return Err(Error::IndexOutOfRange(i));
    }
    if !s.contains(n) {
        return Err(Error::NotAMember(n));
    }
    tame_index_of(&factorizations(s, n), i).ok_or(Error::AtomNotBelow { n, index: i })
}

/// t(n), the maximum of t_i(n) over the atoms below `n` (0 when there are none).
pub fn tame_of_element(s: &NumericalMonoid, n: i64) -> Result<i64> {
    if !s.contains(n) {
        return Err(Error::NotAMember(n));
    }
    Ok(tame_of(&factorizations(s, n), s.embedding_dim()))
}

/// The elements `w + n_i` with `w ∈ Ap(S, n_j)`, `j ≠ i`, deduplicated and
/// sorted. The least element attaining t(S) lies in this set.
pub fn tame_candidates(s: &NumericalMonoid) -> Result<Vec<i64>> {
    s.require_proper()?;
    let gens = s.generators();
    let mut set = BTreeSet::new();
    for (j, &nj) in gens.iter().enumerate() {
        let ap = s.apery_set(nj)?;
        for (i, &ni) in gens.iter().enumerate() {
            if i != j {
                set.extend(ap.iter().map(|&w| w + ni));
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// t(S), by scanning the candidate set.
pub fn tame_degree(s: &NumericalMonoid) -> Result<i64> {
    let dim = s.embedding_dim();
    let mut best = 0;
    for n in tame_candidates(s)? {
        best = best.max(tame_of(&factorizations(s, n), dim));
    }
    Ok(best)
}

/// t_i(S) for a 0-based atom index, by scanning every `n` with
/// `n_i ≤_S n ≤ n_i + F + n_p`.
pub fn tame_index_degree(s: &NumericalMonoid, i: usize) -> Result<i64> {
    s.require_proper()?;
    if i >= s.embedding_dim() {
        return Err(Error::IndexOutOfRange(i));
    }
    let b = s.generators()[i];
    let bound = minimal_value_bound(s, b)?;
    let mut best = 0;
    for n in b..=bound {
        if s.leq(b, n) {
            let zs = factorizations(s, n);
            best = best.max(tame_index_of(&zs, i).expect("n - n_i ∈ S"));
        }
    }
    Ok(best)
}

/// b + F + n_p.
fn minimal_value_bound(s: &NumericalMonoid, b: i64) -> Result<i64> {
    s.frobenius()?
        .checked_add(b)
        .and_then(|t| t.checked_add(s.largest_generator()))
        .ok_or(Error::Overflow("minimal factorization bound"))
}

/// All b-minimal factorizations: `b ≤_S φ(z)` and `b ≰_S φ(z) - n_k` for every
/// atom `k` used by `z`.
pub fn minimal_factorizations(s: &NumericalMonoid, b: i64) -> Result<Vec<Factorization>> {
    s.require_proper()?;
    if s.atom_index(b).is_none() {
        return Err(Error::NotAnAtom(b));
    }
    let bound = minimal_value_bound(s, b)?;
    let mut out = Vec::new();
    let mut current = vec![0u32; s.embedding_dim()];
    search_minimal(
        s,
        b,
        bound,
        s.embedding_dim() - 1,
        0,
        &mut current,
        &mut out,
    );
    Ok(out)
}

// Depth-first over coordinates. The set {z : b ≰_S φ(z)} is closed under
// taking smaller vectors, so once a partial vector dominates b none of its
// extensions can be minimal.
fn search_minimal(
    s: &NumericalMonoid,
    b: i64,
    bound: i64,
    idx: usize,
    value: i64,
    current: &mut [u32],
    out: &mut Vec<Factorization>,
) {
    let g = s.generators()[idx];
    let mut c = 0u32;
    let mut v = value;
    loop {
        current[idx] = c;
        if c > 0 && s.leq(b, v) {
            let minimal = current
                .iter()
                .zip(s.generators())
                .all(|(&e, &nk)| e == 0 || !s.leq(b, v - nk));
            if minimal {
                out.push(Factorization::new(current.to_vec()));
            }
            break;
        }
        if idx > 0 {
            search_minimal(s, b, bound, idx - 1, v, current, out);
        }
        if v + g > bound {
            break;
        }
        c += 1;
        v += g;
    }
    current[idx] = 0;
}

/// ω(S, b) for an atom `b`.
pub fn omega_of_atom(s: &NumericalMonoid, b: i64) -> Result<i64> {
    Ok(minimal_factorizations(s, b)?
        .iter()
        .map(Factorization::length)
        .max()
        .unwrap_or(0))
}

/// ω(S) = max over atoms of ω(S, n_i).
pub fn omega(s: &NumericalMonoid) -> Result<i64> {
    s.require_proper()?;
    let mut best = 0;
    for &b in s.generators() {
        best = best.max(omega_of_atom(s, b)?);
    }
    Ok(best)
}

/// τ(S, b) for an atom `b`.
pub fn tau_of_atom(s: &NumericalMonoid, b: i64) -> Result<i64> {
    let minimal = minimal_factorizations(s, b)?;
    let gens = s.generators();
    let top = minimal
        .iter()
        .map(|z| z.value(gens))
        .try_fold(0i64, |acc, v| v.map(|v| acc.max(v)))?;
    let shortest = min_lengths_up_to(gens, top - b);
    let mut best = 0;
    for z in &minimal {
        let rest = (z.value(gens)? - b) as usize;
        best = best.max(shortest[rest].expect("b ≤_S φ(z)"));
    }
    Ok(best)
}

/// min L(v) for every `0 ≤ v ≤ top` by the coin-change recurrence.
fn min_lengths_up_to(gens: &[i64], top: i64) -> Vec<Option<i64>> {
    let size = top.max(0) as usize + 1;
    let mut shortest: Vec<Option<i64>> = vec![None; size];
    shortest[0] = Some(0);
    for v in 1..size {
        shortest[v] = gens
            .iter()
            .filter(|&&g| g as usize <= v)
            .filter_map(|&g| shortest[v - g as usize])
            .min()
            .map(|l| l + 1);
    }
    shortest
}
