//! Numerical monoids: canonical minimal generators, membership, Apéry sets
//! and the Frobenius number.
//!
//! Membership is answered from the Apéry set with respect to the smallest
//! generator, which is computed once at construction. An integer `n` lies in
//! the monoid iff `n >= w`, where `w` is the Apéry element congruent to `n`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_integer::Integer;

use crate::error::{Error, Result};

/// A numerical monoid given by its minimal generating set.
pub struct NumericalMonoid {
    generators: Vec<i64>,
    all_of_n: bool,
    /// Ap(S, n_1), indexed by residue modulo n_1.
    apery_first: Arc<Vec<i64>>,
    frobenius: Option<i64>,
    /// For k = 1..=p, residue table of the prefix ⟨n_1, …, n_k⟩ modulo n_1.
    prefix_tables: Arc<Vec<Vec<Option<i64>>>>,
    apery_cache: RwLock<HashMap<i64, Arc<Vec<i64>>>>,
}

impl NumericalMonoid {
    /// Builds the monoid generated by `raw_generators`, discarding redundant
    /// generators and sorting the rest.
    ///
    /// The input must be nonempty, positive and coprime. A list containing 1
    /// yields `S = ℕ`, which is representable but refused by the invariant
    /// computations.
    pub fn new(raw_generators: &[i64]) -> Result<Self> {
        if raw_generators.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(&g) = raw_generators.iter().find(|&&g| g <= 0) {
            return Err(Error::NonPositiveGenerator(g));
        }
        let g = raw_generators.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::NonCoprime(g));
        }

        let mut sorted = raw_generators.to_vec();
        sorted.sort_unstable();
        sorted.dedup();

        let mut minimal: Vec<i64> = Vec::with_capacity(sorted.len());
        for &candidate in &sorted {
            if minimal.is_empty() || !representable(&minimal, candidate)? {
                minimal.push(candidate);
            }
        }

        let all_of_n = minimal == [1];
        let apery_first = shortest_residues(&minimal, minimal[0])?
            .into_iter()
            .map(|w| w.expect("coprime generators reach every residue"))
            .collect::<Vec<_>>();
        let frobenius = if all_of_n {
            None
        } else {
            apery_first.iter().max().map(|&w| w - minimal[0])
        };

        let prefix_tables = (1..=minimal.len())
            .map(|k| shortest_residues(&minimal[..k], minimal[0]))
            .collect::<Result<Vec<_>>>()?;

        Ok(Self {
            generators: minimal,
            all_of_n,
            apery_first: Arc::new(apery_first),
            frobenius,
            prefix_tables: Arc::new(prefix_tables),
            apery_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn embedding_dim(&self) -> usize {
        self.generators.len()
    }

    /// Smallest generator n_1.
    pub fn multiplicity(&self) -> i64 {
        self.generators[0]
    }

    /// Largest generator n_p.
    pub fn largest_generator(&self) -> i64 {
        *self.generators.last().unwrap()
    }

    pub fn is_all_of_n(&self) -> bool {
        self.all_of_n
    }

    /// Fails with [`Error::IsAllOfN`] when the monoid is ℕ.
    pub fn require_proper(&self) -> Result<()> {
        if self.all_of_n {
            Err(Error::IsAllOfN)
        } else {
            Ok(())
        }
    }

    /// Whether `n` is a combination of the first `k` generators.
    pub(crate) fn prefix_contains(&self, k: usize, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let m = self.generators[0];
        matches!(self.prefix_tables[k - 1][(n % m) as usize], Some(w) if n >= w)
    }

    /// Index of `b` in the generator list, if `b` is an atom.
    pub fn atom_index(&self, b: i64) -> Option<usize> {
        self.generators.binary_search(&b).ok()
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let m = self.generators[0];
        n >= self.apery_first[(n % m) as usize]
    }

    /// The partial order `a ≤_S b`, i.e. `b - a ∈ S`.
    pub fn leq(&self, a: i64, b: i64) -> bool {
        match b.checked_sub(a) {
            Some(diff) => self.contains(diff),
            None => false,
        }
    }

    /// Ap(S, m), as a list indexed by residue modulo `m`.
    pub fn apery_set(&self, m: i64) -> Result<Arc<Vec<i64>>> {
        if m <= 0 || !self.contains(m) {
            return Err(Error::NotAMember(m));
        }
        if m == self.generators[0] {
            return Ok(Arc::clone(&self.apery_first));
        }
        if let Some(hit) = self.apery_cache.read().unwrap().get(&m) {
            return Ok(Arc::clone(hit));
        }
        let computed: Vec<i64> = shortest_residues(&self.generators, m)?
            .into_iter()
            .map(|w| w.expect("coprime generators reach every residue"))
            .collect();
        let computed = Arc::new(computed);
        self.apery_cache
            .write()
            .unwrap()
            .entry(m)
            .or_insert_with(|| Arc::clone(&computed));
        Ok(computed)
    }

    /// The largest integer outside the monoid.
    pub fn frobenius(&self) -> Result<i64> {
        self.frobenius.ok_or(Error::IsAllOfN)
    }

    /// Frobenius number with the convention `g(ℕ) = -1`.
    pub fn frobenius_or_minus_one(&self) -> i64 {
        self.frobenius.unwrap_or(-1)
    }
}

impl Clone for NumericalMonoid {
    fn clone(&self) -> Self {
        Self {
            generators: self.generators.clone(),
            all_of_n: self.all_of_n,
            apery_first: Arc::clone(&self.apery_first),
            frobenius: self.frobenius,
            prefix_tables: Arc::clone(&self.prefix_tables),
            apery_cache: RwLock::new(self.apery_cache.read().unwrap().clone()),
        }
    }
}

impl PartialEq for NumericalMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for NumericalMonoid {}

impl fmt::Debug for NumericalMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumericalMonoid")
            .field("generators", &self.generators)
            .field("frobenius", &self.frobenius)
            .finish()
    }
}

impl fmt::Display for NumericalMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// For each residue `r` modulo `m`, the least nonnegative combination of
/// `gens` congruent to `r`, or `None` when no combination reaches `r`.
///
/// Shortest paths on the residue graph with an edge `r -> r + g` of weight `g`
/// for each generator.
pub fn shortest_residues(gens: &[i64], m: i64) -> Result<Vec<Option<i64>>> {
    assert!(m > 0, "modulus must be positive");
    let size = usize::try_from(m).map_err(|_| Error::Overflow("residue table"))?;
    let mut best: Vec<Option<i64>> = vec![None; size];
    best[0] = Some(0);
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0i64, 0usize)));
    while let Some(Reverse((value, residue))) = heap.pop() {
        if best[residue] != Some(value) {
            continue;
        }
        for &g in gens {
            let next = value
                .checked_add(g)
                .ok_or(Error::Overflow("Apéry element"))?;
            let r = (next % m) as usize;
            if best[r].is_none_or(|old| next < old) {
                best[r] = Some(next);
                heap.push(Reverse((next, r)));
            }
        }
    }
    Ok(best)
}

/// Whether `n` is a nonnegative combination of `gens` (any gcd).
fn representable(gens: &[i64], n: i64) -> Result<bool> {
    let m = gens[0];
    let table = shortest_residues(gens, m)?;
    Ok(matches!(table[(n % m) as usize], Some(w) if n >= w))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Bounded knapsack membership, independent of the Apéry machinery.
    fn naive_contains(gens: &[i64], n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let mut reach = vec![false; n as usize + 1];
        reach[0] = true;
        for v in 1..=n as usize {
            reach[v] = gens
                .iter()
                .any(|&g| g as usize <= v && reach[v - g as usize]);
        }
        reach[n as usize]
    }

    #[test]
    fn canonical_generators() {
        let s = NumericalMonoid::new(&[5, 13, 16]).unwrap();
        assert_eq!(s.generators(), &[5, 13, 16]);
        let s = NumericalMonoid::new(&[5, 10, 13, 16, 29]).unwrap();
        assert_eq!(s.generators(), &[5, 13, 16]);
        let s = NumericalMonoid::new(&[16, 5, 13, 5]).unwrap();
        assert_eq!(s.generators(), &[5, 13, 16]);
        let s = NumericalMonoid::new(&[1, 7]).unwrap();
        assert_eq!(s.generators(), &[1]);
        assert!(s.is_all_of_n());
        // non-coprime sub-list {4, 6} while 9 is still needed
        let s = NumericalMonoid::new(&[4, 6, 9, 10]).unwrap();
        assert_eq!(s.generators(), &[4, 6, 9]);
    }

    #[test]
    fn canonical_generators_match_bounded_search() {
        for gens in [
            vec![5, 13, 16],
            vec![5, 10, 13, 16, 29],
            vec![6, 9, 11, 15, 20],
        ] {
            let s = NumericalMonoid::new(&gens).unwrap();
            let kept = s.generators();
            for &g in kept {
                let others: Vec<i64> = kept.iter().copied().filter(|&o| o != g).collect();
                assert!(!naive_contains(&others, g), "{g} redundant in {kept:?}");
            }
            for &g in &gens {
                assert!(naive_contains(kept, g));
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(NumericalMonoid::new(&[]).unwrap_err(), Error::EmptyInput);
        assert_eq!(
            NumericalMonoid::new(&[4, 6]).unwrap_err(),
            Error::NonCoprime(2)
        );
        assert_eq!(
            NumericalMonoid::new(&[0, 3]).unwrap_err(),
            Error::NonPositiveGenerator(0)
        );
    }

    #[test]
    fn membership_examples() {
        let s = NumericalMonoid::new(&[5, 13, 16]).unwrap();
        assert!(!s.contains(27));
        assert!(s.contains(28));
        assert!(s.contains(0));
        assert!(!s.contains(-5));
        assert!(s.leq(13, 45));
        assert!(s.leq(7, 7));
        assert!(!s.leq(5, 13));
    }

    #[test]
    fn apery_examples() {
        let s = NumericalMonoid::new(&[5, 13, 16]).unwrap();
        let mut ap = s.apery_set(5).unwrap().to_vec();
        ap.sort_unstable();
        assert_eq!(ap, vec![0, 13, 16, 29, 32]);

        let n = NumericalMonoid::new(&[1]).unwrap();
        assert_eq!(n.apery_set(1).unwrap().as_slice(), &[0]);

        let s = NumericalMonoid::new(&[5, 6, 7, 9]).unwrap();
        assert_eq!(s.apery_set(5).unwrap().as_slice(), &[0, 6, 7, 13, 9]);

        assert_eq!(s.apery_set(8).unwrap_err(), Error::NotAMember(8));
        assert_eq!(s.apery_set(0).unwrap_err(), Error::NotAMember(0));
    }

    #[test]
    fn apery_for_non_generator_modulus() {
        let s = NumericalMonoid::new(&[5, 13, 16]).unwrap();
        let ap = s.apery_set(18).unwrap();
        assert_eq!(ap.len(), 18);
        for (r, &w) in ap.iter().enumerate() {
            assert_eq!(w % 18, r as i64);
            assert!(s.contains(w));
            assert!(!s.contains(w - 18));
        }
        // cached copy is identical
        assert_eq!(s.apery_set(18).unwrap(), ap);
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(
            NumericalMonoid::new(&[5, 13, 16]).unwrap().frobenius(),
            Ok(27)
        );
        assert_eq!(NumericalMonoid::new(&[2, 3]).unwrap().frobenius(), Ok(1));
        assert_eq!(
            NumericalMonoid::new(&[8, 19, 22, 25]).unwrap().frobenius(),
            Ok(61)
        );
        let n = NumericalMonoid::new(&[1]).unwrap();
        assert_eq!(n.frobenius(), Err(Error::IsAllOfN));
        assert_eq!(n.frobenius_or_minus_one(), -1);
    }

    #[test]
    fn membership_matches_knapsack() {
        for gens in [
            vec![5, 13, 16],
            vec![5, 6, 7, 9],
            vec![6, 9, 11],
            vec![8, 19, 22, 25],
        ] {
            let s = NumericalMonoid::new(&gens).unwrap();
            let f = s.frobenius().unwrap();
            assert!(!s.contains(f));
            for n in -3..=f + 2 * s.largest_generator() {
                assert_eq!(s.contains(n), naive_contains(&gens, n), "{gens:?} n={n}");
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        let big = i64::MAX - 1;
        assert_eq!(
            shortest_residues(&[big, big - 1], 3).unwrap_err(),
            Error::Overflow("Apéry element")
        );
    }
}
