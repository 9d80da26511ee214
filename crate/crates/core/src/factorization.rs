//! Factorization sets Z(n), lengths, and the distance between factorizations.

use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monoid::NumericalMonoid;

/// An exponent vector over the minimal generators of a monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    exponents: Vec<u32>,
}

impl Factorization {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            exponents: vec![0; dim],
        }
    }

    /// The factorization `count · e_index`.
    pub fn unit(dim: usize, index: usize, count: u32) -> Self {
        let mut exponents = vec![0; dim];
        exponents[index] = count;
        Self { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    /// |z|
    pub fn length(&self) -> i64 {
        self.exponents.iter().map(|&e| i64::from(e)).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(k, _)| k)
    }

    pub fn uses(&self, index: usize) -> bool {
        self.exponents[index] != 0
    }

    /// Image under the factorization morphism, Σ z_i·n_i.
    pub fn value(&self, generators: &[i64]) -> Result<i64> {
        if generators.len() != self.dim() {
            return Err(Error::DimensionMismatch(self.dim(), generators.len()));
        }
        self.exponents
            .iter()
            .zip(generators)
            .try_fold(0i64, |acc, (&e, &g)| {
                i64::from(e).checked_mul(g).and_then(|t| acc.checked_add(t))
            })
            .ok_or(Error::Overflow("factorization value"))
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.dim(), other.dim()))
        }
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        })
    }

    /// max(|z / gcd(z,z')|, |z' / gcd(z,z')|)
    pub fn distance(&self, other: &Self) -> Result<i64> {
        self.check_dim(other)?;
        Ok(self.distance_unchecked(other))
    }

    pub(crate) fn distance_unchecked(&self, other: &Self) -> i64 {
        let (mut left, mut right) = (0i64, 0i64);
        for (&a, &b) in self.exponents.iter().zip(&other.exponents) {
            if a > b {
                left += i64::from(a - b);
            } else {
                right += i64::from(b - a);
            }
        }
        left.max(right)
    }

    /// Distance to the closest member of `others`.
    pub fn set_distance<'a, I>(&self, others: I) -> Result<i64>
    where
        I: IntoIterator<Item = &'a Factorization>,
    {
        let mut best: Option<i64> = None;
        for y in others {
            let d = self.distance(y)?;
            best = Some(best.map_or(d, |b| b.min(d)));
        }
        best.ok_or(Error::EmptySet)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.exponents.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.exponents.serialize(serializer)
    }
}

/// All factorizations of `n`. Empty when `n ∉ S`.
///
/// The last coordinate is chosen first, largest value first; coordinates are
/// only tried when the remainder is reachable by the earlier generators, so
/// the work is proportional to the output.
pub fn factorizations(s: &NumericalMonoid, n: i64) -> Vec<Factorization> {
    factorizations_limited(s, n, usize::MAX).0
}

/// Like [`factorizations`], stopping after `limit` results. The flag reports
/// whether the enumeration was cut short.
pub fn factorizations_limited(
    s: &NumericalMonoid,
    n: i64,
    limit: usize,
) -> (Vec<Factorization>, bool) {
    let mut out = Vec::new();
    if !s.contains(n) {
        return (out, false);
    }
    let p = s.embedding_dim();
    let mut current = vec![0u32; p];
    let truncated = !enumerate(s, p - 1, n, &mut current, &mut out, limit);
    (out, truncated)
}

// Returns false once the limit has been hit.
fn enumerate(
    s: &NumericalMonoid,
    idx: usize,
    remaining: i64,
    current: &mut [u32],
    out: &mut Vec<Factorization>,
    limit: usize,
) -> bool {
    let g = s.generators()[idx];
    if idx == 0 {
        if remaining % g == 0 {
            if out.len() >= limit {
                return false;
            }
            current[0] = (remaining / g) as u32;
            out.push(Factorization::new(current.to_vec()));
            current[0] = 0;
        }
        return true;
    }
    for c in (0..=remaining / g).rev() {
        let rest = remaining - c * g;
        if !s.prefix_contains(idx, rest) {
            continue;
        }
        current[idx] = c as u32;
        let ok = enumerate(s, idx - 1, rest, current, out, limit);
        current[idx] = 0;
        if !ok {
            return false;
        }
    }
    true
}

/// |Z(n)| by the denumerant recurrence, without enumerating.
pub fn count_factorizations(s: &NumericalMonoid, n: i64) -> Result<u64> {
    if n < 0 {
        return Ok(0);
    }
    let size = usize::try_from(n).map_err(|_| Error::Overflow("denumerant table"))? + 1;
    let mut ways = vec![0u64; size];
    ways[0] = 1;
    for &g in s.generators() {
        let g = g as usize;
        for v in g..size {
            ways[v] = ways[v]
                .checked_add(ways[v - g])
                .ok_or(Error::Overflow("denumerant"))?;
        }
    }
    Ok(ways[size - 1])
}

/// The set of lengths L(n), sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthSet {
    pub element: i64,
    pub lengths: Vec<i64>,
}

impl LengthSet {
    pub fn min(&self) -> i64 {
        self.lengths[0]
    }

    pub fn max(&self) -> i64 {
        *self.lengths.last().unwrap()
    }

    /// Successive differences of consecutive lengths, deduplicated.
    pub fn delta(&self) -> Vec<i64> {
        let mut gaps: Vec<i64> = self.lengths.windows(2).map(|w| w[1] - w[0]).collect();
        gaps.sort_unstable();
        gaps.dedup();
        gaps
    }
}

pub fn length_set(s: &NumericalMonoid, n: i64) -> Result<LengthSet> {
    if !s.contains(n) {
        return Err(Error::NotAMember(n));
    }
    Ok(length_set_of(n, &factorizations(s, n)))
}

pub(crate) fn length_set_of(n: i64, zs: &[Factorization]) -> LengthSet {
    let mut lengths: Vec<i64> = zs.iter().map(Factorization::length).collect();
    lengths.sort_unstable();
    lengths.dedup();
    LengthSet {
        element: n,
        lengths,
    }
}

pub fn max_length(s: &NumericalMonoid, n: i64) -> Result<i64> {
    length_set(s, n).map(|l| l.max())
}

pub fn min_length(s: &NumericalMonoid, n: i64) -> Result<i64> {
    length_set(s, n).map(|l| l.min())
}

/// Δ(n). Requires `n > 0`.
pub fn delta_set(s: &NumericalMonoid, n: i64) -> Result<Vec<i64>> {
    if n <= 0 {
        return Err(Error::NotAMember(n));
    }
    length_set(s, n).map(|l| l.delta())
}

/// ρ(n) = max L(n) / min L(n), exact. Requires `n > 0`.
pub fn elasticity_of_element(s: &NumericalMonoid, n: i64) -> Result<Ratio<i64>> {
    if n <= 0 {
        return Err(Error::NotAMember(n));
    }
    let l = length_set(s, n)?;
    Ok(Ratio::new(l.max(), l.min()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(e: &[u32]) -> Factorization {
        Factorization::new(e.to_vec())
    }

    fn sorted(mut v: Vec<Factorization>) -> Vec<Factorization> {
        v.sort();
        v
    }

    #[test]
    fn factorization_examples() {
        let s = NumericalMonoid::new(&[5, 6, 7, 9]).unwrap();
        // 18 = 2·9 = 5+6+7 = 3·6
        assert_eq!(
            factorizations(&s, 18),
            vec![f(&[0, 0, 0, 2]), f(&[1, 1, 1, 0]), f(&[0, 3, 0, 0])]
        );
        assert_eq!(factorizations(&s, 0), vec![f(&[0, 0, 0, 0])]);

        let s = NumericalMonoid::new(&[5, 13, 16]).unwrap();
        assert_eq!(
            sorted(factorizations(&s, 45)),
            vec![f(&[0, 1, 2]), f(&[9, 0, 0])]
        );
        assert!(factorizations(&s, 8).is_empty());
        assert!(factorizations(&s, -1).is_empty());
    }

    #[test]
    fn enumeration_is_deterministic_and_complete() {
        let s = NumericalMonoid::new(&[5, 6, 7, 9]).unwrap();
        for n in 0..120 {
            let zs = factorizations(&s, n);
            assert_eq!(zs.len() as u64, count_factorizations(&s, n).unwrap());
            for z in &zs {
                assert_eq!(z.value(s.generators()).unwrap(), n);
            }
            let mut dedup = zs.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), zs.len());
            assert_eq!(zs, factorizations(&s, n));
        }
    }

    #[test]
    fn truncation() {
        let s = NumericalMonoid::new(&[5, 6, 7, 9]).unwrap();
        let all = factorizations(&s, 90);
        let (few, cut) = factorizations_limited(&s, 90, 3);
        assert!(cut);
        assert_eq!(few, all[..3]);
        let (same, cut) = factorizations_limited(&s, 90, all.len());
        assert!(!cut);
        assert_eq!(same, all);
    }

    #[test]
    fn gcd_and_distance() {
        assert_eq!(f(&[9, 0, 0]).gcd(&f(&[0, 1, 2])).unwrap(), f(&[0, 0, 0]));
        assert_eq!(f(&[3, 1, 0]).gcd(&f(&[1, 1, 2])).unwrap(), f(&[1, 1, 0]));
        let z = f(&[2, 5, 1]);
        assert_eq!(z.gcd(&z).unwrap(), z);

        assert_eq!(f(&[9, 0, 0]).distance(&f(&[0, 1, 2])).unwrap(), 9);
        assert_eq!(z.distance(&z).unwrap(), 0);
        assert_eq!(f(&[1, 1, 1, 0]).distance(&f(&[0, 0, 0, 2])).unwrap(), 3);

        assert_eq!(
            f(&[1, 0]).gcd(&f(&[1, 0, 0])).unwrap_err(),
            Error::DimensionMismatch(2, 3)
        );
        assert!(f(&[1, 0]).distance(&f(&[1])).is_err());
    }

    #[test]
    fn set_distance_examples() {
        assert_eq!(f(&[9, 0, 0]).set_distance(&[f(&[0, 1, 2])]).unwrap(), 9);
        let ys = [f(&[1, 1, 1, 0]), f(&[0, 0, 0, 2])];
        assert_eq!(f(&[0, 0, 0, 2]).set_distance(&ys).unwrap(), 0);
        assert_eq!(f(&[1]).set_distance(&[]).unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn lengths_delta_elasticity() {
        let s = NumericalMonoid::new(&[5, 13, 16]).unwrap();
        let l = length_set(&s, 26).unwrap();
        assert_eq!(l.lengths, vec![2, 3]);
        assert_eq!(max_length(&s, 26), Ok(3));
        assert_eq!(min_length(&s, 26), Ok(2));
        assert_eq!(delta_set(&s, 26), Ok(vec![1]));
        assert_eq!(elasticity_of_element(&s, 26), Ok(Ratio::new(3, 2)));
        assert_eq!(length_set(&s, 0).unwrap().lengths, vec![0]);
        assert_eq!(length_set(&s, 8).unwrap_err(), Error::NotAMember(8));

        assert_eq!(delta_set(&s, 13), Ok(vec![]));
        assert_eq!(elasticity_of_element(&s, 13), Ok(Ratio::from_integer(1)));

        let s = NumericalMonoid::new(&[5, 6, 7, 9]).unwrap();
        assert_eq!(length_set(&s, 18).unwrap().lengths, vec![2, 3]);

        let s = NumericalMonoid::new(&[3, 4, 5]).unwrap();
        assert_eq!(length_set(&s, 12).unwrap().lengths, vec![3, 4]);
        assert_eq!(delta_set(&s, 12), Ok(vec![1]));
    }

    #[test]
    fn value_overflow() {
        let z = f(&[u32::MAX, u32::MAX]);
        assert_eq!(
            z.value(&[i64::MAX / 2, 3]).unwrap_err(),
            Error::Overflow("factorization value")
        );
    }
}
