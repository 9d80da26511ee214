//! Closed forms for monoids generated by generalized arithmetic sequences,
//! `S = ⟨a, ha+d, …, ha+xd⟩` with `gcd(a, d) = 1` and `1 ≤ x ≤ a-1`.
//!
//! Generators are numbered n_0 = a, n_k = ha + kd for k = 1..=x. Every
//! integer has a unique form `n = q·a + i·d` with `0 ≤ i < a`, and most
//! statements below are phrased in terms of that pair.

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::{factorizations, Factorization};
use crate::monoid::NumericalMonoid;

fn ceil_div(n: i64, m: i64) -> i64 {
    Integer::div_ceil(&n, &m)
}

fn ck(value: Option<i64>, what: &'static str) -> Result<i64> {
    value.ok_or(Error::Overflow(what))
}

/// The quadruple (a, h, d, x).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GasParams {
    a: i64,
    h: i64,
    d: i64,
    x: i64,
}

impl GasParams {
    /// Validates the parameters. `x ≥ a` is reduced to `a - 1`, since
    /// `ha + id` lies in the monoid generated by the first `a` terms for
    /// `i ≥ a`.
    pub fn new(a: i64, h: i64, d: i64, x: i64) -> Result<Self> {
        if a < 2 {
            return Err(Error::InvalidParams(format!("a = {a} must be at least 2")));
        }
        for (name, v) in [("h", h), ("d", d), ("x", x)] {
            if v < 1 {
                return Err(Error::InvalidParams(format!(
                    "{name} = {v} must be positive"
                )));
            }
        }
        if a.gcd(&d) != 1 {
            return Err(Error::InvalidParams(format!(
                "gcd(a, d) = gcd({a}, {d}) != 1"
            )));
        }
        let params = Self {
            a,
            h,
            d,
            x: x.min(a - 1),
        };
        params.generator(params.x)?;
        Ok(params)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn x(&self) -> i64 {
        self.x
    }

    /// n_k: `a` for k = 0, `ha + kd` otherwise.
    pub fn generator(&self, k: i64) -> Result<i64> {
        if k == 0 {
            return Ok(self.a);
        }
        let ha = ck(self.h.checked_mul(self.a), "generator")?;
        ck(
            self.d.checked_mul(k).and_then(|kd| kd.checked_add(ha)),
            "generator",
        )
    }

    /// [n_0, n_1, …, n_x].
    pub fn generators(&self) -> Result<Vec<i64>> {
        (0..=self.x).map(|k| self.generator(k)).collect()
    }

    /// ⌊(a-1)/x⌋, the multiplier in the second family of Betti candidates.
    pub fn floor_p(&self) -> i64 {
        (self.a - 1) / self.x
    }

    /// (a-1) mod x.
    pub fn r(&self) -> i64 {
        (self.a - 1) % self.x
    }

    /// The same (a, d, x) with another h.
    pub fn with_h(&self, h: i64) -> Result<Self> {
        Self::new(self.a, h, self.d, self.x)
    }
}

/// `n = q·a + i·d` with `0 ≤ i < a`; `q` may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QaidRep {
    pub q: i64,
    pub i: i64,
}

pub fn to_monoid(params: &GasParams) -> Result<NumericalMonoid> {
    let gens = params.generators()?;
    let s = NumericalMonoid::new(&gens)?;
    if s.generators() != gens.as_slice() {
        return Err(Error::InvalidParams(format!(
            "generators {gens:?} are not minimal"
        )));
    }
    Ok(s)
}

fn inverse_mod(d: i64, a: i64) -> i64 {
    let eg = d.rem_euclid(a).extended_gcd(&a);
    debug_assert_eq!(eg.gcd, 1);
    eg.x.rem_euclid(a)
}

pub fn qaid_rep(params: &GasParams, n: i64) -> Result<QaidRep> {
    let a = params.a;
    let i = ck(
        n.rem_euclid(a).checked_mul(inverse_mod(params.d, a)),
        "qaid representation",
    )?
    .rem_euclid(a);
    let id = ck(i.checked_mul(params.d), "qaid representation")?;
    let q = ck(n.checked_sub(id), "qaid representation")? / a;
    Ok(QaidRep { q, i })
}

/// Membership from `n = qa + id`: `q ≥ 0` and `⌈i/x⌉·h ≤ q`.
pub fn gas_contains(params: &GasParams, n: i64) -> Result<bool> {
    let QaidRep { q, i } = qaid_rep(params, n)?;
    Ok(q >= 0 && ceil_div(i, params.x) * params.h <= q)
}

/// Membership of `q·a + i·d` for arbitrary `q, i ≥ 0`:
/// `⌈(i mod a)/x⌉·h ≤ q + ⌊i/a⌋·d`.
pub fn gas_contains_general(params: &GasParams, q: i64, i: i64) -> Result<bool> {
    if q < 0 || i < 0 {
        return Err(Error::InvalidParams(format!(
            "q = {q}, i = {i} must be nonnegative"
        )));
    }
    let (lifted_q, reduced_i) = lift(params, q, i)?;
    Ok(ceil_div(reduced_i, params.x) * params.h <= lifted_q)
}

// (q + ⌊i/a⌋·d, i mod a)
fn lift(params: &GasParams, q: i64, i: i64) -> Result<(i64, i64)> {
    let (wraps, reduced) = i.div_mod_floor(&params.a);
    let lifted = ck(
        wraps.checked_mul(params.d).and_then(|t| t.checked_add(q)),
        "lifted q",
    )?;
    Ok((lifted, reduced))
}

/// Ap(S, a) indexed by `i`: `⌈i/x⌉·ha + id` for `0 ≤ i < a`.
pub fn gas_apery(params: &GasParams) -> Result<Vec<i64>> {
    let ha = ck(params.h.checked_mul(params.a), "Apéry element")?;
    (0..params.a)
        .map(|i| {
            ck(
                ceil_div(i, params.x)
                    .checked_mul(ha)
                    .and_then(|t| t.checked_add(i * params.d)),
                "Apéry element",
            )
        })
        .collect()
}

/// max L(n) = q − ⌈i/x⌉(h − 1).
pub fn gas_max_length(params: &GasParams, n: i64) -> Result<i64> {
    if !gas_contains(params, n)? {
        return Err(Error::NotAMember(n));
    }
    let QaidRep { q, i } = qaid_rep(params, n)?;
    Ok(q - ceil_div(i, params.x) * (params.h - 1))
}

/// max L(qa + id) = (q + ⌊i/a⌋d) − ⌈(i mod a)/x⌉(h − 1), for `q, i ≥ 0`.
pub fn gas_max_length_general(params: &GasParams, q: i64, i: i64) -> Result<i64> {
    if !gas_contains_general(params, q, i)? {
        let n = q
            .saturating_mul(params.a)
            .saturating_add(i.saturating_mul(params.d));
        return Err(Error::NotAMember(n));
    }
    let (lifted_q, reduced_i) = lift(params, q, i)?;
    Ok(lifted_q - ceil_div(reduced_i, params.x) * (params.h - 1))
}

/// {n_i + n_j : 1 ≤ i ≤ j ≤ x} ∪ {⌊(a-1)/x⌋·n_x + n_k : r < k ≤ x}, sorted.
///
/// Every element with a disconnected G_n is in this set; the converse need
/// not hold.
pub fn gas_betti_candidates(params: &GasParams) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for i in 1..=params.x {
        for j in i..=params.x {
            out.push(ck(
                params.generator(i)?.checked_add(params.generator(j)?),
                "Betti candidate",
            )?);
        }
    }
    let nx = params.generator(params.x)?;
    let base = ck(params.floor_p().checked_mul(nx), "Betti candidate")?;
    for k in params.r() + 1..=params.x {
        out.push(ck(
            base.checked_add(params.generator(k)?),
            "Betti candidate",
        )?);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// ⌈a/x⌉h + d, the least k with k·a ∈ ⟨n_1, …, n_x⟩.
pub fn gas_min_multiple(params: &GasParams) -> Result<i64> {
    ck(
        ceil_div(params.a, params.x)
            .checked_mul(params.h)
            .and_then(|t| t.checked_add(params.d)),
        "minimal multiple",
    )
}

/// c(S) = ⌈a/x⌉h + d.
pub fn gas_catenary(params: &GasParams) -> Result<i64> {
    gas_min_multiple(params)
}

/// t(S) = ω(S) = (⌈(a-1)/x⌉ + 1)h + d.
pub fn gas_tame(params: &GasParams) -> Result<i64> {
    ck(
        (ceil_div(params.a - 1, params.x) + 1)
            .checked_mul(params.h)
            .and_then(|t| t.checked_add(params.d)),
        "tame degree",
    )
}

/// g(S) = ⌈(a-1)/x⌉ha + ad − a − d.
pub fn gas_frobenius(params: &GasParams) -> Result<i64> {
    let (a, h, d) = (params.a, params.h, params.d);
    ck(
        ceil_div(a - 1, params.x)
            .checked_mul(h)
            .and_then(|t| t.checked_mul(a))
            .and_then(|t| a.checked_mul(d).and_then(|ad| t.checked_add(ad)))
            .and_then(|t| t.checked_sub(a + d)),
        "Frobenius number",
    )
}

/// The upper bound `B = (g(S) + n_x)/a + 1` and its gaps to t(S) and c(S).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GasBounds {
    pub b: Ratio<i64>,
    pub b_minus_t: Ratio<i64>,
    pub t_minus_c: i64,
}

pub fn gas_bounds(params: &GasParams) -> Result<GasBounds> {
    let g = gas_frobenius(params)?;
    let numerator = ck(g.checked_add(params.generator(params.x)?), "bound B")?;
    let b = Ratio::new(numerator, params.a) + 1;
    let b_minus_t = Ratio::new((params.x - 1) * params.d, params.a);
    let t_minus_c =
        (ceil_div(params.a - 1, params.x) + 1 - ceil_div(params.a, params.x)) * params.h;
    Ok(GasBounds {
        b,
        b_minus_t,
        t_minus_c,
    })
}

/// B written out: (⌈(a-1)/x⌉ + 1)h + d + (x-1)d/a.
pub fn gas_bound_closed_form(params: &GasParams) -> Result<Ratio<i64>> {
    Ok(Ratio::from_integer(gas_tame(params)?) + Ratio::new((params.x - 1) * params.d, params.a))
}

/// Whether `a ≡ 1 (mod x)`, i.e. ⌈(a-1)/x⌉ + 1 = ⌈a/x⌉.
pub fn a_is_one_mod_x(params: &GasParams) -> bool {
    (params.a - 1) % params.x == 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct H1Values {
    pub c: i64,
    pub t: i64,
}

/// The arithmetic-sequence case h = 1 in its piecewise form:
/// c = ⌈a/x⌉ + d, and t = c when a ≡ 1 (mod x), else c + 1.
pub fn gas_h1_check(params: &GasParams) -> Result<H1Values> {
    if params.h != 1 {
        return Err(Error::HNotOne(params.h));
    }
    let c = ceil_div(params.a, params.x) + params.d;
    let t = if a_is_one_mod_x(params) { c } else { c + 1 };
    Ok(H1Values { c, t })
}

/// The element `t·a` together with its factorization `(t, 0, …, 0)`, which is
/// at distance `t` from every factorization using n_1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TameWitness {
    pub n: i64,
    pub z_far: Factorization,
    pub t: i64,
    /// d(z_far, Z^1(n)) measured on the enumerated factorizations.
    pub oracle_distance: i64,
}

impl TameWitness {
    pub fn verified(&self) -> bool {
        self.oracle_distance == self.t
    }
}

pub fn gas_tame_witness(params: &GasParams) -> Result<TameWitness> {
    let t = gas_tame(params)?;
    let n = ck(t.checked_mul(params.a), "tame witness")?;
    let s = to_monoid(params)?;
    let z_far = Factorization::unit(s.embedding_dim(), 0, t as u32);
    let zs = factorizations(&s, n);
    let oracle_distance = z_far.set_distance(zs.iter().filter(|z| z.uses(1)))?;
    Ok(TameWitness {
        n,
        z_far,
        t,
        oracle_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(a: i64, h: i64, d: i64, x: i64) -> GasParams {
        GasParams::new(a, h, d, x).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(GasParams::new(4, 1, 2, 1).is_err());
        assert!(GasParams::new(1, 1, 1, 1).is_err());
        assert!(GasParams::new(5, 0, 1, 1).is_err());
        assert_eq!(gp(5, 2, 3, 9).x(), 4);
        assert!(GasParams::new(5, i64::MAX / 4, 3, 2).is_err());
    }

    #[test]
    fn to_monoid_examples() {
        assert_eq!(
            to_monoid(&gp(5, 2, 3, 2)).unwrap().generators(),
            &[5, 13, 16]
        );
        assert_eq!(
            to_monoid(&gp(8, 2, 3, 3)).unwrap().generators(),
            &[8, 19, 22, 25]
        );
        assert_eq!(to_monoid(&gp(2, 1, 1, 1)).unwrap().generators(), &[2, 3]);
    }

    #[test]
    fn qaid_examples() {
        let p = gp(5, 2, 3, 2);
        assert_eq!(qaid_rep(&p, 28).unwrap(), QaidRep { q: 5, i: 1 });
        assert_eq!(qaid_rep(&p, 0).unwrap(), QaidRep { q: 0, i: 0 });
        assert_eq!(qaid_rep(&p, 26).unwrap(), QaidRep { q: 4, i: 2 });
        assert_eq!(qaid_rep(&p, 1).unwrap(), QaidRep { q: -1, i: 2 });
        for n in -40..200 {
            let r = qaid_rep(&p, n).unwrap();
            assert!((0..5).contains(&r.i));
            assert_eq!(r.q * 5 + r.i * 3, n);
        }
    }

    #[test]
    fn membership_examples() {
        let p = gp(5, 2, 3, 2);
        assert_eq!(gas_contains(&p, 28), Ok(true));
        assert_eq!(gas_contains(&p, 27), Ok(false));
        assert_eq!(gas_contains(&p, 0), Ok(true));
        assert_eq!(gas_contains(&p, -5), Ok(false));
        assert_eq!(gas_contains_general(&p, 2, 7), Ok(true));
        assert_eq!(gas_contains_general(&p, 0, 0), Ok(true));
        assert_eq!(gas_contains_general(&p, 1, 1), Ok(false));
    }

    #[test]
    fn apery_examples() {
        let sorted = |p: GasParams| {
            let mut v = gas_apery(&p).unwrap();
            v.sort_unstable();
            v
        };
        assert_eq!(sorted(gp(5, 2, 3, 2)), vec![0, 13, 16, 29, 32]);
        assert_eq!(gas_apery(&gp(2, 1, 1, 1)).unwrap(), vec![0, 3]);
        assert_eq!(
            gas_apery(&gp(8, 2, 3, 3)).unwrap(),
            vec![0, 19, 22, 25, 44, 47, 50, 69]
        );
    }

    #[test]
    fn max_length_examples() {
        let p = gp(5, 2, 3, 2);
        assert_eq!(gas_max_length(&p, 26), Ok(3));
        assert_eq!(gas_max_length(&p, 0), Ok(0));
        assert_eq!(gas_max_length(&p, 45), Ok(9));
        assert_eq!(gas_max_length(&p, 27), Err(Error::NotAMember(27)));
        // 31 = 2·5 + 7·3
        assert_eq!(gas_max_length_general(&p, 2, 7), gas_max_length(&p, 31));
    }

    #[test]
    fn betti_candidate_examples() {
        assert_eq!(
            gas_betti_candidates(&gp(5, 2, 3, 2)),
            Ok(vec![26, 29, 32, 45, 48])
        );
        assert_eq!(gas_betti_candidates(&gp(2, 1, 1, 1)), Ok(vec![6]));
    }

    #[test]
    fn scalar_formula_examples() {
        assert_eq!(gas_min_multiple(&gp(5, 2, 3, 2)), Ok(9));
        assert_eq!(gas_min_multiple(&gp(2, 1, 1, 1)), Ok(3));
        assert_eq!(gas_min_multiple(&gp(8, 2, 3, 3)), Ok(9));

        assert_eq!(gas_catenary(&gp(5, 2, 3, 2)), Ok(9));
        assert_eq!(gas_catenary(&gp(8, 2, 3, 3)), Ok(9));
        assert_eq!(gas_catenary(&gp(2, 1, 1, 1)), Ok(3));

        assert_eq!(gas_tame(&gp(5, 2, 3, 2)), Ok(9));
        assert_eq!(gas_tame(&gp(8, 2, 3, 3)), Ok(11));
        assert_eq!(gas_tame(&gp(2, 1, 1, 1)), Ok(3));

        assert_eq!(gas_frobenius(&gp(5, 2, 3, 2)), Ok(27));
        assert_eq!(gas_frobenius(&gp(2, 1, 1, 1)), Ok(1));
        assert_eq!(gas_frobenius(&gp(8, 2, 3, 3)), Ok(61));
    }

    #[test]
    fn bounds_examples() {
        let p = gp(8, 2, 3, 3);
        let b = gas_bounds(&p).unwrap();
        assert_eq!(b.t_minus_c, 2);
        assert_eq!(b.b_minus_t, Ratio::new(3, 4));
        assert_eq!(b.b - gas_tame(&p).unwrap(), b.b_minus_t);
        assert_eq!(b.b, gas_bound_closed_form(&p).unwrap());

        assert_eq!(gas_bounds(&gp(5, 2, 3, 2)).unwrap().t_minus_c, 0);

        let p = gp(7, 3, 2, 1);
        let b = gas_bounds(&p).unwrap();
        assert_eq!(b.b_minus_t, Ratio::from_integer(0));
        assert_eq!(b.b, Ratio::from_integer(gas_tame(&p).unwrap()));
    }

    #[test]
    fn h1_examples() {
        assert_eq!(gas_h1_check(&gp(5, 1, 3, 2)), Ok(H1Values { c: 6, t: 6 }));
        assert_eq!(gas_h1_check(&gp(8, 1, 3, 3)), Ok(H1Values { c: 6, t: 7 }));
        assert_eq!(gas_h1_check(&gp(2, 1, 1, 1)), Ok(H1Values { c: 3, t: 3 }));
        assert_eq!(gas_h1_check(&gp(5, 2, 3, 2)), Err(Error::HNotOne(2)));
        for p in [
            gp(5, 1, 3, 2),
            gp(8, 1, 3, 3),
            gp(2, 1, 1, 1),
            gp(9, 1, 4, 1),
        ] {
            let v = gas_h1_check(&p).unwrap();
            assert_eq!(v.c, gas_catenary(&p).unwrap());
            assert_eq!(v.t, gas_tame(&p).unwrap());
        }
    }

    #[test]
    fn tame_witness_examples() {
        let w = gas_tame_witness(&gp(5, 2, 3, 2)).unwrap();
        assert_eq!((w.n, w.t), (45, 9));
        assert_eq!(w.z_far, Factorization::new(vec![9, 0, 0]));
        assert!(w.verified());

        let w = gas_tame_witness(&gp(8, 2, 3, 3)).unwrap();
        assert_eq!((w.n, w.t), (88, 11));
        assert_eq!(w.z_far, Factorization::new(vec![11, 0, 0, 0]));
        assert!(w.verified());

        let w = gas_tame_witness(&gp(2, 1, 1, 1)).unwrap();
        assert_eq!((w.n, w.t, w.oracle_distance), (6, 3, 3));
    }
}
