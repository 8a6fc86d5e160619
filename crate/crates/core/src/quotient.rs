//! The residue ring `S(q) = R / I(q)*Sigma` with exact arithmetic, and
//! Laurent polynomials in `t` over it.
//!
//! Additively `S(q)` is `Z^m / L` where `m` counts the monomials of total
//! degree below the truncation order `c0` and `L` is the saturated lattice
//! of `I(q)*Sigma + Sigma^{c0}`. For `c0 >= e*phi(q) + 1` the tail
//! `Sigma^{c0}` is absorbed into `I(q)*Sigma`; that absorption is a
//! classical theorem imported as a trusted assumption (its low-degree
//! consequences are what the inclusion checks verify), and every report
//! that relies on this ring carries the corresponding flag.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::lattice::{
    BurnsideParams, IdealKind, IdealLattice, MonomialIndex, StabilizationStep, UnitVariant,
};
use crate::laurent::LaurentPoly;
use crate::matrix::Ring;
use crate::trunc::{to_truncated, TruncationContext};
use crate::{CoreError, Result};

/// Text of the trusted-assumption flag attached to every use of `S(q)`.
pub const ABSORPTION_ASSUMPTION: &str =
    "sigma^{e*phi(q)} ⊆ I(q) (classical; verified here only in bounded degree)";

/// The quotient ring `S(q)`, realized over a graded monomial basis.
pub struct QuotientS {
    pub params: BurnsideParams,
    pub rank: usize,
    /// truncation order `c0` (default `e*phi(q) + 1`)
    pub trunc_order: u32,
    pub variant: UnitVariant,
    pub index: MonomialIndex,
    pub lattice: IdealLattice,
    /// additive structure: free rank of `Z^m / L`
    pub free_rank: usize,
    /// nontrivial elementary divisors of `Z^m / L`
    pub divisors: Vec<BigInt>,
    /// product position of basis monomials `i * j`, `None` when truncated
    mono_products: Vec<Vec<Option<usize>>>,
}

impl fmt::Debug for QuotientS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S({}) [rank {}, c0 {}, {}]",
            self.params.q,
            self.rank,
            self.trunc_order,
            self.variant.name()
        )
    }
}

/// Canonical residue vector in the monomial basis of `S(q)`.
pub type Residue = Vec<BigInt>;

impl QuotientS {
    /// Build `S(q)`; `c0` defaults to `e*phi(q) + 1` when `None`.
    ///
    /// Returns the ring together with the SHA-256 of the lattice cache file
    /// used, when a cache directory was supplied.
    pub fn build(
        params: &BurnsideParams,
        rank: usize,
        c0: Option<u32>,
        variant: UnitVariant,
        bound_ceiling: u32,
        cache_dir: Option<&Path>,
    ) -> Result<(Arc<Self>, Option<String>)> {
        params.check_rank(rank)?;
        let min_c0 = params.e_phi() as u32 + 1;
        let c0 = c0.unwrap_or(min_c0);
        if c0 < min_c0 {
            return Err(CoreError::InvalidParameter(format!(
                "c0 = {c0} is below e*phi(q) + 1 = {min_c0}; the truncation tail would not be absorbed"
            )));
        }
        let (lattice, cache_hash) = IdealLattice::load_or_build(
            params,
            rank,
            IdealKind::CyclotomicTimesSigma,
            c0,
            variant,
            bound_ceiling,
            cache_dir,
        )?;
        let index = MonomialIndex::new(rank, c0);
        let m = index.len();
        let mut mono_products = vec![vec![None; m]; m];
        for i in 0..m {
            for j in 0..m {
                let sum: Vec<u32> = index.monomials[i]
                    .iter()
                    .zip(&index.monomials[j])
                    .map(|(a, b)| a + b)
                    .collect();
                mono_products[i][j] = index.position(&sum);
            }
        }
        let (free_rank, divisors) = lattice.basis.quotient_structure();
        Ok((
            Arc::new(QuotientS {
                params: *params,
                rank,
                trunc_order: c0,
                variant,
                index,
                lattice,
                free_rank,
                divisors,
                mono_products,
            }),
            cache_hash,
        ))
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn stabilization(&self) -> &[StabilizationStep] {
        &self.lattice.stabilization
    }

    pub fn zero_residue(&self) -> Residue {
        vec![BigInt::zero(); self.dim()]
    }

    pub fn one_residue(&self) -> Residue {
        let mut v = self.zero_residue();
        v[0] = BigInt::one();
        self.reduce(v)
    }

    pub fn reduce(&self, v: Residue) -> Residue {
        self.lattice.basis.reduce(&v)
    }

    pub fn residue_is_zero(&self, v: &Residue) -> bool {
        v.iter().all(|x| x.is_zero())
    }

    /// Residue of a `t`-free Laurent polynomial.
    pub fn residue_of_poly(&self, f: &LaurentPoly) -> Result<Residue> {
        if !f.is_t_free() {
            return Err(CoreError::UnexpectedT);
        }
        let ctx = TruncationContext::new(self.rank, self.trunc_order, 1)?;
        let image = to_truncated(f, ctx)?;
        Ok(self.reduce(self.index.coords(&image)))
    }

    pub fn add_residues(&self, a: &Residue, b: &Residue) -> Residue {
        self.reduce(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn sub_residues(&self, a: &Residue, b: &Residue) -> Residue {
        self.reduce(a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    pub fn neg_residue(&self, a: &Residue) -> Residue {
        self.reduce(a.iter().map(|x| -x).collect())
    }

    pub fn mul_residues(&self, a: &Residue, b: &Residue) -> Residue {
        let mut acc = vec![BigInt::zero(); self.dim()];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                if let Some(pos) = self.mono_products[i][j] {
                    acc[pos] += ai * bj;
                }
            }
        }
        self.reduce(acc)
    }

    /// Structure constant of the residue ring: the canonical residue of the
    /// product of basis monomials `i` and `j`.
    pub fn structure_constant(&self, i: usize, j: usize) -> Residue {
        let mut v = self.zero_residue();
        if let Some(pos) = self.mono_products[i][j] {
            v[pos] = BigInt::one();
        }
        self.reduce(v)
    }

    /// Print a residue as a polynomial in the shifted basis monomials.
    pub fn describe_residue(&self, v: &Residue) -> String {
        let mut parts = Vec::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = self.index.describe(i);
            if mono == "1" {
                parts.push(c.to_string());
            } else if c.is_one() {
                parts.push(mono);
            } else {
                parts.push(format!("{c}*{mono}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Identity of ring structure: same parameters and same lattice basis.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.params == other.params
            && self.rank == other.rank
            && self.trunc_order == other.trunc_order
            && self.variant == other.variant
            && self.lattice.basis == other.lattice.basis
    }
}

/// `S(q)` as a ring context.
#[derive(Clone)]
pub struct SqRing {
    pub s: Arc<QuotientS>,
}

impl Ring for SqRing {
    type Elem = Residue;

    fn zero(&self) -> Residue {
        self.s.zero_residue()
    }
    fn one(&self) -> Residue {
        self.s.one_residue()
    }
    fn add(&self, a: &Residue, b: &Residue) -> Residue {
        self.s.add_residues(a, b)
    }
    fn sub(&self, a: &Residue, b: &Residue) -> Residue {
        self.s.sub_residues(a, b)
    }
    fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        self.s.mul_residues(a, b)
    }
    fn neg(&self, a: &Residue) -> Residue {
        self.s.neg_residue(a)
    }
    fn is_zero(&self, a: &Residue) -> bool {
        self.s.residue_is_zero(a)
    }
    fn same_context(&self, other: &Self) -> bool {
        self.s.same_structure(&other.s)
    }
    fn describe(&self) -> String {
        format!("S({})", self.s.params.q)
    }
}

/// Laurent polynomial in `t` with `S(q)` coefficients, canonical (no zero
/// residues stored).
#[derive(Clone, PartialEq, Debug)]
pub struct TLaurent {
    terms: BTreeMap<i64, Residue>,
}

impl TLaurent {
    pub fn zero() -> Self {
        TLaurent {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_residue(s: &QuotientS, r: Residue) -> Self {
        let mut t = Self::zero();
        if !s.residue_is_zero(&r) {
            t.terms.insert(0, r);
        }
        t
    }

    /// Residue coefficient of `t^d`.
    pub fn coefficient(&self, s: &QuotientS, d: i64) -> Residue {
        self.terms
            .get(&d)
            .cloned()
            .unwrap_or_else(|| s.zero_residue())
    }

    pub fn t_degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients: the image under `t -> 1`.
    pub fn specialize_t_one(&self, s: &QuotientS) -> Residue {
        let mut acc = s.zero_residue();
        for r in self.terms.values() {
            acc = s.add_residues(&acc, r);
        }
        acc
    }

    pub fn describe(&self, s: &QuotientS) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, r)| {
                let coeff = s.describe_residue(r);
                match d {
                    0 => format!("({coeff})"),
                    1 => format!("({coeff})*t"),
                    _ => format!("({coeff})*t^{d}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// `S(q)[t, t^-1]` as a ring context.
#[derive(Clone)]
pub struct SqtRing {
    pub s: Arc<QuotientS>,
}

impl SqtRing {
    /// Image of a Laurent polynomial (with `t`) in `S(q)[t,t^-1]`.
    pub fn from_laurent(&self, f: &LaurentPoly) -> Result<TLaurent> {
        let mut out = TLaurent::zero();
        for (d, slice) in f.t_slices() {
            let r = self.s.residue_of_poly(&slice)?;
            if !self.s.residue_is_zero(&r) {
                out.terms.insert(d, r);
            }
        }
        Ok(out)
    }
}

impl Ring for SqtRing {
    type Elem = TLaurent;

    fn zero(&self) -> TLaurent {
        TLaurent::zero()
    }

    fn one(&self) -> TLaurent {
        TLaurent::from_residue(&self.s, self.s.one_residue())
    }

    fn add(&self, a: &TLaurent, b: &TLaurent) -> TLaurent {
        let mut out = a.clone();
        for (d, r) in &b.terms {
            let merged = match out.terms.get(d) {
                Some(existing) => self.s.add_residues(existing, r),
                None => r.clone(),
            };
            if self.s.residue_is_zero(&merged) {
                out.terms.remove(d);
            } else {
                out.terms.insert(*d, merged);
            }
        }
        out
    }

    fn sub(&self, a: &TLaurent, b: &TLaurent) -> TLaurent {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &TLaurent, b: &TLaurent) -> TLaurent {
        // accumulate raw products per t-degree, reduce once per slot
        let mut raw: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
        let m = self.s.dim();
        for (da, ra) in &a.terms {
            for (db, rb) in &b.terms {
                let slot = raw.entry(da + db).or_insert_with(|| vec![BigInt::zero(); m]);
                for (i, ai) in ra.iter().enumerate() {
                    if ai.is_zero() {
                        continue;
                    }
                    for (j, bj) in rb.iter().enumerate() {
                        if bj.is_zero() {
                            continue;
                        }
                        if let Some(pos) = self.s.mono_products[i][j] {
                            slot[pos] += ai * bj;
                        }
                    }
                }
            }
        }
        let mut out = TLaurent::zero();
        for (d, v) in raw {
            let r = self.s.reduce(v);
            if !self.s.residue_is_zero(&r) {
                out.terms.insert(d, r);
            }
        }
        out
    }

    fn neg(&self, a: &TLaurent) -> TLaurent {
        TLaurent {
            terms: a
                .terms
                .iter()
                .map(|(d, r)| (*d, self.s.neg_residue(r)))
                .collect(),
        }
    }

    fn is_zero(&self, a: &TLaurent) -> bool {
        a.terms.is_empty()
    }

    fn same_context(&self, other: &Self) -> bool {
        self.s.same_structure(&other.s)
    }

    fn describe(&self) -> String {
        format!("S({})[t,t^-1]", self.s.params.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{cyclotomic_element, UnitMonomial};

    fn s2() -> Arc<QuotientS> {
        let params = BurnsideParams::new(2).unwrap();
        QuotientS::build(&params, 2, None, UnitVariant::IncludeUnitOne, 8, None)
            .unwrap()
            .0
    }

    #[test]
    fn s2_additive_structure() {
        let s = s2();
        assert_eq!(s.trunc_order, 2);
        assert_eq!(s.dim(), 3);
        assert_eq!(s.free_rank, 1);
        assert_eq!(s.divisors, vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn square_of_sigma_vanishes_in_s2() {
        let s = s2();
        let f = LaurentPoly::parse("1 - x", 2).unwrap().pow(2);
        let r = s.residue_of_poly(&f).unwrap();
        assert!(s.residue_is_zero(&r));
    }

    #[test]
    fn one_is_nonzero() {
        let s = s2();
        let r = s.residue_of_poly(&LaurentPoly::one(2)).unwrap();
        assert!(!s.residue_is_zero(&r));
        assert_eq!(s.describe_residue(&r), "1");
    }

    #[test]
    fn cyclotomic_times_sigma_element_is_zero() {
        // (1 + u + ... + u^{q-1}) * (1 - x) maps to 0 in S(q)
        for q in [2u64, 3] {
            let params = BurnsideParams::new(q).unwrap();
            let (s, _) =
                QuotientS::build(&params, 2, None, UnitVariant::IncludeUnitOne, 10, None).unwrap();
            for u in [
                UnitMonomial::new(vec![1, 0]),
                UnitMonomial::new(vec![-2, 1]),
                UnitMonomial::new(vec![0, 3]),
            ] {
                let f = cyclotomic_element(&u, q).mul(&LaurentPoly::parse("1 - x", 2).unwrap());
                let r = s.residue_of_poly(&f).unwrap();
                assert!(s.residue_is_zero(&r), "q={q} u={u:?}");
            }
        }
    }

    #[test]
    fn x_to_the_q_is_one_in_sq() {
        for q in [2u64, 3, 4] {
            let params = BurnsideParams::new(q).unwrap();
            let (s, _) =
                QuotientS::build(&params, 2, None, UnitVariant::IncludeUnitOne, 10, None).unwrap();
            let f = LaurentPoly::var_pow(2, 0, q as i64).sub(&LaurentPoly::one(2));
            let r = s.residue_of_poly(&f).unwrap();
            assert!(s.residue_is_zero(&r), "x^{q} != 1 in S({q})");
        }
    }

    #[test]
    fn ring_laws_on_cheap_samples() {
        let s = s2();
        let ring = SqRing { s: s.clone() };
        let samples: Vec<Residue> = ["1", "x", "y", "1 - x", "x*y", "3 - 2*y^-1"]
            .iter()
            .map(|txt| {
                s.residue_of_poly(&LaurentPoly::parse(txt, 2).unwrap())
                    .unwrap()
            })
            .collect();
        for a in &samples {
            for b in &samples {
                assert_eq!(ring.mul(a, b), ring.mul(b, a));
                for c in &samples {
                    let left = ring.mul(a, &ring.mul(b, c));
                    let right = ring.mul(&ring.mul(a, b), c);
                    assert_eq!(left, right);
                    let dist_l = ring.mul(a, &ring.add(b, c));
                    let dist_r = ring.add(&ring.mul(a, b), &ring.mul(a, c));
                    assert_eq!(dist_l, dist_r);
                }
            }
        }
    }

    #[test]
    fn t_laurent_arithmetic() {
        let s = s2();
        let ring = SqtRing { s: s.clone() };
        let t_poly = LaurentPoly::parse("y*t", 2).unwrap();
        let img = ring.from_laurent(&t_poly).unwrap();
        let tinv = ring
            .from_laurent(&LaurentPoly::parse("y^-1*t^-1", 2).unwrap())
            .unwrap();
        let prod = ring.mul(&img, &tinv);
        assert_eq!(prod, ring.one());
        // t -> 1 specialization sums coefficients
        let mixed = ring
            .from_laurent(&LaurentPoly::parse("x*t + 1 - x", 2).unwrap())
            .unwrap();
        let at_one = mixed.specialize_t_one(&s);
        assert_eq!(at_one, s.one_residue());
    }

    #[test]
    fn structure_constants_match_monomial_products() {
        let s = s2();
        // basis is (1, a, b): 1 * a = a, a * b truncates away at c0 = 2
        let a_residue = s.structure_constant(0, 1);
        assert_eq!(s.describe_residue(&a_residue), "a");
        assert!(s.residue_is_zero(&s.structure_constant(1, 2)));
        // multiplication through structure constants agrees with mul_residues
        let x = s.residue_of_poly(&LaurentPoly::parse("x", 2).unwrap()).unwrap();
        let y = s.residue_of_poly(&LaurentPoly::parse("y", 2).unwrap()).unwrap();
        let mut acc = s.zero_residue();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                let sc = s.structure_constant(i, j);
                for (slot, v) in sc.iter().enumerate() {
                    acc[slot] += xi * yj * v;
                }
            }
        }
        assert_eq!(s.reduce(acc), s.mul_residues(&x, &y));
    }

    #[test]
    fn c0_below_minimum_is_rejected() {
        let params = BurnsideParams::new(3).unwrap();
        let err = QuotientS::build(&params, 2, Some(2), UnitVariant::IncludeUnitOne, 8, None);
        assert!(err.is_err());
    }
}
