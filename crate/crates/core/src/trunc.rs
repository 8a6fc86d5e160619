//! The shifted adic frame `Z[a1..ak, s] / ((a1..ak)^c + (s)^D)`.
//!
//! Rewriting `x_i = 1 + a_i` and `t = 1 + s` turns augmentation-ideal
//! questions into degree scans: the ideal generated by the `a_i` is
//! monomially graded, so membership in its `m`-th power is simply "every
//! term has total `a`-degree at least `m`". Laurent inverses expand by
//! geometric series that terminate at the truncation, making the rewrite a
//! ring homomorphism onto the truncated quotient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::laurent::LaurentPoly;
use crate::matrix::{Matrix, MatrixOps, Ring};
use crate::{CoreError, Result};

/// Highest packed degree a single variable may reach; keeps field sums
/// carry-free inside a `u64` key.
const MAX_DEGREE: u32 = 127;
/// Packed keys hold `rank` a-slots, one total-degree slot and one s-slot.
const MAX_RANK: usize = 6;

/// Truncation orders: `c` bounds total `a`-degree, `D` bounds `s`-degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationContext {
    pub rank: usize,
    pub c: u32,
    pub d: u32,
}

impl TruncationContext {
    pub fn new(rank: usize, c: u32, d: u32) -> Result<Self> {
        if c < 1 || d < 1 {
            return Err(CoreError::InvalidParameter(
                "truncation orders must be at least 1".into(),
            ));
        }
        if rank > MAX_RANK {
            return Err(CoreError::RankTooLarge {
                rank,
                max: MAX_RANK,
            });
        }
        if c > MAX_DEGREE || d > MAX_DEGREE {
            return Err(CoreError::InvalidParameter(format!(
                "truncation orders must be at most {MAX_DEGREE}"
            )));
        }
        Ok(TruncationContext { rank, c, d })
    }

    /// Key layout: byte `i` in `0..rank` is the degree of `a_{i+1}`, byte
    /// `rank` is the total a-degree, byte `rank + 1` is the s-degree.
    fn pack(&self, a_degs: &[u32], s_deg: u32) -> u64 {
        let mut key = 0u64;
        let mut total = 0u32;
        for (i, &d) in a_degs.iter().enumerate() {
            key |= (d as u64) << (8 * i);
            total += d;
        }
        key |= (total as u64) << (8 * self.rank);
        key |= (s_deg as u64) << (8 * (self.rank + 1));
        key
    }

    fn total_a(&self, key: u64) -> u32 {
        ((key >> (8 * self.rank)) & 0xFF) as u32
    }

    fn s_deg(&self, key: u64) -> u32 {
        ((key >> (8 * (self.rank + 1))) & 0xFF) as u32
    }

    fn a_deg(&self, key: u64, var: usize) -> u32 {
        ((key >> (8 * var)) & 0xFF) as u32
    }

    fn in_bounds(&self, key: u64) -> bool {
        self.total_a(key) < self.c && self.s_deg(key) < self.d
    }
}

/// Element of the truncated quotient, in canonical sparse form.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncPoly {
    ctx: TruncationContext,
    terms: BTreeMap<u64, BigInt>,
}

impl TruncPoly {
    pub fn zero(ctx: TruncationContext) -> Self {
        TruncPoly {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: TruncationContext) -> Self {
        Self::constant(ctx, BigInt::one())
    }

    pub fn constant(ctx: TruncationContext, c: BigInt) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(0, c);
        }
        p
    }

    /// The generator `a_{var+1}` for `var < rank`, or `s` for `var == rank`.
    pub fn shifted_var(ctx: TruncationContext, var: usize) -> Self {
        assert!(var <= ctx.rank);
        let mut p = Self::zero(ctx);
        let key = if var == ctx.rank {
            ctx.pack(&vec![0; ctx.rank], 1)
        } else {
            let mut degs = vec![0u32; ctx.rank];
            degs[var] = 1;
            ctx.pack(&degs, 0)
        };
        if ctx.in_bounds(key) {
            p.terms.insert(key, BigInt::one());
        }
        p
    }

    /// A single monomial `coeff * a^degs * s^s_deg` (dropped if out of bounds).
    pub fn monomial(ctx: TruncationContext, a_degs: &[u32], s_deg: u32, coeff: BigInt) -> Self {
        assert_eq!(a_degs.len(), ctx.rank);
        let mut p = Self::zero(ctx);
        let key = ctx.pack(a_degs, s_deg);
        if ctx.in_bounds(key) && !coeff.is_zero() {
            p.terms.insert(key, coeff);
        }
        p
    }

    pub fn ctx(&self) -> TruncationContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.terms
            .iter()
            .all(|(k, c)| !c.is_zero() && self.ctx.in_bounds(*k))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate terms as `(a_degrees, s_degree, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, u32, &BigInt)> + '_ {
        self.terms.iter().map(move |(k, c)| {
            let degs: Vec<u32> = (0..self.ctx.rank).map(|v| self.ctx.a_deg(*k, v)).collect();
            (degs, self.ctx.s_deg(*k), c)
        })
    }

    fn insert(&mut self, key: u64, c: BigInt) {
        if c.is_zero() || !self.ctx.in_bounds(key) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "truncation context mismatch");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "truncation context mismatch");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(*k, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        TruncPoly {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "truncation context mismatch");
        let mut out = Self::zero(self.ctx);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                // packed fields are carry-free: degrees stay below 128
                let key = ka + kb;
                if self.ctx.in_bounds(key) {
                    out.insert(key, ca * cb);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut result = Self::one(self.ctx);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Minimal total `a`-degree of any term, or `c` when no term exists
    /// below the truncation (the "at least c" answer).
    pub fn sigma_order(&self) -> u32 {
        self.terms
            .keys()
            .map(|k| self.ctx.total_a(*k))
            .min()
            .unwrap_or(self.ctx.c)
    }

    /// The slice of terms with `s`-degree exactly `i`, as an `s`-free element.
    pub fn s_slice(&self, i: u32) -> Self {
        let mut out = Self::zero(self.ctx);
        let shift = 8 * (self.ctx.rank + 1);
        for (k, c) in &self.terms {
            if self.ctx.s_deg(*k) == i {
                out.terms.insert(k & !(0xFFu64 << shift), c.clone());
            }
        }
        out
    }

    /// Largest `s`-degree present (None when zero).
    pub fn max_s_deg(&self) -> Option<u32> {
        self.terms.keys().map(|k| self.ctx.s_deg(*k)).max()
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // sort by exponent tuple (a1..ak, s) for stable output
        let mut terms: Vec<(Vec<u32>, u32, &BigInt)> = self.terms().collect();
        terms.sort_by(|x, y| (&x.0, x.1).cmp(&(&y.0, y.1)));
        let mut first = true;
        for (degs, s, c) in terms {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            for (i, &d) in degs.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                let name = shifted_var_name(self.ctx.rank, i);
                if d == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{d}"));
                }
            }
            if s > 0 {
                if s == 1 {
                    factors.push("s".to_string());
                } else {
                    factors.push(format!("s^{s}"));
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncPoly({})", self)
    }
}

/// Shifted variable names: `a, b` for rank 2, otherwise `a1..ak`.
pub fn shifted_var_name(rank: usize, i: usize) -> String {
    if rank == 2 {
        match i {
            0 => "a".to_string(),
            _ => "b".to_string(),
        }
    } else {
        format!("a{}", i + 1)
    }
}

/// The truncated quotient as a ring context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncRing {
    pub ctx: TruncationContext,
}

impl Ring for TruncRing {
    type Elem = TruncPoly;

    fn zero(&self) -> TruncPoly {
        TruncPoly::zero(self.ctx)
    }
    fn one(&self) -> TruncPoly {
        TruncPoly::one(self.ctx)
    }
    fn add(&self, a: &TruncPoly, b: &TruncPoly) -> TruncPoly {
        a.add(b)
    }
    fn sub(&self, a: &TruncPoly, b: &TruncPoly) -> TruncPoly {
        a.sub(b)
    }
    fn mul(&self, a: &TruncPoly, b: &TruncPoly) -> TruncPoly {
        a.mul(b)
    }
    fn neg(&self, a: &TruncPoly) -> TruncPoly {
        a.neg()
    }
    fn is_zero(&self, a: &TruncPoly) -> bool {
        a.is_zero()
    }
    fn same_context(&self, other: &Self) -> bool {
        self.ctx == other.ctx
    }
    fn describe(&self) -> String {
        format!(
            "Z[a1..a{},s]/((a)^{} + (s)^{})",
            self.ctx.rank, self.ctx.c, self.ctx.d
        )
    }
}

/// Image of a Laurent polynomial under `x_i -> 1 + a_i`, `t -> 1 + s`, with
/// inverses expanded by terminating geometric series.
pub fn to_truncated(f: &LaurentPoly, ctx: TruncationContext) -> Result<TruncPoly> {
    if f.rank() != ctx.rank {
        return Err(CoreError::RankMismatch(f.rank(), ctx.rank));
    }
    let mut cache: BTreeMap<(usize, i64), TruncPoly> = BTreeMap::new();
    let mut out = TruncPoly::zero(ctx);
    for (exps, coeff) in f.terms() {
        let mut term = TruncPoly::constant(ctx, coeff.clone());
        for (var, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = cache
                .entry((var, e))
                .or_insert_with(|| shifted_power(ctx, var, e));
            term = term.mul(p);
            if term.is_zero() {
                break;
            }
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// `(1 + v)^e` truncated, where `v` is `a_{var+1}` or `s`; negative `e`
/// expands `(1 + v)^{-1} = 1 - v + v^2 - ...` first.
fn shifted_power(ctx: TruncationContext, var: usize, e: i64) -> TruncPoly {
    let one_plus = TruncPoly::one(ctx).add(&TruncPoly::shifted_var(ctx, var));
    if e >= 0 {
        return one_plus.pow(e as u64);
    }
    let bound = if var == ctx.rank { ctx.d } else { ctx.c };
    let v = TruncPoly::shifted_var(ctx, var);
    let mut inv = TruncPoly::zero(ctx);
    let mut pow = TruncPoly::one(ctx);
    let mut sign = BigInt::one();
    for _ in 0..bound {
        inv = inv.add(&pow.mul(&TruncPoly::constant(ctx, sign.clone())));
        pow = pow.mul(&v);
        sign = -sign;
        if pow.is_zero() {
            break;
        }
    }
    debug_assert!(inv.mul(&one_plus).sub(&TruncPoly::one(ctx)).is_zero());
    inv.pow((-e) as u64)
}

/// Exact decision procedure for `f ∈ Sigma^m` (the `m`-th power of the
/// augmentation ideal of the `t`-free Laurent ring).
///
/// Multiplies by a positive monomial to clear negative exponents (unit
/// multiplication does not change ideal membership), substitutes
/// `x_i = 1 + a_i` exactly, and scans for the minimal total degree.
pub fn is_in_sigma_power(f: &LaurentPoly, m: u32) -> Result<bool> {
    Ok(exact_sigma_order(f)? >= m as u64)
}

/// Exact minimal total shifted degree of a `t`-free Laurent polynomial
/// (`u64::MAX` for the zero polynomial, which lies in every power).
pub fn exact_sigma_order(f: &LaurentPoly) -> Result<u64> {
    if !f.is_t_free() {
        return Err(CoreError::UnexpectedT);
    }
    if f.is_zero() {
        return Ok(u64::MAX);
    }
    let rank = f.rank();
    let mins = f.min_exponents();
    // clear denominators: multiply by prod x_i^{-min_i}
    let mut cleared = f.clone();
    for (var, &mn) in mins.iter().enumerate().take(rank) {
        if mn < 0 {
            cleared = cleared.mul(&LaurentPoly::var_pow(rank, var, -mn));
        }
    }
    // total degree bound for an exact (non-truncating) expansion
    let mut total: i64 = 1;
    for var in 0..rank {
        let mx = cleared
            .terms()
            .map(|(e, _)| e[var])
            .max()
            .unwrap_or(0);
        total += mx.max(0);
    }
    let c = u32::try_from(total)
        .ok()
        .filter(|&c| c <= MAX_DEGREE)
        .ok_or_else(|| {
            CoreError::InvalidParameter(format!(
                "degree {total} too large for exact shifted expansion"
            ))
        })?;
    let ctx = TruncationContext::new(rank, c, 1)?;
    let image = to_truncated(&cleared, ctx)?;
    debug_assert!(!image.is_zero(), "injective on cleared polynomials");
    Ok(image.sigma_order() as u64)
}

/// Truncation-bounded sigma order of a Laurent polynomial: minimal total
/// `a`-degree of the image, or `c` when nothing survives below `c`.
pub fn sigma_order(f: &LaurentPoly, ctx: TruncationContext) -> Result<u32> {
    Ok(to_truncated(f, ctx)?.sigma_order())
}

/// Minimal sigma order over all entries of a truncated matrix.
pub fn matrix_sigma_order(m: &Matrix<TruncPoly>, ctx: TruncationContext) -> u32 {
    m.entries()
        .iter()
        .map(|e| e.sigma_order())
        .min()
        .unwrap_or(ctx.c)
}

/// The `(t-1)`-series view of a matrix over the truncated frame: constant
/// term plus one coefficient matrix per materialized `s`-power.
#[derive(Clone, Debug)]
pub struct SeriesExpansion {
    pub ctx: TruncationContext,
    /// coefficient of `s^0`; the `t = 1` image
    pub constant: Matrix<TruncPoly>,
    /// coefficient of `s^i` at index `i - 1`, for `1 <= i < D`
    pub coefficients: Vec<Matrix<TruncPoly>>,
}

impl SeriesExpansion {
    /// Split a matrix over the truncated ring by `s`-degree.
    pub fn of_matrix(m: &Matrix<TruncPoly>, ctx: TruncationContext) -> Self {
        let constant = m.map(|e| e.s_slice(0));
        let coefficients = (1..ctx.d)
            .map(|i| m.map(|e| e.s_slice(i)))
            .collect();
        SeriesExpansion {
            ctx,
            constant,
            coefficients,
        }
    }

    /// Reassemble `sum s^i A_i + M_f`; must reproduce the source matrix.
    pub fn reassemble(&self) -> Matrix<TruncPoly> {
        let ring = TruncRing { ctx: self.ctx };
        let ops = MatrixOps::new(&ring);
        let s = TruncPoly::shifted_var(self.ctx, self.ctx.rank);
        let mut acc = self.constant.clone();
        let mut s_pow = s.clone();
        for a in &self.coefficients {
            let scaled = ops.scale(&s_pow, a);
            acc = ops.add(&acc, &scaled).expect("same dims");
            s_pow = s_pow.mul(&s);
        }
        acc
    }

    /// Coefficient matrix of `s^i` (i >= 1), if materialized.
    pub fn coefficient(&self, i: u32) -> Option<&Matrix<TruncPoly>> {
        if i == 0 {
            return Some(&self.constant);
        }
        self.coefficients.get(i as usize - 1)
    }
}

/// `(t-1)`-series of a matrix over `R[t,t^-1]` in the truncated frame:
/// truncate every entry, then split by `s`-degree.
pub fn series_of_laurent_matrix(
    m: &Matrix<LaurentPoly>,
    ctx: TruncationContext,
) -> Result<SeriesExpansion> {
    let truncated = m.try_map(|e| to_truncated(e, ctx))?;
    Ok(SeriesExpansion::of_matrix(&truncated, ctx))
}

/// Exact `(t-1)`-expansion coefficients of a matrix over `R[t,t^-1]`.
///
/// For an entry `sum_d g_d t^d` the coefficient of `(t-1)^i` is
/// `sum_d C(d, i) g_d` with the generalized binomial (exact for negative
/// `d`). Used as an independent route to cross-check the truncated series.
pub fn series_coefficients_exact(
    m: &Matrix<LaurentPoly>,
    rank: usize,
    upto: u32,
) -> Vec<Matrix<LaurentPoly>> {
    (0..upto)
        .map(|i| {
            m.map(|entry| {
                let mut acc = LaurentPoly::zero(rank);
                for (d, slice) in entry.t_slices() {
                    let b = binomial_int(d, i);
                    if !b.is_zero() {
                        acc = acc.add(&slice.scale(&b));
                    }
                }
                acc
            })
        })
        .collect()
}

/// Generalized binomial coefficient `C(n, k)` for integer `n` (possibly
/// negative), nonnegative `k`.
pub fn binomial_int(n: i64, k: u32) -> BigInt {
    let mut c = BigInt::one();
    for j in 1..=k as i64 {
        c *= BigInt::from(n - j + 1);
        let (q, r) = c.div_rem(&BigInt::from(j));
        debug_assert!(r.is_zero());
        c = q;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn ctx(c: u32, d: u32) -> TruncationContext {
        TruncationContext::new(2, c, d).unwrap()
    }

    fn lp(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, 2).unwrap()
    }

    #[test]
    fn one_minus_x_maps_to_minus_a() {
        let t = to_truncated(&lp("1 - x"), ctx(4, 1)).unwrap();
        assert_eq!(t.to_string(), "-a");
    }

    #[test]
    fn x_inverse_geometric_series() {
        let t = to_truncated(&lp("x^-1"), ctx(3, 1)).unwrap();
        assert_eq!(t.to_string(), "1 - a + a^2");
    }

    #[test]
    fn t_inverse_geometric_series() {
        let t = to_truncated(&lp("t^-1"), ctx(1, 3)).unwrap();
        assert_eq!(t.to_string(), "1 - s + s^2");
    }

    #[test]
    fn homomorphism_on_a_product() {
        let f = lp("1 - x + 2*y^-1");
        let g = lp("x*y - t^-2");
        let c = ctx(5, 4);
        let lhs = to_truncated(&f.mul(&g), c).unwrap();
        let rhs = to_truncated(&f, c).unwrap().mul(&to_truncated(&g, c).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sigma_order_examples() {
        let c = ctx(5, 1);
        assert_eq!(sigma_order(&lp("1 - x"), c).unwrap(), 1);
        let f = lp("1 - x").mul(&lp("1 - y"));
        assert_eq!(sigma_order(&f, c).unwrap(), 2);
        assert_eq!(sigma_order(&lp("x"), c).unwrap(), 0);
        // (1-x)^7 truncates away entirely at c = 5
        assert_eq!(sigma_order(&lp("1 - x").pow(7), c).unwrap(), 5);
    }

    #[test]
    fn sigma_power_membership() {
        // -(1-y)^2*(1-x) in Sigma^3
        let f = lp("1 - y").pow(2).mul(&lp("1 - x")).neg();
        assert!(is_in_sigma_power(&f, 3).unwrap());
        assert!(!is_in_sigma_power(&lp("1 - x"), 2).unwrap());
        assert!(is_in_sigma_power(&LaurentPoly::zero(2), 17).unwrap());
        // units have order 0
        assert!(!is_in_sigma_power(&lp("x^-3*y"), 1).unwrap());
        // t is rejected
        assert!(is_in_sigma_power(&lp("t"), 1).is_err());
    }

    #[test]
    fn exact_and_truncated_sigma_order_agree() {
        let f = lp("1 - x").pow(3).mul(&lp("y^-2"));
        assert_eq!(exact_sigma_order(&f).unwrap(), 3);
        assert_eq!(sigma_order(&f, ctx(6, 1)).unwrap(), 3);
    }

    #[test]
    fn s_slices_and_reassembly() {
        let c = ctx(4, 4);
        let ring = TruncRing { ctx: c };
        let entries = vec![
            vec![
                to_truncated(&lp("y*t"), c).unwrap(),
                to_truncated(&lp("0"), c).unwrap(),
            ],
            vec![
                to_truncated(&lp("1 - x*t"), c).unwrap(),
                to_truncated(&lp("1"), c).unwrap(),
            ],
        ];
        let m = Matrix::from_rows(entries);
        let series = SeriesExpansion::of_matrix(&m, c);
        let ops = MatrixOps::new(&ring);
        assert!(ops.eq(&series.reassemble(), &m).unwrap());
        // constant term is the t = 1 image: [[y, 0], [1 - x, 1]]
        assert_eq!(
            series.constant.at(0, 0),
            &to_truncated(&lp("y"), c).unwrap()
        );
        assert_eq!(
            series.constant.at(1, 0),
            &to_truncated(&lp("1 - x"), c).unwrap()
        );
    }

    #[test]
    fn binomial_int_values() {
        assert_eq!(binomial_int(4, 2), BigInt::from(6));
        assert_eq!(binomial_int(-1, 3), BigInt::from(-1));
        assert_eq!(binomial_int(-2, 2), BigInt::from(3));
        assert_eq!(binomial_int(3, 0), BigInt::from(1));
        assert_eq!(binomial_int(2, 5), BigInt::from(0));
    }

    #[test]
    fn exact_series_of_t_Laurent_entry() {
        // t^-1 = 1 - (t-1) + (t-1)^2 - ...
        let m = Matrix::from_rows(vec![vec![lp("t^-1")]]);
        let coeffs = series_coefficients_exact(&m, 2, 4);
        assert_eq!(coeffs[0].at(0, 0), &lp("1"));
        assert_eq!(coeffs[1].at(0, 0), &lp("-1"));
        assert_eq!(coeffs[2].at(0, 0), &lp("1"));
        assert_eq!(coeffs[3].at(0, 0), &lp("-1"));
    }
}
