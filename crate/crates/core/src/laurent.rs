//! Sparse exact multivariate Laurent polynomials over arbitrary-precision
//! integers.
//!
//! A polynomial of rank `k` lives in `Z[x1,x1^-1,...,xk,xk^-1,t,t^-1]`.
//! Exponent vectors have length `k + 1`: slots `0..k` hold the exponents of
//! `x1..xk`, slot `k` holds the exponent of `t`. Elements of the `t`-free
//! subring `R` simply never use the last slot.
//!
//! Canonical form: the term map stores no zero coefficients, and two
//! polynomials are equal iff their term maps are equal. Terms are ordered
//! lexicographically on the exponent vector (`x1` most significant, `t`
//! least), which fixes the printing order.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::{CoreError, Result};

/// Exponent vector of length `rank + 1`; the final slot is the `t` exponent.
pub type ExpVec = Box<[i64]>;

/// Sparse Laurent polynomial in `x1..xk, t` with `BigInt` coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<ExpVec, BigInt>,
}

/// A monomial `x1^{i1} ... xk^{ik}` with coefficient `+1` (no `t` part).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitMonomial {
    exps: Box<[i64]>,
}

impl UnitMonomial {
    pub fn new(exps: Vec<i64>) -> Self {
        UnitMonomial {
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn one(rank: usize) -> Self {
        UnitMonomial {
            exps: vec![0; rank].into_boxed_slice(),
        }
    }

    pub fn rank(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// The corresponding single-term polynomial with coefficient 1.
    pub fn to_poly(&self) -> LaurentPoly {
        let rank = self.exps.len();
        let mut exps = vec![0i64; rank + 1];
        exps[..rank].copy_from_slice(&self.exps);
        LaurentPoly::monomial(rank, &exps, BigInt::one())
    }
}

/// Value a variable may be specialized to: `+1`, `-1`, or a signed unit
/// monomial in the surviving variables.
#[derive(Clone, Debug)]
pub struct SpecValue {
    pub sign: i8,
    /// exponent vector of length rank+1 in the *target* variable indexing
    pub exps: Box<[i64]>,
}

impl SpecValue {
    pub fn int(v: i64, rank: usize) -> Result<Self> {
        match v {
            1 => Ok(SpecValue {
                sign: 1,
                exps: vec![0; rank + 1].into_boxed_slice(),
            }),
            -1 => Ok(SpecValue {
                sign: -1,
                exps: vec![0; rank + 1].into_boxed_slice(),
            }),
            _ => Err(CoreError::NonInvertibleAssignment(format!("{v}"))),
        }
    }

    pub fn unit(mono: &UnitMonomial) -> Self {
        let rank = mono.rank();
        let mut exps = vec![0i64; rank + 1];
        exps[..rank].copy_from_slice(mono.exps());
        SpecValue {
            sign: 1,
            exps: exps.into_boxed_slice(),
        }
    }
}

/// Partial substitution of variables by invertible values.
#[derive(Clone, Debug)]
pub struct Assignment {
    rank: usize,
    values: Vec<Option<SpecValue>>,
}

impl Assignment {
    pub fn new(rank: usize) -> Self {
        Assignment {
            rank,
            values: vec![None; rank + 1],
        }
    }

    /// Assign variable `var` (0-based; `rank` denotes `t`) to `value`.
    pub fn set(mut self, var: usize, value: SpecValue) -> Self {
        assert!(var <= self.rank, "variable index out of range");
        self.values[var] = Some(value);
        self
    }

    pub fn set_int(self, var: usize, v: i64) -> Result<Self> {
        let rank = self.rank;
        SpecValue::int(v, rank).map(|val| self.set(var, val))
    }

    /// `t -> 1`; kills the `t`-grading.
    pub fn t_to_one(rank: usize) -> Self {
        Assignment::new(rank).set_int(rank, 1).expect("1 is invertible")
    }

    /// The rank-2 probe `x = 1, y = t = -1`.
    pub fn sanov() -> Self {
        Assignment::new(2)
            .set_int(0, 1)
            .and_then(|a| a.set_int(1, -1))
            .and_then(|a| a.set_int(2, -1))
            .expect("signs are invertible")
    }
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, BigInt::one())
    }

    pub fn constant(rank: usize, c: BigInt) -> Self {
        let mut p = Self::zero(rank);
        if !c.is_zero() {
            p.terms.insert(vec![0i64; rank + 1].into_boxed_slice(), c);
        }
        p
    }

    pub fn from_i64(rank: usize, c: i64) -> Self {
        Self::constant(rank, BigInt::from(c))
    }

    /// Single term `c * x^exps`; `exps` has length `rank + 1`.
    pub fn monomial(rank: usize, exps: &[i64], c: BigInt) -> Self {
        assert_eq!(exps.len(), rank + 1, "exponent vector length");
        let mut p = Self::zero(rank);
        if !c.is_zero() {
            p.terms.insert(exps.to_vec().into_boxed_slice(), c);
        }
        p
    }

    /// The variable `x_{i+1}` for `i < rank`, or `t` for `i == rank`.
    pub fn var(rank: usize, i: usize) -> Self {
        assert!(i <= rank, "variable index out of range");
        let mut exps = vec![0i64; rank + 1];
        exps[i] = 1;
        Self::monomial(rank, &exps, BigInt::one())
    }

    /// `x_{i+1}^e` (or `t^e` for `i == rank`), `e` may be negative.
    pub fn var_pow(rank: usize, i: usize, e: i64) -> Self {
        assert!(i <= rank, "variable index out of range");
        let mut exps = vec![0i64; rank + 1];
        exps[i] = e;
        Self::monomial(rank, &exps, BigInt::one())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(e, c)| (&e[..], c))
    }

    /// True if no term uses the `t` slot.
    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|e| e[self.rank] == 0)
    }

    /// Audit hook: canonical form stores no zero coefficients.
    pub fn is_canonical(&self) -> bool {
        self.terms.values().all(|c| !c.is_zero())
    }

    fn assert_same_rank(&self, other: &Self) {
        assert_eq!(
            self.rank, other.rank,
            "rank mismatch: {} vs {}",
            self.rank, other.rank
        );
    }

    pub fn checked_same_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(CoreError::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    fn insert_term(terms: &mut BTreeMap<ExpVec, BigInt>, exps: ExpVec, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(exps) {
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

    /// Debug-build audit: results of every operation stay canonical.
    fn audited(self) -> Self {
        debug_assert!(self.is_canonical(), "zero coefficient stored");
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_rank(other);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_term(&mut terms, e.clone(), c.clone());
        }
        LaurentPoly {
            rank: self.rank,
            terms,
        }
        .audited()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_rank(other);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_term(&mut terms, e.clone(), -c.clone());
        }
        LaurentPoly {
            rank: self.rank,
            terms,
        }
        .audited()
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_rank(other);
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: ExpVec = ea
                    .iter()
                    .zip(eb.iter())
                    .map(|(a, b)| a + b)
                    .collect::<Vec<_>>()
                    .into_boxed_slice();
                Self::insert_term(&mut terms, exps, ca * cb);
            }
        }
        LaurentPoly {
            rank: self.rank,
            terms,
        }
        .audited()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k * c))
                .collect(),
        }
    }

    /// `self^n` for `n >= 0` by binary powering.
    pub fn pow(&self, n: u64) -> Self {
        let mut result = Self::one(self.rank);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        result
    }

    /// Apply a partial substitution of variables by `+-1` or unit monomials.
    pub fn specialize(&self, assignment: &Assignment) -> Result<Self> {
        if assignment.rank != self.rank {
            return Err(CoreError::RankMismatch(assignment.rank, self.rank));
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut exps = vec![0i64; self.rank + 1];
            let mut coeff = c.clone();
            for (var, &ev) in e.iter().enumerate() {
                match &assignment.values[var] {
                    None => exps[var] += ev,
                    Some(val) => {
                        if val.sign < 0 && ev.rem_euclid(2) == 1 {
                            coeff = -coeff;
                        }
                        for (slot, &ve) in val.exps.iter().enumerate() {
                            exps[slot] += ve * ev;
                        }
                    }
                }
            }
            Self::insert_term(&mut terms, exps.into_boxed_slice(), coeff);
        }
        Ok(LaurentPoly {
            rank: self.rank,
            terms,
        })
    }

    /// Specialization when every variable (including `t`) has been assigned.
    pub fn specialize_full(&self, assignment: &Assignment) -> Result<BigInt> {
        let p = self.specialize(assignment)?;
        match p.terms.len() {
            0 => Ok(BigInt::zero()),
            1 => {
                let (e, c) = p.terms.iter().next().unwrap();
                if e.iter().all(|&x| x == 0) {
                    Ok(c.clone())
                } else {
                    Err(CoreError::InvalidParameter(
                        "assignment does not cover all variables".into(),
                    ))
                }
            }
            _ => Err(CoreError::InvalidParameter(
                "assignment does not cover all variables".into(),
            )),
        }
    }

    /// Image under the augmentation `x_i -> 1`; `t` is retained.
    pub fn augmentation(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut exps = vec![0i64; self.rank + 1];
            exps[self.rank] = e[self.rank];
            Self::insert_term(&mut terms, exps.into_boxed_slice(), c.clone());
        }
        LaurentPoly {
            rank: self.rank,
            terms,
        }
    }

    /// Split into `t`-degree slices: map `d ->` t-free polynomial coefficient
    /// of `t^d`.
    pub fn t_slices(&self) -> BTreeMap<i64, LaurentPoly> {
        let mut slices: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e[self.rank];
            let mut exps = e.clone();
            exps[self.rank] = 0;
            let slice = slices
                .entry(d)
                .or_insert_with(|| LaurentPoly::zero(self.rank));
            Self::insert_term(&mut slice.terms, exps, c.clone());
        }
        slices.retain(|_, p| !p.is_zero());
        slices
    }

    /// Minimal exponent of each variable over all terms (0 for the zero
    /// polynomial).
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut mins = vec![0i64; self.rank + 1];
        for e in self.terms.keys() {
            for (slot, &v) in e.iter().enumerate() {
                if v < mins[slot] {
                    mins[slot] = v;
                }
            }
        }
        mins
    }

    /// Exact division by `1 - x_j` (variable index `j < rank`), treating the
    /// polynomial as univariate in `x_j` over the remaining variables.
    ///
    /// Returns `None` if the division is not exact.
    pub fn div_one_minus_var(&self, j: usize) -> Option<Self> {
        assert!(j < self.rank, "must divide by a 1 - x_i factor");
        if self.is_zero() {
            return Some(self.clone());
        }
        // Collect coefficients by x_j-degree.
        let mut by_deg: BTreeMap<i64, Vec<(ExpVec, BigInt)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            by_deg.entry(e[j]).or_default().push((e.clone(), c.clone()));
        }
        let lo = *by_deg.keys().next().unwrap();
        let hi = *by_deg.keys().last().unwrap();
        // quotient coefficients b_d satisfy b_d = b_{d-1} + c_d (prefix sums),
        // and exact division requires the running sum to vanish at degree hi.
        let mut quotient = BTreeMap::new();
        let mut running = LaurentPoly::zero(self.rank);
        for d in lo..=hi {
            if let Some(parts) = by_deg.get(&d) {
                for (e, c) in parts {
                    let mut stripped = e.clone();
                    stripped[j] = 0;
                    Self::insert_term(&mut running.terms, stripped, c.clone());
                }
            }
            if d == hi {
                break;
            }
            for (e, c) in &running.terms {
                let mut exps = e.clone();
                exps[j] = d;
                Self::insert_term(&mut quotient, exps, c.clone());
            }
        }
        // after the top degree the running sum equals the full x_j = 1 slice,
        // which must vanish for the division to be exact
        if !running.is_zero() {
            return None;
        }
        Some(LaurentPoly {
            rank: self.rank,
            terms: quotient,
        })
    }
}

/// `1 + u + u^2 + ... + u^{n-1}` for a unit monomial `u`.
pub fn cyclotomic_element(u: &UnitMonomial, n: u64) -> LaurentPoly {
    assert!(n >= 1, "cyclotomic element needs n >= 1");
    let rank = u.rank();
    let mut sum = LaurentPoly::zero(rank);
    let mut power = LaurentPoly::one(rank);
    let u_poly = u.to_poly();
    for _ in 0..n {
        sum = sum.add(&power);
        power = power.mul(&u_poly);
    }
    sum
}

// ---------------------------------------------------------------------------
// printing and parsing
// ---------------------------------------------------------------------------

/// Variable names: `x, y` for rank 2, otherwise `x1..xk`; `t` always last.
pub fn var_name(rank: usize, i: usize) -> String {
    if i == rank {
        return "t".to_string();
    }
    if rank == 2 {
        match i {
            0 => "x".to_string(),
            _ => "y".to_string(),
        }
    } else {
        format!("x{}", i + 1)
    }
}

fn var_index(rank: usize, name: &str) -> Option<usize> {
    if name == "t" {
        return Some(rank);
    }
    match name {
        "x" if rank >= 1 => Some(0),
        "y" if rank >= 2 => Some(1),
        _ => {
            let idx: usize = name.strip_prefix('x')?.parse().ok()?;
            if idx >= 1 && idx <= rank {
                Some(idx - 1)
            } else {
                None
            }
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
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
            for (slot, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                let name = var_name(self.rank, slot);
                if exp == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{exp}"));
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

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly(rank {}: {})", self.rank, self)
    }
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn err(&self, msg: &str) -> CoreError {
        CoreError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .map(|b| b.is_ascii_digit())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.err("expected integer"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse::<BigInt>()
            .map_err(|e| self.err(&format!("bad integer: {e}")))
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .map(|b| b.is_ascii_alphanumeric())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected identifier"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .to_string())
    }
}

impl LaurentPoly {
    /// Parse the textual format, e.g. `1 - x + 2*x^-1*y^3*t^-2`.
    pub fn parse(input: &str, rank: usize) -> Result<Self> {
        let mut lex = Lexer::new(input);
        let mut poly = LaurentPoly::zero(rank);
        // leading sign
        let mut sign = BigInt::one();
        match lex.peek() {
            None => return Ok(poly), // empty input is the zero polynomial
            Some(b'-') => {
                lex.bump();
                sign = -sign;
            }
            Some(b'+') => {
                lex.bump();
            }
            _ => {}
        }
        loop {
            let term = Self::parse_term(&mut lex, rank, sign.clone())?;
            poly = poly.add(&term);
            match lex.peek() {
                None => return Ok(poly),
                Some(b'+') => {
                    lex.bump();
                    sign = BigInt::one();
                }
                Some(b'-') => {
                    lex.bump();
                    sign = -BigInt::one();
                }
                Some(_) => return Err(lex.err("expected + or - between terms")),
            }
        }
    }

    fn parse_term(lex: &mut Lexer, rank: usize, sign: BigInt) -> Result<LaurentPoly> {
        let mut coeff = sign;
        let mut exps = vec![0i64; rank + 1];
        // optional leading integer coefficient
        if lex.peek().map(|b| b.is_ascii_digit()).unwrap_or(false) {
            coeff *= lex.integer()?;
            if lex.peek() == Some(b'*') {
                lex.bump();
            } else {
                return Ok(LaurentPoly::monomial(rank, &exps, coeff));
            }
        }
        loop {
            let name = lex.ident()?;
            let var = var_index(rank, &name)
                .ok_or_else(|| lex.err(&format!("unknown variable `{name}` for rank {rank}")))?;
            let mut exp = 1i64;
            if lex.peek() == Some(b'^') {
                lex.bump();
                let e = lex.integer()?;
                exp = i64::try_from(&e).map_err(|_| lex.err("exponent out of range"))?;
            }
            exps[var] += exp;
            if lex.peek() == Some(b'*') {
                lex.bump();
                continue;
            }
            break;
        }
        Ok(LaurentPoly::monomial(rank, &exps, coeff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LaurentPoly {
        LaurentPoly::var(2, 0)
    }
    fn y() -> LaurentPoly {
        LaurentPoly::var(2, 1)
    }
    fn t() -> LaurentPoly {
        LaurentPoly::var(2, 2)
    }
    fn one() -> LaurentPoly {
        LaurentPoly::one(2)
    }

    #[test]
    fn one_minus_x_times_one_plus_x() {
        let f = one().sub(&x());
        let g = one().add(&x());
        let expect = one().sub(&x().mul(&x()));
        assert_eq!(f.mul(&g), expect);
    }

    #[test]
    fn unit_inverse_cancels() {
        let xinv = LaurentPoly::var_pow(2, 0, -1);
        assert!(x().mul(&xinv).is_one());
    }

    #[test]
    fn additive_inverse_gives_empty_term_map() {
        let f = one().sub(&x());
        let g = x().sub(&one());
        let sum = f.add(&g);
        assert!(sum.is_zero());
        assert_eq!(sum.num_terms(), 0);
    }

    #[test]
    fn augmentation_examples() {
        assert!(one().sub(&x()).augmentation().is_zero());
        let m = x()
            .mul(&x())
            .mul(&LaurentPoly::var_pow(2, 1, -1))
            .mul(&t().pow(3));
        assert_eq!(m.augmentation(), t().pow(3));
        let f = one().add(&x()).add(&x().pow(2));
        assert_eq!(f.augmentation(), LaurentPoly::from_i64(2, 3));
    }

    #[test]
    fn sanov_specialization() {
        let a = Assignment::sanov();
        // 1 - y  ->  2
        let f = one().sub(&y());
        assert_eq!(f.specialize_full(&a).unwrap(), BigInt::from(2));
        // 1 - x*t -> 1 - (1)(-1) = 2
        let g = one().sub(&x().mul(&t()));
        assert_eq!(g.specialize_full(&a).unwrap(), BigInt::from(2));
        // y*t -> 1
        let h = y().mul(&t());
        assert_eq!(h.specialize_full(&a).unwrap(), BigInt::one());
    }

    #[test]
    fn t_to_one_kills_t() {
        let f = one().sub(&x().mul(&t()));
        let spec = f.specialize(&Assignment::t_to_one(2)).unwrap();
        assert_eq!(spec, one().sub(&x()));
    }

    #[test]
    fn specialize_negative_exponent_of_sign_value() {
        // y^-1 at y = -1 must give -1
        let f = LaurentPoly::var_pow(2, 1, -1);
        let a = Assignment::new(2).set_int(1, -1).unwrap();
        let s = f.specialize(&a).unwrap();
        assert_eq!(s, LaurentPoly::from_i64(2, -1));
    }

    #[test]
    fn print_parse_roundtrip_examples() {
        let samples = [
            "0",
            "1",
            "-1",
            "1 - x",
            "-x + 1",
            "2*x^-1*y^3*t^-2 + 1 - x",
            "x*y*t",
            "5",
            "3*y^2 - 7*t^-4",
        ];
        for s in samples {
            let p = LaurentPoly::parse(s, 2).unwrap();
            let printed = p.to_string();
            let reparsed = LaurentPoly::parse(&printed, 2).unwrap();
            assert_eq!(p, reparsed, "roundtrip failed for `{s}` -> `{printed}`");
        }
    }

    #[test]
    fn parse_higher_rank_names() {
        let p = LaurentPoly::parse("x1*x3^-2 + t", 3).unwrap();
        assert_eq!(p.num_terms(), 2);
        let printed = p.to_string();
        assert_eq!(LaurentPoly::parse(&printed, 3).unwrap(), p);
    }

    #[test]
    fn parse_rejects_unknown_variable() {
        assert!(LaurentPoly::parse("z + 1", 2).is_err());
        assert!(LaurentPoly::parse("x3", 2).is_err());
    }

    #[test]
    fn cyclotomic_examples() {
        let u = UnitMonomial::new(vec![1, 0]);
        let c = cyclotomic_element(&u, 2);
        assert_eq!(c, one().add(&x()));
        let u1 = UnitMonomial::one(2);
        assert_eq!(cyclotomic_element(&u1, 3), LaurentPoly::from_i64(2, 3));
        let uxyinv = UnitMonomial::new(vec![1, -1]);
        let c2 = cyclotomic_element(&uxyinv, 2);
        let expect = one().add(&x().mul(&LaurentPoly::var_pow(2, 1, -1)));
        assert_eq!(c2, expect);
    }

    #[test]
    fn div_one_minus_var_exact() {
        // (1-x)*(3 + y) / (1-x)
        let f = one().sub(&x()).mul(&LaurentPoly::from_i64(2, 3).add(&y()));
        let q = f.div_one_minus_var(0).unwrap();
        assert_eq!(q, LaurentPoly::from_i64(2, 3).add(&y()));
        // Laurent case: (1-x)*x^-2*y^-1
        let g = one()
            .sub(&x())
            .mul(&LaurentPoly::var_pow(2, 0, -2))
            .mul(&LaurentPoly::var_pow(2, 1, -1));
        let q2 = g.div_one_minus_var(0).unwrap();
        assert_eq!(q2.mul(&one().sub(&x())), g);
        // non-divisible
        assert!(one().div_one_minus_var(0).is_none());
    }

    #[test]
    #[should_panic(expected = "rank mismatch")]
    fn rank_mismatch_panics() {
        let f = LaurentPoly::one(2);
        let g = LaurentPoly::one(3);
        let _ = f.add(&g);
    }
}
