//! Lattice realization of the cyclotomic ideal `I(q)`, the product
//! `I(q)*Sigma`, and powers of the augmentation ideal, inside the truncated
//! module `Z[a1..ak]/(a)^c`.
//!
//! `I(q)` has one generator `1 + u + ... + u^{q-1}` per positive unit `u`,
//! so there are infinitely many. Modulo `Sigma^c` the generators depend
//! polynomially on the unit exponents, so the span stabilizes at a small
//! exponent bound: saturation enumerates units with exponents bounded by
//! `B` and escalates `B` until the Hermite form is unchanged for two
//! consecutive increments. The stabilization history is recorded so the
//! heuristic stays auditable.

use num_bigint::BigInt;
use num_traits::One;
use sha2::{Digest, Sha256};
use std::fmt;
use std::path::{Path, PathBuf};

use crate::hnf::HnfBasis;
use crate::laurent::{cyclotomic_element, LaurentPoly, UnitMonomial};
use crate::trunc::{to_truncated, TruncPoly, TruncationContext};
use crate::{CoreError, Result};

/// Prime-power exponent data: `q = p^e`, `phi = p^e - p^{e-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BurnsideParams {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub phi: u64,
}

impl BurnsideParams {
    /// Factor `q` as a prime power; errors otherwise.
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(CoreError::NotPrimePower(q));
        }
        let mut p = 0u64;
        let mut n = q;
        for cand in 2..=q {
            if n.is_multiple_of(cand) {
                p = cand;
                break;
            }
        }
        let mut e = 0u32;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if n != 1 {
            return Err(CoreError::NotPrimePower(q));
        }
        let phi = q - q / p;
        Ok(BurnsideParams { p, e, q, phi })
    }

    /// `e * phi(q)`, the augmentation power absorbed by `I(q)`.
    pub fn e_phi(&self) -> u64 {
        self.e as u64 * self.phi
    }

    /// The rank guard: the ideal-theoretic facts used here are only valid
    /// for ranks up to `p + 1`.
    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if (rank as u64) > self.p + 1 {
            return Err(CoreError::RankRestriction {
                rank,
                q: self.q,
                p: self.p,
            });
        }
        Ok(())
    }
}

/// Which ideal family a lattice realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealKind {
    /// the cyclotomic ideal `I(q)`
    Cyclotomic,
    /// the product `I(q) * Sigma`
    CyclotomicTimesSigma,
    /// `Sigma^m`
    SigmaPower(u32),
}

impl IdealKind {
    pub fn name(&self) -> String {
        match self {
            IdealKind::Cyclotomic => "iq".to_string(),
            IdealKind::CyclotomicTimesSigma => "iq-sigma".to_string(),
            IdealKind::SigmaPower(m) => format!("sigma-pow-{m}"),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        if s == "iq" {
            return Ok(IdealKind::Cyclotomic);
        }
        if s == "iq-sigma" {
            return Ok(IdealKind::CyclotomicTimesSigma);
        }
        if let Some(m) = s.strip_prefix("sigma-pow-") {
            let m: u32 = m
                .parse()
                .map_err(|_| CoreError::CacheFormat(format!("bad ideal name `{s}`")))?;
            return Ok(IdealKind::SigmaPower(m));
        }
        Err(CoreError::CacheFormat(format!("bad ideal name `{s}`")))
    }
}

/// Whether the unit `u = 1` contributes cyclotomic generators.
///
/// Reading "u ranges over positive units" literally includes `u = 1`, whose
/// cyclotomic element is the constant `q`. The two readings give different
/// ideals, so both are implemented and every report states which one it
/// used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitVariant {
    IncludeUnitOne,
    ExcludeUnitOne,
}

impl UnitVariant {
    pub fn name(&self) -> &'static str {
        match self {
            UnitVariant::IncludeUnitOne => "include-unit-1",
            UnitVariant::ExcludeUnitOne => "exclude-unit-1",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "include-unit-1" => Ok(UnitVariant::IncludeUnitOne),
            "exclude-unit-1" => Ok(UnitVariant::ExcludeUnitOne),
            _ => Err(CoreError::InvalidParameter(format!(
                "unknown variant `{s}` (expected include-unit-1 or exclude-unit-1)"
            ))),
        }
    }
}

/// Graded monomial basis of `Z[a1..ak]/(a)^c`: all multidegrees with total
/// degree `< c`, ordered by total degree then reverse-lexicographically
/// (so `1, a, b, a^2, ab, b^2, ...` for rank 2).
pub fn monomial_basis(rank: usize, c: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..c {
        let mut degs = Vec::new();
        enumerate_compositions(rank, &mut vec![0; rank], 0, total, &mut degs);
        out.extend(degs);
    }
    out
}

fn enumerate_compositions(
    rank: usize,
    current: &mut Vec<u32>,
    pos: usize,
    remaining: u32,
    out: &mut Vec<Vec<u32>>,
) {
    if pos == rank - 1 {
        current[pos] = remaining;
        out.push(current.clone());
        current[pos] = 0;
        return;
    }
    // larger exponent on earlier variables first: a^2 before ab before b^2
    for d in (0..=remaining).rev() {
        current[pos] = d;
        enumerate_compositions(rank, current, pos + 1, remaining - d, out);
        current[pos] = 0;
    }
}

/// Position lookup for the graded monomial basis.
pub struct MonomialIndex {
    pub rank: usize,
    pub c: u32,
    pub monomials: Vec<Vec<u32>>,
    index: std::collections::HashMap<Vec<u32>, usize>,
}

impl MonomialIndex {
    pub fn new(rank: usize, c: u32) -> Self {
        let monomials = monomial_basis(rank, c);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialIndex {
            rank,
            c,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, degs: &[u32]) -> Option<usize> {
        self.index.get(degs).copied()
    }

    /// Coordinates of an `s`-free truncated element in this basis.
    pub fn coords(&self, t: &TruncPoly) -> Vec<BigInt> {
        let mut v = vec![BigInt::from(0); self.monomials.len()];
        for (degs, s_deg, c) in t.terms() {
            assert_eq!(s_deg, 0, "element must be s-free");
            let pos = self
                .position(&degs)
                .expect("degree below truncation must be in the basis");
            v[pos] = c.clone();
        }
        v
    }

    /// Human-readable name of basis monomial `i`.
    pub fn describe(&self, i: usize) -> String {
        let degs = &self.monomials[i];
        if degs.iter().all(|&d| d == 0) {
            return "1".to_string();
        }
        let mut factors = Vec::new();
        for (v, &d) in degs.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let name = crate::trunc::shifted_var_name(self.rank, v);
            if d == 1 {
                factors.push(name);
            } else {
                factors.push(format!("{name}^{d}"));
            }
        }
        factors.join("*")
    }
}

/// Saturated ideal lattice together with its audit trail.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    pub params: BurnsideParams,
    pub rank: usize,
    pub c: u32,
    pub ideal: IdealKind,
    pub variant: UnitVariant,
    /// final unit exponent bound reached by saturation
    pub unit_bound: u32,
    pub basis: HnfBasis,
    pub stabilization: Vec<StabilizationStep>,
}

/// One saturation round: bound used, basis rank, digest of the canonical
/// basis for cheap comparison in reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationStep {
    pub bound: u32,
    pub rows: usize,
    pub digest: String,
}

fn basis_digest(b: &HnfBasis) -> String {
    let mut h = Sha256::new();
    for row in b.rows() {
        for x in row {
            h.update(x.to_string().as_bytes());
            h.update(b",");
        }
        h.update(b";");
    }
    let out = h.finalize();
    hex_string(&out[..8])
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// All unit monomials with every exponent bounded by `B` in absolute value;
/// `exact` restricts to units where the maximum is attained (the new shell
/// when escalating the bound).
fn unit_shell(rank: usize, bound: u32, exact: bool) -> Vec<UnitMonomial> {
    let mut out = Vec::new();
    let b = bound as i64;
    let mut exps = vec![0i64; rank];
    fn rec(
        rank: usize,
        b: i64,
        exact: bool,
        pos: usize,
        exps: &mut Vec<i64>,
        out: &mut Vec<UnitMonomial>,
    ) {
        if pos == rank {
            let max = exps.iter().map(|e| e.abs()).max().unwrap_or(0);
            if !exact || max == b {
                out.push(UnitMonomial::new(exps.clone()));
            }
            return;
        }
        for e in -b..=b {
            exps[pos] = e;
            rec(rank, b, exact, pos + 1, exps, out);
        }
        exps[pos] = 0;
    }
    rec(rank, b, exact, 0, &mut exps, &mut out);
    out
}

/// Ideal generators contributed by units in the given shell.
fn shell_generators(
    params: &BurnsideParams,
    rank: usize,
    ideal: IdealKind,
    variant: UnitVariant,
    bound: u32,
    exact_shell: bool,
) -> Vec<LaurentPoly> {
    match ideal {
        IdealKind::SigmaPower(m) => {
            if exact_shell {
                // no unit dependence; generators appear once at the first round
                return Vec::new();
            }
            let mut gens = Vec::new();
            let mut degs = Vec::new();
            enumerate_compositions(rank, &mut vec![0; rank], 0, m, &mut degs);
            for d in degs {
                let mut g = LaurentPoly::one(rank);
                for (var, &dv) in d.iter().enumerate() {
                    for _ in 0..dv {
                        g = g.mul(&LaurentPoly::one(rank).sub(&LaurentPoly::var(rank, var)));
                    }
                }
                gens.push(g);
            }
            gens
        }
        IdealKind::Cyclotomic | IdealKind::CyclotomicTimesSigma => {
            let mut gens = Vec::new();
            for u in unit_shell(rank, bound, exact_shell) {
                if variant == UnitVariant::ExcludeUnitOne && u.is_one() {
                    continue;
                }
                let cyc = cyclotomic_element(&u, params.q);
                match ideal {
                    IdealKind::Cyclotomic => gens.push(cyc),
                    IdealKind::CyclotomicTimesSigma => {
                        for var in 0..rank {
                            let sigma_gen =
                                LaurentPoly::one(rank).sub(&LaurentPoly::var(rank, var));
                            gens.push(cyc.mul(&sigma_gen));
                        }
                    }
                    IdealKind::SigmaPower(_) => unreachable!(),
                }
            }
            gens
        }
    }
}

/// Multiply a generator image by every basis monomial and insert the
/// resulting coordinate rows: this spans the full module multiple of the
/// generator inside the truncation.
fn insert_generator_multiples(
    basis: &mut HnfBasis,
    index: &MonomialIndex,
    ctx: TruncationContext,
    gen: &LaurentPoly,
) -> Result<()> {
    let image = to_truncated(gen, ctx)?;
    if image.is_zero() {
        return Ok(());
    }
    for mono in &index.monomials {
        let mut shifted = TruncPoly::monomial(ctx, mono, 0, BigInt::one());
        shifted = shifted.mul(&image);
        if shifted.is_zero() {
            continue;
        }
        basis.insert(index.coords(&shifted));
    }
    Ok(())
}

/// The lattice spanned with unit exponents bounded by exactly `bound`,
/// without any stabilization requirement. Exposed for the monotonicity
/// property: the span can only grow with the bound.
pub fn lattice_at_unit_bound(
    params: &BurnsideParams,
    rank: usize,
    ideal: IdealKind,
    c: u32,
    variant: UnitVariant,
    bound: u32,
) -> Result<HnfBasis> {
    let ctx = TruncationContext::new(rank, c, 1)?;
    let index = MonomialIndex::new(rank, c);
    let mut basis = HnfBasis::empty(index.len());
    for b in 0..=bound {
        for g in shell_generators(params, rank, ideal, variant, b, b > 0) {
            insert_generator_multiples(&mut basis, &index, ctx, &g)?;
        }
    }
    basis.normalize();
    Ok(basis)
}

/// Saturate an ideal lattice at truncation `c`, escalating the unit bound
/// until the Hermite form is unchanged for two consecutive increments.
pub fn saturate_ideal_lattice(
    params: &BurnsideParams,
    rank: usize,
    ideal: IdealKind,
    c: u32,
    variant: UnitVariant,
    bound_ceiling: u32,
) -> Result<IdealLattice> {
    if c < 1 {
        return Err(CoreError::InvalidParameter("c must be >= 1".into()));
    }
    let ctx = TruncationContext::new(rank, c, 1)?;
    let index = MonomialIndex::new(rank, c);
    let mut basis = HnfBasis::empty(index.len());
    let mut history: Vec<StabilizationStep> = Vec::new();
    let mut stable_streak = 0u32;
    let mut bound = 0u32;
    loop {
        let gens = shell_generators(params, rank, ideal, variant, bound, bound > 0);
        for g in &gens {
            insert_generator_multiples(&mut basis, &index, ctx, g)?;
        }
        basis.normalize();
        let digest = basis_digest(&basis);
        let unchanged = history.last().map(|s| s.digest == digest).unwrap_or(false);
        history.push(StabilizationStep {
            bound,
            rows: basis.rank(),
            digest,
        });
        if unchanged {
            stable_streak += 1;
        } else {
            stable_streak = 0;
        }
        // sigma powers have no unit dependence: stable immediately
        if matches!(ideal, IdealKind::SigmaPower(_)) && bound >= 1 {
            break;
        }
        if stable_streak >= 2 {
            break;
        }
        if bound >= bound_ceiling {
            let prev_rows = history[history.len() - 2].rows;
            return Err(CoreError::Unsaturated {
                ceiling: bound_ceiling,
                prev_rows,
                last_rows: basis.rank(),
            });
        }
        bound += 1;
    }
    Ok(IdealLattice {
        params: *params,
        rank,
        c,
        ideal,
        variant,
        unit_bound: bound,
        basis,
        stabilization: history,
    })
}

impl IdealLattice {
    /// Ideal-closure property: multiplying any basis vector (as a truncated
    /// element) by a shifted generator `a_i` lands back in the lattice.
    pub fn is_closed_under_shifts(&self) -> bool {
        let index = MonomialIndex::new(self.rank, self.c);
        for row in self.basis.rows() {
            for var in 0..self.rank {
                let mut shifted = vec![BigInt::from(0); index.len()];
                for (pos, coeff) in row.iter().enumerate() {
                    if coeff == &BigInt::from(0) {
                        continue;
                    }
                    let mut degs = index.monomials[pos].clone();
                    degs[var] += 1;
                    if let Some(target) = index.position(&degs) {
                        shifted[target] = coeff.clone();
                    }
                    // degrees at or above c truncate away
                }
                if !self.basis.contains(&shifted) {
                    return false;
                }
            }
        }
        true
    }

    /// Membership of a `t`-free Laurent polynomial's truncated image.
    ///
    /// A positive answer certifies membership in `ideal + Sigma^c`; a
    /// negative answer certifies non-membership in the ideal itself
    /// (conclusive relative to the recorded saturation).
    pub fn contains_poly(&self, f: &LaurentPoly) -> Result<bool> {
        if !f.is_t_free() {
            return Err(CoreError::UnexpectedT);
        }
        let ctx = TruncationContext::new(self.rank, self.c, 1)?;
        let index = MonomialIndex::new(self.rank, self.c);
        let image = to_truncated(f, ctx)?;
        Ok(self.basis.contains(&index.coords(&image)))
    }

    pub fn contains_coords(&self, v: &[BigInt]) -> bool {
        self.basis.contains(v)
    }

    /// Serialize in the cache format.
    pub fn to_cache_string(&self) -> String {
        let mut out = format!(
            "burnside-lattice v1 q={} c={} ideal={} variant={} B={} m={}\n",
            self.params.q,
            self.c,
            self.ideal.name(),
            self.variant.name(),
            self.unit_bound,
            self.basis.ambient(),
        );
        for row in self.basis.rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn cache_file_name(&self) -> String {
        lattice_cache_file_name(self.params.q, self.rank, self.c, self.ideal, self.variant)
    }

    /// Write into the cache directory, returning the path and the SHA-256
    /// of the file contents.
    pub fn write_cache(&self, dir: &Path) -> Result<(PathBuf, String)> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(self.cache_file_name());
        let text = self.to_cache_string();
        std::fs::write(&path, &text)?;
        Ok((path, sha256_hex(text.as_bytes())))
    }

    /// Parse the cache format; stabilization history is not persisted, so a
    /// loaded lattice records a single synthetic step.
    pub fn from_cache_string(text: &str, rank: usize) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| CoreError::CacheFormat("empty cache file".into()))?;
        let mut fields = header.split_whitespace();
        let magic = fields.next().unwrap_or("");
        let version = fields.next().unwrap_or("");
        if magic != "burnside-lattice" || version != "v1" {
            return Err(CoreError::CacheFormat(format!(
                "bad header `{header}`"
            )));
        }
        let mut q = None;
        let mut c = None;
        let mut ideal = None;
        let mut variant = None;
        let mut bound = None;
        let mut ambient = None;
        for field in fields {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| CoreError::CacheFormat(format!("bad field `{field}`")))?;
            match key {
                "q" => q = Some(value.parse::<u64>().map_err(|e| {
                    CoreError::CacheFormat(format!("bad q: {e}"))
                })?),
                "c" => c = Some(value.parse::<u32>().map_err(|e| {
                    CoreError::CacheFormat(format!("bad c: {e}"))
                })?),
                "ideal" => ideal = Some(IdealKind::parse(value)?),
                "variant" => variant = Some(UnitVariant::parse(value)?),
                "B" => bound = Some(value.parse::<u32>().map_err(|e| {
                    CoreError::CacheFormat(format!("bad B: {e}"))
                })?),
                "m" => ambient = Some(value.parse::<usize>().map_err(|e| {
                    CoreError::CacheFormat(format!("bad m: {e}"))
                })?),
                _ => return Err(CoreError::CacheFormat(format!("unknown field `{key}`"))),
            }
        }
        let (Some(q), Some(c), Some(ideal), Some(variant), Some(bound), Some(ambient)) =
            (q, c, ideal, variant, bound, ambient)
        else {
            return Err(CoreError::CacheFormat("missing header field".into()));
        };
        let params = BurnsideParams::new(q)?;
        let expected = MonomialIndex::new(rank, c).len();
        if expected != ambient {
            return Err(CoreError::CacheFormat(format!(
                "ambient rank {ambient} does not match rank {rank}, c {c} (expected {expected})"
            )));
        }
        let mut rows = Vec::new();
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let row: std::result::Result<Vec<BigInt>, _> = line
                .split_whitespace()
                .map(|tok| tok.parse::<BigInt>())
                .collect();
            let row = row.map_err(|e| CoreError::CacheFormat(format!("bad row: {e}")))?;
            if row.len() != ambient {
                return Err(CoreError::CacheFormat(format!(
                    "row length {} does not match m={ambient}",
                    row.len()
                )));
            }
            rows.push(row);
        }
        let basis = HnfBasis::from_rows(ambient, rows);
        let digest = basis_digest(&basis);
        let step = StabilizationStep {
            bound,
            rows: basis.rank(),
            digest,
        };
        Ok(IdealLattice {
            params,
            rank,
            c,
            ideal,
            variant,
            unit_bound: bound,
            basis,
            stabilization: vec![step],
        })
    }

    /// Load from cache if present, otherwise saturate and write back.
    /// Returns the lattice and the SHA-256 of the cache file used.
    pub fn load_or_build(
        params: &BurnsideParams,
        rank: usize,
        ideal: IdealKind,
        c: u32,
        variant: UnitVariant,
        bound_ceiling: u32,
        cache_dir: Option<&Path>,
    ) -> Result<(Self, Option<String>)> {
        if let Some(dir) = cache_dir {
            let path = dir.join(lattice_cache_file_name(params.q, rank, c, ideal, variant));
            if path.exists() {
                let text = std::fs::read_to_string(&path)?;
                let lattice = Self::from_cache_string(&text, rank)?;
                if lattice.params == *params {
                    return Ok((lattice, Some(sha256_hex(text.as_bytes()))));
                }
            }
            let lattice = saturate_ideal_lattice(params, rank, ideal, c, variant, bound_ceiling)?;
            let (_, hash) = lattice.write_cache(dir)?;
            return Ok((lattice, Some(hash)));
        }
        let lattice = saturate_ideal_lattice(params, rank, ideal, c, variant, bound_ceiling)?;
        Ok((lattice, None))
    }
}

pub fn lattice_cache_file_name(
    q: u64,
    rank: usize,
    c: u32,
    ideal: IdealKind,
    variant: UnitVariant,
) -> String {
    format!(
        "burnside-lattice-q{q}-k{rank}-c{c}-{}-{}.txt",
        ideal.name(),
        variant.name()
    )
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    hex_string(&h.finalize())
}

/// Verdicts of the bounded cyclotomic-inclusion checks.
#[derive(Clone, Debug)]
pub struct InclusionReport {
    pub params: BurnsideParams,
    pub c: u32,
    pub variant: UnitVariant,
    pub unit_bound: u32,
    /// `Sigma^{e phi(q)} ⊆ I(q) + Sigma^c` over all monomial generators
    pub sigma_ephi_included: bool,
    /// witness monomial (as polynomial text) certifying
    /// `Sigma^{e phi(q)-1} ⊄ I(q)`, if one was found
    pub non_inclusion_witness: Option<String>,
    /// optional `p^j Sigma^k ⊆ I(q) + Sigma^c` verdict for supplied `(j, k)`
    pub p_power_clause: Option<PPowerClause>,
    pub stabilization: Vec<StabilizationStep>,
}

#[derive(Clone, Debug)]
pub struct PPowerClause {
    pub j: u32,
    pub k: u32,
    pub included: bool,
}

impl fmt::Display for InclusionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "q={} c={} variant={} B={}",
            self.params.q,
            self.c,
            self.variant.name(),
            self.unit_bound
        )?;
        writeln!(
            f,
            "sigma^{} ⊆ I({}) + sigma^{}: {}",
            self.params.e_phi(),
            self.params.q,
            self.c,
            self.sigma_ephi_included
        )?;
        match &self.non_inclusion_witness {
            Some(w) => writeln!(
                f,
                "sigma^{} ⊄ I({}): witness {}",
                self.params.e_phi() - 1,
                self.params.q,
                w
            )?,
            None => writeln!(f, "no non-inclusion witness found")?,
        }
        if let Some(clause) = &self.p_power_clause {
            writeln!(
                f,
                "{}^{} * sigma^{} ⊆ I({}) + sigma^{}: {}",
                self.params.p, clause.j, clause.k, self.params.q, self.c, clause.included
            )?;
        }
        Ok(())
    }
}

/// Run the bounded inclusion checks against the `I(q)` lattice at level `c`.
///
/// * every monomial of total degree in `[e*phi(q), c)` must reduce to zero
///   (inclusion `Sigma^{e phi} ⊆ I(q) + Sigma^c`);
/// * a monomial of degree `e*phi(q) - 1` outside the lattice certifies the
///   non-inclusion clause;
/// * optionally `p^j Sigma^k ⊆ I(q) + Sigma^c` for a supplied `(j, k)`.
pub fn check_cyclotomic_inclusions(
    params: &BurnsideParams,
    rank: usize,
    c: u32,
    variant: UnitVariant,
    bound_ceiling: u32,
    p_power: Option<(u32, u32)>,
    cache_dir: Option<&Path>,
) -> Result<(InclusionReport, Option<String>)> {
    params.check_rank(rank)?;
    let (lattice, cache_hash) = IdealLattice::load_or_build(
        params,
        rank,
        IdealKind::Cyclotomic,
        c,
        variant,
        bound_ceiling,
        cache_dir,
    )?;
    let index = MonomialIndex::new(rank, c);
    let e_phi = params.e_phi() as u32;

    let mut sigma_included = true;
    for (i, mono) in index.monomials.iter().enumerate() {
        let total: u32 = mono.iter().sum();
        if total < e_phi {
            continue;
        }
        let mut coords = vec![BigInt::from(0); index.len()];
        coords[i] = BigInt::one();
        if !lattice.contains_coords(&coords) {
            sigma_included = false;
            break;
        }
    }

    let mut witness = None;
    if e_phi >= 1 {
        let want = e_phi - 1;
        for (i, mono) in index.monomials.iter().enumerate() {
            let total: u32 = mono.iter().sum();
            if total != want {
                continue;
            }
            let mut coords = vec![BigInt::from(0); index.len()];
            coords[i] = BigInt::one();
            if !lattice.contains_coords(&coords) {
                // present the witness as the corresponding product of (1 - x_i)
                witness = Some(witness_polynomial(rank, mono).to_string());
                break;
            }
        }
    }

    let p_power_clause = p_power.map(|(j, k)| {
        let scale = BigInt::from(params.p).pow(j);
        let mut included = true;
        'outer: for (i, mono) in index.monomials.iter().enumerate() {
            let total: u32 = mono.iter().sum();
            if total < k {
                continue;
            }
            let mut coords = vec![BigInt::from(0); index.len()];
            coords[i] = scale.clone();
            if !lattice.contains_coords(&coords) {
                included = false;
                break 'outer;
            }
        }
        PPowerClause { j, k, included }
    });

    Ok((
        InclusionReport {
            params: *params,
            c,
            variant,
            unit_bound: lattice.unit_bound,
            sigma_ephi_included: sigma_included,
            non_inclusion_witness: witness,
            p_power_clause,
            stabilization: lattice.stabilization.clone(),
        },
        cache_hash,
    ))
}

/// The Laurent polynomial `prod (1 - x_i)^{d_i}` whose truncated image is
/// `(-1)^{|d|} a^d`; used to present witnesses in ring terms.
fn witness_polynomial(rank: usize, degs: &[u32]) -> LaurentPoly {
    let mut f = LaurentPoly::one(rank);
    for (var, &d) in degs.iter().enumerate() {
        for _ in 0..d {
            f = f.mul(&LaurentPoly::one(rank).sub(&LaurentPoly::var(rank, var)));
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn params_factor_prime_powers() {
        let p = BurnsideParams::new(2).unwrap();
        assert_eq!((p.p, p.e, p.phi), (2, 1, 1));
        let p = BurnsideParams::new(4).unwrap();
        assert_eq!((p.p, p.e, p.phi), (2, 2, 2));
        assert_eq!(p.e_phi(), 4);
        let p = BurnsideParams::new(5).unwrap();
        assert_eq!((p.p, p.e, p.phi), (5, 1, 4));
        assert!(BurnsideParams::new(6).is_err());
        assert!(BurnsideParams::new(1).is_err());
        assert!(BurnsideParams::new(12).is_err());
    }

    #[test]
    fn rank_guard() {
        let p2 = BurnsideParams::new(2).unwrap();
        assert!(p2.check_rank(2).is_ok());
        assert!(p2.check_rank(3).is_ok());
        assert!(p2.check_rank(4).is_err());
        let p5 = BurnsideParams::new(5).unwrap();
        assert!(p5.check_rank(6).is_ok());
    }

    #[test]
    fn monomial_basis_order_rank2() {
        let basis = monomial_basis(2, 3);
        let expect: Vec<Vec<u32>> = vec![
            vec![0, 0],
            vec![1, 0],
            vec![0, 1],
            vec![2, 0],
            vec![1, 1],
            vec![0, 2],
        ];
        assert_eq!(basis, expect);
    }

    #[test]
    fn i2_lattice_matches_hand_enumeration() {
        // q = 2, c = 2, include-unit-1: span of images of 1 + u is
        // {2, 2 + a, 2 + b, 2 - a, ...} whose HNF over (1, a, b) is
        // {(2,0,0), (0,1,0), (0,0,1)}
        let params = BurnsideParams::new(2).unwrap();
        let lat = saturate_ideal_lattice(
            &params,
            2,
            IdealKind::Cyclotomic,
            2,
            UnitVariant::IncludeUnitOne,
            8,
        )
        .unwrap();
        assert_eq!(
            lat.basis.rows(),
            &[v(&[2, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]
        );
    }

    #[test]
    fn i2_sigma_lattice_is_2a_2b() {
        let params = BurnsideParams::new(2).unwrap();
        let lat = saturate_ideal_lattice(
            &params,
            2,
            IdealKind::CyclotomicTimesSigma,
            2,
            UnitVariant::IncludeUnitOne,
            8,
        )
        .unwrap();
        assert_eq!(lat.basis.rows(), &[v(&[0, 2, 0]), v(&[0, 0, 2])]);
    }

    #[test]
    fn sigma_power_truncates_to_zero_lattice() {
        let params = BurnsideParams::new(2).unwrap();
        for m in [2u32, 3, 5] {
            let lat = saturate_ideal_lattice(
                &params,
                2,
                IdealKind::SigmaPower(m),
                m.min(2),
                UnitVariant::IncludeUnitOne,
                4,
            )
            .unwrap();
            assert!(lat.basis.is_zero_lattice(), "sigma^{m} below c should vanish");
        }
    }

    #[test]
    fn membership_examples() {
        let params = BurnsideParams::new(2).unwrap();
        let lat = saturate_ideal_lattice(
            &params,
            2,
            IdealKind::Cyclotomic,
            2,
            UnitVariant::IncludeUnitOne,
            8,
        )
        .unwrap();
        // a = -(1 - x) is in the lattice: (1+1) - (1+x) = 1 - x
        let a = LaurentPoly::parse("x - 1", 2).unwrap();
        assert!(lat.contains_poly(&a).unwrap());
        // 1 is not: the constant coordinate has modulus 2
        assert!(!lat.contains_poly(&LaurentPoly::one(2)).unwrap());
        // 0 always is
        assert!(lat.contains_poly(&LaurentPoly::zero(2)).unwrap());
    }

    #[test]
    fn monotone_in_unit_bound() {
        let params = BurnsideParams::new(3).unwrap();
        let mut previous: Option<HnfBasis> = None;
        for bound in 0u32..4 {
            let basis = lattice_at_unit_bound(
                &params,
                2,
                IdealKind::Cyclotomic,
                4,
                UnitVariant::IncludeUnitOne,
                bound,
            )
            .unwrap();
            if let Some(prev) = &previous {
                assert!(basis.contains_lattice(prev));
            }
            previous = Some(basis);
        }
    }

    #[test]
    fn inclusion_report_q2() {
        let params = BurnsideParams::new(2).unwrap();
        let (report, _) =
            check_cyclotomic_inclusions(&params, 2, 3, UnitVariant::IncludeUnitOne, 8, None, None)
                .unwrap();
        assert!(report.sigma_ephi_included);
        // e*phi - 1 = 0: the witness is the unit 1 itself
        assert_eq!(report.non_inclusion_witness.as_deref(), Some("1"));
    }

    #[test]
    fn inclusion_report_q3_witness_at_degree_one() {
        let params = BurnsideParams::new(3).unwrap();
        let (report, _) =
            check_cyclotomic_inclusions(&params, 2, 4, UnitVariant::IncludeUnitOne, 10, None, None)
                .unwrap();
        assert!(report.sigma_ephi_included, "sigma^2 ⊆ I(3) + sigma^4");
        let w = report.non_inclusion_witness.expect("witness must exist");
        assert_eq!(w, "1 - x");
    }

    #[test]
    fn saturated_lattices_are_ideals() {
        for q in [2u64, 3, 4] {
            let params = BurnsideParams::new(q).unwrap();
            let c = params.e_phi() as u32 + 2;
            for ideal in [IdealKind::Cyclotomic, IdealKind::CyclotomicTimesSigma] {
                let lat = saturate_ideal_lattice(
                    &params,
                    2,
                    ideal,
                    c,
                    UnitVariant::IncludeUnitOne,
                    12,
                )
                .unwrap();
                assert!(
                    lat.is_closed_under_shifts(),
                    "q={q} {:?} not closed under shifts",
                    ideal
                );
            }
        }
    }

    #[test]
    fn cache_roundtrip() {
        let params = BurnsideParams::new(2).unwrap();
        let lat = saturate_ideal_lattice(
            &params,
            2,
            IdealKind::CyclotomicTimesSigma,
            2,
            UnitVariant::IncludeUnitOne,
            8,
        )
        .unwrap();
        let text = lat.to_cache_string();
        assert!(text.starts_with(
            "burnside-lattice v1 q=2 c=2 ideal=iq-sigma variant=include-unit-1 B="
        ));
        let loaded = IdealLattice::from_cache_string(&text, 2).unwrap();
        assert_eq!(loaded.basis, lat.basis);
        assert_eq!(loaded.unit_bound, lat.unit_bound);
        assert_eq!(loaded.ideal, lat.ideal);
    }
}
