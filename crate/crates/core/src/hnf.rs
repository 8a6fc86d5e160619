//! Exact integer lattice linear algebra: row-style Hermite normal form with
//! incremental insertion, membership / canonical-residue reduction, and
//! Smith normal form for elementary divisors.
//!
//! HNF is used everywhere membership and residues matter because it keeps
//! the monomial meaning of coordinates; SNF is only used to report the
//! additive structure of quotients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row-style HNF basis of a sublattice of `Z^m`.
///
/// Invariants: rows sorted by strictly increasing pivot column, pivots
/// positive, entries above each pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfBasis {
    ambient: usize,
    rows: Vec<Vec<BigInt>>,
}

fn first_nonzero(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

impl HnfBasis {
    pub fn empty(ambient: usize) -> Self {
        HnfBasis {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(ambient: usize, rows: impl IntoIterator<Item = Vec<BigInt>>) -> Self {
        let mut basis = Self::empty(ambient);
        for r in rows {
            basis.insert(r);
        }
        basis.normalize();
        basis
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn is_zero_lattice(&self) -> bool {
        self.rows.is_empty()
    }

    /// Insert a vector, restoring the echelon invariant. Entries above
    /// pivots are only reduced on [`normalize`](Self::normalize), which
    /// callers run once after a batch.
    pub fn insert(&mut self, v: Vec<BigInt>) {
        assert_eq!(v.len(), self.ambient, "ambient rank mismatch");
        let mut v = v;
        loop {
            let Some(col) = first_nonzero(&v) else {
                return; // reduced to zero: already in the lattice
            };
            // find the row owning this pivot column, or the insertion point
            let pos = self
                .rows
                .binary_search_by_key(&col, |r| first_nonzero(r).expect("no zero rows stored"));
            match pos {
                Err(at) => {
                    if v[col].is_negative() {
                        for x in v.iter_mut() {
                            *x = -std::mem::take(x);
                        }
                    }
                    self.rows.insert(at, v);
                    return;
                }
                Ok(at) => {
                    let r = &self.rows[at];
                    let rc = r[col].clone();
                    let vc = v[col].clone();
                    if (&vc % &rc).is_zero() {
                        // fast path: just eliminate v's pivot
                        let q = &vc / &rc;
                        for (vi, ri) in v.iter_mut().zip(r.iter()) {
                            *vi -= &q * ri;
                        }
                        continue;
                    }
                    let ext = rc.extended_gcd(&vc);
                    let g = ext.gcd.clone();
                    // new pivot row: x*r + y*v with pivot value g
                    let new_row: Vec<BigInt> = r
                        .iter()
                        .zip(v.iter())
                        .map(|(ri, vi)| &ext.x * ri + &ext.y * vi)
                        .collect();
                    // replacement for v: (rc/g)*v - (vc/g)*r, pivot col vanishes
                    let cr = &rc / &g;
                    let cv = &vc / &g;
                    let new_v: Vec<BigInt> = r
                        .iter()
                        .zip(v.iter())
                        .map(|(ri, vi)| &cr * vi - &cv * ri)
                        .collect();
                    debug_assert!(new_v[col].is_zero());
                    debug_assert_eq!(new_row[col], g);
                    self.rows[at] = new_row;
                    v = new_v;
                }
            }
        }
    }

    /// Restore full canonical form: positive pivots, entries above each
    /// pivot reduced into `[0, pivot)`.
    pub fn normalize(&mut self) {
        for r in &mut self.rows {
            let c = first_nonzero(r).expect("no zero rows stored");
            if r[c].is_negative() {
                for x in r.iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
        }
        // reduce above pivots in increasing pivot-column order, so a later
        // reduction never disturbs an earlier column
        for i in 0..self.rows.len() {
            let (head, tail) = self.rows.split_at_mut(i);
            let pivot_row = &tail[0];
            let c = first_nonzero(pivot_row).unwrap();
            let p = pivot_row[c].clone();
            for r in head.iter_mut() {
                let q = r[c].div_floor(&p);
                if !q.is_zero() {
                    for (ri, pi) in r.iter_mut().zip(pivot_row.iter()) {
                        *ri -= &q * pi;
                    }
                }
            }
        }
    }

    /// Canonical residue of `v` modulo the lattice (floor-reduction at each
    /// pivot). The zero vector is returned exactly when `v` is a member.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ambient, "ambient rank mismatch");
        let mut v = v.to_vec();
        for r in &self.rows {
            let c = first_nonzero(r).unwrap();
            let p = &r[c];
            let q = v[c].div_floor(p);
            if !q.is_zero() {
                for (vi, ri) in v.iter_mut().zip(r.iter()) {
                    *vi -= &q * ri;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Whether every row of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &HnfBasis) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Pivot columns with their pivot values, in column order.
    pub fn pivots(&self) -> Vec<(usize, BigInt)> {
        self.rows
            .iter()
            .map(|r| {
                let c = first_nonzero(r).unwrap();
                (c, r[c].clone())
            })
            .collect()
    }

    /// Elementary divisors of `Z^m / L` that are not 1, via Smith normal
    /// form, plus the free rank.
    pub fn quotient_structure(&self) -> (usize, Vec<BigInt>) {
        let free_rank = self.ambient - self.rows.len();
        let divisors = smith_normal_form(&self.rows, self.ambient);
        let nontrivial: Vec<BigInt> = divisors
            .into_iter()
            .filter(|d| !d.is_zero() && *d != BigInt::from(1))
            .collect();
        (free_rank, nontrivial)
    }
}

/// Diagonal of the Smith normal form of the given rows (nonzero entries,
/// each dividing the next).
pub fn smith_normal_form(rows: &[Vec<BigInt>], ambient: usize) -> Vec<BigInt> {
    let n = rows.len();
    if n == 0 {
        return Vec::new();
    }
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    for r in &a {
        assert_eq!(r.len(), ambient);
    }
    let mut diag = Vec::new();
    let mut k = 0usize;
    while k < n && k < ambient {
        // find the entry of minimal absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in k..n {
            for j in k..ambient {
                if a[i][j].is_zero() {
                    continue;
                }
                match &best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if a[i][j].abs() < a[*bi][*bj].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((bi, bj)) = best else {
            break; // remaining block is zero
        };
        a.swap(k, bi);
        for row in a.iter_mut() {
            row.swap(k, bj);
        }
        // eliminate column and row; restart if a remainder forces a smaller pivot
        let mut clean = true;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let q = a[i][k].div_floor(&a[k][k]);
            for j in k..ambient {
                let s = &q * &a[k][j];
                a[i][j] -= s;
            }
            if !a[i][k].is_zero() {
                clean = false;
            }
        }
        for j in k + 1..ambient {
            if a[k][j].is_zero() {
                continue;
            }
            let q = a[k][j].div_floor(&a[k][k]);
            for row in a.iter_mut().skip(k) {
                let s = &q * &row[k];
                row[j] -= s;
            }
            if !a[k][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // enforce divisibility of the remaining block by the pivot
        let p = a[k][k].clone();
        let mut offender = None;
        'scan: for i in k + 1..n {
            for j in k + 1..ambient {
                if !(&a[i][j] % &p).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            // add the offending row into row k and continue reducing
            for j in k..ambient {
                let add = a[i][j].clone();
                a[k][j] += add;
            }
            continue;
        }
        diag.push(a[k][k].abs());
        k += 1;
    }
    diag
}
