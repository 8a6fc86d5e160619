//! Rank-k generalization checks: shift-generator shapes, their commuting
//! family, a bounded free-abelian probe, and the rank-restriction guard.

use burnside_core::groups::make_generators;
use burnside_core::lattice::BurnsideParams;
use burnside_core::matrix::{LaurentRing, MatrixOps};

use super::{rng_for, salt};
use crate::{Result, SuiteParams, SuiteReport};

/// The `T_2..T_k` family: pairwise commuting, correct displays, no small
/// multiplicative collapse (free-abelian probe), and the guard refusing
/// quotient suites when the rank exceeds `p + 1`.
pub fn tgens(params: &SuiteParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("tgens", params.echo(None, None, None));
    let ranks: Vec<usize> = if params.rank > 2 {
        vec![params.rank]
    } else {
        vec![3, 4]
    };
    let salt_v = salt("tgens");

    for &rank in &ranks {
        let gens = make_generators(rank)?;
        let ring = LaurentRing { rank };
        let ops = MatrixOps::new(&ring);

        // pairwise commutation, exact
        let mut commuting = true;
        for i in 2..=rank {
            for j in 2..=rank {
                let ij = ops.mul(gens.t(i), gens.t(j))?;
                let ji = ops.mul(gens.t(j), gens.t(i))?;
                if !ops.eq(&ij, &ji)? {
                    commuting = false;
                    report.fail(
                        "shift generators do not commute",
                        format!("rank {rank}: T{i} T{j} != T{j} T{i}"),
                    );
                }
            }
        }
        report.count(&format!("rank{rank}_commuting"), commuting as i64);

        // display shape of T_j: t in the first j-1 diagonal entries,
        // 1 - t in row j before the diagonal, zeros elsewhere
        for j in 2..=rank {
            let tj = gens.t(j);
            let one = burnside_core::laurent::LaurentPoly::one(rank);
            let t_var = burnside_core::laurent::LaurentPoly::var(rank, rank);
            for r in 0..rank {
                for c in 0..rank {
                    let expect = if r == c {
                        if r < j - 1 {
                            t_var.clone()
                        } else {
                            one.clone()
                        }
                    } else if r == j - 1 && c < j - 1 {
                        one.sub(&t_var)
                    } else {
                        burnside_core::laurent::LaurentPoly::zero(rank)
                    };
                    if tj.at(r, c) != &expect {
                        report.fail(
                            "shift generator display mismatch",
                            format!("rank {rank}, T{j} at ({r},{c})"),
                        );
                    }
                }
            }
        }

        // free-abelian probe: nonzero exponent vectors never collapse to I
        let probes = 25u32;
        let mut nontrivial = 0i64;
        for i in 0..probes {
            let mut rng = rng_for(params.seed, salt_v ^ rank as u64, i as u64);
            let mut exps = vec![0i64; rank - 1];
            while exps.iter().all(|&e| e == 0) {
                for e in exps.iter_mut() {
                    *e = rng.range_i64(-5, 5);
                }
            }
            let mut m = ops.identity(rank);
            for (offset, &e) in exps.iter().enumerate() {
                let j = offset + 2;
                let factor = if e >= 0 {
                    ops.pow(gens.t(j), e as u64)?
                } else {
                    ops.pow(gens.t_inv(j), (-e) as u64)?
                };
                m = ops.mul(&m, &factor)?;
            }
            if ops.is_identity(&m) {
                report.fail(
                    "shift-generator product collapsed",
                    format!(
                        "rank {rank}: T-exponents {exps:?} give the identity"
                    ),
                );
            } else {
                nontrivial += 1;
            }
        }
        report.count(&format!("rank{rank}_abelian_probes"), nontrivial);
    }

    // rank guard: quotient suites must refuse ranks above p + 1
    let p2 = BurnsideParams::new(2)?;
    let refused = p2.check_rank(4).is_err();
    report.set_counter("guard_refuses_rank4_q2", refused as i64);
    if !refused {
        report.fail("rank guard accepted rank 4 at q = 2", "check_rank(4)");
    }
    let accepted = BurnsideParams::new(5)?.check_rank(4).is_ok();
    report.set_counter("guard_allows_rank4_q5", accepted as i64);
    if !accepted {
        report.fail("rank guard refused a legal rank", "q = 5 rank 4");
    }
    Ok(report)
}
