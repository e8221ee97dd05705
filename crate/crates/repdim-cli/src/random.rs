//! Seeded generation of socle-annihilated test modules.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use repdim_core::algebra::Algebra;
use repdim_core::rep::{
    module_radical, module_socle, projective, quotient_by_subspaces, subrep_from_bases, Rep,
};
use repdim_core::transfer::normalize_summands;
use repdim_core::{Error, Matrix, Result};
use std::sync::Arc;

/// A deterministic pseudo-random list of socle-annihilated indecomposable
/// modules, pairwise non-isomorphic, at most `max_summands` of them.
///
/// Candidates are drawn from the radicals of the indecomposable
/// projectives and their subquotients: random submodules (generated by a
/// few random elements) and quotients by random submodules. Everything in
/// sight is annihilated by the socle because rad P is (the socle is killed
/// by the radical over a selfinjective algebra), and sub- and quotient
/// modules inherit the property.
pub fn random_soc_annihilated(
    a: &Arc<Algebra>,
    seed: u64,
    max_summands: usize,
) -> Result<Vec<Rep>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = a.field;
    let soc = a.socle_basis()?;
    let mut pool: Vec<Rep> = Vec::new();
    for v in 0..a.vertex_count() {
        let p = projective(a.clone(), v);
        let (rad, _) = module_radical(&p);
        if rad.is_zero() {
            continue;
        }
        pool.push(rad.clone());
        let (_, soc_incl) = module_socle(&p);
        let (top, _) = quotient_by_subspaces(&p, soc_incl.mats);
        pool.push(top);
        // a few random submodules of rad P: spans of random elements
        for _ in 0..3 {
            let n_gens = rng.gen_range(1..=2usize);
            let mut bases: Vec<Matrix> = rad
                .dims
                .iter()
                .map(|&d| Matrix::zero(field, 0, d))
                .collect();
            for _ in 0..n_gens {
                let w = rng.gen_range(0..a.vertex_count());
                if rad.dims[w] == 0 {
                    continue;
                }
                let row: Vec<_> = (0..rad.dims[w])
                    .map(|_| match field {
                        repdim_core::FieldSpec::Prime(p) => {
                            field.from_int(rng.gen_range(0..p) as i64)
                        }
                        repdim_core::FieldSpec::Rational => {
                            field.from_int(rng.gen_range(-2..=2))
                        }
                    })
                    .collect();
                bases[w] = bases[w].vstack(&Matrix::from_rows(field, vec![row]));
            }
            // close under the arrow action
            let closed = close_under_action(&rad, bases);
            let (sub, _) = subrep_from_bases(&rad, closed.clone());
            if !sub.is_zero() {
                pool.push(sub);
            }
            let (quot, _) = quotient_by_subspaces(&rad, closed);
            if !quot.is_zero() {
                pool.push(quot);
            }
        }
    }
    if pool.is_empty() {
        return Err(Error::ModuleHypothesis(
            "algebra is semisimple, it has no socle-annihilated modules besides zero".into(),
        ));
    }
    let pool: Vec<Rep> = pool
        .into_iter()
        .filter(|m| m.annihilated_by(&soc))
        .collect();
    let indecomposables = normalize_summands(&pool)?;
    // deterministic random subset
    let mut picked: Vec<Rep> = Vec::new();
    let mut order: Vec<usize> = (0..indecomposables.len()).collect();
    for i in (1..order.len()).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    for &i in order.iter().take(max_summands.max(1)) {
        picked.push(indecomposables[i].clone());
    }
    Ok(picked)
}

/// Close per-vertex row spans under the arrow action of `m`.
fn close_under_action(m: &Rep, mut bases: Vec<Matrix>) -> Vec<Matrix> {
    let q = &m.algebra.quiver;
    loop {
        let mut grew = false;
        for (a, arrow) in q.arrows.iter().enumerate() {
            let img = bases[arrow.source].mul(&m.arrow_mats[a]);
            let before = bases[arrow.target].rank();
            let stacked = bases[arrow.target].vstack(&img);
            let rr = stacked.rref();
            if rr.rank > before {
                bases[arrow.target] =
                    rr.reduced.submatrix_rows(&(0..rr.rank).collect::<Vec<_>>());
                grew = true;
            }
        }
        if !grew {
            // reduce every block to basis form once stable
            for b in bases.iter_mut() {
                let rr = b.rref();
                *b = rr.reduced.submatrix_rows(&(0..rr.rank).collect::<Vec<_>>());
            }
            return bases;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::local_scalar;
    use repdim_core::FieldSpec;

    #[test]
    fn random_modules_are_soc_annihilated_and_reproducible() {
        let f = FieldSpec::prime(5).unwrap();
        let a = local_scalar(f, 1).unwrap();
        let soc = a.socle_basis().unwrap();
        for seed in 0..5 {
            let n = random_soc_annihilated(&a, seed, 2).unwrap();
            assert!(!n.is_empty());
            for m in &n {
                assert!(m.annihilated_by(&soc));
                assert!(!m.is_zero());
            }
            let again = random_soc_annihilated(&a, seed, 2).unwrap();
            assert_eq!(
                n.iter().map(|m| m.dims.clone()).collect::<Vec<_>>(),
                again.iter().map(|m| m.dims.clone()).collect::<Vec<_>>()
            );
        }
    }
}
