//! Right add(M)-approximations, their minimization, and approximation
//! resolutions. The resolution length d of every module certifies the
//! bound repdim <= d + 2.

use crate::decomp::{
    decompose, decompose_with_classes, find_isomorphism, split_by_idempotent, EndAlgebra,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::par::par_map;
use crate::rep::{
    direct_sum, hom_basis, image, injective, kernel, projective, ModuleMorphism, Rep,
};

/// A map f: M0 -> X with M0 a direct sum of summands of M, recorded block
/// by block. Block k is the map from `m_summands[blocks[k].0]`.
pub struct Approximation {
    pub x: Rep,
    pub source: Rep,
    pub map: ModuleMorphism,
    pub blocks: Vec<(usize, ModuleMorphism)>,
    pub minimal: bool,
}

/// The pairwise non-isomorphic indecomposable summands of a module, in the
/// deterministic decomposition order.
pub fn distinct_summands(m: &Rep, seed: u64) -> Result<Vec<Rep>> {
    let dec = decompose_with_classes(m, seed)?;
    Ok(dec.classes.iter().map(|c| dec.summands[c[0]].rep.clone()).collect())
}

/// Assemble an approximation source from a list of blocks.
pub fn assemble(
    m_summands: &[Rep],
    x: &Rep,
    blocks: Vec<(usize, ModuleMorphism)>,
) -> Approximation {
    let algebra = x.algebra.clone();
    let field = algebra.field;
    let parts: Vec<Rep> = blocks.iter().map(|(i, _)| m_summands[*i].clone()).collect();
    let (source, _, _) = direct_sum(algebra.clone(), &parts);
    let mats: Vec<Matrix> = (0..algebra.vertex_count())
        .map(|v| {
            let mut m = Matrix::zero(field, 0, x.dims[v]);
            for (_, f) in &blocks {
                m = m.vstack(&f.mats[v]);
            }
            m
        })
        .collect();
    let map = ModuleMorphism::new(source.clone(), x.clone(), mats);
    Approximation { x: x.clone(), source, map, blocks, minimal: false }
}

/// Whether Hom(M, f) is surjective for f: source -> X, checked summand by
/// summand of M by a rank computation.
pub fn is_approximation(m_summands: &[Rep], f: &ModuleMorphism) -> bool {
    let field = f.source.algebra.field;
    let x = &f.target;
    let checks = par_map(m_summands.to_vec(), |mi| {
        let targets = hom_basis(&mi, x);
        if targets.is_empty() {
            return true;
        }
        let through: Vec<Vec<_>> =
            hom_basis(&mi, &f.source).iter().map(|g| g.compose(f).flatten()).collect();
        if through.is_empty() {
            return false;
        }
        let c = Matrix::from_rows(field, through);
        let t = Matrix::from_rows(field, targets.iter().map(|h| h.flatten()).collect());
        c.row_space_contains(&t)
    });
    checks.into_iter().all(|b| b)
}

/// The universal right add(M)-approximation of X: one copy of each summand
/// M_i per basis element of Hom(M_i, X), mapped by that basis element.
pub fn approximate(m_summands: &[Rep], x: &Rep) -> Approximation {
    let mut blocks = Vec::new();
    for (i, mi) in m_summands.iter().enumerate() {
        for h in hom_basis(mi, x) {
            blocks.push((i, h));
        }
    }
    assemble(m_summands, x, blocks)
}

/// Certificate check for right minimality: every endomorphism of the
/// source killed by the map must lie in the radical of the endomorphism
/// algebra. Returns the offending kernel element coordinates if not.
fn minimality_obstruction(
    end: &EndAlgebra,
    f: &ModuleMorphism,
) -> Result<Option<Matrix>> {
    let field = f.source.algebra.field;
    if end.dim() == 0 {
        return Ok(None);
    }
    let rows: Vec<Vec<_>> = end.basis.iter().map(|b| b.compose(f).flatten()).collect();
    let k = Matrix::from_rows(field, rows).kernel_basis();
    if k.rows == 0 {
        return Ok(None);
    }
    let rad = end.radical()?;
    let solver = rad.solver();
    if (0..k.rows).all(|i| solver.contains(&k.submatrix_rows(&[i]))) {
        Ok(None)
    } else {
        Ok(Some(k))
    }
}

/// Build an idempotent endomorphism e with e then f = 0, given kernel
/// coordinates not contained in the radical. Splitting off its image
/// strictly shrinks the source while keeping the approximation property.
fn idempotent_in_kernel(end: &EndAlgebra, k: &Matrix) -> Result<ModuleMorphism> {
    let field = end.field();
    let (q, _lift, proj) = crate::decomp::AbstractAlgebra::quotient_of_end(end, &end.radical()?);
    let kbar = k.mul(&proj);
    let row = (0..kbar.rows)
        .find(|&i| !kbar.submatrix_rows(&[i]).is_zero())
        .expect("kernel not in radical must project to a nonzero element");
    let ebar = crate::decomp::left_ideal_idempotent(&q, kbar.row(row))?;
    let ebar = Matrix::from_rows(field, vec![ebar]);
    // a representative of ebar inside the kernel left ideal
    let sys = k.mul(&proj);
    let coords = sys
        .solve(&ebar)
        .unwrap()
        .expect("idempotent lies in the image of the kernel ideal");
    let mut e = end.element(&coords.mul(k).row_vec(0));
    let three = field.from_int(3);
    let two = field.from_int(2);
    for _ in 0..64 {
        let e2 = e.compose(&e);
        if e2.sub(&e).is_zero() {
            return Ok(e);
        }
        let e3 = e2.compose(&e);
        // polynomials in e without constant term stay inside the kernel
        e = e2.scale(&three).sub(&e3.scale(&two));
    }
    Err(Error::Check("idempotent lifting did not converge during minimization".into()))
}

/// Strip the approximation down to a right minimal one. Greedy block
/// removal first, then a radical-based certificate; if the certificate
/// fails an idempotent split removes the redundancy and the loop repeats.
pub fn minimize(m_summands: &[Rep], app: Approximation, seed: u64) -> Result<Approximation> {
    let mut app = app;
    loop {
        // drop blocks with large sources first
        let mut order: Vec<usize> = (0..app.blocks.len()).collect();
        order.sort_by_key(|&k| std::cmp::Reverse(m_summands[app.blocks[k].0].total_dim()));
        for k in order {
            let kept: Vec<(usize, ModuleMorphism)> = app
                .blocks
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, b)| b.clone())
                .collect();
            let trial = assemble(m_summands, &app.x, kept);
            if is_approximation(m_summands, &trial.map) {
                app = trial;
                // indices shifted; restart the pass
                return minimize(m_summands, app, seed);
            }
        }
        let end = EndAlgebra::new(&app.source);
        match minimality_obstruction(&end, &app.map)? {
            None => {
                app.minimal = true;
                return Ok(app);
            }
            Some(k) => {
                let e = idempotent_in_kernel(&end, &k)?;
                debug_assert!(e.compose(&app.map).is_zero());
                let id = ModuleMorphism::identity(app.source.clone());
                let (_, keep) = split_by_idempotent(&app.source, &id.sub(&e));
                // the map factors through the kept part exactly
                let restricted = keep.inclusion.compose(&app.map);
                let mut blocks = Vec::new();
                for part in decompose(&keep.rep, seed)? {
                    let (i, iso) = match_summand(m_summands, &part.rep).ok_or_else(|| {
                        Error::Check(
                            "minimized source has a summand outside add M".into(),
                        )
                    })?;
                    blocks.push((i, iso.compose(&part.inclusion).compose(&restricted)));
                }
                let next = assemble(m_summands, &app.x, blocks);
                assert!(next.source.total_dim() < app.source.total_dim());
                app = next;
            }
        }
    }
}

/// Whether f is right minimal: every endomorphism of the source composing
/// to zero with f lies in the radical of the endomorphism algebra.
pub fn is_right_minimal(f: &ModuleMorphism) -> Result<bool> {
    let end = EndAlgebra::new(&f.source);
    Ok(minimality_obstruction(&end, f)?.is_none())
}

/// Match an indecomposable against the summand list, returning the index
/// and an isomorphism from the summand to the module.
pub fn match_summand(m_summands: &[Rep], x: &Rep) -> Option<(usize, ModuleMorphism)> {
    for (i, mi) in m_summands.iter().enumerate() {
        if let Some(iso) = find_isomorphism(mi, x) {
            return Some((i, iso));
        }
    }
    None
}

/// Decompose x and match every indecomposable summand against add M.
/// Returns per-summand (index into m_summands, map m_summands[i] -> x).
pub fn in_add(m_summands: &[Rep], x: &Rep, seed: u64) -> Result<Option<Vec<(usize, ModuleMorphism)>>> {
    if x.is_zero() {
        return Ok(Some(vec![]));
    }
    let mut out = Vec::new();
    for part in decompose(x, seed)? {
        match match_summand(m_summands, &part.rep) {
            Some((i, iso)) => out.push((i, iso.compose(&part.inclusion))),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// M is a generator-cogenerator when every indecomposable projective and
/// injective is isomorphic to one of its summands.
pub fn check_generator_cogenerator(m_summands: &[Rep]) -> Result<()> {
    let algebra = m_summands
        .first()
        .ok_or_else(|| Error::ModuleHypothesis("empty summand list".into()))?
        .algebra
        .clone();
    for v in 0..algebra.vertex_count() {
        let p = projective(algebra.clone(), v);
        if match_summand(m_summands, &p).is_none() {
            return Err(Error::ModuleHypothesis(format!(
                "projective at vertex {} is not a summand of M",
                algebra.quiver.vertices[v]
            )));
        }
        let i = injective(algebra.clone(), v);
        if match_summand(m_summands, &i).is_none() {
            return Err(Error::ModuleHypothesis(format!(
                "injective at vertex {} is not a summand of M",
                algebra.quiver.vertices[v]
            )));
        }
    }
    Ok(())
}

/// An exact chain 0 -> M_d -> ... -> M_0 -> X -> 0 of add(M) modules that
/// stays exact under Hom(M, -). `stages[k]` is the minimal approximation
/// of the k-th kernel; `maps[k]` is the composed chain map.
pub struct ApproximationResolution {
    pub x: Rep,
    pub stages: Vec<Approximation>,
    pub maps: Vec<ModuleMorphism>,
    pub length: usize,
}

/// Build the minimal approximation resolution of x. Every kernel is
/// approximated minimally until some kernel lies in add M; that kernel
/// becomes the last term.
pub fn resolve(m_summands: &[Rep], x: &Rep, cap: usize, seed: u64) -> Result<ApproximationResolution> {
    check_generator_cogenerator(m_summands)?;
    let mut stages: Vec<Approximation> = Vec::new();
    let mut maps: Vec<ModuleMorphism> = Vec::new();
    // current target of the next stage, with its inclusion into the
    // previous source (or identity on x for the first stage)
    let mut target = x.clone();
    let mut incl = ModuleMorphism::identity(x.clone());
    loop {
        if stages.len() > cap {
            return Err(Error::CapExceeded { what: "resolution length".into(), cap });
        }
        if target.is_zero() {
            break;
        }
        if !stages.is_empty() {
            if let Some(blocks) = in_add(m_summands, &target, seed)? {
                // the kernel itself is the last term, included via the
                // isomorphism onto the kernel
                let app = assemble(
                    m_summands,
                    &target,
                    blocks,
                );
                assert!(app.map.is_isomorphism());
                let chain = app.map.compose(&incl);
                let mut last = app;
                last.minimal = true;
                maps.push(chain);
                stages.push(last);
                break;
            }
        }
        let app = minimize(m_summands, approximate(m_summands, &target), seed)?;
        if !app.map.is_surjective() {
            return Err(Error::ModuleHypothesis(
                "approximation is not surjective; M does not generate the target".into(),
            ));
        }
        let chain = app.map.compose(&incl);
        let (ker, ker_incl) = kernel(&app.map);
        maps.push(chain);
        incl = ker_incl;
        target = ker;
        stages.push(app);
    }
    let res = ApproximationResolution {
        x: x.clone(),
        length: stages.len().saturating_sub(1),
        stages,
        maps,
    };
    verify_resolution(m_summands, &res)?;
    Ok(res)
}

/// Independent exactness and Hom(M, -)-exactness verification by rank
/// bookkeeping on the assembled chain.
pub fn verify_resolution(m_summands: &[Rep], res: &ApproximationResolution) -> Result<()> {
    let n = res.maps.len();
    for k in 0..n {
        let f = &res.maps[k];
        // consecutive composites vanish
        if k + 1 < n && !res.maps[k + 1].compose(f).is_zero() {
            return Err(Error::Check(format!("chain composite at stage {k} is nonzero")));
        }
        // exactness: the image of the next map is exactly the kernel
        let ker_dim = f.source.total_dim() - f.rank();
        let next_rank = if k + 1 < n { res.maps[k + 1].rank() } else { 0 };
        if next_rank != ker_dim {
            return Err(Error::Check(format!(
                "chain not exact at stage {k}: kernel {ker_dim}, incoming rank {next_rank}"
            )));
        }
        // exactness after Hom(M, -): the stage map is an approximation of
        // its kernel target, which is what was constructed; re-verify on
        // the chain map image
        let (im, incl) = image(f);
        let to_image: Vec<Matrix> = f
            .mats
            .iter()
            .zip(&incl.mats)
            .map(|(fm, bm)| bm.solve(fm).unwrap().expect("image factorization"))
            .collect();
        let epi = ModuleMorphism::new(f.source.clone(), im, to_image);
        if !is_approximation(m_summands, &epi) {
            return Err(Error::Check(format!(
                "stage {k} is not an approximation of its image"
            )));
        }
    }
    // surjectivity onto x
    if n > 0 && !res.maps[0].is_surjective() {
        return Err(Error::Check("resolution does not surject onto the target".into()));
    }
    if res.x.is_zero() != (n == 0) {
        return Err(Error::Check("resolution length inconsistent with target".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::field::FieldSpec;
    use crate::quiver::{Arrow, Monomial, Quiver, Relation};
    use crate::rep::{module_radical, projective_cover, regular_module, simple};
    use std::sync::Arc;

    fn truncated_poly(field: FieldSpec, n: usize) -> Arc<Algebra> {
        let q = Quiver::new(
            vec!["1".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        )
        .unwrap();
        let xn = Monomial::from_arrows(&q, vec![0; n]).unwrap();
        let rel = Relation::new(&q, vec![(field.one(), xn)]).unwrap();
        Arc::new(Algebra::build(q, field, vec![rel], None).unwrap())
    }

    /// All three indecomposables of K[x]/(x^3): P, rad P, S.
    fn kx3_summands(field: FieldSpec) -> (Arc<Algebra>, Vec<Rep>) {
        let a = truncated_poly(field, 3);
        let p = projective(a.clone(), 0);
        let (r, _) = module_radical(&p);
        let s = simple(a.clone(), 0);
        (a, vec![p, r, s])
    }

    #[test]
    fn universal_approximation_by_regular_module() {
        let f = FieldSpec::prime(5).unwrap();
        let a = truncated_poly(f, 3);
        let reg = regular_module(a.clone());
        let s = simple(a.clone(), 0);
        let app = approximate(&[reg.clone()], &s);
        // Hom(A, S) is one dimensional, so the source is one copy of A
        assert_eq!(app.source.total_dim(), 3);
        assert!(is_approximation(&[reg], &app.map));
    }

    #[test]
    fn minimize_regular_approximation_gives_projective_cover() {
        let f = FieldSpec::prime(5).unwrap();
        let a = truncated_poly(f, 3);
        let reg = regular_module(a.clone());
        let p = projective(a.clone(), 0);
        let (rad, _) = module_radical(&p);
        let app = approximate(&[reg.clone()], &rad);
        assert_eq!(app.blocks.len(), 2); // dim Hom(A, rad P) = 2
        let min = minimize(&[reg.clone()], app, 0).unwrap();
        assert!(min.minimal);
        assert_eq!(min.blocks.len(), 1);
        let (cover, _) = projective_cover(&rad).unwrap();
        assert_eq!(min.source.dims, cover.dims);
        assert!(min.map.is_surjective());
    }

    #[test]
    fn approximation_of_summand_is_isomorphism_after_minimize() {
        let f = FieldSpec::prime(5).unwrap();
        let (_, ms) = kx3_summands(f);
        let x = ms[1].clone(); // rad P is itself a summand of M
        let app = minimize(&ms, approximate(&ms, &x), 0).unwrap();
        assert!(app.map.is_isomorphism());
    }

    #[test]
    fn resolution_lengths_over_kx3() {
        let f = FieldSpec::prime(5).unwrap();
        let (a, ms) = kx3_summands(f);
        // every module is in add M, so every resolution has length 0
        for x in [&ms[0], &ms[1], &ms[2], &regular_module(a.clone())] {
            let res = resolve(&ms, x, 12, 0).unwrap();
            assert_eq!(res.length, 0);
        }
    }

    #[test]
    fn nonterminating_resolution_hits_the_cap() {
        // M = P + S over K[x]/(x^3) is a generator-cogenerator, but the
        // kernel of the minimal approximation of rad P is rad P again, so
        // the resolution never reaches add M
        let f = FieldSpec::prime(5).unwrap();
        let a = truncated_poly(f, 3);
        let p = projective(a.clone(), 0);
        let s = simple(a.clone(), 0);
        let ms = vec![p.clone(), s.clone()];
        let (rad, _) = module_radical(&p);
        match resolve(&ms, &rad, 5, 0) {
            Err(crate::error::Error::CapExceeded { cap, .. }) => assert_eq!(cap, 5),
            other => panic!("expected cap error, got {:?}", other.map(|r| r.length)),
        }
    }

    #[test]
    fn generator_cogenerator_check_rejects_simple_alone() {
        let f = FieldSpec::prime(5).unwrap();
        let a = truncated_poly(f, 3);
        let s = simple(a.clone(), 0);
        assert!(check_generator_cogenerator(&[s]).is_err());
    }

    #[test]
    fn distinct_summands_of_mixed_sum() {
        let f = FieldSpec::prime(5).unwrap();
        let a = truncated_poly(f, 3);
        let p = projective(a.clone(), 0);
        let s = simple(a.clone(), 0);
        let (m, _, _) = direct_sum(a.clone(), &[p, s.clone(), s]);
        let ds = distinct_summands(&m, 0).unwrap();
        assert_eq!(ds.len(), 2);
    }
}
