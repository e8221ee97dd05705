//! Transfer of exact sequences, approximation resolutions, and generators
//! between socle-equivalent selfinjective algebras.
//!
//! Two selfinjective algebras A, A' on the same quiver with A/soc A
//! isomorphic to A'/soc A' share all socle-annihilated modules. Each
//! indecomposable projective P over A pairs with the projective P' over A'
//! at the same vertex: rad P = rad P' and P/soc P = P'/soc P' as modules
//! over the common socle quotient, up to isomorphism. A short exact
//! sequence 0 -> Y -> (blocks) -> X -> 0 with projective blocks is rebuilt
//! over A' by swapping each P for P' and replacing the maps in and out of
//! the swapped block, and whole approximation resolutions and generators
//! follow.
//!
//! When the identifications of rad P with rad P' and of P/soc P with
//! P'/soc P' can be chosen compatibly with the canonical composites
//! rad P -> P -> P/soc P, the replacement maps are written down directly
//! from those identifications. That compatible choice does not always
//! exist: for the four-dimensional local algebras
//! K<x,y>/(x^2, y^2, xy - t yx) it exists between the t and t' algebras
//! only when t' is t or 1/t, i.e. exactly when the algebras are
//! isomorphic, even though all of them have the same socle quotient (the
//! test `no_exact_transfer_of_almost_split_sequence_between_scalar_twists`
//! certifies this by exhausting every candidate pair of replacement maps).
//! When the compatible choice is missing, the transfer falls back to
//! solving for the replacement maps sequence by sequence: first keeping
//! the maps through the non-projective blocks fixed, then, if that leaves
//! no exact rebuild at all, freeing every map while keeping the end terms
//! fixed verbatim. The freed rebuild is enough for resolutions, since each
//! transferred stage is re-verified to be a right minimal approximation.
//! If no exact rebuild is found the transfer reports an obstruction.

use crate::algebra::{Algebra, QuotientAlgebra};
use crate::approx::{is_approximation, is_right_minimal, ApproximationResolution};
use crate::decomp::find_isomorphism;
use crate::endo::{global_dimension, EndoAlgebra, GlDim};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::rep::{
    direct_sum, hom_basis, kernel, module_length, module_socle, projective,
    quotient_by_subspaces, ModuleMorphism, Rep, Representation,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Rebuild a socle-annihilated module over the partner algebra: same
/// vertex spaces and arrow matrices, revalidated against the partner
/// relations.
pub fn reinterpret(x: &Rep, target: &Arc<Algebra>) -> Result<Rep> {
    check_same_quiver(&x.algebra, target)?;
    let soc = x.algebra.socle_basis()?;
    if !x.annihilated_by(&soc) {
        return Err(Error::ModuleHypothesis(
            "module is not annihilated by the socle, cannot change base algebra".into(),
        ));
    }
    Representation::new(target.clone(), x.dims.clone(), x.arrow_mats.clone())
}

fn check_same_quiver(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<()> {
    let qa = &a.quiver;
    let qb = &b.quiver;
    let same = qa.vertices == qb.vertices
        && qa.arrows.len() == qb.arrows.len()
        && qa.arrows.iter().zip(&qb.arrows).all(|(x, y)| {
            x.name == y.name && x.source == y.source && x.target == y.target
        });
    if !same {
        return Err(Error::Input("algebras live on different quivers".into()));
    }
    if a.field != b.field {
        return Err(Error::Input("algebras live over different fields".into()));
    }
    Ok(())
}

/// The per-vertex witness of the projective correspondence.
pub struct ProjectivePair {
    pub p_a: Rep,
    pub p_b: Rep,
    pub rad_a: Rep,
    pub j_a: ModuleMorphism,
    pub rad_b: Rep,
    pub j_b: ModuleMorphism,
    pub top_a: Rep,
    pub pr_a: ModuleMorphism,
    pub top_b: Rep,
    pub pr_b: ModuleMorphism,
    /// Some invertible rad P -> rad P' over the common socle quotient
    /// (the target reinterpreted over A).
    pub rad_iso: ModuleMorphism,
    /// Some invertible P/soc P -> P'/soc P' over the common socle quotient.
    pub top_iso: ModuleMorphism,
    /// A compatible pair (phi, psi) with phi (j' p') = (j p) psi, when one
    /// exists; with it, transferred maps can be written down directly.
    pub compat: Option<(ModuleMorphism, ModuleMorphism)>,
}

impl ProjectivePair {
    /// Human-readable note when no compatible identification exists.
    pub fn obstruction(&self) -> Option<String> {
        if self.compat.is_some() {
            None
        } else {
            Some(
                "no identification of the radicals is compatible with the canonical \
                 maps to the socle quotient; transfers fall back to solving per sequence"
                    .to_string(),
            )
        }
    }
}

/// A verified socle equivalence: an algebra isomorphism between the socle
/// quotients plus the projective correspondence at every vertex.
pub struct SocleIdentification {
    pub a: Arc<Algebra>,
    pub b: Arc<Algebra>,
    pub qa: QuotientAlgebra,
    pub qb: QuotientAlgebra,
    /// Row-vector map from A/soc coordinates to A'/soc coordinates.
    pub iso: Matrix,
    pub pairs: Vec<ProjectivePair>,
}

/// Verify a candidate identification A/soc A = A'/soc A'. `None` means
/// identity on the monomial bases, which requires the two socle quotients
/// to pick the same normal monomials.
pub fn verify_identification(
    a: &Arc<Algebra>,
    b: &Arc<Algebra>,
    candidate: Option<Matrix>,
) -> Result<SocleIdentification> {
    check_same_quiver(a, b)?;
    let field = a.field;
    let qa = QuotientAlgebra::new(a, a.socle_basis()?)?;
    let qb = QuotientAlgebra::new(b, b.socle_basis()?)?;
    if qa.dim != qb.dim {
        return Err(Error::NotSocleEquivalent(format!(
            "socle quotients have different dimensions {} and {}",
            qa.dim, qb.dim
        )));
    }
    let iso = match candidate {
        Some(m) => {
            if m.rows != qa.dim || m.cols != qb.dim {
                return Err(Error::Input("identification matrix has wrong shape".into()));
            }
            m
        }
        None => {
            // identity on monomials needs matching quotient bases
            let ma = quotient_basis_monomials(a, &qa);
            let mb = quotient_basis_monomials(b, &qb);
            if ma != mb {
                return Err(Error::NotSocleEquivalent(
                    "socle quotients have different monomial bases; supply an explicit map"
                        .into(),
                ));
            }
            Matrix::identity(field, qa.dim)
        }
    };
    if iso.inverse().is_none() {
        return Err(Error::NotSocleEquivalent("identification map is singular".into()));
    }
    let apply = |x: &[Scalar]| Matrix::from_rows(field, vec![x.to_vec()]).mul(&iso).row_vec(0);
    if apply(&qa.project(&a.unit())) != qb.project(&b.unit()) {
        return Err(Error::NotSocleEquivalent("identification map is not unital".into()));
    }
    for i in 0..qa.dim {
        for j in 0..qa.dim {
            let mut ei = vec![field.zero(); qa.dim];
            ei[i] = field.one();
            let mut ej = vec![field.zero(); qa.dim];
            ej[j] = field.one();
            let lhs = apply(&qa.mult(&ei, &ej));
            let rhs = qb.mult(&apply(&ei), &apply(&ej));
            if lhs != rhs {
                return Err(Error::NotSocleEquivalent(format!(
                    "identification map is not multiplicative on basis pair ({i}, {j})"
                )));
            }
        }
    }
    // modules transfer with their matrices unchanged, which needs the map
    // to match up the arrow classes and the vertex classes
    for v in 0..a.vertex_count() {
        if apply(&qa.project(&a.idempotent(v))) != qb.project(&b.idempotent(v)) {
            return Err(Error::NotSocleEquivalent(format!(
                "identification map moves the class of the idempotent at vertex {v}"
            )));
        }
    }
    for ai in 0..a.quiver.arrows.len() {
        if apply(&qa.project(&a.arrow_element(ai))) != qb.project(&b.arrow_element(ai)) {
            return Err(Error::NotSocleEquivalent(format!(
                "identification map moves the class of arrow {}",
                a.quiver.arrows[ai].name
            )));
        }
    }
    let mut pairs = Vec::new();
    for v in 0..a.vertex_count() {
        pairs.push(build_pair(a, b, v)?);
    }
    Ok(SocleIdentification { a: a.clone(), b: b.clone(), qa, qb, iso, pairs })
}

fn quotient_basis_monomials(a: &Arc<Algebra>, q: &QuotientAlgebra) -> Vec<String> {
    (0..q.dim)
        .map(|k| {
            let row = q.lift.row(k);
            let idx = row.iter().position(|c| !c.is_zero()).unwrap();
            format!("{:?}", a.basis[idx])
        })
        .collect()
}

fn top_by_socle(p: &Rep) -> (Rep, ModuleMorphism) {
    let (_, incl) = module_socle(p);
    quotient_by_subspaces(p, incl.mats.clone())
}

fn build_pair(a: &Arc<Algebra>, b: &Arc<Algebra>, v: usize) -> Result<ProjectivePair> {
    let field = a.field;
    let p_a = projective(a.clone(), v);
    let p_b = projective(b.clone(), v);
    let (rad_a, j_a) = crate::rep::module_radical(&p_a);
    let (rad_b, j_b) = crate::rep::module_radical(&p_b);
    let (top_a, pr_a) = top_by_socle(&p_a);
    let (top_b, pr_b) = top_by_socle(&p_b);
    if module_length(&p_a) != module_length(&p_b) {
        return Err(Error::NotSocleEquivalent(format!(
            "projectives at vertex {v} have different composition lengths"
        )));
    }
    let rad_b_as_a = reinterpret(&rad_b, a)?;
    let top_b_as_a = reinterpret(&top_b, a)?;
    let psi0 = find_isomorphism(&top_a, &top_b_as_a).ok_or_else(|| {
        Error::NotSocleEquivalent(format!(
            "P/soc P and P'/soc P' are not isomorphic at vertex {v}"
        ))
    })?;
    // search for a compatible pair: psi: P/soc P -> P'/soc P' invertible
    // and phi: rad P -> rad P' invertible with phi (j' p') = (j p) psi.
    // For each candidate psi the condition is linear in phi; psi ranges
    // over its whole hom space when that space is small enough, making a
    // negative answer an exhaustive certificate.
    let homs = hom_basis(&rad_a, &rad_b_as_a);
    let top_homs = hom_basis(&top_a, &top_b_as_a);
    let n = a.vertex_count();
    let k_mats: Vec<Matrix> = (0..n).map(|w| j_b.mats[w].mul(&pr_b.mats[w])).collect();
    let flatten = |mats: &[Matrix]| {
        let mut out = Vec::new();
        for m in mats {
            out.extend(m.entries().to_vec());
        }
        out
    };
    if homs.is_empty() {
        // both radicals are zero only for semisimple input
        if rad_a.total_dim() == 0 && rad_b.total_dim() == 0 {
            let phi = ModuleMorphism::zero(rad_a.clone(), rad_b_as_a.clone());
            return Ok(ProjectivePair {
                p_a, p_b, rad_a, j_a, rad_b, j_b, top_a, pr_a, top_b, pr_b,
                rad_iso: phi.clone(),
                top_iso: psi0.clone(),
                compat: Some((phi, psi0)),
            });
        }
        return Err(Error::NotSocleEquivalent(format!(
            "no candidate map between the radicals at vertex {v}"
        )));
    }
    let rows: Vec<Vec<Scalar>> = homs
        .iter()
        .map(|h| {
            let prods: Vec<Matrix> =
                (0..n).map(|w| h.mats[w].mul(&k_mats[w])).collect();
            flatten(&prods)
        })
        .collect();
    let sys = Matrix::from_rows(field, rows);
    let freedom = sys.kernel_basis();
    let build = |coords: &[Scalar]| {
        let mut f = ModuleMorphism::zero(rad_a.clone(), rad_b_as_a.clone());
        for (c, h) in coords.iter().zip(&homs) {
            if !c.is_zero() {
                f = f.add(&h.scale(c));
            }
        }
        f
    };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let psi_exhaustive = match field {
        FieldSpec::Prime(p) => (p as f64).powi(top_homs.len() as i32) <= 20_000.0,
        FieldSpec::Rational => false,
    };
    let mut psi_candidates: Vec<ModuleMorphism> = Vec::new();
    if psi_exhaustive {
        let p = match field {
            FieldSpec::Prime(p) => p as usize,
            FieldSpec::Rational => unreachable!(),
        };
        for idx in 0..p.pow(top_homs.len() as u32) {
            let mut m = ModuleMorphism::zero(top_a.clone(), top_b_as_a.clone());
            let mut t = idx;
            for h in &top_homs {
                let c = t % p;
                t /= p;
                if c != 0 {
                    m = m.add(&h.scale(&field.from_int(c as i64)));
                }
            }
            psi_candidates.push(m);
        }
    } else {
        psi_candidates.push(psi0.clone());
        for _ in 0..64 {
            let mut m = ModuleMorphism::zero(top_a.clone(), top_b_as_a.clone());
            for h in &top_homs {
                let s = random_scalar(field, &mut rng);
                if !s.is_zero() {
                    m = m.add(&h.scale(&s));
                }
            }
            psi_candidates.push(m);
        }
    }
    let mut compat = None;
    'psis: for psi in &psi_candidates {
        if !psi.is_isomorphism() {
            continue;
        }
        let r_mats: Vec<Matrix> =
            (0..n).map(|w| j_a.mats[w].mul(&pr_a.mats[w]).mul(&psi.mats[w])).collect();
        let rhs = Matrix::from_rows(field, vec![flatten(&r_mats)]);
        let Some(sol) = sys.solve(&rhs)? else { continue };
        let particular = sol.row_vec(0);
        // enumerate the affine solution space exhaustively when small, so
        // a missing compatible pair is a certificate, not a sampling miss
        let phi_exhaustive = match field {
            FieldSpec::Prime(p) => (p as f64).powi(freedom.rows as i32) <= 20_000.0,
            FieldSpec::Rational => false,
        };
        let mut candidates: Vec<Vec<Scalar>> = Vec::new();
        if phi_exhaustive {
            let p = match field {
                FieldSpec::Prime(p) => p as usize,
                FieldSpec::Rational => unreachable!(),
            };
            for idx in 0..p.pow(freedom.rows as u32) {
                let mut c = particular.clone();
                let mut t = idx;
                for r in 0..freedom.rows {
                    let s = field.from_int((t % p) as i64);
                    t /= p;
                    if !s.is_zero() {
                        for (x, y) in c.iter_mut().zip(freedom.row(r)) {
                            *x = x.add(&s.mul(y));
                        }
                    }
                }
                candidates.push(c);
            }
        } else {
            candidates.push(particular.clone());
            for r in 0..freedom.rows {
                let mut c = particular.clone();
                for (x, y) in c.iter_mut().zip(freedom.row(r)) {
                    *x = x.add(y);
                }
                candidates.push(c);
            }
            for _ in 0..64 {
                let mut c = particular.clone();
                for r in 0..freedom.rows {
                    let s = random_scalar(field, &mut rng);
                    for (x, y) in c.iter_mut().zip(freedom.row(r)) {
                        *x = x.add(&s.mul(y));
                    }
                }
                candidates.push(c);
            }
        }
        for c in candidates {
            let phi = build(&c);
            if phi.is_isomorphism() {
                // the compatibility identity holds exactly by
                // construction; assert it anyway
                for w in 0..n {
                    assert_eq!(
                        phi.mats[w].mul(&k_mats[w]).entries().to_vec(),
                        r_mats[w].entries().to_vec()
                    );
                }
                compat = Some((phi, psi.clone()));
                break 'psis;
            }
        }
    }
    let rad_iso = match &compat {
        Some((phi, _)) => phi.clone(),
        None => find_isomorphism(&rad_a, &rad_b_as_a).ok_or_else(|| {
            Error::NotSocleEquivalent(format!(
                "rad P and rad P' are not isomorphic at vertex {v}"
            ))
        })?,
    };
    let top_iso = match &compat {
        Some((_, psi)) => psi.clone(),
        None => psi0,
    };
    Ok(ProjectivePair {
        p_a, p_b, rad_a, j_a, rad_b, j_b, top_a, pr_a, top_b, pr_b,
        rad_iso,
        top_iso,
        compat,
    })
}

/// One block of a short exact sequence middle term.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BlockKind {
    /// A socle-annihilated block; transfers verbatim.
    Plain,
    /// The indecomposable projective at this vertex; swapped for the
    /// partner projective.
    Projective(usize),
}

/// A short exact sequence 0 -> Y -> (+ blocks) -> X -> 0 with the middle
/// term kept blockwise.
pub struct BlockSes {
    pub y: Rep,
    pub x: Rep,
    pub kinds: Vec<BlockKind>,
    pub blocks: Vec<Rep>,
    /// Components of the injection, y -> block.
    pub into: Vec<ModuleMorphism>,
    /// Components of the surjection, block -> x.
    pub onto: Vec<ModuleMorphism>,
}

impl BlockSes {
    /// The assembled middle term with the total injection and surjection.
    pub fn assembled(&self) -> (Rep, ModuleMorphism, ModuleMorphism) {
        let algebra = self.x.algebra.clone();
        let field = algebra.field;
        let (mid, _, _) = direct_sum(algebra.clone(), &self.blocks);
        let n = algebra.vertex_count();
        let inj_mats: Vec<Matrix> = (0..n)
            .map(|v| {
                let mut m = Matrix::zero(field, self.y.dims[v], 0);
                for f in &self.into {
                    m = m.hstack(&f.mats[v]);
                }
                m
            })
            .collect();
        let sur_mats: Vec<Matrix> = (0..n)
            .map(|v| {
                let mut m = Matrix::zero(field, 0, self.x.dims[v]);
                for f in &self.onto {
                    m = m.vstack(&f.mats[v]);
                }
                m
            })
            .collect();
        let inj = ModuleMorphism::new(self.y.clone(), mid.clone(), inj_mats);
        let sur = ModuleMorphism::new(mid.clone(), self.x.clone(), sur_mats);
        (mid, inj, sur)
    }

    /// Exactness by rank bookkeeping.
    pub fn verify_exact(&self) -> Result<()> {
        let (mid, inj, sur) = self.assembled();
        if !inj.is_injective() {
            return Err(Error::Check("sequence injection is not injective".into()));
        }
        if !sur.is_surjective() {
            return Err(Error::Check("sequence surjection is not surjective".into()));
        }
        if !inj.compose(&sur).is_zero() {
            return Err(Error::Check("sequence composite is nonzero".into()));
        }
        if inj.rank() + sur.rank() != mid.total_dim() {
            return Err(Error::Check("sequence is not exact in the middle".into()));
        }
        Ok(())
    }
}

/// The data of one middle-term block prepared for transfer.
enum TransferPart {
    /// Socle-annihilated block with its maps carried over verbatim.
    Plain(Rep, ModuleMorphism, ModuleMorphism),
    /// Projective block at a vertex, with the map in factored through
    /// rad P (g = j h) and the map out factored through P/soc P (v = p w).
    Swapped { vertex: usize, h_mats: Vec<Matrix>, w_mats: Vec<Matrix> },
}

/// Transfer a short exact sequence to the partner algebra by swapping each
/// projective block P for P'. Y and X must be socle annihilated. When all
/// the touched vertices carry a compatible identification, the replacement
/// maps are written down directly; otherwise they are solved for, and an
/// obstruction is reported if no exact rebuild exists.
pub fn transfer_sequence(ident: &SocleIdentification, ses: &BlockSes) -> Result<BlockSes> {
    let y_b = reinterpret(&ses.y, &ident.b)?;
    let x_b = reinterpret(&ses.x, &ident.b)?;
    let n = ident.a.vertex_count();
    let mut parts = Vec::new();
    for (k, kind) in ses.kinds.iter().enumerate() {
        match kind {
            BlockKind::Plain => {
                let block_b = reinterpret(&ses.blocks[k], &ident.b)?;
                let into = ModuleMorphism::new(
                    y_b.clone(),
                    block_b.clone(),
                    ses.into[k].mats.clone(),
                );
                let onto = ModuleMorphism::new(
                    block_b.clone(),
                    x_b.clone(),
                    ses.onto[k].mats.clone(),
                );
                parts.push(TransferPart::Plain(block_b, into, onto));
            }
            BlockKind::Projective(v) => {
                let pair = &ident.pairs[*v];
                // g = j h: the component into P lands in rad P
                let g = &ses.into[k];
                let h_mats: Vec<Matrix> = (0..n)
                    .map(|w| {
                        pair.j_a.mats[w].solve(&g.mats[w]).unwrap().ok_or_else(|| {
                            Error::ModuleHypothesis(
                                "component into a projective block does not land in its radical"
                                    .into(),
                            )
                        })
                    })
                    .collect::<Result<_>>()?;
                // v = p w: the component out of P kills soc P
                let vv = &ses.onto[k];
                let w_mats: Vec<Matrix> = (0..n)
                    .map(|w| {
                        pair.pr_a.mats[w]
                            .transpose()
                            .solve(&vv.mats[w].transpose())
                            .unwrap()
                            .map(|s| s.transpose())
                            .ok_or_else(|| {
                                Error::ModuleHypothesis(
                                    "component out of a projective block does not kill its socle"
                                        .into(),
                                )
                            })
                    })
                    .collect::<Result<_>>()?;
                parts.push(TransferPart::Swapped { vertex: *v, h_mats, w_mats });
            }
        }
    }
    let all_compatible = parts.iter().all(|p| match p {
        TransferPart::Plain(..) => true,
        TransferPart::Swapped { vertex, .. } => ident.pairs[*vertex].compat.is_some(),
    });
    if all_compatible {
        let out = transfer_directly(ident, ses, &y_b, &x_b, &parts);
        if out.verify_exact().is_ok() {
            return Ok(out);
        }
    }
    transfer_by_solving(ident, ses, &y_b, &x_b, &parts)
}

/// Direct construction g' = h phi j', v' = p' psi^{-1} w from a compatible
/// identification at every swapped vertex.
fn transfer_directly(
    ident: &SocleIdentification,
    ses: &BlockSes,
    y_b: &Rep,
    x_b: &Rep,
    parts: &[TransferPart],
) -> BlockSes {
    let n = ident.a.vertex_count();
    let mut blocks = Vec::new();
    let mut into = Vec::new();
    let mut onto = Vec::new();
    for part in parts {
        match part {
            TransferPart::Plain(block_b, f, g) => {
                blocks.push(block_b.clone());
                into.push(f.clone());
                onto.push(g.clone());
            }
            TransferPart::Swapped { vertex, h_mats, w_mats } => {
                let pair = &ident.pairs[*vertex];
                let (phi, psi) = pair.compat.as_ref().expect("checked by caller");
                let gp_mats: Vec<Matrix> = (0..n)
                    .map(|w| h_mats[w].mul(&phi.mats[w]).mul(&pair.j_b.mats[w]))
                    .collect();
                let psi_inv = psi.inverse().expect("psi is invertible");
                let vp_mats: Vec<Matrix> = (0..n)
                    .map(|w| pair.pr_b.mats[w].mul(&psi_inv.mats[w]).mul(&w_mats[w]))
                    .collect();
                blocks.push(pair.p_b.clone());
                into.push(ModuleMorphism::new(y_b.clone(), pair.p_b.clone(), gp_mats));
                onto.push(ModuleMorphism::new(pair.p_b.clone(), x_b.clone(), vp_mats));
            }
        }
    }
    BlockSes {
        y: y_b.clone(),
        x: x_b.clone(),
        kinds: ses.kinds.clone(),
        blocks,
        into,
        onto,
    }
}

fn random_scalar(field: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        FieldSpec::Prime(p) => field.from_int(rng.gen_range(0..p) as i64),
        FieldSpec::Rational => field.from_int(rng.gen_range(-3..=3)),
    }
}

/// Rebuild the sequence over the partner algebra by solving for maps.
///
/// Phase one keeps the maps touching the plain blocks fixed, as in the
/// direct construction, and solves only for the maps through the swapped
/// projectives: the maps out are sampled from their hom spaces (starting
/// from the canonical candidate through the socle quotient) and for each
/// sample the maps in are solved from the composite-zero condition, which
/// is linear in them.
///
/// Phase two frees every map while keeping the end terms fixed: the maps
/// out of all blocks are sampled, the maps in are solved jointly, and the
/// first exact rebuild wins. This phase succeeds in cases where no rebuild
/// with the original plain-block maps exists at all.
fn transfer_by_solving(
    ident: &SocleIdentification,
    ses: &BlockSes,
    y_b: &Rep,
    x_b: &Rep,
    parts: &[TransferPart],
) -> Result<BlockSes> {
    let field = ident.b.field;
    let n = ident.b.vertex_count();
    struct Slot {
        block: Rep,
        in_basis: Vec<ModuleMorphism>,
        out_basis: Vec<ModuleMorphism>,
        /// verbatim map in, for plain blocks
        in_fixed: Option<ModuleMorphism>,
        /// verbatim (plain) or p' psi^{-1} w (swapped) map out
        out_canonical: ModuleMorphism,
        swapped: bool,
    }
    let mut slots = Vec::new();
    for part in parts {
        match part {
            TransferPart::Plain(block_b, f, g) => {
                slots.push(Slot {
                    block: block_b.clone(),
                    in_basis: hom_basis(y_b, block_b),
                    out_basis: hom_basis(block_b, x_b),
                    in_fixed: Some(f.clone()),
                    out_canonical: g.clone(),
                    swapped: false,
                });
            }
            TransferPart::Swapped { vertex, w_mats, .. } => {
                let pair = &ident.pairs[*vertex];
                let psi_inv =
                    pair.top_iso.inverse().expect("top identification is invertible");
                let vp_mats: Vec<Matrix> = (0..n)
                    .map(|w| pair.pr_b.mats[w].mul(&psi_inv.mats[w]).mul(&w_mats[w]))
                    .collect();
                slots.push(Slot {
                    block: pair.p_b.clone(),
                    in_basis: hom_basis(y_b, &pair.p_b),
                    out_basis: hom_basis(&pair.p_b, x_b),
                    in_fixed: None,
                    out_canonical: ModuleMorphism::new(
                        pair.p_b.clone(),
                        x_b.clone(),
                        vp_mats,
                    ),
                    swapped: true,
                });
            }
        }
    }
    let flatten = |mats: &[Matrix]| {
        let mut out = Vec::new();
        for m in mats {
            out.extend(m.entries().to_vec());
        }
        out
    };
    let assemble = |ins: &[ModuleMorphism], outs: &[ModuleMorphism]| -> BlockSes {
        BlockSes {
            y: y_b.clone(),
            x: x_b.clone(),
            kinds: ses.kinds.clone(),
            blocks: slots.iter().map(|s| s.block.clone()).collect(),
            into: ins.to_vec(),
            onto: outs.to_vec(),
        }
    };
    // no swapped blocks: the sequence must carry over verbatim
    if slots.iter().all(|s| !s.swapped) {
        let ins: Vec<ModuleMorphism> =
            slots.iter().map(|s| s.in_fixed.clone().unwrap()).collect();
        let outs: Vec<ModuleMorphism> =
            slots.iter().map(|s| s.out_canonical.clone()).collect();
        let out = assemble(&ins, &outs);
        out.verify_exact().map_err(|e| {
            Error::TransferObstructed(format!(
                "sequence without projective blocks does not stay exact: {e}"
            ))
        })?;
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    // given maps out of every block and a set of blocks whose maps in are
    // unknown, solve composite-zero for the unknowns and look for an exact
    // point of the affine solution set
    let try_outs = |outs: &Vec<ModuleMorphism>,
                        free_in: &[usize],
                        rng: &mut ChaCha8Rng|
     -> Option<BlockSes> {
        // fixed contribution to the composite
        let mut fixed: Vec<Matrix> = (0..n)
            .map(|w| Matrix::zero(field, y_b.dims[w], x_b.dims[w]))
            .collect();
        for (i, slot) in slots.iter().enumerate() {
            if !free_in.contains(&i) {
                let f = slot.in_fixed.as_ref().expect("non-free slot has a fixed map in");
                for w in 0..n {
                    fixed[w] = fixed[w].add(&f.mats[w].mul(&outs[i].mats[w]));
                }
            }
        }
        let target: Vec<Scalar> = flatten(&fixed).iter().map(|c| c.neg()).collect();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for &i in free_in {
            for h in &slots[i].in_basis {
                let prods: Vec<Matrix> =
                    (0..n).map(|w| h.mats[w].mul(&outs[i].mats[w])).collect();
                rows.push(flatten(&prods));
            }
        }
        if rows.is_empty() {
            return None;
        }
        let sys = Matrix::from_rows(field, rows);
        let rhs = Matrix::from_rows(field, vec![target.clone()]);
        let particular = match sys.solve(&rhs).ok()? {
            Some(sol) => sol.row_vec(0),
            None => return None,
        };
        let freedom = sys.kernel_basis();
        let mut coord_candidates: Vec<Vec<Scalar>> = Vec::new();
        let inner_exhaustive = match field {
            FieldSpec::Prime(p) => (p as f64).powi(freedom.rows as i32) <= 20_000.0,
            FieldSpec::Rational => false,
        };
        if inner_exhaustive {
            let p = match field {
                FieldSpec::Prime(p) => p as usize,
                FieldSpec::Rational => unreachable!(),
            };
            for idx in 0..p.pow(freedom.rows as u32) {
                let mut c = particular.clone();
                let mut t = idx;
                for r in 0..freedom.rows {
                    let s = field.from_int((t % p) as i64);
                    t /= p;
                    if !s.is_zero() {
                        for (x, y) in c.iter_mut().zip(freedom.row(r)) {
                            *x = x.add(&s.mul(y));
                        }
                    }
                }
                coord_candidates.push(c);
            }
        } else {
            coord_candidates.push(particular.clone());
            for r in 0..freedom.rows {
                let mut c = particular.clone();
                for (x, y) in c.iter_mut().zip(freedom.row(r)) {
                    *x = x.add(y);
                }
                coord_candidates.push(c);
            }
            for _ in 0..24 {
                let mut c = particular.clone();
                for r in 0..freedom.rows {
                    let s = random_scalar(field, rng);
                    for (x, y) in c.iter_mut().zip(freedom.row(r)) {
                        *x = x.add(&s.mul(y));
                    }
                }
                coord_candidates.push(c);
            }
        }
        for coords in coord_candidates {
            let mut ins: Vec<ModuleMorphism> = Vec::new();
            let mut off = 0usize;
            for (i, slot) in slots.iter().enumerate() {
                if free_in.contains(&i) {
                    let mut m = ModuleMorphism::zero(y_b.clone(), slot.block.clone());
                    for (c, h) in coords[off..off + slot.in_basis.len()]
                        .iter()
                        .zip(&slot.in_basis)
                    {
                        if !c.is_zero() {
                            m = m.add(&h.scale(c));
                        }
                    }
                    off += slot.in_basis.len();
                    ins.push(m);
                } else {
                    ins.push(slot.in_fixed.clone().expect("non-free slot"));
                }
            }
            let out = assemble(&ins, outs);
            if out.verify_exact().is_ok() {
                return Some(out);
            }
        }
        None
    };
    // phase one: plain maps fixed, sample out maps of swapped blocks only
    let swapped_idx: Vec<usize> =
        slots.iter().enumerate().filter(|(_, s)| s.swapped).map(|(i, _)| i).collect();
    let swapped_out_dim: usize =
        swapped_idx.iter().map(|&i| slots[i].out_basis.len()).sum();
    let phase1_exhaustive = match field {
        FieldSpec::Prime(p) => (p as f64).powi(swapped_out_dim as i32) <= 20_000.0,
        FieldSpec::Rational => false,
    };
    let phase1_tries: usize = if phase1_exhaustive {
        match field {
            FieldSpec::Prime(p) => (p as usize).pow(swapped_out_dim as u32),
            FieldSpec::Rational => unreachable!(),
        }
    } else {
        60
    };
    for attempt in 0..phase1_tries {
        let mut outs: Vec<ModuleMorphism> =
            slots.iter().map(|s| s.out_canonical.clone()).collect();
        if phase1_exhaustive {
            let p = match field {
                FieldSpec::Prime(p) => p as usize,
                FieldSpec::Rational => unreachable!(),
            };
            let mut t = attempt;
            for &i in &swapped_idx {
                let mut m = ModuleMorphism::zero(slots[i].block.clone(), x_b.clone());
                for h in &slots[i].out_basis {
                    let c = t % p;
                    t /= p;
                    if c != 0 {
                        m = m.add(&h.scale(&field.from_int(c as i64)));
                    }
                }
                outs[i] = m;
            }
        } else if attempt > 0 {
            for &i in &swapped_idx {
                let mut m = slots[i].out_canonical.clone();
                for h in &slots[i].out_basis {
                    let s = random_scalar(field, &mut rng);
                    if !s.is_zero() {
                        m = m.add(&h.scale(&s));
                    }
                }
                outs[i] = m;
            }
        }
        if let Some(out) = try_outs(&outs, &swapped_idx, &mut rng) {
            return Ok(out);
        }
    }
    // phase two: free every map while keeping the end terms verbatim. For
    // a fixed family of maps out, an exact rebuild exists if and only if
    // the combined map out is surjective with kernel isomorphic to Y, and
    // then any isomorphism onto the kernel serves as the map in. Small
    // candidate spaces are exhausted, so failing every candidate there is
    // a genuine obstruction, not a sampling miss.
    let (mid, _, block_projs) = direct_sum(
        ident.b.clone(),
        &slots.iter().map(|s| s.block.clone()).collect::<Vec<_>>(),
    );
    let rebuild_on_kernel = |outs: &[ModuleMorphism],
                             rng: &mut ChaCha8Rng|
     -> Option<BlockSes> {
        let sur_mats: Vec<Matrix> = (0..n)
            .map(|w| {
                let mut m = Matrix::zero(field, 0, x_b.dims[w]);
                for o in outs {
                    m = m.vstack(&o.mats[w]);
                }
                m
            })
            .collect();
        if (0..n).any(|w| sur_mats[w].rank() != x_b.dims[w]) {
            return None;
        }
        let sur = ModuleMorphism::new(mid.clone(), x_b.clone(), sur_mats);
        let (ker, kincl) = kernel(&sur);
        if ker.dims != y_b.dims {
            return None;
        }
        // isomorphism search: basis pairs first, then the whole hom space
        // when small enough to exhaust (so a miss is conclusive), else
        // random combinations to cover decomposable kernels
        let iso = find_isomorphism(y_b, &ker).or_else(|| {
            let fs = hom_basis(y_b, &ker);
            let combo = |coords: &mut dyn FnMut(usize) -> Scalar| {
                let mut f = ModuleMorphism::zero(y_b.clone(), ker.clone());
                for (i, h) in fs.iter().enumerate() {
                    let s = coords(i);
                    if !s.is_zero() {
                        f = f.add(&h.scale(&s));
                    }
                }
                f
            };
            let exhaustive = match field {
                FieldSpec::Prime(p) => (p as f64).powi(fs.len() as i32) <= 20_000.0,
                FieldSpec::Rational => false,
            };
            if exhaustive {
                let p = match field {
                    FieldSpec::Prime(p) => p as usize,
                    FieldSpec::Rational => unreachable!(),
                };
                for idx in 0..p.pow(fs.len() as u32) {
                    let f = combo(&mut |i| {
                        field.from_int(((idx / p.pow(i as u32)) % p) as i64)
                    });
                    if f.is_isomorphism() {
                        return Some(f);
                    }
                }
                None
            } else {
                for _ in 0..40 {
                    let f = combo(&mut |_| random_scalar(field, rng));
                    if f.is_isomorphism() {
                        return Some(f);
                    }
                }
                None
            }
        })?;
        let total_in = iso.compose(&kincl);
        let ins: Vec<ModuleMorphism> =
            block_projs.iter().map(|p| total_in.compose(p)).collect();
        let out = assemble(&ins, outs);
        out.verify_exact().ok()?;
        Some(out)
    };
    let total_out_dim: usize = slots.iter().map(|s| s.out_basis.len()).sum();
    let phase2_exhaustive = match field {
        FieldSpec::Prime(p) => (p as f64).powi(total_out_dim as i32) <= 20_000.0,
        FieldSpec::Rational => false,
    };
    let phase2_tries: usize = if phase2_exhaustive {
        match field {
            FieldSpec::Prime(p) => (p as usize).pow(total_out_dim as u32),
            FieldSpec::Rational => unreachable!(),
        }
    } else {
        400
    };
    for attempt in 0..phase2_tries {
        let outs: Vec<ModuleMorphism> = if phase2_exhaustive {
            let p = match field {
                FieldSpec::Prime(p) => p as usize,
                FieldSpec::Rational => unreachable!(),
            };
            let mut t = attempt;
            slots
                .iter()
                .map(|slot| {
                    let mut m = ModuleMorphism::zero(slot.block.clone(), x_b.clone());
                    for h in &slot.out_basis {
                        let c = t % p;
                        t /= p;
                        if c != 0 {
                            m = m.add(&h.scale(&field.from_int(c as i64)));
                        }
                    }
                    m
                })
                .collect()
        } else if attempt == 0 {
            slots.iter().map(|s| s.out_canonical.clone()).collect()
        } else {
            slots
                .iter()
                .map(|slot| {
                    let mut m = ModuleMorphism::zero(slot.block.clone(), x_b.clone());
                    for h in &slot.out_basis {
                        let s = random_scalar(field, &mut rng);
                        if !s.is_zero() {
                            m = m.add(&h.scale(&s));
                        }
                    }
                    m
                })
                .collect()
        };
        if let Some(out) = rebuild_on_kernel(&outs, &mut rng) {
            return Ok(out);
        }
    }
    Err(Error::TransferObstructed(
        "no exact rebuild of the sequence over the partner algebra was found, \
         with the original maps kept or replaced"
            .into(),
    ))
}

/// The almost split sequence ending at P/soc P:
/// 0 -> rad P -> P + rad P/soc P -> P/soc P -> 0, verified exact and
/// non-split.
pub fn ar_sequence_of_projective(ident: &SocleIdentification, v: usize) -> Result<BlockSes> {
    let pair = &ident.pairs[v];
    let a = &ident.a;
    let n = a.vertex_count();
    let (radsoc, q) = top_by_socle(&pair.rad_a);
    // induced inclusion rad P/soc P -> P/soc P with q . jhat = j . p
    let jhat_mats: Vec<Matrix> = (0..n)
        .map(|w| {
            let rhs = pair.j_a.mats[w].mul(&pair.pr_a.mats[w]);
            q.mats[w]
                .transpose()
                .solve(&rhs.transpose())
                .unwrap()
                .expect("socle quotient projection is surjective")
                .transpose()
        })
        .collect();
    let jhat = ModuleMorphism::new(radsoc.clone(), pair.top_a.clone(), jhat_mats);
    let neg_jhat = jhat.scale(&a.field.from_int(-1));
    let ses = BlockSes {
        y: pair.rad_a.clone(),
        x: pair.top_a.clone(),
        kinds: vec![BlockKind::Projective(v), BlockKind::Plain],
        blocks: vec![pair.p_a.clone(), radsoc.clone()],
        into: vec![pair.j_a.clone(), q.clone()],
        onto: vec![pair.pr_a.clone(), neg_jhat],
    };
    ses.verify_exact()?;
    // non-splitness: no section of the surjection
    let (mid, _, sur) = ses.assembled();
    let field = a.field;
    let homs = hom_basis(&ses.x, &mid);
    let rows: Vec<Vec<Scalar>> = homs.iter().map(|h| h.compose(&sur).flatten()).collect();
    let id = ModuleMorphism::identity(ses.x.clone()).flatten();
    if !rows.is_empty() {
        let sys = Matrix::from_rows(field, rows);
        if sys.solve(&Matrix::from_rows(field, vec![id]))?.is_some() {
            return Err(Error::Check(
                "almost split sequence candidate splits; projective must not be simple".into(),
            ));
        }
    }
    Ok(ses)
}

/// A resolution transferred stage by stage to the partner algebra.
pub struct TransferredResolution {
    pub x: Rep,
    pub stages: Vec<BlockSes>,
    pub maps: Vec<ModuleMorphism>,
    pub length: usize,
}

/// View one resolution stage as a block short exact sequence over A.
fn stage_as_ses(
    res: &ApproximationResolution,
    stage: usize,
    n_count: usize,
) -> Result<BlockSes> {
    let app = &res.stages[stage];
    let algebra = app.x.algebra.clone();
    let parts: Vec<Rep> = app.blocks.iter().map(|(_, f)| f.source.clone()).collect();
    let (_, _, projs) = direct_sum(algebra.clone(), &parts);
    let (y, incl) = crate::rep::kernel(&app.map);
    let kinds: Vec<BlockKind> = app
        .blocks
        .iter()
        .map(|(i, _)| {
            if *i < n_count {
                BlockKind::Plain
            } else {
                BlockKind::Projective(*i - n_count)
            }
        })
        .collect();
    let into: Vec<ModuleMorphism> =
        projs.iter().map(|p| incl.compose(p)).collect();
    let onto: Vec<ModuleMorphism> = app.blocks.iter().map(|(_, f)| f.clone()).collect();
    let ses = BlockSes { y, x: app.x.clone(), kinds, blocks: parts, into, onto };
    ses.verify_exact()?;
    Ok(ses)
}

/// Transfer a right minimal approximation resolution over A, built from the
/// summand list `n_summands ++ projectives(A)`, to the partner algebra.
/// Each transferred stage is re-verified to be a right minimal add(M')
/// approximation.
pub fn transfer_resolution(
    ident: &SocleIdentification,
    n_summands: &[Rep],
    res: &ApproximationResolution,
) -> Result<TransferredResolution> {
    let n_count = n_summands.len();
    let m_b = partner_summands(ident, n_summands)?;
    let x_b = reinterpret(&res.x, &ident.b)?;
    let mut stages = Vec::new();
    let mut maps: Vec<ModuleMorphism> = Vec::new();
    for k in 0..res.stages.len() {
        let ses = stage_as_ses(res, k, n_count)?;
        let out = transfer_sequence(ident, &ses)?;
        let (_, inj, sur) = out.assembled();
        // verify the Hom(M', -) surjectivity and right minimality of the
        // transferred stage
        if !is_approximation(&m_b, &sur) {
            return Err(Error::Check(format!(
                "transferred stage {k} is not an approximation"
            )));
        }
        if !is_right_minimal(&sur)? {
            return Err(Error::Check(format!(
                "transferred stage {k} is not right minimal"
            )));
        }
        let chain = match stages.last() {
            None => sur,
            Some(prev) => {
                let (_, prev_inj, _) = {
                    let p: &BlockSes = prev;
                    p.assembled()
                };
                sur.compose(&prev_inj)
            }
        };
        let _ = &inj;
        maps.push(chain);
        stages.push(out);
    }
    let tr = TransferredResolution {
        x: x_b,
        length: stages.len().saturating_sub(1),
        stages,
        maps,
    };
    // chain exactness of the spliced sequence
    for k in 0..tr.maps.len() {
        let f = &tr.maps[k];
        if k + 1 < tr.maps.len() {
            if !tr.maps[k + 1].compose(f).is_zero() {
                return Err(Error::Check(format!(
                    "transferred chain composite at stage {k} is nonzero"
                )));
            }
            let ker_dim = f.source.total_dim() - f.rank();
            if tr.maps[k + 1].rank() != ker_dim {
                return Err(Error::Check(format!(
                    "transferred chain not exact at stage {k}"
                )));
            }
        }
    }
    Ok(tr)
}

/// The summand list of M' = N + A': the socle-annihilated summands
/// reinterpreted, followed by the projectives of A'.
pub fn partner_summands(ident: &SocleIdentification, n_summands: &[Rep]) -> Result<Vec<Rep>> {
    let mut out = Vec::new();
    for nsum in n_summands {
        out.push(reinterpret(nsum, &ident.b)?);
    }
    for v in 0..ident.b.vertex_count() {
        out.push(projective(ident.b.clone(), v));
    }
    Ok(out)
}

/// The summand list of M = N + A over A itself.
pub fn generator_summands(a: &Arc<Algebra>, n_summands: &[Rep]) -> Vec<Rep> {
    let mut out = n_summands.to_vec();
    for v in 0..a.vertex_count() {
        out.push(projective(a.clone(), v));
    }
    out
}

/// Split the given modules into indecomposables and keep one summand per
/// isomorphism class, dropping zero modules. The additive closure is
/// unchanged, and the resulting list is valid input for an endomorphism
/// algebra in basic form.
pub fn normalize_summands(summands: &[Rep]) -> Result<Vec<Rep>> {
    let mut out: Vec<Rep> = Vec::new();
    for s in summands {
        if s.is_zero() {
            continue;
        }
        for part in crate::decomp::decompose(s, 0)? {
            if out.iter().all(|x| find_isomorphism(&part.rep, x).is_none()) {
                out.push(part.rep);
            }
        }
    }
    Ok(out)
}

/// Result of carrying a generator M = N + A over to M' = N + A'.
pub struct GeneratorTransfer {
    /// Summand list of M' = N + A' over the partner algebra.
    pub m_b: Vec<Rep>,
    /// gldim End(M) over A.
    pub gldim_a: GlDim,
    /// gldim End(M') over A'.
    pub gldim_b: GlDim,
    /// Whether the two global dimensions agree exactly. When both hit the
    /// cap this is true but `capped` is set as a warning.
    pub equal: bool,
    /// Both sides exceeded the cap, so equality is only "both >= cap + 1".
    pub capped: bool,
}

/// Carry the generator M = N + A over to M' = N + A' and compare the
/// global dimensions of the two endomorphism algebras. M must be a
/// generator-cogenerator over A and N must be annihilated by the socle.
pub fn transfer_generator(
    ident: &SocleIdentification,
    n_summands: &[Rep],
    cap: usize,
) -> Result<GeneratorTransfer> {
    let n_summands = normalize_summands(n_summands)?;
    let n_summands = &n_summands[..];
    let m_a = generator_summands(&ident.a, n_summands);
    crate::approx::check_generator_cogenerator(&m_a)?;
    let m_b = partner_summands(ident, n_summands)?;
    crate::approx::check_generator_cogenerator(&m_b)?;
    let end_a = EndoAlgebra::new(&m_a)?;
    let end_b = EndoAlgebra::new(&m_b)?;
    let gldim_a = global_dimension(&end_a, cap)?.value;
    let gldim_b = global_dimension(&end_b, cap)?.value;
    let (equal, capped) = match (gldim_a, gldim_b) {
        (GlDim::Finite(x), GlDim::Finite(y)) => (x == y, false),
        (GlDim::AtLeast(x), GlDim::AtLeast(y)) => (x == y, true),
        _ => (false, false),
    };
    Ok(GeneratorTransfer { m_b, gldim_a, gldim_b, equal, capped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{Arrow, Monomial, Quiver, Relation};
    use crate::rep::module_radical;

    fn loops_quiver() -> Quiver {
        Quiver::new(
            vec!["1".into()],
            vec![
                Arrow { name: "x".into(), source: 0, target: 0 },
                Arrow { name: "y".into(), source: 0, target: 0 },
            ],
        )
        .unwrap()
    }

    /// K<x,y>/(x^2, y^2, xy - lambda yx), the four dimensional local
    /// selfinjective algebra.
    pub(super) fn exterior_like(field: FieldSpec, lambda: i64) -> Arc<Algebra> {
        let q = loops_quiver();
        let mk = |arrows: Vec<usize>| Monomial::from_arrows(&q, arrows).unwrap();
        let rels = vec![
            Relation::new(&q, vec![(field.one(), mk(vec![0, 0]))]).unwrap(),
            Relation::new(&q, vec![(field.one(), mk(vec![1, 1]))]).unwrap(),
            Relation::new(
                &q,
                vec![(field.one(), mk(vec![0, 1])), (field.from_int(-lambda), mk(vec![1, 0]))],
            )
            .unwrap(),
        ];
        Arc::new(Algebra::build(q, field, rels, None).unwrap())
    }

    #[test]
    fn identification_of_algebra_with_itself() {
        let f = FieldSpec::prime(5).unwrap();
        let a = exterior_like(f, 1);
        let ident = verify_identification(&a, &a, None).unwrap();
        assert_eq!(ident.qa.dim, 3);
        let pair = &ident.pairs[0];
        assert!(pair.rad_iso.is_isomorphism());
        assert!(pair.top_iso.is_isomorphism());
        let (phi, psi) = pair.compat.as_ref().expect("self identification is compatible");
        assert!(phi.is_isomorphism());
        assert!(psi.is_isomorphism());
    }

    #[test]
    fn identification_between_different_socle_scalars() {
        // the algebras share their socle quotient, and radicals and socle
        // quotients of the projectives are isomorphic, but no choice of
        // those isomorphisms is compatible with the canonical maps
        let f = FieldSpec::prime(5).unwrap();
        let a = exterior_like(f, 1);
        for lambda in [2i64, 3, 4] {
            let b = exterior_like(f, lambda);
            let ident = verify_identification(&a, &b, None).unwrap();
            assert_eq!(ident.pairs.len(), 1);
            let pair = &ident.pairs[0];
            assert!(pair.rad_iso.is_isomorphism());
            assert!(pair.top_iso.is_isomorphism());
            assert!(pair.compat.is_none());
            assert!(pair.obstruction().is_some());
        }
    }

    #[test]
    fn socle_quotients_are_lambda_independent() {
        // in A(lambda)/soc both xy and yx vanish
        let f = FieldSpec::prime(5).unwrap();
        let a = exterior_like(f, 1);
        let b = exterior_like(f, 3);
        let qa = QuotientAlgebra::new(&a, a.socle_basis().unwrap()).unwrap();
        let qb = QuotientAlgebra::new(&b, b.socle_basis().unwrap()).unwrap();
        assert_eq!(qa.dim, 3);
        for i in 0..3 {
            for j in 0..3 {
                let mut ei = vec![f.zero(); 3];
                ei[i] = f.one();
                let mut ej = vec![f.zero(); 3];
                ej[j] = f.one();
                assert_eq!(qa.mult(&ei, &ej), qb.mult(&ei, &ej));
            }
        }
    }

    #[test]
    fn almost_split_sequence_of_the_projective() {
        let f = FieldSpec::prime(5).unwrap();
        let a = exterior_like(f, 1);
        let ident = verify_identification(&a, &a, None).unwrap();
        let ses = ar_sequence_of_projective(&ident, 0).unwrap();
        // dims 3 -> 4 + 2 -> 3
        assert_eq!(ses.y.total_dim(), 3);
        assert_eq!(ses.blocks[0].total_dim() + ses.blocks[1].total_dim(), 6);
        assert_eq!(ses.x.total_dim(), 3);
    }

    #[test]
    fn ar_sequence_transfers_between_scalar_twists_only_with_replaced_maps() {
        // between the t = 1 and t = 2 algebras no exact rebuild that keeps
        // the maps through the plain block exists at all (certified
        // exhaustively in a companion test), so the transfer must succeed
        // by replacing every map while keeping the end terms fixed
        let f = FieldSpec::prime(5).unwrap();
        let a = exterior_like(f, 1);
        let b = exterior_like(f, 2);
        let ident = verify_identification(&a, &b, None).unwrap();
        let ses = ar_sequence_of_projective(&ident, 0).unwrap();
        let out = transfer_sequence(&ident, &ses).unwrap();
        out.verify_exact().unwrap();
        assert_eq!(out.y.dims, ses.y.dims);
        assert_eq!(out.x.dims, ses.x.dims);
        // the map into the plain block cannot be the original one
        let plain = ses
            .kinds
            .iter()
            .position(|k| matches!(k, BlockKind::Plain))
            .unwrap();
        assert_ne!(out.into[plain].mats, ses.into[plain].mats);
    }

    /// The two-vertex quiver with a loop at 1 and arrows between 1 and 2.
    fn loop_and_cycle_quiver() -> Quiver {
        Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                Arrow { name: "a".into(), source: 0, target: 0 },
                Arrow { name: "c".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 1, target: 0 },
            ],
        )
        .unwrap()
    }

    /// Two socle-equivalent selfinjective algebras on the two-vertex
    /// quiver: relations a^2 = (acb if deformed, else 0), acb + cba = 0,
    /// bc = 0, bacb = 0. The deformed and undeformed algebras differ only
    /// in socle terms and are not isomorphic.
    pub(super) fn deformed_pair(field: FieldSpec) -> (Arc<Algebra>, Arc<Algebra>) {
        let q = loop_and_cycle_quiver();
        let mk = |arrows: Vec<usize>| Monomial::from_arrows(&q, arrows).unwrap();
        let one = field.one();
        let minus = field.from_int(-1);
        // arrows: 0 = a (loop), 1 = c (1 -> 2), 2 = b (2 -> 1)
        let shared = |q: &Quiver| {
            vec![
                Relation::new(q, vec![(one.clone(), mk(vec![0, 1, 2])), (one.clone(), mk(vec![1, 2, 0]))])
                    .unwrap(),
                Relation::new(q, vec![(one.clone(), mk(vec![2, 1]))]).unwrap(),
                Relation::new(q, vec![(one.clone(), mk(vec![2, 0, 1, 2]))]).unwrap(),
            ]
        };
        let mut rels_a = vec![Relation::new(
            &q,
            vec![(one.clone(), mk(vec![0, 0])), (minus.clone(), mk(vec![0, 1, 2]))],
        )
        .unwrap()];
        rels_a.extend(shared(&q));
        let mut rels_b =
            vec![Relation::new(&q, vec![(one.clone(), mk(vec![0, 0]))]).unwrap()];
        rels_b.extend(shared(&q));
        let a = Arc::new(Algebra::build(q.clone(), field, rels_a, None).unwrap());
        let b = Arc::new(Algebra::build(q, field, rels_b, None).unwrap());
        (a, b)
    }

    #[test]
    fn deformed_pair_is_socle_equivalent_with_compatible_projectives() {
        let f = FieldSpec::prime(5).unwrap();
        let (a, b) = deformed_pair(f);
        assert_eq!(a.dim(), b.dim());
        let ident = verify_identification(&a, &b, None).unwrap();
        assert_eq!(ident.pairs.len(), 2);
        // at the loop vertex the socle deformation obstructs any compatible
        // choice of radical and top identifications, at the other vertex a
        // compatible choice exists
        assert!(ident.pairs[0].compat.is_none());
        assert!(ident.pairs[0].obstruction().is_some());
        assert!(ident.pairs[1].compat.is_some());
        for pair in &ident.pairs {
            assert!(pair.rad_iso.is_isomorphism());
            assert!(pair.top_iso.is_isomorphism());
        }
    }

    #[test]
    fn ar_sequence_transfers_between_deformed_partners() {
        let f = FieldSpec::prime(5).unwrap();
        let (a, b) = deformed_pair(f);
        let ident = verify_identification(&a, &b, None).unwrap();
        for v in 0..2 {
            let ses = ar_sequence_of_projective(&ident, v).unwrap();
            let out = transfer_sequence(&ident, &ses).unwrap();
            out.verify_exact().unwrap();
            assert_eq!(out.blocks[0].total_dim(), ses.blocks[0].total_dim());
            // transferring back gives an exact sequence over A again
            let back = verify_identification(&b, &a, None).unwrap();
            let round = transfer_sequence(&back, &out).unwrap();
            round.verify_exact().unwrap();
            assert_eq!(round.x.dims, ses.x.dims);
        }
    }

    #[test]
    fn generator_transfers_between_scalar_twists_with_equal_global_dimension() {
        // N = S + rad P makes N + A a generator-cogenerator whose
        // endomorphism algebra has global dimension 3 on both sides
        let f = FieldSpec::prime(5).unwrap();
        let a = exterior_like(f, 1);
        let s = crate::rep::simple(a.clone(), 0);
        let p = projective(a.clone(), 0);
        let (rad, _) = module_radical(&p);
        for lambda in [1i64, 2, 3] {
            let b = exterior_like(f, lambda);
            let ident = verify_identification(&a, &b, None).unwrap();
            let out =
                transfer_generator(&ident, &[s.clone(), rad.clone()], 12).unwrap();
            assert_eq!(out.gldim_a, GlDim::Finite(3));
            assert_eq!(out.gldim_b, GlDim::Finite(3));
            assert!(out.equal);
            assert!(!out.capped);
        }
    }

    #[test]
    fn reinterpret_rejects_faithful_module() {
        let f = FieldSpec::prime(5).unwrap();
        let a = exterior_like(f, 1);
        let b = exterior_like(f, 2);
        let p = projective(a.clone(), 0);
        assert!(reinterpret(&p, &b).is_err());
        let (rad, _) = module_radical(&p);
        assert!(reinterpret(&rad, &b).is_ok());
    }
}


#[cfg(test)]
mod exhaustive_tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::rep::{hom_basis, module_radical, module_socle, projective, quotient_by_subspaces};

    /// Exhaustively count the exact rebuilds over K<x,y>/(x^2, y^2, xy - t yx)
    /// of the almost split sequence 0 -> rad P -> P + rad P/soc P -> P/soc P -> 0
    /// of the t = 1 algebra, keeping the maps touching the plain block fixed
    /// and trying every pair (g', v') of maps through the swapped projective.
    fn count_exact_rebuilds(lambda: i64) -> usize {
        let f5 = FieldSpec::prime(5).unwrap();
        let a = super::tests::exterior_like(f5, 1);
        let b = super::tests::exterior_like(f5, lambda);
        let p_a = projective(a.clone(), 0);
        let p_b = projective(b.clone(), 0);
        let (rad_a, j_a) = module_radical(&p_a);
        let (top_a, pr_a) = top_by_socle(&p_a);
        let (_, soc_incl) = module_socle(&rad_a);
        let (_n0, q) = quotient_by_subspaces(&rad_a, soc_incl.mats.clone());
        // u: rad P/soc P -> P/soc P induced by the inclusion, q u = j p
        let jp = j_a.mats[0].mul(&pr_a.mats[0]);
        let u = q.mats[0].transpose().solve(&jp.transpose()).unwrap().unwrap().transpose();
        assert_eq!(q.mats[0].mul(&u).entries(), jp.entries());
        let y_b = reinterpret(&rad_a, &b).unwrap();
        let x_b = reinterpret(&top_a, &b).unwrap();
        let gs = hom_basis(&y_b, &p_b);
        let vs = hom_basis(&p_b, &x_b);
        // composite-zero demands g' v' = -(q u)
        let fu = q.mats[0].mul(&u);
        let target = fu.neg();
        let p = 5i64;
        let mut found = 0usize;
        let combos = |basis: &[ModuleMorphism], idx: i64, rows: usize, cols: usize| {
            let mut m = Matrix::zero(f5, rows, cols);
            let mut t = idx;
            for h in basis {
                let c = t % p;
                t /= p;
                if c != 0 {
                    m = m.add(&h.mats[0].scale(&f5.from_int(c)));
                }
            }
            m
        };
        for ig in 0..p.pow(gs.len() as u32) {
            let gm = combos(&gs, ig, y_b.dims[0], p_b.dims[0]);
            for iv in 0..p.pow(vs.len() as u32) {
                let vm = combos(&vs, iv, p_b.dims[0], x_b.dims[0]);
                if gm.mul(&vm).entries() != target.entries() {
                    continue;
                }
                let inj = q.mats[0].hstack(&gm);
                let sur = u.vstack(&vm);
                if inj.rank() == 3 && sur.rank() == 3 && inj.mul(&sur).is_zero() {
                    found += 1;
                }
            }
        }
        found
    }

    #[test]
    fn no_exact_transfer_of_almost_split_sequence_between_scalar_twists() {
        // sanity: rebuilding over the same algebra succeeds in many ways
        assert!(count_exact_rebuilds(1) > 0);
        // between the t = 1 and t = 2 algebras no rebuild exists at all,
        // even though the two algebras have equal socle quotients
        assert_eq!(count_exact_rebuilds(2), 0);
    }
}


