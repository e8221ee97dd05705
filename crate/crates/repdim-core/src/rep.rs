//! Finite dimensional right modules over a bound quiver algebra, presented
//! as quiver representations: one space per vertex, one matrix per arrow.
//!
//! Row convention throughout: an element of the vertex space is a row, the
//! arrow matrix acts on the right, and a morphism is a family of per-vertex
//! matrices also acting on the right.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::quiver::Monomial;
use std::sync::Arc;

#[derive(Clone)]
pub struct Representation {
    pub algebra: Arc<Algebra>,
    pub dims: Vec<usize>,
    pub arrow_mats: Vec<Matrix>,
    offsets: Vec<usize>,
}

pub type Rep = Arc<Representation>;

impl std::fmt::Debug for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Rep{:?}", self.dims)
    }
}

impl Representation {
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, arrow_mats: Vec<Matrix>) -> Result<Rep> {
        let n = algebra.vertex_count();
        if dims.len() != n {
            return Err(Error::Input(format!(
                "expected {n} vertex dimensions, got {}",
                dims.len()
            )));
        }
        if arrow_mats.len() != algebra.quiver.arrows.len() {
            return Err(Error::Input(format!(
                "expected {} arrow matrices, got {}",
                algebra.quiver.arrows.len(),
                arrow_mats.len()
            )));
        }
        for (ai, a) in algebra.quiver.arrows.iter().enumerate() {
            let m = &arrow_mats[ai];
            if m.rows != dims[a.source] || m.cols != dims[a.target] {
                return Err(Error::Input(format!(
                    "matrix for arrow {} should be {}x{}, got {}x{}",
                    a.name, dims[a.source], dims[a.target], m.rows, m.cols
                )));
            }
            if m.field != algebra.field {
                return Err(Error::Input(format!(
                    "matrix for arrow {} is over the wrong field",
                    a.name
                )));
            }
        }
        let mut offsets = Vec::with_capacity(n);
        let mut acc = 0;
        for &d in &dims {
            offsets.push(acc);
            acc += d;
        }
        let rep = Representation { algebra, dims, arrow_mats, offsets };
        for r in &rep.algebra.relations.clone() {
            let src = r.source(&rep.algebra.quiver);
            let tgt = r.target(&rep.algebra.quiver);
            let mut sum = Matrix::zero(rep.algebra.field, rep.dims[src], rep.dims[tgt]);
            for (c, m) in &r.terms {
                sum = sum.add(&rep.eval_path(m).scale(c));
            }
            if !sum.is_zero() {
                return Err(Error::Input(
                    "representation does not satisfy a defining relation".into(),
                ));
            }
        }
        Ok(Arc::new(rep))
    }

    pub fn zero(algebra: Arc<Algebra>) -> Rep {
        let dims = vec![0; algebra.vertex_count()];
        let mats = algebra
            .quiver
            .arrows
            .iter()
            .map(|_| Matrix::zero(algebra.field, 0, 0))
            .collect();
        Representation::new(algebra, dims, mats).unwrap()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn offset(&self, v: usize) -> usize {
        self.offsets[v]
    }

    /// Matrix of the action of a path: `dims[src] x dims[tgt]`.
    pub fn eval_path(&self, m: &Monomial) -> Matrix {
        let src = m.source(&self.algebra.quiver);
        let mut acc = Matrix::identity(self.algebra.field, self.dims[src]);
        for &a in &m.arrows {
            acc = acc.mul(&self.arrow_mats[a]);
        }
        acc
    }

    /// Action of an arbitrary algebra element on the total space.
    pub fn total_action(&self, elem: &[Scalar]) -> Matrix {
        let t = self.total_dim();
        let mut out = Matrix::zero(self.algebra.field, t, t);
        for (j, c) in elem.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = &self.algebra.basis[j];
            let src = m.source(&self.algebra.quiver);
            let tgt = m.target(&self.algebra.quiver);
            let block = self.eval_path(m);
            let (ro, co) = (self.offsets[src], self.offsets[tgt]);
            for i in 0..block.rows {
                for k in 0..block.cols {
                    let v = out.get(ro + i, co + k).add(&c.mul(block.get(i, k)));
                    out.set(ro + i, co + k, v);
                }
            }
        }
        out
    }

    /// Does every row of `ideal` (coordinates in the algebra basis) act as
    /// zero?
    pub fn annihilated_by(&self, ideal: &Matrix) -> bool {
        (0..ideal.rows).all(|i| self.total_action(ideal.row(i)).is_zero())
    }
}

/// A homomorphism of representations: per vertex matrices `mats[v]` of shape
/// `source.dims[v] x target.dims[v]`, applied on the right.
#[derive(Clone)]
pub struct ModuleMorphism {
    pub source: Rep,
    pub target: Rep,
    pub mats: Vec<Matrix>,
}

impl std::fmt::Debug for ModuleMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Morphism({:?} -> {:?})", self.source.dims, self.target.dims)
    }
}

impl ModuleMorphism {
    pub fn new(source: Rep, target: Rep, mats: Vec<Matrix>) -> ModuleMorphism {
        debug_assert_eq!(mats.len(), source.dims.len());
        for (v, m) in mats.iter().enumerate() {
            debug_assert_eq!((m.rows, m.cols), (source.dims[v], target.dims[v]));
        }
        debug_assert!(commutes(&source, &target, &mats));
        ModuleMorphism { source, target, mats }
    }

    pub fn zero(source: Rep, target: Rep) -> ModuleMorphism {
        let f = source.algebra.field;
        let mats = (0..source.dims.len())
            .map(|v| Matrix::zero(f, source.dims[v], target.dims[v]))
            .collect();
        ModuleMorphism { source, target, mats }
    }

    pub fn identity(rep: Rep) -> ModuleMorphism {
        let f = rep.algebra.field;
        let mats = rep.dims.iter().map(|&d| Matrix::identity(f, d)).collect();
        ModuleMorphism { source: rep.clone(), target: rep, mats }
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &ModuleMorphism) -> ModuleMorphism {
        debug_assert_eq!(self.target.dims, other.source.dims);
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.mul(b))
            .collect();
        ModuleMorphism { source: self.source.clone(), target: other.target.clone(), mats }
    }

    pub fn add(&self, other: &ModuleMorphism) -> ModuleMorphism {
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.add(b)).collect();
        ModuleMorphism { source: self.source.clone(), target: self.target.clone(), mats }
    }

    pub fn sub(&self, other: &ModuleMorphism) -> ModuleMorphism {
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.sub(b)).collect();
        ModuleMorphism { source: self.source.clone(), target: self.target.clone(), mats }
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMorphism {
        let mats = self.mats.iter().map(|m| m.scale(c)).collect();
        ModuleMorphism { source: self.source.clone(), target: self.target.clone(), mats }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(|m| m.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.mats.iter().map(|m| m.rank()).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.total_dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.total_dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.total_dim() == self.target.total_dim() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<ModuleMorphism> {
        let mut mats = Vec::with_capacity(self.mats.len());
        for m in &self.mats {
            mats.push(m.inverse()?);
        }
        Some(ModuleMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            mats,
        })
    }

    /// Flatten the per-vertex matrices into one row for linear algebra over
    /// the space of morphisms.
    pub fn flatten(&self) -> Vec<Scalar> {
        let mut out = Vec::new();
        for m in &self.mats {
            for i in 0..m.rows {
                out.extend(m.row(i).iter().cloned());
            }
        }
        out
    }

    pub fn unflatten(source: Rep, target: Rep, flat: &[Scalar]) -> ModuleMorphism {
        let f = source.algebra.field;
        let mut mats = Vec::new();
        let mut pos = 0;
        for v in 0..source.dims.len() {
            let (r, c) = (source.dims[v], target.dims[v]);
            let m = Matrix::from_fn(f, r, c, |i, j| flat[pos + i * c + j].clone());
            pos += r * c;
            mats.push(m);
        }
        ModuleMorphism::new(source, target, mats)
    }
}

fn commutes(source: &Representation, target: &Representation, mats: &[Matrix]) -> bool {
    source.algebra.quiver.arrows.iter().enumerate().all(|(ai, a)| {
        source.arrow_mats[ai].mul(&mats[a.target]) == mats[a.source].mul(&target.arrow_mats[ai])
    })
}

/// Basis of the space of homomorphisms from `x` to `y`.
pub fn hom_basis(x: &Rep, y: &Rep) -> Vec<ModuleMorphism> {
    let f = x.algebra.field;
    let n = x.dims.len();
    let unknowns: usize = (0..n).map(|v| x.dims[v] * y.dims[v]).sum();
    if unknowns == 0 {
        return vec![];
    }
    // offsets of each per-vertex matrix inside the flattened unknown row
    let mut uoff = vec![0usize; n];
    let mut acc = 0;
    for v in 0..n {
        uoff[v] = acc;
        acc += x.dims[v] * y.dims[v];
    }
    let constraints: usize = x
        .algebra
        .quiver
        .arrows
        .iter()
        .map(|a| x.dims[a.source] * y.dims[a.target])
        .sum();
    let mut sys = Matrix::zero(f, unknowns, constraints);
    let mut coff = 0;
    for (ai, a) in x.algebra.quiver.arrows.iter().enumerate() {
        let (v, w) = (a.source, a.target);
        let xa = &x.arrow_mats[ai];
        let ya = &y.arrow_mats[ai];
        // constraint (i, l): sum_k xa[i,k] F_w[k,l] - sum_j F_v[i,j] ya[j,l]
        for i in 0..x.dims[v] {
            for l in 0..y.dims[w] {
                let cidx = coff + i * y.dims[w] + l;
                for k in 0..x.dims[w] {
                    let u = uoff[w] + k * y.dims[w] + l;
                    let cur = sys.get(u, cidx).add(xa.get(i, k));
                    sys.set(u, cidx, cur);
                }
                for j in 0..y.dims[v] {
                    let u = uoff[v] + i * y.dims[v] + j;
                    let cur = sys.get(u, cidx).sub(ya.get(j, l));
                    sys.set(u, cidx, cur);
                }
            }
        }
        coff += x.dims[v] * y.dims[w];
    }
    let ker = sys.kernel_basis();
    (0..ker.rows)
        .map(|i| ModuleMorphism::unflatten(x.clone(), y.clone(), ker.row(i)))
        .collect()
}

pub fn hom_dim(x: &Rep, y: &Rep) -> usize {
    hom_basis(x, y).len()
}

/// Kernel with its inclusion.
pub fn kernel(f: &ModuleMorphism) -> (Rep, ModuleMorphism) {
    let x = &f.source;
    let kbases: Vec<Matrix> = f.mats.iter().map(|m| m.kernel_basis()).collect();
    let dims: Vec<usize> = kbases.iter().map(|k| k.rows).collect();
    let mats = x
        .algebra
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let b = kbases[a.source].mul(&x.arrow_mats[ai]);
            kbases[a.target]
                .solve(&b)
                .unwrap()
                .expect("kernel is not closed under the arrow action")
        })
        .collect();
    let krep = Representation::new(x.algebra.clone(), dims, mats).unwrap();
    let incl = ModuleMorphism::new(krep.clone(), x.clone(), kbases);
    (krep, incl)
}

/// Image with its inclusion into the target.
pub fn image(f: &ModuleMorphism) -> (Rep, ModuleMorphism) {
    let y = &f.target;
    let bases: Vec<Matrix> = f
        .mats
        .iter()
        .map(|m| {
            let rr = m.rref();
            rr.reduced.submatrix_rows(&(0..rr.rank).collect::<Vec<_>>())
        })
        .collect();
    subrep_from_bases(y, bases)
}

/// The subrepresentation spanned (vertexwise) by the rows of `bases`,
/// which must be arrow stable; returns the subrep and its inclusion.
pub fn subrep_from_bases(y: &Rep, bases: Vec<Matrix>) -> (Rep, ModuleMorphism) {
    let bases: Vec<Matrix> = bases
        .into_iter()
        .map(|m| {
            let rr = m.rref();
            rr.reduced.submatrix_rows(&(0..rr.rank).collect::<Vec<_>>())
        })
        .collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.rows).collect();
    let mats = y
        .algebra
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let b = bases[a.source].mul(&y.arrow_mats[ai]);
            bases[a.target]
                .solve(&b)
                .unwrap()
                .expect("subspace is not closed under the arrow action")
        })
        .collect();
    let srep = Representation::new(y.algebra.clone(), dims, mats).unwrap();
    let incl = ModuleMorphism::new(srep.clone(), y.clone(), bases);
    (srep, incl)
}

/// Cokernel with the projection from the target.
pub fn cokernel(f: &ModuleMorphism) -> (Rep, ModuleMorphism) {
    quotient_by_subspaces(&f.target, f.mats.clone())
}

/// Quotient of `y` by the arrow-stable subspace spanned vertexwise by the
/// rows of `sub`; returns the quotient and the projection.
pub fn quotient_by_subspaces(y: &Rep, sub: Vec<Matrix>) -> (Rep, ModuleMorphism) {
    let field = y.algebra.field;
    let mut projs = Vec::new();
    for (v, s) in sub.iter().enumerate() {
        let rr = s.rref();
        let pivots = rr.pivot_cols.clone();
        let complement: Vec<usize> = (0..y.dims[v]).filter(|c| !pivots.contains(c)).collect();
        let mut p = Matrix::zero(field, y.dims[v], complement.len());
        for k in 0..y.dims[v] {
            let mut row = vec![field.zero(); y.dims[v]];
            row[k] = field.one();
            for (ri, &pc) in pivots.iter().enumerate() {
                let c = row[pc].clone();
                if c.is_zero() {
                    continue;
                }
                for j in 0..y.dims[v] {
                    row[j] = row[j].sub(&c.mul(rr.reduced.get(ri, j)));
                }
            }
            for (j, &cc) in complement.iter().enumerate() {
                p.set(k, j, row[cc].clone());
            }
        }
        projs.push(p);
    }
    let dims: Vec<usize> = projs.iter().map(|p| p.cols).collect();
    let mats: Vec<Matrix> = y
        .algebra
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            // solve P_v C = Y_a P_w for C via transposition
            let pv_t = projs[a.source].transpose();
            let rhs_t = y.arrow_mats[ai].mul(&projs[a.target]).transpose();
            pv_t.solve(&rhs_t)
                .unwrap()
                .expect("projection is not compatible with the arrow action")
                .transpose()
        })
        .collect();
    let qrep = Representation::new(y.algebra.clone(), dims, mats).unwrap();
    let proj = ModuleMorphism::new(y.clone(), qrep.clone(), projs);
    (qrep, proj)
}

/// The radical subspace bases, one per vertex: the span of the images of
/// all arrows ending there.
pub fn radical_subspaces(x: &Rep) -> Vec<Matrix> {
    let field = x.algebra.field;
    (0..x.dims.len())
        .map(|w| {
            let mut stacked = Matrix::zero(field, 0, x.dims[w]);
            for (ai, a) in x.algebra.quiver.arrows.iter().enumerate() {
                if a.target == w {
                    stacked = stacked.vstack(&x.arrow_mats[ai]);
                }
            }
            let rr = stacked.rref();
            rr.reduced.submatrix_rows(&(0..rr.rank).collect::<Vec<_>>())
        })
        .collect()
}

pub fn module_radical(x: &Rep) -> (Rep, ModuleMorphism) {
    subrep_from_bases(x, radical_subspaces(x))
}

pub fn module_top(x: &Rep) -> (Rep, ModuleMorphism) {
    quotient_by_subspaces(x, radical_subspaces(x))
}

pub fn module_socle(x: &Rep) -> (Rep, ModuleMorphism) {
    let field = x.algebra.field;
    let bases: Vec<Matrix> = (0..x.dims.len())
        .map(|v| {
            let mut stacked = Matrix::zero(field, x.dims[v], 0);
            for (ai, a) in x.algebra.quiver.arrows.iter().enumerate() {
                if a.source == v {
                    stacked = stacked.hstack(&x.arrow_mats[ai]);
                }
            }
            stacked.kernel_basis()
        })
        .collect();
    subrep_from_bases(x, bases)
}

/// Loewy length and composition length via the radical filtration. Since
/// every simple is one dimensional, the composition length equals the total
/// dimension; it is still computed layer by layer as a cross check.
pub fn module_length(x: &Rep) -> usize {
    let mut cur = x.clone();
    let mut len = 0;
    while !cur.is_zero() {
        let (rad, _) = module_radical(&cur);
        assert!(rad.total_dim() < cur.total_dim(), "radical did not shrink");
        len += cur.total_dim() - rad.total_dim();
        cur = rad;
    }
    assert_eq!(len, x.total_dim());
    len
}

/// The simple module at a vertex.
pub fn simple(algebra: Arc<Algebra>, v: usize) -> Rep {
    let field = algebra.field;
    let dims: Vec<usize> = (0..algebra.vertex_count()).map(|w| usize::from(w == v)).collect();
    let mats = algebra
        .quiver
        .arrows
        .iter()
        .map(|a| Matrix::zero(field, dims[a.source], dims[a.target]))
        .collect();
    Representation::new(algebra, dims, mats).unwrap()
}

/// The indecomposable projective at a vertex: the right ideal generated by
/// the trivial idempotent.
pub fn projective(algebra: Arc<Algebra>, v: usize) -> Rep {
    let field = algebra.field;
    let members: Vec<usize> = algebra.basis_by_source(v).to_vec();
    let n = algebra.vertex_count();
    let local: Vec<Vec<usize>> = (0..n)
        .map(|w| members.iter().copied().filter(|&b| algebra.basis_target(b) == w).collect())
        .collect();
    let dims: Vec<usize> = local.iter().map(|l| l.len()).collect();
    let mats = algebra
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let r = algebra.right_arrow_mult(ai);
            Matrix::from_fn(field, dims[a.source], dims[a.target], |i, j| {
                r.get(local[a.source][i], local[a.target][j]).clone()
            })
        })
        .collect();
    Representation::new(algebra, dims, mats).unwrap()
}

/// The indecomposable injective at a vertex: the dual of the left ideal
/// generated by the trivial idempotent.
pub fn injective(algebra: Arc<Algebra>, v: usize) -> Rep {
    let field = algebra.field;
    let members: Vec<usize> = algebra.basis_by_target(v).to_vec();
    let n = algebra.vertex_count();
    let local: Vec<Vec<usize>> = (0..n)
        .map(|w| members.iter().copied().filter(|&b| algebra.basis_source(b) == w).collect())
        .collect();
    let dims: Vec<usize> = local.iter().map(|l| l.len()).collect();
    let mats = algebra
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            // dual of left multiplication: entry (t, m) is the coefficient
            // of basis element t in the normal form of a * m
            let l = algebra.left_arrow_mult(ai);
            Matrix::from_fn(field, dims[a.source], dims[a.target], |ti, mi| {
                l.get(local[a.target][mi], local[a.source][ti]).clone()
            })
        })
        .collect();
    Representation::new(algebra, dims, mats).unwrap()
}

/// The algebra as a right module over itself.
pub fn regular_module(algebra: Arc<Algebra>) -> Rep {
    let summands: Vec<Rep> =
        (0..algebra.vertex_count()).map(|v| projective(algebra.clone(), v)).collect();
    direct_sum(algebra, &summands).0
}

/// Direct sum with the inclusions and projections of the summands.
pub fn direct_sum(
    algebra: Arc<Algebra>,
    summands: &[Rep],
) -> (Rep, Vec<ModuleMorphism>, Vec<ModuleMorphism>) {
    let field = algebra.field;
    let n = algebra.vertex_count();
    let dims: Vec<usize> = (0..n).map(|v| summands.iter().map(|s| s.dims[v]).sum()).collect();
    let mats: Vec<Matrix> = algebra
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, _)| {
            let blocks: Vec<&Matrix> = summands.iter().map(|s| &s.arrow_mats[ai]).collect();
            Matrix::block_diag(field, &blocks)
        })
        .collect();
    let total = Representation::new(algebra, dims, mats).unwrap();
    let mut incls = Vec::new();
    let mut projs = Vec::new();
    let mut voffsets = vec![0usize; n];
    for s in summands {
        let mut incl_mats = Vec::new();
        let mut proj_mats = Vec::new();
        for v in 0..n {
            let mut inc = Matrix::zero(field, s.dims[v], total.dims[v]);
            let mut prj = Matrix::zero(field, total.dims[v], s.dims[v]);
            for i in 0..s.dims[v] {
                inc.set(i, voffsets[v] + i, field.one());
                prj.set(voffsets[v] + i, i, field.one());
            }
            incl_mats.push(inc);
            proj_mats.push(prj);
        }
        incls.push(ModuleMorphism::new(s.clone(), total.clone(), incl_mats));
        projs.push(ModuleMorphism::new(total.clone(), s.clone(), proj_mats));
        for v in 0..n {
            voffsets[v] += s.dims[v];
        }
    }
    (total, incls, projs)
}

/// Projective cover `P -> X`: surjective with kernel inside rad P.
pub fn projective_cover(x: &Rep) -> Result<(Rep, ModuleMorphism)> {
    let algebra = x.algebra.clone();
    let field = algebra.field;
    let n = algebra.vertex_count();
    let rad = radical_subspaces(x);
    // per vertex: standard basis rows extending rad X to a basis, so their
    // images in the top form a basis of the top at that vertex
    let mut lifts: Vec<Matrix> = Vec::new();
    for v in 0..n {
        let mut sel = Matrix::zero(field, 0, x.dims[v]);
        let mut current = rad[v].clone();
        for i in 0..x.dims[v] {
            let mut e = vec![field.zero(); x.dims[v]];
            e[i] = field.one();
            let cand = Matrix::from_rows(field, vec![e]);
            if !current.row_space_contains(&cand) {
                current = current.vstack(&cand);
                sel = sel.vstack(&cand);
            }
        }
        lifts.push(sel);
    }
    let summands: Vec<Rep> = (0..n)
        .flat_map(|v| (0..lifts[v].rows).map(move |_| v))
        .map(|v| projective(algebra.clone(), v))
        .collect();
    let vertex_of: Vec<(usize, usize)> = (0..n)
        .flat_map(|v| (0..lifts[v].rows).map(move |k| (v, k)))
        .collect();
    let (p, incls, _) = direct_sum(algebra.clone(), &summands);
    // map each summand P_v by sending its generator to the chosen lift
    let mut cover = ModuleMorphism::zero(p.clone(), x.clone());
    for (si, &(v, k)) in vertex_of.iter().enumerate() {
        let pv = &incls[si].source;
        let generator_row = lifts[v].row_vec(k);
        // basis of P_v at vertex w is the set of monomials v -> w; the map
        // sends monomial m to generator . x(m)
        let members: Vec<usize> = algebra.basis_by_source(v).to_vec();
        let local: Vec<Vec<usize>> = (0..n)
            .map(|w| {
                members.iter().copied().filter(|&b| algebra.basis_target(b) == w).collect()
            })
            .collect();
        let mut mats = Vec::new();
        for w in 0..n {
            let mut mat = Matrix::zero(field, pv.dims[w], x.dims[w]);
            for (i, &b) in local[w].iter().enumerate() {
                let path = &algebra.basis[b];
                let g = Matrix::from_rows(field, vec![generator_row.clone()]);
                let img = g.mul(&x.eval_path(path));
                for j in 0..x.dims[w] {
                    mat.set(i, j, img.get(0, j).clone());
                }
            }
            mats.push(mat);
        }
        let fmap = ModuleMorphism::new(pv.clone(), x.clone(), mats);
        cover = cover.add(&incls[si].inverse_on_image_compose(&fmap));
    }
    if !cover.is_surjective() {
        return Err(Error::Check("projective cover map is not surjective".into()));
    }
    // kernel inside rad P
    let (_, kincl) = kernel(&cover);
    let radp = radical_subspaces(&p);
    for v in 0..n {
        if !radp[v].row_space_contains(&kincl.mats[v]) {
            return Err(Error::Check("projective cover kernel not inside the radical".into()));
        }
    }
    Ok((p, cover))
}

impl ModuleMorphism {
    /// For an inclusion `i : S -> T` and a morphism `f : S -> X`, produce
    /// the morphism `T -> X` that is `f` on the image of `i` and zero on the
    /// complementary coordinates (only used for coordinate inclusions of
    /// direct summands).
    fn inverse_on_image_compose(&self, f: &ModuleMorphism) -> ModuleMorphism {
        let mats = self
            .mats
            .iter()
            .zip(&f.mats)
            .map(|(inc, fm)| {
                // inc is s x t with orthonormal coordinate rows; its
                // transpose is the retraction
                inc.transpose().mul(fm)
            })
            .collect();
        ModuleMorphism { source: self.target.clone(), target: f.target.clone(), mats }
    }
}

/// Injective envelope `X -> E`: injective with essential image.
pub fn injective_envelope(x: &Rep) -> Result<(Rep, ModuleMorphism)> {
    let algebra = x.algebra.clone();
    let field = algebra.field;
    let n = algebra.vertex_count();
    let (_, socincl) = module_socle(x);
    // for each vertex v, functionals on X_v dual to the socle basis there
    let mut summand_vertices = Vec::new();
    let mut functionals: Vec<Vec<Scalar>> = Vec::new();
    for v in 0..n {
        let s = &socincl.mats[v];
        if s.rows == 0 {
            continue;
        }
        // lambda with s . lambda^T = id: solve s * L = I for L
        let rhs = Matrix::identity(field, s.rows);
        // we need L (dims[v] x s.rows) with s * L = rhs; transpose trick
        let l = solve_left(s, &rhs).ok_or_else(|| {
            Error::Check("could not split the socle inclusion".into())
        })?;
        for k in 0..s.rows {
            summand_vertices.push(v);
            functionals.push((0..l.rows).map(|i| l.get(i, k).clone()).collect());
        }
    }
    let summands: Vec<Rep> =
        summand_vertices.iter().map(|&v| injective(algebra.clone(), v)).collect();
    let (e, incls, _) = direct_sum(algebra.clone(), &summands);
    let mut env = ModuleMorphism::zero(x.clone(), e.clone());
    for (si, &v) in summand_vertices.iter().enumerate() {
        let iv = &incls[si].source;
        let lam = &functionals[si];
        // morphism X -> I_v from a functional on X_v: at vertex w the image
        // coordinates are indexed by basis monomials m : w -> v, with value
        // lambda(x . X(m))
        let members: Vec<usize> = algebra.basis_by_target(v).to_vec();
        let local: Vec<Vec<usize>> = (0..n)
            .map(|w| {
                members.iter().copied().filter(|&b| algebra.basis_source(b) == w).collect()
            })
            .collect();
        let mut mats = Vec::new();
        for w in 0..n {
            let mut mat = Matrix::zero(field, x.dims[w], iv.dims[w]);
            for (j, &b) in local[w].iter().enumerate() {
                let path = &algebra.basis[b];
                let act = x.eval_path(path);
                for i in 0..x.dims[w] {
                    let mut val = field.zero();
                    for (k, lk) in lam.iter().enumerate() {
                        val = val.add(&act.get(i, k).mul(lk));
                    }
                    mat.set(i, j, val);
                }
            }
            mats.push(mat);
        }
        let fmap = ModuleMorphism::new(x.clone(), iv.clone(), mats);
        env = env.add(&fmap.compose(&incls[si]));
    }
    if !env.is_injective() {
        return Err(Error::Check("injective envelope map is not injective".into()));
    }
    Ok((e, env))
}

/// Solve `m * l = rhs` for `l` (matrices act on the right of rows, so this
/// is a solve against the columns).
pub fn solve_left(m: &Matrix, rhs: &Matrix) -> Option<Matrix> {
    let mt = m.transpose();
    let rt = rhs.transpose();
    match mt.solve(&rt) {
        Ok(Some(x)) => Some(x.transpose()),
        _ => None,
    }
}

/// Selfinjectivity test for a basic bound quiver algebra: every
/// indecomposable projective must have a simple socle, the socle vertices
/// must form a permutation, and each projective must match the
/// corresponding injective in dimension (the envelope is then forced to be
/// an isomorphism).
pub fn is_selfinjective(algebra: &Arc<Algebra>) -> Result<bool> {
    let n = algebra.vertex_count();
    let mut perm = vec![usize::MAX; n];
    for v in 0..n {
        let p = projective(algebra.clone(), v);
        let (soc, _) = module_socle(&p);
        if soc.total_dim() != 1 {
            return Ok(false);
        }
        let w = (0..n).find(|&w| soc.dims[w] == 1).unwrap();
        if perm.contains(&w) {
            return Ok(false);
        }
        perm[v] = w;
        let i = injective(algebra.clone(), w);
        if i.total_dim() != p.total_dim() || i.dims != p.dims {
            return Ok(false);
        }
        let (_, env) = injective_envelope(&p)?;
        if !env.is_isomorphism() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The Nakayama permutation `v -> socle vertex of P_v` of a selfinjective
/// algebra.
pub fn nakayama_permutation(algebra: &Arc<Algebra>) -> Result<Vec<usize>> {
    let n = algebra.vertex_count();
    let mut perm = Vec::with_capacity(n);
    for v in 0..n {
        let p = projective(algebra.clone(), v);
        let (soc, _) = module_socle(&p);
        if soc.total_dim() != 1 {
            return Err(Error::NotSelfinjective(format!(
                "projective at vertex {} has socle of dimension {}",
                algebra.quiver.vertices[v],
                soc.total_dim()
            )));
        }
        perm.push((0..n).find(|&w| soc.dims[w] == 1).unwrap());
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::quiver::{Arrow, Quiver, Relation};

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

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

    fn exterior(field: FieldSpec) -> Arc<Algebra> {
        let q = Quiver::new(
            vec!["1".into()],
            vec![
                Arrow { name: "x".into(), source: 0, target: 0 },
                Arrow { name: "y".into(), source: 0, target: 0 },
            ],
        )
        .unwrap();
        let m = |arrows: Vec<usize>| Monomial::from_arrows(&q, arrows).unwrap();
        let rels = vec![
            Relation::new(&q, vec![(field.one(), m(vec![0, 0]))]).unwrap(),
            Relation::new(&q, vec![(field.one(), m(vec![1, 1]))]).unwrap(),
            Relation::new(
                &q,
                vec![(field.one(), m(vec![0, 1])), (field.from_int(-1), m(vec![1, 0]))],
            )
            .unwrap(),
        ];
        Arc::new(Algebra::build(q, field, rels, None).unwrap())
    }

    #[test]
    fn projective_over_truncated_polynomials() {
        let a = truncated_poly(gf(5), 3);
        let p = projective(a.clone(), 0);
        assert_eq!(p.dims, vec![3]);
        // x acts with rank 2 and x^3 = 0
        let xm = &p.arrow_mats[0];
        assert_eq!(xm.rank(), 2);
        assert!(xm.mul(xm).mul(xm).is_zero());
        let (soc, _) = module_socle(&p);
        assert_eq!(soc.total_dim(), 1);
        let (rad, _) = module_radical(&p);
        assert_eq!(rad.total_dim(), 2);
        assert_eq!(module_length(&p), 3);
    }

    #[test]
    fn hom_spaces_over_truncated_polynomials() {
        let a = truncated_poly(gf(5), 3);
        let p = projective(a.clone(), 0);
        let s = simple(a.clone(), 0);
        // Hom(P, P) = End(K[x]/x^3) is 3 dimensional
        assert_eq!(hom_dim(&p, &p), 3);
        assert_eq!(hom_dim(&p, &s), 1);
        assert_eq!(hom_dim(&s, &p), 1);
        assert_eq!(hom_dim(&s, &s), 1);
    }

    #[test]
    fn kernel_image_cokernel_of_multiplication_by_x() {
        let a = truncated_poly(gf(5), 3);
        let p = projective(a.clone(), 0);
        // multiplication by x as an endomorphism of P
        let f = ModuleMorphism::new(p.clone(), p.clone(), vec![p.arrow_mats[0].clone()]);
        let (k, kincl) = kernel(&f);
        assert_eq!(k.total_dim(), 1);
        assert!(kincl.compose(&f).is_zero());
        let (im, _) = image(&f);
        assert_eq!(im.total_dim(), 2);
        let (ck, cproj) = cokernel(&f);
        assert_eq!(ck.total_dim(), 1);
        assert!(f.compose(&cproj).is_zero());
    }

    #[test]
    fn projective_cover_of_simple() {
        let a = truncated_poly(gf(5), 3);
        let s = simple(a.clone(), 0);
        let (p, cover) = projective_cover(&s).unwrap();
        assert_eq!(p.total_dim(), 3);
        assert!(cover.is_surjective());
        let (k, _) = kernel(&cover);
        assert_eq!(k.total_dim(), 2);
    }

    #[test]
    fn injective_envelope_of_simple() {
        let a = truncated_poly(gf(5), 3);
        let s = simple(a.clone(), 0);
        let (e, env) = injective_envelope(&s).unwrap();
        assert_eq!(e.total_dim(), 3);
        assert!(env.is_injective());
    }

    #[test]
    fn selfinjective_examples() {
        assert!(is_selfinjective(&truncated_poly(gf(5), 3)).unwrap());
        assert!(is_selfinjective(&exterior(gf(5))).unwrap());
        assert_eq!(nakayama_permutation(&exterior(gf(5))).unwrap(), vec![0]);
    }

    #[test]
    fn non_selfinjective_example() {
        // path algebra of 1 -> 2 with no relations
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![Arrow { name: "a".into(), source: 0, target: 1 }],
        )
        .unwrap();
        let a = Arc::new(Algebra::build(q, gf(5), vec![], None).unwrap());
        assert_eq!(a.dim(), 3);
        assert!(!is_selfinjective(&a).unwrap());
    }

    #[test]
    fn direct_sum_round_trip() {
        let a = truncated_poly(gf(5), 3);
        let p = projective(a.clone(), 0);
        let s = simple(a.clone(), 0);
        let (t, incls, projs) = direct_sum(a.clone(), &[p.clone(), s.clone()]);
        assert_eq!(t.total_dim(), 4);
        for (i, p) in incls.iter().zip(&projs) {
            let comp = i.compose(p);
            assert!(comp
                .mats
                .iter()
                .all(|m| m.is_identity()));
        }
    }

    #[test]
    fn regular_module_dimension_matches_algebra() {
        let a = exterior(gf(5));
        let r = regular_module(a.clone());
        assert_eq!(r.total_dim(), a.dim());
        // the socle of the regular module matches the algebra socle
        let (soc, _) = module_socle(&r);
        assert_eq!(soc.total_dim(), a.socle_basis().unwrap().rows);
    }
}
