//! Endomorphism algebras of modules and their global dimension, computed
//! by minimal projective resolutions of the simple modules.

use crate::decomp::{AbstractAlgebra, EndAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::par::par_map;
use crate::rep::{direct_sum, Rep};

/// The basic endomorphism algebra End(M_1 + ... + M_k) of pairwise
/// non-isomorphic indecomposables, with the block idempotents e_i given by
/// the projections onto the summands.
pub struct EndoAlgebra {
    pub summands: Vec<Rep>,
    pub module: Rep,
    pub alg: AbstractAlgebra,
    pub rad: Matrix,
    pub block_idempotents: Vec<Vec<Scalar>>,
}

/// A right module over the endomorphism algebra: `action[j]` is the matrix
/// of the j-th algebra basis element, acting on row vectors.
pub struct EModule {
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl EndoAlgebra {
    pub fn new(summands: &[Rep]) -> Result<EndoAlgebra> {
        let algebra = summands
            .first()
            .ok_or_else(|| Error::ModuleHypothesis("empty summand list".into()))?
            .algebra
            .clone();
        let (module, incls, projs) = direct_sum(algebra, summands);
        let end = EndAlgebra::new(&module);
        let alg = AbstractAlgebra::from_end(&end);
        let rad = end.radical()?;
        let block_idempotents = projs
            .iter()
            .zip(&incls)
            .map(|(p, i)| end.coords(&p.compose(i)))
            .collect();
        Ok(EndoAlgebra { summands: summands.to_vec(), module, alg, rad, block_idempotents })
    }

    pub fn field(&self) -> FieldSpec {
        self.alg.field
    }

    pub fn dim(&self) -> usize {
        self.alg.dim
    }

    /// Action of an algebra element on a module, as one matrix.
    fn rho(&self, v: &EModule, y: &[Scalar]) -> Matrix {
        let mut out = Matrix::zero(self.field(), v.dim, v.dim);
        for (c, a) in y.iter().zip(&v.action) {
            if !c.is_zero() {
                out = out.add(&a.scale(c));
            }
        }
        out
    }

    /// The right regular module.
    pub fn regular(&self) -> EModule {
        EModule {
            dim: self.dim(),
            action: (0..self.dim()).map(|j| self.alg.right_basis(j).clone()).collect(),
        }
    }

    /// The projective e_i E, as a module plus its basis rows inside E.
    pub fn projective(&self, i: usize) -> (EModule, Matrix) {
        let e = &self.block_idempotents[i];
        let reg = self.regular();
        // e * b_j over all j spans e E
        let rows: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| {
                Matrix::from_rows(self.field(), vec![e.clone()])
                    .mul(&reg.action[j])
                    .row_vec(0)
            })
            .collect();
        let rr = Matrix::from_rows(self.field(), rows).rref();
        let basis = rr.reduced.submatrix_rows(&(0..rr.rank).collect::<Vec<_>>());
        (self.submodule(&reg, &basis), basis)
    }

    /// Restrict a module to an invariant subspace given by basis rows.
    pub fn submodule(&self, v: &EModule, basis: &Matrix) -> EModule {
        let solver = basis.solver();
        let action = v
            .action
            .iter()
            .map(|a| solver.solve(&basis.mul(a)).unwrap().expect("subspace not invariant"))
            .collect();
        EModule { dim: basis.rows, action }
    }

    /// Quotient by an invariant subspace; returns the module and the
    /// projection matrix.
    pub fn quotient(&self, v: &EModule, sub: &Matrix) -> (EModule, Matrix) {
        let field = self.field();
        let rr = sub.rref();
        let pivots = rr.pivot_cols.clone();
        let complement: Vec<usize> = (0..v.dim).filter(|c| !pivots.contains(c)).collect();
        let q = complement.len();
        let mut projection = Matrix::zero(field, v.dim, q);
        for k in 0..v.dim {
            let mut row = vec![field.zero(); v.dim];
            row[k] = field.one();
            for (ri, &pc) in pivots.iter().enumerate() {
                let c = row[pc].clone();
                if c.is_zero() {
                    continue;
                }
                for j in 0..v.dim {
                    row[j] = row[j].sub(&c.mul(rr.reduced.get(ri, j)));
                }
            }
            for (j, &cc) in complement.iter().enumerate() {
                projection.set(k, j, row[cc].clone());
            }
        }
        let mut lift = Matrix::zero(field, q, v.dim);
        for (j, &cc) in complement.iter().enumerate() {
            lift.set(j, cc, field.one());
        }
        let action = v.action.iter().map(|a| lift.mul(a).mul(&projection)).collect();
        (EModule { dim: q, action }, projection)
    }

    /// The subspace V . rad(E), as basis rows. Reduced incrementally so the
    /// working set never exceeds two dim-by-dim matrices.
    pub fn radical_subspace(&self, v: &EModule) -> Matrix {
        let field = self.field();
        let mut basis = Matrix::zero(field, 0, v.dim);
        for r in 0..self.rad.rows {
            let rr = basis.vstack(&self.rho(v, self.rad.row(r))).rref();
            basis = rr.reduced.submatrix_rows(&(0..rr.rank).collect::<Vec<_>>());
            if basis.rows == v.dim {
                break;
            }
        }
        basis
    }

    /// The simple top of the i-th projective.
    pub fn simple(&self, i: usize) -> EModule {
        let (p, _) = self.projective(i);
        let rad = self.radical_subspace(&p);
        self.quotient(&p, &rad).0
    }

    /// Minimal projective cover of a module: the total projective, the
    /// covering matrix (rows = cover coordinates), and the summand indices
    /// used. The kernel-inside-radical condition is verified.
    pub fn projective_cover(&self, v: &EModule) -> Result<(EModule, Matrix, Vec<usize>)> {
        let field = self.field();
        let vrad = self.radical_subspace(v);
        let (top, top_proj) = self.quotient(v, &vrad);
        // choose generators: vectors of V whose images generate the top,
        // grouped under the block idempotents
        let mut gens: Vec<(usize, Vec<Scalar>)> = Vec::new();
        let mut covered = Matrix::zero(field, 0, top.dim);
        for (i, e) in self.block_idempotents.iter().enumerate() {
            let te = self.rho(&top, e);
            for r in 0..top.dim {
                let mut unit = Matrix::zero(field, 1, top.dim);
                unit.set(0, r, field.one());
                let w = unit.mul(&te);
                if w.is_zero() || covered.row_space_contains(&w) {
                    continue;
                }
                // the image of e_i E through this generator inside the top
                let img: Vec<Vec<Scalar>> =
                    (0..self.dim()).map(|j| w.mul(&top.action[j]).row_vec(0)).collect();
                covered = covered.vstack(&Matrix::from_rows(field, img));
                let rrc = covered.rref();
                covered =
                    rrc.reduced.submatrix_rows(&(0..rrc.rank).collect::<Vec<_>>());
                // lift w back to V and stick to the e_i part
                let lifted = top_proj
                    .solve(&w)
                    .unwrap()
                    .expect("top projection is surjective");
                let gen = lifted.mul(&self.rho(v, e)).row_vec(0);
                gens.push((i, gen));
            }
        }
        // assemble P = sum of e_i E over generators, map generated by right
        // multiplication
        let mut parts = Vec::new();
        let mut maps: Vec<Matrix> = Vec::new();
        let mut indices = Vec::new();
        for (i, gen) in &gens {
            let (pm, basis) = self.projective(*i);
            // basis row (coords x in E) maps to gen . rho(x)
            let rows: Vec<Vec<Scalar>> = (0..basis.rows)
                .map(|r| {
                    Matrix::from_rows(field, vec![gen.clone()])
                        .mul(&self.rho(v, basis.row(r)))
                        .row_vec(0)
                })
                .collect();
            maps.push(Matrix::from_rows(field, rows));
            parts.push(pm);
            indices.push(*i);
        }
        let total = self.direct_sum_modules(&parts);
        let mut map = Matrix::zero(field, 0, v.dim);
        for m in &maps {
            map = map.vstack(m);
        }
        // cover must be surjective with kernel inside P rad E
        if map.rank() != v.dim {
            return Err(Error::Check("projective cover is not surjective".into()));
        }
        let ker = map.kernel_basis();
        if ker.rows > 0 {
            let prad = self.radical_subspace(&total);
            let solver = prad.solver();
            for r in 0..ker.rows {
                if !solver.contains(&ker.submatrix_rows(&[r])) {
                    return Err(Error::Check(
                        "projective cover kernel escapes the radical".into(),
                    ));
                }
            }
        }
        Ok((total, map, indices))
    }

    fn direct_sum_modules(&self, parts: &[EModule]) -> EModule {
        let field = self.field();
        let dim = parts.iter().map(|p| p.dim).sum();
        let action = (0..self.dim())
            .map(|j| {
                let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.action[j]).collect();
                if blocks.is_empty() {
                    Matrix::zero(field, 0, 0)
                } else {
                    Matrix::block_diag(field, &blocks)
                }
            })
            .collect();
        EModule { dim, action }
    }

    /// Projective dimension of a module, as syzygy steps until a kernel
    /// vanishes, capped.
    pub fn projective_dimension(&self, v: &EModule, cap: usize) -> Result<GlDim> {
        // syzygies of a module with unbounded projective dimension can grow
        // geometrically; bail out with the lower bound proved so far rather
        // than exhausting memory
        const DIM_BUDGET: usize = 128;
        let mut cur = EModule { dim: v.dim, action: v.action.clone() };
        let mut steps = 0usize;
        loop {
            if cur.dim == 0 {
                return Ok(GlDim::Finite(steps));
            }
            if cur.dim > DIM_BUDGET {
                return Ok(GlDim::AtLeast(steps));
            }
            let (p, map, _) = self.projective_cover(&cur)?;
            let ker = map.kernel_basis();
            if ker.rows == 0 {
                return Ok(GlDim::Finite(steps));
            }
            steps += 1;
            if steps > cap {
                return Ok(GlDim::AtLeast(cap + 1));
            }
            cur = self.submodule(&p, &ker);
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GlDim {
    Finite(usize),
    AtLeast(usize),
}

impl std::fmt::Display for GlDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GlDim::Finite(n) => write!(f, "{n}"),
            GlDim::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

pub struct GlobalDimensionReport {
    pub value: GlDim,
    pub per_simple: Vec<GlDim>,
}

/// Global dimension as the maximum projective dimension of the simple
/// modules, one per block idempotent.
pub fn global_dimension(e: &EndoAlgebra, cap: usize) -> Result<GlobalDimensionReport> {
    let results = par_map((0..e.summands.len()).collect::<Vec<_>>(), |i| {
        e.projective_dimension(&e.simple(i), cap)
    });
    let mut per_simple = Vec::new();
    for r in results {
        per_simple.push(r?);
    }
    let value = per_simple.iter().fold(GlDim::Finite(0), |acc, d| match (acc, d) {
        (GlDim::AtLeast(a), GlDim::AtLeast(b)) => GlDim::AtLeast(a.max(*b)),
        (GlDim::AtLeast(a), GlDim::Finite(_)) => GlDim::AtLeast(a),
        (GlDim::Finite(_), GlDim::AtLeast(b)) => GlDim::AtLeast(*b),
        (GlDim::Finite(a), GlDim::Finite(b)) => GlDim::Finite(a.max(*b)),
    });
    Ok(GlobalDimensionReport { value, per_simple })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::quiver::{Arrow, Monomial, Quiver, Relation};
    use crate::rep::{module_radical, projective, simple};
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

    #[test]
    fn end_of_simple_is_one_dimensional_and_semisimple() {
        let f = FieldSpec::prime(5).unwrap();
        let a = truncated_poly(f, 3);
        let s = simple(a.clone(), 0);
        let e = EndoAlgebra::new(&[s]).unwrap();
        assert_eq!(e.dim(), 1);
        let rep = global_dimension(&e, 12).unwrap();
        assert_eq!(rep.value, GlDim::Finite(0));
    }

    #[test]
    fn end_of_regular_module_has_infinite_global_dimension() {
        // End(A) = A = K[x]/(x^2), selfinjective and not semisimple
        let f = FieldSpec::prime(5).unwrap();
        let a = truncated_poly(f, 2);
        let p = projective(a.clone(), 0);
        let e = EndoAlgebra::new(&[p]).unwrap();
        assert_eq!(e.dim(), 2);
        let rep = global_dimension(&e, 6).unwrap();
        assert_eq!(rep.value, GlDim::AtLeast(7));
    }

    #[test]
    fn auslander_algebra_of_kx3_has_global_dimension_two() {
        for f in [FieldSpec::prime(5).unwrap(), FieldSpec::Rational] {
            let a = truncated_poly(f, 3);
            let p = projective(a.clone(), 0);
            let (r, _) = module_radical(&p);
            let s = simple(a.clone(), 0);
            let e = EndoAlgebra::new(&[p, r, s]).unwrap();
            // dim = sum of all hom spaces between the three uniserials
            assert_eq!(e.dim(), 14);
            let rep = global_dimension(&e, 12).unwrap();
            assert_eq!(rep.value, GlDim::Finite(2));
        }
    }
}
