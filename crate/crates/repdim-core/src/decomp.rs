//! Splitting modules into indecomposable summands.
//!
//! The tools here are the radical of an endomorphism algebra (trace form in
//! characteristic zero, a chain of characteristic polynomial coefficient
//! forms in characteristic p), idempotent hunting in the semisimple
//! quotient, idempotent lifting, and an exact isomorphism test for
//! indecomposables.

use crate::error::{Error, Result};
use crate::field::{mod_inverse, FieldSpec, Scalar};
use crate::matrix::{LinSolver, Matrix};
use crate::par::par_map;
use crate::poly::{factor_gfp, min_poly, rational_roots, Poly};
use crate::rep::{hom_basis, ModuleMorphism, Rep};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Characteristic polynomial of a square matrix over GF(p), computed on u64
/// copies via Hessenberg reduction. Coefficients ascending, monic.
pub fn charpoly_mod_p(m: &Matrix, p: u64) -> Vec<u64> {
    let n = m.rows;
    assert_eq!(m.rows, m.cols);
    let mut h: Vec<Vec<u64>> =
        (0..n).map(|i| (0..n).map(|j| m.get(i, j).residue().unwrap()).collect()).collect();
    // similarity reduction to upper Hessenberg form
    for j in 0..n.saturating_sub(2) {
        let Some(pv) = ((j + 1)..n).find(|&i| h[i][j] != 0) else { continue };
        if pv != j + 1 {
            h.swap(pv, j + 1);
            for row in h.iter_mut() {
                row.swap(pv, j + 1);
            }
        }
        let inv = mod_inverse(h[j + 1][j], p);
        for i in (j + 2)..n {
            if h[i][j] != 0 {
                let f = h[i][j] * inv % p;
                for c in 0..n {
                    let sub = f * h[j + 1][c] % p;
                    h[i][c] = (h[i][c] + p - sub) % p;
                }
                for r in 0..n {
                    h[r][j + 1] = (h[r][j + 1] + f * h[r][i]) % p;
                }
            }
        }
    }
    // characteristic polynomials of the leading principal minors
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for mm in 1..=n {
        let prev = &polys[mm - 1];
        // (x - h[mm-1][mm-1]) * prev
        let a = h[mm - 1][mm - 1];
        let mut pm = vec![0u64; mm + 1];
        for (k, &c) in prev.iter().enumerate() {
            pm[k + 1] = (pm[k + 1] + c) % p;
            let sub = a * c % p;
            pm[k] = (pm[k] + p - sub) % p;
        }
        let mut prod = 1u64;
        for i in (1..mm).rev() {
            prod = prod * h[i][i - 1] % p;
            let coef = h[i - 1][mm - 1] * prod % p;
            if coef != 0 {
                for (k, &c) in polys[i - 1].iter().enumerate() {
                    let sub = coef * c % p;
                    pm[k] = (pm[k] + p - sub) % p;
                }
            }
        }
        polys.push(pm);
    }
    polys.pop().unwrap()
}

fn mul_u64_polys(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Coefficient of `t^(n - idx)` in the characteristic polynomial of a
/// morphism, using that the total matrix is block diagonal per vertex.
fn charpoly_coeff(f: &ModuleMorphism, p: u64, idx: usize) -> u64 {
    let mut cp = vec![1u64];
    for m in &f.mats {
        if m.rows > 0 {
            cp = mul_u64_polys(&cp, &charpoly_mod_p(m, p), p);
        }
    }
    let n = cp.len() - 1;
    if idx > n {
        0
    } else {
        cp[n - idx]
    }
}

fn trace_of_composite(f: &ModuleMorphism, g: &ModuleMorphism) -> Scalar {
    let field = f.source.algebra.field;
    let mut acc = field.zero();
    for (a, b) in f.mats.iter().zip(&g.mats) {
        for i in 0..a.rows {
            for j in 0..a.cols {
                acc = acc.add(&a.get(i, j).mul(b.get(j, i)));
            }
        }
    }
    acc
}

/// The endomorphism algebra of a representation, with multiplication
/// `a * b = a then b`.
pub struct EndAlgebra {
    pub rep: Rep,
    pub basis: Vec<ModuleMorphism>,
    solver: LinSolver,
}

impl EndAlgebra {
    pub fn new(rep: &Rep) -> EndAlgebra {
        let basis = hom_basis(rep, rep);
        let field = rep.algebra.field;
        let flat = if basis.is_empty() {
            Matrix::zero(field, 0, 0)
        } else {
            Matrix::from_rows(field, basis.iter().map(|b| b.flatten()).collect())
        };
        EndAlgebra { rep: rep.clone(), basis, solver: flat.solver() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.rep.algebra.field
    }

    pub fn coords(&self, f: &ModuleMorphism) -> Vec<Scalar> {
        let flat = Matrix::from_rows(self.field(), vec![f.flatten()]);
        self.solver
            .solve(&flat)
            .unwrap()
            .expect("morphism outside the endomorphism space")
            .row_vec(0)
    }

    pub fn element(&self, coords: &[Scalar]) -> ModuleMorphism {
        let mut out = ModuleMorphism::zero(self.rep.clone(), self.rep.clone());
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c));
            }
        }
        out
    }

    pub fn identity_coords(&self) -> Vec<Scalar> {
        self.coords(&ModuleMorphism::identity(self.rep.clone()))
    }

    /// Coordinate rows spanning the Jacobson radical.
    pub fn radical(&self) -> Result<Matrix> {
        let field = self.field();
        let d = self.dim();
        if d == 0 {
            return Ok(Matrix::zero(field, 0, 0));
        }
        // level zero: the trace form, whose kernel contains the radical in
        // any characteristic and equals it in characteristic zero
        let pairs: Vec<(usize, usize)> =
            (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect();
        let entries = par_map(pairs, |(i, j)| trace_of_composite(&self.basis[i], &self.basis[j]));
        let gram = Matrix::from_fn(field, d, d, |i, j| entries[i * d + j].clone());
        let mut space = gram.kernel_basis();
        if let FieldSpec::Prime(p) = field {
            // higher characteristic polynomial coefficient forms; each is
            // additive and GF(p) linear on the previous kernel
            let n = self.rep.total_dim() as u64;
            let mut pk = p;
            while pk <= n {
                let r = space.rows;
                if r == 0 {
                    break;
                }
                let elems: Vec<ModuleMorphism> =
                    (0..r).map(|i| self.element(space.row(i))).collect();
                let idx = pk as usize;
                let pairs: Vec<(usize, usize)> =
                    (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).collect();
                let vals = par_map(pairs, |(i, j)| {
                    charpoly_coeff(&elems[i].compose(&elems[j]), p, idx)
                });
                let gram = Matrix::from_fn(field, r, r, |i, j| {
                    field.from_int(vals[i * r + j] as i64)
                });
                space = gram.kernel_basis().mul(&space);
                pk = pk.saturating_mul(p);
            }
        }
        self.verify_radical(&space)?;
        Ok(space)
    }

    /// The claimed radical must be a nilpotent two-sided ideal.
    fn verify_radical(&self, rad: &Matrix) -> Result<()> {
        if rad.rows == 0 {
            return Ok(());
        }
        let solver = rad.solver();
        let elems: Vec<ModuleMorphism> =
            (0..rad.rows).map(|i| self.element(rad.row(i))).collect();
        let field = self.field();
        for n in &elems {
            for b in &self.basis {
                for prod in [n.compose(b), b.compose(n)] {
                    let c = Matrix::from_rows(field, vec![self.coords(&prod)]);
                    if !solver.contains(&c) {
                        return Err(Error::Check(
                            "computed radical is not a two-sided ideal".into(),
                        ));
                    }
                }
            }
        }
        let mut layer = elems.clone();
        for _ in 0..=self.dim() {
            if layer.is_empty() {
                return Ok(());
            }
            // span of layer . rad, reduced to a basis by coordinates
            let rows: Vec<Vec<Scalar>> = par_map(
                layer
                    .iter()
                    .flat_map(|x| elems.iter().map(move |y| (x, y)))
                    .collect::<Vec<_>>(),
                |(x, y)| self.coords(&x.compose(y)),
            );
            let stacked = Matrix::from_rows(field, rows);
            let rr = stacked.rref();
            if rr.rank == 0 {
                return Ok(());
            }
            if rr.rank >= layer.len() {
                return Err(Error::Check("computed radical is not nilpotent".into()));
            }
            layer = (0..rr.rank).map(|i| self.element(rr.reduced.row(i))).collect();
        }
        Err(Error::Check("computed radical is not nilpotent".into()))
    }
}

/// An associative unital algebra given by right multiplication matrices
/// over an abstract basis. Product `x * y` is "x then y" when elements are
/// endomorphisms.
pub struct AbstractAlgebra {
    pub field: FieldSpec,
    pub dim: usize,
    right: Vec<Matrix>,
    pub unit: Vec<Scalar>,
}

impl AbstractAlgebra {
    /// The full endomorphism algebra in abstract coordinates.
    pub fn from_end(end: &EndAlgebra) -> AbstractAlgebra {
        let field = end.field();
        let d = end.dim();
        let right = (0..d)
            .map(|j| {
                Matrix::from_rows(
                    field,
                    (0..d)
                        .map(|i| end.coords(&end.basis[i].compose(&end.basis[j])))
                        .collect(),
                )
            })
            .collect();
        AbstractAlgebra { field, dim: d, right, unit: end.identity_coords() }
    }

    /// The semisimple quotient E/rad as an abstract algebra, together with
    /// the lift of its basis into E coordinates and the projection from E
    /// coordinates.
    pub fn quotient_of_end(end: &EndAlgebra, rad: &Matrix) -> (AbstractAlgebra, Matrix, Matrix) {
        let field = end.field();
        let d = end.dim();
        let rr = rad.rref();
        let pivots = rr.pivot_cols.clone();
        let complement: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        let q = complement.len();
        let mut projection = Matrix::zero(field, d, q);
        for k in 0..d {
            let mut row = vec![field.zero(); d];
            row[k] = field.one();
            for (ri, &pc) in pivots.iter().enumerate() {
                let c = row[pc].clone();
                if c.is_zero() {
                    continue;
                }
                for j in 0..d {
                    row[j] = row[j].sub(&c.mul(rr.reduced.get(ri, j)));
                }
            }
            for (j, &cc) in complement.iter().enumerate() {
                projection.set(k, j, row[cc].clone());
            }
        }
        let mut lift = Matrix::zero(field, q, d);
        for (j, &cc) in complement.iter().enumerate() {
            lift.set(j, cc, field.one());
        }
        let lifted: Vec<ModuleMorphism> =
            (0..q).map(|j| end.element(lift.row(j))).collect();
        let right = (0..q)
            .map(|j| {
                Matrix::from_rows(
                    field,
                    (0..q)
                        .map(|i| {
                            let prod = lifted[i].compose(&lifted[j]);
                            let c = Matrix::from_rows(field, vec![end.coords(&prod)]);
                            c.mul(&projection).row_vec(0)
                        })
                        .collect(),
                )
            })
            .collect();
        let unit = Matrix::from_rows(field, vec![end.identity_coords()])
            .mul(&projection)
            .row_vec(0);
        (AbstractAlgebra { field, dim: q, right, unit }, lift, projection)
    }

    /// Right multiplication matrix of the j-th basis element.
    pub fn right_basis(&self, j: usize) -> &Matrix {
        &self.right[j]
    }

    pub fn right_mult_of(&self, y: &[Scalar]) -> Matrix {
        let mut out = Matrix::zero(self.field, self.dim, self.dim);
        for (j, c) in y.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.right[j].scale(c));
            }
        }
        out
    }

    pub fn mult(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        Matrix::from_rows(self.field, vec![x.to_vec()])
            .mul(&self.right_mult_of(y))
            .row_vec(0)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..i).all(|j| self.right[j].row(i) == self.right[i].row(j))
        })
    }

    /// Minimal polynomial of an element, via its faithful right regular
    /// action.
    pub fn min_poly_of(&self, y: &[Scalar]) -> Poly {
        min_poly(&self.right_mult_of(y))
    }

    /// Rows spanning the center.
    pub fn center(&self) -> Matrix {
        // z is central iff z * b_i = b_i * z for every basis element; the
        // left multiplication row j of L_i is row i of right[j]
        let mut stacked = Matrix::zero(self.field, self.dim, 0);
        for i in 0..self.dim {
            let li = Matrix::from_rows(
                self.field,
                (0..self.dim).map(|j| self.right[j].row_vec(i)).collect(),
            );
            stacked = stacked.hstack(&self.right[i].sub(&li));
        }
        stacked.kernel_basis()
    }

    /// Evaluate a polynomial at an element.
    pub fn eval_poly(&self, p: &Poly, y: &[Scalar]) -> Vec<Scalar> {
        let r = self.right_mult_of(y);
        let mut acc = vec![self.field.zero(); self.dim];
        for c in p.coeffs.iter().rev() {
            acc = Matrix::from_rows(self.field, vec![acc]).mul(&r).row_vec(0);
            if !c.is_zero() {
                for (a, u) in acc.iter_mut().zip(&self.unit) {
                    *a = a.add(&c.mul(u));
                }
            }
        }
        acc
    }
}

fn is_zero_row(v: &[Scalar]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// The polynomial `e` with `e = 1 mod primaries[0]` and `e = 0` modulo the
/// other pairwise coprime primary factors; evaluating it at the element
/// whose minimal polynomial is the product gives an idempotent.
fn crt_idempotent_poly(primaries: &[Poly]) -> Poly {
    let m1 = &primaries[0];
    let mut h = Poly::one(m1.field);
    for f in &primaries[1..] {
        h = h.mul(f);
    }
    let m = m1.mul(&h);
    let (g, s, _) = h.ext_gcd(m1);
    assert_eq!(g.degree(), 0, "primary factors are not coprime");
    s.mul(&h).rem(&m)
}

/// Split the minimal polynomial into pairwise coprime primary factors. Over
/// GF(p) this is complete; over Q the rational roots are split off and the
/// remaining cofactor is kept as one (possibly composite) block.
fn primary_factors(m: &Poly, seed: u64) -> Result<Vec<Poly>> {
    match m.field {
        FieldSpec::Prime(_) => Ok(factor_gfp(m, seed)
            .into_iter()
            .map(|(g, e)| (0..e).fold(Poly::one(m.field), |acc, _| acc.mul(&g)))
            .collect()),
        FieldSpec::Rational => {
            let (roots, rest) = rational_roots(m)?;
            let mut out: Vec<Poly> = roots
                .iter()
                .map(|(c, e)| {
                    let lin = Poly::new(m.field, vec![c.neg(), m.field.one()]);
                    (0..*e).fold(Poly::one(m.field), |acc, _| acc.mul(&lin))
                })
                .collect();
            if rest.degree() > 0 {
                out.push(rest);
            }
            Ok(out)
        }
    }
}

fn random_coords(field: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..n)
        .map(|_| match field {
            FieldSpec::Prime(p) => field.from_int(rng.gen_range(0..p) as i64),
            FieldSpec::Rational => field.from_int(rng.gen_range(-4..=4)),
        })
        .collect()
}

/// Minimal polynomial of a module endomorphism.
fn morphism_min_poly(f: &ModuleMorphism) -> Poly {
    let field = f.source.algebra.field;
    let blocks: Vec<&Matrix> = f.mats.iter().collect();
    let total = Matrix::block_diag(field, &blocks);
    min_poly(&total)
}

/// Evaluate a polynomial at a module endomorphism.
fn morphism_eval_poly(p: &Poly, f: &ModuleMorphism) -> ModuleMorphism {
    let id = ModuleMorphism::identity(f.source.clone());
    let mut acc = ModuleMorphism::zero(f.source.clone(), f.source.clone());
    for c in p.coeffs.iter().rev() {
        acc = acc.compose(f);
        if !c.is_zero() {
            acc = acc.add(&id.scale(c));
        }
    }
    acc
}

/// A nontrivial idempotent of a semisimple abstract algebra, or `None` if
/// the algebra is certified to be a division algebra (so the module it came
/// from is indecomposable).
fn splitting_idempotent_semisimple(
    q: &AbstractAlgebra,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Vec<Scalar>>> {
    if q.dim <= 1 {
        return Ok(None);
    }
    let field = q.field;
    let z = q.center();
    match field {
        FieldSpec::Prime(p) => {
            // the span of the central idempotents is the fixed space of the
            // GF(p)-linear Frobenius map on the center
            let zsolver = z.solver();
            let mut frob = Matrix::zero(field, z.rows, z.rows);
            for k in 0..z.rows {
                // z_k^p via square and multiply on the regular action
                let r = q.right_mult_of(z.row(k));
                let mut acc = Matrix::from_rows(field, vec![q.unit.clone()]);
                let mut base = r;
                let mut e = p;
                loop {
                    if e & 1 == 1 {
                        acc = acc.mul(&base);
                    }
                    e >>= 1;
                    if e == 0 {
                        break;
                    }
                    base = base.mul(&base);
                }
                let coords = zsolver
                    .solve(&acc)
                    .unwrap()
                    .expect("Frobenius power left the center");
                for j in 0..z.rows {
                    frob.set(k, j, coords.get(0, j).clone());
                }
            }
            let fixed = frob.sub(&Matrix::identity(field, z.rows)).kernel_basis();
            if fixed.rows >= 2 {
                // some fixed vector is not scalar; its minimal polynomial
                // splits into distinct linear factors
                let unit_row = Matrix::from_rows(field, vec![q.unit.clone()]);
                for k in 0..fixed.rows {
                    let v = Matrix::from_rows(field, vec![fixed.row_vec(k)]).mul(&z);
                    if unit_row.row_space_contains(&v) {
                        continue;
                    }
                    let coords = v.row_vec(0);
                    let m = q.min_poly_of(&coords);
                    let primaries = primary_factors(&m, 17)?;
                    assert!(primaries.len() >= 2);
                    let e = q.eval_poly(&crt_idempotent_poly(&primaries), &coords);
                    return Ok(Some(e));
                }
                unreachable!("fixed space of dimension at least two has a non-scalar vector");
            }
            if q.is_commutative() {
                // single central component and commutative: a finite field
                return Ok(None);
            }
            // a matrix algebra over a field: hunt for an element whose
            // minimal polynomial is not irreducible
            let mut candidates: Vec<Vec<Scalar>> = Vec::new();
            for i in 0..q.dim {
                let mut e = vec![field.zero(); q.dim];
                e[i] = field.one();
                candidates.push(e);
            }
            for _ in 0..200 {
                candidates.push(random_coords(field, q.dim, rng));
            }
            for u in candidates {
                if is_zero_row(&u) {
                    continue;
                }
                if let Some(e) = idempotent_from_element(q, &u, rng)? {
                    return Ok(Some(e));
                }
            }
            Err(Error::Check(
                "could not split a noncommutative semisimple endomorphism quotient".into(),
            ))
        }
        FieldSpec::Rational => {
            let mut candidates: Vec<Vec<Scalar>> = (0..z.rows).map(|k| z.row_vec(k)).collect();
            for i in 0..q.dim {
                let mut e = vec![field.zero(); q.dim];
                e[i] = field.one();
                candidates.push(e);
            }
            for _ in 0..64 {
                candidates.push(random_coords(field, q.dim, rng));
            }
            let mut certified_irreducible_primitive = false;
            for u in &candidates {
                if is_zero_row(u) {
                    continue;
                }
                if let Some(e) = idempotent_from_element(q, u, rng)? {
                    return Ok(Some(e));
                }
                let m = q.min_poly_of(u);
                // degree up to three with no rational root certifies
                // irreducibility over Q
                if m.degree() == q.dim && m.degree() <= 3 {
                    certified_irreducible_primitive = true;
                }
            }
            if q.is_commutative() && (q.dim == 1 || certified_irreducible_primitive) {
                return Ok(None);
            }
            Err(Error::UndecidedOverQ(
                "cannot certify whether the semisimple endomorphism quotient is a division algebra"
                    .into(),
            ))
        }
    }
}

/// Try to produce an idempotent from a single element: split coprime
/// primary factors of its minimal polynomial, or use a nilpotent polynomial
/// image as a zero divisor whose left ideal is generated by an idempotent.
fn idempotent_from_element(
    q: &AbstractAlgebra,
    u: &[Scalar],
    _rng: &mut ChaCha8Rng,
) -> Result<Option<Vec<Scalar>>> {
    let m = q.min_poly_of(u);
    let primaries = primary_factors(&m, 23)?;
    if primaries.len() >= 2 {
        let e = q.eval_poly(&crt_idempotent_poly(&primaries), u);
        debug_assert!(!is_zero_row(&e) && e != q.unit);
        return Ok(Some(e));
    }
    // single primary g^e: if e >= 2 then g(u) is a nonzero nilpotent
    if let FieldSpec::Prime(_) = q.field {
        let factors = factor_gfp(&m, 29);
        if factors.len() == 1 && factors[0].1 >= 2 {
            let v = q.eval_poly(&factors[0].0, u);
            if !is_zero_row(&v) {
                return Ok(Some(left_ideal_idempotent(q, &v)?));
            }
        }
    }
    Ok(None)
}

/// In a semisimple algebra every left ideal is generated by an idempotent:
/// given a zero divisor v, solve for the right identity of the ideal Qv.
pub fn left_ideal_idempotent(q: &AbstractAlgebra, v: &[Scalar]) -> Result<Vec<Scalar>> {
    let field = q.field;
    let rv = q.right_mult_of(v); // row i is b_i * v
    let rr = rv.rref();
    let l = rr.reduced.submatrix_rows(&(0..rr.rank).collect::<Vec<_>>());
    let r = l.rows;
    if r == 0 || r >= q.dim {
        return Err(Error::Check("element is not a zero divisor".into()));
    }
    // unknowns t_k for e = sum t_k l_k, constraints l_i * e = l_i
    let mut sys = Matrix::zero(field, r, r * q.dim);
    let mut rhs = vec![field.zero(); r * q.dim];
    for i in 0..r {
        for (c, slot) in l.row(i).iter().zip(rhs[i * q.dim..].iter_mut()) {
            *slot = c.clone();
        }
    }
    for k in 0..r {
        let rk = q.right_mult_of(l.row(k));
        for i in 0..r {
            let li = Matrix::from_rows(field, vec![l.row_vec(i)]).mul(&rk);
            for j in 0..q.dim {
                sys.set(k, i * q.dim + j, li.get(0, j).clone());
            }
        }
    }
    let rhs = Matrix::from_rows(field, vec![rhs]);
    let t = sys
        .solve(&rhs)
        .unwrap()
        .expect("left ideal of a semisimple algebra has a right identity");
    let e = t.mul(&l).row_vec(0);
    debug_assert_eq!(q.mult(&e, &e), e);
    Ok(e)
}

/// Lift an idempotent of E/rad back to an idempotent endomorphism.
fn lift_idempotent(
    end: &EndAlgebra,
    lift: &Matrix,
    ebar: &[Scalar],
) -> Result<ModuleMorphism> {
    let field = end.field();
    let coords = Matrix::from_rows(field, vec![ebar.to_vec()]).mul(lift).row_vec(0);
    let mut e = end.element(&coords);
    let three = field.from_int(3);
    let two = field.from_int(2);
    for _ in 0..64 {
        let e2 = e.compose(&e);
        if e2.sub(&e).is_zero() {
            return Ok(e);
        }
        let e3 = e2.compose(&e);
        e = e2.scale(&three).sub(&e3.scale(&two));
    }
    Err(Error::Check("idempotent lifting did not converge".into()))
}

/// A direct summand together with its inclusion and a splitting retraction.
#[derive(Clone)]
pub struct Summand {
    pub rep: Rep,
    pub inclusion: ModuleMorphism,
    pub projection: ModuleMorphism,
}

/// Split a representation along an idempotent endomorphism into the images
/// of `e` and `1 - e`.
pub fn split_by_idempotent(x: &Rep, e: &ModuleMorphism) -> (Summand, Summand) {
    let one_minus = ModuleMorphism::identity(x.clone()).sub(e);
    let mut parts = Vec::new();
    for f in [e, &one_minus] {
        let (part, incl) = crate::rep::image(f);
        let proj_mats: Vec<Matrix> = incl
            .mats
            .iter()
            .zip(&f.mats)
            .map(|(b, fm)| b.solve(fm).unwrap().expect("idempotent image mismatch"))
            .collect();
        let proj = ModuleMorphism::new(x.clone(), part.clone(), proj_mats);
        debug_assert!(incl
            .compose(&proj)
            .mats
            .iter()
            .all(|m| m.is_identity()));
        parts.push(Summand { rep: part, inclusion: incl, projection: proj });
    }
    let b = parts.pop().unwrap();
    let a = parts.pop().unwrap();
    (a, b)
}

/// Find an idempotent endomorphism that splits `x`, or `None` if `x` is
/// certified indecomposable.
fn find_splitting_idempotent(
    x: &Rep,
    rng: &mut ChaCha8Rng,
) -> Result<Option<ModuleMorphism>> {
    let end = EndAlgebra::new(x);
    if end.dim() <= 1 {
        return Ok(None);
    }
    // fast path: the generalized eigenspace splitting of a random
    // endomorphism, tried a few times before the full machinery
    for _ in 0..4 {
        let theta = end.element(&random_coords(end.field(), end.dim(), rng));
        let m = morphism_min_poly(&theta);
        if m.degree() == 0 {
            continue;
        }
        let primaries = match primary_factors(&m, rng.gen()) {
            Ok(p) => p,
            Err(Error::UndecidedOverQ(_)) => continue,
            Err(e) => return Err(e),
        };
        if primaries.len() >= 2 {
            let e = morphism_eval_poly(&crt_idempotent_poly(&primaries), &theta);
            debug_assert!(e.compose(&e).sub(&e).is_zero());
            return Ok(Some(e));
        }
    }
    let rad = end.radical()?;
    let (q, lift, _proj) = AbstractAlgebra::quotient_of_end(&end, &rad);
    match splitting_idempotent_semisimple(&q, rng)? {
        None => Ok(None),
        Some(ebar) => Ok(Some(lift_idempotent(&end, &lift, &ebar)?)),
    }
}

/// Decompose into indecomposable summands, each certified by the locality
/// of its endomorphism algebra. Deterministic for a fixed seed.
pub fn decompose(x: &Rep, seed: u64) -> Result<Vec<Summand>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if x.is_zero() {
        return Ok(vec![]);
    }
    let id = ModuleMorphism::identity(x.clone());
    let mut work = vec![Summand { rep: x.clone(), inclusion: id.clone(), projection: id }];
    let mut out: Vec<Summand> = Vec::new();
    while let Some(s) = work.pop() {
        match find_splitting_idempotent(&s.rep, &mut rng)? {
            None => out.push(s),
            Some(e) => {
                let (a, b) = split_by_idempotent(&s.rep, &e);
                for part in [a, b] {
                    if part.rep.is_zero() {
                        continue;
                    }
                    work.push(Summand {
                        rep: part.rep.clone(),
                        inclusion: part.inclusion.compose(&s.inclusion),
                        projection: s.projection.compose(&part.projection),
                    });
                }
            }
        }
    }
    assert_eq!(
        out.iter().map(|s| s.rep.total_dim()).sum::<usize>(),
        x.total_dim(),
        "summand dimensions do not add up"
    );
    out.sort_by(|a, b| {
        b.rep
            .total_dim()
            .cmp(&a.rep.total_dim())
            .then_with(|| b.rep.dims.cmp(&a.rep.dims))
    });
    Ok(out)
}

/// Exact isomorphism test for indecomposables: x and y are isomorphic if
/// and only if some composite of a hom basis element x -> y with one y -> x
/// is invertible, and that basis element is then itself an isomorphism.
pub fn find_isomorphism(x: &Rep, y: &Rep) -> Option<ModuleMorphism> {
    if x.dims != y.dims {
        return None;
    }
    let fs = hom_basis(x, y);
    let gs = hom_basis(y, x);
    // basis pairs suffice when either module is indecomposable
    for f in &fs {
        for g in &gs {
            if f.compose(g).is_isomorphism() {
                return Some(f.clone());
            }
        }
    }
    // for decomposable modules an isomorphism can be a proper combination
    // of basis morphisms; enumerate the whole hom space when small enough
    // to exhaust (a miss is then conclusive), else sample
    let field = x.algebra.field;
    let combine = |coords: &mut dyn FnMut(usize) -> Scalar| {
        let mut f = ModuleMorphism::zero(x.clone(), y.clone());
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
        for idx in 1..p.pow(fs.len() as u32) {
            let f = combine(&mut |i| field.from_int(((idx / p.pow(i as u32)) % p) as i64));
            if f.is_isomorphism() {
                return Some(f);
            }
        }
    } else {
        // a random combination of a hom basis hits an isomorphism with
        // probability bounded away from zero whenever one exists (the
        // non-isomorphisms form a proper closed subset)
        let mut rng = ChaCha8Rng::seed_from_u64(0x15e_c0de);
        for _ in 0..60 {
            let f = combine(&mut |_| match field {
                FieldSpec::Prime(p) => field.from_int(rng.gen_range(0..p) as i64),
                FieldSpec::Rational => field.from_int(rng.gen_range(-3..=3)),
            });
            if f.is_isomorphism() {
                return Some(f);
            }
        }
    }
    None
}

/// A full decomposition with the summands grouped into isomorphism classes
/// (indices into `summands`, first index is the class representative).
pub struct Decomposition {
    pub summands: Vec<Summand>,
    pub classes: Vec<Vec<usize>>,
}

pub fn decompose_with_classes(x: &Rep, seed: u64) -> Result<Decomposition> {
    let summands = decompose(x, seed)?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, s) in summands.iter().enumerate() {
        let mut placed = false;
        for class in classes.iter_mut() {
            let rep = &summands[class[0]].rep;
            if find_isomorphism(&s.rep, rep).is_some() {
                class.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    Ok(Decomposition { summands, classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::quiver::{Arrow, Monomial, Quiver, Relation};
    use crate::rep::{direct_sum, projective, simple, Representation};
    use std::sync::Arc;

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

    #[test]
    fn charpoly_of_diagonal() {
        let f = gf(5);
        let m = Matrix::from_ints(f, &[&[1, 0], &[0, 2]]);
        // (t-1)(t-2) = t^2 - 3t + 2
        assert_eq!(charpoly_mod_p(&m, 5), vec![2, 2, 1]);
    }

    #[test]
    fn charpoly_of_companion_matrix() {
        // companion of t^3 + 2t + 1 over GF(7)
        let f = gf(7);
        let m = Matrix::from_ints(f, &[&[0, 1, 0], &[0, 0, 1], &[-1, -2, 0]]);
        assert_eq!(charpoly_mod_p(&m, 7), vec![1, 2, 0, 1]);
    }

    #[test]
    fn radical_of_local_end_over_gf2() {
        // K[x]/(x^2) over GF(2): the trace form is identically zero, so the
        // higher coefficient forms must cut the radical down to span(x)
        let a = truncated_poly(gf(2), 2);
        let p = projective(a.clone(), 0);
        let end = EndAlgebra::new(&p);
        assert_eq!(end.dim(), 2);
        let rad = end.radical().unwrap();
        assert_eq!(rad.rows, 1);
        // the radical element is nilpotent as a morphism
        let n = end.element(rad.row(0));
        assert!(n.compose(&n).is_zero());
    }

    #[test]
    fn radical_of_end_of_mixed_sum() {
        let a = truncated_poly(gf(5), 3);
        let p = projective(a.clone(), 0);
        let s = simple(a.clone(), 0);
        let (m, _, _) = direct_sum(a.clone(), &[p, s]);
        let end = EndAlgebra::new(&m);
        assert_eq!(end.dim(), 6);
        // End/rad is K x K, so the radical has dimension 4
        let rad = end.radical().unwrap();
        assert_eq!(rad.rows, 4);
    }

    #[test]
    fn decompose_projective_plus_simple() {
        let a = truncated_poly(gf(5), 3);
        let p = projective(a.clone(), 0);
        let s = simple(a.clone(), 0);
        let (m, _, _) = direct_sum(a.clone(), &[p, s]);
        let parts = decompose(&m, 0).unwrap();
        assert_eq!(parts.len(), 2);
        let mut dims: Vec<usize> = parts.iter().map(|x| x.rep.total_dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 3]);
        for part in &parts {
            let comp = part.inclusion.compose(&part.projection);
            assert!(comp.mats.iter().all(|x| x.is_identity()));
        }
    }

    #[test]
    fn decompose_semisimple_square() {
        // S + S has endomorphism algebra M_2, exercising the
        // noncommutative splitting path
        for p in [2u64, 5] {
            let a = truncated_poly(gf(p), 3);
            let s = simple(a.clone(), 0);
            let (m, _, _) = direct_sum(a.clone(), &[s.clone(), s.clone()]);
            let dec = decompose_with_classes(&m, 1).unwrap();
            assert_eq!(dec.summands.len(), 2);
            assert_eq!(dec.classes.len(), 1);
            assert_eq!(dec.classes[0].len(), 2);
        }
    }

    #[test]
    fn indecomposable_is_certified() {
        let a = truncated_poly(gf(2), 3);
        let p = projective(a.clone(), 0);
        let parts = decompose(&p, 3).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].rep.total_dim(), 3);
    }

    #[test]
    fn exterior_algebra_regular_module_indecomposable() {
        let f = gf(2);
        let q = Quiver::new(
            vec!["1".into()],
            vec![
                Arrow { name: "x".into(), source: 0, target: 0 },
                Arrow { name: "y".into(), source: 0, target: 0 },
            ],
        )
        .unwrap();
        let mk = |arrows: Vec<usize>| Monomial::from_arrows(&q, arrows).unwrap();
        let rels = vec![
            Relation::new(&q, vec![(f.one(), mk(vec![0, 0]))]).unwrap(),
            Relation::new(&q, vec![(f.one(), mk(vec![1, 1]))]).unwrap(),
            Relation::new(&q, vec![(f.one(), mk(vec![0, 1])), (f.from_int(-1), mk(vec![1, 0]))])
                .unwrap(),
        ];
        let a = Arc::new(Algebra::build(q, f, rels, None).unwrap());
        let r = crate::rep::regular_module(a.clone());
        let parts = decompose(&r, 0).unwrap();
        assert_eq!(parts.len(), 1);
    }

    #[test]
    fn isomorphism_found_after_conjugation() {
        let a = truncated_poly(gf(5), 3);
        let p = projective(a.clone(), 0);
        // conjugate the arrow matrix by an invertible matrix
        let g = Matrix::from_ints(gf(5), &[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
        let ginv = g.inverse().unwrap();
        let conj = ginv.mul(&p.arrow_mats[0]).mul(&g);
        let y = Representation::new(a.clone(), vec![3], vec![conj]).unwrap();
        let iso = find_isomorphism(&p, &y).unwrap();
        assert!(iso.is_isomorphism());
        let s = simple(a.clone(), 0);
        assert!(find_isomorphism(&p, &s).is_none());
        // a non-isomorphic module of the same dimension vector
        let z = Representation::new(a.clone(), vec![3], vec![Matrix::zero(gf(5), 3, 3)]).unwrap();
        assert!(find_isomorphism(&p, &z).is_none());
    }

    #[test]
    fn decompose_over_rationals() {
        let f = FieldSpec::Rational;
        let a = truncated_poly(f, 2);
        let p = projective(a.clone(), 0);
        let s = simple(a.clone(), 0);
        let (m, _, _) = direct_sum(a.clone(), &[p, s.clone(), s.clone()]);
        let dec = decompose_with_classes(&m, 5).unwrap();
        assert_eq!(dec.summands.len(), 3);
        assert_eq!(dec.classes.len(), 2);
    }
}
