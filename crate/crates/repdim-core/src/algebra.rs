//! Finite dimensional bound quiver algebras KQ/I.
//!
//! The quotient is computed without Groebner bases: the two-sided ideal is
//! closed linearly under multiplication by single arrows inside the space of
//! paths of bounded length, the length cap is raised until the surviving
//! monomial basis stops changing, and the result is cross-checked by
//! verifying that every relation acts as zero and that left and right
//! multiplications commute.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::quiver::{Monomial, Quiver, Relation};
use std::collections::{BTreeMap, HashMap};

const HARD_CAP: usize = 30;
const PATH_BUDGET: usize = 2_000_000;

/// A finite dimensional algebra KQ/I with its normal monomial basis.
///
/// Elements are row vectors of coordinates in `basis`. The first
/// `quiver.vertices.len()` basis elements are the trivial paths in vertex
/// order.
pub struct Algebra {
    pub quiver: Quiver,
    pub field: FieldSpec,
    pub relations: Vec<Relation>,
    pub basis: Vec<Monomial>,
    /// Length cap at which the basis stabilized.
    pub cap: usize,
    /// Right multiplication by each arrow: row i of `right_arrow[a]` is the
    /// normal form of `basis[i] * a`.
    right_arrow: Vec<Matrix>,
    /// Left multiplication: row i of `left_arrow[a]` is `a * basis[i]`.
    left_arrow: Vec<Matrix>,
    /// Right and left multiplication by each basis element.
    right_basis: Vec<Matrix>,
    left_basis: Vec<Matrix>,
    basis_index: HashMap<Monomial, usize>,
    by_source: Vec<Vec<usize>>,
    by_target: Vec<Vec<usize>>,
}

/// Row-echelon span of the truncated two-sided ideal. Rows are sorted in
/// descending monomial order with monic leading term; leading monomials are
/// pairwise distinct and rows are never modified after insertion.
struct IdealSpan {
    rows: Vec<Vec<(Monomial, Scalar)>>,
    lead: HashMap<Monomial, usize>,
}

type PathVec = BTreeMap<Monomial, Scalar>;

impl IdealSpan {
    fn new() -> IdealSpan {
        IdealSpan { rows: vec![], lead: HashMap::new() }
    }

    /// Fully reduce `v` against the stored rows: afterwards no monomial of
    /// `v` is a leading monomial.
    fn reduce(&self, v: &mut PathVec) {
        let mut bound: Option<Monomial> = None;
        loop {
            let next = match &bound {
                None => v.iter().next_back().map(|(m, _)| m.clone()),
                Some(b) => v.range(..b.clone()).next_back().map(|(m, _)| m.clone()),
            };
            let Some(m) = next else { break };
            if let Some(&ri) = self.lead.get(&m) {
                let c = v.get(&m).unwrap().clone();
                for (mm, cc) in &self.rows[ri] {
                    let delta = c.mul(cc);
                    match v.entry(mm.clone()) {
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            let nv = e.get().sub(&delta);
                            if nv.is_zero() {
                                e.remove();
                            } else {
                                *e.get_mut() = nv;
                            }
                        }
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(delta.neg());
                        }
                    }
                }
                debug_assert!(!v.contains_key(&m));
            }
            bound = Some(m);
        }
    }

    /// Reduce and insert; returns the new row index if `v` was independent.
    fn insert(&mut self, mut v: PathVec) -> Option<usize> {
        self.reduce(&mut v);
        let (lead_m, lead_c) = v.iter().next_back()?;
        let inv = lead_c.inv().unwrap();
        let lead_m = lead_m.clone();
        let mut row: Vec<(Monomial, Scalar)> =
            v.iter().rev().map(|(m, c)| (m.clone(), c.mul(&inv))).collect();
        row[0].1 = inv.mul(&v[&lead_m]);
        let idx = self.rows.len();
        self.lead.insert(lead_m, idx);
        self.rows.push(row);
        Some(idx)
    }
}

/// Outcome of one closure run at a fixed length cap.
struct TruncatedQuotient {
    span: IdealSpan,
    normal: Vec<Monomial>,
}

fn closure_at_cap(
    quiver: &Quiver,
    field: FieldSpec,
    relations: &[Relation],
    cap: usize,
) -> Result<TruncatedQuotient> {
    let mut span = IdealSpan::new();
    let mut work: Vec<usize> = Vec::new();
    for r in relations {
        let mut v: PathVec = BTreeMap::new();
        for (c, m) in &r.terms {
            let prev = v.remove(m).unwrap_or_else(|| field.zero());
            let nv = prev.add(c);
            if !nv.is_zero() {
                v.insert(m.clone(), nv);
            }
        }
        if let Some(i) = span.insert(v) {
            work.push(i);
        }
    }
    while let Some(i) = work.pop() {
        let max_len = span.rows[i].iter().map(|(m, _)| m.len()).max().unwrap();
        if max_len + 1 > cap {
            continue;
        }
        let row = span.rows[i].clone();
        let src = row[0].0.source(quiver);
        let tgt = row[0].0.target(quiver);
        for (ai, a) in quiver.arrows.iter().enumerate() {
            if a.source == tgt {
                let v: PathVec = row
                    .iter()
                    .map(|(m, c)| {
                        let mut arrows = m.arrows.clone();
                        arrows.push(ai);
                        (Monomial { vertex: m.vertex, arrows }, c.clone())
                    })
                    .collect();
                if let Some(j) = span.insert(v) {
                    work.push(j);
                }
            }
            if a.target == src {
                let v: PathVec = row
                    .iter()
                    .map(|(m, c)| {
                        let mut arrows = vec![ai];
                        arrows.extend(&m.arrows);
                        (Monomial { vertex: a.source, arrows }, c.clone())
                    })
                    .collect();
                if let Some(j) = span.insert(v) {
                    work.push(j);
                }
            }
        }
    }
    let mut normal = Vec::new();
    let mut budget = PATH_BUDGET;
    for v in 0..quiver.vertices.len() {
        collect_normal(quiver, &span, Monomial::trivial(v), cap, &mut normal, &mut budget)?;
    }
    normal.sort();
    Ok(TruncatedQuotient { span, normal })
}

fn collect_normal(
    quiver: &Quiver,
    span: &IdealSpan,
    m: Monomial,
    cap: usize,
    out: &mut Vec<Monomial>,
    budget: &mut usize,
) -> Result<()> {
    if *budget == 0 {
        return Err(Error::IdealNotAdmissible { cap });
    }
    *budget -= 1;
    if !span.lead.contains_key(&m) {
        out.push(m.clone());
    }
    if m.len() == cap {
        return Ok(());
    }
    let tgt = m.target(quiver);
    for (ai, a) in quiver.arrows.iter().enumerate() {
        if a.source == tgt {
            let mut arrows = m.arrows.clone();
            arrows.push(ai);
            collect_normal(
                quiver,
                span,
                Monomial { vertex: m.vertex, arrows },
                cap,
                out,
                budget,
            )?;
        }
    }
    Ok(())
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Algebra(dim {}, {} vertices, {} arrows, over {})",
            self.dim(),
            self.vertex_count(),
            self.quiver.arrows.len(),
            self.field
        )
    }
}

impl Algebra {
    /// Build KQ/I, raising the length cap until the monomial basis is the
    /// same at two consecutive caps and clears the cap by two.
    pub fn build(
        quiver: Quiver,
        field: FieldSpec,
        relations: Vec<Relation>,
        degree_hint: Option<usize>,
    ) -> Result<Algebra> {
        for r in &relations {
            for (c, _) in &r.terms {
                if c.field() != field {
                    return Err(Error::Input(
                        "relation coefficient field differs from the algebra field".into(),
                    ));
                }
            }
        }
        let min_cap = relations.iter().map(|r| r.max_length()).max().unwrap_or(0) + 2;
        let start = min_cap.max(degree_hint.unwrap_or(0)).min(HARD_CAP);
        let mut prev: Option<TruncatedQuotient> = None;
        let mut prev_cap = 0usize;
        for cap in start..=HARD_CAP {
            let cur = closure_at_cap(&quiver, field, &relations, cap)?;
            if let Some(p) = &prev {
                let max_len = cur.normal.iter().map(|m| m.len()).max().unwrap_or(0);
                if p.normal == cur.normal && max_len + 2 <= prev_cap {
                    return Algebra::finish(quiver, field, relations, cur, cap);
                }
            }
            prev_cap = cap;
            prev = Some(cur);
        }
        Err(Error::IdealNotAdmissible { cap: HARD_CAP })
    }

    fn finish(
        quiver: Quiver,
        field: FieldSpec,
        relations: Vec<Relation>,
        tq: TruncatedQuotient,
        cap: usize,
    ) -> Result<Algebra> {
        let basis = tq.normal;
        let dim = basis.len();
        let basis_index: HashMap<Monomial, usize> =
            basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let n = quiver.vertices.len();
        for v in 0..n {
            if basis_index.get(&Monomial::trivial(v)) != Some(&v) {
                return Err(Error::Check(format!(
                    "trivial path at vertex {} is not basis element {}",
                    quiver.vertices[v], v
                )));
            }
        }
        let normal_form = |m: Monomial| -> Vec<Scalar> {
            let mut v: PathVec = BTreeMap::new();
            v.insert(m, field.one());
            tq.span.reduce(&mut v);
            let mut row = vec![field.zero(); dim];
            for (mm, c) in v {
                row[basis_index[&mm]] = c;
            }
            row
        };
        let mut right_arrow = Vec::with_capacity(quiver.arrows.len());
        let mut left_arrow = Vec::with_capacity(quiver.arrows.len());
        for (ai, a) in quiver.arrows.iter().enumerate() {
            let mut r = Matrix::zero(field, dim, dim);
            let mut l = Matrix::zero(field, dim, dim);
            for (bi, m) in basis.iter().enumerate() {
                if m.target(&quiver) == a.source {
                    let mut arrows = m.arrows.clone();
                    arrows.push(ai);
                    let nf = normal_form(Monomial { vertex: m.vertex, arrows });
                    for (j, c) in nf.into_iter().enumerate() {
                        if !c.is_zero() {
                            r.set(bi, j, c);
                        }
                    }
                }
                if m.source(&quiver) == a.target {
                    let mut arrows = vec![ai];
                    arrows.extend(&m.arrows);
                    let nf = normal_form(Monomial { vertex: a.source, arrows });
                    for (j, c) in nf.into_iter().enumerate() {
                        if !c.is_zero() {
                            l.set(bi, j, c);
                        }
                    }
                }
            }
            right_arrow.push(r);
            left_arrow.push(l);
        }
        // per basis element multiplication operators, composed arrow by arrow
        let mut right_basis = Vec::with_capacity(dim);
        let mut left_basis = Vec::with_capacity(dim);
        for m in &basis {
            if m.is_trivial() {
                let sel_t = Matrix::from_fn(field, dim, dim, |i, j| {
                    if i == j && basis[i].target(&quiver) == m.vertex {
                        field.one()
                    } else {
                        field.zero()
                    }
                });
                let sel_s = Matrix::from_fn(field, dim, dim, |i, j| {
                    if i == j && basis[i].source(&quiver) == m.vertex {
                        field.one()
                    } else {
                        field.zero()
                    }
                });
                right_basis.push(sel_t);
                left_basis.push(sel_s);
            } else {
                let mut r = Matrix::identity(field, dim);
                for &ai in &m.arrows {
                    r = r.mul(&right_arrow[ai]);
                }
                let mut l = Matrix::identity(field, dim);
                for &ai in m.arrows.iter().rev() {
                    l = l.mul(&left_arrow[ai]);
                }
                right_basis.push(r);
                left_basis.push(l);
            }
        }
        let mut by_source = vec![Vec::new(); n];
        let mut by_target = vec![Vec::new(); n];
        for (i, m) in basis.iter().enumerate() {
            by_source[m.source(&quiver)].push(i);
            by_target[m.target(&quiver)].push(i);
        }
        let alg = Algebra {
            quiver,
            field,
            relations,
            basis,
            cap,
            right_arrow,
            left_arrow,
            right_basis,
            left_basis,
            basis_index,
            by_source,
            by_target,
        };
        alg.self_check()?;
        Ok(alg)
    }

    /// Relations act as zero on both sides, and left multiplication
    /// commutes with right multiplication.
    fn self_check(&self) -> Result<()> {
        for r in &self.relations {
            let mut rm = Matrix::zero(self.field, self.dim(), self.dim());
            let mut lm = Matrix::zero(self.field, self.dim(), self.dim());
            for (c, m) in &r.terms {
                let mut rr = Matrix::identity(self.field, self.dim());
                for &ai in &m.arrows {
                    rr = rr.mul(&self.right_arrow[ai]);
                }
                let mut ll = Matrix::identity(self.field, self.dim());
                for &ai in m.arrows.iter().rev() {
                    ll = ll.mul(&self.left_arrow[ai]);
                }
                rm = rm.add(&rr.scale(c));
                lm = lm.add(&ll.scale(c));
            }
            if !rm.is_zero() || !lm.is_zero() {
                return Err(Error::Check(
                    "a defining relation does not act as zero on the computed basis".into(),
                ));
            }
        }
        for l in &self.left_arrow {
            for r in &self.right_arrow {
                if l.mul(r) != r.mul(l) {
                    return Err(Error::Check(
                        "left and right arrow multiplications do not commute".into(),
                    ));
                }
            }
        }
        // admissibility: the span of the nontrivial monomials is nilpotent,
        // so a stabilized basis with a non-nilpotent arrow span (for
        // example from the ideal (x^2 - x^3)) is rejected
        let mut j = self.radical_basis();
        for _ in 0..=self.dim() {
            if j.rows == 0 {
                return Ok(());
            }
            let mut next = Matrix::zero(self.field, 0, self.dim());
            for r in &self.right_arrow {
                next = next.vstack(&j.mul(r));
            }
            let rr = next.rref();
            j = rr.reduced.submatrix_rows(&(0..rr.rank).collect::<Vec<_>>());
        }
        Err(Error::IdealNotAdmissible { cap: self.cap })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertices.len()
    }

    /// Coordinates of the identity element.
    pub fn unit(&self) -> Vec<Scalar> {
        let mut u = vec![self.field.zero(); self.dim()];
        for v in 0..self.vertex_count() {
            u[v] = self.field.one();
        }
        u
    }

    /// Coordinates of the trivial idempotent at a vertex.
    pub fn idempotent(&self, v: usize) -> Vec<Scalar> {
        let mut u = vec![self.field.zero(); self.dim()];
        u[v] = self.field.one();
        u
    }

    /// Coordinates of an arrow as an algebra element.
    pub fn arrow_element(&self, a: usize) -> Vec<Scalar> {
        let m = Monomial { vertex: self.quiver.arrows[a].source, arrows: vec![a] };
        let mut u = vec![self.field.zero(); self.dim()];
        u[self.basis_index[&m]] = self.field.one();
        u
    }

    pub fn basis_source(&self, i: usize) -> usize {
        self.basis[i].source(&self.quiver)
    }

    pub fn basis_target(&self, i: usize) -> usize {
        self.basis[i].target(&self.quiver)
    }

    pub fn basis_by_source(&self, v: usize) -> &[usize] {
        &self.by_source[v]
    }

    pub fn basis_by_target(&self, v: usize) -> &[usize] {
        &self.by_target[v]
    }

    pub fn basis_monomial_index(&self, m: &Monomial) -> Option<usize> {
        self.basis_index.get(m).copied()
    }

    /// `x * R_a` is the coordinate row of `x . a`.
    pub fn right_arrow_mult(&self, a: usize) -> &Matrix {
        &self.right_arrow[a]
    }

    /// `x * L_a` is the coordinate row of `a . x`.
    pub fn left_arrow_mult(&self, a: usize) -> &Matrix {
        &self.left_arrow[a]
    }

    /// Matrix of right multiplication by an arbitrary element `y`.
    pub fn right_mult_by(&self, y: &[Scalar]) -> Matrix {
        let mut out = Matrix::zero(self.field, self.dim(), self.dim());
        for (j, c) in y.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.right_basis[j].scale(c));
            }
        }
        out
    }

    /// Matrix of left multiplication by `y`: `x * L(y) = y . x`.
    pub fn left_mult_by(&self, y: &[Scalar]) -> Matrix {
        let mut out = Matrix::zero(self.field, self.dim(), self.dim());
        for (j, c) in y.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.left_basis[j].scale(c));
            }
        }
        out
    }

    pub fn mult(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let r = self.right_mult_by(y);
        let xm = Matrix::from_rows(self.field, vec![x.to_vec()]);
        xm.mul(&r).row_vec(0)
    }

    /// Basis of the Jacobson radical: the span of the nontrivial basis
    /// monomials.
    pub fn radical_basis(&self) -> Matrix {
        let rows: Vec<Vec<Scalar>> = (self.vertex_count()..self.dim())
            .map(|i| {
                let mut r = vec![self.field.zero(); self.dim()];
                r[i] = self.field.one();
                r
            })
            .collect();
        if rows.is_empty() {
            Matrix::zero(self.field, 0, self.dim())
        } else {
            Matrix::from_rows(self.field, rows)
        }
    }

    /// Basis of the socle `{x : x . a = 0 for every arrow a}`, checked to be
    /// stable under left multiplication so the quotient by it is an algebra.
    pub fn socle_basis(&self) -> Result<Matrix> {
        let mut stacked = Matrix::zero(self.field, self.dim(), 0);
        for r in &self.right_arrow {
            stacked = stacked.hstack(r);
        }
        let soc = stacked.kernel_basis();
        for l in &self.left_arrow {
            let image = soc.mul(l);
            if !soc.row_space_contains(&image) {
                return Err(Error::SocleNotIdeal(
                    "right socle is not stable under left multiplication".into(),
                ));
            }
        }
        Ok(soc)
    }
}

/// A quotient A/J by a two-sided ideal, presented by linear data over the
/// parent's basis. Elements are rows of length `dim`.
pub struct QuotientAlgebra {
    pub field: FieldSpec,
    pub dim: usize,
    pub parent_dim: usize,
    /// `x * projection` is the image of a parent element.
    pub projection: Matrix,
    /// `q * lift` is a coset representative; `lift * projection` is the
    /// identity.
    pub lift: Matrix,
    /// Rows spanning the ideal inside the parent.
    pub ideal: Matrix,
    right_q: Vec<Matrix>,
}

impl QuotientAlgebra {
    pub fn new(parent: &Algebra, ideal: Matrix) -> Result<QuotientAlgebra> {
        let field = parent.field;
        let pd = parent.dim();
        if ideal.cols != pd {
            return Err(Error::Input("ideal rows have the wrong length".into()));
        }
        for a in 0..parent.quiver.arrows.len() {
            for (m, side) in [
                (ideal.mul(parent.right_arrow_mult(a)), "right"),
                (ideal.mul(parent.left_arrow_mult(a)), "left"),
            ] {
                if !ideal.row_space_contains(&m) {
                    return Err(Error::Input(format!(
                        "quotient ideal is not stable under {side} multiplication"
                    )));
                }
            }
        }
        let rr = ideal.rref();
        let pivots = rr.pivot_cols.clone();
        let complement: Vec<usize> = (0..pd).filter(|c| !pivots.contains(c)).collect();
        let dim = complement.len();
        // projection: reduce each parent basis vector modulo the ideal and
        // read off the complement coordinates
        let mut projection = Matrix::zero(field, pd, dim);
        for k in 0..pd {
            let mut row = vec![field.zero(); pd];
            row[k] = field.one();
            for (ri, &pc) in pivots.iter().enumerate() {
                let c = row[pc].clone();
                if c.is_zero() {
                    continue;
                }
                for j in 0..pd {
                    row[j] = row[j].sub(&c.mul(rr.reduced.get(ri, j)));
                }
            }
            for (j, &cc) in complement.iter().enumerate() {
                projection.set(k, j, row[cc].clone());
            }
        }
        let mut lift = Matrix::zero(field, dim, pd);
        for (j, &cc) in complement.iter().enumerate() {
            lift.set(j, cc, field.one());
        }
        debug_assert!(lift.mul(&projection).is_identity());
        let right_q = (0..dim)
            .map(|j| {
                let y = lift.row_vec(j);
                lift.mul(&parent.right_mult_by(&y)).mul(&projection)
            })
            .collect();
        Ok(QuotientAlgebra {
            field,
            dim,
            parent_dim: pd,
            projection,
            lift,
            ideal,
            right_q,
        })
    }

    pub fn project(&self, x: &[Scalar]) -> Vec<Scalar> {
        Matrix::from_rows(self.field, vec![x.to_vec()]).mul(&self.projection).row_vec(0)
    }

    pub fn lift_row(&self, q: &[Scalar]) -> Vec<Scalar> {
        Matrix::from_rows(self.field, vec![q.to_vec()]).mul(&self.lift).row_vec(0)
    }

    pub fn right_mult_by(&self, y: &[Scalar]) -> Matrix {
        let mut out = Matrix::zero(self.field, self.dim, self.dim);
        for (j, c) in y.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.right_q[j].scale(c));
            }
        }
        out
    }

    pub fn mult(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        Matrix::from_rows(self.field, vec![x.to_vec()])
            .mul(&self.right_mult_by(y))
            .row_vec(0)
    }

    pub fn unit(&self, parent: &Algebra) -> Vec<Scalar> {
        self.project(&parent.unit())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Arrow;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    /// K[x]/(x^n) as a one loop quiver.
    fn truncated_poly(field: FieldSpec, n: usize) -> Algebra {
        let q = Quiver::new(
            vec!["1".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        )
        .unwrap();
        let xn = Monomial::from_arrows(&q, vec![0; n]).unwrap();
        let rel = Relation::new(&q, vec![(field.one(), xn)]).unwrap();
        Algebra::build(q, field, vec![rel], None).unwrap()
    }

    #[test]
    fn truncated_polynomial_ring() {
        let a = truncated_poly(gf(5), 3);
        assert_eq!(a.dim(), 3);
        assert_eq!(a.basis.iter().map(|m| m.len()).collect::<Vec<_>>(), vec![0, 1, 2]);
        // x * x^2 = 0, x * x = x^2
        let x = a.arrow_element(0);
        let xx = a.mult(&x, &x);
        assert!(!xx.iter().all(|c| c.is_zero()));
        assert!(a.mult(&xx, &x).iter().all(|c| c.is_zero()));
        assert_eq!(a.mult(&a.unit(), &x), x);
        assert_eq!(a.radical_basis().rows, 2);
        let soc = a.socle_basis().unwrap();
        assert_eq!(soc.rows, 1);
        assert_eq!(soc.mul(&a.right_arrow_mult(0).clone()).is_zero(), true);
    }

    /// The four dimensional algebra K<x,y>/(x^2, y^2, xy - l yx).
    fn exterior_like(field: FieldSpec, l: i64) -> Algebra {
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
                vec![(field.one(), m(vec![0, 1])), (field.from_int(-l), m(vec![1, 0]))],
            )
            .unwrap(),
        ];
        Algebra::build(q, field, rels, None).unwrap()
    }

    #[test]
    fn four_dimensional_local_algebra() {
        for l in [1i64, 2] {
            let a = exterior_like(gf(5), l);
            assert_eq!(a.dim(), 4);
            // basis e, x, y, yx
            assert_eq!(a.basis.iter().map(|m| m.len()).collect::<Vec<_>>(), vec![0, 1, 1, 2]);
            let x = a.arrow_element(0);
            let y = a.arrow_element(1);
            let yx = a.mult(&y, &x);
            assert!(!yx.iter().all(|c| c.is_zero()));
            // xy = l yx
            let xy = a.mult(&x, &y);
            let scaled: Vec<Scalar> = yx.iter().map(|c| c.mul(&a.field.from_int(l))).collect();
            assert_eq!(xy, scaled);
            let soc = a.socle_basis().unwrap();
            assert_eq!(soc.rows, 1);
        }
    }

    #[test]
    fn quotient_by_socle_of_local_algebra() {
        let a = exterior_like(gf(5), 1);
        let soc = a.socle_basis().unwrap();
        let q = QuotientAlgebra::new(&a, soc).unwrap();
        assert_eq!(q.dim, 3);
        let x = q.project(&a.arrow_element(0));
        let y = q.project(&a.arrow_element(1));
        assert!(q.mult(&x, &y).iter().all(|c| c.is_zero()));
        assert!(q.mult(&y, &x).iter().all(|c| c.is_zero()));
        assert_eq!(q.mult(&q.unit(&a), &x), x);
    }

    #[test]
    fn non_admissible_ideal_is_rejected() {
        // one loop, no relations: K[x] is infinite dimensional
        let q = Quiver::new(
            vec!["1".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        )
        .unwrap();
        let err = Algebra::build(q, gf(5), vec![], None).unwrap_err();
        assert!(matches!(err, Error::IdealNotAdmissible { .. }));
    }

    #[test]
    fn inhomogeneous_relation_rewrites_longer_to_shorter() {
        // loop x with relation x^2 - x^3: the quotient is a finite
        // dimensional algebra with basis e, x, x^2, but x^2 is an
        // idempotent there, so the presentation is not admissible and the
        // arrow span is not the radical; the builder must reject it
        let q = Quiver::new(
            vec!["1".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        )
        .unwrap();
        let f = gf(5);
        let m2 = Monomial::from_arrows(&q, vec![0, 0]).unwrap();
        let m3 = Monomial::from_arrows(&q, vec![0, 0, 0]).unwrap();
        let rel =
            Relation::new(&q, vec![(f.one(), m2), (f.from_int(-1), m3)]).unwrap();
        let err = Algebra::build(q, f, vec![rel], None).unwrap_err();
        assert!(matches!(err, Error::IdealNotAdmissible { .. }));
    }
}
