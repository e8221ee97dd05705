//! Univariate polynomials over an exact field, with the factorization
//! routines that module splitting depends on: squarefree and irreducible
//! factorization over GF(p), and rational-root extraction over Q.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use num::bigint::BigUint;
use num::{BigInt, One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Coefficients in ascending degree, normalized so the last is nonzero.
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    pub field: FieldSpec,
    pub coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Poly {
        Poly { field, coeffs: vec![] }
    }

    pub fn one(field: FieldSpec) -> Poly {
        Poly { field, coeffs: vec![field.one()] }
    }

    pub fn x(field: FieldSpec) -> Poly {
        Poly { field, coeffs: vec![field.zero(), field.one()] }
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::new(c.field(), vec![c])
    }

    pub fn from_ints(field: FieldSpec, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the convention that the zero polynomial has degree 0
    /// callers that care must check `is_zero` first.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().unwrap();
        self.scale(&inv)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(self.field, out)
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        if self.is_zero() || self.degree() < dd {
            return (Poly::zero(self.field), self.clone());
        }
        let lead_inv = d.leading().inv().unwrap();
        let mut quot = vec![self.field.zero(); self.degree() - dd + 1];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] = rem[k - dd + j].sub(&c.mul(dc));
            }
        }
        (Poly::new(self.field, quot), Poly::new(self.field, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`, `g`
    /// monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let ns = s0.sub(&q.mul(&s1));
            let nt = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, ns);
            (t0, t1) = (t1, nt);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().inv().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.field);
        }
        Poly::new(
            self.field,
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.mul(&self.field.from_int((i + 1) as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, at: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    /// Evaluate at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows;
        let mut acc = Matrix::zero(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                let v = acc.get(i, i).add(c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// `self^e mod m` by square and multiply, exponent arbitrary size.
    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut result = Poly::one(self.field);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(m);
            }
        }
        result
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "t")?,
                1 => write!(f, "{c}*t")?,
                _ if c.is_one() => write!(f, "t^{i}")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Monic minimal polynomial of a square matrix, by finding the first linear
/// dependence among the flattened powers I, m, m^2, ...
pub fn min_poly(m: &Matrix) -> Poly {
    assert_eq!(m.rows, m.cols);
    let field = m.field;
    let n = m.rows;
    let mut powers = vec![Matrix::identity(field, n)];
    loop {
        let k = powers.len();
        let rows: Vec<Vec<Scalar>> = powers
            .iter()
            .map(|p| (0..n).flat_map(|i| p.row_vec(i)).collect())
            .collect();
        let stacked = Matrix::from_rows(field, rows);
        let ker = stacked.kernel_basis();
        if ker.rows > 0 {
            // first dependence, so the top-power coefficient is nonzero
            let coeffs = ker.row_vec(0);
            return Poly::new(field, coeffs).monic();
        }
        assert!(k <= n * n, "no dependence among matrix powers");
        powers.push(powers[k - 1].mul(m));
    }
}

/// Squarefree decomposition over GF(p) or Q: returns `(g_i, e_i)` with
/// `f = lc * prod g_i^{e_i}`, each `g_i` monic squarefree, `e_i` distinct.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let f = f.monic();
    if f.degree() == 0 {
        return vec![];
    }
    let p = f.field.characteristic();
    let d = f.derivative();
    if d.is_zero() {
        // over GF(p) this means f = g(t^p); take p-th root and recurse
        assert!(p > 0, "nonconstant polynomial with zero derivative over Q");
        let g = pth_root(&f);
        return squarefree_decomposition(&g)
            .into_iter()
            .map(|(h, e)| (h, e * p as usize))
            .collect();
    }
    let mut out: Vec<(Poly, usize)> = Vec::new();
    let mut c = f.gcd(&d);
    let mut w = f.div_rem(&c).0;
    let mut i = 1usize;
    while w.degree() > 0 {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if fac.degree() > 0 {
            out.push((fac.monic(), i));
        }
        w = y.clone();
        c = c.div_rem(&y).0;
        i += 1;
    }
    if c.degree() > 0 {
        // remaining part is a p-th power
        for (h, e) in squarefree_decomposition(&pth_root(&c)) {
            merge_factor(&mut out, h, e * p as usize);
        }
    }
    out
}

fn merge_factor(out: &mut Vec<(Poly, usize)>, h: Poly, e: usize) {
    if let Some(slot) = out.iter_mut().find(|(g, ge)| *ge == e && g.gcd(&h).degree() > 0) {
        slot.0 = slot.0.mul(&h);
    } else {
        out.push((h, e));
    }
}

/// p-th root of a polynomial in t^p over GF(p): coefficients of GF(p) are
/// fixed by Frobenius, so just decimate exponents.
fn pth_root(f: &Poly) -> Poly {
    let p = f.field.characteristic() as usize;
    assert!(p > 0);
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .filter(|(i, c)| {
            assert!(i % p == 0 || c.is_zero(), "not a polynomial in t^p");
            i % p == 0
        })
        .map(|(_, c)| c.clone())
        .collect();
    Poly::new(f.field, coeffs)
}

/// Irreducible factorization over GF(p), deterministic given the seed.
/// Returns monic irreducible factors with multiplicities, sorted by
/// (degree, coefficient sequence) for reproducibility.
pub fn factor_gfp(f: &Poly, seed: u64) -> Vec<(Poly, usize)> {
    let p = f.field.characteristic();
    assert!(p > 0, "factor_gfp requires a prime field");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (g, e) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree_split(&h, d, &mut rng) {
                out.push((irr, e));
            }
        }
    }
    out.sort_by(|a, b| {
        (a.0.degree(), factor_key(&a.0)).cmp(&(b.0.degree(), factor_key(&b.0)))
    });
    out
}

fn factor_key(f: &Poly) -> Vec<u64> {
    f.coeffs.iter().map(|c| c.residue().unwrap_or(0)).collect()
}

/// Split a monic squarefree polynomial into products of irreducibles of the
/// same degree: returns `(h_d, d)` pairs.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field;
    let p = BigUint::from(field.characteristic());
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = Poly::x(field); // t^(p^d) mod f, updated in place
    let mut d = 0usize;
    while rest.degree() > 0 {
        d += 1;
        if 2 * d > rest.degree() {
            out.push((rest.clone(), rest.degree()));
            break;
        }
        h = h.pow_mod(&p, &rest);
        let g = rest.gcd(&h.sub(&Poly::x(field)));
        if g.degree() > 0 {
            out.push((g.clone(), d));
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: `f` is monic squarefree with
/// all irreducible factors of degree `d`.
fn equal_degree_split(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    if f.degree() == d {
        return vec![f.monic()];
    }
    let field = f.field;
    let p = field.characteristic();
    loop {
        let h = random_poly(field, f.degree(), rng);
        if h.degree() == 0 {
            continue;
        }
        let g = if p == 2 {
            // trace map sum h^(2^i), i < d
            let mut tr = h.clone();
            let mut cur = h.clone();
            for _ in 1..d {
                cur = cur.mul(&cur).rem(f);
                tr = tr.add(&cur);
            }
            f.gcd(&tr)
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let hp = h.pow_mod(&e, f);
            f.gcd(&hp.sub(&Poly::one(field)))
        };
        if g.degree() > 0 && g.degree() < f.degree() {
            let rest = f.div_rem(&g).0;
            let mut out = equal_degree_split(&g, d, rng);
            out.extend(equal_degree_split(&rest, d, rng));
            return out;
        }
    }
}

fn random_poly(field: FieldSpec, max_deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    let p = field.characteristic();
    let deg = rng.gen_range(1..=max_deg.max(1));
    let coeffs = (0..=deg).map(|_| field.from_int(rng.gen_range(0..p) as i64)).collect();
    Poly::new(field, coeffs)
}

/// All rational roots of a polynomial over Q, with multiplicities, plus the
/// monic cofactor left after dividing the roots out. Errors if the integer
/// coefficients are too large to factor by trial division, which would make
/// the root search incomplete.
pub fn rational_roots(f: &Poly) -> Result<(Vec<(Scalar, usize)>, Poly)> {
    assert_eq!(f.field, FieldSpec::Rational);
    assert!(!f.is_zero());
    let mut rest = f.monic();
    let mut roots: Vec<(Scalar, usize)> = Vec::new();
    // strip roots at zero
    while !rest.is_zero() && rest.coeff(0).is_zero() && rest.degree() > 0 {
        add_root(&mut roots, FieldSpec::Rational.zero());
        rest = rest.div_rem(&Poly::x(FieldSpec::Rational)).0;
    }
    loop {
        if rest.degree() == 0 {
            break;
        }
        if rest.degree() == 1 {
            add_root(&mut roots, rest.coeff(0).neg());
            rest = Poly::one(FieldSpec::Rational);
            break;
        }
        match find_rational_root(&rest)? {
            Some(r) => {
                let lin = Poly::new(
                    FieldSpec::Rational,
                    vec![r.neg(), FieldSpec::Rational.one()],
                );
                rest = rest.div_rem(&lin).0;
                add_root(&mut roots, r);
            }
            None => break,
        }
    }
    Ok((roots, rest))
}

fn add_root(roots: &mut Vec<(Scalar, usize)>, r: Scalar) {
    if let Some(slot) = roots.iter_mut().find(|(x, _)| *x == r) {
        slot.1 += 1;
    } else {
        roots.push((r, 1));
    }
}

fn find_rational_root(f: &Poly) -> Result<Option<Scalar>> {
    // clear denominators to get integer coefficients
    let mut den = BigInt::one();
    for c in &f.coeffs {
        if let Scalar::Rat(r) = c {
            den = num::integer::lcm(den.clone(), r.denom().clone());
        }
    }
    let ints: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|c| match c {
            Scalar::Rat(r) => r.numer() * (&den / r.denom()),
            _ => unreachable!(),
        })
        .collect();
    let a0 = ints.first().unwrap().abs();
    let ad = ints.last().unwrap().abs();
    debug_assert!(!a0.is_zero(), "zero roots stripped by caller");
    let nums = bounded_divisors(&a0)?;
    let dens = bounded_divisors(&ad)?;
    for n in &nums {
        for d in &dens {
            for sign in [1i64, -1] {
                let cand = Scalar::Rat(num::BigRational::new(n * BigInt::from(sign), d.clone()));
                if f.eval(&cand).is_zero() {
                    return Ok(Some(cand));
                }
            }
        }
    }
    Ok(None)
}

/// All positive divisors of `n`, via trial-division factorization with a
/// prime bound; errors if a cofactor above the bound remains.
fn bounded_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    const BOUND: u64 = 1_000_000;
    let mut m = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= m && p <= BOUND {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            primes.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > BigInt::from(BOUND) && BigInt::from(p) * BigInt::from(p) <= m {
        return Err(Error::UndecidedOverQ(format!(
            "coefficient factor {m} exceeds the trial-division bound"
        )));
    }
    if !m.is_one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (q, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut qe = BigInt::one();
            for _ in 0..=e {
                next.push(d * &qe);
                qe *= &q;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    Ok(divs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn div_rem_round_trip() {
        let f = gf(7);
        let a = Poly::from_ints(f, &[1, 2, 3, 4]);
        let b = Poly::from_ints(f, &[5, 6]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_common_factor() {
        let f = gf(5);
        let g = Poly::from_ints(f, &[1, 1]); // t + 1
        let a = g.mul(&Poly::from_ints(f, &[2, 0, 1]));
        let b = g.mul(&Poly::from_ints(f, &[3, 1]));
        assert!(a.gcd(&b).rem(&g).is_zero());
        assert_eq!(a.gcd(&b).degree(), 1);
    }

    #[test]
    fn min_poly_of_nilpotent_jordan_block() {
        // 2x2 Jordan block at 0: min poly t^2
        let f = gf(5);
        let m = Matrix::from_ints(f, &[&[0, 1], &[0, 0]]);
        let mp = min_poly(&m);
        assert_eq!(mp, Poly::from_ints(f, &[0, 0, 1]));
    }

    #[test]
    fn min_poly_of_identity() {
        let f = FieldSpec::Rational;
        let m = Matrix::identity(f, 3);
        assert_eq!(min_poly(&m), Poly::from_ints(f, &[-1, 1]));
    }

    #[test]
    fn factor_gf2_square() {
        // t^2 + 1 = (t + 1)^2 over GF(2); derivative vanishes
        let f = gf(2);
        let p = Poly::from_ints(f, &[1, 0, 1]);
        let fac = factor_gfp(&p, 0);
        assert_eq!(fac, vec![(Poly::from_ints(f, &[1, 1]), 2)]);
    }

    #[test]
    fn factor_gf5_product() {
        // (t - 1)(t - 2)(t^2 + 2) over GF(5); t^2 + 2 = t^2 - 3 is
        // irreducible since 3 is not a square mod 5 (squares are 0,1,4)
        let f = gf(5);
        let p = Poly::from_ints(f, &[-1, 1])
            .mul(&Poly::from_ints(f, &[-2, 1]))
            .mul(&Poly::from_ints(f, &[2, 0, 1]));
        let fac = factor_gfp(&p, 7);
        assert_eq!(fac.len(), 3);
        let recon = fac
            .iter()
            .fold(Poly::one(f), |acc, (g, e)| {
                (0..*e).fold(acc, |a, _| a.mul(g))
            });
        assert_eq!(recon, p.monic());
        assert!(fac.iter().any(|(g, _)| g.degree() == 2));
    }

    #[test]
    fn factor_is_seed_stable() {
        let f = gf(3);
        // product of all monic linear polys: t^3 - t
        let p = Poly::from_ints(f, &[0, -1, 0, 1]);
        assert_eq!(factor_gfp(&p, 1), factor_gfp(&p, 99));
        assert_eq!(factor_gfp(&p, 1).len(), 3);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (t - 1/2)^2 (t + 3) (t^2 + 1)
        let f = FieldSpec::Rational;
        let half = Poly::new(f, vec![f.from_fraction(-1, 2).unwrap(), f.one()]);
        let p = half
            .mul(&half)
            .mul(&Poly::from_ints(f, &[3, 1]))
            .mul(&Poly::from_ints(f, &[1, 0, 1]));
        let (roots, rest) = rational_roots(&p).unwrap();
        assert_eq!(rest, Poly::from_ints(f, &[1, 0, 1]));
        let mut roots = roots;
        roots.sort_by_key(|(_, e)| *e);
        assert_eq!(roots[0], (f.from_int(-3), 1));
        assert_eq!(roots[1], (f.from_fraction(1, 2).unwrap(), 2));
    }

    #[test]
    fn rational_roots_none() {
        let f = FieldSpec::Rational;
        let p = Poly::from_ints(f, &[2, 0, 1]); // t^2 + 2
        let (roots, rest) = rational_roots(&p).unwrap();
        assert!(roots.is_empty());
        assert_eq!(rest, p);
    }
}
