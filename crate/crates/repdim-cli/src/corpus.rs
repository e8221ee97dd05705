//! Built-in example algebras: socle-equivalent selfinjective pairs shipped
//! as text files under `corpus/`, plus parameterized builders for the two
//! families (local scalar algebras and triangulation-quiver algebras).

use crate::parse::parse_algebra;
use crate::random::random_soc_annihilated;
use crate::report::{Record, RunReport};
use repdim_core::algebra::Algebra;
use repdim_core::endo::GlDim;
use repdim_core::rep::is_selfinjective;
use repdim_core::transfer::{
    ar_sequence_of_projective, transfer_generator, transfer_sequence, verify_identification,
};
use repdim_core::{Error, FieldSpec, Result};
use std::sync::Arc;
use std::time::Instant;

pub const LOOP_CYCLE_DEFORMED: &str = include_str!("../../../corpus/ex_loop_cycle_deformed.alg");
pub const LOOP_CYCLE_PLAIN: &str = include_str!("../../../corpus/ex_loop_cycle_plain.alg");
pub const LOOP_CYCLE_QUOTIENT: &str = include_str!("../../../corpus/ex_loop_cycle_quotient.alg");
pub const THREE_VERTEX_DEFORMED: &str =
    include_str!("../../../corpus/ex_three_vertex_deformed.alg");
pub const THREE_VERTEX_PLAIN: &str = include_str!("../../../corpus/ex_three_vertex_plain.alg");
pub const TRIANGLE_B0: &str = include_str!("../../../corpus/ex_triangle_b0.alg");
pub const TRIANGLE_B1: &str = include_str!("../../../corpus/ex_triangle_b1.alg");

/// K<x,y>/(x^2, y^2, xy - t yx): local, selfinjective, dimension 4. All
/// members of the family are socle equivalent; t and t' give isomorphic
/// algebras only when t' = t or t' = 1/t.
pub fn local_scalar(field: FieldSpec, t: i64) -> Result<Arc<Algebra>> {
    use repdim_core::quiver::{Arrow, Monomial, Quiver, Relation};
    let q = Quiver::new(
        vec!["1".into()],
        vec![
            Arrow { name: "x".into(), source: 0, target: 0 },
            Arrow { name: "y".into(), source: 0, target: 0 },
        ],
    )?;
    let mk = |arrows: Vec<usize>| Monomial::from_arrows(&q, arrows).unwrap();
    let t = field.from_int(t);
    if t.is_zero() {
        return Err(Error::Input("scalar parameter must be nonzero".into()));
    }
    let rels = vec![
        Relation::new(&q, vec![(field.one(), mk(vec![0, 0]))])?,
        Relation::new(&q, vec![(field.one(), mk(vec![1, 1]))])?,
        Relation::new(&q, vec![(field.one(), mk(vec![0, 1])), (t.neg(), mk(vec![1, 0]))])?,
    ];
    Ok(Arc::new(Algebra::build(q, field, rels, None)?))
}

/// Triangulation-quiver algebra over the triangle: three vertices, a loop
/// at each, and a 3-cycle; parameters are the weight m >= 1, a nonzero
/// scalar c, and a triple b of socle-deformation scalars. Dimension 36m.
/// Fixing m and c, all choices of b give socle-equivalent algebras; in
/// characteristic 2 with m = 1, b = 0 and b nonzero are not isomorphic.
pub fn triangle(field: FieldSpec, m: usize, c: i64, b: [i64; 3]) -> Result<Arc<Algebra>> {
    use repdim_core::quiver::{Arrow, Monomial, Quiver, Relation};
    if m == 0 {
        return Err(Error::Input("weight must be at least 1".into()));
    }
    let q = Quiver::new(
        vec!["1".into(), "2".into(), "3".into()],
        vec![
            Arrow { name: "eps".into(), source: 0, target: 0 },
            Arrow { name: "alpha".into(), source: 0, target: 1 },
            Arrow { name: "eta".into(), source: 1, target: 1 },
            Arrow { name: "beta".into(), source: 1, target: 2 },
            Arrow { name: "mu".into(), source: 2, target: 2 },
            Arrow { name: "gamma".into(), source: 2, target: 0 },
        ],
    )?;
    const EPS: usize = 0;
    const ALPHA: usize = 1;
    const ETA: usize = 2;
    const BETA: usize = 3;
    const MU: usize = 4;
    const GAMMA: usize = 5;
    let c = field.from_int(c);
    if c.is_zero() {
        return Err(Error::Input("scalar parameter must be nonzero".into()));
    }
    let b: Vec<_> = b.iter().map(|&x| field.from_int(x)).collect();
    // cyc repeated k times followed by tail
    let path = |cyc: &[usize], k: usize, tail: &[usize]| {
        let mut arrows = Vec::new();
        for _ in 0..k {
            arrows.extend_from_slice(cyc);
        }
        arrows.extend_from_slice(tail);
        Monomial::from_arrows(&q, arrows).unwrap()
    };
    let one = field.one();
    let mut rels = Vec::new();
    // the three 2-cycle relations: f-composite minus c times the long path
    for (pair, cyc) in [
        ([ALPHA, BETA], [EPS, ALPHA, ETA, BETA, MU, GAMMA]),
        ([BETA, GAMMA], [ETA, BETA, MU, GAMMA, EPS, ALPHA]),
        ([GAMMA, ALPHA], [MU, GAMMA, EPS, ALPHA, ETA, BETA]),
    ] {
        rels.push(Relation::new(
            &q,
            vec![
                (one.clone(), path(&pair, 1, &[])),
                (c.neg(), path(&cyc, m - 1, &cyc[..5])),
            ],
        )?);
    }
    // the three loop relations, with the b deformation on the socle term
    for (i, (loop_arrow, cyc)) in [
        (EPS, [ALPHA, ETA, BETA, MU, GAMMA, EPS]),
        (ETA, [BETA, MU, GAMMA, EPS, ALPHA, ETA]),
        (MU, [GAMMA, EPS, ALPHA, ETA, BETA, MU]),
    ]
    .into_iter()
    .enumerate()
    {
        let mut terms = vec![
            (one.clone(), path(&[loop_arrow, loop_arrow], 1, &[])),
            (c.neg(), path(&cyc, m - 1, &cyc[..5])),
        ];
        if !b[i].is_zero() {
            terms.push((b[i].neg(), path(&cyc, m, &[])));
        }
        rels.push(Relation::new(&q, terms)?);
    }
    // zero relations
    for tail in [
        [ALPHA, BETA, MU],
        [EPS, EPS, ALPHA],
        [BETA, GAMMA, EPS],
        [ETA, ETA, BETA],
        [GAMMA, ALPHA, ETA],
        [MU, MU, GAMMA],
    ] {
        rels.push(Relation::new(&q, vec![(one.clone(), path(&tail, 1, &[]))])?);
    }
    Ok(Arc::new(Algebra::build(q, field, rels, Some(6 * m + 4))?))
}

/// One built-in socle-equivalent pair with its expected outcomes.
pub struct CorpusEntry {
    pub id: &'static str,
    pub describe: &'static str,
    pub text_a: &'static str,
    pub text_b: &'static str,
    /// Expected common dimension, with the source of the number.
    pub expected_dim: (usize, &'static str),
    /// Expected gldim of End(N + A) for the bundled generator N, if one
    /// with finite global dimension is known.
    pub expected_gldim: Option<(usize, &'static str)>,
}

pub const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        id: "loop-cycle",
        describe: "two-vertex pair: loop squares to socle vs to zero",
        text_a: LOOP_CYCLE_DEFORMED,
        text_b: LOOP_CYCLE_PLAIN,
        expected_dim: (10, "recomputed from the relations"),
        expected_gldim: None,
    },
    CorpusEntry {
        id: "three-vertex",
        describe: "three-vertex extension of the loop-cycle pair",
        text_a: THREE_VERTEX_DEFORMED,
        text_b: THREE_VERTEX_PLAIN,
        expected_dim: (14, "recomputed from the relations"),
        expected_gldim: None,
    },
    CorpusEntry {
        id: "local-scalar",
        describe: "local dimension-4 pair with socle scalars 1 and 2",
        text_a: include_str!("../../../corpus/ex_local_scalar_1.alg"),
        text_b: include_str!("../../../corpus/ex_local_scalar_2.alg"),
        expected_dim: (4, "published value"),
        expected_gldim: Some((3, "published value, re-verified here")),
    },
    CorpusEntry {
        id: "triangle",
        describe: "triangulation-quiver pair over GF(2), deformed socle",
        text_a: TRIANGLE_B0,
        text_b: TRIANGLE_B1,
        expected_dim: (36, "published value"),
        expected_gldim: None,
    },
];

pub fn entry(id: &str) -> Option<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.id == id)
}

/// Bundled generator module N, as a summand list: the simple and the
/// radical of the projective at each vertex. For the local dimension-4
/// pair this gives gldim End(N + A) = 3 (found by the in-repo search);
/// entries without a pinned value use seeded random modules instead and
/// only compare the two sides.
fn corpus_generator(a: &Arc<Algebra>) -> Vec<repdim_core::rep::Rep> {
    use repdim_core::rep::{module_radical, projective, simple};
    let mut n = Vec::new();
    for v in 0..a.vertex_count() {
        n.push(simple(a.clone(), v));
        let (rad, _) = module_radical(&projective(a.clone(), v));
        if !rad.is_zero() {
            n.push(rad);
        }
    }
    n
}

/// Run the whole pipeline on one corpus entry: build both algebras, check
/// selfinjectivity, verify the socle identification and the projective
/// correspondence, transfer the canonical almost split sequences, and
/// compare global dimensions of transferred generators.
pub fn run_corpus(e: &CorpusEntry, seed: u64, cap: usize) -> RunReport {
    let mut report = RunReport::new(format!("corpus {}", e.id), seed);
    let t0 = Instant::now();
    let built = (|| -> Result<_> {
        let a = parse_algebra(e.text_a)?.build(None)?;
        let b = parse_algebra(e.text_b)?.build(None)?;
        Ok((a, b))
    })();
    let (a, b) = match built {
        Ok(x) => x,
        Err(err) => {
            report.push(Record::fail("build", format!("{err}"), "", t0));
            return report;
        }
    };
    report.push(Record::check(
        "dimensions",
        a.dim() == e.expected_dim.0 && b.dim() == e.expected_dim.0,
        format!("dim A = {}, dim A' = {}", a.dim(), b.dim()),
        e.expected_dim.1,
        t0,
    ));
    let t = Instant::now();
    match (is_selfinjective(&a), is_selfinjective(&b)) {
        (Ok(sa), Ok(sb)) => report.push(Record::check(
            "selfinjective",
            sa && sb,
            format!("A: {sa}, A': {sb}"),
            "definition, checked by matching projectives with injectives",
            t,
        )),
        (ra, rb) => report.push(Record::fail(
            "selfinjective",
            format!("{ra:?} / {rb:?}"),
            "",
            t,
        )),
    }
    let t = Instant::now();
    let ident = match verify_identification(&a, &b, None) {
        Ok(i) => i,
        Err(err) => {
            report.push(Record::fail("socle-identification", format!("{err}"), "", t));
            return report;
        }
    };
    report.push(Record::pass(
        "socle-identification",
        format!(
            "quotients of dimension {} agree on the monomial basis",
            ident.qa.dim
        ),
        "identity on normal monomials, verified multiplicative",
        t,
    ));
    for (v, pair) in ident.pairs.iter().enumerate() {
        let t = Instant::now();
        let ok = pair.rad_iso.is_isomorphism()
            && pair.top_iso.is_isomorphism()
            && pair.p_a.total_dim() == pair.p_b.total_dim();
        let compat = match &pair.compat {
            Some(_) => "canonical-map-compatible identification found".to_string(),
            None => pair.obstruction().unwrap_or_default(),
        };
        report.push(Record::check(
            &format!("projective-correspondence v{v}"),
            ok,
            format!(
                "rad and top isomorphic, lengths {} = {}; {}",
                pair.p_a.total_dim(),
                pair.p_b.total_dim(),
                compat
            ),
            "projective correspondence of the socle equivalence",
            t,
        ));
        let t = Instant::now();
        match ar_sequence_of_projective(&ident, v)
            .and_then(|ses| transfer_sequence(&ident, &ses))
        {
            Ok(out) => match out.verify_exact() {
                Ok(()) => report.push(Record::pass(
                    &format!("sequence-transfer v{v}"),
                    "transferred almost split sequence is exact".to_string(),
                    "rank-based exactness verification",
                    t,
                )),
                Err(err) => report.push(Record::fail(
                    &format!("sequence-transfer v{v}"),
                    format!("{err}"),
                    "",
                    t,
                )),
            },
            Err(err) => report.push(Record::fail(
                &format!("sequence-transfer v{v}"),
                format!("{err}"),
                "",
                t,
            )),
        }
    }
    // generator transfer: bundled generator when one is known, otherwise a
    // seeded random socle-annihilated module
    let t = Instant::now();
    let n = match e.expected_gldim {
        Some(_) => corpus_generator(&a),
        None => match random_soc_annihilated(&a, seed, 2) {
            Ok(n) => n,
            Err(err) => {
                report.push(Record::fail("generator-transfer", format!("{err}"), "", t));
                return report;
            }
        },
    };
    match transfer_generator(&ident, &n, cap) {
        Ok(out) => {
            let expected_ok = match e.expected_gldim {
                Some((want, _)) => out.gldim_a == GlDim::Finite(want),
                None => true,
            };
            report.push(Record::check(
                "generator-transfer",
                out.equal && expected_ok,
                format!(
                    "gldim End(N + A) = {}, gldim End(N + A') = {}{}",
                    out.gldim_a,
                    out.gldim_b,
                    if out.capped { " (both hit the cap)" } else { "" }
                ),
                match e.expected_gldim {
                    Some((_, src)) => src,
                    None => "equality of global dimensions across the pair",
                },
                t,
            ));
        }
        Err(err) => report.push(Record::fail("generator-transfer", format!("{err}"), "", t)),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_scalar_builds_dimension_four() {
        let f = FieldSpec::prime(5).unwrap();
        let a = local_scalar(f, 3).unwrap();
        assert_eq!(a.dim(), 4);
    }

    #[test]
    fn triangle_weight_one_has_dimension_36() {
        let f = FieldSpec::prime(2).unwrap();
        let a = triangle(f, 1, 1, [0, 0, 0]).unwrap();
        let b = triangle(f, 1, 1, [1, 1, 1]).unwrap();
        assert_eq!(a.dim(), 36);
        assert_eq!(b.dim(), 36);
    }

    #[test]
    fn corpus_files_parse_and_match_builders() {
        let a = parse_algebra(LOOP_CYCLE_DEFORMED).unwrap().build(None).unwrap();
        assert_eq!(a.dim(), 10);
        let t0 = parse_algebra(TRIANGLE_B0).unwrap().build(None).unwrap();
        let t0b = triangle(FieldSpec::prime(2).unwrap(), 1, 1, [0, 0, 0]).unwrap();
        assert_eq!(t0.dim(), t0b.dim());
        let l1 = parse_algebra(ENTRIES[2].text_a).unwrap().build(None).unwrap();
        let l1b = local_scalar(FieldSpec::prime(5).unwrap(), 1).unwrap();
        assert_eq!(l1.dim(), l1b.dim());
    }
}
