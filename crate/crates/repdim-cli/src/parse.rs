//! Line-oriented text formats for algebras and modules.
//!
//! Algebra file (header `repdim-algebra v1`):
//! ```text
//! repdim-algebra v1
//! field gf 5            # or: field q
//! vertices 1 2
//! arrow alpha 1 1
//! arrow gamma 1 2
//! arrow beta 2 1
//! relation alpha*alpha - alpha*gamma*beta
//! relation beta*gamma
//! degree_hint 8         # optional
//! ```
//! Relation terms are separated by `+` / `-`; each term is an optional
//! integer or rational coefficient followed by a `*`-joined path of arrow
//! names, read left to right (in `alpha*beta`, `alpha` is traversed
//! first). `#` starts a comment.
//!
//! Module file (header `repdim-module v1`), one or more `module` blocks:
//! ```text
//! repdim-module v1
//! module
//! dims 2 1
//! matrix alpha
//! 0 1
//! 0 0
//! ```
//! `matrix <arrow>` is followed by `dims[source]` rows of
//! `dims[target]` entries; omitted arrows act as zero. Entries are
//! integers or rationals, reduced mod p over prime fields.

use repdim_core::algebra::Algebra;
use repdim_core::quiver::{Arrow, Monomial, Quiver, Relation};
use repdim_core::rep::{Rep, Representation};
use repdim_core::{Error, FieldSpec, Matrix, Result, Scalar};
use std::sync::Arc;

fn err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Input(format!("line {line}: {msg}"))
}

/// Strip comments and blank lines, keeping original line numbers.
fn logical_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| {
            let l = match l.find('#') {
                Some(p) => &l[..p],
                None => l,
            };
            (i + 1, l.trim())
        })
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn parse_scalar(field: FieldSpec, tok: &str, line: usize) -> Result<Scalar> {
    if let Some((n, d)) = tok.split_once('/') {
        let n: i64 = n.parse().map_err(|_| err(line, format!("bad numerator {n:?}")))?;
        let d: i64 = d.parse().map_err(|_| err(line, format!("bad denominator {d:?}")))?;
        return field.from_fraction(n, d);
    }
    let n: i64 = tok.parse().map_err(|_| err(line, format!("bad number {tok:?}")))?;
    Ok(field.from_int(n))
}

fn looks_numeric(tok: &str) -> bool {
    tok.chars().next().map_or(false, |c| c.is_ascii_digit() || c == '-')
}

/// One relation right-hand side, e.g. `a*a - 2*a*c*b + 1/3*c`.
fn parse_relation(
    q: &Quiver,
    field: FieldSpec,
    text: &str,
    line: usize,
) -> Result<Relation> {
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in text.chars() {
        match ch {
            '+' | '-' => {
                if cur.trim().is_empty() && terms.is_empty() && ch == '-' {
                    neg = true;
                } else if cur.trim().is_empty() {
                    return Err(err(line, "empty term in relation"));
                } else {
                    terms.push((neg, cur.trim().to_string()));
                    cur.clear();
                    neg = ch == '-';
                }
            }
            _ => cur.push(ch),
        }
    }
    if cur.trim().is_empty() {
        return Err(err(line, "relation ends with a dangling sign"));
    }
    terms.push((neg, cur.trim().to_string()));
    let mut parsed: Vec<(Scalar, Monomial)> = Vec::new();
    for (negated, term) in terms {
        let factors: Vec<&str> = term.split('*').map(str::trim).collect();
        if factors.iter().any(|f| f.is_empty()) {
            return Err(err(line, "empty factor in relation term"));
        }
        let (coeff, path) = if looks_numeric(factors[0]) {
            (parse_scalar(field, factors[0], line)?, &factors[1..])
        } else {
            (field.one(), &factors[..])
        };
        if path.is_empty() {
            return Err(err(line, "term has a coefficient but no arrows"));
        }
        let mut arrows = Vec::new();
        for f in path {
            if looks_numeric(f) {
                return Err(err(line, format!("coefficient {f:?} must come first in a term")));
            }
            let a = q
                .arrow_index(f)
                .ok_or_else(|| err(line, format!("unknown arrow {f:?}")))?;
            arrows.push(a);
        }
        let m = Monomial::from_arrows(q, arrows)
            .map_err(|_| err(line, format!("arrows in {term:?} do not compose")))?;
        let c = if negated { coeff.neg() } else { coeff };
        parsed.push((c, m));
    }
    Relation::new(q, parsed).map_err(|e| err(line, e))
}

/// Everything needed to build an algebra, before the (possibly slow)
/// basis closure runs.
#[derive(Debug)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub degree_hint: Option<usize>,
}

impl AlgebraFile {
    pub fn build(self, degree_hint: Option<usize>) -> Result<Arc<Algebra>> {
        let hint = degree_hint.or(self.degree_hint);
        Ok(Arc::new(Algebra::build(self.quiver, self.field, self.relations, hint)?))
    }
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile> {
    let lines = logical_lines(text);
    let mut it = lines.iter();
    match it.next() {
        Some((_, l)) if *l == "repdim-algebra v1" => {}
        Some((n, l)) => return Err(err(*n, format!("expected header `repdim-algebra v1`, found {l:?}"))),
        None => return Err(Error::Input("empty algebra file".into())),
    }
    let mut field: Option<FieldSpec> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut relation_lines: Vec<(usize, String)> = Vec::new();
    let mut degree_hint = None;
    for (n, l) in it {
        let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((*l, ""));
        let rest = rest.trim();
        match key {
            "field" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                field = Some(match toks.as_slice() {
                    ["gf", p] => FieldSpec::prime(
                        p.parse().map_err(|_| err(*n, format!("bad prime {p:?}")))?,
                    )?,
                    ["q"] => FieldSpec::Rational,
                    _ => return Err(err(*n, "expected `field gf <p>` or `field q`")),
                });
            }
            "vertices" => {
                vertices = rest.split_whitespace().map(str::to_string).collect();
                if vertices.is_empty() {
                    return Err(err(*n, "vertex list is empty"));
                }
            }
            "arrow" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [name, s, t] = toks.as_slice() else {
                    return Err(err(*n, "expected `arrow <name> <source> <target>`"));
                };
                let find = |v: &str| {
                    vertices
                        .iter()
                        .position(|x| x == v)
                        .ok_or_else(|| err(*n, format!("unknown vertex {v:?}")))
                };
                arrows.push(Arrow {
                    name: name.to_string(),
                    source: find(s)?,
                    target: find(t)?,
                });
            }
            "relation" => relation_lines.push((*n, rest.to_string())),
            "degree_hint" => {
                degree_hint =
                    Some(rest.parse().map_err(|_| err(*n, format!("bad hint {rest:?}")))?);
            }
            _ => return Err(err(*n, format!("unknown directive {key:?}"))),
        }
    }
    let field = field.ok_or_else(|| Error::Input("missing `field` line".into()))?;
    let quiver = Quiver::new(vertices, arrows)?;
    let relations = relation_lines
        .into_iter()
        .map(|(n, l)| parse_relation(&quiver, field, &l, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(AlgebraFile { field, quiver, relations, degree_hint })
}

pub fn parse_algebra_file(path: &std::path::Path) -> Result<AlgebraFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_algebra(&text)
}

fn parse_row(field: FieldSpec, l: &str, cols: usize, line: usize) -> Result<Vec<Scalar>> {
    let entries = l
        .split_whitespace()
        .map(|t| parse_scalar(field, t, line))
        .collect::<Result<Vec<_>>>()?;
    if entries.len() != cols {
        return Err(err(line, format!("expected {cols} entries, found {}", entries.len())));
    }
    Ok(entries)
}

/// Parse the one or more `module` blocks of a module file against an
/// already-built algebra. Every representation is validated against the
/// relations at construction.
pub fn parse_modules(algebra: &Arc<Algebra>, text: &str) -> Result<Vec<Rep>> {
    let q = &algebra.quiver;
    let field = algebra.field;
    let lines = logical_lines(text);
    let mut i = 0usize;
    match lines.first() {
        Some((_, l)) if *l == "repdim-module v1" => i += 1,
        Some((n, l)) => return Err(err(*n, format!("expected header `repdim-module v1`, found {l:?}"))),
        None => return Err(Error::Input("empty module file".into())),
    }
    let mut out = Vec::new();
    while i < lines.len() {
        let (n, l) = lines[i];
        if l != "module" {
            return Err(err(n, format!("expected `module`, found {l:?}")));
        }
        i += 1;
        let (n, l) = *lines
            .get(i)
            .ok_or_else(|| Error::Input("module block ends before `dims`".into()))?;
        let Some(rest) = l.strip_prefix("dims") else {
            return Err(err(n, format!("expected `dims`, found {l:?}")));
        };
        let dims: Vec<usize> = rest
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| err(n, format!("bad dimension {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if dims.len() != q.vertices.len() {
            return Err(err(
                n,
                format!("expected {} dimensions, found {}", q.vertices.len(), dims.len()),
            ));
        }
        i += 1;
        let mut mats: Vec<Matrix> = q
            .arrows
            .iter()
            .map(|a| Matrix::zero(field, dims[a.source], dims[a.target]))
            .collect();
        while i < lines.len() && lines[i].1 != "module" {
            let (n, l) = lines[i];
            let Some(name) = l.strip_prefix("matrix") else {
                return Err(err(n, format!("expected `matrix <arrow>` or `module`, found {l:?}")));
            };
            let name = name.trim();
            let a = q
                .arrow_index(name)
                .ok_or_else(|| err(n, format!("unknown arrow {name:?}")))?;
            let (rows, cols) = (dims[q.arrows[a].source], dims[q.arrows[a].target]);
            i += 1;
            let mut rowdata = Vec::new();
            for r in 0..rows {
                let (n, l) = *lines.get(i).ok_or_else(|| {
                    err(n, format!("matrix {name} needs {rows} rows, file ended at row {r}"))
                })?;
                rowdata.push(parse_row(field, l, cols, n)?);
                i += 1;
            }
            mats[a] = Matrix::from_rows(field, rowdata);
        }
        out.push(Representation::new(algebra.clone(), dims, mats)?);
    }
    if out.is_empty() {
        return Err(Error::Input("module file has no `module` block".into()));
    }
    Ok(out)
}

pub fn parse_module_file(algebra: &Arc<Algebra>, path: &std::path::Path) -> Result<Vec<Rep>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_modules(algebra, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRUNC3: &str = "\
repdim-algebra v1
field gf 5
vertices 1
arrow x 1 1
relation x*x*x
";

    #[test]
    fn truncated_polynomial_algebra_builds() {
        let a = parse_algebra(TRUNC3).unwrap().build(None).unwrap();
        assert_eq!(a.dim(), 3);
    }

    #[test]
    fn rational_field_and_coefficients() {
        let text = "\
repdim-algebra v1
field q
vertices 1
arrow x 1 1
relation x*x - 1/2*x*x   # same monomial, collapses to (1/2) x^2
";
        let a = parse_algebra(text).unwrap().build(None).unwrap();
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "\
repdim-algebra v1
field gf 5
vertices 1
arrow x 1 1
relation x*
";
        let e = parse_algebra(bad).unwrap_err();
        assert!(e.to_string().contains("line 5"), "{e}");
    }

    #[test]
    fn unknown_arrow_is_reported() {
        let bad = TRUNC3.replace("relation x*x*x", "relation y*x");
        let e = parse_algebra(&bad).unwrap_err();
        assert!(e.to_string().contains("unknown arrow"), "{e}");
    }

    #[test]
    fn module_parses_and_validates() {
        let a = parse_algebra(TRUNC3).unwrap().build(None).unwrap();
        let text = "\
repdim-module v1
module
dims 2
matrix x
0 1
0 0
";
        let ms = parse_modules(&a, text).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].total_dim(), 2);
    }

    #[test]
    fn module_violating_relations_is_rejected() {
        let a = parse_algebra(TRUNC3).unwrap().build(None).unwrap();
        // x acts invertibly, so x^3 cannot vanish on a nonzero module
        let text = "\
repdim-module v1
module
dims 1
matrix x
1
";
        assert!(parse_modules(&a, text).is_err());
    }

    #[test]
    fn omitted_matrices_default_to_zero() {
        let a = parse_algebra(TRUNC3).unwrap().build(None).unwrap();
        let ms = parse_modules(&a, "repdim-module v1\nmodule\ndims 1\n").unwrap();
        assert!(ms[0].arrow_mats[0].is_zero());
    }
}
