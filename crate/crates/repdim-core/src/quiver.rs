//! Quivers, paths, and relations.
//!
//! A path records its arrows in traversal order: in the word `a b`, arrow
//! `a` is traversed first, so `source(a b) = source(a)` and
//! `target(a b) = target(b)`.

use crate::error::{Error, Result};
use crate::field::Scalar;
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver> {
        if vertices.is_empty() {
            return Err(Error::Input("quiver has no vertices".into()));
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::Input(format!("duplicate vertex name {v}")));
            }
        }
        for (i, a) in arrows.iter().enumerate() {
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Input(format!("duplicate arrow name {}", a.name)));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::Input(format!("arrow {} has an undeclared endpoint", a.name)));
            }
        }
        let q = Quiver { vertices, arrows };
        if !q.is_connected() {
            return Err(Error::Input("quiver is not connected".into()));
        }
        Ok(q)
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Connectedness of the underlying undirected graph.
    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// A path in the quiver. `arrows` empty means the trivial path at `vertex`;
/// otherwise `vertex` equals the source of the first arrow.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub vertex: usize,
    pub arrows: Vec<usize>,
}

impl Monomial {
    pub fn trivial(vertex: usize) -> Monomial {
        Monomial { vertex, arrows: vec![] }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Monomial> {
        if arrows.is_empty() {
            return Err(Error::Input("empty arrow word; use a trivial path".into()));
        }
        for w in arrows.windows(2) {
            if q.arrows[w[0]].target != q.arrows[w[1]].source {
                return Err(Error::Input(format!(
                    "arrows {} and {} do not compose",
                    q.arrows[w[0]].name, q.arrows[w[1]].name
                )));
            }
        }
        Ok(Monomial { vertex: q.arrows[arrows[0]].source, arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self, _q: &Quiver) -> usize {
        self.vertex
    }

    pub fn target(&self, q: &Quiver) -> usize {
        match self.arrows.last() {
            Some(&a) => q.arrows[a].target,
            None => self.vertex,
        }
    }

    /// `self` then `other`, if the endpoints match.
    pub fn compose(&self, other: &Monomial, q: &Quiver) -> Option<Monomial> {
        if self.target(q) != other.source(q) {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend(&other.arrows);
        Some(Monomial { vertex: self.vertex, arrows })
    }

    /// Length-then-lexicographic order by arrow declaration index; trivial
    /// paths are ordered by vertex index.
    pub fn cmp_order(&self, other: &Monomial) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.vertex.cmp(&other.vertex))
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, q }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp_order(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.cmp_order(other)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e_{}", self.vertex)
        } else {
            write!(f, "path{:?}", self.arrows)
        }
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    q: &'a Quiver,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_trivial() {
            write!(f, "e_{}", self.q.vertices[self.m.vertex])
        } else {
            let names: Vec<&str> =
                self.m.arrows.iter().map(|&a| self.q.arrows[a].name.as_str()).collect();
            write!(f, "{}", names.join("*"))
        }
    }
}

/// A relation: a linear combination of parallel paths of length at least
/// two.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Monomial)>,
}

impl Relation {
    pub fn new(q: &Quiver, terms: Vec<(Scalar, Monomial)>) -> Result<Relation> {
        let nonzero: Vec<(Scalar, Monomial)> =
            terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        if nonzero.is_empty() {
            return Err(Error::Input("relation is identically zero".into()));
        }
        let (s, t) = (nonzero[0].1.source(q), nonzero[0].1.target(q));
        for (_, m) in &nonzero {
            if m.source(q) != s || m.target(q) != t {
                return Err(Error::Input(
                    "relation mixes paths with different endpoints".into(),
                ));
            }
            if m.len() < 2 {
                return Err(Error::Input(
                    "relation contains a path of length below two".into(),
                ));
            }
        }
        Ok(Relation { terms: nonzero })
    }

    pub fn source(&self, q: &Quiver) -> usize {
        self.terms[0].1.source(q)
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.terms[0].1.target(q)
    }

    pub fn max_length(&self) -> usize {
        self.terms.iter().map(|(_, m)| m.len()).max().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn loop_quiver() -> Quiver {
        Quiver::new(
            vec!["1".into()],
            vec![Arrow { name: "x".into(), source: 0, target: 0 }],
        )
        .unwrap()
    }

    #[test]
    fn rejects_duplicate_names() {
        assert!(Quiver::new(vec!["1".into(), "1".into()], vec![]).is_err());
        let a = Arrow { name: "x".into(), source: 0, target: 0 };
        assert!(Quiver::new(vec!["1".into()], vec![a.clone(), a]).is_err());
    }

    #[test]
    fn rejects_disconnected() {
        assert!(Quiver::new(vec!["1".into(), "2".into()], vec![]).is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                Arrow { name: "a".into(), source: 0, target: 1 },
                Arrow { name: "b".into(), source: 1, target: 0 },
            ],
        )
        .unwrap();
        let a = Monomial::from_arrows(&q, vec![0]).unwrap();
        let b = Monomial::from_arrows(&q, vec![1]).unwrap();
        let ab = a.compose(&b, &q).unwrap();
        assert_eq!(ab.source(&q), 0);
        assert_eq!(ab.target(&q), 0);
        assert!(a.compose(&a, &q).is_none());
        assert_eq!(format!("{}", ab.display(&q)), "a*b");
    }

    #[test]
    fn order_is_length_then_lex() {
        let q = loop_quiver();
        let e = Monomial::trivial(0);
        let x = Monomial::from_arrows(&q, vec![0]).unwrap();
        let xx = Monomial::from_arrows(&q, vec![0, 0]).unwrap();
        assert_eq!(e.cmp_order(&x), Ordering::Less);
        assert_eq!(x.cmp_order(&xx), Ordering::Less);
        assert_eq!(x.cmp_order(&x), Ordering::Equal);
    }

    #[test]
    fn relation_validation() {
        let q = loop_quiver();
        let f = FieldSpec::prime(5).unwrap();
        let x = Monomial::from_arrows(&q, vec![0]).unwrap();
        let xx = Monomial::from_arrows(&q, vec![0, 0]).unwrap();
        assert!(Relation::new(&q, vec![(f.one(), xx.clone())]).is_ok());
        assert!(Relation::new(&q, vec![(f.one(), x)]).is_err());
        assert!(Relation::new(&q, vec![(f.zero(), xx)]).is_err());
    }
}
