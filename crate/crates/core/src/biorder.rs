//! Finite biordered sets.
//!
//! `e ≤ℓ f ⟺ ef = e` and `e ≤r f ⟺ fe = e`, with the basic product defined
//! exactly on `D_E`. Every other relation is derived from these two.

use serde::{Deserialize, Serialize};

use crate::relation::Relation;
use crate::report::Report;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiorderedSet {
    name: String,
    n: usize,
    product: Vec<Option<usize>>,
    leq_l: Relation,
    leq_r: Relation,
    rel_l: Relation,
    rel_r: Relation,
    labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiorderDoc {
    pub n: usize,
    pub product: Vec<Vec<Option<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// Validates a partial product table against B1–B5.
pub fn load_biorder(
    name: &str,
    table: &[Vec<Option<usize>>],
    labels: Option<Vec<String>>,
) -> Result<BiorderedSet> {
    let e = BiorderedSet::unchecked(name, table, labels)?;
    let report = e.axiom_report();
    match report.violations.into_iter().next() {
        None => Ok(e),
        Some(v) => Err(Error::AxiomViolation {
            axiom: v.rule,
            witness: v.witness,
        }),
    }
}

pub fn load_biorder_doc(name: &str, doc: &BiorderDoc) -> Result<BiorderedSet> {
    if doc.product.len() != doc.n {
        return Err(Error::MalformedTable(format!("expected {} rows", doc.n)));
    }
    load_biorder(name, &doc.product, doc.labels.clone())
}

impl BiorderedSet {
    /// Builds the structure without checking axioms; only shape is validated.
    pub fn unchecked(
        name: &str,
        table: &[Vec<Option<usize>>],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = table.len();
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedTable(format!("expected a {n}x{n} table")));
        }
        for (a, row) in table.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                if matches!(v, Some(x) if *x >= n) {
                    return Err(Error::MalformedTable(format!(
                        "entry ({a},{b}) out of range"
                    )));
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(_) => return Err(Error::MalformedTable("label count differs from n".into())),
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let product: Vec<Option<usize>> = table.iter().flatten().copied().collect();
        let leq_l = Relation::from_fn(n, |e, f| product[e * n + f] == Some(e));
        let leq_r = Relation::from_fn(n, |e, f| product[f * n + e] == Some(e));
        let rel_l = leq_l.symmetric_part();
        let rel_r = leq_r.symmetric_part();
        Ok(Self {
            name: name.to_string(),
            n,
            product,
            leq_l,
            leq_r,
            rel_l,
            rel_r,
            labels,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    #[inline]
    pub fn product(&self, e: usize, f: usize) -> Option<usize> {
        self.product[e * self.n + f]
    }

    /// Basic product of a pair known to lie in `D_E`.
    #[inline]
    pub fn mul(&self, e: usize, f: usize) -> usize {
        self.product(e, f)
            .unwrap_or_else(|| panic!("({e},{f}) not in D_E of {}", self.name))
    }

    pub fn in_domain(&self, e: usize, f: usize) -> bool {
        self.product(e, f).is_some()
    }

    #[inline]
    pub fn leq_l(&self, e: usize, f: usize) -> bool {
        self.leq_l.get(e, f)
    }

    #[inline]
    pub fn leq_r(&self, e: usize, f: usize) -> bool {
        self.leq_r.get(e, f)
    }

    #[inline]
    pub fn leq(&self, e: usize, f: usize) -> bool {
        self.leq_l(e, f) && self.leq_r(e, f)
    }

    #[inline]
    pub fn l_rel(&self, e: usize, f: usize) -> bool {
        self.rel_l.get(e, f)
    }

    #[inline]
    pub fn r_rel(&self, e: usize, f: usize) -> bool {
        self.rel_r.get(e, f)
    }

    pub fn l_classes(&self) -> Vec<usize> {
        self.rel_l.classes()
    }

    pub fn r_classes(&self) -> Vec<usize> {
        self.rel_r.classes()
    }

    /// Least element of the 𝓛-class of `e`.
    pub fn l_rep(&self, e: usize) -> usize {
        (0..self.n).find(|&f| self.l_rel(e, f)).expect("reflexive")
    }

    /// Least element of the 𝓡-class of `e`.
    pub fn r_rep(&self, e: usize) -> usize {
        (0..self.n).find(|&f| self.r_rel(e, f)).expect("reflexive")
    }

    /// Reversed products; `≤ℓ` and `≤r` trade places.
    pub fn opposite(&self) -> BiorderedSet {
        let n = self.n;
        let table: Vec<Vec<Option<usize>>> = (0..n)
            .map(|e| (0..n).map(|f| self.product(f, e)).collect())
            .collect();
        BiorderedSet::unchecked(
            &format!("{}^op", self.name),
            &table,
            Some(self.labels.clone()),
        )
        .expect("same shape")
    }

    pub fn to_doc(&self) -> BiorderDoc {
        BiorderDoc {
            n: self.n,
            product: (0..self.n)
                .map(|e| (0..self.n).map(|f| self.product(e, f)).collect())
                .collect(),
            labels: Some(self.labels.clone()),
        }
    }

    /// All B1–B5 violations, axioms in order, smallest witness first.
    pub fn axiom_report(&self) -> Report {
        let mut rep = Report::new();
        self.check_b1(&mut rep);
        self.check_b2(&mut rep);
        self.check_b3(&mut rep);
        self.check_b4(&mut rep);
        self.check_b5(&mut rep);
        rep
    }

    fn check_b1(&self, rep: &mut Report) {
        let n = self.n;
        for e in 0..n {
            rep.check(self.product(e, e) == Some(e), "B1", &[e]);
        }
        if let Some(w) = self.leq_l.first_intransitive() {
            rep.push("B1", &w);
        }
        if let Some(w) = self.leq_r.first_intransitive() {
            rep.push("B1", &w);
        }
        for e in 0..n {
            for f in 0..n {
                let comparable =
                    self.leq_l(e, f) || self.leq_r(e, f) || self.leq_l(f, e) || self.leq_r(f, e);
                rep.check(comparable == self.in_domain(e, f), "B1", &[e, f]);
                if e != f {
                    rep.check(!(self.leq(e, f) && self.leq(f, e)), "B1", &[e, f]);
                }
            }
        }
    }

    fn check_b2(&self, rep: &mut Report) {
        let n = self.n;
        for e in 0..n {
            for f in 0..n {
                if self.leq_l(e, f) {
                    let ok = self
                        .product(f, e)
                        .is_some_and(|fe| self.l_rel(e, fe) && self.leq(fe, f));
                    rep.check(ok, "B2", &[e, f]);
                }
                if self.leq_r(e, f) {
                    let ok = self
                        .product(e, f)
                        .is_some_and(|ef| self.r_rel(e, ef) && self.leq(ef, f));
                    rep.check(ok, "B2", &[e, f]);
                }
            }
        }
    }

    fn check_b3(&self, rep: &mut Report) {
        let n = self.n;
        let p = |a: Option<usize>, b: Option<usize>| match (a, b) {
            (Some(a), Some(b)) => self.product(a, b),
            _ => None,
        };
        for e in 0..n {
            for f in 0..n {
                for g in 0..n {
                    if self.leq_r(f, e) && self.leq_r(g, e) && self.leq_l(f, g) {
                        let fe = self.product(f, e);
                        let ge = self.product(g, e);
                        let lhs = p(self.product(g, f), Some(e));
                        let rhs = p(ge, fe);
                        let ok = matches!((fe, ge), (Some(a), Some(b)) if self.leq_l(a, b))
                            && lhs.is_some()
                            && lhs == rhs;
                        rep.check(ok, "B3", &[e, f, g]);
                    }
                    if self.leq_l(f, e) && self.leq_l(g, e) && self.leq_r(f, g) {
                        let ef = self.product(e, f);
                        let eg = self.product(e, g);
                        let lhs = p(Some(e), self.product(f, g));
                        let rhs = p(ef, eg);
                        let ok = matches!((ef, eg), (Some(a), Some(b)) if self.leq_r(a, b))
                            && lhs.is_some()
                            && lhs == rhs;
                        rep.check(ok, "B3", &[e, f, g]);
                    }
                }
            }
        }
    }

    fn check_b4(&self, rep: &mut Report) {
        let n = self.n;
        for e in 0..n {
            for f in 0..n {
                for g in 0..n {
                    if self.leq_l(e, f) && self.leq_l(f, g) {
                        let lhs = self.product(g, e).and_then(|ge| self.product(f, ge));
                        rep.check(lhs.is_some() && lhs == self.product(f, e), "B4", &[e, f, g]);
                    }
                    if self.leq_r(e, f) && self.leq_r(f, g) {
                        let lhs = self.product(e, g).and_then(|eg| self.product(eg, f));
                        rep.check(lhs.is_some() && lhs == self.product(e, f), "B4", &[e, f, g]);
                    }
                }
            }
        }
    }

    fn check_b5(&self, rep: &mut Report) {
        let n = self.n;
        for e in 0..n {
            for f in 0..n {
                for g in 0..n {
                    if self.leq_l(f, e) && self.leq_l(g, e) {
                        let (ef, eg) = (self.mul(e, f), self.mul(e, g));
                        if self.leq_r(ef, eg) {
                            let ok = (0..n).any(|f1| {
                                self.leq_r(f1, g)
                                    && self.leq_l(f1, e)
                                    && self.product(e, f1) == Some(ef)
                            });
                            rep.check(ok, "B5", &[e, f, g]);
                        }
                    }
                    if self.leq_r(f, e) && self.leq_r(g, e) {
                        let (fe, ge) = (self.mul(f, e), self.mul(g, e));
                        if self.leq_l(fe, ge) {
                            let ok = (0..n).any(|f1| {
                                self.leq_l(f1, g)
                                    && self.leq_r(f1, e)
                                    && self.product(f1, e) == Some(fe)
                            });
                            rep.check(ok, "B5", &[e, f, g]);
                        }
                    }
                }
            }
        }
    }

    /// Elements `h` with `h ≤ℓ e` and `h ≤r f`.
    pub fn m_set(&self, e: usize, f: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&h| self.leq_l(h, e) && self.leq_r(h, f))
            .collect()
    }
}

/// The sandwich set `S(e,f)`, by direct evaluation of its defining quantifier.
pub fn sandwich_set(b: &BiorderedSet, e: usize, f: usize) -> Vec<usize> {
    let m = b.m_set(e, f);
    m.iter()
        .copied()
        .filter(|&h| {
            let hf = b.mul(h, f);
            let eh = b.mul(e, h);
            m.iter()
                .all(|&g| b.leq_l(b.mul(g, f), hf) && b.leq_r(b.mul(e, g), eh))
        })
        .collect()
}

/// Least element of `S(e,f)`.
pub fn sandwich_min(b: &BiorderedSet, e: usize, f: usize) -> Option<usize> {
    sandwich_set(b, e, f).into_iter().next()
}

pub fn is_regular(b: &BiorderedSet) -> bool {
    first_empty_sandwich(b).is_none()
}

pub fn first_empty_sandwich(b: &BiorderedSet) -> Option<(usize, usize)> {
    (0..b.n())
        .flat_map(|e| (0..b.n()).map(move |f| (e, f)))
        .find(|&(e, f)| sandwich_set(b, e, f).is_empty())
}

/// BM1, BM2 and optionally RBM for `theta: E → E'`.
pub fn check_bimorphism(
    e: &BiorderedSet,
    e2: &BiorderedSet,
    theta: &[usize],
    require_regular: bool,
) -> Report {
    let mut rep = Report::new();
    if theta.len() != e.n() || theta.iter().any(|&x| x >= e2.n()) {
        rep.push("map", &[theta.len()]);
        return rep;
    }
    for a in 0..e.n() {
        for b in 0..e.n() {
            let Some(ab) = e.product(a, b) else { continue };
            match e2.product(theta[a], theta[b]) {
                None => rep.push("BM1", &[a, b]),
                Some(img) => rep.check(img == theta[ab], "BM2", &[a, b]),
            }
        }
    }
    if require_regular {
        for a in 0..e.n() {
            for b in 0..e.n() {
                let target = sandwich_set(e2, theta[a], theta[b]);
                for h in sandwich_set(e, a, b) {
                    rep.check(target.contains(&theta[h]), "RBM", &[a, b, h]);
                }
            }
        }
    }
    rep
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SquareKind {
    RowSingular,
    ColumnSingular,
    Nonsingular,
}

/// `[e f; g h]` stored row-major as `[e, f, g, h]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ESquare {
    pub entries: [usize; 4],
    pub kind: SquareKind,
}

pub fn is_e_square(b: &BiorderedSet, [e, f, g, h]: [usize; 4]) -> bool {
    b.r_rel(e, f) && b.l_rel(f, h) && b.r_rel(h, g) && b.l_rel(g, e)
}

/// `[g h; eg eh]` for some `e` with `g,h ≤ℓ e`, `g 𝓡 h`.
pub fn is_row_singular(b: &BiorderedSet, [g, h, x, y]: [usize; 4]) -> bool {
    b.r_rel(g, h)
        && (0..b.n())
            .any(|e| b.leq_l(g, e) && b.leq_l(h, e) && b.mul(e, g) == x && b.mul(e, h) == y)
}

/// `[g ge; h he]` for some `e` with `g,h ≤r e`, `g 𝓛 h`.
pub fn is_column_singular(b: &BiorderedSet, [g, x, h, y]: [usize; 4]) -> bool {
    b.l_rel(g, h)
        && (0..b.n())
            .any(|e| b.leq_r(g, e) && b.leq_r(h, e) && b.mul(g, e) == x && b.mul(h, e) == y)
}

/// The eight images of a square under the symmetries of the square.
pub fn square_symmetries([e, f, g, h]: [usize; 4]) -> [[usize; 4]; 8] {
    [
        [e, f, g, h],
        [f, e, h, g],
        [g, h, e, f],
        [h, g, f, e],
        [e, g, f, h],
        [g, e, h, f],
        [f, h, e, g],
        [h, f, g, e],
    ]
}

/// Every singular square in exact orientation, sorted.
pub fn singular_squares(b: &BiorderedSet) -> Vec<[usize; 4]> {
    let n = b.n();
    let mut out = Vec::new();
    for e in 0..n {
        for g in 0..n {
            for h in 0..n {
                if b.leq_l(g, e) && b.leq_l(h, e) && b.r_rel(g, h) {
                    out.push([g, h, b.mul(e, g), b.mul(e, h)]);
                }
                if b.leq_r(g, e) && b.leq_r(h, e) && b.l_rel(g, h) {
                    out.push([g, b.mul(g, e), h, b.mul(h, e)]);
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// All E-squares up to symmetry, each represented by its least image that is
/// itself an E-square. A class is singular if any image is.
pub fn enumerate_e_squares(b: &BiorderedSet) -> Vec<ESquare> {
    let n = b.n();
    let mut out = Vec::new();
    for e in 0..n {
        for f in (0..n).filter(|&f| b.r_rel(e, f)) {
            for h in (0..n).filter(|&h| b.l_rel(f, h)) {
                for g in (0..n).filter(|&g| b.r_rel(h, g) && b.l_rel(g, e)) {
                    let sq = [e, f, g, h];
                    let images: Vec<[usize; 4]> = square_symmetries(sq)
                        .into_iter()
                        .filter(|&s| is_e_square(b, s))
                        .collect();
                    if images.iter().min() != Some(&sq) {
                        continue;
                    }
                    let kind = if images.iter().any(|&s| is_row_singular(b, s)) {
                        SquareKind::RowSingular
                    } else if images.iter().any(|&s| is_column_singular(b, s)) {
                        SquareKind::ColumnSingular
                    } else {
                        SquareKind::Nonsingular
                    };
                    out.push(ESquare { entries: sq, kind });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, idempotent_biorder};

    fn rb22() -> BiorderedSet {
        idempotent_biorder(&fixtures::rect_band(2, 2).unwrap()).unwrap()
    }

    #[test]
    fn lz2_classes() {
        let e = idempotent_biorder(&fixtures::left_zero(2).unwrap()).unwrap();
        assert!(e.l_rel(0, 1));
        assert!(!e.r_rel(0, 1));
        assert_eq!(e.l_classes(), vec![0, 0]);
        assert_eq!(e.r_classes(), vec![0, 1]);
    }

    #[test]
    fn singleton_trivial() {
        let e = load_biorder("1", &[vec![Some(0)]], None).unwrap();
        assert!(e.leq(0, 0));
        assert!(is_regular(&e));
        assert_eq!(enumerate_e_squares(&e).len(), 1);
    }

    #[test]
    fn rb22_sandwich() {
        let e = rb22();
        // ids: (1,1)=0 (1,2)=1 (2,1)=2 (2,2)=3
        assert_eq!(sandwich_set(&e, 1, 2), vec![3]);
    }

    #[test]
    fn rb22_has_full_square() {
        let e = rb22();
        assert!(enumerate_e_squares(&e)
            .iter()
            .any(|s| s.entries == [0, 1, 2, 3]));
    }

    #[test]
    fn sl2_squares_degenerate() {
        let e = idempotent_biorder(&fixtures::semilattice_chain(2).unwrap()).unwrap();
        for s in enumerate_e_squares(&e) {
            let [a, b, c, d] = s.entries;
            assert!(a == b && b == c && c == d);
        }
        assert_eq!(sandwich_set(&e, 1, 1), vec![1]);
        assert_eq!(sandwich_set(&e, 0, 0), vec![0]);
        assert!(e.leq(0, 1) && !e.leq(1, 0));
    }

    #[test]
    fn corrupted_product_names_axiom() {
        let mut t = rb22().to_doc().product;
        t[0][1] = Some(2);
        let err = load_biorder("bad", &t, None).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { .. }));
        let mut t = rb22().to_doc().product;
        t[0][0] = None;
        assert_eq!(
            load_biorder("bad", &t, None).unwrap_err(),
            Error::AxiomViolation {
                axiom: "B1".into(),
                witness: vec![0]
            }
        );
    }

    #[test]
    fn malformed_rejected() {
        assert!(matches!(
            load_biorder("bad", &[vec![Some(0), Some(5)], vec![None, Some(1)]], None),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn bimorphism_examples() {
        let t2 = idempotent_biorder(&fixtures::full_transformation(2).unwrap()).unwrap();
        let id: Vec<usize> = (0..t2.n()).collect();
        assert!(check_bimorphism(&t2, &t2, &id, true).is_ok());
        for c in 0..t2.n() {
            assert!(check_bimorphism(&t2, &t2, &vec![c; t2.n()], true).is_ok());
        }
        let lz2 = idempotent_biorder(&fixtures::left_zero(2).unwrap()).unwrap();
        let one = load_biorder("1", &[vec![Some(0)]], None).unwrap();
        assert!(check_bimorphism(&lz2, &one, &[0, 0], true).is_ok());
    }

    #[test]
    fn sandwich_class_invariance() {
        for s in fixtures::standard_fixtures() {
            let e = idempotent_biorder(&s).unwrap();
            let n = e.n();
            for a in 0..n {
                for b in 0..n {
                    let base = sandwich_set(&e, a, b);
                    for a2 in (0..n).filter(|&x| e.l_rel(a, x)) {
                        for b2 in (0..n).filter(|&x| e.r_rel(b, x)) {
                            assert_eq!(sandwich_set(&e, a2, b2), base, "{}", s.name());
                        }
                    }
                }
            }
        }
    }

    /// In a regular semigroup `S(e,f) = V(ef) ∩ fSe`.
    #[test]
    fn sandwich_matches_semigroup_formula() {
        for s in fixtures::standard_fixtures() {
            let e = idempotent_biorder(&s).unwrap();
            let es = s.idempotents();
            for a in 0..e.n() {
                for b in 0..e.n() {
                    let ef = s.mul(es[a], es[b]);
                    let want: Vec<usize> = (0..e.n())
                        .filter(|&h| {
                            let x = es[h];
                            s.mul(s.mul(x, ef), x) == x
                                && s.mul(s.mul(ef, x), ef) == ef
                                && s.mul(es[b], s.mul(x, es[a])) == x
                        })
                        .collect();
                    assert_eq!(sandwich_set(&e, a, b), want, "{} ({a},{b})", s.name());
                }
            }
        }
    }

    #[test]
    fn opposite_swaps_orders() {
        let e = idempotent_biorder(&fixtures::full_transformation(3).unwrap()).unwrap();
        let op = e.opposite();
        assert!(op.axiom_report().is_ok());
        for a in 0..e.n() {
            for b in 0..e.n() {
                assert_eq!(e.leq_l(a, b), op.leq_r(a, b));
                assert_eq!(sandwich_set(&op, a, b), sandwich_set(&e, b, a));
            }
        }
    }

    #[test]
    fn singular_squares_are_squares() {
        for s in fixtures::standard_fixtures() {
            let e = idempotent_biorder(&s).unwrap();
            for sq in singular_squares(&e) {
                assert!(is_e_square(&e, sq), "{} {:?}", s.name(), sq);
            }
        }
    }
}
