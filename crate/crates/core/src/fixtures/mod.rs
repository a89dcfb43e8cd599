//! Finite semigroups given by Cayley tables, and the structures derived from them.

mod homs;
mod principal;
mod trace;

use serde::{Deserialize, Serialize};

use crate::biorder::{load_biorder, BiorderedSet};
use crate::{Error, Result};

pub use homs::{automorphisms, embeddings, Homomorphism};

pub use principal::{principal_categories, principal_lcat, principal_rcat, PrincipalCategory};
pub use trace::{trace_functor, trace_groupoid, TraceMorphism};

/// A finite semigroup with its Green's relations precomputed.
#[derive(Debug, Clone)]
pub struct FiniteSemigroup {
    name: String,
    n: usize,
    table: Vec<usize>,
    labels: Vec<String>,
    idempotents: Vec<usize>,
    regular: bool,
    r_ideal: Vec<Vec<bool>>,
    l_ideal: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyDoc {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

pub fn load_cayley(doc: &CayleyDoc) -> Result<FiniteSemigroup> {
    let n = doc.n;
    if doc.table.len() != n || doc.table.iter().any(|row| row.len() != n) {
        return Err(Error::MalformedTable(format!("expected a {n}x{n} table")));
    }
    if let Some((a, b)) = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| doc.table[a][b] >= n)
    {
        return Err(Error::MalformedTable(format!(
            "entry ({a},{b}) out of range"
        )));
    }
    let labels = match &doc.labels {
        Some(l) if l.len() == n => l.clone(),
        Some(_) => return Err(Error::MalformedTable("label count differs from n".into())),
        None => (0..n).map(|i| i.to_string()).collect(),
    };
    let table: Vec<usize> = doc.table.iter().flatten().copied().collect();
    FiniteSemigroup::new(
        doc.name.clone().unwrap_or_else(|| "S".into()),
        n,
        table,
        labels,
    )
}

impl FiniteSemigroup {
    pub fn new(name: String, n: usize, table: Vec<usize>, labels: Vec<String>) -> Result<Self> {
        assert_eq!(table.len(), n * n);
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::NotAssociative([a, b, c]));
                    }
                }
            }
        }
        let mul = |a: usize, b: usize| table[a * n + b];
        let idempotents = (0..n).filter(|&e| mul(e, e) == e).collect();
        let regular = (0..n).all(|a| (0..n).any(|b| mul(mul(a, b), a) == a));
        let r_ideal = (0..n)
            .map(|a| {
                let mut s = vec![false; n];
                s[a] = true;
                for x in 0..n {
                    s[mul(a, x)] = true;
                }
                s
            })
            .collect();
        let l_ideal = (0..n)
            .map(|a| {
                let mut s = vec![false; n];
                s[a] = true;
                for x in 0..n {
                    s[mul(x, a)] = true;
                }
                s
            })
            .collect();
        Ok(Self {
            name,
            n,
            table,
            labels,
            idempotents,
            regular,
            r_ideal,
            l_ideal,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    pub fn require_regular(&self) -> Result<()> {
        match (0..self.n).find(|&a| !(0..self.n).any(|b| self.mul(self.mul(a, b), a) == a)) {
            Some(a) => Err(Error::NotRegular(a)),
            None => Ok(()),
        }
    }

    /// `a` lies in the principal right ideal `bS¹`.
    pub fn r_leq(&self, a: usize, b: usize) -> bool {
        self.r_ideal[b][a]
    }

    /// `a` lies in the principal left ideal `S¹b`.
    pub fn l_leq(&self, a: usize, b: usize) -> bool {
        self.l_ideal[b][a]
    }

    pub fn r_related(&self, a: usize, b: usize) -> bool {
        self.r_leq(a, b) && self.r_leq(b, a)
    }

    pub fn l_related(&self, a: usize, b: usize) -> bool {
        self.l_leq(a, b) && self.l_leq(b, a)
    }

    /// The semigroup with reversed multiplication.
    pub fn opposite(&self) -> FiniteSemigroup {
        let n = self.n;
        let table = (0..n * n).map(|i| self.mul(i % n, i / n)).collect();
        FiniteSemigroup::new(format!("{}^op", self.name), n, table, self.labels.clone())
            .expect("opposite of an associative table is associative")
    }

    pub fn to_doc(&self) -> CayleyDoc {
        CayleyDoc {
            n: self.n,
            table: (0..self.n)
                .map(|a| (0..self.n).map(|b| self.mul(a, b)).collect())
                .collect(),
            labels: Some(self.labels.clone()),
            name: Some(self.name.clone()),
        }
    }
}

/// `E(S)`: ids are positions in `S.idempotents()`; `(e,f) ∈ D_E` iff `ef` or `fe` lies in `{e,f}`.
pub fn idempotent_biorder(s: &FiniteSemigroup) -> Result<BiorderedSet> {
    let es = s.idempotents();
    let table: Vec<Vec<Option<usize>>> = es
        .iter()
        .map(|&e| {
            es.iter()
                .map(|&f| {
                    let ef = s.mul(e, f);
                    let fe = s.mul(f, e);
                    let basic = ef == e || ef == f || fe == e || fe == f;
                    basic.then(|| es.iter().position(|&x| x == ef).expect("ef idempotent"))
                })
                .collect()
        })
        .collect();
    let labels = es.iter().map(|&e| s.label(e).to_string()).collect();
    load_biorder(&format!("E({})", s.name()), &table, Some(labels))
}

pub const BUILTIN_NAMES: &[&str] = &[
    "left_zero",
    "right_zero",
    "rect_band",
    "semilattice_chain",
    "brandt2",
    "full_transformation",
    "symmetric_inverse",
];

pub fn builtin(name: &str, params: &[usize]) -> Result<FiniteSemigroup> {
    let want = |k: usize| -> Result<()> {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::UnknownFixture(format!(
                "{name} takes {k} parameter(s)"
            )))
        }
    };
    match name {
        "left_zero" => {
            want(1)?;
            left_zero(params[0])
        }
        "right_zero" => {
            want(1)?;
            right_zero(params[0])
        }
        "rect_band" => {
            want(2)?;
            rect_band(params[0], params[1])
        }
        "semilattice_chain" => {
            want(1)?;
            semilattice_chain(params[0])
        }
        "brandt2" => {
            want(0)?;
            Ok(brandt2())
        }
        "full_transformation" => {
            want(1)?;
            full_transformation(params[0])
        }
        "symmetric_inverse" => {
            want(1)?;
            symmetric_inverse(params[0])
        }
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

fn positive(what: &str, k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::SizeBound(format!("{what} needs a positive size")))
    } else {
        Ok(())
    }
}

fn from_fn(
    name: String,
    n: usize,
    labels: Vec<String>,
    f: impl Fn(usize, usize) -> usize,
) -> FiniteSemigroup {
    let table = (0..n * n).map(|i| f(i / n, i % n)).collect();
    FiniteSemigroup::new(name, n, table, labels).expect("builtin tables are associative")
}

fn numbered(prefix: &str, k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("{prefix}{i}")).collect()
}

/// `xy = x`.
pub fn left_zero(k: usize) -> Result<FiniteSemigroup> {
    positive("left_zero", k)?;
    Ok(from_fn(format!("LZ{k}"), k, numbered("x", k), |a, _| a))
}

/// `xy = y`.
pub fn right_zero(k: usize) -> Result<FiniteSemigroup> {
    positive("right_zero", k)?;
    Ok(from_fn(format!("RZ{k}"), k, numbered("x", k), |_, b| b))
}

/// `(i,j)(k,l) = (i,l)`, element `(i,j)` has id `i*k + j`.
pub fn rect_band(m: usize, k: usize) -> Result<FiniteSemigroup> {
    positive("rect_band", m * k)?;
    let labels = (0..m * k)
        .map(|x| format!("({},{})", x / k + 1, x % k + 1))
        .collect();
    Ok(from_fn(format!("RB{m}{k}"), m * k, labels, |a, b| {
        (a / k) * k + b % k
    }))
}

/// The chain `0 < 1 < … < k-1` under `min`.
pub fn semilattice_chain(k: usize) -> Result<FiniteSemigroup> {
    positive("semilattice_chain", k)?;
    let labels = (0..k).map(|i| i.to_string()).collect();
    Ok(from_fn(format!("SL{k}"), k, labels, |a, b| a.min(b)))
}

/// Matrix units `E11, E12, E21, E22` and zero, ids `0..5` in that order.
pub fn brandt2() -> FiniteSemigroup {
    let labels = ["E11", "E12", "E21", "E22", "0"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    from_fn("B2".into(), 5, labels, |a, b| {
        if a == 4 || b == 4 {
            return 4;
        }
        let (i, j) = (a / 2, a % 2);
        let (k, l) = (b / 2, b % 2);
        if j == k {
            i * 2 + l
        } else {
            4
        }
    })
}

/// All maps `[k] → [k]` acting on the right: `x(fg) = (xf)g`. Ids follow the
/// lexicographic order of image tuples; labels list images 1-based.
pub fn full_transformation(k: usize) -> Result<FiniteSemigroup> {
    positive("full_transformation", k)?;
    if k > 3 {
        return Err(Error::SizeBound(format!(
            "full_transformation({k}) exceeds k = 3"
        )));
    }
    let n = k.pow(k as u32);
    let decode = |id: usize| -> Vec<usize> {
        let mut v = vec![0; k];
        let mut r = id;
        for i in (0..k).rev() {
            v[i] = r % k;
            r /= k;
        }
        v
    };
    let encode = |v: &[usize]| v.iter().fold(0, |acc, &x| acc * k + x);
    let maps: Vec<Vec<usize>> = (0..n).map(decode).collect();
    let labels = maps
        .iter()
        .map(|m| m.iter().map(|x| (x + 1).to_string()).collect::<String>())
        .collect();
    Ok(from_fn(format!("T{k}"), n, labels, |a, b| {
        let v: Vec<usize> = maps[a].iter().map(|&x| maps[b][x]).collect();
        encode(&v)
    }))
}

/// Partial injections of `[k]` acting on the right. Labels list images 1-based,
/// `-` for undefined.
pub fn symmetric_inverse(k: usize) -> Result<FiniteSemigroup> {
    positive("symmetric_inverse", k)?;
    if k > 2 {
        return Err(Error::SizeBound(format!(
            "symmetric_inverse({k}) exceeds k = 2"
        )));
    }
    let total = (k + 1).pow(k as u32);
    let mut maps: Vec<Vec<Option<usize>>> = Vec::new();
    for id in 0..total {
        let mut v = vec![None; k];
        let mut r = id;
        for i in (0..k).rev() {
            let x = r % (k + 1);
            v[i] = (x > 0).then(|| x - 1);
            r /= k + 1;
        }
        let mut seen = vec![false; k];
        if v.iter()
            .flatten()
            .all(|&x| !std::mem::replace(&mut seen[x], true))
        {
            maps.push(v);
        }
    }
    let n = maps.len();
    let labels = maps
        .iter()
        .map(|m| {
            m.iter()
                .map(|x| x.map_or("-".to_string(), |x| (x + 1).to_string()))
                .collect::<String>()
        })
        .collect();
    let find = |v: &[Option<usize>]| maps.iter().position(|m| m == v).expect("closed");
    Ok(from_fn(format!("I{k}"), n, labels, |a, b| {
        let v: Vec<Option<usize>> = maps[a].iter().map(|x| x.and_then(|x| maps[b][x])).collect();
        find(&v)
    }))
}

/// The fixtures exercised by the acceptance suite, in a fixed order.
pub fn standard_fixtures() -> Vec<FiniteSemigroup> {
    vec![
        left_zero(2).unwrap(),
        right_zero(2).unwrap(),
        rect_band(2, 2).unwrap(),
        semilattice_chain(2).unwrap(),
        brandt2(),
        full_transformation(2).unwrap(),
        full_transformation(3).unwrap(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lz2_flags() {
        let s = load_cayley(&CayleyDoc {
            n: 2,
            table: vec![vec![0, 0], vec![1, 1]],
            labels: None,
            name: None,
        })
        .unwrap();
        assert!(s.is_regular());
        assert_eq!(s.idempotents(), &[0, 1]);
    }

    #[test]
    fn non_associative_rejected() {
        let doc = CayleyDoc {
            n: 2,
            table: vec![vec![1, 0], vec![0, 0]],
            labels: None,
            name: None,
        };
        assert!(matches!(load_cayley(&doc), Err(Error::NotAssociative(_))));
    }

    #[test]
    fn sizes() {
        assert_eq!(full_transformation(2).unwrap().n(), 4);
        assert_eq!(full_transformation(2).unwrap().idempotents().len(), 3);
        assert_eq!(full_transformation(3).unwrap().n(), 27);
        assert_eq!(full_transformation(3).unwrap().idempotents().len(), 10);
        assert_eq!(symmetric_inverse(2).unwrap().n(), 7);
        assert_eq!(semilattice_chain(1).unwrap().n(), 1);
        assert_eq!(rect_band(2, 2).unwrap().n(), 4);
        assert!(matches!(full_transformation(4), Err(Error::SizeBound(_))));
        assert!(matches!(
            builtin("free_monoid", &[]),
            Err(Error::UnknownFixture(_))
        ));
    }

    #[test]
    fn rect_band_rule() {
        let s = rect_band(2, 2).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(s.mul(a, b), (a / 2) * 2 + b % 2);
            }
        }
        assert_eq!(s.idempotents().len(), 4);
    }

    #[test]
    fn brandt_idempotents() {
        let s = brandt2();
        let labels: Vec<&str> = s.idempotents().iter().map(|&e| s.label(e)).collect();
        assert_eq!(labels, ["E11", "E22", "0"]);
    }

    #[test]
    fn every_builtin_is_regular() {
        for s in standard_fixtures()
            .iter()
            .chain([symmetric_inverse(2).unwrap()].iter())
        {
            assert!(s.is_regular(), "{}", s.name());
            let e = idempotent_biorder(s).unwrap();
            assert!(crate::biorder::is_regular(&e), "{}", s.name());
        }
    }

    #[test]
    fn green_relations_lz2() {
        let s = left_zero(2).unwrap();
        assert!(s.l_related(0, 1));
        assert!(!s.r_related(0, 1));
    }
}
