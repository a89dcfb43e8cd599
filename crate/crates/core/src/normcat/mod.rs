//! Finite categories with subobjects, normal factorizations, cones and the
//! semigroup of cones.
//!
//! Composition is written left to right: `compose(f, g)` is "f then g" and
//! needs `cod(f) == dom(g)`.

mod cone;
mod functor;
mod hfunctor;
mod iso;

use serde::{Deserialize, Serialize};

use crate::report::Report;
use crate::{Error, Result};

pub use cone::{all_cones, check_cone, compose_cone, cone_semigroup, Cone, ConeSemigroup};
pub use functor::{check_functor, check_isomorphism, is_local_isomorphism, Functor};
pub use hfunctor::{check_h_functor, h_functor, natural_iso_count, HFunctor};
pub use iso::find_isomorphism;

/// Cap on the number of component tuples a cone search may visit.
pub const CONE_SEARCH_LIMIT: usize = 5_000_000;

/// A normal factorization `f = q·u·j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub q: usize,
    pub u: usize,
    pub j: usize,
    /// `q·u`, the epimorphic component `f°`.
    pub epi: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub dom: usize,
    pub cod: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// JSON form: `compose` lists `[f, g, f·g]` for every composable pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    pub identities: Vec<usize>,
    pub compose: Vec<[usize; 3]>,
    pub inclusions: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cones: Vec<Cone>,
}

/// A finite category with a designated subcategory of inclusions.
///
/// Every table is dense; `comp[f][k]` is `f` followed by the `k`-th morphism
/// out of `cod(f)`.
#[derive(Debug, Clone)]
pub struct NormalCategory {
    name: String,
    obj_labels: Vec<String>,
    labels: Vec<String>,
    dom: Vec<usize>,
    cod: Vec<usize>,
    identity: Vec<usize>,
    out: Vec<Vec<usize>>,
    hom: Vec<Vec<Vec<usize>>>,
    pos: Vec<usize>,
    comp: Vec<Vec<usize>>,
    incl: Vec<Vec<Option<usize>>>,
    is_incl: Vec<bool>,
    inverse: Vec<Option<usize>>,
    retraction: Vec<bool>,
    factors: Vec<Vec<Factorization>>,
}

impl NormalCategory {
    /// Builds the tables; `compose` is called once per composable pair.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        obj_labels: Vec<String>,
        dom: Vec<usize>,
        cod: Vec<usize>,
        labels: Vec<String>,
        identity: Vec<usize>,
        inclusions: &[usize],
        mut compose: impl FnMut(usize, usize) -> Result<usize>,
    ) -> Result<Self> {
        let n = obj_labels.len();
        let m = dom.len();
        if cod.len() != m || labels.len() != m || identity.len() != n {
            return Err(Error::MalformedTable(
                "category table lengths disagree".into(),
            ));
        }
        if dom.iter().chain(&cod).any(|&c| c >= n) || identity.iter().any(|&i| i >= m) {
            return Err(Error::MalformedTable(
                "object or morphism id out of range".into(),
            ));
        }
        for (c, &i) in identity.iter().enumerate() {
            if dom[i] != c || cod[i] != c {
                return Err(Error::MalformedTable(format!(
                    "identity {i} is not an endomorphism of {c}"
                )));
            }
        }
        let mut out = vec![Vec::new(); n];
        let mut hom = vec![vec![Vec::new(); n]; n];
        let mut pos = vec![0; m];
        for f in 0..m {
            pos[f] = out[dom[f]].len();
            out[dom[f]].push(f);
            hom[dom[f]][cod[f]].push(f);
        }
        let mut comp = Vec::with_capacity(m);
        for f in 0..m {
            let row = out[cod[f]]
                .iter()
                .map(|&g| {
                    let h = compose(f, g)?;
                    if h >= m || dom[h] != dom[f] || cod[h] != cod[g] {
                        return Err(Error::MalformedComposition(format!(
                            "{f}·{g} = {h} has the wrong ends"
                        )));
                    }
                    Ok(h)
                })
                .collect::<Result<Vec<_>>>()?;
            comp.push(row);
        }
        let mut incl = vec![vec![None; n]; n];
        let mut is_incl = vec![false; m];
        for &j in inclusions {
            if j >= m {
                return Err(Error::MalformedTable(format!("inclusion {j} out of range")));
            }
            if let Some(k) = incl[dom[j]][cod[j]] {
                if k != j {
                    return Err(Error::MalformedTable(format!(
                        "inclusions {k} and {j} share their ends"
                    )));
                }
            }
            incl[dom[j]][cod[j]] = Some(j);
            is_incl[j] = true;
        }
        let mut cat = NormalCategory {
            name: name.to_string(),
            obj_labels,
            labels,
            dom,
            cod,
            identity,
            out,
            hom,
            pos,
            comp,
            incl,
            is_incl,
            inverse: vec![None; m],
            retraction: vec![false; m],
            factors: vec![Vec::new(); m],
        };
        cat.derive();
        Ok(cat)
    }

    fn derive(&mut self) {
        let m = self.morphism_count();
        for f in 0..m {
            let (a, b) = (self.dom[f], self.cod[f]);
            self.inverse[f] = self.hom[b][a].iter().copied().find(|&g| {
                self.compose(f, g) == self.identity[a] && self.compose(g, f) == self.identity[b]
            });
            self.retraction[f] =
                self.incl[b][a].is_some_and(|j| self.compose(j, f) == self.identity[b]);
        }
        for f in 0..m {
            let mut found = Vec::new();
            for &q in &self.out[self.dom[f]] {
                if !self.retraction[q] {
                    continue;
                }
                for &u in &self.out[self.cod[q]] {
                    if self.inverse[u].is_none() {
                        continue;
                    }
                    let Some(j) = self.incl[self.cod[u]][self.cod[f]] else {
                        continue;
                    };
                    let epi = self.compose(q, u);
                    if self.compose(epi, j) == f {
                        found.push(Factorization { q, u, j, epi });
                    }
                }
            }
            self.factors[f] = found;
        }
    }

    pub fn from_doc(doc: &CategoryDoc) -> Result<Self> {
        let m = doc.morphisms.len();
        let mut table = std::collections::HashMap::new();
        for &[f, g, h] in &doc.compose {
            if table.insert((f, g), h).is_some_and(|old| old != h) {
                return Err(Error::MalformedComposition(format!("{f}·{g} listed twice")));
            }
        }
        Self::new(
            doc.name.as_deref().unwrap_or("C"),
            doc.objects.clone(),
            doc.morphisms.iter().map(|x| x.dom).collect(),
            doc.morphisms.iter().map(|x| x.cod).collect(),
            (0..m)
                .map(|f| {
                    doc.morphisms[f]
                        .label
                        .clone()
                        .unwrap_or_else(|| f.to_string())
                })
                .collect(),
            doc.identities.clone(),
            &doc.inclusions,
            |f, g| {
                table.get(&(f, g)).copied().ok_or_else(|| {
                    Error::MalformedComposition(format!("composite {f}·{g} missing"))
                })
            },
        )
    }

    pub fn to_doc(&self) -> CategoryDoc {
        let m = self.morphism_count();
        let mut compose = Vec::new();
        for f in 0..m {
            for &g in &self.out[self.cod[f]] {
                compose.push([f, g, self.compose(f, g)]);
            }
        }
        CategoryDoc {
            name: Some(self.name.clone()),
            objects: self.obj_labels.clone(),
            morphisms: (0..m)
                .map(|f| MorphismDoc {
                    dom: self.dom[f],
                    cod: self.cod[f],
                    label: Some(self.labels[f].clone()),
                })
                .collect(),
            identities: self.identity.clone(),
            compose,
            inclusions: (0..m).filter(|&f| self.is_incl[f]).collect(),
            cones: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object_count(&self) -> usize {
        self.obj_labels.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.dom.len()
    }

    pub fn object_label(&self, c: usize) -> &str {
        &self.obj_labels[c]
    }

    pub fn label(&self, f: usize) -> &str {
        &self.labels[f]
    }

    pub fn dom(&self, f: usize) -> usize {
        self.dom[f]
    }

    pub fn cod(&self, f: usize) -> usize {
        self.cod[f]
    }

    pub fn identity(&self, c: usize) -> usize {
        self.identity[c]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.dom[f]] == f
    }

    /// Morphisms out of `c`, ascending.
    pub fn out_of(&self, c: usize) -> &[usize] {
        &self.out[c]
    }

    /// `𝒞(a, b)`, ascending.
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a][b]
    }

    /// `f·g`; panics unless `cod(f) == dom(g)`.
    pub fn compose(&self, f: usize, g: usize) -> usize {
        assert_eq!(self.cod[f], self.dom[g], "composing {f} with {g}");
        self.comp[f][self.pos[g]]
    }

    pub fn try_compose(&self, f: usize, g: usize) -> Option<usize> {
        (self.cod[f] == self.dom[g]).then(|| self.comp[f][self.pos[g]])
    }

    /// Composite of a nonempty path.
    pub fn compose_path(&self, path: &[usize]) -> usize {
        let (&first, rest) = path.split_first().expect("nonempty path");
        rest.iter().fold(first, |acc, &g| self.compose(acc, g))
    }

    /// `j(c, c′)`.
    pub fn inclusion(&self, c: usize, c2: usize) -> Option<usize> {
        self.incl[c][c2]
    }

    /// `c ⊆ c′`.
    pub fn subobject(&self, c: usize, c2: usize) -> bool {
        self.incl[c][c2].is_some()
    }

    pub fn is_inclusion(&self, f: usize) -> bool {
        self.is_incl[f]
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.inverse[f]
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse[f].is_some()
    }

    /// `q: c → c′` with `c′ ⊆ c` and `j(c′,c)·q = 1`.
    pub fn is_retraction(&self, f: usize) -> bool {
        self.retraction[f]
    }

    /// Retractions splitting `j(c′, c)`, ascending; the first is the stored witness.
    pub fn retractions(&self, c: usize, c2: usize) -> Vec<usize> {
        self.hom[c][c2]
            .iter()
            .copied()
            .filter(|&q| self.retraction[q])
            .collect()
    }

    /// Every normal factorization of `f`, ordered by `(q, u)`.
    pub fn factorizations(&self, f: usize) -> &[Factorization] {
        &self.factors[f]
    }

    pub fn normal_factorize(&self, f: usize) -> Result<Factorization> {
        self.factors[f]
            .first()
            .copied()
            .ok_or(Error::NoFactorization(f))
    }

    /// `f°`.
    pub fn epi(&self, f: usize) -> Result<usize> {
        Ok(self.normal_factorize(f)?.epi)
    }

    /// `im f`, the codomain of `f°`.
    pub fn image(&self, f: usize) -> Result<usize> {
        Ok(self.cod[self.epi(f)?])
    }

    /// Objects `d ⊆ c`, ascending.
    pub fn ideal(&self, c: usize) -> Vec<usize> {
        (0..self.object_count())
            .filter(|&d| self.subobject(d, c))
            .collect()
    }

    /// Objects with no proper superobject.
    pub fn maximal_objects(&self) -> Vec<usize> {
        let n = self.object_count();
        (0..n)
            .filter(|&c| (0..n).all(|d| d == c || !self.subobject(c, d)))
            .collect()
    }
}

/// Category axioms, the subobject axioms, NC1 with uniqueness of `f°`, NC2 and
/// NC3. Idempotent cones for NC3 come from `cones` when given, else from an
/// exhaustive search.
pub fn check_normal_category(c: &NormalCategory, cones: Option<&[Cone]>) -> Result<Report> {
    let mut rep = check_subobject_category(c);
    let m = c.morphism_count();
    for f in 0..m {
        let fs = c.factorizations(f);
        rep.check(!fs.is_empty(), "NC1", &[f]);
        rep.check(
            fs.iter().all(|x| x.epi == fs[0].epi),
            "NC1.unique-epi",
            &[f],
        );
    }
    for a in 0..c.object_count() {
        for b in 0..c.object_count() {
            if a != b && c.subobject(a, b) {
                rep.check(!c.retractions(b, a).is_empty(), "NC2", &[a, b]);
            }
        }
    }
    if rep.has("NC1") {
        return Ok(rep);
    }
    let found;
    let cones = match cones {
        Some(k) => k,
        None => {
            found = all_cones(c, CONE_SEARCH_LIMIT)?;
            &found
        }
    };
    for x in 0..c.object_count() {
        let ok = cones
            .iter()
            .any(|g| g.apex == x && g.is_idempotent(c) && check_cone(c, g).is_ok());
        rep.check(ok, "NC3", &[x]);
    }
    Ok(rep)
}

/// Category laws and the axioms of a category with subobjects.
pub fn check_subobject_category(c: &NormalCategory) -> Report {
    let mut rep = Report::new();
    let (n, m) = (c.object_count(), c.morphism_count());
    for f in 0..m {
        rep.check(c.compose(c.identity(c.dom(f)), f) == f, "identity", &[f]);
        rep.check(c.compose(f, c.identity(c.cod(f))) == f, "identity", &[f]);
        for &g in c.out_of(c.cod(f)) {
            let fg = c.compose(f, g);
            for &h in c.out_of(c.cod(g)) {
                if c.compose(fg, h) != c.compose(f, c.compose(g, h)) {
                    rep.push("associativity", &[f, g, h]);
                }
            }
        }
    }
    for x in 0..n {
        rep.check(
            c.inclusion(x, x) == Some(c.identity(x)),
            "inclusion-identity",
            &[x],
        );
    }
    for a in 0..n {
        for b in 0..n {
            let Some(jab) = c.inclusion(a, b) else {
                continue;
            };
            if a != b {
                rep.check(!c.subobject(b, a), "inclusion-antisymmetric", &[a, b]);
            }
            for d in 0..n {
                if let Some(jbd) = c.inclusion(b, d) {
                    rep.check(
                        c.inclusion(a, d) == Some(c.compose(jab, jbd)),
                        "inclusion-transitive",
                        &[a, b, d],
                    );
                }
            }
            for z in 0..n {
                let h = c.hom(z, a);
                for (i, &x) in h.iter().enumerate() {
                    for &y in &h[i + 1..] {
                        if c.compose(x, jab) == c.compose(y, jab) {
                            rep.push("inclusion-mono", &[jab, x, y]);
                        }
                    }
                }
            }
        }
    }
    // f = h·g with f, g inclusions forces h to be one.
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                let (Some(f), Some(g)) = (c.inclusion(a, d), c.inclusion(b, d)) else {
                    continue;
                };
                for &h in c.hom(a, b) {
                    if c.compose(h, g) == f {
                        rep.check(c.is_inclusion(h), "inclusion-factor", &[f, g, h]);
                    }
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Objects `0 ⊆ 1` with a single morphism each way besides identities;
    /// the only map `1 → 0` is not a retraction when `split` is false.
    pub(crate) fn two_chain(split: bool) -> NormalCategory {
        // 0: 1_0, 1: 1_1, 2: j: 0→1, 3: q: 1→0, 4: j·q (endo of 0) when not split.
        if split {
            let table = |f: usize, g: usize| -> usize {
                match (f, g) {
                    (0, x) | (x, 1) => x,
                    (x, 0) | (1, x) => x,
                    (2, 3) => 0,
                    (3, 2) => 4,
                    (4, 4) => 4,
                    (4, 3) => 3,
                    (2, 4) => 2,
                    _ => unreachable!("{f} {g}"),
                }
            };
            NormalCategory::new(
                "chain",
                vec!["a".into(), "b".into()],
                vec![0, 1, 0, 1, 1],
                vec![0, 1, 1, 0, 1],
                (0..5).map(|i| i.to_string()).collect(),
                vec![0, 1],
                &[0, 1, 2],
                |f, g| Ok(table(f, g)),
            )
            .unwrap()
        } else {
            NormalCategory::new(
                "chain",
                vec!["a".into(), "b".into()],
                vec![0, 1, 0],
                vec![0, 1, 1],
                (0..3).map(|i| i.to_string()).collect(),
                vec![0, 1],
                &[0, 1, 2],
                |f, g| Ok(if f == 0 || f == 1 { g } else { f }),
            )
            .unwrap()
        }
    }

    #[test]
    fn one_object_category_is_normal() {
        let c = NormalCategory::new(
            "1",
            vec!["*".into()],
            vec![0],
            vec![0],
            vec!["1".into()],
            vec![0],
            &[0],
            |_, _| Ok(0),
        )
        .unwrap();
        let rep = check_normal_category(&c, None).unwrap();
        assert!(rep.is_ok(), "{rep}");
        assert_eq!(all_cones(&c, CONE_SEARCH_LIMIT).unwrap().len(), 1);
    }

    #[test]
    fn non_split_inclusion_is_reported() {
        let c = two_chain(false);
        let rep = check_normal_category(&c, None).unwrap();
        assert_eq!(rep.get("NC2").unwrap().witness, vec![0, 1]);
    }

    #[test]
    fn split_chain_is_normal() {
        let c = two_chain(true);
        let rep = check_normal_category(&c, None).unwrap();
        assert!(rep.is_ok(), "{rep}");
        assert!(c.is_retraction(3));
        assert_eq!(c.epi(2).unwrap(), 0);
        assert_eq!(c.epi(4).unwrap(), 3);
        assert_eq!(c.image(3).unwrap(), 0);
    }

    #[test]
    fn doc_round_trip() {
        let c = two_chain(true);
        let d = NormalCategory::from_doc(&c.to_doc()).unwrap();
        assert_eq!(d.to_doc(), c.to_doc());
    }
}
