//! JSON documents for every structure the engine reads or writes, and
//! validation of whichever one a document holds.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::biorder::{first_empty_sandwich, BiorderDoc, BiorderedSet};
use crate::crossconn::{validate_crossconnection, CrossConnection, CrossConnectionDoc};
use crate::echain::{chain_groupoid_or_section, default_cap, DEFAULT_SECTION_LEN};
use crate::fixtures::{load_cayley, CayleyDoc, FiniteSemigroup};
use crate::functor_ci::{CrossOfG, LCat};
use crate::functor_ic::CrossGroupoid;
use crate::inductive::{
    check_inductive, check_ordered_groupoid, Groupoid, InductiveGroupoid, OrderedGroupoid,
};
use crate::normcat::{check_normal_category, CategoryDoc, NormalCategory};
use crate::relation::Relation;
use crate::report::Report;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidMorphismDoc {
    pub dom: usize,
    pub cod: usize,
    pub inv: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Where a built structure came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub construction: String,
    pub source: String,
}

/// Objects are the elements of `biorder`. `compose` lists `[x, y, xy]`,
/// `order` the strict pairs `[u, x]` with `u < x`, `eval` `[e, f, ε(e,f)]`
/// for each 𝓡- or 𝓛-related pair `e ≠ f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductiveGroupoidDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub biorder: BiorderDoc,
    pub objects: Vec<String>,
    pub morphisms: Vec<GroupoidMorphismDoc>,
    pub identities: Vec<usize>,
    pub compose: Vec<[usize; 3]>,
    pub order: Vec<[usize; 2]>,
    pub eval: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

pub fn inductive_to_doc(
    ig: &InductiveGroupoid,
    provenance: Option<Provenance>,
) -> InductiveGroupoidDoc {
    let g = &ig.g;
    let m = g.morphism_count();
    let mut compose: Vec<[usize; 3]> = g
        .compose_table()
        .iter()
        .map(|(&(x, y), &z)| [x, y, z])
        .collect();
    compose.sort_unstable();
    let mut eval: Vec<[usize; 3]> = ig.eval.iter().map(|(&(e, f), &x)| [e, f, x]).collect();
    eval.sort_unstable();
    InductiveGroupoidDoc {
        name: Some(ig.e.name().to_string()),
        biorder: ig.e.to_doc(),
        objects: ig.e.labels().to_vec(),
        morphisms: (0..m)
            .map(|x| GroupoidMorphismDoc {
                dom: g.dom(x),
                cod: g.cod(x),
                inv: g.inverse(x),
                label: Some(g.label(x).to_string()),
            })
            .collect(),
        identities: (0..g.object_count()).map(|e| g.identity(e)).collect(),
        compose,
        order: (0..m)
            .flat_map(|x| {
                g.down(x)
                    .iter()
                    .filter(move |&&u| u != x)
                    .map(move |&u| [u, x])
            })
            .collect(),
        eval,
        provenance,
    }
}

/// Checks shape only; the axioms are left to `check_inductive`. The biorder
/// is not axiom-checked here either.
pub fn inductive_from_doc(doc: &InductiveGroupoidDoc) -> Result<InductiveGroupoid> {
    let name = doc.name.clone().unwrap_or_else(|| "G".to_string());
    if doc.biorder.product.len() != doc.biorder.n {
        return Err(Error::MalformedTable(format!(
            "biorder: expected {} rows",
            doc.biorder.n
        )));
    }
    let e = BiorderedSet::unchecked(&name, &doc.biorder.product, doc.biorder.labels.clone())?;
    let (n, m) = (doc.objects.len(), doc.morphisms.len());
    let bad = |what: String| Err(Error::MalformedTable(what));
    if n != e.n() {
        return bad(format!("{n} objects for a biorder of size {}", e.n()));
    }
    if doc.identities.len() != n {
        return bad(format!(
            "{} identities for {n} objects",
            doc.identities.len()
        ));
    }
    for (x, d) in doc.morphisms.iter().enumerate() {
        if d.dom >= n || d.cod >= n || d.inv >= m {
            return bad(format!("morphism {x} is out of range"));
        }
        let inv = &doc.morphisms[d.inv];
        if inv.dom != d.cod || inv.cod != d.dom {
            return bad(format!("inverse of morphism {x} has the wrong ends"));
        }
    }
    for (o, &i) in doc.identities.iter().enumerate() {
        if i >= m || doc.morphisms[i].dom != o || doc.morphisms[i].cod != o {
            return bad(format!("identity of object {o} is not a loop at it"));
        }
    }
    let mut compose = HashMap::new();
    for &[x, y, z] in &doc.compose {
        if x >= m || y >= m || z >= m {
            return bad(format!("composition [{x}, {y}, {z}] is out of range"));
        }
        let (dx, dy, dz) = (&doc.morphisms[x], &doc.morphisms[y], &doc.morphisms[z]);
        if dx.cod != dy.dom || dz.dom != dx.dom || dz.cod != dy.cod {
            return Err(Error::MalformedComposition(format!(
                "{x}·{y} = {z} has the wrong ends"
            )));
        }
        if compose.insert((x, y), z).is_some_and(|w| w != z) {
            return Err(Error::MalformedComposition(format!(
                "{x}·{y} is given twice"
            )));
        }
    }
    for x in 0..m {
        for y in 0..m {
            if doc.morphisms[x].cod == doc.morphisms[y].dom && !compose.contains_key(&(x, y)) {
                return Err(Error::MalformedComposition(format!("{x}·{y} is missing")));
            }
        }
    }
    let mut leq = Relation::from_fn(m, |a, b| a == b);
    for &[u, x] in &doc.order {
        if u >= m || x >= m {
            return bad(format!("order pair [{u}, {x}] is out of range"));
        }
        leq.set(u, x, true);
    }
    let mut eval = HashMap::new();
    for &[a, b, x] in &doc.eval {
        if a >= n || b >= n || x >= m {
            return bad(format!("eval [{a}, {b}, {x}] is out of range"));
        }
        eval.insert((a, b), x);
    }
    let labels = doc
        .morphisms
        .iter()
        .enumerate()
        .map(|(x, d)| d.label.clone().unwrap_or_else(|| x.to_string()))
        .collect();
    let g = OrderedGroupoid::from_parts(
        n,
        doc.morphisms.iter().map(|d| d.dom).collect(),
        doc.morphisms.iter().map(|d| d.cod).collect(),
        doc.identities.clone(),
        doc.morphisms.iter().map(|d| d.inv).collect(),
        compose,
        leq,
        labels,
        true,
    );
    Ok(InductiveGroupoid::new(g, e, eval))
}

/// `[e, α, f]` for each morphism of `L_G`, indexed by morphism id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForms {
    pub objects: Vec<usize>,
    pub morphisms: Vec<[usize; 3]>,
}

impl CanonicalForms {
    pub fn of(lc: &LCat) -> Self {
        Self {
            objects: (0..lc.cat.object_count()).map(|o| lc.rep(o)).collect(),
            morphisms: lc.triples().to_vec(),
        }
    }
}

/// `ℂ(G)` as written by `build cc`: a cross-connection document plus the
/// canonical triples behind each morphism of both categories.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossOutputDoc {
    #[serde(flatten)]
    pub cross: CrossConnectionDoc,
    pub canonical_c: CanonicalForms,
    pub canonical_d: CanonicalForms,
    /// `E_Γ` as `(c, d)` pairs.
    pub pairs: Vec<(usize, usize)>,
    pub provenance: Provenance,
}

pub fn cross_output(cc: &CrossOfG, pairs: Vec<(usize, usize)>, source: &str) -> CrossOutputDoc {
    CrossOutputDoc {
        cross: cc.cross.to_doc(),
        canonical_c: CanonicalForms::of(&cc.lg),
        canonical_d: CanonicalForms::of(&cc.rg),
        pairs,
        provenance: Provenance {
            construction: "C".to_string(),
            source: source.to_string(),
        },
    }
}

/// `𝕀(x)` as written by `build ig`: the groupoid with its `E_Γ` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidOutputDoc {
    #[serde(flatten)]
    pub groupoid: InductiveGroupoidDoc,
    pub pairs: Vec<(usize, usize)>,
    /// `(f, g)` component ids per morphism.
    pub components: Vec<(usize, usize)>,
}

pub fn groupoid_output(x: &CrossGroupoid, source: &str) -> GroupoidOutputDoc {
    let provenance = Provenance {
        construction: "I".to_string(),
        source: source.to_string(),
    };
    GroupoidOutputDoc {
        groupoid: inductive_to_doc(&x.ig, Some(provenance)),
        pairs: x.pairs.clone(),
        components: x.morphisms.iter().map(|m| (m.f, m.g)).collect(),
    }
}

/// Any structure a document can hold.
#[derive(Debug, Clone)]
pub enum Structure {
    Semigroup(CayleyDoc),
    Biorder(BiorderDoc),
    Category(CategoryDoc),
    Groupoid(Box<InductiveGroupoidDoc>),
    Cross(Box<CrossConnectionDoc>),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Semigroup(_) => "semigroup",
            Structure::Biorder(_) => "biorder",
            Structure::Category(_) => "category",
            Structure::Groupoid(_) => "inductive_groupoid",
            Structure::Cross(_) => "cross_connection",
        }
    }
}

/// Reads a document, recognizing its kind by an explicit `"kind"` field or
/// else by its distinguishing key.
pub fn parse_structure(text: &str) -> Result<Structure> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Json("expected a JSON object".to_string()))?;
    let kind = match obj.get("kind").and_then(Value::as_str) {
        Some(k) => k.to_string(),
        None => ["gamma", "eval", "table", "product", "inclusions"]
            .iter()
            .find(|k| obj.contains_key(**k))
            .map(|k| {
                match *k {
                    "gamma" => "cross_connection",
                    "eval" => "inductive_groupoid",
                    "table" => "semigroup",
                    "product" => "biorder",
                    _ => "category",
                }
                .to_string()
            })
            .ok_or_else(|| {
                Error::Json("cannot tell what structure the document holds".to_string())
            })?,
    };
    Ok(match kind.as_str() {
        "semigroup" => Structure::Semigroup(serde_json::from_value(v)?),
        "biorder" => Structure::Biorder(serde_json::from_value(v)?),
        "category" => Structure::Category(serde_json::from_value(v)?),
        "inductive_groupoid" => Structure::Groupoid(Box::new(serde_json::from_value(v)?)),
        "cross_connection" => Structure::Cross(Box::new(serde_json::from_value(v)?)),
        other => return Err(Error::Json(format!("unknown kind {other:?}"))),
    })
}

/// Input limits: `max_size` bounds the element or object count of any
/// input, and
/// `closure_cap` the number of chains generated for `𝒢(E)`.
#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    pub max_size: usize,
    pub closure_cap: Option<usize>,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            max_size: 64,
            closure_cap: None,
        }
    }
}

impl Bounds {
    pub fn require(&self, what: &str, n: usize) -> Result<()> {
        if n > self.max_size {
            return Err(Error::SizeBound(format!(
                "{what} has {n} elements, over the limit of {}",
                self.max_size
            )));
        }
        Ok(())
    }
}

pub fn load_semigroup(doc: &CayleyDoc, bounds: &Bounds) -> Result<FiniteSemigroup> {
    bounds.require("semigroup", doc.n)?;
    load_cayley(doc)
}

fn semigroup_report(doc: &CayleyDoc) -> Result<Report> {
    let mut rep = Report::new();
    match load_cayley(doc) {
        Ok(s) => {
            if let Err(Error::NotRegular(a)) = s.require_regular() {
                rep.push("regular", &[a]);
            }
        }
        Err(Error::NotAssociative(w)) => rep.push("associative", &w),
        Err(e) => return Err(e),
    }
    Ok(rep)
}

/// B1–B5, regularity, and OG1–OG3* on `𝒢(E)` (or a bounded section of it
/// when the closure exceeds the cap).
fn biorder_report(doc: &BiorderDoc, bounds: &Bounds) -> Result<Report> {
    if doc.product.len() != doc.n {
        return Err(Error::MalformedTable(format!("expected {} rows", doc.n)));
    }
    let b = BiorderedSet::unchecked("E", &doc.product, doc.labels.clone())?;
    let mut rep = b.axiom_report();
    if !rep.is_ok() {
        return Ok(rep);
    }
    if let Some((e, f)) = first_empty_sandwich(&b) {
        rep.push("regular", &[e, f]);
        return Ok(rep);
    }
    let cap = bounds.closure_cap.unwrap_or_else(|| default_cap(&b));
    let g = chain_groupoid_or_section(&b, cap, DEFAULT_SECTION_LEN);
    rep.absorb("G(E)", check_ordered_groupoid(&g.groupoid)?);
    Ok(rep)
}

/// The axiom report for whatever `s` holds. Inputs that cannot even be
/// read as the structure they claim to be are errors.
pub fn validate_structure(s: &Structure, bounds: &Bounds) -> Result<Report> {
    match s {
        Structure::Semigroup(doc) => {
            bounds.require("semigroup", doc.n)?;
            semigroup_report(doc)
        }
        Structure::Biorder(doc) => {
            bounds.require("biorder", doc.n)?;
            biorder_report(doc, bounds)
        }
        Structure::Category(doc) => {
            bounds.require("category", doc.objects.len())?;
            check_normal_category(&NormalCategory::from_doc(doc)?, None)
        }
        Structure::Groupoid(doc) => {
            bounds.require("groupoid", doc.objects.len())?;
            let mut rep = biorder_report(&doc.biorder, bounds)?;
            if !rep.is_ok() {
                let mut out = Report::new();
                out.absorb("E", rep);
                return Ok(out);
            }
            rep = check_inductive(&inductive_from_doc(doc)?)?;
            Ok(rep)
        }
        Structure::Cross(doc) => {
            bounds.require(
                "cross-connection",
                doc.c.objects.len().max(doc.d.objects.len()),
            )?;
            validate_crossconnection(&CrossConnection::from_doc(doc)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{brandt2, full_transformation, rect_band, trace_groupoid};
    use crate::functor_ci::build_gamma;

    #[test]
    fn groupoid_doc_round_trips() {
        for s in [brandt2(), full_transformation(2).unwrap()] {
            let (ig, _) = trace_groupoid(&s).unwrap();
            let doc = inductive_to_doc(&ig, None);
            let back = inductive_from_doc(&doc).unwrap();
            assert_eq!(inductive_to_doc(&back, None), doc);
            assert!(check_inductive(&back).unwrap().is_ok());
        }
    }

    #[test]
    fn kinds_are_recognized() {
        let s = rect_band(2, 2).unwrap();
        let (ig, _) = trace_groupoid(&s).unwrap();
        let cc = build_gamma(&ig).unwrap();
        let texts = [
            serde_json::to_string(&s.to_doc()).unwrap(),
            serde_json::to_string(&ig.e.to_doc()).unwrap(),
            serde_json::to_string(&cc.cross.c.to_doc()).unwrap(),
            serde_json::to_string(&inductive_to_doc(&ig, None)).unwrap(),
            serde_json::to_string(&cross_output(&cc, vec![], "RB22")).unwrap(),
        ];
        let kinds: Vec<_> = texts
            .iter()
            .map(|t| parse_structure(t).unwrap().kind())
            .collect();
        assert_eq!(
            kinds,
            [
                "semigroup",
                "biorder",
                "category",
                "inductive_groupoid",
                "cross_connection"
            ]
        );
        for t in &texts {
            let rep = validate_structure(&parse_structure(t).unwrap(), &Bounds::default()).unwrap();
            assert!(rep.is_ok(), "{rep}");
        }
    }

    #[test]
    fn corrupted_biorder_names_an_axiom() {
        let mut doc = rect_band(2, 2)
            .map(|s| crate::fixtures::idempotent_biorder(&s).unwrap().to_doc())
            .unwrap();
        doc.product[0][1] = Some(0);
        let rep = validate_structure(&Structure::Biorder(doc), &Bounds::default()).unwrap();
        assert!(rep.rules().iter().any(|r| r.starts_with('B')), "{rep}");
    }

    #[test]
    fn size_bound_is_enforced() {
        let doc = full_transformation(3).unwrap().to_doc();
        let bounds = Bounds {
            max_size: 8,
            closure_cap: None,
        };
        assert!(matches!(
            validate_structure(&Structure::Semigroup(doc), &bounds),
            Err(Error::SizeBound(_))
        ));
    }
}
