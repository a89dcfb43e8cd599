//! Ordered groupoids, inductive groupoids and inductive functors.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::biorder::{check_bimorphism, singular_squares, BiorderedSet};
use crate::echain::{reduce_path, restrict_chain, EChain};
use crate::relation::Relation;
use crate::report::Report;
use crate::{Error, Result};

/// Read access to a finite ordered groupoid.
///
/// `compose(x, y)` is only asked for when `cod(x) == dom(y)`; it returns `None`
/// only for bounded sections whose composite falls outside the section.
pub trait Groupoid {
    fn object_count(&self) -> usize;
    fn morphism_count(&self) -> usize;
    fn dom(&self, x: usize) -> usize;
    fn cod(&self, x: usize) -> usize;
    fn identity(&self, e: usize) -> usize;
    fn inverse(&self, x: usize) -> usize;
    fn compose(&self, x: usize, y: usize) -> Option<usize>;
    fn leq(&self, x: usize, y: usize) -> bool;
    /// Morphisms below `x`, ascending.
    fn down(&self, x: usize) -> &[usize];
    /// Morphisms with domain `e`, ascending.
    fn out_of(&self, e: usize) -> &[usize];
    fn is_complete(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone)]
pub struct OrderedGroupoid {
    objects: usize,
    dom: Vec<usize>,
    cod: Vec<usize>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    leq: Relation,
    down: Vec<Vec<usize>>,
    out_of: Vec<Vec<usize>>,
    into: Vec<Vec<usize>>,
    labels: Vec<String>,
    complete: bool,
}

impl OrderedGroupoid {
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        objects: usize,
        dom: Vec<usize>,
        cod: Vec<usize>,
        identity: Vec<usize>,
        inverse: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
        leq: Relation,
        labels: Vec<String>,
        complete: bool,
    ) -> Self {
        let m = dom.len();
        let down = (0..m)
            .map(|x| (0..m).filter(|&u| leq.get(u, x)).collect())
            .collect();
        let mut out_of = vec![Vec::new(); objects];
        let mut into = vec![Vec::new(); objects];
        for x in 0..m {
            out_of[dom[x]].push(x);
            into[cod[x]].push(x);
        }
        Self {
            objects,
            dom,
            cod,
            identity,
            inverse,
            compose,
            leq,
            down,
            out_of,
            into,
            labels,
            complete,
        }
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn into_obj(&self, e: usize) -> &[usize] {
        &self.into[e]
    }

    pub fn leq_relation(&self) -> &Relation {
        &self.leq
    }

    pub fn compose_table(&self) -> &HashMap<(usize, usize), usize> {
        &self.compose
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    /// Copy with the inverse table replaced.
    pub fn with_inverse(&self, inverse: Vec<usize>) -> Self {
        Self {
            inverse,
            ..self.clone()
        }
    }

    /// Copy with the order relation replaced.
    pub fn with_leq(&self, leq: Relation) -> Self {
        Self::from_parts(
            self.objects,
            self.dom.clone(),
            self.cod.clone(),
            self.identity.clone(),
            self.inverse.clone(),
            self.compose.clone(),
            leq,
            self.labels.clone(),
            self.complete,
        )
    }

    /// `G^op` materialized: arrows reversed, same ids and order.
    pub fn opposite(&self) -> Self {
        Self::from_parts(
            self.objects,
            self.cod.clone(),
            self.dom.clone(),
            self.identity.clone(),
            self.inverse.clone(),
            self.compose
                .iter()
                .map(|(&(x, y), &z)| ((y, x), z))
                .collect(),
            self.leq.clone(),
            self.labels.clone(),
            self.complete,
        )
    }

    /// A group as a one-object groupoid with the discrete order.
    pub fn from_group(table: &[Vec<usize>], unit: usize) -> Self {
        let m = table.len();
        let inverse = (0..m)
            .map(|x| (0..m).find(|&y| table[x][y] == unit).expect("group"))
            .collect();
        let compose = (0..m)
            .flat_map(|x| (0..m).map(move |y| ((x, y), table[x][y])))
            .collect();
        Self::from_parts(
            1,
            vec![0; m],
            vec![0; m],
            vec![unit],
            inverse,
            compose,
            Relation::from_fn(m, |a, b| a == b),
            (0..m).map(|x| x.to_string()).collect(),
            true,
        )
    }
}

impl Groupoid for OrderedGroupoid {
    fn object_count(&self) -> usize {
        self.objects
    }
    fn morphism_count(&self) -> usize {
        self.dom.len()
    }
    fn dom(&self, x: usize) -> usize {
        self.dom[x]
    }
    fn cod(&self, x: usize) -> usize {
        self.cod[x]
    }
    fn identity(&self, e: usize) -> usize {
        self.identity[e]
    }
    fn inverse(&self, x: usize) -> usize {
        self.inverse[x]
    }
    fn compose(&self, x: usize, y: usize) -> Option<usize> {
        self.compose.get(&(x, y)).copied()
    }
    fn leq(&self, x: usize, y: usize) -> bool {
        self.leq.get(x, y)
    }
    fn down(&self, x: usize) -> &[usize] {
        &self.down[x]
    }
    fn out_of(&self, e: usize) -> &[usize] {
        &self.out_of[e]
    }
    fn is_complete(&self) -> bool {
        self.complete
    }
}

/// `G^op`: same morphisms and order, arrows reversed.
pub struct Opposite<'a>(pub &'a OrderedGroupoid);

impl Groupoid for Opposite<'_> {
    fn object_count(&self) -> usize {
        self.0.objects
    }
    fn morphism_count(&self) -> usize {
        self.0.morphism_count()
    }
    fn dom(&self, x: usize) -> usize {
        self.0.cod[x]
    }
    fn cod(&self, x: usize) -> usize {
        self.0.dom[x]
    }
    fn identity(&self, e: usize) -> usize {
        self.0.identity[e]
    }
    fn inverse(&self, x: usize) -> usize {
        self.0.inverse[x]
    }
    fn compose(&self, x: usize, y: usize) -> Option<usize> {
        self.0.compose(y, x)
    }
    fn leq(&self, x: usize, y: usize) -> bool {
        self.0.leq(x, y)
    }
    fn down(&self, x: usize) -> &[usize] {
        self.0.down(x)
    }
    fn out_of(&self, e: usize) -> &[usize] {
        &self.0.into[e]
    }
    fn is_complete(&self) -> bool {
        self.0.complete
    }
}

/// The restriction `e↿x`.
pub fn restrict<G: Groupoid + ?Sized>(g: &G, e: usize, x: usize) -> Result<usize> {
    g.down(x)
        .iter()
        .copied()
        .find(|&u| g.dom(u) == e)
        .ok_or(Error::NoRestriction {
            object: e,
            morphism: x,
        })
}

/// The corestriction `x↾f`.
pub fn corestrict<G: Groupoid + ?Sized>(g: &G, x: usize, f: usize) -> Result<usize> {
    g.down(x)
        .iter()
        .copied()
        .find(|&u| g.cod(u) == f)
        .ok_or(Error::NoRestriction {
            object: f,
            morphism: x,
        })
}

pub fn object_leq<G: Groupoid + ?Sized>(g: &G, e: usize, f: usize) -> bool {
    g.leq(g.identity(e), g.identity(f))
}

fn check_composition<G: Groupoid + ?Sized>(g: &G) -> Result<()> {
    let m = g.morphism_count();
    for e in 0..g.object_count() {
        let i = g.identity(e);
        if g.dom(i) != e || g.cod(i) != e {
            return Err(Error::MalformedComposition(format!(
                "identity of object {e} has wrong ends"
            )));
        }
    }
    for x in 0..m {
        let (d, c) = (g.dom(x), g.cod(x));
        if g.compose(g.identity(d), x) != Some(x) || g.compose(x, g.identity(c)) != Some(x) {
            return Err(Error::MalformedComposition(format!(
                "identity law fails at morphism {x}"
            )));
        }
    }
    for x in 0..m {
        for &y in g.out_of(g.cod(x)) {
            let Some(xy) = g.compose(x, y) else { continue };
            if g.dom(xy) != g.dom(x) || g.cod(xy) != g.cod(y) {
                return Err(Error::MalformedComposition(format!(
                    "composite of {x} and {y} has wrong ends"
                )));
            }
            for &z in g.out_of(g.cod(y)) {
                let (Some(l), Some(yz)) = (g.compose(xy, z), g.compose(y, z)) else {
                    continue;
                };
                if g.compose(x, yz).is_some_and(|r| r != l) {
                    return Err(Error::MalformedComposition(format!(
                        "associativity fails at ({x},{y},{z})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// OG1–OG3* together with inverse and partial-order laws. Identity and
/// associativity failures are errors.
pub fn check_ordered_groupoid<G: Groupoid + ?Sized>(g: &G) -> Result<Report> {
    check_composition(g)?;
    let m = g.morphism_count();
    let mut rep = Report::new();
    for x in 0..m {
        let i = g.inverse(x);
        let ok = i < m
            && g.dom(i) == g.cod(x)
            && g.compose(x, i) == Some(g.identity(g.dom(x)))
            && g.compose(i, x) == Some(g.identity(g.cod(x)));
        rep.check(ok, "inverse", &[x]);
    }
    for x in 0..m {
        rep.check(g.leq(x, x), "order", &[x]);
        for &u in g.down(x) {
            if u != x {
                rep.check(!g.leq(x, u), "order", &[u, x]);
            }
            for &w in g.down(u) {
                rep.check(g.leq(w, x), "order", &[w, u, x]);
            }
        }
    }
    for x in 0..m {
        for &y in g.out_of(g.cod(x)) {
            let Some(xy) = g.compose(x, y) else { continue };
            for &u in g.down(x) {
                for &v in g.down(y) {
                    if g.cod(u) != g.dom(v) {
                        continue;
                    }
                    let ok = g.compose(u, v).is_some_and(|uv| g.leq(uv, xy));
                    rep.check(ok, "OG1", &[u, v, x, y]);
                }
            }
        }
    }
    for y in 0..m {
        for &x in g.down(y) {
            let (xi, yi) = (g.inverse(x), g.inverse(y));
            rep.check(xi < m && yi < m && g.leq(xi, yi), "OG2", &[x, y]);
        }
    }
    for x in 0..m {
        for e in 0..g.object_count() {
            if object_leq(g, e, g.dom(x)) {
                let k = g.down(x).iter().filter(|&&u| g.dom(u) == e).count();
                rep.check(k == 1, "OG3", &[e, x]);
            }
            if object_leq(g, e, g.cod(x)) {
                let k = g.down(x).iter().filter(|&&u| g.cod(u) == e).count();
                rep.check(k == 1, "OG3*", &[e, x]);
            }
        }
    }
    Ok(rep)
}

/// An ordered groupoid over `E` (object `i` is element `i`) with the
/// evaluation functor stored on 𝓡/𝓛-pair generators.
#[derive(Debug, Clone)]
pub struct InductiveGroupoid {
    pub g: OrderedGroupoid,
    pub e: BiorderedSet,
    pub eval: HashMap<(usize, usize), usize>,
}

impl InductiveGroupoid {
    pub fn new(g: OrderedGroupoid, e: BiorderedSet, eval: HashMap<(usize, usize), usize>) -> Self {
        Self { g, e, eval }
    }

    /// `(G^op, E^op)` with `ε^op(e,f) = ε(f,e)`; morphism ids are kept.
    pub fn opposite(&self) -> Self {
        let eval = self.eval.iter().map(|(&(e, f), &x)| ((f, e), x)).collect();
        Self {
            g: self.g.opposite(),
            e: self.e.opposite(),
            eval,
        }
    }

    /// `ε(e,f)` for an 𝓡- or 𝓛-related pair; `ε(e,e) = 1_e`.
    pub fn eval_pair(&self, e: usize, f: usize) -> Option<usize> {
        if e == f {
            Some(self.g.identity(e))
        } else {
            self.eval.get(&(e, f)).copied()
        }
    }

    pub fn eval_chain(&self, c: &EChain) -> Option<usize> {
        let mut acc = self.g.identity(c.dom());
        for (a, b) in c.generators() {
            acc = self.g.compose(acc, self.eval_pair(a, b)?)?;
        }
        Some(acc)
    }

    pub fn eval_path(&self, p: &[usize]) -> Option<usize> {
        self.eval_chain(&reduce_path(&self.e, p).ok()?)
    }

    pub fn restrict(&self, e: usize, x: usize) -> Result<usize> {
        restrict(&self.g, e, x)
    }

    pub fn corestrict(&self, x: usize, f: usize) -> Result<usize> {
        corestrict(&self.g, x, f)
    }

    /// Generator pairs `(e,f)`, `e ≠ f`, ascending.
    pub fn generator_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.e.n();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && (self.e.r_rel(a, b) || self.e.l_rel(a, b)))
            .collect()
    }
}

/// IG1 on one mirror image: `b` is `E` or `E^op`, `g` is `G` or `G^op`, and
/// `eval` is the matching evaluation on pairs.
fn check_ig1<G: Groupoid + ?Sized>(
    rule: &str,
    b: &BiorderedSet,
    g: &G,
    eval: &dyn Fn(usize, usize) -> Option<usize>,
    rep: &mut Report,
) {
    let n = b.n();
    for x in 0..g.morphism_count() {
        let d = g.dom(x);
        let below: Vec<usize> = (0..n).filter(|&e| object_leq(g, e, d)).collect();
        for &e1 in &below {
            for &e2 in below.iter().filter(|&&e2| b.leq_r(e1, e2)) {
                let w = [x, e1, e2];
                let e12 = b.mul(e1, e2);
                let (Ok(u1), Ok(u2), Ok(u12)) =
                    (restrict(g, e1, x), restrict(g, e2, x), restrict(g, e12, x))
                else {
                    rep.push(rule, &w);
                    continue;
                };
                let (f1, f2) = (g.cod(u1), g.cod(u2));
                if !b.leq_r(f1, f2) {
                    rep.push(rule, &w);
                    continue;
                }
                let f12 = b.mul(f1, f2);
                let lhs = eval(e1, e12).and_then(|a| g.compose(a, u12));
                let rhs = eval(f1, f12).and_then(|a| g.compose(u1, a));
                rep.check(lhs.is_some() && lhs == rhs, rule, &w);
            }
        }
    }
}

/// v-isomorphism, functoriality and order of ε, IG1 in all four mirror
/// forms, and IG2 over every singular square.
pub fn check_inductive(ig: &InductiveGroupoid) -> Result<Report> {
    let g = &ig.g;
    let b = &ig.e;
    let mut rep = check_ordered_groupoid(g)?;
    if g.object_count() != b.n() {
        rep.push("v-iso", &[g.object_count(), b.n()]);
        return Ok(rep);
    }
    for e in 0..b.n() {
        for f in 0..b.n() {
            rep.check(object_leq(g, e, f) == b.leq(e, f), "v-iso", &[e, f]);
        }
    }
    let gens = ig.generator_pairs();
    for &(e, f) in &gens {
        let ok = ig
            .eval_pair(e, f)
            .is_some_and(|x| g.dom(x) == e && g.cod(x) == f);
        rep.check(ok, "eval", &[e, f]);
    }
    if !rep.is_ok() {
        return Ok(rep);
    }
    for &(e, f) in &gens {
        for &(f2, h) in gens.iter().filter(|p| p.0 == f) {
            let same = (b.r_rel(e, f) && b.r_rel(f, h)) || (b.l_rel(e, f) && b.l_rel(f, h));
            if !same {
                continue;
            }
            let lhs = g.compose(ig.eval_pair(e, f2).unwrap(), ig.eval_pair(f, h).unwrap());
            rep.check(lhs == ig.eval_pair(e, h), "functor", &[e, f, h]);
        }
    }
    for &(e, f) in &gens {
        for e1 in (0..b.n()).filter(|&e1| b.leq(e1, e)) {
            let gen = reduce_path(b, &[e, f]).expect("generator");
            let ok = restrict_chain(b, e1, &gen)
                .and_then(|h| ig.eval_chain(&h))
                .is_some_and(|y| g.leq(y, ig.eval_pair(e, f).unwrap()));
            rep.check(ok, "eval-order", &[e, f, e1]);
        }
    }
    let op = b.opposite();
    let g_op = Opposite(g);
    check_ig1("IG1", b, g, &|e, f| ig.eval_pair(e, f), &mut rep);
    check_ig1("IG1^op", &op, &g_op, &|e, f| ig.eval_pair(f, e), &mut rep);
    check_ig1("IG1^lr", &op, g, &|e, f| ig.eval_pair(e, f), &mut rep);
    check_ig1("IG1^op,lr", b, &g_op, &|e, f| ig.eval_pair(f, e), &mut rep);
    for [e, f, gg, h] in singular_squares(b) {
        let lhs = g.compose(ig.eval_pair(e, f).unwrap(), ig.eval_pair(f, h).unwrap());
        let rhs = g.compose(ig.eval_pair(e, gg).unwrap(), ig.eval_pair(gg, h).unwrap());
        rep.check(lhs.is_some() && lhs == rhs, "IG2", &[e, f, gg, h]);
    }
    Ok(rep)
}

/// A functor between inductive groupoids given by its object and morphism maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductiveFunctor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl InductiveFunctor {
    pub fn identity(ig: &InductiveGroupoid) -> Self {
        Self {
            objects: (0..ig.e.n()).collect(),
            morphisms: (0..ig.g.morphism_count()).collect(),
        }
    }

    /// `self` then `other`.
    pub fn then(&self, other: &InductiveFunctor) -> Self {
        Self {
            objects: self.objects.iter().map(|&e| other.objects[e]).collect(),
            morphisms: self.morphisms.iter().map(|&x| other.morphisms[x]).collect(),
        }
    }
}

/// Functor laws, order preservation, regular bimorphism on objects, and
/// `ε′∘𝒢(vF) = F∘ε` on generators.
pub fn check_inductive_functor(
    src: &InductiveGroupoid,
    tgt: &InductiveGroupoid,
    f: &InductiveFunctor,
) -> Report {
    let mut rep = Report::new();
    let (g, h) = (&src.g, &tgt.g);
    if f.objects.len() != src.e.n()
        || f.morphisms.len() != g.morphism_count()
        || f.objects.iter().any(|&e| e >= tgt.e.n())
        || f.morphisms.iter().any(|&x| x >= h.morphism_count())
    {
        rep.push("shape", &[]);
        return rep;
    }
    for x in 0..g.morphism_count() {
        let fx = f.morphisms[x];
        let ok = h.dom(fx) == f.objects[g.dom(x)] && h.cod(fx) == f.objects[g.cod(x)];
        rep.check(ok, "functor", &[x]);
    }
    for e in 0..src.e.n() {
        rep.check(
            f.morphisms[g.identity(e)] == h.identity(f.objects[e]),
            "functor",
            &[e],
        );
    }
    for x in 0..g.morphism_count() {
        for &y in g.out_of(g.cod(x)) {
            let Some(xy) = g.compose(x, y) else { continue };
            let img = h.compose(f.morphisms[x], f.morphisms[y]);
            rep.check(img == Some(f.morphisms[xy]), "functor", &[x, y]);
        }
    }
    for x in 0..g.morphism_count() {
        for &u in g.down(x) {
            rep.check(h.leq(f.morphisms[u], f.morphisms[x]), "order", &[u, x]);
        }
    }
    rep.absorb("", check_bimorphism(&src.e, &tgt.e, &f.objects, true));
    for (a, b) in src.generator_pairs() {
        let lhs = src.eval_pair(a, b).map(|x| f.morphisms[x]);
        let rhs = tgt.eval_path(&[f.objects[a], f.objects[b]]);
        rep.check(lhs.is_some() && lhs == rhs, "eval-square", &[a, b]);
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_is_discrete_ordered_groupoid() {
        let z3: Vec<Vec<usize>> = (0..3)
            .map(|a| (0..3).map(|b| (a + b) % 3).collect())
            .collect();
        let g = OrderedGroupoid::from_group(&z3, 0);
        assert!(check_ordered_groupoid(&g).unwrap().is_ok());
        assert_eq!(restrict(&g, 0, 2).unwrap(), 2);
    }

    #[test]
    fn broken_associativity_is_an_error() {
        let mut t: Vec<Vec<usize>> = (0..3)
            .map(|a| (0..3).map(|b| (a + b) % 3).collect())
            .collect();
        t[1][1] = 1;
        let g = OrderedGroupoid::from_group(&t, 0);
        assert!(matches!(
            check_ordered_groupoid(&g),
            Err(Error::MalformedComposition(_))
        ));
    }
}
