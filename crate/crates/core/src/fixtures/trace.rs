//! The trace groupoid of a regular semigroup.

use std::collections::HashMap;

use super::{idempotent_biorder, FiniteSemigroup, Homomorphism};
use crate::inductive::{InductiveFunctor, InductiveGroupoid, OrderedGroupoid};
use crate::relation::Relation;
use crate::{Error, Result};

/// `(e, x, f)` with `e 𝓡 x 𝓛 f`; `e`, `f` are ids in `E(S)`, `x` in `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceMorphism {
    pub e: usize,
    pub x: usize,
    pub f: usize,
}

/// Morphisms `(e,x,f)`, composition `(e,x,f)(f,y,g) = (e,xy,g)`, order
/// `e ≤ e′, f ≤ f′, x = ex′ = x′f`, evaluation `(e,f) ↦ (e,f,f)` on 𝓡-pairs and
/// `(e,e,f)` on 𝓛-pairs.
pub fn trace_groupoid(s: &FiniteSemigroup) -> Result<(InductiveGroupoid, Vec<TraceMorphism>)> {
    s.require_regular()?;
    let b = idempotent_biorder(s)?;
    let es = s.idempotents();
    let k = es.len();
    let mut mors = Vec::new();
    for e in 0..k {
        for f in 0..k {
            for x in 0..s.n() {
                if s.r_related(x, es[e]) && s.l_related(x, es[f]) {
                    mors.push(TraceMorphism { e, x, f });
                }
            }
        }
    }
    let index: HashMap<TraceMorphism, usize> =
        mors.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let m = mors.len();
    let dom: Vec<usize> = mors.iter().map(|t| t.e).collect();
    let cod: Vec<usize> = mors.iter().map(|t| t.f).collect();
    let identity: Vec<usize> = (0..k)
        .map(|e| index[&TraceMorphism { e, x: es[e], f: e }])
        .collect();
    let mut compose = HashMap::new();
    for (i, a) in mors.iter().enumerate() {
        for (j, c) in mors.iter().enumerate().filter(|(_, c)| c.e == a.f) {
            let t = TraceMorphism {
                e: a.e,
                x: s.mul(a.x, c.x),
                f: c.f,
            };
            if let Some(&z) = index.get(&t) {
                compose.insert((i, j), z);
            }
        }
    }
    let inverse: Vec<usize> = (0..m)
        .map(|i| {
            let a = mors[i];
            (0..m)
                .find(|&j| {
                    mors[j].e == a.f
                        && mors[j].f == a.e
                        && compose.get(&(i, j)) == Some(&identity[a.e])
                })
                .expect("trace morphisms are invertible")
        })
        .collect();
    let leq = Relation::from_fn(m, |i, j| {
        let (a, c) = (mors[i], mors[j]);
        b.leq(a.e, c.e)
            && b.leq(a.f, c.f)
            && a.x == s.mul(es[a.e], c.x)
            && a.x == s.mul(c.x, es[a.f])
    });
    let labels = mors
        .iter()
        .map(|t| {
            format!(
                "({},{},{})",
                s.label(es[t.e]),
                s.label(t.x),
                s.label(es[t.f])
            )
        })
        .collect();
    let g = OrderedGroupoid::from_parts(k, dom, cod, identity, inverse, compose, leq, labels, true);
    let mut eval = HashMap::new();
    for e in 0..k {
        for f in (0..k).filter(|&f| f != e) {
            if b.r_rel(e, f) {
                eval.insert((e, f), index[&TraceMorphism { e, x: es[f], f }]);
            } else if b.l_rel(e, f) {
                eval.insert((e, f), index[&TraceMorphism { e, x: es[e], f }]);
            }
        }
    }
    Ok((InductiveGroupoid::new(g, b, eval), mors))
}

/// The inductive functor `(e,x,f) ↦ (φe,φx,φf)` induced by a homomorphism
/// `φ: S → T`.
pub fn trace_functor(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    phi: &Homomorphism,
) -> Result<InductiveFunctor> {
    let (_, ms) = trace_groupoid(s)?;
    let (_, mt) = trace_groupoid(t)?;
    let (es, et) = (s.idempotents(), t.idempotents());
    let index: HashMap<TraceMorphism, usize> =
        mt.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let object = |e: usize| {
        et.iter().position(|&x| x == phi.map[es[e]]).ok_or_else(|| {
            Error::MalformedTable(format!("image of idempotent {e} is not idempotent"))
        })
    };
    let objects = (0..es.len()).map(object).collect::<Result<Vec<_>>>()?;
    let morphisms = ms
        .iter()
        .map(|m| {
            let image = TraceMorphism {
                e: objects[m.e],
                x: phi.map[m.x],
                f: objects[m.f],
            };
            index.get(&image).copied().ok_or_else(|| {
                Error::MalformedTable(format!(
                    "image of trace morphism {m:?} is not a trace morphism"
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InductiveFunctor { objects, morphisms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, load_cayley, CayleyDoc};
    use crate::inductive::{check_inductive, Groupoid};

    #[test]
    fn group_has_one_object() {
        let table = (0..3)
            .map(|a| (0..3).map(|b| (a + b) % 3).collect())
            .collect();
        let s = load_cayley(&CayleyDoc {
            n: 3,
            table,
            labels: None,
            name: None,
        })
        .unwrap();
        let (ig, _) = trace_groupoid(&s).unwrap();
        assert_eq!(ig.g.object_count(), 1);
        assert_eq!(ig.g.morphism_count(), 3);
        assert!(check_inductive(&ig).unwrap().is_ok());
    }

    #[test]
    fn sizes() {
        let (lz, _) = trace_groupoid(&fixtures::left_zero(2).unwrap()).unwrap();
        assert_eq!((lz.g.object_count(), lz.g.morphism_count()), (2, 4));
        let (t3, _) = trace_groupoid(&fixtures::full_transformation(3).unwrap()).unwrap();
        assert_eq!((t3.g.object_count(), t3.g.morphism_count()), (10, 87));
    }

    #[test]
    fn fixtures_are_inductive() {
        for s in fixtures::standard_fixtures()
            .into_iter()
            .chain([fixtures::symmetric_inverse(2).unwrap()])
        {
            let (ig, _) = trace_groupoid(&s).unwrap();
            let rep = check_inductive(&ig).unwrap();
            assert!(rep.is_ok(), "{}: {rep}", s.name());
        }
    }

    /// Without the right factor `f`, restrictions in T3 stop being unique.
    #[test]
    fn left_factor_order_is_too_coarse() {
        let s = fixtures::full_transformation(3).unwrap();
        let (ig, mors) = trace_groupoid(&s).unwrap();
        let es = s.idempotents();
        let m = mors.len();
        let coarse = Relation::from_fn(m, |i, j| {
            let (a, c) = (mors[i], mors[j]);
            ig.e.leq(a.e, c.e) && ig.e.leq(a.f, c.f) && a.x == s.mul(es[a.e], c.x)
        });
        let rep = crate::inductive::check_ordered_groupoid(&ig.g.with_leq(coarse)).unwrap();
        assert!(rep.has("OG3"));
    }

    #[test]
    fn corrupted_eval_is_caught() {
        let (mut ig, _) = trace_groupoid(&fixtures::rect_band(2, 2).unwrap()).unwrap();
        // (1,1) 𝓛 (2,1): send it to the other morphism between the same objects
        let (e, f) = (0, 2);
        let good = ig.eval[&(e, f)];
        let other =
            (0..ig.g.morphism_count()).find(|&x| x != good && ig.g.dom(x) == e && ig.g.cod(x) == f);
        if let Some(o) = other {
            ig.eval.insert((e, f), o);
            assert!(!check_inductive(&ig).unwrap().is_ok());
        }
        let (mut ig, _) = trace_groupoid(&fixtures::full_transformation(3).unwrap()).unwrap();
        let &(e, f) = ig
            .generator_pairs()
            .iter()
            .find(|&&(e, f)| ig.e.l_rel(e, f))
            .unwrap();
        let good = ig.eval[&(e, f)];
        let o = (0..ig.g.morphism_count())
            .find(|&x| x != good && ig.g.dom(x) == e && ig.g.cod(x) == f)
            .unwrap();
        ig.eval.insert((e, f), o);
        let rep = check_inductive(&ig).unwrap();
        assert!(rep.has("IG2") || rep.has("functor"), "{rep}");
    }
}
