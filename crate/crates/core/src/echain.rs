//! E-paths, canonical E-chains and the chain groupoid `𝒢(E)`.
//!
//! A chain is stored as its reduced path: consecutive entries distinct and the
//! step types strictly alternating between 𝓡 and 𝓛.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::biorder::BiorderedSet;
use crate::inductive::OrderedGroupoid;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EChain(Vec<usize>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    R,
    L,
}

fn step(b: &BiorderedSet, e: usize, f: usize) -> Option<Step> {
    if b.r_rel(e, f) {
        Some(Step::R)
    } else if b.l_rel(e, f) {
        Some(Step::L)
    } else {
        None
    }
}

impl EChain {
    pub fn identity(e: usize) -> Self {
        EChain(vec![e])
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dom(&self) -> usize {
        self.0[0]
    }

    pub fn cod(&self) -> usize {
        *self.0.last().expect("nonempty")
    }

    pub fn inverse(&self) -> EChain {
        EChain(self.0.iter().rev().copied().collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.len() == 1
    }

    /// Consecutive pairs; each is an 𝓡- or 𝓛-pair generator.
    pub fn generators(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }
}

pub fn check_path(b: &BiorderedSet, p: &[usize]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::EmptyPath);
    }
    if let Some(&e) = p.iter().find(|&&e| e >= b.n()) {
        return Err(Error::MalformedTable(format!("element {e} out of range")));
    }
    for w in p.windows(2) {
        if step(b, w[0], w[1]).is_none() {
            return Err(Error::NotAPath(w[0], w[1]));
        }
    }
    Ok(())
}

/// Removes inessential entries left to right until none remain.
pub fn reduce_path(b: &BiorderedSet, p: &[usize]) -> Result<EChain> {
    check_path(b, p)?;
    Ok(reduce_unchecked(b, p))
}

pub(crate) fn reduce_unchecked(b: &BiorderedSet, p: &[usize]) -> EChain {
    let mut out: Vec<usize> = Vec::with_capacity(p.len());
    for &x in p {
        loop {
            match out.as_slice() {
                [.., t] if *t == x => break,
                [.., a, t] if step(b, *a, *t) == step(b, *t, x) => {
                    out.pop();
                }
                _ => {
                    out.push(x);
                    break;
                }
            }
        }
    }
    EChain(out)
}

/// Reference reduction: repeatedly delete the first inessential entry, or the
/// first repeated entry, rescanning from the left each time.
pub fn reduce_by_scanning(b: &BiorderedSet, p: &[usize]) -> Result<EChain> {
    check_path(b, p)?;
    let mut v = p.to_vec();
    'outer: loop {
        for i in 1..v.len() {
            if v[i - 1] == v[i] {
                v.remove(i);
                continue 'outer;
            }
        }
        for i in 1..v.len().saturating_sub(1) {
            if step(b, v[i - 1], v[i]) == step(b, v[i], v[i + 1]) {
                v.remove(i);
                continue 'outer;
            }
        }
        return Ok(EChain(v));
    }
}

pub fn compose_chains(b: &BiorderedSet, c: &EChain, d: &EChain) -> Result<EChain> {
    if c.cod() != d.dom() {
        return Err(Error::NotComposable(c.cod(), d.dom()));
    }
    let mut p = c.0.clone();
    p.extend_from_slice(&d.0[1..]);
    Ok(reduce_unchecked(b, &p))
}

/// `h_1 = e`, `h_i = (f_i h_{i-1}) f_i`, for `e ≤ f_1`.
pub fn h_sequence(b: &BiorderedSet, e: usize, c: &EChain) -> Option<Vec<usize>> {
    if !b.leq(e, c.dom()) {
        return None;
    }
    let mut h = vec![e];
    for &f in &c.0[1..] {
        let prev = *h.last().expect("nonempty");
        let fh = b.product(f, prev)?;
        h.push(b.product(fh, f)?);
    }
    Some(h)
}

/// The restriction `e↿c`: the reduced h-sequence.
pub fn restrict_chain(b: &BiorderedSet, e: usize, c: &EChain) -> Option<EChain> {
    let h = h_sequence(b, e, c)?;
    check_path(b, &h).ok()?;
    Some(reduce_unchecked(b, &h))
}

/// The corestriction `c↾f`, computed through the inverse chain.
pub fn corestrict_chain(b: &BiorderedSet, c: &EChain, f: usize) -> Option<EChain> {
    restrict_chain(b, f, &c.inverse()).map(|x| x.inverse())
}

/// `c ≤_E c′`.
pub fn chain_leq(b: &BiorderedSet, c: &EChain, c2: &EChain) -> bool {
    restrict_chain(b, c.dom(), c2).is_some_and(|h| &h == c)
}

/// All reduced chains with at most `max_len` entries, sorted by length then
/// lexicographically.
pub fn reduced_chains(b: &BiorderedSet, max_len: usize) -> Vec<EChain> {
    let n = b.n();
    let mut out: Vec<EChain> = (0..n).map(EChain::identity).collect();
    let mut frontier: Vec<Vec<usize>> = (0..n).map(|e| vec![e]).collect();
    for _ in 1..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            let t = *p.last().expect("nonempty");
            let last = (p.len() >= 2).then(|| step(b, p[p.len() - 2], t)).flatten();
            for x in 0..n {
                if x == t {
                    continue;
                }
                let Some(s) = step(b, t, x) else { continue };
                if Some(s) == last {
                    continue;
                }
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned().map(EChain));
        frontier = next;
    }
    out
}

/// The chain groupoid materialized as tables.
#[derive(Debug, Clone)]
pub struct ChainGroupoid {
    pub chains: Vec<EChain>,
    pub index: HashMap<EChain, usize>,
    pub groupoid: OrderedGroupoid,
    /// Longest chain kept when the groupoid is a bounded section; `None` when complete.
    pub section_len: Option<usize>,
}

impl ChainGroupoid {
    pub fn id_of(&self, c: &EChain) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn is_complete(&self) -> bool {
        self.section_len.is_none()
    }
}

/// `𝒢(E)` by closure over 𝓡/𝓛 generators; fails once more than `cap`
/// chains have been produced.
pub fn chain_groupoid(b: &BiorderedSet, cap: usize) -> Result<ChainGroupoid> {
    let n = b.n();
    let mut seen: HashMap<EChain, usize> = HashMap::new();
    let mut chains = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    for e in 0..n {
        let c = EChain::identity(e);
        seen.insert(c.clone(), chains.len());
        chains.push(c.clone());
        queue.push_back(c);
    }
    let gens: Vec<EChain> = (0..n)
        .flat_map(|e| (0..n).map(move |f| (e, f)))
        .filter(|&(e, f)| e != f && step(b, e, f).is_some())
        .map(|(e, f)| EChain(vec![e, f]))
        .collect();
    while let Some(c) = queue.pop_front() {
        for g in gens.iter().filter(|g| g.dom() == c.cod()) {
            let d = compose_chains(b, &c, g).expect("composable");
            if seen.contains_key(&d) {
                continue;
            }
            if chains.len() >= cap {
                return Err(Error::ClosureBoundExceeded(cap));
            }
            seen.insert(d.clone(), chains.len());
            chains.push(d.clone());
            queue.push_back(d);
        }
    }
    Ok(materialize(b, chains, None))
}

/// The default closure bound: `2·n²` chains.
pub fn default_cap(b: &BiorderedSet) -> usize {
    (2 * b.n() * b.n()).max(1)
}

/// All reduced chains of length at most `max_len`, closed under inverse and
/// restriction; composites longer than the bound are left undefined.
pub fn chain_section(b: &BiorderedSet, max_len: usize) -> ChainGroupoid {
    let chains = reduced_chains(b, max_len.max(1));
    let complete = reduced_chains(b, max_len + 1).len() == chains.len();
    materialize(b, chains, (!complete).then_some(max_len))
}

/// Section length used when `𝒢(E)` has no finite closure.
pub const DEFAULT_SECTION_LEN: usize = 8;

/// The complete groupoid if it fits under `cap`, otherwise the section of
/// chains with at most `max_len` entries.
pub fn chain_groupoid_or_section(b: &BiorderedSet, cap: usize, max_len: usize) -> ChainGroupoid {
    match chain_groupoid(b, cap) {
        Ok(g) => g,
        Err(_) => chain_section(b, max_len),
    }
}

fn materialize(
    b: &BiorderedSet,
    mut chains: Vec<EChain>,
    section_len: Option<usize>,
) -> ChainGroupoid {
    chains.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    let index: HashMap<EChain, usize> = chains
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let m = chains.len();
    let dom: Vec<usize> = chains.iter().map(|c| c.dom()).collect();
    let cod: Vec<usize> = chains.iter().map(|c| c.cod()).collect();
    let identity: Vec<usize> = (0..b.n()).map(|e| index[&EChain::identity(e)]).collect();
    let inverse: Vec<usize> = chains.iter().map(|c| index[&c.inverse()]).collect();
    let mut by_dom: Vec<Vec<usize>> = vec![Vec::new(); b.n()];
    for (i, c) in chains.iter().enumerate() {
        by_dom[c.dom()].push(i);
    }
    let mut compose = HashMap::new();
    for x in 0..m {
        for &y in &by_dom[cod[x]] {
            let c = compose_chains(b, &chains[x], &chains[y]).expect("composable");
            if let Some(&z) = index.get(&c) {
                compose.insert((x, y), z);
            }
        }
    }
    let mut leq = crate::relation::Relation::empty(m);
    for x in 0..m {
        for e in (0..b.n()).filter(|&e| b.leq(e, dom[x])) {
            for &y in &by_dom[e] {
                if chain_leq(b, &chains[y], &chains[x]) {
                    leq.set(y, x, true);
                }
            }
        }
    }
    let labels = chains
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c.entries().iter().map(|&e| b.label(e)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let groupoid = OrderedGroupoid::from_parts(
        b.n(),
        dom,
        cod,
        identity,
        inverse,
        compose,
        leq,
        labels,
        section_len.is_none(),
    );
    ChainGroupoid {
        chains,
        index,
        groupoid,
        section_len,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, idempotent_biorder};
    use crate::inductive::{check_ordered_groupoid, Groupoid};
    use proptest::prelude::*;

    fn e_of(s: &crate::fixtures::FiniteSemigroup) -> BiorderedSet {
        idempotent_biorder(s).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let rb = e_of(&fixtures::rect_band(2, 2).unwrap());
        // (1,1)=0 (1,2)=1 (2,1)=2 (2,2)=3; 𝓡 = same row, 𝓛 = same column
        assert_eq!(reduce_path(&rb, &[0]).unwrap().entries(), &[0]);
        assert_eq!(reduce_path(&rb, &[0, 1, 0]).unwrap().entries(), &[0]);
        let loop_path = [0, 1, 3, 2, 0];
        assert_eq!(reduce_path(&rb, &loop_path).unwrap().entries(), &loop_path);
        assert!(matches!(
            reduce_path(&rb, &[0, 3]),
            Err(Error::NotAPath(0, 3))
        ));
        let t2 = e_of(&fixtures::full_transformation(2).unwrap());
        // constants form an 𝓡-class
        let consts: Vec<usize> = (0..t2.n())
            .filter(|&e| (0..t2.n()).any(|f| f != e && t2.r_rel(e, f)))
            .collect();
        assert_eq!(consts.len(), 2);
        let (a, c) = (consts[0], consts[1]);
        assert_eq!(reduce_path(&t2, &[a, c, a, c]).unwrap().entries(), &[a, c]);
    }

    #[test]
    fn composition_examples() {
        let rb = e_of(&fixtures::rect_band(2, 2).unwrap());
        let c = reduce_path(&rb, &[0, 1, 3]).unwrap();
        assert_eq!(
            compose_chains(&rb, &c, &c.inverse()).unwrap(),
            EChain::identity(0)
        );
        let ef = EChain(vec![0, 1]);
        let fg = EChain(vec![1, 3]);
        assert_eq!(compose_chains(&rb, &ef, &fg).unwrap().entries(), &[0, 1, 3]);
        let lz = e_of(&fixtures::right_zero(3).unwrap());
        let r = compose_chains(&lz, &EChain(vec![0, 1]), &EChain(vec![1, 2])).unwrap();
        assert_eq!(r.entries(), &[0, 2]);
        assert!(matches!(
            compose_chains(&rb, &ef, &ef),
            Err(Error::NotComposable(1, 0))
        ));
    }

    #[test]
    fn leq_examples() {
        let t2s = fixtures::full_transformation(2).unwrap();
        let t2 = e_of(&t2s);
        for e in 0..t2.n() {
            for f in 0..t2.n() {
                assert_eq!(
                    chain_leq(&t2, &EChain::identity(e), &EChain::identity(f)),
                    t2.leq(e, f)
                );
            }
        }
        let id = t2.labels().iter().position(|l| l == "12").unwrap();
        let c1 = t2.labels().iter().position(|l| l == "11").unwrap();
        assert!(t2.leq(c1, id));
        assert!(chain_leq(&t2, &EChain::identity(c1), &EChain::identity(id)));
    }

    #[test]
    fn small_groupoids() {
        let one = e_of(&fixtures::semilattice_chain(1).unwrap());
        assert_eq!(chain_groupoid(&one, 2).unwrap().chains.len(), 1);
        let lz = e_of(&fixtures::left_zero(2).unwrap());
        let g = chain_groupoid(&lz, default_cap(&lz)).unwrap();
        let mut got: Vec<Vec<usize>> = g.chains.iter().map(|c| c.entries().to_vec()).collect();
        got.sort();
        assert_eq!(got, vec![vec![0], vec![0, 1], vec![1], vec![1, 0]]);
    }

    /// The RB22 square loop never reduces, so `𝒢(E)` has no finite closure.
    #[test]
    fn rb22_closure_is_unbounded() {
        let rb = e_of(&fixtures::rect_band(2, 2).unwrap());
        assert_eq!(
            chain_groupoid(&rb, 1000).unwrap_err(),
            Error::ClosureBoundExceeded(1000)
        );
        let lp = [0, 1, 3, 2, 0, 1, 3, 2, 0];
        assert_eq!(reduce_path(&rb, &lp).unwrap().entries(), &lp);
        assert_eq!(reduced_chains(&rb, 4).len(), 4 + 8 + 8 + 8);
    }

    #[test]
    fn t3_closure_is_unbounded() {
        let t3 = e_of(&fixtures::full_transformation(3).unwrap());
        assert_eq!(
            chain_groupoid(&t3, default_cap(&t3)).unwrap_err(),
            Error::ClosureBoundExceeded(200)
        );
        assert_eq!(reduced_chains(&t3, 11).len(), 136);
    }

    #[test]
    fn groupoids_pass_og_checks() {
        for s in fixtures::standard_fixtures() {
            let b = e_of(&s);
            let g = chain_groupoid_or_section(&b, default_cap(&b), DEFAULT_SECTION_LEN);
            let rep = check_ordered_groupoid(&g.groupoid).unwrap();
            assert!(rep.is_ok(), "{}: {rep}", s.name());
        }
    }

    #[test]
    fn restriction_is_unique_and_matches_h_sequence() {
        for s in fixtures::standard_fixtures() {
            let b = e_of(&s);
            let g = chain_groupoid_or_section(&b, default_cap(&b), DEFAULT_SECTION_LEN);
            let og = &g.groupoid;
            for x in 0..og.morphism_count() {
                for e in (0..b.n()).filter(|&e| b.leq(e, og.dom(x))) {
                    let below: Vec<usize> = (0..og.morphism_count())
                        .filter(|&y| og.dom(y) == e && og.leq(y, x))
                        .collect();
                    assert_eq!(below.len(), 1, "{} x={x} e={e}", s.name());
                    let h = restrict_chain(&b, e, &g.chains[x]).unwrap();
                    assert_eq!(g.chains[below[0]], h);
                }
            }
        }
    }

    /// Every path equivalent to `p` within a length budget reduces like `p`.
    fn equivalence_closure(b: &BiorderedSet, p: &[usize], max_len: usize) -> Vec<Vec<usize>> {
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![p.to_vec()];
        seen.insert(p.to_vec());
        while let Some(q) = stack.pop() {
            let mut nexts = Vec::new();
            for i in 1..q.len().saturating_sub(1) {
                if step(b, q[i - 1], q[i]) == step(b, q[i], q[i + 1]) {
                    let mut r = q.clone();
                    r.remove(i);
                    nexts.push(r);
                }
            }
            for i in 1..q.len() {
                if q[i - 1] == q[i] {
                    let mut r = q.clone();
                    r.remove(i);
                    nexts.push(r);
                }
            }
            if q.len() < max_len {
                for i in 0..q.len() {
                    for x in 0..b.n() {
                        let mut r = q.clone();
                        r.insert(i + 1, x);
                        let ok = if i + 1 < q.len() {
                            x == q[i] || x == q[i + 1] || {
                                let s1 = step(b, q[i], x);
                                s1.is_some() && s1 == step(b, x, q[i + 1])
                            }
                        } else {
                            x == q[i]
                        };
                        if ok {
                            nexts.push(r);
                        }
                    }
                }
            }
            for r in nexts {
                if seen.insert(r.clone()) {
                    stack.push(r);
                }
            }
        }
        seen.into_iter().collect()
    }

    #[test]
    fn reduction_is_confluent_on_short_paths() {
        for s in [
            fixtures::rect_band(2, 2).unwrap(),
            fixtures::full_transformation(2).unwrap(),
            fixtures::right_zero(3).unwrap(),
        ] {
            let b = e_of(&s);
            for c in reduced_chains(&b, 3) {
                let canon = reduce_path(&b, c.entries()).unwrap();
                for q in equivalence_closure(&b, c.entries(), 5) {
                    assert_eq!(reduce_path(&b, &q).unwrap(), canon, "{} {:?}", s.name(), q);
                    assert_eq!(reduce_by_scanning(&b, &q).unwrap(), canon);
                }
            }
        }
    }

    fn arb_path(n: usize, b: BiorderedSet) -> impl Strategy<Value = Vec<usize>> {
        (0..n, proptest::collection::vec(0..n, 0..12)).prop_map(move |(start, choices)| {
            let mut p = vec![start];
            for c in choices {
                let t = *p.last().unwrap();
                let nbrs: Vec<usize> = (0..b.n()).filter(|&x| step(&b, t, x).is_some()).collect();
                p.push(nbrs[c % nbrs.len()]);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn reduction_laws(p in arb_path(10, idempotent_biorder(&fixtures::full_transformation(3).unwrap()).unwrap())) {
            let b = e_of(&fixtures::full_transformation(3).unwrap());
            let r = reduce_path(&b, &p).unwrap();
            prop_assert_eq!(reduce_path(&b, r.entries()).unwrap(), r.clone());
            prop_assert_eq!(reduce_by_scanning(&b, &p).unwrap(), r.clone());
            let rev: Vec<usize> = p.iter().rev().copied().collect();
            prop_assert_eq!(reduce_path(&b, &rev).unwrap(), r.inverse());
            prop_assert!(chain_leq(&b, &r, &r));
            let back = compose_chains(&b, &r, &r.inverse()).unwrap();
            prop_assert_eq!(back, EChain::identity(p[0]));
        }
    }
}
