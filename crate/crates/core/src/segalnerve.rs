//! Indexing categories `L(n)`, `𝒫L̿(n)`, `L̿(n)`, `QL″(n)`, `L̄(n)`, their
//! adjunctions, Segal bicycles and the Segal nerve `𝒦(C)`, the wedge
//! inclusion and truncated pseudo bicycles.
//!
//! Disjoint unions `S₁ ⊔ … ⊔ S_r` are listed in the global order on
//! `(position, element)`. Bijections `p`, maps `q` and index maps `h` are
//! 0-based index vectors in that order; `h` points from target positions
//! to source positions. Subsets of `n̲` are bitmasks, bit `i-1` for `i`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::fincat::{search_assignments, FinCategory, Keyed};
use crate::freeperm::{cartesian, words};
use crate::gammacat::GammaCategory;
use crate::gammaskel::{delta, enumerate_based_maps, enumerate_unbased_maps, projection_onto, symmetry, BasedMap, Side, UnbasedMap};
use crate::permcat::{
    check_strict_sm_functor, enumerate_strict_sm_functors, monoidal_transformations, Generators, KeyedPerm, PermCategory,
    StrictSMFunctor,
};
use crate::{CheckReport, Error, Functor, Mor, Ob, Result};

pub type Subset = u32;

pub fn members(s: Subset) -> Vec<usize> {
    (1..=32).filter(|&i| s & (1 << (i - 1)) != 0).collect()
}

pub fn subset_of(elements: &[usize]) -> Subset {
    elements.iter().fold(0, |acc, &i| acc | (1 << (i - 1)))
}

fn full(n: usize) -> Subset {
    ((1u64 << n) - 1) as Subset
}

/// `(position, element)` pairs of `⊔ Sᵢ`.
pub fn elements(seq: &[Subset]) -> Vec<(usize, usize)> {
    seq.iter().enumerate().flat_map(|(i, &s)| members(s).into_iter().map(move |x| (i, x))).collect()
}

/// `(position, element)` pairs of `⊔ Supp(fᵢ)`.
pub fn support_elements(seq: &[BasedMap]) -> Vec<(usize, usize)> {
    seq.iter().enumerate().flat_map(|(i, f)| f.support().into_iter().map(move |x| (i, x))).collect()
}

/// `(position, value)` pairs of `⊔ kᵢ` for `fᵢ: n⁺ → kᵢ⁺`.
pub fn fiber_elements(seq: &[BasedMap]) -> Vec<(usize, usize)> {
    seq.iter().enumerate().flat_map(|(i, f)| (1..=f.cod).map(move |a| (i, a))).collect()
}

/// All bijections choosing `p[e] ∈ candidates[e]`.
fn matchings(candidates: &[Vec<usize>], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if candidates.len() != size {
        return out;
    }
    let mut used = vec![false; size];
    let mut current = Vec::with_capacity(size);
    fn go(c: &[Vec<usize>], used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let e = cur.len();
        if e == c.len() {
            out.push(cur.clone());
            return;
        }
        for &t in &c[e] {
            if !used[t] {
                used[t] = true;
                cur.push(t);
                go(c, used, cur, out);
                cur.pop();
                used[t] = false;
            }
        }
    }
    go(candidates, &mut used, &mut current, &mut out);
    out
}

/// Bijections over `n̲` whose block assignment passes `blocks(i, j)`.
fn over_n(src: &[(usize, usize)], tgt: &[(usize, usize)], blocks: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let candidates: Vec<Vec<usize>> = src
        .iter()
        .map(|&(i, x)| (0..tgt.len()).filter(|&t| tgt[t].1 == x && blocks(i, tgt[t].0)).collect())
        .collect();
    matchings(&candidates, tgt.len())
}

fn is_bijection(p: &[usize], size: usize) -> bool {
    let mut seen = vec![false; size];
    p.len() == size && p.iter().all(|&t| t < size && !std::mem::replace(&mut seen[t], true))
}

/// `g ∘ f` for index maps.
pub fn compose_index(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&e| g[e]).collect()
}

pub(crate) fn identity_index(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn inverse_index(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &t) in p.iter().enumerate() {
        inv[t] = i;
    }
    inv
}

/// `f ⊕ g`: `g` shifted by `offset` in values and placed after `f`.
pub(crate) fn block_sum(f: &[usize], g: &[usize], offset: usize) -> Vec<usize> {
    f.iter().copied().chain(g.iter().map(|&v| v + offset)).collect()
}

/// The bijection `a + b → b + a` exchanging blocks.
pub(crate) fn block_swap(a: usize, b: usize) -> Vec<usize> {
    (0..a).map(|i| b + i).chain((0..b).map(|i| i)).collect()
}

/// All maps `dom → cod` as 0-based index vectors.
pub(crate) fn all_maps(dom: usize, cod: usize) -> Vec<Vec<usize>> {
    cartesian(&vec![(0..cod).collect::<Vec<usize>>(); dom])
}

pub(crate) fn sequences<T: Clone>(alphabet: &[T], max_len: usize) -> Vec<Vec<T>> {
    let idx: Vec<Ob> = (0..alphabet.len()).collect();
    words(&idx, max_len).into_iter().map(|w| w.into_iter().map(|i| alphabet[i].clone()).collect()).collect()
}

/// Sequences of subsets of `n̲` of length at most `max_len`.
pub fn subset_sequences(n: usize, max_len: usize) -> Vec<Vec<Subset>> {
    let subsets: Vec<Subset> = (0..=full(n)).collect();
    sequences(&subsets, max_len)
}

/// Sequences of subsets with `Σ max(|Sᵢ|, 1) ≤ max_weight`; splitting a
/// subset into singletons preserves the weight.
pub fn weighted_sequences(n: usize, max_weight: usize) -> Vec<Vec<Subset>> {
    let weight = |s: Subset| (s.count_ones() as usize).max(1);
    let mut out = vec![Vec::new()];
    let mut frontier = vec![(Vec::new(), 0usize)];
    while let Some((seq, w)) = frontier.pop() {
        for s in 0..=full(n) {
            if w + weight(s) <= max_weight {
                let mut next: Vec<Subset> = seq.clone();
                next.push(s);
                out.push(next.clone());
                frontier.push((next, w + weight(s)));
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Sequences of based maps `n⁺ → kᵢ⁺` with `kᵢ ≤ max_entry`.
pub fn based_sequences(n: usize, max_len: usize, max_entry: usize) -> Vec<Vec<BasedMap>> {
    let maps: Vec<BasedMap> = (0..=max_entry).flat_map(|k| enumerate_based_maps(n, k)).collect();
    sequences(&maps, max_len)
}

// ---------------------------------------------------------------- L(n)

pub fn l_homs(s: &[Subset], t: &[Subset]) -> Vec<Vec<usize>> {
    over_n(&elements(s), &elements(t), |_, _| true)
}

/// `L(n)` on the given objects, with concatenation tensor when `perm`.
pub fn l_category(objects: Vec<Vec<Subset>>) -> Keyed<Vec<Subset>, Vec<usize>> {
    Keyed::build(objects, |s, t| l_homs(s, t), |s| identity_index(elements(s).len()), |g, f, _, _, _| compose_index(g, f))
}

/// Generators: one-term sequences and the splittings `(S ⊔ T) → (S, T)`, `(∅) → ()`.
fn l_generators(keyed: &Keyed<Vec<Subset>, Vec<usize>>) -> Generators {
    let objects = keyed.objects.iter().enumerate().filter(|(_, s)| s.len() == 1).map(|(i, _)| i).collect();
    let mut morphisms = Vec::new();
    for (a, s) in keyed.objects.iter().enumerate() {
        if s.len() != 1 {
            continue;
        }
        for (b, t) in keyed.objects.iter().enumerate() {
            let split = (t.len() == 2 && t[0] & t[1] == 0 && t[0] | t[1] == s[0]) || (s[0] == 0 && t.is_empty());
            if split {
                morphisms.extend(keyed.category.hom(a, b).iter().copied());
            }
        }
    }
    Generators { objects, morphisms }
}

pub fn l_perm(objects: Vec<Vec<Subset>>, bound: usize) -> (Keyed<Vec<Subset>, Vec<usize>>, PermCategory) {
    let keyed = l_category(objects);
    let generators = l_generators(&keyed);
    let perm = KeyedPerm { keyed: &keyed, unit: Vec::new(), bound: Some(bound) }.build_split(
        |a, b| Some(concat(a, b)),
        |f, g, _, _| block_sum(f, g, f.len()),
        |a, b| block_swap(elements(a).len(), elements(b).len()),
        generators,
    );
    (keyed, perm)
}

fn concat<T: Clone>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().chain(b).cloned().collect()
}

// --------------------------------------------------------------- 𝒫L̿(n)

/// A morphism `(h, p)` of `𝒫L̿(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairMor {
    pub h: Vec<usize>,
    pub p: Vec<usize>,
}

pub fn pl_homs(s: &[Subset], t: &[Subset]) -> Vec<PairMor> {
    let (es, et) = (elements(s), elements(t));
    let mut out = Vec::new();
    for h in all_maps(t.len(), s.len()) {
        for p in over_n(&es, &et, |i, j| h[j] == i) {
            out.push(PairMor { h: h.clone(), p });
        }
    }
    out
}

pub fn is_pl_morphism(s: &[Subset], t: &[Subset], m: &PairMor) -> bool {
    let (es, et) = (elements(s), elements(t));
    m.h.len() == t.len()
        && m.h.iter().all(|&i| i < s.len())
        && is_bijection(&m.p, et.len())
        && es.len() == et.len()
        && es.iter().zip(&m.p).all(|(&(i, x), &e)| et[e].1 == x && m.h[et[e].0] == i)
}

/// `g ∘ f` in `𝒫L̿(n)`.
pub fn pl_compose(g: &PairMor, f: &PairMor) -> PairMor {
    PairMor { h: compose_index(&f.h, &g.h), p: compose_index(&g.p, &f.p) }
}

fn pl_identity(s: &[Subset]) -> PairMor {
    PairMor { h: identity_index(s.len()), p: identity_index(elements(s).len()) }
}

pub fn pl_perm(objects: Vec<Vec<Subset>>, bound: usize) -> (Keyed<Vec<Subset>, PairMor>, PermCategory) {
    let keyed = Keyed::build(objects, |s, t| pl_homs(s, t), |s| pl_identity(s), |g, f, _, _, _| pl_compose(g, f));
    let perm = KeyedPerm { keyed: &keyed, unit: Vec::new(), bound: Some(bound) }.build_split(
        |a, b| Some(concat(a, b)),
        |f, g, (fs, _), _| PairMor { h: block_sum(&f.h, &g.h, fs.len()), p: block_sum(&f.p, &g.p, f.p.len()) },
        |a, b| PairMor { h: block_swap(b.len(), a.len()), p: block_swap(elements(a).len(), elements(b).len()) },
        Generators::default(),
    );
    (keyed, perm)
}

// ---------------------------------------------------------------- L̿(n)

/// A morphism `(h, q, p)` of `L̿(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripleMor {
    pub h: Vec<usize>,
    pub q: Vec<usize>,
    pub p: Vec<usize>,
}

/// `tot(f)` as an index map from support elements to fiber elements.
pub fn tot(f: &[BasedMap]) -> Vec<usize> {
    let fib = fiber_elements(f);
    support_elements(f)
        .iter()
        .map(|&(i, x)| fib.iter().position(|&e| e == (i, f[i].apply(x))).expect("value lies in the fiber"))
        .collect()
}

pub fn lbb_homs(f: &[BasedMap], g: &[BasedMap]) -> Vec<TripleMor> {
    let (ff, fg) = (fiber_elements(f), fiber_elements(g));
    let (sf, sg) = (support_elements(f), support_elements(g));
    if sf.len() != sg.len() {
        return Vec::new();
    }
    let tf = tot(f);
    let mut out = Vec::new();
    for h in all_maps(g.len(), f.len()) {
        let q_choices: Vec<Vec<usize>> =
            ff.iter().map(|&(i, _)| (0..fg.len()).filter(|&t| h[fg[t].0] == i).collect()).collect();
        if q_choices.iter().any(Vec::is_empty) {
            continue;
        }
        for q in cartesian(&q_choices) {
            // `tot(g) ∘ p = q ∘ tot(f)` pins each `p(i, x)` to `(j, x)`.
            let p: Option<Vec<usize>> = sf
                .iter()
                .zip(&tf)
                .map(|(&(_, x), &a)| {
                    let (j, b) = fg[q[a]];
                    (g[j].apply(x) == b).then(|| sg.iter().position(|&e| e == (j, x)).expect("support element"))
                })
                .collect();
            if let Some(p) = p {
                if is_bijection(&p, sg.len()) {
                    out.push(TripleMor { h: h.clone(), q, p });
                }
            }
        }
    }
    out
}

pub fn is_lbb_morphism(f: &[BasedMap], g: &[BasedMap], m: &TripleMor) -> bool {
    let (ff, fg) = (fiber_elements(f), fiber_elements(g));
    let (sf, sg) = (support_elements(f), support_elements(g));
    let (tf, tg) = (tot(f), tot(g));
    m.h.len() == g.len()
        && m.h.iter().all(|&i| i < f.len())
        && m.q.len() == ff.len()
        && m.q.iter().zip(&ff).all(|(&t, &(i, _))| t < fg.len() && m.h[fg[t].0] == i)
        && sf.len() == sg.len()
        && is_bijection(&m.p, sg.len())
        && sf.iter().zip(&m.p).all(|(&(_, x), &e)| sg[e].1 == x)
        && (0..sf.len()).all(|e| tg[m.p[e]] == m.q[tf[e]])
}

pub fn lbb_compose(g: &TripleMor, f: &TripleMor) -> TripleMor {
    TripleMor { h: compose_index(&f.h, &g.h), q: compose_index(&g.q, &f.q), p: compose_index(&g.p, &f.p) }
}

fn lbb_identity(f: &[BasedMap]) -> TripleMor {
    TripleMor {
        h: identity_index(f.len()),
        q: identity_index(fiber_elements(f).len()),
        p: identity_index(support_elements(f).len()),
    }
}

pub fn lbb_perm(objects: Vec<Vec<BasedMap>>, bound: usize) -> (Keyed<Vec<BasedMap>, TripleMor>, PermCategory) {
    let keyed = Keyed::build(objects, |f, g| lbb_homs(f, g), |f| lbb_identity(f), |g, f, _, _, _| lbb_compose(g, f));
    let perm = KeyedPerm { keyed: &keyed, unit: Vec::new(), bound: Some(bound) }.build_split(
        |a, b| Some(concat(a, b)),
        |f, g, (fs, ft), _| TripleMor {
            h: block_sum(&f.h, &g.h, fs.len()),
            q: block_sum(&f.q, &g.q, fiber_elements(ft).len()),
            p: block_sum(&f.p, &g.p, f.p.len()),
        },
        |a, b| TripleMor {
            h: block_swap(b.len(), a.len()),
            q: block_swap(fiber_elements(a).len(), fiber_elements(b).len()),
            p: block_swap(support_elements(a).len(), support_elements(b).len()),
        },
        Generators::default(),
    );
    (keyed, perm)
}

// -------------------------------------------------------------- QL″(n), L̄(n)

/// Objects are label sequences `s: r̲ → n̲`; morphisms `p` with `t ∘ p = s`.
pub fn ql_homs(s: &[usize], t: &[usize]) -> Vec<Vec<usize>> {
    let candidates: Vec<Vec<usize>> = s.iter().map(|&x| (0..t.len()).filter(|&j| t[j] == x).collect()).collect();
    matchings(&candidates, t.len())
}

pub fn ql_category(n: usize, max_len: usize) -> Keyed<Vec<usize>, Vec<usize>> {
    let labels: Vec<usize> = (1..=n).collect();
    Keyed::build(sequences(&labels, max_len), |s, t| ql_homs(s, t), |s| identity_index(s.len()), |g, f, _, _, _| {
        compose_index(g, f)
    })
}

pub fn lbar_homs(f: &[BasedMap], g: &[BasedMap]) -> Vec<Vec<usize>> {
    over_n(&support_elements(f), &support_elements(g), |_, _| true)
}

pub fn lbar_category(n: usize, max_len: usize, max_entry: usize) -> Keyed<Vec<BasedMap>, Vec<usize>> {
    Keyed::build(
        based_sequences(n, max_len, max_entry),
        |f, g| lbar_homs(f, g),
        |f| identity_index(support_elements(f).len()),
        |g, f, _, _, _| compose_index(g, f),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexingKind {
    L,
    PLbb,
    Lbb,
    QL,
    LbarGroupoid,
}

/// A bounded indexing category; `perm` is present for the permutative ones.
#[derive(Clone, Debug)]
pub struct Indexing {
    pub category: Arc<FinCategory>,
    pub perm: Option<PermCategory>,
    pub object_labels: Vec<String>,
}

pub fn build_indexing(kind: IndexingKind, n: usize, max_len: usize, max_entry: usize) -> Indexing {
    let show_subsets = |s: &Vec<Subset>| format!("{:?}", s.iter().map(|&m| members(m)).collect::<Vec<_>>());
    let show_maps = |f: &Vec<BasedMap>| format!("{:?}", f.iter().map(|m| m.values.clone()).collect::<Vec<_>>());
    match kind {
        IndexingKind::L => {
            let (k, p) = l_perm(subset_sequences(n, max_len), max_len);
            Indexing { category: k.category.clone(), object_labels: k.objects.iter().map(show_subsets).collect(), perm: Some(p) }
        }
        IndexingKind::PLbb => {
            let (k, p) = pl_perm(subset_sequences(n, max_len), max_len);
            Indexing { category: k.category.clone(), object_labels: k.objects.iter().map(show_subsets).collect(), perm: Some(p) }
        }
        IndexingKind::Lbb => {
            let (k, p) = lbb_perm(based_sequences(n, max_len, max_entry), max_len);
            Indexing { category: k.category.clone(), object_labels: k.objects.iter().map(show_maps).collect(), perm: Some(p) }
        }
        IndexingKind::QL => {
            let k = ql_category(n, max_len);
            Indexing { category: k.category.clone(), object_labels: k.objects.iter().map(|s| format!("{s:?}")).collect(), perm: None }
        }
        IndexingKind::LbarGroupoid => {
            let k = lbar_category(n, max_len, max_entry);
            Indexing { category: k.category.clone(), object_labels: k.objects.iter().map(show_maps).collect(), perm: None }
        }
    }
}

// ---------------------------------------------------------- adjunctions

/// `ι(S)`: the projections `n⁺ → Sᵢ⁺`.
pub fn iota_objects(n: usize, s: &[Subset]) -> Vec<BasedMap> {
    s.iter().map(|&m| projection_onto(n, &members(m))).collect()
}

pub fn iota_morphism(m: &PairMor) -> TripleMor {
    TripleMor { h: m.h.clone(), q: m.p.clone(), p: m.p.clone() }
}

/// `G(f) = Supp(f)`.
pub fn supports(f: &[BasedMap]) -> Vec<Subset> {
    f.iter().map(|m| subset_of(&m.support())).collect()
}

pub fn g_morphism(m: &TripleMor) -> PairMor {
    PairMor { h: m.h.clone(), p: m.p.clone() }
}

/// `ε(f) = (id, tot(f), id): ιG(f) → f`.
pub fn counit(f: &[BasedMap]) -> TripleMor {
    let s = support_elements(f).len();
    TripleMor { h: identity_index(f.len()), q: tot(f), p: identity_index(s) }
}

/// `H(S)`: the labels of `⊔ Sᵢ`.
pub fn h_object(s: &[Subset]) -> Vec<usize> {
    elements(s).into_iter().map(|(_, x)| x).collect()
}

pub fn h_morphism(m: &PairMor) -> Vec<usize> {
    m.p.clone()
}

pub fn ql_iota_object(s: &[usize]) -> Vec<Subset> {
    s.iter().map(|&x| 1 << (x - 1)).collect()
}

pub fn ql_iota_morphism(p: &[usize]) -> PairMor {
    PairMor { h: inverse_index(p), p: p.to_vec() }
}

/// `η(S) = (Ind(S) ∘ can⁻¹, id): S → ιH(S)`.
pub fn unit_eta(s: &[Subset]) -> PairMor {
    let e = elements(s);
    PairMor { h: e.iter().map(|&(i, _)| i).collect(), p: identity_index(e.len()) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdjunctionKind {
    Coreflective,
    Reflective,
}

#[derive(Clone, Debug, Default)]
pub struct AdjunctionReport {
    pub report: CheckReport,
    pub objects: usize,
    pub morphisms: usize,
    pub triangle_passes: usize,
}

fn for_each_hom<O, M>(objects: &[O], homs: impl Fn(&O, &O) -> Vec<M>, mut visit: impl FnMut(&O, &O, &M)) {
    for a in objects {
        for b in objects {
            for m in homs(a, b) {
                visit(a, b, &m);
            }
        }
    }
}

pub fn verify_adjunction(which: AdjunctionKind, n: usize, max_len: usize, max_entry: usize) -> AdjunctionReport {
    match which {
        AdjunctionKind::Coreflective => verify_coreflective(n, max_len, max_entry),
        AdjunctionKind::Reflective => verify_reflective(n, max_len),
    }
}

fn verify_coreflective(n: usize, max_len: usize, max_entry: usize) -> AdjunctionReport {
    let mut out = AdjunctionReport::default();
    let r = &mut out.report;
    let pl_objects = subset_sequences(n, max_len);
    for s in &pl_objects {
        let is = iota_objects(n, s);
        r.check(supports(&is) == *s, "G-iota-objects", || format!("{s:?}"));
        let tri = counit(&is) == lbb_identity(&is);
        r.check(tri, "triangle-counit-at-iota", || format!("ε(ι{s:?}) ≠ id"));
        out.triangle_passes += tri as usize;
        out.objects += 1;
    }
    let mut pl_mors = 0;
    for_each_hom(&pl_objects, |a, b| pl_homs(a, b), |s, t, m| {
        pl_mors += 1;
        let im = iota_morphism(m);
        r.check(is_lbb_morphism(&iota_objects(n, s), &iota_objects(n, t), &im), "iota-morphism", || format!("{m:?}"));
        r.check(g_morphism(&im) == *m, "G-iota-morphisms", || format!("{m:?}"));
    });
    let lbb_objects = based_sequences(n, max_len, max_entry);
    for f in &lbb_objects {
        let eps = counit(f);
        let src = iota_objects(n, &supports(f));
        r.check(is_lbb_morphism(&src, f, &eps), "counit-typed", || format!("{f:?}"));
        let tri = g_morphism(&eps) == pl_identity(&supports(f));
        r.check(tri, "triangle-G-counit", || format!("G(ε{f:?}) ≠ id"));
        out.triangle_passes += tri as usize;
        out.objects += 1;
    }
    let mut lbb_mors = 0;
    for_each_hom(&lbb_objects, |a, b| lbb_homs(a, b), |f, g, m| {
        lbb_mors += 1;
        let left = lbb_compose(m, &counit(f));
        let right = lbb_compose(&counit(g), &iota_morphism(&g_morphism(m)));
        r.check(left == right, "counit-natural", || format!("{m:?}: {f:?} → {g:?}"));
    });
    out.morphisms = pl_mors + lbb_mors;
    out
}

fn verify_reflective(n: usize, max_len: usize) -> AdjunctionReport {
    let mut out = AdjunctionReport::default();
    let r = &mut out.report;
    let labels: Vec<usize> = (1..=n).collect();
    let ql_objects = sequences(&labels, max_len);
    for s in &ql_objects {
        let is = ql_iota_object(s);
        r.check(h_object(&is) == *s, "H-iota-objects", || format!("{s:?}"));
        let tri = unit_eta(&is) == pl_identity(&is);
        r.check(tri, "eta-at-iota-identity", || format!("η(ι{s:?}) ≠ id"));
        out.triangle_passes += tri as usize;
        out.objects += 1;
    }
    let mut count = 0;
    for_each_hom(&ql_objects, |a, b| ql_homs(a, b), |s, t, p| {
        count += 1;
        let ip = ql_iota_morphism(p);
        r.check(is_pl_morphism(&ql_iota_object(s), &ql_iota_object(t), &ip), "iota-morphism", || format!("{p:?}"));
        r.check(h_morphism(&ip) == *p, "H-iota-morphisms", || format!("{p:?}"));
    });
    let pl_objects = subset_sequences(n, max_len);
    for s in &pl_objects {
        let eta = unit_eta(s);
        r.check(is_pl_morphism(s, &ql_iota_object(&h_object(s)), &eta), "unit-typed", || format!("{s:?}"));
        let tri = h_morphism(&eta) == identity_index(h_object(s).len());
        r.check(tri, "H-eta-identity", || format!("H(η{s:?}) ≠ id"));
        out.triangle_passes += tri as usize;
        out.objects += 1;
    }
    for_each_hom(&pl_objects, |a, b| pl_homs(a, b), |s, t, m| {
        count += 1;
        let hm = h_morphism(m);
        r.check(ql_homs(&h_object(s), &h_object(t)).contains(&hm), "H-typed", || format!("{m:?}"));
        let left = pl_compose(&ql_iota_morphism(&hm), &unit_eta(s));
        let right = pl_compose(&unit_eta(t), m);
        r.check(left == right, "unit-natural", || format!("{m:?}: {s:?} → {t:?}"));
    });
    out.morphisms = count;
    out
}

/// `G` commutes with the `Γop` actions: `Supp(fᵢ ∘ φ) = φ⁻¹ Supp(fᵢ)`.
pub fn support_naturality(n: usize, m: usize, max_len: usize, max_entry: usize) -> CheckReport {
    let mut r = CheckReport::default();
    for phi in enumerate_based_maps(n, m) {
        for g in based_sequences(m, max_len, max_entry) {
            let pulled: Vec<BasedMap> = g.iter().map(|gi| gi.after(&phi)).collect();
            let pre: Vec<Subset> = supports(&g).iter().map(|&s| phi.preimage_mask(s)).collect();
            r.check(supports(&pulled) == pre, "support-natural", || format!("{phi} on {g:?}"));
        }
    }
    r
}

// ------------------------------------------------------------ J(n)

/// `𝔏(Γⁿ)(h, p)(f)`: entry `j` is `ρⱼ ∘ f_{h(j)}` with `ρⱼ` keeping block `j`.
fn leinster_act(h: &[usize], p: &[usize], f: &[BasedMap], l: &[usize]) -> Vec<BasedMap> {
    let fib_l: Vec<(usize, usize)> = l.iter().enumerate().flat_map(|(j, &k)| (1..=k).map(move |b| (j, b))).collect();
    let mut start = vec![0; f.len() + 1];
    for (i, fi) in f.iter().enumerate() {
        start[i + 1] = start[i] + fi.cod;
    }
    (0..l.len())
        .map(|j| {
            let fi = &f[h[j]];
            let values = fi
                .values
                .iter()
                .map(|&a| {
                    if a == 0 {
                        return 0;
                    }
                    let (jj, b) = fib_l[p[start[h[j]] + a - 1]];
                    if jj == j {
                        b
                    } else {
                        0
                    }
                })
                .collect();
            BasedMap { dom: fi.dom, cod: l[j], values }
        })
        .collect()
}

/// Morphisms `(h, p)` of `𝔏` from the entries of `f` to those of `g`
/// carrying `f` to `g`.
pub fn leinster_homs_over(f: &[BasedMap], g: &[BasedMap]) -> Vec<PairMor> {
    let k: Vec<usize> = f.iter().map(|m| m.cod).collect();
    let l: Vec<usize> = g.iter().map(|m| m.cod).collect();
    let blocks_l: Vec<usize> = l.iter().enumerate().flat_map(|(j, &c)| std::iter::repeat(j).take(c)).collect();
    let blocks_k: Vec<usize> = k.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat(i).take(c)).collect();
    let mut out = Vec::new();
    for h in all_maps(l.len(), k.len()) {
        let choices: Vec<Vec<usize>> =
            blocks_k.iter().map(|&i| (0..blocks_l.len()).filter(|&t| h[blocks_l[t]] == i).collect()).collect();
        for p in cartesian(&choices) {
            if leinster_act(&h, &p, f, &l) == g {
                out.push(PairMor { h: h.clone(), p });
            }
        }
    }
    out
}

/// `J(n)(h, p) = (h, p, σ_F)`.
pub fn j_functor(f: &[BasedMap], g: &[BasedMap], m: &PairMor) -> TripleMor {
    let fib_g = fiber_elements(g);
    let sg = support_elements(g);
    let fib_f = fiber_elements(f);
    let sigma = support_elements(f)
        .iter()
        .map(|&(i, x)| {
            let a = fib_f.iter().position(|&e| e == (i, f[i].apply(x))).expect("fiber element");
            let j = fib_g[m.p[a]].0;
            sg.iter().position(|&e| e == (j, x)).expect("σ_F lands in the supports")
        })
        .collect();
    TripleMor { h: m.h.clone(), q: m.p.clone(), p: sigma }
}

#[derive(Clone, Debug, Default)]
pub struct JReport {
    pub report: CheckReport,
    pub hom_pairs: usize,
    pub morphisms: usize,
    pub composable_pairs: usize,
}

pub fn iso_compare_j(n: usize, max_len: usize, max_entry: usize) -> JReport {
    let mut out = JReport::default();
    let objects = based_sequences(n, max_len, max_entry);
    let mut homs: HashMap<(usize, usize), Vec<PairMor>> = HashMap::new();
    for (a, f) in objects.iter().enumerate() {
        for (b, g) in objects.iter().enumerate() {
            let left = leinster_homs_over(f, g);
            let right: HashSet<TripleMor> = lbb_homs(f, g).into_iter().collect();
            let images: HashSet<TripleMor> = left.iter().map(|m| j_functor(f, g, m)).collect();
            out.hom_pairs += 1;
            out.morphisms += left.len();
            out.report.check(images.len() == left.len(), "J-injective", || format!("{f:?} → {g:?}"));
            out.report.check(images == right, "J-bijective", || {
                format!("{f:?} → {g:?}: {} vs {}", left.len(), right.len())
            });
            if !left.is_empty() {
                homs.insert((a, b), left);
            }
        }
    }
    for a in 0..objects.len() {
        for (b, g) in objects.iter().enumerate() {
            let Some(first) = homs.get(&(a, b)) else { continue };
            for c in 0..objects.len() {
                let Some(second) = homs.get(&(b, c)) else { continue };
                for m1 in first {
                    for m2 in second {
                        out.composable_pairs += 1;
                        let (f, k) = (&objects[a], &objects[c]);
                        let composite = pl_compose(m2, m1);
                        let lhs = j_functor(f, k, &composite);
                        let rhs = lbb_compose(&j_functor(g, k, m2), &j_functor(f, g, m1));
                        out.report.check(lhs == rhs, "J-composition", || format!("{m1:?}; {m2:?}"));
                    }
                }
            }
        }
    }
    out
}

// ------------------------------------------------------ Segal bicycles

/// An `n`th Segal bicycle: `psi[S]` per subset mask, `sigma[(S, T)]` per
/// disjoint pair, and `u: Ψ(∅) → e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SegalBicycle {
    pub n: usize,
    pub psi: Vec<Ob>,
    pub sigma: BTreeMap<(Subset, Subset), Mor>,
    pub u: Mor,
}

impl SegalBicycle {
    /// `f_*Ψ` for `f: n⁺ → m⁺`: `S ↦ Ψ(f⁻¹S)`.
    pub fn push(&self, f: &BasedMap) -> SegalBicycle {
        let m = f.cod;
        let psi = (0..=full(m)).map(|s| self.psi[f.preimage_mask(s) as usize]).collect();
        let sigma = disjoint_pairs(m)
            .into_iter()
            .map(|(s, t)| ((s, t), self.sigma[&(f.preimage_mask(s), f.preimage_mask(t))]))
            .collect();
        SegalBicycle { n: m, psi, sigma, u: self.u }
    }
}

pub fn disjoint_pairs(n: usize) -> Vec<(Subset, Subset)> {
    let mut out = Vec::new();
    for s in 0..=full(n) {
        for t in 0..=full(n) {
            if s & t == 0 {
                out.push((s, t));
            }
        }
    }
    out
}

/// SB.1–SB.3 and the typing of every component.
pub fn check_bicycle(c: &PermCategory, b: &SegalBicycle) -> CheckReport {
    let mut r = CheckReport::default();
    let base = &*c.base;
    let id = |x: Ob| base.identity(x);
    let ok_u = base.source(b.u) == b.psi[0] && base.target(b.u) == c.unit && base.is_iso(b.u);
    r.check(ok_u, "unit-typed", || format!("u = {}", b.u));
    for (&(s, t), &m) in &b.sigma {
        let tgt = c.tensor(b.psi[s as usize], b.psi[t as usize]);
        let ok = base.source(m) == b.psi[(s | t) as usize] && Some(base.target(m)) == tgt && base.is_iso(m);
        r.check(ok, "sigma-typed", || format!("σ({s:b},{t:b}) = {m}"));
    }
    if !r.is_ok() {
        return r;
    }
    let tm = |f: Mor, g: Mor| c.tensor_m(f, g);
    for s in 0..=full(b.n) {
        let x = b.psi[s as usize];
        let left = tm(b.u, id(x)).and_then(|l| base.try_compose(l, b.sigma[&(0, s)]));
        r.check(left == Some(id(x)), "SB.1-left", || format!("S = {s:b}"));
        let right = tm(id(x), b.u).and_then(|l| base.try_compose(l, b.sigma[&(s, 0)]));
        r.check(right == Some(id(x)), "SB.1-right", || format!("S = {s:b}"));
    }
    for &(s, t) in b.sigma.keys() {
        for u in 0..=full(b.n) {
            if u & (s | t) != 0 {
                continue;
            }
            let ps = |v: Subset| id(b.psi[v as usize]);
            let lhs = tm(b.sigma[&(s, t)], ps(u)).and_then(|l| base.try_compose(l, b.sigma[&(s | t, u)]));
            let rhs = tm(ps(s), b.sigma[&(t, u)]).and_then(|l| base.try_compose(l, b.sigma[&(s, t | u)]));
            r.check(lhs.is_some() && lhs == rhs, "SB.2", || format!("({s:b},{t:b},{u:b})"));
        }
        let swap = c.symmetry(b.psi[s as usize], b.psi[t as usize]).and_then(|g| base.try_compose(g, b.sigma[&(s, t)]));
        r.check(swap == Some(b.sigma[&(t, s)]), "SB.3", || format!("({s:b},{t:b})"));
    }
    r
}

#[derive(Clone, Copy, Debug)]
enum BikeSlot {
    EmptyPsi,
    Unit,
    Psi(Subset),
    Sigma(Subset, Subset),
}

fn bike_slots(n: usize) -> Vec<BikeSlot> {
    let mut slots = vec![BikeSlot::EmptyPsi, BikeSlot::Unit];
    for u in 1..=full(n) {
        slots.push(BikeSlot::Psi(u));
        for s in 1..u {
            let t = u & !s;
            if s & u == s && t != 0 && s < t {
                slots.push(BikeSlot::Sigma(s, t));
            }
        }
    }
    slots
}

/// Fills in the forced components: `σ(∅, S)`, `σ(S, ∅)` from SB.1 and `σ(T, S)` from SB.3.
fn assemble_bicycle(c: &PermCategory, n: usize, slots: &[BikeSlot], chosen: &[usize]) -> Option<SegalBicycle> {
    let mut psi = vec![usize::MAX; 1 << n];
    let mut u = 0;
    let mut free = Vec::new();
    for (slot, &v) in slots.iter().zip(chosen) {
        match *slot {
            BikeSlot::EmptyPsi => psi[0] = v,
            BikeSlot::Unit => u = v,
            BikeSlot::Psi(s) => psi[s as usize] = v,
            BikeSlot::Sigma(s, t) => free.push((s, t, v)),
        }
    }
    let base = &*c.base;
    let mut sigma = BTreeMap::new();
    for s in 0..=full(n) {
        if psi[s as usize] == usize::MAX {
            continue;
        }
        let x = base.identity(psi[s as usize]);
        sigma.insert((0, s), base.inverse(c.tensor_m(u, x)?)?);
        sigma.insert((s, 0), base.inverse(c.tensor_m(x, u)?)?);
    }
    for (s, t, m) in free {
        sigma.insert((s, t), m);
        let g = c.symmetry(psi[s as usize], psi[t as usize])?;
        sigma.insert((t, s), base.try_compose(g, m)?);
    }
    Some(SegalBicycle { n, psi, sigma, u })
}

/// All `n`th Segal bicycles in `C`, by backtracking over subsets in mask order.
pub fn enumerate_bicycles(c: &PermCategory, n: usize, budget: usize) -> Result<Vec<SegalBicycle>> {
    let slots = bike_slots(n);
    let base = &*c.base;
    let slot_of: HashMap<Subset, usize> = slots
        .iter()
        .enumerate()
        .filter_map(|(i, s)| match s {
            BikeSlot::Psi(m) => Some((*m, i)),
            BikeSlot::EmptyPsi => Some((0, i)),
            _ => None,
        })
        .collect();
    // The last slot mentioning each union `U`; SB.2 for triples inside `U` is checked there.
    let last_for: Vec<Option<Subset>> = (0..slots.len())
        .map(|i| {
            let union = match slots[i] {
                BikeSlot::Psi(u) => u,
                BikeSlot::Sigma(s, t) => s | t,
                _ => return None,
            };
            let next_same = slots.get(i + 1).is_some_and(|s| matches!(*s, BikeSlot::Sigma(a, b) if a | b == union));
            (!next_same).then_some(union)
        })
        .collect();
    let mut out = Vec::new();
    search_assignments(
        slots.len(),
        budget,
        |lvl, chosen| match slots[lvl] {
            BikeSlot::EmptyPsi | BikeSlot::Psi(_) => base.objects().collect(),
            BikeSlot::Unit => base.hom(chosen[0], c.unit).iter().copied().filter(|&m| base.is_iso(m)).collect(),
            BikeSlot::Sigma(s, t) => {
                let (x, y, z) = (chosen[slot_of[&(s | t)]], chosen[slot_of[&s]], chosen[slot_of[&t]]);
                match c.tensor(y, z) {
                    Some(yz) => base.hom(x, yz).iter().copied().filter(|&m| base.is_iso(m)).collect(),
                    None => Vec::new(),
                }
            }
        },
        |lvl, chosen| {
            let Some(union) = last_for[lvl] else { return true };
            let Some(b) = assemble_bicycle(c, n, &slots[..=lvl], chosen) else { return false };
            sub_bicycle_ok(c, &b, union)
        },
        |chosen| {
            if let Some(b) = assemble_bicycle(c, n, &slots, chosen) {
                if check_bicycle(c, &b).is_ok() {
                    out.push(b);
                }
            }
            true
        },
    )?;
    out.sort();
    Ok(out)
}

/// SB.2 for disjoint triples with union `union`, on a partially assembled bicycle.
fn sub_bicycle_ok(c: &PermCategory, b: &SegalBicycle, union: Subset) -> bool {
    let base = &*c.base;
    let ps = |v: Subset| base.identity(b.psi[v as usize]);
    let mut s = union;
    loop {
        let rest = union & !s;
        let mut t = rest;
        loop {
            let u = rest & !t;
            let lhs = c.tensor_m(b.sigma[&(s, t)], ps(u)).and_then(|l| base.try_compose(l, b.sigma[&(s | t, u)]));
            let rhs = c.tensor_m(ps(s), b.sigma[&(t, u)]).and_then(|l| base.try_compose(l, b.sigma[&(s, t | u)]));
            if lhs.is_none() || lhs != rhs {
                return false;
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & rest;
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & union;
    }
    true
}

/// Morphisms `τ: Ψ → Ω` of Segal bicycles.
pub fn bicycle_morphisms(c: &PermCategory, a: &SegalBicycle, b: &SegalBicycle, budget: usize) -> Result<Vec<Vec<Mor>>> {
    let base = &*c.base;
    let size = 1usize << a.n;
    let mut out = Vec::new();
    search_assignments(
        size,
        budget,
        |lvl, _| base.hom(a.psi[lvl], b.psi[lvl]).to_vec(),
        |lvl, chosen| {
            let u = lvl as Subset;
            if u == 0 {
                return base.try_compose(b.u, chosen[0]) == Some(a.u);
            }
            let mut s = u;
            loop {
                let t = u & !s;
                let lhs = base.try_compose(b.sigma[&(s, t)], chosen[lvl]);
                let rhs = c.tensor_m(chosen[s as usize], chosen[t as usize]).and_then(|x| base.try_compose(x, a.sigma[&(s, t)]));
                if lhs.is_none() || lhs != rhs {
                    return false;
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & u;
            }
            true
        },
        |chosen| {
            out.push(chosen.to_vec());
            true
        },
    )?;
    Ok(out)
}

pub type NerveDegree = Keyed<SegalBicycle, Vec<Mor>>;

/// `𝒦(C)(n⁺)`: bicycles and their morphisms.
pub fn nerve_degree(c: &Arc<PermCategory>, n: usize, budget: usize) -> Result<NerveDegree> {
    let objects = enumerate_bicycles(c, n, budget)?;
    let index: HashMap<SegalBicycle, Ob> = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
    let mut morphisms = Vec::new();
    for (i, a) in objects.iter().enumerate() {
        for (j, b) in objects.iter().enumerate() {
            for tau in bicycle_morphisms(c, a, b, budget)? {
                morphisms.push((i, j, tau));
            }
        }
    }
    let base = c.base.clone();
    let cb = c.base.clone();
    Ok(Keyed::from_parts(
        objects,
        index,
        morphisms,
        move |b: &SegalBicycle| b.psi.iter().map(|&x| cb.identity(x)).collect(),
        move |g: &Vec<Mor>, f: &Vec<Mor>, _, _, _| f.iter().zip(g).map(|(&x, &y)| base.compose(y, x)).collect(),
    ))
}

/// The Segal nerve truncated at `n_max`, with its degreewise keyed data.
pub struct SegalNerve {
    pub gamma: GammaCategory,
    pub degrees: Vec<NerveDegree>,
}

pub fn segal_nerve(c: &Arc<PermCategory>, n_max: usize, budget: usize) -> Result<SegalNerve> {
    let degrees: Vec<NerveDegree> = (0..=n_max).map(|n| nerve_degree(c, n, budget)).collect::<Result<_>>()?;
    let gamma = GammaCategory::from_fn(
        n_max,
        |n| degrees[n].category.clone(),
        |f, dom, cod| {
            let (src, tgt) = (&degrees[f.dom], &degrees[f.cod]);
            let obj = src.objects.iter().map(|b| tgt.object(&b.push(f)).expect("pushforward is a bicycle")).collect::<Vec<_>>();
            let mor = src
                .morphisms
                .iter()
                .map(|(a, b, tau)| {
                    let data: Vec<Mor> = (0..=full(f.cod)).map(|s| tau[f.preimage_mask(s) as usize]).collect();
                    tgt.morphism(obj[*a], obj[*b], &data).expect("pushforward is a bicycle morphism")
                })
                .collect();
            Functor::new(dom.clone(), cod.clone(), obj, mor)
        },
    );
    Ok(SegalNerve { gamma, degrees })
}

/// `𝒦(C)(1⁺) → C`, `Ψ ↦ Ψ({1})`.
pub fn degree_one_evaluation(c: &Arc<PermCategory>, d1: &NerveDegree) -> Functor {
    let obj = d1.objects.iter().map(|b| b.psi[1]).collect();
    let mor = d1.morphisms.iter().map(|(_, _, tau)| tau[1]).collect();
    Functor::new(d1.category.clone(), c.base.clone(), obj, mor)
}

// ------------------------------------------------------------ round trip

/// `split_S: Ψ(S) → ⊗_{x ∈ S} Ψ({x})`.
fn split(c: &PermCategory, b: &SegalBicycle, s: Subset) -> Option<Mor> {
    if s == 0 {
        return Some(b.u);
    }
    let low = s & s.wrapping_neg();
    let rest = s & !low;
    if rest == 0 {
        return Some(c.base.identity(b.psi[s as usize]));
    }
    let tail = c.tensor_m(c.base.identity(b.psi[low as usize]), split(c, b, rest)?)?;
    c.base.try_compose(tail, b.sigma[&(low, rest)])
}

/// The strict SM functor `L(n) → C` determined by a bicycle.
pub fn bicycle_to_functor(
    c: &Arc<PermCategory>,
    l: &Arc<PermCategory>,
    keyed: &Keyed<Vec<Subset>, Vec<usize>>,
    b: &SegalBicycle,
) -> Result<StrictSMFunctor> {
    let trunc = || Error::Truncation("tensor in the target is undefined on a required word".into());
    let obj: Vec<Ob> = keyed
        .objects
        .iter()
        .map(|s| c.tensor_word(&s.iter().map(|&m| b.psi[m as usize]).collect::<Vec<_>>()).ok_or_else(trunc))
        .collect::<Result<_>>()?;
    let base = &*c.base;
    let splits = |s: &[Subset]| -> Option<Mor> {
        let parts: Option<Vec<Mor>> = s.iter().map(|&m| split(c, b, m)).collect();
        c.tensor_mor_word(&parts?)
    };
    let mut mor = Vec::with_capacity(keyed.morphisms.len());
    for (a, t, p) in keyed.morphisms.iter() {
        let (src, tgt) = (&keyed.objects[*a], &keyed.objects[*t]);
        let word: Vec<Ob> = elements(src).iter().map(|&(_, x)| b.psi[1 << (x - 1)]).collect();
        let value = (|| {
            let perm = c.permutation_iso(&word, &inverse_index(p))?;
            let merged = base.inverse(splits(tgt)?)?;
            base.try_compose(merged, base.try_compose(perm, splits(src)?)?)
        })()
        .ok_or_else(trunc)?;
        mor.push(value);
    }
    Ok(StrictSMFunctor::new(l.clone(), c.clone(), obj, mor))
}

/// The bicycle `S ↦ Φ((S))`, `σ = Φ((S ⊔ T) → (S, T))`, `u = Φ((∅) → ())`.
pub fn functor_to_bicycle(
    keyed: &Keyed<Vec<Subset>, Vec<usize>>,
    f: &StrictSMFunctor,
    n: usize,
) -> Result<SegalBicycle> {
    let missing = |what: String| Error::Truncation(format!("{what} lies outside the fragment"));
    let ob = |s: &Vec<Subset>| keyed.object(s).ok_or_else(|| missing(format!("{s:?}")));
    let psi: Vec<Ob> = (0..=full(n)).map(|s| ob(&vec![s]).map(|o| f.functor.obj[o])).collect::<Result<_>>()?;
    let mut sigma = BTreeMap::new();
    for (s, t) in disjoint_pairs(n) {
        let (a, b) = (ob(&vec![s | t])?, ob(&vec![s, t])?);
        let p = l_homs(&[s | t], &[s, t]).into_iter().next().expect("unique splitting");
        let m = keyed.morphism(a, b, &p).expect("splitting morphism");
        sigma.insert((s, t), f.functor.mor[m]);
    }
    let (a, b) = (ob(&vec![0])?, ob(&Vec::new())?);
    let u = f.functor.mor[keyed.morphism(a, b, &Vec::new()).expect("unit morphism")];
    Ok(SegalBicycle { n, psi, sigma, u })
}

#[derive(Clone, Debug, Default)]
pub struct RoundTrip {
    pub report: CheckReport,
    pub bicycles: usize,
    pub functors: usize,
    pub bicycle_morphisms: usize,
    pub transformations: usize,
}

pub fn bicycle_smfunctor_roundtrip(c: &Arc<PermCategory>, n: usize, max_len: usize, budget: usize) -> Result<RoundTrip> {
    if max_len < 2 {
        return Err(Error::Truncation("round trip needs sequences of length 2".into()));
    }
    let (keyed, perm) = l_perm(subset_sequences(n, max_len), max_len);
    let l = Arc::new(perm);
    let degree = nerve_degree(c, n, budget)?;
    let mut out = RoundTrip { bicycles: degree.objects.len(), ..Default::default() };
    let mut functors = Vec::new();
    for b in degree.objects.iter() {
        let phi = bicycle_to_functor(c, &l, &keyed, b)?;
        out.report.absorb(check_strict_sm_functor(&phi));
        out.report.check(phi.functor.validate().is_ok(), "functor-valid", || format!("{b:?}"));
        let back = functor_to_bicycle(&keyed, &phi, n)?;
        out.report.check(back == *b, "bicycle-functor-bicycle", || format!("{b:?} ↦ {back:?}"));
        functors.push(phi);
    }
    let all = enumerate_strict_sm_functors(c_l(&l), c, budget, |_, _| true)?;
    out.functors = all.len();
    out.report.check(all.len() == degree.objects.len(), "object-count", || {
        format!("{} functors vs {} bicycles", all.len(), degree.objects.len())
    });
    for phi in &all {
        let b = functor_to_bicycle(&keyed, phi, n)?;
        let known = degree.object(&b).is_some();
        out.report.check(known, "functor-gives-bicycle", || format!("{b:?}"));
        if known {
            let again = bicycle_to_functor(c, &l, &keyed, &b)?;
            let same = again.functor.obj == phi.functor.obj && again.functor.mor == phi.functor.mor;
            out.report.check(same, "functor-bicycle-functor", || format!("{b:?}"));
        }
    }
    for (i, a) in degree.objects.iter().enumerate() {
        for (j, b) in degree.objects.iter().enumerate() {
            let taus: Vec<&Vec<Mor>> =
                degree.morphisms.iter().filter(|(x, y, _)| *x == i && *y == j).map(|(_, _, t)| t).collect();
            let trans: HashSet<Vec<Mor>> = monoidal_transformations(&functors[i], &functors[j], budget)?.into_iter().collect();
            out.bicycle_morphisms += taus.len();
            out.transformations += trans.len();
            let images: HashSet<Vec<Mor>> = taus
                .iter()
                .map(|tau| {
                    keyed
                        .objects
                        .iter()
                        .map(|s| c.tensor_mor_word(&s.iter().map(|&m| tau[m as usize]).collect::<Vec<_>>()).expect("tensor"))
                        .collect()
                })
                .collect();
            out.report.check(images.len() == taus.len() && images == trans, "hom-bijection", || {
                format!("{a:?} → {b:?}: {} vs {}", taus.len(), trans.len())
            });
        }
    }
    Ok(out)
}

fn c_l(l: &Arc<PermCategory>) -> &Arc<PermCategory> {
    l
}

// ------------------------------------------------------------ wedge

#[derive(Clone, Debug, Default)]
pub struct WedgeReport {
    pub report: CheckReport,
    pub source_objects: usize,
    pub target_objects: usize,
}

/// `∨ⁿ L(1) → L(n)` on sequences of weight `≤ max_weight`.
pub fn wedge_inclusion_check(n: usize, max_weight: usize) -> WedgeReport {
    let target = l_category(weighted_sequences(n, max_weight));
    // Entries are 0 for ∅ or the element of a singleton.
    let labels: Vec<usize> = (0..=n).collect();
    let wedge_objects = sequences(&labels, max_weight);
    let nonempty = |s: &[usize]| -> Vec<usize> { s.iter().copied().filter(|&x| x != 0).collect() };
    let source = Keyed::build(
        wedge_objects,
        |s: &Vec<usize>, t: &Vec<usize>| {
            let (a, b) = (nonempty(s), nonempty(t));
            let cands: Vec<Vec<usize>> = a.iter().map(|&x| (0..b.len()).filter(|&j| b[j] == x).collect()).collect();
            matchings(&cands, b.len())
        },
        |s| identity_index(nonempty(s).len()),
        |g, f, _, _, _| compose_index(g, f),
    );
    let as_subsets = |s: &Vec<usize>| -> Vec<Subset> { s.iter().map(|&x| if x == 0 { 0 } else { 1 << (x - 1) }).collect() };
    let obj: Vec<Ob> =
        source.objects.iter().map(|s| target.object(&as_subsets(s)).expect("wedge objects lie in L(n)")).collect();
    let mor: Vec<Mor> = source
        .morphisms
        .iter()
        .map(|(a, b, p)| target.morphism(obj[*a], obj[*b], p).expect("wedge morphisms lie in L(n)"))
        .collect();
    let inclusion = Functor::new(source.category.clone(), target.category.clone(), obj, mor);
    let mut report = CheckReport::default();
    report.absorb(inclusion.validate());
    report.check(inclusion.is_injective_on_objects(), "monic-on-objects", || "two wedge objects collide".into());
    report.check(inclusion.is_fully_faithful(), "fully-faithful", || "hom-set mismatch".into());
    report.check(inclusion.is_essentially_surjective(), "essentially-surjective", || "object outside the essential image".into());
    WedgeReport { report, source_objects: source.objects.len(), target_objects: target.objects.len() }
}

// ------------------------------------------------------ pseudo bicycles

/// Index sets of a truncated pseudo bicycle: `A` (maps out of `n⁺`), `D`
/// (pairs `(h, f)`), `B` (triples `(k, l, f)`) and `A(0)`.
#[derive(Clone, Debug)]
pub struct PseudoIndex {
    pub n: usize,
    pub bound: usize,
    pub maps: Vec<BasedMap>,
    pub map_index: HashMap<BasedMap, usize>,
    pub alphas: Vec<(UnbasedMap, usize)>,
    pub alpha_index: HashMap<(UnbasedMap, usize), usize>,
    pub sigmas: Vec<(usize, usize, usize)>,
    pub sigma_index: HashMap<(usize, usize, usize), usize>,
    pub units: Vec<usize>,
}

impl PseudoIndex {
    pub fn new(n: usize, bound: usize) -> Self {
        let maps: Vec<BasedMap> = (0..=bound).flat_map(|m| enumerate_based_maps(n, m)).collect();
        let map_index: HashMap<BasedMap, usize> = maps.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let mut alphas = Vec::new();
        for (i, f) in maps.iter().enumerate() {
            for k in 0..=bound {
                for h in enumerate_unbased_maps(f.cod, k) {
                    alphas.push((h, i));
                }
            }
        }
        let alpha_index = alphas.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let mut sigmas = Vec::new();
        for (i, f) in maps.iter().enumerate() {
            for k in 0..=f.cod {
                sigmas.push((k, f.cod - k, i));
            }
        }
        let sigma_index = sigmas.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let units = maps.iter().enumerate().filter(|(_, f)| f.cod == 0).map(|(i, _)| i).collect();
        PseudoIndex { n, bound, maps, map_index, alphas, alpha_index, sigmas, sigma_index, units }
    }

    fn after(&self, g: &BasedMap, f: usize) -> usize {
        self.map_index[&g.after(&self.maps[f])]
    }

    fn alpha(&self, h: &UnbasedMap, f: usize) -> usize {
        self.alpha_index[&(h.clone(), f)]
    }
}

/// A truncated pseudo bicycle; vectors are indexed by [`PseudoIndex`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PseudoBicycle {
    pub c: Vec<Ob>,
    pub alpha: Vec<Mor>,
    pub sigma: Vec<Mor>,
    pub u: Vec<Mor>,
}

/// PSB.1–PSB.4 and typing, within the bound.
pub fn check_pseudo_bicycle(c: &PermCategory, ix: &PseudoIndex, b: &PseudoBicycle) -> CheckReport {
    let mut r = CheckReport::default();
    let base = &*c.base;
    let typed = |m: Mor, s: Ob, t: Option<Ob>| base.source(m) == s && Some(base.target(m)) == t && base.is_iso(m);
    for (a, (h, f)) in ix.alphas.iter().enumerate() {
        let g = ix.after(&BasedMap::from_unbased(h), *f);
        r.check(typed(b.alpha[a], b.c[*f], Some(b.c[g])), "alpha-typed", || format!("α({h}, {})", ix.maps[*f]));
    }
    for (s, &(k, l, f)) in ix.sigmas.iter().enumerate() {
        let fk = ix.after(&delta(k, l, Side::Left), f);
        let fl = ix.after(&delta(k, l, Side::Right), f);
        r.check(typed(b.sigma[s], b.c[f], c.tensor(b.c[fk], b.c[fl])), "sigma-typed", || format!("σ({k},{l},{})", ix.maps[f]));
    }
    for (i, &f) in ix.units.iter().enumerate() {
        r.check(typed(b.u[i], b.c[f], Some(c.unit)), "unit-typed", || format!("u({})", ix.maps[f]));
    }
    if !r.is_ok() {
        return r;
    }
    let id = |f: usize| base.identity(b.c[f]);
    let sig = |k: usize, l: usize, f: usize| b.sigma[ix.sigma_index[&(k, l, f)]];
    let zero = ix.map_index[&BasedMap::zero(ix.n, 0)];
    let u0 = b.u[ix.units.iter().position(|&f| f == zero).expect("zero map")];
    for (f, fm) in ix.maps.iter().enumerate() {
        let m = fm.cod;
        let right = c.tensor_m(id(f), u0).and_then(|x| base.try_compose(x, sig(m, 0, f)));
        r.check(right == Some(id(f)), "PSB.1-right", || format!("{fm}"));
        let left = c.tensor_m(u0, id(f)).and_then(|x| base.try_compose(x, sig(0, m, f)));
        r.check(left == Some(id(f)), "PSB.1-left", || format!("{fm}"));
        for k in 0..=m {
            let l = m - k;
            let swap = symmetry(k, l);
            let gf = ix.after(&BasedMap::from_unbased(&swap), f);
            let fk = ix.after(&delta(k, l, Side::Left), f);
            let fl = ix.after(&delta(k, l, Side::Right), f);
            let lhs = base.try_compose(sig(l, k, gf), b.alpha[ix.alpha(&swap, f)]);
            let rhs = c.symmetry(b.c[fk], b.c[fl]).and_then(|g| base.try_compose(g, sig(k, l, f)));
            r.check(lhs.is_some() && lhs == rhs, "PSB.2", || format!("({k},{l},{fm})"));
            for k2 in 0..=l {
                let m3 = l - k2;
                let (a, bb, cc) = (k, k2, m3);
                let f_ab = ix.after(&delta(a + bb, cc, Side::Left), f);
                let f_bc = ix.after(&delta(a, bb + cc, Side::Right), f);
                let f_a = ix.after(&delta(a, bb + cc, Side::Left), f);
                let f_c = ix.after(&delta(a + bb, cc, Side::Right), f);
                let lhs = c.tensor_m(sig(a, bb, f_ab), id(f_c)).and_then(|x| base.try_compose(x, sig(a + bb, cc, f)));
                let rhs = c.tensor_m(id(f_a), sig(bb, cc, f_bc)).and_then(|x| base.try_compose(x, sig(a, bb + cc, f)));
                r.check(lhs.is_some() && lhs == rhs, "PSB.3", || format!("({a},{bb},{cc},{fm})"));
            }
            for p in 0..=ix.bound {
                for q in 0..=ix.bound - p {
                    for g1 in enumerate_unbased_maps(k, p) {
                        for g2 in enumerate_unbased_maps(l, q) {
                            let sum = g1.plus(&g2);
                            let moved = ix.after(&BasedMap::from_unbased(&sum), f);
                            let fk = ix.after(&delta(k, l, Side::Left), f);
                            let fl = ix.after(&delta(k, l, Side::Right), f);
                            let lhs = base.try_compose(sig(p, q, moved), b.alpha[ix.alpha(&sum, f)]);
                            let rhs = c
                                .tensor_m(b.alpha[ix.alpha(&g1, fk)], b.alpha[ix.alpha(&g2, fl)])
                                .and_then(|x| base.try_compose(x, sig(k, l, f)));
                            r.check(lhs.is_some() && lhs == rhs, "PSB.4", || format!("({k},{l},{fm}; {g1}, {g2})"));
                        }
                    }
                }
            }
        }
    }
    r
}

/// Morphisms of pseudo bicycles: families `F(f)` compatible with `u`, `α`, `σ`.
pub fn pseudo_morphisms(c: &PermCategory, ix: &PseudoIndex, a: &PseudoBicycle, b: &PseudoBicycle, budget: usize) -> Result<Vec<Vec<Mor>>> {
    let base = &*c.base;
    let mut out = Vec::new();
    search_assignments(
        ix.maps.len(),
        budget,
        |lvl, _| base.hom(a.c[lvl], b.c[lvl]).to_vec(),
        |_, _| true,
        |fam| {
            let units_ok = ix.units.iter().enumerate().all(|(i, &f)| base.try_compose(b.u[i], fam[f]) == Some(a.u[i]));
            let alpha_ok = ix.alphas.iter().enumerate().all(|(i, (h, f))| {
                let g = ix.after(&BasedMap::from_unbased(h), *f);
                base.try_compose(b.alpha[i], fam[*f]) == base.try_compose(fam[g], a.alpha[i])
            });
            let sigma_ok = ix.sigmas.iter().enumerate().all(|(i, &(k, l, f))| {
                let fk = ix.after(&delta(k, l, Side::Left), f);
                let fl = ix.after(&delta(k, l, Side::Right), f);
                base.try_compose(b.sigma[i], fam[f])
                    == c.tensor_m(fam[fk], fam[fl]).and_then(|x| base.try_compose(x, a.sigma[i]))
            });
            if units_ok && alpha_ok && sigma_ok {
                out.push(fam.to_vec());
            }
            true
        },
    )?;
    Ok(out)
}

pub fn enumerate_pseudo_bicycles(c: &PermCategory, ix: &PseudoIndex, budget: usize) -> Result<Vec<PseudoBicycle>> {
    let base = &*c.base;
    let (na, nal, ns, nu) = (ix.maps.len(), ix.alphas.len(), ix.sigmas.len(), ix.units.len());
    let isos = |s: Ob, t: Option<Ob>| -> Vec<Mor> {
        t.map_or(Vec::new(), |t| base.hom(s, t).iter().copied().filter(|&m| base.is_iso(m)).collect())
    };
    let mut out = Vec::new();
    search_assignments(
        na + nal + ns + nu,
        budget,
        |lvl, chosen| {
            if lvl < na {
                base.objects().collect()
            } else if lvl < na + nal {
                let (h, f) = &ix.alphas[lvl - na];
                let g = ix.after(&BasedMap::from_unbased(h), *f);
                isos(chosen[*f], Some(chosen[g]))
            } else if lvl < na + nal + ns {
                let (k, l, f) = ix.sigmas[lvl - na - nal];
                let fk = ix.after(&delta(k, l, Side::Left), f);
                let fl = ix.after(&delta(k, l, Side::Right), f);
                isos(chosen[f], c.tensor(chosen[fk], chosen[fl]))
            } else {
                isos(chosen[ix.units[lvl - na - nal - ns]], Some(c.unit))
            }
        },
        |_, _| true,
        |chosen| {
            let b = PseudoBicycle {
                c: chosen[..na].to_vec(),
                alpha: chosen[na..na + nal].to_vec(),
                sigma: chosen[na + nal..na + nal + ns].to_vec(),
                u: chosen[na + nal + ns..].to_vec(),
            };
            if check_pseudo_bicycle(c, ix, &b).is_ok() {
                out.push(b);
            }
            true
        },
    )?;
    Ok(out)
}

/// `𝒦̄(C)(n⁺)` truncated at codomain bound `M`, with the comparison from `𝒦(C)(n⁺)`.
pub struct ThickenedDegree {
    pub index: PseudoIndex,
    pub keyed: Keyed<PseudoBicycle, Vec<Mor>>,
    pub comparison: Functor,
    pub report: CheckReport,
}

pub fn thickened_nerve_degree(c: &Arc<PermCategory>, n: usize, bound: usize, budget: usize) -> Result<ThickenedDegree> {
    if bound == 0 {
        return Err(Error::Truncation("pseudo bicycles need M ≥ 1".into()));
    }
    let ix = PseudoIndex::new(n, bound);
    let objects = enumerate_pseudo_bicycles(c, &ix, budget)?;
    let index: HashMap<PseudoBicycle, Ob> = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
    let mut morphisms = Vec::new();
    for (i, a) in objects.iter().enumerate() {
        for (j, b) in objects.iter().enumerate() {
            for fam in pseudo_morphisms(c, &ix, a, b, budget)? {
                morphisms.push((i, j, fam));
            }
        }
    }
    let (cb, cb2) = (c.base.clone(), c.base.clone());
    let keyed = Keyed::from_parts(
        objects,
        index,
        morphisms,
        move |b: &PseudoBicycle| b.c.iter().map(|&x| cb.identity(x)).collect(),
        move |g: &Vec<Mor>, f: &Vec<Mor>, _, _, _| f.iter().zip(g).map(|(&x, &y)| cb2.compose(y, x)).collect(),
    );
    let strict = nerve_degree(c, n, budget)?;
    let mut report = CheckReport::default();
    let supp = |f: &BasedMap| subset_of(&f.support());
    let mut obj = Vec::new();
    for b in strict.objects.iter() {
        let pb = PseudoBicycle {
            c: ix.maps.iter().map(|f| b.psi[supp(f) as usize]).collect(),
            alpha: ix.alphas.iter().map(|(_, f)| c.base.identity(b.psi[supp(&ix.maps[*f]) as usize])).collect(),
            sigma: ix
                .sigmas
                .iter()
                .map(|&(k, l, f)| {
                    let g = &ix.maps[f];
                    b.sigma[&(supp(&delta(k, l, Side::Left).after(g)), supp(&delta(k, l, Side::Right).after(g)))]
                })
                .collect(),
            u: ix.units.iter().map(|_| b.u).collect(),
        };
        match keyed.object(&pb) {
            Some(o) => obj.push(o),
            None => {
                report.fail("comparison-object", format!("{b:?}"));
                obj.push(0);
            }
        }
    }
    let mut mor = Vec::new();
    for (a, b, tau) in strict.morphisms.iter() {
        let fam: Vec<Mor> = ix.maps.iter().map(|f| tau[supp(f) as usize]).collect();
        match keyed.morphism(obj[*a], obj[*b], &fam) {
            Some(m) => mor.push(m),
            None => {
                report.fail("comparison-morphism", format!("{tau:?}"));
                mor.push(0);
            }
        }
    }
    let comparison = Functor::new(strict.category.clone(), keyed.category.clone(), obj, mor);
    if report.is_ok() {
        report.absorb(comparison.validate());
        report.check(comparison.is_injective_on_objects(), "comparison-injective", || "objects collide".into());
        report.check(comparison.is_fully_faithful(), "comparison-fully-faithful", || "hom-set mismatch".into());
    }
    Ok(ThickenedDegree { index: ix, keyed, comparison, report })
}

// ------------------------------------------------------------ JSON

/// `{n, psi: {subset: obj}, sigma: {[S,T]: mor}, u: mor}` with subsets as sorted arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegalBicycleJson {
    pub n: usize,
    pub psi: BTreeMap<String, Ob>,
    pub sigma: BTreeMap<String, Mor>,
    pub u: Mor,
}

fn subset_key(s: Subset) -> String {
    serde_json::to_string(&members(s)).expect("serializable")
}

impl SegalBicycleJson {
    pub fn from_bicycle(b: &SegalBicycle) -> Self {
        SegalBicycleJson {
            n: b.n,
            psi: (0..b.psi.len()).map(|s| (subset_key(s as Subset), b.psi[s])).collect(),
            sigma: b
                .sigma
                .iter()
                .map(|(&(s, t), &m)| (serde_json::to_string(&[members(s), members(t)]).expect("serializable"), m))
                .collect(),
            u: b.u,
        }
    }

    pub fn to_bicycle(&self) -> Result<SegalBicycle> {
        let bad = |path: String, message: String| Error::Schema { path, message };
        let parse = |key: &str, path: String| -> Result<Subset> {
            let elems: Vec<usize> = serde_json::from_str(key).map_err(|e| bad(path.clone(), e.to_string()))?;
            if elems.iter().any(|&x| x == 0 || x > self.n) {
                return Err(bad(path, format!("element outside 1..={}", self.n)));
            }
            Ok(subset_of(&elems))
        };
        let mut psi = vec![usize::MAX; 1 << self.n];
        for (k, &v) in &self.psi {
            psi[parse(k, format!("psi.{k}"))? as usize] = v;
        }
        if let Some(s) = psi.iter().position(|&v| v == usize::MAX) {
            return Err(bad("psi".into(), format!("missing subset {}", subset_key(s as Subset))));
        }
        let mut sigma = BTreeMap::new();
        for (k, &v) in &self.sigma {
            let pair: Vec<serde_json::Value> = serde_json::from_str(k).map_err(|e| bad(format!("sigma.{k}"), e.to_string()))?;
            if pair.len() != 2 {
                return Err(bad(format!("sigma.{k}"), "expected a pair".into()));
            }
            let s = parse(&pair[0].to_string(), format!("sigma.{k}"))?;
            let t = parse(&pair[1].to_string(), format!("sigma.{k}"))?;
            sigma.insert((s, t), v);
        }
        if sigma.len() != disjoint_pairs(self.n).len() {
            return Err(bad("sigma".into(), "expected one entry per disjoint pair".into()));
        }
        Ok(SegalBicycle { n: self.n, psi, sigma, u: self.u })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chaotic, is_equivalence};
    use crate::gammacat::{functoriality_audit, segal_check};
    use crate::permcat::{chaotic_perm, commutative_monoids, discrete_monoid, strict_sm_hom};

    fn z2() -> Arc<PermCategory> {
        Arc::new(discrete_monoid(&commutative_monoids()[1].1))
    }

    fn e_boundary() -> Arc<PermCategory> {
        chaotic_perm(&z2()).0
    }

    #[test]
    fn indexing_counts() {
        let l1 = build_indexing(IndexingKind::L, 1, 2, 0);
        assert_eq!(l1.category.object_count(), 7);
        let k = l_category(subset_sequences(1, 2));
        let a = k.object(&vec![1, 1]).unwrap();
        assert_eq!(k.category.hom(a, a).len(), 2);
        let ql = ql_category(1, 2);
        assert_eq!(ql.objects.len(), 3);
        let r2 = ql.object(&vec![1, 1]).unwrap();
        assert_eq!(ql.category.hom(r2, r2).len(), 2);
        assert!(ql.category.is_groupoid());
        let l0 = l_category(subset_sequences(0, 3));
        for a in l0.category.objects() {
            for b in l0.category.objects() {
                assert_eq!(l0.category.hom(a, b).len(), 1);
            }
        }
    }

    #[test]
    fn indexing_categories_are_valid() {
        for kind in [IndexingKind::L, IndexingKind::PLbb, IndexingKind::Lbb, IndexingKind::QL, IndexingKind::LbarGroupoid] {
            let ix = build_indexing(kind, 1, 2, 1);
            assert!(crate::fincat::validate_category(&ix.category).is_ok(), "{kind:?}");
            if let Some(p) = &ix.perm {
                let r = crate::permcat::check_permutative(p);
                assert!(r.is_ok(), "{kind:?}: {:?}", r.violations.first());
            }
        }
        assert!(build_indexing(IndexingKind::LbarGroupoid, 1, 2, 1).category.is_groupoid());
    }

    #[test]
    fn adjunctions_hold() {
        for n in 0..=1 {
            for which in [AdjunctionKind::Coreflective, AdjunctionKind::Reflective] {
                let r = verify_adjunction(which, n, 2, 1);
                assert!(r.report.is_ok(), "{which:?} n={n}: {:?}", r.report.violations.first());
                assert_eq!(r.triangle_passes, r.objects);
            }
        }
        assert!(support_naturality(2, 1, 2, 1).is_ok());
    }

    #[test]
    fn j_is_an_isomorphism() {
        for n in 0..=1 {
            let r = iso_compare_j(n, 2, 2);
            assert!(r.report.is_ok(), "n={n}: {:?}", r.report.violations.first());
            assert!(r.composable_pairs > 0);
        }
    }

    #[test]
    fn nerve_of_z2() {
        let c = z2();
        let nerve = segal_nerve(&c, 3, crate::DEFAULT_BUDGET).unwrap();
        for n in 0..=3 {
            assert_eq!(nerve.degrees[n].objects.len(), 1 << n);
            assert!(nerve.gamma.degree(n).is_discrete());
        }
        assert!(functoriality_audit(&nerve.gamma).is_ok());
        let seg = segal_check(&nerve.gamma).unwrap();
        assert!(seg.report.is_ok());
        assert!(seg.entries.iter().all(|e| e.isomorphism));
        assert!(is_equivalence(&degree_one_evaluation(&c, &nerve.degrees[1])).unwrap());
    }

    #[test]
    fn nerve_of_chaotic_boundary() {
        let c = e_boundary();
        let nerve = segal_nerve(&c, 2, crate::DEFAULT_BUDGET).unwrap();
        assert_eq!(nerve.degrees[1].objects.len(), 4);
        assert_eq!(nerve.degrees[2].objects.len(), 16);
        let seg = segal_check(&nerve.gamma).unwrap();
        assert!(seg.report.is_ok());
        assert!(seg.entries.iter().all(|e| e.equivalence && !e.isomorphism));
        assert!(is_equivalence(&degree_one_evaluation(&c, &nerve.degrees[1])).unwrap());
    }

    #[test]
    fn trivial_nerve() {
        let one = Arc::new(discrete_monoid(&commutative_monoids()[0].1));
        for n in 0..=2 {
            assert_eq!(nerve_degree(&one, n, 1000).unwrap().objects.len(), 1);
        }
    }

    #[test]
    fn round_trips() {
        let r = bicycle_smfunctor_roundtrip(&z2(), 2, 2, crate::DEFAULT_BUDGET).unwrap();
        assert!(r.report.is_ok(), "{:?}", r.report.violations.first());
        assert_eq!((r.bicycles, r.functors), (4, 4));
        let r = bicycle_smfunctor_roundtrip(&e_boundary(), 1, 2, crate::DEFAULT_BUDGET).unwrap();
        assert!(r.report.is_ok(), "{:?}", r.report.violations.first());
        assert_eq!(r.bicycles, r.functors);
        // StrSMHom(L(1)≤2, Z/2) is discrete on two objects.
        let (_, l) = l_perm(subset_sequences(1, 2), 2);
        let hom = strict_sm_hom(&Arc::new(l), &z2(), crate::DEFAULT_BUDGET).unwrap();
        assert_eq!(hom.category.object_count(), 2);
        assert!(hom.category.is_discrete());
    }

    #[test]
    fn wedge() {
        for n in 0..=2 {
            let r = wedge_inclusion_check(n, 2);
            assert!(r.report.is_ok(), "n={n}: {:?}", r.report.violations.first());
        }
        let k = l_category(weighted_sequences(2, 2));
        let whole = k.object(&vec![0b11]).unwrap();
        let split = k.object(&vec![0b01, 0b10]).unwrap();
        assert!(k.category.find_iso(whole, split).is_some());
    }

    #[test]
    fn pseudo_bicycles() {
        let one = Arc::new(discrete_monoid(&commutative_monoids()[0].1));
        let t = thickened_nerve_degree(&one, 1, 2, crate::DEFAULT_BUDGET).unwrap();
        assert_eq!(t.keyed.objects.len(), 1);
        let t = thickened_nerve_degree(&z2(), 1, 2, crate::DEFAULT_BUDGET).unwrap();
        assert!(t.report.is_ok(), "{:?}", t.report.violations.first());
        assert_eq!(t.keyed.objects.len(), 2);
        assert!(t.comparison.is_injective_on_objects());
    }

    #[test]
    fn json_round_trip() {
        let c = z2();
        for b in enumerate_bicycles(&c, 2, 10_000).unwrap() {
            let j = SegalBicycleJson::from_bicycle(&b);
            let text = serde_json::to_string(&j).unwrap();
            let back: SegalBicycleJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_bicycle().unwrap(), b);
        }
        let _ = chaotic(2);
    }
}
