//! Permutative categories given by (possibly partial) tensor tables,
//! strict symmetric monoidal functors, unital monoidal transformations,
//! and the model-structure characterizations in `Perm`.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::fincat::{
    discrete, equivalence_witness, functor_category, search_assignments, CategoryJson, FinCategory,
    FunctorCategory, FunctorSearch, Keyed,
};
use crate::{CheckReport, Error, Functor, Mor, NatTrans, Ob, Result};

/// Declared generating objects and morphisms of a presentation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generators {
    pub objects: Vec<Ob>,
    pub morphisms: Vec<Mor>,
}

/// A permutative category over a finite base, with partial tensor when
/// it is a bounded window into an infinite one.
#[derive(Clone, Debug)]
pub struct PermCategory {
    pub base: Arc<FinCategory>,
    pub tensor_ob: HashMap<(Ob, Ob), Ob>,
    pub tensor_mor: HashMap<(Mor, Mor), Mor>,
    pub unit: Ob,
    pub gamma: HashMap<(Ob, Ob), Mor>,
    /// Size bound when the presentation truncates an infinite category.
    pub bound: Option<usize>,
    pub generators: Generators,
}

impl PermCategory {
    pub fn tensor(&self, a: Ob, b: Ob) -> Option<Ob> {
        self.tensor_ob.get(&(a, b)).copied()
    }

    pub fn tensor_m(&self, f: Mor, g: Mor) -> Option<Mor> {
        self.tensor_mor.get(&(f, g)).copied()
    }

    pub fn symmetry(&self, a: Ob, b: Ob) -> Option<Mor> {
        self.gamma.get(&(a, b)).copied()
    }

    /// Left-nested tensor of a word; the empty word is the unit.
    pub fn tensor_word(&self, word: &[Ob]) -> Option<Ob> {
        word.iter().try_fold(self.unit, |acc, &x| self.tensor(acc, x))
    }

    pub fn tensor_mor_word(&self, word: &[Mor]) -> Option<Mor> {
        let unit = self.base.identity(self.unit);
        word.iter().try_fold(unit, |acc, &f| self.tensor_m(acc, f))
    }

    /// The canonical symmetry `b₁ ⊗ … ⊗ bₙ → b_{π(1)} ⊗ … ⊗ b_{π(n)}`
    /// for a permutation `perm` given 0-based (`perm[k]` is the source
    /// position placed at target position `k`), built from adjacent swaps.
    pub fn permutation_iso(&self, word: &[Ob], perm: &[usize]) -> Option<Mor> {
        let n = word.len();
        debug_assert_eq!(perm.len(), n);
        // Bubble the current arrangement towards `perm`, composing
        // `id ⊗ γ ⊗ id` at each adjacent transposition.
        let mut current: Vec<usize> = (0..n).collect();
        let mut total = self.base.identity(self.tensor_word(word)?);
        let target_pos: Vec<usize> = {
            let mut pos = vec![0; n];
            for (k, &src) in perm.iter().enumerate() {
                pos[src] = k;
            }
            pos
        };
        loop {
            let Some(i) = (0..n.saturating_sub(1)).find(|&i| target_pos[current[i]] > target_pos[current[i + 1]]) else {
                break;
            };
            let objs: Vec<Ob> = current.iter().map(|&k| word[k]).collect();
            let left = self.tensor_word(&objs[..i])?;
            let right = self.tensor_word(&objs[i + 2..])?;
            let swap = self.symmetry(objs[i], objs[i + 1])?;
            let step = self.tensor_mor_word(&[self.base.identity(left), swap, self.base.identity(right)])?;
            total = self.base.try_compose(step, total)?;
            current.swap(i, i + 1);
        }
        Some(total)
    }

    /// Objects in closure order: unit, generators, then tensors of
    /// earlier objects, then anything unreached.
    pub fn object_closure_order(&self) -> Vec<Ob> {
        let n = self.base.object_count();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for a in std::iter::once(self.unit).chain(self.generators.objects.iter().copied()) {
            if a < n && !std::mem::replace(&mut seen[a], true) {
                order.push(a);
            }
        }
        let mut partners: HashMap<Ob, Vec<(Ob, Ob)>> = HashMap::new();
        for (&(a, b), &c) in &self.tensor_ob {
            partners.entry(a).or_default().push((b, c));
            if a != b {
                partners.entry(b).or_default().push((a, c));
            }
        }
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            if let Some(list) = partners.get(&x) {
                let mut list = list.clone();
                list.sort_unstable();
                for (y, c) in list {
                    if seen[y] && !seen[c] {
                        seen[c] = true;
                        order.push(c);
                    }
                }
            }
            i += 1;
        }
        order.extend((0..n).filter(|&a| !seen[a]));
        order
    }

    /// Non-identity morphisms in closure order from the generators.
    pub fn morphism_closure_order(&self) -> Vec<Mor> {
        let c = &*self.base;
        let m_count = c.morphism_count();
        let mut seen = vec![false; m_count];
        for a in c.objects() {
            seen[c.identity(a)] = true;
        }
        let mut order = Vec::new();
        let mut gammas: Vec<Mor> = self.gamma.values().copied().collect();
        gammas.sort_unstable();
        for m in self.generators.morphisms.iter().copied().chain(gammas) {
            if !std::mem::replace(&mut seen[m], true) {
                order.push(m);
            }
        }
        let mut partners: HashMap<Mor, Vec<(Mor, Mor)>> = HashMap::new();
        for (&(f, g), &h) in &self.tensor_mor {
            partners.entry(f).or_default().push((g, h));
            if f != g {
                partners.entry(g).or_default().push((f, h));
            }
        }
        let reached = |m: Mor, seen: &mut Vec<bool>, order: &mut Vec<Mor>| {
            if !seen[m] {
                seen[m] = true;
                order.push(m);
            }
        };
        let mut i = 0;
        while i < order.len() {
            let m = order[i];
            if let Some(list) = partners.get(&m) {
                let mut list = list.clone();
                list.sort_unstable();
                for (g, h) in list {
                    if seen[g] {
                        reached(h, &mut seen, &mut order);
                    }
                }
            }
            for x in c.objects() {
                for &g in c.hom(c.target(m), x) {
                    if seen[g] {
                        reached(c.compose(g, m), &mut seen, &mut order);
                    }
                }
                for &f in c.hom(x, c.source(m)) {
                    if seen[f] {
                        reached(c.compose(m, f), &mut seen, &mut order);
                    }
                }
            }
            if let Some(inv) = c.inverse(m) {
                reached(inv, &mut seen, &mut order);
            }
            i += 1;
        }
        order.extend((0..m_count).filter(|&m| !seen[m]));
        order
    }

    /// The opposite permutative category; `γ_op(a, b) = γ(b, a)`.
    pub fn opposite(&self) -> PermCategory {
        let gamma = self.gamma.keys().map(|&(a, b)| ((a, b), self.gamma[&(b, a)])).collect();
        PermCategory {
            base: Arc::new(self.base.opposite()),
            tensor_ob: self.tensor_ob.clone(),
            tensor_mor: self.tensor_mor.clone(),
            unit: self.unit,
            gamma,
            bound: self.bound,
            generators: self.generators.clone(),
        }
    }

    /// Number of defined object pairs and morphism pairs.
    pub fn fragment_size(&self) -> (usize, usize) {
        (self.tensor_ob.len(), self.tensor_mor.len())
    }
}

/// Permutative structure on a keyed category from key-level rules.
pub struct KeyedPerm<'a, O, M> {
    pub keyed: &'a Keyed<O, M>,
    pub unit: O,
    pub bound: Option<usize>,
}

impl<'a, O, M> KeyedPerm<'a, O, M>
where
    O: Clone + Eq + Hash + Send + Sync + 'static,
    M: Clone + Eq + Hash + Send + Sync + 'static,
{
    /// Tabulates the tensor. `tensor_ob` returning a key outside the
    /// presentation leaves the pair undefined; `tensor_mor` receives
    /// the two morphism keys and the source/target keys of the result.
    pub fn build(
        &self,
        tensor_ob: impl Fn(&O, &O) -> Option<O>,
        tensor_mor: impl Fn(&M, &M, &O, &O) -> M,
        gamma: impl Fn(&O, &O) -> M,
        generators: Generators,
    ) -> PermCategory {
        let tensor_ob = &tensor_ob;
        self.build_split(
            tensor_ob,
            |f, g, (fs, ft), (gs, gt)| {
                let ab = tensor_ob(fs, gs).expect("tensor of sources is defined");
                let cd = tensor_ob(ft, gt).expect("tensor of targets is defined");
                tensor_mor(f, g, &ab, &cd)
            },
            gamma,
            generators,
        )
    }

    /// Like [`KeyedPerm::build`], but `tensor_mor(f, g, f_ends, g_ends)`
    /// receives the `(source, target)` keys of each factor.
    pub fn build_split(
        &self,
        tensor_ob: impl Fn(&O, &O) -> Option<O>,
        tensor_mor: impl Fn(&M, &M, (&O, &O), (&O, &O)) -> M,
        gamma: impl Fn(&O, &O) -> M,
        generators: Generators,
    ) -> PermCategory {
        let k = self.keyed;
        let c = &*k.category;
        let n = c.object_count();
        let mut tob = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if let Some(key) = tensor_ob(&k.objects[a], &k.objects[b]) {
                    if let Some(ab) = k.object(&key) {
                        tob.insert((a, b), ab);
                    }
                }
            }
        }
        let mut by_source: Vec<Vec<Mor>> = vec![Vec::new(); n];
        for m in c.morphisms() {
            by_source[c.source(m)].push(m);
        }
        let mut tmor = HashMap::new();
        for (&(a, b), &ab) in &tob {
            for &f in &by_source[a] {
                for &g in &by_source[b] {
                    let Some(&cd) = tob.get(&(c.target(f), c.target(g))) else { continue };
                    let data = tensor_mor(
                        k.data(f),
                        k.data(g),
                        (&k.objects[c.source(f)], &k.objects[c.target(f)]),
                        (&k.objects[c.source(g)], &k.objects[c.target(g)]),
                    );
                    let h = k.morphism(ab, cd, &data).expect("tensor of morphisms lies in the presentation");
                    tmor.insert((f, g), h);
                }
            }
        }
        let mut gam = HashMap::new();
        for (&(a, b), &ab) in &tob {
            if let Some(&ba) = tob.get(&(b, a)) {
                let data = gamma(&k.objects[a], &k.objects[b]);
                let m = k.morphism(ab, ba, &data).expect("symmetry lies in the presentation");
                gam.insert((a, b), m);
            }
        }
        PermCategory {
            base: k.category.clone(),
            tensor_ob: tob,
            tensor_mor: tmor,
            unit: k.object(&self.unit).expect("unit object"),
            gamma: gam,
            bound: self.bound,
            generators,
        }
    }
}

/// Discrete permutative category on a commutative monoid; element 0 is the unit.
pub fn discrete_monoid(table: &[Vec<usize>]) -> PermCategory {
    let n = table.len();
    let base = Arc::new(discrete(n));
    let mut tensor_ob = HashMap::new();
    let mut tensor_mor = HashMap::new();
    let mut gamma = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            tensor_ob.insert((a, b), ab);
            tensor_mor.insert((base.identity(a), base.identity(b)), base.identity(ab));
            gamma.insert((a, b), base.identity(ab));
        }
    }
    PermCategory {
        base,
        tensor_ob,
        tensor_mor,
        unit: 0,
        gamma,
        bound: None,
        generators: Generators { objects: (0..n).collect(), morphisms: Vec::new() },
    }
}

/// Named commutative monoids of order at most four.
pub fn commutative_monoids() -> Vec<(&'static str, Vec<Vec<usize>>)> {
    let cyclic = |n: usize| -> Vec<Vec<usize>> { (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect() };
    let chain = |n: usize| -> Vec<Vec<usize>> { (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect() };
    vec![
        ("trivial", cyclic(1)),
        ("z2", cyclic(2)),
        ("or2", chain(2)),
        ("z3", cyclic(3)),
        ("max3", chain(3)),
        // {1, a, 0}: a² = 1, 0 absorbing.
        ("z2_zero", vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]]),
        // {1, a, 0}: a² = 0, 0 absorbing.
        ("nil3", vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]]),
        ("z4", cyclic(4)),
        ("z2xz2", vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]]),
        ("max4", chain(4)),
    ]
}

/// A strict symmetric monoidal functor.
#[derive(Clone, Debug)]
pub struct StrictSMFunctor {
    pub dom: Arc<PermCategory>,
    pub cod: Arc<PermCategory>,
    pub functor: Functor,
}

impl StrictSMFunctor {
    pub fn new(dom: Arc<PermCategory>, cod: Arc<PermCategory>, obj: Vec<Ob>, mor: Vec<Mor>) -> Self {
        let functor = Functor::new(dom.base.clone(), cod.base.clone(), obj, mor);
        StrictSMFunctor { dom, cod, functor }
    }

    pub fn identity(p: Arc<PermCategory>) -> Self {
        let functor = Functor::identity(p.base.clone());
        StrictSMFunctor { dom: p.clone(), cod: p, functor }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &StrictSMFunctor) -> StrictSMFunctor {
        StrictSMFunctor { dom: first.dom.clone(), cod: self.cod.clone(), functor: self.functor.after(&first.functor) }
    }
}

/// Checks every permutative-category law over the defined fragment.
pub fn check_permutative(p: &PermCategory) -> CheckReport {
    let c = &*p.base;
    let mut r = CheckReport::default();
    let e = p.unit;
    for a in c.objects() {
        r.check(p.tensor(e, a) == Some(a) && p.tensor(a, e) == Some(a), "unit-object", || format!("object {a}"));
    }
    for f in c.morphisms() {
        let ide = c.identity(e);
        r.check(p.tensor_m(ide, f) == Some(f) && p.tensor_m(f, ide) == Some(f), "unit-morphism", || format!("morphism {f}"));
    }
    let mut ob_right: HashMap<Ob, Vec<(Ob, Ob)>> = HashMap::new();
    for (&(a, b), &ab) in &p.tensor_ob {
        ob_right.entry(a).or_default().push((b, ab));
    }
    let mut ob_pairs: Vec<_> = p.tensor_ob.iter().map(|(&k, &v)| (k, v)).collect();
    ob_pairs.sort_unstable();
    for &((a, b), ab) in &ob_pairs {
        for &(cc, abc) in ob_right.get(&ab).map(Vec::as_slice).unwrap_or(&[]) {
            if let Some(bc) = p.tensor(b, cc) {
                if let Some(a_bc) = p.tensor(a, bc) {
                    r.check(abc == a_bc, "associativity-object", || format!("({a},{b},{cc})"));
                }
            }
        }
    }
    let mut mor_right: HashMap<Mor, Vec<(Mor, Mor)>> = HashMap::new();
    for (&(f, g), &fg) in &p.tensor_mor {
        mor_right.entry(f).or_default().push((g, fg));
    }
    let mut mor_pairs: Vec<_> = p.tensor_mor.iter().map(|(&k, &v)| (k, v)).collect();
    mor_pairs.sort_unstable();
    for &((f, g), fg) in &mor_pairs {
        let typed = c.source(fg) == p.tensor(c.source(f), c.source(g)).unwrap_or(usize::MAX)
            && c.target(fg) == p.tensor(c.target(f), c.target(g)).unwrap_or(usize::MAX);
        r.check(typed, "tensor-typing", || format!("({f},{g})"));
        for &(h, fgh) in mor_right.get(&fg).map(Vec::as_slice).unwrap_or(&[]) {
            if let Some(gh) = p.tensor_m(g, h) {
                if let Some(f_gh) = p.tensor_m(f, gh) {
                    r.check(fgh == f_gh, "associativity-morphism", || format!("({f},{g},{h})"));
                }
            }
        }
    }
    for &((a, b), ab) in &ob_pairs {
        let ok = p.tensor_m(c.identity(a), c.identity(b)) == Some(c.identity(ab));
        r.check(ok, "tensor-identity", || format!("({a},{b})"));
    }
    // Composition preservation: (g⊗g')∘(f⊗f') = (g∘f)⊗(g'∘f').
    let mut out: Vec<Vec<Mor>> = vec![Vec::new(); c.object_count()];
    for m in c.morphisms() {
        out[c.source(m)].push(m);
    }
    for &((f, f2), ff) in &mor_pairs {
        for &g in &out[c.target(f)] {
            for &g2 in &out[c.target(f2)] {
                if let Some(gg) = p.tensor_m(g, g2) {
                    let left = c.try_compose(gg, ff);
                    let right = p.tensor_m(c.compose(g, f), c.compose(g2, f2));
                    r.check(left.is_some() && right == left, "tensor-functorial", || format!("f={f}, f'={f2}, g={g}, g'={g2}"));
                }
            }
        }
    }
    let mut gamma_pairs: Vec<_> = p.gamma.iter().map(|(&k, &v)| (k, v)).collect();
    gamma_pairs.sort_unstable();
    for &((a, b), g) in &gamma_pairs {
        let typed = Some(c.source(g)) == p.tensor(a, b) && Some(c.target(g)) == p.tensor(b, a);
        r.check(typed, "symmetry-typing", || format!("γ({a},{b})"));
        if !typed {
            continue;
        }
        if let Some(back) = p.symmetry(b, a) {
            let ok = c.try_compose(back, g) == Some(c.identity(c.source(g)));
            r.check(ok, "symmetry-involution", || format!("γ({b},{a})∘γ({a},{b})"));
        }
        if b == e {
            r.check(c.is_identity(g), "symmetry-unit", || format!("γ({a},e)"));
        }
    }
    // Naturality of γ.
    for &((f, g), fg) in &mor_pairs {
        let (a, b) = (c.source(f), c.source(g));
        let (a2, b2) = (c.target(f), c.target(g));
        if let (Some(gab), Some(ga2b2), Some(gf)) = (p.symmetry(a, b), p.symmetry(a2, b2), p.tensor_m(g, f)) {
            let left = c.try_compose(ga2b2, fg);
            let right = c.try_compose(gf, gab);
            r.check(left.is_some() && left == right, "symmetry-natural", || format!("f={f}, g={g}"));
        }
    }
    // Hexagon: γ(a⊗b, c) = (γ(a,c) ⊗ id_b) ∘ (id_a ⊗ γ(b,c)).
    for &((a, b), ab) in &ob_pairs {
        for &(cc, _) in ob_right.get(&ab).map(Vec::as_slice).unwrap_or(&[]) {
            let Some(whole) = p.symmetry(ab, cc) else { continue };
            let inner = p.symmetry(b, cc).and_then(|gbc| p.tensor_m(c.identity(a), gbc));
            let outer = p.symmetry(a, cc).and_then(|gac| p.tensor_m(gac, c.identity(b)));
            if let (Some(inner), Some(outer)) = (inner, outer) {
                let ok = c.try_compose(outer, inner) == Some(whole);
                r.check(ok, "hexagon", || format!("({a},{b},{cc})"));
            }
        }
    }
    r
}

/// Checks that a functor strictly preserves tensor, unit and symmetry.
pub fn check_strict_sm_functor(f: &StrictSMFunctor) -> CheckReport {
    let mut r = f.functor.validate();
    if !r.is_ok() {
        return r;
    }
    let (p, q) = (&*f.dom, &*f.cod);
    let (fo, fm) = (&f.functor.obj, &f.functor.mor);
    r.check(fo[p.unit] == q.unit, "unit-preserved", || format!("F(e) = {}", fo[p.unit]));
    let mut pairs: Vec<_> = p.tensor_ob.iter().collect();
    pairs.sort_unstable();
    for (&(a, b), &ab) in pairs {
        r.check(q.tensor(fo[a], fo[b]) == Some(fo[ab]), "tensor-objects", || format!("({a},{b})"));
    }
    let mut mpairs: Vec<_> = p.tensor_mor.iter().collect();
    mpairs.sort_unstable();
    for (&(x, y), &xy) in mpairs {
        r.check(q.tensor_m(fm[x], fm[y]) == Some(fm[xy]), "tensor-morphisms", || format!("({x},{y})"));
    }
    let mut gpairs: Vec<_> = p.gamma.iter().collect();
    gpairs.sort_unstable();
    for (&(a, b), &g) in gpairs {
        r.check(q.symmetry(fo[a], fo[b]) == Some(fm[g]), "symmetry-preserved", || format!("γ({a},{b})"));
    }
    r
}

/// Enumerates strict symmetric monoidal functors `C → D`, assigning the
/// generators first so the rest is forced by the tensor wherever possible.
pub fn enumerate_strict_sm_functors(
    c: &Arc<PermCategory>,
    d: &Arc<PermCategory>,
    budget: usize,
    extra: impl Fn(Mor, Mor) -> bool,
) -> Result<Vec<StrictSMFunctor>> {
    let found = strict_sm_search(c, d, budget, &extra)?;
    Ok(found.into_iter().map(|(o, m)| StrictSMFunctor::new(c.clone(), d.clone(), o, m)).collect())
}

fn strict_sm_search(
    c: &PermCategory,
    d: &PermCategory,
    budget: usize,
    extra: &dyn Fn(Mor, Mor) -> bool,
) -> Result<Vec<(Vec<Ob>, Vec<Mor>)>> {
    let base = &*c.base;
    let mut ob_triples: Vec<Vec<(Ob, Ob, Ob)>> = vec![Vec::new(); base.object_count()];
    for (&(a, b), &ab) in &c.tensor_ob {
        for x in [a, b, ab] {
            if !ob_triples[x].contains(&(a, b, ab)) {
                ob_triples[x].push((a, b, ab));
            }
        }
    }
    let mut id_gamma: Vec<Vec<(Ob, Ob)>> = vec![Vec::new(); base.object_count()];
    let mut gamma_of: HashMap<Mor, Vec<(Ob, Ob)>> = HashMap::new();
    for (&(a, b), &g) in &c.gamma {
        if base.is_identity(g) {
            id_gamma[a].push((a, b));
            id_gamma[b].push((a, b));
        } else {
            gamma_of.entry(g).or_default().push((a, b));
        }
    }
    let mut mor_triples: Vec<Vec<(Mor, Mor, Mor)>> = vec![Vec::new(); base.morphism_count()];
    for (&(f, g), &fg) in &c.tensor_mor {
        for x in [f, g, fg] {
            if !mor_triples[x].contains(&(f, g, fg)) {
                mor_triples[x].push((f, g, fg));
            }
        }
    }
    let object_hook = |a: Ob, obj: &[Option<Ob>]| -> bool {
        let ok_tensor = ob_triples[a].iter().all(|&(x, y, xy)| match (obj[x], obj[y], obj[xy]) {
            (Some(fx), Some(fy), Some(fxy)) => d.tensor(fx, fy) == Some(fxy),
            _ => true,
        });
        ok_tensor
            && id_gamma[a].iter().all(|&(x, y)| match (obj[x], obj[y]) {
                (Some(fx), Some(fy)) => d.symmetry(fx, fy).is_some_and(|g| d.base.is_identity(g)),
                _ => true,
            })
    };
    let morphism_hook = |m: Mor, obj: &[Ob], mor: &[Option<Mor>]| -> bool {
        let value = mor[m].unwrap();
        if !extra(m, value) {
            return false;
        }
        let tensor_ok = mor_triples[m].iter().all(|&(x, y, xy)| match (mor[x], mor[y], mor[xy]) {
            (Some(fx), Some(fy), Some(fxy)) => d.tensor_m(fx, fy) == Some(fxy),
            _ => true,
        });
        tensor_ok
            && gamma_of
                .get(&m)
                .map_or(true, |pairs| pairs.iter().all(|&(a, b)| d.symmetry(obj[a], obj[b]) == Some(value)))
    };
    // Identity morphisms are assigned with their objects; tensor triples
    // among identities are implied by the object checks.
    let search = FunctorSearch::new(base, &d.base)
        .budget(budget)
        .fix_object(c.unit, d.unit)
        .object_order(c.object_closure_order())
        .morphism_order(c.morphism_closure_order())
        .object_hook(object_hook)
        .morphism_hook(morphism_hook);
    let mut out = Vec::new();
    search.run(|o, m| {
        out.push((o.to_vec(), m.to_vec()));
        true
    })?;
    // Identity tensor triples and identity symmetry checks are subsumed
    // above only when every object pair was visited; a final audit keeps
    // the enumeration honest.
    let cc = Arc::new(c.clone());
    let dd = Arc::new(d.clone());
    out.retain(|(o, m)| check_strict_sm_functor(&StrictSMFunctor::new(cc.clone(), dd.clone(), o.clone(), m.clone())).is_ok());
    Ok(out)
}

/// Unital monoidal natural transformations `F ⇒ G` between strict SM functors.
pub fn monoidal_transformations(f: &StrictSMFunctor, g: &StrictSMFunctor, budget: usize) -> Result<Vec<Vec<Mor>>> {
    let c = &*f.dom;
    let d = &*f.cod;
    let order = c.object_closure_order();
    let position: HashMap<Ob, usize> = order.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let base = &*c.base;
    let mut checks_at: Vec<Vec<Mor>> = vec![Vec::new(); order.len()];
    for m in base.morphisms() {
        let lvl = position[&base.source(m)].max(position[&base.target(m)]);
        checks_at[lvl].push(m);
    }
    let mut tensor_at: Vec<Vec<(Ob, Ob, Ob)>> = vec![Vec::new(); order.len()];
    for (&(a, b), &ab) in &c.tensor_ob {
        let lvl = position[&a].max(position[&b]).max(position[&ab]);
        tensor_at[lvl].push((a, b, ab));
    }
    let mut out = Vec::new();
    let component = |chosen: &[usize], a: Ob| chosen[position[&a]];
    search_assignments(
        order.len(),
        budget,
        |lvl, _| {
            let a = order[lvl];
            if a == c.unit {
                vec![d.base.identity(f.functor.obj[a])]
            } else {
                d.base.hom(f.functor.obj[a], g.functor.obj[a]).to_vec()
            }
        },
        |lvl, chosen| {
            let natural = checks_at[lvl].iter().all(|&m| {
                let (x, y) = (base.source(m), base.target(m));
                d.base.compose(component(chosen, y), f.functor.mor[m])
                    == d.base.compose(g.functor.mor[m], component(chosen, x))
            });
            natural
                && tensor_at[lvl].iter().all(|&(x, y, xy)| {
                    d.tensor_m(component(chosen, x), component(chosen, y)) == Some(component(chosen, xy))
                })
        },
        |chosen| {
            let mut comps = vec![0; order.len()];
            for (i, &a) in order.iter().enumerate() {
                comps[a] = chosen[i];
            }
            out.push(comps);
            true
        },
    )?;
    Ok(out)
}

/// `StrSMHom(C, D)`: strict SM functors and unital monoidal transformations.
#[derive(Clone, Debug)]
pub struct StrSmHom {
    pub category: Arc<FinCategory>,
    pub functors: Vec<StrictSMFunctor>,
    pub transformations: Vec<(usize, usize, Vec<Mor>)>,
}

pub fn strict_sm_hom(c: &Arc<PermCategory>, d: &Arc<PermCategory>, budget: usize) -> Result<StrSmHom> {
    let functors = enumerate_strict_sm_functors(c, d, budget, |_, _| true)?;
    let mut transformations = Vec::new();
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            for comps in monoidal_transformations(f, g, budget)? {
                transformations.push((i, j, comps));
            }
        }
    }
    let index: HashMap<(usize, usize, Vec<Mor>), Mor> =
        transformations.iter().enumerate().map(|(k, (i, j, c))| ((*i, *j, c.clone()), k)).collect();
    let db = d.base.clone();
    let identities = functors
        .iter()
        .enumerate()
        .map(|(i, f)| index[&(i, i, f.functor.obj.iter().map(|&x| db.identity(x)).collect())])
        .collect();
    let arrows = transformations.iter().map(|(i, j, _)| (*i, *j)).collect();
    let trans = Arc::new(transformations.clone());
    let category = FinCategory::from_rule(functors.len(), arrows, identities, move |g, f| {
        let (s, _, fc) = &trans[f];
        let (_, t, gc) = &trans[g];
        let comps = fc.iter().zip(gc).map(|(&x, &y)| db.compose(y, x)).collect();
        index[&(*s, *t, comps)]
    });
    Ok(StrSmHom { category: Arc::new(category), functors, transformations })
}

/// The chaotic permutative category on the objects of `C`, with its
/// identity-on-objects inclusion.
pub fn chaotic_perm(c: &Arc<PermCategory>) -> (Arc<PermCategory>, StrictSMFunctor) {
    let n = c.base.object_count();
    let keyed = Keyed::build(
        (0..n).collect::<Vec<Ob>>(),
        |_, _| vec![()],
        |_| (),
        |_, _, _, _, _| (),
    );
    let perm = KeyedPerm { keyed: &keyed, unit: c.unit, bound: c.bound }.build(
        |&a, &b| c.tensor(a, b),
        |_, _, _, _| (),
        |_, _| (),
        Generators { objects: c.generators.objects.clone(), morphisms: Vec::new() },
    );
    let perm = Arc::new(perm);
    let base = &*c.base;
    let mor = base
        .morphisms()
        .map(|m| keyed.morphism(base.source(m), base.target(m), &()).expect("chaotic hom"))
        .collect();
    let iota = StrictSMFunctor::new(c.clone(), perm.clone(), (0..n).collect(), mor);
    (perm, iota)
}

/// The factorization `X → P_F → Y` of a strict SM functor.
#[derive(Clone, Debug)]
pub struct MappingPath {
    pub path: Arc<PermCategory>,
    /// Objects `(y, A, B)` with `y: F(A) ≅ B`.
    pub objects: Vec<(Mor, Ob, Ob)>,
    pub include: StrictSMFunctor,
    pub project: StrictSMFunctor,
}

pub fn mapping_path_factorize(f: &StrictSMFunctor) -> MappingPath {
    let (x, y) = (f.dom.clone(), f.cod.clone());
    let (xb, yb) = (x.base.clone(), y.base.clone());
    let fo = f.functor.obj.clone();
    let fm = f.functor.mor.clone();
    let mut objects = Vec::new();
    for a in xb.objects() {
        for b in yb.objects() {
            for &u in yb.hom(fo[a], b) {
                if yb.is_iso(u) {
                    objects.push((u, a, b));
                }
            }
        }
    }
    let (xb2, yb2, fm2) = (xb.clone(), yb.clone(), fm.clone());
    let keyed = Keyed::build(
        objects.clone(),
        move |&(u, a, b), &(u2, a2, b2)| {
            let mut out = Vec::new();
            for &ma in xb2.hom(a, a2) {
                for &mb in yb2.hom(b, b2) {
                    if yb2.compose(mb, u) == yb2.compose(u2, fm2[ma]) {
                        out.push((ma, mb));
                    }
                }
            }
            out
        },
        |&(_, a, b)| (xb.identity(a), yb.identity(b)),
        {
            let (xb, yb) = (xb.clone(), yb.clone());
            move |&(ga, gb), &(fa, fb), _, _, _| (xb.compose(ga, fa), yb.compose(gb, fb))
        },
    );
    let unit = (yb.identity(y.unit), x.unit, y.unit);
    let (xt, yt) = (x.clone(), y.clone());
    let perm = KeyedPerm { keyed: &keyed, unit, bound: x.bound.or(y.bound) }.build(
        |&(u, a, b), &(u2, a2, b2)| Some((yt.tensor_m(u, u2)?, xt.tensor(a, a2)?, yt.tensor(b, b2)?)),
        |&(fa, fb), &(ga, gb), _, _| (xt.tensor_m(fa, ga).expect("tensor"), yt.tensor_m(fb, gb).expect("tensor")),
        |&(_, a, b), &(_, a2, b2)| (xt.symmetry(a, a2).expect("symmetry"), yt.symmetry(b, b2).expect("symmetry")),
        Generators { objects: (0..objects.len()).collect(), morphisms: Vec::new() },
    );
    let path = Arc::new(perm);
    let inc_obj = xb
        .objects()
        .map(|a| keyed.object(&(yb.identity(fo[a]), a, fo[a])).expect("included object"))
        .collect();
    let inc_mor = xb
        .morphisms()
        .map(|m| {
            let (a, a2) = (xb.source(m), xb.target(m));
            let s = keyed.object(&(yb.identity(fo[a]), a, fo[a])).unwrap();
            let t = keyed.object(&(yb.identity(fo[a2]), a2, fo[a2])).unwrap();
            keyed.morphism(s, t, &(m, fm[m])).expect("included morphism")
        })
        .collect();
    let include = StrictSMFunctor::new(x.clone(), path.clone(), inc_obj, inc_mor);
    let proj_obj = objects.iter().map(|&(_, _, b)| b).collect();
    let proj_mor = keyed.morphisms.iter().map(|(_, _, (_, mb))| *mb).collect();
    let project = StrictSMFunctor::new(path.clone(), y.clone(), proj_obj, proj_mor);
    MappingPath { path, objects, include, project }
}

/// The cotensor `[A, D]` with pointwise tensor and symmetry.
#[derive(Clone, Debug)]
pub struct Cotensor {
    pub perm: Arc<PermCategory>,
    pub functors: FunctorCategory,
}

pub fn cotensor_perm(a: &Arc<FinCategory>, d: &Arc<PermCategory>, budget: usize) -> Result<Cotensor> {
    let fc = functor_category(a, &d.base, budget)?;
    let db = &*d.base;
    let n = fc.functors.len();
    let obj_index: HashMap<(Vec<Ob>, Vec<Mor>), Ob> =
        fc.functors.iter().enumerate().map(|(i, f)| ((f.obj.clone(), f.mor.clone()), i)).collect();
    let trans_index: HashMap<(usize, usize, Vec<Mor>), Mor> =
        fc.transformations.iter().enumerate().map(|(k, (i, j, c))| ((*i, *j, c.clone()), k)).collect();
    let mut tensor_ob = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            let (f, g) = (&fc.functors[i], &fc.functors[j]);
            let obj: Option<Vec<Ob>> = f.obj.iter().zip(&g.obj).map(|(&x, &y)| d.tensor(x, y)).collect();
            let mor: Option<Vec<Mor>> = f.mor.iter().zip(&g.mor).map(|(&x, &y)| d.tensor_m(x, y)).collect();
            if let (Some(obj), Some(mor)) = (obj, mor) {
                if let Some(&k) = obj_index.get(&(obj, mor)) {
                    tensor_ob.insert((i, j), k);
                }
            }
        }
    }
    let mut tensor_mor = HashMap::new();
    for (p, (s1, t1, c1)) in fc.transformations.iter().enumerate() {
        for (q, (s2, t2, c2)) in fc.transformations.iter().enumerate() {
            let (Some(&s), Some(&t)) = (tensor_ob.get(&(*s1, *s2)), tensor_ob.get(&(*t1, *t2))) else { continue };
            let comps: Option<Vec<Mor>> = c1.iter().zip(c2).map(|(&x, &y)| d.tensor_m(x, y)).collect();
            if let Some(&k) = comps.and_then(|c| trans_index.get(&(s, t, c))) {
                tensor_mor.insert((p, q), k);
            }
        }
    }
    let mut gamma = HashMap::new();
    for (&(i, j), &ij) in &tensor_ob {
        let Some(&ji) = tensor_ob.get(&(j, i)) else { continue };
        let comps: Option<Vec<Mor>> =
            fc.functors[i].obj.iter().zip(&fc.functors[j].obj).map(|(&x, &y)| d.symmetry(x, y)).collect();
        if let Some(&k) = comps.and_then(|c| trans_index.get(&(ij, ji, c))) {
            gamma.insert((i, j), k);
        }
    }
    let unit_obj = vec![d.unit; a.object_count()];
    let unit_mor = vec![db.identity(d.unit); a.morphism_count()];
    let unit = obj_index[&(unit_obj, unit_mor)];
    let perm = PermCategory {
        base: fc.category.clone(),
        tensor_ob,
        tensor_mor,
        unit,
        gamma,
        bound: d.bound,
        generators: Generators { objects: (0..n).collect(), morphisms: (0..fc.transformations.len()).collect() },
    };
    Ok(Cotensor { perm: Arc::new(perm), functors: fc })
}

/// Quasi-inverse data in `Perm`: unital `G`, unital monoidal isos
/// `η: id ≅ GF` and `ε: FG ≅ id`.
#[derive(Clone, Debug)]
pub struct MonoidalEquivalence {
    pub inverse: Functor,
    pub unit: NatTrans,
    pub counit: NatTrans,
}

fn unital_isos(f: &Functor, g: &Functor, unit: Ob, budget: &mut usize) -> Result<Vec<Vec<Mor>>> {
    let all = crate::fincat::natural_transformations(f, g, budget)?;
    let d = &*f.cod;
    Ok(all
        .into_iter()
        .filter(|c| c.iter().all(|&m| d.is_iso(m)) && d.is_identity(c[unit]))
        .collect())
}

/// `λ_G(a, b) = G(ε_a ⊗ ε_b) ∘ η_{Ga ⊗ Gb}: Ga ⊗ Gb → G(a ⊗ b)`.
fn lambda_g(
    x: &PermCategory,
    y: &PermCategory,
    g: &Functor,
    eta: &[Mor],
    eps: &[Mor],
    a: Ob,
    b: Ob,
) -> Option<Mor> {
    let gab = x.tensor(g.obj[a], g.obj[b])?;
    let e = y.tensor_m(eps[a], eps[b])?;
    x.base.try_compose(g.mor[e], eta[gab])
}

fn monoidal_conditions_hold(x: &PermCategory, y: &PermCategory, f: &Functor, g: &Functor, eta: &[Mor], eps: &[Mor]) -> bool {
    // η_{a⊗b} = λ_G(Fa, Fb) ∘ (η_a ⊗ η_b)
    for (&(a, b), &ab) in &x.tensor_ob {
        let Some(lam) = lambda_g(x, y, g, eta, eps, f.obj[a], f.obj[b]) else { return false };
        let Some(t) = x.tensor_m(eta[a], eta[b]) else { return false };
        if x.base.try_compose(lam, t) != Some(eta[ab]) {
            return false;
        }
    }
    // ε_{a⊗b} ∘ F(λ_G(a, b)) = ε_a ⊗ ε_b
    for (&(a, b), &ab) in &y.tensor_ob {
        let Some(lam) = lambda_g(x, y, g, eta, eps, a, b) else { return false };
        let Some(t) = y.tensor_m(eps[a], eps[b]) else { return false };
        if y.base.try_compose(eps[ab], f.mor[lam]) != Some(t) {
            return false;
        }
    }
    true
}

/// Exhaustive search for monoidal quasi-inverse data of a strict SM functor.
pub fn find_monoidal_equivalence(f: &StrictSMFunctor, budget: usize) -> Result<Option<MonoidalEquivalence>> {
    let (x, y) = (&*f.dom, &*f.cod);
    let candidates = FunctorSearch::new(&y.base, &x.base).budget(budget).fix_object(y.unit, x.unit).all()?;
    let mut remaining = budget;
    for (o, m) in candidates {
        let g = Functor::new(y.base.clone(), x.base.clone(), o, m);
        let gf = g.after(&f.functor);
        let fg = f.functor.after(&g);
        let id_x = Functor::identity(x.base.clone());
        let id_y = Functor::identity(y.base.clone());
        let etas = unital_isos(&id_x, &gf, x.unit, &mut remaining)?;
        if etas.is_empty() {
            continue;
        }
        let epss = unital_isos(&fg, &id_y, y.unit, &mut remaining)?;
        for eta in &etas {
            for eps in &epss {
                if monoidal_conditions_hold(x, y, &f.functor, &g, eta, eps) {
                    return Ok(Some(MonoidalEquivalence {
                        unit: NatTrans { source: id_x.clone(), target: gf.clone(), components: eta.clone() },
                        counit: NatTrans { source: fg.clone(), target: id_y.clone(), components: eps.clone() },
                        inverse: g,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Exhaustive search for a unital section `G` with `FG = id` and a unital
/// monoidal iso `η: id ≅ GF`.
pub fn find_monoidal_section(f: &StrictSMFunctor, budget: usize) -> Result<Option<MonoidalEquivalence>> {
    let (x, y) = (&*f.dom, &*f.cod);
    let fo = &f.functor.obj;
    let fm = &f.functor.mor;
    let mut search = FunctorSearch::new(&y.base, &x.base).budget(budget).fix_object(y.unit, x.unit);
    for b in y.base.objects() {
        search = search.restrict_object(b, |a| fo[a] == b);
    }
    let search = search.morphism_hook(|m, _, mor| fm[mor[m].unwrap()] == m);
    let candidates = search.all()?;
    let mut remaining = budget;
    for (o, m) in candidates {
        let g = Functor::new(y.base.clone(), x.base.clone(), o, m);
        let gf = g.after(&f.functor);
        let id_x = Functor::identity(x.base.clone());
        let id_y = Functor::identity(y.base.clone());
        let eps: Vec<Mor> = y.base.objects().map(|b| y.base.identity(b)).collect();
        for eta in unital_isos(&id_x, &gf, x.unit, &mut remaining)? {
            if monoidal_conditions_hold(x, y, &f.functor, &g, &eta, &eps) {
                return Ok(Some(MonoidalEquivalence {
                    unit: NatTrans { source: id_x.clone(), target: gf.clone(), components: eta },
                    counit: NatTrans { source: f.functor.after(&g), target: id_y, components: eps },
                    inverse: g,
                }));
            }
        }
    }
    Ok(None)
}

/// Witness that an underlying equivalence exists, ignoring monoidal data.
pub fn underlying_equivalence(f: &StrictSMFunctor) -> Result<bool> {
    Ok(equivalence_witness(&f.functor)?.is_some())
}

/// Serialized permutative category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermJson {
    #[serde(flatten)]
    pub category: CategoryJson,
    pub tensor_ob: Vec<[Ob; 3]>,
    pub tensor_mor: Vec<[Mor; 3]>,
    pub unit: Ob,
    pub gamma: Vec<[usize; 3]>,
    pub bound: Option<usize>,
    pub generators: Generators,
}

impl PermJson {
    pub fn from_perm(p: &PermCategory) -> Self {
        let mut tensor_ob: Vec<[usize; 3]> = p.tensor_ob.iter().map(|(&(a, b), &c)| [a, b, c]).collect();
        tensor_ob.sort_unstable();
        let mut tensor_mor: Vec<[usize; 3]> = p.tensor_mor.iter().map(|(&(a, b), &c)| [a, b, c]).collect();
        tensor_mor.sort_unstable();
        let mut gamma: Vec<[usize; 3]> = p.gamma.iter().map(|(&(a, b), &c)| [a, b, c]).collect();
        gamma.sort_unstable();
        PermJson {
            category: CategoryJson::from_category(&p.base),
            tensor_ob,
            tensor_mor,
            unit: p.unit,
            gamma,
            bound: p.bound,
            generators: p.generators.clone(),
        }
    }

    pub fn to_perm(&self) -> Result<PermCategory> {
        let base = Arc::new(self.category.to_category()?);
        let (n, m) = (base.object_count(), base.morphism_count());
        let check = |field: &str, i: usize, ok: bool| -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::Schema { path: format!("{field}[{i}]"), message: "id out of range".into() })
            }
        };
        for (i, t) in self.tensor_ob.iter().enumerate() {
            check("tensor_ob", i, t.iter().all(|&x| x < n))?;
        }
        for (i, t) in self.tensor_mor.iter().enumerate() {
            check("tensor_mor", i, t.iter().all(|&x| x < m))?;
        }
        for (i, t) in self.gamma.iter().enumerate() {
            check("gamma", i, t[0] < n && t[1] < n && t[2] < m)?;
        }
        check("unit", 0, self.unit < n)?;
        Ok(PermCategory {
            base,
            tensor_ob: self.tensor_ob.iter().map(|t| ((t[0], t[1]), t[2])).collect(),
            tensor_mor: self.tensor_mor.iter().map(|t| ((t[0], t[1]), t[2])).collect(),
            unit: self.unit,
            gamma: self.gamma.iter().map(|t| ((t[0], t[1]), t[2])).collect(),
            bound: self.bound,
            generators: self.generators.clone(),
        })
    }
}

/// The chain `0 ≤ 1 ≤ … ≤ n-1` with tensor `max` and unit 0.
pub fn chain_max(n: usize) -> PermCategory {
    let objects: Vec<usize> = (0..n).collect();
    let keyed = Keyed::build(
        objects.clone(),
        |&a, &b| if a <= b { vec![()] } else { Vec::new() },
        |_| (),
        |_, _, _, _, _| (),
    );
    KeyedPerm { keyed: &keyed, unit: 0, bound: None }.build(
        |&a, &b| Some(a.max(b)),
        |_, _, _, _| (),
        |_, _| (),
        Generators { objects, morphisms: Vec::new() },
    )
}

/// Monoid homomorphisms between two monoid tables, as object maps.
pub fn monoid_homomorphisms(from: &[Vec<usize>], to: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let (n, m) = (from.len(), to.len());
    let mut out = Vec::new();
    let total = m.pow(n as u32);
    for code in 0..total {
        let mut map = vec![0; n];
        let mut c = code;
        for slot in map.iter_mut().rev() {
            *slot = c % m;
            c /= m;
        }
        if map[0] != 0 {
            continue;
        }
        let ok = (0..n).all(|a| (0..n).all(|b| map[from[a][b]] == to[map[a]][map[b]]));
        if ok {
            out.push(map);
        }
    }
    out
}

/// Strict SM functor between discrete monoid categories from a homomorphism.
pub fn discrete_hom(dom: &Arc<PermCategory>, cod: &Arc<PermCategory>, map: &[usize]) -> StrictSMFunctor {
    let mor = dom.base.morphisms().map(|i| cod.base.identity(map[dom.base.source(i)])).collect();
    StrictSMFunctor::new(dom.clone(), cod.clone(), map.to_vec(), mor)
}

/// The set of ids that occur as symmetry components.
pub fn symmetry_morphisms(p: &PermCategory) -> HashSet<Mor> {
    p.gamma.values().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{discrete as disc, interval, is_equivalence, is_isofibration, validate_category};

    fn z2() -> Arc<PermCategory> {
        Arc::new(discrete_monoid(&commutative_monoids()[1].1))
    }

    #[test]
    fn monoids_are_commutative_and_associative() {
        for (name, t) in commutative_monoids() {
            let n = t.len();
            for a in 0..n {
                assert_eq!(t[0][a], a, "{name}");
                for b in 0..n {
                    assert_eq!(t[a][b], t[b][a], "{name}");
                    for c in 0..n {
                        assert_eq!(t[t[a][b]][c], t[a][t[b][c]], "{name}");
                    }
                }
            }
            assert!(check_permutative(&discrete_monoid(&t)).is_ok());
        }
    }

    #[test]
    fn broken_symmetry_is_caught() {
        let (e, _) = chaotic_perm(&z2());
        let mut bad = (*e).clone();
        // Send γ(1,1) to something that is not its own inverse's partner:
        // replace the symmetry components at (0,1) by an identity of the
        // wrong object.
        let wrong = bad.base.identity(0);
        bad.gamma.insert((0, 1), wrong);
        assert!(!check_permutative(&bad).is_ok());
    }

    #[test]
    fn strict_functor_checks() {
        let p = z2();
        assert!(check_strict_sm_functor(&StrictSMFunctor::identity(p.clone())).is_ok());
        let bad = StrictSMFunctor::new(p.clone(), p.clone(), vec![1, 1], vec![1, 1]);
        let r = check_strict_sm_functor(&bad);
        assert!(r.violations.iter().any(|v| v.rule == "unit-preserved"));
    }

    #[test]
    fn strict_hom_examples() {
        let trivial = Arc::new(discrete_monoid(&commutative_monoids()[0].1));
        let h = strict_sm_hom(&trivial, &z2(), 10_000).unwrap();
        assert_eq!(h.category.object_count(), 1);
        let h = strict_sm_hom(&z2(), &z2(), 10_000).unwrap();
        assert_eq!(h.category.object_count(), 2);
        assert!(validate_category(&h.category).is_ok());
    }

    #[test]
    fn chaotic_examples() {
        let (e, iota) = chaotic_perm(&z2());
        assert_eq!((e.base.object_count(), e.base.morphism_count()), (2, 4));
        assert!(check_permutative(&e).is_ok());
        assert!(check_strict_sm_functor(&iota).is_ok());
        let t = Functor::to_terminal(e.base.clone());
        assert!(is_equivalence(&t).unwrap() && is_isofibration(&t));
    }

    #[test]
    fn mapping_path_examples() {
        let p = z2();
        let mp = mapping_path_factorize(&StrictSMFunctor::identity(p.clone()));
        assert_eq!(mp.path.base.object_count(), 2);
        assert!(check_permutative(&mp.path).is_ok());
        let (e, _) = chaotic_perm(&p);
        let trivial = Arc::new(discrete_monoid(&commutative_monoids()[0].1));
        let to_one = StrictSMFunctor::new(e.clone(), trivial.clone(), vec![0, 0], vec![0; 4]);
        let mp = mapping_path_factorize(&to_one);
        assert_eq!(mp.path.base.object_count(), 2);
        assert!(is_isofibration(&mp.project.functor));
        assert!(is_equivalence(&mp.include.functor).unwrap());
        assert!(mp.project.after(&mp.include).functor.same_as(&to_one.functor));
        let unit_map = StrictSMFunctor::new(trivial, p, vec![0], vec![0]);
        let mp = mapping_path_factorize(&unit_map);
        assert_eq!(mp.path.base.object_count(), 1);
    }

    #[test]
    fn cotensor_examples() {
        let p = z2();
        let pt = Arc::new(crate::fincat::point());
        let c = cotensor_perm(&pt, &p, 10_000).unwrap();
        assert_eq!(c.perm.base.object_count(), 2);
        assert!(check_permutative(&c.perm).is_ok());
        let c = cotensor_perm(&Arc::new(disc(2)), &p, 10_000).unwrap();
        assert_eq!(c.perm.base.object_count(), 4);
        let c = cotensor_perm(&Arc::new(interval()), &p, 10_000).unwrap();
        assert_eq!(c.perm.base.object_count(), 2);
        assert!(check_permutative(&c.perm).is_ok());
    }

    #[test]
    fn equivalence_characterizations_on_chaotic() {
        let p = z2();
        let (e, iota) = chaotic_perm(&p);
        let trivial = Arc::new(discrete_monoid(&commutative_monoids()[0].1));
        let to_one = StrictSMFunctor::new(e.clone(), trivial.clone(), vec![0, 0], vec![0; 4]);
        assert!(find_monoidal_equivalence(&to_one, 100_000).unwrap().is_some());
        assert!(find_monoidal_section(&to_one, 100_000).unwrap().is_some());
        assert!(find_monoidal_equivalence(&iota, 100_000).unwrap().is_none());
    }

    #[test]
    fn permutation_iso_on_discrete_is_identity() {
        let p = z2();
        let m = p.permutation_iso(&[1, 0, 1], &[2, 0, 1]).unwrap();
        assert!(p.base.is_identity(m));
    }
}
