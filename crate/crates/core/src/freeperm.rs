//! Truncated free permutative categories `S(C)`, the completion `Pᵉ`
//! with its fold functor `λ_P`, and extension of lax symmetric monoidal
//! functors to strict ones.

use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{FinCategory, Keyed};
use crate::gammaskel::{enumerate_unbased_maps, permutations, symmetry as block_swap, UnbasedMap};
use crate::permcat::{enumerate_strict_sm_functors, check_strict_sm_functor, Generators, KeyedPerm, PermCategory, StrictSMFunctor};
use crate::{CheckReport, Error, Functor, Mor, Ob, Result};

/// All tuples picking one element from each list.
pub(crate) fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::with_capacity(lists.len())];
    for list in lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for prefix in &out {
            for x in list {
                let mut p = prefix.clone();
                p.push(x.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// All words over `alphabet` of length at most `max_len`, shortest first.
pub(crate) fn words(alphabet: &[Ob], max_len: usize) -> Vec<Vec<Ob>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &a in alphabet {
                let mut v: Vec<Ob> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Morphism data of `S(C)`: a permutation (`sigma[i]` is the target
/// position of source position `i`) and components `x_i → y_{σ(i)}`.
pub type FreeMor = (Vec<usize>, Vec<Mor>);

pub struct FreePerm {
    pub generators: Arc<FinCategory>,
    pub max_len: usize,
    pub keyed: Keyed<Vec<Ob>, FreeMor>,
    pub perm: Arc<PermCategory>,
    /// `ι_C: C → S(C)` onto words of length one.
    pub inclusion: Functor,
}

pub fn free_perm(c: &Arc<FinCategory>, max_len: usize) -> FreePerm {
    let alphabet: Vec<Ob> = c.objects().collect();
    let objects = words(&alphabet, max_len);
    let cc = c.clone();
    let c2 = c.clone();
    let keyed = Keyed::build(
        objects,
        move |x, y| {
            if x.len() != y.len() {
                return Vec::new();
            }
            let mut out = Vec::new();
            for p in permutations(x.len()) {
                let sigma: Vec<usize> = p.values.iter().map(|v| v - 1).collect();
                let lists: Vec<Vec<Mor>> = (0..x.len()).map(|i| cc.hom(x[i], y[sigma[i]]).to_vec()).collect();
                for fs in cartesian(&lists) {
                    out.push((sigma.clone(), fs));
                }
            }
            out
        },
        {
            let c = c.clone();
            move |x| ((0..x.len()).collect(), x.iter().map(|&a| c.identity(a)).collect())
        },
        move |(tau, g), (sigma, f), _, _, _| {
            let comp = sigma.iter().map(|&s| tau[s]).collect();
            let fs = f.iter().zip(sigma).map(|(&fi, &s)| c2.compose(g[s], fi)).collect();
            (comp, fs)
        },
    );
    let generators = Generators {
        objects: alphabet.iter().map(|&a| keyed.object(&vec![a]).expect("length-one word")).collect(),
        morphisms: c
            .morphisms()
            .filter(|&m| !c.is_identity(m))
            .map(|m| {
                let (s, t) = (keyed.object(&vec![c.source(m)]).unwrap(), keyed.object(&vec![c.target(m)]).unwrap());
                keyed.morphism(s, t, &(vec![0], vec![m])).unwrap()
            })
            .collect(),
    };
    let perm = KeyedPerm { keyed: &keyed, unit: Vec::new(), bound: Some(max_len) }.build(
        |x, y| (x.len() + y.len() <= max_len).then(|| [x.as_slice(), y.as_slice()].concat()),
        |(s1, f1), (s2, f2), _, _| {
            let n = s1.len();
            let sigma = s1.iter().copied().chain(s2.iter().map(|&s| s + n)).collect();
            (sigma, [f1.as_slice(), f2.as_slice()].concat())
        },
        |x, y| {
            let (n, m) = (x.len(), y.len());
            let sigma = (0..n).map(|i| m + i).chain(0..m).collect();
            let ids = x.iter().chain(y).map(|&a| c.identity(a)).collect();
            (sigma, ids)
        },
        generators,
    );
    let inclusion = if max_len == 0 {
        // Only the empty word exists; the inclusion is undefined unless C is empty.
        Functor::new(c.clone(), keyed.category.clone(), Vec::new(), Vec::new())
    } else {
        let obj: Vec<Ob> = c.objects().map(|a| keyed.object(&vec![a]).unwrap()).collect();
        let mor = c
            .morphisms()
            .map(|m| keyed.morphism(obj[c.source(m)], obj[c.target(m)], &(vec![0], vec![m])).unwrap())
            .collect();
        Functor::new(c.clone(), keyed.category.clone(), obj, mor)
    };
    FreePerm { generators: c.clone(), max_len, keyed, perm: Arc::new(perm), inclusion }
}

/// `Σ_{σ∈Σ_n} ∏ |C(x_i, y_{σ(i)})|`.
pub fn free_hom_count(c: &FinCategory, x: &[Ob], y: &[Ob]) -> usize {
    if x.len() != y.len() {
        return 0;
    }
    permutations(x.len())
        .iter()
        .map(|p| (0..x.len()).map(|i| c.hom(x[i], y[p.values[i] - 1]).len()).product::<usize>())
        .sum()
}

/// The unique strict SM functor `S(C)≤L → A` restricting to `F` along `ι_C`.
pub fn extend_from_generators(fp: &FreePerm, f: &Functor, a: &Arc<PermCategory>) -> Result<StrictSMFunctor> {
    let c = &*fp.perm.base;
    let tight = |what: String| Error::Truncation(what);
    let mut obj = Vec::with_capacity(c.object_count());
    for (i, word) in fp.keyed.objects.iter().enumerate() {
        let image: Vec<Ob> = word.iter().map(|&x| f.obj[x]).collect();
        obj.push(a.tensor_word(&image).ok_or_else(|| tight(format!("tensor of object {i} undefined in target")))?);
    }
    let mut mor = Vec::with_capacity(c.morphism_count());
    for (m, (_, t, (sigma, fs))) in fp.keyed.morphisms.iter().enumerate() {
        let tgt_word: Vec<Ob> = fp.keyed.objects[*t].iter().map(|&y| f.obj[y]).collect();
        let parts: Vec<Mor> = fs.iter().map(|&fi| f.mor[fi]).collect();
        let tensor = a.tensor_mor_word(&parts).ok_or_else(|| tight(format!("tensor of morphism {m} undefined")))?;
        // `⊗ F(f_i)` lands in the word `(F y_{σ(1)}, …)`; reorder it to `(F y_1, …)`.
        let permuted: Vec<Ob> = sigma.iter().map(|&j| tgt_word[j]).collect();
        let mut perm = vec![0; sigma.len()];
        for (i, &j) in sigma.iter().enumerate() {
            perm[j] = i;
        }
        let swap = a.permutation_iso(&permuted, &perm).ok_or_else(|| tight(format!("symmetry for morphism {m} undefined")))?;
        mor.push(a.base.try_compose(swap, tensor).ok_or_else(|| tight(format!("morphism {m} does not compose")))?);
    }
    Ok(StrictSMFunctor::new(fp.perm.clone(), a.clone(), obj, mor))
}

/// Restriction of a strict SM functor on `S(C)` along `ι_C`.
pub fn restrict_to_generators(fp: &FreePerm, g: &StrictSMFunctor) -> Functor {
    g.functor.after(&fp.inclusion)
}

/// Morphism data of `Pᵉ`: `h: r̲ → s̲` and `f_i: ⊗_{h(j)=i} k_j → l_i`.
pub type CompletionMor = (UnbasedMap, Vec<Mor>);

pub struct Completion {
    pub base: Arc<PermCategory>,
    pub max_len: usize,
    pub keyed: Keyed<Vec<Ob>, CompletionMor>,
    pub perm: Arc<PermCategory>,
    /// Number of `(k⃗, l⃗, h)` triples skipped because a fiber tensor was undefined.
    pub undefined_fibers: usize,
}

/// Reorders the elements of `⊔_i h⁻¹(i)` from increasing order to grouped
/// order: returns `perm` with `perm[k]` the increasing-order position
/// of the `k`-th grouped element, restricted to `within`.
fn grouping(within: &[usize], groups: &[Vec<usize>]) -> Vec<usize> {
    groups
        .iter()
        .flatten()
        .map(|j| within.iter().position(|x| x == j).expect("grouped element"))
        .collect()
}

/// `(⊗ᵢ gᵢ) ∘ can` for tuple data over the source word `k`.
pub fn fold_tuple(p: &PermCategory, k: &[Ob], h: &UnbasedMap, g: &[Mor]) -> Option<Mor> {
    let all: Vec<usize> = (1..=h.dom).collect();
    let groups: Vec<Vec<usize>> = (1..=h.cod).map(|i| h.fiber(i)).collect();
    let can = p.permutation_iso(k, &grouping(&all, &groups))?;
    let tensor = p.tensor_mor_word(g)?;
    p.base.try_compose(tensor, can)
}

pub fn lax_completion(p: &Arc<PermCategory>, max_len: usize, alphabet: &[Ob]) -> Completion {
    let objects = words(alphabet, max_len);
    let pb = p.base.clone();
    let mut undefined = 0;
    let mut morphisms = Vec::new();
    let object_index: HashMap<Vec<Ob>, Ob> = objects.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    for (a, k) in objects.iter().enumerate() {
        for (b, l) in objects.iter().enumerate() {
            for h in enumerate_unbased_maps(k.len(), l.len()) {
                let mut lists = Vec::with_capacity(l.len());
                let mut ok = true;
                for i in 1..=l.len() {
                    let fiber: Vec<Ob> = h.fiber(i).iter().map(|&j| k[j - 1]).collect();
                    match p.tensor_word(&fiber) {
                        Some(src) => lists.push(pb.hom(src, l[i - 1]).to_vec()),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    undefined += 1;
                    continue;
                }
                for fs in cartesian(&lists) {
                    morphisms.push((a, b, (h.clone(), fs)));
                }
            }
        }
    }
    let pc = p.clone();
    let keyed = Keyed::from_parts(
        objects,
        object_index,
        morphisms,
        {
            let pb = pb.clone();
            move |k: &Vec<Ob>| (UnbasedMap::identity(k.len()), k.iter().map(|&a| pb.identity(a)).collect())
        },
        move |(h2, g), (h1, f), k, _l, _m| {
            let h = h2.after(h1);
            let comps = (1..=h.cod)
                .map(|i| {
                    let within = h.fiber(i);
                    let mids = h2.fiber(i);
                    let groups: Vec<Vec<usize>> = mids.iter().map(|&q| h1.fiber(q)).collect();
                    let word: Vec<Ob> = within.iter().map(|&j| k[j - 1]).collect();
                    let can = pc.permutation_iso(&word, &grouping(&within, &groups)).expect("coherence iso");
                    let fs: Vec<Mor> = mids.iter().map(|&q| f[q - 1]).collect();
                    let t = pc.tensor_mor_word(&fs).expect("tensor of components");
                    pc.base.compose(g[i - 1], pc.base.compose(t, can))
                })
                .collect();
            (h, comps)
        },
    );
    let single: Vec<Ob> = alphabet.iter().filter_map(|&a| keyed.object(&vec![a])).collect();
    let perm = KeyedPerm { keyed: &keyed, unit: Vec::new(), bound: Some(max_len) }.build(
        |x, y| (x.len() + y.len() <= max_len).then(|| [x.as_slice(), y.as_slice()].concat()),
        |(h1, f1), (h2, f2), _, _| (h1.plus(h2), [f1.as_slice(), f2.as_slice()].concat()),
        |x, y| (block_swap(x.len(), y.len()), y.iter().chain(x).map(|&a| pb.identity(a)).collect()),
        Generators { objects: single, morphisms: Vec::new() },
    );
    Completion { base: p.clone(), max_len, keyed, perm: Arc::new(perm), undefined_fibers: undefined }
}

impl Completion {
    /// `λ_P: Pᵉ → P`.
    pub fn fold(&self) -> Result<StrictSMFunctor> {
        let p = &*self.base;
        let mut obj = Vec::new();
        for (i, k) in self.keyed.objects.iter().enumerate() {
            obj.push(p.tensor_word(k).ok_or_else(|| Error::Truncation(format!("tensor of object {i}")))?);
        }
        let mut mor = Vec::new();
        for (m, (s, _, (h, f))) in self.keyed.morphisms.iter().enumerate() {
            let k = &self.keyed.objects[*s];
            mor.push(fold_tuple(p, k, h, f).ok_or_else(|| Error::Truncation(format!("fold of morphism {m}")))?);
        }
        Ok(StrictSMFunctor::new(self.perm.clone(), self.base.clone(), obj, mor))
    }

    /// `ι: P → Pᵉ` on the underlying categories, `a ↦ (a)`.
    pub fn inclusion(&self) -> Functor {
        let p = &*self.base.base;
        let obj: Vec<Ob> = p.objects().map(|a| self.keyed.object(&vec![a]).expect("letter in alphabet")).collect();
        let mor = p
            .morphisms()
            .map(|m| self.keyed.morphism(obj[p.source(m)], obj[p.target(m)], &(UnbasedMap::identity(1), vec![m])).unwrap())
            .collect();
        Functor::new(self.base.base.clone(), self.keyed.category.clone(), obj, mor)
    }

    /// The lax structure of `ι`: `(a, b) → (a ⊗ b)`.
    pub fn inclusion_mu(&self, a: Ob, b: Ob) -> Option<Mor> {
        let ab = self.base.tensor(a, b)?;
        let s = self.keyed.object(&vec![a, b])?;
        let t = self.keyed.object(&vec![ab])?;
        self.keyed.morphism(s, t, &(UnbasedMap::new(2, 1, vec![1, 1]), vec![self.base.base.identity(ab)]))
    }

    /// The lax unit of `ι`: `() → (e)`.
    pub fn inclusion_unit(&self) -> Option<Mor> {
        let e = self.base.unit;
        let s = self.keyed.object(&Vec::new())?;
        let t = self.keyed.object(&vec![e])?;
        self.keyed.morphism(s, t, &(UnbasedMap::new(0, 1, Vec::new()), vec![self.base.base.identity(e)]))
    }
}

/// Lax symmetric monoidal functor data `φ: P → D` with
/// `μ(a, b): φa ⊗ φb → φ(a ⊗ b)` and `ε: e → φ(e)`.
#[derive(Clone, Debug)]
pub struct LaxSMFunctor {
    pub dom: Arc<PermCategory>,
    pub cod: Arc<PermCategory>,
    pub functor: Functor,
    pub mu: HashMap<(Ob, Ob), Mor>,
    pub unit: Mor,
}

/// Oplax data `λ(a, b): F(a ⊗ b) → Fa ⊗ Fb`, `ε: F(e) → e`.
#[derive(Clone, Debug)]
pub struct OplaxSMFunctor {
    pub dom: Arc<PermCategory>,
    pub cod: Arc<PermCategory>,
    pub functor: Functor,
    pub lambda: HashMap<(Ob, Ob), Mor>,
    pub counit: Mor,
}

impl LaxSMFunctor {
    /// A strict functor viewed as lax with identity structure maps.
    pub fn from_strict(f: &StrictSMFunctor) -> Self {
        let d = &*f.cod.base;
        let mu = f
            .dom
            .tensor_ob
            .iter()
            .map(|(&(a, b), &ab)| ((a, b), d.identity(f.functor.obj[ab])))
            .collect();
        LaxSMFunctor {
            dom: f.dom.clone(),
            cod: f.cod.clone(),
            functor: f.functor.clone(),
            mu,
            unit: d.identity(f.cod.unit),
        }
    }

    /// Iterated structure map `⊗ φ(k_j) → φ(⊗ k_j)`.
    pub fn mu_word(&self, word: &[Ob]) -> Option<Mor> {
        let (p, d) = (&*self.dom, &*self.cod);
        match word {
            [] => Some(self.unit),
            [a] => Some(d.base.identity(self.functor.obj[*a])),
            [init @ .., last] => {
                let prefix = self.mu_word(init)?;
                let whole = p.tensor_word(init)?;
                let step = d.tensor_m(prefix, d.base.identity(self.functor.obj[*last]))?;
                d.base.try_compose(*self.mu.get(&(whole, *last))?, step)
            }
        }
    }
}

impl OplaxSMFunctor {
    /// The same data read as lax between opposite categories.
    pub fn as_lax_on_opposites(&self) -> LaxSMFunctor {
        let dom = Arc::new(self.dom.opposite());
        let cod = Arc::new(self.cod.opposite());
        let functor = Functor::new(dom.base.clone(), cod.base.clone(), self.functor.obj.clone(), self.functor.mor.clone());
        LaxSMFunctor { dom, cod, functor, mu: self.lambda.clone(), unit: self.counit }
    }
}

/// Unit, associativity and symmetry coherence of lax data, plus naturality of `μ`.
pub fn check_lax(phi: &LaxSMFunctor) -> CheckReport {
    let mut r = phi.functor.validate();
    if !r.is_ok() {
        return r;
    }
    let (p, d) = (&*phi.dom, &*phi.cod);
    let (pb, db) = (&*p.base, &*d.base);
    let (fo, fm) = (&phi.functor.obj, &phi.functor.mor);
    r.check(
        db.source(phi.unit) == d.unit && db.target(phi.unit) == fo[p.unit],
        "unit-typing",
        || format!("ε = {}", phi.unit),
    );
    let mut pairs: Vec<_> = p.tensor_ob.iter().map(|(&k, &v)| (k, v)).collect();
    pairs.sort_unstable();
    for &((a, b), ab) in &pairs {
        let Some(&m) = phi.mu.get(&(a, b)) else {
            r.fail("structure-defined", format!("μ({a},{b}) missing"));
            continue;
        };
        let typed = Some(db.source(m)) == d.tensor(fo[a], fo[b]) && db.target(m) == fo[ab];
        r.check(typed, "structure-typing", || format!("μ({a},{b})"));
    }
    if !r.is_ok() {
        return r;
    }
    let idd = |x: Ob| db.identity(x);
    // Unit: μ(e, a) ∘ (ε ⊗ id) = id and μ(a, e) ∘ (id ⊗ ε) = id.
    for a in pb.objects() {
        let left = d.tensor_m(phi.unit, idd(fo[a])).and_then(|t| db.try_compose(phi.mu[&(p.unit, a)], t));
        let right = d.tensor_m(idd(fo[a]), phi.unit).and_then(|t| db.try_compose(phi.mu[&(a, p.unit)], t));
        r.check(left == Some(idd(fo[a])) && right == Some(idd(fo[a])), "lax-unit", || format!("object {a}"));
    }
    // Associativity.
    for &((a, b), ab) in &pairs {
        for c in pb.objects() {
            let (Some(_), Some(bc)) = (p.tensor(ab, c), p.tensor(b, c)) else { continue };
            let left = d
                .tensor_m(phi.mu[&(a, b)], idd(fo[c]))
                .and_then(|t| db.try_compose(phi.mu[&(ab, c)], t));
            let right = d
                .tensor_m(idd(fo[a]), phi.mu[&(b, c)])
                .and_then(|t| db.try_compose(phi.mu[&(a, bc)], t));
            r.check(left.is_some() && left == right, "lax-associativity", || format!("({a},{b},{c})"));
        }
    }
    // Symmetry: φ(γ) ∘ μ(a, b) = μ(b, a) ∘ γ.
    for &((a, b), _) in &pairs {
        let (Some(g), Some(gd)) = (p.symmetry(a, b), d.symmetry(fo[a], fo[b])) else { continue };
        let left = db.try_compose(fm[g], phi.mu[&(a, b)]);
        let right = db.try_compose(phi.mu[&(b, a)], gd);
        r.check(left.is_some() && left == right, "lax-symmetry", || format!("({a},{b})"));
    }
    // Naturality.
    let mut tensor_pairs: Vec<_> = p.tensor_mor.iter().map(|(&k, &v)| (k, v)).collect();
    tensor_pairs.sort_unstable();
    for &((f, g), fg) in &tensor_pairs {
        let (a, b) = (pb.source(f), pb.source(g));
        let (a2, b2) = (pb.target(f), pb.target(g));
        let left = db.try_compose(fm[fg], phi.mu[&(a, b)]);
        let right = d.tensor_m(fm[f], fm[g]).and_then(|t| db.try_compose(phi.mu[&(a2, b2)], t));
        r.check(left.is_some() && left == right, "lax-natural", || format!("f={f}, g={g}"));
    }
    r
}

/// OL.1–OL.3 for oplax data, checked as lax data between opposites.
pub fn check_oplax(phi: &OplaxSMFunctor) -> CheckReport {
    check_lax(&phi.as_lax_on_opposites())
}

/// `ψ = λ_D ∘ φᵉ: Pᵉ → D`.
pub fn extend_lax_to_strict(phi: &LaxSMFunctor, completion: &Completion) -> Result<StrictSMFunctor> {
    let report = check_lax(phi);
    if !report.is_ok() {
        return Err(Error::Coherence(report.violations[0].to_string()));
    }
    let d = &*phi.cod;
    let (fo, fm) = (&phi.functor.obj, &phi.functor.mor);
    let k = &completion.keyed;
    let mut obj = Vec::with_capacity(k.objects.len());
    for (i, w) in k.objects.iter().enumerate() {
        let image: Vec<Ob> = w.iter().map(|&a| fo[a]).collect();
        obj.push(d.tensor_word(&image).ok_or_else(|| Error::Truncation(format!("image of object {i}")))?);
    }
    let mut mor = Vec::with_capacity(k.morphisms.len());
    for (m, (s, _, (h, f))) in k.morphisms.iter().enumerate() {
        let word = &k.objects[*s];
        let mut g = Vec::with_capacity(f.len());
        for i in 1..=h.cod {
            let fiber: Vec<Ob> = h.fiber(i).iter().map(|&j| word[j - 1]).collect();
            let mu = phi.mu_word(&fiber).ok_or_else(|| Error::Truncation(format!("structure map for morphism {m}")))?;
            g.push(d.base.compose(fm[f[i - 1]], mu));
        }
        let image: Vec<Ob> = word.iter().map(|&a| fo[a]).collect();
        mor.push(fold_tuple(d, &image, h, &g).ok_or_else(|| Error::Truncation(format!("fold of morphism {m}")))?);
    }
    Ok(StrictSMFunctor::new(completion.perm.clone(), phi.cod.clone(), obj, mor))
}

/// Oplax version: the strict extension `(P^op)ᵉ → D^op` of `φ` viewed on opposites.
pub fn extend_oplax_to_strict(phi: &OplaxSMFunctor, max_len: usize) -> Result<(Completion, StrictSMFunctor)> {
    let lax = phi.as_lax_on_opposites();
    let alphabet: Vec<Ob> = lax.dom.base.objects().collect();
    let completion = lax_completion(&lax.dom, max_len, &alphabet);
    let psi = extend_lax_to_strict(&lax, &completion)?;
    Ok((completion, psi))
}

/// Outcome of the universality check for one lax functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCheck {
    pub strict: bool,
    pub restricts: bool,
    /// Strict SM functors `Pᵉ → D` agreeing with `φ` along `ι` and its structure.
    pub agreeing: usize,
    pub equals_candidate: bool,
}

impl ExtensionCheck {
    pub fn passed(&self) -> bool {
        self.strict && self.restricts && self.agreeing == 1 && self.equals_candidate
    }
}

pub fn verify_extension(phi: &LaxSMFunctor, completion: &Completion, budget: usize) -> Result<ExtensionCheck> {
    let psi = extend_lax_to_strict(phi, completion)?;
    let strict = check_strict_sm_functor(&psi).is_ok();
    let iota = completion.inclusion();
    let restricts = psi.functor.after(&iota).same_as(&phi.functor);
    let mut required: HashMap<Mor, Mor> = HashMap::new();
    let pb = &*phi.dom.base;
    for m in pb.morphisms() {
        required.insert(iota.mor[m], phi.functor.mor[m]);
    }
    for (&(a, b), &mu) in &phi.mu {
        if let Some(x) = completion.inclusion_mu(a, b) {
            required.insert(x, mu);
        }
    }
    if let Some(x) = completion.inclusion_unit() {
        required.insert(x, phi.unit);
    }
    let all = enumerate_strict_sm_functors(&completion.perm, &phi.cod, budget, |m, v| {
        required.get(&m).map_or(true, |&want| want == v)
    })?;
    let equals_candidate = all.iter().all(|g| g.functor.same_as(&psi.functor));
    Ok(ExtensionCheck { strict, restricts, agreeing: all.len(), equals_candidate })
}

/// The skeleton of finite sets `0̲, …, K̲` with disjoint union, truncated.
pub fn finite_sets(max: usize) -> (Keyed<usize, UnbasedMap>, PermCategory) {
    let keyed = Keyed::build(
        (0..=max).collect(),
        |&a, &b| enumerate_unbased_maps(a, b),
        |&a| UnbasedMap::identity(a),
        |g, f, _, _, _| g.after(f),
    );
    let perm = KeyedPerm { keyed: &keyed, unit: 0, bound: Some(max) }.build(
        |&a, &b| (a + b <= max).then_some(a + b),
        |f, g, _, _| f.plus(g),
        |&a, &b| block_swap(a, b),
        Generators { objects: vec![1], morphisms: Vec::new() },
    );
    (keyed, perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{discrete, empty, enumerate_functors, interval, point, validate_category};
    use crate::permcat::{chain_max, check_permutative, commutative_monoids, discrete_monoid};

    fn monoid(i: usize) -> Arc<PermCategory> {
        Arc::new(discrete_monoid(&commutative_monoids()[i].1))
    }

    #[test]
    fn free_perm_examples() {
        let fp = free_perm(&Arc::new(point()), 3);
        assert_eq!(fp.perm.base.object_count(), 4);
        let xx = fp.keyed.object(&vec![0, 0]).unwrap();
        assert_eq!(fp.perm.base.hom(xx, xx).len(), 2);
        assert!(check_permutative(&fp.perm).is_ok());
        assert!(validate_category(&fp.perm.base).is_ok());
        let fp = free_perm(&Arc::new(empty()), 3);
        assert_eq!(fp.perm.base.object_count(), 1);
        let i = Arc::new(interval());
        let fp = free_perm(&i, 2);
        let (a, b) = (fp.keyed.object(&vec![0, 0]).unwrap(), fp.keyed.object(&vec![1, 1]).unwrap());
        assert_eq!(fp.perm.base.hom(a, b).len(), 2);
        for (x, wx) in fp.keyed.objects.iter().enumerate() {
            for (y, wy) in fp.keyed.objects.iter().enumerate() {
                assert_eq!(fp.perm.base.hom(x, y).len(), free_hom_count(&i, wx, wy));
            }
        }
        assert!(check_permutative(&fp.perm).is_ok());
    }

    #[test]
    fn extension_examples() {
        let z2 = monoid(1);
        let fp = free_perm(&Arc::new(point()), 3);
        let f = Functor::new(fp.generators.clone(), z2.base.clone(), vec![1], vec![z2.base.identity(1)]);
        let g = extend_from_generators(&fp, &f, &z2).unwrap();
        assert!(check_strict_sm_functor(&g).is_ok());
        assert_eq!(g.functor.obj[fp.keyed.object(&vec![0, 0]).unwrap()], 0);
        let d = Arc::new(discrete(2));
        let fp = free_perm(&d, 2);
        let f = Functor::new(d.clone(), z2.base.clone(), vec![1, 1], vec![z2.base.identity(1); 2]);
        let g = extend_from_generators(&fp, &f, &z2).unwrap();
        assert_eq!(g.functor.obj[fp.keyed.object(&vec![0, 1]).unwrap()], 0);
        let f = Functor::new(d.clone(), z2.base.clone(), vec![0, 1], vec![0, 1]);
        let g = extend_from_generators(&fp, &f, &z2).unwrap();
        assert_eq!(g.functor.obj[fp.keyed.object(&vec![0, 1]).unwrap()], 1);
    }

    #[test]
    fn free_universal_property() {
        let cs = [Arc::new(point()), Arc::new(discrete(2)), Arc::new(interval())];
        for c in &cs {
            let fp = free_perm(c, 3);
            for i in [0, 1, 2, 3, 4] {
                let a = monoid(i);
                let strict = enumerate_strict_sm_functors(&fp.perm, &a, 1_000_000, |_, _| true).unwrap();
                let plain = enumerate_functors(c, &a.base, 1_000_000).unwrap();
                assert_eq!(strict.len(), plain.len());
                for f in &plain {
                    let g = extend_from_generators(&fp, f, &a).unwrap();
                    assert!(restrict_to_generators(&fp, &g).same_as(f));
                    assert_eq!(strict.iter().filter(|s| restrict_to_generators(&fp, s).same_as(f)).count(), 1);
                }
            }
        }
    }

    #[test]
    fn completion_examples() {
        let one = monoid(0);
        let c = lax_completion(&one, 3, &[0]);
        let (a, b) = (c.keyed.object(&vec![0, 0]).unwrap(), c.keyed.object(&vec![0]).unwrap());
        assert_eq!(c.perm.base.hom(a, b).len(), 1);
        let empty = c.keyed.object(&Vec::new()).unwrap();
        assert_eq!(c.perm.base.hom(empty, empty).len(), 1);
        assert_eq!(c.perm.base.hom(b, empty).len(), 0);
        assert!(validate_category(&c.perm.base).is_ok());
        assert!(check_permutative(&c.perm).is_ok());
        let fold = c.fold().unwrap();
        assert!(check_strict_sm_functor(&fold).is_ok());
        for x in c.perm.base.objects() {
            assert!(fold.cod.base.is_identity(fold.functor.mor[c.perm.base.identity(x)]));
        }
    }

    #[test]
    fn completion_over_nontrivial_bases() {
        let z2 = monoid(1);
        let c = lax_completion(&z2, 3, &[0, 1]);
        assert!(validate_category(&c.perm.base).is_ok());
        assert!(check_permutative(&c.perm).is_ok());
        assert!(check_strict_sm_functor(&c.fold().unwrap()).is_ok());
        let (_, sets) = finite_sets(3);
        let sets = Arc::new(sets);
        assert!(check_permutative(&sets).is_ok());
        let c = lax_completion(&sets, 2, &[0, 1]);
        assert!(validate_category(&c.perm.base).is_ok());
        assert!(check_strict_sm_functor(&c.fold().unwrap()).is_ok());
    }

    #[test]
    fn lax_extensions() {
        let z2 = monoid(1);
        let c = lax_completion(&z2, 3, &[0, 1]);
        let id = LaxSMFunctor::from_strict(&StrictSMFunctor::identity(z2.clone()));
        let psi = extend_lax_to_strict(&id, &c).unwrap();
        assert!(psi.functor.same_as(&c.fold().unwrap().functor));
        assert!(verify_extension(&id, &c, 1_000_000).unwrap().passed());

        let one = monoid(0);
        let to_one = StrictSMFunctor::new(z2.clone(), one.clone(), vec![0, 0], vec![0, 0]);
        let lax = LaxSMFunctor::from_strict(&to_one);
        let psi = extend_lax_to_strict(&lax, &c).unwrap();
        assert!(psi.functor.obj.iter().all(|&x| x == 0));
        assert!(verify_extension(&lax, &c, 1_000_000).unwrap().passed());

        // Constant at the top of a chain: a lax functor that is not strict.
        let chain = Arc::new(chain_max(3));
        let top = chain.base.identity(2);
        let unit = chain.base.hom(0, 2)[0];
        let functor = Functor::new(z2.base.clone(), chain.base.clone(), vec![2, 2], vec![top, top]);
        let mu = z2.tensor_ob.keys().map(|&k| (k, top)).collect();
        let phi = LaxSMFunctor { dom: z2.clone(), cod: chain.clone(), functor, mu, unit };
        assert!(check_lax(&phi).is_ok());
        let check = verify_extension(&phi, &c, 1_000_000).unwrap();
        assert!(check.passed(), "{check:?}");
    }

    #[test]
    fn broken_lax_data_is_rejected() {
        let z2 = monoid(1);
        let chain = Arc::new(chain_max(3));
        let functor = Functor::new(z2.base.clone(), chain.base.clone(), vec![0, 2], vec![0, 2]);
        let unit = chain.base.identity(0);
        let mu = z2
            .tensor_ob
            .iter()
            .map(|(&(a, b), &ab)| {
                let s = [0, 2][a].max([0, 2][b]);
                ((a, b), chain.base.hom(s, [0, 2][ab]).first().copied().unwrap_or(0))
            })
            .collect();
        let phi = LaxSMFunctor { dom: z2.clone(), cod: chain, functor, mu, unit };
        assert!(!check_lax(&phi).is_ok());
        let c = lax_completion(&z2, 2, &[0, 1]);
        assert!(matches!(extend_lax_to_strict(&phi, &c), Err(Error::Coherence(_))));
    }

    #[test]
    fn oplax_through_opposites() {
        let chain = Arc::new(chain_max(3));
        let z2 = monoid(1);
        // Constant at the bottom: F(a ⊗ b) = 0 → 0 = Fa ⊗ Fb, counit 0 → 0.
        let functor = Functor::new(z2.base.clone(), chain.base.clone(), vec![0, 0], vec![0, 0]);
        let lambda = z2.tensor_ob.keys().map(|&k| (k, 0)).collect();
        let phi = OplaxSMFunctor { dom: z2.clone(), cod: chain.clone(), functor, lambda, counit: 0 };
        assert!(check_oplax(&phi).is_ok());
        let (completion, psi) = extend_oplax_to_strict(&phi, 2).unwrap();
        assert!(check_strict_sm_functor(&psi).is_ok());
        assert!(psi.functor.after(&completion.inclusion()).same_as(&phi.as_lax_on_opposites().functor));
    }
}
