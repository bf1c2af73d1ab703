//! The Leinster category `𝔏`, the extension `𝔏(X)` of a Γ-category, its
//! Grothendieck construction `∫𝔏(X)` and horizontal localization.
//!
//! A morphism `(h, p): (m₁,…,m_r) → (n₁,…,n_s)` has `h[j]` the source
//! block of target block `j` and `p` a map `⊔ mᵢ → ⊔ nⱼ` (0-based, in
//! block order) with `h(block(p(a))) = block(a)`. This is the family view
//! `φ(i): mᵢ → Σ_{h(j)=i} nⱼ` flattened.

use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{is_equivalence, Keyed, Product};
use crate::freeperm::cartesian;
use crate::gammacat::{segal_check, GammaCategory};
use crate::gammaskel::{block_projection, multiplication, BasedMap, UnbasedMap};
use crate::permcat::{Generators, KeyedPerm, PermCategory, StrictSMFunctor};
use crate::segalnerve::{all_maps, block_sum, block_swap, identity_index, sequences};
use crate::{CheckReport, Error, FinCategory, Functor, Mor, Ob, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeinsterMorphism {
    pub h: Vec<usize>,
    pub p: Vec<usize>,
}

/// `(block, 1-based index)` for each element of `⊔ mᵢ`.
fn fiber(seq: &[usize]) -> Vec<(usize, usize)> {
    seq.iter().enumerate().flat_map(|(i, &m)| (1..=m).map(move |a| (i, a))).collect()
}

fn offsets(seq: &[usize]) -> Vec<usize> {
    let mut out = vec![0; seq.len() + 1];
    for (i, &m) in seq.iter().enumerate() {
        out[i + 1] = out[i] + m;
    }
    out
}

impl LeinsterMorphism {
    /// `g ∘ self`.
    pub fn then(&self, g: &LeinsterMorphism) -> LeinsterMorphism {
        LeinsterMorphism { h: g.h.iter().map(|&c| self.h[c]).collect(), p: self.p.iter().map(|&a| g.p[a]).collect() }
    }

    /// The family view `(h, φ)` with `h: s̲ → r̲` and `φ(i): mᵢ → Σ_{h(j)=i} nⱼ`.
    pub fn family(&self, src: &[usize], tgt: &[usize]) -> (UnbasedMap, Vec<UnbasedMap>) {
        let h = UnbasedMap::new(tgt.len(), src.len(), self.h.iter().map(|&i| i + 1).collect());
        let (fs, ft) = (offsets(src), fiber(tgt));
        let phi = (0..src.len())
            .map(|i| {
                let over: Vec<usize> = (0..tgt.len()).filter(|&j| self.h[j] == i).collect();
                let cod: usize = over.iter().map(|&j| tgt[j]).sum();
                let values = (fs[i]..fs[i + 1])
                    .map(|a| {
                        let (j, b) = ft[self.p[a]];
                        over.iter().take_while(|&&c| c != j).map(|&c| tgt[c]).sum::<usize>() + b
                    })
                    .collect();
                UnbasedMap::new(src[i], cod, values)
            })
            .collect();
        (h, phi)
    }

    /// `ρⱼ ∘ φ(h(j))` as based maps `m_{h(j)}⁺ → nⱼ⁺`.
    pub fn component_maps(&self, src: &[usize], tgt: &[usize]) -> Vec<BasedMap> {
        let (fs, ft) = (offsets(src), fiber(tgt));
        (0..tgt.len())
            .map(|j| {
                let i = self.h[j];
                let values = (fs[i]..fs[i + 1])
                    .map(|a| {
                        let (jj, b) = ft[self.p[a]];
                        if jj == j {
                            b
                        } else {
                            0
                        }
                    })
                    .collect();
                BasedMap { dom: src[i], cod: tgt[j], values }
            })
            .collect()
    }

    /// The total map `(Σ mᵢ)⁺ → (Σ nⱼ)⁺`.
    pub fn total(&self, src: &[usize], tgt: &[usize]) -> BasedMap {
        BasedMap { dom: src.iter().sum(), cod: tgt.iter().sum(), values: self.p.iter().map(|&t| t + 1).collect() }
    }
}

pub fn leinster_homs(src: &[usize], tgt: &[usize]) -> Vec<LeinsterMorphism> {
    let (fs, ft) = (fiber(src), fiber(tgt));
    let mut out = Vec::new();
    for h in all_maps(tgt.len(), src.len()) {
        let choices: Vec<Vec<usize>> =
            fs.iter().map(|&(i, _)| (0..ft.len()).filter(|&t| h[ft[t].0] == i).collect()).collect();
        for p in cartesian(&choices) {
            out.push(LeinsterMorphism { h: h.clone(), p });
        }
    }
    out
}

pub struct Leinster {
    pub keyed: Keyed<Vec<usize>, LeinsterMorphism>,
    pub perm: Arc<PermCategory>,
}

pub fn build_leinster(max_len: usize, max_entry: usize) -> Leinster {
    build_leinster_bounded(max_len, max_entry, None)
}

/// Like [`build_leinster`], keeping only sequences with `Σ mᵢ ≤ max_total`.
pub fn build_leinster_bounded(max_len: usize, max_entry: usize, max_total: Option<usize>) -> Leinster {
    let entries: Vec<usize> = (0..=max_entry).collect();
    let objects: Vec<Vec<usize>> = sequences(&entries, max_len)
        .into_iter()
        .filter(|s| max_total.map_or(true, |t| s.iter().sum::<usize>() <= t))
        .collect();
    let keyed = Keyed::build(
        objects,
        |s, t| leinster_homs(s, t),
        |s| LeinsterMorphism { h: identity_index(s.len()), p: identity_index(s.iter().sum()) },
        |g, f, _, _, _| f.then(g),
    );
    let perm = KeyedPerm { keyed: &keyed, unit: Vec::new(), bound: Some(max_len) }.build_split(
        |a, b| Some([a.as_slice(), b.as_slice()].concat()),
        |f, g, (fs, ft), _| LeinsterMorphism { h: block_sum(&f.h, &g.h, fs.len()), p: block_sum(&f.p, &g.p, ft.iter().sum()) },
        |a, b| LeinsterMorphism { h: block_swap(b.len(), a.len()), p: block_swap(a.iter().sum(), b.iter().sum()) },
        Generators::default(),
    );
    Leinster { keyed, perm: Arc::new(perm) }
}

/// `𝔏(X)(u)` on an object tuple.
pub fn act_objects(x: &GammaCategory, src: &[usize], tgt: &[usize], u: &LeinsterMorphism, xs: &[Ob]) -> Vec<Ob> {
    u.component_maps(src, tgt).iter().enumerate().map(|(j, f)| x.action(f).obj[xs[u.h[j]]]).collect()
}

/// `𝔏(X)(u)` on a morphism tuple.
pub fn act_morphisms(x: &GammaCategory, src: &[usize], tgt: &[usize], u: &LeinsterMorphism, fs: &[Mor]) -> Vec<Mor> {
    u.component_maps(src, tgt).iter().enumerate().map(|(j, f)| x.action(f).mor[fs[u.h[j]]]).collect()
}

/// `𝔏(X)`: fibers `∏ X(mᵢ⁺)` over the Leinster fragment and the functors between them.
pub struct SmExtension {
    pub x: Arc<GammaCategory>,
    pub leinster: Leinster,
    pub fibers: Vec<Product>,
    pub actions: Vec<Functor>,
}

pub fn sm_extension(x: Arc<GammaCategory>, max_len: usize, max_entry: usize) -> Result<SmExtension> {
    sm_extension_bounded(x, max_len, max_entry, None)
}

pub fn sm_extension_bounded(
    x: Arc<GammaCategory>,
    max_len: usize,
    max_entry: usize,
    max_total: Option<usize>,
) -> Result<SmExtension> {
    if max_entry > x.truncation {
        return Err(Error::Truncation(format!("entries up to {max_entry} exceed truncation {}", x.truncation)));
    }
    let leinster = build_leinster_bounded(max_len, max_entry, max_total);
    let k = &leinster.keyed;
    let fibers: Vec<Product> =
        k.objects.iter().map(|s| Product::new(s.iter().map(|&m| x.degrees[m].clone()).collect())).collect();
    let actions = k
        .morphisms
        .iter()
        .map(|(a, b, u)| {
            let (src, tgt) = (&k.objects[*a], &k.objects[*b]);
            let (pa, pb) = (&fibers[*a], &fibers[*b]);
            let obj = pa
                .category
                .objects()
                .map(|o| pb.object(&act_objects(&x, src, tgt, u, &pa.object_components(o))))
                .collect();
            let mor = pa
                .category
                .morphisms()
                .map(|m| pb.morphism(&act_morphisms(&x, src, tgt, u, &pa.morphism_components(m))))
                .collect();
            Functor::new(pa.category.clone(), pb.category.clone(), obj, mor)
        })
        .collect();
    Ok(SmExtension { x, leinster, fibers, actions })
}

impl SmExtension {
    /// `𝔏(X)(id) = id` and `𝔏(X)(g ∘ f) = 𝔏(X)(g) ∘ 𝔏(X)(f)` on all composable pairs.
    pub fn functoriality(&self) -> CheckReport {
        let mut r = CheckReport::default();
        let c = &*self.leinster.keyed.category;
        for a in c.objects() {
            let id = &self.actions[c.identity(a)];
            r.check(id.same_as(&Functor::identity(self.fibers[a].category.clone())), "identity", || format!("object {a}"));
        }
        let mut out_of: Vec<Vec<Mor>> = vec![Vec::new(); c.object_count()];
        for m in c.morphisms() {
            out_of[c.source(m)].push(m);
        }
        for f in c.morphisms() {
            for &g in &out_of[c.target(f)] {
                let gf = c.compose(g, f);
                let ok = self.actions[gf].same_as(&self.actions[g].after(&self.actions[f]));
                r.check(ok, "composition", || format!("g={g}, f={f}"));
            }
        }
        r
    }
}

pub type Cell = (Vec<usize>, Vec<Ob>);
pub type CellMorphism = (LeinsterMorphism, Vec<Mor>);

/// `∫𝔏(X)` with the concatenation tensor and its projection to `𝔏`.
pub struct Grothendieck {
    pub keyed: Keyed<Cell, CellMorphism>,
    pub perm: Arc<PermCategory>,
    pub projection: StrictSMFunctor,
}

pub fn grothendieck_perm(ext: &SmExtension) -> Grothendieck {
    let x = ext.x.clone();
    let lk = &ext.leinster.keyed;
    let mut objects = Vec::new();
    for (a, s) in lk.objects.iter().enumerate() {
        for o in ext.fibers[a].category.objects() {
            objects.push((s.clone(), ext.fibers[a].object_components(o)));
        }
    }
    let homs = |(s, xs): &Cell, (t, ys): &Cell| -> Vec<CellMorphism> {
        let (a, b) = (lk.object(s).expect("index object"), lk.object(t).expect("index object"));
        let mut out = Vec::new();
        for &m in lk.category.hom(a, b) {
            let u = lk.data(m);
            let zs = act_objects(&x, s, t, u, xs);
            let lists: Vec<Vec<Mor>> = zs.iter().zip(ys).zip(t).map(|((&z, &y), &n)| x.degrees[n].hom(z, y).to_vec()).collect();
            for fs in cartesian(&lists) {
                out.push((u.clone(), fs));
            }
        }
        out
    };
    let xc = ext.x.clone();
    let keyed = Keyed::build(
        objects,
        homs,
        |(s, xs)| {
            let id = LeinsterMorphism { h: identity_index(s.len()), p: identity_index(s.iter().sum()) };
            (id, xs.iter().zip(s).map(|(&o, &n)| xc.degrees[n].identity(o)).collect())
        },
        {
            let x = ext.x.clone();
            move |(v, gs), (u, fs), (s, _), (t, _), (w, _)| {
                let moved = act_morphisms(&x, t, w, v, fs);
                let comps = gs.iter().zip(&moved).zip(w).map(|((&g, &f), &n)| x.degrees[n].compose(g, f)).collect();
                let _ = s;
                (u.then(v), comps)
            }
        },
    );
    let xg = ext.x.clone();
    let perm = KeyedPerm { keyed: &keyed, unit: (Vec::new(), Vec::new()), bound: ext.leinster.perm.bound }.build_split(
        |(s, xs), (t, ys)| Some(([s.as_slice(), t.as_slice()].concat(), [xs.as_slice(), ys.as_slice()].concat())),
        |(u, fs), (v, gs), (us, ut), _| {
            let lm = LeinsterMorphism { h: block_sum(&u.h, &v.h, us.0.len()), p: block_sum(&u.p, &v.p, ut.0.iter().sum()) };
            (lm, [fs.as_slice(), gs.as_slice()].concat())
        },
        |(s, xs), (t, ys)| {
            let lm = LeinsterMorphism { h: block_swap(t.len(), s.len()), p: block_swap(s.iter().sum(), t.iter().sum()) };
            let ids = ys.iter().zip(t).chain(xs.iter().zip(s)).map(|(&o, &n)| xg.degrees[n].identity(o)).collect();
            (lm, ids)
        },
        Generators::default(),
    );
    let obj = keyed.objects.iter().map(|(s, _)| lk.object(s).expect("index object")).collect::<Vec<_>>();
    let mor = keyed
        .morphisms
        .iter()
        .map(|(a, b, (u, _))| lk.morphism(obj[*a], obj[*b], u).expect("index morphism"))
        .collect();
    let perm = Arc::new(perm);
    let projection = StrictSMFunctor::new(perm.clone(), ext.leinster.perm.clone(), obj, mor);
    Grothendieck { keyed, perm, projection }
}

/// The collapse model of `L̄X` with `i: X(1⁺) → L̄X`, `ī: L̄X → X(1⁺)`
/// and the localization functor `∫𝔏(X) → L̄X`.
pub struct Localization {
    pub cells: Arc<Vec<Cell>>,
    pub category: Arc<FinCategory>,
    /// `c(n⃗, x⃗) ∈ X(1⁺)` per cell.
    pub collapse: Vec<Ob>,
    pub include: Functor,
    pub retract: Functor,
    pub localize: Functor,
    pub horizontal: usize,
    pub report: CheckReport,
}

/// Chosen preimage under `X((Σnᵢ)⁺) → ∏ X(nᵢ⁺)` with isos `θᵢ: P(z)ᵢ → xᵢ`.
struct Section {
    z: Ob,
    theta: Vec<Mor>,
}

fn segal_components(seq: &[usize]) -> Vec<BasedMap> {
    (0..seq.len()).map(|j| block_projection(seq, j)).collect()
}

/// Prefers a strict preimage, then the least object with the least isos.
fn choose_section(x: &GammaCategory, seq: &[usize], xs: &[Ob]) -> Option<Section> {
    let total: usize = seq.iter().sum();
    let legs = segal_components(seq);
    let image = |z: Ob| -> Vec<Ob> { legs.iter().map(|f| x.action(f).obj[z]).collect() };
    let deg = &x.degrees[total];
    if let Some(z) = deg.objects().find(|&z| image(z) == xs) {
        let theta = xs.iter().zip(seq).map(|(&o, &n)| x.degrees[n].identity(o)).collect();
        return Some(Section { z, theta });
    }
    deg.objects().find_map(|z| {
        let theta: Option<Vec<Mor>> =
            image(z).iter().zip(xs).zip(seq).map(|((&a, &b), &n)| x.degrees[n].find_iso(a, b)).collect();
        theta.map(|theta| Section { z, theta })
    })
}

pub fn localize_horizontal(x: Arc<GammaCategory>, max_len: usize, max_entry: usize) -> Result<Localization> {
    let seg = segal_check(&x)?;
    if !seg.report.is_ok() {
        return Err(Error::NotSegal(seg.report.violations[0].to_string()));
    }
    if max_len == 0 || max_entry == 0 || x.truncation == 0 {
        return Err(Error::Truncation("localization needs the one-term cells ((1), x)".into()));
    }
    let n = x.truncation;
    let ext = sm_extension_bounded(x.clone(), max_len, max_entry.min(n), Some(n))?;
    let groth = grothendieck_perm(&ext);
    let cells = groth.keyed.objects.clone();
    let sections: Vec<Section> = cells
        .iter()
        .map(|(s, xs)| choose_section(&x, s, xs).ok_or_else(|| Error::Coherence(format!("no Segal preimage of {s:?}, {xs:?}"))))
        .collect::<Result<_>>()?;
    let collapse: Vec<Ob> = cells
        .iter()
        .zip(&sections)
        .map(|((s, _), sec)| x.action(&multiplication(s.iter().sum())).obj[sec.z])
        .collect();
    let one = x.degrees[1].clone();
    let (c1, c2, one_h, one_c) = (collapse.clone(), collapse.clone(), one.clone(), one.clone());
    let lbar = Keyed::build(
        (0..cells.len()).collect(),
        move |&a: &usize, &b: &usize| one_h.hom(c1[a], c1[b]).to_vec(),
        move |&a: &usize| one.identity(c2[a]),
        move |g, f, _, _, _| one_c.compose(*g, *f),
    );
    // The localization on a morphism (u, F): lift θ_b⁻¹ ∘ F ∘ 𝔏(X)(u)(θ_a) along the Segal map of the target.
    let gk = &groth.keyed;
    let mut lmor = Vec::with_capacity(gk.morphisms.len());
    let mut horizontal = 0;
    let mut report = CheckReport::default();
    for (a, b, (u, fs)) in gk.morphisms.iter() {
        let ((s, _), (t, _)) = (&cells[*a], &cells[*b]);
        let (sa, sb) = (&sections[*a], &sections[*b]);
        let moved_theta = act_morphisms(&x, s, t, u, &sa.theta);
        let required: Option<Vec<Mor>> = (0..t.len())
            .map(|j| {
                let d = &x.degrees[t[j]];
                let back = d.inverse(sb.theta[j])?;
                d.try_compose(back, d.try_compose(fs[j], moved_theta[j])?)
            })
            .collect();
        let tb: usize = t.iter().sum();
        let start = x.action(&u.total(s, t)).obj[sa.z];
        let legs = segal_components(t);
        let lift = required.and_then(|req| {
            x.degrees[tb].hom(start, sb.z).iter().copied().find(|&w| legs.iter().zip(&req).all(|(f, &r)| x.action(f).mor[w] == r))
        });
        let Some(w) = lift else {
            return Err(Error::Coherence(format!("no lift of cell morphism {a} → {b}")));
        };
        let image = x.action(&multiplication(tb)).mor[w];
        let m = lbar.morphism(*a, *b, &image).expect("collapse morphism");
        let is_horizontal = fs.iter().zip(t).all(|(&f, &n)| x.degrees[n].is_identity(f));
        if is_horizontal {
            horizontal += 1;
            report.check(lbar.category.is_iso(m), "horizontal-invertible", || format!("cell morphism {a} → {b}"));
        }
        lmor.push(m);
    }
    let localize = Functor::new(gk.category.clone(), lbar.category.clone(), (0..cells.len()).collect(), lmor);
    report.absorb(localize.validate());
    let include_obj: Vec<Ob> =
        one_objects(&x).map(|o| gk.object(&(vec![1], vec![o])).expect("one-term cell")).collect();
    let include_mor: Vec<Mor> = x.degrees[1]
        .morphisms()
        .map(|f| {
            let (s, t) = (x.degrees[1].source(f), x.degrees[1].target(f));
            lbar.morphism(include_obj[s], include_obj[t], &f).expect("degree-one morphism")
        })
        .collect();
    let include = Functor::new(x.degrees[1].clone(), lbar.category.clone(), include_obj, include_mor);
    let retract = Functor::new(lbar.category.clone(), x.degrees[1].clone(), collapse.clone(), lbar.morphisms.iter().map(|(_, _, f)| *f).collect());
    report.absorb(include.validate());
    report.absorb(retract.validate());
    report.check(retract.after(&include).same_as(&Functor::identity(x.degrees[1].clone())), "retract-of-include", || {
        "ī ∘ i ≠ id".into()
    });
    report.check(include.is_fully_faithful(), "include-fully-faithful", || "hom-set mismatch".into());
    report.check(include.is_essentially_surjective(), "include-essentially-surjective", || "cell outside the image".into());
    report.check(is_equivalence(&include)?, "include-equivalence", || "no quasi-inverse".into());
    Ok(Localization { cells, category: lbar.category.clone(), collapse, include, retract, localize, horizontal, report })
}

fn one_objects(x: &GammaCategory) -> std::ops::Range<Ob> {
    x.degrees[1].objects()
}

/// Number of cells per index sequence, for reporting.
pub fn cell_census(g: &Grothendieck) -> HashMap<Vec<usize>, usize> {
    let mut out = HashMap::new();
    for (s, _) in g.keyed.objects.iter() {
        *out.entry(s.clone()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gammacat::representable;
    use crate::gammaskel::{block_projection, enumerate_based_maps};
    use crate::permcat::{check_permutative, check_strict_sm_functor, commutative_monoids, discrete_monoid};
    use crate::segalnerve::segal_nerve;

    /// `can ∘ ∏Kᵢ ∘ ∏X(φ(i))` routed through `X((Σ_{h(j)=i} nⱼ)⁺)`.
    fn act_via_fibers(x: &GammaCategory, src: &[usize], tgt: &[usize], u: &LeinsterMorphism, xs: &[Ob]) -> Option<Vec<Ob>> {
        let (_, phi) = u.family(src, tgt);
        let mut out = vec![usize::MAX; tgt.len()];
        for (i, f) in phi.iter().enumerate() {
            if f.cod > x.truncation {
                return None;
            }
            let over: Vec<usize> = (0..tgt.len()).filter(|&j| u.h[j] == i).collect();
            let sizes: Vec<usize> = over.iter().map(|&j| tgt[j]).collect();
            let mid = x.action(&BasedMap::from_unbased(f)).obj[xs[i]];
            for (k, &j) in over.iter().enumerate() {
                out[j] = x.action(&block_projection(&sizes, k)).obj[mid];
            }
        }
        Some(out)
    }

    #[test]
    fn leinster_counts() {
        let l = build_leinster(2, 2);
        let k = &l.keyed;
        let (a, b) = (k.object(&vec![2]).unwrap(), k.object(&vec![1, 1]).unwrap());
        assert_eq!(k.category.hom(a, b).len(), 4);
        let e = k.object(&Vec::new()).unwrap();
        assert_eq!(k.category.hom(e, e).len(), 1);
        let one = k.object(&vec![1]).unwrap();
        assert!(k.category.hom(e, one).is_empty());
        assert_eq!(k.category.hom(k.object(&vec![0]).unwrap(), e).len(), 1);
        assert!(k.category.hom(e, k.object(&vec![0]).unwrap()).is_empty());
        assert!(crate::fincat::validate_category(&k.category).is_ok());
        assert!(check_permutative(&l.perm).is_ok());
    }

    #[test]
    fn family_view_round_trips() {
        let l = build_leinster(2, 2);
        for (a, b, u) in l.keyed.morphisms.iter() {
            let (src, tgt) = (&l.keyed.objects[*a], &l.keyed.objects[*b]);
            let (h, phi) = u.family(src, tgt);
            assert_eq!(h.dom, tgt.len());
            for (i, f) in phi.iter().enumerate() {
                let want: usize = (0..tgt.len()).filter(|&j| u.h[j] == i).map(|j| tgt[j]).sum();
                assert_eq!((f.dom, f.cod), (src[i], want));
            }
        }
    }

    #[test]
    fn extension_of_representables() {
        let g1 = Arc::new(representable(1, 2).unwrap());
        let ext = sm_extension(g1.clone(), 2, 2).unwrap();
        let k = &ext.leinster.keyed;
        assert_eq!(ext.fibers[k.object(&Vec::new()).unwrap()].category.object_count(), 1);
        assert_eq!(ext.fibers[k.object(&vec![1, 1]).unwrap()].category.object_count(), 4);
        assert!(ext.functoriality().is_ok());
        for (a, b, u) in k.morphisms.iter() {
            let (src, tgt) = (&k.objects[*a], &k.objects[*b]);
            let fa = &ext.fibers[*a];
            for o in fa.category.objects() {
                let xs = fa.object_components(o);
                if let Some(oracle) = act_via_fibers(&g1, src, tgt, u, &xs) {
                    assert_eq!(act_objects(&g1, src, tgt, u, &xs), oracle);
                }
            }
        }
    }

    #[test]
    fn partition_morphism_acts_by_projections() {
        let g2 = Arc::new(representable(2, 2).unwrap());
        let ext = sm_extension(g2.clone(), 2, 2).unwrap();
        let k = &ext.leinster.keyed;
        let (a, b) = (k.object(&vec![2]).unwrap(), k.object(&vec![1, 1]).unwrap());
        let part = LeinsterMorphism { h: vec![0, 0], p: vec![0, 1] };
        let m = k.morphism(a, b, &part).unwrap();
        for z in g2.degrees[2].objects() {
            let want: Vec<Ob> = (0..2).map(|j| g2.action(&block_projection(&[1, 1], j)).obj[z]).collect();
            assert_eq!(ext.fibers[b].object_components(ext.actions[m].obj[z]), want);
        }
    }

    #[test]
    fn grothendieck_is_permutative() {
        for n in 0..=2 {
            let x = Arc::new(representable(n, 2).unwrap());
            let g = grothendieck_perm(&sm_extension(x, 2, 2).unwrap());
            let r = check_permutative(&g.perm);
            assert!(r.is_ok(), "n={n}: {:?}", r.violations.first());
            assert!(check_strict_sm_functor(&g.projection).is_ok());
        }
    }

    #[test]
    fn grothendieck_of_gamma_zero_is_leinster() {
        let x = Arc::new(representable(0, 2).unwrap());
        let g = grothendieck_perm(&sm_extension(x, 2, 2).unwrap());
        assert!(g.projection.functor.is_isomorphism());
    }

    #[test]
    fn cell_tensor() {
        let x = Arc::new(representable(1, 2).unwrap());
        let g = grothendieck_perm(&sm_extension(x, 2, 2).unwrap());
        for a in 0..2 {
            for b in 0..2 {
                let (p, q) = (g.keyed.object(&(vec![1], vec![a])).unwrap(), g.keyed.object(&(vec![1], vec![b])).unwrap());
                let pq = g.perm.tensor(p, q).unwrap();
                assert_eq!(g.keyed.objects[pq], (vec![1, 1], vec![a, b]));
            }
        }
        let unit = g.keyed.object(&(Vec::new(), Vec::new())).unwrap();
        assert_eq!(g.perm.unit, unit);
    }

    #[test]
    fn localization_of_z2_nerve() {
        let z2 = Arc::new(discrete_monoid(&commutative_monoids()[1].1));
        let x = Arc::new(segal_nerve(&z2, 3, crate::DEFAULT_BUDGET).unwrap().gamma);
        let loc = localize_horizontal(x, 2, 3).unwrap();
        assert!(loc.report.is_ok(), "{:?}", loc.report.violations.first());
        assert!(loc.horizontal > 0);
        let classes: std::collections::HashSet<Ob> = loc.collapse.iter().copied().collect();
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn localization_of_terminal_is_chaotic() {
        let x = Arc::new(GammaCategory::terminal(2));
        let loc = localize_horizontal(x, 2, 2).unwrap();
        assert!(loc.report.is_ok());
        for a in loc.category.objects() {
            for b in loc.category.objects() {
                assert_eq!(loc.category.hom(a, b).len(), 1);
            }
        }
    }

    #[test]
    fn localization_refuses_non_segal() {
        let x = Arc::new(representable(1, 2).unwrap());
        assert!(matches!(localize_horizontal(x, 2, 2), Err(Error::NotSegal(_))));
        let _ = enumerate_based_maps(1, 1);
    }
}
