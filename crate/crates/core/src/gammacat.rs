//! Γ-categories truncated at a finite degree, representables, the Segal
//! condition, Day convolution and smash precomposition.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::fincat::{discrete, is_equivalence, point, CategoryJson, FunctorJson, Product};
use crate::gammaskel::{delta, enumerate_based_maps, smash, smash_twist, symmetry, BasedMap, Side};
use crate::{CheckReport, Error, FinCategory, Functor, Mor, Ob, Result};

/// A functor `Γop → Cat` restricted to degrees `0..=truncation`.
#[derive(Clone, Debug)]
pub struct GammaCategory {
    pub truncation: usize,
    pub degrees: Vec<Arc<FinCategory>>,
    pub actions: HashMap<BasedMap, Functor>,
}

impl GammaCategory {
    /// Tabulates `action` on every based map between degrees `≤ n`.
    pub fn from_fn(
        truncation: usize,
        degree: impl Fn(usize) -> Arc<FinCategory>,
        mut action: impl FnMut(&BasedMap, &Arc<FinCategory>, &Arc<FinCategory>) -> Functor,
    ) -> Self {
        let degrees: Vec<Arc<FinCategory>> = (0..=truncation).map(degree).collect();
        let mut actions = HashMap::new();
        for n in 0..=truncation {
            for m in 0..=truncation {
                for f in enumerate_based_maps(n, m) {
                    let functor = action(&f, &degrees[n], &degrees[m]);
                    actions.insert(f, functor);
                }
            }
        }
        GammaCategory { truncation, degrees, actions }
    }

    pub fn degree(&self, n: usize) -> &Arc<FinCategory> {
        &self.degrees[n]
    }

    pub fn action(&self, f: &BasedMap) -> &Functor {
        self.actions.get(f).unwrap_or_else(|| panic!("{f} lies outside truncation {}", self.truncation))
    }

    pub fn truncate(&self, n: usize) -> Result<GammaCategory> {
        if n > self.truncation {
            return Err(Error::Truncation(format!("cannot raise truncation {} to {n}", self.truncation)));
        }
        let actions = self
            .actions
            .iter()
            .filter(|(f, _)| f.dom <= n && f.cod <= n)
            .map(|(f, g)| (f.clone(), g.clone()))
            .collect();
        Ok(GammaCategory { truncation: n, degrees: self.degrees[..=n].to_vec(), actions })
    }

    /// The constant Γ-category on `1`.
    pub fn terminal(truncation: usize) -> Self {
        let one = Arc::new(point());
        GammaCategory::from_fn(truncation, |_| one.clone(), |_, a, b| Functor::new(a.clone(), b.clone(), vec![0], vec![0]))
    }
}

/// Checks `X(id) = id` and `X(g ∘ f) = X(g) ∘ X(f)` on every composable pair.
pub fn functoriality_audit(x: &GammaCategory) -> CheckReport {
    let mut r = CheckReport::default();
    let n_max = x.truncation;
    for n in 0..=n_max {
        let id = Functor::identity(x.degrees[n].clone());
        r.check(x.action(&BasedMap::identity(n)).same_as(&id), "identity", || format!("degree {n}"));
        for f in x.actions.keys().filter(|f| f.dom == n) {
            r.absorb(x.actions[f].validate());
        }
    }
    let mut maps: Vec<&BasedMap> = x.actions.keys().collect();
    maps.sort();
    for f in &maps {
        for p in 0..=n_max {
            for g in enumerate_based_maps(f.cod, p) {
                let ok = x.action(&g.after(f)).same_as(&x.action(&g).after(x.action(f)));
                r.check(ok, "composition", || format!("g = {g}, f = {f}"));
            }
        }
    }
    r
}

/// `Γⁿ(k⁺)`: the discrete category on `Γop(n⁺, k⁺)`, objects by rank.
pub fn representable(n: usize, truncation: usize) -> Result<GammaCategory> {
    if n > truncation {
        return Err(Error::Truncation(format!("Γ^{n} needs degree {n} but truncation is {truncation}")));
    }
    let width = |k: usize| (k + 1).pow(n as u32);
    Ok(GammaCategory::from_fn(
        truncation,
        |k| Arc::new(discrete(width(k))),
        |f, a, b| {
            let obj: Vec<Ob> = (0..a.object_count()).map(|r| f.after(&BasedMap::unrank(n, f.dom, r)).rank()).collect();
            Functor::new(a.clone(), b.clone(), obj.clone(), obj)
        },
    ))
}

/// One `(k, l)` comparison of the Segal condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegalEntry {
    pub k: usize,
    pub l: usize,
    pub equivalence: bool,
    pub isomorphism: bool,
}

#[derive(Clone, Debug)]
pub struct SegalReport {
    pub report: CheckReport,
    pub entries: Vec<SegalEntry>,
    pub basepoint_contractible: bool,
}

/// `(X(δ_k), X(δ_l)): X((k+l)⁺) → X(k⁺) × X(l⁺)`.
pub fn segal_functor(x: &GammaCategory, k: usize, l: usize) -> (Product, Functor) {
    let product = Product::new(vec![x.degrees[k].clone(), x.degrees[l].clone()]);
    let legs = [x.action(&delta(k, l, Side::Left)).clone(), x.action(&delta(k, l, Side::Right)).clone()];
    let pairing = product.pairing(&legs);
    (product, pairing)
}

pub fn segal_check(x: &GammaCategory) -> Result<SegalReport> {
    let mut report = CheckReport::default();
    let to_one = Functor::to_terminal(x.degrees[0].clone());
    let basepoint_contractible = is_equivalence(&to_one)?;
    report.check(basepoint_contractible, "basepoint-contractible", || {
        format!("X(0⁺) has {} objects", x.degrees[0].object_count())
    });
    let mut entries = Vec::new();
    for k in 1..x.truncation {
        for l in 1..=x.truncation - k {
            let (_, f) = segal_functor(x, k, l);
            let equivalence = is_equivalence(&f)?;
            let isomorphism = f.is_isomorphism();
            report.check(equivalence, "segal-equivalence", || {
                format!(
                    "({k},{l}): {} objects over {}×{}",
                    x.degrees[k + l].object_count(),
                    x.degrees[k].object_count(),
                    x.degrees[l].object_count()
                )
            });
            entries.push(SegalEntry { k, l, equivalence, isomorphism });
        }
    }
    Ok(SegalReport { report, entries, basepoint_contractible })
}

/// `λ_X(k, l)` together with the product it lands in.
pub fn oplax_restriction_components(x: &GammaCategory, k: usize, l: usize) -> Result<(Product, Functor)> {
    if k + l > x.truncation {
        return Err(Error::Truncation(format!("λ({k},{l}) needs degree {}", k + l)));
    }
    Ok(segal_functor(x, k, l))
}

/// OL.1–OL.3 for the restriction of `X` to `𝒩`, on objects and morphisms.
pub fn check_oplax_restriction(x: &GammaCategory) -> CheckReport {
    let mut r = CheckReport::default();
    let n = x.truncation;
    for m in 0..=n {
        // OL.1: the second leg of λ(0, m) is the identity.
        let leg = x.action(&delta(0, m, Side::Right));
        r.check(leg.same_as(&Functor::identity(x.degrees[m].clone())), "unit", || format!("λ(0,{m})"));
    }
    for k in 0..=n {
        for l in 0..=n - k {
            // OL.2: λ(l, k) ∘ X(γ(k, l)) = twist ∘ λ(k, l), leg by leg.
            let gamma = x.action(&BasedMap::from_unbased(&symmetry(k, l)));
            let ok_left = x.action(&delta(l, k, Side::Left)).after(gamma).same_as(x.action(&delta(k, l, Side::Right)));
            let ok_right = x.action(&delta(l, k, Side::Right)).after(gamma).same_as(x.action(&delta(k, l, Side::Left)));
            r.check(ok_left && ok_right, "symmetry", || format!("({k},{l})"));
            for p in 0..=n - k - l {
                // OL.3: both bracketings project the same three legs.
                let kl_left = x.action(&delta(k, l, Side::Left)).after(x.action(&delta(k + l, p, Side::Left)));
                let k_right = x.action(&delta(k, l + p, Side::Left));
                let mid_a = x.action(&delta(k, l, Side::Right)).after(x.action(&delta(k + l, p, Side::Left)));
                let mid_b = x.action(&delta(l, p, Side::Left)).after(x.action(&delta(k, l + p, Side::Right)));
                let last_a = x.action(&delta(k + l, p, Side::Right));
                let last_b = x.action(&delta(l, p, Side::Right)).after(x.action(&delta(k, l + p, Side::Right)));
                let ok = kl_left.same_as(k_right) && mid_a.same_as(&mid_b) && last_a.same_as(&last_b);
                r.check(ok, "associativity", || format!("({k},{l},{p})"));
            }
        }
    }
    r
}

/// `X(n⁺ ∧ −)`, truncated at `truncation`.
pub fn smash_precompose(x: &GammaCategory, n: usize, truncation: usize) -> Result<GammaCategory> {
    if n * truncation > x.truncation {
        return Err(Error::Truncation(format!(
            "X(n∧−) at degree {truncation} needs X at {} but truncation is {}",
            n * truncation,
            x.truncation
        )));
    }
    let id = BasedMap::identity(n);
    Ok(GammaCategory::from_fn(
        truncation,
        |m| x.degrees[n * m].clone(),
        |f, _, _| x.action(&smash(&id, f)).clone(),
    ))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // Smaller root wins so class representatives are least ids.
        if ra < rb {
            self.0[rb] = ra;
        } else if rb < ra {
            self.0[ra] = rb;
        }
    }
}

/// A generator `(f, x, y)` of the coend, `f: (k l)⁺ → n⁺`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DayElement {
    pub k: usize,
    pub l: usize,
    pub f: usize,
    pub x: usize,
    pub y: usize,
}

/// One degree of `X ∗ Y` as a quotient.
#[derive(Clone, Debug)]
pub struct DayLevel {
    pub n: usize,
    pub category: Arc<FinCategory>,
    /// `(k, l)` cells with object and morphism offsets.
    cells: Vec<(usize, usize, usize, usize)>,
    ob_class: Vec<usize>,
    mor_class: Vec<usize>,
    pub object_reps: Vec<DayElement>,
    pub morphism_reps: Vec<DayElement>,
}

impl DayLevel {
    fn cell(&self, k: usize, l: usize) -> &(usize, usize, usize, usize) {
        self.cells.iter().find(|c| c.0 == k && c.1 == l).expect("cell within bound")
    }

    pub fn object_class(&self, e: &DayElement, x: &GammaCategory, y: &GammaCategory) -> Ob {
        let &(_, _, off, _) = self.cell(e.k, e.l);
        let (nx, ny) = (x.degrees[e.k].object_count(), y.degrees[e.l].object_count());
        self.ob_class[off + (e.f * nx + e.x) * ny + e.y]
    }

    pub fn morphism_class(&self, e: &DayElement, x: &GammaCategory, y: &GammaCategory) -> Mor {
        let &(_, _, _, off) = self.cell(e.k, e.l);
        let (nx, ny) = (x.degrees[e.k].morphism_count(), y.degrees[e.l].morphism_count());
        self.mor_class[off + (e.f * nx + e.x) * ny + e.y]
    }

    /// Every generator of the given kind, in id order.
    fn elements(&self, x: &GammaCategory, y: &GammaCategory, morphisms: bool) -> Vec<DayElement> {
        let mut out = Vec::new();
        for &(k, l, _, _) in &self.cells {
            let (nx, ny) = if morphisms {
                (x.degrees[k].morphism_count(), y.degrees[l].morphism_count())
            } else {
                (x.degrees[k].object_count(), y.degrees[l].object_count())
            };
            let width = (self.n + 1).pow((k * l) as u32);
            for f in 0..width {
                for a in 0..nx {
                    for b in 0..ny {
                        out.push(DayElement { k, l, f, x: a, y: b });
                    }
                }
            }
        }
        out
    }
}

fn day_level(x: &GammaCategory, y: &GammaCategory, bound: usize, n: usize, budget: usize) -> Result<DayLevel> {
    let mut cells = Vec::new();
    let (mut ob_total, mut mor_total) = (0, 0);
    for k in 0..=bound {
        for l in 0..=bound {
            cells.push((k, l, ob_total, mor_total));
            let width = (n + 1).pow((k * l) as u32);
            ob_total += width * x.degrees[k].object_count() * y.degrees[l].object_count();
            mor_total += width * x.degrees[k].morphism_count() * y.degrees[l].morphism_count();
        }
    }
    if ob_total + mor_total > budget {
        return Err(Error::BudgetExceeded { what: format!("coend generators at degree {n}"), budget });
    }
    let cell_of = |k: usize, l: usize| cells[k * (bound + 1) + l];
    let mut ob_uf = UnionFind::new(ob_total);
    let mut mor_uf = UnionFind::new(mor_total);
    for k in 0..=bound {
        for l in 0..=bound {
            let (cx, cy) = (&x.degrees[k], &y.degrees[l]);
            for k2 in 0..=bound {
                for l2 in 0..=bound {
                    let (dx, dy) = (&x.degrees[k2], &y.degrees[l2]);
                    let (_, _, ob_src, mor_src) = cell_of(k, l);
                    let (_, _, ob_dst, mor_dst) = cell_of(k2, l2);
                    for u in enumerate_based_maps(k, k2) {
                        let xu = x.action(&u);
                        for v in enumerate_based_maps(l, l2) {
                            let yv = y.action(&v);
                            let w = smash(&u, &v);
                            for r2 in 0..(n + 1).pow((k2 * l2) as u32) {
                                let f2 = BasedMap::unrank(k2 * l2, n, r2);
                                let r = f2.after(&w).rank();
                                for a in cx.objects() {
                                    for b in cy.objects() {
                                        let lhs = ob_src + (r * cx.object_count() + a) * cy.object_count() + b;
                                        let rhs = ob_dst + (r2 * dx.object_count() + xu.obj[a]) * dy.object_count() + yv.obj[b];
                                        ob_uf.union(lhs, rhs);
                                    }
                                }
                                for a in cx.morphisms() {
                                    for b in cy.morphisms() {
                                        let lhs = mor_src + (r * cx.morphism_count() + a) * cy.morphism_count() + b;
                                        let rhs =
                                            mor_dst + (r2 * dx.morphism_count() + xu.mor[a]) * dy.morphism_count() + yv.mor[b];
                                        mor_uf.union(lhs, rhs);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    // Number classes in order of their least generator.
    let mut ob_class = vec![usize::MAX; ob_total];
    let mut ob_root_index: HashMap<usize, usize> = HashMap::new();
    for i in 0..ob_total {
        let root = ob_uf.find(i);
        let next = ob_root_index.len();
        ob_class[i] = *ob_root_index.entry(root).or_insert(next);
    }
    let mut mor_class = vec![usize::MAX; mor_total];
    let mut mor_root_index: HashMap<usize, usize> = HashMap::new();
    for i in 0..mor_total {
        let root = mor_uf.find(i);
        let next = mor_root_index.len();
        mor_class[i] = *mor_root_index.entry(root).or_insert(next);
    }
    let mut level = DayLevel {
        n,
        category: Arc::new(point()),
        cells: cells.clone(),
        ob_class,
        mor_class,
        object_reps: Vec::new(),
        morphism_reps: Vec::new(),
    };
    let ob_elems = level.elements(x, y, false);
    let mor_elems = level.elements(x, y, true);
    let ob_count = ob_root_index.len();
    let mor_count = mor_root_index.len();
    let mut object_reps: Vec<Option<DayElement>> = vec![None; ob_count];
    for (i, e) in ob_elems.into_iter().enumerate() {
        let c = level.ob_class[i];
        if object_reps[c].is_none() {
            object_reps[c] = Some(e);
        }
    }
    let mut morphism_reps: Vec<Option<DayElement>> = vec![None; mor_count];
    let mut arrows = vec![(usize::MAX, usize::MAX); mor_count];
    let mut table: HashMap<(Mor, Mor), Mor> = HashMap::new();
    for (i, e) in mor_elems.iter().enumerate() {
        let c = level.mor_class[i];
        let (cx, cy) = (&x.degrees[e.k], &y.degrees[e.l]);
        let src = level.object_class(&DayElement { x: cx.source(e.x), y: cy.source(e.y), ..e.clone() }, x, y);
        let tgt = level.object_class(&DayElement { x: cx.target(e.x), y: cy.target(e.y), ..e.clone() }, x, y);
        if arrows[c].0 == usize::MAX {
            arrows[c] = (src, tgt);
            morphism_reps[c] = Some(e.clone());
        } else if arrows[c] != (src, tgt) {
            return Err(Error::NotFinitelyModeled(format!("morphism class {c} has inconsistent endpoints")));
        }
    }
    let mut identities = vec![usize::MAX; ob_count];
    for (i, e) in mor_elems.iter().enumerate() {
        let (cx, cy) = (&x.degrees[e.k], &y.degrees[e.l]);
        if cx.is_identity(e.x) && cy.is_identity(e.y) {
            let ob = level.object_class(&DayElement { x: cx.source(e.x), y: cy.source(e.y), ..e.clone() }, x, y);
            let c = level.mor_class[i];
            if identities[ob] == usize::MAX {
                identities[ob] = c;
            } else if identities[ob] != c {
                return Err(Error::NotFinitelyModeled(format!("object class {ob} has two identities")));
            }
        }
    }
    // Composites available inside a single cell.
    for e in &mor_elems {
        let (cx, cy) = (&x.degrees[e.k], &y.degrees[e.l]);
        for xa in cx.objects() {
            for &gx in cx.hom(cx.target(e.x), xa) {
                for yb in cy.objects() {
                    for &gy in cy.hom(cy.target(e.y), yb) {
                        let g = DayElement { x: gx, y: gy, ..e.clone() };
                        let gf = DayElement { x: cx.compose(gx, e.x), y: cy.compose(gy, e.y), ..e.clone() };
                        let key = (level.morphism_class(&g, x, y), level.morphism_class(e, x, y));
                        let value = level.morphism_class(&gf, x, y);
                        if let Some(old) = table.insert(key, value) {
                            if old != value {
                                return Err(Error::NotFinitelyModeled(format!(
                                    "composite of classes {} and {} is ill-defined",
                                    key.0, key.1
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    for g in 0..mor_count {
        for f in 0..mor_count {
            if arrows[f].1 == arrows[g].0 && !table.contains_key(&(g, f)) {
                return Err(Error::NotFinitelyModeled(format!("classes {g} and {f} have no common representative cell")));
            }
        }
    }
    level.category = Arc::new(FinCategory::from_table(ob_count, arrows, identities, table));
    level.object_reps = object_reps.into_iter().map(|e| e.expect("class has a member")).collect();
    level.morphism_reps = morphism_reps.into_iter().map(|e| e.expect("class has a member")).collect();
    Ok(level)
}

/// `X ∗ Y` at degrees `≤ truncation`, with coend cells `k, l ≤ bound`.
#[derive(Clone, Debug)]
pub struct DayConvolution {
    pub gamma: GammaCategory,
    pub levels: Vec<DayLevel>,
    pub bound: usize,
}

pub fn day_convolve(x: &GammaCategory, y: &GammaCategory, truncation: usize, bound: usize, budget: usize) -> Result<DayConvolution> {
    if bound > x.truncation || bound > y.truncation {
        return Err(Error::Truncation(format!(
            "coend bound {bound} exceeds input truncations {} and {}",
            x.truncation, y.truncation
        )));
    }
    let levels: Vec<DayLevel> = (0..=truncation).map(|n| day_level(x, y, bound, n, budget)).collect::<Result<_>>()?;
    let gamma = GammaCategory::from_fn(
        truncation,
        |n| levels[n].category.clone(),
        |g, a, b| {
            let src = &levels[g.dom];
            let dst = &levels[g.cod];
            let push = |e: &DayElement| {
                let f = BasedMap::unrank(e.k * e.l, g.dom, e.f);
                DayElement { f: g.after(&f).rank(), ..e.clone() }
            };
            let obj = src.object_reps.iter().map(|e| dst.object_class(&push(e), x, y)).collect();
            let mor = src.morphism_reps.iter().map(|e| dst.morphism_class(&push(e), x, y)).collect();
            Functor::new(a.clone(), b.clone(), obj, mor)
        },
    );
    Ok(DayConvolution { gamma, levels, bound })
}

/// Levelwise functors between two Γ-categories plus their checks.
#[derive(Clone, Debug)]
pub struct LevelwiseMap {
    pub components: Vec<Functor>,
    pub report: CheckReport,
}

impl LevelwiseMap {
    pub fn is_isomorphism(&self) -> bool {
        self.report.is_ok() && self.components.iter().all(Functor::is_isomorphism)
    }
}

/// Builds a levelwise map from a formula on generators, checking it is
/// constant on classes, functorial, and natural in based maps.
fn levelwise_from_generators(
    day: &DayConvolution,
    x: &GammaCategory,
    y: &GammaCategory,
    target: &GammaCategory,
    on_object: impl Fn(usize, &DayElement) -> Ob,
    on_morphism: impl Fn(usize, &DayElement) -> Mor,
) -> LevelwiseMap {
    let mut report = CheckReport::default();
    let mut components = Vec::new();
    for (n, level) in day.levels.iter().enumerate() {
        let obj: Vec<Ob> = level.object_reps.iter().map(|e| on_object(n, e)).collect();
        let mor: Vec<Mor> = level.morphism_reps.iter().map(|e| on_morphism(n, e)).collect();
        for e in level.elements(x, y, false) {
            let c = level.object_class(&e, x, y);
            report.check(on_object(n, &e) == obj[c], "well-defined-objects", || format!("degree {n}, {e:?}"));
        }
        for e in level.elements(x, y, true) {
            let c = level.morphism_class(&e, x, y);
            report.check(on_morphism(n, &e) == mor[c], "well-defined-morphisms", || format!("degree {n}, {e:?}"));
        }
        let f = Functor::new(level.category.clone(), target.degrees[n].clone(), obj, mor);
        report.absorb(f.validate());
        components.push(f);
    }
    for (g, action) in &day.gamma.actions {
        let left = target.action(g).after(&components[g.dom]);
        let right = components[g.cod].after(action);
        report.check(left.same_as(&right), "natural", || format!("{g}"));
    }
    LevelwiseMap { components, report }
}

/// Co-Yoneda comparison `Γᵃ ∗ Γᵇ → Γ^{ab}`, `[f, x, y] ↦ f ∘ (x ∧ y)`.
pub fn coyoneda_comparison(day: &DayConvolution, a: usize, b: usize) -> Result<LevelwiseMap> {
    let truncation = day.gamma.truncation;
    let (x, y) = (representable(a, day.bound)?, representable(b, day.bound)?);
    let target = representable(a * b, truncation.max(a * b))?.truncate(truncation)?;
    let value = |n: usize, e: &DayElement| {
        let f = BasedMap::unrank(e.k * e.l, n, e.f);
        let xm = BasedMap::unrank(a, e.k, e.x);
        let ym = BasedMap::unrank(b, e.l, e.y);
        f.after(&smash(&xm, &ym)).rank()
    };
    Ok(levelwise_from_generators(day, &x, &y, &target, value, value))
}

/// Unit comparison `X ∗ Γ¹ → X`, `[f, x, y] ↦ X(f ∘ (id ∧ y))(x)`.
pub fn unit_comparison(day: &DayConvolution, x: &GammaCategory) -> Result<LevelwiseMap> {
    let one = representable(1, day.bound)?;
    let collapse = |n: usize, e: &DayElement| {
        let f = BasedMap::unrank(e.k * e.l, n, e.f);
        let yv = BasedMap::unrank(1, e.l, e.y);
        f.after(&smash(&BasedMap::identity(e.k), &yv))
    };
    let target = x.truncate(day.gamma.truncation)?;
    Ok(levelwise_from_generators(
        day,
        x,
        &one,
        &target,
        |n, e| x.action(&collapse(n, e)).obj[e.x],
        |n, e| x.action(&collapse(n, e)).mor[e.x],
    ))
}

/// Symmetry comparison `X ∗ Y → Y ∗ X`, `[f, x, y] ↦ [f ∘ τ, y, x]`.
pub fn symmetry_comparison(
    day: &DayConvolution,
    swapped: &DayConvolution,
    x: &GammaCategory,
    y: &GammaCategory,
) -> LevelwiseMap {
    let swap = |n: usize, e: &DayElement| {
        let f = BasedMap::unrank(e.k * e.l, n, e.f);
        DayElement { k: e.l, l: e.k, f: f.after(&smash_twist(e.l, e.k)).rank(), x: e.y, y: e.x }
    };
    levelwise_from_generators(
        day,
        x,
        y,
        &swapped.gamma,
        |n, e| swapped.levels[n].object_class(&swap(n, e), y, x),
        |n, e| swapped.levels[n].morphism_class(&swap(n, e), y, x),
    )
}

/// Serialized Γ-category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaJson {
    pub truncation: usize,
    pub degrees: Vec<CategoryJson>,
    pub actions: Vec<ActionJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    pub map: BasedMap,
    pub functor: FunctorJson,
}

impl GammaJson {
    pub fn from_gamma(x: &GammaCategory) -> Self {
        let mut maps: Vec<&BasedMap> = x.actions.keys().collect();
        maps.sort_by_key(|f| (f.dom, f.cod, f.rank()));
        GammaJson {
            truncation: x.truncation,
            degrees: x.degrees.iter().map(|c| CategoryJson::from_category(c)).collect(),
            actions: maps
                .into_iter()
                .map(|f| ActionJson { map: f.clone(), functor: FunctorJson::from_functor(&x.actions[f]) })
                .collect(),
        }
    }

    pub fn to_gamma(&self) -> Result<GammaCategory> {
        let schema = |path: String, message: &str| Error::Schema { path, message: message.into() };
        if self.degrees.len() != self.truncation + 1 {
            return Err(schema("degrees".into(), "expected one category per degree"));
        }
        let degrees: Vec<Arc<FinCategory>> =
            self.degrees.iter().map(|c| c.to_category().map(Arc::new)).collect::<Result<_>>()?;
        let mut actions = HashMap::new();
        for (i, a) in self.actions.iter().enumerate() {
            let f = &a.map;
            if f.dom > self.truncation || f.cod > self.truncation || f.values.len() != f.dom || f.values.iter().any(|&v| v > f.cod) {
                return Err(schema(format!("actions[{i}].map"), "not a based map within truncation"));
            }
            let (obj, mor) = a.functor.to_maps()?;
            let functor = Functor::new(degrees[f.dom].clone(), degrees[f.cod].clone(), obj, mor);
            if !functor.validate().is_ok() {
                return Err(schema(format!("actions[{i}].functor"), "not a functor"));
            }
            if actions.insert(f.clone(), functor).is_some() {
                return Err(schema(format!("actions[{i}].map"), "duplicate based map"));
            }
        }
        let expected: usize = (0..=self.truncation)
            .flat_map(|n| (0..=self.truncation).map(move |m| (m + 1).pow(n as u32)))
            .sum();
        if actions.len() != expected {
            return Err(schema("actions".into(), "missing based maps"));
        }
        Ok(GammaCategory { truncation: self.truncation, degrees, actions })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representable_examples() {
        let g1 = representable(1, 2).unwrap();
        assert_eq!(g1.degrees[1].object_count(), 2);
        assert_eq!(g1.degrees[0].object_count(), 1);
        assert_eq!(representable(2, 2).unwrap().degrees[1].object_count(), 4);
        assert!(matches!(representable(3, 2), Err(Error::Truncation(_))));
        assert!(functoriality_audit(&g1).is_ok());
        assert!(functoriality_audit(&representable(2, 3).unwrap()).is_ok());
    }

    #[test]
    fn segal_examples() {
        let g1 = representable(1, 2).unwrap();
        let s = segal_check(&g1).unwrap();
        assert!(!s.report.is_ok());
        let (_, f) = segal_functor(&g1, 1, 1);
        assert_eq!((f.dom.object_count(), f.cod.object_count()), (3, 4));
        let t = GammaCategory::terminal(3);
        assert!(segal_check(&t).unwrap().report.is_ok());
        assert!(check_oplax_restriction(&t).is_ok());
        assert!(check_oplax_restriction(&representable(2, 3).unwrap()).is_ok());
    }

    #[test]
    fn day_units_and_products() {
        for (a, b) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let (x, y) = (representable(a, 2).unwrap(), representable(b, 2).unwrap());
            let day = day_convolve(&x, &y, 2, a.max(b), 10_000_000).unwrap();
            assert!(functoriality_audit(&day.gamma).is_ok());
            let cmp = coyoneda_comparison(&day, a, b).unwrap();
            assert!(cmp.is_isomorphism(), "{a},{b}: {:?}", cmp.report.violations.first());
            assert_eq!(day.gamma.degrees[1].object_count(), 2usize.pow((a * b) as u32));
        }
    }

    #[test]
    fn day_unit_and_symmetry_maps() {
        let x = representable(2, 2).unwrap();
        let one = representable(1, 2).unwrap();
        let day = day_convolve(&x, &one, 2, 2, 10_000_000).unwrap();
        assert!(unit_comparison(&day, &x).unwrap().is_isomorphism());
        let swapped = day_convolve(&one, &x, 2, 2, 10_000_000).unwrap();
        assert!(symmetry_comparison(&day, &swapped, &x, &one).is_isomorphism());
    }

    #[test]
    fn smash_precomposition() {
        let g1 = representable(1, 4).unwrap();
        let same = smash_precompose(&g1, 1, 4).unwrap();
        for f in g1.actions.keys() {
            assert!(same.action(f).same_as(g1.action(f)));
        }
        let two = smash_precompose(&g1, 2, 2).unwrap();
        assert_eq!(two.degrees[0].object_count(), 1);
        // `Γop(1⁺, (2m)⁺)` has `2m + 1` elements.
        assert_eq!(two.degrees[1].object_count(), 3);
        assert_eq!(two.degrees[2].object_count(), 5);
        assert!(functoriality_audit(&two).is_ok());
        assert!(matches!(smash_precompose(&g1, 2, 3), Err(Error::Truncation(_))));
    }

    #[test]
    fn json_roundtrip() {
        let g = representable(1, 2).unwrap();
        let j = GammaJson::from_gamma(&g);
        let text = serde_json::to_string(&j).unwrap();
        let back: GammaJson = serde_json::from_str(&text).unwrap();
        let g2 = back.to_gamma().unwrap();
        assert_eq!(serde_json::to_string(&GammaJson::from_gamma(&g2)).unwrap(), text);
    }
}
