//! Explicit finite categories, functors and natural transformations,
//! together with the lifting-property machinery of the natural model
//! structure on `Cat`.
//!
//! Objects and morphisms are dense integer ids. Composition is either a
//! stored table or a rule closure; the latter keeps large constructed
//! categories (nerves, Grothendieck constructions) from materializing
//! quadratic tables.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type Ob = usize;
pub type Mor = usize;

/// One failed law, with the ids that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub witness: String,
}

impl Violation {
    pub fn new(rule: impl Into<String>, witness: impl Into<String>) -> Self {
        Violation { rule: rule.into(), witness: witness.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.witness)
    }
}

/// Outcome of an exhaustive check over a finite fragment.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    /// Number of instances examined.
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fail(&mut self, rule: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(Violation::new(rule, witness));
    }

    pub fn check(&mut self, ok: bool, rule: &str, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(Violation::new(rule, witness()));
        }
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

type Rule = Arc<dyn Fn(Mor, Mor) -> Mor + Send + Sync>;

#[derive(Clone)]
enum Composition {
    Table(Arc<HashMap<(Mor, Mor), Mor>>),
    Rule(Rule),
}

/// A finite category with dense ids.
#[derive(Clone)]
pub struct FinCategory {
    object_count: usize,
    src: Arc<Vec<Ob>>,
    tgt: Arc<Vec<Ob>>,
    ident: Arc<Vec<Mor>>,
    law: Composition,
    homs: Arc<HashMap<(Ob, Ob), Vec<Mor>>>,
    inverses: Arc<OnceLock<Vec<Option<Mor>>>>,
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCategory")
            .field("objects", &self.object_count)
            .field("morphisms", &self.src.len())
            .finish()
    }
}

impl FinCategory {
    /// Raw constructor from a composition table. No axioms are checked;
    /// see [`validate_category`].
    pub fn from_table(
        object_count: usize,
        arrows: Vec<(Ob, Ob)>,
        identities: Vec<Mor>,
        table: HashMap<(Mor, Mor), Mor>,
    ) -> Self {
        Self::assemble(object_count, arrows, identities, Composition::Table(Arc::new(table)))
    }

    /// Constructor whose composition is computed on demand. The rule is
    /// only ever called on composable pairs.
    pub fn from_rule(
        object_count: usize,
        arrows: Vec<(Ob, Ob)>,
        identities: Vec<Mor>,
        rule: impl Fn(Mor, Mor) -> Mor + Send + Sync + 'static,
    ) -> Self {
        Self::assemble(object_count, arrows, identities, Composition::Rule(Arc::new(rule)))
    }

    fn assemble(object_count: usize, arrows: Vec<(Ob, Ob)>, identities: Vec<Mor>, law: Composition) -> Self {
        let mut homs: HashMap<(Ob, Ob), Vec<Mor>> = HashMap::new();
        for (m, &(a, b)) in arrows.iter().enumerate() {
            homs.entry((a, b)).or_default().push(m);
        }
        let (src, tgt): (Vec<Ob>, Vec<Ob>) = arrows.into_iter().unzip();
        FinCategory {
            object_count,
            src: Arc::new(src),
            tgt: Arc::new(tgt),
            ident: Arc::new(identities),
            law,
            homs: Arc::new(homs),
            inverses: Arc::new(OnceLock::new()),
        }
    }

    /// Tabulates a rule-based category. Useful before serialization.
    pub fn tabulated(&self) -> Self {
        let table: HashMap<(Mor, Mor), Mor> =
            self.composition_entries().into_iter().map(|(g, f, gf)| ((g, f), gf)).collect();
        Self::from_table(self.object_count, self.arrows(), self.ident.to_vec(), table)
    }

    pub fn object_count(&self) -> usize {
        self.object_count
    }

    pub fn morphism_count(&self) -> usize {
        self.src.len()
    }

    pub fn objects(&self) -> std::ops::Range<Ob> {
        0..self.object_count
    }

    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.src.len()
    }

    pub fn source(&self, m: Mor) -> Ob {
        self.src[m]
    }

    pub fn target(&self, m: Mor) -> Ob {
        self.tgt[m]
    }

    pub fn arrows(&self) -> Vec<(Ob, Ob)> {
        self.src.iter().copied().zip(self.tgt.iter().copied()).collect()
    }

    pub fn identity(&self, a: Ob) -> Mor {
        self.ident[a]
    }

    pub fn identities(&self) -> &[Mor] {
        &self.ident
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.ident.get(self.src[m]) == Some(&m)
    }

    /// `g ∘ f`, or `None` when the pair is not composable or the table
    /// has no entry.
    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        if self.tgt[f] != self.src[g] {
            return None;
        }
        match &self.law {
            Composition::Table(t) => t.get(&(g, f)).copied(),
            Composition::Rule(r) => Some(r(g, f)),
        }
    }

    /// `g ∘ f`; panics on a non-composable pair.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        self.try_compose(g, f)
            .unwrap_or_else(|| panic!("morphisms {g} and {f} do not compose"))
    }

    /// Composes a path given in diagrammatic order `f1, f2, ...`.
    pub fn compose_path(&self, path: &[Mor]) -> Mor {
        let mut it = path.iter();
        let first = *it.next().expect("non-empty path");
        it.fold(first, |acc, &g| self.compose(g, acc))
    }

    pub fn hom(&self, a: Ob, b: Ob) -> &[Mor] {
        self.homs.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    fn inverse_table(&self) -> &[Option<Mor>] {
        self.inverses.get_or_init(|| {
            self.morphisms()
                .map(|m| {
                    let (a, b) = (self.src[m], self.tgt[m]);
                    self.hom(b, a).iter().copied().find(|&g| {
                        self.try_compose(g, m) == Some(self.ident[a])
                            && self.try_compose(m, g) == Some(self.ident[b])
                    })
                })
                .collect()
        })
    }

    pub fn inverse(&self, m: Mor) -> Option<Mor> {
        self.inverse_table()[m]
    }

    pub fn is_iso(&self, m: Mor) -> bool {
        self.inverse(m).is_some()
    }

    /// First isomorphism `a → b` in id order.
    pub fn find_iso(&self, a: Ob, b: Ob) -> Option<Mor> {
        self.hom(a, b).iter().copied().find(|&m| self.is_iso(m))
    }

    pub fn is_groupoid(&self) -> bool {
        self.morphisms().all(|m| self.is_iso(m))
    }

    pub fn is_discrete(&self) -> bool {
        self.morphisms().all(|m| self.is_identity(m))
    }

    /// All `(g, f, g∘f)` entries over composable pairs, sorted.
    pub fn composition_entries(&self) -> Vec<(Mor, Mor, Mor)> {
        let mut out = Vec::new();
        for f in self.morphisms() {
            let b = self.tgt[f];
            for c in self.objects() {
                for &g in self.hom(b, c) {
                    if let Some(gf) = self.try_compose(g, f) {
                        out.push((g, f, gf));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Structural equality of ids, sources, targets, identities and composites.
    pub fn same_as(&self, other: &FinCategory) -> bool {
        self.object_count == other.object_count
            && self.src == other.src
            && self.tgt == other.tgt
            && self.ident == other.ident
            && self.composition_entries() == other.composition_entries()
    }

    pub fn opposite(&self) -> FinCategory {
        let arrows = self.tgt.iter().copied().zip(self.src.iter().copied()).collect();
        let base = self.clone();
        FinCategory::from_rule(self.object_count, arrows, self.ident.to_vec(), move |g, f| base.compose(f, g))
    }

    /// Full subcategory on `objects`, with object and morphism embeddings.
    pub fn full_subcategory(&self, objects: &[Ob]) -> (FinCategory, Vec<Ob>, Vec<Mor>) {
        let keep: HashSet<Ob> = objects.iter().copied().collect();
        self.subcategory(objects, |m| keep.contains(&self.src[m]) && keep.contains(&self.tgt[m]))
    }

    /// Subcategory on `objects` and the morphisms accepted by `keep`;
    /// the caller guarantees closure under identities and composition.
    pub fn subcategory(&self, objects: &[Ob], keep: impl Fn(Mor) -> bool) -> (FinCategory, Vec<Ob>, Vec<Mor>) {
        let mut obj_index = vec![usize::MAX; self.object_count];
        for (i, &a) in objects.iter().enumerate() {
            obj_index[a] = i;
        }
        let mors: Vec<Mor> = self
            .morphisms()
            .filter(|&m| obj_index[self.src[m]] != usize::MAX && obj_index[self.tgt[m]] != usize::MAX && keep(m))
            .collect();
        let mut mor_index = HashMap::new();
        for (i, &m) in mors.iter().enumerate() {
            mor_index.insert(m, i);
        }
        let arrows = mors.iter().map(|&m| (obj_index[self.src[m]], obj_index[self.tgt[m]])).collect();
        let identities = objects.iter().map(|&a| mor_index[&self.ident[a]]).collect();
        let mut table = HashMap::new();
        for (i, &f) in mors.iter().enumerate() {
            for (j, &g) in mors.iter().enumerate() {
                if let Some(gf) = self.try_compose(g, f) {
                    if let Some(&k) = mor_index.get(&gf) {
                        table.insert((j, i), k);
                    }
                }
            }
        }
        (FinCategory::from_table(objects.len(), arrows, identities, table), objects.to_vec(), mors)
    }
}

/// Builder for small hand-written categories. Identities are allocated
/// first, so object `a` has identity morphism `a`.
pub struct CategoryBuilder {
    objects: usize,
    arrows: Vec<(Ob, Ob)>,
    table: HashMap<(Mor, Mor), Mor>,
}

impl CategoryBuilder {
    pub fn new(objects: usize) -> Self {
        CategoryBuilder { objects, arrows: (0..objects).map(|a| (a, a)).collect(), table: HashMap::new() }
    }

    pub fn arrow(&mut self, a: Ob, b: Ob) -> Mor {
        self.arrows.push((a, b));
        self.arrows.len() - 1
    }

    pub fn composite(&mut self, g: Mor, f: Mor, gf: Mor) -> &mut Self {
        self.table.insert((g, f), gf);
        self
    }

    pub fn build(mut self) -> FinCategory {
        for (m, &(a, b)) in self.arrows.iter().enumerate() {
            self.table.insert((m, a), m);
            self.table.insert((b, m), m);
        }
        FinCategory::from_table(self.objects, self.arrows, (0..self.objects).collect(), self.table)
    }
}

/// The empty category.
pub fn empty() -> FinCategory {
    CategoryBuilder::new(0).build()
}

/// The terminal category `1`, also written `[0]`.
pub fn point() -> FinCategory {
    CategoryBuilder::new(1).build()
}

pub fn discrete(n: usize) -> FinCategory {
    CategoryBuilder::new(n).build()
}

/// The category with exactly one morphism between any two objects.
pub fn chaotic(n: usize) -> FinCategory {
    preorder(n, |_, _| true)
}

/// Thin category of a reflexive transitive relation.
pub fn preorder(n: usize, le: impl Fn(Ob, Ob) -> bool) -> FinCategory {
    let mut b = CategoryBuilder::new(n);
    let mut ids = HashMap::new();
    for a in 0..n {
        ids.insert((a, a), a);
    }
    for a in 0..n {
        for c in 0..n {
            if a != c && le(a, c) {
                ids.insert((a, c), b.arrow(a, c));
            }
        }
    }
    for (&(a, c), &f) in &ids {
        for (&(c2, d), &g) in &ids {
            if c == c2 {
                if let Some(&gf) = ids.get(&(a, d)) {
                    b.composite(g, f, gf);
                }
            }
        }
    }
    b.build()
}

/// The walking arrow `I = [1]`: `0 → 1`.
pub fn interval() -> FinCategory {
    preorder(2, |a, b| a <= b)
}

/// The free-standing isomorphism `J`: `0 ≅ 1`.
pub fn iso_interval() -> FinCategory {
    chaotic(2)
}

/// `[2]`: `0 → 1 → 2`.
pub fn simplex2() -> FinCategory {
    preorder(3, |a, b| a <= b)
}

/// `∂[2]`: the free category on `f01, f12, f02`, with `f12∘f01 ≠ f02`.
pub fn boundary2() -> FinCategory {
    let mut b = CategoryBuilder::new(3);
    let f01 = b.arrow(0, 1);
    let f12 = b.arrow(1, 2);
    let _f02 = b.arrow(0, 2);
    let comp = b.arrow(0, 2);
    b.composite(f12, f01, comp);
    b.build()
}

/// One-object category of a monoid given by its multiplication table.
/// Element `i` is morphism `i`; element 0 must be the unit.
pub fn monoid(table: &[Vec<usize>]) -> FinCategory {
    let n = table.len();
    let arrows = vec![(0, 0); n];
    let mut comp = HashMap::new();
    for g in 0..n {
        for f in 0..n {
            comp.insert((g, f), table[g][f]);
        }
    }
    FinCategory::from_table(1, arrows, vec![0], comp)
}

pub fn cyclic_group(n: usize) -> FinCategory {
    let table: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|f| (g + f) % n).collect()).collect();
    monoid(&table)
}

/// Checks the category axioms. Violations are report entries.
pub fn validate_category(c: &FinCategory) -> CheckReport {
    let mut report = CheckReport::default();
    let n = c.object_count();
    if c.identities().len() != n {
        report.fail("identity-assignment", format!("{} identities for {} objects", c.identities().len(), n));
        return report;
    }
    for m in c.morphisms() {
        let ok = c.source(m) < n && c.target(m) < n;
        report.check(ok, "morphism-endpoints", || format!("morphism {m}"));
    }
    if !report.is_ok() {
        return report;
    }
    for a in c.objects() {
        let i = c.identity(a);
        let ok = i < c.morphism_count() && c.source(i) == a && c.target(i) == a;
        report.check(ok, "identity-typing", || format!("object {a}, identity {i}"));
    }
    if !report.is_ok() {
        return report;
    }
    if let Composition::Table(t) = &c.law {
        let mut keys: Vec<_> = t.iter().map(|(&(g, f), &gf)| (g, f, gf)).collect();
        keys.sort_unstable();
        for (g, f, gf) in keys {
            let typed = g < c.morphism_count()
                && f < c.morphism_count()
                && gf < c.morphism_count()
                && c.target(f) == c.source(g)
                && c.source(gf) == c.source(f)
                && c.target(gf) == c.target(g);
            report.check(typed, "composition-typing", || format!("({g}, {f}) -> {gf}"));
        }
    }
    for f in c.morphisms() {
        let (a, b) = (c.source(f), c.target(f));
        report.check(c.try_compose(f, c.identity(a)) == Some(f), "right-identity", || format!("{f} ∘ id_{a}"));
        report.check(c.try_compose(c.identity(b), f) == Some(f), "left-identity", || format!("id_{b} ∘ {f}"));
    }
    for f in c.morphisms() {
        for x in c.objects() {
            for &g in c.hom(c.target(f), x) {
                let Some(gf) = c.try_compose(g, f) else {
                    report.fail("composition-total", format!("({g}, {f}) missing"));
                    continue;
                };
                for y in c.objects() {
                    for &h in c.hom(x, y) {
                        let left = c.try_compose(h, gf);
                        let right = c.try_compose(h, g).and_then(|hg| c.try_compose(hg, f));
                        report.check(left.is_some() && left == right, "associativity", || {
                            format!("h={h}, g={g}, f={f}: {left:?} vs {right:?}")
                        });
                    }
                }
            }
        }
    }
    report
}

/// A functor between finite categories, stored as object and morphism maps.
#[derive(Clone, Debug)]
pub struct Functor {
    pub dom: Arc<FinCategory>,
    pub cod: Arc<FinCategory>,
    pub obj: Vec<Ob>,
    pub mor: Vec<Mor>,
}

impl Functor {
    pub fn new(dom: Arc<FinCategory>, cod: Arc<FinCategory>, obj: Vec<Ob>, mor: Vec<Mor>) -> Self {
        Functor { dom, cod, obj, mor }
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        let obj = c.objects().collect();
        let mor = c.morphisms().collect();
        Functor { dom: c.clone(), cod: c, obj, mor }
    }

    /// The unique functor into a one-object, one-morphism category.
    pub fn to_terminal(c: Arc<FinCategory>) -> Self {
        Functor { obj: vec![0; c.object_count()], mor: vec![0; c.morphism_count()], dom: c, cod: Arc::new(point()) }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Functor) -> Functor {
        Functor {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            obj: first.obj.iter().map(|&a| self.obj[a]).collect(),
            mor: first.mor.iter().map(|&m| self.mor[m]).collect(),
        }
    }

    pub fn validate(&self) -> CheckReport {
        let (c, d) = (&*self.dom, &*self.cod);
        let mut report = CheckReport::default();
        if self.obj.len() != c.object_count() || self.mor.len() != c.morphism_count() {
            report.fail("shape", "map lengths differ from domain sizes");
            return report;
        }
        if self.obj.iter().any(|&a| a >= d.object_count()) || self.mor.iter().any(|&m| m >= d.morphism_count()) {
            report.fail("shape", "map values out of codomain range");
            return report;
        }
        for m in c.morphisms() {
            let fm = self.mor[m];
            let ok = d.source(fm) == self.obj[c.source(m)] && d.target(fm) == self.obj[c.target(m)];
            report.check(ok, "preserves-endpoints", || format!("morphism {m}"));
        }
        for a in c.objects() {
            let ok = self.mor[c.identity(a)] == d.identity(self.obj[a]);
            report.check(ok, "preserves-identity", || format!("object {a}"));
        }
        if !report.is_ok() {
            return report;
        }
        for (g, f, gf) in c.composition_entries() {
            let ok = d.try_compose(self.mor[g], self.mor[f]) == Some(self.mor[gf]);
            report.check(ok, "preserves-composition", || format!("({g}, {f})"));
        }
        report
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let r = self.validate();
        match r.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidFunctor(v.to_string())),
        }
    }

    pub fn same_as(&self, other: &Functor) -> bool {
        self.obj == other.obj && self.mor == other.mor
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let set: HashSet<Ob> = self.obj.iter().copied().collect();
        set.len() == self.obj.len()
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        let set: HashSet<Ob> = self.obj.iter().copied().collect();
        set.len() == self.cod.object_count()
    }

    fn hom_map_counts(&self, a: Ob, b: Ob) -> (bool, bool) {
        let image: Vec<Mor> = self.dom.hom(a, b).iter().map(|&m| self.mor[m]).collect();
        let distinct: HashSet<Mor> = image.iter().copied().collect();
        let injective = distinct.len() == image.len();
        let surjective = distinct.len() == self.cod.hom(self.obj[a], self.obj[b]).len();
        (injective, surjective)
    }

    pub fn is_faithful(&self) -> bool {
        self.dom.objects().all(|a| self.dom.objects().all(|b| self.hom_map_counts(a, b).0))
    }

    pub fn is_full(&self) -> bool {
        self.dom.objects().all(|a| self.dom.objects().all(|b| self.hom_map_counts(a, b).1))
    }

    pub fn is_fully_faithful(&self) -> bool {
        self.dom.objects().all(|a| {
            self.dom.objects().all(|b| {
                let (i, s) = self.hom_map_counts(a, b);
                i && s
            })
        })
    }

    pub fn is_essentially_surjective(&self) -> bool {
        let image: HashSet<Ob> = self.obj.iter().copied().collect();
        self.cod
            .objects()
            .all(|d| image.contains(&d) || image.iter().any(|&fa| self.cod.find_iso(fa, d).is_some()))
    }

    /// Bijective on objects and morphisms.
    pub fn is_isomorphism(&self) -> bool {
        let objs: HashSet<Ob> = self.obj.iter().copied().collect();
        let mors: HashSet<Mor> = self.mor.iter().copied().collect();
        objs.len() == self.obj.len()
            && objs.len() == self.cod.object_count()
            && mors.len() == self.mor.len()
            && mors.len() == self.cod.morphism_count()
    }
}

/// A natural transformation `source ⇒ target`.
#[derive(Clone, Debug)]
pub struct NatTrans {
    pub source: Functor,
    pub target: Functor,
    pub components: Vec<Mor>,
}

impl NatTrans {
    pub fn identity(f: &Functor) -> Self {
        NatTrans {
            source: f.clone(),
            target: f.clone(),
            components: f.obj.iter().map(|&a| f.cod.identity(a)).collect(),
        }
    }

    pub fn validate(&self) -> CheckReport {
        let c = &*self.source.dom;
        let d = &*self.source.cod;
        let mut report = CheckReport::default();
        for a in c.objects() {
            let t = self.components[a];
            let ok = d.source(t) == self.source.obj[a] && d.target(t) == self.target.obj[a];
            report.check(ok, "component-typing", || format!("object {a}"));
        }
        if !report.is_ok() {
            return report;
        }
        for m in c.morphisms() {
            let (a, b) = (c.source(m), c.target(m));
            let left = d.compose(self.components[b], self.source.mor[m]);
            let right = d.compose(self.target.mor[m], self.components[a]);
            report.check(left == right, "naturality", || format!("morphism {m}: {left} vs {right}"));
        }
        report
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(|&t| self.source.cod.is_iso(t))
    }
}

/// Quasi-inverse data for an equivalence `F: C → D`.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub inverse: Functor,
    /// `η: id_C ⇒ G F`.
    pub unit: NatTrans,
    /// `ε: F G ⇒ id_D`.
    pub counit: NatTrans,
}

/// Witnesses for `F` being an equivalence. For each object `d` the
/// least object `c` with an iso `F c ≅ d` is chosen, and the least such iso.
pub fn equivalence_witness(f: &Functor) -> Result<Option<Equivalence>> {
    f.ensure_valid()?;
    if !f.is_fully_faithful() {
        return Ok(None);
    }
    let (c, d) = (&f.dom, &f.cod);
    let mut choice = Vec::with_capacity(d.object_count());
    for y in d.objects() {
        let found = c.objects().find_map(|x| d.find_iso(f.obj[x], y).map(|u| (x, u)));
        match found {
            Some(pick) => choice.push(pick),
            None => return Ok(None),
        }
    }
    // Unique preimage of a D-morphism between images, by full faithfulness.
    let lift = |a: Ob, b: Ob, target: Mor| -> Mor {
        *c.hom(a, b).iter().find(|&&m| f.mor[m] == target).expect("fully faithful")
    };
    let g_obj: Vec<Ob> = choice.iter().map(|&(x, _)| x).collect();
    let g_mor: Vec<Mor> = d
        .morphisms()
        .map(|m| {
            let (y, y2) = (d.source(m), d.target(m));
            let (x, u) = choice[y];
            let (x2, u2) = choice[y2];
            let inner = d.compose(d.inverse(u2).expect("iso"), d.compose(m, u));
            lift(x, x2, inner)
        })
        .collect();
    let g = Functor::new(d.clone(), c.clone(), g_obj, g_mor);
    let fg = f.after(&g);
    let gf = g.after(f);
    let counit = NatTrans { source: fg, target: Functor::identity(d.clone()), components: choice.iter().map(|&(_, u)| u).collect() };
    let unit_components = c
        .objects()
        .map(|x| {
            let (_, u) = choice[f.obj[x]];
            lift(x, gf.obj[x], d.inverse(u).expect("iso"))
        })
        .collect();
    let unit = NatTrans { source: Functor::identity(c.clone()), target: gf, components: unit_components };
    Ok(Some(Equivalence { inverse: g, unit, counit }))
}

/// Fully faithful and essentially surjective.
pub fn is_equivalence(f: &Functor) -> Result<bool> {
    f.ensure_valid()?;
    Ok(f.is_fully_faithful() && f.is_essentially_surjective())
}

/// Every iso out of an object in the image lifts to an iso with the
/// prescribed source.
pub fn is_isofibration(f: &Functor) -> bool {
    let (c, d) = (&*f.dom, &*f.cod);
    c.objects().all(|x| {
        let fx = f.obj[x];
        d.objects().all(|y| {
            d.hom(fx, y).iter().filter(|&&u| d.is_iso(u)).all(|&u| {
                c.objects().any(|x2| c.hom(x, x2).iter().any(|&v| f.mor[v] == u && c.is_iso(v)))
            })
        })
    })
}

/// The largest groupoid contained in `c`, with its inclusion.
pub fn core_groupoid(c: &Arc<FinCategory>) -> (Arc<FinCategory>, Functor) {
    let objects: Vec<Ob> = c.objects().collect();
    let (core, obj, mor) = c.subcategory(&objects, |m| c.is_iso(m));
    let core = Arc::new(core);
    let inclusion = Functor::new(core.clone(), c.clone(), obj, mor);
    (core, inclusion)
}

/// The functor `J(F): J(C) → J(D)` between cores.
pub fn core_functor(f: &Functor) -> Functor {
    let (cc, ci) = core_groupoid(&f.dom);
    let (dc, di) = core_groupoid(&f.cod);
    let back: HashMap<Mor, Mor> = di.mor.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mor = ci.mor.iter().map(|&m| back[&f.mor[m]]).collect();
    Functor::new(cc, dc, f.obj.clone(), mor)
}

/// Finite product of categories with tuple encoding in mixed radix.
#[derive(Clone, Debug)]
pub struct Product {
    pub factors: Vec<Arc<FinCategory>>,
    pub category: Arc<FinCategory>,
}

impl Product {
    pub fn new(factors: Vec<Arc<FinCategory>>) -> Self {
        let ob_sizes: Vec<usize> = factors.iter().map(|c| c.object_count()).collect();
        let object_count: usize = ob_sizes.iter().product();
        // Morphisms are enumerated hom-by-hom so that each tuple is a
        // morphism between decoded object tuples.
        let mut arrows = Vec::new();
        let mut tuples: Vec<Vec<Mor>> = Vec::new();
        let mut index: HashMap<Vec<Mor>, Mor> = HashMap::new();
        let mut current: Vec<Mor> = Vec::with_capacity(factors.len());
        fn rec(
            factors: &[Arc<FinCategory>],
            ob_sizes: &[usize],
            current: &mut Vec<Mor>,
            arrows: &mut Vec<(Ob, Ob)>,
            tuples: &mut Vec<Vec<Mor>>,
            index: &mut HashMap<Vec<Mor>, Mor>,
        ) {
            let k = current.len();
            if k == factors.len() {
                let s = encode(ob_sizes, current.iter().zip(factors).map(|(&m, c)| c.source(m)));
                let t = encode(ob_sizes, current.iter().zip(factors).map(|(&m, c)| c.target(m)));
                index.insert(current.clone(), tuples.len());
                tuples.push(current.clone());
                arrows.push((s, t));
                return;
            }
            for m in factors[k].morphisms() {
                current.push(m);
                rec(factors, ob_sizes, current, arrows, tuples, index);
                current.pop();
            }
        }
        rec(&factors, &ob_sizes, &mut current, &mut arrows, &mut tuples, &mut index);
        let identities: Vec<Mor> = (0..object_count)
            .map(|o| {
                let comps = decode(&ob_sizes, o);
                let t: Vec<Mor> = comps.iter().zip(&factors).map(|(&a, c)| c.identity(a)).collect();
                index[&t]
            })
            .collect();
        let fs = factors.clone();
        let tuples = Arc::new(tuples);
        let index = Arc::new(index);
        let category = FinCategory::from_rule(object_count, arrows, identities, move |g, f| {
            let t: Vec<Mor> = fs
                .iter()
                .enumerate()
                .map(|(i, c)| c.compose(tuples[g][i], tuples[f][i]))
                .collect();
            index[&t]
        });
        Product { factors, category: Arc::new(category) }
    }

    fn ob_sizes(&self) -> Vec<usize> {
        self.factors.iter().map(|c| c.object_count()).collect()
    }

    pub fn object(&self, components: &[Ob]) -> Ob {
        encode(&self.ob_sizes(), components.iter().copied())
    }

    pub fn object_components(&self, o: Ob) -> Vec<Ob> {
        decode(&self.ob_sizes(), o)
    }

    pub fn morphism(&self, components: &[Mor]) -> Mor {
        let sizes: Vec<usize> = self.factors.iter().map(|c| c.morphism_count()).collect();
        encode(&sizes, components.iter().copied())
    }

    pub fn morphism_components(&self, m: Mor) -> Vec<Mor> {
        // Morphisms were enumerated in lexicographic tuple order.
        let sizes: Vec<usize> = self.factors.iter().map(|c| c.morphism_count()).collect();
        decode(&sizes, m)
    }

    /// Pairing `⟨F₁, …, F_k⟩: C → ∏ Dᵢ`.
    pub fn pairing(&self, legs: &[Functor]) -> Functor {
        let dom = legs[0].dom.clone();
        let sizes: Vec<usize> = self.factors.iter().map(|c| c.morphism_count()).collect();
        let obj = dom.objects().map(|a| self.object(&legs.iter().map(|f| f.obj[a]).collect::<Vec<_>>())).collect();
        let mor = dom
            .morphisms()
            .map(|m| encode(&sizes, legs.iter().map(|f| f.mor[m])))
            .collect();
        Functor::new(dom, self.category.clone(), obj, mor)
    }
}

fn encode(sizes: &[usize], comps: impl Iterator<Item = usize>) -> usize {
    let mut acc = 0;
    for (c, &s) in comps.zip(sizes) {
        acc = acc * s + c;
    }
    acc
}

fn decode(sizes: &[usize], mut code: usize) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for i in (0..sizes.len()).rev() {
        out[i] = code % sizes[i];
        code /= sizes[i];
    }
    out
}

/// Backtracking enumerator of functors with optional constraints.
///
/// Objects are assigned first in `object_order`, then non-identity
/// morphisms in `morphism_order`. Composition triples are checked as soon
/// as all three members are assigned.
pub struct FunctorSearch<'a> {
    dom: &'a FinCategory,
    cod: &'a FinCategory,
    object_candidates: Vec<Vec<Ob>>,
    fixed: Vec<Option<Mor>>,
    object_order: Vec<Ob>,
    morphism_order: Vec<Mor>,
    object_hook: Option<Box<dyn Fn(Ob, &[Option<Ob>]) -> bool + 'a>>,
    morphism_hook: Option<Box<dyn Fn(Mor, &[Ob], &[Option<Mor>]) -> bool + 'a>>,
    budget: usize,
}

enum Slot {
    Obj(Ob),
    Mor(Mor),
}

impl<'a> FunctorSearch<'a> {
    pub fn new(dom: &'a FinCategory, cod: &'a FinCategory) -> Self {
        let all: Vec<Ob> = cod.objects().collect();
        FunctorSearch {
            dom,
            cod,
            object_candidates: vec![all; dom.object_count()],
            fixed: vec![None; dom.morphism_count()],
            object_order: dom.objects().collect(),
            morphism_order: dom.morphisms().filter(|&m| !dom.is_identity(m)).collect(),
            object_hook: None,
            morphism_hook: None,
            budget: crate::DEFAULT_BUDGET,
        }
    }

    pub fn budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn fix_object(mut self, a: Ob, value: Ob) -> Self {
        self.object_candidates[a].retain(|&x| x == value);
        self
    }

    pub fn restrict_object(mut self, a: Ob, keep: impl Fn(Ob) -> bool) -> Self {
        self.object_candidates[a].retain(|&x| keep(x));
        self
    }

    pub fn fix_morphism(mut self, m: Mor, value: Mor) -> Self {
        match self.fixed[m] {
            Some(v) if v != value => {
                // Contradictory requests leave no candidates.
                let (a, b) = (self.dom.source(m), self.dom.target(m));
                self.object_candidates[a].clear();
                self.object_candidates[b].clear();
            }
            _ => self.fixed[m] = Some(value),
        }
        self
    }

    pub fn object_order(mut self, order: Vec<Ob>) -> Self {
        self.object_order = order;
        self
    }

    pub fn morphism_order(mut self, order: Vec<Mor>) -> Self {
        let mut seen = vec![false; self.dom.morphism_count()];
        let mut out = Vec::new();
        for m in order.into_iter().chain(self.dom.morphisms()) {
            if !seen[m] && !self.dom.is_identity(m) {
                seen[m] = true;
                out.push(m);
            }
        }
        self.morphism_order = out;
        self
    }

    pub fn object_hook(mut self, hook: impl Fn(Ob, &[Option<Ob>]) -> bool + 'a) -> Self {
        self.object_hook = Some(Box::new(hook));
        self
    }

    pub fn morphism_hook(mut self, hook: impl Fn(Mor, &[Ob], &[Option<Mor>]) -> bool + 'a) -> Self {
        self.morphism_hook = Some(Box::new(hook));
        self
    }

    /// Visits every solution until `visit` returns `false`. Returns the
    /// number of solutions visited.
    pub fn run(&self, mut visit: impl FnMut(&[Ob], &[Mor]) -> bool) -> Result<usize> {
        let (c, d) = (self.dom, self.cod);
        let mut touching: Vec<Vec<Mor>> = vec![Vec::new(); c.object_count()];
        for m in c.morphisms() {
            touching[c.source(m)].push(m);
            if c.target(m) != c.source(m) {
                touching[c.target(m)].push(m);
            }
        }
        let mut triples_of: Vec<Vec<(Mor, Mor, Mor)>> = vec![Vec::new(); c.morphism_count()];
        for (g, f, gf) in c.composition_entries() {
            if c.is_identity(g) || c.is_identity(f) {
                continue;
            }
            triples_of[g].push((g, f, gf));
            if f != g {
                triples_of[f].push((g, f, gf));
            }
            if gf != g && gf != f {
                triples_of[gf].push((g, f, gf));
            }
        }
        let slots: Vec<Slot> = self
            .object_order
            .iter()
            .map(|&a| Slot::Obj(a))
            .chain(self.morphism_order.iter().map(|&m| Slot::Mor(m)))
            .collect();
        let mut obj: Vec<Option<Ob>> = vec![None; c.object_count()];
        let mut mor: Vec<Option<Mor>> = vec![None; c.morphism_count()];
        let mut cands: Vec<Vec<usize>> = Vec::with_capacity(slots.len());
        let mut pos: Vec<usize> = Vec::with_capacity(slots.len());
        let mut found = 0usize;
        let mut nodes = 0usize;

        let candidates = |slot: &Slot, obj: &[Option<Ob>]| -> Vec<usize> {
            match *slot {
                Slot::Obj(a) => self.object_candidates[a].clone(),
                Slot::Mor(m) => {
                    let (x, y) = (obj[c.source(m)].unwrap(), obj[c.target(m)].unwrap());
                    match self.fixed[m] {
                        Some(v) => {
                            if d.source(v) == x && d.target(v) == y {
                                vec![v]
                            } else {
                                vec![]
                            }
                        }
                        None => d.hom(x, y).to_vec(),
                    }
                }
            }
        };
        let object_ok = |a: Ob, obj: &[Option<Ob>]| -> bool {
            let x = obj[a].unwrap();
            for &m in &touching[a] {
                let (s, t) = (c.source(m), c.target(m));
                if let (Some(fs), Some(ft)) = (obj[s], obj[t]) {
                    match self.fixed[m] {
                        Some(v) => {
                            if d.source(v) != fs || d.target(v) != ft {
                                return false;
                            }
                            if c.is_identity(m) && v != d.identity(x) {
                                return false;
                            }
                        }
                        None => {
                            if d.hom(fs, ft).is_empty() {
                                return false;
                            }
                        }
                    }
                }
            }
            self.object_hook.as_ref().map_or(true, |h| h(a, obj))
        };

        if slots.is_empty() {
            visit(&[], &[]);
            return Ok(1);
        }
        cands.push(candidates(&slots[0], &obj));
        pos.push(0);
        loop {
            let level = pos.len() - 1;
            // Clear the current slot before trying its next candidate.
            match slots[level] {
                Slot::Obj(a) => {
                    if obj[a].take().is_some() {
                        mor[c.identity(a)] = None;
                    }
                }
                Slot::Mor(m) => mor[m] = None,
            }
            if pos[level] >= cands[level].len() {
                cands.pop();
                pos.pop();
                if pos.is_empty() {
                    break;
                }
                continue;
            }
            let value = cands[level][pos[level]];
            pos[level] += 1;
            nodes += 1;
            if nodes > self.budget {
                return Err(Error::BudgetExceeded { what: "enumerating functors".into(), budget: self.budget });
            }
            let ok = match slots[level] {
                Slot::Obj(a) => {
                    obj[a] = Some(value);
                    mor[c.identity(a)] = Some(d.identity(value));
                    object_ok(a, &obj)
                }
                Slot::Mor(m) => {
                    mor[m] = Some(value);
                    let composed = triples_of[m].iter().all(|&(g, f, gf)| match (mor[g], mor[f], mor[gf]) {
                        (Some(x), Some(y), Some(z)) => d.try_compose(x, y) == Some(z),
                        _ => true,
                    });
                    composed
                        && self.morphism_hook.as_ref().map_or(true, |h| {
                            let objs: Vec<Ob> = obj.iter().map(|o| o.unwrap()).collect();
                            h(m, &objs, &mor)
                        })
                }
            };
            if !ok {
                continue;
            }
            if level + 1 == slots.len() {
                found += 1;
                let objs: Vec<Ob> = obj.iter().map(|o| o.unwrap()).collect();
                let mors: Vec<Mor> = mor.iter().map(|m| m.unwrap()).collect();
                if !visit(&objs, &mors) {
                    break;
                }
                continue;
            }
            let next = candidates(&slots[level + 1], &obj);
            cands.push(next);
            pos.push(0);
        }
        Ok(found)
    }

    pub fn first(&self) -> Result<Option<(Vec<Ob>, Vec<Mor>)>> {
        let mut out = None;
        self.run(|o, m| {
            out = Some((o.to_vec(), m.to_vec()));
            false
        })?;
        Ok(out)
    }

    pub fn all(&self) -> Result<Vec<(Vec<Ob>, Vec<Mor>)>> {
        let mut out = Vec::new();
        self.run(|o, m| {
            out.push((o.to_vec(), m.to_vec()));
            true
        })?;
        Ok(out)
    }
}

/// All functors `a → b` in search order.
pub fn enumerate_functors(a: &Arc<FinCategory>, b: &Arc<FinCategory>, budget: usize) -> Result<Vec<Functor>> {
    let found = FunctorSearch::new(a, b).budget(budget).all()?;
    Ok(found.into_iter().map(|(o, m)| Functor::new(a.clone(), b.clone(), o, m)).collect())
}

/// A commuting square `p ∘ top = bottom ∘ i`.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub left: Functor,
    pub right: Functor,
    pub top: Functor,
    pub bottom: Functor,
}

impl LiftingProblem {
    pub fn commutes(&self) -> bool {
        self.right.after(&self.top).same_as(&self.bottom.after(&self.left))
    }
}

/// Finds a diagonal `B → X` making both triangles commute, searching
/// lexicographically.
pub fn solve_rlp(problem: &LiftingProblem) -> Result<Option<Functor>> {
    if !problem.commutes() {
        return Err(Error::NonCommutingSquare("p∘top differs from bottom∘i".into()));
    }
    let (i, p, top, bottom) = (&problem.left, &problem.right, &problem.top, &problem.bottom);
    let b = &*i.cod;
    let x = &*p.dom;
    let mut search = FunctorSearch::new(b, x);
    for ob in b.objects() {
        let want = bottom.obj[ob];
        search = search.restrict_object(ob, |cand| p.obj[cand] == want);
    }
    for a in i.dom.objects() {
        search = search.fix_object(i.obj[a], top.obj[a]);
    }
    for m in i.dom.morphisms() {
        search = search.fix_morphism(i.mor[m], top.mor[m]);
    }
    let search = search.morphism_hook(|m, _, mor| p.mor[mor[m].unwrap()] == bottom.mor[m]);
    Ok(search.first()?.map(|(o, m)| Functor::new(i.cod.clone(), p.dom.clone(), o, m)))
}

/// Result of testing `i ⧄ p` over all commuting squares.
#[derive(Clone, Debug)]
pub struct RlpOutcome {
    pub holds: bool,
    pub squares: usize,
    pub counterexample: Option<LiftingProblem>,
}

/// Decides whether `p` has the right lifting property against `i`.
pub fn has_rlp(i: &Functor, p: &Functor, budget: usize) -> Result<RlpOutcome> {
    let tops = enumerate_functors(&i.dom, &p.dom, budget)?;
    let mut squares = 0;
    for top in tops {
        let pt = p.after(&top);
        let mut search = FunctorSearch::new(&i.cod, &p.cod).budget(budget);
        for a in i.dom.objects() {
            search = search.fix_object(i.obj[a], pt.obj[a]);
        }
        for m in i.dom.morphisms() {
            search = search.fix_morphism(i.mor[m], pt.mor[m]);
        }
        let bottoms = search.all()?;
        for (o, m) in bottoms {
            squares += 1;
            let problem = LiftingProblem {
                left: i.clone(),
                right: p.clone(),
                top: top.clone(),
                bottom: Functor::new(i.cod.clone(), p.cod.clone(), o, m),
            };
            if solve_rlp(&problem)?.is_none() {
                return Ok(RlpOutcome { holds: false, squares, counterexample: Some(problem) });
            }
        }
    }
    Ok(RlpOutcome { holds: true, squares, counterexample: None })
}

/// The generating maps of the natural model structure.
pub struct Generators {
    pub point: Arc<FinCategory>,
    pub iso: Arc<FinCategory>,
    pub i0: Functor,
    pub i1: Functor,
    pub d0: Functor,
    pub d1: Functor,
    pub d2: Functor,
}

impl Generators {
    pub fn new() -> Self {
        let pt = Arc::new(point());
        let j = Arc::new(iso_interval());
        let i0 = Functor::new(pt.clone(), j.clone(), vec![0], vec![0]);
        let i1 = Functor::new(pt.clone(), j.clone(), vec![1], vec![1]);
        let d0 = Functor::new(Arc::new(empty()), pt.clone(), vec![], vec![]);
        let arrow = Arc::new(interval());
        let d1 = Functor::new(Arc::new(discrete(2)), arrow, vec![0, 1], vec![0, 1]);
        let s2 = Arc::new(simplex2());
        let b2 = Arc::new(boundary2());
        // ∂[2]: ids 0..3, f01=3, f12=4, f02=5, f12∘f01=6. [2]: ids, then
        // arrows in (a,c) order from the preorder builder.
        let f = |a: Ob, c: Ob| s2.hom(a, c)[0];
        let d2 = Functor::new(
            b2,
            s2.clone(),
            vec![0, 1, 2],
            vec![0, 1, 2, f(0, 1), f(1, 2), f(0, 2), f(0, 2)],
        );
        Generators { point: pt, iso: j, i0, i1, d0, d1, d2 }
    }
}

impl Default for Generators {
    fn default() -> Self {
        Self::new()
    }
}

/// Model-structure classification of a functor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub cofibration: bool,
    pub fibration: bool,
    pub weak_equivalence: bool,
    /// Equivalence and surjective on objects.
    pub acyclic_fibration: bool,
    /// Right lifting against `∂₀`, `∂₁`, `∂₂`.
    pub acyclic_fibration_by_lifting: bool,
}

pub fn classify_map(f: &Functor, budget: usize) -> Result<Classification> {
    let weak_equivalence = is_equivalence(f)?;
    let gens = Generators::new();
    let mut lifts = true;
    for g in [&gens.d0, &gens.d1, &gens.d2] {
        if !has_rlp(g, f, budget)?.holds {
            lifts = false;
            break;
        }
    }
    Ok(Classification {
        cofibration: f.is_injective_on_objects(),
        fibration: is_isofibration(f),
        weak_equivalence,
        acyclic_fibration: weak_equivalence && f.is_surjective_on_objects(),
        acyclic_fibration_by_lifting: lifts,
    })
}

/// `[A, B]` with its enumerated functors and natural transformations.
#[derive(Clone, Debug)]
pub struct FunctorCategory {
    pub category: Arc<FinCategory>,
    pub functors: Vec<Functor>,
    /// `(source functor, target functor, components)` per morphism.
    pub transformations: Vec<(usize, usize, Vec<Mor>)>,
}

impl FunctorCategory {
    pub fn find_functor(&self, f: &Functor) -> Option<Ob> {
        self.functors.iter().position(|g| g.same_as(f))
    }
}

/// Every natural transformation between two functors, by product search
/// over components; errors when more than `budget` tuples are examined.
pub fn natural_transformations(f: &Functor, g: &Functor, budget: &mut usize) -> Result<Vec<Vec<Mor>>> {
    let a = &*f.dom;
    let b = &*f.cod;
    let n = a.object_count();
    let choices: Vec<&[Mor]> = a.objects().map(|x| b.hom(f.obj[x], g.obj[x])).collect();
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    let mut comp = vec![0; n];
    // Components are validated incrementally against morphisms whose
    // endpoints are both chosen.
    let mut by_level: Vec<Vec<Mor>> = vec![Vec::new(); n];
    for m in a.morphisms() {
        let lvl = a.source(m).max(a.target(m));
        by_level[lvl].push(m);
    }
    let natural_at = |comp: &[Mor], m: Mor| -> bool {
        let (x, y) = (a.source(m), a.target(m));
        b.compose(comp[y], f.mor[m]) == b.compose(g.mor[m], comp[x])
    };
    if n == 0 {
        out.push(Vec::new());
        return Ok(out);
    }
    let mut level = 0usize;
    loop {
        if idx[level] >= choices[level].len() {
            idx[level] = 0;
            if level == 0 {
                break;
            }
            level -= 1;
            idx[level] += 1;
            continue;
        }
        if *budget == 0 {
            return Err(Error::BudgetExceeded { what: "enumerating natural transformations".into(), budget: *budget });
        }
        *budget -= 1;
        comp[level] = choices[level][idx[level]];
        if by_level[level].iter().all(|&m| natural_at(&comp, m)) {
            if level + 1 == n {
                out.push(comp.clone());
                idx[level] += 1;
            } else {
                level += 1;
            }
        } else {
            idx[level] += 1;
        }
    }
    Ok(out)
}

pub fn functor_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>, budget: usize) -> Result<FunctorCategory> {
    let functors = enumerate_functors(a, b, budget)?;
    let mut remaining = budget;
    let mut transformations = Vec::new();
    let mut arrows = Vec::new();
    let mut index: HashMap<(usize, usize, Vec<Mor>), Mor> = HashMap::new();
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            for comps in natural_transformations(f, g, &mut remaining)? {
                index.insert((i, j, comps.clone()), transformations.len());
                transformations.push((i, j, comps));
                arrows.push((i, j));
            }
        }
    }
    let identities = functors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let comps: Vec<Mor> = f.obj.iter().map(|&x| b.identity(x)).collect();
            index[&(i, i, comps)]
        })
        .collect();
    let mut table = HashMap::new();
    for (fi, (s, t, c1)) in transformations.iter().enumerate() {
        for (gi, (s2, t2, c2)) in transformations.iter().enumerate() {
            if t == s2 {
                let comps: Vec<Mor> = c1.iter().zip(c2).map(|(&x, &y)| b.compose(y, x)).collect();
                table.insert((gi, fi), index[&(*s, *t2, comps)]);
            }
        }
    }
    let category = Arc::new(FinCategory::from_table(functors.len(), arrows, identities, table));
    Ok(FunctorCategory { category, functors, transformations })
}

/// `[I, F]: [I, C] → [I, D]`, the action of `F` on arrow categories.
pub fn arrow_functor(f: &Functor, budget: usize) -> Result<Functor> {
    let i = Arc::new(interval());
    let src = functor_category(&i, &f.dom, budget)?;
    let dst = functor_category(&i, &f.cod, budget)?;
    let obj: Vec<Ob> = src
        .functors
        .iter()
        .map(|g| dst.find_functor(&f.after(g)).expect("image functor"))
        .collect();
    let index: HashMap<(usize, usize, Vec<Mor>), Mor> = dst
        .transformations
        .iter()
        .enumerate()
        .map(|(k, (s, t, c))| ((*s, *t, c.clone()), k))
        .collect();
    let mor = src
        .transformations
        .iter()
        .map(|(s, t, c)| {
            let comps = c.iter().map(|&m| f.mor[m]).collect();
            index[&(obj[*s], obj[*t], comps)]
        })
        .collect();
    Ok(Functor::new(src.category, dst.category, obj, mor))
}

/// Equivalence test through cores: `F` is an equivalence iff `J(F)` and
/// `J([I, F])` are equivalences of groupoids.
pub fn is_equivalence_via_cores(f: &Functor, budget: usize) -> Result<bool> {
    let jf = core_functor(f);
    let arrow = arrow_functor(f, budget)?;
    let jarrow = core_functor(&arrow);
    Ok(is_equivalence(&jf)? && is_equivalence(&jarrow)?)
}

/// Factorization `E → G → F` into identity-on-objects followed by fully
/// faithful.
#[derive(Clone, Debug)]
pub struct GabrielFactorization {
    pub middle: Arc<FinCategory>,
    pub first: Functor,
    pub second: Functor,
}

pub fn gabriel_factorize(f: &Functor) -> GabrielFactorization {
    let (e, d) = (&*f.dom, &f.cod);
    let n = e.object_count();
    let mut arrows = Vec::new();
    let mut underlying = Vec::new();
    let mut index = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            for &m in d.hom(f.obj[a], f.obj[b]) {
                index.insert((a, b, m), arrows.len());
                arrows.push((a, b));
                underlying.push(m);
            }
        }
    }
    let identities = (0..n).map(|a| index[&(a, a, d.identity(f.obj[a]))]).collect();
    let mut table = HashMap::new();
    for (i, &(a, b)) in arrows.iter().enumerate() {
        for c in 0..n {
            for &m in d.hom(f.obj[b], f.obj[c]) {
                let j = index[&(b, c, m)];
                table.insert((j, i), index[&(a, c, d.compose(m, underlying[i]))]);
            }
        }
    }
    let middle = Arc::new(FinCategory::from_table(n, arrows.clone(), identities, table));
    let first_mor = e
        .morphisms()
        .map(|m| index[&(e.source(m), e.target(m), f.mor[m])])
        .collect();
    let first = Functor::new(f.dom.clone(), middle.clone(), (0..n).collect(), first_mor);
    let second = Functor::new(middle.clone(), d.clone(), f.obj.clone(), underlying);
    GabrielFactorization { middle, first, second }
}

/// A category whose objects and morphisms carry structured keys.
///
/// Morphisms are keyed by `(source, target, data)` so that data which
/// does not determine its endpoints is still unambiguous.
pub struct Keyed<O, M> {
    pub objects: Arc<Vec<O>>,
    pub object_index: HashMap<O, Ob>,
    pub morphisms: Arc<Vec<(Ob, Ob, M)>>,
    pub morphism_index: Arc<HashMap<(Ob, Ob, M), Mor>>,
    pub category: Arc<FinCategory>,
}

impl<O, M> Keyed<O, M>
where
    O: Clone + Eq + std::hash::Hash + Send + Sync + 'static,
    M: Clone + Eq + std::hash::Hash + Send + Sync + 'static,
{
    /// `compose(g, f, source, middle, target)` must return the data of `g ∘ f`.
    pub fn build(
        objects: Vec<O>,
        homs: impl Fn(&O, &O) -> Vec<M>,
        identity: impl Fn(&O) -> M,
        compose: impl Fn(&M, &M, &O, &O, &O) -> M + Send + Sync + 'static,
    ) -> Self {
        let object_index: HashMap<O, Ob> = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let mut morphisms = Vec::new();
        for (a, oa) in objects.iter().enumerate() {
            for (b, ob) in objects.iter().enumerate() {
                for m in homs(oa, ob) {
                    morphisms.push((a, b, m));
                }
            }
        }
        Self::from_parts(objects, object_index, morphisms, identity, compose)
    }

    /// Like [`Keyed::build`] with the morphism list supplied directly.
    pub fn from_parts(
        objects: Vec<O>,
        object_index: HashMap<O, Ob>,
        morphisms: Vec<(Ob, Ob, M)>,
        identity: impl Fn(&O) -> M,
        compose: impl Fn(&M, &M, &O, &O, &O) -> M + Send + Sync + 'static,
    ) -> Self {
        let morphism_index: HashMap<(Ob, Ob, M), Mor> =
            morphisms.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let identities: Vec<Mor> = objects
            .iter()
            .enumerate()
            .map(|(a, o)| morphism_index[&(a, a, identity(o))])
            .collect();
        let arrows = morphisms.iter().map(|(a, b, _)| (*a, *b)).collect();
        let objects = Arc::new(objects);
        let morphisms = Arc::new(morphisms);
        let morphism_index = Arc::new(morphism_index);
        let (objs, mors, index) = (objects.clone(), morphisms.clone(), morphism_index.clone());
        let category = FinCategory::from_rule(objects.len(), arrows, identities, move |g, f| {
            let (a, b, fd) = &mors[f];
            let (_, c, gd) = &mors[g];
            let data = compose(gd, fd, &objs[*a], &objs[*b], &objs[*c]);
            *index
                .get(&(*a, *c, data))
                .unwrap_or_else(|| panic!("composite of {g} and {f} is not a morphism"))
        });
        Keyed { objects, object_index, morphisms, morphism_index, category: Arc::new(category) }
    }

    pub fn object(&self, key: &O) -> Option<Ob> {
        self.object_index.get(key).copied()
    }

    pub fn morphism(&self, a: Ob, b: Ob, data: &M) -> Option<Mor> {
        self.morphism_index.get(&(a, b, data.clone())).copied()
    }

    pub fn data(&self, m: Mor) -> &M {
        &self.morphisms[m].2
    }
}

/// Depth-first search over `levels` slots. `candidates(level, chosen)`
/// lists the values for the next slot given the values chosen so far;
/// `accept` prunes; `visit` receives complete assignments and returns
/// `false` to stop. Returns the number of complete assignments visited.
pub fn search_assignments(
    levels: usize,
    budget: usize,
    mut candidates: impl FnMut(usize, &[usize]) -> Vec<usize>,
    mut accept: impl FnMut(usize, &[usize]) -> bool,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<usize> {
    if levels == 0 {
        visit(&[]);
        return Ok(1);
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(levels);
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(candidates(0, &chosen), 0)];
    let mut found = 0;
    let mut nodes = 0;
    while !stack.is_empty() {
        let level = stack.len() - 1;
        chosen.truncate(level);
        let next_value = {
            let (cands, pos) = stack.last_mut().expect("non-empty");
            let v = cands.get(*pos).copied();
            *pos += 1;
            v
        };
        let Some(value) = next_value else {
            stack.pop();
            continue;
        };
        nodes += 1;
        if nodes > budget {
            return Err(Error::BudgetExceeded { what: "backtracking search".into(), budget });
        }
        chosen.push(value);
        if !accept(level, &chosen) {
            continue;
        }
        if level + 1 == levels {
            found += 1;
            if !visit(&chosen) {
                break;
            }
            continue;
        }
        let next = candidates(level + 1, &chosen);
        stack.push((next, 0));
    }
    Ok(found)
}

/// Serialized form of a category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryJson {
    pub objects: Vec<Ob>,
    pub morphisms: Vec<MorphismJson>,
    pub identities: BTreeMap<String, Mor>,
    pub compose: Vec<[Mor; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub id: Mor,
    pub src: Ob,
    pub tgt: Ob,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorJson {
    pub obj_map: BTreeMap<String, Ob>,
    pub mor_map: BTreeMap<String, Mor>,
}

impl CategoryJson {
    pub fn from_category(c: &FinCategory) -> Self {
        CategoryJson {
            objects: c.objects().collect(),
            morphisms: c.morphisms().map(|m| MorphismJson { id: m, src: c.source(m), tgt: c.target(m) }).collect(),
            // Keys are zero-padded so lexical order matches numeric order.
            identities: c.objects().map(|a| (key(a, c.object_count()), c.identity(a))).collect(),
            compose: c.composition_entries().into_iter().map(|(g, f, gf)| [g, f, gf]).collect(),
        }
    }

    /// Rebuilds the category, rejecting malformed ids with a field path.
    pub fn to_category(&self) -> Result<FinCategory> {
        let n = self.objects.len();
        for (i, &o) in self.objects.iter().enumerate() {
            if o != i {
                return Err(schema(format!("objects[{i}]"), format!("expected id {i}, found {o}")));
            }
        }
        let mut arrows = Vec::with_capacity(self.morphisms.len());
        for (i, m) in self.morphisms.iter().enumerate() {
            if m.id != i {
                return Err(schema(format!("morphisms[{i}].id"), format!("expected id {i}, found {}", m.id)));
            }
            if m.src >= n || m.tgt >= n {
                return Err(schema(format!("morphisms[{i}]"), "endpoint is not an object".into()));
            }
            arrows.push((m.src, m.tgt));
        }
        let mut identities = vec![usize::MAX; n];
        for (k, &v) in &self.identities {
            let a: usize = k
                .parse()
                .map_err(|_| schema(format!("identities.{k}"), "key is not an object id".into()))?;
            if a >= n || v >= arrows.len() {
                return Err(schema(format!("identities.{k}"), "id out of range".into()));
            }
            identities[a] = v;
        }
        if let Some(a) = identities.iter().position(|&v| v == usize::MAX) {
            return Err(schema(format!("identities.{a}"), "missing identity".into()));
        }
        let mut table = HashMap::new();
        for (i, &[g, f, gf]) in self.compose.iter().enumerate() {
            if g >= arrows.len() || f >= arrows.len() || gf >= arrows.len() {
                return Err(schema(format!("compose[{i}]"), "morphism id out of range".into()));
            }
            if table.insert((g, f), gf).is_some() {
                return Err(schema(format!("compose[{i}]"), "duplicate entry".into()));
            }
        }
        Ok(FinCategory::from_table(n, arrows, identities, table))
    }
}

impl FunctorJson {
    pub fn from_functor(f: &Functor) -> Self {
        let (no, nm) = (f.obj.len(), f.mor.len());
        FunctorJson {
            obj_map: f.obj.iter().enumerate().map(|(a, &b)| (key(a, no), b)).collect(),
            mor_map: f.mor.iter().enumerate().map(|(a, &b)| (key(a, nm), b)).collect(),
        }
    }

    pub fn to_maps(&self) -> Result<(Vec<Ob>, Vec<Mor>)> {
        let read = |m: &BTreeMap<String, usize>, field: &str| -> Result<Vec<usize>> {
            let mut out = vec![usize::MAX; m.len()];
            for (k, &v) in m {
                let i: usize = k.parse().map_err(|_| schema(format!("{field}.{k}"), "key is not an id".into()))?;
                if i >= out.len() {
                    return Err(schema(format!("{field}.{k}"), "key out of range".into()));
                }
                out[i] = v;
            }
            Ok(out)
        };
        Ok((read(&self.obj_map, "obj_map")?, read(&self.mor_map, "mor_map")?))
    }
}

fn key(i: usize, count: usize) -> String {
    let width = count.saturating_sub(1).to_string().len();
    format!("{i:0width$}")
}

fn schema(path: String, message: String) -> Error {
    Error::Schema { path, message }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(c: FinCategory) -> Arc<FinCategory> {
        Arc::new(c)
    }

    #[test]
    fn interval_groupoid_sizes() {
        let j = iso_interval();
        assert_eq!((j.object_count(), j.morphism_count()), (2, 4));
        assert!(validate_category(&j).is_ok());
        let b = boundary2();
        assert_eq!(b.morphism_count(), 7);
        assert_eq!(b.hom(0, 2).len(), 2);
        assert!(validate_category(&b).is_ok());
        assert!(validate_category(&simplex2()).is_ok());
    }

    #[test]
    fn corrupted_table_is_reported() {
        let j = iso_interval();
        let mut entries: HashMap<(Mor, Mor), Mor> =
            j.composition_entries().into_iter().map(|(g, f, gf)| ((g, f), gf)).collect();
        // The two non-identity arrows compose to an identity; point one
        // entry at the wrong identity.
        entries.insert((2, 3), 0);
        let bad = FinCategory::from_table(2, j.arrows(), vec![0, 1], entries);
        let report = validate_category(&bad);
        assert!(!report.is_ok());
        assert!(report.violations.iter().any(|v| v.rule == "composition-typing"));
    }

    #[test]
    fn equivalence_examples() {
        let j = arc(iso_interval());
        assert!(is_equivalence(&Functor::identity(j.clone())).unwrap());
        let pt = arc(point());
        let inc = Functor::new(pt.clone(), j.clone(), vec![0], vec![0]);
        assert!(is_equivalence(&inc).unwrap());
        let d2 = arc(discrete(2));
        let inc2 = Functor::new(pt, d2, vec![0], vec![0]);
        assert!(!is_equivalence(&inc2).unwrap());
        let w = equivalence_witness(&inc).unwrap().unwrap();
        assert!(w.unit.validate().is_ok() && w.counit.validate().is_ok());
        assert!(w.unit.is_iso() && w.counit.is_iso());
    }

    #[test]
    fn invalid_functor_is_rejected() {
        let j = arc(iso_interval());
        let bad = Functor::new(j.clone(), j, vec![0, 1], vec![0, 1, 2, 2]);
        assert!(matches!(is_equivalence(&bad), Err(Error::InvalidFunctor(_))));
    }

    #[test]
    fn isofibration_examples() {
        let g = Generators::new();
        assert!(!is_isofibration(&g.i0));
        assert!(is_isofibration(&Functor::to_terminal(g.iso.clone())));
        let i = arc(simplex2());
        let f = Functor::new(i.clone(), i.clone(), vec![0, 0, 0], vec![0; i.morphism_count()]);
        assert!(is_isofibration(&f));
    }

    #[test]
    fn lifting_examples() {
        let g = Generators::new();
        let term = Functor::to_terminal(g.iso.clone());
        let problem = LiftingProblem {
            left: g.i0.clone(),
            right: term.clone(),
            top: g.i0.clone(),
            bottom: Functor::to_terminal(g.iso.clone()),
        };
        assert!(solve_rlp(&problem).unwrap().is_some());
        let p = g.i0.clone();
        let problem = LiftingProblem {
            left: g.i0.clone(),
            right: p.clone(),
            top: Functor::identity(g.point.clone()),
            bottom: Functor::identity(g.iso.clone()),
        };
        assert!(solve_rlp(&problem).unwrap().is_none());
        assert!(!has_rlp(&g.i0, &p, 10_000).unwrap().holds);
        let bad = LiftingProblem { bottom: Functor::new(g.iso.clone(), g.iso.clone(), vec![1, 1], vec![1, 1, 1, 1]), ..problem };
        assert!(matches!(solve_rlp(&bad), Err(Error::NonCommutingSquare(_))));
    }

    #[test]
    fn boundary_lifting_against_equivalence() {
        let g = Generators::new();
        let j = g.iso.clone();
        let chaotic3 = arc(chaotic(3));
        let f = Functor::new(chaotic3.clone(), j.clone(), vec![0, 1, 1], {
            chaotic3
                .morphisms()
                .map(|m| j.hom(if chaotic3.source(m) == 0 { 0 } else { 1 }, if chaotic3.target(m) == 0 { 0 } else { 1 })[0])
                .collect()
        });
        assert!(f.validate().is_ok());
        assert!(has_rlp(&g.d2, &f, 100_000).unwrap().holds);
    }

    #[test]
    fn classification_examples() {
        let pt = arc(point());
        let e = Functor::new(arc(empty()), pt, vec![], vec![]);
        let c = classify_map(&e, 10_000).unwrap();
        assert!(c.cofibration && !c.weak_equivalence && !c.acyclic_fibration);
        let fold = Functor::to_terminal(arc(discrete(2)));
        let c = classify_map(&fold, 10_000).unwrap();
        assert!(!c.weak_equivalence && c.fibration);
        let j = arc(iso_interval());
        let swap = Functor::new(j.clone(), j, vec![1, 0], vec![1, 0, 3, 2]);
        assert!(swap.validate().is_ok());
        let c = classify_map(&swap, 10_000).unwrap();
        assert!(c.cofibration && c.fibration && c.weak_equivalence && c.acyclic_fibration_by_lifting);
    }

    #[test]
    fn cores() {
        let (ci, _) = core_groupoid(&arc(interval()));
        assert!(ci.is_discrete() && ci.object_count() == 2);
        let j = arc(iso_interval());
        let (cj, _) = core_groupoid(&j);
        assert_eq!(cj.morphism_count(), 4);
        let (c2, _) = core_groupoid(&arc(boundary2()));
        assert_eq!((c2.object_count(), c2.morphism_count()), (3, 3));
    }

    #[test]
    fn functor_categories() {
        let pt = arc(point());
        let j = arc(iso_interval());
        let one_j = functor_category(&pt, &j, 1000).unwrap();
        assert_eq!(one_j.category.object_count(), 2);
        assert_eq!(one_j.category.morphism_count(), 4);
        let ij = functor_category(&arc(interval()), &j, 1000).unwrap();
        assert_eq!(ij.category.object_count(), 4);
        assert!(validate_category(&ij.category).is_ok());
        let d2j = functor_category(&arc(discrete(2)), &j, 1000).unwrap();
        assert_eq!(d2j.category.object_count(), 4);
        assert_eq!(d2j.category.morphism_count(), 16);
        let err = functor_category(&arc(interval()), &arc(chaotic(3)), 3);
        assert!(matches!(err, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn gabriel_examples() {
        let j = arc(iso_interval());
        let g = gabriel_factorize(&Functor::to_terminal(j.clone()));
        assert_eq!(g.middle.morphism_count(), 4);
        assert!(g.middle.is_groupoid());
        let d2 = arc(discrete(2));
        let inc = Functor::new(d2, j.clone(), vec![0, 1], vec![0, 1]);
        let g = gabriel_factorize(&inc);
        assert_eq!(g.middle.hom(0, 1).len(), 1);
        assert!(g.second.is_fully_faithful());
        assert!(g.second.after(&g.first).same_as(&inc));
        let id = gabriel_factorize(&Functor::identity(j.clone()));
        assert_eq!(id.middle.morphism_count(), j.morphism_count());
    }

    #[test]
    fn products_and_pairing() {
        let j = arc(iso_interval());
        let p = Product::new(vec![j.clone(), j.clone()]);
        assert_eq!(p.category.object_count(), 4);
        assert_eq!(p.category.morphism_count(), 16);
        assert!(validate_category(&p.category).is_ok());
        let diag = p.pairing(&[Functor::identity(j.clone()), Functor::identity(j.clone())]);
        assert!(diag.validate().is_ok());
        assert_eq!(p.morphism_components(p.morphism(&[2, 3])), vec![2, 3]);
    }

    #[test]
    fn json_round_trip() {
        let j = iso_interval();
        let json = CategoryJson::from_category(&j);
        let back = json.to_category().unwrap();
        assert!(back.same_as(&j));
        let text = serde_json::to_string(&json).unwrap();
        let again: CategoryJson = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&again).unwrap(), text);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn preorder_from(n: usize, bits: u32) -> FinCategory {
            // Reflexive-transitive closure of the relation encoded in `bits`.
            let mut le = vec![vec![false; n]; n];
            for a in 0..n {
                for b in 0..n {
                    le[a][b] = a == b || bits >> (a * n + b) & 1 == 1;
                }
            }
            for k in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        le[a][b] |= le[a][k] && le[k][b];
                    }
                }
            }
            preorder(n, |a, b| le[a][b])
        }

        proptest! {
            #[test]
            fn preorders_are_categories(n in 0usize..5, bits in any::<u32>()) {
                let c = preorder_from(n, bits);
                prop_assert!(validate_category(&c).is_ok());
                prop_assert!(c.opposite().opposite().same_as(&c));
                prop_assert!(validate_category(&c.opposite()).is_ok());
            }

            #[test]
            fn full_subcategories_are_categories(n in 1usize..5, bits in any::<u32>(), keep in any::<u8>()) {
                let c = preorder_from(n, bits);
                let objects: Vec<Ob> = (0..n).filter(|a| keep >> a & 1 == 1).collect();
                let (sub, obs, _) = c.full_subcategory(&objects);
                prop_assert!(validate_category(&sub).is_ok());
                prop_assert_eq!(obs, objects);
            }

            #[test]
            fn identity_functor_is_unit(n in 1usize..5, k in 1usize..4) {
                let c = Arc::new(cyclic_group(k));
                let id = Functor::identity(c.clone());
                prop_assert!(id.validate().is_ok());
                let t = Functor::to_terminal(c);
                prop_assert!(t.after(&id).validate().is_ok());
                let p = Arc::new(preorder_from(n, 0));
                prop_assert!(validate_category(&p).is_ok() && p.is_discrete());
            }
        }
    }
}
