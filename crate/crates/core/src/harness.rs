//! Suite orchestration, the named corpus, reports and file round trips.
//!
//! Every check produces one [`Record`]. Records are emitted in a fixed
//! order and carry no timing unless asked, so equal configurations give
//! byte-identical reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::fincat::{
    chaotic, classify_map, cyclic_group, discrete, empty, enumerate_functors, functor_category, gabriel_factorize,
    has_rlp, interval, is_equivalence, is_equivalence_via_cores, is_isofibration, iso_interval, monoid, point,
    preorder, simplex2, validate_category, CategoryJson, Generators, LiftingProblem,
};
use crate::freeperm::{
    check_lax, extend_from_generators, free_hom_count, free_perm, lax_completion, restrict_to_generators,
    verify_extension, finite_sets, LaxSMFunctor,
};
use crate::gammacat::{
    check_oplax_restriction, coyoneda_comparison, day_convolve, functoriality_audit, representable, segal_check,
    segal_functor, smash_precompose, symmetry_comparison, unit_comparison, GammaCategory, GammaJson,
};
use crate::gammaskel::{
    all_inert_active_factorizations, delta, enumerate_based_maps, factor_inert_active, projection_onto, smash,
    symmetry, BasedMap, Side,
};
use crate::leinster::{grothendieck_perm, localize_horizontal, sm_extension};
use crate::permcat::{
    chain_max, chaotic_perm, check_permutative, check_strict_sm_functor, commutative_monoids, discrete_monoid,
    enumerate_strict_sm_functors, find_monoidal_equivalence, find_monoidal_section, mapping_path_factorize,
    PermCategory, PermJson, StrictSMFunctor,
};
use crate::segalnerve::{
    bicycle_smfunctor_roundtrip, degree_one_evaluation, enumerate_bicycles, iso_compare_j, nerve_degree,
    segal_nerve, support_naturality, thickened_nerve_degree, verify_adjunction, wedge_inclusion_check,
    AdjunctionKind, SegalBicycleJson,
};
use crate::{CheckReport, Error, FinCategory, Functor, Result, DEFAULT_BUDGET};

pub const SCHEMA_VERSION: u32 = 1;

pub const SUITES: [&str; 13] = [
    "factorization",
    "lifting-oracles",
    "perm-axioms",
    "day",
    "segal",
    "adjunctions",
    "iso-J",
    "nerve",
    "roundtrip",
    "wedge",
    "localization",
    "freeperm",
    "completion",
];

// ---------------------------------------------------------------- corpus

/// A named member of the built-in corpus.
#[derive(Clone)]
pub enum CorpusItem {
    Category(Arc<FinCategory>),
    Perm(Arc<PermCategory>),
    Gamma(Arc<GammaCategory>),
}

impl CorpusItem {
    pub fn kind(&self) -> &'static str {
        match self {
            CorpusItem::Category(_) => "category",
            CorpusItem::Perm(_) => "permutative",
            CorpusItem::Gamma(_) => "gamma",
        }
    }

    /// The canonical JSON text accepted by [`io_roundtrip`].
    pub fn to_json(&self) -> String {
        match self {
            CorpusItem::Category(c) => canonical(&CategoryJson::from_category(c)),
            CorpusItem::Perm(p) => canonical(&PermJson::from_perm(p)),
            CorpusItem::Gamma(x) => canonical(&GammaJson::from_gamma(x)),
        }
    }
}

/// Small categories with at most three objects and six morphisms.
pub fn small_categories() -> Vec<(String, FinCategory)> {
    let table = |name: &str| commutative_monoids().into_iter().find(|(n, _)| *n == name).expect("monoid").1;
    vec![
        ("cat_empty", empty()),
        ("cat_point", point()),
        ("cat_discrete2", discrete(2)),
        ("cat_discrete3", discrete(3)),
        ("cat_interval", interval()),
        ("cat_iso_interval", iso_interval()),
        ("cat_simplex2", simplex2()),
        ("cat_span", preorder(3, |a, b| a == b || a == 0)),
        ("cat_cospan", preorder(3, |a, b| a == b || b == 2)),
        ("cat_interval_plus_point", preorder(3, |a, b| a == b || (a, b) == (0, 1))),
        ("cat_z2", cyclic_group(2)),
        ("cat_z3", cyclic_group(3)),
        ("cat_or2", monoid(&table("or2"))),
        ("cat_max3", monoid(&table("max3"))),
        ("cat_nil3", monoid(&table("nil3"))),
    ]
    .into_iter()
    .map(|(n, c)| (n.to_string(), c))
    .collect()
}

fn monoid_perm(name: &str) -> Option<Arc<PermCategory>> {
    commutative_monoids().into_iter().find(|(n, _)| *n == name).map(|(_, t)| Arc::new(discrete_monoid(&t)))
}

fn perm_names() -> Vec<String> {
    let monoids: Vec<String> = commutative_monoids().iter().map(|(n, _)| n.to_string()).collect();
    let mut out = monoids.clone();
    out.extend(monoids.iter().filter(|n| monoid_perm(n).map_or(false, |p| p.base.object_count() <= 3)).map(|n| format!("chaotic_{n}")));
    out.extend(["chain2", "chain3", "free_point_3", "free_interval_2", "finite_sets_3"].map(String::from));
    out
}

const GAMMA_NAMES: [&str; 7] =
    ["gamma0", "gamma1", "gamma2", "gamma4", "terminal_gamma", "nerve_z2", "nerve_chaotic_z2"];

pub fn corpus_names() -> Vec<String> {
    let mut out: Vec<String> = small_categories().into_iter().map(|(n, _)| n).collect();
    out.extend(perm_names());
    out.extend(GAMMA_NAMES.map(String::from));
    out
}

pub fn corpus(name: &str) -> Result<CorpusItem> {
    if let Some((_, c)) = small_categories().into_iter().find(|(n, _)| n == name) {
        return Ok(CorpusItem::Category(Arc::new(c)));
    }
    if let Some(p) = perm_corpus(name) {
        return Ok(CorpusItem::Perm(p));
    }
    let gamma = match name {
        "gamma0" => representable(0, 2)?,
        "gamma1" => representable(1, 2)?,
        "gamma2" => representable(2, 2)?,
        "gamma4" => representable(4, 4)?.truncate(2)?,
        "terminal_gamma" => GammaCategory::terminal(3),
        "nerve_z2" => segal_nerve(&monoid_perm("z2").expect("z2"), 3, DEFAULT_BUDGET)?.gamma,
        "nerve_chaotic_z2" => segal_nerve(&chaotic_perm(&monoid_perm("z2").expect("z2")).0, 2, DEFAULT_BUDGET)?.gamma,
        _ => return Err(Error::UnknownCorpus(name.to_string())),
    };
    Ok(CorpusItem::Gamma(Arc::new(gamma)))
}

fn perm_corpus(name: &str) -> Option<Arc<PermCategory>> {
    if let Some(p) = monoid_perm(name) {
        return Some(p);
    }
    if let Some(rest) = name.strip_prefix("chaotic_") {
        return monoid_perm(rest).filter(|p| p.base.object_count() <= 3).map(|p| chaotic_perm(&p).0);
    }
    Some(Arc::new(match name {
        "chain2" => chain_max(2),
        "chain3" => chain_max(3),
        "free_point_3" => free_perm(&Arc::new(point()), 3).perm.as_ref().clone(),
        "free_interval_2" => free_perm(&Arc::new(interval()), 2).perm.as_ref().clone(),
        "finite_sets_3" => finite_sets(3).1,
        _ => return None,
    }))
}

fn perm(name: &str) -> Arc<PermCategory> {
    perm_corpus(name).expect("corpus member")
}

/// Summary of a corpus member for `describe`.
#[derive(Clone, Debug, Serialize)]
pub struct Description {
    pub name: String,
    pub kind: &'static str,
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
    pub notes: BTreeMap<String, Value>,
}

pub fn describe(name: &str) -> Result<Description> {
    let item = corpus(name)?;
    let mut notes = BTreeMap::new();
    let (objects, morphisms) = match &item {
        CorpusItem::Category(c) => {
            notes.insert("groupoid".into(), json!(c.is_groupoid()));
            (vec![c.object_count()], vec![c.morphism_count()])
        }
        CorpusItem::Perm(p) => {
            notes.insert("unit".into(), json!(p.unit));
            notes.insert("bound".into(), json!(p.bound));
            notes.insert("generators".into(), json!(p.generators.objects.len()));
            notes.insert("discrete".into(), json!(p.base.is_discrete()));
            (vec![p.base.object_count()], vec![p.base.morphism_count()])
        }
        CorpusItem::Gamma(x) => {
            notes.insert("truncation".into(), json!(x.truncation));
            notes.insert("based_maps".into(), json!(x.actions.len()));
            (
                x.degrees.iter().map(|c| c.object_count()).collect(),
                x.degrees.iter().map(|c| c.morphism_count()).collect(),
            )
        }
    };
    Ok(Description { name: name.to_string(), kind: item.kind(), objects, morphisms, notes })
}

impl Description {
    pub fn to_text(&self) -> String {
        let mut s = format!("{} ({})\n  objects:   {:?}\n  morphisms: {:?}\n", self.name, self.kind, self.objects, self.morphisms);
        for (k, v) in &self.notes {
            let _ = writeln!(s, "  {k}: {v}");
        }
        s
    }
}

// ---------------------------------------------------------------- config and report

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Suite names, `suite/check-prefix` selectors, or `all`.
    pub suites: Vec<String>,
    pub n_max: usize,
    pub len_max: usize,
    pub entry_max: usize,
    pub budget: usize,
    pub seed: u64,
    /// Restricts corpus-driven suites to one permutative member.
    pub monoid: Option<String>,
    pub timings: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: Vec::new(),
            n_max: 2,
            len_max: 2,
            entry_max: 2,
            budget: DEFAULT_BUDGET,
            seed: 0,
            monoid: None,
            timings: false,
            format: Format::Json,
            out: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The enumeration budget ran out before the check could decide.
    Budget,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Record {
    pub id: String,
    pub anchor: String,
    pub params: Value,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub stats: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub budget: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: u32,
    pub config: Value,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn record(&self, id: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => canonical(self),
            Format::Text => {
                let mut s = String::new();
                for r in &self.records {
                    let tag = match r.status {
                        Status::Pass => "PASS  ",
                        Status::Fail => "FAIL  ",
                        Status::Budget => "BUDGET",
                    };
                    let _ = write!(s, "{tag} {}  [{}]  {}  {}", r.id, r.anchor, r.params, r.stats);
                    if let Some(ms) = r.wall_time_ms {
                        let _ = write!(s, "  {ms} ms");
                    }
                    s.push('\n');
                    if let Some(w) = &r.witness {
                        let _ = writeln!(s, "       witness: {w}");
                    }
                }
                let _ = writeln!(s, "summary: {} pass, {} fail, {} budget", self.summary.pass, self.summary.fail, self.summary.budget);
                s
            }
        }
    }
}

/// Pretty JSON with a trailing newline; the byte-stable form.
pub fn canonical<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

struct Selector {
    suite: &'static str,
    check: Option<String>,
}

fn parse_selectors(items: &[String]) -> Result<Vec<Selector>> {
    let mut out: Vec<Selector> = Vec::new();
    for item in items.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
        if item == "all" {
            out.extend(SUITES.iter().map(|s| Selector { suite: s, check: None }));
            continue;
        }
        let (name, check) = match item.split_once('/') {
            Some((a, b)) => (a, Some(b.to_string())),
            None => (item, None),
        };
        let suite = SUITES.iter().find(|s| **s == name).ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
        out.push(Selector { suite, check });
    }
    Ok(out)
}

/// Runs the selected suites. An empty selector yields an empty report.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    if config.budget == 0 {
        return Err(Error::Schema { path: "budget".into(), message: "must be positive".into() });
    }
    if let Some(m) = &config.monoid {
        if perm_corpus(m).is_none() {
            return Err(Error::UnknownCorpus(m.clone()));
        }
    }
    let selectors = parse_selectors(&config.suites)?;
    let mut runner = Runner { cfg: config, suite: "", filter: None, records: Vec::new() };
    for sel in &selectors {
        runner.suite = sel.suite;
        runner.filter = sel.check.clone();
        match sel.suite {
            "factorization" => factorization(&mut runner),
            "lifting-oracles" => lifting_oracles(&mut runner),
            "perm-axioms" => perm_axioms(&mut runner),
            "day" => day(&mut runner),
            "segal" => segal(&mut runner),
            "adjunctions" => adjunctions(&mut runner),
            "iso-J" => iso_j(&mut runner),
            "nerve" => nerve(&mut runner),
            "roundtrip" => roundtrip(&mut runner),
            "wedge" => wedge(&mut runner),
            "localization" => localization(&mut runner),
            "freeperm" => freeperm(&mut runner),
            "completion" => completion(&mut runner),
            _ => unreachable!("selector names are validated"),
        }
    }
    let mut summary = Summary::default();
    for r in &runner.records {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Budget => summary.budget += 1,
        }
    }
    let cfg = json!({
        "suites": config.suites,
        "n_max": config.n_max,
        "len_max": config.len_max,
        "entry_max": config.entry_max,
        "budget": config.budget,
        "seed": config.seed,
        "monoid": config.monoid,
    });
    Ok(Report { schema_version: SCHEMA_VERSION, config: cfg, records: runner.records, summary })
}

// ---------------------------------------------------------------- runner

struct Outcome {
    ok: bool,
    witness: Option<String>,
    stats: Value,
}

/// Counts checks and keeps the first failure.
#[derive(Default)]
struct Tally {
    checked: usize,
    failed: usize,
    witness: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    fn report(&mut self, r: &CheckReport, context: impl FnOnce() -> String) {
        self.check(r.is_ok(), || match r.violations.first() {
            Some(v) => format!("{}: {v}", context()),
            None => context(),
        });
    }

    fn outcome(self, mut stats: Value) -> Outcome {
        if let Value::Object(map) = &mut stats {
            map.insert("checked".into(), json!(self.checked));
            map.insert("failed".into(), json!(self.failed));
        }
        Outcome { ok: self.failed == 0, witness: self.witness, stats }
    }
}

struct Runner<'a> {
    cfg: &'a SuiteConfig,
    suite: &'static str,
    filter: Option<String>,
    records: Vec<Record>,
}

impl Runner<'_> {
    fn wants(&self, check: &str) -> bool {
        self.filter.as_deref().map_or(true, |f| check.starts_with(f))
    }

    fn run(&mut self, check: &str, anchor: &str, params: Value, body: impl FnOnce() -> Result<Outcome>) {
        if !self.wants(check) {
            return;
        }
        let start = Instant::now();
        let result = body();
        let wall_time_ms = self.cfg.timings.then(|| start.elapsed().as_millis() as u64);
        let (status, witness, stats) = match result {
            Ok(o) => (if o.ok { Status::Pass } else { Status::Fail }, o.witness, o.stats),
            Err(e @ Error::BudgetExceeded { .. }) => (Status::Budget, Some(e.to_string()), json!({})),
            Err(e) => (Status::Fail, Some(format!("error: {e}")), json!({})),
        };
        self.records.push(Record {
            id: format!("{}/{check}", self.suite),
            anchor: anchor.to_string(),
            params,
            status,
            witness,
            stats,
            wall_time_ms,
        });
    }

    /// Permutative corpus members for a suite, narrowed by `--monoid`.
    fn perms(&self, defaults: &[&str]) -> Vec<String> {
        match &self.cfg.monoid {
            Some(m) => vec![m.clone()],
            None => defaults.iter().map(|s| s.to_string()).collect(),
        }
    }
}

fn describe_functor(f: &Functor) -> String {
    format!("obj {:?}, mor {:?}", f.obj, f.mor)
}

fn describe_square(p: &LiftingProblem) -> String {
    format!(
        "square with top ({}) and bottom ({}) has no filler",
        describe_functor(&p.top),
        describe_functor(&p.bottom)
    )
}

// ---------------------------------------------------------------- factorization

fn factorization(r: &mut Runner) {
    let n_max = r.cfg.n_max;
    r.run("inert-active", "inert-active factorization of based maps", json!({ "n_max": n_max }), || {
        let mut t = Tally::default();
        let mut maps = 0;
        for n in 0..=n_max {
            for m in 0..=n_max {
                for f in enumerate_based_maps(n, m) {
                    maps += 1;
                    let (inert, active) = factor_inert_active(&f);
                    let all = all_inert_active_factorizations(&f);
                    let ok = active.after(&inert) == f
                        && inert.is_inert()
                        && active.is_active()
                        && inert == projection_onto(n, &f.support())
                        && all.len() == 1
                        && all[0] == (inert.clone(), active.clone());
                    t.check(ok, || format!("{f}: {} factorizations found", all.len()));
                }
            }
        }
        Ok(t.outcome(json!({ "maps": maps })))
    });
    let k_max = n_max.min(3);
    r.run("projection-twist", "block projections commute with the block swap", json!({ "k_max": k_max }), || {
        let mut t = Tally::default();
        for k in 0..=k_max {
            for l in 0..=k_max {
                let tau = BasedMap::from_unbased(&symmetry(k, l));
                t.check(delta(l, k, Side::Right).after(&tau) == delta(k, l, Side::Left), || format!("left block, k={k}, l={l}"));
                t.check(delta(l, k, Side::Left).after(&tau) == delta(k, l, Side::Right), || format!("right block, k={k}, l={l}"));
            }
        }
        Ok(t.outcome(json!({})))
    });
    let s_max = n_max.min(2);
    r.run("smash-associativity", "smash product of based maps is associative and unital", json!({ "size_max": s_max }), || {
        let mut t = Tally::default();
        let maps: Vec<BasedMap> =
            (0..=s_max).flat_map(|a| (0..=s_max).flat_map(move |b| enumerate_based_maps(a, b))).collect();
        let one = BasedMap::identity(1);
        for f in &maps {
            t.check(smash(&one, f) == *f && smash(f, &one) == *f, || format!("unit law at {f}"));
            for g in &maps {
                for h in &maps {
                    t.check(smash(&smash(f, g), h) == smash(f, &smash(g, h)), || format!("({f}) ∧ ({g}) ∧ ({h})"));
                }
            }
        }
        Ok(t.outcome(json!({ "maps": maps.len() })))
    });
}

// ---------------------------------------------------------------- lifting oracles

struct CorpusFunctor {
    label: String,
    functor: Functor,
}

fn exhaustive_functors(budget: usize) -> Result<Vec<CorpusFunctor>> {
    let cats: Vec<(String, Arc<FinCategory>)> = small_categories().into_iter().map(|(n, c)| (n, Arc::new(c))).collect();
    let mut out = Vec::new();
    for (an, a) in &cats {
        for (bn, b) in &cats {
            for (i, f) in enumerate_functors(a, b, budget)?.into_iter().enumerate() {
                out.push(CorpusFunctor { label: format!("{an} -> {bn} #{i}"), functor: f });
            }
        }
    }
    Ok(out)
}

fn random_category(rng: &mut ChaCha8Rng) -> (String, FinCategory) {
    let n = rng.gen_range(1..=4);
    match rng.gen_range(0..4) {
        0 => (format!("discrete{n}"), discrete(n)),
        1 => (format!("chaotic{n}"), chaotic(n)),
        2 => {
            let mut le = vec![vec![false; n]; n];
            for (a, row) in le.iter_mut().enumerate() {
                for (b, cell) in row.iter_mut().enumerate() {
                    *cell = a == b || rng.gen_bool(0.35);
                }
            }
            for k in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        if le[a][k] && le[k][b] {
                            le[a][b] = true;
                        }
                    }
                }
            }
            let name = format!("preorder{n}{:?}", le.iter().map(|r| r.iter().map(|&x| x as u8).collect::<Vec<_>>()).collect::<Vec<_>>());
            (name, preorder(n, |a, b| le[a][b]))
        }
        _ => {
            let k = rng.gen_range(1..=3);
            (format!("cyclic{k}"), cyclic_group(k))
        }
    }
}

/// Seeded functors between random categories with at most four objects.
pub fn random_functors(seed: u64, count: usize, budget: usize) -> Result<Vec<(String, Functor)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (an, a) = random_category(&mut rng);
        let (bn, b) = random_category(&mut rng);
        let fs = enumerate_functors(&Arc::new(a), &Arc::new(b), budget)?;
        if fs.is_empty() {
            continue;
        }
        let i = rng.gen_range(0..fs.len());
        out.push((format!("{an} -> {bn} #{i}"), fs[i].clone()));
    }
    Ok(out)
}

const RANDOM_FUNCTORS: usize = 200;

fn oracle_corpus(which: &str, cfg: &SuiteConfig) -> Result<Vec<CorpusFunctor>> {
    if which == "exhaustive" {
        exhaustive_functors(cfg.budget)
    } else {
        Ok(random_functors(cfg.seed, RANDOM_FUNCTORS, cfg.budget)?
            .into_iter()
            .map(|(label, functor)| CorpusFunctor { label, functor })
            .collect())
    }
}

/// Strict SM functors between small corpus members, at most three per pair.
pub fn sm_functor_corpus(limit: usize, budget: usize) -> Result<Vec<(String, StrictSMFunctor)>> {
    let names = ["trivial", "z2", "or2", "z3", "max3", "chaotic_z2", "chaotic_or2", "chaotic_z3", "chain2", "chain3"];
    let perms: Vec<Arc<PermCategory>> = names.iter().map(|n| perm(n)).collect();
    let mut out = Vec::new();
    for (i, a) in perms.iter().enumerate() {
        for (j, b) in perms.iter().enumerate() {
            for (k, f) in enumerate_strict_sm_functors(a, b, budget, |_, _| true)?.into_iter().take(3).enumerate() {
                if out.len() == limit {
                    return Ok(out);
                }
                out.push((format!("{} -> {} #{k}", names[i], names[j]), f));
            }
        }
    }
    Ok(out)
}

const MAPPING_PATH_FUNCTORS: usize = 50;

fn lifting_oracles(r: &mut Runner) {
    let (budget, seed) = (r.cfg.budget, r.cfg.seed);
    for which in ["exhaustive", "random"] {
        let params = if which == "random" { json!({ "seed": seed, "count": RANDOM_FUNCTORS }) } else { json!({}) };
        let cfg = r.cfg;
        r.run(&format!("isofibration/{which}"), "isofibrations are the maps lifting against the iso interval", params.clone(), || {
            let gens = Generators::new();
            let corpus = oracle_corpus(which, cfg)?;
            let mut t = Tally::default();
            let (mut squares, mut isofibrations) = (0, 0);
            for cf in &corpus {
                let iso = is_isofibration(&cf.functor);
                let r0 = has_rlp(&gens.i0, &cf.functor, budget)?;
                let r1 = has_rlp(&gens.i1, &cf.functor, budget)?;
                squares += r0.squares + r1.squares;
                isofibrations += iso as usize;
                t.check(iso == r0.holds && iso == r1.holds, || {
                    let square = r0.counterexample.as_ref().or(r1.counterexample.as_ref()).map(describe_square);
                    format!("{}: isofibration {iso}, lifts {} / {}; {}", cf.label, r0.holds, r1.holds, square.unwrap_or_default())
                });
            }
            Ok(t.outcome(json!({ "functors": corpus.len(), "squares": squares, "isofibrations": isofibrations })))
        });
        r.run(&format!("acyclic/{which}"), "acyclic fibrations lift against the boundary inclusions", params.clone(), || {
            let gens = Generators::new();
            let corpus = oracle_corpus(which, cfg)?;
            let mut t = Tally::default();
            let mut acyclic = 0;
            for cf in &corpus {
                let f = &cf.functor;
                let want = is_equivalence(f)? && f.is_surjective_on_objects();
                let mut lifts = true;
                let mut witness = None;
                for (name, g) in [("∂₀", &gens.d0), ("∂₁", &gens.d1), ("∂₂", &gens.d2)] {
                    let out = has_rlp(g, f, budget)?;
                    if !out.holds {
                        lifts = false;
                        witness = out.counterexample.as_ref().map(|p| format!("{name}: {}", describe_square(p)));
                        break;
                    }
                }
                acyclic += want as usize;
                t.check(want == lifts, || format!("{}: acyclic {want}, lifts {lifts}; {}", cf.label, witness.unwrap_or_default()));
            }
            Ok(t.outcome(json!({ "functors": corpus.len(), "acyclic_fibrations": acyclic })))
        });
        r.run(&format!("equivalence-cores/{which}"), "equivalences detected on cores of the arrow category", params, || {
            let corpus = oracle_corpus(which, cfg)?;
            let mut t = Tally::default();
            let mut equivalences = 0;
            for cf in &corpus {
                let direct = is_equivalence(&cf.functor)?;
                let cores = is_equivalence_via_cores(&cf.functor, budget)?;
                equivalences += direct as usize;
                t.check(direct == cores, || format!("{}: direct {direct}, via cores {cores}", cf.label));
            }
            Ok(t.outcome(json!({ "functors": corpus.len(), "equivalences": equivalences })))
        });
    }
    r.run("gabriel", "identity-on-objects then fully faithful factorization", json!({}), || {
        let mut t = Tally::default();
        let corpus = exhaustive_functors(budget)?;
        for cf in &corpus {
            let g = gabriel_factorize(&cf.functor);
            let n = cf.functor.dom.object_count();
            let ok = validate_category(&g.middle).is_ok()
                && g.first.obj == (0..n).collect::<Vec<_>>()
                && g.second.is_fully_faithful()
                && g.second.after(&g.first).same_as(&cf.functor);
            t.check(ok, || cf.label.clone());
        }
        Ok(t.outcome(json!({ "functors": corpus.len() })))
    });
    r.run("functors-from-point", "functors out of the point recover the category", json!({}), || {
        let mut t = Tally::default();
        let one = Arc::new(point());
        for (name, b) in small_categories() {
            let b = Arc::new(b);
            let fc = functor_category(&one, &b, budget)?;
            let obj = fc.functors.iter().map(|f| f.obj[0]).collect();
            let mor = fc.transformations.iter().map(|(_, _, c)| c[0]).collect();
            let eval = Functor::new(fc.category.clone(), b.clone(), obj, mor);
            t.check(eval.validate().is_ok() && eval.is_isomorphism(), || name.clone());
        }
        Ok(t.outcome(json!({ "categories": small_categories().len() })))
    });
    r.run("mapping-path", "mapping path factorization of strict symmetric monoidal functors", json!({ "count": MAPPING_PATH_FUNCTORS }), || {
        let corpus = sm_functor_corpus(MAPPING_PATH_FUNCTORS, budget)?;
        let mut t = Tally::default();
        for (label, f) in &corpus {
            let mp = mapping_path_factorize(f);
            let composite = mp.project.after(&mp.include);
            t.check(composite.functor.same_as(&f.functor), || format!("{label}: P∘i differs from F"));
            t.check(is_isofibration(&mp.project.functor), || format!("{label}: projection is not an isofibration"));
            t.check(is_equivalence(&mp.include.functor)?, || format!("{label}: inclusion is not an equivalence"));
            t.report(&check_permutative(&mp.path), || format!("{label}: path category"));
            t.report(&check_strict_sm_functor(&mp.include), || format!("{label}: inclusion"));
            t.report(&check_strict_sm_functor(&mp.project), || format!("{label}: projection"));
        }
        Ok(t.outcome(json!({ "functors": corpus.len() })))
    });
}

// ---------------------------------------------------------------- permutative axioms

fn perm_axioms(r: &mut Runner) {
    let budget = r.cfg.budget;
    let names = match &r.cfg.monoid {
        Some(m) => vec![m.clone()],
        None => perm_names(),
    };
    for name in names {
        r.run(&format!("corpus/{name}"), "strictly associative unital tensor with involutive symmetry", json!({ "member": name }), || {
            let p = perm(&name);
            let mut t = Tally::default();
            t.report(&validate_category(&p.base), || "category axioms".into());
            t.report(&check_permutative(&p), || "permutative axioms".into());
            let (objects, morphisms) = p.fragment_size();
            Ok(t.outcome(json!({ "objects": objects, "morphisms": morphisms })))
        });
    }
    let (len, entry) = (r.cfg.len_max, r.cfg.entry_max);
    for n in 0..=r.cfg.n_max {
        let params = json!({ "n": n, "len_max": len, "entry_max": entry });
        r.run(&format!("grothendieck/gamma{n}"), "category of elements of a lax symmetric monoidal functor is permutative", params, || {
            let x = Arc::new(representable(n, n.max(entry))?);
            let ext = sm_extension(x, len, entry)?;
            let g = grothendieck_perm(&ext);
            let mut t = Tally::default();
            t.report(&ext.functoriality(), || "extension functoriality".into());
            t.report(&check_permutative(&g.perm), || "cells".into());
            t.report(&check_strict_sm_functor(&g.projection), || "projection".into());
            let (objects, morphisms) = g.perm.fragment_size();
            Ok(t.outcome(json!({ "objects": objects, "morphisms": morphisms })))
        });
    }
    let small: Vec<String> = r.perms(&["trivial", "z2", "or2", "z3", "max3", "z2_zero", "nil3"]);
    r.run("chaotic-contractible", "chaotic permutative categories are contractible", json!({ "members": small }), || {
        let mut t = Tally::default();
        let one = perm("trivial");
        for name in &small {
            let c = perm(name);
            let (e, iota) = chaotic_perm(&c);
            let n = e.base.object_count();
            let to_one = StrictSMFunctor::new(e.clone(), one.clone(), vec![0; n], vec![0; e.base.morphism_count()]);
            let class = classify_map(&to_one.functor, budget)?;
            t.check(class.fibration && class.weak_equivalence && class.acyclic_fibration_by_lifting, || format!("{name}: {class:?}"));
            t.check(find_monoidal_section(&to_one, budget)?.is_some(), || format!("{name}: no monoidal section"));
            t.report(&check_strict_sm_functor(&iota), || format!("{name}: inclusion"));
            t.check(iota.functor.is_injective_on_objects(), || format!("{name}: inclusion not monic on objects"));
        }
        Ok(t.outcome(json!({})))
    });
    r.run("monoidal-equivalences", "equivalences of permutative categories have monoidal inverses", json!({ "count": MAPPING_PATH_FUNCTORS }), || {
        let mut t = Tally::default();
        let mut equivalences = 0;
        for (label, f) in sm_functor_corpus(MAPPING_PATH_FUNCTORS, budget)? {
            let eq = is_equivalence(&f.functor)?;
            let acyclic = eq && f.functor.is_surjective_on_objects();
            equivalences += eq as usize;
            let inverse = find_monoidal_equivalence(&f, budget)?.is_some();
            let section = find_monoidal_section(&f, budget)?.is_some();
            t.check(eq == inverse, || format!("{label}: equivalence {eq}, monoidal inverse {inverse}"));
            t.check(acyclic == section, || format!("{label}: acyclic {acyclic}, monoidal section {section}"));
        }
        Ok(t.outcome(json!({ "equivalences": equivalences })))
    });
}

// ---------------------------------------------------------------- day convolution

fn day(r: &mut Runner) {
    let (trunc, budget) = (r.cfg.n_max, r.cfg.budget);
    for (a, b) in [(1, 1), (2, 1), (2, 2)] {
        let params = json!({ "left": a, "right": b, "truncation": trunc });
        r.run(&format!("representables/{a}x{b}"), "Day convolution of representables", params, || {
            let bound = a.max(b);
            let x = representable(a, bound.max(trunc))?;
            let y = representable(b, bound.max(trunc))?;
            let day = day_convolve(&x, &y, trunc, bound, budget)?;
            let mut t = Tally::default();
            t.report(&functoriality_audit(&day.gamma), || "functoriality".into());
            let cmp = coyoneda_comparison(&day, a, b)?;
            t.report(&cmp.report, || "co-Yoneda comparison".into());
            t.check(cmp.is_isomorphism(), || "co-Yoneda comparison is not an isomorphism".into());
            let counts: Vec<usize> = day.gamma.degrees.iter().map(|c| c.object_count()).collect();
            let expected: Vec<usize> = (0..=trunc).map(|n| (n + 1).pow((a * b) as u32)).collect();
            t.check(counts == expected, || format!("object counts {counts:?}, expected {expected:?}"));
            Ok(t.outcome(json!({ "objects": counts })))
        });
    }
    for name in ["gamma1", "gamma2", "nerve_z2"] {
        r.run(&format!("unit-symmetry/{name}"), "unit and symmetry of Day convolution", json!({ "member": name, "truncation": trunc }), || {
            let x = match corpus(name)? {
                CorpusItem::Gamma(x) => x,
                _ => unreachable!("gamma member"),
            };
            let x = x.truncate(trunc.min(x.truncation))?;
            let t_eff = x.truncation;
            let one = representable(1, t_eff.max(1))?.truncate(t_eff)?;
            let bound = t_eff;
            let day = day_convolve(&x, &one, t_eff, bound, budget)?;
            let swapped = day_convolve(&one, &x, t_eff, bound, budget)?;
            let mut t = Tally::default();
            let unit = unit_comparison(&day, &x)?;
            t.report(&unit.report, || "unit comparison".into());
            t.check(unit.is_isomorphism(), || "unit comparison is not an isomorphism".into());
            let sym = symmetry_comparison(&day, &swapped, &x, &one);
            t.report(&sym.report, || "symmetry comparison".into());
            t.check(sym.is_isomorphism(), || "symmetry comparison is not an isomorphism".into());
            Ok(t.outcome(json!({})))
        });
    }
}

// ---------------------------------------------------------------- Segal condition

fn segal(r: &mut Runner) {
    let (n_max, budget) = (r.cfg.n_max, r.cfg.budget);
    for name in r.perms(&["trivial", "z2", "or2", "z3", "chaotic_z2"]) {
        let c = perm(&name);
        // Chaotic nerves grow as 2^(2^n); keep them at degree two.
        let n = if c.base.is_discrete() { n_max } else { n_max.min(2) };
        r.run(&format!("nerve/{name}"), "Segal nerve is coherently commutative", json!({ "member": name, "n_max": n }), || {
            let nerve = segal_nerve(&c, n, budget)?;
            let seg = segal_check(&nerve.gamma)?;
            let mut t = Tally::default();
            t.report(&functoriality_audit(&nerve.gamma), || "functoriality".into());
            t.report(&seg.report, || "Segal maps".into());
            t.check(seg.basepoint_contractible, || "degree zero is not contractible".into());
            let all_iso = seg.entries.iter().all(|e| e.isomorphism);
            if c.base.is_discrete() {
                t.check(all_iso, || "discrete input but a Segal map is not an isomorphism".into());
            }
            t.report(&check_oplax_restriction(&nerve.gamma), || "oplax restriction symmetry".into());
            if nerve.degrees.len() > 1 {
                t.check(is_equivalence(&degree_one_evaluation(&c, &nerve.degrees[1]))?, || "degree one is not equivalent to the input".into());
            }
            let counts: Vec<usize> = nerve.degrees.iter().map(|d| d.objects.len()).collect();
            Ok(t.outcome(json!({ "objects": counts, "all_isomorphisms": all_iso, "segal_maps": seg.entries.len() })))
        });
        if n >= 2 {
            r.run(&format!("smash-closure/{name}"), "smash precomposition preserves the Segal condition", json!({ "member": name, "n_max": n }), || {
                let nerve = segal_nerve(&c, n, budget)?;
                let y = smash_precompose(&nerve.gamma, 2, n / 2)?;
                let mut t = Tally::default();
                t.report(&functoriality_audit(&y), || "functoriality".into());
                t.report(&segal_check(&y)?.report, || "Segal maps".into());
                Ok(t.outcome(json!({})))
            });
        }
    }
    r.run("representable-is-not-segal", "the representable of degree one is not coherently commutative", json!({}), || {
        let g1 = representable(1, 2)?;
        let seg = segal_check(&g1)?;
        let (_, f) = segal_functor(&g1, 1, 1);
        let mut t = Tally::default();
        t.check(!seg.report.is_ok(), || "Segal check unexpectedly passed".into());
        t.check((f.dom.object_count(), f.cod.object_count()) == (3, 4), || "unexpected object counts".into());
        Ok(t.outcome(json!({})))
    });
}

// ---------------------------------------------------------------- indexing categories

fn adjunctions(r: &mut Runner) {
    let (n_max, len, entry) = (r.cfg.n_max, r.cfg.len_max, r.cfg.entry_max);
    for (kind, tag, anchor) in [
        (AdjunctionKind::Coreflective, "coreflective", "support sequences are coreflective in based sequences"),
        (AdjunctionKind::Reflective, "reflective", "cardinality sequences are reflective in support sequences"),
    ] {
        for n in 0..=n_max {
            r.run(&format!("{tag}/n{n}"), anchor, json!({ "n": n, "len_max": len, "entry_max": entry }), || {
                let rep = verify_adjunction(kind, n, len, entry);
                let mut t = Tally::default();
                t.report(&rep.report, || format!("n={n}"));
                t.check(rep.triangle_passes == rep.objects, || format!("{} of {} objects pass", rep.triangle_passes, rep.objects));
                Ok(t.outcome(json!({ "objects": rep.objects, "morphisms": rep.morphisms, "triangle_passes": rep.triangle_passes })))
            });
        }
    }
    r.run("support-naturality", "support functor is natural in based maps", json!({ "n_max": n_max, "len_max": len, "entry_max": entry }), || {
        let mut t = Tally::default();
        for n in 1..=n_max {
            for m in 1..=n_max {
                t.report(&support_naturality(n, m, len, entry), || format!("n={n}, m={m}"));
            }
        }
        Ok(t.outcome(json!({})))
    });
}

fn iso_j(r: &mut Runner) {
    let (len, entry) = (r.cfg.len_max, r.cfg.entry_max);
    for n in 0..=r.cfg.n_max {
        r.run(&format!("n{n}"), "sequences over a representable match sequences over n", json!({ "n": n, "len_max": len, "entry_max": entry }), || {
            let rep = iso_compare_j(n, len, entry);
            let mut t = Tally::default();
            t.report(&rep.report, || format!("n={n}"));
            Ok(t.outcome(json!({ "hom_pairs": rep.hom_pairs, "morphisms": rep.morphisms, "composable_pairs": rep.composable_pairs })))
        });
    }
}

// ---------------------------------------------------------------- nerve

fn nerve(r: &mut Runner) {
    let (n_max, budget) = (r.cfg.n_max, r.cfg.budget);
    r.run("trivial", "nerve of the terminal permutative category", json!({ "n_max": n_max }), || {
        let one = perm("trivial");
        let mut t = Tally::default();
        for n in 0..=n_max {
            let d = nerve_degree(&one, n, budget)?;
            t.check(d.objects.len() == 1 && d.category.morphism_count() == 1, || format!("degree {n}"));
        }
        Ok(t.outcome(json!({})))
    });
    r.run("z2-counts", "nerve of a discrete group has one bicycle per assignment of singletons", json!({ "n_max": n_max }), || {
        let z2 = perm("z2");
        let mut t = Tally::default();
        let mut counts = Vec::new();
        for n in 0..=n_max {
            let d = nerve_degree(&z2, n, budget)?;
            counts.push(d.objects.len());
            t.check(d.objects.len() == 1 << n, || format!("degree {n}: {} objects", d.objects.len()));
            t.check(d.category.is_discrete(), || format!("degree {n}: not discrete"));
        }
        Ok(t.outcome(json!({ "objects": counts })))
    });
    for name in r.perms(&["trivial", "z2", "or2", "z3", "chaotic_z2"]) {
        r.run(&format!("degree-one/{name}"), "degree one of the nerve recovers the input", json!({ "member": name }), || {
            let c = perm(&name);
            let d1 = nerve_degree(&c, 1, budget)?;
            let mut t = Tally::default();
            t.check(is_equivalence(&degree_one_evaluation(&c, &d1))?, || "evaluation is not an equivalence".into());
            Ok(t.outcome(json!({ "objects": d1.objects.len() })))
        });
    }
    for name in r.perms(&["trivial", "z2"]) {
        r.run(&format!("thickened/{name}"), "pseudo bicycles thicken the nerve", json!({ "member": name, "n": 1, "bound": 2 }), || {
            let c = perm(&name);
            let th = thickened_nerve_degree(&c, 1, 2, budget)?;
            let mut t = Tally::default();
            t.report(&th.report, || "comparison".into());
            t.check(th.comparison.is_injective_on_objects(), || "comparison not injective on objects".into());
            Ok(t.outcome(json!({ "objects": th.keyed.objects.len() })))
        });
    }
    r.run("bicycle-json", "bicycle serialization", json!({ "member": "z2", "n": n_max.min(2) }), || {
        let mut t = Tally::default();
        for b in enumerate_bicycles(&perm("z2"), n_max.min(2), budget)? {
            let j = SegalBicycleJson::from_bicycle(&b);
            let text = canonical(&j);
            let back: SegalBicycleJson = serde_json::from_str(&text)?;
            t.check(back.to_bicycle()? == b && canonical(&back) == text, || text.clone());
        }
        Ok(t.outcome(json!({})))
    });
}

fn roundtrip(r: &mut Runner) {
    let (n_max, len, budget) = (r.cfg.n_max.min(2), r.cfg.len_max.max(2), r.cfg.budget);
    for name in r.perms(&["trivial", "z2", "or2", "chaotic_z2"]) {
        for n in 0..=n_max {
            r.run(&format!("{name}/n{n}"), "bicycles are strict symmetric monoidal functors out of subset sequences", json!({ "member": name, "n": n, "len_max": len }), || {
                let rt = bicycle_smfunctor_roundtrip(&perm(&name), n, len, budget)?;
                let mut t = Tally::default();
                t.report(&rt.report, || format!("n={n}"));
                t.check(rt.bicycles == rt.functors, || format!("{} bicycles, {} functors", rt.bicycles, rt.functors));
                Ok(t.outcome(json!({
                    "bicycles": rt.bicycles,
                    "functors": rt.functors,
                    "bicycle_morphisms": rt.bicycle_morphisms,
                    "transformations": rt.transformations,
                })))
            });
        }
    }
}

fn wedge(r: &mut Runner) {
    for n in 0..=r.cfg.n_max {
        let weight = r.cfg.len_max.max(n);
        r.run(&format!("n{n}"), "wedge of subset sequences includes as an acyclic cofibration", json!({ "n": n, "max_weight": weight }), || {
            let rep = wedge_inclusion_check(n, weight);
            let mut t = Tally::default();
            t.report(&rep.report, || format!("n={n}"));
            Ok(t.outcome(json!({ "source_objects": rep.source_objects, "target_objects": rep.target_objects })))
        });
    }
}

fn localization(r: &mut Runner) {
    let (n, len, budget) = (r.cfg.n_max, r.cfg.len_max, r.cfg.budget);
    let entry = r.cfg.entry_max.min(n);
    let members = r.perms(&["z2"]);
    for name in members {
        r.run(&format!("nerve/{name}"), "horizontal localization of a coherently commutative input", json!({ "member": name, "truncation": n, "len_max": len, "entry_max": entry }), || {
            let x = Arc::new(segal_nerve(&perm(&name), n, budget)?.gamma);
            let loc = localize_horizontal(x, len, entry)?;
            let mut t = Tally::default();
            t.report(&loc.report, || "localization".into());
            t.check(loc.horizontal > 0, || "no horizontal morphisms in the fragment".into());
            Ok(t.outcome(json!({
                "cells": loc.cells.len(),
                "morphisms": loc.category.morphism_count(),
                "horizontal": loc.horizontal,
            })))
        });
    }
    r.run("terminal", "horizontal localization of the terminal input is contractible", json!({ "len_max": len }), || {
        let loc = localize_horizontal(Arc::new(GammaCategory::terminal(2)), len, 2)?;
        let mut t = Tally::default();
        t.report(&loc.report, || "localization".into());
        let c = &loc.category;
        t.check(c.objects().all(|a| c.objects().all(|b| c.hom(a, b).len() == 1)), || "not chaotic".into());
        Ok(t.outcome(json!({ "cells": loc.cells.len() })))
    });
    r.run("refuses-non-segal", "horizontal localization requires the Segal condition", json!({}), || {
        let mut t = Tally::default();
        let out = localize_horizontal(Arc::new(representable(1, 2)?), 2, 2);
        t.check(matches!(out, Err(Error::NotSegal(_))), || "representable accepted".into());
        Ok(t.outcome(json!({})))
    });
}

// ---------------------------------------------------------------- free and lax

fn generator_categories() -> Vec<(String, Arc<FinCategory>)> {
    small_categories().into_iter().filter(|(_, c)| c.object_count() <= 2).map(|(n, c)| (n, Arc::new(c))).collect()
}

fn freeperm(r: &mut Runner) {
    let (len, budget) = (r.cfg.len_max, r.cfg.budget);
    for (name, c) in generator_categories() {
        r.run(&format!("hom-count/{name}"), "free permutative category hom-sets are sums over permutations", json!({ "generators": name, "len_max": len }), || {
            let fp = free_perm(&c, len);
            let mut t = Tally::default();
            t.report(&validate_category(&fp.perm.base), || "category axioms".into());
            t.report(&check_permutative(&fp.perm), || "permutative axioms".into());
            for (x, wx) in fp.keyed.objects.iter().enumerate() {
                for (y, wy) in fp.keyed.objects.iter().enumerate() {
                    let (got, want) = (fp.perm.base.hom(x, y).len(), free_hom_count(&c, wx, wy));
                    t.check(got == want, || format!("hom({wx:?}, {wy:?}) has {got}, expected {want}"));
                }
            }
            Ok(t.outcome(json!({ "objects": fp.perm.base.object_count(), "morphisms": fp.perm.base.morphism_count() })))
        });
    }
    let targets: Vec<String> = r.perms(&["trivial", "z2", "or2", "z3", "max3", "z2_zero", "nil3"]);
    for (name, c) in generator_categories() {
        r.run(&format!("universal/{name}"), "free permutative category is free on its generators", json!({ "generators": name, "len_max": len, "targets": targets }), || {
            let fp = free_perm(&c, len);
            let mut t = Tally::default();
            let mut total = 0;
            for target in &targets {
                let a = perm(target);
                let strict = enumerate_strict_sm_functors(&fp.perm, &a, budget, |_, _| true)?;
                let plain = enumerate_functors(&c, &a.base, budget)?;
                total += plain.len();
                t.check(strict.len() == plain.len(), || format!("{target}: {} strict, {} plain", strict.len(), plain.len()));
                for f in &plain {
                    let g = extend_from_generators(&fp, f, &a)?;
                    t.check(restrict_to_generators(&fp, &g).same_as(f), || format!("{target}: extension does not restrict"));
                    let agreeing = strict.iter().filter(|s| restrict_to_generators(&fp, s).same_as(f)).count();
                    t.check(agreeing == 1, || format!("{target}: {agreeing} strict functors restrict to one functor"));
                }
            }
            Ok(t.outcome(json!({ "functors": total })))
        });
    }
}

/// Lax functors into a thin category: structure maps are forced.
fn thin_lax_functors(p: &Arc<PermCategory>, d: &Arc<PermCategory>, budget: usize) -> Result<Vec<LaxSMFunctor>> {
    let mut out = Vec::new();
    for functor in enumerate_functors(&p.base, &d.base, budget)? {
        let fo = &functor.obj;
        let mut mu = std::collections::HashMap::new();
        let mut ok = true;
        for (&(a, b), &ab) in &p.tensor_ob {
            match d.tensor(fo[a], fo[b]).and_then(|s| d.base.hom(s, fo[ab]).first().copied()) {
                Some(m) => {
                    mu.insert((a, b), m);
                }
                None => ok = false,
            }
        }
        let Some(&unit) = d.base.hom(d.unit, fo[p.unit]).first() else { continue };
        if !ok {
            continue;
        }
        let phi = LaxSMFunctor { dom: p.clone(), cod: d.clone(), functor, mu, unit };
        if check_lax(&phi).is_ok() {
            out.push(phi);
        }
    }
    Ok(out)
}

fn completion(r: &mut Runner) {
    let (len, budget) = (r.cfg.len_max, r.cfg.budget);
    let bases = r.perms(&["trivial", "z2", "or2"]);
    for name in &bases {
        r.run(&format!("structure/{name}"), "lax completion is permutative and folds strictly", json!({ "base": name, "len_max": len }), || {
            let p = perm(name);
            let alphabet: Vec<usize> = p.base.objects().collect();
            let c = lax_completion(&p, len, &alphabet);
            let mut t = Tally::default();
            t.report(&validate_category(&c.perm.base), || "composition".into());
            t.report(&check_permutative(&c.perm), || "permutative axioms".into());
            t.report(&check_strict_sm_functor(&c.fold()?), || "fold".into());
            Ok(t.outcome(json!({ "objects": c.perm.base.object_count(), "morphisms": c.perm.base.morphism_count() })))
        });
    }
    let targets = ["trivial", "z2", "or2", "chain2", "chain3"];
    for name in &bases {
        r.run(&format!("lax-extension/{name}"), "lax functors extend uniquely to strict functors on the completion", json!({ "base": name, "len_max": len, "targets": targets }), || {
            let p = perm(name);
            let alphabet: Vec<usize> = p.base.objects().collect();
            let c = lax_completion(&p, len, &alphabet);
            let mut t = Tally::default();
            let mut tested = 0;
            for target in targets {
                let d = perm(target);
                let mut phis: Vec<LaxSMFunctor> = enumerate_strict_sm_functors(&p, &d, budget, |_, _| true)?
                    .iter()
                    .map(LaxSMFunctor::from_strict)
                    .collect();
                if d.base.objects().all(|a| d.base.objects().all(|b| d.base.hom(a, b).len() <= 1)) {
                    phis.extend(thin_lax_functors(&p, &d, budget)?);
                }
                for phi in &phis {
                    tested += 1;
                    let check = verify_extension(phi, &c, budget)?;
                    t.check(check.passed(), || format!("{target}: {} ({check:?})", describe_functor(&phi.functor)));
                }
            }
            Ok(t.outcome(json!({ "lax_functors": tested })))
        });
    }
}

// ---------------------------------------------------------------- file round trip

/// Outcome of [`io_roundtrip`].
#[derive(Clone, Debug, Serialize)]
pub struct IoReport {
    pub path: String,
    pub kind: &'static str,
    pub bytes: usize,
    pub stable: bool,
    /// Byte offset of the first difference from the canonical form.
    pub first_difference: Option<usize>,
}

fn parse<T: serde::de::DeserializeOwned>(value: &Value) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| Error::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

/// First composition entry whose typing, unit laws or associativity fail.
fn locate_compose_violation(json: &CategoryJson, c: &FinCategory) -> Option<(usize, String)> {
    for (i, &[g, f, gf]) in json.compose.iter().enumerate() {
        if c.target(f) != c.source(g) || c.source(gf) != c.source(f) || c.target(gf) != c.target(g) {
            return Some((i, format!("{g}∘{f} = {gf} has mismatched endpoints")));
        }
        if c.is_identity(g) && gf != f || c.is_identity(f) && gf != g {
            return Some((i, format!("{g}∘{f} = {gf} breaks a unit law")));
        }
    }
    for (i, &[g, f, gf]) in json.compose.iter().enumerate() {
        for h in c.morphisms().filter(|&h| c.source(h) == c.target(g)) {
            let left = c.try_compose(h, gf);
            let right = c.try_compose(h, g).and_then(|hg| c.try_compose(hg, f));
            if left != right {
                return Some((i, format!("{h}∘({g}∘{f}) differs from ({h}∘{g})∘{f}")));
            }
        }
    }
    None
}

fn check_category_json(json: &CategoryJson, prefix: &str) -> Result<FinCategory> {
    let c = json.to_category().map_err(|e| match e {
        Error::Schema { path, message } => Error::Schema { path: format!("{prefix}{path}"), message },
        other => other,
    })?;
    let report = validate_category(&c);
    if let Some(v) = report.violations.first() {
        return Err(match locate_compose_violation(json, &c) {
            Some((i, message)) => Error::Schema { path: format!("{prefix}compose[{i}]"), message },
            None => Error::Schema { path: format!("{prefix}compose"), message: v.to_string() },
        });
    }
    Ok(c)
}

/// Deserializes, validates and reserializes a file, comparing bytes.
pub fn io_roundtrip(path: &Path) -> Result<IoReport> {
    let text = std::fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text)?;
    let has = |k: &str| value.get(k).is_some();
    let (kind, out) = if has("schema_version") {
        let report: Report = parse(&value)?;
        if report.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema { path: "schema_version".into(), message: format!("expected {SCHEMA_VERSION}") });
        }
        ("report", canonical(&report))
    } else if has("psi") {
        let j: SegalBicycleJson = parse(&value)?;
        j.to_bicycle()?;
        ("bicycle", canonical(&j))
    } else if has("truncation") {
        let j: GammaJson = parse(&value)?;
        for (n, d) in j.degrees.iter().enumerate() {
            check_category_json(d, &format!("degrees[{n}]."))?;
        }
        let x = j.to_gamma()?;
        if let Some(v) = functoriality_audit(&x).violations.first() {
            return Err(Error::Schema { path: "actions".into(), message: v.to_string() });
        }
        ("gamma", canonical(&j))
    } else if has("tensor_ob") {
        let j: PermJson = parse(&value)?;
        check_category_json(&j.category, "")?;
        let p = j.to_perm()?;
        if let Some(v) = check_permutative(&p).violations.first() {
            return Err(Error::Schema { path: "tensor_ob".into(), message: v.to_string() });
        }
        ("permutative", canonical(&j))
    } else {
        let j: CategoryJson = parse(&value)?;
        check_category_json(&j, "")?;
        ("category", canonical(&j))
    };
    let first_difference = text.bytes().zip(out.bytes()).position(|(a, b)| a != b).or_else(|| {
        (text.len() != out.len()).then(|| text.len().min(out.len()))
    });
    Ok(IoReport {
        path: path.display().to_string(),
        kind,
        bytes: text.len(),
        stable: first_difference.is_none(),
        first_difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(suites: &[&str]) -> SuiteConfig {
        SuiteConfig { suites: suites.iter().map(|s| s.to_string()).collect(), ..SuiteConfig::default() }
    }

    #[test]
    fn empty_selector_gives_empty_report() {
        let report = run_suite(&config(&[])).unwrap();
        assert!(report.records.is_empty());
        assert!(!report.failed());
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(run_suite(&config(&["nope"])), Err(Error::UnknownSuite(_))));
        let mut cfg = config(&["segal"]);
        cfg.monoid = Some("nope".into());
        assert!(matches!(run_suite(&cfg), Err(Error::UnknownCorpus(_))));
    }

    #[test]
    fn factorization_suite_passes_and_is_deterministic() {
        let cfg = config(&["factorization"]);
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        assert_eq!(a.render(Format::Json), b.render(Format::Json));
        assert_eq!(a.records.len(), 3);
        assert!(a.records.iter().all(|r| r.status == Status::Pass && !r.anchor.is_empty()));
    }

    #[test]
    fn check_selector_narrows_a_suite() {
        let report = run_suite(&config(&["factorization/smash"])).unwrap();
        assert_eq!(report.records.len(), 1);
        assert_eq!(report.records[0].id, "factorization/smash-associativity");
    }

    #[test]
    fn budget_exhaustion_is_its_own_status() {
        let mut cfg = config(&["nerve/z2-counts"]);
        cfg.budget = 1;
        cfg.n_max = 2;
        let report = run_suite(&cfg).unwrap();
        assert_eq!(report.records[0].status, Status::Budget);
        assert!(!report.failed());
    }

    #[test]
    fn random_functors_are_seeded() {
        let a = random_functors(7, 10, DEFAULT_BUDGET).unwrap();
        let b = random_functors(7, 10, DEFAULT_BUDGET).unwrap();
        assert_eq!(a.iter().map(|(l, _)| l).collect::<Vec<_>>(), b.iter().map(|(l, _)| l).collect::<Vec<_>>());
        assert!(a.iter().all(|(_, f)| f.validate().is_ok() && f.dom.object_count() <= 4));
    }

    #[test]
    fn corpus_members_resolve() {
        for name in corpus_names() {
            let d = describe(&name).unwrap();
            assert!(!d.objects.is_empty(), "{name}");
        }
        assert!(small_categories().iter().all(|(_, c)| c.object_count() <= 3 && c.morphism_count() <= 6));
        assert!(matches!(corpus("nope"), Err(Error::UnknownCorpus(_))));
    }

    #[test]
    fn report_round_trips() {
        let report = run_suite(&config(&["factorization/projection"])).unwrap();
        let text = report.render(Format::Json);
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(16))]

        #[test]
        fn random_functors_are_valid(seed in proptest::prelude::any::<u64>()) {
            for (name, f) in random_functors(seed, 8, DEFAULT_BUDGET).unwrap() {
                proptest::prop_assert!(f.validate().is_ok(), "{}", name);
            }
        }
    }
}
