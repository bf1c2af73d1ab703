//! Skeletal finite based sets `n⁺ = {0, …, n}` and finite unbased sets
//! `n̲ = {1, …, n}`, with the structural maps used everywhere else.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A based map `n⁺ → m⁺`; `values[i-1]` is the image of `i`, 0 is the basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasedMap {
    pub dom: usize,
    pub cod: usize,
    pub values: Vec<usize>,
}

/// An unbased map `r̲ → s̲` with values in `1..=s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnbasedMap {
    pub dom: usize,
    pub cod: usize,
    pub values: Vec<usize>,
}

impl BasedMap {
    pub fn new(dom: usize, cod: usize, values: Vec<usize>) -> Self {
        assert_eq!(values.len(), dom, "based map needs one value per element");
        assert!(values.iter().all(|&v| v <= cod), "value out of range");
        BasedMap { dom, cod, values }
    }

    pub fn identity(n: usize) -> Self {
        BasedMap { dom: n, cod: n, values: (1..=n).collect() }
    }

    pub fn zero(n: usize, m: usize) -> Self {
        BasedMap { dom: n, cod: m, values: vec![0; n] }
    }

    /// Image of `i ∈ n⁺`.
    pub fn apply(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.values[i - 1]
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &BasedMap) -> BasedMap {
        assert_eq!(first.cod, self.dom, "based maps do not compose");
        BasedMap { dom: first.dom, cod: self.cod, values: first.values.iter().map(|&v| self.apply(v)).collect() }
    }

    /// Elements of `n̲` not sent to the basepoint, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.dom).filter(|&i| self.values[i - 1] != 0).collect()
    }

    /// Each nonzero target has exactly one preimage, and the map is
    /// order preserving on its support.
    pub fn is_inert(&self) -> bool {
        let supp = self.support();
        supp.len() == self.cod && supp.iter().enumerate().all(|(k, &i)| self.values[i - 1] == k + 1)
    }

    /// Only the basepoint goes to the basepoint.
    pub fn is_active(&self) -> bool {
        self.values.iter().all(|&v| v != 0)
    }

    /// Preimage of a subset of `m̲`, as a sorted list.
    pub fn preimage(&self, subset: &[usize]) -> Vec<usize> {
        (1..=self.dom).filter(|&i| self.values[i - 1] != 0 && subset.contains(&self.values[i - 1])).collect()
    }

    /// Bitmask form of [`BasedMap::preimage`]: bit `i-1` stands for `i`.
    pub fn preimage_mask(&self, mask: u32) -> u32 {
        let mut out = 0;
        for i in 1..=self.dom {
            let v = self.values[i - 1];
            if v != 0 && mask & (1 << (v - 1)) != 0 {
                out |= 1 << (i - 1);
            }
        }
        out
    }

    /// Position in the lexicographic enumeration of `Γop(n⁺, m⁺)`.
    pub fn rank(&self) -> usize {
        self.values.iter().fold(0, |acc, &v| acc * (self.cod + 1) + v)
    }

    pub fn unrank(dom: usize, cod: usize, mut rank: usize) -> Self {
        let mut values = vec![0; dom];
        for i in (0..dom).rev() {
            values[i] = rank % (cod + 1);
            rank /= cod + 1;
        }
        BasedMap { dom, cod, values }
    }

    /// The based map `r⁺ → s⁺` underlying an unbased map.
    pub fn from_unbased(u: &UnbasedMap) -> Self {
        BasedMap { dom: u.dom, cod: u.cod, values: u.values.clone() }
    }
}

impl fmt::Display for BasedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(usize::to_string).collect();
        write!(f, "f: {}->{} [{}]", self.dom, self.cod, vals.join(","))
    }
}

impl UnbasedMap {
    pub fn new(dom: usize, cod: usize, values: Vec<usize>) -> Self {
        assert_eq!(values.len(), dom);
        assert!(values.iter().all(|&v| (1..=cod).contains(&v)), "value out of range");
        UnbasedMap { dom, cod, values }
    }

    pub fn identity(n: usize) -> Self {
        UnbasedMap { dom: n, cod: n, values: (1..=n).collect() }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &UnbasedMap) -> UnbasedMap {
        assert_eq!(first.cod, self.dom, "unbased maps do not compose");
        UnbasedMap { dom: first.dom, cod: self.cod, values: first.values.iter().map(|&v| self.apply(v)).collect() }
    }

    /// Block sum `f + g: r + r' → s + s'`.
    pub fn plus(&self, other: &UnbasedMap) -> UnbasedMap {
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|&v| v + self.cod));
        UnbasedMap { dom: self.dom + other.dom, cod: self.cod + other.cod, values }
    }

    /// Elements of `r̲` mapped to `j`, increasing.
    pub fn fiber(&self, j: usize) -> Vec<usize> {
        (1..=self.dom).filter(|&i| self.values[i - 1] == j).collect()
    }

    pub fn is_bijection(&self) -> bool {
        if self.dom != self.cod {
            return false;
        }
        let mut seen = vec![false; self.cod + 1];
        self.values.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn inverse(&self) -> Option<UnbasedMap> {
        if !self.is_bijection() {
            return None;
        }
        let mut values = vec![0; self.dom];
        for (i, &v) in self.values.iter().enumerate() {
            values[v - 1] = i + 1;
        }
        Some(UnbasedMap { dom: self.dom, cod: self.cod, values })
    }
}

impl fmt::Display for UnbasedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(usize::to_string).collect();
        write!(f, "u: {}->{} [{}]", self.dom, self.cod, vals.join(","))
    }
}

/// All `(m+1)ⁿ` based maps `n⁺ → m⁺` in lexicographic order.
pub fn enumerate_based_maps(n: usize, m: usize) -> Vec<BasedMap> {
    let count = (m + 1).pow(n as u32);
    (0..count).map(|r| BasedMap::unrank(n, m, r)).collect()
}

/// All `sʳ` unbased maps `r̲ → s̲` in lexicographic order.
pub fn enumerate_unbased_maps(r: usize, s: usize) -> Vec<UnbasedMap> {
    if s == 0 {
        return if r == 0 { vec![UnbasedMap::identity(0)] } else { Vec::new() };
    }
    let count = s.pow(r as u32);
    (0..count)
        .map(|mut code| {
            let mut values = vec![0; r];
            for i in (0..r).rev() {
                values[i] = code % s + 1;
                code /= s;
            }
            UnbasedMap { dom: r, cod: s, values }
        })
        .collect()
}

/// All permutations of `n̲` in lexicographic order.
pub fn permutations(n: usize) -> Vec<UnbasedMap> {
    enumerate_unbased_maps(n, n).into_iter().filter(UnbasedMap::is_bijection).collect()
}

/// The support of `f` with its order-preserving relabeling
/// `Supp(f) ≅ |Supp(f)|̲` (position `k` holds the element labeled `k+1`).
pub fn support(f: &BasedMap) -> Vec<usize> {
    f.support()
}

/// The inert projection `n⁺ → |S|⁺` onto an increasing subset `S ⊆ n̲`.
pub fn projection_onto(n: usize, subset: &[usize]) -> BasedMap {
    let mut values = vec![0; n];
    for (k, &i) in subset.iter().enumerate() {
        values[i - 1] = k + 1;
    }
    BasedMap { dom: n, cod: subset.len(), values }
}

/// Unique factorization `f = f_act ∘ f_inrt` with `f_inrt` the projection
/// onto `Supp(f)⁺` and `f_act` active.
pub fn factor_inert_active(f: &BasedMap) -> (BasedMap, BasedMap) {
    let supp = f.support();
    let inert = projection_onto(f.dom, &supp);
    let active = BasedMap { dom: supp.len(), cod: f.cod, values: supp.iter().map(|&i| f.values[i - 1]).collect() };
    (inert, active)
}

/// All inert–active pairs composing to `f`, by exhaustive search over
/// every middle object `k ≤ n`.
pub fn all_inert_active_factorizations(f: &BasedMap) -> Vec<(BasedMap, BasedMap)> {
    let mut out = Vec::new();
    for k in 0..=f.dom {
        let inerts: Vec<BasedMap> = enumerate_based_maps(f.dom, k).into_iter().filter(BasedMap::is_inert).collect();
        let actives: Vec<BasedMap> = enumerate_based_maps(k, f.cod).into_iter().filter(BasedMap::is_active).collect();
        for i in &inerts {
            for a in &actives {
                if a.after(i) == *f {
                    out.push((i.clone(), a.clone()));
                }
            }
        }
    }
    out
}

/// Which side of `k + l` a projection keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Names of the structural maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructuralKind {
    DeltaProjection { k: usize, l: usize, side: Side },
    Multiplication(usize),
    SmashObject(usize, usize),
    SmashMap(BasedMap, BasedMap),
    SymmetryN(usize, usize),
    PlusN(UnbasedMap, UnbasedMap),
}

/// Result of [`structural_map`]; smash objects are reported by size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structural {
    Based(BasedMap),
    Unbased(UnbasedMap),
    Object(usize),
}

impl StructuralKind {
    /// Parses the textual kind names used by the CLI.
    pub fn parse(kind: &str, params: &[usize]) -> Result<Self> {
        let need = |n: usize| -> Result<()> {
            if params.len() == n {
                Ok(())
            } else {
                Err(Error::UnknownKind(format!("{kind} expects {n} parameters")))
            }
        };
        match kind {
            "delta_left" | "delta_right" => {
                need(2)?;
                let side = if kind == "delta_left" { Side::Left } else { Side::Right };
                Ok(StructuralKind::DeltaProjection { k: params[0], l: params[1], side })
            }
            "multiplication" => {
                need(1)?;
                Ok(StructuralKind::Multiplication(params[0]))
            }
            "smash_object" => {
                need(2)?;
                Ok(StructuralKind::SmashObject(params[0], params[1]))
            }
            "symmetry_n" => {
                need(2)?;
                Ok(StructuralKind::SymmetryN(params[0], params[1]))
            }
            other => Err(Error::UnknownKind(other.to_string())),
        }
    }
}

pub fn structural_map(kind: &StructuralKind) -> Structural {
    match kind {
        StructuralKind::DeltaProjection { k, l, side } => Structural::Based(delta(*k, *l, *side)),
        StructuralKind::Multiplication(n) => Structural::Based(multiplication(*n)),
        StructuralKind::SmashObject(n, m) => Structural::Object(n * m),
        StructuralKind::SmashMap(f, g) => Structural::Based(smash(f, g)),
        StructuralKind::SymmetryN(k, l) => Structural::Unbased(symmetry(*k, *l)),
        StructuralKind::PlusN(f, g) => Structural::Unbased(f.plus(g)),
    }
}

/// `δ^{k+l}_k` (left) or `δ^{k+l}_l` (right): projection onto one block.
pub fn delta(k: usize, l: usize, side: Side) -> BasedMap {
    let values = (1..=k + l)
        .map(|i| match side {
            Side::Left if i <= k => i,
            Side::Right if i > k => i - k,
            _ => 0,
        })
        .collect();
    BasedMap { dom: k + l, cod: if side == Side::Left { k } else { l }, values }
}

/// Projection of `(Σ blocks)⁺` onto block `j` (0-based).
pub fn block_projection(blocks: &[usize], j: usize) -> BasedMap {
    let total: usize = blocks.iter().sum();
    let offset: usize = blocks[..j].iter().sum();
    let values = (1..=total)
        .map(|i| if i > offset && i <= offset + blocks[j] { i - offset } else { 0 })
        .collect();
    BasedMap { dom: total, cod: blocks[j], values }
}

/// The multiplication map `m_n: n⁺ → 1⁺`.
pub fn multiplication(n: usize) -> BasedMap {
    BasedMap { dom: n, cod: 1, values: vec![1; n] }
}

/// Smash identification `(i, j) ↦ (i−1)·m + j` for `n̲ × m̲ ≅ (nm)̲`.
pub fn smash_index(i: usize, j: usize, m: usize) -> usize {
    (i - 1) * m + j
}

/// `f ∧ g: (n n')⁺ → (m m')⁺`.
pub fn smash(f: &BasedMap, g: &BasedMap) -> BasedMap {
    let mut values = Vec::with_capacity(f.dom * g.dom);
    for i in 1..=f.dom {
        for j in 1..=g.dom {
            let (a, b) = (f.apply(i), g.apply(j));
            values.push(if a == 0 || b == 0 { 0 } else { smash_index(a, b, g.cod) });
        }
    }
    BasedMap { dom: f.dom * g.dom, cod: f.cod * g.cod, values }
}

/// The twist `k ∧ l → l ∧ k`, `(i, j) ↦ (j, i)`.
pub fn smash_twist(k: usize, l: usize) -> BasedMap {
    let mut values = Vec::with_capacity(k * l);
    for i in 1..=k {
        for j in 1..=l {
            values.push(smash_index(j, i, k));
        }
    }
    BasedMap { dom: k * l, cod: k * l, values }
}

/// `γ^𝒩(k, l): k + l → l + k`, the block swap.
pub fn symmetry(k: usize, l: usize) -> UnbasedMap {
    let values = (1..=k + l).map(|i| if i <= k { l + i } else { i - k }).collect();
    UnbasedMap { dom: k + l, cod: k + l, values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate_based_maps(1, 1).len(), 2);
        assert_eq!(enumerate_based_maps(0, 5).len(), 1);
        assert_eq!(enumerate_based_maps(2, 2).len(), 9);
        let maps = enumerate_based_maps(2, 2);
        assert!(maps.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn supports() {
        let f = BasedMap::new(3, 2, vec![0, 1, 1]);
        assert_eq!(f.support(), vec![2, 3]);
        assert_eq!(BasedMap::identity(4).support(), vec![1, 2, 3, 4]);
        assert!(BasedMap::zero(3, 2).support().is_empty());
    }

    #[test]
    fn factorization_examples() {
        let id = BasedMap::identity(3);
        assert_eq!(factor_inert_active(&id), (id.clone(), id.clone()));
        let z = BasedMap::zero(3, 2);
        let (i, a) = factor_inert_active(&z);
        assert_eq!((i.cod, a.dom, a.cod), (0, 0, 2));
        let f = BasedMap::new(3, 2, vec![0, 1, 1]);
        let (i, a) = factor_inert_active(&f);
        assert_eq!(i, BasedMap::new(3, 2, vec![0, 1, 2]));
        assert_eq!(a, BasedMap::new(2, 2, vec![1, 1]));
    }

    #[test]
    fn factorization_is_unique_small() {
        for n in 0..=3 {
            for m in 0..=3 {
                for f in enumerate_based_maps(n, m) {
                    assert_eq!(all_inert_active_factorizations(&f), vec![factor_inert_active(&f)]);
                }
            }
        }
    }

    #[test]
    fn structural_examples() {
        assert_eq!(delta(1, 1, Side::Left).values, vec![1, 0]);
        assert_eq!(multiplication(3).values, vec![1, 1, 1]);
        assert_eq!(structural_map(&StructuralKind::SmashObject(2, 2)), Structural::Object(4));
        assert!(matches!(StructuralKind::parse("nonsense", &[]), Err(Error::UnknownKind(_))));
    }

    #[test]
    fn projection_after_twist() {
        for k in 0..=3 {
            for l in 0..=3 {
                let tau = BasedMap::from_unbased(&symmetry(k, l));
                assert_eq!(delta(l, k, Side::Right).after(&tau), delta(k, l, Side::Left));
                assert_eq!(delta(l, k, Side::Left).after(&tau), delta(k, l, Side::Right));
            }
        }
    }

    #[test]
    fn smash_objects_associate() {
        for n in 0..=3 {
            for m in 0..=3 {
                for p in 0..=3 {
                    let (a, b, c) = (BasedMap::identity(n), BasedMap::identity(m), BasedMap::identity(p));
                    let left = smash(&smash(&a, &b), &c);
                    let right = smash(&a, &smash(&b, &c));
                    assert_eq!(left.dom, n * m * p);
                    assert_eq!(left, right);
                    assert_eq!(smash(&BasedMap::identity(1), &a), a);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn factorization_recomposes(n in 0usize..5, m in 0usize..5, seed in any::<usize>()) {
            let total = (m + 1).pow(n as u32);
            let f = BasedMap::unrank(n, m, seed % total);
            let (i, a) = factor_inert_active(&f);
            prop_assert_eq!(a.after(&i), f.clone());
            prop_assert!(i.is_inert());
            prop_assert!(a.is_active());
        }

        #[test]
        fn smash_is_functorial(n in 0usize..3, m in 0usize..3, p in 0usize..3, s in any::<u64>()) {
            let s = s as usize;
            let f = BasedMap::unrank(n, m, s % (m + 1).pow(n as u32));
            let g = BasedMap::unrank(m, p, (s / 7) % (p + 1).pow(m as u32));
            let h = BasedMap::unrank(p, n, (s / 13) % (n + 1).pow(p as u32));
            let k = BasedMap::unrank(n, p, (s / 29) % (p + 1).pow(n as u32));
            prop_assert_eq!(smash(&g.after(&f), &k.after(&h)), smash(&g, &k).after(&smash(&f, &h)));
        }
    }
}
