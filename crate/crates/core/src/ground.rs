//! Ground sets, subsets as bitmasks, and exact sparse vectors over the three
//! index families used throughout the crate:
//!
//! * [`Fam`]: pairs `(a|B)` with `B` non-empty and `a ∉ B`,
//! * [`Char`]: subsets with at least two elements,
//! * [`Power`]: all subsets.
//!
//! Reading a vector at a key that lies outside its index family yields zero,
//! so `(b|∅)` coordinates of family vectors and singleton/empty coordinates
//! of characteristic vectors behave as implicit zeros.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use num_traits::Zero;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

pub const MAX_NODES: usize = 16;

/// Finite set of labelled nodes, stored in sorted label order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        labels.sort();
        if labels.len() < 2 || labels.len() > MAX_NODES {
            return Err(Error::GroundSet(format!(
                "need between 2 and {MAX_NODES} nodes, got {}",
                labels.len()
            )));
        }
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::GroundSet("labels must be distinct".into()));
        }
        if labels.iter().any(|l| l.is_empty() || l.contains(['|', ',', ' '])) {
            return Err(Error::GroundSet("labels must be non-empty and free of `|`, `,` and spaces".into()));
        }
        Ok(Self { labels })
    }

    /// Ground set `{a, b, c, ...}` with `n` single-letter labels.
    pub fn letters(n: usize) -> Result<Self> {
        if n > MAX_NODES {
            return Err(Error::GroundSet(format!("at most {MAX_NODES} nodes supported")));
        }
        Self::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n())
    }

    fn compact(&self) -> bool {
        self.labels.iter().all(|l| l.chars().count() == 1)
    }

    /// `"abc"` for single-character labels, `"x1,x2"` otherwise.
    pub fn format_subset(&self, s: Subset) -> String {
        let sep = if self.compact() { "" } else { "," };
        s.elements().map(|i| self.labels[i].as_str()).collect::<Vec<_>>().join(sep)
    }

    pub fn parse_subset(&self, text: &str) -> Result<Subset> {
        let text = text.trim();
        let mut s = Subset::EMPTY;
        if text.is_empty() {
            return Ok(s);
        }
        let parts: Vec<String> = if self.compact() && !text.contains(',') {
            text.chars().map(|c| c.to_string()).collect()
        } else {
            text.split(',').map(|p| p.trim().to_string()).collect()
        };
        for p in parts {
            let i = self
                .index_of(&p)
                .ok_or_else(|| Error::Parse(format!("unknown node `{p}` in `{text}`")))?;
            if s.contains(i) {
                return Err(Error::Parse(format!("node `{p}` repeated in `{text}`")));
            }
            s = s.with(i);
        }
        Ok(s)
    }

    pub fn format_family(&self, f: FamilyIndex) -> String {
        format!("{}|{}", self.labels[f.node], self.format_subset(f.parents))
    }

    pub fn parse_family(&self, text: &str) -> Result<FamilyIndex> {
        let (node, parents) = text
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("expected `node|parents`, got `{text}`")))?;
        let node = self
            .index_of(node.trim())
            .ok_or_else(|| Error::Parse(format!("unknown node in `{text}`")))?;
        FamilyIndex::new(node, self.parse_subset(parents)?)
    }
}

/// Subset of a ground set as an n-bit mask over the canonical label order.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u32);

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.elements().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_mask(mask: u32) -> Self {
        Subset(mask)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        Subset(elements.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self` (including `∅` and `self`) in ascending mask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(Subset(cur))
        })
    }

    /// Image under the node map `i ↦ perm[i]`.
    pub fn permuted(self, perm: &[usize]) -> Subset {
        Subset::from_elements(self.elements().map(|i| perm[i]))
    }
}

/// All subsets of an `n`-element ground set in ascending mask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    (0..1u32 << n).map(Subset)
}

/// Family `(node | parents)`; `parents` is non-empty and excludes `node`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyIndex {
    pub node: usize,
    pub parents: Subset,
}

impl FamilyIndex {
    pub fn new(node: usize, parents: Subset) -> Result<Self> {
        if parents.is_empty() || parents.contains(node) {
            return Err(Error::NotAnIndex {
                space: Fam::NAME,
                key: format!("({node}|{parents:?})"),
            });
        }
        Ok(Self { node, parents })
    }
}

/// Index family of a vector space over a ground set of size `n`.
pub trait IndexFamily: Copy + Clone + fmt::Debug + PartialEq + Eq + PartialOrd + Ord + Hash + Send + Sync + 'static {
    type Key: Copy + Ord + Hash + fmt::Debug + Send + Sync;
    const NAME: &'static str;

    fn is_index(n: usize, key: Self::Key) -> bool;
    /// Canonical position of a key, `None` outside the family.
    fn position(n: usize, key: Self::Key) -> Option<usize>;
    /// All keys in canonical order.
    fn indices(n: usize) -> Vec<Self::Key>;
    fn dimension(n: usize) -> usize;
    fn format_key(gs: &GroundSet, key: Self::Key) -> String;
    fn parse_key(gs: &GroundSet, text: &str) -> Result<Self::Key>;
    fn permute_key(key: Self::Key, perm: &[usize]) -> Self::Key;
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fam {}
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Char {}
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Power {}

fn binomial_small(n: u32, k: u32) -> usize {
    if k > n {
        return 0;
    }
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) as usize / (i + 1) as usize;
    }
    r
}

/// Drops bit `node` from `mask`, shifting higher bits down.
fn compress(mask: u32, node: usize) -> u32 {
    let low = mask & ((1 << node) - 1);
    let high = mask >> (node + 1);
    low | high << node
}

impl IndexFamily for Fam {
    type Key = FamilyIndex;
    const NAME: &'static str = "family-variable";

    fn is_index(n: usize, key: FamilyIndex) -> bool {
        key.node < n
            && !key.parents.is_empty()
            && !key.parents.contains(key.node)
            && key.parents.is_subset_of(Subset::full(n))
    }

    fn position(n: usize, key: FamilyIndex) -> Option<usize> {
        if !Self::is_index(n, key) {
            return None;
        }
        let per_node = (1usize << (n - 1)) - 1;
        Some(key.node * per_node + compress(key.parents.mask(), key.node) as usize - 1)
    }

    fn indices(n: usize) -> Vec<FamilyIndex> {
        let full = Subset::full(n);
        let mut out = Vec::with_capacity(Self::dimension(n));
        for node in 0..n {
            for parents in full.without(node).subsets().skip(1) {
                out.push(FamilyIndex { node, parents });
            }
        }
        out
    }

    fn dimension(n: usize) -> usize {
        n * ((1 << (n - 1)) - 1)
    }

    fn format_key(gs: &GroundSet, key: FamilyIndex) -> String {
        gs.format_family(key)
    }

    fn parse_key(gs: &GroundSet, text: &str) -> Result<FamilyIndex> {
        gs.parse_family(text)
    }

    fn permute_key(key: FamilyIndex, perm: &[usize]) -> FamilyIndex {
        FamilyIndex { node: perm[key.node], parents: key.parents.permuted(perm) }
    }
}

impl IndexFamily for Char {
    type Key = Subset;
    const NAME: &'static str = "characteristic";

    fn is_index(n: usize, key: Subset) -> bool {
        key.len() >= 2 && key.is_subset_of(Subset::full(n))
    }

    fn position(n: usize, key: Subset) -> Option<usize> {
        if !Self::is_index(n, key) {
            return None;
        }
        let k = key.len() as u32;
        let before: usize = (2..k).map(|j| binomial_small(n as u32, j)).sum();
        // colex rank equals ascending mask rank among sets of equal size
        let rank: usize = key
            .elements()
            .enumerate()
            .map(|(j, p)| binomial_small(p as u32, j as u32 + 1))
            .sum();
        Some(before + rank)
    }

    fn indices(n: usize) -> Vec<Subset> {
        let mut out: Vec<Subset> = all_subsets(n).filter(|s| s.len() >= 2).collect();
        out.sort_by_key(|s| (s.len(), s.mask()));
        out
    }

    fn dimension(n: usize) -> usize {
        (1 << n) - n - 1
    }

    fn format_key(gs: &GroundSet, key: Subset) -> String {
        gs.format_subset(key)
    }

    fn parse_key(gs: &GroundSet, text: &str) -> Result<Subset> {
        let s = gs.parse_subset(text)?;
        if s.len() < 2 {
            return Err(Error::NotAnIndex { space: Self::NAME, key: text.to_string() });
        }
        Ok(s)
    }

    fn permute_key(key: Subset, perm: &[usize]) -> Subset {
        key.permuted(perm)
    }
}

impl IndexFamily for Power {
    type Key = Subset;
    const NAME: &'static str = "power-set";

    fn is_index(n: usize, key: Subset) -> bool {
        key.is_subset_of(Subset::full(n))
    }

    fn position(n: usize, key: Subset) -> Option<usize> {
        Self::is_index(n, key).then_some(key.mask() as usize)
    }

    fn indices(n: usize) -> Vec<Subset> {
        all_subsets(n).collect()
    }

    fn dimension(n: usize) -> usize {
        1 << n
    }

    fn format_key(gs: &GroundSet, key: Subset) -> String {
        gs.format_subset(key)
    }

    fn parse_key(gs: &GroundSet, text: &str) -> Result<Subset> {
        gs.parse_subset(text)
    }

    fn permute_key(key: Subset, perm: &[usize]) -> Subset {
        key.permuted(perm)
    }
}

/// Sparse exact vector over an index family; absent keys read as zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector<F: IndexFamily> {
    n: usize,
    coords: BTreeMap<F::Key, Rational>,
}

pub type FamVector = Vector<Fam>;
pub type CharVector = Vector<Char>;
pub type SetFunction = Vector<Power>;

impl<F: IndexFamily> Vector<F> {
    pub fn zero(n: usize) -> Self {
        Self { n, coords: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, key: F::Key) -> Rational {
        self.coords.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, key: F::Key, value: Rational) -> Result<()> {
        if !F::is_index(self.n, key) {
            if value.is_zero() {
                return Ok(());
            }
            return Err(Error::NotAnIndex { space: F::NAME, key: format!("{key:?}") });
        }
        if value.is_zero() {
            self.coords.remove(&key);
        } else {
            self.coords.insert(key, value);
        }
        Ok(())
    }

    pub fn add_to(&mut self, key: F::Key, value: &Rational) -> Result<()> {
        let v = self.get(key) + value;
        self.set(key, v)
    }

    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (F::Key, Rational)>,
    {
        let mut v = Self::zero(n);
        for (k, x) in pairs {
            v.add_to(k, &x)?;
        }
        Ok(v)
    }

    /// Builds a vector from a function evaluated at every index.
    pub fn from_fn(n: usize, mut f: impl FnMut(F::Key) -> Rational) -> Self {
        let coords = F::indices(n)
            .into_iter()
            .filter_map(|k| {
                let v = f(k);
                (!v.is_zero()).then_some((k, v))
            })
            .collect();
        Self { n, coords }
    }

    /// Non-zero entries in key order.
    pub fn iter(&self) -> impl Iterator<Item = (F::Key, &Rational)> {
        self.coords.iter().map(|(k, v)| (*k, v))
    }

    pub fn nnz(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GroundMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn dot(&self, other: &Self) -> Result<Rational> {
        self.check_same(other)?;
        let (small, large) = if self.nnz() <= other.nnz() { (self, other) } else { (other, self) };
        let mut acc = Rational::zero();
        for (k, v) in small.iter() {
            if let Some(w) = large.coords.get(&k) {
                acc += v * w;
            }
        }
        Ok(acc)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.n);
        }
        Self { n: self.n, coords: self.coords.iter().map(|(k, v)| (*k, v * factor)).collect() }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_to(k, v)?;
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scaled(&-Rational::from_integer(1.into())))
    }

    /// Dense coordinates in canonical index order.
    pub fn to_dense(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); F::dimension(self.n)];
        for (k, v) in self.iter() {
            let pos = F::position(self.n, k).expect("stored keys are indices");
            out[pos] = v.clone();
        }
        out
    }

    pub fn from_dense(n: usize, dense: &[Rational]) -> Result<Self> {
        let keys = F::indices(n);
        if keys.len() != dense.len() {
            return Err(Error::InvalidArgument(format!(
                "{} vector for n={n} needs {} coordinates, got {}",
                F::NAME,
                keys.len(),
                dense.len()
            )));
        }
        Ok(Self {
            n,
            coords: keys
                .into_iter()
                .zip(dense)
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (k, v.clone()))
                .collect(),
        })
    }

    /// Image under the node permutation `i ↦ perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            n: self.n,
            coords: self.coords.iter().map(|(k, v)| (F::permute_key(*k, perm), v.clone())).collect(),
        }
    }

    /// JSON object `{"key": "p/q", ...}` in canonical key order.
    pub fn to_json(&self, gs: &GroundSet) -> Value {
        let mut map = Map::new();
        for (k, v) in self.iter() {
            map.insert(F::format_key(gs, k), Value::String(format_rational(v)));
        }
        Value::Object(map)
    }

    pub fn from_json(gs: &GroundSet, value: &Value) -> Result<Self> {
        let map = value
            .as_object()
            .ok_or_else(|| Error::Parse(format!("{} vector must be a JSON object", F::NAME)))?;
        let mut v = Self::zero(gs.n());
        for (key, x) in map {
            let k = F::parse_key(gs, key)?;
            v.add_to(k, &json_rational(x)?)?;
        }
        Ok(v)
    }
}

/// Reads a rational from a JSON string (`"p/q"`) or integer.
pub fn json_rational(value: &Value) -> Result<Rational> {
    match value {
        Value::String(s) => parse_rational(s),
        Value::Number(num) if num.is_i64() => {
            Ok(Rational::from_integer(num.as_i64().expect("checked").into()))
        }
        other => Err(Error::Parse(format!("expected rational string, got {other}"))),
    }
}

impl FamVector {
    /// Indicator of the family `(node|parents)`; the zero vector when `parents = ∅`.
    pub fn identifier(n: usize, node: usize, parents: Subset) -> Self {
        let mut v = Self::zero(n);
        if !parents.is_empty() {
            v.set(FamilyIndex { node, parents }, Rational::from_integer(1.into()))
                .expect("valid family index");
        }
        v
    }

    pub fn family(&self, node: usize, parents: Subset) -> Rational {
        self.get(FamilyIndex { node, parents })
    }
}

impl CharVector {
    /// Zero extension to the whole power set.
    pub fn to_set_function(&self) -> SetFunction {
        SetFunction { n: self.n, coords: self.coords.clone() }
    }

    /// The all-ones characteristic vector.
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_| Rational::from_integer(1.into()))
    }
}

impl SetFunction {
    pub fn delta(n: usize, set: Subset) -> Self {
        let mut v = Self::zero(n);
        v.set(set, Rational::from_integer(1.into())).expect("subset of ground set");
        v
    }

    /// `m(S) = 0` for every `|S| ≤ 1`.
    pub fn is_standardized(&self) -> bool {
        self.iter().all(|(s, _)| s.len() >= 2)
    }

    /// Restriction to sets of size at least two.
    pub fn to_char_vector(&self) -> CharVector {
        CharVector {
            n: self.n,
            coords: self.coords.iter().filter(|(s, _)| s.len() >= 2).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }
}

pub fn enumerate_family_indices(gs: &GroundSet) -> Vec<FamilyIndex> {
    Fam::indices(gs.n())
}

pub fn enumerate_cai(gs: &GroundSet) -> Vec<Subset> {
    Char::indices(gs.n())
}

pub fn scalar_product<F: IndexFamily>(x: &Vector<F>, y: &Vector<F>) -> Result<Rational> {
    x.dot(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn index_counts_match_closed_forms() {
        for n in 2..=8 {
            let gs = GroundSet::letters(n).unwrap();
            assert_eq!(enumerate_family_indices(&gs).len(), n * ((1 << (n - 1)) - 1));
            assert_eq!(enumerate_cai(&gs).len(), (1 << n) - n - 1);
        }
        let g3 = GroundSet::letters(3).unwrap();
        assert_eq!(enumerate_family_indices(&g3).len(), 9);
        assert_eq!(enumerate_cai(&g3).len(), 4);
        let g4 = GroundSet::letters(4).unwrap();
        assert_eq!(enumerate_family_indices(&g4).len(), 28);
        assert_eq!(enumerate_cai(&g4).len(), 11);
        assert_eq!(enumerate_cai(&GroundSet::letters(2).unwrap()), vec![Subset::full(2)]);
    }

    #[test]
    fn positions_follow_enumeration_order() {
        for n in 2..=6 {
            for (i, k) in Fam::indices(n).into_iter().enumerate() {
                assert_eq!(Fam::position(n, k), Some(i));
            }
            for (i, k) in Char::indices(n).into_iter().enumerate() {
                assert_eq!(Char::position(n, k), Some(i));
            }
        }
        let fam = Fam::indices(3);
        assert!(fam.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn extension_conventions() {
        let mut v = FamVector::zero(3);
        assert!(v.set(FamilyIndex { node: 0, parents: Subset::EMPTY }, int(1)).is_err());
        v.set(FamilyIndex { node: 0, parents: Subset::EMPTY }, int(0)).unwrap();
        assert_eq!(v.family(0, Subset::EMPTY), int(0));
        let mut c = CharVector::zero(3);
        assert!(c.set(Subset::singleton(1), int(2)).is_err());
        assert_eq!(c.get(Subset::singleton(1)), int(0));
        assert_eq!(c.get(Subset::EMPTY), int(0));
        c.set(Subset::full(3), int(2)).unwrap();
        c.set(Subset::full(3), int(0)).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn scalar_products() {
        let ones = CharVector::ones(3);
        assert_eq!(scalar_product(&ones, &ones).unwrap(), int(4));
        assert_eq!(scalar_product(&CharVector::zero(3), &ones).unwrap(), int(0));
        assert!(scalar_product(&CharVector::zero(4), &ones).is_err());
    }

    #[test]
    fn subset_iteration() {
        let s = Subset::from_elements([0, 2, 3]);
        assert_eq!(s.subsets().count(), 8);
        assert_eq!(s.elements().collect::<Vec<_>>(), vec![0, 2, 3]);
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
        assert_eq!(s.permuted(&[3, 2, 1, 0]), Subset::from_elements([0, 1, 3]));
    }

    #[test]
    fn json_round_trip_and_labels() {
        let gs = GroundSet::letters(3).unwrap();
        let mut v = FamVector::zero(3);
        v.set(gs.parse_family("c|ab").unwrap(), frac(3, 2)).unwrap();
        v.set(gs.parse_family("a|b").unwrap(), int(-1)).unwrap();
        let json = v.to_json(&gs);
        assert_eq!(json.to_string(), r#"{"a|b":"-1","c|ab":"3/2"}"#);
        assert_eq!(FamVector::from_json(&gs, &json).unwrap(), v);
        assert!(gs.parse_family("a|a").is_err());
        assert!(gs.parse_family("a|").is_err());

        let named = GroundSet::new(["x2", "x1", "x3"]).unwrap();
        assert_eq!(named.labels(), ["x1", "x2", "x3"]);
        let s = named.parse_subset("x3,x1").unwrap();
        assert_eq!(named.format_subset(s), "x1,x3");
        assert!(GroundSet::new(["a", "a"]).is_err());
        assert!(GroundSet::new(["a"]).is_err());
    }

    #[test]
    fn dense_round_trip() {
        let gs = GroundSet::letters(4).unwrap();
        let v = CharVector::from_fn(4, |s| int(s.mask() as i64 % 3 - 1));
        let d = v.to_dense();
        assert_eq!(d.len(), 11);
        assert_eq!(CharVector::from_dense(4, &d).unwrap(), v);
        assert_eq!(CharVector::from_json(&gs, &v.to_json(&gs)).unwrap(), v);
    }
}
