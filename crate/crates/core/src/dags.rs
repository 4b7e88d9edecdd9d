//! Acyclic directed graphs stored as per-node parent sets, with Markov
//! equivalence tested two ways: by adjacencies plus immoralities, and by
//! closure under covered-arc reversals.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::ground::{GroundSet, Subset};

/// Exhaustive enumeration is memoized up to this many nodes.
pub const MAX_ENUMERATED_NODES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dag {
    parents: Vec<Subset>,
}

/// Induced `a → c ← b` with `a`, `b` non-adjacent; `pair.0 < pair.1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Immorality {
    pub pair: (usize, usize),
    pub collider: usize,
}

/// True iff the parent map admits a consonant total order.
pub fn is_acyclic(parents: &[Subset]) -> Result<bool> {
    let n = parents.len();
    let full = Subset::full(n);
    if let Some(i) = parents.iter().position(|p| !p.is_subset_of(full)) {
        return Err(Error::InvalidArgument(format!("node {i} has a parent outside the ground set")));
    }
    Ok(topological_order(parents).is_some())
}

fn topological_order(parents: &[Subset]) -> Option<Vec<usize>> {
    let n = parents.len();
    let mut placed = Subset::EMPTY;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n).find(|&i| !placed.contains(i) && parents[i].is_subset_of(placed))?;
        placed = placed.with(next);
        order.push(next);
    }
    Some(order)
}

impl Dag {
    pub fn new(parents: Vec<Subset>) -> Result<Self> {
        if parents.iter().enumerate().any(|(i, p)| p.contains(i)) || !is_acyclic(&parents)? {
            return Err(Error::Cyclic);
        }
        Ok(Self { parents })
    }

    pub fn empty(n: usize) -> Self {
        Self { parents: vec![Subset::EMPTY; n] }
    }

    /// The full graph consonant with `order` (every earlier node is a parent).
    pub fn full_from_order(order: &[usize]) -> Self {
        let mut parents = vec![Subset::EMPTY; order.len()];
        let mut seen = Subset::EMPTY;
        for &v in order {
            parents[v] = seen;
            seen = seen.with(v);
        }
        Self { parents }
    }

    pub fn n(&self) -> usize {
        self.parents.len()
    }

    pub fn parents(&self, node: usize) -> Subset {
        self.parents[node]
    }

    pub fn parent_sets(&self) -> &[Subset] {
        &self.parents
    }

    /// Arcs `(from, to)` ordered by head, then tail.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parents.iter().enumerate().flat_map(|(to, p)| p.elements().map(move |from| (from, to)))
    }

    pub fn arc_count(&self) -> usize {
        self.parents.iter().map(|p| p.len()).sum()
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.parents[to].contains(from)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.has_arc(a, b) || self.has_arc(b, a)
    }

    /// Unordered adjacent pairs `(a, b)` with `a < b`.
    pub fn skeleton(&self) -> BTreeSet<(usize, usize)> {
        self.arcs().map(|(a, b)| (a.min(b), a.max(b))).collect()
    }

    pub fn is_full(&self) -> bool {
        let n = self.n();
        self.arc_count() == n * (n - 1) / 2
    }

    pub fn topological_order(&self) -> Vec<usize> {
        topological_order(&self.parents).expect("Dag values are acyclic")
    }

    /// Same graph with `parents(node)` replaced; fails if that creates a cycle.
    pub fn with_parents(&self, node: usize, parents: Subset) -> Result<Self> {
        let mut p = self.parents.clone();
        p[node] = parents;
        Self::new(p)
    }

    pub fn is_subgraph_of(&self, other: &Dag) -> bool {
        self.n() == other.n()
            && self.parents.iter().zip(&other.parents).all(|(a, b)| a.is_subset_of(*b))
    }

    /// Relabels node `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut parents = vec![Subset::EMPTY; self.n()];
        for (i, p) in self.parents.iter().enumerate() {
            parents[perm[i]] = p.permuted(perm);
        }
        Self { parents }
    }

    /// `{"a": "", "b": "a", "c": "ab"}`.
    pub fn to_json(&self, gs: &GroundSet) -> Value {
        let mut map = Map::new();
        for (i, p) in self.parents.iter().enumerate() {
            map.insert(gs.label(i).to_string(), Value::String(gs.format_subset(*p)));
        }
        Value::Object(map)
    }

    pub fn from_json(gs: &GroundSet, value: &Value) -> Result<Self> {
        let map = value.as_object().ok_or_else(|| Error::Parse("DAG must be a JSON object".into()))?;
        let mut parents = vec![Subset::EMPTY; gs.n()];
        let mut seen = Subset::EMPTY;
        for (label, p) in map {
            let node = gs
                .index_of(label)
                .ok_or_else(|| Error::Parse(format!("unknown node `{label}`")))?;
            let text = p.as_str().ok_or_else(|| Error::Parse(format!("parents of `{label}` must be a string")))?;
            parents[node] = gs.parse_subset(text)?;
            seen = seen.with(node);
        }
        if seen != gs.full() {
            return Err(Error::Parse("DAG must list every node of the ground set".into()));
        }
        Self::new(parents)
    }
}

/// Ground set inferred from the node labels of a JSON DAG.
pub fn ground_set_of_json(value: &Value) -> Result<GroundSet> {
    let map = value.as_object().ok_or_else(|| Error::Parse("DAG must be a JSON object".into()))?;
    GroundSet::new(map.keys().cloned())
}

fn enumerate_uncached(n: usize) -> Vec<Dag> {
    let full = Subset::full(n);
    let choices: Vec<Vec<Subset>> = (0..n).map(|i| full.without(i).subsets().collect()).collect();
    choices[0]
        .par_iter()
        .map(|&first| {
            let mut out = Vec::new();
            let mut parents = vec![Subset::EMPTY; n];
            parents[0] = first;
            let mut idx = vec![0usize; n];
            loop {
                for i in 1..n {
                    parents[i] = choices[i][idx[i]];
                }
                if topological_order(&parents).is_some() {
                    out.push(Dag { parents: parents.clone() });
                }
                // odometer over nodes 1..n, last node fastest
                let mut k = n - 1;
                loop {
                    if k == 0 {
                        return out;
                    }
                    idx[k] += 1;
                    if idx[k] < choices[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k -= 1;
                }
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

static DAG_CACHE: [OnceLock<Vec<Dag>>; MAX_ENUMERATED_NODES + 1] =
    [const { OnceLock::new() }; MAX_ENUMERATED_NODES + 1];

/// Every DAG over `n` nodes, in mask-lexicographic order of parent maps.
///
/// Memoized for `n ≤ 5`; larger `n` is enumerated afresh (and is huge).
pub fn all_dags(n: usize) -> &'static [Dag] {
    assert!(
        (1..=MAX_ENUMERATED_NODES).contains(&n),
        "exhaustive enumeration supports 1..={MAX_ENUMERATED_NODES} nodes"
    );
    DAG_CACHE[n].get_or_init(|| enumerate_uncached(n))
}

pub fn enumerate_dags(gs: &GroundSet) -> Result<Vec<Dag>> {
    if gs.n() > MAX_ENUMERATED_NODES {
        return Err(Error::InvalidArgument(format!(
            "exhaustive DAG enumeration is limited to {MAX_ENUMERATED_NODES} nodes"
        )));
    }
    Ok(all_dags(gs.n()).to_vec())
}

pub fn immoralities(g: &Dag) -> BTreeSet<Immorality> {
    let mut out = BTreeSet::new();
    for c in 0..g.n() {
        let pa: Vec<usize> = g.parents(c).elements().collect();
        for (i, &a) in pa.iter().enumerate() {
            for &b in &pa[i + 1..] {
                if !g.adjacent(a, b) {
                    out.insert(Immorality { pair: (a, b), collider: c });
                }
            }
        }
    }
    out
}

pub fn markov_equivalent(g: &Dag, h: &Dag) -> Result<bool> {
    if g.n() != h.n() {
        return Err(Error::GroundMismatch { left: g.n(), right: h.n() });
    }
    Ok(g.skeleton() == h.skeleton() && immoralities(g) == immoralities(h))
}

/// Graphs obtained by reversing one covered arc `a → b`, i.e. one with
/// `pa(b) = pa(a) ∪ {a}`.
pub fn covered_arc_neighbors(g: &Dag) -> Vec<Dag> {
    g.arcs()
        .filter(|&(a, b)| g.parents(b) == g.parents(a).with(a))
        .map(|(a, b)| {
            let mut parents = g.parents.clone();
            parents[b] = parents[b].without(a);
            parents[a] = parents[a].with(b);
            Dag { parents }
        })
        .collect()
}

/// Markov equivalence class of `g` as the closure under covered-arc reversal.
pub fn equivalence_class(g: &Dag) -> BTreeSet<Dag> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([g.clone()]);
    seen.insert(g.clone());
    while let Some(cur) = queue.pop_front() {
        for next in covered_arc_neighbors(&cur) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

type ClassKey = (BTreeSet<(usize, usize)>, BTreeSet<Immorality>);

fn class_key(g: &Dag) -> ClassKey {
    (g.skeleton(), immoralities(g))
}

/// Partition of all DAGs into Markov equivalence classes, as
/// `(least member, class size)` sorted by representative.
pub fn enumerate_equivalence_classes(gs: &GroundSet) -> Result<Vec<(Dag, usize)>> {
    if gs.n() > MAX_ENUMERATED_NODES {
        return Err(Error::InvalidArgument(format!(
            "exhaustive class enumeration is limited to {MAX_ENUMERATED_NODES} nodes"
        )));
    }
    Ok(classes_of(all_dags(gs.n())))
}

pub(crate) fn classes_of(dags: &[Dag]) -> Vec<(Dag, usize)> {
    let mut groups: BTreeMap<ClassKey, (Dag, usize)> = BTreeMap::new();
    for g in dags {
        let entry = groups.entry(class_key(g)).or_insert_with(|| (g.clone(), 0));
        if *g < entry.0 {
            entry.0 = g.clone();
        }
        entry.1 += 1;
    }
    let mut out: Vec<(Dag, usize)> = groups.into_values().collect();
    out.sort();
    out
}

/// Every permutation of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).permutations(n).collect()
}
