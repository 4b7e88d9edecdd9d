//! Linear inequalities over family variables and characteristic imsets:
//! the standard constraint families, generalized cluster inequalities, the
//! n=4 catalogs and the n=5 counterexample constants.

pub mod catalog;
pub mod counterexample;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::encodings::char_from_fam;
use crate::error::{Error, Result};
use crate::ground::{Char, CharVector, Fam, FamVector, FamilyIndex, GroundSet, IndexFamily, Subset};
use crate::polyhedra::Halfspace;
use crate::rational::{format_rational, int, primitive_scaling, Rational};
use crate::score_equivalence::{char_objective, fam_objective_from_char};
use crate::supermodular::cluster_supermodular;

pub use catalog::{catalog_se_n4, catalog_specific_n4, CatalogEntry};
pub use counterexample::{counterexample_constants, CounterexampleConstants};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    Fam,
    Char,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::Fam => "fam",
            Space::Char => "char",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "fam" => Ok(Space::Fam),
            "char" => Ok(Space::Char),
            other => Err(Error::Parse(format!("unknown space `{other}` (expected fam or char)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Objective {
    Fam(FamVector),
    Char(CharVector),
}

impl Objective {
    pub fn space(&self) -> Space {
        match self {
            Objective::Fam(_) => Space::Fam,
            Objective::Char(_) => Space::Char,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Objective::Fam(v) => v.n(),
            Objective::Char(v) => v.n(),
        }
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        match self {
            Objective::Fam(v) => v.to_dense(),
            Objective::Char(v) => v.to_dense(),
        }
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        match self {
            Objective::Fam(v) => Objective::Fam(v.permuted(perm)),
            Objective::Char(v) => Objective::Char(v.permuted(perm)),
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        match self {
            Objective::Fam(v) => Objective::Fam(v.scaled(factor)),
            Objective::Char(v) => Objective::Char(v.scaled(factor)),
        }
    }

    pub fn to_json(&self, gs: &GroundSet) -> Value {
        match self {
            Objective::Fam(v) => v.to_json(gs),
            Objective::Char(v) => v.to_json(gs),
        }
    }

    fn terms(&self, gs: &GroundSet) -> Vec<(String, Rational)> {
        match self {
            Objective::Fam(v) => v.iter().map(|(k, x)| (Fam::format_key(gs, k), x.clone())).collect(),
            Objective::Char(v) => {
                let mut t: Vec<_> = v.iter().collect();
                t.sort_by_key(|(k, _)| (k.len(), k.mask()));
                t.into_iter().map(|(k, x)| (Char::format_key(gs, k), x.clone())).collect()
            }
        }
    }
}

/// `⟨objective, x⟩ ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearInequality {
    pub objective: Objective,
    pub bound: Rational,
    pub label: String,
}

impl LinearInequality {
    pub fn fam(objective: FamVector, bound: Rational, label: impl Into<String>) -> Self {
        Self { objective: Objective::Fam(objective), bound, label: label.into() }
    }

    pub fn char(objective: CharVector, bound: Rational, label: impl Into<String>) -> Self {
        Self { objective: Objective::Char(objective), bound, label: label.into() }
    }

    pub fn space(&self) -> Space {
        self.objective.space()
    }

    pub fn n(&self) -> usize {
        self.objective.n()
    }

    pub fn fam_objective(&self) -> Option<&FamVector> {
        match &self.objective {
            Objective::Fam(v) => Some(v),
            Objective::Char(_) => None,
        }
    }

    pub fn char_objective(&self) -> Option<&CharVector> {
        match &self.objective {
            Objective::Char(v) => Some(v),
            Objective::Fam(_) => None,
        }
    }

    /// Left-hand side at a family-variable point; char inequalities are
    /// evaluated at the image of the point.
    pub fn value_at_fam(&self, x: &FamVector) -> Result<Rational> {
        match &self.objective {
            Objective::Fam(v) => v.dot(x),
            Objective::Char(z) => z.dot(&char_from_fam(x)),
        }
    }

    pub fn value_at_char(&self, c: &CharVector) -> Result<Rational> {
        match &self.objective {
            Objective::Char(z) => z.dot(c),
            Objective::Fam(_) => Err(Error::InvalidArgument("family-variable inequality at a characteristic point".into())),
        }
    }

    pub fn holds_at_fam(&self, x: &FamVector) -> Result<bool> {
        Ok(self.value_at_fam(x)? <= self.bound)
    }

    pub fn tight_at_fam(&self, x: &FamVector) -> Result<bool> {
        Ok(self.value_at_fam(x)? == self.bound)
    }

    /// Dense halfspace in the canonical coordinate order of its space.
    pub fn to_halfspace(&self) -> Halfspace {
        Halfspace::new(self.objective.to_dense(), self.bound.clone())
    }

    /// Positive multiple with coprime integer coefficients and integral bound.
    pub fn normalized(&self) -> Self {
        let mut all: Vec<Rational> = match &self.objective {
            Objective::Fam(v) => v.iter().map(|(_, x)| x.clone()).collect(),
            Objective::Char(v) => v.iter().map(|(_, x)| x.clone()).collect(),
        };
        all.push(self.bound.clone());
        let (_, factor) = primitive_scaling(&all);
        Self {
            objective: self.objective.scaled(&factor),
            bound: &self.bound * &factor,
            label: self.label.clone(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self == &self.normalized()
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self { objective: self.objective.permuted(perm), bound: self.bound.clone(), label: self.label.clone() }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Same objective and bound, labels ignored.
    pub fn same_as(&self, other: &Self) -> bool {
        self.objective == other.objective && self.bound == other.bound
    }

    pub fn to_json(&self, gs: &GroundSet) -> Value {
        json!({
            "space": self.space().name(),
            "objective": self.objective.to_json(gs),
            "bound": format_rational(&self.bound),
            "label": self.label,
        })
    }

    pub fn from_json(gs: &GroundSet, value: &Value) -> Result<Self> {
        let space = value
            .get("space")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("inequality needs a \"space\" string".into()))?;
        let obj = value.get("objective").ok_or_else(|| Error::Parse("inequality needs an \"objective\"".into()))?;
        let objective = match Space::parse(space)? {
            Space::Fam => Objective::Fam(FamVector::from_json(gs, obj)?),
            Space::Char => Objective::Char(CharVector::from_json(gs, obj)?),
        };
        let bound = crate::ground::json_rational(
            value.get("bound").ok_or_else(|| Error::Parse("inequality needs a \"bound\"".into()))?,
        )?;
        let label = value.get("label").and_then(Value::as_str).unwrap_or("").to_string();
        Ok(Self { objective, bound, label })
    }

    /// `ab + ac - abc <= 2` style rendering.
    pub fn display(&self, gs: &GroundSet) -> String {
        let mut out = String::new();
        for (i, (key, c)) in self.objective.terms(gs).into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !mag.is_one() {
                let _ = write!(out, "{}*", format_rational(&mag));
            }
            out.push_str(&key);
        }
        if out.is_empty() {
            out.push('0');
        }
        let _ = write!(out, " <= {}", format_rational(&self.bound));
        out
    }
}

/// `−fam(a|B) ≤ 0` for every family index.
pub fn nonneg_constraints(gs: &GroundSet) -> Vec<LinearInequality> {
    let n = gs.n();
    Fam::indices(n)
        .into_iter()
        .map(|idx| {
            let mut v = FamVector::zero(n);
            v.set(idx, int(-1)).expect("family index");
            LinearInequality::fam(v, Rational::zero(), format!("nonneg {}", gs.format_family(idx)))
        })
        .collect()
}

/// `Σ_{B≠∅} fam(a|B) ≤ 1`, one per node.
pub fn modified_convexity(gs: &GroundSet) -> Vec<LinearInequality> {
    (0..gs.n()).map(|a| convexity_for(gs, a)).collect()
}

fn convexity_for(gs: &GroundSet, a: usize) -> LinearInequality {
    let n = gs.n();
    let v = FamVector::from_fn(n, |idx: FamilyIndex| if idx.node == a { int(1) } else { Rational::zero() });
    LinearInequality::fam(v, int(1), format!("convexity {}", gs.label(a)))
}

fn check_cluster(n: usize, c: Subset, k: usize) -> Result<()> {
    cluster_supermodular(n, c, k).map(|_| ())
}

fn cluster_label(gs: &GroundSet, c: Subset, k: usize) -> String {
    format!("cluster C={} k={k}", gs.format_subset(c))
}

/// `Σ_{a∈C} Σ_{|B∩C|≥k} fam(a|B) ≤ |C| − k`.
pub fn cluster_fam(gs: &GroundSet, c: Subset, k: usize) -> Result<LinearInequality> {
    let n = gs.n();
    check_cluster(n, c, k)?;
    let v = FamVector::from_fn(n, |idx: FamilyIndex| {
        if c.contains(idx.node) && idx.parents.intersection(c).len() >= k {
            int(1)
        } else {
            Rational::zero()
        }
    });
    Ok(LinearInequality::fam(v, int((c.len() - k) as i64), cluster_label(gs, c, k)))
}

/// Characteristic form: `τ(S) = (−1)^{|S|−k−1}·binom(|S|−2, |S|−k−1)` on
/// subsets of `C` with `|S| ≥ k+1`.
pub fn cluster_char(gs: &GroundSet, c: Subset, k: usize) -> Result<LinearInequality> {
    let n = gs.n();
    check_cluster(n, c, k)?;
    let v = CharVector::from_fn(n, |s| {
        if !s.is_subset_of(c) || s.len() < k + 1 {
            return Rational::zero();
        }
        let e = s.len() - k - 1;
        let b = binomial((s.len() - 2) as i64, e as i64);
        let sign = if e.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        Rational::from_integer(sign * b)
    });
    Ok(LinearInequality::char(v, int((c.len() - k) as i64), cluster_label(gs, c, k)))
}

/// Binomial coefficient with `binom(n,0) = binom(n,n) = 1` for every integer
/// `n` and zero outside `0 ≤ r ≤ n`.
pub fn binomial(n: i64, r: i64) -> BigInt {
    if r == 0 || r == n {
        return BigInt::one();
    }
    if r < 0 || r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc *= BigInt::from(n - i);
        acc = acc.div_floor(&BigInt::from(i + 1));
    }
    acc
}

/// Both sides of `Σ_{m=0}^{s} (−1)^m binom(k+s, k+m) binom(m+k−K, m) = binom(s+K−1, K−1)`.
pub fn binomial_identity(s: i64, k: i64, big_k: i64) -> Result<(BigInt, BigInt)> {
    if s < 0 || big_k < 0 || k < big_k {
        return Err(Error::InvalidArgument(format!("need s >= 0 and k >= K >= 0, got s={s}, k={k}, K={big_k}")));
    }
    let mut lhs = BigInt::zero();
    for m in 0..=s {
        let term = binomial(k + s, k + m) * binomial(m + k - big_k, m);
        if m % 2 == 0 {
            lhs += term;
        } else {
            lhs -= term;
        }
    }
    Ok((lhs, binomial(s + big_k - 1, big_k - 1)))
}

/// Family-variable form of a characteristic-imset inequality.
pub fn fam_from_char_ineq(ineq: &LinearInequality) -> Result<LinearInequality> {
    match &ineq.objective {
        Objective::Char(z) => Ok(LinearInequality::fam(fam_objective_from_char(z), ineq.bound.clone(), ineq.label.clone())),
        Objective::Fam(_) => Err(Error::InvalidArgument("expected a characteristic-imset inequality".into())),
    }
}

/// Characteristic form of a score equivalent family-variable inequality.
pub fn char_from_fam_ineq(ineq: &LinearInequality) -> Result<LinearInequality> {
    match &ineq.objective {
        Objective::Fam(phi) => Ok(LinearInequality::char(char_objective(phi)?, ineq.bound.clone(), ineq.label.clone())),
        Objective::Char(_) => Err(Error::InvalidArgument("expected a family-variable inequality".into())),
    }
}

/// Non-negative combination of convexity rows and non-negativity rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicCertificate {
    pub convexity: Vec<(usize, Rational)>,
    pub nonnegativity: Vec<(FamilyIndex, Rational)>,
}

impl ConicCertificate {
    pub fn combination(&self, gs: &GroundSet) -> LinearInequality {
        let n = gs.n();
        let mut obj = FamVector::zero(n);
        let mut bound = Rational::zero();
        for (a, w) in &self.convexity {
            let row = convexity_for(gs, *a);
            obj = obj.plus(&row.fam_objective().expect("fam").scaled(w)).expect("same n");
            bound += w * &row.bound;
        }
        for (idx, w) in &self.nonnegativity {
            obj.add_to(*idx, &-w).expect("family index");
        }
        LinearInequality::fam(obj, bound, "conic combination")
    }

    /// Multipliers are non-negative, the combined objective equals the
    /// target's, and the combined bound is at most the target's.
    pub fn proves(&self, gs: &GroundSet, target: &LinearInequality) -> bool {
        let nonneg = self.convexity.iter().map(|(_, w)| w).chain(self.nonnegativity.iter().map(|(_, w)| w));
        if nonneg.into_iter().any(|w| w.is_negative()) {
            return false;
        }
        let comb = self.combination(gs);
        Some(comb.fam_objective().expect("fam")) == target.fam_objective() && comb.bound <= target.bound
    }
}

/// Cheapest certificate deriving `ineq` from convexity and non-negativity:
/// node `a` takes weight `max(0, max_B φ(a|B))` and non-negativity rows fill
/// the rest. `None` when the resulting bound exceeds the inequality's.
pub fn conic_certificate(gs: &GroundSet, ineq: &LinearInequality) -> Option<ConicCertificate> {
    let phi = ineq.fam_objective()?;
    let n = gs.n();
    let mut convexity = Vec::new();
    let mut nonnegativity = Vec::new();
    let mut total = Rational::zero();
    for a in 0..n {
        let mut w = Rational::zero();
        for idx in Fam::indices(n).into_iter().filter(|i| i.node == a) {
            w = w.max(phi.get(idx));
        }
        for idx in Fam::indices(n).into_iter().filter(|i| i.node == a) {
            let rest = &w - phi.get(idx);
            if !rest.is_zero() {
                nonnegativity.push((idx, rest));
            }
        }
        if !w.is_zero() {
            total += &w;
            convexity.push((a, w));
        }
    }
    (total <= ineq.bound).then_some(ConicCertificate { convexity, nonnegativity })
}

/// Name of the LP variable for `(node|parents)`: `x_a_bc`.
pub fn lp_variable(gs: &GroundSet, node: usize, parents: Subset) -> String {
    let mut s = format!("x_{}_", gs.label(node));
    for p in parents.elements() {
        s.push_str(gs.label(p));
    }
    s
}

fn lp_terms(out: &mut String, terms: &[(String, BigInt)], fallback: &str) {
    if terms.is_empty() {
        let _ = write!(out, " 0 {fallback}");
        return;
    }
    for (i, (name, c)) in terms.iter().enumerate() {
        if i > 0 && i % 8 == 0 {
            out.push_str("\n   ");
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        let mag = c.abs();
        if mag.is_one() {
            let _ = write!(out, " {sign} {name}");
        } else {
            let _ = write!(out, " {sign} {mag} {name}");
        }
    }
}

fn integral_terms(gs: &GroundSet, obj: &FamVector, factor: &Rational) -> Vec<(String, BigInt)> {
    obj.iter()
        .map(|(idx, v)| (lp_variable(gs, idx.node, idx.parents), (v * factor).to_integer()))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// CPLEX LP text of the family-variable relaxation: empty-parent variables,
/// convexity as equations, the given cuts, and bounds `0 ≤ x ≤ 1`. A rational
/// objective is scaled to integers by a positive factor, noted in a comment.
pub fn export_lp(
    gs: &GroundSet,
    objective: Option<&FamVector>,
    cuts: &[LinearInequality],
    binary: bool,
) -> Result<String> {
    let n = gs.n();
    let mut out = String::new();
    let zero = FamVector::zero(n);
    let obj = objective.unwrap_or(&zero);
    if obj.n() != n {
        return Err(Error::GroundMismatch { left: obj.n(), right: n });
    }
    let coeffs: Vec<Rational> = obj.iter().map(|(_, v)| v.clone()).collect();
    let (_, factor) = primitive_scaling(&coeffs);
    let _ = writeln!(out, "\\ family-variable relaxation, {n} nodes");
    if !factor.is_one() && !obj.is_zero() {
        let _ = writeln!(out, "\\ objective scaled by {}", format_rational(&factor));
    }
    let fallback = lp_variable(gs, 0, Subset::EMPTY);
    out.push_str("Maximize\n obj:");
    lp_terms(&mut out, &integral_terms(gs, obj, &factor), &fallback);
    out.push_str("\nSubject To\n");
    for a in 0..n {
        let mut terms = vec![(lp_variable(gs, a, Subset::EMPTY), BigInt::one())];
        for idx in Fam::indices(n).into_iter().filter(|i| i.node == a) {
            terms.push((lp_variable(gs, a, idx.parents), BigInt::one()));
        }
        let _ = write!(out, " convexity_{}:", gs.label(a));
        lp_terms(&mut out, &terms, &fallback);
        out.push_str(" = 1\n");
    }
    for (i, cut) in cuts.iter().enumerate() {
        let phi = cut
            .fam_objective()
            .ok_or_else(|| Error::InvalidArgument("LP cuts must be family-variable inequalities".into()))?;
        if phi.n() != n {
            return Err(Error::GroundMismatch { left: phi.n(), right: n });
        }
        let norm = cut.normalized();
        let _ = write!(out, " cut_{}:", i + 1);
        lp_terms(&mut out, &integral_terms(gs, norm.fam_objective().expect("fam"), &Rational::one()), &fallback);
        let _ = writeln!(out, " <= {}", norm.bound.to_integer());
    }
    out.push_str("Bounds\n");
    let mut names = Vec::new();
    for a in 0..n {
        names.push(lp_variable(gs, a, Subset::EMPTY));
        for idx in Fam::indices(n).into_iter().filter(|i| i.node == a) {
            names.push(lp_variable(gs, a, idx.parents));
        }
    }
    for name in &names {
        let _ = writeln!(out, " 0 <= {name} <= 1");
    }
    if binary {
        out.push_str("Binaries\n");
        for name in &names {
            let _ = writeln!(out, " {name}");
        }
    }
    out.push_str("End\n");
    Ok(out)
}
