//! End-to-end verification pipelines over the small cases (n = 3, 4) and
//! the five-node counterexample. Each pipeline yields a report of named
//! checks with expected and observed values.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::cache::{cached_facets, cached_vertices, Cache};
use crate::dags::{all_dags, enumerate_equivalence_classes, Dag};
use crate::encodings::{char_imset, fam_vector};
use crate::error::{Error, Result};
use crate::ground::{Char, CharVector, FamVector, GroundSet, IndexFamily};
use crate::inequalities::{
    catalog_se_n4, catalog_specific_n4, cluster_char, cluster_fam, counterexample_constants, fam_from_char_ineq,
    modified_convexity, nonneg_constraints, LinearInequality,
};
use crate::linalg;
use crate::polyhedra::{lp_maximize, max_over_points, Halfspace, HRep, VRep};
use crate::rational::{format_rational, int, is_integral, Rational};
use crate::score_equivalence::{is_closed_under_equivalence, is_se_face, objective_from_setfn, setfn_from_objective};
use crate::supermodular::{cluster_parameters, cluster_supermodular, is_extreme};

const WITNESSES4: &str = include_str!("../data/fvp_star_witnesses4.json");

/// Where an expected value comes from.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// Published constant.
    Reference,
    /// Recomputed by an independent method.
    Oracle,
    /// Immediate from the definitions.
    Definition,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Reference => "reference",
            Source::Oracle => "oracle",
            Source::Definition => "definition",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Not run, e.g. stretch checks without the flag.
    Skipped(String),
    /// Resource budget ran out.
    Exhausted(String),
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped(_) => "skipped",
            Status::Exhausted(_) => "budget",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub observed: String,
    pub status: Status,
    pub source: Source,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub pipeline: String,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
    /// Remarks that are not computations.
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn new(pipeline: &str) -> Self {
        Self { pipeline: pipeline.to_string(), checks: Vec::new(), elapsed: Duration::ZERO, notes: Vec::new() }
    }

    /// All checks that ran passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !matches!(c.status, Status::Fail))
    }

    pub fn budget_exhausted(&self) -> bool {
        self.checks.iter().any(|c| matches!(c.status, Status::Exhausted(_)))
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    fn push(&mut self, id: &str, description: &str, expected: impl ToString, observed: impl ToString, source: Source) {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        let status = if expected == observed { Status::Pass } else { Status::Fail };
        self.checks.push(Check { id: id.into(), description: description.into(), expected, observed, status, source });
    }

    fn push_bool(&mut self, id: &str, description: &str, ok: bool, source: Source) {
        self.push(id, description, true, ok, source);
    }

    fn push_status(&mut self, id: &str, description: &str, expected: impl ToString, status: Status, source: Source) {
        let observed = match &status {
            Status::Skipped(why) | Status::Exhausted(why) => why.clone(),
            _ => String::new(),
        };
        self.checks.push(Check {
            id: id.into(),
            description: description.into(),
            expected: expected.to_string(),
            observed,
            status,
            source,
        });
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": "bnfacets/verification-report/v1",
            "pipeline": self.pipeline,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "id": c.id,
                "description": c.description,
                "expected": c.expected,
                "observed": c.observed,
                "status": c.status.name(),
                "source": c.source.name(),
            })).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }

    /// Human-readable table; elapsed time is left out so output is
    /// reproducible.
    pub fn to_table(&self) -> String {
        let w = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(2).max(2);
        let mut out = format!("pipeline {}\n", self.pipeline);
        for c in &self.checks {
            let _ = writeln!(
                out,
                "  {:<7} {:<w$}  expected {}  observed {}  ({})",
                c.status.name(),
                c.id,
                c.expected,
                c.observed,
                c.source.name()
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        let _ = writeln!(out, "{}", if self.passed() { "PASSED" } else { "FAILED" });
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Applies to each hull or vertex enumeration separately.
    pub time_limit: Option<Duration>,
    pub max_rays: Option<usize>,
    pub memory_mb: Option<usize>,
    /// Run the long FVP checks at n=4.
    pub stretch: bool,
    pub cache: Option<Cache>,
    pub seed: u64,
}

impl VerifyOptions {
    pub fn budget(&self) -> Budget {
        let mut b = Budget::unlimited();
        if let Some(t) = self.time_limit {
            b = b.with_time(t);
        }
        if let Some(r) = self.max_rays {
            b = b.with_max_rays(r);
        }
        if let Some(m) = self.memory_mb {
            b = b.with_memory_mb(m);
        }
        b
    }
}

fn fam_points(n: usize) -> Vec<Vec<Rational>> {
    all_dags(n).iter().map(|g| fam_vector(g).to_dense()).collect()
}

fn char_points(n: usize) -> Vec<Vec<Rational>> {
    let set: BTreeSet<CharVector> = all_dags(n).iter().map(char_imset).collect();
    set.into_iter().map(|c| c.to_dense()).collect()
}

fn halfspaces(ineqs: &[LinearInequality]) -> BTreeSet<Halfspace> {
    ineqs.iter().map(|i| i.to_halfspace().normalized()).collect()
}

fn hrep_of(dim: usize, ineqs: &[LinearInequality]) -> HRep {
    HRep::new(dim, ineqs.iter().map(|i| i.to_halfspace()).collect(), Vec::new()).expect("consistent dimensions")
}

fn budget_status(e: &Error) -> Status {
    Status::Exhausted(e.to_string())
}

fn cip_facets(n: usize, opts: &VerifyOptions) -> Result<(VRep, HRep)> {
    let pts = char_points(n);
    let vrep = VRep::new(Char::dimension(n), pts)?;
    let hrep = cached_facets(opts.cache.as_ref(), &vrep, &opts.budget())?;
    Ok((vrep, hrep))
}

/// Facets of the n=3 characteristic-imset polytope through the 0-imset.
fn zero_facets_n3(gs: &GroundSet) -> Vec<LinearInequality> {
    let forms: [&[(&str, i64)]; 4] = [
        &[("ab", -1)],
        &[("abc", -1)],
        &[("ab", -1), ("ac", -1), ("abc", 1)],
        &[("ab", -1), ("ac", -1), ("bc", -1), ("abc", 2)],
    ];
    let mut out = Vec::new();
    for f in forms {
        let z = CharVector::from_pairs(3, f.iter().map(|(s, v)| (gs.parse_subset(s).expect("subset"), int(*v))))
            .expect("char indices");
        out.extend(crate::inequalities::catalog::orbit_of(&LinearInequality::char(z, Rational::zero(), "")));
    }
    out
}

pub fn verify_n3(opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = VerificationReport::new("n3");
    let gs = GroundSet::letters(3)?;
    r.push("dags", "acyclic directed graphs", 25, all_dags(3).len(), Source::Reference);
    r.push("classes", "Markov equivalence classes", 11, enumerate_equivalence_classes(&gs)?.len(), Source::Reference);

    let fvp = VRep::new(9, fam_points(3))?;
    let budget = opts.budget();
    match cached_facets(opts.cache.as_ref(), &fvp, &budget) {
        Ok(h) => {
            r.push("fvp.facets", "facets of the family-variable polytope", 17, h.inequalities.len(), Source::Reference);
            let clusters: Vec<_> =
                cluster_parameters(3).into_iter().map(|(c, k)| cluster_fam(&gs, c, k)).collect::<Result<_>>()?;
            let mut expected = halfspaces(&clusters);
            expected.extend(halfspaces(&nonneg_constraints(&gs)));
            expected.extend(halfspaces(&modified_convexity(&gs)));
            let got: BTreeSet<Halfspace> = h.inequalities.iter().cloned().collect();
            r.push(
                "fvp.facet-split",
                "facets are 5 cluster + 9 non-negativity + 3 convexity",
                "5+9+3",
                format!(
                    "{}+{}+{}{}",
                    halfspaces(&clusters).intersection(&got).count(),
                    halfspaces(&nonneg_constraints(&gs)).intersection(&got).count(),
                    halfspaces(&modified_convexity(&gs)).intersection(&got).count(),
                    if got == expected { "" } else { " (other facets present)" }
                ),
                Source::Reference,
            );
        }
        Err(e @ Error::Budget(_)) => r.push_status("fvp.facets", "facets of the family-variable polytope", 17, budget_status(&e), Source::Reference),
        Err(e) => return Err(e),
    }

    match cip_facets(3, opts) {
        Ok((cip, ch)) => {
            r.push("cip.vertices", "characteristic imsets", 11, cip.len(), Source::Reference);
            r.push("cip.facets", "facets of the characteristic-imset polytope", 13, ch.inequalities.len(), Source::Reference);
            let ones = CharVector::ones(3).to_dense();
            let zero = CharVector::zero(3).to_dense();
            let at_one: BTreeSet<Halfspace> = ch.inequalities.iter().filter(|h| h.is_tight(&ones)).cloned().collect();
            let at_zero: BTreeSet<Halfspace> = ch.inequalities.iter().filter(|h| h.is_tight(&zero)).cloned().collect();
            r.push("cip.split", "facets through the 1-imset / the 0-imset", "5/8", format!("{}/{}", at_one.len(), at_zero.len()), Source::Reference);
            let cluster_chars: Vec<_> =
                cluster_parameters(3).into_iter().map(|(c, k)| cluster_char(&gs, c, k)).collect::<Result<_>>()?;
            r.push_bool("cip.one-facets", "facets through the 1-imset are the cluster inequalities", at_one == halfspaces(&cluster_chars), Source::Reference);
            r.push_bool("cip.zero-facets", "facets through the 0-imset match the published list", at_zero == halfspaces(&zero_facets_n3(&gs)), Source::Reference);
        }
        Err(e @ Error::Budget(_)) => r.push_status("cip.facets", "facets of the characteristic-imset polytope", 13, budget_status(&e), Source::Reference),
        Err(e) => return Err(e),
    }

    let mut partial: Vec<LinearInequality> = cluster_parameters(3)
        .into_iter()
        .map(|(c, k)| cluster_fam(&gs, c, k))
        .collect::<Result<_>>()?;
    partial.extend(nonneg_constraints(&gs));
    match cached_vertices(opts.cache.as_ref(), &hrep_of(9, &partial), &budget) {
        Ok(v) => r.push("intermediate.vertices", "vertices of cluster + non-negativity polytope", 28, v.len(), Source::Reference),
        Err(e @ Error::Budget(_)) => r.push_status("intermediate.vertices", "vertices of cluster + non-negativity polytope", 28, budget_status(&e), Source::Reference),
        Err(e) => return Err(e),
    }
    partial.extend(modified_convexity(&gs));
    match cached_vertices(opts.cache.as_ref(), &hrep_of(9, &partial), &budget) {
        Ok(v) => r.push_bool("completed.vertices", "adding convexity recovers exactly the DAG-codes", v == fvp, Source::Reference),
        Err(e @ Error::Budget(_)) => r.push_status("completed.vertices", "adding convexity recovers exactly the DAG-codes", true, budget_status(&e), Source::Reference),
        Err(e) => return Err(e),
    }
    r.elapsed = start.elapsed();
    Ok(r)
}

fn parse_witnesses(gs: &GroundSet) -> Result<Vec<FamVector>> {
    let root: Value = serde_json::from_str(WITNESSES4)?;
    ["fam1", "fam2", "fam3"]
        .iter()
        .map(|k| FamVector::from_json(gs, root.get(*k).ok_or_else(|| Error::Parse(format!("missing {k}")))?))
        .collect()
}

/// Family-variable forms of the 37 score equivalent facets at n=4.
pub fn se_fam_inequalities_n4() -> Vec<LinearInequality> {
    catalog_se_n4().iter().flat_map(|e| e.fam_orbit()).collect()
}

pub fn verify_n4(opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = VerificationReport::new("n4");
    let gs = GroundSet::letters(4)?;
    r.push("dags", "acyclic directed graphs", 543, all_dags(4).len(), Source::Reference);
    r.push("classes", "Markov equivalence classes", 185, enumerate_equivalence_classes(&gs)?.len(), Source::Reference);

    let se = catalog_se_n4();
    let specific = catalog_specific_n4();
    match cip_facets(4, opts) {
        Ok((cip, ch)) => {
            r.push("cip.vertices", "characteristic imsets", 185, cip.len(), Source::Reference);
            r.push("cip.facets", "facets of the characteristic-imset polytope", 154, ch.inequalities.len(), Source::Reference);
            let ones = CharVector::ones(4).to_dense();
            let got: BTreeSet<Halfspace> = ch.inequalities.iter().cloned().collect();
            let at_one: BTreeSet<Halfspace> = got.iter().filter(|h| h.is_tight(&ones)).cloned().collect();
            r.push("cip.one-facets", "facets through the 1-imset", 37, at_one.len(), Source::Reference);
            let se_sizes: Vec<String> = se
                .iter()
                .map(|e| halfspaces(&e.orbit).intersection(&at_one).count().to_string())
                .collect();
            r.push("se.orbits", "1-imset facets per score equivalent type", "6,4,4,1,1,1,4,6,4,6", se_sizes.join(","), Source::Reference);
            let se_all: BTreeSet<Halfspace> = se.iter().flat_map(|e| halfspaces(&e.orbit)).collect();
            r.push_bool("se.match", "1-imset facets equal the score equivalent catalog", se_all == at_one, Source::Reference);
            let rest: BTreeSet<Halfspace> = got.difference(&at_one).cloned().collect();
            let sp_sizes: Vec<String> =
                specific.iter().map(|e| halfspaces(&e.orbit).intersection(&rest).count().to_string()).collect();
            r.push(
                "specific.orbits",
                "remaining facets per specific type",
                "6,4,1,4,6,4,1,4,6,1,12,6,12,3,4,12,12,12,3,4",
                sp_sizes.join(","),
                Source::Reference,
            );
            let sp_all: BTreeSet<Halfspace> = specific.iter().flat_map(|e| halfspaces(&e.orbit)).collect();
            r.push_bool("specific.match", "remaining facets equal the specific catalog", sp_all == rest, Source::Reference);
        }
        Err(e @ Error::Budget(_)) => r.push_status("cip.facets", "facets of the characteristic-imset polytope", 154, budget_status(&e), Source::Reference),
        Err(e) => return Err(e),
    }

    let mut extreme = 0;
    let mut total = 0;
    for e in &se {
        for ineq in e.orbit.iter() {
            total += 1;
            let phi = fam_from_char_ineq(ineq)?;
            let m = setfn_from_objective(phi.fam_objective().expect("fam"))?;
            if is_extreme(&m.to_set_function())? {
                extreme += 1;
            }
        }
    }
    r.push("se.extreme", "score equivalent facets with extreme supermodular functions", "37/37", format!("{extreme}/{total}"), Source::Reference);

    if opts.stretch {
        stretch_n4(&gs, opts, &mut r)?;
    } else {
        for (id, desc, exp) in [
            ("fvp-star.vertices", "vertices of the score equivalent relaxation", "1329"),
            ("fvp-star.fractional", "fractional vertices of that relaxation", "786"),
            ("fvp-star.witnesses", "published fractional vertices present", "true"),
            ("fvp.facets", "facets of the family-variable polytope", "135"),
        ] {
            r.push_status(id, desc, exp, Status::Skipped("stretch checks not requested".into()), Source::Reference);
        }
    }
    r.elapsed = start.elapsed();
    Ok(r)
}

fn stretch_n4(gs: &GroundSet, opts: &VerifyOptions, r: &mut VerificationReport) -> Result<()> {
    let mut rows = se_fam_inequalities_n4();
    rows.extend(nonneg_constraints(gs));
    rows.extend(modified_convexity(gs));
    match cached_vertices(opts.cache.as_ref(), &hrep_of(28, &rows), &opts.budget()) {
        Ok(v) => {
            let fractional: Vec<&Vec<Rational>> = v.points.iter().filter(|p| !p.iter().all(is_integral)).collect();
            r.push("fvp-star.vertices", "vertices of the score equivalent relaxation", 1329, v.len(), Source::Reference);
            r.push("fvp-star.fractional", "fractional vertices of that relaxation", 786, fractional.len(), Source::Reference);
            let codes: BTreeSet<Vec<Rational>> = fam_points(4).into_iter().collect();
            let integral: BTreeSet<Vec<Rational>> =
                v.points.iter().filter(|p| p.iter().all(is_integral)).cloned().collect();
            r.push_bool("fvp-star.integral", "integral vertices are exactly the DAG-codes", integral == codes, Source::Oracle);
            let all: BTreeSet<&Vec<Rational>> = v.points.iter().collect();
            let witnesses = parse_witnesses(gs)?;
            let found = witnesses.iter().filter(|w| all.contains(&w.to_dense())).count();
            r.push("fvp-star.witnesses", "published fractional vertices present", "3/3", format!("{found}/3"), Source::Reference);
            for (i, w) in witnesses.iter().enumerate() {
                let d = w.to_dense();
                if all.contains(&d) {
                    continue;
                }
                let feasible = rows.iter().all(|h| h.value_at_fam(w).map(|v| v <= h.bound).unwrap_or(false));
                let tight: Vec<Vec<Rational>> = rows
                    .iter()
                    .filter(|h| h.value_at_fam(w).map(|v| v == h.bound).unwrap_or(false))
                    .map(|h| h.to_halfspace().coeffs)
                    .collect();
                let rank = linalg::rank(&tight, 28);
                let near: Vec<String> = v
                    .points
                    .iter()
                    .filter(|p| p.iter().zip(&d).filter(|(a, b)| a != b).count() == 1)
                    .map(|p| {
                        let j = p.iter().zip(&d).position(|(a, b)| a != b).expect("one difference");
                        let key = FamVector::from_dense(4, p).expect("dense").iter().map(|(k, _)| k).find(|k| {
                            crate::ground::Fam::position(4, *k) == Some(j)
                        });
                        format!(
                            "{}={}",
                            key.map(|k| gs.format_family(k)).unwrap_or_default(),
                            format_rational(&p[j])
                        )
                    })
                    .collect();
                r.notes.push(format!(
                    "witness {} is {}feasible with tight rank {rank} of 28; vertices differing in one coordinate: {}",
                    i + 1,
                    if feasible { "" } else { "in" },
                    if near.is_empty() { "none".to_string() } else { near.join(", ") }
                ));
            }
        }
        Err(e @ Error::Budget(_)) => {
            r.push_status("fvp-star.vertices", "vertices of the score equivalent relaxation", 1329, budget_status(&e), Source::Reference)
        }
        Err(e) => return Err(e),
    }
    let fvp = VRep::new(28, fam_points(4))?;
    match cached_facets(opts.cache.as_ref(), &fvp, &opts.budget()) {
        Ok(h) => r.push("fvp.facets", "facets of the family-variable polytope", 135, h.inequalities.len(), Source::Reference),
        Err(e @ Error::Budget(_)) => r.push_status("fvp.facets", "facets of the family-variable polytope", 135, budget_status(&e), Source::Reference),
        Err(e) => return Err(e),
    }
    Ok(())
}

fn random_se_objective(n: usize, rng: &mut ChaCha8Rng) -> FamVector {
    let m = CharVector::from_fn(n, |_| int(rng.gen_range(-5..=5)));
    objective_from_setfn(&m)
}

/// Optimum over the DAG-codes against the LP over a reduced description.
fn compare_optima(
    r: &mut VerificationReport,
    id: &str,
    description: &str,
    objectives: &[FamVector],
    codes: &[Vec<Rational>],
    reduced: &HRep,
) -> Result<()> {
    let mut agree = 0;
    for obj in objectives {
        let dense = obj.to_dense();
        let direct = max_over_points(&dense, codes)?;
        let lp = lp_maximize(&dense, reduced)?;
        if lp.value == direct {
            agree += 1;
        }
    }
    r.push(id, description, format!("{0}/{0}", objectives.len()), format!("{agree}/{}", objectives.len()), Source::Oracle);
    Ok(())
}

/// Random score equivalent objectives (integer `m` in `[−5, 5]`) maximized
/// over the DAG-codes and over the polyhedron cut out by non-negativity,
/// convexity and the family forms of the characteristic-imset facets away
/// from the 0-imset.
pub fn verify_theorem3(n: usize, trials: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    if !(3..=4).contains(&n) {
        return Err(Error::InvalidArgument(format!("optimum comparison runs for n = 3 or 4, got {n}")));
    }
    let start = Instant::now();
    let mut r = VerificationReport::new(&format!("theorem3-n{n}"));
    let gs = GroundSet::letters(n)?;
    let codes = fam_points(n);
    let (_, ch) = cip_facets(n, opts)?;
    let zero = CharVector::zero(n).to_dense();
    let mut rows: Vec<LinearInequality> = Vec::new();
    for h in ch.inequalities.iter().filter(|h| !h.is_tight(&zero)) {
        let z = CharVector::from_dense(n, &h.coeffs)?;
        rows.push(fam_from_char_ineq(&LinearInequality::char(z, h.bound.clone(), ""))?);
    }
    let away = rows.len();
    rows.extend(nonneg_constraints(&gs));
    rows.extend(modified_convexity(&gs));
    let dim = codes[0].len();
    let reduced = hrep_of(dim, &rows);
    r.notes.push(format!("n={n}: {away} facets avoid the 0-imset"));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let objectives: Vec<FamVector> = (0..trials).map(|_| random_se_objective(n, &mut rng)).collect();
    compare_optima(&mut r, "random", "random score equivalent objectives with equal optima", &objectives, &codes, &reduced)?;

    let c = gs.parse_subset("ab")?;
    let cluster_obj = objective_from_setfn(&cluster_supermodular(n, c, 1)?.to_char_vector());
    let v1 = max_over_points(&cluster_obj.to_dense(), &codes)?;
    let v2 = lp_maximize(&cluster_obj.to_dense(), &reduced)?.value;
    r.push("cluster", "cluster C=ab objective on both sides", "1 1", format!("{} {}", format_rational(&v1), format_rational(&v2)), Source::Reference);
    let zero_obj = vec![Rational::zero(); dim];
    let z1 = max_over_points(&zero_obj, &codes)?;
    let z2 = lp_maximize(&zero_obj, &reduced)?.value;
    r.push("zero", "zero objective on both sides", "0 0", format!("{} {}", format_rational(&z1), format_rational(&z2)), Source::Definition);

    if n == 4 {
        let mut se_rows = se_fam_inequalities_n4();
        se_rows.extend(nonneg_constraints(&gs));
        se_rows.extend(modified_convexity(&gs));
        compare_optima(
            &mut r,
            "se-only",
            "same objectives over score equivalent facets, non-negativity and convexity",
            &objectives,
            &codes,
            &hrep_of(dim, &se_rows),
        )?;
    }
    r.elapsed = start.elapsed();
    Ok(r)
}

/// The five-node counterexample.
pub fn verify_counterexample(_opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = VerificationReport::new("counterexample");
    let k = counterexample_constants();
    let gs = &k.ground;
    let translated = fam_from_char_ineq(&k.ineq20)?;
    let back = crate::score_equivalence::char_objective(&k.obj_star)?;
    r.push_bool(
        "1.translation",
        "family form of the characteristic inequality equals the published one",
        translated.same_as(&k.ineq21) && Some(&back) == k.ineq20.char_objective(),
        Source::Reference,
    );

    let dags = all_dags(5);
    let mut tight: Vec<&Dag> = Vec::new();
    let mut valid = true;
    for g in dags {
        let v = k.ineq21.value_at_fam(&fam_vector(g))?;
        valid &= v <= k.ineq21.bound;
        if v == k.ineq21.bound {
            tight.push(g);
        }
    }
    r.push("2.tight", "DAG-codes tight (inequality valid on all)", "valid, 153", format!("{}, {}", if valid { "valid" } else { "violated" }, tight.len()), Source::Reference);
    let tight_codes: Vec<Vec<Rational>> = tight.iter().map(|g| fam_vector(g).to_dense()).collect();
    let face_dim = linalg::affine_rank(&tight_codes)? as i64 - 1;
    r.push("3.face-dim", "dimension of the family-variable face", 53, face_dim, Source::Reference);

    let chars: BTreeSet<CharVector> = tight.iter().map(|g| char_imset(g)).collect();
    let char_pts: Vec<Vec<Rational>> = chars.iter().map(|c| c.to_dense()).collect();
    let rank = linalg::affine_rank(&char_pts)?;
    let all_chars = char_points(5);
    let char_valid = all_chars.iter().all(|c| k.ineq20.to_halfspace().is_satisfied(c));
    r.push(
        "4.char-face",
        "tight characteristic imsets, affine rank, face dimension (valid on all)",
        "59, 26, 25, valid",
        format!("{}, {}, {}, {}", chars.len(), rank, rank as i64 - 1, if char_valid { "valid" } else { "violated" }),
        Source::Reference,
    );
    r.push("4.cip-dim", "dimension of the characteristic-imset polytope", 26, linalg::affine_rank(&all_chars)? as i64 - 1, Source::Oracle);

    let centroid = crate::polyhedra::centroid(&tight_codes)?;
    let dagger = k.fam_dagger.to_dense();
    let value = k.obj_star.dot(&k.fam_dagger)?;
    r.push(
        "5.centroid",
        "centroid of the tight codes equals the published point; objective there",
        "true, 16",
        format!("{}, {}", centroid == dagger, format_rational(&value)),
        Source::Reference,
    );

    let conv = modified_convexity(gs);
    let tight_conv = conv.iter().filter(|c| c.tight_at_fam(&k.fam_dagger).unwrap_or(true)).count();
    r.push("6.convexity", "convexity constraints tight at the centroid", 0, tight_conv, Source::Reference);

    let clusters: Vec<LinearInequality> =
        cluster_parameters(5).into_iter().map(|(c, kk)| cluster_fam(gs, c, kk)).collect::<Result<_>>()?;
    let nonneg = nonneg_constraints(gs);
    let mut eps: Option<Rational> = None;
    let mut positive_slack = true;
    for ineq in conv.iter().chain(clusters.iter()).chain(nonneg.iter()) {
        let v = ineq.value_at_fam(&k.fam_dagger)?;
        if v.is_positive() {
            let slack = &ineq.bound - &v;
            positive_slack &= slack.is_positive();
            let cand = slack / (int(2) * &v);
            eps = Some(match eps {
                Some(e) if e <= cand => e,
                _ => cand,
            });
        }
    }
    let eps = eps.unwrap_or_else(Rational::one);
    let star = k.fam_dagger.scaled(&(Rational::one() + &eps));
    let strict = |list: &[LinearInequality]| -> Result<bool> {
        for i in list {
            if i.value_at_fam(&star)? >= i.bound {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let nonneg_ok = star.iter().all(|(_, v)| !v.is_negative());
    let star_value = k.obj_star.dot(&star)?;
    r.push(
        "7.perturbation",
        "scaled centroid: nonneg, strict convexity, strict on 49 clusters, objective above 16",
        "true, true, true, 49, true",
        format!(
            "{}, {}, {}, {}, {}",
            positive_slack && eps.is_positive(),
            nonneg_ok,
            strict(&conv)?,
            clusters.len(),
            strict(&clusters)? && star_value > int(16)
        ),
        Source::Reference,
    );
    r.notes.push(format!("epsilon = {}, objective at scaled point = {}", format_rational(&eps), format_rational(&star_value)));
    r.notes.push(
        "only the cluster subfamily of the n=5 score equivalent facets is checked; the full facet list is not enumerated"
            .to_string(),
    );

    let mut rows = nonneg;
    rows.extend(conv);
    rows.extend(clusters);
    let without = hrep_of(75, &rows);
    rows.push(k.ineq21.clone());
    let with = hrep_of(75, &rows);
    let obj = k.obj_star.to_dense();
    let v_with = lp_maximize(&obj, &with)?.value;
    let v_without = lp_maximize(&obj, &without)?.value;
    r.push("8.lp-with", "LP optimum with the counterexample inequality", 16, format_rational(&v_with), Source::Reference);
    r.push("9.lp-without", "LP optimum without it exceeds 16", true, v_without > int(16), Source::Oracle);
    r.notes.push(format!("LP optimum without the inequality = {}", format_rational(&v_without)));
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Smallest face of the DAG-code polytope containing `members`, as a mask
/// over `all_dags(n)`, given facet tight sets.
fn face_closure(members: u64, tight_sets: &[u64], all: u64) -> u64 {
    tight_sets.iter().filter(|t| *t & members == members).fold(all, |acc, t| acc & t)
}

/// Every face of the n=3 DAG-code polytope (from intersections of facet
/// tight sets) that is closed under Markov equivalence must be an SE face.
pub fn explore_conjecture(n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    if n != 3 {
        return Err(Error::InvalidArgument("exhaustive face exploration runs for n = 3 only".into()));
    }
    let start = Instant::now();
    let mut r = VerificationReport::new("conjecture-n3");
    let dags = all_dags(n);
    let codes = fam_points(n);
    let h = cached_facets(opts.cache.as_ref(), &VRep::new(9, codes.clone())?, &opts.budget())?;
    let tight_sets: Vec<u64> = h
        .inequalities
        .iter()
        .map(|f| codes.iter().enumerate().filter(|(_, p)| f.is_tight(p)).fold(0u64, |m, (i, _)| m | 1 << i))
        .collect();
    let all = (1u64 << dags.len()) - 1;
    let mut faces: BTreeSet<u64> = BTreeSet::from([all]);
    let mut frontier = vec![all];
    while let Some(f) = frontier.pop() {
        for t in &tight_sets {
            let g = f & t;
            if g != 0 && faces.insert(g) {
                frontier.push(g);
            }
        }
    }
    let mut closed = 0;
    let mut violations = Vec::new();
    for &f in &faces {
        let graphs: Vec<Dag> = (0..dags.len()).filter(|i| f >> i & 1 == 1).map(|i| dags[i].clone()).collect();
        if !is_closed_under_equivalence(&graphs) {
            continue;
        }
        closed += 1;
        if !is_se_face(&graphs)?.is_se_face {
            violations.push(graphs.len());
        }
    }
    r.notes.push(format!("{} non-empty faces, {closed} closed under Markov equivalence", faces.len()));
    r.push("violations", "class-closed faces that are not SE faces", 0, violations.len(), Source::Reference);

    let full_mask = dags.iter().enumerate().filter(|(_, g)| g.is_full()).fold(0u64, |m, (i, _)| m | 1 << i);
    let full: Vec<Dag> = dags.iter().filter(|g| g.is_full()).cloned().collect();
    r.push(
        "full-graphs",
        "full graphs form a face, and an SE one",
        "true, true",
        format!("{}, {}", face_closure(full_mask, &tight_sets, all) == full_mask, is_se_face(&full)?.is_se_face),
        Source::Oracle,
    );
    // a single-arc class together with the full graphs
    let single: u64 = dags.iter().enumerate().filter(|(_, g)| g.arc_count() == 1 && g.adjacent(0, 1)).fold(0, |m, (i, _)| m | 1 << i);
    let mixed = single | full_mask;
    r.push("non-face", "a one-arc class plus the full graphs is not a face", false, face_closure(mixed, &tight_sets, all) == mixed, Source::Oracle);
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Pipelines by name.
pub fn run_pipeline(name: &str, opts: &VerifyOptions) -> Result<VerificationReport> {
    match name {
        "n3" => verify_n3(opts),
        "n4" => verify_n4(opts),
        "theorem3" => {
            let mut a = verify_theorem3(3, 100, opts)?;
            let b = verify_theorem3(4, 25, opts)?;
            a.pipeline = "theorem3".into();
            for mut c in b.checks {
                c.id = format!("n4.{}", c.id);
                a.checks.push(c);
            }
            for c in a.checks.iter_mut().filter(|c| !c.id.starts_with("n4.")) {
                c.id = format!("n3.{}", c.id);
            }
            a.notes.extend(b.notes);
            a.elapsed += b.elapsed;
            Ok(a)
        }
        "counterexample" => verify_counterexample(opts),
        "conjecture" => explore_conjecture(3, opts),
        other => Err(Error::InvalidArgument(format!(
            "unknown pipeline `{other}` (expected n3, n4, theorem3, counterexample or conjecture)"
        ))),
    }
}

/// Sizes of permutation orbits of the given point set, largest first.
pub fn orbit_sizes(points: &[FamVector]) -> BTreeMap<usize, usize> {
    let perms = crate::dags::permutations(points.first().map(FamVector::n).unwrap_or(0));
    let mut seen: BTreeSet<&FamVector> = BTreeSet::new();
    let set: BTreeSet<&FamVector> = points.iter().collect();
    let mut hist = BTreeMap::new();
    for p in points {
        if seen.contains(p) {
            continue;
        }
        let orbit: BTreeSet<FamVector> = perms.iter().map(|q| p.permuted(q)).collect();
        for o in &orbit {
            if let Some(x) = set.get(o) {
                seen.insert(x);
            }
        }
        *hist.entry(orbit.len()).or_insert(0) += 1;
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_pipeline_passes() {
        let r = verify_n3(&VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.to_table());
        assert_eq!(r.check("fvp.facets").unwrap().observed, "17");
    }

    #[test]
    fn conjecture_n3_has_no_violations() {
        let r = explore_conjecture(3, &VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.to_table());
    }

    #[test]
    fn theorem3_small() {
        let r = verify_theorem3(3, 10, &VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.to_table());
        assert!(verify_theorem3(5, 1, &VerifyOptions::default()).is_err());
    }

    #[test]
    fn exhausted_budget_is_reported_not_failed() {
        let opts = VerifyOptions { max_rays: Some(3), ..Default::default() };
        let r = verify_n3(&opts).unwrap();
        assert!(r.budget_exhausted());
        assert!(r.passed());
    }

    #[test]
    fn report_serialization() {
        let r = verify_n3(&VerifyOptions::default()).unwrap();
        let j = r.to_json();
        assert_eq!(j["schema"], "bnfacets/verification-report/v1");
        assert_eq!(j["passed"], true);
        assert!(r.to_table().ends_with("PASSED\n"));
    }
}
