//! Command-line front end. Every subcommand prints JSON carrying a
//! top-level `"schema"` key, or text with `--format text`.
//!
//! Exit codes: 0 success, 1 failed verification or computation error,
//! 2 usage or input error, 3 budget exhausted.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::cache::{cached_facets, cached_vertices, Cache};
use crate::dags::{all_dags, enumerate_equivalence_classes, ground_set_of_json, Dag, MAX_ENUMERATED_NODES};
use crate::encodings::{char_imset, fam_vector, standard_imset};
use crate::error::{Error, Result};
use crate::ground::{CharVector, FamVector, GroundSet, SetFunction};
use crate::inequalities::catalog::CatalogKind;
use crate::inequalities::{
    binomial_identity, cluster_char, cluster_fam, counterexample_constants, export_lp, modified_convexity,
    nonneg_constraints, LinearInequality, Space,
};
use crate::polyhedra::{self, HRep, VRep};
use crate::rational::format_rational;
use crate::score_equivalence::{
    char_objective, is_se_face, objective_from_setfn, se_violation, setfn_from_objective,
};
use crate::supermodular::{
    cluster_parameters, core_vertices, duality_transform, is_connected_matroid, is_extreme, is_matroid_rank,
    is_supermodular,
};
use crate::verify::{run_pipeline, VerificationReport, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "bnfacets", version, about = "Exact polyhedra of Bayesian network structures")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Resource limit for hulls and enumerations, e.g. `600`, `600s,2048mb`.
    #[arg(long, global = true)]
    pub budget: Option<String>,
    /// Cache directory for hulls (overrides BNFACETS_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Encode a DAG given as JSON `{"a": "", "b": "a"}`.
    Encode {
        #[arg(long)]
        dag: String,
        #[arg(long = "as", value_enum, default_value_t = Encoding::Fam)]
        as_: Encoding,
    },
    /// Enumerate DAGs or Markov equivalence classes.
    Dags {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        classes: bool,
        #[arg(long)]
        count: bool,
    },
    /// Score equivalent objectives.
    Se {
        #[command(subcommand)]
        action: SeAction,
    },
    /// Standardized supermodular functions.
    Supermod {
        #[command(subcommand)]
        action: SupermodAction,
    },
    /// Inequality families and catalogs.
    Ineq {
        #[command(subcommand)]
        action: IneqAction,
    },
    /// Hulls, vertices and faces.
    Polytope {
        #[command(subcommand)]
        action: PolytopeAction,
    },
    /// CPLEX LP text of the family-variable relaxation.
    ExportLp {
        #[arg(long)]
        n: usize,
        /// Family-variable objective (JSON); zero when omitted.
        #[arg(long)]
        objective: Option<String>,
        /// Add every generalized cluster inequality as a cut.
        #[arg(long)]
        clusters: bool,
        /// Extra family-variable cuts (JSON list of inequalities).
        #[arg(long)]
        cuts: Option<String>,
        /// Declare variables binary.
        #[arg(long)]
        binary: bool,
    },
    /// Verification pipelines.
    Verify {
        #[arg(value_parser = ["n3", "n4", "theorem3", "counterexample", "conjecture"])]
        pipeline: String,
        /// Include the long n=4 checks.
        #[arg(long)]
        stretch: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Encoding {
    Fam,
    Char,
    Standard,
}

#[derive(Subcommand, Debug)]
pub enum SeAction {
    /// Is the objective score equivalent?
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        objective: String,
    },
    /// Objective of a standardized set function.
    FromSetfn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        setfn: String,
    },
    /// Set function of a score equivalent objective.
    ToSetfn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        objective: String,
    },
    /// Characteristic-imset form of a score equivalent objective.
    ToChar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        objective: String,
    },
    /// Is the DAG set (JSON list) an SE face?
    Face {
        #[arg(long)]
        graphs: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum SupermodAction {
    /// Supermodularity and extremality.
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        setfn: String,
    },
    /// Vertices of the core polytope.
    Core {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        setfn: String,
    },
    /// `r(T) = m(N) − m(N\T)` with matroid checks.
    Dual {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        setfn: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum IneqAction {
    /// A generalized cluster inequality.
    Cluster {
        #[arg(long = "C")]
        c: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "fam")]
        mode: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Every generalized cluster inequality.
    Clusters {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "fam")]
        mode: String,
    },
    Nonneg {
        #[arg(long)]
        n: usize,
    },
    Convexity {
        #[arg(long)]
        n: usize,
    },
    /// Golden n=4 catalogs.
    Catalog {
        #[arg(long, value_parser = ["se4", "specific4"])]
        which: String,
        /// List every orbit member.
        #[arg(long)]
        orbits: bool,
    },
    /// The five-node counterexample constants.
    Counterexample,
    /// Both sides of the alternating binomial identity.
    Identity {
        #[arg(long)]
        s: i64,
        #[arg(long)]
        k: i64,
        #[arg(long = "K")]
        big_k: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum PolytopeAction {
    /// DAG-codes or characteristic imsets as a vertex list.
    Points {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "fam")]
        space: String,
    },
    /// Facets of a vertex list (JSON).
    Hull {
        #[arg(long)]
        input: String,
        /// Print the plain matrix format.
        #[arg(long)]
        matrix: bool,
    },
    /// Vertices of an H-representation (JSON or matrix text).
    Vertices {
        #[arg(long)]
        input: String,
    },
    /// Dimension of the face cut by an inequality (dense JSON halfspace).
    FaceDim {
        #[arg(long)]
        input: String,
        #[arg(long)]
        ineq: String,
    },
    IsFacet {
        #[arg(long)]
        input: String,
        #[arg(long)]
        ineq: String,
    },
    /// Maximize a dense objective over an H-representation.
    Lp {
        #[arg(long)]
        input: String,
        #[arg(long)]
        objective: String,
    },
}

/// `600`, `600s`, `2048mb`, `600s,2048mb`, `rays=100000`.
pub fn parse_budget(text: &str) -> Result<Budget> {
    let (t, r, m) = budget_options(Some(text))?;
    let opts = VerifyOptions { time_limit: t, max_rays: r, memory_mb: m, ..Default::default() };
    Ok(opts.budget())
}

fn budget_options(text: Option<&str>) -> Result<(Option<Duration>, Option<usize>, Option<usize>)> {
    let (mut t, mut r, mut m) = (None, None, None);
    for part in text.unwrap_or("").split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || Error::InvalidArgument(format!("cannot read budget part `{part}`"));
        if let Some(v) = part.strip_prefix("rays=") {
            r = Some(v.parse().map_err(|_| bad())?);
        } else if let Some(v) = part.strip_suffix("mb") {
            m = Some(v.parse().map_err(|_| bad())?);
        } else {
            let secs: f64 = part.strip_suffix('s').unwrap_or(part).parse().map_err(|_| bad())?;
            if !(secs.is_finite() && secs >= 0.0) {
                return Err(bad());
            }
            t = Some(Duration::from_secs_f64(secs));
        }
    }
    Ok((t, r, m))
}

/// Inline JSON, `@path`, or `-` for stdin.
fn read_arg(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else if let Some(path) = arg.strip_prefix('@') {
        Ok(std::fs::read_to_string(path)?)
    } else {
        Ok(arg.to_string())
    }
}

fn read_json(arg: &str) -> Result<Value> {
    Ok(serde_json::from_str(&read_arg(arg)?)?)
}

fn letters(n: usize) -> Result<GroundSet> {
    GroundSet::letters(n)
}

fn enumerable(n: usize) -> Result<()> {
    if !(1..=MAX_ENUMERATED_NODES).contains(&n) {
        return Err(Error::InvalidArgument(format!("n must be between 1 and {MAX_ENUMERATED_NODES}")));
    }
    Ok(())
}

fn doc(schema: &str, body: Value) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), Value::String(format!("bnfacets/{schema}/v1")));
    if let Value::Object(map) = body {
        out.extend(map);
    }
    Value::Object(out)
}

fn ineq_text(gs: &GroundSet, list: &[LinearInequality]) -> String {
    list.iter().map(|i| format!("{}\n", i.display(gs))).collect()
}

enum Output {
    Json(Value),
    Text(String),
    Both(Value, String),
}

struct Outcome {
    output: Output,
    code: i32,
}

impl Outcome {
    fn ok(output: Output) -> Self {
        Self { output, code: EXIT_OK }
    }
}

fn report_outcome(r: VerificationReport) -> Outcome {
    let code = if !r.passed() {
        EXIT_FAILED
    } else if r.budget_exhausted() {
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    Outcome { output: Output::Both(r.to_json(), r.to_table()), code }
}

fn cache_of(cli: &Cli) -> Option<Cache> {
    cli.cache_dir.as_ref().map(Cache::new).or_else(Cache::from_env)
}

fn load_hrep(arg: &str) -> Result<HRep> {
    let text = read_arg(arg)?;
    match serde_json::from_str::<Value>(&text) {
        Ok(v) => HRep::from_json(&v),
        Err(_) => HRep::from_text(&text),
    }
}

fn dense_halfspace(v: &Value) -> Result<polyhedra::Halfspace> {
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("halfspace needs \"coeffs\"".into()))?
        .iter()
        .map(crate::ground::json_rational)
        .collect::<Result<Vec<_>>>()?;
    let bound = crate::ground::json_rational(v.get("bound").ok_or_else(|| Error::Parse("halfspace needs \"bound\"".into()))?)?;
    Ok(polyhedra::Halfspace::new(coeffs, bound))
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let budget = match &cli.budget {
        Some(b) => parse_budget(b)?,
        None => Budget::unlimited(),
    };
    let cache = cache_of(cli);
    match &cli.command {
        Command::Encode { dag, as_ } => {
            let v = read_json(dag)?;
            let gs = ground_set_of_json(&v)?;
            let g = Dag::from_json(&gs, &v)?;
            let (name, vec) = match as_ {
                Encoding::Fam => ("fam", fam_vector(&g).to_json(&gs)),
                Encoding::Char => ("char", char_imset(&g).to_json(&gs)),
                Encoding::Standard => ("standard", standard_imset(&g).to_json(&gs)),
            };
            Ok(Outcome::ok(Output::Json(doc("encoding", json!({ "encoding": name, "vector": vec })))))
        }
        Command::Dags { n, classes, count } => {
            enumerable(*n)?;
            let gs = letters(*n)?;
            if *classes {
                let cls = enumerate_equivalence_classes(&gs)?;
                let body = if *count {
                    json!({ "n": n, "classes": cls.len() })
                } else {
                    json!({ "n": n, "classes": cls.len(), "representatives": cls.iter().map(|(g, size)| json!({
                        "dag": g.to_json(&gs), "size": size, "char": char_imset(g).to_json(&gs)
                    })).collect::<Vec<_>>() })
                };
                Ok(Outcome::ok(Output::Json(doc("classes", body))))
            } else {
                let dags = all_dags(*n);
                let body = if *count {
                    json!({ "n": n, "dags": dags.len() })
                } else {
                    json!({ "n": n, "dags": dags.len(), "list": dags.iter().map(|g| g.to_json(&gs)).collect::<Vec<_>>() })
                };
                Ok(Outcome::ok(Output::Json(doc("dags", body))))
            }
        }
        Command::Se { action } => se_command(action),
        Command::Supermod { action } => supermod_command(action),
        Command::Ineq { action } => ineq_command(action, cli.format),
        Command::Polytope { action } => polytope_command(action, &budget, cache.as_ref()),
        Command::ExportLp { n, objective, clusters, cuts, binary } => {
            let gs = letters(*n)?;
            let obj = objective.as_deref().map(|o| read_json(o).and_then(|v| FamVector::from_json(&gs, &v))).transpose()?;
            let mut list = Vec::new();
            if *clusters {
                for (c, k) in cluster_parameters(*n) {
                    list.push(cluster_fam(&gs, c, k)?);
                }
            }
            if let Some(c) = cuts {
                let v = read_json(c)?;
                let arr = v.as_array().ok_or_else(|| Error::Parse("cuts must be a JSON list".into()))?;
                for item in arr {
                    list.push(LinearInequality::from_json(&gs, item)?);
                }
            }
            Ok(Outcome::ok(Output::Text(export_lp(&gs, obj.as_ref(), &list, *binary)?)))
        }
        Command::Verify { pipeline, stretch, seed } => {
            let (time_limit, max_rays, memory_mb) = budget_options(cli.budget.as_deref())?;
            let opts = VerifyOptions { time_limit, max_rays, memory_mb, stretch: *stretch, cache, seed: *seed };
            Ok(report_outcome(run_pipeline(pipeline, &opts)?))
        }
    }
}

fn se_command(action: &SeAction) -> Result<Outcome> {
    let out = match action {
        SeAction::Check { n, objective } => {
            let gs = letters(*n)?;
            let obj = FamVector::from_json(&gs, &read_json(objective)?)?;
            let violation = se_violation(&obj).map(|(a, b, z)| {
                json!({ "a": gs.label(a), "b": gs.label(b), "Z": gs.format_subset(z) })
            });
            doc("se-check", json!({ "score_equivalent": violation.is_none(), "violation": violation }))
        }
        SeAction::FromSetfn { n, setfn } => {
            let gs = letters(*n)?;
            let m = CharVector::from_json(&gs, &read_json(setfn)?)?;
            doc("se-objective", json!({ "objective": objective_from_setfn(&m).to_json(&gs) }))
        }
        SeAction::ToSetfn { n, objective } => {
            let gs = letters(*n)?;
            let obj = FamVector::from_json(&gs, &read_json(objective)?)?;
            doc("setfn", json!({ "setfn": setfn_from_objective(&obj)?.to_json(&gs) }))
        }
        SeAction::ToChar { n, objective } => {
            let gs = letters(*n)?;
            let obj = FamVector::from_json(&gs, &read_json(objective)?)?;
            doc("char-objective", json!({ "objective": char_objective(&obj)?.to_json(&gs) }))
        }
        SeAction::Face { graphs } => {
            let v = read_json(graphs)?;
            let arr = v.as_array().ok_or_else(|| Error::Parse("graphs must be a JSON list".into()))?;
            let first = arr.first().ok_or_else(|| Error::InvalidArgument("empty graph list".into()))?;
            let gs = ground_set_of_json(first)?;
            let dags = arr.iter().map(|g| Dag::from_json(&gs, g)).collect::<Result<Vec<_>>>()?;
            let face = is_se_face(&dags)?;
            doc(
                "se-face",
                json!({
                    "se_face": face.is_se_face,
                    "margin": format_rational(&face.margin),
                    "witness": face.witness.map(|w| w.to_json(&gs)),
                    "bound": face.bound.map(|b| format_rational(&b)),
                }),
            )
        }
    };
    Ok(Outcome::ok(Output::Json(out)))
}

fn supermod_command(action: &SupermodAction) -> Result<Outcome> {
    let (n, setfn) = match action {
        SupermodAction::Check { n, setfn } | SupermodAction::Core { n, setfn } | SupermodAction::Dual { n, setfn } => {
            (*n, setfn)
        }
    };
    let gs = letters(n)?;
    let m = SetFunction::from_json(&gs, &read_json(setfn)?)?;
    let out = match action {
        SupermodAction::Check { .. } => {
            let sup = is_supermodular(&m);
            let extreme = if sup && m.is_standardized() { Some(is_extreme(&m)?) } else { None };
            doc(
                "supermodular",
                json!({ "standardized": m.is_standardized(), "supermodular": sup, "extreme": extreme }),
            )
        }
        SupermodAction::Core { .. } => {
            let verts = core_vertices(&m)?;
            doc(
                "core",
                json!({ "vertices": verts.iter().map(|v| v.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>() }),
            )
        }
        SupermodAction::Dual { .. } => {
            let r = duality_transform(&m);
            let full = gs.full();
            let rank = is_matroid_rank(&r, full)?;
            doc(
                "dual",
                json!({
                    "rank_function": r.to_json(&gs),
                    "matroid_rank": rank,
                    "connected": rank && is_connected_matroid(&r, full),
                }),
            )
        }
    };
    Ok(Outcome::ok(Output::Json(out)))
}

fn ineq_command(action: &IneqAction, format: Format) -> Result<Outcome> {
    let (gs, list, schema) = match action {
        IneqAction::Cluster { c, k, mode, n } => {
            let n = n.unwrap_or(c.chars().count().max(2));
            let gs = letters(n)?;
            let set = gs.parse_subset(c)?;
            let ineq = match Space::parse(mode)? {
                Space::Fam => cluster_fam(&gs, set, *k)?,
                Space::Char => cluster_char(&gs, set, *k)?,
            };
            if format == Format::Json {
                let body = json!({ "inequality": ineq.to_json(&gs), "objective": ineq.objective.to_json(&gs), "bound": format_rational(&ineq.bound) });
                return Ok(Outcome::ok(Output::Json(doc("inequality", body))));
            }
            (gs, vec![ineq], "inequality")
        }
        IneqAction::Clusters { n, mode } => {
            let gs = letters(*n)?;
            let space = Space::parse(mode)?;
            let list = cluster_parameters(*n)
                .into_iter()
                .map(|(c, k)| match space {
                    Space::Fam => cluster_fam(&gs, c, k),
                    Space::Char => cluster_char(&gs, c, k),
                })
                .collect::<Result<Vec<_>>>()?;
            (gs, list, "inequalities")
        }
        IneqAction::Nonneg { n } => {
            let gs = letters(*n)?;
            let list = nonneg_constraints(&gs);
            (gs, list, "inequalities")
        }
        IneqAction::Convexity { n } => {
            let gs = letters(*n)?;
            let list = modified_convexity(&gs);
            (gs, list, "inequalities")
        }
        IneqAction::Catalog { which, orbits } => {
            let kind = CatalogKind::parse(which)?;
            let gs = letters(4)?;
            let entries = kind.entries();
            if format == Format::Text {
                let mut s = String::new();
                for e in &entries {
                    s.push_str(&format!("{} ({}): {}\n", e.type_id, e.orbit.len(), e.representative.display(&gs)));
                    if *orbits {
                        for i in &e.orbit {
                            s.push_str(&format!("    {}\n", i.display(&gs)));
                        }
                    }
                }
                return Ok(Outcome::ok(Output::Text(s)));
            }
            let body = json!({
                "catalog": kind.name(),
                "total": entries.iter().map(|e| e.orbit.len()).sum::<usize>(),
                "types": entries.iter().map(|e| {
                    let mut t = json!({
                        "id": e.type_id,
                        "orbit_size": e.orbit.len(),
                        "char": e.representative.to_json(&gs),
                        "fam": e.fam_form().to_json(&gs),
                    });
                    if let Some((c, k)) = e.cluster {
                        t["cluster"] = json!({ "C": gs.format_subset(c), "k": k });
                    }
                    if !e.sperner.is_empty() {
                        t["sperner"] = json!(e.sperner.iter().map(|s| gs.format_subset(*s)).collect::<Vec<_>>());
                    }
                    if *orbits {
                        t["orbit"] = json!(e.orbit.iter().map(|i| i.to_json(&gs)).collect::<Vec<_>>());
                    }
                    t
                }).collect::<Vec<_>>(),
            });
            return Ok(Outcome::ok(Output::Json(doc("catalog", body))));
        }
        IneqAction::Counterexample => {
            let k = counterexample_constants();
            let gs = &k.ground;
            let body = json!({
                "ineq20": k.ineq20.to_json(gs),
                "ineq21": k.ineq21.to_json(gs),
                "fam_dagger": k.fam_dagger.to_json(gs),
            });
            return Ok(Outcome::ok(Output::Json(doc("counterexample", body))));
        }
        IneqAction::Identity { s, k, big_k } => {
            let (lhs, rhs) = binomial_identity(*s, *k, *big_k)?;
            let body = json!({ "lhs": lhs.to_string(), "rhs": rhs.to_string(), "equal": lhs == rhs });
            return Ok(Outcome::ok(Output::Json(doc("identity", body))));
        }
    };
    let out = match format {
        Format::Text => Output::Text(ineq_text(&gs, &list)),
        Format::Json => Output::Json(doc(schema, json!({ "inequalities": list.iter().map(|i| i.to_json(&gs)).collect::<Vec<_>>() }))),
    };
    Ok(Outcome::ok(out))
}

fn polytope_command(action: &PolytopeAction, budget: &Budget, cache: Option<&Cache>) -> Result<Outcome> {
    let out = match action {
        PolytopeAction::Points { n, space } => {
            enumerable(*n)?;
            let pts: Vec<Vec<_>> = match Space::parse(space)? {
                Space::Fam => all_dags(*n).iter().map(|g| fam_vector(g).to_dense()).collect(),
                Space::Char => all_dags(*n).iter().map(|g| char_imset(g).to_dense()).collect(),
            };
            let dim = pts.first().map(Vec::len).unwrap_or(0);
            doc("vrep", VRep::new(dim, pts)?.to_json())
        }
        PolytopeAction::Hull { input, matrix } => {
            let v = VRep::from_json(&read_json(input)?)?;
            let h = cached_facets(cache, &v, budget)?;
            if *matrix {
                return Ok(Outcome::ok(Output::Text(h.to_text())));
            }
            return Ok(Outcome::ok(Output::Both(doc("hrep", h.to_json()), h.to_text())));
        }
        PolytopeAction::Vertices { input } => {
            let h = load_hrep(input)?;
            doc("vrep", cached_vertices(cache, &h, budget)?.to_json())
        }
        PolytopeAction::FaceDim { input, ineq } | PolytopeAction::IsFacet { input, ineq } => {
            let v = VRep::from_json(&read_json(input)?)?;
            let h = dense_halfspace(&read_json(ineq)?)?;
            let face = polyhedra::face_of(&h, &v)?;
            let facet = polyhedra::is_facet(&h, &v)?;
            doc("face", json!({ "tight": face.tight.len(), "dimension": face.dim, "facet": facet }))
        }
        PolytopeAction::Lp { input, objective } => {
            let h = load_hrep(input)?;
            let obj = read_json(objective)?
                .as_array()
                .ok_or_else(|| Error::Parse("objective must be a JSON list".into()))?
                .iter()
                .map(crate::ground::json_rational)
                .collect::<Result<Vec<_>>>()?;
            let sol = polyhedra::lp_maximize(&obj, &h)?;
            doc(
                "lp",
                json!({
                    "value": format_rational(&sol.value),
                    "point": sol.point.iter().map(format_rational).collect::<Vec<_>>(),
                    "certified": polyhedra::lp_certificate_holds(&obj, &h, &sol),
                }),
            )
        }
    };
    Ok(Outcome::ok(Output::Json(out)))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget(_) => EXIT_BUDGET,
        Error::GroundSet(_)
        | Error::GroundMismatch { .. }
        | Error::NotAnIndex { .. }
        | Error::Parse(_)
        | Error::Cyclic
        | Error::InvalidArgument(_)
        | Error::Io(_)
        | Error::Json(_) => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}

/// Runs the CLI, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    if let Some(j) = cli.jobs {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    match execute(&cli) {
        Ok(outcome) => {
            let text = match (outcome.output, cli.format) {
                (Output::Json(v), _) | (Output::Both(v, _), Format::Json) => {
                    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
                }
                (Output::Text(s), _) | (Output::Both(_, s), Format::Text) => s,
            };
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_FAILED;
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
