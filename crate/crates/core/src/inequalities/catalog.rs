//! Golden n=4 catalogs: the score equivalent facets and the remaining
//! "specific" facets of the characteristic-imset polytope, one
//! representative per permutation type.

use std::collections::BTreeMap;

use serde_json::Value;

use super::{fam_from_char_ineq, ConicCertificate, LinearInequality};
use crate::dags::permutations;
use crate::error::{Error, Result};
use crate::ground::{CharVector, FamVector, GroundSet, Subset};
use crate::ground::json_rational;

const SE4: &str = include_str!("../../data/catalog_se4.json");
const SPECIFIC4: &str = include_str!("../../data/catalog_specific4.json");

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub type_id: String,
    /// `(C, k)` for generalized cluster types.
    pub cluster: Option<(Subset, usize)>,
    /// Clutter labelling a specific type; empty for score equivalent types.
    pub sperner: Vec<Subset>,
    /// Characteristic-imset form of the representative.
    pub representative: LinearInequality,
    /// Family-variable form as stored in the data file, when present.
    pub published_fam: Option<LinearInequality>,
    /// Permutation images of the representative, deduplicated, sorted.
    pub orbit: Vec<LinearInequality>,
    pub expected_orbit_size: usize,
    pub certificate: Option<ConicCertificate>,
}

impl CatalogEntry {
    pub fn orbit_size_matches(&self) -> bool {
        self.orbit.len() == self.expected_orbit_size
    }

    /// Family-variable form of the representative.
    pub fn fam_form(&self) -> LinearInequality {
        fam_from_char_ineq(&self.representative).expect("char inequality")
    }

    pub fn fam_orbit(&self) -> Vec<LinearInequality> {
        self.orbit.iter().map(|i| fam_from_char_ineq(i).expect("char inequality")).collect()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CatalogKind {
    Se4,
    Specific4,
}

impl CatalogKind {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "se4" => Ok(CatalogKind::Se4),
            "specific4" => Ok(CatalogKind::Specific4),
            other => Err(Error::Parse(format!("unknown catalog `{other}` (expected se4 or specific4)"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CatalogKind::Se4 => "se4",
            CatalogKind::Specific4 => "specific4",
        }
    }

    pub fn entries(self) -> Vec<CatalogEntry> {
        match self {
            CatalogKind::Se4 => catalog_se_n4(),
            CatalogKind::Specific4 => catalog_specific_n4(),
        }
    }
}

/// 37 inequalities in 10 permutation types.
pub fn catalog_se_n4() -> Vec<CatalogEntry> {
    parse_catalog(SE4).expect("embedded catalog parses")
}

/// 117 inequalities in 20 permutation types.
pub fn catalog_specific_n4() -> Vec<CatalogEntry> {
    parse_catalog(SPECIFIC4).expect("embedded catalog parses")
}

pub fn catalog_ground_set() -> GroundSet {
    GroundSet::letters(4).expect("four letters")
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| Error::Parse(format!("catalog entry lacks \"{name}\"")))
}

fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let root: Value = serde_json::from_str(text)?;
    let gs = GroundSet::new(
        field(&root, "ground")?
            .as_str()
            .ok_or_else(|| Error::Parse("ground must be a string".into()))?
            .chars()
            .map(String::from),
    )?;
    let types = field(&root, "types")?.as_array().ok_or_else(|| Error::Parse("types must be an array".into()))?;
    types.iter().map(|t| parse_entry(&gs, t)).collect()
}

fn parse_entry(gs: &GroundSet, t: &Value) -> Result<CatalogEntry> {
    let type_id = field(t, "id")?.as_str().unwrap_or_default().to_string();
    let ch = field(t, "char")?;
    let representative = LinearInequality::char(
        CharVector::from_json(gs, field(ch, "objective")?)?,
        json_rational(field(ch, "bound")?)?,
        type_id.clone(),
    );
    let published_fam = match t.get("fam") {
        Some(f) => Some(LinearInequality::fam(
            FamVector::from_json(gs, field(f, "objective")?)?,
            json_rational(field(f, "bound")?)?,
            type_id.clone(),
        )),
        None => None,
    };
    let cluster = match t.get("cluster") {
        Some(c) => {
            let set = gs.parse_subset(field(c, "C")?.as_str().unwrap_or_default())?;
            let k = field(c, "k")?.as_u64().ok_or_else(|| Error::Parse("cluster k must be an integer".into()))?;
            Some((set, k as usize))
        }
        None => None,
    };
    let sperner = match t.get("sperner") {
        Some(list) => list
            .as_array()
            .ok_or_else(|| Error::Parse("sperner must be an array".into()))?
            .iter()
            .map(|s| gs.parse_subset(s.as_str().unwrap_or_default()))
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let certificate = match t.get("certificate") {
        Some(c) => Some(parse_certificate(gs, c)?),
        None => None,
    };
    let expected_orbit_size = field(t, "orbit_size")?
        .as_u64()
        .ok_or_else(|| Error::Parse("orbit_size must be an integer".into()))? as usize;
    let orbit = orbit_of(&representative);
    Ok(CatalogEntry { type_id, cluster, sperner, representative, published_fam, orbit, expected_orbit_size, certificate })
}

fn parse_certificate(gs: &GroundSet, c: &Value) -> Result<ConicCertificate> {
    let mut convexity = Vec::new();
    if let Some(map) = c.get("convexity").and_then(Value::as_object) {
        for (node, w) in map {
            let a = gs.index_of(node).ok_or_else(|| Error::Parse(format!("unknown node `{node}`")))?;
            convexity.push((a, json_rational(w)?));
        }
    }
    let mut nonnegativity = Vec::new();
    if let Some(map) = c.get("nonnegativity").and_then(Value::as_object) {
        for (key, w) in map {
            nonnegativity.push((gs.parse_family(key)?, json_rational(w)?));
        }
    }
    Ok(ConicCertificate { convexity, nonnegativity })
}

/// Images under all node permutations, one per distinct inequality.
pub fn orbit_of(ineq: &LinearInequality) -> Vec<LinearInequality> {
    let mut seen = BTreeMap::new();
    for perm in permutations(ineq.n()) {
        let img = ineq.permuted(&perm);
        seen.entry((img.objective.clone(), img.bound.clone())).or_insert(img);
    }
    seen.into_values().collect()
}
