//! Constants of the five-node counterexample: a characteristic-imset facet
//! whose family-variable form is valid but not facet-defining, and the
//! fractional point averaging the codes on its face.

use serde_json::Value;

use super::LinearInequality;
use crate::error::{Error, Result};
use crate::ground::{json_rational, CharVector, FamVector, GroundSet};

const DATA: &str = include_str!("../../data/counterexample5.json");

#[derive(Clone, Debug)]
pub struct CounterexampleConstants {
    pub ground: GroundSet,
    /// Characteristic-imset inequality, bound 16.
    pub ineq20: LinearInequality,
    /// Its family-variable form, bound 16.
    pub ineq21: LinearInequality,
    /// Objective of `ineq21`.
    pub obj_star: FamVector,
    /// Average of the 153 codes tight at `ineq21`.
    pub fam_dagger: FamVector,
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| Error::Parse(format!("counterexample data lacks \"{name}\"")))
}

fn parse() -> Result<CounterexampleConstants> {
    let root: Value = serde_json::from_str(DATA)?;
    let ground = GroundSet::letters(5)?;
    let i20 = field(&root, "ineq20")?;
    let ineq20 = LinearInequality::char(
        CharVector::from_json(&ground, field(i20, "objective")?)?,
        json_rational(field(i20, "bound")?)?,
        "counterexample char",
    );
    let i21 = field(&root, "ineq21")?;
    let obj_star = FamVector::from_json(&ground, field(i21, "objective")?)?;
    let ineq21 = LinearInequality::fam(obj_star.clone(), json_rational(field(i21, "bound")?)?, "counterexample fam");
    let fam_dagger = FamVector::from_json(&ground, field(&root, "fam_dagger")?)?;
    Ok(CounterexampleConstants { ground, ineq20, ineq21, obj_star, fam_dagger })
}

pub fn counterexample_constants() -> CounterexampleConstants {
    parse().expect("embedded counterexample data parses")
}
