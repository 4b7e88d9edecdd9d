//! Exact polyhedral computations: affine rank, faces, vertex/facet
//! conversion by double description, and linear programming.

pub mod dd;
pub mod simplex;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{dot, format_rational, parse_rational, primitive_scaling, Rational};

pub use simplex::LpSolution;

/// `coeffs · x ≤ bound`, or `coeffs · x = bound` when used as an equation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub coeffs: Vec<Rational>,
    pub bound: Rational,
}

impl Halfspace {
    pub fn new(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self { coeffs, bound }
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x)
    }

    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.bound - self.value(x)
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        self.value(x) <= self.bound
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.value(x) == self.bound
    }

    /// Positive multiple with coprime integer coefficients and bound.
    pub fn normalized(&self) -> Self {
        let mut all = self.coeffs.clone();
        all.push(self.bound.clone());
        let (ints, _) = primitive_scaling(&all);
        let mut v: Vec<Rational> = ints.into_iter().map(Rational::from_integer).collect();
        let bound = v.pop().expect("bound present");
        Self { coeffs: v, bound }
    }

    /// Normalized equation with its first non-zero entry positive.
    pub fn normalized_equation(&self) -> Self {
        let n = self.normalized();
        let mut all = n.coeffs.iter().chain(std::iter::once(&n.bound));
        match all.find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => {
                Self { coeffs: n.coeffs.iter().map(|c| -c).collect(), bound: -n.bound }
            }
            _ => n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct VRep {
    pub dim: usize,
    pub points: Vec<Vec<Rational>>,
}

impl VRep {
    /// Deduplicates and sorts the points.
    pub fn new(dim: usize, mut points: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::InvalidArgument(format!("point of length {} in dimension {dim}", p.len())));
        }
        points.sort();
        points.dedup();
        Ok(Self { dim, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "points": self.points.iter().map(|p| rationals_to_json(p)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let dim = value["dim"].as_u64().ok_or_else(|| Error::Parse("missing `dim`".into()))? as usize;
        let points = value["points"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing `points`".into()))?
            .iter()
            .map(rationals_from_json)
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, points)
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct HRep {
    pub dim: usize,
    pub inequalities: Vec<Halfspace>,
    pub equations: Vec<Halfspace>,
}

impl HRep {
    pub fn new(dim: usize, inequalities: Vec<Halfspace>, equations: Vec<Halfspace>) -> Result<Self> {
        for h in inequalities.iter().chain(&equations) {
            if h.coeffs.len() != dim {
                return Err(Error::InvalidArgument(format!(
                    "constraint of length {} in dimension {dim}",
                    h.coeffs.len()
                )));
            }
        }
        Ok(Self { dim, inequalities, equations })
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.inequalities.iter().all(|h| h.is_satisfied(x)) && self.equations.iter().all(|h| h.is_tight(x))
    }

    /// Sorted, normalized copy for comparisons.
    pub fn canonical(&self) -> Self {
        let mut inequalities: Vec<Halfspace> = self.inequalities.iter().map(Halfspace::normalized).collect();
        inequalities.sort();
        inequalities.dedup();
        let mut equations: Vec<Halfspace> = self.equations.iter().map(Halfspace::normalized_equation).collect();
        equations.sort();
        equations.dedup();
        Self { dim: self.dim, inequalities, equations }
    }

    pub fn to_json(&self) -> Value {
        let row = |h: &Halfspace| json!({"coeffs": rationals_to_json(&h.coeffs), "bound": format_rational(&h.bound)});
        json!({
            "dim": self.dim,
            "inequalities": self.inequalities.iter().map(row).collect::<Vec<_>>(),
            "equations": self.equations.iter().map(row).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let dim = value["dim"].as_u64().ok_or_else(|| Error::Parse("missing `dim`".into()))? as usize;
        let rows = |key: &str| -> Result<Vec<Halfspace>> {
            match &value[key] {
                Value::Null => Ok(Vec::new()),
                Value::Array(items) => items
                    .iter()
                    .map(|item| {
                        let coeffs = rationals_from_json(&item["coeffs"])?;
                        let bound = crate::ground::json_rational(&item["bound"])?;
                        Ok(Halfspace::new(coeffs, bound))
                    })
                    .collect(),
                _ => Err(Error::Parse(format!("`{key}` must be an array"))),
            }
        };
        Self::new(dim, rows("inequalities")?, rows("equations")?)
    }

    /// Plain text matrix: one row per constraint, coefficients then bound;
    /// equations are prefixed with `=`. Blank lines and `#` comments are
    /// ignored.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let line = |h: &Halfspace| {
            h.coeffs.iter().chain(std::iter::once(&h.bound)).map(format_rational).collect::<Vec<_>>().join(" ")
        };
        for h in &self.inequalities {
            let _ = writeln!(out, "{}", line(h));
        }
        for h in &self.equations {
            let _ = writeln!(out, "= {}", line(h));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut inequalities = Vec::new();
        let mut equations = Vec::new();
        let mut dim: Option<usize> = None;
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (is_eq, body) = match line.strip_prefix('=') {
                Some(rest) => (true, rest),
                None => (false, line),
            };
            let mut values = body.split_whitespace().map(parse_rational).collect::<Result<Vec<_>>>()?;
            let bound = values.pop().ok_or_else(|| Error::Parse("empty constraint row".into()))?;
            match dim {
                None => dim = Some(values.len()),
                Some(d) if d != values.len() => {
                    return Err(Error::Parse(format!("row with {} coefficients, expected {d}", values.len())))
                }
                _ => {}
            }
            let h = Halfspace::new(values, bound);
            if is_eq {
                equations.push(h);
            } else {
                inequalities.push(h);
            }
        }
        Self::new(dim.unwrap_or(0), inequalities, equations)
    }
}

fn rationals_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_rational(x))).collect())
}

fn rationals_from_json(v: &Value) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array of rationals".into()))?
        .iter()
        .map(crate::ground::json_rational)
        .collect()
}

pub fn affine_rank(points: &[Vec<Rational>]) -> Result<usize> {
    linalg::affine_rank(points)
}

/// Tight points of a valid inequality and the dimension of their hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub tight: Vec<usize>,
    /// `-1` for the empty face.
    pub dim: isize,
}

pub fn face_of(ineq: &Halfspace, vrep: &VRep) -> Result<Face> {
    let mut tight = Vec::new();
    for (i, p) in vrep.points.iter().enumerate() {
        let v = ineq.value(p);
        if v > ineq.bound {
            return Err(Error::InvalidInequality { index: i });
        }
        if v == ineq.bound {
            tight.push(i);
        }
    }
    let dim = if tight.is_empty() {
        -1
    } else {
        let pts: Vec<Vec<Rational>> = tight.iter().map(|&i| vrep.points[i].clone()).collect();
        linalg::affine_rank(&pts)? as isize - 1
    };
    Ok(Face { tight, dim })
}

pub fn polytope_dim(vrep: &VRep) -> Result<isize> {
    Ok(linalg::affine_rank(&vrep.points)? as isize - 1)
}

pub fn is_facet(ineq: &Halfspace, vrep: &VRep) -> Result<bool> {
    Ok(face_of(ineq, vrep)?.dim == polytope_dim(vrep)? - 1)
}

/// Affine hull equations of `points`, normalized.
pub fn affine_hull(points: &[Vec<Rational>]) -> Result<Vec<Halfspace>> {
    let dim = points.first().ok_or_else(|| Error::InvalidArgument("empty point set".into()))?.len();
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let mut r = p.clone();
            r.push(-Rational::one());
            r
        })
        .collect();
    let mut eqs: Vec<Halfspace> = linalg::nullspace(&rows, dim + 1)
        .into_iter()
        .map(|mut v| {
            let bound = v.pop().expect("homogenizing coordinate");
            Halfspace::new(v, bound).normalized_equation()
        })
        .collect();
    eqs.sort();
    Ok(eqs)
}

fn to_big_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| primitive_scaling(r).0).collect()
}

/// Irredundant facet description plus affine hull equations.
///
/// Facet normals vanish outside a fixed set of affinely independent
/// coordinates, which makes the output canonical for a given point set.
pub fn facets_from_vertices(vrep: &VRep, budget: &Budget) -> Result<HRep> {
    let points = &vrep.points;
    let first = points.first().ok_or_else(|| Error::InvalidArgument("empty point set".into()))?;
    let diffs: Vec<Vec<Rational>> =
        points.iter().map(|p| p.iter().zip(first).map(|(x, y)| x - y).collect()).collect();
    let coords = linalg::rref(&diffs, vrep.dim).pivots;
    let k = coords.len();
    let equations = affine_hull(points)?;
    if k == 0 {
        return HRep::new(vrep.dim, Vec::new(), equations);
    }
    let cone_rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let mut r: Vec<Rational> = coords.iter().map(|&j| -p[j].clone()).collect();
            r.push(Rational::one());
            r
        })
        .collect();
    let rays = dd::extreme_rays(&to_big_rows(&cone_rows), k + 1, budget)?;
    let mut facets: Vec<Halfspace> = rays
        .into_iter()
        .filter(|r| r[..k].iter().any(|x| !x.is_zero()))
        .map(|r| {
            let mut coeffs = vec![Rational::zero(); vrep.dim];
            for (i, &j) in coords.iter().enumerate() {
                coeffs[j] = Rational::from_integer(r[i].clone());
            }
            Halfspace::new(coeffs, Rational::from_integer(r[k].clone())).normalized()
        })
        .collect();
    facets.sort();
    HRep::new(vrep.dim, facets, equations)
}

/// Vertices and, when `allow_unbounded`, extreme recession directions.
pub fn vertices_and_rays(hrep: &HRep, allow_unbounded: bool, budget: &Budget) -> Result<(VRep, Vec<Vec<Rational>>)> {
    let d = hrep.dim;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let homog = |h: &Halfspace, sign: i64| -> Vec<Rational> {
        let s = Rational::from_integer(sign.into());
        let mut r: Vec<Rational> = h.coeffs.iter().map(|c| -c * &s).collect();
        r.push(&h.bound * &s);
        r
    };
    for e in &hrep.equations {
        rows.push(homog(e, 1));
        rows.push(homog(e, -1));
    }
    let mut t_row = vec![Rational::zero(); d + 1];
    t_row[d] = Rational::one();
    rows.push(t_row);
    for h in &hrep.inequalities {
        rows.push(homog(h, 1));
    }
    let rays = dd::extreme_rays(&to_big_rows(&rows), d + 1, budget)?;
    let mut vertices = Vec::new();
    let mut directions = Vec::new();
    for r in rays {
        let t = Rational::from_integer(r[d].clone());
        let x: Vec<Rational> = r[..d].iter().map(|v| Rational::from_integer(v.clone())).collect();
        if t.is_zero() {
            if !allow_unbounded {
                return Err(Error::UnboundedPolyhedron);
            }
            directions.push(x);
        } else {
            vertices.push(x.into_iter().map(|v| v / &t).collect());
        }
    }
    directions.sort();
    Ok((VRep::new(d, vertices)?, directions))
}

pub fn vertices_from_inequalities(hrep: &HRep, budget: &Budget) -> Result<VRep> {
    Ok(vertices_and_rays(hrep, false, budget)?.0)
}

pub fn lp_maximize(objective: &[Rational], hrep: &HRep) -> Result<LpSolution> {
    if objective.len() != hrep.dim {
        return Err(Error::InvalidArgument("objective length differs from the ambient dimension".into()));
    }
    let (a, b): (Vec<_>, Vec<_>) = hrep.inequalities.iter().map(|h| (h.coeffs.clone(), h.bound.clone())).unzip();
    let (e, f): (Vec<_>, Vec<_>) = hrep.equations.iter().map(|h| (h.coeffs.clone(), h.bound.clone())).unzip();
    simplex::maximize(objective, &a, &b, &e, &f)
}

/// `true` when the solution's multipliers certify its optimality for `hrep`.
pub fn lp_certificate_holds(objective: &[Rational], hrep: &HRep, sol: &LpSolution) -> bool {
    let (a, b): (Vec<_>, Vec<_>) = hrep.inequalities.iter().map(|h| (h.coeffs.clone(), h.bound.clone())).unzip();
    let (e, f): (Vec<_>, Vec<_>) = hrep.equations.iter().map(|h| (h.coeffs.clone(), h.bound.clone())).unzip();
    simplex::certificate_holds(objective, &a, &b, &e, &f, sol)
}

/// Largest value of `objective` over a finite point list.
pub fn max_over_points(objective: &[Rational], points: &[Vec<Rational>]) -> Result<Rational> {
    points
        .iter()
        .map(|p| dot(objective, p))
        .max()
        .ok_or_else(|| Error::InvalidArgument("empty point set".into()))
}

pub fn centroid(points: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let first = points.first().ok_or_else(|| Error::InvalidArgument("empty point set".into()))?;
    let mut sum = vec![Rational::zero(); first.len()];
    for p in points {
        for (s, x) in sum.iter_mut().zip(p) {
            *s += x;
        }
    }
    let count = Rational::from_integer(BigInt::from(points.len()));
    Ok(sum.into_iter().map(|s| s / &count).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, to_rationals};

    fn pts(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| to_rationals(r)).collect()
    }

    fn cube(d: usize) -> VRep {
        let points = (0..1u32 << d).map(|m| (0..d).map(|i| int((m >> i & 1) as i64)).collect()).collect();
        VRep::new(d, points).unwrap()
    }

    #[test]
    fn cube_round_trip() {
        let v = cube(3);
        let h = facets_from_vertices(&v, &Budget::unlimited()).unwrap();
        assert_eq!(h.inequalities.len(), 6);
        assert!(h.equations.is_empty());
        let back = vertices_from_inequalities(&h, &Budget::unlimited()).unwrap();
        assert_eq!(back, v);
        for f in &h.inequalities {
            assert!(is_facet(f, &v).unwrap());
        }
    }

    #[test]
    fn lower_dimensional_hull() {
        // triangle in the plane x + y + z = 1
        let v = VRep::new(3, pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        let h = facets_from_vertices(&v, &Budget::unlimited()).unwrap();
        assert_eq!(h.inequalities.len(), 3);
        assert_eq!(h.equations, vec![Halfspace::new(to_rationals(&[1, 1, 1]), int(1))]);
        for p in &v.points {
            assert!(h.contains(p));
        }
        let back = vertices_from_inequalities(&h, &Budget::unlimited()).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn faces() {
        let v = cube(3);
        let top = Halfspace::new(to_rationals(&[0, 0, 1]), int(1));
        assert_eq!(face_of(&top, &v).unwrap().dim, 2);
        let edge = Halfspace::new(to_rationals(&[1, 1, 0]), int(2));
        assert_eq!(face_of(&edge, &v).unwrap().dim, 1);
        assert!(!is_facet(&edge, &v).unwrap());
        let empty = Halfspace::new(to_rationals(&[1, 1, 1]), int(5));
        assert_eq!(face_of(&empty, &v).unwrap().dim, -1);
        let invalid = Halfspace::new(to_rationals(&[1, 0, 0]), int(0));
        assert!(matches!(face_of(&invalid, &v), Err(Error::InvalidInequality { .. })));
    }

    #[test]
    fn unbounded_detection() {
        let h = HRep::new(1, vec![Halfspace::new(to_rationals(&[-1]), int(0))], vec![]).unwrap();
        assert!(matches!(vertices_from_inequalities(&h, &Budget::unlimited()), Err(Error::UnboundedPolyhedron)));
        let (v, rays) = vertices_and_rays(&h, true, &Budget::unlimited()).unwrap();
        assert_eq!(v.points, pts(&[&[0]]));
        assert_eq!(rays, pts(&[&[1]]));
    }

    #[test]
    fn lp_matches_vertex_maximum() {
        use rand::{Rng, SeedableRng};
        let v = VRep::new(3, pts(&[&[0, 0, 0], &[2, 0, 0], &[0, 3, 0], &[0, 0, 1], &[1, 1, 1]])).unwrap();
        let h = facets_from_vertices(&v, &Budget::unlimited()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let c: Vec<Rational> = (0..3).map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
            let sol = lp_maximize(&c, &h).unwrap();
            assert_eq!(sol.value, max_over_points(&c, &v.points).unwrap());
            assert!(lp_certificate_holds(&c, &h, &sol));
        }
        let zero = vec![int(0); 3];
        assert_eq!(lp_maximize(&zero, &h).unwrap().value, int(0));
    }

    #[test]
    fn centroids() {
        assert_eq!(centroid(&pts(&[&[0, 2], &[1, 0]])).unwrap(), vec![frac(1, 2), int(1)]);
        assert!(centroid(&[]).is_err());
    }

    #[test]
    fn text_and_json_formats() {
        let h = HRep::new(
            2,
            vec![Halfspace::new(vec![frac(1, 2), int(-1)], int(3))],
            vec![Halfspace::new(to_rationals(&[1, 1]), int(0))],
        )
        .unwrap();
        let text = h.to_text();
        assert_eq!(text, "1/2 -1 3\n= 1 1 0\n");
        assert_eq!(HRep::from_text(&text).unwrap(), h);
        assert_eq!(HRep::from_json(&h.to_json()).unwrap(), h);
        assert!(HRep::from_text("1 2 3\n1 2\n").is_err());
        let v = cube(2);
        assert_eq!(VRep::from_json(&v.to_json()).unwrap(), v);
    }
}
