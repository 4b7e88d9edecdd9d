//! Two-phase dense-tableau simplex over the rationals with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{dot, Rational};

/// Optimal solution of `max c·x` subject to `A x ≤ b`, `E x = e`.
#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub value: Rational,
    pub point: Vec<Rational>,
    /// One non-negative multiplier per inequality.
    pub ineq_duals: Vec<Rational>,
    /// One free multiplier per equation.
    pub eq_duals: Vec<Rational>,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Maximizes `obj` over the current basis; `false` when unbounded.
    fn optimize(&mut self, obj: &[Rational], allowed: &[bool]) -> bool {
        let ncols = obj.len();
        loop {
            let entering = (0..ncols).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut d = obj[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !self.rows[i][j].is_zero() && !obj[b].is_zero() {
                        d -= &obj[b] * &self.rows[i][j];
                    }
                }
                d.is_positive()
            });
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, c);
        }
    }
}

/// Solves `max c·x` s.t. `a_ub x ≤ b_ub`, `a_eq x = b_eq`.
///
/// A row with a single negative coefficient and bound zero is read as a
/// sign constraint on that variable; other variables are split into two
/// non-negative parts.
pub fn maximize(
    c: &[Rational],
    a_ub: &[Vec<Rational>],
    b_ub: &[Rational],
    a_eq: &[Vec<Rational>],
    b_eq: &[Rational],
) -> Result<LpSolution> {
    let nvar = c.len();
    let mut bound_row: Vec<Option<usize>> = vec![None; nvar];
    let mut is_bound = vec![false; a_ub.len()];
    for (i, row) in a_ub.iter().enumerate() {
        let nz: Vec<usize> = (0..nvar).filter(|&j| !row[j].is_zero()).collect();
        if nz.len() == 1 && row[nz[0]].is_negative() && b_ub[i].is_zero() && bound_row[nz[0]].is_none() {
            bound_row[nz[0]] = Some(i);
            is_bound[i] = true;
        }
    }
    // standard-form columns: (variable, sign)
    let mut columns: Vec<(usize, bool)> = Vec::new();
    for j in 0..nvar {
        columns.push((j, true));
        if bound_row[j].is_none() {
            columns.push((j, false));
        }
    }
    let nstd = columns.len();
    let ub_rows: Vec<usize> = (0..a_ub.len()).filter(|&i| !is_bound[i]).collect();
    let m = ub_rows.len() + a_eq.len();
    let nslack = ub_rows.len();
    // artificial columns only where needed
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    let mut flipped = Vec::with_capacity(m);
    let mut needs_art = Vec::with_capacity(m);
    let std_row = |row: &[Rational]| -> Vec<Rational> {
        columns.iter().map(|&(j, pos)| if pos { row[j].clone() } else { -row[j].clone() }).collect()
    };
    for (k, &i) in ub_rows.iter().enumerate() {
        let mut r = std_row(&a_ub[i]);
        r.extend((0..nslack).map(|s| if s == k { Rational::one() } else { Rational::zero() }));
        let flip = b_ub[i].is_negative();
        rows.push(r);
        rhs.push(b_ub[i].clone());
        flipped.push(flip);
        needs_art.push(flip);
    }
    for (i, row) in a_eq.iter().enumerate() {
        let mut r = std_row(row);
        r.extend((0..nslack).map(|_| Rational::zero()));
        rows.push(r);
        rhs.push(b_eq[i].clone());
        flipped.push(b_eq[i].is_negative());
        needs_art.push(true);
    }
    let art_rows: Vec<usize> = (0..m).filter(|&i| needs_art[i]).collect();
    let nart = art_rows.len();
    let ncols = nstd + nslack + nart;
    let mut basis = vec![0; m];
    for i in 0..m {
        if flipped[i] {
            for x in rows[i].iter_mut() {
                *x = -x.clone();
            }
            rhs[i] = -rhs[i].clone();
        }
        rows[i].extend((0..nart).map(|_| Rational::zero()));
        if i < nslack && !needs_art[i] {
            basis[i] = nstd + i;
        }
    }
    for (k, &i) in art_rows.iter().enumerate() {
        rows[i][nstd + nslack + k] = Rational::one();
        basis[i] = nstd + nslack + k;
    }
    let original: Vec<Vec<Rational>> = rows.clone();
    let mut t = Tableau { rows, rhs, basis };

    if nart > 0 {
        let mut obj1 = vec![Rational::zero(); ncols];
        for k in 0..nart {
            obj1[nstd + nslack + k] = -Rational::one();
        }
        t.optimize(&obj1, &vec![true; ncols]);
        let infeas: Rational = t
            .basis
            .iter()
            .zip(&t.rhs)
            .filter(|(b, _)| **b >= nstd + nslack)
            .map(|(_, v)| v.clone())
            .sum();
        if infeas.is_positive() {
            return Err(Error::Infeasible);
        }
        // drive artificials out of the basis, dropping redundant rows
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= nstd + nslack {
                match (0..nstd + nslack).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.rhs.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut obj = vec![Rational::zero(); ncols];
    for (k, &(j, pos)) in columns.iter().enumerate() {
        obj[k] = if pos { c[j].clone() } else { -c[j].clone() };
    }
    let allowed: Vec<bool> = (0..ncols).map(|j| j < nstd + nslack).collect();
    if !t.optimize(&obj, &allowed) {
        return Err(Error::Unbounded);
    }

    let mut std_values = vec![Rational::zero(); ncols];
    for (i, &b) in t.basis.iter().enumerate() {
        std_values[b] = t.rhs[i].clone();
    }
    let mut point = vec![Rational::zero(); nvar];
    for (k, &(j, pos)) in columns.iter().enumerate() {
        if pos {
            point[j] += &std_values[k];
        } else {
            point[j] -= &std_values[k];
        }
    }
    let value = dot(c, &point);

    // duals from B^T y = c_B over the original (sign-adjusted) rows
    let basis_cols = &t.basis;
    let restricted: Vec<Vec<Rational>> =
        original.iter().map(|row| basis_cols.iter().map(|&b| row[b].clone()).collect()).collect();
    let kept_rows = linalg::independent_rows(&restricted, basis_cols.len());
    let bt: Vec<Vec<Rational>> =
        basis_cols.iter().map(|&b| kept_rows.iter().map(|&i| original[i][b].clone()).collect()).collect();
    let cb: Vec<Rational> = basis_cols.iter().map(|&b| obj[b].clone()).collect();
    let y_kept = linalg::solve(&bt, &cb).ok_or_else(|| Error::Inconsistent("singular optimal basis".into()))?;
    let mut y = vec![Rational::zero(); m];
    for (k, &i) in kept_rows.iter().enumerate() {
        y[i] = if flipped[i] { -y_kept[k].clone() } else { y_kept[k].clone() };
    }

    let mut ineq_duals = vec![Rational::zero(); a_ub.len()];
    for (k, &i) in ub_rows.iter().enumerate() {
        ineq_duals[i] = y[k].clone();
    }
    let eq_duals: Vec<Rational> = (0..a_eq.len()).map(|i| y[nslack + i].clone()).collect();
    for j in 0..nvar {
        if let Some(r) = bound_row[j] {
            let mut reduced = -c[j].clone();
            for (k, &i) in ub_rows.iter().enumerate() {
                if !a_ub[i][j].is_zero() {
                    reduced += &y[k] * &a_ub[i][j];
                }
            }
            for (i, row) in a_eq.iter().enumerate() {
                if !row[j].is_zero() {
                    reduced += &eq_duals[i] * &row[j];
                }
            }
            ineq_duals[r] = reduced / -a_ub[r][j].clone();
        }
    }
    Ok(LpSolution { value, point, ineq_duals, eq_duals })
}

/// Checks dual feasibility and a zero duality gap.
pub fn certificate_holds(
    c: &[Rational],
    a_ub: &[Vec<Rational>],
    b_ub: &[Rational],
    a_eq: &[Vec<Rational>],
    b_eq: &[Rational],
    sol: &LpSolution,
) -> bool {
    if sol.ineq_duals.iter().any(|y| y.is_negative()) {
        return false;
    }
    for j in 0..c.len() {
        let mut s = Rational::zero();
        for (i, row) in a_ub.iter().enumerate() {
            s += &sol.ineq_duals[i] * &row[j];
        }
        for (i, row) in a_eq.iter().enumerate() {
            s += &sol.eq_duals[i] * &row[j];
        }
        if s != c[j] {
            return false;
        }
    }
    let dual_value = dot(&sol.ineq_duals, b_ub) + dot(&sol.eq_duals, b_eq);
    let primal_ok = a_ub.iter().zip(b_ub).all(|(r, b)| dot(r, &sol.point) <= *b)
        && a_eq.iter().zip(b_eq).all(|(r, b)| dot(r, &sol.point) == *b);
    dual_value == sol.value && primal_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, to_rationals};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| to_rationals(r)).collect()
    }

    #[test]
    fn small_lp() {
        // max x + y  s.t. x + 2y ≤ 4, 3x + y ≤ 6, x, y ≥ 0
        let c = to_rationals(&[1, 1]);
        let a = m(&[&[1, 2], &[3, 1], &[-1, 0], &[0, -1]]);
        let b = to_rationals(&[4, 6, 0, 0]);
        let sol = maximize(&c, &a, &b, &[], &[]).unwrap();
        assert_eq!(sol.value, frac(14, 5));
        assert_eq!(sol.point, vec![frac(8, 5), frac(6, 5)]);
        assert!(certificate_holds(&c, &a, &b, &[], &[], &sol));
    }

    #[test]
    fn free_variables_and_equations() {
        // max -x - y s.t. x + y = 3, x ≥ 1 (as -x ≤ -1), y free but y ≤ 5
        let c = to_rationals(&[-1, -1]);
        let a = m(&[&[-1, 0], &[0, 1]]);
        let b = to_rationals(&[-1, 5]);
        let e = m(&[&[1, 1]]);
        let sol = maximize(&c, &a, &b, &e, &to_rationals(&[3])).unwrap();
        assert_eq!(sol.value, int(-3));
        assert!(certificate_holds(&c, &a, &b, &e, &to_rationals(&[3]), &sol));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let c = to_rationals(&[1]);
        let r = maximize(&c, &m(&[&[1], &[-1]]), &to_rationals(&[1, -2]), &[], &[]);
        assert!(matches!(r, Err(Error::Infeasible)));
        let r = maximize(&c, &m(&[&[-1]]), &to_rationals(&[0]), &[], &[]);
        assert!(matches!(r, Err(Error::Unbounded)));
    }

    #[test]
    fn degenerate_cube_vertex() {
        // many constraints tight at the optimum of the unit cube
        let c = to_rationals(&[1, 1, 1]);
        let mut a = vec![];
        let mut b = vec![];
        for i in 0..3 {
            let mut hi = vec![0; 3];
            hi[i] = 1;
            a.push(to_rationals(&hi));
            b.push(int(1));
            let mut lo = vec![0; 3];
            lo[i] = -1;
            a.push(to_rationals(&lo));
            b.push(int(0));
        }
        a.push(to_rationals(&[1, 1, 1]));
        b.push(int(3));
        a.push(to_rationals(&[1, 1, 0]));
        b.push(int(2));
        let sol = maximize(&c, &a, &b, &[], &[]).unwrap();
        assert_eq!(sol.value, int(3));
        assert!(certificate_holds(&c, &a, &b, &[], &[], &sol));
    }

    #[test]
    fn redundant_equations() {
        let c = to_rationals(&[1, 0]);
        let e = m(&[&[1, 1], &[2, 2]]);
        let be = to_rationals(&[1, 2]);
        let a = m(&[&[-1, 0], &[0, -1]]);
        let b = to_rationals(&[0, 0]);
        let sol = maximize(&c, &a, &b, &e, &be).unwrap();
        assert_eq!(sol.value, int(1));
        assert!(certificate_holds(&c, &a, &b, &e, &be, &sol));
    }
}
