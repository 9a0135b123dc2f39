//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! The programs solved here are tiny (a few dozen variables at most), so a
//! full tableau is fine. Bland's rule rules out cycling.

use num_traits::{One, Signed, Zero};

use crate::geometry::{Hyperplane, Point, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Relation,
    pub rhs: Rational,
}

/// `maximize objective · x` subject to the constraints and `x >= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>, // last column is the rhs
    obj: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&prow) {
                    if !p.is_zero() {
                        *v -= &f * p;
                    }
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (v, p) in self.obj.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations; `allowed` marks columns that may enter.
    /// Returns false when unbounded.
    fn optimize(&mut self, allowed: &[bool]) -> bool {
        loop {
            let Some(c) = (0..self.cols).find(|&j| allowed[j] && self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[self.cols] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }
}

impl LinearProgram {
    pub fn solve(&self) -> LpOutcome {
        let n = self.objective.len();
        let m = self.constraints.len();
        let mut slack_cols = 0;
        let mut art_cols = 0;
        for c in &self.constraints {
            debug_assert_eq!(c.coeffs.len(), n);
            let flipped = c.rhs.is_negative();
            let rel = match (c.rel, flipped) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (r, _) => r,
            };
            match rel {
                Relation::Le => slack_cols += 1,
                Relation::Ge => {
                    slack_cols += 1;
                    art_cols += 1;
                }
                Relation::Eq => art_cols += 1,
            }
        }
        let cols = n + slack_cols + art_cols;
        let art_start = n + slack_cols;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut next_slack, mut next_art) = (n, art_start);
        for c in &self.constraints {
            let flip = c.rhs.is_negative();
            let mut row = vec![Rational::zero(); cols + 1];
            for (j, v) in c.coeffs.iter().enumerate() {
                row[j] = if flip { -v } else { v.clone() };
            }
            row[cols] = if flip { -&c.rhs } else { c.rhs.clone() };
            let rel = match (c.rel, flip) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (r, _) => r,
            };
            match rel {
                Relation::Le => {
                    row[next_slack] = Rational::one();
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -Rational::one();
                    next_slack += 1;
                    row[next_art] = Rational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = Rational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            rows.push(row);
        }
        let mut t = Tableau {
            rows,
            obj: vec![Rational::zero(); cols + 1],
            basis,
            cols,
        };

        // Phase 1: maximize -sum(artificials).
        if art_cols > 0 {
            for j in art_start..cols {
                t.obj[j] = Rational::one();
            }
            for i in 0..m {
                if t.basis[i] >= art_start {
                    let row = t.rows[i].clone();
                    for (v, r) in t.obj.iter_mut().zip(&row) {
                        *v -= r;
                    }
                }
            }
            let all = vec![true; cols];
            t.optimize(&all);
            if t.obj[cols].is_negative() {
                return LpOutcome::Infeasible;
            }
            // Drive remaining (zero-valued) artificials out of the basis.
            let mut i = 0;
            while i < t.rows.len() {
                if t.basis[i] >= art_start {
                    if let Some(c) = (0..art_start).find(|&j| !t.rows[i][j].is_zero()) {
                        t.pivot(i, c);
                        i += 1;
                    } else {
                        t.rows.remove(i);
                        t.basis.remove(i);
                    }
                } else {
                    i += 1;
                }
            }
        }

        // Phase 2.
        t.obj = vec![Rational::zero(); cols + 1];
        for (j, c) in self.objective.iter().enumerate() {
            t.obj[j] = -c;
        }
        for i in 0..t.rows.len() {
            let b = t.basis[i];
            if !t.obj[b].is_zero() {
                let f = t.obj[b].clone();
                let row = t.rows[i].clone();
                for (v, r) in t.obj.iter_mut().zip(&row) {
                    *v -= &f * r;
                }
            }
        }
        let allowed: Vec<bool> = (0..cols).map(|j| j < art_start).collect();
        if !t.optimize(&allowed) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in t.basis.iter().enumerate() {
            if b < n {
                x[b] = t.rows[i][cols].clone();
            }
        }
        LpOutcome::Optimal {
            value: t.obj[cols].clone(),
            x,
        }
    }
}

/// Largest `t` such that some point lies in both hulls with every
/// barycentric weight at least `t`; `None` when the hulls are disjoint.
/// A positive value means the relative interiors meet.
pub fn hull_intersection_slack(u: &[&Point], v: &[&Point]) -> Option<Rational> {
    let (nu, nv) = (u.len(), v.len());
    if nu == 0 || nv == 0 {
        return None;
    }
    let d = u[0].dim();
    // variables: lambda'_i (nu), mu'_j (nv), t; lambda_i = lambda'_i + t
    let nvars = nu + nv + 1;
    let mut constraints = Vec::with_capacity(d + 2);
    for c in 0..d {
        let mut coeffs = vec![Rational::zero(); nvars];
        let mut tcoef = Rational::zero();
        for (i, p) in u.iter().enumerate() {
            coeffs[i] = p.coord(c).clone();
            tcoef += p.coord(c);
        }
        for (j, p) in v.iter().enumerate() {
            coeffs[nu + j] = -p.coord(c);
            tcoef -= p.coord(c);
        }
        coeffs[nvars - 1] = tcoef;
        constraints.push(Constraint {
            coeffs,
            rel: Relation::Eq,
            rhs: Rational::zero(),
        });
    }
    let mut su = vec![Rational::zero(); nvars];
    for c in su.iter_mut().take(nu) {
        *c = Rational::one();
    }
    su[nvars - 1] = Rational::from_integer((nu as i64).into());
    constraints.push(Constraint {
        coeffs: su,
        rel: Relation::Eq,
        rhs: Rational::one(),
    });
    let mut sv = vec![Rational::zero(); nvars];
    for c in sv.iter_mut().skip(nu).take(nv) {
        *c = Rational::one();
    }
    sv[nvars - 1] = Rational::from_integer((nv as i64).into());
    constraints.push(Constraint {
        coeffs: sv,
        rel: Relation::Eq,
        rhs: Rational::one(),
    });
    let mut objective = vec![Rational::zero(); nvars];
    objective[nvars - 1] = Rational::one();
    match (LinearProgram { objective, constraints }).solve() {
        LpOutcome::Optimal { value, .. } => Some(value),
        _ => None,
    }
}

/// Whether `p` is a convex combination of `pts`.
pub fn in_convex_hull(p: &Point, pts: &[&Point]) -> bool {
    hull_intersection_slack(&[p], pts).is_some()
}

/// Max-margin separator of two point sets with the normal bounded in L1
/// norm. Returns the hyperplane (with `a` on its negative side) and the
/// margin, or `None` when no strict separator exists.
pub fn max_slack_separator(a: &[&Point], b: &[&Point]) -> Option<(Hyperplane, Rational)> {
    let d = a.first().or(b.first())?.dim();
    // variables: w+ (d), w- (d), c+, c-, s
    let nvars = 2 * d + 3;
    let s = nvars - 1;
    let row = |p: &Point, sign: i64| {
        let mut coeffs = vec![Rational::zero(); nvars];
        for k in 0..d {
            coeffs[k] = p.coord(k).clone();
            coeffs[d + k] = -p.coord(k);
        }
        coeffs[2 * d] = -Rational::one();
        coeffs[2 * d + 1] = Rational::one();
        coeffs[s] = Rational::from_integer(sign.into());
        coeffs
    };
    let mut constraints = Vec::new();
    for p in a {
        // w.p - c + s <= 0
        constraints.push(Constraint {
            coeffs: row(p, 1),
            rel: Relation::Le,
            rhs: Rational::zero(),
        });
    }
    for p in b {
        // w.p - c - s >= 0
        constraints.push(Constraint {
            coeffs: row(p, -1),
            rel: Relation::Ge,
            rhs: Rational::zero(),
        });
    }
    let mut norm = vec![Rational::zero(); nvars];
    for c in norm.iter_mut().take(2 * d) {
        *c = Rational::one();
    }
    constraints.push(Constraint {
        coeffs: norm,
        rel: Relation::Le,
        rhs: Rational::one(),
    });
    let mut objective = vec![Rational::zero(); nvars];
    objective[s] = Rational::one();
    let LpOutcome::Optimal { value, x } = (LinearProgram { objective, constraints }).solve() else {
        return None;
    };
    if !value.is_positive() {
        return None;
    }
    let normal: Vec<Rational> = (0..d).map(|k| &x[k] - &x[d + k]).collect();
    let offset = &x[2 * d] - &x[2 * d + 1];
    Hyperplane::new(normal, offset).ok().map(|h| (h, value))
}
