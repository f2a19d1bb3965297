//! Exact rational linear programming on small dense problems: feasibility
//! with Farkas infeasibility certificates, and minimization. Two-phase
//! simplex over big rationals with Bland's pivoting rule, so every outcome is
//! exact and termination is guaranteed.
//!
//! Certificate convention: each constraint gets one multiplier. Multipliers
//! on `<=` and `>=` rows are nonnegative and are applied to the row's
//! `<=`-normalized form (`>=` rows are negated first); equality multipliers
//! are signed. A valid certificate combines the rows into
//! `sum_j tau_j * x_j <= combined_rhs` with every `tau_j >= 0` (zero for free
//! variables) and `combined_rhs < 0`, impossible for any `x >= 0`.

use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    fn reversed(self) -> Relation {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Eq => Relation::Eq,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) -> Self {
        Constraint { coeffs, relation, rhs }
    }
}

/// A dense linear program. When `objective` is present it is minimized.
/// `nonneg` forces every variable to be >= 0; otherwise variables are free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub variables: Vec<String>,
    pub constraints: Vec<Constraint>,
    pub objective: Option<Vec<BigRational>>,
    pub nonneg: bool,
}

/// Farkas proof of infeasibility; see the module docs for the convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    /// One multiplier per constraint, in constraint order.
    pub row_multipliers: Vec<BigRational>,
    /// The combined coefficient per variable; these are the implied
    /// multipliers on the nonnegativity rows `-x_j <= 0`.
    pub nonneg_multipliers: Vec<BigRational>,
    /// The combined right-hand side; strictly negative.
    pub combined_rhs: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Feasible {
        point: Vec<BigRational>,
    },
    Optimal {
        point: Vec<BigRational>,
        objective_value: BigRational,
    },
    Infeasible {
        farkas: FarkasCertificate,
    },
    Unbounded,
}

/// Finds an exact feasible point or proves infeasibility with a checkable
/// Farkas certificate.
pub fn find_feasible(lp: &LinearProgram) -> Result<LpOutcome> {
    validate(lp, false)?;
    let mut t = Tableau::build(lp);
    match t.phase_one(lp)? {
        PhaseOne::Infeasible(farkas) => Ok(LpOutcome::Infeasible { farkas }),
        PhaseOne::Feasible => Ok(LpOutcome::Feasible {
            point: t.read_point(lp),
        }),
    }
}

/// Minimizes the objective exactly, or reports infeasibility/unboundedness.
pub fn minimize(lp: &LinearProgram) -> Result<LpOutcome> {
    validate(lp, true)?;
    let mut t = Tableau::build(lp);
    match t.phase_one(lp)? {
        PhaseOne::Infeasible(farkas) => return Ok(LpOutcome::Infeasible { farkas }),
        PhaseOne::Feasible => {}
    }
    if t.phase_two(lp)? {
        let point = t.read_point(lp);
        let objective = lp.objective.as_ref().expect("validated");
        let objective_value = objective
            .iter()
            .zip(&point)
            .map(|(c, x)| c * x)
            .fold(BigRational::zero(), |a, b| a + b);
        Ok(LpOutcome::Optimal {
            point,
            objective_value,
        })
    } else {
        Ok(LpOutcome::Unbounded)
    }
}

/// Exactly re-evaluates a Farkas certificate against the program: checks the
/// sign conditions, the combined coefficients, and the strict contradiction.
pub fn check_farkas(lp: &LinearProgram, cert: &FarkasCertificate) -> bool {
    let n = lp.variables.len();
    if cert.row_multipliers.len() != lp.constraints.len() || cert.nonneg_multipliers.len() != n {
        return false;
    }
    let mut combined = vec![BigRational::zero(); n];
    let mut rhs = BigRational::zero();
    for (c, m) in lp.constraints.iter().zip(&cert.row_multipliers) {
        let sign = match c.relation {
            Relation::Le | Relation::Eq => BigRational::from_integer(1.into()),
            Relation::Ge => BigRational::from_integer((-1).into()),
        };
        if c.relation != Relation::Eq && m.is_negative() {
            return false;
        }
        let factor = m * sign;
        for (acc, a) in combined.iter_mut().zip(&c.coeffs) {
            *acc += &factor * a;
        }
        rhs += factor * &c.rhs;
    }
    if rhs != cert.combined_rhs || !rhs.is_negative() {
        return false;
    }
    for (acc, tau) in combined.iter().zip(&cert.nonneg_multipliers) {
        if acc != tau {
            return false;
        }
        if lp.nonneg {
            if tau.is_negative() {
                return false;
            }
        } else if !tau.is_zero() {
            return false;
        }
    }
    true
}

fn validate(lp: &LinearProgram, need_objective: bool) -> Result<()> {
    let n = lp.variables.len();
    for (i, c) in lp.constraints.iter().enumerate() {
        if c.coeffs.len() != n {
            return Err(Error::input(format!(
                "constraint {i} has {} coefficients for {n} variables",
                c.coeffs.len()
            )));
        }
    }
    match &lp.objective {
        Some(obj) if obj.len() != n => {
            return Err(Error::input(format!(
                "objective has {} coefficients for {n} variables",
                obj.len()
            )))
        }
        None if need_objective => return Err(Error::input("minimize requires an objective")),
        _ => {}
    }
    Ok(())
}

enum PhaseOne {
    Feasible,
    Infeasible(FarkasCertificate),
}

/// Dense simplex tableau. Columns: structural variables (free variables are
/// split x = p - m), then one slack/surplus/artificial block per row, then
/// the right-hand side.
struct Tableau {
    rows: Vec<Vec<BigRational>>,
    /// Reduced-cost row; last entry is minus the current objective value.
    obj: Vec<BigRational>,
    basis: Vec<usize>,
    /// Initial identity column of each row (slack or artificial).
    ident_col: Vec<usize>,
    is_artificial: Vec<bool>,
    flipped: Vec<bool>,
    structural: usize,
    cols: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.variables.len();
        let split = !lp.nonneg;
        let structural = if split { 2 * n } else { n };
        let m = lp.constraints.len();

        // Column layout pass: count extras per row.
        let mut extra_cols = 0usize;
        let mut layout = Vec::with_capacity(m); // (relation, flipped)
        for c in &lp.constraints {
            let flip = c.rhs.is_negative();
            let rel = if flip { c.relation.reversed() } else { c.relation };
            extra_cols += match rel {
                Relation::Le => 1,
                Relation::Ge => 2,
                Relation::Eq => 1,
            };
            layout.push((rel, flip));
        }
        let cols = structural + extra_cols;

        let mut rows = Vec::with_capacity(m);
        let mut ident_col = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        let mut is_artificial = vec![false; cols];
        let mut next_extra = structural;
        for (c, &(rel, flip)) in lp.constraints.iter().zip(&layout) {
            let mut row = vec![BigRational::zero(); cols + 1];
            for (j, a) in c.coeffs.iter().enumerate() {
                let a = if flip { -a.clone() } else { a.clone() };
                if split {
                    row[2 * j] = a.clone();
                    row[2 * j + 1] = -a;
                } else {
                    row[j] = a;
                }
            }
            row[cols] = if flip { -c.rhs.clone() } else { c.rhs.clone() };
            let ident = match rel {
                Relation::Le => {
                    row[next_extra] = BigRational::from_integer(1.into());
                    next_extra += 1;
                    next_extra - 1
                }
                Relation::Ge => {
                    row[next_extra] = BigRational::from_integer((-1).into());
                    row[next_extra + 1] = BigRational::from_integer(1.into());
                    is_artificial[next_extra + 1] = true;
                    next_extra += 2;
                    next_extra - 1
                }
                Relation::Eq => {
                    row[next_extra] = BigRational::from_integer(1.into());
                    is_artificial[next_extra] = true;
                    next_extra += 1;
                    next_extra - 1
                }
            };
            ident_col.push(ident);
            flipped.push(flip);
            rows.push(row);
        }
        let basis = ident_col.clone();
        Tableau {
            rows,
            obj: vec![BigRational::zero(); cols + 1],
            basis,
            ident_col,
            is_artificial,
            flipped,
            structural,
            cols,
        }
    }

    /// Sets the reduced-cost row for cost vector `costs` (indexed by column).
    fn reset_objective(&mut self, costs: &[BigRational]) {
        for j in 0..=self.cols {
            let mut r = if j < self.cols {
                costs[j].clone()
            } else {
                BigRational::zero()
            };
            for (i, row) in self.rows.iter().enumerate() {
                let cb = &costs[self.basis[i]];
                if !cb.is_zero() {
                    r -= cb * &row[j];
                }
            }
            self.obj[j] = r;
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let factor = self.rows[row][col].clone();
        for x in self.rows[row].iter_mut() {
            *x /= &factor;
        }
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let f = self.rows[i][col].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..=self.cols {
                let delta = &f * &self.rows[row][j];
                self.rows[i][j] -= delta;
            }
        }
        let f = self.obj[col].clone();
        if !f.is_zero() {
            for j in 0..=self.cols {
                let delta = &f * &self.rows[row][j];
                self.obj[j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule: smallest eligible entering column; leaving row by
    /// minimum ratio, ties broken by smallest basic column. Returns false on
    /// unboundedness.
    fn simplex_loop(&mut self, allow_artificial: bool) -> bool {
        loop {
            let entering = (0..self.cols).find(|&j| {
                (allow_artificial || !self.is_artificial[j]) && self.obj[j].is_negative()
            });
            let Some(col) = entering else {
                return true;
            };
            let mut leave: Option<(BigRational, usize, usize)> = None; // (ratio, basis col, row)
            for i in 0..self.rows.len() {
                if self.rows[i][col].is_positive() {
                    let ratio = &self.rows[i][self.cols] / &self.rows[i][col];
                    let candidate = (ratio, self.basis[i], i);
                    let better = match &leave {
                        None => true,
                        Some((r, b, _)) => {
                            candidate.0 < *r || (candidate.0 == *r && candidate.1 < *b)
                        }
                    };
                    if better {
                        leave = Some(candidate);
                    }
                }
            }
            match leave {
                None => return false,
                Some((_, _, row)) => self.pivot(row, col),
            }
        }
    }

    fn phase_one(&mut self, lp: &LinearProgram) -> Result<PhaseOne> {
        let mut costs = vec![BigRational::zero(); self.cols];
        for (j, cost) in costs.iter_mut().enumerate() {
            if self.is_artificial[j] {
                *cost = BigRational::from_integer(1.into());
            }
        }
        self.reset_objective(&costs);
        if !self.simplex_loop(true) {
            return Err(Error::input(
                "phase-1 objective unbounded; tableau corrupt",
            ));
        }
        let objective_value = -self.obj[self.cols].clone();
        if objective_value.is_positive() {
            return Ok(PhaseOne::Infeasible(self.extract_farkas(lp)));
        }
        // Drive leftover artificials out of the basis. A row where no
        // non-artificial column has a nonzero entry is redundant: artificials
        // are banned from entering, so such a row can never change again.
        for i in 0..self.rows.len() {
            if self.is_artificial[self.basis[i]] {
                let col =
                    (0..self.cols).find(|&j| !self.is_artificial[j] && !self.rows[i][j].is_zero());
                if let Some(col) = col {
                    self.pivot(i, col);
                }
            }
        }
        Ok(PhaseOne::Feasible)
    }

    /// Runs phase 2 for the program's objective. Returns false if unbounded.
    fn phase_two(&mut self, lp: &LinearProgram) -> Result<bool> {
        let objective = lp.objective.as_ref().expect("validated");
        let mut costs = vec![BigRational::zero(); self.cols];
        for (j, c) in objective.iter().enumerate() {
            if lp.nonneg {
                costs[j] = c.clone();
            } else {
                costs[2 * j] = c.clone();
                costs[2 * j + 1] = -c.clone();
            }
        }
        self.reset_objective(&costs);
        Ok(self.simplex_loop(false))
    }

    fn read_point(&self, lp: &LinearProgram) -> Vec<BigRational> {
        let mut internal = vec![BigRational::zero(); self.structural];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.structural {
                internal[b] = self.rows[i][self.cols].clone();
            }
        }
        if lp.nonneg {
            internal
        } else {
            (0..lp.variables.len())
                .map(|j| internal[2 * j].clone() - internal[2 * j + 1].clone())
                .collect()
        }
    }

    /// Reads the phase-1 duals off the identity columns and converts them to
    /// the certificate convention on the original, unflipped constraints.
    fn extract_farkas(&self, lp: &LinearProgram) -> FarkasCertificate {
        let one = BigRational::from_integer(1.into());
        let mut row_multipliers = Vec::with_capacity(lp.constraints.len());
        for (i, c) in lp.constraints.iter().enumerate() {
            let ident = self.ident_col[i];
            let cost = if self.is_artificial[ident] {
                one.clone()
            } else {
                BigRational::zero()
            };
            let y = cost - self.obj[ident].clone();
            let tableau_rel = if self.flipped[i] {
                c.relation.reversed()
            } else {
                c.relation
            };
            let m_tableau = match tableau_rel {
                Relation::Le | Relation::Eq => -y,
                Relation::Ge => y,
            };
            let m = if self.flipped[i] && c.relation == Relation::Eq {
                -m_tableau
            } else {
                m_tableau
            };
            row_multipliers.push(m);
        }
        // Recombine on the original data; the result is the certificate's
        // nonnegativity part.
        let n = lp.variables.len();
        let mut nonneg_multipliers = vec![BigRational::zero(); n];
        let mut combined_rhs = BigRational::zero();
        for (c, m) in lp.constraints.iter().zip(&row_multipliers) {
            let sign = match c.relation {
                Relation::Le | Relation::Eq => one.clone(),
                Relation::Ge => -one.clone(),
            };
            let factor = m * sign;
            for (acc, a) in nonneg_multipliers.iter_mut().zip(&c.coeffs) {
                *acc += &factor * a;
            }
            combined_rhs += factor * &c.rhs;
        }
        FarkasCertificate {
            row_multipliers,
            nonneg_multipliers,
            combined_rhs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{frac, int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    fn satisfies(lp: &LinearProgram, point: &[BigRational]) -> bool {
        lp.constraints.iter().all(|c| {
            let lhs: BigRational = c
                .coeffs
                .iter()
                .zip(point)
                .map(|(a, x)| a * x)
                .fold(int(0), |s, t| s + t);
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Ge => lhs >= c.rhs,
                Relation::Eq => lhs == c.rhs,
            }
        }) && (!lp.nonneg || point.iter().all(|x| *x >= int(0)))
    }

    #[test]
    fn feasible_unique_point() {
        let lp = LinearProgram {
            variables: names(2),
            constraints: vec![
                Constraint::new(vec![int(1), int(1)], Relation::Eq, int(2)),
                Constraint::new(vec![int(1), int(0)], Relation::Le, int(1)),
                Constraint::new(vec![int(0), int(1)], Relation::Le, int(1)),
            ],
            objective: None,
            nonneg: true,
        };
        match find_feasible(&lp).unwrap() {
            LpOutcome::Feasible { point } => assert_eq!(point, vec![int(1), int(1)]),
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn example1_g2_core_lp_is_infeasible() {
        // sum = 2, every pair bounded by 1, alpha >= 0
        let lp = LinearProgram {
            variables: names(3),
            constraints: vec![
                Constraint::new(vec![int(1), int(1), int(1)], Relation::Eq, int(2)),
                Constraint::new(vec![int(1), int(1), int(0)], Relation::Le, int(1)),
                Constraint::new(vec![int(1), int(0), int(1)], Relation::Le, int(1)),
                Constraint::new(vec![int(0), int(1), int(1)], Relation::Le, int(1)),
            ],
            objective: None,
            nonneg: true,
        };
        match find_feasible(&lp).unwrap() {
            LpOutcome::Infeasible { farkas } => assert!(check_farkas(&lp, &farkas)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn contradictory_bounds_give_unit_multipliers() {
        let lp = LinearProgram {
            variables: names(1),
            constraints: vec![
                Constraint::new(vec![int(1)], Relation::Ge, int(1)),
                Constraint::new(vec![int(1)], Relation::Le, int(0)),
            ],
            objective: None,
            nonneg: true,
        };
        match find_feasible(&lp).unwrap() {
            LpOutcome::Infeasible { farkas } => {
                assert_eq!(farkas.row_multipliers, vec![int(1), int(1)]);
                assert_eq!(farkas.combined_rhs, int(-1));
                assert_eq!(farkas.nonneg_multipliers, vec![int(0)]);
                assert!(check_farkas(&lp, &farkas));
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn minimize_simple_bound() {
        let lp = LinearProgram {
            variables: names(1),
            constraints: vec![Constraint::new(vec![int(1)], Relation::Ge, int(5))],
            objective: Some(vec![int(1)]),
            nonneg: true,
        };
        match minimize(&lp).unwrap() {
            LpOutcome::Optimal {
                objective_value, ..
            } => assert_eq!(objective_value, int(5)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    /// LP1 on K3: one closed-neighborhood constraint per vertex.
    #[test]
    fn fractional_ds_lp_on_k3() {
        let all = vec![int(1), int(1), int(1)];
        let lp = LinearProgram {
            variables: names(3),
            constraints: vec![
                Constraint::new(all.clone(), Relation::Ge, int(1)),
                Constraint::new(all.clone(), Relation::Ge, int(1)),
                Constraint::new(all.clone(), Relation::Ge, int(1)),
            ],
            objective: Some(all.clone()),
            nonneg: true,
        };
        match minimize(&lp).unwrap() {
            LpOutcome::Optimal {
                objective_value, ..
            } => assert_eq!(objective_value, int(1)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    /// LP1 on C4: closed neighborhoods hit three of four vertices.
    #[test]
    fn fractional_ds_lp_on_c4() {
        let row = |miss: usize| {
            (0..4)
                .map(|j| if j == miss { int(0) } else { int(1) })
                .collect::<Vec<_>>()
        };
        let lp = LinearProgram {
            variables: names(4),
            constraints: (0..4)
                .map(|v| Constraint::new(row((v + 2) % 4), Relation::Ge, int(1)))
                .collect(),
            objective: Some(vec![int(1); 4]),
            nonneg: true,
        };
        match minimize(&lp).unwrap() {
            LpOutcome::Optimal {
                point,
                objective_value,
            } => {
                assert_eq!(objective_value, frac(4, 3));
                assert!(satisfies(&lp, &point));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    /// Beale's degenerate program cycles under naive largest-coefficient
    /// pivoting; Bland's rule must terminate at the optimum -1/20.
    #[test]
    fn degenerate_program_terminates_at_the_optimum() {
        let lp = LinearProgram {
            variables: names(4),
            constraints: vec![
                Constraint::new(
                    vec![frac(1, 4), int(-60), frac(-1, 25), int(9)],
                    Relation::Le,
                    int(0),
                ),
                Constraint::new(
                    vec![frac(1, 2), int(-90), frac(-1, 50), int(3)],
                    Relation::Le,
                    int(0),
                ),
                Constraint::new(vec![int(0), int(0), int(1), int(0)], Relation::Le, int(1)),
            ],
            objective: Some(vec![frac(-3, 4), int(150), frac(-1, 50), int(6)]),
            nonneg: true,
        };
        match minimize(&lp).unwrap() {
            LpOutcome::Optimal {
                point,
                objective_value,
            } => {
                assert_eq!(objective_value, frac(-1, 20));
                assert!(satisfies(&lp, &point));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_minimization() {
        let lp = LinearProgram {
            variables: names(1),
            constraints: vec![Constraint::new(vec![int(1)], Relation::Ge, int(0))],
            objective: Some(vec![int(-1)]),
            nonneg: true,
        };
        assert_eq!(minimize(&lp).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn empty_program_is_feasible_at_the_empty_point() {
        let lp = LinearProgram {
            variables: vec![],
            constraints: vec![],
            objective: None,
            nonneg: true,
        };
        match find_feasible(&lp).unwrap() {
            LpOutcome::Feasible { point } => assert!(point.is_empty()),
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn malformed_programs_error() {
        let lp = LinearProgram {
            variables: names(2),
            constraints: vec![Constraint::new(vec![int(1)], Relation::Le, int(1))],
            objective: None,
            nonneg: true,
        };
        assert!(find_feasible(&lp).is_err());
        let lp = LinearProgram {
            variables: names(1),
            constraints: vec![],
            objective: None,
            nonneg: true,
        };
        assert!(minimize(&lp).is_err());
    }

    #[test]
    fn free_variables_can_go_negative() {
        let lp = LinearProgram {
            variables: names(1),
            constraints: vec![Constraint::new(vec![int(1)], Relation::Le, int(-3))],
            objective: Some(vec![int(-1)]),
            nonneg: false,
        };
        match minimize(&lp).unwrap() {
            LpOutcome::Optimal {
                point,
                objective_value,
            } => {
                assert_eq!(point, vec![int(-3)]);
                assert_eq!(objective_value, int(3));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn random_programs_yield_exact_points_or_valid_certificates() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut infeasible_seen = 0;
        for _ in 0..300 {
            let n = rng.gen_range(1..4);
            let m = rng.gen_range(1..6);
            let constraints: Vec<Constraint> = (0..m)
                .map(|_| {
                    let coeffs = (0..n).map(|_| int(rng.gen_range(-3..4))).collect();
                    let relation = match rng.gen_range(0..3) {
                        0 => Relation::Le,
                        1 => Relation::Ge,
                        _ => Relation::Eq,
                    };
                    Constraint::new(coeffs, relation, int(rng.gen_range(-4..5)))
                })
                .collect();
            let lp = LinearProgram {
                variables: names(n),
                constraints,
                objective: None,
                nonneg: true,
            };
            match find_feasible(&lp).unwrap() {
                LpOutcome::Feasible { point } => assert!(satisfies(&lp, &point)),
                LpOutcome::Infeasible { farkas } => {
                    infeasible_seen += 1;
                    assert!(check_farkas(&lp, &farkas));
                }
                other => panic!("unexpected outcome {other:?}"),
            }
        }
        assert!(infeasible_seen > 10, "sampling should hit infeasible programs");
    }
}
