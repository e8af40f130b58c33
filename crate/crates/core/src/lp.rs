//! Exact rational linear programming (dense two-phase simplex).
//!
//! Problems in this crate are tiny (≤ ~10 variables, ≤ ~60 constraints) but
//! must be decided exactly: configuration realisability asks whether a system
//! of *strict* linear inequalities has a solution, and a wrong answer flips a
//! configuration in or out of existence. Bland's rule keeps the method
//! terminating; all pivots are exact.

use num_traits::{One, Signed, Zero};

use crate::linalg::dot;
use crate::rat::Rat;

/// Result of maximising a linear objective over `{x : A x ≤ b}` (free `x`).
#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, objective: Rat },
    Infeasible,
    Unbounded,
}

/// A strict inequality `normal · x < rhs`.
#[derive(Debug, Clone)]
pub struct StrictIneq {
    pub normal: Vec<Rat>,
    pub rhs: Rat,
}

impl StrictIneq {
    pub fn new(normal: Vec<Rat>, rhs: Rat) -> Self {
        StrictIneq { normal, rhs }
    }

    /// The reversed inequality `normal · x > rhs`, as `-normal · x < -rhs`.
    pub fn flipped(&self) -> Self {
        StrictIneq {
            normal: self.normal.iter().map(|c| -c).collect(),
            rhs: -&self.rhs,
        }
    }

    pub fn satisfied_by(&self, x: &[Rat]) -> bool {
        dot(&self.normal, x) < self.rhs
    }
}

/// Maximise `c · x` subject to `a_i · x ≤ b_i` with `x` free.
pub fn maximize(c: &[Rat], constraints: &[(Vec<Rat>, Rat)]) -> LpOutcome {
    let n = c.len();
    let m = constraints.len();
    // Free variables are split as x = u - w with u, w ≥ 0.
    let split = 2 * n;
    let mut art_rows: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, (a, b)) in constraints.iter().enumerate() {
        assert_eq!(a.len(), n, "constraint arity");
        let flip = b.is_negative();
        let s = if flip { -Rat::one() } else { Rat::one() };
        let mut row: Vec<Rat> = Vec::with_capacity(split + m + 2);
        for j in 0..n {
            row.push(&a[j] * &s);
        }
        for j in 0..n {
            row.push(-(&a[j] * &s));
        }
        for j in 0..m {
            row.push(if j == i { s.clone() } else { Rat::zero() });
        }
        row.push(b * &s);
        rows.push(row);
        if flip {
            art_rows.push(i);
        }
    }
    let n_art = art_rows.len();
    let total = split + m + n_art;
    // Column layout: [u | w | slack | artificial | rhs].
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, row) in rows.iter().enumerate() {
        let mut r: Vec<Rat> = row[..split + m].to_vec();
        for &ar in &art_rows {
            r.push(if ar == i { Rat::one() } else { Rat::zero() });
        }
        r.push(row[split + m].clone());
        tab.push(r);
    }
    let mut basis: Vec<usize> = (0..m).map(|i| split + i).collect();
    for (k, &i) in art_rows.iter().enumerate() {
        basis[i] = split + m + k;
    }

    if n_art > 0 {
        // Phase 1: maximise -(sum of artificials).
        let mut cost = vec![Rat::zero(); total + 1];
        for &i in &art_rows {
            for j in 0..=total {
                let add = tab[i][j].clone();
                cost[j] += add;
            }
        }
        for k in 0..n_art {
            cost[split + m + k] = Rat::zero();
        }
        if run_simplex(&mut tab, &mut basis, &mut cost, total).is_err() {
            unreachable!("phase 1 objective is bounded");
        }
        if !cost[total].is_zero() {
            return LpOutcome::Infeasible;
        }
        // Pivot remaining artificials out of the basis; a basic artificial
        // whose row has no nonzero real column marks a redundant constraint
        // (rhs 0 at a feasible basis), so the row is dropped.
        let mut i = 0;
        while i < tab.len() {
            if basis[i] >= split + m {
                if let Some(j) = (0..split + m).find(|&j| !tab[i][j].is_zero()) {
                    pivot(&mut tab, &mut basis, &mut vec![Rat::zero(); total + 1], i, j);
                    i += 1;
                } else {
                    tab.remove(i);
                    basis.remove(i);
                }
            } else {
                i += 1;
            }
        }
        // Drop the artificial columns entirely: leaving them in place lets
        // later pivots turn their (fake) reduced costs positive and derail
        // phase 2 into a bogus unbounded exit.
        for row in &mut tab {
            let rhs = row.pop().expect("rhs column");
            row.truncate(split + m);
            row.push(rhs);
        }
    }
    let total = split + m;

    // Phase 2 reduced costs for the real objective.
    let mut cost = vec![Rat::zero(); total + 1];
    for j in 0..n {
        cost[j] = c[j].clone();
        cost[n + j] = -c[j].clone();
    }
    for i in 0..tab.len() {
        let b = basis[i];
        if cost[b].is_zero() {
            continue;
        }
        let f = cost[b].clone();
        for j in 0..=total {
            let sub = &f * &tab[i][j];
            cost[j] -= sub;
        }
    }
    if run_simplex(&mut tab, &mut basis, &mut cost, total).is_err() {
        return LpOutcome::Unbounded;
    }

    let mut vals = vec![Rat::zero(); total];
    for i in 0..tab.len() {
        vals[basis[i]] = tab[i][total].clone();
    }
    let x: Vec<Rat> = (0..n).map(|j| &vals[j] - &vals[n + j]).collect();
    let objective = dot(c, &x);
    LpOutcome::Optimal { x, objective }
}

fn run_simplex(
    tab: &mut Vec<Vec<Rat>>,
    basis: &mut Vec<usize>,
    cost: &mut Vec<Rat>,
    total: usize,
) -> Result<(), ()> {
    loop {
        // Bland's rule: smallest-index improving column.
        let Some(enter) = (0..total).find(|&j| cost[j].is_positive()) else {
            return Ok(());
        };
        let mut leave: Option<(usize, Rat)> = None;
        for (i, row) in tab.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[total] / &row[enter];
            match &leave {
                None => leave = Some((i, ratio)),
                Some((li, lr)) => {
                    if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                        leave = Some((i, ratio));
                    }
                }
            }
        }
        let Some((leave, _)) = leave else {
            return Err(());
        };
        pivot(tab, basis, cost, leave, enter);
    }
}

fn pivot(
    tab: &mut Vec<Vec<Rat>>,
    basis: &mut Vec<usize>,
    cost: &mut Vec<Rat>,
    row: usize,
    col: usize,
) {
    let total = tab[0].len() - 1;
    let pv = tab[row][col].clone();
    for j in 0..=total {
        tab[row][j] /= pv.clone();
    }
    for i in 0..tab.len() {
        if i == row || tab[i][col].is_zero() {
            continue;
        }
        let f = tab[i][col].clone();
        for j in 0..=total {
            let sub = &f * &tab[row][j];
            tab[i][j] -= sub;
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for j in 0..=total {
            let sub = &f * &tab[row][j];
            cost[j] -= sub;
        }
    }
    basis[row] = col;
}

/// Decide whether a system of strict inequalities `a_i · x < b_i` has a
/// solution, returning a witness with maximal margin (capped at 1).
pub fn strict_feasible(system: &[StrictIneq]) -> Option<Vec<Rat>> {
    strict_feasible_with_cap(system, &Rat::one())
}

/// Same as [`strict_feasible`] but with a caller-chosen margin cap, which is
/// used to obtain a *different* interior witness for cross-validation.
pub fn strict_feasible_with_cap(system: &[StrictIneq], cap: &Rat) -> Option<Vec<Rat>> {
    if system.is_empty() {
        return Some(Vec::new());
    }
    let n = system[0].normal.len();
    let mut c = vec![Rat::zero(); n + 1];
    c[n] = Rat::one();
    let mut cons: Vec<(Vec<Rat>, Rat)> = system
        .iter()
        .map(|ineq| {
            let mut a = ineq.normal.clone();
            a.push(Rat::one());
            (a, ineq.rhs.clone())
        })
        .collect();
    let mut tcap = vec![Rat::zero(); n + 1];
    tcap[n] = Rat::one();
    cons.push((tcap, cap.clone()));
    match maximize(&c, &cons) {
        LpOutcome::Optimal { x, objective } if objective.is_positive() => {
            let witness = x[..n].to_vec();
            debug_assert!(system.iter().all(|s| s.satisfied_by(&witness)));
            Some(witness)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn maximize_box() {
        // max x + y over the unit square
        let c = vec![int(1), int(1)];
        let cons = vec![
            (vec![int(1), int(0)], int(1)),
            (vec![int(0), int(1)], int(1)),
            (vec![int(-1), int(0)], int(0)),
            (vec![int(0), int(-1)], int(0)),
        ];
        match maximize(&c, &cons) {
            LpOutcome::Optimal { objective, x } => {
                assert_eq!(objective, int(2));
                assert_eq!(x, vec![int(1), int(1)]);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn maximize_needs_phase_one() {
        // Feasible region x ≥ 2 (written as -x ≤ -2), x ≤ 5.
        let c = vec![int(-1)];
        let cons = vec![
            (vec![int(-1)], int(-2)),
            (vec![int(1)], int(5)),
        ];
        match maximize(&c, &cons) {
            LpOutcome::Optimal { objective, .. } => assert_eq!(objective, int(-2)),
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible() {
        let c = vec![int(0)];
        let cons = vec![
            (vec![int(1)], int(1)),
            (vec![int(-1)], int(-2)), // x ≥ 2 contradicts x ≤ 1
        ];
        assert_eq!(maximize(&c, &cons), LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        let c = vec![int(1)];
        let cons = vec![(vec![int(-1)], int(0))]; // x ≥ 0, maximise x
        assert_eq!(maximize(&c, &cons), LpOutcome::Unbounded);
    }

    #[test]
    fn strict_feasibility_witness() {
        // 1 < a, 1 < b, a + b < 4
        let sys = vec![
            StrictIneq::new(vec![int(-1), int(0)], int(-1)),
            StrictIneq::new(vec![int(0), int(-1)], int(-1)),
            StrictIneq::new(vec![int(1), int(1)], int(4)),
        ];
        let w = strict_feasible(&sys).expect("feasible");
        assert!(sys.iter().all(|s| s.satisfied_by(&w)));
    }

    #[test]
    fn strict_infeasibility() {
        // x < 0 and x > 1
        let sys = vec![
            StrictIneq::new(vec![int(1)], int(0)),
            StrictIneq::new(vec![int(-1)], int(-1)),
        ];
        assert!(strict_feasible(&sys).is_none());
    }

    #[test]
    fn strict_feasible_open_unbounded_region() {
        // (1, ∞)^3: -x_i < -1
        let sys: Vec<StrictIneq> = (0..3)
            .map(|i| {
                let mut n = vec![int(0); 3];
                n[i] = int(-1);
                StrictIneq::new(n, int(-1))
            })
            .collect();
        let w = strict_feasible(&sys).expect("feasible");
        assert!(w.iter().all(|c| c > &int(1)));
        // A different margin cap yields a second interior witness.
        let w2 = strict_feasible_with_cap(&sys, &rat(1, 3)).expect("feasible");
        assert!(sys.iter().all(|s| s.satisfied_by(&w2)));
    }
}
