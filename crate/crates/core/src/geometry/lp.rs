use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal(Scalar),
}

/// Integer tableau kept fraction-free: the true tableau is `rows / denom`,
/// with every basic column equal to `denom` times a unit vector.
struct Tableau {
    rows: Vec<Vec<BigInt>>,
    rhs: Vec<BigInt>,
    basis: Vec<usize>,
    denom: BigInt,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        if self.rows[row][col].is_negative() {
            for x in self.rows[row].iter_mut() {
                *x = -&*x;
            }
            self.rhs[row] = -&self.rhs[row];
        }
        let p = self.rows[row][col].clone();
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for r in 0..self.rows.len() {
            if r == row {
                continue;
            }
            let f = self.rows[r][col].clone();
            for (x, y) in self.rows[r].iter_mut().zip(&pivot_row) {
                *x = (&p * &*x - &f * y) / &self.denom;
            }
            self.rhs[r] = (&p * &self.rhs[r] - &f * &pivot_rhs) / &self.denom;
        }
        self.denom = p;
        self.basis[row] = col;
    }

    /// Maximizes `cost · x` over the columns in `0..allowed` using Bland's rule.
    fn run(&mut self, cost: &[BigInt], allowed: usize) -> Step {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced = self
                    .basis
                    .iter()
                    .zip(&self.rows)
                    .fold(&cost[j] * &self.denom, |acc, (&b, row)| acc - &cost[b] * &row[j]);
                reduced.is_positive()
            });
            let Some(col) = entering else {
                return Step::Optimal;
            };
            let mut leaving: Option<usize> = None;
            for r in 0..self.rows.len() {
                if !self.rows[r][col].is_positive() {
                    continue;
                }
                let better = match leaving {
                    None => true,
                    Some(best) => {
                        // rhs[r] / rows[r][col] against rhs[best] / rows[best][col]
                        let lhs = &self.rhs[r] * &self.rows[best][col];
                        let rhs = &self.rhs[best] * &self.rows[r][col];
                        lhs < rhs || (lhs == rhs && self.basis[r] < self.basis[best])
                    }
                };
                if better {
                    leaving = Some(r);
                }
            }
            match leaving {
                Some(row) => self.pivot(row, col),
                None => return Step::Unbounded,
            }
        }
    }

    /// `cost · x` scaled by `denom`.
    fn scaled_value(&self, cost: &[BigInt]) -> BigInt {
        self.basis
            .iter()
            .zip(&self.rhs)
            .fold(BigInt::zero(), |acc, (&b, v)| acc + &cost[b] * v)
    }
}

/// Integer multiples of `values` with the same ratios, and the positive factor used.
fn clear_denominators(values: &[Scalar]) -> (Vec<BigInt>, BigInt) {
    let lcm = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints = values.iter().map(|v| (v * Scalar::from_integer(lcm.clone())).to_integer()).collect();
    (ints, lcm)
}

/// Maximizes `objective · x` subject to `a x = b`, `x ≥ 0`, in exact
/// arithmetic with a two-phase simplex method.
pub fn maximize(objective: &[Scalar], a: &[Vec<Scalar>], b: &[Scalar]) -> LpOutcome {
    let n = objective.len();
    let m = a.len();
    assert!(a.iter().all(|row| row.len() == n) && b.len() == m);

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (k, (row, value)) in a.iter().zip(b).enumerate() {
        let mut line = row.clone();
        line.push(value.clone());
        let (mut ints, _) = clear_denominators(&line);
        let mut value = ints.pop().expect("rhs entry");
        if value.is_negative() {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
            value = -value;
        }
        ints.extend((0..m).map(|j| if j == k { BigInt::one() } else { BigInt::zero() }));
        rows.push(ints);
        rhs.push(value);
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n..n + m).collect(),
        denom: BigInt::one(),
    };

    let mut phase1 = vec![BigInt::zero(); n + m];
    for c in &mut phase1[n..] {
        *c = -BigInt::one();
    }
    t.run(&phase1, n + m);
    if t.scaled_value(&phase1).is_negative() {
        return LpOutcome::Infeasible;
    }

    // drive zero-valued artificials out of the basis, dropping redundant rows
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n {
            match (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                Some(col) => t.pivot(r, col),
                None => {
                    t.rows.remove(r);
                    t.rhs.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    let (mut phase2, scale) = clear_denominators(objective);
    phase2.resize(n + m, BigInt::zero());
    match t.run(&phase2, n) {
        Step::Unbounded => LpOutcome::Unbounded,
        Step::Optimal => LpOutcome::Optimal(Scalar::new(t.scaled_value(&phase2), &t.denom * scale)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, ratio};

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn simple_bounded_problem() {
        // max x + y with x + y + s = 4, x + 3y + t = 6
        let out = maximize(&ints(&[1, 2, 0, 0]), &[ints(&[1, 1, 1, 0]), ints(&[1, 3, 0, 1])], &ints(&[4, 6]));
        assert_eq!(out, LpOutcome::Optimal(int(5)));
    }

    #[test]
    fn fractional_optimum() {
        // max y with 3x - 2y = 0 and x + y + s = 1 → x = 2/5, y = 3/5
        let out = maximize(&ints(&[0, 1, 0]), &[ints(&[3, -2, 0]), ints(&[1, 1, 1])], &ints(&[0, 1]));
        assert_eq!(out, LpOutcome::Optimal(ratio(3, 5)));
    }

    #[test]
    fn infeasible_and_unbounded() {
        assert_eq!(maximize(&ints(&[1]), &[ints(&[1])], &ints(&[-1])), LpOutcome::Infeasible);
        assert_eq!(maximize(&ints(&[1, 0]), &[ints(&[1, -1])], &ints(&[0])), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let out = maximize(&ints(&[1, 1]), &[ints(&[1, 1]), ints(&[2, 2])], &ints(&[1, 2]));
        assert_eq!(out, LpOutcome::Optimal(int(1)));
    }
}
