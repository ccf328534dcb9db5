//! Exact linear programming: revised two-phase simplex with Bland's rule.
//!
//! Problems are in standard form `min c·x` subject to `A x = b`, `x >= 0`.
//! The solver is generic over a checked scalar so it can run first on
//! `Ratio<i128>` and redo the work with arbitrary precision only when an
//! intermediate value overflows.
//!
//! [`solve`] first runs a floating-point simplex to guess an optimal basis and
//! starts the exact phase two from it. The guess only affects speed: the exact
//! run certifies or improves it, and a singular or infeasible guess falls back
//! to the cold two-phase method.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, ToPrimitive, Zero};

use crate::rational::Rational;

pub trait LpScalar:
    Clone + Ord + Zero + One + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv
{
}

impl<T> LpScalar for T where
    T: Clone + Ord + Zero + One + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv
{
}

/// `min cost·x` s.t. `Σ_j x_j columns[j] = rhs`, `x >= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    pub columns: Vec<Vec<T>>,
    pub rhs: Vec<T>,
    pub cost: Vec<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome<T> {
    Infeasible,
    Unbounded,
    Optimal { value: T, x: Vec<T> },
}

impl<T> LpOutcome<T> {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

/// An intermediate value left the range of the scalar type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overflow;

type Checked<T> = Result<T, Overflow>;

fn add<T: LpScalar>(a: &T, b: &T) -> Checked<T> {
    a.checked_add(b).ok_or(Overflow)
}
fn sub<T: LpScalar>(a: &T, b: &T) -> Checked<T> {
    a.checked_sub(b).ok_or(Overflow)
}
fn mul<T: LpScalar>(a: &T, b: &T) -> Checked<T> {
    if a.is_zero() || b.is_zero() {
        return Ok(T::zero());
    }
    a.checked_mul(b).ok_or(Overflow)
}
fn div<T: LpScalar>(a: &T, b: &T) -> Checked<T> {
    a.checked_div(b).ok_or(Overflow)
}
fn neg<T: LpScalar>(a: &T) -> Checked<T> {
    sub(&T::zero(), a)
}

struct Simplex<'a, T> {
    lp: &'a LinearProgram<T>,
    rows: usize,
    real: usize,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    binv: Vec<Vec<T>>,
    xb: Vec<T>,
    /// Row sign flips applied so that the right-hand side is non-negative.
    flip: Vec<bool>,
}

enum Phase {
    One,
    Two,
}

enum Step {
    Optimal,
    Unbounded,
}

impl<'a, T: LpScalar> Simplex<'a, T> {
    fn new(lp: &'a LinearProgram<T>) -> Checked<Self> {
        let rows = lp.rhs.len();
        let real = lp.columns.len();
        let mut flip = vec![false; rows];
        let mut xb = Vec::with_capacity(rows);
        for (i, b) in lp.rhs.iter().enumerate() {
            if *b < T::zero() {
                flip[i] = true;
                xb.push(neg(b)?);
            } else {
                xb.push(b.clone());
            }
        }
        let mut binv = vec![vec![T::zero(); rows]; rows];
        for (i, row) in binv.iter_mut().enumerate() {
            row[i] = T::one();
        }
        let mut is_basic = vec![false; real + rows];
        for flag in is_basic.iter_mut().skip(real) {
            *flag = true;
        }
        Ok(Simplex {
            lp,
            rows,
            real,
            basis: (real..real + rows).collect(),
            is_basic,
            binv,
            xb,
            flip,
        })
    }

    /// Starts from the given real basis, or `None` if it is singular or
    /// primal infeasible.
    fn with_basis(lp: &'a LinearProgram<T>, basis: &[usize]) -> Checked<Option<Self>> {
        let mut s = Self::new(lp)?;
        let m = s.rows;
        if basis.len() != m || basis.iter().any(|&j| j >= s.real) {
            return Ok(None);
        }
        let mut a: Vec<Vec<T>> = Vec::with_capacity(m);
        for r in 0..m {
            let mut row = Vec::with_capacity(2 * m);
            for &j in basis {
                row.push(s.entry(j, r)?);
            }
            row.extend((0..m).map(|k| if k == r { T::one() } else { T::zero() }));
            a.push(row);
        }
        for c in 0..m {
            let Some(p) = (c..m).find(|&r| !a[r][c].is_zero()) else {
                return Ok(None);
            };
            a.swap(c, p);
            let pv = a[c][c].clone();
            for v in a[c].iter_mut() {
                *v = div(v, &pv)?;
            }
            let pivot_row = a[c].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == c || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v = sub(v, &mul(&f, pv)?)?;
                    }
                }
            }
        }
        let binv: Vec<Vec<T>> = a.into_iter().map(|row| row[m..].to_vec()).collect();
        let mut xb = Vec::with_capacity(m);
        for row in &binv {
            let mut acc = T::zero();
            for (v, b) in row.iter().zip(&s.xb) {
                acc = add(&acc, &mul(v, b)?)?;
            }
            if acc < T::zero() {
                return Ok(None);
            }
            xb.push(acc);
        }
        s.binv = binv;
        s.xb = xb;
        s.is_basic.iter_mut().for_each(|f| *f = false);
        for &j in basis {
            s.is_basic[j] = true;
        }
        s.basis = basis.to_vec();
        Ok(Some(s))
    }

    /// Entry `k` of column `j` after the row flips.
    fn entry(&self, j: usize, k: usize) -> Checked<T> {
        if j < self.real {
            let v = &self.lp.columns[j][k];
            if self.flip[k] {
                neg(v)
            } else {
                Ok(v.clone())
            }
        } else if j - self.real == k {
            Ok(T::one())
        } else {
            Ok(T::zero())
        }
    }

    fn cost(&self, phase: &Phase, j: usize) -> T {
        match phase {
            Phase::One => {
                if j < self.real {
                    T::zero()
                } else {
                    T::one()
                }
            }
            Phase::Two => {
                if j < self.real {
                    self.lp.cost[j].clone()
                } else {
                    T::zero()
                }
            }
        }
    }

    fn column_dot(&self, j: usize, y: &[T]) -> Checked<T> {
        if j >= self.real {
            return Ok(y[j - self.real].clone());
        }
        let mut acc = T::zero();
        for (k, yk) in y.iter().enumerate() {
            let a = self.entry(j, k)?;
            acc = add(&acc, &mul(yk, &a)?)?;
        }
        Ok(acc)
    }

    fn binv_column(&self, j: usize) -> Checked<Vec<T>> {
        let mut u = vec![T::zero(); self.rows];
        for k in 0..self.rows {
            let a = self.entry(j, k)?;
            if a.is_zero() {
                continue;
            }
            for (i, ui) in u.iter_mut().enumerate() {
                *ui = add(ui, &mul(&self.binv[i][k], &a)?)?;
            }
        }
        Ok(u)
    }

    fn pivot(&mut self, r: usize, j: usize, u: &[T]) -> Checked<()> {
        let theta = div(&self.xb[r], &u[r])?;
        for i in 0..self.rows {
            if i != r && !u[i].is_zero() {
                self.xb[i] = sub(&self.xb[i], &mul(&u[i], &theta)?)?;
            }
        }
        self.xb[r] = theta;
        let pr = u[r].clone();
        for v in self.binv[r].iter_mut() {
            *v = div(v, &pr)?;
        }
        let pivot_row = self.binv[r].clone();
        for i in 0..self.rows {
            if i == r || u[i].is_zero() {
                continue;
            }
            for (k, pv) in pivot_row.iter().enumerate() {
                if pv.is_zero() {
                    continue;
                }
                self.binv[i][k] = sub(&self.binv[i][k], &mul(&u[i], pv)?)?;
            }
        }
        self.is_basic[self.basis[r]] = false;
        self.is_basic[j] = true;
        self.basis[r] = j;
        Ok(())
    }

    fn run(&mut self, phase: Phase) -> Checked<Step> {
        let allowed = match phase {
            Phase::One => self.real + self.rows,
            Phase::Two => self.real,
        };
        loop {
            let mut y = vec![T::zero(); self.rows];
            for i in 0..self.rows {
                let cb = self.cost(&phase, self.basis[i]);
                if cb.is_zero() {
                    continue;
                }
                for (k, yk) in y.iter_mut().enumerate() {
                    *yk = add(yk, &mul(&cb, &self.binv[i][k])?)?;
                }
            }
            // Bland: lowest-index improving column.
            let mut entering = None;
            for j in 0..allowed {
                if self.is_basic[j] {
                    continue;
                }
                let reduced = sub(&self.cost(&phase, j), &self.column_dot(j, &y)?)?;
                if reduced < T::zero() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else {
                return Ok(Step::Optimal);
            };
            let u = self.binv_column(j)?;
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.rows {
                if u[i] <= T::zero() {
                    continue;
                }
                let ratio = div(&self.xb[i], &u[i])?;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Ok(Step::Unbounded);
            };
            self.pivot(r, j, &u)?;
        }
    }

    fn phase_one(&mut self) -> Checked<bool> {
        self.run(Phase::One)?;
        let mut infeas = T::zero();
        for i in 0..self.rows {
            if self.basis[i] >= self.real {
                infeas = add(&infeas, &self.xb[i])?;
            }
        }
        if !infeas.is_zero() {
            return Ok(false);
        }
        // Drive zero-level artificials out of the basis where possible.
        for r in 0..self.rows {
            if self.basis[r] < self.real {
                continue;
            }
            for j in 0..self.real {
                if self.is_basic[j] {
                    continue;
                }
                let u = self.binv_column(j)?;
                if !u[r].is_zero() {
                    self.pivot(r, j, &u)?;
                    break;
                }
            }
        }
        Ok(true)
    }

    fn primal(&self) -> Vec<T> {
        let mut x = vec![T::zero(); self.real];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.real {
                x[b] = self.xb[i].clone();
            }
        }
        x
    }
}

fn objective<T: LpScalar>(cost: &[T], x: &[T]) -> Checked<T> {
    let mut acc = T::zero();
    for (c, v) in cost.iter().zip(x) {
        acc = add(&acc, &mul(c, v)?)?;
    }
    Ok(acc)
}

/// Solves the program over the scalar type `T`.
pub fn solve_generic<T: LpScalar>(lp: &LinearProgram<T>) -> Result<LpOutcome<T>, Overflow> {
    let mut simplex = Simplex::new(lp)?;
    if !simplex.phase_one()? {
        return Ok(LpOutcome::Infeasible);
    }
    match simplex.run(Phase::Two)? {
        Step::Unbounded => Ok(LpOutcome::Unbounded),
        Step::Optimal => {
            let x = simplex.primal();
            let value = objective(&lp.cost, &x)?;
            Ok(LpOutcome::Optimal { value, x })
        }
    }
}

/// Phase two from a real basis; `None` if the basis is unusable.
pub fn solve_from_basis<T: LpScalar>(
    lp: &LinearProgram<T>,
    basis: &[usize],
) -> Result<Option<LpOutcome<T>>, Overflow> {
    let Some(mut simplex) = Simplex::with_basis(lp, basis)? else {
        return Ok(None);
    };
    Ok(Some(match simplex.run(Phase::Two)? {
        Step::Unbounded => LpOutcome::Unbounded,
        Step::Optimal => {
            let x = simplex.primal();
            let value = objective(&lp.cost, &x)?;
            LpOutcome::Optimal { value, x }
        }
    }))
}

const EPS: f64 = 1e-9;

/// Dantzig-rule tableau iterations. `Some(true)` at optimum, `Some(false)`
/// when unbounded, `None` when the iteration cap is hit.
fn float_run(t: &mut [Vec<f64>], basis: &mut [usize], cost: &[f64], allowed: usize) -> Option<bool> {
    let m = t.len();
    let last = t[0].len() - 1;
    for _ in 0..10_000 {
        let mut entering = None;
        let mut best = -EPS;
        for j in 0..allowed {
            if basis.contains(&j) {
                continue;
            }
            let mut d = cost[j];
            for i in 0..m {
                d -= cost[basis[i]] * t[i][j];
            }
            if d < best {
                best = d;
                entering = Some(j);
            }
        }
        let Some(j) = entering else {
            return Some(true);
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            if t[i][j] <= EPS {
                continue;
            }
            let ratio = t[i][last] / t[i][j];
            let better = match leave {
                None => true,
                Some((r, b)) => ratio < b - EPS || (ratio <= b + EPS && basis[i] < basis[r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (r, _) = leave?;
        float_pivot(t, r, j);
        basis[r] = j;
    }
    None
}

fn float_pivot(t: &mut [Vec<f64>], r: usize, j: usize) {
    let pv = t[r][j];
    t[r].iter_mut().for_each(|v| *v /= pv);
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r {
            continue;
        }
        let f = row[j];
        if f != 0.0 {
            row.iter_mut().zip(&pivot_row).for_each(|(v, p)| *v -= f * p);
        }
    }
}

/// Optimal basis of real columns according to floating-point arithmetic.
fn float_basis<T: LpScalar + ToPrimitive>(lp: &LinearProgram<T>) -> Option<Vec<usize>> {
    let m = lp.rhs.len();
    let n = lp.columns.len();
    if m == 0 {
        return None;
    }
    let mut t = vec![vec![0.0f64; n + m + 1]; m];
    for (i, row) in t.iter_mut().enumerate() {
        let sign = if lp.rhs[i] < T::zero() { -1.0 } else { 1.0 };
        for j in 0..n {
            row[j] = sign * lp.columns[j][i].to_f64()?;
        }
        row[n + i] = 1.0;
        row[n + m] = sign * lp.rhs[i].to_f64()?;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let phase_one: Vec<f64> = (0..n + m).map(|j| if j < n { 0.0 } else { 1.0 }).collect();
    float_run(&mut t, &mut basis, &phase_one, n + m)?;
    for r in 0..m {
        if basis[r] < n {
            continue;
        }
        if t[r][n + m] > EPS {
            return None;
        }
        let j = (0..n).find(|&j| !basis.contains(&j) && (t[r][j] > EPS || t[r][j] < -EPS))?;
        float_pivot(&mut t, r, j);
        basis[r] = j;
    }
    let mut phase_two: Vec<f64> = Vec::with_capacity(n + m);
    for c in &lp.cost {
        phase_two.push(c.to_f64()?);
    }
    phase_two.extend(core::iter::repeat(0.0).take(m));
    if float_run(&mut t, &mut basis, &phase_two, n)? {
        Some(basis)
    } else {
        None
    }
}

/// Decides feasibility of `Σ x_j columns[j] = rhs`, `x >= 0`, returning a witness.
pub fn feasible_generic<T: LpScalar>(
    columns: &[Vec<T>],
    rhs: &[T],
) -> Result<Option<Vec<T>>, Overflow> {
    let lp = LinearProgram {
        columns: columns.to_vec(),
        rhs: rhs.to_vec(),
        cost: vec![T::zero(); columns.len()],
    };
    let mut simplex = Simplex::new(&lp)?;
    if simplex.phase_one()? {
        Ok(Some(simplex.primal()))
    } else {
        Ok(None)
    }
}

/// Fixed-width rationals tried before arbitrary precision.
pub type Small = Ratio<i128>;

pub fn to_small(q: &Rational) -> Option<Small> {
    Some(Small::new_raw(q.numer().to_i128()?, q.denom().to_i128()?))
}

fn from_small(q: &Small) -> Rational {
    Rational::new_raw(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

fn small_program(lp: &LinearProgram<Rational>) -> Option<LinearProgram<Small>> {
    let conv = |v: &[Rational]| v.iter().map(to_small).collect::<Option<Vec<_>>>();
    Some(LinearProgram {
        columns: lp
            .columns
            .iter()
            .map(|c| conv(c))
            .collect::<Option<Vec<_>>>()?,
        rhs: conv(&lp.rhs)?,
        cost: conv(&lp.cost)?,
    })
}

fn lift(outcome: LpOutcome<Small>) -> LpOutcome<Rational> {
    match outcome {
        LpOutcome::Infeasible => LpOutcome::Infeasible,
        LpOutcome::Unbounded => LpOutcome::Unbounded,
        LpOutcome::Optimal { value, x } => LpOutcome::Optimal {
            value: from_small(&value),
            x: x.iter().map(from_small).collect(),
        },
    }
}

fn solve_warm<T: LpScalar + ToPrimitive>(lp: &LinearProgram<T>) -> Result<LpOutcome<T>, Overflow> {
    if let Some(basis) = float_basis(lp) {
        if let Some(outcome) = solve_from_basis(lp, &basis)? {
            return Ok(outcome);
        }
    }
    solve_generic(lp)
}

/// Exact solve in fixed width; `None` on overflow.
pub fn solve_small(lp: &LinearProgram<Small>) -> Option<LpOutcome<Small>> {
    solve_warm(lp).ok()
}

/// Exact solve: fixed-width first, arbitrary precision on overflow.
pub fn solve(lp: &LinearProgram<Rational>) -> LpOutcome<Rational> {
    if let Some(outcome) = small_program(lp).and_then(|small| solve_small(&small)) {
        return lift(outcome);
    }
    solve_warm(lp).expect("arbitrary-precision arithmetic cannot overflow")
}

/// Exact feasibility with a non-negative witness.
pub fn feasible(columns: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let conv = |v: &[Rational]| v.iter().map(to_small).collect::<Option<Vec<_>>>();
    let small_cols = columns.iter().map(|c| conv(c)).collect::<Option<Vec<_>>>();
    if let (Some(cols), Some(b)) = (small_cols, conv(rhs)) {
        if let Ok(res) = feasible_generic(&cols, &b) {
            return res.map(|x| x.iter().map(from_small).collect());
        }
    }
    feasible_generic(columns, rhs).expect("arbitrary-precision arithmetic cannot overflow")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn col(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn small_optimum() {
        // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let lp = LinearProgram {
            columns: vec![col(&[1, 3]), col(&[2, 1]), col(&[1, 0]), col(&[0, 1])],
            rhs: col(&[4, 6]),
            cost: col(&[-1, -1, 0, 0]),
        };
        match solve(&lp) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, frac(-14, 5));
                assert_eq!(x[0], frac(8, 5));
                assert_eq!(x[1], frac(6, 5));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        // x - y = -1 and x + y = -1 with x,y >= 0 is infeasible.
        let cols = vec![col(&[1, 1]), col(&[-1, 1])];
        assert!(feasible(&cols, &col(&[-1, -1])).is_none());
        let lp = LinearProgram {
            columns: vec![col(&[1]), col(&[-1])],
            rhs: col(&[0]),
            cost: col(&[-1, 0]),
        };
        assert_eq!(solve(&lp), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let cols = vec![col(&[1, 2]), col(&[1, 2])];
        let w = feasible(&cols, &col(&[3, 6])).expect("feasible");
        assert_eq!(&w[0] + &w[1], int(3));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example; Bland's rule must terminate.
        let cols = vec![
            vec![frac(1, 4), frac(1, 2), int(0)],
            vec![int(-8), int(-12), int(0)],
            vec![int(-1), frac(-1, 2), int(1)],
            vec![int(9), int(3), int(0)],
            col(&[1, 0, 0]),
            col(&[0, 1, 0]),
            col(&[0, 0, 1]),
        ];
        let lp = LinearProgram {
            columns: cols,
            rhs: col(&[0, 0, 1]),
            cost: vec![frac(-3, 4), int(20), frac(-1, 2), int(6), int(0), int(0), int(0)],
        };
        match solve(&lp) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, frac(-5, 4)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn overflow_falls_back_to_big() {
        let huge = Rational::from_integer(BigInt::from(i128::MAX) * BigInt::from(4));
        let cols = vec![vec![huge.clone()], vec![int(1)]];
        let w = feasible(&cols, &[huge.clone() * int(2)]).expect("feasible");
        assert_eq!(&w[0] * &huge + &w[1], huge * int(2));
    }
}
