//! Exact two-phase simplex over rationals for systems `A x = b, x >= 0`.
//!
//! Revised simplex on a fraction-free basis inverse, Dantzig pricing with a
//! Bland fallback on degenerate stalls, so every solve terminates. An
//! infeasible system yields a Farkas vector `y` with `yᵀA <= 0` columnwise
//! and `yᵀb > 0`, read off the phase-one duals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// `rows · x = rhs`, `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub rows: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub n_vars: usize,
}

impl LinearSystem {
    pub fn new(rows: Vec<Vec<Rational>>, rhs: Vec<Rational>, n_vars: usize) -> Self {
        assert_eq!(rows.len(), rhs.len());
        assert!(rows.iter().all(|r| r.len() == n_vars));
        LinearSystem { rows, rhs, n_vars }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// `A x - b`, row by row.
    pub fn residual(&self, x: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| dot(row, x) - b)
            .collect()
    }

    /// `yᵀA`, column by column.
    pub fn combine_rows(&self, y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n_vars];
        for (row, yi) in self.rows.iter().zip(y) {
            if yi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                if !a.is_zero() {
                    *o += yi * a;
                }
            }
        }
        out
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible(Vec<Rational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Optimum {
    Optimal { x: Vec<Rational>, value: Rational },
    Unbounded,
}

/// A feasible basis of a system, reusable across objectives.
///
/// Only the basis inverse is kept, in fraction-free form: `binv = D B^{-1}`
/// and `xb = D B^{-1} b` are integer with `D = |det B| > 0`. A pivot updates
/// them by exact integer division (Bareiss), so no gcd is ever taken and
/// entries stay bounded by minors of the scaled constraint matrix. They
/// live in `i128` while they fit and move to `BigInt` on the first
/// overflow.
#[derive(Debug, Clone)]
pub struct Simplex {
    n_vars: usize,
    store: Store,
    // the stored right-hand side is the original one times this factor
    rhs_scale: Rational,
    pivots: usize,
}

/// Consecutive degenerate pivots tolerated under Dantzig pricing before
/// switching to Bland's rule.
const DEGENERATE_STREAK: usize = 50;

#[derive(Debug, Clone, Copy)]
struct Overflow;

trait Entry: Clone + Ord + std::fmt::Debug {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn is_pos(&self) -> bool;
    fn mul(&self, other: &Self) -> Result<Self, Overflow>;
    fn add(&self, other: &Self) -> Result<Self, Overflow>;
    fn sub(&self, other: &Self) -> Result<Self, Overflow>;
    fn neg(&self) -> Result<Self, Overflow>;
    /// Division known to be exact.
    fn div_exact(&self, other: &Self) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Entry for i128 {
    fn nil() -> Self {
        0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn is_pos(&self) -> bool {
        *self > 0
    }
    fn mul(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_mul(*other).ok_or(Overflow)
    }
    fn add(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_add(*other).ok_or(Overflow)
    }
    fn sub(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_sub(*other).ok_or(Overflow)
    }
    fn neg(&self) -> Result<Self, Overflow> {
        self.checked_neg().ok_or(Overflow)
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert_eq!(self % other, 0);
        self / other
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn nil() -> Self {
        BigInt::from(0)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn mul(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self * other)
    }
    fn add(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self + other)
    }
    fn sub(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self - other)
    }
    fn neg(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Revised-simplex state over entries `N`. Columns `n..n + m` are the
/// phase-one artificials (identity columns).
#[derive(Debug, Clone)]
struct State<N> {
    // sparse structural columns: (row, value)
    cols: Vec<Vec<(usize, N)>>,
    binv: Vec<Vec<N>>,
    xb: Vec<N>,
    denom: N,
    basis: Vec<usize>,
    // integer objective over structural columns, then artificials
    cost: Vec<N>,
}

#[derive(Debug, Clone)]
enum Store {
    Small(State<i128>),
    Big(State<BigInt>),
}

fn narrow(v: &BigInt) -> Option<i128> {
    i128::try_from(v).ok()
}

fn narrow_all(v: &[BigInt]) -> Option<Vec<i128>> {
    v.iter().map(narrow).collect()
}

fn widen(st: &State<i128>) -> State<BigInt> {
    let big = |v: &[i128]| v.iter().map(Entry::to_big).collect::<Vec<_>>();
    State {
        cols: st
            .cols
            .iter()
            .map(|c| c.iter().map(|(r, v)| (*r, v.to_big())).collect())
            .collect(),
        binv: st.binv.iter().map(|r| big(r)).collect(),
        xb: big(&st.xb),
        denom: st.denom.to_big(),
        basis: st.basis.clone(),
        cost: big(&st.cost),
    }
}

fn try_narrow(st: &State<BigInt>) -> Option<State<i128>> {
    Some(State {
        cols: st
            .cols
            .iter()
            .map(|c| c.iter().map(|(r, v)| narrow(v).map(|v| (*r, v))).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?,
        binv: st.binv.iter().map(|r| narrow_all(r)).collect::<Option<Vec<_>>>()?,
        xb: narrow_all(&st.xb)?,
        denom: narrow(&st.denom)?,
        basis: st.basis.clone(),
        cost: narrow_all(&st.cost)?,
    })
}

impl Store {
    fn from_big(st: State<BigInt>) -> Store {
        match try_narrow(&st) {
            Some(s) => Store::Small(s),
            None => Store::Big(st),
        }
    }

    /// Runs `op` on whichever representation is live, widening and
    /// retrying if the `i128` attempt overflows. `op` must be restartable
    /// from any state it leaves behind; pivots commit atomically.
    fn with<T>(&mut self, mut op: impl FnMut(&mut dyn Ops) -> Result<T, Overflow>) -> T {
        if let Store::Small(st) = self {
            match op(st) {
                Ok(v) => return v,
                Err(Overflow) => *self = Store::Big(widen(st)),
            }
        }
        match self {
            Store::Big(st) => op(st).expect("BigInt arithmetic does not overflow"),
            Store::Small(_) => unreachable!("widened above"),
        }
    }

    fn basis(&self) -> &[usize] {
        match self {
            Store::Small(s) => &s.basis,
            Store::Big(s) => &s.basis,
        }
    }

    fn xb(&self, r: usize) -> BigInt {
        match self {
            Store::Small(s) => s.xb[r].to_big(),
            Store::Big(s) => s.xb[r].clone(),
        }
    }

    fn denom(&self) -> BigInt {
        match self {
            Store::Small(s) => s.denom.to_big(),
            Store::Big(s) => s.denom.clone(),
        }
    }

    /// Installs an integer objective, widening if it does not fit.
    fn set_cost(&mut self, cost: Vec<BigInt>) {
        if let Store::Small(st) = self {
            match narrow_all(&cost) {
                Some(c) => {
                    st.cost = c;
                    return;
                }
                None => *self = Store::Big(widen(st)),
            }
        }
        if let Store::Big(st) = self {
            st.cost = cost;
        }
    }
}

/// Representation-independent simplex operations.
trait Ops {
    /// Primal simplex over the columns `..allowed`; false if unbounded.
    fn run(&mut self, allowed: usize, pivots: &mut usize) -> Result<bool, Overflow>;
    /// Pivots zero-level artificial basics out over structural columns
    /// where possible. Any that remain mark redundant rows; they stay basic
    /// at zero and can never leave, since their rows vanish on every
    /// structural column.
    fn drive_out(&mut self, pivots: &mut usize) -> Result<(), Overflow>;
    /// `D` times the duals `c_B B^{-1}`.
    fn duals(&self) -> Result<Vec<BigInt>, Overflow>;
}

impl<N: Entry> State<N> {
    fn n(&self) -> usize {
        self.cols.len()
    }

    fn m(&self) -> usize {
        self.xb.len()
    }

    /// `D B^{-1} a_j`.
    fn column(&self, j: usize) -> Result<Vec<N>, Overflow> {
        let n = self.n();
        if j >= n {
            return Ok(self.binv.iter().map(|row| row[j - n].clone()).collect());
        }
        self.binv
            .iter()
            .map(|row| {
                self.cols[j]
                    .iter()
                    .try_fold(N::nil(), |acc, (i, a)| acc.add(&row[*i].mul(a)?))
            })
            .collect()
    }

    /// `pi = c_B^T binv`, i.e. `D` times the duals.
    fn pi(&self) -> Result<Vec<N>, Overflow> {
        let mut pi = vec![N::nil(); self.m()];
        for (r, &bv) in self.basis.iter().enumerate() {
            let cb = &self.cost[bv];
            if cb.is_nil() {
                continue;
            }
            for (p, b) in pi.iter_mut().zip(&self.binv[r]) {
                if !b.is_nil() {
                    *p = p.add(&cb.mul(b)?)?;
                }
            }
        }
        Ok(pi)
    }

    /// `D` times the reduced cost of column `j`.
    fn reduced(&self, j: usize, pi: &[N]) -> Result<N, Overflow> {
        let n = self.n();
        let dc = self.denom.mul(&self.cost[j])?;
        if j >= n {
            return dc.sub(&pi[j - n]);
        }
        let dot = self.cols[j]
            .iter()
            .try_fold(N::nil(), |acc, (i, a)| acc.add(&pi[*i].mul(a)?))?;
        dc.sub(&dot)
    }

    /// Row minimizing `xb / alpha` over positive `alpha`; ties go to the
    /// smallest basic index.
    fn ratio_test(&self, alpha: &[N]) -> Result<Option<usize>, Overflow> {
        let mut best: Option<usize> = None;
        for (r, a) in alpha.iter().enumerate() {
            if !a.is_pos() {
                continue;
            }
            best = Some(match best {
                None => r,
                Some(br) => {
                    let lhs = self.xb[r].mul(&alpha[br])?;
                    let rhs = self.xb[br].mul(a)?;
                    if lhs < rhs || (lhs == rhs && self.basis[r] < self.basis[br]) {
                        r
                    } else {
                        br
                    }
                }
            });
        }
        Ok(best)
    }

    fn pivot(&mut self, row: usize, col: usize, alpha: &[N]) -> Result<(), Overflow> {
        let pe = alpha[row].clone();
        debug_assert!(!pe.is_nil());
        let d = &self.denom;
        let bareiss = |v: &N, vp: &N, ar: &N| -> Result<N, Overflow> {
            let mut x = if v.is_nil() { N::nil() } else { v.mul(&pe)? };
            if !ar.is_nil() && !vp.is_nil() {
                x = x.sub(&ar.mul(vp)?)?;
            }
            Ok(if x.is_nil() { x } else { x.div_exact(d) })
        };
        let mut binv = Vec::with_capacity(self.m());
        let mut xb = Vec::with_capacity(self.m());
        for r in 0..self.m() {
            if r == row {
                binv.push(self.binv[row].clone());
                xb.push(self.xb[row].clone());
                continue;
            }
            let ar = &alpha[r];
            if ar.is_nil() && pe == *d {
                binv.push(self.binv[r].clone());
                xb.push(self.xb[r].clone());
                continue;
            }
            binv.push(
                self.binv[r]
                    .iter()
                    .zip(&self.binv[row])
                    .map(|(v, vp)| bareiss(v, vp, ar))
                    .collect::<Result<Vec<_>, _>>()?,
            );
            xb.push(bareiss(&self.xb[r], &self.xb[row], ar)?);
        }
        let mut denom = pe;
        if denom.is_neg() {
            // keep D > 0 so signs of stored entries are signs of the values
            for v in binv.iter_mut().flatten().chain(xb.iter_mut()) {
                *v = v.neg()?;
            }
            denom = denom.neg()?;
        }
        self.binv = binv;
        self.xb = xb;
        self.denom = denom;
        self.basis[row] = col;
        Ok(())
    }
}

impl<N: Entry> Ops for State<N> {
    fn run(&mut self, allowed: usize, pivots: &mut usize) -> Result<bool, Overflow> {
        let mut streak = 0;
        loop {
            let pi = self.pi()?;
            let mut entering: Option<(usize, N)> = None;
            for j in 0..allowed {
                let r = self.reduced(j, &pi)?;
                if !r.is_neg() {
                    continue;
                }
                if streak >= DEGENERATE_STREAK {
                    entering = Some((j, r));
                    break;
                }
                if entering.as_ref().is_none_or(|(_, best)| r < *best) {
                    entering = Some((j, r));
                }
            }
            let Some((col, _)) = entering else {
                return Ok(true);
            };
            let alpha = self.column(col)?;
            let Some(row) = self.ratio_test(&alpha)? else {
                return Ok(false);
            };
            let degenerate = self.xb[row].is_nil();
            self.pivot(row, col, &alpha)?;
            *pivots += 1;
            streak = if degenerate { streak + 1 } else { 0 };
        }
    }

    fn drive_out(&mut self, pivots: &mut usize) -> Result<(), Overflow> {
        let n = self.n();
        for r in 0..self.m() {
            if self.basis[r] < n {
                continue;
            }
            let row = &self.binv[r];
            let found = (0..n).find(|&j| {
                let v = self.cols[j]
                    .iter()
                    .try_fold(N::nil(), |acc, (i, a)| acc.add(&row[*i].mul(a)?));
                !matches!(v, Ok(ref v) if v.is_nil())
            });
            if let Some(j) = found {
                let alpha = self.column(j)?;
                self.pivot(r, j, &alpha)?;
                *pivots += 1;
            }
        }
        Ok(())
    }

    fn duals(&self) -> Result<Vec<BigInt>, Overflow> {
        Ok(self.pi()?.iter().map(Entry::to_big).collect())
    }
}

/// Integer form of the system: row `i` multiplied by the positive factor
/// `f_i` clearing its coefficient denominators, and the right-hand side by
/// one global positive factor `s`. Solutions scale by `s`; a Farkas vector
/// maps back by the row factors.
struct IntegerSystem {
    rows: Vec<Vec<BigInt>>,
    rhs: Vec<BigInt>,
    factors: Vec<Rational>,
    rhs_scale: Rational,
}

fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| if v.denom().is_one() { acc } else { acc.lcm(v.denom()) })
}

fn integer_system(sys: &LinearSystem) -> IntegerSystem {
    let mut rows = Vec::with_capacity(sys.n_rows());
    let mut factors = Vec::with_capacity(sys.n_rows());
    let mut scaled_rhs = Vec::with_capacity(sys.n_rows());
    for (row, b) in sys.rows.iter().zip(&sys.rhs) {
        let l = lcm_of_denominators(row);
        rows.push(row.iter().map(|v| v.numer() * (&l / v.denom())).collect());
        let f = Rational::from_integer(l);
        scaled_rhs.push(b * &f);
        factors.push(f);
    }
    let s = lcm_of_denominators(&scaled_rhs);
    let rhs = scaled_rhs.iter().map(|v| v.numer() * (&s / v.denom())).collect();
    IntegerSystem {
        rows,
        rhs,
        factors,
        rhs_scale: Rational::from_integer(s),
    }
}

fn integer_costs(cost: &[Rational]) -> Vec<BigInt> {
    let l = lcm_of_denominators(cost);
    cost.iter().map(|v| v.numer() * (&l / v.denom())).collect()
}

impl Simplex {
    /// Phase one. Returns a feasible basis, or a Farkas vector for the
    /// original rows on infeasibility.
    pub fn feasible_basis(sys: &LinearSystem) -> Result<Simplex, Vec<Rational>> {
        let m = sys.n_rows();
        let n = sys.n_vars;
        let IntegerSystem {
            rows,
            rhs,
            factors,
            rhs_scale,
        } = integer_system(sys);
        // flip rows so that b >= 0
        let signs: Vec<bool> = rhs.iter().map(Signed::is_negative).collect();
        let mut cols: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); n];
        for (i, row) in rows.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if !Zero::is_zero(a) {
                    cols[j].push((i, if signs[i] { -a } else { a.clone() }));
                }
            }
        }
        let xb = rhs.iter().map(Signed::abs).collect();
        let binv = (0..m)
            .map(|r| (0..m).map(|c| BigInt::from((r == c) as i32)).collect())
            .collect();
        let mut cost = vec![BigInt::from(0); n];
        cost.extend((0..m).map(|_| BigInt::one()));
        let mut store = Store::from_big(State {
            cols,
            binv,
            xb,
            denom: BigInt::one(),
            basis: (n..n + m).collect(),
            cost,
        });
        let mut pivots = 0;
        let bounded = store.with(|t| t.run(n + m, &mut pivots));
        debug_assert!(bounded, "phase one is bounded below by zero");
        let infeasible = store.basis().iter().enumerate().any(|(r, &bv)| bv >= n && Signed::is_positive(&store.xb(r)));
        if infeasible {
            // phase-one duals: yᵀA <= 0 on structural columns, yᵀb = optimum > 0
            let pi = store.with(|t| t.duals());
            let y: Vec<Rational> = pi
                .into_iter()
                .zip(&signs)
                .zip(&factors)
                .map(|((v, &flip), f)| Rational::from_integer(if flip { -v } else { v }) * f)
                .collect();
            // normalize for readability; any positive multiple is a certificate
            let g = y
                .iter()
                .filter(|v| !Zero::is_zero(*v))
                .fold(BigInt::from(0), |acc, v| acc.gcd(v.numer()));
            if Zero::is_zero(&g) {
                return Err(y);
            }
            let g = Rational::from_integer(g);
            return Err(y.into_iter().map(|v| v / &g).collect());
        }
        store.with(|t| t.drive_out(&mut pivots));
        Ok(Simplex {
            n_vars: n,
            store,
            rhs_scale,
            pivots,
        })
    }

    /// Basic solution of the current basis.
    pub fn solution(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.n_vars];
        let denom = self.store.denom();
        for (r, &bv) in self.store.basis().iter().enumerate() {
            if bv < self.n_vars {
                x[bv] = Rational::new(self.store.xb(r), denom.clone()) / &self.rhs_scale;
            }
        }
        x
    }

    /// Total pivots performed so far.
    pub fn pivots(&self) -> usize {
        self.pivots
    }

    /// Minimizes `costᵀx` from the current basis, leaving the optimal basis
    /// in place for the next objective.
    pub fn minimize(&mut self, cost: &[Rational]) -> Optimum {
        assert_eq!(cost.len(), self.n_vars);
        let n = self.n_vars;
        let m = self.store.basis().len();
        let mut c = integer_costs(cost);
        c.extend((0..m).map(|_| BigInt::from(0)));
        self.store.set_cost(c);
        let pivots = &mut self.pivots;
        if !self.store.with(|t| t.run(n, pivots)) {
            return Optimum::Unbounded;
        }
        let x = self.solution();
        let value = dot(cost, &x);
        Optimum::Optimal { x, value }
    }
}

/// Decides `A x = b, x >= 0`.
pub fn solve_feasibility(sys: &LinearSystem) -> Feasibility {
    match Simplex::feasible_basis(sys) {
        Ok(s) => Feasibility::Feasible(s.solution()),
        Err(y) => Feasibility::Infeasible(y),
    }
}

/// Checks a Farkas vector: `yᵀA <= 0` for every column and `yᵀb > 0`.
pub fn is_farkas_certificate(sys: &LinearSystem, y: &[Rational]) -> bool {
    y.len() == sys.n_rows()
        && sys.combine_rows(y).iter().all(|v| !v.is_positive())
        && dot(y, &sys.rhs).is_positive()
}

/// Checks `x >= 0` and `A x = b` exactly.
pub fn is_solution(sys: &LinearSystem, x: &[Rational]) -> bool {
    x.len() == sys.n_vars
        && x.iter().all(|v| !v.is_negative())
        && sys.residual(x).iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn sys(rows: &[&[i64]], rhs: &[i64]) -> LinearSystem {
        let n = rows[0].len();
        LinearSystem::new(
            rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect(),
            rhs.iter().map(|&v| int(v)).collect(),
            n,
        )
    }

    #[test]
    fn feasible_system_yields_exact_solution() {
        let s = sys(&[&[1, 1, 0], &[0, 1, 1]], &[3, 5]);
        match solve_feasibility(&s) {
            Feasibility::Feasible(x) => assert!(is_solution(&s, &x)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_system_yields_farkas_vector() {
        // x1 + x2 = 1, x1 + x2 = 2
        let s = sys(&[&[1, 1], &[1, 1]], &[1, 2]);
        match solve_feasibility(&s) {
            Feasibility::Infeasible(y) => assert!(is_farkas_certificate(&s, &y)),
            other => panic!("{other:?}"),
        }
        // x >= 0 with x1 = -1
        let s = sys(&[&[1, 0]], &[-1]);
        match solve_feasibility(&s) {
            Feasibility::Infeasible(y) => assert!(is_farkas_certificate(&s, &y)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let s = sys(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]], &[2, 2, 0]);
        let mut simplex = Simplex::feasible_basis(&s).unwrap();
        assert!(is_solution(&s, &simplex.solution()));
        match simplex.minimize(&[int(1), int(3), int(0)]) {
            Optimum::Optimal { x, value } => {
                assert_eq!(value, int(2));
                assert_eq!(x, vec![int(2), int(0), int(0)]);
            }
            Optimum::Unbounded => panic!(),
        }
        match simplex.minimize(&[int(1), int(-1), int(0)]) {
            Optimum::Optimal { value, .. } => assert_eq!(value, int(-2)),
            Optimum::Unbounded => panic!(),
        }
    }

    #[test]
    fn detects_unbounded_objective() {
        let s = sys(&[&[1, -1]], &[1]);
        let mut simplex = Simplex::feasible_basis(&s).unwrap();
        assert_eq!(simplex.minimize(&[int(0), int(-1)]), Optimum::Unbounded);
    }

    #[test]
    fn rational_data() {
        let s = LinearSystem::new(
            vec![vec![ratio(1, 2), ratio(1, 3)], vec![int(1), int(0)]],
            vec![ratio(1, 2), ratio(1, 3)],
            2,
        );
        match solve_feasibility(&s) {
            Feasibility::Feasible(x) => {
                assert_eq!(x, vec![ratio(1, 3), ratio(1, 1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wide_entries_fall_back_to_bigint() {
        // entries fit i128 but their products do not
        let a = Rational::from_integer(BigInt::one() << 100usize);
        let one = int(1);
        let s = LinearSystem::new(
            vec![
                vec![a.clone(), one.clone(), int(0)],
                vec![int(0), one.clone(), a.clone()],
                vec![one.clone(), one.clone(), one.clone()],
            ],
            vec![&a + &one, &a + &one, int(3)],
            3,
        );
        let mut simplex = Simplex::feasible_basis(&s).unwrap();
        assert!(is_solution(&s, &simplex.solution()));
        match simplex.minimize(&[a.clone(), int(-1), ratio(1, 3)]) {
            Optimum::Optimal { x, .. } => assert!(is_solution(&s, &x)),
            Optimum::Unbounded => panic!(),
        }
        let bad = LinearSystem::new(
            vec![vec![a.clone(), a.clone()], vec![one.clone(), one.clone()]],
            vec![a.clone(), int(2)],
            2,
        );
        match solve_feasibility(&bad) {
            Feasibility::Infeasible(y) => assert!(is_farkas_certificate(&bad, &y)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_cut_cone_vertex_is_optimal_for_every_objective() {
        // x1 + x2 = 1, x2 + x3 = 1, x1 + x3 = 2 has the single point (1, 0, 1)
        let s = sys(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]], &[1, 1, 2]);
        let mut simplex = Simplex::feasible_basis(&s).unwrap();
        for cost in [[1, 0, 0], [-1, 0, 0], [0, -1, 0], [3, -7, 2]] {
            let cost: Vec<Rational> = cost.iter().map(|&v| int(v)).collect();
            match simplex.minimize(&cost) {
                Optimum::Optimal { x, .. } => assert_eq!(x, vec![int(1), int(0), int(1)]),
                Optimum::Unbounded => panic!(),
            }
        }
    }
}
