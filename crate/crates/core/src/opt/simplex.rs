//! Fraction-free tableau simplex behind [`RationalLp::solve`].
//!
//! Each tableau row is kept as a primitive integer vector (its gcd divided
//! out); the basic variable of a row has a positive coefficient, so row
//! scaling never changes signs. The engine first runs on checked `i128` and
//! restarts on `BigInt` if any product overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::lp::{Certificate, LpOutcome, LpStatus, RationalLp, Relation};
use super::lp::Rational;

/// Consecutive degenerate pivots tolerated before switching to Bland's rule.
const DEGENERATE_LIMIT: usize = 50;

trait Int: Clone + Integer + Signed {
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn cmul(&self, o: &Self) -> Option<Self>;
    fn csub(&self, o: &Self) -> Option<Self>;
    fn cneg(&self) -> Option<Self>;
}

impl Int for i128 {
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn cmul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn csub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn cneg(&self) -> Option<Self> {
        self.checked_neg()
    }
}

impl Int for BigInt {
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn cmul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn csub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn cneg(&self) -> Option<Self> {
        Some(-self)
    }
}

/// Standard form `A' z = b', z >= 0`: each free variable is split as
/// `x = z+ - z-`, inequality rows get a slack, and rows without an identity
/// column get an artificial.
struct Setup<'a> {
    lp: &'a RationalLp,
    /// Columns of `z+` and, for free variables, `z-`.
    columns: Vec<(usize, Option<usize>)>,
    width: usize,
    first_artificial: usize,
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Sign applied to each original row to make its right-hand side nonnegative.
    row_sign: Vec<i8>,
    /// Column that started as `e_i` for row `i`.
    unit_col: Vec<usize>,
    costs: [Vec<Rational>; 2],
}

impl<'a> Setup<'a> {
    fn new(lp: &'a RationalLp) -> Self {
        let n = lp.variable_count();
        let cons = lp.constraints();
        let mut row_sign = Vec::with_capacity(cons.len());
        let mut rels = Vec::with_capacity(cons.len());
        for c in cons {
            let flip = c.rhs.is_negative() || (c.rhs.is_zero() && c.relation == Relation::Ge);
            row_sign.push(if flip { -1 } else { 1 });
            rels.push(if flip { c.relation.flipped() } else { c.relation });
        }
        let slack_count = rels.iter().filter(|r| **r != Relation::Eq).count();
        let artificial_count = rels.iter().filter(|r| **r != Relation::Le).count();
        let mut columns = Vec::with_capacity(n);
        let mut structural = 0;
        for j in 0..n {
            if lp.is_nonnegative(j) {
                columns.push((structural, None));
                structural += 1;
            } else {
                columns.push((structural, Some(structural + 1)));
                structural += 2;
            }
        }
        let first_artificial = structural + slack_count;
        let width = first_artificial + artificial_count;
        let mut rows = Vec::with_capacity(cons.len());
        let mut basis = Vec::with_capacity(cons.len());
        let mut unit_col = Vec::with_capacity(cons.len());
        let (mut next_slack, mut next_art) = (structural, first_artificial);
        for (i, c) in cons.iter().enumerate() {
            let negate = row_sign[i] < 0;
            let mut row = vec![Rational::zero(); width + 1];
            for (j, a) in &c.terms {
                let v = if negate { -a } else { a.clone() };
                let (plus, minus) = columns[*j];
                if let Some(m) = minus {
                    row[m] -= &v;
                }
                row[plus] += v;
            }
            row[width] = if negate { -&c.rhs } else { c.rhs.clone() };
            let unit = match rels[i] {
                Relation::Le => {
                    next_slack += 1;
                    next_slack - 1
                }
                Relation::Ge => {
                    row[next_slack] = -Rational::one();
                    next_slack += 1;
                    next_art += 1;
                    next_art - 1
                }
                Relation::Eq => {
                    next_art += 1;
                    next_art - 1
                }
            };
            row[unit] = Rational::one();
            basis.push(unit);
            unit_col.push(unit);
            rows.push(row);
        }
        let mut phase_one = vec![Rational::zero(); width];
        for v in phase_one.iter_mut().skip(first_artificial) {
            *v = -Rational::one();
        }
        let mut phase_two = vec![Rational::zero(); width];
        for (j, v) in lp.objective() {
            let (plus, minus) = columns[*j];
            phase_two[plus] += v;
            if let Some(m) = minus {
                phase_two[m] -= v;
            }
        }
        Self {
            lp,
            columns,
            width,
            first_artificial,
            rows,
            basis,
            row_sign,
            unit_col,
            costs: [phase_one, phase_two],
        }
    }

    /// Reduced costs of the starting basis, whose rows have unit basic entries.
    fn initial_reduced_costs(&self, costs: &[Rational]) -> Vec<Rational> {
        let mut r = costs.to_vec();
        r.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (rj, a) in r.iter_mut().zip(row) {
                if !a.is_zero() {
                    *rj -= cb * a;
                }
            }
        }
        r
    }
}

/// Scales a rational vector to integers; returns the integers and the
/// positive common denominator.
fn to_integers<I: Int>(v: &[Rational]) -> Option<(Vec<I>, I)> {
    let den = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = v
        .iter()
        .map(|x| I::from_big(&(x.numer() * (&den / x.denom()))))
        .collect::<Option<Vec<_>>>()?;
    Some((ints, I::from_big(&den)?))
}

fn normalize<I: Int>(row: &mut [I], den: Option<&mut I>) {
    let mut g = den.as_ref().map_or_else(I::zero, |d| (**d).clone());
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = x.clone() / g.clone();
        }
    }
    if let Some(d) = den {
        *d = d.clone() / g;
    }
}

fn ratio<I: Int>(num: &I, den: &I) -> Rational {
    Rational::new(num.to_big(), den.to_big())
}

struct ObjectiveRow<I> {
    r: Vec<I>,
    den: I,
}

enum PhaseEnd {
    Optimal,
    Unbounded(usize),
}

struct Engine<'s, 'a, I> {
    s: &'s Setup<'a>,
    rows: Vec<Vec<I>>,
    basis: Vec<usize>,
    obj: [ObjectiveRow<I>; 2],
    /// Whether pivots still update the phase-one row.
    track_phase_one: bool,
}

impl<'s, 'a, I: Int> Engine<'s, 'a, I> {
    fn new(s: &'s Setup<'a>) -> Option<Self> {
        let mut rows = Vec::with_capacity(s.rows.len());
        for row in &s.rows {
            let (mut ints, _) = to_integers::<I>(row)?;
            normalize(&mut ints, None);
            rows.push(ints);
        }
        let mut obj = Vec::with_capacity(2);
        for costs in &s.costs {
            let (r, den) = to_integers::<I>(&s.initial_reduced_costs(costs))?;
            obj.push(ObjectiveRow { r, den });
        }
        let [o1, o2]: [ObjectiveRow<I>; 2] = obj.try_into().ok()?;
        Some(Self {
            s,
            rows,
            basis: s.basis.clone(),
            obj: [o1, o2],
            track_phase_one: true,
        })
    }

    fn rhs(&self, i: usize) -> &I {
        &self.rows[i][self.s.width]
    }

    fn pivot(&mut self, pr: usize, col: usize) -> Option<()> {
        if self.rows[pr][col].is_negative() {
            for x in self.rows[pr].iter_mut() {
                *x = x.cneg()?;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[pr]);
        let p = pivot_row[col].clone();
        let eliminate = |row: &mut Vec<I>| -> Option<()> {
            let f = row[col].clone();
            for (x, q) in row.iter_mut().zip(&pivot_row) {
                *x = if q.is_zero() {
                    if x.is_zero() {
                        continue;
                    }
                    x.cmul(&p)?
                } else {
                    x.cmul(&p)?.csub(&f.cmul(q)?)?
                };
            }
            Some(())
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == pr || row[col].is_zero() {
                continue;
            }
            eliminate(row)?;
            normalize(row, None);
        }
        let start = if self.track_phase_one { 0 } else { 1 };
        for o in self.obj[start..].iter_mut() {
            if o.r[col].is_zero() {
                continue;
            }
            eliminate(&mut o.r)?;
            o.den = o.den.cmul(&p)?;
            normalize(&mut o.r, Some(&mut o.den));
        }
        self.rows[pr] = pivot_row;
        self.basis[pr] = col;
        Some(())
    }

    fn optimize(&mut self, k: usize, allowed: usize) -> Option<PhaseEnd> {
        let mut bland = false;
        let mut degenerate = 0;
        loop {
            let r = &self.obj[k].r;
            let enter = if bland {
                (0..allowed).find(|&j| r[j].is_positive())
            } else {
                let mut best: Option<usize> = None;
                for j in 0..allowed {
                    if r[j].is_positive() && best.is_none_or(|b| r[j] > r[b]) {
                        best = Some(j);
                    }
                }
                best
            };
            let Some(e) = enter else {
                return Some(PhaseEnd::Optimal);
            };
            let mut leave: Option<usize> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][e];
                if !a.is_positive() {
                    continue;
                }
                leave = match leave {
                    None => Some(i),
                    Some(b) => {
                        let lhs = self.rhs(i).cmul(&self.rows[b][e])?;
                        let rhs = self.rhs(b).cmul(a)?;
                        if lhs < rhs || (lhs == rhs && self.basis[i] < self.basis[b]) {
                            Some(i)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            let Some(l) = leave else {
                return Some(PhaseEnd::Unbounded(e));
            };
            if self.rhs(l).is_zero() {
                degenerate += 1;
                if degenerate > DEGENERATE_LIMIT {
                    bland = true;
                }
            } else {
                degenerate = 0;
            }
            self.pivot(l, e)?;
        }
    }

    fn z_values(&self) -> Vec<Rational> {
        let mut z = vec![Rational::zero(); self.s.width];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            z[b] = ratio(&row[self.s.width], &row[b]);
        }
        z
    }

    fn to_original(&self, z: &[Rational]) -> Vec<Rational> {
        self.s
            .columns
            .iter()
            .map(|&(plus, minus)| match minus {
                Some(m) => &z[plus] - &z[m],
                None => z[plus].clone(),
            })
            .collect()
    }

    /// Row multipliers in original row orientation, read off the reduced
    /// costs of the identity columns.
    fn duals(&self, k: usize) -> Vec<Rational> {
        let o = &self.obj[k];
        self.s
            .unit_col
            .iter()
            .zip(&self.s.row_sign)
            .map(|(&u, &sign)| {
                let y = &self.s.costs[k][u] - ratio(&o.r[u], &o.den);
                if sign < 0 {
                    -y
                } else {
                    y
                }
            })
            .collect()
    }

    fn run(mut self) -> Option<LpOutcome> {
        let fa = self.s.first_artificial;
        if fa < self.s.width {
            // Phase one is bounded above by 0.
            self.optimize(0, self.s.width)?;
            let infeasible = (0..self.rows.len())
                .any(|i| self.basis[i] >= fa && self.rhs(i).is_positive());
            if infeasible {
                return Some(LpOutcome {
                    status: LpStatus::Infeasible,
                    optimal_value: None,
                    primal: None,
                    certificate: Certificate::Farkas(self.duals(0)),
                });
            }
            self.track_phase_one = false;
            for i in 0..self.rows.len() {
                if self.basis[i] < fa {
                    continue;
                }
                // A row without such a column is redundant; its artificial stays at 0.
                if let Some(j) = (0..fa).find(|&j| !self.rows[i][j].is_zero()) {
                    self.pivot(i, j)?;
                }
            }
        }
        self.track_phase_one = false;
        match self.optimize(1, fa)? {
            PhaseEnd::Optimal => {
                let x = self.to_original(&self.z_values());
                Some(LpOutcome {
                    status: LpStatus::Optimal,
                    optimal_value: Some(self.s.lp.objective_at(&x)),
                    primal: Some(x),
                    certificate: Certificate::Dual(self.duals(1)),
                })
            }
            PhaseEnd::Unbounded(e) => {
                let x = self.to_original(&self.z_values());
                let mut dz = vec![Rational::zero(); self.s.width];
                dz[e] = Rational::one();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    dz[b] = -ratio(&row[e], &row[b]);
                }
                Some(LpOutcome {
                    status: LpStatus::Unbounded,
                    optimal_value: None,
                    primal: Some(x),
                    certificate: Certificate::Ray(self.to_original(&dz)),
                })
            }
        }
    }
}

pub(crate) fn solve(lp: &RationalLp) -> LpOutcome {
    let setup = Setup::new(lp);
    Engine::<i128>::new(&setup)
        .and_then(Engine::run)
        .or_else(|| Engine::<BigInt>::new(&setup).and_then(Engine::run))
        .expect("arbitrary-precision arithmetic does not overflow")
}
