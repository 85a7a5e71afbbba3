//! Exact two-phase simplex over arbitrary-precision rationals.
//!
//! Variables of a [`RationalLp`] are free or sign-restricted (`x_j >= 0`);
//! other bounds are ordinary rows. The solver returns an [`LpOutcome`] whose
//! certificate has already been checked by exact substitution:
//!
//! * optimal: a dual vector `pi` with `pi_i >= 0` on `<=` rows, `pi_i <= 0` on
//!   `>=` rows, `(A^T pi)_j = c_j` on free and `>= c_j` on nonnegative
//!   variables, and `b^T pi = c^T x`;
//! * infeasible: a Farkas vector with the same row signs, `(A^T pi)_j = 0` on
//!   free and `>= 0` on nonnegative variables, and `b^T pi < 0`;
//! * unbounded: a feasible point and a ray `d` with `A d` respecting the row
//!   relations against 0, `d_j >= 0` on nonnegative variables and
//!   `c^T d > 0`.
//!
//! Pivoting uses the largest reduced cost and falls back to Bland's rule after
//! a run of degenerate steps, so the method terminates.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::LpError;

pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }

    pub(crate) fn flipped(self) -> Self {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Eq => Relation::Eq,
            Relation::Ge => Relation::Le,
        }
    }

    /// Sign a dual multiplier of a row with this relation must have (max form).
    fn dual_sign_ok(self, pi: &Rational) -> bool {
        match self {
            Relation::Le => !pi.is_negative(),
            Relation::Eq => true,
            Relation::Ge => !pi.is_positive(),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    /// Sparse `(variable, coefficient)` pairs.
    pub terms: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
    pub label: String,
}

impl Constraint {
    fn lhs_at(&self, x: &[Rational]) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (j, a)| acc + a * &x[*j])
    }
}

/// `maximize c^T x` subject to linear rows and sign restrictions.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RationalLp {
    names: Vec<String>,
    nonnegative: Vec<bool>,
    objective: Vec<(usize, Rational)>,
    constraints: Vec<Constraint>,
}

impl RationalLp {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a free variable.
    pub fn add_variable(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.nonnegative.push(false);
        self.names.len() - 1
    }

    /// Adds a variable restricted to `x_j >= 0`.
    pub fn add_nonnegative_variable(&mut self, name: impl Into<String>) -> usize {
        let j = self.add_variable(name);
        self.nonnegative[j] = true;
        j
    }

    pub fn is_nonnegative(&self, j: usize) -> bool {
        self.nonnegative[j]
    }

    pub fn variable_count(&self) -> usize {
        self.names.len()
    }

    pub fn variable_name(&self, j: usize) -> &str {
        &self.names[j]
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &[(usize, Rational)] {
        &self.objective
    }

    /// Sets the objective to a single variable, `max x_j`.
    pub fn maximize_variable(&mut self, j: usize) {
        self.objective = vec![(j, Rational::one())];
    }

    pub fn set_objective(&mut self, terms: Vec<(usize, Rational)>) {
        self.objective = terms;
    }

    pub fn add_constraint(
        &mut self,
        label: impl Into<String>,
        terms: Vec<(usize, Rational)>,
        relation: Relation,
        rhs: Rational,
    ) {
        self.constraints.push(Constraint {
            terms,
            relation,
            rhs,
            label: label.into(),
        });
    }

    /// Adds `x_j >= lo` as a row.
    pub fn add_lower_bound(&mut self, j: usize, lo: Rational) {
        let label = format!("lb_{}", self.names[j]);
        self.add_constraint(label, vec![(j, Rational::one())], Relation::Ge, lo);
    }

    /// Adds `x_j <= hi` as a row.
    pub fn add_upper_bound(&mut self, j: usize, hi: Rational) {
        let label = format!("ub_{}", self.names[j]);
        self.add_constraint(label, vec![(j, Rational::one())], Relation::Le, hi);
    }

    fn validate(&self) -> Result<(), LpError> {
        let n = self.names.len();
        for (j, _) in &self.objective {
            if *j >= n {
                return Err(LpError::ObjectiveOutOfRange(*j));
            }
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if let Some((j, _)) = c.terms.iter().find(|(j, _)| *j >= n) {
                return Err(LpError::RowWidth {
                    row: i,
                    variable: *j,
                    width: n,
                });
            }
        }
        Ok(())
    }

    pub fn objective_at(&self, x: &[Rational]) -> Rational {
        self.objective
            .iter()
            .fold(Rational::zero(), |acc, (j, c)| acc + c * &x[*j])
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.names.len()
            && x.iter().zip(&self.nonnegative).all(|(v, &nn)| !nn || !v.is_negative())
            && self
                .constraints
                .iter()
                .all(|c| c.relation.holds(&c.lhs_at(x), &c.rhs))
    }

    /// `A^T pi` as a dense vector.
    fn transpose_times(&self, pi: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.names.len()];
        for (c, p) in self.constraints.iter().zip(pi) {
            if p.is_zero() {
                continue;
            }
            for (j, a) in &c.terms {
                out[*j] += a * p;
            }
        }
        out
    }

    /// `u_j = v_j` on free variables and `u_j >= v_j` on nonnegative ones.
    fn dominates(&self, u: &[Rational], v: &[Rational]) -> bool {
        u.iter()
            .zip(v)
            .zip(&self.nonnegative)
            .all(|((a, b), &nn)| if nn { a >= b } else { a == b })
    }

    fn dense_objective(&self) -> Vec<Rational> {
        let mut c = vec![Rational::zero(); self.names.len()];
        for (j, v) in &self.objective {
            c[*j] += v;
        }
        c
    }

    /// Text dump: one constraint per line, rationals as `p/q`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {} variables, {} constraints", self.names.len(), self.constraints.len());
        if self.nonnegative.iter().any(|&nn| nn) {
            let _ = write!(s, "nonnegative:");
            for (name, _) in self.names.iter().zip(&self.nonnegative).filter(|(_, &nn)| nn) {
                let _ = write!(s, " {name}");
            }
            s.push('\n');
        }
        let _ = write!(s, "maximize:");
        for (j, c) in &self.objective {
            let _ = write!(s, " {} {}", c, self.names[*j]);
        }
        s.push('\n');
        for c in &self.constraints {
            let _ = write!(s, "{}:", c.label);
            for (j, a) in &c.terms {
                let _ = write!(s, " {} {}", a, self.names[*j]);
            }
            let _ = writeln!(s, " {} {}", c.relation, c.rhs);
        }
        s
    }

    pub fn solve(&self) -> Result<LpOutcome, LpError> {
        self.validate()?;
        let outcome = super::simplex::solve(self);
        outcome.verify(self)?;
        Ok(outcome)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// Row multipliers proving optimality by strong duality.
    Dual(Vec<Rational>),
    /// Row multipliers proving infeasibility.
    Farkas(Vec<Rational>),
    /// Improving direction from the reported feasible point.
    Ray(Vec<Rational>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub optimal_value: Option<Rational>,
    pub primal: Option<Vec<Rational>>,
    pub certificate: Certificate,
}

impl LpOutcome {
    /// Rechecks the certificate against `lp` with exact arithmetic.
    pub fn verify(&self, lp: &RationalLp) -> Result<(), LpError> {
        let rows = lp.constraints.len();
        match (&self.status, &self.certificate) {
            (LpStatus::Optimal, Certificate::Dual(pi)) => {
                let x = self
                    .primal
                    .as_ref()
                    .ok_or(LpError::Certificate("optimal outcome without primal point"))?;
                if !lp.is_feasible(x) {
                    return Err(LpError::Certificate("primal point infeasible"));
                }
                if pi.len() != rows {
                    return Err(LpError::Certificate("dual vector has wrong length"));
                }
                for (c, p) in lp.constraints.iter().zip(pi) {
                    if !c.relation.dual_sign_ok(p) {
                        return Err(LpError::Certificate("dual multiplier has wrong sign"));
                    }
                }
                let reduced = lp.transpose_times(pi);
                if !lp.dominates(&reduced, &lp.dense_objective()) {
                    return Err(LpError::Certificate("A^T pi does not match c"));
                }
                let dual_value = lp
                    .constraints
                    .iter()
                    .zip(pi)
                    .fold(Rational::zero(), |acc, (c, p)| acc + &c.rhs * p);
                let primal_value = lp.objective_at(x);
                if dual_value != primal_value
                    || self.optimal_value.as_ref() != Some(&primal_value)
                {
                    return Err(LpError::Certificate("duality gap is not zero"));
                }
                Ok(())
            }
            (LpStatus::Infeasible, Certificate::Farkas(pi)) => {
                if pi.len() != rows {
                    return Err(LpError::Certificate("Farkas vector has wrong length"));
                }
                for (c, p) in lp.constraints.iter().zip(pi) {
                    if !c.relation.dual_sign_ok(p) {
                        return Err(LpError::Certificate("Farkas multiplier has wrong sign"));
                    }
                }
                let zero = vec![Rational::zero(); lp.variable_count()];
                if !lp.dominates(&lp.transpose_times(pi), &zero) {
                    return Err(LpError::Certificate("A^T pi does not vanish"));
                }
                let value = lp
                    .constraints
                    .iter()
                    .zip(pi)
                    .fold(Rational::zero(), |acc, (c, p)| acc + &c.rhs * p);
                if !value.is_negative() {
                    return Err(LpError::Certificate("b^T pi is not negative"));
                }
                Ok(())
            }
            (LpStatus::Unbounded, Certificate::Ray(d)) => {
                let x = self
                    .primal
                    .as_ref()
                    .ok_or(LpError::Certificate("unbounded outcome without a point"))?;
                if !lp.is_feasible(x) {
                    return Err(LpError::Certificate("ray origin infeasible"));
                }
                let zero = Rational::zero();
                if d.len() != lp.variable_count()
                    || d.iter().zip(&lp.nonnegative).any(|(v, &nn)| nn && v.is_negative())
                {
                    return Err(LpError::Certificate("ray violates a sign restriction"));
                }
                for c in &lp.constraints {
                    if !c.relation.holds(&c.lhs_at(d), &zero) {
                        return Err(LpError::Certificate("ray leaves the feasible region"));
                    }
                }
                if !lp.objective_at(d).is_positive() {
                    return Err(LpError::Certificate("ray does not improve the objective"));
                }
                Ok(())
            }
            _ => Err(LpError::Certificate("certificate does not match status")),
        }
    }
}
