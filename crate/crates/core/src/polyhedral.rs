//! Exact Fourier–Motzkin elimination over the rationals.
//!
//! Systems are small (a dozen constraints in at most four or five unknowns),
//! so plain elimination with duplicate removal is fast enough and never
//! needs an LP solver.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Relation {
    /// `coeffs . x >= rhs`
    Ge,
    /// `coeffs . x == rhs`
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub rel: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn ge(coeffs: &[i64], rhs: i64) -> Self {
        Constraint {
            coeffs: coeffs.iter().map(|&c| rat(c)).collect(),
            rel: Relation::Ge,
            rhs: rat(rhs),
        }
    }

    pub fn eq(coeffs: &[i64], rhs: i64) -> Self {
        Constraint {
            coeffs: coeffs.iter().map(|&c| rat(c)).collect(),
            rel: Relation::Eq,
            rhs: rat(rhs),
        }
    }

    pub fn holds(&self, x: &[BigRational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.rel {
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }

    /// Rescales to coprime integer data so duplicates compare equal.
    fn normalized(mut self) -> Self {
        let denom_lcm = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.rhs))
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let nums: Vec<BigInt> = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.rhs))
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let mut g = nums.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return self;
        }
        if self.rel == Relation::Eq {
            // Fix the sign of equalities by their first nonzero entry.
            if let Some(first) = nums.iter().find(|x| !x.is_zero()) {
                if first.is_negative() {
                    g = -g;
                }
            }
        }
        let n = self.coeffs.len();
        for (i, v) in nums.iter().enumerate() {
            let q = BigRational::from_integer(v / &g);
            if i < n {
                self.coeffs[i] = q;
            } else {
                self.rhs = q;
            }
        }
        self
    }
}

pub fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

enum Step {
    /// Variable was solved from an equality: `x_k = (rhs - sum_{j<k} c_j x_j) / c_k`.
    Substituted(Constraint),
    /// Variable was eliminated by pairing; its bounds come from these constraints.
    Paired(Vec<Constraint>),
}

/// Eliminates the last variable. Returns `None` as soon as a contradiction
/// `0 >= positive` or `0 == nonzero` appears.
fn eliminate_last(system: Vec<Constraint>, k: usize) -> Option<(Vec<Constraint>, Step)> {
    let pivot_eq = system
        .iter()
        .position(|c| c.rel == Relation::Eq && !c.coeffs[k].is_zero());
    let (next, step) = match pivot_eq {
        Some(p) => {
            let piv = system[p].clone();
            let next = system
                .into_iter()
                .enumerate()
                .filter(|&(i, _)| i != p)
                .map(|(_, c)| {
                    if c.coeffs[k].is_zero() {
                        return c;
                    }
                    // c - (c_k / piv_k) * piv
                    let f = &c.coeffs[k] / &piv.coeffs[k];
                    let coeffs = c
                        .coeffs
                        .iter()
                        .zip(&piv.coeffs)
                        .map(|(a, b)| a - &f * b)
                        .collect();
                    Constraint {
                        coeffs,
                        rel: c.rel,
                        rhs: &c.rhs - &f * &piv.rhs,
                    }
                })
                .collect();
            (next, Step::Substituted(piv))
        }
        None => {
            let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
            for c in system {
                if c.coeffs[k].is_positive() {
                    lower.push(c);
                } else if c.coeffs[k].is_negative() {
                    upper.push(c);
                } else {
                    rest.push(c);
                }
            }
            for lo in &lower {
                for up in &upper {
                    // lo/lo_k + up/|up_k| cancels x_k.
                    let a = lo.coeffs[k].recip();
                    let b = -up.coeffs[k].recip();
                    let coeffs = lo
                        .coeffs
                        .iter()
                        .zip(&up.coeffs)
                        .map(|(x, y)| x * &a + y * &b)
                        .collect();
                    rest.push(Constraint {
                        coeffs,
                        rel: Relation::Ge,
                        rhs: &lo.rhs * &a + &up.rhs * &b,
                    });
                }
            }
            let bounds = lower.into_iter().chain(upper).collect();
            (rest, Step::Paired(bounds))
        }
    };

    let mut seen = BTreeSet::new();
    for mut c in next {
        c.coeffs.truncate(k);
        if c.coeffs.iter().all(Zero::is_zero) {
            let ok = match c.rel {
                Relation::Ge => c.rhs <= BigRational::zero(),
                Relation::Eq => c.rhs.is_zero(),
            };
            if !ok {
                return None;
            }
            continue;
        }
        seen.insert(c.normalized());
    }
    Some((seen.into_iter().collect(), step))
}

/// Bounds `(lower, upper)` on `x_k` implied by the constraints once
/// `x_0..x_{k-1}` are fixed.
fn bounds_at(
    cons: &[Constraint],
    k: usize,
    prefix: &[BigRational],
) -> (Option<BigRational>, Option<BigRational>) {
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for c in cons {
        let ck = &c.coeffs[k];
        if ck.is_zero() {
            continue;
        }
        let partial = dot(&c.coeffs[..k], prefix);
        let v = (&c.rhs - partial) / ck;
        if ck.is_positive() {
            if lo.as_ref().is_none_or(|l| &v > l) {
                lo = Some(v);
            }
        } else if hi.as_ref().is_none_or(|h| &v < h) {
            hi = Some(v);
        }
    }
    (lo, hi)
}

/// Picks a small, preferably integral, value in `[lo, hi]`.
fn choose(lo: Option<BigRational>, hi: Option<BigRational>) -> BigRational {
    let zero = BigRational::zero();
    match (lo, hi) {
        (None, None) => zero,
        (Some(l), None) => {
            if l <= zero {
                zero
            } else {
                l.ceil()
            }
        }
        (None, Some(h)) => {
            if h >= zero {
                zero
            } else {
                h.floor()
            }
        }
        (Some(l), Some(h)) => {
            if l <= zero && zero <= h {
                zero
            } else if l.ceil() <= h {
                if l > zero {
                    l.ceil()
                } else {
                    h.floor()
                }
            } else {
                l
            }
        }
    }
}

/// Finds a rational point satisfying every constraint, or `None` when the
/// system is infeasible.
pub fn find_point(system: &[Constraint], nvars: usize) -> Option<Vec<BigRational>> {
    for c in system {
        assert_eq!(c.coeffs.len(), nvars, "constraint arity mismatch");
    }
    let mut current: Vec<Constraint> = system.to_vec();
    let mut steps = Vec::with_capacity(nvars);
    for k in (0..nvars).rev() {
        let (next, step) = eliminate_last(current, k)?;
        steps.push(step);
        current = next;
    }
    // All variables eliminated without contradiction.
    steps.reverse();
    let mut x: Vec<BigRational> = Vec::with_capacity(nvars);
    for (k, step) in steps.into_iter().enumerate() {
        let v = match step {
            Step::Substituted(piv) => {
                let partial = dot(&piv.coeffs[..k], &x);
                (&piv.rhs - partial) / &piv.coeffs[k]
            }
            Step::Paired(bounds) => {
                let (lo, hi) = bounds_at(&bounds, k, &x);
                choose(lo, hi)
            }
        };
        x.push(v);
    }
    debug_assert!(system.iter().all(|c| c.holds(&x)));
    Some(x)
}

pub fn is_feasible(system: &[Constraint], nvars: usize) -> bool {
    find_point(system, nvars).is_some()
}

/// Range of coordinate `k` over the polyhedron. `None` when infeasible,
/// otherwise the projected lower and upper bounds (absent when unbounded).
pub fn coordinate_range(
    system: &[Constraint],
    nvars: usize,
    k: usize,
) -> Option<(Option<BigRational>, Option<BigRational>)> {
    // Move x_k to position 0 and eliminate everything else.
    let permute = |c: &Constraint| {
        let mut coeffs = c.coeffs.clone();
        coeffs.swap(0, k);
        Constraint {
            coeffs,
            rel: c.rel,
            rhs: c.rhs.clone(),
        }
    };
    let mut current: Vec<Constraint> = system.iter().map(permute).collect();
    for j in (1..nvars).rev() {
        current = eliminate_last(current, j)?.0;
    }
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for c in &current {
        let a = &c.coeffs[0];
        let v = &c.rhs / a;
        let is_eq = c.rel == Relation::Eq;
        if (a.is_positive() || is_eq) && lo.as_ref().is_none_or(|l| &v > l) {
            lo = Some(v.clone());
        }
        if (a.is_negative() || is_eq) && hi.as_ref().is_none_or(|h| &v < h) {
            hi = Some(v);
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return None;
        }
    }
    Some((lo, hi))
}
