//! Rational points of `C^{Δ(1)}`, the charts `U_σ`, orbit invariants and the
//! quotient by `G`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::classgroup::GroupGDescription;
use crate::coxring::Monomial;
use crate::error::{check_len, Result, ToricError};
use crate::fan::{ConeView, Fan};
use crate::intlin::{kernel_basis, IntMatrix};

/// A point of `C^{Δ(1)}` with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogPoint(Vec<BigRational>);

/// `r^e` for a nonzero `r` or a nonnegative `e` (with `0^0 = 1`).
pub fn rational_pow(r: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(r.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

impl HomogPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        HomogPoint(coords)
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        HomogPoint(
            coords
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len())
            .filter(|&i| !self.0[i].is_zero())
            .collect()
    }

    pub fn eval(&self, m: &Monomial) -> BigRational {
        self.0
            .iter()
            .zip(m.exponents())
            .fold(BigRational::one(), |acc, (p, &e)| {
                acc * rational_pow(p, i64::from(e))
            })
    }

    /// `x^{D_m}` at this point; exponents may be negative only where the
    /// coordinate is nonzero.
    pub fn eval_character(&self, fan: &Fan, m: &[i64]) -> BigRational {
        self.0
            .iter()
            .zip(fan.divisor_of_character(m))
            .fold(BigRational::one(), |acc, (p, e)| acc * rational_pow(p, e))
    }

    /// `g·p` for `g = (λ_1, …)` in the torus part of `G`:
    /// `x_ρ ↦ Π_j λ_j^{w_{ρj}} x_ρ`.
    pub fn torus_act(&self, g: &GroupGDescription, lambda: &[BigRational]) -> Result<HomogPoint> {
        check_len(self.0.len(), g.torus_weights.len())?;
        check_len(g.torus_dim(), lambda.len())?;
        if lambda.iter().any(Zero::is_zero) {
            return Err(ToricError::InvalidArgument(
                "torus element has a zero entry".into(),
            ));
        }
        Ok(HomogPoint(
            self.0
                .iter()
                .zip(&g.torus_weights)
                .map(|(p, w)| {
                    w.iter().zip(lambda).fold(p.clone(), |acc, (e, l)| {
                        acc * rational_pow(l, e.to_i64().expect("weight overflows i64"))
                    })
                })
                .collect(),
        ))
    }
}

impl fmt::Display for HomogPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for HomogPoint {
    type Err = ToricError;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                let t = t.trim();
                let r = BigRational::from_str(t)
                    .map_err(|_| ToricError::InvalidArgument(format!("bad rational {t:?}")))?;
                Ok(r)
            })
            .collect::<Result<Vec<_>>>()
            .map(HomogPoint)
    }
}

fn hat_value(fan: &Fan, cone: &[usize], p: &HomogPoint) -> BigRational {
    p.eval(&Monomial::complement(fan.ray_count(), cone))
}

/// `p ∈ Z`: every `x^σ̂` vanishes at `p`.
pub fn in_exceptional(fan: &Fan, p: &HomogPoint) -> Result<bool> {
    check_len(fan.ray_count(), p.len())?;
    Ok(fan
        .max_cones()
        .iter()
        .all(|c| hat_value(fan, c, p).is_zero()))
}

/// The first maximal cone `σ` with `p ∈ U_σ`.
pub fn chart_of<'a>(fan: &'a Fan, p: &HomogPoint) -> Result<ConeView<'a>> {
    check_len(fan.ray_count(), p.len())?;
    (0..fan.max_cones().len())
        .find(|&i| !hat_value(fan, &fan.max_cones()[i], p).is_zero())
        .map(|i| fan.cone(i))
        .ok_or(ToricError::PointInExceptionalLocus)
}

/// Values of the Hilbert-basis characters of `σ̌ ∩ M` on the chart `U_σ`.
#[derive(Clone, Debug)]
pub struct OrbitInvariants<'a> {
    pub chart: ConeView<'a>,
    pub basis: Vec<Vec<i64>>,
    pub values: Vec<BigRational>,
}

fn invariants_in_chart(
    fan: &Fan,
    chart: ConeView<'_>,
    p: &HomogPoint,
    bound: i64,
) -> Result<(Vec<Vec<i64>>, Vec<BigRational>)> {
    let basis = chart.dual_hilbert_basis(bound)?;
    let values = basis.iter().map(|m| p.eval_character(fan, m)).collect();
    Ok((basis, values))
}

pub fn orbit_invariants<'a>(
    fan: &'a Fan,
    p: &HomogPoint,
    bound: i64,
) -> Result<OrbitInvariants<'a>> {
    let chart = chart_of(fan, p)?;
    let (basis, values) = invariants_in_chart(fan, chart, p, bound)?;
    Ok(OrbitInvariants {
        chart,
        basis,
        values,
    })
}

/// `G·u = G·t` for a simplicial fan.
pub fn same_orbit(fan: &Fan, u: &HomogPoint, t: &HomogPoint, bound: i64) -> Result<bool> {
    if !fan.is_simplicial() {
        return Err(ToricError::NotSimplicialFan);
    }
    chart_of(fan, u)?;
    let chart = chart_of(fan, t)?;
    if hat_value(fan, chart.ray_indices(), u).is_zero() {
        return Ok(false);
    }
    let (_, at_t) = invariants_in_chart(fan, chart, t, bound)?;
    let (_, at_u) = invariants_in_chart(fan, chart, u, bound)?;
    Ok(at_t == at_u)
}

/// Points `u` and `v = lim_{λ→0} λ^b · u` outside `Z` in distinct orbits,
/// from an integer relation `b` among the rays of a non-simplicial cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonClosedOrbitWitness {
    pub relation: Vec<i64>,
    pub u: HomogPoint,
    pub v: HomogPoint,
}

/// Witness built from the first kernel vector of the cone's ray relations,
/// oriented so that its first nonzero entry is negative.
pub fn nonclosed_orbit_witness(fan: &Fan, cone: ConeView<'_>) -> Result<NonClosedOrbitWitness> {
    if cone.is_simplicial() {
        return Err(ToricError::SimplicialCone);
    }
    let rows = IntMatrix::from_rows(&cone.generators(), fan.dim()).transpose();
    let kernel = kernel_basis(&rows);
    let mut local: Vec<i64> = kernel[0]
        .iter()
        .map(|x| x.to_i64().expect("relation overflows i64"))
        .collect();
    if local.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0) {
        local.iter_mut().for_each(|x| *x = -*x);
    }
    let mut b = vec![0; fan.ray_count()];
    for (&i, &c) in cone.ray_indices().iter().zip(&local) {
        b[i] = c;
    }
    witness_from_relation(fan, cone, b)
}

/// Witness for a given relation `Σ b_ρ n_ρ = 0` supported on the cone; `b` is
/// negated first if it has no positive entry.
pub fn witness_from_relation(
    fan: &Fan,
    cone: ConeView<'_>,
    mut b: Vec<i64>,
) -> Result<NonClosedOrbitWitness> {
    check_len(fan.ray_count(), b.len())?;
    if cone.is_simplicial() {
        return Err(ToricError::SimplicialCone);
    }
    let rays = cone.ray_indices();
    let sum: Vec<i64> = (0..fan.dim())
        .map(|k| (0..b.len()).map(|i| b[i] * fan.rays()[i][k]).sum())
        .collect();
    let outside = (0..b.len()).any(|i| b[i] != 0 && !rays.contains(&i));
    if b.iter().all(|&x| x == 0) || outside || sum.iter().any(|&x| x != 0) {
        return Err(ToricError::InvalidArgument(
            "not a nonzero relation among the cone's rays".into(),
        ));
    }
    if !b.iter().any(|&x| x > 0) {
        b.iter_mut().for_each(|x| *x = -*x);
    }

    let u: Vec<i64> = (0..b.len())
        .map(|i| i64::from(!rays.contains(&i) || b[i] > 0))
        .collect();
    let v: Vec<i64> = (0..b.len())
        .map(|i| if b[i] == 0 { u[i] } else { 0 })
        .collect();
    let (u, v) = (HomogPoint::from_integers(&u), HomogPoint::from_integers(&v));
    assert!(!hat_value(fan, rays, &u).is_zero() && !hat_value(fan, rays, &v).is_zero());
    assert_ne!(u.support(), v.support());
    Ok(NonClosedOrbitWitness { relation: b, u, v })
}

/// Checks `τ̌ ∩ M = σ̌ ∩ M + Z≥0·(−m)` for a face `τ = σ ∩ m^⊥`: the Hilbert basis
/// of `σ̌` and `−m` lie in `τ̌`, and each Hilbert basis element `h` of `τ̌`
/// has `h + k·m ∈ σ̌` for some `0 <= k <= bound`.
pub fn check_chart_compatibility(
    fan: &Fan,
    tau: &[usize],
    sigma: &[usize],
    bound: i64,
) -> Result<bool> {
    let sigma_view = fan.cone_of(sigma)?;
    let tau_view = fan.cone_of(tau)?;
    let face = sigma_view
        .faces()
        .into_iter()
        .find(|f| f.rays == tau)
        .ok_or_else(|| {
            ToricError::InvalidArgument(format!("{tau:?} is not a face of {sigma:?}"))
        })?;
    let m = face.witness;
    let neg_m: Vec<i64> = m.iter().map(|x| -x).collect();

    let sigma_basis = sigma_view.dual_hilbert_basis(bound)?;
    if !tau_view.dual_contains(&neg_m) || !sigma_basis.iter().all(|h| tau_view.dual_contains(h)) {
        return Ok(false);
    }
    Ok(tau_view.dual_hilbert_basis(bound)?.iter().all(|h| {
        (0..=bound).any(|k| {
            let shifted: Vec<i64> = h.iter().zip(&m).map(|(a, b)| a + k * b).collect();
            sigma_view.dual_contains(&shifted)
        })
    }))
}
