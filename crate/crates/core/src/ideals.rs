//! Monomial ideals of `S`, the irrelevant ideal `B`, the exceptional set
//! `Z = V(B)` and the toric Nullstellensatz for monomial ideals.

use std::fmt;
use std::str::FromStr;

use crate::coxring::Monomial;
use crate::error::{check_len, Result, ToricError};
use crate::fan::{combinations, Fan};

/// A monomial ideal kept as its minimal generating set, sorted
/// lexicographically by exponent vector. No generators means the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    // Divisibility implies lexicographic order, so a divisor always precedes.
    gens.sort();
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            check_len(nvars, g.nvars())?;
        }
        Ok(MonomialIdeal {
            nvars,
            gens: minimalize(gens),
        })
    }

    fn from_valid(nvars: usize, gens: Vec<Monomial>) -> Self {
        MonomialIdeal {
            nvars,
            gens: minimalize(gens),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn is_radical(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn radical(&self) -> MonomialIdeal {
        MonomialIdeal::from_valid(
            self.nvars,
            self.gens.iter().map(Monomial::radical).collect(),
        )
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::from_valid(
            self.nvars,
            self.gens.iter().chain(&other.gens).cloned().collect(),
        )
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.lcm(b)))
            .collect();
        MonomialIdeal::from_valid(self.nvars, gens)
    }

    /// `I : x^m`.
    pub fn colon_monomial(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::from_valid(
            self.nvars,
            self.gens.iter().map(|g| g.div_saturating(m)).collect(),
        )
    }

    /// `I : J`.
    pub fn colon(&self, other: &MonomialIdeal) -> MonomialIdeal {
        other
            .gens
            .iter()
            .fold(MonomialIdeal::unit(self.nvars), |acc, g| {
                acc.intersect(&self.colon_monomial(g))
            })
    }

    /// `I : (x^m)^∞`.
    pub fn saturate_monomial(&self, m: &Monomial) -> MonomialIdeal {
        let support = m.support();
        MonomialIdeal::from_valid(
            self.nvars,
            self.gens.iter().map(|g| g.erase(&support)).collect(),
        )
    }

    /// `I : J^∞`.
    pub fn saturate(&self, other: &MonomialIdeal) -> MonomialIdeal {
        other
            .gens
            .iter()
            .fold(MonomialIdeal::unit(self.nvars), |acc, g| {
                acc.intersect(&self.saturate_monomial(g))
            })
    }

    /// Parses `a,b,c;d,e,f` (or `zero`) with every monomial of length `nvars`.
    pub fn parse(nvars: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "zero" {
            return Ok(MonomialIdeal::zero(nvars));
        }
        let gens = s
            .split(';')
            .map(Monomial::from_str)
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(nvars, gens)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "zero");
        }
        let parts: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// `B = <x^σ̂ : σ maximal>`.
pub fn irrelevant_ideal(fan: &Fan) -> MonomialIdeal {
    let d = fan.ray_count();
    MonomialIdeal::from_valid(
        d,
        fan.max_cones()
            .iter()
            .map(|c| Monomial::complement(d, c))
            .collect(),
    )
}

/// Irreducible components of `Z`, each the coordinate subspace
/// `{x_ρ = 0 : ρ ∈ C}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalLocus {
    pub components: Vec<Vec<usize>>,
    /// `None` when `Z` is empty.
    pub codim: Option<usize>,
}

impl ExceptionalLocus {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Minimal sets meeting every member of `family`.
fn minimal_hitting_sets(universe: usize, family: &[Vec<usize>]) -> Vec<Vec<usize>> {
    if family.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    for size in 0..=universe {
        for cand in combinations(universe, size) {
            if found.iter().any(|f| f.iter().all(|x| cand.contains(x))) {
                continue;
            }
            if family.iter().all(|s| s.iter().any(|x| cand.contains(x))) {
                found.push(cand);
            }
        }
    }
    found.sort();
    found
}

pub fn exceptional_locus(fan: &Fan) -> ExceptionalLocus {
    let supports: Vec<Vec<usize>> = irrelevant_ideal(fan)
        .generators()
        .iter()
        .map(Monomial::support)
        .collect();
    let components = minimal_hitting_sets(fan.ray_count(), &supports);
    let codim = components.iter().map(Vec::len).min();
    ExceptionalLocus { components, codim }
}

/// `V_X(I) = ∅`, i.e. `B ⊂ √I`.
pub fn is_empty_in_x(fan: &Fan, ideal: &MonomialIdeal) -> Result<bool> {
    check_len(fan.ray_count(), ideal.nvars())?;
    if !fan.is_simplicial() {
        return Err(ToricError::NotSimplicialFan);
    }
    let radical = ideal.radical();
    Ok(irrelevant_ideal(fan)
        .generators()
        .iter()
        .all(|b| radical.contains(b)))
}

/// `(I ∩ B, I : B)`.
pub fn correspondence_maps(
    fan: &Fan,
    ideal: &MonomialIdeal,
) -> Result<(MonomialIdeal, MonomialIdeal)> {
    check_len(fan.ray_count(), ideal.nvars())?;
    let b = irrelevant_ideal(fan);
    Ok((ideal.intersect(&b), ideal.colon(&b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn ideal(nvars: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(nvars, gens.iter().map(|g| mono(g)).collect()).unwrap()
    }

    /// Every monomial in `nvars` variables with total degree at most `max`.
    fn monomials_up_to(nvars: usize, max: u32) -> Vec<Monomial> {
        let mut out = vec![Monomial::one(nvars)];
        let mut frontier = out.clone();
        for _ in 0..max {
            let mut next = Vec::new();
            for m in &frontier {
                for i in 0..nvars {
                    let p = m.mul(&Monomial::var(nvars, i));
                    if !next.contains(&p) {
                        next.push(p);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// All products of `k` generators of `b`, with repetition.
    fn powers(b: &MonomialIdeal, k: usize) -> Vec<Monomial> {
        let mut out = vec![Monomial::one(b.nvars())];
        for _ in 0..k {
            out = out
                .iter()
                .flat_map(|m| b.generators().iter().map(move |g| m.mul(g)))
                .collect();
        }
        out
    }

    #[test]
    fn irrelevant_ideals() {
        assert_eq!(
            irrelevant_ideal(&fixtures::p2()).to_string(),
            "0,0,1;0,1,0;1,0,0"
        );
        assert_eq!(
            irrelevant_ideal(&fixtures::p1p1()).to_string(),
            "0,1,0,1;0,1,1,0;1,0,0,1;1,0,1,0"
        );
        assert!(irrelevant_ideal(&fixtures::quadric()).is_unit());
    }

    #[test]
    fn exceptional_loci() {
        let z = exceptional_locus(&fixtures::p2());
        assert_eq!(z.components, vec![vec![0, 1, 2]]);
        assert_eq!(z.codim, Some(3));
        let z = exceptional_locus(&fixtures::p1p1());
        assert_eq!(z.components, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(z.codim, Some(2));
        let z = exceptional_locus(&fixtures::quadric());
        assert!(z.is_empty());
        assert_eq!(z.codim, None);
        let z = exceptional_locus(&fixtures::p112());
        assert_eq!(z.components, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn codimension_at_least_two() {
        for (name, fan) in fixtures::all() {
            if fan.max_cones().len() > 1 {
                assert!(exceptional_locus(&fan).codim.unwrap() >= 2, "{name}");
            }
        }
    }

    #[test]
    fn radical_and_intersection() {
        assert_eq!(ideal(3, &[&[2, 0, 0]]).radical(), ideal(3, &[&[1, 0, 0]]));
        assert_eq!(
            ideal(3, &[&[1, 0, 0]]).intersect(&ideal(3, &[&[0, 1, 0]])),
            ideal(3, &[&[1, 1, 0]])
        );
        let b = irrelevant_ideal(&fixtures::p1p1());
        let x0 = ideal(4, &[&[1, 0, 0, 0]]);
        let meet = b.intersect(&x0);
        assert_eq!(meet, ideal(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1]]));
        for m in monomials_up_to(4, 4) {
            assert_eq!(meet.contains(&m), b.contains(&m) && x0.contains(&m), "{m}");
        }
    }

    #[test]
    fn saturation_examples() {
        let p2 = fixtures::p2();
        let b = irrelevant_ideal(&p2);
        // <x0> ∩ <x1, x2> has no component supported on the origin.
        let i = ideal(3, &[&[1, 1, 0], &[1, 0, 1]]);
        assert_eq!(i.saturate(&b), i);
        let j = ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1]]);
        assert_eq!(j.saturate(&b), ideal(3, &[&[1, 0, 0]]));
        assert!(b.saturate(&b).is_unit());
        let x0 = ideal(3, &[&[1, 0, 0]]);
        assert_eq!(x0.saturate(&b), x0);
    }

    #[test]
    fn saturation_matches_power_oracle() {
        let b = irrelevant_ideal(&fixtures::p2());
        let cases = [
            ideal(3, &[&[1, 1, 0], &[1, 0, 1]]),
            ideal(3, &[&[2, 1, 0], &[0, 2, 2], &[1, 0, 1]]),
            ideal(3, &[&[1, 1, 1]]),
        ];
        let prods = powers(&b, 3 * 2);
        for i in &cases {
            let sat = i.saturate(&b);
            for m in monomials_up_to(3, 4) {
                let oracle = prods.iter().all(|h| i.contains(&m.mul(h)));
                assert_eq!(sat.contains(&m), oracle, "{m} in {i}:B^inf");
            }
        }
    }

    #[test]
    fn nullstellensatz_examples() {
        let p2 = fixtures::p2();
        let b = irrelevant_ideal(&p2);
        assert!(is_empty_in_x(&p2, &b).unwrap());
        assert!(!is_empty_in_x(&p2, &ideal(3, &[&[1, 0, 0]])).unwrap());
        let p1p1 = fixtures::p1p1();
        assert!(is_empty_in_x(&p1p1, &ideal(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]])).unwrap());
        assert_eq!(
            is_empty_in_x(&fixtures::quadric(), &ideal(4, &[&[1, 0, 0, 0]])),
            Err(ToricError::NotSimplicialFan)
        );
    }

    /// `V(I) ⊂ Z` decided on zero patterns: a pattern kills `I` when every
    /// generator uses some vanishing coordinate, and lies in `Z` when it
    /// kills every `x^σ̂`.
    fn empty_oracle(fan: &Fan, i: &MonomialIdeal) -> bool {
        let d = fan.ray_count();
        let b = irrelevant_ideal(fan);
        let kills = |zeros: &[usize], g: &Monomial| g.support().iter().any(|x| zeros.contains(x));
        (0..=d).flat_map(|k| combinations(d, k)).all(|zeros| {
            !i.generators().iter().all(|g| kills(&zeros, g))
                || b.generators().iter().all(|g| kills(&zeros, g))
        })
    }

    #[test]
    fn nullstellensatz_matches_zero_pattern_oracle() {
        for fan in [fixtures::p2(), fixtures::p1p1(), fixtures::p112()] {
            let d = fan.ray_count();
            let candidates: Vec<Monomial> = monomials_up_to(d, 2);
            for a in &candidates {
                for c in &candidates {
                    let i = MonomialIdeal::new(d, vec![a.clone(), c.clone()]).unwrap();
                    assert_eq!(
                        is_empty_in_x(&fan, &i).unwrap(),
                        empty_oracle(&fan, &i),
                        "{i}"
                    );
                }
            }
        }
    }

    #[test]
    fn correspondence_examples() {
        let p2 = fixtures::p2();
        let b = irrelevant_ideal(&p2);
        let x0 = ideal(3, &[&[1, 0, 0]]);
        assert_eq!(
            correspondence_maps(&p2, &x0).unwrap(),
            (x0.clone(), x0.clone())
        );
        let one = MonomialIdeal::unit(3);
        assert_eq!(
            correspondence_maps(&p2, &one).unwrap(),
            (b.clone(), one.clone())
        );
        assert_eq!(correspondence_maps(&p2, &b).unwrap(), (b.clone(), one));
    }

    #[test]
    fn correspondence_round_trip_on_radical_saturated_ideals() {
        for fan in [fixtures::p2(), fixtures::p1p1()] {
            let d = fan.ray_count();
            let b = irrelevant_ideal(&fan);
            let squarefree: Vec<Monomial> = monomials_up_to(d, d as u32)
                .into_iter()
                .filter(|m| m.is_squarefree() && !m.is_one())
                .collect();
            for a in &squarefree {
                for c in &squarefree {
                    let i = MonomialIdeal::new(d, vec![a.clone(), c.clone()]).unwrap();
                    if i.saturate(&b) != i {
                        continue;
                    }
                    let (j, back) = correspondence_maps(&fan, &i).unwrap();
                    assert_eq!(back, i);
                    assert_eq!(j.colon(&b), i);
                    assert_eq!(j.colon(&b).intersect(&b), j);
                }
            }
        }
    }

    #[test]
    fn text_form() {
        let i = MonomialIdeal::parse(3, "0,1,0; 1,0,0;1,1,0").unwrap();
        assert_eq!(i.to_string(), "0,1,0;1,0,0");
        assert_eq!(
            MonomialIdeal::parse(3, "zero").unwrap(),
            MonomialIdeal::zero(3)
        );
        assert!(MonomialIdeal::parse(3, "1,0").is_err());
    }

    fn ideal_strategy(nvars: usize) -> impl Strategy<Value = MonomialIdeal> {
        prop::collection::vec(prop::collection::vec(0u32..=2, nvars), 1..5).prop_map(move |gs| {
            MonomialIdeal::new(nvars, gs.into_iter().map(Monomial::new).collect()).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn saturation_is_idempotent(i in ideal_strategy(3)) {
            let b = irrelevant_ideal(&fixtures::p2());
            let s = i.saturate(&b);
            prop_assert_eq!(s.saturate(&b), s);
        }

        #[test]
        fn minimal_basis_is_unique(i in ideal_strategy(4), extra in prop::collection::vec(0u32..=2, 4)) {
            let mut gens = i.generators().to_vec();
            gens.push(i.generators()[0].mul(&Monomial::new(extra)));
            gens.reverse();
            prop_assert_eq!(MonomialIdeal::new(4, gens).unwrap(), i);
        }

        #[test]
        fn membership_agrees_with_scan(i in ideal_strategy(3)) {
            for m in monomials_up_to(3, 6) {
                let scan = i.generators().iter().any(|g| {
                    g.exponents().iter().zip(m.exponents()).all(|(a, b)| a <= b)
                });
                prop_assert_eq!(i.contains(&m), scan);
            }
        }

        #[test]
        fn colon_and_intersection_oracles(i in ideal_strategy(3), j in ideal_strategy(3)) {
            let meet = i.intersect(&j);
            let quot = i.colon(&j);
            for m in monomials_up_to(3, 4) {
                prop_assert_eq!(meet.contains(&m), i.contains(&m) && j.contains(&m));
                let oracle = j.generators().iter().all(|g| i.contains(&m.mul(g)));
                prop_assert_eq!(quot.contains(&m), oracle);
            }
        }
    }

    #[test]
    fn irrelevant_ideal_is_radical() {
        for (_, fan) in fixtures::all() {
            let b = irrelevant_ideal(&fan);
            assert!(b.is_radical());
            assert_eq!(b.radical(), b);
        }
    }
}
