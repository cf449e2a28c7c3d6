//! Monomials of the total coordinate ring `S = C[x_ρ]`, its graded pieces and
//! the partial order on monomials of a complete toric variety.

use std::fmt;
use std::str::FromStr;

use crate::classgroup::{ClassGroup, DivisorClass};
use crate::error::{check_len, Result, ToricError};
use crate::fan::{lattice_points, Fan, HPolytope};

/// `x^D` with `D` effective, one exponent per ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    /// Monomial from a divisor; `None` if some coefficient is negative.
    pub fn from_divisor(d: &[i64]) -> Option<Self> {
        d.iter()
            .map(|&a| u32::try_from(a).ok())
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn to_divisor(&self) -> Vec<i64> {
        self.0.iter().map(|&a| i64::from(a)).collect()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&a| u64::from(a)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&a| a <= 1)
    }

    /// The single variable index if this monomial is `x_ρ`.
    pub fn as_variable(&self) -> Option<usize> {
        match self.support().as_slice() {
            [i] if self.0[*i] == 1 => Some(*i),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// `self / other`, saturating at zero.
    pub fn div_saturating(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    pub fn radical(&self) -> Monomial {
        Monomial(self.0.iter().map(|&a| a.min(1)).collect())
    }

    /// Sets the exponents on `vars` to zero.
    pub fn erase(&self, vars: &[usize]) -> Monomial {
        let mut e = self.0.clone();
        for &i in vars {
            e[i] = 0;
        }
        Monomial(e)
    }

    /// Product of the variables not in `cone`, i.e. `x^σ̂`.
    pub fn complement(nvars: usize, cone: &[usize]) -> Monomial {
        Monomial((0..nvars).map(|i| u32::from(!cone.contains(&i))).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Monomial {
    type Err = ToricError;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                t.trim().parse::<u32>().map_err(|_| {
                    ToricError::InvalidArgument(format!("bad exponent {:?} in monomial {s:?}", t))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }
}

/// `S_α` for `α = [D]`, monomials in decreasing lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub class: DivisorClass,
    pub monomials: Vec<Monomial>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }
}

fn exponents_of_character(fan: &Fan, m: &[i64], d: &[i64]) -> Monomial {
    let shifted: Vec<i64> = fan
        .divisor_of_character(m)
        .iter()
        .zip(d)
        .map(|(a, b)| a + b)
        .collect();
    Monomial::from_divisor(&shifted).expect("lattice point outside P_D")
}

fn points_of(fan: &Fan, d: &[i64]) -> Result<Vec<Vec<i64>>> {
    let p = HPolytope::for_divisor(fan, d)?;
    lattice_points(&p).map_err(|e| match e {
        ToricError::UnboundedPolytope => ToricError::InfinitePiece,
        other => other,
    })
}

/// All monomials `x^{D_m + D}` for `m ∈ P_D ∩ M`.
pub fn monomials_of_degree(fan: &Fan, d: &[i64]) -> Result<GradedPiece> {
    check_len(fan.ray_count(), d.len())?;
    let class = ClassGroup::new(fan).degree(d)?;
    let mut monomials: Vec<Monomial> = points_of(fan, d)?
        .iter()
        .map(|m| exponents_of_character(fan, m, d))
        .collect();
    monomials.sort_by(|a, b| b.cmp(a));
    Ok(GradedPiece { class, monomials })
}

/// `dim S_[D] = |P_D ∩ M|`.
pub fn dim_graded_piece(fan: &Fan, d: &[i64]) -> Result<usize> {
    check_len(fan.ray_count(), d.len())?;
    Ok(points_of(fan, d)?.len())
}

/// `x^D < x^E`: some proper multiple of `x^D` has the degree of `x^E`.
pub fn monomial_lt(fan: &Fan, d: &Monomial, e: &Monomial) -> Result<bool> {
    check_len(fan.ray_count(), d.nvars())?;
    check_len(fan.ray_count(), e.nvars())?;
    if !fan.is_complete() {
        return Err(ToricError::NotComplete);
    }
    let diff: Vec<i64> = e
        .to_divisor()
        .iter()
        .zip(d.to_divisor())
        .map(|(a, b)| a - b)
        .collect();
    Ok(points_of(fan, &diff)?.iter().any(|m| {
        fan.divisor_of_character(m)
            .iter()
            .zip(&diff)
            .any(|(a, b)| a + b != 0)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classgroup::same_degree;
    use crate::fixtures;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Searches `x^F = x^D x^G` with `0 < |G| <= max_total` and `[F] = [E]`.
    fn brute_lt(fan: &Fan, d: &Monomial, e: &Monomial, max_total: u32) -> bool {
        let n = d.nvars();
        let mut extra = vec![0u32; n];
        loop {
            if extra.iter().sum::<u32>() > 0 {
                let f = Monomial::new(
                    d.exponents()
                        .iter()
                        .zip(&extra)
                        .map(|(a, b)| a + b)
                        .collect(),
                );
                if same_degree(fan, &f.to_divisor(), &e.to_divisor())
                    .unwrap()
                    .is_some()
                {
                    return true;
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                extra[i] += 1;
                if extra.iter().sum::<u32>() <= max_total {
                    break;
                }
                extra[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn pieces_of_small_degree() {
        let p2 = fixtures::p2();
        let piece = monomials_of_degree(&p2, &[1, 0, 0]).unwrap();
        assert_eq!(
            piece.monomials,
            vec![mono(&[1, 0, 0]), mono(&[0, 1, 0]), mono(&[0, 0, 1])]
        );

        let p112 = fixtures::p112();
        let piece = monomials_of_degree(&p112, &[0, 0, 1]).unwrap();
        assert_eq!(
            piece.monomials,
            vec![
                mono(&[2, 0, 0]),
                mono(&[1, 1, 0]),
                mono(&[0, 2, 0]),
                mono(&[0, 0, 1])
            ]
        );
        assert_eq!(piece.class.to_string(), "2");

        for (_, fan) in fixtures::all().into_iter().filter(|(_, f)| f.is_complete()) {
            let zero = vec![0; fan.ray_count()];
            let piece = monomials_of_degree(&fan, &zero).unwrap();
            assert_eq!(piece.monomials, vec![Monomial::one(fan.ray_count())]);
        }
    }

    #[test]
    fn dimensions() {
        let p2 = fixtures::p2();
        for k in 0..=6 {
            assert_eq!(
                dim_graded_piece(&p2, &[k, 0, 0]).unwrap(),
                binomial(k as usize + 2, 2)
            );
        }
        assert_eq!(dim_graded_piece(&fixtures::p112(), &[1, 0, 0]).unwrap(), 2);
        assert_eq!(
            dim_graded_piece(&fixtures::p1p1(), &[1, 0, 1, 0]).unwrap(),
            4
        );
        assert_eq!(dim_graded_piece(&p2, &[-1, 0, 0]).unwrap(), 0);
    }

    #[test]
    fn infinite_piece_on_affine_fan() {
        assert_eq!(
            monomials_of_degree(&fixtures::a2(), &[0, 0]),
            Err(ToricError::InfinitePiece)
        );
    }

    #[test]
    fn order_examples() {
        let p112 = fixtures::p112();
        let x = mono(&[1, 0, 0]);
        let z = mono(&[0, 0, 1]);
        assert!(monomial_lt(&p112, &x, &z).unwrap());
        assert!(!monomial_lt(&p112, &z, &x).unwrap());
        assert!(!monomial_lt(&p112, &x, &x).unwrap());
        assert_eq!(
            monomial_lt(&fixtures::a2(), &mono(&[1, 0]), &mono(&[0, 1])),
            Err(ToricError::NotComplete)
        );
    }

    #[test]
    fn order_agrees_with_direct_search() {
        for fan in [fixtures::p2(), fixtures::p112(), fixtures::p1p1()] {
            let n = fan.ray_count();
            let all: Vec<Monomial> = (0..3u32.pow(n as u32))
                .map(|mut c| {
                    Monomial::new(
                        (0..n)
                            .map(|_| {
                                let e = c % 3;
                                c /= 3;
                                e
                            })
                            .collect(),
                    )
                })
                .filter(|m| m.total_degree() <= 2)
                .collect();
            for d in &all {
                for e in &all {
                    assert_eq!(
                        monomial_lt(&fan, d, e).unwrap(),
                        brute_lt(&fan, d, e, 4),
                        "{d} < {e}"
                    );
                }
            }
        }
    }

    #[test]
    fn text_form_round_trip() {
        let m: Monomial = "2,1,0".parse().unwrap();
        assert_eq!(m, mono(&[2, 1, 0]));
        assert_eq!(m.to_string(), "2,1,0");
        assert!("2,-1".parse::<Monomial>().is_err());
    }

    fn exps(n: usize) -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..=3, n).prop_map(Monomial::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn pieces_are_homogeneous(d in prop::collection::vec(-1i64..=3, 3)) {
            let fan = fixtures::p112();
            let piece = monomials_of_degree(&fan, &d).unwrap();
            for m in &piece.monomials {
                prop_assert!(same_degree(&fan, &m.to_divisor(), &d).unwrap().is_some());
            }
        }

        #[test]
        fn dimension_is_a_class_function(
            d in prop::collection::vec(0i64..=3, 3),
            m in prop::collection::vec(-2i64..=2, 2),
        ) {
            let fan = fixtures::p112();
            let e: Vec<i64> = d.iter().zip(fan.divisor_of_character(&m)).map(|(a, b)| a + b).collect();
            prop_assert_eq!(dim_graded_piece(&fan, &d).unwrap(), dim_graded_piece(&fan, &e).unwrap());
        }

        #[test]
        fn products_land_in_sum_of_classes(
            a in prop::collection::vec(0i64..=2, 4),
            b in prop::collection::vec(0i64..=2, 4),
        ) {
            let fan = fixtures::p1p1();
            let cg = ClassGroup::new(&fan);
            let pa = monomials_of_degree(&fan, &a).unwrap();
            let pb = monomials_of_degree(&fan, &b).unwrap();
            let sum = &pa.class + &pb.class;
            for x in &pa.monomials {
                for y in &pb.monomials {
                    prop_assert_eq!(&cg.degree(&x.mul(y).to_divisor()).unwrap(), &sum);
                }
            }
        }

        #[test]
        fn order_is_multiplicative(d in exps(3), e in exps(3), f in exps(3)) {
            let fan = fixtures::p2();
            if monomial_lt(&fan, &d, &e).unwrap() {
                prop_assert!(monomial_lt(&fan, &d.mul(&f), &e.mul(&f)).unwrap());
            }
        }
    }
}
