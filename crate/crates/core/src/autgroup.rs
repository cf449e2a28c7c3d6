//! Roots of a complete fan, the degree partition of the variables, dimensions
//! of the automorphism groups and the finite group `Aut(N, Δ)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::classgroup::{same_degree, ClassGroup, DivisorClass};
use crate::coxring::{dim_graded_piece, monomials_of_degree, Monomial};
use crate::error::{check_len, Result, ToricError};
use crate::fan::Fan;
use crate::intlin::{solve_integer, IntMatrix};
use crate::quotient::HomogPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootKind {
    Semisimple,
    Unipotent,
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootKind::Semisimple => write!(f, "semisimple"),
            RootKind::Unipotent => write!(f, "unipotent"),
        }
    }
}

/// `m ∈ M` with `<m, n_ρ> = 1` and `<m, n_ρ'> <= 0` otherwise, paired with the
/// monomial `x^D` of degree `[D_ρ]` it corresponds to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub m: Vec<i64>,
    pub ray: usize,
    pub target: Monomial,
    pub kind: RootKind,
}

impl Root {
    /// `y_m(λ)`: `x_ρ ↦ x_ρ + λ x^D`, other coordinates fixed.
    pub fn apply(&self, p: &HomogPoint, lambda: &BigRational) -> HomogPoint {
        let mut coords = p.coords().to_vec();
        coords[self.ray] = &coords[self.ray] + lambda * p.eval(&self.target);
        HomogPoint::new(coords)
    }
}

pub fn apply_root_automorphism(
    fan: &Fan,
    p: &HomogPoint,
    root: &Root,
    lambda: &BigRational,
) -> Result<HomogPoint> {
    check_len(fan.ray_count(), p.len())?;
    Ok(root.apply(p, lambda))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeClass {
    pub rays: Vec<usize>,
    pub class: DivisorClass,
    /// `dim S_α` for the common degree `α`.
    pub dim: usize,
}

/// The partition of `Δ(1)` by the degrees of the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreePartition {
    pub classes: Vec<DegreeClass>,
}

impl DegreePartition {
    pub fn class_of(&self, ray: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.rays.contains(&ray))
            .expect("partition covers every ray")
    }
}

fn unit(d: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; d];
    e[i] = 1;
    e
}

pub fn degree_partition(fan: &Fan) -> Result<DegreePartition> {
    let d = fan.ray_count();
    let cg = ClassGroup::new(fan);
    let mut classes: Vec<DegreeClass> = Vec::new();
    for rho in 0..d {
        let mut placed = false;
        for c in classes.iter_mut() {
            if same_degree(fan, &unit(d, rho), &unit(d, c.rays[0]))?.is_some() {
                c.rays.push(rho);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(DegreeClass {
                rays: vec![rho],
                class: cg.ray_degrees()[rho].clone(),
                dim: dim_graded_piece(fan, &unit(d, rho))?,
            });
        }
    }
    Ok(DegreePartition { classes })
}

/// Every root, ordered by ray and then by decreasing lexicographic target.
pub fn roots(fan: &Fan) -> Result<Vec<Root>> {
    let d = fan.ray_count();
    let a = fan.ray_matrix();
    let mut out = Vec::new();
    for rho in 0..d {
        let own = Monomial::var(d, rho);
        for target in monomials_of_degree(fan, &unit(d, rho))?.monomials {
            if target == own {
                continue;
            }
            let rhs: Vec<BigInt> = (0..d)
                .map(|i| BigInt::from(i64::from(i == rho) - i64::from(target.exponents()[i])))
                .collect();
            let m: Vec<i64> = solve_integer(&a, &rhs)
                .expect("monomial of the same degree yields a character")
                .iter()
                .map(|x| x.to_i64().expect("root overflows i64"))
                .collect();
            let kind = if target.as_variable().is_some() {
                RootKind::Semisimple
            } else {
                RootKind::Unipotent
            };
            out.push(Root {
                m,
                ray: rho,
                target,
                kind,
            });
        }
    }
    Ok(out)
}

/// A lattice automorphism of `N` permuting the rays and the maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanAutomorphism {
    pub matrix: IntMatrix,
    /// `matrix · n_ρ = n_{ray_permutation[ρ]}`.
    pub ray_permutation: Vec<usize>,
}

impl FanAutomorphism {
    pub fn preserves_classes(&self, partition: &DegreePartition) -> bool {
        partition.classes.iter().all(|c| {
            c.rays
                .iter()
                .all(|&r| c.rays.contains(&self.ray_permutation[r]))
        })
    }
}

/// First `n` linearly independent rays, greedily.
fn spanning_rays(fan: &Fan) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..fan.ray_count() {
        let mut rows: Vec<Vec<i64>> = chosen.iter().map(|&j| fan.rays()[j].clone()).collect();
        rows.push(fan.rays()[i].clone());
        if IntMatrix::from_rows(&rows, fan.dim()).rank() == rows.len() {
            chosen.push(i);
        }
        if chosen.len() == fan.dim() {
            break;
        }
    }
    chosen
}

fn injective_assignments(k: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..d {
            if !cur.contains(&i) {
                cur.push(i);
                rec(k, d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(k, d, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Matrix `φ` with `φ · n_b = n_{image_b}` for the basis rays, if integral.
fn solve_linear_map(fan: &Fan, basis: &[usize], images: &[usize]) -> Option<IntMatrix> {
    let n = fan.dim();
    let a = IntMatrix::from_rows(
        &basis
            .iter()
            .map(|&b| fan.rays()[b].clone())
            .collect::<Vec<_>>(),
        n,
    );
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let rhs: Vec<BigInt> = images
            .iter()
            .map(|&j| BigInt::from(fan.rays()[j][i]))
            .collect();
        rows.push(solve_integer(&a, &rhs)?);
    }
    Some(IntMatrix::from_rows(&rows, n))
}

/// `Aut(N, Δ)`, sorted by ray permutation (the identity first).
pub fn fan_automorphisms(fan: &Fan) -> Vec<FanAutomorphism> {
    let d = fan.ray_count();
    let n = fan.dim();
    let basis = spanning_rays(fan);
    let ray_index: HashMap<&Vec<i64>, usize> =
        fan.rays().iter().enumerate().map(|(i, r)| (r, i)).collect();
    let cones: BTreeSet<Vec<usize>> = fan.max_cones().iter().cloned().collect();

    let mut out = Vec::new();
    for images in injective_assignments(n, d) {
        let Some(phi) = solve_linear_map(fan, &basis, &images) else {
            continue;
        };
        if !phi.det().abs().is_one() {
            continue;
        }
        let perm: Option<Vec<usize>> = fan
            .rays()
            .iter()
            .map(|r| {
                let img: Vec<i64> = phi
                    .mul_vec(&r.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
                    .iter()
                    .map(|x| x.to_i64().expect("image overflows i64"))
                    .collect();
                ray_index.get(&img).copied()
            })
            .collect();
        let Some(perm) = perm else {
            continue;
        };
        let mapped: BTreeSet<Vec<usize>> = fan
            .max_cones()
            .iter()
            .map(|c| {
                let mut img: Vec<usize> = c.iter().map(|&i| perm[i]).collect();
                img.sort_unstable();
                img
            })
            .collect();
        if mapped == cones {
            out.push(FanAutomorphism {
                matrix: phi,
                ray_permutation: perm,
            });
        }
    }
    out.sort_by(|a, b| a.ray_permutation.cmp(&b.ray_permutation));
    out
}

/// Orders entering the component group `Aut(X)/Aut^0(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentGroup {
    pub fan_automorphisms: usize,
    /// Elements of `Aut(N, Δ)` preserving every degree class.
    pub weyl: usize,
    /// `Π |Δ_i|!`.
    pub weyl_expected: u128,
    pub order: usize,
}

fn require_complete_simplicial(fan: &Fan, simplicial: bool) -> Result<()> {
    if !fan.is_complete() {
        return Err(ToricError::NotComplete);
    }
    if simplicial && !fan.is_simplicial() {
        return Err(ToricError::NotSimplicialFan);
    }
    Ok(())
}

fn component_group_of(fan: &Fan, partition: &DegreePartition) -> ComponentGroup {
    let auts = fan_automorphisms(fan);
    let weyl = auts
        .iter()
        .filter(|a| a.preserves_classes(partition))
        .count();
    let weyl_expected = partition
        .classes
        .iter()
        .map(|c| (1..=c.rays.len() as u128).product::<u128>())
        .product();
    ComponentGroup {
        fan_automorphisms: auts.len(),
        weyl,
        weyl_expected,
        order: auts.len() / weyl,
    }
}

pub fn component_group(fan: &Fan) -> Result<ComponentGroup> {
    require_complete_simplicial(fan, true)?;
    Ok(component_group_of(fan, &degree_partition(fan)?))
}

pub fn component_group_order(fan: &Fan) -> Result<usize> {
    component_group(fan).map(|c| c.order)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutReport {
    pub dim_aut_tilde: usize,
    pub dim_unipotent_radical: usize,
    pub dim_reductive_part: usize,
    pub dim_g: usize,
    /// Absent when the simplicial hypothesis was relaxed and fails.
    pub dim_aut_x: Option<usize>,
    pub semisimple_roots: usize,
    pub unipotent_roots: usize,
    pub component_group: Option<ComponentGroup>,
}

/// Dimension formulas for `Aut~(X)`, its unipotent radical and reductive
/// part, `G` and `Aut(X)`. With `require_simplicial = false` a complete
/// non-simplicial fan is accepted and only the quantities not depending on
/// simpliciality are reported.
pub fn aut_dimensions(fan: &Fan, require_simplicial: bool) -> Result<AutReport> {
    require_complete_simplicial(fan, require_simplicial)?;
    let simplicial = fan.is_simplicial();
    let partition = degree_partition(fan)?;
    let (mut tilde, mut unipotent, mut reductive) = (0, 0, 0);
    for c in &partition.classes {
        let k = c.rays.len();
        tilde += k * c.dim;
        unipotent += k * (c.dim - k);
        reductive += k * k;
    }
    let dim_g = fan.ray_count() - fan.dim();
    let rs = roots(fan)?;
    let semisimple_roots = rs.iter().filter(|r| r.kind == RootKind::Semisimple).count();
    Ok(AutReport {
        dim_aut_tilde: tilde,
        dim_unipotent_radical: unipotent,
        dim_reductive_part: reductive,
        dim_g,
        dim_aut_x: simplicial.then(|| tilde - dim_g),
        semisimple_roots,
        unipotent_roots: rs.len() - semisimple_roots,
        component_group: simplicial.then(|| component_group_of(fan, &partition)),
    })
}
