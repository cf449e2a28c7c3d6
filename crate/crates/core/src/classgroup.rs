//! The class group `A_{n-1}(X)` as the cokernel of `M -> Z^{Δ(1)}`, degrees of
//! divisors, Cartier and Picard data, and the weights describing `G`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{check_len, Result};
use crate::fan::Fan;
use crate::intlin::{
    big_vec, cokernel, hermite_normal_form, lattice_intersection, solve_integer, Cokernel,
    FinAbGroup, IntMatrix,
};

/// An element of a finitely generated abelian group in canonical
/// coordinates: a free part and torsion residues in `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
    pub moduli: Vec<BigInt>,
}

impl DivisorClass {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }

    fn reduce(mut self) -> Self {
        for (t, d) in self.torsion.iter_mut().zip(&self.moduli) {
            *t = t.mod_floor(d);
        }
        self
    }

    /// All coordinates, free part first.
    pub fn coordinates(&self) -> Vec<BigInt> {
        self.free.iter().chain(&self.torsion).cloned().collect()
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.moduli, rhs.moduli, "classes from different groups");
        DivisorClass {
            free: self
                .free
                .iter()
                .zip(&rhs.free)
                .map(|(a, b)| a + b)
                .collect(),
            torsion: self
                .torsion
                .iter()
                .zip(&rhs.torsion)
                .map(|(a, b)| a + b)
                .collect(),
            moduli: self.moduli.clone(),
        }
        .reduce()
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            free: self.free.iter().map(|a| -a).collect(),
            torsion: self.torsion.iter().map(|a| -a).collect(),
            moduli: self.moduli.clone(),
        }
        .reduce()
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self + &(-rhs)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.free.iter().map(ToString::to_string).collect();
        parts.extend(
            self.torsion
                .iter()
                .zip(&self.moduli)
                .map(|(t, d)| format!("{t} mod {d}")),
        );
        match parts.len() {
            0 => write!(f, "0"),
            1 => write!(f, "{}", parts[0]),
            _ => write!(f, "({})", parts.join(",")),
        }
    }
}

/// `A_{n-1}(X)` together with the degree map `Z^{Δ(1)} -> A_{n-1}(X)`.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    cokernel: Cokernel,
    degrees: Vec<DivisorClass>,
}

impl ClassGroup {
    pub fn new(fan: &Fan) -> ClassGroup {
        let cokernel = cokernel(&fan.ray_matrix());
        let d = fan.ray_count();
        let mut cg = ClassGroup {
            cokernel,
            degrees: Vec::with_capacity(d),
        };
        cg.degrees = (0..d)
            .map(|i| {
                let mut e = vec![0; d];
                e[i] = 1;
                cg.project(&e)
            })
            .collect();
        cg
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.cokernel.group
    }

    /// `[D_ρ]` for every ray, in ray order.
    pub fn ray_degrees(&self) -> &[DivisorClass] {
        &self.degrees
    }

    pub fn zero(&self) -> DivisorClass {
        let g = self.group();
        DivisorClass {
            free: vec![BigInt::zero(); g.free_rank],
            torsion: vec![BigInt::zero(); g.torsion_invariants.len()],
            moduli: g.torsion_invariants.clone(),
        }
    }

    fn project(&self, d: &[i64]) -> DivisorClass {
        let (free, torsion) = self.cokernel.project(&big_vec(d));
        DivisorClass {
            free,
            torsion,
            moduli: self.group().torsion_invariants.clone(),
        }
    }

    /// `[D]` for `D = Σ a_ρ D_ρ`.
    pub fn degree(&self, d: &[i64]) -> Result<DivisorClass> {
        check_len(self.degrees.len(), d.len())?;
        Ok(self.project(d))
    }

    /// Rebuilds a class from its coordinate vector (free part first).
    pub fn class_from_coordinates(&self, coords: &[BigInt]) -> DivisorClass {
        let f = self.group().free_rank;
        DivisorClass {
            free: coords[..f].to_vec(),
            torsion: coords[f..].to_vec(),
            moduli: self.group().torsion_invariants.clone(),
        }
        .reduce()
    }
}

pub fn class_group(fan: &Fan) -> ClassGroup {
    ClassGroup::new(fan)
}

/// Some `m ∈ M` with `D - E = D_m`, if `D` and `E` have the same degree.
pub fn same_degree(fan: &Fan, d: &[i64], e: &[i64]) -> Result<Option<Vec<i64>>> {
    check_len(fan.ray_count(), d.len())?;
    check_len(fan.ray_count(), e.len())?;
    let diff: Vec<BigInt> = d.iter().zip(e).map(|(a, b)| BigInt::from(a - b)).collect();
    Ok(solve_integer(&fan.ray_matrix(), &diff).map(|m| to_i64(&m)))
}

fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter()
        .map(|x| x.to_i64().expect("coordinate overflows i64"))
        .collect()
}

/// `D` is Cartier: on every maximal cone, `<m, n_ρ> = -a_ρ` has an integer solution.
pub fn is_cartier(fan: &Fan, d: &[i64]) -> Result<bool> {
    check_len(fan.ray_count(), d.len())?;
    Ok(fan.cones().all(|cone| {
        let a = IntMatrix::from_rows(&cone.generators(), fan.dim());
        let rhs: Vec<BigInt> = cone
            .ray_indices()
            .iter()
            .map(|&i| BigInt::from(-d[i]))
            .collect();
        solve_integer(&a, &rhs).is_some()
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PicardIndex {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for PicardIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PicardIndex::Finite(n) => write!(f, "{n}"),
            PicardIndex::Infinite => write!(f, "infinite"),
        }
    }
}

/// `Pic(X)` as a subgroup of `A_{n-1}(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardSubgroup {
    pub generators: Vec<DivisorClass>,
    pub index: PicardIndex,
    /// Basis (columns) of `Div_T(X) ⊂ Z^{Δ(1)}`.
    pub cartier_lattice: IntMatrix,
}

/// The lattice of divisors that are Cartier on one cone: the image of `M` on
/// the cone's rays, free on the remaining rays.
fn cone_cartier_lattice(fan: &Fan, rays: &[usize]) -> IntMatrix {
    let d = fan.ray_count();
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for k in 0..fan.dim() {
        gens.push(
            (0..d)
                .map(|i| {
                    if rays.contains(&i) {
                        fan.rays()[i][k]
                    } else {
                        0
                    }
                })
                .collect(),
        );
    }
    for i in (0..d).filter(|i| !rays.contains(i)) {
        let mut e = vec![0; d];
        e[i] = 1;
        gens.push(e);
    }
    IntMatrix::from_cols(&gens, d)
}

pub fn picard_subgroup(fan: &Fan) -> PicardSubgroup {
    let d = fan.ray_count();
    let mut lattice = IntMatrix::identity(d);
    for cone in fan.cones() {
        lattice = lattice_intersection(&lattice, &cone_cartier_lattice(fan, cone.ray_indices()));
    }

    // A / Pic = Z^Δ(1) / Div_T, since the image of M lies in Div_T.
    let quotient = cokernel(&lattice);
    let index = if quotient.group.free_rank > 0 {
        PicardIndex::Infinite
    } else {
        PicardIndex::Finite(
            quotient
                .group
                .torsion_invariants
                .iter()
                .fold(BigInt::one(), |acc, x| acc * x),
        )
    };

    let cg = ClassGroup::new(fan);
    let g = cg.group().clone();
    let width = g.coordinate_count();
    let mut rows: Vec<Vec<BigInt>> = (0..lattice.cols())
        .map(|j| {
            let col: Vec<i64> = to_i64(&lattice.col(j));
            cg.project(&col).coordinates()
        })
        .collect();
    for (i, m) in g.torsion_invariants.iter().enumerate() {
        let mut r = vec![BigInt::zero(); width];
        r[g.free_rank + i] = m.clone();
        rows.push(r);
    }
    let generators = hermite_normal_form(&IntMatrix::from_rows(&rows, width))
        .to_rows()
        .iter()
        .map(|r| cg.class_from_coordinates(r))
        .filter(|c| !c.is_zero())
        .collect();

    PicardSubgroup {
        generators,
        index,
        cartier_lattice: lattice,
    }
}

/// `G = Hom(A_{n-1}(X), C*)` acting on `C^{Δ(1)}`: the torus part acts on
/// `x_ρ` with weight row `torus_weights[ρ]`, and the cyclic factor `Z/d_i`
/// acts through the residue `torsion_characters[i][ρ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupGDescription {
    pub torus_weights: Vec<Vec<BigInt>>,
    pub torsion_invariants: Vec<BigInt>,
    pub torsion_characters: Vec<Vec<BigInt>>,
}

impl GroupGDescription {
    pub fn torus_dim(&self) -> usize {
        self.torus_weights.first().map_or(0, Vec::len)
    }
}

pub fn group_g_description(fan: &Fan) -> GroupGDescription {
    let cg = ClassGroup::new(fan);
    let k = cg.group().torsion_invariants.len();
    GroupGDescription {
        torus_weights: cg.ray_degrees().iter().map(|c| c.free.clone()).collect(),
        torsion_invariants: cg.group().torsion_invariants.clone(),
        torsion_characters: (0..k)
            .map(|i| {
                cg.ray_degrees()
                    .iter()
                    .map(|c| c.torsion[i].clone())
                    .collect()
            })
            .collect(),
    }
}
