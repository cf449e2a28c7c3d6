//! Rational polyhedral fans: validation, cone predicates, faces with
//! witnesses, lattice points of `P_D`, and Hilbert bases of dual cones.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{check_len, FanViolation, Result, ToricError};
use crate::intlin::{kernel_basis, primitive, smith_normal_form, IntMatrix};
use crate::polyhedral::{coordinate_range, find_point, is_feasible, Constraint};

/// A fan in `N = Z^dim`: primitive rays in input order and the maximal cones
/// as sorted ray-index sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

/// Validates a candidate fan and collects every violated invariant.
///
/// Listed cones whose ray sets are contained in another listed cone are
/// dropped, so `max_cones` holds only maximal cones.
pub fn validate_fan(dim: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Fan> {
    let mut violations = Vec::new();
    for (i, r) in rays.iter().enumerate() {
        if r.len() != dim {
            violations.push(FanViolation::WrongRayLength {
                ray: i,
                len: r.len(),
            });
        }
    }
    let mut cones: Vec<Vec<usize>> = cones
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c.dedup();
            c
        })
        .collect();
    for (ci, c) in cones.iter().enumerate() {
        if c.is_empty() {
            violations.push(FanViolation::EmptyCone { cone: ci });
        }
        for &idx in c {
            if idx >= rays.len() {
                violations.push(FanViolation::RayIndexOutOfRange {
                    cone: ci,
                    index: idx,
                });
            }
        }
    }
    if !violations.is_empty() {
        return Err(ToricError::InvalidFan(violations));
    }

    for (i, r) in rays.iter().enumerate() {
        let g = r.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g != 1 {
            violations.push(FanViolation::NonPrimitiveRay { ray: i });
        }
    }
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            if rays[i] == rays[j] {
                violations.push(FanViolation::DuplicateRay {
                    first: i,
                    second: j,
                });
            }
        }
    }
    let rank = IntMatrix::from_rows(&rays, dim).rank();
    if rank != dim {
        violations.push(FanViolation::RaysDoNotSpan { rank });
    }

    let mut convex = vec![true; cones.len()];
    for (ci, c) in cones.iter().enumerate() {
        let gens: Vec<&[i64]> = c.iter().map(|&i| rays[i].as_slice()).collect();
        if !strongly_convex(&gens, dim) {
            violations.push(FanViolation::NotStronglyConvex { cone: ci });
            convex[ci] = false;
            continue;
        }
        for (pos, &ri) in c.iter().enumerate() {
            if !is_extremal(&gens, pos, dim) {
                violations.push(FanViolation::RayNotFaceOfCone { cone: ci, ray: ri });
            }
        }
        for (ri, r) in rays.iter().enumerate() {
            if !c.contains(&ri) && in_cone(&gens, r, dim) {
                violations.push(FanViolation::RayNotFaceOfCone { cone: ci, ray: ri });
            }
        }
    }
    for a in 0..cones.len() {
        for b in a + 1..cones.len() {
            if convex[a] && convex[b] && !meet_in_common_face(&rays, &cones[a], &cones[b], dim) {
                violations.push(FanViolation::BadIntersection {
                    first: a,
                    second: b,
                });
            }
        }
    }
    if !violations.is_empty() {
        return Err(ToricError::InvalidFan(violations));
    }

    // Drop listed cones that are faces of other listed cones.
    let snapshot = cones.clone();
    let mut seen = HashSet::new();
    cones.retain(|c| {
        let dominated = snapshot
            .iter()
            .any(|o| o.len() > c.len() && c.iter().all(|i| o.contains(i)));
        !dominated && seen.insert(c.clone())
    });

    Ok(Fan {
        dim,
        rays,
        max_cones: cones,
    })
}

/// `exists m : <m, g> >= 1` for every generator.
fn strongly_convex(gens: &[&[i64]], dim: usize) -> bool {
    let sys: Vec<Constraint> = gens.iter().map(|g| Constraint::ge(g, 1)).collect();
    is_feasible(&sys, dim)
}

/// The generator at `pos` spans a face: some `m` vanishes on it and is
/// positive on the others.
fn is_extremal(gens: &[&[i64]], pos: usize, dim: usize) -> bool {
    let sys: Vec<Constraint> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            if i == pos {
                Constraint::eq(g, 0)
            } else {
                Constraint::ge(g, 1)
            }
        })
        .collect();
    is_feasible(&sys, dim)
}

/// `v` is a nonnegative combination of `gens`.
fn in_cone(gens: &[&[i64]], v: &[i64], dim: usize) -> bool {
    let k = gens.len();
    let mut sys = Vec::with_capacity(dim + k);
    for row in 0..dim {
        let coeffs: Vec<i64> = gens.iter().map(|g| g[row]).collect();
        sys.push(Constraint::eq(&coeffs, v[row]));
    }
    for i in 0..k {
        let mut e = vec![0; k];
        e[i] = 1;
        sys.push(Constraint::ge(&e, 0));
    }
    is_feasible(&sys, k)
}

/// Separation test: some `m` vanishes on the common rays, is positive on the
/// rest of `a` and negative on the rest of `b`. Then `a ∩ b` is the cone on
/// the common rays, a face of both.
fn meet_in_common_face(rays: &[Vec<i64>], a: &[usize], b: &[usize], dim: usize) -> bool {
    let mut sys = Vec::new();
    for &i in a {
        if b.contains(&i) {
            sys.push(Constraint::eq(&rays[i], 0));
        } else {
            sys.push(Constraint::ge(&rays[i], 1));
        }
    }
    for &i in b {
        if !a.contains(&i) {
            let neg: Vec<i64> = rays[i].iter().map(|x| -x).collect();
            sys.push(Constraint::ge(&neg, 1));
        }
    }
    is_feasible(&sys, dim)
}

/// Scales a rational solution of a homogeneous system (`= 0`, `>= 1`) to a
/// primitive integer vector satisfying the same system.
fn integral_witness(x: &[BigRational]) -> Vec<i64> {
    let l = x.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = x.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    primitive(&ints)
        .iter()
        .map(|v| v.to_i64().expect("witness coordinate overflows i64"))
        .collect()
}

pub(crate) fn pair(m: &[i64], n: &[i64]) -> i64 {
    m.iter().zip(n).map(|(a, b)| a * b).sum()
}

/// A face of a cone together with an integer `m` in the dual cone whose
/// orthogonal hyperplane cuts out exactly that face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub rays: Vec<usize>,
    pub witness: Vec<i64>,
}

/// A cone of a fan, given by a sorted set of ray indices.
#[derive(Clone, Copy, Debug)]
pub struct ConeView<'a> {
    fan: &'a Fan,
    rays: &'a [usize],
}

impl<'a> ConeView<'a> {
    pub fn ray_indices(&self) -> &'a [usize] {
        self.rays
    }

    pub fn generators(&self) -> Vec<Vec<i64>> {
        self.rays
            .iter()
            .map(|&i| self.fan.rays[i].clone())
            .collect()
    }

    /// Dimension of the linear span of the cone.
    pub fn dim(&self) -> usize {
        IntMatrix::from_rows(&self.generators(), self.fan.dim).rank()
    }

    pub fn is_simplicial(&self) -> bool {
        self.dim() == self.rays.len()
    }

    /// Simplicial with all invariant factors of the generator matrix equal to 1.
    pub fn is_smooth(&self) -> bool {
        if !self.is_simplicial() {
            return false;
        }
        let snf = smith_normal_form(&IntMatrix::from_rows(&self.generators(), self.fan.dim));
        snf.diagonal().iter().all(One::is_one)
    }

    /// `<m, n_rho> >= 0` for every ray of the cone.
    pub fn dual_contains(&self, m: &[i64]) -> bool {
        self.rays.iter().all(|&i| pair(m, &self.fan.rays[i]) >= 0)
    }

    /// All faces, from the zero face up to the cone itself, each with a witness.
    pub fn faces(&self) -> Vec<Face> {
        let k = self.rays.len();
        let dim = self.fan.dim;
        let mut out = Vec::new();
        for mask in 0u32..(1u32 << k) {
            let sys: Vec<Constraint> = (0..k)
                .map(|p| {
                    let g = &self.fan.rays[self.rays[p]];
                    if mask & (1 << p) != 0 {
                        Constraint::eq(g, 0)
                    } else {
                        Constraint::ge(g, 1)
                    }
                })
                .collect();
            if let Some(x) = find_point(&sys, dim) {
                let rays = (0..k)
                    .filter(|p| mask & (1 << p) != 0)
                    .map(|p| self.rays[p])
                    .collect();
                out.push(Face {
                    rays,
                    witness: integral_witness(&x),
                });
            }
        }
        out.sort_by(|a, b| (a.rays.len(), &a.rays).cmp(&(b.rays.len(), &b.rays)));
        out
    }

    /// Facets of a full-dimensional cone, as ray-index sets.
    fn facets(&self) -> Vec<Vec<usize>> {
        let n = self.fan.dim;
        let mut found = BTreeSet::new();
        for subset in combinations(self.rays.len(), n - 1) {
            let rows: Vec<Vec<i64>> = subset
                .iter()
                .map(|&p| self.fan.rays[self.rays[p]].clone())
                .collect();
            let basis = kernel_basis(&IntMatrix::from_rows(&rows, n));
            if basis.len() != 1 {
                continue;
            }
            let normal: Vec<i64> = basis[0].iter().map(|x| x.to_i64().unwrap()).collect();
            let values: Vec<i64> = self
                .rays
                .iter()
                .map(|&i| pair(&normal, &self.fan.rays[i]))
                .collect();
            let supporting = values.iter().all(|&v| v >= 0) || values.iter().all(|&v| v <= 0);
            if supporting {
                let facet: Vec<usize> = self
                    .rays
                    .iter()
                    .zip(&values)
                    .filter(|(_, &v)| v == 0)
                    .map(|(&i, _)| i)
                    .collect();
                found.insert(facet);
            }
        }
        found.into_iter().collect()
    }

    /// The unique minimal generating set of the semigroup `σ̌ ∩ M`, found by
    /// enumerating a coordinate box of half-width `bound`.
    ///
    /// When the cone is not full dimensional the dual contains the lattice
    /// `σ^⊥ ∩ M`; its basis is returned with both signs, and the pointed part
    /// is enumerated in coordinates adapted to that splitting.
    pub fn dual_hilbert_basis(&self, bound: i64) -> Result<Vec<Vec<i64>>> {
        dual_hilbert_basis(&self.generators(), self.fan.dim, bound)
    }
}

impl Fan {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn cone(&self, i: usize) -> ConeView<'_> {
        ConeView {
            fan: self,
            rays: &self.max_cones[i],
        }
    }

    pub fn cones(&self) -> impl Iterator<Item = ConeView<'_>> {
        (0..self.max_cones.len()).map(move |i| self.cone(i))
    }

    /// View of an arbitrary ray set; it must be a face of some maximal cone.
    pub fn cone_of<'a>(&'a self, rays: &'a [usize]) -> Result<ConeView<'a>> {
        let unknown = || ToricError::UnknownCone(rays.to_vec());
        if rays.windows(2).any(|w| w[0] >= w[1]) {
            return Err(unknown());
        }
        let is_face = self.cones().any(|c| {
            rays.iter().all(|i| c.rays.contains(i))
                && c.faces().iter().any(|f| f.rays.as_slice() == rays)
        });
        if is_face {
            Ok(ConeView { fan: self, rays })
        } else {
            Err(unknown())
        }
    }

    /// Ray matrix, one row per ray: the map `M -> Z^{Δ(1)}`, `m -> (<m, n_ρ>)_ρ`.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.rays, self.dim)
    }

    /// `(<m, n_ρ>)_ρ`, the divisor `D_m`.
    pub fn divisor_of_character(&self, m: &[i64]) -> Vec<i64> {
        self.rays.iter().map(|r| pair(m, r)).collect()
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones().all(|c| c.is_simplicial())
    }

    pub fn is_smooth(&self) -> bool {
        self.cones().all(|c| c.is_smooth())
    }

    /// Shared-facet criterion: every maximal cone is full dimensional, each
    /// facet of a maximal cone lies in exactly one other maximal cone, and the
    /// facet-adjacency graph is connected.
    pub fn is_complete(&self) -> bool {
        if self.cones().any(|c| c.dim() != self.dim) {
            return false;
        }
        let facets: Vec<Vec<Vec<usize>>> = self.cones().map(|c| c.facets()).collect();
        let k = self.max_cones.len();
        let mut adjacency = vec![Vec::new(); k];
        for (ci, fs) in facets.iter().enumerate() {
            for f in fs {
                let owners: Vec<usize> = (0..k)
                    .filter(|&o| o != ci && facets[o].contains(f))
                    .collect();
                if owners.len() != 1 {
                    return false;
                }
                adjacency[ci].push(owners[0]);
            }
        }
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for &o in &adjacency[c] {
                if !seen[o] {
                    seen[o] = true;
                    stack.push(o);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// `{m : <m, normal_i> >= -offset_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    pub dim: usize,
    pub normals: Vec<Vec<i64>>,
    pub offsets: Vec<i64>,
}

impl HPolytope {
    /// `P_D` for `D = Σ a_ρ D_ρ`.
    pub fn for_divisor(fan: &Fan, a: &[i64]) -> Result<HPolytope> {
        check_len(fan.ray_count(), a.len())?;
        Ok(HPolytope {
            dim: fan.dim,
            normals: fan.rays.clone(),
            offsets: a.to_vec(),
        })
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        self.normals
            .iter()
            .zip(&self.offsets)
            .all(|(n, &a)| pair(m, n) as i128 >= -(a as i128))
    }

    fn constraints(&self) -> Vec<Constraint> {
        self.normals
            .iter()
            .zip(&self.offsets)
            .map(|(n, &a)| Constraint::ge(n, -a))
            .collect()
    }
}

/// Integer points of a bounded polytope: Fourier–Motzkin bounds per
/// coordinate, then a box scan with exact membership tests.
pub fn lattice_points(p: &HPolytope) -> Result<Vec<Vec<i64>>> {
    let sys = p.constraints();
    let mut ranges = Vec::with_capacity(p.dim);
    for k in 0..p.dim {
        match coordinate_range(&sys, p.dim, k) {
            None => return Ok(Vec::new()),
            Some((Some(lo), Some(hi))) => {
                let lo = lo.ceil().to_integer().to_i64().expect("bound overflow");
                let hi = hi.floor().to_integer().to_i64().expect("bound overflow");
                if lo > hi {
                    return Ok(Vec::new());
                }
                ranges.push((lo, hi));
            }
            Some(_) => return Err(ToricError::UnboundedPolytope),
        }
    }
    let mut out = Vec::new();
    box_scan(&ranges, |m| {
        if p.contains(m) {
            out.push(m.to_vec());
        }
    });
    Ok(out)
}

/// Calls `f` on every integer point of the box, in lexicographic order.
pub(crate) fn box_scan(ranges: &[(i64, i64)], mut f: impl FnMut(&[i64])) {
    if ranges.iter().any(|&(lo, hi)| lo > hi) {
        return;
    }
    let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        f(&cur);
        let mut k = ranges.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if cur[k] < ranges[k].1 {
                cur[k] += 1;
                break;
            }
            cur[k] = ranges[k].0;
        }
    }
}

/// All `size`-element subsets of `0..n`, in lexicographic order.
pub(crate) fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(0, n, size, &mut cur, &mut out);
    out
}

/// Hilbert basis of `{m ∈ Z^dim : <m, g> >= 0 for all g in gens}`.
pub fn dual_hilbert_basis(gens: &[Vec<i64>], dim: usize, bound: i64) -> Result<Vec<Vec<i64>>> {
    if bound < 1 {
        return Err(ToricError::BoundTooSmall { bound });
    }
    let r_mat = IntMatrix::from_rows(gens, dim);
    let snf = smith_normal_form(&r_mat);
    let rank = snf.rank();
    if rank == dim {
        return pointed_hilbert_basis(gens, dim, bound);
    }

    // m = V1 y + V2 z with V2 spanning σ^⊥ ∩ M.
    let v1: Vec<Vec<BigInt>> = (0..rank).map(|j| snf.v.col(j)).collect();
    let v1_mat = IntMatrix::from_cols(&v1, dim);
    let reduced = r_mat.mul(&v1_mat);
    let reduced_rows: Vec<Vec<i64>> = reduced
        .to_rows()
        .iter()
        .map(|row| row.iter().map(|x| x.to_i64().expect("overflow")).collect())
        .collect();
    let mut out: Vec<Vec<i64>> = pointed_hilbert_basis(&reduced_rows, rank, bound)?
        .iter()
        .map(|y| {
            let yb: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v)).collect();
            v1_mat
                .mul_vec(&yb)
                .iter()
                .map(|x| x.to_i64().expect("overflow"))
                .collect()
        })
        .collect();
    for l in kernel_basis(&r_mat) {
        let l: Vec<i64> = l.iter().map(|x| x.to_i64().expect("overflow")).collect();
        let neg: Vec<i64> = l.iter().map(|x| -x).collect();
        out.push(l);
        out.push(neg);
    }
    Ok(out)
}

/// Hilbert basis of the pointed cone `{y ∈ Z^r : A y >= 0}` where `A` has rank `r`.
fn pointed_hilbert_basis(a: &[Vec<i64>], r: usize, bound: i64) -> Result<Vec<Vec<i64>>> {
    if r == 0 {
        return Ok(Vec::new());
    }
    let inside = |y: &[i64]| a.iter().all(|row| pair(row, y) >= 0);
    // Σ_i (A y)_i is positive on the cone minus the origin.
    let weight: Vec<i64> = (0..r).map(|j| a.iter().map(|row| row[j]).sum()).collect();

    for ray in extreme_rays(a, r) {
        if ray.iter().any(|x| x.abs() > bound) {
            return Err(ToricError::BoundTooSmall { bound });
        }
    }

    let mut points = Vec::new();
    box_scan(&vec![(-bound, bound); r], |y| {
        if y.iter().any(|&v| v != 0) && inside(y) {
            points.push((pair(&weight, y), y.to_vec()));
        }
    });
    points.sort();

    let mut basis: Vec<Vec<i64>> = Vec::new();
    for (_, y) in &points {
        let reducible = basis.iter().any(|h| {
            let diff: Vec<i64> = y.iter().zip(h).map(|(a, b)| a - b).collect();
            inside(&diff)
        });
        if !reducible {
            basis.push(y.clone());
        }
    }

    // Every enumerated point must be a nonnegative combination of the basis,
    // using only decompositions that stay inside the box.
    let in_box: HashSet<&Vec<i64>> = points.iter().map(|(_, y)| y).collect();
    let mut generated: HashSet<Vec<i64>> = HashSet::new();
    for (_, y) in &points {
        let ok = basis.contains(y)
            || basis.iter().any(|h| {
                let diff: Vec<i64> = y.iter().zip(h).map(|(a, b)| a - b).collect();
                in_box.contains(&diff) && generated.contains(&diff)
            });
        if !ok {
            return Err(ToricError::BoundTooSmall { bound });
        }
        generated.insert(y.clone());
    }
    Ok(basis)
}

/// Primitive generators of the extreme rays of `{y : A y >= 0}` (rank `r`).
fn extreme_rays(a: &[Vec<i64>], r: usize) -> Vec<Vec<i64>> {
    let mut out = BTreeSet::new();
    for subset in combinations(a.len(), r - 1) {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&i| a[i].clone()).collect();
        let k = kernel_basis(&IntMatrix::from_rows(&rows, r));
        if k.len() != 1 {
            continue;
        }
        let v: Vec<i64> = k[0].iter().map(|x| x.to_i64().expect("overflow")).collect();
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        for cand in [v, neg] {
            if a.iter().all(|row| pair(row, &cand) >= 0) {
                out.insert(cand);
            }
        }
    }
    out.into_iter().collect()
}
