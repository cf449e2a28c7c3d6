//! Exact integer linear algebra: Smith and Hermite normal forms, cokernels,
//! integer solving, kernel lattices and lattice intersections.
//!
//! Everything here works over arbitrary-precision integers. A matrix `A`
//! with `r` rows and `c` columns is read as the map `Z^c -> Z^r`, `x -> A x`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from explicit rows. `cols` is only consulted when
    /// `rows` is empty.
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>], cols: usize) -> Self {
        let cols = rows.first().map_or(cols, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_cols<T: Clone + Into<BigInt>>(cols: &[Vec<T>], rows: usize) -> Self {
        Self::from_rows(cols, rows).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| &self[(i, j)] * &v[j])
                    .fold(BigInt::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Determinant by fraction-free Bareiss elimination. Panics on non-square input.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * factor;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * factor;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// `S = U * A * V` with `U`, `V` unimodular and `S` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// The nonnegative diagonal entries `d_1 | d_2 | ...`, of length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Smith normal form with a fixed pivot rule: the entry of smallest nonzero
/// absolute value in the active block, ties broken by lowest (row, column).
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (r, c) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = smallest_entry(&s, t) else {
                return SmithDecomposition { u, s, v };
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = s[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..r {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&pivot);
                s.add_row(i, t, &q);
                u.add_row(i, t, &q);
                dirty |= !s[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&pivot);
                s.add_col(j, t, &q);
                v.add_col(j, t, &q);
                dirty |= !s[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let offender = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !s[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, s, v }
}

fn smallest_entry(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => x.abs() < s[(bi, bj)].abs(),
            };
            if better {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Finitely generated abelian group `Z^free_rank + Z/d_1 + ... + Z/d_k`
/// with `2 <= d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    pub free_rank: usize,
    pub torsion_invariants: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion_invariants.is_empty()
    }

    /// Number of canonical coordinates (free part followed by torsion residues).
    pub fn coordinate_count(&self) -> usize {
        self.free_rank + self.torsion_invariants.len()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion_invariants.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The quotient `Z^rows / im(A)` with an explicit surjection onto canonical
/// coordinates.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: FinAbGroup,
    /// `free_rank x rows`; rows are an HNF basis of the left kernel of `A`.
    pub free_projection: IntMatrix,
    /// `k x rows`; row `i` is read modulo `group.torsion_invariants[i]`.
    pub torsion_projection: IntMatrix,
}

impl Cokernel {
    /// Canonical coordinates of the class of `x`: free part, then residues in `[0, d_i)`.
    pub fn project(&self, x: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let free = self.free_projection.mul_vec(x);
        let torsion = self
            .torsion_projection
            .mul_vec(x)
            .into_iter()
            .zip(&self.group.torsion_invariants)
            .map(|(t, d)| t.mod_floor(d))
            .collect();
        (free, torsion)
    }
}

/// Cokernel of `A : Z^cols -> Z^rows`.
///
/// The free coordinates are normalised by putting the left-kernel basis in
/// Hermite normal form, so they do not depend on the elimination path.
pub fn cokernel(a: &IntMatrix) -> Cokernel {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let rank = snf.rank();
    let r = a.rows();

    let mut torsion_rows = Vec::new();
    let mut invariants = Vec::new();
    for (i, d) in diag.iter().enumerate().take(rank) {
        if !d.is_one() {
            torsion_rows.push(snf.u.row(i));
            invariants.push(d.clone());
        }
    }
    let free_rows: Vec<Vec<BigInt>> = (rank..r).map(|i| snf.u.row(i)).collect();
    let free_projection = hermite_normal_form(&IntMatrix::from_rows(&free_rows, r));

    Cokernel {
        group: FinAbGroup {
            free_rank: r - rank,
            torsion_invariants: invariants,
        },
        free_projection,
        torsion_projection: IntMatrix::from_rows(&torsion_rows, r),
    }
}

/// Some integer `x` with `A x = b`, or `None` when no integer solution exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch in solve_integer");
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let rank = snf.rank();
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..rank {
        let (q, rem) = c[i].div_rem(&diag[i]);
        if !rem.is_zero() {
            return None;
        }
        y[i] = q;
    }
    if c[rank..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(snf.v.mul_vec(&y))
}

/// A basis of `{x in Z^cols : A x = 0}`, in Hermite normal form.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let cols: Vec<Vec<BigInt>> = (rank..a.cols()).map(|j| snf.v.col(j)).collect();
    hermite_normal_form(&IntMatrix::from_rows(&cols, a.cols())).to_rows()
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `a`:
/// echelon form, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`, zero rows dropped.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let mut h = a.clone();
    let (r, c) = (h.rows(), h.cols());
    let mut lead = 0;
    let mut pivots = Vec::new();
    for j in 0..c {
        if lead == r {
            break;
        }
        loop {
            // Smallest nonzero |entry| in column j among rows lead.. acts as pivot.
            let pick = (lead..r)
                .filter(|&i| !h[(i, j)].is_zero())
                .min_by(|&x, &y| h[(x, j)].abs().cmp(&h[(y, j)].abs()));
            let Some(p) = pick else { break };
            h.swap_rows(lead, p);
            let mut clean = true;
            for i in lead + 1..r {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = -h[(i, j)].div_floor(&h[(lead, j)]);
                h.add_row(i, lead, &q);
                clean &= h[(i, j)].is_zero();
            }
            if clean {
                break;
            }
        }
        if lead < r && !h[(lead, j)].is_zero() {
            if h[(lead, j)].is_negative() {
                h.negate_row(lead);
            }
            for i in 0..lead {
                let q = -h[(i, j)].div_floor(&h[(lead, j)]);
                h.add_row(i, lead, &q);
            }
            pivots.push(j);
            lead += 1;
        }
    }
    let rows: Vec<Vec<BigInt>> = (0..lead).map(|i| h.row(i)).collect();
    IntMatrix::from_rows(&rows, c)
}

/// Generators (as columns) of the intersection of the lattices spanned by
/// the columns of `l1` and `l2`, returned as an HNF basis.
pub fn lattice_intersection(l1: &IntMatrix, l2: &IntMatrix) -> IntMatrix {
    assert_eq!(
        l1.rows(),
        l2.rows(),
        "lattices live in different ambient spaces"
    );
    let d = l1.rows();
    let (k1, k2) = (l1.cols(), l2.cols());
    let mut joint = IntMatrix::zeros(d, k1 + k2);
    for i in 0..d {
        for j in 0..k1 {
            joint[(i, j)] = l1[(i, j)].clone();
        }
        for j in 0..k2 {
            joint[(i, k1 + j)] = -&l2[(i, j)];
        }
    }
    let gens: Vec<Vec<BigInt>> = kernel_basis(&joint)
        .into_iter()
        .map(|kv| l1.mul_vec(&kv[..k1]))
        .collect();
    hermite_normal_form(&IntMatrix::from_rows(&gens, d)).transpose()
}

/// Primitive integer vector: divides out the gcd of the entries.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        IntMatrix::from_rows(&rows, 0)
    }

    fn check_smith(a: &IntMatrix) -> SmithDecomposition {
        let snf = smith_normal_form(a);
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.s);
        assert!(snf.s.is_diagonal());
        assert!(snf.u.det().abs().is_one());
        assert!(snf.v.det().abs().is_one());
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        snf
    }

    #[test]
    fn smith_of_diag_2_3() {
        let snf = check_smith(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(snf.diagonal(), big_vec(&[1, 6]));
    }

    #[test]
    fn smith_of_identity() {
        let snf = check_smith(&IntMatrix::identity(3));
        assert_eq!(snf.s, IntMatrix::identity(3));
    }

    #[test]
    fn smith_of_p2_rays() {
        let snf = check_smith(&m(&[&[1, 0], &[0, 1], &[-1, -1]]));
        assert_eq!(snf.s, m(&[&[1, 0], &[0, 1], &[0, 0]]));
    }

    #[test]
    fn smith_of_empty() {
        let snf = check_smith(&IntMatrix::zeros(0, 3));
        assert_eq!(snf.rank(), 0);
        assert_eq!(snf.v, IntMatrix::identity(3));
    }

    #[test]
    fn cokernel_p2() {
        let ck = cokernel(&m(&[&[1, 0], &[0, 1], &[-1, -1]]));
        assert_eq!(ck.group.free_rank, 1);
        assert!(ck.group.torsion_invariants.is_empty());
        for i in 0..3 {
            let mut e = vec![BigInt::zero(); 3];
            e[i] = BigInt::one();
            assert_eq!(ck.project(&e).0, big_vec(&[1]));
        }
    }

    #[test]
    fn cokernel_of_zero_map() {
        let ck = cokernel(&IntMatrix::zeros(3, 2));
        assert_eq!(ck.group.free_rank, 3);
        assert!(ck.group.torsion_invariants.is_empty());
    }

    #[test]
    fn cokernel_p112_degrees() {
        let ck = cokernel(&m(&[&[1, 0], &[-1, -2], &[0, 1]]));
        assert_eq!(ck.group.free_rank, 1);
        let degs: Vec<BigInt> = (0..3)
            .map(|i| {
                let mut e = vec![BigInt::zero(); 3];
                e[i] = BigInt::one();
                ck.project(&e).0[0].clone()
            })
            .collect();
        assert_eq!(degs, big_vec(&[1, 1, 2]));
    }

    #[test]
    fn cokernel_with_torsion() {
        // Z^2 / <(2, 0)> = Z + Z/2
        let ck = cokernel(&m(&[&[2], &[0]]));
        assert_eq!(ck.group.free_rank, 1);
        assert_eq!(ck.group.torsion_invariants, big_vec(&[2]));
        assert_eq!(ck.group.to_string(), "Z + Z/2");
        let (_, t) = ck.project(&big_vec(&[1, 0]));
        assert_eq!(t, big_vec(&[1]));
        let (f, t) = ck.project(&big_vec(&[2, 0]));
        assert!(f.iter().all(Zero::is_zero) && t.iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_examples() {
        let a = m(&[&[2]]);
        assert_eq!(solve_integer(&a, &big_vec(&[4])), Some(big_vec(&[2])));
        assert_eq!(solve_integer(&a, &big_vec(&[3])), None);
        let p2 = m(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert_eq!(
            solve_integer(&p2, &big_vec(&[1, -1, 0])),
            Some(big_vec(&[1, -1]))
        );
        assert_eq!(solve_integer(&p2, &big_vec(&[1, 0, 0])), None);
    }

    #[test]
    fn kernel_examples() {
        // quadric-cone rays as columns
        let a = m(&[&[0, 1, 0, 1], &[0, 0, 1, 1], &[1, 1, 1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(v == &big_vec(&[1, -1, -1, 1]) || v == &big_vec(&[-1, 1, 1, -1]));
        assert!(kernel_basis(&IntMatrix::identity(3)).is_empty());

        let k = kernel_basis(&m(&[&[1, 1, 2]]));
        assert_eq!(k.len(), 2);
        let row = m(&[&[1, 1, 2]]);
        for v in &k {
            assert!(row.mul_vec(v).iter().all(Zero::is_zero));
        }
        // The basis is saturated: Z^3 / span(kernel) is torsion free.
        let ck = cokernel(&IntMatrix::from_cols(&k, 3));
        assert!(ck.group.torsion_invariants.is_empty());
    }

    #[test]
    fn intersection_examples() {
        let two = m(&[&[2]]);
        let three = m(&[&[3]]);
        assert_eq!(lattice_intersection(&two, &three), m(&[&[6]]));
        let id = IntMatrix::identity(2);
        assert_eq!(
            hermite_normal_form(&lattice_intersection(&id, &id).transpose()),
            id
        );
    }

    #[test]
    fn intersection_of_diagonals_is_zero() {
        // Brute force: no nonzero vector with |coords| <= 10 lies in both spans.
        let l1 = m(&[&[1], &[1]]);
        let l2 = m(&[&[1], &[-1]]);
        let mut common = Vec::new();
        for a in -10i64..=10 {
            for b in -10i64..=10 {
                if (a, a) == (b, -b) && a != 0 {
                    common.push(a);
                }
            }
        }
        assert!(common.is_empty());
        assert_eq!(lattice_intersection(&l1, &l2).cols(), 0);
    }

    #[test]
    fn hnf_is_canonical() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        // unimodular recombination of a's rows
        let b = m(&[&[-6, 6, 12], &[-4, 10, 16], &[14, 4, -8]]);
        let ha = hermite_normal_form(&a);
        assert_eq!(ha, hermite_normal_form(&b));
        assert_eq!(ha.rows(), 3);
        assert!(ha[(0, 0)].is_positive());
    }

    #[test]
    fn det_bareiss() {
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
        assert_eq!(
            m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]).det(),
            BigInt::from(18)
        );
    }
}
