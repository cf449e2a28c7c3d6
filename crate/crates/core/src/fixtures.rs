//! Small named fans used throughout the test suites and by `toricox make`.

use num_traits::{One, ToPrimitive};

use crate::error::{Result, ToricError};
use crate::fan::{combinations, validate_fan, Fan};
use crate::intlin::{hermite_normal_form, smith_normal_form, IntMatrix};

fn build(dim: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
    validate_fan(
        dim,
        rays.iter().map(|r| r.to_vec()).collect(),
        cones.iter().map(|c| c.to_vec()).collect(),
    )
    .expect("built-in fixture is a valid fan")
}

/// The projective plane.
pub fn p2() -> Fan {
    build(
        2,
        &[&[1, 0], &[0, 1], &[-1, -1]],
        &[&[0, 1], &[1, 2], &[0, 2]],
    )
}

/// P^1 x P^1.
pub fn p1p1() -> Fan {
    build(
        2,
        &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
        &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]],
    )
}

/// Weighted projective plane P(1,1,2).
pub fn p112() -> Fan {
    build(
        2,
        &[&[1, 0], &[-1, -2], &[0, 1]],
        &[&[0, 2], &[0, 1], &[1, 2]],
    )
}

/// Affine cone over a quadric surface: one non-simplicial cone.
pub fn quadric() -> Fan {
    build(
        3,
        &[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]],
        &[&[0, 1, 2, 3]],
    )
}

/// The affine plane.
pub fn a2() -> Fan {
    build(2, &[&[1, 0], &[0, 1]], &[&[0, 1]])
}

pub fn all() -> Vec<(&'static str, Fan)> {
    vec![
        ("p2", p2()),
        ("p1p1", p1p1()),
        ("p112", p112()),
        ("quadric", quadric()),
        ("a2", a2()),
    ]
}

/// Projective space P^n: rays e_1..e_n and -(e_1+...+e_n), cones omitting one ray.
pub fn projective_space(n: usize) -> Fan {
    assert!(n >= 1, "projective space needs n >= 1");
    let mut rays: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    rays.push(vec![-1; n]);
    validate_fan(n, rays, combinations(n + 1, n)).expect("P^n fan is valid")
}

/// Weighted projective space `P(q_0, ..., q_n)`: the rays are the images of
/// the standard basis in `Z^{n+1} / Z q`, so `Σ q_i n_i = 0`.
pub fn weighted_projective_space(q: &[i64]) -> Result<Fan> {
    if q.len() < 2 || q.iter().any(|&w| w <= 0) {
        return Err(ToricError::InvalidArgument(
            "weights must be at least two positive integers".into(),
        ));
    }
    let n = q.len() - 1;
    let col = IntMatrix::from_cols(&[q.to_vec()], q.len());
    let snf = smith_normal_form(&col);
    if !snf.diagonal()[0].is_one() {
        return Err(ToricError::InvalidArgument(
            "weights must be coprime".into(),
        ));
    }
    // Rows 1..=n of U span the relations orthogonal to q.
    let relations: Vec<_> = (1..=n).map(|i| snf.u.row(i)).collect();
    let basis = hermite_normal_form(&IntMatrix::from_rows(&relations, q.len()));
    let rays: Vec<Vec<i64>> = (0..q.len())
        .map(|j| {
            basis
                .col(j)
                .iter()
                .map(|x| x.to_i64().expect("ray overflows i64"))
                .collect()
        })
        .collect();
    validate_fan(n, rays, combinations(n + 1, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classgroup::class_group;

    #[test]
    fn weighted_projective_spaces() {
        let fan = weighted_projective_space(&[1, 1, 1]).unwrap();
        assert_eq!(fan.rays(), p2().rays());
        assert_eq!(fan.max_cones(), projective_space(2).max_cones());
        let fan = weighted_projective_space(&[1, 1, 2]).unwrap();
        let degs: Vec<String> = class_group(&fan)
            .ray_degrees()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(degs, ["1", "1", "2"]);
        let fan = weighted_projective_space(&[1, 2, 3]).unwrap();
        assert!(fan.is_complete() && fan.is_simplicial() && !fan.is_smooth());
        let sum: Vec<i64> = (0..2)
            .map(|k| {
                fan.rays()
                    .iter()
                    .zip([1, 2, 3])
                    .map(|(r, w)| w * r[k])
                    .sum()
            })
            .collect();
        assert_eq!(sum, vec![0, 0]);
        assert!(weighted_projective_space(&[2, 4]).is_err());
        assert!(weighted_projective_space(&[1, 0, 1]).is_err());
    }

    #[test]
    fn fixtures_are_valid() {
        assert_eq!(all().len(), 5);
        assert_eq!(projective_space(3).max_cones().len(), 4);
    }
}
