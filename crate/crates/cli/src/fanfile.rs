//! The line-based fan file format.
//!
//! ```text
//! # the projective plane
//! dim 2
//! ray 1 0
//! ray 0 1
//! ray -1 -1
//! cone 0 1
//! cone 1 2
//! cone 2 0
//! ```

use std::fmt;

use toricox::{validate_fan, Fan, FanViolation, ToricError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanFileError {
    Parse {
        line: usize,
        message: String,
    },
    /// Violations of the fan axioms, each with the line it is attributed to.
    Invalid(Vec<(usize, FanViolation)>),
}

impl fmt::Display for FanFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanFileError::Parse { line, message } => write!(f, "line {line}: {message}"),
            FanFileError::Invalid(vs) => {
                let parts: Vec<String> = vs.iter().map(|(l, v)| format!("line {l}: {v}")).collect();
                write!(f, "{}", parts.join("\n"))
            }
        }
    }
}

impl std::error::Error for FanFileError {}

fn parse_err(line: usize, message: impl Into<String>) -> FanFileError {
    FanFileError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_numbers<T: std::str::FromStr>(
    line: usize,
    words: &[&str],
) -> Result<Vec<T>, FanFileError> {
    words
        .iter()
        .map(|w| {
            w.parse::<T>()
                .map_err(|_| parse_err(line, format!("bad number {w:?}")))
        })
        .collect()
}

pub fn parse_fan_file(text: &str) -> Result<Fan, FanFileError> {
    let mut dim: Option<(usize, usize)> = None;
    let mut rays: Vec<(usize, Vec<i64>)> = Vec::new();
    let mut cones: Vec<(usize, Vec<usize>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        match words[0] {
            "dim" => {
                if dim.is_some() {
                    return Err(parse_err(line, "duplicate dim line"));
                }
                let v: Vec<usize> = parse_numbers(line, &words[1..])?;
                match v.as_slice() {
                    [n] if *n > 0 => dim = Some((*n, line)),
                    _ => return Err(parse_err(line, "dim takes one positive integer")),
                }
            }
            "ray" => {
                if dim.is_none() {
                    return Err(parse_err(line, "ray before dim"));
                }
                rays.push((line, parse_numbers(line, &words[1..])?));
            }
            "cone" => {
                if dim.is_none() {
                    return Err(parse_err(line, "cone before dim"));
                }
                cones.push((line, parse_numbers(line, &words[1..])?));
            }
            other => return Err(parse_err(line, format!("unknown keyword {other:?}"))),
        }
    }

    let Some((n, dim_line)) = dim else {
        return Err(parse_err(text.lines().count().max(1), "missing dim line"));
    };
    if rays.is_empty() {
        return Err(parse_err(dim_line, "no rays"));
    }
    if cones.is_empty() {
        return Err(parse_err(dim_line, "no cones"));
    }

    let ray_lines: Vec<usize> = rays.iter().map(|(l, _)| *l).collect();
    let cone_lines: Vec<usize> = cones.iter().map(|(l, _)| *l).collect();
    validate_fan(
        n,
        rays.into_iter().map(|(_, r)| r).collect(),
        cones.into_iter().map(|(_, c)| c).collect(),
    )
    .map_err(|e| match e {
        ToricError::InvalidFan(vs) => FanFileError::Invalid(
            vs.into_iter()
                .map(|v| (violation_line(&v, dim_line, &ray_lines, &cone_lines), v))
                .collect(),
        ),
        other => parse_err(dim_line, other.to_string()),
    })
}

fn violation_line(v: &FanViolation, dim_line: usize, rays: &[usize], cones: &[usize]) -> usize {
    match *v {
        FanViolation::WrongRayLength { ray, .. } | FanViolation::NonPrimitiveRay { ray } => {
            rays[ray]
        }
        FanViolation::DuplicateRay { second, .. } => rays[second],
        FanViolation::RaysDoNotSpan { .. } => dim_line,
        FanViolation::EmptyCone { cone }
        | FanViolation::RayIndexOutOfRange { cone, .. }
        | FanViolation::NotStronglyConvex { cone }
        | FanViolation::RayNotFaceOfCone { cone, .. } => cones[cone],
        FanViolation::BadIntersection { second, .. } => cones[second],
    }
}

pub fn render_fan(fan: &Fan) -> String {
    let mut out = format!("dim {}\n", fan.dim());
    for r in fan.rays() {
        let parts: Vec<String> = r.iter().map(ToString::to_string).collect();
        out.push_str(&format!("ray {}\n", parts.join(" ")));
    }
    for c in fan.max_cones() {
        let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
        out.push_str(&format!("cone {}\n", parts.join(" ")));
    }
    out
}
