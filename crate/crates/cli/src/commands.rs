//! Subcommands and their `key: value` reports.

use std::fmt::Display;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_traits::{ToPrimitive, Zero};

use toricox::{
    aut_dimensions, chart_of, class_group, correspondence_maps, degree_partition,
    exceptional_locus, fan_automorphisms, fixtures, in_exceptional, irrelevant_ideal,
    is_empty_in_x, monomial_lt, monomials_of_degree, nonclosed_orbit_witness, picard_subgroup,
    roots, same_orbit, Fan, HomogPoint, Monomial, MonomialIdeal, ToricError,
};

use crate::fanfile::{parse_fan_file, render_fan, FanFileError};

#[derive(Debug, Parser)]
#[command(
    name = "toricox",
    version,
    about = "Homogeneous coordinates of toric varieties"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the fan axioms.
    Validate { fan: PathBuf },
    /// Simplicial, complete and smooth predicates.
    Props { fan: PathBuf },
    /// Class group and degrees of the variables.
    Chow { fan: PathBuf },
    /// Picard group inside the class group.
    Pic { fan: PathBuf },
    /// Monomials of the degree of a divisor.
    Sections {
        fan: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Compare two monomials in the divisibility order.
    Order {
        fan: PathBuf,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Irrelevant ideal.
    Irrelevant { fan: PathBuf },
    /// Components of the exceptional set.
    Locus { fan: PathBuf },
    /// Saturation of a monomial ideal by the irrelevant ideal.
    Saturate {
        fan: PathBuf,
        #[arg(long)]
        ideal: String,
    },
    /// Whether a monomial ideal cuts out the empty set.
    Empty {
        fan: PathBuf,
        #[arg(long)]
        ideal: String,
    },
    /// Orbit invariants of two points and whether they share an orbit.
    Orbit {
        fan: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value_t = 12)]
        bound: i64,
    },
    /// Points with non-closed orbit for a non-simplicial cone.
    Witness {
        fan: PathBuf,
        #[arg(long)]
        cone: String,
    },
    /// Roots of the fan.
    Roots { fan: PathBuf },
    /// Dimensions of the automorphism groups.
    Aut {
        fan: PathBuf,
        /// Accept complete non-simplicial fans.
        #[arg(long)]
        relaxed: bool,
    },
    /// Lattice automorphisms preserving the fan.
    Fanauts { fan: PathBuf },
    /// Print a built-in fan: p2, p1p1, p112, quadric, a2, pn:<n>, wps:<q0,q1,...>.
    Make {
        #[arg(long)]
        preset: String,
    },
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    FanFile(FanFileError),
    Argument(String),
    Domain(ToricError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(e) => match e {
                ToricError::LengthMismatch { .. }
                | ToricError::InvalidArgument(_)
                | ToricError::InvalidFan(_)
                | ToricError::UnknownCone(_) => 2,
                _ => 1,
            },
            _ => 2,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Io(m) | CliError::Argument(m) => format!("error: {m}"),
            CliError::FanFile(e) => e
                .to_string()
                .lines()
                .map(|l| format!("error: {l}"))
                .collect::<Vec<_>>()
                .join("\n"),
            CliError::Domain(e) => format!("error: {}: {e}", e.kind()),
        }
    }
}

impl From<ToricError> for CliError {
    fn from(e: ToricError) -> Self {
        CliError::Domain(e)
    }
}

/// Accumulates report lines.
#[derive(Debug, Default)]
pub struct Report {
    text: String,
}

impl Report {
    fn kv(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.text.push_str(&format!("{key}: {value}\n"));
        self
    }

    pub fn text(&self) -> &str {
        &self.text
    }
}

fn join<T: Display>(v: &[T], sep: &str) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn list_or_none<T: Display>(v: &[T], sep: &str) -> String {
    if v.is_empty() {
        "none".into()
    } else {
        join(v, sep)
    }
}

fn load(path: &PathBuf) -> Result<Fan, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_fan_file(&text).map_err(CliError::FanFile)
}

fn parse_ints(s: &str, what: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|w| {
            w.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Argument(format!("bad {what} {s:?}")))
        })
        .collect()
}

fn parse_monomial(fan: &Fan, s: &str) -> Result<Monomial, CliError> {
    let m: Monomial = s.parse()?;
    if m.nvars() != fan.ray_count() {
        return Err(ToricError::LengthMismatch {
            expected: fan.ray_count(),
            found: m.nvars(),
        }
        .into());
    }
    Ok(m)
}

fn parse_point(fan: &Fan, s: &str) -> Result<HomogPoint, CliError> {
    let p: HomogPoint = s.parse()?;
    if p.len() != fan.ray_count() {
        return Err(ToricError::LengthMismatch {
            expected: fan.ray_count(),
            found: p.len(),
        }
        .into());
    }
    Ok(p)
}

fn vector(v: &[i64]) -> String {
    format!("({})", join(v, ","))
}

fn preset(name: &str) -> Result<Fan, CliError> {
    let bad = || CliError::Argument(format!("unknown preset {name:?}"));
    match name {
        "p2" => Ok(fixtures::p2()),
        "p1p1" => Ok(fixtures::p1p1()),
        "p112" => Ok(fixtures::p112()),
        "quadric" => Ok(fixtures::quadric()),
        "a2" => Ok(fixtures::a2()),
        _ => {
            if let Some(n) = name.strip_prefix("pn:") {
                let n: usize = n.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                Ok(fixtures::projective_space(n))
            } else if let Some(q) = name.strip_prefix("wps:") {
                Ok(fixtures::weighted_projective_space(&parse_ints(
                    q, "weights",
                )?)?)
            } else {
                Err(bad())
            }
        }
    }
}

pub fn run(command: &Command) -> Result<Report, CliError> {
    let mut r = Report::default();
    match command {
        Command::Make { preset: name } => {
            r.text = render_fan(&preset(name)?);
        }
        Command::Validate { fan } => {
            let fan = load(fan)?;
            r.kv("valid", true)
                .kv("dim", fan.dim())
                .kv("rays", fan.ray_count())
                .kv("max_cones", fan.max_cones().len());
        }
        Command::Props { fan } => {
            let fan = load(fan)?;
            r.kv("simplicial", fan.is_simplicial())
                .kv("complete", fan.is_complete())
                .kv("smooth", fan.is_smooth());
        }
        Command::Chow { fan } => {
            let fan = load(fan)?;
            let cg = class_group(&fan);
            r.kv("group", cg.group());
            for (i, c) in cg.ray_degrees().iter().enumerate() {
                r.kv(&format!("deg x{i}"), c);
            }
        }
        Command::Pic { fan } => {
            let fan = load(fan)?;
            let pic = picard_subgroup(&fan);
            r.kv("group", class_group(&fan).group())
                .kv("index", &pic.index)
                .kv("generators", list_or_none(&pic.generators, "; "));
        }
        Command::Sections { fan, divisor } => {
            let fan = load(fan)?;
            let d = parse_ints(divisor, "divisor")?;
            let piece = monomials_of_degree(&fan, &d)?;
            r.kv("class", &piece.class).kv("dimension", piece.dim());
            for m in &piece.monomials {
                r.kv("monomial", m);
            }
        }
        Command::Order { fan, lhs, rhs } => {
            let fan = load(fan)?;
            let (a, b) = (parse_monomial(&fan, lhs)?, parse_monomial(&fan, rhs)?);
            let less = monomial_lt(&fan, &a, &b)?;
            r.kv("lhs", &a).kv("rhs", &b).kv("less", less);
        }
        Command::Irrelevant { fan } => {
            let fan = load(fan)?;
            let b = irrelevant_ideal(&fan);
            r.kv("generators", b.generators().len()).kv("ideal", &b);
        }
        Command::Locus { fan } => {
            let fan = load(fan)?;
            let z = exceptional_locus(&fan);
            r.kv("components", z.components.len());
            for c in &z.components {
                r.kv("component", join(c, ","));
            }
            match z.codim {
                Some(c) => r.kv("codim", c),
                None => r.kv("codim", "infinite"),
            };
        }
        Command::Saturate { fan, ideal } => {
            let fan = load(fan)?;
            let i = MonomialIdeal::parse(fan.ray_count(), ideal)?;
            let b = irrelevant_ideal(&fan);
            let (meet, colon) = correspondence_maps(&fan, &i)?;
            r.kv("ideal", &i)
                .kv("saturation", i.saturate(&b))
                .kv("intersect_b", meet)
                .kv("colon_b", colon);
        }
        Command::Empty { fan, ideal } => {
            let fan = load(fan)?;
            let i = MonomialIdeal::parse(fan.ray_count(), ideal)?;
            let empty = is_empty_in_x(&fan, &i)?;
            r.kv("ideal", &i).kv("empty_in_X", empty);
        }
        Command::Orbit { fan, u, t, bound } => {
            let fan = load(fan)?;
            let (u, t) = (parse_point(&fan, u)?, parse_point(&fan, t)?);
            let same = same_orbit(&fan, &u, &t, *bound)?;
            let chart = chart_of(&fan, &t)?;
            let basis = chart.dual_hilbert_basis(*bound)?;
            let values = |p: &HomogPoint| -> Vec<String> {
                basis
                    .iter()
                    .map(|m| p.eval_character(&fan, m).to_string())
                    .collect()
            };
            let u_in_chart = !u
                .eval(&Monomial::complement(fan.ray_count(), chart.ray_indices()))
                .is_zero();
            r.kv("u", &u)
                .kv("t", &t)
                .kv("chart", join(chart.ray_indices(), ","))
                .kv(
                    "basis",
                    join(&basis.iter().map(|m| vector(m)).collect::<Vec<_>>(), " "),
                )
                .kv("invariants t", join(&values(&t), ","));
            if u_in_chart {
                r.kv("invariants u", join(&values(&u), ","));
            } else {
                r.kv("invariants u", "outside chart");
            }
            r.kv("same_orbit", same);
        }
        Command::Witness { fan, cone } => {
            let fan = load(fan)?;
            let mut rays: Vec<usize> = parse_ints(cone, "cone")?
                .into_iter()
                .map(|i| {
                    usize::try_from(i).map_err(|_| CliError::Argument(format!("bad cone {cone:?}")))
                })
                .collect::<Result<_, _>>()?;
            rays.sort_unstable();
            let view = fan.cone_of(&rays)?;
            let w = nonclosed_orbit_witness(&fan, view)?;
            r.kv("cone", join(&rays, ","))
                .kv("relation", join(&w.relation, ","))
                .kv("u", &w.u)
                .kv("v", &w.v)
                .kv("u in Z", in_exceptional(&fan, &w.u)?)
                .kv("v in Z", in_exceptional(&fan, &w.v)?)
                .kv("support u", list_or_none(&w.u.support(), ","))
                .kv("support v", list_or_none(&w.v.support(), ","));
        }
        Command::Roots { fan } => {
            let fan = load(fan)?;
            let rs = roots(&fan)?;
            let ss = rs
                .iter()
                .filter(|x| x.kind == toricox::RootKind::Semisimple)
                .count();
            r.kv("roots", rs.len())
                .kv("semisimple", ss)
                .kv("unipotent", rs.len() - ss);
            for x in &rs {
                r.kv(
                    "root",
                    format!("x{} -> {} m={} {}", x.ray, x.target, vector(&x.m), x.kind),
                );
            }
        }
        Command::Aut { fan, relaxed } => {
            let fan = load(fan)?;
            let report = aut_dimensions(&fan, !relaxed)?;
            for c in &degree_partition(&fan)?.classes {
                r.kv(
                    "degree_class",
                    format!(
                        "rays {} degree {} dim {}",
                        join(&c.rays, ","),
                        c.class,
                        c.dim
                    ),
                );
            }
            r.kv("dim_aut_tilde", report.dim_aut_tilde)
                .kv("dim_unipotent_radical", report.dim_unipotent_radical)
                .kv("dim_reductive_part", report.dim_reductive_part)
                .kv("dim_G", report.dim_g);
            match report.dim_aut_x {
                Some(d) => r.kv("dim_aut_X", d),
                None => r.kv("dim_aut_X", "undefined (not simplicial)"),
            };
            r.kv("roots_semisimple", report.semisimple_roots)
                .kv("roots_unipotent", report.unipotent_roots);
            if let Some(c) = &report.component_group {
                r.kv("aut_fan_order", c.fan_automorphisms)
                    .kv("weyl_order", c.weyl)
                    .kv("weyl_expected", c.weyl_expected)
                    .kv("component_group_order", c.order);
            }
        }
        Command::Fanauts { fan } => {
            let fan = load(fan)?;
            let auts = fan_automorphisms(&fan);
            r.kv("order", auts.len());
            for a in &auts {
                let rows: Vec<String> = a
                    .matrix
                    .to_rows()
                    .iter()
                    .map(|row| {
                        join(
                            &row.iter()
                                .map(|x| x.to_i64().expect("small entry"))
                                .collect::<Vec<_>>(),
                            ",",
                        )
                    })
                    .collect();
                r.kv(
                    "aut",
                    format!(
                        "perm {} matrix {}",
                        join(&a.ray_permutation, ","),
                        rows.join(";")
                    ),
                );
            }
        }
    }
    Ok(r)
}

/// Output streams and exit status of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn execute(command: &Command) -> Outcome {
    match run(command) {
        Ok(r) => Outcome {
            stdout: r.text,
            stderr: String::new(),
            code: 0,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("{}\n", e.message()),
            code: e.exit_code(),
        },
    }
}
