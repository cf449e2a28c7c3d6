//! Homogeneous coordinates for toric varieties: class groups, the total
//! coordinate ring, monomial ideals, the quotient construction and
//! automorphism groups.

pub mod autgroup;
pub mod classgroup;
pub mod coxring;
pub mod error;
pub mod fan;
pub mod fixtures;
pub mod ideals;
pub mod intlin;
pub mod polyhedral;
pub mod quotient;

pub use autgroup::{
    apply_root_automorphism, aut_dimensions, component_group, component_group_order,
    degree_partition, fan_automorphisms, roots, AutReport, ComponentGroup, DegreeClass,
    DegreePartition, FanAutomorphism, Root, RootKind,
};
pub use classgroup::{
    class_group, group_g_description, is_cartier, picard_subgroup, same_degree, ClassGroup,
    DivisorClass, GroupGDescription, PicardIndex, PicardSubgroup,
};
pub use coxring::{dim_graded_piece, monomial_lt, monomials_of_degree, GradedPiece, Monomial};
pub use error::{FanViolation, Result, ToricError};
pub use fan::{lattice_points, validate_fan, ConeView, Face, Fan, HPolytope};
pub use ideals::{
    correspondence_maps, exceptional_locus, irrelevant_ideal, is_empty_in_x, ExceptionalLocus,
    MonomialIdeal,
};
pub use intlin::{FinAbGroup, IntMatrix};
pub use quotient::{
    chart_of, check_chart_compatibility, in_exceptional, nonclosed_orbit_witness, orbit_invariants,
    same_orbit, witness_from_relation, HomogPoint, NonClosedOrbitWitness, OrbitInvariants,
};
