//! Exact arithmetic behind the non-emptiness of the height strata of
//! polarized K3 surfaces in positive characteristic.
//!
//! * [`polygon`]: Newton and Hodge polygons, heights, the stratum lattice.
//! * [`kummer`]: the Kummer slope functor, polarization degrees and the
//!   ampleness inequalities.
//! * [`coverage`]: sums of sixteen squares, residue coverage and degree
//!   thresholds.
//! * [`fieldarith`]: point counts of elliptic curves over prime fields and
//!   Kummer surfaces of their products.
//! * [`oracle`]: brute-force reference computations used to check the above.

pub mod coverage;
pub mod fieldarith;
pub mod kummer;
pub mod oracle;
pub mod polygon;

pub use coverage::{
    achievable_degrees, coverage_threshold, paper_bounds_report, reachable_residues,
    reachable_sums, verify_lemma_res, verify_remark, CoverageError, CoverageResult, DegreeQuery,
    Parity, PartChoice, ResidueSet, SumSet,
};
pub use fieldarith::{
    classify_kummer_of_product, count_points, EllipticCurveData, FieldError, FrobeniusData,
    PrimeFieldSpec,
};
pub use kummer::{
    check_ampleness, kummer_slopes, polarization_degree, self_intersection_on_blowup,
    AbelianSlopeProfile, AmplenessReport, AmplenessVariant, KummerError, KummerParams,
};
pub use polygon::{
    classify, height_of, hodge_k3, lies_above, make_newton, newton_from_height, stratum_of,
    ArtinInvariant, Classification, HeightValue, HodgePolygon, NewtonPolygon, PolygonError,
    RationalSlope, Stratum, StratumLabel,
};
