//! Kummer surfaces of abelian surfaces: the slope functor from abelian
//! surfaces to K3 surfaces, the degree of the induced polarization, and
//! the Seshadri-constant inequalities that certify ampleness.
//!
//! Square-root bounds are compared after squaring, so every check is an
//! exact integer comparison.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::polygon::{
    make_newton, stratum_of, ArtinInvariant, HeightValue, NewtonPolygon, PolygonError,
    RationalSlope, StratumLabel, ABELIAN_RANK, ABELIAN_WEIGHT, K3_RANK, K3_WEIGHT,
};

/// Number of two-torsion points on an abelian surface, hence of exceptional
/// curves on the Kummer surface.
pub const TWO_TORSION_POINTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KummerError {
    #[error("InvalidProfile: {0}")]
    InvalidProfile(#[source] PolygonError),
    #[error("InvalidParams: {0}")]
    InvalidParams(String),
    #[error("InvalidVariant: {0}")]
    InvalidVariant(String),
}

impl KummerError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::InvalidProfile(_) => "InvalidProfile",
            Self::InvalidParams(_) => "InvalidParams",
            Self::InvalidVariant(_) => "InvalidVariant",
        }
    }
}

/// Newton slopes `l1 <= l2 <= l3 <= l4` of the first cohomology of an
/// abelian surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianSlopeProfile([RationalSlope; 4]);

impl AbelianSlopeProfile {
    /// p-rank 2.
    pub const ORDINARY: Self = Self([
        RationalSlope::ZERO,
        RationalSlope::ZERO,
        RationalSlope::ONE,
        RationalSlope::ONE,
    ]);
    /// p-rank 1.
    pub const P_RANK_ONE: Self = Self([
        RationalSlope::ZERO,
        RationalSlope::HALF,
        RationalSlope::HALF,
        RationalSlope::ONE,
    ]);
    /// p-rank 0.
    pub const SUPERSINGULAR: Self = Self([RationalSlope::HALF; 4]);

    pub const ALL: [Self; 3] = [Self::ORDINARY, Self::P_RANK_ONE, Self::SUPERSINGULAR];

    /// Sorts the slopes and checks they form a valid weight-1 rank-4
    /// polygon; the three constants above are the only survivors.
    pub fn new(mut slopes: [RationalSlope; 4]) -> Result<Self, KummerError> {
        slopes.sort();
        make_newton(ABELIAN_WEIGHT, ABELIAN_RANK, slopes.iter().map(|&s| (s, 1)))
            .map_err(KummerError::InvalidProfile)?;
        Ok(Self(slopes))
    }

    pub fn slopes(&self) -> [RationalSlope; 4] {
        self.0
    }

    /// Number of zero slopes.
    pub fn p_rank(&self) -> usize {
        self.0.iter().filter(|s| **s == RationalSlope::ZERO).count()
    }

    pub fn name(&self) -> &'static str {
        match self.p_rank() {
            2 => "ordinary",
            1 => "p-rank-one",
            _ => "supersingular",
        }
    }

    pub fn polygon(&self) -> NewtonPolygon {
        make_newton(ABELIAN_WEIGHT, ABELIAN_RANK, self.0.iter().map(|&s| (s, 1)))
            .expect("profile validated at construction")
    }
}

impl fmt::Display for AbelianSlopeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl FromStr for AbelianSlopeProfile {
    type Err = KummerError;

    /// Accepts `ordinary`, `p-rank-one`, `supersingular`, or four
    /// comma-separated slopes such as `0,1/2,1/2,1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "ordinary" => return Ok(Self::ORDINARY),
            "p-rank-one" | "mixed" => return Ok(Self::P_RANK_ONE),
            "supersingular" => return Ok(Self::SUPERSINGULAR),
            _ => {}
        }
        let slopes = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<RationalSlope>, _>>()
            .map_err(KummerError::InvalidProfile)?;
        let slopes: [RationalSlope; 4] = slopes.try_into().map_err(|v: Vec<_>| {
            KummerError::InvalidProfile(PolygonError::RankMismatch {
                expected: ABELIAN_RANK,
                found: v.len() as u64,
            })
        })?;
        Self::new(slopes)
    }
}

/// Newton polygon of the Kummer surface of an abelian surface with the
/// given slopes: the six pairwise sums `l_i + l_j` (`i < j`) together with
/// sixteen slopes equal to 1 from the exceptional curves.
pub fn kummer_slopes(profile: &AbelianSlopeProfile) -> NewtonPolygon {
    let l = profile.slopes();
    let mut slopes = Vec::with_capacity(K3_RANK as usize);
    for i in 0..4 {
        for j in i + 1..4 {
            slopes.push((l[i] + l[j], 1));
        }
    }
    slopes.push((RationalSlope::ONE, 16));
    make_newton(K3_WEIGHT, K3_RANK, slopes).expect("pairwise sums of a valid profile are valid")
}

/// Isogeny class of an abelian surface as it matters for the stratum of
/// its Kummer surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AbelianType {
    Ordinary,
    PRankOne,
    SupersingularNonSuperspecial,
    Superspecial,
}

/// Stratum containing the Kummer surface of an abelian surface of the
/// given type.
pub fn stratum_image(a_type: AbelianType) -> StratumLabel {
    let (h, sigma0) = match a_type {
        AbelianType::Ordinary => (HeightValue::Finite(1), None),
        AbelianType::PRankOne => (HeightValue::Finite(2), None),
        AbelianType::SupersingularNonSuperspecial => (HeightValue::Infinite, Some(2)),
        AbelianType::Superspecial => (HeightValue::Infinite, Some(1)),
    };
    let sigma0 = sigma0.map(|s| ArtinInvariant::new(s).expect("1 and 2 are in range"));
    stratum_of(h, sigma0).expect("height and Artin invariant agree")
}

/// `(n, d', n_1..n_16)`: the line bundle `L^n ⊗ [-1]^*L^n` on an abelian
/// surface with `chi(L) = d'`, twisted down by `2 n_j` along the
/// exceptional curves of the blow-up.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct KummerParams {
    n: u32,
    dprime: u32,
    parts: [u32; TWO_TORSION_POINTS],
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    n: u32,
    dprime: u32,
    parts: Vec<u32>,
}

impl TryFrom<RawParams> for KummerParams {
    type Error = KummerError;
    fn try_from(raw: RawParams) -> Result<Self, Self::Error> {
        KummerParams::from_slice(raw.n, raw.dprime, &raw.parts)
    }
}

impl From<KummerParams> for RawParams {
    fn from(p: KummerParams) -> Self {
        RawParams {
            n: p.n,
            dprime: p.dprime,
            parts: p.parts.to_vec(),
        }
    }
}

/// Upper bound on `n`, `d'` and every part; keeps all degrees inside `i64`.
pub const MAX_PARAM: u32 = 1 << 20;

impl KummerParams {
    pub fn new(n: u32, dprime: u32, parts: [u32; TWO_TORSION_POINTS]) -> Result<Self, KummerError> {
        if n.max(dprime).max(parts.iter().copied().max().unwrap_or(0)) > MAX_PARAM {
            return Err(KummerError::InvalidParams(format!(
                "n, dprime and parts must not exceed {MAX_PARAM}"
            )));
        }
        if n == 0 {
            return Err(KummerError::InvalidParams("n must be positive".into()));
        }
        if dprime == 0 {
            return Err(KummerError::InvalidParams("dprime must be positive".into()));
        }
        if let Some(j) = parts.iter().position(|&v| v == 0) {
            return Err(KummerError::InvalidParams(format!(
                "part n_{} must be positive",
                j + 1
            )));
        }
        Ok(Self { n, dprime, parts })
    }

    pub fn from_slice(n: u32, dprime: u32, parts: &[u32]) -> Result<Self, KummerError> {
        let parts: [u32; TWO_TORSION_POINTS] = parts.try_into().map_err(|_| {
            KummerError::InvalidParams(format!("expected 16 parts, got {}", parts.len()))
        })?;
        Self::new(n, dprime, parts)
    }

    /// All sixteen parts equal to `v`.
    pub fn uniform(n: u32, dprime: u32, v: u32) -> Result<Self, KummerError> {
        Self::new(n, dprime, [v; TWO_TORSION_POINTS])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dprime(&self) -> u32 {
        self.dprime
    }

    pub fn parts(&self) -> &[u32; TWO_TORSION_POINTS] {
        &self.parts
    }

    pub fn with_dprime(&self, dprime: u32) -> Result<Self, KummerError> {
        Self::new(self.n, dprime, self.parts)
    }

    pub fn sum_of_squares(&self) -> i128 {
        self.parts
            .iter()
            .map(|&v| i128::from(v) * i128::from(v))
            .sum()
    }

    fn n_squared_dprime(&self) -> i128 {
        let n = i128::from(self.n);
        n * n * i128::from(self.dprime)
    }
}

/// `d = 2 n^2 d' - sum n_j^2`, where `2d` is the self-intersection of the
/// descended line bundle on the Kummer surface.
pub fn polarization_degree(p: &KummerParams) -> i128 {
    2 * p.n_squared_dprime() - p.sum_of_squares()
}

/// `8 n^2 d' - 4 sum n_j^2` on the blown-up abelian surface.
pub fn self_intersection_on_blowup(p: &KummerParams) -> i128 {
    8 * p.n_squared_dprime() - 4 * p.sum_of_squares()
}

/// Which lower bound on `(L, O_A(E))` is known for elliptic curves `E` in
/// the abelian surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AmplenessVariant {
    /// Any polarized abelian surface: `(L, E) >= 1`.
    GeneralSurface,
    /// Not a polarized product of elliptic curves: `(L, E) >= 2`.
    NonProduct,
    /// `(L, E) >= m` for every elliptic curve `E`.
    MinEllipticIntersection(u32),
}

impl AmplenessVariant {
    pub fn new_min_elliptic(m: u32) -> Result<Self, KummerError> {
        if m == 0 {
            return Err(KummerError::InvalidVariant(
                "minimal elliptic intersection must be positive".into(),
            ));
        }
        Ok(Self::MinEllipticIntersection(m))
    }

    /// Lower bound on `(L, O_A(E))`.
    pub fn min_intersection(&self) -> u32 {
        match *self {
            Self::GeneralSurface => 1,
            Self::NonProduct => 2,
            Self::MinEllipticIntersection(m) => m,
        }
    }
}

impl fmt::Display for AmplenessVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::GeneralSurface => f.write_str("general"),
            Self::NonProduct => f.write_str("non-product"),
            Self::MinEllipticIntersection(m) => write!(f, "min-elliptic:{m}"),
        }
    }
}

impl FromStr for AmplenessVariant {
    type Err = KummerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "general" => Ok(Self::GeneralSurface),
            "non-product" => Ok(Self::NonProduct),
            other => {
                let m = other
                    .strip_prefix("min-elliptic:")
                    .and_then(|m| m.parse().ok())
                    .ok_or_else(|| {
                        KummerError::InvalidVariant(format!(
                            "{other:?} (expected general, non-product or min-elliptic:<m>)"
                        ))
                    })?;
                Self::new_min_elliptic(m)
            }
        }
    }
}

impl Serialize for AmplenessVariant {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AmplenessVariant {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A strict inequality `lhs < rhs` with both sides recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub lhs: i128,
    pub rhs: i128,
    pub holds: bool,
}

impl Inequality {
    pub fn less_than(lhs: i128, rhs: i128) -> Self {
        Self {
            lhs,
            rhs,
            holds: lhs < rhs,
        }
    }
}

/// `64 n_j^2 < n^2 d'`, the squared form of `n_j < sqrt(n^2 d') / 8`. This
/// is the bound for when the Seshadri constant of `L^n ⊗ [-1]^*L^n` is not
/// computed by an elliptic curve.
pub fn generic_bound(p: &KummerParams, j: usize) -> Inequality {
    let v = i128::from(p.parts[j]);
    Inequality::less_than(64 * v * v, p.n_squared_dprime())
}

pub fn seshadri_generic_bound_holds(p: &KummerParams, j: usize) -> bool {
    generic_bound(p, j).holds
}

/// `4 n_j < n m`, i.e. `2 n_j < 2 n m / 4`: the Seshadri constant computed
/// by an elliptic curve through four two-torsion points must exceed
/// `2 n_j`.
pub fn elliptic_bound(p: &KummerParams, j: usize, variant: AmplenessVariant) -> Inequality {
    Inequality::less_than(
        4 * i128::from(p.parts[j]),
        i128::from(p.n) * i128::from(variant.min_intersection()),
    )
}

pub fn seshadri_elliptic_bound_holds(
    p: &KummerParams,
    j: usize,
    variant: AmplenessVariant,
) -> bool {
    elliptic_bound(p, j, variant).holds
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartMargin {
    /// One-based index `j` of `n_j`.
    pub index: usize,
    pub part: u32,
    pub elliptic: Inequality,
    pub generic: Inequality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmplenessReport {
    pub params: KummerParams,
    pub variant: AmplenessVariant,
    pub degree: i128,
    pub self_intersection: i128,
    /// `0 < d`, equivalently positive self-intersection.
    pub positivity: Inequality,
    pub positivity_ok: bool,
    pub elliptic_branch_ok: bool,
    pub generic_branch_ok: bool,
    pub ample: bool,
    pub parts: Vec<PartMargin>,
}

/// Checks the sufficient conditions for `N` to be ample on the blow-up.
///
/// Every part must clear both the elliptic and the generic branch, since
/// it is not known which one computes the Seshadri constant.
pub fn check_ampleness(p: &KummerParams, variant: AmplenessVariant) -> AmplenessReport {
    let degree = polarization_degree(p);
    let positivity = Inequality::less_than(0, degree);
    let parts: Vec<PartMargin> = (0..TWO_TORSION_POINTS)
        .map(|j| PartMargin {
            index: j + 1,
            part: p.parts[j],
            elliptic: elliptic_bound(p, j, variant),
            generic: generic_bound(p, j),
        })
        .collect();
    let elliptic_branch_ok = parts.iter().all(|m| m.elliptic.holds);
    let generic_branch_ok = parts.iter().all(|m| m.generic.holds);
    AmplenessReport {
        params: p.clone(),
        variant,
        degree,
        self_intersection: self_intersection_on_blowup(p),
        positivity,
        positivity_ok: positivity.holds,
        elliptic_branch_ok,
        generic_branch_ok,
        ample: positivity.holds && elliptic_branch_ok && generic_branch_ok,
        parts,
    }
}

/// Smallest `d'` making [`check_ampleness`] succeed for the given `n`,
/// parts and variant, or `None` when the elliptic branch fails (it does
/// not depend on `d'`).
pub fn minimal_ample_dprime(
    n: u32,
    parts: &[u32; TWO_TORSION_POINTS],
    variant: AmplenessVariant,
) -> Option<u32> {
    let m = u64::from(variant.min_intersection());
    if parts.iter().any(|&v| 4 * u64::from(v) >= u64::from(n) * m) {
        return None;
    }
    let n2 = u64::from(n) * u64::from(n);
    let max_part = u64::from(*parts.iter().max().expect("sixteen parts"));
    let sum_sq: u64 = parts.iter().map(|&v| u64::from(v) * u64::from(v)).sum();
    // 64 B^2 < n^2 d'  and  sum n_j^2 < 2 n^2 d'
    let generic = 64 * max_part * max_part / n2 + 1;
    let positive = sum_sq / (2 * n2) + 1;
    u32::try_from(generic.max(positive)).ok()
}

/// Result of pushing an abelian slope profile through the Kummer
/// construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KummerStratum {
    pub profile: AbelianSlopeProfile,
    pub polygon: NewtonPolygon,
    pub height: HeightValue,
    pub stratum: StratumLabel,
}

/// Profile → Kummer polygon → height → stratum. A supersingular profile
/// needs the Artin invariant of the Kummer surface (1 when the abelian
/// surface is superspecial, 2 otherwise).
pub fn classify_profile(
    profile: &AbelianSlopeProfile,
    sigma0: Option<ArtinInvariant>,
) -> Result<KummerStratum, PolygonError> {
    let polygon = kummer_slopes(profile);
    let height = crate::polygon::height_of(&polygon)?;
    let stratum = stratum_of(height, sigma0)?;
    Ok(KummerStratum {
        profile: *profile,
        polygon,
        height,
        stratum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{classify, height_of, Classification};

    fn q(n: i64, d: i64) -> RationalSlope {
        RationalSlope::new(n, d).unwrap()
    }

    #[test]
    fn profiles_validate() {
        assert!(AbelianSlopeProfile::new([q(1, 4), q(1, 4), q(3, 4), q(3, 4)]).is_err());
        assert!(AbelianSlopeProfile::new([q(0, 1), q(0, 1), q(0, 1), q(1, 1)]).is_err());
        let p = AbelianSlopeProfile::new([q(1, 1), q(1, 2), q(0, 1), q(1, 2)]).unwrap();
        assert_eq!(p, AbelianSlopeProfile::P_RANK_ONE);
        assert_eq!("0,1/2,1/2,1".parse::<AbelianSlopeProfile>().unwrap(), p);
        assert_eq!(p.p_rank(), 1);
    }

    #[test]
    fn slope_functor() {
        let ord = kummer_slopes(&AbelianSlopeProfile::ORDINARY);
        assert_eq!(ord.to_string(), "{0x1, 1x20, 2x1}");
        assert_eq!(classify(&ord).unwrap(), Classification::Ordinary);

        let mixed = kummer_slopes(&AbelianSlopeProfile::P_RANK_ONE);
        assert_eq!(mixed.to_string(), "{1/2x2, 1x18, 3/2x2}");
        assert_eq!(height_of(&mixed).unwrap(), HeightValue::Finite(2));

        let ss = kummer_slopes(&AbelianSlopeProfile::SUPERSINGULAR);
        assert_eq!(ss.to_string(), "{1x22}");
        assert_eq!(classify(&ss).unwrap(), Classification::Supersingular);
    }

    #[test]
    fn degrees() {
        let p = KummerParams::uniform(9, 26, 1).unwrap();
        assert_eq!(polarization_degree(&p), 4196);
        assert_eq!(self_intersection_on_blowup(&p), 16784);
        let p = KummerParams::uniform(1, 32, 1).unwrap();
        assert_eq!(polarization_degree(&p), 48);
        let mut parts = [2; 16];
        parts[0] = 1;
        let p = KummerParams::new(1, 512, parts).unwrap();
        assert_eq!(polarization_degree(&p), 963);
        let p = KummerParams::uniform(1, 1, 1).unwrap();
        assert_eq!(self_intersection_on_blowup(&p), -56);
    }

    #[test]
    fn params_reject_zeros_and_wrong_length() {
        assert!(KummerParams::uniform(0, 1, 1).is_err());
        assert!(KummerParams::uniform(1, 0, 1).is_err());
        assert!(KummerParams::uniform(1, 1, 0).is_err());
        assert!(KummerParams::from_slice(1, 1, &[1; 15]).is_err());
        let err = serde_json::from_str::<KummerParams>(r#"{"n":1,"dprime":1,"parts":[1]}"#);
        assert!(err.is_err());
    }

    #[test]
    fn branch_bounds() {
        let p = KummerParams::uniform(9, 26, 4).unwrap();
        assert!(seshadri_generic_bound_holds(&p, 0));
        assert!(seshadri_elliptic_bound_holds(
            &p,
            0,
            AmplenessVariant::NonProduct
        ));
        assert!(!seshadri_elliptic_bound_holds(
            &p,
            0,
            AmplenessVariant::GeneralSurface
        ));

        let p = KummerParams::uniform(1, 32, 1).unwrap();
        assert!(!seshadri_generic_bound_holds(&p, 0));

        let p = KummerParams::uniform(1, 512, 2).unwrap();
        assert!(seshadri_generic_bound_holds(&p, 0));
        let v = AmplenessVariant::MinEllipticIntersection(9);
        assert!(seshadri_elliptic_bound_holds(&p, 0, v));
    }

    #[test]
    fn ampleness_reports() {
        let mut parts = [1u32; 16];
        for (j, v) in parts.iter_mut().enumerate() {
            *v = 1 + (j as u32 % 4);
        }
        let r = check_ampleness(
            &KummerParams::new(9, 26, parts).unwrap(),
            AmplenessVariant::NonProduct,
        );
        assert!(r.ample);

        let r = check_ampleness(
            &KummerParams::uniform(9, 1, 4).unwrap(),
            AmplenessVariant::NonProduct,
        );
        assert!(!r.ample);
        assert!(!r.generic_branch_ok);
        assert_eq!((r.parts[0].generic.lhs, r.parts[0].generic.rhs), (1024, 81));

        let r = check_ampleness(
            &KummerParams::uniform(1, 1, 1).unwrap(),
            AmplenessVariant::GeneralSurface,
        );
        assert!(!r.positivity_ok);
        assert_eq!(r.degree, -14);
        assert!(!r.ample);
    }

    #[test]
    fn boundary_is_not_ample() {
        // 64 * 1 = 1 * 64 exactly on the generic boundary
        let p = KummerParams::uniform(1, 64, 1).unwrap();
        assert!(!seshadri_generic_bound_holds(&p, 0));
        // 4 * 2 = 4 * 2 on the elliptic boundary
        let p = KummerParams::uniform(4, 100, 2).unwrap();
        assert!(!seshadri_elliptic_bound_holds(
            &p,
            0,
            AmplenessVariant::NonProduct
        ));
    }

    #[test]
    fn minimal_dprime_matches_scan() {
        for n in 1..=12u32 {
            for b in 1..=6u32 {
                for v in [
                    AmplenessVariant::GeneralSurface,
                    AmplenessVariant::NonProduct,
                    AmplenessVariant::MinEllipticIntersection(9),
                ] {
                    let parts = [b; 16];
                    let scanned = (1..=5000u32).find(|&d| {
                        check_ampleness(&KummerParams::new(n, d, parts).unwrap(), v).ample
                    });
                    assert_eq!(
                        minimal_ample_dprime(n, &parts, v),
                        scanned,
                        "n={n} b={b} {v}"
                    );
                }
            }
        }
        assert_eq!(
            minimal_ample_dprime(9, &[4; 16], AmplenessVariant::NonProduct),
            Some(13)
        );
    }

    #[test]
    fn strata_images() {
        assert_eq!(
            stratum_image(AbelianType::Ordinary).to_string(),
            "M(1) \\ M(2)"
        );
        assert_eq!(
            stratum_image(AbelianType::PRankOne).to_string(),
            "M(2) \\ M(3)"
        );
        assert_eq!(
            stratum_image(AbelianType::SupersingularNonSuperspecial).to_string(),
            "Sigma(9) \\ Sigma(10)"
        );
        assert_eq!(
            stratum_image(AbelianType::Superspecial).to_string(),
            "Sigma(10)"
        );
    }

    #[test]
    fn variant_parsing() {
        assert_eq!(
            "general".parse::<AmplenessVariant>().unwrap(),
            AmplenessVariant::GeneralSurface
        );
        assert_eq!(
            "min-elliptic:9".parse::<AmplenessVariant>().unwrap(),
            AmplenessVariant::MinEllipticIntersection(9)
        );
        assert!("min-elliptic:0".parse::<AmplenessVariant>().is_err());
        assert!("bogus".parse::<AmplenessVariant>().is_err());
    }

    #[test]
    fn parameters_are_capped() {
        assert!(KummerParams::uniform(MAX_PARAM, MAX_PARAM, MAX_PARAM).is_ok());
        let err = KummerParams::uniform(1, MAX_PARAM + 1, 1).unwrap_err();
        assert_eq!(err.name(), "InvalidParams");
        // the extreme case still fits comfortably in i64
        let p = KummerParams::uniform(MAX_PARAM, MAX_PARAM, 1).unwrap();
        assert!(i64::try_from(polarization_degree(&p)).is_ok());
    }
}
