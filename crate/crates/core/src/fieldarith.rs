//! Elliptic curves over small prime fields, their Frobenius traces, and the
//! Kummer surfaces of products of two such curves.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kummer::{classify_profile, AbelianSlopeProfile, AbelianType, KummerStratum};
use crate::polygon::{ArtinInvariant, PolygonError, RationalSlope};

/// Largest characteristic accepted for naive point counting.
pub const MAX_PRIME: u32 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("NotPrime: {0} is not prime")]
    NotPrime(u64),
    #[error("UnsupportedCharacteristic: p = {0} must satisfy 3 < p <= 2^20")]
    UnsupportedCharacteristic(u64),
    #[error("SingularCurve: 4a^3 + 27b^2 = 0 for a = {a}, b = {b} over F_{p}")]
    SingularCurve { p: u32, a: u32, b: u32 },
    #[error("FieldMismatch: curves over F_{0} and F_{1}")]
    FieldMismatch(u32, u32),
    #[error("{0}")]
    Polygon(#[from] PolygonError),
}

impl FieldError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::NotPrime(_) => "NotPrime",
            Self::UnsupportedCharacteristic(_) => "UnsupportedCharacteristic",
            Self::SingularCurve { .. } => "SingularCurve",
            Self::FieldMismatch(..) => "FieldMismatch",
            Self::Polygon(e) => e.name(),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A prime field `F_p` with `3 < p <= 2^20`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeFieldSpec {
    p: u32,
}

impl PrimeFieldSpec {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p <= 3 || p > u64::from(MAX_PRIME) {
            return Err(FieldError::UnsupportedCharacteristic(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(i64::from(self.p)) as u32
    }

    /// Quadratic character table: `chi[x]` is 0, 1 or -1.
    fn quadratic_character(&self) -> Vec<i8> {
        let p = self.p as usize;
        let mut chi = vec![-1i8; p];
        chi[0] = 0;
        for y in 1..=p / 2 {
            chi[y * y % p] = 1;
        }
        chi
    }

    /// Smallest quadratic non-residue.
    pub fn non_residue(&self) -> u32 {
        let chi = self.quadratic_character();
        chi.iter()
            .position(|&c| c == -1)
            .expect("odd prime fields have non-residues") as u32
    }
}

/// `y^2 = x^3 + a x + b` over `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCurve", into = "RawCurve")]
pub struct EllipticCurveData {
    field: PrimeFieldSpec,
    a: u32,
    b: u32,
}

#[derive(Serialize, Deserialize)]
struct RawCurve {
    p: u64,
    a: i64,
    b: i64,
}

impl TryFrom<RawCurve> for EllipticCurveData {
    type Error = FieldError;
    fn try_from(raw: RawCurve) -> Result<Self, Self::Error> {
        EllipticCurveData::new(PrimeFieldSpec::new(raw.p)?, raw.a, raw.b)
    }
}

impl From<EllipticCurveData> for RawCurve {
    fn from(e: EllipticCurveData) -> Self {
        RawCurve {
            p: u64::from(e.field.p),
            a: i64::from(e.a),
            b: i64::from(e.b),
        }
    }
}

impl EllipticCurveData {
    /// Reduces `a` and `b` modulo `p` and rejects singular curves.
    pub fn new(field: PrimeFieldSpec, a: i64, b: i64) -> Result<Self, FieldError> {
        let (a, b) = (field.reduce(a), field.reduce(b));
        let p = u64::from(field.p);
        let (a64, b64) = (u64::from(a), u64::from(b));
        let disc = (4 * (a64 * a64 % p) * a64 + 27 * (b64 * b64 % p)) % p;
        if disc == 0 {
            return Err(FieldError::SingularCurve { p: field.p, a, b });
        }
        Ok(Self { field, a, b })
    }

    pub fn field(&self) -> PrimeFieldSpec {
        self.field
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    fn rhs(&self, x: u64) -> usize {
        let p = u64::from(self.field.p);
        ((x * x % p * x + u64::from(self.a) * x + u64::from(self.b)) % p) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FrobeniusData {
    pub point_count: u64,
    /// `a_p = p + 1 - #E(F_p)`.
    pub trace: i64,
    pub supersingular: bool,
}

/// `#E(F_p) = 1 + sum_x (1 + chi(x^3 + a x + b))`.
pub fn count_points(e: &EllipticCurveData) -> FrobeniusData {
    let p = e.field.p;
    let chi = e.field.quadratic_character();
    let char_sum: i64 = (0..u64::from(p)).map(|x| i64::from(chi[e.rhs(x)])).sum();
    let point_count = (i64::from(p) + 1 + char_sum) as u64;
    let trace = -char_sum;
    assert!(
        (trace * trace) as u64 <= 4 * u64::from(p),
        "Hasse bound violated for {e:?}: a_p = {trace}"
    );
    FrobeniusData {
        point_count,
        trace,
        // for p >= 5, |a_p| <= 2 sqrt(p) < p, so a_p ≡ 0 (mod p) iff a_p = 0
        supersingular: trace % i64::from(p) == 0,
    }
}

/// Counts a batch of curves in parallel.
pub fn count_points_batch(curves: &[EllipticCurveData]) -> Vec<FrobeniusData> {
    curves.par_iter().map(count_points).collect()
}

/// The twist `y^2 = x^3 + c^2 a x + c^3 b` by the smallest non-residue `c`.
pub fn quadratic_twist(e: &EllipticCurveData) -> EllipticCurveData {
    let p = u64::from(e.field.p);
    let c = u64::from(e.field.non_residue());
    let a = c * c % p * u64::from(e.a) % p;
    let b = c * c % p * c % p * u64::from(e.b) % p;
    EllipticCurveData::new(e.field, a as i64, b as i64).expect("twists of smooth curves are smooth")
}

/// Newton slopes of `H^1` of the curve: `(1/2, 1/2)` when supersingular,
/// `(0, 1)` otherwise.
pub fn curve_slopes(f: &FrobeniusData) -> (RationalSlope, RationalSlope) {
    if f.supersingular {
        (RationalSlope::HALF, RationalSlope::HALF)
    } else {
        (RationalSlope::ZERO, RationalSlope::ONE)
    }
}

/// Slopes of `E1 x E2`: the sorted concatenation of both curves' slopes.
pub fn product_profile(
    e1: &EllipticCurveData,
    e2: &EllipticCurveData,
) -> Result<AbelianSlopeProfile, FieldError> {
    if e1.field != e2.field {
        return Err(FieldError::FieldMismatch(e1.field.p, e2.field.p));
    }
    let (a, b) = curve_slopes(&count_points(e1));
    let (c, d) = curve_slopes(&count_points(e2));
    Ok(
        AbelianSlopeProfile::new([a, b, c, d])
            .expect("products of curves give admissible profiles"),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductSurface {
    pub p: u32,
    pub curves: [CurveSummary; 2],
    pub abelian_type: AbelianType,
    #[serde(flatten)]
    pub kummer: KummerStratum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveSummary {
    pub a: u32,
    pub b: u32,
    #[serde(flatten)]
    pub frobenius: FrobeniusData,
}

/// Stratum of the Kummer surface of `E1 x E2`. A product of two
/// supersingular curves is superspecial, so its Kummer surface has Artin
/// invariant 1.
pub fn classify_kummer_of_product(
    e1: &EllipticCurveData,
    e2: &EllipticCurveData,
) -> Result<ProductSurface, FieldError> {
    let profile = product_profile(e1, e2)?;
    let abelian_type = match profile.p_rank() {
        2 => AbelianType::Ordinary,
        1 => AbelianType::PRankOne,
        _ => AbelianType::Superspecial,
    };
    let sigma0 = (abelian_type == AbelianType::Superspecial)
        .then(|| ArtinInvariant::new(1).expect("1 is in range"));
    let kummer = classify_profile(&profile, sigma0)?;
    let summary = |e: &EllipticCurveData| CurveSummary {
        a: e.a,
        b: e.b,
        frobenius: count_points(e),
    };
    Ok(ProductSurface {
        p: e1.field.p,
        curves: [summary(e1), summary(e2)],
        abelian_type,
        kummer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{HeightValue, Stratum};

    fn curve(p: u64, a: i64, b: i64) -> EllipticCurveData {
        EllipticCurveData::new(PrimeFieldSpec::new(p).unwrap(), a, b).unwrap()
    }

    #[test]
    fn field_validation() {
        assert_eq!(
            PrimeFieldSpec::new(3).unwrap_err().name(),
            "UnsupportedCharacteristic"
        );
        assert_eq!(PrimeFieldSpec::new(9).unwrap_err().name(), "NotPrime");
        assert_eq!(
            PrimeFieldSpec::new(u64::from(MAX_PRIME) + 7)
                .unwrap_err()
                .name(),
            "UnsupportedCharacteristic"
        );
        assert!(PrimeFieldSpec::new(1_048_573).is_ok());
    }

    #[test]
    fn singular_curves_are_rejected() {
        let f = PrimeFieldSpec::new(5).unwrap();
        assert_eq!(
            EllipticCurveData::new(f, 0, 0).unwrap_err().name(),
            "SingularCurve"
        );
        // 4(-3)^3 + 27(2)^2 = 0
        assert_eq!(
            EllipticCurveData::new(f, -3, 2).unwrap_err().name(),
            "SingularCurve"
        );
    }

    #[test]
    fn known_counts() {
        let f = count_points(&curve(7, 1, 0));
        assert_eq!((f.trace, f.supersingular), (0, true));
        let f = count_points(&curve(5, 0, 1));
        assert_eq!((f.point_count, f.trace, f.supersingular), (6, 0, true));
        // frozen from direct enumeration of (x, y) pairs
        let f = count_points(&curve(5, 1, 1));
        assert_eq!((f.point_count, f.trace, f.supersingular), (9, -3, false));
    }

    #[test]
    fn slopes_and_profiles() {
        let ord = curve(5, 1, 1);
        let ss = curve(5, 0, 1);
        assert_eq!(
            product_profile(&ord, &ord).unwrap(),
            AbelianSlopeProfile::ORDINARY
        );
        assert_eq!(
            product_profile(&ord, &ss).unwrap(),
            AbelianSlopeProfile::P_RANK_ONE
        );
        assert_eq!(
            product_profile(&ss, &ss).unwrap(),
            AbelianSlopeProfile::SUPERSINGULAR
        );
        let (a, b) = curve_slopes(&count_points(&ord));
        assert_eq!(a + b, RationalSlope::ONE);
        assert_eq!(
            product_profile(&ord, &curve(7, 1, 0)).unwrap_err().name(),
            "FieldMismatch"
        );
    }

    #[test]
    fn product_classification() {
        let ord = curve(5, 1, 1);
        let ss = curve(5, 0, 1);
        let r = classify_kummer_of_product(&ord, &ord).unwrap();
        assert_eq!(r.kummer.height, HeightValue::Finite(1));
        assert_eq!(r.kummer.stratum.to_string(), "M(1) \\ M(2)");
        let r = classify_kummer_of_product(&ord, &ss).unwrap();
        assert_eq!(r.kummer.height, HeightValue::Finite(2));
        assert_eq!(r.kummer.stratum.to_string(), "M(2) \\ M(3)");
        let r = classify_kummer_of_product(&ss, &ss).unwrap();
        assert_eq!(r.kummer.height, HeightValue::Infinite);
        assert_eq!(r.kummer.stratum.stratum, Stratum::Artin(10));
    }

    #[test]
    fn twist_negates_trace() {
        for (p, a, b) in [(5, 1, 1), (11, 1, 3), (101, 7, 13)] {
            let e = curve(p, a, b);
            assert_eq!(
                count_points(&quadratic_twist(&e)).trace,
                -count_points(&e).trace
            );
        }
    }

    #[test]
    fn json_curves() {
        let e: EllipticCurveData = serde_json::from_str(r#"{"p":7,"a":-6,"b":0}"#).unwrap();
        assert_eq!((e.a(), e.b()), (1, 0));
        assert!(serde_json::from_str::<EllipticCurveData>(r#"{"p":8,"a":1,"b":0}"#).is_err());
    }
}
