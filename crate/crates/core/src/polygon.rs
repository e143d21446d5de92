//! Newton and Hodge polygons of F-crystals, heights of K3 surfaces and the
//! twenty-step height/Artin-invariant filtration of the moduli space.
//!
//! Everything here is exact: slopes are reduced fractions and polygon
//! comparisons are done on rational ordinates at integer abscissae.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Rank of the second cohomology of a K3 surface.
pub const K3_RANK: u32 = 22;
/// Weight of the second cohomology of a K3 surface.
pub const K3_WEIGHT: u32 = 2;
/// Rank of the first cohomology of an abelian surface.
pub const ABELIAN_RANK: u32 = 4;
/// Weight of the first cohomology of an abelian surface.
pub const ABELIAN_WEIGHT: u32 = 1;

/// Largest finite height of a K3 surface.
pub const MAX_FINITE_HEIGHT: u8 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("ZeroDenominator: slope {numerator}/0")]
    ZeroDenominator { numerator: i64 },
    #[error("InvalidSlope: cannot parse {0:?} as a rational slope")]
    InvalidSlope(String),
    #[error("UnsupportedShape: weight {weight} with rank {rank} (expected weight 1 rank 4 or weight 2 rank 22)")]
    UnsupportedShape { weight: u32, rank: u32 },
    #[error("RankMismatch: multiplicities sum to {found}, expected rank {expected}")]
    RankMismatch { expected: u32, found: u64 },
    #[error("SlopeOutOfRange: slope {slope} lies outside [0, {weight}]")]
    SlopeOutOfRange { slope: RationalSlope, weight: u32 },
    #[error("SymmetryViolation: slope {slope} has multiplicity {multiplicity} but its mirror {mirror} has multiplicity {mirror_multiplicity}")]
    SymmetryViolation {
        slope: RationalSlope,
        multiplicity: u32,
        mirror: RationalSlope,
        mirror_multiplicity: u32,
    },
    #[error("BreakIntegralityViolation: break point ({x}, {y}) is not integral")]
    BreakIntegralityViolation { x: u32, y: RationalSlope },
    #[error("NotK3Polygon: weight {weight} rank {rank} is not a K3 polygon")]
    NotK3Polygon { weight: u32, rank: u32 },
    #[error("BelowHodgePolygon: {0} dips below the K3 Hodge polygon")]
    BelowHodgePolygon(String),
    #[error("NonIntegralHeight: smallest slope {alpha} gives height outside 1..10")]
    NonIntegralHeight { alpha: RationalSlope },
    #[error("InvalidHeight: {0} is not a finite height in 1..10")]
    InvalidHeight(i64),
    #[error("InvalidHodgePolygon: {0}")]
    InvalidHodgePolygon(String),
    #[error("EndpointMismatch: Newton polygon ends at ({newton_x}, {newton_y}), Hodge polygon at ({hodge_x}, {hodge_y})")]
    EndpointMismatch {
        newton_x: u32,
        newton_y: RationalSlope,
        hodge_x: u32,
        hodge_y: u64,
    },
    #[error("MissingArtinInvariant: a supersingular point needs an Artin invariant")]
    MissingArtinInvariant,
    #[error("UnexpectedArtinInvariant: a point of finite height has no Artin invariant")]
    UnexpectedArtinInvariant,
    #[error("OddValuation: discriminant valuation {0} is odd")]
    OddValuation(u32),
    #[error("OutOfRange: Artin invariant {0} is outside 1..10")]
    OutOfRange(u32),
}

impl PolygonError {
    /// Variant name, as echoed by the command line front end.
    pub fn name(&self) -> &'static str {
        match self {
            Self::ZeroDenominator { .. } => "ZeroDenominator",
            Self::InvalidSlope(_) => "InvalidSlope",
            Self::UnsupportedShape { .. } => "UnsupportedShape",
            Self::RankMismatch { .. } => "RankMismatch",
            Self::SlopeOutOfRange { .. } => "SlopeOutOfRange",
            Self::SymmetryViolation { .. } => "SymmetryViolation",
            Self::BreakIntegralityViolation { .. } => "BreakIntegralityViolation",
            Self::NotK3Polygon { .. } => "NotK3Polygon",
            Self::BelowHodgePolygon(_) => "BelowHodgePolygon",
            Self::NonIntegralHeight { .. } => "NonIntegralHeight",
            Self::InvalidHeight(_) => "InvalidHeight",
            Self::InvalidHodgePolygon(_) => "InvalidHodgePolygon",
            Self::EndpointMismatch { .. } => "EndpointMismatch",
            Self::MissingArtinInvariant => "MissingArtinInvariant",
            Self::UnexpectedArtinInvariant => "UnexpectedArtinInvariant",
            Self::OddValuation(_) => "OddValuation",
            Self::OutOfRange(_) => "OutOfRange",
        }
    }
}

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalSlope(Ratio<i64>);

impl RationalSlope {
    pub const ZERO: Self = Self(Ratio::new_raw(0, 1));
    pub const HALF: Self = Self(Ratio::new_raw(1, 2));
    pub const ONE: Self = Self(Ratio::new_raw(1, 1));

    pub fn new(numerator: i64, denominator: i64) -> Result<Self, PolygonError> {
        if denominator == 0 {
            return Err(PolygonError::ZeroDenominator { numerator });
        }
        Ok(Self(Ratio::new(numerator, denominator)))
    }

    pub fn integer(value: i64) -> Self {
        Self(Ratio::from_integer(value))
    }

    pub fn from_ratio(ratio: Ratio<i64>) -> Self {
        Self(ratio)
    }

    pub fn numerator(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i64 {
        *self.0.denom()
    }

    pub fn as_ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl From<Ratio<i64>> for RationalSlope {
    fn from(r: Ratio<i64>) -> Self {
        Self(r)
    }
}

impl std::ops::Add for RationalSlope {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl std::ops::Sub for RationalSlope {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl fmt::Display for RationalSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for RationalSlope {
    type Err = PolygonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PolygonError::InvalidSlope(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n = n.trim().parse().map_err(|_| bad())?;
                let d = d.trim().parse().map_err(|_| bad())?;
                Self::new(n, d)
            }
            None => Ok(Self::integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for RationalSlope {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RationalSlope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One straight piece of a Newton polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub slope: RationalSlope,
    pub multiplicity: u32,
}

/// The Newton polygon of an F-crystal, in canonical form: equal slopes
/// merged, segments sorted by increasing slope.
///
/// Only the two shapes needed here are accepted: weight 1 rank 4 (first
/// cohomology of an abelian surface) and weight 2 rank 22 (second
/// cohomology of a K3 surface).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPolygon", into = "RawPolygon")]
pub struct NewtonPolygon {
    weight: u32,
    rank: u32,
    segments: Vec<Segment>,
}

#[derive(Serialize, Deserialize)]
struct RawPolygon {
    weight: u32,
    rank: u32,
    segments: Vec<(i64, i64, u32)>,
}

impl TryFrom<RawPolygon> for NewtonPolygon {
    type Error = PolygonError;

    fn try_from(raw: RawPolygon) -> Result<Self, Self::Error> {
        let slopes = raw
            .segments
            .iter()
            .map(|&(n, d, m)| Ok((RationalSlope::new(n, d)?, m)))
            .collect::<Result<Vec<_>, PolygonError>>()?;
        make_newton(raw.weight, raw.rank, slopes)
    }
}

impl From<NewtonPolygon> for RawPolygon {
    fn from(np: NewtonPolygon) -> Self {
        RawPolygon {
            weight: np.weight,
            rank: np.rank,
            segments: np
                .segments
                .iter()
                .map(|s| (s.slope.numerator(), s.slope.denominator(), s.multiplicity))
                .collect(),
        }
    }
}

impl NewtonPolygon {
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_k3(&self) -> bool {
        self.weight == K3_WEIGHT && self.rank == K3_RANK
    }

    /// Smallest slope.
    pub fn min_slope(&self) -> RationalSlope {
        self.segments[0].slope
    }

    /// Multiplicity of `slope`, zero when absent.
    pub fn multiplicity_of(&self, slope: RationalSlope) -> u32 {
        self.segments
            .iter()
            .find(|s| s.slope == slope)
            .map_or(0, |s| s.multiplicity)
    }

    /// Slopes with repetition, in increasing order.
    pub fn slopes(&self) -> Vec<RationalSlope> {
        self.segments
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.slope, s.multiplicity as usize))
            .collect()
    }

    /// Ordinate of the polygon at integer abscissa `x`, `0 <= x <= rank`.
    pub fn y_at(&self, x: u32) -> Ratio<i64> {
        assert!(x <= self.rank, "abscissa {x} beyond rank {}", self.rank);
        let mut remaining = x;
        let mut y = Ratio::zero();
        for seg in &self.segments {
            let step = remaining.min(seg.multiplicity);
            y += seg.slope.as_ratio() * i64::from(step);
            remaining -= step;
            if remaining == 0 {
                break;
            }
        }
        y
    }

    /// Break points, starting with the origin.
    pub fn vertices(&self) -> Vec<(u32, Ratio<i64>)> {
        let mut out = vec![(0, Ratio::zero())];
        let (mut x, mut y) = (0u32, Ratio::<i64>::zero());
        for seg in &self.segments {
            x += seg.multiplicity;
            y += seg.slope.as_ratio() * i64::from(seg.multiplicity);
            out.push((x, y));
        }
        out
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .segments
            .iter()
            .map(|s| format!("{}x{}", s.slope, s.multiplicity))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Builds a Newton polygon from a multiset of slopes given as
/// `(slope, multiplicity)` pairs in any order, possibly with repeats.
pub fn make_newton<I>(weight: u32, rank: u32, slopes: I) -> Result<NewtonPolygon, PolygonError>
where
    I: IntoIterator<Item = (RationalSlope, u32)>,
{
    if !matches!((weight, rank), (1, 4) | (2, 22)) {
        return Err(PolygonError::UnsupportedShape { weight, rank });
    }
    let mut merged: BTreeMap<RationalSlope, u32> = BTreeMap::new();
    let mut total: u64 = 0;
    for (slope, mult) in slopes {
        total += u64::from(mult);
        if mult > 0 {
            *merged.entry(slope).or_default() += mult;
        }
    }
    if total != u64::from(rank) {
        return Err(PolygonError::RankMismatch {
            expected: rank,
            found: total,
        });
    }
    let top = RationalSlope::integer(i64::from(weight));
    for &slope in merged.keys() {
        if slope < RationalSlope::ZERO || slope > top {
            return Err(PolygonError::SlopeOutOfRange { slope, weight });
        }
    }
    for (&slope, &multiplicity) in &merged {
        let mirror = top - slope;
        let mirror_multiplicity = merged.get(&mirror).copied().unwrap_or(0);
        if mirror_multiplicity != multiplicity {
            return Err(PolygonError::SymmetryViolation {
                slope,
                multiplicity,
                mirror,
                mirror_multiplicity,
            });
        }
    }
    let segments: Vec<Segment> = merged
        .into_iter()
        .map(|(slope, multiplicity)| Segment {
            slope,
            multiplicity,
        })
        .collect();
    let (mut x, mut y) = (0u32, Ratio::<i64>::zero());
    for seg in &segments {
        x += seg.multiplicity;
        y += seg.slope.as_ratio() * i64::from(seg.multiplicity);
        if !y.is_integer() {
            return Err(PolygonError::BreakIntegralityViolation {
                x,
                y: RationalSlope::from(y),
            });
        }
    }
    Ok(NewtonPolygon {
        weight,
        rank,
        segments,
    })
}

/// Height of the formal Brauer group of a K3 surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeightValue {
    Finite(u8),
    Infinite,
}

impl HeightValue {
    pub fn finite(h: i64) -> Result<Self, PolygonError> {
        match u8::try_from(h) {
            Ok(v) if (1..=MAX_FINITE_HEIGHT).contains(&v) => Ok(Self::Finite(v)),
            _ => Err(PolygonError::InvalidHeight(h)),
        }
    }

    /// All eleven admissible heights, `1..=10` then infinity.
    pub fn all() -> impl Iterator<Item = HeightValue> {
        (1..=MAX_FINITE_HEIGHT)
            .map(HeightValue::Finite)
            .chain(std::iter::once(HeightValue::Infinite))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinite)
    }
}

impl PartialOrd for HeightValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeightValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Self::Finite(a), Self::Finite(b)) => a.cmp(b),
            (Self::Finite(_), Self::Infinite) => Ordering::Less,
            (Self::Infinite, Self::Finite(_)) => Ordering::Greater,
            (Self::Infinite, Self::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for HeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(h) => write!(f, "{h}"),
            Self::Infinite => f.write_str("infinite"),
        }
    }
}

impl FromStr for HeightValue {
    type Err = PolygonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("infinite") || s.eq_ignore_ascii_case("inf") {
            return Ok(Self::Infinite);
        }
        let h: i64 = s
            .parse()
            .map_err(|_| PolygonError::InvalidSlope(s.to_string()))?;
        Self::finite(h)
    }
}

impl Serialize for HeightValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Finite(h) => serializer.serialize_u8(*h),
            Self::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for HeightValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(h) => HeightValue::finite(h),
            Repr::Str(s) => s.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// Height of the K3 surface with Newton polygon `np`: `1/(1-a)` for the
/// smallest slope `a`, or infinite when `a = 1`.
///
/// The polygon must lie on or above the K3 Hodge polygon; otherwise e.g.
/// `{0x2, 1x18, 2x2}` would pass as ordinary.
pub fn height_of(np: &NewtonPolygon) -> Result<HeightValue, PolygonError> {
    if !np.is_k3() {
        return Err(PolygonError::NotK3Polygon {
            weight: np.weight,
            rank: np.rank,
        });
    }
    let alpha = np.min_slope();
    let height = if alpha == RationalSlope::ONE {
        HeightValue::Infinite
    } else {
        let gap = Ratio::one() - alpha.as_ratio();
        // 1/gap is an integer h exactly when gap = 1/h.
        match (*gap.numer() == 1).then(|| HeightValue::finite(*gap.denom())) {
            Some(Ok(h)) => h,
            _ => return Err(PolygonError::NonIntegralHeight { alpha }),
        }
    };
    if !lies_above(np, &hodge_k3())? {
        return Err(PolygonError::BelowHodgePolygon(np.to_string()));
    }
    Ok(height)
}

/// The unique K3 Newton polygon of height `h`.
pub fn newton_from_height(h: HeightValue) -> NewtonPolygon {
    let slopes = match h {
        HeightValue::Infinite => vec![(RationalSlope::ONE, K3_RANK)],
        HeightValue::Finite(h) => {
            let h = i64::from(h);
            let hu = h as u32;
            vec![
                (RationalSlope::from(Ratio::new(h - 1, h)), hu),
                (RationalSlope::ONE, K3_RANK - 2 * hu),
                (RationalSlope::from(Ratio::new(h + 1, h)), hu),
            ]
        }
    };
    make_newton(K3_WEIGHT, K3_RANK, slopes).expect("height polygons are valid by construction")
}

/// Hodge polygon in degree `m`: slope `i` with multiplicity `h^{i,m-i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgePolygon {
    degree: u32,
    entries: Vec<(u32, u32)>,
}

impl HodgePolygon {
    pub fn new(degree: u32, entries: Vec<(u32, u32)>) -> Result<Self, PolygonError> {
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(PolygonError::InvalidHodgePolygon(
                "slopes must be strictly increasing".into(),
            ));
        }
        if let Some(&(i, _)) = entries.iter().find(|&&(i, _)| i > degree) {
            return Err(PolygonError::InvalidHodgePolygon(format!(
                "slope {i} exceeds degree {degree}"
            )));
        }
        Ok(Self { degree, entries })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn rank(&self) -> u32 {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    pub fn end_y(&self) -> u64 {
        self.entries
            .iter()
            .map(|&(i, m)| u64::from(i) * u64::from(m))
            .sum()
    }

    pub fn y_at(&self, x: u32) -> u64 {
        let mut remaining = x;
        let mut y = 0u64;
        for &(i, m) in &self.entries {
            let step = remaining.min(m);
            y += u64::from(i) * u64::from(step);
            remaining -= step;
        }
        y
    }
}

/// Hodge polygon of a K3 surface: `h^{0,2} = h^{2,0} = 1`, `h^{1,1} = 20`.
pub fn hodge_k3() -> HodgePolygon {
    HodgePolygon {
        degree: 2,
        entries: vec![(0, 1), (1, 20), (2, 1)],
    }
}

/// Whether the Newton polygon lies on or above the Hodge polygon.
///
/// Both polygons have all break points at integer abscissae, so checking
/// the integer abscissae `0..=rank` is exact.
pub fn lies_above(np: &NewtonPolygon, hp: &HodgePolygon) -> Result<bool, PolygonError> {
    let newton_end = np.y_at(np.rank);
    if np.rank != hp.rank() || newton_end != Ratio::from_integer(hp.end_y() as i64) {
        return Err(PolygonError::EndpointMismatch {
            newton_x: np.rank,
            newton_y: newton_end.into(),
            hodge_x: hp.rank(),
            hodge_y: hp.end_y(),
        });
    }
    Ok((0..=np.rank).all(|x| np.y_at(x) >= Ratio::from_integer(hp.y_at(x) as i64)))
}

/// Ordinary / finite height / supersingular trichotomy of a K3 surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Ordinary,
    FiniteHeight(u8),
    Supersingular,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Ordinary => "ordinary",
            Self::FiniteHeight(_) => "finite-height",
            Self::Supersingular => "supersingular",
        }
    }

    pub fn height(&self) -> HeightValue {
        match self {
            Self::Ordinary => HeightValue::Finite(1),
            Self::FiniteHeight(h) => HeightValue::Finite(*h),
            Self::Supersingular => HeightValue::Infinite,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

pub fn classify(np: &NewtonPolygon) -> Result<Classification, PolygonError> {
    Ok(match height_of(np)? {
        HeightValue::Finite(1) => Classification::Ordinary,
        HeightValue::Finite(h) => Classification::FiniteHeight(h),
        HeightValue::Infinite => Classification::Supersingular,
    })
}

/// Artin invariant of a supersingular K3 surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct ArtinInvariant(u8);

impl ArtinInvariant {
    pub fn new(sigma0: u32) -> Result<Self, PolygonError> {
        if (1..=10).contains(&sigma0) {
            Ok(Self(sigma0 as u8))
        } else {
            Err(PolygonError::OutOfRange(sigma0))
        }
    }

    pub fn get(&self) -> u8 {
        self.0
    }
}

impl TryFrom<u32> for ArtinInvariant {
    type Error = PolygonError;
    fn try_from(v: u32) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<ArtinInvariant> for u32 {
    fn from(a: ArtinInvariant) -> u32 {
        u32::from(a.0)
    }
}

/// Recovers the Artin invariant from `ord_p` of the Neron-Severi
/// discriminant, which equals `2 * sigma0`.
pub fn artin_from_discriminant_valuation(v: u32) -> Result<ArtinInvariant, PolygonError> {
    if !v.is_multiple_of(2) {
        return Err(PolygonError::OddValuation(v));
    }
    ArtinInvariant::new(v / 2)
}

/// A closed stratum of the filtration
/// `M(1) ⊃ M(2) ⊃ ... ⊃ M(11) = Σ(1) ⊃ ... ⊃ Σ(10)`.
///
/// `Height(11)` and `Artin(1)` are the same stratum and compare equal.
#[derive(Debug, Clone, Copy)]
pub enum Stratum {
    /// Height at least `h`, `1 <= h <= 11`.
    Height(u8),
    /// Supersingular with Artin invariant at most `11 - i`, `1 <= i <= 10`.
    Artin(u8),
}

impl Stratum {
    /// Number of distinct strata in the filtration.
    pub const COUNT: usize = 20;

    /// Zero-based position along the filtration; larger is deeper.
    pub fn position(&self) -> u8 {
        match *self {
            Self::Height(h) => h - 1,
            Self::Artin(i) => 9 + i,
        }
    }

    pub fn from_position(pos: u8) -> Option<Self> {
        match pos {
            0..=9 => Some(Self::Height(pos + 1)),
            10..=19 => Some(Self::Artin(pos - 9)),
            _ => None,
        }
    }

    /// All twenty strata in filtration order.
    pub fn all() -> impl Iterator<Item = Stratum> {
        (0..Self::COUNT as u8).filter_map(Self::from_position)
    }

    /// The next (smaller) stratum, if any.
    pub fn next(&self) -> Option<Self> {
        Self::from_position(self.position() + 1)
    }
}

impl PartialEq for Stratum {
    fn eq(&self, other: &Self) -> bool {
        self.position() == other.position()
    }
}

impl Eq for Stratum {}

impl PartialOrd for Stratum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Stratum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.position().cmp(&other.position())
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Height(h) => write!(f, "M({h})"),
            Self::Artin(i) => write!(f, "Sigma({i})"),
        }
    }
}

/// A stratum together with the "strict" flag: the point lies in the
/// stratum but not in the next one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StratumLabel {
    pub stratum: Stratum,
    pub strict: bool,
}

impl StratumLabel {
    /// Label of a point lying exactly in `stratum`. The bottom stratum has
    /// no successor, so its label is never strict.
    pub fn exact(stratum: Stratum) -> Self {
        Self {
            stratum,
            strict: stratum.next().is_some(),
        }
    }
}

impl fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.strict, self.stratum.next()) {
            (true, Some(next)) => write!(f, "{} \\ {}", self.stratum, next),
            _ => write!(f, "{}", self.stratum),
        }
    }
}

impl Serialize for StratumLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("StratumLabel", 3)?;
        st.serialize_field("stratum", &self.stratum.to_string())?;
        st.serialize_field("strict", &self.strict)?;
        st.serialize_field("label", &self.to_string())?;
        st.end()
    }
}

/// Places a point with height `h` (and Artin invariant `sigma0` when
/// supersingular) in the filtration.
pub fn stratum_of(
    h: HeightValue,
    sigma0: Option<ArtinInvariant>,
) -> Result<StratumLabel, PolygonError> {
    match (h, sigma0) {
        (HeightValue::Finite(h), None) => Ok(StratumLabel::exact(Stratum::Height(h))),
        (HeightValue::Finite(_), Some(_)) => Err(PolygonError::UnexpectedArtinInvariant),
        (HeightValue::Infinite, Some(s)) => Ok(StratumLabel::exact(Stratum::Artin(11 - s.get()))),
        (HeightValue::Infinite, None) => Err(PolygonError::MissingArtinInvariant),
    }
}
