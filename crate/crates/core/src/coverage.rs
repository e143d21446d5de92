//! Reachable values of `n_1^2 + ... + n_k^2` with bounded parts, their
//! residues, and the polarization degrees `d = 2 n^2 d' - sum n_j^2` they
//! produce.
//!
//! Two independent dynamic programs are kept: one over exact sums and one
//! directly over `Z/m`. Reducing the first must reproduce the second.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::kummer::{
    check_ampleness, minimal_ample_dprime, AmplenessReport, AmplenessVariant, KummerParams,
    MAX_PARAM, TWO_TORSION_POINTS,
};

/// Number of parts in every Kummer polarization.
pub const PARTS: u32 = TWO_TORSION_POINTS as u32;

/// Largest modulus accepted by the residue DP.
pub const MAX_MODULUS: u64 = 1 << 28;
/// Largest number of parts accepted by either DP.
pub const MAX_PARTS: u32 = 1024;
/// Cap on the bits held by all layers of a [`SumSet`].
const MAX_SUM_BITS: u128 = 1 << 30;
/// Cap on the candidate degrees examined by [`achievable_degrees`].
const MAX_DEGREE_CANDIDATES: u128 = 1 << 26;

fn check_shape(parts: u32, max_part: u32) -> Result<(), CoverageError> {
    if parts == 0 || max_part == 0 {
        return Err(CoverageError::InvalidInput(
            "parts and max_part must be positive".into(),
        ));
    }
    if parts > MAX_PARTS {
        return Err(CoverageError::InvalidInput(format!(
            "{parts} parts exceeds the limit of {MAX_PARTS}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverageError {
    #[error("PartBoundEmpty: n = {n} leaves no part with 1 <= n_j < n/2")]
    PartBoundEmpty { n: u32 },
    #[error("IncompleteResidueCoverage: {} of {modulus} residues unreachable: {missing:?}", missing.len())]
    IncompleteResidueCoverage { modulus: u64, missing: Vec<u64> },
    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}

impl CoverageError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::PartBoundEmpty { .. } => "PartBoundEmpty",
            Self::IncompleteResidueCoverage { .. } => "IncompleteResidueCoverage",
            Self::InvalidInput(_) => "InvalidInput",
        }
    }
}

fn squares(max_part: u32) -> impl Iterator<Item = (u32, u64)> {
    (1..=max_part).map(|v| (v, u64::from(v) * u64::from(v)))
}

/// All sums `n_1^2 + ... + n_k^2` with `1 <= n_j <= max_part`, with the DP
/// layers kept so that every sum can be traced back to a witness tuple.
#[derive(Debug, Clone)]
pub struct SumSet {
    parts: u32,
    max_part: u32,
    // layers[t] holds the sums reachable with t parts.
    layers: Vec<FixedBitSet>,
}

/// Computes the sum set by `k` rounds of `S_t = { s + v^2 : s in S_{t-1} }`.
pub fn reachable_sums(parts: u32, max_part: u32) -> Result<SumSet, CoverageError> {
    check_shape(parts, max_part)?;
    let top = u128::from(parts) * u128::from(max_part).pow(2);
    if (top + 1) * (u128::from(parts) + 1) > MAX_SUM_BITS {
        return Err(CoverageError::InvalidInput(format!(
            "sums of {parts} squares up to {max_part}^2 need too much memory"
        )));
    }
    let top = top as usize;
    let mut layers = Vec::with_capacity(parts as usize + 1);
    let mut base = FixedBitSet::with_capacity(top + 1);
    base.insert(0);
    layers.push(base);
    for _ in 0..parts {
        let prev = layers.last().expect("layer 0 present");
        let mut next = FixedBitSet::with_capacity(top + 1);
        for s in prev.ones() {
            for (_, sq) in squares(max_part) {
                next.insert(s + sq as usize);
            }
        }
        layers.push(next);
    }
    Ok(SumSet {
        parts,
        max_part,
        layers,
    })
}

impl SumSet {
    pub fn parts(&self) -> u32 {
        self.parts
    }

    pub fn max_part(&self) -> u32 {
        self.max_part
    }

    fn top(&self) -> &FixedBitSet {
        &self.layers[self.parts as usize]
    }

    pub fn contains(&self, s: u64) -> bool {
        usize::try_from(s).is_ok_and(|s| s < self.top().len() && self.top().contains(s))
    }

    /// Reachable sums in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.top().ones().map(|s| s as u64)
    }

    pub fn len(&self) -> usize {
        self.top().count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn min(&self) -> u64 {
        self.iter().next().expect("sum sets are never empty")
    }

    pub fn max(&self) -> u64 {
        self.top().maximum().expect("sum sets are never empty") as u64
    }

    pub fn to_set(&self) -> BTreeSet<u64> {
        self.iter().collect()
    }

    /// A tuple of parts realizing `s`, found by walking the layers
    /// backwards and always taking the smallest feasible part. The first
    /// entry is the part chosen for the last layer.
    pub fn witness(&self, s: u64) -> Option<Vec<u32>> {
        if !self.contains(s) {
            return None;
        }
        let mut rest = s;
        let mut parts = Vec::with_capacity(self.parts as usize);
        for t in (1..=self.parts as usize).rev() {
            let (v, sq) = squares(self.max_part)
                .find(|&(_, sq)| sq <= rest && self.layers[t - 1].contains((rest - sq) as usize))
                .expect("a reachable sum has a predecessor in the previous layer");
            parts.push(v);
            rest -= sq;
        }
        debug_assert_eq!(rest, 0);
        Some(parts)
    }
}

/// A subset of `Z/m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSet {
    modulus: u64,
    members: FixedBitSet,
}

impl ResidueSet {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn contains(&self, r: u64) -> bool {
        r < self.modulus && self.members.contains(r as usize)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.len() as u64 == self.modulus
    }

    pub fn members(&self) -> Vec<u64> {
        self.members.ones().map(|r| r as u64).collect()
    }

    pub fn missing(&self) -> Vec<u64> {
        self.members.zeroes().map(|r| r as u64).collect()
    }

    pub fn is_subset(&self, other: &ResidueSet) -> bool {
        self.modulus == other.modulus && self.members.is_subset(&other.members)
    }
}

impl Serialize for ResidueSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("ResidueSet", 4)?;
        st.serialize_field("modulus", &self.modulus)?;
        st.serialize_field("count", &self.len())?;
        st.serialize_field("full", &self.is_full())?;
        st.serialize_field("members", &self.members())?;
        st.end()
    }
}

fn check_modulus(modulus: u64) -> Result<usize, CoverageError> {
    if modulus == 0 {
        return Err(CoverageError::InvalidInput(
            "modulus must be positive".into(),
        ));
    }
    if modulus > MAX_MODULUS {
        return Err(CoverageError::InvalidInput(format!(
            "modulus {modulus} exceeds the limit of {MAX_MODULUS}"
        )));
    }
    Ok(modulus as usize)
}

/// Residues of the reachable sums, computed by a DP on `Z/m` that never
/// materializes the sums.
pub fn reachable_residues(
    modulus: u64,
    parts: u32,
    max_part: u32,
) -> Result<ResidueSet, CoverageError> {
    let m = check_modulus(modulus)?;
    check_shape(parts, max_part)?;
    let steps: BTreeSet<usize> = squares(max_part)
        .map(|(_, sq)| (sq % modulus) as usize)
        .collect();
    let mut layer = FixedBitSet::with_capacity(m);
    layer.insert(0);
    for _ in 0..parts {
        let mut next = FixedBitSet::with_capacity(m);
        for r in layer.ones() {
            for &step in &steps {
                let t = r + step;
                next.insert(if t >= m { t - m } else { t });
            }
        }
        layer = next;
    }
    Ok(ResidueSet {
        modulus,
        members: layer,
    })
}

/// The same residue set, obtained by reducing [`reachable_sums`].
pub fn reachable_residues_via_sums(
    modulus: u64,
    parts: u32,
    max_part: u32,
) -> Result<ResidueSet, CoverageError> {
    let m = check_modulus(modulus)?;
    let sums = reachable_sums(parts, max_part)?;
    let mut members = FixedBitSet::with_capacity(m);
    for s in sums.iter() {
        members.insert((s % modulus) as usize);
    }
    Ok(ResidueSet { modulus, members })
}

/// Every residue modulo `2 * 9^2 = 162` is a sum of sixteen squares of
/// integers in `[1, 4]`.
pub fn verify_lemma_res() -> bool {
    verify_lemma_res_with_bound(4)
}

/// [`verify_lemma_res`] with parts in `[1, max_part]`.
pub fn verify_lemma_res_with_bound(max_part: u32) -> bool {
    reachable_residues(162, PARTS, max_part).is_ok_and(|r| r.is_full())
}

/// Largest part allowed by `n_j < n/2`.
pub fn remark_part_bound(n: u32) -> Result<u32, CoverageError> {
    match n.saturating_sub(1) / 2 {
        0 => Err(CoverageError::PartBoundEmpty { n }),
        b => Ok(b),
    }
}

/// Whether every residue modulo `2 n^2` is a sum of sixteen squares of
/// integers `1 <= n_j < n/2`.
pub fn verify_remark(n: u32) -> Result<bool, CoverageError> {
    let bound = remark_part_bound(n)?;
    let modulus = 2 * u64::from(n) * u64::from(n);
    Ok(reachable_residues(modulus, PARTS, bound)?.is_full())
}

/// [`verify_remark`] over a range of `n`, evaluated in parallel.
pub fn verify_remark_range(ns: RangeInclusive<u32>) -> Result<Vec<(u32, bool)>, CoverageError> {
    ns.into_par_iter()
        .map(|n| verify_remark(n).map(|ok| (n, ok)))
        .collect()
}

/// A tuple of parts whose sum of squares lands in a given residue class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub residue: u64,
    pub sum: u64,
    pub parts: Vec<u32>,
}

/// Minimal `d'` reported by the ampleness audit next to the stated one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DprimeAudit {
    pub variant: AmplenessVariant,
    pub stated_dprime_min: u32,
    /// Smallest `d'` for which the worst-case parts pass the ampleness check.
    pub computed_dprime_min: Option<u32>,
    /// Threshold obtained with `computed_dprime_min` instead.
    pub computed_threshold: Option<i128>,
    /// Ampleness of the worst-case parts at the stated `d'`.
    pub stated_report: AmplenessReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageResult {
    pub n: u32,
    pub dprime_min: u32,
    pub part_bound: u32,
    pub modulus: u64,
    /// Every `d >= threshold` is `2 n^2 d' - s` with `d' >= dprime_min`.
    pub threshold: i128,
    /// One more than the largest `d` that is not of that form. Never larger
    /// than `threshold`.
    pub exact_threshold: i128,
    pub witnesses: Vec<Witness>,
    pub audit: DprimeAudit,
}

impl CoverageResult {
    /// Re-evaluates every witness; returns the residues that fail.
    pub fn invalid_witnesses(&self) -> Vec<u64> {
        self.witnesses
            .iter()
            .filter(|w| {
                let sum: u64 = w.parts.iter().map(|&v| u64::from(v) * u64::from(v)).sum();
                w.parts.len() != PARTS as usize
                    || w.parts.iter().any(|&v| v == 0 || v > self.part_bound)
                    || sum != w.sum
                    || sum % self.modulus != w.residue
            })
            .map(|w| w.residue)
            .collect()
    }
}

/// Degree threshold for Kummer polarizations with `n` fixed, `d' >=
/// dprime_min` and sixteen parts in `[1, max_part]`. The audit uses the
/// non-product ampleness conditions.
pub fn coverage_threshold(
    n: u32,
    dprime_min: u32,
    max_part: u32,
) -> Result<CoverageResult, CoverageError> {
    coverage_threshold_with(n, dprime_min, max_part, AmplenessVariant::NonProduct)
}

pub fn coverage_threshold_with(
    n: u32,
    dprime_min: u32,
    max_part: u32,
    variant: AmplenessVariant,
) -> Result<CoverageResult, CoverageError> {
    if n == 0 || dprime_min == 0 {
        return Err(CoverageError::InvalidInput(
            "n and dprime_min must be positive".into(),
        ));
    }
    let modulus = 2 * u64::from(n) * u64::from(n);
    let residues = reachable_residues(modulus, PARTS, max_part)?;
    if !residues.is_full() {
        return Err(CoverageError::IncompleteResidueCoverage {
            modulus,
            missing: residues.missing(),
        });
    }
    let sums = reachable_sums(PARTS, max_part)?;
    let base = i128::from(modulus) * i128::from(dprime_min);

    // Smallest and largest sum in each residue class.
    let m = modulus as usize;
    let mut smallest = vec![None; m];
    let mut largest = vec![0u64; m];
    for s in sums.iter() {
        let r = (s % modulus) as usize;
        smallest[r].get_or_insert(s);
        largest[r] = s;
    }
    let witnesses = smallest
        .iter()
        .enumerate()
        .map(|(r, s)| {
            let s = s.expect("residues are fully covered");
            Witness {
                residue: r as u64,
                sum: s,
                parts: sums.witness(s).expect("sum is reachable"),
            }
        })
        .collect();

    // In class r the achievable degrees are exactly those >= base - largest[r].
    let exact_threshold = largest
        .iter()
        .map(|&s| base - i128::from(s))
        .max()
        .expect("modulus is positive")
        - i128::from(modulus)
        + 1;

    let worst = [max_part; TWO_TORSION_POINTS];
    let computed_dprime_min = minimal_ample_dprime(n, &worst, variant);
    let stated = KummerParams::new(n, dprime_min, worst)
        .map_err(|e| CoverageError::InvalidInput(e.to_string()))?;
    Ok(CoverageResult {
        n,
        dprime_min,
        part_bound: max_part,
        modulus,
        threshold: base - i128::from(sums.min()),
        exact_threshold,
        witnesses,
        audit: DprimeAudit {
            variant,
            stated_dprime_min: dprime_min,
            computed_dprime_min,
            computed_threshold: computed_dprime_min
                .map(|d| i128::from(modulus) * i128::from(d) - i128::from(sums.min())),
            stated_report: check_ampleness(&stated, variant),
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn matches(&self, d: i128) -> bool {
        match self {
            Self::Even => d % 2 == 0,
            Self::Odd => d % 2 != 0,
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = CoverageError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "even" => Ok(Self::Even),
            "odd" => Ok(Self::Odd),
            _ => Err(CoverageError::InvalidInput(format!("parity {s:?}"))),
        }
    }
}

/// Where the sixteen parts come from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartChoice {
    /// Any parts in `[1, B]`.
    Bounded(u32),
    /// Exactly these parts.
    Fixed(Vec<u32>),
}

impl PartChoice {
    pub fn max_part(&self) -> u32 {
        match self {
            Self::Bounded(b) => *b,
            Self::Fixed(parts) => parts.iter().copied().max().unwrap_or(0),
        }
    }

    /// Sums of squares this choice can produce.
    pub fn sums(&self) -> Result<Vec<u64>, CoverageError> {
        match self {
            Self::Bounded(b) => Ok(reachable_sums(PARTS, *b)?.iter().collect()),
            Self::Fixed(parts) => {
                if parts.len() != TWO_TORSION_POINTS || parts.contains(&0) {
                    return Err(CoverageError::InvalidInput(
                        "fixed parts must be sixteen positive integers".into(),
                    ));
                }
                Ok(vec![parts
                    .iter()
                    .map(|&v| u64::from(v) * u64::from(v))
                    .sum()])
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeQuery {
    pub n: u32,
    pub dprime: RangeInclusive<u32>,
    pub parts: PartChoice,
    pub parity: Option<Parity>,
    pub coprime_to: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSet {
    /// Positive degrees after the parity filter.
    pub unfiltered: Vec<i128>,
    /// `unfiltered` with multiples of `coprime_to` removed.
    pub degrees: Vec<i128>,
}

/// All positive `d = 2 n^2 d' - s` over the range of `d'` and the sums of
/// the part choice, filtered by parity and then by coprimality.
pub fn achievable_degrees(q: &DegreeQuery) -> Result<DegreeSet, CoverageError> {
    if q.n == 0 || q.dprime.is_empty() || *q.dprime.start() == 0 {
        return Err(CoverageError::InvalidInput(
            "n must be positive and the d' range non-empty and positive".into(),
        ));
    }
    if q.n.max(*q.dprime.end()) > MAX_PARAM {
        return Err(CoverageError::InvalidInput(format!(
            "n and d' must not exceed {MAX_PARAM}"
        )));
    }
    if matches!(q.coprime_to, Some(p) if p < 2) {
        return Err(CoverageError::InvalidInput(
            "coprime_to must be at least 2".into(),
        ));
    }
    let modulus = 2 * i128::from(q.n) * i128::from(q.n);
    let sums = q.parts.sums()?;
    let span = u128::from(*q.dprime.end() - *q.dprime.start()) + 1;
    if span * sums.len() as u128 > MAX_DEGREE_CANDIDATES {
        return Err(CoverageError::InvalidInput(format!(
            "{span} values of d' times {} sums is too many candidates",
            sums.len()
        )));
    }
    let mut all = BTreeSet::new();
    for dp in q.dprime.clone() {
        for &s in &sums {
            let d = modulus * i128::from(dp) - i128::from(s);
            if d > 0 && q.parity.is_none_or(|p| p.matches(d)) {
                all.insert(d);
            }
        }
    }
    let unfiltered: Vec<i128> = all.into_iter().collect();
    let degrees = match q.coprime_to {
        Some(p) => unfiltered
            .iter()
            .copied()
            .filter(|d| d.gcd(&i128::from(p)) == 1)
            .collect(),
        None => unfiltered.clone(),
    };
    Ok(DegreeSet {
        unfiltered,
        degrees,
    })
}

/// One parameter family of Kummer maps and the degrees it reaches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyBound {
    pub family: &'static str,
    pub n: u32,
    pub dprime_min: u32,
    pub parts: PartChoice,
    pub part_bound: u32,
    pub variant: AmplenessVariant,
    /// Every `d >= threshold` with `d ≡ threshold (mod step)` is reached.
    pub threshold: i128,
    pub step: u64,
    pub stated_threshold: i128,
    pub witness_count: usize,
    pub witnesses: Vec<Witness>,
    pub audit: FamilyAudit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyAudit {
    /// Worst-case parts checked at the stated `d'`.
    pub report: AmplenessReport,
    pub computed_dprime_min: Option<u32>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaperBoundsReport {
    pub families: Vec<FamilyBound>,
}

fn audit_notes(report: &AmplenessReport, stated: u32, computed: Option<u32>) -> Vec<String> {
    let mut notes = Vec::new();
    if !report.positivity_ok {
        notes.push(format!("positivity fails: d = {}", report.degree));
    }
    if !report.elliptic_branch_ok {
        let m = report
            .parts
            .iter()
            .find(|m| !m.elliptic.holds)
            .expect("a failing part");
        notes.push(format!(
            "elliptic branch fails for n_{}: 4*{} = {} >= {}",
            m.index, m.part, m.elliptic.lhs, m.elliptic.rhs
        ));
    }
    if !report.generic_branch_ok {
        let m = report
            .parts
            .iter()
            .find(|m| !m.generic.holds)
            .expect("a failing part");
        notes.push(format!(
            "generic branch fails for n_{}: 64*{}^2 = {} >= n^2 d' = {}",
            m.index, m.part, m.generic.lhs, m.generic.rhs
        ));
    }
    match computed {
        Some(c) if c < stated => {
            notes.push(format!("d' >= {c} already suffices (stated {stated})"))
        }
        Some(c) if c > stated => notes.push(format!("d' >= {c} is needed (stated {stated})")),
        Some(_) => {}
        None => notes.push("no d' satisfies the elliptic branch".into()),
    }
    notes
}

fn fixed_family(
    family: &'static str,
    dprime_min: u32,
    parts: [u32; TWO_TORSION_POINTS],
    variant: AmplenessVariant,
    stated_threshold: i128,
) -> FamilyBound {
    let n = 1;
    let params = KummerParams::new(n, dprime_min, parts).expect("all entries positive");
    let sum = params.sum_of_squares();
    let modulus = 2 * u64::from(n) * u64::from(n);
    let report = check_ampleness(&params, variant);
    let computed = minimal_ample_dprime(n, &parts, variant);
    let notes = audit_notes(&report, dprime_min, computed);
    FamilyBound {
        family,
        n,
        dprime_min,
        parts: PartChoice::Fixed(parts.to_vec()),
        part_bound: *parts.iter().max().expect("sixteen parts"),
        variant,
        threshold: i128::from(modulus) * i128::from(dprime_min) - sum,
        step: modulus,
        stated_threshold,
        witness_count: 1,
        witnesses: vec![Witness {
            residue: (sum as u64) % modulus,
            sum: sum as u64,
            parts: parts.to_vec(),
        }],
        audit: FamilyAudit {
            report,
            computed_dprime_min: computed,
            notes,
        },
    }
}

/// The three families behind the non-emptiness bounds: `n = 9` with parts
/// in `[1, 4]` and `d' >= 26` (all `d >= 4196`); `n = 1` with all parts 1,
/// `d' >= 32` and `(L, E) >= 3` (even `d >= 48`); `n = 1` with parts
/// `(1, 2, ..., 2)`, `d' >= 512` and `(L, E) >= 9` (odd `d >= 963`).
pub fn paper_bounds_report() -> PaperBoundsReport {
    let general = coverage_threshold(9, 26, 4).expect("sixteen squares in [1,4] cover Z/162");
    let notes = audit_notes(
        &general.audit.stated_report,
        general.dprime_min,
        general.audit.computed_dprime_min,
    );
    let general = FamilyBound {
        family: "general",
        n: general.n,
        dprime_min: general.dprime_min,
        parts: PartChoice::Bounded(general.part_bound),
        part_bound: general.part_bound,
        variant: general.audit.variant,
        threshold: general.threshold,
        step: 1,
        stated_threshold: 4196,
        witness_count: general.witnesses.len(),
        witnesses: general.witnesses,
        audit: FamilyAudit {
            report: general.audit.stated_report,
            computed_dprime_min: general.audit.computed_dprime_min,
            notes,
        },
    };
    let even = fixed_family(
        "even",
        32,
        [1; TWO_TORSION_POINTS],
        AmplenessVariant::MinEllipticIntersection(3),
        48,
    );
    let mut odd_parts = [2; TWO_TORSION_POINTS];
    odd_parts[0] = 1;
    let odd = fixed_family(
        "odd",
        512,
        odd_parts,
        AmplenessVariant::MinEllipticIntersection(9),
        963,
    );
    PaperBoundsReport {
        families: vec![general, even, odd],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sum_sets() {
        assert_eq!(
            reachable_sums(16, 1).unwrap().to_set(),
            BTreeSet::from([16])
        );
        assert_eq!(
            reachable_sums(2, 2).unwrap().to_set(),
            BTreeSet::from([2, 5, 8])
        );
        let s = reachable_sums(16, 4).unwrap();
        assert_eq!((s.min(), s.max()), (16, 256));
        assert!(!s.contains(17));
        assert!(!s.contains(10_000));
    }

    #[test]
    fn witnesses_prefer_small_parts() {
        let s = reachable_sums(2, 2).unwrap();
        assert_eq!(s.witness(5).unwrap(), vec![1, 2]);
        assert_eq!(s.witness(8).unwrap(), vec![2, 2]);
        assert_eq!(s.witness(3), None);
    }

    #[test]
    fn residue_examples() {
        assert!(reachable_residues(162, 16, 4).unwrap().is_full());
        assert_eq!(reachable_residues(2, 16, 1).unwrap().members(), vec![0]);
        assert_eq!(
            reachable_residues(7, 2, 2).unwrap().members(),
            vec![1, 2, 5]
        );
        assert_eq!(
            reachable_residues_via_sums(7, 2, 2).unwrap().members(),
            vec![1, 2, 5]
        );
    }

    #[test]
    fn mod_162_needs_parts_up_to_four() {
        assert!(verify_lemma_res());
        assert!(!verify_lemma_res_with_bound(1));
        // 108 of 162 residues, frozen from brute-force enumeration
        assert!(!verify_lemma_res_with_bound(3));
        assert_eq!(reachable_residues(162, 16, 3).unwrap().len(), 108);
    }

    #[test]
    fn half_n_bound_edges() {
        assert!(verify_remark(9).unwrap());
        assert!(!verify_remark(4).unwrap());
        assert_eq!(reachable_residues(32, 16, 1).unwrap().members(), vec![16]);
        assert_eq!(verify_remark(2).unwrap_err().name(), "PartBoundEmpty");
        assert_eq!(remark_part_bound(3).unwrap(), 1);
        assert_eq!(remark_part_bound(10).unwrap(), 4);
    }

    #[test]
    fn thresholds() {
        let r = coverage_threshold(9, 26, 4).unwrap();
        assert_eq!(r.threshold, 4196);
        assert_eq!(r.witnesses.len(), 162);
        assert!(r.invalid_witnesses().is_empty());
        assert_eq!(r.audit.computed_dprime_min, Some(13));
        assert_eq!(coverage_threshold(9, 13, 4).unwrap().threshold, 2090);
        let err = coverage_threshold(9, 26, 1).unwrap_err();
        assert_eq!(err.name(), "IncompleteResidueCoverage");
    }

    #[test]
    fn fixed_part_degrees() {
        let q = DegreeQuery {
            n: 1,
            dprime: 32..=40,
            parts: PartChoice::Bounded(1),
            parity: Some(Parity::Even),
            coprime_to: None,
        };
        let d = achievable_degrees(&q).unwrap();
        assert_eq!(d.degrees, (48..=64).step_by(2).collect::<Vec<i128>>());

        let mut parts = vec![2; 16];
        parts[0] = 1;
        let q = DegreeQuery {
            n: 1,
            dprime: 512..=515,
            parts: PartChoice::Fixed(parts),
            parity: Some(Parity::Odd),
            coprime_to: None,
        };
        assert_eq!(
            achievable_degrees(&q).unwrap().degrees,
            vec![963, 965, 967, 969]
        );
    }

    #[test]
    fn degree_query_validation() {
        let q = DegreeQuery {
            n: 1,
            dprime: 1..=1,
            parts: PartChoice::Fixed(vec![1; 3]),
            parity: None,
            coprime_to: None,
        };
        assert!(achievable_degrees(&q).is_err());
        let q = DegreeQuery {
            parts: PartChoice::Bounded(1),
            coprime_to: Some(1),
            ..q
        };
        assert!(achievable_degrees(&q).is_err());
    }

    #[test]
    fn report_rows() {
        let r = paper_bounds_report();
        let t: Vec<_> = r
            .families
            .iter()
            .map(|f| (f.family, f.threshold, f.step))
            .collect();
        assert_eq!(
            t,
            vec![("general", 4196, 1), ("even", 48, 2), ("odd", 963, 2)]
        );
        assert!(r.families.iter().all(|f| f.threshold == f.stated_threshold));
        let even = &r.families[1];
        assert!(!even.audit.report.generic_branch_ok);
        assert!(!even.audit.report.elliptic_branch_ok);
        assert_eq!(even.audit.computed_dprime_min, None);
        let odd = &r.families[2];
        assert!(odd.audit.report.ample);
        assert_eq!(odd.audit.computed_dprime_min, Some(257));
    }

    #[test]
    fn oversized_inputs_are_rejected() {
        let name = |e: CoverageError| e.name();
        assert_eq!(
            name(reachable_residues(MAX_MODULUS + 1, 16, 4).unwrap_err()),
            "InvalidInput"
        );
        assert_eq!(
            name(reachable_residues(10, MAX_PARTS + 1, 2).unwrap_err()),
            "InvalidInput"
        );
        assert_eq!(
            name(reachable_sums(16, 100_000).unwrap_err()),
            "InvalidInput"
        );
        assert_eq!(
            name(coverage_threshold(9, MAX_PARAM + 1, 4).unwrap_err()),
            "InvalidInput"
        );
        let q = DegreeQuery {
            n: 9,
            dprime: 1..=1_000_000,
            parts: PartChoice::Bounded(4),
            parity: None,
            coprime_to: None,
        };
        assert_eq!(name(achievable_degrees(&q).unwrap_err()), "InvalidInput");
    }
}
