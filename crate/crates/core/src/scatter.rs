//! Scatteredness of `U_f = {(x, f(x))}` and the weight spectrum of `L_f`.
//!
//! Two independent deciders:
//!
//! * the oracle buckets the slopes `f(x)/x` over all `x != 0`: the point
//!   `<(1, m)>` has weight `w` exactly when `q^w - 1` vectors land on it;
//! * the Dickson criterion scans every `m` and looks for a common root of
//!   `det M_6(m)` and `det M_5(m)`.
//!
//! The deciders use different slope conventions. The oracle's `m` is the
//! point `<(1, m)>`, i.e. `ker(f - m·x)`; the Dickson `m` replaces the
//! `x`-coefficient, i.e. `ker(f with a_0 := m)`. For `a_0 = 0` the two are
//! negatives of each other.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU32, Ordering};

use serde::Serialize;

use crate::field::{Elem, Field};
use crate::qpoly::{DicksonTemplate, QPoly, N};
use crate::scan;

/// Number of points of `PG(1, q^6)` of each positive weight in `L_f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightSpectrum {
    pub q: u64,
    pub counts: BTreeMap<u32, u64>,
    /// Weight of `<(0, 1)>`, always 0 for a graph subspace `U_f`.
    pub infinity_weight: u32,
}

impl WeightSpectrum {
    /// Number of points of the linear set.
    pub fn size(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `Σ count(w) · (q^w - 1)`; equals `q^6 - 1` for every `f`.
    pub fn mass(&self) -> u64 {
        self.counts
            .iter()
            .map(|(&w, &c)| c * (self.q.pow(w) - 1))
            .sum()
    }

    pub fn mass_conserved(&self) -> bool {
        self.mass() == self.q.pow(N as u32) - 1
    }

    pub fn is_scattered(&self) -> bool {
        self.counts.keys().all(|&w| w <= 1)
    }

    pub fn max_weight(&self) -> u32 {
        self.counts.keys().copied().max().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ScanMode {
    /// Stop at the first violation in enumeration order.
    #[default]
    FirstViolation,
    /// Report every violation.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub scattered: bool,
    /// Smallest violating `m` in enumeration order.
    pub witness: Option<Elem>,
    /// All violating `m` (only filled in exhaustive mode).
    pub violations: Vec<Elem>,
}

impl Verdict {
    fn from_violations(violations: Vec<Elem>, exhaustive: bool) -> Self {
        Verdict {
            scattered: violations.is_empty(),
            witness: violations.first().copied(),
            violations: if exhaustive { violations } else { Vec::new() },
        }
    }
}

fn weight_from_count(q: u64, count: u64) -> u32 {
    let mut w = 0;
    let mut size = 1u64;
    while size - 1 < count {
        size *= q;
        w += 1;
    }
    debug_assert_eq!(size - 1, count, "bucket size is not q^w - 1");
    w
}

/// For each slot of the field, how many nonzero `x` have `f(x)/x` there.
fn slope_buckets(field: &Field, f: &QPoly) -> Vec<u32> {
    let buckets: Vec<AtomicU32> = (0..field.order()).map(|_| AtomicU32::new(0)).collect();
    scan::for_each(field, |x| {
        if field.is_zero(x) {
            return;
        }
        let slope = field.mul(f.evaluate(field, x), field.inv(x).expect("x != 0"));
        buckets[field.slot(slope)].fetch_add(1, Ordering::Relaxed);
    });
    buckets.into_iter().map(AtomicU32::into_inner).collect()
}

pub fn weight_spectrum(field: &Field, f: &QPoly) -> WeightSpectrum {
    let q = field.q();
    let mut counts = BTreeMap::new();
    for c in slope_buckets(field, f) {
        if c > 0 {
            *counts.entry(weight_from_count(q, c as u64)).or_insert(0) += 1;
        }
    }
    WeightSpectrum {
        q,
        counts,
        infinity_weight: 0,
    }
}

/// Spectrum plus the points of weight at least 2, in enumeration order.
pub fn weight_spectrum_with_points(field: &Field, f: &QPoly) -> (WeightSpectrum, Vec<(Elem, u32)>) {
    let q = field.q();
    let buckets = slope_buckets(field, f);
    let mut counts = BTreeMap::new();
    let mut heavy = Vec::new();
    for m in field.elements() {
        let c = buckets[field.slot(m)];
        if c == 0 {
            continue;
        }
        let w = weight_from_count(q, c as u64);
        *counts.entry(w).or_insert(0) += 1;
        if w >= 2 {
            heavy.push((m, w));
        }
    }
    (
        WeightSpectrum {
            q,
            counts,
            infinity_weight: 0,
        },
        heavy,
    )
}

/// Weight of the point `<(1, m)>`: `dim ker(f - m·x)`.
pub fn point_weight(field: &Field, f: &QPoly, m: Elem) -> usize {
    f.sub_linear(field, m).kernel_dim(field)
}

pub fn is_scattered_oracle(field: &Field, f: &QPoly) -> Verdict {
    scan_oracle(field, f, ScanMode::FirstViolation)
}

/// Bucketing decider; witnesses `m` satisfy `dim ker(f - m·x) >= 2`.
pub fn scan_oracle(field: &Field, f: &QPoly, mode: ScanMode) -> Verdict {
    let buckets = slope_buckets(field, f);
    let threshold = (field.q() * field.q() - 1) as u32;
    let heavy = |m: Elem| buckets[field.slot(m)] >= threshold;
    let violations = match mode {
        ScanMode::FirstViolation => scan::find_first(field, heavy).into_iter().collect(),
        ScanMode::Exhaustive => scan::filter(field, heavy),
    };
    Verdict::from_violations(violations, mode == ScanMode::Exhaustive)
}

pub fn is_scattered_dickson(field: &Field, f: &QPoly) -> Verdict {
    scan_dickson(field, f, ScanMode::FirstViolation)
}

/// Dickson decider; witnesses `m₀` make `det M_6(m₀) = det M_5(m₀) = 0`.
pub fn scan_dickson(field: &Field, f: &QPoly, mode: ScanMode) -> Verdict {
    let template = DicksonTemplate::new(field, f);
    let common_root = |m: Elem| {
        field.is_zero(template.det_m5(field, m)) && field.is_zero(template.det_m6(field, m))
    };
    let violations = match mode {
        ScanMode::FirstViolation => scan::find_first(field, common_root).into_iter().collect(),
        ScanMode::Exhaustive => scan::filter(field, common_root),
    };
    Verdict::from_violations(violations, mode == ScanMode::Exhaustive)
}

/// Whether `m` is a common root of `det M_6` and `det M_5`.
pub fn dickson_common_root(field: &Field, f: &QPoly, m: Elem) -> bool {
    let template = DicksonTemplate::new(field, f);
    field.is_zero(template.det_m5(field, m)) && field.is_zero(template.det_m6(field, m))
}

/// Oracle slope corresponding to a Dickson witness: `ker(f with a_0 := m₀)`
/// is `ker(f - (a_0 - m₀)·x)`.
pub fn dickson_to_slope(field: &Field, f: &QPoly, m0: Elem) -> Elem {
    field.sub(f.coeff(0), m0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case1(field: &Field) -> QPoly {
        let one = field.one();
        QPoly::from_terms(field, &[(1, one), (2, field.neg_one()), (4, one), (5, one)])
    }

    #[test]
    fn pseudoregulus_is_scattered() {
        let f = Field::new(3, 1).unwrap();
        let xq = QPoly::monomial(&f, 1, f.one());
        let spec = weight_spectrum(&f, &xq);
        assert_eq!(spec.counts, BTreeMap::from([(1, 364)]));
        assert!(spec.mass_conserved());
        assert!(is_scattered_oracle(&f, &xq).scattered);
        assert!(is_scattered_dickson(&f, &xq).scattered);
    }

    #[test]
    fn case1_q5_is_scattered() {
        let f = Field::new(5, 1).unwrap();
        let p = case1(&f);
        let spec = weight_spectrum(&f, &p);
        assert_eq!(spec.counts, BTreeMap::from([(1, 3906)]));
        assert!(is_scattered_dickson(&f, &p).scattered);
    }

    #[test]
    fn case1_q3_has_heavy_point_with_square_minus_four() {
        let f = Field::new(3, 1).unwrap();
        let p = case1(&f);
        let (spec, heavy) = weight_spectrum_with_points(&f, &p);
        assert!(spec.max_weight() >= 2);
        assert!(spec.mass_conserved());
        let minus_four = f.from_int(-4);
        assert!(heavy.iter().any(|&(m, _)| f.mul(m, m) == minus_four));
        let v = is_scattered_oracle(&f, &p);
        assert!(!v.scattered);
        assert!(point_weight(&f, &p, v.witness.unwrap()) >= 2);
    }

    #[test]
    fn dickson_witness_has_large_kernel() {
        let f = Field::new(3, 1).unwrap();
        let p = case1(&f);
        let v = is_scattered_dickson(&f, &p);
        let m0 = v.witness.unwrap();
        assert!(p.with_diagonal(m0).kernel_dim(&f) >= 2);
        let slope = dickson_to_slope(&f, &p, m0);
        assert!(point_weight(&f, &p, slope) >= 2);
    }

    #[test]
    fn exhaustive_mode_lists_everything() {
        let f = Field::new(3, 1).unwrap();
        let p = case1(&f);
        let all = scan_dickson(&f, &p, ScanMode::Exhaustive);
        let first = is_scattered_dickson(&f, &p);
        assert_eq!(all.witness, first.witness);
        assert!(!all.violations.is_empty());
        let oracle_all = scan_oracle(&f, &p, ScanMode::Exhaustive);
        let mut slopes: Vec<_> = all
            .violations
            .iter()
            .map(|&m| dickson_to_slope(&f, &p, m))
            .collect();
        slopes.sort_by_key(|&m| f.enum_index(m));
        assert_eq!(slopes, oracle_all.violations);
    }

    #[test]
    fn weight_from_bucket_size() {
        assert_eq!(weight_from_count(3, 2), 1);
        assert_eq!(weight_from_count(3, 8), 2);
        assert_eq!(weight_from_count(5, 124), 3);
    }
}
