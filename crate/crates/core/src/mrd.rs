//! The rank-metric code `C_f = {x -> a f(x) + b x : a, b ∈ F_{q^6}}`.
//!
//! Codewords are `F_q`-linear maps of `F_{q^6}`; the rank of `a f + b x` is
//! read off its Dickson matrix. Since `c·(a f + b x)` has the same rank as
//! `a f + b x` for `c != 0`, the distribution only needs the orbit
//! representatives `(1, b)` and `(0, 1)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::equiv::{self, SearchOptions, SearchOutcome};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::fq::FqBasis;
use crate::linalg;
use crate::qpoly::{QPoly, N};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCode {
    f: QPoly,
}

pub fn code_from(field: &Field, f: &QPoly) -> Result<RankCode> {
    if f.is_zero(field) {
        return Err(Error::ZeroMap);
    }
    Ok(RankCode { f: *f })
}

impl RankCode {
    pub fn poly(&self) -> &QPoly {
        &self.f
    }

    /// `a f + b x`.
    pub fn codeword(&self, field: &Field, a: Elem, b: Elem) -> QPoly {
        self.f
            .scale(field, a)
            .add(field, &QPoly::monomial(field, 0, b))
    }

    /// `log_q |C_f| = 12`; the pairs `(a, b)` give distinct maps whenever
    /// `f` is not a multiple of `x`.
    pub fn log_size(&self) -> u32 {
        2 * N as u32
    }
}

pub fn codeword_rank(field: &Field, code: &RankCode, a: Elem, b: Elem) -> usize {
    code.codeword(field, a, b).rank(field)
}

/// Rank of the explicit `6 x 6` matrix over `F_q`; the cross-check for
/// [`codeword_rank`].
pub fn codeword_rank_explicit(
    field: &Field,
    basis: &FqBasis,
    code: &RankCode,
    a: Elem,
    b: Elem,
) -> usize {
    linalg::rank(field, &basis.matrix_of(field, &code.codeword(field, a, b)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankDistribution {
    pub q: u64,
    /// Rank -> number of codewords.
    pub counts: BTreeMap<usize, u64>,
}

impl RankDistribution {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn min_distance(&self) -> usize {
        self.counts
            .keys()
            .copied()
            .filter(|&r| r > 0)
            .min()
            .unwrap_or(0)
    }

    pub fn count(&self, rank: usize) -> u64 {
        self.counts.get(&rank).copied().unwrap_or(0)
    }
}

/// Distribution over all `q^12` codewords via orbit representatives.
pub fn rank_distribution(field: &Field, code: &RankCode) -> RankDistribution {
    let orbit = field.group_order();
    let elems: Vec<Elem> = field.elements().collect();
    let mut counts: BTreeMap<usize, u64> = elems
        .par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<usize, u64>, &b| {
            *acc.entry(codeword_rank(field, code, field.one(), b))
                .or_default() += orbit;
            acc
        })
        .reduce(BTreeMap::new, merge);
    *counts.entry(N).or_default() += orbit;
    *counts.entry(0).or_default() += 1;
    RankDistribution {
        q: field.q(),
        counts,
    }
}

fn merge(mut a: BTreeMap<usize, u64>, b: BTreeMap<usize, u64>) -> BTreeMap<usize, u64> {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

/// Distribution by direct enumeration of every `(a, b)`; refuses more than
/// `budget` codewords.
pub fn rank_distribution_full(
    field: &Field,
    code: &RankCode,
    budget: u64,
) -> Result<RankDistribution> {
    let n = field.order();
    let total = n * n;
    if total > budget {
        return Err(Error::BudgetExceeded {
            budget,
            searched: 0,
        });
    }
    let elems: Vec<Elem> = field.elements().collect();
    let counts = elems
        .par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<usize, u64>, &a| {
            for &b in &elems {
                *acc.entry(codeword_rank(field, code, a, b)).or_default() += 1;
            }
            acc
        })
        .reduce(BTreeMap::new, merge);
    Ok(RankDistribution {
        q: field.q(),
        counts,
    })
}

pub fn min_distance(field: &Field, code: &RankCode) -> usize {
    rank_distribution(field, code).min_distance()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MrdReport {
    pub min_distance: usize,
    pub distribution: RankDistribution,
    /// `q^12 = q^{6(6-d+1)}`.
    pub singleton_equality: bool,
    pub mrd: bool,
}

pub fn mrd_report(field: &Field, code: &RankCode) -> MrdReport {
    let distribution = rank_distribution(field, code);
    let d = distribution.min_distance();
    let singleton_equality = d >= 1 && code.log_size() == N as u32 * (N as u32 - d as u32 + 1);
    MrdReport {
        min_distance: d,
        singleton_equality,
        mrd: singleton_equality && d == N - 1,
        distribution,
    }
}

/// Reduces to subspace equivalence of `U_f` and `U_g`.
pub fn codes_equivalent(
    field: &Field,
    cf: &RankCode,
    cg: &RankCode,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    equiv::gl_equivalent(field, &cf.f, &cg.f, opts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealiserReport {
    /// Nonzero `c` tested.
    pub tested: u64,
    /// `c` for which every sampled `c·(a f + b x)` equals `(ca) f + (cb) x`
    /// as an `F_q`-matrix.
    pub closed: u64,
    /// Distinct multiplication matrices among the tested `c`.
    pub distinct_actions: u64,
    pub holds: bool,
}

/// Checks that multiplication by each nonzero `c` maps `C_f` into itself
/// through `(a, b) -> (ca, cb)` and that distinct `c` act differently.
pub fn left_idealiser_field_check(
    field: &Field,
    code: &RankCode,
    samples: usize,
) -> IdealiserReport {
    let basis = FqBasis::new(field);
    let g = field.generator();
    let pairs: Vec<(Elem, Elem)> = (0..samples as u64)
        .map(|i| (field.gen_pow(3 * i + 1), field.pow(g, 7 * i + 2)))
        .chain([(field.one(), field.zero()), (field.zero(), field.one())])
        .collect();
    let words: Vec<linalg::Matrix> = pairs
        .iter()
        .map(|&(a, b)| basis.matrix_of(field, &code.codeword(field, a, b)))
        .collect();
    let cs: Vec<Elem> = field.iter_range(1, field.order()).collect();
    let results: Vec<(bool, Vec<Elem>)> = cs
        .par_iter()
        .map(|&c| {
            let mc = basis.matrix_of(field, &QPoly::monomial(field, 0, c));
            let closed = pairs.iter().zip(&words).all(|(&(a, b), w)| {
                let image = code.codeword(field, field.mul(c, a), field.mul(c, b));
                mc.mul(field, w) == basis.matrix_of(field, &image)
            });
            (closed, mc.data().to_vec())
        })
        .collect();
    let closed = results.iter().filter(|r| r.0).count() as u64;
    let mut keys: Vec<Vec<u64>> = results
        .iter()
        .map(|r| r.1.iter().map(|e| e.raw()).collect())
        .collect();
    keys.sort_unstable();
    keys.dedup();
    let tested = cs.len() as u64;
    IdealiserReport {
        tested,
        closed,
        distinct_actions: keys.len() as u64,
        holds: closed == tested && keys.len() as u64 == tested,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family;

    #[test]
    fn trivial_ranks() {
        let f = Field::new(3, 1).unwrap();
        let c = code_from(&f, &QPoly::monomial(&f, 1, f.one())).unwrap();
        assert_eq!(codeword_rank(&f, &c, f.zero(), f.zero()), 0);
        assert_eq!(codeword_rank(&f, &c, f.zero(), f.one()), 6);
        assert_eq!(code_from(&f, &QPoly::zero(&f)), Err(Error::ZeroMap));
    }

    #[test]
    fn pseudoregulus_code_is_mrd() {
        let f = Field::new(3, 1).unwrap();
        let c = code_from(&f, &QPoly::monomial(&f, 1, f.one())).unwrap();
        let r = mrd_report(&f, &c);
        assert_eq!(r.min_distance, 5);
        assert!(r.mrd && r.singleton_equality);
        assert_eq!(r.distribution.total(), 3u64.pow(12));
    }

    #[test]
    fn orbit_distribution_matches_full_enumeration_q2() {
        let f = Field::new(2, 1).unwrap();
        let c = code_from(&f, &family::case1(&f)).unwrap();
        let fast = rank_distribution(&f, &c);
        let full = rank_distribution_full(&f, &c, 1 << 20).unwrap();
        assert_eq!(fast, full);
    }

    #[test]
    fn explicit_rank_agrees() {
        let f = Field::new(3, 1).unwrap();
        let basis = FqBasis::new(&f);
        let c = code_from(&f, &family::case1(&f)).unwrap();
        for i in 0..60 {
            let (a, b) = (f.gen_pow(5 * i), f.nth(11 * i % 729));
            assert_eq!(
                codeword_rank(&f, &c, a, b),
                codeword_rank_explicit(&f, &basis, &c, a, b)
            );
        }
    }

    #[test]
    fn case1_q3_code_is_not_mrd() {
        let f = Field::new(3, 1).unwrap();
        let c = code_from(&f, &family::case1(&f)).unwrap();
        assert!(min_distance(&f, &c) <= 4);
    }

    #[test]
    fn idealiser_small() {
        let f = Field::new(2, 1).unwrap();
        let c = code_from(&f, &QPoly::monomial(&f, 1, f.one())).unwrap();
        let r = left_idealiser_field_check(&f, &c, 4);
        assert!(r.holds);
        assert_eq!(r.tested, 63);
    }
}
