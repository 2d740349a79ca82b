//! The polynomials `f_h` and the known maximum scattered families of
//! `PG(1, q^6)`, with their parameter checks and the auxiliary root
//! classifications used in the scatteredness proofs.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::qpoly::QPoly;
use crate::scan;
use crate::scatter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    /// `h^{q-1}x^q - h^{q^2-1}x^{q^2} + x^{q^4} + x^{q^5}`.
    NewFh,
    /// The `h`-free simplification `x^q - x^{q^2} + x^{q^4} + x^{q^5}`.
    Case1,
    /// `U^1`: `x^q`.
    Pseudoregulus,
    /// `U^2_δ`: `δx^q + x^{q^5}`.
    Lp,
    /// `U^3_δ`: `x^q + δx^{q^4}`.
    CsajbokMp,
    /// `U^4_δ`: `x^q + x^{q^3} + δx^{q^5}`.
    CsajbokMz,
    /// `(h^{-1}-1)x^q + x^{q^3} + (h-1)x^{q^5}`.
    Trinomial,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 7] = [
        FamilyTag::NewFh,
        FamilyTag::Case1,
        FamilyTag::Pseudoregulus,
        FamilyTag::Lp,
        FamilyTag::CsajbokMp,
        FamilyTag::CsajbokMz,
        FamilyTag::Trinomial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::NewFh => "new_fh",
            FamilyTag::Case1 => "case1",
            FamilyTag::Pseudoregulus => "pseudoregulus",
            FamilyTag::Lp => "lp",
            FamilyTag::CsajbokMp => "csajbok_mp",
            FamilyTag::CsajbokMz => "csajbok_mz",
            FamilyTag::Trinomial => "trinomial",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.name() == name)
            .ok_or_else(|| Error::Parse(format!("unknown family tag {name:?}")))
    }

    /// Which parameter the family takes, if any.
    pub fn parameter(self) -> Option<&'static str> {
        match self {
            FamilyTag::NewFh | FamilyTag::Trinomial => Some("h"),
            FamilyTag::Lp | FamilyTag::CsajbokMp | FamilyTag::CsajbokMz => Some("delta"),
            FamilyTag::Case1 | FamilyTag::Pseudoregulus => None,
        }
    }

    /// Whether the PΓL reduction also allows the adjoint branch.
    pub fn allows_adjoint(self) -> bool {
        self != FamilyTag::CsajbokMp
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub tag: FamilyTag,
    /// `h` or `δ`; `None` for the parameter-free families.
    pub param: Option<Elem>,
}

impl FamilySpec {
    pub fn new(tag: FamilyTag, param: Option<Elem>) -> Self {
        FamilySpec { tag, param }
    }

    pub fn plain(tag: FamilyTag) -> Self {
        FamilySpec { tag, param: None }
    }

    /// Parses `tag` or `tag:elem`, e.g. `new_fh:g^17` or `pseudoregulus`.
    pub fn parse(field: &Field, text: &str) -> Result<Self> {
        let (name, param) = match text.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim())),
            None => (text.trim(), None),
        };
        let tag = FamilyTag::from_name(name)?;
        let param = param.map(|p| field.parse(p)).transpose()?;
        Ok(FamilySpec { tag, param })
    }

    pub fn format(&self, field: &Field) -> String {
        match self.param {
            Some(p) => format!("{}:{}", self.tag, field.format(p)),
            None => self.tag.to_string(),
        }
    }
}

/// Whether a built polynomial is known to be scattered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaselineStatus {
    /// Known scattered under the hypotheses `build` checks.
    Established,
    /// `U^3` whose scatteredness has not been checked computationally.
    UnverifiedBaseline,
    /// `U^3` confirmed scattered by a Dickson scan.
    VerifiedScattered,
    /// `U^3` found not to be scattered for this `δ`.
    NotScattered,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn require_param(spec: &FamilySpec) -> Result<Elem> {
    spec.param.ok_or_else(|| {
        invalid(format!(
            "{} needs parameter {}",
            spec.tag,
            spec.tag.parameter().unwrap_or("?")
        ))
    })
}

/// `h^{q^3+1} = -1` (for even `q` this is the same as `= 1`).
pub fn is_valid_h(field: &Field, h: Elem) -> bool {
    !field.is_zero(h) && field.pow(h, field.q().pow(3) + 1) == field.neg_one()
}

/// Checks the invariants of `spec` and returns its coefficient vector.
pub fn build(field: &Field, spec: &FamilySpec) -> Result<QPoly> {
    let one = field.one();
    let q = field.q();
    let poly = match spec.tag {
        FamilyTag::NewFh => {
            let h = require_param(spec)?;
            if !is_valid_h(field, h) {
                return Err(invalid("new_fh requires h^{q^3+1} = -1"));
            }
            f_h(field, h)
        }
        FamilyTag::Case1 => {
            if spec.param.is_some() {
                return Err(invalid("case1 takes no parameter"));
            }
            case1(field)
        }
        FamilyTag::Pseudoregulus => {
            if spec.param.is_some() {
                return Err(invalid("pseudoregulus takes no parameter"));
            }
            QPoly::monomial(field, 1, one)
        }
        FamilyTag::Lp => {
            let d = require_param(spec)?;
            let n = field.norm(d, 1)?;
            if field.is_zero(n) || n == one {
                return Err(invalid("lp requires N_{q^6/q}(delta) not in {0, 1}"));
            }
            QPoly::from_terms(field, &[(1, d), (5, one)])
        }
        FamilyTag::CsajbokMp => {
            let d = require_param(spec)?;
            let n = field.norm(d, 3)?;
            if field.is_zero(n) || n == one {
                return Err(invalid(
                    "csajbok_mp requires N_{q^6/q^3}(delta) not in {0, 1}",
                ));
            }
            QPoly::from_terms(field, &[(1, one), (4, d)])
        }
        FamilyTag::CsajbokMz => {
            let d = require_param(spec)?;
            if !field.is_odd() {
                return Err(invalid("csajbok_mz requires q odd"));
            }
            if field.add(field.mul(d, d), d) != one {
                return Err(invalid("csajbok_mz requires delta^2 + delta = 1"));
            }
            QPoly::from_terms(field, &[(1, one), (3, one), (5, d)])
        }
        FamilyTag::Trinomial => {
            let h = require_param(spec)?;
            if !field.in_subfield(h, 2)? {
                return Err(invalid("trinomial requires h in F_{q^2}"));
            }
            if field.pow(h, q + 1) != field.neg_one() {
                return Err(invalid("trinomial requires h^{q+1} = -1"));
            }
            trinomial(field, h)
        }
    };
    Ok(poly)
}

/// Status known without computation: `U^3` is unverified until scanned.
pub fn declared_status(spec: &FamilySpec) -> BaselineStatus {
    match spec.tag {
        FamilyTag::CsajbokMp => BaselineStatus::UnverifiedBaseline,
        _ => BaselineStatus::Established,
    }
}

/// Scatteredness status of a family member; `U^3` gets a Dickson scan.
pub fn baseline_status(field: &Field, spec: &FamilySpec, poly: &QPoly) -> BaselineStatus {
    match declared_status(spec) {
        BaselineStatus::UnverifiedBaseline => {
            if scatter::is_scattered_dickson(field, poly).scattered {
                BaselineStatus::VerifiedScattered
            } else {
                BaselineStatus::NotScattered
            }
        }
        other => other,
    }
}

/// `f_h` without validating `h`.
pub fn f_h(field: &Field, h: Elem) -> QPoly {
    let q = field.q();
    let c1 = field.pow(h, q - 1);
    let c2 = field.neg(field.pow(h, q * q - 1));
    let one = field.one();
    QPoly::from_terms(field, &[(1, c1), (2, c2), (4, one), (5, one)])
}

pub fn case1(field: &Field) -> QPoly {
    let one = field.one();
    QPoly::from_terms(field, &[(1, one), (2, field.neg_one()), (4, one), (5, one)])
}

/// `(h^{-1}-1)x^q + x^{q^3} + (h-1)x^{q^5}` without validating `h`.
pub fn trinomial(field: &Field, h: Elem) -> QPoly {
    let one = field.one();
    let hinv = field.inv(h).expect("h != 0");
    QPoly::from_terms(
        field,
        &[(1, field.sub(hinv, one)), (3, one), (5, field.sub(h, one))],
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HVariant {
    /// `h^{q^3+1} = -1`, `q` odd.
    Odd,
    /// `h^{q^3+1} = 1`, `q` even.
    Even,
}

impl HVariant {
    pub fn for_field(field: &Field) -> Self {
        if field.is_odd() {
            HVariant::Odd
        } else {
            HVariant::Even
        }
    }
}

/// Solutions of `h^{q^3+1} = ∓1` in enumeration order.
///
/// Writing `h = g^j`, the equation is the congruence
/// `(q^3+1)j ≡ t (mod q^6-1)` with `t = (q^6-1)/2` or `0`. Since `q^3+1`
/// divides `q^6-1` the solutions are `j = j_0 + i(q^3-1)` for `i = 0..=q^3`.
pub fn enumerate_h(field: &Field, variant: HVariant) -> Result<Vec<Elem>> {
    if variant != HVariant::for_field(field) {
        return Err(Error::ParityMismatch(field.q()));
    }
    let q3 = field.q().pow(3);
    let j0 = match variant {
        HVariant::Odd => (q3 - 1) / 2,
        HVariant::Even => 0,
    };
    let target = match variant {
        HVariant::Odd => field.neg_one(),
        HVariant::Even => field.one(),
    };
    let mut out: Vec<Elem> = (0..=q3).map(|i| field.gen_pow(j0 + i * (q3 - 1))).collect();
    for &h in &out {
        if field.pow(h, q3 + 1) != target {
            return Err(Error::InvalidParameter(format!(
                "enumerated {} fails h^(q^3+1) = {}",
                field.format(h),
                field.format(target)
            )));
        }
    }
    out.sort_by_key(|&h| field.enum_index(h));
    Ok(out)
}

/// Brute-force filter over the whole field; the oracle for [`enumerate_h`].
pub fn enumerate_h_brute(field: &Field, variant: HVariant) -> Result<Vec<Elem>> {
    if variant != HVariant::for_field(field) {
        return Err(Error::ParityMismatch(field.q()));
    }
    let e = field.q().pow(3) + 1;
    let target = match variant {
        HVariant::Odd => field.neg_one(),
        HVariant::Even => field.one(),
    };
    Ok(scan::filter(field, |x| {
        !field.is_zero(x) && field.pow(x, e) == target
    }))
}

/// `h^{q^2} + h^q`, the recurring special slope.
pub fn m_bar(field: &Field, h: Elem) -> Elem {
    field.add(field.frobenius(h, 2), field.frobenius(h, 1))
}

fn check_h_hypothesis(field: &Field, h: Elem, want_h4_one: bool) -> Result<()> {
    if !is_valid_h(field, h) {
        return Err(Error::HypothesisViolated("h^{q^3+1} != -1".into()));
    }
    let h4_one = field.pow(h, 4) == field.one();
    match (want_h4_one, h4_one) {
        (false, true) => Err(Error::HypothesisViolated("h^4 = 1".into())),
        (true, false) => Err(Error::HypothesisViolated("h^4 != 1".into())),
        _ => Ok(()),
    }
}

/// The four statements of the preparatory lemma evaluated on one `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma1Report {
    /// `h^q != -h`.
    pub item1: bool,
    /// `h^{q^2+1} != 1`.
    pub item2: bool,
    /// `h^{q^2+1} != ±h^q`; `None` for even `q`.
    pub item3: Option<bool>,
    /// `h^{4q^2+4} + 14h^{2q^2+2q+2} + h^{4q} = 0`.
    pub item4_lhs_zero: bool,
    /// Which exceptional case the item-4 solution falls into, if any.
    pub item4_class: Option<Item4Class>,
    /// Item 4 as an implication: a zero left side lands in a listed case.
    pub item4: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Item4Class {
    /// `p = 2` and `h^{q^2-q+1} = 1`.
    Char2,
    /// `q = 3^{2s}` and `h^{q^2-q+1} = ±√-1`.
    EvenPowerOf3,
}

/// `h^{4q^2+4} + 14h^{2q^2+2q+2} + h^{4q}`, with no hypothesis on `h`.
pub fn item4_lhs(field: &Field, h: Elem) -> Elem {
    let q = field.q();
    let t1 = field.pow(h, 4 * q * q + 4);
    let t2 = field.mul(field.from_int(14), field.pow(h, 2 * q * q + 2 * q + 2));
    let t3 = field.pow(h, 4 * q);
    field.add(field.add(t1, t2), t3)
}

/// `q` is an even power of 3.
fn is_even_power_of_three(field: &Field) -> bool {
    field.p() == 3 && field.s().is_multiple_of(2)
}

/// `h^{q^2-q+1}`.
fn h_special(field: &Field, h: Elem) -> Elem {
    let q = field.q();
    field.pow(h, q * q - q + 1)
}

fn item4_classify(field: &Field, h: Elem) -> Option<Item4Class> {
    let z = h_special(field, h);
    if field.p() == 2 && z == field.one() {
        return Some(Item4Class::Char2);
    }
    if is_even_power_of_three(field) && field.mul(z, z) == field.neg_one() {
        return Some(Item4Class::EvenPowerOf3);
    }
    None
}

pub fn lemma1_checks(field: &Field, h: Elem) -> Result<Lemma1Report> {
    check_h_hypothesis(field, h, false)?;
    let q = field.q();
    let hq = field.frobenius(h, 1);
    let hq2_1 = field.pow(h, q * q + 1);
    let item1 = hq != field.neg(h);
    let item2 = hq2_1 != field.one();
    let item3 = field
        .is_odd()
        .then(|| hq2_1 != hq && hq2_1 != field.neg(hq));
    let item4_lhs_zero = field.is_zero(item4_lhs(field, h));
    let item4_class = item4_lhs_zero.then(|| item4_classify(field, h)).flatten();
    Ok(Lemma1Report {
        item1,
        item2,
        item3,
        item4_lhs_zero,
        item4_class,
        item4: !item4_lhs_zero || item4_class.is_some(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WhichLemma {
    /// Degree `q+1` polynomial, hypothesis `h^4 != 1`.
    Lemma2,
    /// `h^{q+1}T^{q^2+1} + (h^q+h)^{q+1}`, hypothesis `h^4 = 1`.
    Lemma3,
}

/// Alternatives a root may fall under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootClass {
    /// `σ = ±(h^{q^2}+h^q)`.
    PlusMinusMBar,
    /// `p = 2` and `h^{q^2-q+1} = 1`.
    Char2,
    /// `q = 3^{2s}` and `h^{q^2-q+1} = ±√-1`.
    EvenPowerOf3,
    /// `h ∈ F_q`.
    HInFq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedRoot {
    pub sigma: Elem,
    pub classes: Vec<RootClass>,
}

/// Value of the auxiliary polynomial at `t`.
pub fn lemma_poly_eval(field: &Field, h: Elem, which: WhichLemma, t: Elem) -> Elem {
    let q = field.q();
    let hp = |e: u64| field.pow(h, e);
    match which {
        WhichLemma::Lemma2 => {
            let c_top = hp(q + 1);
            let c_q = field.add(hp(q * q + q + 2), hp(2 * q * q + 2));
            let c_1 = field.sub(hp(2 * q * q + 2), hp(q * q + 1));
            let c_0 = field.sub(
                field.add(hp(q * q + 2 * q + 1), hp(2 * q * q + q + 1)),
                field.add(hp(2 * q), hp(q * q + q)),
            );
            let terms = [
                field.mul(c_top, field.pow(t, q + 1)),
                field.mul(c_q, field.pow(t, q)),
                field.mul(c_1, t),
                c_0,
            ];
            terms.into_iter().fold(field.zero(), |a, b| field.add(a, b))
        }
        WhichLemma::Lemma3 => {
            let s = field.add(field.frobenius(h, 1), h);
            field.add(
                field.mul(hp(q + 1), field.pow(t, q * q + 1)),
                field.pow(s, q + 1),
            )
        }
    }
}

/// All roots in `F_{q^6}` of the auxiliary polynomial, each with the lemma
/// alternatives it satisfies.
pub fn lemma_roots(field: &Field, h: Elem, which: WhichLemma) -> Result<Vec<ClassifiedRoot>> {
    check_h_hypothesis(field, h, which == WhichLemma::Lemma3)?;
    let mb = m_bar(field, h);
    let roots = scan::filter(field, |t| {
        field.is_zero(lemma_poly_eval(field, h, which, t))
    });
    let h_classes: Vec<RootClass> = match which {
        WhichLemma::Lemma2 => {
            let z = h_special(field, h);
            let mut v = Vec::new();
            if field.p() == 2 && z == field.one() {
                v.push(RootClass::Char2);
            }
            if is_even_power_of_three(field) && field.mul(z, z) == field.neg_one() {
                v.push(RootClass::EvenPowerOf3);
            }
            if field.in_subfield(h, 1)? {
                v.push(RootClass::HInFq);
            }
            v
        }
        WhichLemma::Lemma3 => Vec::new(),
    };
    roots
        .into_iter()
        .map(|sigma| {
            let mut classes = Vec::new();
            if sigma == mb || sigma == field.neg(mb) {
                classes.push(RootClass::PlusMinusMBar);
            }
            classes.extend(&h_classes);
            if classes.is_empty() {
                Err(Error::ClassificationGap {
                    root: field.format(sigma),
                })
            } else {
                Ok(ClassifiedRoot { sigma, classes })
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_h_matches_brute_force() {
        for (p, s) in [(3, 1), (2, 1), (2, 2), (5, 1)] {
            let f = Field::new(p, s).unwrap();
            let v = HVariant::for_field(&f);
            let fast = enumerate_h(&f, v).unwrap();
            assert_eq!(fast.len() as u64, f.q().pow(3) + 1);
            assert_eq!(fast, enumerate_h_brute(&f, v).unwrap());
        }
    }

    #[test]
    fn parity_mismatch() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(
            enumerate_h(&f, HVariant::Even),
            Err(Error::ParityMismatch(3))
        );
    }

    #[test]
    fn no_valid_h_in_f3() {
        let f = Field::new(3, 1).unwrap();
        for h in enumerate_h(&f, HVariant::Odd).unwrap() {
            assert!(!f.in_subfield(h, 1).unwrap());
        }
    }

    #[test]
    fn q5_h_in_prime_field() {
        let f = Field::new(5, 1).unwrap();
        let hs = enumerate_h(&f, HVariant::Odd).unwrap();
        assert!(hs.contains(&f.from_int(2)));
        assert!(hs.contains(&f.from_int(3)));
        let p = build(&f, &FamilySpec::new(FamilyTag::NewFh, Some(f.from_int(2)))).unwrap();
        assert_eq!(p, case1(&f));
    }

    #[test]
    fn build_rejects_bad_parameters() {
        let f = Field::new(5, 1).unwrap();
        let one = f.one();
        for spec in [
            FamilySpec::new(FamilyTag::CsajbokMz, Some(one)),
            FamilySpec::new(FamilyTag::NewFh, Some(one)),
            FamilySpec::new(FamilyTag::Lp, Some(one)),
            FamilySpec::new(FamilyTag::CsajbokMp, Some(f.zero())),
            FamilySpec::new(FamilyTag::Trinomial, Some(f.generator())),
            FamilySpec::plain(FamilyTag::Lp),
        ] {
            assert!(matches!(build(&f, &spec), Err(Error::InvalidParameter(_))));
        }
        let pr = build(&f, &FamilySpec::plain(FamilyTag::Pseudoregulus)).unwrap();
        assert_eq!(pr, QPoly::monomial(&f, 1, one));
        let two = f.from_int(2);
        assert!(build(&f, &FamilySpec::new(FamilyTag::CsajbokMz, Some(two))).is_ok());
    }

    #[test]
    fn spec_parse_roundtrip() {
        let f = Field::new(3, 1).unwrap();
        let s = FamilySpec::parse(&f, "new_fh:g^13").unwrap();
        assert_eq!(s.tag, FamilyTag::NewFh);
        assert_eq!(s.format(&f), "new_fh:g^13");
        assert_eq!(
            FamilySpec::parse(&f, "pseudoregulus").unwrap(),
            FamilySpec::plain(FamilyTag::Pseudoregulus)
        );
        assert!(FamilySpec::parse(&f, "nope").is_err());
    }

    #[test]
    fn lemma1_items_at_q3() {
        let f = Field::new(3, 1).unwrap();
        for h in enumerate_h(&f, HVariant::Odd).unwrap() {
            let r = lemma1_checks(&f, h).unwrap();
            assert!(r.item1 && r.item2 && r.item3 == Some(true) && r.item4);
        }
    }

    #[test]
    fn lemma1_rejects_h4_one() {
        let f = Field::new(5, 1).unwrap();
        let two = f.from_int(2);
        assert!(matches!(
            lemma1_checks(&f, two),
            Err(Error::HypothesisViolated(_))
        ));
        // Unchecked left side: 2^104 + 14·2^62 + 2^20 = 1 + 56 + 1 = 3 in F_5.
        assert_eq!(item4_lhs(&f, two), f.from_int(3));
    }

    #[test]
    fn lemma2_roots_at_q3() {
        let f = Field::new(3, 1).unwrap();
        for h in enumerate_h(&f, HVariant::Odd).unwrap() {
            let roots = lemma_roots(&f, h, WhichLemma::Lemma2).unwrap();
            for r in &roots {
                assert!(!r.classes.contains(&RootClass::Char2));
            }
        }
    }

    #[test]
    fn lemma3_roots_at_q5() {
        let f = Field::new(5, 1).unwrap();
        for h in [f.from_int(2), f.from_int(3)] {
            let roots = lemma_roots(&f, h, WhichLemma::Lemma3).unwrap();
            let mb = m_bar(&f, h);
            let mut expect = vec![mb, f.neg(mb)];
            expect.sort_by_key(|&x| f.enum_index(x));
            let got: Vec<_> = roots.iter().map(|r| r.sigma).collect();
            assert_eq!(got, expect);
        }
        assert!(matches!(
            lemma_roots(&f, f.from_int(2), WhichLemma::Lemma2),
            Err(Error::HypothesisViolated(_))
        ));
    }

    /// At `q = 5` some `h` have unclassified roots. Each such `h` makes one
    /// of the leading factors of the closing identity vanish: either
    /// `x^2 = -1` or `x^4 + 14x^2 + 1 = 0`, with `x = h^{q^2-q+1}`. Neither is
    /// excluded once `q ≡ 1 (mod 4)`, so the gap is in the lemma, not here.
    #[test]
    fn lemma2_gaps_at_q5_come_from_uncovered_factors() {
        let f = Field::new(5, 1).unwrap();
        let mut gaps = 0;
        for h in enumerate_h(&f, HVariant::Odd).unwrap() {
            if f.pow(h, 4) == f.one() {
                continue;
            }
            if let Err(Error::ClassificationGap { .. }) = lemma_roots(&f, h, WhichLemma::Lemma2) {
                gaps += 1;
                let x = h_special(&f, h);
                let x2 = f.mul(x, x);
                assert!(x2 == f.neg_one() || f.is_zero(item4_lhs(&f, h)));
            }
        }
        assert!(gaps > 0);
    }

    /// Item 4 fails at `q = 5`: `x^4 + 14x^2 + 1 = 0` has roots with
    /// `x^{q+1} = -1` although `p = 5`.
    #[test]
    fn lemma1_item4_counterexamples_at_q5() {
        let f = Field::new(5, 1).unwrap();
        let bad = enumerate_h(&f, HVariant::Odd)
            .unwrap()
            .into_iter()
            .filter(|&h| f.pow(h, 4) != f.one())
            .filter(|&h| !lemma1_checks(&f, h).unwrap().item4)
            .count();
        assert!(bad > 0);
    }
}
