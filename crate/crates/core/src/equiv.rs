//! `ΓL(2, q^6)`-equivalence of the subspaces `U_f = {(x, f(x))}`.
//!
//! A witness `(ρ, a, b, c, d)` acts as
//! `(x, y) -> (a x^ρ + b y^ρ, c x^ρ + d y^ρ)`. Writing `F = f^ρ` it maps
//! `U_f` onto `U_g` exactly when
//!
//! ```text
//! g ∘ (a·x + b·F) = c·x + d·F      and      ad - bc != 0.
//! ```
//!
//! For fixed `(ρ, a, b)` the right-hand side is linear in `(c, d)`, so only
//! `(ρ, a, b)` is searched. The left-hand side is additive in `(a, b)`, which
//! lets the search precompute one table per `a` and one per `b`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{self, FamilyTag};
use crate::field::{Elem, Field};
use crate::fq::FqBasis;
use crate::linalg::{self, Matrix};
use crate::qpoly::{QPoly, N};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquivWitness {
    /// Exponent `e` of `ρ: x -> x^{p^e}`.
    pub rho: usize,
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub d: Elem,
}

impl EquivWitness {
    pub fn identity(field: &Field) -> Self {
        EquivWitness {
            rho: 0,
            a: field.one(),
            b: field.zero(),
            c: field.zero(),
            d: field.one(),
        }
    }

    pub fn det(&self, field: &Field) -> Elem {
        field.sub(field.mul(self.a, self.d), field.mul(self.b, self.c))
    }

    pub fn to_json(&self, field: &Field) -> serde_json::Value {
        serde_json::json!({
            "rho": self.rho,
            "a": field.format(self.a),
            "b": field.format(self.b),
            "c": field.format(self.c),
            "d": field.format(self.d),
        })
    }
}

/// Resumable position of an exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    /// Linear index `ρ·Q² + idx(a)·Q + idx(b)` of the next triple, `Q = q^6`.
    pub cursor: u64,
    pub total: u64,
    pub field_fingerprint: String,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equivalent(EquivWitness),
    NotEquivalent,
    BudgetExceeded(Checkpoint),
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Equivalent(_) => "equivalent",
            Verdict::NotEquivalent => "not-equivalent",
            Verdict::BudgetExceeded(_) => "budget-exceeded",
        }
    }

    pub fn witness(&self) -> Option<&EquivWitness> {
        match self {
            Verdict::Equivalent(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Exhaustive when the triple count is small, linearized otherwise.
    #[default]
    Auto,
    /// Every `(ρ, a, b)` triple.
    Exhaustive,
    /// `F_q`-kernel of the residual map, then enumeration of that kernel.
    Linearized,
}

impl Method {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "auto" => Ok(Method::Auto),
            "exhaustive" => Ok(Method::Exhaustive),
            "linearized" => Ok(Method::Linearized),
            other => Err(Error::Parse(format!("unknown method {other:?}"))),
        }
    }
}

/// Largest triple count for which `Auto` picks the exhaustive search.
pub const AUTO_EXHAUSTIVE_LIMIT: u64 = 1 << 23;

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    pub method: Method,
    /// Triples (exhaustive) or kernel elements (linearized) to try.
    pub budget: Option<u64>,
    pub resume: Option<Checkpoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub searched: u64,
    pub method: Method,
}

fn poly_strings(field: &Field, f: &QPoly) -> Vec<String> {
    f.coeffs.iter().map(|&c| field.format(c)).collect()
}

/// First slot `j >= 1` where `f` is nonzero; `None` when `f` is a multiple
/// of `x` and `U_f` spans a single point.
fn pivot_slot(field: &Field, f: &QPoly) -> Option<usize> {
    (1..N).find(|&k| !field.is_zero(f.coeff(k)))
}

fn check_nondegenerate(field: &Field, f: &QPoly, side: &str) -> Result<()> {
    if pivot_slot(field, f).is_none() {
        return Err(Error::DegenerateInput(format!(
            "{side} map is a scalar multiple of x"
        )));
    }
    Ok(())
}

/// `(c, d)` with `L = c·x + d·F`, if any; `j` is a pivot slot of `F`.
fn solve_cd(
    field: &Field,
    l: &[Elem; N],
    fr: &QPoly,
    j: usize,
    fj_inv: Elem,
) -> Option<(Elem, Elem)> {
    let d = field.mul(l[j], fj_inv);
    for k in 1..N {
        if k != j && l[k] != field.mul(d, fr.coeff(k)) {
            return None;
        }
    }
    let c = field.sub(l[0], field.mul(d, fr.coeff(0)));
    Some((c, d))
}

fn add_coeffs(field: &Field, x: &[Elem; N], y: &[Elem; N]) -> [Elem; N] {
    std::array::from_fn(|i| field.add(x[i], y[i]))
}

/// `g ∘ (a·x)` and `g ∘ (b·F)` for every `a`, `b`, indexed by enumeration.
struct RhoTables {
    fr: QPoly,
    j: usize,
    fj_inv: Elem,
    la: Vec<[Elem; N]>,
    lb: Vec<[Elem; N]>,
}

impl RhoTables {
    fn new(field: &Field, f: &QPoly, g: &QPoly, rho: usize) -> Self {
        let fr = f.twist(field, rho);
        let j = pivot_slot(field, &fr).expect("checked nondegenerate");
        let fj_inv = field.inv(fr.coeff(j)).expect("pivot is nonzero");
        let elems: Vec<Elem> = field.elements().collect();
        let la = elems
            .par_iter()
            .map(|&a| g.compose(field, &QPoly::monomial(field, 0, a)).coeffs)
            .collect();
        let lb = elems
            .par_iter()
            .map(|&b| g.compose(field, &fr.scale(field, b)).coeffs)
            .collect();
        RhoTables {
            fr,
            j,
            fj_inv,
            la,
            lb,
        }
    }
}

pub fn total_triples(field: &Field) -> u64 {
    let n = field.order();
    field.degree() as u64 * n * n
}

/// Decides whether `U_f` and `U_g` are `ΓL(2, q^6)`-equivalent.
pub fn gl_equivalent(
    field: &Field,
    f: &QPoly,
    g: &QPoly,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    check_nondegenerate(field, f, "left")?;
    check_nondegenerate(field, g, "right")?;
    let method = match opts.method {
        Method::Auto if opts.resume.is_some() => Method::Exhaustive,
        Method::Auto if total_triples(field) <= AUTO_EXHAUSTIVE_LIMIT => Method::Exhaustive,
        Method::Auto => Method::Linearized,
        m => m,
    };
    match method {
        Method::Exhaustive => exhaustive(field, f, g, opts),
        _ => linearized(field, f, g, opts.budget),
    }
}

fn exhaustive(field: &Field, f: &QPoly, g: &QPoly, opts: &SearchOptions) -> Result<SearchOutcome> {
    let n = field.order();
    let n2 = n * n;
    let total = total_triples(field);
    let fingerprint = field.summary().fingerprint;
    let start = match &opts.resume {
        Some(cp) => {
            if cp.total != total
                || cp.field_fingerprint != fingerprint
                || cp.left != poly_strings(field, f)
                || cp.right != poly_strings(field, g)
            {
                return Err(Error::InvalidParameter(
                    "checkpoint does not match this search".into(),
                ));
            }
            cp.cursor
        }
        None => 0,
    };
    let end = match opts.budget {
        Some(b) => start.saturating_add(b).min(total),
        None => total,
    };
    let elems: Vec<Elem> = field.elements().collect();

    let mut rho = (start / n2) as usize;
    while (rho as u64) * n2 < end {
        let base = rho as u64 * n2;
        let lo = start.max(base) - base;
        let hi = end.min(base + n2) - base;
        let tables = RhoTables::new(field, f, g, rho);
        let first_a = lo / n;
        let last_a = (hi - 1) / n;
        let hit = (first_a..=last_a).into_par_iter().find_map_first(|ia| {
            let b_lo = if ia == first_a { lo % n } else { 0 };
            let b_hi = if ia == last_a { hi - ia * n } else { n };
            let a = elems[ia as usize];
            let la = &tables.la[ia as usize];
            (b_lo..b_hi).find_map(|ib| {
                if ia == 0 && ib == 0 {
                    return None;
                }
                let l = add_coeffs(field, la, &tables.lb[ib as usize]);
                let (c, d) = solve_cd(field, &l, &tables.fr, tables.j, tables.fj_inv)?;
                let b = elems[ib as usize];
                let w = EquivWitness { rho, a, b, c, d };
                (!field.is_zero(w.det(field))).then_some((ia * n + ib, w))
            })
        });
        if let Some((offset, w)) = hit {
            return Ok(SearchOutcome {
                verdict: Verdict::Equivalent(w),
                searched: base + offset + 1 - start,
                method: Method::Exhaustive,
            });
        }
        rho += 1;
    }
    let verdict = if end == total {
        Verdict::NotEquivalent
    } else {
        Verdict::BudgetExceeded(Checkpoint {
            cursor: end,
            total,
            field_fingerprint: fingerprint,
            left: poly_strings(field, f),
            right: poly_strings(field, g),
        })
    };
    Ok(SearchOutcome {
        verdict,
        searched: end - start,
        method: Method::Exhaustive,
    })
}

/// For each `ρ`, the pairs `(a, b)` with `g ∘ (a·x + b·F) ∈ span(x, F)` form
/// an `F_q`-subspace of `F_{q^6}^2`: it is the kernel of the residuals
/// `L_k F_j - L_j F_k` (`k ∉ {0, j}`). The kernel is computed in `F_q`
/// coordinates and then enumerated for a pair with `ad - bc != 0`.
fn linearized(field: &Field, f: &QPoly, g: &QPoly, budget: Option<u64>) -> Result<SearchOutcome> {
    let basis = FqBasis::new(field);
    let fq: Vec<Elem> = field.enumerate(1)?.collect();
    let q = field.q();
    let mut searched = 0u64;
    for rho in 0..field.degree() {
        let fr = f.twist(field, rho);
        let j = pivot_slot(field, &fr).expect("checked nondegenerate");
        let fj_inv = field.inv(fr.coeff(j))?;
        let l_of = |a: Elem, b: Elem| {
            g.compose(
                field,
                &QPoly::monomial(field, 0, a).add(field, &fr.scale(field, b)),
            )
            .coeffs
        };
        let residual_rows: Vec<usize> = (1..N).filter(|&k| k != j).collect();
        let mut cols: Vec<Vec<Elem>> = Vec::with_capacity(2 * N);
        for side in 0..2 {
            for &beta in basis.basis() {
                let (a, b) = if side == 0 {
                    (beta, field.zero())
                } else {
                    (field.zero(), beta)
                };
                let l = l_of(a, b);
                let mut col = Vec::with_capacity(residual_rows.len() * N);
                for &k in &residual_rows {
                    let r = field.sub(field.mul(l[k], fr.coeff(j)), field.mul(l[j], fr.coeff(k)));
                    col.extend(basis.coords(field, r));
                }
                cols.push(col);
            }
        }
        let rows: Vec<Vec<Elem>> = (0..cols[0].len())
            .map(|r| cols.iter().map(|c| c[r]).collect())
            .collect();
        let kernel = linalg::nullspace(field, &Matrix::from_rows(&rows));
        let dim = kernel.len() as u32;
        let count = q.pow(dim);
        if let Some(b) = budget {
            if searched + count > b {
                return Ok(SearchOutcome {
                    verdict: Verdict::BudgetExceeded(Checkpoint {
                        cursor: rho as u64,
                        total: field.degree() as u64,
                        field_fingerprint: field.summary().fingerprint,
                        left: poly_strings(field, f),
                        right: poly_strings(field, g),
                    }),
                    searched,
                    method: Method::Linearized,
                });
            }
        }
        // Mixed-radix walk over the F_q-combinations of the kernel basis.
        let mut digits = vec![0usize; dim as usize];
        for _ in 0..count {
            searched += 1;
            let mut v = [field.zero(); 2 * N];
            for (kv, &dgt) in kernel.iter().zip(&digits) {
                let coef = fq[dgt];
                for (vi, &ki) in v.iter_mut().zip(kv) {
                    *vi = field.add(*vi, field.mul(coef, ki));
                }
            }
            let a = basis.from_coords(field, &std::array::from_fn(|i| v[i]));
            let b = basis.from_coords(field, &std::array::from_fn(|i| v[N + i]));
            if let Some((c, d)) = solve_cd(field, &l_of(a, b), &fr, j, fj_inv) {
                let w = EquivWitness { rho, a, b, c, d };
                if !field.is_zero(w.det(field)) {
                    return Ok(SearchOutcome {
                        verdict: Verdict::Equivalent(w),
                        searched,
                        method: Method::Linearized,
                    });
                }
            }
            for dgt in digits.iter_mut() {
                *dgt += 1;
                if *dgt < fq.len() {
                    break;
                }
                *dgt = 0;
            }
        }
    }
    Ok(SearchOutcome {
        verdict: Verdict::NotEquivalent,
        searched,
        method: Method::Linearized,
    })
}

/// For `h ∈ F_{q^2}` with `h^{q+1} = -1`: the matrix with
/// `a = h^{-1} - h`, `b = 1`, `c = h^{-1} - 1 - h^3 + h^2`, `d = h - h^2 - 1`
/// (and `ρ = id`), which maps `U_{f_h}` onto the trinomial subspace.
pub fn trinomial_witness(field: &Field, h: Elem) -> Result<EquivWitness> {
    let one = field.one();
    let hinv = field.inv(h)?;
    let h2 = field.mul(h, h);
    let h3 = field.mul(h2, h);
    Ok(EquivWitness {
        rho: 0,
        a: field.sub(hinv, h),
        b: one,
        c: field.add(field.sub(field.sub(hinv, one), h3), h2),
        d: field.sub(field.sub(h, h2), one),
    })
}

/// Checks the composition identity and `ad - bc != 0`.
pub fn verify_witness(field: &Field, f: &QPoly, g: &QPoly, w: &EquivWitness) -> bool {
    if field.is_zero(w.det(field)) {
        return false;
    }
    let fr = f.twist(field, w.rho);
    let inner = QPoly::monomial(field, 0, w.a).add(field, &fr.scale(field, w.b));
    let rhs = QPoly::monomial(field, 0, w.c).add(field, &fr.scale(field, w.d));
    g.compose(field, &inner) == rhs
}

/// Pushes every vector of `U_f` (or every `stride`-th) through the witness
/// and checks it lands in `U_g`; with `stride = 1` also checks the image has
/// `q^6` distinct first coordinates.
pub fn verify_witness_enumerated(
    field: &Field,
    f: &QPoly,
    g: &QPoly,
    w: &EquivWitness,
    stride: u64,
) -> bool {
    if field.is_zero(w.det(field)) {
        return false;
    }
    let stride = stride.max(1);
    let mut seen = vec![false; field.order() as usize];
    let mut distinct = 0u64;
    for (i, x) in field.elements().enumerate() {
        if !(i as u64).is_multiple_of(stride) {
            continue;
        }
        let xr = field.automorphism(x, w.rho);
        let yr = field.automorphism(f.evaluate(field, x), w.rho);
        let z = field.add(field.mul(w.a, xr), field.mul(w.b, yr));
        let y = field.add(field.mul(w.c, xr), field.mul(w.d, yr));
        if g.evaluate(field, z) != y {
            return false;
        }
        let s = field.slot(z);
        if !seen[s] {
            seen[s] = true;
            distinct += 1;
        }
    }
    stride > 1 || distinct == field.order()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PglOutcome {
    pub equivalent: bool,
    /// True when a branch ran out of budget before deciding.
    pub undecided: bool,
    pub direct: SearchOutcome,
    /// `None` when the family only allows the direct branch.
    pub adjoint: Option<SearchOutcome>,
}

/// PΓL-equivalence of `L_f` with a known-family `L_g`: `U_f` must be
/// ΓL-equivalent to `U_g` or, except for `U^3`, to `U_ĝ`.
pub fn pgl_linear_sets_equivalent(
    field: &Field,
    f: &QPoly,
    g: &QPoly,
    g_family: FamilyTag,
    opts: &SearchOptions,
) -> Result<PglOutcome> {
    let direct = gl_equivalent(field, f, g, opts)?;
    let adjoint = if g_family.allows_adjoint() {
        let plain = SearchOptions {
            resume: None,
            ..opts.clone()
        };
        Some(gl_equivalent(field, f, &g.adjoint(field), &plain)?)
    } else {
        None
    };
    let branches = std::iter::once(&direct).chain(adjoint.as_ref());
    let equivalent = branches.clone().any(|o| o.verdict.is_equivalent());
    let undecided = !equivalent
        && branches
            .into_iter()
            .any(|o| matches!(o.verdict, Verdict::BudgetExceeded(_)));
    Ok(PglOutcome {
        equivalent,
        undecided,
        direct,
        adjoint,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum L4Variant {
    /// Target `x^q + x^{q^3} + δx^{q^5}`.
    Trin,
    /// Target `δx^q + x^{q^3} + x^{q^5}`.
    Trin2,
}

impl L4Variant {
    /// The polynomial `U_{f_h}` is mapped onto.
    pub fn target(self, field: &Field, delta: Elem) -> QPoly {
        let one = field.one();
        match self {
            L4Variant::Trin => QPoly::from_terms(field, &[(1, one), (3, one), (5, delta)]),
            L4Variant::Trin2 => QPoly::from_terms(field, &[(1, delta), (3, one), (5, one)]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L4Witness {
    pub witness: EquivWitness,
    /// `k = h^ρ`.
    pub k: Elem,
    /// The witness passes the composition identity for `f_k` and the target.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L4Outcome {
    pub found: Option<L4Witness>,
    /// Nonzero `b` solving the last three equations, over all `ρ`.
    pub b_solutions: u64,
    /// Of those, how many gave `ad - bc = 0`.
    pub singular: u64,
}

/// Scans `b` for the last three equations of the chosen system, derives
/// `(a, c, d)` from the first three and keeps the first invertible result.
pub fn check_system_l4(
    field: &Field,
    h: Elem,
    delta: Elem,
    variant: L4Variant,
) -> Result<L4Outcome> {
    if field.add(field.mul(delta, delta), delta) != field.one() {
        return Err(Error::HypothesisViolated("delta^2 + delta != 1".into()));
    }
    if !family::is_valid_h(field, h) {
        return Err(Error::HypothesisViolated("h^{q^3+1} != -1".into()));
    }
    let mut found = None;
    let mut b_solutions = 0;
    let mut singular = 0;
    let f_h = family::f_h(field, h);
    let target = variant.target(field, delta);
    for rho in 0..field.degree() {
        let k = field.automorphism(h, rho);
        let sys = L4System::new(field, k, delta, variant);
        let sols = crate::scan::filter(field, |b| !field.is_zero(b) && sys.tail_holds(field, b));
        for b in sols {
            b_solutions += 1;
            let (a, c, d) = sys.head(field, b);
            let w = EquivWitness { rho, a, b, c, d };
            if field.is_zero(w.det(field)) {
                singular += 1;
                continue;
            }
            if found.is_none() {
                let verified = verify_witness(field, &f_h, &target, &w);
                found = Some(L4Witness {
                    witness: w,
                    k,
                    verified,
                });
            }
        }
    }
    Ok(L4Outcome {
        found,
        b_solutions,
        singular,
    })
}

/// Coefficients of one of the two systems for a fixed `k` and `δ`.
struct L4System {
    variant: L4Variant,
    delta: Elem,
    delta_q: Elem,
    k_q2_1: Elem,
    k_q_1: Elem,
    k_1_mq: Elem,
    k_q_m1: Elem,
    k_q_q2: Elem,
    k_q2_mq: Elem,
    k_q2_m1: Elem,
    k_1_mq2: Elem,
}

impl L4System {
    fn new(field: &Field, k: Elem, delta: Elem, variant: L4Variant) -> Self {
        let k1 = field.frobenius(k, 1);
        let k2 = field.frobenius(k, 2);
        let div = |x, y| field.div(x, y).expect("k != 0");
        L4System {
            variant,
            delta,
            delta_q: field.frobenius(delta, 1),
            k_q2_1: field.mul(k2, k),
            k_q_1: field.mul(k1, k),
            k_1_mq: div(k, k1),
            k_q_m1: div(k1, k),
            k_q_q2: field.mul(k1, k2),
            k_q2_mq: div(k2, k1),
            k_q2_m1: div(k2, k),
            k_1_mq2: div(k, k2),
        }
    }

    fn tail_holds(&self, field: &Field, b: Elem) -> bool {
        let (b1, b3, b5) = (
            field.frobenius(b, 1),
            field.frobenius(b, 3),
            field.frobenius(b, 5),
        );
        let m = |x, y| field.mul(x, y);
        let a = |x, y| field.add(x, y);
        let one = field.one();
        let dl = self.delta;
        let dl2 = m(dl, dl);
        let eqs = match self.variant {
            L4Variant::Trin => [
                a(b3, m(a(self.k_q_m1, m(dl, self.k_q_q2)), b5)),
                a(
                    a(m(self.k_q2_mq, b1), m(a(one, self.k_q2_mq), b3)),
                    m(m(dl, self.k_q2_m1), b5),
                ),
                a(
                    a(
                        field.neg(m(dl, b1)),
                        m(a(self.k_1_mq, m(dl2, self.k_1_mq2)), b3),
                    ),
                    m(dl, b5),
                ),
            ],
            L4Variant::Trin2 => [
                a(m(dl, b3), m(field.sub(self.k_q_m1, m(dl, self.k_q_q2)), b5)),
                a(
                    a(m(m(dl, self.k_q2_mq), b1), m(a(self.k_q2_mq, one), b3)),
                    m(self.k_q2_m1, b5),
                ),
                a(
                    a(m(dl2, b1), m(a(self.k_1_mq, m(dl2, self.k_1_mq2)), b3)),
                    b5,
                ),
            ],
        };
        eqs.iter().all(|&e| field.is_zero(e))
    }

    /// `(a, c, d)` from the first three equations.
    fn head(&self, field: &Field, b: Elem) -> (Elem, Elem, Elem) {
        let bq = |i| field.frobenius(b, i);
        let m = |x, y| field.mul(x, y);
        let dl = self.delta;
        match self.variant {
            L4Variant::Trin => {
                let c = field.sub(bq(1), m(m(dl, self.k_q2_1), bq(5)));
                let a = field.neg(field.add(m(self.k_q_1, bq(4)), m(self.delta_q, bq(2))));
                let d = field.add(m(self.k_1_mq, bq(3)), m(dl, bq(5)));
                (a, c, d)
            }
            L4Variant::Trin2 => {
                let c = field.sub(m(dl, bq(1)), m(self.k_q2_1, bq(5)));
                let a = field.neg(field.add(m(m(self.delta_q, self.k_q_1), bq(4)), bq(2)));
                let d = field.add(m(self.k_1_mq, bq(3)), bq(5));
                (a, c, d)
            }
        }
    }
}

/// Roots of `δ^2 + δ = 1` in enumeration order.
pub fn l4_deltas(field: &Field) -> Vec<Elem> {
    crate::scan::filter(field, |d| field.add(field.mul(d, d), d) == field.one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{enumerate_h, HVariant};

    fn q3() -> Field {
        Field::new(3, 1).unwrap()
    }

    #[test]
    fn self_equivalence_has_identity_witness() {
        let f = q3();
        let h = enumerate_h(&f, HVariant::Odd).unwrap()[3];
        let p = family::f_h(&f, h);
        let out = gl_equivalent(&f, &p, &p, &SearchOptions::default()).unwrap();
        let w = *out.verdict.witness().unwrap();
        assert!(verify_witness(&f, &p, &p, &w));
        assert!(verify_witness_enumerated(&f, &p, &p, &w, 1));
        assert!(verify_witness(&f, &p, &p, &EquivWitness::identity(&f)));
    }

    #[test]
    fn methods_agree_on_small_pairs() {
        let f = q3();
        let one = f.one();
        let xq = QPoly::monomial(&f, 1, one);
        let xq5 = QPoly::monomial(&f, 5, one);
        let h = enumerate_h(&f, HVariant::Odd).unwrap()[0];
        let fh = family::f_h(&f, h);
        for (l, r, expect) in [(&xq, &xq5, true), (&fh, &xq, false)] {
            for m in [Method::Exhaustive, Method::Linearized] {
                let opts = SearchOptions {
                    method: m,
                    ..Default::default()
                };
                let out = gl_equivalent(&f, l, r, &opts).unwrap();
                assert_eq!(out.verdict.is_equivalent(), expect, "{m:?}");
                if let Some(w) = out.verdict.witness() {
                    assert!(verify_witness_enumerated(&f, l, r, w, 1));
                }
            }
        }
    }

    #[test]
    fn budget_and_resume() {
        let f = q3();
        let one = f.one();
        let xq = QPoly::monomial(&f, 1, one);
        let h = enumerate_h(&f, HVariant::Odd).unwrap()[0];
        let fh = family::f_h(&f, h);
        let mut opts = SearchOptions {
            method: Method::Exhaustive,
            budget: Some(1_000_000),
            resume: None,
        };
        let mut rounds = 0;
        loop {
            let out = gl_equivalent(&f, &fh, &xq, &opts).unwrap();
            rounds += 1;
            match out.verdict {
                Verdict::BudgetExceeded(cp) => opts.resume = Some(cp),
                Verdict::NotEquivalent => break,
                Verdict::Equivalent(_) => panic!("f_h is not a pseudoregulus"),
            }
        }
        assert_eq!(rounds, 4);
    }

    #[test]
    fn degenerate_input_rejected() {
        let f = q3();
        let scalar = QPoly::monomial(&f, 0, f.one());
        let xq = QPoly::monomial(&f, 1, f.one());
        assert!(matches!(
            gl_equivalent(&f, &scalar, &xq, &SearchOptions::default()),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn l4_rejects_bad_delta() {
        let f = q3();
        let h = enumerate_h(&f, HVariant::Odd).unwrap()[0];
        assert!(matches!(
            check_system_l4(&f, h, f.one(), L4Variant::Trin),
            Err(Error::HypothesisViolated(_))
        ));
        assert_eq!(l4_deltas(&f).len(), 2);
    }
}
