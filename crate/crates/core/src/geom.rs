//! Subspaces of `PG(5, q^6)`, the collineation `σ̂` fixing the canonical
//! subgeometry `Σ`, and the intersection number.
//!
//! Dimensions are projective: the empty subspace has dimension `-1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{self, Matrix};
use crate::qpoly::{QPoly, N};
use crate::scan;

/// A projective subspace stored as the RREF basis of its vector space, so
/// equal subspaces have equal representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjSubspace {
    basis: Vec<[Elem; N]>,
}

fn canonical(field: &Field, rows: &[[Elem; N]]) -> Vec<[Elem; N]> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    let rank = linalg::rref(field, &mut m).len();
    (0..rank)
        .map(|i| std::array::from_fn(|j| m.get(i, j)))
        .collect()
}

fn to_matrix(field: &Field, rows: &[[Elem; N]]) -> Matrix {
    if rows.is_empty() {
        return Matrix::zeros(field, 0, N);
    }
    Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn dot(field: &Field, a: &[Elem; N], b: &[Elem; N]) -> Elem {
    (0..N).fold(field.zero(), |acc, i| field.add(acc, field.mul(a[i], b[i])))
}

impl ProjSubspace {
    pub fn from_basis(field: &Field, rows: &[[Elem; N]]) -> Self {
        ProjSubspace {
            basis: canonical(field, rows),
        }
    }

    /// Solution space of `Σ_i c_i x_i = 0` for every constraint row `c`.
    pub fn from_equations(field: &Field, eqs: &[[Elem; N]]) -> Self {
        if eqs.is_empty() {
            return Self::whole(field);
        }
        let ns = linalg::nullspace(field, &to_matrix(field, eqs));
        let rows: Vec<[Elem; N]> = ns.iter().map(|v| std::array::from_fn(|j| v[j])).collect();
        Self::from_basis(field, &rows)
    }

    pub fn whole(field: &Field) -> Self {
        let rows: Vec<[Elem; N]> = (0..N)
            .map(|i| std::array::from_fn(|j| if i == j { field.one() } else { field.zero() }))
            .collect();
        ProjSubspace { basis: rows }
    }

    pub fn empty() -> Self {
        ProjSubspace { basis: Vec::new() }
    }

    pub fn basis(&self) -> &[[Elem; N]] {
        &self.basis
    }

    /// Projective dimension.
    pub fn dim(&self) -> i32 {
        self.basis.len() as i32 - 1
    }

    /// Constraint rows cutting out this subspace (a basis of its annihilator).
    pub fn equations(&self, field: &Field) -> Vec<[Elem; N]> {
        if self.basis.is_empty() {
            return ProjSubspace::whole(field).basis;
        }
        linalg::nullspace(field, &to_matrix(field, &self.basis))
            .iter()
            .map(|v| std::array::from_fn(|j| v[j]))
            .collect()
    }

    pub fn contains(&self, field: &Field, v: &[Elem; N]) -> bool {
        self.equations(field)
            .iter()
            .all(|c| field.is_zero(dot(field, c, v)))
    }

    pub fn intersect(&self, field: &Field, other: &ProjSubspace) -> ProjSubspace {
        let mut eqs = self.equations(field);
        eqs.extend(other.equations(field));
        Self::from_equations(field, &eqs)
    }

    /// Applies `σ̂^iterations`; `σ̂` maps `(x_0, ..., x_5)` to
    /// `(x_5^q, x_0^q, ..., x_4^q)`.
    pub fn sigma_hat(&self, field: &Field, iterations: usize) -> ProjSubspace {
        let rows: Vec<[Elem; N]> = self
            .basis
            .iter()
            .map(|v| {
                let mut v = *v;
                for _ in 0..iterations % N {
                    v = sigma_hat_vector(field, &v);
                }
                v
            })
            .collect();
        Self::from_basis(field, &rows)
    }
}

pub fn sigma_hat_vector(field: &Field, v: &[Elem; N]) -> [Elem; N] {
    std::array::from_fn(|i| field.frobenius(v[(i + N - 1) % N], 1))
}

/// The point `<(x, x^q, ..., x^{q^5})>` of `Σ`.
pub fn sigma_point(field: &Field, x: Elem) -> [Elem; N] {
    std::array::from_fn(|i| field.frobenius(x, i))
}

/// `Γ: x_0 = 0, h^{q-1}x_1 - h^{q^2-1}x_2 + x_4 + x_5 = 0`.
pub fn gamma_of(field: &Field, h: Elem) -> Result<ProjSubspace> {
    if field.is_zero(h) {
        return Err(Error::ZeroParameter);
    }
    let q = field.q();
    let (z, one) = (field.zero(), field.one());
    let eqs = [
        [one, z, z, z, z, z],
        [
            z,
            field.pow(h, q - 1),
            field.neg(field.pow(h, q * q - 1)),
            z,
            one,
            one,
        ],
    ];
    Ok(ProjSubspace::from_equations(field, &eqs))
}

/// Exact test for `S ∩ Σ = ∅`.
///
/// A point of `Σ` lies in `S` iff `x` is a common zero of the `q`-polynomials
/// given by the constraint rows, so `S ∩ Σ = ∅` iff their stacked Dickson
/// matrices have full column rank.
pub fn disjoint_from_sigma(field: &Field, s: &ProjSubspace) -> bool {
    let eqs = s.equations(field);
    if eqs.is_empty() {
        return false;
    }
    let mut rows = Vec::with_capacity(eqs.len() * N);
    for c in &eqs {
        rows.extend(QPoly::new(*c).dickson(field).to_rows());
    }
    linalg::rank(field, &Matrix::from_rows(&rows)) == N
}

/// Enumeration oracle for [`disjoint_from_sigma`]: tests every `x != 0`.
pub fn disjoint_from_sigma_enumerated(field: &Field, s: &ProjSubspace) -> bool {
    let eqs = s.equations(field);
    scan::find_first(field, |x| {
        !field.is_zero(x)
            && eqs
                .iter()
                .all(|c| field.is_zero(QPoly::new(*c).evaluate(field, x)))
    })
    .is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntnReport {
    /// `dim(S ∩ S^σ ∩ ... ∩ S^{σ^i})` for `i = 0..=intn`.
    pub dims_chain: Vec<i32>,
    pub intn: usize,
}

/// Intersection number of `S` with respect to `σ = σ̂^power`.
pub fn intn(field: &Field, s: &ProjSubspace, power: usize) -> Result<IntnReport> {
    if power != 1 && power != 5 {
        return Err(Error::InvalidParameter(format!(
            "power must be 1 or 5, got {power}"
        )));
    }
    let k = s.dim();
    if k < 0 {
        return Err(Error::PreconditionFailed("subspace is empty".into()));
    }
    if !disjoint_from_sigma(field, s) {
        return Err(Error::PreconditionFailed("subspace meets Σ".into()));
    }
    let mut acc = s.clone();
    let mut dims_chain = vec![k];
    for r in 1.. {
        acc = acc.intersect(field, &s.sigma_hat(field, power * r));
        let d = acc.dim();
        if r == 1 && d < k - 2 {
            return Err(Error::PreconditionFailed(format!(
                "dim(S ∩ S^σ) = {d} < k - 2 = {}",
                k - 2
            )));
        }
        dims_chain.push(d);
        if d > k - 2 * r as i32 {
            return Ok(IntnReport {
                dims_chain,
                intn: r,
            });
        }
    }
    unreachable!("dimension k - 2r eventually drops below -1")
}
