//! `q`-polynomials `f(x) = Σ_{i<6} a_i x^{q^i}` over `F_{q^6}`.
//!
//! Coefficient slot `i` always multiplies `x^{q^i}`. The Dickson matrix has
//! entry `(i, j) = a_{(j - i) mod 6}^{q^i}`, so that
//! `M(f) · (x, x^q, …, x^{q^5})ᵀ = (f(x), f(x)^q, …)ᵀ` and
//! `M(f ∘ g) = M(f) · M(g)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{self, Matrix};

pub use crate::linalg::{det, rank};

/// Number of coefficient slots, the extension degree of `F_{q^6}` over `F_q`.
pub const N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    pub coeffs: [Elem; N],
}

#[derive(Serialize, Deserialize)]
struct QPolyJson {
    coeffs: Vec<String>,
}

impl QPoly {
    pub fn new(coeffs: [Elem; N]) -> Self {
        QPoly { coeffs }
    }

    pub fn zero(field: &Field) -> Self {
        QPoly {
            coeffs: [field.zero(); N],
        }
    }

    pub fn identity(field: &Field) -> Self {
        Self::monomial(field, 0, field.one())
    }

    /// `c · x^{q^i}`.
    pub fn monomial(field: &Field, i: usize, c: Elem) -> Self {
        let mut f = Self::zero(field);
        f.coeffs[i % N] = c;
        f
    }

    /// Builds from `(slot, coefficient)` pairs; repeated slots accumulate.
    pub fn from_terms(field: &Field, terms: &[(usize, Elem)]) -> Self {
        let mut f = Self::zero(field);
        for &(i, c) in terms {
            f.coeffs[i % N] = field.add(f.coeffs[i % N], c);
        }
        f
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs[i % N]
    }

    pub fn is_zero(&self, field: &Field) -> bool {
        self.coeffs.iter().all(|&c| field.is_zero(c))
    }

    /// Slots with a nonzero coefficient.
    pub fn support(&self, field: &Field) -> Vec<usize> {
        (0..N).filter(|&i| !field.is_zero(self.coeffs[i])).collect()
    }

    #[inline]
    pub fn evaluate(&self, field: &Field, x: Elem) -> Elem {
        let mut acc = field.zero();
        for (i, &a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            acc = field.add(acc, field.mul(a, field.frobenius(x, i)));
        }
        acc
    }

    /// `self ∘ other`, reduced modulo `x^{q^6} - x`:
    /// `c_k = Σ_{i+j ≡ k} a_i b_j^{q^i}`.
    pub fn compose(&self, field: &Field, other: &QPoly) -> QPoly {
        let mut out = Self::zero(field);
        for i in 0..N {
            let a = self.coeffs[i];
            if field.is_zero(a) {
                continue;
            }
            for j in 0..N {
                let b = other.coeffs[j];
                if field.is_zero(b) {
                    continue;
                }
                let k = (i + j) % N;
                let term = field.mul(a, field.frobenius(b, i));
                out.coeffs[k] = field.add(out.coeffs[k], term);
            }
        }
        out
    }

    /// Adjoint with respect to `(x, y) -> Tr_{q^6/q}(xy)`: slot `i` of the
    /// result is `a_{6-i}^{q^i}`.
    pub fn adjoint(&self, field: &Field) -> QPoly {
        let coeffs = std::array::from_fn(|i| {
            let src = (N - i) % N;
            field.frobenius(self.coeffs[src], i)
        });
        QPoly { coeffs }
    }

    pub fn add(&self, field: &Field, other: &QPoly) -> QPoly {
        QPoly {
            coeffs: std::array::from_fn(|i| field.add(self.coeffs[i], other.coeffs[i])),
        }
    }

    /// `c · f(x)`.
    pub fn scale(&self, field: &Field, c: Elem) -> QPoly {
        QPoly {
            coeffs: std::array::from_fn(|i| field.mul(c, self.coeffs[i])),
        }
    }

    /// `f(x) - m·x`.
    pub fn sub_linear(&self, field: &Field, m: Elem) -> QPoly {
        let mut out = *self;
        out.coeffs[0] = field.sub(out.coeffs[0], m);
        out
    }

    /// `f` with its `x`-coefficient replaced by `m` (the polynomial whose
    /// Dickson matrix is `M(m)`).
    pub fn with_diagonal(&self, m: Elem) -> QPoly {
        let mut out = *self;
        out.coeffs[0] = m;
        out
    }

    /// `f^ρ` for `ρ: x -> x^{p^e}`, i.e. every coefficient mapped by `ρ`.
    pub fn twist(&self, field: &Field, e: usize) -> QPoly {
        QPoly {
            coeffs: std::array::from_fn(|i| field.automorphism(self.coeffs[i], e)),
        }
    }

    pub fn dickson(&self, field: &Field) -> Matrix {
        let mut m = Matrix::zeros(field, N, N);
        for i in 0..N {
            for j in 0..N {
                m.set(i, j, field.frobenius(self.coeffs[(j + N - i) % N], i));
            }
        }
        m
    }

    /// `M(m)` with `m^{q^i}` on the diagonal, after removing the first `drop`
    /// columns and the last `drop` rows.
    pub fn dickson_m(&self, field: &Field, m: Elem, drop: usize) -> Result<Matrix> {
        if drop > 1 {
            return Err(Error::BadDrop(drop));
        }
        Ok(self.with_diagonal(m).dickson(field).minor_drop(drop))
    }

    /// Rank of `f` as an `F_q`-linear map.
    pub fn rank(&self, field: &Field) -> usize {
        linalg::rank(field, &self.dickson(field))
    }

    /// `dim_{F_q} ker f`.
    pub fn kernel_dim(&self, field: &Field) -> usize {
        N - self.rank(field)
    }

    pub fn to_json(&self, field: &Field) -> serde_json::Value {
        let coeffs = self.coeffs.iter().map(|&c| field.format(c)).collect();
        serde_json::to_value(QPolyJson { coeffs }).expect("plain struct serializes")
    }

    /// Accepts `{"coeffs": [...]}` or a bare list of six element literals.
    pub fn from_json(field: &Field, text: &str) -> Result<QPoly> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let list = match &value {
            serde_json::Value::Object(map) => map
                .get("coeffs")
                .ok_or_else(|| Error::Parse("missing \"coeffs\"".into()))?,
            other => other,
        };
        let items: Vec<String> =
            serde_json::from_value(list.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if items.len() != N {
            return Err(Error::Parse(format!(
                "expected 6 coefficients, got {}",
                items.len()
            )));
        }
        let mut f = Self::zero(field);
        for (slot, item) in f.coeffs.iter_mut().zip(&items) {
            *slot = field.parse(item)?;
        }
        Ok(f)
    }
}

/// Row-major Dickson data of `f` with an empty diagonal, reused across many
/// values of `m` by the scatteredness scan.
#[derive(Clone, Debug)]
pub struct DicksonTemplate {
    base: [Elem; N * N],
}

impl DicksonTemplate {
    pub fn new(field: &Field, f: &QPoly) -> Self {
        let m = f.with_diagonal(field.zero()).dickson(field);
        let mut base = [field.zero(); N * N];
        base.copy_from_slice(m.data());
        DicksonTemplate { base }
    }

    /// `(det M_6(m), det M_5(m))`, with `M_5` evaluated only when asked.
    #[inline]
    pub fn dets(&self, field: &Field, m: Elem, want_m5: bool) -> (Elem, Option<Elem>) {
        let conj: [Elem; N] = std::array::from_fn(|i| field.frobenius(m, i));
        let mut full = self.base;
        for i in 0..N {
            full[i * N + i] = conj[i];
        }
        let m5 = want_m5.then(|| {
            let mut small = [field.zero(); 25];
            for r in 0..5 {
                small[r * 5..r * 5 + 5].copy_from_slice(&full[r * N + 1..r * N + N]);
            }
            linalg::det_in_place(field, &mut small, 5)
        });
        let d6 = linalg::det_in_place(field, &mut full, N);
        (d6, m5)
    }

    #[inline]
    pub fn det_m5(&self, field: &Field, m: Elem) -> Elem {
        let mut small = [field.zero(); 25];
        for r in 0..5 {
            for c in 0..5 {
                small[r * 5 + c] = if r == c + 1 {
                    field.frobenius(m, r)
                } else {
                    self.base[r * N + c + 1]
                };
            }
        }
        linalg::det_in_place(field, &mut small, 5)
    }

    #[inline]
    pub fn det_m6(&self, field: &Field, m: Elem) -> Elem {
        let mut full = self.base;
        for i in 0..N {
            full[i * N + i] = field.frobenius(m, i);
        }
        linalg::det_in_place(field, &mut full, N)
    }
}
