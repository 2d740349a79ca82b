//! `F_q`-coordinates on `F_{q^6}` via the trace-dual of the basis
//! `1, g, ..., g^5`.

use crate::field::{Elem, Field};
use crate::linalg::{self, Matrix};
use crate::qpoly::{QPoly, N};

#[derive(Clone, Debug)]
pub struct FqBasis {
    basis: [Elem; N],
    dual: [Elem; N],
}

fn trace(field: &Field, x: Elem) -> Elem {
    field.trace(x, 1).expect("1 is a subfield degree")
}

impl FqBasis {
    pub fn new(field: &Field) -> Self {
        let g = field.generator();
        let basis: [Elem; N] = std::array::from_fn(|i| field.pow(g, i as u64));
        // Gram matrix T_{ik} = Tr(β_i β_k); the dual basis is T^{-1} applied
        // to the basis. Solve T y = e_j column by column via nullspace of
        // [T | -e_j] to stay within the existing elimination routines.
        let gram: Vec<Vec<Elem>> = (0..N)
            .map(|i| {
                (0..N)
                    .map(|k| trace(field, field.mul(basis[i], basis[k])))
                    .collect()
            })
            .collect();
        let mut dual = [field.zero(); N];
        for (j, slot) in dual.iter_mut().enumerate() {
            let mut aug = gram.clone();
            for (i, row) in aug.iter_mut().enumerate() {
                row.push(if i == j {
                    field.neg_one()
                } else {
                    field.zero()
                });
            }
            let ns = linalg::nullspace(field, &Matrix::from_rows(&aug));
            let v = ns
                .iter()
                .find(|v| !field.is_zero(v[N]))
                .expect("the trace form is nondegenerate");
            let scale = field.inv(v[N]).expect("nonzero");
            *slot = (0..N).fold(field.zero(), |acc, k| {
                field.add(acc, field.mul(field.mul(v[k], scale), basis[k]))
            });
        }
        FqBasis { basis, dual }
    }

    pub fn basis(&self) -> &[Elem; N] {
        &self.basis
    }

    pub fn dual(&self) -> &[Elem; N] {
        &self.dual
    }

    /// Coordinates of `x`, each an element of `F_q`.
    pub fn coords(&self, field: &Field, x: Elem) -> [Elem; N] {
        std::array::from_fn(|i| trace(field, field.mul(x, self.dual[i])))
    }

    pub fn from_coords(&self, field: &Field, c: &[Elem; N]) -> Elem {
        (0..N).fold(field.zero(), |acc, i| {
            field.add(acc, field.mul(c[i], self.basis[i]))
        })
    }

    /// The `6 x 6` matrix over `F_q` of `f` in this basis: column `j` holds
    /// the coordinates of `f(β_j)`.
    pub fn matrix_of(&self, field: &Field, f: &QPoly) -> Matrix {
        let mut m = Matrix::zeros(field, N, N);
        for j in 0..N {
            let c = self.coords(field, f.evaluate(field, self.basis[j]));
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_roundtrip() {
        for (p, s) in [(3, 1), (2, 2), (5, 1)] {
            let f = Field::new(p, s).unwrap();
            let b = FqBasis::new(&f);
            for i in 0..N {
                for j in 0..N {
                    let t = f.trace(f.mul(b.basis()[i], b.dual()[j]), 1).unwrap();
                    assert_eq!(t, if i == j { f.one() } else { f.zero() });
                }
            }
            for x in f.iter_range(0, 300) {
                let c = b.coords(&f, x);
                assert!(c.iter().all(|&v| f.in_subfield(v, 1).unwrap()));
                assert_eq!(b.from_coords(&f, &c), x);
            }
        }
    }

    #[test]
    fn matrix_rank_matches_dickson_rank() {
        let f = Field::new(3, 1).unwrap();
        let b = FqBasis::new(&f);
        let g = f.generator();
        let p = QPoly::from_terms(&f, &[(0, f.neg_one()), (1, f.one())]);
        assert_eq!(linalg::rank(&f, &b.matrix_of(&f, &p)), p.rank(&f));
        let r = QPoly::from_terms(&f, &[(0, g), (2, f.pow(g, 7)), (5, f.one())]);
        assert_eq!(linalg::rank(&f, &b.matrix_of(&f, &r)), r.rank(&f));
    }
}
