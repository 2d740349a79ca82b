//! Fixtures shared by the benchmarks.

use scatlin_core::family::{self, HVariant};
use scatlin_core::{Field, QPoly};

/// `F_{q^6}` for a prime `q`.
pub fn field(q: u64) -> Field {
    Field::new(q, 1).expect("benchmark fields are valid")
}

/// `f_h` for the first valid `h` in enumeration order.
pub fn first_fh(field: &Field) -> QPoly {
    let h = family::enumerate_h(field, HVariant::Odd).expect("odd q")[0];
    family::f_h(field, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        let f = field(3);
        assert!(!first_fh(&f).is_zero(&f));
    }
}
