//! Exact arithmetic in `F_{p^{6s}}`, viewed as `F_{q^6}` with `q = p^s`.
//!
//! A [`Field`] is built once and then only read. Elements are plain `Copy`
//! handles ([`Elem`]) whose meaning depends on the context's representation:
//!
//! * **Zech** (default when `p^{6s} <= 2^24`): the raw value is the discrete
//!   logarithm to the fixed generator `g`, with `q^6 - 1` standing for zero.
//!   Multiplication adds logs, addition goes through the Zech table
//!   `1 + g^k = g^{Z(k)}`.
//! * **Poly**: the raw value packs the coefficient vector over `F_p` as a
//!   base-`p` integer (`c_0` least significant). Frobenius maps are applied
//!   through precomputed `F_p`-matrices.
//!
//! Either way every element has exactly one raw value, so `==` is exact.
//!
//! Enumeration order is fixed: `0, g^0, g^1, ..., g^{q^6-2}`.

use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Largest field handled with Zech tables unless overridden.
pub const DEFAULT_ZECH_LIMIT: u64 = 1 << 24;

/// Exponent bound on `p^{6s}`; keeps packed coefficient vectors inside `u64`.
const MAX_ORDER: u64 = 1 << 62;

const MAX_DEGREE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Zech,
    Poly,
}

/// A field element. Only meaningful together with the [`Field`] that made it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Elem(u64);

impl Elem {
    pub fn raw(self) -> u64 {
        self.0
    }
}

/// Divisors of 6, the only admissible subfield degrees over `F_q`.
pub const SUBFIELD_DEGREES: [u32; 4] = [1, 2, 3, 6];

fn check_subfield(m: u32) -> Result<()> {
    if SUBFIELD_DEGREES.contains(&m) {
        Ok(())
    } else {
        Err(Error::BadSubfield(m))
    }
}

pub struct Field {
    p: u64,
    s: u32,
    q: u64,
    order: u64,
    /// `q^6 - 1`, the order of the multiplicative group.
    group: u64,
    group_factors: Vec<u64>,
    arith: PolyArith,
    generator: u64,
    repr: Repr,
    zero: Elem,
    one: Elem,
    neg_one: Elem,
    /// `q^i mod (q^6 - 1)` for `i` in `0..6`.
    q_pows: [u64; 6],
    /// `p^e mod (q^6 - 1)` for `e` in `0..6s`.
    p_pows: Vec<u64>,
}

enum Repr {
    Zech(ZechTables),
    Poly,
}

struct ZechTables {
    /// log -> packed polynomial
    exp: Vec<u32>,
    /// packed polynomial -> log (`group` for zero)
    log: Vec<u32>,
    /// k -> log(1 + g^k), `group` when `1 + g^k = 0`
    zech: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("s", &self.s)
            .field("modulus", &self.arith.modulus)
            .field("representation", &self.representation())
            .finish()
    }
}

/// Context summary printed by the CLI for reproducibility.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FieldSummary {
    pub p: u64,
    pub s: u32,
    pub q: u64,
    pub order: u64,
    /// Coefficients `c_0..c_{6s-1}` of the monic modulus (leading 1 omitted).
    pub modulus: Vec<u64>,
    /// Coefficients of the generator `g` over `F_p`.
    pub generator: Vec<u64>,
    pub representation: Representation,
    pub fingerprint: String,
}

impl Field {
    /// Builds `F_{p^{6s}}` with the default Zech threshold.
    pub fn new(p: u64, s: u32) -> Result<Self> {
        Self::with_zech_limit(p, s, DEFAULT_ZECH_LIMIT)
    }

    /// Parses `"p^s"` (or a bare `"p"`) and builds the field.
    pub fn from_spec(text: &str) -> Result<Self> {
        let (p, s) = parse_spec(text)?;
        Self::new(p, s)
    }

    pub fn with_representation(p: u64, s: u32, repr: Representation) -> Result<Self> {
        let limit = match repr {
            Representation::Zech => u32::MAX as u64,
            Representation::Poly => 0,
        };
        let field = Self::with_zech_limit(p, s, limit)?;
        if field.representation() != repr {
            return Err(Error::TooLarge(format!(
                "{} elements do not fit Zech tables",
                field.order
            )));
        }
        Ok(field)
    }

    /// Builds the field, using Zech tables iff `p^{6s} <= zech_limit`.
    pub fn with_zech_limit(p: u64, s: u32, zech_limit: u64) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if s == 0 {
            return Err(Error::InvalidParameter("s must be positive".into()));
        }
        let degree = 6 * s as usize;
        if degree > MAX_DEGREE {
            return Err(Error::TooLarge(format!("extension degree {degree} > 64")));
        }
        let order = p
            .checked_pow(degree as u32)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or_else(|| Error::TooLarge(format!("{p}^{degree} exceeds 2^62")))?;
        let q = p.pow(s);
        let group = order - 1;
        let group_factors = factor_group_order(q);

        let modulus = find_modulus(p, degree).ok_or(Error::NoIrreducibleFound(degree as u32))?;
        let arith = PolyArith::new(p, modulus);
        let generator = (2..order)
            .find(|&cand| {
                group_factors
                    .iter()
                    .all(|&r| arith.pow(cand, group / r) != 1)
            })
            .ok_or(Error::NoIrreducibleFound(degree as u32))?;

        let q_pows = std::array::from_fn(|i| mod_pow(q, i as u64, group));
        let p_pows = (0..degree).map(|e| mod_pow(p, e as u64, group)).collect();

        let use_zech = order <= zech_limit && order <= u32::MAX as u64;
        let repr = if use_zech {
            Repr::Zech(ZechTables::build(&arith, generator, order))
        } else {
            Repr::Poly
        };
        let (zero, one, neg_one) = match &repr {
            Repr::Zech(t) => (
                Elem(group),
                Elem(0),
                Elem(t.log[arith.neg(1) as usize] as u64),
            ),
            Repr::Poly => (Elem(0), Elem(1), Elem(arith.neg(1))),
        };

        Ok(Field {
            p,
            s,
            q,
            order,
            group,
            group_factors,
            arith,
            generator,
            repr,
            zero,
            one,
            neg_one,
            q_pows,
            p_pows,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q^6`, the number of elements.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `q^6 - 1`.
    pub fn group_order(&self) -> u64 {
        self.group
    }

    /// Extension degree `6s` over the prime field.
    pub fn degree(&self) -> usize {
        self.arith.n
    }

    pub fn representation(&self) -> Representation {
        match self.repr {
            Repr::Zech(_) => Representation::Zech,
            Repr::Poly => Representation::Poly,
        }
    }

    pub fn modulus(&self) -> &[u64] {
        &self.arith.modulus
    }

    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    pub fn summary(&self) -> FieldSummary {
        let modulus = self.arith.modulus.clone();
        let generator = self.arith.unpack_vec(self.generator);
        let mut hasher = Sha256::new();
        hasher.update(format!(
            "{}^{}:{:?}:{:?}",
            self.p, self.s, modulus, generator
        ));
        let digest = hasher.finalize();
        let fingerprint = digest[..8].iter().map(|b| format!("{b:02x}")).collect();
        FieldSummary {
            p: self.p,
            s: self.s,
            q: self.q,
            order: self.order,
            modulus,
            generator,
            representation: self.representation(),
            fingerprint,
        }
    }

    // ----------------------------------------------------------------
    // constants and conversions

    #[inline]
    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn neg_one(&self) -> Elem {
        self.neg_one
    }

    #[inline]
    pub fn is_zero(&self, x: Elem) -> bool {
        x == self.zero
    }

    /// The fixed primitive element `g`.
    pub fn generator(&self) -> Elem {
        self.elem_from_packed(self.generator)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> Elem {
        let c = v.rem_euclid(self.p as i64) as u64;
        self.elem_from_packed(c)
    }

    /// `g^k`, with `k` reduced modulo `q^6 - 1`.
    pub fn gen_pow(&self, k: u64) -> Elem {
        let k = k % self.group;
        match &self.repr {
            Repr::Zech(_) => Elem(k),
            Repr::Poly => Elem(self.arith.pow(self.generator, k)),
        }
    }

    fn elem_from_packed(&self, packed: u64) -> Elem {
        match &self.repr {
            Repr::Zech(t) => Elem(t.log[packed as usize] as u64),
            Repr::Poly => Elem(packed),
        }
    }

    fn to_packed(&self, x: Elem) -> u64 {
        match &self.repr {
            Repr::Zech(t) => {
                if x.0 == self.group {
                    0
                } else {
                    t.exp[x.0 as usize] as u64
                }
            }
            Repr::Poly => x.0,
        }
    }

    /// Coefficient vector over `F_p` (length `6s`, constant term first).
    pub fn to_coeffs(&self, x: Elem) -> Vec<u64> {
        self.arith.unpack_vec(self.to_packed(x))
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem> {
        if coeffs.len() != self.arith.n || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::CtxMismatch);
        }
        Ok(self.elem_from_packed(self.arith.pack(coeffs)))
    }

    /// Moves an element into another context over the same `F_p`-polynomial
    /// basis (same `p`, `s` and modulus), e.g. between representations.
    pub fn convert_from(&self, other: &Field, x: Elem) -> Result<Elem> {
        if other.p != self.p || other.s != self.s || other.arith.modulus != self.arith.modulus {
            return Err(Error::CtxMismatch);
        }
        self.from_coeffs(&other.to_coeffs(x))
    }

    /// Dense index in `0..q^6`, unique per element. Zech: enumeration index.
    /// Poly: the packed coefficient value.
    #[inline]
    pub fn slot(&self, x: Elem) -> usize {
        match &self.repr {
            Repr::Zech(_) => {
                if x.0 == self.group {
                    0
                } else {
                    x.0 as usize + 1
                }
            }
            Repr::Poly => x.0 as usize,
        }
    }

    /// Position of `x` in the enumeration order `0, g^0, g^1, ...`.
    pub fn enum_index(&self, x: Elem) -> u64 {
        match self.log(x) {
            None => 0,
            Some(k) => k + 1,
        }
    }

    /// The `i`-th element in enumeration order.
    pub fn nth(&self, i: u64) -> Elem {
        if i == 0 {
            self.zero
        } else {
            self.gen_pow(i - 1)
        }
    }

    /// Discrete logarithm to base `g`; `None` for zero.
    pub fn log(&self, x: Elem) -> Option<u64> {
        if self.is_zero(x) {
            return None;
        }
        match &self.repr {
            Repr::Zech(_) => Some(x.0),
            Repr::Poly => Some(self.pohlig_hellman(x.0)),
        }
    }

    /// Renders `0` or `g^k`.
    pub fn format(&self, x: Elem) -> String {
        match self.log(x) {
            None => "0".to_string(),
            Some(k) => format!("g^{k}"),
        }
    }

    /// Parses `0` or `g^k` (`k` may exceed the group order; it is reduced).
    pub fn parse(&self, text: &str) -> Result<Elem> {
        let t = text.trim();
        if t == "0" {
            return Ok(self.zero);
        }
        let exp = t
            .strip_prefix("g^")
            .ok_or_else(|| Error::Parse(format!("expected \"0\" or \"g^k\", got {t:?}")))?;
        let k: u64 = exp
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in {t:?}")))?;
        Ok(self.gen_pow(k))
    }

    // ----------------------------------------------------------------
    // arithmetic

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        match &self.repr {
            Repr::Zech(t) => {
                let n = self.group;
                if x.0 == n {
                    return y;
                }
                if y.0 == n {
                    return x;
                }
                let (lo, hi) = if x.0 <= y.0 { (x.0, y.0) } else { (y.0, x.0) };
                let z = t.zech[(hi - lo) as usize] as u64;
                if z == n {
                    return self.zero;
                }
                let r = lo + z;
                Elem(if r >= n { r - n } else { r })
            }
            Repr::Poly => Elem(self.arith.add(x.0, y.0)),
        }
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        match &self.repr {
            Repr::Zech(_) => self.mul(x, self.neg_one),
            Repr::Poly => Elem(self.arith.neg(x.0)),
        }
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match &self.repr {
            Repr::Zech(_) => {
                let n = self.group;
                if x.0 == n || y.0 == n {
                    return self.zero;
                }
                let r = x.0 + y.0;
                Elem(if r >= n { r - n } else { r })
            }
            Repr::Poly => Elem(self.arith.mul(x.0, y.0)),
        }
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if self.is_zero(x) {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.repr {
            Repr::Zech(_) => Elem(if x.0 == 0 { 0 } else { self.group - x.0 }),
            Repr::Poly => Elem(self.arith.pow(x.0, self.group - 1)),
        })
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^e`; nonzero bases reduce `e` modulo `q^6 - 1`, and `0^0 = 1`.
    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if self.is_zero(x) {
            return if e == 0 { self.one } else { self.zero };
        }
        let e = e % self.group;
        match &self.repr {
            Repr::Zech(_) => Elem(mul_mod(x.0, e, self.group)),
            Repr::Poly => Elem(self.arith.pow(x.0, e)),
        }
    }

    /// `x^e` for a signed exponent; negative exponents need `x != 0`.
    pub fn powi(&self, x: Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            Ok(self.pow(x, e as u64))
        } else {
            Ok(self.pow(self.inv(x)?, e.unsigned_abs()))
        }
    }

    /// `x^{q^i}` for `i` taken modulo 6.
    #[inline]
    pub fn frobenius(&self, x: Elem, i: usize) -> Elem {
        let i = i % 6;
        if i == 0 {
            return x;
        }
        match &self.repr {
            Repr::Zech(_) => {
                if x.0 == self.group {
                    x
                } else {
                    Elem(mul_mod(x.0, self.q_pows[i], self.group))
                }
            }
            Repr::Poly => Elem(self.arith.frobenius(x.0, i * self.s as usize)),
        }
    }

    /// The field automorphism `x -> x^{p^e}`, `e` taken modulo `6s`.
    #[inline]
    pub fn automorphism(&self, x: Elem, e: usize) -> Elem {
        let e = e % self.arith.n;
        if e == 0 {
            return x;
        }
        match &self.repr {
            Repr::Zech(_) => {
                if x.0 == self.group {
                    x
                } else {
                    Elem(mul_mod(x.0, self.p_pows[e], self.group))
                }
            }
            Repr::Poly => Elem(self.arith.frobenius(x.0, e)),
        }
    }

    /// Product of the `6/m` conjugates `x^{q^{mj}}`; lands in `F_{q^m}`.
    pub fn norm(&self, x: Elem, m: u32) -> Result<Elem> {
        check_subfield(m)?;
        Ok((0..6 / m as usize).fold(self.one, |acc, j| {
            self.mul(acc, self.frobenius(x, j * m as usize))
        }))
    }

    /// Sum of the `6/m` conjugates `x^{q^{mj}}`; lands in `F_{q^m}`.
    pub fn trace(&self, x: Elem, m: u32) -> Result<Elem> {
        check_subfield(m)?;
        Ok((0..6 / m as usize).fold(self.zero, |acc, j| {
            self.add(acc, self.frobenius(x, j * m as usize))
        }))
    }

    /// `x ∈ F_{q^m}`, i.e. `x^{q^m} = x`.
    pub fn in_subfield(&self, x: Elem, m: u32) -> Result<bool> {
        check_subfield(m)?;
        Ok(self.frobenius(x, m as usize) == x)
    }

    /// Generator of `F_{q^m}^*`: `g^{(q^6-1)/(q^m-1)}`.
    pub fn subfield_generator(&self, m: u32) -> Result<Elem> {
        check_subfield(m)?;
        Ok(self.gen_pow(self.group / (self.q.pow(m) - 1)))
    }

    /// The `q^m` elements of `F_{q^m}`: zero, then powers of the subfield generator.
    pub fn enumerate(&self, m: u32) -> Result<SubfieldIter<'_>> {
        check_subfield(m)?;
        let step = self.subfield_generator(m)?;
        Ok(SubfieldIter {
            field: self,
            step,
            current: None,
            remaining: self.q.pow(m),
        })
    }

    /// Elements with enumeration index in `lo..hi`, produced incrementally.
    pub fn iter_range(&self, lo: u64, hi: u64) -> RangeIter<'_> {
        let hi = hi.min(self.order);
        let lo = lo.min(hi);
        RangeIter {
            field: self,
            next_index: lo,
            end: hi,
            current: if lo == 0 { None } else { Some(self.nth(lo)) },
        }
    }

    /// Whole field in enumeration order.
    pub fn elements(&self) -> RangeIter<'_> {
        self.iter_range(0, self.order)
    }

    /// Prime factors of `q^6 - 1`.
    pub fn group_factors(&self) -> &[u64] {
        &self.group_factors
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: Elem) -> Result<u64> {
        if self.is_zero(x) {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.group;
        for &r in &self.group_factors {
            while ord.is_multiple_of(r) && self.pow(x, ord / r) == self.one {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Any element `y` with `y^2 = x`, or `None` if `x` is a non-square.
    pub fn sqrt(&self, x: Elem) -> Option<Elem> {
        if self.is_zero(x) {
            return Some(x);
        }
        if self.p == 2 {
            return Some(self.pow(x, self.order / 2));
        }
        let k = self.log(x)?;
        if k % 2 == 1 {
            return None;
        }
        Some(self.gen_pow(k / 2))
    }

    fn pohlig_hellman(&self, target: u64) -> u64 {
        let n = self.group;
        let mut residues = Vec::new();
        for &r in &self.group_factors {
            let mut re = 1u64;
            while n.is_multiple_of(re * r) {
                re *= r;
            }
            let cofactor = n / re;
            let g_r = self.arith.pow(self.generator, cofactor);
            let h_r = self.arith.pow(target, cofactor);
            // solve g_r^x = h_r with x < re, digit by digit in base r
            let gamma = self.arith.pow(g_r, re / r);
            let mut x = 0u64;
            let mut rk = 1u64;
            while rk < re {
                let inv_gx = self.arith.pow(g_r, (re - x % re) % re);
                let hk = self.arith.pow(self.arith.mul(inv_gx, h_r), re / rk / r);
                let d = bsgs(&self.arith, gamma, hk, r);
                x += d * rk;
                rk *= r;
            }
            residues.push((x, re));
        }
        crt(&residues)
    }
}

fn bsgs(arith: &PolyArith, base: u64, target: u64, order: u64) -> u64 {
    use std::collections::HashMap;
    let m = (order as f64).sqrt().ceil() as u64 + 1;
    let mut table = HashMap::with_capacity(m as usize);
    let mut cur = 1u64;
    for j in 0..m {
        table.entry(cur).or_insert(j);
        cur = arith.mul(cur, base);
    }
    let factor = arith.pow(base, (order - m % order) % order);
    let mut gamma = target;
    for i in 0..m {
        if let Some(&j) = table.get(&gamma) {
            return (i * m + j) % order;
        }
        gamma = arith.mul(gamma, factor);
    }
    unreachable!("element outside the subgroup generated by base")
}

fn crt(residues: &[(u64, u64)]) -> u64 {
    let mut x: u128 = 0;
    let mut m: u128 = 1;
    for &(r, modulus) in residues {
        let modulus = modulus as u128;
        // x + m*t ≡ r (mod modulus)
        let inv = mod_inverse((m % modulus) as u64, modulus as u64) as u128;
        let diff = ((r as u128 + modulus) - x % modulus) % modulus;
        let t = diff * inv % modulus;
        x += m * t;
        m *= modulus;
    }
    x as u64
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    old_s.rem_euclid(m as i128) as u64
}

pub struct SubfieldIter<'a> {
    field: &'a Field,
    step: Elem,
    current: Option<Elem>,
    remaining: u64,
}

impl Iterator for SubfieldIter<'_> {
    type Item = Elem;

    fn next(&mut self) -> Option<Elem> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = match self.current {
            None => {
                self.current = Some(self.field.one);
                self.field.zero
            }
            Some(c) => {
                self.current = Some(self.field.mul(c, self.step));
                c
            }
        };
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}

pub struct RangeIter<'a> {
    field: &'a Field,
    next_index: u64,
    end: u64,
    current: Option<Elem>,
}

impl Iterator for RangeIter<'_> {
    type Item = Elem;

    fn next(&mut self) -> Option<Elem> {
        if self.next_index >= self.end {
            return None;
        }
        let f = self.field;
        let out = match self.current {
            None => {
                self.current = Some(f.one);
                f.zero
            }
            Some(c) => {
                self.current = Some(match &f.repr {
                    Repr::Zech(_) => Elem(if c.0 + 1 == f.group { 0 } else { c.0 + 1 }),
                    Repr::Poly => Elem(f.arith.mul(c.0, f.generator)),
                });
                c
            }
        };
        self.next_index += 1;
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next_index) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for RangeIter<'_> {}

impl ZechTables {
    fn build(arith: &PolyArith, generator: u64, order: u64) -> Self {
        let group = order - 1;
        let mut exp = vec![0u32; group as usize];
        let mut log = vec![0u32; order as usize];
        log[0] = group as u32;
        let mut cur = 1u64;
        for k in 0..group {
            exp[k as usize] = cur as u32;
            log[cur as usize] = k as u32;
            cur = arith.mul(cur, generator);
        }
        debug_assert_eq!(cur, 1);
        let zech = exp
            .iter()
            .map(|&packed| log[arith.add(packed as u64, 1) as usize])
            .collect();
        ZechTables { exp, log, zech }
    }
}

// --------------------------------------------------------------------
// packed polynomial arithmetic modulo the defining polynomial

struct PolyArith {
    p: u64,
    n: usize,
    /// `c_0..c_{n-1}` of the monic modulus.
    modulus: Vec<u64>,
    place: Vec<u64>,
    /// `frob[e]` is the row-major `n x n` matrix of `x -> x^{p^e}`.
    frob: Vec<Vec<u64>>,
}

type Digits = [u64; MAX_DEGREE];

impl PolyArith {
    fn new(p: u64, modulus: Vec<u64>) -> Self {
        let n = modulus.len();
        let place = (0..n).map(|i| p.pow(i as u32)).collect();
        let mut arith = PolyArith {
            p,
            n,
            modulus,
            place,
            frob: Vec::new(),
        };
        arith.frob = arith.frobenius_matrices();
        arith
    }

    fn frobenius_matrices(&self) -> Vec<Vec<u64>> {
        let n = self.n;
        let p = self.p;
        let x = if n > 1 { p } else { 0 };
        let xp = self.pow(x, p);
        // column j is (x^p)^j
        let mut base = vec![0u64; n * n];
        let mut col = 1u64;
        for j in 0..n {
            let d = self.unpack_vec(col);
            for i in 0..n {
                base[i * n + j] = d[i];
            }
            col = self.mul(col, xp);
        }
        let mut identity = vec![0u64; n * n];
        for i in 0..n {
            identity[i * n + i] = 1;
        }
        let mut mats = vec![identity];
        for e in 1..n {
            let prev = &mats[e - 1];
            let mut next = vec![0u64; n * n];
            for i in 0..n {
                for k in 0..n {
                    let a = base[i * n + k];
                    if a == 0 {
                        continue;
                    }
                    for j in 0..n {
                        next[i * n + j] = (next[i * n + j] + a * prev[k * n + j]) % p;
                    }
                }
            }
            mats.push(next);
        }
        mats
    }

    #[inline]
    fn unpack(&self, mut v: u64, out: &mut Digits) {
        for d in out.iter_mut().take(self.n) {
            *d = v % self.p;
            v /= self.p;
        }
    }

    fn unpack_vec(&self, v: u64) -> Vec<u64> {
        let mut d = [0u64; MAX_DEGREE];
        self.unpack(v, &mut d);
        d[..self.n].to_vec()
    }

    #[inline]
    fn pack(&self, d: &[u64]) -> u64 {
        d.iter().zip(&self.place).map(|(&c, &w)| c * w).sum()
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let mut da = [0u64; MAX_DEGREE];
        let mut db = [0u64; MAX_DEGREE];
        self.unpack(a, &mut da);
        self.unpack(b, &mut db);
        for i in 0..self.n {
            da[i] = (da[i] + db[i]) % self.p;
        }
        self.pack(&da[..self.n])
    }

    fn neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let mut da = [0u64; MAX_DEGREE];
        self.unpack(a, &mut da);
        for d in da.iter_mut().take(self.n) {
            *d = (self.p - *d) % self.p;
        }
        self.pack(&da[..self.n])
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let n = self.n;
        let p = self.p;
        let mut da = [0u64; MAX_DEGREE];
        let mut db = [0u64; MAX_DEGREE];
        self.unpack(a, &mut da);
        self.unpack(b, &mut db);
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for k in (n..2 * n - 1).rev() {
            let c = prod[k] % p;
            if c == 0 {
                continue;
            }
            let neg_c = p - c;
            for i in 0..n {
                prod[k - n + i] = (prod[k - n + i] + neg_c * self.modulus[i]) % p;
            }
        }
        self.pack(&prod[..n])
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn frobenius(&self, a: u64, e: usize) -> u64 {
        let n = self.n;
        let mat = &self.frob[e % n];
        let mut d = [0u64; MAX_DEGREE];
        self.unpack(a, &mut d);
        let mut out = [0u64; MAX_DEGREE];
        for i in 0..n {
            let row = &mat[i * n..(i + 1) * n];
            let mut acc = 0u64;
            for j in 0..n {
                acc = (acc + row[j] * d[j]) % self.p;
            }
            out[i] = acc;
        }
        self.pack(&out[..n])
    }
}

// --------------------------------------------------------------------
// integer helpers

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow(base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn trial_factor(mut n: u64, out: &mut Vec<u64>) {
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
}

/// Prime factors of `q^6 - 1 = (q-1)(q+1)(q^2+q+1)(q^2-q+1)`; each factor is
/// below `2^22`, so trial division is enough.
fn factor_group_order(q: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    for part in [q - 1, q + 1, q * q + q + 1, q * q - q + 1] {
        trial_factor(part, &mut primes);
    }
    primes.sort_unstable();
    primes.dedup();
    primes
}

// --------------------------------------------------------------------
// modulus search over F_p[x]

/// First monic irreducible polynomial of the given degree, scanning the
/// coefficient vectors `(c_0, ..., c_{n-1})` as base-`p` counters with `c_0`
/// least significant. Returns `c_0..c_{n-1}`.
fn find_modulus(p: u64, n: usize) -> Option<Vec<u64>> {
    let total = p.checked_pow(n as u32)?;
    (0..total).find_map(|k| {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut v = k;
        for _ in 0..n {
            coeffs.push(v % p);
            v /= p;
        }
        coeffs.push(1);
        is_irreducible(&coeffs, p).then(|| coeffs[..n].to_vec())
    })
}

/// Rabin's test: `f | x^{p^n} - x` and `gcd(x^{p^{n/r}} - x, f) = 1` for every
/// prime `r | n`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = vec![0, 1];
    let mut primes = Vec::new();
    trial_factor(n as u64, &mut primes);
    // x^{p^k} mod f for k = 0..=n
    let mut powers = Vec::with_capacity(n + 1);
    let mut cur = x.clone();
    powers.push(cur.clone());
    for _ in 0..n {
        cur = fp::pow_mod(&cur, p, f, p);
        powers.push(cur.clone());
    }
    if !fp::trim(fp::sub(&powers[n], &x, p)).is_empty() {
        return false;
    }
    primes.iter().all(|&r| {
        let h = fp::trim(fp::sub(&powers[n / r as usize], &x, p));
        let g = fp::gcd(h, f.to_vec(), p);
        g.len() == 1
    })
}

mod fp {
    //! Dense polynomials over `F_p`, little-endian, trimmed.

    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let len = a.len().max(b.len());
        (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect()
    }

    fn inv(a: u64, p: u64) -> u64 {
        super::mod_pow(a, p - 2, p)
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let m = trim(m.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % p;
            if c != 0 {
                for i in 0..=dm {
                    let idx = top - dm + i;
                    r[idx] = (r[idx] + (p - c) * m[i]) % p;
                }
            }
            r = trim(r);
            if r.len() > top {
                r.truncate(top);
            }
        }
        r
    }

    pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, m, p)
    }

    pub fn pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
        a = trim(a);
        b = trim(b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

/// `"p^s"` to `(p, s)`; a missing exponent means `s = 1`.
pub fn parse_spec(text: &str) -> Result<(u64, u32)> {
    let bad = || Error::Parse(format!("field spec must look like p^s, got {text:?}"));
    let (p, s) = match text.trim().split_once('^') {
        Some((p, s)) => (p.trim(), s.trim()),
        None => (text.trim(), "1"),
    };
    Ok((p.parse().map_err(|_| bad())?, s.parse().map_err(|_| bad())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn sizes() {
        assert_eq!(Field::new(3, 1).unwrap().order(), 729);
        assert_eq!(Field::new(5, 1).unwrap().order(), 15625);
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.order(), 4096);
        assert_eq!(f4.q(), 4);
    }

    #[test]
    fn field_spec_strings() {
        assert_eq!(parse_spec("5^1").unwrap(), (5, 1));
        assert_eq!(parse_spec("2^2").unwrap(), (2, 2));
        assert_eq!(parse_spec("7").unwrap(), (7, 1));
        assert!(parse_spec("x^1").is_err());
        assert!(parse_spec("3^").is_err());
        assert_eq!(Field::from_spec("2^2").unwrap().q(), 4);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(Field::new(2, 11), Err(Error::TooLarge(_))));
        assert!(matches!(Field::new(3, 7), Err(Error::TooLarge(_))));
    }

    #[test]
    fn modulus_is_first_irreducible() {
        // every earlier candidate in scan order must be reducible
        let f = Field::new(3, 1).unwrap();
        let m = f.modulus().to_vec();
        let mut full = m.clone();
        full.push(1);
        assert!(is_irreducible(&full, 3));
        let rank = m.iter().rev().fold(0u64, |acc, &c| acc * 3 + c);
        for k in 0..rank {
            let mut c: Vec<u64> = (0..6).map(|i| k / 3u64.pow(i) % 3).collect();
            c.push(1);
            assert!(!is_irreducible(&c, 3), "candidate {k} is irreducible");
        }
    }

    #[test]
    fn generator_is_primitive() {
        for (p, s) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = Field::new(p, s).unwrap();
            assert_eq!(
                f.multiplicative_order(f.generator()).unwrap(),
                f.group_order()
            );
            assert_eq!(f.pow(f.generator(), f.group_order()), f.one());
        }
    }

    #[test]
    fn inverse_and_lagrange() {
        let f = Field::new(3, 1).unwrap();
        for x in f.elements().skip(1) {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
        }
        assert_eq!(f.inv(f.zero()), Err(Error::DivisionByZero));
        assert_eq!(f.div(f.one(), f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn prime_field_square_of_two() {
        let f = Field::new(5, 1).unwrap();
        let h = f.from_int(2);
        assert_eq!(f.mul(h, h), f.from_int(4));
        assert_eq!(f.mul(h, h), f.neg_one());
        assert!(f.in_subfield(h, 1).unwrap());
    }

    #[test]
    fn frobenius_basics() {
        let f = Field::new(3, 1).unwrap();
        for x in f.elements() {
            assert_eq!(f.frobenius(x, 0), x);
            assert_eq!(f.frobenius(f.frobenius(x, 3), 3), x);
            assert_eq!(f.frobenius(x, 6), x);
            assert_eq!(f.pow(x, 729), x);
        }
    }

    #[test]
    fn norm_and_trace_subfields() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.norm(f.one(), 1).unwrap(), f.one());
        for x in f.elements() {
            let n3 = f.norm(x, 3).unwrap();
            assert_eq!(n3, f.pow(x, 27 + 1));
            for m in SUBFIELD_DEGREES {
                assert!(f.in_subfield(f.norm(x, m).unwrap(), m).unwrap());
                assert!(f.in_subfield(f.trace(x, m).unwrap(), m).unwrap());
            }
        }
        assert_eq!(f.norm(f.one(), 4), Err(Error::BadSubfield(4)));
        assert_eq!(f.trace(f.one(), 5), Err(Error::BadSubfield(5)));
        assert!(f.enumerate(0).is_err());
    }

    #[test]
    fn subfield_enumeration() {
        let f = Field::new(3, 1).unwrap();
        let prime: Vec<_> = f.enumerate(1).unwrap().collect();
        assert_eq!(prime.len(), 3);
        let f5 = Field::new(5, 1).unwrap();
        let all: HashSet<_> = f5.enumerate(6).unwrap().collect();
        assert_eq!(all.len(), 15625);
        for m in SUBFIELD_DEGREES {
            let elems: Vec<_> = f5.enumerate(m).unwrap().collect();
            assert_eq!(elems.len() as u64, 5u64.pow(m));
            assert!(elems.iter().all(|&x| f5.in_subfield(x, m).unwrap()));
            assert_eq!(elems[0], f5.zero());
        }
    }

    #[test]
    fn enumeration_order() {
        let f = Field::new(2, 1).unwrap();
        let elems: Vec<_> = f.elements().collect();
        assert_eq!(elems[0], f.zero());
        for (k, &x) in elems.iter().enumerate().skip(1) {
            assert_eq!(x, f.gen_pow(k as u64 - 1));
            assert_eq!(f.enum_index(x), k as u64);
            assert_eq!(f.nth(k as u64), x);
        }
        let tail: Vec<_> = f.iter_range(10, 20).collect();
        assert_eq!(tail, elems[10..20].to_vec());
    }

    #[test]
    fn format_and_parse() {
        let f = Field::new(3, 1).unwrap();
        for x in f.elements() {
            assert_eq!(f.parse(&f.format(x)).unwrap(), x);
        }
        assert_eq!(f.parse("g^728").unwrap(), f.one());
        assert!(f.parse("x^2").is_err());
        assert!(f.parse("g^-1").is_err());
    }

    #[test]
    fn poly_mode_logs_roundtrip() {
        let f = Field::with_representation(3, 1, Representation::Poly).unwrap();
        for k in [0u64, 1, 5, 100, 727] {
            let x = f.gen_pow(k);
            assert_eq!(f.log(x), Some(k));
        }
        assert_eq!(f.log(f.zero()), None);
    }

    #[test]
    fn zech_and_poly_share_basis() {
        let z = Field::with_representation(2, 1, Representation::Zech).unwrap();
        let p = Field::with_representation(2, 1, Representation::Poly).unwrap();
        assert_eq!(z.summary().fingerprint, p.summary().fingerprint);
        for x in z.elements() {
            let y = p.convert_from(&z, x).unwrap();
            assert_eq!(z.convert_from(&p, y).unwrap(), x);
        }
        let other = Field::new(3, 1).unwrap();
        assert_eq!(z.convert_from(&other, other.one()), Err(Error::CtxMismatch));
    }

    #[test]
    fn sqrt_works() {
        let f = Field::new(3, 1).unwrap();
        let minus_four = f.from_int(-4);
        let r = f.sqrt(minus_four).unwrap();
        assert_eq!(f.mul(r, r), minus_four);
    }
}
