//! Arithmetic in binary extension fields F_{2^n} for 2 <= n <= 64.
//!
//! Elements are polynomials over F_2 reduced modulo a fixed irreducible
//! modulus of degree n, packed into a `u64` with bit `i` holding the
//! coefficient of X^i. The modulus is always the lexicographically smallest
//! irreducible polynomial of its degree (under the integer encoding of the
//! coefficient bits), so independent runs and independent implementations
//! agree on the field model.
//!
//! The inverse of zero is defined to be zero, matching the multiplicative
//! inverse map used everywhere in this crate.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::{Error, Result};

/// Smallest supported extension degree.
pub const MIN_DEGREE: u32 = 2;
/// Largest supported extension degree (elements must fit in one `u64`).
pub const MAX_DEGREE: u32 = 64;

/// An element of F_{2^n}: bit `i` is the coefficient of X^i.
///
/// The field itself is carried separately by a [`FieldSpec`]; mixing elements
/// of different fields is the caller's responsibility at this level and is
/// checked at the module boundaries that accept untrusted input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn new(bits: u64) -> FieldElement {
        FieldElement(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Lowercase hex of the bit encoding, no leading zeros. This encoding is
    /// normative for certificates.
    pub fn to_hex(self) -> String {
        format!("{:x}", self.0)
    }

    pub fn from_hex(s: &str) -> Result<FieldElement> {
        u64::from_str_radix(s, 16)
            .map(FieldElement)
            .map_err(|_| Error::InvalidHex)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

/// Addition in characteristic 2 is coefficientwise XOR and needs no modulus.
impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

/// A concrete model of F_{2^n}: the degree together with the canonical
/// irreducible modulus (bit `i` = coefficient of X^i, bits 0 and n set).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    n: u32,
    modulus: u128,
}

impl FieldSpec {
    /// Field with the canonical (lexicographically smallest irreducible)
    /// modulus of degree `n`. Deterministic: two invocations yield
    /// bit-identical moduli.
    pub fn new(n: u32) -> Result<FieldSpec> {
        let modulus = find_irreducible(n)?;
        Ok(FieldSpec { n, modulus })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    pub fn modulus_hex(&self) -> String {
        format!("{:x}", self.modulus)
    }

    /// Mask selecting the n low bits that an element may occupy.
    pub(crate) fn mask(&self) -> u64 {
        u64::MAX >> (64 - self.n)
    }

    /// Number of field elements as u128 (2^n).
    pub fn order(&self) -> u128 {
        1u128 << self.n
    }

    pub fn element(&self, bits: u64) -> FieldElement {
        assert!(
            bits <= self.mask(),
            "element 0x{:x} out of range for degree {}",
            bits,
            self.n
        );
        FieldElement(bits)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub(crate) fn contains_bits(&self, bits: u64) -> bool {
        bits <= self.mask()
    }

    /// Reduction of a product of two reduced elements (degree <= 2n - 2):
    /// X^n = tail (mod modulus), so the high part folds down through one
    /// carryless multiply per round; sparse moduli need two rounds.
    fn reduce(&self, mut p: u128) -> u64 {
        let n = self.n;
        let low_mask = (1u128 << n) - 1;
        let tail = (self.modulus ^ (1u128 << n)) as u64;
        while p >> n != 0 {
            let hi = (p >> n) as u64;
            p = (p & low_mask) ^ clmul64(hi, tail);
        }
        p as u64
    }

    /// Product reduced modulo the field modulus.
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.reduce(clmul64(a.0, b.0)))
    }

    /// Squaring, the Frobenius map x -> x^2.
    pub fn sqr(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.reduce(clmul64(a.0, a.0)))
    }

    /// j-fold Frobenius, x -> x^(2^j). `frob(a, n) == a`.
    pub fn frob(&self, a: FieldElement, j: u32) -> FieldElement {
        let mut x = a;
        for _ in 0..(j % self.n) {
            x = self.sqr(x);
        }
        x
    }

    /// Multiplicative inverse, with `inv(0) = 0`.
    ///
    /// Uses the extended Euclidean algorithm on the polynomial encodings;
    /// `pow` with exponent 2^n - 2 is kept around in tests as an independent
    /// cross-check.
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let mut u: u128 = a.0 as u128;
        let mut v: u128 = self.modulus;
        let mut g1: u128 = 1;
        let mut g2: u128 = 0;
        while u != 1 {
            let mut j = deg128(u) as i32 - deg128(v) as i32;
            if j < 0 {
                std::mem::swap(&mut u, &mut v);
                std::mem::swap(&mut g1, &mut g2);
                j = -j;
            }
            u ^= v << j;
            g1 ^= g2 << j;
        }
        FieldElement(self.reduce(g1))
    }

    /// a^e by square-and-multiply.
    pub fn pow(&self, a: FieldElement, mut e: u128) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.sqr(base);
            e >>= 1;
        }
        acc
    }

    /// x^(2^l - 1), used when projecting onto multiplicative cosets of a
    /// subfield F_{2^l}.
    pub fn pow_2l_minus_1(&self, a: FieldElement, l: u32) -> FieldElement {
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        self.mul(self.frob(a, l % self.n), self.inv(a))
    }
}

/// Carryless (polynomial) product of two 64-bit operands. Uses the
/// PCLMULQDQ instruction when the CPU has it, with a portable shift-xor
/// fallback.
fn clmul64(a: u64, b: u64) -> u128 {
    #[cfg(target_arch = "x86_64")]
    {
        static HAS_CLMUL: OnceLock<bool> = OnceLock::new();
        if *HAS_CLMUL.get_or_init(|| {
            std::arch::is_x86_feature_detected!("pclmulqdq")
                && std::arch::is_x86_feature_detected!("sse4.1")
        }) {
            return unsafe { clmul64_hw(a, b) };
        }
    }
    clmul64_soft(a, b)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq", enable = "sse4.1")]
unsafe fn clmul64_hw(a: u64, b: u64) -> u128 {
    use std::arch::x86_64::*;
    let x = _mm_set_epi64x(0, a as i64);
    let y = _mm_set_epi64x(0, b as i64);
    let r = _mm_clmulepi64_si128::<0>(x, y);
    let lo = _mm_extract_epi64::<0>(r) as u64;
    let hi = _mm_extract_epi64::<1>(r) as u64;
    ((hi as u128) << 64) | lo as u128
}

fn clmul64_soft(a: u64, b: u64) -> u128 {
    let mut acc: u128 = 0;
    let mut a = a;
    let wide = b as u128;
    while a != 0 {
        let i = a.trailing_zeros();
        acc ^= wide << i;
        a &= a - 1;
    }
    acc
}

fn deg128(p: u128) -> i32 {
    127 - p.leading_zeros() as i32
}

fn polymod128(mut p: u128, m: u128) -> u128 {
    let dm = deg128(m);
    while deg128(p) >= dm {
        p ^= m << (deg128(p) - dm);
    }
    p
}

fn polygcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = polymod128(a, b);
        a = b;
        b = r;
    }
    a
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin irreducibility test for a degree-n polynomial over F_2:
/// X^(2^n) = X mod f, and gcd(X^(2^(n/p)) - X, f) = 1 for every prime p | n.
fn is_irreducible(f: u128, n: u32) -> bool {
    let checkpoints: Vec<u32> = prime_divisors(n).iter().map(|p| n / p).collect();
    let mut x: u64 = 2; // the polynomial X
    for j in 1..=n {
        x = polymod128(clmul64(x, x), f) as u64;
        if checkpoints.contains(&j) && polygcd128(x as u128 ^ 2, f) != 1 {
            return false;
        }
    }
    x == 2
}

/// The lexicographically smallest irreducible polynomial of degree n over
/// F_2, encoded with bit i as the coefficient of X^i.
pub fn find_irreducible(n: u32) -> Result<u128> {
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
        return Err(Error::DegreeOutOfRange(n));
    }
    static CACHE: OnceLock<Mutex<BTreeMap<u32, u128>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(&m) = cache.lock().unwrap().get(&n) {
        return Ok(m);
    }
    let base = 1u128 << n;
    let mut low = 1u128;
    let modulus = loop {
        // A zero constant term means X divides the candidate.
        let cand = base | low;
        if is_irreducible(cand, n) {
            break cand;
        }
        low += 2;
        assert!(low < base, "no irreducible of degree {} found", n);
    };
    cache.lock().unwrap().insert(n, modulus);
    Ok(modulus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f16() -> FieldSpec {
        FieldSpec::new(4).unwrap()
    }

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(find_irreducible(2).unwrap(), 0b111);
        assert_eq!(find_irreducible(4).unwrap(), 0b10011);
        assert_eq!(find_irreducible(5).unwrap(), 0b100101);
    }

    #[test]
    fn find_irreducible_is_deterministic() {
        for n in [2, 3, 8, 16, 31, 49, 64] {
            assert_eq!(find_irreducible(n).unwrap(), find_irreducible(n).unwrap());
        }
    }

    #[test]
    fn degree_bounds_rejected() {
        assert!(matches!(find_irreducible(1), Err(Error::DegreeOutOfRange(1))));
        assert!(matches!(find_irreducible(65), Err(Error::DegreeOutOfRange(65))));
    }

    #[test]
    fn moduli_are_irreducible_for_all_degrees() {
        // gcd(X^(2^d) + X, f) = 1 for proper divisors d, X^(2^n) = X mod f.
        for n in MIN_DEGREE..=MAX_DEGREE {
            let f = find_irreducible(n).unwrap();
            assert_eq!(f >> n, 1, "top bit set for n={}", n);
            assert_eq!(f & 1, 1, "constant term set for n={}", n);
            assert!(is_irreducible(f, n), "n={}", n);
        }
    }

    #[test]
    fn addition_is_xor() {
        let f = f16();
        let a = f.element(0x3);
        let b = f.element(0x5);
        assert_eq!(a + b, f.element(0x6));
        assert_eq!(a + a, FieldElement::ZERO);
        assert_eq!(a + FieldElement::ZERO, a);
    }

    #[test]
    fn multiplication_examples() {
        let f = f16();
        // X * (X^3 + 1) = X^4 + X = (X + 1) + X = 1 modulo X^4 + X + 1.
        assert_eq!(f.mul(f.element(0x2), f.element(0x9)), FieldElement::ONE);
        let a = f.element(0xb);
        assert_eq!(f.mul(a, FieldElement::ONE), a);
        assert_eq!(f.mul(a, FieldElement::ZERO), FieldElement::ZERO);
    }

    #[test]
    fn multiplication_ring_axioms() {
        let f = FieldSpec::new(6).unwrap();
        let mut rng = crate::rng::Rng::new(9);
        for _ in 0..200 {
            let a = rng.element(&f);
            let b = rng.element(&f);
            let c = rng.element(&f);
            assert_eq!(f.mul(a, b), f.mul(b, a));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
        }
    }

    #[test]
    fn inverse_convention_and_examples() {
        let f = f16();
        assert_eq!(f.inv(FieldElement::ZERO), FieldElement::ZERO);
        assert_eq!(f.inv(FieldElement::ONE), FieldElement::ONE);
        assert_eq!(f.inv(f.element(0x2)), f.element(0x9));
    }

    #[test]
    fn inverse_exhaustive_small_field() {
        let f = FieldSpec::new(8).unwrap();
        for bits in 1..256u64 {
            let a = f.element(bits);
            let ai = f.inv(a);
            assert_eq!(f.mul(a, ai), FieldElement::ONE, "a=0x{:x}", bits);
            assert_eq!(f.inv(ai), a);
        }
        assert_eq!(f.inv(f.inv(FieldElement::ZERO)), FieldElement::ZERO);
    }

    #[test]
    fn inverse_matches_fermat_power() {
        for n in [7u32, 13, 33, 49, 64] {
            let f = FieldSpec::new(n).unwrap();
            let mut rng = crate::rng::Rng::new(n as u64);
            let e = (1u128 << n) - 2;
            for _ in 0..50 {
                let a = rng.nonzero_element(&f);
                assert_eq!(f.inv(a), f.pow(a, e));
            }
        }
    }

    #[test]
    fn frobenius_examples_and_linearity() {
        let f = f16();
        assert_eq!(f.frob(f.element(0x2), 1), f.element(0x4));
        let mut rng = crate::rng::Rng::new(3);
        for n in [4u32, 11, 64] {
            let f = FieldSpec::new(n).unwrap();
            for _ in 0..50 {
                let a = rng.element(&f);
                let b = rng.element(&f);
                assert_eq!(f.frob(a, 0), a);
                assert_eq!(f.frob(a, n), a);
                assert_eq!(f.frob(a, 1), f.mul(a, a));
                assert_eq!(f.frob(a + b, 1), f.frob(a, 1) + f.frob(b, 1));
            }
        }
    }

    #[test]
    fn pow_2l_minus_1_lands_in_subfield_cosets() {
        // (x^(2^l-1))^( (2^n-1)/(2^l-1) ... ) sanity via order: value^((2^n-1)) = 1.
        let f = FieldSpec::new(6).unwrap();
        let mut rng = crate::rng::Rng::new(4);
        for _ in 0..50 {
            let a = rng.nonzero_element(&f);
            let y = f.pow_2l_minus_1(a, 2);
            assert_eq!(f.mul(y, f.mul(a, f.inv(f.frob(a, 2)))), FieldElement::ONE);
        }
    }

    #[test]
    fn hex_round_trip() {
        let e = FieldElement::new(0x1a2b);
        assert_eq!(e.to_hex(), "1a2b");
        assert_eq!(FieldElement::from_hex("1a2b").unwrap(), e);
        assert_eq!(FieldElement::ZERO.to_hex(), "0");
        assert!(FieldElement::from_hex("xyz").is_err());
    }
}
