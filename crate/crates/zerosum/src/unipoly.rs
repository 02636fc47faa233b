//! Univariate polynomials over F_{2^n} and seeded root finding.
//!
//! Coefficients are stored by ascending degree with trailing zeros trimmed.
//! Root finding computes gcd(g, X^(2^n) + X) by n modular squarings of X,
//! which isolates the product of the distinct linear factors over the base
//! field, and then splits it with randomized trace polynomials. The
//! randomness comes from an explicit seed, so the (sorted) root set is
//! reproducible.

use crate::gf2n::{FieldElement, FieldSpec};
use crate::rng::Rng;
use crate::{Error, Result};

/// Default cap on the degree accepted by [`find_roots`].
pub const DEFAULT_ROOT_DEGREE_CAP: usize = 4096;

/// A polynomial over one field; `coeffs[i]` is the coefficient of X^i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    spec: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(spec: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { spec: *spec, coeffs }
    }

    pub fn zero(spec: &FieldSpec) -> Poly {
        Poly { spec: *spec, coeffs: Vec::new() }
    }

    pub fn one(spec: &FieldSpec) -> Poly {
        Poly { spec: *spec, coeffs: vec![FieldElement::ONE] }
    }

    pub fn constant(spec: &FieldSpec, c: FieldElement) -> Poly {
        Poly::new(spec, vec![c])
    }

    /// The monomial X.
    pub fn x(spec: &FieldSpec) -> Poly {
        Poly { spec: *spec, coeffs: vec![FieldElement::ZERO, FieldElement::ONE] }
    }

    /// X + a (a linear factor with root a).
    pub fn x_plus(spec: &FieldSpec, a: FieldElement) -> Poly {
        Poly { spec: *spec, coeffs: vec![a, FieldElement::ONE] }
    }

    /// X^(2^l - 1) + c, used to extract (2^l - 1)-th roots.
    pub fn xpow_plus(spec: &FieldSpec, e: usize, c: FieldElement) -> Poly {
        let mut coeffs = vec![FieldElement::ZERO; e + 1];
        coeffs[0] = c;
        coeffs[e] = FieldElement::ONE;
        Poly::new(spec, coeffs)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        *self.coeffs.last().unwrap_or(&FieldElement::ZERO)
    }

    fn check_spec(&self, other: &Poly) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_spec(other)?;
        let mut coeffs = vec![FieldElement::ZERO; self.coeffs.len().max(other.coeffs.len())];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Ok(Poly::new(&self.spec, coeffs))
    }

    /// Schoolbook product; degree adds (or the result is zero).
    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_spec(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.spec));
        }
        let mut coeffs = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += self.spec.mul(a, b);
            }
        }
        Ok(Poly::new(&self.spec, coeffs))
    }

    /// Quotient and remainder: self = q * b + r with deg r < deg b.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.check_spec(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let db = b.degree().unwrap();
        if self.degree().map_or(true, |da| da < db) {
            return Ok((Poly::zero(&self.spec), self.clone()));
        }
        let spec = self.spec;
        let lead_inv = spec.inv(b.leading());
        let mut rem = self.coeffs.clone();
        let da = rem.len() - 1;
        let mut q = vec![FieldElement::ZERO; da - db + 1];
        for i in (db..=da).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let f = spec.mul(c, lead_inv);
            q[i - db] = f;
            for (j, &bc) in b.coeffs.iter().enumerate() {
                rem[i - db + j] += spec.mul(f, bc);
            }
        }
        Ok((Poly::new(&spec, q), Poly::new(&spec, rem)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divmod(b)?.1)
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.spec.inv(self.leading());
        if inv == FieldElement::ONE {
            return self.clone();
        }
        let coeffs = self.coeffs.iter().map(|&c| self.spec.mul(c, inv)).collect();
        Poly::new(&self.spec, coeffs)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_spec(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = self.spec.mul(acc, x) + c;
        }
        acc
    }

    /// Square modulo `m`. In characteristic 2 squaring just spreads the
    /// coefficients: (sum a_i X^i)^2 = sum a_i^2 X^(2i).
    fn sqr_mod(&self, m: &Poly) -> Result<Poly> {
        let spec = self.spec;
        if self.is_zero() {
            return Ok(Poly::zero(&spec));
        }
        let mut coeffs = vec![FieldElement::ZERO; 2 * self.coeffs.len() - 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = spec.sqr(c);
        }
        Poly::new(&spec, coeffs).rem(m)
    }
}

/// All roots of `g` in the base field, each exactly once, sorted by element
/// encoding. Deterministic for a fixed `seed`; the default degree cap of
/// [`DEFAULT_ROOT_DEGREE_CAP`] applies.
pub fn find_roots(g: &Poly, seed: u64) -> Result<Vec<FieldElement>> {
    find_roots_with_cap(g, seed, DEFAULT_ROOT_DEGREE_CAP)
}

pub fn find_roots_with_cap(g: &Poly, seed: u64, cap: usize) -> Result<Vec<FieldElement>> {
    if g.is_zero() {
        return Err(Error::ZeroPoly);
    }
    let deg = g.degree().unwrap();
    if deg > cap {
        return Err(Error::DegreeCapExceeded);
    }
    let spec = *g.spec();
    let mut roots: Vec<FieldElement> = Vec::new();
    let mut g = g.monic();

    // Pull out the root at zero so the splitting stage only sees polynomials
    // with nonzero constant term.
    let zeros = g.coeffs.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push(FieldElement::ZERO);
        g = Poly::new(&spec, g.coeffs[zeros..].to_vec());
    }

    if let Some(d) = g.degree() {
        if d == 1 {
            roots.push(g.coeffs[0]);
        } else if d >= 2 {
            // gcd(g, X^(2^n) + X): the product of the distinct linear
            // factors of g over the field.
            let mut xq = Poly::x(&spec).rem(&g)?;
            for _ in 0..spec.n() {
                xq = xq.sqr_mod(&g)?;
            }
            let lin = xq.add(&Poly::x(&spec))?.gcd(&g)?;
            let mut rng = Rng::new(seed);
            split_linear_product(&lin, &mut rng, &mut roots)?;
        }
    }

    roots.sort_unstable();
    Ok(roots)
}

/// Equal-degree splitting of a monic product of distinct linear factors
/// with nonzero constant term, via random trace polynomials
/// Tr(aX) = sum_{i<n} (aX)^(2^i): gcd(p, Tr(aX) mod p) separates the roots
/// by trace value for some a.
fn split_linear_product(p: &Poly, rng: &mut Rng, out: &mut Vec<FieldElement>) -> Result<()> {
    let spec = *p.spec();
    match p.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            out.push(p.coeffs[0]);
            return Ok(());
        }
        _ => {}
    }
    loop {
        let a = rng.nonzero_element(&spec);
        let ax = Poly::new(&spec, vec![FieldElement::ZERO, a]).rem(p)?;
        let mut acc = ax.clone();
        let mut pow = ax;
        for _ in 1..spec.n() {
            pow = pow.sqr_mod(p)?;
            acc = acc.add(&pow)?;
        }
        let d = acc.gcd(p)?;
        if let Some(dd) = d.degree() {
            if dd > 0 && dd < p.degree().unwrap() {
                let (q, r) = p.divmod(&d)?;
                debug_assert!(r.is_zero());
                split_linear_product(&d, rng, out)?;
                split_linear_product(&q, rng, out)?;
                return Ok(());
            }
        }
    }
}
