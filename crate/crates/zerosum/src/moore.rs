//! Moore determinants and the zero-sum criterion.
//!
//! For a tuple (v_1, ..., v_k) over F_{2^n}, the Moore determinant
//! Delta(v_1..v_k) is the determinant of the k x k matrix whose row i
//! applies the 2^i-power map (i = 0..k-1) to each argument. It vanishes
//! exactly on F_2-dependent tuples. The variants Delta_i use the k
//! exponents {2^0, ..., 2^k} \ {2^i} instead.
//!
//! The criterion this crate is built around: a k-dimensional subspace with
//! basis u_1..u_k has inverse sum zero over its nonzero elements if and
//! only if Delta_1(u_1..u_k) = 0. That turns an exponential sum into an
//! O(k^3) determinant, and `direct_inverse_sum` stays available as the
//! independent brute-force cross-check.
//!
//! Determinants are computed by Gaussian elimination over the field; sign
//! bookkeeping is vacuous in characteristic 2.

use crate::bitlinalg::{BitMatrix, Subspace};
use crate::gf2n::{FieldElement, FieldSpec};
use crate::{Error, Result};

/// Determinant of a k x k matrix over the field, given row-major. Consumes
/// the buffer.
fn det_in_place(spec: &FieldSpec, m: &mut [u64], k: usize) -> FieldElement {
    let mut det = FieldElement::ONE;
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| m[r * k + c] != 0) else {
            return FieldElement::ZERO;
        };
        if p != c {
            for j in 0..k {
                m.swap(c * k + j, p * k + j);
            }
        }
        let pivot = FieldElement::new(m[c * k + c]);
        det = spec.mul(det, pivot);
        let pinv = spec.inv(pivot);
        for r in c + 1..k {
            let lead = FieldElement::new(m[r * k + c]);
            if lead.is_zero() {
                continue;
            }
            let f = spec.mul(lead, pinv);
            for j in c..k {
                let sub = spec.mul(f, FieldElement::new(m[c * k + j]));
                m[r * k + j] ^= sub.bits();
            }
        }
    }
    det
}

/// Moore matrix with the given row exponents (as powers of two applied by
/// iterated squaring down each column).
fn moore_matrix(spec: &FieldSpec, vs: &[FieldElement], exponents: &[u32]) -> Vec<u64> {
    let k = vs.len();
    debug_assert_eq!(exponents.len(), k);
    let mut m = vec![0u64; k * k];
    for (j, &v) in vs.iter().enumerate() {
        let mut x = v;
        let mut e = 0u32;
        for (row, &target) in exponents.iter().enumerate() {
            while e < target {
                x = spec.sqr(x);
                e += 1;
            }
            m[row * k + j] = x.bits();
        }
    }
    m
}

/// Delta(v_1..v_k): row exponents 2^0 .. 2^(k-1). Zero iff the tuple is
/// F_2-dependent.
pub fn delta(spec: &FieldSpec, vs: &[FieldElement]) -> Result<FieldElement> {
    if vs.is_empty() {
        return Err(Error::EmptyTuple);
    }
    let k = vs.len();
    let exps: Vec<u32> = (0..k as u32).collect();
    let mut m = moore_matrix(spec, vs, &exps);
    Ok(det_in_place(spec, &mut m, k))
}

/// Delta_i(v_1..v_k): row exponents {2^0, ..., 2^k} \ {2^i}, for
/// 0 <= i <= k. Vanishes on dependent tuples; Delta_0 equals Delta squared.
pub fn delta_i(spec: &FieldSpec, vs: &[FieldElement], i: u32) -> Result<FieldElement> {
    if vs.is_empty() {
        return Err(Error::EmptyTuple);
    }
    let k = vs.len();
    if i > k as u32 {
        return Err(Error::IndexOutOfRange);
    }
    let exps: Vec<u32> = (0..=k as u32).filter(|&e| e != i).collect();
    let mut m = moore_matrix(spec, vs, &exps);
    Ok(det_in_place(spec, &mut m, k))
}

/// The criterion value F_k(v_1..v_k) = Delta_1 / Delta. Defined only on
/// independent tuples; zero exactly when the spanned subspace is zero-sum.
pub fn eval_fk(spec: &FieldSpec, vs: &[FieldElement]) -> Result<FieldElement> {
    let d = delta(spec, vs)?;
    if d.is_zero() {
        return Err(Error::DependentBasis);
    }
    Ok(spec.mul(delta_i(spec, vs, 1)?, spec.inv(d)))
}

/// Whether the subspace is zero-sum: Delta_1 over any basis vanishes. The
/// RREF basis of `s` is independent by construction, so only Delta_1 is
/// evaluated. O(k^3) field operations.
pub fn is_zero_sum(s: &Subspace) -> Result<bool> {
    if s.dim() == 0 {
        return Err(Error::ZeroDimension);
    }
    Ok(delta_i(s.spec(), &s.basis(), 1)?.is_zero())
}

/// Brute-force inverse sum over the nonzero elements of `s`; the
/// independent oracle for `is_zero_sum`.
pub fn direct_inverse_sum(s: &Subspace) -> Result<FieldElement> {
    let spec = *s.spec();
    let mut acc = FieldElement::ZERO;
    for e in s.elements()? {
        if !e.is_zero() {
            acc += spec.inv(e);
        }
    }
    Ok(acc)
}

/// Cofactors of the last column of the Delta_1 matrix for (u_1..u_m, X):
/// Delta_1(u, X) = sum_i c_i X^(2^(e_i)) with e = {0, 2, 3, ..., m+1}.
///
/// The cofactor vector spans the left null space of the (m+1) x m matrix of
/// exponentiated u-columns; it is normalized so that the coefficient of X
/// equals Delta(u)^4, making the values exact rather than merely projective.
pub(crate) fn delta1_cofactors(spec: &FieldSpec, us: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let m = us.len();
    if m == 0 {
        return Err(Error::EmptyTuple);
    }
    let k = m + 1; // tuple length including X
    let exps: Vec<u32> = (0..=k as u32).filter(|&e| e != 1).collect();
    debug_assert_eq!(exps.len(), k);

    // Columns of exponentiated u-values; rows are the k exponents.
    let mut a = vec![0u64; k * m];
    for (j, &u) in us.iter().enumerate() {
        let mut x = u;
        let mut e = 0u32;
        for (row, &target) in exps.iter().enumerate() {
            while e < target {
                x = spec.sqr(x);
                e += 1;
            }
            a[row * m + j] = x.bits();
        }
    }

    // Left null space of a = null space of a^T (m x k).
    let mut t = vec![0u64; m * k];
    for r in 0..k {
        for c in 0..m {
            t[c * k + r] = a[r * m + c];
        }
    }
    let c = field_kernel_vector(spec, &mut t, m, k)?;

    // Normalize: the coefficient of X (exponent 2^0) is the minor over
    // exponents {2^2..2^(m+1)}, i.e. Delta(u)^4, nonzero for independent u.
    let d = delta(spec, us)?;
    if d.is_zero() {
        return Err(Error::DependentPrefix);
    }
    let want = spec.sqr(spec.sqr(d));
    let c0 = c[0];
    if c0.is_zero() {
        return Err(Error::DependentPrefix);
    }
    let scale = spec.mul(want, spec.inv(c0));
    Ok(c.into_iter().map(|x| spec.mul(x, scale)).collect())
}

/// One kernel vector of an r x c matrix over the field with kernel
/// dimension exactly one; errors with `DependentPrefix` otherwise.
fn field_kernel_vector(
    spec: &FieldSpec,
    m: &mut [u64],
    rows: usize,
    cols: usize,
) -> Result<Vec<FieldElement>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0usize;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r * cols + c] != 0) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                m.swap(rank * cols + j, p * cols + j);
            }
        }
        let pinv = spec.inv(FieldElement::new(m[rank * cols + c]));
        for r in 0..rows {
            if r == rank || m[r * cols + c] == 0 {
                continue;
            }
            let f = spec.mul(FieldElement::new(m[r * cols + c]), pinv);
            for j in c..cols {
                let sub = spec.mul(f, FieldElement::new(m[rank * cols + j]));
                m[r * cols + j] ^= sub.bits();
            }
        }
        pivots.push((rank, c));
        rank += 1;
    }
    if rank + 1 != cols {
        return Err(Error::DependentPrefix);
    }
    let free = (0..cols)
        .find(|c| !pivots.iter().any(|&(_, pc)| pc == *c))
        .unwrap();
    let mut x = vec![FieldElement::ZERO; cols];
    x[free] = FieldElement::ONE;
    for &(r, c) in &pivots {
        // Row r reads: m[r][c] * x_c + m[r][free] * x_free = 0.
        let coeff = FieldElement::new(m[r * cols + free]);
        let lead = FieldElement::new(m[r * cols + c]);
        x[c] = spec.mul(coeff, spec.inv(lead));
    }
    Ok(x)
}

/// The n x n bit-matrix of the F_2-linear map x -> Delta_1(u_1..u_m, x),
/// built by evaluating the map on the standard basis monomials. Its kernel
/// always contains span(u).
pub fn linearized_delta1_map(spec: &FieldSpec, us: &[FieldElement]) -> Result<BitMatrix> {
    let cof = delta1_cofactors(spec, us)?;
    let n = spec.n();
    let mut columns = Vec::with_capacity(n as usize);
    for i in 0..n {
        let x = FieldElement::new(1u64 << i);
        columns.push(delta1_apply(spec, &cof, x).bits());
    }
    Ok(BitMatrix::from_columns(&columns, n))
}

/// Evaluates Delta_1(u_1..u_m, x) through the cofactor expansion; exact and
/// cheaper than a fresh determinant when many x share one prefix.
pub(crate) fn delta1_apply(
    spec: &FieldSpec,
    cof: &[FieldElement],
    x: FieldElement,
) -> FieldElement {
    let m = cof.len() - 1;
    let exps: Vec<u32> = (0..=(m + 1) as u32).filter(|&e| e != 1).collect();
    let mut acc = FieldElement::ZERO;
    let mut y = x;
    let mut e = 0u32;
    for (idx, &target) in exps.iter().enumerate() {
        while e < target {
            y = spec.sqr(y);
            e += 1;
        }
        acc += spec.mul(cof[idx], y);
    }
    acc
}

/// Random F_2-independent tuple of the given length (test support).
#[cfg(test)]
pub(crate) fn random_independent(
    f: &FieldSpec,
    k: usize,
    rng: &mut crate::rng::Rng,
) -> Vec<FieldElement> {
    let mut vs: Vec<FieldElement> = Vec::new();
    while vs.len() < k {
        let v = rng.element(f);
        let mut trial = vs.clone();
        trial.push(v);
        if Subspace::from_vectors(f, &trial).dim() as usize == trial.len() {
            vs.push(v);
        }
    }
    vs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitlinalg::{enumerate_k_subspaces, subfield_subspace};
    use crate::rng::Rng;

    fn f16() -> FieldSpec {
        FieldSpec::new(4).unwrap()
    }

    fn beta(f: &FieldSpec) -> FieldElement {
        f.element(0x6)
    }

    #[test]
    fn delta_examples() {
        let f = f16();
        let v = f.element(0xa);
        assert_eq!(delta(&f, &[v]).unwrap(), v);

        // delta(1, beta) = beta^2 + beta = 1 since beta^2 = beta + 1.
        assert_eq!(
            delta(&f, &[FieldElement::ONE, beta(&f)]).unwrap(),
            FieldElement::ONE
        );

        let dep = [v, v];
        assert_eq!(delta(&f, &dep).unwrap(), FieldElement::ZERO);
        assert!(matches!(delta(&f, &[]), Err(Error::EmptyTuple)));
    }

    #[test]
    fn delta_i_examples() {
        let f = f16();
        let v = f.element(0x9);
        // k = 1, i = 1: exponent set {2^0}, so the value is v itself.
        assert_eq!(delta_i(&f, &[v], 1).unwrap(), v);

        // beta lies in F_4, so beta^4 = beta and the i=1 determinant dies.
        assert_eq!(
            delta_i(&f, &[FieldElement::ONE, beta(&f)], 1).unwrap(),
            FieldElement::ZERO
        );

        assert!(matches!(delta_i(&f, &[v], 2), Err(Error::IndexOutOfRange)));

        let dep = [v, v];
        for i in 0..=2 {
            assert_eq!(delta_i(&f, &dep, i).unwrap(), FieldElement::ZERO);
        }
    }

    #[test]
    fn delta_0_is_delta_squared() {
        let f = FieldSpec::new(11).unwrap();
        let mut rng = Rng::new(17);
        for _ in 0..50 {
            let vs = random_independent(&f, 3, &mut rng);
            let d = delta(&f, &vs).unwrap();
            assert_eq!(delta_i(&f, &vs, 0).unwrap(), f.sqr(d));
        }
    }

    #[test]
    fn eval_fk_examples() {
        let f = f16();
        for bits in 1..16u64 {
            let v = f.element(bits);
            assert_eq!(eval_fk(&f, &[v]).unwrap(), FieldElement::ONE);
        }
        assert_eq!(
            eval_fk(&f, &[FieldElement::ONE, beta(&f)]).unwrap(),
            FieldElement::ZERO
        );
        let v = f.element(0x5);
        assert!(matches!(eval_fk(&f, &[v, v]), Err(Error::DependentBasis)));
    }

    #[test]
    fn eval_fk_closed_form_k2() {
        // F_2(x1, x2) = x1^2 + x1 x2 + x2^2.
        let f = FieldSpec::new(9).unwrap();
        let mut rng = Rng::new(23);
        for _ in 0..100 {
            let vs = random_independent(&f, 2, &mut rng);
            let (x1, x2) = (vs[0], vs[1]);
            let expect = f.sqr(x1) + f.mul(x1, x2) + f.sqr(x2);
            assert_eq!(eval_fk(&f, &vs).unwrap(), expect);
        }
    }

    #[test]
    fn zero_sum_examples() {
        let f = f16();
        let one_dim = Subspace::from_vectors(&f, &[FieldElement::ONE]);
        assert!(!is_zero_sum(&one_dim).unwrap());

        let f4 = subfield_subspace(&f, 2).unwrap();
        assert!(is_zero_sum(&f4).unwrap());

        assert!(matches!(
            is_zero_sum(&Subspace::zero(&f)),
            Err(Error::ZeroDimension)
        ));

        // No 2-dimensional zero-sum subspaces exist in odd degree.
        let f5 = FieldSpec::new(5).unwrap();
        for s in enumerate_k_subspaces(&f5, 2).unwrap() {
            assert!(!is_zero_sum(&s).unwrap());
        }
    }

    #[test]
    fn direct_sum_examples() {
        let f = f16();
        let one_dim = Subspace::from_vectors(&f, &[FieldElement::ONE]);
        assert_eq!(direct_inverse_sum(&one_dim).unwrap(), FieldElement::ONE);

        let f4 = subfield_subspace(&f, 2).unwrap();
        assert_eq!(direct_inverse_sum(&f4).unwrap(), FieldElement::ZERO);

        // The full field: inversion permutes the nonzero elements.
        for n in [2u32, 4, 6] {
            let fs = FieldSpec::new(n).unwrap();
            let full = subfield_subspace(&fs, n).unwrap();
            assert_eq!(direct_inverse_sum(&full).unwrap(), FieldElement::ZERO);
        }
    }

    #[test]
    fn criterion_matches_direct_sum_small() {
        let mut rng = Rng::new(31);
        for n in [4u32, 6, 7, 9] {
            let f = FieldSpec::new(n).unwrap();
            for _ in 0..150 {
                let k = 1 + (rng.below(n as u64 - 1) as usize);
                let vs: Vec<_> = (0..k).map(|_| rng.element(&f)).collect();
                let s = Subspace::from_vectors(&f, &vs);
                if s.dim() == 0 {
                    continue;
                }
                let by_criterion = is_zero_sum(&s).unwrap();
                let by_sum = direct_inverse_sum(&s).unwrap().is_zero();
                assert_eq!(by_criterion, by_sum, "n={} dim={}", n, s.dim());
            }
        }
    }

    #[test]
    fn criterion_is_basis_independent() {
        let f = FieldSpec::new(8).unwrap();
        let mut rng = Rng::new(37);
        for _ in 0..100 {
            let vs = random_independent(&f, 3, &mut rng);
            let mixed = vec![vs[0] + vs[1], vs[2] + vs[0], vs[1]];
            let a = delta_i(&f, &vs, 1).unwrap().is_zero();
            let b = delta_i(&f, &mixed, 1).unwrap().is_zero();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn product_formula_small() {
        // delta(vs) equals the product of all nonzero F_2-combinations.
        let mut rng = Rng::new(41);
        for n in [6u32, 13] {
            let f = FieldSpec::new(n).unwrap();
            for _ in 0..50 {
                let k = 1 + rng.below(4) as usize;
                let vs = random_independent(&f, k, &mut rng);
                let mut prod = FieldElement::ONE;
                for m in 1u64..1 << k {
                    let mut comb = FieldElement::ZERO;
                    for (j, &v) in vs.iter().enumerate() {
                        if m >> j & 1 != 0 {
                            comb += v;
                        }
                    }
                    prod = f.mul(prod, comb);
                }
                assert_eq!(delta(&f, &vs).unwrap(), prod);
            }
        }
    }

    #[test]
    fn linearized_map_examples() {
        let f = f16();
        let m = linearized_delta1_map(&f, &[FieldElement::ONE]).unwrap();
        // x -> x^4 + x has kernel F_4 = {0, 1, 6, 7}.
        let kernel = m.reduce().kernel_basis;
        assert_eq!(kernel, vec![0x1, 0x6]);

        let f32 = FieldSpec::new(5).unwrap();
        let m = linearized_delta1_map(&f32, &[FieldElement::ONE]).unwrap();
        assert_eq!(m.reduce().kernel_basis, vec![0x1]);
    }

    #[test]
    fn linearized_map_matches_determinant() {
        let mut rng = Rng::new(43);
        for n in [8u32, 11] {
            let f = FieldSpec::new(n).unwrap();
            for _ in 0..20 {
                let m = 1 + rng.below(3) as usize;
                let us = random_independent(&f, m, &mut rng);
                let map = linearized_delta1_map(&f, &us).unwrap();
                let cof = delta1_cofactors(&f, &us).unwrap();
                for _ in 0..20 {
                    let x = rng.element(&f);
                    let mut tuple = us.clone();
                    tuple.push(x);
                    let direct = delta_i(&f, &tuple, 1).unwrap();
                    assert_eq!(FieldElement::new(map.mul_vec(x.bits())), direct);
                    assert_eq!(delta1_apply(&f, &cof, x), direct);
                }
                // Kernel contains the span of the prefix.
                for &u in &us {
                    assert_eq!(map.mul_vec(u.bits()), 0);
                }
            }
        }
    }

    #[test]
    fn closure_under_scaling_and_squaring() {
        let f = FieldSpec::new(6).unwrap();
        let f8 = subfield_subspace(&f, 3).unwrap();
        assert!(is_zero_sum(&f8).unwrap());
        let mut rng = Rng::new(47);
        for _ in 0..50 {
            let a = rng.nonzero_element(&f);
            let scaled: Vec<_> = f8.basis().iter().map(|&b| f.mul(a, b)).collect();
            assert!(is_zero_sum(&Subspace::from_vectors(&f, &scaled)).unwrap());
            let squared: Vec<_> = f8.basis().iter().map(|&b| f.sqr(b)).collect();
            assert!(is_zero_sum(&Subspace::from_vectors(&f, &squared)).unwrap());
        }
    }
}
