use zerosum::*;

fn main() {
    // Embed a 3-dim zero-sum subspace of F_(2^11) into F_(2^22) and check
    // that every v outside the F_(2^11)-span lifts it.
    let small = FieldSpec::new(11).unwrap();
    let big = FieldSpec::new(22).unwrap();
    let budget = SearchBudget::with_seed(42);
    let BuildOutcome::Certificate(cert) = build_zero_sum(11, 8, &budget).unwrap() else { panic!() };
    println!("inner cert: k={} method={:?}", cert.k, cert.method);

    // Embedding: root of the degree-11 canonical modulus inside F_(2^22).
    let coeffs: Vec<FieldElement> = (0..=11)
        .map(|i| if (small.modulus() >> i) & 1 == 1 { FieldElement::ONE } else { FieldElement::ZERO })
        .collect();
    let p = zerosum::unipoly::Poly::new(&big, coeffs);
    let roots = zerosum::unipoly::find_roots(&p, 7).unwrap();
    println!("roots found: {}", roots.len());
    let rho = roots[0];
    let mut powers = vec![FieldElement::ONE];
    for _ in 1..11 { powers.push(big.mul(*powers.last().unwrap(), rho)); }
    let embed = |bits: u64| {
        let mut acc = FieldElement::ZERO;
        for (i, p) in powers.iter().enumerate() {
            if bits >> i & 1 == 1 { acc += *p; }
        }
        acc
    };
    let (_, small_space) = cert.decode().unwrap();
    let gens: Vec<FieldElement> = small_space.rows().iter().map(|&r| embed(r)).collect();
    // All images must lie in the subfield (x^(2^11) = x).
    for &g in &gens { assert_eq!(big.frob(g, 11), g); }
    let seed = Subspace::from_vectors(&big, &gens);
    println!("embedded seed: dim={} zero_sum={:?}", seed.dim(), is_zero_sum(&seed));

    // One lift by d=11: try the first few v outside the span.
    let span = zerosum::construct::subfield_span(&seed, 11).unwrap();
    println!("span dim = {}", span.dim());
    let sub = zerosum::subfield_subspace(&big, 11).unwrap();
    let mut tested = 0;
    let mut bits = 1u64;
    while tested < 5 {
        let v = FieldElement::new(bits);
        bits += 1;
        if span.contains(v) { continue; }
        tested += 1;
        let mut g2 = seed.basis();
        for &c in &sub.basis() { g2.push(big.mul(v, c)); }
        let lifted = Subspace::from_vectors(&big, &g2);
        println!("v={:x}: dim={} zero_sum={:?}", v.bits(), lifted.dim(), is_zero_sum(&lifted));
        assert_eq!(lifted.dim(), 19);
        assert!(is_zero_sum(&lifted).unwrap());
    }
    println!("every tested v lifts: OK");
}
