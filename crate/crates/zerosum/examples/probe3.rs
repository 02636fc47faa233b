use zerosum::*;

fn main() {
    let spec = FieldSpec::new(22).unwrap();
    let one = FieldElement::ONE;
    let budget = SearchBudget::with_seed(42);
    let x2 = extend_non_zero_sum(&spec, &[one], 1).unwrap()[1];
    let done = complete_to_zero_sum(&spec, &[one, x2], &budget).unwrap().unwrap();
    let mut tuple = done.tuple.clone();
    tuple.push(done.element);
    let seed = Subspace::from_vectors(&spec, &tuple);
    eprintln!("seed rows: {:?}", seed.basis().iter().map(|b| b.to_hex()).collect::<Vec<_>>());

    let f4 = zerosum::subfield_subspace(&spec, 2).unwrap();
    let span = zerosum::construct::subfield_span(&seed, 2).unwrap();
    let f_star: Vec<FieldElement> = seed.elements().unwrap().filter(|e| !e.is_zero()).collect();

    // Brute scan: v with seed + v*F4 zero-sum, v outside the F4-span.
    let mut valid: Vec<u64> = Vec::new();
    let mut h_zero: Vec<u64> = Vec::new();
    for bits in 1u64..(1 << 22) {
        let v = FieldElement::new(bits);
        if span.contains(v) { continue; }
        // H(v) = sum u^2 / (u^3 + v^3)
        let v3 = spec.mul(spec.sqr(v), v);
        let mut h = FieldElement::ZERO;
        for &u in &f_star {
            let u3 = spec.mul(spec.sqr(u), u);
            h += spec.mul(spec.sqr(u), spec.inv(u3 + v3));
        }
        if h.is_zero() {
            h_zero.push(bits);
            let mut gens = seed.basis();
            for &c in &f4.basis() { gens.push(spec.mul(v, c)); }
            let s = Subspace::from_vectors(&spec, &gens);
            if s.dim() == 5 && is_zero_sum(&s).unwrap() {
                valid.push(bits);
            }
        }
    }
    eprintln!("H-zero v count: {}", h_zero.len());
    eprintln!("valid lift v count: {}", valid.len());
    eprintln!("first few: {:?}", valid.iter().take(8).map(|v| format!("{:x}", v)).collect::<Vec<_>>());
}
