use zerosum::rng::Rng;
use zerosum::*;

fn jump_rate(spec: &FieldSpec, prefix: &[FieldElement], trials: u64, seed: u64) -> (u64, u64) {
    let mut rng = Rng::new(seed);
    let mut jumps = 0;
    let prefix_space = Subspace::from_vectors(spec, prefix);
    for _ in 0..trials {
        // random last element keeping independence
        let last = loop {
            let c = rng.element(spec);
            if !prefix_space.contains(c) { break c; }
        };
        let mut tuple = prefix.to_vec();
        tuple.push(last);
        let kernel = linearized_delta1_map(spec, &tuple).unwrap().reduce().kernel_basis;
        if kernel.len() > tuple.len() { jumps += 1; }
    }
    (jumps, trials)
}

fn main() {
    let spec = FieldSpec::new(11).unwrap();
    // structured monomial prefix 1,2,4,8,0x10,0x20 (degree <= 5 polys)
    let mono: Vec<FieldElement> = [1u64, 2, 4, 8, 0x10, 0x20]
        .iter().map(|&b| FieldElement::new(b)).collect();
    println!("monomial prefix jump rate: {:?}", jump_rate(&spec, &mono, 3000, 1));

    // fully random 6-element prefixes
    let mut rng = Rng::new(9);
    let mut total = (0u64, 0u64);
    for s in 0..30 {
        let prefix = loop {
            let vs: Vec<FieldElement> = (0..6).map(|_| rng.element(&spec)).collect();
            let sp = Subspace::from_vectors(&spec, &vs);
            if sp.dim() == 6 { break vs; }
        };
        let (j, t) = jump_rate(&spec, &prefix, 100, 100 + s);
        total.0 += j; total.1 += t;
    }
    println!("random prefixes jump rate: {:?}", total);

    // smaller k for reference: random 4-element prefixes (k=5)
    let mut total = (0u64, 0u64);
    for s in 0..30 {
        let prefix = loop {
            let vs: Vec<FieldElement> = (0..4).map(|_| rng.element(&spec)).collect();
            let sp = Subspace::from_vectors(&spec, &vs);
            if sp.dim() == 4 { break vs; }
        };
        let (j, t) = jump_rate(&spec, &prefix, 100, 200 + s);
        total.0 += j; total.1 += t;
    }
    println!("random 4-prefixes (k=5) jump rate: {:?}", total);
}
