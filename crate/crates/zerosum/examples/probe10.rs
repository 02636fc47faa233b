use zerosum::rng::Rng;
use zerosum::*;

fn main() {
    let spec = FieldSpec::new(11).unwrap();
    let mut rng = Rng::new(5);
    let mut dist: Vec<u32> = Vec::new();
    for _ in 0..40 {
        // random independent 6-prefix containing 1
        let mut vs = vec![FieldElement::ONE];
        while vs.len() < 6 {
            let c = rng.element(&spec);
            let mut t = vs.clone();
            t.push(c);
            if Subspace::from_vectors(&spec, &t).dim() as usize == t.len() { vs.push(c); }
        }
        let sp = Subspace::from_vectors(&spec, &vs);
        let mut hits = 0u32;
        for _ in 0..2000 {
            let last = loop {
                let c = rng.element(&spec);
                if !sp.contains(c) { break c; }
            };
            let mut tuple = vs.clone();
            tuple.push(last);
            let kernel = linearized_delta1_map(&spec, &tuple).unwrap().reduce().kernel_basis;
            if kernel.len() > 7 { hits += 1; }
        }
        dist.push(hits);
    }
    dist.sort_unstable();
    println!("per-prefix hits out of 2000: {:?}", dist);
}
