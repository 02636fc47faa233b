use std::time::Instant;
use zerosum::rng::Rng;
use zerosum::*;

fn main() {
    let spec = FieldSpec::new(11).unwrap();
    let mut rng = Rng::new(3);
    let tuple: Vec<FieldElement> = {
        let mut vs = Vec::new();
        while vs.len() < 7 {
            let c = rng.element(&spec);
            let mut t = vs.clone();
            t.push(c);
            if Subspace::from_vectors(&spec, &t).dim() as usize == t.len() { vs.push(c); }
        }
        vs
    };
    let t0 = Instant::now();
    let mut acc = 0u64;
    for _ in 0..10_000 {
        let m = linearized_delta1_map(&spec, &tuple).unwrap();
        acc ^= m.rows()[0];
    }
    println!("10k linearized maps: {:.2?} ({acc})", t0.elapsed());

    let t0 = Instant::now();
    let mut acc2 = 0u64;
    for _ in 0..10_000 {
        let r = linearized_delta1_map(&spec, &tuple).unwrap().reduce();
        acc2 ^= r.kernel_basis.len() as u64;
    }
    println!("10k maps+kernels: {:.2?} ({acc2})", t0.elapsed());
}
