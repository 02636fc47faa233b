use zerosum::rng::Rng;
use zerosum::*;

fn kernel_jump(spec: &FieldSpec, tuple: &[FieldElement]) -> bool {
    let kernel = linearized_delta1_map(spec, tuple).unwrap().reduce().kernel_basis;
    kernel.len() > tuple.len()
}

fn main() {
    let spec = FieldSpec::new(11).unwrap();
    let mut rng = Rng::new(1);

    // (a) prefix = [1] + 5 random independent, random last (no extend filter)
    let mut hits = 0;
    for _ in 0..2000 {
        let mut vs = vec![FieldElement::ONE];
        while vs.len() < 7 {
            let c = rng.element(&spec);
            let mut t = vs.clone();
            t.push(c);
            if Subspace::from_vectors(&spec, &t).dim() as usize == t.len() { vs.push(c); }
        }
        if kernel_jump(&spec, &vs) { hits += 1; }
    }
    println!("[1]+random6: {}/2000", hits);

    // (b) extend-built tuple: [1], then 6 extend_step_random-like picks
    // (random outside the Delta_1 kernel at each step)
    let mut hits = 0;
    for _ in 0..2000 {
        let mut vs = vec![FieldElement::ONE];
        for _ in 0..6 {
            let kernel = linearized_delta1_map(&spec, &vs).unwrap().reduce().kernel_basis;
            let c = loop {
                let c = rng.element(&spec);
                let mut member = c.bits();
                for &b in &kernel { if member & (b & b.wrapping_neg()) != 0 { member ^= b; } }
                if member != 0 { break c; }
            };
            vs.push(c);
        }
        if kernel_jump(&spec, &vs) { hits += 1; }
    }
    println!("extend-built 7-tuple: {}/2000", hits);

    // (c) extend-built 6-tuple prefix + fully random independent last
    let mut hits = 0;
    for _ in 0..2000 {
        let mut vs = vec![FieldElement::ONE];
        for _ in 0..5 {
            let kernel = linearized_delta1_map(&spec, &vs).unwrap().reduce().kernel_basis;
            let c = loop {
                let c = rng.element(&spec);
                let mut member = c.bits();
                for &b in &kernel { if member & (b & b.wrapping_neg()) != 0 { member ^= b; } }
                if member != 0 { break c; }
            };
            vs.push(c);
        }
        let sp = Subspace::from_vectors(&spec, &vs);
        let last = loop {
            let c = rng.element(&spec);
            if !sp.contains(c) { break c; }
        };
        vs.push(last);
        if kernel_jump(&spec, &vs) { hits += 1; }
    }
    println!("extend6 + random last: {}/2000", hits);
}
