use std::time::Instant;
use zerosum::rng::Rng;
use zerosum::unipoly::{find_roots, Poly};
use zerosum::*;

fn main() {
    let spec = FieldSpec::new(49).unwrap();
    let budget = SearchBudget { max_trials: 400, seed: 7, direct_check_max_k: 0 };
    let mut rng = Rng::new(11);
    for round in 0..6 {
        // Build a dim-9 pipeline-style seed: 6 subfield elements, u7, x2, complete.
        let sub = subfield_subspace(&spec, 7).unwrap();
        let pool: Vec<FieldElement> = sub.elements().unwrap().collect();
        let mut tuple = vec![FieldElement::ONE];
        while tuple.len() < 6 {
            let c = pool[rng.below(pool.len() as u64) as usize];
            let mut t = tuple.clone();
            t.push(c);
            let sp = Subspace::from_vectors(&spec, &t);
            if sp.dim() as usize == t.len()
                && !delta_i(&spec, &t, 1).unwrap().is_zero()
            {
                tuple.push(c);
            }
        }
        let t7 = extend_non_zero_sum(&spec, &tuple, 2).unwrap(); // u7 + x2
        let Some(done) = complete_to_zero_sum(&spec, &t7, &budget).unwrap() else {
            println!("round {}: completion failed", round);
            continue;
        };
        let mut seed_tuple = done.tuple.clone();
        seed_tuple.push(done.element);
        let seed = Subspace::from_vectors(&spec, &seed_tuple);
        assert!(is_zero_sum(&seed).unwrap());
        let t0 = Instant::now();

        // G over the 511 nonzero elements.
        let f_star: Vec<FieldElement> = seed.elements().unwrap().filter(|e| !e.is_zero()).collect();
        let mut ys = Vec::new();
        let mut cs = Vec::new();
        for &u in &f_star {
            let inv = spec.inv(u);
            let y = spec.mul(spec.frob(u, 7), inv);
            ys.push(y);
            cs.push(spec.mul(y, inv));
        }
        let mut p = Poly::one(&spec);
        for &y in &ys { p = p.mul(&Poly::x_plus(&spec, y)).unwrap(); }
        let mut g = Poly::zero(&spec);
        for (&y, &c) in ys.iter().zip(&cs) {
            let (q, _) = p.divmod(&Poly::x_plus(&spec, y)).unwrap();
            g = g.add(&q.mul(&Poly::constant(&spec, c)).unwrap()).unwrap();
        }
        let build_t = t0.elapsed();
        let t1 = Instant::now();
        let roots = find_roots(&g, 3).unwrap();
        let sigma = span_dim_over_subfield(&seed, 7).unwrap();
        println!(
            "round {}: s={} deg G={:?} roots={} residue-roots={} build={:.2?} roots_t={:.2?}",
            round, sigma,
            g.degree(),
            roots.len(),
            roots.iter().filter(|r| {
                // g is a 127th power residue iff g^((2^49-1)/127) = 1
                let e = ((1u128 << 49) - 1) / 127;
                spec.pow(**r, e) == FieldElement::ONE
            }).count(),
            build_t, t1.elapsed()
        );
    }
}
