use zerosum::*;

fn main() {
    // Reproduce the (22,19) pipeline seed and walk the chain manually.
    let spec = FieldSpec::new(22).unwrap();
    let one = FieldElement::ONE;
    let budget = SearchBudget::with_seed(42);
    let x2 = extend_non_zero_sum(&spec, &[one], 1).unwrap()[1];
    eprintln!("x2 = {}", x2);
    let done = complete_to_zero_sum(&spec, &[one, x2], &budget).unwrap().unwrap();
    eprintln!("x1 = {} trials={} tuple={:?}", done.element, done.trials,
        done.tuple.iter().map(|e| e.to_hex()).collect::<Vec<_>>());
    let mut tuple = done.tuple.clone();
    tuple.push(done.element);
    let seed = Subspace::from_vectors(&spec, &tuple);
    eprintln!("seed dim={} zero_sum={:?} sigma={:?}",
        seed.dim(), is_zero_sum(&seed), span_dim_over_subfield(&seed, 2));
    // Now lift step by step.
    let mut f = seed.clone();
    for step in 0..8 {
        let t0 = std::time::Instant::now();
        match lift_one(&f, 2, &budget) {
            Ok(Some(next)) => {
                eprintln!("step {} -> dim {} sigma {:?} ({:.2?})", step, next.dim(),
                    span_dim_over_subfield(&next, 2), t0.elapsed());
                f = next;
            }
            other => {
                eprintln!("step {} FAILED: {:?} ({:.2?})", step, other.map(|o| o.map(|s| s.dim())), t0.elapsed());
                break;
            }
        }
    }
}
