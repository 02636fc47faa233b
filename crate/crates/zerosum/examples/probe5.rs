use zerosum::*;

fn main() {
    let spec = FieldSpec::new(11).unwrap();
    // Rebuild the pipeline seed for (11, 8) by hand: prefix of 6 (l'=6), x2, complete.
    let mut tuple = vec![FieldElement::ONE];
    let t6 = extend_non_zero_sum(&spec, &tuple, 5).unwrap();
    println!("u-part: {:?}", t6.iter().map(|e| e.to_hex()).collect::<Vec<_>>());
    let t7 = extend_non_zero_sum(&spec, &t6, 1).unwrap();
    println!("with x2: {:?}", t7.iter().map(|e| e.to_hex()).collect::<Vec<_>>());
    let budget = SearchBudget::with_seed(42);
    match complete_to_zero_sum(&spec, &t7, &budget) {
        Ok(Some(c)) => {
            tuple = c.tuple.clone();
            tuple.push(c.element);
            let s = Subspace::from_vectors(&spec, &tuple);
            println!("completed after {} trials: dim={} zs={:?}", c.trials, s.dim(), is_zero_sum(&s));
        }
        other => println!("completion failed: {:?}", other.map(|o| o.is_some())),
    }
}
