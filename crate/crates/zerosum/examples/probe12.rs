use std::collections::BTreeMap;
use zerosum::rng::Rng;
use zerosum::unipoly::{find_roots, Poly};
use zerosum::*;

/// Count genuinely valid lift roots for a seed: group terms by distinct
/// pole y, clear denominators, find roots, filter poles and non-residues,
/// and Moore-verify one v per root.
fn valid_lifts(spec: &FieldSpec, seed: &Subspace, l: u32) -> usize {
    let f_star: Vec<FieldElement> = seed.elements().unwrap().filter(|e| !e.is_zero()).collect();
    let mut groups: BTreeMap<u64, FieldElement> = BTreeMap::new();
    for &u in &f_star {
        let inv = spec.inv(u);
        let y = spec.mul(spec.frob(u, l), inv);
        let c = spec.mul(y, inv);
        *groups.entry(y.bits()).or_insert(FieldElement::ZERO) += c;
    }
    let entries: Vec<(FieldElement, FieldElement)> = groups
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(&y, &c)| (FieldElement::new(y), c))
        .collect();
    if entries.is_empty() {
        return usize::MAX; // G identically zero: every v works
    }
    let mut p = Poly::one(spec);
    for (y, _) in &entries {
        p = p.mul(&Poly::x_plus(spec, *y)).unwrap();
    }
    let mut g = Poly::zero(spec);
    for (y, c) in &entries {
        let (q, _) = p.divmod(&Poly::x_plus(spec, *y)).unwrap();
        g = g.add(&q.mul(&Poly::constant(spec, *c)).unwrap()).unwrap();
    }
    if g.is_zero() {
        return usize::MAX;
    }
    let sub = subfield_subspace(spec, l).unwrap();
    let span = zerosum::construct::subfield_span(seed, l).unwrap();
    let mut count = 0;
    for root in find_roots(&g, 17).unwrap() {
        if groups.contains_key(&root.bits()) {
            continue; // pole
        }
        // residue test + recover one v
        let zp = Poly::xpow_plus(spec, (1usize << l) - 1, root);
        for z in find_roots(&zp, 23).unwrap() {
            if span.contains(z) {
                continue;
            }
            let mut gens = seed.basis();
            for &c in &sub.basis() {
                gens.push(spec.mul(z, c));
            }
            let lifted = Subspace::from_vectors(spec, &gens);
            if lifted.dim() == seed.dim() + l && is_zero_sum(&lifted).unwrap() {
                count += 1;
            }
            break; // one v per root suffices (same lifted space)
        }
    }
    count
}

fn main() {
    let spec = FieldSpec::new(49).unwrap();
    let budget = SearchBudget { max_trials: 400, seed: 7, direct_check_max_k: 0 };
    let mut rng = Rng::new(77);
    let sub = subfield_subspace(&spec, 7).unwrap();
    let pool: Vec<FieldElement> = sub.elements().unwrap().collect();

    for &(r, a) in &[(9u32, 6usize), (9, 4), (9, 2), (8, 5), (8, 3), (6, 3), (5, 2)] {
        let mut stats = Vec::new();
        for _ in 0..12 {
            // prefix: a subfield elements (incl 1), rest random, then u_{l'}, x2, x1
            let mut tuple = vec![FieldElement::ONE];
            while tuple.len() < a.min((r - 3) as usize) {
                let c = pool[rng.below(pool.len() as u64) as usize];
                let mut t = tuple.clone();
                t.push(c);
                if Subspace::from_vectors(&spec, &t).dim() as usize == t.len()
                    && !delta_i(&spec, &t, 1).unwrap().is_zero()
                {
                    tuple.push(c);
                }
            }
            while tuple.len() < (r - 3) as usize {
                let c = rng.element(&spec);
                let mut t = tuple.clone();
                t.push(c);
                if Subspace::from_vectors(&spec, &t).dim() as usize == t.len()
                    && !delta_i(&spec, &t, 1).unwrap().is_zero()
                {
                    tuple.push(c);
                }
            }
            let t2 = extend_non_zero_sum(&spec, &tuple, 2).unwrap();
            let Some(done) = complete_to_zero_sum(&spec, &t2, &budget).unwrap() else {
                continue;
            };
            let mut st = done.tuple.clone();
            st.push(done.element);
            let seed = Subspace::from_vectors(&spec, &st);
            if seed.dim() != r || !is_zero_sum(&seed).unwrap() {
                continue;
            }
            let s = span_dim_over_subfield(&seed, 7).unwrap();
            stats.push((s, valid_lifts(&spec, &seed, 7)));
        }
        println!("r={} subfield-part={}: (sigma, valid-roots) = {:?}", r, a, stats);
    }
}
