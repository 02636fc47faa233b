use std::time::Instant;
use zerosum::*;

fn main() {
    for (n, k) in [(11u32, 8u32), (22, 19), (21, 17)] {
        let t0 = Instant::now();
        let budget = SearchBudget::with_seed(42);
        let out = build_zero_sum(n, k, &budget).unwrap();
        let m = match &out {
            BuildOutcome::Certificate(c) => format!("{:?}", c.method),
            o => format!("{:?}", o),
        };
        println!("({}, {}) -> {} in {:.2?}", n, k, m, t0.elapsed());
    }
}
