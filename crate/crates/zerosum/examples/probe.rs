use std::time::Instant;
use zerosum::construct::Method;
use zerosum::*;

fn one(n: u32, k: u32) {
    eprint!("n={} k={} ... ", n, k);
    let t0 = Instant::now();
    let budget = SearchBudget::with_seed(42);
    match build_zero_sum(n, k, &budget) {
        Ok(BuildOutcome::Certificate(c)) => {
            let s12 = matches!(c.method, Method::SubfieldSpace | Method::Pipeline);
            eprintln!(
                "OK method={:?} strat12={} l={} t={} s={} r={} ({:.2?})",
                c.method, s12, c.l, c.t, c.s, c.r, t0.elapsed()
            );
        }
        other => eprintln!("FAILED: {:?} ({:.2?})", other, t0.elapsed()),
    }
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.len() == 3 {
        one(args[1].parse().unwrap(), args[2].parse().unwrap());
        return;
    }
    for (n, k) in [(22u32, 19u32), (20, 17), (21, 16), (21, 17), (16, 13), (15, 11)] {
        one(n, k);
    }
    for k in [3u32, 9, 16, 20, 23, 24, 29, 30] {
        one(49, k);
    }
}
