use std::time::Instant;
use zerosum::*;

fn main() {
    let f = FieldSpec::new(49).unwrap();
    let mut a = f.element(0x1234567890ab & f.element(0).bits() | 0x1234567890a);
    let b = f.element(0x0fedcba98765 & ((1 << 49) - 1));
    let t0 = Instant::now();
    let mut acc = a;
    for _ in 0..10_000_000 {
        acc = f.mul(acc, b);
    }
    println!("10M mults n=49: {:.2?} ({:.1} ns/mult) [{}]", t0.elapsed(), t0.elapsed().as_nanos() as f64 / 1e7, acc.bits());
    a = acc;
    let t0 = Instant::now();
    let mut acc2 = a;
    for _ in 0..10_000_000 {
        acc2 = f.sqr(acc2);
    }
    println!("10M sqrs n=49: {:.2?} [{}]", t0.elapsed(), acc2.bits());
}
