use extremal::assets;
use num_bigint::BigInt;
use std::time::Instant;

#[test]
fn time_leech() {
    let g = assets::leech();
    let t0 = Instant::now();
    let n = g.shell_count(&BigInt::from(4)).unwrap();
    println!("leech norm-4 count {} in {:?}", n, t0.elapsed());
    assert_eq!(n, 196560);
    let t0 = Instant::now();
    let s = g.enumerate_shell(&BigInt::from(4)).unwrap();
    println!("leech norm-4 materialize {} in {:?}", s.len(), t0.elapsed());
    let t0 = Instant::now();
    let empty = g.shell_is_empty(&BigInt::from(2)).unwrap();
    println!("leech norm-2 empty={} in {:?}", empty, t0.elapsed());
}
