//! y^2 = x^3 - x has complex multiplication by Z[i]: its Frobenius trace is
//! read off a primary Gaussian prime, no counting needed.

use num_bigint::BigInt;
use weilzeta::cmcurve::{cm_sweep, counts_over_extensions, frobenius_eigenvalues, primary_gaussian_prime};

fn main() -> weilzeta::Result<()> {
    for p in [5u64, 13, 17, 29] {
        let pi = primary_gaussian_prime(p)?.expect("split prime");
        println!("p = {p:>2}: π = {pi}, N(π) = {}", pi.norm());
    }

    let rows = cm_sweep(5, 200)?;
    let bad = rows.iter().filter(|r| !r.agrees()).count();
    println!("{} primes up to 200, {bad} disagreements", rows.len());
    for r in rows.iter().take(6) {
        println!("  p = {:>3}  #E = {:>3}  a = {:>3}", r.p, r.count, r.trace);
    }

    let (a, q) = (BigInt::from(-2), BigInt::from(5));
    let f = frobenius_eigenvalues(&a, &q);
    println!("p = 5: λ = {} and {}", f.lambda1, f.lambda2);
    println!("#E(F_5^m), m = 1..5: {:?}", counts_over_extensions(&a, &q, 5));
    Ok(())
}
