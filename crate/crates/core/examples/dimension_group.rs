//! The dimension group of [[3,1],[1,1]]: Perron-Frobenius data, exact
//! traces, the shift, and the unit question for λ/2.

use num_bigint::BigInt;
use weilzeta::dimgroup::{hecke_companion, DimElement, DimensionGroup};

fn main() -> weilzeta::Result<()> {
    let t = hecke_companion(&BigInt::from(4), &BigInt::from(2))?;
    println!("companion of (a, ℓ) = (4, 2): {:?}", t.matrix());
    let g = DimensionGroup::build(t)?;
    println!("λ = {} ≈ {}", g.lambda(), g.lambda().to_decimal(20));
    for (i, w) in g.eigenvector().iter().enumerate() {
        println!("w_{} = {w}", i + 1);
    }

    let x = DimElement::new(&[2, -1], 1);
    let up = g.raise(&x);
    println!("τ(x) = {}", g.trace_value(&x)?);
    println!("τ(Tx, k+1) = {}", g.trace_value(&up)?);
    println!("x ~ (Tx, k+1): {}", g.equivalent(&x, &up)?);
    let shifted = g.trace_value(&g.shift(&x))?;
    println!("τ(shift x) = λ τ(x): {}", shifted == g.lambda().mul(&g.trace_value(&x)?)?);

    let u = g.unit_decomposition(&BigInt::from(2))?;
    println!("λ/2 has minimal polynomial {} -> unit: {}", u.minpoly.display_in("x"), u.verified);
    println!("x^2 - 4x + 2 top root: {}", g.frobenius_shift_matches_eigenvalue(&BigInt::from(4), &BigInt::from(2))?);

    match hecke_companion(&BigInt::from(2), &BigInt::from(2)) {
        Ok(m) => println!("{:?}", m.matrix()),
        Err(e) => println!("(2, 2): {e}"),
    }
    Ok(())
}
