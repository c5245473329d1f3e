//! Arithmetic in F_{3^4}: the chosen modulus, a generator, Fermat's little
//! theorem and a full pass over the field.

use weilzeta::ffield::{enumerate_field, make_field, DEFAULT_BUDGET};

fn main() -> weilzeta::Result<()> {
    let f = make_field(3, 4)?;
    println!("F_81 = F_3[x]/({:?})  (coefficients low to high)", f.modulus());

    let x = f.generator();
    let y = x.pow(5).add(&f.from_int(2))?;
    println!("x^5 + 2 = {y}");
    println!("(x^5 + 2)^-1 = {}", y.inv()?);
    println!("y * y^-1 = {}", y.mul(&y.inv()?)?);
    println!("y^81 == y: {}", y.pow(81) == y);

    // nonzero elements whose 16th power is 1
    let roots = enumerate_field(&f, DEFAULT_BUDGET)?
        .filter(|e| !e.is_zero() && e.pow(16) == f.one())
        .count();
    println!("16th roots of unity: {roots}");
    Ok(())
}
