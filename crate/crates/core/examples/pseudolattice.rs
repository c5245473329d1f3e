//! Dense subgroups of R: Z + Z√2 with its endomorphism ring, a rank-4
//! lattice in Q(√2, √3) and a Frobenius count through a lattice matrix.

use num_bigint::BigInt;
use num_rational::BigRational;
use weilzeta::algebraic::NumberField;
use weilzeta::arith::rat;
use weilzeta::poly::ZPoly;
use weilzeta::pseudolattice::{
    check_endo_homomorphism, parse_lattice, point_count_from_frobenius, FrobeniusAction, PseudoLattice,
};

fn main() -> weilzeta::Result<()> {
    let file = parse_lattice("field minpoly=-2,0,1\nroot in [1, 2]\ngen 1\ngen 0 1\n")?;
    let l = &file.lattice;
    let ring = l.endo_ring()?;
    println!("Z + Z√2: End rank {}", ring.rank);
    for b in &ring.basis {
        println!("  {b} -> {:?}", l.endo_matrix(b)?);
    }
    println!("  homomorphism law: {}", check_endo_homomorphism(l, &ring)?);
    let eps = BigRational::new(BigInt::from(1), BigInt::from(1_000_000));
    if let Some((c, x)) = l.density_witness(&eps)? {
        println!("  {c:?} -> {} (below 10^-6)", x.to_decimal(10));
    }

    // θ = √2 + √3 generates Q(√2, √3)
    let k = NumberField::new(&ZPoly::from_ints(&[1, 0, -10, 0, 1]), rat(3, 1), rat(4, 1))?;
    let t = k.theta();
    let s2 = t.pow(3).sub(&t.scale(&rat(9, 1)))?.scale(&rat(1, 2));
    let s3 = t.sub(&s2)?;
    let l4 = PseudoLattice::new(vec![k.from_int(1), s2.clone(), s3.clone(), s2.mul(&s3)?])?;
    println!("Z + Z√2 + Z√3 + Z√6: End rank {}", l4.endo_ring()?.rank);

    // E/F_5 has trace -2; ω is given as a matrix with char poly x^2 + 2x + 5
    let omega = FrobeniusAction::Matrix(vec![
        vec![BigInt::from(0), BigInt::from(-5)],
        vec![BigInt::from(1), BigInt::from(-2)],
    ]);
    println!("#E(F_5) = {}", point_count_from_frobenius(l, &omega, &BigInt::from(5))?);
    Ok(())
}
