//! Brute-force point counts: projective space, a parsed curve and the
//! quadratic-character shortcut for Weierstrass curves.

use weilzeta::variety::{count_series, ec_count, parse_variety, VarietySpec};

const CURVE: &str = "\
field p=7
ambient projective dim=2 vardim=1
poly X1^2*X2 - X0^3 - X0*X2^2 - X2^3
";

fn main() -> weilzeta::Result<()> {
    let budget = weilzeta::ffield::DEFAULT_BUDGET;
    let p2 = VarietySpec::projective_space(2, 2)?;
    println!("P^2 over F_2: {:?}", count_series(&p2, 4, budget)?.counts);

    let e = parse_variety(CURVE)?;
    let series = count_series(&e, 3, budget)?;
    println!("y^2 = x^3 + x + 1 over F_7: {:?}", series.counts);
    println!("character sum gives N_1 = {}", ec_count(1, 1, 7)?);

    match count_series(&e, 6, 1_000_000) {
        Ok(s) => println!("{:?}", s.counts),
        Err(err) => println!("m = 6 refused: {err}"),
    }
    Ok(())
}
