//! From counts to a checked Weil factorization, for a plane cubic and for
//! a quadric surface.

use weilzeta::variety::{parse_variety, VarietySpec};
use weilzeta::weil::{run_weil, WeilConfig};
use weilzeta::zeta::{pade_reconstruct, point_count_from_zeta, zeta_series};

fn show(name: &str, v: &VarietySpec, m_max: usize) -> weilzeta::Result<()> {
    let cfg = WeilConfig {
        m_max,
        ..WeilConfig::default()
    };
    let out = run_weil(v, &cfg)?;
    println!("{name}");
    println!("  counts  {:?}", out.counts.counts);
    println!("  Z(t)    {}", out.zeta);
    for (i, p) in out.factorization.factors.iter().enumerate() {
        println!("  P_{i}     {p}");
    }
    match &out.fe {
        Ok(sign) => println!("  FE sign {sign}"),
        Err(e) => println!("  FE      {e}"),
    }
    for (i, r) in &out.rh {
        println!("  |α| dev on P_{i}: {:.2e}", r.max_modulus_deviation);
    }
    println!("  pass    {}", out.pass());
    Ok(())
}

fn main() -> weilzeta::Result<()> {
    let cubic = parse_variety(
        "field p=11\nambient projective dim=2 vardim=1\npoly X1^2*X2 - X0^3 - 3*X0*X2^2 - 5*X2^3\n",
    )?;
    show("y^2 = x^3 + 3x + 5 over F_11", &cubic, 2)?;

    let quadric = parse_variety("field p=3\nambient projective dim=3 vardim=2\npoly X0*X1 - X2*X3\n")?;
    show("xy = zw over F_3", &quadric, 4)?;

    // the three steps by hand, on the counts of P^1 over F_4
    let counts = weilzeta::variety::PointCountSeries::from_u64(4, &[5, 17, 65]);
    let z = pade_reconstruct(&zeta_series(&counts)?, 0, 2)?;
    println!("P^1/F_4: Z = {z}, N_5 = {}", point_count_from_zeta(&z, 5)?);
    Ok(())
}
