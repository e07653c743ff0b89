//! Braided coproduct and antipode of bracket letters.

use lyndon_hilbert::freealg::BracketKind;
use lyndon_hilbert::{FieldSpec, FreeAlgebra, Preset, Word};

fn main() -> lyndon_hilbert::Result<()> {
    let space = Preset::parse("quantum-plane(q=2)")?.instantiate(FieldSpec::rationals())?;
    let alg = FreeAlgebra::new(space);

    let u = Word::parse("112")?;
    let x = alg.bracket(&u, BracketKind::Left)?;
    println!("[112] = {x}");
    println!("coproduct:");
    for (a, b, c) in alg.coproduct(&x)?.terms() {
        let show = |w: &Word| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.to_string()
            }
        };
        println!("  {c:>6} * {} (x) {}", show(a), show(b));
    }

    let s = alg.antipode(&x)?;
    let dbl = alg.bracket(&u, BracketKind::Double)?;
    println!("S([112])  = {s}");
    println!("[[112]]   = {dbl}");
    println!(
        "S([112]) == -[[112]]: {}",
        s == dbl.scale(&alg.scalar("-1")?)
    );
    Ok(())
}
