//! Bracket letters and the monotonic basis expansion in a diagonally braided
//! free algebra.

use lyndon_hilbert::freealg::BracketKind;
use lyndon_hilbert::{FieldSpec, FreeAlgebra, Preset, Word};

fn main() -> lyndon_hilbert::Result<()> {
    let space = Preset::parse("cartan-A2(q=3)")?.instantiate(FieldSpec::rationals())?;
    let alg = FreeAlgebra::new(space);

    for u in ["12", "112", "1122", "122"] {
        let w = Word::parse(u)?;
        let left = alg.bracket(&w, BracketKind::Left)?;
        let double = alg.bracket(&w, BracketKind::Double)?;
        let (lead, c) = alg.leading_vector(&left)?;
        println!("[{u}]  = {left}");
        println!("[[{u}]] = {double}");
        println!("  leading word {lead} with coefficient {c}");
    }

    let x = alg.parse_word("1212")?;
    println!("x_1212 in the monotonic basis:");
    for (sw, c) in alg.expand_monotonic_basis(&x)? {
        println!("  {c:>8}  {sw}");
    }
    Ok(())
}
