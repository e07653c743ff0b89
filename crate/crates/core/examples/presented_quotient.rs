//! A quotient by explicit relations, with the coideal check and normal forms.

use std::sync::Arc;

use lyndon_hilbert::{FieldSpec, FreeAlgebra, GradedQuotient, Preset, QuotientKind};

fn main() -> lyndon_hilbert::Result<()> {
    let space = Preset::parse("quantum-plane")?.instantiate(FieldSpec::rationals())?;
    let alg = Arc::new(FreeAlgebra::new(space));
    let rels = vec![
        alg.parse_word("11")?,
        alg.parse_word("22")?,
        alg.parse_word("12")?.checked_sub(&alg.parse_word("21")?)?,
    ];
    let r = GradedQuotient::new(alg.clone(), QuotientKind::Presented(rels), 4)?;
    println!("dims {}", r.hilbert_series(4)?);
    for n in 0..=2 {
        let g = r.graded_data(n)?;
        let basis: Vec<String> = g.basis.iter().map(|w| format!("x{w}")).collect();
        println!("degree {n}: basis {}", basis.join(", "));
    }
    println!("x12 reduces to {}", r.project(&alg.parse_word("12")?)?);

    let bad = GradedQuotient::new(
        alg.clone(),
        QuotientKind::Presented(vec![alg.parse_word("12")?]),
        4,
    );
    println!(
        "x12 alone: {}",
        bad.err().map(|e| e.to_string()).unwrap_or_default()
    );
    Ok(())
}
