//! Hilbert series of Nichols algebras of the built-in braided spaces.

use std::sync::Arc;

use lyndon_hilbert::{FreeAlgebra, GradedQuotient, Preset, QuotientKind};

fn main() -> lyndon_hilbert::Result<()> {
    for (name, trunc) in [
        ("quantum-plane", 4),
        ("cartan-A2", 8),
        ("cartan-A2(order=3)", 8),
        ("s3-rack", 5),
    ] {
        let preset = Preset::parse(name)?;
        let field = preset.default_field(trunc);
        let alg = Arc::new(FreeAlgebra::new(preset.instantiate(field)?));
        let r = GradedQuotient::new(alg, QuotientKind::Nichols, trunc)?;
        let s = r.hilbert_series(trunc)?;
        println!(
            "{name:<20} over {field}: {s}  (sum {})",
            s.coefficient_sum()
        );
    }
    Ok(())
}
