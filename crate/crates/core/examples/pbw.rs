//! PBW generators with heights, and the series they rebuild.

use std::sync::Arc;

use lyndon_hilbert::{FreeAlgebra, GradedQuotient, Preset, QuotientKind};

fn main() -> lyndon_hilbert::Result<()> {
    let trunc = 8;
    for name in ["quantum-plane", "cartan-A2", "cartan-A2(order=3)"] {
        let preset = Preset::parse(name)?;
        let alg = Arc::new(FreeAlgebra::new(
            preset.instantiate(preset.default_field(trunc))?,
        ));
        let r = GradedQuotient::new(alg, QuotientKind::Nichols, trunc)?;
        let p = r.pbw_data(trunc)?;
        println!("{name}");
        for g in &p.generators {
            println!("  [{}] height {}", g.u, g.height);
        }
        println!("  rebuilt  {}", p.series());
        println!("  direct   {}", r.hilbert_series(trunc)?);
    }
    Ok(())
}
