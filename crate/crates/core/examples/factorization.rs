//! Factorization of a Hilbert series into subquotient series indexed by Lyndon
//! words, and the positivity check for a single hard letter.

use std::sync::Arc;

use lyndon_hilbert::{FreeAlgebra, GradedQuotient, PowerSeries, Preset, QuotientKind, Word};

fn main() -> lyndon_hilbert::Result<()> {
    let trunc = 8;
    let preset = Preset::parse("cartan-A2(order=3)")?;
    let alg = Arc::new(FreeAlgebra::new(
        preset.instantiate(preset.default_field(trunc))?,
    ));
    let r = GradedQuotient::new(alg, QuotientKind::Nichols, trunc)?;

    let rep = r.verify_factorization(trunc)?;
    println!("H(t)      = {}", rep.lhs);
    for f in rep
        .factors
        .iter()
        .filter(|f| f.series != PowerSeries::one(trunc))
    {
        println!("  u = {:<4} {}", f.u.to_string(), f.series);
    }
    println!("product   = {}", rep.rhs);
    println!("ok = {}", rep.ok);

    let n = r.nonneg_quotient_check(&Word::parse("12")?, trunc)?;
    println!(
        "u = 12: q = {}, height {:?}",
        n.q,
        n.height.map(|h| h.to_string())
    );
    println!("  subquotient     {}", n.factor);
    println!("  Nichols series  {}", n.nichols);
    println!("  quotient        {}  ok = {}", n.quotient, n.ok);
    Ok(())
}
