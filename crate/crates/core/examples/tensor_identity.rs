//! The Lyndon product formula for the Hilbert series of the tensor algebra.

use lyndon_hilbert::series::lyndon_identity_check;

fn main() -> lyndon_hilbert::Result<()> {
    for d in 1..=3 {
        let r = lyndon_identity_check(d, 10)?;
        println!("d = {d}: ok = {}", r.ok);
        println!("  1/(1 - {d}t)          = {}", r.rhs);
        println!("  prod 1/(1 - t^|u|)  = {}", r.lhs);
    }
    Ok(())
}
