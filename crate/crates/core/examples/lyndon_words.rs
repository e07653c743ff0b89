//! Lyndon words, Chen-Fox-Lyndon factorization and Shirshov splits.

use lyndon_hilbert::{cfl_factorize, enumerate_lyndon, is_lyndon, shirshov, Word};

fn main() -> lyndon_hilbert::Result<()> {
    let words = enumerate_lyndon(2, 5)?;
    let list: Vec<String> = words.iter().map(Word::to_string).collect();
    println!(
        "Lyndon words over 2 letters up to length 5: {}",
        list.join(" ")
    );

    for s in ["12122", "1212"] {
        println!("is_lyndon({s}) = {}", is_lyndon(&Word::parse(s)?)?);
    }

    let w = Word::parse("1231233122123")?;
    let f = cfl_factorize(&w);
    let parts: Vec<String> = f.factors().iter().map(|u| format!("({u})")).collect();
    println!("{w} = {}", parts.join(""));

    let sd = shirshov(&Word::parse("1231233")?)?;
    println!("shirshov(1231233) = ({}, {})", sd.left, sd.right);
    Ok(())
}
