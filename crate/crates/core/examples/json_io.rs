//! Reading and writing complexes and perversities as JSON.

use perverse::{fixtures, io};

fn main() -> perverse::Result<()> {
    let k = fixtures::pinched_torus();
    let text = io::complex_to_json(&k);
    println!("{text}");
    assert_eq!(io::complex_from_json(&text)?, k);

    let p = io::parse_perversity(r#"{"flavor":"gm","values":[0,1,1]}"#)?;
    println!("{}", serde_json::to_string(&p).unwrap());
    Ok(())
}
