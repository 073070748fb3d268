//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

use gaq_core::Verifier;

fn main() {
    let verifier = Verifier::new();
    let claims = verifier.run_all();
    for c in &claims {
        println!("{c}");
    }
    let failed: Vec<usize> = claims.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", claims.len());
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
