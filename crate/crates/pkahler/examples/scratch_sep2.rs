use pkahler::exterior::{sigma, Form, MultiIndex};
use pkahler::positivity::*;

fn idx(v: &[usize]) -> MultiIndex { MultiIndex::new(v.to_vec()).unwrap() }

fn main() {
    // Ω = σ₂(φ₁₂∧φ̄₁₂ − φ₃₄∧φ̄₃₄): not even weakly positive; separators
    // exist among PSD (k,k)-forms, so certification must succeed
    let mut f = Form::zero(4, 2, 2);
    f.add_coeff(idx(&[1, 2]), idx(&[1, 2]), sigma(2));
    f.add_coeff(idx(&[3, 4]), idx(&[3, 4]), -(sigma(2) * pkahler::Scalar::one()));
    match find_certified_separator(&f, 0) {
        Some((psi, lams)) => {
            let pairing = f.pair_top(&psi).unwrap();
            println!("certified: f(Ω,Ψ)={pairing}, {} multipliers", lams.len());
        }
        None => println!("no certificate (ascent problem)"),
    }
}
