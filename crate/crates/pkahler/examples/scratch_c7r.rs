use pkahler::exterior::{sigma, Form, MultiIndex};
use pkahler::positivity::*;
use pkahler::grassmann::seeded_rng;
use pkahler::Scalar;
use rand::Rng;
use std::time::Instant;

fn main() {
    let mut rng = seeded_rng(42);
    let idxs = MultiIndex::enumerate(4, 2);
    let mut found = 0;
    for trial in 0..12 {
        // random Gram-based PSD evaluation matrix => form in P²
        let g: Vec<Vec<Scalar>> = (0..6).map(|_| (0..6).map(|_| Scalar::new(
            num_rational::BigRational::from_integer(rng.gen_range(-2i64..=2).into()),
            num_rational::BigRational::from_integer(rng.gen_range(-2i64..=2).into()),
        )).collect()).collect();
        let mut f = Form::zero(4, 2, 2);
        for (a, i) in idxs.iter().enumerate() {
            for (b, j) in idxs.iter().enumerate() {
                // E[a][b] = Σ_r conj(g[r][a]) g[r][b]; coeff = σ₂·E[a][b]
                let mut e = Scalar::zero();
                for r in 0..6 {
                    e = e + &g[r][a].conj() * &g[r][b];
                }
                f.add_coeff(i.clone(), j.clone(), sigma(2) * e);
            }
        }
        if !f.is_real() { println!("trial {trial}: not real?!"); continue; }
        let pos = is_positive(&f).unwrap();
        if pos.status != ConeStatus::In { println!("trial {trial}: not P"); continue; }
        let t0 = Instant::now();
        let sep = find_certified_separator(&f, 7);
        match sep {
            Some((psi, _)) => {
                let pairing = f.pair_top(&psi).unwrap();
                println!("trial {trial}: P=IN certified separator, f(Ω,Ψ)={} [{} ms]", pairing, t0.elapsed().as_millis());
                found += 1;
                if found >= 4 { break; }
            }
            None => println!("trial {trial}: P=IN, no certified separator [{} ms]", t0.elapsed().as_millis()),
        }
    }
}
