use pkahler::exterior::{sigma, Form, MultiIndex};
use pkahler::positivity::*;
use pkahler::Scalar;
use std::time::Instant;

fn idx(v: &[usize]) -> MultiIndex { MultiIndex::new(v.to_vec()).unwrap() }

fn main() {
    for (num, den) in [(1i64, 1i64), (9, 10), (3, 4), (1, 2)] {
        let mut f = Form::zero(4, 2, 2);
        for i in MultiIndex::enumerate(4, 2) {
            f.add_coeff(i.clone(), i, sigma(2));
        }
        let t = Scalar::rat(num, den) * sigma(2);
        f.add_coeff(idx(&[1, 2]), idx(&[3, 4]), t.clone());
        f.add_coeff(idx(&[3, 4]), idx(&[1, 2]), t);
        let t0 = Instant::now();
        let pos = is_positive(&f).unwrap();
        let sep = find_certified_separator(&f, 0);
        match &sep {
            Some((psi, lams)) => {
                let pairing = f.pair_top(psi).unwrap();
                println!("t={num}/{den}: P={:?}, certified separator found, f(Ω,Ψ)={} lams={} [{} ms]",
                    pos.status, pairing, lams.len(), t0.elapsed().as_millis());
            }
            None => println!("t={num}/{den}: P={:?}, no certified separator [{} ms]", pos.status, t0.elapsed().as_millis()),
        }
    }
}
