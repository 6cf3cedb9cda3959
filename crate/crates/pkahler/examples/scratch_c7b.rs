use pkahler::exterior::{sigma, Form, MultiIndex};
use pkahler::positivity::*;
use pkahler::Scalar;
use std::time::Instant;

fn idx(v: &[usize]) -> MultiIndex { MultiIndex::new(v.to_vec()).unwrap() }

fn main() {
    let mut cfg = ConeConfig::default();
    cfg.max_iter = 5;
    let mut f = Form::zero(4, 2, 2);
    for i in MultiIndex::enumerate(4, 2) {
        f.add_coeff(i.clone(), i, sigma(2));
    }
    let t = Scalar::rat(1, 2) * sigma(2);
    f.add_coeff(idx(&[1, 2]), idx(&[3, 4]), t.clone());
    f.add_coeff(idx(&[3, 4]), idx(&[1, 2]), t);
    let t0 = Instant::now();
    let sp = is_strongly_positive(&f, &cfg).unwrap();
    println!("max_iter=5: SP={:?} [{} ms]", sp.status, t0.elapsed().as_millis());
}
