use pkahler::exterior::{sigma, Form, MultiIndex};
use pkahler::positivity::*;
use pkahler::grassmann::{random_real_pp_form, seeded_rng};
use pkahler::Scalar;
use std::time::Instant;

fn idx(v: &[usize]) -> MultiIndex { MultiIndex::new(v.to_vec()).unwrap() }

fn main() {
    let cfg = ConeConfig::default();
    // structured family: Σ_I σ₂ φ_I∧φ̄_I + t(φ_{12}∧φ̄_{34} + φ_{34}∧φ̄_{12})
    for (num, den) in [(1i64, 1i64)] {
        let t0 = Instant::now();
        let mut f = Form::zero(4, 2, 2);
        for i in MultiIndex::enumerate(4, 2) {
            f.add_coeff(i.clone(), i, sigma(2));
        }
        let t = Scalar::rat(num, den) * sigma(2);
        f.add_coeff(idx(&[1, 2]), idx(&[3, 4]), t.clone());
        f.add_coeff(idx(&[3, 4]), idx(&[1, 2]), t);
        assert!(f.is_real());
        let pos = is_positive(&f).unwrap();
        let sp = is_strongly_positive(&f, &cfg).unwrap();
        println!("t={num}/{den}: P={:?} SP={:?} exact={} [{} ms]", pos.status, sp.status, sp.exact, t0.elapsed().as_millis());
        if let Some(Witness::Separator { psi, wp_margin }) = &sp.witness {
            let sep = f.pair_top(psi).unwrap();
            println!("   separator pairing {} wp_margin {:?} mult-cert {}", sep, wp_margin,
                wp_multiplier_certificate(psi).map(|c| verify_wp_multiplier_certificate(psi, &c)).unwrap_or(false));
        }
    }
    // benchmark SP on random n=2 p=1 forms
    let mut rng = seeded_rng(5);
    let t0 = Instant::now();
    let mut counts = [0usize; 3];
    for _ in 0..100 {
        let f = random_real_pp_form(2, 1, &mut rng, 4);
        let v = is_strongly_positive(&f, &cfg).unwrap();
        counts[match v.status { ConeStatus::In => 0, ConeStatus::Out => 1, ConeStatus::Indeterminate => 2 }] += 1;
    }
    println!("SP on 100 random n=2 forms: in/out/ind = {counts:?} in {:?}", t0.elapsed());
    // benchmark wp+p on random n=3 p=2
    let t0 = Instant::now();
    for _ in 0..200 {
        let f = random_real_pp_form(3, 2, &mut rng, 4);
        let _ = is_positive(&f).unwrap();
        let _ = is_weakly_positive(&f, &cfg).unwrap();
    }
    println!("P+WP on 200 random n=3 p=2 forms: {:?}", t0.elapsed());
}
