use num_bigint::BigInt;
use num_rational::BigRational;
use std::time::Instant;
use rand::Rng;

fn main() {
    let mut rng = pkahler::grassmann::seeded_rng(1);
    // typical tableau: 17 x 105, 300-bit-ish entries
    let big = |rng: &mut rand_chacha::ChaCha8Rng| {
        let n: i128 = rng.gen();
        let d: i128 = rng.gen::<i128>().abs() | 1;
        BigRational::new(BigInt::from(n) * BigInt::from(n), BigInt::from(d))
    };
    let mut rows: Vec<Vec<BigRational>> = (0..17).map(|_| (0..105).map(|_| big(&mut rng)).collect()).collect();
    let t0 = Instant::now();
    for piv in 0..150 {
        let r = piv % 17;
        let j = piv % 105;
        if rows[r][j].numer().sign() == num_bigint::Sign::NoSign { continue; }
        let prow = rows[r].clone();
        let pv = prow[j].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r { continue; }
            let f = &row[j] / &pv;
            if f.numer().sign() == num_bigint::Sign::NoSign { continue; }
            for t in 0..105 {
                let sub = &f * &prow[t];
                row[t] -= sub;
            }
        }
    }
    println!("150 pivots on 17x105 ~256-bit: {:?}", t0.elapsed());
}
