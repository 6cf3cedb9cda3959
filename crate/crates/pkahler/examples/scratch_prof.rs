use pkahler::detector::*;
use pkahler::grassmann::{minimize_eval, SearchConfig};
use pkahler::exterior::Form;
use pkahler::model::{bundled_model, GradedComplex};
use std::time::Instant;

fn main() {
    // isolate: how slow is one minimize_eval at n=3, p=2?
    let g = Form::metric_power(3, 2);
    let t = Instant::now();
    let r = minimize_eval(&g, &SearchConfig::default());
    println!("minimize_eval(γ², 64 starts): {:?} -> {}", t.elapsed(), r.value);

    let c = GradedComplex::build(bundled_model("torus3").unwrap()).unwrap();
    let cfg = DetectorConfig::default();
    let t = Instant::now();
    let class = ClassId { kind: ClassKind::PPluriclosed, p: 2 };
    let primal = find_primal(&c, class, &cfg).unwrap();
    if let Certificate::Primal(pc) = &primal {
        println!("primal done iters={} constraints={} in {:?}", pc.iterations, pc.constraints, t.elapsed());
    }
}
