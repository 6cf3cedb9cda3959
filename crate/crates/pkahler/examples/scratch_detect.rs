use pkahler::detector::*;
use pkahler::model::{bundled_model, GradedComplex};
use std::time::Instant;

fn main() {
    let cfg = DetectorConfig::default();
    for (model, p, kind) in [
        ("torus2", 1usize, ClassKind::PKahler),
        ("torus3", 2, ClassKind::PPluriclosed),
        ("iwasawa", 2, ClassKind::PPluriclosed),
        ("sl2c", 2, ClassKind::PPluriclosed),
        ("sl2c", 2, ClassKind::ExactDdbar),
        ("sl2c", 1, ClassKind::PKahler),
        ("iwasawa", 1, ClassKind::PKahler),
        ("sl2c", 1, ClassKind::ExactBoundary),
        ("torus2", 1, ClassKind::ExactDdbar),
    ] {
        let c = GradedComplex::build(bundled_model(model).unwrap()).unwrap();
        let t = Instant::now();
        let class = ClassId { kind, p };
        let primal = find_primal(&c, class, &cfg).unwrap();
        let dual = find_dual(&c, class, &cfg).unwrap();
        let pv = match &primal { Certificate::Primal(pc) => format!("Primal(margin={:.4}, iters={})", pc.margin, pc.iterations), Certificate::Indeterminate(i) => format!("Indet(refuted={}, {})", i.primal_refuted, i.detail), _ => "?".into() };
        let dv = match &dual { Certificate::Dual(dc) => format!("Dual({} atoms, iters={})", dc.atoms.len(), dc.iterations), Certificate::Indeterminate(i) => format!("Indet({})", i.detail), _ => "?".into() };
        println!("{model} p={p} {kind}: primal={pv} | dual={dv} [{} ms]", t.elapsed().as_millis());
    }
}
