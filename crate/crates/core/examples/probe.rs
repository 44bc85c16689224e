use qtele_core::entanglement::*;
use qtele_core::linalg::*;
use qtele_core::states::*;
use qtele_core::rng::*;
fn main() {
    let t = std::time::Instant::now();
    let mut worst: f64 = 0.0;
    for s in 0..60u64 {
        let rank = 1 + (s as usize % 4);
        let mut rng = rng_from_seed(child_seed(99, s));
        let g = haar_random_unitary::<f64>(4, &mut rng);
        let ws: Vec<f64> = (0..rank).map(|i| 1.0 + (i as f64 * 0.37 + s as f64 * 0.11).sin().abs()).collect();
        let tot: f64 = ws.iter().sum();
        let members: Vec<(f64, StateVector<f64>)> = (0..rank).map(|i| (ws[i]/tot, StateVector::new(g.column(i), DimSpec::bipartite(2,2)).unwrap())).collect();
        let rho = DensityMatrix::mixture(&members).unwrap();
        let o = concurrence_oracle_2q(&rho).unwrap();
        let r = entanglement_of_formation(&rho, &EofConfig::default()).unwrap();
        worst = worst.max((r.value - o).abs());
        if (r.value - o).abs() > 1e-4 { println!("s={s} rank={rank} oracle={o:.6} eof={:.6} conv={}", r.value, r.converged); }
    }
    println!("worst {worst:e} {:?}", t.elapsed());
}
