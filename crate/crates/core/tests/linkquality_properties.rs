use gfdm::channel::SinrVector;
use gfdm::fec::Constellation;
use gfdm::linkquality::{
    compute_si, esinr_eesm, esinr_miesm, rbir, BlerLut, GammaCodeMode, LutPoint, SiTable,
};
use gfdm::rng::{complex_normal, stream};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use proptest::prelude::*;

/// Gauss-Hermite rule from the eigen-decomposition of the Jacobi matrix.
fn golub_welsch(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut j = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        let b = (i as f64 / 2.0).sqrt();
        j[(i, i - 1)] = b;
        j[(i - 1, i)] = b;
    }
    let eig = SymmetricEigen::new(j);
    let sp = std::f64::consts::PI.sqrt();
    let w = (0..n).map(|i| sp * eig.eigenvectors[(0, i)].powi(2)).collect();
    (eig.eigenvalues.iter().cloned().collect(), w)
}

/// Two-dimensional tensor-product evaluation of the symbol information,
/// directly over the complex constellation.
fn si_tensor(gamma: f64, m: usize, nodes: usize) -> f64 {
    let c = Constellation::qam(m).unwrap();
    let pts = c.points();
    let (t, w) = golub_welsch(nodes);
    let sigma = gamma.recip().sqrt();
    let mut acc = 0.0;
    for &x in pts {
        for (ti, wi) in t.iter().zip(&w) {
            for (tq, wq) in t.iter().zip(&w) {
                let z = Complex64::new(ti * sigma, tq * sigma);
                let s: f64 = pts
                    .iter()
                    .map(|&xp| (-((x - xp + z).norm_sqr() - z.norm_sqr()) * gamma).exp())
                    .sum();
                acc += wi * wq / std::f64::consts::PI * s.log2();
            }
        }
    }
    m as f64 - acc / pts.len() as f64
}

#[test]
fn quadrature_matches_tensor_rule() {
    for m in [2usize, 4, 6] {
        for db in [-10.0, 0.0, 7.5, 15.0] {
            let g = 10f64.powf(db / 10.0);
            let a = compute_si(g, m).unwrap();
            let b = si_tensor(g, m, 64);
            assert!((a - b).abs() < 1e-9, "m={m} {db} dB: {a} vs {b}");
        }
    }
}

#[test]
fn qpsk_zero_db_matches_monte_carlo() {
    let c = Constellation::qam(2).unwrap();
    let pts = c.points().to_vec();
    let mut rng = stream(99, &[1]);
    let draws = 10_000_000u64;
    let mut acc = 0.0;
    for i in 0..draws {
        let x = pts[(i % 4) as usize];
        let z = complex_normal(&mut rng, 1.0);
        let s: f64 = pts.iter().map(|&xp| (-((x - xp + z).norm_sqr() - z.norm_sqr())).exp()).sum();
        acc += s.log2();
    }
    let mc = 2.0 - acc / draws as f64;
    let q = compute_si(1.0, 2).unwrap();
    assert!((mc - q).abs() < 1e-3, "{mc} vs {q}");
}

#[test]
fn rbir_two_point_example() {
    let t = SiTable::standard(2).unwrap();
    let v = SinrVector::new(vec![1.0, 100.0]).unwrap();
    let want = (si_tensor(1.0, 2, 64) + si_tensor(100.0, 2, 64)) / 4.0;
    assert!((rbir(&v, t, 1.0).unwrap() - want).abs() < 1e-9);
}

#[test]
fn si_is_monotone_and_bounded() {
    for m in [2usize, 4, 6] {
        let t = SiTable::standard(m).unwrap();
        let mut last = 0.0;
        for i in 0..=1000 {
            let db = -40.0 + 0.09 * i as f64;
            let s = t.si(10f64.powf(db / 10.0));
            assert!(s >= last && s >= 0.0 && s <= m as f64, "m={m} {db}");
            last = s;
        }
    }
}

fn sinr_vec() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-25.0..50.0f64, 1..64).prop_map(|v| v.into_iter().map(|d| 10f64.powf(d / 10.0)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn miesm_between_extremes(g in sinr_vec(), m in prop::sample::select(vec![2usize, 4, 6])) {
        let t = SiTable::standard(m).unwrap();
        let v = SinrVector::new(g.clone()).unwrap();
        let e = 10f64.powf(esinr_miesm(&v, t, 1.0, GammaCodeMode::SnrDomain).unwrap() / 10.0);
        let lo = g.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = g.iter().cloned().fold(0.0, f64::max);
        prop_assert!(e >= lo && e <= hi);
    }

    #[test]
    fn miesm_and_eesm_permutation_invariant(g in sinr_vec(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let t = SiTable::standard(4).unwrap();
        let mut p = g.clone();
        p.shuffle(&mut stream(seed, &[]));
        let a = SinrVector::new(g).unwrap();
        let b = SinrVector::new(p).unwrap();
        let ea = esinr_miesm(&a, t, 1.0, GammaCodeMode::SnrDomain).unwrap();
        let eb = esinr_miesm(&b, t, 1.0, GammaCodeMode::SnrDomain).unwrap();
        prop_assert!((ea - eb).abs() < 1e-9);
        prop_assert!((esinr_eesm(&a, 2.5).unwrap() - esinr_eesm(&b, 2.5).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn raising_one_sinr_never_lowers_esinr(g in sinr_vec(), idx in any::<prop::sample::Index>(), up in 0.0..20.0f64) {
        let t = SiTable::standard(6).unwrap();
        let mut h = g.clone();
        let i = idx.index(h.len());
        h[i] *= 10f64.powf(up / 10.0);
        let a = esinr_miesm(&SinrVector::new(g).unwrap(), t, 1.0, GammaCodeMode::SnrDomain).unwrap();
        let b = esinr_miesm(&SinrVector::new(h).unwrap(), t, 1.0, GammaCodeMode::SnrDomain).unwrap();
        prop_assert!(b >= a - 1e-12);
    }

    #[test]
    fn eesm_below_arithmetic_mean(g in sinr_vec(), beta in 0.1..100.0f64) {
        let mean = g.iter().sum::<f64>() / g.len() as f64;
        let lo = g.iter().cloned().fold(f64::INFINITY, f64::min);
        let e = 10f64.powf(esinr_eesm(&SinrVector::new(g).unwrap(), beta).unwrap() / 10.0);
        prop_assert!(e <= mean * (1.0 + 1e-12));
        prop_assert!(e >= lo * (1.0 - 1e-12));
    }

    #[test]
    fn predict_bler_non_increasing(errs in prop::collection::vec(0u64..2000, 3..12)) {
        let pts: Vec<LutPoint> = errs.iter().enumerate().map(|(i, &e)| LutPoint {
            snr_db: i as f64 * 0.25, packets: 2000, block_errors: e, bits: 768_000, bit_errors: e * 3,
        }).collect();
        let lut = BlerLut::new("prop", pts).unwrap();
        let mut last = 1.0;
        for i in 0..400 {
            let b = lut.predict_bler(-1.0 + i as f64 * 0.01);
            prop_assert!(b <= last && (0.0..=1.0).contains(&b));
            last = b;
        }
    }
}
