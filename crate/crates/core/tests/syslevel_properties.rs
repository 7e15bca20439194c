use gfdm::channel::TdlProfile;
use gfdm::fec::McsSpec;
use gfdm::linkquality::{BlerLut, LinkAbstraction, LutPoint, SiTable};
use gfdm::modem::{GfdmConfig, GfdmModem};
use gfdm::sim::LinkSimulator;
use gfdm::syslevel::{
    drop_ues, evaluate_link_abstraction, evaluate_link_bitlevel, generate_deployment, Case, SystemModel,
    SystemParams,
};

/// Synthetic waterfall: BLER halves every 0.25 dB above `start`.
fn lut(start: f64) -> BlerLut {
    let points = (0..40)
        .map(|i| {
            let errors = (2000.0 * 0.5f64.powi(i)).round() as u64;
            LutPoint {
                snr_db: start + 0.25 * i as f64,
                packets: 2000,
                block_errors: errors,
                bits: 2000 * 736,
                bit_errors: errors * 50,
            }
        })
        .collect();
    BlerLut::new("synthetic", points).unwrap()
}

fn model(profile: TdlProfile) -> SystemModel {
    let config = GfdmConfig::system_default();
    let alloc = GfdmModem::new(config.clone()).unwrap().allocation().to_vec();
    let dep = generate_deployment(SystemParams::default()).unwrap();
    SystemModel::new(dep, config, alloc, profile, 7).unwrap()
}

#[test]
fn distances_follow_area_law() {
    let p = SystemParams::default();
    let dep = generate_deployment(p.clone()).unwrap();
    let mut d: Vec<f64> = drop_ues(100_000, &dep, 99).iter().map(|u| u.distance_m).collect();
    d.sort_by(f64::total_cmp);
    let (a, b) = (p.min_distance_m, p.max_distance_m);
    let n = d.len() as f64;
    let ks = d
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let f = (r * r - a * a) / (b * b - a * a);
            (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
        })
        .fold(0.0, f64::max);
    assert!(ks < 0.01, "KS distance {ks}");
}

#[test]
fn flat_response_collapses_to_the_lut() {
    let m = model(TdlProfile::new(vec![0], vec![1.0]).unwrap());
    let table = SiTable::standard(2).unwrap();
    let lut = lut(-30.0);
    let abs = [LinkAbstraction::new(table, &lut, 1.0)];
    let dep = generate_deployment(SystemParams::default()).unwrap();
    for ue in drop_ues(20, &dep, 3) {
        let v = m.sinr(&ue, 0, Case::Snr).unwrap();
        let g = v.as_slice()[0];
        assert!(v.as_slice().iter().all(|x| (x / g - 1.0).abs() < 1e-9));
        let est = evaluate_link_abstraction(&m, &ue, &abs, 1, Case::Snr).unwrap();
        let direct = lut.predict_bler(10.0 * g.log10());
        assert!((est[0].per - direct).abs() < 1e-6, "{} vs {direct}", est[0].per);
        assert!((est[0].esinr_db - 10.0 * g.log10()).abs() < 0.01);
    }
}

#[test]
fn interference_never_lowers_per() {
    let m = model(TdlProfile::urban_default());
    let lut16 = lut(-5.0);
    let lut64 = lut(5.0);
    let abs = [
        LinkAbstraction::new(SiTable::standard(4).unwrap(), &lut16, 1.0),
        LinkAbstraction::new(SiTable::standard(6).unwrap(), &lut64, 1.0),
    ];
    let dep = generate_deployment(SystemParams::default()).unwrap();
    for ue in drop_ues(30, &dep, 8) {
        let snr = evaluate_link_abstraction(&m, &ue, &abs, 20, Case::Snr).unwrap();
        let sinr = evaluate_link_abstraction(&m, &ue, &abs, 20, Case::Sinr).unwrap();
        for (a, b) in snr.iter().zip(&sinr) {
            assert!(b.per >= a.per, "ue {}: {} < {}", ue.id, b.per, a.per);
            assert!(b.esinr_db <= a.esinr_db + 1e-9);
        }
    }
}

#[test]
fn bitlevel_path_is_deterministic_and_shares_draws() {
    let m = model(TdlProfile::urban_default());
    let sims = [LinkSimulator::new(GfdmConfig::system_default(), McsSpec::QAM64_2_3).unwrap()];
    let dep = generate_deployment(SystemParams::default()).unwrap();
    let ue = &drop_ues(1, &dep, 5)[0];
    let a = evaluate_link_bitlevel(&m, ue, &sims, 2, 1, Case::Sinr).unwrap();
    let b = evaluate_link_bitlevel(&m, ue, &sims, 2, 1, Case::Sinr).unwrap();
    assert_eq!(a, b);
    assert_eq!(a[0].packets, 2);
    // allocated entries of the full-band noise are the reciprocal SINRs
    let v = m.sinr(ue, 1, Case::Sinr).unwrap();
    let nv = m.equalized_noise(ue, 1, Case::Sinr);
    for (j, &f) in m.allocation().iter().enumerate() {
        assert!((nv[f] * v.as_slice()[j] - 1.0).abs() < 1e-9);
    }
}
