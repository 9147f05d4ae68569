mod common;

use common::*;
use isac_channel::comm::{comm_cir_with, static_cluster_path, CommRealization, RaySet};
use isac_channel::geometry::{MotionState, Vec3};
use isac_channel::path::{PathSource, TapMatrix};
use isac_channel::presets;
use isac_channel::sensing::sensing_cir;
use isac_channel::stats::{
    cross_channel_correlation, frequency_response, narrowband, receive_lags, spatial_ccf, temporal_acf, Component,
    CorrelationOptions, CrossLink, Ensemble, PathCoupling,
};
use num_complex::Complex64;

fn mean_and_se(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let v = x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (v / n).sqrt())
}

#[test]
fn normalized_ray_sums_are_zero_mean_unit_power() {
    let mut s = empty_bistatic();
    s.scatterers.push(cluster("c", [80.0, 40.0, 6.0], 0.0, 0.0, 1.0, 5.0));
    let k = s.carrier.wavenumber();
    let sums: Vec<Complex64> = (0..10_000)
        .map(|n| {
            let rays = RaySet::draw(&s.scatterers[0], &s, 17, n, 0).unwrap();
            let path = static_cluster_path(&s, &rays, 0.0).unwrap();
            path.amplitude(k, Vec3::ZERO, Vec3::ZERO) / path.gain.sqrt()
        })
        .collect();
    let (re, se_re) = mean_and_se(&sums.iter().map(|c| c.re).collect::<Vec<_>>());
    let (im, se_im) = mean_and_se(&sums.iter().map(|c| c.im).collect::<Vec<_>>());
    assert!(re.abs() < 3.0 * se_re && im.abs() < 3.0 * se_im, "{re} {im}");
    let (p, se_p) = mean_and_se(&sums.iter().map(|c| c.norm_sqr()).collect::<Vec<_>>());
    assert!((p - 1.0).abs() < 3.0 * se_p, "{p} ± {se_p}");
}

/// Naive estimator: regenerates full CIRs per draw and correlates narrowband gains.
fn naive_ccf(
    s: &isac_channel::scenario::Scenario,
    t: f64,
    q_offsets: &[usize],
    draws: std::ops::Range<u64>,
) -> (Vec<f64>, Vec<f64>) {
    let batches = 20;
    let per = (draws.end - draws.start) / batches;
    let mut batch_rho = vec![Vec::new(); q_offsets.len()];
    for b in 0..batches {
        let mut num = vec![Complex64::new(0.0, 0.0); q_offsets.len()];
        let mut den_ref = 0.0;
        let mut den = vec![0.0; q_offsets.len()];
        for n in draws.start + b * per..draws.start + (b + 1) * per {
            let r = CommRealization::draw_indexed(s, s.seed, n, 0).unwrap();
            let cir = comm_cir_with(s, &r, t).unwrap();
            let h = |q: usize| {
                cir.pair(1, q)
                    .iter()
                    .filter(|tap| tap.source != PathSource::LineOfSight)
                    .map(|tap| tap.amplitude)
                    .sum::<Complex64>()
            };
            let h0 = h(1);
            den_ref += h0.norm_sqr();
            for (j, &dq) in q_offsets.iter().enumerate() {
                let hj = h(1 + dq);
                num[j] += h0.conj() * hj;
                den[j] += hj.norm_sqr();
            }
        }
        for j in 0..q_offsets.len() {
            batch_rho[j].push((num[j] / (den_ref * den[j]).sqrt()).norm());
        }
    }
    batch_rho.iter().map(|b| mean_and_se(b)).unzip()
}

#[test]
fn ccf_matches_naive_monte_carlo() {
    let mut s = empty_bistatic();
    s.scatterers.push(cluster("only", [90.0, 60.0, 10.0], 0.0, 0.0, 1.0, 6.0));
    let q_offsets = [0usize, 1, 2, 3, 4, 5];
    let dq: Vec<f64> = q_offsets.iter().map(|&j| 0.5 * j as f64).collect();
    let fast =
        spatial_ccf(&s, Component::CommStatic, 2.0, &receive_lags(&dq), 4000, s.seed, &CorrelationOptions::default())
            .unwrap();
    let (naive, naive_se) = naive_ccf(&s, 2.0, &q_offsets, 4000..8000);
    for j in 0..dq.len() {
        let se = (fast.std_errors[j].powi(2) + naive_se[j].powi(2)).sqrt();
        let diff = (fast.values[j].norm() - naive[j]).abs();
        assert!(diff <= 3.0 * se + 1e-12, "lag {}: {} vs {} (se {se})", dq[j], fast.values[j].norm(), naive[j]);
    }
}

#[test]
fn frequency_response_matches_direct_sum() {
    let s = presets::bistatic();
    let freqs: Vec<f64> = (-50..=50).map(|i| i as f64 * 1.37e6).collect();
    let comm = isac_channel::comm::comm_cir(&s, 3, 2.0).unwrap();
    let sensing = sensing_cir(&s, 2.0).unwrap();
    fn check<M: TapMatrix>(cir: &M, freqs: &[f64]) {
        let h = frequency_response(cir, freqs);
        for p in 1..=cir.tx_count() {
            for q in 1..=cir.rx_count() {
                let taps = cir.pair(p, q);
                let scale: f64 = taps.iter().map(|t| t.amplitude.norm()).sum();
                for (i, &f) in freqs.iter().enumerate() {
                    let mut re = 0.0;
                    let mut im = 0.0;
                    for t in taps {
                        let arg = -2.0 * std::f64::consts::PI * f * t.delay;
                        re += t.amplitude.re * arg.cos() - t.amplitude.im * arg.sin();
                        im += t.amplitude.re * arg.sin() + t.amplitude.im * arg.cos();
                    }
                    let err = (h.pair(p, q)[i] - Complex64::new(re, im)).norm();
                    assert!(err <= 1e-12 * scale, "{err} vs {scale}");
                }
                assert_eq!(narrowband(cir).gains[p - 1][q - 1], taps.iter().map(|t| t.amplitude).sum::<Complex64>());
            }
        }
    }
    check(&comm, &freqs);
    check(&sensing, &freqs);
}

#[test]
fn acf_is_hermitian_for_stationary_statistics() {
    let mut s = empty_bistatic();
    s.scatterers.push(cluster("far", [90_000.0, 40_000.0, 10.0], 0.0, 0.0, 1.0, 500.0));
    let dts: Vec<f64> = (1..=10).map(|i| i as f64 * 1e-4).collect();
    // Anchored near t = 0, where the geometry drift over ±Δt is negligible.
    let neg: Vec<f64> = dts.iter().map(|d| -d).collect();
    let o = CorrelationOptions::default();
    let fwd = temporal_acf(&s, Component::CommStatic, 1e-3, &dts, 500, 4, &o).unwrap();
    let bwd = temporal_acf(&s, Component::CommStatic, 1e-3, &neg, 500, 4, &o).unwrap();
    for (a, b) in fwd.values.iter().zip(&bwd.values) {
        assert!((a.conj() - b).norm() < 1e-6, "{a} vs {b}");
    }
    assert!(temporal_acf(&s, Component::CommStatic, 1e-4, &[-1e-3], 10, 4, &o).is_err());
}

#[test]
fn standard_error_scales_as_inverse_root_n() {
    let s = presets::bistatic();
    let lags = receive_lags(&[0.5]);
    let o = CorrelationOptions::default();
    let se: Vec<f64> = [100, 1000, 10_000]
        .iter()
        .map(|&n| spatial_ccf(&s, Component::CommStatic, 2.0, &lags, n, 11, &o).unwrap().std_errors[0])
        .collect();
    for w in se.windows(2) {
        let ratio = w[0] / w[1];
        let ideal = 10f64.sqrt();
        assert!(ratio > ideal / 2.0 && ratio < ideal * 2.0, "{se:?}");
    }
}

#[test]
fn sensing_statistics_ignore_the_seed() {
    let s = presets::bistatic();
    let o = CorrelationOptions::default();
    let lags = receive_lags(&[0.0, 0.3, 0.9]);
    for c in [Component::SensingTerminal, Component::SensingStatic, Component::SensingMobile, Component::SensingTotal] {
        let a = spatial_ccf(&s, c, 2.0, &lags, 50, 1, &o).unwrap();
        let b = spatial_ccf(&s, c, 2.0, &lags, 5000, 987_654, &o).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n_mc, 1);
        assert!(a.std_errors.iter().all(|&e| e == 0.0));
    }
}

#[test]
fn zero_lag_is_one_for_every_option() {
    let s = presets::bistatic();
    for ensemble in [Ensemble::PhasesOnly, Ensemble::Full] {
        for coupling in [PathCoupling::PerPath, PathCoupling::Coherent] {
            let o = CorrelationOptions { ensemble, coupling, tx_antenna: 2, rx_antenna: 3 };
            for c in Component::ALL {
                let r = spatial_ccf(&s, c, 2.0, &receive_lags(&[0.0, 0.25]), 40, 2, &o).unwrap();
                assert!((r.values[0] - 1.0).norm() < 1e-9, "{c}");
                let r = temporal_acf(&s, c, 2.0, &[0.0, 1e-4], 40, 2, &o).unwrap();
                assert!((r.values[0] - 1.0).norm() < 1e-9, "{c}");
            }
        }
    }
}

#[test]
fn empty_component_is_undefined() {
    let mut s = empty_bistatic();
    s.scatterers.push(cluster("c", [50.0, 50.0, 5.0], 0.0, 0.0, 1.0, 2.0));
    let err = spatial_ccf(&s, Component::CommMobile, 0.0, &receive_lags(&[0.0]), 10, 1, &CorrelationOptions::default());
    assert!(matches!(err, Err(isac_channel::Error::UndefinedCorrelation(_))));
}

#[test]
fn cross_correlation_behaviour() {
    let o = CorrelationOptions::default();
    // Disjoint: a plain target and an unrelated cluster.
    let mut disjoint = empty_bistatic();
    disjoint.scatterers.push(target("t", [90.0, 50.0, 2.0], 0.0, 0.0, 10.0));
    disjoint.scatterers.push(cluster("c", [90.0, 50.0, 2.0], 0.0, 0.0, 1.0, 2.0));
    let x = cross_channel_correlation(&disjoint, &CrossLink::new("t", "c"), 1.0, 4000, 5, &o).unwrap();
    assert!(x.value.norm() < 3.0 * x.std_error, "{} ± {}", x.value.norm(), x.std_error);
    assert!(matches!(CrossLink::first_shared(&disjoint), Err(isac_channel::Error::UndefinedCorrelation(_))));

    // Shared with one ray: the random phase cancels.
    let mut single = empty_bistatic();
    single.carrier.ray_count = 1;
    single.scatterers.push(shared("s", [90.0, 50.0, 2.0], 0.0, 0.0, 10.0, 1.0, 2.0));
    let link = CrossLink::first_shared(&single).unwrap();
    let x = cross_channel_correlation(&single, &link, 1.0, 200, 5, &o).unwrap();
    assert!((x.value.norm() - 1.0).abs() < 1e-12);

    // Shared beats non-shared at the same centroid.
    let mut both = empty_bistatic();
    both.scatterers.push(shared("s", [90.0, 50.0, 2.0], 0.0, 0.0, 10.0, 1.0, 2.0));
    let shared_x = cross_channel_correlation(&both, &CrossLink::new("s", "s"), 1.0, 4000, 5, &o).unwrap();
    let apart = cross_channel_correlation(&disjoint, &CrossLink::new("t", "c"), 1.0, 4000, 5, &o).unwrap();
    let sep = 3.0 * (shared_x.std_error.powi(2) + apart.std_error.powi(2)).sqrt();
    assert!(shared_x.value.norm() - apart.value.norm() > sep, "{} vs {}", shared_x.value.norm(), apart.value.norm());
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let s = presets::bistatic();
    let lags = receive_lags(&[0.0, 0.5, 1.0]);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
            spatial_ccf(&s, Component::CommTotal, 2.0, &lags, 3000, 8, &CorrelationOptions::default()).unwrap()
        })
    };
    assert_eq!(run(1), run(5));
}

#[test]
fn still_receiver_still_clusters_give_unit_acf() {
    let mut s = presets::bistatic();
    s.nodes.comm_rx_motion = MotionState::STILL;
    let dts: Vec<f64> = (0..=20).map(|i| i as f64 * 2.5e-3).collect();
    let r = temporal_acf(&s, Component::CommStatic, 5.0, &dts, 300, 1, &CorrelationOptions::default()).unwrap();
    for v in r.values {
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }
}
