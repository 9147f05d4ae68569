mod common;

use common::*;
use isac_channel::comm::{
    comm_cir, comm_cir_with, los_tap, mobile_cluster_path, static_cluster_path, CommRealization, RaySet,
};
use isac_channel::geometry::{element_displacement, MotionState, Vec3};
use isac_channel::path::{PathSource, TapMatrix};
use isac_channel::presets;
use isac_channel::scenario::Mobility;
use isac_channel::sensing::{sensing_cir, sensing_paths, target_path, terminal_tap};
use isac_channel::stats::{spatial_ccf, Component, CorrelationOptions, SpatialLag};

#[test]
fn still_mobile_cluster_equals_static_cluster_bitwise() {
    let mut s = empty_bistatic();
    s.scatterers.push(cluster("c", [60.0, 50.0, 8.0], 0.0, 0.0, 1.0, 4.0));
    let mut m = s.clone();
    m.scatterers[0].mobility = Mobility::Mobile;
    let rays = RaySet::draw(&s.scatterers[0], &s, 3, 0, 0).unwrap();
    for t in [0.0, 0.7, 2.0, 5.0] {
        let a = static_cluster_path(&s, &rays, t).unwrap();
        let b = mobile_cluster_path(&m, &rays, t).unwrap();
        assert_eq!(a.rays, b.rays);
        assert_eq!(a.gain.to_bits(), b.gain.to_bits());
        assert_eq!(a.delay.to_bits(), b.delay.to_bits());
    }
}

#[test]
fn still_mobile_target_equals_static_target_bitwise() {
    let mut s = empty_bistatic();
    s.scatterers.push(target("x", [70.0, -20.0, 1.5], 0.0, 0.0, 10.0));
    let mut m = s.clone();
    m.scatterers[0].mobility = Mobility::Mobile;
    m.scatterers[0].motion = MotionState::new(0.0, 1.0);
    for t in [0.0, 2.0, 5.0] {
        let a = target_path(&s, "x", t).unwrap();
        let b = target_path(&m, "x", t).unwrap();
        assert_eq!(a.rays, b.rays);
        assert_eq!(a.delay.to_bits(), b.delay.to_bits());
        assert_eq!(a.scale.to_bits(), b.scale.to_bits());
    }
}

#[test]
fn monostatic_angles_coincide() {
    let mut s = presets::monostatic();
    s.nodes.echo_rx = s.nodes.bs;
    for t in [0.0, 2.0, 5.0] {
        for path in sensing_paths(&s, t).unwrap() {
            let (e_t, e_r) = (path.rays[0].tx_direction, path.rays[0].rx_direction);
            assert!(e_t.distance(e_r) <= 1e-12, "{}", path.source.label());
        }
    }
}

#[test]
fn terminal_doppler_is_two_way() {
    let s = radial_terminal();
    let lambda = s.wavelength();
    let phase = |t: f64| terminal_tap(&s, t, 1, 1).unwrap().amplitude.arg();
    let f = phase_rate(phase, 1.0, 1e-5);
    let expected = -2.0 * 5.0 / lambda;
    assert!((f / expected - 1.0).abs() < 5e-3, "{f} vs {expected}");
}

#[test]
fn delays_match_leg_lengths() {
    let s = presets::bistatic();
    let c = s.carrier.speed_of_light;
    let bs = s.nodes.bs.phase_center;
    let echo = s.nodes.echo_rx.phase_center;
    for t in [0.0, 2.5, 5.0] {
        for path in sensing_paths(&s, t).unwrap() {
            let at = match &path.source {
                PathSource::Terminal => s.nodes.comm_rx_position(t),
                other => s.scatterer(other.scatterer_id().unwrap()).unwrap().position_at(t),
            };
            let expected = (bs.distance(at) + echo.distance(at)) / c;
            assert!((path.delay - expected).abs() <= 1e-15 * expected.max(1.0));
            // Bistatic triangle inequality.
            assert!(path.delay * c >= bs.distance(echo) - 1e-9);
        }
        let los = los_tap(&s, t, 1, 1).unwrap();
        assert!((los.delay - bs.distance(s.nodes.comm_rx_position(t)) / c).abs() < 1e-18);
    }
}

#[test]
fn comm_cluster_delays_exceed_los() {
    let s = presets::bistatic();
    let cir = comm_cir(&s, 5, 2.0).unwrap();
    let taps = cir.pair(1, 1);
    let los = taps.iter().find(|t| t.source == PathSource::LineOfSight).unwrap().delay;
    assert!(taps.iter().all(|t| t.delay >= los));
}

#[test]
fn tap_magnitudes_follow_path_loss() {
    let s = presets::bistatic();
    let cir = sensing_cir(&s, 0.0).unwrap();
    for p in 1..=cir.tx_count() {
        for q in 1..=cir.rx_count() {
            for (tap, path) in cir.pair(p, q).iter().zip(sensing_paths(&s, 0.0).unwrap()) {
                assert!((tap.amplitude.norm_sqr() / path.gain - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn los_ccf_is_unimodular() {
    let s = presets::bistatic();
    let lags: Vec<SpatialLag> = (0..=20).map(|i| SpatialLag { dp: 0.1 * (i % 4) as f64, dq: 0.1 * i as f64 }).collect();
    let r = spatial_ccf(&s, Component::CommLos, 2.0, &lags, 100, 1, &CorrelationOptions::default()).unwrap();
    assert_eq!(r.n_mc, 1);
    for v in r.values {
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn static_world_is_time_invariant_bitwise() {
    let mut s = presets::bistatic();
    s.nodes.comm_rx_motion = MotionState::STILL;
    for sc in &mut s.scatterers {
        sc.motion = MotionState::STILL;
        sc.mobility = Mobility::Static;
    }
    let r = CommRealization::draw(&s, 9).unwrap();
    let (e0, c0) = (sensing_cir(&s, 0.0).unwrap(), comm_cir_with(&s, &r, 0.0).unwrap());
    for t in [0.5, 2.0, 5.0, 100.0] {
        assert_eq!(sensing_cir(&s, t).unwrap().taps, e0.taps);
        assert_eq!(comm_cir_with(&s, &r, t).unwrap().taps, c0.taps);
    }
}

#[test]
fn array_terms_shift_phase_only() {
    let s = presets::bistatic();
    let k = s.carrier.wavenumber();
    let path = &sensing_paths(&s, 1.0).unwrap()[0];
    let d1 = element_displacement(&s.nodes.bs, 1).unwrap();
    let d4 = element_displacement(&s.nodes.echo_rx, 4).unwrap();
    let a = path.amplitude(k, Vec3::ZERO, Vec3::ZERO);
    let b = path.amplitude(k, d1, d4);
    assert!((a.norm() - b.norm()).abs() < 1e-12 * a.norm());
    let expected = k * path.rays[0].tx_direction.dot(d1) + k * path.rays[0].rx_direction.dot(d4);
    let got = (b / a).arg();
    let diff = (got - expected + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI;
    assert!(diff.abs() < 1e-9);
}

#[test]
fn bad_inputs_are_rejected() {
    let s = presets::bistatic();
    assert!(sensing_cir(&s, -1.0).is_err());
    assert!(terminal_tap(&s, 0.0, 0, 1).is_err());
    assert!(terminal_tap(&s, 0.0, 1, 5).is_err());
    let mut degenerate = empty_bistatic();
    let echo = degenerate.nodes.echo_rx.phase_center;
    degenerate.scatterers.push(target("on_array", [echo.x, echo.y, echo.z], 0.0, 0.0, 1.0));
    assert!(matches!(sensing_cir(&degenerate, 0.0), Err(isac_channel::Error::DegenerateGeometry(_))));
}
