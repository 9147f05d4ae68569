//! Angles, array displacements and straight-line motion.

use isac_channel::geometry::{angles_and_distance, element_displacement, propagate, MotionState, UlaConfig, Vec3};

fn main() -> isac_channel::Result<()> {
    let bs = Vec3::new(0.0, 0.0, 30.0);
    let receiver = Vec3::new(150.0, 0.0, 0.0);
    let (angles, distance) = angles_and_distance(bs, receiver)?;
    println!(
        "BS -> MR: azimuth {:.2}°, elevation {:.2}°, {distance:.3} m",
        angles.azimuth.to_degrees(),
        angles.elevation.to_degrees()
    );

    let lambda = 3.0e8 / 28e9;
    let ula = UlaConfig {
        element_count: 4,
        spacing: lambda / 2.0,
        azimuth_orientation: 60f64.to_radians(),
        elevation_orientation: 45f64.to_radians(),
        phase_center: bs,
    };
    for p in 1..=ula.element_count {
        let d = element_displacement(&ula, p)?;
        println!("element {p}: ({:+.5}, {:+.5}, {:+.5}) m", d.x, d.y, d.z);
    }

    let motion = MotionState::new(5.0, -30f64.to_radians());
    for t in [0.0, 2.0, 5.0] {
        let at = propagate(receiver, motion, t);
        println!("t = {t} s: MR at ({:.2}, {:.2}, {:.2})", at.x, at.y, at.z);
    }
    Ok(())
}
