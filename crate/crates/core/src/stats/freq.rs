//! Frequency responses of tapped-delay-line channels.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::path::{Tap, TapMatrix};

/// `H_pq(t, f) = Σ_k a_k e^{-j2πfτ_k}` on a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyResponse {
    pub t: f64,
    /// Hz, relative to the carrier.
    pub frequencies: Vec<f64>,
    /// `values[p-1][q-1][i]` at `frequencies[i]`.
    pub values: Vec<Vec<Vec<Complex64>>>,
}

impl FrequencyResponse {
    pub fn pair(&self, p: usize, q: usize) -> &[Complex64] {
        &self.values[p - 1][q - 1]
    }
}

/// Narrowband gains `h_pq(t) = Σ_k a_k`, i.e. the response at zero frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct NarrowbandFading {
    pub t: f64,
    /// `gains[p-1][q-1]`.
    pub gains: Vec<Vec<Complex64>>,
}

fn response(taps: &[Tap], f: f64) -> Complex64 {
    taps.iter().map(|tap| tap.amplitude * Complex64::cis(-TAU * f * tap.delay)).sum()
}

pub fn frequency_response<M: TapMatrix>(cir: &M, frequencies: &[f64]) -> FrequencyResponse {
    frequency_response_where(cir, frequencies, |_| true)
}

/// Frequency response over the taps accepted by `keep`.
pub fn frequency_response_where<M: TapMatrix>(
    cir: &M,
    frequencies: &[f64],
    keep: impl Fn(&Tap) -> bool,
) -> FrequencyResponse {
    let values = (1..=cir.tx_count())
        .map(|p| {
            (1..=cir.rx_count())
                .map(|q| {
                    let taps: Vec<Tap> = cir.pair(p, q).iter().filter(|t| keep(t)).cloned().collect();
                    frequencies.iter().map(|&f| response(&taps, f)).collect()
                })
                .collect()
        })
        .collect();
    FrequencyResponse { t: cir.time(), frequencies: frequencies.to_vec(), values }
}

pub fn narrowband<M: TapMatrix>(cir: &M) -> NarrowbandFading {
    let gains = (1..=cir.tx_count())
        .map(|p| (1..=cir.rx_count()).map(|q| cir.pair(p, q).iter().map(|t| t.amplitude).sum()).collect())
        .collect();
    NarrowbandFading { t: cir.time(), gains }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::PathSource;

    struct Fixed(Vec<Tap>);

    impl TapMatrix for Fixed {
        fn time(&self) -> f64 {
            0.0
        }
        fn tx_count(&self) -> usize {
            1
        }
        fn rx_count(&self) -> usize {
            1
        }
        fn pair(&self, _: usize, _: usize) -> &[Tap] {
            &self.0
        }
    }

    fn tap(a: f64, delay: f64) -> Tap {
        Tap { amplitude: Complex64::new(a, 0.0), delay, source: PathSource::LineOfSight }
    }

    #[test]
    fn two_equal_taps_cancel_at_half_inverse_spacing() {
        let dtau = 40e-9;
        let cir = Fixed(vec![tap(1.0, 1e-6), tap(1.0, 1e-6 + dtau)]);
        let h = frequency_response(&cir, &[0.0, 1.0 / (2.0 * dtau)]);
        assert!((h.pair(1, 1)[0].norm() - 2.0).abs() < 1e-12);
        assert!(h.pair(1, 1)[1].norm() < 1e-9);
    }

    #[test]
    fn zero_frequency_matches_narrowband() {
        let cir = Fixed(vec![tap(0.5, 1e-7), tap(-0.25, 3e-7)]);
        let h = frequency_response(&cir, &[0.0]);
        assert_eq!(h.pair(1, 1)[0], narrowband(&cir).gains[0][0]);
    }

    #[test]
    fn filter_drops_taps() {
        let cir = Fixed(vec![tap(1.0, 0.0)]);
        let h = frequency_response_where(&cir, &[1e6], |_| false);
        assert_eq!(h.pair(1, 1)[0], Complex64::new(0.0, 0.0));
    }
}
