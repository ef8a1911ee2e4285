use discorr_core::states::{smsv, SqueezingParameter};
use discorr_core::C64;
use nalgebra::DMatrix;

/// `S(xi)|0>` with `S(xi) = exp((conj(xi) a^2 - xi a†^2) / 2)` evaluated as a
/// dense matrix exponential on a generous truncation.
fn squeezed_vacuum_by_exponential(r: f64, theta: f64, dim: usize) -> Vec<C64> {
    let xi = C64::from_polar(r, theta);
    let big = dim * 4;
    let mut gen = DMatrix::<C64>::zeros(big, big);
    for n in 0..big - 2 {
        // a† a† |n> = sqrt((n+1)(n+2)) |n+2>
        let s = (((n + 1) * (n + 2)) as f64).sqrt();
        gen[(n + 2, n)] -= xi * s * 0.5;
        gen[(n, n + 2)] += xi.conj() * s * 0.5;
    }
    let u = gen.exp();
    (0..dim).map(|k| u[(k, 0)]).collect()
}

#[test]
fn smsv_matches_squeezing_operator() {
    for &(r, theta) in &[(0.3, 0.0), (0.6, 1.1), (0.9, -2.4)] {
        let lambda = C64::from_polar(-(r as f64).tanh(), theta);
        let dim = 40;
        let ours = smsv(SqueezingParameter::new(lambda).unwrap(), dim).unwrap();
        let exact = squeezed_vacuum_by_exponential(r, theta, dim);
        let norm: f64 = exact.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for (k, (a, b)) in ours.amps().iter().zip(&exact).enumerate() {
            let b = b / norm;
            assert!((a - b).norm() < 1e-10, "r={r} theta={theta} k={k}: {a} vs {b}");
        }
    }
}

#[test]
fn smsv_second_coefficient_ratio() {
    let lambda = C64::new(0.2, -0.35);
    let s = smsv(SqueezingParameter::new(lambda).unwrap(), 30).unwrap();
    let ratio = s.amps()[2] / s.amps()[0];
    assert!((ratio - lambda / 2f64.sqrt()).norm() < 1e-14);
}
