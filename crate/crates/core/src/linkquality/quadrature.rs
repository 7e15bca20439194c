//! Gauss-Hermite nodes and weights for `int f(t) exp(-t^2) dt`.

/// Nodes in ascending order and their weights (weights sum to `sqrt(pi)`).
///
/// Newton iteration on the orthonormal Hermite recurrence, started from the
/// usual asymptotic guesses for the largest roots.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "at least one node");
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let half = n.div_ceil(2);
    let nf = n as f64;
    let mut z = 0.0f64;
    for i in 0..half {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    x.reverse();
    w.reverse();
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments() {
        for n in [1usize, 2, 5, 24, 64, 96] {
            let (x, w) = gauss_hermite(n);
            let sp = std::f64::consts::PI.sqrt();
            let m0: f64 = w.iter().sum();
            assert!((m0 - sp).abs() < 1e-12, "n={n}");
            if n >= 2 {
                let m2: f64 = x.iter().zip(&w).map(|(x, w)| x * x * w).sum();
                assert!((m2 - sp / 2.0).abs() < 1e-12, "n={n}");
            }
            if n >= 3 {
                let m4: f64 = x.iter().zip(&w).map(|(x, w)| x.powi(4) * w).sum();
                assert!((m4 - 3.0 * sp / 4.0).abs() < 1e-11, "n={n}");
            }
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn two_nodes() {
        let (x, w) = gauss_hermite(2);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((x[1] - r).abs() < 1e-15 && (x[0] + r).abs() < 1e-15);
        assert!((w[0] - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-15);
    }
}
