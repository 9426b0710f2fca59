use std::f64::consts::PI;

/// Physicists' Hermite polynomial H_n(y), H_{n+1} = 2y H_n − 2n H_{n−1}.
pub fn hermite(n: usize, y: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * y;
    for k in 1..n {
        let next = 2.0 * y * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Normalized Hermite values N_k H_k(y), k = 0..len, with
/// N_k = (√π 2^k k!)^{−1/2}.
///
/// Uses the orthonormal form of the recursion so neither H_k nor k! is formed.
pub fn hermite_normalized(len: usize, y: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return out;
    }
    out.push(PI.powf(-0.25));
    if len == 1 {
        return out;
    }
    out.push(2f64.sqrt() * y * out[0]);
    for k in 1..len - 1 {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * y * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// Oscillator eigenfunction u_n(q) = N_n H_n(q) e^{−q²/2}.
pub fn oscillator_eigenfunction(n: usize, q: f64) -> f64 {
    hermite_normalized(n + 1, q)[n] * (-0.5 * q * q).exp()
}

/// Generalized Laguerre polynomial L_n^α(x) by forward recursion
/// (k+1) L_{k+1} = (2k+1+α−x) L_k − (k+α) L_{k−1}.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}
