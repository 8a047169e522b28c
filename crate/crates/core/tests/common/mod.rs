//! Independent reference computations, written without the library's code paths.
#![allow(dead_code)]

/// Min-max scaling fit on `rows` themselves; constant columns become 0.
pub fn minmax_scale(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let d = rows[0].len();
    let lo: Vec<f64> = (0..d).map(|j| rows.iter().map(|r| r[j]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> = (0..d).map(|j| rows.iter().map(|r| r[j]).fold(f64::NEG_INFINITY, f64::max)).collect();
    rows.iter()
        .map(|r| {
            (0..d)
                .map(|j| if hi[j] > lo[j] { (r[j] - lo[j]) / (hi[j] - lo[j]) } else { 0.0 })
                .collect()
        })
        .collect()
}

/// Maximum of the soft-margin dual `Σa - ½ aᵀQa` subject to `0 <= a <= C`
/// and `Σ y a = 0`, by accelerated projected gradient ascent.
pub fn qp_dual_oracle(rows: &[Vec<f64>], labels: &[bool], c: f64, g: f64) -> f64 {
    let x = minmax_scale(rows);
    let n = x.len();
    let y: Vec<f64> = labels.iter().map(|&l| if l { 1.0 } else { -1.0 }).collect();
    let mut q = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let d2: f64 = x[i].iter().zip(&x[j]).map(|(a, b)| (a - b) * (a - b)).sum();
            q[i][j] = y[i] * y[j] * (-g * d2).exp();
        }
    }
    let lipschitz = q.iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
    let step = 1.0 / lipschitz;

    let project = |v: &[f64]| -> Vec<f64> {
        let at = |lam: f64| -> Vec<f64> { v.iter().zip(&y).map(|(vi, yi)| (vi - lam * yi).clamp(0.0, c)).collect() };
        let h = |lam: f64| -> f64 { at(lam).iter().zip(&y).map(|(a, yi)| a * yi).sum() };
        let bound = v.iter().map(|a| a.abs()).fold(0.0, f64::max) + c + 1.0;
        let (mut lo, mut hi) = (-bound, bound);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if h(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        at(0.5 * (lo + hi))
    };
    let objective = |a: &[f64]| -> f64 {
        let mut quad = 0.0;
        for i in 0..n {
            for j in 0..n {
                quad += a[i] * q[i][j] * a[j];
            }
        }
        a.iter().sum::<f64>() - 0.5 * quad
    };

    let mut a = vec![0.0; n];
    let mut z = a.clone();
    let mut t = 1.0f64;
    for _ in 0..200_000 {
        let grad: Vec<f64> = (0..n).map(|i| 1.0 - (0..n).map(|j| q[i][j] * z[j]).sum::<f64>()).collect();
        let next = project(&z.iter().zip(&grad).map(|(zi, gi)| zi + step * gi).collect::<Vec<_>>());
        let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
        let moved: f64 = next.iter().zip(&a).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        z = next.iter().zip(&a).map(|(p, q)| p + (t - 1.0) / t_next * (p - q)).collect();
        a = next;
        t = t_next;
        if moved < 1e-13 {
            break;
        }
    }
    // the final iterate is feasible up to the bisection, so this is a lower bound
    objective(&a)
}

/// Cyclic Jacobi eigenvalues of a dense symmetric matrix, ascending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Dense `D - A` from undirected pairs.
pub fn dense_laplacian(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<f64>> {
    let mut l = vec![vec![0.0; n]; n];
    for &(a, b) in pairs {
        if a != b && l[a][b] == 0.0 {
            l[a][b] = -1.0;
            l[b][a] = -1.0;
            l[a][a] += 1.0;
            l[b][b] += 1.0;
        }
    }
    l
}

/// Maximizer of the discrete power-law log-likelihood truncated at
/// `support_max`, over a 1e-3 grid on [1.01, 6].
pub fn grid_mle(degrees: &[usize], support_max: usize) -> f64 {
    let xs: Vec<f64> = degrees.iter().filter(|&&d| d > 0).map(|&d| d as f64).collect();
    let log_sum: f64 = xs.iter().map(|x| x.ln()).sum();
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 0..=4990 {
        let a = 1.01 + i as f64 * 1e-3;
        let z: f64 = (1..=support_max).map(|k| (k as f64).powf(-a)).sum();
        let ll = -(xs.len() as f64) * z.ln() - a * log_sum;
        if ll > best.0 {
            best = (ll, a);
        }
    }
    best.1
}
