use crate::jet::Jet;

const SERIES_LIMIT: f64 = 8.0;

/// j_α(z) = Γ(α+1)(2/z)^α J_α(z), normalized so that j_α(0) = 1.
///
/// The power series is used for |z| ≤ 8. Beyond that the alternating series
/// loses digits to cancellation, so Miller's backward recurrence is used with
/// the normalization sum (z/2)^α = Σ_k (α+2k) Γ(α+k)/k! J_{α+2k}(z).
pub fn bessel_j_normalized(alpha: f64, z: f64) -> f64 {
    let z = z.abs();
    if z <= SERIES_LIMIT {
        series(alpha, z)
    } else {
        miller(alpha, z)
    }
}

fn series(alpha: f64, z: f64) -> f64 {
    let q = -0.25 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..500 {
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (kf + alpha + 1.0));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn miller(alpha: f64, z: f64) -> f64 {
    // start index well above z so the minimal solution dominates
    let mut top = (z + 40.0 + 12.0 * z.sqrt()) as usize;
    if top % 2 == 1 {
        top += 1;
    }
    let mut f_next = 0.0;
    let mut f_cur = 1e-250;
    // coefficients c_j for the even offsets 2j, divided by Γ(α+1)
    let half = top / 2;
    let mut c = vec![1.0; half + 1];
    let mut r = 1.0;
    for j in 1..=half {
        if j > 1 {
            r *= (alpha + (j - 1) as f64) / j as f64;
        }
        c[j] = (alpha + 2.0 * j as f64) * r;
    }
    let mut norm = 0.0;
    let mut f_alpha = 0.0;
    for k in (0..=top).rev() {
        if k % 2 == 0 {
            norm += c[k / 2] * f_cur;
        }
        if k == 0 {
            f_alpha = f_cur;
            break;
        }
        let nu = alpha + k as f64;
        let f_prev = 2.0 * nu / z * f_cur - f_next;
        f_next = f_cur;
        f_cur = f_prev;
        if f_cur.abs() > 1e250 {
            f_cur *= 1e-250;
            f_next *= 1e-250;
            norm *= 1e-250;
        }
    }
    f_alpha / norm
}

/// Jet of x ↦ j_α(λx), using j_α'(z) = -z/(2(α+1)) j_{α+1}(z) and the
/// Bessel equation for the second derivative.
pub fn bessel_j_normalized_jet(alpha: f64, lambda: f64, x: f64) -> Jet {
    let z = lambda * x;
    let v = bessel_j_normalized(alpha, z);
    let dz = -z / (2.0 * (alpha + 1.0)) * bessel_j_normalized(alpha + 1.0, z);
    let d2z = if z.abs() < 1e-8 {
        -1.0 / (2.0 * (alpha + 1.0))
    } else {
        -(2.0 * alpha + 1.0) / z * dz - v
    };
    Jet::new(v, lambda * dz, lambda * lambda * d2z)
}

/// First `count` positive zeros of j_α, by sign scan and bisection.
pub fn bessel_zeros(alpha: f64, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let step = 0.05;
    let mut a = 1e-3;
    let mut fa = bessel_j_normalized(alpha, a);
    while out.len() < count {
        let b = a + step;
        let fb = bessel_j_normalized(alpha, b);
        if fa == 0.0 {
            out.push(a);
        } else if fa * fb < 0.0 {
            let (mut lo, mut hi, mut flo) = (a, b, fa);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = bessel_j_normalized(alpha, mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    out
}
