//! WFG1-5 built from the toolkit's transformation and shape primitives.
//!
//! `k` is the number of position parameters; variable `z_i` (1-based) ranges
//! over `[0, 2i]` and is normalized to `y_i = z_i / 2i` before transforming.

use std::f64::consts::{FRAC_PI_2, PI};

mod transforms {
    use super::*;

    const EPS: f64 = 1.0e-10;

    /// Snaps values that drifted just outside `[0, 1]` back onto the interval.
    #[inline]
    pub fn correct_to_01(v: f64) -> f64 {
        if v < 0.0 && v >= -EPS {
            0.0
        } else if v > 1.0 && v <= 1.0 + EPS {
            1.0
        } else {
            v
        }
    }

    #[inline]
    pub fn b_poly(y: f64, alpha: f64) -> f64 {
        correct_to_01(y.powf(alpha))
    }

    #[inline]
    pub fn b_flat(y: f64, a: f64, b: f64, c: f64) -> f64 {
        let t1 = (y - b).floor().min(0.0) * a * (b - y) / b;
        let t2 = (c - y).floor().min(0.0) * (1.0 - a) * (y - c) / (1.0 - c);
        correct_to_01(a + t1 - t2)
    }

    #[inline]
    pub fn s_linear(y: f64, a: f64) -> f64 {
        correct_to_01((y - a).abs() / ((a - y).floor() + a).abs())
    }

    #[inline]
    pub fn s_decept(y: f64, a: f64, b: f64, c: f64) -> f64 {
        let t1 = (y - a + b).floor() * (1.0 - c + (a - b) / b) / (a - b);
        let t2 = (a + b - y).floor() * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b);
        correct_to_01(1.0 + ((y - a).abs() - b) * (t1 + t2 + 1.0 / b))
    }

    #[inline]
    pub fn s_multi(y: f64, a: f64, b: f64, c: f64) -> f64 {
        let t1 = (y - c).abs() / (2.0 * ((c - y).floor() + c));
        let t2 = (4.0 * a + 2.0) * PI * (0.5 - t1);
        correct_to_01((1.0 + t2.cos() + 4.0 * b * t1 * t1) / (b + 2.0))
    }

    pub fn r_sum(y: &[f64], w: &[f64]) -> f64 {
        let (num, den) = y
            .iter()
            .zip(w)
            .fold((0.0, 0.0), |(n, d), (v, wi)| (n + v * wi, d + wi));
        correct_to_01(num / den)
    }

    pub fn r_sum_uniform(y: &[f64]) -> f64 {
        correct_to_01(y.iter().sum::<f64>() / y.len() as f64)
    }

    pub fn r_nonsep(y: &[f64], a: usize) -> f64 {
        let len = y.len();
        let mut num = 0.0;
        for j in 0..len {
            num += y[j];
            for k in 0..a.saturating_sub(1) {
                num += (y[j] - y[(1 + j + k) % len]).abs();
            }
        }
        let half = a.div_ceil(2) as f64;
        let a = a as f64;
        let den = len as f64 / a * half * (1.0 + 2.0 * a - 2.0 * half);
        correct_to_01(num / den)
    }
}

use transforms::*;

#[derive(Clone, Copy)]
enum Shape {
    /// Convex for `h_1..h_{M-1}`, mixed (alpha = 1, A = 5) for `h_M`.
    ConvexMixed,
    /// Convex for `h_1..h_{M-1}`, disconnected (alpha = beta = 1, A = 5) for `h_M`.
    ConvexDisc,
    Linear,
    Concave,
}

fn shape_value(shape: Shape, x: &[f64], m: usize, j: usize) -> f64 {
    // j is the 1-based objective index, x holds x_1..x_{M-1}.
    let kept = m - j;
    match shape {
        Shape::Linear => {
            let mut h: f64 = x[..kept].iter().product();
            if j > 1 {
                h *= 1.0 - x[kept];
            }
            h
        }
        Shape::Concave => {
            let mut h: f64 = x[..kept].iter().map(|v| (v * FRAC_PI_2).sin()).product();
            if j > 1 {
                h *= (x[kept] * FRAC_PI_2).cos();
            }
            h
        }
        Shape::ConvexMixed | Shape::ConvexDisc if j < m => {
            let mut h: f64 = x[..kept]
                .iter()
                .map(|v| 1.0 - (v * FRAC_PI_2).cos())
                .product();
            if j > 1 {
                h *= 1.0 - (x[kept] * FRAC_PI_2).sin();
            }
            h
        }
        Shape::ConvexMixed => {
            let a = 5.0;
            let x1 = x[0];
            1.0 - x1 - (2.0 * a * PI * x1 + FRAC_PI_2).cos() / (2.0 * a * PI)
        }
        Shape::ConvexDisc => {
            let a = 5.0;
            let x1 = x[0];
            let c = (a * x1 * PI).cos();
            1.0 - x1 * c * c
        }
    }
}

/// Maps the reduced vector `t` (length M) to objective values.
fn finish(t: &[f64], m: usize, shape: Shape, degenerate: bool) -> Vec<f64> {
    let t_last = t[m - 1];
    let x: Vec<f64> = (0..m - 1)
        .map(|i| {
            let a = if degenerate && i > 0 { 0.0 } else { 1.0 };
            t_last.max(a) * (t[i] - 0.5) + 0.5
        })
        .collect();
    (1..=m)
        .map(|j| t_last + 2.0 * j as f64 * shape_value(shape, &x, m, j))
        .collect()
}

fn normalize(z: &[f64]) -> Vec<f64> {
    z.iter()
        .enumerate()
        .map(|(i, v)| v / (2.0 * (i + 1) as f64))
        .collect()
}

/// Position groups `[g*(i-1), g*i)` for `i = 1..M-1`, `g = k / (M-1)`.
fn position_groups(m: usize, k: usize) -> impl Iterator<Item = std::ops::Range<usize>> {
    let gap = k / (m - 1);
    (0..m - 1).map(move |i| i * gap..(i + 1) * gap)
}

pub(super) fn wfg1(z: &[f64], m: usize, k: usize) -> Vec<f64> {
    let n = z.len();
    let mut y = normalize(z);
    for v in &mut y[k..] {
        *v = s_linear(*v, 0.35);
        *v = b_flat(*v, 0.8, 0.75, 0.85);
    }
    for v in &mut y {
        *v = b_poly(*v, 0.02);
    }
    let w: Vec<f64> = (1..=n).map(|i| 2.0 * i as f64).collect();
    let mut t: Vec<f64> = position_groups(m, k)
        .map(|r| r_sum(&y[r.clone()], &w[r]))
        .collect();
    t.push(r_sum(&y[k..], &w[k..]));
    finish(&t, m, Shape::ConvexMixed, false)
}

/// Shared WFG2/WFG3 transformation chain. With an odd distance count the
/// final distance parameter is paired with itself.
fn wfg2_reduce(z: &[f64], m: usize, k: usize) -> Vec<f64> {
    let mut y = normalize(z);
    for v in &mut y[k..] {
        *v = s_linear(*v, 0.35);
    }
    let distance = &y[k..];
    let paired: Vec<f64> = distance
        .chunks(2)
        .map(|pair| match pair {
            [a, b] => r_nonsep(&[*a, *b], 2),
            [a] => r_nonsep(&[*a, *a], 2),
            _ => unreachable!(),
        })
        .collect();
    let mut t: Vec<f64> = position_groups(m, k)
        .map(|r| r_sum_uniform(&y[r]))
        .collect();
    t.push(r_sum_uniform(&paired));
    t
}

pub(super) fn wfg2(z: &[f64], m: usize, k: usize) -> Vec<f64> {
    let t = wfg2_reduce(z, m, k);
    finish(&t, m, Shape::ConvexDisc, false)
}

pub(super) fn wfg3(z: &[f64], m: usize, k: usize) -> Vec<f64> {
    let t = wfg2_reduce(z, m, k);
    finish(&t, m, Shape::Linear, true)
}

fn concave_sum_reduce(y: &[f64], m: usize, k: usize) -> Vec<f64> {
    let mut t: Vec<f64> = position_groups(m, k)
        .map(|r| r_sum_uniform(&y[r]))
        .collect();
    t.push(r_sum_uniform(&y[k..]));
    finish(&t, m, Shape::Concave, false)
}

pub(super) fn wfg4(z: &[f64], m: usize, k: usize) -> Vec<f64> {
    let mut y = normalize(z);
    for v in &mut y {
        *v = s_multi(*v, 30.0, 10.0, 0.35);
    }
    concave_sum_reduce(&y, m, k)
}

pub(super) fn wfg5(z: &[f64], m: usize, k: usize) -> Vec<f64> {
    let mut y = normalize(z);
    for v in &mut y {
        *v = s_decept(*v, 0.35, 0.001, 0.05);
    }
    concave_sum_reduce(&y, m, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(actual: &[f64], expected: &[f64]) {
        assert_eq!(actual.len(), expected.len());
        for (i, (a, e)) in actual.iter().zip(expected).enumerate() {
            assert!(
                (a - e).abs() <= 1e-10 * e.abs().max(1.0),
                "component {i}: {a} vs {e}"
            );
        }
    }

    fn mid_range(n: usize) -> Vec<f64> {
        (1..=n).map(|i| i as f64).collect()
    }

    fn off_center(n: usize) -> Vec<f64> {
        let mut z: Vec<f64> = (1..=n).map(|i| 0.6 * i as f64).collect();
        z[n - 1] = 1.7;
        z[3] = 0.5;
        z[0] = 1.9;
        z
    }

    // Expected values from an independent WFG implementation (pymoo 0.6.2, k = 2).
    #[test]
    fn wfg4_mid_range_matches_reference() {
        assert_close(
            &wfg4(&mid_range(9), 3, 2),
            &[0.057589256611676826, 0.33979634236997813, 6.030594763964799],
        );
        assert_close(
            &wfg4(&off_center(9), 3, 2),
            &[0.7033318153174914, 3.8476183859772006, 2.597049407300582],
        );
    }

    #[test]
    fn wfg1_matches_reference() {
        assert_close(
            &wfg1(&mid_range(9), 3, 2),
            &[2.8867928519258736, 0.9732684630579094, 0.9749048137207086],
        );
        assert_close(
            &wfg1(&off_center(9), 3, 2),
            &[2.8951814510965574, 0.9757977602830415, 0.9730102903004939],
        );
    }

    #[test]
    fn wfg2_wfg3_match_reference() {
        assert_close(
            &wfg2(&mid_range(10), 3, 2),
            &[0.3254190290999637, 0.49699190435377366, 6.153846153846154],
        );
        assert_close(
            &wfg2(&off_center(10), 3, 2),
            &[0.6193362734708143, 2.431132735397203, 3.56845238095239],
        );
        assert_close(
            &wfg3(&mid_range(10), 3, 2),
            &[0.6538461538461539, 1.1538461538461537, 3.1538461538461537],
        );
        assert_close(
            &wfg3(&off_center(10), 3, 2),
            &[1.2094404761904762, 2.6364761904761904, 0.7184523809523813],
        );
    }

    #[test]
    fn wfg5_matches_reference() {
        assert_close(
            &wfg5(&mid_range(9), 3, 2),
            &[2.5561900214971445, 2.0475453578126994, 2.7975076947610167],
        );
        assert_close(
            &wfg5(&off_center(9), 3, 2),
            &[1.0705197385909753, 0.8543119570494361, 6.582346379288016],
        );
    }

    #[test]
    fn many_objective_reference() {
        let z: Vec<f64> = (1..=14).map(|i| 0.77 * i as f64).collect();
        assert_close(
            &wfg4(&z, 10, 9),
            &[
                0.13793356759469966,
                0.13794942350703868,
                0.138055926600441,
                0.1387026857014801,
                0.14241522229360704,
                0.162959776799058,
                0.2737615027597843,
                0.8600473212485171,
                3.9169482044069963,
                19.67033885643753,
            ],
        );
        let z: Vec<f64> = (1..=24).map(|i| 0.77 * i as f64).collect();
        assert_close(
            &wfg1(&z, 5, 4),
            &[
                2.7172511939231416,
                0.9460719871191257,
                0.946951870530137,
                0.9478841053442331,
                0.9553871911538893,
            ],
        );
    }

    #[test]
    fn odd_distance_count_pairs_last_with_itself() {
        // y = 0.35 is the s_linear optimum, so an optimal tail maps to zero either way.
        let mut z: Vec<f64> = (1..=9).map(|i| 0.7 * i as f64).collect();
        z[0] = 1.0;
        z[1] = 2.0;
        let f = wfg3(&z, 3, 2);
        let total: f64 = f.iter().enumerate().map(|(j, v)| v / (2.0 * (j + 1) as f64)).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!((r_nonsep(&[0.3, 0.3], 2) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn primitive_spot_values() {
        assert_eq!(s_linear(0.35, 0.35), 0.0);
        assert!((b_flat(0.8, 0.8, 0.75, 0.85) - 0.8).abs() < 1e-15);
        assert!(s_multi(0.35, 30.0, 10.0, 0.35).abs() < 1e-12);
        assert!(s_decept(0.35, 0.35, 0.001, 0.05).abs() < 1e-12);
        assert!((r_sum(&[0.2, 0.4], &[1.0, 3.0]) - 0.35).abs() < 1e-15);
    }
}
