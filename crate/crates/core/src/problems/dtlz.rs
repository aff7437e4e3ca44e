//! DTLZ1-5. The last `n - M + 1` variables are distance variables.

use std::f64::consts::{FRAC_PI_2, PI};

fn split(x: &[f64], m: usize) -> (&[f64], &[f64]) {
    x.split_at(m - 1)
}

fn g_rastrigin(distance: &[f64]) -> f64 {
    let k = distance.len() as f64;
    let sum: f64 = distance
        .iter()
        .map(|&v| {
            let d = v - 0.5;
            d * d - (20.0 * PI * d).cos()
        })
        .sum();
    100.0 * (k + sum)
}

fn g_sphere(distance: &[f64]) -> f64 {
    distance.iter().map(|&v| (v - 0.5) * (v - 0.5)).sum()
}

/// Linear front: `f_1 = 0.5 (1+g) x_1 ... x_{M-1}`, `f_M = 0.5 (1+g)(1 - x_1)`.
fn linear_front(position: &[f64], m: usize, g: f64) -> Vec<f64> {
    (0..m)
        .map(|j| {
            let kept = m - 1 - j;
            let mut f = 0.5 * (1.0 + g);
            f *= position[..kept].iter().product::<f64>();
            if j > 0 {
                f *= 1.0 - position[kept];
            }
            f
        })
        .collect()
}

/// Spherical front over angles `theta` (already in radians).
fn spherical_front(theta: &[f64], m: usize, g: f64) -> Vec<f64> {
    (0..m)
        .map(|j| {
            let kept = m - 1 - j;
            let mut f = 1.0 + g;
            f *= theta[..kept].iter().map(|t| t.cos()).product::<f64>();
            if j > 0 {
                f *= theta[kept].sin();
            }
            f
        })
        .collect()
}

pub(super) fn dtlz1(x: &[f64], m: usize) -> Vec<f64> {
    let (position, distance) = split(x, m);
    linear_front(position, m, g_rastrigin(distance))
}

pub(super) fn dtlz2(x: &[f64], m: usize) -> Vec<f64> {
    let (position, distance) = split(x, m);
    let theta: Vec<f64> = position.iter().map(|v| v * FRAC_PI_2).collect();
    spherical_front(&theta, m, g_sphere(distance))
}

pub(super) fn dtlz3(x: &[f64], m: usize) -> Vec<f64> {
    let (position, distance) = split(x, m);
    let theta: Vec<f64> = position.iter().map(|v| v * FRAC_PI_2).collect();
    spherical_front(&theta, m, g_rastrigin(distance))
}

const DTLZ4_ALPHA: f64 = 100.0;

pub(super) fn dtlz4(x: &[f64], m: usize) -> Vec<f64> {
    let (position, distance) = split(x, m);
    let theta: Vec<f64> = position
        .iter()
        .map(|v| v.powf(DTLZ4_ALPHA) * FRAC_PI_2)
        .collect();
    spherical_front(&theta, m, g_sphere(distance))
}

pub(super) fn dtlz5(x: &[f64], m: usize) -> Vec<f64> {
    let (position, distance) = split(x, m);
    let g = g_sphere(distance);
    let theta: Vec<f64> = position
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if i == 0 {
                v * FRAC_PI_2
            } else {
                PI / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * v)
            }
        })
        .collect();
    spherical_front(&theta, m, g)
}
