//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use moea_disc::{DecisionVector, Individual, ObjectiveVector, Population, RandomSource};

pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

/// Fronts by repeated peeling: a member belongs to the current front when no
/// other remaining member dominates it. Each front is in ascending index order.
pub fn brute_force_fronts(points: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let mut remaining: Vec<usize> = (0..points.len()).collect();
    let mut fronts = Vec::new();
    while !remaining.is_empty() {
        let front: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| !remaining.iter().any(|&j| dominates(&points[j], &points[i])))
            .collect();
        remaining.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    fronts
}

/// Crowding distance from scratch: per objective, order by (value, position)
/// with an insertion sort, extremes infinite, interior normalized gaps.
pub fn brute_force_crowding(front: &[Vec<f64>]) -> Vec<f64> {
    let n = front.len();
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let mut d = vec![0.0; n];
    for obj in 0..front[0].len() {
        let mut order: Vec<usize> = Vec::with_capacity(n);
        for i in 0..n {
            let mut pos = order.len();
            while pos > 0 && front[order[pos - 1]][obj] > front[i][obj] {
                pos -= 1;
            }
            order.insert(pos, i);
        }
        let lo = front[order[0]][obj];
        let hi = front[order[n - 1]][obj];
        d[order[0]] = f64::INFINITY;
        d[order[n - 1]] = f64::INFINITY;
        if hi - lo <= 0.0 {
            continue;
        }
        for k in 1..n - 1 {
            d[order[k]] += (front[order[k + 1]][obj] - front[order[k - 1]][obj]) / (hi - lo);
        }
    }
    d
}

/// Indices (into `sort` / `raw`) of the members environmental selection keeps,
/// in output order, with their rank and crowding.
pub fn brute_force_selection(
    sort: &[Vec<f64>],
    raw: &[Vec<f64>],
    target: usize,
) -> Vec<(usize, usize, f64)> {
    let mut out = Vec::new();
    for (rank, front) in brute_force_fronts(sort).into_iter().enumerate() {
        let room = target - out.len();
        if room == 0 {
            break;
        }
        let objs: Vec<Vec<f64>> = front.iter().map(|&i| raw[i].clone()).collect();
        let crowd = brute_force_crowding(&objs);
        let mut picks: Vec<usize> = (0..front.len()).collect();
        if front.len() > room {
            // Selection by repeated maximum, earliest position on ties.
            let mut chosen = Vec::new();
            let mut pool = picks.clone();
            while chosen.len() < room {
                let mut best = 0;
                for k in 1..pool.len() {
                    if crowd[pool[k]] > crowd[pool[best]] {
                        best = k;
                    }
                }
                chosen.push(pool.remove(best));
            }
            picks = chosen;
        }
        for p in picks {
            out.push((front[p], rank, crowd[p]));
        }
    }
    out
}

/// Random objective vectors. Values come from a small integer grid about a
/// third of the time so that ties and duplicates show up.
pub fn random_points(rng: &mut RandomSource, n: usize, m: usize) -> Vec<Vec<f64>> {
    let coarse = rng.uniform() < 0.35;
    (0..n)
        .map(|_| {
            (0..m)
                .map(|_| {
                    if coarse {
                        rng.below(4) as f64
                    } else {
                        rng.uniform()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn population(sort: &[Vec<f64>], raw: &[Vec<f64>]) -> Population {
    sort.iter()
        .zip(raw)
        .enumerate()
        .map(|(i, (s, r))| {
            let mut ind = Individual::new(DecisionVector(vec![i as f64]), ObjectiveVector(r.clone()));
            ind.sort_objectives = ObjectiveVector(s.clone());
            ind
        })
        .collect()
}

/// Mean over `from` of the Euclidean distance to the closest point of `to`.
pub fn double_loop_mean_min(from: &[Vec<f64>], to: &[Vec<f64>]) -> f64 {
    let mut total = 0.0;
    for p in from {
        let mut best = f64::INFINITY;
        for q in to {
            let d: f64 = p.iter().zip(q).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            if d < best {
                best = d;
            }
        }
        total += best;
    }
    total / from.len() as f64
}

fn midranks(pooled: &[f64]) -> Vec<f64> {
    pooled
        .iter()
        .map(|&v| {
            let below = pooled.iter().filter(|&&w| w < v).count() as f64;
            let equal = pooled.iter().filter(|&&w| w == v).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect()
}

/// Two-sided exact rank-sum p-value by enumerating every way of choosing
/// which pooled positions belong to the first sample.
pub fn exhaustive_rank_sum_p(a: &[f64], b: &[f64]) -> f64 {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = midranks(&pooled);
    let n = pooled.len();
    let observed: f64 = ranks[..a.len()].iter().sum();
    let (mut total, mut le, mut ge) = (0u64, 0u64, 0u64);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != a.len() {
            continue;
        }
        let w: f64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| ranks[i]).sum();
        total += 1;
        if w <= observed + 1e-9 {
            le += 1;
        }
        if w >= observed - 1e-9 {
            ge += 1;
        }
    }
    (2.0 * le.min(ge) as f64 / total as f64).min(1.0)
}

/// Two-sided rank-sum p-value estimated from `perms` random relabelings.
pub fn monte_carlo_rank_sum_p(a: &[f64], b: &[f64], perms: usize, rng: &mut RandomSource) -> f64 {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let mut ranks = midranks(&pooled);
    let observed: f64 = ranks[..a.len()].iter().sum();
    let (mut le, mut ge) = (0usize, 0usize);
    for _ in 0..perms {
        // Partial Fisher-Yates: only the first |a| slots are needed.
        for i in 0..a.len() {
            let j = i + rng.below(ranks.len() - i);
            ranks.swap(i, j);
        }
        let w: f64 = ranks[..a.len()].iter().sum();
        if w <= observed + 1e-9 {
            le += 1;
        }
        if w >= observed - 1e-9 {
            ge += 1;
        }
    }
    (2.0 * le.min(ge) as f64 / perms as f64).min(1.0)
}
