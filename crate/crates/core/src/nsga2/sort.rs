use crate::dominance::{compare, Dominance};
use crate::types::Population;

/// Partitions `points` into non-dominated fronts (Deb's O(M N^2) procedure).
/// Each front lists member indices in ascending order.
pub fn nondominated_fronts<V: AsRef<[f64]>>(points: &[V]) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut dominated_by_me: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];

    for i in 0..n {
        for j in i + 1..n {
            match compare(points[i].as_ref(), points[j].as_ref()) {
                Dominance::Dominates => {
                    dominated_by_me[i].push(j);
                    domination_count[j] += 1;
                }
                Dominance::Dominated => {
                    dominated_by_me[j].push(i);
                    domination_count[i] += 1;
                }
                Dominance::NonDominated => {}
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| domination_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominated_by_me[p] {
                domination_count[q] -= 1;
                if domination_count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Fronts of a population, computed on each member's `sort_objectives`.
pub fn fast_nondominated_sort(pop: &Population) -> Vec<Vec<usize>> {
    let points: Vec<&[f64]> = pop.iter().map(|m| &m.sort_objectives[..]).collect();
    nondominated_fronts(&points)
}
