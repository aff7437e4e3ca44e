use crate::error::{Error, Result};
use crate::types::Population;

use super::crowding::crowding_distance;
use super::sort::fast_nondominated_sort;

/// Reduces `combined` to `target_size` members.
///
/// Fronts come from `sort_objectives`; crowding distance is computed on the
/// raw objectives. Whole fronts are taken in rank order and the front that
/// does not fit is truncated by descending crowding distance, ties going to
/// the lower index. Every survivor carries its rank and crowding distance.
pub fn environmental_selection(combined: Population, target_size: usize) -> Result<Population> {
    if combined.len() < target_size {
        return Err(Error::usage(format!(
            "cannot select {target_size} members from a population of {}",
            combined.len()
        )));
    }
    let fronts = fast_nondominated_sort(&combined);
    let mut members: Vec<Option<_>> = combined.members.into_iter().map(Some).collect();
    let mut selected = Vec::with_capacity(target_size);

    for (rank, front) in fronts.iter().enumerate() {
        let remaining = target_size - selected.len();
        if remaining == 0 {
            break;
        }
        let raw: Vec<&[f64]> = front
            .iter()
            .map(|&i| &members[i].as_ref().expect("member taken twice").objectives[..])
            .collect();
        let crowding = crowding_distance(&raw);

        let mut picks: Vec<usize> = (0..front.len()).collect();
        if front.len() > remaining {
            // Stable sort keeps index order among equal distances.
            picks.sort_by(|&a, &b| crowding[b].total_cmp(&crowding[a]));
            picks.truncate(remaining);
        }
        for p in picks {
            let mut ind = members[front[p]].take().expect("member taken twice");
            ind.rank = rank;
            ind.crowding = crowding[p];
            selected.push(ind);
        }
    }
    Ok(Population::new(selected))
}
