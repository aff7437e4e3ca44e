/// NSGA-II crowding distance of each member of one front.
///
/// Per objective the front is stably sorted; the two extremes get infinity
/// and interior members accumulate `(next - prev) / (max - min)`. An
/// objective with `max == min` adds nothing to interior members.
pub fn crowding_distance<V: AsRef<[f64]>>(front: &[V]) -> Vec<f64> {
    let len = front.len();
    if len <= 2 {
        return vec![f64::INFINITY; len];
    }
    let m = front[0].as_ref().len();
    let mut distance = vec![0.0; len];
    let mut order: Vec<usize> = (0..len).collect();
    for obj in 0..m {
        let value = |i: usize| front[i].as_ref()[obj];
        // Ties keep index order, whatever the previous objective did.
        order.sort_by(|&a, &b| value(a).total_cmp(&value(b)).then(a.cmp(&b)));
        let (first, last) = (order[0], order[len - 1]);
        distance[first] = f64::INFINITY;
        distance[last] = f64::INFINITY;
        let range = value(last) - value(first);
        if range <= 0.0 {
            continue;
        }
        for w in order.windows(3) {
            distance[w[1]] += (value(w[2]) - value(w[0])) / range;
        }
    }
    distance
}
