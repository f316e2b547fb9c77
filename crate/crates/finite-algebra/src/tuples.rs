/// Calls `f` on every tuple in `0..n` of length `k`, in row-major order.
pub fn for_each_tuple(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let ranges = vec![(0, n); k];
    for_each_tuple_in(&ranges, &mut f);
}

/// Calls `f` on every tuple whose `j`-th entry lies in `ranges[j].0..ranges[j].1`.
pub fn for_each_tuple_in(ranges: &[(usize, usize)], f: &mut impl FnMut(&[usize])) {
    if ranges.iter().any(|&(lo, hi)| lo >= hi) {
        return;
    }
    let mut t: Vec<usize> = ranges.iter().map(|r| r.0).collect();
    loop {
        f(&t);
        let mut j = ranges.len();
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            t[j] += 1;
            if t[j] < ranges[j].1 {
                break;
            }
            t[j] = ranges[j].0;
        }
    }
}

/// Calls `f` on every tuple over `0..end` of length `k` with some entry `≥ start`,
/// each exactly once. Used for semi-naive closure.
pub fn for_each_new_tuple(end: usize, start: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    for p in 0..k {
        let ranges: Vec<(usize, usize)> = (0..k)
            .map(|j| match j.cmp(&p) {
                std::cmp::Ordering::Less => (0, start),
                std::cmp::Ordering::Equal => (start, end),
                std::cmp::Ordering::Greater => (0, end),
            })
            .collect();
        for_each_tuple_in(&ranges, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn all_tuples_row_major() {
        let mut seen = Vec::new();
        for_each_tuple(2, 2, |t| seen.push(t.to_vec()));
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let mut count = 0;
        for_each_tuple(3, 0, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn new_tuples_partition() {
        for k in 1..4 {
            let mut seen = BTreeSet::new();
            let mut total = 0;
            for_each_new_tuple(5, 2, k, &mut |t| {
                total += 1;
                seen.insert(t.to_vec());
            });
            assert_eq!(total, seen.len());
            let mut expected = BTreeSet::new();
            for_each_tuple(5, k, |t| {
                if t.iter().any(|&x| x >= 2) {
                    expected.insert(t.to_vec());
                }
            });
            assert_eq!(seen, expected);
        }
    }
}
