//! Counting and enumeration helpers shared by the basis code and the map builders.

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `binomial` as a `usize`, for dimensions.
pub fn choose(n: usize, k: usize) -> usize {
    usize::try_from(binomial(n as i64, k as i64)).expect("dimension fits in usize")
}

/// Number of multisets of size `n` drawn from `items` elements.
pub fn multiset_count(items: usize, n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    if items == 0 {
        return 0;
    }
    choose(items + n - 1, n)
}

/// Sorted multisets of size `n` from `0..items`, in lexicographic order.
pub fn multisets(items: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(multiset_count(items, n));
    let mut cur = Vec::with_capacity(n);
    fn rec(items: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in start..items {
            cur.push(v);
            rec(items, n, v, cur, out);
            cur.pop();
        }
    }
    rec(items, n, 0, &mut cur, &mut out);
    out
}

/// Strictly decreasing tuples of length `m` from `0..items`, in lexicographic order.
pub fn decreasing_tuples(items: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(bound: usize, m: usize) -> Vec<Vec<usize>> {
        if m == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (m - 1)..bound {
            for mut rest in rec(first, m - 1) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    rec(items, m)
}

/// All distinct rearrangements of `seq`, in lexicographic order.
pub fn distinct_permutations(seq: &[usize]) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = seq.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next_permutation
    loop {
        let n = cur.len();
        if n < 2 {
            return out;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Number of distinct rearrangements of a sorted sequence.
pub fn orbit_size(sorted: &[usize]) -> u128 {
    let mut acc: u128 = 1;
    let mut placed = 0i64;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let run = (j - i) as i64;
        acc *= binomial(placed + run, run);
        placed += run;
        i = j;
    }
    acc
}

/// Sorts into strictly decreasing order. Returns `None` on a repeated entry, else the sign of
/// the sorting permutation.
pub fn sort_decreasing_with_sign(seq: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut v = seq.to_vec();
    let mut sign = 1;
    // insertion sort counts transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] < v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some((sign, v))
}

/// Inserts `x` into a sorted vector.
pub fn insert_sorted(sorted: &[usize], x: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(sorted.len() + 1);
    let pos = sorted.partition_point(|&y| y <= x);
    out.extend_from_slice(&sorted[..pos]);
    out.push(x);
    out.extend_from_slice(&sorted[pos..]);
    out
}

/// Merges two sorted vectors.
pub fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(40, 20), 137_846_528_820);
    }

    #[test]
    fn multiset_enumeration() {
        assert_eq!(multisets(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(multisets(4, 3).len(), multiset_count(4, 3));
        assert_eq!(multisets(0, 0), vec![Vec::<usize>::new()]);
        assert!(multisets(0, 2).is_empty());
    }

    #[test]
    fn decreasing_enumeration() {
        assert_eq!(decreasing_tuples(3, 2), vec![vec![1, 0], vec![2, 0], vec![2, 1]]);
        assert_eq!(decreasing_tuples(6, 3).len(), 20);
        assert!(decreasing_tuples(2, 3).is_empty());
    }

    #[test]
    fn permutations_and_orbits() {
        let p = distinct_permutations(&[1, 0, 1]);
        assert_eq!(p, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert_eq!(orbit_size(&[0, 1, 1]), 3);
        assert_eq!(orbit_size(&[0, 1, 2, 2]), 12);
        assert_eq!(orbit_size(&[]), 1);
    }

    #[test]
    fn sorting_sign() {
        assert_eq!(sort_decreasing_with_sign(&[0, 1]), Some((-1, vec![1, 0])));
        assert_eq!(sort_decreasing_with_sign(&[2, 0, 1]), Some((-1, vec![2, 1, 0])));
        assert_eq!(sort_decreasing_with_sign(&[0, 2, 1]), Some((1, vec![2, 1, 0])));
        assert_eq!(sort_decreasing_with_sign(&[1, 0, 1]), None);
    }
}
