//! Combination enumeration helpers used by the brute-force searches.

/// Calls `f` on every `r`-subset of `items`, in lexicographic order of
/// positions. Stops early and returns `false` as soon as `f` does.
pub(crate) fn for_each_subset(items: &[usize], r: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let n = items.len();
    if r > n {
        return true;
    }
    let mut pos: Vec<usize> = (0..r).collect();
    let mut buf: Vec<usize> = pos.iter().map(|&p| items[p]).collect();
    loop {
        if !f(&buf) {
            return false;
        }
        let Some(i) = (0..r).rev().find(|&i| pos[i] < i + n - r) else {
            return true;
        };
        pos[i] += 1;
        buf[i] = items[pos[i]];
        for j in i + 1..r {
            pos[j] = pos[j - 1] + 1;
            buf[j] = items[pos[j]];
        }
    }
}

/// Same as [`for_each_subset`] over `0..n`.
pub(crate) fn for_each_combination(n: usize, r: usize, f: impl FnMut(&[usize]) -> bool) -> bool {
    let items: Vec<usize> = (0..n).collect();
    for_each_subset(&items, r, f)
}

/// All `r`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_combination(n, r, |c| {
        out.push(c.to_vec());
        true
    });
    out
}

/// Saturating binomial coefficient.
pub(crate) fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_in_lex_order() {
        let all = combinations(4, 2);
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn counts_match_binomial() {
        for n in 0..9 {
            for r in 0..=n {
                assert_eq!(combinations(n, r).len() as u128, binomial(n, r));
            }
        }
        assert_eq!(binomial(200, 3), 1_313_400);
    }

    #[test]
    fn early_stop() {
        let mut seen = 0;
        let done = for_each_combination(6, 3, |_| {
            seen += 1;
            seen < 4
        });
        assert!(!done);
        assert_eq!(seen, 4);
    }
}
