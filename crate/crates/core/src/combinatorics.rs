//! Counting and unranking of k-combinations, the basis for deterministic
//! (size, then lexicographic) subset enumeration in the solvers and
//! oracles.

/// Binomial coefficient `C(n, k)`, or `None` on u64 overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Writes the `rank`-th (0-based) `s`-combination of `0..n` into `out`,
/// in lexicographic order of the ascending index tuples.
///
/// Rank 0 is `[0, 1, .., s-1]`; the last rank is `[n-s, .., n-1]`.
pub fn unrank_combination(n: usize, s: usize, mut rank: u64, out: &mut Vec<usize>) {
    out.clear();
    debug_assert!(rank < binomial(n as u64, s as u64).expect("combination count overflow"));
    let mut next = 0usize;
    for pos in 0..s {
        let mut c = next;
        loop {
            // combinations that fix `c` at position `pos`
            let count = binomial((n - 1 - c) as u64, (s - 1 - pos) as u64).expect("overflow");
            if rank < count {
                break;
            }
            rank -= count;
            c += 1;
        }
        out.push(c);
        next = c + 1;
    }
}
