pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest power of `p` dividing `n` (`n > 0`).
pub(crate) fn p_part(n: usize, p: usize) -> usize {
    let mut n = n;
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

pub(crate) fn is_power_of(n: usize, p: usize) -> bool {
    n >= 1 && p_part(n, p) == n
}
