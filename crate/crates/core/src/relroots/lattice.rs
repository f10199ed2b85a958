//! Small exact helpers on integer vectors of the relative root lattice.

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Whether two vectors are linearly dependent over the rationals.
pub fn dependent(a: &[i32], b: &[i32]) -> bool {
    for p in 0..a.len() {
        for q in p + 1..a.len() {
            if a[p] as i64 * b[q] as i64 != a[q] as i64 * b[p] as i64 {
                return false;
            }
        }
    }
    true
}

/// Whether `m a = -k b` for some positive integers `m, k`.
pub fn opposite_multiples(a: &[i32], b: &[i32]) -> bool {
    if a.iter().all(|&x| x == 0) || b.iter().all(|&x| x == 0) || !dependent(a, b) {
        return false;
    }
    // dependent and nonzero: compare signs on a coordinate where both are nonzero
    let p = a.iter().position(|&x| x != 0).unwrap();
    (a[p] > 0) != (b[p] > 0)
}

/// For dependent nonzero `a`, writes `a = c * prim` with `prim` primitive and
/// its first nonzero coordinate positive; returns `c`.
fn multiple_of_primitive(a: &[i32]) -> (i64, Vec<i64>) {
    let g = a.iter().fold(0i64, |g, &x| gcd(g, x as i64));
    let p = a.iter().position(|&x| x != 0).unwrap();
    let sign = if a[p] > 0 { 1 } else { -1 };
    let c = g * sign;
    (c, a.iter().map(|&x| x as i64 / c).collect())
}

/// Integer coordinates `(i, j)` with `target = i a + j b`, for linearly
/// independent `a`, `b`. `None` if `target` is not such a combination.
pub fn coordinates(target: &[i32], a: &[i32], b: &[i32]) -> Option<(i64, i64)> {
    let n = a.len();
    for p in 0..n {
        for q in p + 1..n {
            let det = a[p] as i64 * b[q] as i64 - a[q] as i64 * b[p] as i64;
            if det == 0 {
                continue;
            }
            let ni = target[p] as i64 * b[q] as i64 - target[q] as i64 * b[p] as i64;
            let nj = a[p] as i64 * target[q] as i64 - a[q] as i64 * target[p] as i64;
            if ni % det != 0 || nj % det != 0 {
                return None;
            }
            let (i, j) = (ni / det, nj / det);
            let ok = (0..n).all(|r| i * a[r] as i64 + j * b[r] as i64 == target[r] as i64);
            return ok.then_some((i, j));
        }
    }
    None
}

/// Whether `target = i a + j b` for some integers `i, j >= 1`.
pub fn positive_combination(target: &[i32], a: &[i32], b: &[i32]) -> bool {
    if target.iter().all(|&x| x == 0) && opposite_multiples(a, b) {
        return true;
    }
    if !dependent(a, b) {
        return matches!(coordinates(target, a, b), Some((i, j)) if i >= 1 && j >= 1);
    }
    // a = ca * prim, b = cb * prim; need target = ct * prim with i ca + j cb = ct
    if !dependent(target, a) || target.iter().all(|&x| x == 0) {
        return false;
    }
    let (ca, prim) = multiple_of_primitive(a);
    let (cb, _) = multiple_of_primitive(b);
    let p = prim.iter().position(|&x| x != 0).unwrap();
    if target[p] as i64 % prim[p] != 0 {
        return false;
    }
    let ct = target[p] as i64 / prim[p];
    if (0..a.len()).any(|r| ct * prim[r] != target[r] as i64) {
        return false;
    }
    if (ca > 0) == (cb > 0) {
        // finite search: |i ca| <= |ct|
        if (ct > 0) != (ca > 0) {
            return false;
        }
        let (ca, cb, ct) = (ca.abs(), cb.abs(), ct.abs());
        (1..=ct / ca).any(|i| {
            let rest = ct - i * ca;
            rest >= cb && rest % cb == 0
        })
    } else {
        ct % gcd(ca, cb) == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basics() {
        assert!(dependent(&[2, 0], &[-1, 0]));
        assert!(opposite_multiples(&[2, 0], &[-1, 0]));
        assert!(!opposite_multiples(&[2, 0], &[1, 0]));
        assert!(!opposite_multiples(&[1, 0], &[0, 1]));
        assert_eq!(coordinates(&[3, 1], &[1, 0], &[1, 1]), Some((2, 1)));
        assert_eq!(coordinates(&[1, 1], &[2, 0], &[0, 1]), None);
        assert!(positive_combination(&[1, 0], &[1, 0], &[-1, 0]));
        assert!(positive_combination(&[3, 0], &[1, 0], &[2, 0]));
        assert!(!positive_combination(&[2, 0], &[1, 0], &[2, 0]));
        assert!(!positive_combination(&[1, 0], &[2, 0], &[2, 0]));
        assert!(positive_combination(&[0, 0], &[2, 0], &[-2, 0]));
    }

    proptest! {
        #[test]
        fn positive_combination_matches_brute_force(
            a in prop::collection::vec(-3i32..=3, 2),
            b in prop::collection::vec(-3i32..=3, 2),
            t in prop::collection::vec(-4i32..=4, 2),
        ) {
            prop_assume!(a.iter().any(|&x| x != 0) && b.iter().any(|&x| x != 0));
            let brute = (1..=40).any(|i| (1..=40).any(|j| (0..2).all(|r| i * a[r] + j * b[r] == t[r])));
            prop_assert_eq!(positive_combination(&t, &a, &b), brute);
        }
    }
}
