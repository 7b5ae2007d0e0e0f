//! Bitmask helpers for subsets of small carriers.

use crate::Mask;

#[inline]
pub fn bit(i: usize) -> Mask {
    1u64 << i
}

#[inline]
pub fn contains(m: Mask, i: usize) -> bool {
    m & bit(i) != 0
}

/// Mask with the low `n` bits set: the full carrier of size `n`.
#[inline]
pub fn full(n: usize) -> Mask {
    if n == 0 {
        0
    } else if n == 64 {
        Mask::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// Indices of the set bits, ascending.
pub fn bits(m: Mask) -> impl Iterator<Item = usize> {
    let mut rest = m;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// `{a, b, c}` using the carrier labels; `{}` for the empty set.
pub fn label_set(m: Mask, labels: &[String]) -> String {
    let inner: Vec<&str> = bits(m).map(|i| labels[i].as_str()).collect();
    format!("{{{}}}", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bits_ascending() {
        assert_eq!(bits(0b1011).collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(bits(0).count(), 0);
    }

    #[test]
    fn full_edges() {
        assert_eq!(full(0), 0);
        assert_eq!(full(3), 0b111);
        assert_eq!(full(64), Mask::MAX);
    }

    #[test]
    fn subset_and_label() {
        assert!(is_subset(0b010, 0b110));
        assert!(!is_subset(0b001, 0b110));
        let labels = vec!["x".to_string(), "y".to_string()];
        assert_eq!(label_set(0b11, &labels), "{x,y}");
        assert_eq!(label_set(0, &labels), "{}");
    }
}
