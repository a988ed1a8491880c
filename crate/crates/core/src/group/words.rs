//! Reduced alternating words in the free product `Z * Z_n`.
//!
//! The same machinery carries `BS(n,n)`, which is stored as a pair
//! `(word, c)` meaning `(b^n)^c · s(word)` for the section `s` that lifts
//! every syllable literally (`a^k ↦ a^k`, `b^j ↦ b^j` with `0 < j < n`).

use alloc::vec::Vec;

/// One syllable of a reduced word: a nonzero power of `a`, or `b^j` with
/// `0 < j < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Syllable {
    A(i64),
    B(u32),
}

impl Syllable {
    fn same_factor(self, other: Syllable) -> bool {
        matches!(
            (self, other),
            (Syllable::A(_), Syllable::A(_)) | (Syllable::B(_), Syllable::B(_))
        )
    }

    /// Inverse syllable and the number of central `b^n` factors it emits.
    pub fn inverse(self, n: u32) -> (Syllable, i64) {
        match self {
            Syllable::A(k) => (Syllable::A(-k), 0),
            Syllable::B(j) => (Syllable::B(n - j), -1),
        }
    }
}

pub type Word = Vec<Syllable>;

pub fn is_reduced(word: &[Syllable], n: u32) -> bool {
    word.iter().all(|s| match *s {
        Syllable::A(k) => k != 0,
        Syllable::B(j) => j > 0 && j < n,
    }) && word.windows(2).all(|w| !w[0].same_factor(w[1]))
}

/// Appends a syllable to a reduced word, returning the number of `b^n`
/// factors produced when `b`-syllables wrap around.
pub fn push(word: &mut Word, syllable: Syllable, n: u32) -> i64 {
    let mut carry = 0;
    match (word.last().copied(), syllable) {
        (Some(Syllable::A(x)), Syllable::A(y)) => {
            word.pop();
            if x + y != 0 {
                word.push(Syllable::A(x + y));
            }
        }
        (Some(Syllable::B(x)), Syllable::B(y)) => {
            word.pop();
            let total = x + y;
            if total >= n {
                carry += 1;
            }
            let rest = total % n;
            if rest != 0 {
                word.push(Syllable::B(rest));
            }
        }
        _ => word.push(syllable),
    }
    carry
}

/// Product of two reduced words with the emitted central count.
pub fn multiply(left: &[Syllable], right: &[Syllable], n: u32) -> (Word, i64) {
    let mut out: Word = left.to_vec();
    let mut carry = 0;
    for &s in right {
        carry += push(&mut out, s, n);
    }
    (out, carry)
}

pub fn inverse(word: &[Syllable], n: u32) -> (Word, i64) {
    let mut carry = 0;
    let out = word
        .iter()
        .rev()
        .map(|&s| {
            let (inv, c) = s.inverse(n);
            carry += c;
            inv
        })
        .collect();
    (out, carry)
}

/// Number of letters when every syllable is spelled out.
pub fn letter_length(word: &[Syllable]) -> u64 {
    word.iter()
        .map(|s| match *s {
            Syllable::A(k) => k.unsigned_abs(),
            Syllable::B(j) => u64::from(j),
        })
        .sum()
}

/// Exponent sums `(Σ a-exponents, Σ b-exponents)` of the literal lift.
pub fn exponent_sums(word: &[Syllable]) -> (i64, i64) {
    word.iter().fold((0, 0), |(a, b), s| match *s {
        Syllable::A(k) => (a + k, b),
        Syllable::B(j) => (a, b + i64::from(j)),
    })
}

/// Writes `word = u · core · u⁻¹` with `core` cyclically reduced.
/// Returns `(u, core)`; both are reduced words in the free product.
pub fn cyclic_reduction(word: &[Syllable], n: u32) -> (Word, Word) {
    let mut core: Word = word.to_vec();
    let mut conj: Word = Vec::new();
    while core.len() >= 2 && core[0].same_factor(core[core.len() - 1]) {
        let first = core[0];
        let (first_inv, _) = first.inverse(n);
        // core ← first⁻¹ · core · first
        let (tmp, _) = multiply(&[first_inv], &core, n);
        let (next, _) = multiply(&tmp, &[first], n);
        core = next;
        push(&mut conj, first, n);
    }
    (conj, core)
}

/// Shortest `root` with `core = root^k` for a cyclically reduced word.
pub fn primitive_root(core: &[Syllable]) -> Word {
    let len = core.len();
    for period in 1..=len {
        if !len.is_multiple_of(period) {
            continue;
        }
        if (period..len).all(|i| core[i] == core[i - period]) {
            return core[..period].to_vec();
        }
    }
    core.to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use Syllable::{A, B};

    #[test]
    fn b_syllables_wrap_into_central_count() {
        let (w, c) = multiply(&[B(1)], &[B(1)], 2);
        assert!(w.is_empty());
        assert_eq!(c, 1);
        let (w, c) = multiply(&[B(2)], &[B(2)], 3);
        assert_eq!(w, vec![B(1)]);
        assert_eq!(c, 1);
    }

    #[test]
    fn cancellation_cascades() {
        // a b · b⁻¹ a⁻¹ in Z * Z_3
        let (w, c) = multiply(&[A(1), B(1)], &[B(2), A(-1)], 3);
        assert!(w.is_empty());
        assert_eq!(c, 1);
    }

    #[test]
    fn inverse_cancels() {
        let w = vec![A(2), B(1), A(-1), B(2)];
        let (inv, c1) = inverse(&w, 3);
        let (prod, c2) = multiply(&w, &inv, 3);
        assert!(prod.is_empty());
        assert_eq!(c1 + c2, 0);
    }

    #[test]
    fn cyclic_reduction_and_root() {
        let w = vec![A(1), B(1), A(1), B(1), A(-1)];
        let (u, core) = cyclic_reduction(&w, 3);
        assert_eq!(u, vec![A(1), B(1)]);
        assert_eq!(core, vec![A(1), B(2)]);
        assert!(is_reduced(&core, 3));
        // in Z * Z_2 the same word is conjugate into the first factor
        let (_, core) = cyclic_reduction(&w, 2);
        assert_eq!(core, vec![A(1)]);
        assert_eq!(primitive_root(&[A(1), B(1), A(1), B(1)]), vec![A(1), B(1)]);
    }
}
