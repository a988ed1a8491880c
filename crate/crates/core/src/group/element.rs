use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::words::{Syllable, Word};

/// A group element in the canonical normal form of its family.
///
/// Two elements of the same group are equal iff their normal forms are
/// identical, so the derived `Eq`/`Ord` are the group's equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Index into the multiplication table.
    Finite(u32),
    FreeAbelian(Vec<i64>),
    /// `t^shift · s^flip`.
    Dihedral { shift: i64, flip: bool },
    /// Upper unitriangular matrix `[[1,x,z],[0,1,y],[0,0,1]]` as `[x, y, z]`.
    Heisenberg([i64; 3]),
    /// `(b^n)^central · s(word)`.
    BaumslagSolitar { word: Word, central: i64 },
    FreeProduct(Word),
    /// `(lamps, shift)` with `lamps` sorted and duplicate free.
    Lamplighter { lamps: Vec<i64>, shift: i64 },
    Product(Vec<GroupElement>),
}

impl GroupElement {
    pub fn family_name(&self) -> &'static str {
        match self {
            GroupElement::Finite(_) => "finite",
            GroupElement::FreeAbelian(_) => "free_abelian",
            GroupElement::Dihedral { .. } => "infinite_dihedral",
            GroupElement::Heisenberg(_) => "heisenberg3",
            GroupElement::BaumslagSolitar { .. } => "baumslag_solitar",
            GroupElement::FreeProduct(_) => "free_product",
            GroupElement::Lamplighter { .. } => "lamplighter",
            GroupElement::Product(_) => "direct_product",
        }
    }

    /// Shortlex key used for deterministic witness selection: the element is
    /// spelled as a word in the family generators (letter codes `2i` for the
    /// i-th generator, `2i+1` for its inverse) and words are compared by
    /// length first, then lexicographically.
    pub fn shortlex_key(&self) -> (u64, Vec<u64>) {
        let letters = self.letters();
        (letters.len() as u64, letters)
    }

    fn letters(&self) -> Vec<u64> {
        fn repeat(out: &mut Vec<u64>, gen: u64, k: i64) {
            let code = if k >= 0 { 2 * gen } else { 2 * gen + 1 };
            out.extend(core::iter::repeat_n(code, k.unsigned_abs() as usize));
        }
        let mut out = Vec::new();
        match self {
            GroupElement::Finite(i) => out.push(u64::from(*i)),
            GroupElement::FreeAbelian(v) => {
                for (i, &k) in v.iter().enumerate() {
                    repeat(&mut out, i as u64, k);
                }
            }
            GroupElement::Dihedral { shift, flip } => {
                repeat(&mut out, 0, *shift);
                if *flip {
                    out.push(2);
                }
            }
            GroupElement::Heisenberg([x, y, z]) => {
                repeat(&mut out, 0, *x);
                repeat(&mut out, 1, *y);
                repeat(&mut out, 2, *z);
            }
            GroupElement::BaumslagSolitar { word, central } => {
                // central generator spelled as its own letter pair after a, b
                repeat(&mut out, 2, *central);
                word_letters(&mut out, word);
            }
            GroupElement::FreeProduct(word) => word_letters(&mut out, word),
            GroupElement::Lamplighter { lamps, shift } => {
                for &p in lamps {
                    out.push(if p >= 0 { 2 + 2 * p as u64 } else { 3 + 2 * p.unsigned_abs() });
                }
                repeat(&mut out, 0, *shift);
            }
            GroupElement::Product(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    let (_, sub) = p.shortlex_key();
                    out.extend(sub.into_iter().map(|c| c * 16 + i as u64));
                }
            }
        }
        out
    }
}

fn word_letters(out: &mut Vec<u64>, word: &[Syllable]) {
    for s in word {
        match *s {
            Syllable::A(k) => {
                let code = if k > 0 { 0 } else { 1 };
                out.extend(core::iter::repeat_n(code, k.unsigned_abs() as usize));
            }
            Syllable::B(j) => out.extend(core::iter::repeat_n(2, j as usize)),
        }
    }
}

pub(crate) fn format_word(word: &[Syllable]) -> String {
    if word.is_empty() {
        return String::from("e");
    }
    let parts: Vec<String> = word
        .iter()
        .map(|s| match *s {
            Syllable::A(1) => String::from("a"),
            Syllable::A(k) => format!("a^{k}"),
            Syllable::B(1) => String::from("b"),
            Syllable::B(j) => format!("b^{j}"),
        })
        .collect();
    parts.join("")
}

/// Family-generic rendering; finite elements are shown by index. Use
/// [`crate::group::Group::format_element`] for table names.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Finite(i) => write!(f, "#{i}"),
            GroupElement::FreeAbelian(v) => {
                let parts: Vec<String> = v.iter().map(|k| format!("{k}")).collect();
                write!(f, "({})", parts.join(","))
            }
            GroupElement::Dihedral { shift, flip } => {
                match (*shift, *flip) {
                    (0, false) => f.write_str("e"),
                    (0, true) => f.write_str("s"),
                    (1, fl) => write!(f, "t{}", if fl { "s" } else { "" }),
                    (k, fl) => write!(f, "t^{k}{}", if fl { "s" } else { "" }),
                }
            }
            GroupElement::Heisenberg([x, y, z]) => write!(f, "({x},{y},{z})"),
            GroupElement::BaumslagSolitar { word, central } => {
                if *central == 0 {
                    f.write_str(&format_word(word))
                } else if word.is_empty() {
                    write!(f, "z^{central}")
                } else {
                    write!(f, "z^{central}{}", format_word(word))
                }
            }
            GroupElement::FreeProduct(word) => f.write_str(&format_word(word)),
            GroupElement::Lamplighter { lamps, shift } => {
                let parts: Vec<String> = lamps.iter().map(|p| format!("{p}")).collect();
                write!(f, "({{{}}},{shift})", parts.join(","))
            }
            GroupElement::Product(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| format!("{p}")).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn shortlex_prefers_first_generator_positive() {
        let a2 = GroupElement::FreeAbelian(vec![2, 0]);
        let am2 = GroupElement::FreeAbelian(vec![-2, 0]);
        let b2 = GroupElement::FreeAbelian(vec![0, 2]);
        let a2b2 = GroupElement::FreeAbelian(vec![2, 2]);
        let mut v = vec![a2b2.clone(), b2.clone(), am2.clone(), a2.clone()];
        v.sort_by_key(|g| g.shortlex_key());
        assert_eq!(v, vec![a2, am2, b2, a2b2]);
    }
}
