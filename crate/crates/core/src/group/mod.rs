//! Group families with canonical normal forms.
//!
//! Supported families: finite groups given by tables, `Z^k`, the infinite
//! dihedral group, the integer Heisenberg group, `BS(n,n)` (as a central
//! extension of `Z * Z_n` by `⟨b^n⟩`), `Z * Z_n`, the lamplighter group
//! `Z_2 ≀ Z` and direct products of these.

mod element;
mod finite;
pub mod words;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

pub use element::GroupElement;
pub use finite::{AbelianCoordinates, FiniteGroup};
use words::{Syllable, Word};

use crate::error::{Error, Result};
use crate::verdict::{Decision, Fact};

/// Default number of conjugator powers checked before a closed-form
/// infinite-class certificate is accepted.
pub const DEFAULT_EFFORT: u32 = 20;

#[derive(Debug, PartialEq, Eq)]
pub enum Family {
    Finite(FiniteGroup),
    FreeAbelian { rank: usize },
    InfiniteDihedral,
    Heisenberg3,
    BaumslagSolitar { n: u32 },
    FreeProduct { n: u32 },
    Lamplighter,
    DirectProduct(Vec<Group>),
}

/// Immutable, cheaply clonable handle on a group.
#[derive(Debug, Clone)]
pub struct Group {
    family: Arc<Family>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.family, &other.family) || *self.family == *other.family
    }
}

impl Eq for Group {}

/// Why a conjugacy class is known to be infinite: the conjugates
/// `c^m g c^-m` are pairwise distinct for every `m`, by a closed-form
/// argument specific to the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfiniteClassCertificate {
    pub conjugator: GroupElement,
    pub argument: &'static str,
    /// Number of powers for which distinctness was also checked directly.
    pub verified_powers: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassSize {
    Finite(u64),
    Infinite(InfiniteClassCertificate),
    UnknownBeyond(u32),
}

impl ClassSize {
    pub fn is_finite(&self) -> bool {
        matches!(self, ClassSize::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ClassSize::Infinite(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Metadata {
    pub amenable: Fact,
    pub in_class_p: Fact,
    pub known_fc_hypercentral: Fact,
}

fn uniform<R: RngCore + ?Sized>(rng: &mut R, lo: i64, hi: i64) -> i64 {
    debug_assert!(lo <= hi);
    let span = (hi - lo) as u64 + 1;
    let zone = u64::MAX - u64::MAX % span;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return lo + (x % span) as i64;
        }
    }
}

fn sym_diff(a: &[i64], b: &[i64]) -> Vec<i64> {
    let a: BTreeSet<i64> = a.iter().copied().collect();
    let b: BTreeSet<i64> = b.iter().copied().collect();
    a.symmetric_difference(&b).copied().collect()
}

impl Group {
    fn from_family(family: Family) -> Group {
        Group {
            family: Arc::new(family),
        }
    }

    pub fn finite(group: FiniteGroup) -> Group {
        Group::from_family(Family::Finite(group))
    }

    pub fn trivial() -> Group {
        let mut g = FiniteGroup::cyclic(1).expect("order 1");
        g.set_name("1".into());
        Group::finite(g)
    }

    pub fn cyclic(n: u32) -> Result<Group> {
        FiniteGroup::cyclic(n).map(Group::finite)
    }

    pub fn dihedral(n: u32) -> Result<Group> {
        FiniteGroup::dihedral(n).map(Group::finite)
    }

    pub fn quaternion() -> Group {
        Group::finite(FiniteGroup::quaternion())
    }

    pub fn elementary_abelian(p: u32, k: u32) -> Result<Group> {
        FiniteGroup::elementary_abelian(p, k).map(Group::finite)
    }

    pub fn free_abelian(rank: usize) -> Group {
        Group::from_family(Family::FreeAbelian { rank })
    }

    pub fn infinite_dihedral() -> Group {
        Group::from_family(Family::InfiniteDihedral)
    }

    pub fn heisenberg() -> Group {
        Group::from_family(Family::Heisenberg3)
    }

    pub fn baumslag_solitar(n: u32) -> Result<Group> {
        if n < 2 {
            return Err(Error::InvalidGroup(format!("BS(n,n) needs n >= 2, got {n}")));
        }
        Ok(Group::from_family(Family::BaumslagSolitar { n }))
    }

    pub fn free_product(n: u32) -> Result<Group> {
        if n < 2 {
            return Err(Error::InvalidGroup(format!("Z * Z_n needs n >= 2, got {n}")));
        }
        Ok(Group::from_family(Family::FreeProduct { n }))
    }

    pub fn lamplighter() -> Group {
        Group::from_family(Family::Lamplighter)
    }

    /// Direct product; finite factors are multiplied out into a table.
    pub fn direct_product(factors: Vec<Group>) -> Result<Group> {
        if factors.is_empty() {
            return Ok(Group::trivial());
        }
        if factors.len() == 1 {
            return Ok(factors.into_iter().next().expect("one factor"));
        }
        if factors.iter().all(|f| f.as_finite().is_some()) {
            let mut acc = factors[0].as_finite().expect("finite").clone();
            for f in &factors[1..] {
                acc = acc.direct_product(f.as_finite().expect("finite"))?;
            }
            return Ok(Group::finite(acc));
        }
        Ok(Group::from_family(Family::DirectProduct(factors)))
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn as_finite(&self) -> Option<&FiniteGroup> {
        match &*self.family {
            Family::Finite(g) => Some(g),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match &*self.family {
            Family::Finite(_) => "finite",
            Family::FreeAbelian { .. } => "free_abelian",
            Family::InfiniteDihedral => "infinite_dihedral",
            Family::Heisenberg3 => "heisenberg3",
            Family::BaumslagSolitar { .. } => "baumslag_solitar",
            Family::FreeProduct { .. } => "free_product",
            Family::Lamplighter => "lamplighter",
            Family::DirectProduct(_) => "direct_product",
        }
    }

    pub fn name(&self) -> String {
        match &*self.family {
            Family::Finite(g) => g.name().to_string(),
            Family::FreeAbelian { rank } => format!("Z^{rank}"),
            Family::InfiniteDihedral => "D_inf".into(),
            Family::Heisenberg3 => "H3(Z)".into(),
            Family::BaumslagSolitar { n } => format!("BS({n},{n})"),
            Family::FreeProduct { n } => format!("Z*Z{n}"),
            Family::Lamplighter => "Z2 wr Z".into(),
            Family::DirectProduct(fs) => {
                let names: Vec<String> = fs.iter().map(|f| f.name()).collect();
                names.join(" x ")
            }
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.as_finite().map(|g| g.order())
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    pub fn is_trivial(&self) -> bool {
        match &*self.family {
            Family::Finite(g) => g.order() == 1,
            Family::FreeAbelian { rank } => *rank == 0,
            Family::DirectProduct(fs) => fs.iter().all(|f| f.is_trivial()),
            _ => false,
        }
    }

    pub fn is_abelian(&self) -> bool {
        match &*self.family {
            Family::Finite(g) => g.is_abelian(),
            Family::FreeAbelian { .. } => true,
            Family::DirectProduct(fs) => fs.iter().all(|f| f.is_abelian()),
            _ => false,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match &*self.family {
            Family::Finite(g) => GroupElement::Finite(g.identity()),
            Family::FreeAbelian { rank } => GroupElement::FreeAbelian(vec![0; *rank]),
            Family::InfiniteDihedral => GroupElement::Dihedral { shift: 0, flip: false },
            Family::Heisenberg3 => GroupElement::Heisenberg([0; 3]),
            Family::BaumslagSolitar { .. } => GroupElement::BaumslagSolitar {
                word: Vec::new(),
                central: 0,
            },
            Family::FreeProduct { .. } => GroupElement::FreeProduct(Vec::new()),
            Family::Lamplighter => GroupElement::Lamplighter {
                lamps: Vec::new(),
                shift: 0,
            },
            Family::DirectProduct(fs) => GroupElement::Product(fs.iter().map(|f| f.identity()).collect()),
        }
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        *g == self.identity()
    }

    /// Whether `g` is a well-formed normal form of this group.
    pub fn contains(&self, g: &GroupElement) -> bool {
        match (&*self.family, g) {
            (Family::Finite(t), GroupElement::Finite(i)) => (*i as usize) < t.order(),
            (Family::FreeAbelian { rank }, GroupElement::FreeAbelian(v)) => v.len() == *rank,
            (Family::InfiniteDihedral, GroupElement::Dihedral { .. }) => true,
            (Family::Heisenberg3, GroupElement::Heisenberg(_)) => true,
            (Family::BaumslagSolitar { n }, GroupElement::BaumslagSolitar { word, .. }) => {
                words::is_reduced(word, *n)
            }
            (Family::FreeProduct { n }, GroupElement::FreeProduct(word)) => words::is_reduced(word, *n),
            (Family::Lamplighter, GroupElement::Lamplighter { lamps, .. }) => {
                lamps.windows(2).all(|w| w[0] < w[1])
            }
            (Family::DirectProduct(fs), GroupElement::Product(parts)) => {
                fs.len() == parts.len() && fs.iter().zip(parts).all(|(f, p)| f.contains(p))
            }
            _ => false,
        }
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::FamilyMismatch {
                group: self.name(),
                element: format!("{g}"),
            })
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_raw(a, b))
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.inv_raw(a))
    }

    pub fn pow(&self, a: &GroupElement, k: i64) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.pow_raw(a, k))
    }

    /// `h g h⁻¹`.
    pub fn conjugate(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.conj_raw(g, h))
    }

    pub fn commutes(&self, g: &GroupElement, h: &GroupElement) -> Result<bool> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul_raw(g, h) == self.mul_raw(h, g))
    }

    pub(crate) fn commutes_raw(&self, g: &GroupElement, h: &GroupElement) -> bool {
        self.mul_raw(g, h) == self.mul_raw(h, g)
    }

    pub(crate) fn conj_raw(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.mul_raw(&self.mul_raw(h, g), &self.inv_raw(h))
    }

    pub(crate) fn pow_raw(&self, a: &GroupElement, k: i64) -> GroupElement {
        let mut base = if k < 0 { self.inv_raw(a) } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(&acc, &base);
            }
            base = self.mul_raw(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn mul_raw(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        use GroupElement as E;
        match (&*self.family, a, b) {
            (Family::Finite(t), E::Finite(x), E::Finite(y)) => E::Finite(t.mul(*x, *y)),
            (Family::FreeAbelian { .. }, E::FreeAbelian(x), E::FreeAbelian(y)) => {
                E::FreeAbelian(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (
                Family::InfiniteDihedral,
                E::Dihedral { shift: k1, flip: f1 },
                E::Dihedral { shift: k2, flip: f2 },
            ) => E::Dihedral {
                shift: if *f1 { k1 - k2 } else { k1 + k2 },
                flip: f1 ^ f2,
            },
            (Family::Heisenberg3, E::Heisenberg([x1, y1, z1]), E::Heisenberg([x2, y2, z2])) => {
                E::Heisenberg([x1 + x2, y1 + y2, z1 + z2 + x1 * y2])
            }
            (
                Family::BaumslagSolitar { n },
                E::BaumslagSolitar { word: w1, central: c1 },
                E::BaumslagSolitar { word: w2, central: c2 },
            ) => {
                let (word, carry) = words::multiply(w1, w2, *n);
                E::BaumslagSolitar {
                    word,
                    central: c1 + c2 + carry,
                }
            }
            (Family::FreeProduct { n }, E::FreeProduct(w1), E::FreeProduct(w2)) => {
                E::FreeProduct(words::multiply(w1, w2, *n).0)
            }
            (
                Family::Lamplighter,
                E::Lamplighter { lamps: l1, shift: s1 },
                E::Lamplighter { lamps: l2, shift: s2 },
            ) => {
                let moved: Vec<i64> = l2.iter().map(|p| p + s1).collect();
                E::Lamplighter {
                    lamps: sym_diff(l1, &moved),
                    shift: s1 + s2,
                }
            }
            (Family::DirectProduct(fs), E::Product(x), E::Product(y)) => E::Product(
                fs.iter()
                    .zip(x.iter().zip(y))
                    .map(|(f, (p, q))| f.mul_raw(p, q))
                    .collect(),
            ),
            _ => panic!("mul_raw on foreign elements"),
        }
    }

    pub(crate) fn inv_raw(&self, a: &GroupElement) -> GroupElement {
        use GroupElement as E;
        match (&*self.family, a) {
            (Family::Finite(t), E::Finite(x)) => E::Finite(t.inv(*x)),
            (Family::FreeAbelian { .. }, E::FreeAbelian(x)) => E::FreeAbelian(x.iter().map(|p| -p).collect()),
            (Family::InfiniteDihedral, E::Dihedral { shift, flip }) => E::Dihedral {
                shift: if *flip { *shift } else { -shift },
                flip: *flip,
            },
            (Family::Heisenberg3, E::Heisenberg([x, y, z])) => E::Heisenberg([-x, -y, -z + x * y]),
            (Family::BaumslagSolitar { n }, E::BaumslagSolitar { word, central }) => {
                let (w, carry) = words::inverse(word, *n);
                E::BaumslagSolitar {
                    word: w,
                    central: -central + carry,
                }
            }
            (Family::FreeProduct { n }, E::FreeProduct(word)) => E::FreeProduct(words::inverse(word, *n).0),
            (Family::Lamplighter, E::Lamplighter { lamps, shift }) => E::Lamplighter {
                lamps: lamps.iter().map(|p| p - shift).collect(),
                shift: -shift,
            },
            (Family::DirectProduct(fs), E::Product(x)) => {
                E::Product(fs.iter().zip(x).map(|(f, p)| f.inv_raw(p)).collect())
            }
            _ => panic!("inv_raw on foreign element"),
        }
    }

    /// Named generators of the family.
    pub fn named_generators(&self) -> Vec<(String, GroupElement)> {
        use GroupElement as E;
        match &*self.family {
            Family::Finite(t) => t
                .generating_set()
                .into_iter()
                .map(|i| (t.element_name(i).to_string(), E::Finite(i)))
                .collect(),
            Family::FreeAbelian { rank } => (0..*rank)
                .map(|i| {
                    let mut v = vec![0; *rank];
                    v[i] = 1;
                    (format!("e{}", i + 1), E::FreeAbelian(v))
                })
                .collect(),
            Family::InfiniteDihedral => vec![
                ("t".into(), E::Dihedral { shift: 1, flip: false }),
                ("s".into(), E::Dihedral { shift: 0, flip: true }),
            ],
            Family::Heisenberg3 => vec![
                ("x".into(), E::Heisenberg([1, 0, 0])),
                ("y".into(), E::Heisenberg([0, 1, 0])),
            ],
            Family::BaumslagSolitar { .. } => vec![
                (
                    "a".into(),
                    E::BaumslagSolitar {
                        word: vec![Syllable::A(1)],
                        central: 0,
                    },
                ),
                (
                    "b".into(),
                    E::BaumslagSolitar {
                        word: vec![Syllable::B(1)],
                        central: 0,
                    },
                ),
            ],
            Family::FreeProduct { .. } => vec![
                ("a".into(), E::FreeProduct(vec![Syllable::A(1)])),
                ("b".into(), E::FreeProduct(vec![Syllable::B(1)])),
            ],
            Family::Lamplighter => vec![
                (
                    "t".into(),
                    E::Lamplighter {
                        lamps: Vec::new(),
                        shift: 1,
                    },
                ),
                (
                    "l".into(),
                    E::Lamplighter {
                        lamps: vec![0],
                        shift: 0,
                    },
                ),
            ],
            Family::DirectProduct(fs) => {
                let mut out = Vec::new();
                for (i, f) in fs.iter().enumerate() {
                    for (name, g) in f.named_generators() {
                        out.push((format!("{i}.{name}"), self.embed_component(i, g)));
                    }
                }
                out
            }
        }
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        self.named_generators().into_iter().map(|(_, g)| g).collect()
    }

    /// Embeds an element of the i-th factor of a direct product.
    pub fn embed_component(&self, i: usize, g: GroupElement) -> GroupElement {
        match &*self.family {
            Family::DirectProduct(fs) => {
                let mut parts: Vec<GroupElement> = fs.iter().map(|f| f.identity()).collect();
                parts[i] = g;
                GroupElement::Product(parts)
            }
            _ => g,
        }
    }

    /// Exact centrality test by family closed form.
    pub fn is_central(&self, g: &GroupElement) -> Result<bool> {
        self.check(g)?;
        use GroupElement as E;
        Ok(match (&*self.family, g) {
            (Family::Finite(t), E::Finite(x)) => t.center().contains(x),
            (Family::FreeAbelian { .. }, _) => true,
            (Family::Heisenberg3, E::Heisenberg([x, y, _])) => *x == 0 && *y == 0,
            (Family::BaumslagSolitar { .. }, E::BaumslagSolitar { word, .. }) => word.is_empty(),
            (Family::DirectProduct(fs), E::Product(parts)) => {
                let mut all = true;
                for (f, p) in fs.iter().zip(parts) {
                    all &= f.is_central(p)?;
                }
                all
            }
            _ => self.is_identity(g),
        })
    }

    /// Random element; `radius` bounds coordinates and word lengths.
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R, radius: u32) -> GroupElement {
        use GroupElement as E;
        let r = i64::from(radius.max(1));
        match &*self.family {
            Family::Finite(t) => E::Finite(uniform(rng, 0, t.order() as i64 - 1) as u32),
            Family::FreeAbelian { rank } => E::FreeAbelian((0..*rank).map(|_| uniform(rng, -r, r)).collect()),
            Family::InfiniteDihedral => E::Dihedral {
                shift: uniform(rng, -r, r),
                flip: rng.next_u32() & 1 == 1,
            },
            Family::Heisenberg3 => E::Heisenberg([uniform(rng, -r, r), uniform(rng, -r, r), uniform(rng, -r, r)]),
            Family::BaumslagSolitar { n } => E::BaumslagSolitar {
                word: random_word(rng, *n, radius),
                central: uniform(rng, -r, r),
            },
            Family::FreeProduct { n } => E::FreeProduct(random_word(rng, *n, radius)),
            Family::Lamplighter => {
                let lamps: BTreeSet<i64> = (-r..=r).filter(|_| rng.next_u32() & 3 == 0).collect();
                E::Lamplighter {
                    lamps: lamps.into_iter().collect(),
                    shift: uniform(rng, -r, r),
                }
            }
            Family::DirectProduct(fs) => E::Product(fs.iter().map(|f| f.sample(rng, radius)).collect()),
        }
    }

    /// Human-readable element, using table names for finite groups.
    pub fn format_element(&self, g: &GroupElement) -> String {
        match (&*self.family, g) {
            (Family::Finite(t), GroupElement::Finite(i)) if (*i as usize) < t.order() => {
                t.element_name(*i).to_string()
            }
            (Family::DirectProduct(fs), GroupElement::Product(parts)) if fs.len() == parts.len() => {
                let parts: Vec<String> = fs.iter().zip(parts).map(|(f, p)| f.format_element(p)).collect();
                format!("({})", parts.join(","))
            }
            _ => format!("{g}"),
        }
    }

    /// Checks that `c^m g c^-m`, `0 <= m <= effort`, are pairwise distinct.
    fn verify_certificate(
        &self,
        g: &GroupElement,
        conjugator: GroupElement,
        argument: &'static str,
        effort: u32,
    ) -> ClassSize {
        let mut seen = BTreeSet::new();
        let mut current = g.clone();
        for _ in 0..=effort {
            if !seen.insert(current.clone()) {
                return ClassSize::UnknownBeyond(effort);
            }
            current = self.conj_raw(&current, &conjugator);
        }
        ClassSize::Infinite(InfiniteClassCertificate {
            conjugator,
            argument,
            verified_powers: effort,
        })
    }

    /// Size of the conjugacy class of `g`: exact for finite classes, with a
    /// family-specific certificate for infinite ones.
    pub fn class_size(&self, g: &GroupElement, effort: u32) -> Result<ClassSize> {
        self.check(g)?;
        use GroupElement as E;
        let size = match (&*self.family, g) {
            (Family::Finite(t), E::Finite(x)) => ClassSize::Finite(t.conjugacy_class(*x).len() as u64),
            (Family::FreeAbelian { .. }, _) => ClassSize::Finite(1),
            (Family::InfiniteDihedral, E::Dihedral { shift, flip: false }) => {
                ClassSize::Finite(if *shift == 0 { 1 } else { 2 })
            }
            (Family::InfiniteDihedral, E::Dihedral { flip: true, .. }) => self.verify_certificate(
                g,
                E::Dihedral { shift: 1, flip: false },
                "t^m (t^k s) t^-m = t^(k+2m) s",
                effort,
            ),
            (Family::Heisenberg3, E::Heisenberg([x, y, _])) => {
                if *x == 0 && *y == 0 {
                    ClassSize::Finite(1)
                } else if *y != 0 {
                    self.verify_certificate(
                        g,
                        E::Heisenberg([1, 0, 0]),
                        "conjugating (x,y,z) by (m,0,0) gives z + m*y",
                        effort,
                    )
                } else {
                    self.verify_certificate(
                        g,
                        E::Heisenberg([0, 1, 0]),
                        "conjugating (x,0,z) by (0,m,0) gives z - m*x",
                        effort,
                    )
                }
            }
            (Family::BaumslagSolitar { n }, E::BaumslagSolitar { word, .. }) => {
                if word.is_empty() {
                    ClassSize::Finite(1)
                } else {
                    let c = free_product_conjugator(word, *n);
                    self.verify_certificate(
                        g,
                        E::BaumslagSolitar { word: c, central: 0 },
                        "image in Z*Z_n: centralizers of infinite-order elements of a free product are cyclic",
                        effort,
                    )
                }
            }
            (Family::FreeProduct { n }, E::FreeProduct(word)) => {
                if word.is_empty() {
                    ClassSize::Finite(1)
                } else {
                    let c = free_product_conjugator(word, *n);
                    self.verify_certificate(
                        g,
                        E::FreeProduct(c),
                        "centralizers of infinite-order elements of a free product are cyclic",
                        effort,
                    )
                }
            }
            (Family::Lamplighter, E::Lamplighter { lamps, shift }) => {
                if lamps.is_empty() && *shift == 0 {
                    ClassSize::Finite(1)
                } else if !lamps.is_empty() {
                    self.verify_certificate(
                        g,
                        E::Lamplighter {
                            lamps: Vec::new(),
                            shift: 1,
                        },
                        "shift conjugation translates a nonempty finite lamp set",
                        effort,
                    )
                } else {
                    self.verify_certificate(
                        g,
                        E::Lamplighter {
                            lamps: vec![0],
                            shift: 1,
                        },
                        "conjugates of t^s by (l t)^m have lamp sets A_m xor (A_m + s), A_m = {0..m-1}",
                        effort,
                    )
                }
            }
            (Family::DirectProduct(fs), E::Product(parts)) => {
                let mut total: u64 = 1;
                let mut unknown = None;
                for (i, (f, p)) in fs.iter().zip(parts).enumerate() {
                    match f.class_size(p, effort)? {
                        ClassSize::Finite(k) => total = total.saturating_mul(k),
                        ClassSize::Infinite(cert) => {
                            return Ok(ClassSize::Infinite(InfiniteClassCertificate {
                                conjugator: self.embed_component(i, cert.conjugator),
                                argument: cert.argument,
                                verified_powers: cert.verified_powers,
                            }))
                        }
                        ClassSize::UnknownBeyond(b) => unknown = Some(b),
                    }
                }
                match unknown {
                    Some(b) => ClassSize::UnknownBeyond(b),
                    None => ClassSize::Finite(total),
                }
            }
            _ => unreachable!("checked membership"),
        };
        Ok(size)
    }

    /// Catalog facts about the group, each with its justification.
    pub fn metadata(&self) -> Metadata {
        use Decision::{No, Yes};
        match &*self.family {
            Family::Finite(t) => Metadata {
                amenable: Fact::new(Yes, "finite groups are amenable"),
                in_class_p: if t.order() == 1 {
                    Fact::new(Yes, "the trivial group is the only amenable group in P")
                } else {
                    Fact::new(No, "the only amenable group in P is the trivial group")
                },
                known_fc_hypercentral: Fact::new(Yes, "finite groups are FC-hypercentral"),
            },
            Family::FreeAbelian { rank } => Metadata {
                amenable: Fact::new(Yes, "abelian groups are amenable"),
                in_class_p: if *rank == 0 {
                    Fact::new(Yes, "the trivial group is the only amenable group in P")
                } else {
                    Fact::new(No, "the only amenable group in P is the trivial group")
                },
                known_fc_hypercentral: Fact::new(Yes, "abelian groups are FC-central"),
            },
            Family::InfiniteDihedral => Metadata {
                amenable: Fact::new(Yes, "virtually abelian groups are amenable"),
                in_class_p: Fact::new(No, "the only amenable group in P is the trivial group"),
                known_fc_hypercentral: Fact::new(Yes, "D_inf / <t> is finite"),
            },
            Family::Heisenberg3 => Metadata {
                amenable: Fact::new(Yes, "nilpotent groups are amenable"),
                in_class_p: Fact::new(No, "the only amenable group in P is the trivial group"),
                known_fc_hypercentral: Fact::new(Yes, "nilpotent groups are FC-hypercentral"),
            },
            Family::BaumslagSolitar { .. } => Metadata {
                amenable: Fact::new(No, "BS(n,n) surjects onto the nonamenable group Z*Z_n"),
                in_class_p: Fact::new(No, "members of P are ICC, and b^n is central"),
                known_fc_hypercentral: Fact::new(No, "FCH(BS(n,n)) = <b^n> and the ICC quotient Z*Z_n is nontrivial"),
            },
            Family::FreeProduct { .. } => Metadata {
                amenable: Fact::new(No, "Z*Z_n contains a nonabelian free subgroup for n >= 2"),
                in_class_p: Fact::new(Yes, "Z*Z_n is a Powers group"),
                known_fc_hypercentral: Fact::new(No, "nontrivial ICC groups are not FC-hypercentral"),
            },
            Family::Lamplighter => Metadata {
                amenable: Fact::new(Yes, "solvable groups are amenable"),
                in_class_p: Fact::new(No, "the only amenable group in P is the trivial group"),
                known_fc_hypercentral: Fact::new(No, "nontrivial ICC groups are not FC-hypercentral"),
            },
            Family::DirectProduct(fs) => {
                let nontrivial: Vec<&Group> = fs.iter().filter(|f| !f.is_trivial()).collect();
                if nontrivial.len() == 1 {
                    return nontrivial[0].metadata();
                }
                let metas: Vec<Metadata> = fs.iter().map(|f| f.metadata()).collect();
                let amenable = if metas.iter().all(|m| m.amenable.value == Yes) {
                    Fact::new(Yes, "products of amenable groups are amenable")
                } else if metas.iter().any(|m| m.amenable.value == No) {
                    Fact::new(No, "a factor is nonamenable, and amenability passes to quotients")
                } else {
                    Fact::unknown()
                };
                let fch = if metas.iter().all(|m| m.known_fc_hypercentral.value == Yes) {
                    Fact::new(Yes, "the upper FC-central series of a product is the product of the series")
                } else if metas.iter().any(|m| m.known_fc_hypercentral.value == No) {
                    Fact::new(No, "a factor has a nontrivial ICC quotient")
                } else {
                    Fact::unknown()
                };
                let in_p = if amenable.value == Yes {
                    if self.is_trivial() {
                        Fact::new(Yes, "the trivial group is the only amenable group in P")
                    } else {
                        Fact::new(No, "the only amenable group in P is the trivial group")
                    }
                } else if fs.iter().any(|f| f.metadata().known_fc_hypercentral.value == Yes && !f.is_trivial()) {
                    Fact::new(No, "members of P are ICC, and a nontrivial FC-hypercentral factor is not")
                } else {
                    Fact::unknown()
                };
                Metadata {
                    amenable,
                    in_class_p: in_p,
                    known_fc_hypercentral: fch,
                }
            }
        }
    }
}

fn random_word<R: RngCore + ?Sized>(rng: &mut R, n: u32, radius: u32) -> Word {
    let len = uniform(rng, 0, i64::from(radius.max(1)));
    let mut word = Vec::new();
    let mut next_is_a = rng.next_u32() & 1 == 1;
    for _ in 0..len {
        let s = if next_is_a {
            let k = uniform(rng, 1, 3);
            Syllable::A(if rng.next_u32() & 1 == 1 { k } else { -k })
        } else {
            Syllable::B(uniform(rng, 1, i64::from(n) - 1) as u32)
        };
        word.push(s);
        next_is_a = !next_is_a;
    }
    word
}

/// A conjugator of infinite order in `Z * Z_n` that does not commute with
/// the nontrivial `word`: `ab` unless `word` lies in `<ab>`, then `a`.
fn free_product_conjugator(word: &[Syllable], n: u32) -> Word {
    let ab = vec![Syllable::A(1), Syllable::B(1)];
    let (left, _) = words::multiply(word, &ab, n);
    let (right, _) = words::multiply(&ab, word, n);
    if left != right {
        ab
    } else {
        vec![Syllable::A(1)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GroupElement as E;

    #[test]
    fn dihedral_translations_compose() {
        let g = Group::infinite_dihedral();
        let t = E::Dihedral { shift: 1, flip: false };
        assert_eq!(g.multiply(&t, &t).unwrap(), E::Dihedral { shift: 2, flip: false });
        let s = E::Dihedral { shift: 0, flip: true };
        assert_eq!(g.conjugate(&t, &s).unwrap(), E::Dihedral { shift: -1, flip: false });
    }

    #[test]
    fn heisenberg_commutator_is_central_unit() {
        let g = Group::heisenberg();
        let x = E::Heisenberg([1, 0, 0]);
        let y = E::Heisenberg([0, 1, 0]);
        assert_eq!(g.multiply(&x, &y).unwrap(), E::Heisenberg([1, 1, 1]));
        assert_eq!(g.multiply(&y, &x).unwrap(), E::Heisenberg([1, 1, 0]));
        assert!(!g.commutes(&x, &y).unwrap());
    }

    #[test]
    fn bs22_b_squared_is_central_generator() {
        let g = Group::baumslag_solitar(2).unwrap();
        let b = E::BaumslagSolitar {
            word: vec![Syllable::B(1)],
            central: 0,
        };
        let b2 = g.multiply(&b, &b).unwrap();
        assert_eq!(b2, E::BaumslagSolitar { word: vec![], central: 1 });
        let a = g.generators()[0].clone();
        assert!(g.commutes(&a, &b2).unwrap());
        assert!(g.is_central(&b2).unwrap());
    }

    #[test]
    fn class_sizes() {
        let d = Group::infinite_dihedral();
        assert_eq!(d.class_size(&E::Dihedral { shift: 2, flip: false }, 20).unwrap(), ClassSize::Finite(2));
        assert_eq!(d.class_size(&d.identity(), 20).unwrap(), ClassSize::Finite(1));
        let h = Group::heisenberg();
        match h.class_size(&E::Heisenberg([1, 0, 0]), 20).unwrap() {
            ClassSize::Infinite(c) => assert_eq!(c.conjugator, E::Heisenberg([0, 1, 0])),
            other => panic!("{other:?}"),
        }
        let l = Group::lamplighter();
        let lamp = E::Lamplighter {
            lamps: vec![0],
            shift: 0,
        };
        match l.class_size(&lamp, 20).unwrap() {
            ClassSize::Infinite(c) => assert_eq!(
                c.conjugator,
                E::Lamplighter {
                    lamps: vec![],
                    shift: 1
                }
            ),
            other => panic!("{other:?}"),
        }
        let pure_shift = E::Lamplighter {
            lamps: vec![],
            shift: 3,
        };
        assert!(l.class_size(&pure_shift, 40).unwrap().is_infinite());
    }

    #[test]
    fn free_product_classes_infinite() {
        let g = Group::free_product(2).unwrap();
        for w in [
            vec![Syllable::A(1)],
            vec![Syllable::B(1)],
            vec![Syllable::A(1), Syllable::B(1)],
            vec![Syllable::A(1), Syllable::B(1), Syllable::A(1), Syllable::B(1)],
        ] {
            assert!(g.class_size(&E::FreeProduct(w), 30).unwrap().is_infinite());
        }
    }

    #[test]
    fn rejects_foreign_elements() {
        let g = Group::free_abelian(2);
        assert!(matches!(
            g.multiply(&E::FreeAbelian(vec![1]), &g.identity()),
            Err(Error::FamilyMismatch { .. })
        ));
        assert!(g.commutes(&E::Heisenberg([0; 3]), &g.identity()).is_err());
    }
}
