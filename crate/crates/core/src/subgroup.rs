//! Subgroups with exact membership predicates, centralizers and embeddings.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::group::words::{self, Syllable};
use crate::group::{Family, FiniteGroup, Group, GroupElement};
use crate::quotient::Quotient;

#[derive(Debug, Clone)]
pub enum SubgroupKind {
    Trivial,
    Whole,
    /// An explicitly listed finite subgroup.
    Elements(BTreeSet<GroupElement>),
    /// Infinite cyclic subgroup `⟨u⟩` with closed-form membership.
    Cyclic(GroupElement),
    Centralizer(GroupElement),
    /// `{g : π(g) ∈ image}` for a quotient map `π`.
    Preimage(Box<Quotient>, Box<Subgroup>),
    /// Componentwise subgroup of a direct product.
    Product(Vec<Subgroup>),
}

#[derive(Debug, Clone)]
pub struct Subgroup {
    ambient: Group,
    kind: SubgroupKind,
    generators: Vec<GroupElement>,
    label: String,
    uncertain: bool,
}

/// Injective homomorphism from a subgroup, viewed as a group in its own
/// right, into the ambient group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Embedding {
    Identity,
    /// Finite subgroup: element `i` maps to `list[i]`.
    List(Vec<GroupElement>),
    /// `Z^k` onto the lattice spanned by pairwise commuting `basis`.
    Lattice(Vec<GroupElement>),
    /// Componentwise; `flat_orders` is set when the subgroup's product was
    /// multiplied out into a single table.
    Product {
        parts: Vec<Embedding>,
        flat_orders: Option<Vec<usize>>,
    },
}

impl Embedding {
    pub fn apply(&self, ambient: &Group, x: &GroupElement) -> Result<GroupElement> {
        match self {
            Embedding::Identity => Ok(x.clone()),
            Embedding::List(list) => match x {
                GroupElement::Finite(i) => list
                    .get(*i as usize)
                    .cloned()
                    .ok_or_else(|| Error::PreconditionFailed(format!("index {i} outside subgroup"))),
                _ => Err(Error::FamilyMismatch {
                    group: "finite subgroup".into(),
                    element: format!("{x}"),
                }),
            },
            Embedding::Lattice(basis) => match x {
                GroupElement::FreeAbelian(v) if v.len() == basis.len() => {
                    let mut acc = ambient.identity();
                    for (b, &k) in basis.iter().zip(v) {
                        acc = ambient.multiply(&acc, &ambient.pow(b, k)?)?;
                    }
                    Ok(acc)
                }
                _ => Err(Error::FamilyMismatch {
                    group: format!("Z^{}", basis.len()),
                    element: format!("{x}"),
                }),
            },
            Embedding::Product { parts, flat_orders } => {
                let components: Vec<GroupElement> = match (flat_orders, x) {
                    (Some(orders), GroupElement::Finite(i)) => split_index(*i as usize, orders)
                        .into_iter()
                        .map(|k| GroupElement::Finite(k as u32))
                        .collect(),
                    (None, GroupElement::Product(cs)) => cs.clone(),
                    _ => {
                        return Err(Error::FamilyMismatch {
                            group: "product subgroup".into(),
                            element: format!("{x}"),
                        })
                    }
                };
                let factors = product_factors(ambient)?;
                let mut out = Vec::with_capacity(parts.len());
                for ((emb, f), c) in parts.iter().zip(factors).zip(&components) {
                    out.push(emb.apply(f, c)?);
                }
                Ok(GroupElement::Product(out))
            }
        }
    }
}

/// Mixed-radix digits of `index`, most significant first.
pub(crate) fn split_index(mut index: usize, orders: &[usize]) -> Vec<usize> {
    let mut out = vec![0; orders.len()];
    for (slot, &m) in out.iter_mut().zip(orders).rev() {
        *slot = index % m;
        index /= m;
    }
    out
}

pub(crate) fn join_index(digits: &[usize], orders: &[usize]) -> usize {
    digits.iter().zip(orders).fold(0, |acc, (&d, &m)| acc * m + d)
}

pub(crate) fn product_factors(g: &Group) -> Result<&[Group]> {
    match g.family() {
        Family::DirectProduct(fs) => Ok(fs),
        _ => Err(Error::UnsupportedSubgroup(format!("{} is not a direct product", g.name()))),
    }
}

/// Exponent `k` with `g = u^k` for the supported infinite cyclic subgroups.
fn cyclic_exponent(ambient: &Group, u: &GroupElement, g: &GroupElement) -> Option<i64> {
    use GroupElement as E;
    let divide = |m: i64, d: i64| if d != 0 && m % d == 0 { Some(m / d) } else { None };
    let k = match (u, g) {
        (E::FreeAbelian(uv), E::FreeAbelian(gv)) => {
            let i = uv.iter().position(|&x| x != 0)?;
            divide(gv[i], uv[i])?
        }
        (E::Dihedral { shift: a, flip: false }, E::Dihedral { shift: m, flip: false }) => divide(*m, *a)?,
        (E::Heisenberg([0, 0, c]), E::Heisenberg([0, 0, m])) => divide(*m, *c)?,
        (E::BaumslagSolitar { word: uw, central: c }, E::BaumslagSolitar { word: gw, central: m })
            if uw.is_empty() && gw.is_empty() =>
        {
            divide(*m, *c)?
        }
        _ => return None,
    };
    (ambient.pow_raw(u, k) == *g).then_some(k)
}

fn cyclic_supported(u: &GroupElement) -> bool {
    use GroupElement as E;
    match u {
        E::FreeAbelian(v) => v.iter().any(|&x| x != 0),
        E::Dihedral { shift, flip: false } => *shift != 0,
        E::Heisenberg([0, 0, c]) => *c != 0,
        E::BaumslagSolitar { word, central } => word.is_empty() && *central != 0,
        _ => false,
    }
}

impl Subgroup {
    fn build(ambient: &Group, kind: SubgroupKind, generators: Vec<GroupElement>, label: &str) -> Subgroup {
        Subgroup {
            ambient: ambient.clone(),
            kind,
            generators,
            label: label.to_string(),
            uncertain: false,
        }
    }

    pub fn trivial(ambient: &Group) -> Subgroup {
        Self::build(ambient, SubgroupKind::Trivial, Vec::new(), "{e}")
    }

    pub fn whole(ambient: &Group) -> Subgroup {
        if ambient.is_trivial() {
            return Self::trivial(ambient);
        }
        Self::build(ambient, SubgroupKind::Whole, ambient.generators(), "G")
    }

    /// Finite subgroup given by its elements; closure is checked.
    pub fn from_elements(ambient: &Group, elements: Vec<GroupElement>, label: &str) -> Result<Subgroup> {
        let set: BTreeSet<GroupElement> = elements.into_iter().collect();
        for g in &set {
            ambient.check(g)?;
        }
        if !set.contains(&ambient.identity()) {
            return Err(Error::UnsupportedSubgroup("element set misses the identity".into()));
        }
        for a in &set {
            for b in &set {
                if !set.contains(&ambient.mul_raw(a, &ambient.inv_raw(b))) {
                    return Err(Error::UnsupportedSubgroup("element set is not closed".into()));
                }
            }
        }
        if set.len() == 1 {
            return Ok(Self::trivial(ambient));
        }
        if let Some(order) = ambient.order() {
            if set.len() == order {
                return Ok(Self::whole(ambient));
            }
        }
        let generators = minimal_generators(ambient, &set);
        Ok(Self::build(ambient, SubgroupKind::Elements(set), generators, label))
    }

    /// Infinite cyclic subgroup `⟨u⟩`.
    pub fn cyclic(ambient: &Group, u: GroupElement, label: &str) -> Result<Subgroup> {
        ambient.check(&u)?;
        if !cyclic_supported(&u) {
            return Err(Error::UnsupportedSubgroup(format!(
                "no membership test for <{}> in {}",
                ambient.format_element(&u),
                ambient.name()
            )));
        }
        Ok(Self::build(ambient, SubgroupKind::Cyclic(u.clone()), vec![u], label))
    }

    pub fn product(ambient: &Group, parts: Vec<Subgroup>, label: &str) -> Result<Subgroup> {
        let factors = product_factors(ambient)?;
        if factors.len() != parts.len() || factors.iter().zip(&parts).any(|(f, p)| *f != p.ambient) {
            return Err(Error::UnsupportedSubgroup("components do not match the factors".into()));
        }
        if parts.iter().all(|p| matches!(p.kind, SubgroupKind::Trivial)) {
            let mut s = Self::trivial(ambient);
            s.uncertain = parts.iter().any(|p| p.uncertain);
            return Ok(s);
        }
        if parts.iter().all(|p| matches!(p.kind, SubgroupKind::Whole) || p.ambient.is_trivial()) {
            let mut s = Self::whole(ambient);
            s.uncertain = parts.iter().any(|p| p.uncertain);
            return Ok(s);
        }
        let mut generators = Vec::new();
        for (i, p) in parts.iter().enumerate() {
            for g in &p.generators {
                generators.push(ambient.embed_component(i, g.clone()));
            }
        }
        let uncertain = parts.iter().any(|p| p.uncertain);
        let mut s = Self::build(ambient, SubgroupKind::Product(parts), generators, label);
        s.uncertain = uncertain;
        Ok(s)
    }

    pub(crate) fn preimage(quotient: &Quotient, image: Subgroup, label: &str) -> Subgroup {
        let ambient = quotient.ambient().clone();
        let mut generators = quotient.kernel().generators().to_vec();
        for g in image.generators() {
            generators.push(quotient.lift(g));
        }
        let uncertain = image.uncertain || quotient.kernel().uncertain;
        let mut s = Self::build(
            &ambient,
            SubgroupKind::Preimage(Box::new(quotient.clone()), Box::new(image)),
            generators,
            label,
        );
        s.uncertain = uncertain;
        s
    }

    pub fn ambient(&self) -> &Group {
        &self.ambient
    }

    pub fn kind(&self) -> &SubgroupKind {
        &self.kind
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> Subgroup {
        self.label = label.to_string();
        self
    }

    /// Set when the subgroup rests on a semi-decision that ran out of effort.
    pub fn is_uncertain(&self) -> bool {
        self.uncertain
    }

    pub(crate) fn mark_uncertain(&mut self) {
        self.uncertain = true;
    }

    pub fn is_trivial(&self) -> bool {
        match &self.kind {
            SubgroupKind::Trivial => true,
            SubgroupKind::Product(parts) => parts.iter().all(|p| p.is_trivial()),
            _ => false,
        }
    }

    pub fn is_whole(&self) -> bool {
        match &self.kind {
            SubgroupKind::Whole => true,
            SubgroupKind::Trivial => self.ambient.is_trivial(),
            SubgroupKind::Product(parts) => parts.iter().all(|p| p.is_whole()),
            SubgroupKind::Elements(set) => self.ambient.order() == Some(set.len()),
            _ => false,
        }
    }

    /// Exact membership.
    pub fn contains(&self, g: &GroupElement) -> bool {
        if !self.ambient.contains(g) {
            return false;
        }
        match &self.kind {
            SubgroupKind::Trivial => self.ambient.is_identity(g),
            SubgroupKind::Whole => true,
            SubgroupKind::Elements(set) => set.contains(g),
            SubgroupKind::Cyclic(u) => cyclic_exponent(&self.ambient, u, g).is_some(),
            SubgroupKind::Centralizer(h) => self.ambient.commutes_raw(g, h),
            SubgroupKind::Preimage(q, image) => q.project(g).map(|x| image.contains(&x)).unwrap_or(false),
            SubgroupKind::Product(parts) => match g {
                GroupElement::Product(cs) => parts.iter().zip(cs).all(|(p, c)| p.contains(c)),
                _ => false,
            },
        }
    }

    /// Finite element list, when the subgroup is known to be finite.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        match &self.kind {
            SubgroupKind::Trivial => Some(vec![self.ambient.identity()]),
            SubgroupKind::Elements(set) => Some(set.iter().cloned().collect()),
            SubgroupKind::Whole => self.ambient.as_finite().map(|t| (0..t.order() as u32).map(GroupElement::Finite).collect()),
            SubgroupKind::Centralizer(h) => self.ambient.as_finite().map(|t| match h {
                GroupElement::Finite(x) => t.centralizer(*x).into_iter().map(GroupElement::Finite).collect(),
                _ => Vec::new(),
            }),
            _ => None,
        }
    }

    /// Equality test: mutual generator containment plus agreement of the
    /// membership predicates on `samples` random elements.
    pub fn same_as<R: RngCore + ?Sized>(&self, other: &Subgroup, rng: &mut R, samples: usize) -> bool {
        if self.ambient != other.ambient {
            return false;
        }
        if !self.generators.iter().all(|g| other.contains(g)) || !other.generators.iter().all(|g| self.contains(g)) {
            return false;
        }
        if let (Some(a), Some(b)) = (self.elements(), other.elements()) {
            return a.len() == b.len() && a.iter().all(|g| other.contains(g));
        }
        (0..samples).all(|_| {
            let g = self.ambient.sample(rng, 4);
            self.contains(&g) == other.contains(&g)
        })
    }

    /// The subgroup as an abstract group together with its embedding.
    pub fn as_group(&self) -> Result<(Group, Embedding)> {
        match &self.kind {
            SubgroupKind::Trivial => Ok((Group::trivial(), Embedding::List(vec![self.ambient.identity()]))),
            SubgroupKind::Whole => Ok((self.ambient.clone(), Embedding::Identity)),
            SubgroupKind::Cyclic(u) => Ok((Group::free_abelian(1), Embedding::Lattice(vec![u.clone()]))),
            SubgroupKind::Product(parts) => {
                let mut groups = Vec::new();
                let mut embeddings = Vec::new();
                for p in parts {
                    let (g, e) = p.as_group()?;
                    groups.push(g);
                    embeddings.push(e);
                }
                let flat_orders = if groups.iter().all(|g| g.is_finite()) {
                    Some(groups.iter().map(|g| g.order().expect("finite")).collect())
                } else {
                    None
                };
                Ok((
                    Group::direct_product(groups)?,
                    Embedding::Product {
                        parts: embeddings,
                        flat_orders,
                    },
                ))
            }
            SubgroupKind::Centralizer(_) => {
                if let Some(list) = self.elements() {
                    return finite_subgroup_group(&self.ambient, list, &self.label);
                }
                let gens = &self.generators;
                let commuting = gens
                    .iter()
                    .all(|a| gens.iter().all(|b| self.ambient.commutes_raw(a, b)));
                let lattice_family = matches!(
                    self.ambient.family(),
                    Family::FreeAbelian { .. } | Family::Heisenberg3
                ) || (matches!(self.ambient.family(), Family::InfiniteDihedral)
                    && gens.iter().all(|g| matches!(g, GroupElement::Dihedral { flip: false, .. })));
                if commuting && lattice_family {
                    Ok((Group::free_abelian(gens.len()), Embedding::Lattice(gens.clone())))
                } else if let Some(list) = enumerate_finite(&self.ambient, gens, 256) {
                    finite_subgroup_group(&self.ambient, list, &self.label)
                } else {
                    Err(Error::UnsupportedSubgroup(format!(
                        "centralizer {} has no implemented group structure",
                        self.label
                    )))
                }
            }
            SubgroupKind::Elements(set) => finite_subgroup_group(&self.ambient, set.iter().cloned().collect(), &self.label),
            SubgroupKind::Preimage(..) => Err(Error::UnsupportedSubgroup(format!(
                "preimage subgroup {} has no implemented group structure",
                self.label
            ))),
        }
    }
}

fn minimal_generators(ambient: &Group, set: &BTreeSet<GroupElement>) -> Vec<GroupElement> {
    let mut gens = Vec::new();
    let mut span: BTreeSet<GroupElement> = [ambient.identity()].into_iter().collect();
    for g in set {
        if span.contains(g) {
            continue;
        }
        gens.push(g.clone());
        span = enumerate_finite(ambient, &gens, set.len())
            .expect("generated inside a finite subgroup")
            .into_iter()
            .collect();
    }
    gens
}

/// Closure of `gens` under multiplication, if it has at most `cap` elements.
fn enumerate_finite(ambient: &Group, gens: &[GroupElement], cap: usize) -> Option<Vec<GroupElement>> {
    let mut seen: BTreeSet<GroupElement> = [ambient.identity()].into_iter().collect();
    let mut frontier = vec![ambient.identity()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = ambient.mul_raw(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                frontier.push(y);
            }
        }
    }
    Some(seen.into_iter().collect())
}

fn finite_subgroup_group(ambient: &Group, mut list: Vec<GroupElement>, label: &str) -> Result<(Group, Embedding)> {
    let e = ambient.identity();
    list.retain(|x| *x != e);
    list.sort();
    list.insert(0, e);
    let index = |x: &GroupElement| list.binary_search_by(|y| cmp_identity_first(y, x, &list[0]));
    let mut table = Vec::with_capacity(list.len());
    for a in &list {
        let mut row = Vec::with_capacity(list.len());
        for b in &list {
            let p = ambient.mul_raw(a, b);
            let i = index(&p).map_err(|_| Error::UnsupportedSubgroup(format!("{label} is not closed")))?;
            row.push(i as u32);
        }
        table.push(row);
    }
    let names = list.iter().map(|x| ambient.format_element(x)).collect();
    let finite = FiniteGroup::from_table(label, table, Some(names))?;
    Ok((Group::finite(finite), Embedding::List(list)))
}

fn cmp_identity_first(y: &GroupElement, x: &GroupElement, e: &GroupElement) -> core::cmp::Ordering {
    use core::cmp::Ordering;
    match (y == e, x == e) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (false, false) => y.cmp(x),
    }
}

/// Centralizer of an element: explicit elements for finite groups,
/// generators with an exact membership predicate otherwise.
#[derive(Debug, Clone)]
pub struct CentralizerDesc {
    pub element: GroupElement,
    pub generators: Vec<GroupElement>,
    pub elements: Option<Vec<GroupElement>>,
    pub whole_group: bool,
}

impl CentralizerDesc {
    pub fn to_subgroup(&self, ambient: &Group) -> Subgroup {
        if self.whole_group {
            return Subgroup::whole(ambient).with_label("C(g)");
        }
        Subgroup::build(
            ambient,
            SubgroupKind::Centralizer(self.element.clone()),
            self.generators.clone(),
            "C(g)",
        )
    }
}

fn fp_centralizer_generator(word: &[Syllable], n: u32) -> Vec<Syllable> {
    let (u, core) = words::cyclic_reduction(word, n);
    let root = match core.as_slice() {
        [Syllable::A(_)] => vec![Syllable::A(1)],
        [Syllable::B(_)] => vec![Syllable::B(1)],
        _ => words::primitive_root(&core),
    };
    let (u_inv, _) = words::inverse(&u, n);
    let (left, _) = words::multiply(&u, &root, n);
    words::multiply(&left, &u_inv, n).0
}

impl Group {
    /// Generators of `C(g)`; errors with `UnsupportedFamily` when no
    /// parametric description is implemented.
    pub fn centralizer_description(&self, g: &GroupElement) -> Result<CentralizerDesc> {
        self.check(g)?;
        use GroupElement as E;
        let whole = |grp: &Group| CentralizerDesc {
            element: g.clone(),
            generators: grp.generators(),
            elements: None,
            whole_group: true,
        };
        let generated = |gens: Vec<GroupElement>| CentralizerDesc {
            element: g.clone(),
            generators: gens,
            elements: None,
            whole_group: false,
        };
        let desc = match (self.family(), g) {
            (Family::Finite(t), E::Finite(x)) => {
                let elems: Vec<GroupElement> = t.centralizer(*x).into_iter().map(E::Finite).collect();
                CentralizerDesc {
                    element: g.clone(),
                    generators: elems.clone(),
                    whole_group: elems.len() == t.order(),
                    elements: Some(elems),
                }
            }
            (Family::FreeAbelian { .. }, _) => whole(self),
            (Family::InfiniteDihedral, E::Dihedral { shift: 0, flip: false }) => whole(self),
            (Family::InfiniteDihedral, E::Dihedral { flip: false, .. }) => {
                generated(vec![E::Dihedral { shift: 1, flip: false }])
            }
            (Family::InfiniteDihedral, E::Dihedral { flip: true, .. }) => CentralizerDesc {
                element: g.clone(),
                generators: vec![g.clone()],
                elements: Some(vec![self.identity(), g.clone()]),
                whole_group: false,
            },
            (Family::Heisenberg3, E::Heisenberg([0, 0, _])) => whole(self),
            (Family::Heisenberg3, E::Heisenberg([x, y, _])) => {
                let d = num_integer::gcd(*x, *y);
                generated(vec![E::Heisenberg([x / d, y / d, 0]), E::Heisenberg([0, 0, 1])])
            }
            (Family::FreeProduct { .. }, E::FreeProduct(w)) if w.is_empty() => whole(self),
            (Family::FreeProduct { n }, E::FreeProduct(w)) => {
                generated(vec![E::FreeProduct(fp_centralizer_generator(w, *n))])
            }
            (Family::BaumslagSolitar { .. }, E::BaumslagSolitar { word, .. }) if word.is_empty() => whole(self),
            (Family::BaumslagSolitar { n }, E::BaumslagSolitar { word, .. }) => generated(vec![
                E::BaumslagSolitar {
                    word: fp_centralizer_generator(word, *n),
                    central: 0,
                },
                E::BaumslagSolitar {
                    word: Vec::new(),
                    central: 1,
                },
            ]),
            (Family::Lamplighter, _) if self.is_identity(g) => whole(self),
            (Family::Lamplighter, _) => {
                return Err(Error::UnsupportedFamily(
                    "no parametric centralizer for the lamplighter group".into(),
                ))
            }
            (Family::DirectProduct(fs), E::Product(parts)) => {
                let mut gens = Vec::new();
                let mut all_whole = true;
                for (i, (f, p)) in fs.iter().zip(parts).enumerate() {
                    let d = f.centralizer_description(p)?;
                    all_whole &= d.whole_group;
                    gens.extend(d.generators.into_iter().map(|x| self.embed_component(i, x)));
                }
                if all_whole {
                    whole(self)
                } else {
                    generated(gens)
                }
            }
            _ => unreachable!("checked membership"),
        };
        for h in &desc.generators {
            if !self.commutes_raw(g, h) {
                return Err(Error::InternalInconsistency(format!(
                    "centralizer generator {} does not commute with {}",
                    self.format_element(h),
                    self.format_element(g)
                )));
            }
        }
        Ok(desc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GroupElement as E;

    #[test]
    fn heisenberg_centralizer_of_x() {
        let h = Group::heisenberg();
        let d = h.centralizer_description(&E::Heisenberg([1, 0, 0])).unwrap();
        assert_eq!(d.generators, vec![E::Heisenberg([1, 0, 0]), E::Heisenberg([0, 0, 1])]);
        let c = d.to_subgroup(&h);
        assert!(c.contains(&E::Heisenberg([5, 0, -3])));
        assert!(!c.contains(&E::Heisenberg([0, 1, 0])));
        let (grp, emb) = c.as_group().unwrap();
        assert_eq!(grp, Group::free_abelian(2));
        assert_eq!(emb.apply(&h, &E::FreeAbelian(vec![2, 1])).unwrap(), E::Heisenberg([2, 0, 1]));
    }

    #[test]
    fn quaternion_centralizer_of_i() {
        let q = Group::quaternion();
        let d = q.centralizer_description(&E::Finite(2)).unwrap();
        assert_eq!(d.elements.unwrap().len(), 4);
    }

    #[test]
    fn free_product_centralizers_are_cyclic() {
        let g = Group::free_product(3).unwrap();
        let w = E::FreeProduct(vec![Syllable::A(1), Syllable::B(1), Syllable::A(1), Syllable::B(1)]);
        let d = g.centralizer_description(&w).unwrap();
        assert_eq!(d.generators, vec![E::FreeProduct(vec![Syllable::A(1), Syllable::B(1)])]);
    }

    #[test]
    fn cyclic_membership() {
        let bs = Group::baumslag_solitar(2).unwrap();
        let z = E::BaumslagSolitar {
            word: Vec::new(),
            central: 1,
        };
        let s = Subgroup::cyclic(&bs, z, "<b^2>").unwrap();
        let b = E::BaumslagSolitar {
            word: vec![Syllable::B(1)],
            central: 0,
        };
        assert!(s.contains(&bs.pow(&b, 6).unwrap()));
        assert!(!s.contains(&b));
    }

    #[test]
    fn mixed_radix_roundtrip() {
        let orders = [4, 2, 3];
        for i in 0..24 {
            assert_eq!(join_index(&split_index(i, &orders), &orders), i);
        }
    }
}
