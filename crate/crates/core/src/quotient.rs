//! Quotients by normal subgroups, restricted to cases with an identified
//! quotient family.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{Family, Group, GroupElement};
use crate::subgroup::{join_index, product_factors, split_index, Subgroup, SubgroupKind};

#[derive(Debug, Clone)]
enum QuotientMap {
    Identity,
    ToTrivial,
    Finite { coset_of: Vec<u32>, reps: Vec<u32> },
    BaumslagSolitarToFreeProduct,
    HeisenbergToZ2,
    DihedralToZ2,
    Product { parts: Vec<Quotient>, flat_orders: Option<Vec<usize>> },
}

/// The quotient map `G → G/N` with a set-theoretic section.
#[derive(Debug, Clone)]
pub struct Quotient {
    ambient: Group,
    kernel: Subgroup,
    group: Group,
    map: QuotientMap,
}

fn unsupported(g: &Group, n: &Subgroup) -> Error {
    Error::UnsupportedQuotient(format!("{} / {}", g.name(), n.label()))
}

fn cyclic_generator(n: &Subgroup) -> Option<&GroupElement> {
    match n.kind() {
        SubgroupKind::Cyclic(u) => Some(u),
        _ => None,
    }
}

impl Quotient {
    pub fn ambient(&self) -> &Group {
        &self.ambient
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// The quotient group.
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn project(&self, g: &GroupElement) -> Result<GroupElement> {
        self.ambient.check(g)?;
        use GroupElement as E;
        Ok(match (&self.map, g) {
            (QuotientMap::Identity, _) => g.clone(),
            (QuotientMap::ToTrivial, _) => self.group.identity(),
            (QuotientMap::Finite { coset_of, .. }, E::Finite(i)) => E::Finite(coset_of[*i as usize]),
            (QuotientMap::BaumslagSolitarToFreeProduct, E::BaumslagSolitar { word, .. }) => E::FreeProduct(word.clone()),
            (QuotientMap::HeisenbergToZ2, E::Heisenberg([x, y, _])) => E::FreeAbelian(alloc::vec![*x, *y]),
            (QuotientMap::DihedralToZ2, E::Dihedral { flip, .. }) => E::Finite(u32::from(*flip)),
            (QuotientMap::Product { parts, flat_orders }, E::Product(cs)) => {
                let mut images = Vec::with_capacity(parts.len());
                for (q, c) in parts.iter().zip(cs) {
                    images.push(q.project(c)?);
                }
                match flat_orders {
                    Some(orders) => {
                        let digits: Vec<usize> = images
                            .iter()
                            .map(|x| match x {
                                E::Finite(i) => *i as usize,
                                _ => unreachable!("finite components"),
                            })
                            .collect();
                        E::Finite(join_index(&digits, orders) as u32)
                    }
                    None => E::Product(images),
                }
            }
            _ => unreachable!("checked membership"),
        })
    }

    /// A preimage of `x` under the quotient map.
    pub fn lift(&self, x: &GroupElement) -> GroupElement {
        use GroupElement as E;
        match (&self.map, x) {
            (QuotientMap::Identity, _) => x.clone(),
            (QuotientMap::ToTrivial, _) => self.ambient.identity(),
            (QuotientMap::Finite { reps, .. }, E::Finite(i)) => E::Finite(reps[*i as usize]),
            (QuotientMap::BaumslagSolitarToFreeProduct, E::FreeProduct(w)) => E::BaumslagSolitar {
                word: w.clone(),
                central: 0,
            },
            (QuotientMap::HeisenbergToZ2, E::FreeAbelian(v)) => E::Heisenberg([v[0], v[1], 0]),
            (QuotientMap::DihedralToZ2, E::Finite(f)) => E::Dihedral {
                shift: 0,
                flip: *f == 1,
            },
            (QuotientMap::Product { parts, flat_orders }, _) => {
                let components: Vec<GroupElement> = match (flat_orders, x) {
                    (Some(orders), E::Finite(i)) => split_index(*i as usize, orders)
                        .into_iter()
                        .map(|d| E::Finite(d as u32))
                        .collect(),
                    (None, E::Product(cs)) => cs.clone(),
                    _ => panic!("lift of a foreign element"),
                };
                E::Product(parts.iter().zip(&components).map(|(q, c)| q.lift(c)).collect())
            }
            _ => panic!("lift of a foreign element"),
        }
    }
}

/// `G/N` for the whitelisted pairs: finite groups, `N` trivial or whole,
/// `BS(n,n)/⟨b^n⟩`, `H3/Z(H3)`, `D_inf/⟨t⟩` and componentwise products.
pub fn quotient_by(g: &Group, n: &Subgroup) -> Result<Quotient> {
    if *n.ambient() != *g {
        return Err(Error::PreconditionFailed("subgroup of a different group".into()));
    }
    let make = |group: Group, map: QuotientMap| Quotient {
        ambient: g.clone(),
        kernel: n.clone(),
        group,
        map,
    };
    if n.is_trivial() {
        return Ok(make(g.clone(), QuotientMap::Identity));
    }
    if n.is_whole() {
        return Ok(make(Group::trivial(), QuotientMap::ToTrivial));
    }
    use GroupElement as E;
    match g.family() {
        Family::Finite(t) => {
            let elements = n.elements().ok_or_else(|| unsupported(g, n))?;
            let indices: Vec<u32> = elements
                .iter()
                .map(|x| match x {
                    E::Finite(i) => *i,
                    _ => unreachable!("finite group elements"),
                })
                .collect();
            let (q, coset_of) = t.quotient(&indices)?;
            let mut reps = alloc::vec![u32::MAX; q.order()];
            for (i, &c) in coset_of.iter().enumerate() {
                if reps[c as usize] == u32::MAX {
                    reps[c as usize] = i as u32;
                }
            }
            Ok(make(Group::finite(q), QuotientMap::Finite { coset_of, reps }))
        }
        Family::BaumslagSolitar { n: m } => match cyclic_generator(n) {
            Some(E::BaumslagSolitar { word, central }) if word.is_empty() && central.abs() == 1 => Ok(make(
                Group::free_product(*m)?,
                QuotientMap::BaumslagSolitarToFreeProduct,
            )),
            _ => Err(unsupported(g, n)),
        },
        Family::Heisenberg3 => match cyclic_generator(n) {
            Some(E::Heisenberg([0, 0, c])) if c.abs() == 1 => Ok(make(Group::free_abelian(2), QuotientMap::HeisenbergToZ2)),
            _ => Err(unsupported(g, n)),
        },
        Family::InfiniteDihedral => match cyclic_generator(n) {
            Some(E::Dihedral { shift, flip: false }) if shift.abs() == 1 => {
                Ok(make(Group::cyclic(2)?, QuotientMap::DihedralToZ2))
            }
            _ => Err(unsupported(g, n)),
        },
        Family::DirectProduct(_) => {
            let SubgroupKind::Product(components) = n.kind() else {
                return Err(unsupported(g, n));
            };
            let factors = product_factors(g)?;
            let mut parts = Vec::with_capacity(factors.len());
            for (f, c) in factors.iter().zip(components) {
                parts.push(quotient_by(f, c)?);
            }
            let groups: Vec<Group> = parts.iter().map(|q| q.group.clone()).collect();
            let flat_orders = if groups.iter().all(|q| q.is_finite()) {
                Some(groups.iter().map(|q| q.order().expect("finite")).collect())
            } else {
                None
            };
            Ok(make(
                Group::direct_product(groups)?,
                QuotientMap::Product { parts, flat_orders },
            ))
        }
        _ => Err(unsupported(g, n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::words::Syllable;
    use alloc::vec;

    #[test]
    fn bs_modulo_center_is_free_product() {
        let bs = Group::baumslag_solitar(3).unwrap();
        let z = GroupElement::BaumslagSolitar {
            word: vec![],
            central: 1,
        };
        let n = Subgroup::cyclic(&bs, z, "<b^3>").unwrap();
        let q = quotient_by(&bs, &n).unwrap();
        assert_eq!(*q.group(), Group::free_product(3).unwrap());
        let b = GroupElement::BaumslagSolitar {
            word: vec![Syllable::B(2)],
            central: 4,
        };
        assert_eq!(q.project(&b).unwrap(), GroupElement::FreeProduct(vec![Syllable::B(2)]));
    }

    #[test]
    fn dihedral_modulo_translations() {
        let d = Group::infinite_dihedral();
        let n = Subgroup::cyclic(&d, GroupElement::Dihedral { shift: 1, flip: false }, "<t>").unwrap();
        let q = quotient_by(&d, &n).unwrap();
        assert_eq!(q.group().order(), Some(2));
        let s = GroupElement::Dihedral { shift: 5, flip: true };
        assert_eq!(q.project(&s).unwrap(), GroupElement::Finite(1));
    }

    #[test]
    fn finite_quotient_by_center() {
        let d4 = Group::dihedral(4).unwrap();
        let center = Subgroup::from_elements(&d4, vec![GroupElement::Finite(0), GroupElement::Finite(2)], "Z").unwrap();
        let q = quotient_by(&d4, &center).unwrap();
        assert_eq!(q.group().order(), Some(4));
        assert!(q.group().is_abelian());
        let non_normal = Subgroup::from_elements(&d4, vec![GroupElement::Finite(0), GroupElement::Finite(4)], "<s>").unwrap();
        assert!(matches!(quotient_by(&d4, &non_normal), Err(Error::NotNormal(_))));
    }
}
