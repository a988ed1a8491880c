//! Turns parsed specs into core groups and cocycles.

use kleppner_core::cocycle::{Cocycle, Homomorphism};
use kleppner_core::error::Error;
use kleppner_core::group::{FiniteGroup, Group, GroupElement};

use crate::spec::{CocycleSpec, GroupSpec, HomImage};

pub fn build_group(spec: &GroupSpec) -> Result<Group, Error> {
    Ok(match spec {
        GroupSpec::Finite { name, table, names } => Group::finite(FiniteGroup::from_table(
            name.as_deref().unwrap_or("G"),
            table.clone(),
            names.clone(),
        )?),
        GroupSpec::Trivial => Group::trivial(),
        GroupSpec::Cyclic(n) => Group::cyclic(*n)?,
        GroupSpec::Dihedral(n) => Group::dihedral(*n)?,
        GroupSpec::Quaternion => Group::quaternion(),
        GroupSpec::ElementaryAbelian { p, k } => Group::elementary_abelian(*p, *k)?,
        GroupSpec::FreeAbelian(rank) => Group::free_abelian(*rank),
        GroupSpec::InfiniteDihedral => Group::infinite_dihedral(),
        GroupSpec::Heisenberg => Group::heisenberg(),
        GroupSpec::BaumslagSolitar(n) => Group::baumslag_solitar(*n)?,
        GroupSpec::FreeProduct(n) => Group::free_product(*n)?,
        GroupSpec::Lamplighter => Group::lamplighter(),
        GroupSpec::DirectProduct(factors) => {
            Group::direct_product(factors.iter().map(build_group).collect::<Result<_, _>>()?)?
        }
    })
}

fn invalid(msg: String) -> Error {
    Error::InvalidCocycle(msg)
}

/// Generator images in the order of `group.named_generators()`.
fn ordered_images<'a>(group: &Group, hom: &'a [(String, HomImage)]) -> Result<Vec<&'a HomImage>, Error> {
    let names: Vec<String> = group.named_generators().into_iter().map(|(n, _)| n).collect();
    if let Some((extra, _)) = hom.iter().find(|(k, _)| !names.contains(k)) {
        return Err(invalid(format!(
            "`{extra}` is not a generator of {}; generators are {}",
            group.name(),
            names.join(", ")
        )));
    }
    names
        .iter()
        .map(|n| {
            hom.iter()
                .find(|(k, _)| k == n)
                .map(|(_, v)| v)
                .ok_or_else(|| invalid(format!("no image given for generator `{n}`")))
        })
        .collect()
}

/// `group` must be the group built from `group_spec`.
pub fn build_cocycle(spec: &CocycleSpec, group: &Group, group_spec: &GroupSpec) -> Result<Cocycle, Error> {
    match spec {
        CocycleSpec::Trivial => Ok(Cocycle::trivial(group)),
        CocycleSpec::Bicharacter(theta) => Cocycle::bicharacter(group, theta.clone()),
        CocycleSpec::Table(values) => Cocycle::table(group, values.clone()),
        CocycleSpec::Product(factors) => {
            let GroupSpec::DirectProduct(specs) = group_spec else {
                return Err(invalid(format!("a product cocycle needs a direct product group, found {}", group.name())));
            };
            if specs.len() != factors.len() {
                return Err(invalid(format!("{} factor cocycles for {} factors", factors.len(), specs.len())));
            }
            let cocycles = factors
                .iter()
                .zip(specs)
                .map(|(c, gs)| build_cocycle(c, &build_group(gs)?, gs))
                .collect::<Result<_, _>>()?;
            Cocycle::product(group, cocycles)
        }
        CocycleSpec::Pullback { hom, target: None, inner } => {
            let images = ordered_images(group, hom)?
                .into_iter()
                .map(|img| match img {
                    HomImage::Vector(v) => Ok(v.clone()),
                    _ => Err(invalid("images must be integer vectors when no target group is given".into())),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let rank = images.first().map_or(0, Vec::len);
            let hom = Homomorphism::new(group, rank, images)?;
            let inner = build_cocycle(inner, &Group::free_abelian(rank), &GroupSpec::FreeAbelian(rank))?;
            Cocycle::pullback(group, hom, inner)
        }
        CocycleSpec::Pullback {
            hom,
            target: Some(target),
            inner,
        } => {
            let target_spec = target;
            let target = build_group(target_spec)?;
            let t = target
                .as_finite()
                .ok_or_else(|| invalid("a pullback target group must be finite".into()))?;
            let images = ordered_images(group, hom)?
                .into_iter()
                .map(|img| match img {
                    HomImage::Index(i) if (*i as usize) < t.order() => Ok(GroupElement::Finite(*i)),
                    HomImage::Name(s) => t
                        .names()
                        .iter()
                        .position(|n| n == s)
                        .map(|i| GroupElement::Finite(i as u32))
                        .ok_or_else(|| invalid(format!("`{s}` is not an element of {}", target.name()))),
                    _ => Err(invalid(format!("images must be elements of {}", target.name()))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let inner = build_cocycle(inner, &target, target_spec)?;
            Cocycle::pullback_finite(group, images, &inner)
        }
    }
}
