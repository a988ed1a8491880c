//! FC-center, upper FC-central series, FC-hypercenter and ICC quotients.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{ClassSize, Family, Group, GroupElement, InfiniteClassCertificate};
use crate::quotient::{quotient_by, Quotient};
use crate::subgroup::Subgroup;

pub const DEFAULT_MAX_STEPS: usize = 8;

#[derive(Debug, Clone)]
pub enum IccVerdict {
    Yes {
        argument: &'static str,
        certificates: Vec<(GroupElement, InfiniteClassCertificate)>,
    },
    No {
        witness: GroupElement,
        class_size: u64,
    },
    Unknown {
        bound: u32,
    },
}

impl IccVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IccVerdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IccVerdict::No { .. })
    }
}

/// Words of length at most two in the generators and their inverses.
fn short_words(g: &Group) -> Vec<GroupElement> {
    let mut letters = Vec::new();
    for x in g.generators() {
        letters.push(g.inv_raw(&x));
        letters.push(x);
    }
    let mut out = letters.clone();
    for a in &letters {
        for b in &letters {
            out.push(g.mul_raw(a, b));
        }
    }
    out.sort();
    out.dedup();
    out.retain(|x| !g.is_identity(x));
    out
}

impl Group {
    /// Decides whether every nontrivial conjugacy class is infinite.
    pub fn is_icc(&self, effort: u32) -> Result<IccVerdict> {
        use GroupElement as E;
        let no = |witness: GroupElement, class_size: u64| IccVerdict::No { witness, class_size };
        Ok(match self.family() {
            Family::Finite(t) => {
                if t.order() == 1 {
                    IccVerdict::Yes {
                        argument: "the trivial group has no nontrivial classes",
                        certificates: Vec::new(),
                    }
                } else {
                    let witness = t
                        .center()
                        .into_iter()
                        .find(|&x| x != t.identity())
                        .unwrap_or_else(|| (0..t.order() as u32).find(|&x| x != t.identity()).expect("order >= 2"));
                    no(E::Finite(witness), t.conjugacy_class(witness).len() as u64)
                }
            }
            Family::FreeAbelian { rank } => {
                if *rank == 0 {
                    IccVerdict::Yes {
                        argument: "the trivial group has no nontrivial classes",
                        certificates: Vec::new(),
                    }
                } else {
                    no(self.generators()[0].clone(), 1)
                }
            }
            Family::InfiniteDihedral => no(E::Dihedral { shift: 1, flip: false }, 2),
            Family::Heisenberg3 => no(E::Heisenberg([0, 0, 1]), 1),
            Family::BaumslagSolitar { .. } => no(
                E::BaumslagSolitar {
                    word: Vec::new(),
                    central: 1,
                },
                1,
            ),
            Family::FreeProduct { .. } | Family::Lamplighter => {
                let mut certificates = Vec::new();
                for x in short_words(self) {
                    match self.class_size(&x, effort)? {
                        ClassSize::Infinite(c) => certificates.push((x, c)),
                        ClassSize::Finite(k) => return Ok(no(x, k)),
                        ClassSize::UnknownBeyond(b) => return Ok(IccVerdict::Unknown { bound: b }),
                    }
                }
                let argument = if matches!(self.family(), Family::Lamplighter) {
                    "nontrivial lamp sets move under the shift; pure shifts are moved by lamp-shift conjugators"
                } else {
                    "centralizers of nontrivial elements of Z*Z_n are virtually cyclic of infinite index"
                };
                IccVerdict::Yes { argument, certificates }
            }
            Family::DirectProduct(fs) => {
                let mut certificates = Vec::new();
                let mut unknown = None;
                for (i, f) in fs.iter().enumerate() {
                    match f.is_icc(effort)? {
                        IccVerdict::No { witness, class_size } => {
                            return Ok(no(self.embed_component(i, witness), class_size))
                        }
                        IccVerdict::Unknown { bound } => unknown = Some(bound),
                        IccVerdict::Yes { certificates: cs, .. } => {
                            for (x, mut c) in cs {
                                c.conjugator = self.embed_component(i, c.conjugator);
                                certificates.push((self.embed_component(i, x), c));
                            }
                        }
                    }
                }
                match unknown {
                    Some(bound) => IccVerdict::Unknown { bound },
                    None => IccVerdict::Yes {
                        argument: "every factor is ICC",
                        certificates,
                    },
                }
            }
        })
    }
}

/// Checks a closed-form FC-center: generators must have finite classes and
/// ambient generators outside it infinite ones.
fn certify(g: &Group, mut s: Subgroup, effort: u32) -> Result<Subgroup> {
    for x in s.generators().to_vec() {
        match g.class_size(&x, effort)? {
            ClassSize::Finite(_) => {}
            ClassSize::UnknownBeyond(_) => s.mark_uncertain(),
            ClassSize::Infinite(_) => {
                return Err(Error::InternalInconsistency(format!(
                    "FC-center generator {} has an infinite class",
                    g.format_element(&x)
                )))
            }
        }
    }
    for x in g.generators() {
        if s.contains(&x) {
            continue;
        }
        match g.class_size(&x, effort)? {
            ClassSize::Infinite(_) => {}
            ClassSize::UnknownBeyond(_) => s.mark_uncertain(),
            ClassSize::Finite(_) => {
                return Err(Error::InternalInconsistency(format!(
                    "{} has a finite class but lies outside the FC-center",
                    g.format_element(&x)
                )))
            }
        }
    }
    Ok(s)
}

/// The subgroup of elements with finite conjugacy class.
pub fn fc_center(g: &Group, effort: u32) -> Result<Subgroup> {
    use GroupElement as E;
    let s = match g.family() {
        Family::Finite(_) | Family::FreeAbelian { .. } => Subgroup::whole(g),
        Family::InfiniteDihedral => Subgroup::cyclic(g, E::Dihedral { shift: 1, flip: false }, "<t>")?,
        Family::Heisenberg3 => Subgroup::cyclic(g, E::Heisenberg([0, 0, 1]), "Z(G)")?,
        Family::BaumslagSolitar { n } => Subgroup::cyclic(
            g,
            E::BaumslagSolitar {
                word: Vec::new(),
                central: 1,
            },
            &format!("<b^{n}>"),
        )?,
        Family::FreeProduct { .. } | Family::Lamplighter => Subgroup::trivial(g),
        Family::DirectProduct(fs) => {
            let mut parts = Vec::with_capacity(fs.len());
            for f in fs {
                parts.push(fc_center(f, effort)?);
            }
            return Subgroup::product(g, parts, "FC(G)");
        }
    };
    certify(g, s, effort)
}

#[derive(Debug, Clone)]
pub struct FcSeries {
    pub steps: Vec<Subgroup>,
    pub stabilized: bool,
    pub stabilization_index: usize,
    /// Why the series was cut short, when it was.
    pub truncation: Option<String>,
}

impl FcSeries {
    /// The last computed term.
    pub fn last(&self) -> &Subgroup {
        self.steps.last().expect("series starts with {e}")
    }
}

/// `F_0 = {e}`, `F_{k+1}` = preimage of `FC(G/F_k)`; stops once the series
/// stabilizes or after `max_steps` terms.
pub fn upper_fc_series(g: &Group, max_steps: usize, effort: u32) -> Result<FcSeries> {
    if let Family::DirectProduct(fs) = g.family() {
        return product_series(g, fs, max_steps, effort);
    }
    let mut steps = vec![Subgroup::trivial(g)];
    loop {
        let k = steps.len() - 1;
        let current = &steps[k];
        if current.is_whole() {
            return Ok(FcSeries {
                stabilized: true,
                stabilization_index: k,
                steps,
                truncation: None,
            });
        }
        if k >= max_steps {
            return Ok(FcSeries {
                stabilized: false,
                stabilization_index: k,
                steps,
                truncation: Some(format!("no stabilization within {max_steps} steps")),
            });
        }
        let quotient: Quotient = match quotient_by(g, current) {
            Ok(q) => q,
            Err(Error::UnsupportedQuotient(msg)) => {
                return Ok(FcSeries {
                    stabilized: false,
                    stabilization_index: k,
                    steps,
                    truncation: Some(msg),
                })
            }
            Err(e) => return Err(e),
        };
        let image = fc_center(quotient.group(), effort)?;
        let label = format!("F_{}", k + 1);
        let next = if image.is_trivial() {
            let mut same = current.clone();
            if image.is_uncertain() {
                same.mark_uncertain();
            }
            steps.push(same);
            return Ok(FcSeries {
                stabilized: true,
                stabilization_index: k,
                steps,
                truncation: None,
            });
        } else if image.is_whole() {
            let mut whole = Subgroup::whole(g);
            if image.is_uncertain() || current.is_uncertain() {
                whole.mark_uncertain();
            }
            whole
        } else if k == 0 {
            image
        } else {
            Subgroup::preimage(&quotient, image, &label)
        };
        steps.push(next);
    }
}

fn product_series(g: &Group, fs: &[Group], max_steps: usize, effort: u32) -> Result<FcSeries> {
    let mut series = Vec::with_capacity(fs.len());
    for f in fs {
        series.push(upper_fc_series(f, max_steps, effort)?);
    }
    let len = series.iter().map(|s| s.steps.len()).max().unwrap_or(1);
    let mut steps = Vec::with_capacity(len);
    for k in 0..len {
        let parts: Vec<Subgroup> = series
            .iter()
            .map(|s| s.steps.get(k).unwrap_or_else(|| s.last()).clone())
            .collect();
        steps.push(Subgroup::product(g, parts, &format!("F_{k}"))?.with_label(&format!("F_{k}")));
    }
    let stabilized = series.iter().all(|s| s.stabilized);
    let stabilization_index = series.iter().map(|s| s.stabilization_index).max().unwrap_or(0);
    let truncation = series.iter().find_map(|s| s.truncation.clone());
    Ok(FcSeries {
        steps,
        stabilized,
        stabilization_index,
        truncation,
    })
}

/// `FCH(G)`: the limit of the upper FC-central series, flagged uncertain
/// when the series was truncated.
pub fn fc_hypercenter(g: &Group, max_steps: usize, effort: u32) -> Result<Subgroup> {
    let series = upper_fc_series(g, max_steps, effort)?;
    let mut fch = series.steps[series.stabilization_index].clone().with_label("FCH(G)");
    if !series.stabilized {
        fch.mark_uncertain();
    }
    Ok(fch)
}

/// `ICC(G) = G/FCH(G)`.
pub fn icc_quotient(g: &Group, max_steps: usize, effort: u32) -> Result<Quotient> {
    let fch = fc_hypercenter(g, max_steps, effort)?;
    if fch.is_uncertain() {
        return Err(Error::UnsupportedQuotient(format!(
            "FC-hypercenter of {} is not certified",
            g.name()
        )));
    }
    quotient_by(g, &fch)
}

/// For normal `N` with `G/N` ICC, checks `FCH(G) ⊆ N`.
pub fn check_icc_quotient_minimality(g: &Group, n: &Subgroup, max_steps: usize, effort: u32) -> Result<bool> {
    let q = quotient_by(g, n)?;
    if !q.group().is_icc(effort)?.is_yes() {
        return Err(Error::PreconditionFailed(format!(
            "{} / {} is not certified ICC",
            g.name(),
            n.label()
        )));
    }
    let fch = fc_hypercenter(g, max_steps, effort)?;
    Ok(fch.generators().iter().all(|x| n.contains(x)))
}

/// For FC-hypercentral `G`, checks that the subgroup `H` is FC-hypercentral
/// as well; vacuously true otherwise.
pub fn check_subgroup_closure(g: &Group, h: &Subgroup, max_steps: usize, effort: u32) -> Result<bool> {
    let fch = fc_hypercenter(g, max_steps, effort)?;
    if !fch.is_whole() || fch.is_uncertain() {
        return Ok(true);
    }
    let (as_group, _) = h.as_group().map_err(|e| match e {
        Error::UnsupportedSubgroup(msg) => Error::UnsupportedFamily(msg),
        other => other,
    })?;
    let inner = fc_hypercenter(&as_group, max_steps, effort)?;
    Ok(inner.is_whole() && !inner.is_uncertain())
}

#[cfg(test)]
mod tests {
    use super::*;
    use GroupElement as E;

    fn labels_and_wholeness(s: &FcSeries) -> Vec<(bool, bool)> {
        s.steps.iter().map(|x| (x.is_trivial(), x.is_whole())).collect()
    }

    #[test]
    fn dihedral_series() {
        let d = Group::infinite_dihedral();
        let s = upper_fc_series(&d, DEFAULT_MAX_STEPS, 20).unwrap();
        assert!(s.stabilized);
        assert_eq!(s.stabilization_index, 2);
        assert_eq!(labels_and_wholeness(&s), vec![(true, false), (false, false), (false, true)]);
        assert!(s.steps[1].contains(&E::Dihedral { shift: 7, flip: false }));
        assert!(!s.steps[1].contains(&E::Dihedral { shift: 0, flip: true }));
    }

    #[test]
    fn bs_series_stops_at_center() {
        for n in [2, 3] {
            let g = Group::baumslag_solitar(n).unwrap();
            let s = upper_fc_series(&g, DEFAULT_MAX_STEPS, 20).unwrap();
            assert!(s.stabilized);
            assert_eq!(s.stabilization_index, 1);
            assert_eq!(s.steps.len(), 3);
            let q = icc_quotient(&g, DEFAULT_MAX_STEPS, 20).unwrap();
            assert_eq!(*q.group(), Group::free_product(n).unwrap());
            assert!(q.group().is_icc(20).unwrap().is_yes());
        }
    }

    #[test]
    fn lamplighter_is_icc() {
        let l = Group::lamplighter();
        assert!(l.is_icc(20).unwrap().is_yes());
        let s = upper_fc_series(&l, DEFAULT_MAX_STEPS, 20).unwrap();
        assert_eq!(s.stabilization_index, 0);
        assert!(fc_hypercenter(&l, 8, 20).unwrap().is_trivial());
    }

    #[test]
    fn minimality_and_closure() {
        let g = Group::baumslag_solitar(2).unwrap();
        let n = fc_center(&g, 20).unwrap();
        assert!(check_icc_quotient_minimality(&g, &n, 8, 20).unwrap());
        let h = Group::heisenberg();
        let z = fc_center(&h, 20).unwrap();
        assert!(matches!(
            check_icc_quotient_minimality(&h, &z, 8, 20),
            Err(Error::PreconditionFailed(_))
        ));
        assert!(check_subgroup_closure(&h, &z, 8, 20).unwrap());
    }

    #[test]
    fn product_series_is_componentwise() {
        let g = Group::direct_product(vec![Group::infinite_dihedral(), Group::free_product(2).unwrap()]).unwrap();
        let s = upper_fc_series(&g, 8, 20).unwrap();
        assert!(s.stabilized);
        let q = icc_quotient(&g, 8, 20).unwrap();
        assert!(!q.group().is_icc(20).unwrap().is_no());
    }
}
