//! σ-regularity and Kleppner's condition.
//!
//! Only elements with finite conjugacy class can violate the condition, so
//! the search runs over the FC-center. For `h` in the centralizer of `g` the
//! map `h ↦ σ(g,h)σ(h,g)⁻¹` is a character of `C(g)`, which reduces
//! regularity tests to the generators of the centralizer.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::circle::CircleValue;
use crate::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::fc::{fc_center, IccVerdict};
use crate::group::{ClassSize, Family, GroupElement};
use crate::subgroup::{Subgroup, SubgroupKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regularity {
    Regular,
    Irregular { witness: GroupElement, defect: CircleValue },
    Unknown { bound: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub element: GroupElement,
    pub status: Regularity,
    pub class_size: ClassSize,
    /// Centralizer generators the decision was based on (empty when the
    /// centralizer was enumerated or sampled).
    pub centralizer_generators: Vec<GroupElement>,
}

impl RegularityVerdict {
    pub fn is_regular(&self) -> bool {
        self.status == Regularity::Regular
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KleppnerStatus {
    Holds,
    /// A nontrivial σ-regular element with a finite conjugacy class.
    Fails(RegularityVerdict),
    Unknown(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KleppnerVerdict {
    pub status: KleppnerStatus,
    pub evidence: Vec<String>,
}

impl KleppnerVerdict {
    pub fn holds(&self) -> bool {
        self.status == KleppnerStatus::Holds
    }

    pub fn fails(&self) -> bool {
        matches!(self.status, KleppnerStatus::Fails(_))
    }

    pub fn status_str(&self) -> &'static str {
        match self.status {
            KleppnerStatus::Holds => "holds",
            KleppnerStatus::Fails(_) => "fails",
            KleppnerStatus::Unknown(_) => "unknown",
        }
    }
}

/// Samples drawn per unit of effort when no centralizer description exists.
const SAMPLES_PER_EFFORT: u32 = 32;

/// Decides whether `g` is σ-regular.
pub fn is_sigma_regular(s: &Cocycle, g: &GroupElement, effort: u32) -> Result<RegularityVerdict> {
    let group = s.group();
    let class_size = group.class_size(g, effort)?;
    let verdict = |status, gens: Vec<GroupElement>| RegularityVerdict {
        element: g.clone(),
        status,
        class_size: class_size.clone(),
        centralizer_generators: gens,
    };
    if group.is_identity(g) {
        return Ok(verdict(Regularity::Regular, Vec::new()));
    }
    if s.is_identically_trivial()? {
        let gens = match group.centralizer_description(g) {
            Ok(desc) if desc.elements.is_none() => desc.generators,
            _ => Vec::new(),
        };
        return Ok(verdict(Regularity::Regular, gens));
    }
    match group.centralizer_description(g) {
        Ok(desc) => {
            let candidates = desc.elements.clone().unwrap_or_else(|| desc.generators.clone());
            for h in &candidates {
                let d = s.regularity_defect(g, h)?;
                if !d.is_identity() {
                    return Ok(verdict(
                        Regularity::Irregular {
                            witness: h.clone(),
                            defect: d,
                        },
                        Vec::new(),
                    ));
                }
            }
            let gens = if desc.elements.is_some() { Vec::new() } else { desc.generators };
            Ok(verdict(Regularity::Regular, gens))
        }
        Err(Error::UnsupportedFamily(_)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(u64::from(effort));
            for _ in 0..effort.saturating_mul(SAMPLES_PER_EFFORT) {
                let h = group.sample(&mut rng, 4);
                if group.commutes_raw(g, &h) {
                    let d = s.regularity_defect(g, &h)?;
                    if !d.is_identity() {
                        return Ok(verdict(Regularity::Irregular { witness: h, defect: d }, Vec::new()));
                    }
                }
            }
            Ok(verdict(Regularity::Unknown { bound: effort }, Vec::new()))
        }
        Err(e) => Err(e),
    }
}

/// The σ-regular conjugacy classes of a finite group, ordered by least
/// element.
pub fn sigma_regular_classes(s: &Cocycle) -> Result<Vec<Vec<GroupElement>>> {
    let t = s.group().as_finite().ok_or(Error::InfiniteGroup)?;
    let mut out = Vec::new();
    for class in t.conjugacy_classes() {
        let rep = GroupElement::Finite(class[0]);
        if is_sigma_regular(s, &rep, 0)?.is_regular() {
            out.push(class.into_iter().map(GroupElement::Finite).collect());
        }
    }
    Ok(out)
}

/// Decides Kleppner's condition: every nontrivial σ-regular class is
/// infinite.
pub fn kleppner_condition(s: &Cocycle, effort: u32) -> Result<KleppnerVerdict> {
    let group = s.group();
    match group.family() {
        Family::Finite(_) => finite_condition(s),
        Family::FreeAbelian { rank } => lattice_condition(s, *rank, effort),
        Family::DirectProduct(_) => product_condition(s, effort),
        _ => {
            let fc = fc_center(group, effort)?;
            if fc.is_uncertain() {
                return Ok(unknown("the FC-center could not be certified", Vec::new()));
            }
            if fc.is_trivial() {
                let evidence = vec![format!("FC({}) = {{e}}", group.name())];
                return Ok(match group.is_icc(effort)? {
                    IccVerdict::Yes { argument, .. } => KleppnerVerdict {
                        status: KleppnerStatus::Holds,
                        evidence: [evidence, vec![format!("ICC: {argument}")]].concat(),
                    },
                    _ => unknown("ICC certificate incomplete", evidence),
                });
            }
            match fc.kind() {
                SubgroupKind::Cyclic(u) => cyclic_condition(s, &fc, u, effort),
                _ => Ok(unknown("no decision procedure for this FC-center", Vec::new())),
            }
        }
    }
}

fn unknown(reason: &str, evidence: Vec<String>) -> KleppnerVerdict {
    KleppnerVerdict {
        status: KleppnerStatus::Unknown(reason.into()),
        evidence,
    }
}

fn fails(witness: RegularityVerdict, evidence: Vec<String>) -> KleppnerVerdict {
    KleppnerVerdict {
        status: KleppnerStatus::Fails(witness),
        evidence,
    }
}

fn finite_condition(s: &Cocycle) -> Result<KleppnerVerdict> {
    let classes = sigma_regular_classes(s)?;
    let t = s.group().as_finite().expect("finite");
    let evidence = vec![format!(
        "{} of {} conjugacy classes are sigma-regular",
        classes.len(),
        t.conjugacy_classes().len()
    )];
    let witness = classes
        .iter()
        .flatten()
        .filter(|g| !s.group().is_identity(g))
        .min_by_key(|g| g.shortlex_key())
        .cloned();
    Ok(match witness {
        None => KleppnerVerdict {
            status: KleppnerStatus::Holds,
            evidence,
        },
        Some(w) => fails(is_sigma_regular(s, &w, 0)?, evidence),
    })
}

/// `Z^k`: the defect pairing is the bicharacter `A(e_i, e_j)`; `g` is regular
/// iff `Σ g_i A_ij ≡ 0` for all `j`.
fn lattice_condition(s: &Cocycle, rank: usize, effort: u32) -> Result<KleppnerVerdict> {
    let group = s.group();
    let basis = group.generators();
    let mut pairing = vec![vec![CircleValue::identity(); rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            pairing[i][j] = s.regularity_defect(&basis[i], &basis[j])?;
        }
    }
    let theta: Vec<Vec<BigRational>> = pairing
        .iter()
        .map(|r| r.iter().map(|v| v.theta_coeff().clone()).collect())
        .collect();
    let kernel = left_kernel_vector(&theta);
    let evidence = vec![format!("antisymmetrized pairing matrix {}", format_matrix(&pairing))];
    let Some(kernel) = kernel else {
        return Ok(KleppnerVerdict {
            status: KleppnerStatus::Holds,
            evidence: [evidence, vec!["the theta part of the pairing is nondegenerate".into()]].concat(),
        });
    };
    let den = pairing
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.rational_part().denom()))
        .to_i64()
        .ok_or_else(|| Error::InvalidCocycle("pairing denominators overflow".into()))?;
    let regular = |g: &[i64]| -> Result<bool> {
        for j in 0..rank {
            let mut acc = CircleValue::identity();
            for (i, &gi) in g.iter().enumerate() {
                acc = acc.mul(&pairing[i][j].pow(gi))?;
            }
            if !acc.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let fallback: Vec<i64> = kernel.iter().map(|x| x * den).collect();
    let bound: i64 = fallback.iter().map(|x| x.abs()).sum();
    let cap = bound.min(64);
    let mut witness = None;
    'norms: for norm in 1..=cap {
        let mut best: Option<GroupElement> = None;
        for v in vectors_of_norm(rank, norm) {
            if regular(&v)? {
                let e = GroupElement::FreeAbelian(v);
                if best.as_ref().is_none_or(|b| e.shortlex_key() < b.shortlex_key()) {
                    best = Some(e);
                }
            }
        }
        if best.is_some() {
            witness = best;
            break 'norms;
        }
    }
    let witness = match witness {
        Some(w) => w,
        None if regular(&fallback)? => GroupElement::FreeAbelian(fallback),
        None => {
            return Err(Error::InternalInconsistency(
                "scaled kernel vector is not regular".into(),
            ))
        }
    };
    Ok(fails(is_sigma_regular(s, &witness, effort)?, evidence))
}

/// Every integer vector of the given L1 norm.
fn vectors_of_norm(rank: usize, norm: i64) -> Vec<Vec<i64>> {
    fn go(rank: usize, left: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() + 1 == rank {
            for x in if left == 0 { vec![0] } else { vec![left, -left] } {
                prefix.push(x);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for a in 0..=left {
            for x in if a == 0 { vec![0] } else { vec![a, -a] } {
                prefix.push(x);
                go(rank, left - a, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if rank > 0 {
        go(rank, norm, &mut Vec::new(), &mut out);
    }
    out
}

/// A nonzero integer vector `g` with `Σ_i g_i M_ij = 0` for all `j`.
fn left_kernel_vector(m: &[Vec<BigRational>]) -> Option<Vec<i64>> {
    let rows = m.len();
    if rows == 0 {
        return None;
    }
    let cols = m[0].len();
    // transpose: solve Mᵀ g = 0
    let mut a: Vec<Vec<BigRational>> = (0..cols).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..rows {
        let Some(p) = (r..cols).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let lead = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &lead;
        }
        for i in 0..cols {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..rows).find(|c| !pivots.contains(c))?;
    let mut v = vec![BigRational::zero(); rows];
    v[free] = BigRational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[row][free].clone();
    }
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter().map(|x| (x / &g).to_i64()).collect::<Option<Vec<_>>>().map(|mut v| {
        if v.iter().find(|x| **x != 0).is_some_and(|x| x.is_negative()) {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        v
    })
}

fn format_matrix(m: &[Vec<CircleValue>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|v| format!("{v}")).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// FC-center `⟨u⟩` with `C(u^k) = C(u)` for `k ≠ 0`: `u^k` is regular iff
/// `k·v_j ≡ 0` for the defects `v_j` of `u` against the centralizer
/// generators.
fn cyclic_condition(s: &Cocycle, fc: &Subgroup, u: &GroupElement, effort: u32) -> Result<KleppnerVerdict> {
    let group = s.group();
    let base = is_sigma_regular(s, u, effort)?;
    let desc = group.centralizer_description(u)?;
    let mut evidence = vec![format!("FC({}) = {}", group.name(), fc.label())];
    let mut defects = Vec::new();
    for h in &desc.generators {
        let d = s.regularity_defect(u, h)?;
        evidence.push(format!(
            "defect({}, {}) = {}",
            group.format_element(u),
            group.format_element(h),
            d
        ));
        defects.push(d);
    }
    if base.is_regular() {
        return Ok(fails(base, evidence));
    }
    if defects.iter().any(CircleValue::has_theta) {
        evidence.push("a defect involves theta, so no nonzero power of the generator is regular".into());
        return Ok(KleppnerVerdict {
            status: KleppnerStatus::Holds,
            evidence,
        });
    }
    let c = defects
        .iter()
        .fold(BigInt::one(), |acc, d| acc.lcm(d.rational_part().denom()))
        .to_i64()
        .ok_or_else(|| Error::InvalidCocycle("defect denominators overflow".into()))?;
    let witness = group.pow(u, c)?;
    let verdict = is_sigma_regular(s, &witness, effort)?;
    if !verdict.is_regular() || !verdict.class_size.is_finite() {
        return Err(Error::InternalInconsistency(format!(
            "predicted regular element {} failed re-verification",
            group.format_element(&witness)
        )));
    }
    Ok(fails(verdict, evidence))
}

/// Direct products of infinite groups: bounded scan of the FC-center.
fn product_condition(s: &Cocycle, effort: u32) -> Result<KleppnerVerdict> {
    const RADIUS: i64 = 3;
    const CAP: usize = 20_000;
    let group = s.group();
    let fc = fc_center(group, effort)?;
    if fc.is_uncertain() {
        return Ok(unknown("the FC-center could not be certified", Vec::new()));
    }
    if fc.is_trivial() {
        return Ok(KleppnerVerdict {
            status: KleppnerStatus::Holds,
            evidence: vec![format!("FC({}) = {{e}}", group.name())],
        });
    }
    let SubgroupKind::Product(parts) = fc.kind() else {
        return Ok(unknown("no decision procedure for this FC-center", Vec::new()));
    };
    let mut exhaustive = true;
    let mut lists: Vec<Vec<GroupElement>> = Vec::new();
    for p in parts {
        let f = p.ambient();
        let list = if let Some(els) = p.elements() {
            els
        } else {
            exhaustive = false;
            match (p.kind(), f.family()) {
                (SubgroupKind::Cyclic(u), _) => (-RADIUS..=RADIUS).map(|k| f.pow_raw(u, k)).collect(),
                (SubgroupKind::Whole, Family::FreeAbelian { rank }) => {
                    let mut out = vec![vec![]];
                    for _ in 0..*rank {
                        out = out
                            .into_iter()
                            .flat_map(|v: Vec<i64>| {
                                (-RADIUS..=RADIUS).map(move |x| [v.clone(), vec![x]].concat())
                            })
                            .collect();
                    }
                    out.into_iter().map(GroupElement::FreeAbelian).collect()
                }
                _ => return Ok(unknown("no enumeration of the FC-center", Vec::new())),
            }
        };
        lists.push(list);
    }
    let mut candidates: Vec<GroupElement> = vec![GroupElement::Product(Vec::new())];
    for list in &lists {
        let mut next = Vec::new();
        for c in &candidates {
            for x in list {
                let GroupElement::Product(mut v) = c.clone() else { unreachable!() };
                v.push(x.clone());
                next.push(GroupElement::Product(v));
                if next.len() > CAP {
                    return Ok(unknown("FC-center enumeration exceeds the cap", Vec::new()));
                }
            }
        }
        candidates = next;
    }
    candidates.sort_by_key(|g| g.shortlex_key());
    let mut undecided = false;
    for g in candidates.iter().filter(|g| !group.is_identity(g)) {
        let v = is_sigma_regular(s, g, effort)?;
        match v.status {
            Regularity::Regular if v.class_size.is_finite() => {
                return Ok(fails(v, vec![format!("scanned FC({}) in shortlex order", group.name())]))
            }
            Regularity::Unknown { .. } => undecided = true,
            _ => {}
        }
    }
    Ok(if exhaustive && !undecided {
        KleppnerVerdict {
            status: KleppnerStatus::Holds,
            evidence: vec![format!("FC({}) is finite and has no nontrivial regular element", group.name())],
        }
    } else {
        unknown(
            &format!("no regular element of FC(G) within radius {RADIUS}"),
            Vec::new(),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::Homomorphism;
    use crate::group::words::Syllable;
    use crate::group::Group;

    fn torus(q: CircleValue) -> Cocycle {
        let z = CircleValue::identity();
        Cocycle::bicharacter(&Group::free_abelian(2), vec![vec![z.clone(), z.clone()], vec![q, z]]).unwrap()
    }

    fn fa(v: &[i64]) -> GroupElement {
        GroupElement::FreeAbelian(v.to_vec())
    }

    #[test]
    fn torus_regularity() {
        let w = torus(CircleValue::theta());
        let v = is_sigma_regular(&w, &fa(&[1, 0]), 20).unwrap();
        assert!(matches!(v.status, Regularity::Irregular { ref witness, .. } if *witness == fa(&[0, 1])));
        let half = torus(CircleValue::from_fraction(1, 2));
        assert!(is_sigma_regular(&half, &fa(&[2, 0]), 20).unwrap().is_regular());
    }

    #[test]
    fn torus_kleppner_endpoints() {
        assert!(kleppner_condition(&torus(CircleValue::theta()), 20).unwrap().holds());
        for q in 2..=5 {
            let v = kleppner_condition(&torus(CircleValue::from_fraction(1, q)), 20).unwrap();
            match v.status {
                KleppnerStatus::Fails(w) => assert_eq!(w.element, fa(&[q, 0])),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn pauli_has_only_trivial_regular_class() {
        let classes = sigma_regular_classes(&Cocycle::pauli()).unwrap();
        assert_eq!(classes.len(), 1);
        assert!(kleppner_condition(&Cocycle::pauli(), 20).unwrap().holds());
    }

    #[test]
    fn baumslag_solitar_example() {
        for n in [2u32, 3] {
            let bs = Group::baumslag_solitar(n).unwrap();
            let f = Homomorphism::new(&bs, 2, vec![vec![1, 0], vec![0, 1]]).unwrap();
            let irr = Cocycle::pullback(&bs, f.clone(), torus(CircleValue::theta())).unwrap();
            assert!(kleppner_condition(&irr, 20).unwrap().holds());
            let rat = Cocycle::pullback(&bs, f, torus(CircleValue::from_fraction(1, 3))).unwrap();
            let v = kleppner_condition(&rat, 20).unwrap();
            let KleppnerStatus::Fails(w) = v.status else { panic!() };
            let expected = 3 / num_integer::gcd(3, n as i64);
            assert_eq!(
                w.element,
                GroupElement::BaumslagSolitar {
                    word: Vec::new(),
                    central: expected
                }
            );
        }
    }

    #[test]
    fn lamplighter_trivial_holds() {
        let l = Group::lamplighter();
        assert!(kleppner_condition(&Cocycle::trivial(&l), 20).unwrap().holds());
        let fp = Group::free_product(2).unwrap();
        let w = GroupElement::FreeProduct(vec![Syllable::A(1)]);
        assert!(is_sigma_regular(&Cocycle::trivial(&fp), &w, 20).unwrap().is_regular());
    }

    #[test]
    fn kernel_vector() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let m = vec![vec![r(1, 2), r(1, 1)], vec![r(1, 1), r(2, 1)]];
        assert_eq!(left_kernel_vector(&m), Some(vec![2, -1]));
        let id = vec![vec![r(1, 1), r(0, 1)], vec![r(0, 1), r(1, 1)]];
        assert_eq!(left_kernel_vector(&id), None);
    }
}
