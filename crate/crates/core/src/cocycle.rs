//! Normalized 2-cocycles `σ: G × G → 𝕋` and constructions built on them.

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::circle::CircleValue;
use crate::error::{Error, Result};
use crate::group::{words, Family, FiniteGroup, Group, GroupElement};
use crate::subgroup::{split_index, Embedding, Subgroup};

/// Largest finite group that carries a dense cocycle table.
pub const TABLE_CAP: usize = 256;
/// Largest central extension `G^σ` that is built as a table.
pub const EXTENSION_CAP: usize = 512;

/// Homomorphism from a group to `Z^k`, given by the images of the family
/// generators (in the order of [`Group::named_generators`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: Group,
    rank: usize,
    images: Vec<Vec<i64>>,
}

impl Homomorphism {
    /// Checks the relations of the source family that constrain images in a
    /// torsion-free abelian group.
    pub fn new(source: &Group, rank: usize, images: Vec<Vec<i64>>) -> Result<Homomorphism> {
        let names: Vec<String> = source.named_generators().into_iter().map(|(n, _)| n).collect();
        if images.len() != names.len() {
            return Err(Error::InvalidCocycle(format!(
                "homomorphism needs {} generator images, got {}",
                names.len(),
                images.len()
            )));
        }
        if let Some(bad) = images.iter().position(|v| v.len() != rank) {
            return Err(Error::InvalidCocycle(format!(
                "image of {} has length {}, expected {rank}",
                names[bad],
                images[bad].len()
            )));
        }
        let h = Homomorphism {
            source: source.clone(),
            rank,
            images,
        };
        for (name, torsion) in h.torsion_generators() {
            let i = names.iter().position(|n| *n == name).expect("generator name");
            if h.images[i].iter().any(|&x| x != 0) {
                return Err(Error::InvalidCocycle(format!(
                    "generator {name} {torsion}, so its image in Z^{rank} must be 0"
                )));
            }
        }
        Ok(h)
    }

    /// Generators forced to map to zero, with the reason.
    fn torsion_generators(&self) -> Vec<(String, &'static str)> {
        fn collect(g: &Group, prefix: &str, out: &mut Vec<(String, &'static str)>) {
            match g.family() {
                Family::Finite(_) => {
                    for (n, _) in g.named_generators() {
                        out.push((format!("{prefix}{n}"), "has finite order"));
                    }
                }
                Family::InfiniteDihedral => {
                    out.push((format!("{prefix}t"), "is conjugate to its inverse"));
                    out.push((format!("{prefix}s"), "has finite order"));
                }
                Family::FreeProduct { .. } => out.push((format!("{prefix}b"), "has finite order")),
                Family::Lamplighter => out.push((format!("{prefix}l"), "has finite order")),
                Family::DirectProduct(fs) => {
                    for (i, f) in fs.iter().enumerate() {
                        collect(f, &format!("{prefix}{i}."), out);
                    }
                }
                _ => {}
            }
        }
        let mut out = Vec::new();
        collect(&self.source, "", &mut out);
        out
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Vec<i64>] {
        &self.images
    }

    fn combine(&self, coeffs: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.rank];
        for (img, &c) in self.images.iter().zip(coeffs) {
            for (o, x) in out.iter_mut().zip(img) {
                *o += c * x;
            }
        }
        out
    }

    pub fn eval(&self, g: &GroupElement) -> Result<Vec<i64>> {
        self.source.check(g)?;
        Ok(self.eval_raw(&self.source, g, 0))
    }

    /// Image of `g ∈ group`, where `group`'s generators start at `offset`.
    fn eval_raw(&self, group: &Group, g: &GroupElement, offset: usize) -> Vec<i64> {
        use GroupElement as E;
        let k = group.named_generators().len();
        let sub = Homomorphism {
            source: group.clone(),
            rank: self.rank,
            images: self.images[offset..offset + k].to_vec(),
        };
        match (group.family(), g) {
            (Family::Finite(_), _) => vec![0; self.rank],
            (Family::FreeAbelian { .. }, E::FreeAbelian(v)) => sub.combine(v),
            (Family::InfiniteDihedral, E::Dihedral { shift, flip }) => sub.combine(&[*shift, i64::from(*flip)]),
            (Family::Heisenberg3, E::Heisenberg([x, y, _])) => sub.combine(&[*x, *y]),
            (Family::BaumslagSolitar { n }, E::BaumslagSolitar { word, central }) => {
                let (a, b) = words::exponent_sums(word);
                sub.combine(&[a, b + i64::from(*n) * central])
            }
            (Family::FreeProduct { .. }, E::FreeProduct(word)) => {
                let (a, b) = words::exponent_sums(word);
                sub.combine(&[a, b])
            }
            (Family::Lamplighter, E::Lamplighter { lamps, shift }) => sub.combine(&[*shift, lamps.len() as i64]),
            (Family::DirectProduct(fs), E::Product(parts)) => {
                let mut out = vec![0; self.rank];
                let mut off = offset;
                for (f, p) in fs.iter().zip(parts) {
                    let v = self.eval_raw(f, p, off);
                    for (o, x) in out.iter_mut().zip(v) {
                        *o += x;
                    }
                    off += f.named_generators().len();
                }
                out
            }
            _ => unreachable!("checked membership"),
        }
    }

    /// `f ∘ e` for an embedding of `sub` into the source.
    fn compose(&self, sub: &Group, embedding: &Embedding) -> Result<Homomorphism> {
        let mut images = Vec::new();
        for g in sub.generators() {
            images.push(self.eval(&embedding.apply(&self.source, &g)?)?);
        }
        Homomorphism::new(sub, self.rank, images)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocycleKind {
    Trivial,
    /// Dense `|G|×|G|` values, row-major by element index.
    Table(Vec<CircleValue>),
    /// `σ(m,n) = exp(2πi mᵀΘn)` on `Z^k`, or on a finite abelian group
    /// through its coordinates.
    Bicharacter(Vec<Vec<CircleValue>>),
    /// `σ(x,y) = inner(f(x), f(y))` with `inner` a cocycle on `Z^k`.
    Pullback { hom: Homomorphism, inner: Box<Cocycle> },
    /// Componentwise product on a direct product of infinite groups.
    Product(Vec<Cocycle>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    group: Group,
    kind: CocycleKind,
}

/// `D^σ`, the subgroup of 𝕋 generated by the values of σ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DSigmaDesc {
    FiniteCyclic(u64),
    InfiniteWithTheta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub exhaustive: bool,
    pub checked_triples: u64,
    pub violation_count: u64,
    /// The first few violating triples `(g,h,k)`.
    pub violations: Vec<[GroupElement; 3]>,
    pub normalization_failures: Vec<GroupElement>,
    pub homomorphism_failures: u64,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation_count == 0 && self.normalization_failures.is_empty() && self.homomorphism_failures == 0
    }
}

const REPORTED_VIOLATIONS: usize = 16;

fn bicharacter_value(theta: &[Vec<CircleValue>], m: &[i64], n: &[i64]) -> Result<CircleValue> {
    let mut acc = CircleValue::identity();
    for (i, row) in theta.iter().enumerate() {
        if m[i] == 0 {
            continue;
        }
        for (j, t) in row.iter().enumerate() {
            let e = m[i] * n[j];
            if e != 0 && !t.is_identity() {
                acc = acc.mul(&t.pow(e))?;
            }
        }
    }
    Ok(acc)
}

fn finite_coords(t: &FiniteGroup, g: &GroupElement) -> Vec<i64> {
    match g {
        GroupElement::Finite(i) => t.coordinates().expect("coordinates checked at construction").coords[*i as usize]
            .iter()
            .map(|&c| i64::from(c))
            .collect(),
        _ => unreachable!("checked membership"),
    }
}

fn index_of(g: &GroupElement) -> usize {
    match g {
        GroupElement::Finite(i) => *i as usize,
        _ => unreachable!("finite group element"),
    }
}

impl Cocycle {
    pub fn trivial(group: &Group) -> Cocycle {
        Cocycle {
            group: group.clone(),
            kind: CocycleKind::Trivial,
        }
    }

    /// Dense table on a finite group; `values[g][h] = σ(g,h)`.
    pub fn table(group: &Group, values: Vec<Vec<CircleValue>>) -> Result<Cocycle> {
        let order = group.order().ok_or(Error::InfiniteGroup)?;
        if order > TABLE_CAP {
            return Err(Error::GroupTooLarge { order, cap: TABLE_CAP });
        }
        if values.len() != order || values.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidCocycle(format!("table must be {order}x{order}")));
        }
        Ok(Cocycle {
            group: group.clone(),
            kind: CocycleKind::Table(values.into_iter().flatten().collect()),
        })
    }

    /// Bicharacter on `Z^k`, or on a finite abelian group with coordinates
    /// when every entry is compatible with the moduli.
    pub fn bicharacter(group: &Group, theta: Vec<Vec<CircleValue>>) -> Result<Cocycle> {
        let dim = match group.family() {
            Family::FreeAbelian { rank } => *rank,
            Family::Finite(t) => {
                let coords = t.coordinates().ok_or_else(|| {
                    Error::InvalidCocycle(format!("{} has no abelian coordinates for a bicharacter", t.name()))
                })?;
                let k = coords.moduli.len();
                if theta.len() == k && theta.iter().all(|r| r.len() == k) {
                    for i in 0..k {
                        for j in 0..k {
                            let t_ij = &theta[i][j];
                            if t_ij.has_theta() {
                                return Err(Error::InvalidCocycle(
                                    "a bicharacter on a finite group cannot involve theta".into(),
                                ));
                            }
                            let ni = i64::from(coords.moduli[i]);
                            let nj = i64::from(coords.moduli[j]);
                            if !t_ij.pow(ni).is_identity() || !t_ij.pow(nj).is_identity() {
                                return Err(Error::InvalidCocycle(format!(
                                    "entry ({i},{j}) = {t_ij} is not compatible with Z_{ni} x Z_{nj}"
                                )));
                            }
                        }
                    }
                }
                k
            }
            _ => {
                return Err(Error::InvalidCocycle(format!(
                    "bicharacters are defined on free abelian or finite abelian groups, not {}",
                    group.name()
                )))
            }
        };
        if theta.len() != dim || theta.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidCocycle(format!("theta matrix must be {dim}x{dim}")));
        }
        let mut id: Option<&str> = None;
        for v in theta.iter().flatten() {
            if let Some(x) = v.theta_id() {
                match id {
                    Some(y) if y != x => {
                        return Err(Error::InvalidCocycle(format!(
                            "two formal parameters {y} and {x}; only one is supported"
                        )))
                    }
                    _ => id = Some(x),
                }
            }
        }
        Ok(Cocycle {
            group: group.clone(),
            kind: CocycleKind::Bicharacter(theta),
        })
    }

    /// `σ(x,y) = inner(f(x), f(y))` for `f: G → Z^k`.
    pub fn pullback(group: &Group, hom: Homomorphism, inner: Cocycle) -> Result<Cocycle> {
        if hom.source() != group {
            return Err(Error::InvalidCocycle("homomorphism has a different source".into()));
        }
        if *inner.group() != Group::free_abelian(hom.rank()) {
            return Err(Error::InvalidCocycle(format!(
                "inner cocycle must live on Z^{}, found {}",
                hom.rank(),
                inner.group().name()
            )));
        }
        if group.is_finite() {
            // every homomorphism from a finite group to Z^k is zero
            return Ok(Cocycle::trivial(group));
        }
        Ok(Cocycle {
            group: group.clone(),
            kind: CocycleKind::Pullback {
                hom,
                inner: Box::new(inner),
            },
        })
    }

    /// Pullback along a homomorphism between finite groups, given by the
    /// images of the generators of `group` in `inner.group()`. The map is
    /// extended and checked exhaustively; the result is stored as a table.
    pub fn pullback_finite(group: &Group, images: Vec<GroupElement>, inner: &Cocycle) -> Result<Cocycle> {
        let src = group.as_finite().ok_or(Error::InfiniteGroup)?;
        let target = inner.group();
        let tgt = target.as_finite().ok_or(Error::InfiniteGroup)?;
        let gens = group.generators();
        if images.len() != gens.len() {
            return Err(Error::InvalidCocycle(format!(
                "homomorphism needs {} generator images, got {}",
                gens.len(),
                images.len()
            )));
        }
        for x in &images {
            target.check(x)?;
        }
        let mut map: Vec<Option<u32>> = vec![None; src.order()];
        map[src.identity() as usize] = Some(tgt.identity());
        let mut queue = VecDeque::from([src.identity()]);
        while let Some(x) = queue.pop_front() {
            let fx = map[x as usize].expect("visited");
            for (g, img) in gens.iter().zip(&images) {
                let (g, img) = (index_of(g) as u32, index_of(img) as u32);
                let y = src.mul(x, g);
                let fy = tgt.mul(fx, img);
                match map[y as usize] {
                    None => {
                        map[y as usize] = Some(fy);
                        queue.push_back(y);
                    }
                    Some(prev) if prev != fy => {
                        return Err(Error::InvalidCocycle("generator images do not define a homomorphism".into()))
                    }
                    Some(_) => {}
                }
            }
        }
        let map: Vec<u32> = map.into_iter().map(|x| x.expect("generators generate")).collect();
        for a in 0..src.order() as u32 {
            for b in 0..src.order() as u32 {
                if map[src.mul(a, b) as usize] != tgt.mul(map[a as usize], map[b as usize]) {
                    return Err(Error::InvalidCocycle("generator images do not define a homomorphism".into()));
                }
            }
        }
        let n = src.order();
        let mut values = vec![vec![CircleValue::identity(); n]; n];
        for (a, row) in values.iter_mut().enumerate() {
            for (b, v) in row.iter_mut().enumerate() {
                *v = inner.eval(
                    &GroupElement::Finite(map[a]),
                    &GroupElement::Finite(map[b]),
                )?;
            }
        }
        Cocycle::table(group, values)
    }

    /// Product of cocycles on the factors of a direct product.
    pub fn product(group: &Group, factors: Vec<Cocycle>) -> Result<Cocycle> {
        match group.family() {
            Family::DirectProduct(fs) => {
                if fs.len() != factors.len() || fs.iter().zip(&factors).any(|(f, c)| f != c.group()) {
                    return Err(Error::InvalidCocycle("factor cocycles do not match the factors".into()));
                }
                Ok(Cocycle {
                    group: group.clone(),
                    kind: CocycleKind::Product(factors),
                })
            }
            Family::Finite(t) => {
                let orders: Vec<usize> = factors
                    .iter()
                    .map(|c| c.group().order().ok_or(Error::InfiniteGroup))
                    .collect::<Result<_>>()?;
                if orders.iter().product::<usize>() != t.order() {
                    return Err(Error::InvalidCocycle("factor orders do not multiply to |G|".into()));
                }
                let n = t.order();
                let mut values = vec![vec![CircleValue::identity(); n]; n];
                for (a, row) in values.iter_mut().enumerate() {
                    let da = split_index(a, &orders);
                    for (b, v) in row.iter_mut().enumerate() {
                        let db = split_index(b, &orders);
                        let mut acc = CircleValue::identity();
                        for ((c, &x), &y) in factors.iter().zip(&da).zip(&db) {
                            acc = acc.mul(&c.eval(&GroupElement::Finite(x as u32), &GroupElement::Finite(y as u32))?)?;
                        }
                        *v = acc;
                    }
                }
                Cocycle::table(group, values)
            }
            _ => Err(Error::InvalidCocycle(format!("{} is not a direct product", group.name()))),
        }
    }

    /// The Pauli cocycle on `Z_2 × Z_2`: the bicharacter with `Θ = [[0,0],[1/2,0]]`.
    pub fn pauli() -> Cocycle {
        let g = Group::elementary_abelian(2, 2).expect("Z2^2");
        let half = CircleValue::from_fraction(1, 2);
        Cocycle::bicharacter(
            &g,
            vec![
                vec![CircleValue::identity(), CircleValue::identity()],
                vec![half, CircleValue::identity()],
            ],
        )
        .expect("valid bicharacter")
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn kind(&self) -> &CocycleKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            CocycleKind::Trivial => "trivial",
            CocycleKind::Table(_) => "table",
            CocycleKind::Bicharacter(_) => "bicharacter",
            CocycleKind::Pullback { .. } => "pullback",
            CocycleKind::Product(_) => "product",
        }
    }

    pub fn eval(&self, g: &GroupElement, h: &GroupElement) -> Result<CircleValue> {
        self.group.check(g)?;
        self.group.check(h)?;
        self.eval_raw(g, h)
    }

    fn eval_raw(&self, g: &GroupElement, h: &GroupElement) -> Result<CircleValue> {
        match &self.kind {
            CocycleKind::Trivial => Ok(CircleValue::identity()),
            CocycleKind::Table(values) => {
                let n = self.group.order().expect("finite");
                Ok(values[index_of(g) * n + index_of(h)].clone())
            }
            CocycleKind::Bicharacter(theta) => match (self.group.family(), g, h) {
                (Family::FreeAbelian { .. }, GroupElement::FreeAbelian(m), GroupElement::FreeAbelian(n)) => {
                    bicharacter_value(theta, m, n)
                }
                (Family::Finite(t), _, _) => bicharacter_value(theta, &finite_coords(t, g), &finite_coords(t, h)),
                _ => unreachable!("checked membership"),
            },
            CocycleKind::Pullback { hom, inner } => {
                let fg = GroupElement::FreeAbelian(hom.eval_raw(&self.group, g, 0));
                let fh = GroupElement::FreeAbelian(hom.eval_raw(&self.group, h, 0));
                inner.eval_raw(&fg, &fh)
            }
            CocycleKind::Product(factors) => match (g, h) {
                (GroupElement::Product(gs), GroupElement::Product(hs)) => {
                    let mut acc = CircleValue::identity();
                    for ((c, x), y) in factors.iter().zip(gs).zip(hs) {
                        acc = acc.mul(&c.eval_raw(x, y)?)?;
                    }
                    Ok(acc)
                }
                _ => unreachable!("checked membership"),
            },
        }
    }

    /// Dense table of a cocycle on a finite group.
    pub fn to_table(&self) -> Result<Vec<Vec<CircleValue>>> {
        let n = self.group.order().ok_or(Error::InfiniteGroup)?;
        if n > TABLE_CAP {
            return Err(Error::GroupTooLarge { order: n, cap: TABLE_CAP });
        }
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| self.eval_raw(&GroupElement::Finite(a as u32), &GroupElement::Finite(b as u32)))
                    .collect()
            })
            .collect()
    }

    /// Values on pairs of generators, which determine a cocycle that is
    /// bimultiplicative (bicharacters and their pullbacks).
    fn generator_values(&self) -> Result<Vec<CircleValue>> {
        let gens = self.group.generators();
        let mut out = Vec::new();
        for a in &gens {
            for b in &gens {
                out.push(self.eval_raw(a, b)?);
            }
        }
        Ok(out)
    }

    /// Exact test for `σ ≡ 1`.
    pub fn is_identically_trivial(&self) -> Result<bool> {
        Ok(match &self.kind {
            CocycleKind::Trivial => true,
            CocycleKind::Table(values) => values.iter().all(CircleValue::is_identity),
            CocycleKind::Bicharacter(theta) => {
                if self.group.is_finite() {
                    self.to_table()?.iter().flatten().all(CircleValue::is_identity)
                } else {
                    theta.iter().flatten().all(CircleValue::is_identity)
                }
            }
            CocycleKind::Pullback { .. } => self.generator_values()?.iter().all(CircleValue::is_identity),
            CocycleKind::Product(fs) => {
                let mut all = true;
                for f in fs {
                    all &= f.is_identically_trivial()?;
                }
                all
            }
        })
    }

    /// Checks normalization and the cocycle identity
    /// `σ(g,h)σ(gh,k) = σ(h,k)σ(g,hk)`.
    pub fn validate(&self, mode: ValidationMode) -> Result<ValidationReport> {
        let mut report = ValidationReport {
            exhaustive: matches!(mode, ValidationMode::Exhaustive),
            checked_triples: 0,
            violation_count: 0,
            violations: Vec::new(),
            normalization_failures: Vec::new(),
            homomorphism_failures: 0,
        };
        let e = self.group.identity();
        match mode {
            ValidationMode::Exhaustive => {
                let n = self.group.order().ok_or(Error::InfiniteGroup)?;
                let t = self.group.as_finite().expect("finite");
                let table = self.to_table()?;
                for (g, row) in table.iter().enumerate() {
                    if !row[t.identity() as usize].is_identity() || !table[t.identity() as usize][g].is_identity() {
                        report.normalization_failures.push(GroupElement::Finite(g as u32));
                    }
                }
                match integer_table(&table) {
                    Some((den, ints)) => {
                        for g in 0..n {
                            for h in 0..n {
                                let gh = t.mul(g as u32, h as u32) as usize;
                                for k in 0..n {
                                    let hk = t.mul(h as u32, k as u32) as usize;
                                    let lhs = (ints[g * n + h] + ints[gh * n + k]) % den;
                                    let rhs = (ints[h * n + k] + ints[g * n + hk]) % den;
                                    if lhs != rhs {
                                        report.record([g, h, k].map(|x| GroupElement::Finite(x as u32)));
                                    }
                                }
                            }
                        }
                    }
                    None => {
                        for g in 0..n {
                            for h in 0..n {
                                let gh = t.mul(g as u32, h as u32) as usize;
                                for k in 0..n {
                                    let hk = t.mul(h as u32, k as u32) as usize;
                                    let lhs = table[g][h].mul(&table[gh][k])?;
                                    let rhs = table[h][k].mul(&table[g][hk])?;
                                    if lhs != rhs {
                                        report.record([g, h, k].map(|x| GroupElement::Finite(x as u32)));
                                    }
                                }
                            }
                        }
                    }
                }
                report.checked_triples = (n as u64).pow(3);
            }
            ValidationMode::Sampled { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..count {
                    let g = self.group.sample(&mut rng, 3);
                    let h = self.group.sample(&mut rng, 3);
                    let k = self.group.sample(&mut rng, 3);
                    if (!self.eval_raw(&g, &e)?.is_identity() || !self.eval_raw(&e, &g)?.is_identity())
                        && !report.normalization_failures.contains(&g)
                    {
                        report.normalization_failures.push(g.clone());
                    }
                    let gh = self.group.mul_raw(&g, &h);
                    let hk = self.group.mul_raw(&h, &k);
                    let lhs = self.eval_raw(&g, &h)?.mul(&self.eval_raw(&gh, &k)?)?;
                    let rhs = self.eval_raw(&h, &k)?.mul(&self.eval_raw(&g, &hk)?)?;
                    if lhs != rhs {
                        report.record([g.clone(), h.clone(), k]);
                    }
                    report.homomorphism_failures += self.hom_failures(&g, &h);
                    report.checked_triples += 1;
                }
            }
        }
        Ok(report)
    }

    fn hom_failures(&self, g: &GroupElement, h: &GroupElement) -> u64 {
        match &self.kind {
            CocycleKind::Pullback { hom, .. } => {
                let gh = self.group.mul_raw(g, h);
                let fg = hom.eval_raw(&self.group, g, 0);
                let fh = hom.eval_raw(&self.group, h, 0);
                let sum: Vec<i64> = fg.iter().zip(&fh).map(|(a, b)| a + b).collect();
                u64::from(hom.eval_raw(&self.group, &gh, 0) != sum)
            }
            CocycleKind::Product(fs) => match (g, h) {
                (GroupElement::Product(gs), GroupElement::Product(hs)) => {
                    fs.iter().zip(gs).zip(hs).map(|((f, x), y)| f.hom_failures(x, y)).sum()
                }
                _ => 0,
            },
            _ => 0,
        }
    }

    /// `σ̃(g,h) = σ(g,h) · conj σ(ghg⁻¹, g)`.
    pub fn sigma_tilde(&self, g: &GroupElement, h: &GroupElement) -> Result<CircleValue> {
        self.group.check(g)?;
        self.group.check(h)?;
        let c = self.group.conj_raw(h, g);
        self.eval_raw(g, h)?.div(&self.eval_raw(&c, g)?).map_err(Error::from)
    }

    /// `σ(g,h) · σ(h,g)⁻¹` for commuting `g, h`.
    pub fn regularity_defect(&self, g: &GroupElement, h: &GroupElement) -> Result<CircleValue> {
        if !self.group.commutes(g, h)? {
            return Err(Error::NotCommuting);
        }
        self.eval_raw(g, h)?.div(&self.eval_raw(h, g)?).map_err(Error::from)
    }

    /// The restriction `σ_H` as a cocycle on `H` viewed as a group.
    pub fn restrict(&self, h: &Subgroup) -> Result<Cocycle> {
        if *h.ambient() != self.group {
            return Err(Error::UnsupportedSubgroup("subgroup of a different group".into()));
        }
        let (sub, embedding) = h.as_group()?;
        self.restrict_via(&sub, &embedding)
    }

    fn restrict_via(&self, sub: &Group, embedding: &Embedding) -> Result<Cocycle> {
        if matches!(self.kind, CocycleKind::Trivial) {
            return Ok(Cocycle::trivial(sub));
        }
        if *embedding == Embedding::Identity {
            return Ok(self.clone());
        }
        let restricted = if let Some(n) = sub.order() {
            if n > TABLE_CAP {
                return Err(Error::GroupTooLarge { order: n, cap: TABLE_CAP });
            }
            let images: Vec<GroupElement> = (0..n as u32)
                .map(|i| embedding.apply(&self.group, &GroupElement::Finite(i)))
                .collect::<Result<_>>()?;
            let mut values = vec![vec![CircleValue::identity(); n]; n];
            for (a, row) in values.iter_mut().enumerate() {
                for (b, v) in row.iter_mut().enumerate() {
                    *v = self.eval_raw(&images[a], &images[b])?;
                }
            }
            Cocycle::table(sub, values)?
        } else {
            match (&self.kind, embedding) {
                (CocycleKind::Bicharacter(_) | CocycleKind::Pullback { .. }, Embedding::Lattice(basis)) => {
                    let theta = basis
                        .iter()
                        .map(|a| basis.iter().map(|b| self.eval_raw(a, b)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?;
                    Cocycle::bicharacter(sub, theta)?
                }
                (CocycleKind::Pullback { hom, inner }, _) => Cocycle {
                    group: sub.clone(),
                    kind: CocycleKind::Pullback {
                        hom: hom.compose(sub, embedding)?,
                        inner: inner.clone(),
                    },
                },
                (CocycleKind::Product(fs), Embedding::Product { parts, flat_orders: None }) => {
                    let Family::DirectProduct(sub_factors) = sub.family() else {
                        return Err(Error::UnsupportedSubgroup("product embedding into a non-product".into()));
                    };
                    let mut out = Vec::with_capacity(fs.len());
                    for ((f, s), e) in fs.iter().zip(sub_factors).zip(parts) {
                        out.push(f.restrict_via(s, e)?);
                    }
                    Cocycle::product(sub, out)?
                }
                _ => {
                    return Err(Error::UnsupportedSubgroup(format!(
                        "cannot restrict a {} cocycle along this embedding",
                        self.kind_name()
                    )))
                }
            }
        };
        Ok(if restricted.is_identically_trivial()? {
            Cocycle::trivial(sub)
        } else {
            restricted
        })
    }

    /// Describes the subgroup of 𝕋 generated by the values of σ.
    pub fn d_sigma(&self) -> Result<DSigmaDesc> {
        let values: Vec<CircleValue> = match &self.kind {
            CocycleKind::Trivial => Vec::new(),
            _ if self.group.is_finite() => self.to_table()?.into_iter().flatten().collect(),
            CocycleKind::Bicharacter(theta) => theta.iter().flatten().cloned().collect(),
            CocycleKind::Pullback { .. } => self.generator_values()?,
            CocycleKind::Product(fs) => {
                let mut m = BigInt::one();
                for f in fs {
                    match f.d_sigma()? {
                        DSigmaDesc::InfiniteWithTheta => return Ok(DSigmaDesc::InfiniteWithTheta),
                        DSigmaDesc::FiniteCyclic(k) => m = m.lcm(&BigInt::from(k)),
                    }
                }
                return m
                    .to_u64()
                    .map(DSigmaDesc::FiniteCyclic)
                    .ok_or_else(|| Error::InvalidCocycle("root-of-unity order overflows".into()));
            }
            CocycleKind::Table(_) => unreachable!("tables live on finite groups"),
        };
        if values.iter().any(CircleValue::has_theta) {
            return Ok(DSigmaDesc::InfiniteWithTheta);
        }
        let m = values
            .iter()
            .map(|v| v.rational_part().denom().clone())
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        m.to_u64()
            .map(DSigmaDesc::FiniteCyclic)
            .ok_or_else(|| Error::InvalidCocycle("root-of-unity order overflows".into()))
    }

    /// The central extension `G^σ` on pairs `(g, k)`, `k ∈ Z_m` standing for
    /// `exp(2πi k/m)`, with `(g,k)(h,l) = (gh, k + l + m·σ(g,h))`. Element
    /// `(g,k)` has index `g·m + k`.
    pub fn g_sigma_extension(&self) -> Result<(Group, u64)> {
        let t = self.group.as_finite().ok_or(Error::InfiniteGroup)?;
        let m = match self.d_sigma()? {
            DSigmaDesc::FiniteCyclic(m) => m,
            DSigmaDesc::InfiniteWithTheta => return Err(Error::InfiniteDSigma),
        };
        let n = t.order();
        let order = n * m as usize;
        if order > EXTENSION_CAP {
            return Err(Error::GroupTooLarge {
                order,
                cap: EXTENSION_CAP,
            });
        }
        let table = self.to_table()?;
        let m_big = BigInt::from(m);
        let mut steps = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                let q = table[a][b].rational_part() * num_rational::BigRational::from_integer(m_big.clone());
                debug_assert!(q.is_integer());
                steps[a * n + b] = q.to_integer().to_usize().expect("residue below m");
            }
        }
        let m = m as usize;
        let mut rows = vec![vec![0u32; order]; order];
        for (x, row) in rows.iter_mut().enumerate() {
            let (g, k) = (x / m, x % m);
            for (y, v) in row.iter_mut().enumerate() {
                let (h, l) = (y / m, y % m);
                let gh = t.mul(g as u32, h as u32) as usize;
                *v = (gh * m + (k + l + steps[g * n + h]) % m) as u32;
            }
        }
        let names = (0..order)
            .map(|x| format!("({},{})", t.element_name((x / m) as u32), x % m))
            .collect();
        let name = format!("{}^sigma", t.name());
        let ext = FiniteGroup::from_table(&name, rows, Some(names))?;
        Ok((Group::finite(ext), m as u64))
    }
}

impl ValidationReport {
    fn record(&mut self, triple: [GroupElement; 3]) {
        self.violation_count += 1;
        if self.violations.len() < REPORTED_VIOLATIONS {
            self.violations.push(triple);
        }
    }
}

/// Rational tables as residues modulo a common denominator.
fn integer_table(table: &[Vec<CircleValue>]) -> Option<(u64, Vec<u64>)> {
    let mut den = BigInt::one();
    for v in table.iter().flatten() {
        if v.has_theta() {
            return None;
        }
        den = den.lcm(v.rational_part().denom());
    }
    let d = den.to_u64().filter(|&d| d < 1 << 31)?;
    let ints = table
        .iter()
        .flatten()
        .map(|v| {
            let q = v.rational_part();
            (q.numer() * (&den / q.denom())).to_u64().expect("residue below denominator")
        })
        .collect();
    Some((d, ints))
}
