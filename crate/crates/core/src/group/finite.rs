//! Finite groups given by a multiplication table.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Coordinates of a finite abelian group written as `Z_{m_1} × … × Z_{m_k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianCoordinates {
    pub moduli: Vec<u32>,
    /// `coords[i]` are the residues of element `i`.
    pub coords: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    identity: u32,
    names: Vec<String>,
    coordinates: Option<AbelianCoordinates>,
}

impl FiniteGroup {
    /// Validates a raw multiplication table: a Latin square with a two-sided
    /// identity, inverses and associativity (checked exhaustively).
    pub fn from_table(name: &str, table: Vec<Vec<u32>>, names: Option<Vec<String>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            let mut seen = vec![false; order];
            for &v in row {
                let v = v as usize;
                if v >= order || seen[v] {
                    return Err(Error::InvalidGroup(format!("row {i} is not a permutation")));
                }
                seen[v] = true;
            }
            flat.extend_from_slice(row);
        }
        for j in 0..order {
            let mut seen = vec![false; order];
            for i in 0..order {
                let v = flat[i * order + j] as usize;
                if seen[v] {
                    return Err(Error::InvalidGroup(format!("column {j} is not a permutation")));
                }
                seen[v] = true;
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| flat[e * order + g] as usize == g && flat[g * order + e] as usize == g))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))? as u32;
        for a in 0..order {
            for b in 0..order {
                let ab = flat[a * order + b] as usize;
                for c in 0..order {
                    let bc = flat[b * order + c] as usize;
                    if flat[ab * order + c] != flat[a * order + bc] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let mut inverses = vec![0u32; order];
        for (g, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..order)
                .find(|&h| flat[g * order + h] == identity)
                .expect("latin square has inverses") as u32;
        }
        let names = match names {
            Some(n) if n.len() == order => n,
            Some(n) => {
                return Err(Error::InvalidGroup(format!(
                    "{} element names for order {order}",
                    n.len()
                )))
            }
            None => (0..order).map(|i| format!("#{i}")).collect(),
        };
        Ok(FiniteGroup {
            name: name.to_string(),
            order,
            table: flat,
            inverses,
            identity,
            names,
            coordinates: None,
        })
    }

    fn from_law(
        name: String,
        order: usize,
        names: Vec<String>,
        law: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(law(a, b) as u32);
            }
        }
        let mut inverses = vec![0u32; order];
        for (g, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..order).find(|&h| table[g * order + h] == 0).unwrap_or(0) as u32;
        }
        FiniteGroup {
            name,
            order,
            table,
            inverses,
            identity: 0,
            names,
            coordinates: None,
        }
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let n = n as usize;
        let names = (0..n).map(|k| format!("{k}")).collect();
        let mut g = Self::from_law(format!("Z{n}"), n, names, |a, b| (a + b) % n);
        g.coordinates = Some(AbelianCoordinates {
            moduli: vec![n as u32],
            coords: (0..n).map(|k| vec![k as u32]).collect(),
        });
        Ok(g)
    }

    /// Dihedral group of order `2n`; element `r^k s^f` has index `k + n·f`.
    pub fn dihedral(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("dihedral group with n = 0".into()));
        }
        let n = n as usize;
        let names = (0..2 * n)
            .map(|i| {
                let (k, f) = (i % n, i / n);
                let r = match k {
                    0 => String::new(),
                    1 => "r".to_string(),
                    k => format!("r^{k}"),
                };
                let s = if f == 1 { "s" } else { "" };
                if k == 0 && f == 0 {
                    "e".to_string()
                } else {
                    format!("{r}{s}")
                }
            })
            .collect();
        Ok(Self::from_law(format!("D{n}"), 2 * n, names, |a, b| {
            let (k1, f1) = (a % n, a / n);
            let (k2, f2) = (b % n, b / n);
            let k = if f1 == 0 { k1 + k2 } else { k1 + n - k2 } % n;
            k + n * (f1 ^ f2)
        }))
    }

    /// Quaternion group; indices 0..8 are `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion() -> Self {
        // unit products: unit index 0=1,1=i,2=j,3=k; (sign, unit)
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::from_law("Q8".into(), 8, names, |a, b| {
            let (ua, sa) = (a / 2, a % 2 == 1);
            let (ub, sb) = (b / 2, b % 2 == 1);
            let (s, u) = UNIT[ua][ub];
            2 * u + usize::from(s ^ sa ^ sb)
        })
    }

    pub fn elementary_abelian(p: u32, k: u32) -> Result<Self> {
        let z = Self::cyclic(p)?;
        let mut g = Self::cyclic(1)?;
        for _ in 0..k {
            g = g.direct_product(&z)?;
        }
        g.name = format!("Z{p}^{k}");
        Ok(g)
    }

    /// Direct product with index `i·|other| + j`, so indices follow the
    /// lexicographic order of coordinate tuples.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<Self> {
        let order = self.order * other.order;
        if order > 1 << 16 {
            return Err(Error::GroupTooLarge { order, cap: 1 << 16 });
        }
        let m = other.order;
        let names = (0..order)
            .map(|i| {
                let (a, b) = (i / m, i % m);
                if self.order == 1 {
                    other.names[b].clone()
                } else {
                    format!("({},{})", strip_parens(&self.names[a]), other.names[b])
                }
            })
            .collect();
        let mut g = Self::from_law(format!("{}x{}", self.name, other.name), order, names, |x, y| {
            let (a1, b1) = (x / m, x % m);
            let (a2, b2) = (y / m, y % m);
            self.mul(a1 as u32, a2 as u32) as usize * m + other.mul(b1 as u32, b2 as u32) as usize
        });
        if self.order == 1 {
            g.name = other.name.clone();
        }
        g.identity = self.identity * m as u32 + other.identity;
        g.inverses = (0..order)
            .map(|i| self.inverses[i / m] * m as u32 + other.inverses[i % m])
            .collect();
        if let (Some(c1), Some(c2)) = (&self.coordinates, &other.coordinates) {
            let mut moduli = c1.moduli.clone();
            moduli.extend_from_slice(&c2.moduli);
            let coords = (0..order)
                .map(|i| {
                    let mut v = c1.coords[i / m].clone();
                    v.extend_from_slice(&c2.coords[i % m]);
                    v
                })
                .collect();
            g.coordinates = Some(AbelianCoordinates { moduli, coords });
            if self.order == 1 {
                g.coordinates = other.coordinates.clone();
            }
        }
        Ok(g)
    }

    pub(crate) fn set_name(&mut self, name: String) {
        self.name = name;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn element_name(&self, a: u32) -> &str {
        &self.names[a as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn coordinates(&self) -> Option<&AbelianCoordinates> {
        self.coordinates.as_ref()
    }

    pub fn table_rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// `h g h⁻¹`.
    pub fn conjugate(&self, g: u32, h: u32) -> u32 {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn commutes(&self, g: u32, h: u32) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32).all(|a| (0..self.order as u32).all(|b| self.commutes(a, b)))
    }

    pub fn conjugacy_class(&self, g: u32) -> Vec<u32> {
        let set: BTreeSet<u32> = (0..self.order as u32).map(|h| self.conjugate(g, h)).collect();
        set.into_iter().collect()
    }

    /// Conjugacy classes ordered by their least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in 0..self.order as u32 {
            if seen[g as usize] {
                continue;
            }
            let class = self.conjugacy_class(g);
            for &c in &class {
                seen[c as usize] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn centralizer(&self, g: u32) -> Vec<u32> {
        (0..self.order as u32).filter(|&h| self.commutes(g, h)).collect()
    }

    pub fn center(&self) -> Vec<u32> {
        (0..self.order as u32)
            .filter(|&g| (0..self.order as u32).all(|h| self.commutes(g, h)))
            .collect()
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: &[u32]) -> Vec<u32> {
        let mut set: BTreeSet<u32> = BTreeSet::new();
        set.insert(self.identity);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Greedy generating set: repeatedly adds the least element outside the
    /// subgroup generated so far.
    pub fn generating_set(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = self.generated_subgroup(&gens);
        while span.len() < self.order {
            let next = (0..self.order as u32)
                .find(|g| span.binary_search(g).is_err())
                .expect("span is proper");
            gens.push(next);
            span = self.generated_subgroup(&gens);
        }
        gens
    }

    pub fn is_subgroup(&self, elements: &[u32]) -> bool {
        let set: BTreeSet<u32> = elements.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&a| set.contains(&self.inv(a)) && set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, elements: &[u32]) -> bool {
        let set: BTreeSet<u32> = elements.iter().copied().collect();
        set.iter()
            .all(|&n| (0..self.order as u32).all(|h| set.contains(&self.conjugate(n, h))))
    }

    /// Quotient by a normal subgroup: returns the coset table and the map
    /// element ↦ coset index. Cosets are numbered by their least element.
    pub fn quotient(&self, normal: &[u32]) -> Result<(FiniteGroup, Vec<u32>)> {
        if !self.is_subgroup(normal) {
            return Err(Error::NotNormal("not a subgroup".into()));
        }
        if !self.is_normal(normal) {
            return Err(Error::NotNormal("not closed under conjugation".into()));
        }
        let mut coset_of = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order as u32 {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let idx = reps.len() as u32;
            for &n in normal {
                coset_of[self.mul(g, n) as usize] = idx;
            }
            reps.push(g);
        }
        let k = reps.len();
        let mut table = vec![vec![0u32; k]; k];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i][j] = coset_of[self.mul(a, b) as usize];
            }
        }
        let names = reps
            .iter()
            .map(|&r| if r == self.identity { "N".to_string() } else { format!("{}N", self.names[r as usize]) })
            .collect();
        let q = FiniteGroup::from_table(&format!("{}/N", self.name), table, Some(names))?;
        Ok((q, coset_of))
    }

    /// The subgroup given by `elements` as a group in its own right, with the
    /// embedding `new index ↦ old index`.
    pub fn subgroup_table(&self, elements: &[u32]) -> Result<(FiniteGroup, Vec<u32>)> {
        if !self.is_subgroup(elements) {
            return Err(Error::InvalidGroup("element set is not a subgroup".into()));
        }
        let mut elems: Vec<u32> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        // keep the identity first
        elems.retain(|&x| x != self.identity);
        elems.insert(0, self.identity);
        let pos = |x: u32| elems.iter().position(|&y| y == x).expect("closed") as u32;
        let table = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        let names = elems.iter().map(|&a| self.names[a as usize].clone()).collect();
        let g = FiniteGroup::from_table(&format!("H<{}", self.name), table, Some(names))?;
        Ok((g, elems))
    }
}

fn strip_parens(s: &str) -> &str {
    s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_reflection_inverts_rotation() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let (r, s) = (1, 4);
        assert_eq!(d4.conjugate(r, s), 3);
        assert_eq!(d4.element_name(3), "r^3");
        assert_eq!(d4.conjugacy_classes().len(), 5);
    }

    #[test]
    fn quaternion_relations() {
        let q = FiniteGroup::quaternion();
        // i·j = k, j·i = -k, i² = -1
        assert_eq!(q.mul(2, 4), 6);
        assert_eq!(q.mul(4, 2), 7);
        assert_eq!(q.mul(2, 2), 1);
        assert_eq!(q.centralizer(2), vec![0, 1, 2, 3]);
        assert!(FiniteGroup::from_table("q", q.table_rows(), None).is_ok());
    }

    #[test]
    fn product_coordinates_follow_index_order() {
        let g = FiniteGroup::elementary_abelian(2, 2).unwrap();
        let c = g.coordinates().unwrap();
        assert_eq!(c.moduli, vec![2, 2]);
        assert_eq!(c.coords[1], vec![0, 1]);
        assert_eq!(c.coords[2], vec![1, 0]);
        assert_eq!(g.element_name(2), "(1,0)");
    }

    #[test]
    fn rejects_non_group_tables() {
        assert!(FiniteGroup::from_table("x", vec![vec![0, 1], vec![0, 1]], None).is_err());
        // Latin square without associativity (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table("loop", loop5, None).is_err());
    }

    #[test]
    fn quotient_of_d4_by_center_is_klein() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let center = d4.center();
        assert_eq!(center, vec![0, 2]);
        let (q, _) = d4.quotient(&center).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_abelian());
        assert!(d4.quotient(&[0, 4]).is_err());
    }
}
