//! Finite semigroups as Cayley tables, congruences and quotients.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::CayleyGroup;
use crate::perm::{Partition, Permutation};

/// Square table check shared by the semigroup and solution constructors.
pub(crate) fn check_square(n: usize, table: &[usize], what: &str) -> Result<()> {
    if table.len() != n * n {
        return Err(Error::MalformedTable(format!(
            "{what}: expected {} entries, found {}",
            n * n,
            table.len()
        )));
    }
    if let Some(pos) = table.iter().position(|&v| v >= n) {
        return Err(Error::MalformedTable(format!(
            "{what}: entry ({}, {}) = {} is out of range",
            pos / n,
            pos % n,
            table[pos]
        )));
    }
    Ok(())
}

/// First triple (in lexicographic order) where `(x·y)·z != x·(y·z)`.
pub(crate) fn associativity_witness(n: usize, table: &[usize]) -> Option<(usize, usize, usize)> {
    let m = |a: usize, b: usize| table[a * n + b];
    for x in 0..n {
        for y in 0..n {
            let xy = m(x, y);
            for z in 0..n {
                if m(xy, z) != m(x, m(y, z)) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// An associative binary operation on `{0..n-1}`; entry `(x, y)` is `x·y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Semigroup {
    n: usize,
    table: Vec<usize>,
}

impl Semigroup {
    pub fn new(n: usize, table: Vec<usize>) -> Result<Self> {
        check_square(n, &table, "semigroup")?;
        if let Some((x, y, z)) = associativity_witness(n, &table) {
            return Err(Error::NotAssociative(x, y, z));
        }
        Ok(Semigroup { n, table })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedTable("table is not square".into()));
        }
        Semigroup::new(n, rows.concat())
    }

    pub(crate) fn from_table_unchecked(n: usize, table: Vec<usize>) -> Self {
        Semigroup { n, table }
    }

    pub fn left_zero(n: usize) -> Self {
        Semigroup {
            n,
            table: (0..n * n).map(|k| k / n.max(1)).collect(),
        }
    }

    /// `Z/n` under addition.
    pub fn cyclic_group(n: usize) -> Self {
        Semigroup::from_group(&CayleyGroup::cyclic(n))
    }

    pub fn from_group(g: &CayleyGroup) -> Self {
        Semigroup {
            n: g.order(),
            table: g.table().to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// `x·y·z = x·z·y` for all triples.
    pub fn is_weak_commutative(&self) -> bool {
        self.weak_commutativity_witness().is_none()
    }

    pub fn weak_commutativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.mul(self.mul(x, y), z) != self.mul(self.mul(x, z), y) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_left_zero(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.mul(x, y) == x))
    }

    /// `p(x·y) = p(x)·p(y)` for all pairs.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.n && self.is_endomorphism(p.images())
    }

    pub fn is_endomorphism(&self, f: &[usize]) -> bool {
        f.len() == self.n
            && f.iter().all(|&v| v < self.n)
            && (0..self.n).all(|x| (0..self.n).all(|y| f[self.mul(x, y)] == self.mul(f[x], f[y])))
    }

    pub fn is_subsemigroup(&self, members: &[bool]) -> bool {
        (0..self.n)
            .all(|x| !members[x] || (0..self.n).all(|y| !members[y] || members[self.mul(x, y)]))
    }

    /// Validates `parts` as a congruence of `self`.
    pub fn congruence(&self, parts: Partition) -> Result<Congruence> {
        Congruence::new(self, parts)
    }

    /// Cayley table on class ids (classes ordered by minimal element).
    pub fn quotient(&self, c: &Congruence) -> Semigroup {
        let k = c.parts.len();
        let mut table = vec![0; k * k];
        for (a, ca) in c.parts.classes().iter().enumerate() {
            for (b, cb) in c.parts.classes().iter().enumerate() {
                table[a * k + b] = c.parts.class_of(self.mul(ca[0], cb[0]));
            }
        }
        Semigroup { n: k, table }
    }

    /// Restriction to the members, re-indexed in increasing order.
    pub fn restrict(&self, members: &[usize]) -> Result<Semigroup> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in members.iter().enumerate() {
            pos[x] = i;
        }
        let k = members.len();
        let mut table = Vec::with_capacity(k * k);
        for &x in members {
            for &y in members {
                let v = pos[self.mul(x, y)];
                if v == usize::MAX {
                    return Err(Error::Precondition("subset is not closed".into()));
                }
                table.push(v);
            }
        }
        Ok(Semigroup { n: k, table })
    }
}

/// The left group `E × G`: `(e, f)·(e', f') = (e, f f')`, element `(e, f)` at
/// index `e·|G| + f`.
pub fn left_group(e_size: usize, g: &CayleyGroup) -> Result<Semigroup> {
    if e_size == 0 {
        return Err(Error::Precondition(
            "left-zero part must be non-empty".into(),
        ));
    }
    let k = g.order();
    let n = e_size * k;
    let mut table = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            table[x * n + y] = (x / k) * k + g.mul(x % k, y % k);
        }
    }
    Ok(Semigroup { n, table })
}

impl fmt::Display for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for x in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|y| self.mul(x, y).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Parses the semigroup file format: `n` on the first line, then `n` rows.
pub fn parse_semigroup(text: &str) -> Result<Semigroup> {
    let (n, rows) = crate::format::parse_sized_rows(text, 1)?;
    Semigroup::from_rows(&rows[..n]).map_err(|e| Error::Parse {
        line: 2,
        msg: e.to_string(),
    })
}

/// A product-compatible partition of a semigroup's carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    parts: Partition,
    quotient_left_zero: bool,
}

impl Congruence {
    pub fn new(s: &Semigroup, parts: Partition) -> Result<Self> {
        if parts.n() != s.n() {
            return Err(Error::MalformedPartition(format!(
                "partition of {} points for a semigroup of size {}",
                parts.n(),
                s.n()
            )));
        }
        // compatibility on each side separately implies full compatibility
        let n = s.n();
        for class in parts.classes() {
            let x1 = class[0];
            for &x2 in &class[1..] {
                for y in 0..n {
                    if parts.class_of(s.mul(x1, y)) != parts.class_of(s.mul(x2, y)) {
                        return Err(Error::NotACongruence(x1, x2, y, y));
                    }
                    if parts.class_of(s.mul(y, x1)) != parts.class_of(s.mul(y, x2)) {
                        return Err(Error::NotACongruence(y, y, x1, x2));
                    }
                }
            }
        }
        let quotient_left_zero =
            (0..n).all(|x| (0..n).all(|y| parts.class_of(s.mul(x, y)) == parts.class_of(x)));
        Ok(Congruence {
            parts,
            quotient_left_zero,
        })
    }

    pub fn parts(&self) -> &Partition {
        &self.parts
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.parts.class_of(x)
    }

    pub fn quotient_is_left_zero(&self) -> bool {
        self.quotient_left_zero
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_assoc_witness(rows: &[[usize; 2]; 2]) -> Option<(usize, usize, usize)> {
        let mut out = None;
        'o: for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    let lhs = rows[rows[x][y]][z];
                    let rhs = rows[x][rows[y][z]];
                    if lhs != rhs {
                        out = Some((x, y, z));
                        break 'o;
                    }
                }
            }
        }
        out
    }

    #[test]
    fn make_semigroup_examples() {
        assert!(Semigroup::new(5, Semigroup::left_zero(5).table().to_vec()).is_ok());
        assert!(Semigroup::from_rows(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).is_ok());
        let rows = [[0, 1], [0, 0]];
        let expected = brute_assoc_witness(&rows).unwrap();
        assert_eq!(expected, (1, 0, 1));
        assert_eq!(
            Semigroup::from_rows(&[vec![0, 1], vec![0, 0]]),
            Err(Error::NotAssociative(1, 0, 1))
        );
        assert!(Semigroup::from_rows(&[vec![0, 2], vec![0, 0]]).is_err());
    }

    #[test]
    fn predicates() {
        assert!(Semigroup::cyclic_group(4).is_weak_commutative());
        assert!(Semigroup::left_zero(4).is_weak_commutative());
        let s3 = crate::construct::GroupSpec::parse("C3:C2")
            .unwrap()
            .resolve()
            .unwrap();
        assert!(Semigroup::from_group(&s3)
            .weak_commutativity_witness()
            .is_some());
        assert!(Semigroup::left_zero(5).is_left_zero());
        assert!(!Semigroup::cyclic_group(2).is_left_zero());
    }

    #[test]
    fn automorphisms_of_z4() {
        let z4 = Semigroup::cyclic_group(4);
        let times3 = Permutation::new(vec![0, 3, 2, 1]).unwrap();
        let plus1 = Permutation::new(vec![1, 2, 3, 0]).unwrap();
        assert!(z4.is_automorphism(&Permutation::identity(4)));
        assert!(z4.is_automorphism(&times3));
        assert!(!z4.is_automorphism(&plus1));
        let lz = Semigroup::left_zero(4);
        assert!(lz.is_automorphism(&plus1));
    }

    #[test]
    fn congruences_and_quotients() {
        let z4 = Semigroup::cyclic_group(4);
        let single = z4.congruence(Partition::singletons(4)).unwrap();
        assert_eq!(z4.quotient(&single), z4);
        let whole = z4.congruence(Partition::whole(4)).unwrap();
        assert_eq!(z4.quotient(&whole).n(), 1);
        let mod2 = Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let c = z4.congruence(mod2).unwrap();
        assert!(!c.quotient_is_left_zero());
        assert_eq!(z4.quotient(&c), Semigroup::cyclic_group(2));
        let bad = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(z4.congruence(bad), Err(Error::NotACongruence(..))));
    }

    #[test]
    fn left_group_examples() {
        let c2 = CayleyGroup::cyclic(2);
        assert_eq!(left_group(1, &c2).unwrap(), Semigroup::cyclic_group(2));
        assert_eq!(
            left_group(2, &CayleyGroup::cyclic(1)).unwrap(),
            Semigroup::left_zero(2)
        );
        let lg = left_group(2, &c2).unwrap();
        assert!(lg.is_weak_commutative());
        assert!(!lg.is_left_zero());
        let by_first = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let c = lg.congruence(by_first).unwrap();
        assert!(c.quotient_is_left_zero());
        assert_eq!(lg.quotient(&c), Semigroup::left_zero(2));
        assert!(left_group(0, &c2).is_err());
    }

    #[test]
    fn left_group_weak_commutative_iff_abelian() {
        let s3 = crate::construct::GroupSpec::parse("C3:C2")
            .unwrap()
            .resolve()
            .unwrap();
        assert!(!left_group(2, &s3).unwrap().is_weak_commutative());
        let v4 = crate::construct::GroupSpec::parse("C2xC2")
            .unwrap()
            .resolve()
            .unwrap();
        assert!(left_group(3, &v4).unwrap().is_weak_commutative());
    }
}
