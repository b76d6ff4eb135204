//! Finite abstract groups given by a multiplication table.

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// A finite group on the ids `0..order`, stored as its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl CayleyGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::MalformedTable(format!(
                "expected a non-empty {order}x{order} table"
            )));
        }
        if table.iter().any(|&v| v >= order) {
            return Err(Error::MalformedTable("entry out of range".into()));
        }
        let m = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| Error::MalformedTable("no identity element".into()))?;
        for a in 0..order {
            if !(0..order).any(|b| m(a, b) == identity) {
                return Err(Error::MalformedTable(format!("element {a} has no inverse")));
            }
        }
        Ok(CayleyGroup::from_table_unchecked(order, table))
    }

    pub(crate) fn from_table_unchecked(order: usize, table: Vec<usize>) -> Self {
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e * order + a] == a))
            .expect("group table without identity");
        let inverses = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| table[a * order + b] == identity)
                    .expect("group table without inverse")
            })
            .collect();
        CayleyGroup {
            order,
            table,
            identity,
            inverses,
        }
    }

    /// Cyclic group `Z/n` with element `k` the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        CayleyGroup::from_table_unchecked(n, table)
    }

    /// Direct product; element `(a, b)` has id `a * |other| + b`.
    pub fn direct_product(&self, other: &CayleyGroup) -> Self {
        let (n1, n2) = (self.order, other.order);
        let n = n1 * n2;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let a = self.mul(x / n2, y / n2);
                let b = other.mul(x % n2, y % n2);
                table[x * n + y] = a * n2 + b;
            }
        }
        CayleyGroup::from_table_unchecked(n, table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders; an isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Every non-identity element has order 2.
    pub fn is_elementary_abelian_2(&self) -> bool {
        (0..self.order).all(|a| self.mul(a, a) == self.identity)
    }

    /// The opposite group: `a ∘ b := b · a`, on the same ids.
    pub fn opposite(&self) -> Self {
        let n = self.order;
        let table = (0..n * n).map(|k| self.mul(k % n, k / n)).collect();
        CayleyGroup::from_table_unchecked(n, table)
    }

    /// Left translation `h -> g h`.
    pub fn left_translation(&self, g: usize) -> Permutation {
        Permutation::from_images_unchecked((0..self.order).map(|h| self.mul(g, h)).collect())
    }

    /// Left regular representation; element `g` acts as `h -> g h`.
    pub fn regular_representation(&self) -> PermGroup {
        let gens: Vec<Permutation> = self
            .generating_set()
            .into_iter()
            .map(|g| self.left_translation(g))
            .collect();
        PermGroup::generate(self.order, &gens).expect("degrees agree")
    }

    /// Subgroup generated by `gens`, as a membership mask.
    fn span(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    stack.push(y);
                }
            }
        }
        inside
    }

    /// A small generating set, built greedily from elements of largest order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut candidates: Vec<usize> = (0..self.order).collect();
        candidates.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut inside = self.span(&gens);
        for a in candidates {
            if inside.iter().all(|&b| b) {
                break;
            }
            if !inside[a] {
                gens.push(a);
                inside = self.span(&gens);
            }
        }
        gens
    }

    pub fn is_isomorphism(&self, map: &[usize], other: &CayleyGroup) -> bool {
        if map.len() != self.order || other.order != self.order {
            return false;
        }
        let mut hit = vec![false; other.order];
        for &v in map {
            if v >= other.order || hit[v] {
                return false;
            }
            hit[v] = true;
        }
        (0..self.order)
            .all(|a| (0..self.order).all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])))
    }

    /// Backtracking over images of a generating set, pruned by element
    /// orders. Returns `map` with `map[a]` the image of `a`.
    pub fn isomorphism_to(&self, other: &CayleyGroup) -> Option<Vec<usize>> {
        if self.order != other.order || self.order_profile() != other.order_profile() {
            return None;
        }
        let gens = self.generating_set();
        let mut images = Vec::with_capacity(gens.len());
        self.assign_generators(other, &gens, &mut images)
    }

    fn assign_generators(
        &self,
        other: &CayleyGroup,
        gens: &[usize],
        images: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if images.len() == gens.len() {
            return self.extend_homomorphism(other, gens, images);
        }
        let g = gens[images.len()];
        let ord = self.element_order(g);
        for cand in 0..other.order {
            if other.element_order(cand) != ord {
                continue;
            }
            images.push(cand);
            if let Some(m) = self.assign_generators(other, gens, images) {
                return Some(m);
            }
            images.pop();
        }
        None
    }

    /// Extends generator images to a map by words; fails on any inconsistency.
    fn extend_homomorphism(
        &self,
        other: &CayleyGroup,
        gens: &[usize],
        images: &[usize],
    ) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[self.identity] = other.identity;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for (&g, &gi) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let yi = other.mul(map[x], gi);
                if map[y] == usize::MAX {
                    map[y] = yi;
                    stack.push(y);
                } else if map[y] != yi {
                    return None;
                }
            }
        }
        self.is_isomorphism(&map, other).then_some(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_products() {
        let c4 = CayleyGroup::cyclic(4);
        assert_eq!(c4.order_profile(), vec![1, 2, 4, 4]);
        let v4 = CayleyGroup::cyclic(2).direct_product(&CayleyGroup::cyclic(2));
        assert!(v4.is_elementary_abelian_2());
        assert!(c4.isomorphism_to(&v4).is_none());
        let c6 = CayleyGroup::cyclic(2).direct_product(&CayleyGroup::cyclic(3));
        let m = c6.isomorphism_to(&CayleyGroup::cyclic(6)).unwrap();
        assert!(c6.is_isomorphism(&m, &CayleyGroup::cyclic(6)));
    }

    #[test]
    fn rejects_non_groups() {
        // left-zero semigroup of size 2: associative but no identity
        assert!(CayleyGroup::new(2, vec![0, 0, 1, 1]).is_err());
        assert!(CayleyGroup::new(2, vec![0, 1, 1, 1]).is_err());
        assert!(CayleyGroup::new(2, vec![0, 1, 1, 0]).is_ok());
    }

    #[test]
    fn opposite_is_isomorphic_via_inversion() {
        let s3 = crate::construct::GroupSpec::parse("C3:C2")
            .unwrap()
            .resolve()
            .unwrap();
        let op = s3.opposite();
        let inversion: Vec<usize> = (0..6).map(|a| s3.inv(a)).collect();
        assert!(op.is_isomorphism(&inversion, &s3));
        assert!(!s3.is_abelian());
    }

    #[test]
    fn regular_representation_is_regular() {
        let g = CayleyGroup::cyclic(5);
        let r = g.regular_representation();
        assert!(r.is_regular());
        assert!(r.cayley().isomorphism_to(&g).is_some());
    }
}
