//! Permutations of `{0..n-1}`, explicitly enumerated permutation groups and
//! the action predicates (orbits, semi-regularity, blocks) used throughout the
//! crate.
//!
//! Composition convention: `compose(p, q)` applies `q` first and then `p`, so
//! `compose(p, q)(i) == p(q(i))`. Written as juxtaposition this is `p q`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::CayleyGroup;

/// A bijection of `{0..n-1}`; position `i` holds the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::NotAPermutation(images));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Caller guarantees `images` is a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The cycle `i -> i+1 mod n`.
    pub fn cycle(n: usize) -> Self {
        Permutation {
            images: (0..n).map(|i| (i + 1) % n.max(1)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: `other` acts first.
    pub fn after(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..exp.unsigned_abs() {
            acc = base.after(&acc);
        }
        acc
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, v)| i == *v)
            .map(|(i, _)| i)
    }

    /// Cycle lengths sorted in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// Order of the permutation as a group element.
    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, lcm)
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.after(self).after(&g.inverse())
    }
}

/// `p ∘ q` (apply `q` first).
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            expected: p.degree(),
            found: q.degree(),
        });
    }
    Ok(p.after(q))
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|e| Error::Parse {
                    line: 1,
                    msg: format!("bad permutation entry `{t}`: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

/// Parses one permutation per non-empty line. Lines starting with `#` are skipped.
pub fn parse_permutations(text: &str) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let p = line.parse::<Permutation>().map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse {
                line: lineno + 1,
                msg,
            },
            other => Error::Parse {
                line: lineno + 1,
                msg: other.to_string(),
            },
        })?;
        out.push(p);
    }
    Ok(out)
}

pub fn format_permutations(perms: &[Permutation]) -> String {
    let mut out = String::new();
    for p in perms {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

/// A partition of `{0..n-1}`. Classes are sorted internally and ordered by
/// their minimal element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (c, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::MalformedPartition("empty class".into()));
            }
            for &x in class {
                if x >= n {
                    return Err(Error::MalformedPartition(format!(
                        "element {x} outside 0..{n}"
                    )));
                }
                if labels[x] != usize::MAX {
                    return Err(Error::MalformedPartition(format!(
                        "element {x} appears twice"
                    )));
                }
                labels[x] = c;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::MalformedPartition(format!("element {x} missing")));
        }
        Ok(Partition::from_labels(&labels))
    }

    /// Builds the partition whose classes are the fibres of `labels`.
    pub fn from_labels<L: Eq + std::hash::Hash + Clone>(labels: &[L]) -> Self {
        let mut ids: HashMap<L, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![0; labels.len()];
        for (x, l) in labels.iter().enumerate() {
            let next = classes.len();
            let id = *ids.entry(l.clone()).or_insert(next);
            if id == next {
                classes.push(Vec::new());
            }
            classes[id].push(x);
            class_of[x] = id;
        }
        // first-occurrence numbering already orders classes by minimal element
        Partition { classes, class_of }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            classes: (0..n).map(|i| vec![i]).collect(),
            class_of: (0..n).collect(),
        }
    }

    pub fn whole(n: usize) -> Self {
        Partition {
            classes: if n == 0 {
                vec![]
            } else {
                vec![(0..n).collect()]
            },
            class_of: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.class_of.len()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    /// Multiset of class sizes, sorted.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.classes.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, c) in self.classes.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            f.write_str("{")?;
            for (j, x) in c.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

/// A finitely generated subgroup of `Sym(n)` with all of its elements
/// enumerated. The identity is always element 0.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    element_index: HashMap<Vec<usize>, usize>,
}

impl PermGroup {
    /// Closure of `gens` under composition, by breadth-first multiplication
    /// with the generators. Finite groups need no explicit inverses.
    pub fn generate(degree: usize, gens: &[Permutation]) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut element_index = HashMap::new();
        element_index.insert(id.images.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for g in gens {
                let next = g.after(&elements[k]);
                if !element_index.contains_key(&next.images) {
                    element_index.insert(next.images.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators: gens.to_vec(),
            elements,
            element_index,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::generate(degree, &[]).expect("no generators")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.element_index.get(&p.images).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.element_index.contains_key(&p.images)
    }

    /// Orbits of the natural action, ordered by minimal element.
    pub fn orbits(&self) -> Partition {
        let n = self.degree;
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            label[start] = next;
            while let Some(x) = stack.pop() {
                for g in &self.generators {
                    let y = g.apply(x);
                    if label[y] == usize::MAX {
                        label[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        Partition::from_labels(&label)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// Every non-identity element is fixed-point-free.
    pub fn is_semiregular(&self) -> bool {
        self.elements
            .iter()
            .skip(1)
            .all(|g| g.fixed_points().next().is_none())
    }

    pub fn is_regular(&self) -> bool {
        self.order() == self.degree && self.is_semiregular() && self.is_transitive()
    }

    /// `true` iff every group element maps each class onto a class.
    pub fn is_block_system(&self, parts: &Partition) -> Result<bool> {
        if parts.n() != self.degree {
            return Err(Error::MalformedPartition(format!(
                "partition of {} points for a group of degree {}",
                parts.n(),
                self.degree
            )));
        }
        // g(B) is a block image iff all of g(B) lies in one class of the same size
        Ok(self.generators.iter().all(|g| {
            parts.classes().iter().all(|class| {
                let target = parts.class_of(g.apply(class[0]));
                class.iter().all(|&x| parts.class_of(g.apply(x)) == target)
                    && parts.classes()[target].len() == class.len()
            })
        }))
    }

    /// The abstract group on element ids, `mul(a, b)` = `elements[a] ∘ elements[b]`.
    pub fn cayley(&self) -> CayleyGroup {
        let k = self.order();
        let mut table = vec![0; k * k];
        for a in 0..k {
            for b in 0..k {
                let c = self.elements[a].after(&self.elements[b]);
                table[a * k + b] = self.element_index[&c.images];
            }
        }
        CayleyGroup::from_table_unchecked(k, table)
    }
}

/// Searches for an abstract isomorphism between two permutation groups.
/// The returned map sends element ids of `g` to element ids of `h`.
pub fn group_iso(g: &PermGroup, h: &PermGroup) -> Option<Vec<usize>> {
    g.cayley().isomorphism_to(&h.cayley())
}
