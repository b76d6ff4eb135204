//! Set-theoretic solutions `s(x, y) = (x·y, θ_x(y))` of the pentagon
//! equation `s₂₃ s₁₃ s₁₂ = s₁₂ s₂₃` on a finite carrier `{0..n-1}`.
//!
//! [`RawTables`] holds arbitrary in-range tables and is what the verifiers
//! work on; [`Solution`] is only ever constructed from tables satisfying the
//! three component identities
//!
//! 1. `(x·y)·z = x·(y·z)`
//! 2. `θ_x(y)·θ_{x·y}(z) = θ_x(y·z)`
//! 3. `θ_{θ_x(y)} θ_{x·y} = θ_y`

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{associativity_witness, check_square, Semigroup};
use crate::error::{Error, Result};
use crate::perm::{Partition, PermGroup, Permutation};

pub type Triple = (usize, usize, usize);

/// Product and theta tables, flattened row-major, with no algebraic
/// guarantees beyond being square and in range.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RawTables {
    n: usize,
    product: Vec<usize>,
    theta: Vec<usize>,
}

impl RawTables {
    pub fn new(n: usize, product: Vec<usize>, theta: Vec<usize>) -> Result<Self> {
        check_square(n, &product, "product")?;
        check_square(n, &theta, "theta")?;
        Ok(RawTables { n, product, theta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn product(&self) -> &[usize] {
        &self.product
    }

    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    #[inline]
    fn mul(&self, x: usize, y: usize) -> usize {
        self.product[x * self.n + y]
    }

    #[inline]
    fn th(&self, x: usize, y: usize) -> usize {
        self.theta[x * self.n + y]
    }

    #[inline]
    fn s(&self, x: usize, y: usize) -> (usize, usize) {
        (self.mul(x, y), self.th(x, y))
    }

    fn s12(&self, (x, y, z): Triple) -> Triple {
        let (a, b) = self.s(x, y);
        (a, b, z)
    }

    fn s23(&self, (x, y, z): Triple) -> Triple {
        let (b, c) = self.s(y, z);
        (x, b, c)
    }

    /// `(τ×id)(id×s)(τ×id)`, applied right to left.
    fn s13(&self, (x, y, z): Triple) -> Triple {
        let (y1, x1, z1) = (y, x, z);
        let (b, c) = self.s(x1, z1);
        let (y2, a2, c2) = (y1, b, c);
        (a2, y2, c2)
    }

    /// First triple where `s₂₃ s₁₃ s₁₂` and `s₁₂ s₂₃` differ.
    pub fn pentagon_violation(&self) -> Option<Triple> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t = (x, y, z);
                    let lhs = self.s23(self.s13(self.s12(t)));
                    let rhs = self.s12(self.s23(t));
                    if lhs != rhs {
                        return Some(t);
                    }
                }
            }
        }
        None
    }

    /// Exhaustive check of the pentagon identity on all `n³` triples.
    pub fn verify_pentagon(&self) -> bool {
        self.pentagon_violation().is_none()
    }

    /// Checks the three component identities separately.
    pub fn verify_component_equations(&self) -> ComponentReport {
        ComponentReport {
            associativity: associativity_witness(self.n, &self.product),
            eq2: self.eq2_witness(),
            eq3: self.eq3_witness(),
        }
    }

    fn eq2_witness(&self) -> Option<Triple> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                let txy = self.th(x, y);
                for z in 0..n {
                    if self.mul(txy, self.th(xy, z)) != self.th(x, self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Witness `(x, y, z)`: the maps `θ_{θ_x(y)} θ_{x·y}` and `θ_y` differ at `z`.
    fn eq3_witness(&self) -> Option<Triple> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let a = self.th(x, y);
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.th(a, self.th(xy, z)) != self.th(y, z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn into_solution(self) -> Result<Solution> {
        Solution::new(self)
    }
}

/// Per-equation outcome of [`RawTables::verify_component_equations`];
/// `None` means the identity holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentReport {
    pub associativity: Option<Triple>,
    pub eq2: Option<Triple>,
    pub eq3: Option<Triple>,
}

impl ComponentReport {
    pub fn flags(&self) -> (bool, bool, bool) {
        (
            self.associativity.is_none(),
            self.eq2.is_none(),
            self.eq3.is_none(),
        )
    }

    pub fn all_hold(&self) -> bool {
        self.flags() == (true, true, true)
    }
}

/// A finite solution of the pentagon equation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    raw: RawTables,
}

/// Structural flags of a solution.
#[derive(Debug, Clone)]
pub struct SolutionProfile {
    pub commutative: bool,
    pub non_degenerate: bool,
    pub bijective: bool,
    pub involutive: bool,
    pub idempotent: bool,
    pub left_zero_underlying: bool,
    /// The associated permutation group, present when non-degenerate.
    pub group: Option<PermGroup>,
}

impl fmt::Display for SolutionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "commutative: {}", self.commutative)?;
        writeln!(f, "non-degenerate: {}", self.non_degenerate)?;
        writeln!(f, "bijective: {}", self.bijective)?;
        writeln!(f, "involutive: {}", self.involutive)?;
        writeln!(f, "idempotent: {}", self.idempotent)?;
        writeln!(f, "left-zero semigroup: {}", self.left_zero_underlying)?;
        if let Some(g) = &self.group {
            let orbits = g.orbits();
            writeln!(f, "group order: {}", g.order())?;
            writeln!(f, "orbits: {orbits}")?;
            writeln!(f, "semi-regular: {}", g.is_semiregular())?;
        }
        Ok(())
    }
}

impl Solution {
    /// Validates the three component identities.
    pub fn new(raw: RawTables) -> Result<Self> {
        let report = raw.verify_component_equations();
        if let Some(w) = report.associativity {
            return Err(Error::NotASolution {
                equation: 1,
                witness: w,
            });
        }
        if let Some(w) = report.eq2 {
            return Err(Error::NotASolution {
                equation: 2,
                witness: w,
            });
        }
        if let Some(w) = report.eq3 {
            return Err(Error::NotASolution {
                equation: 3,
                witness: w,
            });
        }
        Ok(Solution { raw })
    }

    pub fn from_tables(n: usize, product: Vec<usize>, theta: Vec<usize>) -> Result<Self> {
        Solution::new(RawTables::new(n, product, theta)?)
    }

    /// Left-zero product with the given theta rows.
    pub fn left_zero(n: usize, theta: Vec<usize>) -> Result<Self> {
        let product = (0..n * n).map(|k| k / n.max(1)).collect();
        Solution::from_tables(n, product, theta)
    }

    pub(crate) fn from_raw_unchecked(raw: RawTables) -> Self {
        debug_assert!(raw.verify_component_equations().all_hold());
        Solution { raw }
    }

    /// `s(x, y) = (x, y)` on `n` points.
    pub fn identity(n: usize) -> Self {
        let theta = (0..n * n).map(|k| k % n.max(1)).collect();
        Solution::left_zero(n, theta).expect("identity solution")
    }

    pub fn n(&self) -> usize {
        self.raw.n
    }

    pub fn raw(&self) -> &RawTables {
        &self.raw
    }

    pub fn into_raw(self) -> RawTables {
        self.raw
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.raw.mul(x, y)
    }

    #[inline]
    pub fn theta(&self, x: usize, y: usize) -> usize {
        self.raw.th(x, y)
    }

    pub fn theta_row(&self, x: usize) -> &[usize] {
        let n = self.n();
        &self.raw.theta[x * n..(x + 1) * n]
    }

    pub fn theta_perm(&self, x: usize) -> Result<Permutation> {
        Permutation::new(self.theta_row(x).to_vec())
    }

    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        self.raw.s(x, y)
    }

    pub fn semigroup(&self) -> Semigroup {
        Semigroup::from_table_unchecked(self.n(), self.raw.product.clone())
    }

    pub fn is_left_zero(&self) -> bool {
        let n = self.n();
        (0..n).all(|x| (0..n).all(|y| self.mul(x, y) == x))
    }

    pub fn is_non_degenerate(&self) -> bool {
        (0..self.n()).all(|x| self.theta_perm(x).is_ok())
    }

    /// `s₁₂ s₁₃ = s₁₃ s₁₂` evaluated on every triple.
    pub fn is_commutative(&self) -> bool {
        let n = self.n();
        let r = &self.raw;
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let t = (x, y, z);
                    r.s12(r.s13(t)) == r.s13(r.s12(t))
                })
            })
        })
    }

    /// Weak commutative product and `θ_{x·y} = θ_x`.
    pub fn is_commutative_by_characterization(&self) -> bool {
        let n = self.n();
        self.semigroup().is_weak_commutative()
            && (0..n).all(|x| (0..n).all(|y| self.theta_row(self.mul(x, y)) == self.theta_row(x)))
    }

    /// Injectivity of `s` on the `n²` pairs.
    pub fn is_bijective(&self) -> bool {
        let n = self.n();
        let mut hit = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                let (a, b) = self.apply(x, y);
                let k = a * n + b;
                if hit[k] {
                    return false;
                }
                hit[k] = true;
            }
        }
        true
    }

    pub fn is_involutive(&self) -> bool {
        let n = self.n();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let (a, b) = self.apply(x, y);
                self.apply(a, b) == (x, y)
            })
        })
    }

    pub fn is_idempotent(&self) -> bool {
        let n = self.n();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let (a, b) = self.apply(x, y);
                self.apply(a, b) == (a, b)
            })
        })
    }

    /// Order of `s` as a permutation of pairs, when bijective.
    pub fn map_order(&self) -> Option<usize> {
        if !self.is_bijective() {
            return None;
        }
        let n = self.n();
        let images: Vec<usize> = (0..n * n)
            .map(|k| {
                let (a, b) = self.apply(k / n, k % n);
                a * n + b
            })
            .collect();
        Some(Permutation::from_images_unchecked(images).order())
    }

    pub fn profile(&self) -> Result<SolutionProfile> {
        let commutative = self.is_commutative();
        if commutative != self.is_commutative_by_characterization() {
            return Err(Error::Invariant(
                "operator commutativity disagrees with its characterization".into(),
            ));
        }
        let non_degenerate = self.is_non_degenerate();
        let involutive = self.is_involutive();
        if involutive && !(commutative && non_degenerate) {
            return Err(Error::Invariant(
                "involutive solution that is not commutative and non-degenerate".into(),
            ));
        }
        Ok(SolutionProfile {
            commutative,
            non_degenerate,
            bijective: self.is_bijective(),
            involutive,
            idempotent: self.is_idempotent(),
            left_zero_underlying: self.is_left_zero(),
            group: if non_degenerate {
                Some(self.assoc_group()?)
            } else {
                None
            },
        })
    }

    /// Subgroup of `Sym(n)` generated by the theta rows.
    pub fn assoc_group(&self) -> Result<PermGroup> {
        let gens = (0..self.n())
            .map(|x| self.theta_perm(x))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::generate(self.n(), &gens)
    }

    pub(crate) fn require_commutative_non_degenerate(&self) -> Result<()> {
        if !self.is_non_degenerate() {
            return Err(Error::Precondition("solution is degenerate".into()));
        }
        if !self.is_commutative_by_characterization() {
            return Err(Error::Precondition("solution is not commutative".into()));
        }
        Ok(())
    }

    fn subset_mask(&self, subset: &[usize]) -> Result<Vec<bool>> {
        if subset.is_empty() {
            return Err(Error::Precondition("subset must be non-empty".into()));
        }
        let mut mask = vec![false; self.n()];
        for &x in subset {
            if x >= self.n() {
                return Err(Error::Precondition(format!(
                    "element {x} outside the carrier"
                )));
            }
            mask[x] = true;
        }
        Ok(mask)
    }

    /// Closed under the product and under `θ_x(·)` for `x, y` in the subset.
    pub fn is_subsolution(&self, subset: &[usize]) -> Result<bool> {
        let mask = self.subset_mask(subset)?;
        let n = self.n();
        Ok((0..n).filter(|&x| mask[x]).all(|x| {
            (0..n)
                .filter(|&y| mask[y])
                .all(|y| mask[self.mul(x, y)] && mask[self.theta(x, y)])
        }))
    }

    /// The restricted solution, re-indexed in increasing order of members.
    pub fn restrict(&self, subset: &[usize]) -> Result<Solution> {
        if !self.is_subsolution(subset)? {
            return Err(Error::Precondition("subset is not a subsolution".into()));
        }
        let mut members: Vec<usize> = subset.to_vec();
        members.sort_unstable();
        members.dedup();
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &x) in members.iter().enumerate() {
            pos[x] = i;
        }
        let k = members.len();
        let mut product = Vec::with_capacity(k * k);
        let mut theta = Vec::with_capacity(k * k);
        for &x in &members {
            for &y in &members {
                product.push(pos[self.mul(x, y)]);
                theta.push(pos[self.theta(x, y)]);
            }
        }
        Ok(Solution::from_raw_unchecked(RawTables {
            n: k,
            product,
            theta,
        }))
    }

    /// The solution transported along `phi`: point `x` becomes `phi[x]`.
    pub fn relabel(&self, phi: &[usize]) -> Result<Solution> {
        let n = self.n();
        let p = Permutation::new(phi.to_vec())?;
        if p.degree() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: p.degree(),
            });
        }
        let mut product = vec![0; n * n];
        let mut theta = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                product[phi[x] * n + phi[y]] = phi[self.mul(x, y)];
                theta[phi[x] * n + phi[y]] = phi[self.theta(x, y)];
            }
        }
        Ok(Solution::from_raw_unchecked(RawTables {
            n,
            product,
            theta,
        }))
    }

    /// `(φ×φ) s = t (φ×φ)` for the map `phi` from `self` to `other`.
    pub fn is_isomorphism(&self, phi: &[usize], other: &Solution) -> bool {
        let n = self.n();
        if other.n() != n || phi.len() != n || Permutation::new(phi.to_vec()).is_err() {
            return false;
        }
        (0..n).all(|x| {
            (0..n).all(|y| {
                let (a, b) = self.apply(x, y);
                (phi[a], phi[b]) == other.apply(phi[x], phi[y])
            })
        })
    }

    /// Iso-invariant data attached to each point, used to prune the search.
    fn point_fingerprints(&self) -> Vec<PointPrint> {
        let n = self.n();
        let mut row_ids: HashMap<&[usize], usize> = HashMap::new();
        for x in 0..n {
            *row_ids.entry(self.theta_row(x)).or_insert(0) += 1;
        }
        (0..n)
            .map(|x| {
                let row = self.theta_row(x);
                let mut image_counts = vec![0usize; n];
                for &v in row {
                    image_counts[v] += 1;
                }
                image_counts.sort_unstable();
                let mut prod_image = vec![false; n];
                for y in 0..n {
                    prod_image[self.mul(x, y)] = true;
                }
                PointPrint {
                    theta_shape: match Permutation::new(row.to_vec()) {
                        Ok(p) => p.cycle_type(),
                        Err(_) => image_counts,
                    },
                    same_theta: row_ids[row],
                    idempotent: self.mul(x, x) == x,
                    theta_fixes_self: self.theta(x, x) == x,
                    left_fixed: (0..n).filter(|&y| self.mul(x, y) == x).count(),
                    right_fixed: (0..n).filter(|&y| self.mul(y, x) == x).count(),
                    row_image: prod_image.iter().filter(|&&b| b).count(),
                }
            })
            .collect()
    }

    /// Backtracking search for an isomorphism `self -> other`. Each new point
    /// is tried only against points with the same fingerprint; products and
    /// theta images of mapped pairs are forced and checked as soon as both
    /// arguments are mapped.
    pub fn isomorphic(&self, other: &Solution) -> Option<Vec<usize>> {
        let n = self.n();
        if other.n() != n {
            return None;
        }
        let fa = self.point_fingerprints();
        let fb = other.point_fingerprints();
        let mut sa = fa.clone();
        let mut sb = fb.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
        let candidates: Vec<Vec<usize>> = fa
            .iter()
            .map(|f| (0..n).filter(|&y| fb[y] == *f).collect())
            .collect();
        let mut search = IsoSearch {
            a: self,
            b: other,
            map: vec![usize::MAX; n],
            used: vec![false; n],
            trail: Vec::with_capacity(n),
            fa: &fa,
            fb: &fb,
        };
        if search.run(&candidates) {
            let map = search.map;
            debug_assert!(self.is_isomorphism(&map, other));
            Some(map)
        } else {
            None
        }
    }

    /// For all `z` and all `g` in the associated group,
    /// `θ_{g(z)} = θ_z ∘ g⁻¹`.
    pub fn theta_shift_check(&self) -> Result<bool> {
        self.require_commutative_non_degenerate()?;
        let g = self.assoc_group()?;
        let n = self.n();
        for z in 0..n {
            let tz = self.theta_perm(z)?;
            for h in g.elements() {
                let expect = tz.after(&h.inverse());
                if self.theta_row(h.apply(z)) != expect.images() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Lexicographically least relabelled `(product, theta)` table pair over
    /// all relabellings. Exhaustive over `n!` maps; limited to `n <= 10`.
    pub fn canonical_form(&self) -> Result<Solution> {
        let n = self.n();
        if n > 10 {
            return Err(Error::Budget { n, max: 10 });
        }
        // phi: old -> new, inv: new -> old
        let mut phi: Vec<usize> = (0..n).collect();
        let mut inv: Vec<usize> = (0..n).collect();
        let mut best = phi.clone();
        let mut best_key = self.relabelled_key(&phi, &inv);
        let mut c = vec![0usize; n];
        let mut i = 1;
        // Heap's algorithm over phi, keeping inv in sync
        while i < n {
            if c[i] < i {
                let j = if i % 2 == 0 { 0 } else { c[i] };
                let (u, v) = (phi[j], phi[i]);
                phi.swap(j, i);
                inv[u] = i;
                inv[v] = j;
                if self.precedes(&phi, &inv, &best_key) {
                    best.clone_from(&phi);
                    best_key = self.relabelled_key(&phi, &inv);
                }
                c[i] += 1;
                i = 1;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        self.relabel(&best)
    }

    #[inline]
    fn relabelled_cell(&self, phi: &[usize], inv: &[usize], k: usize) -> usize {
        let n = self.n();
        let (t, i, j) = (k / (n * n), (k / n) % n, k % n);
        let (x, y) = (inv[i], inv[j]);
        if t == 0 {
            phi[self.mul(x, y)]
        } else {
            phi[self.theta(x, y)]
        }
    }

    fn relabelled_key(&self, phi: &[usize], inv: &[usize]) -> Vec<usize> {
        let n = self.n();
        (0..2 * n * n)
            .map(|k| self.relabelled_cell(phi, inv, k))
            .collect()
    }

    fn precedes(&self, phi: &[usize], inv: &[usize], key: &[usize]) -> bool {
        for (k, &b) in key.iter().enumerate() {
            let a = self.relabelled_cell(phi, inv, k);
            if a != b {
                return a < b;
            }
        }
        false
    }

    /// Theta cycle types, sorted; an isomorphism invariant.
    pub fn theta_cycle_types(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = (0..self.n())
            .map(|x| match self.theta_perm(x) {
                Ok(p) => p.cycle_type(),
                Err(_) => vec![],
            })
            .collect();
        v.sort();
        v
    }

    /// Partition of the carrier by equality of theta rows.
    pub fn theta_partition(&self) -> Partition {
        let rows: Vec<&[usize]> = (0..self.n()).map(|x| self.theta_row(x)).collect();
        Partition::from_labels(&rows)
    }
}

/// Free-function form of [`Solution::isomorphic`].
pub fn solutions_isomorphic(a: &Solution, b: &Solution) -> Option<Vec<usize>> {
    a.isomorphic(b)
}

pub fn verify_pentagon(raw: &RawTables) -> bool {
    raw.verify_pentagon()
}

pub fn verify_component_equations(raw: &RawTables) -> ComponentReport {
    raw.verify_component_equations()
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct PointPrint {
    theta_shape: Vec<usize>,
    same_theta: usize,
    idempotent: bool,
    theta_fixes_self: bool,
    left_fixed: usize,
    right_fixed: usize,
    row_image: usize,
}

struct IsoSearch<'a> {
    a: &'a Solution,
    b: &'a Solution,
    map: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
    fa: &'a [PointPrint],
    fb: &'a [PointPrint],
}

impl IsoSearch<'_> {
    fn run(&mut self, candidates: &[Vec<usize>]) -> bool {
        let Some(x) = self.map.iter().position(|&v| v == usize::MAX) else {
            return true;
        };
        for &y in &candidates[x] {
            if self.used[y] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, y) && self.run(candidates) {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail");
            self.used[self.map[x]] = false;
            self.map[x] = usize::MAX;
        }
    }

    fn set(&mut self, x: usize, y: usize, queue: &mut Vec<usize>) -> bool {
        match self.map[x] {
            v if v == y => true,
            usize::MAX => {
                if self.used[y] || self.fa[x] != self.fb[y] {
                    return false;
                }
                self.map[x] = y;
                self.used[y] = true;
                self.trail.push(x);
                queue.push(x);
                true
            }
            _ => false,
        }
    }

    /// Assigns `x -> y` and propagates; `false` on conflict.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let mut queue = Vec::new();
        if !self.set(x, y, &mut queue) {
            return false;
        }
        let mut done = 0;
        while done < queue.len() {
            let u = queue[done];
            done += 1;
            let mapped: Vec<usize> = self.trail.clone();
            for v in mapped {
                for (p, q) in [(u, v), (v, u)] {
                    let (mp, mq) = (self.map[p], self.map[q]);
                    if !self.set(self.a.mul(p, q), self.b.mul(mp, mq), &mut queue)
                        || !self.set(self.a.theta(p, q), self.b.theta(mp, mq), &mut queue)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_pesol(&self.raw))
    }
}
