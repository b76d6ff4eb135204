//! Factories for solutions: group solutions, the semi-regular group
//! construction on weak commutative semigroups and its left-zero special
//! case, cocycle extensions on `X × G` (and their inverse), the sigma
//! family, cyclic-group solutions, and the small fixture families.
//!
//! Every factory returning a [`Solution`] has passed the component
//! identities; the advertised structural flags are checked as well.
//!
//! Index flattening: a pair `(x, a) ∈ X × G` lives at `x·|G| + a`, and
//! `x_{i,j}` of [`cyclic_solution`] lives at `i·n + j`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{Congruence, Semigroup};
use crate::error::{Error, Result};
use crate::format::{parse_permutation_family, write_permutation_family};
use crate::group::CayleyGroup;
use crate::perm::{Partition, PermGroup, Permutation};
use crate::retraction::{is_irretractable, retract};
use crate::solution::{RawTables, Solution};

/// Names a small group.
///
/// Grammar: `C<n>` (cyclic), `C<p>:C<q>` (`Z/p ⋊ Z/q`, acting by the
/// smallest multiplier `a > 1` of multiplicative order `q` mod `p`),
/// `D<n>` (dihedral of order `2n`), `Q8`, and direct products joined by
/// `x`, e.g. `C2xC2xC2`. Explicit Cayley tables use [`GroupSpec::Table`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Semidirect { p: usize, q: usize },
    Dihedral(usize),
    Quaternion,
    Product(Vec<GroupSpec>),
    Table(CayleyGroup),
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = |why: &str| Error::InvalidGroupSpec(t.to_string(), why.to_string());
        if t.is_empty() {
            return Err(bad("empty"));
        }
        let factors: Vec<&str> = t.split(['x', 'X']).collect();
        if factors.len() > 1 {
            let parts = factors
                .iter()
                .map(|f| GroupSpec::parse_factor(f).map_err(|_| bad("bad factor")))
                .collect::<Result<Vec<_>>>()?;
            return Ok(GroupSpec::Product(parts));
        }
        GroupSpec::parse_factor(t)
    }

    fn parse_factor(f: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidGroupSpec(f.to_string(), why.to_string());
        let num = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .ok()
                .filter(|&v| v >= 1)
                .ok_or_else(|| bad("expected a positive integer"))
        };
        if f == "Q8" {
            return Ok(GroupSpec::Quaternion);
        }
        if let Some((l, r)) = f.split_once(':') {
            let p = num(l
                .strip_prefix('C')
                .ok_or_else(|| bad("expected C<p>:C<q>"))?)?;
            let q = num(r
                .strip_prefix('C')
                .ok_or_else(|| bad("expected C<p>:C<q>"))?)?;
            if semidirect_multiplier(p, q).is_none() {
                return Err(bad("no multiplier of order q modulo p"));
            }
            return Ok(GroupSpec::Semidirect { p, q });
        }
        if let Some(rest) = f.strip_prefix('C') {
            return Ok(GroupSpec::Cyclic(num(rest)?));
        }
        if let Some(rest) = f.strip_prefix('D') {
            return Ok(GroupSpec::Dihedral(num(rest)?));
        }
        Err(bad("unknown group name"))
    }

    /// Parses an explicit Cayley table (`n`, then `n` rows).
    pub fn from_table_text(text: &str) -> Result<Self> {
        let (n, rows) = crate::format::parse_sized_rows(text, 1)?;
        Ok(GroupSpec::Table(CayleyGroup::new(n, rows.concat())?))
    }

    pub fn resolve(&self) -> Result<CayleyGroup> {
        Ok(match self {
            GroupSpec::Cyclic(n) => CayleyGroup::cyclic(*n),
            GroupSpec::Semidirect { p, q } => {
                let a = semidirect_multiplier(*p, *q).ok_or_else(|| {
                    Error::InvalidGroupSpec(self.to_string(), "no multiplier".into())
                })?;
                semidirect(*p, *q, a)
            }
            GroupSpec::Dihedral(n) => semidirect(*n, 2, n - 1),
            GroupSpec::Quaternion => quaternion(),
            GroupSpec::Product(parts) => {
                let mut acc = CayleyGroup::cyclic(1);
                for p in parts {
                    acc = acc.direct_product(&p.resolve()?);
                }
                acc
            }
            GroupSpec::Table(g) => g.clone(),
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Semidirect { p, q } => write!(f, "C{p}:C{q}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Quaternion => f.write_str("Q8"),
            GroupSpec::Product(parts) => {
                for (k, p) in parts.iter().enumerate() {
                    if k > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            GroupSpec::Table(g) => write!(f, "table({})", g.order()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse(s)
    }
}

/// Smallest `a > 1` whose multiplicative order modulo `p` is exactly `q`.
fn semidirect_multiplier(p: usize, q: usize) -> Option<usize> {
    if p < 2 || q < 2 {
        return None;
    }
    (2..p).find(|&a| {
        let mut x = 1;
        for k in 1..=q {
            x = x * a % p;
            if x == 1 {
                return k == q;
            }
        }
        false
    })
}

/// `Z/p ⋊ Z/q` with `(x, y)` at `x·q + y` and
/// `(x₁, y₁)(x₂, y₂) = (x₁ + a^{y₁} x₂, y₁ + y₂)`.
fn semidirect(p: usize, q: usize, a: usize) -> CayleyGroup {
    let n = p * q;
    let mut powers = vec![1 % p.max(1); q];
    for k in 1..q {
        powers[k] = powers[k - 1] * a % p;
    }
    let mut table = vec![0; n * n];
    for u in 0..n {
        let (x1, y1) = (u / q, u % q);
        for v in 0..n {
            let (x2, y2) = (v / q, v % q);
            let x = (x1 + powers[y1] * x2) % p;
            let y = (y1 + y2) % q;
            table[u * n + v] = x * q + y;
        }
    }
    CayleyGroup::new(n, table).expect("semidirect product is a group")
}

/// Quaternion group; id `s·4 + u` is `(-1)^s · [1, i, j, k][u]`.
fn quaternion() -> CayleyGroup {
    // unit products as (sign, unit)
    const UNITS: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut table = vec![0; 64];
    for a in 0..8 {
        for b in 0..8 {
            let (s, u) = UNITS[a % 4][b % 4];
            let sign = (a / 4 + b / 4 + s) % 2;
            table[a * 8 + b] = sign * 4 + u;
        }
    }
    CayleyGroup::new(8, table).expect("quaternion table is a group")
}

/// The twelve groups of order at most 8 expressible without `D<n>`/`Q8`.
pub const SMALL_GROUP_SPECS: [&str; 12] = [
    "C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "C3:C2", "C7", "C8", "C4xC2", "C2xC2xC2",
];

const CATALOG: &[&str] = &[
    "C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "C3:C2", "C7", "C8", "C4xC2", "C2xC2xC2", "D4",
    "Q8", "C9", "C3xC3", "C10", "C5:C2", "C11", "C12", "C6xC2", "D6", "C2xC2xC3", "C13", "C14",
    "C7:C2", "C15", "C16",
];

/// A catalog name for the group when one matches, otherwise a description
/// by order and element-order profile.
pub fn identify_group(g: &CayleyGroup) -> String {
    for name in CATALOG {
        let spec = GroupSpec::parse(name).expect("catalog names parse");
        let h = spec.resolve().expect("catalog names resolve");
        if h.order() == g.order() && g.isomorphism_to(&h).is_some() {
            return (*name).to_string();
        }
    }
    format!("order{}{:?}", g.order(), g.order_profile())
}

/// `s_G(g, h) = (g, g⁻¹h)` on the named group.
pub fn group_solution(spec: &GroupSpec) -> Result<Solution> {
    group_solution_of(&spec.resolve()?)
}

/// `s_G(g, h) = (g, g⁻¹h)` on the element ids of `g`.
pub fn group_solution_of(g: &CayleyGroup) -> Result<Solution> {
    let n = g.order();
    let theta = (0..n * n).map(|k| g.mul(g.inv(k / n), k % n)).collect();
    let sol = Solution::left_zero(n, theta)?;
    if !(sol.is_bijective() && is_irretractable(&sol)?) {
        return Err(Error::Invariant(
            "group solution is not bijective irretractable".into(),
        ));
    }
    if sol.assoc_group()?.cayley().isomorphism_to(g).is_none() {
        return Err(Error::Invariant("associated group differs from G".into()));
    }
    Ok(sol)
}

/// Builds a commutative non-degenerate solution from a weak commutative
/// semigroup, a congruence with left-zero quotient, and generators of a
/// semi-regular group of automorphisms whose orbits are transversals of the
/// congruence and which permutes its classes. Theta is the identity on the
/// chosen class `t_class` and `θ_{g(s)} = g⁻¹` for `s` in that class.
pub fn cosimpo_construction(
    s: &Semigroup,
    c: &Congruence,
    gens: &[Permutation],
    t_class: usize,
) -> Result<Solution> {
    let n = s.n();
    if !s.is_weak_commutative() {
        return Err(Error::Hypothesis("semigroup is weak commutative"));
    }
    if c.parts().n() != n {
        return Err(Error::Hypothesis("congruence lives on the semigroup"));
    }
    if !c.quotient_is_left_zero() {
        return Err(Error::Hypothesis("quotient is a left-zero semigroup"));
    }
    if gens.iter().any(|g| !s.is_automorphism(g)) {
        return Err(Error::Hypothesis("generators are automorphisms"));
    }
    let group = PermGroup::generate(n, gens)?;
    if !group.is_semiregular() {
        return Err(Error::Hypothesis("group acts semi-regularly"));
    }
    let orbits = group.orbits();
    let parts = c.parts();
    let transversal = orbits.classes().iter().all(|o| {
        let mut hit = vec![false; parts.len()];
        o.iter()
            .all(|&x| !std::mem::replace(&mut hit[parts.class_of(x)], true))
            && hit.iter().all(|&h| h)
    });
    if !transversal {
        return Err(Error::Hypothesis("every orbit is a set of representatives"));
    }
    if !group.is_block_system(parts)? {
        return Err(Error::Hypothesis("congruence classes form a block system"));
    }
    if t_class >= parts.len() {
        return Err(Error::Hypothesis("chosen class exists"));
    }
    let mut theta: Vec<Option<Permutation>> = vec![None; n];
    for &base in &parts.classes()[t_class] {
        for g in group.elements() {
            theta[g.apply(base)] = Some(g.inverse());
        }
    }
    let theta: Vec<usize> = theta
        .into_iter()
        .flat_map(|p| p.expect("orbits cover the carrier").into_images())
        .collect();
    let sol = Solution::from_tables(n, s.table().to_vec(), theta)
        .map_err(|e| Error::Invariant(format!("construction produced a non-solution: {e}")))?;
    sol.require_commutative_non_degenerate()
        .map_err(|e| Error::Invariant(e.to_string()))?;
    Ok(sol)
}

/// Left-zero specialisation: `θ` is the identity at each chosen orbit
/// representative and `θ_{g(s_i)} = g⁻¹`.
pub fn left_zero_construction(n: usize, gens: &[Permutation], reps: &[usize]) -> Result<Solution> {
    let group = PermGroup::generate(n, gens)?;
    if !group.is_semiregular() {
        return Err(Error::Hypothesis("group acts semi-regularly"));
    }
    let orbits = group.orbits();
    let mut hit = vec![false; orbits.len()];
    for &r in reps {
        if r >= n || std::mem::replace(&mut hit[orbits.class_of(r)], true) {
            return Err(Error::Hypothesis("one representative per orbit"));
        }
    }
    if hit.iter().any(|&h| !h) {
        return Err(Error::Hypothesis("one representative per orbit"));
    }
    let mut theta = vec![0; n * n];
    for &r in reps {
        for g in group.elements() {
            let x = g.apply(r);
            theta[x * n..(x + 1) * n].copy_from_slice(g.inverse().images());
        }
    }
    let sol = Solution::left_zero(n, theta)
        .map_err(|e| Error::Invariant(format!("construction produced a non-solution: {e}")))?;
    sol.require_commutative_non_degenerate()
        .map_err(|e| Error::Invariant(e.to_string()))?;
    Ok(sol)
}

/// A family `π_{a,b} ∈ Sym(X)` indexed by `G × G` satisfying
/// `π_{a⁻¹b, a⁻¹c} ∘ π_{a,c} = π_{b,c}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    group: CayleyGroup,
    x_size: usize,
    pi: Vec<Permutation>,
}

impl Cocycle {
    pub fn new(group: &CayleyGroup, x_size: usize, pi: Vec<Permutation>) -> Result<Self> {
        let g = group.order();
        if pi.len() != g * g {
            return Err(Error::Precondition(format!(
                "cocycle needs {} permutations, found {}",
                g * g,
                pi.len()
            )));
        }
        if let Some(p) = pi.iter().find(|p| p.degree() != x_size) {
            return Err(Error::DegreeMismatch {
                expected: x_size,
                found: p.degree(),
            });
        }
        for a in 0..g {
            let ai = group.inv(a);
            for b in 0..g {
                for c in 0..g {
                    let lhs = pi[group.mul(ai, b) * g + group.mul(ai, c)].after(&pi[a * g + c]);
                    if lhs != pi[b * g + c] {
                        return Err(Error::CocycleViolation((a, b, c)));
                    }
                }
            }
        }
        Ok(Cocycle {
            group: group.clone(),
            x_size,
            pi,
        })
    }

    /// All `π_{a,b}` equal to the identity.
    pub fn trivial(group: &CayleyGroup, x_size: usize) -> Self {
        let g = group.order();
        Cocycle {
            group: group.clone(),
            x_size,
            pi: vec![Permutation::identity(x_size); g * g],
        }
    }

    pub fn group(&self) -> &CayleyGroup {
        &self.group
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn pi(&self, a: usize, b: usize) -> &Permutation {
        &self.pi[a * self.group.order() + b]
    }

    pub fn is_trivial(&self) -> bool {
        self.pi.iter().all(Permutation::is_identity)
    }

    /// Text form: header `"<|G|> <|X|>"`, then `π_{a,b}` row-major in `(a, b)`.
    pub fn parse(group: &CayleyGroup, text: &str) -> Result<Self> {
        let (g, x, perms) = parse_permutation_family(text, |g| g * g)?;
        if g != group.order() {
            return Err(Error::Parse {
                line: 1,
                msg: format!(
                    "header says |G| = {g} but the group has order {}",
                    group.order()
                ),
            });
        }
        Cocycle::new(group, x, perms)
    }

    pub fn to_text(&self) -> String {
        write_permutation_family(self.group.order(), self.x_size, &self.pi)
    }
}

/// A map `σ: G → Sym(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaFamily {
    x_size: usize,
    sigma: Vec<Permutation>,
}

impl SigmaFamily {
    pub fn new(x_size: usize, sigma: Vec<Permutation>) -> Result<Self> {
        if let Some(p) = sigma.iter().find(|p| p.degree() != x_size) {
            return Err(Error::DegreeMismatch {
                expected: x_size,
                found: p.degree(),
            });
        }
        Ok(SigmaFamily { x_size, sigma })
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn sigma(&self, a: usize) -> &Permutation {
        &self.sigma[a]
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    /// Text form: header `"<|G|> <|X|>"`, then `σ_a` for each `a`.
    pub fn parse(text: &str) -> Result<Self> {
        let (_, x, perms) = parse_permutation_family(text, |g| g)?;
        SigmaFamily::new(x, perms)
    }

    pub fn to_text(&self) -> String {
        write_permutation_family(self.sigma.len(), self.x_size, &self.sigma)
    }

    /// `π_{a,b} = σ_{a⁻¹b} ∘ σ_b⁻¹`.
    pub fn cocycle(&self, group: &CayleyGroup) -> Result<Cocycle> {
        let g = group.order();
        if self.sigma.len() != g {
            return Err(Error::Precondition(format!(
                "sigma family has {} maps for a group of order {g}",
                self.sigma.len()
            )));
        }
        let pi = (0..g * g)
            .map(|k| {
                let (a, b) = (k / g, k % g);
                self.sigma[group.mul(group.inv(a), b)].after(&self.sigma[b].inverse())
            })
            .collect();
        Cocycle::new(group, self.x_size, pi)
            .map_err(|e| Error::Invariant(format!("sigma-derived family is not a cocycle: {e}")))
    }
}

/// `s((x,a),(y,b)) = ((x,a), (π_{a,b}(y), a⁻¹b))` on `X × G`.
pub fn extension_construction(
    x_size: usize,
    group: &CayleyGroup,
    pi: &Cocycle,
) -> Result<Solution> {
    if pi.x_size != x_size || pi.group != *group {
        return Err(Error::Precondition("cocycle does not match X and G".into()));
    }
    let g = group.order();
    let n = x_size * g;
    let mut theta = vec![0; n * n];
    for u in 0..n {
        let a = u % g;
        for v in 0..n {
            let (y, b) = (v / g, v % g);
            theta[u * n + v] = pi.pi(a, b).apply(y) * g + group.mul(group.inv(a), b);
        }
    }
    let sol = Solution::left_zero(n, theta)
        .map_err(|e| Error::Invariant(format!("extension is not a solution: {e}")))?;
    if !sol.is_bijective() || !sol.is_non_degenerate() {
        return Err(Error::Invariant(
            "extension is not bijective non-degenerate".into(),
        ));
    }
    let ret = retract(&sol)?;
    if ret
        .quotient()
        .isomorphic(&group_solution_of(group)?)
        .is_none()
    {
        return Err(Error::Invariant(
            "retraction of the extension is not (G, s_G)".into(),
        ));
    }
    Ok(sol)
}

/// The output of [`extension_decompose`]: `relabel[p]` is the index
/// `x·|G| + a` assigned to the original point `p`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub x_size: usize,
    pub group: CayleyGroup,
    pub cocycle: Cocycle,
    pub relabel: Vec<usize>,
}

/// Writes a finite commutative non-degenerate solution on a left-zero
/// semigroup as an extension of its retraction's group.
pub fn extension_decompose(sol: &Solution) -> Result<Decomposition> {
    sol.require_commutative_non_degenerate()?;
    if !sol.is_left_zero() {
        return Err(Error::Precondition(
            "underlying semigroup is not left-zero".into(),
        ));
    }
    let ret = retract(sol)?;
    let witness = classif_isomorphism(ret.quotient())?;
    let group = witness.group.clone();
    let g = group.order();
    let n = sol.n();
    let x_size = n / g;
    // class id -> group element, and back
    let to_group = &witness.to_group;
    let mut class_of_element = vec![0; g];
    for (cls, &a) in to_group.iter().enumerate() {
        class_of_element[a] = cls;
    }
    let classes = ret.classes().classes();
    let mut relabel = vec![0; n];
    for (cls, members) in classes.iter().enumerate() {
        for (x, &p) in members.iter().enumerate() {
            relabel[p] = x * g + to_group[cls];
        }
    }
    let mut pi = Vec::with_capacity(g * g);
    for a in 0..g {
        let base = classes[class_of_element[a]][0];
        for b in 0..g {
            let targets = &classes[class_of_element[b]];
            let mut images = Vec::with_capacity(x_size);
            for &q in targets {
                let r = relabel[sol.theta(base, q)];
                if r % g != group.mul(group.inv(a), b) {
                    return Err(Error::Invariant(format!(
                        "theta of ({a}) does not act as left translation on ({b})"
                    )));
                }
                images.push(r / g);
            }
            pi.push(Permutation::new(images)?);
        }
    }
    let cocycle = Cocycle::new(&group, x_size, pi)?;
    let rebuilt = extension_construction(x_size, &group, &cocycle)?;
    if sol.relabel(&relabel)? != rebuilt {
        return Err(Error::Invariant("decomposition does not round-trip".into()));
    }
    Ok(Decomposition {
        x_size,
        group,
        cocycle,
        relabel,
    })
}

/// The extension with `π_{a,b} = σ_{a⁻¹b} ∘ σ_b⁻¹`.
pub fn sigma_construction(
    x_size: usize,
    group: &CayleyGroup,
    sigma: &SigmaFamily,
) -> Result<Solution> {
    if sigma.x_size != x_size {
        return Err(Error::DegreeMismatch {
            expected: x_size,
            found: sigma.x_size,
        });
    }
    let cocycle = sigma.cocycle(group)?;
    let sol = extension_construction(x_size, group, &cocycle)?;
    if x_size > 0 && sol.is_involutive() != group.is_elementary_abelian_2() {
        return Err(Error::Invariant(
            "involutivity does not match the elementary abelian 2-group criterion".into(),
        ));
    }
    Ok(sol)
}

/// The solution with cyclic associated group `⟨α⟩` having `m` orbits of
/// size `n`: `α(x_{i,j}) = x_{i,j+1}` and `θ_{x_{i,j}} = α^{(1-j) mod n}`.
pub fn cyclic_solution(m: usize, n: usize) -> Result<Solution> {
    if m == 0 || n == 0 {
        return Err(Error::Precondition("m and n must be positive".into()));
    }
    let size = m * n;
    let alpha = Permutation::from_images_unchecked(
        (0..size).map(|k| (k / n) * n + (k % n + 1) % n).collect(),
    );
    let mut theta = Vec::with_capacity(size * size);
    for k in 0..size {
        let j = (k % n) as i64;
        let exp = (1 - j).rem_euclid(n as i64);
        theta.extend_from_slice(alpha.pow(exp).images());
    }
    let sol = Solution::left_zero(size, theta)
        .map_err(|e| Error::Invariant(format!("cyclic construction failed: {e}")))?;
    let group = sol.assoc_group()?;
    if group.order() != n || group.orbits().len() != m || !group.contains(&alpha) {
        return Err(Error::Invariant(
            "associated group is not ⟨α⟩ with m orbits".into(),
        ));
    }
    Ok(sol)
}

/// `s(x, y) = (x·y, f(y))` for an idempotent endomorphism `f`.
pub fn endo_solution(s: &Semigroup, f: &[usize]) -> Result<RawTables> {
    let n = s.n();
    if !s.is_endomorphism(f) {
        return Err(Error::Precondition("f is not an endomorphism".into()));
    }
    if (0..n).any(|x| f[f[x]] != f[x]) {
        return Err(Error::Precondition("f is not idempotent".into()));
    }
    let theta = (0..n * n).map(|k| f[k % n]).collect();
    let raw = RawTables::new(n, s.table().to_vec(), theta)?;
    if !raw.verify_pentagon() {
        return Err(Error::Invariant(
            "endomorphism tables fail the pentagon check".into(),
        ));
    }
    Ok(raw)
}

/// `s(x, y) = (f(x), g(y))` for idempotent commuting maps `f`, `g`.
pub fn proj_solution(x_size: usize, f: &[usize], g: &[usize]) -> Result<RawTables> {
    let n = x_size;
    if f.len() != n || g.len() != n || f.iter().chain(g).any(|&v| v >= n) {
        return Err(Error::Precondition(
            "maps must be defined on the whole set".into(),
        ));
    }
    if (0..n).any(|x| f[f[x]] != f[x] || g[g[x]] != g[x]) {
        return Err(Error::Precondition("maps must be idempotent".into()));
    }
    if (0..n).any(|x| f[g[x]] != g[f[x]]) {
        return Err(Error::Precondition("maps must commute".into()));
    }
    let product = (0..n * n).map(|k| f[k / n]).collect();
    let theta = (0..n * n).map(|k| g[k % n]).collect();
    let raw = RawTables::new(n, product, theta)?;
    if !raw.verify_pentagon() {
        return Err(Error::Invariant(
            "projection tables fail the pentagon check".into(),
        ));
    }
    Ok(raw)
}

/// `s(x, y) = (x, x + y)` on `(Z/2)^k`, points encoded as bit vectors.
pub fn ea2_solution(k: usize) -> Solution {
    let n = 1usize << k;
    let theta = (0..n * n).map(|c| (c / n) ^ (c % n)).collect();
    let sol = Solution::left_zero(n, theta).expect("elementary abelian 2-group solution");
    debug_assert!(sol.is_bijective() && sol.is_involutive());
    sol
}

/// Witness that an irretractable solution is isomorphic to the group
/// solution of its associated group.
#[derive(Debug, Clone)]
pub struct ClassifWitness {
    /// Abstract associated group; ids are indices into `perm_group.elements()`.
    pub group: CayleyGroup,
    pub perm_group: PermGroup,
    /// The point whose theta row is the identity.
    pub base_point: usize,
    /// `g(z) ↦ g⁻¹`, onto the group solution of the opposite group.
    pub to_opposite: Vec<usize>,
    /// `g(z) ↦ g`, onto the group solution of `group`.
    pub to_group: Vec<usize>,
}

/// Builds the isomorphism onto `(𝒢, s_𝒢)` through the opposite group, then
/// transports it along inversion. Each step is verified.
pub fn classif_isomorphism(sol: &Solution) -> Result<ClassifWitness> {
    if !is_irretractable(sol)? {
        return Err(Error::Precondition("solution is retractable".into()));
    }
    let perm_group = sol.assoc_group()?;
    let group = perm_group.cayley();
    let n = sol.n();
    let base_point = (0..n)
        .find(|&x| sol.theta_row(x).iter().enumerate().all(|(i, &v)| i == v))
        .ok_or_else(|| Error::Invariant("no point with identity theta".into()))?;
    let opposite = group.opposite();
    let mut to_opposite = vec![usize::MAX; n];
    for (id, g) in perm_group.elements().iter().enumerate() {
        to_opposite[g.apply(base_point)] = group.inv(id);
    }
    let op_solution = group_solution_of(&opposite)?;
    if !sol.is_isomorphism(&to_opposite, &op_solution) {
        return Err(Error::Invariant(
            "g(z) -> g^-1 is not an isomorphism onto the opposite group solution".into(),
        ));
    }
    let inversion: Vec<usize> = (0..n).map(|a| group.inv(a)).collect();
    if !opposite.is_isomorphism(&inversion, &group) {
        return Err(Error::Invariant(
            "inversion is not an isomorphism from the opposite group".into(),
        ));
    }
    let g_solution = group_solution_of(&group)?;
    if !op_solution.is_isomorphism(&inversion, &g_solution) {
        return Err(Error::Invariant(
            "inversion does not transport the group solutions".into(),
        ));
    }
    let to_group: Vec<usize> = to_opposite.iter().map(|&a| inversion[a]).collect();
    if !sol.is_isomorphism(&to_group, &g_solution) {
        return Err(Error::Invariant(
            "composite map is not an isomorphism".into(),
        ));
    }
    Ok(ClassifWitness {
        group,
        perm_group,
        base_point,
        to_opposite,
        to_group,
    })
}

/// Rebuilds a commutative non-degenerate solution from its own data: the
/// underlying semigroup, the retract congruence, the theta rows as
/// generators and the class of a point with identity theta.
pub fn reconstruct_via_cosimpo(sol: &Solution) -> Result<Solution> {
    sol.require_commutative_non_degenerate()?;
    let s = sol.semigroup();
    let parts: Partition = retract(sol)?.classes().clone();
    let c = s.congruence(parts)?;
    let gens = (0..sol.n())
        .map(|x| sol.theta_perm(x))
        .collect::<Result<Vec<_>>>()?;
    let z = (0..sol.n())
        .find(|&x| sol.theta_row(x).iter().enumerate().all(|(i, &v)| i == v))
        .ok_or_else(|| Error::Invariant("no point with identity theta".into()))?;
    cosimpo_construction(&s, &c, &gens, c.class_of(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::left_group;

    fn spec(s: &str) -> GroupSpec {
        GroupSpec::parse(s).unwrap()
    }

    #[test]
    fn group_spec_grammar() {
        assert_eq!(spec("C4"), GroupSpec::Cyclic(4));
        assert_eq!(spec("C2xC2").resolve().unwrap().order(), 4);
        assert_eq!(spec("C3:C2").resolve().unwrap().order(), 6);
        assert!(!spec("C3:C2").resolve().unwrap().is_abelian());
        assert_eq!(spec("C7:C3").resolve().unwrap().order(), 21);
        assert!(GroupSpec::parse("C5:C3").is_err());
        assert!(GroupSpec::parse("C0").is_err());
        assert!(GroupSpec::parse("Z4").is_err());
        assert_eq!(spec("C2xC2xC2").to_string(), "C2xC2xC2");
        assert_eq!(semidirect_multiplier(7, 3), Some(2));
        assert_eq!(semidirect_multiplier(3, 2), Some(2));
    }

    #[test]
    fn order_eight_groups_are_distinct() {
        let names = ["C8", "C4xC2", "C2xC2xC2", "D4", "Q8"];
        let gs: Vec<CayleyGroup> = names.iter().map(|n| spec(n).resolve().unwrap()).collect();
        for i in 0..5 {
            assert_eq!(identify_group(&gs[i]), names[i]);
            for j in 0..i {
                assert!(gs[i].isomorphism_to(&gs[j]).is_none());
            }
        }
    }

    #[test]
    fn group_solution_examples() {
        assert_eq!(group_solution(&spec("C1")).unwrap(), Solution::identity(1));
        let c3 = group_solution(&spec("C3")).unwrap();
        assert_eq!(c3.apply(1, 2), (1, 1));
        let s3 = group_solution(&spec("C3:C2")).unwrap();
        assert_eq!(s3.n(), 6);
        assert!(is_irretractable(&s3).unwrap());
    }

    #[test]
    fn cosimpo_examples() {
        let s = Semigroup::left_zero(3);
        let c = s.congruence(Partition::whole(3)).unwrap();
        assert_eq!(
            cosimpo_construction(&s, &c, &[], 0).unwrap(),
            Solution::identity(3)
        );

        let lg = left_group(2, &CayleyGroup::cyclic(2)).unwrap();
        let c = lg
            .congruence(Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap())
            .unwrap();
        let lift = Permutation::new(vec![2, 3, 0, 1]).unwrap();
        let sol = cosimpo_construction(&lg, &c, &[lift], 0).unwrap();
        let p = sol.profile().unwrap();
        assert!(p.commutative && p.non_degenerate && !p.left_zero_underlying);
    }

    #[test]
    fn cosimpo_rejects_each_hypothesis() {
        let s3 = Semigroup::from_group(&spec("C3:C2").resolve().unwrap());
        let c = s3.congruence(Partition::whole(6)).unwrap();
        assert_eq!(
            cosimpo_construction(&s3, &c, &[], 0),
            Err(Error::Hypothesis("semigroup is weak commutative"))
        );
        let z2 = Semigroup::cyclic_group(2);
        let c = z2.congruence(Partition::singletons(2)).unwrap();
        assert_eq!(
            cosimpo_construction(&z2, &c, &[], 0),
            Err(Error::Hypothesis("quotient is a left-zero semigroup"))
        );
        let lz = Semigroup::left_zero(3);
        let c = lz.congruence(Partition::singletons(3)).unwrap();
        let transposition = Permutation::new(vec![1, 0, 2]).unwrap();
        assert_eq!(
            cosimpo_construction(&lz, &c, &[transposition], 0),
            Err(Error::Hypothesis("group acts semi-regularly"))
        );
        let lz4 = Semigroup::left_zero(4);
        let c = lz4.congruence(Partition::singletons(4)).unwrap();
        let swap = Permutation::new(vec![1, 0, 3, 2]).unwrap();
        assert_eq!(
            cosimpo_construction(&lz4, &c, std::slice::from_ref(&swap), 0),
            Err(Error::Hypothesis("every orbit is a set of representatives"))
        );
        let c = lz4
            .congruence(Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap())
            .unwrap();
        let rot = Permutation::new(vec![1, 2, 3, 0]).unwrap();
        let c4 = lz4.congruence(Partition::singletons(4)).unwrap();
        let s = cosimpo_construction(&lz4, &c4, &[rot], 2).unwrap();
        assert!(s
            .isomorphic(&group_solution(&spec("C4")).unwrap())
            .is_some());
        // orbits {0,1},{2,3} are transversals of {0,2},{1,3}, blocks map onto blocks
        assert!(cosimpo_construction(&lz4, &c, &[swap], 1).is_ok());
        let z4 = Semigroup::cyclic_group(4);
        let plus1 = Permutation::new(vec![1, 2, 3, 0]).unwrap();
        let lg = left_group(2, &CayleyGroup::cyclic(2)).unwrap();
        let c = lg
            .congruence(Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap())
            .unwrap();
        assert!(!z4.is_automorphism(&plus1));
        assert_eq!(
            cosimpo_construction(&lg, &c, &[Permutation::new(vec![1, 0, 2, 3]).unwrap()], 0),
            Err(Error::Hypothesis("generators are automorphisms"))
        );
    }

    #[test]
    fn cosimpo_block_hypothesis() {
        // orbits {0,1,2,3} under the 4-cycle meet {0,1},{2,3} twice each
        let lz = Semigroup::left_zero(4);
        let c = lz
            .congruence(Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap())
            .unwrap();
        let rot = Permutation::new(vec![1, 2, 3, 0]).unwrap();
        assert_eq!(
            cosimpo_construction(&lz, &c, &[rot], 0),
            Err(Error::Hypothesis("every orbit is a set of representatives"))
        );
        // transversal orbits but classes not permuted as blocks
        let lz6 = Semigroup::left_zero(6);
        let c = lz6
            .congruence(Partition::new(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap())
            .unwrap();
        let g = Permutation::new(vec![2, 5, 4, 1, 0, 3]).unwrap();
        assert_eq!(
            cosimpo_construction(&lz6, &c, &[g], 0),
            Err(Error::Hypothesis("congruence classes form a block system"))
        );
    }

    #[test]
    fn left_zero_construction_examples() {
        assert_eq!(
            left_zero_construction(3, &[], &[0, 1, 2]).unwrap(),
            Solution::identity(3)
        );
        let rot = Permutation::new(vec![1, 2, 3, 0]).unwrap();
        let s = left_zero_construction(4, &[rot], &[0]).unwrap();
        assert!(s
            .isomorphic(&group_solution(&spec("C4")).unwrap())
            .is_some());
        let swap = Permutation::new(vec![1, 0, 3, 2]).unwrap();
        let s = left_zero_construction(4, std::slice::from_ref(&swap), &[0, 2]).unwrap();
        assert!(s.isomorphic(&cyclic_solution(2, 2).unwrap()).is_some());
        assert!(left_zero_construction(4, std::slice::from_ref(&swap), &[0, 1]).is_err());
        assert!(left_zero_construction(4, &[swap], &[0]).is_err());
        let t = Permutation::new(vec![1, 0, 2]).unwrap();
        assert!(left_zero_construction(3, &[t], &[0, 2]).is_err());
    }

    #[test]
    fn extension_examples() {
        let c3 = spec("C3").resolve().unwrap();
        let one = extension_construction(1, &c3, &Cocycle::trivial(&c3, 1)).unwrap();
        assert_eq!(one, group_solution_of(&c3).unwrap());
        let triv = extension_construction(3, &c3, &Cocycle::trivial(&c3, 3)).unwrap();
        assert_eq!(triv.n(), 9);

        let c2 = CayleyGroup::cyclic(2);
        let sigma = SigmaFamily::new(
            2,
            vec![
                Permutation::identity(2),
                Permutation::new(vec![1, 0]).unwrap(),
            ],
        )
        .unwrap();
        let sol = sigma_construction(2, &c2, &sigma).unwrap();
        assert_eq!(sol.n(), 4);
        assert!(sol.raw().verify_pentagon());
    }

    #[test]
    fn cocycle_law_is_enforced() {
        let c2 = CayleyGroup::cyclic(2);
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let id = Permutation::identity(2);
        // pi_{0,0} = swap alone breaks the law at a = b = c = 0
        let bad = vec![swap, id.clone(), id.clone(), id];
        assert_eq!(
            Cocycle::new(&c2, 2, bad),
            Err(Error::CocycleViolation((0, 0, 0)))
        );
    }

    #[test]
    fn cocycle_text_round_trip() {
        let c2 = CayleyGroup::cyclic(2);
        let sigma = SigmaFamily::parse("2 3\n0 1 2\n1 2 0\n").unwrap();
        assert_eq!(sigma.to_text(), "2 3\n0 1 2\n1 2 0\n");
        let pi = sigma.cocycle(&c2).unwrap();
        assert_eq!(Cocycle::parse(&c2, &pi.to_text()).unwrap(), pi);
        assert!(Cocycle::parse(&CayleyGroup::cyclic(3), &pi.to_text()).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let c3 = group_solution(&spec("C3")).unwrap();
        let d = extension_decompose(&c3).unwrap();
        assert_eq!(d.x_size, 1);
        assert!(d.cocycle.is_trivial());
        assert!(d.group.isomorphism_to(&CayleyGroup::cyclic(3)).is_some());
        let cyc = cyclic_solution(2, 2).unwrap();
        let d = extension_decompose(&cyc).unwrap();
        assert_eq!(d.x_size, 2);
        assert_eq!(d.group.order(), 2);
    }

    #[test]
    fn sigma_involutivity() {
        let mk = |g: &CayleyGroup| {
            let swap = Permutation::new(vec![1, 0]).unwrap();
            let sig = (0..g.order())
                .map(|a| {
                    if a % 2 == 1 {
                        swap.clone()
                    } else {
                        Permutation::identity(2)
                    }
                })
                .collect();
            SigmaFamily::new(2, sig).unwrap()
        };
        let v4 = spec("C2xC2").resolve().unwrap();
        let s = sigma_construction(2, &v4, &mk(&v4)).unwrap();
        assert_eq!(s.n(), 8);
        assert!(s.is_involutive());
        let c3 = CayleyGroup::cyclic(3);
        assert!(!sigma_construction(2, &c3, &mk(&c3))
            .unwrap()
            .is_involutive());
    }

    #[test]
    fn cyclic_solution_examples() {
        assert_eq!(cyclic_solution(4, 1).unwrap(), Solution::identity(4));
        let c5 = group_solution(&spec("C5")).unwrap();
        assert!(cyclic_solution(1, 5).unwrap().isomorphic(&c5).is_some());
        let a = cyclic_solution(3, 2).unwrap();
        let b = cyclic_solution(2, 3).unwrap();
        assert!(a.isomorphic(&b).is_none());
        assert!(cyclic_solution(0, 3).is_err());
    }

    #[test]
    fn cyclic_solution_theta_anchor() {
        let s = cyclic_solution(2, 3).unwrap();
        // alpha: 0->1->2->0, 3->4->5->3
        assert_eq!(s.theta_row(0), &[1, 2, 0, 4, 5, 3]);
        assert_eq!(s.theta_row(1), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(s.theta_row(2), &[2, 0, 1, 5, 3, 4]);
        assert_eq!(s.theta_row(3), s.theta_row(0));
    }

    #[test]
    fn endo_and_proj_fixtures() {
        let z2 = Semigroup::cyclic_group(2);
        let raw = endo_solution(&z2, &[0, 0]).unwrap();
        let sol = raw.into_solution().unwrap();
        assert!(!sol.profile().unwrap().non_degenerate);
        assert!(endo_solution(&z2, &[0, 1]).is_ok());
        let z4 = Semigroup::cyclic_group(4);
        assert!(endo_solution(&z4, &[0, 2, 0, 2]).is_err());
        // brute force: idempotent endomorphisms of Z/4
        let mut found = Vec::new();
        for code in 0..256usize {
            let f: Vec<usize> = (0..4).map(|i| (code >> (2 * i)) & 3).collect();
            if z4.is_endomorphism(&f) && (0..4).all(|x| f[f[x]] == f[x]) {
                found.push(f);
            }
        }
        assert_eq!(found, vec![vec![0, 0, 0, 0], vec![0, 1, 2, 3]]);
        for f in &found {
            assert!(endo_solution(&z4, f).unwrap().verify_pentagon());
        }

        let id: Vec<usize> = (0..4).collect();
        let raw = proj_solution(4, &id, &id).unwrap();
        assert_eq!(raw.into_solution().unwrap(), Solution::identity(4));
        assert!(proj_solution(3, &[1, 1, 1], &[1, 1, 1]).is_ok());
        assert!(proj_solution(3, &[1, 2, 0], &[0, 1, 2]).is_err());
        assert!(proj_solution(3, &[0, 0, 2], &[1, 1, 1]).is_err());
    }

    #[test]
    fn ea2_examples() {
        assert_eq!(ea2_solution(0), Solution::identity(1));
        let s1 = ea2_solution(1);
        assert!(s1.is_involutive() && s1.is_bijective());
        let v4 = group_solution(&spec("C2xC2")).unwrap();
        assert!(ea2_solution(2).isomorphic(&v4).is_some());
    }

    #[test]
    fn classif_witness_for_group_solutions() {
        for name in ["C4", "C3:C2", "Q8", "D4"] {
            let sol = group_solution(&spec(name)).unwrap();
            let w = classif_isomorphism(&sol).unwrap();
            assert_eq!(w.group.order(), sol.n());
        }
        assert!(classif_isomorphism(&Solution::identity(2)).is_err());
    }

    #[test]
    fn reconstruction_reproduces_input() {
        let lg = left_group(2, &CayleyGroup::cyclic(2)).unwrap();
        let c = lg
            .congruence(Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap())
            .unwrap();
        let lift = Permutation::new(vec![2, 3, 0, 1]).unwrap();
        let sol = cosimpo_construction(&lg, &c, &[lift], 0).unwrap();
        assert_eq!(reconstruct_via_cosimpo(&sol).unwrap(), sol);
        let cyc = cyclic_solution(3, 2).unwrap();
        assert_eq!(reconstruct_via_cosimpo(&cyc).unwrap(), cyc);
    }
}
