//! Retraction of commutative non-degenerate solutions: the quotient by
//! `x ~ y ⟺ θ_x = θ_y`, irretractability, and the structural laws that
//! relate the retraction to the associated permutation group.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Partition;
use crate::solution::{RawTables, Solution};

/// The retract relation of a solution together with the quotient solution.
/// Classes are ordered by their minimal member, which is also the carrier
/// order of the quotient.
#[derive(Debug, Clone)]
pub struct RetractionData {
    classes: Partition,
    quotient: Solution,
}

impl RetractionData {
    pub fn classes(&self) -> &Partition {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.classes.class_of(x)
    }

    pub fn quotient(&self) -> &Solution {
        &self.quotient
    }

    pub fn into_quotient(self) -> Solution {
        self.quotient
    }
}

impl fmt::Display for RetractionData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "retract classes: {}", self.classes)?;
        writeln!(f, "retraction size: {}", self.quotient.n())?;
        write!(f, "{}", self.quotient)
    }
}

/// Computes `Ret(S, s)`. Well-definedness of the quotient tables is checked
/// against every representative.
pub fn retract(sol: &Solution) -> Result<RetractionData> {
    sol.require_commutative_non_degenerate()?;
    let classes = sol.theta_partition();
    let n = sol.n();
    let k = classes.len();
    let mut product = vec![usize::MAX; k * k];
    let mut theta = vec![usize::MAX; k * k];
    for x in 0..n {
        for y in 0..n {
            let cell = classes.class_of(x) * k + classes.class_of(y);
            let p = classes.class_of(sol.mul(x, y));
            let t = classes.class_of(sol.theta(x, y));
            for (table, v, what) in [(&mut product, p, "product"), (&mut theta, t, "theta")] {
                if table[cell] == usize::MAX {
                    table[cell] = v;
                } else if table[cell] != v {
                    return Err(Error::Invariant(format!(
                        "retraction {what} is not well defined at ({x}, {y})"
                    )));
                }
            }
        }
    }
    let quotient = Solution::new(RawTables::new(k, product, theta)?)
        .map_err(|e| Error::Invariant(format!("retraction is not a solution: {e}")))?;
    if !quotient.is_left_zero() {
        return Err(Error::Invariant(
            "retraction semigroup is not left-zero".into(),
        ));
    }
    if quotient.require_commutative_non_degenerate().is_err() {
        return Err(Error::Invariant(
            "retraction is not commutative and non-degenerate".into(),
        ));
    }
    Ok(RetractionData { classes, quotient })
}

/// All theta rows pairwise distinct. Cross-checked against regularity of
/// the associated group.
pub fn is_irretractable(sol: &Solution) -> Result<bool> {
    sol.require_commutative_non_degenerate()?;
    let distinct = sol.theta_partition().len() == sol.n();
    let regular = sol.assoc_group()?.is_regular();
    if distinct != regular {
        return Err(Error::Invariant(format!(
            "irretractable = {distinct} but regular action = {regular}"
        )));
    }
    Ok(distinct)
}

/// Sizes relating a solution, its associated group and its retraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalityReport {
    pub carrier: usize,
    pub group_order: usize,
    pub retraction: usize,
    pub class_sizes: Vec<usize>,
}

/// Checks `|Ret| = |𝒢|` and that every class has `|S| / |𝒢|` elements.
pub fn check_cardinalities(sol: &Solution) -> Result<CardinalityReport> {
    let ret = retract(sol)?;
    let group_order = sol.assoc_group()?.order();
    let report = CardinalityReport {
        carrier: sol.n(),
        group_order,
        retraction: ret.quotient.n(),
        class_sizes: ret.classes.classes().iter().map(Vec::len).collect(),
    };
    if report.retraction != group_order {
        return Err(Error::Invariant(format!(
            "|Ret| = {} but |G| = {group_order}",
            report.retraction
        )));
    }
    if let Some(c) = ret
        .classes
        .classes()
        .iter()
        .find(|c| c.len() * group_order != sol.n())
    {
        return Err(Error::Invariant(format!(
            "retract class {c:?} has size {}, expected {}",
            c.len(),
            sol.n() / group_order
        )));
    }
    Ok(report)
}

/// Iterates the retraction to a fixpoint; the result starts with `sol`.
pub fn retract_tower(sol: &Solution) -> Result<Vec<Solution>> {
    let mut tower = vec![sol.clone()];
    loop {
        let top = tower.last().expect("non-empty");
        let ret = retract(top)?;
        if ret.quotient.n() == top.n() {
            break;
        }
        tower.push(ret.quotient);
        if tower.len() > 2 {
            return Err(Error::Invariant(
                "retraction of a solution is itself retractable".into(),
            ));
        }
    }
    Ok(tower)
}

/// For each orbit `Z` of the associated group, the map `z ↦ z̄` from the
/// restriction to `Z` onto the retraction, verified as an isomorphism.
/// Entry `k` lists the images of the members of the `k`-th orbit in
/// increasing order.
pub fn orbit_retract_iso(sol: &Solution) -> Result<Vec<Vec<usize>>> {
    sol.require_commutative_non_degenerate()?;
    if !sol.is_left_zero() {
        return Err(Error::Precondition(
            "underlying semigroup is not left-zero".into(),
        ));
    }
    let ret = retract(sol)?;
    let orbits = sol.assoc_group()?.orbits();
    let mut witnesses = Vec::with_capacity(orbits.len());
    for orbit in orbits.classes() {
        let sub = sol.restrict(orbit)?;
        let phi: Vec<usize> = orbit.iter().map(|&z| ret.class_of(z)).collect();
        if !sub.is_isomorphism(&phi, &ret.quotient) {
            return Err(Error::Invariant(format!(
                "orbit {orbit:?} is not isomorphic to the retraction via z -> class(z)"
            )));
        }
        witnesses.push(phi);
    }
    Ok(witnesses)
}
