//! Exhaustive census of commutative non-degenerate solutions on left-zero
//! semigroups of a given size, up to isomorphism.
//!
//! On a left-zero semigroup such a solution is a table `T[x][y] = θ_x(y)`
//! with permutation rows subject to `T[T[x][y]][T[x][z]] = T[y][z]`. The
//! search assigns single cells and propagates that identity in all four
//! directions, together with the all-different constraint on rows. The
//! first row is fixed to one representative per conjugacy class refined by
//! the length of the cycle through `0`; each such choice seeds an
//! independent task. Tasks run in parallel under the `parallel` feature and
//! their results are merged in task order, deduplicated, canonicalized and
//! sorted, so the output does not depend on scheduling.

use std::collections::HashMap;
use std::fmt;

use crate::construct::{
    classif_isomorphism, cyclic_solution, extension_construction, extension_decompose,
    group_solution, identify_group, reconstruct_via_cosimpo, GroupSpec,
};
use crate::error::{Error, Result};
use crate::retraction::{check_cardinalities, is_irretractable, retract_tower};
use crate::solution::Solution;

/// Largest size accepted even with `allow_large`.
pub const HARD_MAX_N: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

/// Order in which branch values are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueOrder {
    Ascending,
    Descending,
}

#[derive(Debug, Clone)]
pub struct CensusConfig {
    /// Restrict the first row to conjugacy representatives.
    pub symmetry_breaking: bool,
    /// Split the search into at least this many tasks when possible.
    pub partitions: usize,
    pub max_n: usize,
    /// Permit `max_n < n <= HARD_MAX_N`.
    pub allow_large: bool,
    pub execution: Execution,
    /// Worker threads for parallel execution; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub value_order: ValueOrder,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            symmetry_breaking: true,
            partitions: 0,
            max_n: 9,
            allow_large: false,
            execution: if cfg!(feature = "parallel") {
                Execution::Parallel
            } else {
                Execution::Sequential
            },
            jobs: None,
            value_order: ValueOrder::Ascending,
        }
    }
}

impl CensusConfig {
    pub fn sequential() -> Self {
        CensusConfig {
            execution: Execution::Sequential,
            ..CensusConfig::default()
        }
    }
}

/// Per-representative data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepInfo {
    pub group_order: usize,
    pub group_tag: String,
    pub orbit_sizes: Vec<usize>,
    pub irretractable: bool,
    pub cyclic_group: bool,
}

impl RepInfo {
    pub fn orbit_count(&self) -> usize {
        self.orbit_sizes.len()
    }
}

#[derive(Debug, Clone)]
pub struct CensusResult {
    pub n: usize,
    pub representatives: Vec<Solution>,
    pub info: Vec<RepInfo>,
    /// Labelled solutions reached by the search before deduplication.
    pub labelled: usize,
    pub tasks: usize,
}

impl CensusResult {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    pub fn irretractable_count(&self) -> usize {
        self.info.iter().filter(|i| i.irretractable).count()
    }

    pub fn irretractable(&self) -> impl Iterator<Item = (&Solution, &RepInfo)> {
        self.representatives
            .iter()
            .zip(&self.info)
            .filter(|(_, i)| i.irretractable)
    }

    /// `n=<n> count=<k> irretractable=<m>`
    pub fn machine_line(&self) -> String {
        format!(
            "n={} count={} irretractable={}",
            self.n,
            self.count(),
            self.irretractable_count()
        )
    }
}

impl fmt::Display for CensusResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, info) in self.info.iter().enumerate() {
            writeln!(
                f,
                "#{k}: group {} (order {}), orbits {:?}{}",
                info.group_tag,
                info.group_order,
                info.orbit_sizes,
                if info.irretractable {
                    ", irretractable"
                } else {
                    ""
                }
            )?;
        }
        write!(f, "{}", self.machine_line())
    }
}

const UNSET: u8 = u8::MAX;

/// Cell-level search state over `T[x][y]`.
#[derive(Clone)]
struct Search {
    n: usize,
    t: Vec<u8>,
    /// `inv[x*n + v]` is the column holding `v` in row `x`.
    inv: Vec<u8>,
    used: Vec<u32>,
    filled: Vec<u8>,
    trail: Vec<u16>,
    queue: Vec<u16>,
}

impl Search {
    fn new(n: usize) -> Self {
        Search {
            n,
            t: vec![UNSET; n * n],
            inv: vec![UNSET; n * n],
            used: vec![0; n],
            filled: vec![0; n],
            trail: Vec::with_capacity(n * n),
            queue: Vec::with_capacity(n * n),
        }
    }

    #[inline]
    fn get(&self, x: usize, y: usize) -> u8 {
        self.t[x * self.n + y]
    }

    #[inline]
    fn set(&mut self, x: usize, y: usize, v: u8) -> bool {
        let cell = x * self.n + y;
        let cur = self.t[cell];
        if cur != UNSET {
            return cur == v;
        }
        if self.used[x] & (1 << v) != 0 {
            return false;
        }
        self.t[cell] = v;
        self.inv[x * self.n + v as usize] = y as u8;
        self.used[x] |= 1 << v;
        self.filled[x] += 1;
        self.trail.push(cell as u16);
        self.queue.push(cell as u16);
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let cell = self.trail.pop().expect("non-empty trail") as usize;
            let (x, v) = (cell / self.n, self.t[cell]);
            self.t[cell] = UNSET;
            self.inv[x * self.n + v as usize] = UNSET;
            self.used[x] &= !(1 << v);
            self.filled[x] -= 1;
        }
        self.queue.clear();
    }

    /// `C(x, y, z)` with `T[x][y]` and `T[x][z]` known.
    #[inline]
    fn check(&mut self, x: usize, y: usize, z: usize) -> bool {
        let a = self.get(x, y) as usize;
        let b = self.get(x, z) as usize;
        let yz = self.get(y, z);
        if yz != UNSET {
            return self.set(a, b, yz);
        }
        let ab = self.get(a, b);
        if ab != UNSET {
            return self.set(y, z, ab);
        }
        true
    }

    fn propagate(&mut self) -> bool {
        while let Some(cell) = self.queue.pop() {
            if !self.process(cell as usize) {
                self.queue.clear();
                return false;
            }
        }
        true
    }

    fn process(&mut self, cell: usize) -> bool {
        let n = self.n;
        let (r, c) = (cell / n, cell % n);
        let v = self.t[cell] as usize;
        // (r, c) as (x, y) or (x, z)
        for c2 in 0..n {
            if self.get(r, c2) == UNSET {
                // T[r][c2] = inv_v(T[c][c2])
                let w = self.get(c, c2);
                if w != UNSET {
                    let b = self.inv[v * n + w as usize];
                    if b != UNSET && !self.set(r, c2, b) {
                        return false;
                    }
                }
                continue;
            }
            if !self.check(r, c, c2) || (c2 != c && !self.check(r, c2, c)) {
                return false;
            }
        }
        // (r, c) as (y, z)
        for x in 0..n {
            let a = self.get(x, r);
            if a == UNSET {
                continue;
            }
            let a = a as usize;
            let b = self.get(x, c);
            let ok = if b != UNSET {
                self.set(a, b as usize, v as u8)
            } else {
                let b = self.inv[a * n + v];
                b == UNSET || self.set(x, c, b)
            };
            if !ok {
                return false;
            }
        }
        // (r, c) as (a, b) = (T[x][y], T[x][z])
        for x in 0..n {
            let y = self.inv[x * n + r];
            if y == UNSET {
                continue;
            }
            let y = y as usize;
            let z = self.inv[x * n + c];
            let ok = if z != UNSET {
                self.set(y, z as usize, v as u8)
            } else {
                let z = self.inv[y * n + v];
                z == UNSET || self.set(x, z as usize, c as u8)
            };
            if !ok {
                return false;
            }
        }
        // last free cell of a row
        if self.filled[r] as usize == n - 1 {
            let col = (0..n)
                .find(|&y| self.get(r, y) == UNSET)
                .expect("one free cell");
            let val = (!self.used[r] & ((1u32 << n) - 1)).trailing_zeros() as u8;
            if !self.set(r, col, val) {
                return false;
            }
        }
        true
    }

    /// Unset cell in a fullest non-full row.
    fn branch_cell(&self) -> Option<(usize, usize)> {
        let n = self.n;
        let row = (0..n)
            .filter(|&x| (self.filled[x] as usize) < n)
            .max_by_key(|&x| (self.filled[x], std::cmp::Reverse(x)))?;
        let col = (0..n).find(|&y| self.get(row, y) == UNSET)?;
        Some((row, col))
    }

    fn domain(&self, x: usize, order: ValueOrder) -> Vec<u8> {
        let mut d: Vec<u8> = (0..self.n as u8)
            .filter(|&v| self.used[x] & (1 << v) == 0)
            .collect();
        if order == ValueOrder::Descending {
            d.reverse();
        }
        d
    }

    fn apply(&mut self, decisions: &[(usize, usize, u8)]) -> bool {
        decisions
            .iter()
            .all(|&(x, y, v)| self.set(x, y, v) && self.propagate())
    }

    fn table(&self) -> Vec<usize> {
        self.t.iter().map(|&v| v as usize).collect()
    }
}

type Task = Vec<(usize, usize, u8)>;

/// First-row choices: one representative per (cycle type, length of the
/// cycle through 0), or all of `Sym(n)`.
fn first_rows(n: usize, symmetry_breaking: bool) -> Vec<Vec<usize>> {
    if !symmetry_breaking {
        let mut all = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            all.push(p.clone());
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
                break;
            };
            let j = (i..n)
                .rev()
                .find(|&j| p[j] > p[i - 1])
                .expect("successor exists");
            p.swap(i - 1, j);
            p[i..].reverse();
        }
        return all;
    }
    let mut out = Vec::new();
    for parts in integer_partitions(n) {
        let mut lengths = parts.clone();
        lengths.dedup();
        for &first in &lengths {
            let mut order = parts.clone();
            let k = order
                .iter()
                .position(|&l| l == first)
                .expect("part present");
            order.remove(k);
            order.insert(0, first);
            let mut images = vec![0; n];
            let mut start = 0;
            for len in order {
                for i in 0..len {
                    images[start + i] = start + (i + 1) % len;
                }
                start += len;
            }
            out.push(images);
        }
    }
    out
}

/// Partitions of `n` as non-increasing part lists.
fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Expands a task by one branching step. `None` means the task is already
/// complete and cannot be split.
fn expand(n: usize, task: &Task, order: ValueOrder) -> Option<Vec<Task>> {
    let mut s = Search::new(n);
    if !s.apply(task) {
        return Some(Vec::new());
    }
    let (x, y) = s.branch_cell()?;
    let mut children = Vec::new();
    for v in s.domain(x, order) {
        let mark = s.trail.len();
        if s.set(x, y, v) && s.propagate() {
            let mut child = task.clone();
            child.push((x, y, v));
            children.push(child);
        }
        s.undo_to(mark);
    }
    Some(children)
}

fn make_tasks(n: usize, cfg: &CensusConfig) -> Vec<Task> {
    let mut tasks: Vec<Task> = first_rows(n, cfg.symmetry_breaking)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .enumerate()
                .map(|(y, v)| (0, y, v as u8))
                .collect()
        })
        .collect();
    while tasks.len() < cfg.partitions {
        let mut next = Vec::with_capacity(tasks.len() * 2);
        let mut grew = false;
        for t in &tasks {
            match expand(n, t, cfg.value_order) {
                Some(children) => {
                    grew = true;
                    next.extend(children);
                }
                None => next.push(t.clone()),
            }
        }
        if !grew {
            break;
        }
        tasks = next;
    }
    tasks
}

/// Isomorphism-invariant key used before full isomorphism search.
fn fingerprint(sol: &Solution) -> Fingerprint {
    let mut classes = sol.theta_partition().sizes();
    classes.sort_unstable();
    (sol.theta_cycle_types(), classes)
}

type Fingerprint = (Vec<Vec<usize>>, Vec<usize>);

/// Representatives kept so far, bucketed by fingerprint.
#[derive(Default)]
struct Dedup {
    buckets: HashMap<Fingerprint, Vec<usize>>,
    reps: Vec<Solution>,
}

impl Dedup {
    fn insert(&mut self, sol: Solution) {
        let bucket = self.buckets.entry(fingerprint(&sol)).or_default();
        if bucket
            .iter()
            .any(|&k| self.reps[k].isomorphic(&sol).is_some())
        {
            return;
        }
        bucket.push(self.reps.len());
        self.reps.push(sol);
    }
}

struct TaskOutput {
    reps: Vec<Solution>,
    labelled: usize,
    unsound: Option<Vec<usize>>,
}

fn run_task(n: usize, task: &Task, order: ValueOrder) -> TaskOutput {
    let mut out = TaskOutput {
        reps: Vec::new(),
        labelled: 0,
        unsound: None,
    };
    let mut s = Search::new(n);
    if !s.apply(task) {
        return out;
    }
    let mut dedup = Dedup::default();
    dfs(&mut s, order, &mut |table| {
        out.labelled += 1;
        match Solution::left_zero(n, table.clone()) {
            Ok(sol) => dedup.insert(sol),
            Err(_) => {
                out.unsound.get_or_insert(table);
            }
        }
    });
    out.reps = dedup.reps;
    out
}

fn dfs(s: &mut Search, order: ValueOrder, found: &mut dyn FnMut(Vec<usize>)) {
    let Some((x, y)) = s.branch_cell() else {
        found(s.table());
        return;
    };
    for v in s.domain(x, order) {
        let mark = s.trail.len();
        if s.set(x, y, v) && s.propagate() {
            dfs(s, order, found);
        }
        s.undo_to(mark);
    }
}

fn run_all(n: usize, tasks: &[Task], cfg: &CensusConfig) -> Result<Vec<TaskOutput>> {
    let order = cfg.value_order;
    #[cfg(feature = "parallel")]
    if cfg.execution == Execution::Parallel {
        use rayon::prelude::*;
        let work =
            || -> Vec<TaskOutput> { tasks.par_iter().map(|t| run_task(n, t, order)).collect() };
        return match cfg.jobs {
            Some(k) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build()
                    .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
                Ok(pool.install(work))
            }
            None => Ok(work()),
        };
    }
    Ok(tasks.iter().map(|t| run_task(n, t, order)).collect())
}

fn is_cyclic_group(g: &crate::group::CayleyGroup) -> bool {
    (0..g.order()).any(|a| g.element_order(a) == g.order())
}

/// Enumerates all commutative non-degenerate solutions on the left-zero
/// semigroup of size `n`, up to isomorphism.
pub fn enumerate_left_zero(n: usize) -> Result<CensusResult> {
    census(n, &CensusConfig::default())
}

pub fn census(n: usize, cfg: &CensusConfig) -> Result<CensusResult> {
    if n == 0 {
        return Err(Error::Precondition("census size must be positive".into()));
    }
    let cap = if cfg.allow_large {
        HARD_MAX_N
    } else {
        cfg.max_n.min(HARD_MAX_N)
    };
    if n > cap {
        return Err(Error::Budget { n, max: cap });
    }
    let tasks = make_tasks(n, cfg);
    let outputs = run_all(n, &tasks, cfg)?;
    let mut dedup = Dedup::default();
    let mut labelled = 0;
    for out in outputs {
        if let Some(table) = out.unsound {
            return Err(Error::Invariant(format!(
                "propagation accepted a non-solution: {table:?}"
            )));
        }
        labelled += out.labelled;
        for rep in out.reps {
            dedup.insert(rep);
        }
    }
    let mut reps = dedup
        .reps
        .iter()
        .map(Solution::canonical_form)
        .collect::<Result<Vec<_>>>()?;
    reps.sort_by(|a, b| a.raw().theta().cmp(b.raw().theta()));
    let mut info = Vec::with_capacity(reps.len());
    for rep in &reps {
        let p = rep.profile()?;
        if !(p.commutative && p.non_degenerate && p.left_zero_underlying) {
            return Err(Error::Invariant(
                "census representative is not commutative, non-degenerate and left-zero".into(),
            ));
        }
        let group = p.group.expect("non-degenerate");
        let cayley = group.cayley();
        info.push(RepInfo {
            group_order: group.order(),
            group_tag: identify_group(&cayley),
            orbit_sizes: {
                let mut s = group.orbits().sizes();
                s.sort_unstable_by(|a, b| b.cmp(a));
                s
            },
            irretractable: is_irretractable(rep)?,
            cyclic_group: is_cyclic_group(&cayley),
        });
    }
    Ok(CensusResult {
        n,
        representatives: reps,
        info,
        labelled,
        tasks: tasks.len(),
    })
}

/// A named solution predicted for a size.
#[derive(Debug, Clone)]
pub struct Expected {
    pub name: String,
    pub solution: Solution,
    pub irretractable: bool,
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut f = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            f.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        f.push(n);
    }
    f
}

/// The complete list for sizes `p`, `pq` and `p²`; `None` for other sizes.
pub fn predicted_list(n: usize) -> Result<Option<Vec<Expected>>> {
    let named = |name: String, sol: Solution, irr: bool| Expected {
        name,
        solution: sol,
        irretractable: irr,
    };
    let group = |spec: String| -> Result<Expected> {
        let sol = group_solution(&GroupSpec::parse(&spec)?)?;
        Ok(named(format!("group_solution({spec})"), sol, true))
    };
    let cyclic = |m: usize, k: usize| -> Result<Expected> {
        Ok(named(
            format!("cyclic_solution({m},{k})"),
            cyclic_solution(m, k)?,
            false,
        ))
    };
    let identity = named(format!("identity({n})"), Solution::identity(n), n == 1);
    let list = match prime_factors(n)[..] {
        [p] => vec![identity, group(format!("C{p}"))?],
        [q, p] if p == q => vec![
            identity,
            group(format!("C{n}"))?,
            group(format!("C{p}xC{p}"))?,
            cyclic(p, p)?,
        ],
        [q, p] => {
            let mut v = vec![identity, group(format!("C{n}"))?];
            if (p - 1) % q == 0 {
                v.push(group(format!("C{p}:C{q}"))?);
            }
            v.push(cyclic(p, q)?);
            v.push(cyclic(q, p)?);
            v
        }
        _ => return Ok(None),
    };
    Ok(Some(list))
}

#[derive(Debug, Clone)]
pub struct ClassifyReport {
    pub n: usize,
    pub count: usize,
    /// `None` when the size is outside the predicted cases.
    pub expected: Option<Vec<String>>,
    /// Expected name and the index of its matching representative.
    pub matched: Vec<(String, usize)>,
    pub unmatched_expected: Vec<String>,
    pub unmatched_reps: Vec<usize>,
    /// Whether the irretractable representatives are exactly the predicted
    /// group solutions.
    pub irretractable_match: bool,
}

impl ClassifyReport {
    pub fn matches(&self) -> bool {
        self.expected.is_some()
            && self.unmatched_expected.is_empty()
            && self.unmatched_reps.is_empty()
            && self.irretractable_match
    }

    pub fn summary(&self) -> String {
        match &self.expected {
            None => format!("{} solutions; no paper prediction; census only", self.count),
            Some(_) if self.matches() => format!("{} solutions; matches paper list", self.count),
            Some(_) => format!(
                "{} solutions; MISMATCH (unmatched expected {:?}, unmatched representatives {:?})",
                self.count, self.unmatched_expected, self.unmatched_reps
            ),
        }
    }
}

impl fmt::Display for ClassifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, k) in &self.matched {
            writeln!(f, "{name} <-> representative #{k}")?;
        }
        write!(f, "{}", self.summary())
    }
}

/// Pairs census representatives with the predicted list by isomorphism.
pub fn classify_result(result: &CensusResult) -> Result<ClassifyReport> {
    let mut report = ClassifyReport {
        n: result.n,
        count: result.count(),
        expected: None,
        matched: Vec::new(),
        unmatched_expected: Vec::new(),
        unmatched_reps: Vec::new(),
        irretractable_match: false,
    };
    let Some(list) = predicted_list(result.n)? else {
        return Ok(report);
    };
    report.expected = Some(list.iter().map(|e| e.name.clone()).collect());
    let mut taken = vec![false; result.count()];
    let mut irretractable_match = true;
    for e in &list {
        let hit = (0..result.count())
            .find(|&k| !taken[k] && result.representatives[k].isomorphic(&e.solution).is_some());
        match hit {
            Some(k) => {
                taken[k] = true;
                if result.info[k].irretractable != e.irretractable {
                    irretractable_match = false;
                }
                report.matched.push((e.name.clone(), k));
            }
            None => report.unmatched_expected.push(e.name.clone()),
        }
    }
    report.unmatched_reps = (0..result.count()).filter(|&k| !taken[k]).collect();
    report.irretractable_match = irretractable_match && report.unmatched_reps.is_empty();
    Ok(report)
}

pub fn classify_report(n: usize, cfg: &CensusConfig) -> Result<ClassifyReport> {
    classify_result(&census(n, cfg)?)
}

/// One audited statement about one representative.
#[derive(Debug, Clone)]
pub struct AuditLine {
    pub check: &'static str,
    /// Representative index, or `None` for checks over the whole census.
    pub rep: Option<usize>,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct AuditReport {
    pub lines: Vec<AuditLine>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditLine> {
        self.lines.iter().filter(|l| !l.passed)
    }

    fn record(&mut self, check: &'static str, rep: Option<usize>, outcome: Result<String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        self.lines.push(AuditLine {
            check,
            rep,
            passed,
            detail,
        });
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            let who = l.rep.map_or("census".to_string(), |k| format!("#{k}"));
            writeln!(
                f,
                "{} {:<22} {who}: {}",
                if l.passed { "PASS" } else { "FAIL" },
                l.check,
                l.detail
            )?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {failed} failed", self.lines.len())
    }
}

fn fail(msg: String) -> Result<String> {
    Err(Error::Invariant(msg))
}

/// Structural audit of every representative: semi-regularity, the
/// irretractable/regular equivalence, cardinalities, tower length, the
/// isomorphism onto the group solution, and uniqueness per group.
pub fn theorem_audit(result: &CensusResult) -> AuditReport {
    let mut report = AuditReport::default();
    for (k, sol) in result.representatives.iter().enumerate() {
        let rep = Some(k);
        let group = sol.assoc_group();
        report.record(
            "semi-regularity",
            rep,
            group.clone().and_then(|g| {
                if g.is_semiregular() {
                    Ok(format!("group of order {} acts semi-regularly", g.order()))
                } else {
                    fail("associated group is not semi-regular".into())
                }
            }),
        );
        report.record(
            "irretractable-regular",
            rep,
            group.and_then(|g| {
                let irr = is_irretractable(sol)?;
                if irr == g.is_regular() {
                    Ok(format!("irretractable = regular = {irr}"))
                } else {
                    fail(format!(
                        "irretractable = {irr}, regular = {}",
                        g.is_regular()
                    ))
                }
            }),
        );
        report.record(
            "cardinality",
            rep,
            check_cardinalities(sol).map(|c| {
                format!(
                    "|Ret| = |G| = {}, class size {}",
                    c.group_order,
                    c.carrier / c.group_order
                )
            }),
        );
        report.record(
            "tower",
            rep,
            retract_tower(sol).map(|t| format!("length {}", t.len())),
        );
        if result.info.get(k).is_some_and(|i| i.irretractable) {
            report.record(
                "group-solution-iso",
                rep,
                classif_isomorphism(sol).map(|w| format!("witness {:?}", w.to_group)),
            );
        }
    }
    let irr: Vec<usize> = (0..result.count())
        .filter(|&k| result.info[k].irretractable)
        .collect();
    let mut clash = None;
    'outer: for (i, &a) in irr.iter().enumerate() {
        for &b in &irr[..i] {
            let ga = result.representatives[a].assoc_group().map(|g| g.cayley());
            let gb = result.representatives[b].assoc_group().map(|g| g.cayley());
            if let (Ok(ga), Ok(gb)) = (ga, gb) {
                if ga.isomorphism_to(&gb).is_some() {
                    clash = Some((a, b));
                    break 'outer;
                }
            }
        }
    }
    report.record(
        "irretractable-unique",
        None,
        match clash {
            None => Ok(format!(
                "{} irretractable, pairwise distinct groups",
                irr.len()
            )),
            Some((a, b)) => fail(format!("#{a} and #{b} share a group")),
        },
    );
    report
}

/// Rebuilds every representative through the semigroup construction and
/// through the extension decomposition, checking each result is isomorphic
/// to the original.
pub fn construction_round_trips(result: &CensusResult) -> AuditReport {
    let mut report = AuditReport::default();
    for (k, sol) in result.representatives.iter().enumerate() {
        report.record(
            "cosimpo-round-trip",
            Some(k),
            reconstruct_via_cosimpo(sol).and_then(|r| match r.isomorphic(sol) {
                Some(w) => Ok(format!("witness {w:?}")),
                None => fail("reconstruction is not isomorphic".into()),
            }),
        );
        report.record(
            "extension-round-trip",
            Some(k),
            extension_decompose(sol).and_then(|d| {
                let rebuilt = extension_construction(d.x_size, &d.group, &d.cocycle)?;
                match rebuilt.isomorphic(sol) {
                    Some(w) => Ok(format!("|X| = {}, witness {w:?}", d.x_size)),
                    None => fail("rebuilt extension is not isomorphic".into()),
                }
            }),
        );
    }
    report
}
