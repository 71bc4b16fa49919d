//! Pairing of projected roots. Each candidate `(alpha_i, beta_j)` is
//! accepted when both `f` and `g` are certified zero there, and rejected as
//! soon as either is certified nonzero.
//!
//! A value is certified zero when its enclosure lies strictly inside
//! `(-epsilon, epsilon)`, and nonzero when its enclosure excludes 0.
//! Refinement proceeds in levels shared by the whole grid: at each level
//! every root still involved in an undecided pair is refined to width
//! `2^-level`, then all undecided pairs are evaluated. Decisions depend only
//! on the level, so results do not depend on the number of workers.

use std::cmp::Ordering;
use std::time::Instant;

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::bound::BoundParams;
use crate::error::{Error, Result};
use crate::exact_arith::{pow2, Ball, RationalInterval};
use crate::isolation::{IsolatedRoot, RootCursor};
use crate::par;
use crate::poly::{BiPoly, IntRows};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidatePair {
    pub x_root: IsolatedRoot,
    pub y_root: IsolatedRoot,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    /// Grid position: index of the x-root and of the y-root.
    pub i: usize,
    pub j: usize,
    pub x_interval: RationalInterval,
    pub y_interval: RationalInterval,
    pub f_zero: bool,
    pub g_zero: bool,
    /// Refinement level (bits of root width) at which the pair was decided.
    pub decided_at_bits: u64,
    /// Multiplicities of the coordinates in the raw resultants, summed over
    /// the roots merged into this solution.
    pub raw_multiplicity: (u32, u32),
    /// Raw multiplicity divided among the solutions sharing the coordinate,
    /// rounded up.
    pub multiplicity_hint: (u32, u32),
    /// Set when several matched pairs were merged as one multiple root.
    pub cluster_flag: bool,
    /// Grid positions merged into this solution.
    pub members: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Root(Solution),
    NonRoot,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairOutcome {
    pub i: usize,
    pub j: usize,
    pub verdict: Verdict,
    pub decided_at_bits: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchOptions {
    /// Largest refinement level allowed; defaults to
    /// `|epsilon_log2| + 64` plus the evaluation growth of the inputs.
    pub budget_bits: Option<u64>,
    /// Roots in reported solutions are refined to width `2^-report_bits`.
    pub report_bits: u64,
    /// Wall-clock limit, checked once per level.
    pub deadline: Option<Instant>,
}

impl Default for MatchOptions {
    fn default() -> Self {
        MatchOptions {
            budget_bits: None,
            report_bits: 64,
            deadline: None,
        }
    }
}

struct Evaluator {
    rows: [IntRows; 2],
    exact: [BiPoly; 2],
    eps: Rational,
    eps_log2: i64,
}

impl Evaluator {
    fn new(f: &BiPoly, g: &BiPoly, params: &BoundParams) -> Self {
        let (fi, gi) = (f.normalized(), g.normalized());
        Evaluator {
            rows: [IntRows::new(&fi), IntRows::new(&gi)],
            exact: [fi, gi],
            eps: params.epsilon.clone(),
            eps_log2: params.epsilon_log2,
        }
    }

    /// `Some(true)` certified zero, `Some(false)` certified nonzero.
    fn decide(&self, which: usize, x: &RootCursor, y: &RootCursor, level: u64) -> Option<bool> {
        if x.is_exact() && y.is_exact() {
            let (xi, yi) = (x.interval(), y.interval());
            let v = self.exact[which].eval_exact(xi.lo(), yi.lo());
            return Some(v.cmp0() == Ordering::Equal);
        }
        let prec = u32::try_from(level + 32).expect("precision fits in u32");
        let v = self.rows[which].eval_ball(&x.ball(prec), &y.ball(prec));
        if v.excludes_zero() {
            Some(false)
        } else if self.within_eps(&v) {
            Some(true)
        } else {
            None
        }
    }

    fn within_eps(&self, v: &Ball) -> bool {
        let upper = v.abs_upper_ulps();
        if upper == 0 {
            return true;
        }
        // |v| < 2^top
        let top = i64::from(upper.significant_bits()) - i64::from(v.prec());
        if top <= self.eps_log2 {
            return true;
        }
        if top - 1 > self.eps_log2 {
            return false;
        }
        v.strictly_within(&self.eps)
    }
}

fn radius_bits(roots: &[&IsolatedRoot]) -> u32 {
    roots
        .iter()
        .map(|r| {
            let m = r.interval.mag();
            if m <= 1 {
                0
            } else {
                (crate::exact_arith::log2_bound(&m).unwrap() + 1) as u32
            }
        })
        .max()
        .unwrap_or(0)
}

/// Refinement level at which every zero value should certify, and the
/// default budget.
fn schedule_bounds(ev: &Evaluator, sx: &[IsolatedRoot], sy: &[IsolatedRoot], opts: &MatchOptions) -> (u64, u64) {
    let all: Vec<&IsolatedRoot> = sx.iter().chain(sy.iter()).collect();
    let rb = radius_bits(&all);
    let growth = u64::from(ev.rows[0].growth_bits(rb).max(ev.rows[1].growth_bits(rb)));
    let eps_bits = ev.eps_log2.unsigned_abs();
    let zero_level = eps_bits + growth + 16;
    let budget = opts.budget_bits.unwrap_or(eps_bits + growth + 64);
    (zero_level.min(budget), budget)
}

/// Levels: successive halvings of the zero level down to about 64, so each
/// refinement roughly doubles the precision, then widening steps past it
/// until the budget.
fn levels(zero_level: u64, budget: u64) -> Vec<u64> {
    let mut out = vec![zero_level];
    let mut l = zero_level;
    while l / 2 >= 64 {
        l = l.div_ceil(2);
        out.push(l);
    }
    out.reverse();
    let mut extra = 64;
    while zero_level + extra < budget {
        out.push(zero_level + extra);
        extra *= 2;
    }
    if *out.last().unwrap() < budget {
        out.push(budget);
    }
    out
}

#[derive(Clone)]
struct PairState {
    i: usize,
    j: usize,
    flags: [Option<bool>; 2],
}

struct Slot {
    needed: bool,
    cursor: RootCursor,
}

/// Classifies the whole grid `sx x sy`. Outcomes are sorted by `(i, j)`.
pub fn classify_all(
    f: &BiPoly,
    g: &BiPoly,
    sx: &[IsolatedRoot],
    sy: &[IsolatedRoot],
    params: &BoundParams,
    opts: &MatchOptions,
) -> Result<Vec<PairOutcome>> {
    let ev = Evaluator::new(f, g, params);
    let (zero_level, budget) = schedule_bounds(&ev, sx, sy, opts);
    let mut xs: Vec<Slot> = sx.iter().map(|r| Slot { needed: false, cursor: RootCursor::new(r) }).collect();
    let mut ys: Vec<Slot> = sy.iter().map(|r| Slot { needed: false, cursor: RootCursor::new(r) }).collect();
    let mut pending: Vec<PairState> = (0..sx.len())
        .flat_map(|i| (0..sy.len()).map(move |j| PairState { i, j, flags: [None, None] }))
        .collect();
    let mut outcomes = Vec::with_capacity(pending.len());

    for level in levels(zero_level, budget) {
        if pending.is_empty() {
            break;
        }
        if opts.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(Error::Timeout);
        }
        for s in xs.iter_mut().chain(ys.iter_mut()) {
            s.needed = false;
        }
        for p in &pending {
            xs[p.i].needed = true;
            ys[p.j].needed = true;
        }
        let target = level as i64;
        par::for_each_mut(&mut xs, |s| {
            if s.needed {
                s.cursor.refine_to(target);
            }
        });
        par::for_each_mut(&mut ys, |s| {
            if s.needed {
                s.cursor.refine_to(target);
            }
        });
        let updated = par::map(&pending, |p| {
            let mut p = p.clone();
            for which in 0..2 {
                if p.flags[which].is_none() {
                    p.flags[which] = ev.decide(which, &xs[p.i].cursor, &ys[p.j].cursor, level);
                }
                if p.flags[which] == Some(false) {
                    break;
                }
            }
            p
        });
        pending.clear();
        for p in updated {
            let verdict = match p.flags {
                [Some(false), _] | [_, Some(false)] => Some(false),
                [Some(true), Some(true)] => Some(true),
                _ => None,
            };
            match verdict {
                None => pending.push(p),
                Some(root) => outcomes.push(PairOutcome {
                    i: p.i,
                    j: p.j,
                    verdict: if root {
                        Verdict::Root(solution_for(sx, sy, p.i, p.j, level, opts.report_bits))
                    } else {
                        Verdict::NonRoot
                    },
                    decided_at_bits: level,
                }),
            }
        }
    }
    if let Some(p) = pending.first() {
        return Err(Error::RefinementBudgetExceeded {
            i: p.i,
            j: p.j,
            budget_bits: budget,
        });
    }
    outcomes.sort_by_key(|o| (o.i, o.j));
    Ok(outcomes)
}

fn solution_for(sx: &[IsolatedRoot], sy: &[IsolatedRoot], i: usize, j: usize, level: u64, report_bits: u64) -> Solution {
    let width = pow2(-(report_bits as i64));
    Solution {
        i,
        j,
        x_interval: sx[i].refine(&width).interval,
        y_interval: sy[j].refine(&width).interval,
        f_zero: true,
        g_zero: true,
        decided_at_bits: level,
        raw_multiplicity: (sx[i].raw_multiplicity, sy[j].raw_multiplicity),
        multiplicity_hint: (sx[i].raw_multiplicity, sy[j].raw_multiplicity),
        cluster_flag: false,
        members: vec![(i, j)],
    }
}

/// Certifies one candidate pair.
pub fn classify_pair(
    f: &BiPoly,
    g: &BiPoly,
    pair: &CandidatePair,
    params: &BoundParams,
    opts: &MatchOptions,
) -> Result<Verdict> {
    let sx = [pair.x_root.clone()];
    let sy = [pair.y_root.clone()];
    let out = classify_all(f, g, &sx, &sy, params, opts).map_err(|e| match e {
        Error::RefinementBudgetExceeded { budget_bits, .. } => Error::RefinementBudgetExceeded {
            i: pair.i,
            j: pair.j,
            budget_bits,
        },
        other => other,
    })?;
    Ok(match out.into_iter().next().map(|o| o.verdict) {
        Some(Verdict::Root(mut s)) => {
            s.i = pair.i;
            s.j = pair.j;
            s.members = vec![(pair.i, pair.j)];
            Verdict::Root(s)
        }
        _ => Verdict::NonRoot,
    })
}

/// All certified common roots, sorted by grid position.
pub fn match_all(
    f: &BiPoly,
    g: &BiPoly,
    sx: &[IsolatedRoot],
    sy: &[IsolatedRoot],
    params: &BoundParams,
    opts: &MatchOptions,
) -> Result<Vec<Solution>> {
    Ok(classify_all(f, g, sx, sy, params, opts)?
        .into_iter()
        .filter_map(|o| match o.verdict {
            Verdict::Root(s) => Some(s),
            Verdict::NonRoot => None,
        })
        .collect())
}

/// Whether two roots of the same projection are closer than `eps`, judged
/// by an upper bound on the distance between their enclosures.
fn coordinates_close(roots: &[IsolatedRoot], a: usize, b: usize, params: &BoundParams) -> bool {
    if a == b {
        return true;
    }
    let (lo, hi) = if a < b { (&roots[a], &roots[b]) } else { (&roots[b], &roots[a]) };
    let gap_lower = Rational::from(hi.interval.lo() - lo.interval.hi()).max(Rational::new());
    if gap_lower >= params.epsilon {
        return false;
    }
    let bits = 2 - params.epsilon_log2;
    let mut cl = RootCursor::new(lo);
    let mut ch = RootCursor::new(hi);
    cl.refine_to(bits);
    ch.refine_to(bits);
    let gap_upper = Rational::from(ch.interval().hi() - cl.interval().lo());
    gap_upper < params.epsilon
}

/// Merges matched pairs whose coordinates are both within `epsilon` of
/// each other into single multiple roots. `sx` and `sy` are the root lists
/// the solutions index into.
pub fn multiplicity_cluster(
    solutions: Vec<Solution>,
    params: &BoundParams,
    sx: &[IsolatedRoot],
    sy: &[IsolatedRoot],
) -> Vec<Solution> {
    let n = solutions.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for a in 0..n {
        for b in a + 1..n {
            let (sa, sb) = (&solutions[a], &solutions[b]);
            if coordinates_close(sx, sa.i, sb.i, params) && coordinates_close(sy, sa.j, sb.j, params) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[rb.max(ra)] = ra.min(rb);
                }
            }
        }
    }
    let mut merged: Vec<Solution> = Vec::new();
    let mut slot_of = vec![usize::MAX; n];
    for (k, s) in solutions.into_iter().enumerate() {
        let r = find(&mut parent, k);
        if slot_of[r] == usize::MAX {
            slot_of[r] = merged.len();
            merged.push(s);
        } else {
            let m = &mut merged[slot_of[r]];
            m.x_interval = m.x_interval.hull(&s.x_interval);
            m.y_interval = m.y_interval.hull(&s.y_interval);
            m.decided_at_bits = m.decided_at_bits.max(s.decided_at_bits);
            m.cluster_flag = true;
            m.members.extend(s.members);
            m.members.sort_unstable();
        }
    }
    apportion_multiplicities(&mut merged, sx, sy);
    merged
}

/// Fills in raw multiplicities and hints from the members of each solution.
/// A coordinate root shared by `k` solutions contributes `ceil(m / k)` to
/// each, so that two simple roots above one double projection root are
/// reported as simple.
pub fn apportion_multiplicities(solutions: &mut [Solution], sx: &[IsolatedRoot], sy: &[IsolatedRoot]) {
    use std::collections::BTreeSet;
    let coords: Vec<(BTreeSet<usize>, BTreeSet<usize>)> = solutions
        .iter()
        .map(|s| (s.members.iter().map(|m| m.0).collect(), s.members.iter().map(|m| m.1).collect()))
        .collect();
    for (k, s) in solutions.iter_mut().enumerate() {
        let (xs, ys) = &coords[k];
        let raw_x: u32 = xs.iter().map(|&i| sx[i].raw_multiplicity).sum();
        let raw_y: u32 = ys.iter().map(|&j| sy[j].raw_multiplicity).sum();
        let share_x = coords.iter().filter(|(o, _)| !o.is_disjoint(xs)).count() as u32;
        let share_y = coords.iter().filter(|(_, o)| !o.is_disjoint(ys)).count() as u32;
        s.raw_multiplicity = (raw_x, raw_y);
        s.multiplicity_hint = (raw_x.div_ceil(share_x).max(1), raw_y.div_ceil(share_y).max(1));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bound::{compute_params, EpsilonMode};
    use crate::isolation::isolate_real_roots;
    use crate::poly::{UniPoly, Var};
    use crate::resultant::no_extr_res;

    struct Setup {
        f: BiPoly,
        g: BiPoly,
        sx: Vec<IsolatedRoot>,
        sy: Vec<IsolatedRoot>,
        params: BoundParams,
    }

    fn setup(f: BiPoly, g: BiPoly) -> Setup {
        let px = no_extr_res(&f, &g, Var::Y).unwrap();
        let py = no_extr_res(&f, &g, Var::X).unwrap();
        let params = compute_params(&f, &g, &px.square_free, &py.square_free, EpsilonMode::Safe, None).unwrap();
        Setup {
            sx: isolate_real_roots(&px.square_free).unwrap(),
            sy: isolate_real_roots(&py.square_free).unwrap(),
            f,
            g,
            params,
        }
    }

    #[test]
    fn linear_pair_root() {
        let s = setup(
            BiPoly::from_i64_terms(&[(1, 1, 0), (-1, 0, 1)]),
            BiPoly::from_i64_terms(&[(1, 1, 0), (1, 0, 1), (-2, 0, 0)]),
        );
        let pair = CandidatePair {
            x_root: s.sx[0].clone(),
            y_root: s.sy[0].clone(),
            i: 0,
            j: 0,
        };
        let v = classify_pair(&s.f, &s.g, &pair, &s.params, &MatchOptions::default()).unwrap();
        let Verdict::Root(sol) = v else { panic!("expected a root") };
        assert!(sol.x_interval.contains(&Rational::from(1)));
        assert!(sol.y_interval.contains(&Rational::from(1)));
    }

    #[test]
    fn circle_and_diagonal() {
        let s = setup(
            BiPoly::from_i64_terms(&[(1, 2, 0), (1, 0, 2), (-1, 0, 0)]),
            BiPoly::from_i64_terms(&[(1, 1, 0), (-1, 0, 1)]),
        );
        assert_eq!((s.sx.len(), s.sy.len()), (2, 2));
        let out = classify_all(&s.f, &s.g, &s.sx, &s.sy, &s.params, &MatchOptions::default()).unwrap();
        let roots: Vec<(usize, usize)> = out
            .iter()
            .filter(|o| matches!(o.verdict, Verdict::Root(_)))
            .map(|o| (o.i, o.j))
            .collect();
        assert_eq!(roots, vec![(0, 0), (1, 1)]);
        // cross pairs are rejected at the first level
        for o in out.iter().filter(|o| o.i != o.j) {
            assert_eq!(o.verdict, Verdict::NonRoot);
            assert!(o.decided_at_bits <= 64);
        }
    }

    #[test]
    fn worked_example_matches() {
        let s = setup(
            BiPoly::from_i64_terms(&[(1, 2, 0), (-1, 0, 2), (-3, 0, 0)]),
            BiPoly::from_i64_terms(&[(3, 2, 0), (-2, 0, 3), (-1, 0, 0)]),
        );
        let sols = match_all(&s.f, &s.g, &s.sx, &s.sy, &s.params, &MatchOptions::default()).unwrap();
        assert_eq!(sols.len(), 2);
        let sols = multiplicity_cluster(sols, &s.params, &s.sx, &s.sy);
        assert_eq!(sols.len(), 2);
        assert!(sols.iter().all(|s| !s.cluster_flag && s.multiplicity_hint == (1, 1)));
        let y = Rational::from((2273722337i64, 1_000_000_000));
        for sol in &sols {
            assert!((sol.y_interval.midpoint() - &y).abs() < Rational::from((1, 1_000_000_000)));
        }
    }

    #[test]
    fn tangency_hint() {
        let f = BiPoly::from_i64_terms(&[(1, 2, 0), (1, 0, 2), (-1, 0, 0)]);
        let g = BiPoly::from_i64_terms(&[(1, 0, 1), (-1, 0, 0)]);
        let px = no_extr_res(&f, &g, Var::Y).unwrap();
        let py = no_extr_res(&f, &g, Var::X).unwrap();
        let params = compute_params(&f, &g, &px.square_free, &py.square_free, EpsilonMode::Safe, None).unwrap();
        let mut sx = isolate_real_roots(&px.square_free).unwrap();
        let mut sy = isolate_real_roots(&py.square_free).unwrap();
        for r in sx.iter_mut() {
            r.raw_multiplicity = crate::isolation::raw_multiplicity(&px.raw, r).unwrap();
        }
        for r in sy.iter_mut() {
            r.raw_multiplicity = crate::isolation::raw_multiplicity(&py.raw, r).unwrap();
        }
        let sols = match_all(&f, &g, &sx, &sy, &params, &MatchOptions::default()).unwrap();
        let sols = multiplicity_cluster(sols, &params, &sx, &sy);
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].multiplicity_hint, (2, 2));
        assert!(sols[0].x_interval.contains(&Rational::new()));
        assert!(sols[0].y_interval.contains(&Rational::from(1)));
    }

    #[test]
    fn clustering_merges_close_pairs() {
        // roots 0 and 1/1000 in both coordinates, with a coarse manual threshold
        let px = UniPoly::from_i64(Var::X, &[0, -1, 1000]);
        let py = UniPoly::from_i64(Var::Y, &[0, -1, 1000]);
        let sx = isolate_real_roots(&px).unwrap();
        let sy = isolate_real_roots(&py).unwrap();
        let f = BiPoly::from_uni(&px);
        let g = BiPoly::from_uni(&py);
        let mut params = compute_params(&f, &g, &px, &py, EpsilonMode::Safe, None).unwrap();
        let sols = match_all(&f, &g, &sx, &sy, &params, &MatchOptions::default()).unwrap();
        assert_eq!(sols.len(), 4);
        assert_eq!(multiplicity_cluster(sols.clone(), &params, &sx, &sy).len(), 4);
        params.epsilon = Rational::from((1, 100));
        params.epsilon_log2 = -7;
        let merged = multiplicity_cluster(sols, &params, &sx, &sy);
        assert_eq!(merged.len(), 1);
        assert!(merged[0].cluster_flag);
        assert_eq!(merged[0].members.len(), 4);
        assert_eq!(merged[0].multiplicity_hint, (2, 2));
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let s = setup(
            BiPoly::from_i64_terms(&[(1, 2, 0), (1, 0, 2), (-1, 0, 0)]),
            BiPoly::from_i64_terms(&[(1, 1, 0), (-1, 0, 1)]),
        );
        let opts = MatchOptions {
            budget_bits: Some(8),
            report_bits: 64,
            deadline: None,
        };
        let err = match_all(&s.f, &s.g, &s.sx, &s.sy, &s.params, &opts).unwrap_err();
        assert!(matches!(err, Error::RefinementBudgetExceeded { budget_bits: 8, .. }));
    }
}
