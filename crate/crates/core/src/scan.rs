//! Range scans over evaluation grids: verification, empirical thresholds,
//! and CSV tables.
//!
//! Grids are sorted and de-duplicated before evaluation. Scans split the grid
//! into contiguous chunks evaluated in parallel; each chunk walks a
//! [`PrimeCursor`](crate::table::PrimeCursor) (and a [`LiStepper`] when the
//! bound needs Li) and chunk summaries are merged in x-order, so results do
//! not depend on thread scheduling.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;

use crate::analytic::LiStepper;
use crate::bounds::{evaluate_point, BoundKind, PointData};
use crate::error::{domain, Error, Result};
use crate::table::{PrimeCursor, PrimeTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grid {
    /// Every integer in range.
    Integers,
    /// `n` geometrically spaced points from `lo` to `hi` inclusive.
    LogSpaced(usize),
    /// Each prime `p` in range and the double just below it.
    PrimeAdjacent,
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grid::Integers => f.write_str("integers"),
            Grid::LogSpaced(n) => write!(f, "log:{n}"),
            Grid::PrimeAdjacent => f.write_str("prime-adjacent"),
        }
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "integers" => Ok(Grid::Integers),
            "prime-adjacent" => Ok(Grid::PrimeAdjacent),
            _ => match s.strip_prefix("log:").map(str::parse::<usize>) {
                Some(Ok(n)) if n > 0 => Ok(Grid::LogSpaced(n)),
                _ => domain(format!("unknown grid {s:?}")),
            },
        }
    }
}

/// Largest double strictly below `x` (for positive finite `x`).
pub fn next_below(x: f64) -> f64 {
    debug_assert!(x > 0.0 && x.is_finite());
    f64::from_bits(x.to_bits() - 1)
}

fn check_range(lo: f64, hi: f64, table: &PrimeTable) -> Result<()> {
    if !(lo >= 2.0) || !(hi >= lo) {
        return domain(format!("scan range must satisfy 2 ≤ lo ≤ hi, got [{lo}, {hi}]"));
    }
    if hi > table.limit() as f64 {
        return Err(Error::OutOfRange {
            x: hi,
            limit: table.limit(),
        });
    }
    Ok(())
}

/// Sorted, de-duplicated union of the grids' points in `[lo, hi]`.
pub fn grid_points(grids: &[Grid], lo: f64, hi: f64, table: &PrimeTable) -> Result<Vec<f64>> {
    check_range(lo, hi, table)?;
    let mut pts = Vec::new();
    for g in grids {
        match *g {
            Grid::Integers => {
                let (a, b) = (lo.ceil() as u64, hi.floor() as u64);
                pts.extend((a..=b).map(|n| n as f64));
            }
            Grid::LogSpaced(n) => {
                if n == 1 || lo == hi {
                    pts.push(lo);
                } else {
                    let ratio = (hi / lo).ln();
                    pts.extend((0..n).map(|i| {
                        if i + 1 == n {
                            hi
                        } else {
                            lo * (ratio * i as f64 / (n - 1) as f64).exp()
                        }
                    }));
                }
            }
            Grid::PrimeAdjacent => {
                let below_lo = next_below(lo).max(0.0);
                for &p in table.primes_in(below_lo, hi)? {
                    let pf = p as f64;
                    let b = next_below(pf);
                    if b >= lo {
                        pts.push(b);
                    }
                    pts.push(pf);
                }
            }
        }
    }
    pts.retain(|&x| x >= lo && x <= hi);
    pts.sort_by(|a, b| a.total_cmp(b));
    pts.dedup();
    Ok(pts)
}

fn grids_label(grids: &[Grid]) -> String {
    grids
        .iter()
        .map(Grid::to_string)
        .collect::<Vec<_>>()
        .join("+")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub x: f64,
    pub margin: f64,
    /// Inside the bound's claimed range.
    pub asserted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub kind: BoundKind,
    pub lo: f64,
    pub hi: f64,
    pub grid: String,
    pub points_evaluated: usize,
    /// Grid points where the expression is undefined (e.g. x = 2 for the sharp form).
    pub points_skipped: usize,
    pub min_margin: f64,
    pub argmin_x: f64,
    /// Every evaluated point with negative margin, ascending.
    pub violations: Vec<Violation>,
    pub near_ties: Vec<f64>,
}

impl ScanResult {
    fn empty(kind: BoundKind) -> Self {
        Self {
            kind,
            lo: f64::NAN,
            hi: f64::NAN,
            grid: String::new(),
            points_evaluated: 0,
            points_skipped: 0,
            min_margin: f64::INFINITY,
            argmin_x: f64::NAN,
            violations: Vec::new(),
            near_ties: Vec::new(),
        }
    }

    fn merge(mut self, other: ScanResult) -> Self {
        self.points_evaluated += other.points_evaluated;
        self.points_skipped += other.points_skipped;
        // Strict comparison keeps the leftmost argmin.
        if other.min_margin < self.min_margin {
            self.min_margin = other.min_margin;
            self.argmin_x = other.argmin_x;
        }
        self.violations.extend(other.violations);
        self.near_ties.extend(other.near_ties);
        self
    }

    pub fn asserted_violations(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.asserted)
    }

    /// 0 when no asserted violation was found, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.asserted_violations().next().is_some() {
            1
        } else {
            0
        }
    }
}

impl fmt::Display for ScanResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let asserted = self.asserted_violations().count();
        write!(
            f,
            "{} on [{}, {}] ({}): {} points, min margin {} at x = {}, {} violations ({} asserted), {} near-ties",
            self.kind,
            self.lo,
            self.hi,
            self.grid,
            self.points_evaluated,
            self.min_margin,
            self.argmin_x,
            self.violations.len(),
            asserted,
            self.near_ties.len()
        )?;
        if self.points_skipped > 0 {
            write!(f, ", {} skipped", self.points_skipped)?;
        }
        Ok(())
    }
}

const CHUNK: usize = 1 << 14;

/// Walks an ascending run of points, producing π, θ and (optionally) Li.
struct PointWalker<'a> {
    cursor: PrimeCursor<'a>,
    li: Option<LiStepper>,
}

impl<'a> PointWalker<'a> {
    fn new(table: &'a PrimeTable, first: f64, with_li: bool) -> Result<Self> {
        let li = if with_li {
            Some(LiStepper::starting_at(first.max(2.0), crate::analytic::DEFAULT_LI_TOL * 1e-2)?)
        } else {
            None
        };
        Ok(Self {
            cursor: PrimeCursor::starting_at(table, first)?,
            li,
        })
    }

    fn at(&mut self, x: f64) -> Result<PointData> {
        let (pi_x, theta_x) = self.cursor.advance_to(x)?;
        let li_x = match &mut self.li {
            Some(s) if x >= 2.0 => Some(s.advance_to(x)?),
            _ => None,
        };
        Ok(PointData {
            x,
            pi_x,
            theta_x,
            li_x,
        })
    }
}

fn scan_chunk(kind: BoundKind, table: &PrimeTable, xs: &[f64]) -> Result<ScanResult> {
    let mut out = ScanResult::empty(kind);
    let Some(&first) = xs.first() else {
        return Ok(out);
    };
    let mut walker = PointWalker::new(table, first, kind.needs_li())?;
    for &x in xs {
        let data = walker.at(x)?;
        let report = match evaluate_point(kind, &data) {
            Ok(r) => r,
            Err(Error::Domain(_)) => {
                out.points_skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        out.points_evaluated += 1;
        if report.margin < out.min_margin {
            out.min_margin = report.margin;
            out.argmin_x = x;
        }
        if report.near_tie {
            out.near_ties.push(x);
        }
        if report.margin < 0.0 {
            out.violations.push(Violation {
                x,
                margin: report.margin,
                asserted: report.asserted,
            });
        }
    }
    Ok(out)
}

/// Evaluate `kind` at every point of an explicit ascending grid.
pub fn scan_points(kind: BoundKind, table: &PrimeTable, xs: &[f64]) -> Result<ScanResult> {
    debug_assert!(xs.windows(2).all(|w| w[0] <= w[1]));
    let parts: Vec<Result<ScanResult>> = xs
        .par_chunks(CHUNK)
        .map(|c| scan_chunk(kind, table, c))
        .collect();
    let mut acc = ScanResult::empty(kind);
    for p in parts {
        acc = acc.merge(p?);
    }
    Ok(acc)
}

/// Scan `kind` over the union of `grids` on `[lo, hi]`.
pub fn verify(
    kind: BoundKind,
    table: &PrimeTable,
    lo: f64,
    hi: f64,
    grids: &[Grid],
) -> Result<ScanResult> {
    let xs = grid_points(grids, lo, hi, table)?;
    let mut r = scan_points(kind, table, &xs)?;
    r.lo = lo;
    r.hi = hi;
    r.grid = grids_label(grids);
    Ok(r)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    pub kind: BoundKind,
    pub grid: String,
    pub lo: f64,
    pub hi: f64,
    /// First grid point after the last violation; `None` if the last grid
    /// point itself violates.
    pub empirical_x0: Option<f64>,
    pub last_violation: Option<f64>,
    /// Threshold stated alongside the bound, if any.
    pub stated_from: Option<f64>,
}

impl fmt::Display for ThresholdReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} on [{}, {}]): ", self.kind, self.grid, self.lo, self.hi)?;
        match self.empirical_x0 {
            Some(x0) => write!(f, "empirical x0 = {x0}")?,
            None => write!(f, "no threshold in range")?,
        }
        if let Some(v) = self.last_violation {
            write!(f, " (last violation at {v})")?;
        }
        match self.stated_from {
            Some(s) => write!(f, "; stated threshold {s}"),
            None => write!(f, "; no stated threshold"),
        }
    }
}

/// Smallest scanned `x₀` with nonnegative margin at every scanned `x ≥ x₀`.
/// This is a measurement on the given grid, not a proof.
pub fn threshold(
    kind: BoundKind,
    table: &PrimeTable,
    lo: f64,
    hi: f64,
    grids: &[Grid],
) -> Result<ThresholdReport> {
    let lo = lo.max(kind.domain_min());
    let xs = grid_points(grids, lo, hi, table)?;
    let r = scan_points(kind, table, &xs)?;
    let last_violation = r.violations.last().map(|v| v.x);
    let empirical_x0 = match last_violation {
        None => xs.first().copied(),
        Some(v) => xs.iter().copied().find(|&x| x > v),
    };
    Ok(ThresholdReport {
        kind,
        grid: grids_label(grids),
        lo,
        hi,
        empirical_x0,
        last_violation,
        stated_from: kind.validity().asserted_from(),
    })
}

/// Rows `x = lo + i·step ≤ hi`, computed by multiplication so rows do not
/// drift.
pub fn table_rows(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) {
        return domain(format!("step must be positive, got {step}"));
    }
    if !(hi >= lo) {
        return domain(format!("empty row range [{lo}, {hi}]"));
    }
    let n = ((hi - lo) / step * (1.0 + 1e-12)).floor() as usize;
    Ok((0..=n).map(|i| lo + i as f64 * step).collect())
}

/// CSV with header `x,pi,theta,<kind>...,<kind>_margin...`. Undefined cells
/// are empty. Numbers use the shortest round-trip decimal form, so output is
/// byte-identical across runs.
pub fn table_csv(
    table: &PrimeTable,
    lo: f64,
    hi: f64,
    step: f64,
    kinds: &[BoundKind],
) -> Result<String> {
    let rows = table_rows(lo, hi, step)?;
    check_range(lo, *rows.last().unwrap(), table)?;
    let with_li = kinds.iter().any(BoundKind::needs_li);

    let mut out = String::from("x,pi,theta");
    for k in kinds {
        write!(out, ",{k}").unwrap();
    }
    for k in kinds {
        write!(out, ",{k}_margin").unwrap();
    }
    out.push('\n');

    let mut walker = PointWalker::new(table, lo, with_li)?;
    for &x in &rows {
        let data = walker.at(x)?;
        let reports: Vec<_> = kinds.iter().map(|&k| evaluate_point(k, &data).ok()).collect();
        write!(out, "{},{},{}", x, data.pi_x, data.theta_x).unwrap();
        for r in &reports {
            out.push(',');
            if let Some(r) = r {
                write!(out, "{}", r.bound).unwrap();
            }
        }
        for r in &reports {
            out.push(',');
            if let Some(r) = r {
                write!(out, "{}", r.margin).unwrap();
            }
        }
        out.push('\n');
    }
    Ok(out)
}

/// Human-readable replay of the counting chain at odd `x`.
pub fn chain_report(x: u64, table: &PrimeTable) -> Result<(String, bool)> {
    let c = crate::proof::counting_chain(x, table)?;
    let links = crate::proof::verify_proof_chain(x, table)?;
    let mut s = String::new();
    writeln!(s, "x = {x}: pi = {}, theta = {}", c.pi_x, c.theta_x).unwrap();
    writeln!(
        s,
        "evens (x-1)/2 = {}, floor sum = {}, pow2 variant = {}, value sum = {}, frac sum = {}",
        c.evens_available, c.s_exact, c.s_pow2_variant, c.value_sum, c.frac_sum
    )
    .unwrap();
    for l in &links {
        writeln!(s, "  {l}").unwrap();
    }
    let all = links.iter().all(|l| l.holds);
    writeln!(s, "{}", if all { "all links hold" } else { "some links FAIL" }).unwrap();
    Ok((s, all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::build_table;

    #[test]
    fn grid_parsing() {
        assert_eq!("integers".parse::<Grid>().unwrap(), Grid::Integers);
        assert_eq!("log:100".parse::<Grid>().unwrap(), Grid::LogSpaced(100));
        assert_eq!("prime-adjacent".parse::<Grid>().unwrap(), Grid::PrimeAdjacent);
        assert!("log:0".parse::<Grid>().is_err());
        assert!("log:x".parse::<Grid>().is_err());
        assert!("reals".parse::<Grid>().is_err());
    }

    #[test]
    fn grid_points_shapes() {
        let t = build_table(100).unwrap();
        assert_eq!(grid_points(&[Grid::Integers], 2.5, 6.0, &t).unwrap(), vec![3.0, 4.0, 5.0, 6.0]);
        let g = grid_points(&[Grid::PrimeAdjacent], 2.0, 7.0, &t).unwrap();
        assert_eq!(g.len(), 7);
        assert_eq!(g[0], 2.0);
        assert_eq!(g[1], next_below(3.0));
        assert_eq!(*g.last().unwrap(), 7.0);
        let g = grid_points(&[Grid::LogSpaced(5)], 2.0, 32.0, &t).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!((g[0], g[4]), (2.0, 32.0));
        assert!((g[2] - 8.0).abs() < 1e-12);
        let both = grid_points(&[Grid::Integers, Grid::PrimeAdjacent], 2.0, 10.0, &t).unwrap();
        assert_eq!(both.len(), 9 + 3);
        assert!(grid_points(&[Grid::Integers], 1.0, 10.0, &t).is_err());
        assert!(grid_points(&[Grid::Integers], 5.0, 4.0, &t).is_err());
        assert!(grid_points(&[Grid::Integers], 5.0, 101.0, &t).is_err());
    }

    #[test]
    fn verify_ceiling_small() {
        let t = build_table(10_000).unwrap();
        let r = verify(BoundKind::Theorem1Ceiling, &t, 2.0, 1e4, &[Grid::Integers, Grid::PrimeAdjacent]).unwrap();
        assert!(r.violations.is_empty());
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.min_margin, 0.0);
        // First zero margin: just below 5, π = 2 and the pre-ceiling value is 1.975.
        assert_eq!(r.argmin_x, next_below(5.0));
    }

    #[test]
    fn verify_li_gap_small_x() {
        let t = build_table(1000).unwrap();
        let r = verify(BoundKind::LiGap, &t, 3.0, 100.0, &[Grid::Integers]).unwrap();
        let xs: Vec<f64> = r.violations.iter().map(|v| v.x).collect();
        assert_eq!(xs, vec![3.0, 4.0, 5.0, 6.0, 10.0]);
        assert!(r.violations.iter().all(|v| !v.asserted));
        assert_eq!(r.exit_code(), 0);
        let ten = r.violations.iter().find(|v| v.x == 10.0).unwrap();
        assert!((ten.margin + 0.0416).abs() < 1e-4);
    }

    #[test]
    fn skipped_points_are_counted() {
        let t = build_table(100).unwrap();
        let r = verify(BoundKind::Theorem1Sharp, &t, 2.0, 10.0, &[Grid::Integers]).unwrap();
        assert_eq!((r.points_evaluated, r.points_skipped), (8, 1));
    }

    #[test]
    fn asserted_violation_sets_exit_code() {
        let t = build_table(1000).unwrap();
        // A truncated geometric series undershoots π at x = 5.
        let r = verify(BoundKind::Geometric { j_max: 0 }, &t, 3.0, 10.0, &[Grid::Integers]).unwrap();
        assert!(r.violations.iter().any(|v| v.x == 5.0 && v.asserted));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn thresholds() {
        let t = build_table(100_000).unwrap();
        let r = threshold(BoundKind::LiGap, &t, 3.0, 1000.0, &[Grid::Integers]).unwrap();
        assert_eq!(r.empirical_x0, Some(11.0));
        assert_eq!(r.stated_from, None);
        let r = threshold(BoundKind::Asymptotic13, &t, 2.0, 1e5, &[Grid::Integers]).unwrap();
        assert_eq!(r.empirical_x0, Some(2.0));
        let r = threshold(BoundKind::DusartUpper, &t, 2.0, 1e5, &[Grid::Integers]).unwrap();
        assert_eq!(r.stated_from, Some(60184.0));
        assert!(r.empirical_x0.is_some());
    }

    #[test]
    fn table_row_counts() {
        assert_eq!(table_rows(5.0, 62.0, 1.0).unwrap().len(), 58);
        assert_eq!(table_rows(2.0, 2.0, 1.0).unwrap(), vec![2.0]);
        assert_eq!(table_rows(10.0, 1e4, 10.0).unwrap().len(), 1000);
        assert_eq!(table_rows(0.0, 1.0, 0.1).unwrap().len(), 11);
        assert!(table_rows(1.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn csv_layout() {
        let t = build_table(100).unwrap();
        let csv = table_csv(&t, 2.0, 2.0, 1.0, &BoundKind::ALL).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("x,pi,theta,theorem1_ceiling,theorem1_sharp,"));
        assert!(lines[0].ends_with(",li_gap_margin"));
        assert_eq!(lines[0].split(',').count(), 3 + 2 * 11);
        assert_eq!(lines[1].split(',').count(), 3 + 2 * 11);
        assert!(lines[1].starts_with("2,1,0.6931471805599453,2,,"));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn chain_report_text() {
        let t = build_table(100).unwrap();
        let (s, ok) = chain_report(15, &t).unwrap();
        assert!(ok);
        assert!(s.contains("floor sum = 6"));
        assert!(chain_report(4, &t).is_err());
    }
}
