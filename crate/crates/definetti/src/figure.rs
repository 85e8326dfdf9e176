//! CSV tables behind the three figures. Cells hold `1 - δ`.

use std::fmt;
use std::str::FromStr;

use definetti_core::heisenberg::{deficit_number_space_exact, ExactHeisenbergTriple};
use definetti_core::su2_cg::ClebschGordan;
use definetti_core::{BigInt, BigRational, Direction, TwoJ};
use rayon::prelude::*;

use crate::render::decimal;
use crate::{Error, Result};

/// Longest `r` axis accepted.
pub const MAX_R: u64 = 10_000;
/// Most curves in one table.
pub const MAX_CURVES: usize = 1_000;

/// Inclusive range `lo..hi` of values stepping by one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: FromStr + Copy> FromStr for Span<T> {
    type Err = String;

    /// `a..b` (inclusive) or a single value `a`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |x: &str| x.trim().parse::<T>().map_err(|_| format!("bad range endpoint {x:?}"));
        match s.split_once("..") {
            Some((a, b)) => Ok(Span {
                lo: parse(a)?,
                hi: parse(b.strip_prefix('=').unwrap_or(b))?,
            }),
            None => {
                let v = parse(s)?;
                Ok(Span { lo: v, hi: v })
            }
        }
    }
}

impl<T: fmt::Display> fmt::Display for Span<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    /// `1 - δ` near the stretched coupling, `W^r` around the highest weight.
    One,
    /// Small total spin, `W^r` around the lowest weight.
    Two,
    /// Heisenberg number-space curves with the SU(2) overlay.
    Three,
}

impl FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "1" => Ok(FigureId::One),
            "2" => Ok(FigureId::Two),
            "3" => Ok(FigureId::Three),
            _ => Err(format!("figure must be 1, 2 or 3, got {s:?}")),
        }
    }
}

/// Parameters of one figure. [`FigureSpec::default_for`] gives the
/// published settings; every field can be overridden.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub figure: FigureId,
    pub j1: TwoJ,
    pub j2: TwoJ,
    /// `|j2 m2⟩`; `None` means `m2 = j2`.
    pub m2: Option<TwoJ>,
    pub j: Span<TwoJ>,
    pub r: Span<u64>,
    pub excitation: Span<u64>,
    pub mu: BigRational,
    pub nu: BigRational,
    /// Figure 3 only: add `su2_j = j1 + j2 - Δ` columns.
    pub overlay: bool,
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl FigureSpec {
    pub fn default_for(figure: FigureId) -> Self {
        let j = match figure {
            FigureId::Two => Span { lo: TwoJ::integer(0), hi: TwoJ::integer(30) },
            _ => Span { lo: TwoJ::integer(190), hi: TwoJ::integer(200) },
        };
        FigureSpec {
            figure,
            j1: TwoJ::integer(100),
            j2: TwoJ::integer(100),
            m2: None,
            j,
            r: Span { lo: 0, hi: 40 },
            excitation: Span { lo: 0, hi: 10 },
            mu: int(50),
            nu: int(50),
            overlay: true,
        }
    }

    pub fn direction(&self) -> Direction {
        match self.figure {
            FigureId::Two => Direction::Up,
            _ => Direction::Down,
        }
    }

    fn m2(&self) -> TwoJ {
        self.m2.unwrap_or(self.j2)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Invalid(msg));
        if self.r.lo > self.r.hi || self.r.hi > MAX_R {
            return bad(format!("r range {} must be ascending and within 0..{MAX_R}", self.r));
        }
        if self.j1.doubled() < 0 || self.j2.doubled() < 0 {
            return bad(format!("spins must be nonnegative, got j1={} j2={}", self.j1, self.j2));
        }
        let curves = match self.figure {
            FigureId::Three => {
                if self.excitation.lo > self.excitation.hi {
                    return bad(format!("Delta range {} must be ascending", self.excitation));
                }
                (self.excitation.hi - self.excitation.lo) as usize + 1
            }
            _ => {
                let (lo, hi) = (self.j.lo.doubled(), self.j.hi.doubled());
                if lo > hi || lo < 0 || (hi - lo) % 2 != 0 {
                    return bad(format!("j range {} must be ascending, nonnegative, in steps of one", self.j));
                }
                ((hi - lo) / 2) as usize + 1
            }
        };
        if curves > MAX_CURVES {
            return bad(format!("{curves} curves exceed the limit of {MAX_CURVES}"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub label: String,
    pub deficits: Vec<BigRational>,
}

/// One CSV table: an `r` column followed by the curves.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureTable {
    pub r: Vec<u64>,
    pub columns: Vec<Column>,
}

impl FigureTable {
    pub fn column(&self, label: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.label == label)
    }

    /// Header plus one line per `r`, each ending in `\n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r");
        for c in &self.columns {
            out.push(',');
            out.push_str(&c.label);
        }
        out.push('\n');
        for (i, r) in self.r.iter().enumerate() {
            out.push_str(&r.to_string());
            for c in &self.columns {
                out.push(',');
                out.push_str(&decimal(&c.deficits[i]));
            }
            out.push('\n');
        }
        out
    }
}

fn su2_column(
    cg: &ClebschGordan,
    spec: &FigureSpec,
    j: TwoJ,
    label: String,
) -> Result<Column> {
    let curve = cg.deficit_curve(spec.j1, spec.j2, j, spec.m2(), spec.r.hi, spec.direction())?;
    Ok(Column {
        label,
        deficits: curve[spec.r.lo as usize..].to_vec(),
    })
}

fn heis_column(spec: &FigureSpec, excitation: u64) -> Result<Column> {
    let deficits = (spec.r.lo..=spec.r.hi)
        .map(|r| {
            let t = ExactHeisenbergTriple::new(spec.mu.clone(), spec.nu.clone(), excitation, r)?;
            Ok(deficit_number_space_exact(&t))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Column {
        label: format!("Delta={excitation}"),
        deficits,
    })
}

/// Builds the table; curves are evaluated in parallel and assembled in
/// order.
pub fn figure_table(spec: &FigureSpec) -> Result<FigureTable> {
    spec.validate()?;
    let cg = ClebschGordan::new(spec.j1.doubled() + spec.j2.doubled());
    let columns: Vec<Column> = match spec.figure {
        FigureId::One | FigureId::Two => {
            let js: Vec<TwoJ> = (spec.j.lo.doubled()..=spec.j.hi.doubled())
                .step_by(2)
                .map(TwoJ::from_doubled)
                .collect();
            js.par_iter()
                .map(|&j| su2_column(&cg, spec, j, format!("j={j}")))
                .collect::<Result<_>>()?
        }
        FigureId::Three => {
            let deltas: Vec<u64> = (spec.excitation.lo..=spec.excitation.hi).collect();
            let mut columns: Vec<Column> = deltas
                .par_iter()
                .map(|&d| heis_column(spec, d))
                .collect::<Result<_>>()?;
            if spec.overlay {
                let top = spec.j1.doubled() + spec.j2.doubled();
                let overlay: Vec<Column> = deltas
                    .par_iter()
                    .filter(|&&d| d as i64 <= spec.j1.doubled().min(spec.j2.doubled()))
                    .map(|&d| {
                        let j = TwoJ::from_doubled(top - 2 * d as i64);
                        su2_column(&cg, spec, j, format!("su2_j={j}"))
                    })
                    .collect::<Result<_>>()?;
                columns.extend(overlay);
            }
            columns
        }
    };
    Ok(FigureTable {
        r: (spec.r.lo..=spec.r.hi).collect(),
        columns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_parsing() {
        assert_eq!("3..7".parse::<Span<u64>>().unwrap(), Span { lo: 3, hi: 7 });
        assert_eq!("3..=7".parse::<Span<u64>>().unwrap(), Span { lo: 3, hi: 7 });
        assert_eq!("5".parse::<Span<u64>>().unwrap(), Span { lo: 5, hi: 5 });
        let s: Span<TwoJ> = "1/2..5/2".parse().unwrap();
        assert_eq!((s.lo.doubled(), s.hi.doubled()), (1, 5));
        assert!("a..b".parse::<Span<u64>>().is_err());
    }

    #[test]
    fn small_figure_one() {
        let spec = FigureSpec {
            j1: TwoJ::from_doubled(1),
            j2: TwoJ::from_doubled(1),
            j: Span { lo: TwoJ::integer(0), hi: TwoJ::integer(1) },
            r: Span { lo: 0, hi: 2 },
            ..FigureSpec::default_for(FigureId::One)
        };
        let csv = figure_table(&spec).unwrap().to_csv();
        assert_eq!(csv, "r,j=0,j=1\n0,1,0.333333333333\n1,0,0\n2,0,0\n");
    }

    #[test]
    fn figure_three_has_overlay() {
        let spec = FigureSpec {
            r: Span { lo: 0, hi: 3 },
            excitation: Span { lo: 0, hi: 2 },
            ..FigureSpec::default_for(FigureId::Three)
        };
        let t = figure_table(&spec).unwrap();
        let labels: Vec<&str> = t.columns.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["Delta=0", "Delta=1", "Delta=2", "su2_j=200", "su2_j=199", "su2_j=198"]);
        assert_eq!(decimal(&t.columns[0].deficits[0]), "0.5");
    }

    #[test]
    fn rejects_bad_ranges() {
        let mut spec = FigureSpec::default_for(FigureId::One);
        spec.r = Span { lo: 5, hi: 1 };
        assert!(matches!(figure_table(&spec), Err(Error::Invalid(_))));
        let mut spec = FigureSpec::default_for(FigureId::Two);
        spec.j = Span { lo: TwoJ::from_doubled(0), hi: TwoJ::from_doubled(3) };
        assert!(matches!(figure_table(&spec), Err(Error::Invalid(_))));
        let mut spec = FigureSpec::default_for(FigureId::One);
        spec.j = Span { lo: TwoJ::integer(190), hi: TwoJ::integer(201) };
        assert!(matches!(figure_table(&spec), Err(Error::Core(_))));
    }
}
