use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::Component;
use crate::error::{Error, Result};

/// Largest rank accepted for the classical series.
const CLASSICAL_RANK_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub const ALL: [Series; 7] = [Series::A, Series::B, Series::C, Series::D, Series::E, Series::F, Series::G];

    pub fn check_rank(self, rank: usize) -> Result<()> {
        let ok = match self {
            Series::A => (1..=CLASSICAL_RANK_LIMIT).contains(&rank),
            Series::B | Series::C => (2..=CLASSICAL_RANK_LIMIT).contains(&rank),
            Series::D => (4..=CLASSICAL_RANK_LIMIT).contains(&rank),
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedSeries { series: self.to_string(), rank })
        }
    }

    /// Number of roots of the irreducible system of this type.
    pub fn root_count(self, n: usize) -> usize {
        match self {
            Series::A => n * (n + 1),
            Series::B | Series::C => 2 * n * n,
            Series::D => 2 * n * (n - 1),
            Series::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Series::F => 48,
            Series::G => 12,
        }
    }

    /// Every supported irreducible type of rank at most `max_rank`, in
    /// series-then-rank order.
    pub fn all_types(max_rank: usize) -> Vec<(Series, usize)> {
        let mut out = Vec::new();
        for s in Series::ALL {
            for n in 1..=max_rank {
                if s.check_rank(n).is_ok() {
                    out.push((s, n));
                }
            }
        }
        out
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Series::A),
            "B" | "b" => Ok(Series::B),
            "C" | "c" => Ok(Series::C),
            "D" | "d" => Ok(Series::D),
            "E" | "e" => Ok(Series::E),
            "F" | "f" => Ok(Series::F),
            "G" | "g" => Ok(Series::G),
            other => Err(Error::Parse(format!("unknown series {other:?}"))),
        }
    }
}

pub(crate) fn parse_name(name: &str) -> Result<(Series, usize)> {
    let name = name.trim();
    let mut chars = name.chars();
    let head = chars.next().ok_or_else(|| Error::Parse("empty type name".into()))?;
    let series: Series = head.to_string().parse()?;
    let rank: usize = chars.as_str().parse().map_err(|_| Error::Parse(format!("bad rank in {name:?}")))?;
    series.check_rank(rank)?;
    Ok((series, rank))
}

/// Cartan matrix `A[i][j] = <a_i, a_j^v>` with Bourbaki numbering.
pub fn cartan_matrix(series: Series, n: usize) -> Result<Vec<Vec<i32>>> {
    series.check_rank(n)?;
    let mut a = vec![vec![0; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i32, aji: i32| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match series {
        Series::A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
        Series::B => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -2, -1);
        }
        Series::C => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -1, -2);
        }
        Series::D => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        Series::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
        }
        Series::F => {
            link(0, 1, -1, -1);
            link(1, 2, -2, -1);
            link(2, 3, -1, -1);
        }
        Series::G => link(0, 1, -1, -3),
    }
    Ok(a)
}

/// Squared lengths `(a_i, a_i)` making `A[i][j] (a_j,a_j)` symmetric,
/// scaled per connected component so the shortest simple root has length 2.
pub(crate) fn symmetrize(cartan: &[Vec<i32>]) -> Result<Vec<i32>> {
    let n = cartan.len();
    let mut len: Vec<Option<Ratio<i64>>> = vec![None; n];
    for start in 0..n {
        if len[start].is_some() {
            continue;
        }
        len[start] = Some(Ratio::from_integer(1));
        let mut stack = vec![start];
        let mut comp = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && cartan[i][j] != 0 {
                    // A[i][j] L_j = A[j][i] L_i
                    let lj = len[i].unwrap() * Ratio::new(cartan[j][i] as i64, cartan[i][j] as i64);
                    match len[j] {
                        None => {
                            len[j] = Some(lj);
                            stack.push(j);
                            comp.push(j);
                        }
                        Some(existing) if existing != lj => {
                            return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                        }
                        _ => {}
                    }
                }
            }
        }
        let min = comp.iter().map(|&i| len[i].unwrap()).min().unwrap();
        for &i in &comp {
            let scaled = len[i].unwrap() / min * Ratio::from_integer(2);
            if !scaled.is_integer() {
                return Err(Error::InvalidCartan("non-integral root lengths".into()));
            }
            len[i] = Some(scaled);
        }
    }
    Ok(len.into_iter().map(|l| *l.unwrap().numer() as i32).collect())
}

/// Split a Cartan matrix into contiguous Bourbaki-numbered irreducible blocks.
pub(crate) fn identify_components(cartan: &[Vec<i32>]) -> Result<Vec<Component>> {
    let n = cartan.len();
    let mut comps = Vec::new();
    let mut start = 0;
    while start < n {
        // A block ends where no later index links back into it.
        let mut end = start + 1;
        let mut i = start;
        while i < end {
            for j in end..n {
                if cartan[i][j] != 0 {
                    end = j + 1;
                }
            }
            i += 1;
        }
        let rank = end - start;
        let block: Vec<Vec<i32>> = (start..end).map(|i| cartan[i][start..end].to_vec()).collect();
        let series = Series::ALL
            .into_iter()
            .find(|s| cartan_matrix(*s, rank).map(|m| m == block).unwrap_or(false))
            .ok_or_else(|| {
                Error::InvalidCartan(format!("block at {start}..{end} is not a Bourbaki-numbered Cartan matrix"))
            })?;
        comps.push(Component { series, rank, offset: start });
        start = end;
    }
    Ok(comps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn types_up_to_rank_8() {
        let all = Series::all_types(8);
        // A1..A8, B2..B8, C2..C8, D4..D8, E6..E8, F4, G2
        assert_eq!(all.len(), 8 + 7 + 7 + 5 + 3 + 1 + 1);
    }

    #[test]
    fn parse_names() {
        assert_eq!(parse_name("E8").unwrap(), (Series::E, 8));
        assert_eq!(parse_name("c3").unwrap(), (Series::C, 3));
        assert!(parse_name("F5").is_err());
        assert!(parse_name("X").is_err());
    }

    #[test]
    fn blocks_identified() {
        let g2 = cartan_matrix(Series::G, 2).unwrap();
        let comps = identify_components(&g2).unwrap();
        assert_eq!(comps, vec![Component { series: Series::G, rank: 2, offset: 0 }]);
        let swapped = vec![vec![2, -3], vec![-1, 2]];
        assert!(identify_components(&swapped).is_err());
    }
}
