//! Grid diagrams and their conversion to braids.
//!
//! Row `i` holds an X in column `x_cols[i]` and an O in column `o_cols[i]`;
//! rows are numbered from the top. Horizontal segments run from O to X,
//! vertical segments from X to O, and vertical segments pass over
//! horizontal ones.

use std::fmt;
use std::str::FromStr;

use crate::braid::BraidWord;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridDiagram {
    x_cols: Vec<usize>,
    o_cols: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Right,
    Left,
    Up,
    Down,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "right" => Ok(Direction::Right),
            "left" => Ok(Direction::Left),
            "up" => Ok(Direction::Up),
            "down" => Ok(Direction::Down),
            other => Err(Error::Parse(format!("unknown direction {other:?}"))),
        }
    }
}

fn check_permutation(v: &[usize], what: &str) -> Result<()> {
    let mut seen = vec![false; v.len()];
    for &c in v {
        if c >= v.len() || std::mem::replace(&mut seen[c], true) {
            return Err(Error::MalformedGrid(format!("{what} {v:?} is not a permutation")));
        }
    }
    Ok(())
}

/// One strand of the swept diagram: it is alive on the time gaps
/// `start..end` (cyclically) at transverse coordinate `perp`.
struct SweepStrand {
    start: usize,
    end: usize,
    perp: usize,
}

impl GridDiagram {
    pub fn new(x_cols: Vec<usize>, o_cols: Vec<usize>) -> Result<Self> {
        if x_cols.len() != o_cols.len() {
            return Err(Error::MalformedGrid(format!(
                "{} X entries but {} O entries",
                x_cols.len(),
                o_cols.len()
            )));
        }
        if x_cols.is_empty() {
            return Err(Error::MalformedGrid("empty grid".into()));
        }
        check_permutation(&x_cols, "X columns")?;
        check_permutation(&o_cols, "O columns")?;
        if let Some(row) = (0..x_cols.len()).find(|&i| x_cols[i] == o_cols[i]) {
            return Err(Error::MalformedGrid(format!("X and O coincide in row {row}")));
        }
        Ok(GridDiagram { x_cols, o_cols })
    }

    pub fn size(&self) -> usize {
        self.x_cols.len()
    }

    pub fn x_cols(&self) -> &[usize] {
        &self.x_cols
    }

    pub fn o_cols(&self) -> &[usize] {
        &self.o_cols
    }

    pub(crate) fn x_row_of_col(&self, col: usize) -> usize {
        self.x_cols.iter().position(|&c| c == col).expect("permutation")
    }

    pub(crate) fn o_row_of_col(&self, col: usize) -> usize {
        self.o_cols.iter().position(|&c| c == col).expect("permutation")
    }

    /// Braid whose closure is the grid's link, with the braid axis swept in
    /// the given direction. Segments parallel to the sweep that point
    /// backwards are routed around the far edge of the grid (an isotopy on
    /// the torus, since such segments lie entirely above or below the rest).
    pub fn to_braid(&self, direction: Direction) -> BraidWord {
        let n = self.size();
        let flip = |v: usize| n - 1 - v;
        // Strands travel forward in time; `jumps[t]` is (ending strand, starting strand).
        let mut strands = Vec::with_capacity(n);
        let mut jumps = vec![(0usize, 0usize); n];
        match direction {
            Direction::Right | Direction::Left => {
                let time = |c: usize| if direction == Direction::Right { c } else { flip(c) };
                for r in 0..n {
                    strands.push(SweepStrand { start: time(self.o_cols[r]), end: time(self.x_cols[r]), perp: r });
                }
                for c in 0..n {
                    jumps[time(c)] = (self.x_row_of_col(c), self.o_row_of_col(c));
                }
            }
            Direction::Up | Direction::Down => {
                let time = |r: usize| if direction == Direction::Down { r } else { flip(r) };
                for c in 0..n {
                    strands.push(SweepStrand {
                        start: time(self.x_row_of_col(c)),
                        end: time(self.o_row_of_col(c)),
                        perp: c,
                    });
                }
                for r in 0..n {
                    jumps[time(r)] = (self.o_cols[r], self.x_cols[r]);
                }
            }
        }
        // Positions are counted from the left-hand side of the travel direction.
        let ascending = matches!(direction, Direction::Right | Direction::Up);
        // Sign of a crossing made by a jump towards higher positions.
        let forward_sign = match direction {
            Direction::Right | Direction::Left => 1,
            Direction::Up | Direction::Down => -1,
        };
        let alive_before = |s: &SweepStrand, t: usize| {
            let gap = (t + n - 1) % n;
            (gap + n - s.start) % n < (s.end + n - s.start) % n
        };

        let mut letters = Vec::new();
        let mut width = 0;
        for (t, &(from, to)) in jumps.iter().enumerate() {
            let mut active: Vec<usize> =
                (0..n).filter(|&i| alive_before(&strands[i], t)).map(|i| strands[i].perp).collect();
            active.sort_unstable();
            if !ascending {
                active.reverse();
            }
            width = active.len();
            let (pa, pb) = (strands[from].perp, strands[to].perp);
            let p = active.iter().position(|&q| q == pa).expect("ending strand is alive") as i32 + 1;
            let passed = active.iter().filter(|&&q| pa.min(pb) < q && q < pa.max(pb)).count() as i32;
            let forward = (pb > pa) == ascending;
            if forward {
                letters.extend((0..passed).map(|i| forward_sign * (p + i)));
            } else {
                letters.extend((0..passed).map(|i| -forward_sign * (p - 1 - i)));
            }
        }
        BraidWord::new(letters, Some(width.max(1))).expect("sweep produces letters within the strand range")
    }

    /// Braid for the default, right-heading direction.
    pub fn braid(&self) -> BraidWord {
        self.to_braid(Direction::Right)
    }
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", join(&self.x_cols), join(&self.o_cols))
    }
}

/// Parses `"x0,x1,...;o0,o1,..."`.
impl FromStr for GridDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (xs, os) = s
            .split_once(';')
            .ok_or_else(|| Error::MalformedGrid(format!("expected \"xs;os\", got {s:?}")))?;
        let list = |t: &str| -> Result<Vec<usize>> {
            t.trim()
                .trim_start_matches('[')
                .trim_end_matches(']')
                .split(',')
                .map(|v| v.trim().parse::<usize>().map_err(|e| Error::MalformedGrid(format!("{v:?}: {e}"))))
                .collect()
        };
        GridDiagram::new(list(xs)?, list(os)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> GridDiagram {
        GridDiagram::new(vec![3, 1, 0, 4, 5, 2], vec![0, 5, 2, 1, 3, 4]).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(trefoil().size(), 6);
        assert!(matches!(GridDiagram::new(vec![0], vec![0]), Err(Error::MalformedGrid(_))));
        assert!(matches!(GridDiagram::new(vec![0, 0], vec![1, 0]), Err(Error::MalformedGrid(_))));
        assert!(matches!(GridDiagram::new(vec![0, 1], vec![1]), Err(Error::MalformedGrid(_))));
        assert!(GridDiagram::new(vec![0, 1], vec![1, 0]).is_ok());
    }

    #[test]
    fn trefoil_words() {
        assert_eq!(trefoil().to_braid(Direction::Right).letters(), &[-1, -2, 1, 2, 2, -1]);
        assert_eq!(trefoil().to_braid(Direction::Left).letters(), &[1, -2, 1, -2]);
        assert_eq!(trefoil().braid().self_linking(), -3);
        assert_eq!(trefoil().to_braid(Direction::Left).self_linking(), -3);
    }

    #[test]
    fn unknot_grid() {
        let g = GridDiagram::new(vec![0, 1], vec![1, 0]).unwrap();
        for d in [Direction::Right, Direction::Left, Direction::Up, Direction::Down] {
            assert_eq!(g.to_braid(d).self_linking(), -1, "{d:?}");
        }
    }

    #[test]
    fn figure_eight_nineteen_word() {
        let g: GridDiagram = "0,1,6,2,5,7,8,3,4,9;6,7,8,9,1,4,5,0,2,3".parse().unwrap();
        let b = g.braid();
        assert_eq!(b.letters(), &[1, 2, 3, 1, 2, 2, 3, 3, 2]);
        assert_eq!(b.self_linking(), 5);
    }

    #[test]
    fn text_round_trip() {
        let g = trefoil();
        assert_eq!(g.to_string().parse::<GridDiagram>().unwrap(), g);
        assert!("1,2".parse::<GridDiagram>().is_err());
    }
}
