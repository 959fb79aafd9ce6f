use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

/// One elementary Nielsen move. `i` and `j` are 0-based here and printed
/// 1-based.
///
/// * `R(sign, i, j)`: `sⱼ ← sⱼ·sᵢ^sign`
/// * `L(sign, i, j)`: `sⱼ ← sᵢ^sign·sⱼ`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NielsenMove {
    pub side: Side,
    /// `-1` or `+1`.
    pub sign: i8,
    pub i: usize,
    pub j: usize,
}

impl NielsenMove {
    pub fn new(side: Side, sign: i8, i: usize, j: usize) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be ±1");
        assert_ne!(i, j, "Nielsen move needs i ≠ j");
        NielsenMove { side, sign, i, j }
    }

    pub fn inverse(self) -> Self {
        NielsenMove {
            sign: -self.sign,
            ..self
        }
    }

    /// Same move acting on coordinates shifted by `offset`.
    pub fn shifted(self, offset: usize) -> Self {
        NielsenMove {
            i: self.i + offset,
            j: self.j + offset,
            ..self
        }
    }
}

impl fmt::Display for NielsenMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::L => 'L',
            Side::R => 'R',
        };
        let sign = if self.sign > 0 { '+' } else { '-' };
        write!(f, "{side}{sign}{},{}", self.i + 1, self.j + 1)
    }
}

/// All `4n(n-1)` moves in the fixed order (side, sign, i, j).
pub fn all_moves(n: usize) -> Vec<NielsenMove> {
    let mut out = Vec::with_capacity(4 * n * n.saturating_sub(1));
    for side in [Side::L, Side::R] {
        for sign in [-1i8, 1] {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        out.push(NielsenMove { side, sign, i, j });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_and_order() {
        assert_eq!(all_moves(1).len(), 0);
        assert_eq!(all_moves(2).len(), 8);
        assert_eq!(all_moves(3).len(), 24);
        let m = all_moves(4);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn inverse_is_involution() {
        for m in all_moves(3) {
            assert_ne!(m, m.inverse());
            assert_eq!(m.inverse().inverse(), m);
        }
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(NielsenMove::new(Side::R, -1, 1, 0).to_string(), "R-2,1");
    }
}
