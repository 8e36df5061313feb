//! Z2×Z2 degrees, the two braiding bicharacters and the sign cocycle relating them.

use std::fmt;

use thiserror::Error;

/// `(-1)^p`.
#[inline]
pub fn sign(p: u32) -> i32 {
    if p & 1 == 0 {
        1
    } else {
        -1
    }
}

/// Degree in Z2×Z2: coefficient parity first, matrix-unit parity second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GDegree {
    pub coeff: u8,
    pub matrix: u8,
}

impl GDegree {
    pub const ZERO: GDegree = GDegree { coeff: 0, matrix: 0 };

    pub fn new(coeff: u8, matrix: u8) -> Self {
        GDegree {
            coeff: coeff & 1,
            matrix: matrix & 1,
        }
    }

    pub fn coeff(p: u8) -> Self {
        Self::new(p, 0)
    }

    pub fn matrix(p: u8) -> Self {
        Self::new(0, p)
    }

    /// Total superalgebra parity `g1 + g2`.
    pub fn total(self) -> u8 {
        (self.coeff + self.matrix) & 1
    }

    pub fn all() -> impl Iterator<Item = GDegree> {
        (0..4u8).map(|k| GDegree::new(k & 1, k >> 1))
    }
}

impl std::ops::Add for GDegree {
    type Output = GDegree;
    fn add(self, o: GDegree) -> GDegree {
        GDegree::new(self.coeff ^ o.coeff, self.matrix ^ o.matrix)
    }
}

impl fmt::Display for GDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.coeff, self.matrix)
    }
}

/// Symmetric sign bicharacter on Z2×Z2 deciding how tensor factors commute.
#[derive(Clone, Copy)]
pub enum Bicharacter {
    /// `(-1)^{(g1+g2)(h1+h2)}`: the usual super sign on total parity.
    Standard,
    /// `(-1)^{g1 h1 + g2 h2}`: coefficients and matrix units commute freely.
    Twisted,
    Custom(fn(GDegree, GDegree) -> i32),
}

impl Bicharacter {
    pub fn eval(&self, x: GDegree, y: GDegree) -> i32 {
        match self {
            Bicharacter::Standard => sign((x.total() as u32) * (y.total() as u32)),
            Bicharacter::Twisted => sign((x.coeff * y.coeff + x.matrix * y.matrix) as u32),
            Bicharacter::Custom(f) => f(x, y),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Bicharacter::Standard => "standard",
            Bicharacter::Twisted => "twisted",
            Bicharacter::Custom(_) => "custom",
        }
    }
}

impl fmt::Debug for Bicharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn koszul_sign(x: GDegree, y: GDegree, b: Bicharacter) -> i32 {
    b.eval(x, y)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutation has length {perm} but {degrees} degrees were given")]
    LengthMismatch { perm: usize, degrees: usize },
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
}

/// Sign of the braiding that moves the factor at position `k` to position `sigma[k]`.
///
/// Every pair of factors whose relative order is reversed contributes `b(x, y)`.
pub fn perm_sign(degrees: &[GDegree], sigma: &[usize], b: Bicharacter) -> Result<i32, PermError> {
    let n = degrees.len();
    if sigma.len() != n {
        return Err(PermError::LengthMismatch {
            perm: sigma.len(),
            degrees: n,
        });
    }
    let mut seen = vec![false; n];
    for &t in sigma {
        if t >= n || seen[t] {
            return Err(PermError::NotAPermutation(n));
        }
        seen[t] = true;
    }
    let mut s = 1;
    for a in 0..n {
        for c in a + 1..n {
            if sigma[a] > sigma[c] {
                s *= b.eval(degrees[a], degrees[c]);
            }
        }
    }
    Ok(s)
}

/// The 2-cocycle `zeta(x, y) = (-1)^{xy}` on Z2 superalgebra parities.
pub fn cocycle_twist(x: u8, y: u8) -> i32 {
    sign((x as u32 & 1) * (y as u32 & 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braiding_examples() {
        let x = GDegree::new(1, 0);
        let y = GDegree::new(0, 1);
        assert_eq!(koszul_sign(x, y, Bicharacter::Standard), -1);
        assert_eq!(koszul_sign(x, y, Bicharacter::Twisted), 1);
        for y in GDegree::all() {
            assert_eq!(koszul_sign(GDegree::ZERO, y, Bicharacter::Standard), 1);
            assert_eq!(koszul_sign(GDegree::ZERO, y, Bicharacter::Twisted), 1);
        }
    }

    #[test]
    fn bicharacters_are_symmetric_and_additive() {
        for b in [Bicharacter::Standard, Bicharacter::Twisted] {
            for x in GDegree::all() {
                for y in GDegree::all() {
                    assert_eq!(b.eval(x, y), b.eval(y, x));
                    for z in GDegree::all() {
                        assert_eq!(b.eval(x + y, z), b.eval(x, z) * b.eval(y, z));
                    }
                }
            }
        }
    }

    #[test]
    fn cocycle_condition() {
        for x in 0..2 {
            assert_eq!(cocycle_twist(0, x), 1);
            for y in 0..2 {
                assert_eq!(cocycle_twist(x, y) * cocycle_twist(x, y), 1);
                for z in 0..2 {
                    let lhs = cocycle_twist(x, y) * cocycle_twist(x ^ y, z);
                    let rhs = cocycle_twist(y, z) * cocycle_twist(x, y ^ z);
                    assert_eq!(lhs, rhs);
                }
            }
        }
        assert_eq!(cocycle_twist(1, 1), -1);
    }

    #[test]
    fn untwisting_sign_matches_bracket_rule() {
        // x *' y = zeta x y, so [[x,y]]^zeta = zeta(p,r) (xy - (-1)^{pr} c yx).
        for p in 0..2u8 {
            for r in 0..2u8 {
                let z = cocycle_twist(p, r);
                // coefficient of xy and yx in the twisted bracket, relative to the untwisted one
                assert_eq!(z, sign((p * r) as u32));
            }
        }
    }

    #[test]
    fn perm_sign_basics() {
        let odd = GDegree::coeff(1);
        let even = GDegree::ZERO;
        assert_eq!(perm_sign(&[odd, even], &[0, 1], Bicharacter::Standard), Ok(1));
        assert_eq!(perm_sign(&[odd, odd], &[1, 0], Bicharacter::Standard), Ok(-1));
        assert!(perm_sign(&[odd], &[0, 1], Bicharacter::Standard).is_err());
        assert!(perm_sign(&[odd, odd], &[1, 1], Bicharacter::Standard).is_err());
    }

    /// Oracle: realize the permutation by adjacent swaps on a list of degrees.
    fn bubble_sign(degrees: &[GDegree], sigma: &[usize], b: Bicharacter) -> i32 {
        let mut items: Vec<(usize, GDegree)> = sigma.iter().copied().zip(degrees.iter().copied()).collect();
        let mut s = 1;
        loop {
            let mut swapped = false;
            for k in 0..items.len().saturating_sub(1) {
                if items[k].0 > items[k + 1].0 {
                    s *= b.eval(items[k].1, items[k + 1].1);
                    items.swap(k, k + 1);
                    swapped = true;
                }
            }
            if !swapped {
                return s;
            }
        }
    }

    #[test]
    fn three_cycle_matches_transpositions() {
        let d = [GDegree::coeff(1), GDegree::coeff(1), GDegree::ZERO];
        let sigma = [1, 2, 0];
        assert_eq!(
            perm_sign(&d, &sigma, Bicharacter::Standard).unwrap(),
            bubble_sign(&d, &sigma, Bicharacter::Standard)
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn deg() -> impl Strategy<Value = GDegree> {
            (0u8..2, 0u8..2).prop_map(|(a, b)| GDegree::new(a, b))
        }

        proptest! {
            #[test]
            fn perm_sign_matches_adjacent_swaps(
                degs in proptest::collection::vec(deg(), 1..7),
                seed in any::<u64>(),
                twisted in any::<bool>(),
            ) {
                use rand::{seq::SliceRandom, SeedableRng};
                let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
                let mut sigma: Vec<usize> = (0..degs.len()).collect();
                sigma.shuffle(&mut rng);
                let b = if twisted { Bicharacter::Twisted } else { Bicharacter::Standard };
                prop_assert_eq!(perm_sign(&degs, &sigma, b).unwrap(), bubble_sign(&degs, &sigma, b));
            }

            #[test]
            fn perm_sign_composes(
                degs in proptest::collection::vec(deg(), 1..6),
                s1 in any::<u64>(),
                s2 in any::<u64>(),
            ) {
                use rand::{seq::SliceRandom, SeedableRng};
                let n = degs.len();
                let mut a: Vec<usize> = (0..n).collect();
                let mut c: Vec<usize> = (0..n).collect();
                a.shuffle(&mut rand::rngs::StdRng::seed_from_u64(s1));
                c.shuffle(&mut rand::rngs::StdRng::seed_from_u64(s2));
                // apply a, then c to the rearranged factors
                let mut moved = vec![GDegree::ZERO; n];
                for k in 0..n { moved[a[k]] = degs[k]; }
                let composed: Vec<usize> = (0..n).map(|k| c[a[k]]).collect();
                let b = Bicharacter::Standard;
                prop_assert_eq!(
                    perm_sign(&degs, &composed, b).unwrap(),
                    perm_sign(&degs, &a, b).unwrap() * perm_sign(&moved, &c, b).unwrap()
                );
            }
        }
    }
}
