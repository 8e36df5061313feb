//! Root and weight data for gl(V) and osp(V) attached to a parity sequence.
//!
//! Indices `1..=N` follow the usual matrix numbering. Weights are integer
//! vectors over the basis `ε_1..ε_r` with `r = N` for gl and `r = s` for osp.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

/// Largest supported rank of the ε-basis.
pub const MAX_RANK: usize = 8;
/// Largest supported N (matrix indices are packed into 4 bits).
pub const MAX_N: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatumError {
    #[error("parity string must consist of '0' and '1', got {0:?}")]
    BadParityChar(String),
    #[error("theta string must consist of '+' and '-', got {0:?}")]
    BadThetaChar(String),
    #[error("N = {0} is too small (need N >= 2)")]
    TooSmall(usize),
    #[error("N = {0} exceeds the supported size")]
    TooLarge(usize),
    #[error("osp constraint violated: n = {0} odd parities, must be even")]
    OddN(usize),
    #[error("osp constraint violated: parity of {i} differs from parity of {i}' = {j}")]
    NotSymmetric { i: usize, j: usize },
    #[error("osp constraint violated: middle entry {0} must be even")]
    OddMiddle(usize),
    #[error("osp D-type needs s >= 2")]
    DegenerateD,
    #[error("theta has length {got}, expected {want}")]
    ThetaLength { got: usize, want: usize },
    #[error("theta constraint violated at index {0}: {1}")]
    BadTheta(usize, &'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Mode {
    Gl,
    Osp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TypeTag {
    A,
    B,
    C,
    D,
}

/// Integer vector over the ε-basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(pub [i32; MAX_RANK]);

impl Weight {
    pub const ZERO: Weight = Weight([0; MAX_RANK]);

    pub fn unit(k: usize) -> Self {
        let mut w = [0; MAX_RANK];
        w[k] = 1;
        Weight(w)
    }

    /// Coordinates in the ε-basis; `None` if longer than `MAX_RANK`.
    pub fn from_slice(v: &[i32]) -> Option<Self> {
        let mut w = [0; MAX_RANK];
        w.get_mut(..v.len())?.copy_from_slice(v);
        Some(Weight(w))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, c: i32) -> Self {
        let mut w = self.0;
        for x in w.iter_mut() {
            *x *= c;
        }
        Weight(w)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        let mut w = self.0;
        for (x, y) in w.iter_mut().zip(o.0) {
            *x += y;
        }
        Weight(w)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        self + (-o)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&x| x != 0).map_or(0, |k| k + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}

/// A positive root `γ_ij`, labelled by its index pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub i: usize,
    pub j: usize,
    pub weight: Weight,
    pub parity: u8,
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{},{}", self.i, self.j)
    }
}

/// Parity sequence and derived data. Immutable after construction.
#[derive(Debug, Clone)]
pub struct RootDatum {
    pub mode: Mode,
    parity: Vec<u8>,
    theta: Vec<i32>,
    pub n: usize,
    pub s: usize,
    pub rank: usize,
    pub type_tag: TypeTag,
    eps: Vec<Weight>,
    eps_form: Vec<Vec<i32>>,
    h_form: Vec<Vec<i32>>,
    rho2: Vec<i32>,
    positive: Vec<Root>,
    reduced: Vec<Root>,
    simple: Vec<Root>,
    by_weight: BTreeMap<Weight, Root>,
    heights: BTreeMap<Weight, i32>,
}

pub fn parse_parity(s: &str) -> Result<Vec<u8>, DatumError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(DatumError::BadParityChar(s.to_string())),
        })
        .collect()
}

pub fn parse_theta(s: &str) -> Result<Vec<i32>, DatumError> {
    s.chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            _ => Err(DatumError::BadThetaChar(s.to_string())),
        })
        .collect()
}

impl RootDatum {
    pub fn gl(parity: &[u8]) -> Result<Self, DatumError> {
        let n = parity.len();
        if n < 2 {
            return Err(DatumError::TooSmall(n));
        }
        if n > MAX_RANK {
            return Err(DatumError::TooLarge(n));
        }
        let eps: Vec<Weight> = (0..n).map(Weight::unit).collect();
        Ok(Self::finish(Mode::Gl, parity.to_vec(), vec![1; n], 0, n, TypeTag::A, eps))
    }

    pub fn gl_str(parity: &str) -> Result<Self, DatumError> {
        Self::gl(&parse_parity(parity)?)
    }

    /// Builds the osp datum; `theta = None` selects +1 on the first half.
    pub fn osp(parity: &[u8], theta: Option<&[i32]>) -> Result<Self, DatumError> {
        let n = parity.len();
        if n < 2 {
            return Err(DatumError::TooSmall(n));
        }
        if n > MAX_N {
            return Err(DatumError::TooLarge(n));
        }
        let odd = parity.iter().filter(|&&p| p == 1).count();
        if odd % 2 == 1 {
            return Err(DatumError::OddN(odd));
        }
        for i in 1..=n {
            let j = n + 1 - i;
            if parity[i - 1] != parity[j - 1] {
                return Err(DatumError::NotSymmetric { i: i.min(j), j: i.max(j) });
            }
        }
        let s = n / 2;
        if n % 2 == 1 && parity[s] != 0 {
            return Err(DatumError::OddMiddle(s + 1));
        }
        let m = n - odd;
        let type_tag = if m % 2 == 1 {
            TypeTag::B
        } else if parity[s - 1] == 1 {
            TypeTag::C
        } else {
            TypeTag::D
        };
        if type_tag == TypeTag::D && s < 2 {
            return Err(DatumError::DegenerateD);
        }
        let theta = match theta {
            Some(t) => {
                if t.len() != n {
                    return Err(DatumError::ThetaLength { got: t.len(), want: n });
                }
                for i in 1..=n {
                    let (ti, tj) = (t[i - 1], t[n - i]);
                    if ti != 1 && ti != -1 {
                        return Err(DatumError::BadTheta(i, "entries must be +1 or -1"));
                    }
                    if parity[i - 1] == 0 && ti != 1 {
                        return Err(DatumError::BadTheta(i, "theta_i must be +1 for even i"));
                    }
                    if parity[i - 1] == 1 && ti != -tj {
                        return Err(DatumError::BadTheta(i, "theta_i must equal -theta_i' for odd i"));
                    }
                }
                t.to_vec()
            }
            None => {
                let half = n.div_ceil(2);
                (1..=n)
                    .map(|i| if i <= half || parity[i - 1] == 0 { 1 } else { -1 })
                    .collect()
            }
        };
        let eps: Vec<Weight> = (1..=n)
            .map(|i| {
                if i <= s {
                    Weight::unit(i - 1)
                } else if n % 2 == 1 && i == s + 1 {
                    Weight::ZERO
                } else {
                    -Weight::unit(n - i)
                }
            })
            .collect();
        Ok(Self::finish(Mode::Osp, parity.to_vec(), theta, s, s, type_tag, eps))
    }

    pub fn osp_str(parity: &str, theta: Option<&str>) -> Result<Self, DatumError> {
        let p = parse_parity(parity)?;
        match theta {
            Some(t) => Self::osp(&p, Some(&parse_theta(t)?)),
            None => Self::osp(&p, None),
        }
    }

    fn finish(
        mode: Mode,
        parity: Vec<u8>,
        theta: Vec<i32>,
        s: usize,
        rank: usize,
        type_tag: TypeTag,
        eps: Vec<Weight>,
    ) -> Self {
        let n = parity.len();
        let mut d = RootDatum {
            mode,
            parity,
            theta,
            n,
            s,
            rank,
            type_tag,
            eps,
            eps_form: Vec::new(),
            h_form: Vec::new(),
            rho2: Vec::new(),
            positive: Vec::new(),
            reduced: Vec::new(),
            simple: Vec::new(),
            by_weight: BTreeMap::new(),
            heights: BTreeMap::new(),
        };
        d.eps_form = (1..=n).map(|i| (1..=n).map(|j| d.form(d.eps(i), d.eps(j))).collect()).collect();
        d.h_form = d
            .eps_form
            .iter()
            .map(|row| row.iter().map(|&x| if mode == Mode::Osp { x + 1 } else { x }).collect())
            .collect();
        d.build_roots();
        d
    }

    fn build_roots(&mut self) {
        let n = self.n;
        let mut positive = Vec::new();
        let mut reduced = Vec::new();
        match self.mode {
            Mode::Gl => {
                for i in 1..=n {
                    for j in i + 1..=n {
                        let r = self.make_root(i, j);
                        positive.push(r);
                        reduced.push(r);
                    }
                }
            }
            Mode::Osp => {
                for i in 1..=self.s {
                    for j in i + 1..self.prime(i) {
                        let r = self.make_root(i, j);
                        positive.push(r);
                        reduced.push(r);
                    }
                    if self.par(i) == 1 {
                        let r = self.make_root(i, self.prime(i));
                        positive.push(r);
                        if self.type_tag != TypeTag::B {
                            reduced.push(r);
                        }
                    }
                }
            }
        }
        positive.sort_by_key(|r| (r.i, r.j));
        reduced.sort_by_key(|r| (r.i, r.j));
        self.by_weight = positive.iter().map(|r| (r.weight, *r)).collect();
        self.simple = (1..=self.num_simple()).map(|k| self.simple_label(k)).map(|(i, j)| self.make_root(i, j)).collect();
        let mut rho2 = Weight::ZERO;
        for r in &positive {
            rho2 = if r.parity == 0 { rho2 + r.weight } else { rho2 - r.weight };
        }
        self.rho2 = (1..=n).map(|k| self.form(rho2, self.eps(k))).collect();
        // every non-simple positive root minus some simple root is again positive
        let mut heights: BTreeMap<Weight, i32> = self.simple.iter().map(|a| (a.weight, 1)).collect();
        let mut pending: Vec<Weight> = positive.iter().map(|r| r.weight).filter(|w| !heights.contains_key(w)).collect();
        while !pending.is_empty() {
            let before = pending.len();
            pending.retain(|w| {
                let found = self.simple.iter().find_map(|a| heights.get(&(*w - a.weight)).copied());
                match found {
                    Some(h) => {
                        heights.insert(*w, h + 1);
                        false
                    }
                    None => true,
                }
            });
            assert!(pending.len() < before, "root heights do not resolve");
        }
        self.heights = heights;
        self.positive = positive;
        self.reduced = reduced;
    }

    fn make_root(&self, i: usize, j: usize) -> Root {
        Root {
            i,
            j,
            weight: self.eps(i) - self.eps(j),
            parity: (self.par(i) + self.par(j)) & 1,
        }
    }

    /// Number of simple roots: `N - 1` for gl, `s` for osp.
    pub fn num_simple(&self) -> usize {
        match self.mode {
            Mode::Gl => self.n - 1,
            Mode::Osp => self.s,
        }
    }

    /// Index pair of the simple root `α_k`.
    pub fn simple_label(&self, k: usize) -> (usize, usize) {
        if self.mode == Mode::Osp && k == self.s && self.type_tag == TypeTag::D {
            (self.s - 1, self.s + 1)
        } else {
            (k, k + 1)
        }
    }

    pub fn theta_vec(&self) -> &[i32] {
        &self.theta
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn parity_string(&self) -> String {
        self.parity.iter().map(|p| if *p == 0 { '0' } else { '1' }).collect()
    }

    pub fn theta_string(&self) -> String {
        self.theta.iter().map(|t| if *t > 0 { '+' } else { '-' }).collect()
    }

    /// Parity `ī` of index `i` (1-based).
    #[inline]
    pub fn par(&self, i: usize) -> u8 {
        self.parity[i - 1]
    }

    /// `ī + ... + j̄` for `i <= j` (1-based, inclusive).
    pub fn par_sum(&self, i: usize, j: usize) -> u32 {
        (i..=j).map(|k| self.par(k) as u32).sum()
    }

    pub fn theta(&self, i: usize) -> i32 {
        self.theta[i - 1]
    }

    /// `i' = N + 1 - i`.
    #[inline]
    pub fn prime(&self, i: usize) -> usize {
        self.n + 1 - i
    }

    /// `ε_i` as a weight, including the osp extension `ε_{i'} = -ε_i`.
    #[inline]
    pub fn eps(&self, i: usize) -> Weight {
        self.eps[i - 1]
    }

    /// The invariant form on weights.
    pub fn form(&self, a: Weight, b: Weight) -> i32 {
        (0..self.rank)
            .map(|k| {
                let s = if self.parity[k] == 0 { 1 } else { -1 };
                s * a.0[k] * b.0[k]
            })
            .sum()
    }

    /// `(ε_i, ε_j)` on all indices.
    #[inline]
    pub fn eps_form(&self, i: usize, j: usize) -> i32 {
        self.eps_form[i - 1][j - 1]
    }

    /// Form on Cartan labels: `(ε_i, ε_j)` for gl, `(ε̃_i, ε̃_j) = (ε_i, ε_j) + 1` for osp.
    #[inline]
    pub fn h_form(&self, i: usize, j: usize) -> i32 {
        self.h_form[i - 1][j - 1]
    }

    /// `2(ρ, ε_k)`.
    pub fn rho2(&self, k: usize) -> i32 {
        self.rho2[k - 1]
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// Reduced positive roots in convex (lexicographic) order.
    pub fn reduced_roots(&self) -> &[Root] {
        &self.reduced
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.simple
    }

    /// Reduced roots sorted by the lexicographic order of their dominant Lyndon words.
    pub fn convex_order(&self) -> Vec<Root> {
        let mut v = self.reduced.clone();
        v.sort_by_cached_key(|r| self.lyndon_word(r.i, r.j));
        v
    }

    /// Costandard factorization `γ ↦ (α, β)` of a non-simple reduced root.
    pub fn costandard(&self, i: usize, j: usize) -> Option<((usize, usize), (usize, usize))> {
        if self.simple.iter().any(|a| (a.i, a.j) == (i, j)) {
            return None;
        }
        let s = self.s;
        if self.mode == Mode::Osp {
            let (sp, ip) = (self.prime(s), self.prime(i));
            match self.type_tag {
                TypeTag::C if j == ip && i < s => return Some(((i, s), (i, sp))),
                TypeTag::D if j == ip && i < s => return Some(((i, s), (i, sp))),
                TypeTag::D if j == sp && i + 1 < s => return Some(((i, s - 1), (s - 1, sp))),
                _ => {}
            }
        }
        let b = self.normalize_label(j - 1, j)?;
        Some(((i, j - 1), b))
    }

    /// Dominant Lyndon word of a reduced root, letters are simple-root indices.
    pub fn lyndon_word(&self, i: usize, j: usize) -> Vec<usize> {
        if let Some(k) = self.simple.iter().position(|a| (a.i, a.j) == (i, j)) {
            return vec![k + 1];
        }
        let (a, b) = self.costandard(i, j).expect("non-simple root has a factorization");
        let mut w = self.lyndon_word(a.0, a.1);
        w.extend(self.lyndon_word(b.0, b.1));
        w
    }

    /// Positive root with the given weight, if any.
    pub fn root_of_weight(&self, w: Weight) -> Option<Root> {
        self.by_weight.get(&w).copied()
    }

    /// Reduced root with label `(i, j)`.
    pub fn reduced_root(&self, i: usize, j: usize) -> Option<Root> {
        self.reduced.iter().find(|r| r.i == i && r.j == j).copied()
    }

    /// An odd root is isotropic when its square length vanishes.
    pub fn is_isotropic(&self, r: &Root) -> bool {
        self.form(r.weight, r.weight) == 0
    }

    /// Height of a positive root in the simple-root basis.
    pub fn height(&self, w: Weight) -> Option<i32> {
        self.heights.get(&w).copied()
    }

    /// The shift `h` of the Cartan element `q^{h_k}` as a vector over `H_1..H_N` (or `H̃`).
    pub fn h_simple(&self, k: usize) -> Vec<i32> {
        let mut v = vec![0; self.n];
        let (a, b) = if self.mode == Mode::Osp && k == self.s {
            match self.type_tag {
                TypeTag::D => (self.s - 1, self.s + 1),
                _ => (self.s, self.s + 1),
            }
        } else {
            (k, k + 1)
        };
        v[a - 1] += 1;
        v[b - 1] -= 1;
        v
    }

    /// Bilinear form on Cartan vectors.
    pub fn h_pair(&self, a: &[i32], b: &[i32]) -> i32 {
        let mut t = 0;
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                t += x * y * self.h_form[i][j];
            }
        }
        t
    }

    /// Label `(i, j)` for `ε_i - ε_j` with `i < j`, normalized to the root list.
    pub fn normalize_label(&self, i: usize, j: usize) -> Option<(usize, usize)> {
        self.root_of_weight(self.eps(i) - self.eps(j)).map(|r| (r.i, r.j))
    }

    pub fn describe(&self) -> String {
        match self.mode {
            Mode::Gl => format!("gl parity={}", self.parity_string()),
            Mode::Osp => format!(
                "osp parity={} theta={} type={:?}",
                self.parity_string(),
                self.theta_string(),
                self.type_tag
            ),
        }
    }
}

/// A fixed sample of gl and osp data covering types A, B, C, D, several parity
/// sequences and non-default ϑ.
pub fn sample_data() -> Vec<RootDatum> {
    let mut v: Vec<RootDatum> = ["01", "00", "011", "0110", "0011", "01101"]
        .iter()
        .map(|p| RootDatum::gl_str(p).unwrap())
        .collect();
    for p in ["101", "0110", "11011", "010010"] {
        let d = RootDatum::osp_str(p, None).unwrap();
        // flip ϑ on the first odd pair
        let mut th = d.theta_vec().to_vec();
        let k = d.parity().iter().position(|&x| x == 1).unwrap();
        let n = d.n;
        th[k] = -th[k];
        th[n - 1 - k] = -th[n - 1 - k];
        let par = d.parity().to_vec();
        v.push(d);
        v.push(RootDatum::osp(&par, Some(&th)).unwrap());
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl11_form() {
        let d = RootDatum::gl_str("01").unwrap();
        assert_eq!(d.eps_form(1, 1), 1);
        assert_eq!(d.eps_form(2, 2), -1);
        assert_eq!(d.positive_roots().len(), 1);
        let d = RootDatum::gl_str("00").unwrap();
        assert_eq!((d.eps_form(1, 1), d.eps_form(2, 2)), (1, 1));
    }

    #[test]
    fn gl_convex_order() {
        let d = RootDatum::gl_str("011").unwrap();
        let labels: Vec<_> = d.convex_order().iter().map(|r| (r.i, r.j)).collect();
        assert_eq!(labels, vec![(1, 2), (1, 3), (2, 3)]);
        assert!(RootDatum::gl_str("0").is_err());
    }

    #[test]
    fn osp12() {
        let d = RootDatum::osp_str("101", None).unwrap();
        assert_eq!(d.type_tag, TypeTag::B);
        assert_eq!(d.theta_string(), "++-");
        let red: Vec<_> = d.reduced_roots().iter().map(|r| (r.i, r.j)).collect();
        assert_eq!(red, vec![(1, 2)]);
        // Φ+ = {ε1, 2ε1} with ε1 odd: 2ρ = 2ε1 - ε1 - ... ; (ρ, ε1) = -1/2
        assert_eq!(d.rho2(1), -1);
    }

    #[test]
    fn type_tags() {
        assert_eq!(RootDatum::osp_str("0110", None).unwrap().type_tag, TypeTag::C);
        assert_eq!(RootDatum::osp_str("11011", None).unwrap().type_tag, TypeTag::B);
        assert_eq!(RootDatum::osp_str("010010", None).unwrap().type_tag, TypeTag::D);
        assert_eq!(RootDatum::osp_str("1001", None).unwrap().type_tag, TypeTag::D);
    }

    #[test]
    fn osp_validation() {
        assert!(matches!(RootDatum::osp_str("10", None), Err(DatumError::OddN(1))));
        assert!(matches!(RootDatum::osp_str("0110", Some("-+++")), Err(DatumError::BadTheta(..))));
        assert!(RootDatum::osp_str("0110", Some("+-++")).is_ok());
        assert!(matches!(RootDatum::osp_str("01", None), Err(DatumError::OddN(1))));
        assert!(matches!(RootDatum::osp_str("1100", None), Err(DatumError::NotSymmetric { .. })));
        assert!(matches!(RootDatum::osp_str("11111", None), Err(DatumError::OddN(5))));
        assert!(RootDatum::osp_str("101", Some("-++")).is_ok());
    }

    #[test]
    fn d_type_order_puts_s_prime_after_s() {
        let d = RootDatum::osp_str("0000", None).unwrap();
        let order = d.convex_order();
        let pos = |i, j| order.iter().position(|r| r.i == i && r.j == j).unwrap();
        // s = 2, s' = 3
        assert!(pos(1, 2) < pos(1, 3));
    }

    fn all_test_data() -> Vec<RootDatum> {
        sample_data()
    }

    #[test]
    fn weyl_vector_property() {
        for d in all_test_data() {
            for a in d.simple_roots() {
                // 2(ρ, α) = (α, α) with α = ε_i - ε_j
                let rho_alpha2 = d.rho2(a.i) - d.rho2(a.j);
                assert_eq!(rho_alpha2, d.form(a.weight, a.weight), "{} {}", d.describe(), a);
            }
        }
    }

    #[test]
    fn theta_products() {
        for d in all_test_data().into_iter().filter(|d| d.mode == Mode::Osp) {
            for i in 1..=d.n {
                assert_eq!(d.theta(i) * d.theta(d.prime(i)), if d.par(i) == 0 { 1 } else { -1 });
            }
        }
    }

    #[test]
    fn reduced_roots_are_those_whose_half_is_not_a_root() {
        for d in all_test_data() {
            for r in d.positive_roots() {
                let half_is_root = r.weight.0.iter().all(|x| x % 2 == 0)
                    && d.root_of_weight(Weight(r.weight.0.map(|x| x / 2))).is_some();
                let is_reduced = d.reduced_roots().contains(r);
                assert_eq!(is_reduced, !half_is_root, "{} {}", d.describe(), r);
            }
        }
    }

    #[test]
    fn middle_epsilon_vanishes() {
        for d in all_test_data() {
            if d.mode == Mode::Osp && d.n % 2 == 1 {
                for j in 1..=d.n {
                    assert_eq!(d.eps_form(d.s + 1, j), 0);
                }
            }
        }
    }

    #[test]
    fn convexity() {
        for d in all_test_data() {
            let order = d.convex_order();
            for (a, x) in order.iter().enumerate() {
                for (b, y) in order.iter().enumerate() {
                    if a >= b {
                        continue;
                    }
                    if let Some(c) = order.iter().position(|z| z.weight == x.weight + y.weight) {
                        assert!(a < c && c < b, "{}: {} + {}", d.describe(), x, y);
                    }
                }
            }
            for r in &order {
                if let Some((a, b)) = d.costandard(r.i, r.j) {
                    let pos = |l: (usize, usize)| order.iter().position(|z| (z.i, z.j) == l).unwrap();
                    assert!(pos(a) < pos((r.i, r.j)) && pos((r.i, r.j)) < pos(b));
                }
            }
        }
    }

    #[test]
    fn lyndon_order_is_pair_order_except_for_d_long_roots() {
        for d in all_test_data() {
            let o: Vec<_> = d.convex_order().iter().map(|r| (r.i, r.j)).collect();
            let mut lex = o.clone();
            lex.sort();
            if d.type_tag == TypeTag::D {
                // words "2" < "23" < "3": 2ε_2 sits between ε_2 - ε_3 and α_s = ε_2 + ε_3
                assert_eq!(o, vec![(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 5), (2, 4)]);
            } else {
                assert_eq!(o, lex, "{}", d.describe());
            }
        }
    }

    #[test]
    fn heights_of_simple_roots_are_one() {
        for d in all_test_data() {
            for a in d.simple_roots() {
                assert_eq!(d.height(a.weight), Some(1), "{} {}", d.describe(), a);
            }
            for r in d.reduced_roots() {
                assert!(d.height(r.weight).unwrap() >= 1);
            }
        }
    }
}
