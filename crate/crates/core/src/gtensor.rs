//! Sparse graded matrices over a coefficient ring, with tensor legs.
//!
//! An entry stores `c · (E_{i1 j1} ⊗ ... ⊗ E_{iL jL})` with the coefficient on the
//! left. Matrix units have parity `ī + j̄`; coefficients carry their own parity.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::grading::{sign, Bicharacter, GDegree};
use crate::qfield::QRat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GtError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("duplicate slot {0}")]
    DuplicateSlot(usize),
    #[error("slot {slot} out of range 1..={legs}")]
    SlotOutOfRange { slot: usize, legs: usize },
    #[error("diagonal entry {0} is not invertible")]
    NotInvertible(usize),
    #[error("matrix is not {side} triangular: entry ({i},{j})")]
    NotTriangular { side: &'static str, i: usize, j: usize },
}

/// Minimal interface a coefficient ring has to provide.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, c: &QRat) -> Self;
    /// Parity of a homogeneous coefficient.
    fn parity(&self) -> u8;
    fn inverse(&self) -> Option<Self>;

    fn signed(&self, s: i32) -> Self {
        if s < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl Coeff for QRat {
    fn is_zero(&self) -> bool {
        QRat::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: &QRat) -> Self {
        self * c
    }
    fn parity(&self) -> u8 {
        0
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// Matrix legs are limited to 8 so that a multi-index packs into a `u64`.
pub const MAX_LEGS: usize = 8;

/// Packed multi-index: leg `l` uses bits `8(L-1-l)..8(L-l)`, row index in the high nibble.
pub type Key = u64;

/// Right-factor entry grouped by row: key, coefficient, leg parities.
type RowEntry<'a, C> = (Key, &'a C, Vec<u8>);

#[derive(Clone, PartialEq)]
pub struct GradedMatrix<C> {
    n: usize,
    legs: usize,
    parity: Arc<[u8]>,
    entries: BTreeMap<Key, C>,
}

impl<C: Coeff> GradedMatrix<C> {
    pub fn new(n: usize, legs: usize, parity: Arc<[u8]>) -> Self {
        assert!((1..=MAX_LEGS).contains(&legs), "unsupported number of legs");
        assert!(n <= 15 && parity.len() == n, "parity length must equal the dimension");
        GradedMatrix {
            n,
            legs,
            parity,
            entries: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn parity_seq(&self) -> &Arc<[u8]> {
        &self.parity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn pack(&self, idx: &[(usize, usize)]) -> Key {
        debug_assert_eq!(idx.len(), self.legs);
        idx.iter().fold(0u64, |k, &(i, j)| (k << 8) | ((i as u64) << 4) | j as u64)
    }

    pub fn unpack(&self, key: Key) -> Vec<(usize, usize)> {
        (0..self.legs)
            .map(|l| {
                let b = (key >> (8 * (self.legs - 1 - l))) & 0xff;
                ((b >> 4) as usize, (b & 0xf) as usize)
            })
            .collect()
    }

    /// Parity of the matrix unit on each leg.
    pub fn leg_parities(&self, key: Key) -> Vec<u8> {
        self.unpack(key)
            .into_iter()
            .map(|(i, j)| (self.parity[i] + self.parity[j]) & 1)
            .collect()
    }

    pub fn unit_parity(&self, key: Key) -> u8 {
        self.leg_parities(key).iter().fold(0, |a, b| a ^ b)
    }

    pub fn degree_of(&self, key: Key) -> Option<GDegree> {
        self.entries
            .get(&key)
            .map(|c| GDegree::new(c.parity(), self.unit_parity(key)))
    }

    pub fn get(&self, idx: &[(usize, usize)]) -> Option<&C> {
        self.entries.get(&self.pack(idx))
    }

    pub fn entries(&self) -> impl Iterator<Item = (Key, &C)> {
        self.entries.iter().map(|(k, c)| (*k, c))
    }

    /// Adds `c` at `idx`, dropping the entry if it cancels.
    pub fn add_at(&mut self, idx: &[(usize, usize)], c: C) {
        let k = self.pack(idx);
        self.add_key(k, c);
    }

    pub fn add_key(&mut self, k: Key, c: C) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&k) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.entries.remove(&k);
                } else {
                    *old = s;
                }
            }
            None => {
                self.entries.insert(k, c);
            }
        }
    }

    /// `Σ_c one · E_cc ⊗ ... ⊗ E_cc` summed independently on every leg.
    pub fn identity(n: usize, legs: usize, parity: Arc<[u8]>, one: C) -> Self {
        let mut m = Self::new(n, legs, parity);
        let total = n.pow(legs as u32);
        for mut t in 0..total {
            let mut idx = vec![(0, 0); legs];
            for l in (0..legs).rev() {
                idx[l] = (t % n, t % n);
                t /= n;
            }
            m.add_at(&idx, one.clone());
        }
        m
    }

    fn check_shape(&self, o: &Self) -> Result<(), GtError> {
        if self.n != o.n || self.legs != o.legs || self.parity != o.parity {
            return Err(GtError::Shape(format!(
                "({}, {} legs) vs ({}, {} legs)",
                self.n, self.legs, o.n, o.legs
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, GtError> {
        self.check_shape(o)?;
        let mut m = self.clone();
        for (k, c) in &o.entries {
            m.add_key(*k, c.clone());
        }
        Ok(m)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, GtError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, q: &QRat) -> Self {
        self.map(|c| c.scale(q))
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        let mut m = Self::new(self.n, self.legs, self.parity.clone());
        for (k, c) in &self.entries {
            m.add_key(*k, f(c));
        }
        m
    }

    pub fn map_into<D: Coeff>(&self, f: impl Fn(&C) -> D) -> GradedMatrix<D> {
        let mut m = GradedMatrix::new(self.n, self.legs, self.parity.clone());
        for (k, c) in &self.entries {
            m.add_key(*k, f(c));
        }
        m
    }

    /// Matrix product under the bicharacter `b`.
    ///
    /// Matrix units always pick up `(-1)^{Σ_{n<m} |Y_n||X_m|}`; the coefficient of the
    /// right factor additionally passes the left matrix units with sign `b`.
    pub fn matmul(&self, o: &Self, b: Bicharacter) -> Result<Self, GtError> {
        self.check_shape(o)?;
        let legs = self.legs;
        let imask: u64 = (0..legs).fold(0, |m, l| m | (0xf0u64 << (8 * l)));
        let jmask: u64 = (0..legs).fold(0, |m, l| m | (0x0fu64 << (8 * l)));
        let mut rows: HashMap<u64, Vec<RowEntry<'_, C>>> = HashMap::new();
        for (k, c) in &o.entries {
            rows.entry(k & imask).or_default().push((*k, c, o.leg_parities(*k)));
        }
        let mut out = Self::new(self.n, legs, self.parity.clone());
        for (ka, ca) in &self.entries {
            let want = (ka & jmask) << 4;
            let Some(bs) = rows.get(&want) else { continue };
            let xa = self.leg_parities(*ka);
            let xa_total = xa.iter().fold(0, |a, b| a ^ b);
            for (kb, cb, yb) in bs {
                let mut p = 0u32;
                for nn in 0..legs {
                    for mm in nn + 1..legs {
                        p += (yb[nn] * xa[mm]) as u32;
                    }
                }
                let s = sign(p) * b.eval(GDegree::matrix(xa_total), GDegree::coeff(cb.parity()));
                let key = (ka & imask) | (kb & jmask);
                out.add_key(key, ca.mul(cb).signed(s));
            }
        }
        Ok(out)
    }

    /// Embeds `self` into `total` legs, placing leg `k` at slot `slots[k]` (1-based)
    /// and identities elsewhere. Unordered slots contribute the braiding sign.
    pub fn tensor_legs(&self, slots: &[usize], total: usize, b: Bicharacter) -> Result<Self, GtError> {
        if slots.len() != self.legs {
            return Err(GtError::Shape(format!("{} slots for {} legs", slots.len(), self.legs)));
        }
        let mut seen = vec![false; total + 1];
        for &s in slots {
            if s == 0 || s > total {
                return Err(GtError::SlotOutOfRange { slot: s, legs: total });
            }
            if seen[s] {
                return Err(GtError::DuplicateSlot(s));
            }
            seen[s] = true;
        }
        let free: Vec<usize> = (1..=total).filter(|s| !seen[*s]).collect();
        let mut out = Self::new(self.n, total, self.parity.clone());
        let fills = self.n.pow(free.len() as u32);
        for (k, c) in &self.entries {
            let idx = self.unpack(*k);
            let par = self.leg_parities(*k);
            let mut p = 0u32;
            for a in 0..self.legs {
                for bb in a + 1..self.legs {
                    if slots[a] > slots[bb] {
                        // only matrix units move; their degree is (0, x)
                        p += u32::from(b.eval(GDegree::matrix(par[a]), GDegree::matrix(par[bb])) < 0);
                    }
                }
            }
            for mut t in 0..fills {
                let mut full = vec![(0, 0); total];
                for (a, &s) in slots.iter().enumerate() {
                    full[s - 1] = idx[a];
                }
                for &f in free.iter().rev() {
                    full[f - 1] = (t % self.n, t % self.n);
                    t /= self.n;
                }
                out.add_at(&full, c.signed(sign(p)));
            }
        }
        Ok(out)
    }

    /// Concatenates the legs of `self` and `o`: `(c X) ⊗ (c' Y) = ± c c' X ⊗ Y`.
    pub fn kron(&self, o: &Self, b: Bicharacter) -> Result<Self, GtError> {
        if self.n != o.n || self.parity != o.parity || self.legs + o.legs > MAX_LEGS {
            return Err(GtError::Shape("kron of incompatible matrices".into()));
        }
        let mut out = Self::new(self.n, self.legs + o.legs, self.parity.clone());
        for (ka, ca) in &self.entries {
            let xa = self.unit_parity(*ka);
            for (kb, cb) in &o.entries {
                let s = b.eval(GDegree::matrix(xa), GDegree::coeff(cb.parity()));
                out.add_key((ka << (8 * o.legs)) | kb, ca.mul(cb).signed(s));
            }
        }
        Ok(out)
    }

    /// Supertranspose on one leg (0-based) or on all legs:
    /// `E_ij ↦ (-1)^{j̄(ī+j̄)} E_ji` per selected leg.
    pub fn supertranspose(&self, leg: Option<usize>) -> Self {
        let mut out = Self::new(self.n, self.legs, self.parity.clone());
        for (k, c) in &self.entries {
            let mut idx = self.unpack(*k);
            let mut p = 0u32;
            for (l, e) in idx.iter_mut().enumerate() {
                if leg.is_none_or(|x| x == l) {
                    let (i, j) = *e;
                    let (pi, pj) = (self.parity[i] as u32, self.parity[j] as u32);
                    p += pj * (pi + pj);
                    *e = (j, i);
                }
            }
            out.add_at(&idx, c.signed(sign(p)));
        }
        out
    }

    /// One-leg entry `(i, j)` (0-based), if nonzero.
    pub fn entry(&self, i: usize, j: usize) -> Option<&C> {
        assert_eq!(self.legs, 1);
        self.entries.get(&(((i as u64) << 4) | j as u64))
    }

    /// Gauss decomposition of a one-leg triangular matrix.
    ///
    /// Upper: `L = D U` with `U = D⁻¹ L`. Lower: `L = W D` with `W = L D⁻¹`.
    pub fn gauss_triangular(&self, side: Side) -> Result<(Vec<C>, Self), GtError> {
        if self.legs != 1 {
            return Err(GtError::Shape("Gauss decomposition needs one leg".into()));
        }
        for k in self.entries.keys() {
            let (i, j) = self.unpack(*k)[0];
            let bad = match side {
                Side::Upper => i > j,
                Side::Lower => i < j,
            };
            if bad {
                return Err(GtError::NotTriangular {
                    side: side.name(),
                    i: i + 1,
                    j: j + 1,
                });
            }
        }
        let mut diag = Vec::with_capacity(self.n);
        let mut inv = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let d = self.entry(i, i).cloned().ok_or(GtError::NotInvertible(i + 1))?;
            inv.push(d.inverse().ok_or(GtError::NotInvertible(i + 1))?);
            diag.push(d);
        }
        let mut u = Self::new(self.n, 1, self.parity.clone());
        for (k, c) in &self.entries {
            let (i, j) = self.unpack(*k)[0];
            let v = match side {
                Side::Upper => inv[i].mul(c),
                Side::Lower => c.mul(&inv[j]),
            };
            u.add_key(*k, v);
        }
        Ok((diag, u))
    }

    /// Diagonal one-leg matrix with the given entries.
    pub fn diagonal(parity: Arc<[u8]>, d: &[C]) -> Self {
        let mut m = Self::new(d.len(), 1, parity);
        for (i, c) in d.iter().enumerate() {
            m.add_at(&[(i, i)], c.clone());
        }
        m
    }

    /// First-leg slice along the last leg: the matrix `X` with `Σ X ⊗ E_ij` = self
    /// restricted to `E_ij` on the last leg. Only for two legs.
    pub fn slice_last(&self, i: usize, j: usize) -> Self {
        assert_eq!(self.legs, 2);
        let mut m = Self::new(self.n, 1, self.parity.clone());
        for (k, c) in &self.entries {
            if (k & 0xff) == (((i as u64) << 4) | j as u64) {
                m.add_key(k >> 8, c.clone());
            }
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::Upper => "upper",
            Side::Lower => "lower",
        }
    }
}

/// One-leg scalar matrices form a coefficient ring themselves.
impl Coeff for GradedMatrix<QRat> {
    fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        GradedMatrix::add(self, o).expect("block shapes agree")
    }
    fn neg(&self) -> Self {
        GradedMatrix::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self.matmul(o, Bicharacter::Standard).expect("block shapes agree")
    }
    fn scale(&self, c: &QRat) -> Self {
        GradedMatrix::scale(self, c)
    }
    fn parity(&self) -> u8 {
        self.entries.keys().next().map_or(0, |k| self.unit_parity(*k))
    }
    fn inverse(&self) -> Option<Self> {
        if self.legs != 1 {
            return None;
        }
        let n = self.n;
        let mut a: Vec<Vec<QRat>> = vec![vec![QRat::zero(); 2 * n]; n];
        for (k, c) in &self.entries {
            let (i, j) = self.unpack(*k)[0];
            a[i][j] = c.clone();
        }
        for (i, row) in a.iter_mut().enumerate() {
            row[n + i] = QRat::one();
        }
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            let p = a[col][col].inv().ok()?;
            for x in a[col].iter_mut() {
                *x = &*x * &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..2 * n {
                        let t = &f * &a[col][c];
                        a[r][c] = &a[r][c] - &t;
                    }
                }
            }
        }
        let mut m = Self::new(n, 1, self.parity.clone());
        for (i, row) in a.iter().enumerate() {
            for j in 0..n {
                m.add_at(&[(i, j)], row[n + j].clone());
            }
        }
        Some(m)
    }
}

impl<C: Coeff + fmt::Display> fmt::Debug for GradedMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GradedMatrix(n={}, legs={}) {{", self.n, self.legs)?;
        for (k, c) in &self.entries {
            let idx: Vec<String> = self.unpack(*k).iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
            writeln!(f, "  {} : {}", idx.join("⊗"), c)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for GradedMatrix<QRat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Serialize)]
pub struct EntryJson {
    /// 1-based `(i, j)` per leg.
    pub index: Vec<(usize, usize)>,
    pub coeff: String,
}

impl<C: Coeff + fmt::Display> GradedMatrix<C> {
    pub fn to_json_entries(&self) -> Vec<EntryJson> {
        self.entries
            .iter()
            .map(|(k, c)| EntryJson {
                index: self.unpack(*k).into_iter().map(|(i, j)| (i + 1, j + 1)).collect(),
                coeff: c.to_string(),
            })
            .collect()
    }

    /// First entry on which `self` and `o` differ, as 1-based indices.
    pub fn first_difference(&self, o: &Self) -> Option<Vec<(usize, usize)>> {
        let keys: std::collections::BTreeSet<Key> = self.entries.keys().chain(o.entries.keys()).copied().collect();
        keys.into_iter()
            .find(|k| self.entries.get(k) != o.entries.get(k))
            .map(|k| self.unpack(k).into_iter().map(|(i, j)| (i + 1, j + 1)).collect())
    }

    /// `"E2,1⊗E2,3: x vs y"` for the first differing entry, or `"equal"`.
    pub fn difference_witness(&self, o: &Self) -> String {
        let keys: std::collections::BTreeSet<Key> = self.entries.keys().chain(o.entries.keys()).copied().collect();
        let Some(k) = keys.into_iter().find(|k| self.entries.get(k) != o.entries.get(k)) else {
            return "equal".into();
        };
        let label = self
            .unpack(k)
            .into_iter()
            .map(|(i, j)| format!("E{},{}", i + 1, j + 1))
            .collect::<Vec<_>>()
            .join("⊗");
        let show = |m: &Self| m.entries.get(&k).map_or("0".to_string(), |c| c.to_string());
        format!("{label}: {} vs {}", show(self), show(o))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn par(s: &str) -> Arc<[u8]> {
        s.bytes().map(|b| b - b'0').collect::<Vec<_>>().into()
    }

    /// Toy odd coefficient: a scalar tagged with parity, used to test sign rules.
    #[derive(Clone, PartialEq, Debug)]
    struct Odd(QRat, u8);

    impl Coeff for Odd {
        fn is_zero(&self) -> bool {
            self.0.is_zero()
        }
        fn add(&self, o: &Self) -> Self {
            Odd(&self.0 + &o.0, self.1)
        }
        fn neg(&self) -> Self {
            Odd(-&self.0, self.1)
        }
        fn mul(&self, o: &Self) -> Self {
            Odd(&self.0 * &o.0, self.1 ^ o.1)
        }
        fn scale(&self, c: &QRat) -> Self {
            Odd(&self.0 * c, self.1)
        }
        fn parity(&self) -> u8 {
            self.1
        }
        fn inverse(&self) -> Option<Self> {
            None
        }
    }

    #[test]
    fn twisted_product_has_no_sign() {
        let p = par("01");
        let mut a = GradedMatrix::new(2, 1, p.clone());
        a.add_at(&[(0, 1)], Odd(QRat::one(), 1));
        let mut b = GradedMatrix::new(2, 1, p);
        b.add_at(&[(1, 0)], Odd(QRat::one(), 1));
        let t = a.matmul(&b, Bicharacter::Twisted).unwrap();
        assert_eq!(t.entry(0, 0), Some(&Odd(QRat::one(), 0)));
        // standard braiding: odd coefficient passes odd E12
        let s = a.matmul(&b, Bicharacter::Standard).unwrap();
        assert_eq!(s.entry(0, 0), Some(&Odd(QRat::from_int(-1), 0)));
    }

    #[test]
    fn upper_triangular_inverse() {
        let p = par("011");
        let mut l = GradedMatrix::new(3, 1, p.clone());
        l.add_at(&[(0, 0)], QRat::q_pow(1));
        l.add_at(&[(0, 2)], QRat::from_int(3));
        l.add_at(&[(1, 1)], QRat::from_int(2));
        l.add_at(&[(1, 2)], QRat::q_minus_qinv());
        l.add_at(&[(2, 2)], QRat::q_pow(-2));
        let inv = Coeff::inverse(&l).unwrap();
        let id = GradedMatrix::identity(3, 1, p, QRat::one());
        assert_eq!(l.matmul(&inv, Bicharacter::Standard).unwrap(), id);
    }

    #[test]
    fn gauss_two_by_two() {
        let p = par("00");
        let (a, b, c) = (QRat::q_pow(2), QRat::from_int(5), QRat::from_int(7));
        let mut l = GradedMatrix::new(2, 1, p.clone());
        l.add_at(&[(0, 0)], a.clone());
        l.add_at(&[(0, 1)], b.clone());
        l.add_at(&[(1, 1)], c.clone());
        let (d, u) = l.gauss_triangular(Side::Upper).unwrap();
        assert_eq!(d, vec![a.clone(), c.clone()]);
        assert_eq!(u.entry(0, 1), Some(&(&b / &a)));
        assert!(u.entry(0, 0).unwrap().is_one() && u.entry(1, 1).unwrap().is_one());
        let dm = GradedMatrix::diagonal(p.clone(), &d);
        assert_eq!(dm.matmul(&u, Bicharacter::Standard).unwrap(), l);
        assert!(matches!(
            l.gauss_triangular(Side::Lower),
            Err(GtError::NotTriangular { .. })
        ));
        let id = GradedMatrix::identity(2, 1, p, QRat::one());
        let (d, u) = id.gauss_triangular(Side::Upper).unwrap();
        assert!(d.iter().all(|x| x.is_one()));
        assert_eq!(u, id);
    }

    #[test]
    fn identity_embeds_to_identity() {
        let p = par("011");
        let id = GradedMatrix::identity(3, 1, p.clone(), QRat::one());
        for slot in 1..=3 {
            let e = id.tensor_legs(&[slot], 3, Bicharacter::Standard).unwrap();
            assert_eq!(e, GradedMatrix::identity(3, 3, p.clone(), QRat::one()));
        }
        assert!(matches!(
            id.kron(&id, Bicharacter::Standard).unwrap().tensor_legs(&[1, 1], 2, Bicharacter::Standard),
            Err(GtError::DuplicateSlot(1))
        ));
    }

    #[test]
    fn supertranspose_of_even_matrix_is_involutive() {
        let p = par("000");
        let mut x = GradedMatrix::new(3, 2, p);
        x.add_at(&[(0, 1), (2, 0)], QRat::from_int(3));
        x.add_at(&[(1, 1), (2, 2)], QRat::q_pow(1));
        assert_eq!(x.supertranspose(None).supertranspose(None), x);
    }
}
