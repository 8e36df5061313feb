//! Free superbialgebra on the RTT and Drinfeld–Jimbo alphabets: letters, words,
//! noncommutative polynomials, coproducts and counit.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, RwLock};

use thiserror::Error;

use crate::grading::sign;
use crate::gtensor::Coeff;
use crate::qfield::QRat;
use crate::rootdata::{RootDatum, Weight, MAX_N};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("letter {0} is not in the alphabet of this datum")]
    UnknownLetter(String),
    #[error("cannot parse word {word:?}: {msg}")]
    Parse { word: String, msg: String },
}

/// Integer vector over `H_1..H_N` (gl) or `H̃_1..H̃_N` (osp).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HVec(pub [i8; MAX_N + 1]);

impl HVec {
    pub fn from_slice(v: &[i32]) -> Self {
        let mut a = [0i8; MAX_N + 1];
        for (x, y) in a.iter_mut().zip(v) {
            *x = *y as i8;
        }
        HVec(a)
    }

    pub fn to_vec(&self, n: usize) -> Vec<i32> {
        self.0[..n].iter().map(|&x| x as i32).collect()
    }

    pub fn neg(&self) -> Self {
        let mut a = self.0;
        for x in a.iter_mut() {
            *x = -*x;
        }
        HVec(a)
    }
}

impl fmt::Debug for HVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&x| x != 0).map_or(0, |k| k + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}

/// Generators of both sides. Indices are 1-based.
///
/// `LP(i,j)` is `l⁺_ij` (i <= j), `LM(j,i)` is `l⁻_ji` (j >= i); the `Inv`
/// variants are formal inverses of the diagonal letters.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    LP(u8, u8),
    LM(u8, u8),
    LPInv(u8),
    LMInv(u8),
    E(u8),
    F(u8),
    K(HVec),
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::LP(i, j) => write!(f, "lp{i}_{j}"),
            Letter::LM(i, j) => write!(f, "lm{i}_{j}"),
            Letter::LPInv(i) => write!(f, "lpinv{i}"),
            Letter::LMInv(i) => write!(f, "lminv{i}"),
            Letter::E(i) => write!(f, "e{i}"),
            Letter::F(i) => write!(f, "f{i}"),
            Letter::K(h) => {
                write!(f, "K[")?;
                let last = h.0.iter().rposition(|&x| x != 0).map_or(0, |k| k + 1);
                for (k, x) in h.0[..last].iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl Letter {
    pub fn is_grouplike(&self) -> bool {
        match self {
            Letter::LP(i, j) | Letter::LM(i, j) => i == j,
            Letter::LPInv(_) | Letter::LMInv(_) | Letter::K(_) => true,
            Letter::E(_) | Letter::F(_) => false,
        }
    }

    /// Parses one letter in the `Display` syntax.
    pub fn parse(s: &str) -> Option<Letter> {
        let num = |t: &str| t.parse::<u8>().ok();
        let pair = |t: &str| {
            let (a, b) = t.split_once('_')?;
            Some((num(a)?, num(b)?))
        };
        if let Some(r) = s.strip_prefix("lpinv") {
            return num(r).map(Letter::LPInv);
        }
        if let Some(r) = s.strip_prefix("lminv") {
            return num(r).map(Letter::LMInv);
        }
        if let Some(r) = s.strip_prefix("lp") {
            return pair(r).map(|(i, j)| Letter::LP(i, j));
        }
        if let Some(r) = s.strip_prefix("lm") {
            return pair(r).map(|(i, j)| Letter::LM(i, j));
        }
        if let Some(r) = s.strip_prefix('e') {
            return num(r).map(Letter::E);
        }
        if let Some(r) = s.strip_prefix('f') {
            return num(r).map(Letter::F);
        }
        let body = s.strip_prefix("K[")?.strip_suffix(']')?;
        let v: Option<Vec<i32>> = if body.is_empty() {
            Some(vec![])
        } else {
            body.split(',').map(|t| t.trim().parse().ok()).collect()
        };
        let v = v?;
        (v.len() <= MAX_N).then(|| Letter::K(HVec::from_slice(&v)))
    }
}

pub type Word = Vec<Letter>;

/// Element of `𝒯 ⊗ 𝒯 ⊗ 𝒯` keyed by word triples.
pub type TripleTensor = BTreeMap<(Word, Word, Word), QRat>;

/// Parses a whitespace or `*` separated word; `1` or the empty string is the empty word.
pub fn parse_word(s: &str) -> Result<Word, AlgError> {
    s.split(|c: char| c.is_whitespace() || c == '*')
        .filter(|t| !t.is_empty() && *t != "1")
        .map(|t| {
            Letter::parse(t).ok_or_else(|| AlgError::Parse {
                word: s.to_string(),
                msg: format!("bad letter {t:?}"),
            })
        })
        .collect()
}

pub fn word_string(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

/// Sparse noncommutative polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgElement {
    pub terms: BTreeMap<Word, QRat>,
}

impl AlgElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(vec![], QRat::one())
    }

    pub fn word(w: Word, c: QRat) -> Self {
        let mut a = Self::zero();
        a.add_term(w, c);
        a
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(vec![l], QRat::one())
    }

    pub fn add_term(&mut self, w: Word, c: QRat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w);
        match e {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, c: &QRat) -> Self {
        let mut r = Self::zero();
        for (w, x) in &self.terms {
            r.add_term(w.clone(), x * c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&QRat::from_int(-1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                r.add_term(w, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*{}", word_string(w))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Element of `𝒯 ⊗ 𝒯`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    pub terms: BTreeMap<(Word, Word), QRat>,
}

impl TensorElement {
    pub fn add_term(&mut self, a: Word, b: Word, c: QRat) {
        if c.is_zero() {
            return;
        }
        let k = (a, b);
        let v = self.terms.entry(k.clone()).or_insert_with(QRat::zero);
        *v += &c;
        if v.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn unit() -> Self {
        let mut t = Self::default();
        t.add_term(vec![], vec![], QRat::one());
        t
    }
}

/// Append-only word interner.
#[derive(Default)]
pub struct Interner {
    inner: RwLock<(HashMap<Word, u32>, Vec<Word>)>,
}

impl Interner {
    pub fn intern(&self, w: &[Letter]) -> u32 {
        if let Some(&id) = self.inner.read().unwrap().0.get(w) {
            return id;
        }
        let mut g = self.inner.write().unwrap();
        if let Some(&id) = g.0.get(w) {
            return id;
        }
        let id = g.1.len() as u32;
        g.1.push(w.to_vec());
        g.0.insert(w.to_vec(), id);
        id
    }

    pub fn get(&self, id: u32) -> Word {
        self.inner.read().unwrap().1[id as usize].clone()
    }

    pub fn len(&self) -> usize {
        self.inner.read().unwrap().1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Degree data and coproducts of the letters of one datum.
pub struct Alphabet {
    pub datum: Arc<RootDatum>,
    pub words: Interner,
    coprod: Mutex<HashMap<u32, Arc<TensorElement>>>,
}

impl Alphabet {
    pub fn new(datum: Arc<RootDatum>) -> Self {
        Alphabet {
            datum,
            words: Interner::default(),
            coprod: Mutex::new(HashMap::new()),
        }
    }

    fn check_index(&self, l: &Letter, i: u8) -> Result<usize, AlgError> {
        let i = i as usize;
        if i == 0 || i > self.datum.n {
            return Err(AlgError::UnknownLetter(l.to_string()));
        }
        Ok(i)
    }

    /// Rejects letters outside the datum's alphabet.
    pub fn validate(&self, l: &Letter) -> Result<(), AlgError> {
        let bad = || AlgError::UnknownLetter(l.to_string());
        match *l {
            Letter::LP(i, j) => {
                let (i, j) = (self.check_index(l, i)?, self.check_index(l, j)?);
                if i > j {
                    return Err(bad());
                }
            }
            Letter::LM(j, i) => {
                let (i, j) = (self.check_index(l, i)?, self.check_index(l, j)?);
                if i > j {
                    return Err(bad());
                }
            }
            Letter::LPInv(i) | Letter::LMInv(i) => {
                self.check_index(l, i)?;
            }
            Letter::E(i) | Letter::F(i) => {
                if i == 0 || i as usize > self.datum.num_simple() {
                    return Err(bad());
                }
            }
            Letter::K(h) => {
                if h.0[self.datum.n..].iter().any(|&x| x != 0) {
                    return Err(bad());
                }
            }
        }
        Ok(())
    }

    pub fn validate_word(&self, w: &[Letter]) -> Result<(), AlgError> {
        w.iter().try_for_each(|l| self.validate(l))
    }

    /// Q-degree of a letter.
    pub fn degree(&self, l: &Letter) -> Weight {
        let d = &self.datum;
        match *l {
            Letter::LP(i, j) | Letter::LM(i, j) => d.eps(i as usize) - d.eps(j as usize),
            Letter::E(k) => d.simple_roots()[k as usize - 1].weight,
            Letter::F(k) => -d.simple_roots()[k as usize - 1].weight,
            _ => Weight::ZERO,
        }
    }

    pub fn parity(&self, l: &Letter) -> u8 {
        let d = &self.datum;
        match *l {
            Letter::LP(i, j) | Letter::LM(i, j) => d.par(i as usize) ^ d.par(j as usize),
            Letter::E(k) | Letter::F(k) => d.simple_roots()[k as usize - 1].parity,
            _ => 0,
        }
    }

    pub fn word_degree(&self, w: &[Letter]) -> Weight {
        w.iter().fold(Weight::ZERO, |acc, l| acc + self.degree(l))
    }

    pub fn word_parity(&self, w: &[Letter]) -> u8 {
        w.iter().fold(0, |acc, l| acc ^ self.parity(l))
    }

    /// `Δ(l)`.
    pub fn letter_coproduct(&self, l: &Letter) -> Result<TensorElement, AlgError> {
        self.validate(l)?;
        let d = &self.datum;
        let mut t = TensorElement::default();
        let one = QRat::one();
        match *l {
            Letter::LP(i, j) => {
                let (pi, pj) = (d.par(i as usize) as u32, d.par(j as usize) as u32);
                for k in i..=j {
                    let pk = d.par(k as usize) as u32;
                    let s = sign((pi + pk) * (pk + pj));
                    t.add_term(vec![Letter::LP(i, k)], vec![Letter::LP(k, j)], QRat::from_int(s as i64));
                }
            }
            Letter::LM(j, i) => {
                let (pi, pj) = (d.par(i as usize) as u32, d.par(j as usize) as u32);
                for k in (i..=j).rev() {
                    let pk = d.par(k as usize) as u32;
                    let s = sign((pj + pk) * (pk + pi));
                    t.add_term(vec![Letter::LM(j, k)], vec![Letter::LM(k, i)], QRat::from_int(s as i64));
                }
            }
            Letter::LPInv(_) | Letter::LMInv(_) | Letter::K(_) => t.add_term(vec![*l], vec![*l], one),
            Letter::E(k) => {
                let h = HVec::from_slice(&d.h_simple(k as usize));
                t.add_term(vec![Letter::K(h)], vec![*l], one.clone());
                t.add_term(vec![*l], vec![], one);
            }
            Letter::F(k) => {
                let h = HVec::from_slice(&d.h_simple(k as usize)).neg();
                t.add_term(vec![], vec![*l], one.clone());
                t.add_term(vec![*l], vec![Letter::K(h)], one);
            }
        }
        Ok(t)
    }

    /// Product in `𝒯 ⊗ 𝒯`: `(a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa' ⊗ bb'`.
    pub fn tensor_mul(&self, x: &TensorElement, y: &TensorElement) -> TensorElement {
        let mut t = TensorElement::default();
        for ((a, b), c) in &x.terms {
            let pb = self.word_parity(b) as u32;
            for ((a2, b2), c2) in &y.terms {
                let s = sign(pb * self.word_parity(a2) as u32);
                let mut aa = a.clone();
                aa.extend_from_slice(a2);
                let mut bb = b.clone();
                bb.extend_from_slice(b2);
                t.add_term(aa, bb, (c * c2).signed(s));
            }
        }
        t
    }

    /// `Δ(w)`, memoized per interned word.
    pub fn word_coproduct(&self, w: &[Letter]) -> Result<Arc<TensorElement>, AlgError> {
        let id = self.words.intern(w);
        if let Some(t) = self.coprod.lock().unwrap().get(&id) {
            return Ok(t.clone());
        }
        let t = match w.len() {
            0 => TensorElement::unit(),
            1 => self.letter_coproduct(&w[0])?,
            n => {
                let head = self.word_coproduct(&w[..n - 1])?;
                let last = self.letter_coproduct(&w[n - 1])?;
                self.tensor_mul(&head, &last)
            }
        };
        let t = Arc::new(t);
        self.coprod.lock().unwrap().insert(id, t.clone());
        Ok(t)
    }

    pub fn coproduct(&self, x: &AlgElement) -> Result<TensorElement, AlgError> {
        let mut t = TensorElement::default();
        for (w, c) in &x.terms {
            for ((a, b), c2) in &self.word_coproduct(w)?.terms {
                t.add_term(a.clone(), b.clone(), c * c2);
            }
        }
        Ok(t)
    }

    pub fn letter_counit(&self, l: &Letter) -> QRat {
        if l.is_grouplike() {
            QRat::one()
        } else {
            QRat::zero()
        }
    }

    pub fn word_counit(&self, w: &[Letter]) -> QRat {
        if w.iter().all(Letter::is_grouplike) {
            QRat::one()
        } else {
            QRat::zero()
        }
    }

    pub fn counit(&self, x: &AlgElement) -> QRat {
        x.terms
            .iter()
            .fold(QRat::zero(), |acc, (w, c)| acc + c * &self.word_counit(w))
    }

    /// `(Δ⊗id)Δ(w)` and `(id⊗Δ)Δ(w)` as maps from word triples.
    pub fn iterated_coproducts(
        &self,
        w: &[Letter],
    ) -> Result<(TripleTensor, TripleTensor), AlgError> {
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        let add = |m: &mut TripleTensor, k: (Word, Word, Word), c: QRat| {
            let v = m.entry(k.clone()).or_insert_with(QRat::zero);
            *v += &c;
            if v.is_zero() {
                m.remove(&k);
            }
        };
        for ((a, b), c) in &self.word_coproduct(w)?.terms {
            for ((a1, a2), c1) in &self.word_coproduct(a)?.terms {
                add(&mut left, (a1.clone(), a2.clone(), b.clone()), c * c1);
            }
            for ((b1, b2), c1) in &self.word_coproduct(b)?.terms {
                add(&mut right, (a.clone(), b1.clone(), b2.clone()), c * c1);
            }
        }
        Ok((left, right))
    }
}

/// All words of length `len` over `letters`.
pub fn words_of_length(letters: &[Letter], len: usize) -> Vec<Word> {
    let mut out: Vec<Word> = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                letters.iter().map(move |l| {
                    let mut w2 = w.clone();
                    w2.push(*l);
                    w2
                })
            })
            .collect();
    }
    out
}

/// `l⁺` letters with their diagonal inverses.
pub fn plus_letters(d: &RootDatum, with_inverses: bool) -> Vec<Letter> {
    let n = d.n as u8;
    let mut v: Vec<Letter> = (1..=n).flat_map(|i| (i..=n).map(move |j| Letter::LP(i, j))).collect();
    if with_inverses {
        v.extend((1..=n).map(Letter::LPInv));
    }
    v
}

pub fn minus_letters(d: &RootDatum, with_inverses: bool) -> Vec<Letter> {
    let n = d.n as u8;
    let mut v: Vec<Letter> = (1..=n).flat_map(|i| (i..=n).map(move |j| Letter::LM(j, i))).collect();
    if with_inverses {
        v.extend((1..=n).map(Letter::LMInv));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(p: &str) -> Alphabet {
        Alphabet::new(Arc::new(RootDatum::gl_str(p).unwrap()))
    }

    #[test]
    fn lp12_coproduct_gl11() {
        let a = alpha("01");
        let t = a.letter_coproduct(&Letter::LP(1, 2)).unwrap();
        let mut want = TensorElement::default();
        want.add_term(vec![Letter::LP(1, 1)], vec![Letter::LP(1, 2)], QRat::one());
        want.add_term(vec![Letter::LP(1, 2)], vec![Letter::LP(2, 2)], QRat::one());
        assert_eq!(t, want);
        let t = a.letter_coproduct(&Letter::LP(1, 1)).unwrap();
        assert_eq!(t.terms.len(), 1);
    }

    #[test]
    fn f_coproduct() {
        let a = alpha("011");
        let t = a.letter_coproduct(&Letter::F(1)).unwrap();
        let h = HVec::from_slice(&[-1, 1, 0]);
        assert_eq!(t.terms.get(&(vec![Letter::F(1)], vec![Letter::K(h)])), Some(&QRat::one()));
        assert_eq!(t.terms.get(&(vec![], vec![Letter::F(1)])), Some(&QRat::one()));
    }

    #[test]
    fn unknown_letter() {
        let a = alpha("01");
        assert!(a.letter_coproduct(&Letter::LP(2, 1)).is_err());
        assert!(a.letter_coproduct(&Letter::E(2)).is_err());
        assert!(a.letter_coproduct(&Letter::LP(1, 3)).is_err());
    }

    #[test]
    fn counit_values() {
        let a = alpha("01");
        assert!(a.letter_counit(&Letter::LP(1, 2)).is_zero());
        assert!(a.letter_counit(&Letter::K(HVec::from_slice(&[1, 0]))).is_one());
        assert!(a.counit(&AlgElement::one()).is_one());
    }

    #[test]
    fn parse_roundtrip() {
        let w = parse_word("lp1_2 lminv3 K[1,-1] e2 f1 lm2_1 lpinv1").unwrap();
        assert_eq!(parse_word(&word_string(&w)).unwrap(), w);
        assert_eq!(parse_word("1").unwrap(), vec![]);
        assert!(parse_word("x3").is_err());
    }
}
