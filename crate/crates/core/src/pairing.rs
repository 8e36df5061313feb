//! Skew pairings between free bialgebras: the RTT pairing `σ_R`, its transposed
//! inverse `σ̃_R`, and the Drinfeld–Jimbo pairing, evaluated by memoized recursion.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::freealg::{parse_word, word_string, AlgElement, AlgError, Alphabet, Letter, Word};
use crate::grading::{sign, Bicharacter};
use crate::gtensor::{Coeff, GtError};
use crate::qfield::QRat;
use crate::report::CheckRow;
use crate::rmatrix::{Mat, RMatrixBundle};
use crate::rootdata::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("letter {letter} is not in the {side} alphabet of pairing {spec}")]
    WrongSide {
        letter: String,
        side: &'static str,
        spec: &'static str,
    },
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Tensor(#[from] GtError),
    #[error(transparent)]
    R(#[from] crate::rmatrix::RError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecKind {
    /// `U⁺(R) × U⁻(R)`.
    SigmaR,
    /// `U⁻(R) × U⁺(R)`.
    SigmaTildeR,
    /// `U^≤ × U^≥` on Chevalley letters.
    Dj,
}

impl SpecKind {
    pub fn name(self) -> &'static str {
        match self {
            SpecKind::SigmaR => "sigmaR",
            SpecKind::SigmaTildeR => "sigmaTildeR",
            SpecKind::Dj => "dj",
        }
    }

    fn left_ok(self, l: &Letter) -> bool {
        match self {
            SpecKind::SigmaR => matches!(l, Letter::LP(..) | Letter::LPInv(_)),
            SpecKind::SigmaTildeR => matches!(l, Letter::LM(..) | Letter::LMInv(_)),
            SpecKind::Dj => matches!(l, Letter::F(_) | Letter::K(_)),
        }
    }

    fn right_ok(self, l: &Letter) -> bool {
        match self {
            SpecKind::SigmaR => matches!(l, Letter::LM(..) | Letter::LMInv(_)),
            SpecKind::SigmaTildeR => matches!(l, Letter::LP(..) | Letter::LPInv(_)),
            SpecKind::Dj => matches!(l, Letter::E(_) | Letter::K(_)),
        }
    }
}

/// A skew pairing with its letter table and memo cache.
pub struct PairingSpec {
    pub kind: SpecKind,
    pub alphabet: Arc<Alphabet>,
    /// Nonzero values on non-inverse letter pairs (RTT kinds).
    base: HashMap<(Letter, Letter), QRat>,
    cache: Mutex<HashMap<(u32, u32), QRat>>,
}

/// Unpacks `Σ (-1)^{(ī+j̄)(k̄+l̄)} (x_ij, y_kl) E_ij ⊗ E_kl = M` into letter values,
/// or `Σ (x_ij, y_kl) E_ij ⊗ E_kl = M` when `signed` is false.
fn unpack_matrix(
    m: &Mat,
    a: &Alphabet,
    signed: bool,
    left: impl Fn(usize, usize) -> Letter,
    right: impl Fn(usize, usize) -> Letter,
) -> HashMap<(Letter, Letter), QRat> {
    let d = &a.datum;
    let mut base = HashMap::new();
    for (k, c) in m.entries() {
        let idx = m.unpack(k);
        let ((i, j), (k2, l)) = (idx[0], idx[1]);
        let pp = |a: usize, b: usize| (d.par(a + 1) + d.par(b + 1)) as u32;
        let s = if signed { sign(pp(i, j) * pp(k2, l)) } else { 1 };
        base.insert((left(i + 1, j + 1), right(k2 + 1, l + 1)), c.signed(s));
    }
    base
}

impl PairingSpec {
    fn with_base(kind: SpecKind, alphabet: Arc<Alphabet>, base: HashMap<(Letter, Letter), QRat>) -> Self {
        PairingSpec {
            kind,
            alphabet,
            base,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// `σ_R` on `(l⁺_ij, l⁻_kl)` from the entries of `R`.
    pub fn sigma_r(b: &RMatrixBundle, alphabet: Arc<Alphabet>) -> Self {
        let base = unpack_matrix(
            &b.r,
            &alphabet,
            true,
            |i, j| Letter::LP(i as u8, j as u8),
            |k, l| Letter::LM(k as u8, l as u8),
        );
        Self::with_base(SpecKind::SigmaR, alphabet, base)
    }

    /// `σ̃_R` on `(l⁻_ij, l⁺_kl)`: the `E_ij ⊗ E_kl` entry of `R⁻¹_21`, without the
    /// unpacking sign used for `σ_R`. With the sign the convolution identity
    /// already fails for gl(1|1).
    pub fn sigma_tilde_r(b: &RMatrixBundle, alphabet: Arc<Alphabet>) -> Result<Self, PairError> {
        let r21 = b.r_inv.tensor_legs(&[2, 1], 2, Bicharacter::Standard)?;
        let base = unpack_matrix(
            &r21,
            &alphabet,
            false,
            |i, j| Letter::LM(i as u8, j as u8),
            |k, l| Letter::LP(k as u8, l as u8),
        );
        Ok(Self::with_base(SpecKind::SigmaTildeR, alphabet, base))
    }

    pub fn dj(alphabet: Arc<Alphabet>) -> Self {
        Self::with_base(SpecKind::Dj, alphabet, HashMap::new())
    }

    /// The diagonal letter behind an inverse letter.
    fn uninvert(l: &Letter) -> (Letter, bool) {
        match *l {
            Letter::LPInv(i) => (Letter::LP(i, i), true),
            Letter::LMInv(i) => (Letter::LM(i, i), true),
            other => (other, false),
        }
    }

    /// Value on a pair of letters.
    pub fn base(&self, x: &Letter, y: &Letter) -> QRat {
        let d = &self.alphabet.datum;
        match self.kind {
            SpecKind::Dj => match (x, y) {
                (Letter::F(i), Letter::E(j)) if i == j => {
                    let p = d.simple_roots()[*i as usize - 1].parity as u32;
                    QRat::from_int(sign(p) as i64) / (QRat::q_pow(-1) - QRat::q_pow(1))
                }
                (Letter::K(h), Letter::K(g)) => {
                    QRat::q_pow(-(d.h_pair(&h.to_vec(d.n), &g.to_vec(d.n)) as i64))
                }
                _ => QRat::zero(),
            },
            _ => {
                let (x0, xi) = Self::uninvert(x);
                let (y0, yi) = Self::uninvert(y);
                let v = self.base.get(&(x0, y0)).cloned().unwrap_or_else(QRat::zero);
                // reciprocal against one formal inverse, unchanged against two
                if xi != yi {
                    v.inv().unwrap_or_else(|_| QRat::zero())
                } else {
                    v
                }
            }
        }
    }

    fn check(&self, a: &[Letter], b: &[Letter]) -> Result<(), PairError> {
        self.alphabet.validate_word(a)?;
        self.alphabet.validate_word(b)?;
        let bad = |l: &Letter, side| PairError::WrongSide {
            letter: l.to_string(),
            side,
            spec: self.kind.name(),
        };
        if let Some(l) = a.iter().find(|l| !self.kind.left_ok(l)) {
            return Err(bad(l, "left"));
        }
        if let Some(l) = b.iter().find(|l| !self.kind.right_ok(l)) {
            return Err(bad(l, "right"));
        }
        Ok(())
    }

    /// Pairing of two words.
    pub fn pair_words(&self, a: &[Letter], b: &[Letter]) -> Result<QRat, PairError> {
        self.check(a, b)?;
        Ok(self.eval(a, b, true))
    }

    /// Same recursion without the memo cache.
    pub fn pair_words_uncached(&self, a: &[Letter], b: &[Letter]) -> Result<QRat, PairError> {
        self.check(a, b)?;
        Ok(self.eval(a, b, false))
    }

    /// Bilinear extension to polynomials.
    pub fn pair(&self, a: &AlgElement, b: &AlgElement) -> Result<QRat, PairError> {
        let mut acc = QRat::zero();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                let v = self.pair_words(wa, wb)?;
                if !v.is_zero() {
                    acc += &(&(ca * cb) * &v);
                }
            }
        }
        Ok(acc)
    }

    pub fn cache_len(&self) -> usize {
        self.cache.lock().unwrap().len()
    }

    /// Memo entries as `(left word, right word, value)`, sorted for stable output.
    pub fn export_memo(&self) -> Vec<(String, String, QRat)> {
        let words = &self.alphabet.words;
        let mut out: Vec<_> = self
            .cache
            .lock()
            .unwrap()
            .iter()
            .map(|(&(a, b), v)| (word_string(&words.get(a)), word_string(&words.get(b)), v.clone()))
            .collect();
        out.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
        out
    }

    /// Seeds the memo from exported entries. Entries whose words are not admissible
    /// for this pairing are rejected.
    pub fn import_memo(&self, entries: &[(String, String, QRat)]) -> Result<(), PairError> {
        let mut parsed = Vec::with_capacity(entries.len());
        for (a, b, v) in entries {
            let wa = parse_word(a)?;
            let wb = parse_word(b)?;
            self.check(&wa, &wb)?;
            parsed.push(((self.alphabet.words.intern(&wa), self.alphabet.words.intern(&wb)), v.clone()));
        }
        self.cache.lock().unwrap().extend(parsed);
        Ok(())
    }

    fn deg(&self, w: &[Letter]) -> Weight {
        self.alphabet.word_degree(w)
    }

    fn eval(&self, a: &[Letter], b: &[Letter], memo: bool) -> QRat {
        let al = &self.alphabet;
        if a.is_empty() {
            return al.word_counit(b);
        }
        if b.is_empty() {
            return al.word_counit(a);
        }
        if !(self.deg(a) + self.deg(b)).is_zero() {
            return QRat::zero();
        }
        if a.len() == 1 && b.len() == 1 {
            return self.base(&a[0], &b[0]);
        }
        let key = if memo {
            let k = (al.words.intern(a), al.words.intern(b));
            if let Some(v) = self.cache.lock().unwrap().get(&k) {
                return v.clone();
            }
            Some(k)
        } else {
            None
        };
        let mut acc = QRat::zero();
        if a.len() >= 2 {
            // (x a', b) = Σ (-1)^{|a'||b1|} (x, b1)(a', b2)
            let (x, rest) = (&a[..1], &a[1..]);
            let target = -self.deg(x);
            let p_rest = al.word_parity(rest) as u32;
            let cop = al.word_coproduct(b).expect("validated word");
            for ((b1, b2), c) in &cop.terms {
                if self.deg(b1) != target {
                    continue;
                }
                let v1 = self.eval(x, b1, memo);
                if v1.is_zero() {
                    continue;
                }
                let v2 = self.eval(rest, b2, memo);
                if v2.is_zero() {
                    continue;
                }
                let s = sign(p_rest * al.word_parity(b1) as u32);
                acc += &(&(c * &v1) * &v2).signed(s);
            }
        } else {
            // (a, y b') = Σ (a2, y)(a1, b')
            let (y, rest) = (&b[..1], &b[1..]);
            let target = -self.deg(y);
            let cop = al.word_coproduct(a).expect("validated word");
            for ((a1, a2), c) in &cop.terms {
                if self.deg(a2) != target {
                    continue;
                }
                let v1 = self.eval(a2, y, memo);
                if v1.is_zero() {
                    continue;
                }
                let v2 = self.eval(a1, rest, memo);
                if !v2.is_zero() {
                    acc += &(&(c * &v1) * &v2);
                }
            }
        }
        if let Some(k) = key {
            self.cache.lock().unwrap().insert(k, acc.clone());
        }
        acc
    }
}

/// Words over `letters` of length `0..=max_len`, bucketed by Q-degree.
fn words_by_degree(a: &Alphabet, letters: &[Letter], max_len: usize) -> HashMap<Weight, Vec<Word>> {
    let mut out: HashMap<Weight, Vec<Word>> = HashMap::new();
    for len in 0..=max_len {
        for w in crate::freealg::words_of_length(letters, len) {
            out.entry(a.word_degree(&w)).or_default().push(w);
        }
    }
    out
}

/// Checks that `s_tilde` (with arguments swapped) is the convolution inverse of `s`:
/// `Σ (-1)^{|a₂||b₁|} s(a₁,b₁) s̃(b₂,a₂) = ε(a)ε(b)` and the mirrored identity, for
/// all words up to `max_len` letters on each side. Pairs of nonzero total degree
/// hold trivially and are not enumerated.
pub fn verify_convolution(s: &PairingSpec, s_tilde: &PairingSpec, max_len: usize) -> Vec<CheckRow> {
    let al = &s.alphabet;
    let d = &al.datum;
    let (left_letters, right_letters): (Vec<Letter>, Vec<Letter>) = match s.kind {
        SpecKind::SigmaR => (
            crate::freealg::plus_letters(d, true),
            crate::freealg::minus_letters(d, true),
        ),
        SpecKind::SigmaTildeR => (
            crate::freealg::minus_letters(d, true),
            crate::freealg::plus_letters(d, true),
        ),
        SpecKind::Dj => unimplemented!("convolution check is defined for the RTT pairings"),
    };
    let lw = words_by_degree(al, &left_letters, max_len);
    let rw = words_by_degree(al, &right_letters, max_len);
    let mut degs: Vec<&Weight> = lw.keys().collect();
    degs.sort();
    let mut checked = 0usize;
    let mut witness = None;
    'outer: for dg in degs {
        let Some(bs) = rw.get(&-*dg) else { continue };
        for a in &lw[dg] {
            let ca = al.word_coproduct(a).expect("valid");
            for b in bs {
                let cb = al.word_coproduct(b).expect("valid");
                let want = &al.word_counit(a) * &al.word_counit(b);
                let mut left = QRat::zero();
                let mut right = QRat::zero();
                for ((a1, a2), x) in &ca.terms {
                    for ((b1, b2), y) in &cb.terms {
                        let sg = sign(al.word_parity(a2) as u32 * al.word_parity(b1) as u32);
                        let c = (x * y).signed(sg);
                        if (s.deg(a1) + s.deg(b1)).is_zero() {
                            let v = &s.eval(a1, b1, true) * &s_tilde.eval(b2, a2, true);
                            left += &(&c * &v);
                            let v = &s_tilde.eval(b1, a1, true) * &s.eval(a2, b2, true);
                            right += &(&c * &v);
                        }
                    }
                }
                checked += 1;
                if left != want || right != want {
                    witness = Some(format!(
                        "a = {}, b = {}: got ({left}, {right}), want {want}",
                        word_string(a),
                        word_string(b)
                    ));
                    break 'outer;
                }
            }
        }
    }
    let name = format!("{}:len<={max_len}", s.kind.name());
    vec![match witness {
        Some(w) => CheckRow::fail("convolution", name, w),
        None => CheckRow::pass("convolution", format!("{name} ({checked} pairs)")),
    }]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse_word;
    use crate::rmatrix::build_r;
    use crate::rootdata::RootDatum;

    fn specs(d: RootDatum) -> (PairingSpec, PairingSpec) {
        let d = Arc::new(d);
        let b = build_r(&d).unwrap();
        let al = Arc::new(Alphabet::new(d));
        (PairingSpec::sigma_r(&b, al.clone()), PairingSpec::sigma_tilde_r(&b, al).unwrap())
    }

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn q(k: i64) -> QRat {
        QRat::q_pow(k)
    }

    #[test]
    fn memo_export_import_roundtrip() {
        let (s, _) = specs(RootDatum::gl_str("011").unwrap());
        let v = s.pair_words(&w("lp1_2 lp2_3"), &w("lm3_2 lm2_1")).unwrap();
        let memo = s.export_memo();
        assert!(!memo.is_empty());
        let (fresh, _) = specs(RootDatum::gl_str("011").unwrap());
        fresh.import_memo(&memo).unwrap();
        assert_eq!(fresh.cache_len(), memo.len());
        assert_eq!(fresh.export_memo(), memo);
        assert_eq!(fresh.pair_words(&w("lp1_2 lp2_3"), &w("lm3_2 lm2_1")).unwrap(), v);
    }

    #[test]
    fn memo_import_rejects_wrong_side() {
        let (s, _) = specs(RootDatum::gl_str("01").unwrap());
        let bad = vec![("lm1_1".to_string(), "lp1_1".to_string(), QRat::one())];
        assert!(s.import_memo(&bad).is_err());
    }

    #[test]
    fn gl11_base_values() {
        let (s, _) = specs(RootDatum::gl_str("01").unwrap());
        assert!(s.pair_words(&w("lp1_1"), &w("lm2_2")).unwrap().is_one());
        // E12⊗E21 carries sign (-1)^{1·1}
        assert_eq!(s.pair_words(&w("lp1_2"), &w("lm2_1")).unwrap(), -QRat::q_minus_qinv());
        assert_eq!(s.pair_words(&w("lp1_1"), &w("lm1_1")).unwrap(), q(-1));
        assert_eq!(s.pair_words(&w("lpinv1"), &w("lm1_1")).unwrap(), q(1));
        assert_eq!(s.pair_words(&w("lpinv1"), &w("lminv1")).unwrap(), q(-1));
    }

    #[test]
    fn wrong_side_is_error() {
        let (s, t) = specs(RootDatum::gl_str("01").unwrap());
        assert!(s.pair_words(&w("lm2_1"), &w("lp1_2")).is_err());
        assert!(t.pair_words(&w("lm2_1"), &w("lp1_2")).is_ok());
        assert!(t.pair_words(&w("lm2_1"), &w("lp1_1")).unwrap().is_zero());
    }

    #[test]
    fn unit_rules() {
        let (s, _) = specs(RootDatum::gl_str("011").unwrap());
        assert!(s.pair_words(&[], &w("lm2_2 lm3_3")).unwrap().is_one());
        assert!(s.pair_words(&[], &w("lm2_1")).unwrap().is_zero());
        assert!(s.pair_words(&w("lp1_1"), &[]).unwrap().is_one());
    }

    #[test]
    fn odd_square_pairs_to_zero() {
        let (s, _) = specs(RootDatum::gl_str("01").unwrap());
        assert!(s.pair_words(&w("lp1_2 lp1_2"), &w("lm2_1 lm2_1")).unwrap().is_zero());
    }

    #[test]
    fn dj_values() {
        let d = Arc::new(RootDatum::gl_str("011").unwrap());
        let s = PairingSpec::dj(Arc::new(Alphabet::new(d)));
        let inv = (q(-1) - q(1)).inv().unwrap();
        assert_eq!(s.pair_words(&w("f1"), &w("e1")).unwrap(), -inv.clone());
        assert_eq!(s.pair_words(&w("f2"), &w("e2")).unwrap(), inv);
        assert!(s.pair_words(&w("f1"), &w("e2")).unwrap().is_zero());
        assert!(s.pair_words(&w("f1"), &w("K[1]")).unwrap().is_zero());
        // (q^{H_2}, q^{H_2}) = q^{-(ε2,ε2)} = q
        assert_eq!(s.pair_words(&w("K[0,1]"), &w("K[0,1]")).unwrap(), q(1));
    }

    #[test]
    fn convolution_small() {
        for d in [RootDatum::gl_str("01").unwrap(), RootDatum::osp_str("101", None).unwrap()] {
            let desc = d.describe();
            let (s, t) = specs(d);
            let rows = verify_convolution(&s, &t, 2);
            assert!(crate::report::all_pass(&rows), "{desc}: {rows:?}");
        }
    }
}
