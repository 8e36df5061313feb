//! Root vectors on both sides of the Drinfeld–Jimbo / RLL correspondence, PBW
//! enumeration, Gram determinants and the `R_u` factorization.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::freealg::{AlgElement, Alphabet, Letter};
use crate::grading::{sign, Bicharacter};
use crate::gtensor::{Coeff, GtError};
use crate::pairing::{PairError, PairingSpec};
use crate::qfield::QRat;
use crate::report::CheckRow;
use crate::rmatrix::{build_rep, evaluated_l, identity, parity_arc, BlockMat, FundRep, Mat, RError, RMatrixBundle, RepElt};
use crate::rootdata::{Mode, Root, RootDatum, TypeTag, Weight};

#[derive(Debug, Error)]
pub enum RootError {
    #[error("γ_{{{0},{1}}} is not a reduced positive root")]
    NotReduced(usize, usize),
    #[error("pairing denominator (f^{k}, e^{k}) vanishes for {root}")]
    ZeroDenominator { root: String, k: u32 },
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    R(#[from] RError),
    #[error(transparent)]
    Tensor(#[from] GtError),
}

fn q(k: i32) -> QRat {
    QRat::q_pow(k as i64)
}

fn qmq() -> QRat {
    QRat::q_minus_qinv()
}

fn sgn(p: u32) -> QRat {
    QRat::from_int(sign(p) as i64)
}

/// Normalization of `(l⁺_ii)⁻¹ l⁺_ij` against `𝐞_ij`.
pub fn e_norm(d: &RootDatum, i: usize, j: usize) -> QRat {
    let (pi, pj) = (d.par(i) as u32, d.par(j) as u32);
    &(&sgn(pi * pj) * &q(-d.eps_form(i, i))) * &qmq()
}

/// Normalization of `l⁻_ji (l⁻_ii)⁻¹` against `𝐟_ji`.
pub fn f_norm(d: &RootDatum, i: usize, j: usize) -> QRat {
    let (pi, pj) = (d.par(i) as u32, d.par(j) as u32);
    let run = d.par_sum(i, j - 1);
    -(&(&sgn(run + pi * pj) * &q(d.eps_form(i, i))) * &qmq())
}

/// Images of `L⁺` and `L⁻` in `End(V)`, together with the RTT root vectors they define.
#[derive(Clone)]
pub struct RepModel {
    pub datum: Arc<RootDatum>,
    pub lp: BlockMat,
    pub lm: BlockMat,
}

impl RepModel {
    pub fn new(b: &RMatrixBundle) -> Result<Self, RError> {
        let (lp, lm) = evaluated_l(b)?;
        Ok(RepModel {
            datum: b.datum.clone(),
            lp,
            lm,
        })
    }

    fn zero(&self) -> Mat {
        Mat::new(self.datum.n, 1, parity_arc(&self.datum))
    }

    /// `ρ(l⁺_ij)` (1-based).
    pub fn lp(&self, i: usize, j: usize) -> Mat {
        self.lp.entry(i - 1, j - 1).cloned().unwrap_or_else(|| self.zero())
    }

    /// `ρ(l⁻_ij)` (1-based).
    pub fn lm(&self, i: usize, j: usize) -> Mat {
        self.lm.entry(i - 1, j - 1).cloned().unwrap_or_else(|| self.zero())
    }

    fn weight(&self, i: usize, j: usize) -> crate::Weight {
        self.datum.eps(i) - self.datum.eps(j)
    }

    fn par(&self, i: usize, j: usize) -> u8 {
        self.datum.par(i) ^ self.datum.par(j)
    }

    /// Evaluates a word in `l`-letters (and their diagonal inverses).
    pub fn eval_word(&self, w: &[Letter]) -> Mat {
        let mut acc = identity(&self.datum, 1);
        for l in w {
            let x = match *l {
                Letter::LP(i, j) => self.lp(i as usize, j as usize),
                Letter::LM(i, j) => self.lm(i as usize, j as usize),
                Letter::LPInv(i) => self.lp(i as usize, i as usize).inverse().expect("invertible diagonal"),
                Letter::LMInv(i) => self.lm(i as usize, i as usize).inverse().expect("invertible diagonal"),
                other => panic!("letter {other} has no image in the RTT model"),
            };
            acc = acc.mul(&x);
        }
        acc
    }

    pub fn eval(&self, x: &AlgElement) -> Mat {
        let mut acc = self.zero();
        for (w, c) in &x.terms {
            acc = acc.add(&self.eval_word(w).scale(c)).expect("same shape");
        }
        acc
    }

    /// `q^{𝐇_ij} = l⁺_ii (l⁺_jj)⁻¹`.
    pub fn k_pair(&self, i: usize, j: usize) -> RepElt {
        let m = self.lp(i, i).mul(&self.lp(j, j).inverse().expect("invertible diagonal"));
        RepElt::new(m, Weight::ZERO, 0)
    }

    /// `q^{-𝐇_ij} = l⁻_ii (l⁻_jj)⁻¹`.
    pub fn k_pair_inv(&self, i: usize, j: usize) -> RepElt {
        let m = self.lm(i, i).mul(&self.lm(j, j).inverse().expect("invertible diagonal"));
        RepElt::new(m, Weight::ZERO, 0)
    }

    /// `q^{𝐇_k} = l⁺_kk`.
    pub fn k(&self, k: usize) -> RepElt {
        RepElt::new(self.lp(k, k), crate::Weight::ZERO, 0)
    }

    /// `q^{-𝐇_k} = l⁻_kk`.
    pub fn k_inv(&self, k: usize) -> RepElt {
        RepElt::new(self.lm(k, k), crate::Weight::ZERO, 0)
    }

    /// `𝐞_ij` for `i < j`.
    pub fn e(&self, i: usize, j: usize) -> RepElt {
        let d = &self.datum;
        let inv = self.lp(i, i).inverse().expect("diagonal of L⁺ is invertible");
        let m = inv.mul(&self.lp(i, j));
        let c = e_norm(d, i, j).inv().expect("nonzero normalization");
        RepElt::new(m.scale(&c), self.weight(i, j), self.par(i, j))
    }

    /// `𝐟_ji` for `i < j`.
    pub fn f(&self, j: usize, i: usize) -> RepElt {
        let d = &self.datum;
        let inv = self.lm(i, i).inverse().expect("diagonal of L⁻ is invertible");
        let m = self.lm(j, i).mul(&inv);
        let c = f_norm(d, i, j).inv().expect("nonzero normalization");
        RepElt::new(m.scale(&c), self.weight(j, i), self.par(i, j))
    }

    /// Model of `ρ ∘ ω_R`, where `ω_R(L^±) = G⁻¹ (L^∓)^st G` and `G` is the
    /// supertranspose gauge (the identity for gl).
    pub fn omega(&self) -> RepModel {
        let d = &self.datum;
        let g = |a: usize| match d.mode {
            Mode::Osp if a <= d.s => d.eps_form(a, a),
            _ => 0,
        };
        let tr = |x: &BlockMat| {
            let mut out = BlockMat::new(d.n, 1, parity_arc(d));
            for a in 1..=d.n {
                for b in 1..=d.n {
                    if let Some(c) = x.entry(b - 1, a - 1) {
                        let (pa, pb) = (d.par(a) as u32, d.par(b) as u32);
                        let s = &sgn(pa * (pa + pb)) * &q(g(b) - g(a));
                        out.add_at(&[(a - 1, b - 1)], c.scale(&s));
                    }
                }
            }
            out
        };
        RepModel {
            datum: d.clone(),
            lp: tr(&self.lm),
            lm: tr(&self.lp),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    E,
    F,
}

/// A root vector as a word together with its image in `End(V)`.
#[derive(Debug, Clone)]
pub struct RootVector {
    pub root: Root,
    pub side: Side,
    pub word: AlgElement,
    pub rep: Mat,
}

impl RootVector {
    /// The rep matrix as a homogeneous element of degree `±γ`.
    pub fn elt(&self) -> RepElt {
        let w = match self.side {
            Side::E => self.root.weight,
            Side::F => -self.root.weight,
        };
        RepElt::new(self.rep.clone(), w, self.root.parity)
    }
}

fn positive_root(d: &RootDatum, i: usize, j: usize) -> Option<Root> {
    d.positive_roots().iter().find(|r| r.i == i && r.j == j).copied()
}

fn simple_index(d: &RootDatum, r: &Root) -> Option<usize> {
    d.simple_roots().iter().position(|a| a.i == r.i && a.j == r.j).map(|k| k + 1)
}

/// `x y - (-1)^{|x||y|} q^{(wx, wy)} y x` on words.
fn word_bracket(d: &RootDatum, x: &AlgElement, wx: Weight, px: u8, y: &AlgElement, wy: Weight, py: u8) -> AlgElement {
    let c = &sgn((px * py) as u32) * &q(d.form(wx, wy));
    x.mul(y).sub(&y.mul(x).scale(&c))
}

/// `-(-1)^{|f_α||f_β|} q^{-(α,β)}`, the prefactor of the f-side recursion.
fn f_prefactor(d: &RootDatum, a: &Root, b: &Root) -> QRat {
    -(&sgn((a.parity * b.parity) as u32) * &q(-d.form(a.weight, b.weight)))
}

/// Drinfeld–Jimbo root vectors of one datum, built once along the costandard recursion.
pub struct DjRootVectors {
    pub datum: Arc<RootDatum>,
    pub rep: FundRep,
    vectors: HashMap<(usize, usize, Side), RootVector>,
}

impl DjRootVectors {
    pub fn new(d: &Arc<RootDatum>) -> Self {
        let mut v = DjRootVectors {
            datum: d.clone(),
            rep: build_rep(d),
            vectors: HashMap::new(),
        };
        for r in d.reduced_roots() {
            v.build(r);
        }
        v
    }

    fn build(&mut self, r: &Root) {
        if self.vectors.contains_key(&(r.i, r.j, Side::E)) {
            return;
        }
        let d = self.datum.clone();
        let (e, f) = if let Some(k) = simple_index(&d, r) {
            let e = RootVector {
                root: *r,
                side: Side::E,
                word: AlgElement::letter(Letter::E(k as u8)),
                rep: self.rep.e(k).clone(),
            };
            let f = RootVector {
                root: *r,
                side: Side::F,
                word: AlgElement::letter(Letter::F(k as u8)),
                rep: self.rep.f(k).clone(),
            };
            (e, f)
        } else {
            let (la, lb) = d.costandard(r.i, r.j).expect("non-simple root has a costandard factorization");
            let a = positive_root(&d, la.0, la.1).expect("factor is a root");
            let b = positive_root(&d, lb.0, lb.1).expect("factor is a root");
            self.build(&a);
            self.build(&b);
            let get = |s: Side, x: &Root| self.vectors[&(x.i, x.j, s)].clone();
            let (ea, eb) = (get(Side::E, &a), get(Side::E, &b));
            let (fa, fb) = (get(Side::F, &a), get(Side::F, &b));
            let e = RootVector {
                root: *r,
                side: Side::E,
                word: word_bracket(&d, &ea.word, a.weight, a.parity, &eb.word, b.weight, b.parity),
                rep: ea.elt().qbracket(&eb.elt(), &d).m,
            };
            let c = f_prefactor(&d, &a, &b);
            let f = RootVector {
                root: *r,
                side: Side::F,
                word: word_bracket(&d, &fa.word, -a.weight, a.parity, &fb.word, -b.weight, b.parity).scale(&c),
                rep: fa.elt().qbracket(&fb.elt(), &d).m.scale(&c),
            };
            (e, f)
        };
        self.vectors.insert((r.i, r.j, Side::E), e);
        self.vectors.insert((r.i, r.j, Side::F), f);
    }

    /// Root vector for the reduced root `γ_ij`.
    pub fn get(&self, i: usize, j: usize, side: Side) -> Result<&RootVector, RootError> {
        self.vectors.get(&(i, j, side)).ok_or(RootError::NotReduced(i, j))
    }

    /// Evaluates a word in `E`, `F` and `K` letters under `ϱ`.
    pub fn eval(&self, x: &AlgElement) -> Mat {
        let d = &self.datum;
        let mut acc = Mat::new(d.n, 1, parity_arc(d));
        for (w, c) in &x.terms {
            let mut m = identity(d, 1);
            for l in w {
                let y = match *l {
                    Letter::E(k) => self.rep.e(k as usize).clone(),
                    Letter::F(k) => self.rep.f(k as usize).clone(),
                    Letter::K(h) => self.rep.k(&h.to_vec(d.n)),
                    other => panic!("letter {other} has no image under ϱ"),
                };
                m = m.mul(&y);
            }
            acc = acc.add(&m.scale(c)).expect("same shape");
        }
        acc
    }
}

/// `e_γ` or `f_γ` for the reduced root `γ_ij`, built by the costandard recursion.
pub fn dj_root_vector(d: &Arc<RootDatum>, i: usize, j: usize, side: Side) -> Result<RootVector, RootError> {
    d.reduced_root(i, j).ok_or(RootError::NotReduced(i, j))?;
    DjRootVectors::new(d).get(i, j, side).cloned()
}

/// RTT words `𝐞_ij = e_norm⁻¹ (l⁺_ii)⁻¹ l⁺_ij` and `𝐟_ji = f_norm⁻¹ l⁻_ji (l⁻_ii)⁻¹`.
pub fn rtt_word(d: &RootDatum, i: usize, j: usize, side: Side) -> AlgElement {
    let (a, b) = (i as u8, j as u8);
    match side {
        Side::E => AlgElement::word(vec![Letter::LPInv(a), Letter::LP(a, b)], e_norm(d, i, j).inv().expect("nonzero")),
        Side::F => AlgElement::word(vec![Letter::LM(b, a), Letter::LMInv(a)], f_norm(d, i, j).inv().expect("nonzero")),
    }
}

/// `𝐞_ij` or `𝐟_ji` for the reduced root `γ_ij`, with its normalized Gauss slice.
pub fn rtt_root_vector(m: &RepModel, i: usize, j: usize, side: Side) -> Result<RootVector, RootError> {
    let d = &m.datum;
    let root = d.reduced_root(i, j).ok_or(RootError::NotReduced(i, j))?;
    let rep = match side {
        Side::E => m.e(i, j).m,
        Side::F => m.f(j, i).m,
    };
    Ok(RootVector {
        root,
        side,
        word: rtt_word(d, i, j, side),
        rep,
    })
}

/// Degree and support checks for both families of root vectors.
pub fn vector_check(dj: &DjRootVectors, m: &RepModel) -> Vec<CheckRow> {
    let d = &dj.datum;
    let alph = Alphabet::new(d.clone());
    let mut rows = Vec::new();
    for r in d.reduced_roots() {
        for side in [Side::E, Side::F] {
            let w = if side == Side::E { r.weight } else { -r.weight };
            let tag = if side == Side::E { "e" } else { "f" };
            let pairs = [
                ("dj", dj.get(r.i, r.j, side).expect("reduced").clone()),
                ("rtt", rtt_root_vector(m, r.i, r.j, side).expect("reduced")),
            ];
            for (fam, v) in pairs {
                let bad_word = v.word.terms.keys().find(|x| alph.word_degree(x) != w);
                // ρ factors through φ^DF, which exchanges the Borel halves
                let target = if fam == "rtt" { -w } else { w };
                let bad_unit = v.rep.entries().find_map(|(k, _)| {
                    let (a, b) = v.rep.unpack(k)[0];
                    (d.eps(a + 1) - d.eps(b + 1) != target).then_some((a + 1, b + 1))
                });
                let ok = bad_word.is_none() && bad_unit.is_none();
                rows.push(CheckRow::check("root-vectors", format!("{fam}:{tag}[{r}]"), ok, || {
                    format!("word {:?}, unit {:?}", bad_word, bad_unit)
                }));
            }
        }
        // the DJ word evaluates to the DJ rep matrix
        for side in [Side::E, Side::F] {
            let v = dj.get(r.i, r.j, side).expect("reduced");
            let ok = dj.eval(&v.word) == v.rep;
            let tag = if side == Side::E { "e" } else { "f" };
            rows.push(CheckRow::check("root-vectors", format!("dj-eval:{tag}[{r}]"), ok, || "word and matrix differ".into()));
        }
        for side in [Side::E, Side::F] {
            let v = rtt_root_vector(m, r.i, r.j, side).expect("reduced");
            let ok = m.eval(&v.word) == v.rep;
            let tag = if side == Side::E { "e" } else { "f" };
            rows.push(CheckRow::check("root-vectors", format!("rtt-eval:{tag}[{r}]"), ok, || "word and slice differ".into()));
        }
    }
    rows
}

/// An ordered PBW monomial: factors `(γ, m_γ)` left to right, roots decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial {
    pub factors: Vec<(Root, u32)>,
}

impl PbwMonomial {
    pub fn degree(&self) -> Weight {
        self.factors.iter().fold(Weight::ZERO, |acc, (r, m)| acc + r.weight.scale(*m as i32))
    }

    pub fn exponent(&self, r: &Root) -> u32 {
        self.factors.iter().find(|(x, _)| x == r).map_or(0, |(_, m)| *m)
    }

    /// `∏ x_γ^{m_γ}` in the stored order.
    pub fn word(&self, x: impl Fn(&Root) -> AlgElement) -> AlgElement {
        self.factors.iter().fold(AlgElement::one(), |acc, (r, m)| acc.mul(&x(r).pow(*m)))
    }

    pub fn label(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(r, m)| if *m == 1 { r.to_string() } else { format!("{r}^{m}") })
            .collect();
        parts.join("*")
    }
}

/// Largest exponent a PBW monomial may carry on `γ`.
pub fn pbw_cap(d: &RootDatum, r: &Root) -> Option<u32> {
    let capped = r.parity == 1 && (d.mode == Mode::Gl || d.is_isotropic(r));
    capped.then_some(1)
}

/// All admissible PBW monomials with `Σ m_γ ht(γ) <= height`.
pub fn pbw_enumerate(d: &RootDatum, height: u32) -> Vec<PbwMonomial> {
    // decreasing convex order, the left-to-right reading of ∏^←
    let mut roots = d.convex_order();
    roots.reverse();
    let hts: Vec<u32> = roots.iter().map(|r| d.height(r.weight).expect("positive root") as u32).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        d: &RootDatum,
        roots: &[Root],
        hts: &[u32],
        k: usize,
        left: u32,
        cur: &mut Vec<(Root, u32)>,
        out: &mut Vec<PbwMonomial>,
    ) {
        if k == roots.len() {
            out.push(PbwMonomial { factors: cur.clone() });
            return;
        }
        let max = pbw_cap(d, &roots[k]).unwrap_or(u32::MAX).min(left / hts[k]);
        for m in 0..=max {
            if m > 0 {
                cur.push((roots[k], m));
            }
            rec(d, roots, hts, k + 1, left - m * hts[k], cur, out);
            if m > 0 {
                cur.pop();
            }
        }
    }
    rec(d, &roots, &hts, 0, height, &mut cur, &mut out);
    out
}

/// `C_{γ,p} = ∏_{k=1}^p (1 - t^k)/(1 - t)` with `t = (-1)^{|e_γ|} q^{(γ,γ)}`.
pub fn c_scalar(d: &RootDatum, r: &Root, p: u32) -> QRat {
    let t = &sgn(r.parity as u32) * &q(d.form(r.weight, r.weight));
    let one = QRat::one();
    let den = &one - &t;
    let mut acc = QRat::one();
    for k in 1..=p {
        let tk = t.pow(k as i64).expect("nonzero");
        let num = &one - &tk;
        // t = 1 would need the limit k; it does not occur for root data of this kind
        acc = &acc * &num.checked_div(&den).expect("t ≠ 1");
    }
    acc
}

/// `χ(m) = Σ_{γ≺γ'} m_γ m_γ' |e_γ||e_γ'| + Σ C(m_γ, 2) |e_γ|`.
pub fn chi(m: &PbwMonomial) -> u32 {
    let odd: Vec<u32> = m.factors.iter().filter(|(r, _)| r.parity == 1).map(|(_, k)| *k).collect();
    let mut c = 0;
    for a in 0..odd.len() {
        for b in a + 1..odd.len() {
            c += odd[a] * odd[b];
        }
        c += odd[a] * odd[a].saturating_sub(1) / 2;
    }
    c
}

/// Rank of a square matrix over `ℚ(q)`.
pub fn rank(mut rows: Vec<Vec<QRat>>) -> usize {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let piv = rows[r][c].inv().expect("nonzero pivot");
        for i in r + 1..n {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] * &piv;
            for k in c..cols {
                let v = &rows[r][k] * &f;
                rows[i][k] -= &v;
            }
        }
        r += 1;
    }
    r
}

/// One degree component of the Gram comparison.
#[derive(Debug, Clone)]
pub struct GramComponent {
    pub degree: Weight,
    pub monomials: Vec<PbwMonomial>,
    pub brute: Vec<Vec<QRat>>,
    pub closed: Vec<Vec<QRat>>,
}

impl GramComponent {
    pub fn mismatch(&self) -> Option<(usize, usize)> {
        let n = self.monomials.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.brute[a][b] != self.closed[a][b])
    }

    pub fn invertible(&self) -> bool {
        rank(self.brute.clone()) == self.monomials.len()
    }
}

/// PBW monomials grouped by Q-degree, in a deterministic order.
pub fn pbw_components(d: &RootDatum, height: u32) -> BTreeMap<Weight, Vec<PbwMonomial>> {
    let mut comps: BTreeMap<Weight, Vec<PbwMonomial>> = BTreeMap::new();
    for m in pbw_enumerate(d, height) {
        comps.entry(m.degree()).or_default().push(m);
    }
    comps
}

/// Which RTT vectors stand for the long roots `γ_ii'` that are not simple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramVariant {
    /// `𝐞_γ = 𝐞_ij`, `𝐟_γ = 𝐟_ji` for every reduced root.
    Literal,
    /// Non-simple `γ_ii'` use the q-bracket of the costandard factors instead.
    Bracketed,
}

/// Non-simple reduced roots of the form `γ_ii'`.
pub fn bracketed_roots(d: &RootDatum) -> Vec<Root> {
    d.reduced_roots()
        .iter()
        .filter(|r| d.mode == Mode::Osp && r.j == d.prime(r.i) && simple_index(d, r).is_none())
        .copied()
        .collect()
}

/// RTT word for `γ` under the chosen variant.
pub fn gram_word(d: &RootDatum, r: &Root, side: Side, variant: GramVariant) -> AlgElement {
    if variant == GramVariant::Literal || !bracketed_roots(d).contains(r) {
        return rtt_word(d, r.i, r.j, side);
    }
    let (la, lb) = d.costandard(r.i, r.j).expect("non-simple");
    let a = positive_root(d, la.0, la.1).expect("root");
    let b = positive_root(d, lb.0, lb.1).expect("root");
    let (x, y) = (rtt_word(d, a.i, a.j, side), rtt_word(d, b.i, b.j, side));
    match side {
        Side::E => word_bracket(d, &x, a.weight, a.parity, &y, b.weight, b.parity),
        Side::F => word_bracket(d, &x, -a.weight, a.parity, &y, -b.weight, b.parity).scale(&f_prefactor(d, &a, &b)),
    }
}

/// `σ̃_R` for one bundle, the pairing used by the Gram checks.
pub fn gram_pairing(b: &RMatrixBundle) -> Result<PairingSpec, RootError> {
    Ok(PairingSpec::sigma_tilde_r(b, Arc::new(Alphabet::new(b.datum.clone())))?)
}

/// Gram matrices of `(∏^← 𝐟_γ^{m_γ}, ∏^← 𝐞_γ^{n_γ})` under `σ̃_R`, brute force and closed form.
pub fn gram_components(
    sigma: &PairingSpec,
    height: u32,
    degree: Option<Weight>,
    variant: GramVariant,
    parallel: bool,
) -> Result<Vec<GramComponent>, RootError> {
    let d = &sigma.alphabet.datum;
    let words: HashMap<Root, (AlgElement, AlgElement)> = d
        .reduced_roots()
        .iter()
        .map(|r| (*r, (gram_word(d, r, Side::E, variant), gram_word(d, r, Side::F, variant))))
        .collect();
    let e_word = |r: &Root| words[r].0.clone();
    let f_word = |r: &Root| words[r].1.clone();
    let mut base = HashMap::new();
    for r in d.reduced_roots() {
        base.insert(*r, sigma.pair(&f_word(r), &e_word(r))?);
    }
    let comps: Vec<(Weight, Vec<PbwMonomial>)> = pbw_components(d, height)
        .into_iter()
        .filter(|(w, _)| degree.is_none_or(|x| x == *w))
        .collect();
    let one = |(w, mons): (Weight, Vec<PbwMonomial>)| -> Result<GramComponent, RootError> {
        let fw: Vec<AlgElement> = mons.iter().map(|m| m.word(f_word)).collect();
        let ew: Vec<AlgElement> = mons.iter().map(|m| m.word(e_word)).collect();
        let n = mons.len();
        let mut brute = vec![vec![QRat::zero(); n]; n];
        let mut closed = vec![vec![QRat::zero(); n]; n];
        for a in 0..n {
            for c in 0..n {
                brute[a][c] = sigma.pair(&fw[a], &ew[c])?;
            }
            let m = &mons[a];
            let mut v = QRat::from_int(sign(chi(m)) as i64);
            for (r, k) in &m.factors {
                let p = base[r].pow(*k as i64).expect("nonzero");
                v = &(&v * &c_scalar(d, r, *k)) * &p;
            }
            closed[a][a] = v;
        }
        Ok(GramComponent {
            degree: w,
            monomials: mons,
            brute,
            closed,
        })
    };
    if parallel {
        comps.into_par_iter().map(one).collect()
    } else {
        comps.into_iter().map(one).collect()
    }
}

/// Brute-force Gram equals the closed form and is invertible, per component.
///
/// Rows of table `gram` use the literal vectors. When the datum has non-simple
/// `γ_ii'`, table `gram-bracketed` repeats the comparison with bracketed vectors.
pub fn gram_check(
    sigma: &PairingSpec,
    height: u32,
    degree: Option<Weight>,
    parallel: bool,
) -> Result<Vec<CheckRow>, RootError> {
    let mut rows = Vec::new();
    let mut variants = vec![(GramVariant::Literal, "gram")];
    if !bracketed_roots(&sigma.alphabet.datum).is_empty() {
        variants.push((GramVariant::Bracketed, "gram-bracketed"));
    }
    for (variant, table) in variants {
        for c in gram_components(sigma, height, degree, variant, parallel)? {
            let id = format!("{:?} ({} monomials)", c.degree, c.monomials.len());
            let mis = c.mismatch();
            rows.push(CheckRow::check(table, format!("closed-form {id}"), mis.is_none(), || {
                let (a, k) = mis.unwrap();
                format!(
                    "({}, {}): brute {} vs closed {}",
                    c.monomials[a].label(),
                    c.monomials[k].label(),
                    c.brute[a][k],
                    c.closed[a][k]
                )
            }));
            rows.push(CheckRow::check(table, format!("invertible {id}"), c.invertible(), || {
                "singular Gram matrix".into()
            }));
        }
    }
    Ok(rows)
}

/// One local factor `Σ_k ϱ(e_γ)^k ⊗ ϱ(f_γ)^k / c_{γ,k}` with its denominators.
#[derive(Debug, Clone)]
pub struct LocalFactor {
    pub root: Root,
    pub denominators: Vec<QRat>,
    pub matrix: Mat,
}

/// Builds the local q-exponential of `γ`, with `c_{γ,k} = (f_γ^k, e_γ^k)_DJ`.
pub fn local_factor(dj: &DjRootVectors, sigma: &PairingSpec, r: &Root) -> Result<LocalFactor, RootError> {
    let d = &dj.datum;
    let e = dj.get(r.i, r.j, Side::E)?;
    let f = dj.get(r.i, r.j, Side::F)?;
    let cap = pbw_cap(d, r);
    let mut matrix = identity(d, 2);
    let mut denominators = Vec::new();
    let (mut ek, mut fk) = (identity(d, 1), identity(d, 1));
    let mut k = 1u32;
    loop {
        if cap.is_some_and(|c| k > c) {
            break;
        }
        ek = ek.mul(&e.rep);
        fk = fk.mul(&f.rep);
        if ek.is_empty() || fk.is_empty() {
            break;
        }
        let c = sigma.pair(&f.word.pow(k), &e.word.pow(k))?;
        let inv = c.inv().map_err(|_| RootError::ZeroDenominator { root: r.to_string(), k })?;
        matrix = matrix.add(&ek.kron(&fk, Bicharacter::Standard)?.scale(&inv))?;
        denominators.push(c);
        k += 1;
    }
    Ok(LocalFactor {
        root: *r,
        denominators,
        matrix,
    })
}

/// `∏^←` of the local factors, largest root leftmost.
pub fn ru_product(dj: &DjRootVectors) -> Result<(Vec<LocalFactor>, Mat), RootError> {
    let d = &dj.datum;
    let sigma = PairingSpec::dj(Arc::new(Alphabet::new(d.clone())));
    let mut factors = Vec::new();
    let mut m = identity(d, 2);
    for r in d.convex_order().iter().rev() {
        let lf = local_factor(dj, &sigma, r)?;
        m = m.matmul(&lf.matrix, Bicharacter::Standard)?;
        factors.push(lf);
    }
    Ok((factors, m))
}

/// `Σ q^{-x(a,b)} E_aa ⊗ E_bb` with the exponent evaluated from the Cartan part:
/// `x = Σ_i (-1)^ī h_i(a) h_i(b)`, plus the central term `1` for osp.
pub fn rs_closed_form(d: &RootDatum) -> Mat {
    let cols = match d.mode {
        Mode::Gl => d.n,
        Mode::Osp => d.s,
    };
    // weight of E_aa under H_i: δ_ia, and -δ_i'a on the osp mirror half
    let h = |i: usize, a: usize| -> i32 {
        if a == i {
            1
        } else if d.mode == Mode::Osp && a == d.prime(i) {
            -1
        } else {
            0
        }
    };
    let central = if d.mode == Mode::Osp { 1 } else { 0 };
    let mut m = Mat::new(d.n, 2, parity_arc(d));
    for a in 1..=d.n {
        for b in 1..=d.n {
            let x: i32 = (1..=cols).map(|i| sign(d.par(i) as u32) * h(i, a) * h(i, b)).sum::<i32>() + central;
            m.add_at(&[(a - 1, a - 1), (b - 1, b - 1)], q(-x));
        }
    }
    m
}

/// The ordered product of local q-exponentials equals `R_u`, and `R_s` matches its closed form.
pub fn verify_ru_factorization(b: &RMatrixBundle) -> Result<Vec<CheckRow>, RootError> {
    let d = &b.datum;
    let dj = DjRootVectors::new(d);
    let (_, m) = ru_product(&dj)?;
    let mut rows = vec![CheckRow::check("factorize", "R_u = ∏ local factors", m == b.r_u, || {
        m.difference_witness(&b.r_u)
    })];
    let rs = rs_closed_form(d);
    rows.push(CheckRow::check("factorize", "R_s closed form", rs == b.r_s, || {
        rs.difference_witness(&b.r_s)
    }));
    Ok(rows)
}

/// `ξ(e_k) = c_e 𝐞_ij` and `ξ(f_k) = c_f 𝐟_ji` for the simple root `α_k = γ_ij`.
pub fn xi_simple(d: &RootDatum, k: usize) -> ((usize, usize), QRat, QRat) {
    let lab = d.simple_label(k);
    if d.mode == Mode::Osp && d.type_tag == TypeTag::C && k == d.s {
        let e = (QRat::one() + q(2)).inv().expect("nonzero");
        return (lab, e, q(1));
    }
    (lab, QRat::one(), QRat::one())
}

fn mat_eq(table: &str, row: String, a: &Mat, b: &Mat) -> CheckRow {
    CheckRow::check(table, row, a == b, || a.difference_witness(b))
}

/// Simple-root and diagonal entries of `L±` against the images under `φ^DF`.
pub fn df_image_check(m: &RepModel, rep: &FundRep) -> Vec<CheckRow> {
    let d = &m.datum;
    let t = "df-image";
    let mut rows = Vec::new();
    for i in 1..=d.n {
        rows.push(mat_eq(t, format!("l+[{i},{i}]"), &m.lp(i, i), &rep.k(&rep.h_unit(i, -1))));
        rows.push(mat_eq(t, format!("l-[{i},{i}]"), &m.lm(i, i), &rep.k(&rep.h_unit(i, 1))));
    }
    let c_long = d.mode == Mode::Osp && d.type_tag == TypeTag::C;
    for k in 1..=d.num_simple() {
        let (i, j) = d.simple_label(k);
        let plus = rep.f(k).mul(&rep.k(&rep.h_unit(j, -1))).scale(&-qmq());
        rows.push(mat_eq(t, format!("l+[{i},{j}]"), &m.lp(i, j), &plus));
        let minus = if c_long && k == d.s {
            let c = -(&q(2) - &q(-2));
            rep.k(&rep.h_unit(d.prime(d.s), 1)).mul(rep.e(k)).scale(&c)
        } else {
            let c = &sgn(d.par(j) as u32) * &qmq();
            rep.k(&rep.h_unit(j, 1)).mul(rep.e(k)).scale(&c)
        };
        rows.push(mat_eq(t, format!("l-[{j},{i}]"), &m.lm(j, i), &minus));
    }
    rows
}

/// The chain `φ_F⁻¹ → ξ → ω_R⁻¹ → φ^DF` on every generator.
///
/// For each simple root the displayed `ω_R⁻¹`-image `Y` of `Z = ξ(φ_F⁻¹(x))` is
/// checked twice: `ρ∘ω_R(Y) = ρ(Z)`, and `ρ(Y) = ϱ(q^{±(ε_j,γ)} x)`.
pub fn roundtrip_check(m: &RepModel, rep: &FundRep) -> Vec<CheckRow> {
    let d = &m.datum;
    let om = m.omega();
    let t = "roundtrip";
    let mut rows = Vec::new();
    for i in 1..=d.n {
        rows.push(mat_eq(t, format!("ω[q^-H{i}]"), &om.lm(i, i), &m.lp(i, i)));
        rows.push(mat_eq(t, format!("DF[q^-H{i}]"), &m.lm(i, i), &rep.k(&rep.h_unit(i, 1))));
    }
    let c_long = d.mode == Mode::Osp && d.type_tag == TypeTag::C;
    for k in 1..=d.num_simple() {
        let ((i, j), ce, cf) = xi_simple(d, k);
        let g = d.eps(i) - d.eps(j);
        let x = d.form(d.eps(j), g);
        let (pi, pj) = (d.par(i) as u32, d.par(j) as u32);
        // ω_R⁻¹ images as (scalar, use 𝐟?) over the model
        let (ye, yf) = if c_long && k == d.s {
            (ce.clone(), cf.clone())
        } else {
            let ye = -(&(&sgn(pi * pj + pi + pj) * &q(d.eps_form(i, i))) * &ce);
            let yf = -(&(&sgn(pi * pj) * &q(-d.eps_form(i, i))) * &cf);
            (ye, yf)
        };
        let z_e = |md: &RepModel| md.e(i, j).mul(&md.k_pair(i, j)).scale(&ce);
        let y_e = |md: &RepModel| md.f(j, i).mul(&md.k_pair_inv(i, j)).scale(&ye);
        let z_f = |md: &RepModel| md.k_pair_inv(i, j).mul(&md.f(j, i)).scale(&cf);
        let y_f = |md: &RepModel| md.k_pair(i, j).mul(&md.e(i, j)).scale(&yf);
        rows.push(mat_eq(t, format!("ω[e{k}]"), &y_e(&om).m, &z_e(m).m));
        rows.push(mat_eq(t, format!("DF[e{k}] q^{x}"), &y_e(m).m, &rep.e(k).scale(&q(x))));
        rows.push(mat_eq(t, format!("ω[f{k}]"), &y_f(&om).m, &z_f(m).m));
        if d.mode == Mode::Osp {
            // ω_R carries the supertranspose gauge; its images pick up q^{±(g(i)-g(j))}
            let gx = st_gauge_exp(d, i) - st_gauge_exp(d, j);
            rows.push(mat_eq(t, format!("ω[e{k}] gauged"), &y_e(&om).m, &z_e(m).m.scale(&q(gx))));
            rows.push(mat_eq(t, format!("ω[f{k}] gauged"), &y_f(&om).m, &z_f(m).m.scale(&q(-gx))));
        }
        rows.push(mat_eq(t, format!("DF[f{k}] q^{}", -x), &y_f(m).m, &rep.f(k).scale(&q(-x))));
    }
    rows
}

/// Exponent of the supertranspose gauge at index `a`.
fn st_gauge_exp(d: &RootDatum, a: usize) -> i32 {
    match d.mode {
        Mode::Osp if a <= d.s => d.eps_form(a, a),
        _ => 0,
    }
}

/// `ξ(e_γ)`, `ξ(f_γ)` in the model, built from the simple images by the DJ recursion.
/// Products are plain matrix products: the model already realizes the algebra.
pub(crate) fn xi_vectors(m: &RepModel) -> HashMap<Root, (RepElt, RepElt)> {
    let d = &m.datum;
    let mut out: HashMap<Root, (RepElt, RepElt)> = HashMap::new();
    let mut roots = d.reduced_roots().to_vec();
    roots.sort_by_key(|r| d.height(r.weight));
    for r in roots {
        let v = if let Some(k) = simple_index(d, &r) {
            let ((i, j), ce, cf) = xi_simple(d, k);
            (m.e(i, j).scale(&ce), m.f(j, i).scale(&cf))
        } else {
            let (la, lb) = d.costandard(r.i, r.j).expect("non-simple");
            let a = positive_root(d, la.0, la.1).expect("root");
            let b = positive_root(d, lb.0, lb.1).expect("root");
            let (ea, fa) = &out[&a];
            let (eb, fb) = &out[&b];
            (ea.qbracket(eb, d), fa.qbracket(fb, d).scale(&f_prefactor(d, &a, &b)))
        };
        out.insert(r, v);
    }
    out
}

/// Prefactors `(c_e, c_f)` with `ξ(e_γ) = c_e 𝐞_ij`, `ξ(f_γ) = c_f 𝐟_ji`, where stated.
pub fn xi_prefactor(d: &RootDatum, r: &Root) -> Option<(QRat, QRat)> {
    if d.mode == Mode::Gl {
        return Some((QRat::one(), QRat::one()));
    }
    let s = d.s;
    let minus_top = if d.type_tag == TypeTag::B { s + 1 } else { s };
    if r.j <= minus_top {
        return Some((QRat::one(), QRat::one()));
    }
    let j = d.prime(r.j);
    if j <= r.i {
        return None;
    }
    let mut p = QRat::one();
    for k in j..=s {
        let (a, b) = (d.par(k) as u32, d.par(k + 1) as u32);
        p = -(&p * &sgn(a * (a + b)));
    }
    let th = |a: usize, b: usize| QRat::from_int((d.theta(a) * d.theta(b)) as i64);
    match d.type_tag {
        TypeTag::B => {
            let c = &th(j, s + 1) * &p;
            Some((c.clone(), c))
        }
        TypeTag::C => {
            let c = -(&th(j, s) * &p);
            let f = -(&(&q(1) + &q(-1)) * &c);
            Some((c, f))
        }
        _ => {
            let c = -(&th(j, s) * &p);
            Some((c.clone(), c))
        }
    }
}

/// `ξ` on quantum root vectors against the stated multiples of `𝐞_ij`, `𝐟_ji`.
pub fn xi_root_check(m: &RepModel) -> Vec<CheckRow> {
    let d = &m.datum;
    let t = "xi-roots";
    let xi = xi_vectors(m);
    let mut rows = Vec::new();
    for r in d.reduced_roots() {
        let Some((ce, cf)) = xi_prefactor(d, r) else {
            rows.push(CheckRow::skipped(t, format!("{r}"), "prefactor-unspecified"));
            continue;
        };
        let (e, f) = &xi[r];
        rows.push(mat_eq(t, format!("e[{r}]"), &e.m, &m.e(r.i, r.j).m.scale(&ce)));
        rows.push(mat_eq(t, format!("f[{r}]"), &f.m, &m.f(r.j, r.i).m.scale(&cf)));
    }
    rows
}

/// DF images, roundtrip chains and root-vector images under `ξ`.
pub fn correspondence_check(b: &RMatrixBundle) -> Result<Vec<CheckRow>, RootError> {
    let m = RepModel::new(b)?;
    let rep = build_rep(&b.datum);
    let mut rows = df_image_check(&m, &rep);
    rows.extend(roundtrip_check(&m, &rep));
    rows.extend(xi_root_check(&m));
    Ok(rows)
}

/// `(ξ(e_k), ξ(f_k))_R = 1/(q - q⁻¹)` for every simple root.
pub fn anchor_check(b: &RMatrixBundle) -> Result<Vec<CheckRow>, RootError> {
    let d = &b.datum;
    let sigma = PairingSpec::sigma_r(b, Arc::new(Alphabet::new(d.clone())));
    let want = qmq().inv().expect("nonzero");
    let mut rows = Vec::new();
    for k in 1..=d.num_simple() {
        let ((i, j), ce, cf) = xi_simple(d, k);
        let e = rtt_word(d, i, j, Side::E).scale(&ce);
        let f = rtt_word(d, i, j, Side::F).scale(&cf);
        let v = sigma.pair(&e, &f)?;
        rows.push(CheckRow::check("anchor", format!("α{k}"), v == want, || format!("got {v}")));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse_word;
    use crate::report::{all_pass, failures};
    use crate::rmatrix::build_r;

    fn gl(p: &str) -> Arc<RootDatum> {
        Arc::new(RootDatum::gl_str(p).unwrap())
    }

    fn osp(p: &str) -> Arc<RootDatum> {
        Arc::new(RootDatum::osp_str(p, None).unwrap())
    }

    fn model(d: &Arc<RootDatum>) -> (RMatrixBundle, RepModel) {
        let b = build_r(d).unwrap();
        let m = RepModel::new(&b).unwrap();
        (b, m)
    }

    fn elt(terms: &[(&str, QRat)]) -> AlgElement {
        let mut a = AlgElement::zero();
        for (w, c) in terms {
            a.add_term(parse_word(w).unwrap(), c.clone());
        }
        a
    }

    #[test]
    fn simple_root_vector_is_one_letter() {
        let d = gl("011");
        let v = dj_root_vector(&d, 1, 2, Side::E).unwrap();
        assert_eq!(v.word, elt(&[("e1", QRat::one())]));
    }

    #[test]
    fn gl_011_e13_is_the_q_bracket() {
        // e1 odd, e2 even, (α1, α2) = 1
        let d = gl("011");
        let v = dj_root_vector(&d, 1, 3, Side::E).unwrap();
        assert_eq!(v.word, elt(&[("e1 e2", QRat::one()), ("e2 e1", -q(1))]));
    }

    #[test]
    fn non_root_is_rejected() {
        let d = osp("010010");
        assert!(matches!(dj_root_vector(&d, 3, 4, Side::E), Err(RootError::NotReduced(3, 4))));
    }

    #[test]
    fn gl11_rtt_e12_word_scalar() {
        let d = gl("01");
        let want = q(1).checked_div(&qmq()).unwrap();
        assert_eq!(rtt_word(&d, 1, 2, Side::E), elt(&[("lpinv1 lp1_2", want)]));
    }

    #[test]
    fn d_type_e_ss_prime_vanishes() {
        let d = osp("010010");
        let (_, m) = model(&d);
        assert!(m.e(d.s, d.s + 1).m.is_empty());
    }

    #[test]
    fn root_vectors_consistent_on_samples() {
        for d in [gl("0110"), osp("0110"), osp("11011")] {
            let (_, m) = model(&d);
            assert!(all_pass(&vector_check(&DjRootVectors::new(&d), &m)), "{}", d.describe());
        }
    }

    #[test]
    fn pbw_gl11_caps_the_odd_root() {
        let d = gl("01");
        let labels: Vec<String> = pbw_enumerate(&d, 2).iter().map(|m| m.label()).collect();
        assert_eq!(labels, ["1", "g1,2"]);
    }

    #[test]
    fn pbw_even_root_has_powers() {
        let d = gl("00");
        let labels: Vec<String> = pbw_enumerate(&d, 2).iter().map(|m| m.label()).collect();
        assert_eq!(labels, ["1", "g1,2", "g1,2^2"]);
    }

    #[test]
    fn pbw_osp12_admits_square_of_odd_nonisotropic_root() {
        let d = osp("101");
        let r = d.reduced_roots()[0];
        assert_eq!((r.parity, d.form(r.weight, r.weight)), (1, -1));
        assert_eq!(pbw_cap(&d, &r), None);
        assert!(pbw_enumerate(&d, 2).iter().any(|m| m.exponent(&r) == 2));
    }

    #[test]
    fn pbw_words_read_roots_decreasing() {
        let d = gl("011");
        let order = d.convex_order();
        for m in pbw_enumerate(&d, 4) {
            let pos: Vec<usize> = m.factors.iter().map(|(r, _)| order.iter().position(|x| x == r).unwrap()).collect();
            assert!(pos.windows(2).all(|w| w[0] > w[1]), "{}", m.label());
        }
    }

    #[test]
    fn c_scalar_values() {
        let d = gl("00");
        let r = d.reduced_roots()[0];
        assert_eq!(c_scalar(&d, &r, 1), QRat::one());
        assert_eq!(c_scalar(&d, &r, 2), &QRat::one() + &q(2));
    }

    #[test]
    fn chi_vanishes_without_odd_pairs() {
        let d = gl("011");
        for m in pbw_enumerate(&d, 4) {
            let odd: Vec<u32> = m.factors.iter().filter(|(r, _)| r.parity == 1).map(|(_, k)| *k).collect();
            if odd.len() <= 1 && m.factors.iter().all(|(_, k)| *k <= 1) {
                assert_eq!(chi(&m), 0);
            }
        }
    }

    #[test]
    fn gram_matches_closed_form_gl() {
        let d = gl("0110");
        let b = build_r(&d).unwrap();
        assert!(all_pass(&gram_check(&gram_pairing(&b).unwrap(), 4, None, false).unwrap()));
    }

    #[test]
    fn gram_literal_fails_only_where_bracketed_needed() {
        let d = osp("010010");
        let b = build_r(&d).unwrap();
        let rows = gram_check(&gram_pairing(&b).unwrap(), 3, None, true).unwrap();
        let f = failures(&rows);
        assert!(!f.is_empty());
        assert!(f.iter().all(|r| r.table == "gram"));
        assert!(rows.iter().any(|r| r.table == "gram-bracketed"));
    }

    #[test]
    fn gram_single_degree() {
        let d = gl("011");
        let b = build_r(&d).unwrap();
        let w = Weight::from_slice(&[1, 0, -1]).unwrap();
        let comps = gram_components(&gram_pairing(&b).unwrap(), 4, Some(w), GramVariant::Literal, false).unwrap();
        assert_eq!(comps.len(), 1);
        // g1,3 and g2,3*g1,2
        assert_eq!(comps[0].monomials.len(), 2);
        assert!(comps[0].mismatch().is_none() && comps[0].invertible());
    }

    #[test]
    fn gl11_single_local_factor() {
        let d = gl("01");
        let (factors, _) = ru_product(&DjRootVectors::new(&d)).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].denominators.len(), 1);
    }

    #[test]
    fn ru_factorization_samples() {
        for d in [gl("01101"), osp("101"), osp("0110"), osp("010010")] {
            let b = build_r(&d).unwrap();
            assert!(all_pass(&verify_ru_factorization(&b).unwrap()), "{}", d.describe());
        }
    }

    #[test]
    fn gl_correspondence_all_pass() {
        for p in ["01", "011", "0110", "01101"] {
            let b = build_r(&gl(p)).unwrap();
            assert!(all_pass(&correspondence_check(&b).unwrap()), "{p}");
            assert!(all_pass(&anchor_check(&b).unwrap()), "{p}");
        }
    }

    #[test]
    fn osp_omega_step_needs_the_gauge() {
        let b = build_r(&osp("101")).unwrap();
        let rows = correspondence_check(&b).unwrap();
        let failed: Vec<&str> = failures(&rows).iter().map(|r| r.row_id.as_str()).collect();
        assert_eq!(failed, ["ω[e1]", "ω[f1]"]);
        let gauged = rows.iter().filter(|r| r.row_id.ends_with("gauged")).count();
        assert_eq!(gauged, 2);
    }

    #[test]
    fn c_type_long_root_roundtrip() {
        let d = osp("0110");
        let b = build_r(&d).unwrap();
        let rows = correspondence_check(&b).unwrap();
        let s = d.s;
        for id in [format!("DF[e{s}]"), format!("DF[f{s}]"), format!("ω[e{s}] gauged")] {
            let r = rows.iter().find(|r| r.row_id.starts_with(&id)).unwrap();
            assert!(!r.is_fail(), "{id}");
        }
    }

    #[test]
    fn c_type_f_prefactor_sign() {
        // the model gives the stated e-side prefactor and the opposite f-side sign
        let d = osp("0110");
        let (_, m) = model(&d);
        let rows = xi_root_check(&m);
        let failed: Vec<&str> = failures(&rows).iter().map(|r| r.row_id.as_str()).collect();
        assert_eq!(failed, ["f[g1,3]"]);
        let r = d.reduced_root(1, 3).unwrap();
        let (_, cf) = xi_prefactor(&d, &r).unwrap();
        let xi = xi_vectors(&m);
        assert_eq!(xi[&r].1.m, m.f(3, 1).m.scale(&-cf));
    }

    #[test]
    fn anchors_osp() {
        for d in [osp("101"), osp("0110"), osp("11011"), osp("010010")] {
            let b = build_r(&d).unwrap();
            assert!(all_pass(&anchor_check(&b).unwrap()), "{}", d.describe());
        }
    }
}
