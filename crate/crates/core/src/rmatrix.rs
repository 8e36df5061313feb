//! Evaluated R-matrices, the first fundamental representation and their identities.

use std::sync::Arc;

use thiserror::Error;

use crate::grading::{sign, Bicharacter};
use crate::gtensor::{GradedMatrix, GtError, Side};
use crate::qfield::QRat;
use crate::report::CheckRow;
use crate::rootdata::{Mode, RootDatum, TypeTag, Weight};

/// Scalar graded matrix.
pub type Mat = GradedMatrix<QRat>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RError {
    #[error("non-integral q-exponent 2x = {twice} in the R-matrix entry for ({i},{j})")]
    NonIntegralExponent { i: usize, j: usize, twice: i32 },
    #[error(transparent)]
    Tensor(#[from] GtError),
}

const STD: Bicharacter = Bicharacter::Standard;

fn q(k: i32) -> QRat {
    QRat::q_pow(k as i64)
}

fn qmq() -> QRat {
    QRat::q_minus_qinv()
}

fn sgn(p: u32) -> QRat {
    QRat::from_int(sign(p) as i64)
}

pub fn parity_arc(d: &RootDatum) -> Arc<[u8]> {
    d.parity().to_vec().into()
}

/// `c · E_ij` (1-based indices).
pub fn unit(d: &RootDatum, i: usize, j: usize, c: QRat) -> Mat {
    let mut m = Mat::new(d.n, 1, parity_arc(d));
    m.add_at(&[(i - 1, j - 1)], c);
    m
}

pub fn identity(d: &RootDatum, legs: usize) -> Mat {
    Mat::identity(d.n, legs, parity_arc(d), QRat::one())
}

fn add2(m: &mut Mat, a: (usize, usize), b: (usize, usize), c: QRat) {
    m.add_at(&[(a.0 - 1, a.1 - 1), (b.0 - 1, b.1 - 1)], c);
}

/// `R`, `R⁻¹`, `R_s`, `R_u` over two legs.
#[derive(Clone)]
pub struct RMatrixBundle {
    pub datum: Arc<RootDatum>,
    pub r: Mat,
    pub r_inv: Mat,
    pub r_s: Mat,
    pub r_u: Mat,
}

/// Halves a doubled exponent, failing on odd values.
fn half(twice: i32, i: usize, j: usize) -> Result<i32, RError> {
    if twice % 2 != 0 {
        return Err(RError::NonIntegralExponent { i, j, twice });
    }
    Ok(twice / 2)
}

pub fn build_r(d: &Arc<RootDatum>) -> Result<RMatrixBundle, RError> {
    let n = d.n;
    let par = parity_arc(d);
    let mut r = Mat::new(n, 2, par.clone());
    let mut r_inv = Mat::new(n, 2, par.clone());
    let mut r_s = Mat::new(n, 2, par.clone());
    let mut r_u = identity(d, 2);
    let osp = d.mode == Mode::Osp;
    for i in 1..=n {
        for j in 1..=n {
            let e = d.h_form(i, j);
            add2(&mut r, (i, i), (j, j), q(-e));
            add2(&mut r_inv, (i, i), (j, j), q(e));
            add2(&mut r_s, (i, i), (j, j), q(-e));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let sj = sgn(d.par(j) as u32);
            let (pi, pj) = (d.par(i) as u32, d.par(j) as u32);
            if !osp {
                add2(&mut r, (i, j), (j, i), -(&qmq() * &sj));
                add2(&mut r_inv, (i, j), (j, i), &qmq() * &sj);
                add2(&mut r_u, (i, j), (j, i), -(&qmq() * &sj));
                continue;
            }
            let (ip, jp) = (d.prime(i), d.prime(j));
            let (eii, ejj) = (d.eps_form(i, i), d.eps_form(j, j));
            let rho = d.rho2(i) - d.rho2(j);
            let th = sgn(pj * (pi + pj)) * QRat::from_int((d.theta(i) * d.theta(j)) as i64);
            let x_r = half(rho - eii + ejj, i, j)?;
            let x_inv = half(-rho - eii + ejj, i, j)?;
            let x_u = half(rho - eii - ejj, i, j)?;
            let pre = &qmq() * &sj;
            // R: -(q - q⁻¹) q⁻¹ (-1)^j̄ E_ij ⊗ (E_ji - θ q^x E_i'j')
            let a = -(&pre * &q(-1));
            add2(&mut r, (i, j), (j, i), a.clone());
            add2(&mut r, (i, j), (ip, jp), -(&(&a * &th) * &q(x_r)));
            let b = &pre * &q(1);
            add2(&mut r_inv, (i, j), (j, i), b.clone());
            add2(&mut r_inv, (i, j), (ip, jp), -(&(&b * &th) * &q(x_inv)));
            let c = -pre;
            add2(&mut r_u, (i, j), (j, i), &c * &q(d.eps_form(i, j)));
            add2(&mut r_u, (i, j), (ip, jp), -(&(&c * &th) * &q(x_u)));
        }
    }
    Ok(RMatrixBundle {
        datum: d.clone(),
        r,
        r_inv,
        r_s,
        r_u,
    })
}

/// A homogeneous element of `End(V)` with its Q-degree and parity.
#[derive(Clone, Debug)]
pub struct RepElt {
    pub m: Mat,
    pub weight: Weight,
    pub parity: u8,
}

impl RepElt {
    pub fn new(m: Mat, weight: Weight, parity: u8) -> Self {
        RepElt { m, weight, parity }
    }

    pub fn mul(&self, o: &RepElt) -> RepElt {
        RepElt {
            m: self.m.matmul(&o.m, STD).expect("same shape"),
            weight: self.weight + o.weight,
            parity: self.parity ^ o.parity,
        }
    }

    /// Product in the ζ-twisted algebra: `ζ(|x|,|y|) x y`.
    pub fn zmul(&self, o: &RepElt) -> RepElt {
        let p = self.mul(o);
        let s = sign((self.parity * o.parity) as u32);
        RepElt { m: p.m.scale(&QRat::from_int(s as i64)), ..p }
    }

    pub fn scale(&self, c: &QRat) -> RepElt {
        RepElt {
            m: self.m.scale(c),
            ..self.clone()
        }
    }

    pub fn add(&self, o: &RepElt) -> RepElt {
        RepElt {
            m: self.m.add(&o.m).expect("same shape"),
            ..self.clone()
        }
    }

    pub fn sub(&self, o: &RepElt) -> RepElt {
        self.add(&o.scale(&QRat::from_int(-1)))
    }

    /// `[[a,b]] = ab - (-1)^{|a||b|} q^{(deg a, deg b)} ba`.
    pub fn qbracket(&self, o: &RepElt, d: &RootDatum) -> RepElt {
        let c = &sgn((self.parity * o.parity) as u32) * &q(d.form(self.weight, o.weight));
        self.mul(o).sub(&o.mul(self).scale(&c))
    }

    /// The same bracket computed with the ζ-twisted product.
    pub fn zbracket(&self, o: &RepElt, d: &RootDatum) -> RepElt {
        let c = &sgn((self.parity * o.parity) as u32) * &q(d.form(self.weight, o.weight));
        self.zmul(o).sub(&o.zmul(self).scale(&c))
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_empty()
    }
}

/// Images of the Chevalley generators in the first fundamental representation.
#[derive(Clone)]
pub struct FundRep {
    pub datum: Arc<RootDatum>,
    e: Vec<Mat>,
    f: Vec<Mat>,
}

impl FundRep {
    /// `ϱ(e_k)`, `k` in `1..=rank`.
    pub fn e(&self, k: usize) -> &Mat {
        &self.e[k - 1]
    }

    pub fn f(&self, k: usize) -> &Mat {
        &self.f[k - 1]
    }

    pub fn e_elt(&self, k: usize) -> RepElt {
        let a = self.datum.simple_roots()[k - 1];
        RepElt::new(self.e(k).clone(), a.weight, a.parity)
    }

    pub fn f_elt(&self, k: usize) -> RepElt {
        let a = self.datum.simple_roots()[k - 1];
        RepElt::new(self.f(k).clone(), -a.weight, a.parity)
    }

    /// `ϱ(q^{Σ v_k H_k})` (gl) or `ϱ(q^{Σ v_k H̃_k})` (osp): diagonal with
    /// `q^{Σ_k v_k (ε̃_k, ε̃_a)}` on basis vector `a`.
    pub fn k(&self, v: &[i32]) -> Mat {
        let d = &self.datum;
        let diag: Vec<QRat> = (1..=d.n)
            .map(|a| q((1..=d.n).map(|k| v[k - 1] * d.h_form(k, a)).sum()))
            .collect();
        Mat::diagonal(parity_arc(d), &diag)
    }

    pub fn k_elt(&self, v: &[i32]) -> RepElt {
        RepElt::new(self.k(v), Weight::ZERO, 0)
    }

    /// Cartan vector `±e_k` for a single `H_k` / `H̃_k`.
    pub fn h_unit(&self, k: usize, c: i32) -> Vec<i32> {
        let mut v = vec![0; self.datum.n];
        v[k - 1] = c;
        v
    }

    pub fn k_simple(&self, k: usize, c: i32) -> Mat {
        let v: Vec<i32> = self.datum.h_simple(k).iter().map(|x| x * c).collect();
        self.k(&v)
    }
}

/// `X_ij = E_ij - (-1)^{ī(ī+j̄)} ϑ_i ϑ_j E_{j'i'}`.
fn x_op(d: &RootDatum, i: usize, j: usize) -> Mat {
    let (pi, pj) = (d.par(i) as u32, d.par(j) as u32);
    let c = sgn(pi * (pi + pj)) * QRat::from_int((d.theta(i) * d.theta(j)) as i64);
    unit(d, i, j, QRat::one())
        .sub(&unit(d, d.prime(j), d.prime(i), c))
        .expect("same shape")
}

/// `κ = (q + q⁻¹)/2`.
pub fn kappa() -> QRat {
    (q(1) + q(-1)) / QRat::from_int(2)
}

pub fn build_rep(d: &Arc<RootDatum>) -> FundRep {
    let mut e = Vec::new();
    let mut f = Vec::new();
    match d.mode {
        Mode::Gl => {
            for i in 1..d.n {
                e.push(unit(d, i, i + 1, QRat::one()));
                f.push(unit(d, i + 1, i, sgn(d.par(i) as u32)));
            }
        }
        Mode::Osp => {
            let s = d.s;
            for i in 1..s {
                e.push(x_op(d, i, i + 1));
                f.push(x_op(d, i + 1, i).scale(&sgn(d.par(i) as u32)));
            }
            match d.type_tag {
                TypeTag::B => {
                    e.push(x_op(d, s, s + 1));
                    f.push(x_op(d, s + 1, s).scale(&sgn(d.par(s) as u32)));
                }
                TypeTag::C => {
                    let sp = d.prime(s);
                    e.push(unit(d, s, sp, QRat::one()));
                    f.push(unit(d, sp, s, &kappa() * &QRat::from_int(-2)));
                }
                TypeTag::D => {
                    let sp = d.prime(s);
                    e.push(x_op(d, s - 1, sp));
                    f.push(x_op(d, sp, s - 1).scale(&sgn(d.par(s - 1) as u32)));
                }
                TypeTag::A => unreachable!("osp datum never has type A"),
            }
        }
    }
    FundRep { datum: d.clone(), e, f }
}

/// `P = Σ (-1)^{j̄} E_ij ⊗ E_ji`, the super flip on `V ⊗ V`.
pub fn super_flip(d: &RootDatum) -> Mat {
    let mut p = Mat::new(d.n, 2, parity_arc(d));
    for i in 1..=d.n {
        for j in 1..=d.n {
            add2(&mut p, (i, j), (j, i), sgn(d.par(j) as u32));
        }
    }
    p
}

fn eq_row(table: &str, name: &str, a: &Mat, b: &Mat) -> CheckRow {
    CheckRow::check(table, name, a == b, || a.difference_witness(b))
}

/// `(ϱ⊗ϱ)Δ(g)` for every Chevalley generator and every `q^{±H_k}`.
pub fn coproduct_images(rep: &FundRep) -> Vec<(String, Mat)> {
    let d = &rep.datum;
    let one = identity(d, 1);
    let kr = |a: &Mat, b: &Mat| a.kron(b, STD).expect("same shape");
    let mut out = Vec::new();
    for k in 1..=d.num_simple() {
        let de = kr(&rep.k_simple(k, 1), rep.e(k)).add(&kr(rep.e(k), &one)).unwrap();
        out.push((format!("e{k}"), de));
        let df = kr(&one, rep.f(k)).add(&kr(rep.f(k), &rep.k_simple(k, -1))).unwrap();
        out.push((format!("f{k}"), df));
    }
    for k in 1..=d.n {
        for c in [1, -1] {
            let h = rep.k(&rep.h_unit(k, c));
            out.push((format!("K{k}^{c}"), kr(&h, &h)));
        }
    }
    out
}

/// `D = diag(q^{(ε_a,ε_a)})` for `a <= s`, `1` otherwise; `R^st = (D⊗D) R_21 (D⊗D)⁻¹`.
/// Identity for gl.
pub fn st_gauge(d: &RootDatum) -> Mat {
    gauge_diag(d, 1)
}

pub fn st_gauge_inv(d: &RootDatum) -> Mat {
    gauge_diag(d, -1)
}

fn gauge_diag(d: &RootDatum, c: i32) -> Mat {
    let diag: Vec<QRat> = (1..=d.n)
        .map(|a| match d.mode {
            Mode::Osp if a <= d.s => q(c * d.eps_form(a, a)),
            _ => QRat::one(),
        })
        .collect();
    Mat::diagonal(parity_arc(d), &diag)
}

/// YBE, braid relation, inverse, supertranspose, factorization and intertwiner checks.
pub fn check_structure(b: &RMatrixBundle, rep: &FundRep) -> Result<Vec<CheckRow>, RError> {
    let d = &b.datum;
    let t = "structure";
    let mut rows = Vec::new();
    let r12 = b.r.tensor_legs(&[1, 2], 3, STD)?;
    let r13 = b.r.tensor_legs(&[1, 3], 3, STD)?;
    let r23 = b.r.tensor_legs(&[2, 3], 3, STD)?;
    let lhs = r12.matmul(&r13, STD)?.matmul(&r23, STD)?;
    let rhs = r23.matmul(&r13, STD)?.matmul(&r12, STD)?;
    rows.push(eq_row(t, "ybe", &lhs, &rhs));

    let p = super_flip(d);
    let rhat = p.matmul(&b.r, STD)?;
    let h12 = rhat.tensor_legs(&[1, 2], 3, STD)?;
    let h23 = rhat.tensor_legs(&[2, 3], 3, STD)?;
    let lhs = h12.matmul(&h23, STD)?.matmul(&h12, STD)?;
    let rhs = h23.matmul(&h12, STD)?.matmul(&h23, STD)?;
    rows.push(eq_row(t, "braid", &lhs, &rhs));

    rows.push(eq_row(t, "inverse", &b.r.matmul(&b.r_inv, STD)?, &identity(d, 2)));
    let r21 = b.r.tensor_legs(&[2, 1], 2, STD)?;
    let st = b.r.supertranspose(None);
    rows.push(eq_row(t, "supertranspose", &st, &r21));
    // R_u is st-symmetric and R_s diagonal, so R^st = (R_s R_u)_21 always; for osp
    // R_s and R_u do not commute and the literal identity above can fail
    let rs_ru21 = b.r_s.matmul(&b.r_u, STD)?.tensor_legs(&[2, 1], 2, STD)?;
    rows.push(eq_row(t, "supertranspose_rs_ru", &st, &rs_ru21));
    let dd = st_gauge(d).tensor_legs(&[1], 2, STD)?.matmul(&st_gauge(d).tensor_legs(&[2], 2, STD)?, STD)?;
    let dd_inv = st_gauge_inv(d).tensor_legs(&[1], 2, STD)?.matmul(&st_gauge_inv(d).tensor_legs(&[2], 2, STD)?, STD)?;
    let conj = dd.matmul(&r21, STD)?.matmul(&dd_inv, STD)?;
    rows.push(eq_row(t, "supertranspose_gauged", &st, &conj));
    rows.push(eq_row(t, "ru_rs", &b.r_u.matmul(&b.r_s, STD)?, &b.r));

    let mut bad = Vec::new();
    for (name, x) in coproduct_images(rep) {
        if rhat.matmul(&x, STD)? != x.matmul(&rhat, STD)? {
            bad.push(name);
        }
    }
    rows.push(CheckRow::check(t, "intertwiner", bad.is_empty(), || {
        format!("fails for {}", bad.join(","))
    }));
    Ok(rows)
}

/// Chevalley relations `[e_i, f_j] = δ_ij (K_i - K_i⁻¹)/(q - q⁻¹)` and `K K⁻¹ = 1`.
pub fn check_chevalley(rep: &FundRep) -> Vec<CheckRow> {
    let d = &rep.datum;
    let t = "chevalley";
    let mut rows = Vec::new();
    for i in 1..=d.num_simple() {
        for j in 1..=d.num_simple() {
            let (e, f) = (rep.e_elt(i), rep.f_elt(j));
            let s = sgn((e.parity * f.parity) as u32);
            let comm = e.mul(&f).m.sub(&f.mul(&e).m.scale(&s)).unwrap();
            let want = if i == j {
                rep.k_simple(i, 1).sub(&rep.k_simple(i, -1)).unwrap().scale(&qmq().inv().unwrap())
            } else {
                Mat::new(d.n, 1, parity_arc(d))
            };
            rows.push(eq_row(t, &format!("[e{i},f{j}]"), &comm, &want));
        }
    }
    for k in 1..=d.n {
        let p = rep.k(&rep.h_unit(k, 1)).matmul(&rep.k(&rep.h_unit(k, -1)), STD).unwrap();
        rows.push(eq_row(t, &format!("K{k}K{k}^-1"), &p, &identity(d, 1)));
    }
    rows
}

/// Bracket expression over Chevalley generators.
#[derive(Clone, Debug)]
pub enum SExpr {
    G(usize),
    Br(Box<SExpr>, Box<SExpr>),
}

fn g(k: usize) -> SExpr {
    SExpr::G(k)
}

fn br(a: SExpr, b: SExpr) -> SExpr {
    SExpr::Br(Box::new(a), Box::new(b))
}

impl SExpr {
    fn eval(&self, rep: &FundRep, positive: bool) -> RepElt {
        match self {
            SExpr::G(k) => {
                if positive {
                    rep.e_elt(*k)
                } else {
                    rep.f_elt(*k)
                }
            }
            SExpr::Br(a, b) => a.eval(rep, positive).qbracket(&b.eval(rep, positive), &rep.datum),
        }
    }

    fn label(&self) -> String {
        match self {
            SExpr::G(k) => format!("{k}"),
            SExpr::Br(a, b) => format!("[{},{}]", a.label(), b.label()),
        }
    }
}

/// Serre catalogue for the datum as `(family, lhs, rhs)`; `rhs = None` means zero.
pub fn serre_catalog(d: &RootDatum) -> Vec<(String, SExpr, Option<SExpr>)> {
    let r = d.num_simple();
    let alpha = |k: usize| d.simple_roots()[k - 1];
    let even = |k: usize| alpha(k).parity == 0;
    let a = |i: usize, j: usize| d.form(alpha(i).weight, alpha(j).weight);
    let mut out = Vec::new();
    let lim = match d.mode {
        Mode::Gl => r + 1,
        Mode::Osp => d.s,
    };
    for i in 1..=r {
        for j in 1..=r {
            if a(i, j) == 0 {
                out.push(("std1".to_string(), br(g(i), g(j)), None));
            }
        }
    }
    // standard families, restricted to indices below `lim`
    for i in 1..lim {
        for j in 1..lim {
            if i.abs_diff(j) == 1 && even(i) {
                out.push(("std2".into(), br(g(i), br(g(i), g(j))), None));
            }
        }
        if i >= 2 && i + 1 < lim && !even(i) {
            out.push(("std3".into(), br(br(br(g(i - 1), g(i)), g(i + 1)), g(i)), None));
        }
    }
    if d.mode == Mode::Osp {
        let s = d.s;
        match d.type_tag {
            TypeTag::B if s >= 2 => {
                if even(s - 1) {
                    out.push(("B1".into(), br(g(s - 1), br(g(s - 1), g(s))), None));
                }
                if even(s) {
                    out.push(("B2".into(), br(br(br(g(s - 1), g(s)), g(s)), g(s)), None));
                }
                if s >= 3 && !even(s - 1) {
                    out.push(("B3".into(), br(br(br(g(s - 2), g(s - 1)), g(s)), g(s - 1)), None));
                }
            }
            TypeTag::C if s >= 2 => {
                if even(s - 1) {
                    out.push(("C1".into(), br(g(s - 1), br(g(s - 1), br(g(s - 1), g(s)))), None));
                }
                out.push(("C2".into(), br(br(g(s - 1), g(s)), g(s)), None));
                if s >= 3 && !even(s - 2) && !even(s - 1) {
                    let x = br(g(s - 2), g(s - 1));
                    out.push(("C3".into(), br(br(br(x.clone(), g(s)), x), g(s - 1)), None));
                }
                if s >= 4 && even(s - 2) && !even(s - 1) {
                    let x = br(br(br(g(s - 3), g(s - 2)), g(s - 1)), g(s));
                    out.push(("C4".into(), br(br(br(x, g(s - 1)), g(s - 2)), g(s - 1)), None));
                }
            }
            TypeTag::D => {
                if s >= 3 && even(s - 2) {
                    out.push(("D1".into(), br(g(s - 2), br(g(s - 2), g(s))), None));
                }
                if s >= 3 && even(s) {
                    out.push(("D2".into(), br(br(g(s - 2), g(s)), g(s)), None));
                }
                if s >= 4 && !even(s - 2) {
                    out.push(("D3".into(), br(br(br(g(s - 3), g(s - 2)), g(s)), g(s - 2)), None));
                }
                if s >= 3 && !even(s) {
                    out.push((
                        "D4".into(),
                        br(br(g(s - 2), g(s - 1)), g(s)),
                        Some(br(br(g(s - 2), g(s)), g(s - 1))),
                    ));
                }
            }
            _ => {}
        }
    }
    out
}

/// Evaluates every Serre relation on both the `e` and the `f` side.
pub fn check_serre(rep: &FundRep) -> Vec<CheckRow> {
    let d = &rep.datum;
    let mut rows = Vec::new();
    for (fam, lhs, rhs) in serre_catalog(d) {
        for positive in [true, false] {
            let l = lhs.eval(rep, positive);
            let diff = match &rhs {
                Some(r) => l.sub(&r.eval(rep, positive)),
                None => l,
            };
            let side = if positive { "e" } else { "f" };
            let name = format!("{fam}:{side}{}", lhs.label());
            rows.push(CheckRow::check("serre", name, diff.is_zero(), || {
                format!("nonzero entry {}", diff.m.difference_witness(&Mat::new(d.n, 1, parity_arc(d))))
            }));
        }
    }
    rows
}

/// One-leg matrix whose entries are one-leg scalar matrices.
pub type BlockMat = GradedMatrix<Mat>;

/// `L⁺ʳᵉᵖ` from `R₂₁` and `L⁻ʳᵉᵖ` from `R⁻¹`, sliced along the second leg.
pub fn evaluated_l(b: &RMatrixBundle) -> Result<(BlockMat, BlockMat), RError> {
    let d = &b.datum;
    let r21 = b.r.tensor_legs(&[2, 1], 2, STD)?;
    let slice = |m: &Mat| {
        let mut out = BlockMat::new(d.n, 1, parity_arc(d));
        for i in 0..d.n {
            for j in 0..d.n {
                out.add_at(&[(i, j)], m.slice_last(i, j));
            }
        }
        out
    };
    let lp = slice(&r21);
    let lm = slice(&b.r_inv);
    // triangularity is part of the contract
    lp.gauss_triangular(Side::Upper)?;
    lm.gauss_triangular(Side::Lower)?;
    Ok((lp, lm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_pass;

    fn gl(p: &str) -> Arc<RootDatum> {
        Arc::new(RootDatum::gl_str(p).unwrap())
    }

    fn osp(p: &str) -> Arc<RootDatum> {
        Arc::new(RootDatum::osp_str(p, None).unwrap())
    }

    #[test]
    fn gl11_entries() {
        let d = gl("01");
        let b = build_r(&d).unwrap();
        let e = |i: usize, j: usize, k: usize, l: usize| b.r.get(&[(i - 1, j - 1), (k - 1, l - 1)]).cloned();
        assert_eq!(e(1, 1, 1, 1), Some(q(-1)));
        assert_eq!(e(1, 1, 2, 2), Some(QRat::one()));
        assert_eq!(e(2, 2, 1, 1), Some(QRat::one()));
        assert_eq!(e(2, 2, 2, 2), Some(q(1)));
        assert_eq!(e(1, 2, 2, 1), Some(qmq()));
        assert_eq!(b.r.len(), 5);
    }

    #[test]
    fn osp12_corner_entry() {
        let d = osp("101");
        let b = build_r(&d).unwrap();
        assert_eq!(b.r.get(&[(0, 0), (0, 0)]), Some(&QRat::one()));
    }

    #[test]
    fn ru_has_unit_diagonal() {
        for p in ["01", "011"] {
            let b = build_r(&gl(p)).unwrap();
            for i in 0..b.datum.n {
                for j in 0..b.datum.n {
                    assert!(b.r_u.get(&[(i, i), (j, j)]).unwrap().is_one());
                }
            }
        }
        let b = build_r(&osp("0110")).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!(b.r_u.get(&[(i, i), (j, j)]).unwrap().is_one());
            }
        }
    }

    #[test]
    fn structure_small() {
        for d in [gl("01"), gl("0011"), osp("101")] {
            let b = build_r(&d).unwrap();
            let rep = build_rep(&d);
            let rows = check_structure(&b, &rep).unwrap();
            let bad: Vec<_> = rows.iter().filter(|r| r.is_fail() && r.row_id != "supertranspose").collect();
            assert!(bad.is_empty(), "{}: {:?}", d.describe(), bad);
            assert!(all_pass(&check_chevalley(&rep)), "{}", d.describe());
        }
    }

    #[test]
    fn rep_examples() {
        let d = gl("011");
        let rep = build_rep(&d);
        assert_eq!(rep.f(2), &unit(&d, 3, 2, QRat::from_int(-1)));
        let d = osp("0110");
        let rep = build_rep(&d);
        assert_eq!(rep.f(2), &unit(&d, 3, 2, &kappa() * &QRat::from_int(-2)));
        for k in 1..=d.n {
            let p = rep.k(&rep.h_unit(k, 1)).matmul(&rep.k(&rep.h_unit(k, -1)), STD).unwrap();
            assert_eq!(p, identity(&d, 1));
        }
    }

    #[test]
    fn all_sample_data() {
        for d in crate::rootdata::sample_data() {
            let d = Arc::new(d);
            let b = build_r(&d).unwrap();
            let rep = build_rep(&d);
            let mut rows = check_structure(&b, &rep).unwrap();
            rows.extend(check_chevalley(&rep));
            rows.extend(check_serre(&rep));
            let bad: Vec<_> = crate::report::failures(&rows)
                .into_iter()
                .filter(|r| !(d.mode == Mode::Osp && r.row_id == "supertranspose"))
                .collect();
            assert!(bad.is_empty(), "{}: {:?}", d.describe(), bad);
            let lit = rows.iter().find(|r| r.row_id == "supertranspose").unwrap();
            assert_eq!(lit.is_fail(), d.mode == Mode::Osp, "{}", d.describe());
            evaluated_l(&b).unwrap();
        }
    }
}
