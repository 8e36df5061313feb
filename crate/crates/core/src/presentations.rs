//! Quadratic relations from the matrix RLL equations, the cocycle twist between the
//! two braidings, cross relations of the double and the Gauss identity tables.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::freealg::{AlgElement, Alphabet, Letter, Word};
use crate::grading::{sign, Bicharacter};
use crate::gtensor::{Coeff, GradedMatrix};
use crate::pairing::{PairError, PairingSpec};
use crate::qfield::QRat;
use crate::report::CheckRow;
use crate::rmatrix::{parity_arc, Mat, RError, RMatrixBundle, RepElt};
use crate::rootdata::{Mode, RootDatum, TypeTag};
use crate::rootvectors::RepModel;

/// Homogeneous noncommutative polynomial in the `l`-generators, used as a matrix coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct GPoly {
    pub el: AlgElement,
    pub parity: u8,
}

impl GPoly {
    pub fn constant(c: QRat) -> Self {
        GPoly {
            el: AlgElement::word(vec![], c),
            parity: 0,
        }
    }

    pub fn letter(l: Letter, parity: u8) -> Self {
        GPoly {
            el: AlgElement::letter(l),
            parity,
        }
    }
}

impl Coeff for GPoly {
    fn is_zero(&self) -> bool {
        self.el.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        let parity = if self.el.is_zero() { o.parity } else { self.parity };
        GPoly {
            el: self.el.add(&o.el),
            parity,
        }
    }
    fn neg(&self) -> Self {
        self.scale(&QRat::from_int(-1))
    }
    fn mul(&self, o: &Self) -> Self {
        GPoly {
            el: self.el.mul(&o.el),
            parity: self.parity ^ o.parity,
        }
    }
    fn scale(&self, c: &QRat) -> Self {
        GPoly {
            el: self.el.scale(c),
            parity: self.parity,
        }
    }
    fn parity(&self) -> u8 {
        self.parity
    }
    fn inverse(&self) -> Option<Self> {
        let (w, c) = self.el.terms.iter().next()?;
        if self.el.terms.len() != 1 || !w.is_empty() {
            return None;
        }
        Some(GPoly::constant(c.inv().ok()?))
    }
}

/// Terms of one quadratic relation, keyed by words in the `l`-generators.
pub type QuadraticRelation = BTreeMap<Word, QRat>;

/// Component `(i, j, k, l)` (1-based) of `E_ij ⊗ E_kl` to its relation.
pub type RelationSet = BTreeMap<(usize, usize, usize, usize), QuadraticRelation>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignPair {
    PlusPlus,
    MinusMinus,
    PlusMinus,
}

impl SignPair {
    pub const ALL: [SignPair; 3] = [SignPair::PlusPlus, SignPair::MinusMinus, SignPair::PlusMinus];

    pub fn name(self) -> &'static str {
        match self {
            SignPair::PlusPlus => "++",
            SignPair::MinusMinus => "--",
            SignPair::PlusMinus => "+-",
        }
    }
}

/// Formal `L⁺` or `L⁻` with generator entries.
fn formal_l(d: &RootDatum, plus: bool) -> GradedMatrix<GPoly> {
    let mut m = GradedMatrix::new(d.n, 1, parity_arc(d));
    for i in 1..=d.n {
        for j in 1..=d.n {
            let l = match (plus, i <= j, i >= j) {
                (true, true, _) => Letter::LP(i as u8, j as u8),
                (false, _, true) => Letter::LM(i as u8, j as u8),
                _ => continue,
            };
            m.add_at(&[(i - 1, j - 1)], GPoly::letter(l, d.par(i) ^ d.par(j)));
        }
    }
    m
}

/// `R₁₂ L^ν₁ L^η₂ − L^η₂ L^ν₁ R₁₂`, component by component.
pub fn extract_rll(b: &RMatrixBundle, signs: SignPair, braiding: Bicharacter) -> Result<RelationSet, RError> {
    let d = &b.datum;
    let (nu, eta) = match signs {
        SignPair::PlusPlus => (true, true),
        SignPair::MinusMinus => (false, false),
        SignPair::PlusMinus => (true, false),
    };
    let r: GradedMatrix<GPoly> = b.r.map_into(|c| GPoly::constant(c.clone()));
    let l1 = formal_l(d, nu).tensor_legs(&[1], 2, braiding)?;
    let l2 = formal_l(d, eta).tensor_legs(&[2], 2, braiding)?;
    let lhs = r.matmul(&l1, braiding)?.matmul(&l2, braiding)?;
    let rhs = l2.matmul(&l1, braiding)?.matmul(&r, braiding)?;
    let diff = lhs.sub(&rhs)?;
    let mut out = RelationSet::new();
    for (k, c) in diff.entries() {
        let idx = diff.unpack(k);
        out.insert((idx[0].0 + 1, idx[0].1 + 1, idx[1].0 + 1, idx[1].1 + 1), c.el.terms.clone());
    }
    Ok(out)
}

fn letter_parity(d: &RootDatum, l: &Letter) -> u8 {
    match *l {
        Letter::LP(i, j) | Letter::LM(i, j) => d.par(i as usize) ^ d.par(j as usize),
        _ => 0,
    }
}

/// ζ-twist of a relation: each quadratic term scaled by `ζ` of its two letters.
pub fn zeta_twist(d: &RootDatum, rel: &QuadraticRelation) -> QuadraticRelation {
    rel.iter()
        .map(|(w, c)| {
            let s = match w.as_slice() {
                [a, b] => sign((letter_parity(d, a) * letter_parity(d, b)) as u32),
                _ => 1,
            };
            (w.clone(), c.signed(s))
        })
        .collect()
}

pub fn relation_string(rel: &QuadraticRelation) -> String {
    let mut a = AlgElement::zero();
    for (w, c) in rel {
        a.add_term(w.clone(), c.clone());
    }
    a.to_string()
}

pub fn comp_string(k: &(usize, usize, usize, usize)) -> String {
    format!("E{},{}⊗E{},{}", k.0, k.1, k.2, k.3)
}

/// Compares two relation sets componentwise, reporting the first mismatch.
fn compare_sets(table: &str, row: &str, a: &RelationSet, b: &RelationSet) -> CheckRow {
    let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).collect();
    let empty = QuadraticRelation::new();
    for k in keys {
        let (x, y) = (a.get(k).unwrap_or(&empty), b.get(k).unwrap_or(&empty));
        if x != y {
            return CheckRow::fail(
                table,
                row,
                format!("{}: {} vs {}", comp_string(k), relation_string(x), relation_string(y)),
            );
        }
    }
    CheckRow::pass(table, row)
}

/// Relations under the twisted braiding equal the ζ-twisted standard relations.
pub fn twist_equivalence(b: &RMatrixBundle) -> Result<Vec<CheckRow>, RError> {
    let d = &b.datum;
    let mut rows = Vec::new();
    for sp in SignPair::ALL {
        let std = extract_rll(b, sp, Bicharacter::Standard)?;
        let tw = extract_rll(b, sp, Bicharacter::Twisted)?;
        let twisted: RelationSet = std.iter().map(|(k, r)| (*k, zeta_twist(d, r))).collect();
        rows.push(compare_sets("twist", sp.name(), &tw, &twisted));
    }
    Ok(rows)
}

/// `u_{a,b}` for every pair `(l⁺_ij, l⁻_kl)`, laid out as a relation set.
pub fn cross_relations(sigma: &PairingSpec) -> Result<RelationSet, PairError> {
    let al: &Arc<Alphabet> = &sigma.alphabet;
    let d = al.datum.clone();
    let n = d.n;
    let wp = |w: &Word| al.word_parity(w) as u32;
    let mut out = RelationSet::new();
    for i in 1..=n {
        for j in i..=n {
            let a = Letter::LP(i as u8, j as u8);
            let da = al.letter_coproduct(&a)?;
            let pa = al.parity(&a) as u32;
            for k in 1..=n {
                for l in 1..=k {
                    let bl = Letter::LM(k as u8, l as u8);
                    let db = al.letter_coproduct(&bl)?;
                    let mut u = AlgElement::zero();
                    for ((a1, a2), ca) in &da.terms {
                        for ((b1, b2), cb) in &db.terms {
                            let c = ca * cb;
                            let s0 = sign(wp(b2) * pa);
                            let p11 = sigma.pair_words(a1, b1)?;
                            if !p11.is_zero() {
                                let s = s0 * sign(wp(a1) * wp(b1));
                                let mut w = a2.clone();
                                w.extend_from_slice(b2);
                                u.add_term(w, (&c * &p11).signed(s));
                            }
                            let p22 = sigma.pair_words(a2, b2)?;
                            if !p22.is_zero() {
                                let mut w = b1.clone();
                                w.extend_from_slice(a1);
                                u.add_term(w, -(&c * &p22).signed(s0));
                            }
                        }
                    }
                    if !u.is_zero() {
                        out.insert((i, j, k, l), u.terms);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Cross relations against the mixed RLL relations.
pub fn cross_check(b: &RMatrixBundle, sigma: &PairingSpec) -> Result<CheckRow, PairError> {
    let mixed = extract_rll(b, SignPair::PlusMinus, Bicharacter::Standard).map_err(PairError::from)?;
    let cross = cross_relations(sigma)?;
    Ok(compare_sets("cross", "u=mixed", &cross, &mixed))
}

/// Image of a letter under `ω_R : L^± ↦ G⁻¹ (L^∓)^st G`.
fn omega_letter(d: &RootDatum, l: &Letter) -> (Letter, QRat) {
    let g = |a: usize| match d.mode {
        Mode::Osp if a <= d.s => d.eps_form(a, a),
        _ => 0,
    };
    let coef = |a: usize, b: usize| {
        let (pa, pb) = (d.par(a) as u32, d.par(b) as u32);
        QRat::q_pow((g(b) - g(a)) as i64).signed(sign(pa * (pa + pb)))
    };
    match *l {
        Letter::LP(a, b) => (Letter::LM(b, a), coef(a as usize, b as usize)),
        Letter::LM(a, b) => (Letter::LP(b, a), coef(a as usize, b as usize)),
        other => (other, QRat::one()),
    }
}

/// Row-echelon span over `ℚ(q)` keyed by words, pivot = least word of each row.
#[derive(Default)]
struct Span {
    rows: BTreeMap<Word, QuadraticRelation>,
}

impl Span {
    fn reduce(&self, v: &QuadraticRelation) -> QuadraticRelation {
        let mut v = v.clone();
        loop {
            let Some((k, c)) = v.iter().find(|(k, _)| self.rows.contains_key(*k)).map(|(k, c)| (k.clone(), c.clone()))
            else {
                return v;
            };
            for (w, x) in &self.rows[&k] {
                let e = v.entry(w.clone()).or_insert_with(QRat::zero);
                *e = &*e - &(&c * x);
                if e.is_zero() {
                    v.remove(w);
                }
            }
        }
    }

    fn insert(&mut self, v: &QuadraticRelation) {
        let r = self.reduce(v);
        if let Some((k, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            let inv = c.inv().expect("nonzero pivot");
            self.rows.insert(k, r.iter().map(|(w, x)| (w.clone(), x * &inv)).collect());
        }
    }
}

/// `ω_R` maps the `(+,+)` relations into the span of the `(−,−)` relations and back.
pub fn st_duality(b: &RMatrixBundle) -> Result<Vec<CheckRow>, RError> {
    let d = &b.datum;
    let pp = extract_rll(b, SignPair::PlusPlus, Bicharacter::Standard)?;
    let mm = extract_rll(b, SignPair::MinusMinus, Bicharacter::Standard)?;
    let image = |rel: &QuadraticRelation| {
        let mut out = QuadraticRelation::new();
        for (w, c) in rel {
            let mut coef = c.clone();
            let mut nw = Word::new();
            for l in w {
                let (x, s) = omega_letter(d, l);
                coef = &coef * &s;
                nw.push(x);
            }
            out.insert(nw, coef);
        }
        out
    };
    let mut rows = Vec::new();
    for (name, from, to) in [("++→--", &pp, &mm), ("--→++", &mm, &pp)] {
        let mut span = Span::default();
        for r in to.values() {
            span.insert(r);
        }
        let bad = from.iter().find(|(_, r)| !span.reduce(&image(r)).is_empty());
        rows.push(CheckRow::check("st-duality", name, bad.is_none(), || {
            let (k, r) = bad.unwrap();
            format!("{}: image of {} not in span", comp_string(k), relation_string(r))
        }));
    }
    Ok(rows)
}

/// Every RLL relation of every sign pair vanishes in the model.
pub fn rll_in_rep(b: &RMatrixBundle, m: &RepModel, table: &str) -> Result<Vec<CheckRow>, RError> {
    let d = &b.datum;
    let mut rows = Vec::new();
    for sp in SignPair::ALL {
        let rels = extract_rll(b, sp, Bicharacter::Standard)?;
        let bad = rels.iter().find(|(_, rel)| {
            let mut acc = Mat::new(d.n, 1, parity_arc(d));
            for (w, c) in rel.iter() {
                acc = acc.add(&m.eval_word(w).scale(c)).expect("same shape");
            }
            !acc.is_empty()
        });
        rows.push(CheckRow::check(table, sp.name(), bad.is_none(), || {
            let (k, r) = bad.unwrap();
            format!("{}: {} does not vanish", comp_string(k), relation_string(r))
        }));
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    A1,
    OspIndep,
    B1,
    C1,
    D1,
    Exceptional,
}

impl Table {
    pub fn name(self) -> &'static str {
        match self {
            Table::A1 => "A1",
            Table::OspIndep => "osp-indep",
            Table::B1 => "B1",
            Table::C1 => "C1",
            Table::D1 => "D1",
            Table::Exceptional => "CD-exceptional",
        }
    }

    pub fn parse(s: &str) -> Option<Table> {
        [Table::A1, Table::OspIndep, Table::B1, Table::C1, Table::D1, Table::Exceptional]
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
    }

    /// Tables that apply to the datum.
    pub fn applicable(d: &RootDatum) -> Vec<Table> {
        match (d.mode, d.type_tag) {
            (Mode::Gl, _) => vec![Table::A1],
            (_, TypeTag::B) => vec![Table::OspIndep, Table::B1],
            (_, TypeTag::C) => vec![Table::OspIndep, Table::C1, Table::Exceptional],
            (_, TypeTag::D) => vec![Table::OspIndep, Table::D1, Table::Exceptional],
            (_, TypeTag::A) => vec![Table::OspIndep],
        }
    }
}

/// Evaluation context for table rows.
struct Rows<'a> {
    m: &'a RepModel,
    d: &'a RootDatum,
    table: String,
    out: Vec<CheckRow>,
}

impl<'a> Rows<'a> {
    fn e(&self, i: usize, j: usize) -> RepElt {
        self.m.e(i, j)
    }
    fn k(&self, a: usize) -> RepElt {
        self.m.k(a)
    }
    fn br(&self, x: &RepElt, y: &RepElt) -> RepElt {
        x.zbracket(y, self.d)
    }
    fn zm(&self, x: &RepElt, y: &RepElt) -> RepElt {
        x.zmul(y)
    }
    fn pe(&self, i: usize) -> u32 {
        self.d.par(i) as u32
    }
    /// `|𝐞_ij|`.
    fn odd(&self, i: usize, j: usize) -> bool {
        self.d.par(i) != self.d.par(j)
    }
    fn sgn(&self, p: u32) -> QRat {
        QRat::from_int(sign(p) as i64)
    }

    fn eq(&mut self, row: String, lhs: RepElt, rhs: RepElt) {
        self.out.push(CheckRow::check(&self.table, row, lhs.m == rhs.m, || lhs.m.difference_witness(&rhs.m)));
    }

    fn zero(&mut self, row: String, x: RepElt) {
        let z = RepElt::new(Mat::new(self.d.n, 1, parity_arc(self.d)), x.weight, x.parity);
        self.eq(row, x, z);
    }

    fn guard(&mut self, row: String, reason: &str) {
        self.out.push(CheckRow::skipped(&self.table, row, format!("skipped(guard): {reason}")));
    }

    fn none(&mut self, row: &str, reason: &str) {
        self.out.push(CheckRow::skipped(&self.table, row, format!("no applicable indices: {reason}")));
    }

    /// `𝐞_{a,c} = sign · [[𝐞_ab, 𝐞_bc]]` with the composite sign of the tables.
    fn composite(&mut self, row: String, lhs: (usize, usize), x: (usize, usize), y: (usize, usize), sgn_p: u32) {
        let rhs = self.br(&self.e(x.0, x.1), &self.e(y.0, y.1)).scale(&self.sgn(sgn_p));
        let l = self.e(lhs.0, lhs.1);
        self.eq(row, l, rhs);
    }

    /// `𝐞_{ii'} = (−1)^{ī+(i+1)‾} x y − q^{−(ε_i,ε_i)−(ε_{i+1},ε_{i+1})} y x`.
    fn long_root(&mut self, row: String, i: usize, x: (usize, usize), y: (usize, usize)) {
        let d = self.d;
        let (ex, ey) = (self.e(x.0, x.1), self.e(y.0, y.1));
        let c = QRat::q_pow(-(d.eps_form(i, i) + d.eps_form(i + 1, i + 1)) as i64);
        let rhs = self
            .zm(&ex, &ey)
            .scale(&self.sgn(self.pe(i) + self.pe(i + 1)))
            .sub(&self.zm(&ey, &ex).scale(&c));
        let l = self.e(i, d.prime(i));
        self.eq(row, l, rhs);
    }

    /// `𝐞_{i,i+1} = −(−1)^{ī(ī+(i+1)‾)} ϑ_i ϑ_{i+1} 𝐞_{(i+1)'i'}` and its `s−1, s'` variant.
    fn mirror(&mut self, row: String, a: (usize, usize), b: (usize, usize), p: u32, th: i32) {
        let rhs = self.e(b.0, b.1).scale(&self.sgn(p + 1)).scale(&QRat::from_int(th as i64));
        let l = self.e(a.0, a.1);
        self.eq(row, l, rhs);
    }

    fn cartan_common(&mut self) {
        let n = self.d.n;
        for i in 1..=n {
            for j in 1..=n {
                let (a, b) = (self.k(i), self.k(j));
                let c = self.zm(&a, &b).sub(&self.zm(&b, &a));
                self.zero(format!("1[i={i},j={j}]"), c);
            }
        }
        for i in 1..=n {
            let id = RepElt::new(crate::rmatrix::identity(self.d, 1), crate::Weight::ZERO, 0);
            let (k, ki) = (self.k(i), self.m.k_inv(i));
            self.eq(format!("2+[i={i}]"), self.zm(&k, &ki), id.clone());
            self.eq(format!("2-[i={i}]"), self.zm(&ki, &k), id);
        }
        for i in 1..=n {
            for j in i + 1..=n {
                for a in 1..=n {
                    let lhs = self.zm(&self.zm(&self.k(a), &self.e(i, j)), &self.m.k_inv(a));
                    let c = QRat::q_pow(self.d.form(self.d.eps(a), self.d.eps(i) - self.d.eps(j)) as i64);
                    let rhs = self.e(i, j).scale(&c);
                    self.eq(format!("3[a={a},i={i},j={j}]"), lhs, rhs);
                }
            }
        }
    }

    fn odd_squares(&mut self, id: &str, pairs: impl Iterator<Item = (usize, usize)>, reason: &str) {
        let mut any = false;
        for (i, j) in pairs {
            any = true;
            let row = format!("{id}[i={i},j={j}]");
            if self.odd(i, j) {
                let e = self.e(i, j);
                self.zero(row, self.br(&e, &e));
            } else {
                self.guard(row, reason);
            }
        }
        if !any {
            self.none(id, "range empty");
        }
    }

    /// `[[𝐞_{i,i+1}, [[𝐞_{i,i+1}, 𝐞_{i+1,i+2}]]]]` style rows with explicit pairs.
    fn serre_left(&mut self, row: String, x: (usize, usize), y: (usize, usize)) {
        let (ex, ey) = (self.e(x.0, x.1), self.e(y.0, y.1));
        let v = self.br(&ex, &self.br(&ex, &ey));
        self.zero(row, v);
    }

    fn serre_right(&mut self, row: String, x: (usize, usize), y: (usize, usize)) {
        let (ex, ey) = (self.e(x.0, x.1), self.e(y.0, y.1));
        let v = self.br(&self.br(&ex, &ey), &ey);
        self.zero(row, v);
    }

    /// `[[[[[[x, y]], z]], y]]`.
    fn serre_four(&mut self, row: String, x: (usize, usize), y: (usize, usize), z: (usize, usize)) {
        let (ex, ey, ez) = (self.e(x.0, x.1), self.e(y.0, y.1), self.e(z.0, z.1));
        let v = self.br(&self.br(&self.br(&ex, &ey), &ez), &ey);
        self.zero(row, v);
    }

    fn commute(&mut self, row: String, x: (usize, usize), y: (usize, usize)) {
        let v = self.br(&self.e(x.0, x.1), &self.e(y.0, y.1));
        self.zero(row, v);
    }
}

/// Runs every row of one identity table on the model.
fn run_table(m: &RepModel, table: Table, label: &str) -> Vec<CheckRow> {
    let d = &*m.datum;
    let mut r = Rows {
        m,
        d,
        table: label.to_string(),
        out: Vec::new(),
    };
    let n = d.n;
    let s = d.s;
    let p = |i: usize| d.prime(i);
    let pe = |i: usize| d.par(i) as u32;
    let comp_sign = |i: usize, j: usize| (pe(i) + pe(j)) * (pe(j) + pe(j + 1));
    match table {
        Table::A1 => {
            r.cartan_common();
            let mut any = false;
            for i in 1..n {
                for j in i + 1..n {
                    any = true;
                    r.composite(format!("4[i={i},j={j}]"), (i, j + 1), (i, j), (j, j + 1), comp_sign(i, j));
                }
            }
            if !any {
                r.none("4", "needs N >= 3");
            }
            any = false;
            for i in 1..n {
                for j in i + 2..n {
                    any = true;
                    r.commute(format!("5[i={i},j={j}]"), (i, i + 1), (j, j + 1));
                }
            }
            if !any {
                r.none("5", "needs N >= 4");
            }
            r.odd_squares("6", (1..n).map(|i| (i, i + 1)), "|e_{i,i+1}| even");
            if n >= 3 {
                for i in 1..=n - 2 {
                    r.serre_left(format!("7[i={i}]"), (i, i + 1), (i + 1, i + 2));
                }
                for i in 2..n {
                    r.serre_right(format!("8[i={i}]"), (i - 1, i), (i, i + 1));
                }
            } else {
                r.none("7", "needs N >= 3");
                r.none("8", "needs N >= 3");
            }
            if n >= 4 {
                for i in 2..=n - 2 {
                    r.serre_four(format!("9[i={i}]"), (i - 1, i), (i, i + 1), (i + 1, i + 2));
                }
            } else {
                r.none("9", "needs N >= 4");
            }
            r.odd_squares("10", (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))), "|e_ij| even");
        }
        Table::OspIndep => {
            r.cartan_common();
            let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
            for (i, j) in pairs {
                let row = format!("4[i={i},j={j}]");
                let w = d.eps(i) - d.eps(j);
                if r.odd(i, j) && d.form(w, w) == 0 && !w.is_zero() {
                    let e = r.e(i, j);
                    r.zero(row, r.br(&e, &e));
                } else {
                    r.guard(row, "e_i - e_j not odd isotropic");
                }
            }
        }
        Table::B1 => {
            for i in 1..=s + 1 {
                for j in i + 1..=s + 1 {
                    let lhs = r.zm(&r.k(i), &r.k(p(i)));
                    let rhs = r.zm(&r.k(j), &r.k(p(j)));
                    r.eq(format!("1[i={i},j={j}]"), lhs, rhs);
                }
            }
            for i in 1..=s {
                let th = d.theta(i) * d.theta(i + 1);
                r.mirror(format!("2[i={i}]"), (i, i + 1), (p(i + 1), p(i)), pe(i) * (pe(i) + pe(i + 1)), th);
            }
            composite_ranges(&mut r, false);
            for i in 1..=s {
                r.long_root(format!("4[i={i}]"), i, (i, p(i + 1)), (p(i + 1), p(i)));
                r.long_root(format!("6[i={i}]"), i, (i, i + 1), (i + 1, p(i)));
            }
            let mut any = false;
            for i in 1..=s {
                for j in i + 2..=s {
                    any = true;
                    r.commute(format!("7[i={i},j={j}]"), (i, i + 1), (j, j + 1));
                }
            }
            if !any {
                r.none("7", "needs s >= 3");
            }
            r.odd_squares("8", (1..s).map(|i| (i, i + 1)), "|e_{i,i+1}| even");
            ranged(&mut r, "9", 1, s.saturating_sub(1), |r, i| {
                r.serre_left(format!("9[i={i}]"), (i, i + 1), (i + 1, i + 2))
            });
            ranged(&mut r, "10", 2, s.saturating_sub(1), |r, i| {
                r.serre_right(format!("10[i={i}]"), (i - 1, i), (i, i + 1))
            });
            if s >= 2 {
                let (a, b) = (r.e(s - 1, s), r.e(s, s + 1));
                let v = r.br(&r.br(&r.br(&a, &b), &b), &b);
                r.zero("11".into(), v);
            } else {
                r.none("11", "needs s >= 2");
            }
            ranged(&mut r, "12", 2, s.saturating_sub(1), |r, i| {
                r.serre_four(format!("12[i={i}]"), (i - 1, i), (i, i + 1), (i + 1, i + 2))
            });
        }
        Table::C1 => {
            for i in 1..=s {
                for j in i + 1..=s {
                    let lhs = r.zm(&r.k(i), &r.k(p(i)));
                    let rhs = r.zm(&r.k(j), &r.k(p(j)));
                    r.eq(format!("1[i={i},j={j}]"), lhs, rhs);
                }
            }
            ranged(&mut r, "2", 1, s - 1, |r, i| {
                let th = d.theta(i) * d.theta(i + 1);
                r.mirror(format!("2[i={i}]"), (i, i + 1), (p(i + 1), p(i)), pe(i) * (pe(i) + pe(i + 1)), th)
            });
            composite_ranges(&mut r, true);
            let one_q2 = &QRat::one() + &QRat::q_pow(2);
            ranged(&mut r, "4", 1, s - 1, |r, i| {
                let lhs = r.e(i, p(s)).scale(&one_q2);
                let rhs = r.br(&r.e(i, s), &r.e(s, p(s)));
                r.eq(format!("4[i={i}]"), lhs, rhs);
            });
            ranged(&mut r, "5", 1, s - 1, |r, i| {
                r.long_root(format!("5[i={i}]"), i, (i, p(i + 1)), (p(i + 1), p(i)))
            });
            ranged(&mut r, "7", 1, s - 1, |r, i| {
                let lhs = r.e(s, p(i)).scale(&one_q2);
                let rhs = r.br(&r.e(s, p(s)), &r.e(p(s), p(i)));
                r.eq(format!("7[i={i}]"), lhs, rhs);
            });
            ranged(&mut r, "8", 1, s - 1, |r, i| {
                r.long_root(format!("8[i={i}]"), i, (i, i + 1), (i + 1, p(i)))
            });
            let mut any = false;
            for i in 1..=s {
                for j in i + 2..=s {
                    any = true;
                    r.commute(format!("9[i={i},j={j}]"), (i, i + 1), (j, j + 1));
                }
            }
            if !any {
                r.none("9", "needs s >= 3");
            }
            r.odd_squares("10", (1..s).map(|i| (i, i + 1)), "|e_{i,i+1}| even");
            ranged(&mut r, "11", 1, s.saturating_sub(2), |r, i| {
                r.serre_left(format!("11[i={i}]"), (i, i + 1), (i + 1, i + 2))
            });
            ranged(&mut r, "12", 2, s, |r, i| {
                r.serre_right(format!("12[i={i}]"), (i - 1, i), (i, i + 1))
            });
            ranged(&mut r, "13", 2, s.saturating_sub(2), |r, i| {
                r.serre_four(format!("13[i={i}]"), (i - 1, i), (i, i + 1), (i + 1, i + 2))
            });
            if s >= 4 {
                let (a, b, c, e) = (r.e(s - 3, s - 2), r.e(s - 2, s - 1), r.e(s - 1, s), r.e(s, p(s)));
                let mut v = r.br(&r.br(&a, &b), &c);
                v = r.br(&r.br(&r.br(&r.br(&v, &e), &c), &b), &c);
                r.zero("14".into(), v);
            } else {
                r.none("14", "needs s >= 4");
            }
        }
        Table::D1 => {
            for i in 1..=s {
                for j in i + 1..=s {
                    let lhs = r.zm(&r.k(i), &r.k(p(i)));
                    let rhs = r.zm(&r.k(j), &r.k(p(j)));
                    r.eq(format!("1[i={i},j={j}]"), lhs, rhs);
                }
            }
            ranged(&mut r, "2", 1, s, |r, i| {
                let th = d.theta(i) * d.theta(i + 1);
                r.mirror(format!("2[i={i}]"), (i, i + 1), (p(i + 1), p(i)), pe(i) * (pe(i) + pe(i + 1)), th)
            });
            {
                let th = d.theta(s - 1) * d.theta(p(s));
                let pp = pe(s - 1) * (pe(s - 1) + pe(s));
                r.mirror("3".into(), (s - 1, p(s)), (s, p(s - 1)), pp, th);
            }
            composite_ranges(&mut r, true);
            let t = |i: usize, a: usize| (pe(i) + pe(a)) * (pe(s - 1) + pe(s));
            ranged(&mut r, "5", 1, s.saturating_sub(2), |r, i| {
                r.composite(format!("5[i={i}]"), (i, p(s)), (i, s - 1), (s - 1, p(s)), t(i, s - 1))
            });
            ranged(&mut r, "6", 1, s.saturating_sub(2), |r, i| {
                r.composite(format!("6[i={i}]"), (i, p(s - 1)), (i, s), (s, p(s - 1)), t(i, s))
            });
            ranged(&mut r, "7", 1, s - 1, |r, i| {
                r.long_root(format!("7[i={i}]"), i, (i, p(i + 1)), (p(i + 1), p(i)))
            });
            ranged(&mut r, "9", 1, s.saturating_sub(2), |r, i| {
                r.composite(format!("9[i={i}]"), (s, p(i)), (s, p(s - 1)), (p(s - 1), p(i)), t(i, s - 1))
            });
            ranged(&mut r, "10", 1, s.saturating_sub(2), |r, i| {
                r.composite(format!("10[i={i}]"), (s - 1, p(i)), (s - 1, p(s)), (p(s), p(i)), t(i, s))
            });
            ranged(&mut r, "11", 1, s - 1, |r, i| {
                r.long_root(format!("11[i={i}]"), i, (i, i + 1), (i + 1, p(i)))
            });
            let mut any = false;
            for i in 1..s {
                for j in i + 2..s {
                    any = true;
                    r.commute(format!("12[i={i},j={j}]"), (i, i + 1), (j, j + 1));
                }
            }
            if !any {
                r.none("12", "needs s >= 4");
            }
            ranged(&mut r, "13", 1, s.saturating_sub(3), |r, i| {
                r.commute(format!("13[i={i}]"), (i, i + 1), (s - 1, p(s)))
            });
            r.odd_squares("14", (1..s).map(|i| (i, i + 1)), "|e_{i,i+1}| even");
            r.odd_squares("15", std::iter::once((s - 1, p(s))), "|e_{s-1,s'}| even");
            ranged(&mut r, "16", 1, s.saturating_sub(2), |r, i| {
                r.serre_left(format!("16[i={i}]"), (i, i + 1), (i + 1, i + 2))
            });
            if s >= 3 {
                r.serre_left("17".into(), (s - 2, s - 1), (s - 1, p(s)));
            } else {
                r.none("17", "needs s >= 3");
            }
            ranged(&mut r, "18", 2, s - 1, |r, i| {
                r.serre_right(format!("18[i={i}]"), (i - 1, i), (i, i + 1))
            });
            if s >= 3 {
                r.serre_right("19".into(), (s - 2, s - 1), (s - 1, p(s)));
            } else {
                r.none("19", "needs s >= 3");
            }
            ranged(&mut r, "20", 2, s.saturating_sub(2), |r, i| {
                r.serre_four(format!("20[i={i}]"), (i - 1, i), (i, i + 1), (i + 1, i + 2))
            });
            if s >= 4 {
                r.serre_four("21".into(), (s - 3, s - 2), (s - 2, s - 1), (s - 1, p(s)));
            } else {
                r.none("21", "needs s >= 4");
            }
            let z = r.e(s, p(s));
            r.zero("vanishing[e_ss']".into(), z);
        }
        Table::Exceptional => match d.type_tag {
            TypeTag::C => {
                if s >= 2 {
                    let (a, e) = (r.e(s - 1, s), r.e(s, p(s)));
                    let v = r.br(&a, &r.br(&a, &r.br(&a, &e)));
                    r.zero("C15".into(), v);
                } else {
                    r.none("C15", "needs s >= 2");
                }
                if s >= 3 {
                    if r.odd(s - 2, s - 1) && r.odd(s - 1, s) {
                        let (a, b, e) = (r.e(s - 2, s - 1), r.e(s - 1, s), r.e(s, p(s)));
                        let ab = r.br(&a, &b);
                        let v = r.br(&r.br(&r.br(&ab, &e), &ab), &b);
                        r.zero("C16".into(), v);
                    } else {
                        r.guard("C16".into(), "needs |e_{s-2,s-1}| = |e_{s-1,s}| odd");
                    }
                } else {
                    r.none("C16", "needs s >= 3");
                }
            }
            TypeTag::D => {
                if r.odd(s - 1, s) {
                    r.guard("D22".into(), "|e_{s-1,s}| odd");
                } else {
                    r.commute("D22".into(), (s - 1, s), (s - 1, p(s)));
                }
                if s >= 3 {
                    let (a, b, c) = (r.e(s - 2, s - 1), r.e(s - 1, s), r.e(s - 1, p(s)));
                    let lhs = r.br(&r.br(&a, &b), &c);
                    let rhs = r.br(&r.br(&a, &c), &b);
                    r.eq("D23".into(), lhs, rhs);
                } else {
                    r.none("D23", "needs s >= 3");
                }
            }
            _ => r.none("exceptional", "only C and D types"),
        },
    }
    r.out
}

/// Rows `i..=hi` of a family, or one skipped row when the range is empty.
fn ranged(r: &mut Rows, id: &str, lo: usize, hi: usize, mut f: impl FnMut(&mut Rows, usize)) {
    if lo > hi {
        r.none(id, "range empty");
        return;
    }
    for i in lo..=hi {
        f(r, i);
    }
}

/// The two composite-root families `i < j < (i+1)'` (rows 3/5 in B, 3/6 in C, 4/8 in D).
fn composite_ranges(r: &mut Rows, skip_s: bool) {
    let d = r.d;
    let (s, n) = (d.s, d.n);
    let (first, second) = match d.type_tag {
        TypeTag::B => ("3", "5"),
        TypeTag::C => ("3", "6"),
        _ => ("4", "8"),
    };
    let pe = |i: usize| d.par(i) as u32;
    let p = |i: usize| d.prime(i);
    let mut any = false;
    for i in 1..n {
        for j in i + 1..p(i + 1) {
            if j + 1 > n || (skip_s && j == s) {
                continue;
            }
            any = true;
            let sg = (pe(i) + pe(j)) * (pe(j) + pe(j + 1));
            r.composite(format!("{first}[i={i},j={j}]"), (i, j + 1), (i, j), (j, j + 1), sg);
            r.composite(format!("{second}[i={i},j={j}]"), (p(j + 1), p(i)), (p(j + 1), p(j)), (p(j), p(i)), sg);
        }
    }
    if !any {
        r.none(first, "range empty");
        r.none(second, "range empty");
    }
}

/// Table rows on the `𝐞` side and, through `ω_R`, on the `𝐟` side.
pub fn table_check(m: &RepModel, table: Table) -> Vec<CheckRow> {
    let mut rows = run_table(m, table, table.name());
    let f_label = format!("{}:f", table.name());
    rows.extend(run_table(&m.omega(), table, &f_label));
    rows
}

/// The `gl` mixed Cartan relation
/// `(−1)^{...} [𝐞_{i,i+1}, 𝐟_{j+1,j}]^ζ = δ_ij (q^{𝐇_{i,i+1}} − q^{−𝐇_{i,i+1}})/(q − q⁻¹)`.
pub fn mixed_cartan_check(m: &RepModel) -> Vec<CheckRow> {
    let d = &*m.datum;
    let mut rows = Vec::new();
    if d.mode != Mode::Gl {
        rows.push(CheckRow::skipped("A-mixed", "all", "gl only"));
        return rows;
    }
    let n = d.n;
    for i in 1..n {
        for j in 1..n {
            let (e, f) = (m.e(i, i + 1), m.f(j + 1, j));
            let p = (d.par(i) ^ d.par(i + 1)) as u32 * (d.par(j) ^ d.par(j + 1)) as u32;
            // super commutator in the twisted product: xy − (−1)^{|x||y|} yx
            let c = QRat::from_int(sign(e.parity as u32 * f.parity as u32) as i64);
            let lhs = e.zmul(&f).sub(&f.zmul(&e).scale(&c)).scale(&QRat::from_int(sign(p) as i64));
            let mut rhs = RepElt::new(Mat::new(n, 1, parity_arc(d)), lhs.weight, lhs.parity);
            if i == j {
                let kk = m.k(i).mul(&m.k_inv(i + 1));
                let ki = m.k_inv(i).mul(&m.k(i + 1));
                let inv = QRat::q_minus_qinv().inv().expect("nonzero");
                rhs = kk.sub(&ki).scale(&inv);
                rhs.weight = lhs.weight;
            }
            rows.push(CheckRow::check("A-mixed", format!("[i={i},j={j}]"), lhs.m == rhs.m, || {
                lhs.m.difference_witness(&rhs.m)
            }));
        }
    }
    rows
}

/// All tables applicable to the datum.
pub fn all_tables(m: &RepModel) -> Vec<CheckRow> {
    Table::applicable(&m.datum).into_iter().flat_map(|t| table_check(m, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_pass;
    use crate::rmatrix::build_r;

    fn bundle(d: RootDatum) -> RMatrixBundle {
        build_r(&Arc::new(d)).unwrap()
    }

    fn w(s: &str) -> Word {
        crate::freealg::parse_word(s).unwrap()
    }

    #[test]
    fn gl11_diagonal_component() {
        let b = bundle(RootDatum::gl_str("01").unwrap());
        let rels = extract_rll(&b, SignPair::PlusPlus, Bicharacter::Standard).unwrap();
        let rel = &rels[&(1, 1, 2, 2)];
        assert_eq!(rel.len(), 2);
        let a = &rel[&w("lp1_1 lp2_2")];
        assert_eq!(&rel[&w("lp2_2 lp1_1")], &-a);
    }

    #[test]
    fn lower_triangle_is_structurally_absent() {
        let b = bundle(RootDatum::gl_str("01").unwrap());
        let rels = extract_rll(&b, SignPair::PlusPlus, Bicharacter::Standard).unwrap();
        // E21 ⊗ E21 only involves l⁺_21 = 0
        assert!(!rels.contains_key(&(2, 1, 2, 1)));
    }

    #[test]
    fn even_parity_twist_is_identity() {
        let b = bundle(RootDatum::gl_str("00").unwrap());
        for sp in SignPair::ALL {
            let s = extract_rll(&b, sp, Bicharacter::Standard).unwrap();
            let t = extract_rll(&b, sp, Bicharacter::Twisted).unwrap();
            assert_eq!(s, t);
        }
    }

    #[test]
    fn twist_and_cross_small() {
        for d in [RootDatum::gl_str("01").unwrap(), RootDatum::osp_str("101", None).unwrap()] {
            let b = bundle(d);
            assert!(all_pass(&twist_equivalence(&b).unwrap()));
            let al = Arc::new(Alphabet::new(b.datum.clone()));
            let sig = PairingSpec::sigma_r(&b, al);
            let row = cross_check(&b, &sig).unwrap();
            assert!(!row.is_fail(), "{row:?}");
        }
    }

    #[test]
    fn gl11_mixed_component_matches_cross_relation() {
        let b = bundle(RootDatum::gl_str("01").unwrap());
        let mixed = extract_rll(&b, SignPair::PlusMinus, Bicharacter::Standard).unwrap();
        let al = Arc::new(Alphabet::new(b.datum.clone()));
        let cross = cross_relations(&PairingSpec::sigma_r(&b, al)).unwrap();
        assert_eq!(mixed.get(&(1, 2, 2, 1)), cross.get(&(1, 2, 2, 1)));
        assert!(mixed.contains_key(&(1, 2, 2, 1)));
    }

    #[test]
    fn st_duality_with_gauge() {
        for d in [RootDatum::gl_str("011").unwrap(), RootDatum::osp_str("0110", None).unwrap()] {
            assert!(all_pass(&st_duality(&bundle(d)).unwrap()));
        }
    }

    #[test]
    fn model_and_omega_model_satisfy_rll() {
        for d in [RootDatum::gl_str("011").unwrap(), RootDatum::osp_str("101", None).unwrap()] {
            let b = bundle(d);
            let m = RepModel::new(&b).unwrap();
            assert!(all_pass(&rll_in_rep(&b, &m, "rep").unwrap()));
            assert!(all_pass(&rll_in_rep(&b, &m.omega(), "rep-omega").unwrap()));
        }
    }

    #[test]
    fn gl011_iterative_formula() {
        let b = bundle(RootDatum::gl_str("011").unwrap());
        let m = RepModel::new(&b).unwrap();
        let rows = table_check(&m, Table::A1);
        let r = rows.iter().find(|r| r.table == "A1" && r.row_id == "4[i=1,j=2]").unwrap();
        assert_eq!(r.status, crate::report::Status::Pass);
        assert!(all_pass(&rows));
    }

    #[test]
    fn gl11_cartan_inverse_rows() {
        let b = bundle(RootDatum::gl_str("01").unwrap());
        let m = RepModel::new(&b).unwrap();
        let rows = table_check(&m, Table::A1);
        assert!(rows.iter().any(|r| r.row_id == "2+[i=1]" && r.status == crate::report::Status::Pass));
        // no odd e_{i,i+1} guard is silently dropped
        assert!(rows.iter().any(|r| r.row_id.starts_with("9") && r.status == crate::report::Status::Skipped));
    }

    #[test]
    fn d_type_vanishing() {
        let b = bundle(RootDatum::osp_str("010010", None).unwrap());
        let m = RepModel::new(&b).unwrap();
        let rows = table_check(&m, Table::D1);
        let r = rows.iter().find(|r| r.row_id == "vanishing[e_ss']").unwrap();
        assert_eq!(r.status, crate::report::Status::Pass);
        assert!(m.e(3, 4).is_zero());
    }

    #[test]
    fn guards_are_reported() {
        let b = bundle(RootDatum::gl_str("00").unwrap());
        let m = RepModel::new(&b).unwrap();
        let rows = table_check(&m, Table::A1);
        assert!(rows.iter().any(|r| r.witness.as_deref().is_some_and(|w| w.starts_with("skipped(guard)"))));
    }

    #[test]
    fn mixed_cartan_gl() {
        let b = bundle(RootDatum::gl_str("0110").unwrap());
        let m = RepModel::new(&b).unwrap();
        assert!(all_pass(&mixed_cartan_check(&m)));
    }
}
