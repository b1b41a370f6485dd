//! Elements of the positive/negative halves of the quantized enveloping
//! algebra as coefficient maps over generator words, together with the
//! star and omega symmetries and the q-boson derivations f_i'.
//!
//! Words are non-canonical representatives modulo the q-Serre relations;
//! faithful coordinates are obtained downstream through the Drinfeld
//! pairing (see `pair`). Negative-half elements optionally carry a Cartan
//! dressing k^beta per term, kept in the normal order with the k-part
//! leftmost, using k^beta f_j = q^{-(beta, alpha_j)} f_j k^beta.

use crate::root::{RootDatum, RootVec};
use crate::scalar::{q_fact, Scalar};
use std::collections::BTreeMap;
use std::fmt;

/// A generator word: sequence of 0-based node indices.
pub type Word = Vec<usize>;

/// Element of U_q^+ as a finitely supported map word -> coefficient.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct EWordPoly {
    pub terms: BTreeMap<Word, Scalar>,
}

/// Element of U_q^{<=0}: finitely supported map (dressing, word) ->
/// coefficient, each term meaning k^beta * f_word.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FWordPoly {
    pub terms: BTreeMap<(RootVec, Word), Scalar>,
}

fn content(rank: usize, word: &[usize]) -> Option<RootVec> {
    let mut c = vec![0i64; rank];
    for &l in word {
        if l >= rank {
            return None;
        }
        c[l] += 1;
    }
    Some(c)
}

impl EWordPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), Scalar::one());
        EWordPoly { terms }
    }

    pub fn generator(i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![i], Scalar::one());
        EWordPoly { terms }
    }

    pub fn word(w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        EWordPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        EWordPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v.mul_ref(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Free-algebra product; descends to the Serre quotient.
    pub fn concat_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1.mul_ref(c2));
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::unit();
        for _ in 0..n {
            acc = acc.concat_mul(self);
        }
        acc
    }

    /// Divided power x^(r) = x^r / [r]_i!; the scaling lives in the
    /// coefficients. `d` is the symmetrizer of the relevant node.
    pub fn divided_power(&self, r: usize, d: i64) -> Self {
        self.pow(r)
            .scale(&q_fact(r as i64, d).inv().expect("[r]! nonzero"))
    }

    /// Common content of the supported words; None for 0, mixed weights,
    /// or out-of-range letters.
    pub fn weight(&self, rank: usize) -> Option<RootVec> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let w = content(rank, first)?;
        for other in it {
            if content(rank, other).as_ref() != Some(&w) {
                return None;
            }
        }
        Some(w)
    }

    /// Word reversal; an algebra anti-involution fixing the generators.
    pub fn star(&self) -> Self {
        EWordPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| {
                    let mut r = w.clone();
                    r.reverse();
                    (r, c.clone())
                })
                .collect(),
        }
    }

    /// Letter-wise relabeling e_i -> f_i (the Chevalley involution on the
    /// nilpotent halves); preserves order and coefficients.
    pub fn omega(&self) -> FWordPoly {
        FWordPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| ((vec![0i64; 0], w.clone()), c.clone()))
                .collect(),
        }
        .normalized_rank_hint()
    }

    /// The q-boson derivation f_i': f_i'(e_j) = delta_ij and
    /// f_i'(XY) = f_i'(X) Y + q_i^{-<h_i, wt X>} X f_i'(Y).
    pub fn qboson_fprime(&self, i: usize, datum: &RootDatum) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut prefix = vec![0i64; datum.rank()];
            for (p, &letter) in w.iter().enumerate() {
                if letter == i {
                    // q_i^{-<h_i, prefix>} = q^{-(alpha_i, prefix)}
                    let mut alpha = vec![0i64; datum.rank()];
                    alpha[i] = 1;
                    let tw = Scalar::q_pow(-datum.form_qq(&alpha, &prefix));
                    let mut rest = Vec::with_capacity(w.len() - 1);
                    rest.extend_from_slice(&w[..p]);
                    rest.extend_from_slice(&w[p + 1..]);
                    out.add_term(rest, c.mul_ref(&tw));
                }
                prefix[letter] += 1;
            }
        }
        out
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Vec::new())
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }
}

impl FWordPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((Vec::new(), Vec::new()), Scalar::one());
        FWordPoly { terms }
    }

    pub fn generator(i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((Vec::new(), vec![i]), Scalar::one());
        FWordPoly { terms }
    }

    /// k^beta as a dressed term.
    pub fn cartan(beta: RootVec) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((beta, Vec::new()), Scalar::one());
        FWordPoly { terms }
    }

    fn normalized_rank_hint(mut self) -> Self {
        // dressings of length 0 act as "no dressing"; normalize keys so that
        // undressed terms all use the empty vector
        let keys: Vec<_> = self.terms.keys().cloned().collect();
        for (beta, w) in keys {
            if !beta.is_empty() && beta.iter().all(|&c| c == 0) {
                let c = self.terms.remove(&(beta, w.clone())).unwrap();
                self.add_term(Vec::new(), w, c);
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, beta: RootVec, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let beta = if beta.iter().all(|&x| x == 0) {
            Vec::new()
        } else {
            beta
        };
        let entry = self.terms.entry((beta, w));
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((b, w), c) in &other.terms {
            out.add_term(b.clone(), w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FWordPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.mul_ref(c)))
                .collect(),
        }
    }

    /// Product with renormalization to the k-leftmost normal order:
    /// (k^b1 w1)(k^b2 w2) = q^{(b2, wt w1)} k^{b1+b2} w1 w2.
    pub fn mul(&self, other: &Self, datum: &RootDatum) -> Self {
        let rank = datum.rank();
        let mut out = Self::zero();
        for ((b1, w1), c1) in &self.terms {
            let wt1 = content(rank, w1).expect("letters within rank");
            for ((b2, w2), c2) in &other.terms {
                let mut beta = if b1.is_empty() { vec![0; rank] } else { b1.clone() };
                if !b2.is_empty() {
                    for (a, x) in beta.iter_mut().zip(b2) {
                        *a += x;
                    }
                }
                let tw = if b2.is_empty() {
                    Scalar::one()
                } else {
                    Scalar::q_pow(datum.form_qq(b2, &wt1))
                };
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(beta, w, c1.mul_ref(c2).mul_ref(&tw));
            }
        }
        out
    }

    pub fn pow(&self, n: usize, datum: &RootDatum) -> Self {
        let mut acc = Self::unit();
        for _ in 0..n {
            acc = acc.mul(self, datum);
        }
        acc
    }

    pub fn weight(&self, rank: usize) -> Option<RootVec> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let w = content(rank, &first.1)?;
        for other in it {
            if content(rank, &other.1).as_ref() != Some(&w) {
                return None;
            }
        }
        Some(w)
    }

    /// Inverse of omega on undressed polynomials; panics on dressed terms.
    pub fn omega_inv(&self) -> EWordPoly {
        EWordPoly {
            terms: self
                .terms
                .iter()
                .map(|((b, w), c)| {
                    assert!(
                        b.iter().all(|&x| x == 0),
                        "omega inverse requires an undressed polynomial"
                    );
                    (w.clone(), c.clone())
                })
                .collect(),
        }
    }

    /// Star on f-words: reverse each word; dressings must be trivial (star
    /// sends k^b to k^{-b}, which the PBW transport never needs).
    pub fn star(&self) -> Self {
        FWordPoly {
            terms: self
                .terms
                .iter()
                .map(|((b, w), c)| {
                    assert!(b.iter().all(|&x| x == 0), "star on dressed terms unsupported");
                    let mut r = w.clone();
                    r.reverse();
                    ((b.clone(), r), c.clone())
                })
                .collect(),
        }
    }

    /// Divided power for undressed single-node content.
    pub fn divided_power(&self, r: usize, d: i64, datum: &RootDatum) -> Self {
        self.pow(r, datum)
            .scale(&q_fact(r as i64, d).inv().expect("[r]! nonzero"))
    }
}

impl fmt::Display for EWordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("")
                };
                format!("{} {}", c, word)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for FWordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((b, w), c)| {
                let mut s = String::new();
                if !b.is_empty() && b.iter().any(|&x| x != 0) {
                    s.push_str(&format!(
                        "k^[{}]",
                        b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                    ));
                }
                if w.is_empty() && s.is_empty() {
                    s.push('1');
                } else {
                    for i in w {
                        s.push_str(&format!("f{}", i + 1));
                    }
                }
                format!("{} {}", c, s)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// JSON form: a list of {word, coeff, dress?} with 1-based generator indices
// and dressings in root coordinates.
#[derive(serde::Serialize, serde::Deserialize)]
struct TermDto {
    word: Vec<usize>,
    coeff: Scalar,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    dress: Option<Vec<i64>>,
}

impl serde::Serialize for EWordPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let dtos: Vec<TermDto> = self
            .terms
            .iter()
            .map(|(w, c)| TermDto {
                word: w.iter().map(|i| i + 1).collect(),
                coeff: c.clone(),
                dress: None,
            })
            .collect();
        dtos.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for EWordPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let dtos = Vec::<TermDto>::deserialize(d)?;
        let mut out = EWordPoly::zero();
        for t in dtos {
            if t.word.iter().any(|&i| i == 0) {
                return Err(serde::de::Error::custom("generator indices are 1-based"));
            }
            out.add_term(t.word.iter().map(|i| i - 1).collect(), t.coeff);
        }
        Ok(out)
    }
}

impl serde::Serialize for FWordPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let dtos: Vec<TermDto> = self
            .terms
            .iter()
            .map(|((b, w), c)| TermDto {
                word: w.iter().map(|i| i + 1).collect(),
                coeff: c.clone(),
                dress: if b.is_empty() { None } else { Some(b.clone()) },
            })
            .collect();
        dtos.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for FWordPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let dtos = Vec::<TermDto>::deserialize(d)?;
        let mut out = FWordPoly::zero();
        for t in dtos {
            if t.word.iter().any(|&i| i == 0) {
                return Err(serde::de::Error::custom("generator indices are 1-based"));
            }
            out.add_term(
                t.dress.unwrap_or_default(),
                t.word.iter().map(|i| i - 1).collect(),
                t.coeff,
            );
        }
        Ok(out)
    }
}

/// The q-Serre element sum_r (-1)^r e_i^(r) e_j e_i^(1-a_ij-r) for i != j.
pub fn serre_element_e(datum: &RootDatum, i: usize, j: usize) -> EWordPoly {
    assert_ne!(i, j);
    let top = (1 - datum.cartan(i, j)) as usize;
    let ei = EWordPoly::generator(i);
    let ej = EWordPoly::generator(j);
    let mut acc = EWordPoly::zero();
    for r in 0..=top {
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let t = ei
            .divided_power(r, datum.d(i))
            .concat_mul(&ej)
            .concat_mul(&ei.divided_power(top - r, datum.d(i)))
            .scale(&Scalar::from_int(sign));
        acc = acc.add(&t);
    }
    acc
}

/// f-side q-Serre element.
pub fn serre_element_f(datum: &RootDatum, i: usize, j: usize) -> FWordPoly {
    serre_element_e(datum, i, j).omega()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> RootDatum {
        RootDatum::from_label("A2").unwrap()
    }

    #[test]
    fn concat_mul_examples() {
        let e1 = EWordPoly::generator(0);
        let e2 = EWordPoly::generator(1);
        let p = e1.concat_mul(&e2);
        assert_eq!(p.terms.len(), 1);
        assert!(p.terms[&vec![0usize, 1]].is_one());
        // (e2 e1 - q e1 e2) e2
        let x = e2
            .concat_mul(&e1)
            .sub(&e1.concat_mul(&e2).scale(&Scalar::q_pow(1)));
        let y = x.concat_mul(&e2);
        assert_eq!(y.terms.len(), 2);
        assert!(y.terms[&vec![1usize, 0, 1]].is_one());
        assert_eq!(y.terms[&vec![0usize, 1, 1]], Scalar::monomial(-1, 1));
        // unit
        assert_eq!(x.concat_mul(&EWordPoly::unit()), x);
    }

    #[test]
    fn star_and_omega() {
        let e1 = EWordPoly::generator(0);
        let e2 = EWordPoly::generator(1);
        let x = e2
            .concat_mul(&e1)
            .sub(&e1.concat_mul(&e2).scale(&Scalar::q_pow(1)));
        let s = x.star();
        // star(e2e1 - q e1e2) = e1e2 - q e2e1
        assert!(s.terms[&vec![0usize, 1]].is_one());
        assert_eq!(s.terms[&vec![1usize, 0]], Scalar::monomial(-1, 1));
        assert_eq!(s.star(), x);
        // omega relabels letters
        let o = x.omega();
        assert!(o.terms[&(vec![], vec![1usize, 0])].is_one());
        assert_eq!(o.omega_inv(), x);
        // star and omega commute
        assert_eq!(x.star().omega(), x.omega().star());
    }

    #[test]
    fn fprime_examples() {
        let d = a2();
        let e1 = EWordPoly::generator(0);
        let e2 = EWordPoly::generator(1);
        assert!(e2.qboson_fprime(0, &d).is_zero());
        assert!(e1.qboson_fprime(0, &d).constant_term().is_one());
        // f_1'(e1 e1) = (1 + q^-2) e1
        let sq = e1.concat_mul(&e1);
        let der = sq.qboson_fprime(0, &d);
        let expect = Scalar::one().add_ref(&Scalar::q_pow(-2));
        assert_eq!(der.terms[&vec![0usize]], expect);
    }

    #[test]
    fn fprime_operator_identity() {
        // f_i' e_j = q_i^{-a_ij} e_j f_i' + delta_ij on random homogeneous words
        let d = a2();
        let words: Vec<Word> = vec![
            vec![0, 1],
            vec![1, 0],
            vec![0, 0, 1],
            vec![0, 1, 0, 1],
            vec![1, 1, 0],
        ];
        for w in words {
            let x = EWordPoly::word(w, Scalar::one());
            for i in 0..2 {
                for j in 0..2 {
                    let lhs = EWordPoly::generator(j)
                        .concat_mul(&x)
                        .qboson_fprime(i, &d);
                    let mut rhs = EWordPoly::generator(j)
                        .concat_mul(&x.qboson_fprime(i, &d))
                        .scale(&Scalar::q_pow(-d.d(i) * d.cartan(i, j)));
                    if i == j {
                        rhs = rhs.add(&x);
                    }
                    assert_eq!(lhs, rhs, "i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn dressed_normal_order() {
        let d = a2();
        // k^a1 f_1 * f_2 = k^a1 f_1 f_2 (no twist on undressed right factor)
        let k_f1 = FWordPoly::cartan(vec![1, 0]).mul(&FWordPoly::generator(0), &d);
        let f2 = FWordPoly::generator(1);
        let p = k_f1.mul(&f2, &d);
        assert!(p.terms[&(vec![1, 0], vec![0usize, 1])].is_one());
        // f_1 * k^a1 f_2: twist q^{(a1, a1)} = q^2 moving k^a1 past f_1
        let f1 = FWordPoly::generator(0);
        let k_f2 = FWordPoly::cartan(vec![1, 0]).mul(&FWordPoly::generator(1), &d);
        let p = f1.mul(&k_f2, &d);
        assert_eq!(p.terms[&(vec![1, 0], vec![0usize, 1])], Scalar::q_pow(2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn star_antihom(w1 in prop::collection::vec(0usize..2, 0..4),
                        w2 in prop::collection::vec(0usize..2, 0..4)) {
            let x = EWordPoly::word(w1, Scalar::q_pow(1));
            let y = EWordPoly::word(w2, Scalar::one().add_ref(&Scalar::q_pow(-1)));
            let lhs = x.concat_mul(&y).star();
            let rhs = y.star().concat_mul(&x.star());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn star_involutive(w in prop::collection::vec(0usize..3, 0..6)) {
            let x = EWordPoly::word(w, Scalar::q_pow(-2));
            prop_assert_eq!(x.star().star(), x);
        }
    }
}
