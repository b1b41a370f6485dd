//! Truncated R-matrices on tensor products of modules and verification of
//! the RTT relations for the quantized coordinate ring.
//!
//! The quasi R-matrix is assembled from the PBW root vectors along a reduced
//! word: a product of q-exponentials exp_{q_i}((q_i - q_i^-1) E_k (x) F_k)
//! taken with ascending position outermost, under the diagonal prefactor
//! q^{(wt ., wt .)}. Each exponential truncates by nilpotency on finite
//! modules, so the element is never needed abstractly. The constant
//! R-matrix swaps the two legs of every factor (the component-exchange of
//! the universal element) and then intertwines the coproduct with its
//! opposite: R Delta(X) = Delta'(X) R.
//!
//! The weight pairing (wt, wt) is rational on the weight lattice, so
//! matrices are stored with the overall power q^{(lambda, mu)} split off
//! into `log_prefactor`; all stored entries are honest elements of Q(q).

use crate::linalg::Mat;
use crate::repmod::{mco_eval, AlgebraContext, FinModule, McoFactor, ModuleError};
use crate::report::{CheckResult, Report};
use crate::root::RootVec;
use crate::scalar::{q_fact, q_minus_qinv, Scalar};
use num_rational::BigRational;

/// An R-matrix on V (x) W with the fractional part of the weight prefactor
/// carried as metadata: the true operator is q^{log_prefactor} * matrix.
#[derive(Clone, Debug)]
pub struct RMatrixOp {
    pub dim_v: usize,
    pub dim_w: usize,
    pub matrix: Mat,
    pub log_prefactor: BigRational,
}

impl serde::Serialize for RMatrixOp {
    /// Sparse dump: nonzero entries as (row, col, coeff) triplets over the
    /// product basis (a, b) -> a * dim_w + b, with the fractional prefactor
    /// exponent carried as a rational string.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
        for i in 0..self.matrix.rows {
            for j in 0..self.matrix.cols {
                if !self.matrix.data[i][j].is_zero() {
                    entries.push((i, j, self.matrix.data[i][j].clone()));
                }
            }
        }
        let mut st = s.serialize_struct("RMatrixOp", 4)?;
        st.serialize_field("dim_v", &self.dim_v)?;
        st.serialize_field("dim_w", &self.dim_w)?;
        st.serialize_field("log_prefactor", &self.log_prefactor.to_string())?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ra, ca) = (a.rows, a.cols);
    let (rb, cb) = (b.rows, b.cols);
    let mut out = Mat::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            if a.data[i][j].is_zero() {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    if b.data[k][l].is_zero() {
                        continue;
                    }
                    out.data[i * rb + k][j * cb + l] = a.data[i][j].mul_ref(&b.data[k][l]);
                }
            }
        }
    }
    out
}

fn gen_matrix_e(m: &FinModule, i: usize) -> Mat {
    let dim = m.dim();
    let mut out = Mat::zeros(dim, dim);
    for j in 0..dim {
        for (r, c) in &m.e_mats[i].cols[j] {
            out.data[*r][j] = c.clone();
        }
    }
    out
}

fn gen_matrix_f(m: &FinModule, i: usize) -> Mat {
    let dim = m.dim();
    let mut out = Mat::zeros(dim, dim);
    for j in 0..dim {
        for (r, c) in &m.f_mats[i].cols[j] {
            out.data[*r][j] = c.clone();
        }
    }
    out
}

fn k_matrix(m: &FinModule, i: usize, pow: i64) -> Mat {
    let dim = m.dim();
    let d = m.datum.d(i);
    let mut out = Mat::zeros(dim, dim);
    for j in 0..dim {
        out.data[j][j] = Scalar::q_pow(d * pow * m.weights[j].pairing_h(i));
    }
    out
}

fn word_poly_matrix_e(m: &FinModule, x: &crate::word::EWordPoly) -> Mat {
    let dim = m.dim();
    let mut out = Mat::zeros(dim, dim);
    for j in 0..dim {
        let col = m.apply_eword_poly(x, &m.basis_vector(j));
        for (r, c) in col.into_iter().enumerate() {
            out.data[r][j] = c;
        }
    }
    out
}

fn word_poly_matrix_f(m: &FinModule, x: &crate::word::FWordPoly) -> Mat {
    let dim = m.dim();
    let mut out = Mat::zeros(dim, dim);
    for j in 0..dim {
        let col = m.apply_fword_poly(x, &m.basis_vector(j));
        for (r, c) in col.into_iter().enumerate() {
            out.data[r][j] = c;
        }
    }
    out
}

fn mat_add(a: &Mat, b: &Mat) -> Mat {
    let mut out = a.clone();
    for i in 0..a.rows {
        for j in 0..a.cols {
            out.data[i][j] = out.data[i][j].add_ref(&b.data[i][j]);
        }
    }
    out
}

fn mat_scale(a: &Mat, c: &Scalar) -> Mat {
    let mut out = a.clone();
    for row in out.data.iter_mut() {
        for x in row.iter_mut() {
            *x = x.mul_ref(c);
        }
    }
    out
}

fn mat_eq(a: &Mat, b: &Mat) -> Option<(usize, usize)> {
    for i in 0..a.rows {
        for j in 0..a.cols {
            if a.data[i][j] != b.data[i][j] {
                return Some((i, j));
            }
        }
    }
    None
}

fn identity_like(dim: usize) -> Mat {
    Mat::identity(dim)
}

/// exp_{q^d}(arg) as a matrix; terminates by nilpotency.
fn q_exp_matrix(arg: &Mat, d: i64) -> Mat {
    let dim = arg.rows;
    let mut acc = identity_like(dim);
    let mut pow = identity_like(dim);
    let mut k: i64 = 0;
    loop {
        k += 1;
        pow = arg.mul(&pow);
        if pow
            .data
            .iter()
            .all(|row| row.iter().all(|c| c.is_zero()))
        {
            break;
        }
        let c = Scalar::q_pow(d * k * (k - 1) / 2)
            .div_ref(&q_fact(k, d))
            .unwrap();
        acc = mat_add(&acc, &mat_scale(&pow, &c));
    }
    acc
}

/// Diagonal prefactor with entries q^{(wt_a, wt_b) - base}; the base is the
/// pairing of the highest weights, so all stored exponents are integers.
fn weight_prefactor(v: &FinModule, w: &FinModule) -> (Mat, BigRational) {
    let datum = &v.datum;
    let base = datum.form_pp(v.highest_weight(), w.highest_weight());
    let dim = v.dim() * w.dim();
    let mut out = Mat::zeros(dim, dim);
    for a in 0..v.dim() {
        for b in 0..w.dim() {
            let e = datum.form_pp(&v.weights[a], &w.weights[b]) - &base;
            assert!(e.is_integer(), "prefactor exponent integral after base shift");
            let ei = i64::try_from(&e.to_integer()).unwrap();
            out.data[a * w.dim() + b][a * w.dim() + b] = Scalar::q_pow(ei);
        }
    }
    (out, base)
}

/// The image of the universal element on V (x) W along the given reduced
/// word: q^{(wt,wt)} R~_N ... R~_1 with
/// R~_k = exp_{q_{i_k}}((q_{i_k} - q_{i_k}^-1) e''_k (x) f''_k).
pub fn quasi_r_op(
    ctx: &AlgebraContext,
    word: &[usize],
    v: &FinModule,
    w: &FinModule,
) -> Result<RMatrixOp, ModuleError> {
    let datum = &ctx.datum;
    let n = word.len();
    let dim = v.dim() * w.dim();
    let mut acc = identity_like(dim);
    // rightmost factor R~_1 multiplies last in q^.. R~_N ... R~_1, so build
    // the product from k = N downward applying on the left
    for k in 1..=n {
        let d = datum.d(word[k - 1]);
        let ek = word_poly_matrix_e(v, &ctx.braid_root_vector_e(word, k)?);
        let fk = word_poly_matrix_f(w, &ctx.braid_root_vector_f(word, k)?);
        let arg = mat_scale(&kron(&ek, &fk), &q_minus_qinv(d));
        let factor = q_exp_matrix(&arg, d);
        acc = acc.mul(&factor);
    }
    let (pref, base) = weight_prefactor(v, w);
    Ok(RMatrixOp {
        dim_v: v.dim(),
        dim_w: w.dim(),
        matrix: pref.mul(&acc),
        log_prefactor: base,
    })
}

/// The constant R-matrix on V (x) W: the component exchange applied to the
/// universal element, i.e. every factor has its legs swapped to
/// exp((q - q^-1) f''_k (x) e''_k), normalized so that the lowest-weight
/// rows carry exactly q^{(w0 lambda, nu)}.
pub fn constant_r(
    ctx: &AlgebraContext,
    v: &FinModule,
    w: &FinModule,
    word: &[usize],
) -> Result<RMatrixOp, ModuleError> {
    let datum = &ctx.datum;
    let n = word.len();
    let dim = v.dim() * w.dim();
    let mut acc = identity_like(dim);
    for k in 1..=n {
        let d = datum.d(word[k - 1]);
        let fk = word_poly_matrix_f(v, &ctx.braid_root_vector_f(word, k)?);
        let ek = word_poly_matrix_e(w, &ctx.braid_root_vector_e(word, k)?);
        let arg = mat_scale(&kron(&fk, &ek), &q_minus_qinv(d));
        let factor = q_exp_matrix(&arg, d);
        acc = acc.mul(&factor);
    }
    let (pref, base) = weight_prefactor(v, w);
    Ok(RMatrixOp {
        dim_v: v.dim(),
        dim_w: w.dim(),
        matrix: pref.mul(&acc),
        log_prefactor: base,
    })
}

/// Residual of the intertwining property R Delta(X) = Delta'(X) R on the
/// generators; None when it holds exactly.
pub fn intertwining_residual(v: &FinModule, w: &FinModule, r: &RMatrixOp) -> Option<String> {
    let datum = &v.datum;
    for i in 0..datum.rank() {
        let (ev, fv) = (gen_matrix_e(v, i), gen_matrix_f(v, i));
        let (ew, fw) = (gen_matrix_e(w, i), gen_matrix_f(w, i));
        let (kv, kw) = (k_matrix(v, i, 1), k_matrix(w, i, 1));
        let (kvi, kwi) = (k_matrix(v, i, -1), k_matrix(w, i, -1));
        let idv = identity_like(v.dim());
        let idw = identity_like(w.dim());
        // Delta(e) = e@1 + k@e, Delta'(e) = 1@e + e@k
        let de = mat_add(&kron(&ev, &idw), &kron(&kv, &ew));
        let dep = mat_add(&kron(&idv, &ew), &kron(&ev, &kw));
        if let Some((a, b)) = mat_eq(&r.matrix.mul(&de), &dep.mul(&r.matrix)) {
            return Some(format!("e_{} intertwining fails at ({a},{b})", i + 1));
        }
        // Delta(f) = f@k^-1 + 1@f, Delta'(f) = k^-1@f + f@1
        let df = mat_add(&kron(&fv, &kwi), &kron(&idv, &fw));
        let dfp = mat_add(&kron(&kvi, &fw), &kron(&fv, &idw));
        if let Some((a, b)) = mat_eq(&r.matrix.mul(&df), &dfp.mul(&r.matrix)) {
            return Some(format!("f_{} intertwining fails at ({a},{b})", i + 1));
        }
    }
    None
}

/// One triangular monomial for functional evaluation.
#[derive(Clone, Debug)]
pub struct Monomial {
    pub fword: Vec<usize>,
    pub beta: RootVec,
    pub eword: Vec<usize>,
}

/// All triangular monomials with f- and e-word heights up to the bound and
/// Cartan part in {0, +-alpha_i}.
pub fn triangular_monomials(rank: usize, bound: usize) -> Vec<Monomial> {
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut by_len = vec![vec![Vec::new()]];
    for _ in 1..=bound {
        let prev: &Vec<Vec<usize>> = by_len.last().unwrap();
        let mut next = Vec::new();
        for w in prev {
            for j in 0..rank {
                let mut nw = w.clone();
                nw.push(j);
                next.push(nw);
            }
        }
        words.extend(next.iter().cloned());
        by_len.push(next);
    }
    let mut betas: Vec<RootVec> = vec![vec![0; rank]];
    for i in 0..rank {
        let mut b = vec![0i64; rank];
        b[i] = 1;
        betas.push(b.clone());
        betas.push(b.iter().map(|x| -x).collect());
    }
    let mut out = Vec::new();
    for f in &words {
        for e in &words {
            for b in &betas {
                out.push(Monomial {
                    fword: f.clone(),
                    beta: b.clone(),
                    eword: e.clone(),
                });
            }
        }
    }
    out
}

/// Matrix of the monomial F k^beta E acting on one module.
fn monomial_matrix(m: &FinModule, fword: &[usize], beta: &[i64], eword: &[usize]) -> Mat {
    let dim = m.dim();
    let mut cols: Vec<Vec<Scalar>> = (0..dim).map(|j| m.basis_vector(j)).collect();
    for &j in eword.iter().rev() {
        cols = cols.iter().map(|v| m.apply_e(j, v)).collect();
    }
    cols = cols.iter().map(|v| m.apply_k_beta(beta, v)).collect();
    for &j in fword.iter().rev() {
        cols = cols.iter().map(|v| m.apply_f(j, v)).collect();
    }
    let mut out = Mat::zeros(dim, dim);
    for (j, col) in cols.into_iter().enumerate() {
        for (r, c) in col.into_iter().enumerate() {
            out.data[r][j] = c;
        }
    }
    out
}

/// Matrix of pair-functional evaluations: entry ((m,p),(k,l)) is the value
/// of Phi(v_m (x) u_k over A) * Phi(v_p (x) u_l over B) at the monomial,
/// assembled per two-leg coproduct split as a Kronecker sum (the same split
/// conventions as `mco_eval`, which pins them against an expansion oracle).
fn pair_functional_matrix(a: &FinModule, b: &FinModule, mono: &Monomial) -> Mat {
    let datum = &a.datum;
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    let (lf, le) = (mono.fword.len(), mono.eword.len());
    let alpha_of = |j: usize| -> RootVec {
        let mut al = vec![0i64; datum.rank()];
        al[j] = 1;
        al
    };
    let mut out = Mat::zeros(dim, dim);
    for fmask in 0..(1u32 << lf) {
        for emask in 0..(1u32 << le) {
            let mut f1: Vec<usize> = Vec::new();
            let mut f2: Vec<usize> = Vec::new();
            let mut twist = 0i64;
            for p in 0..lf {
                if fmask & (1 << p) != 0 {
                    f1.push(mono.fword[p]);
                    for mpos in p + 1..lf {
                        if fmask & (1 << mpos) == 0 {
                            twist += datum
                                .form_qq(&alpha_of(mono.fword[p]), &alpha_of(mono.fword[mpos]));
                        }
                    }
                } else {
                    f2.push(mono.fword[p]);
                }
            }
            let mut e1: Vec<usize> = Vec::new();
            let mut e2: Vec<usize> = Vec::new();
            for mpos in 0..le {
                if emask & (1 << mpos) != 0 {
                    e2.push(mono.eword[mpos]);
                    for p in 0..mpos {
                        if emask & (1 << p) == 0 {
                            twist -= datum
                                .form_qq(&alpha_of(mono.eword[mpos]), &alpha_of(mono.eword[p]));
                        }
                    }
                } else {
                    e1.push(mono.eword[mpos]);
                }
            }
            let mut beta1 = mono.beta.clone();
            for &j in &e2 {
                beta1[j] += 1;
            }
            let mut beta2 = mono.beta.clone();
            for &j in &f1 {
                beta2[j] -= 1;
            }
            let m1 = monomial_matrix(a, &f1, &beta1, &e1);
            let m2 = monomial_matrix(b, &f2, &beta2, &e2);
            let term = mat_scale(&kron(&m1, &m2), &Scalar::q_pow(twist));
            out = mat_add(&out, &term);
        }
    }
    out
}

/// Verify the RTT relations for V(lambda) and V(mu) as functional identities
/// on all triangular monomials up to the height bound.
pub fn rtt_report(
    ctx: &AlgebraContext,
    lambda: &crate::root::Weight,
    mu: &crate::root::Weight,
    bound: usize,
) -> Result<Report, ModuleError> {
    let mut report = Report::new();
    let v = ctx.highest_weight_module(lambda)?;
    let w = ctx.highest_weight_module(mu)?;
    let word = ctx.datum.some_reduced_w0();
    let r = constant_r(ctx, &v, &w, &word)?;
    // intertwining is a defining check once R is built
    match intertwining_residual(&v, &w, &r) {
        None => report.push(CheckResult::pass(format!(
            "R Delta = Delta' R on V{:?} x V{:?}",
            lambda.0, mu.0
        ))),
        Some(wit) => report.push(CheckResult::fail(
            format!("R Delta = Delta' R on V{:?} x V{:?}", lambda.0, mu.0),
            wit,
        )),
    }
    let (dv, dw) = (v.dim(), w.dim());
    let dim = dv * dw;
    let mut worst: Option<String> = None;
    for mono in triangular_monomials(ctx.datum.rank(), bound) {
        let p_vw = pair_functional_matrix(&v, &w, &mono);
        let p_wv = pair_functional_matrix(&w, &v, &mono);
        // lhs(s,t;k,l) = sum_{m,p} R_{(s,t),(m,p)} P_vw[(m,p),(k,l)]
        let lhs = r.matrix.mul(&p_vw);
        // rhs(s,t;k,l) = sum_{m,p} P_wv[(t,s),(p,m)] R_{(m,p),(k,l)}
        let mut ptilde = Mat::zeros(dim, dim);
        for s in 0..dv {
            for t in 0..dw {
                for m in 0..dv {
                    for p in 0..dw {
                        ptilde.data[s * dw + t][m * dw + p] =
                            p_wv.data[t * dv + s][p * dv + m].clone();
                    }
                }
            }
        }
        let rhs = ptilde.mul(&r.matrix);
        if let Some((a, b)) = mat_eq(&lhs, &rhs) {
            worst = Some(format!(
                "monomial f{:?} k^{:?} e{:?} entry ({a},{b})",
                mono.fword, mono.beta, mono.eword
            ));
            break;
        }
    }
    report.push(CheckResult::from_witness(
        format!(
            "RTT relations for V{:?} x V{:?} on monomials of height <= {bound}",
            lambda.0, mu.0
        ),
        worst,
    ));
    Ok(report)
}

/// Verify the seven defining relations of the rank-one quantized coordinate
/// ring as functional identities (the lambda = mu = fundamental RTT content
/// in rank one).
pub fn rank_one_ring_relations(ctx: &AlgebraContext, bound: usize) -> Result<Report, ModuleError> {
    assert_eq!(ctx.datum.rank(), 1);
    let v = ctx.highest_weight_module(&crate::root::Weight(vec![1]))?;
    let eval_pair = |a: usize, b: usize, c: usize, d: usize, mono: &Monomial| -> Scalar {
        mco_eval(
            &[
                McoFactor {
                    row: v.basis_vector(a),
                    col: v.basis_vector(b),
                    module: &v,
                },
                McoFactor {
                    row: v.basis_vector(c),
                    col: v.basis_vector(d),
                    module: &v,
                },
            ],
            &mono.fword,
            &mono.beta,
            &mono.eword,
        )
    };
    let eval_unit = |mono: &Monomial| -> Scalar {
        // counit: nonzero only on pure Cartan monomials
        if mono.fword.is_empty() && mono.eword.is_empty() {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    };
    // each relation: sum of (coeff, first pair, second pair) plus a unit part
    struct Rel {
        name: &'static str,
        terms: Vec<(Scalar, (usize, usize), (usize, usize))>,
        unit: Scalar,
    }
    let q = Scalar::q_pow(1);
    let rels = vec![
        Rel {
            name: "t11 t21 = q t21 t11",
            terms: vec![
                (Scalar::one(), (0, 0), (1, 0)),
                (q.neg_ref(), (1, 0), (0, 0)),
            ],
            unit: Scalar::zero(),
        },
        Rel {
            name: "t12 t22 = q t22 t12",
            terms: vec![
                (Scalar::one(), (0, 1), (1, 1)),
                (q.neg_ref(), (1, 1), (0, 1)),
            ],
            unit: Scalar::zero(),
        },
        Rel {
            name: "t11 t12 = q t12 t11",
            terms: vec![
                (Scalar::one(), (0, 0), (0, 1)),
                (q.neg_ref(), (0, 1), (0, 0)),
            ],
            unit: Scalar::zero(),
        },
        Rel {
            name: "t21 t22 = q t22 t21",
            terms: vec![
                (Scalar::one(), (1, 0), (1, 1)),
                (q.neg_ref(), (1, 1), (1, 0)),
            ],
            unit: Scalar::zero(),
        },
        Rel {
            name: "[t12, t21] = 0",
            terms: vec![
                (Scalar::one(), (0, 1), (1, 0)),
                (Scalar::from_int(-1), (1, 0), (0, 1)),
            ],
            unit: Scalar::zero(),
        },
        Rel {
            name: "[t11, t22] = (q - q^-1) t21 t12",
            terms: vec![
                (Scalar::one(), (0, 0), (1, 1)),
                (Scalar::from_int(-1), (1, 1), (0, 0)),
                (q_minus_qinv(1).neg_ref(), (1, 0), (0, 1)),
            ],
            unit: Scalar::zero(),
        },
        Rel {
            name: "t11 t22 - q t12 t21 = 1",
            terms: vec![
                (Scalar::one(), (0, 0), (1, 1)),
                (q.neg_ref(), (0, 1), (1, 0)),
            ],
            unit: Scalar::from_int(-1),
        },
    ];
    let monos = triangular_monomials(1, bound);
    let mut report = Report::new();
    for rel in rels {
        let mut witness = None;
        for mono in &monos {
            let mut acc = eval_unit(mono).mul_ref(&rel.unit);
            for (c, (a, b), (cc, dd)) in &rel.terms {
                acc += &eval_pair(*a, *b, *cc, *dd, mono).mul_ref(c);
            }
            if !acc.is_zero() {
                witness = Some(format!(
                    "monomial f^{} k^{:?} e^{} gives {}",
                    mono.fword.len(),
                    mono.beta,
                    mono.eword.len(),
                    acc
                ));
                break;
            }
        }
        report.push(CheckResult::from_witness(rel.name, witness));
    }
    Ok(report)
}

/// Check the lowest-row normalization of the constant R-matrix: rows from
/// the lowest-weight vector of the first module are diagonal with entries
/// q^{(w0 lambda, nu)}, the fractional part living in the metadata.
pub fn lowest_row_normalization(
    v: &FinModule,
    w: &FinModule,
    r: &RMatrixOp,
    lowest_index: usize,
) -> Option<String> {
    let datum = &v.datum;
    let w0lam = datum.apply_word(&datum.some_reduced_w0(), v.highest_weight());
    for l in 0..w.dim() {
        let col = lowest_index * w.dim() + l;
        let expect_exp =
            datum.form_pp(&w0lam, &w.weights[l]) - &r.log_prefactor;
        if !expect_exp.is_integer() {
            return Some(format!("column {col}: fractional exponent remains"));
        }
        let want = Scalar::q_pow(i64::try_from(&expect_exp.to_integer()).unwrap());
        for row in 0..r.matrix.rows {
            let got = &r.matrix.data[row][col];
            let expect = if row == col { want.clone() } else { Scalar::zero() };
            if got != &expect {
                return Some(format!("entry ({row},{col}): {got} vs {expect}"));
            }
        }
    }
    None
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::root::Weight;

    fn ctx(label: &str) -> AlgebraContext {
        AlgebraContext::for_label(label).unwrap()
    }

    #[test]
    fn rank_one_quasi_r() {
        // on V(1) x V(1) the nilpotent part is 1 + (q - q^-1) e (x) f
        let c = ctx("A1");
        let v = c.highest_weight_module(&Weight(vec![1])).unwrap();
        let r = quasi_r_op(&c, &[0], &v, &v).unwrap();
        // strip the diagonal prefactor: entries over basis (a,b)
        // u0(x)u0 -> (w,w)-(w,w) = 0; acting with e(x)f on u0(x)u1 ...
        // check the matrix against the hand-built form
        let (pref, base) = weight_prefactor(&v, &v);
        assert_eq!(base, r.log_prefactor);
        let e = gen_matrix_e(&v, 0);
        let f = gen_matrix_f(&v, 0);
        let theta = mat_add(
            &identity_like(4),
            &mat_scale(&kron(&e, &f), &q_minus_qinv(1)),
        );
        let expect = pref.mul(&theta);
        assert!(mat_eq(&r.matrix, &expect).is_none());
        // highest (x) highest eigenvalue: stored entry 1, metadata (w, w)
        assert!(r.matrix.data[0][0].is_one());
        assert_eq!(
            r.log_prefactor,
            BigRational::new(num_bigint::BigInt::from(1), num_bigint::BigInt::from(2))
        );
    }

    #[test]
    fn quasi_r_word_independent() {
        let c = ctx("A2");
        let v = c.highest_weight_module(&Weight(vec![1, 0])).unwrap();
        let w = c.highest_weight_module(&Weight(vec![0, 1])).unwrap();
        let r1 = quasi_r_op(&c, &[0, 1, 0], &v, &w).unwrap();
        let r2 = quasi_r_op(&c, &[1, 0, 1], &v, &w).unwrap();
        assert!(mat_eq(&r1.matrix, &r2.matrix).is_none());
        assert_eq!(r1.log_prefactor, r2.log_prefactor);
    }

    #[test]
    fn constant_r_intertwines() {
        let c = ctx("A2");
        let v = c.highest_weight_module(&Weight(vec![1, 0])).unwrap();
        let r = constant_r(&c, &v, &v, &[0, 1, 0]).unwrap();
        assert!(intertwining_residual(&v, &v, &r).is_none());
        // invertibility: triangular with nonzero diagonal after the
        // prefactor; check via exact inversion
        assert!(crate::linalg::invert(&r.matrix).is_some());
    }

    #[test]
    fn constant_r_lowest_rows() {
        let c = ctx("A1");
        let v = c.highest_weight_module(&Weight(vec![1])).unwrap();
        let r = constant_r(&c, &v, &v, &[0]).unwrap();
        // lowest-weight vector of V(1) is index 1
        assert!(lowest_row_normalization(&v, &v, &r, 1).is_none());
        // row relation: (v_2 (x) v_t) R has the (q - q^-1) shifted term
        // with v_2 = v_hw e
        let mut v2 = vec![Scalar::zero(); 2];
        for j in 0..2 {
            for (row, cc) in &v.e_mats[0].cols[j] {
                if *row == v.hw {
                    v2[j] = cc.clone();
                }
            }
        }
        // (v2 (x) v_0) R: coefficient of v_1 (x) v_0 e = v_1 (x) v_1 term
        // equals q^{(w-a,w)-base} (q - q^-1)
        let row_in: Vec<Scalar> = {
            let mut r0 = vec![Scalar::zero(); 4];
            // v2 (x) v_0 with v2 = unit row at index 1
            r0[1 * 2 + 0] = v2[1].clone();
            r0
        };
        let mut out = vec![Scalar::zero(); 4];
        for j in 0..4 {
            for i in 0..4 {
                if !row_in[i].is_zero() {
                    out[j] += &row_in[i].mul_ref(&r.matrix.data[i][j]);
                }
            }
        }
        // diagonal part: q^{(w - a, w) - base} on index (1,0)
        let base = r.log_prefactor.clone();
        let e_diag = c.datum.form_pp(&v.weights[1], &v.weights[0]) - &base;
        let want_diag = Scalar::q_pow(i64::try_from(&e_diag.to_integer()).unwrap());
        assert_eq!(out[2], want_diag);
        // shifted term: (q - q^-1) times the same diagonal power on (0,1)
        assert_eq!(out[1], want_diag.mul_ref(&q_minus_qinv(1)));
    }

    #[test]
    fn pair_functional_matrix_matches_mco_eval() {
        let c = ctx("A2");
        let v = c.highest_weight_module(&Weight(vec![1, 0])).unwrap();
        let mono = Monomial {
            fword: vec![0, 1],
            beta: vec![1, 0],
            eword: vec![1],
        };
        let p = pair_functional_matrix(&v, &v, &mono);
        for (m, k, pp, l) in [(0usize, 1usize, 2usize, 0usize), (1, 1, 0, 2), (2, 0, 1, 1)] {
            let want = mco_eval(
                &[
                    McoFactor {
                        row: v.basis_vector(m),
                        col: v.basis_vector(k),
                        module: &v,
                    },
                    McoFactor {
                        row: v.basis_vector(pp),
                        col: v.basis_vector(l),
                        module: &v,
                    },
                ],
                &mono.fword,
                &mono.beta,
                &mono.eword,
            );
            assert_eq!(p.data[m * 3 + pp][k * 3 + l], want);
        }
    }

    #[test]
    fn rank_one_relations_pass() {
        let c = ctx("A1");
        let report = rank_one_ring_relations(&c, 3).unwrap();
        assert!(report.all_passed(), "{report}");
        assert_eq!(report.checks.len(), 7);
    }

    #[test]
    fn rtt_rank_one() {
        let c = ctx("A1");
        let report = rtt_report(&c, &Weight(vec![1]), &Weight(vec![1]), 3).unwrap();
        assert!(report.all_passed(), "{report}");
        // trivial modules: both sides collapse
        let report = rtt_report(&c, &Weight(vec![0]), &Weight(vec![0]), 2).unwrap();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn sparse_dump_roundtrips_entries() {
        let c = ctx("A1");
        let v = c.highest_weight_module(&Weight(vec![1])).unwrap();
        let r = constant_r(&c, &v, &v, &[0]).unwrap();
        let js = serde_json::to_value(&r).unwrap();
        assert_eq!(js["dim_v"], 2);
        assert_eq!(js["log_prefactor"], "1/2");
        assert!(js["entries"].as_array().unwrap().len() >= 4);
    }
}
