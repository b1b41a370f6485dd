//! Truncated tensor Fock representations of the quantized coordinate ring,
//! the creation/annihilation operators b_i^+ and b_i^-, and the intertwiner
//! matrix between the Fock modules attached to two reduced words.
//!
//! A matrix coefficient Phi(v (x) u) over a module V acts on the tensor
//! Fock space F_{i1} (x) ... (x) F_{iN} through the (N-1)-fold coproduct:
//! expanding over dual bases of V turns the operator into a matrix-product
//! form, one (dim V x dim V) array of single-factor operators per tensor
//! position, contracted over the intermediate index chain. Each single
//! factor is the restriction of an sl2 matrix coefficient, found from the
//! sl2-string decomposition of V at the node, expressed as a polynomial in
//! the four generators t_{ab} of the rank-one quantized coordinate ring and
//! evaluated in the rank-one Fock representation
//!   t11 -> a^-,  t12 -> k,  t21 -> -q k,  t22 -> a^+.
//!
//! Truncation policy: each factor carries a cutoff D_k, and every operator
//! knows its per-factor band (the longest contributing string). Inside the
//! resulting validity window the truncated action is exact because the
//! action is weight graded; outside it, application fails loudly rather
//! than silently truncating.

use crate::linalg::{invert, Mat};
use crate::repmod::{dot, AlgebraContext, FinModule, ModuleError};
use crate::root::{RootDatum, RootVec, Weight};
use crate::scalar::{q_binom, q_fact, stretch, Scalar};
use crate::word::EWordPoly;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FockError {
    #[error("cutoff too small: factor {position} needs {needed} but the cutoff is {cutoff}")]
    Window {
        position: usize,
        needed: u32,
        cutoff: u32,
    },
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("operator build failed: {0}")]
    Build(String),
}

// ---------------------------------------------------------------------------
// Rank-one coordinate ring elements and Fock operators
// ---------------------------------------------------------------------------

/// Element of the rank-one quantized coordinate ring as a polynomial in the
/// generators t_{ab}; words are sequences of (a, b) with a, b in {0, 1}.
pub type Sl2Poly = BTreeMap<Vec<(u8, u8)>, Scalar>;

fn sl2_add(poly: &mut Sl2Poly, w: Vec<(u8, u8)>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match poly.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add_ref(&c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Left action of the generators on a t-word: X . (x1...xr) picks up the
/// coproduct legs of X. The letter actions come from the defining module:
/// f.t_{a,0} = t_{a,1}, e.t_{a,1} = t_{a,0}, k.t_{a,b} = q^{+-1} t_{a,b}.
fn sl2_left(poly: &Sl2Poly, gen: char) -> Sl2Poly {
    let mut out = Sl2Poly::new();
    for (w, c) in poly {
        match gen {
            'f' => {
                // f at position p, k^-1 on later letters
                for p in 0..w.len() {
                    let (a, b) = w[p];
                    if b != 0 {
                        continue;
                    }
                    let mut nw = w.clone();
                    nw[p] = (a, 1);
                    let mut tw = 0i64;
                    for &(_, b2) in &w[p + 1..] {
                        tw += if b2 == 0 { -1 } else { 1 };
                    }
                    sl2_add(&mut out, nw, c.mul_ref(&Scalar::q_pow(tw)));
                }
            }
            'e' => {
                // e at position p, k on earlier letters
                for p in 0..w.len() {
                    let (a, b) = w[p];
                    if b != 1 {
                        continue;
                    }
                    let mut nw = w.clone();
                    nw[p] = (a, 0);
                    let mut tw = 0i64;
                    for &(_, b2) in &w[..p] {
                        tw += if b2 == 0 { 1 } else { -1 };
                    }
                    sl2_add(&mut out, nw, c.mul_ref(&Scalar::q_pow(tw)));
                }
            }
            _ => unreachable!(),
        }
    }
    out
}

/// Right action: (x1...xr) . e = sum_p (x1 k)...(x_{p-1} k)(x_p e)(rest),
/// with v_0 e = v_1, v_1 f = v_0, v_a k = q^{+-1} v_a.
fn sl2_right(poly: &Sl2Poly, gen: char) -> Sl2Poly {
    let mut out = Sl2Poly::new();
    for (w, c) in poly {
        match gen {
            'e' => {
                for p in 0..w.len() {
                    let (a, b) = w[p];
                    if a != 0 {
                        continue;
                    }
                    let mut nw = w.clone();
                    nw[p] = (1, b);
                    let mut tw = 0i64;
                    for &(a2, _) in &w[..p] {
                        tw += if a2 == 0 { 1 } else { -1 };
                    }
                    sl2_add(&mut out, nw, c.mul_ref(&Scalar::q_pow(tw)));
                }
            }
            'f' => {
                for p in 0..w.len() {
                    let (a, b) = w[p];
                    if a != 1 {
                        continue;
                    }
                    let mut nw = w.clone();
                    nw[p] = (0, b);
                    let mut tw = 0i64;
                    for &(a2, _) in &w[p + 1..] {
                        tw += if a2 == 0 { -1 } else { 1 };
                    }
                    sl2_add(&mut out, nw, c.mul_ref(&Scalar::q_pow(tw)));
                }
            }
            _ => unreachable!(),
        }
    }
    out
}

/// Matrix coefficient of the (l+1)-dimensional rank-one module as a degree-l
/// polynomial in the t_{ab}, normalized to exactly dual bases: row s, column
/// t with u_t = f^(t) u_0. Computed by divided-power left/right actions on
/// t11^l and dividing by the Gaussian binomial [l choose s].
pub fn sl2_mco_poly(l: i64, s: i64, t: i64) -> Sl2Poly {
    assert!((0..=l).contains(&s) && (0..=l).contains(&t));
    let mut poly = Sl2Poly::new();
    poly.insert(vec![(0u8, 0u8); l as usize], Scalar::one());
    for _ in 0..t {
        poly = sl2_left(&poly, 'f');
    }
    for _ in 0..s {
        poly = sl2_right(&poly, 'e');
    }
    let norm = q_fact(t, 1)
        .mul_ref(&q_fact(s, 1))
        .mul_ref(&q_binom(l, s, 1));
    let inv = norm.inv().expect("normalizer nonzero");
    poly.into_iter().map(|(w, c)| (w, c.mul_ref(&inv))).collect()
}

/// Single-factor operator on a truncated rank-one Fock space, column form.
#[derive(Clone, Debug)]
pub struct LocalOp {
    pub cols: Vec<Vec<(usize, Scalar)>>,
}

/// Evaluate an Sl2Poly in the rank-one Fock representation at q_i = q^d,
/// on the space {|0>, ..., |cutoff>}. Words are applied with headroom so
/// every kept entry is exact.
pub fn sl2_poly_to_local_op(poly: &Sl2Poly, d: i64, cutoff: u32) -> LocalOp {
    let dim = cutoff as usize + 1;
    let head = poly.keys().map(|w| w.len()).max().unwrap_or(0);
    let ext = dim + head;
    let mut cols = vec![Vec::new(); dim];
    for m0 in 0..dim {
        let mut acc = vec![Scalar::zero(); ext];
        for (w, c) in poly {
            let c = stretch(c, d);
            // apply letters right to left on |m0>
            let mut cur: Vec<(usize, Scalar)> = vec![(m0, Scalar::one())];
            for &(a, b) in w.iter().rev() {
                let mut next: Vec<(usize, Scalar)> = Vec::new();
                for (m, x) in &cur {
                    let m = *m;
                    match (a, b) {
                        (0, 0) => {
                            // a^-: |m> -> (1 - q_i^{2m}) |m-1>
                            if m > 0 {
                                let f = Scalar::one().sub_ref(&Scalar::q_pow(2 * d * m as i64));
                                next.push((m - 1, x.mul_ref(&f)));
                            }
                        }
                        (0, 1) => {
                            // k
                            next.push((m, x.mul_ref(&Scalar::q_pow(d * m as i64))));
                        }
                        (1, 0) => {
                            // -q_i k
                            next.push((
                                m,
                                x.mul_ref(&Scalar::monomial(-1, 0))
                                    .mul_ref(&Scalar::q_pow(d * (m as i64 + 1))),
                            ));
                        }
                        _ => {
                            // a^+
                            if m + 1 < ext {
                                next.push((m + 1, x.clone()));
                            }
                        }
                    }
                }
                cur = next;
                if cur.is_empty() {
                    break;
                }
            }
            for (m, x) in cur {
                acc[m] += &x.mul_ref(&c);
            }
        }
        for (m, x) in acc.into_iter().enumerate() {
            if m < dim && !x.is_zero() {
                cols[m0].push((m, x));
            }
        }
    }
    LocalOp { cols }
}

// ---------------------------------------------------------------------------
// Fock space, vectors, diagonal operators
// ---------------------------------------------------------------------------

/// Truncated tensor Fock space attached to a reduced word of w0: per-factor
/// cutoffs D_k, basis |m> with 0 <= m_k <= D_k, weight of |m> equal to
/// sum m_k beta_k.
#[derive(Clone, Debug)]
pub struct FockSpace {
    pub datum: Arc<RootDatum>,
    pub word: Vec<usize>,
    pub betas: Vec<RootVec>,
    pub cutoffs: Vec<u32>,
}

/// Plain-basis vector: finitely supported coefficients over |m>.
pub type FVec = BTreeMap<Vec<u32>, Scalar>;

/// Coefficients over the normalized basis |m>>.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NormalizedVector(pub BTreeMap<Vec<u32>, Scalar>);

impl FockSpace {
    pub fn new(datum: &Arc<RootDatum>, word: &[usize], cutoffs: Vec<u32>) -> Result<Self, FockError> {
        let betas = datum
            .root_sequence(word)
            .map_err(|e| FockError::Module(ModuleError::Root(e)))?;
        Ok(FockSpace {
            datum: datum.clone(),
            word: word.to_vec(),
            betas,
            cutoffs,
        })
    }

    pub fn uniform(datum: &Arc<RootDatum>, word: &[usize], cutoff: u32) -> Result<Self, FockError> {
        let n = word.len();
        Self::new(datum, word, vec![cutoff; n])
    }

    pub fn rank_positions(&self) -> usize {
        self.word.len()
    }

    pub fn vacuum(&self) -> FVec {
        let mut v = FVec::new();
        v.insert(vec![0; self.word.len()], Scalar::one());
        v
    }

    pub fn weight_of(&self, m: &[u32]) -> RootVec {
        let mut w = vec![0i64; self.datum.rank()];
        for (k, &mk) in m.iter().enumerate() {
            for (a, b) in w.iter_mut().zip(&self.betas[k]) {
                *a += mk as i64 * b;
            }
        }
        w
    }

    /// Per-factor conversion |m> = q_i^{m(m-1)/2} (1 - q_i^2)^m |m>>.
    fn plain_over_normalized(&self, m: &[u32]) -> Scalar {
        let mut c = Scalar::one();
        for (k, &mk) in m.iter().enumerate() {
            let d = self.datum.d(self.word[k]);
            let mk = mk as i64;
            let one_minus = Scalar::one().sub_ref(&Scalar::q_pow(2 * d));
            c = c
                .mul_ref(&Scalar::q_pow(d * mk * (mk - 1) / 2))
                .mul_ref(&one_minus.pow(mk));
        }
        c
    }

    pub fn to_normalized(&self, v: &FVec) -> NormalizedVector {
        NormalizedVector(
            v.iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c.mul_ref(&self.plain_over_normalized(m))))
                .collect(),
        )
    }

    pub fn from_normalized(&self, v: &NormalizedVector) -> FVec {
        v.0.iter()
            .map(|(m, c)| {
                (
                    m.clone(),
                    c.div_ref(&self.plain_over_normalized(m)).unwrap(),
                )
            })
            .collect()
    }

    /// All basis multi-indices with m_k <= cutoff_k - reserve and total
    /// height of the weight at most `height_cap` (None: no cap).
    pub fn window_basis(&self, reserve: u32, height_cap: Option<i64>) -> Vec<Vec<u32>> {
        let caps: Vec<u32> = self
            .cutoffs
            .iter()
            .map(|&c| c.saturating_sub(reserve))
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![0u32; caps.len()];
        fn go(
            caps: &[u32],
            k: usize,
            cur: &mut Vec<u32>,
            out: &mut Vec<Vec<u32>>,
        ) {
            if k == caps.len() {
                out.push(cur.clone());
                return;
            }
            for m in 0..=caps[k] {
                cur[k] = m;
                go(caps, k + 1, cur, out);
            }
            cur[k] = 0;
        }
        go(&caps, 0, &mut cur, &mut out);
        if let Some(cap) = height_cap {
            out.retain(|m| {
                let w = self.weight_of(m);
                w.iter().sum::<i64>() <= cap
            });
        }
        out
    }
}

pub fn fvec_add_scaled(acc: &mut FVec, other: &FVec, c: &Scalar) {
    for (m, x) in other {
        let v = x.mul_ref(c);
        if v.is_zero() {
            continue;
        }
        match acc.entry(m.clone()) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&v);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

pub fn fvec_is_zero(v: &FVec) -> bool {
    v.values().all(|c| c.is_zero())
}

/// Closed-form diagonal operators: powers of sigma_lambda and tau_lambda.
/// sigma_lambda |m> = prod_k q^{m_k (beta_k, lambda)} |m>;
/// tau_lambda carries the extra (-1)^{(2 rho', lambda)} q^{(2 rho, lambda)}.
#[derive(Clone, Debug)]
pub enum DiagOp {
    Sigma(Weight, i64),
    Tau(Weight, i64),
}

impl DiagOp {
    pub fn eval(&self, space: &FockSpace, m: &[u32]) -> Scalar {
        let (lambda, power, is_tau) = match self {
            DiagOp::Sigma(l, p) => (l, *p, false),
            DiagOp::Tau(l, p) => (l, *p, true),
        };
        let mut expo = 0i64;
        for (k, &mk) in m.iter().enumerate() {
            expo += mk as i64 * space.datum.form_pq(lambda, &space.betas[k]);
        }
        let mut c = Scalar::q_pow(power * expo);
        if is_tau {
            let sgn = space.datum.two_rho_dual_pairing(lambda);
            let two_rho = space.datum.two_rho_root();
            let base = Scalar::monomial(
                if sgn % 2 == 0 { 1 } else { -1 },
                space.datum.form_pq(lambda, &two_rho),
            );
            c = c.mul_ref(&base.pow(power));
        }
        c
    }

    pub fn apply(&self, space: &FockSpace, v: &FVec) -> FVec {
        v.iter()
            .map(|(m, c)| (m.clone(), c.mul_ref(&self.eval(space, m))))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Matrix-product operators
// ---------------------------------------------------------------------------

/// A matrix coefficient acting on the truncated Fock space in matrix-product
/// form: per tensor position, a map (state in, state out) -> single-factor
/// operator; boundary states are the sentinel 0. An optional closed-form
/// diagonal prefactor (applied first) and a global scalar complete the
/// operator. `bands` bound the per-factor degree shift; applications whose
/// support would exceed cutoff - band fail with a window error.
#[derive(Clone, Debug)]
pub struct FockOperator {
    pub factors: Vec<BTreeMap<(u32, u32), LocalOp>>,
    pub bands: Vec<u32>,
    pub scale: Scalar,
    pub pre_diag: Option<DiagOp>,
    pub shift: RootVec,
}

impl FockOperator {
    pub fn apply(&self, space: &FockSpace, v: &FVec) -> Result<FVec, FockError> {
        // window check
        for (k, band) in self.bands.iter().enumerate() {
            let max_m = v.keys().map(|m| m[k]).max().unwrap_or(0);
            if max_m + band > space.cutoffs[k] {
                return Err(FockError::Window {
                    position: k,
                    needed: max_m + band,
                    cutoff: space.cutoffs[k],
                });
            }
        }
        let v = match &self.pre_diag {
            Some(d) => d.apply(space, v),
            None => v.clone(),
        };
        let n = space.word.len();
        let mut out = FVec::new();
        for (m, coeff) in &v {
            // chain contraction left to right
            let mut states: BTreeMap<(u32, Vec<u32>), Scalar> = BTreeMap::new();
            states.insert((0, Vec::new()), coeff.clone());
            for k in 0..n {
                let mut next: BTreeMap<(u32, Vec<u32>), Scalar> = BTreeMap::new();
                for ((jin, prefix), c) in &states {
                    for ((a, b), local) in &self.factors[k] {
                        if a != jin {
                            continue;
                        }
                        for (row, lc) in &local.cols[m[k] as usize] {
                            let mut np = prefix.clone();
                            np.push(*row as u32);
                            let val = c.mul_ref(lc);
                            if val.is_zero() {
                                continue;
                            }
                            match next.entry((*b, np)) {
                                std::collections::btree_map::Entry::Vacant(e) => {
                                    e.insert(val);
                                }
                                std::collections::btree_map::Entry::Occupied(mut e) => {
                                    let s = e.get().add_ref(&val);
                                    if s.is_zero() {
                                        e.remove();
                                    } else {
                                        *e.get_mut() = s;
                                    }
                                }
                            }
                        }
                    }
                }
                states = next;
                if states.is_empty() {
                    break;
                }
            }
            for ((j, key), c) in states {
                if j != 0 {
                    continue;
                }
                let val = c.mul_ref(&self.scale);
                if val.is_zero() {
                    continue;
                }
                match out.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(val);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get().add_ref(&val);
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// sl2-string decomposition of a module at one node: the change of basis
/// into divided-power strings and its inverse.
struct StringDec {
    /// (string id, depth t, length l) for each string-basis column.
    labels: Vec<(usize, i64, i64)>,
    b: Mat,
    binv: Mat,
}

fn string_decomposition(module: &FinModule, node: usize) -> Result<StringDec, FockError> {
    let dim = module.dim();
    let datum = &module.datum;
    // string tops: weight-homogeneous kernel of e_i, found blockwise
    let mut blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for j in 0..dim {
        blocks
            .entry(module.weights[j].clone())
            .or_default()
            .push(j);
    }
    let mut tops: Vec<Vec<Scalar>> = Vec::new();
    for (_, members) in blocks {
        // kernel of e_node restricted to the block
        let cols: Vec<Vec<Scalar>> = members
            .iter()
            .map(|&j| module.apply_e(node, &module.basis_vector(j)))
            .collect();
        // nullspace by row reduction
        let n = cols.len();
        let rows = dim;
        let mut aug: Vec<Vec<Scalar>> = (0..rows)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0usize;
        for c in 0..n {
            let piv = (r..rows).find(|&i| !aug[i][c].is_zero());
            let Some(p) = piv else { continue };
            aug.swap(r, p);
            let inv = aug[r][c].inv().unwrap();
            for j in 0..n {
                if !aug[r][j].is_zero() {
                    aug[r][j] = aug[r][j].mul_ref(&inv);
                }
            }
            for i in 0..rows {
                if i != r && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    for j in 0..n {
                        if !aug[r][j].is_zero() {
                            let t = f.mul_ref(&aug[r][j]);
                            aug[i][j] -= &t;
                        }
                    }
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        for free in 0..n {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut x = vec![Scalar::zero(); n];
            x[free] = Scalar::one();
            for &(pr, pc) in pivots.iter().rev() {
                let mut acc = Scalar::zero();
                for j in 0..n {
                    if j != pc && !aug[pr][j].is_zero() && !x[j].is_zero() {
                        acc += &aug[pr][j].mul_ref(&x[j]);
                    }
                }
                x[pc] = acc.neg_ref();
            }
            let mut vec = vec![Scalar::zero(); dim];
            for (&j, c) in members.iter().zip(x) {
                vec[j] = c;
            }
            tops.push(vec);
        }
    }
    // expand each top into its divided-power string
    let mut labels = Vec::new();
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    for (sid, top) in tops.iter().enumerate() {
        // the i-weight of the top gives the string length
        let lead = top.iter().position(|c| !c.is_zero()).unwrap();
        let l = module.weights[lead].pairing_h(node);
        assert!(l >= 0, "string top has nonnegative node weight");
        let mut v = top.clone();
        for t in 0..=l {
            labels.push((sid, t, l));
            columns.push(v.clone());
            if t < l {
                v = module.apply_f(node, &v);
                let inv = q_fact(t + 1, datum.d(node)).inv().unwrap();
                v = v.into_iter().map(|c| c.mul_ref(&inv)).collect();
            }
        }
    }
    if columns.len() != dim {
        return Err(FockError::Build(format!(
            "string decomposition mismatch at node {}: {} of {}",
            node + 1,
            columns.len(),
            dim
        )));
    }
    let mut b = Mat::zeros(dim, dim);
    for (j, col) in columns.iter().enumerate() {
        for (r, c) in col.iter().enumerate() {
            b.data[r][j] = c.clone();
        }
    }
    let binv = invert(&b).ok_or_else(|| FockError::Build("string basis singular".into()))?;
    Ok(StringDec { labels, b, binv })
}

/// Build the matrix-product operator of the matrix coefficient
/// Phi(row (x) col) over `module` on the Fock space.
pub fn mco_op(
    space: &FockSpace,
    module: &FinModule,
    row: &[Scalar],
    col: &[Scalar],
) -> Result<FockOperator, FockError> {
    let n = space.word.len();
    let dim = module.dim();
    // string data per distinct node
    let mut decs: BTreeMap<usize, StringDec> = BTreeMap::new();
    for &i in &space.word {
        if !decs.contains_key(&i) {
            decs.insert(i, string_decomposition(module, i)?);
        }
    }
    let mut factors = Vec::with_capacity(n);
    let mut bands = Vec::with_capacity(n);
    for k in 0..n {
        let node = space.word[k];
        let dec = &decs[&node];
        let d = space.datum.d(node);
        let rows_here: Vec<(u32, Vec<Scalar>)> = if k == 0 {
            vec![(0, row.to_vec())]
        } else {
            (0..dim as u32)
                .map(|j| (j, module.basis_vector(j as usize)))
                .collect()
        };
        let cols_here: Vec<(u32, Vec<Scalar>)> = if k == n - 1 {
            vec![(0, col.to_vec())]
        } else {
            (0..dim as u32)
                .map(|j| (j, module.basis_vector(j as usize)))
                .collect()
        };
        let mut fmap: BTreeMap<(u32, u32), LocalOp> = BTreeMap::new();
        let mut band_k = 0u32;
        for (a, rvec) in &rows_here {
            // coordinates of the functional against the string basis
            let row_coords: Vec<Scalar> = (0..dim)
                .map(|c| {
                    let colv: Vec<Scalar> = (0..dim).map(|r| dec.b.data[r][c].clone()).collect();
                    dot(rvec, &colv)
                })
                .collect();
            for (b, cvec) in &cols_here {
                let col_coords = dec.binv.mul_vec(cvec);
                let mut poly = Sl2Poly::new();
                for (ci, cc) in col_coords.iter().enumerate() {
                    if cc.is_zero() {
                        continue;
                    }
                    let (s_id, t, l) = dec.labels[ci];
                    for (ri, rc) in row_coords.iter().enumerate() {
                        if rc.is_zero() {
                            continue;
                        }
                        let (s_id2, tp, _)= dec.labels[ri];
                        if s_id2 != s_id {
                            continue;
                        }
                        let base = sl2_mco_poly(l, tp, t);
                        let coeff = rc.mul_ref(cc);
                        for (w, c) in base {
                            sl2_add(&mut poly, w, c.mul_ref(&coeff));
                        }
                    }
                }
                if poly.is_empty() {
                    continue;
                }
                band_k = band_k.max(poly.keys().map(|w| w.len() as u32).max().unwrap_or(0));
                let local = sl2_poly_to_local_op(&poly, d, space.cutoffs[k]);
                fmap.insert((*a, *b), local);
            }
        }
        factors.push(fmap);
        bands.push(band_k);
    }
    // weight shift: w0(wt col) - wt row, informational
    let shift = {
        let wt_of = |v: &[Scalar]| -> Option<Weight> {
            let mut wt: Option<Weight> = None;
            for (j, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                match &wt {
                    None => wt = Some(module.weights[j].clone()),
                    Some(w) => assert_eq!(w, &module.weights[j], "weight vector expected"),
                }
            }
            wt
        };
        match (wt_of(row), wt_of(col)) {
            (Some(xi), Some(nu)) => {
                let w0nu = space.datum.apply_word(&space.datum.some_reduced_w0(), &nu);
                let diff = w0nu.add(&xi.neg());
                space
                    .datum
                    .weight_to_root_coords(&diff)
                    .iter()
                    .map(|c| {
                        assert!(c.is_integer());
                        i64::try_from(&c.to_integer()).unwrap()
                    })
                    .collect()
            }
            _ => vec![0; space.datum.rank()],
        }
    };
    Ok(FockOperator {
        factors,
        bands,
        scale: Scalar::one(),
        pre_diag: None,
        shift,
    })
}

/// sigma_lambda through the coproduct route: Phi(v_lambda (x) u_{w0 lambda}).
pub fn sigma_mco(
    ctx: &AlgebraContext,
    space: &FockSpace,
    lambda: &Weight,
) -> Result<FockOperator, FockError> {
    let m = ctx.highest_weight_module(lambda)?;
    let row = m.basis_vector(m.hw);
    let col = m.lowest_from_hw();
    mco_op(space, &m, &row, &col)
}

/// tau_lambda through the coproduct route: Phi(v_{w0 lambda'} (x) u_{lambda'})
/// with lambda' = -w0 lambda.
pub fn tau_mco(
    ctx: &AlgebraContext,
    space: &FockSpace,
    lambda: &Weight,
) -> Result<FockOperator, FockError> {
    let lp = dual_weight(&ctx.datum, lambda);
    let m = ctx.highest_weight_module(&lp)?;
    let w0m = m.s_word_matrix(&ctx.datum.some_reduced_w0(), 1);
    let mut row = vec![Scalar::zero(); m.dim()];
    // v_{w0 lambda'} = v_{lambda'} S_{w0}: row vector times matrix
    for j in 0..m.dim() {
        row[j] = w0m.data[m.hw][j].clone();
    }
    let col = m.basis_vector(m.hw);
    mco_op(space, &m, &row, &col)
}

/// lambda' = -w0 lambda in fundamental coordinates.
pub fn dual_weight(datum: &RootDatum, lambda: &Weight) -> Weight {
    Weight(
        (0..datum.rank())
            .map(|i| lambda.0[datum.w0_dual(i)])
            .collect(),
    )
}

/// The factorized forms of sigma_lambda and tau_lambda: per tensor position
/// a single power of t12 (resp. t21) with exponent read off the partial
/// reflection orbit of lambda.
pub fn sigma_factored(space: &FockSpace, lambda: &Weight) -> FockOperator {
    let n = space.word.len();
    let mut factors = Vec::with_capacity(n);
    let mut cur = lambda.clone();
    for k in 0..n {
        let node = space.word[k];
        let c = cur.pairing_h(node);
        assert!(c >= 0);
        let mut poly = Sl2Poly::new();
        poly.insert(vec![(0u8, 1u8); c as usize], Scalar::one());
        let local = sl2_poly_to_local_op(&poly, space.datum.d(node), space.cutoffs[k]);
        let mut fmap = BTreeMap::new();
        fmap.insert((0u32, 0u32), local);
        factors.push(fmap);
        cur = space.datum.reflect(&cur, node);
    }
    FockOperator {
        factors,
        bands: vec![0; n],
        scale: Scalar::one(),
        pre_diag: None,
        shift: vec![0; space.datum.rank()],
    }
}

pub fn tau_factored(space: &FockSpace, lambda: &Weight) -> FockOperator {
    let n = space.word.len();
    let lp = dual_weight(&space.datum, lambda);
    // exponent at position k: <h_{i_k}, s_{i_{k+1}} ... s_{i_N} lambda'>
    let mut exps = vec![0i64; n];
    let mut cur = lp;
    for k in (0..n).rev() {
        let node = space.word[k];
        exps[k] = cur.pairing_h(node);
        cur = space.datum.reflect(&cur, node);
    }
    let mut factors = Vec::with_capacity(n);
    for k in 0..n {
        let node = space.word[k];
        assert!(exps[k] >= 0);
        let mut poly = Sl2Poly::new();
        poly.insert(vec![(1u8, 0u8); exps[k] as usize], Scalar::one());
        let local = sl2_poly_to_local_op(&poly, space.datum.d(node), space.cutoffs[k]);
        let mut fmap = BTreeMap::new();
        fmap.insert((0u32, 0u32), local);
        factors.push(fmap);
    }
    FockOperator {
        factors,
        bands: vec![0; n],
        scale: Scalar::one(),
        pre_diag: None,
        shift: vec![0; space.datum.rank()],
    }
}

// ---------------------------------------------------------------------------
// The Fock machine: b-operators, e-word application, intertwiner rows
// ---------------------------------------------------------------------------

/// Shared per-word workspace: the Fock space plus the creation and
/// annihilation operators b_i^+ = Phi(v_{w_i} e_i (x) u_{w0 w_i}) sigma_i^-1
/// / (1 - q_i^2) and b_i^- = -q_i^2 Phi(v_{w0 w_{i'}} f_i (x) u_{w_{i'}})
/// tau_i^-1.
pub struct FockMachine<'a> {
    pub ctx: &'a AlgebraContext,
    pub space: FockSpace,
    bplus: Vec<FockOperator>,
    bminus: Vec<FockOperator>,
}

impl<'a> FockMachine<'a> {
    pub fn new(ctx: &'a AlgebraContext, word: &[usize], cutoff: u32) -> Result<Self, FockError> {
        let space = FockSpace::uniform(&ctx.datum, word, cutoff)?;
        let rank = ctx.datum.rank();
        let mut bplus = Vec::with_capacity(rank);
        let mut bminus = Vec::with_capacity(rank);
        for i in 0..rank {
            bplus.push(build_bplus(ctx, &space, i)?);
            bminus.push(build_bminus(ctx, &space, i)?);
        }
        Ok(FockMachine {
            ctx,
            space,
            bplus,
            bminus,
        })
    }

    pub fn bplus(&self, i: usize) -> &FockOperator {
        &self.bplus[i]
    }

    pub fn bminus(&self, i: usize) -> &FockOperator {
        &self.bminus[i]
    }

    /// Image of an e-word polynomial under the module map sending e-words to
    /// b^+ words acting on the vacuum; returned over the normalized basis.
    pub fn apply_eword(&self, x: &EWordPoly) -> Result<NormalizedVector, FockError> {
        let mut acc = FVec::new();
        for (w, c) in &x.terms {
            let mut v = self.space.vacuum();
            for &i in w.iter().rev() {
                v = self.bplus[i].apply(&self.space, &v)?;
                if fvec_is_zero(&v) {
                    break;
                }
            }
            fvec_add_scaled(&mut acc, &v, c);
        }
        Ok(self.space.to_normalized(&acc))
    }

    /// One row of the intertwiner matrix against this machine's word as the
    /// target: the coefficients of Psi(|m>>_source) over |n>>_target.
    pub fn psi_row(
        &self,
        source: &[usize],
        m: &[u32],
    ) -> Result<BTreeMap<Vec<u32>, Scalar>, FockError> {
        let x = self
            .ctx
            .pbw_monomial_e(source, m, crate::repmod::PbwFamily::PrimePlus)?;
        let nv = self.apply_eword(&x)?;
        Ok(nv.0)
    }
}

fn build_bplus(
    ctx: &AlgebraContext,
    space: &FockSpace,
    i: usize,
) -> Result<FockOperator, FockError> {
    let m = ctx.fundamental(i)?;
    // row = v_{w_i} e_i: (v e_i)_j = (E_i)_{hw, j}
    let mut row = vec![Scalar::zero(); m.dim()];
    for j in 0..m.dim() {
        for (r, c) in &m.e_mats[i].cols[j] {
            if *r == m.hw {
                row[j] = c.clone();
            }
        }
    }
    let col = m.lowest_from_hw();
    let mut op = mco_op(space, &m, &row, &col)?;
    let d = ctx.datum.d(i);
    let denom = Scalar::one().sub_ref(&Scalar::q_pow(2 * d));
    op.scale = op.scale.div_ref(&denom).unwrap();
    op.pre_diag = Some(DiagOp::Sigma(Weight::fundamental(ctx.datum.rank(), i), -1));
    Ok(op)
}

fn build_bminus(
    ctx: &AlgebraContext,
    space: &FockSpace,
    i: usize,
) -> Result<FockOperator, FockError> {
    let ip = ctx.datum.w0_dual(i);
    let m = ctx.fundamental(ip)?;
    // row = v_{w0 w_{i'}} f_i
    let w0m = m.s_word_matrix(&ctx.datum.some_reduced_w0(), 1);
    let vlow: Vec<Scalar> = (0..m.dim()).map(|j| w0m.data[m.hw][j].clone()).collect();
    let mut row = vec![Scalar::zero(); m.dim()];
    for j in 0..m.dim() {
        for (r, c) in &m.f_mats[i].cols[j] {
            if !vlow[*r].is_zero() {
                row[j] += &vlow[*r].mul_ref(c);
            }
        }
    }
    let col = m.basis_vector(m.hw);
    let mut op = mco_op(space, &m, &row, &col)?;
    let d = ctx.datum.d(i);
    op.scale = op
        .scale
        .mul_ref(&Scalar::monomial(-1, 2 * d));
    op.pre_diag = Some(DiagOp::Tau(Weight::fundamental(ctx.datum.rank(), i), -1));
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::{mco_eval, McoFactor};
    use crate::word::serre_element_e;

    fn ctx(label: &str) -> AlgebraContext {
        AlgebraContext::for_label(label).unwrap()
    }

    #[test]
    fn rank_one_generator_ops() {
        // t11 |0> = 0; t21 |m> = -q^{m+1} |m>; t22 |m> = |m+1>
        let mk = |a: u8, b: u8| -> LocalOp {
            let mut p = Sl2Poly::new();
            p.insert(vec![(a, b)], Scalar::one());
            sl2_poly_to_local_op(&p, 1, 4)
        };
        let t11 = mk(0, 0);
        assert!(t11.cols[0].is_empty());
        assert_eq!(
            t11.cols[2],
            vec![(1, Scalar::one().sub_ref(&Scalar::q_pow(4)))]
        );
        let t21 = mk(1, 0);
        assert_eq!(t21.cols[3], vec![(3, Scalar::monomial(-1, 4))]);
        let t22 = mk(1, 1);
        assert_eq!(t22.cols[2], vec![(3, Scalar::one())]);
        // defining relation t11 t22 - q t12 t21 = 1 as local operators
        let mut p = Sl2Poly::new();
        p.insert(vec![(0, 0), (1, 1)], Scalar::one());
        p.insert(vec![(0, 1), (1, 0)], Scalar::monomial(-1, 1));
        let op = sl2_poly_to_local_op(&p, 1, 4);
        for m in 0..=4usize {
            assert_eq!(op.cols[m], vec![(m, Scalar::one())], "m={m}");
        }
    }

    #[test]
    fn rank_one_defining_relations() {
        // all seven defining relations of the rank-one coordinate ring hold
        // for the assigned operators
        let rels: Vec<(Vec<((u8, u8), (u8, u8))>, Vec<Scalar>)> = vec![
            // t11 t21 = q t21 t11 etc. encoded as lhs - q rhs = 0 pairs
        ];
        let _ = rels;
        let pairs = [
            ((0, 0), (1, 0)), // t11 t21 = q t21 t11
            ((0, 1), (1, 1)), // t12 t22 = q t22 t12
            ((0, 0), (0, 1)), // t11 t12 = q t12 t11
            ((1, 0), (1, 1)), // t21 t22 = q t22 t21
        ];
        for (x, y) in pairs {
            let mut p = Sl2Poly::new();
            p.insert(vec![x, y], Scalar::one());
            p.insert(vec![y, x], Scalar::monomial(-1, 1));
            let op = sl2_poly_to_local_op(&p, 1, 5);
            for m in 0..=5usize {
                assert!(op.cols[m].is_empty(), "{x:?}{y:?} m={m}");
            }
        }
        // [t12, t21] = 0
        let mut p = Sl2Poly::new();
        p.insert(vec![(0, 1), (1, 0)], Scalar::one());
        p.insert(vec![(1, 0), (0, 1)], Scalar::monomial(-1, 0));
        let op = sl2_poly_to_local_op(&p, 1, 5);
        for m in 0..=5usize {
            assert!(op.cols[m].is_empty());
        }
        // [t11, t22] = (q - q^-1) t21 t12
        let mut p = Sl2Poly::new();
        p.insert(vec![(0, 0), (1, 1)], Scalar::one());
        p.insert(vec![(1, 1), (0, 0)], Scalar::monomial(-1, 0));
        let qm = crate::scalar::q_minus_qinv(1);
        let mut rhs = Sl2Poly::new();
        rhs.insert(vec![(1, 0), (0, 1)], qm);
        for (w, c) in rhs {
            sl2_add(&mut p, w, c.neg_ref());
        }
        let op = sl2_poly_to_local_op(&p, 1, 5);
        for m in 0..=5usize {
            assert!(op.cols[m].is_empty());
        }
    }

    #[test]
    fn sl2_mco_poly_examples() {
        // l = 1: the four generators themselves
        for s in 0..=1i64 {
            for t in 0..=1i64 {
                let p = sl2_mco_poly(1, s, t);
                assert_eq!(p.len(), 1);
                let (w, c) = p.iter().next().unwrap();
                assert_eq!(w, &vec![(s as u8, t as u8)]);
                assert!(c.is_one());
            }
        }
        // s = t = 0: t11^l
        let p = sl2_mco_poly(3, 0, 0);
        assert_eq!(p.len(), 1);
        assert!(p[&vec![(0u8, 0u8); 3]].is_one());
    }

    #[test]
    fn sl2_mco_poly_matches_module_entries() {
        // evaluate the degree-l polynomial as a functional on monomials
        // f^r k^beta e^u via products of V(1) coefficients, and compare with
        // the matrix entry of the monomial on V(l) in the divided basis
        let c = ctx("A1");
        let v1 = c.highest_weight_module(&Weight(vec![1])).unwrap();
        for l in 1..=2i64 {
            let vl = c.highest_weight_module(&Weight(vec![l])).unwrap();
            // divided basis u_t = f^(t) u_0 and exact dual rows
            let us: Vec<Vec<Scalar>> = (0..=l)
                .map(|t| {
                    let mut v = vl.basis_vector(vl.hw);
                    for _ in 0..t {
                        v = vl.apply_f(0, &v);
                    }
                    let inv = q_fact(t, 1).inv().unwrap();
                    v.into_iter().map(|x| x.mul_ref(&inv)).collect()
                })
                .collect();
            // dual rows: the basis below is weight-graded with 1-dim blocks,
            // so the dual row of u_t is supported on its leading index
            let dual_rows: Vec<Vec<Scalar>> = (0..=l)
                .map(|t| {
                    let ut = &us[t as usize];
                    let lead = ut.iter().position(|x| !x.is_zero()).unwrap();
                    let mut row = vec![Scalar::zero(); vl.dim()];
                    row[lead] = ut[lead].inv().unwrap();
                    row
                })
                .collect();
            for s in 0..=l {
                for t in 0..=l {
                    let poly = sl2_mco_poly(l, s, t);
                    for r in 0..=l {
                        for u in 0..=l {
                            for b in [-1i64, 0, 2] {
                                let fw = vec![0usize; r as usize];
                                let ew = vec![0usize; u as usize];
                                // evaluate the polynomial functional
                                let mut lhs = Scalar::zero();
                                for (w, coeff) in &poly {
                                    let factors: Vec<McoFactor> = w
                                        .iter()
                                        .map(|&(a, bb)| McoFactor {
                                            row: v1.basis_vector(a as usize),
                                            col: v1.basis_vector(bb as usize),
                                            module: &v1,
                                        })
                                        .collect();
                                    let v = mco_eval(&factors, &fw, &[b], &ew);
                                    lhs += &v.mul_ref(coeff);
                                }
                                // matrix entry on V(l)
                                let mut vcol = us[t as usize].clone();
                                for _ in 0..u {
                                    vcol = vl.apply_e(0, &vcol);
                                }
                                vcol = vl.apply_k_beta(&[b], &vcol);
                                for _ in 0..r {
                                    vcol = vl.apply_f(0, &vcol);
                                }
                                let rhs = dot(&dual_rows[s as usize], &vcol);
                                assert_eq!(lhs, rhs, "l={l} s={s} t={t} r={r} u={u} b={b}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rank_one_b_ops() {
        let c = ctx("A1");
        let machine = FockMachine::new(&c, &[0], 7).unwrap();
        let space = &machine.space;
        // b+ |m> = q^{-m}/(1-q^2) |m+1>
        for m in 0..5u32 {
            let mut v = FVec::new();
            v.insert(vec![m], Scalar::one());
            let out = machine.bplus(0).apply(space, &v).unwrap();
            assert_eq!(out.len(), 1);
            let denom = Scalar::one().sub_ref(&Scalar::q_pow(2));
            let expect = Scalar::q_pow(-(m as i64)).div_ref(&denom).unwrap();
            assert_eq!(out[&vec![m + 1]], expect, "m={m}");
        }
        // b- |0> = 0 and b- |m> = q^{1-m}(1-q^{2m}) |m-1>
        let out = machine
            .bminus(0)
            .apply(space, &space.vacuum())
            .unwrap();
        assert!(fvec_is_zero(&out));
        for m in 1..5u32 {
            let mut v = FVec::new();
            v.insert(vec![m], Scalar::one());
            let out = machine.bminus(0).apply(space, &v).unwrap();
            let expect = Scalar::q_pow(1 - m as i64)
                .mul_ref(&Scalar::one().sub_ref(&Scalar::q_pow(2 * m as i64)));
            assert_eq!(out[&vec![m - 1]], expect, "m={m}");
        }
        // normalized: b+ |m>> = |m+1>>
        for m in 0..5u32 {
            let mut nv = NormalizedVector::default();
            nv.0.insert(vec![m], Scalar::one());
            let plain = space.from_normalized(&nv);
            let out = machine.bplus(0).apply(space, &plain).unwrap();
            let norm = space.to_normalized(&out);
            assert_eq!(norm.0.len(), 1);
            assert!(norm.0[&vec![m + 1]].is_one(), "m={m}");
        }
    }

    #[test]
    fn vacuum_formula_rank_one() {
        // apply_eword(e^m) = |m>> for m <= 6
        let c = ctx("A1");
        let machine = FockMachine::new(&c, &[0], 8).unwrap();
        for m in 0..=6usize {
            let x = EWordPoly::word(vec![0; m], Scalar::one());
            let nv = machine.apply_eword(&x).unwrap();
            assert_eq!(nv.0.len(), 1);
            assert!(nv.0[&vec![m as u32]].is_one(), "m={m}");
        }
    }

    #[test]
    fn sigma_tau_closed_forms_match_mco() {
        for label in ["A1", "A2"] {
            let c = ctx(label);
            let words = c.datum.reduced_words_w0();
            let word = &words[0];
            let space = FockSpace::uniform(&c.datum, word, 4).unwrap();
            for i in 0..c.datum.rank() {
                let lambda = Weight::fundamental(c.datum.rank(), i);
                let op = sigma_mco(&c, &space, &lambda).unwrap();
                let fac = sigma_factored(&space, &lambda);
                let diag = DiagOp::Sigma(lambda.clone(), 1);
                for m in space.window_basis(2, None) {
                    let mut v = FVec::new();
                    v.insert(m.clone(), Scalar::one());
                    let got = op.apply(&space, &v).unwrap();
                    let got_fac = fac.apply(&space, &v).unwrap();
                    let expect = diag.apply(&space, &v);
                    assert_eq!(got, expect, "{label} sigma_{} at {m:?}", i + 1);
                    assert_eq!(got_fac, expect, "{label} sigma factored {}", i + 1);
                }
                let op = tau_mco(&c, &space, &lambda).unwrap();
                let fac = tau_factored(&space, &lambda);
                let diag = DiagOp::Tau(lambda.clone(), 1);
                for m in space.window_basis(2, None) {
                    let mut v = FVec::new();
                    v.insert(m.clone(), Scalar::one());
                    let got = op.apply(&space, &v).unwrap();
                    let got_fac = fac.apply(&space, &v).unwrap();
                    let expect = diag.apply(&space, &v);
                    assert_eq!(got, expect, "{label} tau_{} at {m:?}", i + 1);
                    assert_eq!(got_fac, expect, "{label} tau factored {}", i + 1);
                }
            }
        }
    }

    #[test]
    fn serre_elements_annihilated() {
        let c = ctx("A2");
        let machine = FockMachine::new(&c, &[0, 1, 0], 6).unwrap();
        for (i, j) in [(0usize, 1usize), (1, 0)] {
            let s = serre_element_e(&c.datum, i, j);
            let nv = machine.apply_eword(&s).unwrap();
            assert!(nv.0.is_empty(), "serre ({i},{j})");
        }
    }

    #[test]
    fn psi_equals_gamma_small() {
        // the intertwiner rows equal the transition rows on the worked A2 blocks
        let c = ctx("A2");
        let i = vec![0usize, 1, 0];
        let j = vec![1usize, 0, 1];
        let machine = FockMachine::new(&c, &j, 8).unwrap();
        for m in [vec![0u32, 1, 0], vec![1, 0, 1], vec![1, 1, 1]] {
            let psi = machine.psi_row(&i, &m).unwrap();
            let gamma = crate::pair::transition_gamma(&c, &i, &j, &m).unwrap();
            assert_eq!(psi, gamma, "m={m:?}");
        }
        // identity word: identity matrix rows
        let machine_i = FockMachine::new(&c, &i, 8).unwrap();
        let psi = machine_i.psi_row(&i, &[1, 0, 1]).unwrap();
        assert_eq!(psi.len(), 1);
        assert!(psi[&vec![1u32, 0, 1]].is_one());
    }

    #[test]
    fn window_violation_is_loud() {
        let c = ctx("A1");
        let machine = FockMachine::new(&c, &[0], 2).unwrap();
        let mut v = FVec::new();
        v.insert(vec![2], Scalar::one());
        let err = machine.bplus(0).apply(&machine.space, &v);
        assert!(matches!(err, Err(FockError::Window { .. })));
    }
}
