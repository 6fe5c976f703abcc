//! S = M_n(F[ξ]): solve over F(ξ), clear denominators to a, then factor
//! a = u·(1⊗c) where the rows of c are a Hermite basis of
//! M(a) = {r ∈ A^{1×n} : (1⊗r)·a⁻¹ is integral}.

use super::findim::{field_size_guard, sample_window, Extended, SearchOutcome};
use super::{Backend, Certificate, SolveRequest};
use crate::algebras::{StructAlgebra, TensorElement};
use crate::error::Error;
use crate::ground_rings::{
    FieldElement, PolyRing, RatFunc, RatFuncField, Ring, RingDescriptor, RingElement, UniPoly, UniPolyRing,
};
use crate::linalg::{self, Matrix};
use crate::sn_core::{verify_conjugator, HomSpec};

/// Outcome of the three equivalent characterizations, each checked directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma82Report {
    /// a = u·(1⊗c) with u invertible over A.
    pub factorization: bool,
    /// c ∈ I(a), and every coefficient matrix of a lies in M_n(A)·c.
    pub generator: bool,
    /// Every row of c lies in M(a), det c ≠ 0, and the Hermite basis does not
    /// depend on the order in which the membership conditions are imposed.
    pub basis: bool,
}

impl Lemma82Report {
    pub fn all(&self) -> bool {
        self.factorization && self.generator && self.basis
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PidData {
    /// Integral conjugator over the fraction field.
    pub a: TensorElement,
    /// Common denominator of a⁻¹ (a⁻¹ = v/δ).
    pub delta: UniPoly,
    /// Rows form the Hermite basis of M(a).
    pub c: Vec<Vec<UniPoly>>,
    pub u: TensorElement,
    /// Search trials over F(ξ); zero when a was supplied.
    pub trials: u32,
}

/// Row Hermite normal form over F[ξ]: upper echelon, monic pivots, entries
/// above a pivot reduced modulo it. Zero rows are dropped.
pub fn hermite_normal_form(p: &UniPolyRing, m: &Matrix<UniPoly>) -> Matrix<UniPoly> {
    let mut m = m.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    let combine = |a: &[UniPoly], s: &UniPoly, b: &[UniPoly], t: &UniPoly| -> Vec<UniPoly> {
        a.iter().zip(b).map(|(x, y)| p.add(&p.mul(s, x), &p.mul(t, y))).collect()
    };
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(first) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, first);
        for i in (r + 1)..rows {
            if m[i][col].is_zero() {
                continue;
            }
            let (x, y) = (m[r][col].clone(), m[i][col].clone());
            let (g, s, t) = p.ext_gcd(&x, &y);
            let xg = p.div_exact(&x, &g).expect("gcd divides");
            let yg = p.neg(&p.div_exact(&y, &g).expect("gcd divides"));
            // [s t; −y/g x/g] has determinant 1
            let new_r = combine(&m[r], &s, &m[i], &t);
            let new_i = combine(&m[r], &yg, &m[i], &xg);
            m[r] = new_r;
            m[i] = new_i;
        }
        let lc = m[r][col].leading().expect("pivot").clone();
        let inv = p.field.inverse(&lc).expect("nonzero");
        m[r] = m[r].iter().map(|x| p.scale(&inv, x)).collect();
        for i in 0..r {
            let (q, _) = p.div_rem(&m[i][col], &m[r][col]).expect("nonzero pivot");
            if !q.is_zero() {
                let nq = p.neg(&q);
                m[i] = combine(&m[i], &p.one(), &m[r], &nq);
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Products in B⊗A for B given by structure constants, on coordinate vectors.
fn flat_mul(alg: &StructAlgebra, p: &UniPolyRing, x: &[UniPoly], y: &[UniPoly]) -> Vec<UniPoly> {
    let mut out = vec![p.zero(); alg.dim()];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            let terms = alg.product_terms(i, j);
            if terms.is_empty() || yj.is_zero() {
                continue;
            }
            let xy = p.mul(xi, yj);
            for (m, g) in terms {
                out[*m] = p.add(&out[*m], &p.scale(g, &xy));
            }
        }
    }
    out
}

/// R⊗M_n(F[ξ]) viewed as (R⊗M_n(F))⊗F[ξ].
struct Layout<'a> {
    pr: &'a PolyRing,
    p: UniPolyRing,
    n: usize,
    d: usize,
    b: StructAlgebra,
}

impl Layout<'_> {
    fn to_flat(&self, u: &TensorElement) -> Vec<UniPoly> {
        let mut out = Vec::with_capacity(self.d * self.n * self.n);
        for x in &u.coords {
            let RingElement::Matrix(m) = x else { unreachable!("matrix coefficients") };
            for e in m.iter().flatten() {
                let RingElement::Poly(q) = e else { unreachable!("polynomial entries") };
                out.push(self.pr.to_uni(q, 0));
            }
        }
        out
    }

    fn from_flat(&self, v: &[UniPoly]) -> TensorElement {
        let n2 = self.n * self.n;
        TensorElement {
            coords: v
                .chunks(n2)
                .map(|block| {
                    RingElement::Matrix(
                        block
                            .chunks(self.n)
                            .map(|row| row.iter().map(|q| RingElement::Poly(self.pr.from_uni(q, 0))).collect())
                            .collect(),
                    )
                })
                .collect(),
        }
    }

    /// 1⊗m as a coordinate vector, m ∈ M_n(A).
    fn embed_matrix(&self, unit_r: &[FieldElement], m: &Matrix<UniPoly>) -> Vec<UniPoly> {
        let n2 = self.n * self.n;
        let mut out = vec![self.p.zero(); self.d * n2];
        for (l, ul) in unit_r.iter().enumerate() {
            for i in 0..self.n {
                for j in 0..self.n {
                    out[l * n2 + i * self.n + j] = self.p.scale(ul, &m[i][j]);
                }
            }
        }
        out
    }

    /// Coefficient matrices a_l of a = Σ r_l ⊗ a_l.
    fn coefficient_matrices(&self, v: &[UniPoly]) -> Vec<Matrix<UniPoly>> {
        v.chunks(self.n * self.n).map(|block| block.chunks(self.n).map(<[UniPoly]>::to_vec).collect()).collect()
    }
}

/// Basis of {r ∈ A^n : r·cols ≡ 0 mod δ}, imposing one column at a time.
fn membership_lattice(
    p: &UniPolyRing,
    n: usize,
    columns: &[Vec<UniPoly>],
    delta: &UniPoly,
) -> Result<Matrix<UniPoly>, Error> {
    let mut basis: Matrix<UniPoly> =
        (0..n).map(|i| (0..n).map(|j| if i == j { p.one() } else { p.zero() }).collect()).collect();
    for col in columns {
        let w: Vec<UniPoly> = basis
            .iter()
            .map(|row| {
                let s = row.iter().zip(col).fold(p.zero(), |acc, (x, y)| p.add(&acc, &p.mul(x, y)));
                p.rem(&s, delta).expect("δ ≠ 0")
            })
            .collect();
        if w.iter().all(UniPoly::is_zero) {
            continue;
        }
        // kernel of λ ↦ Σ λ_i w_i mod δ from the Hermite form of [w | I; δ | 0]
        let mut m: Matrix<UniPoly> = w
            .iter()
            .enumerate()
            .map(|(i, wi)| {
                let mut row = vec![wi.clone()];
                row.extend((0..n).map(|j| if i == j { p.one() } else { p.zero() }));
                row
            })
            .collect();
        let mut last = vec![delta.clone()];
        last.extend((0..n).map(|_| p.zero()));
        m.push(last);
        let h = hermite_normal_form(p, &m);
        let lambdas: Matrix<UniPoly> = h.iter().filter(|row| row[0].is_zero()).map(|row| row[1..].to_vec()).collect();
        if lambdas.len() != n {
            return Err(Error::InvalidHom(format!("M(a) has rank {} instead of {n}", lambdas.len())));
        }
        let next = linalg::mat_mul(p, &lambdas, &basis);
        basis = hermite_normal_form(p, &next);
    }
    if basis.len() != n {
        return Err(Error::InvalidHom(format!("M(a) has rank {} instead of {n}", basis.len())));
    }
    Ok(basis)
}

/// Clears denominators and strips the content of a vector over F(ξ).
fn integral_part(k: &RatFuncField, x: &[RatFunc]) -> Vec<UniPoly> {
    let p = k.uni();
    let den = x.iter().fold(p.one(), |acc, r| p.lcm(&acc, &r.den));
    let nums: Vec<UniPoly> =
        x.iter().map(|r| p.div_exact(&p.mul(&r.num, &den), &r.den).expect("lcm is a multiple")).collect();
    let content = nums.iter().fold(p.zero(), |acc, q| p.gcd(&acc, q));
    nums.iter().map(|q| p.div_exact(q, &content).expect("content divides")).collect()
}

/// Runs the factorization. `Err(cert)` carries an Unsupported or Exhausted
/// certificate when no integral a over the fraction field is available.
pub fn pid_factorization(req: &SolveRequest) -> Result<Result<(PidData, Lemma82Report), Certificate>, Error> {
    let phi = &req.hom;
    let unsupported = |why: &str| Ok(Err(Certificate::unsupported(Backend::PidMatrix, req.seed, why)));
    let (pr, n) = match phi.s() {
        RingDescriptor::Matrix { base, n } => match base.as_ref() {
            RingDescriptor::Poly(pr) if pr.nvars == 1 => (pr, *n),
            _ => return unsupported("coefficient ring is not M_n(F[ξ])"),
        },
        _ => return unsupported("coefficient ring is not M_n(F[ξ])"),
    };
    if phi.central_simple().is_none() {
        return unsupported("R is not central simple");
    }
    let r = phi.r();
    let f = r.field();
    let b = StructAlgebra::tensor_product(r, &StructAlgebra::matrix_algebra(f, n)?)?;
    let lay = Layout { pr, p: UniPolyRing::new(f), n, d: r.dim(), b };
    let p = &lay.p;
    let k = RatFuncField::new(f);
    let ext = Extended::new(&lay.b, k);
    let lift = |v: &[UniPoly]| -> Vec<RatFunc> { v.iter().map(|q| k.from_poly(q)).collect() };

    let (a, trials) = match &req.presentation {
        Some(a) => {
            if let Err(idx) = phi.intertwines(a) {
                return Err(Error::InvalidHom(format!("the presentation fails φ(x)·a = a·x at {}", r.labels()[idx])));
            }
            (lay.to_flat(a), 0)
        }
        None => {
            if let Err(why) = field_size_guard(f, lay.b.dim()) {
                return unsupported(&why);
            }
            let tr = phi.ring();
            let iota: Vec<Vec<RatFunc>> = (0..r.dim()).map(|i| lift(&lay.to_flat(&tr.basis(i)))).collect();
            let images: Vec<Vec<RatFunc>> = phi.images().iter().map(|u| lift(&lay.to_flat(u))).collect();
            let basis = ext.intertwiners(&iota, &images);
            match ext.search(&basis, req.seed, req.trials, sample_window(lay.b.dim())) {
                SearchOutcome::Found { c, trials, .. } => (integral_part(&k, &c), trials),
                SearchOutcome::Empty => {
                    return Ok(Err(Certificate::exhausted(
                        Backend::PidMatrix,
                        req.seed,
                        0,
                        "the intertwiner space over F(ξ) is zero",
                    )))
                }
                SearchOutcome::Exhausted => {
                    return Ok(Err(Certificate::exhausted(
                        Backend::PidMatrix,
                        req.seed,
                        req.trials,
                        "no invertible intertwiner over F(ξ) within the trial bound",
                    )))
                }
            }
        }
    };
    let Some(a_inv) = ext.invert(&lift(&a)) else {
        return Err(Error::InvalidHom("the presentation a is not invertible over F(ξ)".into()));
    };
    let delta = a_inv.iter().fold(p.one(), |acc, r| p.lcm(&acc, &r.den));
    let v: Vec<UniPoly> =
        a_inv.iter().map(|x| p.div_exact(&p.mul(&x.num, &delta), &x.den).expect("lcm is a multiple")).collect();

    // column t of the membership system: coordinate t of (1⊗e_1j)·v
    let unit_r = r.unit().clone();
    let unit_row = |j: usize| -> Vec<UniPoly> {
        let mut e = vec![vec![p.zero(); n]; n];
        e[0][j] = p.one();
        flat_mul(&lay.b, p, &lay.embed_matrix(&unit_r, &e), &v)
    };
    let rows: Vec<Vec<UniPoly>> = (0..n).map(unit_row).collect();
    let columns: Vec<Vec<UniPoly>> =
        (0..lay.b.dim()).map(|t| rows.iter().map(|row| p.rem(&row[t], &delta).expect("δ ≠ 0")).collect()).collect();
    let c = membership_lattice(p, n, &columns, &delta)?;
    let reversed: Vec<Vec<UniPoly>> = columns.iter().rev().cloned().collect();
    let c_rev = membership_lattice(p, n, &reversed, &delta)?;

    let det_c = linalg::det(p, &c);
    let adj_c = linalg::adjugate(p, &c);
    let mut u_flat = Vec::with_capacity(a.len());
    let mut divisible = true;
    for al in lay.coefficient_matrices(&a) {
        for row in linalg::mat_mul(p, &al, &adj_c) {
            for x in row {
                match p.div_exact(&x, &det_c) {
                    Some(q) => u_flat.push(q),
                    None => {
                        divisible = false;
                        u_flat.push(p.zero());
                    }
                }
            }
        }
    }
    if !divisible {
        return Err(Error::Inconsistent("a coefficient of a is not in M_n(A)·c".into()));
    }
    let u = lay.from_flat(&u_flat);

    let report = lemma_82_checks(phi, &lay, &a, &v, &delta, &c, &c_rev, &u);
    let data = PidData { a: lay.from_flat(&a), delta, c, u, trials };
    Ok(Ok((data, report)))
}

#[allow(clippy::too_many_arguments)]
fn lemma_82_checks(
    phi: &HomSpec,
    lay: &Layout<'_>,
    a: &[UniPoly],
    v: &[UniPoly],
    delta: &UniPoly,
    c: &Matrix<UniPoly>,
    c_rev: &Matrix<UniPoly>,
    u: &TensorElement,
) -> Lemma82Report {
    let p = &lay.p;
    let n = lay.n;
    let unit_r = phi.r().unit().clone();
    let tr = phi.ring();

    // (i): a = u(1⊗c), u invertible
    let uc = flat_mul(&lay.b, p, &lay.to_flat(u), &lay.embed_matrix(&unit_r, c));
    let factorization = uc == a && tr.invert(u).is_ok();

    // (ii): (1⊗c)·v ≡ 0 mod δ, and a_l·adj(c) ≡ 0 mod det c
    let cv = flat_mul(&lay.b, p, &lay.embed_matrix(&unit_r, c), v);
    let in_ideal = cv.iter().all(|x| p.divides(delta, x));
    let det_c = linalg::det(p, c);
    let adj_c = linalg::adjugate(p, c);
    let generates = lay
        .coefficient_matrices(a)
        .iter()
        .all(|al| linalg::mat_mul(p, al, &adj_c).iter().flatten().all(|x| p.divides(&det_c, x)));
    let generator = in_ideal && generates;

    // (iii): rows of c in M(a), independence, order-independent Hermite basis
    let rows_in = (0..n).all(|i| {
        let mut m = vec![vec![p.zero(); n]; n];
        m[0] = c[i].clone();
        flat_mul(&lay.b, p, &lay.embed_matrix(&unit_r, &m), v).iter().all(|x| p.divides(delta, x))
    });
    let basis = rows_in && !det_c.is_zero() && c == c_rev;

    Lemma82Report { factorization, generator, basis }
}

pub fn solve_pid_module(req: &SolveRequest) -> Result<Certificate, Error> {
    let (data, report) = match pid_factorization(req)? {
        Ok(x) => x,
        Err(cert) => return Ok(cert),
    };
    if !report.all() {
        return Err(Error::Inconsistent(format!("factorization checks disagree: {report:?}")));
    }
    let check = match verify_conjugator(&req.hom, &data.u) {
        Ok(check) => check,
        Err(Error::NotInvertible { witness }) => {
            return Err(Error::Inconsistent(format!(
                "u = a·(1⊗c)⁻¹ is not invertible (determinant {})",
                witness.unwrap_or_default()
            )))
        }
        Err(e) => return Err(e),
    };
    let mut cert = Certificate::inner(Backend::PidMatrix, req.seed, check, data.trials);
    let p = UniPolyRing::new(req.hom.r().field());
    let pr = PolyRing::new(p.field, 1);
    let show = |q: &UniPoly| RingDescriptor::Poly(pr.clone()).render(&RingElement::Poly(pr.from_uni(q, 0)));
    cert.trace.push(format!("common denominator of a⁻¹: {}", show(&data.delta)));
    cert.trace.push(format!(
        "Hermite basis of M(a): [{}]",
        data.c
            .iter()
            .map(|row| format!("[{}]", row.iter().map(show).collect::<Vec<_>>().join(", ")))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    cert.trace.push("factorization, generator and basis characterizations agree".into());
    Ok(cert)
}
