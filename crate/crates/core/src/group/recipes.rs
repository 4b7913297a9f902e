//! Declarative group recipes and their elaboration into explicit generators.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{GroupError, MatrixGroup};
use crate::gf::{factorize, Felt, FieldCtx};
use crate::linalg::MatrixFq;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CyclicEmbedding {
    /// 1x1 matrix [zeta], order dividing q - 1.
    Scalar,
    /// diag(zeta, zeta^-1) in SL_2, order dividing q - 1.
    Diagonal,
    /// Unipotent Jordan block, order a power of p.
    Jordan,
    /// Nonsplit torus element of SL_2, order dividing q + 1.
    Torus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Generators {
        matrices: Vec<String>,
    },
    Cyclic {
        order: u64,
        embedding: CyclicEmbedding,
    },
    /// Generalized quaternion group of the given order inside SL_2(q), q odd.
    Quaternion {
        order: u64,
    },
    /// Dihedral group of the given order; in SL_2(q) for q even, GL_2(q) otherwise.
    Dihedral {
        order: u64,
    },
    /// SL_n over the subfield of degree `subfield_degree` (default: the whole field).
    Sl {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        subfield_degree: Option<u32>,
    },
    /// SU_3(q0) inside SL_3(q0^2); the field degree must be even.
    Su3,
    /// SO_3(q) as the symmetric square of GL_2, q odd.
    So3,
    /// inner wr S_r acting on r blocks of size t.
    WreathBlock {
        t: usize,
        r: usize,
        inner: Box<GroupSpec>,
    },
    CentralProductTensor {
        left: Box<GroupSpec>,
        right: Box<GroupSpec>,
    },
    /// Normalizer of an extraspecial r-group of order r^(1+2t); t = 1, r in {2, 3}.
    ExtraspecialNormalizer {
        r: u32,
        t: u32,
        #[serde(default)]
        full: bool,
    },
    TwistedTensor {
        factors: Vec<GroupSpec>,
        twists: Vec<u32>,
        perm: Vec<usize>,
    },
}

impl GroupSpec {
    pub fn tag(&self) -> &'static str {
        match self {
            GroupSpec::Generators { .. } => "generators",
            GroupSpec::Cyclic { .. } => "cyclic",
            GroupSpec::Quaternion { .. } => "quaternion",
            GroupSpec::Dihedral { .. } => "dihedral",
            GroupSpec::Sl { .. } => "sl",
            GroupSpec::Su3 => "su3",
            GroupSpec::So3 => "so3",
            GroupSpec::WreathBlock { .. } => "wreath_block",
            GroupSpec::CentralProductTensor { .. } => "central_product_tensor",
            GroupSpec::ExtraspecialNormalizer { .. } => "extraspecial_normalizer",
            GroupSpec::TwistedTensor { .. } => "twisted_tensor",
        }
    }

    /// Explicit generators and the matrix dimension.
    pub fn generators(&self, ctx: &Arc<FieldCtx>) -> Result<(usize, Vec<MatrixFq>), GroupError> {
        match self {
            GroupSpec::Generators { matrices } => {
                let gens = matrices
                    .iter()
                    .map(|s| MatrixFq::parse_text(ctx, s))
                    .collect::<Result<Vec<_>, _>>()?;
                let Some(first) = gens.first() else {
                    return Err(unsupported("generators", "empty list; give the dimension separately"));
                };
                Ok((first.rows(), gens))
            }
            GroupSpec::Cyclic { order, embedding } => cyclic(ctx, *order, *embedding),
            GroupSpec::Quaternion { order } => quaternion(ctx, *order),
            GroupSpec::Dihedral { order } => dihedral(ctx, *order),
            GroupSpec::Sl { n, subfield_degree } => {
                Ok((*n, sl_generators(ctx, *n, subfield_degree.unwrap_or(ctx.m()))?))
            }
            GroupSpec::Su3 => Ok((3, su3(ctx)?)),
            GroupSpec::So3 => Ok((3, so3(ctx)?)),
            GroupSpec::WreathBlock { t, r, inner } => wreath(ctx, *t, *r, inner),
            GroupSpec::CentralProductTensor { left, right } => {
                let (t, lg) = left.generators(ctx)?;
                let (r, rg) = right.generators(ctx)?;
                let (it, ir) = (MatrixFq::identity(ctx, t), MatrixFq::identity(ctx, r));
                let mut gens = Vec::new();
                for g in &lg {
                    gens.push(g.kron(&ir)?);
                }
                for h in &rg {
                    gens.push(it.kron(h)?);
                }
                Ok((t * r, gens))
            }
            GroupSpec::ExtraspecialNormalizer { r, t, full } => extraspecial(ctx, *r, *t, *full),
            GroupSpec::TwistedTensor {
                factors,
                twists,
                perm,
            } => {
                let parts = factors
                    .iter()
                    .map(|f| f.generators(ctx))
                    .collect::<Result<Vec<_>, _>>()?;
                twisted_tensor_generators(ctx, &parts, twists, perm)
            }
        }
    }
}

/// Enumerates the group described by a recipe.
pub fn elaborate(spec: &GroupSpec, ctx: &Arc<FieldCtx>, cap: usize) -> Result<MatrixGroup, GroupError> {
    let (dim, gens) = spec.generators(ctx)?;
    MatrixGroup::generate(ctx, dim, gens, cap)
}

fn unsupported(recipe: &'static str, message: impl Into<String>) -> GroupError {
    GroupError::UnsupportedParams {
        recipe,
        message: message.into(),
    }
}

fn cyclic(
    ctx: &Arc<FieldCtx>,
    k: u64,
    embedding: CyclicEmbedding,
) -> Result<(usize, Vec<MatrixFq>), GroupError> {
    let q = ctx.q() as u64;
    match embedding {
        CyclicEmbedding::Scalar => {
            let z = ctx
                .root_of_unity(k)
                .ok_or_else(|| unsupported("cyclic", format!("{k} does not divide q - 1")))?;
            Ok((1, vec![MatrixFq::diagonal(ctx, &[z])]))
        }
        CyclicEmbedding::Diagonal => {
            let z = ctx
                .root_of_unity(k)
                .ok_or_else(|| unsupported("cyclic", format!("{k} does not divide q - 1")))?;
            let zi = ctx.inv(z).expect("nonzero");
            Ok((2, vec![MatrixFq::diagonal(ctx, &[z, zi])]))
        }
        CyclicEmbedding::Jordan => {
            let p = ctx.p() as u64;
            let mut a = 0;
            let mut v = k;
            while v > 1 && v % p == 0 {
                v /= p;
                a += 1;
            }
            if v != 1 || a == 0 {
                return Err(unsupported("cyclic", format!("{k} is not a positive power of p = {p}")));
            }
            let size = p.pow(a - 1) as usize + 1;
            let j = MatrixFq::from_fn(ctx, size, size, |i, c| {
                if i == c || c == i + 1 {
                    Felt::ONE
                } else {
                    Felt::ZERO
                }
            });
            Ok((size, vec![j]))
        }
        CyclicEmbedding::Torus => {
            if k == 0 || (q + 1) % k != 0 {
                return Err(unsupported("cyclic", format!("{k} does not divide q + 1")));
            }
            let c = nonsplit_torus(ctx);
            Ok((2, vec![c.pow((q + 1) / k)]))
        }
    }
}

fn absolute_trace(ctx: &FieldCtx, a: Felt) -> Felt {
    let mut acc = Felt::ZERO;
    let mut x = a;
    for _ in 0..ctx.m() {
        acc = ctx.add(acc, x);
        x = ctx.pow(x, ctx.p() as u64);
    }
    acc
}

/// Companion matrix of x^2 - s x + 1 generating a cyclic subgroup of order q + 1.
pub(crate) fn nonsplit_torus(ctx: &Arc<FieldCtx>) -> MatrixFq {
    let q = ctx.q() as u64;
    let primes: Vec<u64> = factorize(q + 1).into_iter().map(|(l, _)| l).collect();
    let four = ctx.from_int(4);
    for s in ctx.elements() {
        let irreducible = if ctx.p() == 2 {
            !s.is_zero() && {
                let s2 = ctx.mul(s, s);
                absolute_trace(ctx, ctx.inv(s2).expect("nonzero")) == Felt::ONE
            }
        } else {
            let disc = ctx.sub(ctx.mul(s, s), four);
            !disc.is_zero() && ctx.sqrt(disc).is_none()
        };
        if !irreducible {
            continue;
        }
        let c = MatrixFq::new(ctx, 2, 2, vec![Felt::ZERO, ctx.neg(Felt::ONE), Felt::ONE, s])
            .expect("2x2");
        if primes.iter().all(|&l| !c.pow((q + 1) / l).is_identity()) {
            return c;
        }
    }
    unreachable!("F_q^2 has norm-one elements of order q + 1")
}

/// Some W with W c = c^-1 W and det W = target.
fn inverting_element(ctx: &Arc<FieldCtx>, c: &MatrixFq, target: Felt) -> Option<MatrixFq> {
    let ci = c.inverse()?;
    // unknown W[a][b] at column 2a + b; equation row 2i + l
    let sys = MatrixFq::from_fn(ctx, 4, 4, |row, col| {
        let (i, l) = (row / 2, row % 2);
        let (a, b) = (col / 2, col % 2);
        let mut v = Felt::ZERO;
        if a == i {
            v = ctx.add(v, c.get(b, l));
        }
        if b == l {
            v = ctx.sub(v, ci.get(i, a));
        }
        v
    });
    let kernel = sys.kernel();
    let basis = kernel.basis();
    let q = ctx.q() as u64;
    let combos = q.checked_pow(basis.len() as u32).unwrap_or(u64::MAX).min(1 << 22);
    for e in 1..combos {
        let mut w = [Felt::ZERO; 4];
        let mut v = e;
        for b in basis {
            let coef = ctx.from_raw((v % q) as u32).expect("below q");
            v /= q;
            for (x, &y) in w.iter_mut().zip(b) {
                *x = ctx.add(*x, ctx.mul(coef, y));
            }
        }
        let m = MatrixFq::new(ctx, 2, 2, w.to_vec()).expect("2x2");
        if m.det() == target {
            return Some(m);
        }
    }
    None
}

fn torus_and_inverter(
    ctx: &Arc<FieldCtx>,
    recipe: &'static str,
    k: u64,
    det: Felt,
) -> Result<(MatrixFq, MatrixFq), GroupError> {
    let q = ctx.q() as u64;
    if k == 0 {
        return Err(unsupported(recipe, "order must be positive"));
    }
    if (q - 1) % k == 0 {
        let z = ctx.root_of_unity(k).expect("k divides q - 1");
        let t = MatrixFq::diagonal(ctx, &[z, ctx.inv(z).expect("nonzero")]);
        let w = MatrixFq::new(ctx, 2, 2, vec![Felt::ZERO, Felt::ONE, ctx.neg(det), Felt::ZERO])
            .expect("2x2");
        return Ok((t, w));
    }
    if (q + 1) % k == 0 {
        let c = nonsplit_torus(ctx);
        let w = inverting_element(ctx, &c, det)
            .ok_or_else(|| unsupported(recipe, "no inverting element found"))?;
        return Ok((c.pow((q + 1) / k), w));
    }
    Err(unsupported(recipe, format!("{k} divides neither q - 1 nor q + 1")))
}

fn quaternion(ctx: &Arc<FieldCtx>, order: u64) -> Result<(usize, Vec<MatrixFq>), GroupError> {
    if ctx.p() == 2 {
        return Err(unsupported("quaternion", "q must be odd"));
    }
    if order % 4 != 0 {
        return Err(unsupported("quaternion", "order must be divisible by 4"));
    }
    let (t, w) = torus_and_inverter(ctx, "quaternion", order / 2, Felt::ONE)?;
    Ok((2, vec![t, w]))
}

fn dihedral(ctx: &Arc<FieldCtx>, order: u64) -> Result<(usize, Vec<MatrixFq>), GroupError> {
    if order % 2 != 0 {
        return Err(unsupported("dihedral", "order must be even"));
    }
    let minus_one = ctx.neg(Felt::ONE);
    let (t, w) = torus_and_inverter(ctx, "dihedral", order / 2, minus_one)?;
    Ok((2, vec![t, w]))
}

/// Generators of the subfield of degree m0 over F_p: 1, b, .., b^(m0-1).
pub(crate) fn subfield_basis(ctx: &FieldCtx, m0: u32) -> Option<Vec<Felt>> {
    if m0 == 0 || ctx.m() % m0 != 0 {
        return None;
    }
    let q0 = (ctx.p() as u64).pow(m0);
    let b = ctx.root_of_unity(q0 - 1)?;
    Some((0..m0).map(|i| ctx.pow(b, i as u64)).collect())
}

fn elementary(ctx: &Arc<FieldCtx>, n: usize, i: usize, j: usize, a: Felt) -> MatrixFq {
    let mut m = MatrixFq::identity(ctx, n);
    m.set(i, j, a);
    m
}

/// Adjacent root elements of SL_n over the subfield of degree m0.
pub fn sl_generators(ctx: &Arc<FieldCtx>, n: usize, m0: u32) -> Result<Vec<MatrixFq>, GroupError> {
    if n == 0 {
        return Err(unsupported("sl", "n must be positive"));
    }
    let basis = subfield_basis(ctx, m0)
        .ok_or_else(|| unsupported("sl", format!("{m0} does not divide the field degree")))?;
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        for &a in &basis {
            gens.push(elementary(ctx, n, i, i + 1, a));
            gens.push(elementary(ctx, n, i + 1, i, a));
        }
    }
    Ok(gens)
}

fn antidiag(ctx: &Arc<FieldCtx>, entries: &[Felt]) -> MatrixFq {
    let n = entries.len();
    MatrixFq::from_fn(ctx, n, n, |i, j| if i + j == n - 1 { entries[i] } else { Felt::ZERO })
}

fn su3(ctx: &Arc<FieldCtx>) -> Result<Vec<MatrixFq>, GroupError> {
    if ctx.m() % 2 != 0 {
        return Err(unsupported("su3", "field degree must be even"));
    }
    let h = ctx.m() / 2;
    let bar = |x: Felt| ctx.frobenius(x, h).expect("h <= m");
    let u = |a: Felt, b: Felt| {
        MatrixFq::new(
            ctx,
            3,
            3,
            vec![
                Felt::ONE,
                a,
                b,
                Felt::ZERO,
                Felt::ONE,
                ctx.neg(bar(a)),
                Felt::ZERO,
                Felt::ZERO,
                Felt::ONE,
            ],
        )
        .expect("3x3")
    };
    let mut gens = Vec::new();
    for a in ctx.prime_basis() {
        let n = ctx.mul(a, bar(a));
        let b = ctx
            .elements()
            .find(|&b| ctx.add(ctx.add(b, bar(b)), n).is_zero())
            .expect("trace is onto");
        gens.push(u(a, b));
    }
    let b0 = ctx
        .elements()
        .find(|&b| !b.is_zero() && ctx.add(b, bar(b)).is_zero())
        .expect("trace has a kernel");
    for c in subfield_basis(ctx, h).expect("h divides m") {
        gens.push(u(Felt::ZERO, ctx.mul(c, b0)));
    }
    gens.push(antidiag(ctx, &[Felt::ONE, ctx.neg(Felt::ONE), Felt::ONE]));
    let j = antidiag(ctx, &[Felt::ONE; 3]);
    for g in &gens {
        let gbar_t = g.map_indexed(|_, _, x| bar(x)).transpose();
        debug_assert_eq!(&(&gbar_t * &j) * g, j, "generator preserves the hermitian form");
        debug_assert_eq!(g.det(), Felt::ONE);
    }
    Ok(gens)
}

/// Action of a 2x2 matrix on binary quadratic forms.
pub fn sym2(g: &MatrixFq) -> MatrixFq {
    let ctx = g.ctx();
    let (a, b, c, d) = (g.get(0, 0), g.get(0, 1), g.get(1, 0), g.get(1, 1));
    let two = ctx.from_int(2);
    let m = |x, y| ctx.mul(x, y);
    let cols = [
        [m(a, a), m(two, m(a, c)), m(c, c)],
        [m(a, b), ctx.add(m(a, d), m(b, c)), m(c, d)],
        [m(b, b), m(two, m(b, d)), m(d, d)],
    ];
    MatrixFq::from_fn(ctx, 3, 3, |i, j| cols[j][i])
}

fn so3(ctx: &Arc<FieldCtx>) -> Result<Vec<MatrixFq>, GroupError> {
    if ctx.p() == 2 {
        return Err(unsupported("so3", "q must be odd"));
    }
    let mut gens: Vec<MatrixFq> = sl_generators(ctx, 2, ctx.m())?.iter().map(sym2).collect();
    let w = ctx.omega();
    let d = MatrixFq::diagonal(ctx, &[w, Felt::ONE]);
    gens.push(sym2(&d).scale(ctx.inv(w).expect("nonzero")));
    Ok(gens)
}

fn block_permutation(ctx: &Arc<FieldCtx>, t: usize, perm: &[usize]) -> MatrixFq {
    let n = t * perm.len();
    MatrixFq::from_fn(ctx, n, n, |row, col| {
        if row % t == col % t && row / t == perm[col / t] {
            Felt::ONE
        } else {
            Felt::ZERO
        }
    })
}

fn wreath(
    ctx: &Arc<FieldCtx>,
    t: usize,
    r: usize,
    inner: &GroupSpec,
) -> Result<(usize, Vec<MatrixFq>), GroupError> {
    if r == 0 {
        return Err(unsupported("wreath_block", "r must be positive"));
    }
    let (d, ig) = inner.generators(ctx)?;
    if d != t {
        return Err(unsupported("wreath_block", format!("inner group has degree {d}, expected {t}")));
    }
    let mut gens = Vec::new();
    let rest = MatrixFq::identity(ctx, t * (r - 1));
    for g in &ig {
        gens.push(MatrixFq::block_diag(ctx, &[g.clone(), rest.clone()]));
    }
    if r >= 2 {
        let mut swap: Vec<usize> = (0..r).collect();
        swap.swap(0, 1);
        gens.push(block_permutation(ctx, t, &swap));
    }
    if r >= 3 {
        let cycle: Vec<usize> = (0..r).map(|i| (i + 1) % r).collect();
        gens.push(block_permutation(ctx, t, &cycle));
    }
    Ok((t * r, gens))
}

fn extraspecial(
    ctx: &Arc<FieldCtx>,
    r: u32,
    t: u32,
    full: bool,
) -> Result<(usize, Vec<MatrixFq>), GroupError> {
    const RECIPE: &str = "extraspecial_normalizer";
    if t != 1 {
        return Err(unsupported(RECIPE, "only t = 1 is supported"));
    }
    match r {
        2 => {
            if ctx.p() == 2 {
                return Err(unsupported(RECIPE, "r = 2 needs odd characteristic"));
            }
            let (i, j, k) = quaternion_units(ctx);
            let one = MatrixFq::identity(ctx, 2);
            let half = ctx.inv(ctx.from_int(2)).expect("odd characteristic");
            let minus_one = one.scale(ctx.neg(Felt::ONE));
            let w = sum(&[&minus_one, &i, &j, &k]).scale(half);
            let mut gens = vec![i.clone(), j, w];
            if full {
                let s = ctx
                    .sqrt(ctx.from_int(2))
                    .ok_or_else(|| unsupported(RECIPE, "2 is not a square in F_q"))?;
                gens.push(sum(&[&one, &i]).scale(ctx.inv(s).expect("nonzero")));
            }
            Ok((2, gens))
        }
        3 => {
            let eps = ctx
                .root_of_unity(3)
                .ok_or_else(|| unsupported(RECIPE, "r = 3 needs 3 | q - 1"))?;
            let e = |k: u64| ctx.pow(eps, k);
            let x = MatrixFq::diagonal(ctx, &[Felt::ONE, e(1), e(2)]);
            let y = MatrixFq::from_ints(ctx, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
            let scale = ctx.inv(ctx.sub(Felt::ONE, eps)).expect("eps != 1");
            let f = MatrixFq::from_fn(ctx, 3, 3, |i, j| ctx.mul(e((i * j) as u64), scale));
            let d = MatrixFq::diagonal(ctx, &[Felt::ONE, Felt::ONE, eps]);
            let tt = &(&(&f * &d.inverse().expect("invertible")) * &f.inverse().expect("invertible")) * &d;
            let mut gens = vec![x, y, f, tt];
            if full {
                let z9 = ctx
                    .root_of_unity(9)
                    .ok_or_else(|| unsupported(RECIPE, "full normalizer needs 9 | q - 1"))?;
                let target = ctx.inv(eps).expect("nonzero");
                let mu = (0..9)
                    .map(|k| ctx.pow(z9, k))
                    .find(|&m| ctx.pow(m, 3) == target)
                    .expect("cube roots of unity are cubes in the 9-torsion");
                gens.push(d.scale(mu));
            }
            Ok((3, gens))
        }
        _ => Err(unsupported(RECIPE, format!("r = {r} is not supported"))),
    }
}

fn sum(ms: &[&MatrixFq]) -> MatrixFq {
    ms[1..]
        .iter()
        .fold(ms[0].clone(), |acc, m| acc.checked_add(m).expect("same shape"))
}

/// Matrices i, j, k in SL_2(q), q odd, with i^2 = j^2 = -1 and k = ij.
pub(crate) fn quaternion_units(ctx: &Arc<FieldCtx>) -> (MatrixFq, MatrixFq, MatrixFq) {
    let minus_one = ctx.neg(Felt::ONE);
    let (a, b) = ctx
        .elements()
        .find_map(|a| {
            let rhs = ctx.sub(minus_one, ctx.mul(a, a));
            ctx.sqrt(rhs).map(|b| (a, b))
        })
        .expect("-1 is a sum of two squares in every finite field");
    let i = MatrixFq::new(ctx, 2, 2, vec![Felt::ZERO, Felt::ONE, minus_one, Felt::ZERO]).expect("2x2");
    let j = MatrixFq::new(ctx, 2, 2, vec![a, b, b, ctx.neg(a)]).expect("2x2");
    let k = &i * &j;
    (i, j, k)
}

/// Generators of a twisted tensor product of matrix groups of equal degree.
pub fn twisted_tensor_generators(
    ctx: &Arc<FieldCtx>,
    parts: &[(usize, Vec<MatrixFq>)],
    twists: &[u32],
    perm: &[usize],
) -> Result<(usize, Vec<MatrixFq>), GroupError> {
    const RECIPE: &str = "twisted_tensor";
    let t = parts.len();
    if t == 0 || twists.len() != t || perm.len() != t {
        return Err(unsupported(RECIPE, "factors, twists and perm must have equal nonzero length"));
    }
    let mut seen = vec![false; t];
    for &i in perm {
        if i >= t || std::mem::replace(&mut seen[i], true) {
            return Err(unsupported(RECIPE, "perm is not a permutation"));
        }
    }
    if let Some(&j) = twists.iter().find(|&&j| j > ctx.m()) {
        return Err(unsupported(RECIPE, format!("twist {j} exceeds the field degree")));
    }
    let r = parts[0].0;
    if parts.iter().any(|(d, _)| *d != r) {
        return Err(unsupported(RECIPE, "factor degrees differ"));
    }
    let id = MatrixFq::identity(ctx, r);
    let mut gens = Vec::new();
    for (slot, (_, fg)) in parts.iter().enumerate() {
        for g in fg {
            let tw = g.frobenius(twists[slot])?;
            gens.push(slot_operator(&id, &tw, slot, t)?);
        }
    }
    if perm.iter().enumerate().any(|(i, &j)| i != j) {
        gens.push(tensor_permutation(ctx, r, perm));
    }
    Ok((r.pow(t as u32), gens))
}

/// I (x) .. (x) g (x) .. (x) I with g in position `slot` of `t`.
pub(crate) fn slot_operator(
    id: &MatrixFq,
    g: &MatrixFq,
    slot: usize,
    t: usize,
) -> Result<MatrixFq, GroupError> {
    let mut acc = if slot == 0 { g.clone() } else { id.clone() };
    for i in 1..t {
        acc = acc.kron(if i == slot { g } else { id })?;
    }
    Ok(acc)
}

/// v_1 (x) .. (x) v_t  ->  v_perm(1) (x) .. (x) v_perm(t).
pub(crate) fn tensor_permutation(ctx: &Arc<FieldCtx>, r: usize, perm: &[usize]) -> MatrixFq {
    let t = perm.len();
    let n = r.pow(t as u32);
    let digits = |mut x: usize| {
        let mut d = vec![0; t];
        for i in (0..t).rev() {
            d[i] = x % r;
            x /= r;
        }
        d
    };
    MatrixFq::from_fn(ctx, n, n, |row, col| {
        let a = digits(col);
        let b = digits(row);
        if (0..t).all(|i| b[i] == a[perm[i]]) {
            Felt::ONE
        } else {
            Felt::ZERO
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_new;
    use crate::group::{is_subgroup, DEFAULT_CAP};

    fn order_of(spec: &GroupSpec, p: u64, m: u32) -> usize {
        let ctx = field_new(p, m).unwrap();
        elaborate(spec, &ctx, DEFAULT_CAP).unwrap().order()
    }

    // |SL_n(q)| = q^(n(n-1)/2) prod_{i=2}^n (q^i - 1)
    fn sl_order(n: u32, q: u64) -> u64 {
        q.pow(n * (n - 1) / 2) * (2..=n).map(|i| q.pow(i) - 1).product::<u64>()
    }

    #[test]
    fn special_linear_orders() {
        for (p, m) in [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2)] {
            let q = (p as u64).pow(m);
            assert_eq!(order_of(&GroupSpec::Sl { n: 2, subfield_degree: None }, p, m) as u64, sl_order(2, q));
        }
        assert_eq!(order_of(&GroupSpec::Sl { n: 3, subfield_degree: None }, 2, 1) as u64, sl_order(3, 2));
        assert_eq!(order_of(&GroupSpec::Sl { n: 3, subfield_degree: None }, 3, 1) as u64, sl_order(3, 3));
        let sub = GroupSpec::Sl { n: 2, subfield_degree: Some(1) };
        assert_eq!(order_of(&sub, 3, 2), 24);
        assert_eq!(order_of(&sub, 2, 3), 6);
    }

    #[test]
    fn quaternion_and_dihedral_orders() {
        for (p, m) in [(3, 1), (5, 1), (7, 1), (11, 1), (3, 2), (29, 1)] {
            let q = (p as u64).pow(m);
            for k in [q - 1, q + 1] {
                if k % 2 == 0 {
                    assert_eq!(order_of(&GroupSpec::Quaternion { order: 2 * k }, p, m) as u64, 2 * k);
                }
                assert_eq!(order_of(&GroupSpec::Dihedral { order: 2 * k }, p, m) as u64, 2 * k);
            }
        }
        for (p, m) in [(2, 2), (2, 3), (2, 4)] {
            let q = 1u64 << m;
            let ctx = field_new(p, m).unwrap();
            for k in [q - 1, q + 1] {
                let g = elaborate(&GroupSpec::Dihedral { order: 2 * k }, &ctx, DEFAULT_CAP).unwrap();
                assert_eq!(g.order() as u64, 2 * k);
                assert!(g.generators().iter().all(|x| x.det() == Felt::ONE));
            }
        }
        let f7 = field_new(7, 1).unwrap();
        assert!(elaborate(&GroupSpec::Quaternion { order: 20 }, &f7, DEFAULT_CAP).is_err());
    }

    #[test]
    fn cyclic_embeddings() {
        for p in [2u64, 3, 5, 7] {
            let spec = GroupSpec::Cyclic { order: p, embedding: CyclicEmbedding::Jordan };
            assert_eq!(order_of(&spec, p, 1) as u64, p);
        }
        let spec = GroupSpec::Cyclic { order: 9, embedding: CyclicEmbedding::Jordan };
        let ctx = field_new(3, 1).unwrap();
        let (dim, _) = spec.generators(&ctx).unwrap();
        assert_eq!(dim, 4);
        assert_eq!(order_of(&spec, 3, 1), 9);
        assert_eq!(order_of(&GroupSpec::Cyclic { order: 8, embedding: CyclicEmbedding::Torus }, 7, 1), 8);
        assert_eq!(order_of(&GroupSpec::Cyclic { order: 6, embedding: CyclicEmbedding::Scalar }, 7, 1), 6);
        assert_eq!(order_of(&GroupSpec::Cyclic { order: 3, embedding: CyclicEmbedding::Diagonal }, 7, 1), 3);
    }

    #[test]
    fn unitary_and_orthogonal_orders() {
        assert_eq!(order_of(&GroupSpec::Su3, 2, 2), 216);
        assert_eq!(order_of(&GroupSpec::Su3, 3, 2), 6048);
        for q in [3u64, 5, 7] {
            assert_eq!(order_of(&GroupSpec::So3, q, 1) as u64, q * (q * q - 1));
        }
        assert!(field_new(3, 1).map(|c| GroupSpec::Su3.generators(&c).is_err()).unwrap());
    }

    #[test]
    fn wreath_and_tensor() {
        let inner = GroupSpec::Cyclic { order: 6, embedding: CyclicEmbedding::Scalar };
        let w = GroupSpec::WreathBlock { t: 1, r: 2, inner: Box::new(inner.clone()) };
        assert_eq!(order_of(&w, 7, 1), 72);
        let w3 = GroupSpec::WreathBlock { t: 1, r: 3, inner: Box::new(inner) };
        assert_eq!(order_of(&w3, 7, 1), 216 * 6);
        let sl2 = GroupSpec::Sl { n: 2, subfield_degree: None };
        let cp = GroupSpec::CentralProductTensor { left: Box::new(sl2.clone()), right: Box::new(sl2) };
        // SL_2(3) o SL_2(3): the centres are identified
        assert_eq!(order_of(&cp, 3, 1), 24 * 24 / 2);
    }

    #[test]
    fn extraspecial_normalizers() {
        let two_t = GroupSpec::ExtraspecialNormalizer { r: 2, t: 1, full: false };
        let two_o = GroupSpec::ExtraspecialNormalizer { r: 2, t: 1, full: true };
        for p in [5u64, 7, 11, 13, 29, 31] {
            assert_eq!(order_of(&two_t, p, 1), 24);
        }
        assert_eq!(order_of(&two_o, 7, 1), 48);
        assert_eq!(order_of(&two_o, 31, 1), 48);
        let f13 = field_new(13, 1).unwrap();
        assert!(two_o.generators(&f13).is_err());
        let three = GroupSpec::ExtraspecialNormalizer { r: 3, t: 1, full: false };
        let three_full = GroupSpec::ExtraspecialNormalizer { r: 3, t: 1, full: true };
        assert_eq!(order_of(&three, 7, 1), 216);
        assert_eq!(order_of(&three, 13, 1), 216);
        assert_eq!(order_of(&three_full, 19, 1), 648);
        let ctx = field_new(7, 1).unwrap();
        let g = elaborate(&three, &ctx, DEFAULT_CAP).unwrap();
        assert!(g.generators().iter().all(|x| x.det() == Felt::ONE));
        let sl3 = elaborate(&GroupSpec::Sl { n: 3, subfield_degree: None }, &field_new(2, 1).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(sl3.order(), 168);
    }

    #[test]
    fn twisted_tensor_of_f4_groups() {
        let ctx = field_new(2, 2).unwrap();
        let sl2 = GroupSpec::Sl { n: 2, subfield_degree: None };
        let plain = GroupSpec::CentralProductTensor { left: Box::new(sl2.clone()), right: Box::new(sl2.clone()) };
        let untwisted = GroupSpec::TwistedTensor {
            factors: vec![sl2.clone(), sl2.clone()],
            twists: vec![0, 0],
            perm: vec![0, 1],
        };
        let a = elaborate(&plain, &ctx, DEFAULT_CAP).unwrap();
        let b = elaborate(&untwisted, &ctx, DEFAULT_CAP).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        let swapped = GroupSpec::TwistedTensor {
            factors: vec![sl2.clone(), sl2.clone()],
            twists: vec![0, 1],
            perm: vec![1, 0],
        };
        let c = elaborate(&swapped, &ctx, DEFAULT_CAP).unwrap();
        assert!(is_subgroup(&c, &a));
        assert_eq!(c.order(), 2 * a.order());
        let bad = GroupSpec::TwistedTensor { factors: vec![sl2], twists: vec![3], perm: vec![0] };
        assert!(bad.generators(&ctx).is_err());
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = GroupSpec::WreathBlock {
            t: 2,
            r: 2,
            inner: Box::new(GroupSpec::Quaternion { order: 8 }),
        };
        let text = serde_json::to_string(&spec).unwrap();
        let back: GroupSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        let parsed: GroupSpec = serde_json::from_str(r#"{"kind":"sl","n":2}"#).unwrap();
        assert_eq!(parsed, GroupSpec::Sl { n: 2, subfield_degree: None });
    }
}
