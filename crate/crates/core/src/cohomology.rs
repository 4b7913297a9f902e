//! First cohomology H^1(G, V) of a [`GModule`].
//!
//! Cocycles are stored by their values on the group generators, concatenated
//! into one vector of length k * (number of generators). Two independent
//! solvers compute the dimensions: [`h1_presentation`] works with unknowns on
//! generators only, [`h1_full_table`] with one unknown block per element.
//! [`h1_with_reductions`] tries verified shortcuts before the direct solve.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Felt, FieldCtx, FieldSpec};
use crate::gmodule::{GModule, ModuleError, Provenance};
use crate::group::{is_normal, left_cosets, GroupError, MatrixGroup, DEFAULT_CAP};
use crate::linalg::{format_vector, parse_vector, Echelon, LinalgError, MatrixFq, Subspace};

/// Largest |G| * k accepted by the full-table solver.
pub const FULL_TABLE_CAP: usize = 100_000;

/// The full-table solver adds every pair (g, h) as a constraint up to this order.
pub const PAIR_CAP: usize = 256;

/// Nesting limit for the normal-subgroup and tensor reductions.
pub const MAX_DEPTH: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("full-table system of {size} unknowns exceeds the oracle cap {cap}")]
    OracleCapExceeded { size: usize, cap: usize },
    #[error("hypotheses not verified: {0}")]
    HypothesesNotVerified(String),
    #[error("splitting failed: {0}")]
    SplitFailed(String),
    #[error("values do not define a cocycle (edge at element {element}, generator {generator})")]
    NotCocycle { element: usize, generator: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solver {
    Presentation,
    FullTable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reduction {
    SylowTrivial,
    SylowRestriction,
    NormalSubgroupReduction,
    TensorSplit,
    InflationRestriction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Dims {
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
}

impl H1Dims {
    fn new(z1: usize, b1: usize) -> H1Dims {
        assert!(b1 <= z1, "coboundaries exceed cocycles");
        H1Dims { z1, b1, h1: z1 - b1 }
    }
}

/// A cocycle with a vector y such that Z_s = (s - I) y for every generator s.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub cocycle: Vec<String>,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Report {
    pub group_fingerprint: String,
    pub field: FieldSpec,
    pub dim: usize,
    pub dims: H1Dims,
    pub solver: Option<Solver>,
    pub reductions: Vec<Reduction>,
    #[serde(default)]
    pub trace: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub millis: u64,
}

impl H1Report {
    fn new(m: &GModule, dims: H1Dims, solver: Option<Solver>) -> H1Report {
        H1Report {
            group_fingerprint: m.group().fingerprint().to_string(),
            field: FieldSpec::of(m.ctx()),
            dim: m.dim(),
            dims,
            solver,
            reductions: Vec::new(),
            trace: Vec::new(),
            certificate: None,
            millis: 0,
        }
    }

    pub fn h1(&self) -> usize {
        self.dims.h1
    }
}

/// dim B^1 = k - dim V^G.
pub fn coboundary_dim(m: &GModule) -> usize {
    m.dim() - m.invariants().dim()
}

/// The coboundary of v, as values on generators.
pub fn coboundary(m: &GModule, v: &[Felt]) -> Vec<Felt> {
    m.generator_actions()
        .iter()
        .flat_map(|g| {
            let gv = g.mul_vec(v);
            let ctx = m.ctx();
            gv.into_iter().zip(v).map(|(a, &b)| ctx.sub(a, b)).collect::<Vec<_>>()
        })
        .collect()
}

/// Some y with Z_s = (s - I) y for all generators, or None.
pub fn split_cocycle(m: &GModule, values: &[Felt]) -> Option<Vec<Felt>> {
    let ctx = m.ctx();
    let k = m.dim();
    if m.generator_actions().is_empty() {
        return Some(vec![Felt::ZERO; k]);
    }
    let parts: Vec<MatrixFq> = m.generator_actions().iter().map(|g| g.minus_identity()).collect();
    let stacked = MatrixFq::vstack(ctx, k, &parts).expect("square actions");
    stacked.solve(values)
}

/// Values of a cocycle on every element, extended along the spanning tree by
/// Z_{gs} = Z_g + g Z_s and checked on every Cayley edge.
pub fn extend_cocycle(m: &GModule, values: &[Felt]) -> Result<Vec<Vec<Felt>>, CohomologyError> {
    let g = m.group();
    let k = m.dim();
    let ctx = m.ctx();
    let ns = g.num_generators();
    assert_eq!(values.len(), k * ns, "cocycle length");
    let gen_value = |s: usize| &values[s * k..(s + 1) * k];
    let step = |z: &[Felt], x: usize, s: usize| -> Vec<Felt> {
        let gz = m.action(x).mul_vec(gen_value(s));
        z.iter().zip(gz).map(|(&a, b)| ctx.add(a, b)).collect()
    };
    let mut table: Vec<Vec<Felt>> = vec![Vec::new(); g.order()];
    table[0] = vec![Felt::ZERO; k];
    for h in 1..g.order() {
        let (p, s) = g.parent(h).expect("parent");
        table[h] = step(&table[p], p, s);
    }
    for x in 0..g.order() {
        for s in 0..ns {
            if step(&table[x], x, s) != table[g.cayley(x, s)] {
                return Err(CohomologyError::NotCocycle { element: x, generator: s });
            }
        }
    }
    Ok(table)
}

// Rows A_h - A_g - rho(g) E_s for the non-tree Cayley edges, where Z_g = A_g z
// in terms of the generator values z. Stops once the rank reaches `stop_at`.
fn presentation_system(m: &GModule, stop_at: Option<usize>) -> Echelon {
    let g = m.group();
    let ctx = m.ctx();
    let k = m.dim();
    let ns = g.num_generators();
    let w = k * ns;
    let mut e = Echelon::new(ctx, w);
    if w == 0 {
        return e;
    }
    let mut a: Vec<Vec<Felt>> = vec![Vec::new(); g.order()];
    a[0] = vec![Felt::ZERO; k * w];
    for x in 0..g.order() {
        let rho = m.action(x);
        for s in 0..ns {
            let mut cand = a[x].clone();
            for i in 0..k {
                for j in 0..k {
                    let c = &mut cand[i * w + s * k + j];
                    *c = ctx.add(*c, rho.get(i, j));
                }
            }
            let h = g.cayley(x, s);
            if g.is_tree_edge(x, s) {
                a[h] = cand;
                continue;
            }
            debug_assert!(!a[h].is_empty(), "target discovered before its non-tree edges");
            for i in 0..k {
                let row: Vec<Felt> = (0..w)
                    .map(|c| ctx.sub(a[h][i * w + c], cand[i * w + c]))
                    .collect();
                e.insert(row);
                if stop_at.is_some_and(|t| e.rank() >= t) {
                    return e;
                }
            }
        }
    }
    e
}

/// Basis of Z^1 as values on generators.
pub fn cocycle_basis(m: &GModule) -> Subspace {
    presentation_system(m, None).null_space()
}

/// H^1 from the relations read off the Cayley graph.
pub fn h1_presentation(m: &GModule) -> H1Report {
    let start = Instant::now();
    let w = m.dim() * m.group().num_generators();
    let b1 = coboundary_dim(m);
    // Z^1 contains B^1, so rank w - b1 already pins Z^1 down
    let e = presentation_system(m, Some(w - b1));
    let mut report = H1Report::new(m, H1Dims::new(w - e.rank(), b1), Some(Solver::Presentation));
    report.millis = start.elapsed().as_millis() as u64;
    report
}

// Sparse elimination with the largest column as pivot.
struct SparseEliminator {
    ctx: Arc<FieldCtx>,
    pivot_row: Vec<u32>,
    rows: Vec<Vec<(u32, Felt)>>,
    scratch: Vec<Felt>,
    active: BTreeSet<u32>,
}

impl SparseEliminator {
    fn new(ctx: &Arc<FieldCtx>, n: usize) -> Self {
        SparseEliminator {
            ctx: Arc::clone(ctx),
            pivot_row: vec![u32::MAX; n],
            rows: Vec::new(),
            scratch: vec![Felt::ZERO; n],
            active: BTreeSet::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn add(&mut self, col: u32, v: Felt) {
        let x = &mut self.scratch[col as usize];
        let was = x.is_zero();
        *x = self.ctx.add(*x, v);
        match (was, x.is_zero()) {
            (true, false) => {
                self.active.insert(col);
            }
            (false, true) => {
                self.active.remove(&col);
            }
            _ => {}
        }
    }

    fn insert(&mut self, entries: &[(usize, Felt)]) -> bool {
        for &(c, v) in entries {
            if !v.is_zero() {
                self.add(c as u32, v);
            }
        }
        while let Some(&c) = self.active.last() {
            let r = self.pivot_row[c as usize];
            let f = self.scratch[c as usize];
            if r == u32::MAX {
                let inv = self.ctx.inv(f).expect("nonzero");
                let row: Vec<(u32, Felt)> = self
                    .active
                    .iter()
                    .map(|&j| (j, self.ctx.mul(inv, self.scratch[j as usize])))
                    .collect();
                for &(j, _) in &row {
                    self.scratch[j as usize] = Felt::ZERO;
                }
                self.active.clear();
                self.pivot_row[c as usize] = self.rows.len() as u32;
                self.rows.push(row);
                return true;
            }
            let neg = self.ctx.neg(f);
            let row = std::mem::take(&mut self.rows[r as usize]);
            for &(j, v) in &row {
                self.add(j, self.ctx.mul(neg, v));
            }
            self.rows[r as usize] = row;
        }
        false
    }
}

/// Brute-force oracle with one unknown block Z_g per group element.
pub fn h1_full_table(m: &GModule) -> Result<H1Report, CohomologyError> {
    let start = Instant::now();
    let g = m.group();
    let ctx = m.ctx();
    let k = m.dim();
    let n = g.order();
    let size = n * k;
    if size > FULL_TABLE_CAP {
        return Err(CohomologyError::OracleCapExceeded {
            size,
            cap: FULL_TABLE_CAP,
        });
    }
    let minus_one = ctx.neg(Felt::ONE);
    let mut elim = SparseEliminator::new(ctx, size);
    // Z_{xy} - Z_x - rho(x) Z_y = 0
    let relation = |xy: usize, x: usize, y: usize, elim: &mut SparseEliminator| {
        let rho = m.action(x);
        for i in 0..k {
            let mut entries = Vec::with_capacity(k + 2);
            entries.push((xy * k + i, Felt::ONE));
            entries.push((x * k + i, minus_one));
            for j in 0..k {
                entries.push((y * k + j, ctx.neg(rho.get(i, j))));
            }
            elim.insert(&entries);
        }
    };
    for i in 0..k {
        elim.insert(&[(i, Felt::ONE)]);
    }
    for x in 0..n {
        for s in 0..g.num_generators() {
            relation(g.cayley(x, s), x, g.generator_index(s), &mut elim);
        }
    }
    if n <= PAIR_CAP {
        let words: Vec<Vec<usize>> = (0..n).map(|y| g.word(y)).collect();
        for x in 0..n {
            for (y, w) in words.iter().enumerate() {
                let xy = w.iter().fold(x, |acc, &s| g.cayley(acc, s));
                relation(xy, x, y, &mut elim);
            }
        }
    }
    let z1 = size - elim.rank();
    // B^1 as the image of v -> ((g - I) v)_g over all elements
    let mut image = Echelon::new(ctx, k);
    'outer: for x in 0..n {
        let d = m.action(x).minus_identity();
        for i in 0..k {
            image.insert(d.row(i).to_vec());
            if image.rank() == k {
                break 'outer;
            }
        }
    }
    let b1 = image.rank();
    if b1 > z1 {
        return Err(CohomologyError::InvariantViolation(format!("b1 = {b1} exceeds z1 = {z1}")));
    }
    let mut report = H1Report::new(m, H1Dims::new(z1, b1), Some(Solver::FullTable));
    report.millis = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Runs both solvers and fails when they disagree.
pub fn h1_cross_checked(m: &GModule) -> Result<(H1Report, H1Report), CohomologyError> {
    let a = h1_presentation(m);
    let b = h1_full_table(m)?;
    if a.dims != b.dims {
        return Err(CohomologyError::InvariantViolation(format!(
            "presentation {:?} disagrees with full table {:?}",
            a.dims, b.dims
        )));
    }
    Ok((a, b))
}

/// H^1 through verified reductions, falling back to the presentation solver.
///
/// `normals` are extra candidate normal subgroups; scalars and the
/// determinant-one part are always tried.
pub fn h1_with_reductions(m: &GModule, normals: &[Arc<MatrixGroup>]) -> Result<H1Report, CohomologyError> {
    let start = Instant::now();
    let mut report = reduce(m, normals, 0)?;
    report.millis = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn vanishing(m: &GModule, reductions: Vec<Reduction>, trace: Vec<String>) -> H1Report {
    let b1 = coboundary_dim(m);
    let mut r = H1Report::new(m, H1Dims::new(b1, b1), None);
    r.reductions = reductions;
    r.trace = trace;
    r
}

fn reduce(m: &GModule, normals: &[Arc<MatrixGroup>], depth: usize) -> Result<H1Report, CohomologyError> {
    let g = m.group();
    let p = m.ctx().p() as u64;
    let mut trace = Vec::new();
    if g.order_p_part(p) == 1 {
        trace.push(format!("p = {p} does not divide |G| = {}", g.order()));
        return Ok(vanishing(m, vec![Reduction::SylowTrivial], trace));
    }
    let sylow = Arc::new(g.sylow_p(p)?);
    if sylow.order() < g.order() {
        let r = h1_presentation(&m.restrict(&sylow)?);
        trace.push(format!("Sylow {p}-subgroup of order {} has h1 = {}", sylow.order(), r.h1()));
        if r.h1() == 0 {
            return Ok(vanishing(m, vec![Reduction::SylowRestriction], trace));
        }
    }
    if depth < MAX_DEPTH {
        let mut candidates: Vec<Arc<MatrixGroup>> = Vec::new();
        candidates.push(Arc::new(g.scalar_subgroup()?));
        candidates.push(Arc::new(g.special_subgroup()?));
        candidates.extend(normals.iter().cloned());
        let mut tried = Vec::new();
        for h in candidates {
            if h.order() == 1 || h.order() == g.order() || tried.contains(&h.fingerprint().to_string()) {
                continue;
            }
            tried.push(h.fingerprint().to_string());
            if !is_normal(g, &h) {
                trace.push(format!("candidate of order {} is not normal", h.order()));
                continue;
            }
            let fixed = m.fixed_subspace(&h)?.dim();
            if fixed != 0 {
                trace.push(format!("normal subgroup of order {} fixes a {fixed}-dim subspace", h.order()));
                continue;
            }
            let sub = reduce(&m.restrict(&h)?, &[], depth + 1)?;
            trace.push(format!(
                "normal subgroup of order {} has V^H = 0 and h1 = {}",
                h.order(),
                sub.h1()
            ));
            if sub.h1() == 0 {
                let mut reductions = vec![Reduction::NormalSubgroupReduction];
                reductions.extend(sub.reductions);
                return Ok(vanishing(m, reductions, trace));
            }
        }
        if let Provenance::Tensor { left, right } = m.provenance() {
            let a = reduce(left, &[], depth + 1)?;
            let b = reduce(right, &[], depth + 1)?;
            trace.push(format!("tensor factors have h1 = {} and {}", a.h1(), b.h1()));
            if a.h1() == 0 && b.h1() == 0 {
                let mut r = vanishing(m, vec![Reduction::TensorSplit], trace);
                let z = cocycle_basis(m);
                if let Some(c) = z.basis().first() {
                    let y = tensor_split(m, c)?;
                    r.certificate = Some(certificate(m, c, &y));
                }
                return Ok(r);
            }
        }
    }
    let mut r = h1_presentation(m);
    r.trace = trace;
    Ok(r)
}

pub fn certificate(m: &GModule, cocycle: &[Felt], y: &[Felt]) -> Certificate {
    let ctx = m.ctx();
    let k = m.dim();
    Certificate {
        cocycle: cocycle.chunks(k.max(1)).map(|c| format_vector(ctx, c)).collect(),
        y: format_vector(ctx, y),
    }
}

/// Re-checks Z_s = (s - I) y on every generator.
pub fn verify_certificate(m: &GModule, cert: &Certificate) -> bool {
    let ctx = m.ctx();
    let Ok(y) = parse_vector(ctx, &cert.y) else {
        return false;
    };
    if y.len() != m.dim() || cert.cocycle.len() != m.group().num_generators() {
        return false;
    }
    let mut values = Vec::new();
    for c in &cert.cocycle {
        match parse_vector(ctx, c) {
            Ok(v) if v.len() == m.dim() => values.extend(v),
            _ => return false,
        }
    }
    coboundary(m, &y) == values
}

/// Splits a cocycle of a tensor module slice by slice through the factors.
///
/// The slices Z^j (coordinates j, r + j, ..) on the left generators are
/// cocycles of the left factor and are split there; what remains vanishes on
/// the left generators, takes values in V_1^{G_t} (x) V_2 on the right ones and
/// is split through the right factor.
pub fn tensor_split(m: &GModule, z: &[Felt]) -> Result<Vec<Felt>, CohomologyError> {
    let Provenance::Tensor { left, right } = m.provenance() else {
        return Err(CohomologyError::HypothesesNotVerified("module is not a tensor product".into()));
    };
    extend_cocycle(m, z)?;
    let ctx = m.ctx();
    let (t, r) = (left.dim(), right.dim());
    let kd = t * r;
    let nl = left.generator_actions().len();
    let acts_trivially = |f: &GModule| f.generator_actions().iter().all(|g| g.is_identity());
    for (name, f) in [("left", left), ("right", right)] {
        if !acts_trivially(f) && h1_presentation(f).h1() != 0 {
            return Err(CohomologyError::HypothesesNotVerified(format!("{name} factor has nonzero h1")));
        }
    }
    let mut y = vec![Felt::ZERO; kd];
    for j in 0..r {
        let slice: Vec<Felt> = (0..nl)
            .flat_map(|s| (0..t).map(move |i| (s, i)))
            .map(|(s, i)| z[s * kd + i * r + j])
            .collect();
        let yj = split_cocycle(left, &slice)
            .ok_or_else(|| CohomologyError::SplitFailed(format!("slice {j} does not split")))?;
        for i in 0..t {
            y[i * r + j] = yj[i];
        }
    }
    let dy = coboundary(m, &y);
    let rest: Vec<Felt> = z.iter().zip(&dy).map(|(&a, &b)| ctx.sub(a, b)).collect();
    if rest[..nl * kd].iter().any(|x| !x.is_zero()) {
        return Err(CohomologyError::SplitFailed("left generators not cleared".into()));
    }
    let fixed = left.invariants();
    let nr = right.generator_actions().len();
    let mut w = vec![vec![Felt::ZERO; nr * r]; fixed.dim()];
    for s in 0..nr {
        let val = &rest[(nl + s) * kd..(nl + s + 1) * kd];
        // val as a t x r matrix must equal sum_a f_a w_a^T
        for (a, &pc) in fixed.pivots().iter().enumerate() {
            w[a][s * r..(s + 1) * r].copy_from_slice(&val[pc * r..(pc + 1) * r]);
        }
        for i in 0..t {
            for j in 0..r {
                let expect = fixed
                    .basis()
                    .iter()
                    .zip(&w)
                    .fold(Felt::ZERO, |acc, (f, wa)| ctx.add(acc, ctx.mul(f[i], wa[s * r + j])));
                if expect != val[i * r + j] {
                    return Err(CohomologyError::SplitFailed(
                        "remainder leaves the left-fixed subspace".into(),
                    ));
                }
            }
        }
    }
    for (f, wa) in fixed.basis().iter().zip(&w) {
        let ua = split_cocycle(right, wa)
            .ok_or_else(|| CohomologyError::SplitFailed("right factor cocycle does not split".into()))?;
        for i in 0..t {
            for j in 0..r {
                y[i * r + j] = ctx.add(y[i * r + j], ctx.mul(f[i], ua[j]));
            }
        }
    }
    if coboundary(m, &y) != z {
        return Err(CohomologyError::SplitFailed("reassembled vector fails verification".into()));
    }
    Ok(y)
}

/// Dimensions around 0 -> H^1(G/H, V^H) -> H^1(G, V) -> H^1(H, V).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InflationRestriction {
    pub quotient_h1: usize,
    pub h1: usize,
    pub restriction_image: usize,
}

pub fn inflation_restriction_dims(
    m: &GModule,
    h: &Arc<MatrixGroup>,
) -> Result<InflationRestriction, CohomologyError> {
    let g = m.group();
    if !is_normal(g, h) {
        return Err(CohomologyError::NotNormal);
    }
    let ctx = m.ctx();
    let k = m.dim();
    let fixed = m.fixed_subspace(h)?;
    let quotient_h1 = if fixed.dim() == 0 {
        0
    } else {
        // G/H acting faithfully: cosets permuted, V^H acted on, side by side
        let labels = left_cosets(g, h);
        let ncos = labels.iter().max().map_or(0, |&l| l + 1);
        let mut reps = vec![usize::MAX; ncos];
        for (x, &l) in labels.iter().enumerate() {
            if reps[l] == usize::MAX {
                reps[l] = x;
            }
        }
        let sub = m.submodule(&fixed)?;
        let mut qgens = Vec::new();
        for s in 0..g.num_generators() {
            let gs = g.generator_index(s);
            let perm = MatrixFq::from_fn(ctx, ncos, ncos, |row, col| {
                if labels[g.mul_index(gs, reps[col])] == row {
                    Felt::ONE
                } else {
                    Felt::ZERO
                }
            });
            qgens.push(MatrixFq::block_diag(ctx, &[perm, sub.generator_actions()[s].clone()]));
        }
        let q = MatrixGroup::generate(ctx, ncos + fixed.dim(), qgens, DEFAULT_CAP)?;
        if q.order() * h.order() != g.order() {
            return Err(CohomologyError::InvariantViolation("quotient has the wrong order".into()));
        }
        let qm = GModule::new(Arc::new(q), fixed.dim(), sub.generator_actions().to_vec())?;
        h1_presentation(&qm).h1()
    };
    let h1 = h1_presentation(m).h1();
    // restrict Z^1(G) to the generators of H and compare with B^1(H)
    let hidx: Vec<usize> = h
        .generators()
        .iter()
        .map(|x| g.index_of(x).expect("subgroup element"))
        .collect();
    let width = k * hidx.len();
    let mut b1h = Echelon::new(ctx, width);
    let mut span = Echelon::new(ctx, width);
    for i in 0..k {
        let mut v = vec![Felt::ZERO; k];
        v[i] = Felt::ONE;
        let row: Vec<Felt> = hidx
            .iter()
            .flat_map(|&x| {
                let d = m.action(x).mul_vec(&v);
                d.into_iter().zip(&v).map(|(a, &b)| ctx.sub(a, b)).collect::<Vec<_>>()
            })
            .collect();
        b1h.insert(row.clone());
        span.insert(row);
    }
    for z in cocycle_basis(m).basis() {
        let table = extend_cocycle(m, z)?;
        span.insert(hidx.iter().flat_map(|&x| table[x].iter().copied()).collect());
    }
    let restriction_image = span.rank() - b1h.rank();
    if h1 > quotient_h1 + restriction_image {
        return Err(CohomologyError::InvariantViolation(format!(
            "h1 = {h1} exceeds {quotient_h1} + {restriction_image}"
        )));
    }
    Ok(InflationRestriction {
        quotient_h1,
        h1,
        restriction_image,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_new;
    use crate::gmodule::tensor_module;
    use crate::group::{elaborate, GroupSpec};

    fn natural(spec: GroupSpec, p: u64, m: u32) -> GModule {
        let ctx = field_new(p, m).unwrap();
        GModule::natural(Arc::new(elaborate(&spec, &ctx, DEFAULT_CAP).unwrap()))
    }

    fn jordan(p: u64) -> GModule {
        natural(
            GroupSpec::Cyclic {
                order: p,
                embedding: crate::group::CyclicEmbedding::Jordan,
            },
            p,
            1,
        )
    }

    #[test]
    fn trivial_group_and_trivial_action() {
        let ctx = field_new(5, 1).unwrap();
        let t = GModule::natural(Arc::new(MatrixGroup::trivial(&ctx, 2)));
        assert_eq!(h1_presentation(&t).dims, H1Dims { z1: 0, b1: 0, h1: 0 });
        assert_eq!(h1_full_table(&t).unwrap().dims, H1Dims { z1: 0, b1: 0, h1: 0 });
        // C_5 acting trivially on F_5: cocycles are homomorphisms C_5 -> F_5
        let j = jordan(5);
        let triv = GModule::trivial(Arc::clone(j.group()), 1);
        let want = H1Dims { z1: 1, b1: 0, h1: 1 };
        assert_eq!(h1_presentation(&triv).dims, want);
        assert_eq!(h1_full_table(&triv).unwrap().dims, want);
    }

    #[test]
    fn jordan_block_has_h1_one() {
        for p in [3, 5, 7] {
            let m = jordan(p);
            let (a, b) = h1_cross_checked(&m).unwrap();
            assert_eq!(a.dims, H1Dims { z1: 2, b1: 1, h1: 1 });
            assert_eq!(b.solver, Some(Solver::FullTable));
        }
    }

    #[test]
    fn minus_identity_kills_cohomology() {
        let ctx = field_new(7, 1).unwrap();
        let g = MatrixGroup::generate(&ctx, 3, vec![MatrixFq::scalar(&ctx, 3, ctx.from_int(-1))], DEFAULT_CAP)
            .unwrap();
        let m = GModule::natural(Arc::new(g));
        assert_eq!(h1_presentation(&m).h1(), 0);
        let r = h1_with_reductions(&m, &[]).unwrap();
        assert_eq!(r.reductions, vec![Reduction::SylowTrivial]);
        assert_eq!(r.dims, h1_full_table(&m).unwrap().dims);
    }

    #[test]
    fn special_linear_groups() {
        let m = natural(GroupSpec::Sl { n: 2, subfield_degree: None }, 5, 1);
        let (a, _) = h1_cross_checked(&m).unwrap();
        assert_eq!(a.h1(), 0);
        let r = h1_with_reductions(&m, &[]).unwrap();
        assert_eq!(r.h1(), 0);
        assert!(r.reductions.contains(&Reduction::NormalSubgroupReduction));
        // SL_2(4) on F_4^2 has nonvanishing H^1
        let m4 = natural(GroupSpec::Sl { n: 2, subfield_degree: None }, 2, 2);
        let (a, _) = h1_cross_checked(&m4).unwrap();
        assert_eq!(a.h1(), 1);
        assert_eq!(h1_with_reductions(&m4, &[]).unwrap().h1(), 1);
    }

    #[test]
    fn cocycle_extension_and_splitting() {
        let m = jordan(5);
        let z = cocycle_basis(&m);
        assert_eq!(z.dim(), 2);
        for c in z.basis() {
            let table = extend_cocycle(&m, c).unwrap();
            assert!(table[0].iter().all(|x| x.is_zero()));
        }
        let v = vec![m.ctx().from_int(2), m.ctx().from_int(3)];
        let dv = coboundary(&m, &v);
        let y = split_cocycle(&m, &dv).unwrap();
        assert_eq!(coboundary(&m, &y), dv);
        let bad = vec![Felt::ZERO, Felt::ONE];
        assert!(split_cocycle(&m, &bad).is_none());
    }

    #[test]
    fn tensor_split_on_quaternion_factors() {
        let q = natural(GroupSpec::Quaternion { order: 8 }, 3, 1);
        let ctx = q.ctx().clone();
        let j = {
            let g = MatrixGroup::generate(&ctx, 2, vec![MatrixFq::from_ints(&ctx, &[&[1, 1], &[0, 1]])], DEFAULT_CAP)
                .unwrap();
            GModule::natural(Arc::new(g))
        };
        // left factor Q_8 (h1 = 0), right factor the Jordan block (h1 = 1)
        let t = tensor_module(&q, &j).unwrap();
        let z = cocycle_basis(&t);
        assert!(matches!(
            tensor_split(&t, &z.basis()[0]),
            Err(CohomologyError::HypothesesNotVerified(_))
        ));
        let tt = tensor_module(&q, &q).unwrap();
        let r = h1_with_reductions(&tt, &[]).unwrap();
        assert_eq!(r.h1(), 0);
        for c in cocycle_basis(&tt).basis() {
            let y = tensor_split(&tt, c).unwrap();
            assert!(verify_certificate(&tt, &certificate(&tt, c, &y)));
        }
    }

    #[test]
    fn inflation_restriction_on_sl2() {
        let m = natural(GroupSpec::Sl { n: 2, subfield_degree: None }, 3, 1);
        let c = Arc::new(m.group().scalar_subgroup().unwrap());
        let ir = inflation_restriction_dims(&m, &c).unwrap();
        assert_eq!(ir.quotient_h1, 0);
        let j = jordan(3);
        let triv = Arc::new(MatrixGroup::trivial(j.ctx(), 2));
        let ir = inflation_restriction_dims(&j, &triv).unwrap();
        assert_eq!(ir, InflationRestriction { quotient_h1: 1, h1: 1, restriction_image: 0 });
        let ir = inflation_restriction_dims(&j, j.group()).unwrap();
        assert_eq!(ir, InflationRestriction { quotient_h1: 0, h1: 1, restriction_image: 1 });
    }

    #[test]
    fn report_json_round_trip() {
        let r = h1_with_reductions(&jordan(3), &[]).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: H1Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert!(s.contains("\"field\":{\"p\":3,\"m\":1}"));
    }
}
