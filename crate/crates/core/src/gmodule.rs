//! Modules for enumerated matrix groups.
//!
//! A [`GModule`] is an action of a [`MatrixGroup`] on F_q^k, given by one
//! k x k matrix per group generator and extended to every element along the
//! group's spanning tree. Vectors are columns: g acts as v -> rho(g) v.

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::gf::{Felt, FieldCtx};
use crate::group::{is_subgroup, left_cosets, twisted_tensor_generators, GroupError, MatrixGroup, DEFAULT_CAP};
use crate::linalg::{Echelon, LinalgError, MatrixFq, Subspace};

/// Exhaustive irreducibility checks run when q^k is at most this.
pub const EXHAUSTIVE_CAP: u128 = 1_000_000;

/// Largest dimension accepted for an induced module.
pub const INDUCED_DIM_CAP: usize = 512;

const MEATAXE_TRIES: usize = 48;
const EIGENVALUE_SCAN: u32 = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("cannot spin the zero vector")]
    ZeroVector,
    #[error("not a subgroup of the acting group")]
    NotSubgroup,
    #[error("induced module would have dimension {dim}, above the cap {cap}")]
    IndexTooLarge { dim: usize, cap: usize },
    #[error("twist {0} lies outside 0..=m")]
    BadTwist(u32),
    #[error("action matrix for generator {0} has the wrong shape or is singular")]
    BadAction(usize),
    #[error("action fails the homomorphism check at element {element}, generator {generator}")]
    NotHomomorphism { element: usize, generator: usize },
    #[error("subspace is not invariant")]
    NotInvariant,
    #[error("modules are defined over different groups")]
    DifferentGroups,
    #[error("irreducibility undecided: q^k = {0} is above the exhaustive cap")]
    Inconclusive(u128),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// How a module was built.
#[derive(Clone, Debug)]
pub enum Provenance {
    Natural,
    Given,
    Tensor {
        left: Arc<GModule>,
        right: Arc<GModule>,
    },
    TwistedTensor {
        factors: Vec<Arc<GModule>>,
        twists: Vec<u32>,
        perm: Vec<usize>,
    },
    Induced {
        from: Arc<GModule>,
    },
    Restricted {
        from: Arc<GModule>,
    },
    Dual(Arc<GModule>),
    Sub {
        from: Arc<GModule>,
        basis: Subspace,
    },
    Quotient {
        from: Arc<GModule>,
        basis: Subspace,
    },
    DirectSum(Arc<GModule>, Arc<GModule>),
}

impl Provenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::Natural => "natural",
            Provenance::Given => "given",
            Provenance::Tensor { .. } => "tensor",
            Provenance::TwistedTensor { .. } => "twisted_tensor",
            Provenance::Induced { .. } => "induced",
            Provenance::Restricted { .. } => "restricted",
            Provenance::Dual(_) => "dual",
            Provenance::Sub { .. } => "sub",
            Provenance::Quotient { .. } => "quotient",
            Provenance::DirectSum(..) => "direct_sum",
        }
    }
}

#[derive(Clone, Debug)]
enum Actions {
    // rho(g) is the group element itself
    Natural,
    Table(Arc<Vec<MatrixFq>>),
}

#[derive(Clone, Debug)]
pub struct GModule {
    group: Arc<MatrixGroup>,
    dim: usize,
    gens: Vec<MatrixFq>,
    actions: Actions,
    provenance: Provenance,
    faithful: bool,
}

impl GModule {
    /// The group acting on its own space.
    pub fn natural(group: Arc<MatrixGroup>) -> GModule {
        Self::natural_with(group, Provenance::Natural)
    }

    fn natural_with(group: Arc<MatrixGroup>, provenance: Provenance) -> GModule {
        GModule {
            dim: group.dim(),
            gens: group.generators().to_vec(),
            actions: Actions::Natural,
            provenance,
            faithful: true,
            group,
        }
    }

    /// Module from explicit generator actions; the homomorphism property is
    /// checked on every Cayley edge.
    pub fn new(group: Arc<MatrixGroup>, dim: usize, gens: Vec<MatrixFq>) -> Result<GModule, ModuleError> {
        Self::with_provenance(group, dim, gens, Provenance::Given)
    }

    fn with_provenance(
        group: Arc<MatrixGroup>,
        dim: usize,
        gens: Vec<MatrixFq>,
        provenance: Provenance,
    ) -> Result<GModule, ModuleError> {
        if gens.len() != group.num_generators() {
            return Err(ModuleError::BadAction(gens.len()));
        }
        for (i, g) in gens.iter().enumerate() {
            if g.shape() != (dim, dim) || **g.ctx() != **group.ctx() || g.det().is_zero() {
                return Err(ModuleError::BadAction(i));
            }
        }
        let ctx = group.ctx();
        let mut table = Vec::with_capacity(group.order());
        table.push(MatrixFq::identity(ctx, dim));
        for h in 1..group.order() {
            let (p, s) = group.parent(h).expect("non-identity element has a parent");
            let next = &table[p] * &gens[s];
            table.push(next);
        }
        for g in 0..group.order() {
            for (s, gen) in gens.iter().enumerate() {
                if group.is_tree_edge(g, s) {
                    continue;
                }
                if table[group.cayley(g, s)] != &table[g] * gen {
                    return Err(ModuleError::NotHomomorphism { element: g, generator: s });
                }
            }
        }
        let faithful = table.iter().skip(1).all(|m| !m.is_identity());
        Ok(GModule {
            group,
            dim,
            gens,
            actions: Actions::Table(Arc::new(table)),
            provenance,
            faithful,
        })
    }

    /// k copies of the trivial module.
    pub fn trivial(group: Arc<MatrixGroup>, k: usize) -> GModule {
        let id = MatrixFq::identity(group.ctx(), k);
        let gens = vec![id; group.num_generators()];
        Self::new(group, k, gens).expect("trivial action is a homomorphism")
    }

    pub fn group(&self) -> &Arc<MatrixGroup> {
        &self.group
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.group.ctx()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Whether only the identity acts trivially.
    pub fn is_faithful(&self) -> bool {
        self.faithful
    }

    pub fn generator_actions(&self) -> &[MatrixFq] {
        &self.gens
    }

    /// The matrix of element g (by index in the group).
    pub fn action(&self, g: usize) -> &MatrixFq {
        match &self.actions {
            Actions::Natural => self.group.element(g),
            Actions::Table(t) => &t[g],
        }
    }

    /// Provenance tree as JSON.
    pub fn descriptor(&self) -> Value {
        let children: Vec<Value> = match &self.provenance {
            Provenance::Natural | Provenance::Given => Vec::new(),
            Provenance::Tensor { left, right } => vec![left.descriptor(), right.descriptor()],
            Provenance::TwistedTensor { factors, .. } => factors.iter().map(|f| f.descriptor()).collect(),
            Provenance::Induced { from }
            | Provenance::Restricted { from }
            | Provenance::Dual(from)
            | Provenance::Sub { from, .. }
            | Provenance::Quotient { from, .. } => vec![from.descriptor()],
            Provenance::DirectSum(a, b) => vec![a.descriptor(), b.descriptor()],
        };
        let mut out = json!({
            "kind": self.provenance.tag(),
            "dim": self.dim,
            "group": self.group.fingerprint(),
        });
        if let Provenance::TwistedTensor { twists, perm, .. } = &self.provenance {
            out["twists"] = json!(twists);
            out["perm"] = json!(perm);
        }
        if !children.is_empty() {
            out["children"] = Value::Array(children);
        }
        out
    }

    /// Hash of the group fingerprint together with the generator actions.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.group.fingerprint().as_bytes());
        h.update((self.dim as u64).to_le_bytes());
        for g in &self.gens {
            for x in g.data() {
                h.update(x.raw().to_le_bytes());
            }
        }
        h.finalize()[..16].iter().map(|b| format!("{b:02x}")).collect()
    }

    fn rng(&self) -> ChaCha8Rng {
        let mut h = Sha256::new();
        h.update(self.group.fingerprint().as_bytes());
        h.update((self.dim as u64).to_le_bytes());
        ChaCha8Rng::from_seed(h.finalize().into())
    }

    /// Smallest invariant subspace containing v.
    pub fn spin(&self, v: &[Felt]) -> Result<Subspace, ModuleError> {
        if v.iter().all(|x| x.is_zero()) {
            return Err(ModuleError::ZeroVector);
        }
        Ok(spin_with(self.ctx(), self.dim, &self.gens, v))
    }

    /// A proper nonzero invariant subspace, or None when the module is irreducible.
    pub fn find_submodule(&self) -> Result<Option<Subspace>, ModuleError> {
        let k = self.dim;
        if k <= 1 {
            return Ok(None);
        }
        let ctx = Arc::clone(self.ctx());
        let q = ctx.q();
        let transposed: Vec<MatrixFq> = self.gens.iter().map(|g| g.transpose()).collect();
        let mut rng = self.rng();
        let lambdas: Vec<Felt> = if q <= EIGENVALUE_SCAN {
            ctx.elements().collect()
        } else {
            Vec::new()
        };
        for _ in 0..MEATAXE_TRIES {
            let theta = self.random_algebra_element(&mut rng);
            let scan: Vec<Felt> = if lambdas.is_empty() {
                (0..EIGENVALUE_SCAN)
                    .map(|_| ctx.from_raw(rng.random_range(0..q)).expect("below q"))
                    .collect()
            } else {
                lambdas.clone()
            };
            for lambda in scan {
                let a = theta
                    .checked_sub(&MatrixFq::scalar(&ctx, k, lambda))
                    .expect("same shape");
                let ker = a.kernel();
                if ker.dim() == 0 {
                    continue;
                }
                let s = spin_with(&ctx, k, &self.gens, &ker.basis()[0]);
                if s.dim() < k {
                    return Ok(Some(s));
                }
                if ker.dim() > 1 {
                    continue;
                }
                // nullity one: Norton's criterion decides
                let kt = a.transpose().kernel();
                let st = spin_with(&ctx, k, &transposed, &kt.basis()[0]);
                if st.dim() < k {
                    return Ok(Some(st.basis_matrix().kernel()));
                }
                return Ok(None);
            }
        }
        let lines = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if lines > EXHAUSTIVE_CAP {
            return Err(ModuleError::Inconclusive(lines));
        }
        Ok(self.exhaustive_submodule())
    }

    // spin one vector from every line of F_q^k
    fn exhaustive_submodule(&self) -> Option<Subspace> {
        let ctx = self.ctx();
        let k = self.dim;
        let q = ctx.q() as u64;
        for lead in 0..k {
            let tail = k - lead - 1;
            for code in 0..q.pow(tail as u32) {
                let mut v = vec![Felt::ZERO; k];
                v[lead] = Felt::ONE;
                let mut c = code;
                for x in v.iter_mut().skip(lead + 1) {
                    *x = ctx.from_raw((c % q) as u32).expect("below q");
                    c /= q;
                }
                let s = spin_with(ctx, k, &self.gens, &v);
                if s.dim() < k {
                    return Some(s);
                }
            }
        }
        None
    }

    fn random_algebra_element(&self, rng: &mut ChaCha8Rng) -> MatrixFq {
        let ctx = self.ctx();
        let mut acc = MatrixFq::zeros(ctx, self.dim, self.dim);
        for _ in 0..3 {
            let g = rng.random_range(0..self.group.order());
            let c = ctx.from_raw(rng.random_range(0..ctx.q())).expect("below q");
            acc = acc.checked_add(&self.action(g).scale(c)).expect("same shape");
        }
        acc
    }

    pub fn is_irreducible(&self) -> Result<bool, ModuleError> {
        Ok(self.find_submodule()?.is_none())
    }

    /// A minimal nonzero invariant subspace.
    pub fn minimal_submodule(&self) -> Result<Subspace, ModuleError> {
        let mut current = Subspace::full(self.ctx(), self.dim);
        while let Some(inner) = self.submodule(&current)?.find_submodule()? {
            current = lift(&current, &inner);
        }
        Ok(current)
    }

    /// An invariant complement of the invariant subspace u, if one exists.
    pub fn invariant_complement(&self, u: &Subspace) -> Result<Option<Subspace>, ModuleError> {
        self.check_invariant(u)?;
        let k = self.dim;
        let d = u.dim();
        let ctx = Arc::clone(self.ctx());
        if d == 0 {
            return Ok(Some(Subspace::full(&ctx, k)));
        }
        if d == k {
            return Ok(Some(Subspace::zero(&ctx, k)));
        }
        let p = ctx.p() as usize;
        let w = if self.group.order() % p != 0 {
            // average the coordinate projection onto u over the group
            let proj = MatrixFq::from_fn(&ctx, k, k, |r, c| {
                u.pivots()
                    .iter()
                    .position(|&pc| pc == c)
                    .map_or(Felt::ZERO, |i| u.basis()[i][r])
            });
            let mut sum = MatrixFq::zeros(&ctx, k, k);
            for g in 0..self.group.order() {
                let a = self.action(g);
                let ainv = a.inverse().expect("invertible action");
                sum = sum.checked_add(&(&(a * &proj) * &ainv)).expect("same shape");
            }
            let n = ctx.from_int((self.group.order() % p) as i64);
            let avg = sum.scale(ctx.inv(n).expect("p does not divide |G|"));
            avg.kernel()
        } else {
            // C: V -> U equivariant with C restricted to U the identity
            let sub = self.submodule(u)?;
            let unknowns = d * k;
            let mut rows: Vec<Vec<Felt>> = Vec::new();
            let mut rhs: Vec<Felt> = Vec::new();
            for (rho, sigma) in self.gens.iter().zip(sub.generator_actions()) {
                for a in 0..d {
                    for j in 0..k {
                        let mut row = vec![Felt::ZERO; unknowns];
                        for l in 0..k {
                            let x = &mut row[a * k + l];
                            *x = ctx.add(*x, rho.get(l, j));
                        }
                        for b in 0..d {
                            let x = &mut row[b * k + j];
                            *x = ctx.sub(*x, sigma.get(a, b));
                        }
                        rows.push(row);
                        rhs.push(Felt::ZERO);
                    }
                }
            }
            for a in 0..d {
                for (i, b) in u.basis().iter().enumerate() {
                    let mut row = vec![Felt::ZERO; unknowns];
                    row[a * k..(a + 1) * k].copy_from_slice(b);
                    rows.push(row);
                    rhs.push(if a == i { Felt::ONE } else { Felt::ZERO });
                }
            }
            let system = MatrixFq::from_rows(&ctx, &rows)?;
            let Some(sol) = system.solve(&rhs) else {
                return Ok(None);
            };
            MatrixFq::new(&ctx, d, k, sol)?.kernel()
        };
        if w.dim() + d != k || u.intersect(&w).dim() != 0 {
            return Ok(None);
        }
        self.check_invariant(&w)?;
        Ok(Some(w))
    }

    /// Decomposition into irreducible summands, or None when the module is not
    /// semisimple.
    pub fn decompose(&self) -> Result<Option<Vec<Subspace>>, ModuleError> {
        let ctx = self.ctx();
        let u = self.minimal_submodule()?;
        if u.dim() == self.dim {
            return Ok(Some(vec![u]));
        }
        let Some(w) = self.invariant_complement(&u)? else {
            return Ok(None);
        };
        let Some(rest) = self.submodule(&w)?.decompose()? else {
            return Ok(None);
        };
        let mut out = vec![u];
        out.extend(rest.iter().map(|s| lift(&w, s)));
        debug_assert_eq!(out.iter().map(|s| s.dim()).sum::<usize>(), self.dim);
        debug_assert!(out.iter().all(|s| s.ctx() == ctx));
        Ok(Some(out))
    }

    pub fn is_semisimple(&self) -> Result<bool, ModuleError> {
        Ok(self.decompose()?.is_some())
    }

    fn check_invariant(&self, u: &Subspace) -> Result<(), ModuleError> {
        if u.ambient_dim() != self.dim {
            return Err(ModuleError::NotInvariant);
        }
        let ok = self
            .gens
            .iter()
            .all(|g| u.basis().iter().all(|b| u.contains(&g.mul_vec(b))));
        if ok {
            Ok(())
        } else {
            Err(ModuleError::NotInvariant)
        }
    }

    /// Vectors fixed by every element of h.
    pub fn fixed_subspace(&self, h: &MatrixGroup) -> Result<Subspace, ModuleError> {
        if !is_subgroup(&self.group, h) {
            return Err(ModuleError::NotSubgroup);
        }
        let ctx = self.ctx();
        let parts: Vec<MatrixFq> = h
            .generators()
            .iter()
            .map(|x| {
                let i = self.group.index_of(x).expect("subgroup element");
                self.action(i).minus_identity()
            })
            .collect();
        Ok(MatrixFq::vstack(ctx, self.dim, &parts)?.kernel())
    }

    /// Vectors fixed by the whole group.
    pub fn invariants(&self) -> Subspace {
        let parts: Vec<MatrixFq> = self.gens.iter().map(|g| g.minus_identity()).collect();
        MatrixFq::vstack(self.ctx(), self.dim, &parts)
            .expect("square actions")
            .kernel()
    }

    pub fn restrict(&self, h: &Arc<MatrixGroup>) -> Result<GModule, ModuleError> {
        if !is_subgroup(&self.group, h) {
            return Err(ModuleError::NotSubgroup);
        }
        let provenance = Provenance::Restricted {
            from: Arc::new(self.clone()),
        };
        if matches!(self.actions, Actions::Natural) {
            return Ok(Self::natural_with(Arc::clone(h), provenance));
        }
        let gens = h
            .generators()
            .iter()
            .map(|x| self.action(self.group.index_of(x).expect("subgroup element")).clone())
            .collect();
        Self::with_provenance(Arc::clone(h), self.dim, gens, provenance)
    }

    /// Contragredient module: g acts by the inverse transpose.
    pub fn dual(&self) -> GModule {
        let gens = self
            .gens
            .iter()
            .map(|g| g.inverse().expect("invertible").transpose())
            .collect();
        Self::with_provenance(
            Arc::clone(&self.group),
            self.dim,
            gens,
            Provenance::Dual(Arc::new(self.clone())),
        )
        .expect("dual of a module is a module")
    }

    /// Action on an invariant subspace, in the coordinates of its echelon basis.
    pub fn submodule(&self, u: &Subspace) -> Result<GModule, ModuleError> {
        self.check_invariant(u)?;
        let d = u.dim();
        let ctx = self.ctx();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let cols: Vec<Vec<Felt>> = u
                    .basis()
                    .iter()
                    .map(|b| u.coordinates(&g.mul_vec(b)).expect("invariant"))
                    .collect();
                MatrixFq::from_fn(ctx, d, d, |i, j| cols[j][i])
            })
            .collect();
        Self::with_provenance(
            Arc::clone(&self.group),
            d,
            gens,
            Provenance::Sub {
                from: Arc::new(self.clone()),
                basis: u.clone(),
            },
        )
    }

    /// Action on V / U in the coordinates of the non-pivot columns of U.
    pub fn quotient(&self, u: &Subspace) -> Result<GModule, ModuleError> {
        self.check_invariant(u)?;
        let free = u.free_columns();
        let d = free.len();
        let ctx = self.ctx();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let cols: Vec<Vec<Felt>> = free
                    .iter()
                    .map(|&f| {
                        let x = g.column(f);
                        let r = reduce_mod(ctx, u, &x);
                        free.iter().map(|&c| r[c]).collect()
                    })
                    .collect();
                MatrixFq::from_fn(ctx, d, d, |i, j| cols[j][i])
            })
            .collect();
        Self::with_provenance(
            Arc::clone(&self.group),
            d,
            gens,
            Provenance::Quotient {
                from: Arc::new(self.clone()),
                basis: u.clone(),
            },
        )
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule, ModuleError> {
        if self.group.fingerprint() != other.group.fingerprint()
            || self.group.generators() != other.group.generators()
        {
            return Err(ModuleError::DifferentGroups);
        }
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| MatrixFq::block_diag(self.ctx(), &[a.clone(), b.clone()]))
            .collect();
        Self::with_provenance(
            Arc::clone(&self.group),
            self.dim + other.dim,
            gens,
            Provenance::DirectSum(Arc::new(self.clone()), Arc::new(other.clone())),
        )
    }
}

fn spin_with(ctx: &Arc<FieldCtx>, k: usize, gens: &[MatrixFq], v: &[Felt]) -> Subspace {
    let mut e = Echelon::new(ctx, k);
    e.insert(v.to_vec());
    let mut queue = vec![v.to_vec()];
    let mut i = 0;
    while i < queue.len() && e.rank() < k {
        for g in gens {
            let w = g.mul_vec(&queue[i]);
            if e.insert(w.clone()) {
                queue.push(w);
            }
        }
        i += 1;
    }
    e.into_subspace()
}

fn reduce_mod(ctx: &FieldCtx, u: &Subspace, x: &[Felt]) -> Vec<Felt> {
    let mut r = x.to_vec();
    for (b, &pc) in u.basis().iter().zip(u.pivots()) {
        let c = r[pc];
        if c.is_zero() {
            continue;
        }
        for (ri, &bi) in r.iter_mut().zip(b) {
            *ri = ctx.sub(*ri, ctx.mul(c, bi));
        }
    }
    r
}

/// Maps a subspace given in coordinates of `outer`'s basis back to the ambient space.
fn lift(outer: &Subspace, inner: &Subspace) -> Subspace {
    let ctx = outer.ctx();
    let n = outer.ambient_dim();
    let vectors = inner
        .basis()
        .iter()
        .map(|c| {
            let mut x = vec![Felt::ZERO; n];
            for (&ci, b) in c.iter().zip(outer.basis()) {
                for (xi, &bi) in x.iter_mut().zip(b) {
                    *xi = ctx.add(*xi, ctx.mul(ci, bi));
                }
            }
            x
        })
        .collect();
    Subspace::new(ctx, n, vectors)
}

/// The central product image acting on A (x) B: generators of A act as
/// rho_A(s) (x) I, then generators of B as I (x) rho_B(t).
pub fn tensor_module(a: &GModule, b: &GModule) -> Result<GModule, ModuleError> {
    if **a.ctx() != **b.ctx() {
        return Err(LinalgError::MismatchedField.into());
    }
    let ctx = a.ctx();
    let (ia, ib) = (MatrixFq::identity(ctx, a.dim), MatrixFq::identity(ctx, b.dim));
    let mut gens = Vec::new();
    for g in &a.gens {
        gens.push(g.kron(&ib)?);
    }
    for h in &b.gens {
        gens.push(ia.kron(h)?);
    }
    let group = MatrixGroup::generate(ctx, a.dim * b.dim, gens, DEFAULT_CAP)?;
    Ok(GModule::natural_with(
        Arc::new(group),
        Provenance::Tensor {
            left: Arc::new(a.clone()),
            right: Arc::new(b.clone()),
        },
    ))
}

/// Twisted tensor product: slot i carries the j_i-th Frobenius twist of
/// factor i, and a non-identity perm adds the matching factor permutation.
pub fn twisted_tensor_module(
    factors: &[GModule],
    twists: &[u32],
    perm: &[usize],
) -> Result<GModule, ModuleError> {
    let Some(first) = factors.first() else {
        return Err(ModuleError::DifferentGroups);
    };
    let ctx = first.ctx();
    if let Some(&j) = twists.iter().find(|&&j| j > ctx.m()) {
        return Err(ModuleError::BadTwist(j));
    }
    if factors.iter().any(|f| **f.ctx() != **ctx) {
        return Err(LinalgError::MismatchedField.into());
    }
    let parts: Vec<(usize, Vec<MatrixFq>)> = factors.iter().map(|f| (f.dim, f.gens.clone())).collect();
    let (dim, gens) = twisted_tensor_generators(ctx, &parts, twists, perm)?;
    let group = MatrixGroup::generate(ctx, dim, gens, DEFAULT_CAP)?;
    Ok(GModule::natural_with(
        Arc::new(group),
        Provenance::TwistedTensor {
            factors: factors.iter().map(|f| Arc::new(f.clone())).collect(),
            twists: twists.to_vec(),
            perm: perm.to_vec(),
        },
    ))
}

/// Induces a module of J up to G over the transversal of least coset indices.
pub fn induced_module(m: &GModule, g: &Arc<MatrixGroup>) -> Result<GModule, ModuleError> {
    let j = m.group();
    if !is_subgroup(g, j) {
        return Err(ModuleError::NotSubgroup);
    }
    let labels = left_cosets(g, j);
    let mut reps = Vec::new();
    let mut seen = HashSet::new();
    for (x, &l) in labels.iter().enumerate() {
        if seen.insert(l) {
            reps.push(x);
        }
    }
    let (r, k) = (reps.len(), m.dim);
    if r * k > INDUCED_DIM_CAP {
        return Err(ModuleError::IndexTooLarge {
            dim: r * k,
            cap: INDUCED_DIM_CAP,
        });
    }
    let ctx = g.ctx();
    let rep_inv: Vec<usize> = reps.iter().map(|&t| g.inverse_index(t)).collect();
    let mut gens = Vec::with_capacity(g.num_generators());
    for s in 0..g.num_generators() {
        let gs = g.generator_index(s);
        let mut mat = MatrixFq::zeros(ctx, r * k, r * k);
        for (i, &t) in reps.iter().enumerate() {
            let x = g.mul_index(gs, t);
            let l = labels[x];
            let inner = g.mul_index(rep_inv[l], x);
            let ji = j.index_of(g.element(inner)).expect("coset representative");
            let block = m.action(ji);
            for a in 0..k {
                for b in 0..k {
                    mat.set(l * k + a, i * k + b, block.get(a, b));
                }
            }
        }
        gens.push(mat);
    }
    GModule::with_provenance(
        Arc::clone(g),
        r * k,
        gens,
        Provenance::Induced {
            from: Arc::new(m.clone()),
        },
    )
}
