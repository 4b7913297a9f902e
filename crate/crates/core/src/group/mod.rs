//! Finitely generated matrix groups, enumerated by breadth-first closure.
//!
//! Elements are indexed in BFS order from the identity (index 0). The Cayley
//! table records `g * s` for every element `g` and generator `s`, and each
//! non-identity element remembers the tree edge that discovered it.

mod recipes;

pub use recipes::{elaborate, sl_generators, sym2, twisted_tensor_generators, CyclicEmbedding, GroupSpec};
pub(crate) use recipes::{quaternion_units, subfield_basis};

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::gf::{Felt, FieldCtx};
use crate::linalg::{LinalgError, MatrixFq};

/// Default enumeration cap.
pub const DEFAULT_CAP: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator {0} is singular")]
    SingularGenerator(usize),
    #[error("generator {index} is {rows}x{cols}, expected {dim}x{dim}")]
    BadGenerator {
        index: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("group order exceeds the enumeration cap of {0} elements")]
    CapExceeded(usize),
    #[error("groups do not share an ambient GL_n(q)")]
    MismatchedAmbient,
    #[error("unsupported parameters for {recipe}: {message}")]
    UnsupportedParams {
        recipe: &'static str,
        message: String,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug)]
pub struct MatrixGroup {
    ctx: Arc<FieldCtx>,
    dim: usize,
    generators: Vec<MatrixFq>,
    elements: Vec<MatrixFq>,
    index: HashMap<Vec<Felt>, u32>,
    cayley: Vec<u32>,
    parent: Vec<(u32, u32)>,
    fingerprint: String,
}

impl MatrixGroup {
    /// Enumerates the group generated by `gens` inside GL_dim(q).
    pub fn generate(
        ctx: &Arc<FieldCtx>,
        dim: usize,
        gens: Vec<MatrixFq>,
        cap: usize,
    ) -> Result<MatrixGroup, GroupError> {
        for (i, g) in gens.iter().enumerate() {
            if g.shape() != (dim, dim) {
                return Err(GroupError::BadGenerator {
                    index: i,
                    rows: g.rows(),
                    cols: g.cols(),
                    dim,
                });
            }
            if **g.ctx() != **ctx {
                return Err(LinalgError::MismatchedField.into());
            }
            if g.det().is_zero() {
                return Err(GroupError::SingularGenerator(i));
            }
        }
        let ns = gens.len();
        let id = MatrixFq::identity(ctx, dim);
        let mut index = HashMap::new();
        index.insert(id.data().to_vec(), 0u32);
        let mut elements = vec![id];
        let mut parent = vec![(0u32, u32::MAX)];
        let mut cayley = Vec::new();
        let mut g = 0;
        while g < elements.len() {
            for (s, gen) in gens.iter().enumerate() {
                let prod = &elements[g] * gen;
                let next = elements.len() as u32;
                let idx = *index.entry(prod.data().to_vec()).or_insert(next);
                if idx == next {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded(cap));
                    }
                    elements.push(prod);
                    parent.push((g as u32, s as u32));
                }
                cayley.push(idx);
            }
            g += 1;
        }
        debug_assert_eq!(cayley.len(), elements.len() * ns);
        let fingerprint = fingerprint(ctx, dim, &elements);
        Ok(MatrixGroup {
            ctx: Arc::clone(ctx),
            dim,
            generators: gens,
            elements,
            index,
            cayley,
            parent,
            fingerprint,
        })
    }

    pub fn trivial(ctx: &Arc<FieldCtx>, dim: usize) -> MatrixGroup {
        Self::generate(ctx, dim, Vec::new(), 1).expect("trivial group")
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[MatrixFq] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn elements(&self) -> &[MatrixFq] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &MatrixFq {
        &self.elements[i]
    }

    /// Hex digest of the sorted element set; independent of the generators.
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn index_of(&self, m: &MatrixFq) -> Option<usize> {
        if m.shape() != (self.dim, self.dim) || **m.ctx() != *self.ctx {
            return None;
        }
        self.index.get(m.data()).map(|&i| i as usize)
    }

    pub fn contains(&self, m: &MatrixFq) -> bool {
        self.index_of(m).is_some()
    }

    /// Index of elements[g] * generators[s].
    #[inline]
    pub fn cayley(&self, g: usize, s: usize) -> usize {
        self.cayley[g * self.generators.len() + s] as usize
    }

    /// Element index of generator s.
    pub fn generator_index(&self, s: usize) -> usize {
        self.cayley(0, s)
    }

    /// Tree edge (parent, generator) that discovered element g; None for the identity.
    pub fn parent(&self, g: usize) -> Option<(usize, usize)> {
        let (p, s) = self.parent[g];
        (s != u32::MAX).then_some((p as usize, s as usize))
    }

    pub fn is_tree_edge(&self, g: usize, s: usize) -> bool {
        let h = self.cayley(g, s);
        self.parent(h) == Some((g, s))
    }

    /// Generator word reaching g from the identity along the spanning tree.
    pub fn word(&self, mut g: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, s)) = self.parent(g) {
            w.push(s);
            g = p;
        }
        w.reverse();
        w
    }

    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        let prod = &self.elements[a] * &self.elements[b];
        self.index_of(&prod).expect("group is closed")
    }

    pub fn inverse_index(&self, a: usize) -> usize {
        let inv = self.elements[a].inverse().expect("invertible");
        self.index_of(&inv).expect("group is closed")
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let g = &self.elements[a];
        let mut x = g.clone();
        let mut n = 1;
        while !x.is_identity() {
            x = &x * g;
            n += 1;
        }
        n
    }

    /// Largest power of p dividing the order.
    pub fn order_p_part(&self, p: u64) -> u64 {
        let mut n = self.order() as u64;
        let mut part = 1;
        if p < 2 {
            return 1;
        }
        while n % p == 0 {
            n /= p;
            part *= p;
        }
        part
    }

    /// Subgroup generated by the given matrices (which must lie in this group).
    pub fn subgroup(&self, gens: Vec<MatrixFq>) -> Result<MatrixGroup, GroupError> {
        if gens.iter().any(|g| !self.contains(g)) {
            return Err(GroupError::MismatchedAmbient);
        }
        MatrixGroup::generate(&self.ctx, self.dim, gens, self.order())
    }

    // closure of a set of element indices under multiplication
    fn close_indices(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul_index(x, s);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        member
    }

    /// Subgroup with greedily chosen generators (least indices first) from a
    /// set of element indices that is already closed under multiplication.
    pub fn from_elements(&self, indices: &[usize]) -> Result<MatrixGroup, GroupError> {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut gens = Vec::new();
        let mut member = self.close_indices(&gens);
        for &x in &sorted {
            if !member[x] {
                gens.push(x);
                member = self.close_indices(&gens);
            }
        }
        let closed = member.iter().filter(|&&b| b).count();
        if closed != sorted.len().max(1) {
            return Err(GroupError::UnsupportedParams {
                recipe: "from_elements",
                message: "element set is not a subgroup".into(),
            });
        }
        self.subgroup(gens.iter().map(|&i| self.elements[i].clone()).collect())
    }

    /// A Sylow p-subgroup grown one normalizing p-element at a time.
    pub fn sylow_p(&self, p: u64) -> Result<MatrixGroup, GroupError> {
        let target = self.order_p_part(p) as usize;
        let mut gens: Vec<usize> = Vec::new();
        let mut member = self.close_indices(&gens);
        let mut size = 1;
        while size < target {
            let x = (1..self.order())
                .find(|&x| {
                    if member[x] {
                        return false;
                    }
                    let xp = self.elements[x].pow(p);
                    if !member[self.index_of(&xp).expect("closed")] {
                        return false;
                    }
                    let xinv = self.inverse_index(x);
                    gens.iter()
                        .all(|&h| member[self.mul_index(self.mul_index(x, h), xinv)])
                })
                .expect("a p-subgroup below Sylow order has a normalizing p-element");
            gens.push(x);
            member = self.close_indices(&gens);
            size = member.iter().filter(|&&b| b).count();
        }
        self.subgroup(gens.iter().map(|&i| self.elements[i].clone()).collect())
    }

    /// Scalar matrices in the group.
    pub fn scalar_subgroup(&self) -> Result<MatrixGroup, GroupError> {
        let idx: Vec<usize> = (0..self.order())
            .filter(|&i| self.elements[i].as_scalar().is_some())
            .collect();
        self.from_elements(&idx)
    }

    /// Elements of determinant one.
    pub fn special_subgroup(&self) -> Result<MatrixGroup, GroupError> {
        let idx: Vec<usize> = (0..self.order())
            .filter(|&i| self.elements[i].det() == Felt::ONE)
            .collect();
        self.from_elements(&idx)
    }

    fn same_ambient(&self, other: &MatrixGroup) -> bool {
        *self.ctx == *other.ctx && self.dim == other.dim
    }
}

/// Whether H is a subgroup of G.
pub fn is_subgroup(g: &MatrixGroup, h: &MatrixGroup) -> bool {
    g.same_ambient(h) && h.generators.iter().all(|x| g.contains(x))
}

/// Whether H is a normal subgroup of G.
pub fn is_normal(g: &MatrixGroup, h: &MatrixGroup) -> bool {
    if !is_subgroup(g, h) {
        return false;
    }
    g.generators.iter().all(|x| {
        let xinv = x.inverse().expect("invertible");
        h.generators.iter().all(|y| h.contains(&(&(x * y) * &xinv)))
    })
}

/// G intersected with H, as a subgroup of G.
pub fn intersect(g: &MatrixGroup, h: &MatrixGroup) -> Result<MatrixGroup, GroupError> {
    if !g.same_ambient(h) {
        return Err(GroupError::MismatchedAmbient);
    }
    let idx: Vec<usize> = (0..g.order()).filter(|&i| h.contains(&g.elements[i])).collect();
    g.from_elements(&idx)
}

/// Left cosets gH of a subgroup, labelled in order of least element index.
pub fn left_cosets(g: &MatrixGroup, h: &MatrixGroup) -> Vec<usize> {
    let hidx: Vec<usize> = h
        .elements
        .iter()
        .map(|x| g.index_of(x).expect("subgroup"))
        .collect();
    let mut label = vec![usize::MAX; g.order()];
    let mut next = 0;
    for x in 0..g.order() {
        if label[x] != usize::MAX {
            continue;
        }
        for &y in &hidx {
            label[g.mul_index(x, y)] = next;
        }
        next += 1;
    }
    label
}

fn fingerprint(ctx: &FieldCtx, dim: usize, elements: &[MatrixFq]) -> String {
    let mut digests: Vec<[u8; 16]> = elements
        .iter()
        .map(|m| {
            let mut h = Sha256::new();
            for x in m.data() {
                h.update(x.raw().to_le_bytes());
            }
            let out = h.finalize();
            let mut d = [0u8; 16];
            d.copy_from_slice(&out[..16]);
            d
        })
        .collect();
    digests.sort_unstable();
    let mut h = Sha256::new();
    h.update(ctx.p().to_le_bytes());
    h.update(ctx.m().to_le_bytes());
    h.update((dim as u64).to_le_bytes());
    for d in &digests {
        h.update(d);
    }
    h.finalize()[..16].iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_new;

    fn perm_matrix(ctx: &Arc<FieldCtx>, perm: &[usize]) -> MatrixFq {
        let n = perm.len();
        MatrixFq::from_fn(ctx, n, n, |i, j| if perm[j] == i { Felt::ONE } else { Felt::ZERO })
    }

    #[test]
    fn trivial_and_cyclic() {
        let f5 = field_new(5, 1).unwrap();
        let t = MatrixGroup::generate(&f5, 2, vec![], DEFAULT_CAP).unwrap();
        assert_eq!(t.order(), 1);
        let j = MatrixFq::from_ints(&f5, &[&[1, 1], &[0, 1]]);
        let c = MatrixGroup::generate(&f5, 2, vec![j], DEFAULT_CAP).unwrap();
        assert_eq!(c.order(), 5);
        assert_eq!(c.order_p_part(5), 5);
        assert_eq!(c.order_p_part(3), 1);
    }

    #[test]
    fn singular_and_cap() {
        let f5 = field_new(5, 1).unwrap();
        let s = MatrixFq::from_ints(&f5, &[&[1, 2], &[2, 4]]);
        assert_eq!(
            MatrixGroup::generate(&f5, 2, vec![s], 10).unwrap_err(),
            GroupError::SingularGenerator(0)
        );
        let j = MatrixFq::from_ints(&f5, &[&[1, 1], &[0, 1]]);
        assert_eq!(
            MatrixGroup::generate(&f5, 2, vec![j], 3).unwrap_err(),
            GroupError::CapExceeded(3)
        );
    }

    #[test]
    fn cayley_table_is_consistent() {
        let f3 = field_new(3, 1).unwrap();
        let a = MatrixFq::from_ints(&f3, &[&[1, 1], &[0, 1]]);
        let b = MatrixFq::from_ints(&f3, &[&[1, 0], &[1, 1]]);
        let g = MatrixGroup::generate(&f3, 2, vec![a, b], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 24);
        for x in 0..g.order() {
            for s in 0..g.num_generators() {
                assert_eq!(g.element(g.cayley(x, s)), &(g.element(x) * &g.generators()[s]));
            }
            let w = g.word(x);
            let prod = w
                .iter()
                .fold(MatrixFq::identity(&f3, 2), |acc, &s| &acc * &g.generators()[s]);
            assert_eq!(&prod, g.element(x));
        }
    }

    #[test]
    fn s3_normal_subgroup() {
        let f7 = field_new(7, 1).unwrap();
        let t = perm_matrix(&f7, &[1, 0, 2]);
        let c = perm_matrix(&f7, &[1, 2, 0]);
        let s3 = MatrixGroup::generate(&f7, 3, vec![t.clone(), c.clone()], DEFAULT_CAP).unwrap();
        assert_eq!(s3.order(), 6);
        let a3 = s3.subgroup(vec![c]).unwrap();
        let c2 = s3.subgroup(vec![t]).unwrap();
        // conjugation check over every element
        let brute = |h: &MatrixGroup| {
            s3.elements().iter().all(|g| {
                let gi = g.inverse().unwrap();
                h.elements().iter().all(|x| h.contains(&(&(g * x) * &gi)))
            })
        };
        assert!(is_normal(&s3, &a3) && brute(&a3));
        assert!(!is_normal(&s3, &c2) && !brute(&c2));
        assert!(is_normal(&s3, &MatrixGroup::trivial(&f7, 3)));
        assert_eq!(left_cosets(&s3, &a3).iter().max(), Some(&1));
    }

    #[test]
    fn fingerprint_ignores_generating_set() {
        let f7 = field_new(7, 1).unwrap();
        let r = MatrixFq::from_ints(&f7, &[&[3, 0], &[0, 5]]);
        let s = MatrixFq::from_ints(&f7, &[&[0, 1], &[1, 0]]);
        let d1 = MatrixGroup::generate(&f7, 2, vec![r.clone(), s.clone()], DEFAULT_CAP).unwrap();
        let rs = &r * &s;
        let d2 = MatrixGroup::generate(&f7, 2, vec![s, rs], DEFAULT_CAP).unwrap();
        assert_eq!(d1.order(), 12);
        assert_eq!(d1.fingerprint(), d2.fingerprint());
        let c = MatrixGroup::generate(&f7, 2, vec![r], DEFAULT_CAP).unwrap();
        assert_ne!(c.fingerprint(), d1.fingerprint());
    }

    #[test]
    fn sylow_and_intersection() {
        let f5 = field_new(5, 1).unwrap();
        let a = MatrixFq::from_ints(&f5, &[&[1, 1], &[0, 1]]);
        let b = MatrixFq::from_ints(&f5, &[&[1, 0], &[1, 1]]);
        let sl = MatrixGroup::generate(&f5, 2, vec![a, b], DEFAULT_CAP).unwrap();
        assert_eq!(sl.order(), 120);
        for (p, expect) in [(2, 8), (3, 3), (5, 5), (7, 1)] {
            let s = sl.sylow_p(p).unwrap();
            assert_eq!(s.order(), expect);
            assert!(is_subgroup(&sl, &s));
            for i in 0..s.order() {
                let o = s.element_order(i);
                assert_eq!(s.order_p_part(p) % o, 0);
            }
        }
        let center = sl.scalar_subgroup().unwrap();
        assert_eq!(center.order(), 2);
        assert!(is_normal(&sl, &center));
        let syl2 = sl.sylow_p(2).unwrap();
        assert_eq!(intersect(&sl, &syl2).unwrap().fingerprint(), syl2.fingerprint());
        assert_eq!(intersect(&syl2, &center).unwrap().order(), 2);
        assert_eq!(sl.special_subgroup().unwrap().order(), 120);
    }

    #[test]
    fn element_orders_divide_group_order() {
        let f4 = field_new(2, 2).unwrap();
        let w = f4.omega();
        let a = MatrixFq::new(&f4, 2, 2, vec![w, Felt::ZERO, Felt::ZERO, f4.mul(w, w)]).unwrap();
        let b = MatrixFq::from_ints(&f4, &[&[0, 1], &[1, 0]]);
        let g = MatrixGroup::generate(&f4, 2, vec![a, b], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 6);
        for i in 0..g.order() {
            let o = g.element_order(i);
            assert!(g.element(i).pow(o).is_identity());
            assert_eq!(g.order() as u64 % o, 0);
        }
    }
}
