//! Group-spec files and the corpus of small-degree subgroups of SL_2, SL_3,
//! SU_3 and a few degree-4 shapes, tagged by Aschbacher class.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Family, LieFamily};
use crate::gf::{factorize, Felt, FieldCtx, FieldSpec, GfError};
use crate::group::{quaternion_units, sl_generators, subfield_basis, sym2, CyclicEmbedding, GroupError, GroupSpec, MatrixGroup};
use crate::linalg::{LinalgError, MatrixFq};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("malformed spec: {0}")]
    Parse(String),
    #[error("spec declares dimension {declared} but the group acts in dimension {actual}")]
    DimensionMismatch { declared: usize, actual: usize },
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Class {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    /// The whole special linear or unitary group.
    Full,
}

impl Class {
    pub fn parse(s: &str) -> Option<Class> {
        Some(match s.trim().to_ascii_uppercase().as_str() {
            "C1" => Class::C1,
            "C2" => Class::C2,
            "C3" => Class::C3,
            "C4" => Class::C4,
            "C5" => Class::C5,
            "C6" => Class::C6,
            "C7" => Class::C7,
            "C8" => Class::C8,
            "C9" => Class::C9,
            "FULL" => Class::Full,
            _ => return None,
        })
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecMeta {
    /// Catalog item, e.g. "sl2 (c)".
    pub label: String,
    pub class: Class,
    /// Simple group of Lie type controlling the prime divisors of |G|.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<LieFamily>,
    /// Whether the congruence conditions for maximality hold in this field.
    pub maximal: bool,
}

/// `{field: {p, m}, dim, recipe | generators}` with optional corpus metadata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecFile {
    pub field: FieldSpec,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<SpecMeta>,
}

impl SpecFile {
    pub fn from_recipe(field: FieldSpec, dim: usize, recipe: GroupSpec) -> SpecFile {
        SpecFile {
            field,
            dim,
            recipe: Some(recipe),
            generators: None,
            meta: None,
        }
    }

    pub fn from_matrices(field: FieldSpec, dim: usize, gens: &[MatrixFq]) -> SpecFile {
        SpecFile {
            field,
            dim,
            recipe: None,
            generators: Some(gens.iter().map(MatrixFq::to_text).collect()),
            meta: None,
        }
    }

    pub fn with_meta(mut self, meta: SpecMeta) -> SpecFile {
        self.meta = Some(meta);
        self
    }

    pub fn parse(text: &str) -> Result<SpecFile, SpecError> {
        let spec: SpecFile = serde_json::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))?;
        match (&spec.recipe, &spec.generators) {
            (Some(_), Some(_)) => Err(SpecError::Parse("give either recipe or generators, not both".into())),
            (None, None) => Err(SpecError::Parse("missing recipe or generators".into())),
            _ => Ok(spec),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn label(&self) -> String {
        match (&self.meta, &self.recipe) {
            (Some(m), _) => m.label.clone(),
            (None, Some(r)) => r.tag().to_string(),
            (None, None) => "generators".into(),
        }
    }

    pub fn generator_matrices(&self, ctx: &Arc<FieldCtx>) -> Result<Vec<MatrixFq>, SpecError> {
        let (dim, gens) = match (&self.recipe, &self.generators) {
            (Some(r), _) => r.generators(ctx)?,
            (None, Some(list)) if list.is_empty() => (self.dim, Vec::new()),
            (None, Some(list)) => GroupSpec::Generators { matrices: list.clone() }.generators(ctx)?,
            (None, None) => return Err(SpecError::Parse("missing recipe or generators".into())),
        };
        if dim != self.dim {
            return Err(SpecError::DimensionMismatch {
                declared: self.dim,
                actual: dim,
            });
        }
        Ok(gens)
    }

    pub fn elaborate(&self, cap: usize) -> Result<MatrixGroup, SpecError> {
        let ctx = self.field.build()?;
        let gens = self.generator_matrices(&ctx)?;
        Ok(MatrixGroup::generate(&ctx, self.dim, gens, cap)?)
    }
}

fn meta(label: impl Into<String>, class: Class, family: Option<LieFamily>, maximal: bool) -> SpecMeta {
    SpecMeta {
        label: label.into(),
        class,
        family,
        maximal,
    }
}

fn psl(w: u64, t: u32) -> Option<LieFamily> {
    LieFamily::from_w(Family::Psl, w, t).ok()
}

fn prime_divisors(m: u32) -> Vec<u32> {
    factorize(m as u64).into_iter().map(|(r, _)| r as u32).collect()
}

/// Corpus entries for degree n over the given field. Entries are structurally
/// valid; elaboration can still exceed an enumeration cap.
pub fn entries(n: usize, field: FieldSpec) -> Vec<SpecFile> {
    let Ok(ctx) = field.build() else {
        return Vec::new();
    };
    match n {
        2 => sl2_entries(&ctx, field),
        3 => {
            let mut out = sl3_entries(&ctx, field);
            out.extend(su3_entries(&ctx, field));
            out
        }
        4 => degree4_entries(field),
        _ => Vec::new(),
    }
}

fn sl2_entries(ctx: &Arc<FieldCtx>, field: FieldSpec) -> Vec<SpecFile> {
    let (p, m, q) = (field.p, field.m, field.q());
    let odd = p != 2;
    let mut out = Vec::new();
    let rec = |r: GroupSpec, md: SpecMeta| SpecFile::from_recipe(field, 2, r).with_meta(md);
    if odd && q != 5 {
        let md = meta("sl2 (a)", Class::C2, None, true);
        out.push(rec(GroupSpec::Quaternion { order: 2 * (q - 1) }, md));
    }
    if !odd {
        let md = meta("sl2 (b)", Class::C2, None, true);
        out.push(rec(GroupSpec::Dihedral { order: 2 * (q - 1) }, md));
    }
    if odd {
        let md = meta("sl2 (c)", Class::C3, None, true);
        out.push(rec(GroupSpec::Quaternion { order: 2 * (q + 1) }, md));
    } else {
        let md = meta("sl2 (d)", Class::C3, None, true);
        out.push(rec(GroupSpec::Dihedral { order: 2 * (q + 1) }, md));
    }
    if odd && m % 2 == 0 {
        if let Some(gens) = sl2_subfield_extension(ctx) {
            let q0 = p.pow(m / 2);
            let md = meta("sl2 (e)", Class::C5, psl(q0, 2), true);
            out.push(SpecFile::from_matrices(field, 2, &gens).with_meta(md));
        }
    }
    for r in prime_divisors(m) {
        let q0 = p.pow(m / r);
        let (label, ok) = if odd { ("sl2 (f)", r % 2 == 1) } else { ("sl2 (g)", q0 != 2) };
        if ok {
            let md = meta(label, Class::C5, psl(q0, 2), true);
            out.push(rec(
                GroupSpec::Sl {
                    n: 2,
                    subfield_degree: Some(m / r),
                },
                md,
            ));
        }
    }
    if odd {
        if ctx.sqrt(ctx.from_int(2)).is_some() {
            let maximal = m == 1 && matches!(p % 8, 1 | 7);
            let md = meta("sl2 (h)", Class::C6, None, maximal);
            out.push(rec(GroupSpec::ExtraspecialNormalizer { r: 2, t: 1, full: true }, md));
        }
        let maximal = m == 1 && matches!(p % 40, 3 | 37 | 5 | 11 | 29 | 13 | 27 | 19 | 21);
        let md = meta("sl2 (i)", Class::C6, None, maximal);
        out.push(rec(GroupSpec::ExtraspecialNormalizer { r: 2, t: 1, full: false }, md));
        if let Some(gens) = binary_icosahedral(ctx) {
            let maximal = (m == 1 && matches!(p % 10, 1 | 9)) || (m == 2 && matches!(p % 10, 3 | 7));
            let md = meta("sl2 (j)", Class::C9, psl(5, 2), maximal);
            out.push(SpecFile::from_matrices(field, 2, &gens).with_meta(md));
        }
    }
    let md = meta("sl2 whole", Class::Full, psl(q, 2), false);
    out.push(rec(
        GroupSpec::Sl {
            n: 2,
            subfield_degree: None,
        },
        md,
    ));
    out
}

fn scalar(ctx: &Arc<FieldCtx>, n: usize, c: Felt) -> MatrixFq {
    MatrixFq::scalar(ctx, n, c)
}

fn sl3_entries(ctx: &Arc<FieldCtx>, field: FieldSpec) -> Vec<SpecFile> {
    let (p, m, q) = (field.p, field.m, field.q());
    let mut out = Vec::new();
    let zeta3 = if (q - 1) % 3 == 0 { ctx.root_of_unity(3) } else { None };
    let with_c3 = |mut gens: Vec<MatrixFq>| {
        if let Some(z) = zeta3 {
            gens.push(scalar(ctx, 3, z));
        }
        gens
    };
    if q >= 5 {
        let md = meta("sl3 (a)", Class::C2, None, true);
        out.push(SpecFile::from_matrices(field, 3, &monomial_sl3(ctx)).with_meta(md));
    }
    if m == 1 {
        if let Some(gens) = singer_normalizer(p) {
            let md = meta("sl3 (b)", Class::C3, None, true);
            out.push(SpecFile::from_matrices(field, 3, &gens).with_meta(md));
        }
    }
    for r in prime_divisors(m) {
        let q0 = p.pow(m / r);
        let md = meta("sl3 (c)", Class::C5, psl(q0, 3), true);
        let spec = GroupSpec::Sl {
            n: 3,
            subfield_degree: Some(m / r),
        };
        out.push(SpecFile::from_recipe(field, 3, spec).with_meta(md));
    }
    if m == 1 && p % 3 == 1 {
        let md = meta("sl3 (d)", Class::C6, None, true);
        let spec = GroupSpec::ExtraspecialNormalizer {
            r: 3,
            t: 1,
            full: (p - 1) % 9 == 0,
        };
        out.push(SpecFile::from_recipe(field, 3, spec).with_meta(md));
    }
    if p != 2 {
        if let Some(gens) = so3_over_subfield(ctx, m) {
            let md = meta("sl3 (e)", Class::C8, psl(q, 2), true);
            out.push(SpecFile::from_matrices(field, 3, &with_c3(gens)).with_meta(md));
        }
    }
    if m % 2 == 0 {
        if let Ok((_, gens)) = GroupSpec::Su3.generators(ctx) {
            let mut gens = gens;
            if p % 3 == 1 {
                gens.push(scalar(ctx, 3, ctx.root_of_unity(3).expect("3 | p - 1")));
            }
            let family = LieFamily::from_w(Family::Psu, p.pow(m / 2), 3).ok();
            let md = meta("sl3 (f)", Class::C8, family, true);
            out.push(SpecFile::from_matrices(field, 3, &gens).with_meta(md));
        }
    }
    if let Some(gens) = klein(ctx) {
        let maximal = m == 1 && matches!(p % 7, 1 | 2 | 4) && q != 2;
        let md = meta("sl3 (g)", Class::C9, psl(7, 2), maximal);
        out.push(SpecFile::from_matrices(field, 3, &with_c3(gens)).with_meta(md));
    }
    let md = meta("sl3 whole", Class::Full, psl(q, 3), false);
    let spec = GroupSpec::Sl {
        n: 3,
        subfield_degree: None,
    };
    out.push(SpecFile::from_recipe(field, 3, spec).with_meta(md));
    out
}

/// Subgroups of SU_3(q0) inside SL_3(q0^2) beyond those shared with SL_3.
fn su3_entries(ctx: &Arc<FieldCtx>, field: FieldSpec) -> Vec<SpecFile> {
    let (p, m) = (field.p, field.m);
    if m % 2 != 0 || p == 3 {
        return Vec::new();
    }
    let h = m / 2;
    let q0 = p.pow(h);
    let mut out = Vec::new();
    if p != 2 && q0 >= 7 {
        if let Some(mut gens) = so3_over_subfield(ctx, h) {
            if (q0 - 1) % 3 == 0 {
                gens.push(scalar(ctx, 3, ctx.root_of_unity(3).expect("3 | q0 - 1")));
            }
            let md = meta("su3 (e.4)", Class::C8, psl(q0, 2), true);
            out.push(SpecFile::from_matrices(field, 3, &gens).with_meta(md));
        }
    }
    if h == 1 && (p % 3 == 2) {
        let q = field.q();
        let md = meta("su3 (e.5)", Class::C6, None, q0 == 5 || q0 >= 11);
        let spec = GroupSpec::ExtraspecialNormalizer {
            r: 3,
            t: 1,
            full: (q - 1) % 9 == 0,
        };
        out.push(SpecFile::from_recipe(field, 3, spec).with_meta(md));
    }
    if h == 1 && matches!(p % 7, 3 | 5 | 6) {
        if let Some(gens) = klein(ctx) {
            let md = meta("su3 (e.6)", Class::C9, psl(7, 2), true);
            out.push(SpecFile::from_matrices(field, 3, &gens).with_meta(md));
        }
    }
    let md = meta(
        "su3 whole",
        Class::Full,
        LieFamily::from_w(Family::Psu, q0, 3).ok(),
        false,
    );
    out.push(SpecFile::from_recipe(field, 3, GroupSpec::Su3).with_meta(md));
    out
}

fn degree4_entries(field: FieldSpec) -> Vec<SpecFile> {
    let sl2 = || {
        Box::new(GroupSpec::Sl {
            n: 2,
            subfield_degree: None,
        })
    };
    let mut out = vec![
        SpecFile::from_recipe(
            field,
            4,
            GroupSpec::WreathBlock {
                t: 2,
                r: 2,
                inner: sl2(),
            },
        )
        .with_meta(meta("sl2 wr s2", Class::C2, None, false)),
        SpecFile::from_recipe(
            field,
            4,
            GroupSpec::CentralProductTensor {
                left: sl2(),
                right: sl2(),
            },
        )
        .with_meta(meta("sl2 o sl2", Class::C4, None, false)),
    ];
    if field.m >= 2 {
        let spec = GroupSpec::TwistedTensor {
            factors: vec![*sl2(), *sl2()],
            twists: vec![0, 1],
            perm: vec![1, 0],
        };
        out.push(SpecFile::from_recipe(field, 4, spec).with_meta(meta("sl2 twisted", Class::C7, None, false)));
    }
    out
}

/// SL_2(q0) extended by diag(nu, nu^-1) with nu^2 in F_q0 \ F_q0^2, q = q0^2.
fn sl2_subfield_extension(ctx: &Arc<FieldCtx>) -> Option<Vec<MatrixFq>> {
    let h = ctx.m() / 2;
    let q0 = (ctx.p() as u64).pow(h);
    let mut gens = sl_generators(ctx, 2, h).ok()?;
    let nu = ctx.pow(ctx.omega(), (q0 + 1) / 2);
    gens.push(MatrixFq::diagonal(ctx, &[nu, ctx.inv(nu).ok()?]));
    Some(gens)
}

/// Binary icosahedral group from the icosians (1 + i + j + k)/2 and
/// (phi + phi^-1 i + j)/2; needs odd q with 5 a square.
pub fn binary_icosahedral(ctx: &Arc<FieldCtx>) -> Option<Vec<MatrixFq>> {
    if ctx.p() == 2 {
        return None;
    }
    let root5 = ctx.sqrt(ctx.from_int(5))?;
    let half = ctx.inv(ctx.from_int(2)).ok()?;
    let phi = ctx.mul(ctx.add(Felt::ONE, root5), half);
    let phi_inv = ctx.inv(phi).ok()?;
    let (i, j, k) = quaternion_units(ctx);
    let one = MatrixFq::identity(ctx, 2);
    let add = |a: &MatrixFq, b: &MatrixFq| a.checked_add(b).expect("same shape");
    let s = add(&add(&one, &i), &add(&j, &k)).scale(half);
    let t = add(&add(&one.scale(phi), &i.scale(phi_inv)), &j).scale(half);
    Some(vec![s, t])
}

/// Klein's 3-dimensional representation of PSL_2(7); needs 7 | q - 1.
pub fn klein(ctx: &Arc<FieldCtx>) -> Option<Vec<MatrixFq>> {
    let zeta = ctx.root_of_unity(7)?;
    let z = |e: u64| ctx.pow(zeta, e);
    let s = MatrixFq::diagonal(ctx, &[z(1), z(4), z(2)]);
    let t = MatrixFq::from_ints(ctx, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
    let a = |e: u64| ctx.sub(z(e), z(7 - e));
    let rows = [[a(1), a(2), a(4)], [a(2), a(4), a(1)], [a(4), a(1), a(2)]];
    let g = [1, 2, 4].iter().fold(Felt::ZERO, |acc, &e| ctx.add(acc, a(e)));
    let g_inv = ctx.inv(g).ok()?;
    let m = MatrixFq::from_fn(ctx, 3, 3, |i, j| rows[i][j]);
    let id = MatrixFq::identity(ctx, 3);
    [g_inv, ctx.neg(g_inv)]
        .into_iter()
        .map(|c| m.scale(c))
        .find(|r| r.det() == Felt::ONE && (r * r) == id)
        .map(|r| vec![s, t, r])
}

/// C_{q-1}^2 : S_3 inside SL_3(q).
fn monomial_sl3(ctx: &Arc<FieldCtx>) -> Vec<MatrixFq> {
    let w = ctx.omega();
    let wi = ctx.inv(w).expect("nonzero");
    vec![
        MatrixFq::diagonal(ctx, &[w, wi, Felt::ONE]),
        MatrixFq::diagonal(ctx, &[Felt::ONE, w, wi]),
        MatrixFq::from_ints(ctx, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]),
        MatrixFq::from_ints(ctx, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]),
    ]
}

/// C_{p^2+p+1} : C_3 inside SL_3(p), from multiplication and Frobenius on
/// F_{p^3} viewed as F_p^3.
fn singer_normalizer(p: u64) -> Option<Vec<MatrixFq>> {
    let big = FieldCtx::new(p, 3).ok()?;
    let small = FieldCtx::new(p, 1).ok()?;
    let basis: Vec<Felt> = (0..3)
        .map(|j| {
            let mut c = vec![0u32; 3];
            c[j] = 1;
            big.from_coeffs(&c).expect("basis vector")
        })
        .collect();
    let linear_map = |f: &dyn Fn(Felt) -> Felt| {
        let cols: Vec<Vec<u32>> = basis.iter().map(|&b| big.coeffs(f(b))).collect();
        MatrixFq::from_fn(&small, 3, 3, |i, j| small.from_int(cols[j][i] as i64))
    };
    let c = big.pow(big.omega(), p - 1);
    let mult = linear_map(&|x| big.mul(c, x));
    let frob = linear_map(&|x| big.pow(x, p));
    Some(vec![mult, frob])
}

/// SO_3(q0) as the symmetric square of GL_2(q0), q0 = p^h odd.
fn so3_over_subfield(ctx: &Arc<FieldCtx>, h: u32) -> Option<Vec<MatrixFq>> {
    if ctx.p() == 2 {
        return None;
    }
    subfield_basis(ctx, h)?;
    let q0 = (ctx.p() as u64).pow(h);
    let mut gens: Vec<MatrixFq> = sl_generators(ctx, 2, h).ok()?.iter().map(sym2).collect();
    let w = ctx.root_of_unity(q0 - 1)?;
    let d = MatrixFq::diagonal(ctx, &[w, Felt::ONE]);
    gens.push(sym2(&d).scale(ctx.inv(w).ok()?));
    Some(gens)
}

/// Jordan block of size 2 generating C_p.
pub fn jordan_spec(p: u64) -> SpecFile {
    SpecFile::from_recipe(
        FieldSpec { p, m: 1 },
        2,
        GroupSpec::Cyclic {
            order: p,
            embedding: CyclicEmbedding::Jordan,
        },
    )
    .with_meta(meta("jordan", Class::C1, None, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmodule::GModule;
    use crate::group::DEFAULT_CAP;

    fn field(p: u64, m: u32) -> FieldSpec {
        FieldSpec { p, m }
    }

    fn order_of(spec: &SpecFile) -> usize {
        spec.elaborate(DEFAULT_CAP).unwrap().order()
    }

    fn find<'a>(list: &'a [SpecFile], label: &str) -> &'a SpecFile {
        list.iter()
            .find(|s| s.label() == label)
            .unwrap_or_else(|| panic!("missing {label}"))
    }

    #[test]
    fn sl2_items_have_expected_orders() {
        let list = entries(2, field(29, 1));
        assert_eq!(order_of(find(&list, "sl2 (a)")), 56);
        assert_eq!(order_of(find(&list, "sl2 (c)")), 60);
        assert_eq!(order_of(find(&list, "sl2 (i)")), 24);
        assert_eq!(order_of(find(&list, "sl2 (j)")), 120);
        assert_eq!(order_of(find(&list, "sl2 whole")), 29 * (29 * 29 - 1));
        let list = entries(2, field(7, 1));
        assert_eq!(order_of(find(&list, "sl2 (h)")), 48);
        let list = entries(2, field(3, 2));
        assert_eq!(order_of(find(&list, "sl2 (e)")), 48);
        assert_eq!(order_of(find(&list, "sl2 (j)")), 120);
        let list = entries(2, field(2, 3));
        assert_eq!(order_of(find(&list, "sl2 (b)")), 14);
        assert_eq!(order_of(find(&list, "sl2 (d)")), 18);
        let list = entries(2, field(2, 2));
        assert!(list.iter().all(|s| s.label() != "sl2 (g)"));
    }

    #[test]
    fn sl3_items_have_expected_orders() {
        let list = entries(3, field(7, 1));
        assert_eq!(order_of(find(&list, "sl3 (a)")), 36 * 6);
        assert_eq!(order_of(find(&list, "sl3 (b)")), 57 * 3);
        assert_eq!(order_of(find(&list, "sl3 (d)")), 27 * 8);
        assert_eq!(order_of(find(&list, "sl3 (e)")), 7 * 48 * 3);
        let list = entries(3, field(43, 1));
        assert_eq!(order_of(find(&list, "sl3 (g)")), 168 * 3);
        let list = entries(3, field(2, 2));
        assert_eq!(order_of(find(&list, "sl3 (f)")), 216);
        assert_eq!(order_of(find(&list, "su3 whole")), 216);
    }

    #[test]
    fn klein_is_absolutely_irreducible() {
        let ctx = FieldCtx::new(29, 1).unwrap();
        let g = MatrixGroup::generate(&ctx, 3, klein(&ctx).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 168);
        assert!(GModule::natural(Arc::new(g)).is_irreducible().unwrap());
    }

    #[test]
    fn spec_file_round_trip_and_errors() {
        let spec = jordan_spec(5);
        let back = SpecFile::parse(&spec.to_json()).unwrap();
        assert_eq!(back, spec);
        assert_eq!(order_of(&back), 5);
        let gens = r#"{"field": {"p": 5, "m": 1}, "dim": 2, "generators": ["1,1;0,1"]}"#;
        assert_eq!(order_of(&SpecFile::parse(gens).unwrap()), 5);
        let bad = r#"{"field": {"p": 5, "m": 1}, "dim": 3, "generators": ["1,1;0,1"]}"#;
        assert!(matches!(
            SpecFile::parse(bad).unwrap().elaborate(DEFAULT_CAP),
            Err(SpecError::DimensionMismatch { .. })
        ));
        assert!(SpecFile::parse(r#"{"field": {"p": 5, "m": 1}, "dim": 2}"#).is_err());
        let empty = r#"{"field": {"p": 5, "m": 1}, "dim": 2, "generators": []}"#;
        assert_eq!(order_of(&SpecFile::parse(empty).unwrap()), 1);
    }
}
