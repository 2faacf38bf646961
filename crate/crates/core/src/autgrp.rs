//! Automorphisms of PSL(2,q): the group PΓL(2,q) acting by Frobenius twist
//! followed by conjugation, set stabilizers, and the counting ingredients
//! behind the valid-`z` bound.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds;
use crate::error::{precondition, Result};
use crate::gfq::{FieldCtx, FieldElem};
use crate::pgl2::{canonical_matrices, GroupTable, MaximalCertificate, ProjMat};

/// `g -> m^-1 * frob^k(g) * m`, an element of PΓL(2,q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SemiAut {
    pub k: u32,
    pub m: ProjMat,
}

impl SemiAut {
    pub fn identity() -> Self {
        SemiAut { k: 0, m: ProjMat::identity() }
    }

    pub fn conjugation(m: ProjMat) -> Self {
        SemiAut { k: 0, m }
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0 && self.m.is_identity()
    }

    pub fn apply(&self, ctx: &FieldCtx, g: &ProjMat) -> ProjMat {
        g.frobenius(ctx, self.k).conj_by(ctx, &self.m)
    }

    pub fn apply_id(&self, table: &GroupTable, g: u32) -> u32 {
        let image = self.apply(table.ctx(), &table.elem(g));
        table.id_of(&image).expect("automorphisms preserve PSL(2,q)")
    }

    /// The automorphism "`self` first, then `next`".
    pub fn then(&self, ctx: &FieldCtx, next: &SemiAut) -> SemiAut {
        SemiAut { k: (self.k + next.k) % ctx.f(), m: self.m.frobenius(ctx, next.k).mul(ctx, &next.m) }
    }

    pub fn inverse(&self, ctx: &FieldCtx) -> SemiAut {
        let k = (ctx.f() - self.k) % ctx.f();
        SemiAut { k, m: self.m.frobenius(ctx, k).inv(ctx) }
    }

    pub fn is_involution(&self, ctx: &FieldCtx) -> bool {
        !self.is_identity() && self.then(ctx, self).is_identity()
    }

    /// Whether `S^self = S` as sets.
    pub fn stabilizes(&self, ctx: &FieldCtx, set: &[ProjMat]) -> bool {
        set.iter().all(|g| set.contains(&self.apply(ctx, g)))
    }
}

/// All of PΓL(2,q) = Aut(PSL(2,q)) for `q >= 5`, identity first.
pub fn aut_enumerate(ctx: &FieldCtx) -> Vec<SemiAut> {
    let pgl: Vec<ProjMat> = canonical_matrices(ctx).collect();
    (0..ctx.f()).flat_map(|k| pgl.iter().map(move |&m| SemiAut { k, m })).collect()
}

/// Nonidentity automorphisms fixing `set` setwise, by scanning all of
/// PΓL(2,q), sorted. Works for any subset; see [`pair_stabilizer_fast`] for the
/// cheap path on 3-element sets.
pub fn set_stabilizer(table: &GroupTable, auts: &[SemiAut], set: &[u32]) -> Vec<SemiAut> {
    let ctx = table.ctx();
    let mats: Vec<ProjMat> = set.iter().map(|&g| table.elem(g)).collect();
    let mut out: Vec<SemiAut> = auts.iter().filter(|a| !a.is_identity() && a.stabilizes(ctx, &mats)).copied().collect();
    out.sort_unstable();
    out
}

/// Solutions of `M^-1 g M = h` in PGL(2,q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjugators {
    /// `g = h = 1`; every matrix qualifies and the list is not materialized.
    Entire,
    Matrices(Vec<ProjMat>),
}

impl Conjugators {
    pub fn into_vec(self) -> Vec<ProjMat> {
        match self {
            Conjugators::Entire => panic!("conjugators of a central element are the whole group"),
            Conjugators::Matrices(v) => v,
        }
    }
}

/// Solves `A M = λ M B` for every `λ` in GF(q)^x, with `A`, `B` the canonical
/// representatives of `g`, `h`. Only `λ` with `λ^2 det B = det A` can have
/// invertible solutions, so the others are skipped.
pub fn solve_conjugator(ctx: &FieldCtx, g: &ProjMat, h: &ProjMat) -> Conjugators {
    match (g.is_identity(), h.is_identity()) {
        (true, true) => return Conjugators::Entire,
        (true, false) | (false, true) => return Conjugators::Matrices(Vec::new()),
        _ => {}
    }
    let [a0, a1, a2, a3] = g.entries();
    let [b0, b1, b2, b3] = h.entries();
    let det_a = g.det(ctx);
    let det_b = h.det(ctx);
    let zero = FieldElem::ZERO;
    let mut out = Vec::new();
    for lambda in ctx.nonzero_elements() {
        if ctx.mul(ctx.mul(lambda, lambda), det_b) != det_a {
            continue;
        }
        let l = |x: FieldElem| ctx.mul(lambda, x);
        // unknowns (m0, m1, m2, m3) of M = [[m0, m1], [m2, m3]]
        let rows = [
            [ctx.sub(a0, l(b0)), ctx.neg(l(b2)), a1, zero],
            [ctx.neg(l(b1)), ctx.sub(a0, l(b3)), zero, a1],
            [a2, zero, ctx.sub(a3, l(b0)), ctx.neg(l(b2))],
            [zero, a2, ctx.neg(l(b1)), ctx.sub(a3, l(b3))],
        ];
        let basis = nullspace(ctx, rows);
        for_each_projective_point(ctx, &basis, |v| {
            if let Ok(m) = ProjMat::canon(ctx, v) {
                out.push(m);
            }
        });
    }
    out.sort_unstable();
    out.dedup();
    Conjugators::Matrices(out)
}

fn nullspace(ctx: &FieldCtx, mut rows: [[FieldElem; 4]; 4]) -> Vec<[FieldElem; 4]> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..4 {
        let Some(pr) = (r..4).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = ctx.inv(rows[r][col]).expect("pivot is nonzero");
        rows[r] = rows[r].map(|x| ctx.mul(x, inv));
        for i in 0..4 {
            if i != r && !rows[i][col].is_zero() {
                let (factor, pivot) = (rows[i][col], rows[r]);
                for (x, &y) in rows[i].iter_mut().zip(&pivot) {
                    *x = ctx.sub(*x, ctx.mul(factor, y));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..4)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = [FieldElem::ZERO; 4];
            v[free] = FieldElem::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = ctx.neg(rows[i][free]);
            }
            v
        })
        .collect()
}

/// Calls `visit` once per 1-dimensional subspace of the span of `basis`.
fn for_each_projective_point(ctx: &FieldCtx, basis: &[[FieldElem; 4]], mut visit: impl FnMut([FieldElem; 4])) {
    let k = basis.len();
    if k == 0 {
        return;
    }
    let q = ctx.q() as usize;
    // coefficient vectors whose first nonzero entry is 1
    for lead in 0..k {
        let tail = k - lead - 1;
        for code in 0..q.pow(tail as u32) {
            let mut v = basis[lead];
            let mut c = code;
            for b in &basis[lead + 1..] {
                let coeff = ctx.from_index((c % q) as u32).expect("index below q");
                c /= q;
                for j in 0..4 {
                    v[j] = ctx.add(v[j], ctx.mul(coeff, b[j]));
                }
            }
            visit(v);
        }
    }
}

/// Nonidentity automorphisms fixing a 3-element set, found by solving for
/// conjugators that send two members to their prescribed images and then
/// filtering on the third. Equal to [`set_stabilizer`] on every input.
pub fn pair_stabilizer_fast(table: &GroupTable, set: [u32; 3]) -> Result<Vec<SemiAut>> {
    if set.contains(&table.identity()) || set[0] == set[1] || set[1] == set[2] || set[0] == set[2] {
        return Err(precondition("need three distinct nonidentity elements"));
    }
    let ctx = table.ctx();
    let mats = set.map(|g| table.elem(g));
    let mut out = Vec::new();
    for k in 0..ctx.f() {
        let src = mats.map(|g| g.frobenius(ctx, k));
        for (i0, target0) in mats.iter().enumerate() {
            let candidates = solve_conjugator(ctx, &src[0], target0).into_vec();
            for m in candidates {
                let img1 = src[1].conj_by(ctx, &m);
                let Some(i1) = mats.iter().position(|x| *x == img1) else {
                    continue;
                };
                if i1 == i0 {
                    continue;
                }
                let img2 = src[2].conj_by(ctx, &m);
                if mats.iter().position(|x| *x == img2) == Some(3 - i0 - i1) {
                    let a = SemiAut { k, m };
                    if !a.is_identity() {
                        out.push(a);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// All automorphisms sending `from` to `to`.
pub fn automorphisms_mapping(ctx: &FieldCtx, from: &ProjMat, to: &ProjMat) -> Vec<SemiAut> {
    (0..ctx.f())
        .flat_map(|k| {
            solve_conjugator(ctx, &from.frobenius(ctx, k), to).into_vec().into_iter().map(move |m| SemiAut { k, m })
        })
        .collect()
}

/// `|Cen_A(x)|` for `A = Aut(G)`.
pub fn aut_centralizer_size(table: &GroupTable, x: u32) -> usize {
    let m = table.elem(x);
    automorphisms_mapping(table.ctx(), &m, &m).len()
}

/// The set `L`: images of `y` under automorphisms fixing `x` or sending `x`
/// to `y`, together with images of `x` under automorphisms sending `y` to `x`
/// or fixing `y`.
pub fn compute_l(table: &GroupTable, x: u32, y: u32) -> Vec<u32> {
    let ctx = table.ctx();
    let (mx, my) = (table.elem(x), table.elem(y));
    let pieces = [(mx, mx, my), (mx, my, my), (my, mx, mx), (my, my, mx)];
    let mut out: Vec<u32> = pieces
        .iter()
        .flat_map(|(from, to, moved)| {
            automorphisms_mapping(ctx, from, to)
                .into_iter()
                .map(|a| a.apply_id(table, table.id_of(moved).expect("member")))
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The set `I`: involutory automorphisms swapping `x` and `y`.
pub fn compute_i(table: &GroupTable, x: u32, y: u32) -> Result<Vec<SemiAut>> {
    if x == y {
        return Err(precondition("x and y must differ"));
    }
    let ctx = table.ctx();
    let (mx, my) = (table.elem(x), table.elem(y));
    Ok(automorphisms_mapping(ctx, &mx, &my)
        .into_iter()
        .filter(|a| a.apply(ctx, &my) == mx && a.is_involution(ctx))
        .collect())
}

/// Number of involutions `z` of the table with `z^alpha = z`.
pub fn fixed_involutions(table: &GroupTable, alpha: &SemiAut, involutions: &[u32]) -> usize {
    involutions.iter().filter(|&&z| alpha.apply_id(table, z) == z).count()
}

/// Everything measured for one dihedral pair `(x, y)`.
#[derive(Clone, Debug)]
pub struct IngredientReport {
    pub q: u32,
    pub p: u32,
    pub f: u32,
    pub d: u32,
    pub l: Vec<u32>,
    pub i: Vec<SemiAut>,
    /// `|Cen_A(x)|`.
    pub aut_centralizer: usize,
    /// Number of involutions of G.
    pub n_v: usize,
    /// Involutions `z` with `<x,y,z> = G` and trivial `Aut(G,{x,y,z})`, sorted.
    pub valid_z: Vec<u32>,
    pub n_valid_z: usize,
    pub bound_b: Ratio<i64>,
    /// Involutions outside `H` fixed by no member of `I`.
    pub free_count: usize,
    pub free_bound: Ratio<i64>,
    /// Members of the free set that also avoid `L`.
    pub predicted_count: usize,
    pub predicted_subset_of_valid: bool,
    pub used_maximality: bool,
}

impl IngredientReport {
    pub fn l_limit(&self) -> usize {
        (4 * self.d * self.f * (self.q + 1)) as usize
    }

    /// Named pass/fail checks.
    pub fn checks(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("aut_centralizer<=df(q+1)", self.aut_centralizer <= (self.d * self.f * (self.q + 1)) as usize),
            ("|L|<=4df(q+1)", self.l.len() <= self.l_limit()),
            ("|I|<=d", self.i.len() <= self.d as usize),
            ("I inside PGL", self.i.iter().all(|a| a.k == 0)),
            ("free count >= bound", Ratio::from_integer(self.free_count as i64) >= self.free_bound),
            ("predicted subset of valid", self.predicted_subset_of_valid),
            ("valid count >= bound", Ratio::from_integer(self.n_valid_z as i64) >= self.bound_b),
        ]
    }

    pub fn all_hold(&self) -> bool {
        self.checks().iter().all(|(_, ok)| *ok)
    }
}

/// Counts the involutions `z` making `{x, y, z}` a generating set with
/// trivial set stabilizer, together with the ingredients of the lower bound
/// for that count. With a maximality certificate for `<x, y>` the generation
/// test reduces to `z` outside `<x, y>`.
pub fn count_valid_z(
    table: &GroupTable,
    x: u32,
    y: u32,
    maximal: Option<&MaximalCertificate>,
) -> Result<IngredientReport> {
    let ctx = table.ctx();
    let (q, p, f, d) = (ctx.q(), ctx.p(), ctx.f(), table.d());
    if q < 11 {
        return Err(precondition("valid-z count needs q >= 11"));
    }
    if x == y || !table.is_involution(x) || !table.is_involution(y) {
        return Err(precondition("x, y must be distinct involutions"));
    }
    let h = table.closure(&[x, y]);
    if h.len() as u32 != 2 * (q + 1) / d {
        return Err(precondition("<x, y> is not the dihedral subgroup of order 2(q+1)/d"));
    }
    let use_cert = maximal.is_some_and(|c| c.covers(table, &h));
    let involutions = table.involutions();
    let l = compute_l(table, x, y);
    let i = compute_i(table, x, y)?;
    let aut_centralizer = aut_centralizer_size(table, x);

    struct ZInfo {
        z: u32,
        valid: bool,
        free: bool,
        in_l: bool,
    }
    let infos: Vec<ZInfo> = involutions
        .par_iter()
        .map(|&z| {
            let in_h = h.binary_search(&z).is_ok();
            let generating = if use_cert { !in_h } else { !in_h && table.generates(&[x, y, z]) };
            let valid = generating
                && pair_stabilizer_fast(table, [x, y, z]).expect("x, y, z distinct and nonidentity").is_empty();
            let free = !in_h && i.iter().all(|a| a.apply_id(table, z) != z);
            ZInfo { z, valid, free, in_l: l.binary_search(&z).is_ok() }
        })
        .collect();

    let valid_z: Vec<u32> = infos.iter().filter(|r| r.valid).map(|r| r.z).collect();
    let free_count = infos.iter().filter(|r| r.free).count();
    let predicted: Vec<&ZInfo> = infos.iter().filter(|r| r.free && !r.in_l).collect();
    let predicted_subset_of_valid = predicted.iter().all(|r| r.valid);
    Ok(IngredientReport {
        q,
        p,
        f,
        d,
        aut_centralizer,
        n_v: involutions.len(),
        n_valid_z: valid_z.len(),
        valid_z,
        bound_b: bounds::bound_b(p, f),
        free_count,
        free_bound: bounds::free_involution_bound(q),
        predicted_count: predicted.len(),
        predicted_subset_of_valid,
        used_maximality: use_cert,
        l,
        i,
    })
}
