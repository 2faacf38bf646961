//! Explicit automorphisms fixing an involution `x` and inverting `y`.
//!
//! Even `q` and `q = 1 (mod 4)` use a single conjugating matrix after moving
//! `x` to a standard involution. For `q = 3 (mod 4)` the construction lives
//! in the special unitary model SU(2,q) over GF(q^2) and is checked there;
//! on the PSL(2,q) side the automorphism is found by search.

use serde::Serialize;

use crate::autgrp::{automorphisms_mapping, solve_conjugator, SemiAut};
use crate::error::{precondition, Error, Result};
use crate::gfq::{FieldCtx, FieldElem, QuadElem, QuadExtCtx};
use crate::pgl2::{GroupTable, ProjMat};

/// `[[a, b], [-b^q, a^q]]` with `a^(q+1) + b^(q+1) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SuElem {
    pub a: QuadElem,
    pub b: QuadElem,
}

/// Row-major 2x2 matrix over GF(q^2).
pub type QuadMat = [QuadElem; 4];

impl SuElem {
    pub fn identity() -> Self {
        SuElem { a: QuadElem::ONE, b: QuadElem::ZERO }
    }

    pub fn matrix(&self, ext: &QuadExtCtx) -> QuadMat {
        [self.a, self.b, ext.neg(ext.conj(self.b)), ext.conj(self.a)]
    }

    /// Reads an SU element back from a matrix, if it has the unitary shape.
    pub fn from_matrix(ext: &QuadExtCtx, m: &QuadMat) -> Option<Self> {
        let e = SuElem { a: m[0], b: m[1] };
        (e.matrix(ext) == *m && e.is_special_unitary(ext)).then_some(e)
    }

    pub fn is_special_unitary(&self, ext: &QuadExtCtx) -> bool {
        let base = ext.base();
        base.add(ext.norm(self.a), ext.norm(self.b)) == FieldElem::ONE
    }

    pub fn neg(&self, ext: &QuadExtCtx) -> Self {
        SuElem { a: ext.neg(self.a), b: ext.neg(self.b) }
    }

    /// Representative of `{g, -g}`: the first nonzero coefficient of
    /// `(a.u, a.v, b.u, b.v)` lies in `1..=(p-1)/2`.
    pub fn canonical(&self, ext: &QuadExtCtx) -> Self {
        let base = ext.base();
        let half = (base.p() - 1) / 2;
        let first = [self.a.u, self.a.v, self.b.u, self.b.v]
            .iter()
            .flat_map(|&x| base.coeffs(x))
            .find(|&c| c != 0)
            .expect("SU elements are nonzero");
        if first <= half {
            *self
        } else {
            self.neg(ext)
        }
    }
}

pub fn su_mul(ext: &QuadExtCtx, x: &SuElem, y: &SuElem) -> SuElem {
    SuElem {
        a: ext.sub(ext.mul(x.a, y.a), ext.mul(x.b, ext.conj(y.b))),
        b: ext.add(ext.mul(x.a, y.b), ext.mul(x.b, ext.conj(y.a))),
    }
}

pub fn su_inv(ext: &QuadExtCtx, x: &SuElem) -> SuElem {
    SuElem { a: ext.conj(x.a), b: ext.neg(x.b) }
}

/// Every element of SU(2,q), `q` odd, in the order of `(a, b)`.
pub fn su_enumerate(ext: &QuadExtCtx) -> Result<Vec<SuElem>> {
    if ext.base().p() == 2 {
        return Err(precondition("unitary model is used for odd q only"));
    }
    let base = ext.base();
    let elems: Vec<QuadElem> = ext.elements().collect();
    let mut by_norm: Vec<Vec<QuadElem>> = vec![Vec::new(); base.q() as usize];
    for &b in &elems {
        by_norm[ext.norm(b).index() as usize].push(b);
    }
    let mut out = Vec::new();
    for &a in &elems {
        let need = base.sub(FieldElem::ONE, ext.norm(a));
        for &b in &by_norm[need.index() as usize] {
            out.push(SuElem { a, b });
        }
    }
    Ok(out)
}

/// One representative per `{g, -g}`, i.e. PSU(2,q).
pub fn psu_enumerate(ext: &QuadExtCtx) -> Result<Vec<SuElem>> {
    Ok(su_enumerate(ext)?.into_iter().filter(|e| e.canonical(ext) == *e).collect())
}

pub fn quad_mat_mul(ext: &QuadExtCtx, x: &QuadMat, y: &QuadMat) -> QuadMat {
    let dot = |a: QuadElem, b: QuadElem, c: QuadElem, d: QuadElem| ext.add(ext.mul(a, b), ext.mul(c, d));
    [dot(x[0], y[0], x[1], y[2]), dot(x[0], y[1], x[1], y[3]), dot(x[2], y[0], x[3], y[2]), dot(x[2], y[1], x[3], y[3])]
}

fn is_scalar(m: &QuadMat) -> bool {
    m[1].is_zero() && m[2].is_zero() && m[0] == m[3] && !m[0].is_zero()
}

/// Element of order 4 in GF(q^2)^x, first in enumeration order.
pub fn order_four_element(ext: &QuadExtCtx) -> QuadElem {
    let minus_one = QuadElem::from_base(ext.base().neg(FieldElem::ONE));
    ext.elements().find(|&i| ext.mul(i, i) == minus_one).expect("GF(q^2) contains the fourth roots of unity for odd q")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCase {
    Even,
    OneMod4,
    ThreeMod4,
}

impl WitnessCase {
    pub fn of(ctx: &FieldCtx) -> Self {
        if ctx.p() == 2 {
            WitnessCase::Even
        } else if ctx.q() % 4 == 1 {
            WitnessCase::OneMod4
        } else {
            WitnessCase::ThreeMod4
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjugator {
    /// `g -> h^-1 g h` in PGL(2,q).
    Proj(ProjMat),
    /// `g -> left * g * right` on SU(2,q).
    Unitary { left: QuadMat, right: QuadMat },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verified {
    pub x_fixed: bool,
    pub y_inverted: bool,
    /// The map is conjugation by an invertible matrix normalizing the model.
    pub is_automorphism: bool,
}

impl Verified {
    pub fn all(&self) -> bool {
        self.x_fixed && self.y_inverted && self.is_automorphism
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedWitness {
    pub case: WitnessCase,
    pub conjugator: Conjugator,
    pub verified: Verified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Triangular {
    Upper,
    Lower,
}

/// `<x, y>` lies in the triangular matrices, so the pair cannot generate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonGeneration {
    pub triangular: Triangular,
    pub subgroup_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MixedOutcome {
    Witness(MixedWitness),
    NonGenerating(NonGeneration),
}

/// Builds the unitary witness for `y` against `x = diag(i, -i)`.
pub fn unitary_witness(ext: &QuadExtCtx, y: &SuElem) -> Result<MixedWitness> {
    let base = ext.base();
    if base.q() % 4 != 3 {
        return Err(precondition("unitary witness needs q = 3 (mod 4)"));
    }
    if !y.is_special_unitary(ext) {
        return Err(precondition("y is not in SU(2,q)"));
    }
    let q = base.q() as u64;
    let i = order_four_element(ext);
    let x = SuElem { a: i, b: QuadElem::ZERO };
    let c = if y.b.is_zero() { QuadElem::ONE } else { ext.pow(y.b, q - 1) };
    let (zero, one) = (QuadElem::ZERO, QuadElem::ONE);
    let left = [zero, ext.conj(c), one, zero];
    let right = [zero, one, c, zero];
    let apply = |g: &SuElem| quad_mat_mul(ext, &quad_mat_mul(ext, &left, &g.matrix(ext)), &right);

    let bracket_scalar = is_scalar(&quad_mat_mul(ext, &left, &right));
    // left * left^* scalar means conjugation by `left` preserves the Hermitian form
    let left_star = [ext.conj(left[0]), ext.conj(left[2]), ext.conj(left[1]), ext.conj(left[3])];
    let left_unitary = is_scalar(&quad_mat_mul(ext, &left, &left_star));
    let x_img = SuElem::from_matrix(ext, &apply(&x));
    let y_img = SuElem::from_matrix(ext, &apply(y));
    let verified = Verified {
        x_fixed: x_img.is_some_and(|e| e.canonical(ext) == x.canonical(ext)),
        y_inverted: y_img == Some(su_inv(ext, y)),
        is_automorphism: bracket_scalar && left_unitary,
    };
    Ok(MixedWitness { case: WitnessCase::ThreeMod4, conjugator: Conjugator::Unitary { left, right }, verified })
}

/// Whether `g -> left * g * right` maps the listed SU elements into SU(2,q).
pub fn unitary_map_preserves(ext: &QuadExtCtx, left: &QuadMat, right: &QuadMat, elems: &[SuElem]) -> bool {
    elems.iter().all(|g| {
        let img = quad_mat_mul(ext, &quad_mat_mul(ext, left, &g.matrix(ext)), right);
        SuElem::from_matrix(ext, &img).is_some()
    })
}

/// First element of order 4 in GF(q)^x, `q = 1 (mod 4)`.
pub fn omega(ctx: &FieldCtx) -> Option<FieldElem> {
    ctx.nonzero_elements().find(|&w| ctx.order(w).ok() == Some(4))
}

/// Standard involution per case: `[[1,1],[0,1]]` for even `q`,
/// `diag(omega, -omega)` for `q = 1 (mod 4)`, `[[0,1],[-1,0]]` otherwise.
pub fn standard_involution(ctx: &FieldCtx) -> ProjMat {
    let (zero, one) = (FieldElem::ZERO, FieldElem::ONE);
    let raw = match WitnessCase::of(ctx) {
        WitnessCase::Even => [one, one, zero, one],
        WitnessCase::OneMod4 => {
            let w = omega(ctx).expect("q = 1 (mod 4) has fourth roots of unity");
            [w, zero, zero, ctx.neg(w)]
        }
        WitnessCase::ThreeMod4 => [zero, one, ctx.neg(one), zero],
    };
    ProjMat::canon(ctx, raw).expect("standard involution is invertible")
}

/// A matrix `t` with `t^-1 g t` equal to the standard involution.
pub fn standardize_involution(table: &GroupTable, g: u32) -> Result<(ProjMat, ProjMat)> {
    if !table.is_involution(g) {
        return Err(precondition("not an involution"));
    }
    let ctx = table.ctx();
    let x0 = standard_involution(ctx);
    let t = solve_conjugator(ctx, &table.elem(g), &x0)
        .into_vec()
        .into_iter()
        .next()
        .ok_or_else(|| precondition("involution not conjugate to the standard one"))?;
    Ok((t, x0))
}

fn triangular_certificate(table: &GroupTable, x: &ProjMat, y: &ProjMat, kind: Triangular) -> Result<NonGeneration> {
    let xi = table.id_of(x).ok_or(Error::ContextMismatch)?;
    let yi = table.id_of(y).ok_or(Error::ContextMismatch)?;
    let sub = table.closure(&[xi, yi]);
    let inside = sub.iter().all(|&g| {
        let m = table.elem(g);
        match kind {
            Triangular::Upper => m.is_upper_triangular(),
            Triangular::Lower => m.is_lower_triangular(),
        }
    });
    if !inside || sub.len() == table.len() {
        return Err(precondition("triangular certificate failed"));
    }
    Ok(NonGeneration { triangular: kind, subgroup_order: sub.len() })
}

fn proj_witness(ctx: &FieldCtx, case: WitnessCase, x: &ProjMat, y: &ProjMat, h: ProjMat) -> MixedWitness {
    MixedWitness {
        case,
        verified: Verified {
            x_fixed: x.conj_by(ctx, &h) == *x,
            y_inverted: y.conj_by(ctx, &h) == y.inv(ctx),
            is_automorphism: !h.is_identity(),
        },
        conjugator: Conjugator::Proj(h),
    }
}

/// Even `q`, `x = [[1,1],[0,1]]`, `y = [[a,b],[c,d]]`: conjugation by
/// `[[c, a+d], [0, c]]` fixes `x` and inverts `y` when `c != 0`.
pub fn mixed_witness_even(table: &GroupTable, x: &ProjMat, y: &ProjMat) -> Result<MixedOutcome> {
    let ctx = table.ctx();
    if ctx.p() != 2 {
        return Err(precondition("even case needs q even"));
    }
    if *x != standard_involution(ctx) {
        return Err(precondition("x must be [[1,1],[0,1]]"));
    }
    let [a, _, c, d] = y.entries();
    if c.is_zero() {
        return Ok(MixedOutcome::NonGenerating(triangular_certificate(table, x, y, Triangular::Upper)?));
    }
    let h = ProjMat::canon(ctx, [c, ctx.add(a, d), FieldElem::ZERO, c])?;
    Ok(MixedOutcome::Witness(proj_witness(ctx, WitnessCase::Even, x, y, h)))
}

/// `q = 1 (mod 4)`, `x = diag(omega, -omega)`, `y = [[a,b],[c,d]]`:
/// conjugation by `[[0, b], [-c, 0]]` fixes `x` and inverts `y` when `bc != 0`.
pub fn mixed_witness_1mod4(table: &GroupTable, x: &ProjMat, y: &ProjMat) -> Result<MixedOutcome> {
    let ctx = table.ctx();
    if WitnessCase::of(ctx) != WitnessCase::OneMod4 {
        return Err(precondition("needs q = 1 (mod 4)"));
    }
    if *x != standard_involution(ctx) {
        return Err(precondition("x must be diag(omega, -omega)"));
    }
    let [_, b, c, _] = y.entries();
    if c.is_zero() {
        return Ok(MixedOutcome::NonGenerating(triangular_certificate(table, x, y, Triangular::Upper)?));
    }
    if b.is_zero() {
        return Ok(MixedOutcome::NonGenerating(triangular_certificate(table, x, y, Triangular::Lower)?));
    }
    let h = ProjMat::canon(ctx, [FieldElem::ZERO, b, ctx.neg(c), FieldElem::ZERO])?;
    Ok(MixedOutcome::Witness(proj_witness(ctx, WitnessCase::OneMod4, x, y, h)))
}

/// Result of [`mixed_nontrivial_aut`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MixedAut {
    /// A nonidentity automorphism with `x -> x`, `y -> y^-1`.
    Found { alpha: SemiAut, case: WitnessCase, constructive: bool },
    /// The pair sits in a triangular subgroup after standardization.
    NonGenerating(NonGeneration),
}

/// For `o(x) = 2 < o(y)`, an automorphism fixing `{x, y, y^-1}`.
pub fn mixed_nontrivial_aut(table: &GroupTable, x: u32, y: u32) -> Result<MixedAut> {
    let ctx = table.ctx();
    if !table.is_involution(x) {
        return Err(precondition("x must be an involution"));
    }
    if y == table.identity() || table.is_involution(y) {
        return Err(precondition("y must have order > 2"));
    }
    let (mx, my) = (table.elem(x), table.elem(y));
    let my_inv = my.inv(ctx);
    let case = WitnessCase::of(ctx);
    let alpha = match case {
        WitnessCase::ThreeMod4 => {
            let alpha = automorphisms_mapping(ctx, &mx, &mx)
                .into_iter()
                .find(|a| a.apply(ctx, &my) == my_inv)
                .ok_or_else(|| precondition("no automorphism fixes x and inverts y"))?;
            return Ok(MixedAut::Found { alpha, case, constructive: false });
        }
        WitnessCase::Even | WitnessCase::OneMod4 => {
            let (t, x0) = standardize_involution(table, x)?;
            let y0 = my.conj_by(ctx, &t);
            let outcome = if case == WitnessCase::Even {
                mixed_witness_even(table, &x0, &y0)?
            } else {
                mixed_witness_1mod4(table, &x0, &y0)?
            };
            match outcome {
                MixedOutcome::NonGenerating(cert) => return Ok(MixedAut::NonGenerating(cert)),
                MixedOutcome::Witness(w) => {
                    if !w.verified.all() {
                        return Err(precondition("constructed conjugator failed verification"));
                    }
                    let Conjugator::Proj(h) = w.conjugator else {
                        unreachable!("matrix cases produce projective conjugators")
                    };
                    // back to the original frame: conjugate by t h t^-1
                    SemiAut::conjugation(t.mul(ctx, &h).mul(ctx, &t.inv(ctx)))
                }
            }
        }
    };
    if alpha.is_identity() || alpha.apply(ctx, &mx) != mx || alpha.apply(ctx, &my) != my_inv {
        return Err(precondition("transported witness failed verification"));
    }
    Ok(MixedAut::Found { alpha, case, constructive: true })
}

/// A pair `(x, y)` with `o(x) = 2 < o(y)`, `<x, y>` proper, and no nonidentity
/// automorphism fixing `{x, y, y^-1}`. With `all_x` false only the first
/// involution is tried for `x`, which suffices because all involutions are
/// conjugate under automorphisms.
pub fn remark_counterexample(table: &GroupTable, auts: &[SemiAut], all_x: bool) -> Option<(u32, u32)> {
    let ctx = table.ctx();
    let involutions = table.involutions();
    let xs = if all_x { &involutions[..] } else { &involutions[..1.min(involutions.len())] };
    for &x in xs {
        for y in 1..table.len() as u32 {
            if table.is_involution(y) || table.generates(&[x, y]) {
                continue;
            }
            let set = [x, y, table.inv(y)].map(|g| table.elem(g));
            if !auts.iter().any(|a| !a.is_identity() && a.stabilizes(ctx, &set)) {
                return Some((x, y));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgrp::aut_enumerate;
    use crate::pgl2::GroupKind;

    fn psl(q: u32) -> GroupTable {
        GroupTable::enumerate(FieldCtx::with_order(q).unwrap(), GroupKind::Psl).unwrap()
    }

    fn ext(q: u32) -> QuadExtCtx {
        QuadExtCtx::new(FieldCtx::with_order(q).unwrap())
    }

    #[test]
    fn su_counts() {
        for (q, n) in [(3u32, 24usize), (7, 336)] {
            let e = ext(q);
            let all = su_enumerate(&e).unwrap();
            assert_eq!(all.len(), n);
            assert_eq!(psu_enumerate(&e).unwrap().len(), n / 2);
            assert!(all.contains(&SuElem::identity()));
        }
        assert!(su_enumerate(&ext(8)).is_err());
    }

    #[test]
    fn su_group_laws() {
        for q in [3u32, 7] {
            let e = ext(q);
            let all = su_enumerate(&e).unwrap();
            for x in &all {
                assert_eq!(su_mul(&e, &su_inv(&e, x), x), SuElem::identity());
                assert_eq!(su_mul(&e, x, &SuElem::identity()), *x);
            }
            for x in all.iter().step_by(5) {
                for y in all.iter().step_by(7) {
                    let xy = su_mul(&e, x, y);
                    assert!(xy.is_special_unitary(&e));
                    assert_eq!(SuElem::from_matrix(&e, &quad_mat_mul(&e, &x.matrix(&e), &y.matrix(&e))), Some(xy));
                }
            }
        }
    }

    #[test]
    fn unitary_witness_identity_and_q7() {
        let e = ext(7);
        let w = unitary_witness(&e, &SuElem::identity()).unwrap();
        assert!(w.verified.all());
        let all = su_enumerate(&e).unwrap();
        let y = all.iter().find(|g| g.a.is_zero()).unwrap();
        let w = unitary_witness(&e, y).unwrap();
        assert!(w.verified.all());
        for y in &all {
            let w = unitary_witness(&e, y).unwrap();
            assert!(w.verified.all(), "{y:?}");
            let Conjugator::Unitary { left, right } = w.conjugator else { panic!() };
            assert!(unitary_map_preserves(&e, &left, &right, &all));
        }
        assert!(unitary_witness(&ext(5), &SuElem::identity()).is_err());
    }

    #[test]
    fn even_witness_q8_exhaustive() {
        let t = psl(8);
        let ctx = t.ctx();
        let x = standard_involution(ctx);
        for &y in t.elems() {
            if y.is_identity() || y.is_involution(ctx) {
                continue;
            }
            match mixed_witness_even(&t, &x, &y).unwrap() {
                MixedOutcome::Witness(w) => assert!(w.verified.all()),
                MixedOutcome::NonGenerating(c) => assert!(y.is_upper_triangular() && c.subgroup_order < t.len()),
            }
        }
        let y_upper = ProjMat::canon(
            ctx,
            [FieldElem::ONE, FieldElem::ONE, FieldElem::ZERO, ctx.from_coeffs(&[0, 1, 0]).unwrap()],
        )
        .unwrap();
        assert!(matches!(mixed_witness_even(&t, &x, &y_upper).unwrap(), MixedOutcome::NonGenerating(_)));
        assert!(mixed_witness_even(&t, &y_upper, &x).is_err());
    }

    #[test]
    fn one_mod_four_witness() {
        let t = psl(5);
        let ctx = t.ctx();
        let x = standard_involution(ctx);
        assert_eq!(x, ProjMat::from_ints(ctx, [1, 0, 0, -1]).unwrap());
        for &y in t.elems() {
            let [_, b, c, _] = y.entries();
            if let MixedOutcome::Witness(w) = mixed_witness_1mod4(&t, &x, &y).unwrap() {
                assert!(!b.is_zero() && !c.is_zero());
                assert!(w.verified.x_fixed);
                assert!(w.verified.y_inverted);
            }
        }
        let t13 = psl(13);
        let c13 = t13.ctx();
        let y = ProjMat::from_ints(c13, [0, 1, -1, 0]).unwrap();
        let MixedOutcome::Witness(w) = mixed_witness_1mod4(&t13, &standard_involution(c13), &y).unwrap() else {
            panic!()
        };
        assert_eq!(w.conjugator, Conjugator::Proj(ProjMat::from_ints(c13, [0, 1, 1, 0]).unwrap()));
        let t9 = psl(9);
        let c9 = t9.ctx();
        let w = omega(c9).unwrap();
        let diag = ProjMat::canon(c9, [w, FieldElem::ZERO, FieldElem::ZERO, FieldElem::ONE]).unwrap();
        assert!(matches!(
            mixed_witness_1mod4(&t9, &standard_involution(c9), &diag).unwrap(),
            MixedOutcome::NonGenerating(_)
        ));
    }

    #[test]
    fn standardization() {
        for q in [8u32, 13, 7] {
            let t = psl(q);
            let ctx = t.ctx();
            for &g in t.involutions().iter().step_by(5) {
                let (tm, x0) = standardize_involution(&t, g).unwrap();
                assert_eq!(t.elem(g).conj_by(ctx, &tm), x0);
            }
        }
    }

    #[test]
    fn mixed_aut_all_cases() {
        for q in [7u32, 8, 13] {
            let t = psl(q);
            let ctx = t.ctx();
            let inv = t.involutions();
            let ys: Vec<u32> = (1..t.len() as u32).filter(|&g| !t.is_involution(g)).step_by(17).collect();
            for &x in inv.iter().step_by(7) {
                for &y in &ys {
                    match mixed_nontrivial_aut(&t, x, y).unwrap() {
                        MixedAut::Found { alpha, .. } => {
                            let s = [x, y, t.inv(y)].map(|g| t.elem(g));
                            assert!(!alpha.is_identity() && alpha.stabilizes(ctx, &s));
                        }
                        MixedAut::NonGenerating(_) => assert!(!t.generates(&[x, y])),
                    }
                }
            }
        }
    }

    #[test]
    fn remark_cases() {
        for (q, exists) in [(8u32, true), (13, true), (7, false)] {
            let t = psl(q);
            let auts = aut_enumerate(t.ctx());
            let found = remark_counterexample(&t, &auts, q == 7);
            assert_eq!(found.is_some(), exists, "q={q}");
        }
    }
}
