//! PGL(2,q) and PSL(2,q) as enumerated tables of canonical projective matrices.

use std::collections::VecDeque;

use crate::error::{precondition, Error, Result};
use crate::gfq::{FieldCtx, FieldElem};

/// Largest `q` for which [`GroupTable`] will build its dense index.
pub const MAX_TABLE_Q: u32 = 256;

/// An invertible 2x2 matrix up to scalars, stored row-major with the first
/// nonzero entry equal to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct ProjMat([FieldElem; 4]);

impl ProjMat {
    pub fn identity() -> Self {
        ProjMat([FieldElem::ONE, FieldElem::ZERO, FieldElem::ZERO, FieldElem::ONE])
    }

    /// Canonical representative of the projective class of `raw`.
    pub fn canon(ctx: &FieldCtx, raw: [FieldElem; 4]) -> Result<Self> {
        if raw.iter().any(|&x| !ctx.contains(x)) {
            return Err(Error::ContextMismatch);
        }
        if det(ctx, &raw).is_zero() {
            return Err(Error::Singular);
        }
        Ok(Self::canon_unchecked(ctx, raw))
    }

    /// Parses entries given as small integers (prime subfield only).
    pub fn from_ints(ctx: &FieldCtx, raw: [i64; 4]) -> Result<Self> {
        Self::canon(ctx, raw.map(|x| ctx.from_int(x)))
    }

    pub(crate) fn canon_unchecked(ctx: &FieldCtx, raw: [FieldElem; 4]) -> Self {
        let lead = raw.iter().copied().find(|x| !x.is_zero()).expect("nonzero matrix");
        if lead == FieldElem::ONE {
            return ProjMat(raw);
        }
        let scale = ctx.inv(lead).expect("lead is nonzero");
        ProjMat(raw.map(|x| ctx.mul(x, scale)))
    }

    pub fn entries(&self) -> [FieldElem; 4] {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Determinant of the canonical representative.
    pub fn det(&self, ctx: &FieldCtx) -> FieldElem {
        det(ctx, &self.0)
    }

    pub fn trace(&self, ctx: &FieldCtx) -> FieldElem {
        ctx.add(self.0[0], self.0[3])
    }

    pub fn mul(&self, ctx: &FieldCtx, rhs: &ProjMat) -> ProjMat {
        Self::canon_unchecked(ctx, raw_mul(ctx, &self.0, &rhs.0))
    }

    pub fn inv(&self, ctx: &FieldCtx) -> ProjMat {
        let [a, b, c, d] = self.0;
        Self::canon_unchecked(ctx, [d, ctx.neg(b), ctx.neg(c), a])
    }

    /// `m^-1 * self * m`.
    pub fn conj_by(&self, ctx: &FieldCtx, m: &ProjMat) -> ProjMat {
        let [a, b, c, d] = m.0;
        let adj = [d, ctx.neg(b), ctx.neg(c), a];
        Self::canon_unchecked(ctx, raw_mul(ctx, &raw_mul(ctx, &adj, &self.0), &m.0))
    }

    /// Entrywise Frobenius `x -> x^(p^k)`.
    pub fn frobenius(&self, ctx: &FieldCtx, k: u32) -> ProjMat {
        Self::canon_unchecked(ctx, self.0.map(|x| ctx.frobenius(x, k as i64)))
    }

    /// Order in PGL(2,q), by repeated multiplication.
    pub fn order(&self, ctx: &FieldCtx) -> u32 {
        let bound = 2 * ctx.q() + 2;
        let mut acc = *self;
        let mut n = 1;
        while !acc.is_identity() {
            acc = acc.mul(ctx, self);
            n += 1;
            assert!(n <= bound, "element order exceeds q+1");
        }
        n
    }

    /// Whether the class lies in PSL(2,q); rescaling multiplies the
    /// determinant by a square, so this is well defined.
    pub fn in_psl(&self, ctx: &FieldCtx) -> bool {
        ctx.is_square(self.det(ctx))
    }

    /// Order exactly 2; for a non-scalar matrix `g^2` is scalar iff `tr g = 0`.
    pub fn is_involution(&self, ctx: &FieldCtx) -> bool {
        !self.is_identity() && self.trace(ctx).is_zero()
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.0[2].is_zero()
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.0[1].is_zero()
    }

    pub fn format(&self, ctx: &FieldCtx) -> String {
        let e = self.0.map(|x| ctx.format(x));
        format!("[[{},{}],[{},{}]]", e[0], e[1], e[2], e[3])
    }

    /// Entries as field indices, row-major.
    pub fn to_indices(&self) -> [u32; 4] {
        self.0.map(FieldElem::index)
    }
}

fn det(ctx: &FieldCtx, m: &[FieldElem; 4]) -> FieldElem {
    ctx.sub(ctx.mul(m[0], m[3]), ctx.mul(m[1], m[2]))
}

pub(crate) fn raw_mul(ctx: &FieldCtx, a: &[FieldElem; 4], b: &[FieldElem; 4]) -> [FieldElem; 4] {
    [
        ctx.add(ctx.mul(a[0], b[0]), ctx.mul(a[1], b[2])),
        ctx.add(ctx.mul(a[0], b[1]), ctx.mul(a[1], b[3])),
        ctx.add(ctx.mul(a[2], b[0]), ctx.mul(a[3], b[2])),
        ctx.add(ctx.mul(a[2], b[1]), ctx.mul(a[3], b[3])),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Psl,
    Pgl,
}

/// Canonical projective matrices in enumeration order: leading entry 1 first
/// (lexicographic in the remaining three entries), then leading row `(0, 1)`.
pub fn canonical_matrices(ctx: &FieldCtx) -> impl Iterator<Item = ProjMat> + '_ {
    let one = FieldElem::ONE;
    let zero = FieldElem::ZERO;
    let top = ctx
        .elements()
        .flat_map(move |b| ctx.elements().flat_map(move |c| ctx.elements().map(move |d| ProjMat([one, b, c, d]))));
    let bottom = ctx.nonzero_elements().flat_map(move |c| ctx.elements().map(move |d| ProjMat([zero, one, c, d])));
    top.chain(bottom).filter(move |m| !m.det(ctx).is_zero())
}

/// Every element of PGL(2,q) or PSL(2,q) with a dense id, identity at 0.
#[derive(Clone, Debug)]
pub struct GroupTable {
    ctx: FieldCtx,
    kind: GroupKind,
    elems: Vec<ProjMat>,
    index: Vec<u32>,
    d: u32,
}

const ABSENT: u32 = u32::MAX;

impl GroupTable {
    pub fn enumerate(ctx: FieldCtx, kind: GroupKind) -> Result<Self> {
        let elems: Vec<ProjMat> =
            canonical_matrices(&ctx).filter(|m| kind == GroupKind::Pgl || m.in_psl(&ctx)).collect();
        Self::from_elements(ctx, kind, elems)
    }

    /// Builds a table from an element list in table order (used by the cache).
    pub fn from_elements(ctx: FieldCtx, kind: GroupKind, elems: Vec<ProjMat>) -> Result<Self> {
        let q = ctx.q();
        if q > MAX_TABLE_Q {
            return Err(Error::GroupTooLarge(q));
        }
        let d = if q.is_multiple_of(2) { 1 } else { 2 };
        let qq = q as u64;
        let expected = qq * (qq * qq - 1) / if kind == GroupKind::Psl { d as u64 } else { 1 };
        if elems.len() as u64 != expected {
            return Err(precondition(format!("element list has {} entries, expected {expected}", elems.len())));
        }
        let mut index = vec![ABSENT; (qq * qq * qq + qq * qq) as usize];
        for (id, m) in elems.iter().enumerate() {
            let slot = slot(q, m);
            if index[slot] != ABSENT || ProjMat::canon(&ctx, m.0).ok() != Some(*m) {
                return Err(precondition("element list has duplicate or non-canonical entries"));
            }
            if kind == GroupKind::Psl && !m.in_psl(&ctx) {
                return Err(precondition("element outside PSL(2,q)"));
            }
            index[slot] = id as u32;
        }
        if elems.first().map(ProjMat::is_identity) != Some(true) {
            return Err(precondition("identity must come first"));
        }
        Ok(GroupTable { ctx, kind, elems, index, d })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn q(&self) -> u32 {
        self.ctx.q()
    }

    /// `gcd(2, q-1)`.
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn elems(&self) -> &[ProjMat] {
        &self.elems
    }

    pub fn elem(&self, id: u32) -> ProjMat {
        self.elems[id as usize]
    }

    pub fn id_of(&self, m: &ProjMat) -> Option<u32> {
        let i = self.index[slot(self.q(), m)];
        (i != ABSENT).then_some(i)
    }

    fn lookup(&self, m: &ProjMat) -> u32 {
        self.id_of(m).expect("group is closed under its operations")
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.lookup(&self.elem(a).mul(&self.ctx, &self.elem(b)))
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.lookup(&self.elem(a).inv(&self.ctx))
    }

    /// `h^-1 g h`.
    pub fn conj(&self, g: u32, h: u32) -> u32 {
        self.lookup(&self.elem(g).conj_by(&self.ctx, &self.elem(h)))
    }

    pub fn order(&self, g: u32) -> u32 {
        self.elem(g).order(&self.ctx)
    }

    pub fn is_involution(&self, g: u32) -> bool {
        self.elem(g).is_involution(&self.ctx)
    }

    /// Ids of all elements of order 2, ascending.
    pub fn involutions(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&g| self.is_involution(g)).collect()
    }

    /// The subgroup generated by `gens`, as sorted ids.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        self.closure_bounded(gens, usize::MAX).0
    }

    /// Breadth-first closure that stops once more than `limit` elements are
    /// reached; the flag reports whether it stopped early.
    fn closure_bounded(&self, gens: &[u32], limit: usize) -> (Vec<u32>, bool) {
        let mut seen = vec![false; self.len()];
        let mut members = vec![0u32];
        seen[0] = true;
        let mut queue = VecDeque::from([0u32]);
        while let Some(g) = queue.pop_front() {
            for &s in gens {
                let h = self.mul(g, s);
                if !seen[h as usize] {
                    seen[h as usize] = true;
                    members.push(h);
                    if members.len() > limit {
                        return (members, true);
                    }
                    queue.push_back(h);
                }
            }
        }
        members.sort_unstable();
        (members, false)
    }

    /// Whether `gens` generate the whole table. A proper subgroup has at most
    /// half the elements, so the search stops as soon as that is exceeded.
    pub fn generates(&self, gens: &[u32]) -> bool {
        let (members, overflow) = self.closure_bounded(gens, self.len() / 2);
        overflow || members.len() == self.len()
    }

    pub fn is_closed(&self, set: &[u32]) -> bool {
        let mut mask = vec![false; self.len()];
        for &g in set {
            mask[g as usize] = true;
        }
        set.iter().all(|&a| set.iter().all(|&b| mask[self.mul(a, b) as usize]))
    }

    pub fn centralizer(&self, g: u32) -> Vec<u32> {
        let m = self.elem(g);
        (0..self.len() as u32)
            .filter(|&h| {
                let x = self.elem(h);
                m.mul(&self.ctx, &x) == x.mul(&self.ctx, &m)
            })
            .collect()
    }

    pub fn conj_class(&self, g: u32) -> Vec<u32> {
        let mut mask = vec![false; self.len()];
        for h in 0..self.len() as u32 {
            mask[self.conj(g, h) as usize] = true;
        }
        (0..self.len() as u32).filter(|&x| mask[x as usize]).collect()
    }

    pub fn is_conjugate(&self, g: u32, h: u32) -> bool {
        (0..self.len() as u32).any(|t| self.conj(g, t) == h)
    }

    /// A cyclic rotation of order `(q+1)/d` and an involution inverting it,
    /// both taken as the first such elements in table order.
    pub fn max_dihedral_pair(&self) -> Result<DihedralPair> {
        let q = self.q();
        if q < 5 {
            return Err(precondition("dihedral pair needs q >= 5"));
        }
        let half = (q + 1) / self.d;
        let rotation = (0..self.len() as u32)
            .find(|&g| self.order(g) == half)
            .ok_or_else(|| precondition("no element of order (q+1)/d"))?;
        let rot_inv = self.inv(rotation);
        let t = (0..self.len() as u32)
            .find(|&t| self.is_involution(t) && self.conj(rotation, t) == rot_inv)
            .ok_or_else(|| precondition("no involution inverts the rotation"))?;
        let x = t;
        let y = self.mul(t, rotation);
        let subgroup = self.closure(&[x, y]);
        debug_assert_eq!(subgroup.len() as u32, 2 * half);
        Ok(DihedralPair { x, y, subgroup, rotation })
    }

    /// Greedy generating set of a subgroup.
    pub fn generators_of(&self, subgroup: &[u32]) -> Vec<u32> {
        let mut gens: Vec<u32> = Vec::new();
        let mut span = vec![0u32];
        for &h in subgroup {
            if span.binary_search(&h).is_err() {
                gens.push(h);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Whether a proper subgroup is maximal: adjoining any outside element
    /// must generate everything. One representative per double coset `HgH`
    /// is enough, since all of them generate the same subgroup with `H`.
    pub fn is_maximal(&self, subgroup: &[u32]) -> Result<bool> {
        let mut sub: Vec<u32> = subgroup.to_vec();
        sub.sort_unstable();
        sub.dedup();
        if sub.is_empty() || !self.is_closed(&sub) {
            return Err(Error::NotClosed);
        }
        if sub.len() == self.len() {
            return Err(precondition("subgroup is not proper"));
        }
        let gens = self.generators_of(&sub);
        let mut covered = vec![false; self.len()];
        for &h in &sub {
            covered[h as usize] = true;
        }
        for g in 0..self.len() as u32 {
            if covered[g as usize] {
                continue;
            }
            for &a in &sub {
                let ag = self.mul(a, g);
                for &b in &sub {
                    covered[self.mul(ag, b) as usize] = true;
                }
            }
            let mut with_g = gens.clone();
            with_g.push(g);
            if !self.generates(&with_g) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Runs [`Self::is_maximal`] and keeps a certificate when it succeeds.
    pub fn certify_maximal(&self, subgroup: &[u32]) -> Result<Option<MaximalCertificate>> {
        let mut sub = subgroup.to_vec();
        sub.sort_unstable();
        sub.dedup();
        Ok(self.is_maximal(&sub)?.then(|| MaximalCertificate { q: self.q(), subgroup: sub }))
    }
}

fn slot(q: u32, m: &ProjMat) -> usize {
    let [a, b, c, d] = m.0.map(|x| x.index() as usize);
    let q = q as usize;
    if a == 1 {
        (b * q + c) * q + d
    } else {
        q * q * q + c * q + d
    }
}

/// Proof that a subgroup was checked maximal, so later generation tests may
/// reduce to "outside the subgroup".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalCertificate {
    q: u32,
    subgroup: Vec<u32>,
}

impl MaximalCertificate {
    pub fn subgroup(&self) -> &[u32] {
        &self.subgroup
    }

    pub fn covers(&self, table: &GroupTable, subgroup: &[u32]) -> bool {
        let mut sub = subgroup.to_vec();
        sub.sort_unstable();
        table.q() == self.q && sub == self.subgroup
    }
}

/// Two involutions generating a dihedral subgroup of order `2(q+1)/d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralPair {
    pub x: u32,
    pub y: u32,
    /// Sorted ids of `<x, y>`.
    pub subgroup: Vec<u32>,
    /// `x * y`-type generator of the cyclic part, of order `(q+1)/d`.
    pub rotation: u32,
}

/// Exact number of involutions in PSL(2,q), `q >= 5`.
pub fn involution_count_formula(ctx: &FieldCtx) -> u64 {
    let q = ctx.q() as u64;
    if ctx.p() == 2 {
        q * q - 1
    } else if q % 4 == 1 {
        q * (q + 1) / 2
    } else {
        q * (q - 1) / 2
    }
}

/// Whether a set of ids is a dihedral group of order `2n` (`n >= 2`): some
/// element of order `n` is inverted by an involution outside its span.
pub fn is_dihedral(table: &GroupTable, set: &[u32]) -> bool {
    if set.len() < 4 || !set.len().is_multiple_of(2) {
        return false;
    }
    let n = (set.len() / 2) as u32;
    set.iter().any(|&a| {
        if table.order(a) != n {
            return false;
        }
        let span = table.closure(&[a]);
        let a_inv = table.inv(a);
        set.iter().any(|&t| span.binary_search(&t).is_err() && table.is_involution(t) && table.conj(a, t) == a_inv)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psl(q: u32) -> GroupTable {
        GroupTable::enumerate(FieldCtx::with_order(q).unwrap(), GroupKind::Psl).unwrap()
    }

    #[test]
    fn canonical_form() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert!(ProjMat::from_ints(&f5, [2, 0, 0, 2]).unwrap().is_identity());
        let m = ProjMat::from_ints(&f5, [0, 3, 1, 0]).unwrap();
        assert_eq!(m, ProjMat::from_ints(&f5, [0, 1, 2, 0]).unwrap());
        assert_eq!(m.to_indices(), [0, 1, 2, 0]);
        let u = ProjMat::from_ints(&f5, [1, 1, 0, 1]).unwrap();
        assert_eq!(u.to_indices(), [1, 1, 0, 1]);
        assert!(matches!(ProjMat::from_ints(&f5, [1, 2, 2, 4]), Err(Error::Singular)));
    }

    #[test]
    fn canon_is_scale_invariant() {
        let ctx = FieldCtx::with_order(9).unwrap();
        for m in canonical_matrices(&ctx).step_by(7) {
            for l in ctx.nonzero_elements() {
                let scaled = m.entries().map(|x| ctx.mul(x, l));
                assert_eq!(ProjMat::canon(&ctx, scaled).unwrap(), m);
            }
        }
    }

    #[test]
    fn orders_and_membership() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(ProjMat::from_ints(&f5, [1, 1, 0, 1]).unwrap().order(&f5), 5);
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(ProjMat::from_ints(&f7, [0, 1, -1, 0]).unwrap().order(&f7), 2);
        assert!(!ProjMat::from_ints(&f7, [1, 0, 0, 3]).unwrap().in_psl(&f7));
        assert!(ProjMat::identity().in_psl(&f7));
        let f8 = FieldCtx::new(2, 3).unwrap();
        assert!(canonical_matrices(&f8).all(|m| m.in_psl(&f8)));
        for m in canonical_matrices(&f7) {
            assert!(m.order(&f7) <= 8);
            assert!(m.mul(&f7, &m.inv(&f7)).is_identity());
        }
    }

    #[test]
    fn group_sizes() {
        assert_eq!(psl(5).len(), 60);
        assert_eq!(psl(7).len(), 168);
        let pgl8 = GroupTable::enumerate(FieldCtx::with_order(8).unwrap(), GroupKind::Pgl).unwrap();
        assert_eq!(pgl8.elems(), psl(8).elems());
        assert_eq!(pgl8.len(), 504);
        for q in [4u32, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32] {
            let ctx = FieldCtx::with_order(q).unwrap();
            let pgl = GroupTable::enumerate(ctx.clone(), GroupKind::Pgl).unwrap();
            let psl = GroupTable::enumerate(ctx, GroupKind::Psl).unwrap();
            assert_eq!(psl.len() as u32 * psl.d(), pgl.len() as u32);
            assert!(psl.elem(0).is_identity());
            for id in (0..psl.len() as u32).step_by(11) {
                assert_eq!(psl.id_of(&psl.elem(id)), Some(id));
            }
        }
    }

    #[test]
    fn involution_counts() {
        assert_eq!(psl(7).involutions().len(), 21);
        assert_eq!(psl(5).involutions().len(), 15);
        assert_eq!(psl(8).involutions().len(), 63);
        let t = psl(7);
        for g in 0..t.len() as u32 {
            assert_eq!(t.is_involution(g), t.order(g) == 2);
        }
    }

    #[test]
    fn involution_formula_matches_scan() {
        for q in (5..=81u32).filter(|&q| crate::gfq::prime_power(q).is_some()) {
            let t = psl(q);
            let n = t.involutions().len() as u64;
            assert_eq!(involution_count_formula(t.ctx()), n, "q={q}");
            let (lo, hi) = crate::bounds::involution_bounds(q);
            assert!(lo <= n && n <= hi);
        }
    }

    #[test]
    fn closure_and_dihedral() {
        let t = psl(7);
        assert_eq!(t.closure(&[0]), vec![0]);
        let pair = t.max_dihedral_pair().unwrap();
        assert_eq!(pair.subgroup.len(), 8);
        assert!(!t.is_maximal(&pair.subgroup).unwrap());
        let t11 = psl(11);
        let pair = t11.max_dihedral_pair().unwrap();
        assert_eq!(t11.closure(&[pair.x, pair.y]).len(), 12);
        assert!(t11.is_maximal(&pair.subgroup).unwrap());
        assert!(is_dihedral(&t11, &pair.subgroup));
        let t16 = psl(16);
        assert_eq!(t16.max_dihedral_pair().unwrap().subgroup.len(), 34);
        let outside = t11.involutions().into_iter().find(|z| pair.subgroup.binary_search(z).is_err()).unwrap();
        assert!(t11.generates(&[pair.x, pair.y, outside]));
        assert!(!t11.generates(&[pair.x, pair.y]));
    }

    #[test]
    fn maximality_by_residue_class() {
        for (q, expected) in [(7, false), (9, false), (11, true), (13, true)] {
            let t = psl(q);
            let pair = t.max_dihedral_pair().unwrap();
            assert_eq!(t.is_maximal(&pair.subgroup).unwrap(), expected, "q={q}");
        }
        let t = psl(5);
        assert!(!t.is_maximal(&[0]).unwrap());
        let inv = t.involutions();
        assert!(matches!(t.is_maximal(&[0, inv[0], inv[1]]), Err(Error::NotClosed)));
    }

    #[test]
    fn dihedral_pair_structure_range() {
        for q in (5..=31u32).filter(|&q| crate::gfq::prime_power(q).is_some()) {
            let t = psl(q);
            let pair = t.max_dihedral_pair().unwrap();
            let n = (q + 1) / t.d();
            assert_eq!(pair.subgroup.len() as u32, 2 * n, "q={q}");
            assert!(t.is_involution(pair.x) && t.is_involution(pair.y));
            assert_eq!(t.order(pair.rotation), n);
            assert_eq!(t.conj(pair.rotation, pair.x), t.inv(pair.rotation));
        }
    }

    #[test]
    fn centralizer_orders() {
        for (q, expected) in [(13, 12), (7, 8), (8, 8), (5, 4), (9, 8)] {
            let t = psl(q);
            let inv = t.involutions();
            let cen = t.centralizer(inv[0]);
            assert_eq!(cen.len(), expected, "q={q}");
            let class = t.conj_class(inv[0]);
            assert_eq!(class, inv);
            assert_eq!(cen.len() * class.len(), t.len());
        }
    }

    #[test]
    fn conjugacy_queries() {
        let t = psl(5);
        let inv = t.involutions();
        assert!(t.is_conjugate(inv[0], inv[7]));
        let order5 = (0..60).find(|&g| t.order(g) == 5).unwrap();
        assert!(!t.is_conjugate(inv[0], order5));
    }
}
