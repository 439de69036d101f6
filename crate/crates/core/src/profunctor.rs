//! Bimodules between finite categories.
//!
//! A [`Profunctor`] from `X` to `Y` is stored fiberwise: a finite element set
//! over every pair `(x, y)` together with a left action of `X`-morphisms
//! (precomposition) and a right action of `Y`-morphisms (postcomposition).
//! Composition of profunctors quotients the pair set by the middle action
//! using union-find with least-index representatives; any map out of such a
//! quotient is verified to be constant on classes rather than assumed.
//!
//! Monads on an endo-profunctor come with their Kleisli category, both for
//! profunctor data and for a monad carried by an endofunctor.

use std::collections::BTreeMap;

use crate::fincat::{check_functor, check_nat_trans, FinCat, Functor, NatTrans};
use crate::util::UnionFind;
use crate::StructuralError;

/// A bimodule `X -|-> Y`: elements point from `X` to `Y`, the left action
/// precomposes with `X`-morphisms, the right action postcomposes with
/// `Y`-morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profunctor {
    source: FinCat,
    target: FinCat,
    /// global element index -> (source object, target object)
    elems: Vec<(usize, usize)>,
    /// `(u, e)` with `cod(u) = src(e)` -> element over `(dom(u), tgt(e))`
    left: BTreeMap<(usize, usize), usize>,
    /// `(e, v)` with `dom(v) = tgt(e)` -> element over `(src(e), cod(v))`
    right: BTreeMap<(usize, usize), usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProfViolation {
    #[error("identity action is not the identity on element {elem}")]
    Unit { elem: usize },
    #[error("left action functoriality fails on (u={u}, u2={u2}, elem={elem})")]
    LeftFunctoriality { u: usize, u2: usize, elem: usize },
    #[error("right action functoriality fails on (v={v}, v2={v2}, elem={elem})")]
    RightFunctoriality { v: usize, v2: usize, elem: usize },
    #[error("left and right actions do not commute on (u={u}, elem={elem}, v={v})")]
    Commutation { u: usize, elem: usize, v: usize },
}

impl Profunctor {
    /// Builds a profunctor from explicit element and action tables, checking
    /// structural consistency (indices, definedness shape, result fibers).
    pub fn new(
        source: FinCat,
        target: FinCat,
        elems: Vec<(usize, usize)>,
        left: BTreeMap<(usize, usize), usize>,
        right: BTreeMap<(usize, usize), usize>,
    ) -> Result<Profunctor, StructuralError> {
        for (i, &(x, y)) in elems.iter().enumerate() {
            if x >= source.object_count() || y >= target.object_count() {
                return Err(StructuralError::new(format!(
                    "element {i} lies over out-of-range objects"
                )));
            }
        }
        let p = Profunctor {
            source,
            target,
            elems,
            left,
            right,
        };
        p.check_shape()?;
        Ok(p)
    }

    fn check_shape(&self) -> Result<(), StructuralError> {
        for u in 0..self.source.morphism_count() {
            for (e, &(x, y)) in self.elems.iter().enumerate() {
                let required = self.source.cod(u) == x;
                match self.left.get(&(u, e)) {
                    None if required => {
                        return Err(StructuralError::new(format!(
                            "missing left action entry (u={u}, elem={e})"
                        )))
                    }
                    Some(_) if !required => {
                        return Err(StructuralError::new(format!(
                            "spurious left action entry (u={u}, elem={e})"
                        )))
                    }
                    Some(&r) => {
                        let expected = (self.source.dom(u), y);
                        if *self
                            .elems
                            .get(r)
                            .ok_or_else(|| StructuralError::new("left action out of range"))?
                            != expected
                        {
                            return Err(StructuralError::new(format!(
                                "left action (u={u}, elem={e}) lands in the wrong fiber"
                            )));
                        }
                    }
                    None => {}
                }
            }
        }
        for v in 0..self.target.morphism_count() {
            for (e, &(x, y)) in self.elems.iter().enumerate() {
                let required = self.target.dom(v) == y;
                match self.right.get(&(e, v)) {
                    None if required => {
                        return Err(StructuralError::new(format!(
                            "missing right action entry (elem={e}, v={v})"
                        )))
                    }
                    Some(_) if !required => {
                        return Err(StructuralError::new(format!(
                            "spurious right action entry (elem={e}, v={v})"
                        )))
                    }
                    Some(&r) => {
                        let expected = (x, self.target.cod(v));
                        if *self
                            .elems
                            .get(r)
                            .ok_or_else(|| StructuralError::new("right action out of range"))?
                            != expected
                        {
                            return Err(StructuralError::new(format!(
                                "right action (elem={e}, v={v}) lands in the wrong fiber"
                            )));
                        }
                    }
                    None => {}
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &FinCat {
        &self.source
    }

    pub fn target(&self) -> &FinCat {
        &self.target
    }

    pub fn elem_count(&self) -> usize {
        self.elems.len()
    }

    pub fn elem_over(&self, e: usize) -> (usize, usize) {
        self.elems[e]
    }

    /// Elements of the fiber over `(x, y)`, ascending.
    pub fn fiber(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.elems.len())
            .filter(|&e| self.elems[e] == (x, y))
            .collect()
    }

    pub fn left_act(&self, u: usize, e: usize) -> Option<usize> {
        self.left.get(&(u, e)).copied()
    }

    pub fn right_act(&self, e: usize, v: usize) -> Option<usize> {
        self.right.get(&(e, v)).copied()
    }

    /// The identity bimodule of `cat`: fibers are hom-sets, actions are
    /// pre- and postcomposition.
    pub fn hom(cat: &FinCat) -> Profunctor {
        let elems: Vec<(usize, usize)> = (0..cat.morphism_count())
            .map(|f| (cat.dom(f), cat.cod(f)))
            .collect();
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for e in 0..cat.morphism_count() {
            for u in 0..cat.morphism_count() {
                if cat.cod(u) == cat.dom(e) {
                    left.insert((u, e), cat.compose(e, u).expect("hom left action"));
                }
                if cat.dom(u) == cat.cod(e) {
                    right.insert((e, u), cat.compose(u, e).expect("hom right action"));
                }
            }
        }
        Profunctor {
            source: cat.clone(),
            target: cat.clone(),
            elems,
            left,
            right,
        }
    }

    /// For `f : X -> Y`, the representable `f_# : X -|-> Y` with fibers
    /// `Y(f x, y)`.
    pub fn representable_fwd(f: &Functor) -> Profunctor {
        let x_cat = &f.source;
        let y_cat = &f.target;
        let mut elems = Vec::new();
        let mut carriers = Vec::new();
        for x in 0..x_cat.object_count() {
            for y in 0..y_cat.object_count() {
                for m in y_cat.hom(f.apply_obj(x), y) {
                    elems.push((x, y));
                    carriers.push(m);
                }
            }
        }
        let index: BTreeMap<(usize, usize), usize> = carriers
            .iter()
            .enumerate()
            .map(|(e, &m)| ((elems[e].0, m), e))
            .collect();
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (e, &m) in carriers.iter().enumerate() {
            let (x, y) = elems[e];
            for u in 0..x_cat.morphism_count() {
                if x_cat.cod(u) == x {
                    let m2 = y_cat.compose(m, f.apply_mor(u)).expect("f_# left");
                    left.insert((u, e), index[&(x_cat.dom(u), m2)]);
                }
            }
            for v in 0..y_cat.morphism_count() {
                if y_cat.dom(v) == y {
                    let m2 = y_cat.compose(v, m).expect("f_# right");
                    right.insert((e, v), index[&(x, m2)]);
                }
            }
        }
        Profunctor {
            source: x_cat.clone(),
            target: y_cat.clone(),
            elems,
            left,
            right,
        }
    }

    /// For `f : X -> Y`, the representable `f^* : Y -|-> X` with fibers
    /// `Y(y, f x)`.
    pub fn representable_bwd(f: &Functor) -> Profunctor {
        let x_cat = &f.source;
        let y_cat = &f.target;
        let mut elems = Vec::new();
        let mut carriers = Vec::new();
        for y in 0..y_cat.object_count() {
            for x in 0..x_cat.object_count() {
                for m in y_cat.hom(y, f.apply_obj(x)) {
                    elems.push((y, x));
                    carriers.push(m);
                }
            }
        }
        let index: BTreeMap<(usize, usize), usize> = carriers
            .iter()
            .enumerate()
            .map(|(e, &m)| ((elems[e].1, m), e))
            .collect();
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (e, &m) in carriers.iter().enumerate() {
            let (y, x) = elems[e];
            for v in 0..y_cat.morphism_count() {
                if y_cat.cod(v) == y {
                    let m2 = y_cat.compose(m, v).expect("f^* left");
                    left.insert((v, e), index[&(x, m2)]);
                }
            }
            for u in 0..x_cat.morphism_count() {
                if x_cat.dom(u) == x {
                    let m2 = y_cat.compose(f.apply_mor(u), m).expect("f^* right");
                    right.insert((e, u), index[&(x_cat.cod(u), m2)]);
                }
            }
        }
        Profunctor {
            source: y_cat.clone(),
            target: x_cat.clone(),
            elems,
            left,
            right,
        }
    }

    /// The swap `P^o : Y^op -|-> X^op` with `P^o(y, x) = P(x, y)` and the two
    /// actions interchanged. Opposite categories are materialized, so the
    /// result is self-describing; element indices are preserved.
    pub fn dual(&self) -> Profunctor {
        let elems = self.elems.iter().map(|&(x, y)| (y, x)).collect();
        let left = self
            .right
            .iter()
            .map(|(&(e, v), &r)| ((v, e), r))
            .collect();
        let right = self
            .left
            .iter()
            .map(|(&(u, e), &r)| ((e, u), r))
            .collect();
        Profunctor {
            source: self.target.opposite(),
            target: self.source.opposite(),
            elems,
            left,
            right,
        }
    }

    /// Reindexing along `f : X' -> X` and `g : Y' -> Y`: the fiber over
    /// `(x', y')` is `R(f x', g y')`.
    pub fn change_of_base(
        f: &Functor,
        g: &Functor,
        r: &Profunctor,
    ) -> Result<Profunctor, StructuralError> {
        if f.target != *r.source() || g.target != *r.target() {
            return Err(StructuralError::new("change_of_base: endpoint mismatch"));
        }
        let mut elems = Vec::new();
        let mut carrier = Vec::new();
        for x in 0..f.source.object_count() {
            for y in 0..g.source.object_count() {
                for e in r.fiber(f.apply_obj(x), g.apply_obj(y)) {
                    elems.push((x, y));
                    carrier.push(e);
                }
            }
        }
        let index: BTreeMap<(usize, usize, usize), usize> = carrier
            .iter()
            .enumerate()
            .map(|(i, &e)| ((elems[i].0, elems[i].1, e), i))
            .collect();
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (i, &e) in carrier.iter().enumerate() {
            let (x, y) = elems[i];
            for u in 0..f.source.morphism_count() {
                if f.source.cod(u) == x {
                    let r2 = r.left_act(f.apply_mor(u), e).expect("cob left");
                    left.insert((u, i), index[&(f.source.dom(u), y, r2)]);
                }
            }
            for v in 0..g.source.morphism_count() {
                if g.source.dom(v) == y {
                    let r2 = r.right_act(e, g.apply_mor(v)).expect("cob right");
                    right.insert((i, v), index[&(x, g.source.cod(v), r2)]);
                }
            }
        }
        Ok(Profunctor {
            source: f.source.clone(),
            target: g.source.clone(),
            elems,
            left,
            right,
        })
    }

    /// The free bimodule on one generator sitting over `(x0, y0)`: the fiber
    /// over `(x, y)` is `X(x, x0) x Y(y0, y)` with actions by composition.
    pub fn free_box(source: &FinCat, target: &FinCat, x0: usize, y0: usize) -> Profunctor {
        let mut elems = Vec::new();
        let mut carrier = Vec::new();
        for x in 0..source.object_count() {
            for y in 0..target.object_count() {
                for a in source.hom(x, x0) {
                    for b in target.hom(y0, y) {
                        elems.push((x, y));
                        carrier.push((a, b));
                    }
                }
            }
        }
        let index: BTreeMap<(usize, usize), usize> = carrier
            .iter()
            .enumerate()
            .map(|(i, &ab)| (ab, i))
            .collect();
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (i, &(a, b)) in carrier.iter().enumerate() {
            let (x, y) = elems[i];
            for u in 0..source.morphism_count() {
                if source.cod(u) == x {
                    let a2 = source.compose(a, u).expect("box left");
                    left.insert((u, i), index[&(a2, b)]);
                }
            }
            for v in 0..target.morphism_count() {
                if target.dom(v) == y {
                    let b2 = target.compose(v, b).expect("box right");
                    right.insert((i, v), index[&(a, b2)]);
                }
            }
        }
        Profunctor {
            source: source.clone(),
            target: target.clone(),
            elems,
            left,
            right,
        }
    }

    /// Fiberwise disjoint union of two parallel profunctors.
    pub fn direct_sum(&self, other: &Profunctor) -> Result<Profunctor, StructuralError> {
        if self.source != other.source || self.target != other.target {
            return Err(StructuralError::new("direct_sum: endpoint mismatch"));
        }
        let offset = self.elems.len();
        let mut elems = self.elems.clone();
        elems.extend(other.elems.iter().copied());
        let mut left = self.left.clone();
        let mut right = self.right.clone();
        for (&(u, e), &r) in &other.left {
            left.insert((u, e + offset), r + offset);
        }
        for (&(e, v), &r) in &other.right {
            right.insert((e + offset, v), r + offset);
        }
        Ok(Profunctor {
            source: self.source.clone(),
            target: self.target.clone(),
            elems,
            left,
            right,
        })
    }
}

/// Exhaustive bimodule law check; structural defects in the tables surface
/// as `Err`, law violations as report entries.
pub fn check_profunctor(p: &Profunctor) -> Result<Vec<ProfViolation>, StructuralError> {
    p.check_shape()?;
    let mut out = Vec::new();
    for (e, &(x, y)) in p.elems.iter().enumerate() {
        if p.left_act(p.source.identity(x), e) != Some(e)
            || p.right_act(e, p.target.identity(y)) != Some(e)
        {
            out.push(ProfViolation::Unit { elem: e });
        }
    }
    for e in 0..p.elems.len() {
        let (x, y) = p.elems[e];
        for u in 0..p.source.morphism_count() {
            if p.source.cod(u) != x {
                continue;
            }
            let once = p.left_act(u, e).unwrap();
            for u2 in 0..p.source.morphism_count() {
                if p.source.cod(u2) != p.source.dom(u) {
                    continue;
                }
                let c = p.source.compose(u, u2);
                let Some(c) = c else { continue };
                if p.left_act(c, e) != p.left_act(u2, once) {
                    out.push(ProfViolation::LeftFunctoriality { u, u2, elem: e });
                }
            }
            for v in 0..p.target.morphism_count() {
                if p.target.dom(v) != y {
                    continue;
                }
                let rv = p.right_act(e, v).unwrap();
                if p.left_act(u, rv) != p.right_act(once, v) {
                    out.push(ProfViolation::Commutation { u, elem: e, v });
                }
            }
        }
        for v in 0..p.target.morphism_count() {
            if p.target.dom(v) != y {
                continue;
            }
            let once = p.right_act(e, v).unwrap();
            for v2 in 0..p.target.morphism_count() {
                if p.target.dom(v2) != p.target.cod(v) {
                    continue;
                }
                let Some(c) = p.target.compose(v2, v) else { continue };
                if p.right_act(e, c) != p.right_act(once, v2) {
                    out.push(ProfViolation::RightFunctoriality { v, v2, elem: e });
                }
            }
        }
    }
    Ok(out)
}

/// A fiberwise map between parallel profunctors.
#[derive(Debug, Clone)]
pub struct ProfMorphism {
    pub source: Profunctor,
    pub target: Profunctor,
    /// source element -> target element
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProfMorViolation {
    #[error("element {elem} is not sent within its fiber")]
    Fiber { elem: usize },
    #[error("map does not commute with the left action on (u={u}, elem={elem})")]
    Left { u: usize, elem: usize },
    #[error("map does not commute with the right action on (elem={elem}, v={v})")]
    Right { elem: usize, v: usize },
}

impl ProfMorphism {
    pub fn check(&self) -> Vec<ProfMorViolation> {
        let mut out = Vec::new();
        for e in 0..self.source.elem_count() {
            if self.target.elem_over(self.map[e]) != self.source.elem_over(e) {
                out.push(ProfMorViolation::Fiber { elem: e });
            }
        }
        for e in 0..self.source.elem_count() {
            let (x, y) = self.source.elem_over(e);
            for u in 0..self.source.source().morphism_count() {
                if self.source.source().cod(u) != x {
                    continue;
                }
                let lhs = self.map[self.source.left_act(u, e).unwrap()];
                let rhs = self.target.left_act(u, self.map[e]);
                if rhs != Some(lhs) {
                    out.push(ProfMorViolation::Left { u, elem: e });
                }
            }
            for v in 0..self.source.target().morphism_count() {
                if self.source.target().dom(v) != y {
                    continue;
                }
                let lhs = self.map[self.source.right_act(e, v).unwrap()];
                let rhs = self.target.right_act(self.map[e], v);
                if rhs != Some(lhs) {
                    out.push(ProfMorViolation::Right { elem: e, v });
                }
            }
        }
        out
    }

    /// A verified isomorphism: lawful, injective, surjective.
    pub fn is_iso(&self) -> bool {
        if !self.check().is_empty() {
            return false;
        }
        if self.source.elem_count() != self.target.elem_count() {
            return false;
        }
        let mut seen = vec![false; self.target.elem_count()];
        for &t in &self.map {
            if seen[t] {
                return false;
            }
            seen[t] = true;
        }
        true
    }
}

/// The composite of two profunctors together with the quotient map from the
/// middle-matched pair set.
#[derive(Debug, Clone)]
pub struct Composition {
    pub prof: Profunctor,
    /// pair index -> (element of P, element of Q)
    pub pairs: Vec<(usize, usize)>,
    /// pair index -> element of the composite
    pub class_of: Vec<usize>,
}

impl Composition {
    /// Composite element represented by the pair `(p, q)`, if they match in
    /// the middle.
    pub fn class(&self, p: usize, q: usize) -> Option<usize> {
        self.pairs
            .iter()
            .position(|&pq| pq == (p, q))
            .map(|i| self.class_of[i])
    }

    /// A representative pair for each composite element.
    pub fn representative(&self, class_elem: usize) -> (usize, usize) {
        let i = self
            .class_of
            .iter()
            .position(|&c| c == class_elem)
            .expect("class has a representative");
        self.pairs[i]
    }
}

/// Composes `p : X -|-> Y` with `q : Y -|-> Z` by quotienting the matched
/// pair set by the middle `Y`-action; the induced outer actions are verified
/// to be constant on quotient classes.
pub fn compose(p: &Profunctor, q: &Profunctor) -> Result<Composition, StructuralError> {
    if p.target != q.source {
        return Err(StructuralError::new("compose: endpoint mismatch"));
    }
    let mut pairs = Vec::new();
    for pe in 0..p.elem_count() {
        for qe in 0..q.elem_count() {
            if p.elem_over(pe).1 == q.elem_over(qe).0 {
                pairs.push((pe, qe));
            }
        }
    }
    let pair_index: BTreeMap<(usize, usize), usize> = pairs
        .iter()
        .enumerate()
        .map(|(i, &pq)| (pq, i))
        .collect();
    let mut uf = UnionFind::new(pairs.len());
    // (p . v, q) ~ (p, v . q) for every middle morphism v.
    for pe in 0..p.elem_count() {
        let y = p.elem_over(pe).1;
        for v in 0..p.target.morphism_count() {
            if p.target.dom(v) != y {
                continue;
            }
            let pv = p.right_act(pe, v).expect("composite right act");
            for qe in 0..q.elem_count() {
                if q.elem_over(qe).0 != p.target.cod(v) {
                    continue;
                }
                let vq = q.left_act(v, qe).expect("composite left act");
                uf.union(pair_index[&(pv, qe)], pair_index[&(pe, vq)]);
            }
        }
    }
    let mut canon_of_pair = vec![0usize; pairs.len()];
    for (i, c) in canon_of_pair.iter_mut().enumerate() {
        *c = uf.canonical(i);
    }
    let mut canon_sorted: Vec<usize> = canon_of_pair.clone();
    canon_sorted.sort_unstable();
    canon_sorted.dedup();
    let class_id: BTreeMap<usize, usize> = canon_sorted
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    let class_of: Vec<usize> = canon_of_pair.iter().map(|c| class_id[c]).collect();

    let elems: Vec<(usize, usize)> = canon_sorted
        .iter()
        .map(|&c| {
            let (pe, qe) = pairs[c];
            (p.elem_over(pe).0, q.elem_over(qe).1)
        })
        .collect();

    // Induced actions, computed on every member and checked for agreement.
    let mut left: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut right: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, &(pe, qe)) in pairs.iter().enumerate() {
        let e = class_of[i];
        let (x, _) = p.elem_over(pe);
        let (_, z) = q.elem_over(qe);
        for u in 0..p.source.morphism_count() {
            if p.source.cod(u) != x {
                continue;
            }
            let moved = class_of[pair_index[&(p.left_act(u, pe).unwrap(), qe)]];
            match left.get(&(u, e)) {
                None => {
                    left.insert((u, e), moved);
                }
                Some(&prev) if prev != moved => {
                    return Err(StructuralError::new(format!(
                        "induced left action not constant on quotient class {e}"
                    )))
                }
                _ => {}
            }
        }
        for v in 0..q.target.morphism_count() {
            if q.target.dom(v) != z {
                continue;
            }
            let moved = class_of[pair_index[&(pe, q.right_act(qe, v).unwrap())]];
            match right.get(&(e, v)) {
                None => {
                    right.insert((e, v), moved);
                }
                Some(&prev) if prev != moved => {
                    return Err(StructuralError::new(format!(
                        "induced right action not constant on quotient class {e}"
                    )))
                }
                _ => {}
            }
        }
    }
    let prof = Profunctor {
        source: p.source.clone(),
        target: q.target.clone(),
        elems,
        left,
        right,
    };
    Ok(Composition {
        prof,
        pairs,
        class_of,
    })
}

/// Quotient of a profunctor by the bimodule congruence generated by
/// `relations`; returns the quotient and the projection on elements.
pub fn quotient(
    p: &Profunctor,
    relations: &[(usize, usize)],
) -> Result<(Profunctor, Vec<usize>), StructuralError> {
    for &(a, b) in relations {
        if a >= p.elem_count() || b >= p.elem_count() {
            return Err(StructuralError::new("quotient: element out of range"));
        }
        if p.elem_over(a) != p.elem_over(b) {
            return Err(StructuralError::new(
                "quotient: related elements must share a fiber",
            ));
        }
    }
    let mut uf = UnionFind::new(p.elem_count());
    let mut queue: Vec<(usize, usize)> = relations.to_vec();
    while let Some((a, b)) = queue.pop() {
        if uf.find(a) == uf.find(b) {
            continue;
        }
        uf.union(a, b);
        let (x, y) = p.elem_over(a);
        for u in 0..p.source.morphism_count() {
            if p.source.cod(u) == x {
                queue.push((p.left_act(u, a).unwrap(), p.left_act(u, b).unwrap()));
            }
        }
        for v in 0..p.target.morphism_count() {
            if p.target.dom(v) == y {
                queue.push((p.right_act(a, v).unwrap(), p.right_act(b, v).unwrap()));
            }
        }
    }
    let mut canon: Vec<usize> = (0..p.elem_count()).map(|e| uf.canonical(e)).collect();
    let mut reps = canon.clone();
    reps.sort_unstable();
    reps.dedup();
    let class_id: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    for c in canon.iter_mut() {
        *c = class_id[c];
    }
    let elems: Vec<(usize, usize)> = reps.iter().map(|&r| p.elem_over(r)).collect();
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for (&(u, e), &r) in &p.left {
        left.insert((u, canon[e]), canon[r]);
    }
    for (&(e, v), &r) in &p.right {
        right.insert((canon[e], v), canon[r]);
    }
    let q = Profunctor {
        source: p.source.clone(),
        target: p.target.clone(),
        elems,
        left,
        right,
    };
    Ok((q, canon))
}

/// The evaluation isomorphism `Hom_X . P ~ P`.
pub fn left_unitor(p: &Profunctor) -> Result<ProfMorphism, StructuralError> {
    let hom = Profunctor::hom(p.source());
    let comp = compose(&hom, p)?;
    let mut map = vec![usize::MAX; comp.prof.elem_count()];
    for (i, &(h, e)) in comp.pairs.iter().enumerate() {
        // h is a morphism of X acting on e from the left.
        let value = p.left_act(h, e).expect("unitor evaluation");
        let class = comp.class_of[i];
        if map[class] != usize::MAX && map[class] != value {
            return Err(StructuralError::new("left unitor not constant on classes"));
        }
        map[class] = value;
    }
    Ok(ProfMorphism {
        source: comp.prof,
        target: p.clone(),
        map,
    })
}

/// The evaluation isomorphism `P . Hom_Y ~ P`.
pub fn right_unitor(p: &Profunctor) -> Result<ProfMorphism, StructuralError> {
    let hom = Profunctor::hom(p.target());
    let comp = compose(p, &hom)?;
    let mut map = vec![usize::MAX; comp.prof.elem_count()];
    for (i, &(e, h)) in comp.pairs.iter().enumerate() {
        let value = p.right_act(e, h).expect("unitor evaluation");
        let class = comp.class_of[i];
        if map[class] != usize::MAX && map[class] != value {
            return Err(StructuralError::new("right unitor not constant on classes"));
        }
        map[class] = value;
    }
    Ok(ProfMorphism {
        source: comp.prof,
        target: p.clone(),
        map,
    })
}

/// The comparison `(P . Q) . R -> P . (Q . R)` on quotient representatives,
/// verified to be well defined.
pub fn associator(
    p: &Profunctor,
    q: &Profunctor,
    r: &Profunctor,
) -> Result<ProfMorphism, StructuralError> {
    let pq = compose(p, q)?;
    let qr = compose(q, r)?;
    let lhs = compose(&pq.prof, r)?;
    let rhs = compose(p, &qr.prof)?;
    let mut map = vec![usize::MAX; lhs.prof.elem_count()];
    for (i, &(pq_elem, re)) in lhs.pairs.iter().enumerate() {
        let (pe, qe) = pq.representative(pq_elem);
        let qr_elem = qr.class(qe, re).expect("middle match");
        let value = rhs.class(pe, qr_elem).expect("outer match");
        let class = lhs.class_of[i];
        if map[class] != usize::MAX && map[class] != value {
            return Err(StructuralError::new("associator not constant on classes"));
        }
        map[class] = value;
    }
    Ok(ProfMorphism {
        source: lhs.prof,
        target: rhs.prof,
        map,
    })
}

/// The positional identification between two parallel profunctors whose
/// fibers were enumerated in the same canonical order: element `k` of each
/// fiber of `a` is sent to element `k` of the matching fiber of `b`. Fails
/// when fiber sizes differ; whether the identification is lawful is decided
/// by [`ProfMorphism::is_iso`].
pub fn fiberwise_identification(
    a: &Profunctor,
    b: &Profunctor,
) -> Result<ProfMorphism, StructuralError> {
    if a.source() != b.source() || b.target() != a.target() {
        return Err(StructuralError::new("identification: endpoint mismatch"));
    }
    let mut map = vec![usize::MAX; a.elem_count()];
    for x in 0..a.source().object_count() {
        for y in 0..a.target().object_count() {
            let fa = a.fiber(x, y);
            let fb = b.fiber(x, y);
            if fa.len() != fb.len() {
                return Err(StructuralError::new(format!(
                    "identification: fiber ({x},{y}) sizes differ"
                )));
            }
            for (ea, eb) in fa.into_iter().zip(fb) {
                map[ea] = eb;
            }
        }
    }
    Ok(ProfMorphism {
        source: a.clone(),
        target: b.clone(),
        map,
    })
}

/// The profunctor of the comma object `f/g`, with fibers `Z(f x, g y)`;
/// definitionally the change of base of `Hom_Z` along `(f, g)`.
pub fn comma_profunctor(f: &Functor, g: &Functor) -> Result<Profunctor, StructuralError> {
    Profunctor::change_of_base(f, g, &Profunctor::hom(&f.target))
}

/// The canonical comparison `f_# . g^* -> (f/g)-profunctor`, given by
/// composing the two legs in `Z`; an isomorphism for valid inputs.
pub fn comma_comparison(f: &Functor, g: &Functor) -> Result<ProfMorphism, StructuralError> {
    if f.target != g.target {
        return Err(StructuralError::new("comma: functors must share a target"));
    }
    let fwd = Profunctor::representable_fwd(f);
    let bwd = Profunctor::representable_bwd(g);
    let comp = compose(&fwd, &bwd)?;
    let comma = comma_profunctor(f, g)?;
    let z_cat = &f.target;

    // Recover the Z-morphisms carried by representable elements.
    let carrier_fwd: Vec<usize> = {
        let mut out = Vec::new();
        for x in 0..f.source.object_count() {
            for y in 0..z_cat.object_count() {
                for m in z_cat.hom(f.apply_obj(x), y) {
                    out.push(m);
                }
            }
        }
        out
    };
    let carrier_bwd: Vec<usize> = {
        let mut out = Vec::new();
        for y in 0..z_cat.object_count() {
            for x in 0..g.source.object_count() {
                for m in z_cat.hom(y, g.apply_obj(x)) {
                    out.push(m);
                }
            }
        }
        out
    };
    // Index comma elements by (x, y, underlying morphism).
    let mut comma_index: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for x in 0..f.source.object_count() {
        for y in 0..g.source.object_count() {
            let fiber = comma.fiber(x, y);
            let homs = z_cat.hom(f.apply_obj(x), g.apply_obj(y));
            for (i, &e) in fiber.iter().enumerate() {
                comma_index.insert((x, y, homs[i]), e);
            }
        }
    }
    let mut map = vec![usize::MAX; comp.prof.elem_count()];
    for (i, &(pe, qe)) in comp.pairs.iter().enumerate() {
        let (x, _z) = fwd.elem_over(pe);
        let (_z2, y) = bwd.elem_over(qe);
        let value_mor = z_cat
            .compose(carrier_bwd[qe], carrier_fwd[pe])
            .expect("comma legs compose");
        let value = comma_index[&(x, y, value_mor)];
        let class = comp.class_of[i];
        if map[class] != usize::MAX && map[class] != value {
            return Err(StructuralError::new(
                "comma comparison not constant on classes",
            ));
        }
        map[class] = value;
    }
    Ok(ProfMorphism {
        source: comp.prof,
        target: comma,
        map,
    })
}

/// A monad on an endo-profunctor `M : X -|-> X`: a unit sending each
/// morphism of `X` into the matching fiber, and a multiplication on all
/// middle-matched element pairs (required to be constant on the quotient
/// classes of `M . M`).
#[derive(Debug, Clone)]
pub struct ProfMonad {
    pub carrier: Profunctor,
    /// morphism of X -> element of `M(dom, cod)`
    pub unit: Vec<usize>,
    /// `(e1 over (x,y), e2 over (y,z))` -> element over `(x,z)`
    pub mult: BTreeMap<(usize, usize), usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonadViolation {
    #[error("unit does not commute with the actions at morphism {f}")]
    UnitEquivariance { f: usize },
    #[error("left unit law fails at (h={h}, elem={e})")]
    LeftUnit { h: usize, e: usize },
    #[error("right unit law fails at (elem={e}, k={k})")]
    RightUnit { e: usize, k: usize },
    #[error("associativity fails at ({a},{b},{c})")]
    Associativity { a: usize, b: usize, c: usize },
}

/// Report of [`check_prof_monad`]: ill-definedness of the multiplication on
/// quotient classes is kept apart from honest law violations.
#[derive(Debug, Clone, Default)]
pub struct ProfMonadReport {
    pub ill_defined: Vec<String>,
    pub violations: Vec<MonadViolation>,
    /// True when the unit is a bijection onto the fibers of the carrier.
    pub normal: bool,
}

impl ProfMonadReport {
    pub fn is_valid(&self) -> bool {
        self.ill_defined.is_empty() && self.violations.is_empty()
    }
}

impl ProfMonad {
    /// `Hom_X` with identity unit and composition as multiplication.
    pub fn hom_monad(cat: &FinCat) -> ProfMonad {
        let carrier = Profunctor::hom(cat);
        let unit = (0..cat.morphism_count()).collect();
        let mut mult = BTreeMap::new();
        for e1 in 0..cat.morphism_count() {
            for e2 in 0..cat.morphism_count() {
                if cat.cod(e1) == cat.dom(e2) {
                    mult.insert((e1, e2), cat.compose(e2, e1).expect("hom mult"));
                }
            }
        }
        ProfMonad {
            carrier,
            unit,
            mult,
        }
    }

    /// The monad on `t^*` induced by a monad `(t, eta, mu)` on an
    /// endofunctor: fiber `X(x, t y)`, unit `eta . -`, multiplication
    /// `mu . t(g) . f`.
    pub fn from_endo(
        t: &Functor,
        eta: &NatTrans,
        mu: &NatTrans,
    ) -> Result<ProfMonad, StructuralError> {
        let cat = &t.source;
        let carrier = Profunctor::representable_bwd(t);
        // carrier element order mirrors representable_bwd: (y, x, m) ascending
        let mut carrier_mor = Vec::new();
        let mut elem_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        {
            let mut i = 0;
            for y in 0..cat.object_count() {
                for x in 0..cat.object_count() {
                    for m in cat.hom(y, t.apply_obj(x)) {
                        carrier_mor.push(m);
                        elem_index.insert((m, x), i);
                        i += 1;
                    }
                }
            }
        }
        let mut unit = Vec::new();
        for h in 0..cat.morphism_count() {
            let y = cat.cod(h);
            let m = cat
                .compose(eta.components[y], h)
                .ok_or_else(|| StructuralError::new("unit composite undefined"))?;
            unit.push(elem_index[&(m, y)]);
        }
        let mut mult = BTreeMap::new();
        for e1 in 0..carrier.elem_count() {
            let (_x, y) = carrier.elem_over(e1);
            for e2 in 0..carrier.elem_count() {
                let (y2, z) = carrier.elem_over(e2);
                if y2 != y {
                    continue;
                }
                let tg = t.apply_mor(carrier_mor[e2]);
                let step = cat
                    .compose(tg, carrier_mor[e1])
                    .ok_or_else(|| StructuralError::new("mult composite undefined"))?;
                let m = cat
                    .compose(mu.components[z], step)
                    .ok_or_else(|| StructuralError::new("mult composite undefined"))?;
                mult.insert((e1, e2), elem_index[&(m, z)]);
            }
        }
        Ok(ProfMonad {
            carrier,
            unit,
            mult,
        })
    }
}

/// Checks the monad laws of `m` on every element, the equivariance of its
/// unit, well-definedness of its multiplication on the quotient classes of
/// the self-composite, and records whether the monad is normal.
pub fn check_prof_monad(m: &ProfMonad) -> Result<ProfMonadReport, StructuralError> {
    if m.carrier.source() != m.carrier.target() {
        return Err(StructuralError::new(
            "monad carrier must be an endo-profunctor",
        ));
    }
    let cat = m.carrier.source().clone();
    if m.unit.len() != cat.morphism_count() {
        return Err(StructuralError::new("unit table length mismatch"));
    }
    for (f, &e) in m.unit.iter().enumerate() {
        if e >= m.carrier.elem_count() || m.carrier.elem_over(e) != (cat.dom(f), cat.cod(f)) {
            return Err(StructuralError::new(format!(
                "unit of morphism {f} lies in the wrong fiber"
            )));
        }
    }
    for (&(a, b), &c) in &m.mult {
        let (x, y) = m.carrier.elem_over(a);
        let (y2, z) = m.carrier.elem_over(b);
        if y != y2 {
            return Err(StructuralError::new(format!(
                "mult entry ({a},{b}) does not match in the middle"
            )));
        }
        if m.carrier.elem_over(c) != (x, z) {
            return Err(StructuralError::new(format!(
                "mult entry ({a},{b}) lands in the wrong fiber"
            )));
        }
    }
    // Every middle-matched pair needs an entry.
    for a in 0..m.carrier.elem_count() {
        for b in 0..m.carrier.elem_count() {
            if m.carrier.elem_over(a).1 == m.carrier.elem_over(b).0
                && !m.mult.contains_key(&(a, b))
            {
                return Err(StructuralError::new(format!("missing mult entry ({a},{b})")));
            }
        }
    }

    let mut report = ProfMonadReport::default();

    // Well-definedness on the quotient classes of M . M.
    let square = compose(&m.carrier, &m.carrier)?;
    let mut per_class: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &(a, b)) in square.pairs.iter().enumerate() {
        let value = m.mult[&(a, b)];
        let class = square.class_of[i];
        match per_class.get(&class) {
            None => {
                per_class.insert(class, value);
            }
            Some(&prev) if prev != value => report.ill_defined.push(format!(
                "mult not constant on quotient class {class}: pair ({a},{b})"
            )),
            _ => {}
        }
    }

    // Unit equivariance: the unit is a bimodule morphism Hom -> M.
    for f in 0..cat.morphism_count() {
        let e = m.unit[f];
        let mut ok = true;
        for u in 0..cat.morphism_count() {
            if cat.cod(u) == cat.dom(f) {
                let composed = cat.compose(f, u).unwrap();
                if m.carrier.left_act(u, e) != Some(m.unit[composed]) {
                    ok = false;
                }
            }
            if cat.dom(u) == cat.cod(f) {
                let composed = cat.compose(u, f).unwrap();
                if m.carrier.right_act(e, u) != Some(m.unit[composed]) {
                    ok = false;
                }
            }
        }
        if !ok {
            report.violations.push(MonadViolation::UnitEquivariance { f });
        }
    }

    // Unit laws against the actions.
    for e in 0..m.carrier.elem_count() {
        let (x, y) = m.carrier.elem_over(e);
        for h in 0..cat.morphism_count() {
            if cat.cod(h) == x {
                let expected = m.carrier.left_act(h, e).unwrap();
                if m.mult.get(&(m.unit[h], e)) != Some(&expected) {
                    report.violations.push(MonadViolation::LeftUnit { h, e });
                }
            }
            if cat.dom(h) == y {
                let expected = m.carrier.right_act(e, h).unwrap();
                if m.mult.get(&(e, m.unit[h])) != Some(&expected) {
                    report.violations.push(MonadViolation::RightUnit { e, k: h });
                }
            }
        }
    }

    // Associativity on all matched triples.
    for a in 0..m.carrier.elem_count() {
        for b in 0..m.carrier.elem_count() {
            if m.carrier.elem_over(a).1 != m.carrier.elem_over(b).0 {
                continue;
            }
            let ab = m.mult[&(a, b)];
            for c in 0..m.carrier.elem_count() {
                if m.carrier.elem_over(b).1 != m.carrier.elem_over(c).0 {
                    continue;
                }
                let bc = m.mult[&(b, c)];
                if m.mult[&(ab, c)] != m.mult[&(a, bc)] {
                    report
                        .violations
                        .push(MonadViolation::Associativity { a, b, c });
                }
            }
        }
    }

    // Normality: the unit is a bijection onto the carrier fibers.
    let mut hit = vec![false; m.carrier.elem_count()];
    let mut injective = true;
    for &e in &m.unit {
        if hit[e] {
            injective = false;
        }
        hit[e] = true;
    }
    report.normal = injective && hit.iter().all(|&b| b);
    Ok(report)
}

/// The Kleisli category of a profunctor monad, with its identity-on-objects
/// comparison functor.
#[derive(Debug, Clone)]
pub struct Kleisli {
    pub category: FinCat,
    /// Kleisli morphism index = carrier element index.
    pub functor: Functor,
}

/// Builds the Kleisli category: same objects, homs are the monad fibers,
/// identities come from the unit, composition from the multiplication.
pub fn kleisli(m: &ProfMonad) -> Result<Kleisli, StructuralError> {
    let report = check_prof_monad(m)?;
    if !report.is_valid() {
        return Err(StructuralError::new(format!(
            "kleisli: invalid monad ({} ill-defined, {} violations)",
            report.ill_defined.len(),
            report.violations.len()
        )));
    }
    let cat = m.carrier.source().clone();
    let morphisms: Vec<(usize, usize)> = (0..m.carrier.elem_count())
        .map(|e| m.carrier.elem_over(e))
        .collect();
    let identity: Vec<usize> = (0..cat.object_count())
        .map(|x| m.unit[cat.identity(x)])
        .collect();
    let composites: Vec<((usize, usize), usize)> = m
        .mult
        .iter()
        .map(|(&(f, g), &h)| ((g, f), h))
        .collect();
    let category = FinCat::new(cat.object_count(), morphisms, identity, &composites)?;
    let functor = Functor::new(
        cat.clone(),
        category.clone(),
        (0..cat.object_count()).collect(),
        m.unit.clone(),
    )?;
    Ok(Kleisli { category, functor })
}

/// The reconstruction isomorphism `J_# . J^* -> M` for the Kleisli
/// resolution, with the pairing sent to the multiplication.
pub fn kleisli_reconstruction(m: &ProfMonad, k: &Kleisli) -> Result<ProfMorphism, StructuralError> {
    let fwd = Profunctor::representable_fwd(&k.functor);
    let bwd = Profunctor::representable_bwd(&k.functor);
    let comp = compose(&fwd, &bwd)?;
    // Recover the Kleisli morphisms (= carrier elements) carried by the two
    // representables.
    let cat = m.carrier.source();
    let kl = &k.category;
    let mut carrier_fwd = Vec::new();
    for x in 0..cat.object_count() {
        for y in 0..kl.object_count() {
            for e in kl.hom(x, y) {
                carrier_fwd.push(e);
            }
        }
    }
    let mut carrier_bwd = Vec::new();
    for y in 0..kl.object_count() {
        for x in 0..cat.object_count() {
            for e in kl.hom(y, x) {
                carrier_bwd.push(e);
            }
        }
    }
    let mut map = vec![usize::MAX; comp.prof.elem_count()];
    for (i, &(pe, qe)) in comp.pairs.iter().enumerate() {
        let value = m.mult[&(carrier_fwd[pe], carrier_bwd[qe])];
        let class = comp.class_of[i];
        if map[class] != usize::MAX && map[class] != value {
            return Err(StructuralError::new(
                "kleisli reconstruction not constant on classes",
            ));
        }
        map[class] = value;
    }
    Ok(ProfMorphism {
        source: comp.prof,
        target: m.carrier.clone(),
        map,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EndoMonadViolation {
    #[error("unit naturality or shape fails")]
    Unit,
    #[error("multiplication naturality or shape fails")]
    Mult,
    #[error("left unit law mu . eta_t = id fails at object {x}")]
    LeftUnit { x: usize },
    #[error("right unit law mu . t(eta) = id fails at object {x}")]
    RightUnit { x: usize },
    #[error("associativity mu . t(mu) = mu . mu_t fails at object {x}")]
    Associativity { x: usize },
}

/// The Kleisli category of a monad on an endofunctor, built directly with
/// `hom(x, y) = X(x, t y)`.
#[derive(Debug, Clone)]
pub struct EndoKleisli {
    pub category: FinCat,
    /// Kleisli morphism index -> underlying morphism `x -> t y` of `X`
    pub carrier: Vec<usize>,
    pub functor: Functor,
}

/// Checks the monad laws for `(t, eta, mu)` on morphism components.
pub fn check_endo_monad(t: &Functor, eta: &NatTrans, mu: &NatTrans) -> Vec<EndoMonadViolation> {
    let mut out = Vec::new();
    let cat = &t.source;
    if t.target != *cat
        || !check_functor(t).is_empty()
        || !check_nat_trans(eta).is_empty()
        || eta.source != Functor::identity(cat)
        || eta.target != *t
    {
        out.push(EndoMonadViolation::Unit);
        return out;
    }
    if !check_nat_trans(mu).is_empty() || mu.source != t.after(t) || mu.target != *t {
        out.push(EndoMonadViolation::Mult);
        return out;
    }
    for x in 0..cat.object_count() {
        let tx = t.apply_obj(x);
        let id_tx = cat.identity(tx);
        if cat.compose(mu.components[x], eta.components[tx]) != Some(id_tx) {
            out.push(EndoMonadViolation::LeftUnit { x });
        }
        if cat.compose(mu.components[x], t.apply_mor(eta.components[x])) != Some(id_tx) {
            out.push(EndoMonadViolation::RightUnit { x });
        }
        let via_t = cat.compose(mu.components[x], t.apply_mor(mu.components[x]));
        let via_mu = cat.compose(mu.components[x], mu.components[tx]);
        if via_t != via_mu || via_t.is_none() {
            out.push(EndoMonadViolation::Associativity { x });
        }
    }
    out
}

/// Builds the Kleisli category of an endofunctor monad directly.
pub fn kleisli_of_endo(
    t: &Functor,
    eta: &NatTrans,
    mu: &NatTrans,
) -> Result<EndoKleisli, StructuralError> {
    let laws = check_endo_monad(t, eta, mu);
    if !laws.is_empty() {
        return Err(StructuralError::new(format!(
            "kleisli_of_endo: monad laws fail ({})",
            laws[0]
        )));
    }
    let cat = &t.source;
    let mut carrier = Vec::new();
    let mut morphisms = Vec::new();
    let mut index: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    // Enumeration order (domain outer) matches the fibers of t^*.
    for x in 0..cat.object_count() {
        for y in 0..cat.object_count() {
            for f in cat.hom(x, t.apply_obj(y)) {
                index.insert((x, y, f), morphisms.len());
                morphisms.push((x, y));
                carrier.push(f);
            }
        }
    }
    let identity: Vec<usize> = (0..cat.object_count())
        .map(|x| index[&(x, x, eta.components[x])])
        .collect();
    let mut composites = Vec::new();
    for (&(x, y, f), &i) in &index {
        for (&(y2, z, g), &j) in &index {
            if y2 != y {
                continue;
            }
            let tg = t.apply_mor(g);
            let step = cat.compose(tg, f).expect("kleisli composite");
            let h = cat
                .compose(mu.components[z], step)
                .expect("kleisli composite");
            composites.push(((j, i), index[&(x, z, h)]));
        }
    }
    let category = FinCat::new(cat.object_count(), morphisms, identity, &composites)?;
    let functor = Functor::new(
        cat.clone(),
        category.clone(),
        (0..cat.object_count()).collect(),
        (0..cat.morphism_count())
            .map(|h| {
                let y = cat.cod(h);
                let m = cat.compose(eta.components[y], h).expect("unit composite");
                index[&(cat.dom(h), y, m)]
            })
            .collect(),
    )?;
    Ok(EndoKleisli {
        category,
        carrier,
        functor,
    })
}

/// Certifies that [`kleisli_of_endo`] and [`kleisli`] of the induced
/// profunctor monad produce the same category: a hom-by-hom bijection on the
/// shared carrier `X(x, t y)` matching identities and composition.
pub fn endo_agreement(
    t: &Functor,
    eta: &NatTrans,
    mu: &NatTrans,
) -> Result<bool, StructuralError> {
    let direct = kleisli_of_endo(t, eta, mu)?;
    let monad = ProfMonad::from_endo(t, eta, mu)?;
    let via_prof = kleisli(&monad)?;
    let a = &direct.category;
    let b = &via_prof.category;
    if a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count() {
        return Ok(false);
    }
    // Both enumerate morphisms as (y, x, underlying f) ascending, so the
    // identity on indices should be the bijection; verify it.
    for i in 0..a.morphism_count() {
        if a.dom(i) != b.dom(i) || a.cod(i) != b.cod(i) {
            return Ok(false);
        }
    }
    for x in 0..a.object_count() {
        if a.identity(x) != b.identity(x) {
            return Ok(false);
        }
    }
    for g in 0..a.morphism_count() {
        for f in 0..a.morphism_count() {
            if a.compose(g, f) != b.compose(g, f) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::check_category;

    fn z2_cat() -> FinCat {
        FinCat::from_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap()
    }

    #[test]
    fn hom_profunctor_is_valid() {
        let c = FinCat::walking_arrow();
        let p = Profunctor::hom(&c);
        assert!(check_profunctor(&p).unwrap().is_empty());
    }

    #[test]
    fn representables_are_valid_and_id_sharp_is_hom() {
        let c = FinCat::walking_arrow();
        let id = Functor::identity(&c);
        let fwd = Profunctor::representable_fwd(&id);
        let bwd = Profunctor::representable_bwd(&id);
        assert!(check_profunctor(&fwd).unwrap().is_empty());
        assert!(check_profunctor(&bwd).unwrap().is_empty());
        let hom = Profunctor::hom(&c);
        for x in 0..c.object_count() {
            for y in 0..c.object_count() {
                assert_eq!(fwd.fiber(x, y).len(), hom.fiber(x, y).len());
            }
        }
    }

    #[test]
    fn functor_into_terminal_has_singleton_fibers() {
        let c = FinCat::walking_arrow();
        let one = FinCat::terminal();
        let bang = Functor::constant(&c, &one, 0);
        let fwd = Profunctor::representable_fwd(&bang);
        for x in 0..c.object_count() {
            assert_eq!(fwd.fiber(x, 0).len(), 1);
        }
    }

    #[test]
    fn compose_with_hom_is_isomorphic() {
        let c = FinCat::walking_arrow();
        let id = Functor::identity(&c);
        let p = Profunctor::representable_fwd(&id);
        let unitor = left_unitor(&p).unwrap();
        assert!(unitor.is_iso());
        let unitor_r = right_unitor(&p).unwrap();
        assert!(unitor_r.is_iso());
    }

    #[test]
    fn discrete_composition_multiplies_fiber_sizes() {
        let x = FinCat::discrete(2);
        let y = FinCat::discrete(2);
        let z = FinCat::discrete(2);
        // Over discrete categories each free box contributes one element, so
        // direct sums give prescribed fiber sizes with identity-only actions.
        let p = Profunctor::free_box(&x, &y, 0, 0)
            .direct_sum(&Profunctor::free_box(&x, &y, 0, 1))
            .unwrap()
            .direct_sum(&Profunctor::free_box(&x, &y, 1, 0))
            .unwrap();
        let q = Profunctor::free_box(&y, &z, 0, 0)
            .direct_sum(&Profunctor::free_box(&y, &z, 1, 1))
            .unwrap();
        let comp = compose(&p, &q).unwrap();
        for a in 0..2 {
            for c in 0..2 {
                let expected: usize = (0..2)
                    .map(|b| p.fiber(a, b).len() * q.fiber(b, c).len())
                    .sum();
                assert_eq!(comp.prof.fiber(a, c).len(), expected, "fiber ({a},{c})");
            }
        }
    }

    #[test]
    fn middle_action_glues_pairs() {
        // X = Z = terminal, Y = walking arrow u : a -> b.
        // P(*, a) = {p0}, P(*, b) = {p1}, right action along u sends p0 to p1;
        // Q(a, *) = {q0}, Q(b, *) = {q1}, left action along u sends q1 to q0.
        let one = FinCat::terminal();
        let y = FinCat::walking_arrow();
        let p = Profunctor::new(
            one.clone(),
            y.clone(),
            vec![(0, 0), (0, 1)],
            BTreeMap::from([((0, 0), 0), ((0, 1), 1)]),
            BTreeMap::from([((0, 0), 0), ((1, 1), 1), ((0, 2), 1)]),
        )
        .unwrap();
        assert!(check_profunctor(&p).unwrap().is_empty());
        let q = Profunctor::new(
            y.clone(),
            one.clone(),
            vec![(0, 0), (1, 0)],
            BTreeMap::from([((0, 0), 0), ((1, 1), 1), ((2, 1), 0)]),
            BTreeMap::from([((0, 0), 0), ((1, 0), 1)]),
        )
        .unwrap();
        assert!(check_profunctor(&q).unwrap().is_empty());
        let comp = compose(&p, &q).unwrap();
        assert_eq!(comp.prof.elem_count(), 1);
        assert_eq!(comp.class(0, 0), comp.class(1, 1));
    }

    #[test]
    fn comma_comparison_is_iso() {
        let z = FinCat::walking_arrow();
        let one = FinCat::terminal();
        let f = Functor::constant(&one, &z, 0);
        let g = Functor::constant(&one, &z, 1);
        let cmp = comma_comparison(&f, &g).unwrap();
        assert!(cmp.is_iso());
        let id = Functor::identity(&z);
        let cmp2 = comma_comparison(&id, &id).unwrap();
        assert!(cmp2.is_iso());
    }

    #[test]
    fn dual_is_involutive() {
        let c = FinCat::walking_arrow();
        let p = Profunctor::hom(&c);
        let dd = p.dual().dual();
        assert_eq!(dd, p);
        // dual(Hom_X) is the hom of the opposite category, fiberwise.
        let op_hom = Profunctor::hom(&c.opposite());
        let d = p.dual();
        assert!(check_profunctor(&d).unwrap().is_empty());
        for x in 0..c.object_count() {
            for y in 0..c.object_count() {
                assert_eq!(d.fiber(x, y).len(), op_hom.fiber(x, y).len());
            }
        }
    }

    #[test]
    fn dual_of_representable_matches_backward_fibers() {
        // dual(f_#) has the fibers of f^* once f is read into the opposite
        // category: both fibers at (y, *) are C(f*, y).
        let c = FinCat::walking_arrow();
        let one = FinCat::terminal();
        let f = Functor::constant(&one, &c, 1);
        let d = Profunctor::representable_fwd(&f).dual();
        let f_op = Functor::constant(&one.opposite(), &c.opposite(), 1);
        let bwd_op = Profunctor::representable_bwd(&f_op);
        let ident = fiberwise_identification(&d, &bwd_op).unwrap();
        assert!(ident.is_iso());
    }

    #[test]
    fn change_of_base_identity_and_constant() {
        let c = FinCat::walking_arrow();
        let hom = Profunctor::hom(&c);
        let id = Functor::identity(&c);
        let same = Profunctor::change_of_base(&id, &id, &hom).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(same.fiber(x, y).len(), hom.fiber(x, y).len());
            }
        }
        let one = FinCat::terminal();
        let pick = Functor::constant(&one, &c, 0);
        let picked = Profunctor::change_of_base(&pick, &pick, &hom).unwrap();
        assert_eq!(picked.fiber(0, 0).len(), hom.fiber(0, 0).len());
    }

    #[test]
    fn change_of_base_commutes_with_dual() {
        let c = FinCat::walking_arrow();
        let d = FinCat::chain(2);
        let f = Functor::new(d.clone(), c.clone(), vec![0, 1], vec![0, 1, 2]).unwrap();
        let hom = Profunctor::hom(&c);
        let lhs = Profunctor::change_of_base(&f, &f, &hom).unwrap().dual();
        let f_op = Functor::new(d.opposite(), c.opposite(), vec![0, 1], vec![0, 1, 2]).unwrap();
        let rhs = Profunctor::change_of_base(&f_op, &f_op, &hom.dual()).unwrap();
        let ident = fiberwise_identification(&lhs, &rhs).unwrap();
        assert!(ident.is_iso());
    }

    #[test]
    fn hom_monad_is_valid_and_normal() {
        let c = FinCat::walking_arrow();
        let m = ProfMonad::hom_monad(&c);
        let report = check_prof_monad(&m).unwrap();
        assert!(report.is_valid());
        assert!(report.normal);
    }

    fn z2_prof_monad() -> ProfMonad {
        let one = FinCat::terminal();
        let carrier = Profunctor::new(
            one.clone(),
            one.clone(),
            vec![(0, 0), (0, 0)],
            BTreeMap::from([((0, 0), 0), ((0, 1), 1)]),
            BTreeMap::from([((0, 0), 0), ((1, 0), 1)]),
        )
        .unwrap();
        let mult = BTreeMap::from([((0, 0), 0), ((0, 1), 1), ((1, 0), 1), ((1, 1), 0)]);
        ProfMonad {
            carrier,
            unit: vec![0],
            mult,
        }
    }

    #[test]
    fn z2_monad_is_valid_not_normal() {
        let report = check_prof_monad(&z2_prof_monad()).unwrap();
        assert!(report.is_valid());
        assert!(!report.normal);
    }

    #[test]
    fn constant_mult_breaks_unit_law() {
        let mut m = z2_prof_monad();
        m.mult = BTreeMap::from([((0, 0), 1), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1)]);
        let report = check_prof_monad(&m).unwrap();
        assert!(report.violations.iter().any(|v| matches!(
            v,
            MonadViolation::LeftUnit { .. } | MonadViolation::RightUnit { .. }
        )));
    }

    #[test]
    fn kleisli_of_hom_is_the_category_itself() {
        let c = FinCat::walking_arrow();
        let k = kleisli(&ProfMonad::hom_monad(&c)).unwrap();
        assert!(check_category(&k.category).is_empty());
        assert_eq!(k.category.morphism_count(), c.morphism_count());
        assert!(check_functor(&k.functor).is_empty());
    }

    #[test]
    fn kleisli_of_z2_monad_is_the_group() {
        let k = kleisli(&z2_prof_monad()).unwrap();
        assert!(check_category(&k.category).is_empty());
        let z2 = z2_cat();
        assert_eq!(k.category.morphism_count(), z2.morphism_count());
        assert_eq!(k.category.compose(1, 1), Some(0));
    }

    #[test]
    fn kleisli_reconstruction_is_iso() {
        let c = FinCat::walking_arrow();
        let m = ProfMonad::hom_monad(&c);
        let k = kleisli(&m).unwrap();
        let rec = kleisli_reconstruction(&m, &k).unwrap();
        assert!(rec.is_iso());
        let m2 = z2_prof_monad();
        let k2 = kleisli(&m2).unwrap();
        assert!(kleisli_reconstruction(&m2, &k2).unwrap().is_iso());
    }

    fn poset_constant_monad() -> (Functor, NatTrans, NatTrans) {
        // Chain 0 <= 1 with t constant at 1.
        let c = FinCat::chain(2);
        let arrow = c.hom(0, 1)[0];
        let id1 = c.identity(1);
        let t = Functor::new(
            c.clone(),
            c.clone(),
            vec![1, 1],
            vec![id1; c.morphism_count()],
        )
        .unwrap();
        let eta = NatTrans {
            source: Functor::identity(&c),
            target: t.clone(),
            components: vec![arrow, id1],
        };
        let mu = NatTrans {
            source: t.after(&t),
            target: t.clone(),
            components: vec![id1, id1],
        };
        (t, eta, mu)
    }

    #[test]
    fn identity_monad_kleisli_is_identity() {
        let c = FinCat::walking_arrow();
        let t = Functor::identity(&c);
        let eta = NatTrans {
            source: Functor::identity(&c),
            target: t.clone(),
            components: (0..c.object_count()).map(|x| c.identity(x)).collect(),
        };
        let mu = eta.clone();
        let k = kleisli_of_endo(&t, &eta, &mu).unwrap();
        assert!(check_category(&k.category).is_empty());
        assert_eq!(k.category.morphism_count(), c.morphism_count());
        assert!(endo_agreement(&t, &eta, &mu).unwrap());
    }

    #[test]
    fn constant_monad_on_poset_has_singleton_homs() {
        let (t, eta, mu) = poset_constant_monad();
        assert!(check_endo_monad(&t, &eta, &mu).is_empty());
        let k = kleisli_of_endo(&t, &eta, &mu).unwrap();
        assert!(check_category(&k.category).is_empty());
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(k.category.hom(x, y).len(), 1);
            }
        }
        assert!(endo_agreement(&t, &eta, &mu).unwrap());
    }

    #[test]
    fn quotient_is_valid_bimodule() {
        let c = FinCat::walking_arrow();
        let p = Profunctor::free_box(&c, &c, 1, 0)
            .direct_sum(&Profunctor::free_box(&c, &c, 1, 0))
            .unwrap();
        // Identify the two generators; the congruence collapses the copies.
        let gen_fiber = p.fiber(1, 0);
        assert_eq!(gen_fiber.len(), 2);
        let (q, proj) = quotient(&p, &[(gen_fiber[0], gen_fiber[1])]).unwrap();
        assert!(check_profunctor(&q).unwrap().is_empty());
        assert_eq!(q.fiber(1, 0).len(), 1);
        assert_eq!(proj.len(), p.elem_count());
    }

    #[test]
    fn associator_is_iso_on_hom_triple() {
        let c = FinCat::walking_arrow();
        let hom = Profunctor::hom(&c);
        let a = associator(&hom, &hom, &hom).unwrap();
        assert!(a.is_iso());
    }
}
