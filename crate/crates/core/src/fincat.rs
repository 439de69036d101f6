//! Finite categories, functors, and natural transformations.
//!
//! A [`FinCat`] stores dense integer indices for objects and morphisms plus a
//! total composition table; equality of cells is index equality. The checkers
//! in this module are exhaustive: [`check_category`] scans every composable
//! triple, [`check_functor`] every morphism, [`equivalence_check`] every
//! hom-set. Categories here are small enough that exactness beats speed.
//!
//! Composition order is fixed once for the whole crate: `compose(g, f)`
//! means "`f` then `g`", defined exactly when `cod(f) = dom(g)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::StructuralError;

/// A finite category: indexed objects, indexed morphisms, identity and
/// composition tables. Construction only checks index bounds; law checking
/// is separate so that deliberately broken tables can be represented and
/// reported on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    object_count: usize,
    /// morphism index -> (dom, cod)
    morphisms: Vec<(usize, usize)>,
    /// object index -> identity morphism index
    identity: Vec<usize>,
    /// `compose[g][f]`, present where the table defines `f` then `g`
    compose: Vec<Vec<Option<usize>>>,
}

/// One violated category law, named with the offending indices.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatViolation {
    #[error("compose({g},{f}) is undefined although cod({f}) = dom({g})")]
    MissingComposite { g: usize, f: usize },
    #[error("compose({g},{f}) is defined although cod({f}) != dom({g})")]
    SpuriousComposite { g: usize, f: usize },
    #[error("compose({g},{f}) = {h} has wrong endpoints")]
    CompositeEndpoints { g: usize, f: usize, h: usize },
    #[error("identity of object {object} is morphism {id} with wrong endpoints")]
    IdentityEndpoints { object: usize, id: usize },
    #[error("left unit law fails: compose(id_cod, {f}) != {f}")]
    LeftUnit { f: usize },
    #[error("right unit law fails: compose({f}, id_dom) != {f}")]
    RightUnit { f: usize },
    #[error("associativity fails on ({h},{g},{f})")]
    Associativity { h: usize, g: usize, f: usize },
}

impl FinCat {
    /// Builds a category from raw tables, verifying only index consistency.
    pub fn new(
        object_count: usize,
        morphisms: Vec<(usize, usize)>,
        identity: Vec<usize>,
        composites: &[((usize, usize), usize)],
    ) -> Result<FinCat, StructuralError> {
        for (i, &(d, c)) in morphisms.iter().enumerate() {
            if d >= object_count || c >= object_count {
                return Err(StructuralError::new(format!(
                    "morphism {i} has endpoint out of range"
                )));
            }
        }
        if identity.len() != object_count {
            return Err(StructuralError::new("identity table length != object count"));
        }
        for (x, &id) in identity.iter().enumerate() {
            if id >= morphisms.len() {
                return Err(StructuralError::new(format!(
                    "identity of object {x} out of range"
                )));
            }
        }
        let m = morphisms.len();
        let mut compose = vec![vec![None; m]; m];
        for &((g, f), h) in composites {
            if g >= m || f >= m || h >= m {
                return Err(StructuralError::new(format!(
                    "composition entry ({g},{f}) -> {h} out of range"
                )));
            }
            compose[g][f] = Some(h);
        }
        Ok(FinCat {
            object_count,
            morphisms,
            identity,
            compose,
        })
    }

    pub fn object_count(&self) -> usize {
        self.object_count
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].0
    }

    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].1
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.dom(f)] == f && self.dom(f) == self.cod(f)
    }

    /// `f` then `g`, where the table defines it.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    /// Morphism indices from `x` to `y`, ascending.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.dom(f) == x && self.cod(f) == y)
            .collect()
    }

    /// The category with one object and one morphism.
    pub fn terminal() -> FinCat {
        FinCat::new(1, vec![(0, 0)], vec![0], &[((0, 0), 0)]).expect("terminal")
    }

    /// Two objects, identities, and a single arrow `0 -> 1`.
    pub fn walking_arrow() -> FinCat {
        FinCat::new(
            2,
            vec![(0, 0), (1, 1), (0, 1)],
            vec![0, 1],
            &[
                ((0, 0), 0),
                ((1, 1), 1),
                ((2, 0), 2),
                ((1, 2), 2),
            ],
        )
        .expect("walking arrow")
    }

    /// `n` objects with identities only.
    pub fn discrete(n: usize) -> FinCat {
        let morphisms = (0..n).map(|x| (x, x)).collect();
        let identity = (0..n).collect();
        let composites: Vec<_> = (0..n).map(|x| ((x, x), x)).collect();
        FinCat::new(n, morphisms, identity, &composites).expect("discrete")
    }

    /// One-object category whose morphisms form the given monoid.
    ///
    /// `table[a][b]` is the product "`b` then `a`" and `unit` its identity.
    pub fn from_monoid(table: &[Vec<usize>], unit: usize) -> Result<FinCat, StructuralError> {
        let n = table.len();
        let morphisms = vec![(0, 0); n];
        let mut composites = Vec::new();
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(StructuralError::new("monoid table not square"));
            }
            for (b, &c) in row.iter().enumerate() {
                composites.push(((a, b), c));
            }
        }
        FinCat::new(1, morphisms, vec![unit], &composites)
    }

    /// The total order `0 <= 1 <= ... <= n-1` as a category.
    pub fn chain(n: usize) -> FinCat {
        let mut morphisms = Vec::new();
        let mut index = BTreeMap::new();
        for x in 0..n {
            for y in x..n {
                index.insert((x, y), morphisms.len());
                morphisms.push((x, y));
            }
        }
        let identity = (0..n).map(|x| index[&(x, x)]).collect();
        let mut composites = Vec::new();
        for (&(x, y), &f) in &index {
            for (&(y2, z), &g) in &index {
                if y == y2 {
                    composites.push(((g, f), index[&(x, z)]));
                }
            }
        }
        FinCat::new(n, morphisms, identity, &composites).expect("chain")
    }

    /// `n` objects with exactly one morphism between every ordered pair.
    pub fn indiscrete(n: usize) -> FinCat {
        let mut morphisms = Vec::new();
        let mut index = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                index.insert((x, y), morphisms.len());
                morphisms.push((x, y));
            }
        }
        let identity = (0..n).map(|x| index[&(x, x)]).collect();
        let mut composites = Vec::new();
        for (&(x, _y), &f) in &index {
            for (&(y2, z), &g) in &index {
                if morphisms[f].1 == y2 {
                    composites.push(((g, f), index[&(x, z)]));
                }
            }
        }
        FinCat::new(n, morphisms, identity, &composites).expect("indiscrete")
    }

    /// Same cells with domains and codomains swapped; morphism indices are
    /// stable so that elements transport across the two directions by index.
    pub fn opposite(&self) -> FinCat {
        let morphisms = self.morphisms.iter().map(|&(d, c)| (c, d)).collect();
        let m = self.morphisms.len();
        let mut compose = vec![vec![None; m]; m];
        for (g, row) in self.compose.iter().enumerate() {
            for (f, &h) in row.iter().enumerate() {
                if h.is_some() {
                    compose[f][g] = h;
                }
            }
        }
        FinCat {
            object_count: self.object_count,
            morphisms,
            identity: self.identity.clone(),
            compose,
        }
    }

    /// Product category together with the two projection functors.
    pub fn product(&self, other: &FinCat) -> (FinCat, Functor, Functor) {
        let pair_obj = |x: usize, y: usize| x * other.object_count + y;
        let mut morphisms = Vec::new();
        let mut index = BTreeMap::new();
        for f in 0..self.morphism_count() {
            for g in 0..other.morphism_count() {
                index.insert((f, g), morphisms.len());
                morphisms.push((
                    pair_obj(self.dom(f), other.dom(g)),
                    pair_obj(self.cod(f), other.cod(g)),
                ));
            }
        }
        let mut identity = Vec::new();
        for x in 0..self.object_count {
            for y in 0..other.object_count {
                identity.push(index[&(self.identity(x), other.identity(y))]);
            }
        }
        let mut composites = Vec::new();
        for (&(f1, g1), &a) in &index {
            for (&(f2, g2), &b) in &index {
                if let (Some(f), Some(g)) = (self.compose(f2, f1), other.compose(g2, g1)) {
                    composites.push(((b, a), index[&(f, g)]));
                }
            }
        }
        let prod = FinCat::new(
            self.object_count * other.object_count,
            morphisms,
            identity,
            &composites,
        )
        .expect("product");
        let mut p_obj = Vec::new();
        let mut q_obj = Vec::new();
        for x in 0..self.object_count {
            for y in 0..other.object_count {
                p_obj.push(x);
                q_obj.push(y);
            }
        }
        let mut p_mor = vec![0; index.len()];
        let mut q_mor = vec![0; index.len()];
        for (&(f, g), &i) in &index {
            p_mor[i] = f;
            q_mor[i] = g;
        }
        let p = Functor {
            source: prod.clone(),
            target: self.clone(),
            object_map: p_obj,
            morphism_map: p_mor,
        };
        let q = Functor {
            source: prod.clone(),
            target: other.clone(),
            object_map: q_obj,
            morphism_map: q_mor,
        };
        (prod, p, q)
    }
}

/// Exhaustive law check: definedness of composition, endpoints, unit laws,
/// and the full cubic associativity scan. Empty report means valid.
pub fn check_category(cat: &FinCat) -> Vec<CatViolation> {
    let mut out = Vec::new();
    let m = cat.morphism_count();
    for (x, &id) in cat.identity.iter().enumerate() {
        if cat.dom(id) != x || cat.cod(id) != x {
            out.push(CatViolation::IdentityEndpoints { object: x, id });
        }
    }
    for g in 0..m {
        for f in 0..m {
            let composable = cat.cod(f) == cat.dom(g);
            match cat.compose(g, f) {
                None if composable => out.push(CatViolation::MissingComposite { g, f }),
                Some(_) if !composable => out.push(CatViolation::SpuriousComposite { g, f }),
                Some(h) if cat.dom(h) != cat.dom(f) || cat.cod(h) != cat.cod(g) => {
                    out.push(CatViolation::CompositeEndpoints { g, f, h })
                }
                _ => {}
            }
        }
    }
    for f in 0..m {
        if cat.compose(cat.identity[cat.cod(f)], f) != Some(f) {
            out.push(CatViolation::LeftUnit { f });
        }
        if cat.compose(f, cat.identity[cat.dom(f)]) != Some(f) {
            out.push(CatViolation::RightUnit { f });
        }
    }
    for h in 0..m {
        for g in 0..m {
            let Some(hg) = cat.compose(h, g) else { continue };
            for f in 0..m {
                let Some(gf) = cat.compose(g, f) else { continue };
                if cat.compose(h, gf) != cat.compose(hg, f) {
                    out.push(CatViolation::Associativity { h, g, f });
                }
            }
        }
    }
    out
}

/// A functor as object and morphism index maps between two [`FinCat`]s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub source: FinCat,
    pub target: FinCat,
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FunctorViolation {
    #[error("morphism {f} maps to {image} with mismatched endpoints")]
    Endpoints { f: usize, image: usize },
    #[error("identity of object {object} is not preserved")]
    Identity { object: usize },
    #[error("composition not preserved on ({g},{f})")]
    Composition { g: usize, f: usize },
}

impl Functor {
    pub fn new(
        source: FinCat,
        target: FinCat,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<Functor, StructuralError> {
        if object_map.len() != source.object_count() {
            return Err(StructuralError::new("object map length mismatch"));
        }
        if morphism_map.len() != source.morphism_count() {
            return Err(StructuralError::new("morphism map length mismatch"));
        }
        if object_map.iter().any(|&x| x >= target.object_count()) {
            return Err(StructuralError::new("object image out of range"));
        }
        if morphism_map.iter().any(|&f| f >= target.morphism_count()) {
            return Err(StructuralError::new("morphism image out of range"));
        }
        Ok(Functor {
            source,
            target,
            object_map,
            morphism_map,
        })
    }

    pub fn identity(cat: &FinCat) -> Functor {
        Functor {
            source: cat.clone(),
            target: cat.clone(),
            object_map: (0..cat.object_count()).collect(),
            morphism_map: (0..cat.morphism_count()).collect(),
        }
    }

    /// Constant functor collapsing everything onto one object's identity.
    pub fn constant(source: &FinCat, target: &FinCat, object: usize) -> Functor {
        Functor {
            source: source.clone(),
            target: target.clone(),
            object_map: vec![object; source.object_count()],
            morphism_map: vec![target.identity(object); source.morphism_count()],
        }
    }

    pub fn apply_obj(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn apply_mor(&self, f: usize) -> usize {
        self.morphism_map[f]
    }

    /// `self` after `first`.
    pub fn after(&self, first: &Functor) -> Functor {
        Functor {
            source: first.source.clone(),
            target: self.target.clone(),
            object_map: first.object_map.iter().map(|&x| self.object_map[x]).collect(),
            morphism_map: first
                .morphism_map
                .iter()
                .map(|&f| self.morphism_map[f])
                .collect(),
        }
    }
}

/// Exhaustive functor law check over every morphism and composable pair.
pub fn check_functor(f: &Functor) -> Vec<FunctorViolation> {
    let mut out = Vec::new();
    for m in 0..f.source.morphism_count() {
        let image = f.apply_mor(m);
        if f.target.dom(image) != f.apply_obj(f.source.dom(m))
            || f.target.cod(image) != f.apply_obj(f.source.cod(m))
        {
            out.push(FunctorViolation::Endpoints { f: m, image });
        }
    }
    for x in 0..f.source.object_count() {
        if f.apply_mor(f.source.identity(x)) != f.target.identity(f.apply_obj(x)) {
            out.push(FunctorViolation::Identity { object: x });
        }
    }
    for g in 0..f.source.morphism_count() {
        for h in 0..f.source.morphism_count() {
            if let Some(gh) = f.source.compose(g, h) {
                let lhs = f.apply_mor(gh);
                let rhs = f.target.compose(f.apply_mor(g), f.apply_mor(h));
                if rhs != Some(lhs) {
                    out.push(FunctorViolation::Composition { g, f: h });
                }
            }
        }
    }
    out
}

/// A natural transformation between parallel functors, one component per
/// source object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    pub source: Functor,
    pub target: Functor,
    pub components: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NatTransViolation {
    #[error("component at object {object} has wrong endpoints")]
    ComponentEndpoints { object: usize },
    #[error("naturality square fails at morphism {f}")]
    Naturality { f: usize },
}

/// Checks component endpoints and every naturality square.
pub fn check_nat_trans(t: &NatTrans) -> Vec<NatTransViolation> {
    let mut out = Vec::new();
    let cat = &t.source.target;
    for x in 0..t.source.source.object_count() {
        let c = t.components[x];
        if cat.dom(c) != t.source.apply_obj(x) || cat.cod(c) != t.target.apply_obj(x) {
            out.push(NatTransViolation::ComponentEndpoints { object: x });
        }
    }
    for f in 0..t.source.source.morphism_count() {
        let x = t.source.source.dom(f);
        let y = t.source.source.cod(f);
        let left = cat.compose(t.components[y], t.source.apply_mor(f));
        let right = cat.compose(t.target.apply_mor(f), t.components[x]);
        if left != right || left.is_none() {
            out.push(NatTransViolation::Naturality { f });
        }
    }
    out
}

/// The comma category of two functors with common target, together with its
/// projections and the canonical transformation filling the square.
#[derive(Debug, Clone)]
pub struct CommaCategory {
    pub category: FinCat,
    /// object index -> (object of X, connecting morphism in Z, object of Y)
    pub objects: Vec<(usize, usize, usize)>,
    /// morphism index -> (component in X, component in Y)
    pub morphisms: Vec<(usize, usize)>,
    pub proj_left: Functor,
    pub proj_right: Functor,
    /// From `f . proj_left` to `g . proj_right`; component at `(x,u,y)` is `u`.
    pub canonical: NatTrans,
}

/// Builds `f/g` for functors `f : X -> Z`, `g : Y -> Z`.
///
/// Objects are triples `(x, u : f x -> g y, y)`; morphisms are pairs of
/// morphisms making the evident square commute.
pub fn comma_category(f: &Functor, g: &Functor) -> Result<CommaCategory, StructuralError> {
    if f.target != g.target {
        return Err(StructuralError::new("comma: functors must share a target"));
    }
    let x_cat = &f.source;
    let y_cat = &g.source;
    let z_cat = &f.target;

    let mut objects = Vec::new();
    for x in 0..x_cat.object_count() {
        for y in 0..y_cat.object_count() {
            for u in z_cat.hom(f.apply_obj(x), g.apply_obj(y)) {
                objects.push((x, u, y));
            }
        }
    }
    let obj_index: BTreeMap<(usize, usize, usize), usize> = objects
        .iter()
        .enumerate()
        .map(|(i, &o)| (o, i))
        .collect();

    let mut morphisms = Vec::new();
    let mut mor_data = Vec::new();
    let mut mor_index = BTreeMap::new();
    for (si, &(x, u, y)) in objects.iter().enumerate() {
        for (ti, &(x2, u2, y2)) in objects.iter().enumerate() {
            for a in x_cat.hom(x, x2) {
                for b in y_cat.hom(y, y2) {
                    let left = z_cat.compose(u2, f.apply_mor(a));
                    let right = z_cat.compose(g.apply_mor(b), u);
                    if left.is_some() && left == right {
                        mor_index.insert((si, ti, a, b), morphisms.len());
                        morphisms.push((si, ti));
                        mor_data.push((a, b));
                    }
                }
            }
        }
    }
    let identity: Vec<usize> = objects
        .iter()
        .enumerate()
        .map(|(i, &(x, _u, y))| mor_index[&(i, i, x_cat.identity(x), y_cat.identity(y))])
        .collect();
    let mut composites = Vec::new();
    for (&(s1, t1, a1, b1), &m1) in &mor_index {
        for (&(s2, t2, a2, b2), &m2) in &mor_index {
            if t1 == s2 {
                let a = x_cat.compose(a2, a1).expect("comma composable in X");
                let b = y_cat.compose(b2, b1).expect("comma composable in Y");
                composites.push(((m2, m1), mor_index[&(s1, t2, a, b)]));
            }
        }
    }
    let category = FinCat::new(objects.len(), morphisms, identity, &composites)?;

    let proj_left = Functor {
        source: category.clone(),
        target: x_cat.clone(),
        object_map: objects.iter().map(|&(x, _, _)| x).collect(),
        morphism_map: mor_data.iter().map(|&(a, _)| a).collect(),
    };
    let proj_right = Functor {
        source: category.clone(),
        target: y_cat.clone(),
        object_map: objects.iter().map(|&(_, _, y)| y).collect(),
        morphism_map: mor_data.iter().map(|&(_, b)| b).collect(),
    };
    let canonical = NatTrans {
        source: f.after(&proj_left),
        target: g.after(&proj_right),
        components: objects.iter().map(|&(_, u, _)| u).collect(),
    };
    let _ = obj_index;
    Ok(CommaCategory {
        category,
        objects,
        morphisms: mor_data,
        proj_left,
        proj_right,
        canonical,
    })
}

/// The arrow category of `X`, built directly (not through a comma object):
/// objects are morphisms of `X`, morphisms are commuting squares.
pub fn arrow_category(x_cat: &FinCat) -> FinCat {
    let objects: Vec<usize> = (0..x_cat.morphism_count()).collect();
    let mut morphisms = Vec::new();
    let mut mor_index = BTreeMap::new();
    for (si, &u) in objects.iter().enumerate() {
        for (ti, &v) in objects.iter().enumerate() {
            for a in x_cat.hom(x_cat.dom(u), x_cat.dom(v)) {
                for b in x_cat.hom(x_cat.cod(u), x_cat.cod(v)) {
                    if x_cat.compose(v, a) == x_cat.compose(b, u) {
                        mor_index.insert((si, ti, a, b), morphisms.len());
                        morphisms.push((si, ti));
                    }
                }
            }
        }
    }
    let identity: Vec<usize> = objects
        .iter()
        .enumerate()
        .map(|(i, &u)| {
            mor_index[&(
                i,
                i,
                x_cat.identity(x_cat.dom(u)),
                x_cat.identity(x_cat.cod(u)),
            )]
        })
        .collect();
    let mut composites = Vec::new();
    for (&(s1, t1, a1, b1), &m1) in &mor_index {
        for (&(s2, t2, a2, b2), &m2) in &mor_index {
            if t1 == s2 {
                let a = x_cat.compose(a2, a1).expect("arrow cat composable");
                let b = x_cat.compose(b2, b1).expect("arrow cat composable");
                composites.push(((m2, m1), mor_index[&(s1, t2, a, b)]));
            }
        }
    }
    FinCat::new(objects.len(), morphisms, identity, &composites).expect("arrow category")
}

/// Result of an equivalence check, with the witnesses it found.
#[derive(Debug, Clone)]
pub enum EquivalenceOutcome {
    Equivalent(EquivalenceWitness),
    NotEquivalent(EquivalenceFailure),
    /// The enumeration budget ran out before essential surjectivity could be
    /// decided; not a refutation.
    Indeterminate(String),
}

#[derive(Debug, Clone)]
pub struct EquivalenceWitness {
    /// target object -> (preimage object, iso forward, iso backward)
    pub surjectivity: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceFailure {
    NotFaithful { x: usize, y: usize },
    NotFull { x: usize, y: usize },
    NotEssentiallySurjective { object: usize },
}

impl EquivalenceOutcome {
    pub fn is_equivalence(&self) -> bool {
        matches!(self, EquivalenceOutcome::Equivalent(_))
    }
}

/// Searches `cat` for a mutually inverse pair between `a` and `b`.
pub fn find_iso(cat: &FinCat, a: usize, b: usize) -> Option<(usize, usize)> {
    for u in cat.hom(a, b) {
        for v in cat.hom(b, a) {
            if cat.compose(v, u) == Some(cat.identity(a))
                && cat.compose(u, v) == Some(cat.identity(b))
            {
                return Some((u, v));
            }
        }
    }
    None
}

/// Decides whether `f` is fully faithful and essentially surjective, with
/// isomorphism witnesses for the latter found by exhaustive hom search.
pub fn equivalence_check(f: &Functor) -> EquivalenceOutcome {
    for x in 0..f.source.object_count() {
        for y in 0..f.source.object_count() {
            let hom = f.source.hom(x, y);
            let mut images: Vec<usize> = hom.iter().map(|&m| f.apply_mor(m)).collect();
            images.sort_unstable();
            let before = images.len();
            images.dedup();
            if images.len() != before {
                return EquivalenceOutcome::NotEquivalent(EquivalenceFailure::NotFaithful {
                    x,
                    y,
                });
            }
            let target_hom = f.target.hom(f.apply_obj(x), f.apply_obj(y));
            if images.len() != target_hom.len() {
                return EquivalenceOutcome::NotEquivalent(EquivalenceFailure::NotFull { x, y });
            }
        }
    }
    let mut surjectivity = Vec::new();
    for t in 0..f.target.object_count() {
        let mut found = None;
        for x in 0..f.source.object_count() {
            if let Some((u, v)) = find_iso(&f.target, f.apply_obj(x), t) {
                found = Some((x, u, v));
                break;
            }
        }
        match found {
            Some(w) => surjectivity.push(w),
            None => {
                return EquivalenceOutcome::NotEquivalent(
                    EquivalenceFailure::NotEssentiallySurjective { object: t },
                )
            }
        }
    }
    EquivalenceOutcome::Equivalent(EquivalenceWitness { surjectivity })
}

impl fmt::Display for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinCat({} objects, {} morphisms)",
            self.object_count,
            self.morphisms.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walking_arrow_is_valid() {
        assert!(check_category(&FinCat::walking_arrow()).is_empty());
    }

    #[test]
    fn corrupt_unit_is_reported() {
        // Same data as the walking arrow, but compose(u, id_0) is wrong.
        let cat = FinCat::new(
            2,
            vec![(0, 0), (1, 1), (0, 1)],
            vec![0, 1],
            &[((0, 0), 0), ((1, 1), 1), ((2, 0), 0), ((1, 2), 2)],
        )
        .unwrap();
        let report = check_category(&cat);
        assert!(report
            .iter()
            .any(|v| matches!(v, CatViolation::RightUnit { f: 2 })
                || matches!(v, CatViolation::CompositeEndpoints { g: 2, f: 0, .. })));
    }

    #[test]
    fn z2_group_is_a_category() {
        // Group axioms imply the category axioms for the one-object case.
        let z2 = FinCat::from_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap();
        assert!(check_category(&z2).is_empty());
    }

    #[test]
    fn structural_error_is_not_a_law_violation() {
        let err = FinCat::new(1, vec![(0, 2)], vec![0], &[]);
        assert!(err.is_err());
    }

    #[test]
    fn identity_and_constant_functors_are_valid() {
        let c = FinCat::walking_arrow();
        assert!(check_functor(&Functor::identity(&c)).is_empty());
        let t = FinCat::from_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap();
        assert!(check_functor(&Functor::constant(&c, &t, 0)).is_empty());
    }

    #[test]
    fn bad_morphism_image_is_reported() {
        // Send the arrow of the walking arrow to an identity with mismatched
        // endpoints.
        let c = FinCat::walking_arrow();
        let f = Functor::new(c.clone(), c.clone(), vec![0, 1], vec![0, 1, 0]).unwrap();
        let report = check_functor(&f);
        assert!(report
            .iter()
            .any(|v| matches!(v, FunctorViolation::Endpoints { f: 2, .. })));
    }

    #[test]
    fn comma_of_identities_is_arrow_category() {
        let c = FinCat::walking_arrow();
        let id = Functor::identity(&c);
        let comma = comma_category(&id, &id).unwrap();
        assert!(check_category(&comma.category).is_empty());
        assert!(check_nat_trans(&comma.canonical).is_empty());
        let direct = arrow_category(&c);
        assert_eq!(comma.category.object_count(), direct.object_count());
        assert_eq!(comma.category.morphism_count(), direct.morphism_count());
        // Cell counts agree and the index-aligned map is an isomorphism of
        // categories: comma objects (x, u, y) are exactly the morphisms u.
        let map: Vec<usize> = comma.objects.iter().map(|&(_, u, _)| u).collect();
        let mut sorted = map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), direct.object_count());
    }

    #[test]
    fn comma_from_terminal_picks_hom_set() {
        let z = FinCat::walking_arrow();
        let one = FinCat::terminal();
        let pick_a = Functor::constant(&one, &z, 0);
        let pick_b = Functor::constant(&one, &z, 1);
        let comma = comma_category(&pick_a, &pick_b).unwrap();
        assert_eq!(comma.category.object_count(), z.hom(0, 1).len());
        let comma_rev = comma_category(&pick_b, &pick_a).unwrap();
        assert_eq!(comma_rev.category.object_count(), z.hom(1, 0).len());
    }

    #[test]
    fn comma_of_terminal_identities_is_terminal() {
        let one = FinCat::terminal();
        let id = Functor::identity(&one);
        let comma = comma_category(&id, &id).unwrap();
        assert_eq!(comma.category.object_count(), 1);
        assert_eq!(comma.category.morphism_count(), 1);
    }

    #[test]
    fn equivalence_reflexive() {
        let c = FinCat::chain(3);
        assert!(equivalence_check(&Functor::identity(&c)).is_equivalence());
    }

    #[test]
    fn skeleton_inclusion_is_equivalence() {
        // Two isomorphic objects; include the one-object skeleton.
        let fat = FinCat::indiscrete(2);
        let one = FinCat::terminal();
        let incl = Functor::new(one.clone(), fat.clone(), vec![0], vec![fat.identity(0)]).unwrap();
        let outcome = equivalence_check(&incl);
        assert!(outcome.is_equivalence());
        if let EquivalenceOutcome::Equivalent(w) = outcome {
            // Explicit isomorphisms onto both target objects were produced.
            assert_eq!(w.surjectivity.len(), 2);
        }
    }

    #[test]
    fn collapsing_functor_is_not_equivalence() {
        // Collapse the two non-isomorphic objects of the walking arrow.
        let c = FinCat::walking_arrow();
        let one_obj = FinCat::from_monoid(&[vec![0]], 0).unwrap();
        let f = Functor::new(c.clone(), one_obj, vec![0, 0], vec![0, 0, 0]).unwrap();
        assert!(check_functor(&f).is_empty());
        let outcome = equivalence_check(&f);
        assert!(!outcome.is_equivalence());
        assert!(matches!(
            outcome,
            EquivalenceOutcome::NotEquivalent(
                EquivalenceFailure::NotFaithful { .. } | EquivalenceFailure::NotFull { .. }
            )
        ));
    }

    #[test]
    fn equivalence_composition_closed_on_witnesses() {
        let fat = FinCat::indiscrete(2);
        let one = FinCat::terminal();
        let incl = Functor::new(one.clone(), fat.clone(), vec![0], vec![fat.identity(0)]).unwrap();
        let id_fat = Functor::identity(&fat);
        let composite = id_fat.after(&incl);
        assert!(equivalence_check(&composite).is_equivalence());
    }

    #[test]
    fn single_corrupt_composite_detected() {
        // Corrupting one entry of a valid table yields a nonempty report.
        let chain = FinCat::chain(3);
        for g in 0..chain.morphism_count() {
            for f in 0..chain.morphism_count() {
                if chain.compose(g, f).is_none() || chain.is_identity(g) || chain.is_identity(f) {
                    continue;
                }
                let mut bad = chain.clone();
                let old = bad.compose[g][f].unwrap();
                let replacement = (0..bad.morphism_count())
                    .find(|&h| h != old)
                    .unwrap();
                bad.compose[g][f] = Some(replacement);
                assert!(
                    !check_category(&bad).is_empty(),
                    "corruption at ({g},{f}) went unnoticed"
                );
            }
        }
    }

    #[test]
    fn product_projections_are_functors() {
        let c = FinCat::walking_arrow();
        let d = FinCat::chain(2);
        let (prod, p, q) = c.product(&d);
        assert!(check_category(&prod).is_empty());
        assert!(check_functor(&p).is_empty());
        assert!(check_functor(&q).is_empty());
    }

    #[test]
    fn opposite_is_involutive_and_valid() {
        let c = FinCat::chain(3);
        assert!(check_category(&c.opposite()).is_empty());
        assert_eq!(c.opposite().opposite(), c);
    }
}
