//! Torus orbit closures in a sum of characters: the class equals the
//! equivariant multiplicity of the cone of supported characters times the
//! product of all characters.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::{AlgebraError, LinearForm, Polynomial, Rational, RationalTerm, RationalTermSum, Variables};

mod lattice;
mod oracle;

use lattice::{det, lattice_index, primitive, project, rank_and_pivots, to_big};
pub use oracle::volume_oracle;

/// Characters `chi_i` of a `d`-dimensional torus, with the flags `w_i != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacterList {
    pub d: usize,
    pub chars: Vec<Vec<i64>>,
    pub support: Vec<bool>,
}

impl CharacterList {
    /// Every character supported.
    pub fn full(d: usize, chars: Vec<Vec<i64>>) -> Self {
        let support = vec![true; chars.len()];
        CharacterList { d, chars, support }
    }

    pub fn validate(&self) -> Result<(), TorusError> {
        if self.d == 0 {
            return Err(TorusError::ZeroDimension);
        }
        if self.support.len() != self.chars.len() {
            return Err(TorusError::SupportArity {
                expected: self.chars.len(),
                found: self.support.len(),
            });
        }
        for (i, c) in self.chars.iter().enumerate() {
            if c.len() != self.d {
                return Err(TorusError::CharacterArity { index: i, expected: self.d, found: c.len() });
            }
        }
        if !self.support.iter().any(|&s| s) {
            return Err(TorusError::NoSupport);
        }
        Ok(())
    }

    fn vars(&self) -> Variables {
        Variables::Torus(self.d)
    }
}

/// The cone spanned by the supported characters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    pub d: usize,
    /// Distinct primitive ray generators, in first-appearance order.
    pub generators: Vec<Vec<i64>>,
    pub pointed: bool,
    /// Dimension of the linear span.
    pub rank: usize,
}

/// A simplicial cone of a triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialPiece {
    pub generators: Vec<Vec<i64>>,
    /// Index of the generators' lattice in the saturated lattice of their
    /// span (`|det|` when full-dimensional).
    pub det_abs: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusClass {
    pub pointed: bool,
    pub rank: usize,
    /// `e_sigma` as a single reduced term; `None` when not pointed.
    pub e_sigma: Option<RationalTerm>,
    pub pieces: Vec<SimplicialPiece>,
    pub class: Polynomial,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusError {
    ZeroDimension,
    SupportArity { expected: usize, found: usize },
    CharacterArity { index: usize, expected: usize, found: usize },
    NoSupport,
    NotPointed,
    DegenerateGenerators,
    /// `lambda` is not strictly positive on every generator.
    NotPositive,
    NonzeroRemainder,
    Internal(String),
    Algebra(AlgebraError),
}

impl TorusError {
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            TorusError::NonzeroRemainder | TorusError::Internal(_) | TorusError::Algebra(_)
        )
    }
}

impl From<AlgebraError> for TorusError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::NonzeroRemainder => TorusError::NonzeroRemainder,
            other => TorusError::Algebra(other),
        }
    }
}

impl fmt::Display for TorusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusError::ZeroDimension => f.write_str("torus dimension must be at least 1"),
            TorusError::SupportArity { expected, found } => {
                write!(f, "expected {} support flags, found {}", expected, found)
            }
            TorusError::CharacterArity { index, expected, found } => write!(
                f,
                "character {} has {} coordinates, expected {}",
                index, found, expected
            ),
            TorusError::NoSupport => f.write_str("no supported character"),
            TorusError::NotPointed => f.write_str("the cone contains a line"),
            TorusError::DegenerateGenerators => f.write_str("degenerate generator set"),
            TorusError::NotPositive => {
                f.write_str("lambda must be strictly positive on every generator")
            }
            TorusError::NonzeroRemainder => f.write_str("class assembly left a nonzero remainder"),
            TorusError::Internal(m) => write!(f, "internal check failed: {}", m),
            TorusError::Algebra(e) => write!(f, "{}", e),
        }
    }
}

/// Decides whether some `lambda` is strictly positive on every row, by
/// Fourier-Motzkin elimination of the strict homogeneous system.
pub(crate) fn strictly_feasible(rows: &[Vec<i64>], d: usize) -> bool {
    let mut system: Vec<Vec<BigInt>> = rows.iter().map(|r| to_big(r)).collect();
    for k in 0..d {
        let mut next: Vec<Vec<BigInt>> = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for r in system {
            if r[k].is_positive() {
                pos.push(r);
            } else if r[k].is_negative() {
                neg.push(r);
            } else {
                next.push(r);
            }
        }
        for p in &pos {
            for q in &neg {
                let a = -&q[k];
                let b = p[k].clone();
                let comb: Vec<BigInt> = p.iter().zip(q).map(|(x, y)| &a * x + &b * y).collect();
                next.push(comb);
            }
        }
        // a strict inequality with no variables left is 0 > 0
        if next.iter().any(|r| r.iter().all(Zero::is_zero)) {
            return false;
        }
        next = normalize_rows(next);
        system = next;
    }
    system.is_empty()
}

fn normalize_rows(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut seen: BTreeMap<Vec<BigInt>, ()> = BTreeMap::new();
    for r in rows {
        let g = crate::algebra::rational::gcd_all(r.iter());
        let r: Vec<BigInt> = if g.is_zero() { r } else { r.iter().map(|x| x / &g).collect() };
        seen.insert(r, ());
    }
    seen.into_keys().collect()
}

/// True if the cone of supported nonzero characters contains no line.
pub fn is_pointed(c: &CharacterList) -> bool {
    let rows: Vec<Vec<i64>> = c
        .chars
        .iter()
        .zip(&c.support)
        .filter(|(v, &s)| s && v.iter().any(|&x| x != 0))
        .map(|(v, _)| v.clone())
        .collect();
    strictly_feasible(&rows, c.d)
}

/// The cone of supported characters with deduplicated primitive generators.
pub fn cone(c: &CharacterList) -> Result<Cone, TorusError> {
    c.validate()?;
    let mut generators: Vec<Vec<i64>> = Vec::new();
    for (v, &s) in c.chars.iter().zip(&c.support) {
        if !s {
            continue;
        }
        if let Some(p) = primitive(v) {
            if !generators.contains(&p) {
                generators.push(p);
            }
        }
    }
    let (rank, _) = rank_and_pivots(&generators, c.d);
    Ok(Cone {
        d: c.d,
        pointed: strictly_feasible(&generators, c.d),
        generators,
        rank,
    })
}

fn sign(v: &BigInt) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Placing triangulation over the generator order: start from the first
/// spanning simplex, then cone every visible boundary face over each new
/// generator. A generator already inside the current cone subdivides the
/// pieces containing it instead, so every ray is used.
pub fn triangulate(cone: &Cone) -> Result<Vec<SimplicialPiece>, TorusError> {
    if !cone.pointed {
        return Err(TorusError::NotPointed);
    }
    let (r, pivots) = rank_and_pivots(&cone.generators, cone.d);
    let proj: Vec<Vec<BigInt>> = cone
        .generators
        .iter()
        .map(|g| to_big(&project(g, &pivots)))
        .collect();

    let mut start: Vec<usize> = Vec::new();
    for i in 0..proj.len() {
        let mut trial = start.clone();
        trial.push(i);
        let rows: Vec<Vec<i64>> = trial.iter().map(|&j| project(&cone.generators[j], &pivots)).collect();
        if rank_and_pivots(&rows, r).0 == trial.len() {
            start = trial;
        }
        if start.len() == r {
            break;
        }
    }
    if start.len() != r {
        return Err(TorusError::DegenerateGenerators);
    }
    let orient = |face: &[usize], extra: usize| -> i32 {
        let mut m: Vec<Vec<BigInt>> = face.iter().map(|&j| proj[j].clone()).collect();
        m.push(proj[extra].clone());
        sign(&det(&m))
    };
    let mut simplices: Vec<Vec<usize>> = vec![start.clone()];
    for i in 0..proj.len() {
        if start.contains(&i) {
            continue;
        }
        let mut faces: BTreeMap<Vec<usize>, (u32, usize)> = BTreeMap::new();
        for s in &simplices {
            for (k, &opp) in s.iter().enumerate() {
                let mut f = s.clone();
                f.remove(k);
                f.sort_unstable();
                let e = faces.entry(f).or_insert((0, opp));
                e.0 += 1;
            }
        }
        let mut added = Vec::new();
        for (f, (count, opp)) in faces {
            if count != 1 {
                continue;
            }
            let inside = orient(&f, opp);
            let here = orient(&f, i);
            if here != 0 && here == -inside {
                let mut s = f.clone();
                s.push(i);
                added.push(s);
            }
        }
        if added.is_empty() {
            // the ray is already covered: stellar subdivision of every piece containing it
            let mut next = Vec::with_capacity(simplices.len() + 2);
            for s in simplices {
                let faces: Vec<(Vec<usize>, usize)> = (0..s.len())
                    .map(|k| {
                        let mut f = s.clone();
                        let opp = f.remove(k);
                        f.sort_unstable();
                        (f, opp)
                    })
                    .collect();
                let contains = faces.iter().all(|(f, opp)| {
                    let here = orient(f, i);
                    here == 0 || here == orient(f, *opp)
                });
                if !contains {
                    next.push(s);
                    continue;
                }
                for (f, _) in faces {
                    if orient(&f, i) != 0 {
                        let mut t = f;
                        t.push(i);
                        next.push(t);
                    }
                }
            }
            simplices = next;
        } else {
            simplices.extend(added);
        }
    }
    Ok(simplices
        .into_iter()
        .map(|s| {
            let generators: Vec<Vec<i64>> = s.iter().map(|&j| cone.generators[j].clone()).collect();
            let det_abs = lattice_index(&generators, cone.d);
            SimplicialPiece { generators, det_abs }
        })
        .collect())
}

fn pairing(vars: Variables, g: &[i64]) -> LinearForm {
    LinearForm::from_integers(vars, g)
}

/// `e_sigma = sum over pieces of det_abs / prod <g_i, x>`.
pub fn equivariant_multiplicity(cone: &Cone) -> Result<RationalTermSum, TorusError> {
    let vars = Variables::Torus(cone.d);
    let mut out = RationalTermSum::new(vars);
    for piece in triangulate(cone)? {
        out.push(RationalTerm::reciprocal(
            vars,
            Rational::from_integer(piece.det_abs.clone()),
            piece.generators.iter().map(|g| (pairing(vars, g), 1)),
        )?)?;
    }
    Ok(out)
}

/// `[Orb(w)] = e_sigma * prod chi_i`, or 0 if the cone contains a line.
pub fn torus_orbit_class(c: &CharacterList) -> Result<TorusClass, TorusError> {
    let cone = cone(c)?;
    let vars = c.vars();
    if !cone.pointed {
        return Ok(TorusClass {
            pointed: false,
            rank: cone.rank,
            e_sigma: None,
            pieces: Vec::new(),
            class: Polynomial::zero(vars),
            notes: vec![String::from("the cone contains a line: the class is 0")],
        });
    }
    let pieces = triangulate(&cone)?;
    let e = equivariant_multiplicity(&cone)?.sum_terms();
    let mut top = Polynomial::one(vars);
    for ch in &c.chars {
        top = top.try_mul(&pairing(vars, ch).to_polynomial())?;
    }
    let numerator = e.scaled_numerator().try_mul(&top)?;
    let class = numerator.exact_divide(&e.denominator_polynomial())?;
    let degree = (c.chars.len() - cone.rank) as u32;
    if !class.is_zero() && (!class.is_homogeneous() || class.degree() != Some(degree)) {
        return Err(TorusError::Internal(format!(
            "class is not homogeneous of degree {}",
            degree
        )));
    }
    let mut notes = Vec::new();
    if cone.rank < c.d {
        notes.push(format!(
            "the cone spans a rank-{} sublattice; e_sigma is the multiplicity in its saturation",
            cone.rank
        ));
    }
    Ok(TorusClass {
        pointed: true,
        rank: cone.rank,
        e_sigma: Some(e),
        pieces,
        class,
        notes,
    })
}
