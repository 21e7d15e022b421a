//! Counting fake-flat colourings and evaluating the surface invariant.
//!
//! A colouring assigns a `G`-element to every non-boundary 1-cell (boundary
//! circles carry externally chosen colours) and an `H`-element to every
//! 2-cell, subject to the fake flatness condition per 2-cell: the product of
//! the edge colours along the boundary word, read anticlockwise from the
//! basepoint and inverted against the traversal direction, equals the
//! boundary map applied to the face colour.
//!
//! The invariant of a surface with `v` internal vertices, `e` internal
//! edges, `n` in-circles coloured `g_in` and `m` out-circles coloured
//! `g_out` is
//!
//! ```text
//!   |H|^(v-e) / |G|^((m+n)/2 + v) · #colourings
//! ```
//!
//! an exact scalar with a symbolic `sqrt(|G|)` when `m + n` is odd.
//!
//! Counting runs in two modes. `Oracle` enumerates every edge and face
//! assignment and filters by the fake flatness check — slow, obviously
//! correct. `Fast` enumerates edge assignments only: the face word product
//! determines the image of the face colour, so each face independently
//! contributes `|ker d|` colourings when its product lands in `im d` and
//! kills the assignment otherwise. The two modes agreeing on everything is
//! part of the acceptance gate.

use std::collections::BTreeMap;

use crate::crossed::CrossedModule;
use crate::error::{Error, Result};
use crate::scalar::{rat, rat_ipow, ExactScalar};
use crate::surface::{Dir, EdgeKind, SurfaceComplex};
use crate::two_conjugacy::c_function;

/// Enumeration caps. `fast_states` bounds `|G|^edges`; `oracle_states`
/// bounds `|G|^edges · |H|^faces`.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub fast_states: u128,
    pub oracle_states: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            fast_states: 100_000_000,
            oracle_states: 10_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    Oracle,
    Fast,
}

/// A total colouring: free (cut/internal) edge colours and face colours.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Colouring {
    pub edges: BTreeMap<usize, usize>,
    pub faces: BTreeMap<usize, usize>,
}

/// Where a word step takes its colour from during enumeration.
#[derive(Clone, Copy)]
enum Term {
    InSlot(usize),
    OutSlot(usize),
    Free(usize),
}

struct CompiledFace {
    face_id: usize,
    /// `(source, inverted)` steps, starting at the basepoint.
    terms: Vec<(Term, bool)>,
}

struct Compiled {
    /// Non-boundary edge ids in increasing order; enumeration digits in this
    /// order, most significant first.
    free_edges: Vec<usize>,
    faces: Vec<CompiledFace>,
}

fn compile(s: &SurfaceComplex) -> Compiled {
    let mut free_edges: Vec<usize> = s
        .edges()
        .iter()
        .filter(|e| !e.kind.is_boundary())
        .map(|e| e.id)
        .collect();
    free_edges.sort_unstable();
    let slot_of = |id: usize| free_edges.binary_search(&id).expect("free edge");
    let faces = s
        .faces()
        .iter()
        .map(|f| {
            let len = f.word.len();
            let terms = (0..len)
                .map(|i| {
                    let r = f.word[(f.basepoint + i) % len];
                    let term = match s.edge(r.edge).expect("edge exists").kind {
                        EdgeKind::In(k) => Term::InSlot(k),
                        EdgeKind::Out(k) => Term::OutSlot(k),
                        EdgeKind::Cut | EdgeKind::Internal => Term::Free(slot_of(r.edge)),
                    };
                    (term, r.dir == Dir::Rev)
                })
                .collect();
            CompiledFace {
                face_id: f.id,
                terms,
            }
        })
        .collect();
    Compiled { free_edges, faces }
}

fn face_product(
    cm: &CrossedModule,
    face: &CompiledFace,
    free: &[usize],
    g_in: &[usize],
    g_out: &[usize],
) -> usize {
    let g = cm.g();
    let mut acc = 0;
    for &(term, inverted) in &face.terms {
        let mut v = match term {
            Term::InSlot(k) => g_in[k],
            Term::OutSlot(k) => g_out[k],
            Term::Free(i) => free[i],
        };
        if inverted {
            v = g.inv(v);
        }
        acc = g.mul(acc, v);
    }
    acc
}

fn check_tuples(
    s: &SurfaceComplex,
    cm: &CrossedModule,
    g_in: &[usize],
    g_out: &[usize],
) -> Result<()> {
    if g_in.len() != s.n_in() || g_out.len() != s.n_out() {
        return Err(Error::Parse(format!(
            "boundary colour tuples must have lengths ({}, {}), got ({}, {})",
            s.n_in(),
            s.n_out(),
            g_in.len(),
            g_out.len()
        )));
    }
    let order = cm.g().order();
    if g_in.iter().chain(g_out).any(|&v| v >= order) {
        return Err(Error::Parse(format!(
            "boundary colour out of range for a group of order {order}"
        )));
    }
    Ok(())
}

fn checked_pow(base: usize, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

/// Enumeration size against a cap; overflow counts as over the cap.
fn bounded_states(states: Option<u128>, cap: u128) -> Result<u128> {
    let states = states.ok_or(Error::SizeLimit {
        needed: u128::MAX,
        cap,
    })?;
    if states > cap {
        return Err(Error::SizeLimit {
            needed: states,
            cap,
        });
    }
    Ok(states)
}

/// Steps a mixed-radix odometer; returns false once it wraps around.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// True iff every face satisfies fake flatness under the given total
/// colouring and boundary assignment.
pub fn check_fake_flat(
    s: &SurfaceComplex,
    cm: &CrossedModule,
    col: &Colouring,
    g_in: &[usize],
    g_out: &[usize],
) -> Result<bool> {
    s.validate()?;
    check_tuples(s, cm, g_in, g_out)?;
    let compiled = compile(s);
    let mut free = Vec::with_capacity(compiled.free_edges.len());
    for &id in &compiled.free_edges {
        free.push(*col.edges.get(&id).ok_or(Error::MissingColour(id))?);
    }
    for cf in &compiled.faces {
        let h = *col
            .faces
            .get(&cf.face_id)
            .ok_or(Error::MissingColour(cf.face_id))?;
        if face_product(cm, cf, &free, g_in, g_out) != cm.boundary_of(h) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of fake-flat colourings with the given boundary colours.
pub fn count_colourings(
    s: &SurfaceComplex,
    cm: &CrossedModule,
    g_in: &[usize],
    g_out: &[usize],
    mode: CountMode,
    limits: &Limits,
) -> Result<u128> {
    s.validate()?;
    check_tuples(s, cm, g_in, g_out)?;
    let compiled = compile(s);
    match mode {
        CountMode::Fast => fast_count_range(&compiled, cm, g_in, g_out, None, limits),
        CountMode::Oracle => oracle_count(&compiled, cm, g_in, g_out, limits),
    }
}

/// Fast-mode count over a contiguous range of edge-assignment indices
/// (`None` = the whole space). Assignments are ordered row-major by edge id.
fn fast_count_range(
    compiled: &Compiled,
    cm: &CrossedModule,
    g_in: &[usize],
    g_out: &[usize],
    range: Option<(u128, u128)>,
    limits: &Limits,
) -> Result<u128> {
    let ng = cm.g().order();
    let e = compiled.free_edges.len();
    let states = bounded_states(checked_pow(ng, e), limits.fast_states)?;
    let (start, end) = range.unwrap_or((0, states));
    debug_assert!(start <= end && end <= states);
    if start == end {
        return Ok(0);
    }

    let k_per_face =
        checked_pow(cm.kernel().len(), compiled.faces.len()).ok_or(Error::SizeLimit {
            needed: u128::MAX,
            cap: limits.fast_states,
        })?;

    // decode the starting state into digits, most significant first
    let mut digits = vec![0usize; e];
    let mut idx = start;
    for i in (0..e).rev() {
        digits[i] = (idx % ng as u128) as usize;
        idx /= ng as u128;
    }

    let mut count: u128 = 0;
    let mut remaining = end - start;
    loop {
        if compiled
            .faces
            .iter()
            .all(|cf| cm.in_image(face_product(cm, cf, &digits, g_in, g_out)))
        {
            count += k_per_face;
        }
        remaining -= 1;
        if remaining == 0 || !advance(&mut digits, ng) {
            break;
        }
    }
    Ok(count)
}

fn oracle_count(
    compiled: &Compiled,
    cm: &CrossedModule,
    g_in: &[usize],
    g_out: &[usize],
    limits: &Limits,
) -> Result<u128> {
    let ng = cm.g().order();
    let nh = cm.h().order();
    let e = compiled.free_edges.len();
    let f = compiled.faces.len();
    bounded_states(
        checked_pow(ng, e).and_then(|a| checked_pow(nh, f).and_then(|b| a.checked_mul(b))),
        limits.oracle_states,
    )?;

    let mut count: u128 = 0;
    let mut edge_digits = vec![0usize; e];
    loop {
        let mut face_digits = vec![0usize; f];
        loop {
            let flat = compiled.faces.iter().zip(&face_digits).all(|(cf, &h)| {
                face_product(cm, cf, &edge_digits, g_in, g_out) == cm.boundary_of(h)
            });
            if flat {
                count += 1;
            }
            if !advance(&mut face_digits, nh) {
                break;
            }
        }
        if !advance(&mut edge_digits, ng) {
            break;
        }
    }
    Ok(count)
}

/// Fast-mode count split into `parts` contiguous partitions, each counted on
/// its own thread and summed in partition order. The result is identical to
/// the serial count for every partition count.
pub fn count_colourings_partitioned(
    s: &SurfaceComplex,
    cm: &CrossedModule,
    g_in: &[usize],
    g_out: &[usize],
    parts: usize,
    limits: &Limits,
) -> Result<u128> {
    assert!(parts > 0, "need at least one partition");
    s.validate()?;
    check_tuples(s, cm, g_in, g_out)?;
    let compiled = compile(s);
    let ng = cm.g().order();
    let states = bounded_states(
        checked_pow(ng, compiled.free_edges.len()),
        limits.fast_states,
    )?;

    let parts = parts.min(states.max(1) as usize).max(1);
    let bounds: Vec<(u128, u128)> = (0..parts as u128)
        .map(|i| {
            let lo = states * i / parts as u128;
            let hi = states * (i + 1) / parts as u128;
            (lo, hi)
        })
        .collect();

    let partials: Vec<Result<u128>> = std::thread::scope(|scope| {
        let handles: Vec<_> = bounds
            .iter()
            .map(|&(lo, hi)| {
                let compiled = &compiled;
                scope.spawn(move || {
                    fast_count_range(compiled, cm, g_in, g_out, Some((lo, hi)), limits)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("counting thread panicked"))
            .collect()
    });

    let mut total: u128 = 0;
    for p in partials {
        total += p?;
    }
    Ok(total)
}

/// Materializes every fake-flat colouring (oracle enumeration).
pub fn enumerate_colourings(
    s: &SurfaceComplex,
    cm: &CrossedModule,
    g_in: &[usize],
    g_out: &[usize],
    limits: &Limits,
) -> Result<Vec<Colouring>> {
    s.validate()?;
    check_tuples(s, cm, g_in, g_out)?;
    let compiled = compile(s);
    let ng = cm.g().order();
    let nh = cm.h().order();
    let e = compiled.free_edges.len();
    let f = compiled.faces.len();
    bounded_states(
        checked_pow(ng, e).and_then(|a| checked_pow(nh, f).and_then(|b| a.checked_mul(b))),
        limits.oracle_states,
    )?;

    let mut out = Vec::new();
    let mut edge_digits = vec![0usize; e];
    loop {
        let mut face_digits = vec![0usize; f];
        loop {
            let flat = compiled.faces.iter().zip(&face_digits).all(|(cf, &h)| {
                face_product(cm, cf, &edge_digits, g_in, g_out) == cm.boundary_of(h)
            });
            if flat {
                out.push(Colouring {
                    edges: compiled
                        .free_edges
                        .iter()
                        .copied()
                        .zip(edge_digits.iter().copied())
                        .collect(),
                    faces: compiled
                        .faces
                        .iter()
                        .map(|cf| cf.face_id)
                        .zip(face_digits.iter().copied())
                        .collect(),
                });
            }
            if !advance(&mut face_digits, nh) {
                break;
            }
        }
        if !advance(&mut edge_digits, ng) {
            break;
        }
    }
    Ok(out)
}

fn normalization(s: &SurfaceComplex, cm: &CrossedModule) -> Result<ExactScalar> {
    let r = s.validate()?;
    let nh = cm.h().order() as i128;
    let ng = cm.g().order() as i128;
    let v = r.internal_vertices as i64;
    let e = r.internal_edges as i64;
    let coeff = rat_ipow(nh, v - e) * rat_ipow(ng, -v);
    Ok(ExactScalar::with_half_powers(
        coeff,
        -((r.in_circles + r.out_circles) as i64),
        ng as u64,
    ))
}

/// The invariant `|H|^(v-e) / |G|^((m+n)/2+v) · #colourings`, fast mode.
pub fn invariant(
    s: &SurfaceComplex,
    cm: &CrossedModule,
    g_in: &[usize],
    g_out: &[usize],
    limits: &Limits,
) -> Result<ExactScalar> {
    invariant_with_mode(s, cm, g_in, g_out, CountMode::Fast, limits)
}

pub fn invariant_with_mode(
    s: &SurfaceComplex,
    cm: &CrossedModule,
    g_in: &[usize],
    g_out: &[usize],
    mode: CountMode,
    limits: &Limits,
) -> Result<ExactScalar> {
    let count = count_colourings(s, cm, g_in, g_out, mode, limits)?;
    let count = i128::try_from(count).map_err(|_| Error::SizeLimit {
        needed: count,
        cap: i128::MAX as u128,
    })?;
    Ok(normalization(s, cm)?.scaled(count))
}

/// The standard surfaces with closed-form invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    Sphere,
    DiskIn,
    DiskOut,
    Cylinder,
    Torus,
}

impl std::str::FromStr for SurfaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "sphere" => Ok(SurfaceKind::Sphere),
            "disk_in" => Ok(SurfaceKind::DiskIn),
            "disk_out" => Ok(SurfaceKind::DiskOut),
            "cylinder" => Ok(SurfaceKind::Cylinder),
            "torus" => Ok(SurfaceKind::Torus),
            other => Err(Error::UnknownKind(other.to_string())),
        }
    }
}

impl SurfaceKind {
    pub fn surface(self) -> SurfaceComplex {
        match self {
            SurfaceKind::Sphere => SurfaceComplex::sphere(),
            SurfaceKind::DiskIn => SurfaceComplex::disk_in(),
            SurfaceKind::DiskOut => SurfaceComplex::disk_out(),
            SurfaceKind::Cylinder => SurfaceComplex::cylinder(),
            SurfaceKind::Torus => SurfaceComplex::torus(),
        }
    }
}

/// Closed-form invariant values for the standard surfaces:
///
/// * sphere: `|H||K| / |G|`
/// * disk (either way): `|K| · [g ∈ A] / sqrt(|G|)`
/// * cylinder: `C(g1, g2) / (|H||G|)`
/// * torus: `#{(h, g1, g2) : d(h) = [g1, g2]} / (|G||H|)`
///
/// `boundary` carries the boundary colours in bottom-to-top order: nothing
/// for sphere/torus, `[g]` for a disk, `[g_in, g_out]` for the cylinder.
pub fn closed_form(
    kind: SurfaceKind,
    cm: &CrossedModule,
    boundary: &[usize],
) -> Result<ExactScalar> {
    let ng = cm.g().order() as i128;
    let nh = cm.h().order() as i128;
    let nk = cm.kernel().len() as i128;
    let base = ng as u64;
    let want_args = |n: usize| -> Result<()> {
        if boundary.len() != n {
            return Err(Error::Parse(format!(
                "{kind:?} takes {n} boundary colours, got {}",
                boundary.len()
            )));
        }
        if boundary.iter().any(|&v| v >= ng as usize) {
            return Err(Error::Parse("boundary colour out of range".into()));
        }
        Ok(())
    };
    match kind {
        SurfaceKind::Sphere => {
            want_args(0)?;
            Ok(ExactScalar::new(rat(nh * nk, ng), base))
        }
        SurfaceKind::DiskIn | SurfaceKind::DiskOut => {
            want_args(1)?;
            let d = if cm.in_image(boundary[0]) { 1 } else { 0 };
            Ok(ExactScalar::with_half_powers(rat(nk * d, 1), -1, base))
        }
        SurfaceKind::Cylinder => {
            want_args(2)?;
            let c = c_function(cm, boundary[0], boundary[1]) as i128;
            Ok(ExactScalar::new(rat(c, nh * ng), base))
        }
        SurfaceKind::Torus => {
            want_args(0)?;
            let g = cm.g();
            let mut triples: i128 = 0;
            for g1 in g.elements() {
                for g2 in g.elements() {
                    let commutator = g.mul(g.mul(g1, g2), g.mul(g.inv(g1), g.inv(g2)));
                    triples += cm
                        .h()
                        .elements()
                        .filter(|&h| cm.boundary_of(h) == commutator)
                        .count() as i128;
                }
            }
            Ok(ExactScalar::new(rat(triples, ng * nh), base))
        }
    }
}

/// Recomputes the invariant after reversing one non-boundary edge and
/// reports whether it is unchanged. Also checks the underlying bijection:
/// inverting that edge's colour maps the colouring set of the original
/// surface exactly onto the colouring set of the flipped one.
pub fn orientation_flip_check(
    s: &SurfaceComplex,
    cm: &CrossedModule,
    edge_id: usize,
    g_in: &[usize],
    g_out: &[usize],
    limits: &Limits,
) -> Result<bool> {
    let flipped = s.flip_edge(edge_id)?;
    let a = invariant(s, cm, g_in, g_out, limits)?;
    let b = invariant(&flipped, cm, g_in, g_out, limits)?;
    if a != b {
        return Ok(false);
    }
    let cols = enumerate_colourings(s, cm, g_in, g_out, limits)?;
    let mut mapped: Vec<Colouring> = cols
        .into_iter()
        .map(|mut c| {
            let v = c.edges[&edge_id];
            c.edges.insert(edge_id, cm.g().inv(v));
            c
        })
        .collect();
    mapped.sort();
    let mut flipped_cols = enumerate_colourings(&flipped, cm, g_in, g_out, limits)?;
    flipped_cols.sort();
    Ok(mapped == flipped_cols)
}

/// Recomputes the invariant after moving one face's basepoint and reports
/// whether it is unchanged. The change-of-basepoint bijection is verified
/// colouring by colouring: with `g` the word product from the old basepoint
/// to the new one, `h ↦ g⁻¹ > h` must map the colouring set bijectively.
pub fn basepoint_shift_check(
    s: &SurfaceComplex,
    cm: &CrossedModule,
    face_id: usize,
    new_pos: usize,
    g_in: &[usize],
    g_out: &[usize],
    limits: &Limits,
) -> Result<bool> {
    let moved = s.with_basepoint(face_id, new_pos)?;
    let a = invariant(s, cm, g_in, g_out, limits)?;
    let b = invariant(&moved, cm, g_in, g_out, limits)?;
    if a != b {
        return Ok(false);
    }

    let face = s.face(face_id).expect("face exists");
    let len = face.word.len();
    let old_pos = face.basepoint;
    let steps = (new_pos + len - old_pos) % len;
    let g = cm.g();

    let cols = enumerate_colourings(s, cm, g_in, g_out, limits)?;
    let colour_of = |col: &Colouring, r: crate::surface::EdgeRef| -> usize {
        let raw = match s.edge(r.edge).expect("edge exists").kind {
            EdgeKind::In(k) => g_in[k],
            EdgeKind::Out(k) => g_out[k],
            _ => col.edges[&r.edge],
        };
        match r.dir {
            Dir::Fwd => raw,
            Dir::Rev => g.inv(raw),
        }
    };

    let mut mapped: Vec<Colouring> = cols
        .into_iter()
        .map(|mut col| {
            // product of the word steps between the two basepoints,
            // anticlockwise from the old one
            let mut link = 0;
            for i in 0..steps {
                link = g.mul(link, colour_of(&col, face.word[(old_pos + i) % len]));
            }
            let h = col.faces[&face_id];
            col.faces.insert(face_id, cm.act(g.inv(link), h));
            col
        })
        .collect();
    mapped.sort();
    mapped.dedup();

    let mut moved_cols = enumerate_colourings(&moved, cm, g_in, g_out, limits)?;
    moved_cols.sort();
    Ok(mapped == moved_cols)
}

/// Every boundary colour tuple pair for a surface, in lexicographic order.
pub fn boundary_tuples(s: &SurfaceComplex, cm: &CrossedModule) -> Vec<(Vec<usize>, Vec<usize>)> {
    let ng = cm.g().order();
    let tuples = |len: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![0usize; len]];
        let mut digits = vec![0usize; len];
        while advance(&mut digits, ng) {
            out.push(digits.clone());
        }
        out
    };
    let ins = tuples(s.n_in());
    let outs = tuples(s.n_out());
    let mut all = Vec::with_capacity(ins.len() * outs.len());
    for i in &ins {
        for o in &outs {
            all.push((i.clone(), o.clone()));
        }
    }
    all
}
