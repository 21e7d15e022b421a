//! Finite crossed modules (equivalently, finite 2-groups): the colouring
//! theory behind every invariant in this crate.
//!
//! A crossed module bundles two finite groups `G` and `H`, a homomorphism
//! `d: H -> G` and a left action `>` of `G` on `H` by automorphisms, subject
//! to two axioms:
//!
//! 1. equivariance: `d(g > h) = g d(h) g^-1`
//! 2. Peiffer identity: `d(h1) > h2 = h1 h2 h1^-1`
//!
//! Both are checked exhaustively at construction. The kernel `K` and image
//! `A` of the boundary map are cached on the value because every counting
//! formula downstream is phrased in terms of `|K|` and membership in `A`.

use crate::error::{Axiom, Error, Result};
use crate::group::{FiniteGroup, GroupAction, GroupHom, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    name: String,
    g: FiniteGroup,
    h: FiniteGroup,
    boundary: GroupHom,
    action: GroupAction,
    kernel: Subgroup,
    image: Subgroup,
}

impl CrossedModule {
    /// Validates the two crossed-module axioms over all pairs and caches the
    /// kernel and image of the boundary map.
    pub fn build(
        name: &str,
        g: FiniteGroup,
        h: FiniteGroup,
        boundary: GroupHom,
        action: GroupAction,
    ) -> Result<Self> {
        if !boundary.source().same_table(&h) || !boundary.target().same_table(&g) {
            return Err(Error::ComponentMismatch(
                "boundary must be a homomorphism from H to G".into(),
            ));
        }
        if !action.actor().same_table(&g) || !action.space().same_table(&h) {
            return Err(Error::ComponentMismatch(
                "action must let G act on H".into(),
            ));
        }

        // First axiom: d(g > h) = g d(h) g^-1 on all |G| x |H| pairs.
        for a in g.elements() {
            for x in h.elements() {
                if boundary.apply(action.apply(a, x)) != g.conj(a, boundary.apply(x)) {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::Equivariance,
                        witness: vec![a, x],
                    });
                }
            }
        }
        // Second axiom: d(h1) > h2 = h1 h2 h1^-1 on all |H| x |H| pairs.
        for h1 in h.elements() {
            for h2 in h.elements() {
                if action.apply(boundary.apply(h1), h2) != h.conj(h1, h2) {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::Peiffer,
                        witness: vec![h1, h2],
                    });
                }
            }
        }

        let kernel = boundary.kernel();
        let image = boundary.image();

        // Implied by the Peiffer identity; a failure here means the checks
        // above are broken, not the input.
        for &k in kernel.members() {
            for f in h.elements() {
                if h.mul(k, f) != h.mul(f, k) {
                    return Err(Error::KernelNotCentral { h: k, f });
                }
            }
        }

        Ok(CrossedModule {
            name: name.to_string(),
            g,
            h,
            boundary,
            action,
            kernel,
            image,
        })
    }

    /// `G = H`, boundary the identity, action by conjugation.
    pub fn identity_module(g: &FiniteGroup) -> Self {
        Self::build(
            &format!("id({})", g.name()),
            g.clone(),
            g.clone(),
            GroupHom::identity(g),
            GroupAction::conjugation(g),
        )
        .expect("conjugation module satisfies both axioms")
    }

    /// Trivial `H`; colourings degenerate to flat `G`-colourings of the
    /// 1-cells, which recovers the plain finite-group invariants.
    pub fn trivial_h(g: &FiniteGroup) -> Self {
        let h = FiniteGroup::trivial();
        Self::build(
            &format!("flat({})", g.name()),
            g.clone(),
            h.clone(),
            GroupHom::trivial(&h, g),
            GroupAction::trivial(g, &h),
        )
        .expect("trivial-H module satisfies both axioms")
    }

    /// Builds the crossed module of a central extension
    /// `1 -> K -> H -> G -> 1`: the action is conjugation through any lift,
    /// `g > h = f h f^-1` with `d(f) = g`.
    ///
    /// Well-definedness is checked concretely: every lift of every `g` must
    /// induce the same automorphism, which pins down exactly the centrality
    /// of the kernel.
    pub fn from_central_extension(name: &str, h: FiniteGroup, boundary: GroupHom) -> Result<Self> {
        if !boundary.source().same_table(&h) {
            return Err(Error::ComponentMismatch(
                "boundary must have source H".into(),
            ));
        }
        let g = boundary.target().clone();
        if !boundary.is_surjective() {
            let mut hit = vec![false; g.order()];
            for x in h.elements() {
                hit[boundary.apply(x)] = true;
            }
            let missing = hit.iter().position(|&b| !b).unwrap_or(0);
            return Err(Error::NotSurjective { missing });
        }
        // Genuine precondition: the kernel must be central in H.
        for x in h.elements() {
            if boundary.apply(x) != 0 {
                continue;
            }
            for f in h.elements() {
                if h.mul(x, f) != h.mul(f, x) {
                    return Err(Error::KernelNotCentral { h: x, f });
                }
            }
        }
        // One lift per G-element, then check every other lift agrees.
        let mut lift = vec![usize::MAX; g.order()];
        for x in h.elements() {
            let gx = boundary.apply(x);
            if lift[gx] == usize::MAX {
                lift[gx] = x;
            }
        }
        let mut act = vec![vec![0usize; h.order()]; g.order()];
        for a in g.elements() {
            for x in h.elements() {
                act[a][x] = h.conj(lift[a], x);
            }
        }
        for f in h.elements() {
            let a = boundary.apply(f);
            for x in h.elements() {
                if h.conj(f, x) != act[a][x] {
                    return Err(Error::KernelNotCentral { h: f, f: x });
                }
            }
        }
        let action = GroupAction::new(g.clone(), h.clone(), act)?;
        Self::build(name, g, h, boundary, action)
    }

    /// Re-runs the full axiom suite on an already-built value.
    pub fn verify(&self) -> Result<()> {
        self.g.verify_axioms()?;
        self.h.verify_axioms()?;
        Self::build(
            &self.name,
            self.g.clone(),
            self.h.clone(),
            self.boundary.clone(),
            self.action.clone(),
        )
        .map(|_| ())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn g(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn h(&self) -> &FiniteGroup {
        &self.h
    }

    pub fn boundary(&self) -> &GroupHom {
        &self.boundary
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    /// Kernel `K` of the boundary map, a central subgroup of `H`.
    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// Image `A` of the boundary map, a normal subgroup of `G`.
    pub fn image(&self) -> &Subgroup {
        &self.image
    }

    pub fn boundary_of(&self, h: usize) -> usize {
        self.boundary.apply(h)
    }

    pub fn act(&self, g: usize, h: usize) -> usize {
        self.action.apply(g, h)
    }

    pub fn in_image(&self, g: usize) -> bool {
        self.image.contains(g)
    }
}
