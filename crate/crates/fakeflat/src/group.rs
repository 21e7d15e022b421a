//! Finite groups as dense multiplication tables, plus homomorphisms,
//! actions by automorphisms and subgroups.
//!
//! Elements are the indices `0..order`, with index 0 always the identity.
//! All algebraic laws are checked eagerly at construction time, so a value of
//! one of these types can be trusted downstream without re-checking. The
//! orders involved are tiny (a few dozen at most), which makes the cubic
//! associativity sweep a non-issue.

use itertools::Itertools;

use crate::error::{Axiom, Error, Result};
use crate::scalar::Rat;

/// Hard cap on constructed group orders. Keeps eager axiom checks and the
/// downstream enumeration spaces desk-sized.
pub const MAX_GROUP_ORDER: usize = 256;

/// A finite group given by its full Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    /// Row-major `order × order` table: `table[a * order + b] = a · b`.
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table and builds the group.
    ///
    /// Index 0 must be the identity; every element must have an inverse; the
    /// table must be associative. The offending witness is reported on
    /// failure.
    pub fn build(name: &str, table: &[Vec<usize>]) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::Parse("a group table cannot be empty".into()));
        }
        if order > MAX_GROUP_ORDER {
            return Err(Error::SizeLimit {
                needed: order as u128,
                cap: MAX_GROUP_ORDER as u128,
            });
        }
        let mut flat = Vec::with_capacity(order * order);
        for row in table {
            if row.len() != order {
                return Err(Error::Parse(format!(
                    "group table is not square: row of length {} in a table of order {}",
                    row.len(),
                    order
                )));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::Parse(format!(
                        "table entry {v} out of range for order {order}"
                    )));
                }
                flat.push(v);
            }
        }
        let g = FiniteGroup {
            name: name.to_string(),
            order,
            table: flat,
            inverse: vec![0; order],
        };
        g.check_identity()?;
        let inverse = g.compute_inverses()?;
        let g = FiniteGroup { inverse, ..g };
        g.check_associativity()?;
        Ok(g)
    }

    /// Re-runs the three group axioms. Construction already guarantees them;
    /// this exists for loaders and verification reports.
    pub fn verify_axioms(&self) -> Result<()> {
        self.check_identity()?;
        let inv = self.compute_inverses()?;
        if inv != self.inverse {
            return Err(Error::AxiomViolation {
                axiom: Axiom::Inverse,
                witness: vec![],
            });
        }
        self.check_associativity()
    }

    fn check_identity(&self) -> Result<()> {
        for x in 0..self.order {
            if self.table[x] != x || self.table[x * self.order] != x {
                return Err(Error::AxiomViolation {
                    axiom: Axiom::Identity,
                    witness: vec![x],
                });
            }
        }
        Ok(())
    }

    fn compute_inverses(&self) -> Result<Vec<usize>> {
        let mut inverse = vec![usize::MAX; self.order];
        for x in 0..self.order {
            let mut found = None;
            for y in 0..self.order {
                if self.table[x * self.order + y] == 0 {
                    if found.is_some() {
                        return Err(Error::AxiomViolation {
                            axiom: Axiom::Inverse,
                            witness: vec![x],
                        });
                    }
                    found = Some(y);
                }
            }
            match found {
                // require the two-sided inverse
                Some(y) if self.table[y * self.order + x] == 0 => inverse[x] = y,
                _ => {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::Inverse,
                        witness: vec![x],
                    })
                }
            }
        }
        Ok(inverse)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        for x in 0..n {
            for y in 0..n {
                let xy = self.table[x * n + y];
                for z in 0..n {
                    if self.table[xy * n + z] != self.table[x * n + self.table[y * n + z]] {
                        return Err(Error::AxiomViolation {
                            axiom: Axiom::Associativity,
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The one-element group.
    pub fn trivial() -> Self {
        Self::build("triv", &[vec![0]]).expect("trivial group")
    }

    /// Cyclic group of order `n`, elements are residues mod `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("cyclic group needs order >= 1".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::SizeLimit {
                needed: n as u128,
                cap: MAX_GROUP_ORDER as u128,
            });
        }
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::build(&format!("Z{n}"), &table)
    }

    /// Symmetric group on `n` letters, `n <= 5`.
    ///
    /// Elements are permutations of `{0,..,n-1}` enumerated in lexicographic
    /// one-line notation, so the identity permutation sits at index 0.
    /// Products compose right-to-left: `(p·q)(x) = p(q(x))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("symmetric group needs n >= 1".into()));
        }
        let order: usize = (1..=n).product();
        if n > 5 || order > MAX_GROUP_ORDER {
            return Err(Error::SizeLimit {
                needed: order as u128,
                cap: 120,
            });
        }
        let perms = symmetric_elements(n);
        let index_of = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
        let mut table = vec![vec![0usize; order]; order];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let r: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                table[i][j] = index_of(&r);
            }
        }
        Self::build(&format!("S{n}"), &table)
    }

    /// Direct product with elements indexed as `a * |G2| + b`.
    pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Self> {
        let (n1, n2) = (g1.order, g2.order);
        let order = n1 * n2;
        if order > MAX_GROUP_ORDER {
            return Err(Error::SizeLimit {
                needed: order as u128,
                cap: MAX_GROUP_ORDER as u128,
            });
        }
        let mut table = vec![vec![0usize; order]; order];
        for a1 in 0..n1 {
            for b1 in 0..n2 {
                for a2 in 0..n1 {
                    for b2 in 0..n2 {
                        table[a1 * n2 + b1][a2 * n2 + b2] = g1.mul(a1, a2) * n2 + g2.mul(b1, b2);
                    }
                }
            }
        }
        Self::build(&format!("{}x{}", g1.name, g2.name), &table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g · x · g^-1`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Table with rows as vectors, for serialization.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.table[a * self.order..(a + 1) * self.order].to_vec())
            .collect()
    }

    /// Structural equality ignoring the display name.
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    /// Conjugacy classes, each sorted, listed by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|g| self.conj(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen[y] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Number of commuting ordered pairs divided by `order²`.
    pub fn commuting_fraction(&self) -> Rat {
        let n = self.order;
        let commuting = (0..n)
            .cartesian_product(0..n)
            .filter(|&(a, b)| self.mul(a, b) == self.mul(b, a))
            .count();
        Rat::new(commuting as i128, (n * n) as i128)
    }
}

/// Permutations of `{0,..,n-1}` in lexicographic one-line order; the element
/// enumeration convention behind [`FiniteGroup::symmetric`].
pub fn symmetric_elements(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

/// A verified group homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    image_of: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: FiniteGroup, target: FiniteGroup, image_of: Vec<usize>) -> Result<Self> {
        if image_of.len() != source.order() {
            return Err(Error::Parse(format!(
                "homomorphism map has {} entries for a source of order {}",
                image_of.len(),
                source.order()
            )));
        }
        if let Some(&v) = image_of.iter().find(|&&v| v >= target.order()) {
            return Err(Error::Parse(format!(
                "homomorphism value {v} out of range for target of order {}",
                target.order()
            )));
        }
        if image_of[0] != 0 {
            return Err(Error::AxiomViolation {
                axiom: Axiom::Homomorphism,
                witness: vec![0],
            });
        }
        for x in source.elements() {
            for y in source.elements() {
                if image_of[source.mul(x, y)] != target.mul(image_of[x], image_of[y]) {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::Homomorphism,
                        witness: vec![x, y],
                    });
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            image_of,
        })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            image_of: g.elements().collect(),
        }
    }

    /// The constant-identity homomorphism.
    pub fn trivial(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            image_of: vec![0; source.order()],
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image_of[x]
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn image_map(&self) -> &[usize] {
        &self.image_of
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &v in &self.image_of {
            hit[v] = true;
        }
        hit.into_iter().all(|b| b)
    }

    /// The kernel, as a verified subgroup of the source.
    pub fn kernel(&self) -> Subgroup {
        let members: Vec<usize> = self
            .source
            .elements()
            .filter(|&x| self.image_of[x] == 0)
            .collect();
        Subgroup::new(self.source.clone(), members).expect("kernel is a subgroup")
    }

    /// The image, as a verified subgroup of the target.
    ///
    /// Also asserts the counting identity `|source| = |image| · |kernel|`.
    pub fn image(&self) -> Subgroup {
        let mut members = self.image_of.clone();
        members.sort_unstable();
        members.dedup();
        let image = Subgroup::new(self.target.clone(), members).expect("image is a subgroup");
        assert_eq!(
            self.source.order(),
            image.len() * self.kernel().len(),
            "|H| = |A|·|K| must hold for any homomorphism"
        );
        image
    }
}

/// A verified left action of `actor` on `space` by group automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    actor: FiniteGroup,
    space: FiniteGroup,
    /// `act[g][h]` = result of `g` acting on `h`.
    act: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(actor: FiniteGroup, space: FiniteGroup, act: Vec<Vec<usize>>) -> Result<Self> {
        let (ng, nh) = (actor.order(), space.order());
        if act.len() != ng || act.iter().any(|row| row.len() != nh) {
            return Err(Error::Parse(format!("action table must be {ng} x {nh}")));
        }
        if let Some(&v) = act.iter().flatten().find(|&&v| v >= nh) {
            return Err(Error::Parse(format!(
                "action value {v} out of range for space of order {nh}"
            )));
        }
        for h in 0..nh {
            if act[0][h] != h {
                return Err(Error::AxiomViolation {
                    axiom: Axiom::ActionIdentity,
                    witness: vec![h],
                });
            }
        }
        for g1 in 0..ng {
            for g2 in 0..ng {
                for h in 0..nh {
                    if act[actor.mul(g1, g2)][h] != act[g1][act[g2][h]] {
                        return Err(Error::AxiomViolation {
                            axiom: Axiom::ActionCompatibility,
                            witness: vec![g1, g2, h],
                        });
                    }
                }
            }
        }
        for g in 0..ng {
            let mut seen = vec![false; nh];
            for h in 0..nh {
                seen[act[g][h]] = true;
            }
            if !seen.into_iter().all(|b| b) {
                return Err(Error::AxiomViolation {
                    axiom: Axiom::ActionAutomorphism,
                    witness: vec![g],
                });
            }
            for h1 in 0..nh {
                for h2 in 0..nh {
                    if act[g][space.mul(h1, h2)] != space.mul(act[g][h1], act[g][h2]) {
                        return Err(Error::AxiomViolation {
                            axiom: Axiom::ActionAutomorphism,
                            witness: vec![g, h1, h2],
                        });
                    }
                }
            }
        }
        Ok(GroupAction { actor, space, act })
    }

    pub fn trivial(actor: &FiniteGroup, space: &FiniteGroup) -> Self {
        let row: Vec<usize> = space.elements().collect();
        GroupAction {
            actor: actor.clone(),
            space: space.clone(),
            act: vec![row; actor.order()],
        }
    }

    /// `g` acts on `x` by `g · x · g^-1`.
    pub fn conjugation(g: &FiniteGroup) -> Self {
        let act = g
            .elements()
            .map(|a| g.elements().map(|x| g.conj(a, x)).collect())
            .collect();
        Self::new(g.clone(), g.clone(), act).expect("conjugation is an action")
    }

    pub fn apply(&self, g: usize, h: usize) -> usize {
        self.act[g][h]
    }

    pub fn actor(&self) -> &FiniteGroup {
        &self.actor
    }

    pub fn space(&self) -> &FiniteGroup {
        &self.space
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.act
    }
}

/// A verified subgroup: contains the identity, closed under product and
/// inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    ambient: FiniteGroup,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn new(ambient: FiniteGroup, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&v) = members.iter().find(|&&v| v >= ambient.order()) {
            return Err(Error::Parse(format!(
                "subgroup member {v} out of range for order {}",
                ambient.order()
            )));
        }
        let mut mask = vec![false; ambient.order()];
        for &m in &members {
            mask[m] = true;
        }
        if !mask.first().copied().unwrap_or(false) {
            return Err(Error::AxiomViolation {
                axiom: Axiom::Closure,
                witness: vec![0],
            });
        }
        for &a in &members {
            if !mask[ambient.inv(a)] {
                return Err(Error::AxiomViolation {
                    axiom: Axiom::Closure,
                    witness: vec![a],
                });
            }
            for &b in &members {
                if !mask[ambient.mul(a, b)] {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::Closure,
                        witness: vec![a, b],
                    });
                }
            }
        }
        Ok(Subgroup {
            ambient,
            members,
            mask,
        })
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a subgroup always contains the identity
    }

    pub fn ambient(&self) -> &FiniteGroup {
        &self.ambient
    }

    pub fn is_normal(&self) -> bool {
        self.members.iter().all(|&k| {
            self.ambient
                .elements()
                .all(|x| self.mask[self.ambient.conj(x, k)])
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn builds_tiny_groups() {
        let t = FiniteGroup::build("triv", &[vec![0]]).unwrap();
        assert_eq!(t.order(), 1);

        let z2 = FiniteGroup::build("Z2", &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.inv(1), 1);

        assert!(FiniteGroup::cyclic(1).unwrap().same_table(&t));
        assert!(FiniteGroup::cyclic(0).is_err());
        assert!(FiniteGroup::cyclic(300).is_err());
    }

    #[test]
    fn rejects_broken_tables() {
        // 1 has no inverse
        let err = FiniteGroup::build("bad", &[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(
            err,
            Error::AxiomViolation {
                axiom: Axiom::Inverse,
                ..
            }
        ));

        // identity violated
        let err = FiniteGroup::build("bad", &[vec![1, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(
            err,
            Error::AxiomViolation {
                axiom: Axiom::Identity,
                ..
            }
        ));

        // a quasigroup that is not associative: 5-element table from the
        // cyclic group with two entries swapped would break latin-square
        // structure; build a known non-associative loop instead
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::build("loop5", &loop5).unwrap_err();
        assert!(matches!(
            err,
            Error::AxiomViolation {
                axiom: Axiom::Associativity,
                ..
            }
        ));
    }

    #[test]
    fn symmetric_group_is_lexicographic() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        let elems = symmetric_elements(3);
        assert_eq!(elems[0], vec![0, 1, 2]);
        assert_eq!(elems[5], vec![2, 1, 0]);
        // composition convention: (p·q)(x) = p(q(x))
        let p = 1; // [0,2,1]
        let q = 2; // [1,0,2]
        let composed: Vec<usize> = (0..3).map(|x| elems[p][elems[q][x]]).collect();
        assert_eq!(elems[s3.mul(p, q)], composed);
        assert!(FiniteGroup::symmetric(6).is_err());
    }

    #[test]
    fn conjugacy_classes_of_catalogue_groups() {
        assert_eq!(FiniteGroup::trivial().conjugacy_classes().len(), 1);
        assert_eq!(FiniteGroup::cyclic(4).unwrap().conjugacy_classes().len(), 4);

        let s3 = FiniteGroup::symmetric(3).unwrap();
        let classes = s3.conjugacy_classes();
        let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn commuting_fraction_values() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.commuting_fraction(), rat(1, 1));

        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.commuting_fraction(), rat(1, 2));
        // class-count identity: fraction times order = number of classes
        assert_eq!(
            s3.commuting_fraction() * rat(6, 1),
            rat(s3.conjugacy_classes().len() as i128, 1)
        );
    }

    #[test]
    fn klein_four_is_all_self_inverse() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let v4 = FiniteGroup::direct_product(&z2, &z2).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.elements().all(|x| v4.inv(x) == x));
    }

    #[test]
    fn kernel_and_image() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let id = GroupHom::identity(&s3);
        assert_eq!(id.kernel().members(), &[0]);
        assert_eq!(id.image().len(), 6);

        let z4 = FiniteGroup::cyclic(4).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let mod2 = GroupHom::new(z4, z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(mod2.kernel().members(), &[0, 2]);
        assert_eq!(mod2.image().len(), 2);
        assert!(mod2.is_surjective());

        let z3 = FiniteGroup::cyclic(3).unwrap();
        let triv = GroupHom::trivial(&z3, &z2);
        assert_eq!(triv.kernel().len(), 3);
        assert_eq!(triv.image().members(), &[0]);
    }

    #[test]
    fn kernels_are_normal() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        // sign homomorphism S3 -> Z2 via parity of the permutation
        let elems = symmetric_elements(3);
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let sign: Vec<usize> = elems
            .iter()
            .map(|p| {
                let mut inversions = 0;
                for i in 0..3 {
                    for j in i + 1..3 {
                        if p[i] > p[j] {
                            inversions += 1;
                        }
                    }
                }
                inversions % 2
            })
            .collect();
        let hom = GroupHom::new(s3, z2, sign).unwrap();
        let k = hom.kernel();
        assert_eq!(k.len(), 3);
        assert!(k.is_normal());
    }

    #[test]
    fn actions_are_checked() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z3 = FiniteGroup::cyclic(3).unwrap();
        // inversion action of Z2 on Z3
        let act = vec![vec![0, 1, 2], vec![0, 2, 1]];
        assert!(GroupAction::new(z2.clone(), z3.clone(), act).is_ok());

        // "swap with identity" is not an automorphism
        let bad = vec![vec![0, 1, 2], vec![1, 0, 2]];
        let err = GroupAction::new(z2, z3, bad).unwrap_err();
        assert!(matches!(
            err,
            Error::AxiomViolation {
                axiom: Axiom::ActionAutomorphism,
                ..
            }
        ));
    }

    fn catalogue_groups() -> Vec<FiniteGroup> {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        vec![
            FiniteGroup::trivial(),
            z2.clone(),
            FiniteGroup::cyclic(3).unwrap(),
            FiniteGroup::cyclic(4).unwrap(),
            FiniteGroup::cyclic(24).unwrap(),
            s3.clone(),
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::direct_product(&z2, &z2).unwrap(),
            FiniteGroup::direct_product(&z2, &s3).unwrap(),
        ]
    }

    #[test]
    fn axioms_hold_for_all_catalogue_groups_up_to_24() {
        for g in &catalogue_groups() {
            assert!(g.order() <= 24);
            g.verify_axioms().unwrap();
        }
    }

    #[test]
    fn class_count_is_commuting_fraction_times_order_everywhere() {
        for g in &catalogue_groups() {
            assert_eq!(
                g.commuting_fraction() * rat(g.order() as i128, 1),
                rat(g.conjugacy_classes().len() as i128, 1),
                "{}",
                g.name()
            );
        }
    }
}
