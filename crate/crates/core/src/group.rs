//! Finite matrix groups over a prime field: closure from generators,
//! subgroup lattice, conjugacy classes of subgroups, coset transversals and
//! p-regular classes.
//!
//! Everything is elementary set bookkeeping; element identity is exact entry
//! comparison.  The groups in scope stay below a few hundred elements for
//! lattice work and around ten thousand for class enumeration, so the naive
//! closure-BFS approach is the right tool.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::FpMatrix;

pub const DEFAULT_CLASS_BOUND: usize = 10_000;
pub const DEFAULT_LATTICE_BOUND: usize = 200;

/// A finite matrix group, closed under products, with index 0 the identity.
pub struct GroupData {
    field: Arc<Field>,
    d: usize,
    elements: Vec<FpMatrix>,
    index: HashMap<Vec<u8>, usize>,
    generators: Vec<usize>,
    /// `elements[i] = elements[parent] * gen_mats[gpos]`; `None` for the identity.
    parent: Vec<Option<(usize, usize)>>,
}

/// A subgroup given by its sorted member indices and a generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub members: Vec<usize>,
    pub gens: Vec<usize>,
    pub label: Option<String>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }
}

/// One conjugacy class of subgroups in a fixed listing order.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub label: String,
    pub rep: Subgroup,
    pub class_size: usize,
}

impl GroupData {
    /// BFS closure of a generating set.  An empty set yields the trivial
    /// group, for which the dimension must be supplied.
    pub fn close(field: Arc<Field>, d: usize, gens: &[FpMatrix], bound: usize) -> Result<GroupData> {
        for g in gens {
            if g.rows() != d || g.cols() != d {
                return Err(Error::ShapeMismatch(g.rows(), g.cols(), d, d));
            }
            if g.field() != &field {
                return Err(Error::FieldMismatch);
            }
            if !g.is_invertible() {
                return Err(Error::Singular);
            }
        }
        let mut group = GroupData {
            field: field.clone(),
            d,
            elements: Vec::new(),
            index: HashMap::new(),
            generators: Vec::new(),
            parent: Vec::new(),
        };
        let id = FpMatrix::identity(field, d);
        group.index.insert(id.data().to_vec(), 0);
        group.elements.push(id);
        group.parent.push(None);

        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let cur = queue[head];
            head += 1;
            for (gpos, g) in gens.iter().enumerate() {
                let prod = group.elements[cur].mul(g)?;
                let key = prod.data().to_vec();
                if !group.index.contains_key(&key) {
                    if group.elements.len() >= bound {
                        return Err(Error::OrderBound(bound));
                    }
                    let idx = group.elements.len();
                    group.index.insert(key, idx);
                    group.elements.push(prod);
                    group.parent.push(Some((cur, gpos)));
                    queue.push(idx);
                }
            }
        }
        group.generators = gens
            .iter()
            .map(|g| group.index[g.data()])
            .collect();
        Ok(group)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &FpMatrix {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[FpMatrix] {
        &self.elements
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn find(&self, m: &FpMatrix) -> Option<usize> {
        self.index.get(m.data()).copied()
    }

    pub fn mult(&self, i: usize, j: usize) -> usize {
        let prod = self.elements[i].mul(&self.elements[j]).expect("closed group");
        self.index[prod.data()]
    }

    pub fn inverse(&self, i: usize) -> usize {
        let inv = self.elements[i].inverse().expect("group elements are invertible");
        self.index[inv.data()]
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut x = i;
        let mut ord = 1;
        while x != 0 {
            x = self.mult(x, i);
            ord += 1;
        }
        ord
    }

    pub fn is_p_group(&self, p: u32) -> bool {
        let mut n = self.order();
        while n % p as usize == 0 {
            n /= p as usize;
        }
        n == 1
    }

    /// Conjugacy classes of elements, each sorted, ordered by
    /// (representative order, smallest member).
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut classes = Vec::new();
        // conjugate by every element: cheap at the orders in scope and
        // independent of whether the generators close quickly
        let inverses: Vec<usize> = (0..self.order()).map(|i| self.inverse(i)).collect();
        for start in 0..self.order() {
            if seen[start] {
                continue;
            }
            let mut class = HashSet::new();
            for g in 0..self.order() {
                let c = self.mult(self.mult(g, start), inverses[g]);
                class.insert(c);
            }
            let mut class: Vec<usize> = class.into_iter().collect();
            class.sort_unstable();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes.sort_by_key(|c| (self.element_order(c[0]), c[0]));
        classes
    }

    /// One representative per conjugacy class of elements whose order is
    /// coprime to `p`.
    pub fn p_regular_classes(&self, p: u32) -> Vec<usize> {
        self.conjugacy_classes()
            .into_iter()
            .map(|c| c[0])
            .filter(|&i| self.element_order(i) % p as usize != 0)
            .collect()
    }

    /// Closure of a set of member indices inside this group.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut members = HashSet::new();
        members.insert(0usize);
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let cur = queue[head];
            head += 1;
            for &g in gens {
                let nxt = self.mult(cur, g);
                if members.insert(nxt) {
                    queue.push(nxt);
                }
            }
        }
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members
    }

    /// Locate the member indices of a subgroup given by explicit matrices.
    pub fn subgroup_from_matrices(&self, mats: &[FpMatrix]) -> Result<Subgroup> {
        let mut gens = Vec::with_capacity(mats.len());
        for m in mats {
            let idx = self.find(m).ok_or(Error::NotASubgroup)?;
            gens.push(idx);
        }
        let members = self.subgroup_closure(&gens);
        Ok(Subgroup { members, gens, label: None })
    }

    /// Every subgroup exactly once, found by repeatedly extending known
    /// subgroups by one outside element and closing.
    pub fn subgroup_lattice(&self, bound: usize) -> Result<Vec<Subgroup>> {
        if self.order() > bound {
            return Err(Error::OrderBound(bound));
        }
        let trivial = Subgroup { members: vec![0], gens: vec![], label: None };
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(trivial.members.clone());
        let mut out = vec![trivial];
        let mut head = 0;
        while head < out.len() {
            let (members, gens) = (out[head].members.clone(), out[head].gens.clone());
            head += 1;
            let member_set: HashSet<usize> = members.iter().copied().collect();
            for g in 1..self.order() {
                if member_set.contains(&g) {
                    continue;
                }
                let mut new_gens = gens.clone();
                new_gens.push(g);
                let new_members = self.subgroup_closure(&new_gens);
                if seen.insert(new_members.clone()) {
                    out.push(Subgroup { members: new_members, gens: new_gens, label: None });
                }
            }
        }
        out.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        Ok(out)
    }

    pub fn conjugate_members(&self, members: &[usize], g: usize) -> Vec<usize> {
        let ginv = self.inverse(g);
        let mut out: Vec<usize> = members
            .iter()
            .map(|&m| self.mult(self.mult(g, m), ginv))
            .collect();
        out.sort_unstable();
        out
    }

    /// Group the lattice into conjugacy classes.  Classes come back sorted by
    /// (subgroup order, lexicographically smallest member set) and each class
    /// is represented by its smallest member set.
    pub fn subgroup_conjugacy_classes(&self, lattice: &[Subgroup]) -> Vec<Vec<usize>> {
        let pos: HashMap<&[usize], usize> =
            lattice.iter().enumerate().map(|(i, s)| (s.members.as_slice(), i)).collect();
        let mut assigned = vec![false; lattice.len()];
        let mut classes = Vec::new();
        for start in 0..lattice.len() {
            if assigned[start] {
                continue;
            }
            let mut class = vec![start];
            assigned[start] = true;
            let mut queue = vec![start];
            while let Some(cur) = queue.pop() {
                for g in 1..self.order() {
                    let conj = self.conjugate_members(&lattice[cur].members, g);
                    let idx = pos[conj.as_slice()];
                    if !assigned[idx] {
                        assigned[idx] = true;
                        class.push(idx);
                        queue.push(idx);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes.sort_by(|a, b| {
            let ka = (lattice[a[0]].order(), &lattice[a[0]].members);
            let kb = (lattice[b[0]].order(), &lattice[b[0]].members);
            ka.cmp(&kb)
        });
        classes
    }

    /// Conjugacy classes of subgroups in the generic listing order.
    pub fn ordered_subgroup_classes(&self, bound: usize) -> Result<Vec<SubgroupClass>> {
        let lattice = self.subgroup_lattice(bound)?;
        let classes = self.subgroup_conjugacy_classes(&lattice);
        Ok(classes
            .iter()
            .enumerate()
            .map(|(i, class)| SubgroupClass {
                label: format!("H{}", i + 1),
                rep: lattice[class[0]].clone(),
                class_size: class.len(),
            })
            .collect())
    }

    /// One representative per left coset `gH`, scanning in element order;
    /// the identity coset comes first.
    pub fn transversal(&self, members: &[usize]) -> Result<Vec<usize>> {
        let member_set: HashSet<usize> = members.iter().copied().collect();
        if !member_set.contains(&0) || self.order() % members.len() != 0 {
            return Err(Error::NotASubgroup);
        }
        let mut covered = vec![false; self.order()];
        let mut reps = Vec::with_capacity(self.order() / members.len());
        for g in 0..self.order() {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for &h in members {
                covered[self.mult(g, h)] = true;
            }
        }
        if reps.len() * members.len() != self.order() {
            return Err(Error::NotASubgroup);
        }
        Ok(reps)
    }

    /// Matrices of every group element in a module, given matrices for the
    /// generators in the order they were passed to `close`.
    pub fn module_matrices(&self, gen_mats: &[FpMatrix]) -> Result<Vec<FpMatrix>> {
        if gen_mats.len() != self.generators.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} generator matrices, got {}",
                self.generators.len(),
                gen_mats.len()
            )));
        }
        let dim = gen_mats.first().map_or(0, |m| m.rows());
        let mfield = gen_mats
            .first()
            .map(|m| m.field().clone())
            .unwrap_or_else(|| self.field.clone());
        let mut rho: Vec<FpMatrix> = Vec::with_capacity(self.order());
        rho.push(FpMatrix::identity(mfield, dim));
        for i in 1..self.order() {
            let (par, gpos) = self.parent[i].expect("only the identity lacks a parent");
            debug_assert!(par < i);
            let m = rho[par].mul(&gen_mats[gpos])?;
            rho.push(m);
        }
        Ok(rho)
    }

    /// A short label for an element, used in reports.
    pub fn element_label(&self, i: usize) -> String {
        if i == 0 {
            "1".to_string()
        } else {
            format!("g{}", i)
        }
    }
}
