//! Conjugacy classes, the commutator subgroup and the structure constants
//! of the center of the group algebra.

use super::FiniteGroup;

/// Conjugacy classes in order of first occurrence, so `K_1 = {e}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyPartition {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl ConjugacyPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class sizes `h_j`.
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.len()).collect()
    }

    pub fn representative(&self, j: usize) -> usize {
        self.classes[j][0]
    }
}

pub fn conjugacy_classes(g: &FiniteGroup) -> ConjugacyPartition {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let mut class: Vec<usize> = (0..n).map(|y| g.conjugate(y, x)).collect();
        class.sort_unstable();
        class.dedup();
        for &y in &class {
            class_of[y] = classes.len();
        }
        classes.push(class);
    }
    ConjugacyPartition { classes, class_of }
}

/// The subgroup generated by all commutators `x y x⁻¹ y⁻¹` (sorted element
/// indices) and its index `[G : G′]`.
pub fn commutator_subgroup(g: &FiniteGroup) -> (Vec<usize>, usize) {
    let n = g.order();
    let mut member = vec![false; n];
    member[0] = true;
    let mut gens = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let c = g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y)));
            if !member[c] {
                member[c] = true;
                gens.push(c);
            }
        }
    }
    // Closure under multiplication; in a finite group this is the generated subgroup.
    let mut elements: Vec<usize> = (0..n).filter(|&i| member[i]).collect();
    let mut k = 0;
    while k < elements.len() {
        let a = elements[k];
        for &s in &gens {
            let p = g.mul(a, s);
            if !member[p] {
                member[p] = true;
                elements.push(p);
            }
        }
        k += 1;
    }
    elements.sort_unstable();
    let index = n / elements.len();
    (elements, index)
}

/// `C_i C_j = Σ_m c[i][j][m] C_m` for class sums `C_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterStructure {
    pub constants: Vec<Vec<Vec<u32>>>,
}

impl CenterStructure {
    pub fn get(&self, i: usize, j: usize, m: usize) -> u32 {
        self.constants[i][j][m]
    }

    pub fn len(&self) -> usize {
        self.constants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constants.is_empty()
    }
}

/// Structure constants by direct counting: `c_{ij}^m` is the number of pairs
/// `(x, y) ∈ K_i × K_j` with `x y = z` for a fixed `z ∈ K_m`.
///
/// # Panics
///
/// If the count depends on the choice of `z` within `K_m`, which would mean
/// `p` is not the conjugacy partition of `g`.
pub fn center_structure(g: &FiniteGroup, p: &ConjugacyPartition) -> CenterStructure {
    let s = p.len();
    let n = g.order();
    let mut constants = vec![vec![vec![0u32; s]; s]; s];
    let mut hits = vec![0u32; n];
    for i in 0..s {
        for j in 0..s {
            hits.iter_mut().for_each(|h| *h = 0);
            for &x in &p.classes[i] {
                for &y in &p.classes[j] {
                    hits[g.mul(x, y)] += 1;
                }
            }
            for (m, class) in p.classes.iter().enumerate() {
                let c = hits[class[0]];
                assert!(
                    class.iter().all(|&z| hits[z] == c),
                    "structure constant c[{i}][{j}][{m}] depends on the class representative"
                );
                constants[i][j][m] = c;
            }
        }
    }
    CenterStructure { constants }
}
