//! Built-in groups with frozen element enumerations.

use super::{FiniteGroup, Origin};
use crate::error::GroupError;

fn from_products(
    elements: &[Vec<usize>],
    labels: Vec<String>,
    origin: Origin,
    op: impl Fn(&[usize], &[usize]) -> Vec<usize>,
) -> Result<FiniteGroup, GroupError> {
    let index = |x: &[usize]| elements.iter().position(|e| e.as_slice() == x).expect("closed operation");
    let table = elements.iter().map(|a| elements.iter().map(|b| index(&op(a, b))).collect()).collect();
    FiniteGroup::from_cayley(table, Some(labels), origin)
}

/// `C_n = {e, z, z², ..., z^{n-1}}`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > super::MAX_ORDER {
        return Err(GroupError::UnsupportedOrder(n));
    }
    let labels = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "z".to_string(),
            _ => format!("z^{k}"),
        })
        .collect();
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    FiniteGroup::from_cayley(table, Some(labels), Origin::Cyclic(n))
}

/// Direct product with lexicographic enumeration, last factor fastest.
pub fn product(factors: &[FiniteGroup]) -> Result<FiniteGroup, GroupError> {
    if factors.is_empty() {
        return Err(GroupError::InvalidSpec("product needs at least one factor".into()));
    }
    let order: usize = factors.iter().map(|f| f.order()).product();
    if order > super::MAX_ORDER {
        return Err(GroupError::UnsupportedOrder(order));
    }
    let digits = |mut k: usize| {
        let mut d = vec![0; factors.len()];
        for (slot, f) in d.iter_mut().zip(factors).rev() {
            *slot = k % f.order();
            k /= f.order();
        }
        d
    };
    let index = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (&x, f)| acc * f.order() + x);
    let all: Vec<Vec<usize>> = (0..order).map(digits).collect();
    let labels = all
        .iter()
        .map(|d| {
            let parts: Vec<&str> = d.iter().zip(factors).map(|(&x, f)| f.label(x)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let table = all
        .iter()
        .map(|a| {
            all.iter()
                .map(|b| {
                    let c: Vec<usize> = factors.iter().enumerate().map(|(k, f)| f.mul(a[k], b[k])).collect();
                    index(&c)
                })
                .collect()
        })
        .collect();
    let origin = Origin::Product(factors.iter().map(|f| f.origin().clone()).collect());
    FiniteGroup::from_cayley(table, Some(labels), origin)
}

/// Composition of permutations of `{0, 1, ...}` acting on the left:
/// `(p q)(x) = p(q(x))`.
fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

/// `S_3 = {e, (12), (13), (23), (123), (132)}`.
pub fn s3() -> Result<FiniteGroup, GroupError> {
    let perms = vec![
        vec![0, 1, 2],
        vec![1, 0, 2],
        vec![2, 1, 0],
        vec![0, 2, 1],
        vec![1, 2, 0],
        vec![2, 0, 1],
    ];
    let labels = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"].map(String::from).to_vec();
    from_products(&perms, labels, Origin::S3, compose)
}

/// `V_4 = {e, (12)(34), (13)(24), (14)(23)}`, enumerated as `C_2 × C_2`.
pub fn klein4() -> Result<FiniteGroup, GroupError> {
    let c2 = cyclic(2)?;
    let p = product(&[c2.clone(), c2])?;
    let labels = ["e", "(12)(34)", "(13)(24)", "(14)(23)"].map(String::from).to_vec();
    FiniteGroup::from_cayley(p.cayley().to_vec(), Some(labels), Origin::Klein4)
}

/// `Q_8 = {1, -1, i, -i, j, -j, k, -k}`.
pub fn q8() -> Result<FiniteGroup, GroupError> {
    // units 0..4 = 1, i, j, k; unit products as (sign, unit)
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    // element 2u + s is (-1)^s · unit u
    let elements: Vec<Vec<usize>> = (0..8).map(|k| vec![k / 2, k % 2]).collect();
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
    from_products(&elements, labels, Origin::Q8, |a, b| {
        let (neg, u) = UNIT[a[0]][b[0]];
        vec![u, (a[1] + b[1] + neg as usize) % 2]
    })
}

/// Permutations of `{0, 1, 2, 3}` in the `A_4` enumeration: identity, the
/// three double transpositions, then the eight 3-cycles in the order (123), (132), (124), (142), (134), (143), (234), (243).
pub(crate) fn a4_permutations() -> Vec<Vec<usize>> {
    let cycle = |a: usize, b: usize, c: usize| {
        let mut p = vec![0, 1, 2, 3];
        p[a] = b;
        p[b] = c;
        p[c] = a;
        p
    };
    vec![
        vec![0, 1, 2, 3],
        vec![1, 0, 3, 2],
        vec![2, 3, 0, 1],
        vec![3, 2, 1, 0],
        cycle(0, 1, 2),
        cycle(0, 2, 1),
        cycle(0, 1, 3),
        cycle(0, 3, 1),
        cycle(0, 2, 3),
        cycle(0, 3, 2),
        cycle(1, 2, 3),
        cycle(1, 3, 2),
    ]
}

/// `A_4` in the enumeration of [`a4_permutations`].
pub fn a4() -> Result<FiniteGroup, GroupError> {
    let perms = a4_permutations();
    let labels = [
        "e", "(12)(34)", "(13)(24)", "(14)(23)", "(123)", "(132)", "(124)", "(142)", "(134)", "(143)", "(234)",
        "(243)",
    ]
    .map(String::from)
    .to_vec();
    from_products(&perms, labels, Origin::A4, compose)
}
