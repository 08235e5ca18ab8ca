//! Constructors for the posets studied: minuscule posets, root posets of types A and B,
//! and the counterexamples (Φ⁺(D₄), trapezoids, chains of V's).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poset::{is_isomorphic, ElementSet, Family, OrderIdeal, Poset};

/// Grid poset on a coordinate set: covers join horizontally or vertically adjacent boxes.
/// Elements are indexed in lexicographic coordinate order.
pub fn grid_poset(mut coords: Vec<(i32, i32)>) -> Poset {
    coords.sort();
    coords.dedup();
    let index: HashMap<(i32, i32), usize> =
        coords.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut covers = vec![];
    for (k, &(i, j)) in coords.iter().enumerate() {
        for nb in [(i + 1, j), (i, j + 1)] {
            if let Some(&m) = index.get(&nb) {
                covers.push((k, m));
            }
        }
    }
    let base = coords.iter().map(|&(i, j)| i + j).min().unwrap_or(0);
    let rank = coords.iter().map(|&(i, j)| (i + j - base) as u32).collect();
    Poset::new(coords.len(), covers)
        .and_then(|p| p.with_coords(coords))
        .and_then(|p| p.with_rank(rank))
        .expect("grid posets are well formed")
}

fn positive(v: usize, what: &str) -> Result<()> {
    if v == 0 {
        Err(Error::InvalidArgument(format!("{what} must be positive")))
    } else {
        Ok(())
    }
}

fn check_size(cells: usize) -> Result<()> {
    if cells > crate::poset::MAX_ELEMENTS {
        Err(Error::InvalidArgument(format!(
            "{cells} elements exceed the supported maximum"
        )))
    } else {
        Ok(())
    }
}

pub fn rectangle(a: usize, b: usize) -> Result<Poset> {
    positive(a, "a")?;
    positive(b, "b")?;
    check_size(a * b)?;
    let coords = (1..=a as i32)
        .flat_map(|i| (1..=b as i32).map(move |j| (i, j)))
        .collect();
    let p = grid_poset(coords);
    let colors = p
        .coords()
        .unwrap()
        .iter()
        .map(|&(i, j)| (j - i + a as i32 - 1) as u32)
        .collect();
    Ok(p.with_colors(colors)?
        .with_name(format!("rect:{a},{b}"))
        .with_family(Family::Rectangle { a, b }))
}

pub fn shifted_staircase(n: usize) -> Result<Poset> {
    positive(n, "n")?;
    check_size(n * (n + 1) / 2)?;
    let n = n as i32;
    let coords = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
    let p = grid_poset(coords);
    // type D coloring: off-diagonal file k gets k+1, the diagonal splits by parity
    let colors = p
        .coords()
        .unwrap()
        .iter()
        .map(|&(i, j)| {
            if i == j {
                (i as u32 + 1) % 2
            } else {
                (j - i + 1) as u32
            }
        })
        .collect();
    Ok(p.with_colors(colors)?
        .with_name(format!("sstair:{n}"))
        .with_family(Family::ShiftedStaircase { n: n as usize }))
}

pub fn root_poset_a(n: usize) -> Result<Poset> {
    positive(n, "n")?;
    check_size(n * (n + 1) / 2)?;
    let m = n as i32;
    let coords = (1..=m)
        .flat_map(|i| (1..=m).map(move |j| (i, j)))
        .filter(|&(i, j)| i + j >= m + 1)
        .collect();
    Ok(grid_poset(coords)
        .with_name(format!("rootA:{n}"))
        .with_family(Family::RootA { n }))
}

pub fn root_poset_b(n: usize) -> Result<Poset> {
    positive(n, "n")?;
    check_size(n * n)?;
    let m = n as i32;
    let coords = (1..2 * m)
        .flat_map(|i| (i..2 * m).map(move |j| (i, j)))
        .filter(|&(i, j)| i + j >= 2 * m)
        .collect();
    Ok(grid_poset(coords)
        .with_name(format!("rootB:{n}"))
        .with_family(Family::RootB { n }))
}

pub fn trapezoid(a: usize, b: usize) -> Result<Poset> {
    positive(a, "a")?;
    if a > b {
        return Err(Error::InvalidArgument("trapezoid needs a <= b".into()));
    }
    check_size(a * b)?;
    let (a, b) = (a as i32, b as i32);
    let coords = (1..a + b)
        .flat_map(|i| (b..a + b).map(move |j| (i, j)))
        .filter(|&(i, j)| i + j >= a + b && i <= j)
        .collect();
    Ok(grid_poset(coords)
        .with_name(format!("trap:{a},{b}"))
        .with_family(Family::Trapezoid {
            a: a as usize,
            b: b as usize,
        }))
}

/// Tail x₁ < … < x_{n-1}, two incomparable middle elements, then a second tail of n-1.
pub fn double_tailed_diamond(n: usize) -> Result<Poset> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "double-tailed diamond needs n >= 2".into(),
        ));
    }
    let t = n - 1;
    let (y1, y2) = (t, t + 1);
    let z = |k: usize| t + 2 + k;
    let mut covers: Vec<(usize, usize)> = (1..t).map(|k| (k - 1, k)).collect();
    covers.extend([(t - 1, y1), (t - 1, y2), (y1, z(0)), (y2, z(0))]);
    covers.extend((1..t).map(|k| (z(k - 1), z(k))));
    let mut rank: Vec<u32> = (0..t as u32).collect();
    rank.extend([t as u32, t as u32]);
    rank.extend((0..t as u32).map(|k| t as u32 + 1 + k));
    Ok(Poset::new(2 * n, covers)?
        .with_rank(rank)?
        .with_name(format!("dtd:{n}"))
        .with_family(Family::DoubleTailedDiamond { n }))
}

/// V × [n]; element (v, k) has index 3k + v, with v = 0 the bottom of the V.
pub fn chain_of_vs(n: usize) -> Result<Poset> {
    positive(n, "n")?;
    check_size(3 * n)?;
    let idx = |v: usize, k: usize| 3 * k + v;
    let mut covers = vec![];
    for k in 0..n {
        covers.push((idx(0, k), idx(1, k)));
        covers.push((idx(0, k), idx(2, k)));
        if k + 1 < n {
            for v in 0..3 {
                covers.push((idx(v, k), idx(v, k + 1)));
            }
        }
    }
    Ok(Poset::new(3 * n, covers)?
        .with_name(format!("vchain:{n}"))
        .with_family(Family::ChainOfVs { n }))
}

/// Cartan matrix with `a[i][j] = <alpha_i^vee, alpha_j>`.
pub fn cartan_matrix(kind: char, n: usize) -> Result<Vec<Vec<i64>>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match kind {
        'A' if n >= 1 => (1..n).for_each(|i| link(i - 1, i)),
        'D' if n >= 4 => {
            (1..n - 1).for_each(|i| link(i - 1, i));
            link(n - 3, n - 1);
        }
        'E' if (6..=8).contains(&n) => {
            // Bourbaki: 1-3-4-5-..., with 2 attached to 4
            link(0, 2);
            link(1, 3);
            (3..n).for_each(|i| link(i - 1, i));
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "no Cartan matrix for {kind}{n}"
            )))
        }
    }
    Ok(a)
}

const MAX_ROOTS: usize = 1000;

/// Positive roots in simple-root coordinates, breadth first by height.
pub fn positive_roots(c: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = c.len();
    if c.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("Cartan matrix is not square".into()));
    }
    for i in 0..n {
        if c[i][i] != 2 {
            return Err(Error::InvalidArgument("Cartan diagonal must be 2".into()));
        }
        for j in 0..n {
            if i != j && (c[i][j] > 0 || (c[i][j] == 0) != (c[j][i] == 0)) {
                return Err(Error::InvalidArgument("malformed Cartan matrix".into()));
            }
        }
    }
    let simple = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    let mut roots: Vec<Vec<i64>> = (0..n).map(simple).collect();
    let mut seen: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut k = 0;
    while k < roots.len() {
        let beta = roots[k].clone();
        k += 1;
        for i in 0..n {
            // alpha_i-string through beta: beta - p alpha_i, ..., beta + q alpha_i, p - q = <alpha_i^vee, beta>
            let mut p = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if seen.contains(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            let pairing: i64 = (0..n).map(|j| c[i][j] * beta[j]).sum();
            if p - pairing > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if seen.insert(up.clone()) {
                    roots.push(up);
                    if roots.len() > MAX_ROOTS {
                        return Err(Error::InvalidArgument(
                            "root system is not of finite type".into(),
                        ));
                    }
                }
            }
        }
    }
    Ok(roots)
}

/// Root poset on a set of roots: covers where the difference is a simple root.
fn root_order(roots: Vec<Vec<i64>>) -> Result<Poset> {
    let index: HashMap<&Vec<i64>, usize> = roots.iter().enumerate().map(|(k, r)| (r, k)).collect();
    let mut covers = vec![];
    for (k, r) in roots.iter().enumerate() {
        for i in 0..r.len() {
            let mut up = r.clone();
            up[i] += 1;
            if let Some(&m) = index.get(&up) {
                covers.push((k, m));
            }
        }
    }
    Poset::new(roots.len(), covers)
}

pub fn root_poset_from_cartan(c: &[Vec<i64>]) -> Result<Poset> {
    Ok(root_order(positive_roots(c)?)?.with_family(Family::Cartan))
}

/// Roots whose coefficient on simple root `node` is exactly 1; minuscule when `node` is.
pub fn minuscule_from_cartan(c: &[Vec<i64>], node: usize) -> Result<Poset> {
    let roots = positive_roots(c)?
        .into_iter()
        .filter(|r| r[node] == 1)
        .collect();
    root_order(roots)
}

pub fn root_poset_d(n: usize) -> Result<Poset> {
    Ok(root_poset_from_cartan(&cartan_matrix('D', n)?)?.with_name(format!("rootD:{n}")))
}

const E6_COVERS: [(usize, usize); 20] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (2, 4),
    (3, 5),
    (4, 5),
    (4, 6),
    (5, 7),
    (5, 8),
    (6, 8),
    (7, 9),
    (7, 10),
    (8, 10),
    (9, 11),
    (10, 11),
    (10, 12),
    (11, 13),
    (12, 13),
    (13, 14),
    (14, 15),
];

const E7_COVERS: [(usize, usize); 36] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 4),
    (3, 5),
    (4, 7),
    (5, 6),
    (5, 7),
    (6, 8),
    (7, 8),
    (7, 9),
    (8, 10),
    (9, 10),
    (9, 11),
    (10, 12),
    (10, 13),
    (11, 13),
    (11, 14),
    (12, 15),
    (13, 15),
    (13, 16),
    (14, 16),
    (15, 17),
    (15, 18),
    (16, 18),
    (17, 19),
    (17, 20),
    (18, 20),
    (19, 21),
    (20, 21),
    (20, 22),
    (21, 23),
    (22, 23),
    (23, 24),
    (24, 25),
    (25, 26),
];

fn minuscule_static(covers: &[(usize, usize)], n: usize, family: Family, name: &str) -> Poset {
    let p = Poset::new(n, covers.to_vec()).expect("static minuscule data is a poset");
    let p = p.with_name(name).with_family(family);
    debug_assert!(p.is_graded() && p.has_at_most_two_covers() && is_isomorphic(&p, &p.dual()));
    p
}

pub fn minuscule_e6() -> Poset {
    minuscule_static(&E6_COVERS, 16, Family::E6, "E6")
}

pub fn minuscule_e7() -> Poset {
    minuscule_static(&E7_COVERS, 27, Family::E7, "E7")
}

/// Minuscule posets with at most `up_to_size` elements, one per isomorphism class.
pub fn all_minuscule(up_to_size: usize) -> Vec<Poset> {
    let mut out: Vec<Poset> = vec![];
    let mut push = |p: Poset| {
        if p.len() <= up_to_size && !out.iter().any(|q| is_isomorphic(q, &p)) {
            out.push(p);
        }
    };
    for a in 1..=up_to_size.min(crate::poset::MAX_ELEMENTS) {
        for b in a..=up_to_size / a {
            push(rectangle(a, b).unwrap());
        }
    }
    for n in 1.. {
        if n * (n + 1) / 2 > up_to_size {
            break;
        }
        push(shifted_staircase(n).unwrap());
    }
    for n in 2..=up_to_size / 2 {
        push(double_tailed_diamond(n).unwrap());
    }
    push(minuscule_e6());
    push(minuscule_e7());
    out
}

/// A quotient poset with its doubled poset and the symmetrizing map between their ideals.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub quotient: Poset,
    pub double: Poset,
    images: Vec<ElementSet>,
}

impl Quotient {
    fn new(quotient: Poset, double: Poset) -> Self {
        let images = quotient
            .coords()
            .unwrap()
            .iter()
            .map(|&(i, j)| {
                ElementSet::from_elements([double.at(i, j), double.at(j, i)].into_iter().flatten())
            })
            .collect();
        Quotient {
            quotient,
            double,
            images,
        }
    }

    /// ι(I) = {(i,j), (j,i) : (i,j) ∈ I}.
    pub fn iota(&self, i: OrderIdeal) -> OrderIdeal {
        let s = i
            .set()
            .iter()
            .fold(ElementSet::EMPTY, |acc, p| acc.union(self.images[p]));
        self.double
            .ideal(s)
            .expect("the image of an ideal is an ideal")
    }
}

/// sstair(n) inside rect(n, n).
pub fn staircase_quotient(n: usize) -> Result<Quotient> {
    Ok(Quotient::new(shifted_staircase(n)?, rectangle(n, n)?))
}

/// Φ⁺(B_n) inside Φ⁺(A_{2n-1}).
pub fn root_b_quotient(n: usize) -> Result<Quotient> {
    Ok(Quotient::new(root_poset_b(n)?, root_poset_a(2 * n - 1)?))
}
