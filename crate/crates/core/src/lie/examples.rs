use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{BasisElement, GradedSpace};
use crate::lincomb::Vector;
use crate::scalar::int;

use super::LiePresentation;

/// Built-in nilpotent Lie algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExampleKind {
    /// `[x, y] = z`, all even.
    Heisenberg,
    Abelian(usize),
    /// Strictly upper-triangular `n × n` matrices, basis `e{i}_{j}`.
    StrictUpperTriangular(usize),
    /// Free nilpotent Lie algebra on `generators` even generators of class
    /// `class`, in the Lyndon basis.
    FreeNilpotent {
        generators: usize,
        class: usize,
    },
    /// Formal vector fields on a `dim`-dimensional space vanishing to second
    /// order at the origin, modulo coefficients of polynomial order above
    /// `cutoff`.
    FormalVectorFields {
        dim: usize,
        cutoff: usize,
    },
}

pub fn make_example(kind: ExampleKind) -> Result<LiePresentation> {
    match kind {
        ExampleKind::Heisenberg => {
            let space = Arc::new(GradedSpace::even(&["x", "y", "z"])?);
            LiePresentation::new(space, [((0, 1), Vector::from_term(2, int(1)))])
        }
        ExampleKind::Abelian(d) => {
            let names: Vec<String> = (1..=d).map(|i| format!("a{i}")).collect();
            Ok(LiePresentation::abelian(Arc::new(GradedSpace::even(
                &names,
            )?)))
        }
        ExampleKind::StrictUpperTriangular(n) => strict_upper_triangular(n),
        ExampleKind::FreeNilpotent { generators, class } => {
            if class == 0 {
                return Err(Error::InvalidParameter(
                    "nilpotency class must be at least 1".into(),
                ));
            }
            let gens: Vec<BasisElement> = (0..generators)
                .map(|i| BasisElement::new(generator_name(i, generators), 0))
                .collect();
            crate::freelie::free_nilpotent(&gens, class)
        }
        ExampleKind::FormalVectorFields { dim, cutoff } => formal_vector_fields(dim, cutoff),
    }
}

fn generator_name(i: usize, m: usize) -> String {
    if m <= 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("g{}", i + 1)
    }
}

fn strict_upper_triangular(n: usize) -> Result<LiePresentation> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("matrix size {n} < 2")));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(a, &p)| (p, a)).collect();
    let names: Vec<String> = pairs
        .iter()
        .map(|(i, j)| format!("e{}_{}", i + 1, j + 1))
        .collect();
    let space = Arc::new(GradedSpace::even(&names)?);
    // [E_ij, E_kl] = δ_jk E_il - δ_li E_kj
    let mut entries = Vec::new();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate().skip(a + 1) {
            let mut v = Vector::new();
            if j == k {
                v.add_term(index[&(i, l)], int(1));
            }
            if l == i {
                v.add_term(index[&(k, j)], int(-1));
            }
            if !v.is_zero() {
                entries.push(((a, b), v));
            }
        }
    }
    LiePresentation::new(space, entries)
}

/// Exponent vectors of total degree `total` in `d` variables.
fn monomials(d: usize, total: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in monomials(d - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn formal_vector_fields(d: usize, cutoff: usize) -> Result<LiePresentation> {
    if cutoff < 2 {
        return Err(Error::InvalidParameter(format!(
            "polynomial cutoff {cutoff} < 2"
        )));
    }
    if d == 0 {
        return Err(Error::InvalidParameter(
            "vector fields need dimension at least 1".into(),
        ));
    }
    // basis t^α ∂_i with 2 ≤ |α| ≤ cutoff; degree 2(|α| - 1) keeps the
    // bracket additive and every element even
    let mut basis: Vec<(Vec<usize>, usize)> = Vec::new();
    for order in 2..=cutoff {
        for alpha in monomials(d, order) {
            for i in 0..d {
                basis.push((alpha.clone(), i));
            }
        }
    }
    let index: HashMap<(Vec<usize>, usize), usize> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(a, key)| (key, a))
        .collect();
    let name = |alpha: &[usize], i: usize| {
        let exps: Vec<String> = alpha.iter().map(|e| e.to_string()).collect();
        if d == 1 {
            format!("t{}_d", exps[0])
        } else {
            format!("t{}_d{}", exps.join("_"), i + 1)
        }
    };
    let elements = basis
        .iter()
        .map(|(alpha, i)| {
            let order: usize = alpha.iter().sum();
            BasisElement::new(name(alpha, *i), 2 * (order as i64 - 1))
        })
        .collect();
    let space = Arc::new(GradedSpace::new(elements)?);

    // [t^α ∂_i, t^β ∂_j] = β_i t^{α+β-e_i} ∂_j - α_j t^{α+β-e_j} ∂_i
    let mut entries = Vec::new();
    for (a, (alpha, i)) in basis.iter().enumerate() {
        for (b, (beta, j)) in basis.iter().enumerate().skip(a + 1) {
            let order = alpha.iter().sum::<usize>() + beta.iter().sum::<usize>() - 1;
            if order > cutoff {
                continue;
            }
            let mut v = Vector::new();
            let sum: Vec<usize> = alpha.iter().zip(beta).map(|(x, y)| x + y).collect();
            if beta[*i] > 0 {
                let mut gamma = sum.clone();
                gamma[*i] -= 1;
                v.add_term(index[&(gamma, *j)], int(beta[*i] as i64));
            }
            if alpha[*j] > 0 {
                let mut gamma = sum.clone();
                gamma[*j] -= 1;
                v.add_term(index[&(gamma, *i)], int(-(alpha[*j] as i64)));
            }
            if !v.is_zero() {
                entries.push(((a, b), v));
            }
        }
    }
    LiePresentation::new(space, entries)
}
