//! Candidate Frobenius groups `(G, K)` for the kernel lemma.

use std::sync::Arc;

use crate::ffield::Field;
use crate::groups::{
    cyclic_group, direct_product, matrix_group, symmetric_group, ClassicalFamily, ConcreteGroup,
    Element, GroupDescriptor, GroupError, Subgroup,
};

pub struct FrobeniusWitness {
    pub group: ConcreteGroup,
    pub kernel: Subgroup,
}

/// Builds a named pair: an `AGL n q` descriptor with its translation
/// subgroup, `3^2:Q8`, `5^2:SL(2,3)`, `Z6 over Z3` or `S3 x Z3 over Z3`.
pub fn frobenius_witness(name: &str, cap: usize) -> Result<FrobeniusWitness, GroupError> {
    match name.trim() {
        "3^2:Q8" => {
            let field = Arc::new(Field::new(3, 1)?);
            affine_over(name, field, 2, &[vec![0, 1, 2, 0], vec![1, 1, 1, 2]], cap)
        }
        "5^2:SL(2,3)" => {
            let field = Arc::new(Field::new(5, 1)?);
            let linear = binary_tetrahedral_in_sl25(cap)?;
            affine_over(name, field, 2, &linear, cap)
        }
        "Z6 over Z3" => {
            let group = cyclic_group(6);
            let two = group.index_of(&[2]).expect("2 ∈ Z6");
            let kernel = group.closure(&[two]);
            Ok(FrobeniusWitness { group, kernel })
        }
        "S3 x Z3 over Z3" => {
            let group = direct_product(&symmetric_group(3), &cyclic_group(3), cap)?;
            let members: Vec<u32> = (0..group.order() as u32)
                .filter(|&g| group.element(g)[..3] == [0, 1, 2])
                .collect();
            let kernel = group.subgroup_from_members(&members)?;
            Ok(FrobeniusWitness { group, kernel })
        }
        other => {
            let d: GroupDescriptor = other.parse()?;
            if d.family != ClassicalFamily::AGL
                || d.cyclic_factor.is_some()
                || d.field_automorphism.is_some()
            {
                return Err(GroupError::Parse(format!(
                    "'{other}' is not a known Frobenius witness"
                )));
            }
            let group = d.build(cap)?;
            let kernel = translations(&group, d.n)?;
            Ok(FrobeniusWitness { group, kernel })
        }
    }
}

/// `V ⋊ L` for `V = GF(p)^n` and `L` generated by `linear` (row-major
/// `n×n` matrices), as `(n+1)×(n+1)` affine matrices.
fn affine_over(
    name: &str,
    field: Arc<Field>,
    n: usize,
    linear: &[Element],
    cap: usize,
) -> Result<FrobeniusWitness, GroupError> {
    let dim = n + 1;
    let identity = |m: &mut Element| {
        for i in 0..dim {
            m[i * dim + i] = 1;
        }
    };
    let mut gens = Vec::new();
    for a in linear {
        let mut m = vec![0u32; dim * dim];
        identity(&mut m);
        for r in 0..n {
            for c in 0..n {
                m[r * dim + c] = a[r * n + c];
            }
        }
        gens.push(m);
    }
    for r in 0..n {
        let mut m = vec![0u32; dim * dim];
        identity(&mut m);
        m[r * dim + n] = 1;
        gens.push(m);
    }
    let group = matrix_group(name, field, dim, false, gens, cap)?;
    let kernel = translations(&group, n)?;
    Ok(FrobeniusWitness { group, kernel })
}

/// Affine matrices whose linear block is the identity.
fn translations(group: &ConcreteGroup, n: usize) -> Result<Subgroup, GroupError> {
    let dim = n + 1;
    let members: Vec<u32> = (0..group.order() as u32)
        .filter(|&g| {
            let m = group.element(g);
            (0..n).all(|r| (0..n).all(|c| m[r * dim + c] == u32::from(r == c)))
        })
        .collect();
    group.subgroup_from_members(&members)
}

/// Generators of an order-24 subgroup of `SL(2,5)`: the first pair
/// (order 4, order 3) in enumeration order that generates 24 elements.
fn binary_tetrahedral_in_sl25(cap: usize) -> Result<Vec<Element>, GroupError> {
    let sl: GroupDescriptor = "SL 2 5".parse()?;
    let g = sl.build(cap)?;
    let g = &g;
    let of_order = |k: u64| (0..g.order() as u32).filter(move |&x| g.order_of(x) == k);
    for a in of_order(4) {
        for b in of_order(3) {
            if g.closure(&[a, b]).order() == 24 {
                return Ok(vec![g.element(a).to_vec(), g.element(b).to_vec()]);
            }
        }
    }
    Err(GroupError::Unsupported(
        "SL(2,5) has no subgroup of order 24".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(name: &str) -> (usize, usize) {
        let w = frobenius_witness(name, 10_000).unwrap();
        (w.group.order(), w.kernel.order())
    }

    #[test]
    fn witness_orders() {
        assert_eq!(orders("AGL 1 5"), (20, 5));
        assert_eq!(orders("AGL 1 11"), (110, 11));
        assert_eq!(orders("3^2:Q8"), (72, 9));
        assert_eq!(orders("5^2:SL(2,3)"), (600, 25));
        assert_eq!(orders("Z6 over Z3"), (6, 3));
        assert_eq!(orders("S3 x Z3 over Z3"), (18, 3));
        assert_eq!(orders("AGL 2 3"), (432, 9));
        assert!(frobenius_witness("SL 2 5", 1000).is_err());
        assert!(frobenius_witness("nonsense", 1000).is_err());
    }
}
