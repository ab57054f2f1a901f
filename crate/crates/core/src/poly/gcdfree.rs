//! Coprime refinement of a family of polynomials over GF(p).

use super::field::{product_of_powers, FieldPoly};
use crate::{Error, Result};

/// Pairwise coprime monic `elements` with `target = prod elements[i]^exponents[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdFreeBasis {
    pub elements: Vec<FieldPoly>,
    pub exponents: Vec<usize>,
}

/// Refines `polys` into a pairwise coprime basis and expresses `target`
/// over it. Fails with [`Error::BadPrime`] when `target` is not a power
/// product of the basis.
pub fn gcd_free_basis(polys: &[FieldPoly], target: &FieldPoly) -> Result<GcdFreeBasis> {
    if target.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let field = target.field();
    let mut basis: Vec<FieldPoly> = Vec::new();
    for f in polys {
        if f.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !f.is_constant() {
            insert_refining(&mut basis, f.monic());
        }
    }
    basis.sort_by(|a, b| a.canonical_cmp(b));

    let mut rest = target.monic();
    let mut exponents = Vec::with_capacity(basis.len());
    for g in &basis {
        let mut mu = 0;
        while let Some(q) = rest.div_exact(g) {
            rest = q;
            mu += 1;
        }
        exponents.push(mu);
    }
    if !rest.is_one() {
        return Err(Error::BadPrime(format!(
            "target has a factor {} outside the gcd-free basis",
            rest.to_compact()
        )));
    }
    debug_assert_eq!(
        product_of_powers(field, &basis.iter().cloned().zip(exponents.iter().copied()).collect::<Vec<_>>()),
        target.monic()
    );
    Ok(GcdFreeBasis {
        elements: basis,
        exponents,
    })
}

/// Adds `f` to a pairwise coprime family, splitting members on common
/// factors until the family is coprime again.
fn insert_refining(basis: &mut Vec<FieldPoly>, f: FieldPoly) {
    let mut pending = vec![f];
    while let Some(f) = pending.pop() {
        if f.is_constant() {
            continue;
        }
        let hit = basis
            .iter()
            .enumerate()
            .find_map(|(i, b)| {
                let g = b.gcd(&f);
                (!g.is_constant()).then_some((i, g))
            });
        match hit {
            None => basis.push(f),
            Some((i, g)) => {
                let b = basis.swap_remove(i);
                let b_rest = b.div_exact(&g).expect("gcd divides");
                let f_rest = f.div_exact(&g).expect("gcd divides");
                pending.push(g);
                pending.push(b_rest);
                pending.push(f_rest);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::PrimeField;

    #[test]
    fn refines_nested_powers() {
        let f = PrimeField::new(7).unwrap();
        let a = FieldPoly::from_i64(f, &[-1, 1]);
        let b = FieldPoly::from_i64(f, &[-2, 1]);
        let polys = [
            a.mul(&b),
            a.pow(2).mul(&b),
            a.pow(3).mul(&b.pow(2)),
        ];
        let basis = gcd_free_basis(&polys, &polys[2]).unwrap();
        assert_eq!(basis.elements, vec![a, b]);
        assert_eq!(basis.exponents, vec![3, 2]);
    }

    #[test]
    fn trivial_cases() {
        let f = PrimeField::new(11).unwrap();
        let p = FieldPoly::from_i64(f, &[1, 0, 1]);
        let basis = gcd_free_basis(std::slice::from_ref(&p), &p).unwrap();
        assert_eq!((basis.elements, basis.exponents), (vec![p.clone()], vec![1]));

        let q = FieldPoly::from_i64(f, &[3, 1]);
        let basis = gcd_free_basis(&[p.clone(), q.clone()], &p.mul(&q)).unwrap();
        assert_eq!(basis.exponents, vec![1, 1]);
        assert_eq!(basis.elements.len(), 2);
    }

    #[test]
    fn foreign_factor_is_a_bad_prime() {
        let f = PrimeField::new(11).unwrap();
        let p = FieldPoly::from_i64(f, &[-1, 1]);
        let target = p.mul(&FieldPoly::from_i64(f, &[-5, 1]));
        assert!(matches!(gcd_free_basis(&[p], &target), Err(Error::BadPrime(_))));
    }

    #[test]
    fn overlapping_non_nested_inputs() {
        // (X-1)(X-2) and (X-2)(X-3) share only X-2
        let f = PrimeField::new(101).unwrap();
        let l = |a: i64| FieldPoly::from_i64(f, &[-a, 1]);
        let basis = gcd_free_basis(
            &[l(1).mul(&l(2)), l(2).mul(&l(3))],
            &l(1).mul(&l(2).pow(2)).mul(&l(3)),
        )
        .unwrap();
        assert_eq!(basis.elements, vec![l(1), l(2), l(3)]);
        assert_eq!(basis.exponents, vec![1, 2, 1]);
        for (i, x) in basis.elements.iter().enumerate() {
            for y in &basis.elements[i + 1..] {
                assert!(x.gcd(y).is_one());
            }
        }
    }
}
