use super::DenseMatrix;
use crate::poly::FieldPoly;

/// Nonconstant invariant factors of A, largest first (so the first one is
/// the minimal polynomial), from the Smith form of `XI - A` over GF(p)[X].
pub fn dense_invariant_factors(a: &DenseMatrix) -> Vec<FieldPoly> {
    let f = a.field();
    let n = a.dim();
    let mut m: Vec<Vec<FieldPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = FieldPoly::constant(f, f.neg(a.get(i, j)));
                    if i == j {
                        c.add(&FieldPoly::x(f))
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();

    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            let pivot = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !m[i][j].is_zero())
                .min_by_key(|&(i, j)| m[i][j].deg());
            let Some((pi, pj)) = pivot else {
                break;
            };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            let mut clean = true;
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let (q, r) = m[i][k].divrem(&m[k][k]).expect("pivot nonzero");
                for j in k..n {
                    let t = m[i][j].sub(&q.mul(&m[k][j]));
                    m[i][j] = t;
                }
                clean &= r.is_zero();
            }
            for j in k + 1..n {
                if m[k][j].is_zero() {
                    continue;
                }
                let (q, r) = m[k][j].divrem(&m[k][k]).expect("pivot nonzero");
                for row in m.iter_mut().skip(k) {
                    let t = row[j].sub(&q.mul(&row[k]));
                    row[j] = t;
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole trailing block
            let bad = (k + 1..n)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[k][k].divides(&m[i][j]));
            match bad {
                Some((i, _)) => {
                    for j in k..n {
                        let t = m[k][j].add(&m[i][j]);
                        m[k][j] = t;
                    }
                }
                None => break,
            }
        }
        diag.push(if m[k][k].is_zero() { m[k][k].clone() } else { m[k][k].monic() });
    }
    let mut out: Vec<FieldPoly> = diag.into_iter().filter(|d| !d.is_constant()).collect();
    out.reverse();
    out
}
