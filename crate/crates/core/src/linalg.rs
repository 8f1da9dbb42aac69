//! Exact nullspace computation over the field of rational functions in
//! the weight symbols, by fraction-free (Bareiss) elimination in the
//! polynomial ring followed by back substitution.

use num::{BigRational, One};

use crate::scalars::{gcd, ParamPoly, Scalar, Symbol};

/// Kernel basis of a matrix together with the specialization caveats.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    /// Basis vectors, each normalized so its first nonzero entry is 1.
    pub basis: Vec<Vec<Scalar>>,
    pub rank: usize,
    /// Non-constant factors of the pivots (single symbols and monic remainders). The kernel can only grow at parameter
    /// values where one of these vanishes.
    pub caveats: Vec<ParamPoly>,
}

fn lcm(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    let g = gcd(a, b);
    (a * b).div_exact(&g).expect("gcd divides the product").monic()
}

/// Clear denominators row by row so every entry is a polynomial.
fn polynomial_rows(rows: &[Vec<Scalar>]) -> Vec<Vec<ParamPoly>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(ParamPoly::one(), |acc, s| if s.is_polynomial() { acc } else { lcm(&acc, s.denom()) });
            row.iter()
                .map(|s| {
                    if s.is_polynomial() {
                        s.numer() * &l
                    } else {
                        let q = l.div_exact(s.denom()).expect("lcm is a multiple");
                        s.numer() * &q
                    }
                })
                .collect()
        })
        .collect()
}

/// Non-constant factors of a pivot: each symbol of its monomial content,
/// then the monic remainder.
fn caveat_factors(p: &ParamPoly) -> Vec<ParamPoly> {
    let Some(mut common) = p.terms().next().map(|(m, _)| *m) else { return Vec::new() };
    for (m, _) in p.terms() {
        for (a, b) in common.0.iter_mut().zip(m.0.iter()) {
            *a = (*a).min(*b);
        }
    }
    let mut out: Vec<ParamPoly> =
        Symbol::ALL.iter().filter(|s| common.0[s.index()] > 0).map(|&s| ParamPoly::symbol(s)).collect();
    let rest = p.div_exact(&ParamPoly::term(common, BigRational::one())).expect("monomial content divides");
    if !rest.is_constant() {
        out.push(rest.monic());
    }
    out
}

/// Nullspace of the `rows × ncols` matrix.
pub fn kernel(rows: &[Vec<Scalar>], ncols: usize) -> Kernel {
    let mut a = polynomial_rows(rows);
    a.retain(|r| r.iter().any(|e| !e.is_zero()));
    let nrows = a.len();
    let mut prev = ParamPoly::one();
    let mut pivots: Vec<usize> = Vec::new();
    let mut caveats: Vec<ParamPoly> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        // lowest-degree, then sparsest, pivot first
        let choice = (r..nrows)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| (a[i][col].total_degree(), a[i][col].num_terms()));
        let Some(p) = choice else { continue };
        a.swap(r, p);
        let piv = a[r][col].clone();
        for i in r + 1..nrows {
            let factor = a[i][col].clone();
            #[allow(clippy::needless_range_loop)] // rows i and r are both read
            for j in col + 1..ncols {
                let num = &(&piv * &a[i][j]) - &(&factor * &a[r][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][col] = ParamPoly::zero();
        }
        for factor in caveat_factors(&piv) {
            if !caveats.contains(&factor) {
                caveats.push(factor);
            }
        }
        prev = piv;
        pivots.push(col);
        r += 1;
    }
    let rank = pivots.len();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut x = vec![Scalar::zero(); ncols];
        x[f] = Scalar::one();
        for (row, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = Scalar::zero();
            for j in pc + 1..ncols {
                if !a[row][j].is_zero() && !x[j].is_zero() {
                    acc = &acc + &(&Scalar::from_poly(a[row][j].clone()) * &x[j]);
                }
            }
            x[pc] = -&acc.checked_div(&Scalar::from_poly(a[row][pc].clone())).expect("pivot is nonzero");
        }
        let lead = x.iter().find(|s| !s.is_zero()).cloned().expect("free entry is 1");
        let inv = lead.recip().expect("nonzero");
        basis.push(x.iter().map(|s| s * &inv).collect());
    }
    Kernel { basis, rank, caveats }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::integer(n)
    }

    fn apply(rows: &[Vec<Scalar>], x: &[Scalar]) -> Vec<Scalar> {
        rows.iter()
            .map(|r| r.iter().zip(x).fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    #[test]
    fn rational_kernel() {
        let rows = vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(6)], vec![s(1), s(0), s(1)]];
        let k = kernel(&rows, 3);
        assert_eq!(k.rank, 2);
        assert_eq!(k.basis.len(), 1);
        assert!(apply(&rows, &k.basis[0]).iter().all(Scalar::is_zero));
        assert_eq!(k.basis[0][0], s(1));
    }

    #[test]
    fn caveats_split_off_monomial_content() {
        let d = Scalar::symbol(Symbol::Delta);
        let mu = Scalar::symbol(Symbol::Mu);
        let rows = vec![vec![&(&d * &mu) + &(&mu * &s(4))]];
        let k = kernel(&rows, 1);
        assert!(k.basis.is_empty());
        let texts: Vec<String> = k.caveats.iter().map(|c| c.to_text()).collect();
        assert_eq!(texts, vec!["mu", "delta+4"]);
    }

    #[test]
    fn symbolic_kernel_and_caveat() {
        // [delta, 1; 0, delta + 1]: trivial kernel generically, caveats name delta and delta + 1
        let d = Scalar::symbol(Symbol::Delta);
        let rows = vec![vec![d.clone(), s(1)], vec![s(0), &d + &s(1)]];
        let k = kernel(&rows, 2);
        assert!(k.basis.is_empty());
        assert!(!k.caveats.is_empty());
        // a rank-one symbolic matrix
        let rows = vec![vec![d.clone(), &d * &d], vec![s(1), d.clone()]];
        let k = kernel(&rows, 2);
        assert_eq!(k.basis.len(), 1);
        assert_eq!(k.basis[0], vec![s(1), -&d.recip().unwrap()]);
    }

    #[test]
    fn fractional_entries() {
        let mu = Scalar::symbol(Symbol::Mu);
        let rows = vec![vec![Scalar::one().checked_div(&mu).unwrap(), s(2)]];
        let k = kernel(&rows, 2);
        assert_eq!(k.basis, vec![vec![s(1), -&(&Scalar::ratio(1, 2) / &mu)]]);
    }
}
