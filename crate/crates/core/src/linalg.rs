//! Exact kernels of matrices over K by fraction-free elimination in A.

use crate::error::{Error, Result};
use crate::poly::PolyA;
use crate::rat::RatK;

fn lcm(a: &PolyA, b: &PolyA) -> PolyA {
    let g = a.gcd(b);
    (a * b).div_exact(&g).expect("gcd divides the product").make_monic()
}

/// Clears denominators of a row, then divides out the content.
fn integral_row(row: &[RatK]) -> Vec<PolyA> {
    let field = row.first().map(|c| c.num().field()).expect("nonempty row");
    let den = row.iter().fold(PolyA::one(field), |acc, c| lcm(&acc, c.den()));
    let scaled: Vec<PolyA> =
        row.iter().map(|c| (c.num() * &den).div_exact(c.den()).expect("denominator divides lcm")).collect();
    primitive(scaled)
}

fn primitive(row: Vec<PolyA>) -> Vec<PolyA> {
    let content = row.iter().filter(|c| !c.is_zero()).fold(None::<PolyA>, |acc, c| {
        Some(match acc {
            None => c.make_monic(),
            Some(g) => g.gcd(c),
        })
    });
    match content {
        Some(g) if !g.is_one() => row.into_iter().map(|c| c.div_exact(&g).expect("content divides")).collect(),
        _ => row,
    }
}

/// Reduced echelon form: returns the rows and the pivot column of each row.
/// Pivots are chosen as the first nonzero column and topmost available row.
pub fn echelon(rows: &[Vec<RatK>]) -> Result<(Vec<Vec<PolyA>>, Vec<usize>)> {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return Ok((Vec::new(), Vec::new()));
    };
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Precondition("ragged matrix".into()));
    }
    if ncols == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut m: Vec<Vec<PolyA>> = rows.iter().map(|r| integral_row(r)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(found) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, found);
        let pivot_row = m[r].clone();
        let piv = pivot_row[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            let updated: Vec<PolyA> = row.iter().zip(&pivot_row).map(|(a, b)| &(&piv * a) - &(&factor * b)).collect();
            *row = primitive(updated);
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    Ok((m, pivots))
}

pub fn rank(rows: &[Vec<RatK>]) -> Result<usize> {
    Ok(echelon(rows)?.1.len())
}

/// A basis of `{v : M v = 0}` for the matrix with the given rows over K,
/// one vector per free column, with that free coordinate set to 1.
pub fn kernel(rows: &[Vec<RatK>], ncols: usize) -> Result<Vec<Vec<RatK>>> {
    if rows.is_empty() {
        return Err(Error::Precondition("kernel of a matrix with no rows".into()));
    }
    let field = rows[0].first().map(|c| c.num().field()).ok_or_else(|| Error::Precondition("empty row".into()))?;
    let (m, pivots) = echelon(rows)?;
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![RatK::zero(field); ncols];
        v[free] = RatK::one(field);
        for (row, &pc) in m.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[pc] = -RatK::new(row[free].clone(), row[pc].clone())?;
            }
        }
        basis.push(v);
    }
    Ok(basis)
}
