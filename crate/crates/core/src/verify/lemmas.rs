//! Hardy–Littlewood and Riesz rearrangement inequalities, computed exactly
//! for piecewise-constant functions.

use crate::error::{Error, Result};
use crate::grid::{sorted_magnitudes, GridFunction};
use crate::verify::{needs_moduli, InequalityReport};

/// Slack allowed for floating-point summation only.
const SUMMATION_TOL: f64 = 1e-12;

const HL_STATEMENT: &str = "Hardy-Littlewood: int f g <= int |f|* |g|*";
const RIESZ_STATEMENT: &str = "Riesz: iint f(s) g(t) c(s-t) <= iint f*(s) g*(t) c*(s-t)";

/// Sum of nonnegative terms in descending order, so equal multisets give
/// equal sums bit for bit.
fn ordered_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(|a, b| b.total_cmp(a));
    terms.iter().sum()
}

/// `∫|f||g| ≤ ∫|f|*|g|*` on a common grid.
///
/// Both rearrangements share one cell order, so the right side is the sorted
/// pairing of magnitudes.
pub fn verify_hardy_littlewood(f: &GridFunction, g: &GridFunction) -> Result<InequalityReport> {
    if !f.same_grid(g) {
        return Err(Error::invalid("Hardy-Littlewood needs both functions on one grid"));
    }
    let cell = f.cell_measure();
    let lhs = cell * ordered_sum(f.magnitudes().iter().zip(g.magnitudes()).map(|(a, b)| a * b).collect());
    let (sf, sg) = (sorted_magnitudes(f), sorted_magnitudes(g));
    let rhs = cell * ordered_sum(sf.iter().zip(&sg).map(|(a, b)| a * b).collect());
    Ok(
        InequalityReport::check("hardy-littlewood", HL_STATEMENT, lhs, rhs, 1.0, SUMMATION_TOL)
            .with_meta("h", f.h())
            .with_meta("moduli_taken", needs_moduli(f) || needs_moduli(g)),
    )
}

/// `∫_a^b (w - |u|)_+ du`.
fn tent_mass(a: f64, b: f64, w: f64) -> f64 {
    let prim = |u: f64| {
        let u = u.clamp(-w, w);
        w * u - u * u.abs() / 2.0
    };
    prim(b) - prim(a)
}

/// `K_m = ∫∫_{cell_i × cell_j} c(s - t)` for lag `m = i - j`, which only
/// depends on `m`: the difference `s - t` has a tent density of half-width
/// `h` centered at `o_f - o_g + m h`.
fn lag_kernel(n_f: usize, n_g: usize, of: f64, og: f64, c: &[f64], oc: f64, h: f64) -> Vec<f64> {
    let lags = n_f + n_g - 1;
    (0..lags)
        .map(|idx| {
            let m = idx as f64 - (n_g as f64 - 1.0);
            let center = of - og + m * h;
            let k0 = ((center - oc) / h).floor() as i64;
            let mut acc = 0.0;
            for k in (k0 - 2)..=(k0 + 2) {
                if k < 0 || k as usize >= c.len() || c[k as usize] == 0.0 {
                    continue;
                }
                let lo = oc + k as f64 * h - center;
                acc += c[k as usize] * tent_mass(lo, lo + h, h);
            }
            acc
        })
        .collect()
}

/// `Σ_i Σ_j f_i g_j K_{i-j}` with `K` from [`lag_kernel`].
fn riesz_form(f: &GridFunction, g: &GridFunction, c: &GridFunction) -> f64 {
    let h = f.h();
    let (a, b, cm) = (f.magnitudes(), g.magnitudes(), c.magnitudes());
    let kernel = lag_kernel(a.len(), b.len(), f.offset()[0], g.offset()[0], &cm, c.offset()[0], h);
    let shift = b.len() - 1;
    let mut total = 0.0;
    for (i, &fi) in a.iter().enumerate() {
        if fi == 0.0 {
            continue;
        }
        let mut row = 0.0;
        for (j, &gj) in b.iter().enumerate() {
            row += gj * kernel[i + shift - j];
        }
        total += fi * row;
    }
    total
}

/// The continuum rearrangement of a 1-D step function with `2n` half cells:
/// every level set then has an even number of half cells, so the `k` nearest
/// half cells of a symmetric grid form the centered interval exactly.
fn star_half_cells(f: &GridFunction) -> Result<GridFunction> {
    let fine = f.refine(2)?;
    let mut out = GridFunction::symmetric(&[fine.len()], fine.h())?;
    let mags = sorted_magnitudes(&fine);
    let order = out.cell_order();
    let values = out.values_mut();
    for (rank, m) in mags.into_iter().enumerate() {
        values[order[rank]] = m.into();
    }
    Ok(out)
}

/// Riesz's inequality for three 1-D step functions on a common grid, both
/// sides evaluated in closed form.
///
/// The triple integral of piecewise-constant functions reduces to cell sums
/// against the tent-shaped overlap kernel. The right side uses the exact
/// continuum rearrangements, which live on the half-cell grid.
pub fn verify_riesz(f: &GridFunction, g: &GridFunction, c: &GridFunction) -> Result<InequalityReport> {
    if f.dim() != 1 {
        return Err(Error::invalid("the Riesz check is implemented in one dimension"));
    }
    if !f.same_grid(g) || !f.same_grid(c) {
        return Err(Error::invalid("Riesz needs all three functions on one grid"));
    }
    let (ff, gf, cf) = (f.refine(2)?, g.refine(2)?, c.refine(2)?);
    let lhs = riesz_form(&ff, &gf, &cf);
    let rhs = riesz_form(&star_half_cells(f)?, &star_half_cells(g)?, &star_half_cells(c)?);
    Ok(
        InequalityReport::check("riesz", RIESZ_STATEMENT, lhs, rhs, 1.0, SUMMATION_TOL)
            .with_meta("h", f.h())
            .with_meta("cells", f.len())
            .with_meta("moduli_taken", needs_moduli(f) || needs_moduli(g) || needs_moduli(c)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn grid_1d(values: &[f64], h: f64) -> GridFunction {
        let n = values.len();
        GridFunction::new(
            h,
            vec![-(n as f64) * h / 2.0],
            vec![n],
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn tent_mass_integrates_to_square_of_width() {
        assert!((tent_mass(-3.0, 3.0, 1.5) - 2.25).abs() < 1e-15);
        assert!((tent_mass(0.0, 1.0, 1.0) - 0.5).abs() < 1e-15);
        assert!((tent_mass(-0.5, 0.5, 1.0) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn disjoint_indicators() {
        // [0,1] and [2,3] with h = 1/16 on [-4, 4)
        let h = 1.0 / 16.0;
        let ind = |lo: f64, hi: f64| {
            GridFunction::symmetric_from_fn(&[128], h, move |x| {
                Complex64::new(if x[0] > lo && x[0] < hi { 1.0 } else { 0.0 }, 0.0)
            })
            .unwrap()
        };
        let r = verify_hardy_littlewood(&ind(0.0, 1.0), &ind(2.0, 3.0)).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!((r.rhs - 1.0).abs() < 1e-15);
        assert!(r.pass);
    }

    #[test]
    fn symmetric_pairs_give_equality() {
        let f = grid_1d(&[0.1, 0.5, 2.0, 2.0, 0.5, 0.1], 0.25);
        let g = grid_1d(&[0.0, 1.0, 3.0, 3.0, 1.0, 0.0], 0.25);
        let r = verify_hardy_littlewood(&f, &g).unwrap();
        assert_eq!(r.lhs, r.rhs);
        let r = verify_riesz(&f, &g, &f).unwrap();
        assert_eq!(r.lhs, r.rhs);
    }

    #[test]
    fn riesz_matches_direct_integration_for_single_cells() {
        // ∬ 1_{[0,1]}(s) 1_{[0,1]}(t) 1_{[0,1]}(s-t)
        let f = GridFunction::new(1.0, vec![0.0], vec![1], vec![Complex64::new(1.0, 0.0)]).unwrap();
        let c = GridFunction::new(1.0, vec![0.0], vec![1], vec![Complex64::new(1.0, 0.0)]).unwrap();
        let form = riesz_form(&f, &f, &c);
        // ∫_0^1 (1 - u) du
        assert!((form - 0.5).abs() < 1e-15);
        let centered = GridFunction::new(1.0, vec![-0.5], vec![1], vec![Complex64::new(1.0, 0.0)]).unwrap();
        let f0 = GridFunction::new(1.0, vec![-0.5], vec![1], vec![Complex64::new(1.0, 0.0)]).unwrap();
        assert!((riesz_form(&f0, &f0, &centered) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn riesz_lhs_invariant_under_joint_shift() {
        let f = grid_1d(&[0.0, 1.0, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0], 0.5);
        let g = grid_1d(&[1.0, 0.0, 0.0, 3.0, 1.0, 0.0, 0.0, 0.0], 0.5);
        let c = grid_1d(&[0.0, 0.5, 1.0, 2.0, 1.0, 0.0, 0.0, 0.0], 0.5);
        let base = verify_riesz(&f, &g, &c).unwrap();
        let moved = verify_riesz(&f.translate_cells(&[3]).unwrap(), &g.translate_cells(&[3]).unwrap(), &c).unwrap();
        assert!((base.lhs - moved.lhs).abs() < 1e-14);
        assert_eq!(base.rhs, moved.rhs);
        assert!(base.pass);
    }

    #[test]
    fn grid_mismatch_is_invalid() {
        let f = grid_1d(&[1.0, 2.0], 0.5);
        let g = grid_1d(&[1.0, 2.0, 3.0], 0.5);
        assert!(matches!(
            verify_hardy_littlewood(&f, &g),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(verify_riesz(&f, &f, &g), Err(Error::InvalidArgument(_))));
    }
}
