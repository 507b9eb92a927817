use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operators::{
    assemble_fd_laplacian, make_wave_block_operator, InnerProductSpace, WaveBlockOperator,
};

/// `g^q(x, y) = x^{2q} (1-x)^{2q} y^{2q} (1-y)^{2q}`
pub fn wave_profile(x: f64, y: f64, q: usize) -> f64 {
    let p = 2 * q as i32;
    (x * (1.0 - x)).powi(p) * (y * (1.0 - y)).powi(p)
}

/// `g^q` on the interior grid points, row-major.
pub fn wave_profile_samples(d: usize, q: usize) -> Vec<f64> {
    let h = 1.0 / (d + 1) as f64;
    (1..=d)
        .flat_map(|i| (1..=d).map(move |j| wave_profile(i as f64 * h, j as f64 * h, q)))
        .collect()
}

pub fn wave_operator(d: usize) -> Result<WaveBlockOperator> {
    Ok(make_wave_block_operator(Arc::new(assemble_fd_laplacian(
        d,
    )?)))
}

/// Block vector `[g; g]` scaled to unit discrete energy norm.
pub fn wave_initial_data(d: usize, q: usize) -> Result<Vec<f64>> {
    if d < 2 {
        return Err(Error::Domain(format!(
            "wave grid size must be at least 2, got {d}"
        )));
    }
    if q == 0 {
        return Err(Error::Domain(
            "smoothness index q must be at least 1".into(),
        ));
    }
    let lap = Arc::new(assemble_fd_laplacian(d)?);
    let space = InnerProductSpace::wave_energy(lap);
    let g = wave_profile_samples(d, q);
    let mut y = g.clone();
    y.extend(g);
    let norm = space.norm(&y);
    y.iter_mut().for_each(|x| *x /= norm);
    Ok(y)
}
