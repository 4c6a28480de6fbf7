//! Projective and affine geometries, single-element extensions through
//! modular cuts, and k-element projections with their certificates.

mod certificate;
mod cut;
mod paired;
mod random;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

pub use certificate::{project, ProjectionCertificate};
pub use cut::{enumerate_extensions, extend, linear_subclasses, CutSpec, Extensions, ModularCut};
pub use paired::paired_extension;
pub use random::{random_certificate, sample_certificates, CertificateShape};

use crate::error::{Error, Result};
use crate::field::{projective_points, FieldSpec, Matrix};
use crate::kernel::{Matroid, MAX_GROUND};

/// (q^n − 1)/(q − 1), the number of points of PG(n−1, q).
pub fn pg_size(n: usize, q: u32) -> u64 {
    let q = q as u64;
    (q.pow(n as u32) - 1) / (q - 1)
}

/// Columns of PG(n−1, q) in the canonical point order.
pub fn pg_matrix(n: usize, q: u32) -> Result<(FieldSpec, Matrix)> {
    if n == 0 {
        return Err(Error::Precondition("projective geometry needs n >= 1".into()));
    }
    let field = FieldSpec::new(q)?;
    let pts = projective_points(&field, n);
    let m = Matrix::from_columns(n, &pts);
    Ok((field, m))
}

/// Columns of AG(n−1, q): the points of PG(n−1, q) off the hyperplane x_0 = 0.
pub fn ag_matrix(n: usize, q: u32) -> Result<(FieldSpec, Matrix)> {
    if n < 1 {
        return Err(Error::Precondition("affine geometry needs n >= 1".into()));
    }
    let (field, m) = pg_matrix(n, q)?;
    let cols: Vec<Vec<u8>> = m.columns().into_iter().filter(|c| c[0] != 0).collect();
    Ok((field, Matrix::from_columns(n, &cols)))
}

fn pg_cache() -> &'static Mutex<HashMap<(usize, u32), Matroid>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Matroid>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// PG(n−1, q), the rank-n projective geometry. Shared instances are cached.
pub fn pg(n: usize, q: u32) -> Result<Matroid> {
    if let Some(m) = pg_cache().lock().unwrap().get(&(n, q)) {
        return Ok(m.clone());
    }
    let (field, matrix) = pg_matrix(n, q)?;
    if matrix.cols() > MAX_GROUND {
        return Err(Error::TooLarge { what: "projective geometry", size: matrix.cols(), limit: MAX_GROUND });
    }
    let m = Matroid::linear(&field, &matrix)?;
    pg_cache().lock().unwrap().insert((n, q), m.clone());
    Ok(m)
}

/// AG(n−1, q).
pub fn ag(n: usize, q: u32) -> Result<Matroid> {
    let (field, matrix) = ag_matrix(n, q)?;
    if matrix.cols() > MAX_GROUND {
        return Err(Error::TooLarge { what: "affine geometry", size: matrix.cols(), limit: MAX_GROUND });
    }
    Matroid::linear(&field, &matrix)
}

/// Whether `m` is PG(r(M) − 1, q): simple, of the right size, with every
/// line of q + 1 points and every plane of q² + q + 1 points. Such a
/// matroid is a projective space, hence PG(r − 1, q) for r ≥ 4; for r = 3
/// every plane of order q ≤ 8 is Desarguesian, and larger orders fall back
/// to an isomorphism test.
pub fn is_projective_geometry(m: &Matroid, q: u32) -> bool {
    let r = m.full_rank();
    if m.n() as u64 != pg_size(r, q) || !m.is_simple() {
        return false;
    }
    if r <= 2 {
        return true;
    }
    let (line, plane) = (q as usize + 1, (q * q + q + 1) as usize);
    if m.flats_of_rank(2).iter().any(|l| l.len() != line) || m.flats_of_rank(3).iter().any(|p| p.len() != plane) {
        return false;
    }
    r > 3 || q <= 8 || pg(r, q).is_ok_and(|g| crate::kernel::is_isomorphic(m, &g).is_some())
}

/// T(M).
pub fn truncate(m: &Matroid) -> Result<Matroid> {
    m.truncation()
}
