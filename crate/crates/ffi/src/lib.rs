//! C ABI for the weisslab numerical laboratory.
//!
//! The surface follows a conventional handle/status pattern:
//!
//! * Opaque handles (`wl_measure`, `wl_halfplane_system`, `wl_disk_system`)
//!   are created by `*_new`-style constructors and released by the matching
//!   `*_free`. Handles are not thread-safe for concurrent mutation, but all
//!   operations here only read them, so sharing a handle across threads for
//!   read-only calls is fine.
//! * Every fallible call returns a [`wl_status`]; results travel through `out`
//!   pointers that are written only on `WL_OK`.
//! * Panics are caught at the boundary and reported as `WL_ERR_INTERNAL`
//!   instead of unwinding into C.
//!
//! The C header is generated into `include/weisslab.h` by the build script.

use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use weisslab::capacity::{capacity_upper, CapacityProblem, Grid1D, SolverParams};
use weisslab::disk::{discrete_admissibility_constant, disk_resolvent_sup, DiskSystem, OmegaGrid};
use weisslab::halfplane::{admissibility_constant, resolvent_sup, HalfPlaneSystem, LambdaGrid};
use weisslab::hankel::{hankel_norm, shift_resolvent_norm, HankelSpec};
use weisslab::measure::{
    cantor_measure, one_box_constant, stack_heights, stacked_measure, Ambient, Atom, AtomicMeasure,
    Interval, OpenSetUnion, StackParams,
};
use weisslab::spaces::{lacunary_witness, TaylorCoefficients};
use weisslab::{Error, C64};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum wl_status {
    /// Success; `out` parameters hold results.
    WL_OK = 0,
    /// A required pointer argument was null.
    WL_ERR_NULL_POINTER = 1,
    /// A numeric or combinatorial argument was outside its documented domain.
    WL_ERR_INVALID_ARGUMENT = 2,
    /// A half-plane measure was passed to a disk routine or vice versa.
    WL_ERR_AMBIENT_MISMATCH = 3,
    /// A text payload failed to parse.
    WL_ERR_PARSE = 4,
    /// Filesystem failure.
    WL_ERR_IO = 5,
    /// Internal invariant violation (caught panic).
    WL_ERR_INTERNAL = 6,
}

/// Which boundary the atoms of a measure live on.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum wl_ambient {
    /// Closed upper half-plane; atoms sit at `x + iy`, `y >= 0`.
    WL_AMBIENT_HALFPLANE = 0,
    /// Closed unit disk; atoms sit at `x + iy`, `|x + iy| <= 1`.
    WL_AMBIENT_DISK = 1,
}

/// Finitely many weighted point masses on the half-plane or the disk.
#[allow(non_camel_case_types)]
pub struct wl_measure {
    inner: AtomicMeasure,
}

/// Diagonal normal semigroup system built from a half-plane measure.
#[allow(non_camel_case_types)]
pub struct wl_halfplane_system {
    inner: HalfPlaneSystem,
}

/// Diagonal normal discrete-time system built from a disk measure.
#[allow(non_camel_case_types)]
pub struct wl_disk_system {
    inner: DiskSystem,
}

fn status_of(e: &Error) -> wl_status {
    match e {
        Error::InvalidParameter(_) => wl_status::WL_ERR_INVALID_ARGUMENT,
        Error::AmbientMismatch(_) => wl_status::WL_ERR_AMBIENT_MISMATCH,
        Error::Parse(_) => wl_status::WL_ERR_PARSE,
        Error::Io(_) => wl_status::WL_ERR_IO,
    }
}

fn guarded(body: impl FnOnce() -> wl_status) -> wl_status {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => wl_status::WL_ERR_INTERNAL,
    }
}

fn ambient_of(a: wl_ambient) -> Ambient {
    match a {
        wl_ambient::WL_AMBIENT_HALFPLANE => Ambient::HalfPlane,
        wl_ambient::WL_AMBIENT_DISK => Ambient::Disk,
    }
}

/// Reads `len` doubles starting at `ptr`; a null pointer is only legal for
/// an empty slice.
unsafe fn doubles<'a>(ptr: *const f64, len: usize) -> Option<&'a [f64]> {
    if len == 0 {
        Some(&[])
    } else if ptr.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(ptr, len))
    }
}

unsafe fn complex_coeffs(re: *const f64, im: *const f64, len: usize) -> Option<Vec<C64>> {
    let re = doubles(re, len)?;
    let coeffs = if im.is_null() {
        re.iter().map(|&x| C64::new(x, 0.0)).collect()
    } else {
        let im = std::slice::from_raw_parts(im, len);
        re.iter().zip(im).map(|(&x, &y)| C64::new(x, y)).collect()
    };
    Some(coeffs)
}

/// Static nul-terminated name of a status code, e.g. `"WL_OK"`.
#[no_mangle]
pub extern "C" fn wl_status_name(status: wl_status) -> *const c_char {
    let name: &'static [u8] = match status {
        wl_status::WL_OK => b"WL_OK\0",
        wl_status::WL_ERR_NULL_POINTER => b"WL_ERR_NULL_POINTER\0",
        wl_status::WL_ERR_INVALID_ARGUMENT => b"WL_ERR_INVALID_ARGUMENT\0",
        wl_status::WL_ERR_AMBIENT_MISMATCH => b"WL_ERR_AMBIENT_MISMATCH\0",
        wl_status::WL_ERR_PARSE => b"WL_ERR_PARSE\0",
        wl_status::WL_ERR_IO => b"WL_ERR_IO\0",
        wl_status::WL_ERR_INTERNAL => b"WL_ERR_INTERNAL\0",
    };
    name.as_ptr() as *const c_char
}

/// Static nul-terminated library version string.
#[no_mangle]
pub extern "C" fn wl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Builds the level-`levels` Cantor measure with dissection ratio `ratio`
/// (one atom per surviving interval, equal weights, unit total mass).
///
/// # Safety
/// `out` must be a valid pointer. On `WL_OK` it receives a handle that must be
/// released with [`wl_measure_free`].
#[no_mangle]
pub unsafe extern "C" fn wl_measure_cantor(
    ratio: f64,
    levels: usize,
    ambient: wl_ambient,
    out: *mut *mut wl_measure,
) -> wl_status {
    guarded(|| {
        if out.is_null() {
            return wl_status::WL_ERR_NULL_POINTER;
        }
        match cantor_measure(ratio, levels, ambient_of(ambient)) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(wl_measure { inner }));
                wl_status::WL_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Builds the layered Cantor measure: layer `m = 1..=layers` carries a copy
/// of the level-`levels` Cantor measure with weight `1/m^2`, displaced from
/// the boundary by one third of the level-`m` cover interval length
/// (half-plane: height above the line; disk: depth below the circle).
///
/// # Safety
/// `out` must be a valid pointer. On `WL_OK` it receives a handle that must be
/// released with [`wl_measure_free`].
#[no_mangle]
pub unsafe extern "C" fn wl_measure_cantor_stacked(
    ratio: f64,
    levels: usize,
    layers: usize,
    ambient: wl_ambient,
    out: *mut *mut wl_measure,
) -> wl_status {
    guarded(|| {
        if out.is_null() {
            return wl_status::WL_ERR_NULL_POINTER;
        }
        let built = cantor_measure(ratio, levels, ambient_of(ambient)).and_then(|base| {
            let heights = stack_heights(ratio, layers);
            stacked_measure(&StackParams { base, heights })
        });
        match built {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(wl_measure { inner }));
                wl_status::WL_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Builds a measure from parallel arrays of atom coordinates and weights.
/// Weights must be positive; positions must lie in the chosen ambient.
///
/// # Safety
/// `xs`, `ys`, `weights` must point to `len` doubles each (null is allowed
/// when `len == 0`); `out` must be a valid pointer. On `WL_OK` it receives a
/// handle that must be released with [`wl_measure_free`].
#[no_mangle]
pub unsafe extern "C" fn wl_measure_from_atoms(
    ambient: wl_ambient,
    xs: *const f64,
    ys: *const f64,
    weights: *const f64,
    len: usize,
    out: *mut *mut wl_measure,
) -> wl_status {
    guarded(|| {
        if out.is_null() {
            return wl_status::WL_ERR_NULL_POINTER;
        }
        let (Some(xs), Some(ys), Some(ws)) =
            (doubles(xs, len), doubles(ys, len), doubles(weights, len))
        else {
            return wl_status::WL_ERR_NULL_POINTER;
        };
        let atoms: Vec<Atom> = xs
            .iter()
            .zip(ys)
            .zip(ws)
            .map(|((&x, &y), &w)| Atom {
                position: C64::new(x, y),
                weight: w,
            })
            .collect();
        match AtomicMeasure::new(ambient_of(ambient), atoms) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(wl_measure { inner }));
                wl_status::WL_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a measure handle. Passing null is a no-op.
///
/// # Safety
/// `m` must be null or a handle previously returned by a `wl_measure_*`
/// constructor that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn wl_measure_free(m: *mut wl_measure) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of atoms.
///
/// # Safety
/// `m` must be a live measure handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wl_measure_len(m: *const wl_measure, out: *mut usize) -> wl_status {
    guarded(|| {
        if m.is_null() || out.is_null() {
            return wl_status::WL_ERR_NULL_POINTER;
        }
        *out = (*m).inner.len();
        wl_status::WL_OK
    })
}

/// Sum of atom weights.
///
/// # Safety
/// `m` must be a live measure handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wl_measure_total_mass(m: *const wl_measure, out: *mut f64) -> wl_status {
    guarded(|| {
        if m.is_null() || out.is_null() {
            return wl_status::WL_ERR_NULL_POINTER;
        }
        *out = (*m).inner.total_mass();
        wl_status::WL_OK
    })
}

/// One-box (Carleson) constant: the supremum of `mu(box) / side^exponent`
/// over a dyadic probe family refined to `depth` scales.
///
/// # Safety
/// `m` must be a live measure handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wl_measure_one_box_constant(
    m: *const wl_measure,
    exponent: f64,
    depth: usize,
    out: *mut f64,
) -> wl_status {
    guarded(|| {
        if m.is_null() || out.is_null() {
            return wl_status::WL_ERR_NULL_POINTER;
        }
        match one_box_constant(&(*m).inner, exponent, depth) {
            Ok(v) => {
                *out = v;
                wl_status::WL_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Builds a continuous-time diagonal system from a half-plane measure.
///
/// # Safety
/// `m` must be a live measure handle; `out` must be a valid pointer. On
/// `WL_OK` it receives a handle that must be released with
/// [`wl_halfplane_system_free`].
#[no_mangle]
pub unsafe extern "C" fn wl_halfplane_system_new(
    m: *const wl_measure,
    out: *mut *mut wl_halfplane_system,
) -> wl_status {
    guarded(|| {
        if m.is_null() || out.is_null() {
            return wl_status::WL_ERR_NULL_POINTER;
        }
        match HalfPlaneSystem::new(&(*m).inner) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(wl_halfplane_system { inner }));
                wl_status::WL_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a half-plane system handle. Passing null is a no-op.
///
/// # Safety
/// `sys` must be null or a handle from [`wl_halfplane_system_new`] that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn wl_halfplane_system_free(sys: *mut wl_halfplane_system) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Weighted admissibility constant `M(alpha)`: the best bound in
/// `integral t^alpha |C T(t) x|^2 dt <= M^2 |x|^2`, computed exactly from the
/// finite Gram matrix. Requires `-1 < alpha < 1`.
///
/// # Safety
/// `sys` must be a live system handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wl_halfplane_admissibility(
    sys: *const wl_halfplane_system,
    alpha: f64,
    out: *mut f64,
) -> wl_status {
    guarded(|| {
        if sys.is_null() || out.is_null() {
            return wl_status::WL_ERR_NULL_POINTER;
        }
        match admissibility_constant(&(*sys).inner, alpha) {
            Ok(v) => {
                *out = v;
                wl_status::WL_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Supremum of the weighted resolvent test
/// `(2 Re lambda)^((1+alpha)/2) |C (lambda - A)^{-1}|` over a standard grid
/// in the right half-plane.
///
/// # Safety
/// `sys` must be a live system handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wl_halfplane_resolvent_sup(
    sys: *const wl_halfplane_system,
    alpha: f64,
    out: *mut f64,
) -> wl_status {
    guarded(|| {
        if sys.is_null() || out.is_null() {
            return wl_status::WL_ERR_NULL_POINTER;
        }
        match resolvent_sup(&(*sys).inner, alpha, &LambdaGrid::standard()) {
            Ok(r) => {
                *out = r.value;
                wl_status::WL_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Builds a discrete-time diagonal system from a disk measure.
///
/// # Safety
/// `m` must be a live measure handle; `out` must be a valid pointer. On
/// `WL_OK` it receives a handle that must be released with
/// [`wl_disk_system_free`].
#[no_mangle]
pub unsafe extern "C" fn wl_disk_system_new(
    m: *const wl_measure,
    out: *mut *mut wl_disk_system,
) -> wl_status {
    guarded(|| {
        if m.is_null() || out.is_null() {
            return wl_status::WL_ERR_NULL_POINTER;
        }
        match DiskSystem::new(&(*m).inner) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(wl_disk_system { inner }));
                wl_status::WL_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a disk system handle. Passing null is a no-op.
///
/// # Safety
/// `sys` must be null or a handle from [`wl_disk_system_new`] that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn wl_disk_system_free(sys: *mut wl_disk_system) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Supremum of the disk resolvent test
/// `(1-|w|^2)^((1-alpha)/2) (integral d mu(z) / |1 - conj(w) z|^2)^(1/2)`
/// over a standard grid of `w` in the open disk.
///
/// # Safety
/// `sys` must be a live system handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wl_disk_resolvent_sup(
    sys: *const wl_disk_system,
    alpha: f64,
    out: *mut f64,
) -> wl_status {
    guarded(|| {
        if sys.is_null() || out.is_null() {
            return wl_status::WL_ERR_NULL_POINTER;
        }
        match disk_resolvent_sup(&(*sys).inner, alpha, &OmegaGrid::standard()) {
            Ok(r) => {
                *out = r.value;
                wl_status::WL_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Discrete admissibility constant: the best bound in
/// `sum_n (1+n)^alpha |C A^n x|^2 <= M |x|^2`, estimated by truncating the
/// sum at `n_trunc` terms. `out_relative_change` reports the relative change
/// between the half and full truncations (a convergence diagnostic).
///
/// # Safety
/// `sys` must be a live system handle; `out_value` and `out_relative_change`
/// must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wl_disk_admissibility(
    sys: *const wl_disk_system,
    alpha: f64,
    n_trunc: usize,
    out_value: *mut f64,
    out_relative_change: *mut f64,
) -> wl_status {
    guarded(|| {
        if sys.is_null() || out_value.is_null() || out_relative_change.is_null() {
            return wl_status::WL_ERR_NULL_POINTER;
        }
        match discrete_admissibility_constant(&(*sys).inner, alpha, n_trunc) {
            Ok(est) => {
                *out_value = est.value;
                *out_relative_change = est.relative_change;
                wl_status::WL_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Upper bound for the Riesz capacity of a finite union of open intervals,
/// computed with the penalized-energy solver on a uniform grid spanning
/// `[grid_left, grid_right]` with `grid_cells` cells. Passing zero for
/// `max_iter` or `tolerance <= 0` selects the solver defaults.
/// `out_converged` reports whether the final residual met the tolerance;
/// the value is still written when it did not.
///
/// # Safety
/// `lefts` and `rights` must point to `count` doubles each; `out_value` and
/// `out_converged` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wl_capacity_upper(
    beta: f64,
    lefts: *const f64,
    rights: *const f64,
    count: usize,
    grid_left: f64,
    grid_right: f64,
    grid_cells: usize,
    max_iter: usize,
    tolerance: f64,
    out_value: *mut f64,
    out_converged: *mut bool,
) -> wl_status {
    guarded(|| {
        if out_value.is_null() || out_converged.is_null() {
            return wl_status::WL_ERR_NULL_POINTER;
        }
        let (Some(ls), Some(rs)) = (doubles(lefts, count), doubles(rights, count)) else {
            return wl_status::WL_ERR_NULL_POINTER;
        };
        let run = || -> Result<_, Error> {
            let mut intervals = Vec::with_capacity(count);
            for (&l, &r) in ls.iter().zip(rs) {
                intervals.push(Interval::new(l, r)?);
            }
            let target = OpenSetUnion::new(intervals)?;
            let grid = Grid1D::new(grid_left, grid_right, grid_cells)?;
            let mut solver = SolverParams::default();
            if max_iter > 0 {
                solver.max_iter = max_iter;
            }
            if tolerance > 0.0 {
                solver.tolerance = tolerance;
            }
            let problem = CapacityProblem::new(beta, target, grid, solver)?;
            capacity_upper(&problem)
        };
        match run() {
            Ok(outcome) => {
                *out_value = outcome.value;
                *out_converged = outcome.converged;
                wl_status::WL_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Operator norm of the weighted Hankel matrix with entries
/// `(1+n)^(alpha/2) c[n+m]`, truncated to `truncation` rows and columns.
/// `im` may be null for real symbol coefficients. Requires `0 <= alpha < 1`.
///
/// # Safety
/// `re` (and `im` when non-null) must point to `len` doubles; `out` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wl_hankel_norm(
    re: *const f64,
    im: *const f64,
    len: usize,
    alpha: f64,
    truncation: usize,
    out: *mut f64,
) -> wl_status {
    guarded(|| {
        if out.is_null() {
            return wl_status::WL_ERR_NULL_POINTER;
        }
        let Some(coeffs) = complex_coeffs(re, im, len) else {
            return wl_status::WL_ERR_NULL_POINTER;
        };
        let run = || -> Result<f64, Error> {
            let spec = HankelSpec::new(TaylorCoefficients::new(coeffs), alpha, truncation)?;
            hankel_norm(&spec)
        };
        match run() {
            Ok(v) => {
                *out = v;
                wl_status::WL_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Norm of the resolvent-type observation sequence of the unilateral shift:
/// the Taylor coefficients of `z -> c(z)/(1 - conj(omega) z)` truncated at
/// `n_trunc`, measured in plain `l^2`. Requires `|omega| < 1`.
/// `im` may be null for real symbol coefficients.
///
/// # Safety
/// `re` (and `im` when non-null) must point to `len` doubles; `out` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wl_shift_resolvent_norm(
    re: *const f64,
    im: *const f64,
    len: usize,
    omega_re: f64,
    omega_im: f64,
    n_trunc: usize,
    out: *mut f64,
) -> wl_status {
    guarded(|| {
        if out.is_null() {
            return wl_status::WL_ERR_NULL_POINTER;
        }
        let Some(coeffs) = complex_coeffs(re, im, len) else {
            return wl_status::WL_ERR_NULL_POINTER;
        };
        let c = TaylorCoefficients::new(coeffs);
        match shift_resolvent_norm(&c, C64::new(omega_re, omega_im), n_trunc) {
            Ok(v) => {
                *out = v;
                wl_status::WL_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Lacunary symbol with `blocks` dyadic blocks adapted to weight exponent
/// `alpha` (the symbol used by the shift experiments). Two-call pattern:
/// pass a null `out_re` to query the coefficient count in `out_len`, then
/// call again with buffers of that capacity. `out_im` may be null; the
/// coefficients are real. Requires `0 < alpha < 1`.
///
/// # Safety
/// `out_len` must be a valid pointer. When `out_re` is non-null, `out_re`
/// (and `out_im` when non-null) must point to `cap` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn wl_lacunary_witness(
    alpha: f64,
    blocks: usize,
    out_re: *mut f64,
    out_im: *mut f64,
    cap: usize,
    out_len: *mut usize,
) -> wl_status {
    guarded(|| {
        if out_len.is_null() {
            return wl_status::WL_ERR_NULL_POINTER;
        }
        match lacunary_witness(alpha, blocks) {
            Ok(c) => {
                let n = c.coeffs.len();
                *out_len = n;
                if out_re.is_null() {
                    return wl_status::WL_OK;
                }
                if cap < n {
                    return wl_status::WL_ERR_INVALID_ARGUMENT;
                }
                let re = std::slice::from_raw_parts_mut(out_re, n);
                for (dst, src) in re.iter_mut().zip(&c.coeffs) {
                    *dst = src.re;
                }
                if !out_im.is_null() {
                    let im = std::slice::from_raw_parts_mut(out_im, n);
                    for (dst, src) in im.iter_mut().zip(&c.coeffs) {
                        *dst = src.im;
                    }
                }
                wl_status::WL_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;
    use std::ptr;

    unsafe fn cantor(ratio: f64, levels: usize, ambient: wl_ambient) -> *mut wl_measure {
        let mut handle: *mut wl_measure = ptr::null_mut();
        let status = wl_measure_cantor(ratio, levels, ambient, &mut handle);
        assert_eq!(status, wl_status::WL_OK);
        assert!(!handle.is_null());
        handle
    }

    #[test]
    fn cantor_measure_roundtrip() {
        unsafe {
            let m = cantor(0.25, 4, wl_ambient::WL_AMBIENT_HALFPLANE);
            let mut len = 0usize;
            assert_eq!(wl_measure_len(m, &mut len), wl_status::WL_OK);
            assert_eq!(len, 16);
            let mut mass = 0.0;
            assert_eq!(wl_measure_total_mass(m, &mut mass), wl_status::WL_OK);
            assert!((mass - 1.0).abs() < 1e-12);
            wl_measure_free(m);
        }
    }

    #[test]
    fn invalid_ratio_is_reported() {
        unsafe {
            let mut handle: *mut wl_measure = ptr::null_mut();
            let status = wl_measure_cantor(0.75, 3, wl_ambient::WL_AMBIENT_HALFPLANE, &mut handle);
            assert_eq!(status, wl_status::WL_ERR_INVALID_ARGUMENT);
            assert!(handle.is_null());
        }
    }

    #[test]
    fn null_pointers_are_reported_not_crashed() {
        unsafe {
            assert_eq!(
                wl_measure_cantor(0.25, 3, wl_ambient::WL_AMBIENT_DISK, ptr::null_mut()),
                wl_status::WL_ERR_NULL_POINTER
            );
            let mut out = 0.0;
            assert_eq!(
                wl_measure_total_mass(ptr::null(), &mut out),
                wl_status::WL_ERR_NULL_POINTER
            );
            let m = cantor(0.25, 2, wl_ambient::WL_AMBIENT_HALFPLANE);
            assert_eq!(
                wl_measure_len(m, ptr::null_mut()),
                wl_status::WL_ERR_NULL_POINTER
            );
            wl_measure_free(m);
            wl_measure_free(ptr::null_mut());
        }
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        unsafe {
            let m = cantor(0.25, 3, wl_ambient::WL_AMBIENT_HALFPLANE);
            let mut sys: *mut wl_disk_system = ptr::null_mut();
            assert_eq!(
                wl_disk_system_new(m, &mut sys),
                wl_status::WL_ERR_AMBIENT_MISMATCH
            );
            wl_measure_free(m);
        }
    }

    #[test]
    fn halfplane_pipeline_matches_direct_call() {
        unsafe {
            let m = cantor(0.25, 3, wl_ambient::WL_AMBIENT_HALFPLANE);
            let mut sys: *mut wl_halfplane_system = ptr::null_mut();
            assert_eq!(wl_halfplane_system_new(m, &mut sys), wl_status::WL_OK);

            let mut via_ffi = 0.0;
            assert_eq!(
                wl_halfplane_admissibility(sys, -0.5, &mut via_ffi),
                wl_status::WL_OK
            );
            let direct = {
                let mu = cantor_measure(0.25, 3, Ambient::HalfPlane).unwrap();
                admissibility_constant(&HalfPlaneSystem::new(&mu).unwrap(), -0.5).unwrap()
            };
            assert!((via_ffi - direct).abs() < 1e-12 * direct);

            let mut rsup = 0.0;
            assert_eq!(
                wl_halfplane_resolvent_sup(sys, -0.5, &mut rsup),
                wl_status::WL_OK
            );
            assert!(rsup > 0.0 && rsup.is_finite());

            wl_halfplane_system_free(sys);
            wl_measure_free(m);
        }
    }

    #[test]
    fn disk_pipeline_reports_values() {
        unsafe {
            let mut m: *mut wl_measure = ptr::null_mut();
            assert_eq!(
                wl_measure_cantor_stacked(0.25, 3, 5, wl_ambient::WL_AMBIENT_DISK, &mut m),
                wl_status::WL_OK
            );
            let mut len = 0usize;
            wl_measure_len(m, &mut len);
            assert_eq!(len, 8 * 5);

            let mut sys: *mut wl_disk_system = ptr::null_mut();
            assert_eq!(wl_disk_system_new(m, &mut sys), wl_status::WL_OK);
            let mut rsup = 0.0;
            assert_eq!(
                wl_disk_resolvent_sup(sys, -0.5, &mut rsup),
                wl_status::WL_OK
            );
            assert!(rsup > 0.0 && rsup.is_finite());

            let mut value = 0.0;
            let mut change = 0.0;
            assert_eq!(
                wl_disk_admissibility(sys, -0.5, 256, &mut value, &mut change),
                wl_status::WL_OK
            );
            assert!(value > 0.0 && change >= 0.0);

            let mut boxc = 0.0;
            assert_eq!(
                wl_measure_one_box_constant(m, 0.5, 8, &mut boxc),
                wl_status::WL_OK
            );
            assert!(boxc > 0.0);

            wl_disk_system_free(sys);
            wl_measure_free(m);
        }
    }

    #[test]
    fn from_atoms_validates_weights() {
        unsafe {
            let xs = [0.1, 0.4];
            let ys = [0.2, 0.3];
            let bad = [1.0, -2.0];
            let mut m: *mut wl_measure = ptr::null_mut();
            assert_eq!(
                wl_measure_from_atoms(
                    wl_ambient::WL_AMBIENT_HALFPLANE,
                    xs.as_ptr(),
                    ys.as_ptr(),
                    bad.as_ptr(),
                    2,
                    &mut m,
                ),
                wl_status::WL_ERR_INVALID_ARGUMENT
            );
            let good = [1.0, 2.0];
            assert_eq!(
                wl_measure_from_atoms(
                    wl_ambient::WL_AMBIENT_HALFPLANE,
                    xs.as_ptr(),
                    ys.as_ptr(),
                    good.as_ptr(),
                    2,
                    &mut m,
                ),
                wl_status::WL_OK
            );
            let mut mass = 0.0;
            wl_measure_total_mass(m, &mut mass);
            assert!((mass - 3.0).abs() < 1e-12);
            wl_measure_free(m);
        }
    }

    #[test]
    fn capacity_matches_direct_call() {
        unsafe {
            let lefts = [0.0];
            let rights = [1.0];
            let mut value = 0.0;
            let mut converged = false;
            let status = wl_capacity_upper(
                0.5,
                lefts.as_ptr(),
                rights.as_ptr(),
                1,
                -0.5,
                1.5,
                512,
                400,
                0.0,
                &mut value,
                &mut converged,
            );
            assert_eq!(status, wl_status::WL_OK);
            let direct = {
                let target = OpenSetUnion::new(vec![Interval::new(0.0, 1.0).unwrap()]).unwrap();
                let grid = Grid1D::new(-0.5, 1.5, 512).unwrap();
                let solver = SolverParams {
                    max_iter: 400,
                    ..SolverParams::default()
                };
                capacity_upper(&CapacityProblem::new(0.5, target, grid, solver).unwrap()).unwrap()
            };
            assert_eq!(converged, direct.converged);
            assert!((value - direct.value).abs() < 1e-12 * direct.value.max(1.0));
        }
    }

    #[test]
    fn hankel_and_resolvent_norms() {
        unsafe {
            let re = [1.0, 0.5, 0.25, 0.125];
            let mut norm = 0.0;
            assert_eq!(
                wl_hankel_norm(re.as_ptr(), ptr::null(), 4, 0.5, 16, &mut norm),
                wl_status::WL_OK
            );
            let direct = hankel_norm(
                &HankelSpec::new(
                    TaylorCoefficients::new(re.iter().map(|&x| C64::new(x, 0.0)).collect()),
                    0.5,
                    16,
                )
                .unwrap(),
            )
            .unwrap();
            assert!((norm - direct).abs() < 1e-10 * direct.max(1.0));

            let mut rnorm = 0.0;
            assert_eq!(
                wl_shift_resolvent_norm(re.as_ptr(), ptr::null(), 4, 0.3, 0.4, 64, &mut rnorm),
                wl_status::WL_OK
            );
            assert!(rnorm > 0.0);
            // |omega| >= 1 must be rejected.
            assert_eq!(
                wl_shift_resolvent_norm(re.as_ptr(), ptr::null(), 4, 1.0, 0.0, 64, &mut rnorm),
                wl_status::WL_ERR_INVALID_ARGUMENT
            );
        }
    }

    #[test]
    fn lacunary_two_call_pattern() {
        unsafe {
            let mut needed = 0usize;
            assert_eq!(
                wl_lacunary_witness(0.5, 4, ptr::null_mut(), ptr::null_mut(), 0, &mut needed),
                wl_status::WL_OK
            );
            assert!(needed > 0);
            let mut re = vec![0.0; needed];
            let mut len = 0usize;
            assert_eq!(
                wl_lacunary_witness(0.5, 4, re.as_mut_ptr(), ptr::null_mut(), needed, &mut len),
                wl_status::WL_OK
            );
            assert_eq!(len, needed);
            let direct = lacunary_witness(0.5, 4).unwrap();
            for (a, b) in re.iter().zip(&direct.coeffs) {
                assert_eq!(*a, b.re);
            }
            // Short buffer is an argument error, not a crash.
            let mut short = vec![0.0; needed - 1];
            assert_eq!(
                wl_lacunary_witness(
                    0.5,
                    4,
                    short.as_mut_ptr(),
                    ptr::null_mut(),
                    needed - 1,
                    &mut len
                ),
                wl_status::WL_ERR_INVALID_ARGUMENT
            );
        }
    }

    #[test]
    fn status_names_and_version() {
        unsafe {
            let name = CStr::from_ptr(wl_status_name(wl_status::WL_OK));
            assert_eq!(name.to_str().unwrap(), "WL_OK");
            let name = CStr::from_ptr(wl_status_name(wl_status::WL_ERR_AMBIENT_MISMATCH));
            assert_eq!(name.to_str().unwrap(), "WL_ERR_AMBIENT_MISMATCH");
            let version = CStr::from_ptr(wl_version());
            assert!(!version.to_str().unwrap().is_empty());
        }
    }
}
