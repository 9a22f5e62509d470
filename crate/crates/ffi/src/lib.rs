//! C ABI for the stratos engine.
//!
//! Spaces cross the boundary as opaque [`StratosSpace`] handles. Every
//! fallible call returns a [`StratosStatus`] and writes its result through an
//! out pointer only on success; the message for the most recent failure on
//! the calling thread is available from [`stratos_last_error`]. Perversities
//! are passed as text: a name (`zero`, `top`, `lower-middle`,
//! `upper-middle`, an integer) or `stratum <id> <value>` lines. Panics are
//! caught and reported as [`StratosStatus::Internal`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use stratos::cli::expr;
use stratos::complex::{emit_ssp, parse_perversity, parse_ssp, validate, ComplexError, Decomposition, Perversity, Space};
use stratos::ichain::{build_complex, build_qp_quotient, build_relative, homology, IchainError};
use stratos::pairing::{middle_pairing, relative_middle_pairing, PairingError};
use stratos::qlinalg::io::parse_matrix;
use stratos::qlinalg::{BilinearForm, LinalgError, Subspace};
use stratos::signatures::{maslov_index, verify_wall, MaslovProblem, SignatureError};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StratosStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    Contract = 5,
    TheoremFailed = 6,
    Internal = 7,
}

/// Opaque handle to a validated space.
pub struct StratosSpace {
    space: Space,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(StratosStatus, String);

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        let status = match e {
            ComplexError::Parse(_) => StratosStatus::Parse,
            ComplexError::Invalid(_) => StratosStatus::Validation,
            ComplexError::Precondition(_) | ComplexError::Perversity(_) => StratosStatus::Contract,
        };
        Failure(status, e.to_string())
    }
}

impl From<LinalgError> for Failure {
    fn from(e: LinalgError) -> Self {
        let status = if matches!(e, LinalgError::Parse { .. }) { StratosStatus::Parse } else { StratosStatus::Contract };
        Failure(status, e.to_string())
    }
}

impl From<expr::ExprError> for Failure {
    fn from(e: expr::ExprError) -> Self {
        match e {
            expr::ExprError::Syntax { .. } => Failure(StratosStatus::Parse, e.to_string()),
            expr::ExprError::Complex(c) => c.into(),
            _ => Failure(StratosStatus::Contract, e.to_string()),
        }
    }
}

macro_rules! contract_from {
    ($($t:ty),*) => {
        $(impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure(StratosStatus::Contract, e.to_string())
            }
        })*
    };
}
contract_from!(IchainError, PairingError, SignatureError);

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, recording any failure or panic; `Ok` clears the last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> StratosStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            StratosStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            StratosStatus::Internal
        }
    }
}

unsafe fn text<'a>(ptr: *const c_char) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(Failure(StratosStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| Failure(StratosStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn space<'a>(ptr: *const StratosSpace) -> Result<&'a Space, Failure> {
    ptr.as_ref().map(|s| &s.space).ok_or_else(|| Failure(StratosStatus::NullArgument, "null space handle".into()))
}

unsafe fn out<'a, T>(ptr: *mut T) -> Result<&'a mut T, Failure> {
    ptr.as_mut().ok_or_else(|| Failure(StratosStatus::NullArgument, "null out pointer".into()))
}

unsafe fn perversity(x: &Space, ptr: *const c_char) -> Result<Perversity, Failure> {
    let spec = parse_perversity(text(ptr)?).map_err(|e| Failure(StratosStatus::Parse, e.to_string()))?;
    Ok(spec.resolve(x)?)
}

fn validated(x: Space) -> Result<Box<StratosSpace>, Failure> {
    let report = validate(&x);
    if !report.is_valid() {
        return Err(Failure(StratosStatus::Validation, report.to_string()));
    }
    Ok(Box::new(StratosSpace { space: x }))
}

/// Message for the last failure on this thread; empty after a success. The
/// pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn stratos_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn stratos_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses and validates `.ssp` text.
///
/// # Safety
/// `ssp` must be a NUL-terminated string and the out pointer writable.
#[no_mangle]
pub unsafe extern "C" fn stratos_space_parse(ssp: *const c_char, out_space: *mut *mut StratosSpace) -> StratosStatus {
    guard(|| {
        let slot = out(out_space)?;
        *slot = Box::into_raw(validated(parse_ssp(text(ssp)?)?)?);
        Ok(())
    })
}

/// Builds a catalog space from an expression such as `glue(cone(s3),cone(s3))`.
///
/// # Safety
/// `expression` must be a NUL-terminated string and the out pointer writable.
#[no_mangle]
pub unsafe extern "C" fn stratos_space_make(expression: *const c_char, out_space: *mut *mut StratosSpace) -> StratosStatus {
    guard(|| {
        let slot = out(out_space)?;
        *slot = Box::into_raw(validated(expr::build(&expr::parse(text(expression)?)?)?)?);
        Ok(())
    })
}

/// # Safety
/// `space` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stratos_space_free(space: *mut StratosSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Dimension of the space, or `-1` for a null handle.
///
/// # Safety
/// `space` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stratos_space_dim(space: *const StratosSpace) -> i64 {
    space.as_ref().map_or(-1, |s| s.space.dim() as i64)
}

/// # Safety
/// `space` must be a live handle and the out pointer writable.
#[no_mangle]
pub unsafe extern "C" fn stratos_space_euler(space_ptr: *const StratosSpace, out_euler: *mut i64) -> StratosStatus {
    guard(|| {
        let x = space(space_ptr)?;
        *out(out_euler)? = x.euler_characteristic();
        Ok(())
    })
}

/// `.ssp` text of the space; free it with [`stratos_string_free`].
///
/// # Safety
/// `space` must be a live handle and the out pointer writable.
#[no_mangle]
pub unsafe extern "C" fn stratos_space_emit(space_ptr: *const StratosSpace, out_text: *mut *mut c_char) -> StratosStatus {
    guard(|| {
        let x = space(space_ptr)?;
        let slot = out(out_text)?;
        *slot = CString::new(emit_ssp(x)).map_err(|_| Failure(StratosStatus::Internal, "NUL in emitted text".into()))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stratos_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `dim I^p H_degree`, or `dim I^{q/p} H_degree` when `q` is non-null;
/// `relative` divides out the boundary.
///
/// # Safety
/// `space` must be a live handle, `p` a NUL-terminated string, `q` null or
/// NUL-terminated, and the out pointer writable.
#[no_mangle]
pub unsafe extern "C" fn stratos_ih_dim(
    space_ptr: *const StratosSpace,
    p: *const c_char,
    q: *const c_char,
    degree: usize,
    relative: bool,
    out_dim: *mut usize,
) -> StratosStatus {
    guard(|| {
        let x = space(space_ptr)?;
        let slot = out(out_dim)?;
        if degree > x.dim() {
            return Err(Failure(StratosStatus::Contract, format!("degree {degree} exceeds dimension {}", x.dim())));
        }
        let p = perversity(x, p)?;
        let boundary = relative.then(|| x.boundary_mask());
        let c = if q.is_null() {
            match boundary {
                Some(b) => build_relative(x, b, &p)?,
                None => build_complex(x, &p)?,
            }
        } else {
            build_qp_quotient(x, boundary, &p, &perversity(x, q)?)?
        };
        *slot = homology(&c, degree).dim();
        Ok(())
    })
}

/// Signature of the middle pairing, relative to the boundary when there is one.
///
/// # Safety
/// `space` must be a live handle, `p` and `q` NUL-terminated, and the out pointer writable.
#[no_mangle]
pub unsafe extern "C" fn stratos_signature(
    space_ptr: *const StratosSpace,
    p: *const c_char,
    q: *const c_char,
    max_subdivisions: usize,
    out_sigma: *mut i64,
) -> StratosStatus {
    guard(|| {
        let x = space(space_ptr)?;
        let slot = out(out_sigma)?;
        let (p, q) = (perversity(x, p)?, perversity(x, q)?);
        let m = if x.has_boundary() {
            relative_middle_pairing(x, &p, &q, max_subdivisions)?
        } else {
            middle_pairing(x, &p, &q, max_subdivisions)?
        };
        *slot = m.signature()?;
        Ok(())
    })
}

/// Maslov index of the column spans of `a`, `b`, `c` in the skew form
/// `form`, all given in the plain-text matrix format.
///
/// # Safety
/// All strings must be NUL-terminated and the out pointer writable.
#[no_mangle]
pub unsafe extern "C" fn stratos_maslov(
    form: *const c_char,
    a: *const c_char,
    b: *const c_char,
    c: *const c_char,
    out_index: *mut i64,
) -> StratosStatus {
    guard(|| {
        let slot = out(out_index)?;
        let f = parse_matrix(text(form)?)?;
        let n = f.rows();
        let span = |ptr: *const c_char| -> Result<Subspace, Failure> {
            let m = parse_matrix(text(ptr)?)?;
            if m.rows() != n {
                return Err(Failure(StratosStatus::Contract, format!("expected {n} rows, found {}", m.rows())));
            }
            Ok(Subspace::column_space(&m))
        };
        let problem = MaslovProblem::new(BilinearForm::new(f)?, span(a)?, span(b)?, span(c)?)?;
        *slot = maslov_index(&problem)?;
        Ok(())
    })
}

/// Non-additivity check on a closed space split along its bicollar. Writes
/// the residual; returns [`StratosStatus::TheoremFailed`] when the check
/// does not hold (the residual is still written).
///
/// # Safety
/// `space` must be a live handle, `p` and `q` NUL-terminated, and the out pointer writable.
#[no_mangle]
pub unsafe extern "C" fn stratos_wall_verify(
    space_ptr: *const StratosSpace,
    p: *const c_char,
    q: *const c_char,
    max_subdivisions: usize,
    out_residual: *mut i64,
) -> StratosStatus {
    guard(|| {
        let x = space(space_ptr)?;
        let slot = out(out_residual)?;
        let (p, q) = (perversity(x, p)?, perversity(x, q)?);
        let d = Decomposition::from_space(x.clone())?;
        let r = verify_wall(&d, &p, &q, max_subdivisions)?;
        *slot = r.residual;
        if r.holds() {
            Ok(())
        } else {
            Err(Failure(StratosStatus::TheoremFailed, r.to_string()))
        }
    })
}
