//! C ABI over `qadeg`.
//!
//! Every function returns a [`QadegStatus`]; results go through out-pointers.
//! On failure, [`qadeg_last_error_message`] describes the error on the calling
//! thread. Objects are opaque handles released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qadeg::addressing::{AddressingScheme, Scheme1, Scheme2};
use qadeg::boolfn::TruthTable;
use qadeg::qsim::{PhaseOracle, QueryOracle};
use qadeg::{approxdeg, tails, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QadegStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Capacity = 4,
    Domain = 5,
    Construction = 6,
    Internal = 7,
    Panic = 8,
}

impl From<&Error> for QadegStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Capacity { .. } => QadegStatus::Capacity,
            Error::Parse { .. } => QadegStatus::Parse,
            Error::Domain(_) => QadegStatus::Domain,
            Error::Construction(_) | Error::Hypothesis { .. } => QadegStatus::Construction,
            Error::Internal(_) => QadegStatus::Internal,
            Error::InvalidArgument(_) | Error::Precondition(_) | Error::DimensionMismatch { .. } | Error::Io(_) => {
                QadegStatus::InvalidArgument
            }
        }
    }
}

/// Opaque truth table.
pub struct QadegTruthTable(TruthTable);

/// Opaque random-codebook addressing scheme.
pub struct QadegScheme1(Scheme1);

/// Opaque Hadamard-block addressing scheme.
pub struct QadegScheme2(Scheme2);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

enum Failure {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QadegStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QadegStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer: {what}"));
            QadegStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            set_last_error(e.to_string());
            QadegStatus::from(&e)
        }
        Err(_) => {
            set_last_error("panic inside qadeg".into());
            QadegStatus::Panic
        }
    }
}

unsafe fn as_ref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn as_out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn bits(values: *const u8, len: usize) -> Result<Vec<bool>, Failure> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if values.is_null() {
        return Err(Failure::Null("values"));
    }
    let raw: &[u8] = std::slice::from_raw_parts(values, len);
    Ok(raw.iter().map(|&b| b != 0).collect())
}

/// Message for the most recent failure on this thread, or NULL if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qadeg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Parses the text format: `n` on the first line, `2^n` characters of 0/1 on the second.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qadeg_truth_table_parse(text: *const c_char, out: *mut *mut QadegTruthTable) -> QadegStatus {
    guard(|| {
        let out = as_out(out, "out")?;
        if text.is_null() {
            return Err(Failure::Null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Error::InvalidArgument(format!("text is not UTF-8: {e}")))?;
        let tt: TruthTable = text.parse()?;
        *out = Box::into_raw(Box::new(QadegTruthTable(tt)));
        Ok(())
    })
}

/// Builds a table from `len = 2^n` bytes (non-zero means 1), row `r` at index `r`.
///
/// # Safety
/// `values` must point to `len` readable bytes and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qadeg_truth_table_from_bits(
    n: usize,
    values: *const u8,
    len: usize,
    out: *mut *mut QadegTruthTable,
) -> QadegStatus {
    guard(|| {
        let out = as_out(out, "out")?;
        let tt = TruthTable::new(n, bits(values, len)?)?;
        *out = Box::into_raw(Box::new(QadegTruthTable(tt)));
        Ok(())
    })
}

/// # Safety
/// `tt` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn qadeg_truth_table_free(tt: *mut QadegTruthTable) {
    if !tt.is_null() {
        drop(Box::from_raw(tt));
    }
}

/// # Safety
/// `tt` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qadeg_truth_table_n(tt: *const QadegTruthTable, out: *mut usize) -> QadegStatus {
    guard(|| {
        *as_out(out, "out")? = as_ref(tt, "tt")?.0.n();
        Ok(())
    })
}

/// # Safety
/// `tt` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qadeg_truth_table_degree(tt: *const QadegTruthTable, out: *mut usize) -> QadegStatus {
    guard(|| {
        *as_out(out, "out")? = as_ref(tt, "tt")?.0.degree();
        Ok(())
    })
}

/// Influence of variable `i` (1-based) as the reduced fraction `num / den`.
///
/// # Safety
/// `tt` must be a live handle; `num` and `den` valid.
#[no_mangle]
pub unsafe extern "C" fn qadeg_truth_table_influence(
    tt: *const QadegTruthTable,
    i: usize,
    num: *mut u64,
    den: *mut u64,
) -> QadegStatus {
    guard(|| {
        let num = as_out(num, "num")?;
        let den = as_out(den, "den")?;
        let inf = as_ref(tt, "tt")?.0.influence(i)?;
        *num = *inf.numer();
        *den = *inf.denom();
        Ok(())
    })
}

/// # Safety
/// `tt` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qadeg_truth_table_sensitivity(tt: *const QadegTruthTable, out: *mut usize) -> QadegStatus {
    guard(|| {
        *as_out(out, "out")? = as_ref(tt, "tt")?.0.sensitivity();
        Ok(())
    })
}

/// Smallest degree whose best uniform approximation error is at most `eps`.
///
/// # Safety
/// `tt` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qadeg_approx_degree(tt: *const QadegTruthTable, eps: f64, out: *mut usize) -> QadegStatus {
    guard(|| {
        *as_out(out, "out")? = approxdeg::approx_degree(&as_ref(tt, "tt")?.0, eps)?;
        Ok(())
    })
}

/// Best uniform error of a degree-`d` approximation of the 0/1 function.
///
/// # Safety
/// `tt` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qadeg_minimax_error(tt: *const QadegTruthTable, d: usize, out: *mut f64) -> QadegStatus {
    guard(|| {
        *as_out(out, "out")? = approxdeg::minimax_error(&as_ref(tt, "tt")?.0, d)?.epsilon;
        Ok(())
    })
}

/// `exp(-(d / 2e) t^{2/d})`, defined for `t >= (2e)^{d/2}`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qadeg_tail_bound(d: usize, t: f64, out: *mut f64) -> QadegStatus {
    guard(|| {
        *as_out(out, "out")? = tails::tail_bound(d, t)?;
        Ok(())
    })
}

/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qadeg_scheme1_generate(
    k: usize,
    m: usize,
    c: f64,
    seed: u64,
    out: *mut *mut QadegScheme1,
) -> QadegStatus {
    guard(|| {
        let out = as_out(out, "out")?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scheme = Scheme1::generate(k, m, c, &mut rng)?.with_seed(Some(seed));
        *out = Box::into_raw(Box::new(QadegScheme1(scheme)));
        Ok(())
    })
}

/// # Safety
/// `scheme` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qadeg_scheme1_free(scheme: *mut QadegScheme1) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}

/// # Safety
/// `scheme` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qadeg_scheme1_t_prime(scheme: *const QadegScheme1, out: *mut u32) -> QadegStatus {
    guard(|| {
        *as_out(out, "out")? = as_ref(scheme, "scheme")?.0.t_prime();
        Ok(())
    })
}

/// Writes codeword `i` (1-based) as `m` bytes of 0/1 into `buffer`.
///
/// # Safety
/// `scheme` must be a live handle and `buffer` must have room for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn qadeg_scheme1_codeword(
    scheme: *const QadegScheme1,
    i: usize,
    buffer: *mut u8,
    len: usize,
) -> QadegStatus {
    guard(|| {
        let s = &as_ref(scheme, "scheme")?.0;
        let word = i
            .checked_sub(1)
            .and_then(|j| s.codewords().get(j))
            .ok_or_else(|| Error::InvalidArgument(format!("codeword {i} outside 1..={}", s.k())))?;
        if len != word.len() {
            return Err(Error::DimensionMismatch {
                expected: word.len(),
                found: len,
            }
            .into());
        }
        if buffer.is_null() {
            return Err(Failure::Null("buffer"));
        }
        let dst = std::slice::from_raw_parts_mut(buffer, len);
        for (d, &b) in dst.iter_mut().zip(word) {
            *d = b as u8;
        }
        Ok(())
    })
}

/// # Safety
/// `scheme` must be a live handle, `x` must point to `len` bytes, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qadeg_scheme1_exact_success(
    scheme: *const QadegScheme1,
    x: *const u8,
    len: usize,
    out: *mut f64,
) -> QadegStatus {
    guard(|| {
        let out = as_out(out, "out")?;
        *out = as_ref(scheme, "scheme")?.0.exact_success(&bits(x, len)?)?;
        Ok(())
    })
}

/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qadeg_scheme2_new(s: usize, t: usize, out: *mut *mut QadegScheme2) -> QadegStatus {
    guard(|| {
        let out = as_out(out, "out")?;
        *out = Box::into_raw(Box::new(QadegScheme2(Scheme2::new(s, t)?)));
        Ok(())
    })
}

/// # Safety
/// `scheme` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qadeg_scheme2_free(scheme: *mut QadegScheme2) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}

/// Worst-case queries of one quantum address evaluation.
///
/// # Safety
/// `scheme` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qadeg_scheme2_query_budget(scheme: *const QadegScheme2, out: *mut u64) -> QadegStatus {
    guard(|| {
        *as_out(out, "out")? = as_ref(scheme, "scheme")?.0.query_budget();
        Ok(())
    })
}

/// Classical address (1-based) of the `m`-bit input `x`.
///
/// # Safety
/// `scheme` must be a live handle, `x` must point to `len` bytes, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qadeg_scheme2_address(
    scheme: *const QadegScheme2,
    x: *const u8,
    len: usize,
    out: *mut usize,
) -> QadegStatus {
    guard(|| {
        let out = as_out(out, "out")?;
        *out = as_ref(scheme, "scheme")?.0.address(&bits(x, len)?)?;
        Ok(())
    })
}

/// # Safety
/// `scheme` must be a live handle, `x` must point to `len` bytes, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qadeg_scheme2_exact_success(
    scheme: *const QadegScheme2,
    x: *const u8,
    len: usize,
    out: *mut f64,
) -> QadegStatus {
    guard(|| {
        let out = as_out(out, "out")?;
        *out = as_ref(scheme, "scheme")?.0.exact_success(&bits(x, len)?)?;
        Ok(())
    })
}

/// One simulated quantum evaluation with a seeded generator; reports the
/// address found and the queries charged.
///
/// # Safety
/// `scheme` must be a live handle, `x` must point to `len` bytes, outputs valid.
#[no_mangle]
pub unsafe extern "C" fn qadeg_scheme2_simulate(
    scheme: *const QadegScheme2,
    x: *const u8,
    len: usize,
    seed: u64,
    address: *mut usize,
    queries: *mut u64,
) -> QadegStatus {
    guard(|| {
        let address = as_out(address, "address")?;
        let queries = as_out(queries, "queries")?;
        let mut oracle = PhaseOracle::new(bits(x, len)?);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        *address = as_ref(scheme, "scheme")?.0.quantum_address(&mut oracle, &mut rng)?;
        *queries = oracle.query_count();
        Ok(())
    })
}
