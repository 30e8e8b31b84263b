pub mod construct;
pub mod lift;
pub mod reproduce;
pub mod scan;
pub mod verify;

pub(crate) fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
