use gaq_core::classify::{cache_dir, cache_path};
use std::path::Path;

// Kept in its own binary: it mutates the process environment.
#[test]
fn environment_variable_wins() {
    let requested = Path::new("/tmp/requested");
    std::env::remove_var("QF_CACHE_DIR");
    assert_eq!(cache_dir(Some(requested)).unwrap(), requested);
    assert!(cache_dir(None).is_none());
    std::env::set_var("QF_CACHE_DIR", "/tmp/from-env");
    assert_eq!(cache_dir(Some(requested)).unwrap(), Path::new("/tmp/from-env"));
    assert_eq!(cache_dir(None).unwrap(), Path::new("/tmp/from-env"));
    std::env::set_var("QF_CACHE_DIR", "");
    assert_eq!(cache_dir(Some(requested)).unwrap(), requested);
    let p = cache_path(Path::new("/c"), 12);
    assert!(p.to_string_lossy().starts_with("/c/classify-12-v"));
}
