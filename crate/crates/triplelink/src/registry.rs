//! Named built-in links.

use std::path::Path;

use triplelink_core::linkmodel::{
    builtin_borromean, builtin_clasp, builtin_generic_borromean, builtin_great_circles, builtin_lpqr, builtin_unlink, Link3,
};

use crate::{files, Error, Result};

/// Names accepted by [`builtin`]; `lpqr:p,q,r` takes three integers.
pub const BUILTINS: [&str; 6] = ["borromean", "great-circles", "unlink", "lpqr:p,q,r", "clasp", "generic-borromean"];

/// Whether the built-in is in open-book position.
pub fn is_generic_builtin(name: &str) -> bool {
    matches!(name, "clasp" | "generic-borromean") || name.starts_with("lpqr:")
}

/// `Ok(None)` if `name` is not a built-in.
pub fn builtin(name: &str) -> Result<Option<Link3>> {
    Ok(Some(match name {
        "borromean" => builtin_borromean(),
        "great-circles" => builtin_great_circles(),
        "unlink" => builtin_unlink(),
        "clasp" => builtin_clasp(),
        "generic-borromean" => builtin_generic_borromean(),
        _ => match name.strip_prefix("lpqr:") {
            Some(args) => {
                let (p, q, r) = parse_triple(args)?;
                builtin_lpqr(p, q, r)?
            }
            None => return Ok(None),
        },
    }))
}

/// A built-in name or the path of a link file.
pub fn resolve_link(source: &str) -> Result<Link3> {
    if let Some(link) = builtin(source)? {
        return Ok(link);
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(Error::Usage(format!("{source:?} is neither a built-in ({}) nor a file", BUILTINS.join(", "))));
    }
    files::load_link(path)
}

/// `"p,q,r"` as three integers.
pub fn parse_triple(s: &str) -> Result<(i64, i64, i64)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Error::Usage(format!("expected three integers p,q,r, got {s:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let v: Vec<i64> = parts.iter().map(|p| p.parse().map_err(|_| bad())).collect::<Result<_>>()?;
    Ok((v[0], v[1], v[2]))
}
