//! `.gens` files: first line the degree, then one permutation per line as
//! images or cycles. Lines starting with '#' are comments.

use std::path::Path;

use crate::error::{Error, Result};
use crate::perm::Perm;

pub fn parse_gens(text: &str) -> Result<(usize, Vec<Perm>)> {
    let mut degree: Option<usize> = None;
    let mut perms = Vec::new();
    let mut offset = 0usize;
    for raw in text.split_inclusive('\n') {
        let pos = offset;
        offset += raw.len();
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let n = match degree {
            None => {
                let n = line.parse::<usize>().map_err(|_| Error::Parse { pos, msg: format!("expected degree, found '{line}'") })?;
                if n == 0 {
                    return Err(Error::Parse { pos, msg: "degree must be positive".into() });
                }
                degree = Some(n);
                continue;
            }
            Some(n) => n,
        };
        let p = if line.starts_with('(') {
            Perm::parse_cycles(n, line)
        } else {
            let imgs: std::result::Result<Vec<usize>, _> = line.split_whitespace().map(|t| t.parse::<usize>()).collect();
            let imgs = imgs.map_err(|_| Error::Parse { pos, msg: format!("bad image list '{line}'") })?;
            if imgs.len() != n {
                return Err(Error::DegreeMismatch { expected: n, got: imgs.len() });
            }
            Perm::from_images(imgs)
        }
        .map_err(|e| Error::Parse { pos, msg: e.to_string() })?;
        perms.push(p);
    }
    let n = degree.ok_or_else(|| Error::Parse { pos: 0, msg: "missing degree line".into() })?;
    if perms.is_empty() {
        perms.push(Perm::identity(n));
    }
    Ok((n, perms))
}

pub fn read_gens(path: &Path) -> Result<(usize, Vec<Perm>)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_gens(&text)
}

/// Writes generators in cycle notation with an optional comment header.
pub fn format_gens(degree: usize, gens: &[Perm], comment: &str) -> String {
    let mut s = String::new();
    for line in comment.lines() {
        s.push_str("# ");
        s.push_str(line);
        s.push('\n');
    }
    s.push_str(&format!("{degree}\n"));
    for g in gens {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_notations() {
        let (n, g) = parse_gens("# s3\n3\n1 0 2\n(0 1 2)\n\n").unwrap();
        assert_eq!(n, 3);
        assert_eq!(g.len(), 2);
        assert_eq!(g[0], Perm::parse_cycles(3, "(0 1)").unwrap());
    }

    #[test]
    fn round_trip() {
        let g = vec![Perm::parse_cycles(5, "(0 4)(1 2 3)").unwrap()];
        let (n, h) = parse_gens(&format_gens(5, &g, "test")).unwrap();
        assert_eq!((n, h), (5, g));
    }

    #[test]
    fn errors() {
        assert!(parse_gens("").is_err());
        assert!(parse_gens("3\n0 1\n").is_err());
        assert!(parse_gens("3\n0 0 1\n").is_err());
    }
}
