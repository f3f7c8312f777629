//! Rules that look only at the characters of the URI.

use super::{Evidence, Finding, Location, RuleId};
use crate::corpus::ApiEntry;
use crate::uri::{detect_file_extension, detect_version_segment, scan_nonstandard_chars, CharCategory, ResourceUri};

/// Lower camel case: starts lowercase, ASCII letters and digits only.
fn is_camel_case(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_lowercase()) && s.chars().all(|c| c.is_ascii_alphanumeric())
}

/// Upper-case letters outside camel case, extensions, underscores and a
/// trailing slash. Template parameters may use capitals and underscores.
pub fn detect_amorphous(entry: &ApiEntry, uri: &ResourceUri) -> Finding {
    let mut evidence = Vec::new();
    for (i, node) in uri.literal_nodes() {
        if node.raw.chars().any(char::is_uppercase) && !is_camel_case(&node.raw) {
            evidence.push(Evidence::new(
                Location::Node(i),
                format!("`{}` contains upper-case letters", node.raw),
            ));
        }
        if node.raw.contains('_') {
            evidence.push(Evidence::new(Location::Node(i), format!("`{}` contains an underscore", node.raw)));
        }
    }
    if let Some((i, last)) = uri.nodes.iter().enumerate().next_back() {
        if let Some(ext) = detect_file_extension(last) {
            evidence.push(Evidence::new(
                Location::Node(i),
                format!("`{}` ends with file extension .{ext}", last.raw),
            ));
        }
    }
    if uri.has_trailing_slash {
        evidence.push(Evidence::new(Location::Uri, "trailing slash"));
    }
    Finding::from_evidence(&entry.id, RuleId::AmorphousUri, evidence)
}

pub fn detect_unversioned(entry: &ApiEntry, uri: &ResourceUri) -> Finding {
    let evidence = match detect_version_segment(uri) {
        Some(_) => Vec::new(),
        None => vec![Evidence::new(Location::Uri, "no version segment in path")],
    };
    Finding::from_evidence(&entry.id, RuleId::UnversionedUri, evidence)
}

pub fn detect_non_standard(entry: &ApiEntry, uri: &ResourceUri) -> Finding {
    let evidence = scan_nonstandard_chars(uri)
        .into_iter()
        .map(|hit| {
            let what = match hit.category {
                CharCategory::NonAsciiLetter => "non-ASCII letter",
                CharCategory::BlankSpace => "blank space",
                CharCategory::DoubleHyphen => "double hyphen",
                CharCategory::UnknownCharacter => "unknown character",
            };
            Evidence::new(Location::Offset(hit.position), format!("{what} {:?}", hit.character))
        })
        .collect();
    Finding::from_evidence(&entry.id, RuleId::NonStandardUri, evidence)
}
