//! Text formats, page rendering and the scenario runner behind the `specseq`
//! binary.

pub mod formats;
pub mod render;
pub mod run;
pub mod scenario;

/// Scenarios shipped with the binary, by name.
pub const BUNDLED: &[(&str, &str)] = &[
    ("simplicial-delta", include_str!("../scenarios/simplicial-delta.scn")),
    ("square-zero-koszul", include_str!("../scenarios/square-zero-koszul.scn")),
];

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}
