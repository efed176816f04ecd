use std::process::{Command, Output};

use proptest::prelude::*;
use specseq::render::{parse_machine, render_page, Cell, PageView, Style};
use specseq::run::{run, Options};

fn specseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specseq")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bundled_scenarios_match_golden_output() {
    for (name, expected) in [
        ("simplicial-delta", include_str!("../scenarios/simplicial-delta.expected")),
        ("square-zero-koszul", include_str!("../scenarios/square-zero-koszul.expected")),
    ] {
        let o = specseq(&["run", name]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o), expected, "{name}");
    }
}

#[test]
fn output_is_deterministic_across_runs_and_thread_counts() {
    for (_, text) in specseq::BUNDLED {
        let a = run(text, &Options::default());
        let b = run(text, &Options::default());
        let c = run(text, &Options { threads: 3, ..Options::default() });
        assert_eq!(a, b);
        assert_eq!(a, c);
    }
}

#[test]
fn list_names_bundled_scenarios() {
    let o = specseq(&["list"]);
    assert_eq!(stdout(&o), "simplicial-delta\nsquare-zero-koszul\n");
}

#[test]
fn runs_a_scenario_file_with_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.scn");
    std::fs::write(&path, "field QQ\nbuild simplicial\nvertices a b\nlevel a b\nlevel a, b\nqueries\npage 1\n").unwrap();
    let o = specseq(&["run", path.to_str().unwrap(), "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("check: ok"), "{out}");
    // Reduced homology: the two points carry one class, the edge relative to
    // its endpoints another, and d^1 between them is an isomorphism.
    assert!(out.contains("E^1\nq\\p  0  1\n  0  1  1\n"), "{out}");
}

#[test]
fn empty_query_list_exits_cleanly_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.scn");
    std::fs::write(&path, "field QQ\nbuild simplicial\nvertices a\nlevel a\nqueries\n").unwrap();
    let o = specseq(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty() && o.stderr.is_empty());
}

#[test]
fn exit_code_contract() {
    let code = |text: &str| run(text, &Options::default()).code;
    // Malformed input.
    assert_eq!(code("field QQ\nbuild simplicial\nvertices a\nlevel b\n"), 2);
    assert_eq!(code("field QQ\nbuild graded\nvars x\nrelations x^2 + x\nresolution 2\nfilter koszul\n"), 2);
    assert_eq!(code("field QQ\nbuild graded\nvars x y\nrelations x^2\nresolution 2\nfilter koszul\n"), 2);
    // d∘d ≠ 0.
    let bad = "field QQ\nbuild truncation\ncomplex 0 2\nlabels 0 a\nlabels 1 b\nlabels 2 c\n\
               diff 1\n1 1 QQ\n0 0 1\ndiff 2\n1 1 QQ\n0 0 1\nend\n";
    assert_eq!(code(bad), 1);
    // Layers that are not nested.
    let unnested = "field QQ\nbuild explicit\ncomplex 0 0\nlabels 0 a b\nend\nfiltration 0 2\n\
                    layer 0 0\n2 1 QQ\n0 0 1\nlayer 1 0\n2 1 QQ\n1 0 1\nend\n";
    assert_eq!(code(unnested), 1);
    assert_eq!(specseq(&["run", "no-such-scenario"]).status.code(), Some(2));
    assert_eq!(specseq(&["run", "simplicial-delta", "--field", "ZZ/4"]).status.code(), Some(2));
}

#[test]
fn field_override_keeps_dimensions_for_the_simplicial_example() {
    let base = specseq(&["run", "simplicial-delta"]);
    let mod2 = specseq(&["run", "simplicial-delta", "--field", "ZZ/2"]);
    assert_eq!(mod2.status.code(), Some(0));
    // The only difference is the sign of d^2, which is 1 over ZZ/2.
    assert_eq!(stdout(&base).replace("| -1 |", "| 1 |"), stdout(&mod2));
}

#[test]
fn machine_pages_parse_back() {
    let o = specseq(&["run", "square-zero-koszul", "--machine"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let page_lines: String = text
        .lines()
        // Graded page lines are the ones carrying `deg:k` fields.
        .filter(|l| !l.starts_with("image-length") && l.split_whitespace().nth(4).is_some_and(|t| t.contains(':')))
        .map(|l| format!("{l}\n"))
        .collect();
    let pages = parse_machine(&page_lines).unwrap();
    assert_eq!(pages.iter().map(|p| p.r).collect::<Vec<_>>(), vec![1, 2, 3, 8]);
    let e1 = &pages[0];
    let row0: Vec<usize> = (0..4).map(|p| e1.cells.iter().find(|c| c.p == p && c.q == 0).unwrap().dim).collect();
    assert_eq!(row0, vec![1, 2, 4, 8]);
    assert!(text.contains("image-length 2 3 0 6 3:6\n"));
    assert!(text.contains("image-length 3 3 0 2 3:2\n"));
}

fn arb_view() -> impl Strategy<Value = PageView> {
    let cell = (-5i64..5, -5i64..5, 0usize..40, prop::option::of(prop::collection::btree_map(-9i64..9, 1usize..9, 1..4)));
    (0i64..9, prop::collection::vec(cell, 0..12)).prop_map(|(r, cells)| {
        let mut seen = std::collections::BTreeSet::new();
        let cells = cells
            .into_iter()
            .filter(|(p, q, ..)| seen.insert((*p, *q)))
            .map(|(p, q, dim, degrees)| Cell { p, q, dim, degrees })
            .collect();
        PageView { r, cells }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn machine_round_trip(view in arb_view()) {
        let text = render_page(&view, Style::Machine);
        let back = parse_machine(&text).unwrap();
        let nonzero: Vec<Cell> = view.nonzero().cloned().collect();
        if nonzero.is_empty() {
            prop_assert!(back.is_empty());
        } else {
            prop_assert_eq!(back.len(), 1);
            prop_assert_eq!(back[0].r, view.r);
            prop_assert_eq!(&back[0].cells, &nonzero);
        }
    }
}
