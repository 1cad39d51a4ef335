mod common;

use daml_core::dsl::{tokenize, EntityId, TokenKind};
use daml_core::templates::Template;
use daml_core::{parse, parse_named, Rule};
use proptest::prelude::*;

/// Line/column of a byte offset, 1-based, counting chars.
fn line_col(text: &str, offset: usize) -> (u32, u32) {
    let before = &text[..offset];
    let line = before.matches('\n').count() as u32 + 1;
    let col = before.rsplit('\n').next().unwrap().chars().count() as u32 + 1;
    (line, col)
}

#[test]
fn spans_point_at_their_entities() {
    for t in Template::ALL {
        let text = t.source();
        let parsed = parse_named(text, "t.daml");
        let model = parsed.model.as_ref().unwrap();
        assert!(parsed.spans.len() > model.nodes().len());
        for (id, span) in parsed.spans.iter() {
            let range = span.byte_range();
            assert!(
                range.start <= range.end && range.end <= text.len(),
                "{id:?}"
            );
            assert_eq!(
                line_col(text, range.start),
                (span.start.line, span.start.column)
            );
            assert_eq!(line_col(text, range.end), (span.end.line, span.end.column));
            assert_eq!(&*span.file, "t.daml");
            let src = &text[range];
            let want = match id {
                EntityId::Model => "architecture",
                EntityId::Node(_) => "node",
                EntityId::Port(_, _) => "",
                EntityId::Representation(_) => "representation",
                EntityId::Behavior(_) => "behavior",
                EntityId::Element(_, _) => "",
                EntityId::Link(_, _) => "link",
                EntityId::Connection(_) => "connection",
            };
            assert!(src.starts_with(want), "{id:?} spans {src:?}");
        }
        for (i, node) in model.nodes().iter().enumerate() {
            let span = parsed.spans.get(EntityId::Node(i)).unwrap();
            let src = &text[span.byte_range()];
            assert!(src.contains(&daml_core::dsl::quote(node.name.as_str())));
            assert!(src.ends_with('}'));
        }
    }
}

#[test]
fn each_seeded_error_is_reported() {
    let base = Template::Dosm.source();
    // Drop the port name of the first out port in each of k nodes, so
    // recovery must report every one.
    let lines: Vec<&str> = base.lines().collect();
    let mut out_ports: Vec<usize> = Vec::new();
    let mut in_node = false;
    for (i, l) in lines.iter().enumerate() {
        if l.trim_start().starts_with("node ") {
            in_node = true;
        } else if in_node && l.trim_start().starts_with("out port") {
            out_ports.push(i);
            in_node = false;
        }
    }
    assert!(out_ports.len() >= 6);
    for k in 1..=out_ports.len() {
        let broken: Vec<String> = lines
            .iter()
            .enumerate()
            .map(|(i, l)| {
                if out_ports[..k].contains(&i) {
                    "    out port".to_string()
                } else {
                    l.to_string()
                }
            })
            .collect();
        let parsed = parse(&broken.join("\n"));
        assert!(parsed.model.is_none());
        let p001: Vec<u32> = parsed
            .diagnostics
            .iter()
            .filter(|d| d.rule == Rule::P001)
            .map(|d| d.span.as_ref().unwrap().start.line)
            .collect();
        assert!(p001.len() >= k, "k={k}: {:?}", parsed.diagnostics);
    }
}

#[test]
fn lexer_reports_bad_strings_and_characters() {
    let lexed = tokenize("node \"open\nnode @ \"bad \\q escape\"", "x");
    let rules: Vec<Rule> = lexed.diagnostics.iter().map(|d| d.rule).collect();
    assert_eq!(rules, [Rule::L001, Rule::L002, Rule::L003]);
    let res = parse("architecture A level HLA { node \"x }");
    assert!(res.diagnostics.iter().any(|d| d.rule == Rule::L001));
    assert!(res.model.is_none());
}

#[test]
fn syntax_error_messages_name_the_expectation() {
    let res = parse("architecture A level HLA {\n  node \"A\" {\n    out port\n  }\n}\n");
    let d = &res.diagnostics[0];
    assert_eq!(d.rule, Rule::P001);
    assert!(d.message.starts_with("expected"), "{}", d.message);
    let span = d.span.as_ref().unwrap();
    assert_eq!(span.start.line, 4);
}

fn gap_is_trivia(gap: &str) -> bool {
    gap.lines().all(|l| {
        let t = l.trim();
        t.is_empty() || t.starts_with("//")
    })
}

#[test]
fn tokens_reconstruct_the_source() {
    for t in Template::ALL {
        let text = t.source();
        let lexed = tokenize(text, "t");
        assert!(lexed.diagnostics.is_empty());
        let mut at = 0;
        for tok in &lexed.tokens {
            let r = tok.span.byte_range();
            assert!(
                gap_is_trivia(&text[at..r.start]),
                "{:?}",
                &text[at..r.start]
            );
            assert_eq!(&text[r.clone()], tok.lexeme);
            at = r.end;
        }
        assert!(gap_is_trivia(&text[at..]));
        let keywords = lexed
            .tokens
            .iter()
            .filter(|t| matches!(t.kind, TokenKind::Keyword(_)))
            .count();
        assert!(keywords > 0);
    }
}

proptest! {
    #[test]
    fn lexer_is_total_and_ordered(text in any::<String>()) {
        let lexed = tokenize(&text, "p");
        let mut at = 0;
        for tok in &lexed.tokens {
            let r = tok.span.byte_range();
            prop_assert!(r.start >= at && r.end > r.start && r.end <= text.len());
            prop_assert_eq!(&text[r.clone()], tok.lexeme.as_str());
            at = r.end;
        }
        for d in &lexed.diagnostics {
            prop_assert!(matches!(d.rule, Rule::L001 | Rule::L002 | Rule::L003));
        }
    }

    #[test]
    fn parser_is_total(text in "[a-z{}\\[\\]():;,.\" ->\n]{0,80}") {
        let res = parse(&text);
        let errors = res.diagnostics.iter().any(|d| d.is_error());
        prop_assert_eq!(res.model.is_some(), !errors);
    }

    #[test]
    fn truncated_templates_never_panic(cut in 0usize..4000) {
        let text = Template::Dosm.source();
        let mut cut = cut.min(text.len());
        while !text.is_char_boundary(cut) {
            cut -= 1;
        }
        let res = parse(&text[..cut]);
        if cut < text.len() - 2 {
            prop_assert!(res.model.is_none());
            prop_assert!(!res.diagnostics.is_empty());
        }
    }
}
