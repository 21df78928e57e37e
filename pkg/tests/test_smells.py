import json
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import god_class_source
from maintbench.codemodel.java import tokenize_java
from maintbench.codemodel.loc import count_java_loc
from maintbench.codemodel.structure import parse_java_structure
from maintbench.smells import (
    Catalog,
    CatalogError,
    default_catalog,
    detect_duplication,
    detect_lint_rules,
    detect_structural_smells,
    load_catalog,
)
from maintbench.smells.detectors import modifiers_in_order
from maintbench.smells.duplication import normalize


def structural(src, catalog=None):
    toks = tokenize_java(src)
    return detect_structural_smells(parse_java_structure(toks), count_java_loc(src), catalog)


def lint(src, catalog=None):
    toks = tokenize_java(src)
    return detect_lint_rules(parse_java_structure(toks), toks, catalog)


def rule_counts(findings):
    return Counter(f.rule_id for f in findings)


# -- catalog -------------------------------------------------------------------


def test_default_catalog_contents():
    cat = default_catalog()
    assert len(cat) == 11
    assert {r.id for r in cat.tier("structural")} == {
        "GodClass", "GodMethod", "LongParameterList", "DeepNesting", "HighMethodComplexity", "DuplicatedBlock",
    }
    minutes = {r.id: r.remediation_minutes for r in cat.tier("lint")}
    assert minutes == {
        "PublicMutableField": 10, "NonFinalAssignedOnceField": 5, "EmptyBody": 20,
        "ModifierOrder": 2, "NamingConvention": 5,
    }
    assert cat["GodClass"].param("max_code_lines") == 600
    assert cat["GodClass"].param("max_methods") == 25


def test_catalog_round_trip(tmp_path):
    path = tmp_path / "cat.json"
    path.write_text(json.dumps(default_catalog().to_json()))
    again = load_catalog(str(path))
    assert again.to_json() == default_catalog().to_json()


@pytest.mark.parametrize(
    "data",
    [
        {},
        {"rules": [{"id": "X", "tier": "style", "severity": "MINOR", "remediation_minutes": 1}]},
        {"rules": [{"id": "X", "tier": "lint", "severity": "MINOR", "remediation_minutes": 0}]},
        {"rules": [{"id": "X", "tier": "lint", "severity": "MINOR"}]},
        {"rules": [{"id": "X", "tier": "lint", "severity": "MINOR", "remediation_minutes": 1}] * 2},
    ],
)
def test_catalog_rejects_bad_entries(data):
    with pytest.raises(CatalogError):
        Catalog.from_json(data)


def test_catalog_thresholds_overridable():
    data = default_catalog().to_json()
    for rule in data["rules"]:
        if rule["id"] == "LongParameterList":
            rule["params"]["max_parameters"] = 1
    cat = Catalog.from_json(data)
    assert rule_counts(structural("class A { void f(int a, int b) { g(); } }", cat))["LongParameterList"] == 1


# -- structural ----------------------------------------------------------------


def test_god_class():
    found = structural(god_class_source(40, 24))
    assert rule_counts(found)["GodClass"] == 1


def test_god_class_needs_both_conditions():
    # many lines, few methods
    assert rule_counts(structural(god_class_source(10, 65)))["GodClass"] == 0
    # many methods, few lines
    assert rule_counts(structural(god_class_source(40, 4)))["GodClass"] == 0


def test_fig3_style_file_has_no_structural_findings(small_svg):
    assert small_svg.structural == []


@pytest.mark.parametrize("n,expected", [(4, 0), (5, 1)])
def test_long_parameter_list_boundary(n, expected):
    params = ", ".join(f"int p{i}" for i in range(n))
    assert rule_counts(structural(f"class A {{ void f({params}) {{ g(); }} }}"))["LongParameterList"] == expected


def test_parameter_list_ignores_abstract_methods():
    src = "interface A { void f(int a, int b, int c, int d, int e); }"
    assert structural(src) == []


@pytest.mark.parametrize("depth,expected", [(3, 0), (4, 1)])
def test_deep_nesting_boundary(depth, expected):
    body = "if (x) { " * depth + "y();" + " }" * depth
    assert rule_counts(structural(f"class A {{ void f() {{ {body} }} }}"))["DeepNesting"] == expected


@pytest.mark.parametrize("branches,expected", [(9, 0), (10, 1)])
def test_complexity_boundary(branches, expected):
    body = " ".join(f"if (x == {i}) {{ y(); }}" for i in range(branches))
    assert rule_counts(structural(f"class A {{ void f() {{ {body} }} }}"))["HighMethodComplexity"] == expected


@pytest.mark.parametrize("lines,expected", [(70, 0), (71, 1)])
def test_god_method_boundary(lines, expected):
    stmts = [f"    x = {i};" for i in range(lines - 2)]
    src = "class A {\n  void f() {\n" + "\n".join(stmts) + "\n  }\n}\n"
    assert rule_counts(structural(src))["GodMethod"] == expected


DUP_BODY = """
        int total = 0;
        for (int i = 0; i < items.length; i++) {
            if (items[i] > limit) {
                total = total + items[i] * 2;
            } else {
                total = total - 1;
            }
        }
        return total;
"""


def test_duplicated_method_bodies_detected():
    src = (
        "class A {\n  int f(int[] items, int limit) {" + DUP_BODY + "  }\n"
        "  int g(int[] values, int cap) {" + DUP_BODY.replace("items", "values").replace("limit", "cap") + "  }\n}\n"
    )
    found = [f for f in structural(src) if f.rule_id == "DuplicatedBlock"]
    assert len(found) == 1


def test_remediation_minutes_match_catalog():
    cat = default_catalog()
    src = god_class_source(40, 24) + "class B { public int Bad_Name; void F(int a, int b, int c, int d, int e) {} }"
    for f in structural(src) + lint(src):
        assert f.remediation_minutes == cat[f.rule_id].remediation_minutes
        assert f.tier == cat[f.rule_id].tier


# -- duplication ---------------------------------------------------------------

STATEMENTS = ["a = b + 1;", "if (x) { y(); }", "c += d;", "return e;", "f(g, 2);", 'h = "s";', "k++;"]


def brute_force_has_clone(keys, window):
    n = len(keys)
    for i in range(n):
        for j in range(i + window, n - window + 1):
            if keys[i : i + window] == keys[j : j + window]:
                return True
    return False


@given(st.lists(st.sampled_from(STATEMENTS), max_size=40), st.integers(10, 16))
@settings(max_examples=150, deadline=None)
def test_duplication_against_brute_force(stmts, window):
    toks = tokenize_java(" ".join(stmts))
    code = [t for t in toks if t.is_code]
    keys = [normalize(t) for t in code]
    pairs = detect_duplication(toks, window)
    assert bool(pairs) == brute_force_has_clone(keys, window)
    for p in pairs:
        assert p.length >= window
        assert p.first_offset + p.length <= p.second_offset  # spans never overlap
        assert keys[p.first_offset : p.first_offset + p.length] == keys[p.second_offset : p.second_offset + p.length]


@given(st.lists(st.sampled_from(STATEMENTS), min_size=4, max_size=20), st.sampled_from(["// note\n", "/* x */"]))
@settings(max_examples=100, deadline=None)
def test_duplication_invariant_under_comments(block, comment):
    text = " ".join(block)
    plain = detect_duplication(tokenize_java(text + "\n" + text), 10)
    commented = detect_duplication(tokenize_java(text + "\n" + comment + "\n" + text), 10)
    assert [(p.length, p.first_offset, p.second_offset) for p in plain] == [
        (p.length, p.first_offset, p.second_offset) for p in commented
    ]


def test_duplication_pasted_twice():
    body = " ".join(STATEMENTS * 2)
    pairs = detect_duplication(tokenize_java(body + "\n" + body), 40)
    assert pairs
    assert any(p.first_offset == 0 for p in pairs)


def test_duplication_distinct_tokens():
    text = " ".join(f"v{i} = {i};" for i in range(100))
    # every literal differs, so no window repeats
    assert detect_duplication(tokenize_java(text), 10) == []


def test_duplication_window_floor():
    with pytest.raises(ValueError):
        detect_duplication([], 5)


def test_duplication_renamed_copy():
    a = "x = y + 1; if (x > y) { y = x * 2; } else { y = x - 3; } z = x;"
    b = a.replace("x", "p").replace("y", "q").replace("z", "r")
    pairs = detect_duplication(tokenize_java(a + "\n" + b), 20)
    assert len(pairs) == 1 and pairs[0].first_start_line == 1 and pairs[0].second_start_line == 2


# -- lint ----------------------------------------------------------------------


def test_fig3_style_lint(small_svg):
    counts = rule_counts(small_svg.lint)
    assert counts == {"PublicMutableField": 1, "NonFinalAssignedOnceField": 1, "EmptyBody": 1}


def test_fig4_style_lint(mask_svg):
    assert len(mask_svg.lint) == 31
    assert mask_svg.structural == []


def test_canonical_constant_is_clean():
    assert lint("class A { static final int MAX = 3; }") == []


def test_lint_examples():
    src = """
    class A {
        public int count;
        private int size = 0;
        final static int LIMIT = 1;
        private int moving;
        void grow() { moving = 1; moving = 2; }
        void Run() { }
    }
    """
    counts = rule_counts(lint(src))
    assert counts == {
        "PublicMutableField": 1,
        "NonFinalAssignedOnceField": 1,  # size; moving is reassigned
        "ModifierOrder": 1,
        "NamingConvention": 1,
        "EmptyBody": 1,
    }


def test_modifier_order():
    assert modifiers_in_order(["public", "static", "final"])
    assert modifiers_in_order(["private", "abstract", "synchronized"])
    assert not modifiers_in_order(["static", "public"])
    assert not modifiers_in_order(["native", "public"])


MEMBERS = [
    "public int a{i};",
    "private int b{i};",
    "static public int C{i};",
    "protected final int d{i} = 1;",
    "void e{i}() {{}}",
    "int F{i}() {{ return 1; }}",
    "public static final int G{i} = 1;",
    "final private String h{i} = \"x\";",
]


@given(st.lists(st.sampled_from(MEMBERS), max_size=10), st.sampled_from(MEMBERS))
def test_lint_monotone_under_appending(members, extra):
    body = "\n".join(m.format(i=i) for i, m in enumerate(members))
    before = lint(f"class A {{\n{body}\n}}\n")
    after = lint(f"class A {{\n{body}\n{extra.format(i=len(members))}\n}}\n")
    key = lambda f: (f.rule_id, f.start_line, f.message)  # noqa: E731
    assert not Counter(map(key, before)) - Counter(map(key, after))


@given(st.lists(st.sampled_from(MEMBERS), max_size=10))
def test_lint_deterministic(members):
    src = "class A {\n" + "\n".join(m.format(i=i) for i, m in enumerate(members)) + "\n}\n"
    assert lint(src) == lint(src)
