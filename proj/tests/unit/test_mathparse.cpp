#include <doctest.h>

#include <algorithm>
#include <set>

#include "mathreuse/mathparse/evaluate.hpp"
#include "mathreuse/mathparse/normalize.hpp"
#include "mathreuse/mathparse/parser.hpp"
#include "mathreuse/mathparse/pattern.hpp"
#include "mathreuse/mathparse/relator.hpp"
#include "mathreuse/mathparse/render.hpp"
#include "mathreuse/mathparse/structure.hpp"
#include "mathreuse/util/utf8.hpp"
#include "support/expr_gen.hpp"

using namespace mathreuse;
using namespace mathreuse::mathparse;

namespace {

std::vector<std::pair<TokenKind, std::string>> kinds(std::string_view src) {
    std::vector<std::pair<TokenKind, std::string>> out;
    for (const auto& t : tokenize_latex(src)) out.emplace_back(t.kind, t.text);
    return out;
}

std::string sx(std::string_view src) { return to_sexpr(parse_latex(src)); }

std::string joined_lexemes(std::string_view src) {
    std::string out;
    for (const auto& t : tokenize_latex(src)) out += t.text;
    return out;
}

}  // namespace

TEST_SUITE("mathparse") {

TEST_CASE("tokenize basic fragments") {
    using K = TokenKind;
    CHECK(kinds("x+3") == decltype(kinds("")){{K::Identifier, "x"}, {K::Operator, "+"}, {K::Number, "3"}});
    CHECK(tokenize_latex("").empty());
    CHECK(kinds("\\frac{a}{b}") == decltype(kinds("")){{K::Command, "\\frac"},
                                                        {K::OpenGroup, "{"},
                                                        {K::Identifier, "a"},
                                                        {K::CloseGroup, "}"},
                                                        {K::OpenGroup, "{"},
                                                        {K::Identifier, "b"},
                                                        {K::CloseGroup, "}"}});
}

TEST_CASE("tokenize keeps unknown commands and counts code points") {
    const auto toks = tokenize_latex("\\foo{x}≤ y");
    REQUIRE(toks.size() == 6);
    CHECK(toks[0].kind == TokenKind::Command);
    CHECK(toks[0].text == "\\foo");
    CHECK(toks[4].kind == TokenKind::Relation);
    CHECK(toks[4].offset == 7);
    CHECK(toks[5].offset == 9);
}

TEST_CASE("tokenize reports the first unmatched opener") {
    try {
        tokenize_latex("a+{b+{c}");
        FAIL("expected error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 2);
    }
    try {
        tokenize_latex("a}");
        FAIL("expected error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 1);
    }
    try {
        tokenize_latex("(a}");
        FAIL("expected error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 0);
    }
}

TEST_CASE("half-open intervals balance") { CHECK_NOTHROW(tokenize_latex("[0,1)")); }

TEST_CASE("parse examples") {
    CHECK(sx("a+2=0") == "(Relation (OpApply + (Identifier a) (Number 2)) = (Number 0))");
    CHECK(sx("x \\leq 1") == "(Relation (Identifier x) \\leq (Number 1))");
    CHECK(sx("f(x)") == "(FuncApply (Identifier f) (Identifier x))");
}

TEST_CASE("precedence") {
    CHECK(sx("a+bc") == "(OpApply + (Identifier a) (OpApply juxt (Identifier b) (Identifier c)))");
    CHECK(sx("a-b-c") == "(OpApply - (OpApply - (Identifier a) (Identifier b)) (Identifier c))");
    CHECK(sx("x^2y") == "(OpApply juxt (Scripted sup (Identifier x) (Number 2)) (Identifier y))");
    CHECK(sx("-ab") == "(OpApply - (OpApply juxt (Identifier a) (Identifier b)))");
    CHECK(sx("a\\cdot -b") == "(OpApply \\cdot (Identifier a) (OpApply - (Identifier b)))");
    CHECK(sx("2\\sin x") == "(OpApply juxt (Number 2) (FuncApply (OpApply \\sin) (Identifier x)))");
    CHECK(sx("f(x)^2") == "(Scripted sup (FuncApply (Identifier f) (Identifier x)) (Number 2))");
}

TEST_CASE("relation chains are one node") {
    const ExprNode e = parse_latex("a=b\\leq c");
    CHECK(e.kind == ExprKind::Relation);
    CHECK(e.children.size() == 3);
    CHECK(e.relators == std::vector<std::string>{"=", "\\leq"});
    CHECK(e.relator_spans[1] == Interval{3, 7});
}

TEST_CASE("scripted identifiers fold") {
    CHECK(sx("x_1+x_{ij}") == "(OpApply + (Identifier x_1) (Identifier x_{ij}))");
    CHECK(sx("x_1^2") == "(Scripted sup (Identifier x_1) (Number 2))");
    CHECK(sx("x_{12}") == "(Identifier x_12)");
    CHECK(render_latex(parse_latex("x_{12}+y_{ij}")) == "x_{12}+y_{ij}");
    CHECK(sx("\\mathbf{v}") == "(Identifier \\mathbf{v})");
}

TEST_CASE("unknown macros are opaque operators") {
    CHECK(sx("\\foo{x}+1") == "(OpApply + (OpApply \\foo (Identifier x)) (Number 1))");
    CHECK(sx("\\zeta") == "(Identifier \\zeta)");
}

TEST_CASE("trailing punctuation and sequences") {
    CHECK(sx("F=ma.") == sx("F=ma"));
    CHECK(parse_latex("a=b, c=d").kind == ExprKind::Sequence);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_latex(""), ParseError);
    try {
        parse_latex("a+");
        FAIL("expected error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 1);
    }
    CHECK_THROWS_AS(parse_latex("a="), ParseError);
}

TEST_CASE("id example formulas parse") {
    CHECK_NOTHROW(parse_latex("\\langle x+y,x+y \\rangle \\leq \\lVert x \\rVert^2 + 2 \\lvert \\langle x,y \\rangle \\rvert + \\lVert y \\rVert^2"));
    const ExprNode z = parse_latex("z=re^{i\\phi}");
    CHECK(identifiers(z) == std::vector<std::string>{"z", "r", "e", "i", "\\phi"});
}

TEST_CASE("maximal expressions") {
    auto strs = [](std::string_view src) {
        std::vector<std::string> out;
        for (const auto& m : maximal_expressions(parse_latex(src))) out.push_back(render_latex(m));
        return out;
    };
    CHECK(strs("a+2=0") == std::vector<std::string>{"a+2", "0"});
    CHECK(strs("x+1") == std::vector<std::string>{"x+1"});
    CHECK(strs("a=b=c") == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("identifiers") {
    CHECK(identifiers(parse_latex("F=ma")) == std::vector<std::string>{"F", "m", "a"});
    CHECK(identifiers(parse_latex("a+2=0")) == std::vector<std::string>{"a"});
    CHECK(identifiers(parse_latex("\\langle x+y,x+y\\rangle")) == std::vector<std::string>{"x", "y", "x", "y"});
    CHECK(identifiers(parse_latex("\\sin x + \\log y")) == std::vector<std::string>{"x", "y"});
}

TEST_CASE("normalize") {
    CHECK(render_latex(normalize(parse_latex("1.0"))) == "1");
    CHECK(same_tree(normalize(parse_latex("x+1")), parse_latex("x+1")));
    CHECK(same_tree(normalize(parse_latex("\\frac{a}{b}")), normalize(parse_latex("a/b"))));
    CHECK(same_tree(normalize(parse_latex("x^{1/2}")), parse_latex("\\sqrt{x}")));
    CHECK(same_tree(normalize(parse_latex("a\\cdot b")), parse_latex("ab")));
    CHECK(collapse_decimal("2.50") == "2.5");
    CHECK(collapse_decimal("10") == "10");
    CHECK(collapse_decimal("0.0") == "0");
}

TEST_CASE("alpha equivalence") {
    const auto m = alpha_equivalent(parse_latex("f(x)"), parse_latex("g(x)"));
    REQUIRE(m);
    CHECK(*m == IdentifierMap{{"f", "g"}, {"x", "x"}});
    const auto id = alpha_equivalent(parse_latex("x+1"), parse_latex("x+1"));
    REQUIRE(id);
    CHECK(*id == IdentifierMap{{"x", "x"}});
    CHECK_FALSE(alpha_equivalent(parse_latex("x+x"), parse_latex("y+z")));
    CHECK_FALSE(alpha_equivalent(parse_latex("x+y"), parse_latex("z+z")));
}

TEST_CASE("relator mirrors") {
    for (auto r : {Relator::Eq, Relator::Neq, Relator::Lt, Relator::Gt, Relator::Le, Relator::Ge, Relator::In,
                   Relator::Subset, Relator::SubsetEq, Relator::Equiv, Relator::Sim}) {
        if (auto m = mirror(r)) CHECK(mirror(*m) == r);
    }
    CHECK(mirror(Relator::Eq) == Relator::Eq);
    CHECK(mirror(Relator::Le) == Relator::Ge);
    CHECK(mirror(Relator::Lt) == Relator::Gt);
    CHECK_FALSE(mirror(Relator::In));
    CHECK(mirror_lexeme("\\leq") == "\\geq");
    CHECK(mirror_lexeme("\\le") == "\\ge");
    CHECK(mirror_lexeme("≤") == "≥");
    CHECK(mirror_lexeme("<") == ">");
    CHECK_FALSE(mirror_lexeme("\\subseteq"));
}

TEST_CASE("pattern match and instantiate") {
    const ExprNode pat = parse_template("?a(?b+?c)");
    Bindings b;
    CHECK_FALSE(match(parse_template("?a+?a"), parse_latex("x+y"), b));
    b.clear();
    REQUIRE(match(parse_template("?a+?a"), parse_latex("xy+xy"), b));
    CHECK(render_latex(b.at("?a")) == "xy");
    b.clear();
    REQUIRE(match(parse_template("?a\\left(?b+?c\\right)"), parse_latex("2\\left(x+1\\right)"), b));
    CHECK(render_latex(instantiate(parse_template("?a?b+?a?c"), b)) == "2x+2 1");
    (void)pat;
}

TEST_CASE("evaluate") {
    const Assignment v{{"x", 2.0}, {"y", 3.0}};
    CHECK(evaluate(parse_latex("x^2+\\frac{y}{x}"), v) == doctest::Approx(5.5));
    CHECK(evaluate(parse_latex("\\lVert x\\rVert^2+\\langle x,y\\rangle"), v) == doctest::Approx(10.0));
    CHECK_THROWS_AS(evaluate(parse_latex("x=y"), v), NotEvaluable);
    CHECK_THROWS_AS(evaluate(parse_latex("q"), v), NotEvaluable);
}

TEST_CASE("property: render then parse reproduces generated trees") {
    util::Rng rng(7);
    for (int i = 0; i < 3000; ++i) {
        const ExprNode e = testing::random_formula(rng);
        const std::string src = render_latex(e);
        ExprNode back;
        REQUIRE_NOTHROW(back = parse_latex(src));
        INFO(src);
        INFO(to_sexpr(e));
        INFO(to_sexpr(back));
        REQUIRE(same_tree(back, e));
    }
}

TEST_CASE("property: token lexemes reproduce the source modulo whitespace") {
    util::Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const std::string src = render_latex(testing::random_formula(rng));
        const std::string spaced = [&] {
            std::string s;
            for (char c : src) {
                s += c;
                if (c == '+' || c == '=' || c == '}') s += ' ';
            }
            return s;
        }();
        CHECK(joined_lexemes(spaced) == util::strip_whitespace(spaced));
        const auto toks = tokenize_latex(spaced);
        for (std::size_t k = 1; k < toks.size(); ++k) REQUIRE(toks[k].offset > toks[k - 1].offset);
    }
}

TEST_CASE("property: structural invariants on generated trees") {
    util::Rng rng(13);
    auto relation_free = [](const ExprNode& e) { return !contains_relation(e); };
    for (int i = 0; i < 2000; ++i) {
        const ExprNode parsed = parse_latex(render_latex(testing::random_formula(rng)));
        for (const auto& m : maximal_expressions(parsed)) REQUIRE(relation_free(m));
        CHECK(identifiers(parsed).size() == identifier_leaf_count(parsed));
        const ExprNode n1 = normalize(parsed);
        REQUIRE(same_tree(normalize(n1), n1));
        // parent spans contain child spans
        auto check_spans = [](auto&& self, const ExprNode& e) -> void {
            for (const auto& c : e.children) {
                REQUIRE(e.span.contains(c.span));
                self(self, c);
            }
        };
        check_spans(check_spans, parsed);
        // relations appear only at the top or directly under a Sequence
        auto nested = [](auto&& self, const ExprNode& e, bool inside) -> bool {
            if (e.kind == ExprKind::Relation && inside) return true;
            const bool in = inside || e.kind == ExprKind::Relation;
            for (const auto& c : e.children)
                if (self(self, c, in)) return true;
            return false;
        };
        CHECK_FALSE(nested(nested, parsed, false));
    }
}

TEST_CASE("property: alpha equivalence is an equivalence relation") {
    util::Rng rng(17);
    const std::vector<std::string> pool = {"a", "b", "c", "x", "y", "z", "x_1", "\\alpha", "f", "g"};
    auto random_perm = [&] {
        std::vector<std::string> img = pool;
        rng.shuffle(img);
        IdentifierMap m;
        for (std::size_t i = 0; i < pool.size(); ++i) m[pool[i]] = img[i];
        return m;
    };
    auto restrict = [](const IdentifierMap& m, const ExprNode& e) {
        IdentifierMap out;
        for (const auto& id : distinct_identifiers(e)) out[id] = m.at(id);
        return out;
    };
    for (int i = 0; i < 2000; ++i) {
        testing::ExprGenOptions o;
        const ExprNode e1 = normalize(testing::random_formula(rng, o));
        const IdentifierMap r1 = random_perm();
        const IdentifierMap r2 = random_perm();
        const ExprNode e2 = rename_identifiers(e1, r1);
        const ExprNode e3 = rename_identifiers(e2, r2);

        const auto self = alpha_equivalent(e1, e1);
        REQUIRE(self);
        for (const auto& [k, v] : *self) CHECK(k == v);

        const auto m12 = alpha_equivalent(e1, e2);
        REQUIRE(m12);
        CHECK(*m12 == restrict(r1, e1));
        const auto m21 = alpha_equivalent(e2, e1);
        REQUIRE(m21);
        for (const auto& [k, v] : *m12) CHECK(m21->at(v) == k);

        const auto m23 = alpha_equivalent(e2, e3);
        const auto m13 = alpha_equivalent(e1, e3);
        REQUIRE(m23);
        REQUIRE(m13);
        for (const auto& [k, v] : *m12) CHECK(m13->at(k) == m23->at(v));
    }
}

}  // TEST_SUITE

TEST_SUITE("mathparse") {
TEST_CASE("spans exclude skipped spacing") {
    const ExprNode e = parse_latex("x \\quad = \\left( y+1 \\right) \\,.");
    REQUIRE(e.kind == ExprKind::Relation);
    CHECK(e.children[0].span == Interval{0, 1});
    CHECK(e.children[1].span == Interval{17, 20});
    CHECK(e.span == Interval{0, 28});
}
}
