#include "lexicon_tables.hpp"

#include <algorithm>
#include <array>

namespace mathreuse::mathparse::tables {
namespace {

template <std::size_t N>
bool in(const std::array<std::string_view, N>& table, std::string_view s) {
    return std::find(table.begin(), table.end(), s) != table.end();
}

constexpr std::array<std::string_view, 41> kGreek = {
    "\\alpha", "\\beta", "\\gamma", "\\delta", "\\epsilon", "\\varepsilon", "\\zeta", "\\eta",
    "\\theta", "\\vartheta", "\\iota", "\\kappa", "\\lambda", "\\mu", "\\nu", "\\xi",
    "\\pi", "\\varpi", "\\rho", "\\varrho", "\\sigma", "\\varsigma", "\\tau", "\\upsilon",
    "\\phi", "\\varphi", "\\chi", "\\psi", "\\omega", "\\Gamma", "\\Delta", "\\Theta",
    "\\Lambda", "\\Xi", "\\Pi", "\\Sigma", "\\Upsilon", "\\Phi", "\\Psi", "\\Omega", "\\ell"};

constexpr std::array<std::string_view, 40> kRelations = {
    "\\leq", "\\le", "\\geq", "\\ge", "\\neq", "\\ne", "\\lt", "\\gt", "\\in", "\\notin",
    "\\ni", "\\subset", "\\subseteq", "\\supset", "\\supseteq", "\\equiv", "\\sim", "\\simeq",
    "\\approx", "\\cong", "\\propto", "\\to", "\\rightarrow", "\\leftarrow", "\\Rightarrow",
    "\\Leftarrow", "\\Leftrightarrow", "\\iff", "\\implies", "\\mapsto", "\\ll", "\\gg",
    "\\perp", "\\mid", "\\parallel", "\\prec", "\\succ", "\\preceq", "\\succeq", "\\colon"};

constexpr std::array<std::string_view, 22> kBinary = {
    "\\cdot", "\\times", "\\div", "\\pm", "\\mp", "\\circ", "\\ast", "\\star", "\\cup",
    "\\cap", "\\setminus", "\\wedge", "\\vee", "\\oplus", "\\otimes", "\\odot", "\\bullet",
    "\\land", "\\lor", "\\neg", "\\lnot", "\\smallsetminus"};

constexpr std::array<std::string_view, 14> kAdditive = {
    "+", "-", "\\pm", "\\mp", "\\cup", "\\cap", "\\setminus", "\\smallsetminus", "\\oplus",
    "\\vee", "\\wedge", "\\lor", "\\land", "\\ominus"};

constexpr std::array<std::string_view, 11> kMultiplicative = {
    "*", "\\cdot", "\\times", "/", "\\div", "\\circ", "\\ast", "\\star", "\\otimes", "\\odot",
    "\\bullet"};

constexpr std::array<std::string_view, 6> kPrefix = {"-", "+", "\\pm", "\\mp", "\\neg", "\\lnot"};

constexpr std::array<std::string_view, 32> kFunctions = {
    "\\sin", "\\cos", "\\tan", "\\cot", "\\sec", "\\csc", "\\arcsin", "\\arccos", "\\arctan",
    "\\sinh", "\\cosh", "\\tanh", "\\coth", "\\log", "\\ln", "\\lg", "\\exp", "\\det", "\\dim",
    "\\ker", "\\deg", "\\gcd", "\\arg", "\\Pr", "\\hom", "\\max", "\\min", "\\sup", "\\inf",
    "\\lim", "\\liminf", "\\limsup"};

constexpr std::array<std::string_view, 36> kSymbols = {
    "\\infty", "\\emptyset", "\\varnothing", "\\dots", "\\ldots", "\\cdots", "\\vdots",
    "\\ddots", "\\partial", "\\nabla", "\\forall", "\\exists", "\\prime", "\\aleph", "\\Re",
    "\\Im", "\\top", "\\bot", "\\angle", "\\triangle", "\\hbar", "\\sum", "\\prod", "\\int",
    "\\iint", "\\iiint", "\\oint", "\\bigcup", "\\bigcap", "\\coprod", "\\bigoplus",
    "\\bigotimes", "\\Box", "\\square", "\\wp", "\\imath"};

constexpr std::array<std::string_view, 21> kDecorations = {
    "\\mathbf", "\\mathrm", "\\mathbb", "\\mathcal", "\\mathfrak", "\\mathsf", "\\mathit",
    "\\boldsymbol", "\\bm", "\\vec", "\\hat", "\\bar", "\\tilde", "\\dot", "\\ddot",
    "\\overline", "\\underline", "\\widehat", "\\widetilde", "\\overrightarrow", "\\check"};

constexpr std::array<std::string_view, 7> kRawText = {
    "\\text", "\\textrm", "\\textit", "\\textbf", "\\mbox", "\\operatorname", "\\textnormal"};

constexpr std::array<std::string_view, 4> kFractions = {"\\frac", "\\dfrac", "\\tfrac", "\\cfrac"};

constexpr std::array<std::string_view, 30> kIgnorable = {
    "\\,", "\\;", "\\:", "\\!", "\\quad", "\\qquad", "~", "\\ ", "\\left", "\\right",
    "\\bigl", "\\bigr", "\\Bigl", "\\Bigr", "\\big", "\\Big", "\\bigg", "\\Bigg", "\\biggl",
    "\\biggr", "\\displaystyle", "\\textstyle", "\\scriptstyle", "\\limits", "\\nolimits",
    "\\nonumber", "\\notag", "\\middle", "\\label", "\\tag"};

struct Pair {
    std::string_view open;
    std::string_view close;
    int family;
};

constexpr std::array<Pair, 12> kPairs = {{
    {"{", "}", 1},
    {"(", ")", 2},
    {"[", "]", 2},
    {"\\{", "\\}", 3},
    {"\\lbrace", "\\rbrace", 3},
    {"\\langle", "\\rangle", 4},
    {"⟨", "⟩", 4},
    {"\\lVert", "\\rVert", 5},
    {"\\lvert", "\\rvert", 6},
    {"\\lfloor", "\\rfloor", 7},
    {"\\lceil", "\\rceil", 8},
    {"\\lbrack", "\\rbrack", 2},
}};

}  // namespace

bool is_greek(std::string_view cmd) { return in(kGreek, cmd); }
bool is_relation_command(std::string_view cmd) { return in(kRelations, cmd); }
bool is_binary_command(std::string_view cmd) { return in(kBinary, cmd); }
bool is_additive(std::string_view op) { return in(kAdditive, op); }
bool is_multiplicative(std::string_view op) { return in(kMultiplicative, op); }
bool is_prefix(std::string_view op) { return in(kPrefix, op); }
bool is_function_name(std::string_view cmd) { return in(kFunctions, cmd); }
bool is_symbol_command(std::string_view cmd) { return in(kSymbols, cmd); }
bool is_decoration(std::string_view cmd) { return in(kDecorations, cmd); }
bool is_raw_text_command(std::string_view cmd) { return in(kRawText, cmd); }
bool is_fraction(std::string_view cmd) { return in(kFractions, cmd); }
bool is_ignorable(std::string_view cmd) { return in(kIgnorable, cmd); }

int open_family(std::string_view lexeme) {
    for (const auto& p : kPairs)
        if (p.open == lexeme) return p.family;
    return 0;
}

int close_family(std::string_view lexeme) {
    for (const auto& p : kPairs)
        if (p.close == lexeme) return p.family;
    return 0;
}

std::string_view closer_for(std::string_view opener) {
    for (const auto& p : kPairs)
        if (p.open == opener) return p.close;
    return {};
}

}  // namespace mathreuse::mathparse::tables
