#include "math_sites.hpp"

#include "mathreuse/mathparse/render.hpp"
#include "mathreuse/util/utf8.hpp"
#include "text_match.hpp"

namespace mathreuse::obfuscate::detail {

using mathparse::ExprKind;

std::vector<const mathparse::ExprNode*> stated_relations(const mathparse::ExprNode& root) {
    std::vector<const mathparse::ExprNode*> out;
    if (root.kind == ExprKind::Relation) {
        out.push_back(&root);
    } else if (root.kind == ExprKind::Sequence) {
        for (const auto& c : root.children)
            if (c.kind == ExprKind::Relation) out.push_back(&c);
    }
    return out;
}

std::u32string render_u32(const mathparse::ExprNode& e) { return util::decode_utf8(mathparse::render_latex(e)); }

std::u32string rerender_run(const docmodel::Document& doc, const docmodel::Run& run, const std::u32string& latex) {
    const util::Interval t = run.tree->span;
    std::u32string out = doc.text.substr(run.span.start, t.start - run.span.start);
    out += guard_splice(doc.text, t, latex);
    out += doc.text.substr(t.end, run.span.end - t.end);
    return out;
}

}  // namespace mathreuse::obfuscate::detail
