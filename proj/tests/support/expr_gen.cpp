#include "support/expr_gen.hpp"

namespace mathreuse::testing {

using mathparse::ExprKind;
using mathparse::ExprNode;

namespace {

const std::vector<std::string> kNumbers = {"1", "2", "3", "10", "2.5", "1.0", "0.50"};
const std::vector<std::string> kBinary = {"+", "-", "\\cdot", "/", "", ""};
const std::vector<std::string> kRelators = {"=", "<", "\\leq", "\\geq", ">", "\\neq", "\\equiv", "\\sim", "\\in"};

template <typename T>
const T& pick(util::Rng& rng, const std::vector<T>& v) {
    return v[rng.below(v.size())];
}

ExprNode leaf(util::Rng& rng, const ExprGenOptions& o) {
    if (rng.chance(0.7)) return ExprNode::identifier(pick(rng, o.identifiers));
    return ExprNode::number(pick(rng, kNumbers));
}

ExprNode scripted(ExprNode base, ExprNode sup) {
    ExprNode s;
    s.kind = ExprKind::Scripted;
    s.has_sup = true;
    s.children.push_back(std::move(base));
    s.children.push_back(std::move(sup));
    return s;
}

ExprNode gen(util::Rng& rng, const ExprGenOptions& o, int depth) {
    if (depth <= 0) return leaf(rng, o);
    const int choice = static_cast<int>(rng.below(o.functions ? 12 : 7));
    switch (choice) {
        case 0:
        case 1:
        case 2:
            return ExprNode::op(pick(rng, kBinary), {gen(rng, o, depth - 1), gen(rng, o, depth - 1)});
        case 3:
            return ExprNode::op("-", {gen(rng, o, depth - 1)});
        case 4: {
            ExprNode base = rng.chance(0.6) ? leaf(rng, o) : gen(rng, o, depth - 1);
            if (base.kind == ExprKind::Scripted) base = leaf(rng, o);
            return scripted(std::move(base), rng.chance(0.5) ? leaf(rng, o) : gen(rng, o, depth - 1));
        }
        case 5:
        case 6:
            return leaf(rng, o);
        case 7: {
            std::vector<ExprNode> args{gen(rng, o, depth - 1)};
            if (rng.chance(0.3)) args.push_back(gen(rng, o, depth - 1));
            return ExprNode::func(ExprNode::identifier(pick(rng, o.function_heads)), std::move(args));
        }
        case 8:
            return ExprNode::func(ExprNode::op(rng.chance(0.5) ? "\\sin" : "\\log", {}), {gen(rng, o, depth - 1)});
        case 9:
            return ExprNode::op(rng.chance(0.5) ? "\\frac" : "\\binom", {gen(rng, o, depth - 1), gen(rng, o, depth - 1)});
        case 10: {
            ExprNode n = ExprNode::op("\\sqrt", {gen(rng, o, depth - 1)});
            return n;
        }
        default: {
            if (rng.chance(0.5)) {
                ExprNode n = ExprNode::op("\\langle", {gen(rng, o, depth - 1), gen(rng, o, depth - 1)});
                n.closer = "\\rangle";
                return n;
            }
            ExprNode n = ExprNode::op("\\lVert", {gen(rng, o, depth - 1)});
            n.closer = "\\rVert";
            return n;
        }
    }
}

}  // namespace

ExprNode random_expr(util::Rng& rng, const ExprGenOptions& opts) {
    return gen(rng, opts, 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(opts.max_depth))));
}

ExprNode random_formula(util::Rng& rng, const ExprGenOptions& opts) {
    if (!opts.relations || rng.chance(0.3)) return random_expr(rng, opts);
    const std::size_t n = 2 + rng.below(2);
    std::vector<ExprNode> kids;
    std::vector<std::string> rels;
    for (std::size_t i = 0; i < n; ++i) {
        kids.push_back(random_expr(rng, opts));
        if (i + 1 < n) rels.push_back(pick(rng, kRelators));
    }
    return ExprNode::relation(std::move(kids), std::move(rels));
}

ExprNode random_arith(util::Rng& rng, int depth, const std::vector<std::string>& ids) {
    if (depth <= 0 || rng.chance(0.25)) {
        if (rng.chance(0.75)) return ExprNode::identifier(pick(rng, ids));
        return ExprNode::number(pick(rng, kNumbers));
    }
    static const std::vector<std::string> ops = {"+", "-", "\\cdot", ""};
    switch (rng.below(5)) {
        case 0:
            return ExprNode::op("-", {random_arith(rng, depth - 1, ids)});
        case 1:
            return scripted(random_arith(rng, 0, ids), ExprNode::number("2"));
        default:
            return ExprNode::op(pick(rng, ops), {random_arith(rng, depth - 1, ids), random_arith(rng, depth - 1, ids)});
    }
}

}  // namespace mathreuse::testing
