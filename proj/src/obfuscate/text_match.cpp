#include "text_match.hpp"

#include <stdexcept>

#include "mathreuse/util/utf8.hpp"

namespace mathreuse::obfuscate::detail {

std::u32string u32(std::string_view utf8) { return util::decode_utf8(utf8); }

bool is_word_char(char32_t c) {
    return util::is_ascii_letter(c) || util::is_ascii_digit(c) || c == U'_' || (c > 0x7F && !util::is_space(c));
}

bool is_sentence_punct(char32_t c) { return c == U'.' || c == U',' || c == U';' || c == U':'; }

std::vector<bool> text_mask(const Document& doc) {
    std::vector<bool> mask(doc.length(), false);
    for (const auto& r : doc.runs)
        if (!r.is_math())
            for (std::size_t i = r.span.start; i < r.span.end; ++i) mask[i] = true;
    return mask;
}

std::optional<std::size_t> math_run_starting_at(const Document& doc, std::size_t pos) {
    for (std::size_t k = 0; k < doc.runs.size(); ++k) {
        if (doc.runs[k].span.start == pos) {
            if (doc.runs[k].is_math()) return k;
            return std::nullopt;
        }
        if (doc.runs[k].span.start > pos) break;
    }
    return std::nullopt;
}

std::optional<std::size_t> match_phrase(const Document& doc, const std::vector<bool>& mask, std::size_t pos,
                                        std::u32string_view phrase) {
    const std::u32string& t = doc.text;
    if (phrase.empty()) return std::nullopt;
    if (is_word_char(phrase.front()) && pos > 0 && is_word_char(t[pos - 1]) && mask[pos - 1]) return std::nullopt;
    std::size_t i = pos;
    for (std::size_t k = 0; k < phrase.size(); ++k) {
        if (phrase[k] == U' ') {
            if (i >= t.size() || !mask[i] || !util::is_space(t[i])) return std::nullopt;
            while (i < t.size() && mask[i] && util::is_space(t[i])) ++i;
            continue;
        }
        if (i >= t.size() || !mask[i] || t[i] != phrase[k]) return std::nullopt;
        ++i;
    }
    if (is_word_char(phrase.back()) && i < t.size() && mask[i] && is_word_char(t[i])) return std::nullopt;
    return i;
}

std::u32string capitalize(std::u32string s) {
    if (!s.empty() && s[0] >= U'a' && s[0] <= U'z') s[0] = s[0] - U'a' + U'A';
    return s;
}

TextTemplate::TextTemplate(std::string_view pattern) {
    const std::u32string p = u32(pattern);
    auto read_name = [&](std::size_t& i) {
        std::string name = "?";
        ++i;
        while (i < p.size() && (util::is_ascii_letter(p[i]) || util::is_ascii_digit(p[i]) || p[i] == U'_'))
            name += static_cast<char>(p[i++]);
        return name;
    };
    std::size_t i = 0;
    while (i < p.size()) {
        if (p[i] == U'$' && i + 1 < p.size() && p[i + 1] == U'?') {
            ++i;
            std::string name = read_name(i);
            if (i >= p.size() || p[i] != U'$') throw std::invalid_argument("unterminated identifier slot in template");
            ++i;
            pieces_.push_back({Kind::IdentSlot, 0, std::move(name)});
        } else if (p[i] == U'$') {
            const std::size_t close = p.find(U'$', i + 1);
            if (close == std::u32string::npos) throw std::invalid_argument("unterminated formula in template");
            pieces_.push_back({Kind::FixedRun, 0, util::encode_utf8(p.substr(i + 1, close - i - 1))});
            i = close + 1;
        } else if (p[i] == U'?') {
            pieces_.push_back({Kind::RunSlot, 0, read_name(i)});
        } else if (util::is_space(p[i])) {
            while (i < p.size() && util::is_space(p[i])) ++i;
            pieces_.push_back({Kind::Space, U' ', {}});
        } else {
            pieces_.push_back({Kind::Literal, p[i++], {}});
        }
    }
}

std::optional<TextTemplate::Match> TextTemplate::match_at(const Document& doc, const std::vector<bool>& mask,
                                                          std::size_t pos) const {
    const std::u32string& t = doc.text;
    if (pieces_.empty()) return std::nullopt;
    if (pieces_.front().kind == Kind::Literal && is_word_char(pieces_.front().ch) && pos > 0 && mask[pos - 1] &&
        is_word_char(t[pos - 1]))
        return std::nullopt;
    Match m;
    std::size_t i = pos;
    std::optional<char32_t> run_punct;  // punctuation inside the run just matched
    for (const auto& piece : pieces_) {
        switch (piece.kind) {
            case Kind::Literal:
                if (i < t.size() && mask[i] && t[i] == piece.ch) {
                    ++i;
                } else if (!(run_punct && *run_punct == piece.ch)) {
                    return std::nullopt;
                }
                run_punct.reset();
                break;
            case Kind::Space:
                if (i >= t.size() || !mask[i] || !util::is_space(t[i])) return std::nullopt;
                while (i < t.size() && mask[i] && util::is_space(t[i])) ++i;
                run_punct.reset();
                break;
            case Kind::RunSlot:
            case Kind::IdentSlot:
            case Kind::FixedRun: {
                const auto k = math_run_starting_at(doc, i);
                if (!k) return std::nullopt;
                const auto& run = doc.runs[*k];
                if (piece.kind == Kind::FixedRun) {
                    if (util::strip_whitespace(doc.body_latex(run)) != util::strip_whitespace(piece.name))
                        return std::nullopt;
                    run_punct.reset();
                } else if (piece.kind == Kind::RunSlot) {
                    if (m.runs.count(piece.name)) return std::nullopt;
                    m.runs[piece.name] = *k;
                    run_punct = trailing_punct(doc, run);
                } else {
                    if (!run.tree || run.tree->kind != mathparse::ExprKind::Identifier) return std::nullopt;
                    const auto it = m.idents.find(piece.name);
                    if (it != m.idents.end() && it->second.text != run.tree->text) return std::nullopt;
                    m.idents.emplace(piece.name, *run.tree);
                    run_punct.reset();
                }
                i = run.span.end;
                break;
            }
        }
    }
    if (pieces_.back().kind == Kind::Literal && is_word_char(pieces_.back().ch) && i < t.size() && mask[i] &&
        is_word_char(t[i]))
        return std::nullopt;
    m.span = {pos, i};
    return m;
}

std::u32string TextTemplate::fill(const std::map<std::string, RunFill>& runs,
                                  const std::map<std::string, std::string>& ident_names) const {
    std::u32string out;
    char32_t run_punct = 0;  // 0: none
    for (const auto& piece : pieces_) {
        switch (piece.kind) {
            case Kind::Literal:
                if (run_punct != piece.ch) out.push_back(piece.ch);
                run_punct = 0;
                break;
            case Kind::Space:
                out.push_back(U' ');
                run_punct = 0;
                break;
            case Kind::RunSlot: {
                const RunFill& f = runs.at(piece.name);
                out += f.text;
                run_punct = f.punct.value_or(0);
                break;
            }
            case Kind::IdentSlot:
                out += U"$" + u32(ident_names.at(piece.name)) + U"$";
                run_punct = 0;
                break;
            case Kind::FixedRun:
                out += U"$" + u32(piece.name) + U"$";
                run_punct = 0;
                break;
        }
    }
    return out;
}

bool TextTemplate::ends_with_punct() const {
    return !pieces_.empty() && pieces_.back().kind == Kind::Literal && is_sentence_punct(pieces_.back().ch);
}

char32_t TextTemplate::first_char() const {
    return !pieces_.empty() && pieces_.front().kind == Kind::Literal ? pieces_.front().ch : U'\0';
}

namespace {

// True when text[..pos) ends with a control word such as "\alpha".
bool ends_with_command(std::u32string_view text, std::size_t pos) {
    std::size_t i = pos;
    while (i > 0 && util::is_ascii_letter(text[i - 1])) --i;
    return i < pos && i > 0 && text[i - 1] == U'\\';
}

}  // namespace

std::u32string guard_splice(std::u32string_view text, Interval iv, std::u32string_view repl) {
    std::u32string out(repl);
    if (repl.empty()) return out;
    if (util::is_ascii_letter(repl.front()) && ends_with_command(text, iv.start)) out.insert(out.begin(), U' ');
    if (iv.end < text.size() && util::is_ascii_letter(text[iv.end]) && ends_with_command(repl, repl.size()))
        out.push_back(U' ');
    return out;
}

std::optional<char32_t> trailing_punct(const Document& doc, const docmodel::Run& run) {
    std::size_t i = run.body.end;
    while (i > run.body.start && util::is_space(doc.text[i - 1])) --i;
    if (i > run.body.start && is_sentence_punct(doc.text[i - 1])) return doc.text[i - 1];
    return std::nullopt;
}

}  // namespace mathreuse::obfuscate::detail
