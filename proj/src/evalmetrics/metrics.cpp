#include "mathreuse/evalmetrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "mathreuse/util/interval.hpp"

namespace mathreuse::evalmetrics {

namespace {

using docmodel::Span;
using util::IntervalSet;

using Coverage = std::unordered_map<std::string, IntervalSet>;

void add(Coverage& c, const Span& s) {
    if (s.length() > 0) c[s.doc_id].add(s.interval());
}

std::size_t covered(const Coverage& c, const Span& s) {
    const auto it = c.find(s.doc_id);
    return it == c.end() ? 0 : it->second.covered(s.interval());
}

bool overlaps(const Span& x, const Span& y) { return x.doc_id == y.doc_id && x.interval().overlaps(y.interval()); }

bool overlaps(const ReuseCase& c, const Detection& d) {
    return overlaps(c.src, d.src) || overlaps(c.insp, d.insp) || overlaps(c.src, d.insp) || overlaps(c.insp, d.src);
}

std::size_t shared_chars(const ReuseCase& x, const ReuseCase& y) {
    const auto one = [](const Span& a, const Span& b) {
        return a.doc_id == b.doc_id ? util::overlap_length(a.interval(), b.interval()) : 0;
    };
    return one(x.src, y.src) + one(x.insp, y.insp) + one(x.src, y.insp) + one(x.insp, y.src);
}

void check_span(const Span& s, const std::map<std::string, std::size_t>& lengths, const char* what) {
    const auto it = lengths.find(s.doc_id);
    if (it == lengths.end()) throw std::out_of_range(std::string(what) + " references unknown document '" + s.doc_id + "'");
    if (s.start > s.end || s.end > it->second)
        throw std::out_of_range(std::string(what) + " span [" + std::to_string(s.start) + ", " + std::to_string(s.end) +
                                ") lies outside '" + s.doc_id + "' (length " + std::to_string(it->second) + ")");
}

}  // namespace

PrecisionRecall case_precision_recall(const std::vector<ReuseCase>& truth, const std::vector<Detection>& detections) {
    Coverage by_truth;
    Coverage by_detections;
    for (const auto& s : truth) {
        add(by_truth, s.src);
        add(by_truth, s.insp);
    }
    for (const auto& r : detections) {
        add(by_detections, r.src);
        add(by_detections, r.insp);
    }
    PrecisionRecall pr;
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& s : truth) {
        const std::size_t len = s.src.length() + s.insp.length();
        if (len == 0) continue;
        sum += static_cast<double>(covered(by_detections, s.src) + covered(by_detections, s.insp)) / static_cast<double>(len);
        ++n;
    }
    pr.recall = n == 0 ? 1.0 : sum / static_cast<double>(n);
    sum = 0.0;
    n = 0;
    for (const auto& r : detections) {
        const std::size_t len = r.src.length() + r.insp.length();
        if (len == 0) continue;
        sum += static_cast<double>(covered(by_truth, r.src) + covered(by_truth, r.insp)) / static_cast<double>(len);
        ++n;
    }
    if (n > 0) pr.precision = sum / static_cast<double>(n);
    else pr.precision = truth.empty() ? 1.0 : 0.0;
    return pr;
}

PrecisionRecall case_precision_recall(const std::vector<ReuseCase>& truth, const std::vector<Detection>& detections,
                                      const std::map<std::string, std::size_t>& doc_lengths) {
    for (const auto& s : truth) {
        check_span(s.src, doc_lengths, "case");
        check_span(s.insp, doc_lengths, "case");
    }
    for (const auto& r : detections) {
        check_span(r.src, doc_lengths, "detection");
        check_span(r.insp, doc_lengths, "detection");
    }
    return case_precision_recall(truth, detections);
}

double granularity(const std::vector<ReuseCase>& truth, const std::vector<Detection>& detections) {
    std::size_t detected = 0;
    std::size_t pieces = 0;
    for (const auto& s : truth) {
        std::size_t k = 0;
        for (const auto& r : detections) k += overlaps(s, r);
        if (k > 0) {
            ++detected;
            pieces += k;
        }
    }
    return detected == 0 ? 1.0 : static_cast<double>(pieces) / static_cast<double>(detected);
}

double f1(double precision, double recall) {
    return precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
}

double plagdet(double f1, double g) {
    if (!(g >= 1.0)) throw std::domain_error("plagdet: granularity must be >= 1");
    if (!(f1 >= 0.0 && f1 <= 1.0)) throw std::domain_error("plagdet: f1 must lie in [0, 1]");
    return f1 / std::log2(1.0 + g);
}

double round_half_up(double x, int digits) {
    const double scale = std::pow(10.0, digits);
    // The epsilon absorbs binary representation error of decimal ties.
    return std::floor(x * scale + 0.5 + 1e-9) / scale;
}

Scores score(const std::vector<ReuseCase>& truth, const std::vector<Detection>& detections) {
    Scores s;
    const auto pr = case_precision_recall(truth, detections);
    s.precision = pr.precision;
    s.recall = pr.recall;
    s.f1 = f1(pr.precision, pr.recall);
    s.granularity = granularity(truth, detections);
    s.plagdet = plagdet(s.f1, s.granularity);
    s.cases = truth.size();
    s.detections = detections.size();
    return s;
}

EvalReport per_operator_report(const std::vector<ReuseCase>& truth, const std::vector<Detection>& detections,
                               const std::string& detector) {
    EvalReport rep;
    rep.detector = detector;
    rep.overall = score(truth, detections);
    for (auto op : docmodel::kAllOperators) {
        std::vector<ReuseCase> cases;
        for (const auto& c : truth)
            if (c.ops.contains(op)) cases.push_back(c);
        std::vector<Detection> dets;
        for (const auto& d : detections)
            if (std::any_of(cases.begin(), cases.end(), [&](const ReuseCase& c) { return overlaps(c, d); }))
                dets.push_back(d);
        OperatorScores os;
        if (!cases.empty()) os.scores = score(cases, dets);
        os.presence = truth.empty() ? 0.0 : static_cast<double>(cases.size()) / static_cast<double>(truth.size());
        rep.per_operator[op] = os;
    }
    return rep;
}

namespace {

nlohmann::json scores_json(const Scores& s) {
    return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1},          {"granularity", s.granularity},
            {"plagdet", s.plagdet},     {"cases", s.cases},   {"detections", s.detections}};
}

std::string fixed2(double x) {
    std::ostringstream o;
    o.setf(std::ios::fixed);
    o.precision(2);
    o << round_half_up(x, 2);
    return o.str();
}

}  // namespace

nlohmann::json report_to_json(const EvalReport& r) {
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [op, os] : r.per_operator) {
        auto j = scores_json(os.scores);
        j["presence"] = os.presence;
        per[std::string(docmodel::to_string(op))] = j;
    }
    return {{"detector", r.detector}, {"overall", scores_json(r.overall)}, {"per_operator", per}};
}

std::string reports_to_csv(const std::vector<EvalReport>& reports) {
    std::ostringstream o;
    o << "detector,operator,presence,cases,f1,g,pd\n";
    for (const auto& r : reports) {
        o << r.detector << ",All,100.00," << r.overall.cases << ',' << fixed2(r.overall.f1) << ','
          << fixed2(r.overall.granularity) << ',' << fixed2(r.overall.plagdet) << '\n';
        for (const auto& [op, os] : r.per_operator)
            o << r.detector << ',' << docmodel::to_string(op) << ',' << fixed2(100.0 * os.presence) << ','
              << os.scores.cases << ',' << fixed2(os.scores.f1) << ',' << fixed2(os.scores.granularity) << ','
              << fixed2(os.scores.plagdet) << '\n';
    }
    return o.str();
}

double token_jaccard(const std::set<Token>& a, const std::set<Token>& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t common = 0;
    for (const auto& t : a) common += b.count(t);
    return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

std::set<Token> case_tokens(const std::vector<ReuseCase>& cases) {
    std::set<Token> out;
    for (const auto& c : cases)
        for (const Span* s : {&c.src, &c.insp})
            for (std::size_t i = s->start; i < s->end; ++i) out.emplace(s->doc_id, i);
    return out;
}

double cohen_kappa(const std::vector<std::string>& labels1, const std::vector<std::string>& labels2) {
    if (labels1.size() != labels2.size()) throw std::invalid_argument("cohen_kappa: label sequences differ in length");
    const std::size_t n = labels1.size();
    if (n == 0) return 1.0;
    std::map<std::string, std::pair<std::size_t, std::size_t>> freq;
    std::size_t same = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ++freq[labels1[i]].first;
        ++freq[labels2[i]].second;
        same += labels1[i] == labels2[i];
    }
    const double dn = static_cast<double>(n);
    const double po = static_cast<double>(same) / dn;
    double pe = 0.0;
    for (const auto& [label, f] : freq) pe += (static_cast<double>(f.first) / dn) * (static_cast<double>(f.second) / dn);
    if (pe >= 1.0) return po >= 1.0 ? 1.0 : 0.0;
    return (po - pe) / (1.0 - pe);
}

AgreementReport agreement(const std::vector<ReuseCase>& a, const std::vector<ReuseCase>& b) {
    AgreementReport r;
    r.token_jaccard = token_jaccard(case_tokens(a), case_tokens(b));
    std::vector<std::string> l1;
    std::vector<std::string> l2;
    std::size_t same_type = 0;
    double ops_jaccard = 0.0;
    for (const auto& x : a) {
        const ReuseCase* best = nullptr;
        std::size_t best_shared = 0;
        for (const auto& y : b)
            if (const std::size_t s = shared_chars(x, y); s > best_shared) {
                best_shared = s;
                best = &y;
            }
        if (best == nullptr) continue;
        ++r.aligned;
        same_type += x.case_type == best->case_type;
        std::vector<std::string> only_x;
        std::vector<std::string> only_y;
        std::size_t both = 0;
        std::size_t either = 0;
        for (auto op : docmodel::kAllOperators) {
            const bool in_x = x.ops.contains(op);
            const bool in_y = best->ops.contains(op);
            const std::string name(docmodel::to_string(op));
            if (in_x && in_y) {
                l1.push_back(name);
                l2.push_back(name);
                ++both;
            } else if (in_x) {
                only_x.push_back(name);
            } else if (in_y) {
                only_y.push_back(name);
            }
            either += in_x || in_y;
        }
        for (std::size_t k = 0; k < std::max(only_x.size(), only_y.size()); ++k) {
            l1.push_back(k < only_x.size() ? only_x[k] : "none");
            l2.push_back(k < only_y.size() ? only_y[k] : "none");
        }
        ops_jaccard += either == 0 ? 1.0 : static_cast<double>(both) / static_cast<double>(either);
    }
    if (r.aligned > 0) {
        r.case_type_overlap = static_cast<double>(same_type) / static_cast<double>(r.aligned);
        r.obfuscation_overlap = ops_jaccard / static_cast<double>(r.aligned);
    } else if (!a.empty() || !b.empty()) {
        r.case_type_overlap = 0.0;
        r.obfuscation_overlap = 0.0;
    }
    r.kappa = r.aligned == 0 && (!a.empty() || !b.empty()) ? 0.0 : cohen_kappa(l1, l2);
    return r;
}

}  // namespace mathreuse::evalmetrics
