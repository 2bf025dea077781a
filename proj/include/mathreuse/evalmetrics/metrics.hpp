#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mathreuse/detect/detect.hpp"
#include "mathreuse/docmodel/reuse.hpp"

namespace mathreuse::evalmetrics {

using detect::Detection;
using docmodel::ObfuscationOperator;
using docmodel::ReuseCase;

struct PrecisionRecall {
    double precision = 0.0;
    double recall = 0.0;
};

// Character-overlap precision and recall with both sides of a case or
// detection pooled. Empty truth and empty detections give (1, 1); empty
// truth alone gives recall 1; zero-length items are left out of the means.
PrecisionRecall case_precision_recall(const std::vector<ReuseCase>& truth, const std::vector<Detection>& detections);

// Same, after checking every span against the document lengths. Throws
// std::out_of_range for an unknown document or a span past its end.
PrecisionRecall case_precision_recall(const std::vector<ReuseCase>& truth, const std::vector<Detection>& detections,
                                      const std::map<std::string, std::size_t>& doc_lengths);

// Mean number of detections overlapping each detected case (sharing a
// character on either side); 1 when no case is detected.
double granularity(const std::vector<ReuseCase>& truth, const std::vector<Detection>& detections);

double f1(double precision, double recall);

// f1 / log2(1 + g). Throws std::domain_error for g < 1 or f1 outside [0, 1].
double plagdet(double f1, double g);

// Half-up rounding to `digits` decimals, as used for display.
double round_half_up(double x, int digits = 2);

struct Scores {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double granularity = 1.0;
    double plagdet = 0.0;
    std::size_t cases = 0;
    std::size_t detections = 0;
};

Scores score(const std::vector<ReuseCase>& truth, const std::vector<Detection>& detections);

struct OperatorScores {
    Scores scores;
    double presence = 0.0;  // fraction of all cases carrying the operator
};

struct EvalReport {
    std::string detector;
    Scores overall;
    std::map<ObfuscationOperator, OperatorScores> per_operator;
};

// Overall scores plus, for every operator, the scores over the cases that
// carry it against the detections overlapping at least one of those cases.
EvalReport per_operator_report(const std::vector<ReuseCase>& truth, const std::vector<Detection>& detections,
                               const std::string& detector = "");

nlohmann::json report_to_json(const EvalReport& r);

// One header line, then one row for the overall scores ("All") and one per
// operator: detector,operator,presence,cases,f1,g,pd. Values are rounded
// half-up to two decimals; presence is a percentage.
std::string reports_to_csv(const std::vector<EvalReport>& reports);

// ---- agreement ----------------------------------------------------------------

using Token = std::pair<std::string, std::size_t>;  // (document, offset)

// |a ∩ b| / |a ∪ b|; two empty sets give 1.
double token_jaccard(const std::set<Token>& a, const std::set<Token>& b);

// Every character reference of the cases, both sides.
std::set<Token> case_tokens(const std::vector<ReuseCase>& cases);

// (p_o - p_e) / (1 - p_e) with marginal chance agreement; when p_e == 1 the
// value is 1 if p_o == 1 and 0 otherwise. Throws std::invalid_argument on a
// length mismatch.
double cohen_kappa(const std::vector<std::string>& labels1, const std::vector<std::string>& labels2);

struct AgreementReport {
    double token_jaccard = 1.0;
    double case_type_overlap = 1.0;
    double obfuscation_overlap = 1.0;
    double kappa = 1.0;
    std::size_t aligned = 0;  // cases of `a` matched to a case of `b`
};

// Each case of `a` is aligned to the case of `b` sharing the most
// characters (first on ties). Case-type overlap is the share of aligned
// pairs with equal types, obfuscation overlap the mean Jaccard of their
// operator sets. Kappa items: shared operators agree with themselves, the
// remaining ones are zipped in operator order and leftovers face "none".
AgreementReport agreement(const std::vector<ReuseCase>& a, const std::vector<ReuseCase>& b);

}  // namespace mathreuse::evalmetrics
