#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace wsnsim::fuzzy {

/// Piecewise-linear membership function: triangular (a <= b <= c) or
/// trapezoidal (a <= b <= c <= d). Breakpoints are validated at
/// construction; eval never fails on finite input.
class MembershipFunction {
public:
    enum class Kind { Triangular, Trapezoidal };

    static MembershipFunction triangular(double a, double b, double c);
    static MembershipFunction trapezoidal(double a, double b, double c, double d);

    double eval(double x) const;

    Kind kind() const { return kind_; }
    const std::vector<double>& breakpoints() const { return pts_; }
    double support_lo() const { return pts_.front(); }
    double support_hi() const { return pts_.back(); }

private:
    MembershipFunction(Kind kind, std::vector<double> pts);

    Kind kind_;
    std::vector<double> pts_;
};

struct Term {
    std::string name;
    MembershipFunction mf;
};

/// A named input/output with its universe of discourse and term set.
/// Construction checks: unique term names, supports inside the universe,
/// and coverage (every point of the universe belongs to some term).
class LinguisticVariable {
public:
    LinguisticVariable(std::string name, double lo, double hi, std::vector<Term> terms);

    const std::string& name() const { return name_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double span() const { return hi_ - lo_; }
    const std::vector<Term>& terms() const { return terms_; }

    const Term* find_term(const std::string& term_name) const;
    int term_index(const std::string& term_name) const;  // -1 if absent

    double clamp(double x) const;

    // Clamps x into the universe, then evaluates every term.
    std::vector<std::pair<std::string, double>> fuzzify(double x) const;

private:
    std::string name_;
    double lo_;
    double hi_;
    std::vector<Term> terms_;
};

/// IF (var_1 is term_1) AND ... THEN (output is term). Antecedents are
/// full conjunctions over all input variables.
struct FuzzyRule {
    std::vector<std::pair<std::string, std::string>> antecedent;  // (variable, term)
    std::pair<std::string, std::string> consequent;

    bool operator==(const FuzzyRule&) const = default;
};

struct ValidationReport {
    std::size_t rule_count = 0;
    bool complete = false;
    std::vector<std::string> missing_antecedents;
    std::vector<std::string> duplicate_antecedents;
    std::vector<std::string> dangling_references;

    bool ok() const {
        return complete && duplicate_antecedents.empty() && dangling_references.empty();
    }
};

/// Mamdani controller: MIN firing strength, consequent clipping, MAX
/// aggregation, centroid defuzzification over a uniform sampling of the
/// output universe. Immutable after construction.
class FuzzyInferenceSystem {
public:
    FuzzyInferenceSystem(std::vector<LinguisticVariable> inputs, LinguisticVariable output,
                         std::vector<FuzzyRule> rules, int defuzz_samples = 1001);

    // Aggregated output fuzzy set, sampled at defuzz_samples uniform points.
    std::vector<double> infer(const std::map<std::string, double>& crisp_inputs) const;

    // infer + centroid in one call.
    double evaluate(const std::map<std::string, double>& crisp_inputs) const;

    ValidationReport validate() const;

    const std::vector<LinguisticVariable>& inputs() const { return inputs_; }
    const LinguisticVariable& output() const { return output_; }
    const std::vector<FuzzyRule>& rules() const { return rules_; }
    int defuzz_samples() const { return defuzz_samples_; }

private:
    std::vector<LinguisticVariable> inputs_;
    LinguisticVariable output_;
    std::vector<FuzzyRule> rules_;
    int defuzz_samples_;
};

/// Centroid of a sampled fuzzy set over [lo, hi]. All-zero aggregates
/// defuzzify to the universe midpoint.
double defuzzify_centroid(const std::vector<double>& aggregate, double lo, double hi);

/// Uniform overlapping partition: term i peaks at lo + i*(hi-lo)/(k-1)
/// with feet at the neighbouring peaks; the end terms are shouldered
/// trapezoids saturating at the universe ends.
LinguisticVariable make_uniform_partition(std::string var_name, double lo, double hi,
                                          std::vector<std::string> term_names);

nlohmann::json to_json(const MembershipFunction& mf);
nlohmann::json to_json(const LinguisticVariable& var);
nlohmann::json to_json(const FuzzyInferenceSystem& fis);

MembershipFunction mf_from_json(const nlohmann::json& j);
LinguisticVariable variable_from_json(const nlohmann::json& j);
FuzzyInferenceSystem fis_from_json(const nlohmann::json& j);

}  // namespace wsnsim::fuzzy
