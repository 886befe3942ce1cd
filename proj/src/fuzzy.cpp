#include "wsnsim/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "wsnsim/errors.hpp"

namespace wsnsim::fuzzy {

namespace {

bool non_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[i - 1]) return false;
    return true;
}

std::string antecedent_signature(const std::vector<int>& term_indices) {
    std::ostringstream os;
    for (std::size_t i = 0; i < term_indices.size(); ++i) {
        if (i) os << ',';
        os << term_indices[i];
    }
    return os.str();
}

}  // namespace

MembershipFunction::MembershipFunction(Kind kind, std::vector<double> pts)
    : kind_(kind), pts_(std::move(pts)) {
    for (double p : pts_)
        if (!std::isfinite(p)) throw InputError("membership function: non-finite breakpoint");
    if (!non_decreasing(pts_))
        throw InputError("membership function: breakpoints must be non-decreasing");
}

MembershipFunction MembershipFunction::triangular(double a, double b, double c) {
    return MembershipFunction(Kind::Triangular, {a, b, c});
}

MembershipFunction MembershipFunction::trapezoidal(double a, double b, double c, double d) {
    return MembershipFunction(Kind::Trapezoidal, {a, b, c, d});
}

double MembershipFunction::eval(double x) const {
    if (!std::isfinite(x)) throw InputError("membership eval: non-finite input");
    const double a = pts_.front();
    const double d = pts_.back();
    if (x < a || x > d) return 0.0;
    const double b = pts_[1];
    const double c = (kind_ == Kind::Triangular) ? pts_[1] : pts_[2];
    if (x >= b && x <= c) return 1.0;
    if (x < b) return (x - a) / (b - a);  // b > a here, else x would be on the plateau
    return (d - x) / (d - c);
}

LinguisticVariable::LinguisticVariable(std::string name, double lo, double hi,
                                       std::vector<Term> terms)
    : name_(std::move(name)), lo_(lo), hi_(hi), terms_(std::move(terms)) {
    if (!(std::isfinite(lo_) && std::isfinite(hi_)) || lo_ >= hi_)
        throw InputError("variable '" + name_ + "': universe must be a finite interval lo < hi");
    if (terms_.empty()) throw InputError("variable '" + name_ + "': needs at least one term");

    std::set<std::string> seen;
    const double tol = 1e-12 * span();
    for (const auto& t : terms_) {
        if (!seen.insert(t.name).second)
            throw InputError("variable '" + name_ + "': duplicate term '" + t.name + "'");
        if (t.mf.support_lo() < lo_ - tol || t.mf.support_hi() > hi_ + tol)
            throw InputError("variable '" + name_ + "': term '" + t.name +
                             "' support exceeds the universe");
    }

    // Coverage: every universe point carries at least one nonzero degree.
    const int probes = 2001;
    for (int i = 0; i < probes; ++i) {
        double x = lo_ + (hi_ - lo_) * static_cast<double>(i) / (probes - 1);
        bool covered = false;
        for (const auto& t : terms_)
            if (t.mf.eval(x) > 0.0) {
                covered = true;
                break;
            }
        if (!covered)
            throw InputError("variable '" + name_ + "': universe not covered near x=" +
                             std::to_string(x));
    }
}

const Term* LinguisticVariable::find_term(const std::string& term_name) const {
    for (const auto& t : terms_)
        if (t.name == term_name) return &t;
    return nullptr;
}

int LinguisticVariable::term_index(const std::string& term_name) const {
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].name == term_name) return static_cast<int>(i);
    return -1;
}

double LinguisticVariable::clamp(double x) const { return std::clamp(x, lo_, hi_); }

std::vector<std::pair<std::string, double>> LinguisticVariable::fuzzify(double x) const {
    if (!std::isfinite(x)) throw InputError("fuzzify: non-finite input for '" + name_ + "'");
    const double xc = clamp(x);
    std::vector<std::pair<std::string, double>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.emplace_back(t.name, t.mf.eval(xc));
    return out;
}

FuzzyInferenceSystem::FuzzyInferenceSystem(std::vector<LinguisticVariable> inputs,
                                           LinguisticVariable output,
                                           std::vector<FuzzyRule> rules, int defuzz_samples)
    : inputs_(std::move(inputs)),
      output_(std::move(output)),
      rules_(std::move(rules)),
      defuzz_samples_(defuzz_samples) {
    if (defuzz_samples_ < 101) throw InputError("defuzz_samples must be at least 101");
    std::set<std::string> names;
    for (const auto& v : inputs_)
        if (!names.insert(v.name()).second)
            throw InputError("duplicate input variable '" + v.name() + "'");
}

std::vector<double> FuzzyInferenceSystem::infer(
    const std::map<std::string, double>& crisp_inputs) const {
    if (crisp_inputs.size() != inputs_.size())
        throw InputError("infer: expected " + std::to_string(inputs_.size()) +
                         " inputs, got " + std::to_string(crisp_inputs.size()));

    // Per-variable term degrees at the clamped crisp value.
    std::map<std::string, std::map<std::string, double>> degrees;
    for (const auto& var : inputs_) {
        auto it = crisp_inputs.find(var.name());
        if (it == crisp_inputs.end())
            throw InputError("infer: missing input variable '" + var.name() + "'");
        auto fz = var.fuzzify(it->second);
        degrees[var.name()] = std::map<std::string, double>(fz.begin(), fz.end());
    }

    const int n = defuzz_samples_;
    const double lo = output_.lo();
    const double step = output_.span() / (n - 1);
    std::vector<double> aggregate(static_cast<std::size_t>(n), 0.0);

    for (const auto& rule : rules_) {
        double firing = 1.0;
        for (const auto& [var_name, term_name] : rule.antecedent) {
            auto vit = degrees.find(var_name);
            if (vit == degrees.end())
                throw InputError("infer: rule references unknown variable '" + var_name + "'");
            auto tit = vit->second.find(term_name);
            if (tit == vit->second.end())
                throw InputError("infer: rule references unknown term '" + term_name +
                                 "' of '" + var_name + "'");
            firing = std::min(firing, tit->second);
            if (firing == 0.0) break;
        }
        if (firing == 0.0) continue;

        if (rule.consequent.first != output_.name())
            throw InputError("infer: consequent variable '" + rule.consequent.first +
                             "' is not the output");
        const Term* term = output_.find_term(rule.consequent.second);
        if (!term)
            throw InputError("infer: unknown output term '" + rule.consequent.second + "'");

        for (int i = 0; i < n; ++i) {
            double clipped = std::min(firing, term->mf.eval(lo + step * i));
            if (clipped > aggregate[static_cast<std::size_t>(i)])
                aggregate[static_cast<std::size_t>(i)] = clipped;
        }
    }
    return aggregate;
}

double FuzzyInferenceSystem::evaluate(const std::map<std::string, double>& crisp_inputs) const {
    return defuzzify_centroid(infer(crisp_inputs), output_.lo(), output_.hi());
}

ValidationReport FuzzyInferenceSystem::validate() const {
    ValidationReport report;
    report.rule_count = rules_.size();

    std::map<std::string, int> seen;  // antecedent signature -> count
    for (std::size_t r = 0; r < rules_.size(); ++r) {
        const auto& rule = rules_[r];
        std::vector<int> signature(inputs_.size(), -1);
        bool well_formed = true;

        std::set<std::string> vars_in_rule;
        for (const auto& [var_name, term_name] : rule.antecedent) {
            if (!vars_in_rule.insert(var_name).second) {
                report.dangling_references.push_back(
                    "rule " + std::to_string(r) + ": variable '" + var_name + "' repeated");
                well_formed = false;
                continue;
            }
            bool found = false;
            for (std::size_t v = 0; v < inputs_.size(); ++v) {
                if (inputs_[v].name() != var_name) continue;
                found = true;
                int ti = inputs_[v].term_index(term_name);
                if (ti < 0) {
                    report.dangling_references.push_back(
                        "rule " + std::to_string(r) + ": unknown term '" + term_name +
                        "' of '" + var_name + "'");
                    well_formed = false;
                } else {
                    signature[v] = ti;
                }
                break;
            }
            if (!found) {
                report.dangling_references.push_back(
                    "rule " + std::to_string(r) + ": unknown variable '" + var_name + "'");
                well_formed = false;
            }
        }
        for (std::size_t v = 0; v < inputs_.size(); ++v)
            if (signature[v] < 0) well_formed = false;

        if (rule.consequent.first != output_.name() ||
            !output_.find_term(rule.consequent.second)) {
            report.dangling_references.push_back(
                "rule " + std::to_string(r) + ": dangling consequent '" +
                rule.consequent.first + " is " + rule.consequent.second + "'");
        }

        if (well_formed) {
            auto sig = antecedent_signature(signature);
            if (++seen[sig] == 2) report.duplicate_antecedents.push_back(sig);
        }
    }

    // Walk the full Cartesian grid of input terms.
    std::vector<int> combo(inputs_.size(), 0);
    bool done = inputs_.empty();
    while (!done) {
        auto sig = antecedent_signature(combo);
        if (!seen.count(sig)) report.missing_antecedents.push_back(sig);
        int pos = static_cast<int>(inputs_.size()) - 1;
        while (pos >= 0) {
            if (++combo[static_cast<std::size_t>(pos)] <
                static_cast<int>(inputs_[static_cast<std::size_t>(pos)].terms().size()))
                break;
            combo[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) done = true;
    }
    report.complete = report.missing_antecedents.empty() && !inputs_.empty();
    return report;
}

double defuzzify_centroid(const std::vector<double>& aggregate, double lo, double hi) {
    if (aggregate.size() < 2) throw InputError("defuzzify_centroid: need at least 2 samples");
    const double step = (hi - lo) / static_cast<double>(aggregate.size() - 1);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < aggregate.size(); ++i) {
        // Trapezoid end-weights: without the half weight at the universe
        // ends, aggregates with nonzero boundary membership pick up an
        // O(step) bias against the continuous center of mass.
        const double w = (i == 0 || i + 1 == aggregate.size()) ? 0.5 : 1.0;
        const double mu = w * aggregate[i];
        num += (lo + step * static_cast<double>(i)) * mu;
        den += mu;
    }
    if (den == 0.0) return 0.5 * (lo + hi);
    return num / den;
}

LinguisticVariable make_uniform_partition(std::string var_name, double lo, double hi,
                                          std::vector<std::string> term_names) {
    const std::size_t k = term_names.size();
    if (k == 0) throw InputError("make_uniform_partition: no terms");
    std::vector<Term> terms;
    if (k == 1) {
        terms.push_back({term_names[0], MembershipFunction::trapezoidal(lo, lo, hi, hi)});
        return LinguisticVariable(std::move(var_name), lo, hi, std::move(terms));
    }
    const double h = (hi - lo) / static_cast<double>(k - 1);
    for (std::size_t i = 0; i < k; ++i) {
        const double peak = lo + h * static_cast<double>(i);
        if (i == 0)
            terms.push_back({term_names[i], MembershipFunction::trapezoidal(lo, lo, lo, lo + h)});
        else if (i == k - 1)
            terms.push_back({term_names[i], MembershipFunction::trapezoidal(hi - h, hi, hi, hi)});
        else
            terms.push_back({term_names[i],
                             MembershipFunction::triangular(peak - h, peak, peak + h)});
    }
    return LinguisticVariable(std::move(var_name), lo, hi, std::move(terms));
}

nlohmann::json to_json(const MembershipFunction& mf) {
    return {{"kind", mf.kind() == MembershipFunction::Kind::Triangular ? "triangular"
                                                                       : "trapezoidal"},
            {"breakpoints", mf.breakpoints()}};
}

nlohmann::json to_json(const LinguisticVariable& var) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : var.terms()) {
        auto j = to_json(t.mf);
        j["name"] = t.name;
        terms.push_back(std::move(j));
    }
    return {{"name", var.name()}, {"universe", {var.lo(), var.hi()}}, {"terms", terms}};
}

nlohmann::json to_json(const FuzzyInferenceSystem& fis) {
    nlohmann::json inputs = nlohmann::json::array();
    for (const auto& v : fis.inputs()) inputs.push_back(to_json(v));
    nlohmann::json rules = nlohmann::json::array();
    for (const auto& r : fis.rules()) {
        nlohmann::json ante = nlohmann::json::array();
        for (const auto& [var, term] : r.antecedent) ante.push_back({var, term});
        rules.push_back({{"if", ante}, {"then", {r.consequent.first, r.consequent.second}}});
    }
    return {{"inputs", inputs},
            {"output", to_json(fis.output())},
            {"defuzz_samples", fis.defuzz_samples()},
            {"rules", rules}};
}

MembershipFunction mf_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const auto pts = j.at("breakpoints").get<std::vector<double>>();
    if (kind == "triangular") {
        if (pts.size() != 3) throw InputError("triangular mf needs 3 breakpoints");
        return MembershipFunction::triangular(pts[0], pts[1], pts[2]);
    }
    if (kind == "trapezoidal") {
        if (pts.size() != 4) throw InputError("trapezoidal mf needs 4 breakpoints");
        return MembershipFunction::trapezoidal(pts[0], pts[1], pts[2], pts[3]);
    }
    throw InputError("unknown membership kind '" + kind + "'");
}

LinguisticVariable variable_from_json(const nlohmann::json& j) {
    const auto universe = j.at("universe").get<std::vector<double>>();
    if (universe.size() != 2) throw InputError("universe must be [lo, hi]");
    std::vector<Term> terms;
    for (const auto& tj : j.at("terms"))
        terms.push_back({tj.at("name").get<std::string>(), mf_from_json(tj)});
    return LinguisticVariable(j.at("name").get<std::string>(), universe[0], universe[1],
                              std::move(terms));
}

FuzzyInferenceSystem fis_from_json(const nlohmann::json& j) {
    std::vector<LinguisticVariable> inputs;
    for (const auto& vj : j.at("inputs")) inputs.push_back(variable_from_json(vj));
    LinguisticVariable output = variable_from_json(j.at("output"));
    std::vector<FuzzyRule> rules;
    for (const auto& rj : j.at("rules")) {
        FuzzyRule rule;
        for (const auto& pair : rj.at("if"))
            rule.antecedent.emplace_back(pair.at(0).get<std::string>(),
                                         pair.at(1).get<std::string>());
        rule.consequent = {rj.at("then").at(0).get<std::string>(),
                           rj.at("then").at(1).get<std::string>()};
        rules.push_back(std::move(rule));
    }
    return FuzzyInferenceSystem(std::move(inputs), std::move(output), std::move(rules),
                                j.value("defuzz_samples", 1001));
}

}  // namespace wsnsim::fuzzy
