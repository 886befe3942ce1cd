#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "wsnsim/errors.hpp"
#include "wsnsim/fuzzy.hpp"
#include "wsnsim/rng.hpp"

using namespace wsnsim;
using namespace wsnsim::fuzzy;

namespace {

// Independent piecewise-linear evaluation used by the oracle below, written
// from the breakpoint definition rather than calling MembershipFunction::eval.
double pl_eval(const std::vector<double>& p, double x) {
    const double a = p.front(), d = p.back();
    const double b = p[1];
    const double c = p.size() == 3 ? p[1] : p[2];
    if (x < a || x > d) return 0.0;
    if (x >= b && x <= c) return 1.0;
    if (x < b) return (x - a) / (b - a);
    return (d - x) / (d - c);
}

// Brute-force dense-grid Mamdani oracle: MIN firing, clip, MAX, centroid.
double mamdani_oracle(const FuzzyInferenceSystem& fis,
                      const std::map<std::string, double>& crisp, int samples) {
    std::map<std::string, std::map<std::string, double>> degrees;
    for (const auto& var : fis.inputs()) {
        double x = std::clamp(crisp.at(var.name()), var.lo(), var.hi());
        for (const auto& t : var.terms())
            degrees[var.name()][t.name] = pl_eval(t.mf.breakpoints(), x);
    }
    const double lo = fis.output().lo(), hi = fis.output().hi();
    const double step = (hi - lo) / (samples - 1);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = lo + step * i;
        double mu = 0.0;
        for (const auto& rule : fis.rules()) {
            double firing = 1.0;
            for (const auto& [var, term] : rule.antecedent)
                firing = std::min(firing, degrees.at(var).at(term));
            const Term* t = fis.output().find_term(rule.consequent.second);
            mu = std::max(mu, std::min(firing, pl_eval(t->mf.breakpoints(), x)));
        }
        num += x * mu;
        den += mu;
    }
    if (den == 0.0) return 0.5 * (lo + hi);
    return num / den;
}

LinguisticVariable two_sided(const std::string& name, double lo, double hi, SplitMix64& rng) {
    // Two shouldered trapezoids whose plateaus guarantee coverage.
    double cuts[4];
    for (double& c : cuts) c = rng.uniform(lo, hi);
    std::sort(std::begin(cuts), std::end(cuts));
    const double m0 = cuts[0], m1 = cuts[1], m2 = cuts[2], m3 = cuts[3];
    std::vector<Term> terms;
    terms.push_back({"L", MembershipFunction::trapezoidal(lo, lo, m1, m3)});
    terms.push_back({"H", MembershipFunction::trapezoidal(m0, m2, hi, hi)});
    return LinguisticVariable(name, lo, hi, std::move(terms));
}

FuzzyInferenceSystem random_two_input_fis(SplitMix64& rng) {
    std::vector<LinguisticVariable> inputs;
    inputs.push_back(two_sided("a", 0.0, 1.0, rng));
    inputs.push_back(two_sided("b", 0.0, 1.0, rng));
    LinguisticVariable output = two_sided("out", 0.0, 1.0, rng);
    std::vector<FuzzyRule> rules;
    for (const std::string& ta : {"L", "H"})
        for (const std::string& tb : {"L", "H"}) {
            const char* to = rng.next_double() < 0.5 ? "L" : "H";
            rules.push_back({{{"a", ta}, {"b", tb}}, {"out", to}});
        }
    return FuzzyInferenceSystem(std::move(inputs), std::move(output), std::move(rules));
}

}  // namespace

TEST_CASE("membership evaluation on triangles and trapezoids") {
    auto tri = MembershipFunction::triangular(0.0, 0.5, 1.0);
    CHECK(tri.eval(0.5) == doctest::Approx(1.0));
    CHECK(tri.eval(1.2) == 0.0);
    CHECK(tri.eval(-0.1) == 0.0);
    CHECK(tri.eval(0.25) == doctest::Approx(0.5));

    auto trap = MembershipFunction::trapezoidal(0.0, 0.2, 0.4, 0.6);
    CHECK(trap.eval(0.1) == doctest::Approx(0.5));
    CHECK(trap.eval(0.3) == doctest::Approx(1.0));
    CHECK(trap.eval(0.2) == doctest::Approx(1.0));
    CHECK(trap.eval(0.5) == doctest::Approx(0.5));
    CHECK(trap.eval(0.7) == 0.0);
}

TEST_CASE("malformed breakpoints are rejected at construction") {
    CHECK_THROWS_AS(MembershipFunction::triangular(0.5, 0.2, 1.0), InputError);
    CHECK_THROWS_AS(MembershipFunction::trapezoidal(0.0, 0.5, 0.4, 1.0), InputError);
    const double nan = std::nan("");
    CHECK_THROWS_AS(MembershipFunction::triangular(0.0, nan, 1.0), InputError);
}

TEST_CASE("membership degrees stay in [0,1] everywhere") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        double p[4];
        for (double& v : p) v = rng.uniform(-5.0, 5.0);
        std::sort(std::begin(p), std::end(p));
        auto mf = trial % 2 == 0 ? MembershipFunction::triangular(p[0], p[1], p[2])
                                 : MembershipFunction::trapezoidal(p[0], p[1], p[2], p[3]);
        for (int i = 0; i < 50; ++i) {
            const double deg = mf.eval(rng.uniform(-10.0, 10.0));
            CHECK(deg >= 0.0);
            CHECK(deg <= 1.0);
        }
    }
}

TEST_CASE("fuzzify clamps and saturates at universe ends") {
    auto var = make_uniform_partition("r_energy", 0.0, 1.0, {"Low", "Medium", "High"});

    auto at_zero = var.fuzzify(0.0);
    double best = -1.0;
    std::string best_term;
    for (const auto& [term, deg] : at_zero)
        if (deg > best) {
            best = deg;
            best_term = term;
        }
    CHECK(best_term == "Low");

    CHECK(var.fuzzify(-3.0) == var.fuzzify(0.0));
    CHECK(var.fuzzify(2.0) == var.fuzzify(1.0));
    CHECK_THROWS_AS(var.fuzzify(std::nan("")), InputError);

    auto mid = var.fuzzify(0.5);
    CHECK(mid[0].second == doctest::Approx(0.0));
    CHECK(mid[1].second == doctest::Approx(1.0));
    CHECK(mid[2].second == doctest::Approx(0.0));

    bool any_positive = false;
    for (const auto& [term, deg] : var.fuzzify(0.123)) any_positive |= deg > 0.0;
    CHECK(any_positive);
}

TEST_CASE("linguistic variable invariants are enforced") {
    std::vector<Term> dup = {{"A", MembershipFunction::trapezoidal(0, 0, 1, 1)},
                             {"A", MembershipFunction::trapezoidal(0, 0, 1, 1)}};
    CHECK_THROWS_AS(LinguisticVariable("v", 0.0, 1.0, dup), InputError);

    std::vector<Term> outside = {{"A", MembershipFunction::triangular(-0.5, 0.5, 1.0)}};
    CHECK_THROWS_AS(LinguisticVariable("v", 0.0, 1.0, outside), InputError);

    // A hole in the middle of the universe breaks coverage.
    std::vector<Term> holes = {{"A", MembershipFunction::triangular(0.0, 0.1, 0.3)},
                               {"B", MembershipFunction::triangular(0.7, 0.9, 1.0)}};
    CHECK_THROWS_AS(LinguisticVariable("v", 0.0, 1.0, holes), InputError);
}

TEST_CASE("inference: degenerate, identity-clip and nested-clip aggregates") {
    // One input with two terms; only a rule on the term that never fires.
    std::vector<LinguisticVariable> inputs;
    inputs.push_back(LinguisticVariable(
        "x", 0.0, 1.0,
        {{"L", {MembershipFunction::triangular(0.0, 0.0, 1.0)}},
         {"H", {MembershipFunction::triangular(0.0, 1.0, 1.0)}}}));
    LinguisticVariable output(
        "y", 0.0, 1.0, {{"T", {MembershipFunction::triangular(0.2, 0.5, 0.8)}},
                        {"U", {MembershipFunction::trapezoidal(0.0, 0.0, 1.0, 1.0)}}});

    SUBCASE("no rule fires -> all-zero aggregate, midpoint defuzzification") {
        FuzzyInferenceSystem fis(inputs, output, {{{{"x", "H"}}, {"y", "T"}}});
        auto agg = fis.infer({{"x", 0.0}});  // H has degree 0 at x=0
        for (double mu : agg) CHECK(mu == 0.0);
        CHECK(fis.evaluate({{"x", 0.0}}) == doctest::Approx(0.5));
    }

    SUBCASE("single rule at full strength reproduces the consequent term") {
        FuzzyInferenceSystem fis(inputs, output, {{{{"x", "L"}}, {"y", "T"}}});
        auto agg = fis.infer({{"x", 0.0}});  // L has degree 1 at x=0
        const auto* term = fis.output().find_term("T");
        for (std::size_t i = 0; i < agg.size(); ++i) {
            const double xi = static_cast<double>(i) / (agg.size() - 1);
            CHECK(agg[i] == doctest::Approx(term->mf.eval(xi)));
        }
    }

    SUBCASE("two rules clipping one term aggregate to the larger clip") {
        // At x=0.7: L fires 0.3, H fires 0.7; both point at T.
        FuzzyInferenceSystem fis(inputs, output,
                                 {{{{"x", "L"}}, {"y", "T"}}, {{{"x", "H"}}, {"y", "T"}}});
        auto agg = fis.infer({{"x", 0.7}});
        const auto* term = fis.output().find_term("T");
        for (std::size_t i = 0; i < agg.size(); ++i) {
            const double xi = static_cast<double>(i) / (agg.size() - 1);
            CHECK(agg[i] == doctest::Approx(std::min(0.7, term->mf.eval(xi))));
        }
    }

    SUBCASE("missing or extra inputs are input errors") {
        FuzzyInferenceSystem fis(inputs, output, {{{{"x", "L"}}, {"y", "T"}}});
        CHECK_THROWS_AS(fis.infer({}), InputError);
        CHECK_THROWS_AS(fis.infer({{"x", 0.1}, {"z", 0.2}}), InputError);
        CHECK_THROWS_AS(fis.infer({{"z", 0.2}}), InputError);
    }
}

TEST_CASE("centroid defuzzification") {
    SUBCASE("symmetric aggregates defuzzify to their center") {
        auto tri = MembershipFunction::triangular(0.2, 0.5, 0.8);
        for (double clip : {1.0, 0.6, 0.25}) {
            std::vector<double> agg(1001);
            for (std::size_t i = 0; i < agg.size(); ++i)
                agg[i] = std::min(clip, tri.eval(static_cast<double>(i) / 1000.0));
            CHECK(defuzzify_centroid(agg, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-9));
        }
    }

    SUBCASE("all-zero aggregate returns the universe midpoint") {
        std::vector<double> zeros(1001, 0.0);
        CHECK(defuzzify_centroid(zeros, 0.0, 1.0) == doctest::Approx(0.5));
        CHECK(defuzzify_centroid(zeros, 2.0, 6.0) == doctest::Approx(4.0));
    }

    SUBCASE("asymmetric two-input aggregate matches a dense numeric oracle") {
        std::vector<LinguisticVariable> inputs;
        inputs.push_back(LinguisticVariable(
            "x", 0.0, 1.0,
            {{"L", {MembershipFunction::triangular(0.0, 0.0, 1.0)}},
             {"H", {MembershipFunction::triangular(0.0, 1.0, 1.0)}}}));
        inputs.push_back(LinguisticVariable(
            "w", 0.0, 1.0, {{"any", {MembershipFunction::trapezoidal(0.0, 0.0, 1.0, 1.0)}}}));
        LinguisticVariable output(
            "y", 0.0, 1.0, {{"low", {MembershipFunction::triangular(0.0, 0.2, 0.6)}},
                            {"high", {MembershipFunction::triangular(0.3, 0.8, 1.0)}},
                            {"cover", {MembershipFunction::trapezoidal(0.0, 0.0, 1.0, 1.0)}}});
        FuzzyInferenceSystem fis(inputs, output,
                                 {{{{"x", "L"}, {"w", "any"}}, {"y", "low"}},
                                  {{{"x", "H"}, {"w", "any"}}, {"y", "high"}}});
        const std::map<std::string, double> crisp{{"x", 0.3}, {"w", 0.5}};
        const double got = fis.evaluate(crisp);
        const double want = mamdani_oracle(fis, crisp, 1000001);
        CHECK(std::abs(got - want) < 1e-6);
    }

    SUBCASE("result stays within the universe") {
        SplitMix64 rng(42);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> agg(201);
            for (double& mu : agg) mu = rng.next_double() < 0.3 ? 0.0 : rng.next_double();
            const double v = defuzzify_centroid(agg, -2.0, 3.0);
            CHECK(v >= -2.0);
            CHECK(v <= 3.0);
        }
    }
}

TEST_CASE("monotone shift: translating a single-term system shifts the centroid") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const double lo = rng.uniform(-4.0, 0.0);
        const double hi = lo + rng.uniform(0.5, 5.0);
        double p[3] = {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
        std::sort(std::begin(p), std::end(p));
        const double delta = rng.uniform(-10.0, 10.0);

        auto build = [&](double shift) {
            std::vector<LinguisticVariable> ins;
            ins.push_back(LinguisticVariable(
                "x", 0.0, 1.0, {{"on", {MembershipFunction::trapezoidal(0, 0, 1, 1)}}}));
            LinguisticVariable out(
                "y", lo + shift, hi + shift,
                {{"t", {MembershipFunction::triangular(p[0] + shift, p[1] + shift,
                                                       p[2] + shift)}},
                 {"cover", {MembershipFunction::trapezoidal(lo + shift, lo + shift, hi + shift,
                                                            hi + shift)}}});
            return FuzzyInferenceSystem(std::move(ins), std::move(out),
                                        {{{{"x", "on"}}, {"y", "t"}}});
        };

        const double base = build(0.0).evaluate({{"x", 0.5}});
        const double shifted = build(delta).evaluate({{"x", 0.5}});
        CHECK(std::abs(shifted - (base + delta)) <= 1e-9 * (hi - lo) + 1e-12);
    }
}

TEST_CASE("oracle equivalence on random 2-input systems") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        auto fis = random_two_input_fis(rng);
        const std::map<std::string, double> crisp{{"a", rng.next_double()},
                                                  {"b", rng.next_double()}};
        const double got = fis.evaluate(crisp);
        const double want = mamdani_oracle(fis, crisp, 200001);
        CHECK(std::abs(got - want) < 1e-4);
    }
}

TEST_CASE("inference is pure: repeated calls are bit-identical") {
    SplitMix64 rng(5);
    auto fis = random_two_input_fis(rng);
    const std::map<std::string, double> crisp{{"a", 0.37}, {"b", 0.81}};
    auto first = fis.infer(crisp);
    for (int i = 0; i < 5; ++i) CHECK(fis.infer(crisp) == first);
}

TEST_CASE("rule-base validation reports") {
    std::vector<LinguisticVariable> inputs;
    inputs.push_back(make_uniform_partition("a", 0.0, 1.0, {"L", "H"}));
    inputs.push_back(make_uniform_partition("b", 0.0, 1.0, {"L", "M", "H"}));
    LinguisticVariable output = make_uniform_partition("y", 0.0, 1.0, {"N", "P"});

    std::vector<FuzzyRule> rules;
    for (const std::string& ta : {"L", "H"})
        for (const std::string& tb : {"L", "M", "H"})
            rules.push_back({{{"a", ta}, {"b", tb}}, {"y", "N"}});

    SUBCASE("full grid validates as complete") {
        FuzzyInferenceSystem fis(inputs, output, rules);
        auto report = fis.validate();
        CHECK(report.rule_count == 6);
        CHECK(report.complete);
        CHECK(report.ok());
    }

    SUBCASE("removing a rule lists the missing antecedent") {
        auto missing = rules;
        missing.pop_back();  // drops (a=H, b=H) == signature "1,2"
        FuzzyInferenceSystem fis(inputs, output, missing);
        auto report = fis.validate();
        CHECK_FALSE(report.complete);
        REQUIRE(report.missing_antecedents.size() == 1);
        CHECK(report.missing_antecedents[0] == "1,2");
    }

    SUBCASE("duplicating a rule is flagged") {
        auto dup = rules;
        dup.push_back(rules.front());
        FuzzyInferenceSystem fis(inputs, output, dup);
        auto report = fis.validate();
        CHECK(report.duplicate_antecedents.size() == 1);
        CHECK_FALSE(report.ok());
    }

    SUBCASE("dangling term references are reported") {
        auto bad = rules;
        bad[0].antecedent[0].second = "Huge";
        FuzzyInferenceSystem fis(inputs, output, bad);
        auto report = fis.validate();
        CHECK_FALSE(report.dangling_references.empty());
        CHECK_FALSE(report.ok());
    }
}

TEST_CASE("uniform partitions cover their universe with interior peaks") {
    for (int k = 2; k <= 6; ++k) {
        std::vector<std::string> names;
        for (int i = 0; i < k; ++i) names.push_back("t" + std::to_string(i));
        auto var = make_uniform_partition("v", 0.0, 1.0, names);
        REQUIRE(static_cast<int>(var.terms().size()) == k);
        for (int i = 1; i + 1 < k; ++i) {
            const double peak = static_cast<double>(i) / (k - 1);
            CHECK(var.terms()[i].mf.eval(peak) == doctest::Approx(1.0));
        }
        CHECK(var.terms().front().mf.eval(0.0) == doctest::Approx(1.0));
        CHECK(var.terms().back().mf.eval(1.0) == doctest::Approx(1.0));
    }
}

TEST_CASE("JSON round trip preserves structure and behaviour") {
    SplitMix64 rng(99);
    auto fis = random_two_input_fis(rng);
    auto doc = to_json(fis);
    auto back = fis_from_json(doc);

    CHECK(back.inputs().size() == fis.inputs().size());
    CHECK(back.rules() == fis.rules());
    CHECK(back.defuzz_samples() == fis.defuzz_samples());
    CHECK(to_json(back) == doc);

    for (int i = 0; i < 10; ++i) {
        const std::map<std::string, double> crisp{{"a", rng.next_double()},
                                                  {"b", rng.next_double()}};
        CHECK(back.evaluate(crisp) == fis.evaluate(crisp));
    }
}
