#include "payback/axioms.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace payback {

namespace {

constexpr std::size_t kMaxStoredWitnesses = 10;

void record(AxiomReport& report, Witness witness) {
    ++report.violation_count;
    if (report.violations.size() < kMaxStoredWitnesses) {
        report.violations.push_back(std::move(witness));
    }
}

Rational gen_rational_in(std::mt19937_64& rng, const Rational& lo, const Rational& hi,
                         unsigned max_denominator) {
    std::uniform_int_distribution<unsigned> den_dist(1, max_denominator);
    unsigned den = den_dist(rng);
    // Round the bounds inward onto the chosen denominator's lattice.
    Rational lo_scaled = lo * den;
    Rational hi_scaled = hi * den;
    BigInt lo_i = numerator(lo_scaled) / denominator(lo_scaled);
    if (Rational(lo_i) < lo_scaled) ++lo_i;  // ceil
    BigInt hi_i = numerator(hi_scaled) / denominator(hi_scaled);
    if (Rational(hi_i) > hi_scaled) --hi_i;  // floor
    if (hi_i < lo_i) hi_i = lo_i;
    std::uniform_int_distribution<long long> num_dist(lo_i.convert_to<long long>(),
                                                      hi_i.convert_to<long long>());
    return Rational(BigInt(num_dist(rng)), BigInt(den));
}

nlohmann::json project_to_json(const Project& x) {
    nlohmann::json events = nlohmann::json::array();
    for (const Event& e : x.events()) {
        events.push_back({to_string(e.time), to_string(e.amount)});
    }
    return events;
}

nlohmann::json extended_to_json(const ExtendedTime& t) {
    if (t.is_finite()) {
        return {{"finite", true}, {"value", to_string(t.finite_value())}};
    }
    return {{"finite", false}};
}

// Canned counterexamples replayed ahead of random trials. These turn the
// existence claims behind each rival functional into reproducible witnesses.
struct CannedPair {
    Project x;
    Project y;
};

std::vector<CannedPair> canned_acons_pairs(const std::string& functional) {
    std::vector<CannedPair> pairs;
    if (functional == "FIRST_BE") {
        pairs.push_back({make_project({{0, -1}, {1, 2}, {2, -3}, {4, 2}}),
                         make_project({{0, -2}, {3, 3}})});
    }
    return pairs;
}

std::vector<CannedPair> canned_mon_pairs(const std::string& functional) {
    std::vector<CannedPair> pairs;
    if (functional == "MODIFIED") {
        pairs.push_back({Project{}, make_project({{1, 1}, {2, -1}})});
    }
    if (functional == "OBS3_RESTRICTED") {
        // x recovers monotonically; y adds a canceling inflow-first bump, which
        // breaks monotonicity of the balance and kicks y out of the restricted
        // domain.
        pairs.push_back({make_project({{0, -1}, {1, 1}}),
                         make_project({{0, -1}, {1, 2}, {2, -1}})});
    }
    return pairs;
}

}  // namespace

const char* to_string(Axiom axiom) {
    switch (axiom) {
        case Axiom::COMP: return "COMP";
        case Axiom::ACONS: return "ACONS";
        case Axiom::MON: return "MON";
        case Axiom::LSC: return "LSC";
        case Axiom::ALPHA_COMP: return "ALPHA_COMP";
        case Axiom::ALPHA_MON: return "ALPHA_MON";
    }
    return "?";
}

PaybackFunctional builtin(const std::string& name) {
    if (name == "LAST_BE") {
        return {name, [](const Project& x) { return payback_period(x); }};
    }
    if (name == "FIRST_BE") {
        return {name, [](const Project& x) { return first_breakeven(x); }};
    }
    if (name == "MODIFIED") {
        return {name, [](const Project& x) { return modified_payback(x); }};
    }
    if (name == "CONST_ZERO") {
        return {name, [](const Project&) { return ExtendedTime(Rational(0)); }};
    }
    if (name == "OBS3_RESTRICTED") {
        return {name, [](const Project& x) {
                    return is_p1(x) ? payback_period(x) : ExtendedTime::infinity();
                }};
    }
    throw std::invalid_argument("unknown functional: " + name);
}

std::vector<std::string> builtin_names() {
    return {"LAST_BE", "FIRST_BE", "MODIFIED", "CONST_ZERO", "OBS3_RESTRICTED"};
}

PaybackFunctional discounted_functional(const DiscountFunction& alpha) {
    return {"DISCOUNTED_LAST_BE",
            [alpha](const Project& x) { return discounted_payback(x, alpha); }};
}

Rational gen_positive_rational(std::mt19937_64& rng, const Rational& max_value,
                               unsigned max_denominator) {
    Rational r = gen_rational_in(rng, Rational(1, max_denominator), max_value, max_denominator);
    return r > 0 ? r : Rational(1, max_denominator);
}

Project gen_project(std::mt19937_64& rng, const GenParams& params) {
    std::uniform_int_distribution<int> count_dist(0, params.max_events);
    int n = count_dist(rng);
    std::vector<Event> raw;
    raw.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Rational t;
        if (params.time_grid) {
            std::uniform_int_distribution<std::size_t> pick(0, params.time_grid->size() - 1);
            t = (*params.time_grid)[pick(rng)];
        } else {
            t = gen_rational_in(rng, 0, params.max_time, params.max_denominator);
        }
        Rational magnitude = gen_positive_rational(rng, params.max_amount, params.max_denominator);
        bool negative = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
        raw.push_back(Event{t, negative ? -magnitude : magnitude});
    }
    // Half the time force sign alternation along the time axis, starting with
    // an outflow, so balances cross zero repeatedly.
    if (!raw.empty() && std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
        std::sort(raw.begin(), raw.end(),
                  [](const Event& a, const Event& b) { return a.time < b.time; });
        bool neg = true;
        for (Event& e : raw) {
            e.amount = neg ? Rational(-abs(e.amount)) : Rational(abs(e.amount));
            neg = !neg;
        }
    }
    return make_project(raw);
}

Project gen_project(std::uint64_t seed, const GenParams& params) {
    std::mt19937_64 rng(seed);
    return gen_project(rng, params);
}

std::pair<Project, Project> gen_dominated_pair(std::mt19937_64& rng, const GenParams& params) {
    Project x = gen_project(rng, params);
    std::uniform_int_distribution<int> count_dist(0, std::max(1, params.max_events / 2));
    int n = count_dist(rng);
    std::vector<Event> bump;
    for (int i = 0; i < n; ++i) {
        Rational t;
        if (params.time_grid) {
            std::uniform_int_distribution<std::size_t> pick(0, params.time_grid->size() - 1);
            t = (*params.time_grid)[pick(rng)];
        } else {
            t = gen_rational_in(rng, 0, params.max_time, params.max_denominator);
        }
        Rational c = gen_positive_rational(rng, params.max_amount, params.max_denominator);
        if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
            // Canceling pair, inflow first: nonnegative balance bump on [t, t').
            Rational later;
            if (params.time_grid) {
                std::uniform_int_distribution<std::size_t> pick(0, params.time_grid->size() - 1);
                later = (*params.time_grid)[pick(rng)];
                if (later < t) std::swap(later, t);
                if (later == t) continue;
            } else {
                later = t + gen_positive_rational(rng, params.max_time, params.max_denominator);
            }
            bump.push_back(Event{t, c});
            bump.push_back(Event{later, -c});
        } else {
            bump.push_back(Event{t, c});
        }
    }
    Project y = add(x, make_project(bump));
    return {x, y};
}

std::pair<Project, Project> gen_dominated_pair(std::uint64_t seed, const GenParams& params) {
    std::mt19937_64 rng(seed);
    return gen_dominated_pair(rng, params);
}

AxiomReport check_comp(const PaybackFunctional& F, std::uint64_t trials, std::uint64_t seed) {
    AxiomReport report{Axiom::COMP, F.name};
    std::mt19937_64 rng(seed);

    auto try_triple = [&](const Rational& a, const Rational& b, const Rational& tau) {
        ++report.trials;
        Project deposit = make_project({Event{0, -a}, Event{tau, b}});
        ExtendedTime observed = F.map(deposit);
        if (!(observed == ExtendedTime(tau))) {
            record(report, Witness{{deposit},
                                   "a=" + to_string(a) + " b=" + to_string(b) +
                                       " tau=" + to_string(tau),
                                   {observed},
                                   "F(-a*1_0 + b*1_tau) = " + to_string(tau)});
        }
    };

    try_triple(1, 2, 5);  // canned: the deposit every functional must price at tau
    for (std::uint64_t i = 1; i < trials; ++i) {
        Rational a = gen_positive_rational(rng, 100, 64);
        Rational b = a + gen_rational_in(rng, 0, 100, 64);
        Rational tau = gen_positive_rational(rng, 12, 64);
        try_triple(a, b, tau);
    }
    return report;
}

AxiomReport check_acons(const PaybackFunctional& F, std::uint64_t trials, std::uint64_t seed) {
    AxiomReport report{Axiom::ACONS, F.name};
    std::mt19937_64 rng(seed);

    auto try_pair = [&](const Project& x, const Project& y) {
        ++report.trials;
        ExtendedTime fx = F.map(x);
        ExtendedTime fy = F.map(y);
        ExtendedTime fsum = F.map(add(x, y));
        if (!(fsum <= max(fx, fy))) {
            record(report, Witness{{x, y},
                                   "",
                                   {fx, fy, fsum},
                                   "F(x+y) <= max(F(x), F(y))"});
        }
    };

    for (const CannedPair& pair : canned_acons_pairs(F.name)) try_pair(pair.x, pair.y);
    GenParams params;
    while (report.trials < trials) {
        Project x = gen_project(rng, params);
        Project y = gen_project(rng, params);
        try_pair(x, y);
    }
    return report;
}

AxiomReport check_mon(const PaybackFunctional& F, std::uint64_t trials, std::uint64_t seed) {
    AxiomReport report{Axiom::MON, F.name};
    std::mt19937_64 rng(seed);

    auto try_pair = [&](const Project& x, const Project& y) {
        ++report.trials;
        ExtendedTime fx = F.map(x);
        ExtendedTime fy = F.map(y);
        if (!(fx >= fy)) {
            record(report, Witness{{x, y}, "x dominated by y", {fx, fy}, "F(x) >= F(y)"});
        }
    };

    for (const CannedPair& pair : canned_mon_pairs(F.name)) try_pair(pair.x, pair.y);
    GenParams params;
    while (report.trials < trials) {
        auto [x, y] = gen_dominated_pair(rng, params);
        try_pair(x, y);
    }
    return report;
}

AxiomReport check_lsc(const PaybackFunctional& F, const Project& x, const Rational& d,
                      const std::vector<Rational>& deltas, std::uint64_t seed) {
    AxiomReport report{Axiom::LSC, F.name};
    if (d <= 0) throw ValidationError("LSC threshold d must be positive");
    if (!(F.map(x) > ExtendedTime(d))) {
        report.applicable = false;  // NOT-APPLICABLE: F(x) <= d
        return report;
    }

    std::mt19937_64 rng(seed);
    const std::size_t n = x.size();

    auto perturb = [&x](const std::vector<Rational>& shifts) {
        std::vector<Event> raw(x.events());
        for (std::size_t i = 0; i < raw.size(); ++i) raw[i].amount += shifts[i];
        return make_project(raw);
    };

    for (const Rational& delta : deltas) {
        if (delta <= 0) throw ValidationError("LSC perturbation radius must be positive");
        ++report.trials;
        std::vector<std::vector<Rational>> samples;
        samples.push_back(std::vector<Rational>(n, delta));    // raise every amount
        samples.push_back(std::vector<Rational>(n, -delta));   // lower every amount
        std::vector<Rational> alternating(n);
        for (std::size_t i = 0; i < n; ++i) alternating[i] = (i % 2 == 0) ? delta : -delta;
        samples.push_back(std::move(alternating));
        for (int s = 0; s < 32; ++s) {
            std::vector<Rational> shifts(n);
            for (std::size_t i = 0; i < n; ++i) {
                shifts[i] = delta * gen_rational_in(rng, -1, 1, 64);
            }
            samples.push_back(std::move(shifts));
        }

        bool safe = true;
        for (const auto& shifts : samples) {
            Project perturbed = perturb(shifts);
            ExtendedTime observed = F.map(perturbed);
            if (observed <= ExtendedTime(d)) {
                safe = false;
                record(report, Witness{{x, perturbed},
                                       "d=" + to_string(d) + " delta=" + to_string(delta),
                                       {observed},
                                       "F(perturbed) > " + to_string(d)});
                break;
            }
        }
        if (safe) {
            if (!report.largest_safe_delta || delta > *report.largest_safe_delta) {
                report.largest_safe_delta = delta;
            }
        }
    }

    // Only an all-deltas failure counts as an LSC violation; shrink the
    // witness list accordingly.
    if (report.largest_safe_delta) {
        report.violations.clear();
        report.violation_count = 0;
    }
    return report;
}

AxiomReport lsc_suite(const PaybackFunctional& F, std::uint64_t count, std::uint64_t seed) {
    AxiomReport report{Axiom::LSC, F.name};
    std::mt19937_64 rng(seed);
    GenParams params;

    std::uint64_t attempts = 0;
    const std::uint64_t max_attempts = count * 50 + 100;
    while (report.trials < count && attempts < max_attempts) {
        ++attempts;
        Project x = gen_project(rng, params);
        if (x.is_zero()) continue;
        ExtendedTime value = F.map(x);
        if (value == ExtendedTime(Rational(0))) continue;  // no d in (0, F(x)) to probe below

        Rational d = value.is_finite() ? Rational(value.finite_value() / 2)
                                       : Rational(x.events().back().time + 5);
        if (d <= 0) continue;

        // Sign margin: smallest nonzero |balance| on the grid. Radius small
        // enough that even all perturbations pulling together cannot flip a
        // sign.
        std::optional<Rational> margin;
        for (const Rational& t : sample_grid(x)) {
            Rational b = abs(evaluate(x, t));
            if (b != 0 && (!margin || b < *margin)) margin = b;
        }
        if (!margin) continue;
        Rational radius = *margin / (2 * Rational(static_cast<long long>(x.size())));

        AxiomReport probe = check_lsc(F, x, d, {radius}, rng());
        if (!probe.applicable) continue;
        ++report.trials;
        if (probe.violation_count > 0) {
            report.violation_count += probe.violation_count;
            for (Witness& w : probe.violations) {
                if (report.violations.size() < kMaxStoredWitnesses) {
                    report.violations.push_back(std::move(w));
                }
            }
        }
    }
    return report;
}

AxiomReport check_alpha_comp(const PaybackFunctional& F, const DiscountFunction& alpha,
                             std::uint64_t trials, std::uint64_t seed) {
    AxiomReport report{Axiom::ALPHA_COMP, F.name};
    if (!alpha.exact_form()) {
        throw DiscountError("alpha-COMP needs an exact (identity/table) discount function");
    }
    std::mt19937_64 rng(seed);

    std::vector<Rational> taus;
    if (alpha.form() == DiscountFunction::Form::TABLE) {
        for (const Rational& t : alpha.table_times()) {
            if (t > 0) taus.push_back(t);
        }
        if (taus.empty()) throw DiscountError("discount table has no positive times");
    }

    for (std::uint64_t i = 0; i < trials; ++i) {
        ++report.trials;
        Rational tau;
        if (!taus.empty()) {
            std::uniform_int_distribution<std::size_t> pick(0, taus.size() - 1);
            tau = taus[pick(rng)];
        } else {
            tau = gen_positive_rational(rng, 12, 64);
        }
        Rational b = gen_positive_rational(rng, 100, 64);
        Rational limit = alpha.factor_at(tau).value * b;
        // Hit the boundary a = alpha(tau)*b on a quarter of the trials.
        Rational a = (std::uniform_int_distribution<int>(0, 3)(rng) == 0)
                         ? limit
                         : limit * gen_positive_rational(rng, 1, 64);
        if (a > limit) a = limit;
        Project deposit = make_project({Event{0, -a}, Event{tau, b}});
        ExtendedTime observed = F.map(deposit);
        if (!(observed == ExtendedTime(tau))) {
            record(report, Witness{{deposit},
                                   "a=" + to_string(a) + " b=" + to_string(b) +
                                       " tau=" + to_string(tau),
                                   {observed},
                                   "F = " + to_string(tau)});
        }
    }
    return report;
}

AxiomReport check_alpha_mon(const PaybackFunctional& F, const DiscountFunction& alpha,
                            std::uint64_t trials, std::uint64_t seed) {
    AxiomReport report{Axiom::ALPHA_MON, F.name};
    if (!alpha.exact_form()) {
        throw DiscountError("alpha-MON needs an exact (identity/table) discount function");
    }
    std::mt19937_64 rng(seed);
    DiscountFunction inv = alpha.inverse();

    GenParams params;
    if (alpha.form() == DiscountFunction::Form::TABLE) {
        params.time_grid = alpha.table_times();
    }

    for (std::uint64_t i = 0; i < trials; ++i) {
        ++report.trials;
        // Dominated in discounted space, mapped back through 1/alpha.
        auto [u, v] = gen_dominated_pair(rng, params);
        Project x = discount_stream(u, inv);
        Project y = discount_stream(v, inv);
        ExtendedTime fx = F.map(x);
        ExtendedTime fy = F.map(y);
        if (!(fx >= fy)) {
            record(report, Witness{{x, y},
                                   "x^(alpha) dominated by y^(alpha)",
                                   {fx, fy},
                                   "F(x) >= F(y)"});
        }
    }
    return report;
}

nlohmann::json report_to_json(const AxiomReport& report) {
    nlohmann::json j;
    j["axiom"] = to_string(report.axiom);
    j["functional"] = report.functional;
    j["trials"] = report.trials;
    j["violation_count"] = report.violation_count;
    j["applicable"] = report.applicable;
    if (report.largest_safe_delta) {
        j["largest_safe_delta"] = to_string(*report.largest_safe_delta);
    }
    nlohmann::json witnesses = nlohmann::json::array();
    for (const Witness& w : report.violations) {
        nlohmann::json jw;
        nlohmann::json inputs = nlohmann::json::array();
        for (const Project& p : w.inputs) inputs.push_back(project_to_json(p));
        jw["inputs"] = inputs;
        jw["params"] = w.params;
        nlohmann::json observed = nlohmann::json::array();
        for (const ExtendedTime& t : w.observed) observed.push_back(extended_to_json(t));
        jw["observed"] = observed;
        jw["expected"] = w.expected_relation;
        witnesses.push_back(jw);
    }
    j["violations"] = witnesses;
    return j;
}

}  // namespace payback
