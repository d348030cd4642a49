#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "payback/cashflow.hpp"
#include "payback/discount.hpp"
#include "payback/metrics.hpp"

#include <nlohmann/json_fwd.hpp>

namespace payback {

enum class Axiom { COMP, ACONS, MON, LSC, ALPHA_COMP, ALPHA_MON };

const char* to_string(Axiom axiom);

// A payback functional under test: any total map from projects to extended
// time. The harness treats it as a black box.
struct PaybackFunctional {
    std::string name;
    std::function<ExtendedTime(const Project&)> map;
};

// Named built-ins:
//   LAST_BE          — the payback period (last break-even point).
//   FIRST_BE         — first break-even point.
//   MODIFIED         — break-even of the modified cumulative stream.
//   CONST_ZERO       — identically zero.
//   OBS3_RESTRICTED  — last break-even on the nondecreasing-recovery class,
//                      +inf elsewhere.
PaybackFunctional builtin(const std::string& name);
std::vector<std::string> builtin_names();

PaybackFunctional discounted_functional(const DiscountFunction& alpha);

// A concrete violation (or replayed counterexample): re-running the
// functional on `inputs` reproduces `observed` exactly.
struct Witness {
    std::vector<Project> inputs;
    std::string params;
    std::vector<ExtendedTime> observed;
    std::string expected_relation;
};

struct AxiomReport {
    Axiom axiom;
    std::string functional;
    std::uint64_t trials = 0;
    std::uint64_t violation_count = 0;
    std::vector<Witness> violations;              // first few, in trial order
    bool applicable = true;                       // false: precondition unmet
    std::optional<Rational> largest_safe_delta;   // LSC only

    bool passed() const { return applicable && violation_count == 0; }
};

nlohmann::json report_to_json(const AxiomReport& report);

struct GenParams {
    int max_events = 8;
    Rational max_time = 12;
    Rational max_amount = 100;
    unsigned max_denominator = 64;
    // When set, event times are drawn from this grid (needed so tabulated
    // discount functions stay defined at every generated time).
    std::optional<std::vector<Rational>> time_grid;
};

// Deterministic given the rng state; biased toward sign-alternating balances
// so nonconventional cases dominate.
Project gen_project(std::mt19937_64& rng, const GenParams& params);
Project gen_project(std::uint64_t seed, const GenParams& params);

// Returns (x, y) with dominates(x, y) by construction: y = x + n where n has
// nonnegative balance (nonnegative amounts, or canceling pairs inflow-first).
std::pair<Project, Project> gen_dominated_pair(std::mt19937_64& rng, const GenParams& params);
std::pair<Project, Project> gen_dominated_pair(std::uint64_t seed, const GenParams& params);

Rational gen_positive_rational(std::mt19937_64& rng, const Rational& max_value,
                               unsigned max_denominator);

// COMP: F(-a*1_0 + b*1_tau) = tau for random 0 < a <= b, tau > 0.
AxiomReport check_comp(const PaybackFunctional& F, std::uint64_t trials, std::uint64_t seed);

// ACONS: F(x + y) <= max(F(x), F(y)); replays canned witnesses first.
AxiomReport check_acons(const PaybackFunctional& F, std::uint64_t trials, std::uint64_t seed);

// MON: x dominated by y implies F(x) >= F(y); replays canned witnesses first.
AxiomReport check_mon(const PaybackFunctional& F, std::uint64_t trials, std::uint64_t seed);

// LSC probe at a single project: perturbs every event amount independently
// within [-delta, delta] (times fixed) and records whether F can be pushed
// down to <= d. Requires F(x) > d; otherwise the report is marked
// not-applicable.
AxiomReport check_lsc(const PaybackFunctional& F, const Project& x, const Rational& d,
                      const std::vector<Rational>& deltas, std::uint64_t seed = 0);

// Margin-bounded LSC sweep: generates `count` projects with F(x) > d for a
// d below F(x), and probes amount perturbations with radius small enough that
// no grid balance can change sign (min nonzero |balance| over the grid,
// halved, divided by the event count since perturbations accumulate).
AxiomReport lsc_suite(const PaybackFunctional& F, std::uint64_t count, std::uint64_t seed);

// alpha-COMP: F(-a*1_0 + b*1_tau) = tau for 0 < a <= alpha(tau)*b, boundary
// included. Requires an exact-form alpha.
AxiomReport check_alpha_comp(const PaybackFunctional& F, const DiscountFunction& alpha,
                             std::uint64_t trials, std::uint64_t seed);

// alpha-MON: x^(alpha) dominated by y^(alpha) implies F(x) >= F(y). Pairs are
// generated dominated in discounted space and mapped back through 1/alpha.
AxiomReport check_alpha_mon(const PaybackFunctional& F, const DiscountFunction& alpha,
                            std::uint64_t trials, std::uint64_t seed);

}  // namespace payback
