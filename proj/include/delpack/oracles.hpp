#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace delpack {

/// Raised when a case has no feasible grid point, which signals a mis-encoded case.
class InfeasibleCase : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class UnknownCase : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

enum class Resolution { Coarse, Default, Fine };

const char* to_string(Resolution r);
Resolution resolution_from_string(const std::string& s);

enum class ClaimKind { Minimum, Monotonicity, Concavity, ActiveConstraints };

const char* to_string(ClaimKind k);

// Absolute tolerance on areas (p = 1).
inline constexpr double kOracleTolerance = 2e-3;
// Grid points violating a constraint by more than this are discarded.
inline constexpr double kFeasibilityTolerance = 1e-12;
// Step and strict margin of the finite-difference sign checks.
inline constexpr double kMonotoneStep = 1e-4;
inline constexpr double kMonotoneMargin = 1e-8;
// Slack below which a constraint counts as active at a minimizer.
inline constexpr double kActiveTolerance = 1e-4;

struct ParamSpec
{
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
};

struct ClaimSpec
{
    std::string label;
    ClaimKind kind = ClaimKind::Minimum;
    // Claimed constant; NaN for sign and activity claims.
    double value = 0.0;
    // True when the constant is a proven lower bound rather than an attained minimum.
    bool lower_bound_only = false;
    std::string minimizer;
};

/// Registry entry: one lemma, its parameter box and its claims.
struct LemmaCase
{
    std::string id;
    std::string title;
    double p = 1.0;
    std::vector<ParamSpec> params;
    std::vector<std::string> constraints;
    std::string objective;
    std::vector<ClaimSpec> claims;
};

/// Grid sizes of a resolution preset.
struct ResolutionPreset
{
    int points = 64;
    std::size_t budget = 0;
    int refine_points = 17;
    int rounds = 2;
    double zoom = 8.0;
    // Outer budget for cases whose objective runs an inner minimization per point.
    std::size_t nested_budget = 0;
    int inner_points = 0;
    int inner_rounds = 0;
    // Grid points per axis of the sign checks.
    int check_points = 0;
};

ResolutionPreset preset(Resolution r);

struct ClaimResult
{
    ClaimSpec spec;
    double found_min = 0.0;
    std::vector<double> argmin;
    double lower_estimate = 0.0;
    // Constant re-derived through the bounding scheme for lower-bound claims; NaN otherwise.
    double rederived = 0.0;
    double claim_delta = 0.0;
    // Objective at the claimed minimizer; NaN when no closed-form minimizer is claimed.
    double witness_value = 0.0;
    bool witness_ok = true;
    // Layout rebuilt from coordinates agrees with the parameters.
    bool consistent = true;
    // Equality characterization checked at the argmin (true when none is stated).
    bool characterized = true;
    std::vector<std::string> active;
    long checks = 0;
    long violations = 0;
    double worst_margin = 0.0;
    std::size_t evaluations = 0;
    std::string note;
    bool pass = false;
};

struct Informational
{
    std::string label;
    double value = 0.0;
};

struct OracleOptions
{
    // Replaces the circumradius bound of the central triangle (cases 4.4 and 4.6).
    std::optional<double> radius_bound;
    double tolerance = kOracleTolerance;
};

struct OracleReport
{
    std::string id;
    std::string title;
    Resolution resolution = Resolution::Default;
    std::optional<double> radius_bound;
    double tolerance = kOracleTolerance;
    std::vector<ParamSpec> params;
    std::vector<ClaimResult> claims;
    std::vector<Informational> informational;
    // Summary of the first claim.
    double found_min = 0.0;
    std::vector<double> argmin;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double claim_delta = 0.0;
    bool pass = false;
};

struct OracleSummary
{
    Resolution resolution = Resolution::Default;
    std::vector<OracleReport> reports;
    int passed = 0;
    int total = 0;
    double max_claim_delta = 0.0;
    bool pass = false;
};

std::vector<LemmaCase> list_cases();

OracleReport run_case(const std::string& id, Resolution resolution = Resolution::Default,
                      const OracleOptions& options = {});

/// Runs every registered case in parallel; the result order follows list_cases().
OracleSummary verify_all(Resolution resolution = Resolution::Default, double tolerance = kOracleTolerance);

nlohmann::json to_json(const LemmaCase& c);
nlohmann::json to_json(const OracleReport& r);
nlohmann::json to_json(const OracleSummary& s);

}  // namespace delpack
