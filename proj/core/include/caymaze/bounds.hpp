#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "caymaze/simulator.hpp"

namespace caymaze {

using BigInt = boost::multiprecision::cpp_int;

struct BoundParams {
    int m = 1;
    long long q_a = 1;  // max state count across the collective
    long long exponent = 1;
};

// A recurrence value that may exceed any feasible exact representation.
// Values up to the digit cap are exact big integers; above that we keep a
// base-10 logarithm, and beyond double range only the fact that the value
// dwarfs everything else. Comparisons against machine-sized observations
// stay sound in all three regimes.
class BoundValue {
public:
    enum class Kind { Exact, Log10, Astronomical };

    static BoundValue exact(BigInt v);
    static BoundValue log10_approx(double lg);
    static BoundValue astronomical();

    Kind kind() const { return kind_; }
    const BigInt& value() const { return value_; }  // Exact only
    double log10() const;  // Exact/Log10; +inf for Astronomical

    bool operator<(const BoundValue& o) const;
    bool at_least(long long x) const;  // *this >= x

    BoundValue add(const BoundValue& o) const;
    BoundValue mul(const BoundValue& o) const;
    // (base)^(exp * this), with the digit cap applied to the result.
    static BoundValue power_of(long long base, const BoundValue& exponent,
                               long long multiplier, long long digit_cap);

    std::string render(std::size_t digit_threshold = 80) const;

private:
    Kind kind_ = Kind::Exact;
    BigInt value_;
    double log10_ = 0.0;
};

struct BoundTable {
    std::vector<BoundValue> H;  // H[l-1] = H_l
    std::vector<BoundValue> O;  // O[l-1] = O_l
};

class BoundsError : public std::exception {
public:
    explicit BoundsError(std::string msg) : msg_(std::move(msg)) {}
    const char* what() const noexcept override { return msg_.c_str(); }

private:
    std::string msg_;
};

// Evaluates the recurrence
//   H_1 = 1, O_1 = Q_A,
//   H_l = max( max_{i<l} H_i,
//              max_{i+j=l} ( max(O_i, O_j) + M^2 * O_i * O_j + 1 ) ),
//   O_l = (Q_A * l)^(l * H_l) + H_l.
// exact_only = true reproduces the strict behaviour: a value past the digit
// cap raises BoundsError("ResourceLimit") instead of degrading to a
// logarithmic summary.
BoundTable compute_bounds(const BoundParams& params,
                          long long digit_cap = 1'000'000,
                          bool exact_only = false);

// (Q_A * m)^m, the cap on distinct collective states.
BigInt state_count_bound(int m, long long q_a);

struct BoundCheck {
    bool passed = true;
    std::string detail;
};

// U <= O_m, T_q <= O_m, T_pair <= M * O_m for a FiniteExploration report.
BoundCheck check_report(const ExplorationReport& report,
                        const BoundTable& table, long long exponent);

}  // namespace caymaze
