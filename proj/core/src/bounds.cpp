#include "caymaze/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace caymaze {

namespace {

double big_log10(const BigInt& v) {
    // exact enough for ordering values that differ at all
    if (v <= 0) return -std::numeric_limits<double>::infinity();
    const std::size_t bits = boost::multiprecision::msb(v);
    if (bits < 900) return std::log10(v.convert_to<double>());
    const BigInt top = v >> (bits - 64);
    return std::log10(top.convert_to<double>()) +
           static_cast<double>(bits - 64) * std::log10(2.0);
}

}  // namespace

BoundValue BoundValue::exact(BigInt v) {
    BoundValue b;
    b.kind_ = Kind::Exact;
    b.value_ = std::move(v);
    b.log10_ = big_log10(b.value_);
    return b;
}

BoundValue BoundValue::log10_approx(double lg) {
    BoundValue b;
    b.kind_ = Kind::Log10;
    b.log10_ = lg;
    return b;
}

BoundValue BoundValue::astronomical() {
    BoundValue b;
    b.kind_ = Kind::Astronomical;
    b.log10_ = std::numeric_limits<double>::infinity();
    return b;
}

double BoundValue::log10() const { return log10_; }

bool BoundValue::operator<(const BoundValue& o) const {
    if (kind_ == Kind::Exact && o.kind_ == Kind::Exact)
        return value_ < o.value_;
    return log10_ < o.log10_;
}

bool BoundValue::at_least(long long x) const {
    if (kind_ == Kind::Exact) return value_ >= x;
    return true;  // any non-exact value has > 10^6 digits
}

BoundValue BoundValue::add(const BoundValue& o) const {
    if (kind_ == Kind::Exact && o.kind_ == Kind::Exact)
        return exact(value_ + o.value_);
    if (kind_ == Kind::Astronomical || o.kind_ == Kind::Astronomical)
        return astronomical();
    // dominated by the larger term at these magnitudes
    return log10_approx(std::max(log10_, o.log10_));
}

BoundValue BoundValue::mul(const BoundValue& o) const {
    if (kind_ == Kind::Exact && o.kind_ == Kind::Exact)
        return exact(value_ * o.value_);
    if (kind_ == Kind::Astronomical || o.kind_ == Kind::Astronomical)
        return astronomical();
    return log10_approx(log10_ + o.log10_);
}

BoundValue BoundValue::power_of(long long base, const BoundValue& exponent,
                                long long multiplier, long long digit_cap) {
    const double lg_base = std::log10(static_cast<double>(base));
    if (exponent.kind() == Kind::Astronomical) return astronomical();

    if (exponent.kind() == Kind::Exact) {
        const BigInt e = exponent.value() * multiplier;
        if (e < BigInt(1) << 62 &&
            e.convert_to<double>() * lg_base <= static_cast<double>(digit_cap)) {
            unsigned long long k = e.convert_to<unsigned long long>();
            BigInt acc = 1;
            BigInt b = base;
            while (k > 0) {
                if (k & 1) acc *= b;
                if (k >>= 1) b *= b;
            }
            return BoundValue::exact(acc);
        }
        const double lg_e = big_log10(e);
        if (lg_e > 300.0) return astronomical();
        const double result_lg = std::pow(10.0, lg_e) * lg_base;
        return std::isfinite(result_lg) ? log10_approx(result_lg)
                                        : astronomical();
    }

    // exponent known only through its log10
    const double lg_e =
        exponent.log10() + std::log10(static_cast<double>(multiplier));
    if (lg_e > 300.0) return astronomical();
    const double result_lg = std::pow(10.0, lg_e) * lg_base;
    return std::isfinite(result_lg) ? log10_approx(result_lg)
                                    : astronomical();
}

std::string BoundValue::render(std::size_t digit_threshold) const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Exact: {
            const std::string s = value_.str();
            if (s.size() <= digit_threshold) return s;
            os << s.substr(0, 12) << "... (" << s.size() << " digits)";
            return os.str();
        }
        case Kind::Log10:
            os << "~10^" << static_cast<long long>(log10_) << " (approx)";
            return os.str();
        case Kind::Astronomical:
            return ">10^(10^300) (astronomical)";
    }
    return "?";
}

BoundTable compute_bounds(const BoundParams& params, long long digit_cap,
                          bool exact_only) {
    if (params.m < 1 || params.q_a < 1 || params.exponent < 1)
        throw BoundsError("compute_bounds: parameters must be >= 1");
    BoundTable table;
    table.H.push_back(BoundValue::exact(1));
    table.O.push_back(BoundValue::exact(params.q_a));
    const BoundValue m_sq =
        BoundValue::exact(BigInt(params.exponent) * params.exponent);
    for (int l = 2; l <= params.m; ++l) {
        BoundValue h = table.H.back();  // H is nondecreasing
        for (int i = 1; i < l; ++i) {
            const int j = l - i;
            const BoundValue& oi = table.O[i - 1];
            const BoundValue& oj = table.O[j - 1];
            BoundValue cand = std::max(oi, oj)
                                  .add(m_sq.mul(oi).mul(oj))
                                  .add(BoundValue::exact(1));
            if (h < cand) h = cand;
        }
        BoundValue o = BoundValue::power_of(params.q_a * l, h, l, digit_cap)
                           .add(h);
        if (exact_only && o.kind() != BoundValue::Kind::Exact)
            throw BoundsError("ResourceLimit: O_" + std::to_string(l) +
                              " exceeds the digit cap");
        table.H.push_back(std::move(h));
        table.O.push_back(std::move(o));
    }
    return table;
}

BigInt state_count_bound(int m, long long q_a) {
    if (m < 1 || q_a < 1)
        throw BoundsError("state_count_bound: parameters must be >= 1");
    BigInt base = BigInt(q_a) * m;
    BigInt acc = 1;
    for (int i = 0; i < m; ++i) acc *= base;
    return acc;
}

BoundCheck check_report(const ExplorationReport& report,
                        const BoundTable& table, long long exponent) {
    BoundCheck out;
    if (report.verdict != Verdict::FiniteExploration) {
        out.passed = false;
        out.detail = "report verdict is not FiniteExploration";
        return out;
    }
    const BoundValue& o_m = table.O.back();
    if (!o_m.at_least(report.preperiod)) {
        out.passed = false;
        out.detail = "U exceeds O_m";
        return out;
    }
    if (!report.quotient_period || !o_m.at_least(*report.quotient_period)) {
        out.passed = false;
        out.detail = "T_q exceeds O_m";
        return out;
    }
    const BoundValue mo = o_m.mul(BoundValue::exact(exponent));
    if (!report.pair_period || !mo.at_least(*report.pair_period)) {
        out.passed = false;
        out.detail = "T_pair exceeds M * O_m";
        return out;
    }
    return out;
}

}  // namespace caymaze
