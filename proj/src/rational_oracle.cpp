#include "gamblekit/rational_oracle.hpp"

#include <cctype>
#include <vector>

namespace gamblekit {

namespace mp = boost::multiprecision;

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

[[noreturn]] void reject(std::string_view text) {
    throw DomainError("not an exact rational literal: '" + std::string(text) + "'");
}

mp::cpp_int pow10(long e) {
    mp::cpp_int r = 1;
    for (long i = 0; i < e; ++i) {
        r *= 10;
    }
    return r;
}

Rational pow(const Rational& base, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) {
        r *= base;
    }
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational value;
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = s.substr(0, slash);
        const auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            reject(text);
        }
        const mp::cpp_int d{std::string(den)};
        if (d == 0) {
            throw DomainError("zero denominator in '" + std::string(text) + "'");
        }
        value = Rational(mp::cpp_int{std::string(num)}, d);
    } else {
        long exponent = 0;
        if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            auto exp_part = s.substr(e + 1);
            bool exp_negative = false;
            if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
                exp_negative = exp_part.front() == '-';
                exp_part.remove_prefix(1);
            }
            if (!all_digits(exp_part) || exp_part.size() > 4) {
                reject(text);
            }
            exponent = std::stol(std::string(exp_part));
            if (exp_negative) {
                exponent = -exponent;
            }
            s = s.substr(0, e);
        }
        std::string digits;
        long scale = 0;
        if (const auto dot = s.find('.'); dot != std::string_view::npos) {
            const auto int_part = s.substr(0, dot);
            const auto frac_part = s.substr(dot + 1);
            if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
                (!frac_part.empty() && !all_digits(frac_part))) {
                reject(text);
            }
            digits = std::string(int_part) + std::string(frac_part);
            scale = static_cast<long>(frac_part.size());
        } else {
            if (!all_digits(s)) {
                reject(text);
            }
            digits = std::string(s);
        }
        const mp::cpp_int mantissa{digits};
        const long net = exponent - scale;
        value = net >= 0 ? Rational(mantissa * pow10(net)) : Rational(mantissa, pow10(-net));
    }
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
    return r.str();
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

GameParams RationalParams::to_game_params() const {
    GameParams g;
    g.n = n;
    g.u = to_double(u);
    g.d = to_double(d);
    g.p = to_double(p);
    g.stake = 1.0;
    g.payout_variant = payout_variant;
    return g;
}

int exact_threshold(int n, const Rational& u, const Rational& d) {
    int k0 = -1;
    for (int k = 0; k <= n; ++k) {
        if (pow(u, k) * pow(d, n - k) <= 1) {
            k0 = k;
        }
    }
    return k0 < 0 ? 0 : k0;
}

ExactMoments exact_rational_oracle(const RationalParams& params) {
    const int n = params.n;
    if (n < 1 || n > kOracleMaxRounds) {
        throw DomainError("exact oracle supports 1 <= n <= 40");
    }
    if (!(params.d > 0 && params.d <= 1 && params.u >= 1 && params.u != params.d)) {
        throw DomainError("exact oracle requires 0 < d <= 1 <= u and u != d");
    }
    if (!(params.p >= 0 && params.p <= 1)) {
        throw DomainError("exact oracle requires 0 <= p <= 1");
    }
    const Rational q = 1 - params.p;
    const int k0 = exact_threshold(n, params.u, params.d);

    Rational mean = 0;
    Rational second = 0;
    mp::cpp_int binom = 1;  // C(n, k), updated incrementally
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            binom = binom * (n - k + 1) / k;
        }
        const Rational mass = Rational(binom) * pow(params.p, k) * pow(q, n - k);
        Rational profit;
        if (k > k0) {
            profit = 1;
        } else if (params.payout_variant == PayoutVariant::TotalLoss) {
            profit = -1;
        } else {
            profit = pow(params.u, k) * pow(params.d, n - k) - 1;
        }
        mean += mass * profit;
        second += mass * profit * profit;
    }
    return {mean, second - mean * mean, k0};
}

}  // namespace gamblekit
