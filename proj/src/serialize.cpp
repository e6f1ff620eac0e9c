#include "gamblekit/serialize.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <utility>

namespace gamblekit {

namespace {

Json number(double x) {
    return std::isfinite(x) ? Json(x) : Json(nullptr);
}

double read_number(const Json& j, const char* key) {
    const Json& v = j.at(key);
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

template <typename Enum, std::size_t N>
Enum enum_from_name(const Json& j, const std::array<Enum, N>& values, const char* what) {
    const std::string name = j.get<std::string>();
    for (Enum e : values) {
        if (to_string(e) == name) {
            return e;
        }
    }
    throw DomainError(std::string("unknown ") + what + " '" + name + "'");
}

}  // namespace

void to_json(Json& j, PayoutVariant v) { j = std::string(to_string(v)); }
void from_json(const Json& j, PayoutVariant& v) { v = parse_payout_variant(j.get<std::string>()); }

void to_json(Json& j, Regime v) { j = std::string(to_string(v)); }
void from_json(const Json& j, Regime& v) {
    v = enum_from_name(j, std::array{Regime::Loss, Regime::Fair, Regime::Profit}, "regime");
}

void to_json(Json& j, LimitDistribution v) { j = std::string(to_string(v)); }
void from_json(const Json& j, LimitDistribution& v) {
    v = enum_from_name(j,
                       std::array{LimitDistribution::PointMassMinusOne, LimitDistribution::PointMassPlusOne,
                                  LimitDistribution::TwoPoint},
                       "limit distribution");
}

void to_json(Json& j, ConvergenceRate v) { j = std::string(to_string(v)); }
void from_json(const Json& j, ConvergenceRate& v) {
    v = enum_from_name(j, std::array{ConvergenceRate::Exponential, ConvergenceRate::InverseSqrt}, "rate");
}

void to_json(Json& j, FairStatus v) { j = std::string(to_string(v)); }
void from_json(const Json& j, FairStatus& v) {
    v = enum_from_name(j, std::array{FairStatus::Crossing, FairStatus::JumpAcrossZero, FairStatus::NoSignChange},
                       "fair status");
}

void to_json(Json& j, SymmetricMethod v) { j = std::string(to_string(v)); }
void from_json(const Json& j, SymmetricMethod& v) {
    v = enum_from_name(j, std::array{SymmetricMethod::NewtonIdentities, SymmetricMethod::ProductExpansion},
                       "method");
}

void to_json(Json& j, const GameParams& v) {
    j = Json{{"n", v.n},
             {"u", v.u},
             {"d", v.d},
             {"p", v.p},
             {"stake", v.stake},
             {"initial_score", v.initial_score},
             {"payout_variant", v.payout_variant}};
}
void from_json(const Json& j, GameParams& v) {
    j.at("n").get_to(v.n);
    j.at("u").get_to(v.u);
    j.at("d").get_to(v.d);
    j.at("p").get_to(v.p);
    j.at("stake").get_to(v.stake);
    j.at("initial_score").get_to(v.initial_score);
    j.at("payout_variant").get_to(v.payout_variant);
}

void to_json(Json& j, const ThresholdIndex& v) {
    j = Json{{"k0", v.k0}, {"exact_boundary", v.exact_boundary}, {"ratio", number(v.ratio)}};
}
void from_json(const Json& j, ThresholdIndex& v) {
    j.at("k0").get_to(v.k0);
    j.at("exact_boundary").get_to(v.exact_boundary);
    v.ratio = read_number(j, "ratio");
}

void to_json(Json& j, const ProfitAnalysis& v) {
    j = Json{{"g", v.g},
             {"term_a", v.term_a},
             {"term_b", v.term_b},
             {"win_prob", v.win_prob},
             {"loss_prob", v.loss_prob},
             {"threshold", v.threshold}};
}
void from_json(const Json& j, ProfitAnalysis& v) {
    j.at("g").get_to(v.g);
    j.at("term_a").get_to(v.term_a);
    j.at("term_b").get_to(v.term_b);
    j.at("win_prob").get_to(v.win_prob);
    j.at("loss_prob").get_to(v.loss_prob);
    j.at("threshold").get_to(v.threshold);
}

void to_json(Json& j, const VarianceReport& v) {
    j = Json{{"variance", v.variance},
             {"summands", v.summands},
             {"var_c", v.var_c},
             {"var_d", v.var_d},
             {"cov_cd", v.cov_cd}};
}
void from_json(const Json& j, VarianceReport& v) {
    j.at("variance").get_to(v.variance);
    j.at("summands").get_to(v.summands);
    j.at("var_c").get_to(v.var_c);
    j.at("var_d").get_to(v.var_d);
    j.at("cov_cd").get_to(v.cov_cd);
}

void to_json(Json& j, const AsymptoticClass& v) {
    j = Json{{"regime", v.regime},
             {"criterion", number(v.criterion)},
             {"log_criterion", number(v.log_criterion)},
             {"g_limit", v.g_limit},
             {"var_limit", v.var_limit},
             {"a_limit", v.a_limit},
             {"b_limit", v.b_limit},
             {"limit_distribution", v.limit_distribution}};
}
void from_json(const Json& j, AsymptoticClass& v) {
    j.at("regime").get_to(v.regime);
    v.criterion = read_number(j, "criterion");
    v.log_criterion = read_number(j, "log_criterion");
    j.at("g_limit").get_to(v.g_limit);
    j.at("var_limit").get_to(v.var_limit);
    j.at("a_limit").get_to(v.a_limit);
    j.at("b_limit").get_to(v.b_limit);
    j.at("limit_distribution").get_to(v.limit_distribution);
}

void to_json(Json& j, const ProfileRow& v) {
    j = Json{{"n", v.n},
             {"a", v.a},
             {"b", v.b},
             {"g", v.g},
             {"variance", v.variance},
             {"a_bound", number(v.a_bound)},
             {"b_gap_bound", number(v.b_gap_bound)},
             {"rate", v.rate}};
}
void from_json(const Json& j, ProfileRow& v) {
    j.at("n").get_to(v.n);
    j.at("a").get_to(v.a);
    j.at("b").get_to(v.b);
    j.at("g").get_to(v.g);
    j.at("variance").get_to(v.variance);
    v.a_bound = read_number(j, "a_bound");
    v.b_gap_bound = read_number(j, "b_gap_bound");
    j.at("rate").get_to(v.rate);
}

void to_json(Json& j, const FairSolution& v) {
    j = Json{{"bracket_lo", v.bracket_lo},
             {"bracket_hi", v.bracket_hi},
             {"g_lo", v.g_lo},
             {"g_hi", v.g_hi},
             {"status", v.status}};
}
void from_json(const Json& j, FairSolution& v) {
    j.at("bracket_lo").get_to(v.bracket_lo);
    j.at("bracket_hi").get_to(v.bracket_hi);
    j.at("g_lo").get_to(v.g_lo);
    j.at("g_hi").get_to(v.g_hi);
    j.at("status").get_to(v.status);
}

void to_json(Json& j, const FairCurvePoint& v) {
    j = Json{{"d", v.d}, {"solution", v.solution}};
}
void from_json(const Json& j, FairCurvePoint& v) {
    j.at("d").get_to(v.d);
    j.at("solution").get_to(v.solution);
}

void to_json(Json& j, const Trajectory& v) {
    Json scores = Json::array();
    for (double s : v.scores) {
        scores.push_back(number(s));
    }
    j = Json{{"seed", v.seed},
             {"scores", std::move(scores)},
             {"tosses", v.tosses},
             {"heads_count", v.heads_count},
             {"net_profit", v.net_profit}};
}
void from_json(const Json& j, Trajectory& v) {
    j.at("seed").get_to(v.seed);
    v.scores.clear();
    for (const Json& s : j.at("scores")) {
        v.scores.push_back(s.is_null() ? std::numeric_limits<double>::quiet_NaN() : s.get<double>());
    }
    j.at("tosses").get_to(v.tosses);
    j.at("heads_count").get_to(v.heads_count);
    j.at("net_profit").get_to(v.net_profit);
}

void to_json(Json& j, const BatchStats& v) {
    j = Json{{"num_runs", v.num_runs},
             {"mean_profit", v.mean_profit},
             {"sample_variance", v.sample_variance},
             {"win_count", v.win_count},
             {"profit_samples", v.profit_samples}};
}
void from_json(const Json& j, BatchStats& v) {
    j.at("num_runs").get_to(v.num_runs);
    j.at("mean_profit").get_to(v.mean_profit);
    j.at("sample_variance").get_to(v.sample_variance);
    j.at("win_count").get_to(v.win_count);
    j.at("profit_samples").get_to(v.profit_samples);
}

void to_json(Json& j, const DistinctProbability& v) {
    j = Json{{"value", v.value}, {"method", v.method}};
}
void from_json(const Json& j, DistinctProbability& v) {
    j.at("value").get_to(v.value);
    j.at("method").get_to(v.method);
}

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void CsvWriter::header(const std::vector<std::string>& names) {
    text_row(names);
}

void CsvWriter::text_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            out_ << ',';
        }
        out_ << cells[i];
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out_ << ',';
        }
        out_ << format_double(values[i]);
    }
    out_ << '\n';
}

}  // namespace gamblekit
