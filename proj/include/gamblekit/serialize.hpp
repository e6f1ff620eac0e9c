#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gamblekit/analysis.hpp"
#include "gamblekit/asymptotics.hpp"
#include "gamblekit/collision.hpp"
#include "gamblekit/fairness.hpp"
#include "gamblekit/game.hpp"
#include "gamblekit/simulate.hpp"

namespace gamblekit {

using Json = nlohmann::json;

// Enums travel as their to_string names. Non-finite doubles are written as
// null and read back as NaN.

void to_json(Json& j, PayoutVariant v);
void from_json(const Json& j, PayoutVariant& v);
void to_json(Json& j, Regime v);
void from_json(const Json& j, Regime& v);
void to_json(Json& j, LimitDistribution v);
void from_json(const Json& j, LimitDistribution& v);
void to_json(Json& j, ConvergenceRate v);
void from_json(const Json& j, ConvergenceRate& v);
void to_json(Json& j, FairStatus v);
void from_json(const Json& j, FairStatus& v);
void to_json(Json& j, SymmetricMethod v);
void from_json(const Json& j, SymmetricMethod& v);

void to_json(Json& j, const GameParams& v);
void from_json(const Json& j, GameParams& v);
void to_json(Json& j, const ThresholdIndex& v);
void from_json(const Json& j, ThresholdIndex& v);
void to_json(Json& j, const ProfitAnalysis& v);
void from_json(const Json& j, ProfitAnalysis& v);
void to_json(Json& j, const VarianceReport& v);
void from_json(const Json& j, VarianceReport& v);
void to_json(Json& j, const AsymptoticClass& v);
void from_json(const Json& j, AsymptoticClass& v);
void to_json(Json& j, const ProfileRow& v);
void from_json(const Json& j, ProfileRow& v);
void to_json(Json& j, const FairSolution& v);
void from_json(const Json& j, FairSolution& v);
void to_json(Json& j, const FairCurvePoint& v);
void from_json(const Json& j, FairCurvePoint& v);
void to_json(Json& j, const Trajectory& v);
void from_json(const Json& j, Trajectory& v);
void to_json(Json& j, const BatchStats& v);
void from_json(const Json& j, BatchStats& v);
void to_json(Json& j, const DistinctProbability& v);
void from_json(const Json& j, DistinctProbability& v);

/// %.17g: enough significant digits to round-trip every double.
std::string format_double(double x);

/// Comma-separated, LF-terminated table. Doubles go through format_double.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    /// Pre-formatted cells, written verbatim.
    void text_row(const std::vector<std::string>& cells);

private:
    std::ostream& out_;
};

}  // namespace gamblekit
