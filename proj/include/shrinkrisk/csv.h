#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "shrinkrisk/risk_asymptotic.h"
#include "shrinkrisk/risk_point.h"

namespace shrinkrisk {

/// 17 significant digits; infinities as "inf" / "-inf", NaN as "nan".
std::string format_double(double v);

/// Joins already formatted fields with commas, quoting fields that need it.
std::string csv_line(const std::vector<std::string>& fields);

inline constexpr const char* kRiskPointHeader =
    "estimator,n,d,eta2,lambda,risk,provenance,mc_stderr,note";
inline constexpr const char* kFigureHeader = "figure_id,estimator,rho,eta2,risk";

void write_risk_points(std::ostream& os, const std::vector<RiskPoint>& points);
void write_figure_rows(std::ostream& os, const std::vector<FigureRow>& rows);

}  // namespace shrinkrisk
