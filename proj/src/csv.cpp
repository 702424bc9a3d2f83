#include "shrinkrisk/csv.h"

#include <cmath>
#include <cstdio>

namespace shrinkrisk {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n") == std::string::npos) {
            line += f;
            continue;
        }
        line += '"';
        for (char ch : f) {
            if (ch == '"') line += '"';
            line += ch;
        }
        line += '"';
    }
    return line;
}

void write_risk_points(std::ostream& os, const std::vector<RiskPoint>& points) {
    os << kRiskPointHeader << '\n';
    for (const auto& p : points) {
        os << csv_line({std::string(to_token(p.estimator)), std::to_string(p.n), std::to_string(p.d),
                        format_double(p.eta2), p.lambda ? format_double(*p.lambda) : "",
                        format_double(p.risk), std::string(to_token(p.provenance)),
                        p.mc_stderr ? format_double(*p.mc_stderr) : "", p.note})
           << '\n';
    }
}

void write_figure_rows(std::ostream& os, const std::vector<FigureRow>& rows) {
    os << kFigureHeader << '\n';
    for (const auto& r : rows) {
        os << csv_line({r.figure_id, std::string(to_token(r.point.estimator)),
                        format_double(r.point.rho), format_double(r.point.eta2),
                        format_double(r.point.risk)})
           << '\n';
    }
}

}  // namespace shrinkrisk
