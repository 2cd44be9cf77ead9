#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "irgpucb/harness.hpp"

namespace irgpucb {

/// %.17g; "nan" / "inf" / "-inf" for non-finite values.
std::string format_number(double v);
/// Inverse of format_number. Throws InputError on malformed text.
double parse_number(const std::string& s);

inline constexpr const char* kTraceHeader = "trial,iter,x,y,zeta,simple_regret,cumulative_regret";
inline constexpr const char* kAggregateHeader = "iter,mean_sr,stderr_sr,mean_cr,mean_zeta";

/// One row per iteration; x is the coordinate list joined by ';', zeta is empty when absent.
void write_trace_csv(std::ostream& out, const std::vector<RegretTrace>& traces);
/// Reads trial, iter, x, y, zeta and regrets back; other trace fields are left default.
std::vector<RegretTrace> read_trace_csv(std::istream& in);

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Self-contained SVG line chart with one polyline per series. On a log
/// axis non-positive values are drawn at the axis floor.
void write_svg(std::ostream& out, const std::string& title, const std::string& y_label,
               const std::vector<Series>& series, bool log_y);

void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace irgpucb
