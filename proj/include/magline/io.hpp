#pragma once

#include <iosfwd>
#include <string>

#include "magline/classify.hpp"
#include "magline/integrate.hpp"

namespace magline {

/// Echo of the run parameters carried into the structured output.
struct RunConfig {
    std::string command;
    std::string field;
    double strength = 1.0;
    State6 ic{};
    double t_end = 10.0;
    double sample_dt = 0.01;
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    std::string method; // "rk45" or "closed-form"
};

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

inline constexpr char kTrajectoryCsvHeader[] =
    "t,x,y,z,vx,vy,vz,speed_drift,p0_drift,q0_drift";

void write_trajectory_csv(std::ostream& os, const Trajectory& tr);
void write_trajectory_json(std::ostream& os, const RunConfig& cfg, const CaseTag& tag,
                           const Trajectory& tr, bool precision_flag = false);

/// Key/value report of a classification: tag, invariants, radial cubic and
/// the admissible radius band. The text form is line oriented ("key: value")
/// so it can be parsed back; the json form nests {case, invariants, cubic,
/// admissible_rho}.
void write_case_text(std::ostream& os, const CaseTag& tag);
void write_case_json(std::ostream& os, const CaseTag& tag);

struct CompareSummary {
    double max_deviation = 0.0;
    double tolerance = 0.0;
    DriftReport num_drift;
    DriftReport cf_drift;
};

/// Position deviation per shared sample; max over the overlap.
CompareSummary compare_summary(const Trajectory& num, const Trajectory& cf, double tol);

void write_compare_csv(std::ostream& os, const Trajectory& num, const Trajectory& cf,
                       const CompareSummary& s);
void write_compare_json(std::ostream& os, const RunConfig& cfg, const CaseTag& tag,
                        const Trajectory& num, const Trajectory& cf,
                        const CompareSummary& s);

/// A trajectory file read back, with whatever metadata the format carried.
struct TrajectoryFile {
    Trajectory samples;
    std::string field;     // empty for plain csv input
    std::string case_name; // idem
};

/// Reads a trajectory table in either output format; the format is sniffed
/// from the first non-space byte ('{' means json). Csv input must start
/// with the pinned header line; '#' lines are skipped. Throws DomainError
/// on malformed content.
TrajectoryFile read_trajectory_file(std::istream& is);

} // namespace magline
