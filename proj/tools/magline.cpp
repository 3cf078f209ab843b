// magline: compute, classify and cross-check magnetic trajectories of
// Killing vector fields in euclidean 3-space.
//
// Exit status: 0 success (compare: within tolerance), 1 usage or i/o error,
// 2 mathematically impossible request, 3 numerical failure (or compare over
// tolerance). MAGLINE_LOG={1|info, 2|debug} turns on progress output on
// stderr.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "magline/classify.hpp"
#include "magline/closedform.hpp"
#include "magline/errors.hpp"
#include "magline/fields.hpp"
#include "magline/integrate.hpp"
#include "magline/io.hpp"

namespace {

using namespace magline;

int g_log_level = 0;

void init_log_level() {
    const char* v = std::getenv("MAGLINE_LOG");
    if (v == nullptr || *v == '\0') return;
    std::string s(v);
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "0" || s == "off" || s == "quiet" || s == "none")
        g_log_level = 0;
    else if (s == "2" || s == "debug" || s == "trace")
        g_log_level = 2;
    else
        g_log_level = 1;
}

void log_info(const std::string& m) {
    if (g_log_level >= 1) std::cerr << "magline: " << m << '\n';
}

void log_debug(const std::string& m) {
    if (g_log_level >= 2) std::cerr << "magline[debug]: " << m << '\n';
}

struct Options {
    std::string field = "rot-z";
    double strength = 1.0;
    bool has_strength = false;
    std::string ic;
    std::string invariants;
    double t_end = 10.0;
    double dt = 0.01;
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double compare_tol = 1e-5;
    std::string format = "csv";
    std::string out;
    std::string in;
};

int usage_error(const std::string& msg) {
    std::cerr << "magline: " << msg << '\n';
    return 1;
}

std::optional<std::vector<double>> parse_numbers(const std::string& s, size_t n) {
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            size_t used = 0;
            vals.push_back(std::stod(cell, &used));
            while (used < cell.size() &&
                   std::isspace(static_cast<unsigned char>(cell[used])))
                ++used;
            if (used != cell.size()) return std::nullopt;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    if (vals.size() != n) return std::nullopt;
    return vals;
}

std::optional<KillingField> parse_field(const Options& o, std::string& err) {
    static const std::map<std::string, std::pair<KillingField::Kind, Axis>> names = {
        {"rot-x", {KillingField::Kind::Rotation, Axis::X}},
        {"rot-y", {KillingField::Kind::Rotation, Axis::Y}},
        {"rot-z", {KillingField::Kind::Rotation, Axis::Z}},
        {"trans-x", {KillingField::Kind::Translation, Axis::X}},
        {"trans-y", {KillingField::Kind::Translation, Axis::Y}},
        {"trans-z", {KillingField::Kind::Translation, Axis::Z}},
    };
    const auto it = names.find(o.field);
    if (it == names.end()) {
        err = "unknown field " + o.field;
        return std::nullopt;
    }
    if (it->second.first == KillingField::Kind::Rotation) {
        if (o.has_strength) {
            err = "--strength applies to translation fields only";
            return std::nullopt;
        }
        return KillingField::rotation(it->second.second);
    }
    return KillingField::translation(it->second.second, o.strength);
}

std::optional<State6> load_ic(const std::string& s, std::string& err) {
    if (s.empty()) {
        err = "--ic x0,y0,z0,u0,v0,w0 is required";
        return std::nullopt;
    }
    const auto v = parse_numbers(s, 6);
    if (!v) {
        err = "--ic wants six comma separated numbers x0,y0,z0,u0,v0,w0";
        return std::nullopt;
    }
    State6 ic{{(*v)[0], (*v)[1], (*v)[2]}, {(*v)[3], (*v)[4], (*v)[5]}};
    const double n = norm(ic.vel);
    if (std::fabs(n - 1.0) > 1e-6) {
        err = "initial velocity must be unit speed, got |v| = " + format_double(n);
        return std::nullopt;
    }
    ic.vel *= 1.0 / n;
    return ic;
}

int with_output(const std::string& path, const std::function<int(std::ostream&)>& fn) {
    if (path.empty()) return fn(std::cout);
    std::ofstream f(path);
    if (!f) return usage_error("cannot open output file " + path);
    const int rc = fn(f);
    f.flush();
    if (!f.good()) return usage_error("write failed on " + path);
    if (rc == 0) log_info("wrote " + path);
    return rc;
}

RunConfig make_run_config(const std::string& cmd, const Options& o, const KillingField& f,
                          const State6& ic, const std::string& method) {
    RunConfig rc;
    rc.command = cmd;
    rc.field = o.field;
    rc.strength = f.strength;
    rc.ic = ic;
    rc.t_end = o.t_end;
    rc.sample_dt = o.dt;
    rc.rel_tol = o.rel_tol;
    rc.abs_tol = o.abs_tol;
    rc.method = method;
    return rc;
}

/// Resolves --ic/--invariants into a classified tag plus a concrete state.
/// Returns an exit code > 0 on usage errors, 0 on success.
int resolve_state(const Options& o, const KillingField& f, bool allow_invariants,
                  State6* ic, CaseTag* tag) {
    std::string err;
    if (!o.invariants.empty()) {
        if (!allow_invariants)
            return usage_error("--invariants is not accepted by this command");
        if (!o.ic.empty()) return usage_error("give either --ic or --invariants, not both");
        if (f.kind == KillingField::Kind::Translation)
            return usage_error("--invariants applies to rotational fields");
        const auto pq = parse_numbers(o.invariants, 2);
        if (!pq) return usage_error("--invariants wants two numbers p0,q0");
        *tag = classify_invariants((*pq)[0], (*pq)[1]);
        if (ic != nullptr) {
            // representative_ic throws ContractViolation for non-solvable
            // tags; callers check the tag first to exit 2 with a message
            *ic = from_canonical_frame(f.axis, representative_ic(*tag));
            log_debug("representative state rho0 = " + format_double(tag->inv.rho0));
        }
        return 0;
    }
    const auto st = load_ic(o.ic, err);
    if (!st) return usage_error(err);
    if (ic != nullptr) *ic = *st;
    *tag = classify(*st, f);
    return 0;
}

bool solvable(const CaseTag& tag) {
    return tag.kind != CaseKind::NonExistent && tag.kind != CaseKind::AxisDegenerate;
}

int impossible(const CaseTag& tag) {
    std::cerr << "magline: no closed-form trajectory for case " << to_string(tag.kind);
    if (!tag.reason.empty()) std::cerr << " (" << tag.reason << ")";
    std::cerr << '\n';
    return 2;
}

int run_classify(const Options& o) {
    std::string err;
    const auto fld = parse_field(o, err);
    if (!fld) return usage_error(err);
    CaseTag tag;
    const int rc = resolve_state(o, *fld, true, nullptr, &tag);
    if (rc != 0) return rc;
    log_info("case " + to_string(tag.kind));
    return with_output(o.out, [&](std::ostream& os) {
        if (o.format == "json")
            write_case_json(os, tag);
        else
            write_case_text(os, tag);
        return 0;
    });
}

int run_trace(const Options& o) {
    std::string err;
    const auto fld = parse_field(o, err);
    if (!fld) return usage_error(err);
    State6 ic;
    CaseTag tag;
    const int rc = resolve_state(o, *fld, false, &ic, &tag);
    if (rc != 0) return rc;

    IntegratorConfig cfg;
    cfg.rel_tol = o.rel_tol;
    cfg.abs_tol = o.abs_tol;
    cfg.t_end = o.t_end;
    cfg.sample_dt = o.dt;
    const Trajectory tr = integrate_trajectory(*fld, ic, cfg);
    const DriftReport dr = drift_report(tr);
    log_info("case " + to_string(tag.kind) + ", " + std::to_string(tr.size()) +
             " samples, max drifts " + format_double(dr.max_speed_drift) + " / " +
             format_double(dr.max_p0_drift) + " / " + format_double(dr.max_q0_drift));

    const RunConfig run = make_run_config("trace", o, *fld, ic, "rk45");
    return with_output(o.out, [&](std::ostream& os) {
        if (o.format == "json")
            write_trajectory_json(os, run, tag, tr);
        else
            write_trajectory_csv(os, tr);
        return 0;
    });
}

int run_closed_form(const Options& o) {
    std::string err;
    const auto fld = parse_field(o, err);
    if (!fld) return usage_error(err);
    State6 ic;
    CaseTag tag;
    if (!o.invariants.empty()) {
        // classify first so impossible pairs exit 2 before state synthesis
        const int rc = resolve_state(o, *fld, true, nullptr, &tag);
        if (rc != 0) return rc;
        if (!solvable(tag)) return impossible(tag);
        ic = from_canonical_frame(fld->axis, representative_ic(tag));
    } else {
        const int rc = resolve_state(o, *fld, true, &ic, &tag);
        if (rc != 0) return rc;
        if (!solvable(tag)) return impossible(tag);
    }

    const ClosedFormTrajectory cft(*fld, ic, o.t_end);
    const Trajectory tr = cft.sample(o.t_end, o.dt);
    if (cft.precision_flag())
        log_info("phi quadrature clamped rho^2 near an axis approach; "
                 "phi may lose accuracy there");
    log_info("case " + to_string(cft.tag().kind) + ", " + std::to_string(tr.size()) +
             " samples");

    const RunConfig run = make_run_config("closed-form", o, *fld, ic, "closed-form");
    return with_output(o.out, [&](std::ostream& os) {
        if (o.format == "json")
            write_trajectory_json(os, run, cft.tag(), tr, cft.precision_flag());
        else
            write_trajectory_csv(os, tr);
        return 0;
    });
}

int run_compare(const Options& o) {
    std::string err;
    const auto fld = parse_field(o, err);
    if (!fld) return usage_error(err);
    State6 ic;
    CaseTag tag;
    const int rc = resolve_state(o, *fld, false, &ic, &tag);
    if (rc != 0) return rc;
    if (!solvable(tag)) return impossible(tag);

    IntegratorConfig cfg;
    cfg.rel_tol = o.rel_tol;
    cfg.abs_tol = o.abs_tol;
    cfg.t_end = o.t_end;
    cfg.sample_dt = o.dt;
    const Trajectory num = integrate_trajectory(*fld, ic, cfg);
    const ClosedFormTrajectory cft(*fld, ic, o.t_end);
    const Trajectory cf = cft.sample(o.t_end, o.dt);
    const CompareSummary s = compare_summary(num, cf, o.compare_tol);

    const RunConfig run = make_run_config("compare", o, *fld, ic, "rk45+closed-form");
    const int wrc = with_output(o.out, [&](std::ostream& os) {
        if (o.format == "json")
            write_compare_json(os, run, tag, num, cf, s);
        else
            write_compare_csv(os, num, cf, s);
        return 0;
    });
    if (wrc != 0) return wrc;

    const bool ok = s.max_deviation <= s.tolerance;
    std::cerr << "compare: case " << to_string(tag.kind) << " max_deviation "
              << format_double(s.max_deviation) << " tolerance "
              << format_double(s.tolerance) << " rk45_drift "
              << format_double(s.num_drift.max_speed_drift) << "/"
              << format_double(s.num_drift.max_p0_drift) << "/"
              << format_double(s.num_drift.max_q0_drift) << " -> "
              << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? 0 : 3;
}

int run_frenet(const Options& o) {
    std::string err;
    const auto fld = parse_field(o, err);
    if (!fld) return usage_error(err);
    if (fld->kind != KillingField::Kind::Translation)
        return usage_error("frenet applies to translation fields; rotational "
                           "trajectories have varying curvature");
    const auto ic = load_ic(o.ic, err);
    if (!ic) return usage_error(err);
    const double w0 = to_canonical_frame(fld->axis, *ic).vel.z;
    const CurvatureTorsion ct = classical_curvature_torsion(fld->strength, w0);
    return with_output(o.out, [&](std::ostream& os) {
        if (o.format == "json") {
            os << "{\n  \"strength\": " << format_double(fld->strength)
               << ",\n  \"w0\": " << format_double(w0)
               << ",\n  \"kappa\": " << format_double(ct.kappa)
               << ",\n  \"tau\": " << format_double(ct.tau) << "\n}\n";
        } else {
            os << "kappa: " << format_double(ct.kappa) << '\n'
               << "tau: " << format_double(ct.tau) << '\n';
        }
        return 0;
    });
}

void write_gnuplot(std::ostream& os, const TrajectoryFile& tf) {
    // radius profile about the field axis when the file names one,
    // otherwise about the z axis
    const char* rho_expr = "sqrt($2**2 + $3**2)";
    if (tf.field == "rot-x" || tf.field == "trans-x")
        rho_expr = "sqrt($3**2 + $4**2)";
    else if (tf.field == "rot-y" || tf.field == "trans-y")
        rho_expr = "sqrt($4**2 + $2**2)";

    os << "# magnetic trajectory plot (generated by magline export-plot)\n";
    if (!tf.case_name.empty()) os << "# case: " << tf.case_name << '\n';
    if (!tf.field.empty()) os << "# field: " << tf.field << '\n';
    os << "$DATA << EOD\n";
    for (const TrajectorySample& s : tf.samples)
        os << format_double(s.t) << ' ' << format_double(s.pos.x) << ' '
           << format_double(s.pos.y) << ' ' << format_double(s.pos.z) << '\n';
    os << "EOD\n\n";
    os << "set multiplot layout 1,2 title \"magnetic trajectory\"\n";
    os << "set xlabel \"x\"\nset ylabel \"y\"\nset zlabel \"z\"\n";
    os << "set view 60, 30\nset ticslevel 0\n";
    os << "splot $DATA using 2:3:4 with lines lw 2 title \"curve\"\n";
    os << "set xlabel \"t\"\nset ylabel \"rho\"\n";
    os << "plot $DATA using 1:(" << rho_expr << ") with lines lw 2 title \"rho(t)\"\n";
    os << "unset multiplot\n";
    os << "pause -1 \"press enter to close\"\n";
}

int run_export_plot(const Options& o) {
    if (o.in.empty()) return usage_error("--in trajectory file is required");
    std::ifstream f(o.in);
    if (!f) {
        std::cerr << "magline: cannot open input file " << o.in << '\n';
        return 1;
    }
    TrajectoryFile tf;
    try {
        tf = read_trajectory_file(f);
    } catch (const DomainError& e) {
        return usage_error(e.what());
    }
    if (tf.samples.empty()) return usage_error("trajectory file has no samples");
    log_info("read " + std::to_string(tf.samples.size()) + " samples from " + o.in);
    return with_output(o.out, [&](std::ostream& os) {
        write_gnuplot(os, tf);
        return 0;
    });
}

} // namespace

int main(int argc, char** argv) {
    init_log_level();

    CLI::App app{"compute, classify and cross-check magnetic trajectories of "
                 "Killing vector fields in euclidean 3-space"};
    app.require_subcommand(1);

    Options copt, topt, fopt, mopt, nopt, eopt;
    const std::vector<std::string> field_names = {"rot-x",   "rot-y",   "rot-z",
                                                  "trans-x", "trans-y", "trans-z"};

    auto add_field = [&](CLI::App* sub, Options& o) {
        sub->add_option("--field", o.field,
                        "Killing field generator: rot-{x,y,z} unit rotation, "
                        "trans-{x,y,z} translation")
            ->check(CLI::IsMember(field_names))
            ->capture_default_str();
        sub->add_option("--strength", o.strength, "translation strength s (trans-* only)")
            ->capture_default_str()
            ->each([&o](const std::string&) { o.has_strength = true; });
    };
    auto add_ic = [&](CLI::App* sub, Options& o, bool with_invariants) {
        sub->add_option("--ic", o.ic,
                        "initial state x0,y0,z0,u0,v0,w0 (unit-speed velocity; "
                        "normalized when within 1e-6)");
        if (with_invariants)
            sub->add_option("--invariants", o.invariants,
                            "abstract invariant pair p0,q0 instead of --ic");
    };
    auto add_grid = [&](CLI::App* sub, Options& o) {
        sub->add_option("--t-end", o.t_end, "trajectory duration")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--dt", o.dt, "sample spacing")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };
    auto add_tols = [&](CLI::App* sub, Options& o) {
        sub->add_option("--rel-tol", o.rel_tol, "integrator relative tolerance")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--abs-tol", o.abs_tol, "integrator absolute tolerance")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };
    auto add_io = [&](CLI::App* sub, Options& o) {
        sub->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--out", o.out, "output path (default stdout)");
    };

    CLI::App* c_classify =
        app.add_subcommand("classify", "classify the motion type of an initial state");
    add_field(c_classify, copt);
    add_ic(c_classify, copt, true);
    add_io(c_classify, copt);

    CLI::App* c_trace = app.add_subcommand(
        "trace", "integrate the trajectory numerically (adaptive rk45, dense sampling)");
    add_field(c_trace, topt);
    add_ic(c_trace, topt, false);
    add_grid(c_trace, topt);
    add_tols(c_trace, topt);
    add_io(c_trace, topt);

    CLI::App* c_closed = app.add_subcommand(
        "closed-form", "evaluate the closed-form trajectory of the classified case");
    add_field(c_closed, fopt);
    add_ic(c_closed, fopt, true);
    add_grid(c_closed, fopt);
    add_io(c_closed, fopt);

    CLI::App* c_compare = app.add_subcommand(
        "compare", "cross-check the rk45 trajectory against the closed form");
    add_field(c_compare, mopt);
    add_ic(c_compare, mopt, false);
    add_grid(c_compare, mopt);
    add_tols(c_compare, mopt);
    add_io(c_compare, mopt);
    c_compare->add_option("--compare-tol", mopt.compare_tol,
                          "max allowed position deviation")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    CLI::App* c_frenet = app.add_subcommand(
        "frenet", "curvature and torsion of a translation-field helix");
    add_field(c_frenet, nopt);
    add_ic(c_frenet, nopt, false);
    add_io(c_frenet, nopt);

    CLI::App* c_export = app.add_subcommand(
        "export-plot",
        "emit a gnuplot script (3-d curve and radius profile) from a trajectory file");
    c_export->add_option("--in", eopt.in,
                         "trajectory file written by trace or closed-form (csv or json)");
    c_export->add_option("--out", eopt.out, "output script path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*c_classify) return run_classify(copt);
        if (*c_trace) return run_trace(topt);
        if (*c_closed) return run_closed_form(fopt);
        if (*c_compare) return run_compare(mopt);
        if (*c_frenet) return run_frenet(nopt);
        if (*c_export) return run_export_plot(eopt);
    } catch (const IntegrationFailure& e) {
        std::cerr << "magline: integration failed at t = " << e.last_good_t << ": "
                  << e.what() << '\n';
        return 3;
    } catch (const AccuracyError& e) {
        std::cerr << "magline: " << e.what() << '\n';
        return 3;
    } catch (const DivergenceError& e) {
        std::cerr << "magline: " << e.what() << '\n';
        return 3;
    } catch (const InconsistentIcError& e) {
        std::cerr << "magline: " << e.what() << '\n';
        return 2;
    } catch (const ContractViolation& e) {
        std::cerr << "magline: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "magline: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "magline: internal error: " << e.what() << '\n';
        return 3;
    }
    return 1;
}
