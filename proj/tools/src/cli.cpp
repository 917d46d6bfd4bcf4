#include "threebody_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "threebody/appendix.hpp"
#include "threebody/choreo.hpp"
#include "threebody/closed_form.hpp"
#include "threebody/format.hpp"
#include "threebody/jet.hpp"

namespace threebody::cli {

namespace {

using json = nlohmann::ordered_json;

class HelpRequested : public std::runtime_error {
public:
    explicit HelpRequested(std::string text) : std::runtime_error(std::move(text)) {}
};

struct Flags {
    double alpha = 0;
    double theta = 0;
    double t_end = 0;
    std::string out;
    std::string trajectory_out;
    std::vector<double> masses;
    int order = 0;
    int digits = 0;
    std::string config;
    double rel_tol = 0, abs_tol = 0, collision_radius = 0, output_step = 0, max_step = 0;
    double theta_lo = 0, theta_hi = 0, period = 0;
    std::size_t steps = 0, samples = 0;
    std::uint64_t seed = 0;

};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--alpha", f.alpha, "potential exponent; 0 selects log r");
    sub->add_option("--theta", f.theta, "launch angle");
    sub->add_option("--out", f.out, "output path (stdout if omitted)");
    sub->add_option("--masses", f.masses, "m1,m2,m3")->delimiter(',')->expected(3);
    sub->add_flag("--equal-masses", "m1 = m2 = m3 = 1");
    sub->add_option("--config", f.config, "JSON config file");
}

void add_integrator(CLI::App* sub, Flags& f) {
    sub->add_option("--t-end", f.t_end, "end time");
    sub->add_option("--rel-tol", f.rel_tol);
    sub->add_option("--abs-tol", f.abs_tol);
    sub->add_option("--collision-radius", f.collision_radius);
    sub->add_option("--output-step", f.output_step, "land steps on this grid");
    sub->add_option("--max-step", f.max_step);
    sub->add_flag("--extended-precision", "step in long double");
}

void apply_config(RunSpec& spec, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError("malformed config " + path + ": " + e.what());
    }
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    auto& ic = spec.integrator;
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "alpha") spec.alpha = v.get<double>();
            else if (key == "theta") spec.theta = v.get<double>();
            else if (key == "t_end") spec.t_end = v.get<double>();
            else if (key == "masses") spec.masses = v.get<std::array<double, 3>>();
            else if (key == "order") spec.order = v.get<int>();
            else if (key == "digits") spec.digits = v.get<int>();
            else if (key == "rel_tol") ic.rel_tol = v.get<double>();
            else if (key == "abs_tol") ic.abs_tol = v.get<double>();
            else if (key == "collision_radius") ic.collision_radius = v.get<double>();
            else if (key == "max_step") ic.max_step = v.get<double>();
            else if (key == "max_time") ic.max_time = v.get<double>();
            else if (key == "output_step") ic.output_step = v.get<double>();
            else if (key == "extended_precision") ic.extended_precision = v.get<bool>();
            else if (key == "theta_range") {
                const auto r = v.get<std::array<double, 2>>();
                spec.theta_lo = r[0];
                spec.theta_hi = r[1];
            } else if (key == "steps") spec.steps = v.get<std::size_t>();
            else if (key == "period") spec.period = v.get<double>();
            else if (key == "samples") spec.samples = v.get<std::size_t>();
            else if (key == "seed") spec.seed = v.get<std::uint64_t>();
            else throw UsageError("unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw UsageError("bad config value: " + std::string(e.what()));
    }
}

void validate(const RunSpec& s) {
    for (double m : s.masses) {
        if (!(m > 0)) throw InvalidArgument("masses must be strictly positive");
    }
    if (s.order < 2) throw InvalidArgument("order must be >= 2");
    if (!std::isfinite(s.alpha)) throw InvalidArgument("alpha must be finite");
    if (s.theta && !std::isfinite(*s.theta)) throw InvalidArgument("theta must be finite");
    if (s.digits < 5) throw InvalidArgument("digits must be >= 5");
    s.integrator.validate();
    switch (s.command) {
        case Command::Simulate:
            if (!std::isfinite(s.t_end)) throw InvalidArgument("t-end must be finite");
            break;
        case Command::ClosedForm:
            if (s.alpha != 2 && s.alpha != 4) throw InvalidArgument("closed-form needs alpha 2 or 4");
            if (!s.equal_masses()) throw InvalidArgument("closed-form solutions are for equal masses");
            break;
        case Command::ChoreoScan:
        case Command::ChoreoRefine:
            if (!s.equal_masses()) throw InvalidArgument("choreography search uses equal masses");
            if (s.steps < 2) throw InvalidArgument("scan needs at least two steps");
            if (s.period && !(*s.period > 0)) throw InvalidArgument("period must be positive");
            break;
        case Command::Theta:
            if (!s.equal_masses()) throw InvalidArgument("theta condition is for equal masses");
            break;
        default:
            break;
    }
}

void emit(const RunSpec& spec, const std::string& content, std::ostream& out) {
    if (spec.out) write_file_atomic(*spec.out, content);
    else out << content;
}

template <class T>
T resolve_theta(const RunSpec& spec) {
    if (spec.theta) return T(*spec.theta);
    if (!spec.equal_masses()) throw InvalidArgument("--theta is required for unequal masses");
    const auto sol = theta_equal_mass<T>(spec.alpha);
    if (const auto* c = std::get_if<theta_solution::Cos2Theta<T>>(&sol)) return theta_from_cos2(c->value);
    if (std::holds_alternative<theta_solution::All>(sol)) {
        throw InvalidArgument("every theta qualifies at this alpha; pass --theta");
    }
    throw InvalidArgument("no theta satisfies the second-derivative condition; pass --theta");
}

int cmd_simulate(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    const Masses<double> m(spec.masses[0], spec.masses[1], spec.masses[2]);
    const double theta = resolve_theta<double>(spec);
    const auto fam = build(m, spec.law(), theta);
    const auto traj = integrate(fam, spec.integrator, spec.t_end);
    const auto csv = to_csv(traj);
    const auto cons = conservation(traj);
    const auto iv = inertia_variation(traj);
    json j;
    j["termination"] = to_string(traj.termination);
    j["theta"] = format_real(theta);
    j["t_final"] = format_real(traj.t_final());
    j["samples"] = traj.samples.size();
    auto ev = json::array();
    for (const auto& e : traj.events) {
        ev.push_back({{"pair", {e.first + 1, e.second + 1}},
                      {"time", format_real(e.time)},
                      {"min_distance", format_real(e.min_distance)}});
    }
    j["events"] = ev;
    {
        const auto& last = traj.last_good();
        int bi = 0, bj = 1;
        double best = std::numeric_limits<double>::infinity();
        for (auto [i, k] : kPairs) {
            const double d = norm(last.r[i] - last.r[k]);
            if (d < best) {
                best = d;
                bi = i;
                bj = k;
            }
        }
        j["final_closest_pair"] = {{"pair", {bi + 1, bj + 1}}, {"distance", format_real(best)}};
    }
    j["energy_drift"] = format_real(cons.energy_drift);
    j["max_abs_angular_momentum"] = format_real(cons.max_angular_momentum);
    j["inertia_max_abs_dev"] = format_real(iv.max_abs_dev);
    j["inertia_relative_dev"] = format_real(iv.relative_dev);
    if (spec.out) {
        write_file_atomic(*spec.out, csv);
        out << j.dump(2) << '\n';
    } else {
        out << csv;
    }
    if (traj.termination == Termination::StepSizeUnderflow || traj.termination == Termination::MaxSteps) {
        err << "integration stopped early: " << to_string(traj.termination) << " at t="
            << format_real(traj.t_final()) << '\n';
        return exit_code::numeric;
    }
    return exit_code::ok;
}

int cmd_jets(const RunSpec& spec, std::ostream& out) {
    const Masses<HighPrec> m{HighPrec(spec.masses[0]), HighPrec(spec.masses[1]), HighPrec(spec.masses[2])};
    const HighPrec theta = resolve_theta<HighPrec>(spec);
    const auto fam = build(m, spec.law(), theta);
    const auto report = derivatives_of_V(expand_jet(fam, spec.order));
    json j = json::parse(to_json(report));
    bool ok = true;
    // The closed forms assume the angle that cancels the second derivative.
    if (spec.equal_masses() && !spec.theta && spec.alpha != 2) {
        std::map<int, HighPrec> closed{{4, f4_closed(HighPrec(spec.alpha))}};
        if (spec.order >= 6) closed[6] = f6_closed(HighPrec(spec.alpha));
        const auto v = cross_check(report, closed, 1e-9);
        auto arr = json::array();
        for (const auto& e : v.entries) {
            arr.push_back({{"order", e.order},
                           {"jet", format_real(e.jet)},
                           {"closed", format_real(e.closed)},
                           {"rel_diff", format_real(e.rel_diff, 6)}});
        }
        j["closed_form"] = arr;
        j["closed_form_status"] = v.pass ? "pass" : "fail";
        ok = v.pass;
    }
    emit(spec, j.dump(2) + "\n", out);
    return ok ? exit_code::ok : exit_code::verification_failed;
}

int cmd_theta(const RunSpec& spec, std::ostream& out) {
    const auto sol = theta_equal_mass<double>(spec.alpha);
    json j;
    j["alpha"] = format_real(spec.alpha);
    j["law"] = law_name(spec.law());
    if (std::holds_alternative<theta_solution::All>(sol)) {
        j["solution"] = "all";
    } else if (std::holds_alternative<theta_solution::None>(sol)) {
        j["solution"] = "none";
    } else if (const auto* c = std::get_if<theta_solution::Cos2Theta<double>>(&sol)) {
        const double th = theta_from_cos2(c->value);
        j["solution"] = "cos2theta";
        j["cos2theta"] = format_real(c->value);
        j["theta"] = format_real(th);
        auto arr = json::array();
        for (double t : choreo::fourfold(th)) arr.push_back(format_real(t));
        j["fourfold"] = arr;
    }
    emit(spec, j.dump(2) + "\n", out);
    return exit_code::ok;
}

PlanarState<double> exact_state(const RunSpec& spec, double theta, double t) {
    return spec.alpha == 2 ? closed_form_alpha2(theta, t) : closed_form_alpha4(t);
}

int cmd_closed_form(const RunSpec& spec, std::ostream& out) {
    const double theta = spec.alpha == 4 ? 0.0 : spec.theta.value_or(0.3);
    if (spec.alpha == 4 && spec.theta && *spec.theta != 0) {
        throw InvalidArgument("the alpha = 4 solution requires theta = 0");
    }
    if (!spec.compare) {
        // sample the exact solution
        const double dt = spec.integrator.output_step.value_or(1e-3);
        const Masses<double> m = Masses<double>::equal();
        const PotentialLaw law = spec.law();
        Trajectory tr{m, law, {}, {}, Termination::Completed, {}};
        const auto n = static_cast<std::size_t>(std::floor(spec.t_end / dt + 1e-9));
        for (std::size_t k = 0; k <= n; ++k) {
            const auto s = exact_state(spec, theta, static_cast<double>(k) * dt);
            Diagnostics<double> d;
            try {
                d = diagnostics(s, m, law);
            } catch (const CollisionSingularity&) {
                continue;
            }
            tr.samples.push_back({s, d});
        }
        emit(spec, to_csv(tr), out);
        return exit_code::ok;
    }

    const double t_end = spec.t_end;
    auto cmp = spec.alpha == 2 ? compare_alpha2(theta, spec.integrator, t_end, t_end)
                               : compare_alpha4(spec.integrator, t_end, t_end);
    // compare up to 90% of the first collision
    if (cmp.collision) {
        const double until = 0.9 * cmp.collision->time;
        cmp = spec.alpha == 2 ? compare_alpha2(theta, spec.integrator, t_end, until)
                              : compare_alpha4(spec.integrator, t_end, until);
    }
    const bool pass = cmp.max_position_error < 1e-8 && cmp.max_inertia_dev < 1e-8;
    json j;
    j["alpha"] = format_real(spec.alpha);
    j["theta"] = format_real(theta);
    j["compare_until"] = format_real(cmp.compare_until);
    j["max_position_error"] = format_real(cmp.max_position_error);
    j["max_velocity_error"] = format_real(cmp.max_velocity_error);
    j["max_inertia_dev"] = format_real(cmp.max_inertia_dev);
    if (cmp.collision) {
        j["collision"] = {{"pair", {cmp.collision->first + 1, cmp.collision->second + 1}},
                          {"time", format_real(cmp.collision->time)}};
    } else {
        j["collision"] = nullptr;
    }
    j["reference_collision_time"] =
        format_real(spec.alpha == 2 ? alpha2_collision_time() : alpha4_collision_time());
    j["status"] = pass ? "pass" : "fail";
    emit(spec, j.dump(2) + "\n", out);
    return pass ? exit_code::ok : exit_code::verification_failed;
}

int cmd_appendix(const RunSpec& spec, std::ostream& out) {
    const auto cert = appendix::certify(spec.digits);
    emit(spec, appendix::to_json(cert, spec.timing), out);
    return cert.pass ? exit_code::ok : exit_code::verification_failed;
}

choreo::Config choreo_config(const RunSpec& spec) {
    choreo::Config c;
    c.law = spec.law();
    c.integrator = spec.integrator;
    return c;
}

int cmd_choreo_scan(const RunSpec& spec, std::ostream& out) {
    const auto sc = choreo::scan(spec.theta_lo, spec.theta_hi, spec.steps, choreo_config(spec));
    emit(spec, sc.to_csv(), out);
    return exit_code::ok;
}

int cmd_choreo_refine(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    const auto cfg = choreo_config(spec);
    double th0, T0;
    if (spec.theta && spec.period) {
        th0 = *spec.theta;
        T0 = *spec.period;
    } else {
        const auto sc = choreo::scan(spec.theta_lo, spec.theta_hi, spec.steps, cfg);
        const auto mins = sc.minima();
        if (mins.empty()) {
            err << "scan found no finite residual\n";
            return exit_code::numeric;
        }
        th0 = sc.points[mins.front()].theta;
        T0 = sc.points[mins.front()].period;
    }
    try {
        const auto best = choreo::refine(th0, T0, cfg);
        std::vector<choreo::Refined> four;
        for (double th : choreo::fourfold(best.theta)) four.push_back(choreo::refine(th, best.period, cfg));
        emit(spec, choreo::to_json(best, four), out);
        if (spec.trajectory_out) {
            const auto traj = integrate(build(Masses<double>::equal(), cfg.law, best.theta),
                                        cfg.integrator, best.period);
            write_file_atomic(*spec.trajectory_out, to_csv(traj));
        }
        return best.residual < 1e-4 ? exit_code::ok : exit_code::verification_failed;
    } catch (const NoProgress& e) {
        err << e.what() << '\n';
        return exit_code::numeric;
    }
}

int cmd_repulsive(const RunSpec& spec, std::ostream& out) {
    const Masses<double> m(spec.masses[0], spec.masses[1], spec.masses[2]);
    const auto law = spec.law();
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> pos(-1, 1);
    std::normal_distribution<double> vel(0, 1);
    std::size_t tried = 0, positive = 0;
    double min_value = std::numeric_limits<double>::infinity();
    auto check = [&](const PlanarState<double>& s) {
        const auto r = repulsive_positivity(s, m, law);
        ++tried;
        if (r.positive) ++positive;
        min_value = std::min(min_value, r.value);
    };
    if (spec.theta || spec.equal_masses()) check(build(m, law, spec.theta.value_or(0.0)).state);
    while (tried < spec.samples + 1) {
        PlanarState<double> s;
        for (int i = 0; i < 3; ++i) {
            s.r[i] = {pos(rng), pos(rng)};
            s.v[i] = {vel(rng), vel(rng)};
        }
        bool separated = true;
        for (auto [i, j] : kPairs) separated = separated && norm(s.r[i] - s.r[j]) > 1e-6;
        if (separated) check(s);
    }
    json j;
    j["alpha"] = format_real(spec.alpha);
    j["law"] = law_name(law);
    j["states"] = tried;
    j["positive"] = positive;
    j["min_value"] = format_real(min_value);
    j["status"] = positive == tried ? "pass" : "fail";
    emit(spec, j.dump(2) + "\n", out);
    return positive == tried ? exit_code::ok : exit_code::verification_failed;
}

}  // namespace

std::string to_string(Command c) {
    switch (c) {
        case Command::Simulate: return "simulate";
        case Command::Jets: return "jets";
        case Command::Theta: return "theta";
        case Command::ClosedForm: return "closed-form";
        case Command::AppendixVerify: return "appendix-verify";
        case Command::ChoreoScan: return "choreo-scan";
        case Command::ChoreoRefine: return "choreo-refine";
        case Command::RepulsiveCheck: return "repulsive-check";
    }
    return "unknown";
}

RunSpec parse_args(const std::vector<std::string>& args) {
    CLI::App app{"three-body dynamics laboratory", "threebody"};
    app.require_subcommand(1, 1);
    Flags f;
    bool compare = false, timing = false;

    struct Sub {
        Command cmd;
        CLI::App* app;
    };
    std::vector<Sub> subs;
    auto make = [&](Command c, const char* help) {
        auto* s = app.add_subcommand(to_string(c), help);
        add_common(s, f);
        subs.push_back({c, s});
        return s;
    };

    auto* sim = make(Command::Simulate, "integrate the family and write the trajectory CSV");
    auto* jets = make(Command::Jets, "high-precision time derivatives of V at t = 0");
    auto* theta = make(Command::Theta, "equal-mass angle that cancels d^2V/dt^2");
    auto* cf = make(Command::ClosedForm, "exact alpha = 2 / alpha = 4 solutions");
    auto* apx = make(Command::AppendixVerify, "exact certificate that only alpha = 2, 4 survive");
    auto* scan = make(Command::ChoreoScan, "scan theta for choreographies");
    auto* refine = make(Command::ChoreoRefine, "refine a choreography and its symmetric copies");
    auto* rep = make(Command::RepulsiveCheck, "positivity of d^2I/dt^2 under -V");
    (void)theta;

    // Every subcommand binds the same Flags; which were given is read back by name.
    for (auto* s : {sim, cf, scan, refine}) add_integrator(s, f);
    jets->add_option("--order", f.order, "highest derivative");
    apx->add_option("--digits", f.digits, "decimal digits in square-root enclosures");
    apx->add_flag("--timing", timing, "include wall-clock timings");
    cf->add_flag("--compare", compare, "integrate and compare against the exact solution");
    for (auto* s : {scan, refine}) {
        s->add_option("--theta-min", f.theta_lo);
        s->add_option("--theta-max", f.theta_hi);
        s->add_option("--steps", f.steps, "scan points");
    }
    refine->add_option("--period", f.period, "seed period (requires --theta)");
    refine->add_option("--trajectory", f.trajectory_out, "write the one-period trajectory CSV");
    rep->add_option("--samples", f.samples, "random states");
    rep->add_option("--seed", f.seed);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        std::string text = app.help();
        for (const auto& s : subs) {
            if (s.app->parsed() || s.app->count("--help") > 0) text = s.app->help();
        }
        throw HelpRequested(text);
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    const Sub* chosen = nullptr;
    for (const auto& s : subs) {
        if (s.app->parsed()) chosen = &s;
    }
    if (chosen == nullptr) throw UsageError("a subcommand is required");
    CLI::App* sub = chosen->app;
    auto has = [&](const char* name) {
        try {
            return sub->get_option(name)->count() > 0;
        } catch (const CLI::OptionNotFound&) {
            return false;
        }
    };

    RunSpec spec;
    spec.command = chosen->cmd;
    if (spec.command == Command::Simulate) spec.t_end = 10;
    if (spec.command == Command::ClosedForm) spec.t_end = 2;
    // choreographies are searched at alpha = -2 unless told otherwise
    if (spec.command == Command::ChoreoScan || spec.command == Command::ChoreoRefine) spec.alpha = -2;

    if (has("--config")) apply_config(spec, f.config);

    if (has("--alpha")) spec.alpha = f.alpha;
    if (has("--theta")) spec.theta = f.theta;
    if (has("--out")) spec.out = f.out;
    if (has("--equal-masses") && has("--masses")) {
        throw UsageError("--equal-masses and --masses are mutually exclusive");
    }
    if (has("--equal-masses")) spec.masses = {1, 1, 1};
    if (has("--masses")) spec.masses = {f.masses[0], f.masses[1], f.masses[2]};
    if (has("--order")) spec.order = f.order;
    if (has("--digits")) spec.digits = f.digits;
    if (has("--t-end")) spec.t_end = f.t_end;
    if (has("--rel-tol")) spec.integrator.rel_tol = f.rel_tol;
    if (has("--abs-tol")) spec.integrator.abs_tol = f.abs_tol;
    if (has("--collision-radius")) spec.integrator.collision_radius = f.collision_radius;
    if (has("--output-step")) spec.integrator.output_step = f.output_step;
    if (has("--max-step")) spec.integrator.max_step = f.max_step;
    if (has("--extended-precision")) spec.integrator.extended_precision = true;
    if (has("--theta-min")) spec.theta_lo = f.theta_lo;
    if (has("--theta-max")) spec.theta_hi = f.theta_hi;
    if (has("--steps")) spec.steps = f.steps;
    if (has("--period")) spec.period = f.period;
    if (has("--trajectory")) spec.trajectory_out = f.trajectory_out;
    if (has("--samples")) spec.samples = f.samples;
    if (has("--seed")) spec.seed = f.seed;
    spec.compare = compare;
    spec.timing = timing;

    if (spec.command == Command::ChoreoRefine && spec.period && !spec.theta) {
        throw UsageError("--period needs --theta");
    }
    validate(spec);
    return spec;
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    switch (spec.command) {
        case Command::Simulate: return cmd_simulate(spec, out, err);
        case Command::Jets: return cmd_jets(spec, out);
        case Command::Theta: return cmd_theta(spec, out);
        case Command::ClosedForm: return cmd_closed_form(spec, out);
        case Command::AppendixVerify: return cmd_appendix(spec, out);
        case Command::ChoreoScan: return cmd_choreo_scan(spec, out);
        case Command::ChoreoRefine: return cmd_choreo_refine(spec, out, err);
        case Command::RepulsiveCheck: return cmd_repulsive(spec, out);
    }
    return exit_code::usage;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunSpec spec;
    try {
        spec = parse_args(args);
    } catch (const HelpRequested& h) {
        out << h.what();
        return exit_code::ok;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const InvalidArgument& e) {
        err << "invalid parameters: " << e.what() << '\n';
        return exit_code::validation;
    }
    try {
        return run(spec, out, err);
    } catch (const InvalidArgument& e) {
        err << "invalid parameters: " << e.what() << '\n';
        return exit_code::validation;
    } catch (const Error& e) {
        err << "numeric failure: " << e.what() << '\n';
        return exit_code::numeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::numeric;
    }
}

}  // namespace threebody::cli
