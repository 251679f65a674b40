// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "ucalos/design.hpp"
#include "ucalos/sim.hpp"
#include "ucalos/spectrum.hpp"

namespace ucalos::cli {

namespace {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// Accepts plain radians or "deg:<value>", rewriting the latter in place.
CLI::Validator angle_units()
{
    return CLI::Validator(
        [](std::string& s) -> std::string {
            if (s.rfind("deg:", 0) != 0) return {};
            const std::string num = s.substr(4);
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(num, &used);
            } catch (const std::exception&) {
                return "bad angle '" + s + "'";
            }
            if (used != num.size()) return "bad angle '" + s + "'";
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", v * kPi / 180.0);
            s = buf;
            return {};
        },
        "RAD|deg:DEG", "angle");
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool given_on_command_line(const std::vector<std::string>& tail, const std::string& flag)
{
    return std::any_of(tail.begin(), tail.end(), [&](const std::string& t) {
        return t == flag || t.rfind(flag + "=", 0) == 0;
    });
}

std::optional<std::string> config_path(const std::vector<std::string>& tail)
{
    for (std::size_t i = 0; i < tail.size(); ++i) {
        if (tail[i] == "--config") {
            if (i + 1 >= tail.size()) throw UsageError("--config needs a file name");
            return tail[i + 1];
        }
        if (tail[i].rfind("--config=", 0) == 0) return tail[i].substr(9);
    }
    return std::nullopt;
}

// Flat "key = value" file; keys are flag names without the leading dashes.
// Keys already present on the command line are skipped so flags win.
std::vector<std::string> config_tokens(CLI::App& sub, const std::string& path,
                                       const std::vector<std::string>& tail)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::vector<std::string> tokens;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = path + ":" + std::to_string(line_no);
        const std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw UsageError(where + ": expected 'key = value'");
        const std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);

        const std::string flag = "--" + key;
        const CLI::Option* opt = key == "config" ? nullptr : sub.get_option_no_throw(flag);
        if (opt == nullptr) throw UsageError(where + ": unknown key '" + key + "' for " + sub.get_name());
        if (given_on_command_line(tail, flag)) continue;

        if (opt->get_expected_min() == 0) {
            if (value == "true" || value == "1" || value == "yes") tokens.push_back(flag);
            else if (value != "false" && value != "0" && value != "no")
                throw UsageError(where + ": key '" + key + "' expects true or false");
        } else {
            tokens.push_back(flag);
            tokens.push_back(value);
        }
    }
    return tokens;
}

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}

    std::ostream& stream() { return path_.empty() ? fallback_ : buffer_; }

    void flush()
    {
        if (path_.empty()) return;
        std::ofstream f(path_, std::ios::binary);
        if (!f) throw UsageError("cannot write '" + path_ + "'");
        f << buffer_.str();
        if (!f) throw UsageError("write to '" + path_ + "' failed");
    }

private:
    std::string path_;
    std::ostream& fallback_;
    std::ostringstream buffer_;
};

void require_even(int ns)
{
    if (ns < 2 || ns % 2 != 0)
        throw UsageError("--ns must be an even integer >= 2, got " + std::to_string(ns));
}

// Rotating the Rx ring by a whole antenna spacing only relabels its
// elements, so a fixed rotation is reduced modulo 2 pi/N_s.
double fold_theta_o(int ns, double theta_o)
{
    if (!std::isfinite(theta_o)) throw UsageError("--theta-o must be finite");
    return std::remainder(theta_o, kTwoPi / ns);
}

void require_theta_o(int ns, double theta_o)
{
    if (std::abs(theta_o) > kPi / ns + 1e-12)
        throw UsageError("--theta-o must lie in [-pi/N_s, pi/N_s], got " + fmt(theta_o));
}

std::vector<double> grid(double start, double stop, double step)
{
    if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop))
        throw UsageError("grid step must be positive and bounds finite");
    if (stop < start) throw UsageError("empty grid: --stop is below --start");
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    std::vector<double> g;
    for (long i = 0; i <= n; ++i) g.push_back(start + static_cast<double>(i) * step);
    if (std::abs(g.back() - stop) <= 1e-9 * step) g.back() = stop;
    return g;
}

// ---- design -------------------------------------------------------------

struct DesignArgs {
    int ns = 8;
    double snr_db = 15.0;
    double wavelength = kSpeedOfLight / 75e9;
    double distance = 100.0;
    double theta_o = 0.0;
    double beta_max = 14.0;
    double resolution = 0.01;
    std::string curve;
};

void cmd_design(DesignArgs a, std::ostream& out)
{
    require_even(a.ns);
    a.theta_o = fold_theta_o(a.ns, a.theta_o);
    if (!(a.wavelength > 0.0) || !(a.distance > 0.0)) throw UsageError("--lambda and --dist must be positive");
    BetaSearchOptions opts;
    opts.beta_max = a.beta_max;
    opts.resolution = a.resolution;
    const DesignResult d = design_arrays(a.ns, a.snr_db, a.theta_o, a.wavelength, a.distance, opts);

    const std::pair<const char*, std::string> table[] = {
        {"n_antennas", std::to_string(a.ns)},   {"snr_db", fmt(a.snr_db)},
        {"theta_o_rad", fmt(a.theta_o)},        {"wavelength_m", fmt(a.wavelength)},
        {"distance_m", fmt(a.distance)},        {"beta_opt", fmt(d.beta_opt)},
        {"radius_m", fmt(d.radius_equal)},      {"radii_product_m2", fmt(d.radii_product)},
        {"capacity_bps_hz", fmt(d.capacity)},   {"condition_number", fmt(d.condition_number)},
    };
    for (const auto& [k, v] : table) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%-18s %s\n", k, v.c_str());
        out << buf;
    }

    if (!a.curve.empty()) {
        Output file(a.curve, out);
        file.stream() << "beta,capacity_bps_hz\n";
        for (const CurvePoint& p : capacity_curve(a.ns, a.theta_o, a.snr_db, a.beta_max, a.resolution))
            file.stream() << fmt(p.beta) << ',' << fmt(p.capacity) << '\n';
        file.flush();
    }
}

// ---- spectrum -----------------------------------------------------------

struct SpectrumArgs {
    int ns = 8;
    std::string axis = "beta";
    std::optional<double> beta;
    double theta_o = 0.0;
    std::optional<double> start, stop, step;
    std::string out;
};

void cmd_spectrum(const SpectrumArgs& a, std::ostream& out)
{
    require_even(a.ns);
    const bool beta_axis = a.axis == "beta";
    std::vector<SpectrumPoint> pts;
    if (beta_axis) {
        const auto g = grid(a.start.value_or(0.0), a.stop.value_or(14.0), a.step.value_or(0.01));
        pts = spectrum_sweep(a.ns, fold_theta_o(a.ns, a.theta_o), g);
    } else {
        if (!a.beta) throw UsageError("--beta is required with --axis theta_o");
        const double lo = a.start.value_or(-kPi / a.ns);
        const double hi = a.stop.value_or(kPi / a.ns);
        const auto g = grid(lo, hi, a.step.value_or((hi - lo) / 200.0));
        for (double t : g) require_theta_o(a.ns, t);
        pts = rotation_sweep(a.ns, *a.beta, g);
    }

    Output o(a.out, out);
    o.stream() << "beta,theta_o";
    for (int k = 1; k <= a.ns; ++k) o.stream() << ",sigma_" << k;
    o.stream() << '\n';
    for (const SpectrumPoint& p : pts) {
        o.stream() << fmt(p.beta) << ',' << fmt(p.theta_o);
        for (Eigen::Index k = 0; k < p.sigmas.size(); ++k) o.stream() << ',' << fmt(p.sigmas(k));
        o.stream() << '\n';
    }
    o.flush();
}

// ---- capacity-sweep -----------------------------------------------------

struct CapacityArgs {
    std::vector<int> ns{4, 8, 12, 16};
    std::vector<double> snr_db{15.0};
    std::vector<double> theta_o{0.0};
    double beta_max = 14.0;
    double resolution = 0.01;
    std::string out;
};

void cmd_capacity_sweep(const CapacityArgs& a, std::ostream& out)
{
    for (int n : a.ns) require_even(n);
    Output o(a.out, out);
    o.stream() << "n_antennas,snr_db,theta_o,beta,capacity_bps_hz\n";
    for (int n : a.ns)
        for (double snr : a.snr_db)
            for (double t : a.theta_o)
                for (const CurvePoint& p :
                     capacity_curve(n, fold_theta_o(n, t), snr, a.beta_max, a.resolution))
                    o.stream() << n << ',' << fmt(snr) << ',' << fmt(t) << ',' << fmt(p.beta) << ','
                               << fmt(p.capacity) << '\n';
    o.flush();
}

// ---- simulate / codebook ------------------------------------------------

struct TrialArgs {
    TrialConfig cfg;
    std::optional<double> range_all;
    bool exact_geometry = false;
    bool published = false;
    std::string out;
};

void add_trial_options(CLI::App* sub, TrialArgs& a)
{
    TrialConfig& c = a.cfg;
    sub->add_option("--trials", c.n_trials, "Monte-Carlo trials")->capture_default_str();
    sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
    sub->add_option("--snr-db", c.snr_db, "Total SNR P_T/N_o in dB")->capture_default_str();
    sub->add_option("--lambda", c.wavelength, "Wavelength in meters")->capture_default_str();
    sub->add_option("--design-dist", c.design_distance, "Distance at which the radii are optimized")
        ->capture_default_str();
    sub->add_option("--range-small", c.angle_range_small,
                    "Half-width of the theta_o, phi_cs, phi_x, phi_y draws")
        ->transform(angle_units())
        ->capture_default_str();
    sub->add_option("--theta-cs-range", c.theta_cs_range, "Half-width of the theta_cs draw")
        ->transform(angle_units())
        ->capture_default_str();
    sub->add_option("--range-all", a.range_all, "Set every angle half-width at once")
        ->transform(angle_units());
    sub->add_option("--phi-lo", c.phi_range.lo, "Lower end of the codebook phi_cs range")
        ->transform(angle_units())
        ->capture_default_str();
    sub->add_option("--phi-hi", c.phi_range.hi, "Upper end of the codebook phi_cs range")
        ->transform(angle_units())
        ->capture_default_str();
    sub->add_option("--selection-power", c.selection_power, "Powers used in codebook selection")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, SelectionPower>{{"approximate", SelectionPower::approximate},
                                                  {"exact", SelectionPower::exact}},
            CLI::ignore_case));
    sub->add_flag("--exact-geometry", a.exact_geometry, "Use exact distances instead of the far-field model");
    sub->add_flag("--published-expansion", a.published,
                  "Use the far-field expansion terms exactly as originally published");
    sub->add_option("--sic", c.sic, "SIC nulling filter")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, SicNulling>{{"mmse", SicNulling::mmse},
                                              {"zero-forcing", SicNulling::zero_forcing}},
            CLI::ignore_case));
    sub->add_option("--jobs", c.jobs, "Worker threads (results do not depend on it)")
        ->capture_default_str();
    sub->add_option("--out", a.out, "Output CSV (default stdout)");
}

void finish_trial_args(TrialArgs& a)
{
    if (a.range_all) {
        a.cfg.angle_range_small = *a.range_all;
        a.cfg.theta_cs_range = *a.range_all;
    }
    if (a.exact_geometry) a.cfg.model = ChannelModel::exact_distance;
    if (a.published) a.cfg.approx.terms = ApproxTerms::published;
    for (int n : a.cfg.n_antennas_list) require_even(n);
    a.cfg.validate();
}

struct CodebookArgs {
    int l_min = 4;
    int l_max = 10;
    int ns = 16;
    double distance = 300.0;
    std::string quantization = "both";
};

int count_cores()
{
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

const char* kUnitsNote =
    "Units: meters, dB, radians. Angles also accept degrees as deg:<value>.\n"
    "--config FILE reads flat 'key = value' lines (keys are flag names without\n"
    "dashes); flags given on the command line take precedence.\n"
    "Exit status: 0 success, 2 usage error, 3 numerical failure.";

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Line-of-sight MIMO between uniform circular arrays"};
    app.footer(kUnitsNote);
    app.require_subcommand(1);

    std::string config_file;
    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", config_file, "Flat key = value file");
        sub->footer(kUnitsNote);
    };

    DesignArgs design;
    auto* s_design = app.add_subcommand("design", "Optimal RPDR, radii and capacity");
    s_design->add_option("--ns", design.ns, "Antennas per array (even)")->capture_default_str();
    s_design->add_option("--snr-db", design.snr_db, "Total SNR P_T/N_o in dB")->capture_default_str();
    s_design->add_option("--lambda", design.wavelength, "Wavelength in meters")->capture_default_str();
    s_design->add_option("--dist", design.distance, "Link distance in meters")->capture_default_str();
    s_design->add_option("--theta-o", design.theta_o, "Boresight rotation, reduced modulo 2 pi/N_s")
        ->transform(angle_units())
        ->capture_default_str();
    s_design->add_option("--beta-max", design.beta_max, "Upper end of the search")->capture_default_str();
    s_design->add_option("--resolution", design.resolution, "Search grid step")->capture_default_str();
    s_design->add_option("--curve", design.curve, "Also write the capacity-vs-beta curve here");
    add_config(s_design);

    SpectrumArgs spectrum;
    auto* s_spec = app.add_subcommand("spectrum", "Singular values along a beta or theta_o grid");
    s_spec->add_option("--ns", spectrum.ns, "Antennas per array (even)")->capture_default_str();
    s_spec->add_option("--axis", spectrum.axis, "Sweep axis")
        ->check(CLI::IsMember({"beta", "theta_o"}))
        ->capture_default_str();
    s_spec->add_option("--beta", spectrum.beta, "Fixed beta for --axis theta_o");
    s_spec->add_option("--theta-o", spectrum.theta_o, "Fixed rotation for --axis beta")
        ->transform(angle_units())
        ->capture_default_str();
    s_spec->add_option("--start", spectrum.start, "Grid start")->transform(angle_units());
    s_spec->add_option("--stop", spectrum.stop, "Grid end (inclusive)")->transform(angle_units());
    s_spec->add_option("--step", spectrum.step, "Grid step")->transform(angle_units());
    s_spec->add_option("--out", spectrum.out, "Output CSV (default stdout)");
    add_config(s_spec);

    CapacityArgs cap;
    auto* s_cap = app.add_subcommand("capacity-sweep", "Water-filled capacity against beta");
    s_cap->add_option("--ns", cap.ns, "Antenna counts")->delimiter(',')->capture_default_str();
    s_cap->add_option("--snr-db", cap.snr_db, "SNR values in dB")->delimiter(',')->capture_default_str();
    s_cap->add_option("--theta-o", cap.theta_o, "Rotations, reduced modulo 2 pi/N_s")
        ->delimiter(',')
        ->transform(angle_units())
        ->capture_default_str();
    s_cap->add_option("--beta-max", cap.beta_max, "Upper end of the grid")->capture_default_str();
    s_cap->add_option("--resolution", cap.resolution, "Grid step")->capture_default_str();
    s_cap->add_option("--out", cap.out, "Output CSV (default stdout)");
    add_config(s_cap);

    TrialArgs sim;
    sim.cfg.jobs = count_cores();
    auto* s_sim = app.add_subcommand("simulate", "Monte-Carlo rates of every transceiver scheme");
    add_trial_options(s_sim, sim);
    s_sim->add_option("--dist", sim.cfg.distances, "Link distances")->delimiter(',')->capture_default_str();
    s_sim->add_option("--ns", sim.cfg.n_antennas_list, "Antenna counts")->delimiter(',')->capture_default_str();
    s_sim->add_option("--l1", sim.cfg.l1_bits, "Codebook bits for theta_cs")->capture_default_str();
    s_sim->add_option("--l2", sim.cfg.l2_bits, "Codebook bits for phi_cs")->capture_default_str();
    s_sim->add_option("--quantization", sim.cfg.quantization, "Codebook quantization rule")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Quantization>{{"sine", Quantization::sine_uniform},
                                                {"linear", Quantization::linear}},
            CLI::ignore_case));
    add_config(s_sim);

    TrialArgs bits;
    bits.cfg.jobs = count_cores();
    CodebookArgs cb;
    auto* s_cb = app.add_subcommand("codebook", "Codebook rate against the number of feedback bits");
    add_trial_options(s_cb, bits);
    s_cb->add_option("--ns", cb.ns, "Antennas per array (even)")->capture_default_str();
    s_cb->add_option("--dist", cb.distance, "Link distance in meters")->capture_default_str();
    s_cb->add_option("--l-min", cb.l_min, "Smallest total bit count")->capture_default_str();
    s_cb->add_option("--l-max", cb.l_max, "Largest total bit count")->capture_default_str();
    add_config(s_cb);

    try {
        std::vector<std::string> argv = args;
        if (!argv.empty()) {
            if (CLI::App* sub = app.get_subcommand_no_throw(argv.front())) {
                const std::vector<std::string> tail(argv.begin() + 1, argv.end());
                if (const auto path = config_path(tail)) {
                    std::vector<std::string> merged{argv.front()};
                    for (auto& t : config_tokens(*sub, *path, tail)) merged.push_back(t);
                    merged.insert(merged.end(), tail.begin(), tail.end());
                    argv = std::move(merged);
                }
            }
        }
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);

        if (s_design->parsed()) {
            cmd_design(design, out);
        } else if (s_spec->parsed()) {
            cmd_spectrum(spectrum, out);
        } else if (s_cap->parsed()) {
            cmd_capacity_sweep(cap, out);
        } else if (s_sim->parsed()) {
            finish_trial_args(sim);
            Output o(sim.out, out);
            write_csv(o.stream(), run_rate_sweep(sim.cfg));
            o.flush();
        } else if (s_cb->parsed()) {
            require_even(cb.ns);
            bits.cfg.n_antennas_list = {cb.ns};
            bits.cfg.distances = {cb.distance};
            finish_trial_args(bits);
            if (cb.l_min < 3 || cb.l_max < cb.l_min) throw UsageError("need 3 <= --l-min <= --l-max");
            Output o(bits.out, out);
            write_csv(o.stream(), run_codebook_bit_sweep(bits.cfg, default_bit_grid(cb.l_min, cb.l_max)));
            o.flush();
        }
        return kExitOk;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace ucalos::cli
