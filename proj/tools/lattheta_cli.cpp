#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lattheta/lattheta.hpp"

using namespace lattheta;

namespace {

// Exit codes
constexpr int kOk = 0, kUsage = 2, kTolerance = 3, kLemmaFailure = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ToleranceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Field = std::variant<double, long, bool, std::string>;
using Record = std::vector<std::pair<std::string, Field>>;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_cell(const Field& f) {
    if (auto d = std::get_if<double>(&f)) return fmt17(*d);
    if (auto l = std::get_if<long>(&f)) return std::to_string(*l);
    if (auto b = std::get_if<bool>(&f)) return *b ? "true" : "false";
    const std::string& s = std::get<std::string>(f);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

nlohmann::ordered_json to_json(const Record& r) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, f] : r) std::visit([&](const auto& v) { j[k] = v; }, f);
    return j;
}

struct Output {
    std::string format = "json";
    bool csv = false;
    std::string out;

    void add(CLI::App* app) {
        app->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "human"}));
        app->add_flag("--csv", csv, "Shorthand for --format csv");
        app->add_option("--out", out, "Write output to this file instead of stdout");
    }

    // A single record prints as a JSON object, several as an array.
    void emit(const std::vector<Record>& rows, bool as_array = false) const {
        const std::string f = csv ? "csv" : format;
        std::ostringstream os;
        if (f == "csv") {
            if (!rows.empty()) {
                for (std::size_t i = 0; i < rows[0].size(); ++i) os << (i ? "," : "") << rows[0][i].first;
                os << "\n";
            }
            for (const auto& r : rows) {
                for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i].second);
                os << "\n";
            }
        } else if (f == "human") {
            for (const auto& r : rows) {
                for (const auto& [k, v] : r) os << k << " = " << csv_cell(v) << "\n";
                if (rows.size() > 1) os << "\n";
            }
        } else {
            nlohmann::ordered_json j;
            if (rows.size() == 1 && !as_array) {
                j = to_json(rows[0]);
            } else {
                j = nlohmann::ordered_json::array();
                for (const auto& r : rows) j.push_back(to_json(r));
            }
            os << j.dump(2) << "\n";
        }
        if (out.empty()) {
            std::cout << os.str();
        } else {
            std::ofstream file(out);
            if (!file) throw UsageError("--out: cannot open " + out);
            file << os.str();
        }
    }
};

std::vector<double> parse_list(const std::string& flag, const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            v.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError(flag + ": cannot parse '" + tok + "' as a number");
        }
    }
    if (v.empty()) throw UsageError(flag + ": empty value");
    return v;
}

std::pair<double, double> parse_pair(const std::string& flag, const std::string& text) {
    const auto v = parse_list(flag, text);
    if (v.size() != 2) throw UsageError(flag + ": expected two comma-separated numbers");
    return {v[0], v[1]};
}

// "start:stop:count", a comma list, or a single number
std::vector<double> parse_grid(const std::string& flag, const std::string& text) {
    if (text.find(':') == std::string::npos) return parse_list(flag, text);
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3) throw UsageError(flag + ": grids are start:stop:count");
    const double a = parse_list(flag, parts[0]).at(0), b = parse_list(flag, parts[1]).at(0);
    const double nd = parse_list(flag, parts[2]).at(0);
    if (nd < 1 || nd != std::floor(nd)) throw UsageError(flag + ": count must be a positive integer");
    const auto n = static_cast<std::size_t>(nd);
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / (n - 1.0);
    return g;
}

void require_positive(const std::string& flag, double v) {
    if (!(v > 0.0)) throw UsageError(flag + ": must be positive (got " + fmt17(v) + ")");
}

TruncationPolicy policy(double tol) {
    require_positive("--tol", tol);
    TruncationPolicy p;
    p.target_tol = tol;
    return p;
}

void require_converged(const CertifiedValue& v, const std::string& what) {
    if (!v.converged) throw ToleranceError(what + ": truncation tolerance not met (tail bound " + fmt17(v.tail_bound) + ")");
}

struct LatticeArg {
    std::string text = "0.5,0.86602540378443865";

    Lattice get(const std::string& flag = "--lattice") const {
        const auto [x, y] = parse_pair(flag, text);
        if (!(y > 0.0)) throw UsageError(flag + ": imaginary part must be positive");
        return lattice_from_tau(x, y);
    }
};

PhasePoint shift_or_b(const std::string& text, const Lattice& L) {
    if (text.empty()) return special_point_b(L.x, L.y);
    const auto [u, v] = parse_pair("--shift", text);
    return PhasePoint{u, v};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lattice theta functions, their extrema and applications"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    Output output;
    double tol = 1e-10;
    auto common = [&](CLI::App* sub) {
        output.add(sub);
        sub->add_option("--tol", tol, "Target truncation tolerance");
    };

    // theta
    LatticeArg th_lat;
    std::string th_shift;
    double th_alpha = 1.0;
    bool th_charged = false;
    auto* theta = app.add_subcommand("theta", "Evaluate the shifted or charged lattice theta function");
    theta->add_option("--lattice", th_lat.text, "Shape x,y of the unit-covolume lattice (default hexagonal)");
    theta->add_option("--shift", th_shift, "Shift u,v in lattice coordinates (default: point b)");
    theta->add_option("--alpha", th_alpha, "Gaussian parameter alpha > 0");
    theta->add_flag("--charged", th_charged, "Charged sum instead of shifted sum");
    common(theta);

    // minimize
    LatticeArg mn_lat;
    double mn_alpha = 1.0;
    std::size_t mn_grid = 64;
    bool mn_charged = false;
    auto* minimize = app.add_subcommand("minimize", "Minimize over the shift (or charge) on one lattice");
    minimize->add_option("--lattice", mn_lat.text, "Shape x,y");
    minimize->add_option("--alpha", mn_alpha, "Gaussian parameter alpha > 0");
    minimize->add_option("--grid", mn_grid, "Coarse grid resolution per axis");
    minimize->add_flag("--charged", mn_charged, "Minimize the charged sum");
    common(minimize);

    // sweep
    std::string sw_alpha = "1", sw_x = "0:0.5:11", sw_y = "0.86602540378443865:2:11";
    std::size_t sw_grid = 64;
    bool sw_domain = false, sw_stability = false;
    std::string sw_mix = "0,0.5,1";
    auto* sweep = app.add_subcommand("sweep", "min_z E(z;alpha) over a grid of lattice shapes");
    sweep->add_option("--alpha", sw_alpha, "Alpha values: list or start:stop:count");
    sweep->add_option("--x", sw_x, "x grid start:stop:count");
    sweep->add_option("--y", sw_y, "y grid start:stop:count");
    sweep->add_option("--grid", sw_grid, "Torus grid resolution per cell");
    sweep->add_flag("--require-domain", sw_domain, "Reject shapes outside D_+");
    sweep->add_flag("--stability", sw_stability,
                    "Exploratory: theta at shifts between point b and the circumcentre, minus the hexagonal value");
    sweep->add_option("--mix", sw_mix, "With --stability: mixing weights toward the circumcentre");
    common(sweep);

    // frame-bounds
    std::string fb_shape = "0.5,0.86602540378443865", fb_x, fb_y;
    long fb_density = 2;
    auto* frame = app.add_subcommand("frame-bounds", "Gaussian Gabor frame bounds at even density");
    frame->add_option("--shape", fb_shape, "Shape x,y");
    frame->add_option("--density", fb_density, "Density vol^{-1}, an even integer");
    frame->add_option("--x", fb_x, "Sweep x grid (with --y)");
    frame->add_option("--y", fb_y, "Sweep y grid (with --x)");
    common(frame);

    // heat
    LatticeArg ht_lat;
    std::string ht_shift = "0,0";
    double ht_t = 1.0 / (4.0 * kPi);
    bool ht_extremes = false;
    auto* heat = app.add_subcommand("heat", "Heat kernel on the flat torus");
    heat->add_option("--lattice", ht_lat.text, "Shape x,y");
    heat->add_option("--shift", ht_shift, "Point u,v in lattice coordinates");
    heat->add_option("--t", ht_t, "Time t > 0");
    heat->add_flag("--extremes", ht_extremes, "Also report min and max temperature");
    common(heat);

    // zeta
    LatticeArg ze_lat;
    std::string ze_shift = "0.5,0.5";
    double ze_s = 2.0;
    bool ze_min = false;
    auto* zeta = app.add_subcommand("zeta", "Shifted Epstein zeta function sum |lambda+z|^{-2s}");
    zeta->add_option("--lattice", ze_lat.text, "Shape x,y");
    zeta->add_option("--shift", ze_shift, "Shift u,v in lattice coordinates");
    zeta->add_option("--s", ze_s, "Exponent s > 1");
    zeta->add_flag("--minimize", ze_min, "Also minimize over the shift");
    zeta->footer("--tol defaults to 1e-5 here: the direct sum carries an algebraic tail bound.");
    common(zeta);

    // born
    LatticeArg bo_lat;
    long bo_N = 3;
    double bo_alpha = 1.0;
    std::string bo_weights;
    auto* born = app.add_subcommand("born", "Born charge energy with a single Gaussian node");
    born->add_option("--lattice", bo_lat.text, "Shape x,y");
    born->add_option("--period", bo_N, "Period N of the charge pattern");
    born->add_option("--alpha", bo_alpha, "Gaussian node alpha > 0");
    born->add_option("--weights", bo_weights, "N*N comma-separated charges, row m1 major (default: honeycomb optimum)");
    common(born);

    // landau
    auto* landau = app.add_subcommand("landau", "Landau constant identities");
    common(landau);

    // verify-lemmas
    std::string vl_suite = "all";
    auto* verify = app.add_subcommand("verify-lemmas", "Run the lemma verification suite");
    verify->add_option("--suite", vl_suite, "Suite name")->check(CLI::IsMember({"all", "quick", "exploratory"}));
    common(verify);

    // reduce
    std::string rd_tau;
    auto* reduce = app.add_subcommand("reduce", "Reduce tau into the fundamental domain D_+");
    reduce->add_option("--tau", rd_tau, "x,y with y > 0")->required();
    common(reduce);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*theta) {
            const TruncationPolicy pol = policy(tol);
            require_positive("--alpha", th_alpha);
            const Lattice L = th_lat.get();
            const PhasePoint b = shift_or_b(th_shift, L);
            const CertifiedValue v = th_charged ? theta_charged(L, b, th_alpha, pol) : theta_shifted(L, b, th_alpha, pol);
            require_converged(v, "theta");
            output.emit({{{"value", v.value}, {"tail_bound", v.tail_bound}, {"terms_used", long(v.terms_used)}}});
        } else if (*minimize) {
            const TruncationPolicy pol = policy(tol);
            require_positive("--alpha", mn_alpha);
            const Lattice L = mn_lat.get();
            const MinResult m = mn_charged ? minimize_charged(L, mn_alpha, mn_grid, pol)
                                           : minimize_over_cell(L, mn_alpha, mn_grid, pol);
            require_converged(m.value, "minimize");
            output.emit({{{"x", L.x}, {"y", L.y}, {"alpha", mn_alpha}, {"min_value", m.value.value},
                          {"argmin_u", m.argmin.u}, {"argmin_v", m.argmin.v}, {"tail_bound", m.value.tail_bound},
                          {"grid_resolution", long(m.grid_resolution)},
                          {"refinement_steps", long(m.refinement_steps)}}});
        } else if (*sweep) {
            const TruncationPolicy pol = policy(tol);
            const auto as = parse_grid("--alpha", sw_alpha);
            for (double a : as) require_positive("--alpha", a);
            const auto xs = parse_grid("--x", sw_x), ys = parse_grid("--y", sw_y);
            for (double y : ys) require_positive("--y", y);
            if (sw_stability) {
                std::vector<Record> out;
                for (const auto& r : stability_sweep(as, xs, ys, parse_grid("--mix", sw_mix), pol))
                    out.push_back({{"x", r.x}, {"y", r.y}, {"alpha", r.alpha}, {"mix", r.mix}, {"value", r.value},
                                   {"hex_value", r.hex_value}, {"excess", r.excess}});
                output.emit(out, true);
                return kOk;
            }
            const auto rows = sweep_fundamental_domain(as, xs, ys, sw_grid, sw_domain, pol);
            std::vector<Record> out;
            for (const auto& r : rows)
                out.push_back({{"x", r.x}, {"y", r.y}, {"alpha", r.alpha}, {"min_value", r.min_value},
                               {"argmin_u", r.argmin_u}, {"argmin_v", r.argmin_v}, {"tail_bound", r.tail_bound}});
            output.emit(out, true);
        } else if (*frame) {
            const TruncationPolicy pol = policy(tol);
            if (!fb_x.empty() || !fb_y.empty()) {
                if (fb_x.empty() || fb_y.empty()) throw UsageError("--x and --y must be given together");
                const auto rows = strohmer_beaver_sweep(fb_density, parse_grid("--x", fb_x), parse_grid("--y", fb_y), pol);
                std::vector<Record> out;
                for (const auto& r : rows)
                    out.push_back({{"x", r.x}, {"y", r.y}, {"density", fb_density}, {"lower_A", r.lower_A},
                                   {"upper_B", r.upper_B}, {"ratio", r.ratio}});
                output.emit(out, true);
            } else {
                const auto [x, y] = parse_pair("--shape", fb_shape);
                if (!(y > 0.0)) throw UsageError("--shape: imaginary part must be positive");
                const FrameBounds fb = gabor_frame_bounds(x, y, fb_density, pol);
                output.emit({{{"x", x}, {"y", y}, {"density", fb.density}, {"lower_A", fb.lower_A},
                              {"upper_B", fb.upper_B}, {"ratio", fb.upper_B / fb.lower_A},
                              {"argmin_u", fb.argmin_z.u}, {"argmin_v", fb.argmin_z.v}}});
            }
        } else if (*heat) {
            const TruncationPolicy pol = policy(tol);
            require_positive("--t", ht_t);
            const Lattice L = ht_lat.get();
            const auto [u, v] = parse_pair("--shift", ht_shift);
            const CertifiedValue g = heat_kernel_torus(L, PhasePoint{u, v}, ht_t, pol);
            const CertifiedValue s = heat_kernel_torus_spectral(L, PhasePoint{u, v}, ht_t, pol);
            require_converged(g, "heat");
            require_converged(s, "heat");
            Record r{{"t", ht_t}, {"value", g.value}, {"tail_bound", g.tail_bound},
                     {"spectral_value", s.value}, {"spectral_tail_bound", s.tail_bound}};
            if (ht_extremes) {
                const TemperatureExtremes te = temperature_extremes(L, ht_t, 48, pol);
                r.push_back({"A_t", te.A_t});
                r.push_back({"B_t", te.B_t});
            }
            output.emit({r});
        } else if (*zeta) {
            // the direct route's rigorous tail decays only algebraically
            if (zeta->count("--tol") == 0) tol = 1e-5;
            const TruncationPolicy pol = policy(tol);
            if (!(ze_s > 1.0)) throw UsageError("--s: must exceed 1");
            const Lattice L = ze_lat.get();
            const auto [u, v] = parse_pair("--shift", ze_shift);
            const CertifiedValue d = epstein_zeta_shifted(L, PhasePoint{u, v}, ze_s, pol);
            require_converged(d, "zeta");
            Record r{{"s", ze_s}, {"value", d.value}, {"tail_bound", d.tail_bound},
                     {"terms_used", long(d.terms_used)},
                     {"quadrature_value", epstein_zeta_quadrature(L, PhasePoint{u, v}, ze_s)}};
            if (ze_min) {
                const MinResult m = minimize_epstein(L, ze_s);
                r.push_back({"min_value", m.value.value});
                r.push_back({"argmin_u", m.argmin.u});
                r.push_back({"argmin_v", m.argmin.v});
            }
            output.emit({r});
        } else if (*born) {
            const TruncationPolicy pol = policy(tol);
            require_positive("--alpha", bo_alpha);
            const Lattice L = bo_lat.get();
            ChargeDistribution eps;
            if (bo_weights.empty()) {
                eps = epsilon_opt_hexagonal(bo_N);
            } else {
                eps.period_N = bo_N;
                eps.weights = parse_list("--weights", bo_weights);
            }
            const CMPotential p{{{bo_alpha, 1.0}}, "gaussian"};
            output.emit({{{"period", bo_N}, {"alpha", bo_alpha}, {"energy", born_energy(L, eps, p, pol)}}});
        } else if (*landau) {
            const LandauConstants c = landau_constants(policy(tol));
            output.emit({{{"L_hex", c.L_hex}, {"A_hex", c.A_hex}, {"product", c.product}, {"L_square", c.L_square}}});
        } else if (*verify) {
            const auto reports = run_lemma_suite(vl_suite);
            bool ok = true;
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            std::vector<Record> rows;
            for (const auto& r : reports) {
                ok &= r.pass;
                nlohmann::ordered_json j;
                j["lemma_id"] = r.lemma_id;
                j["params_tested"] = r.params_tested;
                j["worst_margin"] = r.worst_margin;
                j["pass"] = r.pass;
                j["details"] = r.details;
                arr.push_back(j);
                rows.push_back({{"lemma_id", r.lemma_id}, {"params_tested", r.params_tested},
                                {"worst_margin", r.worst_margin}, {"pass", r.pass}});
            }
            if (output.csv || output.format != "json") {
                output.emit(rows, true);
            } else if (output.out.empty()) {
                std::cout << arr.dump(2) << "\n";
            } else {
                std::ofstream(output.out) << arr.dump(2) << "\n";
            }
            return ok ? kOk : kLemmaFailure;
        } else if (*reduce) {
            const auto [x, y] = parse_pair("--tau", rd_tau);
            if (!(y > 0.0)) throw UsageError("--tau: imaginary part must be positive");
            const ReductionTrace tr = reduce_to_fundamental({x, y});
            std::string word;
            for (Generator g : tr.word) word += std::string(word.empty() ? "" : " ") + generator_name(g);
            output.emit({{{"x_in", x}, {"y_in", y}, {"x_out", tr.tau_out.real()}, {"y_out", tr.tau_out.imag()},
                          {"word", word}, {"length", long(tr.word.size())}}});
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ToleranceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kTolerance;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == Errc::NoConvergence ? kTolerance : kUsage;
    }
    return kOk;
}
