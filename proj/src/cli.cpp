#include "pdirac/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdirac/config.hpp"
#include "pdirac/cross_sections.hpp"
#include "pdirac/evolution.hpp"
#include "pdirac/twoparticle.hpp"

namespace pdirac
{
namespace
{

using nlohmann::json;

const GammaBasis& basis_of(const RunConfig& cfg)
{
    return cfg.basis == "weyl" ? GammaBasis::weyl() : GammaBasis::dirac();
}

double four_gamma_trace_analytic(int a, int b, int c, int d)
{
    return 4.0 * (metric(a, b) * metric(c, d) - metric(a, c) * metric(b, d) + metric(a, d) * metric(b, c));
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    return f;
}

int check_algebra(const RunConfig& cfg, std::ostream& out)
{
    const GammaBasis& g = basis_of(cfg);
    const double ac = g.anticommutator_defect();
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                {
                    const std::array<int, 4> idx{a, b, c, d};
                    worst = std::max(worst, std::abs(trace_product(idx, false, g) - four_gamma_trace_analytic(a, b, c, d)));
                }
    const bool pass = ac <= cfg.tol_algebra && worst <= cfg.tol_algebra;
    out << json{{"basis", g.name},
                {"max_anticommutator_residual", ac},
                {"four_gamma_traces", 256},
                {"max_trace_error", worst},
                {"tolerance", cfg.tol_algebra},
                {"pass", pass}}
               .dump(2)
        << "\n";
    return pass ? exit_ok : exit_compute_error;
}

int check_spinors(const RunConfig& cfg, std::ostream& out)
{
    const GammaBasis& g = basis_of(cfg);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> mass(0.1, 10.0), comp(-1.0, 1.0);
    std::bernoulli_distribution sign;
    const Eigen::Matrix2cd i2 = Eigen::Matrix2cd::Identity();
    double orth = 0.0, completeness = 0.0, evenness = 0.0;
    for (int n = 0; n < cfg.samples; ++n)
    {
        const double m = mass(rng);
        const double px = 5.0 * m * comp(rng), py = 5.0 * m * comp(rng), pz = 5.0 * m * comp(rng);
        const auto p = OnShellMomentum::from_three_momentum(m, px, py, pz, sign(rng) ? 1 : -1);
        const SpinorBlock blk = build_basis(p.p(), g);
        const Eigen::Matrix<cplx, 2, 4> ubar = blk.u.adjoint() * g[0];
        const Eigen::Matrix<cplx, 2, 4> vbar = blk.v.adjoint() * g[0];
        orth = std::max({orth, (ubar * blk.u - i2).cwiseAbs().maxCoeff(), (vbar * blk.v + i2).cwiseAbs().maxCoeff(),
                         (ubar * blk.v).cwiseAbs().maxCoeff()});
        completeness = std::max(completeness, (blk.u * ubar - blk.v * vbar - SpinorMatrix::Identity()).cwiseAbs().maxCoeff());
        const SpinorBlock reflected = build_basis(-p.p(), g);
        evenness = std::max({evenness, (reflected.u - blk.u).cwiseAbs().maxCoeff(), (reflected.v - blk.v).cwiseAbs().maxCoeff()});
    }
    const bool pass = orth <= cfg.tol_spinor && completeness <= cfg.tol_spinor && evenness <= cfg.tol_spinor;
    out << json{{"basis", g.name},
                {"samples", cfg.samples},
                {"seed", cfg.seed},
                {"max_orthonormality_error", orth},
                {"max_completeness_error", completeness},
                {"max_evenness_error", evenness},
                {"tolerance", cfg.tol_spinor},
                {"pass", pass}}
               .dump(2)
        << "\n";
    return pass ? exit_ok : exit_compute_error;
}

int xsec(const RunConfig& cfg, std::ostream& out)
{
    XSecConfig x;
    x.process = process_from_string(cfg.process);
    x.alpha = cfg.alpha;
    x.m_e = cfg.m_e;
    x.m_mu = cfg.m_mu;
    x.sqrt_s = cfg.sqrt_s;
    x.omega = cfg.omega;
    x.L = cfg.L;
    x.grid_points = cfg.grid_points;
    x.basis = &basis_of(cfg);
    const XSecResult r = cross_section(x);

    if (cfg.out.empty())
        write_csv(out, r);
    else
    {
        auto f = open_output(cfg.out);
        write_csv(f, r);
    }
    const std::string audit = audit_json(r);
    if (!cfg.audit.empty())
        open_output(cfg.audit) << audit << "\n";
    else if (!cfg.out.empty())
        out << audit << "\n";
    return exit_ok;
}

int entangle(const RunConfig& cfg, std::ostream& out)
{
    const GammaBasis& g = basis_of(cfg);
    const double m = cfg.m_e;
    const PlaneWave psi = PlaneWave::particle(OnShellMomentum::from_three_momentum(m, 0.0, 0.0, 0.3 * m), 1, {}, g);
    const PlaneWave xi = PlaneWave::particle(OnShellMomentum::from_three_momentum(m, 0.2 * m, 0.0, -0.4 * m), 2, {}, g);
    CurrentGrid grid = CurrentGrid::relative_phase_period(psi, xi, cfg.current_points);

    json states = json::object();
    const std::map<std::string, TwoParticleState> cases{
        {"separable", TwoParticleState::separable(as_field(psi), as_field(xi))},
        {"antisymmetric", build_entangled(as_field(psi), as_field(xi), -1)},
        {"symmetric", build_entangled(as_field(psi), as_field(xi), +1)},
    };
    const double scale = 1.0 / std::pow(psi.normalization().factor(), 2);
    for (const auto& [name, state] : cases)
    {
        const CurrentReport rep = current_report(state, grid, g);
        const FourVector x{0.1, 0.2, -0.3, 0.4}, y{-0.2, 0.5, 0.1, -0.1};
        const double residual = scale * two_particle_residual(state, x, y, 0.3, {}, 0.0, 0.0, 1e-4, g).cwiseAbs().maxCoeff();
        double timelike = 0.0;
        for (const auto& j : rep.total) timelike += j[0];
        states[name] = {{"nonadditivity_norm", rep.nonadditivity_norm},
                        {"mean_timelike_current", timelike / static_cast<double>(rep.total.size())},
                        {"residual", residual},
                        {"grid_points", rep.total.size()}};
    }
    out << json{{"basis", g.name}, {"states", states}}.dump(2) << "\n";
    return exit_ok;
}

int evolve(const RunConfig& cfg, std::ostream& out)
{
    const GammaBasis& g = basis_of(cfg);
    const double m = cfg.evolve_mass;
    SpectralField field(cfg.n_t, cfg.n_z, 2.0 * std::numbers::pi * cfg.n_t / (4.0 * m), 2.0 * std::numbers::pi * cfg.n_z / (4.0 * m), g);
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal;
    for (int a = 0; a < cfg.n_t; ++a)
        for (int b = 0; b < cfg.n_z; ++b)
        {
            const FourVector k = field.mode_momentum(a, b);
            if ((cfg.n_t % 2 == 0 && a == cfg.n_t / 2) || (cfg.n_z % 2 == 0 && b == cfg.n_z / 2) || dot(k, k) >= 0.0) continue;
            for (int c = 0; c < 4; ++c) field.coeff(a, b)[c] = cplx{normal(rng), normal(rng)};
        }

    const double n0 = field.branch_norm();
    const cplx d0 = field.dirac_sum();
    SpectralField f = field;
    for (int s = 0; s < cfg.evolve_steps; ++s) f = evolve_free(f, cfg.evolve_dtau);
    const double n1 = f.branch_norm();
    const cplx d1 = f.dirac_sum();

    if (!cfg.snapshot.empty())
    {
        auto os = open_output(cfg.snapshot);
        write_snapshot_csv(os, field);
        write_snapshot_csv(os, f);
    }

    json probes = json::array();
    for (double ratio : {1.0, 2.0, 5.0})
        for (int branch : {+1, -1})
        {
            const double pz = m * std::sqrt(ratio * ratio - 1.0);
            const auto p = OnShellMomentum::from_three_momentum(m, 0.0, 0.0, pz);
            probes.push_back({{"E_over_m", ratio},
                              {"branch", branch},
                              {"dx0_dtau", phase_velocity_probe(p, branch, g)},
                              {"expected", branch / ratio}});
        }

    out << json{{"basis", g.name},
                {"lattice", {cfg.n_t, cfg.n_z}},
                {"tau", f.tau()},
                {"steps", cfg.evolve_steps},
                {"branch_norm_relative_drift", std::abs(n1 - n0) / n0},
                {"dirac_sum_drift", std::abs(d1 - d0)},
                {"spacelike_modes", field.spacelike_modes()},
                {"phase_velocity", probes}}
               .dump(2)
        << "\n";
    return exit_ok;
}

void error_json(std::ostream& err, const std::string& kind, const std::string& message)
{
    err << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Parametrized Dirac formalism: algebra checks, cross sections, entanglement and evolution"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    std::vector<std::pair<std::string, std::string>> flags;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key = value config file");
        sub->add_option("--set", sets, "override as key=value (repeatable)");
        sub->add_option("--basis", "gamma representation: dirac | weyl")->each([&](const std::string& v) { flags.emplace_back("basis", v); });
        sub->add_option("--seed", "random seed")->each([&](const std::string& v) { flags.emplace_back("seed", v); });
    };
    auto flag = [&](CLI::App* sub, const std::string& name, const std::string& key, const std::string& help) {
        sub->add_option(name, help)->each([&flags, key](const std::string& v) { flags.emplace_back(key, v); });
    };

    auto* algebra = app.add_subcommand("check-algebra", "anticommutators and four-gamma traces");
    auto* spinors = app.add_subcommand("check-spinors", "orthonormality, completeness and evenness of u, v");
    auto* xs = app.add_subcommand("xsec", "cross section through the parametrized recipe");
    auto* ent = app.add_subcommand("entangle", "two-particle current additivity report");
    auto* evo = app.add_subcommand("evolve", "free spectral evolution and phase-velocity probe");
    for (auto* sub : {algebra, spinors, xs, ent, evo}) common(sub);
    flag(spinors, "--samples", "samples", "number of random momenta");
    flag(xs, "--process", "process", "mu-pair | compton");
    flag(xs, "--sqrt-s", "sqrt_s", "center-of-momentum energy (mu-pair), MeV");
    flag(xs, "--omega", "omega", "lab photon energy (compton), MeV");
    flag(xs, "--L", "L", "box edge");
    flag(xs, "--grid-points", "grid_points", "number of cos(theta) points");
    flag(xs, "--out", "out", "CSV output path (stdout if absent)");
    flag(xs, "--audit", "audit", "audit JSON output path");
    flag(ent, "--current-points", "current_points", "lattice points per axis");
    flag(evo, "--steps", "evolve_steps", "number of tau steps");
    flag(evo, "--dtau", "evolve_dtau", "tau step");
    flag(evo, "--snapshot", "snapshot", "CSV snapshot path");

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return exit_ok;
    }
    catch (const CLI::CallForAllHelp&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    }
    catch (const CLI::ParseError& e)
    {
        error_json(err, "usage", e.what());
        return exit_usage_error;
    }

    RunConfig cfg;
    try
    {
        if (!config_path.empty()) cfg = load_config(config_path);
        for (const auto& s : sets)
        {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
            cfg.set(s.substr(0, eq), s.substr(eq + 1));
        }
        for (const auto& [k, v] : flags) cfg.set(k, v);
        cfg.validate();
    }
    catch (const ConfigError& e)
    {
        error_json(err, "config", e.what());
        return exit_usage_error;
    }

    try
    {
        if (algebra->parsed()) return check_algebra(cfg, out);
        if (spinors->parsed()) return check_spinors(cfg, out);
        if (xs->parsed()) return xsec(cfg, out);
        if (ent->parsed()) return entangle(cfg, out);
        return evolve(cfg, out);
    }
    catch (const std::exception& e)
    {
        error_json(err, "compute", e.what());
        return exit_compute_error;
    }
}

}  // namespace pdirac
