#include "pdirac/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>

namespace pdirac
{
namespace
{

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value)
{
    T v{};
    const char* first = value.data();
    const char* last = first + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) throw ConfigError("bad value for '" + key + "': '" + value + "'");
    return v;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value)
{
    using Setter = std::function<void(const std::string&)>;
    auto real = [&](double& dst) -> Setter { return [&dst, &key](const std::string& v) { dst = parse_number<double>(key, v); }; };
    auto integer = [&](int& dst) -> Setter { return [&dst, &key](const std::string& v) { dst = parse_number<int>(key, v); }; };
    auto text = [](std::string& dst) -> Setter { return [&dst](const std::string& v) { dst = v; }; };

    const std::map<std::string, Setter> table{
        {"m_e", real(m_e)},
        {"m_mu", real(m_mu)},
        {"alpha", real(alpha)},
        {"L", real(L)},
        {"process", text(process)},
        {"sqrt_s", real(sqrt_s)},
        {"omega", real(omega)},
        {"grid_points", integer(grid_points)},
        {"basis", text(basis)},
        {"seed", [this, &key](const std::string& v) { seed = parse_number<std::uint64_t>(key, v); }},
        {"samples", integer(samples)},
        {"current_points", integer(current_points)},
        {"n_t", integer(n_t)},
        {"n_z", integer(n_z)},
        {"evolve_mass", real(evolve_mass)},
        {"evolve_dtau", real(evolve_dtau)},
        {"evolve_steps", integer(evolve_steps)},
        {"tol_algebra", real(tol_algebra)},
        {"tol_spinor", real(tol_spinor)},
        {"tol_xsec", real(tol_xsec)},
        {"out", text(out)},
        {"audit", text(audit)},
        {"snapshot", text(snapshot)},
    };
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(value);
}

void RunConfig::validate() const
{
    if (!(m_e > 0.0) || !(m_mu > 0.0) || !(evolve_mass > 0.0)) throw ConfigError("masses must be positive");
    if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
    if (!(L > 0.0)) throw ConfigError("box edge L must be positive");
    if (!(tol_algebra > 0.0) || !(tol_spinor > 0.0) || !(tol_xsec > 0.0)) throw ConfigError("tolerances must be positive");
    if (grid_points < 2 || samples < 1 || current_points < 1 || n_t < 1 || n_z < 1 || evolve_steps < 0)
        throw ConfigError("lattice and sample sizes must be positive");
    if (basis != "dirac" && basis != "weyl") throw ConfigError("basis must be 'dirac' or 'weyl'");
    if (process != "mu-pair" && process != "compton") throw ConfigError("process must be 'mu-pair' or 'compton'");
}

std::map<std::string, std::string> read_key_values(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

RunConfig load_config(const std::string& path)
{
    RunConfig cfg;
    for (const auto& [k, v] : read_key_values(path)) cfg.set(k, v);
    cfg.validate();
    return cfg;
}

}  // namespace pdirac
