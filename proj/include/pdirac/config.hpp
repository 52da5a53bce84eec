#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace pdirac
{

/// Malformed configuration (unknown key, bad value, violated invariant).
struct ConfigError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Run settings. Energies in MeV, lengths in MeV⁻¹.
struct RunConfig
{
    double m_e = 0.51099895;
    double m_mu = 105.6583755;
    double alpha = 1.0 / 137.035999;
    double L = 1.0;

    std::string process = "mu-pair";
    double sqrt_s = 1000.0;
    double omega = 1.0;
    int grid_points = 181;

    std::string basis = "dirac";
    std::uint64_t seed = 20240101;
    int samples = 1000;
    int current_points = 4;

    int n_t = 9;
    int n_z = 9;
    double evolve_mass = 1.0;
    double evolve_dtau = 0.01;
    int evolve_steps = 1000;

    double tol_algebra = 1e-13;
    double tol_spinor = 1e-10;
    double tol_xsec = 1e-8;

    std::string out;
    std::string audit;
    std::string snapshot;

    /// Sets one key from its text value. Throws ConfigError.
    void set(const std::string& key, const std::string& value);
    /// Throws ConfigError if an invariant fails (masses, tolerances and sizes positive).
    void validate() const;
};

/// Reads a flat "key = value" file; '#' starts a comment. Throws ConfigError.
std::map<std::string, std::string> read_key_values(const std::string& path);

RunConfig load_config(const std::string& path);

}  // namespace pdirac
